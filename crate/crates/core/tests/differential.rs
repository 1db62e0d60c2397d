//! Every closed form against its brute-force route over all mm′ states with
//! at most eight photons.

use std::f64::consts::PI;

use fockphase::channels::{apply_phase_shift, dephase, lossy_dephased_density};
use fockphase::detection::parity_operator;
use fockphase::fock::{make_mm_state, to_density};
use fockphase::metrology::{
    self, qfi_numerical, sensitivity_error_propagation, DensityFamily, FnFamily, MmFamily,
};
use fockphase::oracle::{self, dense_recompute, lossy_state_bruteforce, mc_dephasing_factor, tolerances};
use fockphase::{McConfig, NoiseParams};

fn states() -> impl Iterator<Item = (usize, usize)> {
    (1..=8usize).flat_map(|m| (0..m).filter(move |mp| m + mp <= 8).map(move |mp| (m, mp)))
}

#[test]
fn grid_covers_all_states() {
    assert_eq!(states().count(), 20);
}

#[test]
fn lossy_assembly_matches_four_mode_simulation() {
    for (m, mp) in states() {
        for (ta, tb, g) in [(1.0, 0.7, 0.2), (0.8, 0.5, 0.05), (1.0, 1.0, 0.3), (0.6, 0.0, 0.1)] {
            let p = NoiseParams::new(g, 1.0, ta, tb).unwrap();
            let assembled = lossy_dephased_density(m, mp, 0.3, &p).unwrap();
            let brute = lossy_state_bruteforce(m, mp, 0.3, &p, m + mp).unwrap();
            let diff = assembled.max_abs_diff(&brute);
            assert!(diff < tolerances::EXACT, "({m},{mp}) T=({ta},{tb}): {diff:e}");
        }
    }
}

#[test]
fn sparse_and_dense_parity_agree() {
    for (m, mp) in states() {
        let p = NoiseParams::new(0.15, 1.0, 0.9, 0.6).unwrap();
        let rho = lossy_dephased_density(m, mp, 0.7, &p).unwrap();
        let parity = parity_operator(m + mp);
        let sparse = parity.expectation(&rho, false).unwrap();
        let dense = dense_recompute(&rho, parity.operator()).unwrap();
        assert!((sparse - dense).abs() < tolerances::DENSE_TRACE);
    }
}

#[test]
fn dense_parity_reproduces_shifted_closed_form() {
    for (m, mp) in states() {
        let (g, phi) = (0.12, 0.41);
        // the half-wave plate is equivalent to a phase φ + π/2
        let rho = dephase(
            &to_density(&apply_phase_shift(&make_mm_state(m, mp).unwrap(), phi + PI / 2.0)),
            g,
            1.0,
        );
        let dm = (m - mp) as f64;
        let sign = if (m + mp) % 2 == 0 { 1.0 } else { -1.0 };
        let expected = sign * (-dm * dm * g).exp() * (dm * phi).cos();
        let dense = dense_recompute(&rho, parity_operator(m + mp).operator()).unwrap();
        assert!((dense - expected).abs() < 1e-12, "({m},{mp})");
    }
}

#[test]
fn numerical_qfi_matches_closed_form() {
    for (m, mp) in states() {
        for g in [0.0, 0.1, 0.5] {
            let fam = MmFamily::new(m, mp, NoiseParams::lossless(g, 1.0).unwrap()).unwrap();
            let num = qfi_numerical(&fam, 0.3).unwrap().qfi;
            let exact = metrology::qfi_closed_form(m, mp, g, 1.0).unwrap();
            assert!((num - exact).abs() < 1e-8, "({m},{mp}) Γ={g}: {num} vs {exact}");
        }
    }
}

#[test]
fn finite_difference_qfi_agrees_with_analytic_derivative() {
    for (m, mp) in [(2, 0), (4, 1), (5, 3)] {
        let p = NoiseParams::new(0.1, 1.0, 1.0, 0.8).unwrap();
        let fam = MmFamily::new(m, mp, p).unwrap();
        let analytic = qfi_numerical(&fam, 0.2).unwrap().qfi;
        let fd = qfi_numerical(&FnFamily(|phi| fam.density(phi)), 0.2).unwrap().qfi;
        assert!((analytic - fd).abs() < 1e-6 * analytic.max(1.0));
    }
}

#[test]
fn error_propagation_matches_closed_forms() {
    for (m, mp) in states() {
        let dm = (m - mp) as f64;
        for g in [0.0, 0.02, 0.1] {
            for phi in [0.3 / dm, 0.9 / dm] {
                let fam = MmFamily::new(m, mp, NoiseParams::lossless(g, 1.0).unwrap()).unwrap();
                let num = sensitivity_error_propagation(&fam, phi).unwrap();
                let exact = metrology::sensitivity_closed_form(m, mp, g, 1.0, phi).unwrap();
                assert!((num - exact).abs() < 1e-6 * exact.max(1.0), "({m},{mp}) Γ={g} φ={phi}");
            }
        }
        let p = NoiseParams::new(0.05, 1.0, 1.0, 0.8).unwrap();
        let phi = 0.7 / dm;
        let fam = MmFamily::new(m, mp, p).unwrap();
        let num = sensitivity_error_propagation(&fam, phi).unwrap();
        let exact = metrology::sensitivity_lossy(m, mp, &p, phi).unwrap();
        assert!((num - exact).abs() < 1e-6 * exact.max(1.0), "lossy ({m},{mp})");
    }
}

#[test]
fn lossy_sensitivity_example() {
    let p = NoiseParams::new(0.1, 1.0, 1.0, 0.7).unwrap();
    let num = sensitivity_error_propagation(&MmFamily::new(2, 0, p).unwrap(), PI / 4.0).unwrap();
    let exact = metrology::sensitivity_lossy(2, 0, &p, PI / 4.0).unwrap();
    assert!((num - exact).abs() < 1e-6);
}

#[test]
fn monte_carlo_dephasing_matches_decay() {
    let cfg = McConfig::new(100_000, 2024).unwrap();
    for dm in 1..=8i64 {
        for g in [0.01, 0.05, 0.2] {
            let est = mc_dephasing_factor(dm, g, 1.0, &cfg);
            let expected = (-((dm * dm) as f64) * g).exp();
            assert!(
                est.agrees_with(expected, cfg.confidence_sigmas()),
                "Δm={dm} Γ={g}: {est:?} vs {expected}"
            );
        }
    }
}

#[test]
fn lossy_states_are_positive() {
    for (m, mp) in states() {
        let p = NoiseParams::new(0.2, 1.0, 0.7, 0.4).unwrap();
        let rho = lossy_dephased_density(m, mp, 1.1, &p).unwrap();
        assert!(oracle::min_eigenvalue(&rho).unwrap() > -tolerances::PSD);
    }
}
