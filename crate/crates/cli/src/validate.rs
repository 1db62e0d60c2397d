//! Self-checks of the simulation against independent routes. Each check
//! reports the worst deviation over its grid.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use fockphase::channels::{apply_phase_shift, dephase, lossy_dephased_density};
use fockphase::detection::parity_operator;
use fockphase::fock::{make_mm_state, to_density};
use fockphase::metrology::{
    self, qfi_numerical, saturation_check, sensitivity_error_propagation_with, MmFamily,
};
use fockphase::oracle::{dense_recompute, lossy_state_bruteforce, mc_dephasing_factor, tolerances};
use fockphase::{McConfig, NoiseParams, Operator, ParityOperator};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Depth {
    /// Exact checks on states with at most six photons.
    Quick,
    /// Eight photons plus Monte Carlo dephasing.
    Full,
}

impl Depth {
    pub fn max_photons(self) -> usize {
        match self {
            Self::Quick => 6,
            Self::Full => 8,
        }
    }
}

impl FromStr for Depth {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "quick" => Ok(Self::Quick),
            "full" => Ok(Self::Full),
            other => Err(format!("unknown depth {other:?} (quick, full)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Flips the sign of the `k > n/2` half of every parity sector.
    ParitySign,
}

impl FromStr for Fault {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "parity-sign" => Ok(Self::ParitySign),
            other => Err(format!("unknown fault {other:?}")),
        }
    }
}

pub const MC_SAMPLES: usize = 100_000;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} {:<24} {}", self.name, self.detail)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        write!(f, "{} checks, {failed} failed", self.checks.len())
    }
}

/// Parity with the conjugate-partner half of each sector negated.
pub fn faulty_parity(max_total: usize) -> ParityOperator {
    let honest = parity_operator(max_total);
    let op = Operator::from_entries(honest.operator().entries().map(|(&(ket, bra), &v)| {
        let flip = 2 * ket.photons_a > ket.total();
        ((ket, bra), if flip { -v } else { v })
    }));
    ParityOperator::from_parts(max_total, op)
}

fn states(max: usize) -> Vec<(usize, usize)> {
    (1..=max)
        .flat_map(|m| (0..m).filter(move |mp| m + mp <= max).map(move |mp| (m, mp)))
        .collect()
}

/// Worst `|err|` over `cases`; any error fails the check.
fn worst<T>(
    name: &'static str,
    tol: f64,
    cases: impl IntoIterator<Item = T>,
    eval: impl Fn(&T) -> Result<f64, String>,
) -> Check {
    let mut max = 0.0f64;
    let mut n = 0usize;
    for case in cases {
        n += 1;
        match eval(&case) {
            Ok(e) if e.is_finite() => max = max.max(e),
            Ok(e) => {
                return Check {
                    name,
                    passed: false,
                    detail: format!("non-finite deviation {e} in case {n}"),
                }
            }
            Err(msg) => {
                return Check {
                    name,
                    passed: false,
                    detail: format!("case {n}: {msg}"),
                }
            }
        }
    }
    Check {
        name,
        passed: max < tol,
        detail: format!("max deviation {max:.3e} over {n} cases (tol {tol:.0e})"),
    }
}

pub fn run(depth: Depth, seed: u64, fault: Option<Fault>) -> Report {
    let max = depth.max_photons();
    let grid = states(max);
    let parity = |n: usize| match fault {
        Some(Fault::ParitySign) => faulty_parity(n),
        None => parity_operator(n),
    };
    let s = |e: fockphase::Error| e.to_string();
    let loss_points = [(1.0, 0.7, 0.2), (0.8, 0.5, 0.05), (0.6, 0.0, 0.1)];

    let mut checks = vec![
        worst(
            "lossy-state-bruteforce",
            tolerances::EXACT,
            grid.iter().flat_map(|&st| loss_points.map(|lp| (st, lp))),
            |&((m, mp), (ta, tb, g))| {
                let p = NoiseParams::new(g, 1.0, ta, tb).map_err(s)?;
                let a = lossy_dephased_density(m, mp, 0.3, &p).map_err(s)?;
                let b = lossy_state_bruteforce(m, mp, 0.3, &p, m + mp).map_err(s)?;
                Ok(a.max_abs_diff(&b))
            },
        ),
        worst("parity-sparse-dense", tolerances::DENSE_TRACE, grid.clone(), |&(m, mp)| {
            let p = NoiseParams::new(0.15, 1.0, 0.9, 0.6).map_err(s)?;
            let rho = lossy_dephased_density(m, mp, 0.7, &p).map_err(s)?;
            let op = parity(m + mp);
            let sparse = op.expectation(&rho, false).map_err(s)?;
            let dense = dense_recompute(&rho, op.operator()).map_err(s)?;
            Ok((sparse - dense).abs())
        }),
        worst("parity-closed-form", tolerances::EXACT, grid.clone(), |&(m, mp)| {
            let (g, phi) = (0.12, 0.41);
            let rho = dephase(
                &to_density(&apply_phase_shift(&make_mm_state(m, mp).map_err(s)?, phi)),
                g,
                1.0,
            );
            let got = parity(m + mp).expectation(&rho, true).map_err(s)?;
            let dm = (m - mp) as f64;
            let sign = if (m + mp) % 2 == 0 { 1.0 } else { -1.0 };
            Ok((got - sign * (-dm * dm * g).exp() * (dm * phi).cos()).abs())
        }),
        worst("lossy-parity-signal", tolerances::EXACT, grid.clone(), |&(m, mp)| {
            let p = NoiseParams::new(0.07, 1.0, 0.85, 0.55).map_err(s)?;
            let phi = 0.9;
            let rho = lossy_dephased_density(m, mp, phi, &p).map_err(s)?;
            let got = parity(m + mp).expectation(&rho, true).map_err(s)?;
            let expected = metrology::parity_signal_lossy(m, mp, &p, phi).map_err(s)?;
            Ok((got - expected).abs())
        }),
        worst(
            "qfi-numerical",
            1e-8,
            grid.iter().flat_map(|&st| [0.0, 0.1, 0.5].map(|g| (st, g))),
            |&((m, mp), g)| {
                let fam = MmFamily::new(m, mp, NoiseParams::lossless(g, 1.0).map_err(s)?).map_err(s)?;
                let num = qfi_numerical(&fam, 0.3).map_err(s)?.qfi;
                Ok((num - metrology::qfi_closed_form(m, mp, g, 1.0).map_err(s)?).abs())
            },
        ),
        worst(
            "saturation-closed-form",
            metrology::SATURATION_TOL,
            [(4, 0), (5, 1)].into_iter().flat_map(|st| [0.0, 0.1, 0.3, 0.5].map(|g| (st, g))),
            |&((m, mp), g)| Ok(saturation_check(m, mp, g, 1.0).map_err(s)?.gap),
        ),
        // relative, limited by the finite-difference slope
        worst(
            "saturation-pipeline",
            1e-6,
            grid.iter().flat_map(|&st| [0.0, 0.05].map(|g| (st, g))),
            |&((m, mp), g)| {
                let fam = MmFamily::new(m, mp, NoiseParams::lossless(g, 1.0).map_err(s)?).map_err(s)?;
                let phi = metrology::optimal_phase(m, mp).map_err(s)?;
                let got = sensitivity_error_propagation_with(&fam, phi, &parity(m + mp)).map_err(s)?;
                let bound = metrology::qcrb(metrology::qfi_closed_form(m, mp, g, 1.0).map_err(s)?);
                Ok((got - bound).abs() / bound)
            },
        ),
        worst("heisenberg-endpoint", tolerances::EXACT, [(4usize, 0usize)], |&(m, mp)| {
            let phi = PI / 8.0;
            Ok((metrology::sensitivity_closed_form(m, mp, 0.0, 1.0, phi).map_err(s)? - 0.25).abs())
        }),
    ];

    if depth == Depth::Full {
        let cfg = McConfig::new(MC_SAMPLES, seed).expect("positive sample count");
        let sigmas = cfg.confidence_sigmas();
        // reported as the deviation in units of the standard error
        checks.push(worst(
            "mc-dephasing",
            sigmas,
            (1..=max as i64).flat_map(|dm| [0.01, 0.05, 0.2].map(|g| (dm, g))),
            |&(dm, g)| {
                let est = mc_dephasing_factor(dm, g, 1.0, &cfg);
                let expected = (-((dm * dm) as f64) * g).exp();
                let dev = (est.estimate.re - expected).abs();
                Ok(dev / est.std_error)
            },
        ));
    }
    Report { checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_passes() {
        let r = run(Depth::Quick, 7, None);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn injected_fault_is_caught() {
        let r = run(Depth::Quick, 7, Some(Fault::ParitySign));
        assert!(!r.passed());
        let failed: Vec<_> = r.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect();
        assert!(failed.contains(&"saturation-pipeline"), "{failed:?}");
    }

    #[test]
    fn faulty_parity_is_not_hermitian() {
        assert!(!faulty_parity(6).operator().is_hermitian(1e-12));
        assert!(parity_operator(6).operator().is_hermitian(1e-12));
    }

    #[test]
    fn grid_sizes() {
        assert_eq!(states(6).len(), 12);
        assert_eq!(states(8).len(), 20);
    }
}
