//! Brute-force cross-checks for the closed forms.
//!
//! Nothing here shares a code path with the quantity it checks: phase noise
//! is sampled instead of integrated, loss is simulated on the full
//! four-mode Hilbert space (two arms plus two environment modes) and traced
//! out, and traces are recomputed with dense matrices.

use nalgebra::SymmetricEigen;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::channels::{apply_phase_shift, beam_splitter_fock, DenseTwoMode, NoiseParams};
use crate::error::{Error, Result};
use crate::fock::{make_mm_state, Basis, DensityOperator, FockKet, Operator};

/// Oracle tolerances.
pub mod tolerances {
    /// Entrywise agreement of exact (non-sampled) routes.
    pub const EXACT: f64 = 1e-12;
    /// Agreement of dense and sparse trace products.
    pub const DENSE_TRACE: f64 = 1e-12;
    /// Smallest eigenvalue accepted for a positive semidefinite ρ.
    pub const PSD: f64 = 1e-10;
    /// Monte Carlo agreement band in standard errors.
    pub const MC_SIGMAS: f64 = 3.0;
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McConfig {
    samples: usize,
    seed: u64,
    confidence_sigmas: f64,
}

impl McConfig {
    pub fn new(samples: usize, seed: u64) -> Result<Self> {
        Self::with_confidence(samples, seed, tolerances::MC_SIGMAS)
    }

    pub fn with_confidence(samples: usize, seed: u64, confidence_sigmas: f64) -> Result<Self> {
        if samples == 0 {
            return Err(Error::InvalidParameter("Monte Carlo needs at least one sample".into()));
        }
        if confidence_sigmas.is_nan() || confidence_sigmas <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "confidence band {confidence_sigmas} must be positive"
            )));
        }
        Ok(Self {
            samples,
            seed,
            confidence_sigmas,
        })
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn confidence_sigmas(&self) -> f64 {
        self.confidence_sigmas
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub estimate: Complex64,
    /// Standard error of the real part.
    pub std_error: f64,
}

impl McEstimate {
    /// Whether the real part lies within `sigmas` standard errors of `expected`.
    pub fn agrees_with(&self, expected: f64, sigmas: f64) -> bool {
        (self.estimate.re - expected).abs() <= sigmas * self.std_error
    }
}

/// Sample mean of `exp(iΔm·Δφ)` over `Δφ ~ Normal(0, 2ΓL)`.
///
/// Draws come from the ziggurat normal sampler over a ChaCha8 stream seeded
/// with `cfg.seed`, so runs are bit-reproducible across platforms.
pub fn mc_dephasing_factor(delta_m: i64, gamma: f64, dephase_len: f64, cfg: &McConfig) -> McEstimate {
    let sigma = (2.0 * gamma * dephase_len).sqrt();
    let normal = Normal::new(0.0, sigma).expect("sigma is finite and non-negative");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let n = cfg.samples as f64;
    let dm = delta_m as f64;

    let (mut sum_re, mut sum_im, mut sum_sq) = (0.0, 0.0, 0.0);
    for _ in 0..cfg.samples {
        let (s, c) = (dm * normal.sample(&mut rng)).sin_cos();
        sum_re += c;
        sum_im += s;
        sum_sq += c * c;
    }
    let mean = sum_re / n;
    let std_error = if cfg.samples > 1 {
        let var = ((sum_sq - n * mean * mean) / (n - 1.0)).max(0.0);
        (var / n).sqrt()
    } else {
        0.0
    };
    McEstimate {
        estimate: Complex64::new(mean, sum_im / n),
        std_error,
    }
}

struct FourMode {
    dim: usize,
    amps: Vec<Complex64>,
}

impl FourMode {
    fn idx(&self, a: usize, b: usize, va: usize, vb: usize) -> usize {
        ((a * self.dim + b) * self.dim + va) * self.dim + vb
    }

    /// Applies a beam splitter between arm `arm` (0 = a, 1 = b) and its environment.
    fn split(&mut self, arm: usize, transmittance: f64) -> Result<()> {
        let cutoff = self.dim - 1;
        for other in 0..self.dim {
            for other_env in 0..self.dim {
                let at = |s: usize, e: usize| match arm {
                    0 => (s, other, e, other_env),
                    _ => (other, s, other_env, e),
                };
                let mut slice = DenseTwoMode::zeros(cutoff);
                let mut any = false;
                for s in 0..self.dim {
                    for e in 0..self.dim - s {
                        let (a, b, va, vb) = at(s, e);
                        let v = self.amps[self.idx(a, b, va, vb)];
                        if v != Complex64::new(0.0, 0.0) {
                            slice.set(s, e, v)?;
                            any = true;
                        }
                    }
                }
                if !any {
                    continue;
                }
                let out = beam_splitter_fock(&slice, transmittance)?;
                for s in 0..self.dim {
                    for e in 0..self.dim {
                        let (a, b, va, vb) = at(s, e);
                        let i = self.idx(a, b, va, vb);
                        self.amps[i] = out.get(s, e);
                    }
                }
            }
        }
        Ok(())
    }
}

/// The lossy, dephased mm′ density operator by direct simulation: the phase-shifted
/// state is embedded with vacuum environments, each arm meets a beam splitter,
/// the environments are traced out and every coherence is damped by the
/// Gaussian characteristic function `exp(−σ²Δ²/2)`, `σ² = 2ΓL`.
pub fn lossy_state_bruteforce(
    m: usize,
    m_prime: usize,
    phi: f64,
    params: &NoiseParams,
    cutoff: usize,
) -> Result<DensityOperator> {
    if cutoff < m + m_prime {
        return Err(Error::CutoffExceeded {
            needed: m + m_prime,
            cutoff,
        });
    }
    let state = apply_phase_shift(&make_mm_state(m, m_prime)?, phi);
    let dim = cutoff + 1;
    let mut psi = FourMode {
        dim,
        amps: vec![Complex64::new(0.0, 0.0); dim.pow(4)],
    };
    for &(ket, amp) in state.terms() {
        let i = psi.idx(ket.photons_a, ket.photons_b, 0, 0);
        psi.amps[i] = amp;
    }
    psi.split(0, params.t_a())?;
    psi.split(1, params.t_b())?;

    let variance = 2.0 * params.gamma() * params.dephase_len();
    let mut rho = Operator::zero();
    for a in 0..dim {
        for b in 0..dim {
            for a2 in 0..dim {
                for b2 in 0..dim {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for va in 0..dim {
                        for vb in 0..dim {
                            acc += psi.amps[psi.idx(a, b, va, vb)]
                                * psi.amps[psi.idx(a2, b2, va, vb)].conj();
                        }
                    }
                    if acc == Complex64::new(0.0, 0.0) {
                        continue;
                    }
                    let delta = b as f64 - b2 as f64;
                    let damp = (-0.5 * variance * delta * delta).exp();
                    rho.add_entry(FockKet::new(a, b), FockKet::new(a2, b2), acc * damp);
                }
            }
        }
    }
    rho.prune_zeros();
    DensityOperator::new(rho)
}

/// `Tr[observable · ρ]` with dense matrices over all kets up to the larger support.
pub fn dense_recompute(rho: &DensityOperator, observable: &Operator) -> Result<f64> {
    let basis = Basis::up_to(rho.max_total_photons().max(observable.max_total_photons()));
    let r = rho.operator().to_dense(&basis)?;
    let o = observable.to_dense(&basis)?;
    let value = (o * r).trace();
    if value.im.abs() > crate::fock::EPS_EXPECT {
        return Err(Error::NonHermitianExpectation {
            residual: value.im.abs(),
        });
    }
    Ok(value.re)
}

/// Smallest eigenvalue of ρ on its support.
pub fn min_eigenvalue(rho: &DensityOperator) -> Result<f64> {
    let basis = Basis::spanning(rho.operator().support());
    let dense = rho.operator().to_dense(&basis)?;
    Ok(SymmetricEigen::new(dense)
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::lossy_dephased_density;
    use crate::detection::parity_operator;
    use crate::fock::to_density;

    #[test]
    fn noiseless_factor_is_exact() {
        let cfg = McConfig::new(1000, 7).unwrap();
        let e = mc_dephasing_factor(3, 0.0, 1.0, &cfg);
        assert_eq!(e.estimate, Complex64::new(1.0, 0.0));
        assert_eq!(e.std_error, 0.0);
        let e = mc_dephasing_factor(0, 0.4, 1.0, &cfg);
        assert_eq!(e.estimate, Complex64::new(1.0, 0.0));
    }

    #[test]
    fn noon_two_factor_within_band() {
        let cfg = McConfig::new(100_000, 11).unwrap();
        let e = mc_dephasing_factor(2, 0.1, 1.0, &cfg);
        assert!(e.agrees_with((-0.4f64).exp(), 3.0), "{e:?}");
        assert!(e.estimate.im.abs() < 4.0 * e.std_error.max(1e-3));
    }

    #[test]
    fn seeded_runs_repeat() {
        let cfg = McConfig::new(5000, 42).unwrap();
        assert_eq!(
            mc_dephasing_factor(4, 0.05, 2.0, &cfg),
            mc_dephasing_factor(4, 0.05, 2.0, &cfg)
        );
    }

    #[test]
    fn std_error_halves_when_samples_quadruple() {
        let small = mc_dephasing_factor(2, 0.1, 1.0, &McConfig::new(25_000, 3).unwrap());
        let large = mc_dephasing_factor(2, 0.1, 1.0, &McConfig::new(100_000, 3).unwrap());
        let ratio = small.std_error / large.std_error;
        assert!((ratio - 2.0).abs() < 0.4, "ratio {ratio}");
    }

    #[test]
    fn config_validation() {
        assert!(McConfig::new(0, 1).is_err());
        assert!(McConfig::with_confidence(10, 1, 0.0).is_err());
        assert_eq!(McConfig::new(10, 1).unwrap().confidence_sigmas(), 3.0);
    }

    #[test]
    fn bruteforce_without_loss_is_pure() {
        let p = NoiseParams::lossless(0.0, 1.0).unwrap();
        let rho = lossy_state_bruteforce(3, 1, 0.6, &p, 4).unwrap();
        let pure = to_density(&apply_phase_shift(&make_mm_state(3, 1).unwrap(), 0.6));
        assert!(rho.max_abs_diff(&pure) < 1e-15);
    }

    #[test]
    fn bruteforce_matches_assembly_two_zero() {
        let p = NoiseParams::new(0.2, 1.0, 1.0, 0.7).unwrap();
        let brute = lossy_state_bruteforce(2, 0, 0.3, &p, 2).unwrap();
        let assembled = lossy_dephased_density(2, 0, 0.3, &p).unwrap();
        assert!(brute.max_abs_diff(&assembled) < tolerances::EXACT);
        assert!((brute.trace() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bruteforce_cutoff() {
        let p = NoiseParams::lossless(0.0, 1.0).unwrap();
        assert!(matches!(
            lossy_state_bruteforce(3, 1, 0.0, &p, 3),
            Err(Error::CutoffExceeded { needed: 4, cutoff: 3 })
        ));
    }

    #[test]
    fn dense_identity_and_parity() {
        let rho = to_density(&apply_phase_shift(&make_mm_state(4, 1).unwrap(), 0.2));
        let id = Operator::identity(5);
        assert!((dense_recompute(&rho, &id).unwrap() - 1.0).abs() < 1e-12);
        let p = parity_operator(5);
        let sparse = p.expectation(&rho, false).unwrap();
        assert!((dense_recompute(&rho, p.operator()).unwrap() - sparse).abs() < 1e-12);
    }

    #[test]
    fn pure_state_eigenvalues() {
        let rho = to_density(&make_mm_state(2, 0).unwrap());
        assert!(min_eigenvalue(&rho).unwrap() > -1e-12);
    }
}
