//! Physical processes acting on the interferometer state: the deterministic
//! phase shift in arm `b`, Gaussian phase noise (pure dephasing) and photon
//! loss modelled by fictitious beam splitters that couple each arm to a vacuum
//! environment mode.
//!
//! Only the product `ΓL` of dephasing rate and region length enters any result;
//! a Gaussian phase error of variance `2ΓL` suppresses a coherence whose mode-`b`
//! photon numbers differ by `Δ` by exactly `exp(−Δ²ΓL)`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{DensityOperator, FockKet, Operator, TwoModePureState};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseParams {
    gamma: f64,
    dephase_len: f64,
    t_a: f64,
    t_b: f64,
}

impl NoiseParams {
    pub fn new(gamma: f64, dephase_len: f64, t_a: f64, t_b: f64) -> Result<Self> {
        let check = |name: &str, v: f64, hi: f64| {
            if v.is_finite() && (0.0..=hi).contains(&v) {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!(
                    "{name} = {v} outside [0, {hi}]"
                )))
            }
        };
        check("gamma", gamma, f64::MAX)?;
        check("dephase_len", dephase_len, f64::MAX)?;
        check("t_a", t_a, 1.0)?;
        check("t_b", t_b, 1.0)?;
        Ok(Self {
            gamma,
            dephase_len,
            t_a,
            t_b,
        })
    }

    /// Dephasing only, no photon loss.
    pub fn lossless(gamma: f64, dephase_len: f64) -> Result<Self> {
        Self::new(gamma, dephase_len, 1.0, 1.0)
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn dephase_len(&self) -> f64 {
        self.dephase_len
    }

    pub fn t_a(&self) -> f64 {
        self.t_a
    }

    pub fn t_b(&self) -> f64 {
        self.t_b
    }

    pub fn r_a(&self) -> f64 {
        1.0 - self.t_a
    }

    pub fn r_b(&self) -> f64 {
        1.0 - self.t_b
    }

    /// `ΓL`, half the phase-noise variance.
    pub fn gamma_l(&self) -> f64 {
        self.gamma * self.dephase_len
    }

    pub fn is_lossless(&self) -> bool {
        self.t_a == 1.0 && self.t_b == 1.0
    }
}

/// Decay `exp(−Δ²ΓL)` of a coherence whose mode-`b` photon numbers differ by `delta`.
pub fn dephasing_factor(delta: i64, gamma_l: f64) -> f64 {
    let d = delta as f64;
    (-d * d * gamma_l).exp()
}

/// Multiplies every term `|k_a, k_b⟩` by `exp(i k_b φ)`.
pub fn apply_phase_shift(state: &TwoModePureState, phi: f64) -> TwoModePureState {
    state.map_amplitudes(|k, c| c * Complex64::from_polar(1.0, k.photons_b as f64 * phi))
}

fn mode_b_difference(ket: FockKet, bra: FockKet) -> i64 {
    ket.photons_b as i64 - bra.photons_b as i64
}

/// Phase shift `φ` on arm `b` applied to a density operator: `U ρ U†` with `U = exp(iφ n_b)`.
pub fn rotate_phase(rho: &DensityOperator, phi: f64) -> DensityOperator {
    let op = Operator::from_entries(rho.entries().map(|(&(k, b), &v)| {
        let delta = mode_b_difference(k, b) as f64;
        ((k, b), v * Complex64::from_polar(1.0, delta * phi))
    }));
    DensityOperator::from_channel_output(op)
}

/// Quarter-turn phase shift on arm `b`, using exact powers of `i`.
pub(crate) fn rotate_phase_exact_quarter(rho: &DensityOperator) -> DensityOperator {
    let op = Operator::from_entries(
        rho.entries()
            .map(|(&(k, b), &v)| ((k, b), v * crate::detection::i_pow(mode_b_difference(k, b)))),
    );
    DensityOperator::from_channel_output(op)
}

/// Pure dephasing: each dyad is scaled by `exp(−Δ²ΓL)`, `Δ` the mode-`b` photon-number
/// difference between ket and bra. Populations are untouched.
pub fn dephase(rho: &DensityOperator, gamma: f64, dephase_len: f64) -> DensityOperator {
    let gamma_l = gamma * dephase_len;
    let op = Operator::from_entries(rho.entries().map(|(&(k, b), &v)| {
        ((k, b), v * dephasing_factor(mode_b_difference(k, b), gamma_l))
    }));
    DensityOperator::from_channel_output(op)
}

pub(crate) fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Dense `rows × cols` table of non-negative weights indexed `(k, k′)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientTable {
    rows: usize,
    cols: usize,
    values: Vec<f64>,
}

impl CoefficientTable {
    fn build(rows: usize, cols: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let values = (0..rows)
            .flat_map(|k| (0..cols).map(move |kp| (k, kp)))
            .map(|(k, kp)| f(k, kp))
            .collect();
        Self { rows, cols, values }
    }

    /// Weight at `(k, k′)`; zero outside the table.
    pub fn get(&self, k: usize, k_prime: usize) -> f64 {
        if k < self.rows && k_prime < self.cols {
            self.values[k * self.cols + k_prime]
        } else {
            0.0
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    /// `Σ_k w(k, k)`.
    pub fn diagonal_sum(&self) -> f64 {
        (0..self.rows.min(self.cols)).map(|k| self.get(k, k)).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), f64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(|(i, &v)| ((i / self.cols, i % self.cols), v))
    }
}

/// Loss weights of the mm′ state before dephasing.
///
/// `d1`, `d2` weight the populations of the `|m,m′⟩` and `|m′,m⟩` branches after
/// `m−k` and `m′−k′` photons leaked (`k ∈ [0,m]`, `k′ ∈ [0,m′]`); `d3`, `d4` weight
/// the surviving cross-branch coherences (`k, k′ ∈ [0,m′]`).
#[derive(Debug, Clone, PartialEq)]
pub struct LossCoefficients {
    pub d1: CoefficientTable,
    pub d2: CoefficientTable,
    pub d3: CoefficientTable,
    pub d4: CoefficientTable,
    pub delta_m: usize,
}

pub fn loss_coefficients(m: usize, m_prime: usize, params: &NoiseParams) -> Result<LossCoefficients> {
    if m <= m_prime {
        return Err(Error::DegenerateState { m, m_prime });
    }
    let (ta, ra, tb, rb) = (params.t_a(), params.r_a(), params.t_b(), params.r_b());
    let dm = m - m_prime;
    let pow = |x: f64, e: usize| x.powi(e as i32);
    // √T raised to an integer power keeps T = 0 exact.
    let (sqrt_ta, sqrt_tb) = (ta.sqrt(), tb.sqrt());

    let d1 = CoefficientTable::build(m + 1, m_prime + 1, |k, kp| {
        binomial(m, k)
            * binomial(m_prime, kp)
            * pow(ta, k)
            * pow(ra, m - k)
            * pow(tb, kp)
            * pow(rb, m_prime - kp)
    });
    let d2 = CoefficientTable::build(m + 1, m_prime + 1, |k, kp| {
        binomial(m, k)
            * binomial(m_prime, kp)
            * pow(ta, kp)
            * pow(ra, m_prime - kp)
            * pow(tb, k)
            * pow(rb, m - k)
    });
    let prefactor = |k: usize, kp: usize| {
        (binomial(m, dm + k) * binomial(m, dm + kp) * binomial(m_prime, k) * binomial(m_prime, kp))
            .sqrt()
    };
    let d3 = CoefficientTable::build(m_prime + 1, m_prime + 1, |k, kp| {
        prefactor(k, kp)
            * pow(sqrt_ta, dm + 2 * k)
            * pow(ra, m_prime - k)
            * pow(sqrt_tb, dm + 2 * kp)
            * pow(rb, m_prime - kp)
    });
    let d4 = CoefficientTable::build(m_prime + 1, m_prime + 1, |k, kp| {
        prefactor(k, kp)
            * pow(sqrt_ta, dm + 2 * kp)
            * pow(ra, m_prime - kp)
            * pow(sqrt_tb, dm + 2 * k)
            * pow(rb, m_prime - k)
    });
    Ok(LossCoefficients {
        d1,
        d2,
        d3,
        d4,
        delta_m: dm,
    })
}

/// Density operator of the mm′ state after the phase shift `φ`, photon loss and
/// pure dephasing.
///
/// With `α = e^{im′φ}/√2`, `β = e^{imφ}/√2` and `D = exp(−Δm²ΓL)`:
///
/// ```text
/// ρ = Σ_{k≤m, k′≤m′} |α|² d1 |k,k′⟩⟨k,k′| + |β|² d2 |k′,k⟩⟨k′,k|
///   + Σ_{k,k′≤m′}  αβ* D d3 |Δm+k,k′⟩⟨k,Δm+k′| + α*β D d4 |k′,Δm+k⟩⟨Δm+k′,k|
/// ```
pub fn lossy_dephased_density(
    m: usize,
    m_prime: usize,
    phi: f64,
    params: &NoiseParams,
) -> Result<DensityOperator> {
    let coeffs = loss_coefficients(m, m_prime, params)?;
    let dm = coeffs.delta_m;
    let alpha = Complex64::from_polar(std::f64::consts::FRAC_1_SQRT_2, m_prime as f64 * phi);
    let beta = Complex64::from_polar(std::f64::consts::FRAC_1_SQRT_2, m as f64 * phi);
    let decay = dephasing_factor(dm as i64, params.gamma_l());

    let mut op = Operator::zero();
    for ((k, kp), w) in coeffs.d1.iter() {
        let ket = FockKet::new(k, kp);
        op.add_entry(ket, ket, Complex64::new(alpha.norm_sqr() * w, 0.0));
    }
    for ((k, kp), w) in coeffs.d2.iter() {
        let ket = FockKet::new(kp, k);
        op.add_entry(ket, ket, Complex64::new(beta.norm_sqr() * w, 0.0));
    }
    let ab = alpha * beta.conj() * decay;
    for ((k, kp), w) in coeffs.d3.iter() {
        op.add_entry(FockKet::new(dm + k, kp), FockKet::new(k, dm + kp), ab * w);
    }
    for ((k, kp), w) in coeffs.d4.iter() {
        op.add_entry(FockKet::new(kp, dm + k), FockKet::new(dm + kp, k), ab.conj() * w);
    }
    op.prune_zeros();
    Ok(DensityOperator::from_channel_output(op))
}

/// Amplitude of the Kraus operator that removes `lost` of `n` photons through a
/// beam splitter of transmittance `t`.
fn loss_amplitude(n: usize, lost: usize, t: f64) -> f64 {
    binomial(n, lost).sqrt() * t.sqrt().powi((n - lost) as i32) * (1.0 - t).sqrt().powi(lost as i32)
}

/// Photon loss on both arms as a Kraus map,
/// `E_l |n⟩ = √C(n,l) T^{(n−l)/2} R^{l/2} |n−l⟩` applied independently per mode.
pub fn apply_loss(rho: &DensityOperator, t_a: f64, t_b: f64) -> DensityOperator {
    let mut op = Operator::zero();
    for (&(k, b), &v) in rho.entries() {
        for la in 0..=k.photons_a.min(b.photons_a) {
            let wa = loss_amplitude(k.photons_a, la, t_a) * loss_amplitude(b.photons_a, la, t_a);
            if wa == 0.0 {
                continue;
            }
            for lb in 0..=k.photons_b.min(b.photons_b) {
                let wb =
                    loss_amplitude(k.photons_b, lb, t_b) * loss_amplitude(b.photons_b, lb, t_b);
                op.add_entry(
                    FockKet::new(k.photons_a - la, k.photons_b - lb),
                    FockKet::new(b.photons_a - la, b.photons_b - lb),
                    v * wa * wb,
                );
            }
        }
    }
    op.prune_zeros();
    DensityOperator::from_channel_output(op)
}

/// Dense two-mode state vector with amplitudes for `|p, q⟩`, `p, q ≤ cutoff`.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseTwoMode {
    cutoff: usize,
    amps: Vec<Complex64>,
}

impl DenseTwoMode {
    pub fn zeros(cutoff: usize) -> Self {
        Self {
            cutoff,
            amps: vec![Complex64::new(0.0, 0.0); (cutoff + 1) * (cutoff + 1)],
        }
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    fn idx(&self, p: usize, q: usize) -> usize {
        p * (self.cutoff + 1) + q
    }

    pub fn get(&self, p: usize, q: usize) -> Complex64 {
        if p <= self.cutoff && q <= self.cutoff {
            self.amps[self.idx(p, q)]
        } else {
            Complex64::new(0.0, 0.0)
        }
    }

    pub fn set(&mut self, p: usize, q: usize, value: Complex64) -> Result<()> {
        if p + q > self.cutoff {
            return Err(Error::CutoffExceeded {
                needed: p + q,
                cutoff: self.cutoff,
            });
        }
        let i = self.idx(p, q);
        self.amps[i] = value;
        Ok(())
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(Complex64::norm_sqr).sum()
    }

    /// Nonzero amplitudes as `((p, q), amplitude)`.
    pub fn nonzero(&self) -> impl Iterator<Item = ((usize, usize), Complex64)> + '_ {
        let n = self.cutoff + 1;
        self.amps
            .iter()
            .enumerate()
            .filter(|(_, a)| **a != Complex64::new(0.0, 0.0))
            .map(move |(i, &a)| ((i / n, i % n), a))
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, i| acc * i as f64)
}

/// Fock-basis beam splitter with real amplitudes:
/// `a† → √T a† + √R b†`, `b† → √T b† − √R a†`.
///
/// The first mode is the one that is transmitted with amplitude `√T`; for a
/// vacuum second mode every output amplitude is non-negative.
pub fn beam_splitter_fock(input: &DenseTwoMode, transmittance: f64) -> Result<DenseTwoMode> {
    if !(0.0..=1.0).contains(&transmittance) {
        return Err(Error::InvalidParameter(format!(
            "transmittance {transmittance} outside [0, 1]"
        )));
    }
    let cutoff = input.cutoff;
    let st = transmittance.sqrt();
    let sr = (1.0 - transmittance).sqrt();
    let mut out = DenseTwoMode::zeros(cutoff);
    for ((p, q), amp) in input.nonzero() {
        if p + q > cutoff {
            return Err(Error::CutoffExceeded {
                needed: p + q,
                cutoff,
            });
        }
        let norm_in = (factorial(p) * factorial(q)).sqrt();
        for i in 0..=p {
            for j in 0..=q {
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                let coeff = binomial(p, i)
                    * binomial(q, j)
                    * st.powi(i as i32)
                    * sr.powi((p - i) as i32)
                    * sr.powi(j as i32)
                    * st.powi((q - j) as i32)
                    * sign;
                if coeff == 0.0 {
                    continue;
                }
                let x = i + j;
                let y = (p - i) + (q - j);
                let norm_out = (factorial(x) * factorial(y)).sqrt();
                let k = out.idx(x, y);
                out.amps[k] += amp * (coeff * norm_out / norm_in);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{make_mm_state, to_density};
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn lossless(g: f64) -> NoiseParams {
        NoiseParams::lossless(g, 1.0).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(NoiseParams::new(-0.1, 1.0, 1.0, 1.0).is_err());
        assert!(NoiseParams::new(0.1, -1.0, 1.0, 1.0).is_err());
        assert!(NoiseParams::new(0.1, 1.0, 1.2, 1.0).is_err());
        assert!(NoiseParams::new(0.1, 1.0, 1.0, f64::NAN).is_err());
        let p = NoiseParams::new(0.1, 2.0, 1.0, 0.7).unwrap();
        assert!((p.r_b() - 0.3).abs() < 1e-15);
        assert_eq!(p.r_a(), 0.0);
        assert!((p.gamma_l() - 0.2).abs() < 1e-15);
    }

    #[test]
    fn zero_phase_leaves_state_unchanged() {
        let s = make_mm_state(3, 1).unwrap();
        assert_eq!(apply_phase_shift(&s, 0.0), s);
    }

    #[test]
    fn noon_four_quarter_pi_flips_sign() {
        let s = apply_phase_shift(&make_mm_state(4, 0).unwrap(), PI / 4.0);
        let a = s.amplitude(FockKet::new(4, 0));
        let b = s.amplitude(FockKet::new(0, 4));
        assert!((a - Complex64::new(FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
        assert!((b - Complex64::new(-FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn mm_phase_amplitudes() {
        let phi = 0.37;
        let s = apply_phase_shift(&make_mm_state(5, 1).unwrap(), phi);
        let expect = |n: f64| Complex64::from_polar(FRAC_1_SQRT_2, n * phi);
        assert!((s.amplitude(FockKet::new(5, 1)) - expect(1.0)).norm() < 1e-15);
        assert!((s.amplitude(FockKet::new(1, 5)) - expect(5.0)).norm() < 1e-15);
    }

    #[test]
    fn dephase_without_noise_is_identity() {
        let rho = to_density(&apply_phase_shift(&make_mm_state(5, 1).unwrap(), 0.4));
        assert_eq!(dephase(&rho, 0.0, 3.0), rho);
    }

    #[test]
    fn dephase_mm_coherence() {
        let rho = to_density(&make_mm_state(5, 1).unwrap());
        let out = dephase(&rho, 0.1, 1.0);
        let (u, v) = (FockKet::new(5, 1), FockKet::new(1, 5));
        assert!((out.get(u, v).re - 0.5 * (-1.6f64).exp()).abs() < 1e-15);
        assert!((out.get(v, u).re - 0.5 * (-1.6f64).exp()).abs() < 1e-15);
        assert_eq!(out.get(u, u), rho.get(u, u));
    }

    #[test]
    fn noiseless_lossless_limit_is_pure_state() {
        for (m, mp) in [(1, 0), (3, 1), (5, 1), (4, 2)] {
            let phi = 0.83;
            let direct = lossy_dephased_density(m, mp, phi, &lossless(0.0)).unwrap();
            let pipeline = to_density(&apply_phase_shift(&make_mm_state(m, mp).unwrap(), phi));
            assert!(direct.max_abs_diff(&pipeline) < 1e-15, "({m},{mp})");
        }
    }

    #[test]
    fn lossless_limit_matches_dephased_pure_state() {
        let (m, mp, phi, g) = (5, 1, 0.3, 0.2);
        let direct = lossy_dephased_density(m, mp, phi, &lossless(g)).unwrap();
        let pipeline = dephase(
            &to_density(&apply_phase_shift(&make_mm_state(m, mp).unwrap(), phi)),
            g,
            1.0,
        );
        assert!(direct.max_abs_diff(&pipeline) < 1e-15);
        assert_eq!(direct.entries().count(), 4);
    }

    #[test]
    fn coefficients_without_loss_are_deltas() {
        let c = loss_coefficients(4, 2, &lossless(0.3)).unwrap();
        for ((k, kp), w) in c.d1.iter() {
            assert_eq!(w, if (k, kp) == (4, 2) { 1.0 } else { 0.0 });
        }
        for ((k, kp), w) in c.d3.iter() {
            assert_eq!(w, if (k, kp) == (2, 2) { 1.0 } else { 0.0 });
        }
    }

    #[test]
    fn single_photon_loss_in_upper_arm() {
        let p = NoiseParams::new(0.0, 1.0, 1.0, 0.5).unwrap();
        let c = loss_coefficients(1, 0, &p).unwrap();
        // the |m,m′⟩ branch keeps its photon in the lossless arm a
        assert_eq!(c.d1.get(1, 0), 1.0);
        assert_eq!(c.d1.get(0, 0), 0.0);
        // the |m′,m⟩ branch loses its arm-b photon half the time
        assert!((c.d2.get(1, 0) - 0.5).abs() < 1e-15);
        assert!((c.d2.get(0, 0) - 0.5).abs() < 1e-15);
        assert!((c.d3.get(0, 0) - 0.5f64.sqrt()).abs() < 1e-15);
        assert!((c.d4.get(0, 0) - 0.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn d2_is_d1_with_arms_exchanged() {
        let p = NoiseParams::new(0.0, 1.0, 0.6, 0.85).unwrap();
        let swapped = NoiseParams::new(0.0, 1.0, 0.85, 0.6).unwrap();
        let c = loss_coefficients(4, 1, &p).unwrap();
        let s = loss_coefficients(4, 1, &swapped).unwrap();
        for ((k, kp), w) in c.d2.iter() {
            assert!((w - s.d1.get(k, kp)).abs() < 1e-15);
        }
        for ((k, kp), w) in c.d4.iter() {
            assert!((w - c.d3.get(kp, k)).abs() < 1e-15);
        }
    }

    #[test]
    fn kraus_loss_matches_coefficient_assembly() {
        let (m, mp, phi) = (3, 1, 0.45);
        let p = NoiseParams::new(0.15, 1.0, 0.8, 0.6).unwrap();
        let assembled = lossy_dephased_density(m, mp, phi, &p).unwrap();
        let pure = to_density(&apply_phase_shift(&make_mm_state(m, mp).unwrap(), phi));
        let loss_then_dephase = dephase(&apply_loss(&pure, 0.8, 0.6), 0.15, 1.0);
        let dephase_then_loss = apply_loss(&dephase(&pure, 0.15, 1.0), 0.8, 0.6);
        assert!(assembled.max_abs_diff(&loss_then_dephase) < 1e-14);
        assert!(assembled.max_abs_diff(&dephase_then_loss) < 1e-14);
    }

    #[test]
    fn beam_splitter_limits() {
        let mut v = DenseTwoMode::zeros(3);
        v.set(2, 1, Complex64::new(0.6, 0.0)).unwrap();
        v.set(0, 1, Complex64::new(0.0, 0.8)).unwrap();
        let same = beam_splitter_fock(&v, 1.0).unwrap();
        assert_eq!(same, v);

        let swapped = beam_splitter_fock(&v, 0.0).unwrap();
        assert!((swapped.get(1, 2).norm() - 0.6).abs() < 1e-15);
        assert!((swapped.get(1, 0).norm() - 0.8).abs() < 1e-15);
        assert!((swapped.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn beam_splitter_single_photon_half() {
        let mut v = DenseTwoMode::zeros(1);
        v.set(1, 0, Complex64::new(1.0, 0.0)).unwrap();
        let out = beam_splitter_fock(&v, 0.5).unwrap();
        assert!((out.get(1, 0).re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((out.get(0, 1).re - FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn beam_splitter_cutoff_overflow() {
        let mut v = DenseTwoMode::zeros(2);
        assert!(matches!(
            v.set(2, 1, Complex64::new(1.0, 0.0)),
            Err(Error::CutoffExceeded { needed: 3, cutoff: 2 })
        ));
        assert!(beam_splitter_fock(&v, 1.5).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10.0);
        assert_eq!(binomial(8, 0), 1.0);
        assert_eq!(binomial(3, 4), 0.0);
        assert_eq!(binomial(20, 10), 184756.0);
    }
}
