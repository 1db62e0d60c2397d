//! Figures of merit for phase estimation with parity detection.
//!
//! Closed forms for the dephased (and lossy) mm′ state sit next to generic
//! numerical routes that work on any phase-parametrized density-operator
//! family: linear error propagation on the parity signal, and the quantum
//! Fisher information from the symmetric logarithmic derivative (SLD).

use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::channels::{dephasing_factor, loss_coefficients, lossy_dephased_density, NoiseParams};
use crate::detection::{parity_operator, ParityOperator};
use crate::error::{Error, Result};
use crate::fock::{Basis, DensityOperator, FockKet, Operator};

/// Central-difference step for numerical phase derivatives.
pub const DERIVATIVE_STEP: f64 = 1e-6;
/// Slopes below this are treated as a flat fringe (infinite sensitivity).
pub const MIN_SLOPE: f64 = 1e-14;
/// SLD pairs with `λ_i + λ_j` below this fraction of the largest eigenvalue are dropped.
pub const SLD_NULL_THRESHOLD: f64 = 1e-12;

fn check_state(m: usize, m_prime: usize) -> Result<usize> {
    if m <= m_prime {
        Err(Error::DegenerateState { m, m_prime })
    } else {
        Ok(m - m_prime)
    }
}

/// Heisenberg limit `1/(m+m′)` counting every photon as a resource.
pub fn heisenberg_limit(m: usize, m_prime: usize) -> f64 {
    1.0 / (m + m_prime) as f64
}

/// Shot-noise limit `1/√(m+m′)`.
pub fn shot_noise_limit(m: usize, m_prime: usize) -> f64 {
    1.0 / ((m + m_prime) as f64).sqrt()
}

/// Working point `π/(2Δm)` where the parity fringe is steepest.
pub fn optimal_phase(m: usize, m_prime: usize) -> Result<f64> {
    Ok(PI / (2 * check_state(m, m_prime)?) as f64)
}

/// Error-propagation sensitivity of parity detection on the dephased mm′ state:
///
/// `δφ = √[(1 − D² cos²(Δm φ)) / (Δm² D² sin²(Δm φ))]`, `D = exp(−Δm²ΓL)`.
///
/// Returns `f64::INFINITY` where the fringe is flat.
pub fn sensitivity_closed_form(
    m: usize,
    m_prime: usize,
    gamma: f64,
    dephase_len: f64,
    phi: f64,
) -> Result<f64> {
    let dm = check_state(m, m_prime)? as f64;
    let decay = dephasing_factor(dm as i64, gamma * dephase_len);
    let (s, c) = (dm * phi).sin_cos();
    let denom = dm * dm * decay * decay * s * s;
    if denom == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok((signal_variance(0.0, decay, 1.0, s, c) / denom).sqrt())
}

/// `1 − ⟨Π⟩²` for `⟨Π⟩ = k1 + sign·k2·cos`, expanded so that `sin²` appears
/// explicitly and the fringe extrema of a perfect fringe do not cancel to zero.
fn signal_variance(k1: f64, k2: f64, sign: f64, s: f64, c: f64) -> f64 {
    ((1.0 - k1 * k1 - k2 * k2) - 2.0 * sign * k1 * k2 * c + k2 * k2 * s * s).max(0.0)
}

/// `(K₁, K₂)`: fringe offset and amplitude of the lossy parity signal
/// `⟨Π⟩ = K₁ + (−1)^{m+m′} K₂ cos(Δm φ)`.
///
/// The branch weights `|α|² = |αβ*| = ½` are folded in, so the lossless
/// noiseless limit is `(0, 1)`. `K₂` carries the dephasing decay.
pub fn k_coefficients(m: usize, m_prime: usize, params: &NoiseParams) -> Result<(f64, f64)> {
    let c = loss_coefficients(m, m_prime, params)?;
    let k1 = 0.5 * (c.d1.diagonal_sum() + c.d2.diagonal_sum());
    let k2 = 0.5
        * (c.d3.diagonal_sum() + c.d4.diagonal_sum())
        * dephasing_factor(c.delta_m as i64, params.gamma_l());
    Ok((k1, k2))
}

fn parity_sign(m: usize, m_prime: usize) -> f64 {
    if (m + m_prime).is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Closed-form parity signal under loss and dephasing.
pub fn parity_signal_lossy(
    m: usize,
    m_prime: usize,
    params: &NoiseParams,
    phi: f64,
) -> Result<f64> {
    let dm = check_state(m, m_prime)? as f64;
    let (k1, k2) = k_coefficients(m, m_prime, params)?;
    Ok(k1 + parity_sign(m, m_prime) * k2 * (dm * phi).cos())
}

/// Error-propagation sensitivity under loss and dephasing, built from `K₁`, `K₂`.
pub fn sensitivity_lossy(
    m: usize,
    m_prime: usize,
    params: &NoiseParams,
    phi: f64,
) -> Result<f64> {
    let dm = check_state(m, m_prime)? as f64;
    let (k1, k2) = k_coefficients(m, m_prime, params)?;
    let (s, c) = (dm * phi).sin_cos();
    let slope = dm * k2 * s;
    if slope == 0.0 {
        return Ok(f64::INFINITY);
    }
    let variance = signal_variance(k1, k2, parity_sign(m, m_prime), s, c);
    Ok((variance / (slope * slope)).sqrt())
}

/// Relative visibility: fringe amplitude over its noiseless, lossless value, `K₂`.
pub fn visibility(m: usize, m_prime: usize, params: &NoiseParams) -> Result<f64> {
    Ok(k_coefficients(m, m_prime, params)?.1)
}

/// `F = Δm² exp(−2Δm²ΓL)`.
pub fn qfi_closed_form(m: usize, m_prime: usize, gamma: f64, dephase_len: f64) -> Result<f64> {
    let dm = check_state(m, m_prime)? as f64;
    let decay = dephasing_factor(dm as i64, gamma * dephase_len);
    Ok(dm * dm * decay * decay)
}

/// Quantum Cramér-Rao bound `1/√F`; infinite when `F = 0`.
pub fn qcrb(qfi: f64) -> f64 {
    if qfi > 0.0 {
        1.0 / qfi.sqrt()
    } else {
        f64::INFINITY
    }
}

/// A density operator depending smoothly on the phase `φ`.
pub trait DensityFamily {
    fn density(&self, phi: f64) -> Result<DensityOperator>;

    /// `∂ρ/∂φ`; central finite difference unless overridden.
    fn derivative(&self, phi: f64) -> Result<Operator> {
        let h = DERIVATIVE_STEP;
        let plus = self.density(phi + h)?.into_operator();
        let minus = self.density(phi - h)?.into_operator();
        Ok(plus
            .add(&minus.scale(Complex64::new(-1.0, 0.0)))
            .scale(Complex64::new(0.5 / h, 0.0)))
    }
}

/// The mm′ state after phase shift, loss and dephasing.
///
/// `φ` enters only through the arm-`b` rotation, so the derivative is exact:
/// `∂ρ/∂φ (k, b) = i (k_b − b_b) ρ(k, b)`.
#[derive(Debug, Clone, Copy)]
pub struct MmFamily {
    pub m: usize,
    pub m_prime: usize,
    pub params: NoiseParams,
}

impl MmFamily {
    pub fn new(m: usize, m_prime: usize, params: NoiseParams) -> Result<Self> {
        check_state(m, m_prime)?;
        Ok(Self {
            m,
            m_prime,
            params,
        })
    }
}

impl DensityFamily for MmFamily {
    fn density(&self, phi: f64) -> Result<DensityOperator> {
        lossy_dephased_density(self.m, self.m_prime, phi, &self.params)
    }

    fn derivative(&self, phi: f64) -> Result<Operator> {
        let rho = self.density(phi)?;
        Ok(Operator::from_entries(rho.entries().map(|(&(k, b), &v)| {
            let delta = k.photons_b as f64 - b.photons_b as f64;
            ((k, b), v * Complex64::new(0.0, delta))
        })))
    }
}

/// Any closure `φ ↦ ρ(φ)`, differentiated numerically.
pub struct FnFamily<F>(pub F);

impl<F> DensityFamily for FnFamily<F>
where
    F: Fn(f64) -> Result<DensityOperator>,
{
    fn density(&self, phi: f64) -> Result<DensityOperator> {
        (self.0)(phi)
    }
}

/// Linear error propagation `ΔΠ / |∂⟨Π⟩/∂φ|` with `⟨Π²⟩ = 1`, using the shifted
/// parity signal and a central difference of step [`DERIVATIVE_STEP`].
pub fn sensitivity_error_propagation(family: &dyn DensityFamily, phi: f64) -> Result<f64> {
    let rho = family.density(phi)?;
    let parity = parity_operator(rho.max_total_photons());
    sensitivity_error_propagation_with(family, phi, &parity)
}

/// As [`sensitivity_error_propagation`] with an explicit parity observable.
pub fn sensitivity_error_propagation_with(
    family: &dyn DensityFamily,
    phi: f64,
    parity: &ParityOperator,
) -> Result<f64> {
    let signal = |p: f64| -> Result<f64> { parity.expectation(&family.density(p)?, true) };
    let h = DERIVATIVE_STEP;
    let slope = (signal(phi + h)? - signal(phi - h)?) / (2.0 * h);
    let half = (signal(phi + h / 2.0)? - signal(phi - h / 2.0)?) / h;
    if (slope - half).abs() > 1e-5 * slope.abs().max(1.0) {
        return Err(Error::Derivative(format!(
            "step {h:e} gives {slope:e}, step {:e} gives {half:e}",
            h / 2.0
        )));
    }
    if slope.abs() < MIN_SLOPE {
        return Ok(f64::INFINITY);
    }
    let mean = signal(phi)?;
    Ok((1.0 - mean * mean).max(0.0).sqrt() / slope.abs())
}

/// Outcome of the numerical SLD construction.
#[derive(Debug, Clone)]
pub struct SldResult {
    /// Kets indexing the rows and columns of `sld_matrix`.
    pub basis: Vec<FockKet>,
    /// Eigenvalues of `ρ` on `basis`, ascending.
    pub eigenvalues: Vec<f64>,
    pub sld_matrix: DMatrix<Complex64>,
    pub qfi: f64,
}

impl SldResult {
    /// `Tr[ρ L²]`, which must reproduce `qfi`.
    pub fn qfi_from_trace(&self, rho: &DensityOperator) -> Result<f64> {
        let basis = Basis::spanning(self.basis.iter().copied());
        let dense = rho.operator().to_dense(&basis)?;
        Ok((dense * &self.sld_matrix * &self.sld_matrix).trace().re)
    }
}

/// Quantum Fisher information from the SLD of `family` at `φ`.
///
/// In the eigenbasis `{λ_i, |i⟩}` of ρ the SLD is `L_ij = 2⟨i|∂ρ|j⟩/(λ_i+λ_j)` and
/// `F = Σ 2|⟨i|∂ρ|j⟩|²/(λ_i+λ_j)`, skipping pairs inside the kernel of ρ.
pub fn qfi_numerical(family: &dyn DensityFamily, phi: f64) -> Result<SldResult> {
    let rho = family.density(phi)?;
    let drho = family.derivative(phi)?;
    let defect = drho.hermiticity_defect();
    if defect > 1e-8 {
        return Err(Error::InvalidDensity(format!(
            "phase derivative is not Hermitian (defect {defect:e})"
        )));
    }
    let basis = Basis::spanning(rho.operator().support().into_iter().chain(drho.support()));
    let rho_d = rho.operator().to_dense(&basis)?;
    let drho_d = drho.to_dense(&basis)?;

    let eig = SymmetricEigen::new(rho_d);
    let mut order: Vec<usize> = (0..basis.len()).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let lambdas: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vecs = DMatrix::from_fn(basis.len(), basis.len(), |r, c| {
        eig.eigenvectors[(r, order[c])]
    });

    let largest = lambdas.iter().copied().fold(0.0, f64::max);
    let cutoff = SLD_NULL_THRESHOLD * largest;
    let in_eig = vecs.adjoint() * &drho_d * &vecs;
    let dim = basis.len();
    let mut sld_eig = DMatrix::zeros(dim, dim);
    let mut qfi = 0.0;
    for i in 0..dim {
        for j in 0..dim {
            let s = lambdas[i] + lambdas[j];
            if s > cutoff {
                let a = in_eig[(i, j)];
                sld_eig[(i, j)] = a * (2.0 / s);
                qfi += 2.0 * a.norm_sqr() / s;
            }
        }
    }
    let sld_matrix = &vecs * sld_eig * vecs.adjoint();
    Ok(SldResult {
        basis: basis.kets().to_vec(),
        eigenvalues: lambdas,
        sld_matrix,
        qfi,
    })
}

/// Parity sensitivity at the optimal working point against the QCRB.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Saturation {
    pub saturated: bool,
    pub gap: f64,
    pub sensitivity_min: f64,
    pub qcrb: f64,
}

/// Absolute gap below which parity detection counts as saturating the QCRB.
pub const SATURATION_TOL: f64 = 1e-10;

pub fn saturation_check(
    m: usize,
    m_prime: usize,
    gamma: f64,
    dephase_len: f64,
) -> Result<Saturation> {
    let phi = optimal_phase(m, m_prime)?;
    let sensitivity_min = sensitivity_closed_form(m, m_prime, gamma, dephase_len, phi)?;
    let bound = qcrb(qfi_closed_form(m, m_prime, gamma, dephase_len)?);
    let gap = (sensitivity_min - bound).abs();
    Ok(Saturation {
        saturated: gap < SATURATION_TOL,
        gap,
        sensitivity_min,
        qcrb: bound,
    })
}

/// Dephasing rate at which the optimal sensitivity `e^{Δm²ΓL}/Δm` reaches the
/// shot-noise limit; `None` if it never beats it.
pub fn snl_crossing_gamma(m: usize, m_prime: usize, dephase_len: f64) -> Result<Option<f64>> {
    let dm = check_state(m, m_prime)? as f64;
    let ratio = dm * shot_noise_limit(m, m_prime);
    if ratio <= 1.0 || dephase_len <= 0.0 {
        return Ok(None);
    }
    Ok(Some(ratio.ln() / (dm * dm * dephase_len)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetrologyReport {
    pub phi: f64,
    pub sensitivity: f64,
    pub visibility: f64,
    pub qfi: f64,
    pub qcrb: f64,
    pub snl: f64,
    pub hl: f64,
}

/// All figures of merit at one parameter point. The QFI is numerical when
/// there is loss.
pub fn report(m: usize, m_prime: usize, params: &NoiseParams, phi: f64) -> Result<MetrologyReport> {
    let qfi = if params.is_lossless() {
        qfi_closed_form(m, m_prime, params.gamma(), params.dephase_len())?
    } else {
        qfi_numerical(&MmFamily::new(m, m_prime, *params)?, phi)?.qfi
    };
    Ok(MetrologyReport {
        phi,
        sensitivity: sensitivity_lossy(m, m_prime, params, phi)?,
        visibility: visibility(m, m_prime, params)?,
        qfi,
        qcrb: qcrb(qfi),
        snl: shot_noise_limit(m, m_prime),
        hl: heisenberg_limit(m, m_prime),
    })
}
