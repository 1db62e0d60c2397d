//! Parity detection inside the interferometer.
//!
//! On the sector of total photon number `n` the observable is
//! `Π_n = iⁿ Σ_{k=0}^{n} (−1)^{n−k} |k, n−k⟩⟨n−k, k|`: it swaps the two arms,
//! with a sign that alternates in the mode-`b` occupation of the bra. Each
//! `Π_n` is Hermitian and squares to the identity, so `Π` has spectrum `±1`.

use num_complex::Complex64;

use crate::channels::rotate_phase_exact_quarter;
use crate::error::{Error, Result};
use crate::fock::{expectation, DensityOperator, Dyad, FockKet, Operator};

/// `iⁿ` without rounding.
pub(crate) fn i_pow(n: i64) -> Complex64 {
    match n.rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParityOperator {
    max_total: usize,
    op: Operator,
}

/// Dyads and weights of the parity operator on the `n`-photon sector.
pub fn parity_sector(n: usize) -> Vec<(Dyad, Complex64)> {
    let phase = i_pow(n as i64);
    (0..=n)
        .map(|k| {
            let sign = if (n - k).is_multiple_of(2) { 1.0 } else { -1.0 };
            (
                (FockKet::new(k, n - k), FockKet::new(n - k, k)),
                phase * sign,
            )
        })
        .collect()
}

/// Parity on every sector with up to `max_total_photons` photons.
pub fn parity_operator(max_total_photons: usize) -> ParityOperator {
    ParityOperator {
        max_total: max_total_photons,
        op: Operator::from_entries((0..=max_total_photons).flat_map(parity_sector)),
    }
}

impl ParityOperator {
    /// Wraps an arbitrary operator as the parity observable without checking it.
    /// Used to inject faults when exercising the validation suite.
    pub fn from_parts(max_total: usize, op: Operator) -> Self {
        Self { max_total, op }
    }

    pub fn max_total_photons(&self) -> usize {
        self.max_total
    }

    pub fn operator(&self) -> &Operator {
        &self.op
    }

    /// `Tr[Π ρ]`. With `shifted`, a half-wave plate in front of the phase shifter
    /// adds `π/2` to the phase before detection.
    pub fn expectation(&self, rho: &DensityOperator, shifted: bool) -> Result<f64> {
        let needed = rho.max_total_photons();
        if needed > self.max_total {
            return Err(Error::CutoffExceeded {
                needed,
                cutoff: self.max_total,
            });
        }
        if shifted {
            expectation(&self.op, &rotate_phase_exact_quarter(rho))
        } else {
            expectation(&self.op, rho)
        }
    }
}

/// Parity expectation using an operator sized to the support of `rho`.
pub fn parity_expectation(rho: &DensityOperator, shifted: bool) -> Result<f64> {
    parity_operator(rho.max_total_photons()).expectation(rho, shifted)
}
