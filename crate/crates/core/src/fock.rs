//! Two-mode Fock kets, pure superpositions and sparse operators.
//!
//! Kets are written `|a, b⟩`: the first number is the photon count in mode `a`
//! (lower arm), the second in mode `b` (upper arm, where the phase shifter sits).
//! Operators are stored as maps from dyads `|ket⟩⟨bra|` to complex weights, in
//! canonical order (ket before bra, each compared lexicographically), so two
//! operators are equal exactly when their maps are.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance for Hermiticity, trace and normalization checks.
pub const EPS_HERM: f64 = 1e-12;
/// Largest imaginary residual accepted from `Tr[op ρ]` of a Hermitian operator.
pub const EPS_EXPECT: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FockKet {
    pub photons_a: usize,
    pub photons_b: usize,
}

impl FockKet {
    pub const fn new(photons_a: usize, photons_b: usize) -> Self {
        Self {
            photons_a,
            photons_b,
        }
    }

    pub const fn total(&self) -> usize {
        self.photons_a + self.photons_b
    }

    /// The ket with the two modes exchanged.
    pub const fn swapped(&self) -> Self {
        Self::new(self.photons_b, self.photons_a)
    }
}

impl fmt::Display for FockKet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{},{}>", self.photons_a, self.photons_b)
    }
}

/// A dyad `|ket⟩⟨bra|`.
pub type Dyad = (FockKet, FockKet);

/// Normalized superposition of two-mode Fock kets.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModePureState {
    terms: Vec<(FockKet, Complex64)>,
}

impl TwoModePureState {
    pub fn new(terms: Vec<(FockKet, Complex64)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (ket, _) in &terms {
            if !seen.insert(*ket) {
                return Err(Error::DuplicateKet {
                    a: ket.photons_a,
                    b: ket.photons_b,
                });
            }
        }
        let norm: f64 = terms.iter().map(|(_, c)| c.norm_sqr()).sum();
        if (norm - 1.0).abs() > EPS_HERM {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self { terms })
    }

    pub fn terms(&self) -> &[(FockKet, Complex64)] {
        &self.terms
    }

    pub fn amplitude(&self, ket: FockKet) -> Complex64 {
        self.terms
            .iter()
            .find(|(k, _)| *k == ket)
            .map(|(_, c)| *c)
            .unwrap_or_default()
    }

    /// Applies `f` to every amplitude; used by channels that only rephase terms.
    pub(crate) fn map_amplitudes(&self, f: impl Fn(FockKet, Complex64) -> Complex64) -> Self {
        Self {
            terms: self.terms.iter().map(|&(k, c)| (k, f(k, c))).collect(),
        }
    }

    pub fn max_total_photons(&self) -> usize {
        self.terms.iter().map(|(k, _)| k.total()).max().unwrap_or(0)
    }
}

/// The mm′ state `(|m,m′⟩ + |m′,m⟩)/√2`; a N00N state when `m_prime == 0`.
pub fn make_mm_state(m: usize, m_prime: usize) -> Result<TwoModePureState> {
    if m <= m_prime {
        return Err(Error::DegenerateState { m, m_prime });
    }
    let amp = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    TwoModePureState::new(vec![
        (FockKet::new(m, m_prime), amp),
        (FockKet::new(m_prime, m), amp),
    ])
}

/// Sparse operator on the two-mode Fock space.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Operator {
    entries: BTreeMap<Dyad, Complex64>,
}

impl Operator {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Builds an operator from dyads, summing repeated dyads and dropping exact zeros.
    pub fn from_entries(entries: impl IntoIterator<Item = (Dyad, Complex64)>) -> Self {
        let mut op = Self::zero();
        for (dyad, value) in entries {
            op.add_entry(dyad.0, dyad.1, value);
        }
        op.prune_zeros();
        op
    }

    /// Identity on every ket with total photon number `<= max_total`.
    pub fn identity(max_total: usize) -> Self {
        Self::diagonal(max_total, |_| 1.0)
    }

    pub fn number_a(max_total: usize) -> Self {
        Self::diagonal(max_total, |k| k.photons_a as f64)
    }

    pub fn number_b(max_total: usize) -> Self {
        Self::diagonal(max_total, |k| k.photons_b as f64)
    }

    fn diagonal(max_total: usize, f: impl Fn(FockKet) -> f64) -> Self {
        Self::from_entries(
            Basis::up_to(max_total)
                .kets()
                .iter()
                .map(|&k| ((k, k), Complex64::new(f(k), 0.0))),
        )
    }

    pub(crate) fn add_entry(&mut self, ket: FockKet, bra: FockKet, value: Complex64) {
        *self.entries.entry((ket, bra)).or_default() += value;
    }

    pub(crate) fn prune_zeros(&mut self) {
        self.entries.retain(|_, v| *v != Complex64::new(0.0, 0.0));
    }

    pub fn get(&self, ket: FockKet, bra: FockKet) -> Complex64 {
        self.entries.get(&(ket, bra)).copied().unwrap_or_default()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Dyad, &Complex64)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn trace(&self) -> Complex64 {
        self.entries
            .iter()
            .filter(|((k, b), _)| k == b)
            .map(|(_, v)| *v)
            .sum()
    }

    pub fn adjoint(&self) -> Self {
        Self {
            entries: self
                .entries
                .iter()
                .map(|(&(k, b), v)| ((b, k), v.conj()))
                .collect(),
        }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self::from_entries(self.entries.iter().map(|(&d, &v)| (d, v * factor)))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_entries(
            self.entries
                .iter()
                .chain(other.entries.iter())
                .map(|(&d, &v)| (d, v)),
        )
    }

    /// Operator product `self · other`.
    pub fn product(&self, other: &Self) -> Self {
        let mut by_ket: HashMap<FockKet, Vec<(FockKet, Complex64)>> = HashMap::new();
        for (&(k, b), &v) in &other.entries {
            by_ket.entry(k).or_default().push((b, v));
        }
        let mut out = Self::zero();
        for (&(k, mid), &v) in &self.entries {
            if let Some(row) = by_ket.get(&mid) {
                for &(b, w) in row {
                    out.add_entry(k, b, v * w);
                }
            }
        }
        out.prune_zeros();
        out
    }

    /// Largest `|entry(k,b) − conj(entry(b,k))|`.
    pub fn hermiticity_defect(&self) -> f64 {
        self.entries
            .iter()
            .map(|(&(k, b), v)| (v - self.get(b, k).conj()).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() <= tol
    }

    /// Largest total photon number on either side of any dyad.
    pub fn max_total_photons(&self) -> usize {
        self.entries
            .keys()
            .map(|(k, b)| k.total().max(b.total()))
            .max()
            .unwrap_or(0)
    }

    /// Every ket appearing on either side of a dyad.
    pub fn support(&self) -> BTreeSet<FockKet> {
        self.entries.keys().flat_map(|&(k, b)| [k, b]).collect()
    }

    /// Largest entrywise difference; absent dyads count as zero.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let keys: BTreeSet<&Dyad> = self.entries.keys().chain(other.entries.keys()).collect();
        keys.into_iter()
            .map(|&(k, b)| (self.get(k, b) - other.get(k, b)).norm())
            .fold(0.0, f64::max)
    }

    pub fn to_dense(&self, basis: &Basis) -> Result<DMatrix<Complex64>> {
        let dim = basis.len();
        let mut out = DMatrix::zeros(dim, dim);
        for (&(k, b), &v) in &self.entries {
            match (basis.index_of(k), basis.index_of(b)) {
                (Some(i), Some(j)) => out[(i, j)] = v,
                _ => {
                    return Err(Error::CutoffExceeded {
                        needed: k.total().max(b.total()),
                        cutoff: basis.max_total(),
                    })
                }
            }
        }
        Ok(out)
    }

    /// Reads a dense matrix back; entries with modulus `<= drop_below` are omitted.
    pub fn from_dense(matrix: &DMatrix<Complex64>, basis: &Basis, drop_below: f64) -> Self {
        let mut op = Self::zero();
        for (i, &k) in basis.kets().iter().enumerate() {
            for (j, &b) in basis.kets().iter().enumerate() {
                let v = matrix[(i, j)];
                if v.norm() > drop_below {
                    op.add_entry(k, b, v);
                }
            }
        }
        op
    }
}

/// Density operator: Hermitian, unit trace, non-negative populations.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    op: Operator,
}

impl DensityOperator {
    pub fn new(op: Operator) -> Result<Self> {
        let defect = op.hermiticity_defect();
        if defect > EPS_HERM {
            return Err(Error::InvalidDensity(format!(
                "not Hermitian (defect {defect:e})"
            )));
        }
        let tr = op.trace();
        if (tr.re - 1.0).abs() > EPS_HERM || tr.im.abs() > EPS_HERM {
            return Err(Error::InvalidDensity(format!("trace {tr} != 1")));
        }
        if let Some(((k, _), v)) = op
            .entries()
            .find(|((k, b), v)| k == b && (v.re < -EPS_HERM || v.im.abs() > EPS_HERM))
        {
            return Err(Error::InvalidDensity(format!(
                "population at {k} is {v}"
            )));
        }
        Ok(Self { op })
    }

    /// Wraps an operator produced by a trace- and Hermiticity-preserving map of a valid ρ.
    pub(crate) fn from_channel_output(op: Operator) -> Self {
        debug_assert!(op.is_hermitian(1e-10), "channel broke Hermiticity");
        Self { op }
    }

    pub fn operator(&self) -> &Operator {
        &self.op
    }

    pub fn into_operator(self) -> Operator {
        self.op
    }

    pub fn get(&self, ket: FockKet, bra: FockKet) -> Complex64 {
        self.op.get(ket, bra)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Dyad, &Complex64)> {
        self.op.entries()
    }

    pub fn trace(&self) -> f64 {
        self.op.trace().re
    }

    /// `Tr[ρ²]`.
    pub fn purity(&self) -> f64 {
        self.op.product(&self.op).trace().re
    }

    pub fn max_total_photons(&self) -> usize {
        self.op.max_total_photons()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.op.max_abs_diff(&other.op)
    }
}

/// `|ψ⟩⟨ψ|`.
pub fn to_density(state: &TwoModePureState) -> DensityOperator {
    let mut op = Operator::zero();
    for &(k, ck) in state.terms() {
        for &(b, cb) in state.terms() {
            op.add_entry(k, b, ck * cb.conj());
        }
    }
    op.prune_zeros();
    DensityOperator::from_channel_output(op)
}

/// `Tr[op · ρ]` for a Hermitian `op`.
pub fn expectation(op: &Operator, rho: &DensityOperator) -> Result<f64> {
    // Tr[op ρ] = Σ op(k,b) ρ(b,k)
    let value: Complex64 = op
        .entries()
        .map(|(&(k, b), &v)| v * rho.get(b, k))
        .sum();
    if value.im.abs() > EPS_EXPECT {
        return Err(Error::NonHermitianExpectation {
            residual: value.im.abs(),
        });
    }
    Ok(value.re)
}

/// Ordered list of kets used for dense matrices.
///
/// [`Basis::up_to`] enumerates sectors of increasing total photon number and,
/// within a sector, kets in increasing `photons_a`.
#[derive(Debug, Clone)]
pub struct Basis {
    kets: Vec<FockKet>,
    index: HashMap<FockKet, usize>,
}

impl Basis {
    pub fn up_to(max_total: usize) -> Self {
        let kets = (0..=max_total)
            .flat_map(|n| (0..=n).map(move |a| FockKet::new(a, n - a)))
            .collect();
        Self::from_kets(kets)
    }

    /// Basis spanning exactly the given kets, in canonical order.
    pub fn spanning(kets: impl IntoIterator<Item = FockKet>) -> Self {
        let set: BTreeSet<FockKet> = kets.into_iter().collect();
        Self::from_kets(set.into_iter().collect())
    }

    fn from_kets(kets: Vec<FockKet>) -> Self {
        let index = kets.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        Self { kets, index }
    }

    pub fn kets(&self) -> &[FockKet] {
        &self.kets
    }

    pub fn len(&self) -> usize {
        self.kets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kets.is_empty()
    }

    pub fn index_of(&self, ket: FockKet) -> Option<usize> {
        self.index.get(&ket).copied()
    }

    pub fn max_total(&self) -> usize {
        self.kets.iter().map(FockKet::total).max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn noon_one_photon() {
        let s = make_mm_state(1, 0).unwrap();
        assert_eq!(s.amplitude(FockKet::new(1, 0)), c(FRAC_1_SQRT_2));
        assert_eq!(s.amplitude(FockKet::new(0, 1)), c(FRAC_1_SQRT_2));
        assert_eq!(s.terms().len(), 2);
    }

    #[test]
    fn mm_state_five_one() {
        let s = make_mm_state(5, 1).unwrap();
        assert_eq!(s.terms()[0].0, FockKet::new(5, 1));
        assert_eq!(s.terms()[1].0, FockKet::new(1, 5));
    }

    #[test]
    fn degenerate_states_rejected() {
        assert_eq!(
            make_mm_state(3, 3),
            Err(Error::DegenerateState { m: 3, m_prime: 3 })
        );
        assert!(make_mm_state(1, 2).is_err());
    }

    #[test]
    fn pure_state_validation() {
        let k = FockKet::new(1, 0);
        assert!(matches!(
            TwoModePureState::new(vec![(k, c(0.5))]),
            Err(Error::NotNormalized { .. })
        ));
        assert!(matches!(
            TwoModePureState::new(vec![(k, c(FRAC_1_SQRT_2)), (k, c(FRAC_1_SQRT_2))]),
            Err(Error::DuplicateKet { a: 1, b: 0 })
        ));
    }

    #[test]
    fn density_of_basis_ket() {
        let k = FockKet::new(1, 0);
        let rho = to_density(&TwoModePureState::new(vec![(k, c(1.0))]).unwrap());
        assert_eq!(rho.operator().len(), 1);
        assert_eq!(rho.get(k, k), c(1.0));
    }

    #[test]
    fn density_of_mm_state_has_four_halves() {
        for (m, mp) in [(1, 0), (5, 1)] {
            let rho = to_density(&make_mm_state(m, mp).unwrap());
            assert_eq!(rho.operator().len(), 4);
            let kets = [FockKet::new(m, mp), FockKet::new(mp, m)];
            for k in kets {
                for b in kets {
                    assert!((rho.get(k, b) - c(0.5)).norm() < 1e-15);
                }
            }
            assert!((rho.purity() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn identity_and_number_expectations() {
        let rho = to_density(&make_mm_state(3, 1).unwrap());
        assert!((expectation(&Operator::identity(4), &rho).unwrap() - 1.0).abs() < 1e-12);

        let ket = TwoModePureState::new(vec![(FockKet::new(1, 0), c(1.0))]).unwrap();
        let rho = to_density(&ket);
        assert_eq!(expectation(&Operator::number_a(1), &rho).unwrap(), 1.0);
        assert_eq!(expectation(&Operator::number_b(1), &rho).unwrap(), 0.0);
    }

    #[test]
    fn non_hermitian_operand_rejected() {
        let rho = to_density(&make_mm_state(1, 0).unwrap());
        let skew = Operator::from_entries([(
            (FockKet::new(1, 0), FockKet::new(0, 1)),
            Complex64::new(0.0, 1.0),
        )]);
        assert!(matches!(
            expectation(&skew, &rho),
            Err(Error::NonHermitianExpectation { .. })
        ));
    }

    #[test]
    fn density_validation() {
        let k = FockKet::new(0, 1);
        let b = FockKet::new(1, 0);
        let half = c(0.5);
        let bad_trace = Operator::from_entries([((k, k), half)]);
        assert!(DensityOperator::new(bad_trace).is_err());
        let not_herm = Operator::from_entries([
            ((k, k), half),
            ((b, b), half),
            ((k, b), Complex64::new(0.0, 0.5)),
        ]);
        assert!(DensityOperator::new(not_herm).is_err());
        let negative = Operator::from_entries([((k, k), c(1.5)), ((b, b), c(-0.5))]);
        assert!(DensityOperator::new(negative).is_err());
    }

    #[test]
    fn product_and_adjoint() {
        let a = FockKet::new(1, 0);
        let b = FockKet::new(0, 1);
        let raise = Operator::from_entries([((a, b), c(1.0))]);
        let p = raise.product(&raise.adjoint());
        assert_eq!(p, Operator::from_entries([((a, a), c(1.0))]));
        assert!(raise.product(&raise).is_empty());
    }

    #[test]
    fn basis_ordering_is_sector_lexicographic() {
        let basis = Basis::up_to(2);
        let expected = [(0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0)];
        let got: Vec<_> = basis
            .kets()
            .iter()
            .map(|k| (k.photons_a, k.photons_b))
            .collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn dense_round_trip_and_cutoff() {
        let rho = to_density(&make_mm_state(2, 0).unwrap());
        let basis = Basis::up_to(2);
        let dense = rho.operator().to_dense(&basis).unwrap();
        let back = Operator::from_dense(&dense, &basis, 0.0);
        assert_eq!(&back, rho.operator());
        assert!(matches!(
            rho.operator().to_dense(&Basis::up_to(1)),
            Err(Error::CutoffExceeded { needed: 2, cutoff: 1 })
        ));
    }
}
