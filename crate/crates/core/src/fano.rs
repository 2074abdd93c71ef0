//! Fano statistical tensors of single and bipartite spin density matrices.
//!
//! A spin-s density matrix is expanded as `ρ = 1/(2s+1) Σ τ^{k†}_q t^k_q` with
//! `t^k_q = Tr(ρ τ^k_q)`. For two spins the coupled tensors are
//! `t^{k1k2}_{q1q2} = Tr(ρ₁₂ τ^{k1}_{q1} ⊗ τ^{k2}_{q2})`.
//!
//! Bipartite matrices use the product basis with `m₁` as the outer index and
//! `m₂` as the inner one, both descending.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::angular::{wigner_rotation_matrix, ComplexScalar, HalfInteger};
use crate::error::{Error, Result};
use crate::tensor_ops::{complete_values, OperatorMatrix, TauBasis, TensorLabel};

/// Absolute tolerance for Hermiticity and unit trace on ingestion.
pub const STATE_TOLERANCE: f64 = 1e-12;
/// Smallest eigenvalue accepted as positive semidefinite.
pub const EIGENVALUE_FLOOR: f64 = -1e-10;

fn validate_state(entries: &DMatrix<ComplexScalar>) -> Result<()> {
    if entries.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(Error::Validation("matrix has non-finite entries".into()));
    }
    let herm = entries
        .iter()
        .zip(entries.adjoint().iter())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    if herm > STATE_TOLERANCE {
        return Err(Error::Validation(format!(
            "matrix is not Hermitian (max |A - A†| = {herm:.3e})"
        )));
    }
    let trace = entries.trace();
    if (trace - Complex64::from(1.0)).norm() > STATE_TOLERANCE {
        return Err(Error::Validation(format!(
            "trace is {} {:+}i, expected 1",
            trace.re, trace.im
        )));
    }
    let hermitian = (entries + entries.adjoint()) * Complex64::from(0.5);
    let smallest = hermitian
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    if smallest < EIGENVALUE_FLOOR {
        return Err(Error::Validation(format!(
            "matrix is not positive semidefinite (smallest eigenvalue {smallest:.3e})"
        )));
    }
    Ok(())
}

/// Validated single-spin density matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    spin: HalfInteger,
    entries: DMatrix<ComplexScalar>,
}

impl DensityMatrix {
    pub fn new(spin: HalfInteger, entries: DMatrix<ComplexScalar>) -> Result<Self> {
        let op = OperatorMatrix::new(spin, entries)?;
        validate_state(op.entries())?;
        Ok(Self { spin, entries: op.into_entries() })
    }

    pub fn maximally_mixed(spin: HalfInteger) -> Self {
        let dim = spin.multiplicity();
        Self {
            spin,
            entries: DMatrix::identity(dim, dim) / Complex64::from(dim as f64),
        }
    }

    /// `|ψ⟩⟨ψ|` for a normalized amplitude vector in descending-m order.
    pub fn pure(spin: HalfInteger, amplitudes: &[ComplexScalar]) -> Result<Self> {
        spin.check_spin()?;
        if amplitudes.len() != spin.multiplicity() {
            return Err(Error::Domain(format!(
                "spin {spin} needs {} amplitudes, got {}",
                spin.multiplicity(),
                amplitudes.len()
            )));
        }
        let v = nalgebra::DVector::from_column_slice(amplitudes);
        Self::new(spin, &v * v.adjoint())
    }

    pub fn spin(&self) -> HalfInteger {
        self.spin
    }

    pub fn entries(&self) -> &DMatrix<ComplexScalar> {
        &self.entries
    }

    pub fn as_operator(&self) -> OperatorMatrix {
        OperatorMatrix::new(self.spin, self.entries.clone()).expect("dimension checked on construction")
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (&self.entries - &other.entries).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Validated density matrix of a spin-s₁ ⊗ spin-s₂ pair.
#[derive(Clone, Debug, PartialEq)]
pub struct BipartiteDensityMatrix {
    spin1: HalfInteger,
    spin2: HalfInteger,
    entries: DMatrix<ComplexScalar>,
}

impl BipartiteDensityMatrix {
    pub fn new(spin1: HalfInteger, spin2: HalfInteger, entries: DMatrix<ComplexScalar>) -> Result<Self> {
        spin1.check_spin()?;
        spin2.check_spin()?;
        let dim = spin1.multiplicity() * spin2.multiplicity();
        if entries.nrows() != dim || entries.ncols() != dim {
            return Err(Error::Domain(format!(
                "spins ({spin1}, {spin2}) need a {dim}x{dim} matrix, got {}x{}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        validate_state(&entries)?;
        Ok(Self { spin1, spin2, entries })
    }

    /// `ρ_a ⊗ ρ_b`.
    pub fn product(a: &DensityMatrix, b: &DensityMatrix) -> Self {
        Self {
            spin1: a.spin,
            spin2: b.spin,
            entries: a.entries.kronecker(&b.entries),
        }
    }

    pub fn spins(&self) -> (HalfInteger, HalfInteger) {
        (self.spin1, self.spin2)
    }

    pub fn entries(&self) -> &DMatrix<ComplexScalar> {
        &self.entries
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (&self.entries - &other.entries).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Complete set of `t^k_q`, `0 ≤ k ≤ 2s`, stored in canonical label order.
#[derive(Clone, Debug, PartialEq)]
pub struct FanoTensorSet {
    spin: HalfInteger,
    values: Vec<ComplexScalar>,
}

impl FanoTensorSet {
    /// Values in canonical order (`k` ascending, `q` descending).
    pub fn from_values(spin: HalfInteger, values: Vec<ComplexScalar>) -> Result<Self> {
        spin.check_spin()?;
        if values.len() != TensorLabel::count(spin) {
            let missing = TensorLabel::all(spin).skip(values.len()).collect::<Vec<_>>();
            if missing.is_empty() {
                return Err(Error::Domain(format!(
                    "spin {spin} takes {} tensors, got {}",
                    TensorLabel::count(spin),
                    values.len()
                )));
            }
            return Err(Error::Incomplete { missing });
        }
        Ok(Self { spin, values })
    }

    pub fn from_map(spin: HalfInteger, map: &BTreeMap<TensorLabel, ComplexScalar>) -> Result<Self> {
        spin.check_spin()?;
        Ok(Self { spin, values: complete_values(spin, map)? })
    }

    pub fn spin(&self) -> HalfInteger {
        self.spin
    }

    pub fn get(&self, label: TensorLabel) -> ComplexScalar {
        self.values[label.index()]
    }

    pub fn values(&self) -> &[ComplexScalar] {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (TensorLabel, ComplexScalar)> + '_ {
        TensorLabel::all(self.spin).zip(self.values.iter().copied())
    }

    pub fn to_map(&self) -> BTreeMap<TensorLabel, ComplexScalar> {
        self.iter().collect()
    }

    /// Checks `t⁰₀ = 1` and `t^{k*}_q = (-1)^q t^k_{-q}`.
    pub fn validate(&self) -> Result<()> {
        let t00 = self.values[0];
        if (t00 - Complex64::from(1.0)).norm() > STATE_TOLERANCE {
            return Err(Error::Validation(format!(
                "normalization violated: t^0_0 = {} {:+}i",
                t00.re, t00.im
            )));
        }
        for (label, v) in self.iter() {
            let mirror = self.get(TensorLabel::new(label.k, -label.q));
            if (v.conj() - mirror * parity(label.q)).norm() > STATE_TOLERANCE {
                return Err(Error::Validation(format!(
                    "hermiticity violated at (k, q) = ({}, {})",
                    label.k, label.q
                )));
            }
        }
        Ok(())
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Complete set of coupled tensors `t^{k1k2}_{q1q2}`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoupledFanoTensorSet {
    spin1: HalfInteger,
    spin2: HalfInteger,
    values: Vec<ComplexScalar>,
}

impl CoupledFanoTensorSet {
    /// Values indexed by `index(l1) * (2s₂+1)² + index(l2)`.
    pub fn from_values(spin1: HalfInteger, spin2: HalfInteger, values: Vec<ComplexScalar>) -> Result<Self> {
        spin1.check_spin()?;
        spin2.check_spin()?;
        let n = TensorLabel::count(spin1) * TensorLabel::count(spin2);
        if values.len() != n {
            return Err(Error::Domain(format!(
                "spins ({spin1}, {spin2}) take {n} coupled tensors, got {}",
                values.len()
            )));
        }
        Ok(Self { spin1, spin2, values })
    }

    pub fn from_map(
        spin1: HalfInteger,
        spin2: HalfInteger,
        map: &BTreeMap<(TensorLabel, TensorLabel), ComplexScalar>,
    ) -> Result<Self> {
        let mut values = Vec::with_capacity(TensorLabel::count(spin1) * TensorLabel::count(spin2));
        let mut missing = Vec::new();
        for l1 in TensorLabel::all(spin1) {
            for l2 in TensorLabel::all(spin2) {
                match map.get(&(l1, l2)) {
                    Some(&v) => values.push(v),
                    None => {
                        if !missing.contains(&l1) {
                            missing.push(l1);
                        }
                        values.push(Complex64::new(0.0, 0.0));
                    }
                }
            }
        }
        if !missing.is_empty() {
            return Err(Error::Incomplete { missing });
        }
        Self::from_values(spin1, spin2, values)
    }

    pub fn spins(&self) -> (HalfInteger, HalfInteger) {
        (self.spin1, self.spin2)
    }

    fn stride(&self) -> usize {
        TensorLabel::count(self.spin2)
    }

    pub fn get(&self, l1: TensorLabel, l2: TensorLabel) -> ComplexScalar {
        self.values[l1.index() * self.stride() + l2.index()]
    }

    pub fn values(&self) -> &[ComplexScalar] {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (TensorLabel, TensorLabel, ComplexScalar)> + '_ {
        let stride = self.stride();
        self.values.iter().enumerate().map(move |(i, &v)| {
            (TensorLabel::from_index(i / stride), TensorLabel::from_index(i % stride), v)
        })
    }

    /// Checks `t^{00}_{00} = 1` and `t^{k1k2*}_{q1q2} = (-1)^{q1+q2} t^{k1k2}_{-q1,-q2}`.
    pub fn validate(&self) -> Result<()> {
        let t0 = self.values[0];
        if (t0 - Complex64::from(1.0)).norm() > STATE_TOLERANCE {
            return Err(Error::Validation(format!(
                "normalization violated: t^00_00 = {} {:+}i",
                t0.re, t0.im
            )));
        }
        for (l1, l2, v) in self.iter() {
            let mirror = self.get(TensorLabel::new(l1.k, -l1.q), TensorLabel::new(l2.k, -l2.q));
            if (v.conj() - mirror * parity(l1.q + l2.q)).norm() > STATE_TOLERANCE {
                return Err(Error::Validation(format!(
                    "hermiticity violated at (k1, q1, k2, q2) = ({}, {}, {}, {})",
                    l1.k, l1.q, l2.k, l2.q
                )));
            }
        }
        Ok(())
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

fn parity(n: i32) -> f64 {
    if n.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

pub fn decompose(rho: &DensityMatrix) -> FanoTensorSet {
    let basis = TauBasis::new(rho.spin).expect("validated spin");
    FanoTensorSet { spin: rho.spin, values: basis.components(&rho.entries) }
}

/// `ρ = 1/(2s+1) Σ τ^{k†}_q t^k_q`.
pub fn reconstruct(t: &FanoTensorSet) -> Result<DensityMatrix> {
    t.validate()?;
    let basis = TauBasis::new(t.spin)?;
    DensityMatrix::new(t.spin, basis.synthesize(&t.values))
}

pub fn decompose_bipartite(rho: &BipartiteDensityMatrix) -> CoupledFanoTensorSet {
    let (s1, s2) = rho.spins();
    let b1 = TauBasis::new(s1).expect("validated spin");
    let b2 = TauBasis::new(s2).expect("validated spin");
    let d2 = s2.multiplicity();
    let mut values = Vec::with_capacity(TensorLabel::count(s1) * TensorLabel::count(s2));
    for l1 in TensorLabel::all(s1) {
        let band1 = b1.band(l1);
        for l2 in TensorLabel::all(s2) {
            let band2 = b2.band(l2);
            // Tr(ρ X) = Σ ρ[col, row] X[row, col] with X = τ1 ⊗ τ2.
            let mut acc = Complex64::new(0.0, 0.0);
            for &(r1, c1, v1) in band1 {
                for &(r2, c2, v2) in band2 {
                    acc += rho.entries[(c1 * d2 + c2, r1 * d2 + r2)] * (v1 * v2);
                }
            }
            values.push(acc);
        }
    }
    CoupledFanoTensorSet { spin1: s1, spin2: s2, values }
}

/// `ρ₁₂ = 1/((2s₁+1)(2s₂+1)) Σ t^{k1k2}_{q1q2} τ^{k1†}_{q1} ⊗ τ^{k2†}_{q2}`.
pub fn reconstruct_bipartite(t: &CoupledFanoTensorSet) -> Result<BipartiteDensityMatrix> {
    t.validate()?;
    let (s1, s2) = t.spins();
    let b1 = TauBasis::new(s1)?;
    let b2 = TauBasis::new(s2)?;
    let d2 = s2.multiplicity();
    let dim = s1.multiplicity() * d2;
    let mut out = DMatrix::<ComplexScalar>::zeros(dim, dim);
    for (l1, l2, v) in t.iter() {
        if v == Complex64::new(0.0, 0.0) {
            continue;
        }
        for &(r1, c1, v1) in b1.band(l1) {
            for &(r2, c2, v2) in b2.band(l2) {
                out[(c1 * d2 + c2, r1 * d2 + r2)] += v * (v1 * v2);
            }
        }
    }
    let out = out / Complex64::from(dim as f64);
    BipartiteDensityMatrix::new(s1, s2, out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subsystem {
    First,
    Second,
}

/// Partial trace keeping `which`.
pub fn reduce(rho: &BipartiteDensityMatrix, which: Subsystem) -> DensityMatrix {
    let (s1, s2) = rho.spins();
    let (d1, d2) = (s1.multiplicity(), s2.multiplicity());
    let (spin, out) = match which {
        Subsystem::First => (
            s1,
            DMatrix::from_fn(d1, d1, |a, b| (0..d2).map(|j| rho.entries[(a * d2 + j, b * d2 + j)]).sum()),
        ),
        Subsystem::Second => (
            s2,
            DMatrix::from_fn(d2, d2, |a, b| (0..d1).map(|i| rho.entries[(i * d2 + a, i * d2 + b)]).sum()),
        ),
    };
    DensityMatrix { spin, entries: out }
}

/// The single-spin tensors of one subsystem, read off the coupled set with
/// the other rank set to zero.
pub fn marginal_tensors(t: &CoupledFanoTensorSet, which: Subsystem) -> FanoTensorSet {
    let (s1, s2) = t.spins();
    let zero = TensorLabel::new(0, 0);
    match which {
        Subsystem::First => FanoTensorSet {
            spin: s1,
            values: TensorLabel::all(s1).map(|l| t.get(l, zero)).collect(),
        },
        Subsystem::Second => FanoTensorSet {
            spin: s2,
            values: TensorLabel::all(s2).map(|l| t.get(zero, l)).collect(),
        },
    }
}

/// Factorization test `t^{k1k2}_{q1q2} = t^{k10}_{q10} t^{0k2}_{0q2}` for all labels.
///
/// This certifies uncorrelated product states only; it is not a separability
/// criterion for mixed states.
pub fn is_product(t: &CoupledFanoTensorSet, tol: f64) -> bool {
    let zero = TensorLabel::new(0, 0);
    t.iter()
        .all(|(l1, l2, v)| (v - t.get(l1, zero) * t.get(zero, l2)).norm() <= tol)
}

/// `(t^k_q)' = Σ_{q'} D^{k*}_{q q'}(α,β,γ) t^k_{q'}`: the tensors of `R ρ R†`.
pub fn rotate_tensors(t: &FanoTensorSet, alpha: f64, beta: f64, gamma: f64) -> Result<FanoTensorSet> {
    let spin = t.spin;
    let mut values = vec![Complex64::new(0.0, 0.0); t.values.len()];
    for k in 0..=spin.twice() as u32 {
        let d = wigner_rotation_matrix(HalfInteger::from_int(k as i32), alpha, beta, gamma)?;
        rotate_rank(k, &d, |l| t.get(l), |l, v| values[l.index()] = v);
    }
    Ok(FanoTensorSet { spin, values })
}

/// Applies the same rotation to both subsystems of a coupled set.
pub fn rotate_coupled_tensors(
    t: &CoupledFanoTensorSet,
    alpha: f64,
    beta: f64,
    gamma: f64,
) -> Result<CoupledFanoTensorSet> {
    let (s1, s2) = t.spins();
    let kmax = s1.twice().max(s2.twice()) as u32;
    let ds = (0..=kmax)
        .map(|k| wigner_rotation_matrix(HalfInteger::from_int(k as i32), alpha, beta, gamma))
        .collect::<Result<Vec<_>>>()?;
    let mut values = vec![Complex64::new(0.0, 0.0); t.values.len()];
    let stride = t.stride();
    for l1 in TensorLabel::all(s1) {
        for l2 in TensorLabel::all(s2) {
            let mut acc = Complex64::new(0.0, 0.0);
            for q1 in -(l1.k as i32)..=l1.k as i32 {
                let a = ds[l1.k as usize][(rank_row(l1.k, l1.q), rank_row(l1.k, q1))].conj();
                for q2 in -(l2.k as i32)..=l2.k as i32 {
                    let b = ds[l2.k as usize][(rank_row(l2.k, l2.q), rank_row(l2.k, q2))].conj();
                    acc += a * b * t.get(TensorLabel::new(l1.k, q1), TensorLabel::new(l2.k, q2));
                }
            }
            values[l1.index() * stride + l2.index()] = acc;
        }
    }
    Ok(CoupledFanoTensorSet { spin1: s1, spin2: s2, values })
}

/// Row of component `q` in a descending-order rank-k rotation matrix.
fn rank_row(k: u32, q: i32) -> usize {
    (k as i32 - q) as usize
}

fn rotate_rank(
    k: u32,
    d: &DMatrix<ComplexScalar>,
    get: impl Fn(TensorLabel) -> ComplexScalar,
    mut set: impl FnMut(TensorLabel, ComplexScalar),
) {
    let k_i = k as i32;
    for q in -k_i..=k_i {
        let v: ComplexScalar = (-k_i..=k_i)
            .map(|qp| d[(rank_row(k, q), rank_row(k, qp))].conj() * get(TensorLabel::new(k, qp)))
            .sum();
        set(TensorLabel::new(k, q), v);
    }
}

/// The EPRB singlet `|(ss)00⟩⟨(ss)00|` of two spin-s particles.
///
/// For `s = 0` this is the trivial one-dimensional state.
pub fn singlet_density(spin: HalfInteger) -> Result<BipartiteDensityMatrix> {
    spin.check_spin()?;
    let d = spin.multiplicity();
    let mut entries = DMatrix::<ComplexScalar>::zeros(d * d, d * d);
    let norm = 1.0 / d as f64;
    for m1p in spin.projections() {
        for m1 in spin.projections() {
            let row = spin.index_of(m1p) * d + spin.index_of(-m1p);
            let col = spin.index_of(m1) * d + spin.index_of(-m1);
            let sign = parity((m1.twice() - m1p.twice()) / 2);
            entries[(row, col)] = Complex64::from(sign * norm);
        }
    }
    Ok(BipartiteDensityMatrix { spin1: spin, spin2: spin, entries })
}

/// Closed form `t^{k1k2}_{q1q2} = (-1)^{k1+q1} δ_{k1k2} δ_{q1,-q2}` of the singlet.
pub fn singlet_tensors(spin: HalfInteger) -> Result<CoupledFanoTensorSet> {
    spin.check_spin()?;
    let n = TensorLabel::count(spin);
    let mut values = vec![Complex64::new(0.0, 0.0); n * n];
    for l in TensorLabel::all(spin) {
        let partner = TensorLabel::new(l.k, -l.q);
        values[l.index() * n + partner.index()] = Complex64::from(parity(l.k as i32 + l.q));
    }
    Ok(CoupledFanoTensorSet { spin1: spin, spin2: spin, values })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(twice: i32) -> HalfInteger {
        HalfInteger::from_twice(twice)
    }

    fn up(spin: HalfInteger) -> DensityMatrix {
        let mut amps = vec![Complex64::new(0.0, 0.0); spin.multiplicity()];
        amps[0] = Complex64::from(1.0);
        DensityMatrix::pure(spin, &amps).unwrap()
    }

    #[test]
    fn maximally_mixed_has_only_monopole() {
        for ts in 0..6 {
            let t = decompose(&DensityMatrix::maximally_mixed(h(ts)));
            for (label, v) in t.iter() {
                let expected = if label.k == 0 { 1.0 } else { 0.0 };
                assert!((v - Complex64::from(expected)).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn spin_up_half_has_unit_polarization() {
        let t = decompose(&up(h(1)));
        assert!((t.get(TensorLabel::new(1, 0)) - Complex64::from(1.0)).norm() < 1e-14);
    }

    #[test]
    fn monopole_only_reconstructs_to_mixed_state() {
        let mut values = vec![Complex64::new(0.0, 0.0); 9];
        values[0] = Complex64::from(1.0);
        let rho = reconstruct(&FanoTensorSet::from_values(h(2), values).unwrap()).unwrap();
        assert!(rho.max_abs_diff(&DensityMatrix::maximally_mixed(h(2))) < 1e-15);
    }

    #[test]
    fn reconstruct_rejects_non_hermitian_tensors() {
        let mut values = vec![Complex64::new(0.0, 0.0); 4];
        values[0] = Complex64::from(1.0);
        values[1] = Complex64::new(0.1, 0.0); // t^1_1 without matching t^1_-1
        let t = FanoTensorSet::from_values(h(1), values).unwrap();
        match reconstruct(&t) {
            Err(Error::Validation(msg)) => assert!(msg.contains("hermiticity"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn incomplete_map_lists_missing_labels() {
        let mut map = decompose(&up(h(2))).to_map();
        map.remove(&TensorLabel::new(2, 2));
        map.remove(&TensorLabel::new(1, -1));
        match FanoTensorSet::from_map(h(2), &map) {
            Err(Error::Incomplete { missing }) => {
                assert_eq!(missing, vec![TensorLabel::new(1, -1), TensorLabel::new(2, 2)])
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn ingestion_rejects_bad_matrices() {
        let c = |re: f64, im: f64| Complex64::new(re, im);
        let non_herm = DMatrix::from_row_slice(2, 2, &[c(0.5, 0.), c(0.1, 0.), c(0.2, 0.), c(0.5, 0.)]);
        let err = DensityMatrix::new(h(1), non_herm).unwrap_err().to_string();
        assert!(err.contains("Hermitian"), "{err}");
        let bad_trace = DMatrix::from_row_slice(2, 2, &[c(0.6, 0.), c(0., 0.), c(0., 0.), c(0.5, 0.)]);
        let err = DensityMatrix::new(h(1), bad_trace).unwrap_err().to_string();
        assert!(err.contains("trace is 1.1"), "{err}");
        let negative = DMatrix::from_row_slice(2, 2, &[c(1.5, 0.), c(0., 0.), c(0., 0.), c(-0.5, 0.)]);
        let err = DensityMatrix::new(h(1), negative).unwrap_err().to_string();
        assert!(err.contains("positive semidefinite"), "{err}");
    }

    #[test]
    fn spin_half_singlet_matrix() {
        let rho = singlet_density(h(1)).unwrap();
        let e = rho.entries();
        // basis order: ↑↑, ↑↓, ↓↑, ↓↓
        assert!((e[(1, 1)].re - 0.5).abs() < 1e-15);
        assert!((e[(2, 2)].re - 0.5).abs() < 1e-15);
        assert!((e[(1, 2)].re + 0.5).abs() < 1e-15);
        assert!((e[(2, 1)].re + 0.5).abs() < 1e-15);
        assert!((e.trace().re - 1.0).abs() < 1e-15);
        assert_eq!(e.iter().filter(|z| z.norm() > 0.0).count(), 4);
    }

    #[test]
    fn spin_half_singlet_tensor_values() {
        let t = singlet_tensors(h(1)).unwrap();
        let l = TensorLabel::new;
        assert_eq!(t.get(l(0, 0), l(0, 0)), Complex64::from(1.0));
        assert_eq!(t.get(l(1, 1), l(1, -1)), Complex64::from(1.0));
        assert_eq!(t.get(l(1, 0), l(1, 0)), Complex64::from(-1.0));
        for q in -1..=1 {
            assert_eq!(t.get(l(1, q), l(0, 0)), Complex64::new(0.0, 0.0));
        }
    }

    #[test]
    fn singlet_is_not_a_product() {
        assert!(!is_product(&singlet_tensors(h(1)).unwrap(), 1e-10));
    }

    #[test]
    fn trivial_spin_zero_singlet() {
        let rho = singlet_density(h(0)).unwrap();
        assert_eq!(rho.entries().nrows(), 1);
        assert_eq!(rho.entries()[(0, 0)], Complex64::from(1.0));
    }

    #[test]
    fn identity_rotation_is_noop() {
        let t = decompose(&up(h(3)));
        let r = rotate_tensors(&t, 0.0, 0.0, 0.0).unwrap();
        assert!(r.max_abs_diff(&t) < 1e-14);
    }
}
