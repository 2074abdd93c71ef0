//! Irreducible spherical tensor operators `τ^k_q` on a spin-s multiplet.
//!
//! Matrices use the basis `|s, s⟩, |s, s-1⟩, …, |s, -s⟩` (descending m) for
//! both rows and columns. Matrix elements follow the Madison convention
//! `⟨s m'|τ^k_q|s m⟩ = √(2k+1) ⟨s m; k q | s m'⟩`.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::angular::{clebsch_gordan, label_index, wigner_rotation_matrix, ComplexScalar, HalfInteger};
use crate::error::{Error, Result};

/// A `(2s+1) × (2s+1)` operator on a spin-s multiplet.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix {
    spin: HalfInteger,
    entries: DMatrix<ComplexScalar>,
}

impl OperatorMatrix {
    pub fn new(spin: HalfInteger, entries: DMatrix<ComplexScalar>) -> Result<Self> {
        spin.check_spin()?;
        let dim = spin.multiplicity();
        if entries.nrows() != dim || entries.ncols() != dim {
            return Err(Error::Domain(format!(
                "spin {spin} needs a {dim}x{dim} matrix, got {}x{}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        Ok(Self { spin, entries })
    }

    /// Infers the spin from the dimension.
    pub fn from_matrix(entries: DMatrix<ComplexScalar>) -> Result<Self> {
        if entries.nrows() != entries.ncols() || entries.nrows() == 0 {
            return Err(Error::Domain(format!(
                "operator matrix must be square and non-empty, got {}x{}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        let spin = HalfInteger::from_twice(entries.nrows() as i32 - 1);
        Ok(Self { spin, entries })
    }

    pub fn zeros(spin: HalfInteger) -> Self {
        let dim = spin.multiplicity();
        Self { spin, entries: DMatrix::zeros(dim, dim) }
    }

    pub fn identity(spin: HalfInteger) -> Self {
        let dim = spin.multiplicity();
        Self { spin, entries: DMatrix::identity(dim, dim) }
    }

    pub fn spin(&self) -> HalfInteger {
        self.spin
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<ComplexScalar> {
        &self.entries
    }

    pub fn into_entries(self) -> DMatrix<ComplexScalar> {
        self.entries
    }

    /// `⟨s m'|A|s m⟩`.
    pub fn element(&self, mp: HalfInteger, m: HalfInteger) -> ComplexScalar {
        self.entries[(self.spin.index_of(mp), self.spin.index_of(m))]
    }

    pub fn adjoint(&self) -> Self {
        Self { spin: self.spin, entries: self.entries.adjoint() }
    }

    pub fn trace(&self) -> ComplexScalar {
        self.entries.trace()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (&self.entries - &other.entries)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

/// Rank and component `(k, q)` of a spherical tensor.
///
/// Ordered by `k` ascending, then `q` descending; this is the listing order
/// everywhere in the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TensorLabel {
    pub k: u32,
    pub q: i32,
}

impl TensorLabel {
    pub const fn new(k: u32, q: i32) -> Self {
        Self { k, q }
    }

    /// Flat position among the labels of any spin large enough to hold it.
    pub fn index(self) -> usize {
        label_index(self.k, self.q)
    }

    pub fn from_index(index: usize) -> Self {
        let k = (index as f64).sqrt() as u32;
        let k = if (k + 1) * (k + 1) <= index as u32 { k + 1 } else { k };
        let q = (k * k + k) as i32 - index as i32;
        Self { k, q }
    }

    /// Number of labels for spin `s`: `(2s+1)²`.
    pub fn count(spin: HalfInteger) -> usize {
        let d = spin.multiplicity();
        d * d
    }

    /// All labels `0 ≤ k ≤ 2s`, `|q| ≤ k` in canonical order.
    pub fn all(spin: HalfInteger) -> impl Iterator<Item = TensorLabel> {
        (0..TensorLabel::count(spin)).map(TensorLabel::from_index)
    }

    pub fn check(self, spin: HalfInteger) -> Result<()> {
        if self.k as i32 > spin.twice() {
            return Err(Error::Domain(format!("rank k = {} exceeds 2s for s = {spin}", self.k)));
        }
        if self.q.unsigned_abs() > self.k {
            return Err(Error::Domain(format!("|q| = {} exceeds rank k = {}", self.q.abs(), self.k)));
        }
        Ok(())
    }
}

impl Ord for TensorLabel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.k.cmp(&other.k).then(other.q.cmp(&self.q))
    }
}

impl PartialOrd for TensorLabel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Non-zero entries `(row, col, value)` of one `τ^k_q`.
pub type TauBand = Vec<(usize, usize, f64)>;

/// Precomputed bands of every `τ^k_q` for one spin.
#[derive(Clone, Debug)]
pub struct TauBasis {
    spin: HalfInteger,
    bands: Vec<TauBand>,
}

impl TauBasis {
    pub fn new(spin: HalfInteger) -> Result<Self> {
        spin.check_spin()?;
        let bands = TensorLabel::all(spin)
            .map(|label| tau_band(spin, label.k, label.q))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { spin, bands })
    }

    pub fn spin(&self) -> HalfInteger {
        self.spin
    }

    pub fn band(&self, label: TensorLabel) -> &TauBand {
        &self.bands[label.index()]
    }

    /// `Tr(A τ^k_q)` for every label, in canonical order.
    pub fn components(&self, a: &DMatrix<ComplexScalar>) -> Vec<ComplexScalar> {
        self.bands
            .iter()
            .map(|band| {
                // Tr(A τ) = Σ A[c, r] τ[r, c]
                band.iter()
                    .map(|&(r, c, v)| a[(c, r)] * v)
                    .sum()
            })
            .collect()
    }

    /// `1/(2s+1) Σ τ^{k†}_q a^k_q`.
    pub fn synthesize(&self, components: &[ComplexScalar]) -> DMatrix<ComplexScalar> {
        let dim = self.spin.multiplicity();
        let mut out = DMatrix::zeros(dim, dim);
        for (band, &a) in self.bands.iter().zip(components) {
            if a == Complex64::new(0.0, 0.0) {
                continue;
            }
            // (τ†)[c, r] = τ[r, c] (real entries)
            for &(r, c, v) in band {
                out[(c, r)] += a * v;
            }
        }
        out / Complex64::from(dim as f64)
    }
}

fn tau_band(spin: HalfInteger, k: u32, q: i32) -> Result<TauBand> {
    TensorLabel::new(k, q).check(spin)?;
    let kk = HalfInteger::from_int(k as i32);
    let qq = HalfInteger::from_int(q);
    let scale = f64::from(2 * k + 1).sqrt();
    let mut band = Vec::new();
    for (col, m) in spin.projections().enumerate() {
        let mp = m + qq;
        if mp.twice().abs() > spin.twice() {
            continue;
        }
        let value = scale * clebsch_gordan(spin, kk, spin, m, qq, mp)?;
        band.push((spin.index_of(mp), col, value));
    }
    Ok(band)
}

/// The matrix of `τ^k_q(S)` for spin `s`.
pub fn tau_matrix(spin: HalfInteger, k: u32, q: i32) -> Result<OperatorMatrix> {
    spin.check_spin()?;
    let mut out = OperatorMatrix::zeros(spin);
    for (r, c, v) in tau_band(spin, k, q)? {
        out.entries[(r, c)] = Complex64::from(v);
    }
    Ok(out)
}

/// Spherical components `a^k_q = Tr(A τ^k_q)` of an arbitrary operator.
pub fn operator_components(a: &OperatorMatrix) -> Result<BTreeMap<TensorLabel, ComplexScalar>> {
    let basis = TauBasis::new(a.spin())?;
    Ok(TensorLabel::all(a.spin()).zip(basis.components(a.entries())).collect())
}

/// Inverse of [`operator_components`]: `A = 1/(2s+1) Σ τ^{k†}_q a^k_q`.
pub fn operator_from_components(
    spin: HalfInteger,
    components: &BTreeMap<TensorLabel, ComplexScalar>,
) -> Result<OperatorMatrix> {
    let values = complete_values(spin, components)?;
    let basis = TauBasis::new(spin)?;
    OperatorMatrix::new(spin, basis.synthesize(&values))
}

/// Flattens a label map into canonical order, failing with the list of labels
/// that are absent.
pub(crate) fn complete_values(
    spin: HalfInteger,
    components: &BTreeMap<TensorLabel, ComplexScalar>,
) -> Result<Vec<ComplexScalar>> {
    let mut missing = Vec::new();
    let mut values = Vec::with_capacity(TensorLabel::count(spin));
    for label in TensorLabel::all(spin) {
        match components.get(&label) {
            Some(&v) => values.push(v),
            None => {
                missing.push(label);
                values.push(Complex64::new(0.0, 0.0));
            }
        }
    }
    if !missing.is_empty() {
        return Err(Error::Incomplete { missing });
    }
    for label in components.keys() {
        label.check(spin)?;
    }
    Ok(values)
}

/// Cartesian spin operators `(S1, S2, S3)` built from the rank-one tensors.
///
/// For `s = 0` all three are the 1×1 zero matrix.
pub fn spin_operators(spin: HalfInteger) -> Result<(OperatorMatrix, OperatorMatrix, OperatorMatrix)> {
    spin.check_spin()?;
    if spin.twice() == 0 {
        return Ok((OperatorMatrix::zeros(spin), OperatorMatrix::zeros(spin), OperatorMatrix::zeros(spin)));
    }
    let tm = tau_matrix(spin, 1, -1)?.into_entries();
    let t0 = tau_matrix(spin, 1, 0)?.into_entries();
    let tp = tau_matrix(spin, 1, 1)?.into_entries();
    let c = spin.casimir();
    let a = Complex64::from((c / 6.0).sqrt());
    let s1 = (&tm - &tp) * a;
    let s2 = (&tm + &tp) * (a * Complex64::i());
    let s3 = t0 * Complex64::from((c / 3.0).sqrt());
    Ok((
        OperatorMatrix { spin, entries: s1 },
        OperatorMatrix { spin, entries: s2 },
        OperatorMatrix { spin, entries: s3 },
    ))
}

/// The rotation operator `R(α,β,γ)` on the spin-s multiplet.
pub fn rotation_operator(spin: HalfInteger, alpha: f64, beta: f64, gamma: f64) -> Result<OperatorMatrix> {
    OperatorMatrix::new(spin, wigner_rotation_matrix(spin, alpha, beta, gamma)?)
}
