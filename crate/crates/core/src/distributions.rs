//! P, Q and F distributions on the sphere.
//!
//! All three kinds share the expansion
//!
//! ```text
//! W(θ,φ) = 1/√(4π) Σ_{k,q} σ(k,q) c_k t^k_q Y*_kq(θ,φ)
//! ```
//!
//! with `σ = (-1)^{k+q}` for P and Q and `σ = 1` for F. The stored F
//! coefficients carry an extra `√(4π)` relative to the characteristic-function
//! construction so that every kind has `c_0 = 1`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::angular::{legendre_upto, log_factorial, spherical_harmonics_upto, ComplexScalar, HalfInteger};
use crate::error::{Error, Result};
use crate::fano::{CoupledFanoTensorSet, DensityMatrix, FanoTensorSet, Subsystem};
use crate::numeric::{compensated_sum, CompensatedSum};
use crate::quadrature::{integrate, SphereGrid};
use crate::tensor_ops::{operator_components, OperatorMatrix, TensorLabel};

/// Imaginary residue above which a distribution value is reported as an
/// internal-consistency failure.
pub const IMAGINARY_RESIDUE_LIMIT: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DistributionKind {
    P,
    Q,
    F,
}

impl DistributionKind {
    pub const ALL: [DistributionKind; 3] = [DistributionKind::P, DistributionKind::Q, DistributionKind::F];

    /// `σ(k, q)` in the expansion.
    fn sign(self, k: u32, q: i32) -> f64 {
        match self {
            DistributionKind::F => 1.0,
            DistributionKind::P | DistributionKind::Q => {
                if (k as i32 + q).rem_euclid(2) == 0 {
                    1.0
                } else {
                    -1.0
                }
            }
        }
    }
}

impl fmt::Display for DistributionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DistributionKind::P => "P",
            DistributionKind::Q => "Q",
            DistributionKind::F => "F",
        };
        f.write_str(s)
    }
}

impl FromStr for DistributionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "p" | "P" => Ok(DistributionKind::P),
            "q" | "Q" => Ok(DistributionKind::Q),
            "f" | "F" => Ok(DistributionKind::F),
            other => Err(Error::Domain(format!("unknown distribution kind '{other}'"))),
        }
    }
}

/// `c_k` for one `(kind, s)`, `k = 0..=2s`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientTable {
    spin: HalfInteger,
    kind: DistributionKind,
    values: Vec<f64>,
}

impl CoefficientTable {
    pub fn new(kind: DistributionKind, spin: HalfInteger) -> Result<Self> {
        spin.check_spin()?;
        let values = (0..=spin.twice() as u32).map(|k| coefficient_unchecked(kind, spin, k)).collect();
        Ok(Self { spin, kind, values })
    }

    pub fn spin(&self) -> HalfInteger {
        self.spin
    }

    pub fn kind(&self) -> DistributionKind {
        self.kind
    }

    pub fn get(&self, k: u32) -> f64 {
        self.values[k as usize]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// Coefficient `c_k` of the given kind.
///
/// With `N = 2s`:
/// `P² = Π_{j=1..k} (N+1+j)/(N+1-j)`, `Q = 1/P`, and
/// `F̃² = Π_{j=1..k} ((N+1)² - j²)/((N+1)² - 1)`; these are the factorial
/// ratios with common factors cancelled, summed in log space.
pub fn coefficient(kind: DistributionKind, spin: HalfInteger, k: u32) -> Result<f64> {
    spin.check_spin()?;
    if k as i32 > spin.twice() {
        return Err(Error::Domain(format!("rank k = {k} exceeds 2s = {} for s = {spin}", spin.twice())));
    }
    Ok(coefficient_unchecked(kind, spin, k))
}

fn coefficient_unchecked(kind: DistributionKind, spin: HalfInteger, k: u32) -> f64 {
    let n1 = f64::from(spin.twice()) + 1.0;
    let mut log_square = CompensatedSum::new();
    match kind {
        DistributionKind::P | DistributionKind::Q => {
            for j in 1..=k {
                let j = f64::from(j);
                log_square.add((2.0 * j / (n1 - j)).ln_1p());
            }
        }
        DistributionKind::F => {
            let denom = n1 * n1 - 1.0;
            for j in 1..=k {
                let j = f64::from(j);
                log_square.add((-(j * j - 1.0) / denom).ln_1p());
            }
        }
    }
    let half_log = 0.5 * log_square.value();
    match kind {
        DistributionKind::Q => (-half_log).exp(),
        _ => half_log.exp(),
    }
}

/// Spin coherent state `|θφ⟩`, amplitudes in descending-m order.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinCoherentState {
    pub spin: HalfInteger,
    pub theta: f64,
    pub phi: f64,
    pub amplitudes: Vec<ComplexScalar>,
}

/// `|θφ⟩ = Σ_m √C(2s, s+m) cos^{s-m}(θ/2) sin^{s+m}(θ/2) e^{-i(s+m)φ} |sm⟩`.
///
/// `θ = 0` gives `|s, -s⟩`.
pub fn coherent_state(spin: HalfInteger, theta: f64, phi: f64) -> SpinCoherentState {
    let phi = phi.rem_euclid(2.0 * PI);
    let (sh, ch) = (theta / 2.0).sin_cos();
    let n = spin.twice();
    let amplitudes = spin
        .projections()
        .map(|m| {
            let up = (n + m.twice()) / 2; // s + m
            let down = n - up; // s - m
            let log_binom = log_factorial(n as u32) - log_factorial(up as u32) - log_factorial(down as u32);
            let magnitude = (0.5 * log_binom).exp() * ch.powi(down) * sh.powi(up);
            Complex64::from_polar(magnitude, -f64::from(up) * phi)
        })
        .collect();
    SpinCoherentState { spin, theta, phi, amplitudes }
}

/// `⟨θφ|τ^k_q|θφ⟩ = √(4π) (-1)^{k+q} 𝒬_sk Y_kq(θ,φ)`.
pub fn scs_tensor_expectation(spin: HalfInteger, k: u32, q: i32, theta: f64, phi: f64) -> Result<ComplexScalar> {
    TensorLabel::new(k, q).check(spin)?;
    let c = coefficient_unchecked(DistributionKind::Q, spin, k);
    let y = crate::angular::spherical_harmonic(k, q, theta, phi)?;
    Ok(y * ((4.0 * PI).sqrt() * DistributionKind::Q.sign(k, q) * c))
}

/// `Q(θ,φ) = (2s+1)/(4π) ⟨θφ|ρ|θφ⟩` computed directly from the matrix.
pub fn q_direct(rho: &DensityMatrix, theta: f64, phi: f64) -> f64 {
    let state = coherent_state(rho.spin(), theta, phi);
    let e = rho.entries();
    let mut acc = Complex64::new(0.0, 0.0);
    for (r, a) in state.amplitudes.iter().enumerate() {
        for (c, b) in state.amplitudes.iter().enumerate() {
            acc += a.conj() * e[(r, c)] * b;
        }
    }
    rho.spin().multiplicity() as f64 / (4.0 * PI) * acc.re
}

/// `σ(k,q) c_k Y*_kq(θ,φ) / √(4π)` for every label of the table's spin; the
/// distribution value is the dot product of this vector with the tensors.
pub fn weighted_harmonics(table: &CoefficientTable, theta: f64, phi: f64) -> Vec<ComplexScalar> {
    let kmax = table.spin.twice() as u32;
    let ys = spherical_harmonics_upto(kmax, theta, phi);
    let norm = 1.0 / (4.0 * PI).sqrt();
    TensorLabel::all(table.spin)
        .zip(ys)
        .map(|(l, y)| y.conj() * (table.kind.sign(l.k, l.q) * table.get(l.k) * norm))
        .collect()
}

fn real_part(value: ComplexScalar) -> Result<f64> {
    if value.im.abs() > IMAGINARY_RESIDUE_LIMIT {
        return Err(Error::Consistency(format!(
            "distribution value has imaginary residue {:.3e}",
            value.im
        )));
    }
    Ok(value.re)
}

fn dot(weights: &[ComplexScalar], values: &[ComplexScalar]) -> ComplexScalar {
    let re = compensated_sum(weights.iter().zip(values).map(|(w, v)| (w * v).re));
    let im = compensated_sum(weights.iter().zip(values).map(|(w, v)| (w * v).im));
    Complex64::new(re, im)
}

/// A distribution of one kind bound to one tensor set, for repeated evaluation.
#[derive(Clone, Debug)]
pub struct Distribution<'a> {
    table: CoefficientTable,
    tensors: &'a FanoTensorSet,
}

impl<'a> Distribution<'a> {
    pub fn new(kind: DistributionKind, tensors: &'a FanoTensorSet) -> Result<Self> {
        Ok(Self { table: CoefficientTable::new(kind, tensors.spin())?, tensors })
    }

    pub fn value(&self, theta: f64, phi: f64) -> Result<f64> {
        real_part(dot(&weighted_harmonics(&self.table, theta, phi), self.tensors.values()))
    }
}

pub fn evaluate(kind: DistributionKind, t: &FanoTensorSet, theta: f64, phi: f64) -> Result<f64> {
    Distribution::new(kind, t)?.value(theta, phi)
}

/// Bipartite distribution bound to a coupled tensor set.
#[derive(Clone, Debug)]
pub struct BipartiteDistribution<'a> {
    table1: CoefficientTable,
    table2: CoefficientTable,
    tensors: &'a CoupledFanoTensorSet,
    /// Indices of the non-zero coupled values, to skip the empty bulk of
    /// structured states such as the singlet.
    support: Vec<(usize, usize, ComplexScalar)>,
}

impl<'a> BipartiteDistribution<'a> {
    pub fn new(kind: DistributionKind, tensors: &'a CoupledFanoTensorSet) -> Result<Self> {
        let (s1, s2) = tensors.spins();
        let stride = TensorLabel::count(s2);
        let support = tensors
            .values()
            .iter()
            .enumerate()
            .filter(|(_, v)| v.norm() != 0.0)
            .map(|(i, &v)| (i / stride, i % stride, v))
            .collect();
        Ok(Self {
            table1: CoefficientTable::new(kind, s1)?,
            table2: CoefficientTable::new(kind, s2)?,
            tensors,
            support,
        })
    }

    pub fn tensors(&self) -> &CoupledFanoTensorSet {
        self.tensors
    }

    pub fn weights_first(&self, theta: f64, phi: f64) -> Vec<ComplexScalar> {
        weighted_harmonics(&self.table1, theta, phi)
    }

    pub fn weights_second(&self, theta: f64, phi: f64) -> Vec<ComplexScalar> {
        weighted_harmonics(&self.table2, theta, phi)
    }

    /// Value from precomputed per-subsystem weight vectors.
    pub fn value_from_weights(&self, u1: &[ComplexScalar], u2: &[ComplexScalar]) -> Result<f64> {
        let mut re = CompensatedSum::new();
        let mut im = CompensatedSum::new();
        for &(i1, i2, v) in &self.support {
            let z = u1[i1] * v * u2[i2];
            re.add(z.re);
            im.add(z.im);
        }
        real_part(Complex64::new(re.value(), im.value()))
    }

    pub fn value(&self, theta1: f64, phi1: f64, theta2: f64, phi2: f64) -> Result<f64> {
        self.value_from_weights(&self.weights_first(theta1, phi1), &self.weights_second(theta2, phi2))
    }
}

/// `W(θ₁,φ₁;θ₂,φ₂) = 1/(4π) Σ σσ c c t^{k1k2}_{q1q2} Y*Y*`.
pub fn evaluate_bipartite(
    kind: DistributionKind,
    t12: &CoupledFanoTensorSet,
    theta1: f64,
    phi1: f64,
    theta2: f64,
    phi2: f64,
) -> Result<f64> {
    BipartiteDistribution::new(kind, t12)?.value(theta1, phi1, theta2, phi2)
}

/// Cartesian vector with unit norm.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DirectionVector {
    x: f64,
    y: f64,
    z: f64,
}

impl DirectionVector {
    /// Normalizes `(x, y, z)`; the zero vector is rejected.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let norm = (x * x + y * y + z * z).sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::Domain(format!("cannot normalize vector ({x}, {y}, {z})")));
        }
        Ok(Self { x: x / norm, y: y / norm, z: z / norm })
    }

    /// `n(θ, φ) = (sin θ cos φ, sin θ sin φ, cos θ)`.
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        Self { x: st * cp, y: st * sp, z: ct }
    }

    pub fn components(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn dot(self, other: Self) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }
}

/// Classical spin vector attached to the point `(θ, φ)` by each kind's
/// correspondence rule: `s n(π-θ,φ)` for P, `(s+1) n(π-θ,φ)` for Q, and
/// `√(s(s+1)) n(θ,φ)` for F.
pub fn classical_spin_vector(kind: DistributionKind, spin: HalfInteger, theta: f64, phi: f64) -> [f64; 3] {
    let s = spin.value();
    let (magnitude, polar) = match kind {
        DistributionKind::P => (s, PI - theta),
        DistributionKind::Q => (s + 1.0, PI - theta),
        DistributionKind::F => (spin.casimir().sqrt(), theta),
    };
    DirectionVector::from_angles(polar, phi).components().map(|c| magnitude * c)
}

/// Correspondence-rule image `σ(k,q) √(4π) / c_k · Y_kq(θ,φ)` of `τ^k_q`.
fn tau_symbol(table: &CoefficientTable, ys: &[ComplexScalar], label: TensorLabel) -> ComplexScalar {
    ys[label.index()] * (table.kind.sign(label.k, label.q) * (4.0 * PI).sqrt() / table.get(label.k))
}

/// Classical function `A(θ,φ)` that the given kind pairs with operator `A`,
/// i.e. `∫ W_ρ A dΩ = Tr(ρA)` for every state.
pub fn correspondence_symbol(kind: DistributionKind, a: &OperatorMatrix, theta: f64, phi: f64) -> Result<ComplexScalar> {
    let spin = a.spin();
    let table = CoefficientTable::new(kind, spin)?;
    let components = operator_components(a)?;
    let ys = spherical_harmonics_upto(spin.twice() as u32, theta, phi);
    Ok(symbol_from_components(&table, &components.into_values().collect::<Vec<_>>(), &ys))
}

fn symbol_from_components(table: &CoefficientTable, components: &[ComplexScalar], ys: &[ComplexScalar]) -> ComplexScalar {
    // A = 1/(2s+1) Σ τ^{k†}_q a^k_q and τ^{k†}_q = (-1)^q τ^k_{-q}.
    let dim = table.spin.multiplicity() as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for (label, &a) in TensorLabel::all(table.spin).zip(components) {
        let sign = if label.q.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        acc += a * sign * tau_symbol(table, ys, TensorLabel::new(label.k, -label.q));
    }
    acc / dim
}

/// `⟨A⟩ = ∫ W(θ,φ) A(θ,φ) dΩ` for a Hermitian observable.
pub fn expectation(kind: DistributionKind, t: &FanoTensorSet, a: &OperatorMatrix, grid: &SphereGrid) -> Result<f64> {
    let spin = t.spin();
    if a.spin() != spin {
        return Err(Error::Domain(format!("operator spin {} does not match state spin {spin}", a.spin())));
    }
    if a.max_abs_diff(&a.adjoint()) > 1e-12 {
        return Err(Error::Domain("expectation requires a Hermitian observable".into()));
    }
    grid.require_degree(2 * spin.twice() as u32)?;
    let table = CoefficientTable::new(kind, spin)?;
    let components: Vec<_> = operator_components(a)?.into_values().collect();
    let dist = Distribution { table: table.clone(), tensors: t };
    let mut failure = None;
    let value = integrate(grid, |theta, phi| {
        let ys = spherical_harmonics_upto(spin.twice() as u32, theta, phi);
        let symbol = symbol_from_components(&table, &components, &ys);
        match dist.value(theta, phi) {
            Ok(w) => w * symbol.re,
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        }
    })?;
    match failure {
        Some(e) => Err(e),
        None => Ok(value),
    }
}

/// `(-1)^k (2k+1) c_k²` for `k = 0..=2s`: Legendre coefficients of the
/// singlet profile before the `1/(4π)²` prefactor.
pub fn singlet_profile_coefficients(kind: DistributionKind, spin: HalfInteger) -> Result<Vec<f64>> {
    let table = CoefficientTable::new(kind, spin)?;
    Ok(table
        .values()
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sign * (2 * k + 1) as f64 * c * c
        })
        .collect())
}

/// Singlet distribution as a function of the angle `θ₁₂` between the two
/// directions.
#[derive(Clone, Debug)]
pub struct SingletProfile {
    kind: DistributionKind,
    spin: HalfInteger,
    coefficients: Vec<f64>,
}

impl SingletProfile {
    pub fn new(kind: DistributionKind, spin: HalfInteger) -> Result<Self> {
        Ok(Self { kind, spin, coefficients: singlet_profile_coefficients(kind, spin)? })
    }

    /// `1/(4π)² Σ_k (-1)^k (2k+1) c_k² P_k(cos θ₁₂)`.
    ///
    /// Q is the squared overlap of two coherent states with the singlet and
    /// vanishes at `θ₁₂ = 0`; there the series only cancels to rounding, so Q
    /// uses the equivalent closed form `(2s+1)/(4π)² sin^{4s}(θ₁₂/2)`, which
    /// cannot go negative.
    pub fn value(&self, theta12: f64) -> f64 {
        match self.kind {
            DistributionKind::Q => {
                let half = (theta12 / 2.0).sin().abs();
                self.spin.multiplicity() as f64 * half.powi(2 * self.spin.twice()) / (16.0 * PI * PI)
            }
            _ => profile_from_coefficients(&self.coefficients, theta12),
        }
    }
}

pub fn singlet_profile(kind: DistributionKind, spin: HalfInteger, theta12: f64) -> Result<f64> {
    Ok(SingletProfile::new(kind, spin)?.value(theta12))
}

/// The Legendre series of the profile, without the Q closed form.
pub fn singlet_profile_series(kind: DistributionKind, spin: HalfInteger, theta12: f64) -> Result<f64> {
    Ok(profile_from_coefficients(&singlet_profile_coefficients(kind, spin)?, theta12))
}

fn profile_from_coefficients(coefficients: &[f64], theta12: f64) -> f64 {
    let ps = legendre_upto(coefficients.len() as u32 - 1, theta12.cos().clamp(-1.0, 1.0));
    let sum = compensated_sum(coefficients.iter().zip(&ps).map(|(c, p)| c * p));
    sum / (16.0 * PI * PI)
}

/// `⟨(S₁·a)(S₂·b)⟩` in the singlet, computed as a phase-space average of the
/// classical spin vectors over the product grid.
pub fn correlation(
    kind: DistributionKind,
    spin: HalfInteger,
    a: DirectionVector,
    b: DirectionVector,
    grid: &SphereGrid,
) -> Result<f64> {
    spin.check_spin()?;
    // The integrand per sphere has degree 2s + 1; never go below L = 2.
    grid.require_degree((spin.twice() as u32 + 1).max(5))?;
    let t12 = crate::fano::singlet_tensors(spin)?;
    let dist = BipartiteDistribution::new(kind, &t12)?;
    let project = |v: [f64; 3], d: DirectionVector| {
        let d = d.components();
        v[0] * d[0] + v[1] * d[1] + v[2] * d[2]
    };
    let cache: Vec<_> = grid
        .nodes()
        .iter()
        .map(|n| {
            let v = classical_spin_vector(kind, spin, n.theta, n.phi);
            (
                dist.weights_first(n.theta, n.phi),
                dist.weights_second(n.theta, n.phi),
                project(v, a),
                project(v, b),
            )
        })
        .collect();
    let mut total = CompensatedSum::new();
    for (i, n1) in grid.nodes().iter().enumerate() {
        let (u1, _, fa, _) = &cache[i];
        let mut inner = CompensatedSum::new();
        for (j, n2) in grid.nodes().iter().enumerate() {
            let (_, u2, _, fb) = &cache[j];
            let v = dist.value_from_weights(u1, u2)? * fa * fb;
            if !v.is_finite() {
                return Err(Error::NonFinite { index: i * grid.len() + j, theta: n2.theta, phi: n2.phi });
            }
            inner.add(n2.weight * v);
        }
        total.add(n1.weight * inner.value());
    }
    Ok(total.value())
}

/// `∫ W(θ₁,φ₁;θ₂,φ₂) dΩ_other` at a fixed direction of the kept subsystem.
pub fn marginal(
    kind: DistributionKind,
    t12: &CoupledFanoTensorSet,
    keep: Subsystem,
    theta: f64,
    phi: f64,
    grid: &SphereGrid,
) -> Result<f64> {
    let (s1, s2) = t12.spins();
    let other = match keep {
        Subsystem::First => s2,
        Subsystem::Second => s1,
    };
    grid.require_degree(other.twice() as u32)?;
    let dist = BipartiteDistribution::new(kind, t12)?;
    let fixed = match keep {
        Subsystem::First => dist.weights_first(theta, phi),
        Subsystem::Second => dist.weights_second(theta, phi),
    };
    let mut failure = None;
    let value = integrate(grid, |t, p| {
        let result = match keep {
            Subsystem::First => dist.value_from_weights(&fixed, &dist.weights_second(t, p)),
            Subsystem::Second => dist.value_from_weights(&dist.weights_first(t, p), &fixed),
        };
        result.unwrap_or_else(|e| {
            failure.get_or_insert(e);
            0.0
        })
    })?;
    match failure {
        Some(e) => Err(e),
        None => Ok(value),
    }
}

/// `coefficient(kind, s, k)` for each listed spin.
pub fn classical_limit_table(kind: DistributionKind, k: u32, spins: &[HalfInteger]) -> Result<Vec<f64>> {
    spins
        .iter()
        .enumerate()
        .map(|(i, &s)| {
            coefficient(kind, s, k).map_err(|_| {
                Error::Domain(format!("entry {i} (s = {s}) cannot carry rank k = {k}: need k <= 2s"))
            })
        })
        .collect()
}

/// Angle in `[0, 2π)` where the singlet profile is largest on a uniform grid
/// of `step_deg` degrees. Ties keep the first maximum.
pub fn profile_argmax(kind: DistributionKind, spin: HalfInteger, step_deg: f64) -> Result<f64> {
    let profile = SingletProfile::new(kind, spin)?;
    let n = (360.0 / step_deg).round() as usize;
    let mut best = (f64::NEG_INFINITY, 0.0);
    for i in 0..n {
        let theta = (i as f64 * step_deg).to_radians();
        let v = profile.value(theta);
        if v > best.0 + 1e-15 * v.abs() {
            best = (v, theta);
        }
    }
    Ok(best.1)
}

/// Full width at half maximum of the singlet profile around its peak at
/// `θ₁₂ = π`, in radians.
///
/// Returns `2π` if the profile never drops to half its peak value.
pub fn profile_fwhm(kind: DistributionKind, spin: HalfInteger) -> Result<f64> {
    let profile = SingletProfile::new(kind, spin)?;
    let f = |t: f64| profile.value(t);
    let half = f(PI) / 2.0;
    let steps = 20_000;
    let h = PI / steps as f64;
    let mut inside = PI;
    for i in 1..=steps {
        let t = PI - i as f64 * h;
        if f(t) < half {
            let (mut lo, mut hi) = (t, inside);
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                if f(mid) < half {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            return Ok(2.0 * (PI - 0.5 * (lo + hi)));
        }
        inside = t;
    }
    Ok(2.0 * PI)
}
