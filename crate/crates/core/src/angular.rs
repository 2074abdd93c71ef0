//! Angular-momentum special functions.
//!
//! Everything here follows the Condon–Shortley phase convention: Clebsch–Gordan
//! coefficients are real, spherical harmonics carry the `(-1)^q` factor for
//! `q > 0`, and rotation matrices are `D^j_{m'm}(α,β,γ) = ⟨jm'|e^{-iαJz} e^{-iβJy}
//! e^{-iγJz}|jm⟩`.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::OnceLock;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numeric::{CompensatedSum, compensated_sum};

/// Complex amplitudes and matrix elements.
pub type ComplexScalar = Complex64;

/// A spin or projection quantum number stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInteger(i32);

impl HalfInteger {
    pub const ZERO: Self = Self(0);
    pub const HALF: Self = Self(1);
    pub const ONE: Self = Self(2);

    pub const fn from_twice(twice: i32) -> Self {
        Self(twice)
    }

    pub const fn from_int(value: i32) -> Self {
        Self(2 * value)
    }

    pub const fn twice(self) -> i32 {
        self.0
    }

    pub fn value(self) -> f64 {
        f64::from(self.0) / 2.0
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    /// Dimension `2s + 1` of the multiplet with this spin.
    pub fn multiplicity(self) -> usize {
        debug_assert!(self.0 >= 0);
        (self.0 + 1) as usize
    }

    /// Projections `s, s-1, ..., -s`, in the basis order used by every matrix
    /// in this crate.
    pub fn projections(self) -> impl DoubleEndedIterator<Item = HalfInteger> + Clone {
        let s = self.0;
        (0..=s.max(-1)).map(move |i| HalfInteger(s - 2 * i))
    }

    /// Row/column index of projection `m` in the descending-m basis of spin `self`.
    pub fn index_of(self, m: HalfInteger) -> usize {
        ((self.0 - m.0) / 2) as usize
    }

    /// `s(s+1)`.
    pub fn casimir(self) -> f64 {
        let s = self.value();
        s * (s + 1.0)
    }

    /// Checks `2s ≥ 0`.
    pub fn check_spin(self) -> Result<()> {
        if self.0 < 0 {
            return Err(Error::Domain(format!("negative spin {self}")));
        }
        Ok(())
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl Add for HalfInteger {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self(self.0 + rhs.0)
    }
}

impl Sub for HalfInteger {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self(self.0 - rhs.0)
    }
}

impl Neg for HalfInteger {
    type Output = Self;
    fn neg(self) -> Self {
        Self(-self.0)
    }
}

/// Checks that `m` is a legal projection label for spin `j`: `2j ≥ 0` and
/// `j - m` integral. `|m| > j` is allowed; callers treat it as a vanishing
/// amplitude.
fn check_pair(j: HalfInteger, m: HalfInteger) -> Result<()> {
    j.check_spin()?;
    if (j.0 - m.0) % 2 != 0 {
        return Err(Error::Domain(format!(
            "projection {m} does not match the parity of spin {j}"
        )));
    }
    Ok(())
}

const LOG_FACTORIAL_TABLE_LEN: usize = 1025;

fn log_factorial_table() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = Vec::with_capacity(LOG_FACTORIAL_TABLE_LEN);
        let mut acc = CompensatedSum::new();
        table.push(0.0);
        for n in 1..LOG_FACTORIAL_TABLE_LEN {
            acc.add((n as f64).ln());
            table.push(acc.value());
        }
        table
    })
}

/// `ln(n!)`.
///
/// Table-backed up to `n = 1024`; beyond that the Stirling series of
/// `ln Γ(n+1)` is used, which is accurate to machine precision there.
pub fn log_factorial(n: u32) -> f64 {
    let n = n as usize;
    if n < LOG_FACTORIAL_TABLE_LEN {
        return log_factorial_table()[n];
    }
    let x = n as f64 + 1.0;
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let series = inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)));
    (x - 0.5) * x.ln() - x + 0.5 * (2.0 * PI).ln() + series
}

fn lf(n: i32) -> f64 {
    debug_assert!(n >= 0);
    log_factorial(n as u32)
}

/// Clebsch–Gordan coefficient `⟨s1 m1; s2 m2 | s m⟩` in the Condon–Shortley
/// convention, via the Racah single-sum formula.
///
/// Arguments that violate the triangle rule, `m = m1 + m2`, or `|m_i| ≤ s_i`
/// give zero. A projection whose parity does not match its spin is an error.
pub fn clebsch_gordan(
    s1: HalfInteger,
    s2: HalfInteger,
    s: HalfInteger,
    m1: HalfInteger,
    m2: HalfInteger,
    m: HalfInteger,
) -> Result<f64> {
    check_pair(s1, m1)?;
    check_pair(s2, m2)?;
    check_pair(s, m)?;

    let (j1, j2, j) = (s1.0, s2.0, s.0);
    let (n1, n2, n) = (m1.0, m2.0, m.0);
    if n1 + n2 != n || n1.abs() > j1 || n2.abs() > j2 || n.abs() > j {
        return Ok(0.0);
    }
    if j > j1 + j2 || j < (j1 - j2).abs() || (j1 + j2 + j) % 2 != 0 {
        return Ok(0.0);
    }

    // Integer factorial arguments (all twice-values halve exactly here).
    let a = (j1 + j2 - j) / 2;
    let b = (j1 - j2 + j) / 2;
    let c = (-j1 + j2 + j) / 2;
    let d = (j1 + j2 + j) / 2 + 1;
    let j1pm = (j1 + n1) / 2;
    let j1mm = (j1 - n1) / 2;
    let j2pm = (j2 + n2) / 2;
    let j2mm = (j2 - n2) / 2;
    let jpm = (j + n) / 2;
    let jmm = (j - n) / 2;

    let log_prefactor = 0.5
        * ((f64::from(j) + 1.0).ln() + lf(a) + lf(b) + lf(c) - lf(d)
            + lf(j1pm)
            + lf(j1mm)
            + lf(j2pm)
            + lf(j2mm)
            + lf(jpm)
            + lf(jmm));

    // Remaining denominator arguments as functions of the summation index.
    let e = (j - j2 + n1) / 2;
    let f = (j - j1 - n2) / 2;
    let k_min = 0.max(-e).max(-f);
    let k_max = a.min(j1mm).min(j2pm);

    let mut acc = CompensatedSum::new();
    let mut magnitude = CompensatedSum::new();
    for k in k_min..=k_max {
        let log_den = lf(k) + lf(a - k) + lf(j1mm - k) + lf(j2pm - k) + lf(e + k) + lf(f + k);
        let term = (log_prefactor - log_den).exp();
        magnitude.add(term);
        acc.add(if k % 2 == 0 { term } else { -term });
    }
    let value = acc.value();
    // Each term carries a relative error of order 1e-14; heavy cancellation
    // amplifies that past the target, so redo those sums exactly.
    if value.abs() * CANCELLATION_LIMIT >= magnitude.value() {
        return Ok(value);
    }
    let den = |k: i32| [k, a - k, j1mm - k, j2pm - k, e + k, f + k];
    let mut sum = BigRational::zero();
    for k in k_min..=k_max {
        let term = BigRational::new(BigInt::one(), den(k).iter().map(|&n| factorial(n)).product());
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    if sum.is_zero() {
        return Ok(0.0);
    }
    let prefactor = BigRational::new(
        BigInt::from(j + 1) * [a, b, c, j1pm, j1mm, j2pm, j2mm, jpm, jmm].iter().map(|&n| factorial(n)).product::<BigInt>(),
        factorial(d),
    );
    let square = (prefactor * &sum * &sum).to_f64().expect("finite ratio");
    Ok(if sum.is_negative() { -square.sqrt() } else { square.sqrt() })
}

/// Ratio of summed term magnitudes to the result beyond which the
/// floating-point Racah sum is replaced by exact rational arithmetic.
const CANCELLATION_LIMIT: f64 = 1e3;

fn factorial(n: i32) -> BigInt {
    (2..=n).map(BigInt::from).product::<BigInt>().max(BigInt::one())
}

/// Legendre polynomial `P_k(x)` by the Bonnet recurrence.
pub fn legendre(k: u32, x: f64) -> Result<f64> {
    check_unit_interval(x)?;
    Ok(*legendre_upto(k, x).last().expect("non-empty"))
}

/// `[P_0(x), ..., P_kmax(x)]`. The caller guarantees `|x| ≤ 1`.
pub fn legendre_upto(kmax: u32, x: f64) -> Vec<f64> {
    let mut values = Vec::with_capacity(kmax as usize + 1);
    values.push(1.0);
    if kmax >= 1 {
        values.push(x);
    }
    for n in 1..kmax as usize {
        let nf = n as f64;
        let next = ((2.0 * nf + 1.0) * x * values[n] - nf * values[n - 1]) / (nf + 1.0);
        values.push(next);
    }
    values
}

fn check_unit_interval(x: f64) -> Result<()> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("argument {x} outside [-1, 1]")));
    }
    Ok(())
}

/// Position of `(k, q)` in flat tables: `k` ascending, `q` descending within a rank.
#[inline]
pub fn label_index(k: u32, q: i32) -> usize {
    (i64::from(k * k + k) - i64::from(q)) as usize
}

/// Spherical harmonic `Y_kq(θ, φ)`.
pub fn spherical_harmonic(k: u32, q: i32, theta: f64, phi: f64) -> Result<ComplexScalar> {
    if q.unsigned_abs() > k {
        return Err(Error::Domain(format!("|q| = {} exceeds rank k = {k}", q.abs())));
    }
    let mq = q.unsigned_abs();
    let plm = normalized_legendre_column(k, mq, theta)[(k - mq) as usize];
    let y = Complex64::from_polar(plm, f64::from(mq) * phi);
    Ok(if q >= 0 {
        y
    } else if mq.rem_euclid(2) == 0 {
        y.conj()
    } else {
        -y.conj()
    })
}

/// Normalized associated Legendre values `N_lm P_l^m(cos θ)` for `l = m..=lmax`,
/// including the Condon–Shortley phase, so that `Y_lm = value · e^{imφ}`.
///
/// Forward recurrence in degree starting from the sectoral value.
fn normalized_legendre_column(lmax: u32, m: u32, theta: f64) -> Vec<f64> {
    let (sin_t, x) = theta.sin_cos();
    let mut pmm = (0.25 / PI).sqrt();
    for i in 1..=m {
        let fi = f64::from(i);
        pmm *= -((2.0 * fi + 1.0) / (2.0 * fi)).sqrt() * sin_t;
    }
    let mut column = Vec::with_capacity((lmax - m + 1) as usize);
    column.push(pmm);
    if lmax == m {
        return column;
    }
    let mf = f64::from(m);
    let mut prev = pmm;
    let mut cur = (2.0 * mf + 3.0).sqrt() * x * pmm;
    column.push(cur);
    for l in (m + 2)..=lmax {
        let lf = f64::from(l);
        let a = ((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf)).sqrt();
        let lp = lf - 1.0;
        let b = ((lp * lp - mf * mf) / (4.0 * lp * lp - 1.0)).sqrt();
        let next = a * (x * cur - b * prev);
        prev = cur;
        cur = next;
        column.push(cur);
    }
    column
}

/// All `Y_kq(θ, φ)` with `k ≤ kmax`, laid out by [`label_index`].
pub fn spherical_harmonics_upto(kmax: u32, theta: f64, phi: f64) -> Vec<ComplexScalar> {
    let len = ((kmax + 1) * (kmax + 1)) as usize;
    let mut table = vec![Complex64::new(0.0, 0.0); len];
    for m in 0..=kmax {
        let column = normalized_legendre_column(kmax, m, theta);
        let phase = Complex64::from_polar(1.0, f64::from(m) * phi);
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        for (offset, &p) in column.iter().enumerate() {
            let k = m + offset as u32;
            let y = phase * p;
            table[label_index(k, m as i32)] = y;
            if m > 0 {
                table[label_index(k, -(m as i32))] = y.conj() * sign;
            }
        }
    }
    table
}

/// Jacobi polynomial `P_n^{(a,b)}(x)` by its three-term recurrence.
fn jacobi(n: u32, a: f64, b: f64, x: f64) -> f64 {
    let mut p0 = 1.0;
    if n == 0 {
        return p0;
    }
    let mut p1 = (a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0;
    for k in 2..=n {
        let k = f64::from(k);
        let s = 2.0 * k + a + b;
        let c1 = 2.0 * k * (k + a + b) * (s - 2.0);
        let c2 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b);
        let c3 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * s;
        let p2 = (c2 * p1 - c3 * p0) / c1;
        p0 = p1;
        p1 = p2;
    }
    p1
}

fn log_binomial(n: i32, k: i32) -> f64 {
    lf(n) - lf(k) - lf(n - k)
}

/// Wigner small-d element `d^j_{m'm}(β) = ⟨jm'|e^{-iβJy}|jm⟩`.
///
/// Evaluated through the Jacobi-polynomial representation, which stays
/// accurate at large `j` where the alternating factorial sum cancels badly.
pub fn wigner_small_d(j: HalfInteger, mp: HalfInteger, m: HalfInteger, beta: f64) -> Result<f64> {
    check_pair(j, mp)?;
    check_pair(j, m)?;
    if mp.0.abs() > j.0 || m.0.abs() > j.0 {
        return Err(Error::Domain(format!(
            "projections ({mp}, {m}) out of range for rank {j}"
        )));
    }
    let (tj, tmp, tm) = (j.0, mp.0, m.0);
    // Integer quantities: j±m etc. are integral here.
    let jpm = (tj + tm) / 2;
    let jmm = (tj - tm) / 2;
    let jpmp = (tj + tmp) / 2;
    let jmmp = (tj - tmp) / 2;
    let diff = (tmp - tm) / 2;
    let k = jpm.min(jmm).min(jpmp).min(jmmp);
    let (a, lambda) = if k == jpm {
        (diff, diff)
    } else if k == jmm || k == jpmp {
        (-diff, 0)
    } else {
        (diff, diff)
    };
    let b = tj - 2 * k - a;
    let log_norm = 0.5 * (log_binomial(tj - k, k + a) - log_binomial(k + b, b));
    let (sh, ch) = (beta / 2.0).sin_cos();
    let poly = jacobi(k as u32, f64::from(a), f64::from(b), beta.cos());
    let sign = if lambda.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    Ok(sign * log_norm.exp() * sh.powi(a) * ch.powi(b) * poly)
}

/// Rotation-matrix element `D^j_{m'm}(α,β,γ) = e^{-im'α} d^j_{m'm}(β) e^{-imγ}`.
pub fn wigner_rotation(
    j: HalfInteger,
    mp: HalfInteger,
    m: HalfInteger,
    alpha: f64,
    beta: f64,
    gamma: f64,
) -> Result<ComplexScalar> {
    let d = wigner_small_d(j, mp, m, beta)?;
    Ok(Complex64::from_polar(d, -(mp.value() * alpha + m.value() * gamma)))
}

/// Integer-rank convenience form of [`wigner_rotation`].
pub fn wigner_d(k: u32, qp: i32, q: i32, alpha: f64, beta: f64, gamma: f64) -> Result<ComplexScalar> {
    wigner_rotation(
        HalfInteger::from_int(k as i32),
        HalfInteger::from_int(qp),
        HalfInteger::from_int(q),
        alpha,
        beta,
        gamma,
    )
}

/// The full `(2j+1)`-dimensional rotation matrix, rows and columns in
/// descending-m order.
pub fn wigner_rotation_matrix(j: HalfInteger, alpha: f64, beta: f64, gamma: f64) -> Result<DMatrix<ComplexScalar>> {
    j.check_spin()?;
    let dim = j.multiplicity();
    let mut out = DMatrix::zeros(dim, dim);
    for (r, mp) in j.projections().enumerate() {
        for (c, m) in j.projections().enumerate() {
            out[(r, c)] = wigner_rotation(j, mp, m, alpha, beta, gamma)?;
        }
    }
    Ok(out)
}

/// `Σ_q Y_kq(1) Y*_kq(2)`; used by tests and the profile code to cross-check
/// the addition theorem.
pub fn harmonic_overlap(k: u32, theta1: f64, phi1: f64, theta2: f64, phi2: f64) -> ComplexScalar {
    let y1 = spherical_harmonics_upto(k, theta1, phi1);
    let y2 = spherical_harmonics_upto(k, theta2, phi2);
    let base = label_index(k, k as i32);
    let re = compensated_sum((0..=2 * k as usize).map(|i| (y1[base + i] * y2[base + i].conj()).re));
    let im = compensated_sum((0..=2 * k as usize).map(|i| (y1[base + i] * y2[base + i].conj()).im));
    Complex64::new(re, im)
}
