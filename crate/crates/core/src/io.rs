//! Density-matrix files and the text outputs of the command-line tool.
//!
//! A density-matrix file is a JSON object:
//!
//! ```json
//! { "twice_spin": 1, "matrix": [[[0.5, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.5, 0.0]]] }
//! ```
//!
//! Rows and columns run over `m = s, s-1, ..., -s`. Two-spin files give
//! `twice_spin_1` and `twice_spin_2` instead, and index the product basis with
//! `m₁` outer and `m₂` inner. Every entry is a `[re, im]` pair.
//!
//! CSV output uses `,` separators, LF line endings and C-style `%.12e`
//! numbers.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::angular::HalfInteger;
use crate::distributions::{
    classical_limit_table, correlation, DirectionVector, Distribution, DistributionKind, SingletProfile,
};
use crate::error::{Error, Result};
use crate::fano::{decompose, decompose_bipartite, BipartiteDensityMatrix, DensityMatrix};
use crate::numeric::CompensatedSum;
use crate::quadrature::build_grid;

/// On-disk form of a single or two-spin density matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DensityMatrixFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twice_spin: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twice_spin_1: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twice_spin_2: Option<i64>,
    pub matrix: Vec<Vec<[f64; 2]>>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LoadedState {
    Single(DensityMatrix),
    Bipartite(BipartiteDensityMatrix),
}

fn spin_field(name: &str, value: i64) -> Result<HalfInteger> {
    if !(0..=i64::from(i32::MAX / 2)).contains(&value) {
        return Err(Error::Validation(format!("field '{name}': twice-spin must be a nonnegative integer, got {value}")));
    }
    Ok(HalfInteger::from_twice(value as i32))
}

impl DensityMatrixFile {
    pub fn from_single(rho: &DensityMatrix) -> Self {
        Self {
            twice_spin: Some(i64::from(rho.spin().twice())),
            twice_spin_1: None,
            twice_spin_2: None,
            matrix: matrix_rows(rho.entries()),
        }
    }

    pub fn from_bipartite(rho: &BipartiteDensityMatrix) -> Self {
        let (s1, s2) = rho.spins();
        Self {
            twice_spin: None,
            twice_spin_1: Some(i64::from(s1.twice())),
            twice_spin_2: Some(i64::from(s2.twice())),
            matrix: matrix_rows(rho.entries()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    /// Checks the shape and builds the validated state.
    pub fn into_state(self) -> Result<LoadedState> {
        let dims = match (self.twice_spin, self.twice_spin_1, self.twice_spin_2) {
            (Some(t), None, None) => {
                let s = spin_field("twice_spin", t)?;
                (s.multiplicity(), Some(s), None)
            }
            (None, Some(t1), Some(t2)) => {
                let s1 = spin_field("twice_spin_1", t1)?;
                let s2 = spin_field("twice_spin_2", t2)?;
                (s1.multiplicity() * s2.multiplicity(), None, Some((s1, s2)))
            }
            _ => {
                return Err(Error::Validation(
                    "give either 'twice_spin' or both 'twice_spin_1' and 'twice_spin_2'".into(),
                ))
            }
        };
        let dim = dims.0;
        if self.matrix.len() != dim {
            return Err(Error::Validation(format!(
                "field 'matrix': expected {dim} rows, found {}",
                self.matrix.len()
            )));
        }
        for (r, row) in self.matrix.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::Validation(format!(
                    "field 'matrix': row {r} has {} entries, expected {dim}",
                    row.len()
                )));
            }
        }
        let entries = DMatrix::from_fn(dim, dim, |r, c| {
            let [re, im] = self.matrix[r][c];
            Complex64::new(re, im)
        });
        match dims {
            (_, Some(s), None) => Ok(LoadedState::Single(DensityMatrix::new(s, entries)?)),
            (_, None, Some((s1, s2))) => Ok(LoadedState::Bipartite(BipartiteDensityMatrix::new(s1, s2, entries)?)),
            _ => unreachable!(),
        }
    }
}

fn matrix_rows(m: &DMatrix<Complex64>) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows())
        .map(|r| (0..m.ncols()).map(|c| [m[(r, c)].re, m[(r, c)].im]).collect())
        .collect()
}

/// Parses file contents; syntax errors carry the JSON line and column.
pub fn parse_density_file(text: &str) -> Result<LoadedState> {
    let file: DensityMatrixFile = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))?;
    file.into_state()
}

pub fn load_density_file(path: &Path) -> Result<LoadedState> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    parse_density_file(&text).map_err(|e| match e {
        Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
        Error::Validation(msg) => Error::Validation(format!("{}: {msg}", path.display())),
        other => other,
    })
}

/// `printf("%.12e")`: twelve fractional digits and an exponent of at least
/// two digits with explicit sign.
pub fn format_e12(x: f64) -> String {
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    // print -0 as 0
    let x = if x == 0.0 { 0.0 } else { x };
    let s = format!("{x:.12e}");
    let (mantissa, exponent) = s.split_once('e').expect("exponent present");
    let exponent: i32 = exponent.parse().expect("integer exponent");
    let sign = if exponent < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exponent.abs())
}

/// Kind selection on the command line; `All` emits one column per kind.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KindSelection {
    One(DistributionKind),
    All,
}

impl std::str::FromStr for KindSelection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" | "ALL" => Ok(KindSelection::All),
            other => other.parse().map(KindSelection::One),
        }
    }
}

pub fn cmd_tensors(input: &Path, out: &mut impl Write) -> Result<()> {
    let mut text = String::new();
    match load_density_file(input)? {
        LoadedState::Single(rho) => {
            text.push_str("k,q,re,im\n");
            for (l, v) in decompose(&rho).iter() {
                writeln!(text, "{},{},{},{}", l.k, l.q, format_e12(v.re), format_e12(v.im)).unwrap();
            }
        }
        LoadedState::Bipartite(rho) => {
            text.push_str("k1,q1,k2,q2,re,im\n");
            for (l1, l2, v) in decompose_bipartite(&rho).iter() {
                writeln!(
                    text,
                    "{},{},{},{},{},{}",
                    l1.k,
                    l1.q,
                    l2.k,
                    l2.q,
                    format_e12(v.re),
                    format_e12(v.im)
                )
                .unwrap();
            }
        }
    }
    out.write_all(text.as_bytes())?;
    Ok(())
}

fn check_twice_spin(twice_spin: i64) -> Result<HalfInteger> {
    if !(1..=i64::from(i32::MAX / 2)).contains(&twice_spin) {
        return Err(Error::Domain(format!("twice-spin must be at least 1, got {twice_spin}")));
    }
    Ok(HalfInteger::from_twice(twice_spin as i32))
}

/// Angles `0, step, 2·step, ...` up to and including 360 degrees.
fn profile_angles(step_deg: f64) -> Vec<f64> {
    let n = (360.0 / step_deg + 1e-9).floor() as usize;
    let mut angles: Vec<f64> = (0..=n).map(|i| i as f64 * step_deg).collect();
    if 360.0 - angles[n] > 1e-9 {
        angles.push(360.0);
    } else {
        angles[n] = 360.0;
    }
    angles
}

fn kind_label(kind: DistributionKind) -> &'static str {
    match kind {
        DistributionKind::P => "p",
        DistributionKind::Q => "q",
        DistributionKind::F => "f",
    }
}

/// Singlet profile CSV over `θ₁₂ ∈ [0°, 360°]`. The P column is followed by
/// `p_normalized = P/(2s+1)²`.
pub fn cmd_singlet(selection: KindSelection, twice_spin: i64, step_deg: f64, out: &mut impl Write) -> Result<()> {
    let spin = check_twice_spin(twice_spin)?;
    if !(step_deg > 0.0 && step_deg <= 90.0) {
        return Err(Error::Domain(format!("step must satisfy 0 < step <= 90 degrees, got {step_deg}")));
    }
    let kinds: Vec<DistributionKind> = match selection {
        KindSelection::One(k) => vec![k],
        KindSelection::All => DistributionKind::ALL.to_vec(),
    };
    let profiles = kinds.iter().map(|&k| SingletProfile::new(k, spin)).collect::<Result<Vec<_>>>()?;
    let norm = (spin.multiplicity() as f64).powi(2);

    let mut text = String::from("theta12_deg");
    for &k in &kinds {
        text.push(',');
        text.push_str(kind_label(k));
        if k == DistributionKind::P {
            text.push_str(",p_normalized");
        }
    }
    text.push('\n');
    for deg in profile_angles(step_deg) {
        text.push_str(&format_e12(deg));
        for (&k, profile) in kinds.iter().zip(&profiles) {
            let value = profile.value(deg.to_radians());
            write!(text, ",{}", format_e12(value)).unwrap();
            if k == DistributionKind::P {
                write!(text, ",{}", format_e12(value / norm)).unwrap();
            }
        }
        text.push('\n');
    }
    out.write_all(text.as_bytes())?;
    Ok(())
}

/// Phase-space singlet correlation for every kind against `-s(s+1)/3 a·b`.
pub fn cmd_correlation(twice_spin: i64, a: [f64; 3], b: [f64; 3], out: &mut impl Write) -> Result<()> {
    let spin = check_twice_spin(twice_spin)?;
    let analyzer = |name: &str, v: [f64; 3]| {
        DirectionVector::new(v[0], v[1], v[2]).map_err(|e| match e {
            Error::Domain(msg) => Error::Domain(format!("analyzer {name}: {msg}")),
            other => other,
        })
    };
    let (a, b) = (analyzer("a", a)?, analyzer("b", b)?);
    let exact = -spin.casimir() / 3.0 * a.dot(b);
    let grid = build_grid(2.max((spin.twice() as u32).div_ceil(2)));
    let mut text = String::from("kind,value,exact,abs_deviation\n");
    let mut worst: f64 = 0.0;
    for kind in DistributionKind::ALL {
        let value = correlation(kind, spin, a, b, &grid)?;
        let dev = (value - exact).abs();
        worst = worst.max(dev);
        writeln!(text, "{kind},{},{},{}", format_e12(value), format_e12(exact), format_e12(dev)).unwrap();
    }
    writeln!(text, "max_abs_deviation,{}", format_e12(worst)).unwrap();
    out.write_all(text.as_bytes())?;
    Ok(())
}

/// `c_k` and `|c_k - 1|` for each listed spin.
pub fn cmd_limit(kind: DistributionKind, k: u32, twice_spins: &[i64], out: &mut impl Write) -> Result<()> {
    let spins = twice_spins
        .iter()
        .enumerate()
        .map(|(i, &t)| check_twice_spin(t).map_err(|e| Error::Domain(format!("entry {i}: {e}"))))
        .collect::<Result<Vec<_>>>()?;
    let values = classical_limit_table(kind, k, &spins)?;
    let mut text = String::from("twice_spin,coefficient,abs_deviation\n");
    for (s, v) in spins.iter().zip(values) {
        writeln!(text, "{},{},{}", s.twice(), format_e12(v), format_e12((v - 1.0).abs())).unwrap();
    }
    out.write_all(text.as_bytes())?;
    Ok(())
}

/// Distribution values on the quadrature grid of band limit `band_limit`
/// (default `2s`), followed by a `normalization` line holding `Σ w·W`.
pub fn cmd_dist(input: &Path, kind: DistributionKind, band_limit: Option<u32>, out: &mut impl Write) -> Result<()> {
    let rho = match load_density_file(input)? {
        LoadedState::Single(rho) => rho,
        LoadedState::Bipartite(_) => {
            return Err(Error::Validation(format!(
                "{}: distribution grids need a single-spin file (found twice_spin_1/twice_spin_2)",
                input.display()
            )))
        }
    };
    let t = decompose(&rho);
    let grid = build_grid(band_limit.unwrap_or(rho.spin().twice() as u32));
    let dist = Distribution::new(kind, &t)?;
    let mut text = String::from("theta_deg,phi_deg,weight,value\n");
    let mut total = CompensatedSum::new();
    for (index, node) in grid.nodes().iter().enumerate() {
        let value = dist.value(node.theta, node.phi)?;
        if !value.is_finite() {
            return Err(Error::NonFinite { index, theta: node.theta, phi: node.phi });
        }
        total.add(node.weight * value);
        writeln!(
            text,
            "{},{},{},{}",
            format_e12(node.theta.to_degrees()),
            format_e12(node.phi.to_degrees()),
            format_e12(node.weight),
            format_e12(value)
        )
        .unwrap();
    }
    writeln!(text, "normalization,{}", format_e12(total.value())).unwrap();
    out.write_all(text.as_bytes())?;
    Ok(())
}
