//! Product quadrature on the sphere: Gauss–Legendre in `cos θ` crossed with
//! the uniform trapezoid rule in `φ`.
//!
//! A grid of band limit `L` has `L + 1` polar and `2L + 2` azimuthal nodes. It
//! integrates every spherical-harmonic polynomial of degree `≤ 2L + 1` exactly
//! up to rounding, so products `Y_kq Y*_k'q'` with `k, k' ≤ L` are exact.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numeric::CompensatedSum;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridNode {
    pub theta: f64,
    pub phi: f64,
    pub weight: f64,
}

#[derive(Clone, Debug)]
pub struct SphereGrid {
    band_limit: u32,
    nodes: Vec<GridNode>,
}

impl SphereGrid {
    pub fn band_limit(&self) -> u32 {
        self.band_limit
    }

    pub fn nodes(&self) -> &[GridNode] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Fails with [`Error::BandLimit`] if the grid cannot resolve `required`.
    pub fn require_band_limit(&self, required: u32) -> Result<()> {
        if self.band_limit < required {
            return Err(Error::BandLimit { required, actual: self.band_limit });
        }
        Ok(())
    }

    /// Requires the grid to integrate polynomials of the given degree exactly,
    /// i.e. `2L + 1 >= degree`.
    pub fn require_degree(&self, degree: u32) -> Result<()> {
        self.require_band_limit(degree / 2)
    }
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`, nodes descending.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    let nf = n as f64;
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut deriv = 1.0;
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            deriv = dp;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        if dp.is_finite() {
            deriv = dp;
        }
        nodes.push(x);
        weights.push(2.0 / ((1.0 - x * x) * deriv * deriv));
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 1..n {
        let kf = k as f64;
        let p2 = ((2.0 * kf + 1.0) * x * p1 - kf * p0) / (kf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

pub fn build_grid(band_limit: u32) -> SphereGrid {
    let n_theta = band_limit as usize + 1;
    let n_phi = 2 * band_limit as usize + 2;
    let (xs, ws) = gauss_legendre(n_theta);
    let dphi = 2.0 * PI / n_phi as f64;
    let mut nodes = Vec::with_capacity(n_theta * n_phi);
    for (&x, &w) in xs.iter().zip(&ws) {
        let theta = x.clamp(-1.0, 1.0).acos();
        for j in 0..n_phi {
            nodes.push(GridNode { theta, phi: j as f64 * dphi, weight: w * dphi });
        }
    }
    SphereGrid { band_limit, nodes }
}

/// `∫ f dΩ` over the grid, accumulated in node order with compensation.
pub fn integrate<F>(grid: &SphereGrid, mut f: F) -> Result<f64>
where
    F: FnMut(f64, f64) -> f64,
{
    let mut acc = CompensatedSum::new();
    for (index, node) in grid.nodes.iter().enumerate() {
        let v = f(node.theta, node.phi);
        if !v.is_finite() {
            return Err(Error::NonFinite { index, theta: node.theta, phi: node.phi });
        }
        acc.add(node.weight * v);
    }
    Ok(acc.value())
}

pub fn integrate_complex<F>(grid: &SphereGrid, mut f: F) -> Result<Complex64>
where
    F: FnMut(f64, f64) -> Complex64,
{
    let mut re = CompensatedSum::new();
    let mut im = CompensatedSum::new();
    for (index, node) in grid.nodes.iter().enumerate() {
        let v = f(node.theta, node.phi);
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::NonFinite { index, theta: node.theta, phi: node.phi });
        }
        re.add(node.weight * v.re);
        im.add(node.weight * v.im);
    }
    Ok(Complex64::new(re.value(), im.value()))
}

/// `∫∫ f dΩ₁ dΩ₂` over the product of two grids. Non-finite values report the
/// flattened node index `i * grid2.len() + j`.
pub fn integrate_product<F>(grid1: &SphereGrid, grid2: &SphereGrid, mut f: F) -> Result<f64>
where
    F: FnMut(&GridNode, &GridNode) -> f64,
{
    let mut acc = CompensatedSum::new();
    for (i, n1) in grid1.nodes.iter().enumerate() {
        let mut inner = CompensatedSum::new();
        for (j, n2) in grid2.nodes.iter().enumerate() {
            let v = f(n1, n2);
            if !v.is_finite() {
                return Err(Error::NonFinite { index: i * grid2.len() + j, theta: n2.theta, phi: n2.phi });
            }
            inner.add(n2.weight * v);
        }
        acc.add(n1.weight * inner.value());
    }
    Ok(acc.value())
}
