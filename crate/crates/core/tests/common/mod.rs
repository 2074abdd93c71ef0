#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use spinphase::angular::HalfInteger;
use spinphase::fano::{BipartiteDensityMatrix, DensityMatrix};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix(rng: &mut impl Rng, dim: usize) -> DMatrix<Complex64> {
    DMatrix::from_fn(dim, dim, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
}

pub fn random_hermitian(rng: &mut impl Rng, dim: usize) -> DMatrix<Complex64> {
    let a = random_matrix(rng, dim);
    (&a + a.adjoint()) * Complex64::from(0.5)
}

/// `G G† / Tr(G G†)` for a random complex `G`: full-rank mixed state.
pub fn random_state_matrix(rng: &mut impl Rng, dim: usize) -> DMatrix<Complex64> {
    let g = random_matrix(rng, dim);
    let rho = &g * g.adjoint();
    let tr = rho.trace();
    let mut rho = rho / tr;
    // symmetrize away rounding so ingestion sees an exactly Hermitian matrix
    rho = (&rho + rho.adjoint()) * Complex64::from(0.5);
    rho
}

pub fn random_density(rng: &mut impl Rng, spin: HalfInteger) -> DensityMatrix {
    DensityMatrix::new(spin, random_state_matrix(rng, spin.multiplicity())).unwrap()
}

pub fn random_bipartite(rng: &mut impl Rng, s1: HalfInteger, s2: HalfInteger) -> BipartiteDensityMatrix {
    let dim = s1.multiplicity() * s2.multiplicity();
    BipartiteDensityMatrix::new(s1, s2, random_state_matrix(rng, dim)).unwrap()
}

pub fn random_direction(rng: &mut impl Rng) -> (f64, f64) {
    let z: f64 = rng.gen_range(-1.0..1.0);
    (z.acos(), rng.gen_range(0.0..2.0 * std::f64::consts::PI))
}

pub fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}
