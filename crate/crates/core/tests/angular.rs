mod common;

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;
use rand::Rng;

use spinphase::angular::{
    clebsch_gordan, legendre, spherical_harmonic, spherical_harmonics_upto, wigner_d, wigner_rotation_matrix,
    wigner_small_d, HalfInteger,
};
use spinphase::quadrature::build_grid;

fn h(twice: i32) -> HalfInteger {
    HalfInteger::from_twice(twice)
}

fn factorial(n: i32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Exact Racah evaluation in rational arithmetic; returns the coefficient as
/// `sign * sqrt(square)` converted to f64 only at the very end.
fn cg_exact(t1: i32, t2: i32, t: i32, n1: i32, n2: i32, n: i32) -> f64 {
    if n1 + n2 != n || n1.abs() > t1 || n2.abs() > t2 || n.abs() > t {
        return 0.0;
    }
    if t > t1 + t2 || t < (t1 - t2).abs() || (t1 + t2 + t) % 2 != 0 {
        return 0.0;
    }
    let a = (t1 + t2 - t) / 2;
    let b = (t1 - t2 + t) / 2;
    let c = (-t1 + t2 + t) / 2;
    let d = (t1 + t2 + t) / 2 + 1;
    let f = |x: i32| factorial(x);
    let prefactor = BigRational::new(
        BigInt::from(t + 1) * f(a) * f(b) * f(c)
            * f((t1 + n1) / 2)
            * f((t1 - n1) / 2)
            * f((t2 + n2) / 2)
            * f((t2 - n2) / 2)
            * f((t + n) / 2)
            * f((t - n) / 2),
        f(d),
    );
    let e = (t - t2 + n1) / 2;
    let g = (t - t1 - n2) / 2;
    let mut sum = BigRational::zero();
    for k in 0.max(-e).max(-g)..=a.min((t1 - n1) / 2).min((t2 + n2) / 2) {
        let den = f(k) * f(a - k) * f((t1 - n1) / 2 - k) * f((t2 + n2) / 2 - k) * f(e + k) * f(g + k);
        let term = BigRational::new(BigInt::one(), den);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let square = prefactor * &sum * &sum;
    let magnitude = square.to_f64().unwrap().sqrt();
    if sum.is_negative() {
        -magnitude
    } else {
        magnitude
    }
}

#[test]
fn clebsch_gordan_matches_exact_rational_oracle_up_to_spin_25() {
    let mut rng = common::rng(11);
    let mut worst: f64 = 0.0;
    let mut checked = 0;
    while checked < 3000 {
        let t1 = rng.gen_range(0..=50);
        let t2 = rng.gen_range(0..=50);
        let lo = (t1 - t2).abs();
        let t = lo + 2 * rng.gen_range(0..=((t1 + t2 - lo) / 2));
        let n1 = -t1 + 2 * rng.gen_range(0..=t1);
        let n2 = -t2 + 2 * rng.gen_range(0..=t2);
        let n = n1 + n2;
        if n.abs() > t {
            continue;
        }
        let exact = cg_exact(t1, t2, t, n1, n2, n);
        if exact.abs() < 1e-300 {
            continue;
        }
        let got = clebsch_gordan(h(t1), h(t2), h(t), h(n1), h(n2), h(n)).unwrap();
        let rel = ((got - exact) / exact).abs();
        worst = worst.max(rel);
        assert!(rel <= 1e-10, "({t1},{t2},{t};{n1},{n2},{n}): got {got}, exact {exact}, rel {rel}");
        checked += 1;
    }
    eprintln!("worst relative CG error for 2s <= 50: {worst:e}");
}

#[test]
fn clebsch_gordan_exhaustive_small_spins_match_oracle() {
    for t1 in 0..=6 {
        for t2 in 0..=6 {
            for t in ((t1 - t2).abs()..=t1 + t2).step_by(2) {
                for n1 in (-t1..=t1).step_by(2) {
                    for n2 in (-t2..=t2).step_by(2) {
                        let n = n1 + n2;
                        let got = clebsch_gordan(h(t1), h(t2), h(t), h(n1), h(n2), h(n)).unwrap();
                        let exact = cg_exact(t1, t2, t, n1, n2, n);
                        assert!((got - exact).abs() < 1e-13);
                    }
                }
            }
        }
    }
}

/// Brute-force oracle for the spin-½ ⊗ spin-½ singlet: diagonalize the total
/// S² on the four-dimensional product space and read off the amplitude.
#[test]
fn singlet_coefficient_from_total_spin_diagonalization() {
    let c = |re: f64| Complex64::new(re, 0.0);
    let i = Complex64::i();
    let sx = DMatrix::from_row_slice(2, 2, &[c(0.), c(0.5), c(0.5), c(0.)]);
    let sy = DMatrix::from_row_slice(2, 2, &[c(0.), -i * 0.5, i * 0.5, c(0.)]);
    let sz = DMatrix::from_row_slice(2, 2, &[c(0.5), c(0.), c(0.), c(-0.5)]);
    let id = DMatrix::<Complex64>::identity(2, 2);
    let total = |a: &DMatrix<Complex64>| a.kronecker(&id) + id.kronecker(a);
    let (tx, ty, tz) = (total(&sx), total(&sy), total(&sz));
    let s2 = &tx * &tx + &ty * &ty + &tz * &tz;
    let eig = s2.symmetric_eigen();
    let idx = (0..4).find(|&k| eig.eigenvalues[k].abs() < 1e-12).unwrap();
    let v = eig.eigenvectors.column(idx).into_owned();
    // Fix the phase: CS convention makes the |+½,-½⟩ amplitude positive.
    let phase = v[1] / v[1].norm();
    let amp = (v[1] / phase).re;
    let cg = clebsch_gordan(h(1), h(1), h(0), h(1), h(-1), h(0)).unwrap();
    assert!((cg - amp).abs() < 1e-12);
    let other = (v[2] / phase).re;
    let cg_other = clebsch_gordan(h(1), h(1), h(0), h(-1), h(1), h(0)).unwrap();
    assert!((cg_other - other).abs() < 1e-12);
}

#[test]
fn stretched_coefficient_closed_form() {
    // c(s k s; s 0 s) = (2s)! sqrt((2s+1) / ((2s-k)! (2s+k+1)!))
    for ts in 1..=20 {
        for k in 0..=ts {
            let ln = spinphase::angular::log_factorial;
            let closed = (ln(ts as u32) + 0.5 * ((ts as f64 + 1.0).ln() - ln((ts - k) as u32) - ln((ts + k + 1) as u32)))
                .exp();
            let got = clebsch_gordan(h(ts), h(2 * k), h(ts), h(ts), h(0), h(ts)).unwrap();
            assert!(((got - closed) / closed).abs() < 1e-12, "2s={ts} k={k}");
        }
    }
}

#[test]
fn clebsch_gordan_orthogonality() {
    for t1 in 0..=8 {
        for t2 in 0..=8 {
            let ts: Vec<i32> = ((t1 - t2).abs()..=t1 + t2).step_by(2).collect();
            for &ta in &ts {
                for &tb in &ts {
                    for na in (-ta..=ta).step_by(2) {
                        for nb in (-tb..=tb).step_by(2) {
                            let mut sum = 0.0;
                            for n1 in (-t1..=t1).step_by(2) {
                                for n2 in (-t2..=t2).step_by(2) {
                                    sum += clebsch_gordan(h(t1), h(t2), h(ta), h(n1), h(n2), h(na)).unwrap()
                                        * clebsch_gordan(h(t1), h(t2), h(tb), h(n1), h(n2), h(nb)).unwrap();
                                }
                            }
                            let expected = if ta == tb && na == nb { 1.0 } else { 0.0 };
                            assert!((sum - expected).abs() < 1e-10);
                        }
                    }
                }
            }
        }
    }
}

fn sign(twice_exponent: i32) -> f64 {
    debug_assert!(twice_exponent % 2 == 0);
    if (twice_exponent / 2).rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

#[test]
fn clebsch_gordan_symmetry_relations() {
    for t1 in 0..=6 {
        for t2 in 0..=6 {
            for t in ((t1 - t2).abs()..=t1 + t2).step_by(2) {
                for n1 in (-t1..=t1).step_by(2) {
                    for n2 in (-t2..=t2).step_by(2) {
                        let n = n1 + n2;
                        let c = clebsch_gordan(h(t1), h(t2), h(t), h(n1), h(n2), h(n)).unwrap();
                        // (1) exchange of the second and coupled spins
                        let c1 = clebsch_gordan(h(t1), h(t), h(t2), h(n1), h(-n), h(-n2)).unwrap();
                        let r1 = sign(t1 - n1) * ((t as f64 + 1.0) / (t2 as f64 + 1.0)).sqrt() * c1;
                        assert!((c - r1).abs() < 1e-10);
                        // (2) reversal of all projections
                        let c2 = clebsch_gordan(h(t1), h(t2), h(t), h(-n1), h(-n2), h(-n)).unwrap();
                        assert!((c - sign(t1 + t2 - t) * c2).abs() < 1e-10);
                        // (3) exchange of the two coupled spins
                        let c3 = clebsch_gordan(h(t2), h(t1), h(t), h(n2), h(n1), h(n)).unwrap();
                        assert!((c - sign(t1 + t2 - t) * c3).abs() < 1e-10);
                    }
                }
            }
        }
    }
}

#[test]
fn clebsch_gordan_diagonal_sum_rule() {
    for ts in 0..=10 {
        for k in 0..=ts {
            for q in -k..=k {
                let sum: f64 = (-ts..=ts)
                    .step_by(2)
                    .map(|tm| clebsch_gordan(h(ts), h(2 * k), h(ts), h(tm), h(2 * q), h(tm)).unwrap())
                    .sum();
                let expected = if k == 0 { ts as f64 + 1.0 } else { 0.0 };
                assert!((sum - expected).abs() < 1e-10, "2s={ts} k={k} q={q}: {sum}");
            }
        }
    }
}

#[test]
fn legendre_matches_explicit_polynomials() {
    for i in 0..=20 {
        let x = -1.0 + 0.1 * i as f64;
        assert!((legendre(2, x).unwrap() - (3.0 * x * x - 1.0) / 2.0).abs() < 1e-14);
        assert!((legendre(3, x).unwrap() - (5.0 * x * x * x - 3.0 * x) / 2.0).abs() < 1e-14);
        let p4 = (35.0 * x.powi(4) - 30.0 * x * x + 3.0) / 8.0;
        assert!((legendre(4, x).unwrap() - p4).abs() < 1e-14);
    }
    // P_k(1) = 1, P_k(-1) = (-1)^k at high degree
    for k in [50u32, 150, 200] {
        assert!((legendre(k, 1.0).unwrap() - 1.0).abs() < 1e-12);
        assert!((legendre(k, -1.0).unwrap() - if k % 2 == 0 { 1.0 } else { -1.0 }).abs() < 1e-12);
    }
}

#[test]
fn spherical_harmonics_orthonormal_on_grid() {
    let grid = build_grid(12);
    let tables: Vec<Vec<Complex64>> = grid
        .nodes()
        .iter()
        .map(|n| spherical_harmonics_upto(12, n.theta, n.phi))
        .collect();
    let count = 13 * 13;
    for a in 0..count {
        for b in 0..count {
            let value: Complex64 = grid
                .nodes()
                .iter()
                .zip(&tables)
                .map(|(n, y)| y[a] * y[b].conj() * n.weight)
                .sum();
            let expected = if a == b { 1.0 } else { 0.0 };
            assert!((value - Complex64::from(expected)).norm() < 1e-10, "{a} {b}");
        }
    }
}

#[test]
fn spherical_harmonic_conjugation_and_parity() {
    let mut rng = common::rng(5);
    for _ in 0..50 {
        let theta = rng.gen_range(0.0..PI);
        let phi = rng.gen_range(0.0..2.0 * PI);
        for k in 0..=10u32 {
            for q in -(k as i32)..=k as i32 {
                let y = spherical_harmonic(k, q, theta, phi).unwrap();
                let ym = spherical_harmonic(k, -q, theta, phi).unwrap();
                let s = if q.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
                assert!((y.conj() - ym * s).norm() < 1e-12);
                let reflected = spherical_harmonic(k, q, PI - theta, PI + phi).unwrap();
                let p = if k % 2 == 0 { 1.0 } else { -1.0 };
                assert!((y - reflected * p).norm() < 1e-12);
            }
        }
    }
}

#[test]
fn addition_theorem_at_random_pairs() {
    let mut rng = common::rng(17);
    for _ in 0..100 {
        let (t1, p1) = (rng.gen_range(0.0..PI), rng.gen_range(0.0..2.0 * PI));
        let (t2, p2) = (rng.gen_range(0.0..PI), rng.gen_range(0.0..2.0 * PI));
        let cos12 = t1.cos() * t2.cos() + t1.sin() * t2.sin() * (p1 - p2).cos();
        for k in 0..=12u32 {
            let lhs = spinphase::angular::harmonic_overlap(k, t1, p1, t2, p2);
            let rhs = f64::from(2 * k + 1) / (4.0 * PI) * legendre(k, cos12.clamp(-1.0, 1.0)).unwrap();
            assert!((lhs - Complex64::from(rhs)).norm() < 1e-12, "k={k}");
        }
    }
}

#[test]
fn high_degree_harmonics_stay_normalized() {
    // Σ_q |Y_kq|² = (2k+1)/4π for every direction.
    for &theta in &[1e-3, 0.4, 1.5, 2.9] {
        let table = spherical_harmonics_upto(100, theta, 0.3);
        for k in [60u32, 100] {
            let base = (k * k) as usize;
            let sum: f64 = table[base..base + 2 * k as usize + 1].iter().map(|y| y.norm_sqr()).sum();
            let expected = f64::from(2 * k + 1) / (4.0 * PI);
            let err = (sum - expected).abs() / expected;
            assert!(err < 1e-12, "theta={theta} k={k} err={err:e}");
        }
    }
}

/// Rotation-matrix oracle: exponentiate -iβJy by diagonalizing the Hermitian Jy.
fn exp_jy(twice_j: i32, beta: f64) -> DMatrix<Complex64> {
    let j = h(twice_j);
    let dim = j.multiplicity();
    let mut jy = DMatrix::<Complex64>::zeros(dim, dim);
    let jv = j.value();
    for (c, m) in j.projections().enumerate() {
        let mv = m.value();
        if c > 0 {
            // J+|m⟩ = sqrt(j(j+1) - m(m+1)) |m+1⟩; Jy = (J+ - J-)/2i
            let a = (jv * (jv + 1.0) - mv * (mv + 1.0)).sqrt();
            jy[(c - 1, c)] += Complex64::new(0.0, -0.5) * a;
        }
        if c + 1 < dim {
            let a = (jv * (jv + 1.0) - mv * (mv - 1.0)).sqrt();
            jy[(c + 1, c)] += Complex64::new(0.0, 0.5) * a;
        }
    }
    let eig = jy.clone().symmetric_eigen();
    let v = &eig.eigenvectors;
    let phases = DMatrix::from_diagonal(&eig.eigenvalues.map(|l| Complex64::from_polar(1.0, -beta * l)));
    v * phases * v.adjoint()
}

#[test]
fn small_d_matches_matrix_exponential() {
    for twice_j in 0..=12 {
        for &beta in &[0.0, 0.37, 1.2, 2.5, PI] {
            let oracle = exp_jy(twice_j, beta);
            let j = h(twice_j);
            for (r, mp) in j.projections().enumerate() {
                for (c, m) in j.projections().enumerate() {
                    let d = wigner_small_d(j, mp, m, beta).unwrap();
                    assert!((oracle[(r, c)] - Complex64::from(d)).norm() < 1e-11, "j={j} {mp} {m} {beta}");
                }
            }
        }
    }
}

#[test]
fn rotation_matrices_unitary_up_to_rank_fifty() {
    let mut rng = common::rng(23);
    for k in [1, 7, 20, 35, 50] {
        for _ in 0..3 {
            let (a, b, g) = (rng.gen_range(0.0..2.0 * PI), rng.gen_range(0.0..PI), rng.gen_range(0.0..2.0 * PI));
            let d = wigner_rotation_matrix(HalfInteger::from_int(k), a, b, g).unwrap();
            let prod = &d * d.adjoint();
            let dim = d.nrows();
            let err = (prod - DMatrix::<Complex64>::identity(dim, dim)).iter().map(|z| z.norm()).fold(0.0, f64::max);
            assert!(err < 1e-10, "k={k}: {err}");
        }
    }
}

#[test]
fn rank_one_d_element() {
    for &b in &[0.1, 1.0, 2.0, 3.0] {
        assert!((wigner_d(1, 0, 0, 0.0, b, 0.0).unwrap().re - b.cos()).abs() < 1e-14);
    }
}

proptest! {
    #[test]
    fn rotation_composition_is_group_law(
        twice_j in 0i32..8,
        b1 in 0.0f64..PI, b2 in 0.0f64..PI,
    ) {
        // d(β1) d(β2) = d(β1+β2): rotations about one axis compose additively.
        let j = h(twice_j);
        let d1 = wigner_rotation_matrix(j, 0.0, b1, 0.0).unwrap();
        let d2 = wigner_rotation_matrix(j, 0.0, b2, 0.0).unwrap();
        let d12 = wigner_rotation_matrix(j, 0.0, b1 + b2, 0.0).unwrap();
        let err = (&d1 * &d2 - d12).iter().map(|z| z.norm()).fold(0.0, f64::max);
        prop_assert!(err < 1e-11);
    }
}
