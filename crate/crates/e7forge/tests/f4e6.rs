use e7forge::f4e6::{cubic_invariance_residual, derivation_span_rank, left_mult, verify_identities, ExactMatrix, F4E6Basis, J};
use e7forge::jordan::{det_form, jordan_mul, JordanBasis, JordanMatrix};
use e7forge::ExactScalar;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn dense(m: &ExactMatrix) -> DMatrix<Complex64> {
    m.to_dense()
}

fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[test]
fn identity_suite_holds_exactly() {
    let r = verify_identities(JordanBasis::standard(), F4E6Basis::standard());
    for (name, v) in r.entries() {
        assert_eq!(v, 0.0, "{name}");
    }
}

#[test]
fn inner_derivations_span_52_dimensions() {
    assert_eq!(derivation_span_rank(F4E6Basis::standard()), 52);
}

#[test]
fn generator_counts() {
    let b = F4E6Basis::standard();
    assert_eq!(b.c.len(), 52);
    assert_eq!(b.ctilde.len(), 26);
    assert_eq!(b.e6().count(), 78);
    assert_eq!(b.a.len(), 27);
}

/// Rank of a family of matrices flattened into vectors.
fn rank(ms: &[DMatrix<Complex64>]) -> usize {
    let n = ms[0].len();
    let mut a = DMatrix::<f64>::zeros(2 * n, ms.len());
    for (k, m) in ms.iter().enumerate() {
        for (i, z) in m.iter().enumerate() {
            a[(i, k)] = z.re;
            a[(n + i, k)] = z.im;
        }
    }
    let sv = a.svd(false, false).singular_values;
    let top = sv.max();
    sv.iter().filter(|s| **s > 1e-9 * top).count()
}

#[test]
fn e6_generators_are_linearly_independent() {
    let b = F4E6Basis::standard();
    let ms: Vec<_> = b.e6().map(dense).collect();
    assert_eq!(rank(&ms), 78);
}

#[test]
fn ctilde_is_minus_i_times_left_multiplication() {
    let jb = JordanBasis::standard();
    let b = F4E6Basis::standard();
    let minus_i = -ExactScalar::i();
    for a in 0..26 {
        assert_eq!(b.ctilde[a], left_mult(jb, &jb.elements[a]).scale(&minus_i));
    }
}

#[test]
fn ctilde_covariance_by_dense_matrices() {
    // [C_I, C̃_a] = Σ_c (C_I)^c_a C̃_c, checked in floats.
    let b = F4E6Basis::standard();
    let ct: Vec<_> = b.ctilde.iter().map(dense).collect();
    for ci in b.c.iter().map(dense) {
        for a in 0..26 {
            let lhs = &ci * &ct[a] - &ct[a] * &ci;
            let mut rhs = DMatrix::<Complex64>::zeros(J, J);
            for (c, m) in ct.iter().enumerate() {
                rhs += m * ci[(c, a)];
            }
            assert!(max_abs(&(lhs - rhs)) < 1e-12);
        }
    }
}

fn coords_f64(jb: &JordanBasis, x: &JordanMatrix) -> DVector<Complex64> {
    DVector::from_iterator(J, jb.coords(x).iter().map(|c| c.embed()))
}

/// A random element of `J₃(O)` with small rational coordinates.
fn random_jordan(rng: &mut impl Rng) -> Vec<ExactScalar> {
    (0..J).map(|_| ExactScalar::ratio(rng.random_range(-5..=5), rng.random_range(1..=3))).collect()
}

#[test]
fn e6_preserves_the_determinant_form() {
    // Σ Det(φx, y, z) + Det(x, φy, z) + Det(x, y, φz) = 0 evaluated on Jordan
    // matrices, independently of the stored cubic tensor.
    let jb = JordanBasis::standard();
    let b = F4E6Basis::standard();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (k, phi) in b.e6().enumerate().step_by(7) {
        let v: Vec<Vec<ExactScalar>> = (0..3).map(|_| random_jordan(&mut rng)).collect();
        let m: Vec<JordanMatrix> = v.iter().map(|c| jb.from_coords(c)).collect();
        let pm: Vec<JordanMatrix> = v.iter().map(|c| jb.from_coords(&phi.apply(c))).collect();
        let total = &(&det_form(&pm[0], &m[1], &m[2]) + &det_form(&m[0], &pm[1], &m[2])) + &det_form(&m[0], &m[1], &pm[2]);
        assert!(total.is_zero(), "generator {}", k + 1);
    }
    assert_eq!(cubic_invariance_residual(b), 0.0);
}

#[test]
fn f4_generators_are_derivations_on_every_basis_pair() {
    let jb = JordanBasis::standard();
    let b = F4E6Basis::standard();
    let e = &jb.elements;
    for c in b.c.iter().step_by(5) {
        let d = dense(c);
        let image = |x: &JordanMatrix| &d * coords_f64(jb, x);
        for p in 0..J {
            for q in p..J {
                let lhs = image(&jordan_mul(&e[p], &e[q]));
                let col = |k: usize| -> Vec<ExactScalar> { (0..J).map(|m| c.get(m, k)).collect() };
                let rhs = coords_f64(
                    jb,
                    &jordan_mul(&jb.from_coords(&col(p)), &e[q]).add(&jordan_mul(&e[p], &jb.from_coords(&col(q)))),
                );
                assert!((lhs - rhs).norm() < 1e-12);
            }
        }
    }
}

#[test]
fn ctilde_row_27_value() {
    // (C̃_a)^27_b = -i·tr(j_a∘j_b∘j₂₇)/2 = -i√(2/3)δ_ab.
    let b = F4E6Basis::standard();
    let want = -(2.0f64 / 3.0).sqrt();
    for a in 0..26 {
        for c in 0..26 {
            let v = b.ctilde[a].get(26, c).embed();
            let expected = if a == c { want } else { 0.0 };
            assert!(v.re.abs() < 1e-15 && (v.im - expected).abs() < 1e-15, "({a}, {c})");
        }
    }
}

#[test]
fn a_tensor_special_values() {
    let b = F4E6Basis::standard();
    let s = (2.0f64 / 3.0).sqrt();
    assert!((b.a[26].get(26, 26).embed().re - s).abs() < 1e-15);
    for a in 0..26 {
        assert!(b.a[a].get(26, 26).is_zero());
        assert!((b.a[a].get(a, 26).embed().re + 0.5 * s).abs() < 1e-15);
    }
}
