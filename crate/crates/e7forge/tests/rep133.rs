use e7forge::composition_algebras::{quat_ad, quat_derivation, Quaternion};
use e7forge::f4e6::F4E6Basis;
use e7forge::generators::{jacobi_residual, jacobi_triples, killing_signature_from};
use e7forge::jordan::{star, trace_form, JordanBasis};
use e7forge::rep133::{build_adjoint_133, tits_constants, Normalization, TitsBracket, TitsCoefficients, DIM, J_START, T_START};
use e7forge::ExactScalar;
use nalgebra::{DMatrix, DVector};

fn raw_constants() -> e7forge::generators::ExactConstants {
    tits_constants(F4E6Basis::standard(), TitsCoefficients::standard(), Normalization::Raw)
}

#[test]
fn quaternion_block() {
    let c = raw_constants();
    let two = ExactScalar::from_int(2);
    assert_eq!(c.get(0, 1, 2), two);
    assert_eq!(c.get(0, 2, 1), -two.clone());
    assert_eq!(c.get(1, 2, 0), two);
    // Block (1,1) of M₁ = ad(H₁) on (H₂, H₃).
    let m1 = build_adjoint_133(F4E6Basis::standard(), Normalization::Raw).exact.unwrap().swap_remove(0);
    assert_eq!(m1.get(2, 1), ExactScalar::from_int(2));
    assert_eq!(m1.get(1, 2), ExactScalar::from_int(-2));
}

#[test]
fn quaternion_derivations_commute_with_jordan_derivations() {
    let c = raw_constants();
    for l in 0..J_START {
        for j in J_START..T_START {
            assert!(c.row(l, j).is_empty(), "[H{}, J{}]", l + 1, j - J_START + 1);
        }
    }
}

#[test]
fn bracket_is_antisymmetric() {
    let c = raw_constants();
    for a in 0..DIM {
        for b in 0..DIM {
            for (k, v) in c.row(a, b) {
                assert_eq!(c.get(b, a, *k), -v.clone());
            }
        }
    }
}

/// Coefficients `d_n` with `D_{h_i,h_k} = Σ d_n ad_{h_n}` from a linear solve on
/// the quaternion units.
fn quaternion_derivation_coefficients(i: usize, k: usize) -> [f64; 3] {
    let h = Quaternion::<ExactScalar>::unit;
    let mut a = DMatrix::<f64>::zeros(12, 3);
    let mut rhs = DVector::<f64>::zeros(12);
    for m in 0..3 {
        let d = quat_derivation(&h(i + 1), &h(k + 1), &h(m + 1));
        for r in 0..4 {
            rhs[4 * m + r] = d.coords[r].embed().re;
            for n in 0..3 {
                a[(4 * m + r, n)] = quat_ad(n + 1, &h(m + 1)).coords[r].embed().re;
            }
        }
    }
    let x = a.svd(true, true).solve(&rhs, 1e-12).unwrap();
    [x[0], x[1], x[2]]
}

#[test]
fn mixed_bracket_matches_direct_evaluation() {
    // [h_i⊗j_x, h_k⊗j_y] evaluated from quaternion derivations, Jordan traces
    // and the star product, for x = 1 and every (i, k, y).
    let jb = JordanBasis::standard();
    let b = F4E6Basis::standard();
    let coeffs = TitsCoefficients::standard();
    let (alpha, beta, gamma) = (0.25, 1.0, 0.5);
    let bracket = TitsBracket::new(b, coeffs);
    let c_dense: Vec<DMatrix<_>> = b.c.iter().map(|m| m.to_dense()).collect();
    let x = 0;
    for i in 0..3 {
        for k in 0..3 {
            for y in 0..26 {
                let mut want = vec![0.0; DIM];
                let jj = trace_form(&jb.elements[x], &jb.elements[y]).embed().re;
                let d = quaternion_derivation_coefficients(i, k);
                for n in 0..3 {
                    want[n] += alpha / 3.0 * jj * d[n];
                }
                if i == k {
                    let lx = b.l[x].to_dense();
                    let ly = b.l[y].to_dense();
                    let comm = &lx * &ly - &ly * &lx;
                    for (kk, ck) in c_dense.iter().enumerate() {
                        want[J_START + kk] -= beta * (ck * &comm).trace().re / -6.0;
                    }
                }
                let s = jb.coords(&star(&jb.elements[x], &jb.elements[y]).unwrap());
                for n in 0..3 {
                    let e = e7forge::rep133::epsilon(i, k, n) as f64;
                    for (cc, v) in s.iter().take(26).enumerate() {
                        want[T_START + 26 * n + cc] += gamma * 2.0 * e * v.embed().re;
                    }
                }
                let mut got = vec![0.0; DIM];
                for (kk, v) in bracket.bracket(T_START + 26 * i + x, T_START + 26 * k + y) {
                    let z = v.embed();
                    assert!(z.im.abs() < 1e-15);
                    got[kk] = z.re;
                }
                for (g, w) in got.iter().zip(&want) {
                    assert!((g - w).abs() < 1e-12, "(i, k, y) = ({i}, {k}, {y})");
                }
            }
        }
    }
}

#[test]
fn bracket_satisfies_jacobi_and_is_compact() {
    let b = F4E6Basis::standard();
    let c = tits_constants(b, TitsCoefficients::standard(), Normalization::Raw).embed();
    let triples = jacobi_triples(DIM, 20_000, 12, false);
    let (r, _) = jacobi_residual(&c, &triples);
    assert!(r < 1e-9, "{r}");
    assert_eq!(killing_signature_from(&c).unwrap(), (0, 133));
}

#[test]
fn perturbed_gamma_breaks_jacobi() {
    let bad_coeffs = TitsCoefficients::new((1, 4), (1, 1), (101, 200));
    assert!(!bad_coeffs.satisfies_jacobi_constraint());
    assert!(TitsCoefficients::standard().satisfies_jacobi_constraint());
    let bad = tits_constants(F4E6Basis::standard(), bad_coeffs, Normalization::Raw).embed();
    let (r, _) = jacobi_residual(&bad, &jacobi_triples(DIM, 20_000, 12, false));
    assert!(r > 1e-3, "{r}");
}

#[test]
fn adjoint_matrices_are_ad_of_the_constants() {
    let set = build_adjoint_133(F4E6Basis::standard(), Normalization::Orthonormal);
    let c = tits_constants(F4E6Basis::standard(), TitsCoefficients::standard(), Normalization::Orthonormal);
    let mats = set.exact.as_ref().unwrap();
    assert_eq!(mats.len(), DIM);
    for a in [0, 3, 60, 132] {
        for b in 0..DIM {
            for cc in 0..DIM {
                assert_eq!(mats[a].get(cc, b), c.get(a, b, cc));
            }
        }
    }
}
