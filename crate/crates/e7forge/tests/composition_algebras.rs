use e7forge::composition_algebras::*;
use e7forge::ExactScalar;
use proptest::prelude::*;

type O = Octonion<ExactScalar>;

#[test]
fn table_basics() {
    assert_eq!(oct_mul(&O::unit(1), &O::unit(2)), O::unit(3));
    assert_eq!(oct_mul(&O::unit(1), &O::unit(1)), O::unit(0).neg());
    assert_eq!(oct_mul(&O::unit(2), &O::unit(1)), O::unit(3).neg());
}

#[test]
fn associator_examples() {
    let a = associator(&O::unit(1), &O::unit(2), &O::unit(4));
    assert!(!a.is_zero());
    let b = associator(&O::unit(2), &O::unit(1), &O::unit(4));
    assert_eq!(a, b.neg());
    // (e1 e2) e4 = e3 e4 = e7 and e1 (e2 e4) = e1 e6 = -e7.
    assert_eq!(a, O::unit(7).scale(&ExactScalar::from_int(2)));
    assert!(associator(&O::unit(1), &O::unit(2), &O::unit(3)).is_zero());
}

#[test]
fn quaternion_relations() {
    let h = Quaternion::<ExactScalar>::unit;
    assert_eq!(h(1).mul(&h(2)), h(3));
    assert_eq!(h(2).mul(&h(3)), h(1));
    assert_eq!(h(3).mul(&h(1)), h(2));
    assert_eq!(quat_ad(1, &h(2)), h(3).scale(&ExactScalar::from_int(2)));
    // D_{i,j}(k) = [[i,j],k] = [2k,k] = 0.
    assert_eq!(quat_derivation(&h(1), &h(2), &h(3)), Quaternion::zero());
    // D_{i,j}(i) = [[i,j],i] = [2k,i] = 4j.
    assert_eq!(quat_derivation(&h(1), &h(2), &h(1)), h(2).scale(&ExactScalar::from_int(4)));
}

/// Octonion product written out from the oriented Fano lines, used as an
/// oracle for the lookup table.
fn fano_product(a: usize, b: usize) -> (i8, usize) {
    const LINES: [[usize; 3]; 7] = [[1, 2, 3], [1, 4, 5], [2, 4, 6], [3, 4, 7], [2, 5, 7], [6, 1, 7], [3, 6, 5]];
    match (a, b) {
        (0, b) => (1, b),
        (a, 0) => (1, a),
        (a, b) if a == b => (-1, 0),
        (a, b) => {
            for l in LINES {
                for s in 0..3 {
                    if l[s] == a && l[(s + 1) % 3] == b {
                        return (1, l[(s + 2) % 3]);
                    }
                    if l[s] == b && l[(s + 1) % 3] == a {
                        return (-1, l[(s + 2) % 3]);
                    }
                }
            }
            unreachable!("every pair of imaginary units lies on one line")
        }
    }
}

#[test]
fn table_matches_fano_lines() {
    let t = octonion_table();
    for (a, row) in t.iter().enumerate() {
        for (b, entry) in row.iter().enumerate() {
            assert_eq!(*entry, fano_product(a, b), "e{a} e{b}");
        }
    }
}

#[test]
fn associator_is_totally_antisymmetric_on_units() {
    for a in 1..8 {
        for b in 1..8 {
            for c in 1..8 {
                let x = associator(&O::unit(a), &O::unit(b), &O::unit(c));
                assert_eq!(x, associator(&O::unit(b), &O::unit(a), &O::unit(c)).neg());
                assert_eq!(x, associator(&O::unit(a), &O::unit(c), &O::unit(b)).neg());
            }
        }
    }
}

type F = Octonion<f64>;

fn float_oct() -> impl Strategy<Value = F> {
    prop::array::uniform8(-1.0f64..1.0).prop_map(F::new)
}

fn small_int() -> impl Strategy<Value = ExactScalar> {
    (-3i64..=3).prop_map(ExactScalar::from_int)
}

fn imaginary() -> impl Strategy<Value = O> {
    prop::array::uniform7(small_int()).prop_map(|c| {
        let mut o = O::zero();
        o.coords[1..].clone_from_slice(&c);
        o
    })
}

fn ex(n: i64, d: i64) -> ExactScalar {
    ExactScalar::ratio(n, d)
}

proptest! {
    #[test]
    fn norm_is_multiplicative(x in float_oct(), y in float_oct()) {
        let n = |o: &F| o.inner(o);
        let lhs = n(&oct_mul(&x, &y));
        prop_assert!((lhs - n(&x) * n(&y)).abs() <= 1e-12 * (1.0 + lhs));
    }

    #[test]
    fn conjugation_reverses_products(x in float_oct(), y in float_oct()) {
        let d = oct_mul(&x, &y).conj().sub(&oct_mul(&y.conj(), &x.conj()));
        prop_assert!(d.coords.iter().all(|c| c.abs() <= 1e-12));
    }

    #[test]
    fn alternative_laws(x in imaginary(), y in imaginary()) {
        prop_assert!(associator(&x, &x, &y).is_zero());
        prop_assert!(associator(&x, &y, &y).is_zero());
        prop_assert!(associator(&x, &y, &x).is_zero());
    }

    #[test]
    fn derivation_identity(k in imaginary(), k1 in imaginary(), k2 in imaginary()) {
        // D_{k,k'}(k'') = [[k,k'],k''] - 3[k,k',k''].
        let rhs = k.commutator(&k1).commutator(&k2).sub(&associator(&k, &k1, &k2).scale(&ExactScalar::from_int(3)));
        prop_assert_eq!(oct_derivation(&k, &k1, &k2), rhs);
    }

    #[test]
    fn inner_product_identity(a in imaginary(), b in imaginary(), c in imaginary()) {
        // ⟨c,a⟩b - ⟨c,b⟩a = -¼[[b,a],c] + ½[c,b,a].
        let lhs = b.scale(&c.inner(&a)).sub(&a.scale(&c.inner(&b)));
        let rhs = b.commutator(&a).commutator(&c).scale(&ex(-1, 4)).add(&associator(&c, &b, &a).scale(&ex(1, 2)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn derivation_obeys_leibniz(k in imaginary(), k1 in imaginary(), x in imaginary(), y in imaginary()) {
        let d = |z: &O| oct_derivation(&k, &k1, z);
        prop_assert_eq!(d(&oct_mul(&x, &y)), oct_mul(&d(&x), &y).add(&oct_mul(&x, &d(&y))));
    }
}

#[test]
fn quaternion_derivation_by_matrices() {
    // Left and right multiplication as 4×4 matrices on (1, i, j, k).
    use nalgebra::Matrix4;
    let h = Quaternion::<ExactScalar>::unit;
    let as_matrix = |f: &dyn Fn(&Quaternion<ExactScalar>) -> Quaternion<ExactScalar>| {
        Matrix4::from_fn(|r, c| f(&h(c)).coords[r].embed().re)
    };
    let l = |a: usize| as_matrix(&move |x| h(a).mul(x));
    let r = |a: usize| as_matrix(&move |x| x.mul(&h(a)));
    let d = (l(1) * l(2) - l(2) * l(1)) + (r(1) * r(2) - r(2) * r(1));
    for c in 0..4 {
        let want = quat_derivation(&h(1), &h(2), &h(c));
        for k in 0..4 {
            assert_eq!(d[(k, c)], want.coords[k].embed().re);
        }
    }
}

#[test]
fn quaternion_inner_product_is_positive_definite() {
    let h = Quaternion::<ExactScalar>::unit;
    for a in 0..4 {
        for b in 0..4 {
            assert_eq!(h(a).inner(&h(b)), ExactScalar::from_int(i64::from(a == b)));
        }
    }
}
