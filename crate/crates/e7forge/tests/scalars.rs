use e7forge::scalars::*;
use e7forge::Error;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[test]
fn radical_products() {
    assert_eq!(ExactScalar::sqrt2() * ExactScalar::sqrt3(), ExactScalar::sqrt6());
    assert_eq!(ExactScalar::sqrt2() * ExactScalar::sqrt6(), ExactScalar::from_int(2) * ExactScalar::sqrt3());
    assert_eq!(ExactScalar::sqrt3() * ExactScalar::sqrt6(), ExactScalar::from_int(3) * ExactScalar::sqrt2());
    let i_sqrt2 = ExactScalar::i() * ExactScalar::sqrt2();
    assert_eq!(&i_sqrt2 * &i_sqrt2, ExactScalar::from_int(-2));
}

#[test]
fn inverse_pairs() {
    let inv6 = ExactScalar::sqrt6().invert().unwrap();
    assert_eq!(inv6, ExactScalar::sqrt6() * ExactScalar::ratio(1, 6));
    let a = ExactScalar::one() + ExactScalar::sqrt2();
    assert_eq!(a.invert().unwrap(), ExactScalar::from_int(-1) + ExactScalar::sqrt2());
    assert_eq!(ExactScalar::from_int(2).invert().unwrap(), ExactScalar::ratio(1, 2));
    assert!(matches!(ExactScalar::zero().invert(), Err(Error::DivisionByZero)));
}

#[test]
fn inverse_of_generic_element() {
    let a: ExactScalar = "1/2,-3/5,7/3,1/11;2/9,0/1,-1/4,5/1".parse().unwrap();
    assert_eq!(&a * &a.invert().unwrap(), ExactScalar::one());
}

#[test]
fn embedding_values() {
    let s6 = ExactScalar::sqrt6().embed();
    assert_eq!(s6.re, 6f64.sqrt());
    assert_eq!(s6.im, 0.0);
    let v = (ExactScalar::i() * ExactScalar::sqrt6() * ExactScalar::ratio(1, 3)).embed();
    assert_eq!(v.re, 0.0);
    assert!((v.im - (2.0f64 / 3.0).sqrt()).abs() <= 4.0 * f64::EPSILON);
    assert_eq!(ExactScalar::zero().embed(), Complex64::new(0.0, 0.0));
}

#[test]
fn sqrt_rational_cases() {
    assert_eq!(ExactScalar::sqrt_rational(&rat(2, 3)).unwrap(), ExactScalar::sqrt6() * ExactScalar::ratio(1, 3));
    assert_eq!(ExactScalar::sqrt_rational(&rat(9, 4)).unwrap(), ExactScalar::ratio(3, 2));
    assert!(ExactScalar::sqrt_rational(&rat(5, 1)).is_none());
    assert!(ExactScalar::sqrt_rational(&rat(-1, 1)).is_none());
}

#[test]
fn text_round_trip() {
    let a = ExactScalar::i() * ExactScalar::sqrt3() + ExactScalar::ratio(-7, 4);
    let text = a.to_string();
    assert_eq!(text, "-7/4,0/1,0/1,0/1;0/1,0/1,1/1,0/1");
    assert_eq!(text.parse::<ExactScalar>().unwrap(), a);
}

fn scalar() -> impl Strategy<Value = ExactScalar> {
    let q = (-20i64..=20, 1i64..=9).prop_map(|(n, d)| rat(n, d));
    (prop::array::uniform4(q.clone()), prop::array::uniform4(q)).prop_map(|(re, im)| ExactScalar::from_coeffs(re, im))
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= 1e-9 * (1.0 + a.norm().max(b.norm()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.invert().unwrap(), ExactScalar::one());
            prop_assert_eq!(&(&b / &a) * &a, b.clone());
        }
    }

    #[test]
    fn embedding_is_a_ring_homomorphism(a in scalar(), b in scalar()) {
        prop_assert!(close((&a * &b).embed(), a.embed() * b.embed()));
        prop_assert!(close((&a + &b).embed(), a.embed() + b.embed()));
        prop_assert!(close(a.conj().embed(), a.embed().conj()));
    }

    #[test]
    fn text_rendering_round_trips(a in scalar()) {
        prop_assert_eq!(a.to_string().parse::<ExactScalar>().unwrap(), a);
    }
}

#[test]
fn malformed_text_is_rejected() {
    for bad in ["", "1/2", "1/2,0/1,0/1;0/1,0/1,0/1,0/1", "a/1,0/1,0/1,0/1;0/1,0/1,0/1,0/1", "1/0,0/1,0/1,0/1;0/1,0/1,0/1,0/1"] {
        assert!(bad.parse::<ExactScalar>().is_err(), "{bad:?}");
    }
}

#[test]
fn sqrt_exact_reports_field_overflow() {
    assert_eq!(ExactScalar::from_int(8).sqrt_exact().unwrap(), ExactScalar::from_int(2) * ExactScalar::sqrt2());
    assert!(matches!(ExactScalar::from_int(5).sqrt_exact(), Err(Error::ExactFieldOverflow(_))));
    assert!(matches!(ExactScalar::sqrt2().sqrt_exact(), Err(Error::ExactFieldOverflow(_))));
}
