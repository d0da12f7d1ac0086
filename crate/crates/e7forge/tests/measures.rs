use std::f64::consts::PI;

use e7forge::measures::*;
use e7forge::Error;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn binomial(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// `I(a,b,c)` by expanding the integrand into monomials `x^i y^j z^k` and
/// integrating each one exactly over `0 ≤ z ≤ y ≤ x ≤ 1`.
fn integral_by_monomials(a: u32, b: u32, c: u32) -> BigRational {
    let (p, q, r) = (a - 1, b - 1, c - 1);
    let mut total = BigRational::zero();
    for s in 0..=p {
        for t in 0..=q {
            for u in 0..=r {
                // (x - y)^p (y - z)^q (x - z)^r picks x^{p-s} y^s, y^{q-t} z^t, x^{r-u} z^u.
                let sign = if (s + t + u) % 2 == 0 { 1 } else { -1 };
                let coeff = binomial(p, s) * binomial(q, t) * binomial(r, u) * sign;
                let (i, j, k) = ((p - s + r - u) as i64, (s + q - t) as i64, (t + u) as i64);
                let mono = rat(1, (k + 1) * (j + k + 2) * (i + j + k + 3));
                total += BigRational::from_integer(coeff) * mono;
            }
        }
    }
    total
}

/// `√2^s2 · √3^s3 · 2^e2 · π^pi / den` in floats.
fn value(s2: i32, s3: i32, e2: i32, den: &[(f64, i32)], pi: i32) -> f64 {
    let d: f64 = den.iter().map(|(p, e)| p.powi(*e)).product();
    2f64.sqrt().powi(s2) * 3f64.sqrt().powi(s3) * 2f64.powi(e2) / d * PI.powi(pi)
}

/// The Macdonald product `V_T ∏ Vol(S^d) |α∨|^N` in floats, with
/// `Vol(S^{2k-1}) = 2π^k/(k-1)!`.
fn macdonald_float(torus: f64, dims: &[u32], coroots: i32) -> f64 {
    let sphere = |d: u32| {
        let k = d.div_ceil(2);
        2.0 * PI.powi(k as i32) / (1..k).map(f64::from).product::<f64>()
    };
    torus * dims.iter().map(|&d| sphere(d)).product::<f64>() * 2f64.sqrt().powi(coroots)
}

#[test]
fn volume_strings() {
    let want = [
        (VolumeTarget::E7, "√2·2^23/(3^22·5^10·7^6·11^3·13^2·17) · π^70"),
        (VolumeTarget::E6, "√3·2^17/(3^10·5^5·7^3·11) · π^42"),
        (VolumeTarget::So8, "2^12/(3^3·5) · π^16"),
        (VolumeTarget::U, "√2·2^18/(3^10·5^5·7^3·11) · π^43"),
        (VolumeTarget::E7ModU, "2^5/(3^12·5^5·7^3·11^2·13^2·17) · π^27"),
    ];
    for (t, s) in want {
        assert_eq!(t.volume().to_string(), s, "{}", t.name());
        assert_eq!(t.name().parse::<VolumeTarget>().unwrap(), t);
    }
    assert!(matches!("F4".parse::<VolumeTarget>(), Err(Error::InvalidArgument(_))));
}

#[test]
fn volumes_in_floats() {
    let e7 = macdonald_float(2f64.sqrt(), &[3, 11, 15, 19, 23, 27, 35], 126);
    let e6 = macdonald_float(3f64.sqrt(), &[3, 9, 11, 15, 17, 23], 72);
    let so8 = macdonald_float(2.0, &[3, 7, 7, 11], 24);
    let u = e6 * 2.0 * 6f64.sqrt() * PI / 3.0;
    let cases = [
        (VolumeTarget::E7, e7, value(1, 0, 23, &[(3.0, 22), (5.0, 10), (7.0, 6), (11.0, 3), (13.0, 2), (17.0, 1)], 70)),
        (VolumeTarget::E6, e6, value(0, 1, 17, &[(3.0, 10), (5.0, 5), (7.0, 3), (11.0, 1)], 42)),
        (VolumeTarget::So8, so8, value(0, 0, 12, &[(3.0, 3), (5.0, 1)], 16)),
        (VolumeTarget::U, u, value(1, 0, 18, &[(3.0, 10), (5.0, 5), (7.0, 3), (11.0, 1)], 43)),
        (VolumeTarget::E7ModU, e7 / u, value(0, 0, 5, &[(3.0, 12), (5.0, 5), (7.0, 3), (11.0, 2), (13.0, 2), (17.0, 1)], 27)),
    ];
    for (t, float, printed) in cases {
        let v = t.volume().to_f64();
        assert!((v / float - 1.0).abs() < 1e-12, "{}", t.name());
        assert!((v / printed - 1.0).abs() < 1e-12, "{}", t.name());
    }
}

#[test]
fn descriptor_dimensions() {
    assert_eq!(GroupVolumeDescriptor::e7().dimension(), 133);
    assert_eq!(GroupVolumeDescriptor::e6().dimension(), 78);
    assert_eq!(GroupVolumeDescriptor::so8().dimension(), 28);
}

#[test]
fn sphere_volumes() {
    assert_eq!(sphere_volume(1).to_string(), "2 · π");
    assert!((sphere_volume(2).to_f64() - 4.0 * PI).abs() < 1e-12);
    assert!((sphere_volume(3).to_f64() - 2.0 * PI * PI).abs() < 1e-12);
    assert!((sphere_volume(4).to_f64() - 8.0 * PI * PI / 3.0).abs() < 1e-12);
}

#[test]
fn symbolic_arithmetic() {
    let a = &SymbolicVolume::sqrt2() * &SymbolicVolume::sqrt2();
    assert_eq!(a.as_rational(), Some(&rat(2, 1)));
    let b = &SymbolicVolume::sqrt3() * &SymbolicVolume::pi_pow(2);
    assert!((b.to_f64() - 3f64.sqrt() * PI * PI).abs() < 1e-12);
    assert_eq!((&b / &b).as_rational(), Some(&rat(1, 1)));
    assert!(SymbolicVolume::one().checked_div(&SymbolicVolume::rational(rat(0, 1))).is_err());
    assert_eq!(SymbolicVolume::sqrt2().pow(5).to_string(), "√2·2^2");
}

#[test]
fn covering_factors() {
    assert_eq!(covering_check().unwrap(), rat(2, 1));
    assert_eq!(covering_check_with(true).unwrap(), rat(1, 1));
    let full = covering_integral(false).to_f64();
    assert!((full / e7_mod_u_volume().to_f64() - 2.0).abs() < 1e-12);
}

#[test]
fn integral_closed_form() {
    assert_eq!(integral_closed(1, 1, 1).unwrap(), rat(1, 6));
    for (a, b, c) in [(1, 1, 1), (2, 3, 4), (1, 5, 2), (3, 3, 3), (9, 9, 9)] {
        assert_eq!(integral_closed(a, b, c).unwrap(), integral_by_monomials(a, b, c), "({a}, {b}, {c})");
    }
    let f8: BigInt = (1..=8).product();
    let f17: BigInt = (1..=17).product();
    assert_eq!(integral_closed(9, 9, 9).unwrap(), BigRational::new(&f8 * &f8, f17 * 27 * 26));
    assert!(matches!(integral_closed(0, 1, 1), Err(Error::InvalidArgument(_))));
}

#[test]
fn tits_integral_value() {
    let i = tits_density_integral();
    assert_eq!(i, rat(2, 243 * 5 * 11 * 169 * 17));
    assert_eq!(render_rational(&i), "2/(3^5·5·11·13^2·17)");
    // The integral of W is 8·I(9,9,9) itself; 2√2 times it is a different number.
    let q = e7forge::euler::tits_density_quadrature(64).unwrap();
    let exact = i.to_f64().unwrap();
    assert!((q / exact - 1.0).abs() < 1e-6);
    assert!((q / (2.0 * 2f64.sqrt() * exact) - 1.0).abs() > 0.5);
}

#[test]
fn quadrature_converges() {
    let exact = integral_closed(9, 9, 9).unwrap().to_f64().unwrap();
    let q64 = integral_quadrature(9, 9, 9, 64).unwrap();
    assert!((q64 / exact - 1.0).abs() < 1e-6);
    let low = integral_closed(2, 3, 4).unwrap().to_f64().unwrap();
    assert!((integral_quadrature(2, 3, 4, 32).unwrap() / low - 1.0).abs() < 1e-12);
    let errs: Vec<f64> = [2, 4, 8, 16].iter().map(|&n| (integral_quadrature(9, 9, 9, n).unwrap() / exact - 1.0).abs()).collect();
    assert!(errs.windows(2).all(|w| w[1] < w[0]), "{errs:?}");
    assert!(integral_quadrature(1, 1, 0, 8).is_err());
    assert!(simplex_quadrature(1.0, 0, |_, _, _| 1.0).is_err());
    assert!((simplex_quadrature(2.0, 4, |_, _, _| 1.0).unwrap() - 8.0 / 6.0).abs() < 1e-14);
}
