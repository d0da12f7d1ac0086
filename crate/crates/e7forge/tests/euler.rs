use std::f64::consts::PI;
use std::sync::OnceLock;

use e7forge::euler::*;
use e7forge::f4e6::F4E6Basis;
use e7forge::generators::{structure_constants, unitarity_residual, Construction, GeneratorSet, StructureConstants};
use e7forge::measures::tits_density_integral;
use e7forge::rep56::{build_56_split, build_56_tits, build_basis_evi, cartan_diagonals};
use e7forge::roots::f4_standard_roots;
use e7forge::Error;
use itertools::Itertools;
use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn tits() -> &'static GeneratorSet {
    static CELL: OnceLock<GeneratorSet> = OnceLock::new();
    CELL.get_or_init(|| build_56_tits(F4E6Basis::standard()))
}

fn split() -> &'static (GeneratorSet, StructureConstants) {
    static CELL: OnceLock<(GeneratorSet, StructureConstants)> = OnceLock::new();
    CELL.get_or_init(|| {
        let s = build_56_split().unwrap();
        let sc = structure_constants(&s, 1e-10).unwrap();
        (s, sc)
    })
}

fn sampler() -> &'static SplitSampler {
    static CELL: OnceLock<SplitSampler> = OnceLock::new();
    CELL.get_or_init(|| SplitSampler::new(&split().0, &split().1).unwrap())
}

fn evi_chart() -> &'static EulerChart {
    static CELL: OnceLock<EulerChart> = OnceLock::new();
    CELL.get_or_init(|| {
        let e = build_basis_evi(tits()).unwrap();
        let sc = structure_constants(&e, 1e-10).unwrap();
        chart_evi(&e, &sc).unwrap()
    })
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// All 126 E7 roots on the unit-length diagonal Cartan directions.
fn e7_roots() -> Vec<Vec<f64>> {
    let d = cartan_diagonals();
    let f = std::f64::consts::FRAC_1_SQRT_2;
    let pairs = (0..8).tuple_combinations().flat_map(|(k, l)| {
        let r: Vec<f64> = (0..7).map(|a| (d[a][k] - d[a][l]) * f).collect();
        [r.iter().map(|x| -x).collect(), r]
    });
    let quads = (0..8).combinations(4).map(|set| (0..7).map(|a| set.iter().map(|&k| d[a][k]).sum::<f64>() * f).collect());
    pairs.chain(quads).collect()
}

fn interior_points(chart: &EulerChart, seed: u64, n: usize) -> Vec<Vec<f64>> {
    let v = chart.vertices().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| chart.sample_uniform(&v, &mut rng)).collect()
}

#[test]
fn tits_chart_vertices_and_density() {
    let c = chart_tits(tits()).unwrap();
    let v = c.vertices().unwrap();
    let want = [[0.0, 0.0, 0.0], [PI, 0.0, 0.0], [PI, PI, 0.0], [PI, PI, PI]];
    for w in want {
        assert!(v.iter().any(|p| p.iter().zip(w).all(|(a, b)| (a - b).abs() < 1e-12)), "{w:?}");
    }
    let (center, r) = c.chebyshev_center().unwrap();
    assert!(r > 0.0 && c.contains(&center, 0.0));
    for p in interior_points(&c, 1, 50) {
        let w = tits_density(p[0], p[1], p[2]);
        assert!((c.density(&p) - w).abs() <= 1e-14 * w.max(1e-300));
        assert!(w > 0.0);
    }
    // Zero on every facet.
    for p in [[1.0, 0.5, 0.0], [2.0, 1.0, 1.0], [2.0, 2.0, 1.0], [PI, 2.0, 1.0]] {
        assert!(c.density(&p) < 1e-15, "{p:?}");
    }
}

#[test]
fn tits_torus_coefficients_invert_the_change_of_variables() {
    // t = T⁻¹·(x, y, z) with x = (√6/3)t₁ - (2/√3)t₃ … read off the forward map.
    let c = chart_tits(tits()).unwrap();
    let p = [2.0, 1.2, 0.4];
    let t = c.torus_coefficients(&p);
    let s2 = 2f64.sqrt();
    let s3 = 3f64.sqrt();
    let s6 = 6f64.sqrt();
    let forward = [
        s6 / 3.0 * t[0] - 2.0 * s3 / 3.0 * t[2],
        s2 / s3 * t[0] + t[1] + t[2] / s3,
        -s2 / s3 * t[0] + t[1] - t[2] / s3,
    ];
    for (f, q) in forward.iter().zip(p) {
        assert!((f - q).abs() < 1e-12);
    }
    assert!(unitarity_residual(&c.torus_element(&p)) < 1e-12);
}

#[test]
fn tits_density_integrates_to_the_closed_form() {
    let exact = tits_density_integral().to_f64().unwrap();
    let q = tits_density_quadrature(64).unwrap();
    assert!((q / exact - 1.0).abs() < 1e-6, "{q} vs {exact}");
}

#[test]
fn split_chart_is_the_fundamental_alcove() {
    let c = &sampler().chart;
    assert_eq!(c.dim(), 7);
    assert_eq!(c.roots.len(), 63);
    assert_eq!(c.inequalities.len(), 8);
    assert_eq!(c.inequalities[7].label, "highest");
    let roots = e7_roots();
    for q in &c.inequalities {
        assert!(roots.iter().any(|r| r.iter().zip(&q.coeffs).all(|(a, b)| (a - b).abs() < 1e-12)), "{}", q.label);
    }
    // Inside the alcove every positive root takes values in (0, π) and the
    // density squared is the product over all 126 roots.
    for p in interior_points(c, 2, 40) {
        for r in &c.roots {
            let v = dot(&r.coeffs, &p);
            assert!(v > 0.0 && v < PI);
        }
        let full: f64 = roots.iter().map(|r| dot(r, &p).sin().abs()).product();
        let f = c.density(&p);
        assert!((f * f - full).abs() <= 1e-9 * full, "{} vs {full}", f * f);
    }
}

#[test]
fn split_torus_element_is_diagonal() {
    let c = &sampler().chart;
    let (p, _) = c.chebyshev_center().unwrap();
    let a = c.torus_algebra(&p);
    let g = c.torus_element(&p);
    for r in 0..56 {
        for col in 0..56 {
            if r == col {
                assert!((g[(r, r)] - a[(r, r)].exp()).norm() < 1e-12);
            } else {
                assert!(a[(r, col)].norm() == 0.0 && g[(r, col)].norm() < 1e-12);
            }
        }
    }
}

#[test]
fn evi_chart_labels_and_density() {
    let c = evi_chart();
    assert_eq!(c.dim(), 4);
    assert_eq!(c.torus_labels, ["L70", "L87", "L104", "L121"]);
    let labels: Vec<&str> = c.inequalities.iter().map(|q| q.label.as_str()).collect();
    assert_eq!(labels, ["alpha1", "alpha2", "alpha3", "alpha4", "beta_max"]);
    assert_eq!(c.inequalities[2].coeffs, [-1.0, 0.0, 0.0, 0.0]);
    // β_max is a long root of the standard F4 system.
    let f4 = f4_standard_roots();
    let bm = &c.inequalities[4].coeffs;
    assert_eq!(bm, &[0.0, 0.0, -1.0, -1.0]);
    assert!(f4.iter().any(|r| r.as_slice() == bm.as_slice()));
    // Squared density from the standard F4 system: long roots once, short roots four times.
    for p in interior_points(c, 3, 40) {
        let full: f64 = f4
            .iter()
            .map(|r| {
                let m = if (dot(r, r) - 2.0).abs() < 1e-12 { 1 } else { 4 };
                dot(r, &p).sin().abs().powi(m)
            })
            .product();
        let f = c.density(&p);
        assert!(f > 0.0 && (f * f - full).abs() <= 1e-9 * full);
        assert!(unitarity_residual(&c.torus_element(&p)) < 1e-12);
    }
}

#[test]
fn assemble_checks_its_inputs() {
    let c = &sampler().chart;
    let id = GroupElement::identity(Construction::Split);
    let zero = vec![0.0; 7];
    let g = assemble(&id, &zero, &id, c).unwrap();
    assert!(max_abs(&(g.matrix - DMatrix::identity(56, 56))) < 1e-14);
    assert!(matches!(assemble(&id, &[0.0; 6], &id, c), Err(Error::DimensionMismatch(_))));
    let tits_id = GroupElement::identity(Construction::Tits);
    assert!(matches!(assemble(&tits_id, &zero, &id, c), Err(Error::DimensionMismatch(_))));
    let mut outside = zero.clone();
    outside[0] = -0.1;
    assert!(matches!(assemble(&id, &outside, &id, c), Err(Error::OutOfRange(_))));
}

#[test]
fn projection_determinant_is_the_density() {
    let (s, _) = split();
    let c = &sampler().chart;
    for p in interior_points(c, 4, 20) {
        let d = projection_determinant(s, c, &p).abs();
        let f = c.density(&p);
        assert!((d - f).abs() <= 1e-8 * f, "{d} vs {f}");
    }
}

#[test]
fn haar_su8_is_special_unitary() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let u = haar_su8(&mut rng);
        assert!(unitarity_residual(&u) < 1e-12);
        assert!((u.determinant() - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }
}

#[test]
fn haar_su8_moments() {
    // E[tr U] = 0 and E[|tr U|²] = 1 for Haar SU(8).
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let n = 4000;
    let tr: Vec<Complex64> = (0..n).map(|_| haar_su8(&mut rng).trace()).collect();
    let mean = tr.iter().sum::<Complex64>() / n as f64;
    let second = tr.iter().map(|z| z.norm_sqr()).sum::<f64>() / n as f64;
    assert!(mean.norm() < 4.0 / (n as f64).sqrt(), "{mean}");
    assert!((second - 1.0).abs() < 0.15, "{second}");
}

#[test]
fn sampler_is_deterministic_and_unitary() {
    let s = sampler();
    assert!(s.envelope > 0.0);
    let (_, max) = s.chart.density_maximum().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..200 {
        let p = s.chart.sample_uniform(&s.vertices, &mut rng);
        assert!(s.chart.density(&p) <= max * (1.0 + 1e-9));
    }
    let a = s.sample_seeded(11, 3).unwrap();
    let b = s.sample_seeded(11, 3).unwrap();
    let c = s.sample_seeded(12, 3).unwrap();
    for ((x, y), z) in a.iter().zip(&b).zip(&c) {
        assert_eq!(x.element, y.element);
        assert_eq!(x.torus, y.torus);
        assert_ne!(x.torus, z.torus);
        assert!(x.element.unitarity_residual() < 1e-8);
        assert!(s.chart.contains(&x.torus, 1e-12));
    }
}

#[test]
fn sample_uniform_stays_inside() {
    let c = &sampler().chart;
    let v = c.vertices().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..500 {
        let p = c.sample_uniform(&v, &mut rng);
        assert!(c.contains(&p, 1e-12));
    }
    let _: f64 = rng.random();
}
