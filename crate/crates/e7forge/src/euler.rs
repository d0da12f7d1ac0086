//! Euler charts `G = B·e^V·U`: torus generators, range polytopes, invariant
//! densities, element assembly and Haar sampling for the split construction.
//!
//! Every chart density has the form `∏_{β>0} |sin β(y)|^{m_β}` over positive
//! (restricted) roots, and every range is a simplex cut out by one double
//! inequality `lower ≤ a·y ≤ upper` per facet.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, StandardNormal};
use serde::Serialize;

use crate::chevalley::Chevalley;
use crate::error::{Error, Result};
use crate::generators::{expm, unitarity_residual, Construction, FloatMatrix, GeneratorSet, StructureConstants};
use crate::measures::simplex_quadrature;
use crate::rep56::{DIM56, SPLIT_CARTAN, SPLIT_SU8};
use crate::roots::{
    classify_e7, extract_roots, lex_positive_reversed, restricted_roots_evi, tits_change_of_variables, tits_density_roots,
    E7_HIGHEST, EVI_BETA_MAX, EVI_SIMPLE, EVI_TORUS, TITS_TORUS,
};

type CMat = DMatrix<Complex64>;

/// Which side of a double inequality carries a facet of the simplex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    Lower,
    Upper,
}

/// `lower ≤ coeffs·y ≤ upper`; only the `active` side is a facet.
#[derive(Clone, Debug, Serialize)]
pub struct Inequality {
    pub label: String,
    pub coeffs: Vec<f64>,
    pub lower: f64,
    pub upper: f64,
    pub active: Side,
}

impl Inequality {
    fn value(&self, y: &[f64]) -> f64 {
        dot(&self.coeffs, y)
    }

    fn bound(&self) -> f64 {
        match self.active {
            Side::Lower => self.lower,
            Side::Upper => self.upper,
        }
    }
}

/// A positive root `β` in chart coordinates with its multiplicity.
#[derive(Clone, Debug, Serialize)]
pub struct ChartRoot {
    pub coeffs: Vec<f64>,
    pub multiplicity: usize,
}

/// Torus, range and density of one Euler chart.
#[derive(Clone, Debug)]
pub struct EulerChart {
    pub construction: Construction,
    /// Labels of the torus generators.
    pub torus_labels: Vec<String>,
    pub torus: Vec<FloatMatrix>,
    /// Names of the chart coordinates.
    pub coordinates: Vec<String>,
    /// Torus coefficients `t = map·y` from chart coordinates `y`.
    pub map: DMatrix<f64>,
    pub roots: Vec<ChartRoot>,
    pub inequalities: Vec<Inequality>,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn lower(label: &str, coeffs: Vec<f64>) -> Inequality {
    Inequality { label: label.into(), coeffs, lower: 0.0, upper: PI, active: Side::Lower }
}

fn upper(label: &str, coeffs: Vec<f64>) -> Inequality {
    Inequality { label: label.into(), coeffs, lower: 0.0, upper: PI, active: Side::Upper }
}

impl EulerChart {
    pub fn dim(&self) -> usize {
        self.coordinates.len()
    }

    /// `∏ |sin β(y)|^{m_β}`.
    pub fn density(&self, y: &[f64]) -> f64 {
        self.roots.iter().map(|r| dot(&r.coeffs, y).sin().abs().powi(r.multiplicity as i32)).product()
    }

    /// `Σ m_β log |sin β(y)|`.
    pub fn log_density(&self, y: &[f64]) -> f64 {
        self.roots.iter().map(|r| r.multiplicity as f64 * dot(&r.coeffs, y).sin().abs().ln()).sum()
    }

    /// Whether `y` satisfies every double inequality within `tol`.
    pub fn contains(&self, y: &[f64], tol: f64) -> bool {
        y.len() == self.dim()
            && self.inequalities.iter().all(|q| {
                let v = q.value(y);
                q.lower - tol <= v && v <= q.upper + tol
            })
    }

    /// Largest violation of the inequalities (zero inside the range).
    pub fn violation(&self, y: &[f64]) -> f64 {
        self.inequalities.iter().map(|q| {
            let v = q.value(y);
            (q.lower - v).max(v - q.upper).max(0.0)
        }).fold(0.0, f64::max)
    }

    /// Torus coefficients of the chart point `y`.
    pub fn torus_coefficients(&self, y: &[f64]) -> Vec<f64> {
        (&self.map * DVector::from_column_slice(y)).iter().copied().collect()
    }

    /// `Σ t_a V_a` for the chart point `y`.
    pub fn torus_algebra(&self, y: &[f64]) -> CMat {
        let mut m = CMat::zeros(DIM56, DIM56);
        for (t, v) in self.torus_coefficients(y).iter().zip(&self.torus) {
            for (r, c, x) in v.iter() {
                m[(r, c)] += x * t;
            }
        }
        m
    }

    /// `exp(Σ t_a V_a)`.
    pub fn torus_element(&self, y: &[f64]) -> CMat {
        expm(&self.torus_algebra(y))
    }

    fn facets(&self) -> (DMatrix<f64>, DVector<f64>) {
        let n = self.inequalities.len();
        let a = DMatrix::from_fn(n, self.dim(), |i, j| self.inequalities[i].coeffs[j]);
        let b = DVector::from_iterator(n, self.inequalities.iter().map(Inequality::bound));
        (a, b)
    }

    /// The `dim + 1` vertices, vertex `k` lying off facet `k`.
    pub fn vertices(&self) -> Result<Vec<Vec<f64>>> {
        let (a, b) = self.facets();
        let n = self.inequalities.len();
        (0..n)
            .map(|drop| {
                let rows: Vec<usize> = (0..n).filter(|&r| r != drop).collect();
                let sub = a.select_rows(&rows);
                let rhs = b.select_rows(&rows);
                sub.lu()
                    .solve(&rhs)
                    .map(|v| v.iter().copied().collect())
                    .ok_or_else(|| Error::InvalidArgument("degenerate chart simplex".into()))
            })
            .collect()
    }

    /// Center and radius of the largest inscribed ball.
    pub fn chebyshev_center(&self) -> Result<(Vec<f64>, f64)> {
        let d = self.dim();
        let n = self.inequalities.len();
        // a·y - r|a| = lower on lower facets, a·y + r|a| = upper on upper facets.
        let mut m = DMatrix::zeros(n, d + 1);
        let mut rhs = DVector::zeros(n);
        for (i, q) in self.inequalities.iter().enumerate() {
            for j in 0..d {
                m[(i, j)] = q.coeffs[j];
            }
            m[(i, d)] = match q.active {
                Side::Lower => -norm(&q.coeffs),
                Side::Upper => norm(&q.coeffs),
            };
            rhs[i] = q.bound();
        }
        let sol = m
            .lu()
            .solve(&rhs)
            .ok_or_else(|| Error::InvalidArgument("degenerate chart simplex".into()))?;
        Ok((sol.rows(0, d).iter().copied().collect(), sol[d]))
    }

    /// A uniform point of the range simplex.
    pub fn sample_uniform(&self, vertices: &[Vec<f64>], rng: &mut impl Rng) -> Vec<f64> {
        let w: Vec<f64> = (0..vertices.len()).map(|_| rng.sample::<f64, _>(Exp1)).collect();
        let total: f64 = w.iter().sum();
        let mut y = vec![0.0; self.dim()];
        for (wk, v) in w.iter().zip(vertices) {
            for (yi, vi) in y.iter_mut().zip(v) {
                *yi += wk / total * vi;
            }
        }
        y
    }

    /// Maximizer and maximum of the density, by damped Newton on the concave
    /// `log_density` started at the Chebyshev center.
    pub fn density_maximum(&self) -> Result<(Vec<f64>, f64)> {
        let d = self.dim();
        let (mut y, _) = self.chebyshev_center()?;
        let mut value = self.log_density(&y);
        for _ in 0..200 {
            let mut g = DVector::<f64>::zeros(d);
            let mut h = DMatrix::<f64>::zeros(d, d);
            for r in &self.roots {
                let t = dot(&r.coeffs, &y);
                let m = r.multiplicity as f64;
                let b = DVector::from_column_slice(&r.coeffs);
                g += &b * (m / t.tan());
                h -= &b * b.transpose() * (m / t.sin().powi(2));
            }
            if g.norm() < 1e-13 {
                break;
            }
            let step = (-h).cholesky().map(|c| c.solve(&g)).unwrap_or_else(|| g.clone());
            let mut s = 1.0;
            loop {
                let trial: Vec<f64> = y.iter().zip(step.iter()).map(|(a, b)| a + s * b).collect();
                let inside = self.contains(&trial, 0.0) && self.roots.iter().all(|r| dot(&r.coeffs, &trial).sin() > 0.0);
                if inside {
                    let v = self.log_density(&trial);
                    if v >= value {
                        y = trial;
                        value = v;
                        break;
                    }
                }
                s *= 0.5;
                if s < 1e-12 {
                    return Ok((y, value.exp()));
                }
            }
        }
        Ok((y, value.exp()))
    }
}

/// Tits chart in `(x, y, z)` with `0 ≤ z ≤ y ≤ x ≤ π`.
///
/// The torus coefficients along `Y₂, Y₈₂, Y₉₉` are `(x₅₂, x₅₃, x₅₄)`.
pub fn chart_tits(tits: &GeneratorSet) -> Result<EulerChart> {
    if tits.construction != Construction::Tits || tits.rep_dim != DIM56 {
        return Err(Error::WrongType("chart_tits expects the tits 56".into()));
    }
    let t = tits_change_of_variables();
    let inv = nalgebra::Matrix3::from_fn(|i, j| t[i][j])
        .try_inverse()
        .ok_or_else(|| Error::InvalidArgument("singular change of variables".into()))?;
    let map = DMatrix::from_fn(3, 3, |i, j| inv[(i, j)]);
    let torus_idx: Vec<usize> = TITS_TORUS.iter().map(|k| k - 1).collect();
    Ok(EulerChart {
        construction: Construction::Tits,
        torus_labels: torus_idx.iter().map(|&k| tits.labels[k].clone()).collect(),
        torus: torus_idx.iter().map(|&k| tits.mats[k].clone()).collect(),
        coordinates: vec!["x".into(), "y".into(), "z".into()],
        map,
        roots: tits_density_roots().into_iter().map(|(c, m)| ChartRoot { coeffs: c.to_vec(), multiplicity: m }).collect(),
        inequalities: vec![
            lower("z", vec![0.0, 0.0, 1.0]),
            lower("y - z", vec![0.0, 1.0, -1.0]),
            lower("x - y", vec![1.0, -1.0, 0.0]),
            upper("x", vec![1.0, 0.0, 0.0]),
        ],
    })
}

/// `W(x, y, z)` of the tits chart, as a plain function.
pub fn tits_density(x: f64, y: f64, z: f64) -> f64 {
    let h = |a: f64| a.sin().powi(8);
    x.sin() * y.sin() * z.sin()
        * h((x - y) / 2.0)
        * h((x + y) / 2.0)
        * h((x - z) / 2.0)
        * h((x + z) / 2.0)
        * h((y - z) / 2.0)
        * h((y + z) / 2.0)
}

/// `∫ W dx dy dz` over the tits range by Gauss–Legendre with `n` nodes.
pub fn tits_density_quadrature(n: usize) -> Result<f64> {
    simplex_quadrature(PI, n, tits_density)
}

fn positive_roots(rd: &crate::roots::RootDatum) -> Vec<ChartRoot> {
    rd.positive().map(|(_, r)| ChartRoot { coeffs: r.coeffs.clone(), multiplicity: r.multiplicity }).collect()
}

/// Split chart on `D₁ … D₇`: 63 positive roots, seven simple-root
/// inequalities and the highest root `(2,2,3,4,3,2,1)` below `π`.
pub fn chart_split(split: &GeneratorSet, sc: &StructureConstants) -> Result<EulerChart> {
    if split.construction != Construction::Split {
        return Err(Error::WrongType("chart_split expects the split 56".into()));
    }
    let cartan: Vec<usize> = SPLIT_CARTAN.collect();
    let rd = extract_roots(sc, &cartan)?.with_positivity(lex_positive_reversed);
    let cl = classify_e7(&rd)?;
    if !cl.is_e7() {
        return Err(Error::WrongType("split roots do not classify as E7".into()));
    }
    // classify_e7 orders the names; recover the covectors in that order.
    let simple: Vec<Vec<f64>> = cl
        .simple_names
        .iter()
        .map(|n| crate::roots::split_root_covector(n).expect("named simple root"))
        .collect();
    let highest: Vec<f64> =
        (0..7).map(|a| simple.iter().zip(E7_HIGHEST).map(|(s, k)| k as f64 * s[a]).sum()).collect();
    let mut inequalities: Vec<Inequality> =
        cl.simple_names.iter().zip(&simple).map(|(n, s)| lower(n, s.clone())).collect();
    inequalities.push(upper("highest", highest));
    Ok(EulerChart {
        construction: Construction::Split,
        torus_labels: cartan.iter().map(|&k| split.labels[k].clone()).collect(),
        torus: cartan.iter().map(|&k| split.mats[k].clone()).collect(),
        coordinates: (1..=7).map(|k| format!("y{k}")).collect(),
        map: DMatrix::identity(7, 7),
        roots: positive_roots(&rd),
        inequalities,
    })
}

/// EVI chart on `H₄ = {L₇₀, L₈₇, L₁₀₄, L₁₂₁}`: 24 positive restricted roots
/// with multiplicities 1 and 4, four simple-root inequalities and `β_max < π`.
pub fn chart_evi(evi: &GeneratorSet, sc: &StructureConstants) -> Result<EulerChart> {
    if evi.construction != Construction::Evi {
        return Err(Error::WrongType("chart_evi expects the evi 56".into()));
    }
    let rd = restricted_roots_evi(sc)?;
    if rd.positive_count() != 24 {
        return Err(Error::WrongType(format!("expected 24 positive restricted roots, found {}", rd.positive_count())));
    }
    let beta_max: Vec<f64> =
        (0..4).map(|a| EVI_SIMPLE.iter().zip(EVI_BETA_MAX).map(|(s, k)| k as f64 * s[a]).sum()).collect();
    let mut inequalities: Vec<Inequality> =
        EVI_SIMPLE.iter().enumerate().map(|(k, s)| lower(&format!("alpha{}", k + 1), s.to_vec())).collect();
    inequalities.push(upper("beta_max", beta_max));
    let torus_idx: Vec<usize> = EVI_TORUS.iter().map(|k| k - 1).collect();
    Ok(EulerChart {
        construction: Construction::Evi,
        torus_labels: torus_idx.iter().map(|&k| evi.labels[k].clone()).collect(),
        torus: torus_idx.iter().map(|&k| evi.mats[k].clone()).collect(),
        coordinates: (1..=4).map(|k| format!("y{k}")).collect(),
        map: DMatrix::identity(4, 4),
        roots: positive_roots(&rd),
        inequalities,
    })
}

/// A 56×56 group element of one construction.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupElement {
    pub construction: Construction,
    pub matrix: CMat,
}

impl GroupElement {
    pub fn identity(construction: Construction) -> Self {
        Self { construction, matrix: CMat::identity(DIM56, DIM56) }
    }

    pub fn unitarity_residual(&self) -> f64 {
        unitarity_residual(&self.matrix)
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }
}

/// `B·exp(Σ t_a V_a)·U` for a chart point `y`.
pub fn assemble(b: &GroupElement, y: &[f64], u: &GroupElement, chart: &EulerChart) -> Result<GroupElement> {
    for g in [b, u] {
        if g.construction != chart.construction || g.matrix.nrows() != DIM56 || g.matrix.ncols() != DIM56 {
            return Err(Error::DimensionMismatch(format!("expected a {} 56×56 element", chart.construction)));
        }
    }
    if y.len() != chart.dim() {
        return Err(Error::DimensionMismatch(format!("expected {} coordinates, got {}", chart.dim(), y.len())));
    }
    if !chart.contains(y, 1e-12) {
        return Err(Error::OutOfRange(format!("violation {:e}", chart.violation(y))));
    }
    let matrix = &b.matrix * chart.torus_element(y) * &u.matrix;
    Ok(GroupElement { construction: chart.construction, matrix })
}

/// `det[Π∘Ad_{e^{-V}}]` from the compact `su(8)` to its orthogonal complement
/// `𝔱` (the generators after `D₁ … D₇`), for the split chart point `y`.
pub fn projection_determinant(split: &GeneratorSet, chart: &EulerChart, y: &[f64]) -> f64 {
    let e = expm(&(chart.torus_algebra(y) * Complex64::new(-1.0, 0.0)));
    let e_inv = e.adjoint();
    let conj: Vec<CMat> = SPLIT_SU8.map(|k| &e * split.dense(k) * &e_inv).collect();
    let comp: Vec<usize> = (SPLIT_CARTAN.end..split.len()).collect();
    let m = DMatrix::from_fn(comp.len(), conj.len(), |i, j| {
        let t = &split.mats[comp[i]];
        let tr: Complex64 = t.iter().map(|(r, c, v)| v * conj[j][(c, r)]).sum();
        -tr.re / 12.0
    });
    m.determinant()
}

/// A Haar-distributed element of `SU(8)`: QR of a complex Ginibre matrix,
/// phases moved into `Q`, then scaled by `det^{-1/8}`.
pub fn haar_su8(rng: &mut impl Rng) -> CMat {
    let z = CMat::from_fn(8, 8, |_, _| {
        Complex64::new(rng.sample::<f64, _>(StandardNormal), rng.sample::<f64, _>(StandardNormal))
    });
    let qr = z.qr();
    let mut q = qr.q();
    let r = qr.r();
    for k in 0..8 {
        let d = r[(k, k)];
        let ph = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..8 {
            q[(i, k)] *= ph;
        }
    }
    let det = q.determinant();
    q * Complex64::from_polar(1.0, -det.arg() / 8.0)
}

/// One Haar draw of the split construction.
#[derive(Clone, Debug)]
pub struct HaarSample {
    pub element: GroupElement,
    pub torus: Vec<f64>,
    /// Rejection-sampling proposals used for the torus coordinates.
    pub proposals: usize,
}

/// Haar sampler `g = Φ(u₁)·e^{V(y)}·Φ(u₂)` with `u_i` Haar on `SU(8)` and
/// `y` drawn from `|f|` on the split range.
#[derive(Clone, Debug)]
pub struct SplitSampler {
    pub chart: EulerChart,
    pub chevalley: Chevalley,
    pub vertices: Vec<Vec<f64>>,
    /// Rejection envelope `sup |f|`, slightly inflated.
    pub envelope: f64,
}

impl SplitSampler {
    pub fn new(split: &GeneratorSet, sc: &StructureConstants) -> Result<Self> {
        let chart = chart_split(split, sc)?;
        let chevalley = Chevalley::new(split, sc)?;
        let vertices = chart.vertices()?;
        let (_, max) = chart.density_maximum()?;
        Ok(Self { chart, chevalley, vertices, envelope: max * (1.0 + 1e-9) })
    }

    /// Torus coordinates with density proportional to `|f|`.
    pub fn sample_torus(&self, rng: &mut impl Rng) -> (Vec<f64>, usize) {
        let mut proposals = 0;
        loop {
            proposals += 1;
            let y = self.chart.sample_uniform(&self.vertices, rng);
            if rng.random::<f64>() * self.envelope <= self.chart.density(&y) {
                return (y, proposals);
            }
        }
    }

    pub fn sample(&self, rng: &mut impl Rng) -> Result<HaarSample> {
        let (y, proposals) = self.sample_torus(rng);
        let left = self.chevalley.group(&haar_su8(rng))?;
        let right = self.chevalley.group(&haar_su8(rng))?;
        let b = GroupElement { construction: Construction::Split, matrix: left };
        let u = GroupElement { construction: Construction::Split, matrix: right };
        let element = assemble(&b, &y, &u, &self.chart)?;
        Ok(HaarSample { element, torus: y, proposals })
    }

    /// `n` draws from a ChaCha8 stream seeded with `seed`.
    pub fn sample_seeded(&self, seed: u64, n: usize) -> Result<Vec<HaarSample>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n).map(|_| self.sample(&mut rng)).collect()
    }
}
