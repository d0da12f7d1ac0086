//! Root systems: the E7 roots of the split Cartan subalgebra, the restricted
//! F4 system of the EVI torus, the commutant of that torus, and the restricted
//! roots behind the tits density.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::generators::StructureConstants;
use crate::rep56::cartan_diagonals;

/// Clustering tolerance for merging eigencovectors into one root.
pub const CLUSTER_TOL: f64 = 1e-7;

/// One root (or restricted root) with its multiplicity.
#[derive(Clone, Debug, Serialize)]
pub struct Root {
    /// Values on the Cartan generators, in their given order.
    pub coeffs: Vec<f64>,
    pub multiplicity: usize,
    pub positive: bool,
}

impl Root {
    pub fn norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|x| x * x).sum()
    }
}

/// Nonzero roots of `ad` restricted to a commuting family.
#[derive(Clone, Debug, Serialize)]
pub struct RootDatum {
    pub rank: usize,
    pub roots: Vec<Root>,
    /// Dimension of the common kernel (Cartan plus centralizer).
    pub zero_multiplicity: usize,
    /// Indices into `roots` of the simple roots, in positivity-derived order.
    pub simple: Vec<usize>,
    /// Index of the positive root of largest height.
    pub highest: Option<usize>,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).abs() < tol)
}

/// Positive when the last nonzero coordinate is positive.
pub fn lex_positive_reversed(c: &[f64]) -> bool {
    c.iter().rev().find(|x| x.abs() > CLUSTER_TOL).is_some_and(|x| *x > 0.0)
}

impl RootDatum {
    pub fn positive(&self) -> impl Iterator<Item = (usize, &Root)> {
        self.roots.iter().enumerate().filter(|(_, r)| r.positive)
    }

    pub fn positive_count(&self) -> usize {
        self.positive().count()
    }

    /// `Σ_{β>0} m_β`.
    pub fn positive_multiplicity(&self) -> usize {
        self.positive().map(|(_, r)| r.multiplicity).sum()
    }

    pub fn find(&self, coeffs: &[f64]) -> Option<usize> {
        self.roots.iter().position(|r| close(&r.coeffs, coeffs, 1e-6))
    }

    /// Recomputes positivity with `pos`, then the simple roots (positive roots
    /// that are not sums of two positive roots) and the highest root.
    pub fn with_positivity(mut self, pos: impl Fn(&[f64]) -> bool) -> Self {
        for r in &mut self.roots {
            r.positive = pos(&r.coeffs);
        }
        let pos_idx: Vec<usize> = self.positive().map(|(k, _)| k).collect();
        let is_sum = |k: usize| {
            pos_idx.iter().any(|&a| {
                pos_idx.iter().any(|&b| {
                    let s: Vec<f64> =
                        self.roots[a].coeffs.iter().zip(&self.roots[b].coeffs).map(|(x, y)| x + y).collect();
                    close(&s, &self.roots[k].coeffs, 1e-6)
                })
            })
        };
        self.simple = pos_idx.iter().copied().filter(|&k| !is_sum(k)).collect();
        self.highest = self.highest_by_height();
        self
    }

    fn highest_by_height(&self) -> Option<usize> {
        let s: Vec<&[f64]> = self.simple.iter().map(|&k| self.roots[k].coeffs.as_slice()).collect();
        if s.len() != self.rank {
            return None;
        }
        let coords = |r: &[f64]| solve_in_basis(&s, r);
        self.positive()
            .filter_map(|(k, r)| coords(&r.coeffs).map(|c| (k, c.iter().sum::<f64>())))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .map(|(k, _)| k)
    }
}

/// Coordinates of `r` in the basis `s` (least squares; `None` if singular).
pub fn solve_in_basis(s: &[&[f64]], r: &[f64]) -> Option<Vec<f64>> {
    let n = r.len();
    let m = DMatrix::from_fn(n, s.len(), |i, j| s[j][i]);
    let b = DVector::from_column_slice(r);
    let x = m.clone().svd(true, true).solve(&b, 1e-12).ok()?;
    ((&m * &x - &b).norm() < 1e-8).then(|| x.iter().copied().collect())
}

/// Generic weights for the Cartan combination used to split eigenspaces.
fn generic_weights(rank: usize) -> Vec<f64> {
    // Square roots of distinct primes are linearly independent over Q.
    [2.0f64, 3.0, 5.0, 7.0, 11.0, 13.0, 17.0, 19.0].iter().take(rank).map(|p| p.sqrt() / 10.0 + 0.1).collect()
}

/// Simultaneous eigencovectors of `-i·ad(h_k)` over a commuting family
/// (0-based indices into the structure constants).
pub fn extract_roots(sc: &StructureConstants, cartan: &[usize]) -> Result<RootDatum> {
    let worst = cartan
        .iter()
        .flat_map(|&a| cartan.iter().map(move |&b| (a, b)))
        .map(|(a, b)| sc.row(a, b).iter().map(|(_, v)| v.norm()).fold(0.0, f64::max))
        .fold(0.0, f64::max);
    if worst > 1e-10 {
        return Err(Error::NotCommuting(worst));
    }
    let mi = Complex64::new(0.0, -1.0);
    let h: Vec<DMatrix<Complex64>> = cartan.iter().map(|&a| sc.ad(a) * mi).collect();
    let herm = h.iter().map(|m| (m - m.adjoint()).iter().map(|v| v.norm()).fold(0.0, f64::max)).fold(0.0, f64::max);
    if herm > 1e-8 {
        return Err(Error::NotDiagonalizable(herm));
    }
    let w = generic_weights(cartan.len());
    let mut comb = DMatrix::<Complex64>::zeros(sc.n, sc.n);
    for (m, t) in h.iter().zip(&w) {
        comb += m * Complex64::new(*t, 0.0);
    }
    let comb = (&comb + comb.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = comb.symmetric_eigen();
    let covectors: Vec<Result<Vec<f64>>> = (0..sc.n)
        .into_par_iter()
        .map(|k| {
            let v = eig.eigenvectors.column(k).into_owned();
            let mut beta = Vec::with_capacity(h.len());
            for m in &h {
                let hv = m * &v;
                let b = v.dotc(&hv).re;
                let res = (&hv - &v * Complex64::new(b, 0.0)).norm();
                if res > 1e-8 {
                    return Err(Error::NotDiagonalizable(res));
                }
                beta.push(b);
            }
            Ok(beta)
        })
        .collect();
    let mut roots: Vec<Root> = Vec::new();
    let mut zero = 0;
    for c in covectors {
        let c = c?;
        if c.iter().all(|x| x.abs() < CLUSTER_TOL) {
            zero += 1;
            continue;
        }
        match roots.iter_mut().find(|r| close(&r.coeffs, &c, CLUSTER_TOL)) {
            Some(r) => r.multiplicity += 1,
            None => roots.push(Root { coeffs: c, multiplicity: 1, positive: false }),
        }
    }
    // Report the cluster representatives with snapped coordinates.
    for r in &mut roots {
        r.coeffs.iter_mut().for_each(|x| {
            if x.abs() < CLUSTER_TOL {
                *x = 0.0;
            }
        });
    }
    roots.sort_by(|a, b| {
        a.coeffs.iter().rev().zip(b.coeffs.iter().rev()).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal)
    });
    let rd = RootDatum { rank: cartan.len(), roots, zero_multiplicity: zero, simple: Vec::new(), highest: None };
    Ok(rd.with_positivity(lex_positive_reversed))
}

/// Names of the E7 simple roots in Bourbaki order.
pub const E7_SIMPLE_NAMES: [&str; 7] = ["b45", "b12", "b34", "b23", "b3458", "b78", "b67"];
/// Coefficients of the highest E7 root in that basis.
pub const E7_HIGHEST: [i64; 7] = [2, 2, 3, 4, 3, 2, 1];

/// E7 Cartan matrix in Bourbaki order.
pub fn e7_cartan_matrix() -> [[i64; 7]; 7] {
    let mut a = [[0i64; 7]; 7];
    for (k, row) in a.iter_mut().enumerate() {
        row[k] = 2;
    }
    for (i, j) in [(0, 2), (2, 3), (1, 3), (3, 4), (4, 5), (5, 6)] {
        a[i][j] = -1;
        a[j][i] = -1;
    }
    a
}

/// Covector of a named split root on the unit-length Cartan generators.
///
/// `bkl` is `(d_k - d_l)/√2` and `bijkl` is `(d_i + d_j + d_k + d_l)/√2`,
/// where `d_k` is the `k`-th diagonal entry of the `D_α` before the 56 is
/// rescaled to unit length (which divides each `D_α` by √2).
pub fn split_root_covector(name: &str) -> Option<Vec<f64>> {
    let digits: Vec<usize> = name.strip_prefix('b')?.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect::<Option<_>>()?;
    if digits.iter().any(|&d| !(1..=8).contains(&d)) {
        return None;
    }
    let d = cartan_diagonals();
    let f = std::f64::consts::FRAC_1_SQRT_2;
    match digits.as_slice() {
        [k, l] => Some((0..7).map(|a| (d[a][k - 1] - d[a][l - 1]) * f).collect()),
        [_, _, _, _] => Some((0..7).map(|a| digits.iter().map(|&k| d[a][k - 1]).sum::<f64>() * f).collect()),
        _ => None,
    }
}

/// Classification of the split E7 root system.
#[derive(Clone, Debug, Serialize)]
pub struct E7Classification {
    pub root_count: usize,
    pub positive_count: usize,
    /// Largest `|‖β‖² - 2|`.
    pub norm_deviation: f64,
    pub all_multiplicity_one: bool,
    /// Name of each computed simple root (in Bourbaki order when all match).
    pub simple_names: Vec<String>,
    pub cartan_matrix: Vec<Vec<i64>>,
    pub highest_root: Vec<i64>,
    /// Largest `|⟨α_i, λ^j⟩ - δ_i^j|` for the reconstructed fundamental weights.
    pub weight_duality_residual: f64,
}

impl E7Classification {
    pub fn is_e7(&self) -> bool {
        self.root_count == 126
            && self.positive_count == 63
            && self.norm_deviation < 1e-9
            && self.all_multiplicity_one
            && self.simple_names.iter().map(String::as_str).eq(E7_SIMPLE_NAMES)
            && self.cartan_matrix.iter().map(|r| r.as_slice()).eq(e7_cartan_matrix().iter().map(|r| r.as_slice()))
            && self.highest_root == E7_HIGHEST
    }
}

fn round_int(x: f64) -> Option<i64> {
    ((x - x.round()).abs() < 1e-6).then_some(x.round() as i64)
}

/// Identifies the simple roots of the split system with the named roots,
/// orders them in Bourbaki order and checks Cartan matrix and highest root.
pub fn classify_e7(rd: &RootDatum) -> Result<E7Classification> {
    if rd.roots.len() != 126 {
        return Err(Error::WrongType(format!("expected 126 roots, found {}", rd.roots.len())));
    }
    let norm_deviation = rd.roots.iter().map(|r| (r.norm_sq() - 2.0).abs()).fold(0.0, f64::max);
    let named: Vec<(String, Vec<f64>)> =
        E7_SIMPLE_NAMES.iter().map(|n| (n.to_string(), split_root_covector(n).expect("valid name"))).collect();
    let mut order: Vec<(String, usize)> = Vec::new();
    for &k in &rd.simple {
        let name = named
            .iter()
            .find(|(_, c)| close(c, &rd.roots[k].coeffs, 1e-6))
            .map_or_else(|| "?".to_string(), |(n, _)| n.clone());
        order.push((name, k));
    }
    order.sort_by_key(|(n, _)| E7_SIMPLE_NAMES.iter().position(|m| m == n).unwrap_or(usize::MAX));
    let simple: Vec<&[f64]> = order.iter().map(|(_, k)| rd.roots[*k].coeffs.as_slice()).collect();
    let cartan_matrix: Vec<Vec<i64>> = simple
        .iter()
        .map(|a| simple.iter().map(|b| round_int(2.0 * dot(a, b) / dot(b, b)).unwrap_or(i64::MIN)).collect())
        .collect();
    let highest_root = rd
        .highest
        .and_then(|h| solve_in_basis(&simple, &rd.roots[h].coeffs))
        .map(|c| c.iter().map(|x| round_int(*x).unwrap_or(i64::MIN)).collect())
        .unwrap_or_default();
    // λ^j with 2(α_i, λ^j)/(α_i, α_i) = δ_i^j.
    let n = simple.len();
    let mut weight_duality_residual = f64::INFINITY;
    if n == rd.rank {
        let a = DMatrix::from_fn(n, n, |i, j| 2.0 * simple[i][j] / dot(simple[i], simple[i]));
        if let Some(weights) = a.clone().try_inverse() {
            weight_duality_residual = (&a * weights - DMatrix::<f64>::identity(n, n)).abs().max();
        }
    }
    Ok(E7Classification {
        root_count: rd.roots.len(),
        positive_count: rd.positive_count(),
        norm_deviation,
        all_multiplicity_one: rd.roots.iter().all(|r| r.multiplicity == 1),
        simple_names: order.into_iter().map(|(n, _)| n).collect(),
        cartan_matrix,
        highest_root,
        weight_duality_residual,
    })
}

/// EVI torus `H₄` (1-based indices into the EVI basis).
pub const EVI_TORUS: [usize; 4] = [70, 87, 104, 121];

/// Simple restricted roots `α₁ … α₄` of the EVI system.
pub const EVI_SIMPLE: [[f64; 4]; 4] =
    [[0.5, -0.5, -0.5, 0.5], [0.0, 0.0, 1.0, -1.0], [-1.0, 0.0, 0.0, 0.0], [0.0, 1.0, -1.0, 0.0]];
/// `β_max` in the basis `α₁ … α₄`.
pub const EVI_BETA_MAX: [i64; 4] = [4, 3, 2, 2];
/// Cartan matrix `2(α_i, α_j)/(α_j, α_j)` of [`EVI_SIMPLE`]: the F4 diagram
/// `α₄ - α₂ ⇒ α₁ - α₃`.
pub const EVI_CARTAN_MATRIX: [[i64; 4]; 4] = [[2, -1, -1, 0], [-2, 2, 0, -1], [-1, 0, 2, 0], [0, -1, 0, 2]];

/// Restricted roots of the EVI torus, with positivity fixed by
/// [`EVI_SIMPLE`].
pub fn restricted_roots_evi(sc: &StructureConstants) -> Result<RootDatum> {
    let cartan: Vec<usize> = EVI_TORUS.iter().map(|k| k - 1).collect();
    let rd = extract_roots(sc, &cartan)?;
    let basis: Vec<&[f64]> = EVI_SIMPLE.iter().map(|r| r.as_slice()).collect();
    Ok(rd.with_positivity(|c| {
        solve_in_basis(&basis, c).is_some_and(|x| x.iter().all(|v| *v > -1e-6) && x.iter().any(|v| *v > 1e-6))
    }))
}

/// Standard F4 roots `±e_i±e_j`, `±e_i`, `½(±1,±1,±1,±1)`.
pub fn f4_standard_roots() -> Vec<[f64; 4]> {
    let mut out = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            for (si, sj) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
                let mut r = [0.0; 4];
                r[i] = si;
                r[j] = sj;
                out.push(r);
            }
        }
        for s in [1.0, -1.0] {
            let mut r = [0.0; 4];
            r[i] = s;
            out.push(r);
        }
    }
    for m in 0..16u32 {
        out.push(std::array::from_fn(|k| if m >> k & 1 == 1 { -0.5 } else { 0.5 }));
    }
    out
}

/// Classification of the EVI restricted system.
#[derive(Clone, Debug, Serialize)]
pub struct F4Classification {
    pub root_count: usize,
    pub positive_count: usize,
    pub long_positive: usize,
    pub short_positive: usize,
    /// Positive roots of norm √2 all have multiplicity 1.
    pub long_multiplicity_one: bool,
    /// Positive roots of norm 1 all have multiplicity 4.
    pub short_multiplicity_four: bool,
    pub positive_multiplicity: usize,
    pub matches_standard_set: bool,
    /// `α₁ … α₄` are exactly the computed simple roots.
    pub simple_roots_match: bool,
    pub cartan_matrix: Vec<Vec<i64>>,
    pub beta_max: Vec<i64>,
    pub zero_multiplicity: usize,
}

impl F4Classification {
    pub fn is_f4(&self) -> bool {
        self.root_count == 48
            && self.positive_count == 24
            && self.long_positive == 12
            && self.short_positive == 12
            && self.long_multiplicity_one
            && self.short_multiplicity_four
            && self.positive_multiplicity == 60
            && self.matches_standard_set
            && self.simple_roots_match
            && self.cartan_matrix.iter().map(|r| r.as_slice()).eq(EVI_CARTAN_MATRIX.iter().map(|r| r.as_slice()))
            && self.beta_max == EVI_BETA_MAX
    }
}

pub fn classify_f4(rd: &RootDatum) -> F4Classification {
    let std = f4_standard_roots();
    let matches_standard_set = rd.roots.len() == std.len() && std.iter().all(|r| rd.find(r).is_some());
    let pos: Vec<&Root> = rd.positive().map(|(_, r)| r).collect();
    let is_long = |r: &Root| (r.norm_sq() - 2.0).abs() < 1e-6;
    let is_short = |r: &Root| (r.norm_sq() - 1.0).abs() < 1e-6;
    let simple_roots_match = rd.simple.len() == 4
        && EVI_SIMPLE.iter().all(|a| rd.simple.iter().any(|&k| close(&rd.roots[k].coeffs, a, 1e-6)));
    let cartan_matrix = EVI_SIMPLE
        .iter()
        .map(|a| EVI_SIMPLE.iter().map(|b| round_int(2.0 * dot(a, b) / dot(b, b)).unwrap_or(i64::MIN)).collect())
        .collect();
    let basis: Vec<&[f64]> = EVI_SIMPLE.iter().map(|r| r.as_slice()).collect();
    let beta_max = rd
        .highest
        .and_then(|h| solve_in_basis(&basis, &rd.roots[h].coeffs))
        .map(|c| c.iter().map(|x| round_int(*x).unwrap_or(i64::MIN)).collect())
        .unwrap_or_default();
    F4Classification {
        root_count: rd.roots.len(),
        positive_count: pos.len(),
        long_positive: pos.iter().filter(|r| is_long(r)).count(),
        short_positive: pos.iter().filter(|r| is_short(r)).count(),
        long_multiplicity_one: pos.iter().filter(|r| is_long(r)).all(|r| r.multiplicity == 1),
        short_multiplicity_four: pos.iter().filter(|r| is_short(r)).all(|r| r.multiplicity == 4),
        positive_multiplicity: rd.positive_multiplicity(),
        matches_standard_set,
        simple_roots_match,
        cartan_matrix,
        beta_max,
        zero_multiplicity: rd.zero_multiplicity,
    }
}

/// Bracket of two coefficient vectors.
pub fn bracket_vec(sc: &StructureConstants, u: &[f64], v: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; sc.n];
    for (a, &x) in u.iter().enumerate() {
        if x == 0.0 {
            continue;
        }
        for (b, &y) in v.iter().enumerate() {
            if y == 0.0 {
                continue;
            }
            for &(c, w) in sc.row(a, b) {
                out[c] += x * y * w.re;
            }
        }
    }
    out
}

/// Commutant of the EVI torus inside `spin(12) ⊕ su(2)`.
#[derive(Clone, Debug, Serialize)]
pub struct Commutant {
    /// Orthonormal kernel basis as coefficient vectors over `L₁ … L₁₃₃`.
    pub basis: Vec<Vec<f64>>,
    /// Orthonormal basis of the 3-dimensional ideal spanned by `M₇, M₈, M₉`.
    pub ideal3: Vec<Vec<f64>>,
    /// Orthonormal basis of its orthogonal complement in the commutant.
    pub ideal6: Vec<Vec<f64>>,
    /// Distances of `M₁ … M₉` from the kernel.
    pub m_distances: Vec<f64>,
    /// Largest component of `[k₆, k₃]`.
    pub cross_bracket: f64,
    /// Largest component of `[k₃,k₃]` or `[k₆,k₆]` leaving its ideal.
    pub ideal_leak: f64,
    /// Largest eigenvalue of the trace form on the commutant (negative when compact).
    pub killing_max: f64,
    /// Dimensions of the centroids of `k₆` and `k₃` (2 and 1 for `so(4)` and `su(2)`).
    pub centroid_dims: (usize, usize),
}

impl Commutant {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_so4_plus_su2(&self) -> bool {
        self.dim() == 9
            && self.ideal3.len() == 3
            && self.ideal6.len() == 6
            && self.cross_bracket < 1e-9
            && self.ideal_leak < 1e-9
            && self.killing_max < 0.0
            && self.centroid_dims == (2, 1)
            && self.m_distances[6..].iter().all(|d| *d < 1e-9)
    }
}

fn unit(n: usize, terms: &[(usize, f64)]) -> Vec<f64> {
    let mut v = vec![0.0; n];
    for &(k, x) in terms {
        v[k - 1] += x;
    }
    v
}

/// `M₁ … M₉` as coefficient vectors over `L₁ … L₁₃₃`.
pub fn commutant_reference(n: usize) -> Vec<Vec<f64>> {
    let h = 0.5;
    let r = std::f64::consts::FRAC_1_SQRT_2;
    vec![
        unit(n, &[(1, h), (9, -h), (21, h), (25, -h)]),
        unit(n, &[(2, h), (8, h), (14, h), (28, -h)]),
        unit(n, &[(3, h), (7, -h), (19, h), (27, h)]),
        unit(n, &[(4, h), (13, -h), (20, h), (23, h)]),
        unit(n, &[(5, h), (15, -h), (18, h), (22, -h)]),
        unit(n, &[(10, h), (12, -h), (16, h), (24, h)]),
        unit(n, &[(45, r), (46, r)]),
        unit(n, &[(49, 1.0)]),
        unit(n, &[(50, 1.0)]),
    ]
}

fn orthonormalize(vs: &[Vec<f64>], tol: f64) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::new();
    for v in vs {
        let mut w = v.clone();
        for u in &out {
            let p = dot(u, &w);
            w.iter_mut().zip(u).for_each(|(x, y)| *x -= p * y);
        }
        let n = dot(&w, &w).sqrt();
        if n > tol {
            out.push(w.into_iter().map(|x| x / n).collect());
        }
    }
    out
}

fn project_out(v: &[f64], basis: &[Vec<f64>]) -> Vec<f64> {
    let mut w = v.to_vec();
    for u in basis {
        let p = dot(u, &w);
        w.iter_mut().zip(u).for_each(|(x, y)| *x -= p * y);
    }
    w
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().map(|x| x.abs()).fold(0.0, f64::max)
}

/// Dimension of `{T : T ad(x) = ad(x) T on the ideal}`.
fn centroid_dim(sc: &StructureConstants, ideal: &[Vec<f64>]) -> usize {
    let d = ideal.len();
    // ad(x_i) in the ideal basis.
    let ads: Vec<DMatrix<f64>> = ideal
        .iter()
        .map(|x| DMatrix::from_fn(d, d, |r, c| dot(&ideal[r], &bracket_vec(sc, x, &ideal[c]))))
        .collect();
    // Linear conditions on vec(T): (I⊗A - Aᵀ⊗I) vec(T) = 0 for every A.
    let mut rows = DMatrix::<f64>::zeros(d * d * ads.len(), d * d);
    for (k, a) in ads.iter().enumerate() {
        for i in 0..d {
            for j in 0..d {
                let row = k * d * d + i * d + j;
                // (TA - AT)_{ij} = Σ_m T_im A_mj - A_im T_mj.
                for m in 0..d {
                    rows[(row, i * d + m)] += a[(m, j)];
                    rows[(row, m * d + j)] -= a[(i, m)];
                }
            }
        }
    }
    let sv = rows.svd(false, false).singular_values;
    d * d - sv.iter().filter(|s| **s > 1e-9).count()
}

/// The subalgebra of `spin(12) ⊕ su(2)` commuting with the EVI torus and its
/// split into a 6-dimensional and a 3-dimensional ideal.
pub fn commutant_evi(sc: &StructureConstants) -> Result<Commutant> {
    let n = sc.n;
    let k = crate::rep56::EVI_COMPACT;
    let torus: Vec<usize> = EVI_TORUS.iter().map(|t| t - 1).collect();
    let mut map = DMatrix::<f64>::zeros(n * torus.len(), k);
    for (t, &h) in torus.iter().enumerate() {
        for x in 0..k {
            for &(c, v) in sc.row(x, h) {
                map[(t * n + c, x)] = v.re;
            }
        }
    }
    let svd = map.svd(false, true);
    let vt = svd.v_t.expect("right singular vectors");
    let kernel: Vec<Vec<f64>> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, s)| **s < 1e-9)
        .map(|(r, _)| {
            let mut v = vec![0.0; n];
            v[..k].iter_mut().zip(vt.row(r).iter()).for_each(|(a, b)| *a = *b);
            v
        })
        .collect();
    let basis = orthonormalize(&kernel, 1e-9);
    let reference = commutant_reference(n);
    let m_distances: Vec<f64> = reference.iter().map(|m| dot(&project_out(m, &basis), &project_out(m, &basis)).sqrt()).collect();
    let ideal3 = orthonormalize(&reference[6..], 1e-9);
    let ideal6 = orthonormalize(&basis.iter().map(|v| project_out(v, &ideal3)).collect::<Vec<_>>(), 1e-6);
    let mut cross_bracket: f64 = 0.0;
    let mut ideal_leak: f64 = 0.0;
    for u in &ideal6 {
        for v in &ideal3 {
            cross_bracket = cross_bracket.max(max_abs(&bracket_vec(sc, u, v)));
        }
    }
    for part in [&ideal3, &ideal6] {
        for u in part.iter() {
            for v in part.iter() {
                ideal_leak = ideal_leak.max(max_abs(&project_out(&bracket_vec(sc, u, v), part)));
            }
        }
    }
    // Trace form tr(ad u ad v) restricted to the commutant.
    let d = basis.len();
    let ad = |u: &[f64]| -> DMatrix<f64> {
        let mut m = DMatrix::zeros(n, n);
        for (a, &x) in u.iter().enumerate() {
            if x != 0.0 {
                m += sc.ad(a).map(|v| v.re) * x;
            }
        }
        m
    };
    let ads: Vec<DMatrix<f64>> = basis.iter().map(|u| ad(u)).collect();
    let kf = DMatrix::from_fn(d, d, |i, j| (&ads[i] * &ads[j]).trace());
    let killing_max = if d == 0 { 0.0 } else { kf.symmetric_eigenvalues().max() };
    let centroid_dims = (centroid_dim(sc, &ideal6), centroid_dim(sc, &ideal3));
    Ok(Commutant { basis, ideal3, ideal6, m_distances, cross_bracket, ideal_leak, killing_max, centroid_dims })
}

/// Torus of the tits chart, `V = {Y₂, Y₈₂, Y₉₉}` (1-based).
pub const TITS_TORUS: [usize; 3] = [2, 82, 99];

/// Linear map `(x₅₂, x₅₃, x₅₄) ↦ (x, y, z)` of the tits chart.
pub fn tits_change_of_variables() -> [[f64; 3]; 3] {
    let s2 = 2f64.sqrt();
    let s3 = 3f64.sqrt();
    let s6 = 6f64.sqrt();
    [[s6 / 3.0, 0.0, -2.0 * s3 / 3.0], [s2 / s3, 1.0, 1.0 / s3], [-s2 / s3, 1.0, -1.0 / s3]]
}

/// Restricted roots of `V` written in the `(x, y, z)` coordinates.
///
/// The covector `β` on `(x₅₂, x₅₃, x₅₄)` becomes `β T⁻¹` in `(x, y, z)`.
pub fn tits_restricted_roots(sc: &StructureConstants) -> Result<RootDatum> {
    let cartan: Vec<usize> = TITS_TORUS.iter().map(|k| k - 1).collect();
    let mut rd = extract_roots(sc, &cartan)?;
    let t = tits_change_of_variables();
    let tm = nalgebra::Matrix3::from_fn(|i, j| t[i][j]);
    let tinv = tm.try_inverse().ok_or_else(|| Error::InvalidArgument("singular change of variables".into()))?;
    for r in &mut rd.roots {
        let b = nalgebra::RowVector3::new(r.coeffs[0], r.coeffs[1], r.coeffs[2]) * tinv;
        r.coeffs = b.iter().map(|x| if x.abs() < CLUSTER_TOL { 0.0 } else { *x }).collect();
    }
    Ok(rd.with_positivity(lex_positive_reversed))
}

/// The arguments of the sine factors of the tits density `W(x, y, z)`: unit
/// covectors `x, y, z` with multiplicity 1 and `(u ± v)/2` with multiplicity 8.
pub fn tits_density_roots() -> Vec<([f64; 3], usize)> {
    let mut out = vec![([1.0, 0.0, 0.0], 1), ([0.0, 1.0, 0.0], 1), ([0.0, 0.0, 1.0], 1)];
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        for s in [1.0, -1.0] {
            let mut r = [0.0; 3];
            r[i] = 0.5;
            r[j] = 0.5 * s;
            out.push((r, 8));
        }
    }
    out
}

/// Whether the restricted roots (up to sign) are exactly the density
/// arguments with matching multiplicities.
pub fn tits_roots_match_density(rd: &RootDatum) -> bool {
    let expected = tits_density_roots();
    let mut matched = 0;
    for r in &rd.roots {
        let hit = expected.iter().find(|(e, _)| {
            close(&r.coeffs, e, 1e-6) || close(&r.coeffs, &e.map(|x| -x), 1e-6)
        });
        match hit {
            Some((_, m)) if *m == r.multiplicity => matched += 1,
            _ => return false,
        }
    }
    matched == 2 * expected.len()
}
