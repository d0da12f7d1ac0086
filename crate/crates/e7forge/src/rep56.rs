//! The fundamental 56 in the three constructions, and the group-level checks
//! built on it: center, one-parameter periods and the isomorphism with the
//! adjoint 133.

use itertools::Itertools;
use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::f4e6::{ExactMatrix, F4E6Basis, J};
use crate::generators::{
    distance_to_scalar, expm, expm_t, exact_structure_constants, structure_constants, Construction, GeneratorSet,
    StructureConstants,
};
use crate::scalars::ExactScalar;
use crate::sparse::SparseMatrix;

pub const DIM56: usize = 56;
/// `T_g = 2√6π`, the period of `Y₁, Y₂, Y₃`.
pub const T_G: f64 = 2.0 * 2.449_489_742_783_178 * std::f64::consts::PI;

/// Offsets of the four blocks `27 ⊕ 1 ⊕ 27 ⊕ 1`.
const B1: usize = 0;
const B2: usize = 27;
const B3: usize = 28;
const B4: usize = 55;

fn s(n: i64, d: i64) -> ExactScalar {
    ExactScalar::ratio(n, d)
}

fn i() -> ExactScalar {
    ExactScalar::i()
}

/// `Ĩ = diag(1, …, 1, -2)`.
fn i_tilde() -> ExactMatrix {
    SparseMatrix::from_triplets(J, J, (0..J).map(|k| (k, k, if k == 26 { s(-2, 1) } else { s(1, 1) })))
}

/// Off-diagonal layout shared by `Y₂, Y₃, Y_{a+81}, Y_{a+107}`: matrices in
/// blocks (1,3) and (3,1), the unit vector `e_k` in blocks (1,4), (2,3),
/// (3,2) and (4,1). Every entry is multiplied by ½.
struct OffBlocks<'a> {
    b13: (ExactScalar, &'a ExactMatrix),
    b31: (ExactScalar, &'a ExactMatrix),
    k: usize,
    /// Coefficients of `e_k` in blocks (1,4), (2,3), (3,2), (4,1).
    vec: [ExactScalar; 4],
}

impl OffBlocks<'_> {
    fn build(&self) -> ExactMatrix {
        let half = s(1, 2);
        let mut t: Vec<(usize, usize, ExactScalar)> = Vec::new();
        for (r, c, v) in self.b13.1.iter() {
            t.push((B1 + r, B3 + c, &(v * &self.b13.0) * &half));
        }
        for (r, c, v) in self.b31.1.iter() {
            t.push((B3 + r, B1 + c, &(v * &self.b31.0) * &half));
        }
        let k = self.k;
        let pos = [(B1 + k, B4), (B2, B3 + k), (B3 + k, B2), (B4, B1 + k)];
        for ((r, c), v) in pos.into_iter().zip(&self.vec) {
            t.push((r, c, v * &half));
        }
        SparseMatrix::from_triplets(DIM56, DIM56, t)
    }
}

fn blockdiag(top: &ExactMatrix, bottom: &ExactMatrix, o1: usize, o2: usize) -> ExactMatrix {
    SparseMatrix::from_triplets(DIM56, DIM56, top.shifted(o1, o1).chain(bottom.shifted(o2, o2)))
}

/// The 133 generators `Y_A` of the tits 56, orthonormal under `-tr(YY′)/12`.
pub fn build_56_tits(basis: &F4E6Basis) -> GeneratorSet {
    let sqrt2 = ExactScalar::sqrt2();
    let sqrt6 = ExactScalar::sqrt6();
    let i_sqrt2 = &i() * &sqrt2;
    let sqrt_2_3 = &sqrt6 * &s(1, 3);
    let it = i_tilde();
    let mut y: Vec<ExactMatrix> = Vec::with_capacity(133);

    let a = &i() * &(&sqrt6 * &s(1, 6));
    let b = &i() * &(&sqrt6 * &s(1, 2));
    y.push(SparseMatrix::from_triplets(
        DIM56,
        DIM56,
        (0..J)
            .flat_map(|k| [(B1 + k, B1 + k, a.clone()), (B3 + k, B3 + k, -&a)])
            .chain([(B2, B2, -&b), (B4, B4, b.clone())]),
    ));
    let m = -&(&i() * &sqrt_2_3);
    y.push(
        OffBlocks { b13: (m.clone(), &it), b31: (m, &it), k: 26, vec: std::array::from_fn(|_| i_sqrt2.clone()) }
            .build(),
    );
    y.push(
        OffBlocks {
            b13: (sqrt_2_3.clone(), &it),
            b31: (-&sqrt_2_3, &it),
            k: 26,
            vec: [sqrt2.clone(), sqrt2.clone(), -&sqrt2, -&sqrt2],
        }
        .build(),
    );
    for phi in basis.e6() {
        y.push(blockdiag(phi, &phi.transpose().neg(), B1, B3));
    }
    let two_i = &s(2, 1) * &i();
    for a in &basis.a[..26] {
        let k = y.len() - 81;
        y.push(
            OffBlocks { b13: (two_i.clone(), a), b31: (two_i.clone(), a), k, vec: std::array::from_fn(|_| i_sqrt2.clone()) }
                .build(),
        );
    }
    for (k, a) in basis.a[..26].iter().enumerate() {
        y.push(
            OffBlocks { b13: (s(-2, 1), a), b31: (s(2, 1), a), k, vec: [sqrt2.clone(), sqrt2.clone(), -&sqrt2, -&sqrt2] }
                .build(),
        );
    }
    let labels = (1..=133).map(|a| format!("Y{a}")).collect();
    GeneratorSet::from_exact(Construction::Tits, labels, y)
}

/// Pairs `(i, j)`, `i < j`, indexing `∧²C⁸`.
pub fn wedge_pairs() -> Vec<(usize, usize)> {
    (0..8).tuple_combinations().collect()
}

fn pair_index(i: usize, j: usize) -> usize {
    // Position of (i, j), i < j, in lexicographic order.
    i * (15 - i) / 2 + (j - i - 1)
}

/// Action of an 8×8 matrix on `∧²C⁸`: `e_i∧e_j ↦ Xe_i∧e_j + e_i∧Xe_j`.
#[allow(clippy::needless_range_loop)]
pub fn wedge2<T: crate::scalars::Ring>(x: &[[T; 8]; 8]) -> SparseMatrix<T> {
    let mut t = Vec::new();
    for (n, (i, j)) in wedge_pairs().into_iter().enumerate() {
        for k in 0..8 {
            for (a, b, coef) in [(k, j, &x[k][i]), (i, k, &x[k][j])] {
                if coef.is_zero() || a == b {
                    continue;
                }
                if a < b {
                    t.push((pair_index(a, b), n, coef.clone()));
                } else {
                    t.push((pair_index(b, a), n, coef.neg()));
                }
            }
        }
    }
    SparseMatrix::from_triplets(28, 28, t)
}

/// Sign of the permutation sorting `seq`, or 0 on a repeated entry.
pub fn perm_sign(seq: &[usize]) -> i64 {
    let mut sign = 1;
    for a in 0..seq.len() {
        for b in a + 1..seq.len() {
            match seq[a].cmp(&seq[b]) {
                std::cmp::Ordering::Greater => sign = -sign,
                std::cmp::Ordering::Equal => return 0,
                std::cmp::Ordering::Less => {}
            }
        }
    }
    sign
}

fn complement(t: &[usize; 4]) -> [usize; 4] {
    let v: Vec<usize> = (0..8).filter(|k| !t.contains(k)).collect();
    [v[0], v[1], v[2], v[3]]
}

/// `λ_I`: upper-right block `ε_{I ij kl}` and lower-left block the
/// generalized Kronecker symbol `δ^{ijkl}_I`.
pub fn lambda(t: &[usize; 4]) -> ExactMatrix {
    let pairs = wedge_pairs();
    let mut out = Vec::new();
    for (r, &(i, j)) in pairs.iter().enumerate() {
        for (c, &(k, l)) in pairs.iter().enumerate() {
            let up = perm_sign(&[t[0], t[1], t[2], t[3], i, j, k, l]);
            if up != 0 {
                out.push((r, 28 + c, s(up, 1)));
            }
            let mut q = [i, j, k, l];
            q.sort_unstable();
            if q == *t {
                out.push((28 + r, c, s(perm_sign(&[i, j, k, l]), 1)));
            }
        }
    }
    SparseMatrix::from_triplets(DIM56, DIM56, out)
}

/// Tetra-indices `I = (i₁<i₂<i₃<i₄)` with `i₁, i₂, i₃ ≤ 5` (1-based), the 35
/// representatives of `λ⁴` up to complements.
pub fn tetra_indices() -> Vec<[usize; 4]> {
    (0..8).tuple_combinations().map(|(a, b, c, d)| [a, b, c, d]).filter(|t| t[2] < 5).collect()
}

fn tetra_label(t: &[usize; 4]) -> String {
    t.iter().map(|k| (k + 1).to_string()).collect()
}

/// Diagonal Cartan directions `D₁ … D₇` of the split construction, as
/// coefficient rows over `e_1 … e_8` (unscaled; the first six are divided by
/// √2 and the seventh by 2).
pub const CARTAN_ROWS: [[i64; 8]; 7] = [
    [1, -1, -1, 1, 0, 0, 0, 0],
    [1, -1, 1, -1, 0, 0, 0, 0],
    [1, 1, -1, -1, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, -1, -1, 1],
    [0, 0, 0, 0, 1, -1, 1, -1],
    [0, 0, 0, 0, 1, 1, -1, -1],
    [1, 1, 1, 1, -1, -1, -1, -1],
];

/// `D_α` as real 8-vectors (diagonals).
pub fn cartan_diagonals() -> [[f64; 8]; 7] {
    std::array::from_fn(|a| {
        let f = if a < 6 { std::f64::consts::FRAC_1_SQRT_2 } else { 0.5 };
        CARTAN_ROWS[a].map(|x| x as f64 * f)
    })
}

/// Embedding of `X ∈ gl(8)` acting as `X` on `∧²V` and `-Xᵀ` on `∧²V*`.
pub fn algebra_embed<T: crate::scalars::Ring>(x: &[[T; 8]; 8]) -> SparseMatrix<T> {
    let neg_t: [[T; 8]; 8] = std::array::from_fn(|r| std::array::from_fn(|c| x[c][r].neg()));
    let top = wedge2(x);
    let bottom = wedge2(&neg_t);
    SparseMatrix::from_triplets(DIM56, DIM56, top.shifted(0, 0).chain(bottom.shifted(28, 28)))
}

fn unit8(k: usize, l: usize, sym: bool) -> [[ExactScalar; 8]; 8] {
    let mut x: [[ExactScalar; 8]; 8] = std::array::from_fn(|_| std::array::from_fn(|_| ExactScalar::zero()));
    x[k][l] = s(1, 1);
    x[l][k] = s(if sym { 1 } else { -1 }, 1);
    x
}

fn times_i(x: [[ExactScalar; 8]; 8]) -> [[ExactScalar; 8]; 8] {
    x.map(|row| row.map(|v| &v * &i()))
}

/// Rescales each generator to unit norm under `-tr/12`.
fn normalize(mats: Vec<ExactMatrix>) -> Result<Vec<ExactMatrix>> {
    mats.into_iter()
        .map(|m| {
            let p = &m.trace_product(&m) * &s(-1, 12);
            let inv_norm = p.sqrt_exact()?.invert()?;
            Ok(m.scale(&inv_norm))
        })
        .collect()
}

/// The split 56 on `∧²V ⊕ ∧²V*`: `A_kl` (28), `𝒜_I` (35), `D_α` (7), then
/// `S_kl` (28) and `𝒮_I` (35). The first 63 span `su(8)`. Each generator is
/// normalized to unit length under `-tr/12`.
pub fn build_56_split() -> Result<GeneratorSet> {
    let pairs = wedge_pairs();
    let tets = tetra_indices();
    let inv_sqrt2 = &ExactScalar::sqrt2() * &s(1, 2);
    let mut mats = Vec::with_capacity(133);
    let mut labels = Vec::with_capacity(133);
    for &(k, l) in &pairs {
        mats.push(algebra_embed(&unit8(k, l, false)));
        labels.push(format!("A{}{}", k + 1, l + 1));
    }
    let lam_pair = |t: &[usize; 4], plus: bool| -> ExactMatrix {
        let comp = complement(t);
        let e = perm_sign(&[t[0], t[1], t[2], t[3], comp[0], comp[1], comp[2], comp[3]]);
        let sign = if plus { e } else { -e };
        lambda(t).add(&lambda(&comp).scale(&s(sign, 1))).scale(&inv_sqrt2)
    };
    for t in &tets {
        mats.push(lam_pair(t, false));
        labels.push(format!("cA{}", tetra_label(t)));
    }
    for (a, row) in CARTAN_ROWS.iter().enumerate() {
        let f = if a < 6 { inv_sqrt2.clone() } else { s(1, 2) };
        let mut x: [[ExactScalar; 8]; 8] = std::array::from_fn(|_| std::array::from_fn(|_| ExactScalar::zero()));
        for k in 0..8 {
            x[k][k] = &(&f * &s(row[k], 1)) * &i();
        }
        mats.push(algebra_embed(&x));
        labels.push(format!("D{}", a + 1));
    }
    for &(k, l) in &pairs {
        mats.push(algebra_embed(&times_i(unit8(k, l, true))));
        labels.push(format!("S{}{}", k + 1, l + 1));
    }
    for t in &tets {
        mats.push(lam_pair(t, true).scale(&i()));
        labels.push(format!("cS{}", tetra_label(t)));
    }
    Ok(GeneratorSet::from_exact(Construction::Split, labels, normalize(mats)?))
}

/// Range of the split generators spanning `su(8)` (0-based).
pub const SPLIT_SU8: std::ops::Range<usize> = 0..63;
/// Range of the split Cartan generators `D₁ … D₇` (0-based).
pub const SPLIT_CARTAN: std::ops::Range<usize> = 63..70;

/// One term `coefficient · Y_index` (1-based index) of an EVI generator.
type Term = (ExactScalar, usize);

fn evi_recipes() -> Vec<Vec<Term>> {
    let one = || s(1, 1);
    let r2 = ExactScalar::sqrt2;
    let r3 = ExactScalar::sqrt3;
    let r6 = ExactScalar::sqrt6;
    let single = |k: usize| vec![(one(), k)];
    // 1/(3√2) = √2/6.
    let c = || &r2() * &s(1, 6);
    let mut out: Vec<Vec<Term>> = Vec::with_capacity(133);
    out.extend((4..=31).chain(48..=55).chain(74..=81).map(single));
    out.push(vec![(&r3() * &s(1, 2), 73), (s(-1, 2), 56)]);
    out.push(vec![(s(1, 2), 56), (&r3() * &s(1, 6), 73), (&r6() * &s(-1, 3), 1)]);
    for (v, w, h) in [(82, 99, 2), (108, 125, 3)] {
        out.push(vec![(&c() * &s(-3, 1), v), (&c() * &r3(), w), (&c() * &r6(), h)]);
    }
    // (√2/3)(-√3 Y_w + √(3/2) Y_h) = -(√6/3) Y_w + (1/√3) Y_h.
    for (w, h) in [(99, 2), (125, 3)] {
        out.push(vec![(&r6() * &s(-1, 3), w), (&r3() * &s(1, 3), h)]);
    }
    out.extend((100..=107).chain(126..=133).map(single));
    for (v, w, h) in [(82, 99, 2), (108, 125, 3)] {
        out.push(vec![(&c() * &s(3, 1), v), (&c() * &r3(), w), (&c() * &r6(), h)]);
    }
    out.push(vec![(&c() * &s(3, 1), 56), (&c() * &r3(), 73), (&c() * &r6(), 1)]);
    out.extend((32..=47).chain(57..=72).chain(83..=98).chain(109..=124).map(single));
    out
}

/// The EVI basis `L₁ … L₁₃₃` as exact combinations of the tits `Y_A`.
///
/// `L₁ … L₆₆` span `spin(12)`, `L₆₇ … L₆₉` span the commuting `su(2)` and
/// `L₇₀ … L₁₃₃` span the complement.
pub fn build_basis_evi(tits: &GeneratorSet) -> Result<GeneratorSet> {
    let y = tits
        .exact
        .as_ref()
        .ok_or_else(|| Error::InvalidArgument("evi basis needs the exact tits generators".into()))?;
    let mats: Vec<ExactMatrix> = evi_recipes()
        .into_iter()
        .map(|terms| SparseMatrix::linear_combination(terms.into_iter().map(|(c, k)| (c, &y[k - 1])), DIM56, DIM56))
        .collect();
    let labels = (1..=133).map(|b| format!("L{b}")).collect();
    let set = GeneratorSet::from_exact(Construction::Evi, labels, mats);
    let sc = structure_constants(&set, 1e-10)?;
    crate::generators::check_subalgebra(&sc, &(0..EVI_COMPACT).collect::<Vec<_>>(), 1e-10)
        .map_err(|e| match e {
            Error::NotSubalgebra { residual, a, b } => Error::NotClosed { residual, a, b },
            other => other,
        })?;
    Ok(set)
}

/// Number of EVI generators spanning `spin(12) ⊕ su(2)`.
pub const EVI_COMPACT: usize = 69;

/// Outcome of one period check.
#[derive(Clone, Debug, Serialize)]
pub struct PeriodEntry {
    /// 1-based generator index.
    pub index: usize,
    /// Shortest `T > 0` with `exp(T·Y) = I`.
    pub period: f64,
    /// Period the construction predicts.
    pub expected: f64,
    /// `‖exp(expected·Y) - I‖_max`.
    pub residual: f64,
}

/// Center and period facts of the tits 56.
#[derive(Clone, Debug, Serialize)]
pub struct CenterReport {
    /// `‖exp(√6πY₁) + I₅₆‖_max`.
    pub minus_identity_residual: f64,
    /// `‖exp(√6πM₁) - I₁₃₃‖_max`, when the adjoint set is supplied.
    pub adjoint_identity_residual: Option<f64>,
    /// `‖ω³ - I‖_max` with `ω = exp(4π/√3·Y₇₃)`.
    pub omega_cubed_residual: f64,
    /// `‖ω - I‖_max`, nonzero for a nontrivial `ω`.
    pub omega_distance_from_identity: f64,
    /// `‖τ⁶ - I‖_max` with `τ = exp(T_g/6·Y₁)`.
    pub tau_sixth_residual: f64,
    /// Largest `‖[τ, Y_A]‖` over the E6 generators `Y₄ … Y₈₁`.
    pub tau_e6_commutator: f64,
    /// Largest `‖τ V τ⁻¹ - V‖` over `V ∈ {Y₂, Y₈₂, Y₉₉}`; informational.
    pub tau_torus_commutator: f64,
    pub periods: Vec<PeriodEntry>,
}

/// Shortest period of `exp(tX)` for anti-hermitian `X` whose eigenvalues are
/// commensurate with `2π/expected`.
fn shortest_period(x: &DMatrix<Complex64>, expected: f64) -> f64 {
    let h = x.map(|v| v * Complex64::new(0.0, -1.0));
    let herm = (&h + h.adjoint()) * Complex64::new(0.5, 0.0);
    let ev = herm.symmetric_eigenvalues();
    let mut g: i64 = 0;
    for lam in ev.iter() {
        let n = lam * expected / (2.0 * std::f64::consts::PI);
        let r = n.round();
        if (n - r).abs() > 1e-8 {
            return f64::NAN;
        }
        g = num_integer::gcd(g, r as i64);
    }
    if g == 0 {
        f64::INFINITY
    } else {
        expected / g as f64
    }
}

/// Period predicted for `Y_A` (1-based).
pub fn expected_period(index: usize) -> f64 {
    let four_pi = 4.0 * std::f64::consts::PI;
    match index {
        1..=3 => T_G,
        73 | 99 | 125 => four_pi * 3f64.sqrt(),
        _ => four_pi,
    }
}

fn residual_to(m: &DMatrix<Complex64>, target: f64) -> f64 {
    distance_to_scalar(m, target)
}

/// Checks the center, `ω`, `τ` and the one-parameter periods of the tits 56.
/// `m133`, when given, must be the orthonormal adjoint set in the same order.
pub fn center_and_periods(tits: &GeneratorSet, m133: Option<&GeneratorSet>) -> Result<CenterReport> {
    if tits.construction != Construction::Tits || tits.rep_dim != DIM56 || tits.len() != 133 {
        return Err(Error::WrongType("center_and_periods expects the tits 56".into()));
    }
    let sqrt6_pi = 6f64.sqrt() * std::f64::consts::PI;
    let minus_identity_residual = residual_to(&expm_t(&tits.mats[0], sqrt6_pi), -1.0);
    let adjoint_identity_residual = m133.map(|m| residual_to(&expm_t(&m.mats[0], sqrt6_pi), 1.0));
    let omega = expm_t(&tits.mats[72], 4.0 * std::f64::consts::PI / 3f64.sqrt());
    let omega_cubed_residual = residual_to(&(&omega * &omega * &omega), 1.0);
    let omega_distance_from_identity = residual_to(&omega, 1.0);
    let tau = expm_t(&tits.mats[0], T_G / 6.0);
    let tau_sixth_residual = residual_to(&(0..5).fold(tau.clone(), |acc, _| &acc * &tau), 1.0);
    let tau_inv = tau.adjoint();
    let conj_dist = |a: usize| {
        let y = tits.dense(a);
        (&tau * &y * &tau_inv - &y).iter().map(|v| v.norm()).fold(0.0, f64::max)
    };
    let tau_e6_commutator = (3..81).map(conj_dist).fold(0.0, f64::max);
    let tau_torus_commutator = [1, 81, 98].into_iter().map(conj_dist).fold(0.0, f64::max);

    let periods: Vec<PeriodEntry> = (0..tits.len())
        .into_par_iter()
        .map(|a| {
            let expected = expected_period(a + 1);
            let x = tits.dense(a);
            let residual = residual_to(&expm(&(&x * Complex64::new(expected, 0.0))), 1.0);
            PeriodEntry { index: a + 1, period: shortest_period(&x, expected), expected, residual }
        })
        .collect();

    let report = CenterReport {
        minus_identity_residual,
        adjoint_identity_residual,
        omega_cubed_residual,
        omega_distance_from_identity,
        tau_sixth_residual,
        tau_e6_commutator,
        tau_torus_commutator,
        periods,
    };
    if let Some(p) = report
        .periods
        .iter()
        .find(|p| p.residual > 1e-10 || (p.period - p.expected).abs() > 1e-9 * p.expected)
    {
        return Err(Error::PeriodMismatch {
            index: p.index,
            detail: format!("shortest period {} but expected {} (residual {:.2e})", p.period, p.expected, p.residual),
        });
    }
    Ok(report)
}

/// Result of comparing the structure constants of a 56 and a 133.
#[derive(Clone, Debug, Serialize)]
pub struct IsoReport {
    pub max_difference: f64,
    /// 1-based `(A, B, C)` of the worst entry.
    pub worst: (usize, usize, usize),
    pub closure_residual_56: f64,
    pub closure_residual_133: f64,
}

/// Structure constants of both sets, solved numerically, agree entrywise.
pub fn verify_iso(r56: &GeneratorSet, r133: &GeneratorSet, tol: f64) -> Result<IsoReport> {
    if r56.len() != r133.len() {
        return Err(Error::DimensionMismatch(format!("{} vs {} generators", r56.len(), r133.len())));
    }
    let c56 = structure_constants(r56, 1e-10)?;
    let c133 = structure_constants(r133, 1e-10)?;
    let (d, a, b, c) = c56.max_difference(&c133);
    if d > tol {
        return Err(Error::StructureMismatch { diff: d, a: a + 1, b: b + 1, c: c + 1 });
    }
    Ok(IsoReport {
        max_difference: d,
        worst: (a + 1, b + 1, c + 1),
        closure_residual_56: c56.residual,
        closure_residual_133: c133.residual,
    })
}

/// Exact structure constants of an orthonormal exact 56 (scale 12).
pub fn exact_constants_56(r56: &GeneratorSet) -> Result<crate::generators::ExactConstants> {
    exact_structure_constants(r56, 12)
}

/// Numerical structure constants of a 56.
pub fn constants_56(r56: &GeneratorSet) -> Result<StructureConstants> {
    structure_constants(r56, 1e-10)
}
