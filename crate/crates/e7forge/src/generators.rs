//! Ordered generator sets, their structure constants, Killing forms, Weyl
//! unitary tricks and Jacobi residuals.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalars::ExactScalar;
use crate::sparse::SparseMatrix;

/// Float sparse matrix.
pub type FloatMatrix = SparseMatrix<Complex64>;

/// Which realization a generator set belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Construction {
    Tits,
    Split,
    Evi,
}

impl Construction {
    pub fn tag(self) -> &'static str {
        match self {
            Construction::Tits => "tits",
            Construction::Split => "split",
            Construction::Evi => "evi",
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Construction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tits" => Ok(Construction::Tits),
            "split" => Ok(Construction::Split),
            "evi" => Ok(Construction::Evi),
            other => Err(Error::InvalidArgument(format!("unknown construction {other:?}"))),
        }
    }
}

/// An ordered list of square matrices with metadata.
///
/// `mats` always holds the complex embedding; `exact` additionally keeps the
/// exact entries when the set was built in Q(i, √2, √3).
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    pub construction: Construction,
    pub rep_dim: usize,
    pub labels: Vec<String>,
    pub mats: Vec<FloatMatrix>,
    pub exact: Option<Vec<SparseMatrix<ExactScalar>>>,
}

impl GeneratorSet {
    pub fn from_exact(construction: Construction, labels: Vec<String>, exact: Vec<SparseMatrix<ExactScalar>>) -> Self {
        let rep_dim = exact.first().map_or(0, |m| m.rows());
        let mats = exact.iter().map(|m| m.embed()).collect();
        Self { construction, rep_dim, labels, mats, exact: Some(exact) }
    }

    pub fn from_float(construction: Construction, labels: Vec<String>, mats: Vec<FloatMatrix>) -> Self {
        let rep_dim = mats.first().map_or(0, |m| m.rows());
        Self { construction, rep_dim, labels, mats, exact: None }
    }

    pub fn len(&self) -> usize {
        self.mats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mats.is_empty()
    }

    /// Dense copy of generator `a` (0-based).
    pub fn dense(&self, a: usize) -> DMatrix<Complex64> {
        self.mats[a].to_dense()
    }

    /// `Σ x_a g_a` as a dense matrix.
    pub fn combination(&self, coeffs: &[(usize, f64)]) -> DMatrix<Complex64> {
        let mut m = DMatrix::zeros(self.rep_dim, self.rep_dim);
        for &(a, x) in coeffs {
            for (r, c, v) in self.mats[a].iter() {
                m[(r, c)] += v * x;
            }
        }
        m
    }

    /// Pairing `-tr(g_a g_b)/scale`. The 56 uses `scale = 12`.
    pub fn pairing(&self, a: usize, b: usize, scale: f64) -> Complex64 {
        -self.mats[a].trace_product(&self.mats[b]) / scale
    }

    /// Largest deviation of the pairing Gram matrix from the identity.
    pub fn orthonormality_residual(&self, scale: f64) -> f64 {
        (0..self.len())
            .into_par_iter()
            .map(|a| {
                (a..self.len())
                    .map(|b| {
                        let target = if a == b { 1.0 } else { 0.0 };
                        (self.pairing(a, b, scale) - target).norm()
                    })
                    .fold(0.0, f64::max)
            })
            .reduce(|| 0.0, f64::max)
    }

    /// Largest `‖g + g†‖` over the set.
    pub fn antihermiticity_residual(&self) -> f64 {
        self.mats.iter().map(|m| m.add(&m.adjoint()).max_abs()).fold(0.0, f64::max)
    }

    /// Subset with new labels order preserved (0-based indices).
    pub fn subset(&self, idx: &[usize]) -> GeneratorSet {
        GeneratorSet {
            construction: self.construction,
            rep_dim: self.rep_dim,
            labels: idx.iter().map(|&i| self.labels[i].clone()).collect(),
            mats: idx.iter().map(|&i| self.mats[i].clone()).collect(),
            exact: self.exact.as_ref().map(|e| idx.iter().map(|&i| e[i].clone()).collect()),
        }
    }
}

/// Sparse coefficients `[(C, c)]` of one bracket.
pub type SparseRow<T> = Vec<(usize, T)>;

/// `c_{AB}^C` stored as sparse rows `entries[A·n + B] = [(C, c)]`.
#[derive(Clone, Debug)]
pub struct StructureConstants {
    pub n: usize,
    pub entries: Vec<Vec<(usize, Complex64)>>,
    /// Largest reconstruction residual `‖[g_A,g_B] - Σ c g_C‖_max` seen while solving.
    pub residual: f64,
}

const COEFF_CUTOFF: f64 = 1e-12;

impl StructureConstants {
    pub fn zeros(n: usize) -> Self {
        Self { n, entries: vec![Vec::new(); n * n], residual: 0.0 }
    }

    /// Builds constants from a bracket oracle on basis pairs `A < B`.
    pub fn from_pairs(n: usize, f: impl Fn(usize, usize) -> Vec<(usize, Complex64)> + Sync) -> Self {
        let rows: Vec<(usize, usize, SparseRow<Complex64>)> = (0..n)
            .into_par_iter()
            .flat_map_iter(|a| (a + 1..n).map(move |b| (a, b)).collect::<Vec<_>>())
            .map(|(a, b)| (a, b, f(a, b)))
            .collect();
        let mut sc = Self::zeros(n);
        for (a, b, row) in rows {
            sc.entries[b * n + a] = row.iter().map(|&(c, v)| (c, -v)).collect();
            sc.entries[a * n + b] = row;
        }
        sc
    }

    pub fn row(&self, a: usize, b: usize) -> &[(usize, Complex64)] {
        &self.entries[a * self.n + b]
    }

    pub fn get(&self, a: usize, b: usize, c: usize) -> Complex64 {
        self.row(a, b).iter().find(|(k, _)| *k == c).map_or(Complex64::new(0.0, 0.0), |(_, v)| *v)
    }

    /// Dense `ad(g_A)` with `(ad)^C_B = c_{AB}^C`.
    pub fn ad(&self, a: usize) -> DMatrix<Complex64> {
        let mut m = DMatrix::zeros(self.n, self.n);
        for b in 0..self.n {
            for &(c, v) in self.row(a, b) {
                m[(c, b)] = v;
            }
        }
        m
    }

    /// Sparse `ad(g_A)`.
    pub fn ad_sparse(&self, a: usize) -> FloatMatrix {
        SparseMatrix::from_triplets(
            self.n,
            self.n,
            (0..self.n).flat_map(|b| self.row(a, b).iter().map(move |&(c, v)| (c, b, v))),
        )
    }

    /// `Σ_D u_D c_{DC}^E` as a dense vector in `E`, i.e. `[u, g_C]`.
    pub fn bracket_with_basis(&self, u: &[(usize, Complex64)], c: usize) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.n];
        for &(d, x) in u {
            for &(e, v) in self.row(d, c) {
                out[e] += x * v;
            }
        }
        out
    }

    /// Rescales the basis: `g'_A = s_A g_A` gives `c' = c s_A s_B / s_C`.
    pub fn rescaled(&self, s: &[Complex64]) -> Self {
        let mut out = Self::zeros(self.n);
        for a in 0..self.n {
            for b in 0..self.n {
                out.entries[a * self.n + b] =
                    self.row(a, b).iter().map(|&(c, v)| (c, v * s[a] * s[b] / s[c])).collect();
            }
        }
        out.residual = self.residual;
        out
    }

    /// Largest entrywise difference and where it occurs (0-based `(A,B,C)`).
    pub fn max_difference(&self, o: &Self) -> (f64, usize, usize, usize) {
        assert_eq!(self.n, o.n, "size mismatch");
        let n = self.n;
        let mut worst = (0.0, 0, 0, 0);
        let mut buf = vec![Complex64::new(0.0, 0.0); n];
        for a in 0..n {
            for b in 0..n {
                buf.iter_mut().for_each(|x| *x = Complex64::new(0.0, 0.0));
                for &(c, v) in self.row(a, b) {
                    buf[c] += v;
                }
                for &(c, v) in o.row(a, b) {
                    buf[c] -= v;
                }
                for (c, d) in buf.iter().enumerate() {
                    if d.norm() > worst.0 {
                        worst = (d.norm(), a, b, c);
                    }
                }
            }
        }
        worst
    }

    /// Largest `|c_{AB}^C + c_{BA}^C|`.
    pub fn antisymmetry_residual(&self) -> f64 {
        let (d, ..) = self.max_difference(&self.transposed_pairs().negated());
        d
    }

    fn transposed_pairs(&self) -> Self {
        let mut out = Self::zeros(self.n);
        for a in 0..self.n {
            for b in 0..self.n {
                out.entries[a * self.n + b] = self.row(b, a).to_vec();
            }
        }
        out
    }

    fn negated(&self) -> Self {
        let mut out = self.clone();
        out.entries.iter_mut().for_each(|r| r.iter_mut().for_each(|(_, v)| *v = -*v));
        out
    }
}

/// Sparse exact structure constants `c[A·133 + B] = [(C, c_{AB}^C)]`.
#[derive(Clone, Debug)]
pub struct ExactConstants {
    pub n: usize,
    pub entries: Vec<Vec<(usize, ExactScalar)>>,
}

impl ExactConstants {
    pub fn row(&self, a: usize, b: usize) -> &[(usize, ExactScalar)] {
        &self.entries[a * self.n + b]
    }

    pub fn get(&self, a: usize, b: usize, c: usize) -> ExactScalar {
        self.row(a, b).iter().find(|(k, _)| *k == c).map_or_else(ExactScalar::zero, |(_, v)| v.clone())
    }

    /// Complex embedding.
    pub fn embed(&self) -> StructureConstants {
        let mut sc = StructureConstants::zeros(self.n);
        for (k, row) in self.entries.iter().enumerate() {
            sc.entries[k] = row.iter().map(|(c, v)| (*c, v.embed())).collect();
        }
        sc
    }

    /// `ad(Ψ_A)` with `(M_A)^C_B = c_{AB}^C`.
    pub fn ad(&self, a: usize) -> SparseMatrix<ExactScalar> {
        SparseMatrix::from_triplets(
            self.n,
            self.n,
            (0..self.n).flat_map(|b| self.row(a, b).iter().map(move |(c, v)| (*c, b, v.clone()))),
        )
    }

    /// Basis rescaling `Ψ'_A = s_A Ψ_A`.
    pub fn rescaled(&self, s: &[ExactScalar]) -> Self {
        let inv: Vec<ExactScalar> = s.iter().map(|x| x.invert().expect("nonzero scale")).collect();
        let mut out = self.clone();
        for a in 0..self.n {
            for b in 0..self.n {
                let f = &s[a] * &s[b];
                for (c, v) in out.entries[a * self.n + b].iter_mut() {
                    *v = &(&*v * &f) * &inv[*c];
                }
            }
        }
        out
    }
}

/// Exact structure constants of a set that is orthonormal under
/// `-tr(g_a g_b)/scale`, read off as `c_{AB}^C = -tr([g_A,g_B] g_C)/scale`.
///
/// The reconstruction `[g_A,g_B] = Σ c g_C` is checked exactly, so a set
/// that does not close reports [`Error::NotClosed`].
pub fn exact_structure_constants(g: &GeneratorSet, scale: i64) -> Result<ExactConstants> {
    let ex = g.exact.as_ref().ok_or_else(|| Error::InvalidArgument("generator set has no exact entries".into()))?;
    let n = ex.len();
    let d = g.rep_dim;
    let inv = ExactScalar::ratio(-1, scale);
    // Position (r, c) of g_C pairs with entry (c, r) of the commutator.
    let mut index: Vec<Vec<(usize, ExactScalar)>> = vec![Vec::new(); d * d];
    for (k, m) in ex.iter().enumerate() {
        for (r, c, v) in m.iter() {
            index[c * d + r].push((k, v * &inv));
        }
    }
    let solved: Vec<(usize, usize, Result<SparseRow<ExactScalar>>)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|a| (a + 1..n).map(move |b| (a, b)).collect::<Vec<_>>())
        .map(|(a, b)| {
            let comm = ex[a].commutator(&ex[b]);
            let mut coeffs = vec![ExactScalar::zero(); n];
            for (r, c, v) in comm.iter() {
                for (k, w) in &index[r * d + c] {
                    coeffs[*k] += &(v * w);
                }
            }
            let row: Vec<(usize, ExactScalar)> = coeffs.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect();
            let rec = SparseMatrix::linear_combination(row.iter().map(|(k, v)| (v.clone(), &ex[*k])), d, d);
            let diff = comm.sub(&rec);
            let out = if diff.is_zero() {
                Ok(row)
            } else {
                let res = diff.iter().map(|(_, _, v)| v.embed().norm()).fold(0.0, f64::max);
                Err(Error::NotClosed { residual: res, a: a + 1, b: b + 1 })
            };
            (a, b, out)
        })
        .collect();
    let mut entries = vec![Vec::new(); n * n];
    for (a, b, row) in solved {
        let row = row?;
        entries[b * n + a] = row.iter().map(|(c, v)| (*c, -v)).collect();
        entries[a * n + b] = row;
    }
    Ok(ExactConstants { n, entries })
}

/// Solves `[g_A, g_B] = Σ_C c_{AB}^C g_C` against the Hermitian Gram matrix of
/// the set.
pub fn structure_constants(g: &GeneratorSet, tol: f64) -> Result<StructureConstants> {
    let n = g.len();
    let d = g.rep_dim;
    // Inverted index: position -> [(C, conj(value))].
    let mut index: Vec<Vec<(usize, Complex64)>> = vec![Vec::new(); d * d];
    for (k, m) in g.mats.iter().enumerate() {
        for (r, c, v) in m.iter() {
            index[r * d + c].push((k, v.conj()));
        }
    }
    let project = |m: &FloatMatrix| -> Vec<Complex64> {
        let mut p = vec![Complex64::new(0.0, 0.0); n];
        for (r, c, v) in m.iter() {
            for &(k, w) in &index[r * d + c] {
                p[k] += w * v;
            }
        }
        p
    };
    let mut gram = DMatrix::<Complex64>::zeros(n, n);
    for (a, m) in g.mats.iter().enumerate() {
        for (c, v) in project(m).into_iter().enumerate() {
            gram[(c, a)] = v;
        }
    }
    let inv = gram
        .cholesky()
        .ok_or_else(|| Error::DimensionMismatch("generators are linearly dependent".into()))?
        .inverse();

    let solved: Vec<(usize, usize, SparseRow<Complex64>, f64)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|a| (a + 1..n).map(move |b| (a, b)).collect::<Vec<_>>())
        .map(|(a, b)| {
            let comm = g.mats[a].commutator(&g.mats[b]);
            let p = nalgebra::DVector::from_vec(project(&comm));
            let x = &inv * p;
            let row: Vec<(usize, Complex64)> =
                x.iter().enumerate().filter(|(_, v)| v.norm() > COEFF_CUTOFF).map(|(c, v)| (c, *v)).collect();
            let mut buf = vec![Complex64::new(0.0, 0.0); d * d];
            for (r, c, v) in comm.iter() {
                buf[r * d + c] += v;
            }
            for &(k, coef) in &row {
                for (r, c, v) in g.mats[k].iter() {
                    buf[r * d + c] -= coef * v;
                }
            }
            let res = buf.iter().map(|v| v.norm()).fold(0.0, f64::max);
            (a, b, row, res)
        })
        .collect();

    let mut sc = StructureConstants::zeros(n);
    let mut worst = (0.0, 0, 0);
    for (a, b, row, res) in solved {
        if res > worst.0 {
            worst = (res, a, b);
        }
        sc.entries[b * n + a] = row.iter().map(|&(c, v)| (c, -v)).collect();
        sc.entries[a * n + b] = row;
    }
    sc.residual = worst.0;
    if worst.0 > tol {
        return Err(Error::NotClosed { residual: worst.0, a: worst.1 + 1, b: worst.2 + 1 });
    }
    Ok(sc)
}

/// Killing form `K_{AB} = tr(ad_A ad_B)`.
pub fn killing_form(sc: &StructureConstants) -> DMatrix<Complex64> {
    let n = sc.n;
    let ads: Vec<DMatrix<Complex64>> = (0..n).into_par_iter().map(|a| sc.ad(a)).collect();
    let rows: Vec<Vec<Complex64>> = (0..n)
        .into_par_iter()
        .map(|a| {
            let at = ads[a].transpose();
            (0..n).map(|b| at.iter().zip(ads[b].iter()).map(|(x, y)| x * y).sum()).collect()
        })
        .collect();
    DMatrix::from_fn(n, n, |a, b| rows[a][b])
}

/// Numbers of positive and negative eigenvalues of the Killing form.
pub fn killing_signature_from(sc: &StructureConstants) -> Result<(usize, usize)> {
    let k = killing_form(sc);
    let imag = k.iter().map(|v| v.im.abs()).fold(0.0, f64::max);
    let scale = k.iter().map(|v| v.norm()).fold(0.0, f64::max).max(1.0);
    if imag > 1e-8 * scale {
        return Err(Error::NotSubalgebra { residual: imag, a: 0, b: 0 });
    }
    let re = k.map(|v| v.re);
    let sym = (&re + re.transpose()) * 0.5;
    let ev = sym.symmetric_eigenvalues();
    let cut = 1e-8 * scale;
    Ok((ev.iter().filter(|v| **v > cut).count(), ev.iter().filter(|v| **v < -cut).count()))
}

/// Killing signature of a generator set.
pub fn killing_signature(g: &GeneratorSet) -> Result<(usize, usize)> {
    killing_signature_from(&structure_constants(g, 1e-10)?)
}

/// Checks that `subset` (0-based) closes under the bracket.
pub fn check_subalgebra(sc: &StructureConstants, subset: &[usize], tol: f64) -> Result<()> {
    let mut inside = vec![false; sc.n];
    subset.iter().for_each(|&k| inside[k] = true);
    for &a in subset {
        for &b in subset {
            for &(c, v) in sc.row(a, b) {
                if !inside[c] && v.norm() > tol {
                    return Err(Error::NotSubalgebra { residual: v.norm(), a: a + 1, b: b + 1 });
                }
            }
        }
    }
    Ok(())
}

fn trick_factors(n: usize, compact: &[usize]) -> Vec<Complex64> {
    let mut f = vec![Complex64::new(0.0, 1.0); n];
    compact.iter().for_each(|&k| f[k] = Complex64::new(1.0, 0.0));
    f
}

/// Weyl unitary trick on structure constants: generators outside `compact`
/// (0-based) are multiplied by `i`.
pub fn weyl_trick_constants(sc: &StructureConstants, compact: &[usize]) -> Result<StructureConstants> {
    check_subalgebra(sc, compact, 1e-9)?;
    Ok(sc.rescaled(&trick_factors(sc.n, compact)))
}

/// Weyl unitary trick on matrices: generators outside `compact` are
/// multiplied by `i`.
pub fn weyl_trick(g: &GeneratorSet, compact: &[usize]) -> Result<GeneratorSet> {
    let sc = structure_constants(g, 1e-10)?;
    check_subalgebra(&sc, compact, 1e-9)?;
    let f = trick_factors(g.len(), compact);
    let i = ExactScalar::i();
    let mut out = g.clone();
    for (k, m) in out.mats.iter_mut().enumerate() {
        if f[k].im != 0.0 {
            *m = m.scale(&f[k]);
        }
    }
    if let Some(ex) = out.exact.as_mut() {
        for (k, m) in ex.iter_mut().enumerate() {
            if f[k].im != 0.0 {
                *m = m.scale(&i);
            }
        }
    }
    Ok(out)
}

/// `‖[[A,B],C] + [[C,A],B] + [[B,C],A]‖_max` for basis indices.
pub fn jacobi_triple(sc: &StructureConstants, a: usize, b: usize, c: usize) -> f64 {
    let mut total = sc.bracket_with_basis(sc.row(a, b), c);
    for (x, y, z) in [(c, a, b), (b, c, a)] {
        for (t, v) in total.iter_mut().zip(sc.bracket_with_basis(sc.row(x, y), z)) {
            *t += v;
        }
    }
    total.iter().map(|v| v.norm()).fold(0.0, f64::max)
}

/// Seed of the deterministic Jacobi triple sample.
pub const JACOBI_SEED: u64 = 0x00e7_0133_0056_0001;

/// Triples checked by the Jacobi suite: `random` seeded triples plus every
/// triple among the `low` lowest indices; all unordered triples when
/// `exhaustive`.
pub fn jacobi_triples(n: usize, random: usize, low: usize, exhaustive: bool) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    if exhaustive {
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    out.push((a, b, c));
                }
            }
        }
        return out;
    }
    let low = low.min(n);
    for a in 0..low {
        for b in a + 1..low {
            for c in b + 1..low {
                out.push((a, b, c));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(JACOBI_SEED);
    for _ in 0..random {
        out.push((rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..n)));
    }
    out
}

/// Largest Jacobi residual over `triples`, with the offending triple.
pub fn jacobi_residual(sc: &StructureConstants, triples: &[(usize, usize, usize)]) -> (f64, (usize, usize, usize)) {
    triples
        .par_iter()
        .map(|&(a, b, c)| (jacobi_triple(sc, a, b, c), (a, b, c)))
        .reduce(|| (0.0, (0, 0, 0)), |x, y| if y.0 > x.0 { y } else { x })
}

/// Dense matrix exponential by scaling and squaring with a degree-13 Padé
/// approximant.
pub fn expm(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    m.exp()
}

/// `exp(t·X)` for a sparse generator.
pub fn expm_t(x: &FloatMatrix, t: f64) -> DMatrix<Complex64> {
    expm(&(x.to_dense() * Complex64::new(t, 0.0)))
}

/// Largest `|M - λI|` entry.
pub fn distance_to_scalar(m: &DMatrix<Complex64>, lambda: f64) -> f64 {
    let n = m.nrows();
    (m - DMatrix::<Complex64>::identity(n, n) * Complex64::new(lambda, 0.0)).iter().map(|v| v.norm()).fold(0.0, f64::max)
}

/// `‖U†U - I‖_max`.
pub fn unitarity_residual(u: &DMatrix<Complex64>) -> f64 {
    distance_to_scalar(&(u.adjoint() * u), 1.0)
}
