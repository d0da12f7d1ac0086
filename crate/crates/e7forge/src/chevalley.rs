//! Group embeddings of `SU(8)` into the split 56.
//!
//! Two copies of `su(8)` sit inside the split construction:
//!
//! - the maximal compact subalgebra `span{A_kl, 𝒜_I}` (the first 63
//!   generators), reached from `SU(8)` by the Chevalley map [`Chevalley`];
//! - the subalgebra acting as `X ⊕ (-Xᵀ)` on `∧²V ⊕ ∧²V*`, spanned by
//!   `A_kl, S_kl, D_α`, reached by [`su8_embed`].
//!
//! The split Euler chart `B·e^V·U` draws `B` and `U` from the first copy.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::generators::{expm, unitarity_residual, GeneratorSet, StructureConstants};
use crate::rep56::{tetra_indices, wedge_pairs, DIM56, SPLIT_SU8};

type CMat = DMatrix<Complex64>;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn bracket(a: &CMat, b: &CMat) -> CMat {
    a * b - b * a
}

fn frob(a: &CMat, b: &CMat) -> Complex64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

/// Generic weights separating the eigenspaces of a Cartan combination.
const WEIGHTS: [f64; 7] = [0.713, 0.529, 0.347, 0.281, 0.173, 0.131, 0.071];

/// The Cartan subalgebra of `span{A_kl, 𝒜_I}` used for the Chevalley basis:
/// `A₁₂, A₃₄, A₅₆, A₇₈, 𝒜₁₂₃₄, 𝒜₁₂₅₆, 𝒜₃₄₅₆` (0-based indices).
pub fn compact_cartan() -> [usize; 7] {
    let pairs = wedge_pairs();
    let tets = tetra_indices();
    let p = |i: usize, j: usize| pairs.iter().position(|&q| q == (i, j)).expect("pair");
    let t = |x: [usize; 4]| 28 + tets.iter().position(|&q| q == x).expect("tetra");
    [p(0, 1), p(2, 3), p(4, 5), p(6, 7), t([0, 1, 2, 3]), t([0, 1, 4, 5]), t([2, 3, 4, 5])]
}

/// Lie algebra homomorphism `dΦ: su(8) → span{A_kl, 𝒜_I}` built from a
/// Chevalley basis, and its exponentiated group map.
#[derive(Clone, Debug)]
pub struct Chevalley {
    /// `img[i][j]` is the image of the matrix unit `E_ij` (`i ≠ j`).
    img: Vec<Vec<CMat>>,
    /// Images of `E_kk - E_{k+1,k+1}`.
    h: Vec<CMat>,
}

impl Chevalley {
    /// Builds the map from the split generator set and its structure
    /// constants.
    pub fn new(split: &GeneratorSet, sc: &StructureConstants) -> Result<Self> {
        let n = SPLIT_SU8.len();
        let basis: Vec<CMat> = SPLIT_SU8.map(|a| split.dense(a)).collect();
        let cartan = compact_cartan();
        // -i·ad(h) on the 63-dimensional compact subalgebra.
        let ad = |h: usize| -> CMat {
            CMat::from_fn(n, n, |r, col| {
                sc.row(h, col).iter().find(|(k, _)| *k == r).map_or(c(0.0), |(_, v)| *v * Complex64::new(0.0, -1.0))
            })
        };
        let hs: Vec<CMat> = cartan.iter().map(|&h| ad(h)).collect();
        let mut comb = CMat::zeros(n, n);
        for (m, w) in hs.iter().zip(WEIGHTS) {
            comb += m * c(w);
        }
        let comb = (&comb + comb.adjoint()) * c(0.5);
        let eig = comb.symmetric_eigen();
        let mut roots: Vec<(Vec<f64>, DVector<Complex64>)> = Vec::new();
        for k in 0..n {
            let v: DVector<Complex64> = eig.eigenvectors.column(k).into_owned();
            let beta: Vec<f64> = hs.iter().map(|m| v.dotc(&(m * &v)).re).collect();
            if beta.iter().any(|b| b.abs() > 1e-7) {
                roots.push((beta, v));
            }
        }
        if roots.len() != 56 {
            return Err(Error::WrongType(format!("expected 56 roots of su(8), found {}", roots.len())));
        }
        let positive: Vec<usize> =
            (0..roots.len()).filter(|&k| roots[k].0.iter().zip(WEIGHTS).map(|(b, w)| b * w).sum::<f64>() > 0.0).collect();
        let sum_close = |a: &[f64], b: &[f64], r: &[f64]| a.iter().zip(b).zip(r).all(|((x, y), z)| (x + y - z).abs() < 1e-6);
        let simple: Vec<usize> = positive
            .iter()
            .copied()
            .filter(|&k| !positive.iter().any(|&a| positive.iter().any(|&b| sum_close(&roots[a].0, &roots[b].0, &roots[k].0))))
            .collect();
        if simple.len() != 7 {
            return Err(Error::WrongType(format!("expected 7 simple roots, found {}", simple.len())));
        }
        let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
        let linked = |i: usize, j: usize| i != j && dot(&roots[simple[i]].0, &roots[simple[j]].0) < -1e-6;
        // Order the A7 chain from the endpoint that comes first.
        let start = (0..7).find(|&i| (0..7).filter(|&j| linked(i, j)).count() == 1).ok_or_else(|| {
            Error::WrongType("simple roots do not form a chain".into())
        })?;
        let mut order = vec![start];
        while order.len() < 7 {
            let last = *order.last().expect("nonempty");
            let next = (0..7).find(|&j| linked(last, j) && !order.contains(&j)).ok_or_else(|| {
                Error::WrongType("simple roots do not form a chain".into())
            })?;
            order.push(next);
        }
        let mut e: Vec<CMat> = Vec::with_capacity(7);
        for &i in &order {
            let v = &roots[simple[i]].1;
            // Fix the eigenvector phase so its largest entry is real and positive.
            let (_, big) = v.iter().enumerate().fold((0.0, c(1.0)), |acc, (_, x)| if x.norm() > acc.0 { (x.norm(), *x) } else { acc });
            let v = v * (big.conj() / big.norm());
            let mut m = CMat::zeros(DIM56, DIM56);
            for (k, coef) in v.iter().enumerate() {
                m += &basis[k] * *coef;
            }
            let h = bracket(&m, &m.adjoint());
            let scale = frob(&m, &bracket(&h, &m)) / frob(&m, &m);
            if scale.re <= 0.0 {
                return Err(Error::WrongType("nonpositive Chevalley normalization".into()));
            }
            e.push(m * c((2.0 / scale.re).sqrt()));
        }
        let mut img = vec![vec![CMat::zeros(DIM56, DIM56); 8]; 8];
        for i in 0..7 {
            img[i][i + 1] = e[i].clone();
            img[i + 1][i] = e[i].adjoint();
        }
        for d in 2..8 {
            for i in 0..8 - d {
                let j = i + d;
                img[i][j] = bracket(&img[i][i + 1], &img[i + 1][j]);
                img[j][i] = img[i][j].adjoint();
            }
        }
        let h = (0..7).map(|k| bracket(&img[k][k + 1], &img[k + 1][k])).collect();
        Ok(Self { img, h })
    }

    /// `dΦ(X)` for `X ∈ sl(8, C)`.
    pub fn algebra(&self, x: &CMat) -> CMat {
        let mut out = CMat::zeros(DIM56, DIM56);
        for i in 0..8 {
            for j in 0..8 {
                if i != j && x[(i, j)] != c(0.0) {
                    out += &self.img[i][j] * x[(i, j)];
                }
            }
        }
        // diag(d) = Σ_k (d_1 + … + d_k) (E_kk - E_{k+1,k+1}) when tr = 0.
        let mut cs = c(0.0);
        for k in 0..7 {
            cs += x[(k, k)];
            out += &self.h[k] * cs;
        }
        out
    }

    /// `Φ(u) = exp(dΦ(log u))` for `u ∈ SU(8)`.
    pub fn group(&self, u: &CMat) -> Result<CMat> {
        Ok(expm(&self.algebra(&su8_log(u)?)))
    }
}

/// A traceless anti-hermitian logarithm of `u ∈ SU(8)`.
pub fn su8_log(u: &CMat) -> Result<CMat> {
    check_su8(u)?;
    let n = u.nrows();
    // (u + u†)/2 and (u - u†)/2i commute and are hermitian; a generic
    // combination separates the eigenvectors of u.
    let re = (u + u.adjoint()) * c(0.5);
    let im = (u - u.adjoint()) * Complex64::new(0.0, -0.5);
    let k = &re * c(0.618_033_988_749_894_8) + &im * c(0.414_213_562_373_095);
    let eig = k.symmetric_eigen();
    let v = eig.eigenvectors;
    let mut theta: Vec<f64> = (0..n).map(|j| (v.column(j).dotc(&(u * v.column(j)))).arg()).collect();
    // det u = 1, so Σθ is a multiple of 2π; move the largest angles down.
    let turns = (theta.iter().sum::<f64>() / (2.0 * std::f64::consts::PI)).round() as i64;
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| theta[b].total_cmp(&theta[a]));
    for t in 0..turns.unsigned_abs() as usize {
        let j = if turns > 0 { idx[t % n] } else { idx[n - 1 - t % n] };
        theta[j] -= turns.signum() as f64 * 2.0 * std::f64::consts::PI;
    }
    let d = CMat::from_diagonal(&DVector::from_iterator(n, theta.iter().map(|t| Complex64::new(0.0, *t))));
    let x = &v * d * v.adjoint();
    let recon = (expm(&x) - u).iter().map(|z| z.norm()).fold(0.0, f64::max);
    if recon > 1e-8 {
        return Err(Error::NotDiagonalizable(recon));
    }
    Ok(x)
}

fn check_su8(u: &CMat) -> Result<()> {
    if u.nrows() != 8 || u.ncols() != 8 {
        return Err(Error::DimensionMismatch(format!("expected 8x8, got {}x{}", u.nrows(), u.ncols())));
    }
    let res = unitarity_residual(u);
    let det = (u.determinant() - c(1.0)).norm();
    if res > 1e-10 || det > 1e-10 {
        return Err(Error::NotUnitary(res.max(det)));
    }
    Ok(())
}

/// `u ↦ (u∧u) ⊕ (ū∧ū)` on `∧²V ⊕ ∧²V*`.
pub fn su8_embed(u: &CMat) -> Result<CMat> {
    check_su8(u)?;
    let pairs = wedge_pairs();
    let mut m = CMat::zeros(DIM56, DIM56);
    for (r, &(k, l)) in pairs.iter().enumerate() {
        for (col, &(i, j)) in pairs.iter().enumerate() {
            let w = u[(k, i)] * u[(l, j)] - u[(l, i)] * u[(k, j)];
            m[(r, col)] = w;
            m[(28 + r, 28 + col)] = w.conj();
        }
    }
    Ok(m)
}

/// The algebra version of [`su8_embed`]: `X ↦ wedge₂(X) ⊕ wedge₂(-Xᵀ)`.
pub fn su8_embed_algebra(x: &CMat) -> CMat {
    let arr: [[Complex64; 8]; 8] = std::array::from_fn(|r| std::array::from_fn(|col| x[(r, col)]));
    crate::rep56::algebra_embed(&arr).to_dense()
}
