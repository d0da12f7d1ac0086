//! The 52 derivations of J₃(O) spanning F4, the 26 extra generators of E6,
//! the cubic tensor of the determinant form and the `A_α` matrices.
//!
//! All matrices act on Jordan coordinates: column `ν` of a matrix `X` holds
//! the coordinates of `X(j_ν)`, so `(X)^μ_ν` is row `μ`, column `ν`.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::jordan::{det_form, freudenthal, jordan_mul, JordanBasis, JordanMatrix};
use crate::composition_algebras::Octonion;
use crate::scalars::ExactScalar;
use crate::sparse::SparseMatrix;

/// Exact 27×27 (or other) sparse matrix.
pub type ExactMatrix = SparseMatrix<ExactScalar>;

/// Dimension of J₃(O).
pub const J: usize = 27;

/// Matrix of left multiplication `L_x: y ↦ x∘y`.
pub fn left_mult(jb: &JordanBasis, x: &JordanMatrix) -> ExactMatrix {
    let mut entries = Vec::new();
    for (nu, b) in jb.elements.iter().enumerate() {
        for (mu, c) in jb.coords(&jordan_mul(x, b)).into_iter().enumerate() {
            entries.push((mu, nu, c));
        }
    }
    SparseMatrix::from_triplets(J, J, entries)
}

/// Largest modulus among the entries of an exact matrix.
pub fn exact_max_abs(m: &ExactMatrix) -> f64 {
    m.iter().map(|(_, _, v)| v.embed().norm()).fold(0.0, f64::max)
}

fn unit_at(slot: usize, u: usize) -> JordanMatrix {
    JordanMatrix::off_diagonal(slot, Octonion::unit(u))
}

fn idempotent(k: usize) -> JordanMatrix {
    let mut d: [ExactScalar; 3] = Default::default();
    d[k] = ExactScalar::one();
    JordanMatrix::diagonal(d)
}

/// The 52 derivations `C_I`, normalized to `tr(C_I C_J) = -6δ_IJ`.
///
/// The spanning set is a fixed list of commutators of left multiplications:
/// `[L_{F₁₂(e_u)}, L_{F₁₂(e_v)}]` for `u < v`, then `[L_{E₁₁}, L_{F₁₂(e_u)}]`,
/// `[L_{E₁₁}, L_{F₁₃(e_u)}]` and `[L_{E₂₂}, L_{F₂₃(e_u)}]`. These 52 are already
/// mutually orthogonal under the trace form, so normalizing each one is the
/// whole orthonormalization, and every constant stays in Q(√3).
pub fn build_f4_basis(jb: &JordanBasis) -> Result<Vec<ExactMatrix>> {
    let l = |x: &JordanMatrix| left_mult(jb, x);
    let mut raw = Vec::with_capacity(52);
    let f12: Vec<ExactMatrix> = (0..8).map(|u| l(&unit_at(0, u))).collect();
    for u in 0..8 {
        for v in u + 1..8 {
            raw.push(f12[u].commutator(&f12[v]));
        }
    }
    for (diag, slot) in [(0, 0), (0, 1), (1, 2)] {
        let e = l(&idempotent(diag));
        for u in 0..8 {
            raw.push(e.commutator(&l(&unit_at(slot, u))));
        }
    }
    let mut basis = Vec::with_capacity(raw.len());
    for c in raw {
        let norm = -c.trace_product(&c);
        let ratio = norm
            .as_rational()
            .filter(|q| num_traits::Signed::is_positive(*q))
            .cloned()
            .ok_or_else(|| Error::DimensionMismatch("derivation with non-positive norm".into()))?;
        let factor = ExactScalar::sqrt_rational(&(num_rational::BigRational::from_integer(6.into()) / ratio))
            .ok_or_else(|| Error::ExactFieldOverflow("F4 normalization constant".into()))?;
        basis.push(c.scale(&factor));
    }
    let minus_six = ExactScalar::from_int(-6);
    for (a, x) in basis.iter().enumerate() {
        for (b, y) in basis.iter().enumerate().skip(a) {
            let g = x.trace_product(y);
            let expected = if a == b { minus_six.clone() } else { ExactScalar::zero() };
            if g != expected {
                return Err(Error::DimensionMismatch(format!("F4 candidates {} and {} are not orthonormal", a + 1, b + 1)));
            }
        }
    }
    Ok(basis)
}

/// The 26 generators `C̃_a = -i·L_{j_a}` completing F4 to E6.
pub fn build_e6_extension(jb: &JordanBasis) -> Vec<ExactMatrix> {
    let minus_i = -ExactScalar::i();
    jb.elements[..26].iter().map(|x| left_mult(jb, x).scale(&minus_i)).collect()
}

/// Dense symmetric tensor indexed by three Jordan labels.
#[derive(Clone, Debug)]
pub struct CubicTensor {
    data: Vec<ExactScalar>,
}

impl CubicTensor {
    pub fn get(&self, a: usize, b: usize, c: usize) -> &ExactScalar {
        &self.data[(a * J + b) * J + c]
    }

    /// Nonzero entries as `(a, b, c, value)`.
    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, usize, usize, &ExactScalar)> {
        self.data.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(k, v)| (k / (J * J), (k / J) % J, k % J, v))
    }
}

/// The determinant tensor `D_{αβγ} = Det(j_α, j_β, j_γ)` and the matrices
/// `(A_α)_{βγ} = ĵ^β(j_α ▷ j_γ)`.
pub fn build_cubic_and_a(jb: &JordanBasis) -> (CubicTensor, Vec<ExactMatrix>) {
    let e = &jb.elements;
    let mut data = Vec::with_capacity(J * J * J);
    for a in 0..J {
        for b in 0..J {
            for c in 0..J {
                data.push(det_form(&e[a], &e[b], &e[c]));
            }
        }
    }
    let a_mats = (0..J)
        .map(|al| {
            let mut entries = Vec::new();
            for g in 0..J {
                for (be, v) in jb.coords(&freudenthal(&e[al], &e[g])).into_iter().enumerate() {
                    entries.push((be, g, v));
                }
            }
            SparseMatrix::from_triplets(J, J, entries)
        })
        .collect();
    (CubicTensor { data }, a_mats)
}

/// Everything the constructions need from F4 and E6.
#[derive(Clone, Debug)]
pub struct F4E6Basis {
    /// `C_I`, `I = 1..52`.
    pub c: Vec<ExactMatrix>,
    /// `C̃_a`, `a = 1..26`.
    pub ctilde: Vec<ExactMatrix>,
    /// Left multiplications `L_{j_μ}`, `μ = 1..27` (real).
    pub l: Vec<ExactMatrix>,
    /// Determinant tensor.
    pub cubic: CubicTensor,
    /// `A_α`, `α = 1..27`.
    pub a: Vec<ExactMatrix>,
}

impl F4E6Basis {
    pub fn new(jb: &JordanBasis) -> Result<Self> {
        let c = build_f4_basis(jb)?;
        let ctilde = build_e6_extension(jb);
        let l = jb.elements.iter().map(|x| left_mult(jb, x)).collect();
        let (cubic, a) = build_cubic_and_a(jb);
        Ok(Self { c, ctilde, l, cubic, a })
    }

    /// Shared instance over the standard Jordan basis.
    pub fn standard() -> &'static F4E6Basis {
        static CELL: OnceLock<F4E6Basis> = OnceLock::new();
        CELL.get_or_init(|| F4E6Basis::new(JordanBasis::standard()).expect("standard F4/E6 basis"))
    }

    /// The 78 E6 generators `φ = (C_1..C_52, C̃_1..C̃_26)`.
    pub fn e6(&self) -> impl Iterator<Item = &ExactMatrix> {
        self.c.iter().chain(&self.ctilde)
    }

    /// Coefficients of `m` along the `C_K` (using `tr(C_K C_L) = -6δ`) and the
    /// remainder `m - Σ x_K C_K`.
    pub fn project_f4(&self, m: &ExactMatrix) -> (Vec<ExactScalar>, ExactMatrix) {
        let inv = ExactScalar::ratio(-1, 6);
        let coeffs: Vec<ExactScalar> = self.c.iter().map(|ck| &ck.trace_product(m) * &inv).collect();
        let rec = SparseMatrix::linear_combination(coeffs.iter().cloned().zip(&self.c), J, J);
        (coeffs, m.sub(&rec))
    }

    /// `f_{IJ}^K` of F4 as sparse rows: `f[I][J] = [(K, value)]`.
    #[allow(clippy::needless_range_loop)]
    pub fn f4_structure_constants(&self) -> Vec<Vec<Vec<(usize, ExactScalar)>>> {
        let n = self.c.len();
        let mut f = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let (coeffs, _) = self.project_f4(&self.c[i].commutator(&self.c[j]));
                let row: Vec<(usize, ExactScalar)> =
                    coeffs.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect();
                f[j][i] = row.iter().map(|(k, v)| (*k, -v)).collect();
                f[i][j] = row;
            }
        }
        f
    }

    /// `α_{ab}^K` defined by `[L_{j_a}, L_{j_b}] = α_{ab}^K C_K`.
    pub fn alpha(&self, a: usize, b: usize) -> Vec<ExactScalar> {
        self.project_f4(&self.l[a].commutator(&self.l[b])).0
    }
}

/// Named residuals of the F4/E6 identities. Exact computations report 0 when
/// the identity holds and the largest violating entry modulus otherwise.
#[derive(Clone, Debug, Default)]
pub struct F4E6Residuals {
    pub antisymmetry: f64,
    pub annihilates_identity: f64,
    pub f4_closure: f64,
    pub derivation_rule: f64,
    pub ctilde_covariance: f64,
    pub ctilde_row27: f64,
    pub ctilde_symmetric_block: f64,
    pub ctilde_brackets_in_f4: f64,
    pub a_total_symmetry: f64,
    pub a_special_values: f64,
    pub a_vs_cubic: f64,
    pub a_vs_ctilde: f64,
    pub cubic_invariance: f64,
    pub e6_normalization: f64,
}

impl F4E6Residuals {
    pub fn entries(&self) -> [(&'static str, f64); 14] {
        [
            ("C_I antisymmetric", self.antisymmetry),
            ("C_I annihilates j27", self.annihilates_identity),
            ("[C_I,C_J] in span C", self.f4_closure),
            ("C_I are derivations", self.derivation_rule),
            ("[C_I,Ct_a] = (C_I)^c_a Ct_c", self.ctilde_covariance),
            ("(Ct_a)^27_b = -i sqrt(2/3) delta", self.ctilde_row27),
            ("Ct_a symmetric on the 26 block", self.ctilde_symmetric_block),
            ("[Ct_a,Ct_b] in span C", self.ctilde_brackets_in_f4),
            ("A tensor totally symmetric", self.a_total_symmetry),
            ("A special values", self.a_special_values),
            ("A = 3/2 D", self.a_vs_cubic),
            ("(A_c)_ab = i (Ct_c)^a_b", self.a_vs_ctilde),
            ("cubic invariance under E6", self.cubic_invariance),
            ("tr(phi phi') = -6 delta", self.e6_normalization),
        ]
    }

    pub fn max(&self) -> f64 {
        self.entries().iter().map(|(_, v)| *v).fold(0.0, f64::max)
    }
}

fn scalar_abs(s: &ExactScalar) -> f64 {
    s.embed().norm()
}

/// Evaluates every F4/E6 identity on the full index ranges.
pub fn verify_identities(jb: &JordanBasis, b: &F4E6Basis) -> F4E6Residuals {
    let mut r = F4E6Residuals::default();
    let e = &jb.elements;

    for c in &b.c {
        r.antisymmetry = r.antisymmetry.max(exact_max_abs(&c.add(&c.transpose())));
        for mu in 0..J {
            r.annihilates_identity = r.annihilates_identity.max(scalar_abs(&c.get(mu, 26)));
        }
    }

    let n = b.c.len();
    for i in 0..n {
        for j in i + 1..n {
            let (_, rest) = b.project_f4(&b.c[i].commutator(&b.c[j]));
            r.f4_closure = r.f4_closure.max(exact_max_abs(&rest));
        }
    }

    // Leibniz rule C(x∘y) = C(x)∘y + x∘C(y) on a spread of basis pairs.
    for (i, c) in b.c.iter().enumerate().step_by(3) {
        for (x, y) in [(1, 4), (0, 17), (2, 19), (9, 25), (26, 5), ((i * 7) % 27, (i * 11 + 3) % 27)] {
            let col = |k: usize| (0..J).map(|m| c.get(m, k)).collect::<Vec<_>>();
            let lhs = c.apply(&jb.coords(&jordan_mul(&e[x], &e[y])));
            let rhs = jb.coords(
                &jordan_mul(&jb.from_coords(&col(x)), &e[y]).add(&jordan_mul(&e[x], &jb.from_coords(&col(y)))),
            );
            for (p, q) in lhs.iter().zip(&rhs) {
                r.derivation_rule = r.derivation_rule.max(scalar_abs(&(p - q)));
            }
        }
    }

    for ci in &b.c {
        for (a, ct) in b.ctilde.iter().enumerate() {
            let lhs = ci.commutator(ct);
            let rhs = SparseMatrix::linear_combination((0..26).map(|c| (ci.get(c, a), &b.ctilde[c])), J, J);
            r.ctilde_covariance = r.ctilde_covariance.max(exact_max_abs(&lhs.sub(&rhs)));
        }
    }

    let target = &(-ExactScalar::i()) * &(&ExactScalar::sqrt6() * &ExactScalar::ratio(1, 3));
    for (a, ct) in b.ctilde.iter().enumerate() {
        for bb in 0..26 {
            let expected = if a == bb { target.clone() } else { ExactScalar::zero() };
            r.ctilde_row27 = r.ctilde_row27.max(scalar_abs(&(&ct.get(26, bb) - &expected)));
            for c in 0..26 {
                r.ctilde_symmetric_block = r.ctilde_symmetric_block.max(scalar_abs(&(&ct.get(c, bb) - &ct.get(bb, c))));
            }
        }
    }
    for a in 0..26 {
        for bb in a + 1..26 {
            let (_, rest) = b.project_f4(&b.ctilde[a].commutator(&b.ctilde[bb]));
            r.ctilde_brackets_in_f4 = r.ctilde_brackets_in_f4.max(exact_max_abs(&rest));
        }
    }

    let three_halves = ExactScalar::ratio(3, 2);
    let i = ExactScalar::i();
    for al in 0..J {
        for be in 0..J {
            for ga in 0..J {
                let v = b.a[al].get(be, ga);
                for w in [b.a[al].get(ga, be), b.a[be].get(al, ga), b.a[ga].get(be, al)] {
                    r.a_total_symmetry = r.a_total_symmetry.max(scalar_abs(&(&v - &w)));
                }
                r.a_vs_cubic = r.a_vs_cubic.max(scalar_abs(&(&v - &(&three_halves * b.cubic.get(al, be, ga)))));
                if al < 26 && be < 26 && ga < 26 {
                    let w = &i * &b.ctilde[ga].get(al, be);
                    r.a_vs_ctilde = r.a_vs_ctilde.max(scalar_abs(&(&b.a[ga].get(al, be) - &w)));
                }
            }
        }
    }
    let s23 = &ExactScalar::sqrt6() * &ExactScalar::ratio(1, 3);
    let mut special = scalar_abs(&(&b.a[26].get(26, 26) - &s23));
    let half_s23 = &s23 * &ExactScalar::ratio(-1, 2);
    for a in 0..26 {
        special = special.max(scalar_abs(&b.a[a].get(26, 26)));
        for bb in 0..26 {
            let expected = if a == bb { half_s23.clone() } else { ExactScalar::zero() };
            special = special.max(scalar_abs(&(&b.a[a].get(bb, 26) - &expected)));
        }
    }
    r.a_special_values = special;

    r.cubic_invariance = cubic_invariance_residual(b);

    let phis: Vec<&ExactMatrix> = b.e6().collect();
    let minus_six = ExactScalar::from_int(-6);
    for (x, p) in phis.iter().enumerate() {
        for (y, q) in phis.iter().enumerate().skip(x) {
            let expected = if x == y { minus_six.clone() } else { ExactScalar::zero() };
            r.e6_normalization = r.e6_normalization.max(scalar_abs(&(&p.trace_product(q) - &expected)));
        }
    }
    r
}

/// Largest entry of `Σ_δ φ^δ_α D_{δβγ} + φ^δ_β D_{αδγ} + φ^δ_γ D_{αβδ}` over
/// all 78 E6 generators.
pub fn cubic_invariance_residual(b: &F4E6Basis) -> f64 {
    let nz: Vec<(usize, usize, usize, &ExactScalar)> = b.cubic.nonzeros().collect();
    let mut worst: f64 = 0.0;
    for phi in b.e6() {
        // Row d of φ lists the nonzero φ^d_α.
        let rows: Vec<Vec<(usize, ExactScalar)>> = (0..J).map(|d| phi.row(d).map(|(c, v)| (c, v.clone())).collect()).collect();
        let mut acc: HashMap<(usize, usize, usize), ExactScalar> = HashMap::new();
        for &(x, y, z, v) in &nz {
            for (al, p) in &rows[x] {
                *acc.entry((*al, y, z)).or_default() += &(p * v);
            }
            for (be, p) in &rows[y] {
                *acc.entry((x, *be, z)).or_default() += &(p * v);
            }
            for (ga, p) in &rows[z] {
                *acc.entry((x, y, *ga)).or_default() += &(p * v);
            }
        }
        for v in acc.values() {
            worst = worst.max(scalar_abs(v));
        }
    }
    worst
}

/// Numerical rank of `{[L_{j_a}, L_{j_b}]}` over all pairs (the dimension of
/// the inner derivation algebra).
pub fn derivation_span_rank(b: &F4E6Basis) -> usize {
    let mut rows = Vec::new();
    for a in 0..J {
        for c in a + 1..J {
            let m = b.l[a].commutator(&b.l[c]).embed();
            if !m.is_zero() {
                rows.push(m);
            }
        }
    }
    let mut mat = nalgebra::DMatrix::<f64>::zeros(J * J, rows.len());
    for (k, m) in rows.iter().enumerate() {
        for (r, c, v) in m.iter() {
            mat[(r * J + c, k)] = v.re;
        }
    }
    let sv = mat.svd(false, false).singular_values;
    let top = sv.iter().cloned().fold(0.0, f64::max);
    sv.iter().filter(|s| **s > 1e-9 * top).count()
}
