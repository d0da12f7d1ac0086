//! The Tits construction `D(H) ⊕ D(J) ⊕ (H′ ⊗ J′)` and its adjoint 133.
//!
//! Basis ordering (1-based labels):
//! - `Ψ₁..Ψ₃ = H₁, H₂, H₃`, the derivations of the quaternions with
//!   `[H_L, H_M] = 2ε_{LMN} H_N`;
//! - `Ψ₄..Ψ₅₅ = J₁..J₅₂`, acting on J₃(O) as the matrices `C_I`;
//! - `Ψ_{a+55}, Ψ_{a+81}, Ψ_{a+107} = h₁⊗j_a, h₂⊗j_a, h₃⊗j_a`.
//!
//! The mixed bracket is
//! `[h⊗j, h′⊗j′] = (α/3)⟨j,j′⟩D_{h,h′} - β⟨h,h′⟩[L_j, L_{j′}] + γ[h,h′]⊗(j⋆j′)`
//! with `(α, β, γ) = (1/4, 1, 1/2)` by default.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::f4e6::F4E6Basis;
use crate::generators::{Construction, ExactConstants, GeneratorSet, SparseRow, StructureConstants};
use crate::scalars::ExactScalar;
use crate::sparse::SparseMatrix;

pub const DIM: usize = 133;
/// First index of `J_I`.
pub const J_START: usize = 3;
/// First index of `h₁⊗j_a`.
pub const T_START: usize = 55;

/// `ε_{ijk}` for 0-based indices.
pub fn epsilon(i: usize, j: usize, k: usize) -> i64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (1, 0, 2) | (0, 2, 1) | (2, 1, 0) => -1,
        _ => 0,
    }
}

/// Coefficients of the mixed bracket.
#[derive(Clone, Debug, PartialEq)]
pub struct TitsCoefficients {
    pub alpha: BigRational,
    pub beta: BigRational,
    pub gamma: BigRational,
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl TitsCoefficients {
    pub fn new(alpha: (i64, i64), beta: (i64, i64), gamma: (i64, i64)) -> Self {
        Self { alpha: q(alpha.0, alpha.1), beta: q(beta.0, beta.1), gamma: q(gamma.0, gamma.1) }
    }

    /// `α = 1/4, β = 1, γ = 1/2`, the values for which the bracket closes
    /// with the scaling `σ = 1`.
    pub fn standard() -> Self {
        Self::new((1, 4), (1, 1), (1, 2))
    }

    /// Whether `α = γ² = β/4`.
    pub fn satisfies_jacobi_constraint(&self) -> bool {
        self.alpha == &self.gamma * &self.gamma && self.alpha == &self.beta / BigRational::from_integer(4.into())
    }
}

impl Default for TitsCoefficients {
    fn default() -> Self {
        Self::standard()
    }
}

/// Normalization of the `H_L`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalization {
    /// `H_L` with `[H_L, H_M] = 2ε H_N`, matching the block displays.
    Raw,
    /// `H_L/√6`, under which the constants coincide with those of the
    /// orthonormal 56.
    Orthonormal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Part {
    H(usize),
    Der(usize),
    /// `h_i ⊗ j_a`.
    T(usize, usize),
}

fn part(a: usize) -> Part {
    if a < J_START {
        Part::H(a)
    } else if a < T_START {
        Part::Der(a - J_START)
    } else {
        let k = a - T_START;
        Part::T(k / 26, k % 26)
    }
}

fn t_index(i: usize, a: usize) -> usize {
    T_START + 26 * i + a
}

struct Accumulator {
    vals: Vec<ExactScalar>,
}

impl Accumulator {
    fn new() -> Self {
        Self { vals: vec![ExactScalar::zero(); DIM] }
    }

    fn add(&mut self, c: usize, v: &ExactScalar) {
        if !v.is_zero() {
            self.vals[c] += v;
        }
    }

    fn finish(self) -> Vec<(usize, ExactScalar)> {
        self.vals.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect()
    }
}

/// Bracket of two basis elements of the Tits algebra, exactly.
pub struct TitsBracket<'a> {
    basis: &'a F4E6Basis,
    coeffs: TitsCoefficients,
    f: Vec<Vec<Vec<(usize, ExactScalar)>>>,
    /// `α_{ab}^K` for `a, b < 26`, indexed `a·26 + b`.
    alpha: Vec<Vec<ExactScalar>>,
}

impl<'a> TitsBracket<'a> {
    pub fn new(basis: &'a F4E6Basis, coeffs: TitsCoefficients) -> Self {
        let f = basis.f4_structure_constants();
        let alpha = (0..26 * 26).into_par_iter().map(|k| basis.alpha(k / 26, k % 26)).collect();
        Self { basis, coeffs, f, alpha }
    }

    /// `[Ψ_A, Ψ_B]` as sparse coordinates (0-based indices).
    pub fn bracket(&self, a: usize, b: usize) -> Vec<(usize, ExactScalar)> {
        let mut acc = Accumulator::new();
        let two = ExactScalar::from_int(2);
        let (alpha, beta, gamma) = (
            ExactScalar::from_rational(self.coeffs.alpha.clone()),
            ExactScalar::from_rational(self.coeffs.beta.clone()),
            ExactScalar::from_rational(self.coeffs.gamma.clone()),
        );
        match (part(a), part(b)) {
            (Part::H(l), Part::H(m)) => {
                for n in 0..3 {
                    acc.add(n, &ExactScalar::from_int(2 * epsilon(l, m, n)));
                }
            }
            (Part::H(_), Part::Der(_)) | (Part::Der(_), Part::H(_)) => {}
            (Part::H(l), Part::T(i, x)) => {
                for k in 0..3 {
                    acc.add(t_index(k, x), &ExactScalar::from_int(2 * epsilon(l, i, k)));
                }
            }
            (Part::T(..), Part::H(_)) => return negate(self.bracket(b, a)),
            (Part::Der(i), Part::Der(j)) => {
                for (k, v) in &self.f[i][j] {
                    acc.add(J_START + k, v);
                }
            }
            (Part::Der(i), Part::T(h, x)) => {
                for c in 0..26 {
                    acc.add(t_index(h, c), &self.basis.c[i].get(c, x));
                }
            }
            (Part::T(..), Part::Der(_)) => return negate(self.bracket(b, a)),
            (Part::T(i, x), Part::T(k, y)) => {
                // (α/3)⟨j_x, j_y⟩ D_{h_i,h_k} with ⟨j_x,j_y⟩ = 2δ and D_{h_i,h_k} = 2ε_{ikn}H_n.
                if x == y {
                    let s = &alpha * &ExactScalar::ratio(4, 3);
                    for n in 0..3 {
                        acc.add(n, &(&s * &ExactScalar::from_int(epsilon(i, k, n))));
                    }
                }
                // -β⟨h_i,h_k⟩[L_x, L_y].
                if i == k {
                    for (kk, v) in self.alpha[x * 26 + y].iter().enumerate() {
                        acc.add(J_START + kk, &-(&beta * v));
                    }
                }
                // γ[h_i,h_k] ⊗ (j_x ⋆ j_y) with [h_i,h_k] = 2ε_{ikn}h_n.
                for n in 0..3 {
                    let e = epsilon(i, k, n);
                    if e == 0 {
                        continue;
                    }
                    let s = &(&gamma * &two) * &ExactScalar::from_int(e);
                    for c in 0..26 {
                        let star = self.basis.l[x].get(c, y);
                        acc.add(t_index(n, c), &(&s * &star));
                    }
                }
            }
        }
        acc.finish()
    }

    /// All constants `c_{AB}^C` in the raw basis.
    pub fn constants(&self) -> ExactConstants {
        let pairs: Vec<(usize, usize)> = (0..DIM).flat_map(|a| (a + 1..DIM).map(move |b| (a, b))).collect();
        let rows: Vec<(usize, usize, SparseRow<ExactScalar>)> =
            pairs.into_par_iter().map(|(a, b)| (a, b, self.bracket(a, b))).collect();
        let mut entries = vec![Vec::new(); DIM * DIM];
        for (a, b, row) in rows {
            entries[b * DIM + a] = negate(row.clone());
            entries[a * DIM + b] = row;
        }
        ExactConstants { n: DIM, entries }
    }
}

fn negate(v: Vec<(usize, ExactScalar)>) -> Vec<(usize, ExactScalar)> {
    v.into_iter().map(|(c, x)| (c, -x)).collect()
}

/// Scale factors turning the raw basis into the requested normalization.
pub fn normalization_scales(norm: Normalization) -> Vec<ExactScalar> {
    let mut s = vec![ExactScalar::one(); DIM];
    if norm == Normalization::Orthonormal {
        let inv_sqrt6 = &ExactScalar::sqrt6() * &ExactScalar::ratio(1, 6);
        s[..J_START].iter_mut().for_each(|x| *x = inv_sqrt6.clone());
    }
    s
}

/// Exact constants of the Tits algebra in the given normalization.
pub fn tits_constants(basis: &F4E6Basis, coeffs: TitsCoefficients, norm: Normalization) -> ExactConstants {
    let raw = TitsBracket::new(basis, coeffs).constants();
    match norm {
        Normalization::Raw => raw,
        Normalization::Orthonormal => raw.rescaled(&normalization_scales(norm)),
    }
}

/// Labels `Ψ1..Ψ133`.
pub fn labels() -> Vec<String> {
    (1..=DIM).map(|a| format!("Psi{a}")).collect()
}

/// The 133 matrices `M_A = ad(Ψ_A)` with the standard coefficients.
pub fn build_adjoint_133(basis: &F4E6Basis, norm: Normalization) -> GeneratorSet {
    build_adjoint_133_with(basis, TitsCoefficients::standard(), norm)
}

pub fn build_adjoint_133_with(basis: &F4E6Basis, coeffs: TitsCoefficients, norm: Normalization) -> GeneratorSet {
    let c = tits_constants(basis, coeffs, norm);
    let mats: Vec<SparseMatrix<ExactScalar>> = (0..DIM).into_par_iter().map(|a| c.ad(a)).collect();
    GeneratorSet::from_exact(Construction::Tits, labels(), mats)
}

/// Float structure constants of the bracket, for Jacobi scans.
pub fn tits_constants_float(basis: &F4E6Basis, coeffs: TitsCoefficients, norm: Normalization) -> StructureConstants {
    tits_constants(basis, coeffs, norm).embed()
}

/// Converts embedded constants back to the usual float container with a
/// residual field of zero.
pub fn as_complex(c: &ExactConstants) -> Vec<Vec<(usize, Complex64)>> {
    c.entries.iter().map(|r| r.iter().map(|(k, v)| (*k, v.embed())).collect()).collect()
}
