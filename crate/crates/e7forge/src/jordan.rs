//! The exceptional Jordan algebra J₃(O) of 3×3 hermitian octonionic matrices.

use std::sync::OnceLock;

use crate::composition_algebras::Octonion;
use crate::error::{Error, Result};
use crate::scalars::ExactScalar;

type O = Octonion<ExactScalar>;

/// Off-diagonal positions `(1,2), (1,3), (2,3)` in 0-based form.
pub const SLOTS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

/// Hermitian 3×3 octonionic matrix `[[a, o₁, o₂], [ō₁, b, o₃], [ō₂, ō₃, c]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct JordanMatrix {
    pub diag: [ExactScalar; 3],
    pub off: [O; 3],
}

fn slot_of(p: usize, q: usize) -> usize {
    SLOTS.iter().position(|&s| s == (p.min(q), p.max(q))).expect("off-diagonal position")
}

impl JordanMatrix {
    pub fn zero() -> Self {
        Self { diag: Default::default(), off: [O::zero(), O::zero(), O::zero()] }
    }

    pub fn identity() -> Self {
        Self::diagonal([ExactScalar::one(), ExactScalar::one(), ExactScalar::one()])
    }

    pub fn diagonal(diag: [ExactScalar; 3]) -> Self {
        Self { diag, ..Self::zero() }
    }

    /// Matrix with a single octonion `o` at slot `s` (and `ō` mirrored).
    pub fn off_diagonal(s: usize, o: O) -> Self {
        let mut m = Self::zero();
        m.off[s] = o;
        m
    }

    /// Entry `(p, q)` as an octonion.
    pub fn entry(&self, p: usize, q: usize) -> O {
        if p == q {
            let mut o = O::zero();
            o.coords[0] = self.diag[p].clone();
            o
        } else if p < q {
            self.off[slot_of(p, q)].clone()
        } else {
            self.off[slot_of(p, q)].conj()
        }
    }

    pub fn trace(&self) -> ExactScalar {
        &(&self.diag[0] + &self.diag[1]) + &self.diag[2]
    }

    pub fn add(&self, o: &Self) -> Self {
        Self {
            diag: std::array::from_fn(|k| &self.diag[k] + &o.diag[k]),
            off: std::array::from_fn(|k| self.off[k].add(&o.off[k])),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self {
            diag: std::array::from_fn(|k| &self.diag[k] - &o.diag[k]),
            off: std::array::from_fn(|k| self.off[k].sub(&o.off[k])),
        }
    }

    pub fn scale(&self, s: &ExactScalar) -> Self {
        Self { diag: std::array::from_fn(|k| &self.diag[k] * s), off: std::array::from_fn(|k| self.off[k].scale(s)) }
    }

    pub fn is_zero(&self) -> bool {
        self.diag.iter().all(|d| d.is_zero()) && self.off.iter().all(|o| o.is_zero())
    }

    /// Ordinary (non-associative) matrix product `xy`, returned as a full array.
    fn matmul(&self, y: &Self) -> [[O; 3]; 3] {
        let xe: [[O; 3]; 3] = std::array::from_fn(|p| std::array::from_fn(|q| self.entry(p, q)));
        let ye: [[O; 3]; 3] = std::array::from_fn(|p| std::array::from_fn(|q| y.entry(p, q)));
        std::array::from_fn(|p| {
            std::array::from_fn(|q| {
                let mut acc = O::zero();
                for k in 0..3 {
                    if !xe[p][k].is_zero() && !ye[k][q].is_zero() {
                        acc = acc.add(&xe[p][k].mul(&ye[k][q]));
                    }
                }
                acc
            })
        })
    }
}

/// Jordan product `x∘y = (xy + yx)/2`.
pub fn jordan_mul(x: &JordanMatrix, y: &JordanMatrix) -> JordanMatrix {
    let a = x.matmul(y);
    let b = y.matmul(x);
    let half = ExactScalar::ratio(1, 2);
    JordanMatrix {
        diag: std::array::from_fn(|k| &(&a[k][k].coords[0] + &b[k][k].coords[0]) * &half),
        off: std::array::from_fn(|s| {
            let (p, q) = SLOTS[s];
            a[p][q].add(&b[p][q]).scale(&half)
        }),
    }
}

/// Trace form `⟨x, y⟩ = tr(x∘y)`.
pub fn trace_form(x: &JordanMatrix, y: &JordanMatrix) -> ExactScalar {
    let mut acc = ExactScalar::zero();
    for k in 0..3 {
        acc += &(&x.diag[k] * &y.diag[k]);
    }
    let two = ExactScalar::from_int(2);
    for s in 0..3 {
        acc += &(&two * &x.off[s].inner(&y.off[s]));
    }
    acc
}

/// `x⋆y = x∘y - ⅓⟨x,y⟩I` on traceless matrices.
pub fn star(x: &JordanMatrix, y: &JordanMatrix) -> Result<JordanMatrix> {
    if !x.trace().is_zero() || !y.trace().is_zero() {
        return Err(Error::NotTraceless);
    }
    let third = &trace_form(x, y) * &ExactScalar::ratio(1, 3);
    Ok(jordan_mul(x, y).sub(&JordanMatrix::identity().scale(&third)))
}

/// Freudenthal product
/// `x▷y = x∘y - ½tr(x)y - ½tr(y)x + ½tr(x)tr(y)I - ½tr(x∘y)I`.
pub fn freudenthal(x: &JordanMatrix, y: &JordanMatrix) -> JordanMatrix {
    let half = ExactScalar::ratio(1, 2);
    let tx = x.trace();
    let ty = y.trace();
    let id = JordanMatrix::identity();
    let scalar = &(&(&tx * &ty) - &trace_form(x, y)) * &half;
    jordan_mul(x, y).sub(&y.scale(&(&tx * &half))).sub(&x.scale(&(&ty * &half))).add(&id.scale(&scalar))
}

/// Determinant form
/// `Det(x,y,z) = ⅓tr(x∘y∘z) - ⅙(tr x tr(y∘z) + tr y tr(x∘z) + tr z tr(x∘y)) + ⅙ tr x tr y tr z`.
pub fn det_form(x: &JordanMatrix, y: &JordanMatrix, z: &JordanMatrix) -> ExactScalar {
    let (tx, ty, tz) = (x.trace(), y.trace(), z.trace());
    let xyz = trace_form(&jordan_mul(x, y), z);
    let mixed = &(&(&tx * &trace_form(y, z)) + &(&ty * &trace_form(x, z))) + &(&tz * &trace_form(x, y));
    let triple = &(&tx * &ty) * &tz;
    &(&(&xyz * &ExactScalar::ratio(1, 3)) - &(&mixed * &ExactScalar::ratio(1, 6))) + &(&triple * &ExactScalar::ratio(1, 6))
}

/// The fixed 27-element basis with `tr(j_α∘j_β) = 2δ_αβ`.
///
/// Ordering (1-based labels):
/// - `j₁ = diag(1,-1,0)`
/// - `j₂..j₉` the octonion units `e₀..e₇` at slot `(1,2)`
/// - `j₁₀..j₁₇` the units at slot `(1,3)`
/// - `j₁₈ = diag(1,1,-2)/√3`
/// - `j₁₉..j₂₆` the units at slot `(2,3)`
/// - `j₂₇ = √(2/3)·I`
#[derive(Clone, Debug)]
pub struct JordanBasis {
    pub elements: Vec<JordanMatrix>,
    pub tau: i64,
}

impl JordanBasis {
    pub const DIM: usize = 27;

    pub fn new() -> Self {
        let e = ExactScalar::from_int;
        let mut elements = vec![JordanMatrix::diagonal([e(1), e(-1), e(0)])];
        let unit_at = |s: usize, u: usize| JordanMatrix::off_diagonal(s, O::unit(u));
        elements.extend((0..8).map(|u| unit_at(0, u)));
        elements.extend((0..8).map(|u| unit_at(1, u)));
        let inv_sqrt3 = ExactScalar::sqrt3() * ExactScalar::ratio(1, 3);
        elements.push(JordanMatrix::diagonal([e(1), e(1), e(-2)]).scale(&inv_sqrt3));
        elements.extend((0..8).map(|u| unit_at(2, u)));
        let sqrt_two_thirds = ExactScalar::sqrt6() * ExactScalar::ratio(1, 3);
        elements.push(JordanMatrix::identity().scale(&sqrt_two_thirds));
        Self { elements, tau: 2 }
    }

    /// Shared instance.
    pub fn standard() -> &'static JordanBasis {
        static CELL: OnceLock<JordanBasis> = OnceLock::new();
        CELL.get_or_init(JordanBasis::new)
    }

    /// Coordinates `ĵ^μ(x) = tr(x∘j_μ)/τ`.
    pub fn coords(&self, x: &JordanMatrix) -> Vec<ExactScalar> {
        let inv_tau = ExactScalar::ratio(1, self.tau);
        self.elements.iter().map(|b| &trace_form(x, b) * &inv_tau).collect()
    }

    pub fn from_coords(&self, v: &[ExactScalar]) -> JordanMatrix {
        self.elements
            .iter()
            .zip(v)
            .filter(|(_, c)| !c.is_zero())
            .fold(JordanMatrix::zero(), |acc, (b, c)| acc.add(&b.scale(c)))
    }

    /// Gram matrix `tr(j_α∘j_β)`.
    pub fn gram(&self) -> Vec<Vec<ExactScalar>> {
        self.elements.iter().map(|a| self.elements.iter().map(|b| trace_form(a, b)).collect()).collect()
    }

    /// Label `j<1-based index>`.
    pub fn label(index: usize) -> String {
        format!("j{}", index + 1)
    }
}

impl Default for JordanBasis {
    fn default() -> Self {
        Self::new()
    }
}
