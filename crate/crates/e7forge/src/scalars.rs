//! Exact arithmetic in the number field Q(i, √2, √3).
//!
//! An [`ExactScalar`] stores eight rational coefficients over the basis
//! `{1, √2, √3, √6} ⊗ {1, i}`. Every generator entry used by this crate lives
//! in this field, so all constructions can be carried out without rounding and
//! embedded into `Complex64` once at the end.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Index of a radical in the real basis `{1, √2, √3, √6}`.
const RAD: [i64; 4] = [1, 2, 3, 6];

/// `PRODUCT[a][b] = (factor, index)` such that `√RAD[a]·√RAD[b] = factor·√RAD[index]`.
const PRODUCT: [[(i64, usize); 4]; 4] = [
    [(1, 0), (1, 1), (1, 2), (1, 3)],
    [(1, 1), (2, 0), (1, 3), (2, 2)],
    [(1, 2), (1, 3), (3, 0), (3, 1)],
    [(1, 3), (2, 2), (3, 1), (6, 0)],
];

/// Element of Q(i, √2, √3).
///
/// `re[k]` and `im[k]` are the coefficients of `√RAD[k]` in the real and
/// imaginary parts. Rationals are always kept reduced with positive
/// denominators (guaranteed by [`BigRational`]).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactScalar {
    re: [BigRational; 4],
    im: [BigRational; 4],
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl ExactScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_rational(q: BigRational) -> Self {
        let mut s = Self::default();
        s.re[0] = q;
        s
    }

    /// The rational `n/d`.
    pub fn ratio(n: i64, d: i64) -> Self {
        Self::from_rational(rat(n, d))
    }

    pub fn from_int(n: i64) -> Self {
        Self::ratio(n, 1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        let mut s = Self::default();
        s.im[0] = BigRational::one();
        s
    }

    pub fn sqrt2() -> Self {
        Self::radical(1, rat(1, 1))
    }

    pub fn sqrt3() -> Self {
        Self::radical(2, rat(1, 1))
    }

    pub fn sqrt6() -> Self {
        Self::radical(3, rat(1, 1))
    }

    /// `q·√RAD[k]` for `k` in `0..4`.
    fn radical(k: usize, q: BigRational) -> Self {
        let mut s = Self::default();
        s.re[k] = q;
        s
    }

    /// Build from explicit coefficient arrays over `{1, √2, √3, √6}`.
    pub fn from_coeffs(re: [BigRational; 4], im: [BigRational; 4]) -> Self {
        Self { re, im }
    }

    pub fn re_coeffs(&self) -> &[BigRational; 4] {
        &self.re
    }

    pub fn im_coeffs(&self) -> &[BigRational; 4] {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.iter().chain(self.im.iter()).all(|q| q.is_zero())
    }

    pub fn is_real(&self) -> bool {
        self.im.iter().all(|q| q.is_zero())
    }

    /// True when the value is a rational number.
    pub fn as_rational(&self) -> Option<&BigRational> {
        let rest_zero = self.re[1..].iter().chain(self.im.iter()).all(|q| q.is_zero());
        rest_zero.then_some(&self.re[0])
    }

    /// Complex conjugation.
    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: self.im.clone().map(|q| -q) }
    }

    /// Real part as an exact scalar.
    pub fn real_part(&self) -> Self {
        Self { re: self.re.clone(), im: Default::default() }
    }

    /// Imaginary part (coefficient of `i`) as an exact real scalar.
    pub fn imag_part(&self) -> Self {
        Self { re: self.im.clone(), im: Default::default() }
    }

    /// The Galois automorphism `√2 ↦ -√2` (so `√6 ↦ -√6`).
    fn flip2(&self) -> Self {
        let f = |c: &[BigRational; 4]| [c[0].clone(), -c[1].clone(), c[2].clone(), -c[3].clone()];
        Self { re: f(&self.re), im: f(&self.im) }
    }

    /// The Galois automorphism `√3 ↦ -√3` (so `√6 ↦ -√6`).
    fn flip3(&self) -> Self {
        let f = |c: &[BigRational; 4]| [c[0].clone(), c[1].clone(), -c[2].clone(), -c[3].clone()];
        Self { re: f(&self.re), im: f(&self.im) }
    }

    /// Multiplicative inverse.
    ///
    /// Uses the tower of norms `a·σ₂(a)` (fixed by `σ₂`), then `σ₃`, then complex
    /// conjugation, which lands in Q.
    pub fn invert(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let s2 = self.flip2();
        let b = self * &s2;
        let s3 = b.flip3();
        let c = &b * &s3;
        let cc = c.conj();
        let d = &c * &cc;
        let n = d.as_rational().expect("field norm is rational").clone();
        let num = &(&s2 * &s3) * &cc;
        Ok(num.scale(&n.recip()))
    }

    /// Multiply every coefficient by a rational.
    pub fn scale(&self, q: &BigRational) -> Self {
        Self { re: self.re.clone().map(|c| c * q), im: self.im.clone().map(|c| c * q) }
    }

    /// Exact square root of a non-negative rational, when it lies in Q(√2, √3).
    ///
    /// Returns `None` if the square-free part of the rational is not one of
    /// `1, 2, 3, 6`.
    pub fn sqrt_rational(q: &BigRational) -> Option<Self> {
        if q.is_negative() {
            return None;
        }
        if q.is_zero() {
            return Some(Self::zero());
        }
        // sqrt(n/d) = sqrt(n·d)/d
        let m = q.numer() * q.denom();
        for (k, r) in RAD.iter().enumerate() {
            let r = BigInt::from(*r);
            if (&m % &r).is_zero() {
                let t = &m / &r;
                let s = t.sqrt();
                if &s * &s == t {
                    return Some(Self::radical(k, BigRational::new(s, q.denom().clone())));
                }
            }
        }
        None
    }

    /// Float embedding, correctly rounded up to the error of the stored radical
    /// approximations (well below one ulp).
    pub fn embed(&self) -> Complex64 {
        let part = |c: &[BigRational; 4]| -> f64 {
            let r = radicals();
            let mut acc = c[0].clone();
            for k in 1..4 {
                if !c[k].is_zero() {
                    acc += &c[k] * &r[k - 1];
                }
            }
            acc.to_f64().unwrap_or(f64::NAN)
        };
        Complex64::new(part(&self.re), part(&self.im))
    }

    /// Exact square root of a non-negative rational scalar, used for generator
    /// normalization. Any input whose root leaves the field reports
    /// [`Error::ExactFieldOverflow`].
    pub fn sqrt_exact(&self) -> Result<Self> {
        let q = self.as_rational().ok_or_else(|| Error::ExactFieldOverflow(format!("sqrt of non-rational {self}")))?;
        Self::sqrt_rational(q).ok_or_else(|| Error::ExactFieldOverflow(format!("sqrt({q}) leaves Q(i,√2,√3)")))
    }
}

/// High precision rational approximations of √2, √3 and √6 (error below 2⁻²⁵⁶).
fn radicals() -> &'static [BigRational; 3] {
    static CELL: OnceLock<[BigRational; 3]> = OnceLock::new();
    CELL.get_or_init(|| {
        let bits = 256u32;
        let scale = BigInt::one() << (2 * bits);
        let den = BigInt::one() << bits;
        [2, 3, 6].map(|r| BigRational::new((&scale * BigInt::from(r)).sqrt(), den.clone()))
    })
}

impl Add<&ExactScalar> for &ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&ExactScalar> for &ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

/// Nonzero terms as `(radical index, imaginary flag, coefficient)`.
fn terms(s: &ExactScalar) -> Vec<(usize, bool, &BigRational)> {
    s.re.iter()
        .enumerate()
        .map(|(k, c)| (k, false, c))
        .chain(s.im.iter().enumerate().map(|(k, c)| (k, true, c)))
        .filter(|(_, _, c)| !c.is_zero())
        .collect()
}

impl Mul<&ExactScalar> for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        let mut out = ExactScalar::default();
        let lhs_terms = terms(self);
        if lhs_terms.is_empty() {
            return out;
        }
        let rhs_terms = terms(rhs);
        for &(ka, ia, ca) in &lhs_terms {
            for &(kb, ib, cb) in &rhs_terms {
                let (f, k) = PRODUCT[ka][kb];
                let mut v = ca * cb;
                if f != 1 {
                    v *= BigInt::from(f);
                }
                if ia && ib {
                    v = -v;
                }
                if ia ^ ib {
                    out.im[k] += v;
                } else {
                    out.re[k] += v;
                }
            }
        }
        out
    }
}

impl Div<&ExactScalar> for &ExactScalar {
    type Output = ExactScalar;
    /// Panics on division by zero; use [`ExactScalar::invert`] for a fallible
    /// variant.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &ExactScalar) -> ExactScalar {
        self * &rhs.invert().expect("division by zero ExactScalar")
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar { re: self.re.clone().map(|q| -q), im: self.im.clone().map(|q| -q) }
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar { re: self.re.map(|q| -q), im: self.im.map(|q| -q) }
    }
}

impl AddAssign<&ExactScalar> for ExactScalar {
    fn add_assign(&mut self, rhs: &ExactScalar) {
        for k in 0..4 {
            if !rhs.re[k].is_zero() {
                self.re[k] += &rhs.re[k];
            }
            if !rhs.im[k].is_zero() {
                self.im[k] += &rhs.im[k];
            }
        }
    }
}

impl SubAssign<&ExactScalar> for ExactScalar {
    fn sub_assign(&mut self, rhs: &ExactScalar) {
        for k in 0..4 {
            if !rhs.re[k].is_zero() {
                self.re[k] -= &rhs.re[k];
            }
            if !rhs.im[k].is_zero() {
                self.im[k] -= &rhs.im[k];
            }
        }
    }
}

impl MulAssign<&ExactScalar> for ExactScalar {
    fn mul_assign(&mut self, rhs: &ExactScalar) {
        *self = &*self * rhs;
    }
}

macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl $tr<ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $f(self, rhs: ExactScalar) -> ExactScalar {
                <&ExactScalar as $tr<&ExactScalar>>::$f(&self, &rhs)
            }
        }
        impl $tr<&ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $f(self, rhs: &ExactScalar) -> ExactScalar {
                <&ExactScalar as $tr<&ExactScalar>>::$f(&self, rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

/// Which operation [`exs_arith`] performs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Exact field arithmetic in canonical reduced form.
pub fn exs_arith(a: &ExactScalar, b: &ExactScalar, which: ArithOp) -> ExactScalar {
    match which {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
    }
}

/// Exact inverse; fails with [`Error::DivisionByZero`] on zero.
pub fn exs_invert(a: &ExactScalar) -> Result<ExactScalar> {
    a.invert()
}

/// Complex floating-point embedding.
pub fn exs_embed(a: &ExactScalar) -> Complex64 {
    a.embed()
}

impl fmt::Display for ExactScalar {
    /// Renders as `p0/q0,p1/q1,p2/q2,p3/q3;r0/s0,r1/s1,r2/s2,r3/s3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |c: &[BigRational; 4]| {
            c.iter().map(|q| format!("{}/{}", q.numer(), q.denom())).collect::<Vec<_>>().join(",")
        };
        write!(f, "{};{}", side(&self.re), side(&self.im))
    }
}

impl fmt::Debug for ExactScalar {
    /// Human-oriented rendering such as `1/2 + 1/3·√6 + i(-2·√2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const NAMES: [&str; 4] = ["", "·√2", "·√3", "·√6"];
        let side = |c: &[BigRational; 4]| {
            let terms: Vec<String> =
                c.iter().zip(NAMES).filter(|(q, _)| !q.is_zero()).map(|(q, n)| format!("{q}{n}")).collect();
            if terms.is_empty() {
                None
            } else {
                Some(terms.join(" + "))
            }
        };
        match (side(&self.re), side(&self.im)) {
            (None, None) => write!(f, "0"),
            (Some(r), None) => write!(f, "{r}"),
            (None, Some(i)) => write!(f, "i({i})"),
            (Some(r), Some(i)) => write!(f, "{r} + i({i})"),
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("invalid rational '{s}'"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

impl FromStr for ExactScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (re, im) = s.split_once(';').ok_or_else(|| Error::Parse(format!("missing ';' in scalar '{s}'")))?;
        let side = |part: &str| -> Result<[BigRational; 4]> {
            let items: Vec<&str> = part.split(',').collect();
            if items.len() != 4 {
                return Err(Error::Parse(format!("expected 4 coefficients in '{part}'")));
            }
            let mut out: [BigRational; 4] = Default::default();
            for (slot, item) in out.iter_mut().zip(items) {
                *slot = parse_rational(item)?;
            }
            Ok(out)
        };
        Ok(Self { re: side(re)?, im: side(im)? })
    }
}

/// Minimal ring interface shared by exact and floating-point scalars, so the
/// composition algebras and sparse matrices can be used with either.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn conj(&self) -> Self;
    fn from_i64(n: i64) -> Self;
    /// Complex embedding used when comparing against float computations.
    fn to_complex(&self) -> Complex64;
}

impl Ring for ExactScalar {
    fn zero() -> Self {
        ExactScalar::zero()
    }
    fn one() -> Self {
        ExactScalar::one()
    }
    fn is_zero(&self) -> bool {
        ExactScalar::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        ExactScalar::conj(self)
    }
    fn from_i64(n: i64) -> Self {
        ExactScalar::from_int(n)
    }
    fn to_complex(&self) -> Complex64 {
        self.embed()
    }
}

impl Ring for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        *self
    }
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn to_complex(&self) -> Complex64 {
        Complex64::new(*self, 0.0)
    }
}

impl Ring for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
    fn to_complex(&self) -> Complex64 {
        *self
    }
}
