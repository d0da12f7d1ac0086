//! Exact group volumes from the Macdonald formula, the closed-form simplex
//! integral `I(a, b, c)` with a Gauss–Legendre oracle, and the covering factor
//! of the tits Euler chart.

use std::fmt;
use std::ops::{Div, Mul};

use gauss_quad::GaussLegendre;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// `q · √2^a · √3^b · π^n` with `a, b ∈ {0, 1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicVolume {
    pub rational: BigRational,
    pub sqrt2: u8,
    pub sqrt3: u8,
    pub pi: i32,
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

impl SymbolicVolume {
    pub fn new(rational: BigRational, sqrt2: u32, sqrt3: u32, pi: i32) -> Self {
        let mut q = rational;
        if sqrt2 >= 2 {
            q *= int(2).pow((sqrt2 / 2) as i32);
        }
        if sqrt3 >= 2 {
            q *= int(3).pow((sqrt3 / 2) as i32);
        }
        Self { rational: q, sqrt2: (sqrt2 % 2) as u8, sqrt3: (sqrt3 % 2) as u8, pi }
    }

    pub fn rational(q: BigRational) -> Self {
        Self::new(q, 0, 0, 0)
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(int(n))
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    pub fn sqrt2() -> Self {
        Self::new(int(1), 1, 0, 0)
    }

    pub fn sqrt3() -> Self {
        Self::new(int(1), 0, 1, 0)
    }

    pub fn pi_pow(n: i32) -> Self {
        Self::new(int(1), 0, 0, n)
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero()
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Exact quotient; fails only on a zero divisor.
    pub fn checked_div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // 1/√2 = √2/2 and 1/√3 = √3/3.
        let mut q = &self.rational / &o.rational;
        if o.sqrt2 == 1 {
            q /= int(2);
        }
        if o.sqrt3 == 1 {
            q /= int(3);
        }
        Ok(Self::new(q, (self.sqrt2 + o.sqrt2) as u32, (self.sqrt3 + o.sqrt3) as u32, self.pi - o.pi))
    }

    /// The rational value when no radicals and no π remain.
    pub fn as_rational(&self) -> Option<&BigRational> {
        (self.sqrt2 == 0 && self.sqrt3 == 0 && self.pi == 0).then_some(&self.rational)
    }

    pub fn to_f64(&self) -> f64 {
        let mut v = self.rational.to_f64().unwrap_or(f64::NAN);
        if self.sqrt2 == 1 {
            v *= std::f64::consts::SQRT_2;
        }
        if self.sqrt3 == 1 {
            v *= 3f64.sqrt();
        }
        v * std::f64::consts::PI.powi(self.pi)
    }
}

impl Mul for &SymbolicVolume {
    type Output = SymbolicVolume;
    fn mul(self, o: &SymbolicVolume) -> SymbolicVolume {
        SymbolicVolume::new(
            &self.rational * &o.rational,
            (self.sqrt2 + o.sqrt2) as u32,
            (self.sqrt3 + o.sqrt3) as u32,
            self.pi + o.pi,
        )
    }
}

impl Mul for SymbolicVolume {
    type Output = SymbolicVolume;
    fn mul(self, o: SymbolicVolume) -> SymbolicVolume {
        &self * &o
    }
}

impl Div for &SymbolicVolume {
    type Output = SymbolicVolume;
    fn div(self, o: &SymbolicVolume) -> SymbolicVolume {
        self.checked_div(o).expect("division by a zero volume")
    }
}

/// Prime factorization of a positive integer by trial division.
fn factorize(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        let mut e = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p += 1;
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    out
}

fn render_factors(n: &BigInt) -> String {
    let f = factorize(n);
    if f.is_empty() {
        return "1".into();
    }
    f.iter().map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") }).collect::<Vec<_>>().join("·")
}

impl fmt::Display for SymbolicVolume {
    /// Renders e.g. `√2·2^23/(3^22·5^10·7^6·11^3·13^2·17) · π^70`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rational.is_negative() {
            f.write_str("-")?;
        }
        let mut prefix = String::new();
        if self.sqrt2 == 1 {
            prefix.push_str("√2·");
        }
        if self.sqrt3 == 1 {
            prefix.push_str("√3·");
        }
        let num = self.rational.numer();
        let den = self.rational.denom();
        let num_s = render_factors(num);
        let body = if prefix.is_empty() || num_s != "1" { format!("{prefix}{num_s}") } else { prefix.trim_end_matches('·').to_string() };
        f.write_str(&body)?;
        if !den.is_one() {
            let d = render_factors(den);
            if factorize(den).len() > 1 {
                write!(f, "/({d})")?;
            } else {
                write!(f, "/{d}")?;
            }
        }
        match self.pi {
            0 => Ok(()),
            1 => f.write_str(" · π"),
            n => write!(f, " · π^{n}"),
        }
    }
}

impl Serialize for SymbolicVolume {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `Vol(Sⁿ) = 2π^{(n+1)/2}/Γ((n+1)/2)` for the unit sphere.
pub fn sphere_volume(n: u32) -> SymbolicVolume {
    if n % 2 == 1 {
        let k = (n as u64).div_ceil(2);
        SymbolicVolume::new(BigRational::new(BigInt::from(2), factorial(k - 1)), 0, 0, k as i32)
    } else {
        // Γ(m + ½) = (2m)! √π / (4^m m!), so the √π cancels.
        let m = n as u64 / 2;
        let num = BigInt::from(2) * BigInt::from(4).pow(m as u32) * factorial(m);
        SymbolicVolume::new(BigRational::new(num, factorial(2 * m)), 0, 0, m as i32)
    }
}

/// Data entering the Macdonald formula.
#[derive(Clone, Debug)]
pub struct GroupVolumeDescriptor {
    pub name: &'static str,
    /// Volume of the maximal torus.
    pub torus_volume: SymbolicVolume,
    /// Dimensions of the spheres in the rational cohomology.
    pub sphere_dims: Vec<u32>,
    /// Number of coroots.
    pub coroot_count: u32,
    /// Common length of the coroots.
    pub coroot_norm: SymbolicVolume,
}

impl GroupVolumeDescriptor {
    pub fn e7() -> Self {
        Self {
            name: "E7",
            torus_volume: SymbolicVolume::sqrt2(),
            sphere_dims: vec![3, 11, 15, 19, 23, 27, 35],
            coroot_count: 126,
            coroot_norm: SymbolicVolume::sqrt2(),
        }
    }

    pub fn e6() -> Self {
        Self {
            name: "E6",
            torus_volume: SymbolicVolume::sqrt3(),
            sphere_dims: vec![3, 9, 11, 15, 17, 23],
            coroot_count: 72,
            coroot_norm: SymbolicVolume::sqrt2(),
        }
    }

    pub fn so8() -> Self {
        Self {
            name: "SO8",
            torus_volume: SymbolicVolume::integer(2),
            sphere_dims: vec![3, 7, 7, 11],
            coroot_count: 24,
            coroot_norm: SymbolicVolume::sqrt2(),
        }
    }

    /// Total dimension `Σ dᵢ`.
    pub fn dimension(&self) -> u32 {
        self.sphere_dims.iter().sum()
    }
}

/// `Vol = V_T · ∏ Vol(S^{dᵢ}) · ∏ |α∨|`.
pub fn macdonald_volume(d: &GroupVolumeDescriptor) -> SymbolicVolume {
    let spheres = d.sphere_dims.iter().fold(SymbolicVolume::one(), |acc, &n| &acc * &sphere_volume(n));
    &(&d.torus_volume * &spheres) * &d.coroot_norm.pow(d.coroot_count)
}

/// `g / h` exactly.
pub fn quotient_volume(g: &SymbolicVolume, h: &SymbolicVolume) -> Result<SymbolicVolume> {
    g.checked_div(h)
}

/// `T_g = 2√6π`, the length of the `U(1)` orbit generated by `Y₁`.
pub fn u1_volume() -> SymbolicVolume {
    SymbolicVolume::new(int(2), 1, 1, 1)
}

/// `Vol(U) = Vol(E6)·Vol(U(1))/3` for `U = (E6 × U(1))/Z₃`.
pub fn u_volume() -> SymbolicVolume {
    &(&macdonald_volume(&GroupVolumeDescriptor::e6()) * &u1_volume()) * &SymbolicVolume::rational(BigRational::new(1.into(), 3.into()))
}

/// `Vol(E7/U)`.
pub fn e7_mod_u_volume() -> SymbolicVolume {
    quotient_volume(&macdonald_volume(&GroupVolumeDescriptor::e7()), &u_volume()).expect("nonzero")
}

/// Named volumes accepted by the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VolumeTarget {
    E7,
    E6,
    So8,
    U,
    E7ModU,
}

impl std::str::FromStr for VolumeTarget {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "E7" => Ok(Self::E7),
            "E6" => Ok(Self::E6),
            "SO8" => Ok(Self::So8),
            "U" => Ok(Self::U),
            "E7modU" => Ok(Self::E7ModU),
            other => Err(Error::InvalidArgument(format!("unknown volume target {other:?}"))),
        }
    }
}

impl VolumeTarget {
    pub const ALL: [VolumeTarget; 5] = [Self::E7, Self::E6, Self::So8, Self::U, Self::E7ModU];

    pub fn name(self) -> &'static str {
        match self {
            Self::E7 => "E7",
            Self::E6 => "E6",
            Self::So8 => "SO8",
            Self::U => "U",
            Self::E7ModU => "E7modU",
        }
    }

    pub fn volume(self) -> SymbolicVolume {
        match self {
            Self::E7 => macdonald_volume(&GroupVolumeDescriptor::e7()),
            Self::E6 => macdonald_volume(&GroupVolumeDescriptor::e6()),
            Self::So8 => macdonald_volume(&GroupVolumeDescriptor::so8()),
            Self::U => u_volume(),
            Self::E7ModU => e7_mod_u_volume(),
        }
    }
}

/// `I(a,b,c) = ∫_{0≤z≤y≤x≤1} (x−y)^{a−1}(y−z)^{b−1}(x−z)^{c−1}
///           = Γ(a)Γ(b)/Γ(a+b) · 1/((a+b+c)(a+b+c−1))`.
pub fn integral_closed(a: u32, b: u32, c: u32) -> Result<BigRational> {
    if a == 0 || b == 0 || c == 0 {
        return Err(Error::InvalidArgument("I(a,b,c) needs a, b, c ≥ 1".into()));
    }
    let (a, b, c) = (a as u64, b as u64, c as u64);
    let beta = BigRational::new(factorial(a - 1) * factorial(b - 1), factorial(a + b - 1));
    let s = a + b + c;
    Ok(beta / int((s * (s - 1)) as i64))
}

/// Tensorized Gauss–Legendre estimate of `I(a,b,c)` with `n` nodes per
/// axis, on the substitution `y = x·u`, `z = y·v`.
pub fn integral_quadrature(a: u32, b: u32, c: u32, n: usize) -> Result<f64> {
    if a == 0 || b == 0 || c == 0 {
        return Err(Error::InvalidArgument("I(a,b,c) needs a, b, c ≥ 1".into()));
    }
    let f = |x: f64, y: f64, z: f64| (x - y).powi(a as i32 - 1) * (y - z).powi(b as i32 - 1) * (x - z).powi(c as i32 - 1);
    simplex_quadrature(1.0, n, f)
}

/// `∫_{0≤z≤y≤x≤L} f(x,y,z)` by tensorized Gauss–Legendre with `n ≥ 2` nodes.
pub fn simplex_quadrature(len: f64, n: usize, f: impl Fn(f64, f64, f64) -> f64) -> Result<f64> {
    let rule = GaussLegendre::new(n).map_err(|e| Error::InvalidArgument(format!("quadrature order {n}: {e}")))?;
    // Nodes and weights on [0, 1].
    let nw: Vec<(f64, f64)> = rule.as_node_weight_pairs().iter().map(|&(x, w)| (0.5 * (x + 1.0), 0.5 * w)).collect();
    let mut total = 0.0;
    for &(s, ws) in &nw {
        let x = len * s;
        for &(u, wu) in &nw {
            let y = x * u;
            for &(v, wv) in &nw {
                let z = y * v;
                total += ws * wu * wv * x * y * f(x, y, z);
            }
        }
    }
    Ok(total * len)
}

/// `8·I(9,9,9)`, the integral of the tits density over its chart.
pub fn tits_density_integral() -> BigRational {
    int(8) * integral_closed(9, 9, 9).expect("valid arguments")
}

/// The Euler-chart volume `𝓘 = (T_g/3)·(Vol(E6)/Vol(SO(8)))·(1/(2√2))·I`,
/// computed with the full `x₁` range, or with it halved.
pub fn covering_integral(halved: bool) -> SymbolicVolume {
    let vol_e6 = macdonald_volume(&GroupVolumeDescriptor::e6());
    let vol_so8 = macdonald_volume(&GroupVolumeDescriptor::so8());
    let t_over_3 = &u1_volume() * &SymbolicVolume::rational(BigRational::new(1.into(), 3.into()));
    let jac = SymbolicVolume::one().checked_div(&(&SymbolicVolume::integer(2) * &SymbolicVolume::sqrt2())).expect("nonzero");
    let mut v = &(&(&t_over_3 * &(&vol_e6 / &vol_so8)) * &jac) * &SymbolicVolume::rational(tits_density_integral());
    if halved {
        v = &v * &SymbolicVolume::rational(BigRational::new(1.into(), 2.into()));
    }
    v
}

/// `𝓘 / Vol(E7/U)` as an exact rational (2 for the full chart, 1 after halving).
pub fn covering_check_with(halved: bool) -> Result<BigRational> {
    let ratio = quotient_volume(&covering_integral(halved), &e7_mod_u_volume())?;
    ratio
        .as_rational()
        .cloned()
        .ok_or_else(|| Error::NotRepresentable(format!("covering ratio {ratio} is not rational")))
}

pub fn covering_check() -> Result<BigRational> {
    covering_check_with(false)
}

/// Renders a rational as a factored fraction, e.g. `2/(3^5·5·11·13^2·17)`.
pub fn render_rational(q: &BigRational) -> String {
    SymbolicVolume::rational(q.clone()).to_string()
}
