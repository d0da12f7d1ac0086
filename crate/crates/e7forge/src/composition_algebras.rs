//! Quaternions and octonions over any [`Ring`].
//!
//! The octonion table is fixed by the oriented Fano triples
//! `(1,2,3), (1,4,5), (2,4,6), (3,4,7), (2,5,7), (6,1,7), (3,6,5)`:
//! for each triple `(a,b,c)` and its cyclic shifts `e_a e_b = e_c` and
//! `e_b e_a = -e_c`, while `e_a e_a = -1`.

use std::sync::OnceLock;

use crate::scalars::{ExactScalar, Ring};

/// Oriented lines of the Fano plane defining the octonion product.
pub const FANO_TRIPLES: [(usize, usize, usize); 7] =
    [(1, 2, 3), (1, 4, 5), (2, 4, 6), (3, 4, 7), (2, 5, 7), (6, 1, 7), (3, 6, 5)];

/// `table()[a][b] = (sign, c)` with `e_a e_b = sign · e_c`.
#[allow(clippy::needless_range_loop)]
pub fn octonion_table() -> &'static [[(i8, usize); 8]; 8] {
    static TABLE: OnceLock<[[(i8, usize); 8]; 8]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [[(0i8, 0usize); 8]; 8];
        for (a, row) in t.iter_mut().enumerate() {
            row[0] = (1, a);
        }
        for b in 0..8 {
            t[0][b] = (1, b);
        }
        for a in 1..8 {
            t[a][a] = (-1, 0);
        }
        for &(a, b, c) in &FANO_TRIPLES {
            for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
                t[x][y] = (1, z);
                t[y][x] = (-1, z);
            }
        }
        t
    })
}

/// Quaternion `c₀ + c₁h₁ + c₂h₂ + c₃h₃` with `h₁h₂ = h₃` cyclically.
#[derive(Clone, Debug, PartialEq)]
pub struct Quaternion<T: Ring = ExactScalar> {
    pub coords: [T; 4],
}

/// Octonion `c₀ + Σ c_k e_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Octonion<T: Ring = ExactScalar> {
    pub coords: [T; 8],
}

impl<T: Ring> Quaternion<T> {
    pub fn new(coords: [T; 4]) -> Self {
        Self { coords }
    }

    pub fn zero() -> Self {
        Self { coords: std::array::from_fn(|_| T::zero()) }
    }

    /// Basis unit `h_k` (`h₀ = 1`).
    pub fn unit(k: usize) -> Self {
        let mut q = Self::zero();
        q.coords[k] = T::one();
        q
    }

    pub fn add(&self, o: &Self) -> Self {
        Self { coords: std::array::from_fn(|k| self.coords[k].add(&o.coords[k])) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self { coords: std::array::from_fn(|k| self.coords[k].sub(&o.coords[k])) }
    }

    pub fn scale(&self, s: &T) -> Self {
        Self { coords: std::array::from_fn(|k| self.coords[k].mul(s)) }
    }

    pub fn conj(&self) -> Self {
        Self { coords: std::array::from_fn(|k| if k == 0 { self.coords[0].clone() } else { self.coords[k].neg() }) }
    }

    #[allow(clippy::needless_range_loop)]
    pub fn mul(&self, o: &Self) -> Self {
        // The quaternions are the subalgebra spanned by e₀..e₃ in the octonion table.
        let t = octonion_table();
        let mut out = Self::zero();
        for a in 0..4 {
            if self.coords[a].is_zero() {
                continue;
            }
            for b in 0..4 {
                if o.coords[b].is_zero() {
                    continue;
                }
                let (s, c) = t[a][b];
                let v = self.coords[a].mul(&o.coords[b]);
                out.coords[c] = if s > 0 { out.coords[c].add(&v) } else { out.coords[c].sub(&v) };
            }
        }
        out
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    /// `Re(x̄ y)`.
    pub fn inner(&self, o: &Self) -> T {
        self.coords.iter().zip(&o.coords).fold(T::zero(), |acc, (a, b)| acc.add(&a.conj().mul(b)))
    }

    pub fn is_imaginary(&self) -> bool {
        self.coords[0].is_zero()
    }
}

/// The derivation `D_{h₁,h₂} = [L_{h₁}, L_{h₂}] + [R_{h₁}, R_{h₂}]` of the
/// quaternions, evaluated on `x`.
pub fn quat_derivation<T: Ring>(h1: &Quaternion<T>, h2: &Quaternion<T>, x: &Quaternion<T>) -> Quaternion<T> {
    let left = h1.mul(&h2.mul(x)).sub(&h2.mul(&h1.mul(x)));
    let right = x.mul(h2).mul(h1).sub(&x.mul(h1).mul(h2));
    left.add(&right)
}

/// `H_L(h) = ad_{h_L}(h) = [h_L, h]`.
pub fn quat_ad<T: Ring>(l: usize, h: &Quaternion<T>) -> Quaternion<T> {
    Quaternion::unit(l).commutator(h)
}

impl<T: Ring> Octonion<T> {
    pub fn new(coords: [T; 8]) -> Self {
        Self { coords }
    }

    pub fn zero() -> Self {
        Self { coords: std::array::from_fn(|_| T::zero()) }
    }

    /// Basis unit `e_k` (`e₀ = 1`).
    pub fn unit(k: usize) -> Self {
        let mut o = Self::zero();
        o.coords[k] = T::one();
        o
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        Self { coords: std::array::from_fn(|k| self.coords[k].add(&o.coords[k])) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self { coords: std::array::from_fn(|k| self.coords[k].sub(&o.coords[k])) }
    }

    pub fn neg(&self) -> Self {
        Self { coords: std::array::from_fn(|k| self.coords[k].neg()) }
    }

    pub fn scale(&self, s: &T) -> Self {
        Self { coords: std::array::from_fn(|k| self.coords[k].mul(s)) }
    }

    /// Octonion conjugation: negates `e₁..e₇` (coefficients are not conjugated).
    pub fn conj(&self) -> Self {
        Self { coords: std::array::from_fn(|k| if k == 0 { self.coords[0].clone() } else { self.coords[k].neg() }) }
    }

    #[allow(clippy::needless_range_loop)]
    pub fn mul(&self, o: &Self) -> Self {
        let t = octonion_table();
        let mut out = Self::zero();
        for a in 0..8 {
            if self.coords[a].is_zero() {
                continue;
            }
            for b in 0..8 {
                if o.coords[b].is_zero() {
                    continue;
                }
                let (s, c) = t[a][b];
                let v = self.coords[a].mul(&o.coords[b]);
                out.coords[c] = if s > 0 { out.coords[c].add(&v) } else { out.coords[c].sub(&v) };
            }
        }
        out
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    /// Bilinear inner product `Re(x̄ y) = Σ x_k y_k`.
    pub fn inner(&self, o: &Self) -> T {
        self.coords.iter().zip(&o.coords).fold(T::zero(), |acc, (a, b)| acc.add(&a.mul(b)))
    }

    /// `Re(x)`.
    pub fn real(&self) -> T {
        self.coords[0].clone()
    }

    pub fn is_imaginary(&self) -> bool {
        self.coords[0].is_zero()
    }
}

/// Octonion product under the fixed Cayley table.
pub fn oct_mul<T: Ring>(x: &Octonion<T>, y: &Octonion<T>) -> Octonion<T> {
    x.mul(y)
}

/// `[x, y, z] = (xy)z - x(yz)`.
pub fn associator<T: Ring>(x: &Octonion<T>, y: &Octonion<T>, z: &Octonion<T>) -> Octonion<T> {
    x.mul(y).mul(z).sub(&x.mul(&y.mul(z)))
}

/// The inner derivation `D_{a,b} = [L_a, L_b] + [L_a, R_b] + [R_a, R_b]` of the
/// octonions, evaluated on `x`.
pub fn oct_derivation<T: Ring>(a: &Octonion<T>, b: &Octonion<T>, x: &Octonion<T>) -> Octonion<T> {
    let ll = a.mul(&b.mul(x)).sub(&b.mul(&a.mul(x)));
    let lr = a.mul(&x.mul(b)).sub(&a.mul(x).mul(b));
    let rr = x.mul(b).mul(a).sub(&x.mul(a).mul(b));
    ll.add(&lr).add(&rr)
}
