//! Coordinate ranges of the 133 Euler parameters of the tits chart.
//!
//! `x₅₂, x₅₃, x₅₄` are the torus coordinates along `Y₂, Y₈₂, Y₉₉`; they are
//! given through `(x, y, z)` with `0 ≤ z ≤ y ≤ x ≤ π` and the substitution
//! `x = (√6x₅₂ - 2√3x₅₄)/3`, `y = (√3x₅₃ + √2x₅₂ + x₅₄)/√3`,
//! `z = (√3x₅₃ - √2x₅₂ - x₅₄)/√3`, whose inverse is listed in the notes.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

/// `√(2/3)`.
const SQRT_2_3: f64 = 0.816_496_580_927_726;

/// How an Euler parameter is bounded.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Bounds {
    Interval(f64, f64),
    /// `|x| ≤ x_on/√3`.
    Coupled { on: usize },
    /// Determined by the `(x, y, z)` simplex.
    Substituted,
}

/// One row of the range table (1-based index).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RangeEntry {
    pub index: usize,
    pub lower: &'static str,
    pub upper: &'static str,
    pub bounds: Bounds,
    pub note: &'static str,
}

/// The full table, ordered by index.
pub const RANGE_TABLE: [RangeEntry; 133] = [
    RangeEntry { index: 1, lower: "0", upper: "√(2/3)π", bounds: Bounds::Interval(0.0, SQRT_2_3 * PI) , note: "already halved by the identification x1 ~ x1 + T_g/6" },
    RangeEntry { index: 2, lower: "0", upper: "2π", bounds: Bounds::Interval(0.0, 2.0 * PI) , note: "" },
    RangeEntry { index: 3, lower: "0", upper: "2π", bounds: Bounds::Interval(0.0, 2.0 * PI) , note: "" },
    RangeEntry { index: 4, lower: "0", upper: "2π", bounds: Bounds::Interval(0.0, 2.0 * PI) , note: "" },
    RangeEntry { index: 5, lower: "0", upper: "π", bounds: Bounds::Interval(0.0, PI) , note: "" },
    RangeEntry { index: 6, lower: "-π/2", upper: "π/2", bounds: Bounds::Interval(-FRAC_PI_2, FRAC_PI_2) , note: "" },
    RangeEntry { index: 7, lower: "0", upper: "π/2", bounds: Bounds::Interval(0.0, FRAC_PI_2) , note: "" },
    RangeEntry { index: 8, lower: "0", upper: "π/2", bounds: Bounds::Interval(0.0, FRAC_PI_2) , note: "" },
    RangeEntry { index: 9, lower: "0", upper: "π", bounds: Bounds::Interval(0.0, PI) , note: "" },
    RangeEntry { index: 10, lower: "0", upper: "2π", bounds: Bounds::Interval(0.0, 2.0 * PI) , note: "" },
    RangeEntry { index: 11, lower: "0", upper: "2π", bounds: Bounds::Interval(0.0, 2.0 * PI) , note: "" },
    RangeEntry { index: 12, lower: "0", upper: "2π", bounds: Bounds::Interval(0.0, 2.0 * PI) , note: "" },
    RangeEntry { index: 13, lower: "0", upper: "π", bounds: Bounds::Interval(0.0, PI) , note: "" },
    RangeEntry { index: 14, lower: "-π/2", upper: "π/2", bounds: Bounds::Interval(-FRAC_PI_2, FRAC_PI_2) , note: "" },
    RangeEntry { index: 15, lower: "0", upper: "π/2", bounds: Bounds::Interval(0.0, FRAC_PI_2) , note: "" },
    RangeEntry { index: 16, lower: "0", upper: "π/2", bounds: Bounds::Interval(0.0, FRAC_PI_2) , note: "" },
    RangeEntry { index: 17, lower: "0", upper: "π", bounds: Bounds::Interval(0.0, PI) , note: "" },
    RangeEntry { index: 18, lower: "0", upper: "2π", bounds: Bounds::Interval(0.0, 2.0 * PI) , note: "" },
    RangeEntry { index: 19, lower: "0", upper: "2π", bounds: Bounds::Interval(0.0, 2.0 * PI) , note: "" },
    RangeEntry { index: 20, lower: "0", upper: "2π", bounds: Bounds::Interval(0.0, 2.0 * PI) , note: "" },
    RangeEntry { index: 21, lower: "0", upper: "π", bounds: Bounds::Interval(0.0, PI) , note: "" },
    RangeEntry { index: 22, lower: "-π/2", upper: "π/2", bounds: Bounds::Interval(-FRAC_PI_2, FRAC_PI_2) , note: "" },
    RangeEntry { index: 23, lower: "0", upper: "π/2", bounds: Bounds::Interval(0.0, FRAC_PI_2) , note: "" },
    RangeEntry { index: 24, lower: "0", upper: "π/2", bounds: Bounds::Interval(0.0, FRAC_PI_2) , note: "" },
    RangeEntry { index: 25, lower: "0", upper: "π", bounds: Bounds::Interval(0.0, PI) , note: "" },
    RangeEntry { index: 26, lower: "0", upper: "π", bounds: Bounds::Interval(0.0, PI) , note: "" },
    RangeEntry { index: 27, lower: "-x26/√3", upper: "x26/√3", bounds: Bounds::Coupled { on: 26 }, note: "|x27| ≤ x26/√3" },
    RangeEntry { index: 28, lower: "0", upper: "2π", bounds: Bounds::Interval(0.0, 2.0 * PI) , note: "" },
    RangeEntry { index: 29, lower: "0", upper: "2π", bounds: Bounds::Interval(0.0, 2.0 * PI) , note: "" },
    RangeEntry { index: 30, lower: "0", upper: "2π", bounds: Bounds::Interval(0.0, 2.0 * PI) , note: "" },
    RangeEntry { index: 31, lower: "0", upper: "π", bounds: Bounds::Interval(0.0, PI) , note: "" },
    RangeEntry { index: 32, lower: "-π/2", upper: "π/2", bounds: Bounds::Interval(-FRAC_PI_2, FRAC_PI_2) , note: "" },
    RangeEntry { index: 33, lower: "0", upper: "π/2", bounds: Bounds::Interval(0.0, FRAC_PI_2) , note: "" },
    RangeEntry { index: 34, lower: "0", upper: "π/2", bounds: Bounds::Interval(0.0, FRAC_PI_2) , note: "" },
    RangeEntry { index: 35, lower: "0", upper: "π", bounds: Bounds::Interval(0.0, PI) , note: "" },
    RangeEntry { index: 36, lower: "0", upper: "2π", bounds: Bounds::Interval(0.0, 2.0 * PI) , note: "" },
    RangeEntry { index: 37, lower: "0", upper: "2π", bounds: Bounds::Interval(0.0, 2.0 * PI) , note: "" },
    RangeEntry { index: 38, lower: "0", upper: "2π", bounds: Bounds::Interval(0.0, 2.0 * PI) , note: "" },
    RangeEntry { index: 39, lower: "0", upper: "π", bounds: Bounds::Interval(0.0, PI) , note: "" },
    RangeEntry { index: 40, lower: "-π/2", upper: "π/2", bounds: Bounds::Interval(-FRAC_PI_2, FRAC_PI_2) , note: "" },
    RangeEntry { index: 41, lower: "0", upper: "π/2", bounds: Bounds::Interval(0.0, FRAC_PI_2) , note: "" },
    RangeEntry { index: 42, lower: "0", upper: "π/2", bounds: Bounds::Interval(0.0, FRAC_PI_2) , note: "" },
    RangeEntry { index: 43, lower: "0", upper: "π", bounds: Bounds::Interval(0.0, PI) , note: "" },
    RangeEntry { index: 44, lower: "0", upper: "2π", bounds: Bounds::Interval(0.0, 2.0 * PI) , note: "" },
    RangeEntry { index: 45, lower: "0", upper: "2π", bounds: Bounds::Interval(0.0, 2.0 * PI) , note: "" },
    RangeEntry { index: 46, lower: "0", upper: "2π", bounds: Bounds::Interval(0.0, 2.0 * PI) , note: "" },
    RangeEntry { index: 47, lower: "0", upper: "π", bounds: Bounds::Interval(0.0, PI) , note: "" },
    RangeEntry { index: 48, lower: "-π/2", upper: "π/2", bounds: Bounds::Interval(-FRAC_PI_2, FRAC_PI_2) , note: "" },
    RangeEntry { index: 49, lower: "0", upper: "π/2", bounds: Bounds::Interval(0.0, FRAC_PI_2) , note: "" },
    RangeEntry { index: 50, lower: "0", upper: "π/2", bounds: Bounds::Interval(0.0, FRAC_PI_2) , note: "" },
    RangeEntry { index: 51, lower: "0", upper: "π", bounds: Bounds::Interval(0.0, PI) , note: "" },
    RangeEntry { index: 52, lower: "0 ≤ z ≤ y ≤ x ≤ π", upper: "0 ≤ z ≤ y ≤ x ≤ π", bounds: Bounds::Substituted, note: "x52 = (x + y - z)/√6" },
    RangeEntry { index: 53, lower: "0 ≤ z ≤ y ≤ x ≤ π", upper: "0 ≤ z ≤ y ≤ x ≤ π", bounds: Bounds::Substituted, note: "x53 = (y + z)/2" },
    RangeEntry { index: 54, lower: "0 ≤ z ≤ y ≤ x ≤ π", upper: "0 ≤ z ≤ y ≤ x ≤ π", bounds: Bounds::Substituted, note: "x54 = -x/√3 + (y - z)/(2√3)" },
    RangeEntry { index: 55, lower: "0", upper: "2√(2/3)π", bounds: Bounds::Interval(0.0, 2.0 * SQRT_2_3 * PI) , note: "" },
    RangeEntry { index: 56, lower: "0", upper: "2π", bounds: Bounds::Interval(0.0, 2.0 * PI) , note: "" },
    RangeEntry { index: 57, lower: "0", upper: "2π", bounds: Bounds::Interval(0.0, 2.0 * PI) , note: "" },
    RangeEntry { index: 58, lower: "0", upper: "2π", bounds: Bounds::Interval(0.0, 2.0 * PI) , note: "" },
    RangeEntry { index: 59, lower: "0", upper: "π", bounds: Bounds::Interval(0.0, PI) , note: "" },
    RangeEntry { index: 60, lower: "-π/2", upper: "π/2", bounds: Bounds::Interval(-FRAC_PI_2, FRAC_PI_2) , note: "" },
    RangeEntry { index: 61, lower: "0", upper: "π/2", bounds: Bounds::Interval(0.0, FRAC_PI_2) , note: "" },
    RangeEntry { index: 62, lower: "0", upper: "π/2", bounds: Bounds::Interval(0.0, FRAC_PI_2) , note: "" },
    RangeEntry { index: 63, lower: "0", upper: "π", bounds: Bounds::Interval(0.0, PI) , note: "" },
    RangeEntry { index: 64, lower: "0", upper: "2π", bounds: Bounds::Interval(0.0, 2.0 * PI) , note: "" },
    RangeEntry { index: 65, lower: "0", upper: "2π", bounds: Bounds::Interval(0.0, 2.0 * PI) , note: "" },
    RangeEntry { index: 66, lower: "0", upper: "2π", bounds: Bounds::Interval(0.0, 2.0 * PI) , note: "" },
    RangeEntry { index: 67, lower: "0", upper: "π", bounds: Bounds::Interval(0.0, PI) , note: "" },
    RangeEntry { index: 68, lower: "-π/2", upper: "π/2", bounds: Bounds::Interval(-FRAC_PI_2, FRAC_PI_2) , note: "" },
    RangeEntry { index: 69, lower: "0", upper: "π/2", bounds: Bounds::Interval(0.0, FRAC_PI_2) , note: "" },
    RangeEntry { index: 70, lower: "0", upper: "π/2", bounds: Bounds::Interval(0.0, FRAC_PI_2) , note: "" },
    RangeEntry { index: 71, lower: "0", upper: "π", bounds: Bounds::Interval(0.0, PI) , note: "" },
    RangeEntry { index: 72, lower: "0", upper: "2π", bounds: Bounds::Interval(0.0, 2.0 * PI) , note: "" },
    RangeEntry { index: 73, lower: "0", upper: "2π", bounds: Bounds::Interval(0.0, 2.0 * PI) , note: "" },
    RangeEntry { index: 74, lower: "0", upper: "2π", bounds: Bounds::Interval(0.0, 2.0 * PI) , note: "" },
    RangeEntry { index: 75, lower: "0", upper: "π", bounds: Bounds::Interval(0.0, PI) , note: "" },
    RangeEntry { index: 76, lower: "-π/2", upper: "π/2", bounds: Bounds::Interval(-FRAC_PI_2, FRAC_PI_2) , note: "" },
    RangeEntry { index: 77, lower: "0", upper: "π/2", bounds: Bounds::Interval(0.0, FRAC_PI_2) , note: "" },
    RangeEntry { index: 78, lower: "0", upper: "π/2", bounds: Bounds::Interval(0.0, FRAC_PI_2) , note: "" },
    RangeEntry { index: 79, lower: "0", upper: "π", bounds: Bounds::Interval(0.0, PI) , note: "" },
    RangeEntry { index: 80, lower: "0", upper: "π", bounds: Bounds::Interval(0.0, PI) , note: "" },
    RangeEntry { index: 81, lower: "-x80/√3", upper: "x80/√3", bounds: Bounds::Coupled { on: 80 }, note: "|x81| ≤ x80/√3" },
    RangeEntry { index: 82, lower: "0", upper: "2π", bounds: Bounds::Interval(0.0, 2.0 * PI) , note: "" },
    RangeEntry { index: 83, lower: "0", upper: "2π", bounds: Bounds::Interval(0.0, 2.0 * PI) , note: "" },
    RangeEntry { index: 84, lower: "0", upper: "2π", bounds: Bounds::Interval(0.0, 2.0 * PI) , note: "" },
    RangeEntry { index: 85, lower: "0", upper: "π", bounds: Bounds::Interval(0.0, PI) , note: "" },
    RangeEntry { index: 86, lower: "-π/2", upper: "π/2", bounds: Bounds::Interval(-FRAC_PI_2, FRAC_PI_2) , note: "" },
    RangeEntry { index: 87, lower: "0", upper: "π/2", bounds: Bounds::Interval(0.0, FRAC_PI_2) , note: "" },
    RangeEntry { index: 88, lower: "0", upper: "π/2", bounds: Bounds::Interval(0.0, FRAC_PI_2) , note: "" },
    RangeEntry { index: 89, lower: "0", upper: "π", bounds: Bounds::Interval(0.0, PI) , note: "" },
    RangeEntry { index: 90, lower: "0", upper: "2π", bounds: Bounds::Interval(0.0, 2.0 * PI) , note: "" },
    RangeEntry { index: 91, lower: "0", upper: "2π", bounds: Bounds::Interval(0.0, 2.0 * PI) , note: "" },
    RangeEntry { index: 92, lower: "0", upper: "2π", bounds: Bounds::Interval(0.0, 2.0 * PI) , note: "" },
    RangeEntry { index: 93, lower: "0", upper: "π", bounds: Bounds::Interval(0.0, PI) , note: "" },
    RangeEntry { index: 94, lower: "-π/2", upper: "π/2", bounds: Bounds::Interval(-FRAC_PI_2, FRAC_PI_2) , note: "" },
    RangeEntry { index: 95, lower: "0", upper: "π/2", bounds: Bounds::Interval(0.0, FRAC_PI_2) , note: "" },
    RangeEntry { index: 96, lower: "0", upper: "π/2", bounds: Bounds::Interval(0.0, FRAC_PI_2) , note: "" },
    RangeEntry { index: 97, lower: "0", upper: "π", bounds: Bounds::Interval(0.0, PI) , note: "" },
    RangeEntry { index: 98, lower: "0", upper: "2π", bounds: Bounds::Interval(0.0, 2.0 * PI) , note: "" },
    RangeEntry { index: 99, lower: "0", upper: "2π", bounds: Bounds::Interval(0.0, 2.0 * PI) , note: "" },
    RangeEntry { index: 100, lower: "0", upper: "2π", bounds: Bounds::Interval(0.0, 2.0 * PI) , note: "" },
    RangeEntry { index: 101, lower: "0", upper: "π", bounds: Bounds::Interval(0.0, PI) , note: "" },
    RangeEntry { index: 102, lower: "-π/2", upper: "π/2", bounds: Bounds::Interval(-FRAC_PI_2, FRAC_PI_2) , note: "" },
    RangeEntry { index: 103, lower: "0", upper: "π/2", bounds: Bounds::Interval(0.0, FRAC_PI_2) , note: "" },
    RangeEntry { index: 104, lower: "0", upper: "π/2", bounds: Bounds::Interval(0.0, FRAC_PI_2) , note: "" },
    RangeEntry { index: 105, lower: "0", upper: "π", bounds: Bounds::Interval(0.0, PI) , note: "" },
    RangeEntry { index: 106, lower: "0", upper: "2π", bounds: Bounds::Interval(0.0, 2.0 * PI) , note: "" },
    RangeEntry { index: 107, lower: "0", upper: "2π", bounds: Bounds::Interval(0.0, 2.0 * PI) , note: "" },
    RangeEntry { index: 108, lower: "0", upper: "2π", bounds: Bounds::Interval(0.0, 2.0 * PI) , note: "" },
    RangeEntry { index: 109, lower: "0", upper: "π", bounds: Bounds::Interval(0.0, PI) , note: "" },
    RangeEntry { index: 110, lower: "-π/2", upper: "π/2", bounds: Bounds::Interval(-FRAC_PI_2, FRAC_PI_2) , note: "" },
    RangeEntry { index: 111, lower: "0", upper: "π/2", bounds: Bounds::Interval(0.0, FRAC_PI_2) , note: "" },
    RangeEntry { index: 112, lower: "0", upper: "π/2", bounds: Bounds::Interval(0.0, FRAC_PI_2) , note: "" },
    RangeEntry { index: 113, lower: "0", upper: "2π", bounds: Bounds::Interval(0.0, 2.0 * PI) , note: "" },
    RangeEntry { index: 114, lower: "0", upper: "π", bounds: Bounds::Interval(0.0, PI) , note: "" },
    RangeEntry { index: 115, lower: "-π/2", upper: "π/2", bounds: Bounds::Interval(-FRAC_PI_2, FRAC_PI_2) , note: "" },
    RangeEntry { index: 116, lower: "-π/2", upper: "π/2", bounds: Bounds::Interval(-FRAC_PI_2, FRAC_PI_2) , note: "" },
    RangeEntry { index: 117, lower: "-π/2", upper: "π/2", bounds: Bounds::Interval(-FRAC_PI_2, FRAC_PI_2) , note: "" },
    RangeEntry { index: 118, lower: "0", upper: "π", bounds: Bounds::Interval(0.0, PI) , note: "" },
    RangeEntry { index: 119, lower: "0", upper: "2π", bounds: Bounds::Interval(0.0, 2.0 * PI) , note: "" },
    RangeEntry { index: 120, lower: "0", upper: "π", bounds: Bounds::Interval(0.0, PI) , note: "" },
    RangeEntry { index: 121, lower: "-π/2", upper: "π/2", bounds: Bounds::Interval(-FRAC_PI_2, FRAC_PI_2) , note: "" },
    RangeEntry { index: 122, lower: "-π/2", upper: "π/2", bounds: Bounds::Interval(-FRAC_PI_2, FRAC_PI_2) , note: "" },
    RangeEntry { index: 123, lower: "0", upper: "π", bounds: Bounds::Interval(0.0, PI) , note: "" },
    RangeEntry { index: 124, lower: "0", upper: "2π", bounds: Bounds::Interval(0.0, 2.0 * PI) , note: "" },
    RangeEntry { index: 125, lower: "0", upper: "π", bounds: Bounds::Interval(0.0, PI) , note: "" },
    RangeEntry { index: 126, lower: "-π/2", upper: "π/2", bounds: Bounds::Interval(-FRAC_PI_2, FRAC_PI_2) , note: "" },
    RangeEntry { index: 127, lower: "0", upper: "π", bounds: Bounds::Interval(0.0, PI) , note: "" },
    RangeEntry { index: 128, lower: "0", upper: "2π", bounds: Bounds::Interval(0.0, 2.0 * PI) , note: "" },
    RangeEntry { index: 129, lower: "0", upper: "π", bounds: Bounds::Interval(0.0, PI) , note: "" },
    RangeEntry { index: 130, lower: "0", upper: "π", bounds: Bounds::Interval(0.0, PI) , note: "" },
    RangeEntry { index: 131, lower: "0", upper: "2π", bounds: Bounds::Interval(0.0, 2.0 * PI) , note: "" },
    RangeEntry { index: 132, lower: "0", upper: "π", bounds: Bounds::Interval(0.0, PI) , note: "" },
    RangeEntry { index: 133, lower: "0", upper: "4π", bounds: Bounds::Interval(0.0, 4.0 * PI) , note: "" },
];

/// `(x₅₂, x₅₃, x₅₄)` from `(x, y, z)`.
pub fn torus_from_xyz(x: f64, y: f64, z: f64) -> [f64; 3] {
    let s3 = 3f64.sqrt();
    [(x + y - z) / 6f64.sqrt(), (y + z) / 2.0, -x / s3 + (y - z) / (2.0 * s3)]
}

/// `(x, y, z)` from `(x₅₂, x₅₃, x₅₄)`.
pub fn xyz_from_torus(t: [f64; 3]) -> [f64; 3] {
    let (s2, s3, s6) = (2f64.sqrt(), 3f64.sqrt(), 6f64.sqrt());
    [(s6 * t[0] - 2.0 * s3 * t[2]) / 3.0, (s3 * t[1] + s2 * t[0] + t[2]) / s3, (s3 * t[1] - s2 * t[0] - t[2]) / s3]
}

/// Whether a full coordinate vector `x₁ … x₁₃₃` lies in the chart.
pub fn in_range(x: &[f64; 133]) -> bool {
    let eps = 1e-12;
    let simplex = {
        let [a, b, c] = xyz_from_torus([x[51], x[52], x[53]]);
        -eps <= c && c <= b + eps && b <= a + eps && a <= PI + eps
    };
    simplex
        && RANGE_TABLE.iter().all(|e| match e.bounds {
            Bounds::Interval(lo, hi) => lo - eps <= x[e.index - 1] && x[e.index - 1] <= hi + eps,
            Bounds::Coupled { on } => x[e.index - 1].abs() <= x[on - 1] / 3f64.sqrt() + eps,
            Bounds::Substituted => true,
        })
}
