//! Exact arithmetic in the quadratic integer ring Z[sqrt(D)].
//!
//! Values are `a + b*sqrt(D)` with integer `a`, `b` and a square-free
//! positive radicand `D` fixed per scenario. `D = 1` degenerates to plain
//! integers (the loader normalizes `b` into `a` in that case). No floating
//! point exists anywhere in this crate; every comparison is exact.

use serde::Serialize;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// An element of Z[sqrt(D)]. The radicand is carried by the surrounding
/// scenario, not by each value; mixing values from scenarios with different
/// radicands is a caller error guarded at the scenario boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct QuadInt {
    pub a: i64,
    pub b: i64,
}

impl QuadInt {
    pub const ZERO: QuadInt = QuadInt { a: 0, b: 0 };

    pub fn new(a: i64, b: i64) -> Self {
        QuadInt { a, b }
    }

    pub fn from_int(a: i64) -> Self {
        QuadInt { a, b: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// Product in Z[sqrt(D)]: (a + b r)(c + d r) = (ac + D bd) + (ad + bc) r.
    pub fn mul_with(self, rhs: QuadInt, radicand: i64) -> QuadInt {
        QuadInt {
            a: self.a * rhs.a + radicand * self.b * rhs.b,
            b: self.a * rhs.b + self.b * rhs.a,
        }
    }
}

impl Add for QuadInt {
    type Output = QuadInt;
    fn add(self, rhs: QuadInt) -> QuadInt {
        QuadInt {
            a: self.a + rhs.a,
            b: self.b + rhs.b,
        }
    }
}

impl Sub for QuadInt {
    type Output = QuadInt;
    fn sub(self, rhs: QuadInt) -> QuadInt {
        QuadInt {
            a: self.a - rhs.a,
            b: self.b - rhs.b,
        }
    }
}

impl Neg for QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        QuadInt {
            a: -self.a,
            b: -self.b,
        }
    }
}

/// Plain `*` multiplies with radicand 1 and is only correct for integer
/// scenarios; prefer [`QuadInt::mul_with`].
impl Mul for QuadInt {
    type Output = QuadInt;
    fn mul(self, rhs: QuadInt) -> QuadInt {
        self.mul_with(rhs, 1)
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b == 0 {
            write!(f, "{}", self.a)
        } else if self.b < 0 {
            write!(f, "{}-{}*rt", self.a, -self.b)
        } else {
            write!(f, "{}+{}*rt", self.a, self.b)
        }
    }
}

pub fn is_square_free(d: i64) -> bool {
    if d < 1 {
        return false;
    }
    let mut k = 2i64;
    while k * k <= d {
        if d % (k * k) == 0 {
            return false;
        }
        k += 1;
    }
    true
}
