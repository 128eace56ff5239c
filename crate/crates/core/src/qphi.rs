//! Exact arithmetic in `ℤ[φ]`, the value ring of the φ-valuation.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use crate::error::Result;
use crate::fibzeck::a_signed;

/// The golden ratio as a float, for approximate display only.
pub const PHI_F64: f64 = 1.618_033_988_749_895;

/// The number `a + bφ` with integer `a`, `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct QPhi {
    pub a: i128,
    pub b: i128,
}

impl QPhi {
    pub const ZERO: QPhi = QPhi { a: 0, b: 0 };
    pub const ONE: QPhi = QPhi { a: 1, b: 0 };
    pub const PHI: QPhi = QPhi { a: 0, b: 1 };

    pub const fn new(a: i128, b: i128) -> Self {
        QPhi { a, b }
    }

    pub const fn from_int(a: i128) -> Self {
        QPhi { a, b: 0 }
    }

    /// `φ^n = a_n φ + a_{n-1}`, valid for every integer `n`.
    pub fn phi_pow(n: i64) -> Result<Self> {
        Ok(QPhi { a: a_signed(n - 1)?, b: a_signed(n)? })
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// Exact sign of `a + bφ`.
    ///
    /// Writes `2(a + bφ) = p + q√5` with `p = 2a + b`, `q = b`; when `p` and
    /// `q` disagree in sign the larger of `p²` and `5q²` wins. The two are
    /// never equal unless both vanish.
    pub fn signum(&self) -> Ordering {
        let p = 2 * self.a + self.b;
        let q = self.b;
        match (p.cmp(&0), q.cmp(&0)) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (sp, sq) if sp == sq => sp,
            (sp, sq) => {
                let p2 = p * p;
                let q2 = 5 * q * q;
                if p2 > q2 {
                    sp
                } else {
                    sq
                }
            }
        }
    }

    /// Galois conjugate `a + bψ = (a + b) - bφ`.
    pub fn conjugate(&self) -> Self {
        QPhi { a: self.a + self.b, b: -self.b }
    }

    pub fn to_f64(&self) -> f64 {
        self.a as f64 + self.b as f64 * PHI_F64
    }
}

impl Ord for QPhi {
    fn cmp(&self, other: &Self) -> Ordering {
        (*self - *other).signum()
    }
}

impl PartialOrd for QPhi {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for QPhi {
    type Output = QPhi;
    fn add(self, o: QPhi) -> QPhi {
        QPhi { a: self.a + o.a, b: self.b + o.b }
    }
}

impl AddAssign for QPhi {
    fn add_assign(&mut self, o: QPhi) {
        *self = *self + o;
    }
}

impl Sub for QPhi {
    type Output = QPhi;
    fn sub(self, o: QPhi) -> QPhi {
        QPhi { a: self.a - o.a, b: self.b - o.b }
    }
}

impl Neg for QPhi {
    type Output = QPhi;
    fn neg(self) -> QPhi {
        QPhi { a: -self.a, b: -self.b }
    }
}

impl Mul for QPhi {
    type Output = QPhi;
    // φ² = φ + 1
    fn mul(self, o: QPhi) -> QPhi {
        let bd = self.b * o.b;
        QPhi { a: self.a * o.a + bd, b: self.a * o.b + self.b * o.a + bd }
    }
}

impl Mul<i128> for QPhi {
    type Output = QPhi;
    fn mul(self, k: i128) -> QPhi {
        QPhi { a: self.a * k, b: self.b * k }
    }
}

impl Sum for QPhi {
    fn sum<I: Iterator<Item = QPhi>>(iter: I) -> QPhi {
        iter.fold(QPhi::ZERO, Add::add)
    }
}

impl fmt::Display for QPhi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powers() {
        assert_eq!(QPhi::phi_pow(0).unwrap(), QPhi::ONE);
        assert_eq!(QPhi::phi_pow(1).unwrap(), QPhi::PHI);
        assert_eq!(QPhi::phi_pow(2).unwrap(), QPhi::new(1, 1));
        assert_eq!(QPhi::phi_pow(-1).unwrap(), QPhi::new(-1, 1));
        assert_eq!(QPhi::phi_pow(-2).unwrap(), QPhi::new(2, -1));
        for n in -40..40 {
            let lhs = QPhi::phi_pow(n).unwrap() * QPhi::phi_pow(-n).unwrap();
            assert_eq!(lhs, QPhi::ONE, "n = {n}");
            assert_eq!(QPhi::phi_pow(n + 1).unwrap(), QPhi::phi_pow(n).unwrap() + QPhi::phi_pow(n - 1).unwrap());
        }
    }

    #[test]
    fn phi_plus_phi_inverse_squared_is_two() {
        let v = QPhi::phi_pow(1).unwrap() + QPhi::phi_pow(-2).unwrap();
        assert_eq!(v, QPhi::from_int(2));
    }

    #[test]
    fn sign_cases() {
        assert_eq!(QPhi::ZERO.signum(), Ordering::Equal);
        assert_eq!(QPhi::new(1, 0).signum(), Ordering::Greater);
        assert_eq!(QPhi::new(-1, 1).signum(), Ordering::Less.reverse());
        assert_eq!(QPhi::new(2, -1).signum(), Ordering::Greater);
        assert_eq!(QPhi::new(1, -1).signum(), Ordering::Less);
        assert_eq!(QPhi::new(-2, 1).signum(), Ordering::Less);
        assert!(QPhi::ONE < QPhi::PHI);
    }

    #[test]
    fn conjugate_is_ring_map() {
        let x = QPhi::new(3, -7);
        let y = QPhi::new(-2, 5);
        assert_eq!((x * y).conjugate(), x.conjugate() * y.conjugate());
        // φψ = -1
        assert_eq!(QPhi::PHI * QPhi::PHI.conjugate(), QPhi::from_int(-1));
    }
}
