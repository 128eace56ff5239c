//! Fibonacci numbers, the Zeckendorf codec on naturals, and the digit
//! shifts `π` (drop the lowest Zeckendorf digit) and `j` (append a zero).
//!
//! Two Fibonacci conventions appear throughout the crate:
//!
//! * `a_n`, the standard sequence `0, 1, 1, 2, 3, 5, …`, extended to negative
//!   indices by `a_{-n} = (-1)^{n+1} a_n` (see [`a_signed`]);
//! * `f_n = a_{n+1}` for `n > 0` and `f_n = 0` for `n <= 0`, the sequence
//!   `1, 2, 3, 5, 8, 13, …` the Zeckendorf digits are weighted by.
//!
//! The natural-number operations are generic over [`Natural`], so they run
//! on `u64` for exhaustive sweeps and on `BigUint` when values outgrow a
//! machine word.

use std::fmt;
use std::sync::OnceLock;

use num_traits::{CheckedAdd, CheckedSub, One, Zero};

use crate::error::{Error, Result};

/// Unsigned integer types the Zeckendorf machinery can run on.
pub trait Natural: Clone + Ord + Zero + One + CheckedAdd + CheckedSub + fmt::Debug + fmt::Display {}

impl<T> Natural for T where T: Clone + Ord + Zero + One + CheckedAdd + CheckedSub + fmt::Debug + fmt::Display {}

/// Largest `|n|` for which `a_n` fits in an `i128`.
pub const A_SIGNED_MAX_INDEX: i64 = 182;

fn a_table() -> &'static [i128] {
    static TABLE: OnceLock<Vec<i128>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = vec![0i128, 1];
        for k in 2..=A_SIGNED_MAX_INDEX as usize {
            t.push(t[k - 1] + t[k - 2]);
        }
        t
    })
}

/// The standard Fibonacci number `a_n` for any integer `n`, with
/// `a_{-n} = (-1)^{n+1} a_n`.
pub fn a_signed(n: i64) -> Result<i128> {
    let k = n.unsigned_abs();
    if k > A_SIGNED_MAX_INDEX as u64 {
        return Err(Error::Capacity(format!("a_{n} does not fit in i128")));
    }
    let v = a_table()[k as usize];
    Ok(if n < 0 && k % 2 == 0 { -v } else { v })
}

/// The Zeckendorf digit weights `f_0 = 0, f_1 = 1, f_2 = 2, …` up to some
/// index, in a chosen natural type.
///
/// A table is append-only once built; share it freely across threads.
#[derive(Debug, Clone)]
pub struct FibTable<N> {
    f: Vec<N>,
    // The weight after the last entry does not fit in N.
    saturated: bool,
}

impl<N: Natural> FibTable<N> {
    /// Table holding `f_0 ..= f_max_index`.
    pub fn with_max_index(max_index: usize) -> Result<Self> {
        let mut f = vec![N::zero(), N::one()];
        while f.len() <= max_index {
            let k = f.len();
            // f_2 = 2 breaks the plain recurrence f_2 = f_1 + f_0.
            let next = if k == 2 {
                N::one().checked_add(&N::one())
            } else {
                f[k - 1].checked_add(&f[k - 2])
            };
            match next {
                Some(v) => f.push(v),
                None => return Err(Error::Capacity(format!("f_{k} overflows the chosen integer type"))),
            }
        }
        f.truncate(max_index.max(1) + 1);
        Ok(FibTable { f, saturated: false })
    }

    /// Table holding every `f_n <= bound`, plus the first weight above it when
    /// that weight is representable.
    pub fn covering(bound: &N) -> Self {
        let mut f = vec![N::zero(), N::one()];
        let mut saturated = false;
        while f.last().is_some_and(|last| last <= bound) {
            let k = f.len();
            let next = if k == 2 {
                N::one().checked_add(&N::one())
            } else {
                f[k - 1].checked_add(&f[k - 2])
            };
            match next {
                Some(v) => f.push(v),
                None => {
                    saturated = true;
                    break;
                }
            }
        }
        FibTable { f, saturated }
    }

    pub fn max_index(&self) -> usize {
        self.f.len() - 1
    }

    /// `f_n`, or `None` if `n` lies beyond the table. Non-positive indices give 0.
    pub fn f(&self, n: i64) -> Option<N> {
        if n <= 0 {
            Some(N::zero())
        } else {
            self.f.get(n as usize).cloned()
        }
    }

    /// `a_n = f_{n-1}` for `n >= 2`, with `a_0 = 0` and `a_1 = 1`.
    pub fn a(&self, n: u64) -> Option<N> {
        match n {
            0 => Some(N::zero()),
            1 => Some(N::one()),
            _ => self.f.get(n as usize - 1).cloned(),
        }
    }

    /// Whether every weight `f_n <= r` is present, plus the one after.
    fn covers(&self, r: &N) -> bool {
        self.saturated || self.f.last().is_some_and(|last| last > r)
    }

    fn require_cover(&self, r: &N) -> Result<()> {
        if self.covers(r) {
            Ok(())
        } else {
            Err(Error::Capacity(format!(
                "Fibonacci table up to f_{} does not cover {r}",
                self.max_index()
            )))
        }
    }

    /// `M(R)`: the largest `n` with `f_n <= R`.
    pub fn big_m(&self, r: &N) -> Result<u32> {
        if r.is_zero() {
            return Err(Error::domain("M(R) is undefined for R = 0"));
        }
        self.require_cover(r)?;
        // f is strictly increasing from index 1 on.
        let idx = self.f[1..].partition_point(|v| v <= r);
        Ok(idx as u32)
    }

    /// Greedy Zeckendorf expansion: repeatedly remove `f_{M(R)}`.
    pub fn zeck(&self, r: &N) -> Result<ZeckIndexSet> {
        if r.is_zero() {
            return Ok(ZeckIndexSet::empty());
        }
        self.require_cover(r)?;
        let mut rest = r.clone();
        let mut out = Vec::new();
        let mut k = self.big_m(r)? as usize;
        while !rest.is_zero() {
            while self.f[k] > rest {
                k -= 1;
            }
            rest = rest.checked_sub(&self.f[k]).expect("f_k <= rest");
            out.push(k as u32);
            // The next digit is at least two positions lower.
            k = k.saturating_sub(2).max(1);
        }
        Ok(ZeckIndexSet(out))
    }

    /// `Σ f_n` over the index set.
    pub fn unzeck(&self, s: &ZeckIndexSet) -> Result<N> {
        self.weighted_sum(s, 0)
    }

    /// `Σ f_{n + offset}` over the index set, with `f_k = 0` for `k <= 0`.
    fn weighted_sum(&self, s: &ZeckIndexSet, offset: i64) -> Result<N> {
        let mut acc = N::zero();
        for &n in s.indices() {
            let k = n as i64 + offset;
            let w = self
                .f(k)
                .ok_or_else(|| Error::Capacity(format!("f_{k} lies beyond the Fibonacci table")))?;
            acc = acc
                .checked_add(&w)
                .ok_or_else(|| Error::Capacity("sum overflows the chosen integer type".into()))?;
        }
        Ok(acc)
    }

    /// `π(R) = Σ z_n f_{n-1}`: erases the lowest Zeckendorf digit position.
    pub fn pi_shift(&self, r: &N) -> Result<N> {
        let z = self.zeck(r)?;
        self.weighted_sum(&z, -1)
    }

    /// `j(R) = Σ z_n f_{n+1}`: appends a zero to the Zeckendorf expansion.
    pub fn j_shift(&self, r: &N) -> Result<N> {
        let z = self.zeck(r)?;
        self.weighted_sum(&z, 1)
    }

    /// `∂π(x, y) = π(x + y) - π(x) - π(y)`, which always lies in `{-1, 0, 1}`.
    pub fn coboundary_pi(&self, x: &N, y: &N) -> Result<i8> {
        self.coboundary(x, y, Self::pi_shift, "pi")
    }

    /// `∂j(x, y) = j(x + y) - j(x) - j(y)`, which always lies in `{-1, 0, 1}`.
    pub fn coboundary_j(&self, x: &N, y: &N) -> Result<i8> {
        self.coboundary(x, y, Self::j_shift, "j")
    }

    fn coboundary(&self, x: &N, y: &N, map: fn(&Self, &N) -> Result<N>, name: &str) -> Result<i8> {
        if x.is_zero() || y.is_zero() {
            return Err(Error::domain("coboundary arguments must be positive"));
        }
        let sum = x
            .checked_add(y)
            .ok_or_else(|| Error::Capacity("x + y overflows the chosen integer type".into()))?;
        let whole = map(self, &sum)?;
        let parts = map(self, x)?
            .checked_add(&map(self, y)?)
            .ok_or_else(|| Error::Capacity("sum overflows the chosen integer type".into()))?;
        let (diff, sign) = if whole >= parts {
            (whole.checked_sub(&parts).expect("whole >= parts"), 1)
        } else {
            (parts.checked_sub(&whole).expect("parts > whole"), -1)
        };
        if diff.is_zero() {
            Ok(0)
        } else if diff.is_one() {
            Ok(sign)
        } else {
            Err(Error::Structure(format!(
                "coboundary of {name} at ({x}, {y}) has magnitude {diff}, outside {{-1, 0, 1}}"
            )))
        }
    }
}

/// Positions `n >= 1` of the 1-digits of a Zeckendorf expansion, kept in
/// decreasing order. No two positions are adjacent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ZeckIndexSet(Vec<u32>);

impl ZeckIndexSet {
    pub fn empty() -> Self {
        ZeckIndexSet(Vec::new())
    }

    /// Validates positivity, distinctness and non-adjacency.
    pub fn new(indices: impl IntoIterator<Item = u32>) -> Result<Self> {
        let mut v: Vec<u32> = indices.into_iter().collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        if v.last() == Some(&0) {
            return Err(Error::domain("Zeckendorf indices start at 1"));
        }
        for w in v.windows(2) {
            if w[0] - w[1] < 2 {
                return Err(Error::domain(format!(
                    "indices {} and {} are not separated by a gap",
                    w[0], w[1]
                )));
            }
        }
        Ok(ZeckIndexSet(v))
    }

    /// Indices in decreasing order.
    pub fn indices(&self) -> &[u32] {
        &self.0
    }

    pub fn contains(&self, n: u32) -> bool {
        self.0.contains(&n)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for ZeckIndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, n) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{n}")?;
        }
        f.write_str("}")
    }
}

/// `f_n`; zero for `n <= 0`.
pub fn fib<N: Natural>(n: i64) -> Result<N> {
    if n <= 0 {
        return Ok(N::zero());
    }
    let table = FibTable::with_max_index(n as usize)?;
    Ok(table.f(n).expect("table built to n"))
}

/// `M(R)`, the largest `n` with `f_n <= R`.
pub fn big_m<N: Natural>(r: &N) -> Result<u32> {
    FibTable::covering(r).big_m(r)
}

/// The Zeckendorf index set of `R`; empty for `R = 0`.
pub fn zeck<N: Natural>(r: &N) -> Result<ZeckIndexSet> {
    FibTable::covering(r).zeck(r)
}

/// Inverse of [`zeck`].
pub fn unzeck<N: Natural>(s: &ZeckIndexSet) -> Result<N> {
    let top = s.indices().first().copied().unwrap_or(1) as usize;
    FibTable::with_max_index(top)?.unzeck(s)
}

pub fn pi_shift<N: Natural>(r: &N) -> Result<N> {
    FibTable::covering(r).pi_shift(r)
}

pub fn j_shift<N: Natural>(r: &N) -> Result<N> {
    FibTable::covering(r).j_shift(r)
}

pub fn coboundary_pi<N: Natural>(x: &N, y: &N) -> Result<i8> {
    let sum = x.checked_add(y).ok_or_else(|| Error::Capacity("x + y overflows".into()))?;
    FibTable::covering(&sum).coboundary_pi(x, y)
}

pub fn coboundary_j<N: Natural>(x: &N, y: &N) -> Result<i8> {
    let sum = x.checked_add(y).ok_or_else(|| Error::Capacity("x + y overflows".into()))?;
    FibTable::covering(&sum).coboundary_j(x, y)
}
