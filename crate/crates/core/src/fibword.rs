//! Fibonadic digit words.
//!
//! A [`ZeckWord`] is a `{0,1}`-sequence indexed by `ℤ` whose support is
//! bounded above and which never has two adjacent 1s. The representable
//! words are the finite ones and the "minus forms": a finite prefix followed
//! by an infinite alternating tail `1 0 1 0 …`.
//!
//! Words are kept canonical, so structural equality is digit equality.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::fibzeck::{FibTable, Natural};
use crate::qphi::QPhi;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ZeckWord {
    /// Indices carrying a 1, strictly decreasing.
    ones: Vec<i64>,
    /// Start of the alternating tail: digits 1 at `t, t-2, t-4, …`.
    tail: Option<i64>,
}

impl ZeckWord {
    pub fn zero() -> Self {
        ZeckWord::default()
    }

    /// The multiplicative unit, a single 1 at index 0.
    pub fn one() -> Self {
        ZeckWord::phi_power(0)
    }

    /// `Φ^n`: a single 1 at index `n`.
    pub fn phi_power(n: i64) -> Self {
        ZeckWord { ones: vec![n], tail: None }
    }

    /// The largest principal unit, `(Φ)⁻` shifted to top index 0: `1.0101…`.
    pub fn principal_max() -> Self {
        ZeckWord { ones: Vec::new(), tail: Some(0) }
    }

    /// A finite word with 1s at the given indices.
    pub fn from_ones(ones: impl IntoIterator<Item = i64>) -> Result<Self> {
        ZeckWord::new(ones, None)
    }

    /// A word with 1s at `ones` and, when `tail` is `Some(t)`, at `t, t-2, …`.
    ///
    /// Fails if two 1s would be adjacent or an explicit 1 sits at or below
    /// the tail start without being one of its digits.
    pub fn new(ones: impl IntoIterator<Item = i64>, tail: Option<i64>) -> Result<Self> {
        let mut ones: Vec<i64> = ones.into_iter().collect();
        ones.sort_unstable_by(|a, b| b.cmp(a));
        for w in ones.windows(2) {
            if w[0] - w[1] < 2 {
                return Err(Error::domain(format!("digits at {} and {} are adjacent or repeated", w[0], w[1])));
            }
        }
        if let (Some(t), Some(&low)) = (tail, ones.last()) {
            if low <= t + 1 {
                // A 1 coinciding with a tail digit is redundant but harmless.
                let redundant = ones.iter().filter(|&&i| i <= t).all(|&i| (t - i) % 2 == 0);
                if !redundant || ones.contains(&(t + 1)) {
                    return Err(Error::domain(format!("digit at {low} collides with the tail starting at {t}")));
                }
                ones.retain(|&i| i > t);
            }
        }
        let mut w = ZeckWord { ones, tail };
        w.absorb_into_tail();
        Ok(w)
    }

    // Canonical form: the lowest explicit 1 is never the next digit of the tail.
    fn absorb_into_tail(&mut self) {
        while let (Some(t), Some(&low)) = (self.tail, self.ones.last()) {
            if low == t + 2 {
                self.ones.pop();
                self.tail = Some(low);
            } else {
                break;
            }
        }
    }

    /// Explicit 1-indices in decreasing order (tail digits excluded).
    pub fn ones(&self) -> &[i64] {
        &self.ones
    }

    pub fn tail(&self) -> Option<i64> {
        self.tail
    }

    pub fn is_zero(&self) -> bool {
        self.ones.is_empty() && self.tail.is_none()
    }

    pub fn is_finite(&self) -> bool {
        self.tail.is_none()
    }

    pub fn digit(&self, n: i64) -> u8 {
        let in_tail = self.tail.is_some_and(|t| n <= t && (t - n) % 2 == 0);
        u8::from(in_tail || self.ones.contains(&n))
    }

    /// Highest index carrying a 1.
    pub fn top(&self) -> Option<i64> {
        self.ones.first().copied().or(self.tail)
    }

    /// Lowest index carrying a 1, for finite nonzero words.
    pub fn lowest(&self) -> Option<i64> {
        if self.tail.is_some() {
            None
        } else {
            self.ones.last().copied()
        }
    }

    /// Lowest index that must be inspected to see every digit that is not
    /// part of a periodic tail.
    fn floor_index(&self) -> Option<i64> {
        self.ones.last().copied().into_iter().chain(self.tail).min()
    }

    /// `δ(z, z')`: the highest index where the digits differ, or `None` when
    /// the words are equal.
    pub fn delta(&self, other: &ZeckWord) -> Option<i64> {
        let top = self.top().into_iter().chain(other.top()).max()?;
        let floor = self.floor_index().into_iter().chain(other.floor_index()).min()? - 2;
        // Below `floor` both words are zero or alternating, so agreement on
        // two consecutive digits there means agreement everywhere below.
        (floor..=top).rev().find(|&n| self.digit(n) != other.digit(n))
    }

    /// `d(z, z') = φ^δ(z, z')`.
    pub fn dist(&self, other: &ZeckWord) -> Distance {
        match self.delta(other) {
            None => Distance::Zero,
            Some(d) => Distance::PhiPow(d),
        }
    }

    /// `Φ^k z`: every digit moved up by `k`.
    pub fn shift(&self, k: i64) -> ZeckWord {
        ZeckWord {
            ones: self.ones.iter().map(|i| i + k).collect(),
            tail: self.tail.map(|t| t + k),
        }
    }

    /// `z⁻`: clears the lowest 1 at `n₀` and starts an alternating tail at
    /// `n₀ - 1`. Same φ-value, strictly smaller in the word order.
    pub fn minus_form(&self) -> Result<ZeckWord> {
        if self.tail.is_some() {
            return Err(Error::domain("minus form is defined for finite words only"));
        }
        let (&n0, rest) = self
            .ones
            .split_last()
            .ok_or_else(|| Error::domain("the zero word has no minus form"))?;
        let mut w = ZeckWord { ones: rest.to_vec(), tail: Some(n0 - 1) };
        w.absorb_into_tail();
        Ok(w)
    }

    /// The exact φ-value `Σ z_n φ^n` in `ℤ[φ]`. An alternating tail starting
    /// at `t` sums to `φ^{t+1}`.
    pub fn phi_value(&self) -> Result<QPhi> {
        let mut v = QPhi::ZERO;
        for &n in &self.ones {
            v += QPhi::phi_pow(n)?;
        }
        if let Some(t) = self.tail {
            v += QPhi::phi_pow(t + 1)?;
        }
        Ok(v)
    }

    /// `R^z_m = Σ_j z_j f_{m+j}`, with `f_k = 0` for `k <= 0`.
    pub fn coherent<N: Natural>(&self, m: u64) -> Result<N> {
        let m = i64::try_from(m).map_err(|_| Error::Capacity("m exceeds i64".into()))?;
        let Some(top) = self.top() else {
            return Ok(N::zero());
        };
        let max = (m + top).max(1) as usize;
        let table = FibTable::<N>::with_max_index(max)?;
        let mut acc = N::zero();
        let mut add = |k: i64| -> Result<()> {
            let w = table.f(k).expect("index within table");
            acc = acc
                .checked_add(&w)
                .ok_or_else(|| Error::Capacity("R^z_m overflows the chosen integer type".into()))?;
            Ok(())
        };
        for &j in &self.ones {
            add(m + j)?;
        }
        if let Some(t) = self.tail {
            let mut j = t;
            while m + j >= 1 {
                add(m + j)?;
                j -= 2;
            }
        }
        Ok(acc)
    }

    /// Whether the word lies in the principal units `𝒟` (top 1 at index 0).
    pub fn is_principal(&self) -> bool {
        self.top() == Some(0)
    }

    /// The representative in `𝒟` of the orbit `{Φ^n z}` and the shift that
    /// carries it back: `z = Φ^k · principal`.
    pub fn to_principal(&self) -> Result<(ZeckWord, i64)> {
        let k = self.top().ok_or_else(|| Error::domain("the zero word has no principal representative"))?;
        Ok((self.shift(-k), k))
    }

    /// Drops every digit below `lowest`, expanding the tail where needed.
    pub fn truncated(&self, lowest: i64) -> ZeckWord {
        let mut ones: Vec<i64> = self.ones.iter().copied().filter(|&i| i >= lowest).collect();
        if let Some(t) = self.tail {
            let mut j = t;
            while j >= lowest {
                ones.push(j);
                j -= 2;
            }
        }
        ZeckWord { ones, tail: None }
    }
}

impl Ord for ZeckWord {
    /// `z < z'` when the highest differing digit is 0 in `z` and 1 in `z'`.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.delta(other) {
            None => Ordering::Equal,
            Some(n) => self.digit(n).cmp(&other.digit(n)),
        }
    }
}

impl PartialOrd for ZeckWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The ultrametric distance `φ^δ`, kept symbolic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Zero,
    PhiPow(i64),
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Zero => f.write_str("0"),
            Distance::PhiPow(d) => write!(f, "phi^{d}"),
        }
    }
}
