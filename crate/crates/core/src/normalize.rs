//! Normalization of ℕ-coefficient series in powers of `φ` into admissible
//! Fibonadic words.
//!
//! Two value-preserving rewrites drive everything:
//!
//! * move A at `n`: `(0, z_n, z_{n-1}) → (1, z_n - 1, z_{n-1} - 1)` on
//!   indices `(n+1, n, n-1)`, i.e. `φ^n + φ^{n-1} = φ^{n+1}`;
//! * move B at `n`: `(0, z_n, 0, z_{n-2}) → (1, z_n - 2, 0, z_{n-2} + 1)`,
//!   i.e. `2φ^n = φ^{n+1} + φ^{n-2}`.
//!
//! The schedule is fixed: always rewrite at the highest index that is not
//! yet admissible. There exactly one of the two moves applies, which makes
//! [`normalize_to_depth`] and [`project`] functions of their input.
//! [`greedy_expand`] is an unrelated route to the same words through exact
//! comparisons in `ℤ[φ]`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fibword::ZeckWord;
use crate::qphi::QPhi;

/// Default cap on the number of A/B moves in one normalization.
pub const DEFAULT_MOVE_BUDGET: u64 = 1_000_000;

/// A finitely supported series `Σ c_n t^n` with natural coefficients,
/// optionally plus an alternating tail `t^s + t^{s-2} + …`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct NatSeries {
    coeffs: BTreeMap<i64, u64>,
    tail: Option<i64>,
}

impl NatSeries {
    pub fn new() -> Self {
        NatSeries::default()
    }

    /// Sums `coeff · t^index` over the terms; repeated indices accumulate.
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, u64)>) -> Self {
        let mut s = NatSeries::new();
        for (n, c) in terms {
            s.add_at(n, c);
        }
        s
    }

    pub fn with_tail(mut self, tail: Option<i64>) -> Self {
        self.tail = tail;
        self
    }

    pub fn from_word(w: &ZeckWord) -> Self {
        NatSeries::from_terms(w.ones().iter().map(|&n| (n, 1))).with_tail(w.tail())
    }

    fn add_at(&mut self, n: i64, c: u64) {
        if c > 0 {
            *self.coeffs.entry(n).or_insert(0) += c;
        }
    }

    /// Explicit coefficients, zero entries omitted, in increasing index order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.coeffs.iter().map(|(&n, &c)| (n, c))
    }

    pub fn tail(&self) -> Option<i64> {
        self.tail
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty() && self.tail.is_none()
    }

    /// Coefficient at `n`, counting the tail.
    pub fn coeff(&self, n: i64) -> u64 {
        let explicit = self.coeffs.get(&n).copied().unwrap_or(0);
        let tail = u64::from(self.tail.is_some_and(|t| n <= t && (t - n) % 2 == 0));
        explicit + tail
    }

    fn top(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied().into_iter().chain(self.tail).max()
    }

    fn floor_index(&self) -> Option<i64> {
        self.coeffs.keys().next().copied().into_iter().chain(self.tail).min()
    }

    pub fn phi_value(&self) -> Result<QPhi> {
        let mut v = QPhi::ZERO;
        for (n, c) in self.terms() {
            v += QPhi::phi_pow(n)? * i128::from(c);
        }
        if let Some(t) = self.tail {
            v += QPhi::phi_pow(t + 1)?;
        }
        Ok(v)
    }

    /// Replaces the tail `t^s + t^{s-2} + …` by `t^{s+1}`, which has the same φ-value.
    pub fn fold_tail(&self) -> NatSeries {
        let mut s = NatSeries { coeffs: self.coeffs.clone(), tail: None };
        if let Some(t) = self.tail {
            s.add_at(t + 1, 1);
        }
        s
    }

    /// Coefficientwise sum. At most one summand may carry a tail.
    pub fn sum(&self, other: &NatSeries) -> Result<NatSeries> {
        let tail = match (self.tail, other.tail) {
            (Some(_), Some(_)) => return Err(Error::Unsupported("both summands carry an infinite tail".into())),
            (a, b) => a.or(b),
        };
        let mut s = NatSeries { coeffs: self.coeffs.clone(), tail };
        for (n, c) in other.terms() {
            s.add_at(n, c);
        }
        Ok(s)
    }

    /// Cauchy product of two finite series.
    pub fn product(&self, other: &NatSeries) -> Result<NatSeries> {
        if self.tail.is_some() || other.tail.is_some() {
            return Err(Error::domain("Cauchy product is taken on finite series; fold tails first"));
        }
        let mut s = NatSeries::new();
        for (i, a) in self.terms() {
            for (j, b) in other.terms() {
                s.add_at(i + j, a * b);
            }
        }
        Ok(s)
    }

    fn require_finite(&self, what: &str) -> Result<()> {
        if self.tail.is_some() {
            Err(Error::domain(format!("{what} acts on finite series; fold the tail first")))
        } else {
            Ok(())
        }
    }

    /// Move (A) at `n`.
    pub fn move_a(&self, n: i64) -> Result<NatSeries> {
        self.require_finite("move A")?;
        if self.coeff(n + 1) != 0 || self.coeff(n) < 1 || self.coeff(n - 1) < 1 {
            return Err(Error::domain(format!("move A does not apply at index {n}")));
        }
        let mut s = self.clone();
        s.sub_at(n, 1);
        s.sub_at(n - 1, 1);
        s.add_at(n + 1, 1);
        Ok(s)
    }

    /// Move (B) at `n`.
    pub fn move_b(&self, n: i64) -> Result<NatSeries> {
        self.require_finite("move B")?;
        if self.coeff(n + 1) != 0 || self.coeff(n) < 2 || self.coeff(n - 1) != 0 {
            return Err(Error::domain(format!("move B does not apply at index {n}")));
        }
        let mut s = self.clone();
        s.sub_at(n, 2);
        s.add_at(n + 1, 1);
        s.add_at(n - 2, 1);
        Ok(s)
    }

    fn sub_at(&mut self, n: i64, c: u64) {
        let e = self.coeffs.get_mut(&n).expect("coefficient present");
        *e -= c;
        if *e == 0 {
            self.coeffs.remove(&n);
        }
    }

    /// OK above `n`: every coefficient at `m > n` is 0 or 1 and no two
    /// neighbours above `n` are both 1. The pair `(n+1, n)` is free.
    pub fn ok_above(&self, n: i64) -> bool {
        let (Some(top), Some(floor)) = (self.top(), self.floor_index()) else {
            return true;
        };
        // Below floor - 2 only the periodic tail remains.
        let lo = (n + 1).max(floor - 2);
        (lo..=top).all(|m| {
            let c = self.coeff(m);
            c <= 1 && !(c == 1 && m - 1 > n && self.coeff(m - 1) >= 1)
        })
    }

    /// Whether the series already is an admissible word.
    pub fn is_admissible(&self) -> bool {
        self.ok_above(i64::MIN / 2)
    }

    fn to_word(&self) -> Result<ZeckWord> {
        if !self.is_admissible() {
            return Err(Error::Structure("series is not admissible".into()));
        }
        ZeckWord::new(self.coeffs.keys().copied(), self.tail)
    }
}

/// Dense window of coefficients used while rewriting.
struct Dense {
    low: i64,
    c: Vec<u64>,
}

impl Dense {
    fn from_series(s: &NatSeries) -> Self {
        let low = s.coeffs.keys().next().copied().unwrap_or(0);
        let high = s.coeffs.keys().next_back().copied().unwrap_or(0);
        let mut c = vec![0; (high - low + 1) as usize];
        for (n, v) in s.terms() {
            c[(n - low) as usize] = v;
        }
        Dense { low, c }
    }

    fn high(&self) -> i64 {
        self.low + self.c.len() as i64 - 1
    }

    fn get(&self, n: i64) -> u64 {
        if n < self.low || n > self.high() {
            0
        } else {
            self.c[(n - self.low) as usize]
        }
    }

    fn slot(&mut self, n: i64) -> &mut u64 {
        if n > self.high() {
            let extra = (n - self.high()) as usize;
            self.c.extend(std::iter::repeat_n(0, extra));
        }
        if n < self.low {
            let extra = (self.low - n) as usize;
            self.c.splice(0..0, std::iter::repeat_n(0, extra));
            self.low = n;
        }
        &mut self.c[(n - self.low) as usize]
    }

    fn violates(&self, n: i64) -> bool {
        let c = self.get(n);
        c >= 2 || (c == 1 && self.get(n - 1) >= 1)
    }

    /// Applies scheduled moves until no index above `stop` violates
    /// admissibility. Returns the number of moves made.
    fn run(&mut self, stop: i64, budget: u64) -> Result<u64> {
        let mut moves = 0u64;
        let mut k = self.high();
        loop {
            let floor = (stop + 1).max(self.low);
            let Some(n) = (floor..=k).rev().find(|&n| self.violates(n)) else {
                return Ok(moves);
            };
            if moves >= budget {
                return Err(Error::BudgetExhausted { budget, during: "normalization" });
            }
            debug_assert_eq!(self.get(n + 1), 0);
            if self.get(n - 1) >= 1 {
                *self.slot(n) -= 1;
                *self.slot(n - 1) -= 1;
            } else {
                *self.slot(n) -= 2;
                *self.slot(n - 2) += 1;
            }
            *self.slot(n + 1) += 1;
            moves += 1;
            k = n + 2;
        }
    }

    fn into_series(self) -> NatSeries {
        NatSeries::from_terms(self.c.iter().enumerate().map(|(i, &c)| (self.low + i as i64, c)))
    }
}

/// `P_n(s)`: rewrites `s` until it is OK above `n`, with the default budget.
///
/// A tailed input is folded first.
pub fn normalize_to_depth(s: &NatSeries, n: i64) -> Result<NatSeries> {
    normalize_to_depth_with_budget(s, n, DEFAULT_MOVE_BUDGET)
}

pub fn normalize_to_depth_with_budget(s: &NatSeries, n: i64, budget: u64) -> Result<NatSeries> {
    let mut dense = Dense::from_series(&s.fold_tail());
    dense.run(n, budget)?;
    Ok(dense.into_series())
}

/// The canonical projection `P` onto admissible words, with the default budget.
pub fn project(s: &NatSeries) -> Result<ZeckWord> {
    project_with_budget(s, DEFAULT_MOVE_BUDGET)
}

/// Like [`project`] but also reports how many moves were made.
pub fn project_counting(s: &NatSeries, budget: u64) -> Result<(ZeckWord, u64)> {
    if s.is_admissible() {
        return Ok((s.to_word()?, 0));
    }
    let mut dense = Dense::from_series(&s.fold_tail());
    let moves = dense.run(i64::MIN / 2, budget)?;
    Ok((dense.into_series().to_word()?, moves))
}

/// `P(s)`. Admissible input (tailed or not) is returned as is. Otherwise a
/// tail is folded into a single term and the finite series is rewritten to
/// completion, so the result is the finite word of that φ-value.
pub fn project_with_budget(s: &NatSeries, budget: u64) -> Result<ZeckWord> {
    project_counting(s, budget).map(|(w, _)| w)
}

/// Maximum number of digits [`greedy_expand`] emits before giving up.
pub const GREEDY_DIGIT_BUDGET: usize = 10_000;

/// Expands a non-negative element of `ℤ[φ]` by repeatedly subtracting the
/// largest power `φ^n` not exceeding the remainder.
pub fn greedy_expand(v: QPhi) -> Result<ZeckWord> {
    if v < QPhi::ZERO {
        return Err(Error::domain(format!("cannot expand negative value {v}")));
    }
    let mut rest = v;
    let mut ones = Vec::new();
    let mut n = 0i64;
    if !rest.is_zero() {
        while QPhi::phi_pow(n + 1)? <= rest {
            n += 1;
        }
    }
    while !rest.is_zero() {
        if ones.len() >= GREEDY_DIGIT_BUDGET {
            return Err(Error::domain(format!("{v} has no expansion within {GREEDY_DIGIT_BUDGET} digits")));
        }
        let mut p = QPhi::phi_pow(n)?;
        while p > rest {
            n -= 1;
            p = QPhi::phi_pow(n)?;
        }
        rest = rest - p;
        ones.push(n);
        n -= 1;
    }
    ZeckWord::from_ones(ones)
}
