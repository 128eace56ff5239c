//! Addition and multiplication of Fibonadic words through the projection `P`.

use crate::error::{Error, Result};
use crate::fibword::ZeckWord;
use crate::normalize::{project_with_budget, NatSeries, DEFAULT_MOVE_BUDGET};

fn reject_two_tails(z: &ZeckWord, w: &ZeckWord, op: &str) -> Result<()> {
    if !z.is_finite() && !w.is_finite() {
        Err(Error::Unsupported(format!("{op} of two words with infinite tails")))
    } else {
        Ok(())
    }
}

/// `z + w = P(z(t) + w(t))`.
pub fn add(z: &ZeckWord, w: &ZeckWord) -> Result<ZeckWord> {
    add_with_budget(z, w, DEFAULT_MOVE_BUDGET)
}

pub fn add_with_budget(z: &ZeckWord, w: &ZeckWord, budget: u64) -> Result<ZeckWord> {
    reject_two_tails(z, w, "addition")?;
    project_with_budget(&NatSeries::from_word(z).sum(&NatSeries::from_word(w))?, budget)
}

/// `z · w = P(z(t) · w(t))`.
pub fn mul(z: &ZeckWord, w: &ZeckWord) -> Result<ZeckWord> {
    mul_with_budget(z, w, DEFAULT_MOVE_BUDGET)
}

pub fn mul_with_budget(z: &ZeckWord, w: &ZeckWord, budget: u64) -> Result<ZeckWord> {
    reject_two_tails(z, w, "multiplication")?;
    if z.is_zero() || w.is_zero() {
        return Ok(ZeckWord::zero());
    }
    // A product with a single power of t is a shift and already admissible.
    for (a, b) in [(z, w), (w, z)] {
        if let ([k], None) = (b.ones(), b.tail()) {
            return Ok(a.shift(*k));
        }
    }
    let lhs = NatSeries::from_word(z).fold_tail();
    let rhs = NatSeries::from_word(w).fold_tail();
    project_with_budget(&lhs.product(&rhs)?, budget)
}

/// `Φ^n`.
pub fn phi_power(n: i64) -> ZeckWord {
    ZeckWord::phi_power(n)
}
