//! Shared generators and independent oracles for the integration suites.
#![allow(dead_code)]

use std::cmp::Ordering;

use fibonadic::farey::genealogy;
use fibonadic::{LatticePoint, NatSeries, QPhi, ZeckWord};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Signed Fibonacci numbers by the two-sided recurrence, independent of the
/// library tables.
pub fn fib_signed(n: i64) -> i128 {
    let (mut a, mut b) = (0i128, 1i128);
    if n >= 0 {
        for _ in 0..n {
            (a, b) = (b, a + b);
        }
        a
    } else {
        // a_{k-1} = a_{k+1} - a_k, walking down from (a_0, a_1).
        for _ in 0..(-n) {
            (a, b) = (b - a, a);
        }
        a
    }
}

/// `φ^n = a_{n-1} + a_n φ`.
pub fn phi_pow(n: i64) -> QPhi {
    QPhi::new(fib_signed(n - 1), fib_signed(n))
}

/// `Σ c_n φ^n` for a finite list of terms.
pub fn series_value(terms: &[(i64, u64)]) -> QPhi {
    terms.iter().map(|&(n, c)| phi_pow(n) * c as i128).sum()
}

/// `φ`-value of a word computed digit by digit; a tail at `t` contributes
/// `φ^{t+1}`.
pub fn word_value(w: &ZeckWord) -> QPhi {
    let mut v: QPhi = w.ones().iter().map(|&n| phi_pow(n)).sum();
    if let Some(t) = w.tail() {
        v = v + phi_pow(t + 1);
    }
    v
}

/// Ones at indices in `lo..=hi`, no two adjacent, each present with
/// probability about 2/5.
pub fn random_ones(r: &mut ChaCha8Rng, hi: i64, lo: i64) -> Vec<i64> {
    let mut ones = Vec::new();
    let mut n = hi;
    while n >= lo {
        if r.gen_bool(0.4) {
            ones.push(n);
            n -= 2;
        } else {
            n -= 1;
        }
    }
    ones
}

/// A finite word supported in `[-8, 8]`.
pub fn random_finite(r: &mut ChaCha8Rng) -> ZeckWord {
    ZeckWord::from_ones(random_ones(r, 8, -8)).unwrap()
}

pub fn random_finite_nonzero(r: &mut ChaCha8Rng) -> ZeckWord {
    loop {
        let w = random_finite(r);
        if !w.is_zero() {
            return w;
        }
    }
}

/// A finite principal unit with lowest digit at depth at most `depth`.
pub fn random_principal(r: &mut ChaCha8Rng, depth: i64) -> ZeckWord {
    let mut ones = vec![0];
    ones.extend(random_ones(r, -2, -depth));
    ZeckWord::from_ones(ones).unwrap()
}

/// A principal unit with an alternating tail below a random prefix.
pub fn random_tailed_principal(r: &mut ChaCha8Rng, depth: i64) -> ZeckWord {
    let z = random_principal(r, depth);
    let low = z.lowest().unwrap();
    let t = low - 2 - r.gen_range(0..3);
    ZeckWord::new(z.ones().iter().copied(), Some(t)).unwrap()
}

/// A series with support in `[-8, 8]` and coefficients in `0..=9`.
pub fn random_series(r: &mut ChaCha8Rng) -> (NatSeries, Vec<(i64, u64)>) {
    let terms: Vec<(i64, u64)> = (-8..=8)
        .filter_map(|n| {
            let c = r.gen_range(0..=9u64);
            (r.gen_bool(0.5) && c > 0).then_some((n, c))
        })
        .collect();
    (NatSeries::from_terms(terms.iter().copied()), terms)
}

/// A random coprime point with `|v| <= bound`.
pub fn random_point(r: &mut ChaCha8Rng, bound: u64) -> LatticePoint {
    loop {
        let x = r.gen_range(1..bound);
        let y = r.gen_range(1..=(bound - x).max(1));
        if x + y <= bound {
            if let Ok(v) = LatticePoint::new(x, y) {
                return v;
            }
        }
    }
}

/// Exact membership in `b(n, z)`: `V(z) φ^{n+1} >= |M(v)| φ + |F(v)|`,
/// strict for tailed `z`. Derived from `R^z_m ≈ V(z) φ^m / √5` with the
/// conjugate terms deciding the boundary case.
pub fn in_base_exact(z: &ZeckWord, v: LatticePoint, n: u32) -> bool {
    let g = genealogy(v).unwrap();
    let lhs = word_value(z) * phi_pow(n as i64 + 1);
    let rhs = QPhi::new(g.father.norm() as i128, g.mother.norm() as i128);
    match lhs.cmp(&rhs) {
        Ordering::Greater => true,
        Ordering::Equal => z.is_finite(),
        Ordering::Less => false,
    }
}

/// Exact level: the least `n` with `v ∈ b(n, z)`.
pub fn level_exact(z: &ZeckWord, v: LatticePoint) -> u32 {
    (1..).find(|&n| in_base_exact(z, v, n)).unwrap()
}
