//! The Stern–Brocot tree on coprime pairs and the Farey geometry built on it.
//!
//! Every coprime `v = (x, y)` is the mediant `v = v⁻ + v⁺` of its lower and
//! upper Farey parents. The longer parent is the *mother* `M(v)`, the shorter
//! the *father* `F(v)`. The weighted norms
//! `|v|_n = a_{n+2} |M(v)| + a_{n+1} |F(v)|` cut out the balls `C(R, n)`,
//! and differences of consecutive balls give the layers `ℓ(n, R)`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fibword::ZeckWord;
use crate::fibzeck::{a_signed, big_m, FibTable};

/// A vertex of the Farey graph: a coprime pair `(x, y)` with `x, y >= 1`, or
/// one of the two ends `0 = (1, 0)` and `∞ = (0, 1)`.
///
/// Points order by slope `y / x`, which is a total order on coprime pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticePoint {
    x: u64,
    y: u64,
}

/// Slope-ordered set of lattice points.
pub type PointSet = BTreeSet<LatticePoint>;

impl LatticePoint {
    /// The end `0 = (1, 0)`.
    pub const ZERO_END: LatticePoint = LatticePoint { x: 1, y: 0 };
    /// The end `∞ = (0, 1)`.
    pub const INFINITY_END: LatticePoint = LatticePoint { x: 0, y: 1 };
    /// The root `(1, 1)` of the Stern–Brocot tree.
    pub const ROOT: LatticePoint = LatticePoint { x: 1, y: 1 };

    pub fn new(x: u64, y: u64) -> Result<Self> {
        if x == 0 || y == 0 {
            return Err(Error::domain(format!("({x},{y}) has a zero coordinate")));
        }
        if gcd(x, y) != 1 {
            return Err(Error::domain(format!("({x},{y}) is not a coprime pair")));
        }
        Ok(LatticePoint { x, y })
    }

    pub fn x(&self) -> u64 {
        self.x
    }

    pub fn y(&self) -> u64 {
        self.y
    }

    /// `|v| = x + y`.
    pub fn norm(&self) -> u64 {
        self.x + self.y
    }

    pub fn is_end(&self) -> bool {
        self.x == 0 || self.y == 0
    }

    /// `x·y' - y·x'`.
    pub fn det(&self, other: &LatticePoint) -> i128 {
        self.x as i128 * other.y as i128 - self.y as i128 * other.x as i128
    }

    /// `v + k·w`.
    pub fn plus_multiple(&self, k: u64, w: &LatticePoint) -> LatticePoint {
        LatticePoint { x: self.x + k * w.x, y: self.y + k * w.y }
    }

    /// The two Stern–Brocot children `(v + v⁻, v + v⁺)`, lower slope first.
    pub fn children(&self) -> Result<(LatticePoint, LatticePoint)> {
        let (lo, hi) = farey_parents(*self)?;
        Ok((*self + lo, *self + hi))
    }
}

impl Add for LatticePoint {
    type Output = LatticePoint;
    fn add(self, o: LatticePoint) -> LatticePoint {
        LatticePoint { x: self.x + o.x, y: self.y + o.y }
    }
}

impl Ord for LatticePoint {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = self.y as u128 * other.x as u128;
        let rhs = other.y as u128 * self.x as u128;
        lhs.cmp(&rhs).then_with(|| (self.x, self.y).cmp(&(other.x, other.y)))
    }
}

impl PartialOrd for LatticePoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Inverse of `y` modulo `x`, in `1..=x`.
fn inverse_mod(y: u64, x: u64) -> u64 {
    if x == 1 {
        return 1;
    }
    let (mut r0, mut r1) = (x as i128, (y % x) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1);
    s0.rem_euclid(x as i128) as u64
}

/// The lower and upper Farey parents `(v⁻, v⁺)` of a coprime pair.
fn farey_parents(v: LatticePoint) -> Result<(LatticePoint, LatticePoint)> {
    if v.is_end() {
        return Err(Error::domain(format!("{v} is an end of the Farey graph and has no parents")));
    }
    // v⁻ = (a, b) is the solution of a·y - b·x = 1 with 1 <= a <= x.
    let a = inverse_mod(v.y, v.x);
    let b = (a as u128 * v.y as u128 - 1) / v.x as u128;
    let lower = LatticePoint { x: a, y: b as u64 };
    let upper = LatticePoint { x: v.x - lower.x, y: v.y - lower.y };
    Ok((lower, upper))
}

/// Farey parents of a lattice point, and which of them is the mother.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Genealogy {
    /// `v⁻`, the parent of smaller slope.
    pub lower: LatticePoint,
    /// `v⁺`, the parent of larger slope.
    pub upper: LatticePoint,
    /// The longer parent. For the root, `∞ = (0, 1)` by convention.
    pub mother: LatticePoint,
    /// The shorter parent. For the root, `0 = (1, 0)` by convention.
    pub father: LatticePoint,
}

pub fn genealogy(v: LatticePoint) -> Result<Genealogy> {
    let (lower, upper) = farey_parents(v)?;
    let (mother, father) = if v == LatticePoint::ROOT {
        (LatticePoint::INFINITY_END, LatticePoint::ZERO_END)
    } else if lower.norm() > upper.norm() {
        (lower, upper)
    } else {
        (upper, lower)
    };
    Ok(Genealogy { lower, upper, mother, father })
}

pub fn mother(v: LatticePoint) -> Result<LatticePoint> {
    genealogy(v).map(|g| g.mother)
}

pub fn father(v: LatticePoint) -> Result<LatticePoint> {
    genealogy(v).map(|g| g.father)
}

/// One step down the Stern–Brocot tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Turn {
    /// To `v + v⁻`: left multiplication by `[[1,0],[1,1]]`.
    Lower,
    /// To `v + v⁺`: left multiplication by `[[1,1],[0,1]]`.
    Upper,
}

/// A 2×2 matrix over ℕ, rows first.
pub type Mat2 = [[u64; 2]; 2];

impl Turn {
    pub fn generator(self) -> Mat2 {
        match self {
            Turn::Lower => [[1, 0], [1, 1]],
            Turn::Upper => [[1, 1], [0, 1]],
        }
    }
}

pub fn mat_mul(p: &Mat2, q: &Mat2) -> Mat2 {
    let mut r = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            r[i][j] = p[i][0] * q[0][j] + p[i][1] * q[1][j];
        }
    }
    r
}

/// The element `g_v` of `SL₂(ℕ)` with rows `v⁻` and `v⁺`.
pub fn sl2_matrix(v: LatticePoint) -> Result<Mat2> {
    let (lo, hi) = farey_parents(v)?;
    Ok([[lo.x, lo.y], [hi.x, hi.y]])
}

/// The path of turns from `(1, 1)` down to `v`.
pub fn descent(v: LatticePoint) -> Result<Vec<Turn>> {
    if v.is_end() {
        return Err(Error::domain(format!("{v} is not a tree vertex")));
    }
    // The subtractive Euclidean steps on (x, y) read off the turns from the
    // root downward: x > y means v lies below the lower child (2, 1).
    let (mut x, mut y) = (v.x, v.y);
    let mut turns = Vec::new();
    while (x, y) != (1, 1) {
        if x > y {
            turns.push(Turn::Lower);
            x -= y;
        } else {
            turns.push(Turn::Upper);
            y -= x;
        }
    }
    Ok(turns)
}

/// Depth of `v` in the Stern–Brocot tree; the root has depth 0.
pub fn tree_depth(v: LatticePoint) -> Result<usize> {
    descent(v).map(|d| d.len())
}

/// `|v|_n = a_{n+2} |M(v)| + a_{n+1} |F(v)|`.
pub fn weighted_norm(v: LatticePoint, n: u32) -> Result<u128> {
    let g = genealogy(v)?;
    weighted_norm_of(&g, n)
}

fn weighted_norm_of(g: &Genealogy, n: u32) -> Result<u128> {
    let big = a_signed(n as i64 + 2)? as u128;
    let small = a_signed(n as i64 + 1)? as u128;
    big.checked_mul(g.mother.norm() as u128)
        .zip(small.checked_mul(g.father.norm() as u128))
        .and_then(|(p, q)| p.checked_add(q))
        .ok_or_else(|| Error::Capacity(format!("|v|_{n} overflows u128")))
}

/// `C(R)`: coprime pairs with `x + y <= R`.
pub fn ball(r: u64) -> PointSet {
    let mut out = PointSet::new();
    for x in 1..r {
        for y in 1..=(r - x) {
            if gcd(x, y) == 1 {
                out.insert(LatticePoint { x, y });
            }
        }
    }
    out
}

/// `C(R, n) = {v : |v|_n <= R}`.
pub fn ball_n(r: u64, n: u32) -> Result<PointSet> {
    let mut out = PointSet::new();
    for v in ball(r) {
        if weighted_norm(v, n)? <= r as u128 {
            out.insert(v);
        }
    }
    Ok(out)
}

/// `Φc`: the points of `c` both of whose children lie in `c`.
pub fn branch_core(c: &PointSet) -> Result<PointSet> {
    let mut out = PointSet::new();
    for v in c {
        let (lo, hi) = v.children()?;
        if c.contains(&lo) && c.contains(&hi) {
            out.insert(*v);
        }
    }
    Ok(out)
}

/// A path `0 → … → ∞` through the Farey graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct BoundaryPath(Vec<LatticePoint>);

impl BoundaryPath {
    /// Checks the ends and the unimodularity of every step.
    pub fn new(vertices: Vec<LatticePoint>) -> Result<Self> {
        if vertices.first() != Some(&LatticePoint::ZERO_END) || vertices.last() != Some(&LatticePoint::INFINITY_END) {
            return Err(Error::Structure("boundary path must run from (1,0) to (0,1)".into()));
        }
        for w in vertices.windows(2) {
            if w[0].det(&w[1]).abs() != 1 {
                return Err(Error::Structure(format!("step {} → {} is not unimodular", w[0], w[1])));
            }
        }
        Ok(BoundaryPath(vertices))
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.0
    }

    /// Number of steps.
    pub fn len(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn steps(&self) -> impl Iterator<Item = (LatticePoint, LatticePoint)> + '_ {
        self.0.windows(2).map(|w| (w[0], w[1]))
    }
}

impl fmt::Display for BoundaryPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" -> ")?;
            }
            match *v {
                LatticePoint::ZERO_END => f.write_str("0")?,
                LatticePoint::INFINITY_END => f.write_str("inf")?,
                _ => write!(f, "{v}")?,
            }
        }
        Ok(())
    }
}

/// `∂c = {0} ⊔ c ⊔ {∞}` in slope order.
pub fn boundary(c: &PointSet) -> Result<BoundaryPath> {
    let mut v = Vec::with_capacity(c.len() + 2);
    v.push(LatticePoint::ZERO_END);
    v.extend(c.iter().copied());
    v.push(LatticePoint::INFINITY_END);
    BoundaryPath::new(v)
}

/// How one step `[left, right]` of `∂C(R, n+1)` is refined in `∂C(R, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct DnaStep {
    pub left: LatticePoint,
    pub right: LatticePoint,
    /// `λ >= 0` inserts `left + k·right` for `k = 1 ..= λ+1`; `λ < 0`
    /// inserts `right + k·left` for `k = 1 ..= |λ|+1`. `None` when nothing
    /// is inserted.
    pub lambda: Option<i64>,
}

impl DnaStep {
    /// The inserted vertices, in slope order from `left` to `right`.
    pub fn inserted(&self) -> Vec<LatticePoint> {
        match self.lambda {
            None => Vec::new(),
            Some(l) if l >= 0 => (1..=(l as u64 + 1)).map(|k| self.left.plus_multiple(k, &self.right)).collect(),
            Some(l) => (1..=(l.unsigned_abs() + 1))
                .rev()
                .map(|k| self.right.plus_multiple(k, &self.left))
                .collect(),
        }
    }
}

/// Reads off `λ` for one step from the vertices inserted between its ends.
fn match_fan(left: LatticePoint, right: LatticePoint, inserted: &[LatticePoint]) -> Result<Option<i64>> {
    let k = inserted.len();
    if k == 0 {
        return Ok(None);
    }
    let toward_right = inserted
        .iter()
        .enumerate()
        .all(|(q, v)| *v == left.plus_multiple(q as u64 + 1, &right));
    if toward_right {
        return Ok(Some(k as i64 - 1));
    }
    let toward_left = inserted
        .iter()
        .enumerate()
        .all(|(q, v)| *v == right.plus_multiple((k - q) as u64, &left));
    if toward_left {
        return Ok(Some(-(k as i64 - 1)));
    }
    Err(Error::Structure(format!(
        "vertices inserted between {left} and {right} form neither fan: {inserted:?}"
    )))
}

/// Compares a coarse path with a finer one containing all its vertices and
/// reads off `λ` for every coarse step.
pub fn dna_between(coarse: &BoundaryPath, fine: &BoundaryPath) -> Result<Vec<DnaStep>> {
    let fine_v = fine.vertices();
    let mut pos = 0;
    let mut out = Vec::with_capacity(coarse.len());
    for (left, right) in coarse.steps() {
        let i = pos + fine_v[pos..]
            .iter()
            .position(|v| *v == left)
            .ok_or_else(|| Error::Structure(format!("{left} missing from the finer path")))?;
        let j = i + 1 + fine_v[i + 1..]
            .iter()
            .position(|v| *v == right)
            .ok_or_else(|| Error::Structure(format!("{right} missing from the finer path")))?;
        let lambda = match_fan(left, right, &fine_v[i + 1..j])?;
        out.push(DnaStep { left, right, lambda });
        pos = j;
    }
    Ok(out)
}

/// The d.n.a `λ^R_n` taking `∂C(R, n+1)` to `∂C(R, n)`.
pub fn extract_dna(r: u64, n: u32) -> Result<Vec<DnaStep>> {
    let coarse = boundary(&ball_n(r, n + 1)?)?;
    let fine = boundary(&ball_n(r, n)?)?;
    dna_between(&coarse, &fine)
}

/// Replaces every step of `path` by its fan of inserted vertices.
pub fn insert_dna(path: &BoundaryPath, steps: &[DnaStep]) -> Result<BoundaryPath> {
    if steps.len() != path.len() {
        return Err(Error::domain(format!(
            "{} d.n.a steps for a path of {} steps",
            steps.len(),
            path.len()
        )));
    }
    let mut out = Vec::new();
    for ((left, right), step) in path.steps().zip(steps) {
        if (step.left, step.right) != (left, right) {
            return Err(Error::domain(format!(
                "step [{}, {}] does not match path step [{left}, {right}]",
                step.left, step.right
            )));
        }
        out.push(left);
        out.extend(step.inserted());
    }
    out.push(LatticePoint::INFINITY_END);
    BoundaryPath::new(out)
}

/// `ℓ(n, R) = C(R, M(R)-n-1) \ C(R, M(R)-n)`.
pub fn layer(n: u32, r: u64) -> Result<PointSet> {
    if n == 0 {
        return Err(Error::domain("layers are numbered from 1"));
    }
    let m = if r == 0 { 0 } else { big_m(&r)? };
    if m < n + 1 {
        return Err(Error::domain(format!("layer {n} needs M(R) >= {}, but M({r}) = {m}", n + 1)));
    }
    let inner = ball_n(r, m - n - 1)?;
    let outer = ball_n(r, m - n)?;
    Ok(inner.difference(&outer).copied().collect())
}

/// `b(n, R) = C(R, M(R)-n-1)`, the union of layers `1..=n`.
pub fn base(n: u32, r: u64) -> Result<PointSet> {
    let m = if r == 0 { 0 } else { big_m(&r)? };
    if m < n + 1 {
        return Err(Error::domain(format!("base {n} needs M(R) >= {}, but M({r}) = {m}", n + 1)));
    }
    ball_n(r, m - n - 1)
}

/// Largest `m` for which `R^z_m` is guaranteed to fit a `u128`.
const MAX_COHERENT_INDEX: u64 = 170;

/// The level of `v` read at the finite radius `R = R^z_m`: the `n` with
/// `|v|_{M(R)-n-1} <= R < |v|_{M(R)-n}`. `None` if `v` lies outside `C(R)`.
pub fn level_at(z: &ZeckWord, v: LatticePoint, m: u64) -> Result<Option<u32>> {
    let r: u128 = z.coherent(m)?;
    if r == 0 {
        return Ok(None);
    }
    let g = genealogy(v)?;
    let big_m = FibTable::covering(&r).big_m(&r)?;
    if weighted_norm_of(&g, 0)? > r {
        return Ok(None);
    }
    // |v|_k grows with k, so scan for the last k with |v|_k <= R.
    let mut k = 0u32;
    while k + 1 < big_m && weighted_norm_of(&g, k + 1)? <= r {
        k += 1;
    }
    if k + 1 >= big_m {
        return Ok(None);
    }
    Ok(Some(big_m - 1 - k))
}

fn require_principal(z: &ZeckWord) -> Result<()> {
    if z.is_principal() {
        Ok(())
    } else {
        Err(Error::domain(format!("{z} is not a principal unit (top digit at index 0)")))
    }
}

/// The level function `f^z(v)`: the `n` with `v ∈ ℓ(n, R^z_m)` for all large `m`.
///
/// Starts at `m = depth(z) + max(8, ⌈log_φ |v|²⌉)` and doubles until two
/// consecutive indices agree and `f_{m-n} > |v|²`.
pub fn level_function(z: &ZeckWord, v: LatticePoint) -> Result<u32> {
    require_principal(z)?;
    let depth = z.ones().last().copied().into_iter().chain(z.tail()).min().unwrap_or(0).unsigned_abs();
    let sq = (v.norm() as u128).pow(2);
    let log_sq = ((sq as f64).ln() / crate::qphi::PHI_F64.ln()).ceil() as u64;
    let mut m = depth + log_sq.max(8);
    while m < MAX_COHERENT_INDEX {
        let here = level_at(z, v, m)?;
        let next = level_at(z, v, m + 1)?;
        if let (Some(a), Some(b)) = (here, next) {
            let gap = m as i64 - a as i64;
            let settled = FibTable::<u128>::with_max_index(gap.max(0) as usize)?
                .f(gap)
                .is_some_and(|f| f > sq);
            if a == b && settled {
                return Ok(a);
            }
        }
        m = (2 * m).min(MAX_COHERENT_INDEX);
        if m == MAX_COHERENT_INDEX {
            break;
        }
    }
    Err(Error::BudgetExhausted { budget: MAX_COHERENT_INDEX, during: "level stabilization" })
}

/// `df^z(v) = f^z(v + F(v)) - f^z(v)`, always 0 or 1.
pub fn level_increment(z: &ZeckWord, v: LatticePoint) -> Result<u32> {
    let fv = level_function(z, v)?;
    let child = v + father(v)?;
    let fc = level_function(z, child)?;
    fc.checked_sub(fv)
        .filter(|d| *d <= 1)
        .ok_or_else(|| Error::Structure(format!("df^z at {v} is {fc} - {fv}, outside {{0, 1}}")))
}

/// `Z(z) = {v : df^z(v) = 0}`, restricted to `|v| <= bound`.
pub fn z_set(z: &ZeckWord, bound: u64) -> Result<PointSet> {
    require_principal(z)?;
    let mut out = PointSet::new();
    for v in ball(bound) {
        if level_increment(z, v)? == 0 {
            out.insert(v);
        }
    }
    Ok(out)
}
