//! Height-`n` configurations `b(n, z)` over the principal units, their
//! breakpoints, and the planar tree they form under restriction.

use std::collections::{BTreeMap, BTreeSet};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::farey::{father, level_function, LatticePoint, PointSet};
use crate::fibword::ZeckWord;

/// The base `b(n, z)` with its truncated level function and markers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Config {
    height: u32,
    levels: BTreeMap<LatticePoint, u32>,
    markers: BTreeSet<LatticePoint>,
}

impl Config {
    /// Builds a config from a levels map, deriving the markers.
    pub fn from_levels(height: u32, levels: BTreeMap<LatticePoint, u32>) -> Result<Self> {
        if height == 0 {
            return Err(Error::domain("configs have height at least 1"));
        }
        if let Some((v, l)) = levels.iter().find(|(_, l)| **l == 0 || **l > height) {
            return Err(Error::domain(format!("{v} has level {l} outside 1..={height}")));
        }
        let mut markers = BTreeSet::new();
        for (v, l) in &levels {
            let w = *v + father(*v)?;
            if levels.get(&w) == Some(l) {
                markers.insert(*v);
            }
        }
        Ok(Config { height, levels, markers })
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn levels(&self) -> &BTreeMap<LatticePoint, u32> {
        &self.levels
    }

    pub fn level(&self, v: LatticePoint) -> Option<u32> {
        self.levels.get(&v).copied()
    }

    /// Points `v` with `v + F(v)` in the base at the same level.
    pub fn markers(&self) -> &BTreeSet<LatticePoint> {
        &self.markers
    }

    /// The base set `b(n, z)`, slope ordered.
    pub fn base(&self) -> PointSet {
        self.levels.keys().copied().collect()
    }

    /// Points of exactly level `n`.
    pub fn layer(&self, n: u32) -> PointSet {
        self.levels.iter().filter(|(_, l)| **l == n).map(|(v, _)| *v).collect()
    }
}

impl Serialize for Config {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Point {
            x: u64,
            y: u64,
            level: u32,
            marker: bool,
        }
        let points: Vec<Point> = self
            .levels
            .iter()
            .map(|(v, l)| Point { x: v.x(), y: v.y(), level: *l, marker: self.markers.contains(v) })
            .collect();
        let mut st = s.serialize_struct("Config", 2)?;
        st.serialize_field("height", &self.height)?;
        st.serialize_field("points", &points)?;
        st.end()
    }
}

/// A breakpoint `zⁿ_k`: the least word whose height-`n` config is the `k`-th.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Breakpoint {
    pub word: ZeckWord,
    pub config_index: usize,
}

fn require_principal(z: &ZeckWord) -> Result<()> {
    if z.is_principal() {
        Ok(())
    } else {
        Err(Error::domain(format!("{z} is not a principal unit")))
    }
}

/// `b(n, z)` with levels and markers.
///
/// The base is a subtree of the Stern–Brocot tree, so it is collected by
/// descending from `(1, 1)` while the level stays at most `n`.
pub fn config_of(z: &ZeckWord, n: u32) -> Result<Config> {
    require_principal(z)?;
    if n == 0 {
        return Err(Error::domain("configs have height at least 1"));
    }
    let mut levels = BTreeMap::new();
    let mut frontier = vec![LatticePoint::ROOT];
    while let Some(v) = frontier.pop() {
        let l = level_function(z, v)?;
        if l <= n {
            levels.insert(v, l);
            let (lo, hi) = v.children()?;
            frontier.push(lo);
            frontier.push(hi);
        }
    }
    Config::from_levels(n, levels)
}

/// The restriction `r : B(n) → B(n-1)`: drops the level-`n` points.
pub fn restrict(c: &Config) -> Result<Config> {
    if c.height < 2 {
        return Err(Error::domain("the root config has no restriction"));
    }
    let h = c.height - 1;
    let levels = c.levels.iter().filter(|(_, l)| **l <= h).map(|(v, l)| (*v, *l)).collect();
    Config::from_levels(h, levels)
}

/// `c ≤ c'` iff `rʲ c ⊆ rʲ c'` for every `j`.
pub fn tree_order(c: &Config, other: &Config) -> Result<bool> {
    if c.height != other.height {
        return Err(Error::domain(format!(
            "cannot compare configs of heights {} and {}",
            c.height, other.height
        )));
    }
    let (mut a, mut b) = (c.clone(), other.clone());
    loop {
        if !a.base().is_subset(&b.base()) {
            return Ok(false);
        }
        if a.height == 1 {
            return Ok(true);
        }
        a = restrict(&a)?;
        b = restrict(&b)?;
    }
}

/// Longest finite prefix explored for height `n`.
pub fn depth_cap(n: u32) -> usize {
    4 * n as usize + 8
}

/// The distinct configs of height `n` in increasing order of `z`, each with
/// its breakpoint.
///
/// A prefix covering indices `0 ..= -(len-1)` and ending in 0 spans the
/// interval from its zero completion to its alternating-tail completion.
/// If both ends share a config, so does the whole interval; otherwise the
/// prefix splits into `p0` and `p10`.
pub fn enumerate(n: u32) -> Result<Vec<(Breakpoint, Config)>> {
    if n == 0 {
        return Err(Error::domain("configs have height at least 1"));
    }
    let mut resolved: Vec<(ZeckWord, Config)> = Vec::new();
    explore(vec![0], 2, n, &mut resolved)?;
    let mut out: Vec<(Breakpoint, Config)> = Vec::new();
    for (word, config) in resolved {
        if out.last().is_some_and(|(_, c)| *c == config) {
            continue;
        }
        let config_index = out.len();
        out.push((Breakpoint { word, config_index }, config));
    }
    Ok(out)
}

fn explore(ones: Vec<i64>, len: i64, n: u32, out: &mut Vec<(ZeckWord, Config)>) -> Result<()> {
    if len as usize > depth_cap(n) {
        return Err(Error::BudgetExhausted { budget: depth_cap(n) as u64, during: "breakpoint search" });
    }
    let low = ZeckWord::from_ones(ones.iter().copied())?;
    let high = ZeckWord::new(ones.iter().copied(), Some(-len))?;
    let c_low = config_of(&low, n)?;
    if c_low == config_of(&high, n)? {
        out.push((low, c_low));
        return Ok(());
    }
    explore(ones.clone(), len + 1, n, out)?;
    let mut with_one = ones;
    with_one.push(-len);
    explore(with_one, len + 2, n, out)
}

/// Checks that the height-`(n-1)` breakpoints appear among the height-`n`
/// ones and that every height-`n` interval sits inside one of height `n-1`.
pub fn breakpoint_nesting(n: u32) -> Result<bool> {
    if n < 2 {
        return Err(Error::domain("nesting compares heights n-1 and n, so n >= 2"));
    }
    let coarse: Vec<ZeckWord> = enumerate(n - 1)?.into_iter().map(|(b, _)| b.word).collect();
    let fine: Vec<ZeckWord> = enumerate(n)?.into_iter().map(|(b, _)| b.word).collect();
    Ok(nested(&coarse, &fine))
}

/// Both lists are increasing. The interval `[fine_k, fine_{k+1})` must lie
/// in `[coarse_j, coarse_{j+1})` for the last `coarse_j <= fine_k`, where the
/// final interval of each list runs up to `Φ`.
pub fn nested(coarse: &[ZeckWord], fine: &[ZeckWord]) -> bool {
    if !coarse.iter().all(|b| fine.contains(b)) {
        return false;
    }
    for (k, start) in fine.iter().enumerate() {
        let Some(j) = coarse.iter().rposition(|c| c <= start) else {
            return false;
        };
        match (fine.get(k + 1), coarse.get(j + 1)) {
            (_, None) => {}
            (None, Some(_)) => return false,
            (Some(end), Some(bound)) if end > bound => return false,
            _ => {}
        }
    }
    true
}
