//! Textual forms of words and series.
//!
//! Words print their digits from the top index down, with a radix point
//! between index 0 and index -1. A trailing `~` means an alternating tail
//! `1 0 1 0 …` starts at the next lower index:
//!
//! | text    | word                          |
//! |---------|-------------------------------|
//! | `1`     | `Φ^0`                         |
//! | `10.01` | 1s at 1 and -2                |
//! | `0.~`   | `1⁻`, tail from -1            |
//! | `1.0~`  | `Φ⁻` shifted to top index 0    |
//!
//! Series are comma-separated `coeff@index` terms with an optional `~@t`
//! tail marker, e.g. `1@1,1@0,3@-2,~@-5`.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fibword::ZeckWord;
use crate::normalize::NatSeries;

/// Fractional digits shown by [`ZeckWord::to_human`] before eliding.
pub const HUMAN_FRACTION_DIGITS: usize = 32;

impl ZeckWord {
    /// Lowest index printed explicitly.
    fn lowest_printed(&self) -> i64 {
        match (self.tail(), self.lowest()) {
            (Some(t), _) if t <= -1 => t + 1,
            (Some(t), _) if t % 2 != 0 => 0,
            (Some(_), _) => -1,
            (None, Some(low)) => low.min(0),
            (None, None) => 0,
        }
    }

    fn render(&self, max_fraction: Option<usize>) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let hi = self.top().unwrap_or(0).max(0);
        let lo = self.lowest_printed();
        let mut out = String::new();
        for n in (0..=hi).rev() {
            out.push(char::from(b'0' + self.digit(n)));
        }
        if lo < 0 || self.tail().is_some() {
            out.push('.');
        }
        let mut shown = 0;
        for n in (lo..0).rev() {
            if max_fraction.is_some_and(|m| shown == m) {
                out.push('…');
                return out;
            }
            out.push(char::from(b'0' + self.digit(n)));
            shown += 1;
        }
        if self.tail().is_some() {
            out.push('~');
        }
        out
    }

    /// Display form with the fraction cut after [`HUMAN_FRACTION_DIGITS`]
    /// digits. Not parseable when elided.
    pub fn to_human(&self) -> String {
        self.render(Some(HUMAN_FRACTION_DIGITS))
    }
}

impl fmt::Display for ZeckWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(None))
    }
}

impl FromStr for ZeckWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (body, tailed) = match s.strip_suffix('~') {
            Some(b) => (b, true),
            None => (s, false),
        };
        let (int, frac) = match body.split_once('.') {
            Some((i, f)) => (i, f),
            None => (body, ""),
        };
        if int.is_empty() && frac.is_empty() {
            return Err(Error::parse(format!("no digits in word {s:?}")));
        }
        let mut ones = Vec::new();
        for (pos, ch) in int.chars().enumerate() {
            let n = (int.len() - 1 - pos) as i64;
            match ch {
                '0' => {}
                '1' => ones.push(n),
                _ => return Err(Error::parse(format!("unexpected character {ch:?} in word {s:?}"))),
            }
        }
        for (pos, ch) in frac.chars().enumerate() {
            let n = -(pos as i64) - 1;
            match ch {
                '0' => {}
                '1' => ones.push(n),
                _ => return Err(Error::parse(format!("unexpected character {ch:?} in word {s:?}"))),
            }
        }
        let tail = tailed.then(|| -(frac.chars().count() as i64) - 1);
        ZeckWord::new(ones, tail).map_err(|e| Error::parse(format!("word {s:?} is not admissible: {e}")))
    }
}

impl fmt::Display for NatSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.terms().map(|(n, c)| format!("{c}@{n}")).collect();
        parts.reverse();
        if let Some(t) = self.tail() {
            parts.push(format!("~@{t}"));
        }
        if parts.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for p in parts {
            if !first {
                f.write_char(',')?;
            }
            first = false;
            f.write_str(&p)?;
        }
        Ok(())
    }
}

impl FromStr for NatSeries {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" || s.is_empty() {
            return Ok(NatSeries::new());
        }
        let mut terms = Vec::new();
        let mut tail = None;
        for part in s.split(',') {
            let part = part.trim();
            let (c, n) = part
                .split_once('@')
                .ok_or_else(|| Error::parse(format!("term {part:?} is not of the form coeff@index")))?;
            let n: i64 = n.trim().parse().map_err(|_| Error::parse(format!("bad index in term {part:?}")))?;
            if c.trim() == "~" {
                if tail.replace(n).is_some() {
                    return Err(Error::parse("more than one tail marker"));
                }
            } else {
                let c: u64 = c.trim().parse().map_err(|_| Error::parse(format!("bad coefficient in term {part:?}")))?;
                terms.push((n, c));
            }
        }
        Ok(NatSeries::from_terms(terms).with_tail(tail))
    }
}

/// JSON shape of a word: `{"ones": [...], "tail": t | null}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WordRepr {
    pub ones: Vec<i64>,
    pub tail: Option<i64>,
}

impl From<ZeckWord> for WordRepr {
    fn from(w: ZeckWord) -> Self {
        WordRepr { ones: w.ones().to_vec(), tail: w.tail() }
    }
}

impl TryFrom<WordRepr> for ZeckWord {
    type Error = Error;
    fn try_from(r: WordRepr) -> Result<Self> {
        ZeckWord::new(r.ones, r.tail)
    }
}

impl Serialize for ZeckWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WordRepr::from(self.clone()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for ZeckWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = WordRepr::deserialize(d)?;
        ZeckWord::try_from(r).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> ZeckWord {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(p("1"), ZeckWord::one());
        assert_eq!(p("10.01"), ZeckWord::from_ones([1, -2]).unwrap());
        assert_eq!(p("0.~"), ZeckWord::one().minus_form().unwrap());
        assert_eq!(p("1.0~"), ZeckWord::new([0], Some(-2)).unwrap());
        for s in ["1", "10.01", "0.~", "1.0~", "0", "0.01", "1000000", "100.01000~"] {
            assert_eq!(p(s).to_string(), s);
        }
    }

    #[test]
    fn nonnegative_tails_print_through_the_point() {
        let w = ZeckWord::new([5], Some(2)).unwrap();
        let s = w.to_string();
        assert_eq!(s, "100101.0~");
        assert_eq!(p(&s), w);
        let odd = ZeckWord::new([], Some(3)).unwrap();
        assert_eq!(odd.to_string(), "1010.~");
        assert_eq!(p(&odd.to_string()), odd);
    }

    #[test]
    fn parse_variants() {
        assert_eq!(p("1000000."), ZeckWord::phi_power(6));
        assert_eq!(p("0001"), ZeckWord::one());
        assert_eq!(p(".1"), ZeckWord::phi_power(-1));
        assert!("11".parse::<ZeckWord>().is_err());
        assert!("1~".parse::<ZeckWord>().is_err());
        assert!("12".parse::<ZeckWord>().is_err());
        assert!("".parse::<ZeckWord>().is_err());
        assert!(matches!("1.1".parse::<ZeckWord>(), Err(Error::Parse(_))));
    }

    #[test]
    fn human_elision() {
        let w = ZeckWord::from_ones([0, -40]).unwrap();
        let h = w.to_human();
        assert!(h.ends_with('…'));
        assert_eq!(h.chars().count(), 2 + HUMAN_FRACTION_DIGITS + 1);
        assert_eq!(ZeckWord::one().to_human(), "1");
    }

    #[test]
    fn series_text() {
        let s: NatSeries = "1@1,1@0,3@-2,~@-5".parse().unwrap();
        assert_eq!(s.coeff(-2), 3);
        assert_eq!(s.tail(), Some(-5));
        assert_eq!(s.to_string(), "1@1,1@0,3@-2,~@-5");
        assert_eq!("2@0".parse::<NatSeries>().unwrap().to_string(), "2@0");
        assert_eq!("2@0, 3@0".parse::<NatSeries>().unwrap().coeff(0), 5);
        assert!("2".parse::<NatSeries>().is_err());
        assert!("x@1".parse::<NatSeries>().is_err());
        assert!("~@1,~@2".parse::<NatSeries>().is_err());
        assert!("0".parse::<NatSeries>().unwrap().is_zero());
    }
}
