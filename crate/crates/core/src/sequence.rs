//! Canonical sequence representations and the arithmetic every
//! characterization shares.
//!
//! A [`DegreeSequence`] is a nonincreasing list of positive integers. Its
//! volume is cached at construction and checked for overflow, so downstream
//! code can sum freely in `i128`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest block count accepted by the `v^c` syntax.
const MAX_BLOCK_COUNT: u64 = 1 << 32;

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DegreeSequence {
    degrees: Vec<u64>,
    volume: u64,
}

impl DegreeSequence {
    /// Builds a sequence from degrees in any order. Zero entries are rejected.
    pub fn new(mut degrees: Vec<u64>) -> Result<Self> {
        if let Some(pos) = degrees.iter().position(|&d| d == 0) {
            return Err(Error::Parse {
                token: degrees[pos].to_string(),
                reason: "degrees must be positive",
            });
        }
        let volume = degrees
            .iter()
            .try_fold(0u64, |acc, &d| acc.checked_add(d))
            .ok_or(Error::Overflow)?;
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { degrees, volume })
    }

    /// Expands run-length blocks `(value, count)`.
    pub fn from_blocks(blocks: &[(u64, usize)]) -> Result<Self> {
        let mut degrees = Vec::with_capacity(blocks.iter().map(|b| b.1).sum());
        for &(value, count) in blocks {
            degrees.extend(std::iter::repeat_n(value, count));
        }
        Self::new(degrees)
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    /// Sum of all entries.
    pub fn volume(&self) -> u64 {
        self.volume
    }

    /// Largest entry, 0 for the empty sequence.
    pub fn max_degree(&self) -> u64 {
        self.degrees.first().copied().unwrap_or(0)
    }

    /// Run-length view `[(value, count)]`, values strictly decreasing.
    pub fn blocks(&self) -> Vec<(u64, usize)> {
        let mut out: Vec<(u64, usize)> = Vec::new();
        for &d in &self.degrees {
            match out.last_mut() {
                Some((v, c)) if *v == d => *c += 1,
                _ => out.push((d, 1)),
            }
        }
        out
    }

    /// `self ∘ other`, merged back into nonincreasing order.
    pub fn concat(&self, other: &DegreeSequence) -> Result<Self> {
        let mut degrees = self.degrees.clone();
        degrees.extend_from_slice(&other.degrees);
        Self::new(degrees)
    }

    /// `self ∘ (value^count)`.
    pub fn with_appended(&self, value: u64, count: usize) -> Result<Self> {
        let mut degrees = self.degrees.clone();
        degrees.extend(std::iter::repeat_n(value, count));
        Self::new(degrees)
    }

    /// `d*_j = |{i : d_i >= j}|` for `j = 1..=d_1`.
    ///
    /// Materializes `d_1` entries; the checkers never call this and walk a
    /// [`MinSumCursor`] instead.
    pub fn conjugate(&self) -> DegreeSequence {
        let top = self.max_degree() as usize;
        let mut conj = Vec::with_capacity(top);
        let mut k = self.len();
        for j in 1..=top as u64 {
            while k > 0 && self.degrees[k - 1] < j {
                k -= 1;
            }
            conj.push(k as u64);
        }
        DegreeSequence {
            volume: self.volume,
            degrees: conj,
        }
    }

    /// Prefix sums `S[l] = d_1 + ... + d_l`, with `S[0] = 0`.
    pub(crate) fn prefix_sums(&self) -> Vec<i128> {
        let mut out = Vec::with_capacity(self.len() + 1);
        let mut acc = 0i128;
        out.push(0);
        for &d in &self.degrees {
            acc += d as i128;
            out.push(acc);
        }
        out
    }
}

/// Serialized as the plain list of degrees.
impl serde::Serialize for DegreeSequence {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.degrees())
    }
}

impl serde::Serialize for PartitionPair {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("PartitionPair", 2)?;
        st.serialize_field("a", self.a())?;
        st.serialize_field("b", self.b())?;
        st.end()
    }
}

impl fmt::Display for DegreeSequence {
    /// Block syntax: `8^2 4^3`, singletons without exponent.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (value, count)) in self.blocks().into_iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if count == 1 {
                write!(f, "{value}")?;
            } else {
                write!(f, "{value}^{count}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for DegreeSequence {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        parse_sequence(text)
    }
}

fn parse_positive(token: &str, part: &str, what: &'static str) -> Result<u64> {
    let err = |reason| Error::Parse {
        token: token.to_string(),
        reason,
    };
    if part.starts_with('-') {
        return Err(err(what));
    }
    match part.parse::<u64>() {
        Ok(0) => Err(err(what)),
        Ok(v) => Ok(v),
        Err(_) => Err(err("not an integer")),
    }
}

/// Parses whitespace/comma separated tokens `v` or `v^c`.
pub fn parse_sequence(text: &str) -> Result<DegreeSequence> {
    let mut degrees = Vec::new();
    for token in text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
    {
        let (value, count) = match token.split_once('^') {
            Some((v, c)) => (
                parse_positive(token, v, "degrees must be positive")?,
                parse_positive(token, c, "block count must be positive")?,
            ),
            None => (parse_positive(token, token, "degrees must be positive")?, 1),
        };
        if count > MAX_BLOCK_COUNT {
            return Err(Error::Parse {
                token: token.to_string(),
                reason: "block count too large",
            });
        }
        degrees.extend(std::iter::repeat_n(value, count as usize));
    }
    DegreeSequence::new(degrees)
}

/// Evaluates `sum_{i >= skip} min(x, d_i)` for nondecreasing `x`.
///
/// Keeps a pointer to the number of entries `>= x`, so a full sweep over
/// increasing thresholds costs `O(n)` in total. This is the conjugate prefix
/// sum `d*_1 + ... + d*_x` without building `d*`.
pub(crate) struct MinSumCursor<'a> {
    degrees: &'a [u64],
    suffix: Vec<i128>,
    at_least: usize,
    last_x: i128,
}

impl<'a> MinSumCursor<'a> {
    pub(crate) fn new(degrees: &'a [u64]) -> Self {
        let mut suffix = vec![0i128; degrees.len() + 1];
        for i in (0..degrees.len()).rev() {
            suffix[i] = suffix[i + 1] + degrees[i] as i128;
        }
        Self {
            degrees,
            suffix,
            at_least: degrees.len(),
            last_x: 0,
        }
    }

    /// `sum_{i >= skip} min(x, d_i)` (0-based `skip`).
    pub(crate) fn tail(&mut self, skip: usize, x: i128) -> i128 {
        debug_assert!(x >= self.last_x, "thresholds must be nondecreasing");
        self.last_x = x;
        while self.at_least > 0 && (self.degrees[self.at_least - 1] as i128) < x {
            self.at_least -= 1;
        }
        let k = self.at_least;
        if k <= skip {
            self.suffix[skip.min(self.degrees.len())]
        } else {
            x * (k - skip) as i128 + self.suffix[k]
        }
    }
}

/// Erdős–Gallai differences of a sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EgReport {
    /// `deltas[l - 1]` is the difference at index `l`, for `l = 1..=n`.
    pub deltas: Vec<i128>,
    /// `max{i : d_i > i}`; 0 when `d_1 <= 1`.
    pub beta: usize,
    /// Difference at index 1 (0 for the empty sequence).
    pub delta1: i128,
    /// Max difference over `2..=beta`, 0 when that range is empty.
    pub delta_max: i128,
}

impl EgReport {
    pub fn delta(&self, l: usize) -> i128 {
        self.deltas[l - 1]
    }
}

/// `max{i : d_i > i}` (1-based), 0 when no entry qualifies.
pub fn beta(d: &DegreeSequence) -> usize {
    d.degrees()
        .iter()
        .enumerate()
        .take_while(|&(i, &di)| di > (i + 1) as u64)
        .count()
}

/// `Δ_l = sum_{i<=l} d_i - (l(l-1) + sum_{i>l} min(l, d_i))` for every `l`,
/// in one linear sweep.
pub fn eg_report(d: &DegreeSequence) -> EgReport {
    let n = d.len();
    let prefix = d.prefix_sums();
    let mut cursor = MinSumCursor::new(d.degrees());
    let deltas: Vec<i128> = (1..=n)
        .map(|l| {
            let l128 = l as i128;
            prefix[l] - (l128 * (l128 - 1) + cursor.tail(l, l128))
        })
        .collect();
    let beta = beta(d);
    let delta1 = deltas.first().copied().unwrap_or(0);
    let delta_max = if beta >= 2 {
        deltas[1..beta].iter().copied().max().unwrap_or(0)
    } else {
        0
    };
    EgReport {
        deltas,
        beta,
        delta1,
        delta_max,
    }
}

/// One balanced partition `(a, b)` of a sequence: `volume(a) == volume(b)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PartitionPair {
    a: DegreeSequence,
    b: DegreeSequence,
}

impl PartitionPair {
    /// Ordered pair; fails unless both sides have equal volume.
    pub fn new(a: DegreeSequence, b: DegreeSequence) -> Result<Self> {
        if a.volume() != b.volume() {
            return Err(Error::Unbalanced {
                left: a.volume(),
                right: b.volume(),
            });
        }
        Ok(Self { a, b })
    }

    /// Unordered pair in canonical orientation: the lexicographically larger
    /// side is `a`.
    pub fn unordered(x: DegreeSequence, y: DegreeSequence) -> Result<Self> {
        if lex_cmp(&x, &y) == Ordering::Less {
            Self::new(y, x)
        } else {
            Self::new(x, y)
        }
    }

    pub fn a(&self) -> &DegreeSequence {
        &self.a
    }

    pub fn b(&self) -> &DegreeSequence {
        &self.b
    }

    /// Volume of one side, i.e. half the volume of the merged sequence.
    pub fn side_volume(&self) -> u64 {
        self.a.volume()
    }

    /// `a ∘ b`.
    pub fn merged(&self) -> DegreeSequence {
        self.a
            .concat(&self.b)
            .expect("both sides already fit in u64 and are balanced")
    }

    /// `(a ∘ 1^t, b ∘ 1^t)`.
    pub fn with_pendants(&self, t: usize) -> Result<Self> {
        Self::new(self.a.with_appended(1, t)?, self.b.with_appended(1, t)?)
    }

    pub fn swapped(&self) -> Self {
        Self {
            a: self.b.clone(),
            b: self.a.clone(),
        }
    }
}

/// Lexicographic order on the nonincreasing entry lists.
pub fn lex_cmp(x: &DegreeSequence, y: &DegreeSequence) -> Ordering {
    x.degrees().cmp(y.degrees())
}

impl fmt::Display for PartitionPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} | {}", self.a, self.b)
    }
}

impl FromStr for PartitionPair {
    type Err = Error;

    /// `a-side | b-side`, each side in sequence syntax. Orientation is kept.
    fn from_str(text: &str) -> Result<Self> {
        let (left, right) = text
            .split_once('|')
            .ok_or_else(|| Error::PartitionSyntax(text.to_string()))?;
        if right.contains('|') {
            return Err(Error::PartitionSyntax(text.to_string()));
        }
        Self::new(parse_sequence(left)?, parse_sequence(right)?)
    }
}
