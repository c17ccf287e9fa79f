//! Subset-sum table and the output-sensitive enumeration of balanced
//! partitions.
//!
//! The enumeration walks the blocks `(d_k^{n_k})` of the sequence, choosing
//! how many copies of each block go to the left side, and prunes every
//! prefix whose signed difference `sum L - sum R` the remaining suffix can no
//! longer cancel. Each unordered partition is produced once, oriented so that
//! the left side takes more copies at the first block where the sides
//! differ. With copies tried in descending order, partitions come out in
//! descending lexicographic order of their `a` side.

use serde::Serialize;

use crate::sequence::{DegreeSequence, PartitionPair};

/// Bitset of achievable subset sums.
#[derive(Debug, Clone, PartialEq, Eq)]
struct SumSet {
    words: Vec<u64>,
    max: usize,
}

impl SumSet {
    fn zero() -> Self {
        Self {
            words: vec![1],
            max: 0,
        }
    }

    fn contains(&self, s: usize) -> bool {
        s <= self.max && (self.words[s / 64] >> (s % 64)) & 1 == 1
    }

    /// `{x + c * value : x in self, 0 <= c <= count}`.
    fn add_copies(&self, value: usize, count: usize) -> Self {
        let max = self.max + value * count;
        let mut words = vec![0u64; max / 64 + 1];
        words[..self.words.len()].copy_from_slice(&self.words);
        let mut shifted = self.words.clone();
        for c in 1..=count {
            shifted = shift_left(&shifted, value, self.max + value * c);
            for (w, s) in words.iter_mut().zip(&shifted) {
                *w |= s;
            }
        }
        Self { words, max }
    }
}

fn shift_left(bits: &[u64], by: usize, new_max: usize) -> Vec<u64> {
    let len = new_max / 64 + 1;
    let mut out = vec![0u64; len];
    let (word_shift, bit_shift) = (by / 64, by % 64);
    for (i, &w) in bits.iter().enumerate() {
        if w == 0 {
            continue;
        }
        let j = i + word_shift;
        if j < len {
            out[j] |= w << bit_shift;
        }
        if bit_shift > 0 && j + 1 < len {
            out[j + 1] |= w >> (64 - bit_shift);
        }
    }
    out
}

/// `reachable(k, D)`: the suffix of blocks `k..q` can be split between the
/// two sides so that it cancels a prefix difference `D`.
///
/// Built once, back to front, for every suffix index.
#[derive(Debug, Clone)]
pub struct SubsetSumTable {
    suffix_sums: Vec<SumSet>,
}

impl SubsetSumTable {
    pub fn new(blocks: &[(u64, usize)]) -> Self {
        let mut suffix_sums = vec![SumSet::zero(); blocks.len() + 1];
        for k in (0..blocks.len()).rev() {
            let (value, count) = blocks[k];
            suffix_sums[k] = suffix_sums[k + 1].add_copies(value as usize, count);
        }
        Self { suffix_sums }
    }

    /// Number of suffix indices, `q + 1`.
    pub fn len(&self) -> usize {
        self.suffix_sums.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn suffix_volume(&self, k: usize) -> u64 {
        self.suffix_sums[k].max as u64
    }

    /// Can the suffix starting at block `k` be split as `L'`, `R'` with
    /// `sum R' - sum L' == diff`?
    pub fn reachable(&self, k: usize, diff: i128) -> bool {
        let set = &self.suffix_sums[k];
        let total = set.max as i128;
        let twice_right = total + diff;
        if twice_right < 0 || twice_right % 2 != 0 || twice_right / 2 > total {
            return false;
        }
        set.contains((twice_right / 2) as usize)
    }
}

/// Does some split of `values` into two sides have `sum left - sum right ==
/// target`? Pseudo-polynomial in the total.
pub fn subset_sum_reachable(values: &[u64], target: i128) -> bool {
    let mut set = SumSet::zero();
    for &v in values {
        set = set.add_copies(v as usize, 1);
    }
    let total = set.max as i128;
    let twice_left = total + target;
    twice_left >= 0 && twice_left % 2 == 0 && set.contains((twice_left / 2) as usize)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct EnumerationStats {
    /// Pruning queries against the subset-sum table.
    pub dp_invocations: u64,
    pub partitions_emitted: u64,
    pub node_visits: u64,
}

#[derive(Debug, Clone)]
struct Frame {
    level: usize,
    next: usize,
    lo: usize,
    diff: i128,
    decided: bool,
    exhausted: bool,
}

/// Lazy cursor over the balanced partitions of a sequence.
#[derive(Debug, Clone)]
pub struct BalancedPartitions {
    blocks: Vec<(u64, usize)>,
    table: Option<SubsetSumTable>,
    left_counts: Vec<usize>,
    stack: Vec<Frame>,
    started: bool,
    stats: EnumerationStats,
    limit: Option<usize>,
    truncated: bool,
}

impl BalancedPartitions {
    pub fn new(d: &DegreeSequence) -> Self {
        let blocks = d.blocks();
        // Odd volume never balances; skip the table entirely.
        let table = d
            .volume()
            .is_multiple_of(2)
            .then(|| SubsetSumTable::new(&blocks));
        Self {
            left_counts: vec![0; blocks.len()],
            blocks,
            table,
            stack: Vec::new(),
            started: false,
            stats: EnumerationStats::default(),
            limit: None,
            truncated: false,
        }
    }

    /// Stop after `limit` partitions; [`Self::truncated`] reports whether
    /// more existed.
    pub fn with_limit(mut self, limit: usize) -> Self {
        self.limit = Some(limit);
        self
    }

    pub fn stats(&self) -> EnumerationStats {
        self.stats
    }

    pub fn truncated(&self) -> bool {
        self.truncated
    }

    fn build_pair(&self) -> PartitionPair {
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (&(value, count), &l) in self.blocks.iter().zip(&self.left_counts) {
            left.extend(std::iter::repeat_n(value, l));
            right.extend(std::iter::repeat_n(value, count - l));
        }
        PartitionPair::new(
            DegreeSequence::new(left).expect("subsequence of a valid sequence"),
            DegreeSequence::new(right).expect("subsequence of a valid sequence"),
        )
        .expect("emitted only at balanced leaves")
    }

    /// Visits a node at `level` (0-based count of decided blocks). Returns
    /// true when the node is a balanced leaf.
    fn visit(&mut self, level: usize, diff: i128, decided: bool) -> bool {
        self.stats.node_visits += 1;
        let q = self.blocks.len();
        if level == q {
            // Leaf check: the last block's YES only guarantees some copy
            // count balances, not every one of its siblings.
            return diff == 0;
        }
        self.stats.dp_invocations += 1;
        let table = self.table.as_ref().expect("table exists for even volume");
        if table.reachable(level, diff) {
            let count = self.blocks[level].1;
            let lo = if decided { 0 } else { count.div_ceil(2) };
            self.stack.push(Frame {
                level,
                next: count,
                lo,
                diff,
                decided,
                exhausted: false,
            });
        }
        false
    }

    fn advance(&mut self) -> Option<PartitionPair> {
        if !self.started {
            self.started = true;
            self.table.as_ref()?;
            if self.visit(0, 0, false) {
                return Some(self.build_pair());
            }
        }
        loop {
            let frame = self.stack.last_mut()?;
            if frame.exhausted {
                self.stack.pop();
                continue;
            }
            let i = frame.next;
            if i == frame.lo {
                frame.exhausted = true;
            } else {
                frame.next -= 1;
            }
            let (level, diff, decided) = (frame.level, frame.diff, frame.decided);
            let (value, count) = self.blocks[level];
            self.left_counts[level] = i;
            let child_diff = diff + value as i128 * (2 * i as i128 - count as i128);
            let child_decided = decided || 2 * i != count;
            if self.visit(level + 1, child_diff, child_decided) {
                return Some(self.build_pair());
            }
        }
    }
}

impl Iterator for BalancedPartitions {
    type Item = PartitionPair;

    fn next(&mut self) -> Option<PartitionPair> {
        if let Some(limit) = self.limit {
            if self.stats.partitions_emitted as usize >= limit {
                if !self.truncated && self.advance().is_some() {
                    self.truncated = true;
                }
                return None;
            }
        }
        let p = self.advance()?;
        self.stats.partitions_emitted += 1;
        Some(p)
    }
}

/// All balanced partitions of `d`, canonically oriented, in descending
/// lexicographic order of the `a` side.
pub fn enumerate_balanced_partitions(d: &DegreeSequence) -> BalancedPartitions {
    BalancedPartitions::new(d)
}

/// `|BP(d)|` by a counting recurrence over block copy counts; nothing is
/// materialized.
///
/// Ordered assignments summing to half the volume are counted first; every
/// unordered partition appears twice among them except the one that splits
/// every block evenly, which appears once.
pub fn count_balanced_partitions(d: &DegreeSequence) -> u128 {
    if d.volume() % 2 == 1 {
        return 0;
    }
    let half = (d.volume() / 2) as usize;
    let mut ways = vec![0u128; half + 1];
    ways[0] = 1;
    let blocks = d.blocks();
    for &(value, count) in &blocks {
        let value = value as usize;
        let mut next = vec![0u128; half + 1];
        for s in 0..=half {
            // next[s] = sum_{c=0..count} ways[s - c * value], as a sliding
            // window; wrapping arithmetic keeps the difference exact.
            let mut acc = ways[s];
            if s >= value {
                acc = acc.wrapping_add(next[s - value]);
            }
            if s >= value * (count + 1) {
                acc = acc.wrapping_sub(ways[s - value * (count + 1)]);
            }
            next[s] = acc;
        }
        ways = next;
    }
    let symmetric = u128::from(blocks.iter().all(|&(_, c)| c % 2 == 0));
    (ways[half] + symmetric) / 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn seq(v: &[u64]) -> DegreeSequence {
        DegreeSequence::new(v.to_vec()).unwrap()
    }

    fn rendered(d: &DegreeSequence) -> Vec<String> {
        enumerate_balanced_partitions(d)
            .map(|p| p.to_string())
            .collect()
    }

    /// Subset enumeration over indices, deduplicated to unordered pairs.
    fn brute(d: &DegreeSequence) -> BTreeSet<String> {
        let v = d.degrees();
        let mut out = BTreeSet::new();
        for mask in 0u32..(1 << v.len()) {
            let (l, r): (Vec<_>, Vec<_>) = (0..v.len()).partition(|i| mask >> i & 1 == 1);
            let l = seq(&l.iter().map(|&i| v[i]).collect::<Vec<_>>());
            let r = seq(&r.iter().map(|&i| v[i]).collect::<Vec<_>>());
            if l.volume() == r.volume() {
                out.insert(PartitionPair::unordered(l, r).unwrap().to_string());
            }
        }
        out
    }

    #[test]
    fn subset_sum_examples() {
        assert!(subset_sum_reachable(&[2, 2, 2], 2));
        assert!(!subset_sum_reachable(&[5], 3));
        assert!(subset_sum_reachable(&[4, 3, 3, 2], 0));
        assert!(subset_sum_reachable(&[], 0));
        assert!(subset_sum_reachable(&[5], -5));
    }

    #[test]
    fn table_base_case() {
        let t = SubsetSumTable::new(&[(3, 2), (1, 1)]);
        assert!(t.reachable(1, 1) && t.reachable(1, -1));
        assert!(!t.reachable(1, 0));
        // (3,3,1): R' - L' over {3,3,1} takes values ±7, ±5, ±1.
        for diff in [-7, -5, -1, 1, 5, 7] {
            assert!(t.reachable(0, diff));
        }
        assert!(!t.reachable(0, 3) && !t.reachable(0, 0));
        let last = t.len() - 1;
        assert!(t.reachable(last, 0));
        assert!(!t.reachable(last, 1) && !t.reachable(last, -1));
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(rendered(&seq(&[2, 2, 2, 2])), ["2^2 | 2^2"]);
        assert_eq!(rendered(&seq(&[3, 2, 2, 1])), ["3 1 | 2^2"]);
        assert_eq!(
            rendered(&seq(&[6, 6, 3, 3, 3, 3])),
            ["6^2 | 3^4", "6 3^2 | 6 3^2"]
        );
        assert!(rendered(&seq(&[5, 3])).is_empty());
        assert!(rendered(&seq(&[2, 1])).is_empty());
        assert_eq!(rendered(&DegreeSequence::empty()), [" | "]);
    }

    #[test]
    fn counting_examples() {
        assert_eq!(count_balanced_partitions(&seq(&[2, 2, 2, 2])), 1);
        assert_eq!(count_balanced_partitions(&seq(&[5, 3])), 0);
        assert_eq!(count_balanced_partitions(&seq(&[6, 6, 3, 3, 3, 3])), 2);
        assert_eq!(count_balanced_partitions(&DegreeSequence::empty()), 1);
    }

    #[test]
    fn odd_volume_makes_no_queries() {
        let mut it = enumerate_balanced_partitions(&seq(&[3, 2, 2]));
        assert!(it.next().is_none());
        assert_eq!(it.stats().dp_invocations, 0);
    }

    #[test]
    fn limit_sets_truncation_marker() {
        let d = seq(&(1..=12).collect::<Vec<_>>());
        let mut it = enumerate_balanced_partitions(&d).with_limit(3);
        assert_eq!(it.by_ref().count(), 3);
        assert!(it.truncated());
        let mut it = enumerate_balanced_partitions(&seq(&[2, 2, 2, 2])).with_limit(1);
        assert_eq!(it.by_ref().count(), 1);
        assert!(!it.truncated());
    }

    #[test]
    fn emission_order_is_descending_lexicographic() {
        let d = seq(&[7, 6, 5, 5, 4, 3, 3, 2, 1, 1, 1]);
        let sides: Vec<Vec<u64>> = enumerate_balanced_partitions(&d)
            .map(|p| p.a().degrees().to_vec())
            .collect();
        assert!(sides.len() > 3);
        assert!(sides.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn two_distinct_degrees_give_at_most_n_plus_one() {
        for x in 1..6u64 {
            for y in 1..x {
                for nx in 0..7usize {
                    for ny in 0..7usize {
                        let d = DegreeSequence::from_blocks(&[(x, nx), (y, ny)]).unwrap();
                        assert!(count_balanced_partitions(&d) <= (nx + ny + 1) as u128);
                    }
                }
            }
        }
    }

    #[test]
    fn matches_brute_force_and_counter_on_small_inputs() {
        let mut state = 0x9e3779b97f4a7c15u64;
        for _ in 0..300 {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            let n = (state % 11) as usize;
            let v: Vec<u64> = (0..n).map(|i| (state >> (i * 3 + 5)) % 6 + 1).collect();
            let d = seq(&v);
            let got: BTreeSet<String> = rendered(&d).into_iter().collect();
            assert_eq!(got, brute(&d), "{d}");
            assert_eq!(count_balanced_partitions(&d), got.len() as u128, "{d}");
        }
    }
}
