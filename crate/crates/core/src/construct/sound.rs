//! Sound permutations and the path multigraphs they certify.
//!
//! For an ordering `π` of the entries, `P_1 = d_{π(1)}` and
//! `P_k = d_{π(k)} - P_{k-1}`. The ordering is sound when `P_k > 0` for
//! every `k < n` and `P_n = 0`; then joining `π(k)` to `π(k+1)` with `P_k`
//! parallel edges realizes `d` on a path.

use std::collections::HashSet;

use crate::construct::Multigraph;
use crate::families::partition_prime_bound;
use crate::sequence::DegreeSequence;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SoundPermutation {
    /// `perm[k]` is the (0-based) position in `d` placed at step `k`.
    pub perm: Vec<usize>,
    /// `P_1, ..., P_n`.
    pub prefix_alternating: Vec<i128>,
}

impl SoundPermutation {
    /// Evaluates the alternating sums of `perm` over `d`.
    pub fn evaluate(perm: Vec<usize>, d: &DegreeSequence) -> Self {
        let mut prev = 0i128;
        let prefix_alternating = perm
            .iter()
            .map(|&i| {
                prev = d.degrees()[i] as i128 - prev;
                prev
            })
            .collect();
        Self {
            perm,
            prefix_alternating,
        }
    }

    pub fn is_sound(&self) -> bool {
        match self.prefix_alternating.split_last() {
            Some((&last, rest)) => last == 0 && rest.iter().all(|&x| x > 0),
            None => false,
        }
    }
}

/// Finds a sound ordering of `d`, or `None` if there is none.
///
/// Inputs of the Partition′ shape are laid out directly from a balanced half:
/// one copy of the bound `B` first, the other last, the rest of the half on
/// odd steps and the complement on even steps. Everything else goes through
/// a memoized backtracking search over distinct values, exponential in the
/// worst case.
pub fn find_sound_permutation(d: &DegreeSequence) -> Option<SoundPermutation> {
    if let Some(sp) = partition_prime_layout(d) {
        return Some(sp);
    }
    search(d)
}

fn partition_prime_layout(d: &DegreeSequence) -> Option<SoundPermutation> {
    let n = d.len();
    partition_prime_bound(d)?;
    let mut half = balanced_half(d.degrees())?;
    if !half.contains(&(n - 2)) {
        half = (0..n).filter(|i| !half.contains(i)).collect();
    }
    let mut perm = vec![0; n];
    perm[0] = n - 2;
    perm[n - 1] = n - 1;
    let mut odd = (2..n - 1).step_by(2);
    let mut even = (1..n - 1).step_by(2);
    for i in 0..n - 2 {
        let slot = if half.contains(&i) {
            odd.next()
        } else {
            even.next()
        };
        perm[slot?] = i;
    }
    let sp = SoundPermutation::evaluate(perm, d);
    sp.is_sound().then_some(sp)
}

/// Indices of exactly `n/2` entries summing to half the volume.
fn balanced_half(values: &[u64]) -> Option<Vec<usize>> {
    let n = values.len();
    let total: u64 = values.iter().sum();
    if n % 2 == 1 || total % 2 == 1 {
        return None;
    }
    let (size, target) = (n / 2, (total / 2) as usize);
    // reach[i][c][s]: some c of the first i entries sum to s.
    let width = target + 1;
    if (n + 1).saturating_mul(size + 1).saturating_mul(width) > 1 << 28 {
        return None;
    }
    let cell = |i: usize, c: usize, s: usize| (i * (size + 1) + c) * width + s;
    let mut reach = vec![false; (n + 1) * (size + 1) * width];
    reach[cell(0, 0, 0)] = true;
    for (i, &v) in values.iter().enumerate() {
        let v = v as usize;
        for c in 0..=size {
            for s in 0..width {
                if !reach[cell(i, c, s)] {
                    continue;
                }
                reach[cell(i + 1, c, s)] = true;
                if c < size && s + v < width {
                    reach[cell(i + 1, c + 1, s + v)] = true;
                }
            }
        }
    }
    if !reach[cell(n, size, target)] {
        return None;
    }
    let (mut c, mut s) = (size, target);
    let mut half = Vec::with_capacity(size);
    for i in (0..n).rev() {
        if reach[cell(i, c, s)] {
            continue;
        }
        half.push(i);
        c -= 1;
        s -= values[i] as usize;
    }
    Some(half)
}

fn search(d: &DegreeSequence) -> Option<SoundPermutation> {
    let blocks = d.blocks();
    let mut counts: Vec<usize> = blocks.iter().map(|&(_, c)| c).collect();
    let mut order = Vec::with_capacity(d.len());
    let mut dead = HashSet::new();
    if !extend(&blocks, &mut counts, 0, d.len(), &mut order, &mut dead) {
        return None;
    }
    // Map block choices back to concrete positions.
    let mut starts: Vec<usize> = blocks
        .iter()
        .scan(0, |acc, &(_, c)| {
            let s = *acc;
            *acc += c;
            Some(s)
        })
        .collect();
    let perm = order
        .into_iter()
        .map(|b| {
            starts[b] += 1;
            starts[b] - 1
        })
        .collect();
    Some(SoundPermutation::evaluate(perm, d))
}

fn extend(
    blocks: &[(u64, usize)],
    counts: &mut Vec<usize>,
    prev: i128,
    left: usize,
    order: &mut Vec<usize>,
    dead: &mut HashSet<(Vec<usize>, i128)>,
) -> bool {
    if left == 0 {
        return !order.is_empty() && prev == 0;
    }
    if dead.contains(&(counts.clone(), prev)) {
        return false;
    }
    for b in 0..blocks.len() {
        if counts[b] == 0 {
            continue;
        }
        let next = blocks[b].0 as i128 - prev;
        if (left > 1 && next <= 0) || (left == 1 && next != 0) {
            continue;
        }
        counts[b] -= 1;
        order.push(b);
        if extend(blocks, counts, next, left - 1, order, dead) {
            return true;
        }
        order.pop();
        counts[b] += 1;
    }
    dead.insert((counts.clone(), prev));
    false
}

/// The path multigraph certified by a sound ordering. Vertex `i` carries
/// degree `d_i`.
pub fn path_realization(sp: &SoundPermutation, d: &DegreeSequence) -> Multigraph {
    assert!(sp.is_sound(), "ordering is not sound");
    let mut g = Multigraph::new(d.len());
    for (k, w) in sp.perm.windows(2).enumerate() {
        g.add_edges(w[0], w[1], sp.prefix_alternating[k] as u64);
    }
    g
}
