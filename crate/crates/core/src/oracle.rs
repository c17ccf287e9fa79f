//! Exhaustive ground truth for small instances.
//!
//! Realizations are enumerated by backtracking over the upper-triangular
//! multiplicity matrix, row by row, pruning whenever a residual degree can no
//! longer be met by the remaining columns. Nothing here uses the inequality
//! characterizations.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use crate::construct::{BipartiteMultigraph, Multigraph};
use crate::error::{Error, Result};
use crate::optimize::OptimalValue;
use crate::sequence::{DegreeSequence, PartitionPair};

/// Size guard: an instance is rejected only when it exceeds both bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_n: usize,
    pub max_volume: u64,
}

impl Default for OracleLimits {
    fn default() -> Self {
        Self {
            max_n: 7,
            max_volume: 16,
        }
    }
}

impl OracleLimits {
    pub fn unbounded() -> Self {
        Self {
            max_n: usize::MAX,
            max_volume: u64::MAX,
        }
    }

    fn admit(&self, d: &DegreeSequence) -> Result<()> {
        if d.len() > self.max_n && d.volume() > self.max_volume {
            Err(Error::OracleTooLarge {
                n: d.len(),
                volume: d.volume(),
            })
        } else {
            Ok(())
        }
    }
}

struct Search<'a, F> {
    /// Vertex pairs in row-major order; all pairs sharing a row are adjacent.
    pairs: Vec<(usize, usize)>,
    res: Vec<u64>,
    cap: u64,
    graph: Multigraph,
    visit: &'a mut F,
}

impl<F: FnMut(&Multigraph) -> ControlFlow<()>> Search<'_, F> {
    fn run(&mut self, idx: usize) -> ControlFlow<()> {
        if idx == self.pairs.len() {
            if self.res.iter().all(|&r| r == 0) {
                return (self.visit)(&self.graph);
            }
            return ControlFlow::Continue(());
        }
        let (u, v) = self.pairs[idx];
        let row_ends = idx + 1 == self.pairs.len() || self.pairs[idx + 1].0 != u;
        // What the rest of u's row can still absorb after this pair.
        let later: u64 = self.pairs[idx + 1..]
            .iter()
            .take_while(|&&(x, _)| x == u)
            .map(|&(_, w)| self.res[w].min(self.cap))
            .sum();
        let hi = self.cap.min(self.res[u]).min(self.res[v]);
        let lo = if row_ends {
            self.res[u]
        } else {
            self.res[u].saturating_sub(later)
        };
        for m in (lo..=hi).rev() {
            self.res[u] -= m;
            self.res[v] -= m;
            if m > 0 {
                self.graph.add_edges(u, v, m);
            }
            let flow = self.run(idx + 1);
            if m > 0 {
                self.graph.remove_edges(u, v, m);
            }
            self.res[u] += m;
            self.res[v] += m;
            flow?;
        }
        ControlFlow::Continue(())
    }
}

fn search<F: FnMut(&Multigraph) -> ControlFlow<()>>(
    degrees: &[u64],
    pairs: Vec<(usize, usize)>,
    cap: u64,
    visit: &mut F,
) {
    let n = degrees.len();
    // A vertex with no pair at all must have degree 0.
    let mut touched = vec![false; n];
    for &(u, v) in &pairs {
        touched[u] = true;
        touched[v] = true;
    }
    if (0..n).any(|v| !touched[v] && degrees[v] > 0) {
        return;
    }
    let mut s = Search {
        pairs,
        res: degrees.to_vec(),
        cap,
        graph: Multigraph::new(n),
        visit,
    };
    let _ = s.run(0);
}

/// Calls `f` on every loopless multigraph on vertices `0..n` in which vertex
/// `i` has degree `degrees[i]` and no edge has more than `cap` copies.
pub fn for_each_multigraph(
    degrees: &[u64],
    cap: u64,
    mut f: impl FnMut(&Multigraph) -> ControlFlow<()>,
) {
    let n = degrees.len();
    let pairs = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    search(degrees, pairs, cap, &mut f);
}

/// Like [`for_each_multigraph`], restricted to edges between `0..a.len()`
/// (degrees `a`) and the following `b.len()` vertices (degrees `b`).
pub fn for_each_bipartite_multigraph(
    a: &[u64],
    b: &[u64],
    cap: u64,
    mut f: impl FnMut(&BipartiteMultigraph) -> ControlFlow<()>,
) {
    let p = a.len();
    let degrees: Vec<u64> = a.iter().chain(b).copied().collect();
    let pairs = (0..p)
        .flat_map(|u| (0..b.len()).map(move |j| (u, p + j)))
        .collect();
    let mut wrap = |g: &Multigraph| {
        let mut h = BipartiteMultigraph::with_sides(p, b.len());
        for ((u, v), m) in g.edges() {
            h.add_edges(u, v, m);
        }
        f(&h)
    };
    search(&degrees, pairs, cap, &mut wrap);
}

/// Every realization of `degrees` with multiplicity at most `cap`.
pub fn enumerate_multigraphs(degrees: &[u64], cap: u64) -> Vec<Multigraph> {
    let mut out = Vec::new();
    for_each_multigraph(degrees, cap, |g| {
        out.push(g.clone());
        ControlFlow::Continue(())
    });
    out
}

/// Some realization of `degrees` with multiplicity at most `cap`.
pub fn find_multigraph(degrees: &[u64], cap: u64) -> Option<Multigraph> {
    let mut found = None;
    for_each_multigraph(degrees, cap, |g| {
        found = Some(g.clone());
        ControlFlow::Break(())
    });
    found
}

/// Some bipartite realization of `(a, b)` with multiplicity at most `cap`.
pub fn find_bipartite_multigraph(a: &[u64], b: &[u64], cap: u64) -> Option<BipartiteMultigraph> {
    let mut found = None;
    for_each_bipartite_multigraph(a, b, cap, |g| {
        found = Some(g.clone());
        ControlFlow::Break(())
    });
    found
}

fn require_even(d: &DegreeSequence) -> Result<()> {
    if d.volume() % 2 == 1 {
        Err(Error::OddVolume(d.volume()))
    } else {
        Ok(())
    }
}

/// `(MaxMult, TotMult)` of every realization of `d`.
pub fn realization_profile(
    d: &DegreeSequence,
    limits: &OracleLimits,
) -> Result<BTreeSet<(u64, u64)>> {
    limits.admit(d)?;
    require_even(d)?;
    let mut out = BTreeSet::new();
    for_each_multigraph(d.degrees(), d.max_degree(), |g| {
        out.insert((g.max_mult(), g.tot_mult()));
        ControlFlow::Continue(())
    });
    Ok(out)
}

/// `(MaxMult, TotMult)` of every bipartite realization of `d`, over every
/// assignment of the vertices to sides.
pub fn bipartite_realization_profile(
    d: &DegreeSequence,
    limits: &OracleLimits,
) -> Result<BTreeSet<(u64, u64)>> {
    let mut out = BTreeSet::new();
    for_each_side_assignment(d, limits, |_, g| {
        out.insert((g.max_mult(), g.tot_mult()));
    })?;
    Ok(out)
}

/// Runs `f` on every bipartite realization of every side assignment. Bit
/// `i` of the mask puts vertex `i` on side `A`.
fn for_each_side_assignment(
    d: &DegreeSequence,
    limits: &OracleLimits,
    mut f: impl FnMut(&PartitionPair, &BipartiteMultigraph),
) -> Result<()> {
    limits.admit(d)?;
    require_even(d)?;
    let n = d.len();
    if n >= 64 {
        return Err(Error::OracleTooLarge {
            n,
            volume: d.volume(),
        });
    }
    let v = d.degrees();
    for mask in 0u64..1 << n {
        let (a, b): (Vec<u64>, Vec<u64>) = {
            let a = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| v[i])
                .collect();
            let b = (0..n)
                .filter(|i| mask >> i & 1 == 0)
                .map(|i| v[i])
                .collect();
            (a, b)
        };
        let cap = d.max_degree();
        let mut pair = None;
        for_each_bipartite_multigraph(&a, &b, cap, |g| {
            let p = pair.get_or_insert_with(|| {
                PartitionPair::new(
                    DegreeSequence::new(a.clone()).expect("positive"),
                    DegreeSequence::new(b.clone()).expect("positive"),
                )
                .expect("a realization balances its sides")
            });
            f(p, g);
            ControlFlow::Continue(())
        });
    }
    Ok(())
}

/// Exact MaxMult of `d` by exhaustive search.
pub fn oracle_max_mult(d: &DegreeSequence, limits: &OracleLimits) -> Result<OptimalValue> {
    let profile = realization_profile(d, limits)?;
    Ok(OptimalValue {
        value: profile.iter().map(|&(m, _)| m).min(),
        witness: None,
    })
}

/// Exact TotMult of `d` by exhaustive search.
pub fn oracle_tot_mult(d: &DegreeSequence, limits: &OracleLimits) -> Result<OptimalValue> {
    let profile = realization_profile(d, limits)?;
    Ok(OptimalValue {
        value: profile.iter().map(|&(_, t)| t).min(),
        witness: None,
    })
}

fn oracle_bi(
    d: &DegreeSequence,
    limits: &OracleLimits,
    measure: fn(&BipartiteMultigraph) -> u64,
) -> Result<OptimalValue> {
    let mut best: Option<(u64, PartitionPair)> = None;
    for_each_side_assignment(d, limits, |p, g| {
        let v = measure(g);
        let p = PartitionPair::unordered(p.a().clone(), p.b().clone()).expect("balanced");
        let better = match &best {
            None => true,
            Some((bv, bp)) => v < *bv || (v == *bv && p.a() > bp.a()),
        };
        if better {
            best = Some((v, p));
        }
    })?;
    Ok(match best {
        Some((v, p)) => OptimalValue {
            value: Some(v),
            witness: Some(p),
        },
        None => OptimalValue {
            value: None,
            witness: None,
        },
    })
}

/// Exact bipartite MaxMult of `d`, minimizing over all side assignments.
pub fn oracle_max_mult_bi(d: &DegreeSequence, limits: &OracleLimits) -> Result<OptimalValue> {
    oracle_bi(d, limits, BipartiteMultigraph::max_mult)
}

/// Exact bipartite TotMult of `d`, minimizing over all side assignments.
pub fn oracle_tot_mult_bi(d: &DegreeSequence, limits: &OracleLimits) -> Result<OptimalValue> {
    oracle_bi(d, limits, BipartiteMultigraph::tot_mult)
}

fn pair_minimum(p: &PartitionPair, measure: fn(&BipartiteMultigraph) -> u64) -> Option<u64> {
    let mut best: Option<u64> = None;
    let cap = p.merged().max_degree();
    for_each_bipartite_multigraph(p.a().degrees(), p.b().degrees(), cap, |g| {
        let v = measure(g);
        best = Some(best.map_or(v, |b| b.min(v)));
        ControlFlow::Continue(())
    });
    best
}

/// Exact MaxMult over bipartite realizations of a fixed pair.
pub fn oracle_max_mult_bi_pair(p: &PartitionPair, limits: &OracleLimits) -> Result<Option<u64>> {
    limits.admit(&p.merged())?;
    Ok(pair_minimum(p, BipartiteMultigraph::max_mult))
}

/// Exact TotMult over bipartite realizations of a fixed pair.
pub fn oracle_tot_mult_bi_pair(p: &PartitionPair, limits: &OracleLimits) -> Result<Option<u64>> {
    limits.admit(&p.merged())?;
    Ok(pair_minimum(p, BipartiteMultigraph::tot_mult))
}

/// Whether `d` has a realization with multiplicity at most `cap`.
pub fn oracle_realizable(d: &DegreeSequence, cap: u64, limits: &OracleLimits) -> Result<bool> {
    limits.admit(d)?;
    Ok(d.volume().is_multiple_of(2) && find_multigraph(d.degrees(), cap).is_some())
}

/// Whether `d` has a realization with at most `t` excess edges.
pub fn oracle_t_tot_realizable(d: &DegreeSequence, t: u64, limits: &OracleLimits) -> Result<bool> {
    if d.volume() % 2 == 1 {
        limits.admit(d)?;
        return Ok(false);
    }
    Ok(oracle_tot_mult(d, limits)?.value.is_some_and(|v| v <= t))
}

/// Whether the pair has a bipartite realization with multiplicity at most
/// `cap`, with at most `t` excess edges.
pub fn oracle_pair_realizable(
    p: &PartitionPair,
    cap: u64,
    t: u64,
    limits: &OracleLimits,
) -> Result<bool> {
    limits.admit(&p.merged())?;
    let mut hit = false;
    for_each_bipartite_multigraph(p.a().degrees(), p.b().degrees(), cap, |g| {
        if g.tot_mult() <= t {
            hit = true;
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    Ok(hit)
}

/// All unordered balanced partitions of `d`, by trying every index subset.
pub fn oracle_partitions(d: &DegreeSequence) -> Result<BTreeSet<PartitionPair>> {
    let n = d.len();
    if n > 30 {
        return Err(Error::OracleTooLarge {
            n,
            volume: d.volume(),
        });
    }
    let v = d.degrees();
    let mut out = BTreeSet::new();
    if d.volume() % 2 == 1 {
        return Ok(out);
    }
    for mask in 0u64..1 << n {
        let side: u64 = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| v[i]).sum();
        if 2 * side != d.volume() {
            continue;
        }
        let a = (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| v[i])
            .collect();
        let b = (0..n)
            .filter(|i| mask >> i & 1 == 0)
            .map(|i| v[i])
            .collect();
        out.insert(
            PartitionPair::unordered(
                DegreeSequence::new(a).expect("positive"),
                DegreeSequence::new(b).expect("positive"),
            )
            .expect("balanced by construction"),
        );
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(v: &[u64]) -> DegreeSequence {
        DegreeSequence::new(v.to_vec()).unwrap()
    }

    #[test]
    fn hand_counts() {
        assert_eq!(enumerate_multigraphs(&[1, 1], 1).len(), 1);
        assert_eq!(enumerate_multigraphs(&[2, 2], 2).len(), 1);
        assert_eq!(enumerate_multigraphs(&[2, 2], 1).len(), 0);
        // (2,2,2): only the triangle; a double edge would strand the third vertex.
        assert_eq!(enumerate_multigraphs(&[2, 2, 2], 2).len(), 1);
        // (2,1,1) on labeled vertices: the path 1 - 0 - 2.
        assert_eq!(enumerate_multigraphs(&[2, 1, 1], 2).len(), 1);
        // (1,1,1,1): the three perfect matchings of K4.
        assert_eq!(enumerate_multigraphs(&[1, 1, 1, 1], 1).len(), 3);
        // (2,2,1,1): two paths through the edge 0-1, or 0=1 doubled plus 2-3.
        let graphs = enumerate_multigraphs(&[2, 2, 1, 1], 2);
        for g in &graphs {
            assert_eq!(g.degrees(), vec![2, 2, 1, 1]);
        }
        assert_eq!(graphs.iter().filter(|g| g.max_mult() == 1).count(), 2);
        assert_eq!(graphs.len(), 3);
    }

    #[test]
    fn cap_beyond_degree_is_vacuous() {
        for v in [vec![4, 4, 2, 2], vec![3, 3, 2], vec![5, 3, 2, 2]] {
            let a = enumerate_multigraphs(&v, *v.iter().max().unwrap()).len();
            let b = enumerate_multigraphs(&v, v.iter().sum()).len();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn optima_examples() {
        let lim = OracleLimits::default();
        let d = seq(&[8, 8, 4, 4, 4]);
        assert_eq!(oracle_tot_mult(&d, &lim).unwrap().value, Some(4));
        assert_eq!(oracle_max_mult(&d, &lim).unwrap().value, Some(2));
        assert_eq!(oracle_tot_mult(&seq(&[6, 1, 1]), &lim).unwrap().value, None);
        let t = seq(&[6, 6, 3, 3, 3, 3]);
        assert_eq!(oracle_tot_mult_bi(&t, &lim).unwrap().value, Some(3));
        let max_bi = oracle_max_mult_bi(&t, &lim).unwrap();
        assert_eq!(max_bi.value, Some(2));
        assert_eq!(max_bi.witness.unwrap().to_string(), "6^2 | 3^4");
        assert_eq!(oracle_tot_mult_bi(&seq(&[5, 3]), &lim).unwrap().value, None);
    }

    #[test]
    fn guard_needs_both_bounds_exceeded() {
        let lim = OracleLimits::default();
        let long_light = DegreeSequence::new(vec![1; 8]).unwrap();
        assert!(oracle_tot_mult(&long_light, &lim).is_ok());
        let long_heavy = DegreeSequence::new(vec![3; 8]).unwrap();
        assert_eq!(
            oracle_tot_mult(&long_heavy, &lim),
            Err(Error::OracleTooLarge { n: 8, volume: 24 })
        );
        assert!(oracle_tot_mult(&long_heavy, &OracleLimits::unbounded()).is_ok());
    }

    #[test]
    fn partitions_by_subsets() {
        let bp = oracle_partitions(&seq(&[6, 6, 3, 3, 3, 3])).unwrap();
        let texts: Vec<String> = bp.iter().map(|p| p.to_string()).collect();
        assert_eq!(texts, vec!["6 3^2 | 6 3^2", "6^2 | 3^4"]);
        assert!(oracle_partitions(&seq(&[5, 3])).unwrap().is_empty());
        assert!(oracle_partitions(&seq(&[2, 1])).unwrap().is_empty());
    }
}
