//! Explicit witness (multi)graphs.
//!
//! Vertex `i` of a general realization carries degree `d_i` of the sorted
//! sequence. Bipartite realizations of a pair `(a, b)` put the `a` side on
//! vertices `0..p` and the `b` side on `p..p+q`.
//!
//! The total-multiplicity constructions go through a simple graph on a padded
//! sequence (degree-2 helpers, or pendant pairs on both sides) and then fold
//! the padding back into parallel edges. The max-multiplicity constructions
//! are capped greedy procedures; they are always post-validated and fall
//! back to exhaustive search on small inputs.

mod multigraph;
mod sound;

pub use multigraph::{
    check_realization, verify_realization, BipartiteMultigraph, Claim, ClaimedDegrees, EdgeDoc,
    GraphDoc, MultBound, Multigraph, Realization, RealizationCertificate, Side,
};
pub use sound::{find_sound_permutation, path_realization, SoundPermutation};

use std::cmp::Reverse;

use crate::checkers::{
    can_multigraph, is_bigraphic_pair, is_r_max_bigraphic_pair, is_r_max_graphic, not_multigraphic,
};
use crate::error::{Error, Result};
use crate::optimize::{tot_mult, tot_mult_bi_pair};
use crate::oracle;
use crate::sequence::{DegreeSequence, PartitionPair};

/// Cap on padding vertices for the total-multiplicity constructions.
const MAX_PADDING: u64 = 1 << 20;

/// Largest instance the greedy constructions retry by exhaustive search.
const EXACT_FALLBACK_MAX_N: usize = 8;

/// Havel–Hakimi on labeled targets: the vertex with the largest residual
/// (lowest label on ties) is joined to the next-largest residuals.
fn havel_hakimi_labeled(target: &[u64]) -> Result<Multigraph> {
    let mut g = Multigraph::new(target.len());
    let mut res: Vec<(u64, usize)> = target.iter().copied().zip(0..).collect();
    loop {
        res.retain(|&(r, _)| r > 0);
        if res.is_empty() {
            return Ok(g);
        }
        res.sort_by_key(|&(r, v)| (Reverse(r), v));
        let (k, v) = res[0];
        let k = k as usize;
        if k >= res.len() {
            return Err(Error::NotGraphic);
        }
        for entry in &mut res[1..=k] {
            entry.0 -= 1;
            g.add_edges(v, entry.1, 1);
        }
        res[0].0 = 0;
    }
}

/// Simple graph realizing `d`, or [`Error::NotGraphic`].
pub fn havel_hakimi(d: &DegreeSequence) -> Result<Multigraph> {
    if d.volume() % 2 == 1 {
        return Err(Error::NotGraphic);
    }
    havel_hakimi_labeled(d.degrees())
}

/// Removes the degree-2 vertex `v`, joining its two neighbors directly.
///
/// When both of `v`'s edges go to the same vertex `x`, joining would make a
/// loop; instead one copy of some edge `{u, w}` away from `x` is rerouted as
/// `{x, u}`, `{x, w}`. Either way every other degree is unchanged.
pub fn contract_degree_two(g: &mut Multigraph, v: usize) -> Result<()> {
    match g.neighbors(v).as_slice() {
        &[(x, 1), (y, 1)] => {
            g.remove_edges(v, x, 1);
            g.remove_edges(v, y, 1);
            g.add_edges(x, y, 1);
            Ok(())
        }
        &[(x, 2)] => {
            g.remove_edges(v, x, 2);
            let excess_added = |u: usize, w: usize, m: u64| {
                u64::from(g.multiplicity(x, u) > 0) + u64::from(g.multiplicity(x, w) > 0)
                    - u64::from(m > 1).min(1)
            };
            let Some(((u, w), _)) = g
                .edges()
                .filter(|&((u, w), _)| u != x && w != x)
                .min_by_key(|&((u, w), m)| (excess_added(u, w, m), u, w))
            else {
                return Err(Error::ValidationFailed(format!(
                    "no edge avoids vertex {x} while contracting {v}"
                )));
            };
            g.remove_edges(u, w, 1);
            g.add_edges(x, u, 1);
            g.add_edges(x, w, 1);
            Ok(())
        }
        other => Err(Error::ValidationFailed(format!(
            "vertex {v} does not have degree 2 (neighbors {other:?})"
        ))),
    }
}

fn padding(t: u64) -> Result<usize> {
    if t > MAX_PADDING {
        Err(Error::TooLarge(t))
    } else {
        Ok(t as usize)
    }
}

/// Multigraph realizing `d` with the least possible number of excess edges.
///
/// Realizes `d ∘ 2^t` by Havel–Hakimi for `t = TotMult(d)` and contracts the
/// `t` helper vertices, those with the heaviest neighbors first.
pub fn realize_tot_mult(d: &DegreeSequence) -> Result<Multigraph> {
    if !can_multigraph(d)?.holds {
        return Err(not_multigraphic(d));
    }
    let t = tot_mult(d)?
        .value
        .expect("multigraphic sequences have a value");
    let helpers = padding(t)?;
    let n = d.len();
    let mut target = d.degrees().to_vec();
    target.extend(std::iter::repeat_n(2, helpers));
    let mut g = havel_hakimi_labeled(&target).map_err(|_| {
        Error::ValidationFailed(format!(
            "padding with {t} helpers did not yield a graphic sequence"
        ))
    })?;

    let mut order: Vec<usize> = (n..n + helpers).collect();
    order.sort_by_cached_key(|&h| {
        let mut nb: Vec<u64> = g.neighbors(h).iter().map(|&(u, _)| target[u]).collect();
        nb.sort_unstable_by(|a, b| b.cmp(a));
        (Reverse(nb), h)
    });
    for h in order {
        contract_degree_two(&mut g, h)?;
    }
    let h = g.truncated(n);
    check_realization(
        &h,
        &Claim {
            degrees: ClaimedDegrees::Sequence(d.clone()),
            max_mult: None,
            tot_mult: Some(MultBound::Exactly(t)),
        },
    )?;
    Ok(h)
}

/// Multigraph realizing `d` with every multiplicity at most `r`.
///
/// The vertex with the largest residual hands out its edges one copy at a
/// time, each to the neighbor with the largest residual still below the cap.
pub fn realize_max_mult(d: &DegreeSequence, r: u64) -> Result<Multigraph> {
    if r == 0 {
        return Err(Error::ZeroMultiplicity);
    }
    if !is_r_max_graphic(d, r)?.holds {
        return Err(Error::InfeasibleAtR(r));
    }
    let claim = Claim {
        degrees: ClaimedDegrees::Sequence(d.clone()),
        max_mult: Some(MultBound::AtMost(r)),
        tot_mult: None,
    };
    let n = d.len();
    let greedy = || -> Option<Multigraph> {
        let mut g = Multigraph::new(n);
        let mut res = d.degrees().to_vec();
        while let Some(v) = (0..n)
            .filter(|&v| res[v] > 0)
            .max_by_key(|&v| (res[v], Reverse(v)))
        {
            while res[v] > 0 {
                let u = (0..n)
                    .filter(|&u| u != v && res[u] > 0 && g.multiplicity(v, u) < r)
                    .max_by_key(|&u| (res[u], Reverse(u)))?;
                g.add_edges(v, u, 1);
                res[v] -= 1;
                res[u] -= 1;
            }
        }
        Some(g)
    };
    match greedy() {
        Some(g) if verify_realization(&g, &claim) => Ok(g),
        _ if n <= EXACT_FALLBACK_MAX_N => oracle::find_multigraph(d.degrees(), r)
            .ok_or_else(|| Error::ValidationFailed(format!("no realization with cap {r} found"))),
        _ => Err(Error::ValidationFailed(format!(
            "capped greedy failed for r = {r}"
        ))),
    }
}

/// Simple bipartite graph with side degrees exactly `a` and `b`: each `a`
/// vertex, largest first, is joined to the `b` vertices with the largest
/// residual degrees.
pub fn gale_ryser_build(p: &PartitionPair) -> Result<BipartiteMultigraph> {
    if !is_bigraphic_pair(p).holds {
        return Err(Error::NotBigraphic);
    }
    let (pn, qn) = (p.a().len(), p.b().len());
    let mut g = BipartiteMultigraph::with_sides(pn, qn);
    let mut res: Vec<(u64, usize)> = p.b().degrees().iter().copied().zip(pn..).collect();
    for (i, &k) in p.a().degrees().iter().enumerate() {
        res.sort_by_key(|&(r, v)| (Reverse(r), v));
        let k = k as usize;
        if k > qn || res[k - 1].0 == 0 {
            return Err(Error::ValidationFailed(format!(
                "a-vertex {i} ran out of partners"
            )));
        }
        for entry in &mut res[..k] {
            entry.0 -= 1;
            g.add_edges(i, entry.1, 1);
        }
    }
    Ok(g)
}

/// Bipartite realization of `(a, b)` with every multiplicity at most `r`.
pub fn realize_max_mult_bi(p: &PartitionPair, r: u64) -> Result<BipartiteMultigraph> {
    if !is_r_max_bigraphic_pair(p, r)?.holds {
        return Err(Error::InfeasibleAtR(r));
    }
    let claim = Claim {
        degrees: ClaimedDegrees::Pair(p.clone()),
        max_mult: Some(MultBound::AtMost(r)),
        tot_mult: None,
    };
    let (pn, qn) = (p.a().len(), p.b().len());
    let greedy = || -> Option<BipartiteMultigraph> {
        let mut g = BipartiteMultigraph::with_sides(pn, qn);
        let mut res = p.b().degrees().to_vec();
        for (i, &need) in p.a().degrees().iter().enumerate() {
            for _ in 0..need {
                let j = (0..qn)
                    .filter(|&j| res[j] > 0 && g.graph().multiplicity(i, pn + j) < r)
                    .max_by_key(|&j| (res[j], Reverse(j)))?;
                g.add_edges(i, pn + j, 1);
                res[j] -= 1;
            }
        }
        Some(g)
    };
    match greedy() {
        Some(g) if verify_realization(&g, &claim) => Ok(g),
        _ if pn + qn <= EXACT_FALLBACK_MAX_N => {
            oracle::find_bipartite_multigraph(p.a().degrees(), p.b().degrees(), r).ok_or_else(
                || Error::ValidationFailed(format!("no realization with cap {r} found")),
            )
        }
        _ => Err(Error::ValidationFailed(format!(
            "capped greedy failed for r = {r}"
        ))),
    }
}

/// Bipartite realization of `(a, b)` with the least number of excess edges.
///
/// Builds a simple realization of `(a ∘ 1^t, b ∘ 1^t)` for `t =
/// TotMult(a, b)` and then, for each pendant pair `x_i in A`, `y_i in B`,
/// replaces `{x_i, y'}` and `{x', y_i}` by `{x', y'}` where `y'`, `x'` are
/// their current neighbors.
pub fn realize_tot_mult_bi(p: &PartitionPair) -> Result<BipartiteMultigraph> {
    let t = tot_mult_bi_pair(p)
        .value
        .expect("pairs always have a value");
    let pendants = padding(t)?;
    let padded = p.with_pendants(pendants)?;
    let (pn, qn) = (p.a().len(), p.b().len());
    let big_p = pn + pendants;
    let mut g = gale_ryser_build(&padded).map_err(|_| {
        Error::ValidationFailed(format!("padding with {t} pendant pairs is not bigraphic"))
    })?;
    for i in 0..pendants {
        let x = pn + i;
        let y = big_p + qn + i;
        let only = |g: &BipartiteMultigraph, v: usize| match g.graph().neighbors(v).as_slice() {
            &[(u, 1)] => Ok(u),
            other => Err(Error::ValidationFailed(format!(
                "pendant {v} has neighbors {other:?}"
            ))),
        };
        let y_nb = only(&g, x)?;
        let x_nb = only(&g, y)?;
        if y_nb == y {
            g.remove_edges(x, y, 1);
        } else {
            g.remove_edges(x, y_nb, 1);
            g.remove_edges(x_nb, y, 1);
            g.add_edges(x_nb, y_nb, 1);
        }
    }
    let mut out = BipartiteMultigraph::with_sides(pn, qn);
    for ((u, v), m) in g.graph().edges() {
        // u < v, so u is on side A.
        debug_assert!(u < pn && v >= big_p && v < big_p + qn);
        out.add_edges(u, v - big_p + pn, m);
    }
    check_realization(
        &out,
        &Claim {
            degrees: ClaimedDegrees::Pair(p.clone()),
            max_mult: None,
            tot_mult: Some(MultBound::Exactly(t)),
        },
    )?;
    Ok(out)
}

/// Some bipartite realization of `(a, b)`: north-west-corner filling, each
/// step joining the current `a` and `b` vertices with as many copies as the
/// smaller residual allows.
pub fn arbitrary_bipartite_fill(p: &PartitionPair) -> BipartiteMultigraph {
    let (a, b) = (p.a().degrees(), p.b().degrees());
    let pn = a.len();
    let mut g = BipartiteMultigraph::with_sides(pn, b.len());
    let (mut ra, mut rb) = (a.to_vec(), b.to_vec());
    let (mut i, mut j) = (0, 0);
    while i < ra.len() && j < rb.len() {
        let m = ra[i].min(rb[j]);
        g.add_edges(i, pn + j, m);
        ra[i] -= m;
        rb[j] -= m;
        if ra[i] == 0 {
            i += 1;
        }
        if rb[j] == 0 {
            j += 1;
        }
    }
    g
}
