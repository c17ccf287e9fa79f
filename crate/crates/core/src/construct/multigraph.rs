use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sequence::{DegreeSequence, PartitionPair};

/// Loopless multigraph on vertices `0..n`; edge keys are `(u, v)` with
/// `u < v`, values are multiplicities `>= 1`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    edges: BTreeMap<(usize, usize), u64>,
}

fn key(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Multigraph {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            edges: BTreeMap::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Adds `mult` parallel copies of `{u, v}`.
    ///
    /// # Panics
    /// On self-loops or out-of-range vertices.
    pub fn add_edges(&mut self, u: usize, v: usize, mult: u64) {
        assert!(u != v, "self-loop at vertex {u}");
        assert!(u < self.n && v < self.n, "vertex out of range");
        if mult > 0 {
            *self.edges.entry(key(u, v)).or_insert(0) += mult;
        }
    }

    /// Removes `mult` copies of `{u, v}`; panics if fewer exist.
    pub fn remove_edges(&mut self, u: usize, v: usize, mult: u64) {
        let k = key(u, v);
        let m = self.edges.get_mut(&k).expect("removing a missing edge");
        assert!(*m >= mult, "removing more copies than present");
        *m -= mult;
        if *m == 0 {
            self.edges.remove(&k);
        }
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> u64 {
        self.edges.get(&key(u, v)).copied().unwrap_or(0)
    }

    /// `((u, v), mult)` in `(u, v)` order.
    pub fn edges(&self) -> impl Iterator<Item = ((usize, usize), u64)> + '_ {
        self.edges.iter().map(|(&k, &m)| (k, m))
    }

    /// Neighbors of `v` with multiplicities, in vertex order.
    pub fn neighbors(&self, v: usize) -> Vec<(usize, u64)> {
        let mut out: Vec<(usize, u64)> = self
            .edges
            .iter()
            .filter_map(|(&(a, b), &m)| match (a == v, b == v) {
                (true, _) => Some((b, m)),
                (_, true) => Some((a, m)),
                _ => None,
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn degrees(&self) -> Vec<u64> {
        let mut deg = vec![0u64; self.n];
        for (&(u, v), &m) in &self.edges {
            deg[u] += m;
            deg[v] += m;
        }
        deg
    }

    pub fn degree(&self, v: usize) -> u64 {
        self.neighbors(v).iter().map(|&(_, m)| m).sum()
    }

    /// Total number of edges counting copies.
    pub fn edge_count(&self) -> u64 {
        self.edges.values().sum()
    }

    /// Edges of the underlying simple graph.
    pub fn support_size(&self) -> usize {
        self.edges.len()
    }

    /// Largest multiplicity, 0 without edges.
    pub fn max_mult(&self) -> u64 {
        self.edges.values().copied().max().unwrap_or(0)
    }

    /// Number of excess copies, `|E| - |E'|`.
    pub fn tot_mult(&self) -> u64 {
        self.edges.values().map(|m| m - 1).sum()
    }

    /// Same multigraph on the first `n` vertices; the rest must be isolated.
    pub(crate) fn truncated(&self, n: usize) -> Self {
        debug_assert!(self.edges.keys().all(|&(_, v)| v < n));
        Self {
            n,
            edges: self.edges.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphDoc::from_graph(self, None)).expect("plain data serializes")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

/// A multigraph whose every edge joins side `A` to side `B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteMultigraph {
    graph: Multigraph,
    sides: Vec<Side>,
}

impl BipartiteMultigraph {
    pub fn new(sides: Vec<Side>) -> Self {
        Self {
            graph: Multigraph::new(sides.len()),
            sides,
        }
    }

    /// Vertices `0..p` on side `A`, `p..p+q` on side `B`.
    pub fn with_sides(p: usize, q: usize) -> Self {
        let mut sides = vec![Side::A; p];
        sides.extend(std::iter::repeat_n(Side::B, q));
        Self::new(sides)
    }

    /// # Panics
    /// When both endpoints lie on the same side.
    pub fn add_edges(&mut self, u: usize, v: usize, mult: u64) {
        assert!(self.sides[u] != self.sides[v], "edge inside one side");
        self.graph.add_edges(u, v, mult);
    }

    pub fn remove_edges(&mut self, u: usize, v: usize, mult: u64) {
        self.graph.remove_edges(u, v, mult);
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn sides(&self) -> &[Side] {
        &self.sides
    }

    pub fn max_mult(&self) -> u64 {
        self.graph.max_mult()
    }

    pub fn tot_mult(&self) -> u64 {
        self.graph.tot_mult()
    }

    /// Degrees of the side-`side` vertices, in vertex order.
    pub fn side_degrees(&self, side: Side) -> Vec<u64> {
        let deg = self.graph.degrees();
        (0..self.sides.len())
            .filter(|&v| self.sides[v] == side)
            .map(|v| deg[v])
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphDoc::from_graph(&self.graph, Some(&self.sides)))
            .expect("plain data serializes")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDoc {
    pub u: usize,
    pub v: usize,
    pub mult: u64,
}

/// JSON form: `{"n", "sides"?, "edges": [{"u", "v", "mult"}]}`, 0-based,
/// edges sorted by `(u, v)`. Bipartite edges list the `A` endpoint as `u`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDoc {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sides: Option<Vec<Side>>,
    pub edges: Vec<EdgeDoc>,
}

impl GraphDoc {
    fn from_graph(g: &Multigraph, sides: Option<&[Side]>) -> Self {
        let mut edges: Vec<EdgeDoc> = g
            .edges()
            .map(|((u, v), mult)| match sides {
                Some(s) if s[u] == Side::B => EdgeDoc { u: v, v: u, mult },
                _ => EdgeDoc { u, v, mult },
            })
            .collect();
        edges.sort_by_key(|e| (e.u, e.v));
        Self {
            n: g.vertex_count(),
            sides: sides.map(<[Side]>::to_vec),
            edges,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let doc: GraphDoc =
            serde_json::from_str(text).map_err(|e| Error::ValidationFailed(e.to_string()))?;
        if let Some(s) = &doc.sides {
            if s.len() != doc.n {
                return Err(Error::ValidationFailed(
                    "sides length differs from n".into(),
                ));
            }
        }
        for e in &doc.edges {
            if e.u == e.v || e.u >= doc.n || e.v >= doc.n || e.mult == 0 {
                return Err(Error::ValidationFailed(format!(
                    "bad edge {{u: {}, v: {}, mult: {}}}",
                    e.u, e.v, e.mult
                )));
            }
        }
        Ok(doc)
    }

    pub fn to_multigraph(&self) -> Multigraph {
        let mut g = Multigraph::new(self.n);
        for e in &self.edges {
            g.add_edges(e.u, e.v, e.mult);
        }
        g
    }
}

/// Degrees a realization is claimed to have.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClaimedDegrees {
    /// Vertex `i` has degree `d_i`.
    Sequence(DegreeSequence),
    /// Bipartite; the `A` vertices in order have degrees `a`, the `B`
    /// vertices have `b`.
    Pair(PartitionPair),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MultBound {
    AtMost(u64),
    Exactly(u64),
}

impl MultBound {
    fn admits(self, measured: u64) -> bool {
        match self {
            MultBound::AtMost(x) => measured <= x,
            MultBound::Exactly(x) => measured == x,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Claim {
    pub degrees: ClaimedDegrees,
    pub max_mult: Option<MultBound>,
    pub tot_mult: Option<MultBound>,
}

impl Claim {
    pub fn degrees_only(degrees: ClaimedDegrees) -> Self {
        Self {
            degrees,
            max_mult: None,
            tot_mult: None,
        }
    }
}

/// Anything that can be checked against a [`Claim`].
pub trait Realization {
    fn graph(&self) -> &Multigraph;
    fn sides(&self) -> Option<&[Side]>;
}

impl Realization for Multigraph {
    fn graph(&self) -> &Multigraph {
        self
    }

    fn sides(&self) -> Option<&[Side]> {
        None
    }
}

impl Realization for BipartiteMultigraph {
    fn graph(&self) -> &Multigraph {
        &self.graph
    }

    fn sides(&self) -> Option<&[Side]> {
        Some(&self.sides)
    }
}

/// Checks degrees, loops, bipartiteness and measured multiplicities against
/// `claim`, describing the first mismatch.
pub fn check_realization(h: &impl Realization, claim: &Claim) -> Result<()> {
    let g = h.graph();
    let fail = |msg: String| Err(Error::ValidationFailed(msg));
    if let Some(((u, v), _)) = g.edges().find(|&((u, v), _)| u == v) {
        return fail(format!("self-loop {u}-{v}"));
    }
    let deg = g.degrees();
    match &claim.degrees {
        ClaimedDegrees::Sequence(d) => {
            if deg != d.degrees() {
                return fail(format!(
                    "degrees {deg:?} differ from claimed {:?}",
                    d.degrees()
                ));
            }
        }
        ClaimedDegrees::Pair(p) => {
            let Some(sides) = h.sides() else {
                return fail("bipartite claim on a graph without sides".into());
            };
            if let Some(((u, v), _)) = g.edges().find(|&((u, v), _)| sides[u] == sides[v]) {
                return fail(format!("edge {u}-{v} inside one side"));
            }
            let on = |side| -> Vec<u64> {
                (0..g.vertex_count())
                    .filter(|&v| sides[v] == side)
                    .map(|v| deg[v])
                    .collect()
            };
            if on(Side::A) != p.a().degrees() || on(Side::B) != p.b().degrees() {
                return fail(format!(
                    "side degrees {:?} | {:?} differ from claimed {p}",
                    on(Side::A),
                    on(Side::B)
                ));
            }
        }
    }
    if let Some(bound) = claim.max_mult {
        if !bound.admits(g.max_mult()) {
            return fail(format!("MaxMult {} violates {bound:?}", g.max_mult()));
        }
    }
    if let Some(bound) = claim.tot_mult {
        if !bound.admits(g.tot_mult()) {
            return fail(format!("TotMult {} violates {bound:?}", g.tot_mult()));
        }
    }
    Ok(())
}

pub fn verify_realization(h: &impl Realization, claim: &Claim) -> bool {
    check_realization(h, claim).is_ok()
}

/// A verified realization with its measured multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizationCertificate {
    pub graph: Multigraph,
    pub sides: Option<Vec<Side>>,
    pub max_mult: u64,
    pub tot_mult: u64,
    pub claim: Claim,
}

impl RealizationCertificate {
    pub fn issue(h: &impl Realization, claim: Claim) -> Result<Self> {
        check_realization(h, &claim)?;
        Ok(Self {
            graph: h.graph().clone(),
            sides: h.sides().map(<[Side]>::to_vec),
            max_mult: h.graph().max_mult(),
            tot_mult: h.graph().tot_mult(),
            claim,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphDoc::from_graph(&self.graph, self.sides.as_deref()))
            .expect("plain data serializes")
    }
}
