//! Named sequence families with known optima, used as fixtures.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sequence::{DegreeSequence, PartitionPair};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyFixture {
    pub name: String,
    pub sequence: DegreeSequence,
    /// Set for families defined through a specific bipartition.
    pub pair: Option<PartitionPair>,
    /// Measure name and its known value, in display order.
    pub expected: Vec<(&'static str, u64)>,
    pub provenance: &'static str,
    /// Parameter lies at the edge of the family's range and some claim
    /// degenerates.
    pub degenerate: bool,
}

impl FamilyFixture {
    pub fn expected(&self, measure: &str) -> Option<u64> {
        self.expected
            .iter()
            .find(|(name, _)| *name == measure)
            .map(|&(_, v)| v)
    }
}

fn param(ok: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::FamilyParameter(msg()))
    }
}

fn block_seq(blocks: &[(u64, usize)]) -> Result<DegreeSequence> {
    DegreeSequence::from_blocks(blocks)
}

/// `((2n-2)^2, (n-1)^{n-2})`: its TotMult-optimal and MaxMult-optimal
/// realizations are far apart.
pub fn gap_general(n: u64) -> Result<FamilyFixture> {
    param(n >= 5, || format!("gap-general needs n >= 5, got {n}"))?;
    let m = n as usize;
    Ok(FamilyFixture {
        name: format!("gap-general(n={n})"),
        sequence: block_seq(&[(2 * n - 2, 2), (n - 1, m - 2)])?,
        pair: None,
        expected: vec![
            ("tot_mult", n - 1),
            ("max_mult", 2),
            ("max_mult_of_tot_optimal", n),
            ("tot_mult_of_max_optimal_lb", 2 * n - 3),
        ],
        provenance: "max/tot gap, general multigraphs",
        degenerate: false,
    })
}

/// `(n^2, (n/2)^{n-2})` for even `n`: the bipartite analogue.
pub fn gap_bipartite(n: u64) -> Result<FamilyFixture> {
    param(n >= 4 && n.is_multiple_of(2), || {
        format!("gap-bipartite needs an even n >= 4, got {n}")
    })?;
    let m = n as usize;
    Ok(FamilyFixture {
        name: format!("gap-bipartite(n={n})"),
        sequence: block_seq(&[(n, 2), (n / 2, m - 2)])?,
        pair: None,
        expected: vec![
            ("tot_mult_bi", n / 2),
            ("max_mult_bi", 2),
            ("tot_of_max_optimal_lb", n - 2),
        ],
        provenance: "max/tot gap, bipartite multigraphs",
        degenerate: false,
    })
}

/// `a = b = (q^{k-1}, q-1)` with `q = rk`: multiplicity `r` suffices and
/// `r - 1` does not. The sequence is `a ∘ b`.
pub fn tight_rmax(r: u64, k: u64) -> Result<FamilyFixture> {
    param(r >= 1 && k >= 2, || {
        format!("tight-rmax needs r >= 1 and k >= 2, got r={r}, k={k}")
    })?;
    let q = r
        .checked_mul(k)
        .ok_or_else(|| Error::FamilyParameter("r * k overflows".into()))?;
    let side = block_seq(&[(q, k as usize - 1), (q - 1, 1)])?;
    let pair = PartitionPair::new(side.clone(), side)?;
    Ok(FamilyFixture {
        name: format!("tight-rmax(r={r}, k={k})"),
        sequence: pair.merged(),
        pair: Some(pair),
        expected: vec![("max_mult_bi_pair", r)],
        provenance: "tightness of the r-max sufficient condition",
        degenerate: false,
    })
}

/// `a = b = (k^{k-1}, 1)`, `d = (k^{2(k-1)}, 1^2)`: `(k-2)`-tot-bigraphic
/// but not `(k-3)`-tot-bigraphic. At `k = 3` the failing level is `t = 0`.
pub fn tight_ttot(k: u64) -> Result<FamilyFixture> {
    param(k >= 3, || format!("tight-ttot needs k >= 3, got {k}"))?;
    let side = block_seq(&[(k, k as usize - 1), (1, 1)])?;
    let pair = PartitionPair::new(side.clone(), side)?;
    Ok(FamilyFixture {
        name: format!("tight-ttot(k={k})"),
        sequence: pair.merged(),
        pair: Some(pair),
        expected: vec![("t_pass", k - 2), ("t_fail", k - 3)],
        provenance: "tightness of the t-tot sufficient condition",
        degenerate: k == 3,
    })
}

/// Partition′ instance built from positive integers `a_1..a_n` with
/// `B = sum a`: entries `2B + a_j`, then `n` copies of `2B`, then `B, B`.
pub fn partition_prime_instance(a: &[u64]) -> Result<DegreeSequence> {
    param(!a.is_empty() && a.iter().all(|&x| x > 0), || {
        "partition-prime needs a nonempty list of positive integers".into()
    })?;
    let big_b = a
        .iter()
        .try_fold(0u64, |s, &x| s.checked_add(x))
        .ok_or(Error::Overflow)?;
    let twice = big_b.checked_mul(2).ok_or(Error::Overflow)?;
    let mut v = a
        .iter()
        .map(|&x| twice.checked_add(x).ok_or(Error::Overflow))
        .collect::<Result<Vec<_>>>()?;
    v.extend(std::iter::repeat_n(twice, a.len()));
    v.extend([big_b, big_b]);
    DegreeSequence::new(v)
}

/// `Some(B)` when `d` has the Partition′ shape: even length, the two
/// smallest entries equal to `B > 0`, all others at least `2B`, and
/// volume `(2n - 1) B`.
pub fn partition_prime_bound(d: &DegreeSequence) -> Option<u64> {
    let v = d.degrees();
    let n = v.len();
    if n < 2 || n % 2 == 1 {
        return None;
    }
    let b = v[n - 1];
    let shape = v[n - 2] == b && v[..n - 2].iter().all(|&x| x >= 2 * b);
    let volume = (2 * n as u128 - 1) * b as u128;
    (shape && d.volume() as u128 == volume).then_some(b)
}
