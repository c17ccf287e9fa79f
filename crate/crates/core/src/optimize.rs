//! Optimal MaxMult / TotMult values, for a whole sequence or a fixed
//! bipartition.

use rayon::prelude::*;
use serde::Serialize;

use crate::checkers::{can_multigraph, is_r_max_bigraphic_pair, is_r_max_graphic};
use crate::error::{Error, Result};
use crate::partitions::enumerate_balanced_partitions;
use crate::sequence::{eg_report, DegreeSequence, MinSumCursor, PartitionPair};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OptimalValue {
    /// `None` when no realization of the requested kind exists.
    pub value: Option<u64>,
    /// Minimizing partition, for whole-sequence bipartite optima.
    pub witness: Option<PartitionPair>,
}

impl OptimalValue {
    fn plain(value: Option<u64>) -> Self {
        Self {
            value,
            witness: None,
        }
    }
}

/// Least `x` in `lo..=hi` with `holds(x)`, assuming monotonicity and
/// `holds(hi)`.
fn least(mut lo: u64, mut hi: u64, mut holds: impl FnMut(u64) -> bool) -> u64 {
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if holds(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

/// Least `r` such that `d` has a realization with multiplicity at most `r`.
pub fn max_mult(d: &DegreeSequence) -> Result<OptimalValue> {
    if !can_multigraph(d)?.holds {
        return Ok(OptimalValue::plain(None));
    }
    if d.is_empty() {
        return Ok(OptimalValue::plain(Some(0)));
    }
    let r = least(1, d.max_degree(), |r| {
        is_r_max_graphic(d, r)
            .expect("volume already checked")
            .holds
    });
    Ok(OptimalValue::plain(Some(r)))
}

/// Least number of excess edges over all realizations of `d`:
/// `max(Δ_1, ⌈Δ_max / 2⌉)`, clamped at zero.
pub fn tot_mult(d: &DegreeSequence) -> Result<OptimalValue> {
    if !can_multigraph(d)?.holds {
        return Ok(OptimalValue::plain(None));
    }
    let eg = eg_report(d);
    let half_max = (eg.delta_max + 1).div_euclid(2);
    let t = eg.delta1.max(half_max).max(0);
    Ok(OptimalValue::plain(Some(t as u64)))
}

/// Least `r` such that the pair has a bipartite realization with
/// multiplicity at most `r`.
pub fn max_mult_bi_pair(p: &PartitionPair) -> OptimalValue {
    if p.a().is_empty() {
        return OptimalValue::plain(Some(0));
    }
    let r = least(1, p.b().max_degree(), |r| {
        is_r_max_bigraphic_pair(p, r).expect("r >= 1").holds
    });
    OptimalValue::plain(Some(r))
}

/// Least number of excess edges over all bipartite realizations of the
/// pair: `max_l (a_1 + ... + a_l - sum_j min{l, b_j})`, clamped at zero.
pub fn tot_mult_bi_pair(p: &PartitionPair) -> OptimalValue {
    let prefix = p.a().prefix_sums();
    let mut cursor = MinSumCursor::new(p.b().degrees());
    let t = (1..=p.a().len())
        .map(|l| prefix[l] - cursor.tail(0, l as i128))
        .fold(0, i128::max);
    OptimalValue::plain(Some(t as u64))
}

/// Knobs for the whole-sequence bipartite optima.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Abort with [`Error::BudgetExceeded`] instead of examining more than
    /// this many partitions.
    pub budget: Option<usize>,
    /// Worker threads for evaluating partitions; results do not depend on it.
    pub jobs: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            budget: None,
            jobs: 1,
        }
    }
}

const BATCH: usize = 256;

/// Minimizes `eval` over `BP(d)`. Ties go to the partition seen first, which
/// is the one with the lexicographically largest `a` side. Stops as soon as
/// `floor` is reached.
fn minimize_over_partitions(
    d: &DegreeSequence,
    opts: &SearchOptions,
    floor: u64,
    eval: fn(&PartitionPair) -> u64,
) -> Result<OptimalValue> {
    if d.volume() % 2 == 1 {
        return Err(Error::OddVolume(d.volume()));
    }
    let pool = if opts.jobs > 1 {
        Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(opts.jobs)
                .build()
                .map_err(|e| Error::ValidationFailed(format!("thread pool: {e}")))?,
        )
    } else {
        None
    };
    let mut best: Option<(u64, PartitionPair)> = None;
    let mut seen = 0usize;
    let mut stream = enumerate_balanced_partitions(d);
    loop {
        let batch: Vec<PartitionPair> = stream.by_ref().take(BATCH).collect();
        if batch.is_empty() {
            break;
        }
        let values: Vec<u64> = match &pool {
            Some(pool) => pool.install(|| batch.par_iter().map(eval).collect()),
            None => batch.iter().map(eval).collect(),
        };
        for (p, v) in batch.into_iter().zip(values) {
            if opts.budget.is_some_and(|b| seen >= b) {
                return Err(Error::BudgetExceeded {
                    budget: opts.budget.unwrap_or_default(),
                });
            }
            seen += 1;
            if best.as_ref().is_none_or(|(b, _)| v < *b) {
                best = Some((v, p));
            }
            if best.as_ref().is_some_and(|(b, _)| *b <= floor) {
                return Ok(finish(best));
            }
        }
    }
    Ok(finish(best))
}

fn finish(best: Option<(u64, PartitionPair)>) -> OptimalValue {
    match best {
        Some((v, p)) => OptimalValue {
            value: Some(v),
            witness: Some(p),
        },
        None => OptimalValue::plain(None),
    }
}

/// Least MaxMult over all bipartite realizations of `d`, with the
/// minimizing partition.
pub fn max_mult_bi(d: &DegreeSequence, opts: &SearchOptions) -> Result<OptimalValue> {
    let floor = u64::from(!d.is_empty());
    minimize_over_partitions(d, opts, floor, |p| {
        max_mult_bi_pair(p)
            .value
            .expect("pairs are always feasible")
    })
}

/// Least TotMult over all bipartite realizations of `d`, with the
/// minimizing partition.
pub fn tot_mult_bi(d: &DegreeSequence, opts: &SearchOptions) -> Result<OptimalValue> {
    minimize_over_partitions(d, opts, 0, |p| {
        tot_mult_bi_pair(p)
            .value
            .expect("pairs are always feasible")
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checkers::is_t_tot_graphic;
    use proptest::prelude::*;

    fn seq(v: &[u64]) -> DegreeSequence {
        DegreeSequence::new(v.to_vec()).unwrap()
    }

    fn pair(text: &str) -> PartitionPair {
        text.parse().unwrap()
    }

    fn val(o: Result<OptimalValue>) -> Option<u64> {
        o.unwrap().value
    }

    #[test]
    fn general_examples() {
        assert_eq!(val(max_mult(&seq(&[8, 8, 4, 4, 4]))), Some(2));
        assert_eq!(val(max_mult(&seq(&[4, 2, 2]))), Some(2));
        assert_eq!(val(max_mult(&seq(&[1, 1]))), Some(1));
        assert_eq!(val(tot_mult(&seq(&[8, 8, 4, 4, 4]))), Some(4));
        assert_eq!(val(tot_mult(&seq(&[4, 4]))), Some(3));
        assert_eq!(val(tot_mult(&seq(&[3, 3, 3, 3]))), Some(0));
        assert_eq!(val(tot_mult(&seq(&[6, 1, 1]))), None);
        assert_eq!(val(max_mult(&seq(&[6, 1, 1]))), None);
        assert_eq!(val(max_mult(&DegreeSequence::empty())), Some(0));
        assert_eq!(max_mult(&seq(&[3])), Err(Error::OddVolume(3)));
    }

    #[test]
    fn pair_examples() {
        assert_eq!(max_mult_bi_pair(&pair("6 3 3 | 6 3 3")).value, Some(2));
        assert_eq!(max_mult_bi_pair(&pair("4 3 | 4 3")).value, Some(2));
        for k in 1..10 {
            let p = PartitionPair::new(seq(&[k]), seq(&[k])).unwrap();
            assert_eq!(max_mult_bi_pair(&p).value, Some(k));
        }
        assert_eq!(tot_mult_bi_pair(&pair("6 3 3 | 6 3 3")).value, Some(3));
        assert_eq!(tot_mult_bi_pair(&pair("2 2 | 2 2")).value, Some(0));
        assert_eq!(tot_mult_bi_pair(&pair("3 | 1 1 1")).value, Some(0));
        assert_eq!(tot_mult_bi_pair(&pair("3 | 3")).value, Some(2));
    }

    #[test]
    fn whole_sequence_examples() {
        let opts = SearchOptions::default();
        let d = seq(&[6, 6, 3, 3, 3, 3]);
        let tot = tot_mult_bi(&d, &opts).unwrap();
        assert_eq!(tot.value, Some(3));
        let max = max_mult_bi(&d, &opts).unwrap();
        assert_eq!(max.value, Some(2));
        // Both partitions reach 2; the lexicographically larger a side wins.
        assert_eq!(max.witness.unwrap().to_string(), "6^2 | 3^4");

        let c4 = seq(&[2, 2, 2, 2]);
        assert_eq!(tot_mult_bi(&c4, &opts).unwrap().value, Some(0));
        assert_eq!(max_mult_bi(&c4, &opts).unwrap().value, Some(1));
        assert_eq!(
            tot_mult_bi(&seq(&[3, 1, 1, 1]), &opts).unwrap().value,
            Some(0)
        );
        assert_eq!(
            tot_mult_bi(&seq(&[5, 3]), &opts).unwrap(),
            OptimalValue::plain(None)
        );
        assert_eq!(tot_mult_bi(&seq(&[3]), &opts), Err(Error::OddVolume(3)));
    }

    #[test]
    fn budget_and_jobs() {
        let d = DegreeSequence::new((21..=40).collect()).unwrap();
        let tight = SearchOptions {
            budget: Some(10),
            jobs: 1,
        };
        assert_eq!(
            max_mult_bi(&d, &tight),
            Err(Error::BudgetExceeded { budget: 10 })
        );
        // An early stop inside the budget is not an abort.
        let c4 = seq(&[2, 2, 2, 2]);
        let one = SearchOptions {
            budget: Some(1),
            jobs: 1,
        };
        assert!(tot_mult_bi(&c4, &one).is_ok());

        let d = seq(&[9, 7, 6, 5, 5, 4, 3, 3, 2, 2, 1, 1]);
        let seq1 = max_mult_bi(&d, &SearchOptions::default()).unwrap();
        let par = max_mult_bi(
            &d,
            &SearchOptions {
                budget: None,
                jobs: 4,
            },
        )
        .unwrap();
        assert_eq!(seq1, par);
    }

    proptest! {
        #[test]
        fn formula_matches_least_t(v in prop::collection::vec(1u64..9, 1..9)) {
            let d = DegreeSequence::new(v).unwrap();
            prop_assume!(d.volume().is_multiple_of(2));
            let t = tot_mult(&d).unwrap().value;
            let least_t = (0..=d.volume()).find(|&t| {
                is_t_tot_graphic(&d, t).map(|v| v.holds).unwrap_or(false)
            });
            prop_assert_eq!(t, least_t);
            if let Some(r) = max_mult(&d).unwrap().value {
                prop_assert!(is_r_max_graphic(&d, r).unwrap().holds);
                prop_assert!(r == 1 || !is_r_max_graphic(&d, r - 1).unwrap().holds);
            }
        }

        #[test]
        fn bipartite_never_beats_general(v in prop::collection::vec(1u64..7, 1..9)) {
            let d = DegreeSequence::new(v).unwrap();
            prop_assume!(d.volume().is_multiple_of(2));
            let opts = SearchOptions::default();
            if let Some(tb) = tot_mult_bi(&d, &opts).unwrap().value {
                prop_assert!(tot_mult(&d).unwrap().value.unwrap() <= tb);
            }
            if let Some(mb) = max_mult_bi(&d, &opts).unwrap().value {
                prop_assert!(max_mult(&d).unwrap().value.unwrap() <= mb);
            }
        }
    }
}
