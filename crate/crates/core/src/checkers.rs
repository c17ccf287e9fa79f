//! Realizability predicates.
//!
//! Every checker evaluates its whole inequality family `lhs_l <= rhs_l` and
//! reports the first violated index together with the minimum slack
//! `rhs_l - lhs_l`, not just a boolean. Sums of `min{x, d_i}` are taken
//! through [`MinSumCursor`], so each check is linear in the sequence length.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sequence::{beta, DegreeSequence, MinSumCursor, PartitionPair};

/// Outcome of one realizability check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CheckVerdict {
    pub holds: bool,
    /// First violated inequality (1-based).
    pub failing_index: Option<usize>,
    /// `rhs - lhs` at the tightest index; `None` when no index was checked.
    pub slack: Option<i128>,
    /// Set when the verdict is negative only because the volume is odd.
    pub odd_volume: bool,
}

impl CheckVerdict {
    fn from_family(indices: impl IntoIterator<Item = (usize, i128, i128)>) -> Self {
        let mut failing_index = None;
        let mut slack: Option<i128> = None;
        for (l, lhs, rhs) in indices {
            let s = rhs - lhs;
            if s < 0 && failing_index.is_none() {
                failing_index = Some(l);
            }
            slack = Some(slack.map_or(s, |m| m.min(s)));
        }
        Self {
            holds: failing_index.is_none(),
            failing_index,
            slack,
            odd_volume: false,
        }
    }
}

fn require_even(d: &DegreeSequence) -> Result<()> {
    if d.volume() % 2 == 1 {
        Err(Error::OddVolume(d.volume()))
    } else {
        Ok(())
    }
}

/// `d_1 <= d_2 + ... + d_n`, the single inequality deciding multigraph
/// realizability.
pub fn can_multigraph(d: &DegreeSequence) -> Result<CheckVerdict> {
    require_even(d)?;
    if d.is_empty() {
        return Ok(CheckVerdict::from_family([]));
    }
    let largest = d.max_degree() as i128;
    let rest = d.volume() as i128 - largest;
    Ok(CheckVerdict::from_family([(1, largest, rest)]))
}

/// Erdős–Gallai, restricted to the indices `1..=beta(d)`.
///
/// Odd volume is not an error here: the verdict is negative with
/// `odd_volume` set and no failing index.
pub fn is_graphic(d: &DegreeSequence) -> CheckVerdict {
    let mut verdict = graphic_family(d, 0);
    if d.volume() % 2 == 1 {
        verdict.holds = false;
        verdict.failing_index = None;
        verdict.odd_volume = true;
    }
    verdict
}

/// `Δ_l <= t * min{l, 2}` for `l = 1..=beta(d)`.
fn graphic_family(d: &DegreeSequence, t: i128) -> CheckVerdict {
    let top = beta(d);
    let prefix = d.prefix_sums();
    let mut cursor = MinSumCursor::new(d.degrees());
    CheckVerdict::from_family((1..=top).map(|l| {
        let l128 = l as i128;
        let rhs = l128 * (l128 - 1) + cursor.tail(l, l128) + t * l128.min(2);
        (l, prefix[l], rhs)
    }))
}

/// Chungphaisan: `sum_{i<=l} d_i <= r l (l-1) + sum_{i>l} min{r l, d_i}` for
/// every `l`.
pub fn is_r_max_graphic(d: &DegreeSequence, r: u64) -> Result<CheckVerdict> {
    if r == 0 {
        return Err(Error::ZeroMultiplicity);
    }
    require_even(d)?;
    let r = r as i128;
    let prefix = d.prefix_sums();
    let mut cursor = MinSumCursor::new(d.degrees());
    Ok(CheckVerdict::from_family((1..=d.len()).map(|l| {
        let l128 = l as i128;
        let rhs = r * l128 * (l128 - 1) + cursor.tail(l, r * l128);
        (l, prefix[l], rhs)
    })))
}

/// `Δ_l <= t * min{l, 2}` for `l = 1..=beta(d)`; equivalent to
/// `d ∘ 2^t` being graphic.
pub fn is_t_tot_graphic(d: &DegreeSequence, t: u64) -> Result<CheckVerdict> {
    require_even(d)?;
    if !can_multigraph(d)?.holds {
        return Err(not_multigraphic(d));
    }
    Ok(graphic_family(d, t as i128))
}

pub(crate) fn not_multigraphic(d: &DegreeSequence) -> Error {
    Error::NotMultigraphic {
        largest: d.max_degree(),
        rest: d.volume() - d.max_degree(),
    }
}

/// `sum_{i<=l} a_i <= sum_j min{l r, b_j} + t` for `l = 1..=p`.
fn pair_family(p: &PartitionPair, r: i128, t: i128) -> CheckVerdict {
    let prefix = p.a().prefix_sums();
    let mut cursor = MinSumCursor::new(p.b().degrees());
    CheckVerdict::from_family((1..=p.a().len()).map(|l| {
        let rhs = cursor.tail(0, l as i128 * r) + t;
        (l, prefix[l], rhs)
    }))
}

/// Gale–Ryser.
pub fn is_bigraphic_pair(p: &PartitionPair) -> CheckVerdict {
    pair_family(p, 1, 0)
}

/// Berge: the pair has a bipartite realization with multiplicity at most `r`.
pub fn is_r_max_bigraphic_pair(p: &PartitionPair, r: u64) -> Result<CheckVerdict> {
    if r == 0 {
        return Err(Error::ZeroMultiplicity);
    }
    Ok(pair_family(p, r as i128, 0))
}

/// Gale–Ryser with `t` extra on every right-hand side; equivalent to
/// `(a ∘ 1^t, b ∘ 1^t)` being bigraphic.
pub fn is_t_tot_bigraphic_pair(p: &PartitionPair, t: u64) -> CheckVerdict {
    pair_family(p, 1, t as i128)
}

/// `a_1 b_1 <= r X + r` with `X` the side volume. `true` implies
/// [`is_r_max_bigraphic_pair`]; `false` is inconclusive.
pub fn sufficient_r_max(p: &PartitionPair, r: u64) -> bool {
    let product = p.a().max_degree() as i128 * p.b().max_degree() as i128;
    let r = r as i128;
    product <= r * p.side_volume() as i128 + r
}

/// `a_1 b_1 <= X + t + 1`. `true` implies [`is_t_tot_bigraphic_pair`].
pub fn sufficient_t_tot(p: &PartitionPair, t: u64) -> bool {
    let product = p.a().max_degree() as i128 * p.b().max_degree() as i128;
    product <= p.side_volume() as i128 + t as i128 + 1
}


#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn seq(v: &[u64]) -> DegreeSequence {
        DegreeSequence::new(v.to_vec()).unwrap()
    }

    fn pair(text: &str) -> PartitionPair {
        text.parse().unwrap()
    }

    #[test]
    fn multigraph_condition() {
        assert!(can_multigraph(&seq(&[4, 2, 2])).unwrap().holds);
        let v = can_multigraph(&seq(&[6, 1, 1])).unwrap();
        assert!(!v.holds);
        assert_eq!(v.failing_index, Some(1));
        assert_eq!(v.slack, Some(-4));
        assert!(can_multigraph(&seq(&[8, 8, 4, 4, 4])).unwrap().holds);
        assert_eq!(can_multigraph(&seq(&[3, 2])), Err(Error::OddVolume(5)));
    }

    #[test]
    fn graphic_examples() {
        assert!(is_graphic(&seq(&[3, 3, 3, 3])).holds);
        let v = is_graphic(&seq(&[4, 4]));
        assert!(!v.holds);
        assert_eq!(v.failing_index, Some(1));
        // Both 3s would need both pendant vertices.
        let v = is_graphic(&seq(&[3, 3, 1, 1]));
        assert!(!v.holds);
        assert_eq!(v.failing_index, Some(2));
        assert!(crate::oracle::find_multigraph(&[3, 3, 1, 1], 1).is_none());
        assert!(is_graphic(&seq(&[3, 3, 2, 2])).holds);
        assert!(is_graphic(&DegreeSequence::empty()).holds);
    }

    #[test]
    fn graphic_odd_volume_has_parity_flag() {
        let v = is_graphic(&seq(&[2, 1]));
        assert!(!v.holds);
        assert!(v.odd_volume);
        assert_eq!(v.failing_index, None);
    }

    #[test]
    fn r_max_examples() {
        let d = seq(&[8, 8, 4, 4, 4]);
        assert!(is_r_max_graphic(&d, 2).unwrap().holds);
        assert!(!is_r_max_graphic(&d, 1).unwrap().holds);
        assert!(is_r_max_graphic(&seq(&[4, 4]), 4).unwrap().holds);
        assert_eq!(is_r_max_graphic(&d, 0), Err(Error::ZeroMultiplicity));
    }

    #[test]
    fn t_tot_examples() {
        assert!(is_t_tot_graphic(&seq(&[4, 4]), 3).unwrap().holds);
        let v = is_t_tot_graphic(&seq(&[4, 4]), 2).unwrap();
        assert_eq!(v.failing_index, Some(1));
        assert!(is_t_tot_graphic(&seq(&[8, 8, 4, 4, 4]), 4).unwrap().holds);
        assert!(!is_t_tot_graphic(&seq(&[8, 8, 4, 4, 4]), 3).unwrap().holds);
        assert!(matches!(
            is_t_tot_graphic(&seq(&[6, 1, 1]), 9),
            Err(Error::NotMultigraphic {
                largest: 6,
                rest: 2
            })
        ));
        assert!(matches!(
            is_t_tot_graphic(&seq(&[3]), 1),
            Err(Error::OddVolume(3))
        ));
    }

    #[test]
    fn bigraphic_examples() {
        assert!(is_bigraphic_pair(&pair("2 2 | 2 2")).holds);
        assert!(is_bigraphic_pair(&pair("2 | 1 1")).holds);
        let v = is_bigraphic_pair(&pair("4 3 | 4 3"));
        assert!(!v.holds);
        // l = 1: 4 <= 1 + 1 fails already.
        assert_eq!(v.failing_index, Some(1));
    }

    #[test]
    fn r_max_bigraphic_examples() {
        assert!(
            is_r_max_bigraphic_pair(&pair("4 3 | 4 3"), 2)
                .unwrap()
                .holds
        );
        assert!(
            !is_r_max_bigraphic_pair(&pair("4 3 | 4 3"), 1)
                .unwrap()
                .holds
        );
        for n in 1..12 {
            let p = PartitionPair::new(seq(&[n]), seq(&vec![1; n as usize])).unwrap();
            assert!(is_r_max_bigraphic_pair(&p, 1).unwrap().holds);
        }
        assert_eq!(
            is_r_max_bigraphic_pair(&pair("1 | 1"), 0),
            Err(Error::ZeroMultiplicity)
        );
    }

    #[test]
    fn t_tot_bigraphic_examples() {
        assert!(is_t_tot_bigraphic_pair(&pair("6 3 3 | 6 3 3"), 3).holds);
        let v = is_t_tot_bigraphic_pair(&pair("6 3 3 | 6 3 3"), 2);
        assert!(!v.holds);
        assert_eq!(v.failing_index, Some(1));
        assert!(is_t_tot_bigraphic_pair(&pair("2 2 | 2 2"), 0).holds);
    }

    #[test]
    fn sufficient_condition_examples() {
        assert!(sufficient_r_max(&pair("2 2 | 2 2"), 1));
        assert!(sufficient_r_max(&pair("4 3 | 4 3"), 2));
        assert!(!sufficient_r_max(&pair("4 3 | 4 3"), 1));
        assert!(
            !is_r_max_bigraphic_pair(&pair("4 3 | 4 3"), 1)
                .unwrap()
                .holds
        );

        assert!(sufficient_t_tot(&pair("3 3 1 | 3 3 1"), 1));
        assert!(!sufficient_t_tot(&pair("3 3 1 | 3 3 1"), 0));
        assert!(!is_t_tot_bigraphic_pair(&pair("3 3 1 | 3 3 1"), 0).holds);
        assert!(sufficient_t_tot(&pair("1 1 | 1 1"), 0));
    }

    fn even_seq() -> impl Strategy<Value = DegreeSequence> {
        prop::collection::vec(1u64..12, 0..14).prop_map(|mut v| {
            if v.iter().sum::<u64>() % 2 == 1 {
                v.push(1);
            }
            DegreeSequence::new(v).unwrap()
        })
    }

    fn balanced_pair() -> impl Strategy<Value = PartitionPair> {
        (
            prop::collection::vec(1u64..10, 1..8),
            prop::collection::vec(1u64..10, 1..8),
        )
            .prop_map(|(mut a, mut b)| {
                let sa: u64 = a.iter().sum();
                let sb: u64 = b.iter().sum();
                if sa < sb {
                    a.extend(std::iter::repeat_n(1, (sb - sa) as usize));
                } else {
                    b.extend(std::iter::repeat_n(1, (sa - sb) as usize));
                }
                PartitionPair::new(
                    DegreeSequence::new(a).unwrap(),
                    DegreeSequence::new(b).unwrap(),
                )
                .unwrap()
            })
    }

    proptest! {
        #[test]
        fn linear_checks_match_naive_reference(d in even_seq(), r in 1u64..5) {
            prop_assert_eq!(is_graphic(&d).holds, naive::graphic_full(&d));
            prop_assert_eq!(is_r_max_graphic(&d, r).unwrap().holds, naive::r_max(&d, r));
        }

        #[test]
        fn linear_pair_checks_match_naive_reference(p in balanced_pair(), r in 1u64..5, t in 0u64..6) {
            prop_assert_eq!(is_r_max_bigraphic_pair(&p, r).unwrap().holds, naive::pair(&p, r, 0));
            prop_assert_eq!(is_t_tot_bigraphic_pair(&p, t).holds, naive::pair(&p, 1, t));
        }

        #[test]
        fn graphic_monotone_in_bounds(d in even_seq(), r in 1u64..6, t in 0u64..8) {
            if is_r_max_graphic(&d, r).unwrap().holds {
                prop_assert!(is_r_max_graphic(&d, r + 1).unwrap().holds);
            }
            if can_multigraph(&d).unwrap().holds && is_t_tot_graphic(&d, t).unwrap().holds {
                prop_assert!(is_t_tot_graphic(&d, t + 1).unwrap().holds);
            }
        }

        #[test]
        fn pair_monotone_in_bounds(p in balanced_pair(), r in 1u64..6, t in 0u64..8) {
            if is_r_max_bigraphic_pair(&p, r).unwrap().holds {
                prop_assert!(is_r_max_bigraphic_pair(&p, r + 1).unwrap().holds);
            }
            if is_t_tot_bigraphic_pair(&p, t).holds {
                prop_assert!(is_t_tot_bigraphic_pair(&p, t + 1).holds);
            }
        }

        #[test]
        fn reduction_identities(d in even_seq(), p in balanced_pair()) {
            prop_assert_eq!(is_r_max_graphic(&d, 1).unwrap().holds, is_graphic(&d).holds);
            prop_assert_eq!(is_t_tot_bigraphic_pair(&p, 0), is_bigraphic_pair(&p));
        }

        #[test]
        fn verdict_invariant(d in even_seq()) {
            let v = is_graphic(&d);
            prop_assert_eq!(v.holds, v.failing_index.is_none());
        }
    }
}
