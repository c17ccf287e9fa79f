use std::collections::BTreeSet;

use multireal::checkers::{
    can_multigraph, is_bigraphic_pair, is_r_max_graphic, is_t_tot_bigraphic_pair, is_t_tot_graphic,
};
use multireal::construct::{
    gale_ryser_build, realize_max_mult, realize_max_mult_bi, realize_tot_mult, realize_tot_mult_bi,
    Side,
};
use multireal::optimize::{max_mult, max_mult_bi_pair, tot_mult, tot_mult_bi, tot_mult_bi_pair};
use multireal::oracle::{oracle_partitions, oracle_tot_mult, OracleLimits};
use multireal::partitions::{count_balanced_partitions, enumerate_balanced_partitions};
use multireal::{DegreeSequence, PartitionPair, SearchOptions};
use proptest::prelude::*;

fn seq_strategy(max_len: usize, max_deg: u64) -> impl Strategy<Value = DegreeSequence> {
    prop::collection::vec(1..=max_deg, 1..=max_len).prop_map(|v| DegreeSequence::new(v).unwrap())
}

fn pair_strategy() -> impl Strategy<Value = PartitionPair> {
    (seq_strategy(6, 6), seq_strategy(6, 6))
        .prop_filter_map("unequal sides", |(a, b)| PartitionPair::new(a, b).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn tot_mult_realization_is_exact(d in seq_strategy(9, 12)) {
        prop_assume!(d.volume() % 2 == 0 && can_multigraph(&d).unwrap().holds);
        let t = tot_mult(&d).unwrap().value.unwrap();
        let g = realize_tot_mult(&d).unwrap();
        prop_assert_eq!(g.degrees(), d.degrees().to_vec());
        prop_assert_eq!(g.tot_mult(), t);
        prop_assert!(is_t_tot_graphic(&d, t).unwrap().holds);
        if t > 0 {
            prop_assert!(!is_t_tot_graphic(&d, t - 1).unwrap().holds);
        }
    }

    #[test]
    fn max_mult_realization_meets_cap(d in seq_strategy(8, 10)) {
        prop_assume!(d.volume() % 2 == 0 && can_multigraph(&d).unwrap().holds);
        let r = max_mult(&d).unwrap().value.unwrap();
        let g = realize_max_mult(&d, r).unwrap();
        prop_assert_eq!(g.degrees(), d.degrees().to_vec());
        prop_assert!(g.max_mult() <= r);
        for s in r..r + 3 {
            prop_assert!(is_r_max_graphic(&d, s).unwrap().holds);
        }
        if r > 1 {
            prop_assert!(!is_r_max_graphic(&d, r - 1).unwrap().holds);
        }
    }

    #[test]
    fn pair_realizations_match_sides(p in pair_strategy()) {
        let sides = |g: &multireal::BipartiteMultigraph| {
            (g.side_degrees(Side::A), g.side_degrees(Side::B))
        };
        let want = (p.a().degrees().to_vec(), p.b().degrees().to_vec());
        if is_bigraphic_pair(&p).holds {
            let g = gale_ryser_build(&p).unwrap();
            prop_assert_eq!(sides(&g), want.clone());
            prop_assert!(g.max_mult() <= 1);
        }
        let r = max_mult_bi_pair(&p).value.unwrap().max(1);
        let g = realize_max_mult_bi(&p, r).unwrap();
        prop_assert_eq!(sides(&g), want.clone());
        prop_assert!(g.max_mult() <= r);
        let t = tot_mult_bi_pair(&p).value.unwrap();
        let g = realize_tot_mult_bi(&p).unwrap();
        prop_assert_eq!(sides(&g), want);
        prop_assert_eq!(g.tot_mult(), t);
        prop_assert!(is_t_tot_bigraphic_pair(&p, t).holds);
    }

    #[test]
    fn balanced_partitions_are_complete(d in seq_strategy(10, 9)) {
        let listed: Vec<PartitionPair> = enumerate_balanced_partitions(&d).collect();
        let unique: BTreeSet<PartitionPair> = listed.iter().cloned().collect();
        prop_assert_eq!(unique.len(), listed.len());
        prop_assert_eq!(count_balanced_partitions(&d), listed.len() as u128);
        for p in &listed {
            prop_assert_eq!(p.a().volume(), p.b().volume());
            prop_assert_eq!(&p.merged(), &d);
        }
        prop_assert_eq!(unique, oracle_partitions(&d).unwrap());
    }

    #[test]
    fn whole_sequence_optimum_bounds_every_split(d in seq_strategy(8, 8)) {
        prop_assume!(d.volume() % 2 == 0);
        let best = tot_mult_bi(&d, &SearchOptions::default()).unwrap();
        let each: Vec<u64> = enumerate_balanced_partitions(&d)
            .filter_map(|p| tot_mult_bi_pair(&p).value)
            .collect();
        prop_assert_eq!(best.value, each.iter().copied().min());
        if let Some(w) = best.witness {
            prop_assert_eq!(tot_mult_bi_pair(&w).value, best.value);
        }
    }

    #[test]
    fn tot_mult_agrees_with_exhaustive_search(d in seq_strategy(5, 4)) {
        prop_assume!(d.volume() % 2 == 0);
        let fast = tot_mult(&d).unwrap().value;
        let slow = oracle_tot_mult(&d, &OracleLimits::default()).unwrap().value;
        prop_assert_eq!(fast, slow);
    }
}
