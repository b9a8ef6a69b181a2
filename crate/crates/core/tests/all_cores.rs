mod common;

use std::collections::BTreeSet;

use common::Family;
use unrealcore::minimize::{is_core, Criterion, Memoized};
use unrealcore::punch::{brute_force_all_cores, core_intersection, ddmin_core, punch, td_all_cores, PunchOptions};
use unrealcore::ElementSet;

const CRITERIA: u64 = 200;

fn brute(f: &Family) -> BTreeSet<ElementSet> {
    brute_force_all_cores(&f.universe, &mut f.criterion()).unwrap().into_iter().collect()
}

fn intersection(cores: &BTreeSet<ElementSet>, universe: &ElementSet) -> ElementSet {
    cores.iter().fold(universe.clone(), |a, c| a.intersection(c))
}

#[test]
fn brute_force_recovers_the_generating_family() {
    for seed in 0..CRITERIA {
        let f = Family::random(seed);
        assert_eq!(brute(&f), f.cores(), "seed {seed}");
    }
}

#[test]
fn punch_td_and_brute_force_agree() {
    for seed in 0..CRITERIA {
        let f = Family::random(seed);
        let expected = brute(&f);
        let mut c = Memoized::new(f.criterion());
        let p = punch(&f.universe, &mut c, ddmin_core, PunchOptions::default()).unwrap();
        assert!(p.complete);
        assert_eq!(p.core_set(), expected, "seed {seed}");
        assert_eq!(p.cores.len(), expected.len(), "seed {seed}: duplicates");
        let t = td_all_cores(&f.universe, &mut Memoized::new(f.criterion()), None).unwrap();
        assert_eq!(t.core_set(), expected, "seed {seed}");
        for core in &p.cores {
            assert!(is_core(core, &mut f.criterion()).unwrap());
        }
    }
}

#[test]
fn top_level_split_is_the_intersection_of_all_cores() {
    for seed in 0..CRITERIA {
        let f = Family::random(seed);
        let expected = intersection(&brute(&f), &f.universe);
        let p = punch(&f.universe, &mut f.criterion(), ddmin_core, PunchOptions::default()).unwrap();
        assert_eq!(p.intersection, Some(expected.clone()), "seed {seed}");
        assert_eq!(core_intersection(&f.universe, &mut f.criterion(), ddmin_core).unwrap(), expected);
    }
}

#[test]
fn core_intersection_costs_core_size_checks() {
    for seed in 0..CRITERIA {
        let f = Family::random(seed);
        let mut probe = Memoized::without_cache(f.criterion());
        let c0 = ddmin_core(&mut probe, &f.universe, &ElementSet::new()).unwrap();
        let core_cost = probe.stats().actual_checks;
        let mut counted = Memoized::without_cache(f.criterion());
        core_intersection(&f.universe, &mut counted, ddmin_core).unwrap();
        assert_eq!(counted.stats().actual_checks, core_cost + c0.len() as u64);
    }
}

#[test]
fn recursion_preconditions_hold_at_every_node() {
    for seed in 0..CRITERIA {
        let f = Family::random(seed);
        let opts = PunchOptions { trace: true, ..Default::default() };
        let p = punch(&f.universe, &mut f.criterion(), ddmin_core, opts).unwrap();
        for node in &p.trace {
            assert!(f.holds(&node.universe), "seed {seed}: criterion fails at {}", node.universe);
            for core in p.cores.iter().filter(|c| c.is_subset(&node.universe)) {
                assert!(node.known.is_subset(core), "seed {seed}: {} not inside {core}", node.known);
            }
        }
    }
}

#[test]
fn memoization_and_core_reuse_are_transparent() {
    for seed in 0..CRITERIA {
        let f = Family::random(seed);
        let with = punch(&f.universe, &mut Memoized::new(f.criterion()), ddmin_core, PunchOptions::default()).unwrap();
        let opts = PunchOptions { reuse_cores: false, ..Default::default() };
        let without = punch(&f.universe, &mut f.criterion(), ddmin_core, opts).unwrap();
        assert_eq!(with.cores, without.cores, "seed {seed}");
        assert_eq!(with.intersection, without.intersection);
        let t1 = td_all_cores(&f.universe, &mut Memoized::new(f.criterion()), None).unwrap();
        let t2 = td_all_cores(&f.universe, &mut f.criterion(), None).unwrap();
        assert_eq!(t1.cores, t2.cores);
    }
}

#[test]
fn core_reuse_bounds_core_computations_by_the_number_of_cores() {
    for seed in 0..CRITERIA {
        let f = Family::random(seed);
        let p = punch(&f.universe, &mut Memoized::new(f.criterion()), ddmin_core, PunchOptions::default()).unwrap();
        assert_eq!(p.stats.core_computations, p.cores.len() as u64, "seed {seed}");
    }
}
