use std::collections::{BTreeSet, VecDeque};

use polybasis_core::*;
use proptest::prelude::*;

fn nat_gt(xs: &[u8], ys: &[u8]) -> bool {
    list_ext_gt(|a: &u8, b: &u8| a > b, xs, ys)
}

/// Every list over `0..k` of length at most `max_len`.
fn lists(k: u8, max_len: usize) -> Vec<Vec<u8>> {
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for l in &layer {
            for x in 0..k {
                let mut v: Vec<u8> = l.clone();
                v.push(x);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Lists reachable from `xs` by replacing one element with a list of
/// smaller elements, keeping every intermediate list at length ≤ `cap`.
fn reachable_by_moves(xs: &[u8], cap: usize) -> BTreeSet<Vec<u8>> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::from([xs.to_vec()]);
    let mut first = true;
    while let Some(cur) = queue.pop_front() {
        if !first && !seen.insert(cur.clone()) {
            continue;
        }
        first = false;
        for i in 0..cur.len() {
            let room = cap + 1 - cur.len();
            for repl in lists(cur[i], room) {
                let mut next = cur[..i].to_vec();
                next.extend(repl);
                next.extend_from_slice(&cur[i + 1..]);
                if !seen.contains(&next) {
                    queue.push_back(next);
                }
            }
        }
    }
    seen
}

#[test]
fn list_extension_agrees_with_move_search() {
    let all = lists(4, 3);
    for xs in &all {
        let reach = reachable_by_moves(xs, 3);
        for ys in &all {
            assert_eq!(nat_gt(xs, ys), reach.contains(ys), "{xs:?} > {ys:?}");
        }
    }
}

#[test]
fn list_extension_is_irreflexive_and_asymmetric() {
    let all = lists(4, 3);
    for xs in &all {
        assert!(!nat_gt(xs, xs));
        for ys in &all {
            assert!(!(nat_gt(xs, ys) && nat_gt(ys, xs)), "{xs:?} {ys:?}");
        }
    }
}

#[test]
fn list_extension_examples() {
    assert!(nat_gt(&[3], &[]));
    assert!(nat_gt(&[3], &[2, 2, 2, 1]));
    assert!(nat_gt(&[1, 3], &[1, 2, 0]));
    assert!(!nat_gt(&[1, 3], &[3, 1]));
    assert!(!nat_gt(&[], &[]));
    assert!(!nat_gt(&[2, 2], &[2, 2]));
    assert!(nat_gt(&[2, 2], &[2]));
    // a larger element can never appear
    assert!(!nat_gt(&[2], &[3]));
}

proptest! {
    #[test]
    fn replacing_one_element_by_smaller_ones_decreases(
        xs in proptest::collection::vec(1u8..6, 1..6),
        idx in 0usize..6,
        seed in proptest::collection::vec(0u8..6, 0..4),
    ) {
        let i = idx % xs.len();
        let repl: Vec<u8> = seed.into_iter().map(|y| y % xs[i]).collect();
        let mut ys = xs[..i].to_vec();
        ys.extend(repl);
        ys.extend_from_slice(&xs[i + 1..]);
        prop_assert!(nat_gt(&xs, &ys));
        prop_assert!(!nat_gt(&ys, &xs));
    }

    #[test]
    fn list_extension_is_transitive(
        a in proptest::collection::vec(0u8..4, 0..4),
        b in proptest::collection::vec(0u8..4, 0..4),
        c in proptest::collection::vec(0u8..4, 0..4),
    ) {
        if nat_gt(&a, &b) && nat_gt(&b, &c) {
            prop_assert!(nat_gt(&a, &c));
        }
    }
}

#[test]
fn graph_cycles_are_reported() {
    let sys = RewritingSystem::graph(
        "loop",
        &["a", "b", "c"],
        &[("f", "a", "b"), ("g", "b", "c"), ("h", "c", "a")],
        TerminationOrder::FiniteGraphReachability,
    )
    .unwrap();
    match check_noetherian(&sys) {
        Report::Fail(f) => match f.location {
            Location::Cycle(c) => {
                assert_eq!(c.len(), 4);
                assert_eq!(c.first(), c.last());
            }
            other => panic!("unexpected location {other}"),
        },
        Report::Pass => panic!("cycle accepted"),
    }
}

#[test]
fn free_groups_pass_the_length_order() {
    for m in 1..=3 {
        let gens: Vec<String> = ["a", "b", "c"][..m].iter().map(|s| s.to_string()).collect();
        let sys = free_group_system(&gens).unwrap();
        assert_eq!(check_noetherian(&sys), Report::Pass);
        let x = sys.word_object("aA").unwrap();
        let e = sys.word_object("").unwrap();
        assert!(gt(&sys, &x, &e));
        assert!(!gt(&sys, &e, &x));
    }
}

#[test]
fn length_preserving_rule_fails_the_length_order() {
    let sys = RewritingSystem::srs(
        "swap",
        &["a", "b"],
        &[RuleSpec::new("ab", &["a", "b"], &["b", "a"])],
        TerminationOrder::RuleLengthDecreasing,
    )
    .unwrap();
    match check_noetherian(&sys) {
        Report::Fail(f) => assert_eq!(f.location, Location::Generator("ab".into())),
        Report::Pass => panic!("non-decreasing rule accepted"),
    }
}

#[test]
fn explicit_order_must_contain_every_step() {
    let steps = [("f", "x", "y"), ("g", "y", "z")];
    let partial = RewritingSystem::graph(
        "partial",
        &["x", "y", "z"],
        &steps,
        TerminationOrder::ExplicitFiniteOrder(vec![("x".into(), "y".into())]),
    )
    .unwrap();
    assert!(!check_noetherian(&partial).passed());
    let full = RewritingSystem::graph(
        "full",
        &["x", "y", "z"],
        &steps,
        TerminationOrder::ExplicitFiniteOrder(vec![
            ("x".into(), "y".into()),
            ("y".into(), "z".into()),
        ]),
    )
    .unwrap();
    assert_eq!(check_noetherian(&full), Report::Pass);
    // the closure is taken
    let x = full.node("x").unwrap();
    let z = full.node("z").unwrap();
    assert!(gt(&full, &x, &z));
}
