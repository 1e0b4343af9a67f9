mod common;

use common::*;
use polybasis_core::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Free reduction with a stack, independent of the rewriting machinery.
fn free_reduce(sys: &RewritingSystem, w: &Word) -> Word {
    let inverse = |l: Letter| Letter(l.0 ^ 1);
    let mut out: Vec<Letter> = Vec::new();
    for &l in w.letters() {
        if out.last() == Some(&inverse(l)) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    let _ = sys;
    Word(out)
}

#[test]
fn normalize_examples() {
    let (sys, _) = free_group(1);
    let (nf, seq) = normalize(&sys, &word(&sys, "aAaA")).unwrap();
    assert_eq!(nf, word(&sys, ""));
    assert_eq!(seq.len(), 2);
    let (nf, seq) = normalize(&sys, &word(&sys, "aaA")).unwrap();
    assert_eq!(nf, word(&sys, "a"));
    assert_eq!(seq.len(), 1);
    let (nf, seq) = normalize(&sys, &word(&sys, "aa")).unwrap();
    assert_eq!(nf, word(&sys, "aa"));
    assert!(seq.is_empty());
}

#[test]
fn normalize_matches_free_reduction() {
    let (sys, _) = free_group(2);
    for w in all_words(&sys, 5) {
        let x = Object::Word(w.clone());
        let (nf, seq) = normalize(&sys, &x).unwrap();
        assert_eq!(nf, Object::Word(free_reduce(&sys, &w)));
        assert_eq!(seq.len(), (w.len() - free_reduce(&sys, &w).len()) / 2);
        assert!(seq.is_positive());
        assert_eq!(seq.target(), &nf);
    }
}

#[test]
fn apply_rule_checks_the_redex() {
    let (sys, _) = free_group(1);
    let g = sys.generator_by_name("aA").unwrap();
    let w = sys.word("aaA").unwrap();
    assert_eq!(apply_rule(&sys, &w, g, 1).unwrap(), sys.word("a").unwrap());
    assert!(matches!(apply_rule(&sys, &w, g, 0), Err(Error::NoMatch { .. })));
}

#[test]
fn reduced_words_are_counted_correctly() {
    for m in 1..=2 {
        let (sys, _) = free_group(m);
        let n = 2 * m;
        for k in 1..=5 {
            let count = all_words(&sys, k)
                .into_iter()
                .filter(|w| w.len() == k)
                .filter(|w| sys.reductions_from(&Object::Word(w.clone())).is_empty())
                .count();
            assert_eq!(count, n * (n - 1).pow(k as u32 - 1), "m={m} k={k}");
        }
    }
}

/// Overlapping, non-identical redex pairs covering the whole word, found by
/// scanning every short word.
fn overlap_scan(sys: &RewritingSystem, max_len: usize) -> usize {
    let mut count = 0;
    for w in all_words(sys, max_len) {
        let x = Object::Word(w.clone());
        let redexes = sys.reductions_from(&x);
        for (a, s) in redexes.iter().enumerate() {
            for t in &redexes[a + 1..] {
                let ls = sys.rules()[s.generator.0 as usize].lhs.len();
                let lt = sys.rules()[t.generator.0 as usize].lhs.len();
                let (p, q) = (s.position, t.position);
                let (first, flen, second, slen) = if p <= q { (p, ls, q, lt) } else { (q, lt, p, ls) };
                let overlapping = second < first + flen;
                let covers = first == 0 && (first + flen).max(second + slen) == w.len();
                if overlapping && covers && s != t {
                    count += 1;
                }
            }
        }
    }
    count
}

#[test]
fn critical_peak_counts() {
    for m in 1..=3 {
        let (sys, _) = free_group(m);
        let peaks = critical_peaks(&sys, None);
        let of = |k: PeakKind| peaks.iter().filter(|p| p.kind == k).count();
        assert_eq!(of(PeakKind::PartialOverlap), 2 * m);
        assert_eq!(of(PeakKind::FullOverlap), 2 * m);
        assert_eq!(of(PeakKind::Peiffer), 4 * m * m);
        assert_eq!(overlap_scan(&sys, 3), 2 * m);
        for p in &peaks {
            let z = p.zigzag(&sys).unwrap();
            assert_eq!(z.len(), 2);
            assert!(!z.steps()[0].is_forward() && z.steps()[1].is_forward());
        }
    }
}

#[test]
fn newman_unique_normal_forms() {
    for m in 1..=2 {
        let (sys, _) = free_group(m);
        let max = if m == 1 { 7 } else { 5 };
        for w in all_words(&sys, max) {
            let nfs = all_normal_forms(&sys, &Object::Word(w));
            assert_eq!(nfs.len(), 1);
        }
    }
}

fn random_system(rng: &mut ChaCha8Rng, id: usize) -> RewritingSystem {
    let letters = ["a", "b"];
    let n = rng.gen_range(1..=3);
    let rules: Vec<RuleSpec> = (0..n)
        .map(|k| {
            let ll = rng.gen_range(1..=3);
            let rl = rng.gen_range(0..ll);
            let pick = |rng: &mut ChaCha8Rng, len: usize| -> Vec<String> {
                (0..len).map(|_| letters[rng.gen_range(0..2)].to_string()).collect()
            };
            let lhs = pick(rng, ll);
            let rhs = pick(rng, rl);
            RuleSpec {
                name: format!("r{k}"),
                lhs,
                rhs,
            }
        })
        .collect();
    RewritingSystem::srs(
        &format!("random{id}"),
        &letters,
        &rules,
        TerminationOrder::RuleLengthDecreasing,
    )
    .unwrap()
}

#[test]
fn synthesis_agrees_with_brute_force_joinability() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut confluent, mut not) = (0, 0);
    for id in 0..150 {
        let sys = random_system(&mut rng, id);
        let unique = all_words(&sys, 5)
            .into_iter()
            .all(|w| all_normal_forms(&sys, &Object::Word(w)).len() == 1);
        match synthesize_lc(&sys) {
            Ok(lc) => {
                confluent += 1;
                assert!(unique, "{:?}", sys.rules());
                // every local peak on short words resolves into a checked valley
                for w in all_words(&sys, 4) {
                    let x = Object::Word(w);
                    for (i, s) in sys.reductions_from(&x).iter().enumerate() {
                        for t in &sys.reductions_from(&x)[i..] {
                            let y = sys.step_target(*s, &x).unwrap();
                            let peak = sys.zigzag(y, vec![s.backward(), t.forward()]).unwrap();
                            let r = lc.resolve(&sys, &peak).unwrap();
                            assert!(r.is_valley());
                            assert_eq!(r.start(), peak.start());
                            assert_eq!(r.target(), peak.target());
                        }
                    }
                }
                // and the engine fills random loops
                for _ in 0..5 {
                    let start = random_word(&sys, &mut rng, 4);
                    let u = random_walk(&sys, &mut rng, start, 3, 6);
                    let l = u.compose(&u.inverse()).unwrap();
                    let f = contract_closed(&sys, &lc, &l).unwrap();
                    assert_eq!(check_rewrite_zigzag(&sys, &lc, &f), Report::Pass);
                }
            }
            Err(SynthesisError::NotConfluent(fail)) => {
                not += 1;
                assert!(!unique, "{:?}", sys.rules());
                assert_ne!(fail.left_normal_form, fail.right_normal_form);
                let apex = &fail.peak.objects()[1];
                assert!(all_normal_forms(&sys, apex).len() > 1);
            }
            Err(SynthesisError::Engine(e)) => panic!("{e}"),
        }
    }
    assert!(confluent > 10 && not > 10, "{confluent} / {not}");
}

#[test]
fn non_confluent_graph_is_reported() {
    let sys = RewritingSystem::graph(
        "fork",
        &["a", "b", "c"],
        &[("f", "a", "b"), ("g", "a", "c")],
        TerminationOrder::FiniteGraphReachability,
    )
    .unwrap();
    match synthesize_lc(&sys) {
        Err(SynthesisError::NotConfluent(f)) => {
            assert_eq!(f.left_normal_form, sys.node("b").unwrap());
            assert_eq!(f.right_normal_form, sys.node("c").unwrap());
            assert!(f.description.contains("b ⇜ a ⇝ c [f, g]"), "{}", f.description);
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn free_group_naming() {
    let sys = free_group_system(&["a", "b"]).unwrap();
    assert_eq!(sys.name(), "free-group(a,b)");
    assert_eq!(sys.alphabet(), &["a", "A", "b", "B"]);
    let names: Vec<&str> = sys.rules().iter().map(|r| r.name.as_str()).collect();
    assert_eq!(names, ["aA", "Aa", "bB", "Bb"]);
    assert_eq!(inverse_name("x1"), "x1'");
}

fn inverse_name(g: &str) -> String {
    polybasis_core::srs::inverse_letter(g)
}
