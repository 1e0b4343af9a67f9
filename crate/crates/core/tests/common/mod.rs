#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use polybasis_core::{
    free_group_system, synthesize_lc, LocalConfluence, Object, OrientedStep, RewritingSystem,
    Word, ZigZag,
};
use rand::Rng;

pub fn free_group(m: usize) -> (RewritingSystem, LocalConfluence) {
    let gens: Vec<String> = ["a", "b", "c", "d"][..m].iter().map(|s| s.to_string()).collect();
    let sys = free_group_system(&gens).unwrap();
    let lc = synthesize_lc(&sys).unwrap();
    (sys, lc)
}

pub fn word(sys: &RewritingSystem, s: &str) -> Object {
    sys.word_object(s).unwrap()
}

/// Every word over the alphabet of length at most `max_len`.
pub fn all_words(sys: &RewritingSystem, max_len: usize) -> Vec<Word> {
    let n = sys.alphabet().len() as u32;
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for l in 0..n {
                let mut v = w.0.clone();
                v.push(polybasis_core::Letter(l));
                next.push(Word(v));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Every oriented step available at `x` (forward reductions and backward
/// expansions), optionally restricted to neighbours of bounded length.
pub fn moves(sys: &RewritingSystem, x: &Object, max_len: Option<usize>) -> Vec<(OrientedStep, Object)> {
    let mut out = Vec::new();
    for s in sys.reductions_from(x) {
        out.push((s.forward(), sys.step_target(s, x).unwrap()));
    }
    for s in sys.expansions_into(x) {
        let y = sys.step_source(s, x).unwrap();
        if max_len.is_none_or(|m| y.as_word().is_none_or(|w| w.len() <= m)) {
            out.push((s.backward(), y));
        }
    }
    out
}

/// A random walk of exactly `len` steps from `start` (objects kept at
/// length ≤ `max_len`).
pub fn random_walk<R: Rng>(
    sys: &RewritingSystem,
    rng: &mut R,
    start: Object,
    len: usize,
    max_len: usize,
) -> ZigZag {
    let mut steps = Vec::new();
    let mut cur = start.clone();
    for _ in 0..len {
        let options = moves(sys, &cur, Some(max_len));
        if options.is_empty() {
            break;
        }
        let (s, next) = options[rng.gen_range(0..options.len())].clone();
        steps.push(s);
        cur = next;
    }
    sys.zigzag(start, steps).unwrap()
}

pub fn random_word<R: Rng>(sys: &RewritingSystem, rng: &mut R, max_len: usize) -> Object {
    let n = sys.alphabet().len() as u32;
    let len = rng.gen_range(0..=max_len);
    Object::Word(Word((0..len).map(|_| polybasis_core::Letter(rng.gen_range(0..n))).collect()))
}

/// All closed zig-zags of length 1..=`max_steps` through objects of length
/// ≤ `max_word`, starting at every such word.
pub fn closed_zigzags(sys: &RewritingSystem, max_steps: usize, max_word: usize) -> Vec<ZigZag> {
    let mut out = Vec::new();
    for w in all_words(sys, max_word) {
        let start = Object::Word(w);
        let mut stack: Vec<(Vec<OrientedStep>, Object)> = vec![(Vec::new(), start.clone())];
        while let Some((steps, cur)) = stack.pop() {
            if !steps.is_empty() && cur == start {
                out.push(sys.zigzag(start.clone(), steps.clone()).unwrap());
            }
            if steps.len() == max_steps {
                continue;
            }
            for (s, next) in moves(sys, &cur, Some(max_word)) {
                let mut st = steps.clone();
                st.push(s);
                stack.push((st, next));
            }
        }
    }
    out
}

/// Normal forms reachable by any maximal reduction sequence (full graph
/// search).
pub fn all_normal_forms(sys: &RewritingSystem, x: &Object) -> BTreeSet<Object> {
    let mut seen = BTreeSet::new();
    let mut nfs = BTreeSet::new();
    let mut queue = VecDeque::from([x.clone()]);
    while let Some(cur) = queue.pop_front() {
        if !seen.insert(cur.clone()) {
            continue;
        }
        let next = sys.reductions_from(&cur);
        if next.is_empty() {
            nfs.insert(cur.clone());
        }
        for s in next {
            queue.push_back(sys.step_target(s, &cur).unwrap());
        }
    }
    nfs
}

/// Every maximal reduction sequence from `x`, enumerated explicitly.
pub fn maximal_sequences(sys: &RewritingSystem, x: &Object) -> Vec<ZigZag> {
    let mut out = Vec::new();
    let mut stack = vec![(Vec::<OrientedStep>::new(), x.clone())];
    while let Some((steps, cur)) = stack.pop() {
        let next = sys.reductions_from(&cur);
        if next.is_empty() {
            out.push(sys.zigzag(x.clone(), steps).unwrap());
            continue;
        }
        for s in next {
            let mut st = steps.clone();
            st.push(s.forward());
            stack.push((st, sys.step_target(s, &cur).unwrap()));
        }
    }
    out
}
