//! Dimension counting: normal words by degree.
//!
//! With a confluent degree-compatible rule set the normal words (those
//! avoiding every rule lhs as a subword) form a basis, so graded dimensions
//! are counts of walks in the Aho–Corasick automaton of forbidden subwords.

use super::pres::Algebra;
use super::word::GenId;
use num_bigint::BigUint;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

const DEAD: usize = usize::MAX;

struct Automaton {
    // dense transitions [state * n_symbols + symbol]; DEAD swallows any word
    // containing a forbidden subword
    next: Vec<usize>,
    n_states: usize,
    n_symbols: usize,
}

fn build_automaton(patterns: &[&[GenId]], n_symbols: usize) -> Automaton {
    struct Node {
        children: BTreeMap<GenId, usize>,
        fail: usize,
        terminal: bool,
    }
    let mut nodes = vec![Node { children: BTreeMap::new(), fail: 0, terminal: false }];
    for p in patterns {
        let mut cur = 0;
        for &a in *p {
            cur = match nodes[cur].children.get(&a) {
                Some(&c) => c,
                None => {
                    nodes.push(Node { children: BTreeMap::new(), fail: 0, terminal: false });
                    let c = nodes.len() - 1;
                    nodes[cur].children.insert(a, c);
                    c
                }
            };
        }
        nodes[cur].terminal = true;
    }
    // breadth-first failure links; a state whose fail is terminal is terminal
    let mut queue: Vec<usize> = nodes[0].children.values().copied().collect();
    let mut head = 0;
    while head < queue.len() {
        let v = queue[head];
        head += 1;
        let children: Vec<(GenId, usize)> =
            nodes[v].children.iter().map(|(&a, &c)| (a, c)).collect();
        for (a, c) in children {
            let mut f = nodes[v].fail;
            let fail = loop {
                if let Some(&t) = nodes[f].children.get(&a) {
                    if t != c {
                        break t;
                    }
                }
                if f == 0 {
                    break 0;
                }
                f = nodes[f].fail;
            };
            nodes[c].fail = fail;
            nodes[c].terminal |= nodes[fail].terminal;
            queue.push(c);
        }
    }
    // dense goto with failure chasing
    let n_states = nodes.len();
    let mut next = vec![0usize; n_states * n_symbols];
    for s in 0..n_states {
        for a in 0..n_symbols {
            let mut f = s;
            let t = loop {
                if let Some(&t) = nodes[f].children.get(&(a as GenId)) {
                    break t;
                }
                if f == 0 {
                    break 0;
                }
                f = nodes[f].fail;
            };
            next[s * n_symbols + a] = if nodes[t].terminal { DEAD } else { t };
        }
    }
    Automaton { next, n_states, n_symbols }
}

fn automaton_for(alg: &Algebra) -> Automaton {
    assert!(
        alg.pres().gens.iter().all(|g| !g.invertible),
        "{}: dimension counting needs a presentation without invertible generators",
        alg.name()
    );
    let patterns: Vec<&[GenId]> = alg.rules().iter().map(|r| &r.lhs[..]).collect();
    build_automaton(&patterns, alg.n_gens())
}

/// Number of normal words of each degree `0..=max_deg`.
pub fn count_normal_words(alg: &Algebra, max_deg: usize) -> Vec<BigUint> {
    let ac = automaton_for(alg);
    let mut counts = vec![BigUint::one()];
    let mut cur = vec![BigUint::zero(); ac.n_states];
    cur[0] = BigUint::one();
    for _ in 1..=max_deg {
        let mut nxt = vec![BigUint::zero(); ac.n_states];
        for (s, c) in cur.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for a in 0..ac.n_symbols {
                let t = ac.next[s * ac.n_symbols + a];
                if t != DEAD {
                    nxt[t] += c;
                }
            }
        }
        counts.push(nxt.iter().sum());
        cur = nxt;
    }
    counts
}

/// Normal-word counts split by the extra grading components, one map per
/// total degree.
pub fn count_normal_words_graded(
    alg: &Algebra,
    max_deg: usize,
) -> Vec<BTreeMap<Vec<i64>, BigUint>> {
    let ac = automaton_for(alg);
    let arity = alg
        .pres()
        .gens
        .first()
        .map(|g| g.extra_degree.len())
        .unwrap_or(0);
    let zero_deg = vec![0i64; arity];
    let mut out = Vec::with_capacity(max_deg + 1);
    out.push(BTreeMap::from([(zero_deg.clone(), BigUint::one())]));
    let mut cur: BTreeMap<(usize, Vec<i64>), BigUint> =
        BTreeMap::from([((0, zero_deg), BigUint::one())]);
    for _ in 1..=max_deg {
        let mut nxt: BTreeMap<(usize, Vec<i64>), BigUint> = BTreeMap::new();
        for ((s, d), c) in &cur {
            for a in 0..ac.n_symbols {
                let t = ac.next[s * ac.n_symbols + a];
                if t == DEAD {
                    continue;
                }
                let mut nd = d.clone();
                for (k, v) in alg.pres().gens[a].extra_degree.iter().enumerate() {
                    nd[k] += v;
                }
                *nxt.entry((t, nd)).or_default() += c;
            }
        }
        let mut by_deg: BTreeMap<Vec<i64>, BigUint> = BTreeMap::new();
        for ((_, d), c) in &nxt {
            *by_deg.entry(d.clone()).or_default() += c;
        }
        out.push(by_deg);
        cur = nxt;
    }
    out
}
