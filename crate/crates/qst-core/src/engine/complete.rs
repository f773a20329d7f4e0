//! Local confluence checking and degree-truncated overlap completion.
//!
//! An ambiguity is a word that two rule applications hit in overlapping
//! positions, either a proper overlap (a suffix of one lhs is a prefix of the
//! other) or an inclusion (one lhs inside the other). Rewriting both routes
//! to normal form and subtracting decides whether the pair resolves; a
//! nonzero difference is a confluence failure whose leading term can be
//! oriented into a new rule.

use super::poly::NCPoly;
use super::pres::Algebra;
use super::word::{GenId, Word};
use crate::parallel::par_map;

/// A superposition of two rules: `rule_a` matches at position 0 of `word`,
/// `rule_b` at `pos_b`.
#[derive(Clone, Debug)]
pub struct Ambiguity {
    pub rule_a: usize,
    pub rule_b: usize,
    pub word: Vec<GenId>,
    pub pos_b: usize,
}

#[derive(Clone, Debug)]
pub struct ConfluenceFailure {
    pub ambiguity: Ambiguity,
    /// Normal form of route A minus route B; nonzero by construction.
    pub diff: NCPoly,
}

/// All ambiguities among the current rules with word degree at most
/// `max_deg`, in a deterministic order.
pub fn ambiguities(alg: &Algebra, max_deg: usize) -> Vec<Ambiguity> {
    let rules = alg.rules();
    let mut out = Vec::new();
    for (i, ra) in rules.iter().enumerate() {
        for (j, rb) in rules.iter().enumerate() {
            let (la, lb) = (ra.lhs.len(), rb.lhs.len());
            // proper overlaps: nonzero suffix of a = prefix of b, shorter
            // than both
            for k in 1..la.min(lb) {
                if la + lb - k > max_deg {
                    continue;
                }
                if ra.lhs[la - k..] == rb.lhs[..k] {
                    let mut word = ra.lhs.to_vec();
                    word.extend_from_slice(&rb.lhs[k..]);
                    out.push(Ambiguity { rule_a: i, rule_b: j, word, pos_b: la - k });
                }
            }
            // inclusions: b strictly inside a
            if lb < la && la <= max_deg {
                for pos in 0..=la - lb {
                    if ra.lhs[pos..pos + lb] == rb.lhs[..] {
                        out.push(Ambiguity {
                            rule_a: i,
                            rule_b: j,
                            word: ra.lhs.to_vec(),
                            pos_b: pos,
                        });
                    }
                }
            }
        }
    }
    out.sort_by(|a, b| {
        (a.word.len(), &a.word, a.rule_a, a.rule_b, a.pos_b).cmp(&(
            b.word.len(),
            &b.word,
            b.rule_a,
            b.rule_b,
            b.pos_b,
        ))
    });
    out
}

fn resolve(alg: &Algebra, amb: &Ambiguity) -> NCPoly {
    let w = Word::from_regs(amb.word.iter().copied());
    let via_a = alg.apply_rule_at(&w, amb.rule_a, 0);
    let via_b = alg.apply_rule_at(&w, amb.rule_b, amb.pos_b);
    alg.normalize(&via_a).sub(&alg.normalize(&via_b))
}

/// Check every ambiguity up to `max_deg`; empty output is local confluence
/// on that degree range.
pub fn check_local_confluence(alg: &Algebra, max_deg: usize) -> Vec<ConfluenceFailure> {
    let ambs = ambiguities(alg, max_deg);
    let diffs = par_map(&ambs, |amb| resolve(alg, amb));
    ambs.into_iter()
        .zip(diffs)
        .filter(|(_, d)| !d.is_zero())
        .map(|(ambiguity, diff)| ConfluenceFailure { ambiguity, diff })
        .collect()
}

/// Orient unresolved ambiguities into new rules until everything up to
/// `max_deg` resolves. Returns the display form of the added rules.
///
/// Panics if a candidate cannot be oriented (leading term carries an
/// invertible block) or the loop fails to stabilize within generous caps,
/// both of which mean the presentation is not suitable for this strategy.
pub fn complete(alg: &mut Algebra, max_deg: usize) -> Vec<String> {
    let mut added = Vec::new();
    for _round in 0..64 {
        let failures = check_local_confluence(alg, max_deg);
        if failures.is_empty() {
            return added;
        }
        let mut progressed = false;
        for f in &failures {
            // earlier additions in this round may already resolve it
            let diff = alg.normalize(&f.diff);
            if diff.is_zero() {
                continue;
            }
            let (lw, lc) = diff.leading().unwrap();
            let (lw, lc) = (lw.clone(), lc.clone());
            assert!(
                lw.inv.is_empty(),
                "{}: cannot orient relation with invertible leading term {}",
                alg.name(),
                alg.poly_str(&diff)
            );
            let monic = diff.scale(&lc.inv());
            let mut rhs = monic.neg();
            rhs.add_term(lw.clone(), crate::scalar::Scalar::one());
            let lhs: Vec<GenId> = lw.reg.to_vec();
            alg.push_rule(&lhs, rhs, true);
            added.push(alg.rule_str(alg.rules().last().unwrap()));
            progressed = true;
            assert!(alg.rules().len() < 512, "{}: completion exploded", alg.name());
        }
        if !progressed {
            return added;
        }
    }
    panic!("{}: completion did not stabilize", alg.name());
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::pres::PresentationBuilder;
    use crate::scalar::Scalar;

    // three q-commuting variables: confluent as given (the classic diamond)
    fn q3() -> Algebra {
        let mut b = PresentationBuilder::new("q3");
        let x = b.gen("x");
        let y = b.gen("y");
        let z = b.gen("z");
        for (hi, lo) in [(y, x), (z, x), (z, y)] {
            let rhs = NCPoly::term(Word::from_regs([lo, hi]), Scalar::q_pow(-1));
            b.rule(&[hi, lo], rhs);
        }
        b.build()
    }

    #[test]
    fn commuting_swaps_are_confluent() {
        let alg = q3();
        assert!(check_local_confluence(&alg, 6).is_empty());
        assert!(!ambiguities(&alg, 6).is_empty());
    }

    #[test]
    fn ambiguity_enumeration_is_bounded_and_sorted() {
        let alg = q3();
        let a4 = ambiguities(&alg, 3);
        for amb in &a4 {
            assert!(amb.word.len() <= 3);
        }
        let mut sorted = a4.clone();
        sorted.sort_by_key(|a| (a.word.len(), a.word.clone(), a.rule_a, a.rule_b, a.pos_b));
        assert_eq!(
            a4.iter().map(|a| a.word.clone()).collect::<Vec<_>>(),
            sorted.iter().map(|a| a.word.clone()).collect::<Vec<_>>()
        );
    }

    #[test]
    fn completion_repairs_broken_pair() {
        // b·a -> b and b·b·a -> a: the inclusion ambiguity b(ba) vs (bba)
        // does not resolve; completion must fix it and then stay stable
        let mut b = PresentationBuilder::new("toy");
        let a = b.gen("a");
        let bb = b.gen("b");
        b.rule(&[bb, a], NCPoly::term(Word::gen(bb), Scalar::one()));
        b.rule(&[bb, bb, a], NCPoly::term(Word::gen(a), Scalar::one()));
        let mut alg = b.build();
        assert!(!check_local_confluence(&alg, 6).is_empty());
        let added = complete(&mut alg, 6);
        assert!(!added.is_empty());
        assert!(check_local_confluence(&alg, 6).is_empty());
        // both routes now agree on the witness word
        let w = NCPoly::term(Word::from_regs([bb, bb, a]), Scalar::one());
        let nf = alg.normalize(&w);
        let direct = alg.normalize(&NCPoly::term(Word::from_regs([bb, bb]), Scalar::one()));
        assert_eq!(nf, direct);
    }
}
