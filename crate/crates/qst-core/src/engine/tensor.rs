//! Tensor square of a presented algebra.
//!
//! Two relabeled copies of the base presentation plus exact cross
//! commutation: `(1⊗b)(a⊗1) = (a⊗1)(1⊗b)`. Copy-1 generators come first in
//! the order, so cross swaps orient copy-2 symbols to the right.

use super::poly::NCPoly;
use super::pres::{Algebra, PresentationBuilder};
use super::word::{GenId, Word};
use crate::scalar::Scalar;

pub struct TensorSquare {
    pub alg: Algebra,
    n: usize,
}

impl TensorSquare {
    pub fn new(base: &Algebra) -> Self {
        let n = base.n_gens();
        let mut b = PresentationBuilder::new(&format!("{}^{{2}}", base.name()));
        for copy in 1..=2u8 {
            for g in 0..n {
                let info = &base.pres().gens[g];
                let name = format!("{}@{}", info.name, copy);
                if info.invertible {
                    b.inv_gen_deg(&name, &info.extra_degree);
                } else {
                    b.gen_deg(&name, &info.extra_degree);
                }
            }
        }
        // commutation rows, copied within each copy and trivial across
        for g in 0..n {
            if !base.pres().gens[g].invertible {
                continue;
            }
            let offs = [0usize, n];
            for &ox in &offs {
                let x = (g + ox) as GenId;
                for h in 0..n {
                    for &oh in &offs {
                        let other = (h + oh) as GenId;
                        if other == x {
                            continue;
                        }
                        if ox == oh {
                            b.comm(x, other, base.pres().comm_factor(g as GenId, h as GenId).clone());
                        } else if !base.pres().gens[h].invertible || ox < oh {
                            // inv-inv cross pairs imply their own reverse
                            b.comm(x, other, Scalar::one());
                        }
                    }
                }
            }
        }
        // copied rules
        for offset in [0usize, n] {
            for r in base.rules() {
                let lhs: Vec<GenId> = r.lhs.iter().map(|&g| g + offset as GenId).collect();
                let rhs: NCPoly = r
                    .rhs
                    .terms()
                    .map(|(w, c)| (relabel_word(w, offset), c.clone()))
                    .collect();
                b.rule(&lhs, rhs);
            }
        }
        // cross swaps for regular pairs: copy-2 symbol moves right
        for g2 in 0..n {
            if base.pres().gens[g2].invertible {
                continue;
            }
            for g1 in 0..n {
                if base.pres().gens[g1].invertible {
                    continue;
                }
                let hi = (g2 + n) as GenId;
                let lo = g1 as GenId;
                b.rule(&[hi, lo], NCPoly::term(Word::from_regs([lo, hi]), Scalar::one()));
            }
        }
        TensorSquare { alg: b.build(), n }
    }

    /// `a ⊗ 1`.
    pub fn incl1(&self, p: &NCPoly) -> NCPoly {
        p.terms().map(|(w, c)| (relabel_word(w, 0), c.clone())).collect()
    }

    /// `1 ⊗ a`.
    pub fn incl2(&self, p: &NCPoly) -> NCPoly {
        p.terms()
            .map(|(w, c)| (relabel_word(w, self.n), c.clone()))
            .collect()
    }

    /// `a ⊗ b`, normalized.
    pub fn pair(&self, a: &NCPoly, b: &NCPoly) -> NCPoly {
        self.alg.mul(&self.incl1(a), &self.incl2(b))
    }
}

fn relabel_word(w: &Word, offset: usize) -> Word {
    Word {
        reg: w.reg.iter().map(|&g| g + offset as GenId).collect(),
        inv: w.inv.iter().map(|&(g, e)| (g + offset as GenId, e)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::complete::check_local_confluence;
    use crate::engine::morphism::Morphism;
    use crate::engine::pres::PresentationBuilder;

    fn qplane() -> Algebra {
        let mut b = PresentationBuilder::new("qplane");
        let x = b.gen("x");
        let y = b.gen("y");
        b.rule(&[y, x], NCPoly::term(Word::from_regs([x, y]), Scalar::q_pow(-1)));
        b.build()
    }

    #[test]
    fn square_is_confluent_and_counts_match() {
        let base = qplane();
        let t = TensorSquare::new(&base);
        assert!(check_local_confluence(&t.alg, 5).is_empty());
        // dimensions multiply: (d+1 choose degree split) convolution
        let dims = crate::engine::hilbert::count_normal_words(&t.alg, 3);
        // degree d of the square: sum_{k} dim_k * dim_{d-k} with dim_k = k+1
        assert_eq!(dims[2], (1u32 * 3 + 2 * 2 + 3 * 1).into());
        assert_eq!(dims[3], (1u32 * 4 + 2 * 3 + 3 * 2 + 4 * 1).into());
    }

    #[test]
    fn factors_commute() {
        let base = qplane();
        let t = TensorSquare::new(&base);
        let x1 = t.incl1(&base.gen_poly("x"));
        let y2 = t.incl2(&base.gen_poly("y"));
        assert_eq!(t.alg.mul(&x1, &y2), t.alg.mul(&y2, &x1));
        assert_eq!(t.pair(&base.gen_poly("x"), &base.gen_poly("y")), t.alg.mul(&y2, &x1));
    }

    #[test]
    fn coproduct_like_map_verifies() {
        let base = qplane();
        let t = TensorSquare::new(&base);
        // x ↦ x⊗x, y ↦ y⊗1 respects y·x = q^{-1}·x·y; x ↦ x⊗x, y ↦ y⊗y
        // does not (the two legs each produce a factor q^{-1})
        let dx = t.pair(&base.gen_poly("x"), &base.gen_poly("x"));
        let dy1 = t.incl1(&base.gen_poly("y"));
        let good = Morphism::by_names(&base, &t.alg, &[("x", dx.clone()), ("y", dy1)], false, false);
        let rep = good.verify();
        assert!(rep.ok(), "{:?}", rep.failures);

        let dy = t.pair(&base.gen_poly("y"), &base.gen_poly("y"));
        let bad = Morphism::by_names(&base, &t.alg, &[("x", dx), ("y", dy)], false, false);
        assert!(!bad.verify().ok());
    }
}
