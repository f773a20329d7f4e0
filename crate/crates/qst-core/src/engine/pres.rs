//! Presentations of finitely generated algebras and the rewriting they drive.
//!
//! A presentation declares an ordered list of generators, a rewrite rule set,
//! and a commutation table for its invertible generators. Rules have a plain
//! word of regular generators on the left and any smaller polynomial on the
//! right; invertible generators never occur in a left hand side. Invertible
//! generators must q-commute with everything: moving one across any other
//! generator only produces a unit-monomial scalar factor, which is what lets
//! a word carry them as a trailing exponent block.

use super::poly::NCPoly;
use super::word::{GenId, Word};
use crate::scalar::Scalar;
use smallvec::SmallVec;

#[derive(Clone, Debug)]
pub struct GenInfo {
    pub name: String,
    pub invertible: bool,
    /// Grading components beyond the implicit one (every regular generator
    /// counts 1 toward word degree).
    pub extra_degree: Vec<i64>,
}

#[derive(Clone, Debug)]
pub struct Rule {
    pub lhs: SmallVec<[GenId; 12]>,
    pub rhs: NCPoly,
    /// Set when truncated completion added this rule.
    pub from_completion: bool,
}

#[derive(Clone, Debug)]
pub struct Presentation {
    pub name: String,
    pub gens: Vec<GenInfo>,
    pub rules: Vec<Rule>,
    // comm[x][g] = c with x·g = c·g·x, defined for invertible x
    comm: Vec<Vec<Option<Scalar>>>,
}

impl Presentation {
    pub fn n_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn is_invertible(&self, g: GenId) -> bool {
        self.gens[g as usize].invertible
    }

    /// Factor `c` in `x·g = c·g·x` for invertible `x`.
    pub fn comm_factor(&self, x: GenId, g: GenId) -> &Scalar {
        if x == g {
            return ONE.get_or_init(Scalar::one);
        }
        self.comm[x as usize][g as usize]
            .as_ref()
            .unwrap_or_else(|| {
                panic!(
                    "{}: no commutation factor for {} across {}",
                    self.name, self.gens[x as usize].name, self.gens[g as usize].name
                )
            })
    }

    pub fn gen_id(&self, name: &str) -> Option<GenId> {
        self.gens
            .iter()
            .position(|g| g.name == name)
            .map(|i| i as GenId)
    }
}

static ONE: std::sync::OnceLock<Scalar> = std::sync::OnceLock::new();

/// Incremental construction with validation at `build`.
pub struct PresentationBuilder {
    name: String,
    gens: Vec<GenInfo>,
    rules: Vec<(Vec<GenId>, NCPoly)>,
    comm: Vec<(GenId, GenId, Scalar)>,
    extra_arity: Option<usize>,
}

impl PresentationBuilder {
    pub fn new(name: &str) -> Self {
        PresentationBuilder {
            name: name.to_string(),
            gens: Vec::new(),
            rules: Vec::new(),
            comm: Vec::new(),
            extra_arity: None,
        }
    }

    fn push_gen(&mut self, name: &str, invertible: bool, extra: &[i64]) -> GenId {
        assert!(
            self.gens.iter().all(|g| g.name != name),
            "duplicate generator {}",
            name
        );
        match self.extra_arity {
            None => self.extra_arity = Some(extra.len()),
            Some(a) => assert_eq!(a, extra.len(), "inconsistent grading arity for {}", name),
        }
        self.gens.push(GenInfo {
            name: name.to_string(),
            invertible,
            extra_degree: extra.to_vec(),
        });
        (self.gens.len() - 1) as GenId
    }

    /// Declare the next regular generator; declaration order is the monomial
    /// order on generators.
    pub fn gen(&mut self, name: &str) -> GenId {
        self.push_gen(name, false, &[])
    }

    pub fn gen_deg(&mut self, name: &str, extra: &[i64]) -> GenId {
        self.push_gen(name, false, extra)
    }

    pub fn inv_gen(&mut self, name: &str) -> GenId {
        self.push_gen(name, true, &[])
    }

    pub fn inv_gen_deg(&mut self, name: &str, extra: &[i64]) -> GenId {
        self.push_gen(name, true, extra)
    }

    /// Record `x·g = c·g·x` for invertible `x`. When `g` is invertible too,
    /// the reverse factor `c^{-1}` is implied.
    pub fn comm(&mut self, x: GenId, g: GenId, c: Scalar) {
        self.comm.push((x, g, c));
    }

    pub fn rule(&mut self, lhs: &[GenId], rhs: NCPoly) {
        self.rules.push((lhs.to_vec(), rhs));
    }

    pub fn build(self) -> Algebra {
        let n = self.gens.len();
        let mut comm: Vec<Vec<Option<Scalar>>> = vec![vec![None; n]; n];
        for (x, g, c) in self.comm {
            assert!(
                self.gens[x as usize].invertible,
                "{}: commutation row for non-invertible {}",
                self.name, self.gens[x as usize].name
            );
            assert!(
                c.unit_monomial().is_some(),
                "{}: commutation factor across {} is not a unit monomial",
                self.name, self.gens[g as usize].name
            );
            assert!(
                comm[x as usize][g as usize].is_none(),
                "{}: duplicate commutation entry",
                self.name
            );
            if self.gens[g as usize].invertible && x != g {
                comm[g as usize][x as usize] = Some(c.inv());
            }
            comm[x as usize][g as usize] = Some(c);
        }
        for x in 0..n {
            if !self.gens[x].invertible {
                continue;
            }
            for g in 0..n {
                assert!(
                    g == x || comm[x][g].is_some(),
                    "{}: missing commutation factor for {} across {}",
                    self.name, self.gens[x].name, self.gens[g].name
                );
            }
        }
        let pres = Presentation {
            name: self.name,
            gens: self.gens,
            rules: Vec::new(),
            comm,
        };
        let mut alg = Algebra { pres, rule_heads: vec![Vec::new(); n] };
        for (lhs, rhs) in self.rules {
            alg.push_rule(&lhs, rhs, false);
        }
        alg
    }
}

/// A presentation compiled for rewriting.
#[derive(Clone, Debug)]
pub struct Algebra {
    pres: Presentation,
    // rule indices by first symbol of the lhs
    rule_heads: Vec<Vec<usize>>,
}

impl Algebra {
    pub fn pres(&self) -> &Presentation {
        &self.pres
    }

    pub fn name(&self) -> &str {
        &self.pres.name
    }

    pub fn n_gens(&self) -> usize {
        self.pres.n_gens()
    }

    pub fn gen_name(&self, g: GenId) -> &str {
        &self.pres.gens[g as usize].name
    }

    pub fn gen_id(&self, name: &str) -> Option<GenId> {
        self.pres.gen_id(name)
    }

    /// Generator id by name; panics when absent.
    pub fn g(&self, name: &str) -> GenId {
        self.gen_id(name)
            .unwrap_or_else(|| panic!("{}: no generator {}", self.pres.name, name))
    }

    pub fn gen_poly(&self, name: &str) -> NCPoly {
        let id = self.g(name);
        if self.pres.is_invertible(id) {
            NCPoly::term(Word::inv_gen(id, 1), Scalar::one())
        } else {
            NCPoly::term(Word::gen(id), Scalar::one())
        }
    }

    /// Append a validated rule. Panics when the rule is ill-formed: the lhs
    /// must be a nonempty word of regular generators not equal to an existing
    /// lhs, and every rhs term must be strictly smaller with componentwise
    /// non-increased extra degree.
    pub fn push_rule(&mut self, lhs: &[GenId], rhs: NCPoly, from_completion: bool) {
        let name = &self.pres.name;
        assert!(!lhs.is_empty(), "{}: empty rule lhs", name);
        for &g in lhs {
            assert!(
                !self.pres.is_invertible(g),
                "{}: invertible generator {} in rule lhs",
                name, self.pres.gens[g as usize].name
            );
        }
        assert!(
            self.pres.rules.iter().all(|r| r.lhs[..] != *lhs),
            "{}: duplicate rule lhs {}",
            name,
            self.word_str(&Word::from_regs(lhs.iter().copied()))
        );
        let lhs_word = Word::from_regs(lhs.iter().copied());
        let lhs_extra = self.word_extra_degree(&lhs_word);
        for (w, _) in rhs.terms() {
            assert!(
                *w < lhs_word,
                "{}: rhs term {} not smaller than lhs {}",
                name, self.word_str(w), self.word_str(&lhs_word)
            );
            let we = self.word_extra_degree(w);
            assert!(
                we.iter().zip(&lhs_extra).all(|(a, b)| a <= b),
                "{}: rhs term {} raises extra degree over lhs {}",
                name, self.word_str(w), self.word_str(&lhs_word)
            );
        }
        self.rule_heads[lhs[0] as usize].push(self.pres.rules.len());
        self.pres.rules.push(Rule {
            lhs: SmallVec::from_slice(lhs),
            rhs,
            from_completion,
        });
    }

    pub fn rules(&self) -> &[Rule] {
        &self.pres.rules
    }

    /// Rules that truncated completion added, rendered readably.
    pub fn completion_added_rules(&self) -> Vec<String> {
        self.pres
            .rules
            .iter()
            .filter(|r| r.from_completion)
            .map(|r| self.rule_str(r))
            .collect()
    }

    pub fn rule_str(&self, r: &Rule) -> String {
        format!(
            "{} -> {}",
            self.word_str(&Word::from_regs(r.lhs.iter().copied())),
            self.poly_str(&r.rhs)
        )
    }

    // ------------------------------------------------------------------
    // degrees

    /// Word degree in the implicit length grading (regular symbols only).
    pub fn word_degree(&self, w: &Word) -> usize {
        w.reg.len()
    }

    pub fn word_extra_degree(&self, w: &Word) -> Vec<i64> {
        let arity = self
            .pres
            .gens
            .first()
            .map(|g| g.extra_degree.len())
            .unwrap_or(0);
        let mut d = vec![0i64; arity];
        for &g in &w.reg {
            for (k, v) in self.pres.gens[g as usize].extra_degree.iter().enumerate() {
                d[k] += v;
            }
        }
        for &(g, e) in &w.inv {
            for (k, v) in self.pres.gens[g as usize].extra_degree.iter().enumerate() {
                d[k] += v * e as i64;
            }
        }
        d
    }

    // ------------------------------------------------------------------
    // multiplication

    fn comm_pow(&self, x: GenId, g: GenId, k: i64) -> Scalar {
        if k == 0 || x == g {
            return Scalar::one();
        }
        self.pres.comm_factor(x, g).pow(k)
    }

    /// Product of two words: the scalar collected from moving `a`'s
    /// invertible block across `b`, and the concatenated word.
    pub fn mul_words(&self, a: &Word, b: &Word) -> (Scalar, Word) {
        let mut factor = Scalar::one();
        for &(x, e) in &a.inv {
            for &g in &b.reg {
                factor = &factor * &self.comm_pow(x, g, e as i64);
            }
        }
        // merge sorted exponent blocks; entries of a.inv pass b.inv entries
        // with smaller id
        for &(x, e) in &a.inv {
            for &(y, f) in &b.inv {
                if y < x {
                    factor = &factor * &self.comm_pow(x, y, e as i64 * f as i64);
                }
            }
        }
        let mut reg = a.reg.clone();
        reg.extend_from_slice(&b.reg);
        let mut inv: SmallVec<[(GenId, i32); 2]> = SmallVec::new();
        let (mut i, mut j) = (0, 0);
        while i < a.inv.len() || j < b.inv.len() {
            let take_a = match (a.inv.get(i), b.inv.get(j)) {
                (Some((x, _)), Some((y, _))) => {
                    if x == y {
                        let e = a.inv[i].1 + b.inv[j].1;
                        if e != 0 {
                            inv.push((*x, e));
                        }
                        i += 1;
                        j += 1;
                        continue;
                    }
                    x < y
                }
                (Some(_), None) => true,
                (None, Some(_)) => false,
                (None, None) => unreachable!(),
            };
            if take_a {
                inv.push(a.inv[i]);
                i += 1;
            } else {
                inv.push(b.inv[j]);
                j += 1;
            }
        }
        (factor, Word { reg, inv })
    }

    /// Product without rewriting.
    pub fn mul_raw(&self, a: &NCPoly, b: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (wa, ca) in a.terms() {
            for (wb, cb) in b.terms() {
                let (f, w) = self.mul_words(wa, wb);
                out.add_term(w, &(ca * cb) * &f);
            }
        }
        out
    }

    /// Normalized product.
    pub fn mul(&self, a: &NCPoly, b: &NCPoly) -> NCPoly {
        self.normalize(&self.mul_raw(a, b))
    }

    /// Normalized product of a sequence of factors.
    pub fn product(&self, factors: &[NCPoly]) -> NCPoly {
        let mut acc = NCPoly::one();
        for f in factors {
            acc = self.mul(&acc, f);
        }
        acc
    }

    // ------------------------------------------------------------------
    // rewriting

    /// Leftmost match position; the longest matching lhs wins there.
    fn find_redex(&self, reg: &[GenId]) -> Option<(usize, usize)> {
        for pos in 0..reg.len() {
            let mut best: Option<usize> = None;
            for &ri in &self.rule_heads[reg[pos] as usize] {
                let lhs = &self.pres.rules[ri].lhs;
                if pos + lhs.len() <= reg.len() && reg[pos..pos + lhs.len()] == lhs[..] {
                    best = match best {
                        Some(b) if self.pres.rules[b].lhs.len() >= lhs.len() => Some(b),
                        _ => Some(ri),
                    };
                }
            }
            if let Some(ri) = best {
                return Some((pos, ri));
            }
        }
        None
    }

    /// Rewrite to normal form. Terminates because every rule strictly
    /// decreases the word order.
    pub fn normalize(&self, p: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        let mut work: Vec<(Word, Scalar)> = p.clone().into_terms().collect();
        while let Some((w, c)) = work.pop() {
            match self.find_redex(&w.reg) {
                None => out.add_term(w, c),
                Some((pos, ri)) => {
                    let rule = &self.pres.rules[ri];
                    let l = rule.lhs.len();
                    let prefix = Word {
                        reg: SmallVec::from_slice(&w.reg[..pos]),
                        inv: SmallVec::new(),
                    };
                    let suffix = Word {
                        reg: SmallVec::from_slice(&w.reg[pos + l..]),
                        inv: w.inv.clone(),
                    };
                    for (rw, rc) in rule.rhs.terms() {
                        let (f1, t1) = self.mul_words(&prefix, rw);
                        let (f2, t2) = self.mul_words(&t1, &suffix);
                        let coeff = &(&c * rc) * &(&f1 * &f2);
                        if !coeff.is_zero() {
                            work.push((t2, coeff));
                        }
                    }
                }
            }
        }
        out
    }

    /// Apply one rule at one position, no further rewriting.
    pub fn apply_rule_at(&self, w: &Word, ri: usize, pos: usize) -> NCPoly {
        let rule = &self.pres.rules[ri];
        let l = rule.lhs.len();
        debug_assert_eq!(&w.reg[pos..pos + l], &rule.lhs[..]);
        let prefix = Word {
            reg: SmallVec::from_slice(&w.reg[..pos]),
            inv: SmallVec::new(),
        };
        let suffix = Word {
            reg: SmallVec::from_slice(&w.reg[pos + l..]),
            inv: w.inv.clone(),
        };
        let mut out = NCPoly::zero();
        for (rw, rc) in rule.rhs.terms() {
            let (f1, t1) = self.mul_words(&prefix, rw);
            let (f2, t2) = self.mul_words(&t1, &suffix);
            out.add_term(t2, rc * &(&f1 * &f2));
        }
        out
    }

    /// Whether two elements are equal in the algebra.
    pub fn eq_mod(&self, a: &NCPoly, b: &NCPoly) -> bool {
        self.normalize(&a.sub(b)).is_zero()
    }

    // ------------------------------------------------------------------
    // display

    pub fn word_str(&self, w: &Word) -> String {
        if w.is_one() {
            return "1".into();
        }
        let mut parts: Vec<String> = w
            .reg
            .iter()
            .map(|&g| self.pres.gens[g as usize].name.clone())
            .collect();
        for &(g, e) in &w.inv {
            let name = &self.pres.gens[g as usize].name;
            parts.push(if e == 1 {
                name.clone()
            } else {
                format!("{}^{}", name, e)
            });
        }
        parts.join("*")
    }

    pub fn poly_str(&self, p: &NCPoly) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        let terms: Vec<_> = p.terms().collect();
        for (k, (w, c)) in terms.iter().rev().enumerate() {
            let (lead, body) = scalar_factor_str(c);
            if k == 0 {
                if lead {
                    out.push('-');
                }
            } else if lead {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            match (body, w.is_one()) {
                (None, true) => out.push('1'),
                (None, false) => out.push_str(&self.word_str(w)),
                (Some(b), true) => out.push_str(&b),
                (Some(b), false) => {
                    out.push_str(&b);
                    out.push('*');
                    out.push_str(&self.word_str(w));
                }
            }
        }
        out
    }

    /// Plain-text listing of the presentation: generators with gradings,
    /// commutation factors for the invertible generators, rewrite rules.
    pub fn dump(&self) -> String {
        use std::fmt::Write as _;
        let mut out = String::new();
        let _ = writeln!(out, "algebra {}", self.pres.name);
        for info in &self.pres.gens {
            let kind = if info.invertible { "invgen" } else { "gen" };
            let _ = write!(out, "{} {}", kind, info.name);
            if info.extra_degree.iter().any(|&d| d != 0) || info.extra_degree.len() > 1 {
                let comps: Vec<String> =
                    info.extra_degree.iter().map(|d| d.to_string()).collect();
                let _ = write!(out, " deg ({})", comps.join(","));
            }
            let _ = writeln!(out);
        }
        for x in 0..self.n_gens() as GenId {
            if !self.pres.is_invertible(x) {
                continue;
            }
            for g in 0..self.n_gens() as GenId {
                if g == x || (self.pres.is_invertible(g) && g < x) {
                    continue;
                }
                let c = self.pres.comm_factor(x, g);
                let _ = writeln!(
                    out,
                    "comm {x}*{g} = ({c})*{g}*{x}",
                    x = self.pres.gens[x as usize].name,
                    g = self.pres.gens[g as usize].name,
                    c = c
                );
            }
        }
        for r in self.rules() {
            let _ = writeln!(out, "rule {}", self.rule_str(r));
        }
        out
    }
}

// (is_negated, coefficient text or None when the magnitude is one)
fn scalar_factor_str(c: &Scalar) -> (bool, Option<String>) {
    if c.is_one() {
        return (false, None);
    }
    let n = -c;
    if n.is_one() {
        return (true, None);
    }
    let shown = format!("{}", c);
    if let Some(stripped) = shown.strip_prefix('-') {
        // safe to re-sign only when the whole print is a single product
        if !stripped.contains(" + ") && !stripped.contains(" - ") {
            let needs_parens = stripped.contains('/') && !stripped.starts_with('(');
            let body = if stripped.contains(' ') || needs_parens {
                format!("({})", stripped)
            } else {
                stripped.to_string()
            };
            return (true, Some(body));
        }
    }
    let body = if shown.contains(' ') || shown.contains('/') {
        format!("({})", shown)
    } else {
        shown
    };
    (false, Some(body))
}

/// Leading-term elimination over the free module on words: rows end up with
/// distinct leading words, each yielding the rule `leading -> -(rest)`.
pub fn orient_relations(rels: &[NCPoly]) -> Vec<(Vec<GenId>, NCPoly)> {
    let mut rows: Vec<NCPoly> = rels.iter().filter(|r| !r.is_zero()).cloned().collect();
    let mut done: Vec<NCPoly> = Vec::new();
    while !rows.is_empty() {
        let idx = (0..rows.len())
            .max_by(|&a, &b| {
                let wa = rows[a].leading().unwrap().0;
                let wb = rows[b].leading().unwrap().0;
                wa.cmp(wb)
            })
            .unwrap();
        let row = rows.swap_remove(idx);
        let (lw, lc) = row.leading().unwrap();
        let (lw, lc) = (lw.clone(), lc.clone());
        let monic = row.scale(&lc.inv());
        for r in rows.iter_mut().chain(done.iter_mut()) {
            let c = r.coeff(&lw);
            if !c.is_zero() {
                *r = r.sub(&monic.scale(&c));
            }
        }
        rows.retain(|r| !r.is_zero());
        done.push(monic);
    }
    done.sort_by(|a, b| a.leading().unwrap().0.cmp(b.leading().unwrap().0));
    done.into_iter()
        .map(|r| {
            let lw = r.leading().unwrap().0.clone();
            assert!(
                lw.inv.is_empty() && !lw.reg.is_empty(),
                "relation leads with a unit or invertible term"
            );
            let mut rhs = r.neg();
            rhs.add_term(lw.clone(), Scalar::one());
            (lw.reg.to_vec(), rhs)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    // two-variable quantum plane with an invertible grouplike t:
    //   y·x = q^{-1}·x·y,  t·x = q·x·t,  t·y = y·t
    fn qplane() -> (Algebra, GenId, GenId, GenId) {
        let mut b = PresentationBuilder::new("qplane");
        let x = b.gen("x");
        let y = b.gen("y");
        let t = b.inv_gen("t");
        b.comm(t, x, Scalar::q_pow(1));
        b.comm(t, y, Scalar::one());
        let rhs = NCPoly::term(Word::from_regs([x, y]), Scalar::q_pow(-1));
        b.rule(&[y, x], rhs);
        (b.build(), x, y, t)
    }

    #[test]
    fn normalization_sorts_variables() {
        let (a, x, y, _) = qplane();
        // y x y x -> q^{-3} x x y y
        let w = NCPoly::term(Word::from_regs([y, x, y, x]), Scalar::one());
        let nf = a.normalize(&w);
        assert_eq!(
            nf,
            NCPoly::term(Word::from_regs([x, x, y, y]), Scalar::q_pow(-3))
        );
    }

    #[test]
    fn invertible_block_collects_factors() {
        let (a, x, _, t) = qplane();
        // (t^2)·x = q^2·x·t^2 and t·t^{-1} = 1
        let t2 = NCPoly::term(Word::inv_gen(t, 2), Scalar::one());
        let xp = NCPoly::term(Word::gen(x), Scalar::one());
        let lhs = a.mul(&t2, &xp);
        let mut expect = Word::gen(x);
        expect.inv.push((t, 2));
        assert_eq!(lhs, NCPoly::term(expect, Scalar::q_pow(2)));

        let tinv = NCPoly::term(Word::inv_gen(t, -1), Scalar::one());
        let tp = NCPoly::term(Word::inv_gen(t, 1), Scalar::one());
        assert_eq!(a.mul(&tp, &tinv), NCPoly::one());
    }

    #[test]
    fn products_associate() {
        let (a, x, y, t) = qplane();
        let p1 = NCPoly::term(Word::from_regs([y, x]), Scalar::one());
        let p2 = NCPoly::term(Word::inv_gen(t, -1), Scalar::int(2));
        let p3 = NCPoly::term(Word::from_regs([y, y]), Scalar::q_pow(1));
        let left = a.mul(&a.mul(&p1, &p2), &p3);
        let right = a.mul(&p1, &a.mul(&p2, &p3));
        assert_eq!(left, right);
        assert!(!left.is_zero());
    }

    #[test]
    fn display_round_trip_shape() {
        let (a, x, y, t) = qplane();
        let mut w = Word::from_regs([x, y]);
        w.inv.push((t, -2));
        let p = NCPoly::term(w, -&Scalar::q_pow(1));
        assert_eq!(a.poly_str(&p), "-q*x*y*t^-2");
    }

    #[test]
    fn orient_relations_triangularizes() {
        let (a, x, y, _) = qplane();
        // y·x - q^{-1}·x·y = 0 written twice in mixed forms, plus a sum
        let yx = NCPoly::term(Word::from_regs([y, x]), Scalar::one());
        let xy = NCPoly::term(Word::from_regs([x, y]), Scalar::one());
        let r1 = yx.sub(&xy.scale(&Scalar::q_pow(-1)));
        let r2 = r1.scale(&Scalar::int(3));
        let yy = NCPoly::term(Word::from_regs([y, y]), Scalar::one());
        let r3 = r1.add(&yy);
        let rules = orient_relations(&[r1, r2, r3]);
        assert_eq!(rules.len(), 2);
        assert_eq!(rules[0].0, vec![y, x]);
        assert_eq!(rules[1].0, vec![y, y]);
        assert!(rules[1].1.is_zero());
        let nf = a.normalize(&rules[0].1);
        assert_eq!(nf, xy.scale(&Scalar::q_pow(-1)));
    }

    #[test]
    #[should_panic(expected = "rhs term")]
    fn rhs_must_shrink() {
        let mut b = PresentationBuilder::new("bad");
        let x = b.gen("x");
        let y = b.gen("y");
        let rhs = NCPoly::term(Word::from_regs([y, x]), Scalar::one());
        b.rule(&[x, y], rhs);
        b.build();
    }
}
