//! Differential graded extensions of the coordinate algebras.
//!
//! Each calculus is an ordinary [`Algebra`] whose generators carry a form
//! degree: coordinates in degree 0 and one differential partner each in
//! degree 1. The exchange rules between coordinates and differentials come
//! from the same braid matrices as the coordinate relations, oriented into
//! rewrite rules, so normal forms stay decidable and every check below is a
//! normalization to zero.
//!
//! Degree 0 and 1 carry the exterior differential; degree 2 carries the
//! Hodge star built from the projector difference on pair indices, with its
//! self-dual and anti-self-dual split. Degrees 3 and up exist in the
//! rewrite system but no operation targets them.

use std::fmt;
use std::ops::Neg;

use crate::algebras::{
    first_patch_rules, inv_mono, mt, quantum_matrix_rules, second_patch_rules, StructureReport,
    COMPLETION_DEGREE,
};
use crate::engine::{
    complete, orient_relations, Algebra, GenId, Morphism, NCPoly, PresentationBuilder, Word,
};
use crate::linalg::Mat;
use crate::rmatrix::{
    build_projectors, build_rmatrices, embed_pair_on_legs, expand_matrix_relation, pair_index,
    pair_of_index, scalar_times_poly, PolyMat,
};
use crate::scalar::{gr_int, PMode, Scalar};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// ----------------------------------------------------------------------
// patches and errors

/// Which coordinate algebra a calculus lives over.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum FormPatch {
    /// quantum matrix algebra with the invertible grading unit adjoined
    GL,
    /// first big cell
    MI,
    /// second big cell
    MJ,
}

pub const ALL_PATCHES: [FormPatch; 3] = [FormPatch::GL, FormPatch::MI, FormPatch::MJ];

impl FormPatch {
    pub fn name(self) -> &'static str {
        match self {
            FormPatch::GL => "gl",
            FormPatch::MI => "mi",
            FormPatch::MJ => "mj",
        }
    }

    fn base_names(self) -> [&'static str; 4] {
        match self {
            FormPatch::GL => ["g11", "g12", "g21", "g22"],
            FormPatch::MI => ["x11", "x12", "x21", "x22"],
            FormPatch::MJ => ["y11", "y12", "y21", "y22"],
        }
    }

    fn dbase_names(self) -> [&'static str; 4] {
        match self {
            FormPatch::GL => ["dg11", "dg12", "dg21", "dg22"],
            FormPatch::MI => ["dx11", "dx12", "dx21", "dx22"],
            FormPatch::MJ => ["dy11", "dy12", "dy21", "dy22"],
        }
    }
}

impl fmt::Display for FormPatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Why a form operation refused its input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormError {
    /// the element mixes words of different form degree
    MixedDegree(usize, usize),
    /// the differential only accepts degrees 0 and 1
    DegreeTooHigh(usize),
    /// the star only accepts homogeneous two-forms
    NotATwoForm(usize),
    /// the two-form involves the grading-unit differential, outside the
    /// coordinate pair sector the star is defined on
    OutsidePairSector,
}

impl fmt::Display for FormError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormError::MixedDegree(a, b) => {
                write!(f, "element mixes form degrees {} and {}", a, b)
            }
            FormError::DegreeTooHigh(d) => {
                write!(f, "differential undefined in degree {}", d)
            }
            FormError::NotATwoForm(d) => {
                write!(f, "expected a two-form, got degree {}", d)
            }
            FormError::OutsidePairSector => {
                f.write_str("two-form leaves the coordinate pair sector")
            }
        }
    }
}

impl std::error::Error for FormError {}

/// A normalized homogeneous element tagged with its form degree.
#[derive(Clone, Debug, PartialEq)]
pub struct FormElement {
    pub poly: NCPoly,
    pub degree: usize,
}

// ----------------------------------------------------------------------
// construction

struct Layout {
    base: [GenId; 4],
    dbase: [GenId; 4],
    delta: Option<GenId>,
    ddelta: Option<GenId>,
}

/// delta scales the corner entries by `q^{±1}` and fixes the diagonal; its
/// differential uses the same weights.
fn grading_weights() -> [Scalar; 4] {
    [Scalar::one(), Scalar::q_pow(1), Scalar::q_pow(-1), Scalar::one()]
}

/// Declare generators and the purely coordinate-level rules. Coordinates
/// come first so that every `differential·coordinate` word rewrites down.
fn declare(patch: FormPatch, mode: PMode) -> (PresentationBuilder, Layout) {
    let mut b = PresentationBuilder::new(&format!("forms-{}-{}", patch.name(), mode.name()));
    let base = patch.base_names().map(|n| b.gen_deg(n, &[0]));
    let dbase = patch.dbase_names().map(|n| b.gen_deg(n, &[1]));
    match patch {
        FormPatch::GL => quantum_matrix_rules(&mut b, base),
        FormPatch::MI => first_patch_rules(&mut b, base),
        FormPatch::MJ => second_patch_rules(&mut b, base),
    }
    let (delta, ddelta) = if patch == FormPatch::GL {
        let dd = b.gen_deg("ddelta", &[1]);
        let de = b.inv_gen_deg("delta", &[0]);
        let w = grading_weights();
        for r in 0..4 {
            b.comm(de, base[r], w[r].clone());
            b.comm(de, dbase[r], w[r].clone());
        }
        b.comm(de, dd, Scalar::one());
        // the grading-unit differential obeys the same weights, with a
        // sign against one-form letters, and squares to zero
        for r in 0..4 {
            b.rule(&[dd, base[r]], mt(&w[r], &[base[r], dd]));
            b.rule(&[dd, dbase[r]], mt(&w[r], &[dbase[r], dd]).neg());
        }
        b.rule(&[dd, dd], NCPoly::zero());
        (Some(de), Some(dd))
    } else {
        (None, None)
    };
    (b, Layout { base, dbase, delta, ddelta })
}

/// Conjugate a pair-space matrix by the factor swap on both indices.
fn leg_swap(m: &Mat<Scalar>) -> Mat<Scalar> {
    Mat::from_fn(4, 4, |r, c| {
        let (i, k) = pair_of_index(r);
        let (a, b) = pair_of_index(c);
        m[(pair_index(k, i), pair_index(b, a))].clone()
    })
}

fn gen_mat(ids: [GenId; 4]) -> PolyMat {
    PolyMat::from_fn(2, 2, |r, c| NCPoly::term(Word::gen(ids[2 * r + c]), Scalar::one()))
}

/// One calculus: a completed graded rewrite system together with the star
/// table of its patch.
pub struct FormAlgebra {
    pub patch: FormPatch,
    pub mode: PMode,
    alg: Algebra,
    base: [GenId; 4],
    dbase: [GenId; 4],
    delta: Option<GenId>,
    ddelta: Option<GenId>,
    /// plus projector minus minus projector, acting on pair indices
    star: Mat<Scalar>,
    completion_added: Vec<String>,
}

impl FormAlgebra {
    pub fn new(patch: FormPatch, mode: PMode) -> Self {
        let (b, lay) = declare(patch, mode);
        let mut alg = b.build();

        let rm = build_rmatrices(mode);
        let r = match patch {
            FormPatch::GL => rm.r12.clone(),
            FormPatch::MI => rm.ri.clone(),
            FormPatch::MJ => rm.rj.clone(),
        };
        let r21_inv = leg_swap(&r).inverse().expect("swapped exchange matrix inverts");
        let t = gen_mat(lay.base);
        let dt = gen_mat(lay.dbase);
        // R T1 dT2 = dT2 T1 R21^{-1} and R dT1 dT2 = -dT2 dT1 R21^{-1}
        let one_forms = expand_matrix_relation(&alg, &r, &t, &dt, &r21_inv, 1);
        let two_forms = expand_matrix_relation(&alg, &r, &dt, &dt, &r21_inv, -1);
        for (lhs, rhs) in orient_relations(&one_forms) {
            alg.push_rule(&lhs, rhs, false);
        }
        for (lhs, rhs) in orient_relations(&two_forms) {
            alg.push_rule(&lhs, rhs, false);
        }
        let completion_added = complete(&mut alg, COMPLETION_DEGREE);

        let (plus, minus) = build_projectors(&r, mode);
        let star = plus.sub(&minus);
        FormAlgebra {
            patch,
            mode,
            alg,
            base: lay.base,
            dbase: lay.dbase,
            delta: lay.delta,
            ddelta: lay.ddelta,
            star,
            completion_added,
        }
    }

    pub fn alg(&self) -> &Algebra {
        &self.alg
    }

    pub fn star_table(&self) -> &Mat<Scalar> {
        &self.star
    }

    pub fn completion_added(&self) -> &[String] {
        &self.completion_added
    }

    pub fn coordinate(&self, slot: usize) -> NCPoly {
        NCPoly::term(Word::gen(self.base[slot]), Scalar::one())
    }

    pub fn differential_gen(&self, slot: usize) -> NCPoly {
        NCPoly::term(Word::gen(self.dbase[slot]), Scalar::one())
    }

    fn is_one_form_letter(&self, g: GenId) -> bool {
        self.dbase.contains(&g) || Some(g) == self.ddelta
    }

    pub(crate) fn coordinate_slot(&self, g: GenId) -> Option<usize> {
        self.base.iter().position(|&b| b == g)
    }

    pub(crate) fn base_gen(&self, slot: usize) -> GenId {
        self.base[slot]
    }

    pub(crate) fn dbase_slot(&self, g: GenId) -> Option<usize> {
        self.dbase.iter().position(|&d| d == g)
    }

    pub fn word_form_degree(&self, w: &Word) -> usize {
        self.alg.word_extra_degree(w)[0] as usize
    }

    /// Normalize and tag; rejects inhomogeneous input.
    pub fn element(&self, p: &NCPoly) -> Result<FormElement, FormError> {
        let p = self.alg.normalize(p);
        let mut degree = None;
        for (w, _) in p.terms() {
            let d = self.word_form_degree(w);
            match degree {
                None => degree = Some(d),
                Some(e) if e != d => return Err(FormError::MixedDegree(e, d)),
                _ => {}
            }
        }
        Ok(FormElement { degree: degree.unwrap_or(0), poly: p })
    }

    // ------------------------------------------------------------------
    // exterior differential

    fn d_gen(&self, g: GenId) -> Option<NCPoly> {
        if let Some(slot) = self.base.iter().position(|&b| b == g) {
            return Some(NCPoly::term(Word::gen(self.dbase[slot]), Scalar::one()));
        }
        if Some(g) == self.delta {
            return Some(NCPoly::term(Word::gen(self.ddelta.unwrap()), Scalar::one()));
        }
        None
    }

    fn raw_product(&self, factors: &[NCPoly]) -> NCPoly {
        factors.iter().fold(NCPoly::one(), |acc, f| self.alg.mul_raw(&acc, f))
    }

    fn inv_pow(g: GenId, k: i32) -> NCPoly {
        if k == 0 {
            NCPoly::one()
        } else {
            NCPoly::term(Word::inv_gen(g, k), Scalar::one())
        }
    }

    /// `d(u^e)` for an invertible u: iterated Leibniz for e > 0, and
    /// `d(u^{-m}) = -u^{-m} d(u^m) u^{-m}`.
    fn d_inv_power(&self, g: GenId, e: i32) -> NCPoly {
        let dg = self.d_gen(g).expect("invertible generator without differential");
        if e > 0 {
            let mut out = NCPoly::zero();
            for j in 0..e {
                out = out.add(&self.raw_product(&[
                    Self::inv_pow(g, j),
                    dg.clone(),
                    Self::inv_pow(g, e - 1 - j),
                ]));
            }
            out
        } else {
            let neg = Self::inv_pow(g, e);
            self.raw_product(&[neg.clone(), self.d_inv_power(g, -e), neg]).neg()
        }
    }

    fn d_inv_block(&self, inv: &[(GenId, i32)]) -> NCPoly {
        let mut out = NCPoly::zero();
        for i in 0..inv.len() {
            let factors: Vec<NCPoly> = inv
                .iter()
                .enumerate()
                .map(|(j, &(g, e))| {
                    if i == j {
                        self.d_inv_power(g, e)
                    } else {
                        Self::inv_pow(g, e)
                    }
                })
                .collect();
            out = out.add(&self.raw_product(&factors));
        }
        out
    }

    fn d_word_raw(&self, w: &Word) -> NCPoly {
        if w.reg.is_empty() {
            return self.d_inv_block(&w.inv);
        }
        let head = w.reg[0];
        let tail = Word { reg: w.reg[1..].iter().copied().collect(), inv: w.inv.clone() };
        let mut out = match self.d_gen(head) {
            Some(dh) => self.alg.mul_raw(&dh, &NCPoly::term(tail.clone(), Scalar::one())),
            None => NCPoly::zero(),
        };
        let rest = self
            .alg
            .mul_raw(&NCPoly::term(Word::gen(head), Scalar::one()), &self.d_word_raw(&tail));
        out = if self.is_one_form_letter(head) { out.sub(&rest) } else { out.add(&rest) };
        out
    }

    fn d_poly_raw(&self, p: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, c) in p.terms() {
            out = out.add(&self.d_word_raw(w).scale(c));
        }
        out
    }

    /// Exterior differential, `d(fg) = df·g + (-1)^{|f|} f·dg` letterwise.
    /// Defined on degrees 0 and 1; the image of a two-form lies outside
    /// the modeled sector.
    pub fn derham(&self, f: &FormElement) -> Result<FormElement, FormError> {
        if f.degree > 1 {
            return Err(FormError::DegreeTooHigh(f.degree));
        }
        Ok(FormElement {
            poly: self.alg.normalize(&self.d_poly_raw(&f.poly)),
            degree: f.degree + 1,
        })
    }

    // ------------------------------------------------------------------
    // Hodge star

    /// Star image of the differential pair in slots `(a, b)`, before
    /// normalization. The table acts on the row indices of the pair, the
    /// column indices ride along.
    fn star_pair(&self, a: usize, b: usize) -> NCPoly {
        let (i, m) = (a / 2 + 1, a % 2 + 1);
        let (k, l) = (b / 2 + 1, b % 2 + 1);
        let row = pair_index(i, k);
        let mut out = NCPoly::zero();
        for col in 0..4 {
            let s = &self.star[(row, col)];
            if s.is_zero() {
                continue;
            }
            let (j, n) = pair_of_index(col);
            let w = Word::from_regs([
                self.dbase[2 * (j - 1) + (m - 1)],
                self.dbase[2 * (n - 1) + (l - 1)],
            ]);
            out.add_term(w, s.clone());
        }
        out
    }

    /// Hodge star on the two-form sector spanned by coordinate
    /// differential pairs.
    pub fn hodge_star(&self, f: &FormElement) -> Result<FormElement, FormError> {
        if f.poly.is_zero() {
            return Ok(f.clone());
        }
        if f.degree != 2 {
            return Err(FormError::NotATwoForm(f.degree));
        }
        let mut out = NCPoly::zero();
        for (w, c) in f.poly.terms() {
            // normalized two-forms end with their two one-form letters
            let n = w.reg.len();
            let a = self.dbase_slot(w.reg[n - 2]).ok_or(FormError::OutsidePairSector)?;
            let b = self.dbase_slot(w.reg[n - 1]).ok_or(FormError::OutsidePairSector)?;
            for (pw, s) in self.star_pair(a, b).into_terms() {
                let word = Word {
                    reg: w.reg[..n - 2].iter().copied().chain(pw.reg.iter().copied()).collect(),
                    inv: w.inv.clone(),
                };
                out.add_term(word, &c.clone() * &s);
            }
        }
        Ok(FormElement { poly: self.alg.normalize(&out), degree: 2 })
    }

    /// Split a two-form into its star-fixed and star-negated parts.
    pub fn decompose_2form(
        &self,
        f: &FormElement,
    ) -> Result<(FormElement, FormElement), FormError> {
        let st = self.hodge_star(f)?;
        let half = Scalar::rat(1, 2);
        let sd = f.poly.add(&st.poly).scale(&half);
        let asd = f.poly.sub(&st.poly).scale(&half);
        Ok((
            FormElement { poly: sd, degree: 2 },
            FormElement { poly: asd, degree: 2 },
        ))
    }

    // ------------------------------------------------------------------
    // graded involution

    /// Images of the regular generators under the graded involution, as
    /// elements of the companion calculus.
    fn dagger_images(&self, target: &FormAlgebra) -> Vec<NCPoly> {
        let mut img = vec![NCPoly::zero(); self.alg.n_gens()];
        for (a, b, s) in [(0usize, 3usize, 1i64), (1, 2, -1), (2, 1, -1), (3, 0, 1)] {
            img[self.base[a] as usize] = mt(&Scalar::int(s), &[target.base[b]]);
            img[self.dbase[a] as usize] = mt(&Scalar::int(s), &[target.dbase[b]]);
        }
        if let (Some(dd), Some(tdd)) = (self.ddelta, target.ddelta) {
            img[dd as usize] = mt(&Scalar::one(), &[tdd]);
        }
        img
    }

    /// Conjugate-linear graded involution into the calculus of the other
    /// braiding mode: letters map by the transpose-with-sign pattern, the
    /// word reverses, and a k-form picks up `(-1)^{k(k-1)/2}`. Works on
    /// raw polynomials; homogeneity is not required.
    pub fn dagger_poly(&self, target: &FormAlgebra, p: &NCPoly) -> NCPoly {
        assert!(
            target.patch == self.patch && target.mode == self.mode.flip(),
            "involution lands in the companion calculus"
        );
        let images = self.dagger_images(target);
        let mut out = NCPoly::zero();
        for (w, c) in p.terms() {
            let k = self.word_form_degree(w);
            let mut coeff = c.conj();
            if (k * k.saturating_sub(1) / 2) % 2 == 1 {
                coeff = coeff.neg();
            }
            // the grading unit is self-adjoint, so the inverse block maps
            // to itself on the far left
            let mut acc = NCPoly::term(Word::one(), coeff);
            for &(g, e) in w.inv.iter().rev() {
                acc = target.alg.mul(&acc, &Self::inv_pow(g, e));
            }
            for &g in w.reg.iter().rev() {
                acc = target.alg.mul(&acc, &images[g as usize]);
            }
            out = out.add(&acc);
        }
        target.alg.normalize(&out)
    }

    pub fn dagger(&self, target: &FormAlgebra, f: &FormElement) -> FormElement {
        FormElement { poly: self.dagger_poly(target, &f.poly), degree: f.degree }
    }

    // ------------------------------------------------------------------
    // named two-form bases

    fn pair_word(&self, a: usize, b: usize) -> NCPoly {
        NCPoly::term(Word::from_regs([self.dbase[a], self.dbase[b]]), Scalar::one())
    }

    /// Mixed-pair weight of the star-fixed line: the fixed combination is
    /// `pair(0,3) - ratio·pair(1,2)`.
    fn sd_ratio(&self) -> Scalar {
        match self.patch {
            FormPatch::GL => Scalar::q_pow(-1),
            FormPatch::MI => Scalar::one(),
            FormPatch::MJ => Scalar::q_pow(-2),
        }
    }

    /// Mixed-pair weight of the star-negated line: the negated combination
    /// is `pair(0,3) + ratio·pair(1,2)`.
    fn asd_ratio(&self) -> Scalar {
        match self.patch {
            FormPatch::GL => Scalar::q_pow(1),
            FormPatch::MI => Scalar::q_pow(2),
            FormPatch::MJ => Scalar::one(),
        }
    }

    /// Basis of the star-fixed half of the pair sector.
    pub fn self_dual_basis(&self) -> [NCPoly; 3] {
        [
            self.pair_word(0, 1),
            self.pair_word(2, 3),
            self.pair_word(0, 3).sub(&self.pair_word(1, 2).scale(&self.sd_ratio())),
        ]
    }

    /// Basis of the star-negated half of the pair sector.
    pub fn anti_self_dual_basis(&self) -> [NCPoly; 3] {
        [
            self.pair_word(0, 2),
            self.pair_word(1, 3),
            self.pair_word(0, 3).add(&self.pair_word(1, 2).scale(&self.asd_ratio())),
        ]
    }
}

/// The three calculi of one braiding mode.
pub struct FormCatalog {
    pub mode: PMode,
    pub gl: FormAlgebra,
    pub mi: FormAlgebra,
    pub mj: FormAlgebra,
}

impl FormCatalog {
    pub fn new(mode: PMode) -> Self {
        FormCatalog {
            mode,
            gl: FormAlgebra::new(FormPatch::GL, mode),
            mi: FormAlgebra::new(FormPatch::MI, mode),
            mj: FormAlgebra::new(FormPatch::MJ, mode),
        }
    }

    pub fn patch(&self, p: FormPatch) -> &FormAlgebra {
        match p {
            FormPatch::GL => &self.gl,
            FormPatch::MI => &self.mi,
            FormPatch::MJ => &self.mj,
        }
    }
}

// ----------------------------------------------------------------------
// structural verification

fn scalar_times_poly_n(r: &Mat<Scalar>, m: &PolyMat) -> PolyMat {
    assert!(r.cols == m.rows);
    PolyMat::from_fn(r.rows, m.cols, |row, col| {
        let mut acc = NCPoly::zero();
        for k in 0..r.cols {
            if !r[(row, k)].is_zero() {
                acc = acc.add(&m.at(k, col).scale(&r[(row, k)]));
            }
        }
        acc
    })
}

fn poly_times_scalar_n(m: &PolyMat, r: &Mat<Scalar>) -> PolyMat {
    assert!(m.cols == r.rows);
    PolyMat::from_fn(m.rows, r.cols, |row, col| {
        let mut acc = NCPoly::zero();
        for k in 0..r.rows {
            if !r[(k, col)].is_zero() {
                acc = acc.add(&m.at(row, k).scale(&r[(k, col)]));
            }
        }
        acc
    })
}

/// Lift a 2x2 generator matrix to the triple tensor space. Factor index
/// equals bit position, first factor lowest.
fn leg3(m: &PolyMat, leg: usize) -> PolyMat {
    assert!(m.rows == 2 && m.cols == 2 && leg < 3);
    PolyMat::from_fn(8, 8, |r, c| {
        if (r & !(1 << leg)) == (c & !(1 << leg)) {
            m.at((r >> leg) & 1, (c >> leg) & 1).clone()
        } else {
            NCPoly::zero()
        }
    })
}

fn push_all_zero(report: &mut StructureReport, alg: &Algebra, label: String, polys: &[NCPoly]) {
    let residuals: Vec<NCPoly> = polys.iter().map(|p| alg.normalize(p)).collect();
    let first_bad = residuals.iter().find(|r| !r.is_zero());
    report.push_bool(
        format!("{} ({} entries)", label, polys.len()),
        first_bad.is_none(),
        &first_bad.map(|r| alg.poly_str(r)).unwrap_or_else(|| "0".into()),
    );
}

/// True when every coefficient specializes to zero at `s = 1`.
fn vanishes_classically(p: &NCPoly) -> bool {
    p.terms().all(|(_, c)| c.specialize(&gr_int(1)) == Some(gr_int(0)))
}

fn random_zero_form(fa: &FormAlgebra, rng: &mut ChaCha8Rng) -> NCPoly {
    let mut out = NCPoly::zero();
    for _ in 0..rng.gen_range(1..=2) {
        let len = rng.gen_range(0..=2);
        let mut regs = Vec::new();
        for _ in 0..len {
            regs.push(fa.base[rng.gen_range(0..4)]);
        }
        let mut w = Word::from_regs(regs);
        if fa.delta.is_some() && rng.gen_bool(0.3) {
            w.inv = Word::inv_gen(fa.delta.unwrap(), if rng.gen_bool(0.5) { 1 } else { -1 }).inv;
        }
        let mut c = &Scalar::s_pow(rng.gen_range(-4..=4)) * &Scalar::int(rng.gen_range(1..=3));
        if rng.gen_bool(0.25) {
            c = &c * &Scalar::imag();
        }
        out.add_term(w, c);
    }
    out
}

fn random_form(fa: &FormAlgebra, degree_one: bool, rng: &mut ChaCha8Rng) -> NCPoly {
    let f = random_zero_form(fa, rng);
    if degree_one {
        let dg = NCPoly::term(Word::gen(fa.dbase[rng.gen_range(0..4)]), Scalar::one());
        fa.alg.mul_raw(&f, &dg)
    } else {
        f
    }
}

fn verify_one_calculus(report: &mut StructureReport, fa: &FormAlgebra, flipped: &FormAlgebra) {
    let tag = format!("[p={}][{}]", fa.mode.name(), fa.patch.name());
    let alg = &fa.alg;
    let rm = build_rmatrices(fa.mode);
    let r = match fa.patch {
        FormPatch::GL => rm.r12.clone(),
        FormPatch::MI => rm.ri.clone(),
        FormPatch::MJ => rm.rj.clone(),
    };
    let r21_inv = leg_swap(&r).inverse().unwrap();
    let t = gen_mat(fa.base);
    let dt = gen_mat(fa.dbase);

    // the defining exchange laws, re-expanded against the completed system
    push_all_zero(
        report,
        alg,
        format!("{} coordinate/differential exchange law", tag),
        &expand_matrix_relation(alg, &r, &t, &dt, &r21_inv, 1),
    );
    push_all_zero(
        report,
        alg,
        format!("{} differential pair exchange law", tag),
        &expand_matrix_relation(alg, &r, &dt, &dt, &r21_inv, -1),
    );

    // d respects every rewrite rule
    let rule_residuals: Vec<NCPoly> = alg
        .rules()
        .iter()
        .map(|rule| {
            let lhs = NCPoly::term(Word::from_regs(rule.lhs.iter().copied()), Scalar::one());
            fa.d_poly_raw(&lhs).sub(&fa.d_poly_raw(&rule.rhs))
        })
        .collect();
    push_all_zero(
        report,
        alg,
        format!("{} differential respects the rewrite system", tag),
        &rule_residuals,
    );

    // d squared kills low-degree words
    let mut dd_residuals = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            let w = NCPoly::term(Word::from_regs([fa.base[a], fa.base[b]]), Scalar::one());
            dd_residuals.push(fa.d_poly_raw(&fa.d_poly_raw(&w)));
        }
        let w = NCPoly::term(Word::gen(fa.base[a]), Scalar::one());
        dd_residuals.push(fa.d_poly_raw(&fa.d_poly_raw(&w)));
    }
    if let Some(de) = fa.delta {
        for e in [-2, -1, 1, 2] {
            let w = NCPoly::term(Word::inv_gen(de, e), Scalar::one());
            dd_residuals.push(fa.d_poly_raw(&fa.d_poly_raw(&w)));
        }
    }
    push_all_zero(report, alg, format!("{} differential squares to zero", tag), &dd_residuals);

    // the sixteen differential pairs land in the six increasing ones
    let normal: std::collections::BTreeSet<Word> = (0..4)
        .flat_map(|a| (0..4).map(move |b| (a, b)))
        .flat_map(|(a, b)| {
            alg.normalize(&fa.pair_word(a, b)).into_terms().map(|(w, _)| w).collect::<Vec<_>>()
        })
        .collect();
    let six: std::collections::BTreeSet<Word> = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
        .iter()
        .map(|&(a, b)| Word::from_regs([fa.dbase[a], fa.dbase[b]]))
        .collect();
    report.push_bool(
        format!("{} differential pairs span six normal words", tag),
        normal == six,
        &format!("{} distinct normal words", normal.len()),
    );

    // star well-defined and involutive on the pair sector
    let mut star_residuals = Vec::new();
    let mut star_sq = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            let el = fa.element(&fa.pair_word(a, b)).unwrap();
            let via_normal = fa.hodge_star(&el).unwrap();
            star_residuals.push(via_normal.poly.sub(&alg.normalize(&fa.star_pair(a, b))));
            let back = fa.hodge_star(&via_normal).unwrap();
            star_sq.push(back.poly.sub(&el.poly));
        }
    }
    push_all_zero(report, alg, format!("{} star compatible with the rules", tag), &star_residuals);
    push_all_zero(report, alg, format!("{} star squares to the identity", tag), &star_sq);

    // exact eigenbases of the star
    let sd = fa.self_dual_basis();
    let asd = fa.anti_self_dual_basis();
    let mut eig = Vec::new();
    for b in &sd {
        let el = fa.element(b).unwrap();
        eig.push(fa.hodge_star(&el).unwrap().poly.sub(&el.poly));
    }
    for b in &asd {
        let el = fa.element(b).unwrap();
        eig.push(fa.hodge_star(&el).unwrap().poly.add(&el.poly));
    }
    push_all_zero(report, alg, format!("{} star eigenbases are exact", tag), &eig);

    // projector columns stay inside the matching eigenspace
    let (plus, minus) = build_projectors(&r, fa.mode);
    let dpair = dt.leg1().mul_raw(alg, &dt.leg2());
    let mut proj_residuals = Vec::new();
    for (p, sign) in [(&plus, 1), (&minus, -1)] {
        let image = scalar_times_poly(p, &dpair).normalize(alg);
        for entry in &image.data {
            if entry.is_zero() {
                continue;
            }
            let el = fa.element(entry).unwrap();
            let st = fa.hodge_star(&el).unwrap();
            let res = if sign == 1 { st.poly.sub(&el.poly) } else { st.poly.add(&el.poly) };
            proj_residuals.push(res);
        }
    }
    push_all_zero(
        report,
        alg,
        format!("{} projector images are (anti-)self-dual", tag),
        &proj_residuals,
    );

    // classical limit: the star table becomes the index flip and the
    // differential pairs anticommute
    let flip_ok = (0..4).all(|row| {
        (0..4).all(|col| {
            let (i, k) = pair_of_index(row);
            let expect = if pair_index(k, i) == col { 1 } else { 0 };
            fa.star[(row, col)].specialize(&gr_int(1)) == Some(gr_int(expect))
        })
    });
    report.push_bool(format!("{} star table specializes to the flip at q=1", tag), flip_ok, "");
    let anti_ok = (0..4).all(|a| {
        (0..4).all(|b| {
            let s = alg.normalize(&fa.pair_word(a, b).add(&fa.pair_word(b, a)));
            let sq = alg.normalize(&fa.pair_word(a, a));
            vanishes_classically(&s) && vanishes_classically(&sq)
        })
    });
    report.push_bool(
        format!("{} differential pairs anticommute at q=1", tag),
        anti_ok,
        "",
    );

    // graded involution into the companion calculus
    let mut dag_residuals = Vec::new();
    for rule in alg.rules() {
        let lhs = NCPoly::term(Word::from_regs(rule.lhs.iter().copied()), Scalar::one());
        dag_residuals
            .push(fa.dagger_poly(flipped, &lhs).sub(&fa.dagger_poly(flipped, &rule.rhs)));
    }
    push_all_zero(
        report,
        &flipped.alg,
        format!("{} involution respects the rewrite system", tag),
        &dag_residuals,
    );
    let mut invol = Vec::new();
    for g in 0..alg.n_gens() as GenId {
        if alg.pres().is_invertible(g) {
            continue;
        }
        let p = NCPoly::term(Word::gen(g), Scalar::one());
        invol.push(flipped.dagger_poly(fa, &fa.dagger_poly(flipped, &p)).sub(&p));
    }
    push_all_zero(report, alg, format!("{} involution is involutive", tag), &invol);

    // Leibniz on random pairs, covering both degree signs of the left factor
    let mode_bit = if fa.mode == PMode::PEqQ { 0 } else { 1 };
    let mut rng = ChaCha8Rng::seed_from_u64(0x666f_726d ^ ((fa.patch as u64) << 8) ^ mode_bit);
    let mut leib = Vec::new();
    for i in 0..20 {
        let f_odd = i % 2 == 1;
        let f = random_form(fa, f_odd, &mut rng);
        let g = random_form(fa, i % 3 == 0, &mut rng);
        let fg = alg.mul_raw(&f, &g);
        let df_g = alg.mul_raw(&fa.d_poly_raw(&f), &g);
        let f_dg = alg.mul_raw(&f, &fa.d_poly_raw(&g));
        let rhs = if f_odd { df_g.sub(&f_dg) } else { df_g.add(&f_dg) };
        leib.push(fa.d_poly_raw(&fg).sub(&rhs));
    }
    push_all_zero(report, alg, format!("{} Leibniz rule on 20 random pairs", tag), &leib);
}

fn verify_group_extras(report: &mut StructureReport, gl: &FormAlgebra) {
    let tag = format!("[p={}][gl]", gl.mode.name());
    let alg = &gl.alg;
    let rm = build_rmatrices(gl.mode);
    let t = gen_mat(gl.base);
    let dt = gen_mat(gl.dbase);
    let de = gl.delta.unwrap();
    let dd = gl.ddelta.unwrap();

    // grading unit commutation with differentials, and its differential
    // anticommutation, against the square of the charge matrix
    let q2 = rm.q2.mul(&rm.q2);
    let mut delta_rels = Vec::new();
    let mut ddelta_rels = Vec::new();
    let dep = NCPoly::term(Word::inv_gen(de, 1), Scalar::one());
    let ddp = NCPoly::term(Word::gen(dd), Scalar::one());
    for r in 0..2 {
        for c in 0..2 {
            let dg = dt.at(r, c);
            let lhs = alg.mul_raw(&dep, dg).scale(&q2[(c, c)]);
            let rhs = alg.mul_raw(dg, &dep).scale(&q2[(r, r)]);
            delta_rels.push(lhs.sub(&rhs));
            let lhs = alg.mul_raw(&ddp, dg).scale(&q2[(c, c)]);
            let rhs = alg.mul_raw(dg, &ddp).scale(&q2[(r, r)]);
            ddelta_rels.push(lhs.add(&rhs));
        }
    }
    push_all_zero(report, alg, format!("{} grading unit slides across differentials", tag), &delta_rels);
    push_all_zero(
        report,
        alg,
        format!("{} grading-unit differential anticommutes across differentials", tag),
        &ddelta_rels,
    );

    // three-leg exchange of two differentials across the coordinate matrix
    let a = embed_pair_on_legs(&rm.r12, 0, 1).mul(&embed_pair_on_legs(&rm.r12, 0, 2));
    let t1 = leg3(&t, 0);
    let dt2 = leg3(&dt, 1);
    let dt3 = leg3(&dt, 2);
    let lhs = dt3.mul_raw(alg, &dt2).mul_raw(alg, &t1);
    let rhs = poly_times_scalar_n(
        &scalar_times_poly_n(&a, &t1.mul_raw(alg, &dt3).mul_raw(alg, &dt2)),
        &a.transpose(),
    );
    push_all_zero(
        report,
        alg,
        format!("{} three-leg differential exchange", tag),
        &lhs.sub(&rhs).data,
    );
}

fn verify_realizations(report: &mut StructureReport, cat: &FormCatalog) {
    let tag = format!("[p={}]", cat.mode.name());
    let gl = &cat.gl;
    // first patch: conjugated grading-unit twist of the group calculus
    let mut pairs: Vec<(&str, NCPoly)> = Vec::new();
    let wts = [0i64, -2, 2, 0];
    for (i, (&xn, &dxn)) in FormPatch::MI
        .base_names()
        .iter()
        .zip(FormPatch::MI.dbase_names().iter())
        .enumerate()
    {
        let d = inv_mono(&gl.alg, "delta", 1);
        let img = gl.alg.mul(&d, &gl.coordinate(i)).scale(&Scalar::s_pow(wts[i]));
        pairs.push((xn, img));
        let img = gl.alg.mul(&d, &gl.differential_gen(i)).scale(&Scalar::s_pow(wts[i]));
        pairs.push((dxn, img));
    }
    let m = Morphism::by_names(&cat.mi.alg, &gl.alg, &pairs, false, false);
    report.push_morphism(format!("{} first patch calculus embeds in the group calculus", tag), &m.verify());

    // second patch: inverse twist
    let mut pairs: Vec<(&str, NCPoly)> = Vec::new();
    let wts = [0i64, 2, -2, 0];
    for (i, (&yn, &dyn_)) in FormPatch::MJ
        .base_names()
        .iter()
        .zip(FormPatch::MJ.dbase_names().iter())
        .enumerate()
    {
        let d = inv_mono(&gl.alg, "delta", -1);
        let img = gl.alg.mul(&d, &gl.coordinate(i)).scale(&Scalar::s_pow(wts[i]));
        pairs.push((yn, img));
        let img = gl.alg.mul(&d, &gl.differential_gen(i)).scale(&Scalar::s_pow(wts[i]));
        pairs.push((dyn_, img));
    }
    let m = Morphism::by_names(&cat.mj.alg, &gl.alg, &pairs, false, false);
    report.push_morphism(format!("{} second patch calculus embeds in the group calculus", tag), &m.verify());
}

fn verify_decompose_example(report: &mut StructureReport, fa: &FormAlgebra) {
    let tag = format!("[p={}][{}]", fa.mode.name(), fa.patch.name());
    let alg = &fa.alg;
    let w = fa.element(&fa.pair_word(0, 3)).unwrap();
    let (sd, asd) = fa.decompose_2form(&w).unwrap();
    // weights q/(q+q^{-1}) and q^{∓1}/(q+q^{-1}) on the mixed pairs
    let den = &Scalar::q_pow(1) + &Scalar::q_pow(-1);
    let expect_sd = fa
        .pair_word(0, 3)
        .sub(&fa.pair_word(1, 2))
        .scale(&(&Scalar::q_pow(1) * &den.clone().inv()));
    let expect_asd = fa
        .pair_word(0, 3)
        .scale(&Scalar::q_pow(-1))
        .add(&fa.pair_word(1, 2).scale(&Scalar::q_pow(1)))
        .scale(&den.inv());
    let mut residuals = vec![
        sd.poly.add(&asd.poly).sub(&w.poly),
        fa.hodge_star(&sd).unwrap().poly.sub(&sd.poly),
        fa.hodge_star(&asd).unwrap().poly.add(&asd.poly),
    ];
    if fa.patch == FormPatch::MI {
        residuals.push(sd.poly.sub(&alg.normalize(&expect_sd)));
        residuals.push(asd.poly.sub(&alg.normalize(&expect_asd)));
    }
    push_all_zero(
        report,
        alg,
        format!("{} mixed pair splits into projector-weighted halves", tag),
        &residuals,
    );
}

/// Run every structural check on all six calculi.
pub fn verify_form_modules() -> StructureReport {
    let mut report = StructureReport::new("form modules");
    let cats = [FormCatalog::new(PMode::PEqQ), FormCatalog::new(PMode::PEqQInv)];
    for (ci, cat) in cats.iter().enumerate() {
        let flipped = &cats[1 - ci];
        for patch in ALL_PATCHES {
            verify_one_calculus(&mut report, cat.patch(patch), flipped.patch(patch));
            verify_decompose_example(&mut report, cat.patch(patch));
        }
        verify_group_extras(&mut report, &cat.gl);
        verify_realizations(&mut report, cat);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::check_local_confluence;
    use proptest::prelude::*;
    use std::sync::LazyLock;

    static FQ: LazyLock<FormCatalog> = LazyLock::new(|| FormCatalog::new(PMode::PEqQ));
    static FQI: LazyLock<FormCatalog> = LazyLock::new(|| FormCatalog::new(PMode::PEqQInv));

    fn both() -> [&'static FormCatalog; 2] {
        [&FQ, &FQI]
    }

    fn el(fa: &FormAlgebra, p: &NCPoly) -> FormElement {
        fa.element(p).unwrap()
    }

    #[test]
    fn one_form_exchange_weights_match_hand_derivation() {
        // dg11·g11 = p^{-2}·g11·dg11 holds on every patch, with the patch
        // coordinate names substituted
        for cat in both() {
            for patch in ALL_PATCHES {
                let fa = cat.patch(patch);
                let lhs = fa.alg().mul(&fa.differential_gen(0), &fa.coordinate(0));
                let expect = fa
                    .alg()
                    .mul_raw(&fa.coordinate(0), &fa.differential_gen(0))
                    .scale(&cat.mode.p_pow(-2));
                assert_eq!(lhs, fa.alg().normalize(&expect), "{} {}", patch, cat.mode.name());
            }
        }
    }

    #[test]
    fn two_form_rules_match_hand_values_and_ignore_the_mode() {
        for cat in both() {
            let mi = &cat.mi;
            let q2 = Scalar::q_pow(2);
            // squares die
            for a in 0..4 {
                assert!(mi.alg().normalize(&mi.pair_word(a, a)).is_zero());
            }
            // dx12∧dx11 = -q^{-2}·dx11∧dx12
            let got = mi.alg().normalize(&mi.pair_word(1, 0));
            assert_eq!(got, mi.pair_word(0, 1).scale(&Scalar::q_pow(-2).neg()));
            // dx21∧dx12 = -q^2·dx12∧dx21 - (1-q^2)·dx11∧dx22
            let got = mi.alg().normalize(&mi.pair_word(2, 1));
            let expect = mi
                .pair_word(1, 2)
                .scale(&q2)
                .add(&mi.pair_word(0, 3).scale(&(&Scalar::one() - &q2)))
                .neg();
            assert_eq!(got, expect);

            // dy21∧dy12 = -q^{-2}·dy12∧dy21 + (1-q^{-2})·dy11∧dy22
            let mj = &cat.mj;
            let got = mj.alg().normalize(&mj.pair_word(2, 1));
            let expect = mj
                .pair_word(1, 2)
                .scale(&Scalar::q_pow(-2).neg())
                .add(&mj.pair_word(0, 3).scale(&(&Scalar::one() - &Scalar::q_pow(-2))));
            assert_eq!(got, expect);

            // dg21∧dg12 = -dg12∧dg21 + (q-q^{-1})·dg11∧dg22
            let gl = &cat.gl;
            let got = gl.alg().normalize(&gl.pair_word(2, 1));
            let expect = gl
                .pair_word(1, 2)
                .neg()
                .add(&gl.pair_word(0, 3).scale(&(&Scalar::q_pow(1) - &Scalar::q_pow(-1))));
            assert_eq!(got, expect);
        }
        // the two-form sector does not see the braiding mode
        for patch in ALL_PATCHES {
            let a = FQ.patch(patch);
            let b = FQI.patch(patch);
            for x in 0..4 {
                for y in 0..4 {
                    assert_eq!(
                        a.alg().poly_str(&a.alg().normalize(&a.pair_word(x, y))),
                        b.alg().poly_str(&b.alg().normalize(&b.pair_word(x, y)))
                    );
                }
            }
        }
    }

    #[test]
    fn sixteen_pairs_normalize_into_six_words() {
        for cat in both() {
            for patch in ALL_PATCHES {
                let fa = cat.patch(patch);
                let six: std::collections::BTreeSet<Word> =
                    [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
                        .iter()
                        .map(|&(a, b)| Word::from_regs([fa.dbase[a], fa.dbase[b]]))
                        .collect();
                let mut seen = std::collections::BTreeSet::new();
                for a in 0..4 {
                    for b in 0..4 {
                        for (w, _) in fa.alg().normalize(&fa.pair_word(a, b)).into_terms() {
                            assert!(six.contains(&w), "{}", fa.alg().word_str(&w));
                            seen.insert(w);
                        }
                    }
                }
                assert_eq!(seen, six);
            }
        }
    }

    #[test]
    fn hodge_star_squares_to_identity_on_all_pairs() {
        for cat in both() {
            for patch in ALL_PATCHES {
                let fa = cat.patch(patch);
                for a in 0..4 {
                    for b in 0..4 {
                        let w = el(fa, &fa.pair_word(a, b));
                        let ss = fa.hodge_star(&fa.hodge_star(&w).unwrap()).unwrap();
                        assert_eq!(ss.poly, w.poly);
                    }
                }
            }
        }
    }

    #[test]
    fn star_table_middle_block_matches_hand_projector_difference() {
        // the mixed-index block of P+ - P- is ((u, v), (w, -u)) with
        // u = (q-q^{-1})/(q+q^{-1}) and {v, w} the patch-specific split of
        // 2/(q+q^{-1}); corners are the identity
        let den = &Scalar::q_pow(1) + &Scalar::q_pow(-1);
        let u = &(&Scalar::q_pow(1) - &Scalar::q_pow(-1)) * &den.clone().inv();
        let two = Scalar::int(2);
        for cat in both() {
            for (patch, v) in [
                (FormPatch::GL, &two * &den.clone().inv()),
                (FormPatch::MI, &(&two * &Scalar::q_pow(1)) * &den.clone().inv()),
                (FormPatch::MJ, &(&two * &Scalar::q_pow(-1)) * &den.clone().inv()),
            ] {
                let s = cat.patch(patch).star_table();
                assert!(s[(0, 0)].is_one() && s[(3, 3)].is_one());
                assert_eq!(s[(1, 1)], u);
                assert_eq!(s[(2, 2)], (&u).neg());
                assert_eq!(s[(1, 2)], v);
                // the off-diagonal entries multiply to 1 - u^2
                assert_eq!(&s[(1, 2)] * &s[(2, 1)], &Scalar::one() - &(&u * &u));
            }
        }
        // mode independence of the whole table
        for patch in ALL_PATCHES {
            for r in 0..4 {
                for c in 0..4 {
                    assert_eq!(
                        FQ.patch(patch).star_table()[(r, c)],
                        FQI.patch(patch).star_table()[(r, c)]
                    );
                }
            }
        }
    }

    #[test]
    fn star_eigenbases_are_exact() {
        for cat in both() {
            for patch in ALL_PATCHES {
                let fa = cat.patch(patch);
                for b in fa.self_dual_basis() {
                    let e = el(fa, &b);
                    assert_eq!(fa.hodge_star(&e).unwrap().poly, e.poly);
                }
                for b in fa.anti_self_dual_basis() {
                    let e = el(fa, &b);
                    assert_eq!(fa.hodge_star(&e).unwrap().poly, e.poly.neg());
                }
            }
        }
    }

    #[test]
    fn decompose_splits_the_mixed_pair_with_projector_weights() {
        for cat in both() {
            let fa = &cat.mi;
            let w = el(fa, &fa.pair_word(0, 3));
            let (sd, asd) = fa.decompose_2form(&w).unwrap();
            let den = &Scalar::q_pow(1) + &Scalar::q_pow(-1);
            let expect_sd = fa
                .pair_word(0, 3)
                .sub(&fa.pair_word(1, 2))
                .scale(&(&Scalar::q_pow(1) * &den.clone().inv()));
            let expect_asd = fa
                .pair_word(0, 3)
                .scale(&Scalar::q_pow(-1))
                .add(&fa.pair_word(1, 2).scale(&Scalar::q_pow(1)))
                .scale(&den.clone().inv());
            assert_eq!(sd.poly, fa.alg().normalize(&expect_sd));
            assert_eq!(asd.poly, fa.alg().normalize(&expect_asd));
            assert_eq!(sd.poly.add(&asd.poly), w.poly);
            // classical specialization: both weights become 1/2
            for part in [&sd, &asd] {
                for (_, c) in part.poly.terms() {
                    let v = c.specialize(&gr_int(1)).unwrap();
                    assert_eq!(v.norm_sqr(), crate::scalar::gr_rat(1, 2).norm_sqr());
                }
            }
        }
    }

    #[test]
    fn purely_self_dual_and_anti_self_dual_pairs() {
        for cat in both() {
            let fa = &cat.mi;
            // dx21∧dx22 is star-fixed, dx11∧dx21 is star-negated
            let w = el(fa, &fa.pair_word(2, 3));
            let (sd, asd) = fa.decompose_2form(&w).unwrap();
            assert_eq!(sd.poly, w.poly);
            assert!(asd.poly.is_zero());
            let w = el(fa, &fa.pair_word(0, 2));
            let (sd, asd) = fa.decompose_2form(&w).unwrap();
            assert!(sd.poly.is_zero());
            assert_eq!(asd.poly, w.poly);
            // zero splits into zeros
            let z = el(fa, &NCPoly::zero());
            let (sd, asd) = fa.decompose_2form(&FormElement { poly: z.poly, degree: 2 }).unwrap();
            assert!(sd.poly.is_zero() && asd.poly.is_zero());
        }
    }

    #[test]
    fn differential_is_a_graded_leibniz_derivation() {
        for cat in both() {
            let fa = &cat.mi;
            let alg = fa.alg();
            // d(x11 x12) expands letterwise
            let w = el(fa, &alg.mul(&fa.coordinate(0), &fa.coordinate(1)));
            let expect = alg
                .mul_raw(&fa.differential_gen(0), &fa.coordinate(1))
                .add(&alg.mul_raw(&fa.coordinate(0), &fa.differential_gen(1)));
            assert_eq!(fa.derham(&w).unwrap().poly, alg.normalize(&expect));
            // d(1) = 0
            let one = el(fa, &NCPoly::one());
            assert!(fa.derham(&one).unwrap().poly.is_zero());
            // d(x11·dx11) = dx11∧dx11 = 0
            let w = el(fa, &alg.mul(&fa.coordinate(0), &fa.differential_gen(0)));
            assert!(fa.derham(&w).unwrap().poly.is_zero());
        }
    }

    #[test]
    fn grading_unit_square_differentiates_to_twice_the_mixed_product() {
        for cat in both() {
            let gl = &cat.gl;
            let alg = gl.alg();
            let de = inv_mono(alg, "delta", 2);
            let got = gl.derham(&el(gl, &de)).unwrap().poly;
            let expect = alg
                .mul(&inv_mono(alg, "delta", 1), &alg.gen_poly("ddelta"))
                .scale(&Scalar::int(2));
            assert_eq!(got, alg.normalize(&expect));
            // d(δ)·δ^{-1} + δ·d(δ^{-1}) = d(1) = 0
            let d1 = gl.derham(&el(gl, &inv_mono(alg, "delta", 1))).unwrap().poly;
            let dm1 = gl.derham(&el(gl, &inv_mono(alg, "delta", -1))).unwrap().poly;
            let s = alg
                .mul(&d1, &inv_mono(alg, "delta", -1))
                .add(&alg.mul(&inv_mono(alg, "delta", 1), &dm1));
            assert!(alg.normalize(&s).is_zero());
        }
    }

    #[test]
    fn degree_guards_reject_out_of_range_input() {
        let fa = &FQ.mi;
        let two = el(fa, &fa.pair_word(0, 1));
        assert_eq!(fa.derham(&two), Err(FormError::DegreeTooHigh(2)));
        let one = el(fa, &fa.differential_gen(0));
        assert_eq!(fa.hodge_star(&one), Err(FormError::NotATwoForm(1)));
        let mixed = fa.coordinate(0).add(&fa.differential_gen(0));
        assert_eq!(fa.element(&mixed), Err(FormError::MixedDegree(0, 1)));

        // a two-form touching the grading-unit differential has no star
        let gl = &FQ.gl;
        let w = gl.alg().mul(&gl.differential_gen(0), &gl.alg().gen_poly("ddelta"));
        let e = el(gl, &w);
        assert_eq!(e.degree, 2);
        assert_eq!(gl.hodge_star(&e), Err(FormError::OutsidePairSector));
    }

    #[test]
    fn involution_swaps_modes_and_is_involutive() {
        let mi_q = &FQ.mi;
        let mi_qi = &FQI.mi;
        // (dx11∧dx12)† = -dx12†∧dx11† = dx21∧dx22
        let w = mi_q.pair_word(0, 1);
        assert_eq!(mi_q.dagger_poly(mi_qi, &w), mi_qi.pair_word(2, 3));
        // a one-form exchange rule of one calculus maps into the other
        let lhs = mi_q.alg().mul_raw(&mi_q.differential_gen(0), &mi_q.coordinate(0));
        let rhs = mi_q.alg().normalize(&lhs);
        assert_eq!(
            mi_q.dagger_poly(mi_qi, &lhs),
            mi_q.dagger_poly(mi_qi, &rhs)
        );
        // involutive on a sample with coefficients
        let p = mi_q
            .alg()
            .mul(&mi_q.coordinate(1), &mi_q.differential_gen(2))
            .scale(&(&Scalar::imag() * &Scalar::s_pow(3)));
        let back = mi_qi.dagger_poly(mi_q, &mi_q.dagger_poly(mi_qi, &p));
        assert_eq!(back, mi_q.alg().normalize(&p));
        // the grading unit and its differential are self-adjoint
        let gl_q = &FQ.gl;
        let gl_qi = &FQI.gl;
        let d = inv_mono(gl_q.alg(), "delta", 1);
        assert_eq!(gl_q.dagger_poly(gl_qi, &d), inv_mono(gl_qi.alg(), "delta", 1));
        let dd = gl_q.alg().gen_poly("ddelta");
        assert_eq!(gl_q.dagger_poly(gl_qi, &dd), gl_qi.alg().gen_poly("ddelta"));
    }

    #[test]
    fn patch_calculi_embed_in_the_group_calculus() {
        let gl = &FQ.gl;
        let wts = [0i64, -2, 2, 0];
        let mut pairs: Vec<(&str, NCPoly)> = Vec::new();
        for i in 0..4 {
            let d = inv_mono(gl.alg(), "delta", 1);
            pairs.push((
                FormPatch::MI.base_names()[i],
                gl.alg().mul(&d, &gl.coordinate(i)).scale(&Scalar::s_pow(wts[i])),
            ));
            let d = inv_mono(gl.alg(), "delta", 1);
            pairs.push((
                FormPatch::MI.dbase_names()[i],
                gl.alg().mul(&d, &gl.differential_gen(i)).scale(&Scalar::s_pow(wts[i])),
            ));
        }
        let m = Morphism::by_names(FQ.mi.alg(), gl.alg(), &pairs, false, false);
        let rep = m.verify();
        assert!(rep.ok(), "{:?}", rep.failures.first());
    }

    #[test]
    fn rewrite_systems_are_locally_confluent_at_degree_four() {
        for cat in both() {
            for patch in ALL_PATCHES {
                let fa = cat.patch(patch);
                let fails = check_local_confluence(fa.alg(), 4);
                assert!(fails.is_empty(), "{}: {} failures", fa.alg().name(), fails.len());
            }
        }
    }

    #[test]
    fn structural_report_passes() {
        let report = verify_form_modules();
        for e in &report.entries {
            assert!(e.ok, "{}: {}", e.label, e.residual);
        }
        assert!(report.entries.len() >= 60);
        assert!(report.pass());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        // star is an involution on the whole pair module, not only on words
        #[test]
        fn star_involutive_on_random_pair_combinations(
            coeffs in proptest::collection::vec((-3i64..=3, -6i64..=6), 6),
        ) {
            let fa = &FQ.mi;
            let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
            let mut p = NCPoly::zero();
            for (&(a, b), &(n, e)) in pairs.iter().zip(&coeffs) {
                p = p.add(&fa.pair_word(a, b).scale(&(&Scalar::s_pow(e) * &Scalar::int(n))));
            }
            let w = fa.element(&p).unwrap();
            if w.poly.is_zero() {
                return Ok(());
            }
            let ss = fa.hodge_star(&fa.hodge_star(&w).unwrap()).unwrap();
            prop_assert_eq!(ss.poly, w.poly.clone());
            // the split reassembles and its halves are eigenvectors
            let (sd, asd) = fa.decompose_2form(&w).unwrap();
            prop_assert_eq!(sd.poly.add(&asd.poly), w.poly);
            prop_assert_eq!(fa.hodge_star(&sd).unwrap().poly, sd.poly.clone());
            prop_assert_eq!(fa.hodge_star(&asd).unwrap().poly, asd.poly.neg());
        }
    }
}
