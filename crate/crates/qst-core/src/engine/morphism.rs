//! Generator maps between presentations, with verification.
//!
//! A map is determined by generator images; `verify` checks that every
//! defining rule and every invertible-generator commutation of the source
//! lands in zero. `anti` reverses products, `conj` conjugates coefficients,
//! and the two compose independently, which covers algebra maps,
//! anti-automorphisms (antipodes) and the conjugate-linear involutions.

use super::poly::NCPoly;
use super::pres::Algebra;
use super::word::{GenId, Word};
use crate::scalar::Scalar;

#[derive(Clone)]
pub struct Morphism<'a> {
    pub src: &'a Algebra,
    pub dst: &'a Algebra,
    pub images: Vec<NCPoly>,
    pub anti: bool,
    pub conj: bool,
}

#[derive(Clone, Debug)]
pub struct MorphismFailure {
    pub relation: String,
    pub residue: String,
}

#[derive(Clone, Debug, Default)]
pub struct MorphismReport {
    pub checked: usize,
    pub failures: Vec<MorphismFailure>,
}

impl MorphismReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

impl<'a> Morphism<'a> {
    pub fn new(src: &'a Algebra, dst: &'a Algebra, images: Vec<NCPoly>) -> Self {
        Self::with_flags(src, dst, images, false, false)
    }

    pub fn with_flags(
        src: &'a Algebra,
        dst: &'a Algebra,
        images: Vec<NCPoly>,
        anti: bool,
        conj: bool,
    ) -> Self {
        assert_eq!(images.len(), src.n_gens(), "one image per generator");
        Morphism { src, dst, images, anti, conj }
    }

    /// Build from `(name, image)` pairs covering every generator.
    pub fn by_names(
        src: &'a Algebra,
        dst: &'a Algebra,
        pairs: &[(&str, NCPoly)],
        anti: bool,
        conj: bool,
    ) -> Self {
        let mut images: Vec<Option<NCPoly>> = vec![None; src.n_gens()];
        for (name, img) in pairs {
            let g = src.g(name) as usize;
            assert!(images[g].is_none(), "duplicate image for {}", name);
            images[g] = Some(img.clone());
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(g, img)| {
                img.unwrap_or_else(|| panic!("no image for {}", src.gen_name(g as GenId)))
            })
            .collect();
        Self::with_flags(src, dst, images, anti, conj)
    }

    // Integer powers are only meaningful for images that are unit monomials
    // in a single invertible generator, which is all an invertible source
    // generator is allowed to map to.
    fn image_pow(&self, g: GenId, e: i32) -> NCPoly {
        let img = &self.images[g as usize];
        if e == 1 {
            return img.clone();
        }
        let mut terms = img.terms();
        let (w, c) = terms
            .next()
            .unwrap_or_else(|| panic!("image of {} is zero", self.src.gen_name(g)));
        assert!(
            terms.next().is_none() && w.reg.is_empty() && w.inv.len() == 1,
            "image of invertible {} is not an invertible monomial",
            self.src.gen_name(g)
        );
        let (y, k) = w.inv[0];
        NCPoly::term(Word::inv_gen(y, k * e), c.pow(e as i64))
    }

    pub fn apply(&self, p: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, c) in p.terms() {
            let mut atoms: Vec<(GenId, i32)> = w
                .reg
                .iter()
                .map(|&g| (g, 1))
                .chain(w.inv.iter().copied())
                .collect();
            if self.anti {
                atoms.reverse();
            }
            let mut acc = NCPoly::one();
            for (g, e) in atoms {
                acc = self.dst.mul(&acc, &self.image_pow(g, e));
            }
            let cc = if self.conj { c.conj() } else { c.clone() };
            out = out.add(&acc.scale(&cc));
        }
        self.dst.normalize(&out)
    }

    fn scalar_image(&self, c: &Scalar) -> Scalar {
        if self.conj {
            c.conj()
        } else {
            c.clone()
        }
    }

    /// Check all defining relations and commutation factors of the source.
    pub fn verify(&self) -> MorphismReport {
        let mut report = MorphismReport::default();
        for r in self.src.rules() {
            let mut rel = r.rhs.neg();
            rel.add_term(Word::from_regs(r.lhs.iter().copied()), Scalar::one());
            let residue = self.apply(&rel);
            report.checked += 1;
            if !residue.is_zero() {
                report.failures.push(MorphismFailure {
                    relation: self.src.rule_str(r),
                    residue: self.dst.poly_str(&residue),
                });
            }
        }
        for x in 0..self.src.n_gens() as GenId {
            if !self.src.pres().is_invertible(x) {
                continue;
            }
            for g in 0..self.src.n_gens() as GenId {
                if g == x {
                    continue;
                }
                // source relation x·g = c·g·x maps to
                //   φ(x)φ(g) = φ(c)·φ(g)φ(x)      (algebra map)
                //   φ(g)φ(x) = φ(c)·φ(x)φ(g)      (anti map)
                let c = self.scalar_image(self.src.pres().comm_factor(x, g));
                let ix = self.image_pow(x, 1);
                let ig = self.image_pow(g, 1);
                let (lhs, rhs) = if self.anti {
                    (self.dst.mul(&ig, &ix), self.dst.mul(&ix, &ig).scale(&c))
                } else {
                    (self.dst.mul(&ix, &ig), self.dst.mul(&ig, &ix).scale(&c))
                };
                let residue = self.dst.normalize(&lhs.sub(&rhs));
                report.checked += 1;
                if !residue.is_zero() {
                    report.failures.push(MorphismFailure {
                        relation: format!(
                            "{}*{} = ({})*{}*{}",
                            self.src.gen_name(x),
                            self.src.gen_name(g),
                            self.src.pres().comm_factor(x, g),
                            self.src.gen_name(g),
                            self.src.gen_name(x)
                        ),
                        residue: self.dst.poly_str(&residue),
                    });
                }
            }
        }
        report
    }

    /// `other ∘ self`, with flags composing by parity.
    pub fn then(&self, other: &Morphism<'a>) -> Morphism<'a> {
        let images = self
            .images
            .iter()
            .map(|img| other.apply(img))
            .collect();
        Morphism {
            src: self.src,
            dst: other.dst,
            images,
            anti: self.anti != other.anti,
            conj: self.conj != other.conj,
        }
    }

    /// Same images on every generator, normalized in the destination.
    pub fn eq_on_generators(&self, other: &Morphism<'_>) -> bool {
        if self.images.len() != other.images.len() {
            return false;
        }
        self.images
            .iter()
            .zip(&other.images)
            .all(|(a, b)| self.dst.eq_mod(a, b))
    }

    pub fn is_identity(&self) -> bool {
        (0..self.src.n_gens() as GenId).all(|g| {
            let img = self.image_pow(g, 1);
            let expect = if self.src.pres().is_invertible(g) {
                NCPoly::term(Word::inv_gen(g, 1), Scalar::one())
            } else {
                NCPoly::term(Word::gen(g), Scalar::one())
            };
            self.dst.eq_mod(&img, &expect)
        })
    }
}
