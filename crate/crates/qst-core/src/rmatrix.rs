//! The 4x4 R-matrices behind the quadratic relations, their Hecke and
//! projector identities, and expansion of matrix-form relations into scalar
//! relations.
//!
//! Tensor index convention, fixed once for the whole crate: the pair basis is
//! ordered (1,1),(2,1),(1,2),(2,2), i.e. `pair_index(i,k) = (i-1) + 2(k-1)`
//! with the first factor fastest. Under this convention the printed 4x4
//! arrays are usable verbatim and an operator acting on the first tensor
//! factor lifts as `1 (x) A`.

use crate::engine::{Algebra, NCPoly};
use crate::linalg::Mat;
use crate::scalar::{PMode, Scalar};

/// Index of the pair (i,k), i,k in {1,2}, first factor fastest.
pub fn pair_index(i: usize, k: usize) -> usize {
    debug_assert!((1..=2).contains(&i) && (1..=2).contains(&k));
    (i - 1) + 2 * (k - 1)
}

/// Inverse of [`pair_index`].
pub fn pair_of_index(t: usize) -> (usize, usize) {
    debug_assert!(t < 4);
    (t % 2 + 1, t / 2 + 1)
}

/// Lift a 2x2 matrix to the pair space, acting on the first factor.
pub fn leg1(a: &Mat<Scalar>) -> Mat<Scalar> {
    Mat::identity(2).kron(a)
}

/// Lift a 2x2 matrix to the pair space, acting on the second factor.
pub fn leg2(a: &Mat<Scalar>) -> Mat<Scalar> {
    a.kron(&Mat::identity(2))
}

/// The flip P with P(e_i (x) e_k) = e_k (x) e_i.
pub fn permutation_matrix() -> Mat<Scalar> {
    Mat::from_fn(4, 4, |r, c| {
        let (i, k) = pair_of_index(c);
        if r == pair_index(k, i) {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    })
}

fn mat4(rows: [[Scalar; 4]; 4]) -> Mat<Scalar> {
    Mat::from_rows(rows.into_iter().map(|r| r.to_vec()).collect())
}

/// The R-matrices of one parameter mode, all over the pinned pair basis.
#[derive(Clone, Debug)]
pub struct RMatrices {
    pub mode: PMode,
    /// Q = diag(q^{1/4}, q^{-1/4}).
    pub q2: Mat<Scalar>,
    /// R-matrix of the g-generator relations.
    pub r12: Mat<Scalar>,
    /// R-matrix of the x-generator relations.
    pub ri: Mat<Scalar>,
    /// R-matrix of the y-generator relations.
    pub rj: Mat<Scalar>,
}

/// Build the tabulated R-matrices for one mode.
pub fn build_rmatrices(mode: PMode) -> RMatrices {
    let o = Scalar::zero;
    let pinv = mode.p_pow(-1);
    let a = &pinv - &Scalar::q_pow(1);
    let b = &pinv - &Scalar::q_pow(-1);
    let r12 = mat4([
        [pinv.clone(), o(), o(), o()],
        [o(), Scalar::one(), a.clone(), o()],
        [o(), b.clone(), Scalar::one(), o()],
        [o(), o(), o(), pinv.clone()],
    ]);
    let ri = mat4([
        [pinv.clone(), o(), o(), o()],
        [o(), Scalar::q_pow(-1), a.clone(), o()],
        [o(), b.clone(), Scalar::q_pow(1), o()],
        [o(), o(), o(), pinv.clone()],
    ]);
    let rj = mat4([
        [pinv.clone(), o(), o(), o()],
        [o(), Scalar::q_pow(1), a, o()],
        [o(), b, Scalar::q_pow(-1), o()],
        [o(), o(), o(), pinv],
    ]);
    let q2 = Mat::from_rows(vec![
        vec![Scalar::s_pow(1), Scalar::zero()],
        vec![Scalar::zero(), Scalar::s_pow(-1)],
    ]);
    RMatrices { mode, q2, r12, ri, rj }
}

impl RMatrices {
    fn q_legs(&self) -> (Mat<Scalar>, Mat<Scalar>, Mat<Scalar>, Mat<Scalar>) {
        let q1 = leg1(&self.q2);
        let q2 = leg2(&self.q2);
        let q1i = q1.inverse().unwrap();
        let q2i = q2.inverse().unwrap();
        (q1, q2, q1i, q2i)
    }

    /// Q2^-1 Q1 R12 Q1 Q2^-1, assembled from the factors. Must reproduce
    /// the tabulated `ri`.
    pub fn ri_from_factors(&self) -> Mat<Scalar> {
        let (q1, _, _, q2i) = self.q_legs();
        q2i.mul(&q1).mul(&self.r12).mul(&q1).mul(&q2i)
    }

    /// Q2 Q1^-1 R12 Q1^-1 Q2, assembled from the factors. Must reproduce
    /// the tabulated `rj`.
    pub fn rj_from_factors(&self) -> Mat<Scalar> {
        let (_, q2, q1i, _) = self.q_legs();
        q2.mul(&q1i).mul(&self.r12).mul(&q1i).mul(&q2)
    }

    /// The "21" companion of `ri`: both tensor legs of `ri` flipped, which
    /// for these diagonal twists is Q1^-1 Q2 R21 Q2 Q1^-1 with R21 = R12^t.
    /// The printed formula garbles the trailing factors; this is the unique
    /// reading that keeps the Hecke identity and the 1-form relations
    /// consistent.
    pub fn ri21(&self) -> Mat<Scalar> {
        let (_, q2, q1i, _) = self.q_legs();
        q1i.mul(&q2).mul(&self.r12.transpose()).mul(&q2).mul(&q1i)
    }

    /// The "21" companion of `rj`: Q1 Q2^-1 R21 Q2^-1 Q1.
    pub fn rj21(&self) -> Mat<Scalar> {
        let (q1, _, _, q2i) = self.q_legs();
        q1.mul(&q2i).mul(&self.r12.transpose()).mul(&q2i).mul(&q1)
    }
}

/// Check R - (R21)^-1 = (p^-1 - p) P and Rhat^2 = (p^-1 - p) Rhat + 1 with
/// Rhat = P R. The companion R21 is the flip P R P of both tensor legs; for
/// the untwisted R12 this coincides with the transpose, while the twisted
/// matrices need the flip for the subtraction identity to close.
///
/// Panics if R21 is singular; every catalog matrix is invertible.
pub fn check_hecke(r: &Mat<Scalar>, mode: PMode) -> bool {
    let p0 = permutation_matrix();
    let r21_inv = p0
        .mul(r)
        .mul(&p0)
        .inverse()
        .expect("R21 is singular; not a catalog R-matrix");
    let p = permutation_matrix();
    let gap = mode.p_pow(-1) - mode.p_pow(1);
    if !r.sub(&r21_inv).sub(&p.scale(&gap)).is_zero() {
        return false;
    }
    let rhat = p.mul(r);
    rhat.mul(&rhat)
        .sub(&rhat.scale(&gap))
        .sub(&Mat::identity(4))
        .is_zero()
}

/// The idempotents P+ = (Rhat + p 1)/(p + p^-1), P- = (-Rhat + p^-1 1)/(p + p^-1).
///
/// Panics unless `r` passes [`check_hecke`]; the projector algebra rests on it.
pub fn build_projectors(r: &Mat<Scalar>, mode: PMode) -> (Mat<Scalar>, Mat<Scalar>) {
    assert!(check_hecke(r, mode), "Hecke identity fails; no projector splitting");
    let rhat = permutation_matrix().mul(r);
    let denom = (mode.p_pow(1) + mode.p_pow(-1)).inv();
    let plus = rhat.add(&Mat::identity(4).scale(&mode.p_pow(1))).scale(&denom);
    let minus = rhat
        .neg()
        .add(&Mat::identity(4).scale(&mode.p_pow(-1)))
        .scale(&denom);
    (plus, minus)
}

/// Lift a 4x4 pair matrix to the triple space, acting on legs `a` and `b`
/// (0-based, a < b < 3) with `a` as the first factor of the pair.
pub fn embed_pair_on_legs(r: &Mat<Scalar>, a: usize, b: usize) -> Mat<Scalar> {
    assert!(a < b && b < 3);
    let digit = |t: usize, leg: usize| (t >> leg) & 1;
    Mat::from_fn(8, 8, |row, col| {
        for leg in 0..3 {
            if leg != a && leg != b && digit(row, leg) != digit(col, leg) {
                return Scalar::zero();
            }
        }
        let rr = digit(row, a) + 2 * digit(row, b);
        let cc = digit(col, a) + 2 * digit(col, b);
        r[(rr, cc)].clone()
    })
}

/// Quantum Yang-Baxter on the triple space: R12 R13 R23 = R23 R13 R12.
pub fn check_yang_baxter(r: &Mat<Scalar>) -> bool {
    let r12 = embed_pair_on_legs(r, 0, 1);
    let r13 = embed_pair_on_legs(r, 0, 2);
    let r23 = embed_pair_on_legs(r, 1, 2);
    r12.mul(&r13).mul(&r23) == r23.mul(&r13).mul(&r12)
}

/// A small dense matrix of noncommutative polynomials over one algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<NCPoly>,
}

impl PolyMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMat { rows, cols, data: vec![NCPoly::zero(); rows * cols] }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> NCPoly) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        PolyMat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<NCPoly>>) -> Self {
        let nc = rows[0].len();
        assert!(rows.iter().all(|r| r.len() == nc));
        let nr = rows.len();
        PolyMat { rows: nr, cols: nc, data: rows.into_iter().flatten().collect() }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { NCPoly::one() } else { NCPoly::zero() })
    }

    pub fn at(&self, r: usize, c: usize) -> &NCPoly {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: NCPoly) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add(&self, o: &Self) -> Self {
        assert!(self.rows == o.rows && self.cols == o.cols);
        PolyMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert!(self.rows == o.rows && self.cols == o.cols);
        PolyMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        PolyMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|e| e.scale(s)).collect(),
        }
    }

    /// Entry-by-entry product without normalization; words concatenate as
    /// written so the result can feed span comparisons in the free algebra.
    pub fn mul_raw(&self, alg: &Algebra, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows);
        Self::from_fn(self.rows, o.cols, |r, c| {
            let mut acc = NCPoly::zero();
            for k in 0..self.cols {
                acc = acc.add(&alg.mul_raw(self.at(r, k), o.at(k, c)));
            }
            acc
        })
    }

    /// Entry-by-entry product with normalization in `alg`.
    pub fn mul(&self, alg: &Algebra, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows);
        Self::from_fn(self.rows, o.cols, |r, c| {
            let mut acc = NCPoly::zero();
            for k in 0..self.cols {
                acc = acc.add(&alg.mul(self.at(r, k), o.at(k, c)));
            }
            acc
        })
    }

    pub fn normalize(&self, alg: &Algebra) -> Self {
        PolyMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|e| alg.normalize(e)).collect(),
        }
    }

    pub fn map(&self, f: impl Fn(&NCPoly) -> NCPoly) -> Self {
        PolyMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(&f).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    /// Lift a 2x2 generator matrix to the pair space, first factor.
    pub fn leg1(&self) -> Self {
        assert!(self.rows == 2 && self.cols == 2);
        Self::from_fn(4, 4, |r, c| {
            let (i, k) = pair_of_index(r);
            let (j, l) = pair_of_index(c);
            if k == l { self.at(i - 1, j - 1).clone() } else { NCPoly::zero() }
        })
    }

    /// Lift a 2x2 generator matrix to the pair space, second factor.
    pub fn leg2(&self) -> Self {
        assert!(self.rows == 2 && self.cols == 2);
        Self::from_fn(4, 4, |r, c| {
            let (i, k) = pair_of_index(r);
            let (j, l) = pair_of_index(c);
            if i == j { self.at(k - 1, l - 1).clone() } else { NCPoly::zero() }
        })
    }
}

/// Multiply a scalar 4x4 matrix into a PolyMat on the left.
pub fn scalar_times_poly(r: &Mat<Scalar>, m: &PolyMat) -> PolyMat {
    assert!(r.rows == 4 && r.cols == 4 && m.rows == 4);
    PolyMat::from_fn(4, m.cols, |row, col| {
        let mut acc = NCPoly::zero();
        for k in 0..4 {
            if !r[(row, k)].is_zero() {
                acc = acc.add(&m.at(k, col).scale(&r[(row, k)]));
            }
        }
        acc
    })
}

/// Multiply a scalar 4x4 matrix into a PolyMat on the right.
pub fn poly_times_scalar(m: &PolyMat, r: &Mat<Scalar>) -> PolyMat {
    assert!(r.rows == 4 && r.cols == 4 && m.cols == 4);
    PolyMat::from_fn(m.rows, 4, |row, col| {
        let mut acc = NCPoly::zero();
        for k in 0..4 {
            if !r[(k, col)].is_zero() {
                acc = acc.add(&m.at(row, k).scale(&r[(k, col)]));
            }
        }
        acc
    })
}

/// The 16 entries of R_left M1 N2 - sign N2 M1 R_right, without any
/// normalization; words appear exactly as the matrix products spell them.
/// `m` and `n` are 2x2 generator matrices over `alg`.
pub fn expand_matrix_relation(
    alg: &Algebra,
    r_left: &Mat<Scalar>,
    m: &PolyMat,
    n: &PolyMat,
    r_right: &Mat<Scalar>,
    sign: i64,
) -> Vec<NCPoly> {
    let m1 = m.leg1();
    let n2 = n.leg2();
    let lhs = scalar_times_poly(r_left, &m1.mul_raw(alg, &n2));
    let rhs = poly_times_scalar(&n2.mul_raw(alg, &m1), r_right);
    let sgn = Scalar::int(sign);
    lhs.sub(&rhs.scale(&sgn)).data
}

/// Row vector of a degree-2 polynomial over the two-letter word basis of the
/// free algebra on `n_gens` generators (word g_a g_b at column a*n_gens + b).
/// Panics on anything that is not a plain combination of two-letter words.
pub fn degree2_row(n_gens: usize, f: &NCPoly) -> Vec<Scalar> {
    let mut row = vec![Scalar::zero(); n_gens * n_gens];
    for (w, c) in f.terms() {
        assert!(w.inv.is_empty() && w.reg.len() == 2, "not a two-letter word");
        let a = w.reg[0] as usize;
        let b = w.reg[1] as usize;
        row[a * n_gens + b] = &row[a * n_gens + b] + c;
    }
    row
}

/// Span of a list of degree-2 polynomials as a matrix over the two-letter
/// word basis.
pub fn degree2_span_matrix(n_gens: usize, fs: &[NCPoly]) -> Mat<Scalar> {
    Mat::from_rows(fs.iter().map(|f| degree2_row(n_gens, f)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::same_row_span;
    use crate::scalar::{gr_int, gr_rat, GRat};

    fn modes() -> [PMode; 2] {
        [PMode::PEqQ, PMode::PEqQInv]
    }

    #[test]
    fn tabulated_entries_and_factorizations() {
        for mode in modes() {
            let rm = build_rmatrices(mode);
            assert_eq!(rm.ri[(1, 1)], Scalar::q_pow(-1));
            assert_eq!(rm.ri[(2, 2)], Scalar::q_pow(1));
            assert_eq!(rm.rj[(1, 1)], Scalar::q_pow(1));
            assert_eq!(rm.rj[(2, 2)], Scalar::q_pow(-1));
            assert_eq!(rm.ri_from_factors(), rm.ri);
            assert_eq!(rm.rj_from_factors(), rm.rj);
            // rj is ri with the middle diagonal inverted; off-diagonals agree.
            assert_eq!(rm.ri[(1, 2)], rm.rj[(1, 2)]);
            assert_eq!(rm.ri[(2, 1)], rm.rj[(2, 1)]);
        }
    }

    #[test]
    fn r12_specializes_to_identity_at_q_one() {
        for mode in modes() {
            let rm = build_rmatrices(mode);
            for r in 0..4 {
                for c in 0..4 {
                    let v = rm.r12[(r, c)].specialize(&gr_int(1)).unwrap();
                    assert_eq!(v, if r == c { gr_int(1) } else { gr_int(0) });
                }
            }
        }
    }

    #[test]
    fn hecke_holds_for_all_three_and_fails_when_perturbed() {
        for mode in modes() {
            let rm = build_rmatrices(mode);
            for r in [&rm.r12, &rm.ri, &rm.rj] {
                assert!(check_hecke(r, mode));
                // The 21-companions satisfy the same quadratic.
            }
            assert!(check_hecke(&rm.ri21(), mode));
            assert!(check_hecke(&rm.rj21(), mode));
            let mut bad = rm.r12.clone();
            bad[(1, 1)] = mode.p_pow(1);
            assert!(!check_hecke(&bad, mode));
        }
    }

    #[test]
    fn hecke_couples_r12_with_its_21_companion() {
        // For ri and rj the "21" matrix in the subtraction identity is not
        // the plain transpose but the leg-flipped twist.
        for mode in modes() {
            let rm = build_rmatrices(mode);
            let p = permutation_matrix();
            let gap = mode.p_pow(-1) - mode.p_pow(1);
            for (r, r21) in [(&rm.ri, rm.ri21()), (&rm.rj, rm.rj21())] {
                let lhs = r.sub(&r21.inverse().unwrap());
                assert_eq!(lhs, p.scale(&gap));
            }
        }
    }

    #[test]
    fn projectors_split_resolve_and_orthogonalize() {
        for mode in modes() {
            let rm = build_rmatrices(mode);
            for r in [&rm.r12, &rm.ri, &rm.rj] {
                let (plus, minus) = build_projectors(r, mode);
                assert!(plus.add(&minus).sub(&Mat::identity(4)).is_zero());
                assert!(plus.mul(&plus).sub(&plus).is_zero());
                assert!(minus.mul(&minus).sub(&minus).is_zero());
                assert!(plus.mul(&minus).is_zero());
                assert!(minus.mul(&plus).is_zero());
                let star = plus.sub(&minus);
                assert!(star.mul(&star).sub(&Mat::identity(4)).is_zero());
            }
        }
    }

    #[test]
    fn projector_ranks_at_a_numeric_point() {
        // Oracle: specialize q = 1/2 and row-reduce over the Gaussian
        // rationals. The symmetric/antisymmetric split has ranks 3 and 1.
        for mode in modes() {
            let rm = build_rmatrices(mode);
            let (plus, minus) = build_projectors(&rm.r12, mode);
            let at = |m: &Mat<Scalar>| -> Mat<GRat> {
                Mat::from_fn(4, 4, |r, c| m[(r, c)].specialize(&gr_rat(1, 2)).unwrap())
            };
            assert_eq!(at(&plus).rank(), 3);
            assert_eq!(at(&minus).rank(), 1);
        }
    }

    #[test]
    fn yang_baxter_on_the_triple_space() {
        for mode in modes() {
            let rm = build_rmatrices(mode);
            assert!(check_yang_baxter(&rm.r12));
            assert!(check_yang_baxter(&rm.ri));
            assert!(check_yang_baxter(&rm.rj));
        }
    }

    fn gl2q_free() -> Algebra {
        // The four g-generators with no rules; RTT expansion happens in the
        // free algebra so the degree-2 spans can be compared.
        let mut b = crate::engine::PresentationBuilder::new("gl2q-free");
        for name in ["g11", "g12", "g21", "g22"] {
            b.gen(name);
        }
        b.build()
    }

    fn gl2q_relation_rows(alg: &Algebra) -> Vec<NCPoly> {
        let g = |n: &str| alg.gen_poly(n);
        let q1 = Scalar::q_pow(-1);
        let pair = |a: &NCPoly, b: &NCPoly| alg.mul_raw(a, b);
        let (g11, g12, g21, g22) = (g("g11"), g("g12"), g("g21"), g("g22"));
        vec![
            pair(&g11, &g12).sub(&pair(&g12, &g11).scale(&q1)),
            pair(&g11, &g21).sub(&pair(&g21, &g11).scale(&q1)),
            pair(&g12, &g22).sub(&pair(&g22, &g12).scale(&q1)),
            pair(&g21, &g22).sub(&pair(&g22, &g21).scale(&q1)),
            pair(&g12, &g21).sub(&pair(&g21, &g12)),
            pair(&g11, &g22)
                .sub(&pair(&g12, &g21).scale(&q1))
                .sub(&pair(&g22, &g11))
                .add(&pair(&g21, &g12).scale(&Scalar::q_pow(1))),
        ]
    }

    #[test]
    fn rtt_span_equals_the_quadratic_relations() {
        for mode in modes() {
            let rm = build_rmatrices(mode);
            let alg = gl2q_free();
            let g = |n: &str| alg.gen_poly(n);
            let t = PolyMat::from_rows(vec![
                vec![g("g11"), g("g12")],
                vec![g("g21"), g("g22")],
            ]);
            let entries = expand_matrix_relation(&alg, &rm.r12, &t, &t, &rm.r12, 1);
            assert_eq!(entries.len(), 16);
            let span = degree2_span_matrix(4, &entries);
            let rel_span = degree2_span_matrix(4, &gl2q_relation_rows(&alg));
            assert_eq!(rel_span.rank(), 6);
            assert!(same_row_span(&span, &rel_span));
        }
    }

    #[test]
    fn flip_conjugation_matches_transpose_for_r12() {
        // R21 = R12^t is the same matrix as the leg flip P R12 P; the
        // twisted companions rely on this identification.
        for mode in modes() {
            let rm = build_rmatrices(mode);
            let p = permutation_matrix();
            assert_eq!(p.mul(&rm.r12).mul(&p), rm.r12.transpose());
        }
    }
}
