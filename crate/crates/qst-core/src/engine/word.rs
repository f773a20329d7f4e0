//! Words in a finitely generated monoid with designated invertible symbols.

use smallvec::SmallVec;
use std::cmp::Ordering;

/// Index into a presentation's generator table.
pub type GenId = u8;

/// A monomial: a sequence of regular generators followed by a block of
/// invertible generators with integer exponents.
///
/// The invertible block sits at the right end of the word; the owning
/// presentation's commutation table is what moves it across regular symbols,
/// so a `Word` on its own is only data. Invariants: `inv` is sorted by
/// generator id and holds no zero exponents.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word {
    pub reg: SmallVec<[GenId; 12]>,
    pub inv: SmallVec<[(GenId, i32); 2]>,
}

impl Word {
    pub fn one() -> Self {
        Word::default()
    }

    pub fn gen(g: GenId) -> Self {
        Word { reg: SmallVec::from_slice(&[g]), inv: SmallVec::new() }
    }

    pub fn from_regs<I: IntoIterator<Item = GenId>>(gens: I) -> Self {
        Word { reg: gens.into_iter().collect(), inv: SmallVec::new() }
    }

    /// `g^e` for an invertible generator.
    pub fn inv_gen(g: GenId, e: i32) -> Self {
        let mut w = Word::one();
        if e != 0 {
            w.inv.push((g, e));
        }
        w
    }

    pub fn is_one(&self) -> bool {
        self.reg.is_empty() && self.inv.is_empty()
    }

    /// Number of regular symbols.
    pub fn len(&self) -> usize {
        self.reg.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reg.is_empty()
    }

    /// Exponent of an invertible generator in the trailing block.
    pub fn inv_exp(&self, g: GenId) -> i32 {
        self.inv
            .iter()
            .find(|(h, _)| *h == g)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }
}

/// Degree-lexicographic order: regular length first, then the regular symbols
/// lexicographically in declared generator order, then the invertible block.
/// Compatible with concatenation on the regular part, which is what makes
/// degree-nonincreasing rules terminate.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.reg
            .len()
            .cmp(&other.reg.len())
            .then_with(|| self.reg.cmp(&other.reg))
            .then_with(|| self.inv.cmp(&other.inv))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
