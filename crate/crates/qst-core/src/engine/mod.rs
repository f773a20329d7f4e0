//! Noncommutative rewriting over exact scalars.
//!
//! - [`word`], [`poly`]: monomials with invertible exponent blocks and their
//!   linear combinations.
//! - [`pres`]: presentations, the rewrite loop, relation orientation.
//! - [`complete`]: local confluence checking and truncated completion.
//! - [`hilbert`]: graded dimension counts via forbidden-subword automata.
//! - [`morphism`]: generator maps, anti-maps and conjugate-linear maps.
//! - [`tensor`]: tensor squares for coproduct verification.

pub mod complete;
pub mod hilbert;
pub mod morphism;
pub mod poly;
pub mod pres;
pub mod tensor;
pub mod word;

pub use complete::{check_local_confluence, complete, Ambiguity, ConfluenceFailure};
pub use hilbert::{count_normal_words, count_normal_words_graded};
pub use morphism::{Morphism, MorphismFailure, MorphismReport};
pub use poly::NCPoly;
pub use pres::{orient_relations, Algebra, GenInfo, Presentation, PresentationBuilder, Rule};
pub use tensor::TensorSquare;
pub use word::{GenId, Word};
