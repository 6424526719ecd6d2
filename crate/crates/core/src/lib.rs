//! Finitely presented graded algebras over the rationals: normal forms,
//! growth, Hilbert series, PBW dimension counts and Veronese quadratization.

pub mod alphabet;
pub mod automaton;
pub mod builtins;
pub mod error;
pub mod growth;
pub mod lie;
pub mod linalg;
pub mod order;
pub mod pbw;
pub mod poly;
pub mod presentation;
pub mod rewrite;
pub mod veronese;
mod serde_display;
pub mod word;

pub use alphabet::{Alphabet, Generator};
pub use growth::{
    classify_growth, cumulative, normal_word_counts, partition_p, DimensionSeries, Flavor, GrowthClass,
    GrowthLabel,
};
pub use error::{Error, ParseError, Result};
pub use order::{MonomialOrder, OrderKind};
pub use poly::{NcPoly, Scalar};
pub use presentation::{parse_presentation, Presentation};
pub use rewrite::{orient, Ambiguity, AmbiguityKind, RewriteRule, RewriteSystem};
pub use word::Word;
