//! Shifted tableau calculus: PSST/QSST enumeration, Knuth equivalence over marked
//! alphabets, jeu de taquin, shifted Littlewood-Richardson coefficients, Schur P/Q
//! polynomials, and exact truncated checks of the symmetrized Littlewood-Richardson
//! expansions of Schur P- and Q-multiple zeta functions.

pub mod cli;
pub mod error;
pub mod jdt;
pub mod labeling;
pub mod lr;
pub mod mzf;
pub mod sample;
pub mod shapes;
pub mod symfunc;
pub mod tableaux;
pub mod words;

pub use error::{Error, ParseError, Result};
pub use shapes::{Cell, SkewShape, StrictPartition};
pub use tableaux::{Content, Kind, LabeledLetter, Letter, MarkedLetter, ShiftedTableau};
