//! Tile self-assembly model and hollow-box tile programs.
//!
//! The crate models DNA-tile self-assembly at the symbolic level: side labels
//! are k-tuples of symbols closed under complementation, tiles bind when
//! facing sides are exactly complementary, and bonds carry discrete
//! threshold-temperature classes. On top of the model sit two compilers that
//! turn a box side length n and a pattern alphabet size |Pi| into executable
//! assembly programs (a sequential row-by-row schedule and a two-step
//! all-together schedule), a reproducible stochastic simulator, an analyzer
//! for the five complexity measures, and a verifier for the assembled shape.

pub mod analyzer;
pub mod compiler;
pub mod dna;
pub mod error;
pub mod formats;
pub mod layout;
pub mod program;
pub mod render;
pub mod side;
pub mod sim;
pub mod symbol;
pub mod verifier;
pub mod words;

pub use error::{CompileError, FormatError, ModelError, SimError};
