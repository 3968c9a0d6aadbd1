//! Compressed suffix tree, suffix array, inverse suffix array, LCP arrays and
//! text access over the CDAWG of a string, navigated with a heavy path
//! decomposition of the trees its DAGs generate.

pub mod cdawg;
pub mod corpus;
pub mod cst;
pub mod error;
pub mod hpd;
pub mod index_file;
pub mod probe;
pub mod revgram;
pub mod rlbwt;
pub mod textkit;
pub mod verify;

pub use cdawg::{Cdawg, Mode};
pub use cst::{Cst, CstOptions, NodeId};
pub use error::{Error, Result};
pub use hpd::{traced, LaKind, Trace};
pub use revgram::RevGrammar;
pub use textkit::{OracleIndex, Text};
