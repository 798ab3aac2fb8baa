//! Complementary and quasi-complementary Gray codes over binary, `q`-ary,
//! combination and permutation universes, with a verifier and a small
//! Hamilton-path oracle.

pub mod binary;
pub mod cli;
pub mod combinations;
pub mod oracle;
pub mod permutations;
pub mod qary;
pub mod code;
pub mod error;
pub mod verify;
pub mod word;

pub use code::{Code, EndpointPath, Transform};
pub use error::{Error, Result};
pub use verify::{verify_code, CodeSpec, Metric, Pairing, Report, Universe};
pub use word::Word;
