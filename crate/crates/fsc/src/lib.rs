//! Finite-state complexity of binary strings.
//!
//! A description of a string `x` is a pair `(σ, p)` where `σ` encodes a
//! finite transducer under some computable scheme and the transducer maps
//! the program `p` to `x`; its size is `|σ| + |p|`. The complexity of `x`
//! is the least description size. This crate provides the transducer model
//! ([`transducer`]), the standard self-delimiting encoding and structural
//! enumeration ([`codec`]), alternative computable schemes ([`encodings`]),
//! exact minimal-description search ([`search`]), concrete constructions
//! with verifiable size bounds ([`constructions`]), and the `fsc` command
//! line ([`cli`]).
//!
//! Search inner loops are data-parallel via rayon when the default
//! `parallel` feature is on; without it everything runs sequentially with
//! identical results.

pub mod bits;
pub mod cli;
pub mod codec;
pub mod constructions;
pub mod encodings;
pub mod search;
pub mod transducer;

pub use bits::BitString;
pub use codec::{decode_std, encode_std, enumerate_std, is_valid_std};
pub use encodings::{snm_build, CodeRecord, Scheme};
pub use search::{complexity, minimal_program, power_probe, scan, ComplexityReport, SearchOptions};
pub use transducer::Transducer;
