//! Exact restricted partition functions `W(s, d)` written as sums of
//! Sylvester waves, with the identities behind that representation exposed as
//! checkable operations and two brute-force oracles to check them against.
//!
//! ```
//! use sylvester_core::{partition_quasipoly, GeneratorSet, Rational};
//!
//! let g: GeneratorSet = "1,2,3".parse().unwrap();
//! let w = partition_quasipoly(&g).unwrap();
//! assert_eq!(w.period(), 6);
//! assert_eq!(w.eval(6), Rational::from(7));
//! ```

pub mod arith;
pub mod bernoulli;
pub mod circulator;
pub mod error;
pub mod oracle;
pub mod par;
pub mod poly;
pub mod quasi;
pub mod verify;
pub mod waves;

pub use arith::Rational;
pub use error::{Error, Result};
pub use poly::Poly;
pub use quasi::{eval_quasipoly, QuasiPoly, QuasiPolyDocument};
pub use waves::{
    partition_quasipoly, partition_quasipoly_capped, sigma, sylvester_waves, unit_weight_lhs,
    wave1, wave_j, wave_j_reference, GeneratorSet, WaveSplit, DEFAULT_ENUMERATION_CAP,
};
