//! Exact enumeration of cycle counts in products of permutations with
//! n-cycles.
//!
//! * [`poly`]: exact rationals, dense polynomials, falling factorials, the
//!   backward shift operator and unit-interval integration.
//! * [`combinat`]: partitions, permutations, class sizes, Stirling numbers.
//! * [`cycle_poly`]: the cycle-count polynomials `P_lambda(q)`.
//! * [`probability`]: same-cycle probabilities for products of two n-cycles.
//! * [`roots`]: exact root-location and coefficient-shape checks.
//! * [`oracle`]: brute-force enumeration used as ground truth.
//! * [`verify`]: the aggregated invariant suite.

pub mod combinat;
pub mod cycle_poly;
pub mod error;
pub mod oracle;
pub mod poly;
pub mod probability;
pub mod roots;
pub mod verify;

pub use combinat::{Partition, Permutation};
pub use cycle_poly::{CyclePolynomial, Method};
pub use error::{Error, Result};
pub use oracle::OracleConfig;
pub use poly::{Polynomial, Rational, Var};
pub use probability::{ProbabilityResult, Route};
pub use roots::{CoeffProfile, RootLocationReport};
