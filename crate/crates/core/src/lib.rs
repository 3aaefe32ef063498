//! Binomial edge ideals and the regularity of their powers.
//!
//! Exact arithmetic over `Z/p`: Gröbner bases, ideal operations, minimal
//! graded free resolutions (Schreyer frame + rank pruning, with a Koszul
//! homology cross-check), graph families, and checks of the regularity
//! formulas for `J_G^s` and of poset-sequence criteria.

pub mod bei;
pub mod error;
pub mod field;
pub mod graph;
pub mod groebner;
pub mod ideal;
pub mod monomial;
pub mod parse;
pub mod polynomial;
pub mod resolution;
pub mod sequences;
pub mod suite;

pub use bei::{
    betti_power, binomial, build_bei, reg_power, BinomialEdgeIdeal, ComputeConfig, Expected,
    Family, Instance, Theorem, TheoremReport, Verdict,
};
pub use error::{Error, Result};
pub use field::{PrimeField, DEFAULT_PRIME};
pub use graph::Graph;
pub use groebner::GroebnerBasis;
pub use ideal::Ideal;
pub use monomial::{Monomial, MonomialOrder};
pub use polynomial::{Polynomial, Ring};
pub use resolution::{minimal_resolution, regularity, BettiTable, Regularity, ResolutionOptions};
pub use sequences::{Poset, PosetSequence};
