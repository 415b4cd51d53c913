//! Discrete Morse theory for Vietoris–Rips complexes of integer metric spaces.
//!
//! The crate is organised around the objects the contractibility argument for
//! `Rips_t(Z^n)` manipulates:
//!
//! * [`metric`]: finite integer metric spaces and the ℓ¹ lattice `Z^n`.
//! * [`complex`]: finite simplicial complexes (flag, order, join, nerve).
//! * [`homology`]: reduced homology over GF(2), collapses and contractibility verdicts.
//! * [`morse`]: the Morse function `h`, descending links and filtration checks.
//! * [`covering`]: ℓ¹ ball coverings, an exact simplex solver and Helly cross-checks.
//!
//! Every comparison involving radii or Morse values is carried out in exact
//! rational arithmetic.

pub(crate) mod bitset;
pub mod complex;
pub mod covering;
pub mod homology;
pub mod metric;
pub mod morse;
pub mod rational;

pub use complex::{FinitePoset, Graph, SimplicialComplex};
pub use covering::lp::{LinearProgram, LpOutcome};
pub use covering::{CoveringReport, EnclosingBall, HellyReport};
pub use homology::{BettiVector, ContractibilityVerdict, VerdictStatus, Witness};
pub use metric::{FiniteMetricSpace, Lattice, LatticePoint, MetricSpace, VertexSet, Window};
pub use morse::{DescendingLinkReport, LinkConfig, LinkMethod, MorseValue, VerificationReport};
pub use rational::Rational;
