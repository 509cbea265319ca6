//! Topologies on finite preference families.
//!
//! A preference over a finite set of alternatives is a weak order: an
//! ordered partition of the alternatives into indifference classes, best
//! class first. Every real-valued utility vector induces such an order
//! through the representation map [`order::represent`], and the quotient
//! of the pointwise topology on utility vectors under that map equips any
//! family of weak orders with its *final* topology — the unique topology
//! for which continuity of maps out of preferences coincides with
//! continuity of their compositions with the representation map.
//!
//! This crate builds that topology combinatorially (as a specialization
//! preorder keyed by tie-breaking refinement), probes it numerically with
//! an ε-perturbation oracle, and packages checkers that confirm or refute
//! the structural claims usually made about these spaces: triviality over
//! the full family, basis characterizations, separation axioms,
//! connectivity, and the behaviour of contour-set topologies on the
//! alternatives themselves. A small consumer-demand module exercises the
//! CES / Cobb-Douglas / Leontief limits that motivate the whole exercise.
//!
//! Everything is a pure value computation: fixed seed in, identical
//! report out.

pub mod bits;
pub mod econ;
pub mod error;
pub mod exogenous;
pub mod order;
pub mod paths;
pub mod quotient;
pub mod rat;
pub mod report;
pub mod rng;
pub mod topology;

pub use error::{Error, Result};
pub use order::{Family, MonotoneMap, UtilityVector, WeakOrder};
pub use quotient::PrefSpace;
pub use report::{ClaimReport, Verdict};
pub use topology::{FiniteTopology, SpecPreorder};
