//! Exterior and Clifford semialgebras over commutative semirings equipped
//! with a negation map.
//!
//! Ground scalars have no subtraction; a formal negation is obtained by
//! passing to pairs (positive part, negative part) with a twisted product.
//! Identities that classically hold on the nose then hold up to the
//! surpassing relation: both sides differ by quasi-zeros c (−) c. This crate
//! implements the resulting exterior algebra, Clifford products, and the
//! generating-series calculus on them, together with a verification suite
//! that checks the expected inclusions coefficient by coefficient on
//! truncated series.
//!
//! Layering, bottom up: [`semiring`] (scalars and pairs), [`freemod`]
//! (pair-coefficient modules and matrices), [`partitions`], [`exterior`],
//! [`clifford`], [`series`] and [`schubert`] (truncated generating series
//! and operators), [`verify`] (the check suite), [`textio`] (parsing and
//! printing).

pub mod clifford;
pub mod error;
pub mod exterior;
pub mod freemod;
pub mod partitions;
pub mod schubert;
pub mod semiring;
pub mod series;
pub mod textio;
pub mod verify;

pub use error::{Error, Result};
pub use semiring::{MaxPlus, Nat, Pair, QPlus, Semiring, SemiringId};
