//! Invariants of rational (two-bridge) links `b(q, p)` computed from the
//! fraction `p/q`: continued-fraction normal forms, primitive-block
//! decompositions, the braid index and the HOMFLY polynomial.
//!
//! ```
//! use ratlink::{braid::braid_index, homfly::homfly};
//!
//! assert_eq!(braid_index(5, 2).unwrap().value, 3);
//! let (p, _) = homfly(5, 2).unwrap();
//! assert_eq!(p.to_string(), "a^-2 - 1 - z^2 + a^2");
//! ```

pub mod blocks;
pub mod braid;
pub mod contfrac;
pub mod error;
pub mod homfly;
pub mod link;
pub mod rational;
pub mod verify;

pub use error::{Error, Result};
pub use rational::ExactRational;
