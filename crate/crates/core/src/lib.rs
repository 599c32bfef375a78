//! Finite rings, their ideals, and clean / nil clean / weak nil clean decompositions.
//!
//! Rings are described by [`RingSpec`] strings such as `"Z6"`, `"T2(Z2)"`,
//! `"Idealization(Z4, Z2)"` or `"Morita(Z2, Z2, Z2, Z2, mul)"` and built with a
//! [`BuildContext`]. Every element is an index `0..size` with 0 the zero element.
//!
//! ```
//! use nilclean::{BuildContext, Flavor, cleanness, ideals};
//!
//! let z6 = BuildContext::default().build_str("Z6").unwrap();
//! let two = ideals::ideal_generated_by(&z6, &[2]).unwrap();
//! assert!(cleanness::classify_ideal(&two, Flavor::WeakNilClean, false).holds);
//! assert_eq!(cleanness::classify_ideal(&two, Flavor::NilClean, false).failure, Some(2));
//! ```

pub mod build;
pub mod cli;
pub mod cleanness;
pub mod constructions;
pub mod error;
pub mod ideals;
mod lattice;
pub mod literal;
pub mod module;
pub mod ring;
pub mod sets;
pub mod spec;
pub mod theorems;

pub use build::BuildContext;
pub use cleanness::{Certificate, CertificateRecord, Flavor, Sign, TypeTag};
pub use error::{Error, Result};
pub use ideals::{Ideal, QuotientRing};
pub use ring::{Elem, FiniteRing, Limits};
pub use sets::ElementSets;
pub use spec::{parse_ring_spec, RingSpec};
