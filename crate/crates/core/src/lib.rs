//! Biquaternion arithmetic, the biquaternion Z transform, and solving of
//! right-coefficient linear biquaternion recurrences.
//!
//! ```
//! use bqz::{Biquaternion, ztransform::CatalogEntry};
//!
//! let p: Biquaternion = "2i".parse().unwrap();
//! let value = CatalogEntry::pow_p(p).eval(&Biquaternion::from(4.0)).unwrap();
//! assert!((value - "0.8+0.4i".parse().unwrap()).magnitude() < 1e-15);
//! ```

pub mod biquat;
pub mod error;
pub mod literal;
pub mod recurrence;
pub mod sequence;
pub mod ztransform;

pub use biquat::{complex, Biquaternion, ComplexScalar};
pub use error::{Error, Result};
pub use literal::{format_literal, parse_literal, ParseError};
pub use recurrence::{deconvolve_geometric, Forcing, LinearRecurrence, VerificationReport};
pub use sequence::Sequence;
