//! Exact arithmetic for 2×2 matrix commutators over commutative rings:
//! symbolic identity proofs, quadratic-form value sets, and constructive
//! norm and factorization witnesses.

pub mod error;
pub mod identities;
pub mod mat2;
pub mod norms;
pub mod quadforms;
pub mod ring;

pub use error::{Error, Result};
pub use identities::{
    eval_identity, prove_identity, Bindings, Equation, IdentityId, IdentityReport,
};
pub use mat2::{Mat2, QTraceContext};
pub use quadforms::{QuadForm, Representation, SearchOutcome};
pub use ring::{RingDescriptor, RingValue};
