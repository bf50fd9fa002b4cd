//! Exact computation of quasi-invariants and logarithmic vector fields of
//! finite complex reflection groups.
//!
//! The crate builds small reflection groups (types A, B, D, dihedral,
//! G(r,1,N)) over a cyclotomic field, computes graded spaces of
//! quasi-invariants (scalar, vector-valued, trigonometric, and the
//! non-reduced BC variants), transports them to logarithmic derivation
//! modules of the reflection multiarrangements and extended Catalan
//! arrangements, and certifies freeness through Saito's criterion with
//! exact determinants. K. Saito's primitive derivation and its connection
//! on invariant derivation modules are included.
//!
//! Everything is exact: scalars live in `Q(zeta_M)` with arbitrary-precision
//! rational coordinates, and all ranks, nullspaces and determinants are
//! computed symbolically. See the `examples/` directory for a tour, one
//! runnable example per capability.

pub mod cyclotomic;
pub mod error;
pub mod group;
pub mod linalg;
pub mod logder;
pub mod parse;
pub mod poly;
pub mod primitive;
pub mod quasi;
pub mod report;
pub mod reproduce;
pub mod roots;

pub use cyclotomic::CycScalar;
pub use error::Error;
pub use group::{Family, Hyperplane, MultFn, ReflectionGroup};
pub use linalg::ScalarMatrix;
pub use logder::{Derivation, FreenessCertificate, MultiArrangement};
pub use poly::{MPoly, Monomial, PolyMatrix};
