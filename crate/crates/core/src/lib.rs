//! Exact verification toolkit for the small quantum group `u_ζ(sl2)` at an odd
//! prime root of unity, its non-semisimple (HKL) mapping class group
//! representations, the Schrödinger representation of the Heisenberg group,
//! and the integral bases that make both actions integral over `Z[ζ]`.

pub mod appendix;
pub mod hkl;
pub mod arith;
pub mod dump;
pub mod linalg;
pub mod mcg;
pub mod qcomb;
pub mod report;
pub mod schroedinger;
pub mod suites;
pub mod uqsl2;

pub use arith::{CycContext, CycInt, CycRat, LaurentPoly};
pub use linalg::{BasisLabel, RepMatrix, SparseMatrix};
pub use report::{CheckReport, Status, Witness};
pub use uqsl2::{Element, Pbw, SmallQuantumGroup, TensorElement};
