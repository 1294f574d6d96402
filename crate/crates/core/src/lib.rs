//! Exact computer algebra for a lattice quantum phase space `A_q`: its
//! integrals of motion, a quantized homogeneous space embedded in `A_q` by
//! noncommutative continued fractions, the Lax matrix side, commuting flows,
//! and a batch verification harness.

pub mod cli;
pub mod error;
pub mod flows;
pub mod functionals;
pub mod imot;
pub mod lattice;
pub mod laxrtt;
pub mod ncseries;
pub mod qcoeff;
pub mod qhomspace;

pub use error::{Error, Result};
pub use lattice::AqElement;
pub use qcoeff::{QFraction, QLaurent};
