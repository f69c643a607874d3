//! Exact computations with ADHM data of classical-group instantons.
//!
//! The crate is organised bottom-up:
//!
//! * [`field`], [`ratfunc`], [`poly`], [`matrix`], [`linalg`]: exact dense
//!   linear algebra over `Q`, `F_p` and `Q(t)`.
//! * [`adhm`]: forms, adjoints, moment maps, stability, duals and direct sums.
//! * [`tensor`]: tensor products of data, the degenerate self-tensor limit,
//!   symmetric/exterior parts and the exceptional isomorphisms.
//! * [`current`]: the truncated current algebra `sl2[z]/z^{d+1}` acting on
//!   `C^2[z]/z^{d+1}`.
//! * [`hilbert`]: truncated equivariant characters and Weyl integration.
//! * [`counting`]: exhaustive point counts of moment-map fibres over `F_p`.
//! * [`commands`]: the JSON command layer behind the `adhm` binary.

pub mod adhm;
pub mod commands;
pub mod counting;
pub mod current;
pub mod error;
pub mod field;
pub mod hilbert;
pub mod iso;
pub mod linalg;
pub mod matrix;
pub mod poly;
pub mod ratfunc;
pub mod samples;
pub mod tensor;

pub use error::{Error, Result};
pub use field::{Field, Fp, Rational};
pub use linalg::{invariant_closure, kernel_basis, solve_linear, sylvester_solve, Subspace};
pub use matrix::Matrix;
pub use ratfunc::RatFunc;
