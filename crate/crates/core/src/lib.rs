//! Exact symbolic engine for higher braces.
//!
//! Koszul braces (graded commutative algebras) and Börjeson braces
//! (associative algebras) are computed two ways: from their closed-form
//! definitions, and as the pullback of the linear homological vector field
//! `∇` over a formal diffeomorphism, realized on the cofree coalgebra side as
//! `ψ̄ ∘ ∇ ∘ φ`. The [`homotopy`] module checks the L∞ and A∞ relations for any
//! brace family over every parity assignment up to a given arity.
//!
//! All arithmetic is over arbitrary precision rationals; nothing is ever rounded.

pub mod braces;
pub mod coalgebra;
pub mod error;
pub mod graded;
pub mod homotopy;
pub mod series;

pub use error::{Error, Result};
pub use graded::{Atom, Expr, Flavor, Generator, ParityVector, Scalar, Word};
