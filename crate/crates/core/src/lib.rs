//! Modular data and fusion rules of rep U_q(sl2) at a root of unity and of
//! the extended Verlinde algebra of its type `D_{2m+2}` Z₂-equivariant quotient.
//!
//! The crate is organised bottom-up:
//!
//! * [`arith`] – q-powers, quantum integers, twists and quadratic Gauss sums.
//! * [`verlinde_d`] – fusion rules and the unitary s-matrix of rep U_q(sl2).
//! * [`ring`] – the fusion ring of `rep A`, `A = V_0 ⊕ V_δ`, derived from a
//!   small seed table.
//! * [`extended`] – graded basis, products and s-blocks of the extended algebra.
//! * [`formulas`] – classical and extended Verlinde evaluators and the
//!   verification suite.

pub mod arith;
pub mod error;
pub mod extended;
pub mod formulas;
pub mod ring;
pub mod verlinde_d;

pub use arith::{Scalar, Tolerance};
pub use error::{Error, Result};
pub use extended::{ExtModularData, ExtVector, GradedLabel};
pub use formulas::{verify_all, Check, VerificationReport};
pub use ring::{CLabel, TypeDRing, Z2};
pub use verlinde_d::ModularDataD;
