//! Exact total masses of local Galois representations into finite linear
//! groups.
//!
//! The crate computes, in exact rational arithmetic:
//!
//! * tame mass quasi-polynomials of finite integer matrix groups ([`tame`]),
//! * generating functions for the Weyl-group series `A_n`, `B_n`, `D_n`
//!   ([`genfun`]),
//! * wild masses from homomorphism censuses ([`wild`]) and from local-field
//!   tables ([`lfdata`]).
//!
//! Laurent polynomials are in `t = q⁻¹`, so `t^k` prints as `q^-k`.

pub mod error;
pub mod exact;
pub mod exec;
pub mod genfun;
pub mod grpcore;
pub mod lfdata;
pub mod matrix;
pub mod tame;
pub mod weyl;
pub mod wild;

pub use error::{MassError, Result};
pub use exact::{rat, LaurentPoly, PowerSeries, Rational};
pub use exec::Exec;
pub use grpcore::MatGroup;
