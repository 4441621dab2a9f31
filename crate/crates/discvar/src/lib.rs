//! Exact equations and numeric geometry for the variety of real symmetric
//! matrices with a multiple eigenvalue.
//!
//! The library has two halves. The symbolic half (`poly`, `groebner`,
//! `symform`, `variety`) derives minimal-degree polynomial systems for the
//! variety and its conjugation orbits by elimination over exact rational
//! (or rational-function) coefficients. The numeric half (`numgeo`) samples
//! orbits in double precision and checks the geometric statements the
//! symbolic systems are supposed to satisfy: vanishing, Jacobian ranks,
//! diameters, tangent spaces and singular-point witnesses.

pub mod field;
pub mod groebner;
pub mod numgeo;
pub mod poly;
pub mod ratfunc;
pub mod symform;
pub mod variety;

pub use field::{Field, Rat};
pub use poly::{Monomial, MonomialOrder, MultiPoly, VarContext};
pub use ratfunc::{KPoly, RatFunc};
