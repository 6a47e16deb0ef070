//! Exact computation of universal Gröbner bases, initial staircases and
//! state polyhedra for zero-dimensional ideals of length `n` in `d`
//! variables, driven by the chambers of a fixed hyperplane arrangement.

pub mod driver;
pub mod error;
pub mod exactnum;
pub mod groebner;
pub mod ideals;
pub mod linalg;
pub mod oracle;
pub mod staircase;
pub mod zonotope;

pub use error::{Error, Result};
pub use exactnum::{ConstModulus, DynamicModulus, Field, FieldTag, Fp, Rational};
pub use groebner::{CoeffTable, MonomialOrder, Polynomial, ReducedGroebnerBasis};
pub use staircase::{Exponent, Staircase};

/// Polynomials over the rationals.
pub type QPolynomial = Polynomial<Rational>;
/// Reduced bases over the rationals.
pub type QGroebnerBasis = ReducedGroebnerBasis<Rational>;
/// Prime field with a compile-time modulus.
pub type GF<const P: u32> = Fp<ConstModulus<P>>;
/// Prime field whose modulus is fixed once at runtime.
pub type DynFp = Fp<DynamicModulus>;
