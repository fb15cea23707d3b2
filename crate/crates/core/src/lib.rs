//! Exact symbolic construction and verification of matrix factorizations
//! of surface singularities.
//!
//! The crate builds pairs of square polynomial matrices (Phi, Psi) with
//! `Phi * Psi = Psi * Phi = sign * F * Id` modulo a relation ideal in the
//! point parameters, for the seven quasi-homogeneous singularity families,
//! the cusp family, a non-isolated example surface, and user-supplied
//! curves via a generic Koszul lift. All arithmetic is exact: the scalar
//! layer is generic over the coefficient field, instantiated with
//! arbitrary-precision rationals everywhere and with a fixed prime field
//! for the randomized verification fallback.
//!
//! ```
//! use mfkit_core::catalog::{make_surface, Exponents, Family, SurfacePoint};
//! use mfkit_core::factory::construct_quasi;
//! use mfkit_core::scalar::rat;
//!
//! // the Fermat cubic at the point (1, -1, 0)
//! let surface = make_surface(Family::I, Exponents::pqr(3, 3, 3), None)?;
//! let point = SurfacePoint::numeric(rat(1), rat(-1), rat(0));
//! let mf = construct_quasi(&surface, &point)?;
//! assert_eq!(mf.sign, -1);
//! assert!(mf.reduced);
//! assert_eq!(mf.psi.determinant()?, surface.f.neg_ref());
//! # Ok::<(), mfkit_core::Error>(())
//! ```

pub mod catalog;
pub mod curves;
pub mod divide;
pub mod document;
pub mod error;
pub mod factory;
pub mod fp;
pub mod grid;
pub mod matrix;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod scalar;
pub mod vars;
pub mod verify;

pub use error::{Error, Result};
pub use monomial::{Monomial, MonomialOrder, OrderKind, WeightVector};
pub use poly::Poly;
pub use scalar::{Coeff, Rat};
pub use vars::Var;

/// Polynomials over the exact rationals, the working ring of the crate.
pub type QPoly = Poly<Rat>;
/// Matrices over the exact rationals.
pub type QMatrix = matrix::PolyMatrix<Rat>;
/// Polynomials over the sampling prime field.
pub type FpPoly = Poly<fp::Fp>;
