//! Exact-arithmetic engine for wall-and-chamber analysis of stability
//! conditions on three-dimensional projective space.
//!
//! Everything is computed over the rationals — no floating point — so wall
//! locations, slope comparisons, and dimension counts are exact and
//! reproducible:
//!
//! - [`chern`]: the Chern-character lattice, integrality checks, and the
//!   characters of the standard sheaves (line bundles, plane and line
//!   supported sheaves, ideal sheaves of points and curves).
//! - [`riemann_roch`]: Euler characteristics and the Euler pairing via the
//!   Todd class, plus Hilbert polynomials.
//! - [`tilt`]: the tilt central charge, its slope ν, slope comparison by
//!   cross-multiplication, and the Bogomolov-type discriminant.
//! - [`lambda`]: the second-tilt central charge and the refined slope λ
//!   used past the large-volume regime.
//! - [`walls`]: numerical wall circles, path scans that bracket wall
//!   crossings, chamber decompositions, and exhaustive enumeration of
//!   candidate destabilizing classes.
//! - [`quiver`]: θ-stability for Kronecker quiver representations with
//!   certified witnesses for every unstable verdict.
//! - [`audit`]: long-exact-sequence feasibility checking, Euler-pairing
//!   cross-checks for Ext tables, the moduli-dimension ledger, and
//!   component decompositions of monomial quadric equations.
//!
//! # Example
//!
//! ```
//! use stabwalls::chern::ChernCharacter;
//! use stabwalls::riemann_roch::euler_pairing;
//! use stabwalls::rational::int;
//!
//! // The ideal sheaf of a twisted cubic curve.
//! let v = ChernCharacter::from_ints([1, 0, -3, 5]);
//! assert_eq!(euler_pairing(&v, &v), int(-11));
//! ```

#![warn(missing_docs)]

pub mod audit;
pub mod chern;
pub mod lambda;
pub mod quiver;
pub mod rational;
pub mod riemann_roch;
pub mod tilt;
pub mod walls;

pub use chern::{ChernCharacter, ObjectKind};
pub use rational::{Rational, Slope};
pub use riemann_roch::{euler_chi, euler_pairing};
pub use tilt::{nu, z_tilt, StabilityParams};
pub use lambda::{lambda_slope, z_lambda};
pub use walls::{scan_path, tilt_wall, WallCircle};

/// The long-form guide, one module per chapter.
///
/// The same markdown is rendered as a book by `mdbook build book` from the
/// repository root. Compiling it here makes every Rust block in the book a
/// doc-test of this crate, so the guide cannot drift from the code.
pub mod guide {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/chern-lattice.md")]
    pub mod chern_lattice {}
    #[doc = include_str!("../../../book/src/euler-pairings.md")]
    pub mod euler_pairings {}
    #[doc = include_str!("../../../book/src/tilt-stability.md")]
    pub mod tilt_stability {}
    #[doc = include_str!("../../../book/src/refined-slope.md")]
    pub mod refined_slope {}
    #[doc = include_str!("../../../book/src/walls-and-chambers.md")]
    pub mod walls_and_chambers {}
    #[doc = include_str!("../../../book/src/destabilizers.md")]
    pub mod destabilizers {}
    #[doc = include_str!("../../../book/src/quiver-models.md")]
    pub mod quiver_models {}
    #[doc = include_str!("../../../book/src/sequence-audits.md")]
    pub mod sequence_audits {}
    #[doc = include_str!("../../../book/src/command-line.md")]
    pub mod command_line {}
}
