//! Tilt stability: the twisted slope μ_β, the central charge Z_{α,β}, the
//! tilt slope ν_{α,β}, the Bogomolov discriminant, and the residual of the
//! generalized Bogomolov–Gieseker inequality.
//!
//! All arithmetic is exact; α enters every formula through α², so parameters
//! carry `alpha_sq` and stay rational.

use crate::chern::ChernCharacter;
use crate::rational::{format_rational, int, ratio, sign, Rational, Slope};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

/// Default second-tilt parameter s = 1/3, which makes the α² coefficient
/// of the second charge equal to 1/2.
pub fn default_s() -> Rational {
    ratio(1, 3)
}

/// Error for invalid stability parameters.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParamsError {
    /// α² and s must both be strictly positive.
    #[error("invalid stability parameters: {reason}")]
    InvalidParams {
        /// Which constraint failed.
        reason: String,
    },
}

/// A point (β, α², s) of the stability-parameter space.
///
/// Invariants: α² > 0 and s > 0, enforced at construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ParamsRepr", into = "ParamsRepr")]
pub struct StabilityParams {
    beta: Rational,
    alpha_sq: Rational,
    s: Rational,
}

#[derive(Serialize, Deserialize)]
struct ParamsRepr {
    #[serde(with = "crate::rational::rational_string")]
    beta: Rational,
    #[serde(with = "crate::rational::rational_string")]
    alpha_sq: Rational,
    #[serde(with = "crate::rational::rational_string")]
    s: Rational,
}

impl TryFrom<ParamsRepr> for StabilityParams {
    type Error = ParamsError;
    fn try_from(raw: ParamsRepr) -> Result<Self, ParamsError> {
        StabilityParams::new(raw.beta, raw.alpha_sq, raw.s)
    }
}

impl From<StabilityParams> for ParamsRepr {
    fn from(p: StabilityParams) -> ParamsRepr {
        ParamsRepr { beta: p.beta, alpha_sq: p.alpha_sq, s: p.s }
    }
}

impl StabilityParams {
    /// Builds parameters, rejecting non-positive α² or s.
    pub fn new(beta: Rational, alpha_sq: Rational, s: Rational) -> Result<Self, ParamsError> {
        if !alpha_sq.is_positive() {
            return Err(ParamsError::InvalidParams {
                reason: format!("alpha_sq = {} must be > 0", format_rational(&alpha_sq)),
            });
        }
        if !s.is_positive() {
            return Err(ParamsError::InvalidParams {
                reason: format!("s = {} must be > 0", format_rational(&s)),
            });
        }
        Ok(Self { beta, alpha_sq, s })
    }

    /// Builds parameters with the default s = 1/3.
    pub fn with_default_s(beta: Rational, alpha_sq: Rational) -> Result<Self, ParamsError> {
        Self::new(beta, alpha_sq, default_s())
    }

    /// Convenience constructor from integer pairs `(num, den)`.
    pub fn from_ratios(
        beta: (i64, i64),
        alpha_sq: (i64, i64),
        s: (i64, i64),
    ) -> Result<Self, ParamsError> {
        Self::new(ratio(beta.0, beta.1), ratio(alpha_sq.0, alpha_sq.1), ratio(s.0, s.1))
    }

    /// β.
    pub fn beta(&self) -> &Rational {
        &self.beta
    }

    /// α².
    pub fn alpha_sq(&self) -> &Rational {
        &self.alpha_sq
    }

    /// s.
    pub fn s(&self) -> &Rational {
        &self.s
    }
}

impl fmt::Display for StabilityParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(beta={}, alpha_sq={}, s={})",
            format_rational(&self.beta),
            format_rational(&self.alpha_sq),
            format_rational(&self.s),
        )
    }
}

/// The exact value of a central charge, Re + i·Im.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChargeValue {
    /// Real part.
    #[serde(with = "crate::rational::rational_string")]
    pub re: Rational,
    /// Imaginary part.
    #[serde(with = "crate::rational::rational_string")]
    pub im: Rational,
}

impl ChargeValue {
    /// Builds a charge value.
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    /// True when both components vanish.
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// The slope −Re/Im, or +∞ when Im = 0.
    pub fn slope(&self) -> Slope {
        if self.im.is_zero() {
            Slope::PlusInfinity
        } else {
            Slope::Finite(-&self.re / &self.im)
        }
    }

    /// Im(other · conj(self)): positive iff `other`'s phase is
    /// counterclockwise from `self`'s within a half-plane.
    pub fn cross(&self, other: &ChargeValue) -> Rational {
        &other.im * &self.re - &other.re * &self.im
    }
}

impl fmt::Display for ChargeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + ({})i", format_rational(&self.re), format_rational(&self.im))
    }
}

/// Error from comparing slopes of charge values.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SlopeError {
    /// A charge had both components zero, so its slope is undefined:
    /// the class is numerically trivial at this parameter point.
    #[error("cannot compare slopes: a charge is identically zero")]
    BothZero,
}

/// The twisted slope μ_β = (ch₁ − β·ch₀)/ch₀, or +∞ when ch₀ = 0.
pub fn mu_beta(v: &ChernCharacter, beta: &Rational) -> Slope {
    if v.ch0.is_zero() {
        Slope::PlusInfinity
    } else {
        Slope::Finite((&v.ch1 - beta * &v.ch0) / &v.ch0)
    }
}

/// The tilt central charge
/// Z_{α,β} = −(ch₂ − β·ch₁ + (β²/2 − α²/2)·ch₀) + i(ch₁ − β·ch₀).
pub fn z_tilt(v: &ChernCharacter, params: &StabilityParams) -> ChargeValue {
    let t = v.twist_by(&-params.beta().clone());
    let re = -&t.ch2 + params.alpha_sq() / int(2) * &t.ch0;
    ChargeValue::new(re, t.ch1)
}

/// The tilt slope ν_{α,β} = −Re Z/Im Z, or +∞ when Im Z = 0.
pub fn nu(v: &ChernCharacter, params: &StabilityParams) -> Slope {
    z_tilt(v, params).slope()
}

/// Compares the slopes of two charge values without dividing; +∞ (Im = 0)
/// is maximal, and two Im = 0 charges are Equal.
pub fn slope_compare(z1: &ChargeValue, z2: &ChargeValue) -> Result<Ordering, SlopeError> {
    if z1.is_zero() || z2.is_zero() {
        return Err(SlopeError::BothZero);
    }
    match (z1.im.is_zero(), z2.im.is_zero()) {
        (true, true) => Ok(Ordering::Equal),
        (true, false) => Ok(Ordering::Greater),
        (false, true) => Ok(Ordering::Less),
        (false, false) => {
            // ν₁ − ν₂ = (re₂·im₁ − re₁·im₂)/(im₁·im₂).
            let numer = sign(&(&z2.re * &z1.im - &z1.re * &z2.im));
            let denom = sign(&(&z1.im * &z2.im));
            Ok((numer * denom).cmp(&0))
        }
    }
}

/// The Bogomolov discriminant Δ = ch₁² − 2·ch₀·ch₂.
pub fn bogomolov_delta(v: &ChernCharacter) -> Rational {
    &v.ch1 * &v.ch1 - int(2) * &v.ch0 * &v.ch2
}

/// The residual of the generalized Bogomolov–Gieseker inequality:
/// α²/6·(ch₁ − β·ch₀) − (ch₃ − β·ch₂ + β²/2·ch₁ − β³/6·ch₀).
///
/// Nonnegative for ν-semistable classes sitting on their ν = 0 locus.
pub fn gbg_residual(v: &ChernCharacter, params: &StabilityParams) -> Rational {
    let t = v.twist_by(&-params.beta().clone());
    params.alpha_sq() / int(6) * &t.ch1 - &t.ch3
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chern::ObjectKind;
    use proptest::prelude::*;

    fn params(beta: (i64, i64), alpha_sq: (i64, i64)) -> StabilityParams {
        StabilityParams::from_ratios(beta, alpha_sq, (1, 3)).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(StabilityParams::from_ratios((0, 1), (0, 1), (1, 3)).is_err());
        assert!(StabilityParams::from_ratios((0, 1), (1, 1), (-1, 3)).is_err());
        assert!(StabilityParams::from_ratios((-5, 2), (1, 4), (1, 3)).is_ok());
    }

    #[test]
    fn mu_beta_examples() {
        let o = ChernCharacter::line_bundle(0);
        assert_eq!(mu_beta(&o, &int(0)), Slope::Finite(int(0)));
        let o_m2 = ChernCharacter::line_bundle(-2);
        assert_eq!(mu_beta(&o_m2, &ratio(-5, 2)), Slope::Finite(ratio(1, 2)));
        let plane = ObjectKind::PlaneSheaf { d: -3 }.chern();
        assert_eq!(mu_beta(&plane, &ratio(7, 3)), Slope::PlusInfinity);
    }

    #[test]
    fn z_tilt_examples() {
        // At β = −5/2 the charge of O(−2) is (−1/8 + α²/2) + (1/2)i.
        let z = z_tilt(&ChernCharacter::line_bundle(-2), &params((-5, 2), (1, 4)));
        assert_eq!(z, ChargeValue::new(int(0), ratio(1, 2)));

        let z = z_tilt(&ChernCharacter::line_bundle(-3).shift(), &params((-5, 2), (1, 1)));
        assert_eq!(z, ChargeValue::new(ratio(-3, 8), ratio(1, 2)));

        let z = z_tilt(&ChernCharacter::line_bundle(0), &params((0, 1), (1, 1)));
        assert_eq!(z, ChargeValue::new(ratio(1, 2), int(0)));
    }

    #[test]
    fn z_tilt_of_o_minus_2_along_the_wall_line() {
        // Re = −1/8 + t/2 and Im = 1/2 at β = −5/2 for several α² = t.
        let o_m2 = ChernCharacter::line_bundle(-2);
        for t in [(1i64, 16i64), (1, 8), (1, 4), (1, 2), (9, 25)] {
            let z = z_tilt(&o_m2, &params((-5, 2), t));
            assert_eq!(z.re, ratio(-1, 8) + ratio(t.0, t.1) / int(2));
            assert_eq!(z.im, ratio(1, 2));
        }
    }

    #[test]
    fn nu_examples() {
        let o_m2 = ChernCharacter::line_bundle(-2);
        assert_eq!(nu(&o_m2, &params((-5, 2), (1, 1))), Slope::Finite(ratio(-3, 4)));
        let o_m3_shift = ChernCharacter::line_bundle(-3).shift();
        assert_eq!(nu(&o_m3_shift, &params((-5, 2), (1, 1))), Slope::Finite(ratio(3, 4)));
        let v = ChernCharacter::from_ints([1, 0, -3, 5]);
        assert_eq!(nu(&v, &params((-5, 2), (1, 4))), Slope::Finite(int(0)));
    }

    #[test]
    fn slope_comparison_flips_across_the_wall() {
        let a = ChernCharacter::line_bundle(-2);
        let b = ChernCharacter::line_bundle(-3).shift();

        let p = params((-5, 2), (1, 1));
        let (za, zb) = (z_tilt(&a, &p), z_tilt(&b, &p));
        assert_eq!(slope_compare(&za, &zb), Ok(Ordering::Less));

        let p = params((-5, 2), (1, 16));
        let (za, zb) = (z_tilt(&a, &p), z_tilt(&b, &p));
        assert_eq!(slope_compare(&za, &zb), Ok(Ordering::Greater));

        let z = ChargeValue::new(int(0), ratio(1, 2));
        assert_eq!(slope_compare(&z, &z), Ok(Ordering::Equal));
        assert_eq!(
            slope_compare(&ChargeValue::new(int(0), int(0)), &z),
            Err(SlopeError::BothZero)
        );
    }

    #[test]
    fn infinite_slope_is_maximal() {
        let inf = ChargeValue::new(int(-1), int(0));
        let finite = ChargeValue::new(int(-100), ratio(1, 100));
        assert_eq!(slope_compare(&inf, &finite), Ok(Ordering::Greater));
        assert_eq!(slope_compare(&finite, &inf), Ok(Ordering::Less));
        let inf2 = ChargeValue::new(int(7), int(0));
        assert_eq!(slope_compare(&inf, &inf2), Ok(Ordering::Equal));
    }

    #[test]
    fn bogomolov_examples() {
        for n in -3..=3 {
            assert_eq!(bogomolov_delta(&ChernCharacter::line_bundle(n)), int(0));
        }
        assert_eq!(bogomolov_delta(&ChernCharacter::from_ints([1, 0, -3, 5])), int(6));
        let w = ChernCharacter::line_bundle(-2).scale(3);
        assert_eq!(bogomolov_delta(&w), int(0));
    }

    #[test]
    fn gbg_examples() {
        let o_m2 = ChernCharacter::line_bundle(-2);
        assert_eq!(gbg_residual(&o_m2, &params((-5, 2), (1, 4))), int(0));

        let v = ChernCharacter::from_ints([1, 0, -3, 5]);
        assert_eq!(gbg_residual(&v, &params((-5, 2), (1, 4))), int(0));

        let plane = ObjectKind::PlaneSheaf { d: -3 }.chern();
        assert_eq!(gbg_residual(&plane, &params((-7, 2), (1, 1))), ratio(1, 8));
    }

    #[test]
    fn ordering_matches_the_quiver_charge_on_the_span() {
        // On the sublattice spanned by ch(O(−2)) and ch(O(−3))[1], the tilt
        // charge at (β, α²) = (−5/2, 9/25) and the charge
        // Z(m, n) = (−3m + 2n) + (m + n)i induce identical slope orderings.
        let p = params((-5, 2), (9, 25));
        let e1 = ChernCharacter::line_bundle(-3).shift();
        let e2 = ChernCharacter::line_bundle(-2);
        let mut classes = Vec::new();
        for m in 0..=3i64 {
            for n in 0..=3i64 {
                if m + n == 0 {
                    continue;
                }
                let tilt_z = z_tilt(&(e1.scale(m) + e2.scale(n)), &p);
                let quiver_z = ChargeValue::new(int(-3 * m + 2 * n), int(m + n));
                classes.push((tilt_z, quiver_z));
            }
        }
        for (t1, q1) in &classes {
            for (t2, q2) in &classes {
                assert_eq!(slope_compare(t1, t2), slope_compare(q1, q2));
            }
        }
    }

    proptest! {
        #[test]
        fn gbg_vanishes_for_line_bundles_on_their_locus(
            n in -6i64..6,
            dn in 1i64..12, dd in 1i64..6,
        ) {
            // β = n − dn/dd < n, α² = (n − β)²: the ν = 0 locus of O(n).
            let beta = int(n) - ratio(dn, dd);
            let alpha_sq = (int(n) - &beta) * (int(n) - &beta);
            let p = StabilityParams::new(beta, alpha_sq, default_s()).unwrap();
            let lb = ChernCharacter::line_bundle(n);
            prop_assert_eq!(nu(&lb, &p), Slope::Finite(int(0)));
            prop_assert_eq!(gbg_residual(&lb, &p), int(0));
        }

        #[test]
        fn im_z_tilt_is_linear_in_beta(
            a in -10i64..10, b in -10i64..10, c in -10i64..10, d in -10i64..10,
            bn in -20i64..20, bd in 1i64..8,
        ) {
            let v = ChernCharacter::from_lattice_coords([a, b, c, d]);
            let beta = ratio(bn, bd);
            let p = StabilityParams::new(beta.clone(), int(1), default_s()).unwrap();
            prop_assert_eq!(z_tilt(&v, &p).im, &v.ch1 - &beta * &v.ch0);
        }

        #[test]
        fn slope_compare_is_antisymmetric_and_matches_nu(
            re1 in -12i64..12, im1 in -12i64..12,
            re2 in -12i64..12, im2 in -12i64..12,
        ) {
            let z1 = ChargeValue::new(int(re1), int(im1));
            let z2 = ChargeValue::new(int(re2), int(im2));
            prop_assume!(!z1.is_zero() && !z2.is_zero());
            let forward = slope_compare(&z1, &z2).unwrap();
            let backward = slope_compare(&z2, &z1).unwrap();
            prop_assert_eq!(forward, backward.reverse());
            prop_assert_eq!(forward, z1.slope().cmp(&z2.slope()));
        }
    }
}
