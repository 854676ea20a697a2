//! The second-tilt central charge Z_{α,β,s} and its slope λ_{α,β,s},
//! the functions that see ch₃ and govern the second and third walls.
//!
//! Parameter validity (α² > 0, s > 0) is enforced when a
//! [`StabilityParams`] is constructed, so evaluation itself is total.

use crate::chern::ChernCharacter;
use crate::rational::{int, ratio, Slope};
use crate::tilt::{ChargeValue, StabilityParams};

/// The second-tilt central charge
/// Z_{α,β,s} = −(ch₃ − β·ch₂ − ((s+1/6)α² − β²/2)·ch₁ − (β³/6 − (s+1/6)α²β)·ch₀)
///           + i(ch₂ − β·ch₁ + (β²/2 − α²/2)·ch₀).
pub fn z_lambda(v: &ChernCharacter, params: &StabilityParams) -> ChargeValue {
    let t = v.twist_by(&-params.beta().clone());
    let sigma = params.s() + ratio(1, 6);
    let re = -(&t.ch3 - &sigma * params.alpha_sq() * &t.ch1);
    let im = &t.ch2 - params.alpha_sq() / int(2) * &t.ch0;
    ChargeValue::new(re, im)
}

/// The slope λ_{α,β,s} = −Re Z_{α,β,s}/Im Z_{α,β,s}, or +∞ when Im = 0.
pub fn lambda_slope(v: &ChernCharacter, params: &StabilityParams) -> Slope {
    z_lambda(v, params).slope()
}
