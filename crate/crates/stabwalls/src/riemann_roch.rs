//! Riemann–Roch arithmetic on P³: Todd class, Euler characteristics, the
//! Euler pairing, and Hilbert polynomials.
//!
//! These are the crate's numeric cross-checks: every dimension table in the
//! audit fixtures must have an alternating sum equal to the pairing computed
//! here.

use crate::chern::ChernCharacter;
use crate::rational::{format_rational, int, ratio, Rational};
use num_traits::Zero;
use std::fmt;

/// The Todd class of P³ as a vector of H-degree components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToddClass {
    components: ChernCharacter,
}

impl ToddClass {
    /// Computes Todd(P³) = td(O(1))⁴ truncated above H³, using the Euler
    /// sequence; the H-degree components come out to (1, 2, 11/6, 1).
    pub fn of_p3() -> Self {
        // td of a line bundle with c₁ = H is H/(1 − e^{−H}) = 1 + H/2 + H²/12 + 0·H³.
        let factor = ChernCharacter::new(int(1), ratio(1, 2), ratio(1, 12), int(0));
        let square = factor.product(&factor);
        Self { components: square.product(&square) }
    }

    /// The four graded pieces (td₀, td₁, td₂, td₃).
    pub fn components(&self) -> [&Rational; 4] {
        self.components.components()
    }
}

/// χ(v) = ∫ v · Td(P³) = ch₃ + 2ch₂ + (11/6)ch₁ + ch₀.
pub fn euler_chi(v: &ChernCharacter) -> Rational {
    let todd = ToddClass::of_p3();
    v.product(&todd.components).ch3
}

/// The Euler pairing χ(v, w) = χ(v^∨ · w); an integer on lattice classes.
pub fn euler_pairing(v: &ChernCharacter, w: &ChernCharacter) -> Rational {
    euler_chi(&v.dual().product(w))
}

/// A cubic polynomial m ↦ χ(v(m)), stored by ascending-degree coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertPolynomial {
    /// Coefficients c₀..c₃ of 1, m, m², m³.
    pub coeffs: [Rational; 4],
}

impl HilbertPolynomial {
    /// Evaluates at a rational point by Horner's rule.
    pub fn eval(&self, m: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * m + c;
        }
        acc
    }

    /// Evaluates at an integer.
    pub fn eval_int(&self, m: i64) -> Rational {
        self.eval(&int(m))
    }
}

impl fmt::Display for HilbertPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match deg {
                0 => write!(f, "{}", format_rational(c))?,
                1 => write!(f, "({})*m", format_rational(c))?,
                _ => write!(f, "({})*m^{}", format_rational(c), deg)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// The Hilbert polynomial P(m) = χ(v ⊗ O(m)).
pub fn hilbert_polynomial(v: &ChernCharacter) -> HilbertPolynomial {
    // Expanding χ(v · e^{mH}) in powers of m.
    let c0 = euler_chi(v);
    let c1 = &v.ch2 + int(2) * &v.ch1 + ratio(11, 6) * &v.ch0;
    let c2 = &v.ch1 / int(2) + &v.ch0;
    let c3 = &v.ch0 / int(6);
    HilbertPolynomial { coeffs: [c0, c1, c2, c3] }
}
