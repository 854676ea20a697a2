//! Chern characters on P³ and the integral lattice they live in.
//!
//! A class is an exact rational 4-vector (ch₀, ch₁, ch₂, ch₃) in the basis
//! 1, H, H², H³ of the rational cohomology of P³. Classes of actual objects
//! lie in a rank-4 lattice with basis [O], [O_V], [O_L], [O_pt] (structure
//! sheaves of P³, a plane, a line, a point); [`ChernCharacter::lattice_coords`]
//! certifies membership.

use crate::rational::{format_rational, int, ratio, Rational};
use num_bigint::BigInt;
use num_traits::Zero;
use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// Error for classes outside the integral lattice.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    /// A lattice coordinate came out non-integral; the class is not the
    /// Chern character of any object.
    #[error("class is not integral: lattice coordinate {component} = {value} is not an integer")]
    NonIntegralClass {
        /// Which coordinate failed (one of `a`, `b`, `c`, `d`).
        component: &'static str,
        /// The offending rational value, canonically formatted.
        value: String,
    },
}

/// An exact Chern character (ch₀, ch₁, ch₂, ch₃) on P³.
///
/// Serializes as an array of four canonical rational strings,
/// e.g. `["1","0","-3","5"]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChernCharacter {
    /// Rank.
    pub ch0: Rational,
    /// Degree, in units of the hyperplane class H.
    pub ch1: Rational,
    /// Second component, in units of H².
    pub ch2: Rational,
    /// Third component, in units of H³.
    pub ch3: Rational,
}

impl ChernCharacter {
    /// Builds a class from four rationals.
    pub fn new(ch0: Rational, ch1: Rational, ch2: Rational, ch3: Rational) -> Self {
        Self { ch0, ch1, ch2, ch3 }
    }

    /// Builds a class from four integer pairs `(num, den)`.
    pub fn from_ratios(parts: [(i64, i64); 4]) -> Self {
        let [a, b, c, d] = parts;
        Self::new(
            ratio(a.0, a.1),
            ratio(b.0, b.1),
            ratio(c.0, c.1),
            ratio(d.0, d.1),
        )
    }

    /// Builds a class from four integers.
    pub fn from_ints(parts: [i64; 4]) -> Self {
        let [a, b, c, d] = parts;
        Self::new(int(a), int(b), int(c), int(d))
    }

    /// The zero class.
    pub fn zero() -> Self {
        Self::from_ints([0, 0, 0, 0])
    }

    /// The components as an array, degree 0 to 3.
    pub fn components(&self) -> [&Rational; 4] {
        [&self.ch0, &self.ch1, &self.ch2, &self.ch3]
    }

    /// ch(O(n)) = e^{nH} = (1, n, n²/2, n³/6).
    pub fn line_bundle(n: i64) -> Self {
        Self::exp_h(&int(n))
    }

    /// e^{tH} = (1, t, t²/2, t³/6) for a rational t.
    pub fn exp_h(t: &Rational) -> Self {
        Self::new(
            int(1),
            t.clone(),
            t * t / int(2),
            t * t * t / int(6),
        )
    }

    /// The class of the named standard object.
    pub fn of_standard(kind: &ObjectKind) -> Self {
        match kind {
            ObjectKind::LineBundle { n } => Self::line_bundle(*n),
            ObjectKind::PointSheaf => Self::from_ints([0, 0, 0, 1]),
            // O_V(d) for a plane V: (O(d) - O(d-1)) as a difference of
            // line-bundle classes.
            ObjectKind::PlaneSheaf { d } => Self::line_bundle(*d) - Self::line_bundle(*d - 1),
            // O_L(d) for a line L: Koszul resolution by O(d), O(d-1)², O(d-2).
            ObjectKind::LineSheaf { d } => {
                Self::line_bundle(*d) - Self::line_bundle(*d - 1).scale(2)
                    + Self::line_bundle(*d - 2)
            }
            // I_p(d): remove a point from O(d).
            ObjectKind::IdealPoint { d } => Self::line_bundle(*d) - Self::from_ints([0, 0, 0, 1]),
            // I_{p/V}(d): remove a point from O_V(d), staying on the plane.
            ObjectKind::IdealPointInPlane { d } => {
                Self::of_standard(&ObjectKind::PlaneSheaf { d: *d }) - Self::from_ints([0, 0, 0, 1])
            }
            // Ideal sheaf of a twisted cubic: degree 3 curve with χ(O_C) = 1.
            ObjectKind::IdealTwistedCubic => Self::ideal_of_curve(3, &int(1)),
            ObjectKind::ShiftOf { of } => -Self::of_standard(of),
        }
    }

    /// ch(I_C) for a curve C ⊂ P³ of degree `degree` with χ(O_C) = `chi`:
    /// (1, 0, −degree, 2·degree − χ).
    pub fn ideal_of_curve(degree: i64, chi: &Rational) -> Self {
        Self::new(int(1), int(0), int(-degree), int(2 * degree) - chi)
    }

    /// Multiplication in the cohomology ring of P³, truncated above H³.
    pub fn product(&self, other: &Self) -> Self {
        let a = self.components();
        let b = other.components();
        let mut out = [int(0), int(0), int(0), int(0)];
        for (i, slot) in out.iter_mut().enumerate() {
            for j in 0..=i {
                *slot += a[j] * b[i - j];
            }
        }
        let [c0, c1, c2, c3] = out;
        Self::new(c0, c1, c2, c3)
    }

    /// Twist by O(n): multiplication by e^{nH}.
    pub fn twist(&self, n: i64) -> Self {
        self.twist_by(&int(n))
    }

    /// Twist by a rational multiple of H: multiplication by e^{tH}.
    pub fn twist_by(&self, t: &Rational) -> Self {
        self.product(&Self::exp_h(t))
    }

    /// The derived dual: (ch₀, −ch₁, ch₂, −ch₃).
    pub fn dual(&self) -> Self {
        Self::new(
            self.ch0.clone(),
            -self.ch1.clone(),
            self.ch2.clone(),
            -self.ch3.clone(),
        )
    }

    /// The class of the shift [1]: negation.
    pub fn shift(&self) -> Self {
        -self.clone()
    }

    /// Integer scalar multiple.
    pub fn scale(&self, k: i64) -> Self {
        let k = int(k);
        Self::new(
            &self.ch0 * &k,
            &self.ch1 * &k,
            &self.ch2 * &k,
            &self.ch3 * &k,
        )
    }

    /// Coordinates in the lattice basis [O], [O_V], [O_L], [O_pt]:
    /// a = ch₀, b = ch₁, c = ch₂ + b/2, d = ch₃ − b/6 + c.
    ///
    /// Errors with [`LatticeError::NonIntegralClass`] on the first
    /// non-integral coordinate.
    pub fn lattice_coords(&self) -> Result<[BigInt; 4], LatticeError> {
        let a = self.ch0.clone();
        let b = self.ch1.clone();
        let c = &self.ch2 + &b / int(2);
        let d = &self.ch3 - &b / int(6) + &c;
        let take = |name: &'static str, r: &Rational| -> Result<BigInt, LatticeError> {
            if r.is_integer() {
                Ok(r.to_integer())
            } else {
                Err(LatticeError::NonIntegralClass {
                    component: name,
                    value: format_rational(r),
                })
            }
        };
        Ok([take("a", &a)?, take("b", &b)?, take("c", &c)?, take("d", &d)?])
    }

    /// Inverse of [`Self::lattice_coords`]: the class a[O] + b[O_V] + c[O_L] + d[O_pt].
    pub fn from_lattice_coords(coords: [i64; 4]) -> Self {
        let [a, b, c, d] = coords.map(int);
        let ch2 = &c - &b / int(2);
        let ch3 = &d + &b / int(6) - &c;
        Self::new(a, b, ch2, ch3)
    }

    /// True when the class lies in the integral lattice.
    pub fn is_lattice_class(&self) -> bool {
        self.lattice_coords().is_ok()
    }

    /// True when this class is a rational multiple of `other` (or either is zero).
    pub fn is_proportional_to(&self, other: &Self) -> bool {
        let a = self.components();
        let b = other.components();
        for i in 0..4 {
            for j in (i + 1)..4 {
                if a[i] * b[j] != a[j] * b[i] {
                    return false;
                }
            }
        }
        true
    }

    /// True when all four components vanish.
    pub fn is_zero(&self) -> bool {
        self.components().iter().all(|c| c.is_zero())
    }
}

impl Add for ChernCharacter {
    type Output = ChernCharacter;
    fn add(self, rhs: ChernCharacter) -> ChernCharacter {
        ChernCharacter::new(
            self.ch0 + rhs.ch0,
            self.ch1 + rhs.ch1,
            self.ch2 + rhs.ch2,
            self.ch3 + rhs.ch3,
        )
    }
}

impl Sub for ChernCharacter {
    type Output = ChernCharacter;
    fn sub(self, rhs: ChernCharacter) -> ChernCharacter {
        ChernCharacter::new(
            self.ch0 - rhs.ch0,
            self.ch1 - rhs.ch1,
            self.ch2 - rhs.ch2,
            self.ch3 - rhs.ch3,
        )
    }
}

impl<'a> Add<&'a ChernCharacter> for &'a ChernCharacter {
    type Output = ChernCharacter;
    fn add(self, rhs: &ChernCharacter) -> ChernCharacter {
        self.clone() + rhs.clone()
    }
}

impl<'a> Sub<&'a ChernCharacter> for &'a ChernCharacter {
    type Output = ChernCharacter;
    fn sub(self, rhs: &ChernCharacter) -> ChernCharacter {
        self.clone() - rhs.clone()
    }
}

impl Neg for ChernCharacter {
    type Output = ChernCharacter;
    fn neg(self) -> ChernCharacter {
        ChernCharacter::new(-self.ch0, -self.ch1, -self.ch2, -self.ch3)
    }
}

impl fmt::Display for ChernCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {}, {})",
            format_rational(&self.ch0),
            format_rational(&self.ch1),
            format_rational(&self.ch2),
            format_rational(&self.ch3),
        )
    }
}

impl Serialize for ChernCharacter {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let mut seq = ser.serialize_seq(Some(4))?;
        for c in self.components() {
            seq.serialize_element(&format_rational(c))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for ChernCharacter {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        struct ChVisitor;
        impl<'de> Visitor<'de> for ChVisitor {
            type Value = ChernCharacter;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an array of four rational strings")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Self::Value, A::Error> {
                let mut parts = Vec::with_capacity(4);
                while let Some(s) = seq.next_element::<String>()? {
                    let r = crate::rational::parse_rational(&s).map_err(de::Error::custom)?;
                    parts.push(r);
                }
                if parts.len() != 4 {
                    return Err(de::Error::invalid_length(parts.len(), &self));
                }
                let ch3 = parts.pop().unwrap();
                let ch2 = parts.pop().unwrap();
                let ch1 = parts.pop().unwrap();
                let ch0 = parts.pop().unwrap();
                Ok(ChernCharacter::new(ch0, ch1, ch2, ch3))
            }
        }
        de.deserialize_seq(ChVisitor)
    }
}

/// Named object classes with known Chern characters.
///
/// Serializes as a tagged object, e.g. `{"kind":"plane_sheaf","d":-3}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ObjectKind {
    /// O(n).
    LineBundle {
        /// Twist.
        n: i64,
    },
    /// The structure sheaf of a point.
    PointSheaf,
    /// O_V(d) for a plane V ⊂ P³.
    PlaneSheaf {
        /// Twist.
        d: i64,
    },
    /// O_L(d) for a line L ⊂ P³.
    LineSheaf {
        /// Twist.
        d: i64,
    },
    /// I_p(d), the twisted ideal sheaf of a point in P³.
    IdealPoint {
        /// Twist.
        d: i64,
    },
    /// I_{p/V}(d), the twisted ideal sheaf of a point inside a plane V.
    IdealPointInPlane {
        /// Twist.
        d: i64,
    },
    /// I_C for a twisted cubic curve C.
    IdealTwistedCubic,
    /// The shift E[1] of another kind: negates the class.
    ShiftOf {
        /// The unshifted kind.
        of: Box<ObjectKind>,
    },
}

impl ObjectKind {
    /// The Chern character of this object.
    pub fn chern(&self) -> ChernCharacter {
        ChernCharacter::of_standard(self)
    }
}
