//! Numerical walls and chambers: tilt-wall circles, wall residuals for both
//! slope functions, destabilizer enumeration, and a path scanner that
//! brackets every wall crossing in exact rationals.

use crate::chern::ChernCharacter;
use crate::lambda::z_lambda;
use crate::rational::{format_rational, int, ratio, sign, Rational};
use crate::tilt::{z_tilt, StabilityParams};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A numerical wall in the (β, α) upper half-plane.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WallCircle {
    /// A semicircle centered on the β-axis.
    Semicircle {
        /// β-coordinate of the center.
        #[serde(with = "crate::rational::rational_string")]
        center: Rational,
        /// Square of the radius; strictly positive.
        #[serde(with = "crate::rational::rational_string")]
        radius_sq: Rational,
    },
    /// A vertical line β = β₀.
    Vertical {
        /// The fixed β value.
        #[serde(with = "crate::rational::rational_string")]
        beta0: Rational,
    },
    /// The two classes have identical slope everywhere (proportional charges).
    DegenerateEqual,
    /// The wall equation has no solutions with α > 0.
    Empty,
}

impl fmt::Display for WallCircle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WallCircle::Semicircle { center, radius_sq } => write!(
                f,
                "semicircle(center={}, radius_sq={})",
                format_rational(center),
                format_rational(radius_sq)
            ),
            WallCircle::Vertical { beta0 } => {
                write!(f, "vertical(beta0={})", format_rational(beta0))
            }
            WallCircle::DegenerateEqual => write!(f, "degenerate_equal"),
            WallCircle::Empty => write!(f, "empty"),
        }
    }
}

/// The numerical tilt wall of the pair (v, w): the locus where the two tilt
/// charges align. With (r, c, d) = (ch₀, ch₁, ch₂) of each class, the wall
/// equation is (α² + β²)/2·K₁ − β·K₂ + K₃ = 0 where K₁ = rc′ − r′c,
/// K₂ = rd′ − r′d, K₃ = cd′ − c′d.
pub fn tilt_wall(v: &ChernCharacter, w: &ChernCharacter) -> WallCircle {
    let k1 = &v.ch0 * &w.ch1 - &w.ch0 * &v.ch1;
    let k2 = &v.ch0 * &w.ch2 - &w.ch0 * &v.ch2;
    let k3 = &v.ch1 * &w.ch2 - &w.ch1 * &v.ch2;
    if !k1.is_zero() {
        let center = &k2 / &k1;
        let radius_sq = (&k2 * &k2 - int(2) * &k1 * &k3) / (&k1 * &k1);
        if radius_sq.is_positive() {
            WallCircle::Semicircle { center, radius_sq }
        } else {
            WallCircle::Empty
        }
    } else if !k2.is_zero() {
        WallCircle::Vertical { beta0: &k3 / &k2 }
    } else if !k3.is_zero() {
        WallCircle::Empty
    } else {
        WallCircle::DegenerateEqual
    }
}

/// Which slope function a scan compares.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanKind {
    /// The tilt charge Z_{α,β} (blind to ch₃).
    Tilt,
    /// The second-tilt charge Z_{α,β,s}.
    Lambda,
}

/// The wall residual Im(Z(w)·conj(Z(v))) for the chosen charge: zero exactly
/// when the two slopes agree (including ∞ = ∞), with sign giving the order.
pub fn wall_residual(
    v: &ChernCharacter,
    w: &ChernCharacter,
    params: &StabilityParams,
    kind: ScanKind,
) -> Rational {
    let (zv, zw) = match kind {
        ScanKind::Tilt => (z_tilt(v, params), z_tilt(w, params)),
        ScanKind::Lambda => (z_lambda(v, params), z_lambda(w, params)),
    };
    zv.cross(&zw)
}

/// The λ-wall residual Im(Z_λ(w)·conj(Z_λ(v))).
pub fn lambda_wall_residual(
    v: &ChernCharacter,
    w: &ChernCharacter,
    params: &StabilityParams,
) -> Rational {
    wall_residual(v, w, params, ScanKind::Lambda)
}

/// Errors from wall scanning and destabilizer enumeration.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WallError {
    /// A candidate's residual against v vanishes identically (the classes
    /// are proportional), so it defines no wall.
    #[error("candidate {index} is degenerate: its residual against v vanishes identically")]
    DegenerateCandidate {
        /// Index into the candidate list.
        index: usize,
    },
    /// The candidate list was empty.
    #[error("no candidate classes supplied")]
    EmptyCandidates,
    /// Im Z of the scanned class must be positive to enumerate destabilizers.
    #[error("Im Z_tilt(v) is not positive at the given parameters")]
    NotPositiveIm,
    /// The tolerance must be strictly positive.
    #[error("tolerance must be > 0, got {0}")]
    InvalidTolerance(String),
    /// A path must contain at least one segment.
    #[error("path has no segments")]
    EmptyPath,
}

/// One straight segment in parameter space: all of (β, α², s) interpolate
/// linearly from `from` to `to`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathSegment {
    /// Start point.
    pub from: StabilityParams,
    /// End point.
    pub to: StabilityParams,
}

impl PathSegment {
    /// The parameter point at time t ∈ [0, 1].
    pub fn at(&self, t: &Rational) -> StabilityParams {
        let lerp = |a: &Rational, b: &Rational| a + t * (b - a);
        StabilityParams::new(
            lerp(self.from.beta(), self.to.beta()),
            lerp(self.from.alpha_sq(), self.to.alpha_sq()),
            lerp(self.from.s(), self.to.s()),
        )
        .expect("positive endpoints stay positive under linear interpolation")
    }
}

/// A piecewise-linear path through stability-parameter space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathSpec {
    /// Segments, traversed in order.
    pub segments: Vec<PathSegment>,
    /// When true, the path is traversed in the opposite orientation.
    #[serde(default)]
    pub reversed: bool,
}

impl PathSpec {
    /// Builds a path from consecutive waypoints.
    pub fn from_waypoints(points: Vec<StabilityParams>) -> Result<Self, WallError> {
        if points.len() < 2 {
            return Err(WallError::EmptyPath);
        }
        let segments = points
            .windows(2)
            .map(|w| PathSegment { from: w[0].clone(), to: w[1].clone() })
            .collect();
        Ok(Self { segments, reversed: false })
    }

    /// The segments in traversal order, honoring the orientation flag.
    pub fn oriented_segments(&self) -> Vec<PathSegment> {
        if self.reversed {
            self.segments
                .iter()
                .rev()
                .map(|s| PathSegment { from: s.to.clone(), to: s.from.clone() })
                .collect()
        } else {
            self.segments.clone()
        }
    }
}

/// A bracketed sign change of a wall residual along a path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crossing {
    /// Index of the segment (in traversal order) where the sign flips.
    pub segment: usize,
    /// Left end of the bracketing interval in the segment's t ∈ [0, 1].
    #[serde(with = "crate::rational::rational_string")]
    pub t0: Rational,
    /// Right end of the bracketing interval.
    #[serde(with = "crate::rational::rational_string")]
    pub t1: Rational,
    /// Index of the crossing candidate in the input list.
    pub candidate_index: usize,
    /// The crossing candidate class.
    pub candidate: ChernCharacter,
    /// Residual sign (−1 or 1) before the crossing.
    pub sign_before: i8,
    /// Residual sign (−1 or 1) after the crossing.
    pub sign_after: i8,
}

/// The default scan tolerance, 1/1024 of a segment.
pub fn default_tolerance() -> Rational {
    ratio(1, 1024)
}

/// The shipped default path: three segments at s = 1/3 which cross the
/// three walls of v = (1, 0, −3, 5) exactly once each, in order —
/// (−5/2, 1/5) → (−5/2, 1/2) → (−9/2, 1/2) → (−9/2, 10) in (β, α²).
pub fn default_path() -> PathSpec {
    let point = |beta: (i64, i64), alpha_sq: (i64, i64)| {
        StabilityParams::from_ratios(beta, alpha_sq, (1, 3)).expect("valid default path point")
    };
    PathSpec::from_waypoints(vec![
        point((-5, 2), (1, 5)),
        point((-5, 2), (1, 2)),
        point((-9, 2), (1, 2)),
        point((-9, 2), (10, 1)),
    ])
    .expect("default path has segments")
}

/// The three destabilizing candidate classes for v = (1, 0, −3, 5):
/// 3·ch(O(−2)), ch(I_p(−1)), ch(O(−1)).
pub fn default_candidates() -> Vec<ChernCharacter> {
    vec![
        ChernCharacter::line_bundle(-2).scale(3),
        crate::chern::ObjectKind::IdealPoint { d: -1 }.chern(),
        ChernCharacter::line_bundle(-1),
    ]
}

/// Scans a path for sign changes of each candidate's wall residual against
/// `v`, sampling at resolution `tol` and bracketing each crossing to width
/// ≤ `tol`. Crossings are ordered by (segment, t₀, candidate index).
pub fn scan_path(
    v: &ChernCharacter,
    path: &PathSpec,
    candidates: &[ChernCharacter],
    kind: ScanKind,
    tol: &Rational,
) -> Result<Vec<Crossing>, WallError> {
    if candidates.is_empty() {
        return Err(WallError::EmptyCandidates);
    }
    if path.segments.is_empty() {
        return Err(WallError::EmptyPath);
    }
    if !tol.is_positive() {
        return Err(WallError::InvalidTolerance(format_rational(tol)));
    }
    for (index, w) in candidates.iter().enumerate() {
        if w.is_proportional_to(v) {
            return Err(WallError::DegenerateCandidate { index });
        }
    }

    let segments = path.oriented_segments();
    // Sample times 0, tol, 2·tol, …, capped at 1.
    let mut times = Vec::new();
    let mut k = BigInt::zero();
    loop {
        let t = tol * Rational::from_integer(k.clone());
        if t >= Rational::one() {
            times.push(Rational::one());
            break;
        }
        times.push(t);
        k += BigInt::one();
    }

    let mut crossings = Vec::new();
    for (seg_idx, segment) in segments.iter().enumerate() {
        let points: Vec<StabilityParams> = times.iter().map(|t| segment.at(t)).collect();
        for (cand_idx, w) in candidates.iter().enumerate() {
            let signs: Vec<i8> = points
                .iter()
                .map(|p| sign(&wall_residual(v, w, p, kind)))
                .collect();
            if signs.iter().all(|s| *s == 0) {
                return Err(WallError::DegenerateCandidate { index: cand_idx });
            }
            // Walk the sign sequence; zeros at sample points pin a crossing
            // exactly, otherwise adjacent opposite signs bracket one.
            let mut prev: Option<(i8, usize)> = None;
            let mut zeros: Vec<usize> = Vec::new();
            for (i, s) in signs.iter().enumerate() {
                if *s == 0 {
                    zeros.push(i);
                    continue;
                }
                if let Some((ps, pi)) = prev {
                    if ps != *s {
                        let (t0, t1) = match (zeros.first(), zeros.last()) {
                            (Some(&z0), Some(&z1)) => (times[z0].clone(), times[z1].clone()),
                            _ => (times[pi].clone(), times[i].clone()),
                        };
                        crossings.push(Crossing {
                            segment: seg_idx,
                            t0,
                            t1,
                            candidate_index: cand_idx,
                            candidate: w.clone(),
                            sign_before: ps,
                            sign_after: *s,
                        });
                    }
                }
                prev = Some((*s, i));
                zeros.clear();
            }
        }
    }
    crossings.sort_by(|a, b| {
        (a.segment, &a.t0, a.candidate_index).cmp(&(b.segment, &b.t0, b.candidate_index))
    });
    Ok(crossings)
}

/// A chamber between consecutive crossings along a path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chamber {
    /// 1-based position along the path.
    pub index: usize,
    /// Human-readable label, `chamber 1` through `chamber n`.
    pub label: String,
}

/// A crossed wall, annotated with the decomposition v = v_A + v_B it
/// witnesses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallReport {
    /// The underlying crossing.
    pub crossing: Crossing,
    /// The destabilizing class (the candidate).
    pub v_a: ChernCharacter,
    /// The complementary class v − v_A.
    pub v_b: ChernCharacter,
}

/// The chamber decomposition of a path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChamberReport {
    /// Chambers in path order; always one more than `walls`.
    pub chambers: Vec<Chamber>,
    /// Crossed walls in path order.
    pub walls: Vec<WallReport>,
}

/// Runs [`scan_path`] and decorates the result with chamber labels and the
/// decomposition v = v_A + v_B at each crossed wall.
pub fn chamber_report(
    v: &ChernCharacter,
    path: &PathSpec,
    candidates: &[ChernCharacter],
    kind: ScanKind,
    tol: &Rational,
) -> Result<ChamberReport, WallError> {
    let crossings = scan_path(v, path, candidates, kind, tol)?;
    let walls: Vec<WallReport> = crossings
        .into_iter()
        .map(|crossing| {
            let v_a = crossing.candidate.clone();
            let v_b = v - &v_a;
            WallReport { crossing, v_a, v_b }
        })
        .collect();
    let chambers = (1..=walls.len() + 1)
        .map(|index| Chamber { index, label: format!("chamber {index}") })
        .collect();
    Ok(ChamberReport { chambers, walls })
}

/// A rank-≤-2 truncation (ch₀, ch₁, ch₂) of a candidate destabilizer class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedClass {
    /// ch₀ (integer).
    pub ch0: BigInt,
    /// ch₁ (integer).
    pub ch1: BigInt,
    /// ch₂ (half-integer).
    pub ch2: Rational,
}

impl TruncatedClass {
    /// Extends by ch₃ = 0 for charge evaluation.
    pub fn to_chern(&self) -> ChernCharacter {
        ChernCharacter::new(
            Rational::from_integer(self.ch0.clone()),
            Rational::from_integer(self.ch1.clone()),
            self.ch2.clone(),
            int(0),
        )
    }

    /// The lexicographic sort key (ch₀, ch₁, 2·ch₂).
    fn sort_key(&self) -> (BigInt, BigInt, BigInt) {
        (self.ch0.clone(), self.ch1.clone(), (int(2) * &self.ch2).to_integer())
    }
}

impl Serialize for TruncatedClass {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = ser.serialize_seq(Some(3))?;
        seq.serialize_element(&self.ch0.to_string())?;
        seq.serialize_element(&self.ch1.to_string())?;
        seq.serialize_element(&format_rational(&self.ch2))?;
        seq.end()
    }
}

impl<'de> Deserialize<'de> for TruncatedClass {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let parts = <[String; 3]>::deserialize(de)?;
        let int_part = |s: &String| -> Result<BigInt, D::Error> {
            s.parse::<BigInt>()
                .map_err(|_| D::Error::custom(format!("expected an integer, got {s:?}")))
        };
        Ok(TruncatedClass {
            ch0: int_part(&parts[0])?,
            ch1: int_part(&parts[1])?,
            ch2: crate::rational::parse_rational(&parts[2]).map_err(D::Error::custom)?,
        })
    }
}

impl fmt::Display for TruncatedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.ch0, self.ch1, format_rational(&self.ch2))
    }
}

/// Enumerates all lattice-truncated classes w = (r′, c′, d′) that could
/// destabilize `v` at the given parameter point: |r′| ≤ `rank_bound`,
/// 0 < Im Z(w) < Im Z(v), Z(w) parallel to Z(v), Δ(w) ≥ 0, Δ(v − w) ≥ 0,
/// with Chern integrality r′, c′ ∈ ℤ, 2d′ ∈ ℤ, 2d′ ≡ c′ (mod 2).
/// Sorted lexicographically by (r′, c′, 2d′).
pub fn enumerate_destabilizers(
    v: &ChernCharacter,
    params: &StabilityParams,
    rank_bound: u32,
) -> Result<Vec<TruncatedClass>, WallError> {
    let zv = z_tilt(v, params);
    if !zv.im.is_positive() {
        return Err(WallError::NotPositiveIm);
    }
    let beta = params.beta();
    let half_diff = (beta * beta - params.alpha_sq()) / int(2);
    let delta = |r: &Rational, c: &Rational, d: &Rational| c * c - int(2) * r * d;

    let mut out = Vec::new();
    let bound = i64::from(rank_bound);
    for rp in -bound..=bound {
        let r = int(rp);
        // Im window: 0 < c′ − β·r′ < Im Z(v).
        let lo = beta * &r;
        let hi = &lo + &zv.im;
        let mut c = lo.floor().to_integer();
        loop {
            let cr = Rational::from_integer(c.clone());
            if cr > hi {
                break;
            }
            let im_w = &cr - &lo;
            if im_w.is_positive() && im_w < zv.im {
                // Parallel condition fixes d′: Re Z(w) = Re Z(v)·Im Z(w)/Im Z(v)
                // with Re Z(w) = −(d′ − β·c′ + (β²/2 − α²/2)·r′).
                let re_w = &zv.re * &im_w / &zv.im;
                let d = -&re_w + beta * &cr - &half_diff * &r;
                let two_d = int(2) * &d;
                let integral = two_d.is_integer()
                    && ((two_d.to_integer() - &c) % BigInt::from(2)).is_zero();
                if integral
                    && !delta(&r, &cr, &d).is_negative()
                    && !delta(&(&v.ch0 - &r), &(&v.ch1 - &cr), &(&v.ch2 - &d)).is_negative()
                {
                    out.push(TruncatedClass { ch0: r.to_integer(), ch1: c.clone(), ch2: d });
                }
            }
            c += 1;
        }
    }
    out.sort_by_key(|w| w.sort_key());
    Ok(out)
}
