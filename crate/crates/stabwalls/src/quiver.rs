//! θ-stability for representations of the 4-arrow Kronecker quiver with
//! dimension vector (2, 3): the weight θ(m, n) = −3m + 2n, the hereditary
//! Euler form, expected moduli dimension, and an exact stability decision
//! procedure with explicit destabilizing witnesses.

use crate::rational::{format_rational, int, Rational};
use num_traits::{One, Signed, Zero};
use serde::de::{self};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

/// The Kronecker quiver: two vertices with `arrow_count` parallel arrows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KroneckerQuiver {
    /// Number of arrows from the source vertex to the target vertex.
    pub arrow_count: u32,
}

impl KroneckerQuiver {
    /// The quiver with k arrows.
    pub fn new(arrow_count: u32) -> Self {
        Self { arrow_count }
    }
}

/// A dimension vector (m, n): source dimension m, target dimension n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct DimVector {
    /// Dimension at the source vertex.
    pub m: u32,
    /// Dimension at the target vertex.
    pub n: u32,
}

impl DimVector {
    /// Builds a dimension vector.
    pub fn new(m: u32, n: u32) -> Self {
        Self { m, n }
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.m, self.n)
    }
}

impl Serialize for DimVector {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let mut seq = ser.serialize_seq(Some(2))?;
        seq.serialize_element(&self.m)?;
        seq.serialize_element(&self.n)?;
        seq.end()
    }
}

impl<'de> Deserialize<'de> for DimVector {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let pair = <[u32; 2]>::deserialize(de)?;
        Ok(DimVector::new(pair[0], pair[1]))
    }
}

/// The stability weight θ(m, n) = −3m + 2n.
pub fn theta(d: DimVector) -> i64 {
    -3 * i64::from(d.m) + 2 * i64::from(d.n)
}

/// The hereditary Euler form ⟨d, e⟩ = m·m′ + n·n′ − k·m·n′ for k arrows.
pub fn euler_form(q: KroneckerQuiver, d: DimVector, e: DimVector) -> i64 {
    let (m, n) = (i64::from(d.m), i64::from(d.n));
    let (mp, np) = (i64::from(e.m), i64::from(e.n));
    m * mp + n * np - i64::from(q.arrow_count) * m * np
}

/// Expected dimension of the moduli of stable representations: 1 − ⟨d, d⟩.
pub fn expected_dim(q: KroneckerQuiver, d: DimVector) -> i64 {
    1 - euler_form(q, d, d)
}

/// All proper nonzero subdimension vectors of `d` with θ ≤ 0 — the
/// dimension types a destabilizing subrepresentation can have. Sorted.
pub fn destabilizing_subdims(d: DimVector) -> Vec<DimVector> {
    let mut out = Vec::new();
    for m in 0..=d.m {
        for n in 0..=d.n {
            let sub = DimVector::new(m, n);
            let zero = m == 0 && n == 0;
            let full = m == d.m && n == d.n;
            if !zero && !full && theta(sub) <= 0 {
                out.push(sub);
            }
        }
    }
    out.sort();
    out
}

/// Error for malformed representations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RepError {
    /// Input did not consist of four 3×2 matrices.
    #[error("representation shape invalid: {reason}")]
    ShapeError {
        /// What was wrong.
        reason: String,
    },
    /// A base-change matrix was singular.
    #[error("base-change matrix is singular")]
    SingularBaseChange,
}

/// A representation of the 4-arrow Kronecker quiver with dimension (2, 3):
/// four exact 3×2 matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverRep {
    /// `arrows[i][row][col]` is the (row, col) entry of the i-th matrix.
    pub arrows: [[[Rational; 2]; 3]; 4],
}

impl QuiverRep {
    /// Builds a representation from four 3×2 integer matrices.
    pub fn from_ints(arrows: [[[i64; 2]; 3]; 4]) -> Self {
        Self { arrows: arrows.map(|m| m.map(|row| row.map(int))) }
    }

    /// The all-zero representation.
    pub fn zero() -> Self {
        Self::from_ints([[[0; 2]; 3]; 4])
    }

    /// The representation carrying the Hilbert–Burch matrix of a twisted
    /// cubic: the four coordinate slices of the standard 3×2 matrix of
    /// linear forms whose 2×2 minors cut out the curve. It is θ-stable.
    pub fn hilbert_burch() -> Self {
        Self::from_ints([
            [[1, 0], [0, 0], [0, 0]],
            [[0, 1], [1, 0], [0, 0]],
            [[0, 0], [0, 1], [1, 0]],
            [[0, 0], [0, 0], [0, 1]],
        ])
    }

    /// Applies the base change (g, h): each arrow f becomes h·f·g⁻¹.
    /// Errors when g (2×2) or h (3×3) is singular.
    pub fn base_change(
        &self,
        g: &[[Rational; 2]; 2],
        h: &[[Rational; 3]; 3],
    ) -> Result<Self, RepError> {
        let g_mat = Mat::from_rows(2, 2, &g.iter().flatten().cloned().collect::<Vec<_>>());
        let h_mat = Mat::from_rows(3, 3, &h.iter().flatten().cloned().collect::<Vec<_>>());
        let g_inv = g_mat.inverse().ok_or(RepError::SingularBaseChange)?;
        if h_mat.rank() < 3 {
            return Err(RepError::SingularBaseChange);
        }
        let mut out = Self::zero();
        for (i, f) in self.arrows.iter().enumerate() {
            let f_mat =
                Mat::from_rows(3, 2, &f.iter().flatten().cloned().collect::<Vec<_>>());
            let changed = h_mat.mul(&f_mat).mul(&g_inv);
            for r in 0..3 {
                for c in 0..2 {
                    out.arrows[i][r][c] = changed.get(r, c).clone();
                }
            }
        }
        Ok(out)
    }
}

impl Serialize for QuiverRep {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            arrows: Vec<Vec<Vec<String>>>,
        }
        let arrows = self
            .arrows
            .iter()
            .map(|m| {
                m.iter()
                    .map(|row| row.iter().map(format_rational).collect())
                    .collect()
            })
            .collect();
        Repr { arrows }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for QuiverRep {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            arrows: Vec<Vec<Vec<String>>>,
        }
        let raw = Repr::deserialize(de)?;
        QuiverRep::try_from_strings(&raw.arrows).map_err(de::Error::custom)
    }
}

impl QuiverRep {
    /// Parses four 3×2 matrices of rational strings, validating the shape.
    pub fn try_from_strings(arrows: &[Vec<Vec<String>>]) -> Result<Self, RepError> {
        if arrows.len() != 4 {
            return Err(RepError::ShapeError {
                reason: format!("expected 4 arrows, got {}", arrows.len()),
            });
        }
        let mut rep = Self::zero();
        for (i, m) in arrows.iter().enumerate() {
            if m.len() != 3 {
                return Err(RepError::ShapeError {
                    reason: format!("arrow {i}: expected 3 rows, got {}", m.len()),
                });
            }
            for (r, row) in m.iter().enumerate() {
                if row.len() != 2 {
                    return Err(RepError::ShapeError {
                        reason: format!("arrow {i} row {r}: expected 2 entries, got {}", row.len()),
                    });
                }
                for (c, s) in row.iter().enumerate() {
                    rep.arrows[i][r][c] =
                        crate::rational::parse_rational(s).map_err(|e| RepError::ShapeError {
                            reason: format!("arrow {i} row {r} col {c}: {e}"),
                        })?;
                }
            }
        }
        Ok(rep)
    }
}

/// Where on P¹ a destabilizing source vector sits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum PencilPoint {
    /// The vector (1, t) for a rational t.
    Rational {
        /// The chart coordinate.
        #[serde(with = "crate::rational::rational_string")]
        t: Rational,
    },
    /// The vector (0, 1).
    AtInfinity,
    /// An irrational point: (1, t) with t a root of the given monic
    /// quadratic, listed by ascending-degree coefficients.
    Quadratic {
        /// Coefficients c₀, c₁, c₂ of c₀ + c₁t + c₂t².
        min_poly: Vec<String>,
    },
}

/// The evidence behind an instability verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum WitnessDetail {
    /// A source vector killed by every arrow.
    CommonKernel {
        /// The vector, as two rational strings.
        vector: Vec<String>,
    },
    /// The total image of all arrows, too small to be full.
    SmallImage {
        /// A basis of the image, each vector three rational strings.
        basis: Vec<Vec<String>>,
    },
    /// A source vector whose images under all four arrows span ≤ 1 dimension.
    Pencil {
        /// Where the vector sits on P¹.
        point: PencilPoint,
    },
}

/// A destabilizing subrepresentation found by the decision procedure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// Dimension vector of the destabilizing subrepresentation; θ ≤ 0.
    pub subdim: DimVector,
    /// Explicit data exhibiting it.
    pub detail: WitnessDetail,
}

/// The outcome of the stability decision.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityVerdict {
    /// True when no proper nonzero subrepresentation has θ ≤ 0.
    pub stable: bool,
    /// Present exactly when unstable.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

/// Decides θ-stability of a (2, 3)-representation exactly.
///
/// Checks, in order: a common kernel vector (witness (1, 0)); total image of
/// dimension ≤ 2 (witness (2, dim)); a source vector v with
/// dim span{f₁v, …, f₄v} ≤ 1, detected on the chart v = (1, t) by the gcd of
/// all 2×2 minors and at v = (0, 1) directly (witness (1, 1)).
pub fn is_stable_rep(rep: &QuiverRep) -> StabilityVerdict {
    // 1. Common kernel: stack the four matrices into a 12×2 matrix.
    let mut stacked = Vec::with_capacity(24);
    for f in &rep.arrows {
        for row in f {
            stacked.extend(row.iter().cloned());
        }
    }
    let stacked = Mat::from_rows(12, 2, &stacked);
    let kernel = stacked.kernel();
    if let Some(vec) = kernel.first() {
        return StabilityVerdict {
            stable: false,
            witness: Some(Witness {
                subdim: DimVector::new(1, 0),
                detail: WitnessDetail::CommonKernel {
                    vector: vec.iter().map(format_rational).collect(),
                },
            }),
        };
    }

    // 2. Total image: concatenate the columns into a 3×8 matrix.
    let mut cols: Vec<Vec<Rational>> = Vec::with_capacity(8);
    for f in &rep.arrows {
        for c in 0..2 {
            cols.push((0..3).map(|r| f[r][c].clone()).collect());
        }
    }
    let total = Mat::from_cols(3, &cols);
    let basis = total.column_space_basis();
    if basis.len() <= 2 {
        return StabilityVerdict {
            stable: false,
            witness: Some(Witness {
                subdim: DimVector::new(2, basis.len() as u32),
                detail: WitnessDetail::SmallImage {
                    basis: basis
                        .iter()
                        .map(|v| v.iter().map(format_rational).collect())
                        .collect(),
                },
            }),
        };
    }

    // 3. Pencil chart v = (1, t): the four image vectors are aᵢ + t·bᵢ with
    // aᵢ, bᵢ the matrix columns; their span drops to ≤ 1 exactly where all
    // 2×2 minors vanish.
    let col = |i: usize, c: usize| -> Vec<Rational> {
        (0..3).map(|r| rep.arrows[i][r][c].clone()).collect()
    };
    let mut minors: Vec<Poly> = Vec::new();
    for i in 0..4 {
        for j in (i + 1)..4 {
            for r1 in 0..3 {
                for r2 in (r1 + 1)..3 {
                    // det of [[aᵢ+t·bᵢ, aⱼ+t·bⱼ]] restricted to rows r1, r2.
                    let (ai, bi) = (col(i, 0), col(i, 1));
                    let (aj, bj) = (col(j, 0), col(j, 1));
                    let c0 = &ai[r1] * &aj[r2] - &ai[r2] * &aj[r1];
                    let c1 = &ai[r1] * &bj[r2] - &ai[r2] * &bj[r1] + &bi[r1] * &aj[r2]
                        - &bi[r2] * &aj[r1];
                    let c2 = &bi[r1] * &bj[r2] - &bi[r2] * &bj[r1];
                    minors.push(Poly::new(vec![c0, c1, c2]));
                }
            }
        }
    }
    let gcd = minors.into_iter().fold(Poly::zero(), |acc, p| acc.gcd(&p));
    if gcd.is_zero() {
        // Every minor vanishes identically; v = (1, 0) already works.
        return pencil_witness(PencilPoint::Rational { t: int(0) });
    }
    if gcd.degree() >= 1 {
        return pencil_witness(pencil_point_from(&gcd));
    }

    // Chart point at infinity, v = (0, 1): second columns only.
    let inf_cols: Vec<Vec<Rational>> = (0..4).map(|i| col(i, 1)).collect();
    let inf = Mat::from_cols(3, &inf_cols);
    if inf.rank() <= 1 {
        return pencil_witness(PencilPoint::AtInfinity);
    }

    StabilityVerdict { stable: true, witness: None }
}

fn pencil_witness(point: PencilPoint) -> StabilityVerdict {
    StabilityVerdict {
        stable: false,
        witness: Some(Witness {
            subdim: DimVector::new(1, 1),
            detail: WitnessDetail::Pencil { point },
        }),
    }
}

/// Extracts a root description from a nonconstant gcd of the minors.
fn pencil_point_from(gcd: &Poly) -> PencilPoint {
    match gcd.degree() {
        1 => {
            // c₀ + c₁·t = 0.
            let t = -&gcd.coeffs[0] / &gcd.coeffs[1];
            PencilPoint::Rational { t }
        }
        _ => {
            // Monic quadratic t² + p·t + q; rational roots iff the
            // discriminant is a rational square.
            let monic = gcd.monic();
            let p = monic.coeffs[1].clone();
            let q = monic.coeffs[0].clone();
            let disc = &p * &p - int(4) * &q;
            if let Some(root) = rational_sqrt(&disc) {
                PencilPoint::Rational { t: (-&p - root) / int(2) }
            } else {
                PencilPoint::Quadratic {
                    min_poly: monic.coeffs.iter().map(format_rational).collect(),
                }
            }
        }
    }
}

/// √r as an exact rational, when it exists.
fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let ns = r.numer().sqrt();
    let ds = r.denom().sqrt();
    if &(&ns * &ns) == r.numer() && &(&ds * &ds) == r.denom() {
        Some(Rational::new(ns, ds))
    } else {
        None
    }
}

// ---------------------------------------------------------------------------
// Minimal exact linear algebra and univariate polynomial arithmetic.

/// A dense matrix of rationals.
#[derive(Debug, Clone)]
struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Mat {
    fn from_rows(rows: usize, cols: usize, data: &[Rational]) -> Self {
        assert_eq!(data.len(), rows * cols);
        Self { rows, cols, data: data.to_vec() }
    }

    fn from_cols(rows: usize, cols: &[Vec<Rational>]) -> Self {
        let mut data = vec![Rational::zero(); rows * cols.len()];
        for (c, col) in cols.iter().enumerate() {
            for (r, x) in col.iter().enumerate() {
                data[r * cols.len() + c] = x.clone();
            }
        }
        Self { rows, cols: cols.len(), data }
    }

    fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows);
        let mut out = Mat {
            rows: self.rows,
            cols: other.cols,
            data: vec![Rational::zero(); self.rows * other.cols],
        };
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = Rational::zero();
                for k in 0..self.cols {
                    acc += self.get(r, k) * other.get(k, c);
                }
                out.set(r, c, acc);
            }
        }
        out
    }

    /// Reduced row echelon form; returns the pivot column indices.
    fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            for c in 0..self.cols {
                self.data.swap(row * self.cols + c, p * self.cols + c);
            }
            let inv = self.get(row, col).clone();
            for c in 0..self.cols {
                let v = self.get(row, c) / &inv;
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r != row && !self.get(r, col).is_zero() {
                    let factor = self.get(r, col).clone();
                    for c in 0..self.cols {
                        let v = self.get(r, c) - &factor * self.get(row, c);
                        self.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// A basis of the null space.
    fn kernel(&self) -> Vec<Vec<Rational>> {
        let mut reduced = self.clone();
        let pivots = reduced.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![Rational::zero(); self.cols];
                v[fc] = Rational::one();
                for (prow, &pcol) in pivots.iter().enumerate() {
                    v[pcol] = -reduced.get(prow, fc).clone();
                }
                v
            })
            .collect()
    }

    /// The pivot columns of the original matrix: a basis of the column space.
    fn column_space_basis(&self) -> Vec<Vec<Rational>> {
        let mut reduced = self.clone();
        let pivots = reduced.rref();
        pivots
            .iter()
            .map(|&c| (0..self.rows).map(|r| self.get(r, c).clone()).collect())
            .collect()
    }

    /// Inverse of a square matrix via Gauss–Jordan, or None if singular.
    fn inverse(&self) -> Option<Mat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Mat {
            rows: n,
            cols: 2 * n,
            data: vec![Rational::zero(); n * 2 * n],
        };
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, Rational::one());
        }
        let pivots = aug.rref();
        if pivots != (0..n).collect::<Vec<_>>() {
            return None;
        }
        let mut out = Mat { rows: n, cols: n, data: vec![Rational::zero(); n * n] };
        for r in 0..n {
            for c in 0..n {
                out.set(r, c, aug.get(r, n + c).clone());
            }
        }
        Some(out)
    }
}

/// A univariate polynomial over the rationals, ascending coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lead = self.coeffs.last().unwrap().clone();
        Poly::new(self.coeffs.iter().map(|c| c / &lead).collect())
    }

    /// Remainder of self divided by other (other nonzero).
    fn rem(&self, other: &Poly) -> Poly {
        let mut r = self.coeffs.clone();
        let d = other.degree();
        let lead = other.coeffs.last().unwrap();
        while r.len() > d && !r.is_empty() {
            let k = r.len() - 1;
            let factor = r[k].clone() / lead;
            if !factor.is_zero() {
                for i in 0..=d {
                    let idx = k - d + i;
                    r[idx] = &r[idx] - &factor * &other.coeffs[i];
                }
            }
            r.pop();
            while r.last().is_some_and(Rational::is_zero) {
                r.pop();
            }
        }
        Poly::new(r)
    }

    /// Monic greatest common divisor by the Euclidean algorithm.
    fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }
}
