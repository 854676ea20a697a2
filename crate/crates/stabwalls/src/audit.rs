//! Mechanical validation of homological bookkeeping: long-exact-sequence
//! fragment feasibility, alternating-sum cross-checks against the Euler
//! pairing, a ledger of moduli-dimension identities, and the component
//! decomposition of monomial quadric equations.

use crate::chern::ChernCharacter;
use crate::quiver::{expected_dim, DimVector, KroneckerQuiver};
use crate::rational::int;
use crate::riemann_roch::euler_pairing;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

/// A fragment of a long exact sequence: the dimensions of consecutive terms
/// together with the ranks of the maps entering from the left and leaving to
/// the right.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LESFragment {
    /// Dimensions of the displayed terms, left to right.
    pub dims: Vec<u64>,
    /// Rank of the map arriving at the first term from outside the fragment.
    pub r_in: u64,
    /// Rank of the map leaving the last term.
    pub r_out: u64,
}

impl LESFragment {
    /// Builds a fragment.
    pub fn new(dims: Vec<u64>, r_in: u64, r_out: u64) -> Self {
        Self { dims, r_in, r_out }
    }
}

/// Exactness cannot hold: some map would need negative rank, or the terminal
/// rank disagrees with the annotation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error, Serialize, Deserialize)]
#[error("exactness fails at position {position}")]
pub struct Infeasible {
    /// Index into `dims` where the rank recursion first fails;
    /// `dims.len()` signals a terminal mismatch.
    pub position: usize,
}

/// Solves the exactness recursion: with r₋₁ = r_in, each term must split as
/// d_i = r_{i−1} + r_i, so the outgoing ranks r_i are determined. Returns
/// them (one per term, the last equal to r_out) or the first failure.
pub fn feasible_ranks(frag: &LESFragment) -> Result<Vec<u64>, Infeasible> {
    let mut ranks = Vec::with_capacity(frag.dims.len());
    let mut prev = frag.r_in;
    for (position, &d) in frag.dims.iter().enumerate() {
        match d.checked_sub(prev) {
            Some(r) => {
                ranks.push(r);
                prev = r;
            }
            None => return Err(Infeasible { position }),
        }
    }
    if prev != frag.r_out {
        return Err(Infeasible { position: frag.dims.len() });
    }
    Ok(ranks)
}

/// One annotated line (row or column) of an Ext-dimension grid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridRow {
    /// Where the line sits in the grid.
    pub label: String,
    /// Term dimensions.
    pub dims: Vec<u64>,
    /// Forced incoming rank (encodes forced-zero first maps).
    pub r_in: u64,
    /// Required terminal rank.
    pub r_out: u64,
    /// Free-form description of what the line computes.
    #[serde(default)]
    pub cite: String,
}

/// A named grid of Ext dimensions with exactness annotations per line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtGrid {
    /// Grid name.
    #[serde(default)]
    pub name: String,
    /// The annotated rows and columns, each checked independently.
    pub rows: Vec<GridRow>,
}

/// Structural problems that prevent checking a grid at all.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MalformedGrid {
    /// The grid has no lines.
    #[error("grid has no rows")]
    NoRows,
    /// A line has no terms.
    #[error("grid line {label:?} has no dimensions")]
    EmptyDims {
        /// Label of the offending line.
        label: String,
    },
}

/// Outcome for one grid line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum RowVerdict {
    /// The exactness recursion closes.
    Feasible {
        /// The outgoing ranks, one per term.
        ranks: Vec<u64>,
    },
    /// The recursion fails.
    Infeasible {
        /// First failing position (see [`Infeasible`]).
        position: usize,
    },
}

/// A labelled verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowReport {
    /// The line's label.
    pub label: String,
    /// Its verdict.
    pub verdict: RowVerdict,
}

/// Verdicts for every line of a grid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridReport {
    /// The grid's name.
    pub name: String,
    /// Per-line verdicts in input order.
    pub rows: Vec<RowReport>,
}

impl GridReport {
    /// True when every line is feasible.
    pub fn all_feasible(&self) -> bool {
        self.rows
            .iter()
            .all(|r| matches!(r.verdict, RowVerdict::Feasible { .. }))
    }

    /// The labels of infeasible lines, in order.
    pub fn failures(&self) -> Vec<&RowReport> {
        self.rows
            .iter()
            .filter(|r| matches!(r.verdict, RowVerdict::Infeasible { .. }))
            .collect()
    }
}

impl fmt::Display for GridReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.name)?;
        for row in &self.rows {
            match &row.verdict {
                RowVerdict::Feasible { ranks } => {
                    let ranks: Vec<String> = ranks.iter().map(u64::to_string).collect();
                    writeln!(f, "  {}: feasible, ranks [{}]", row.label, ranks.join(", "))?;
                }
                RowVerdict::Infeasible { position } => {
                    writeln!(f, "  {}: INFEASIBLE at position {position}", row.label)?;
                }
            }
        }
        Ok(())
    }
}

/// Checks every line of a grid for exactness feasibility.
pub fn grid_check(grid: &ExtGrid) -> Result<GridReport, MalformedGrid> {
    if grid.rows.is_empty() {
        return Err(MalformedGrid::NoRows);
    }
    let mut rows = Vec::with_capacity(grid.rows.len());
    for row in &grid.rows {
        if row.dims.is_empty() {
            return Err(MalformedGrid::EmptyDims { label: row.label.clone() });
        }
        let frag = LESFragment::new(row.dims.clone(), row.r_in, row.r_out);
        let verdict = match feasible_ranks(&frag) {
            Ok(ranks) => RowVerdict::Feasible { ranks },
            Err(Infeasible { position }) => RowVerdict::Infeasible { position },
        };
        rows.push(RowReport { label: row.label.clone(), verdict });
    }
    Ok(GridReport { name: grid.name.clone(), rows })
}

/// Checks a table of Ext⁰..Ext³ dimensions against the Euler pairing:
/// d₀ − d₁ + d₂ − d₃ must equal χ(v, w).
pub fn chi_crosscheck(table: &[u64; 4], v: &ChernCharacter, w: &ChernCharacter) -> bool {
    let alternating = table[0] as i128 - table[1] as i128 + table[2] as i128 - table[3] as i128;
    euler_pairing(v, w) == int(alternating as i64)
}

/// A set of monomial quadric equations u_a·u_b = 0 in n coordinates
/// (1-based indices).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialQuadricSet {
    /// Number of coordinates.
    pub n: u32,
    /// The index pairs, normalized to a < b, sorted, deduplicated.
    pub pairs: Vec<(u32, u32)>,
}

/// Invalid monomial quadric input.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuadricSetError {
    /// An index is 0 or exceeds n.
    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange {
        /// The offending index.
        index: u32,
        /// The coordinate count.
        n: u32,
    },
    /// A pair uses the same index twice (a square, not admitted here).
    #[error("pair ({index}, {index}) is not a product of distinct coordinates")]
    SelfPair {
        /// The repeated index.
        index: u32,
    },
    /// Too many pairs for exhaustive component enumeration.
    #[error("too many pairs ({count}); at most 20 are supported")]
    TooManyPairs {
        /// The pair count.
        count: usize,
    },
}

impl MonomialQuadricSet {
    /// Validates and normalizes the equation set.
    pub fn new(n: u32, pairs: Vec<(u32, u32)>) -> Result<Self, QuadricSetError> {
        if pairs.len() > 20 {
            return Err(QuadricSetError::TooManyPairs { count: pairs.len() });
        }
        let mut normalized = Vec::with_capacity(pairs.len());
        for (a, b) in pairs {
            for index in [a, b] {
                if index == 0 || index > n {
                    return Err(QuadricSetError::IndexOutOfRange { index, n });
                }
            }
            if a == b {
                return Err(QuadricSetError::SelfPair { index: a });
            }
            normalized.push((a.min(b), a.max(b)));
        }
        normalized.sort_unstable();
        normalized.dedup();
        Ok(Self { n, pairs: normalized })
    }
}

/// A coordinate subspace {u_i = 0 for i in zero_set} of affine n-space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoordinateSubspace {
    /// Ambient coordinate count.
    pub ambient: u32,
    /// 1-based indices of the coordinates forced to zero, sorted.
    pub zero_set: Vec<u32>,
    /// Dimension: ambient − |zero_set|.
    pub dim: u32,
}

impl CoordinateSubspace {
    fn new(ambient: u32, zero_set: BTreeSet<u32>) -> Self {
        let dim = ambient - zero_set.len() as u32;
        Self { ambient, zero_set: zero_set.into_iter().collect(), dim }
    }

    /// True when this subspace contains the other (fewer vanishing
    /// constraints, all shared).
    pub fn contains(&self, other: &CoordinateSubspace) -> bool {
        self.ambient == other.ambient
            && self.zero_set.iter().all(|i| other.zero_set.contains(i))
    }

    /// Dimension of the intersection with another coordinate subspace.
    pub fn intersection_dim(&self, other: &CoordinateSubspace) -> u32 {
        let union: BTreeSet<u32> = self
            .zero_set
            .iter()
            .chain(other.zero_set.iter())
            .copied()
            .collect();
        self.ambient - union.len() as u32
    }
}

impl fmt::Display for CoordinateSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.zero_set.is_empty() {
            return write!(f, "full space, dim {}", self.dim);
        }
        let vars: Vec<String> = self.zero_set.iter().map(|i| format!("u{i}")).collect();
        write!(f, "{{{} = 0}}, dim {}", vars.join(" = "), self.dim)
    }
}

/// Decomposes the vanishing set of the quadrics into irreducible components.
///
/// Each component forces a minimal vertex cover of the pair graph to zero;
/// the result is sorted by dimension descending, then by zero set.
pub fn monomial_quadric_components(q: &MonomialQuadricSet) -> Vec<CoordinateSubspace> {
    let mut covers: Vec<BTreeSet<u32>> = Vec::new();
    collect_covers(&q.pairs, BTreeSet::new(), &mut covers);
    covers.sort();
    covers.dedup();
    let minimal: Vec<BTreeSet<u32>> = covers
        .iter()
        .filter(|c| {
            !covers
                .iter()
                .any(|other| other.len() < c.len() && other.is_subset(c))
        })
        .cloned()
        .collect();
    let mut components: Vec<CoordinateSubspace> = minimal
        .into_iter()
        .map(|cover| CoordinateSubspace::new(q.n, cover))
        .collect();
    components.sort_by(|a, b| b.dim.cmp(&a.dim).then(a.zero_set.cmp(&b.zero_set)));
    components
}

fn collect_covers(pairs: &[(u32, u32)], chosen: BTreeSet<u32>, out: &mut Vec<BTreeSet<u32>>) {
    match pairs
        .iter()
        .find(|(a, b)| !chosen.contains(a) && !chosen.contains(b))
    {
        None => out.push(chosen),
        Some(&(a, b)) => {
            let mut with_a = chosen.clone();
            with_a.insert(a);
            collect_covers(pairs, with_a, out);
            let mut with_b = chosen;
            with_b.insert(b);
            collect_covers(pairs, with_b, out);
        }
    }
}

/// One named dimension with the independent ways of computing it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Derivation {
    /// Human-readable formula.
    pub formula: String,
    /// Its value.
    pub value: i64,
}

/// A moduli-dimension identity: a target number and cross-module
/// derivations that must all reproduce it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerEntry {
    /// What the number measures.
    pub name: String,
    /// The asserted value.
    pub value: i64,
    /// Independent computations of the same number.
    pub derivations: Vec<Derivation>,
}

impl LedgerEntry {
    /// True when every derivation reproduces the asserted value.
    pub fn consistent(&self) -> bool {
        self.derivations.iter().all(|d| d.value == self.value)
    }
}

impl fmt::Display for LedgerEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.consistent() { "ok" } else { "MISMATCH" };
        write!(f, "{} = {} [{}]", self.name, self.value, status)?;
        for d in &self.derivations {
            write!(f, "\n    {} = {}", d.formula, d.value)?;
        }
        Ok(())
    }
}

/// The dimension bookkeeping for the wall-crossing geometry, each number
/// derived from at least one independent cross-module computation.
pub fn dimension_ledger() -> Vec<LedgerEntry> {
    let v = ChernCharacter::from_ints([1, 0, -3, 5]);
    let a = crate::chern::ObjectKind::IdealPoint { d: -1 }.chern();
    let b = crate::chern::ObjectKind::PlaneSheaf { d: -3 }.chern();
    let chi_ba = rational_to_i64(&euler_pairing(&b, &a));
    let chi_vv = rational_to_i64(&euler_pairing(&v, &v));
    let quiver_dim = expected_dim(KroneckerQuiver::new(4), DimVector::new(2, 3));

    let kuranishi = MonomialQuadricSet::new(16, vec![(1, 2), (1, 3), (1, 4), (1, 5)])
        .expect("static quadric set is valid");
    let components = monomial_quadric_components(&kuranishi);
    let (big, small) = (&components[0], &components[1]);

    let entry = |name: &str, value: i64, derivations: Vec<(String, i64)>| LedgerEntry {
        name: name.to_string(),
        value,
        derivations: derivations
            .into_iter()
            .map(|(formula, value)| Derivation { formula, value })
            .collect(),
    };

    vec![
        entry(
            "destabilizing extension group",
            10,
            vec![("minus the Euler pairing of the destabilizing pair".into(), -chi_ba)],
        ),
        entry(
            "extension fiber",
            9,
            vec![("extension group minus one".into(), -chi_ba - 1)],
        ),
        entry(
            "reverse-extension component",
            15,
            vec![
                ("extension fiber plus point-plane base".into(), (-chi_ba - 1) + 6),
                ("largest quadric component".into(), i64::from(big.dim)),
            ],
        ),
        entry(
            "smooth-model component",
            12,
            vec![
                ("quiver expected dimension".into(), quiver_dim),
                ("one minus the self-pairing".into(), 1 - chi_vv),
                ("smaller quadric component".into(), i64::from(small.dim)),
            ],
        ),
        entry(
            "exceptional divisor",
            11,
            vec![
                ("smooth-model component minus one".into(), quiver_dim - 1),
                ("blowup center plus projective fiber".into(), 5 + 6),
                (
                    "quadric component intersection".into(),
                    i64::from(big.intersection_dim(small)),
                ),
            ],
        ),
        entry(
            "intersection tangent space",
            16,
            vec![(
                "component dims by inclusion-exclusion".into(),
                i64::from(big.dim) + i64::from(small.dim) - i64::from(big.intersection_dim(small)),
            )],
        ),
        entry(
            "final-wall modification locus",
            14,
            vec![("extension fiber plus blowup center".into(), (-chi_ba - 1) + 5)],
        ),
        entry(
            "blowup center",
            5,
            vec![
                ("point-plane incidence dimension".into(), 3 + 3 - 1),
                ("exceptional divisor minus projective fiber".into(), 11 - 6),
            ],
        ),
    ]
}

fn rational_to_i64(r: &crate::rational::Rational) -> i64 {
    debug_assert!(r.is_integer());
    r.to_integer().to_i64().expect("ledger values fit in i64")
}

/// The Ext-dimension grids shipped with the crate.
pub mod builtin {
    use super::ExtGrid;

    /// Grid around an extension of the point-ideal sheaf by the twisted
    /// plane sheaf.
    pub const GRID_IDEAL_VS_STRUCTURE: &str =
        include_str!("../fixtures/grid_ideal_vs_structure.json");
    /// Reverse-extension grid at points of the projectivized normal bundle.
    pub const GRID_PLANE_POINT_NORMAL_LOCUS: &str =
        include_str!("../fixtures/grid_plane_point_normal_locus.json");
    /// Reverse-extension grid over incident point-plane pairs.
    pub const GRID_PLANE_POINT_INCIDENT: &str =
        include_str!("../fixtures/grid_plane_point_incident.json");
    /// Reverse-extension grid over generic point-plane pairs.
    pub const GRID_PLANE_POINT_GENERIC: &str =
        include_str!("../fixtures/grid_plane_point_generic.json");
    /// Grid around an extension for the final destabilizing pair.
    pub const GRID_EXTENSION_MIDDLE: &str =
        include_str!("../fixtures/grid_extension_middle.json");
    /// Central-column profiles ruled out by exactness.
    pub const GRID_EXTENSION_MIDDLE_COUNTERFACTUAL: &str =
        include_str!("../fixtures/grid_extension_middle_counterfactual.json");
    /// Grid on the exceptional locus of the final wall-crossing.
    pub const GRID_FLIP_LOCUS: &str = include_str!("../fixtures/grid_flip_locus.json");

    /// All shipped grids that must pass every exactness check.
    pub fn feasible_grids() -> Vec<ExtGrid> {
        [
            GRID_IDEAL_VS_STRUCTURE,
            GRID_PLANE_POINT_NORMAL_LOCUS,
            GRID_PLANE_POINT_INCIDENT,
            GRID_PLANE_POINT_GENERIC,
            GRID_EXTENSION_MIDDLE,
            GRID_FLIP_LOCUS,
        ]
        .iter()
        .map(|s| serde_json::from_str(s).expect("shipped fixture parses"))
        .collect()
    }

    /// The shipped counterfactual grid whose rows must all fail.
    pub fn counterfactual_grid() -> ExtGrid {
        serde_json::from_str(GRID_EXTENSION_MIDDLE_COUNTERFACTUAL)
            .expect("shipped fixture parses")
    }

    /// Looks a shipped grid up by file stem.
    pub fn by_name(name: &str) -> Option<ExtGrid> {
        let raw = match name {
            "grid_ideal_vs_structure" => GRID_IDEAL_VS_STRUCTURE,
            "grid_plane_point_normal_locus" => GRID_PLANE_POINT_NORMAL_LOCUS,
            "grid_plane_point_incident" => GRID_PLANE_POINT_INCIDENT,
            "grid_plane_point_generic" => GRID_PLANE_POINT_GENERIC,
            "grid_extension_middle" => GRID_EXTENSION_MIDDLE,
            "grid_extension_middle_counterfactual" => GRID_EXTENSION_MIDDLE_COUNTERFACTUAL,
            "grid_flip_locus" => GRID_FLIP_LOCUS,
            _ => return None,
        };
        Some(serde_json::from_str(raw).expect("shipped fixture parses"))
    }

    /// The file stems accepted by [`by_name`].
    pub fn names() -> &'static [&'static str] {
        &[
            "grid_ideal_vs_structure",
            "grid_plane_point_normal_locus",
            "grid_plane_point_incident",
            "grid_plane_point_generic",
            "grid_extension_middle",
            "grid_extension_middle_counterfactual",
            "grid_flip_locus",
        ]
    }
}
