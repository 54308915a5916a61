//! The affine hyperplanes `{x : μ(x) = level}` that meet the dominant
//! chamber, the open regions they cut it into, and the weight set `I_R` of
//! each region.

use crate::liecore::{pairing, LieError, Point, RootSystem, Weight, WeightSystem};
use crate::lp::{self, LpOutcome};
use crate::minnorm::{HalfSpace, Polyhedron};
use crate::rational::{dot_int, int, Matrix, Rational};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;
use std::fmt;

pub fn default_level() -> Rational {
    int(2)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArrangementError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("level must be positive, got {0}")]
    LevelNotPositive(Rational),
    #[error("hyperplane for weight {0} does not meet the open dominant chamber")]
    MissesChamber(Weight),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hyperplane {
    pub weight: Weight,
    pub level: Rational,
}

impl Hyperplane {
    /// `μ(h) − level`.
    pub fn offset(&self, h: &Point) -> Rational {
        dot_int(self.weight.fw_coords(), h.coroot_coords()) - &self.level
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Below,
    Above,
}

impl Side {
    pub fn symbol(self) -> char {
        match self {
            Side::Below => '-',
            Side::Above => '+',
        }
    }

    pub fn from_symbol(c: char) -> Option<Side> {
        match c {
            '-' | '−' => Some(Side::Below),
            '+' => Some(Side::Above),
            _ => None,
        }
    }
}

pub fn signs_to_string(signs: &[Side]) -> String {
    signs.iter().map(|s| s.symbol()).collect()
}

/// A row `normal · a ≥ bound` with an integral normal in fundamental-weight
/// coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClosureRow {
    pub normal: Vec<i64>,
    pub bound: Rational,
}

impl ClosureRow {
    pub fn to_half_space(&self) -> HalfSpace {
        HalfSpace::new(self.normal.iter().map(|&x| int(x)).collect(), self.bound.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    pub id: usize,
    pub signs: Vec<Side>,
    /// A point strictly inside the region.
    pub witness: Point,
    /// Chamber walls followed by one signed row per hyperplane.
    pub closure_ineqs: Vec<ClosureRow>,
}

impl Region {
    pub fn closure(&self) -> Polyhedron {
        Polyhedron::new(
            self.witness.rank(),
            self.closure_ineqs.iter().map(ClosureRow::to_half_space).collect(),
        )
    }

    pub fn sign_string(&self) -> String {
        signs_to_string(&self.signs)
    }

    /// Whether `h` satisfies every closure row strictly.
    pub fn contains_strictly(&self, h: &Point) -> bool {
        self.closure_ineqs
            .iter()
            .all(|r| dot_int(&r.normal, h.coroot_coords()) > r.bound)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionSubspace {
    pub region_id: usize,
    pub i_r: BTreeSet<Weight>,
    /// Sum of multiplicities over `i_r`.
    pub dimension: u64,
}

/// Hyperplanes `μ(x) = level`, one per distinct nonzero weight with a positive
/// simple-root coefficient. These are exactly the ones meeting the open
/// chamber when `level > 0`.
pub fn chamber_hyperplanes(ws: &WeightSystem, level: &Rational) -> Result<Vec<Hyperplane>, ArrangementError> {
    if !level.is_positive() {
        return Err(ArrangementError::LevelNotPositive(level.clone()));
    }
    let rs = ws.root_system();
    Ok(ws
        .nonzero_weights()
        .filter(|mu| has_positive_root_coefficient(rs, mu))
        .map(|mu| Hyperplane {
            weight: mu.clone(),
            level: level.clone(),
        })
        .collect())
}

fn has_positive_root_coefficient(rs: &RootSystem, mu: &Weight) -> bool {
    rs.root_coords(mu).iter().any(Signed::is_positive)
}

fn wall_rows(rs: &RootSystem) -> Vec<ClosureRow> {
    rs.cartan()
        .iter()
        .map(|row| ClosureRow {
            normal: row.clone(),
            bound: Rational::zero(),
        })
        .collect()
}

fn signed_row(h: &Hyperplane, side: Side) -> ClosureRow {
    match side {
        Side::Above => ClosureRow {
            normal: h.weight.fw_coords().to_vec(),
            bound: h.level.clone(),
        },
        Side::Below => ClosureRow {
            normal: h.weight.neg().fw_coords().to_vec(),
            bound: -&h.level,
        },
    }
}

/// Returns a point satisfying every row strictly, if one exists, by
/// maximizing a common slack `t ≤ 1`.
pub fn strict_witness(rows: &[ClosureRow], rank: usize) -> Option<Point> {
    // Variables (a, t). Each row n·a ≥ β becomes −n·a + t ≤ −β.
    let mut a_rows: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| {
            let mut v: Vec<Rational> = r.normal.iter().map(|&x| int(-x)).collect();
            v.push(Rational::one());
            v
        })
        .collect();
    let mut b: Vec<Rational> = rows.iter().map(|r| -&r.bound).collect();
    let mut cap = vec![Rational::zero(); rank];
    cap.push(Rational::one());
    a_rows.push(cap);
    b.push(Rational::one());
    let mut c = vec![Rational::zero(); rank];
    c.push(Rational::one());
    match lp::maximize(&Matrix::from_rows(a_rows), &b, &c) {
        LpOutcome::Optimal { mut x, value } if value.is_positive() => {
            x.truncate(rank);
            Some(Point::new(x))
        }
        LpOutcome::Optimal { .. } | LpOutcome::Infeasible => None,
        LpOutcome::Unbounded => unreachable!("slack is capped"),
    }
}

/// All open regions of the chamber cut by `hyperplanes`, ordered
/// lexicographically by sign vector with `-` before `+`.
pub fn enumerate_regions(rs: &RootSystem, hyperplanes: &[Hyperplane]) -> Result<Vec<Region>, ArrangementError> {
    for h in hyperplanes {
        rs.check_rank(h.weight.rank())?;
        if !h.level.is_positive() {
            return Err(ArrangementError::LevelNotPositive(h.level.clone()));
        }
        if !has_positive_root_coefficient(rs, &h.weight) {
            return Err(ArrangementError::MissesChamber(h.weight.clone()));
        }
    }
    let walls = wall_rows(rs);
    let root = strict_witness(&walls, rs.rank()).expect("the open chamber is nonempty");
    let search = Search {
        rank: rs.rank(),
        walls: &walls,
        hyperplanes,
    };
    let cells = search.descend(Vec::new(), root);
    Ok(cells
        .into_iter()
        .enumerate()
        .map(|(id, (signs, witness))| Region {
            id,
            closure_ineqs: search.rows_for(&signs),
            signs,
            witness,
        })
        .collect())
}

struct Search<'a> {
    rank: usize,
    walls: &'a [ClosureRow],
    hyperplanes: &'a [Hyperplane],
}

impl Search<'_> {
    fn rows_for(&self, signs: &[Side]) -> Vec<ClosureRow> {
        let mut rows = self.walls.to_vec();
        rows.extend(
            self.hyperplanes
                .iter()
                .zip(signs)
                .map(|(h, &s)| signed_row(h, s)),
        );
        rows
    }

    /// Depth-first over sign assignments; `witness` is strictly inside the
    /// cell described by `prefix`.
    fn descend(&self, prefix: Vec<Side>, witness: Point) -> Vec<(Vec<Side>, Point)> {
        let depth = prefix.len();
        if depth == self.hyperplanes.len() {
            return vec![(prefix, witness)];
        }
        let offset = self.hyperplanes[depth].offset(&witness);
        let child = |side: Side| -> Option<(Vec<Side>, Point)> {
            let mut signs = prefix.clone();
            signs.push(side);
            let reuse = match side {
                Side::Below => offset.is_negative(),
                Side::Above => offset.is_positive(),
            };
            if reuse {
                return Some((signs, witness.clone()));
            }
            let w = strict_witness(&self.rows_for(&signs), self.rank)?;
            Some((signs, w))
        };
        let (below, above) = rayon::join(|| child(Side::Below), || child(Side::Above));
        let (mut left, right) = rayon::join(
            || below.map(|(s, w)| self.descend(s, w)).unwrap_or_default(),
            || above.map(|(s, w)| self.descend(s, w)).unwrap_or_default(),
        );
        left.extend(right);
        left
    }
}

/// `I_R = {μ ∈ P*(V) : μ(x) > level}` for any `x` in the region.
pub fn region_weights(ws: &WeightSystem, region: &Region, level: &Rational) -> RegionSubspace {
    let i_r: BTreeSet<Weight> = ws
        .nonzero_weights()
        .filter(|mu| dot_int(mu.fw_coords(), region.witness.coroot_coords()) > *level)
        .cloned()
        .collect();
    let dimension = i_r.iter().map(|mu| ws.multiplicity(mu)).sum();
    RegionSubspace {
        region_id: region.id,
        i_r,
        dimension,
    }
}

/// Weights of `V` sorted by their eigenvalue under `h` relative to `c`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Grading {
    pub at_c: BTreeSet<Weight>,
    pub at_least_c: BTreeSet<Weight>,
    pub above_c: BTreeSet<Weight>,
}

pub fn grade_module(ws: &WeightSystem, h: &Point, c: &Rational) -> Result<Grading, LieError> {
    let mut g = Grading::default();
    for mu in ws.nonzero_weights() {
        let v = pairing(mu, h)?;
        if v >= *c {
            g.at_least_c.insert(mu.clone());
            if v == *c {
                g.at_c.insert(mu.clone());
            } else {
                g.above_c.insert(mu.clone());
            }
        }
    }
    Ok(g)
}

/// Hyperplanes, regions, and region subspaces of one module.
#[derive(Debug, Clone)]
pub struct Arrangement {
    pub level: Rational,
    pub hyperplanes: Vec<Hyperplane>,
    pub regions: Vec<Region>,
    pub subspaces: Vec<RegionSubspace>,
}

impl Arrangement {
    pub fn build(ws: &WeightSystem, level: &Rational) -> Result<Self, ArrangementError> {
        let hyperplanes = chamber_hyperplanes(ws, level)?;
        Self::from_hyperplanes(ws, level, hyperplanes)
    }

    pub fn from_hyperplanes(
        ws: &WeightSystem,
        level: &Rational,
        hyperplanes: Vec<Hyperplane>,
    ) -> Result<Self, ArrangementError> {
        let regions = enumerate_regions(ws.root_system(), &hyperplanes)?;
        let subspaces = regions
            .iter()
            .map(|r| region_weights(ws, r, level))
            .collect();
        Ok(Arrangement {
            level: level.clone(),
            hyperplanes,
            regions,
            subspaces,
        })
    }

    /// Sign vector of a point in the open chamber lying off every hyperplane.
    pub fn sign_vector(&self, rs: &RootSystem, h: &Point) -> Option<Vec<Side>> {
        if !rs.in_open_chamber(h) {
            return None;
        }
        self.hyperplanes
            .iter()
            .map(|hp| {
                let o = hp.offset(h);
                if o.is_positive() {
                    Some(Side::Above)
                } else if o.is_negative() {
                    Some(Side::Below)
                } else {
                    None
                }
            })
            .collect()
    }

    /// The region whose sign vector is `signs`.
    pub fn region_by_signs(&self, signs: &[Side]) -> Option<&Region> {
        self.regions
            .binary_search_by(|r| r.signs.as_slice().cmp(signs))
            .ok()
            .map(|i| &self.regions[i])
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H[{}, {}]", self.weight, self.level)
    }
}
