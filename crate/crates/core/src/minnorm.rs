//! Exact minimal-norm points of closed convex polyhedra.
//!
//! For a positive-definite form `G` and a polyhedron `{a : N a ≥ β}`, the
//! minimizer of `aᵀ G a` is characterized by KKT: `2 G a = N_Sᵀ λ` with
//! `λ ≥ 0` on an active set `S` of linearly independent rows that hold with
//! equality. We enumerate such sets by increasing size and solve each linear
//! KKT system exactly; since the KKT conditions are sufficient for a convex
//! problem, the first certified candidate is the minimizer.

use crate::liecore::{InvariantForm, Point};
use crate::lp;
use crate::rational::{dot, format_rational, Matrix, Rational};
use itertools::Itertools;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MinNormError {
    #[error("polyhedron is empty")]
    Empty,
    #[error("dimension mismatch: form has dimension {form}, polyhedron {poly}")]
    DimensionMismatch { form: usize, poly: usize },
    #[error("union of polyhedra is empty")]
    EmptyUnion,
    #[error("minimal-norm point is not unique: {}", fmt_points(.points))]
    NotUnique { norm_sq: Rational, points: Vec<(usize, Point)> },
}

fn fmt_points(points: &[(usize, Point)]) -> String {
    points
        .iter()
        .map(|(i, p)| format!("#{i} at {p}"))
        .join(", ")
}

/// A closed half-space `normal · a ≥ bound`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HalfSpace {
    pub normal: Vec<Rational>,
    pub bound: Rational,
}

impl HalfSpace {
    pub fn new(normal: Vec<Rational>, bound: Rational) -> Self {
        HalfSpace { normal, bound }
    }

    pub fn value(&self, a: &[Rational]) -> Rational {
        dot(&self.normal, a)
    }

    pub fn contains(&self, a: &[Rational]) -> bool {
        self.value(a) >= self.bound
    }

    /// Canonical positive multiple, used to spot duplicate rows.
    fn normalized(&self) -> HalfSpace {
        match self.normal.iter().find(|x| !x.is_zero()) {
            Some(lead) => {
                let s = lead.abs().recip();
                HalfSpace {
                    normal: self.normal.iter().map(|x| x * &s).collect(),
                    bound: &self.bound * &s,
                }
            }
            None => self.clone(),
        }
    }
}

/// `{a : N a ≥ β}` as a list of half-spaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polyhedron {
    dim: usize,
    rows: Vec<HalfSpace>,
}

impl Polyhedron {
    pub fn new(dim: usize, rows: Vec<HalfSpace>) -> Self {
        assert!(rows.iter().all(|r| r.normal.len() == dim), "row dimension mismatch");
        Polyhedron { dim, rows }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[HalfSpace] {
        &self.rows
    }

    pub fn contains(&self, a: &[Rational]) -> bool {
        self.rows.iter().all(|r| r.contains(a))
    }

    /// Some point of the polyhedron, by exact LP.
    pub fn feasible_point(&self) -> Option<Vec<Rational>> {
        if self.rows.is_empty() {
            return Some(vec![Rational::zero(); self.dim]);
        }
        // N a ≥ β  ⇔  −N a ≤ −β
        let a = Matrix::from_rows(
            self.rows
                .iter()
                .map(|r| r.normal.iter().map(|x| -x).collect())
                .collect(),
        );
        let b: Vec<Rational> = self.rows.iter().map(|r| -&r.bound).collect();
        lp::feasible_point(&a, &b)
    }

    pub fn is_nonempty(&self) -> bool {
        self.feasible_point().is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinNormResult {
    pub point: Point,
    pub norm_sq: Rational,
    /// Indices into the polyhedron's rows.
    pub active_set: Vec<usize>,
    /// One nonnegative multiplier per active row.
    pub multipliers: Vec<Rational>,
}

impl MinNormResult {
    /// Checks the KKT certificate exactly against `poly` and `form`.
    pub fn verify(&self, poly: &Polyhedron, form: &InvariantForm) -> Result<(), String> {
        let a = self.point.coroot_coords();
        if let Some((i, _)) = poly.rows().iter().enumerate().find(|(_, r)| !r.contains(a)) {
            return Err(format!("row {i} violated"));
        }
        for &i in &self.active_set {
            if poly.rows()[i].value(a) != poly.rows()[i].bound {
                return Err(format!("active row {i} not tight"));
            }
        }
        if self.multipliers.iter().any(Signed::is_negative) {
            return Err("negative multiplier".into());
        }
        let grad: Vec<Rational> = form
            .gram()
            .mul_vec(a)
            .into_iter()
            .map(|g| g * Rational::from_integer(2.into()))
            .collect();
        let mut combo = vec![Rational::zero(); poly.dim()];
        for (&i, l) in self.active_set.iter().zip(&self.multipliers) {
            for (c, n) in combo.iter_mut().zip(&poly.rows()[i].normal) {
                *c += n * l;
            }
        }
        if grad != combo {
            return Err("stationarity residual is nonzero".into());
        }
        if form.norm_sq(&self.point) != self.norm_sq {
            return Err("stored norm does not match point".into());
        }
        Ok(())
    }
}

/// The unique minimizer of `aᵀ G a` over `poly`, with a KKT certificate.
pub fn min_norm_point(poly: &Polyhedron, form: &InvariantForm) -> Result<MinNormResult, MinNormError> {
    let p = poly.dim();
    if form.dim() != p {
        return Err(MinNormError::DimensionMismatch {
            form: form.dim(),
            poly: p,
        });
    }
    let zero = vec![Rational::zero(); p];
    if poly.contains(&zero) {
        return Ok(MinNormResult {
            point: Point::zero(p),
            norm_sq: Rational::zero(),
            active_set: Vec::new(),
            multipliers: Vec::new(),
        });
    }

    // Deduplicate positive multiples; a zero normal is either vacuous or infeasible.
    let mut kept: Vec<usize> = Vec::new();
    for (i, r) in poly.rows().iter().enumerate() {
        if r.normal.iter().all(Zero::is_zero) {
            if r.bound.is_positive() {
                return Err(MinNormError::Empty);
            }
            continue;
        }
        kept.push(i);
    }
    // Of parallel rows only the tightest matters.
    let kept = tightest_rows(poly, kept);

    let ginv = form.gram().inverse().expect("positive-definite form is invertible");
    // W = N G⁻¹ Nᵀ over the kept rows; every KKT system is a principal submatrix.
    let gn: Vec<Vec<Rational>> = kept
        .iter()
        .map(|&i| ginv.mul_vec(&poly.rows()[i].normal))
        .collect();
    let m = kept.len();
    let w: Vec<Vec<Rational>> = (0..m)
        .map(|r| (0..m).map(|s| dot(&poly.rows()[kept[r]].normal, &gn[s])).collect())
        .collect();
    let bounds: Vec<&Rational> = kept.iter().map(|&i| &poly.rows()[i].bound).collect();

    for size in 1..=p.min(m) {
        for subset in (0..m).combinations(size) {
            let k = Matrix::from_rows(
                subset
                    .iter()
                    .map(|&r| subset.iter().map(|&s| w[r][s].clone()).collect())
                    .collect(),
            );
            let rhs: Vec<Rational> = subset.iter().map(|&r| bounds[r].clone()).collect();
            // Singular exactly when the chosen normals are linearly dependent.
            let Some(y) = k.solve(&rhs) else { continue };
            if y.iter().any(Signed::is_negative) {
                continue;
            }
            let feasible = (0..m).all(|r| {
                let v = subset
                    .iter()
                    .zip(&y)
                    .fold(Rational::zero(), |acc, (&s, ys)| acc + &w[r][s] * ys);
                v >= *bounds[r]
            });
            if !feasible {
                continue;
            }
            let mut a = vec![Rational::zero(); p];
            for (&s, ys) in subset.iter().zip(&y) {
                for (ai, g) in a.iter_mut().zip(&gn[s]) {
                    *ai += g * ys;
                }
            }
            let point = Point::new(a);
            // The dropped rows are implied by kept ones; confirm on the original list.
            debug_assert!(poly.contains(point.coroot_coords()));
            let two = Rational::from_integer(2.into());
            return Ok(MinNormResult {
                norm_sq: form.norm_sq(&point),
                point,
                active_set: subset.iter().map(|&s| kept[s]).collect(),
                multipliers: y.into_iter().map(|v| v * &two).collect(),
            });
        }
    }
    Err(MinNormError::Empty)
}

fn tightest_rows(poly: &Polyhedron, kept: Vec<usize>) -> Vec<usize> {
    let mut best: std::collections::BTreeMap<Vec<Rational>, (usize, Rational)> =
        std::collections::BTreeMap::new();
    let mut order = Vec::new();
    for i in kept {
        let n = poly.rows()[i].normalized();
        match best.get_mut(&n.normal) {
            Some(entry) => {
                if n.bound > entry.1 {
                    *entry = (i, n.bound);
                }
            }
            None => {
                order.push(n.normal.clone());
                best.insert(n.normal, (i, n.bound));
            }
        }
    }
    order.into_iter().map(|k| best[&k].0).collect()
}

/// Minimum over a union of polyhedra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnionMinimum {
    pub point: Point,
    pub norm_sq: Rational,
    /// Indices of the polyhedra attaining the minimum.
    pub achieving: Vec<usize>,
}

/// Computes the minimal-norm point of `⋃ polyhedra`, failing if two
/// polyhedra attain the minimal norm at different points.
pub fn min_over_union(polyhedra: &[Polyhedron], form: &InvariantForm) -> Result<UnionMinimum, MinNormError> {
    let results: Vec<MinNormResult> = polyhedra
        .par_iter()
        .map(|p| min_norm_point(p, form))
        .collect::<Result<_, _>>()?;
    min_over_results(results.iter().enumerate())
}

/// Combines per-polyhedron minima, keyed by caller-chosen ids.
pub fn min_over_results<'a>(
    results: impl IntoIterator<Item = (usize, &'a MinNormResult)>,
) -> Result<UnionMinimum, MinNormError> {
    let mut best: Option<Rational> = None;
    let mut tied: Vec<(usize, &MinNormResult)> = Vec::new();
    for (id, r) in results {
        match &best {
            Some(b) if r.norm_sq > *b => {}
            Some(b) if r.norm_sq == *b => tied.push((id, r)),
            _ => {
                best = Some(r.norm_sq.clone());
                tied = vec![(id, r)];
            }
        }
    }
    let Some(norm_sq) = best else {
        return Err(MinNormError::EmptyUnion);
    };
    let point = tied[0].1.point.clone();
    if tied.iter().any(|(_, r)| r.point != point) {
        return Err(MinNormError::NotUnique {
            norm_sq,
            points: tied.iter().map(|(i, r)| (*i, r.point.clone())).collect(),
        });
    }
    Ok(UnionMinimum {
        point,
        norm_sq,
        achieving: tied.iter().map(|(i, _)| *i).collect(),
    })
}

impl std::fmt::Display for HalfSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let terms = self.normal.iter().map(format_rational).join(", ");
        write!(f, "[{terms}]·a >= {}", format_rational(&self.bound))
    }
}
