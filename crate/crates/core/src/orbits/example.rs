//! `SL_2 × SL_2` acting on `(V_1 ⊗ V_2) ⊕ V_1`, realized as 2×3 matrices
//!
//! ```text
//!     ( m  n  x )
//!     ( p  q  y )
//! ```
//!
//! with `(g_1, g_2)` acting by `M ↦ g_1 M g_2ᵀ` on the 2×2 block and
//! `c ↦ g_1 c` on the last column. Rows carry the `V_1` weight, columns of
//! the block the `V_2` weight, so the coordinates `m, n, p, q, x, y` have
//! weights `(1,1), (1,−1), (−1,1), (−1,−1), (1,0), (−1,0)`.
//!
//! Nilpotent elements are those with `det M = 0`. There are five orbits,
//! separated by `rank M`, whether `c = 0`, and whether `c ∈ Im M`.

use super::{OrbitError, OrbitId, OrbitModel};
use crate::liecore::{RootSystem, Series, SimpleFactor, Weight, WeightSystem};
use crate::rational::{Matrix, Rational};
use num_traits::Zero;
use std::collections::BTreeSet;

/// The five nilpotent orbits, in the order of their [`OrbitId`]s.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExampleOrbit {
    Zero,
    /// `c ≠ 0`, `M = 0`.
    O2,
    /// `rank M = 1`, `c = 0`.
    O3,
    /// `rank M = 1`, `0 ≠ c ∈ Im M`.
    O4,
    /// `rank M = 1`, `c ∉ Im M`.
    O5,
}

impl ExampleOrbit {
    pub const ALL: [ExampleOrbit; 5] = [
        ExampleOrbit::Zero,
        ExampleOrbit::O2,
        ExampleOrbit::O3,
        ExampleOrbit::O4,
        ExampleOrbit::O5,
    ];

    pub fn id(self) -> OrbitId {
        OrbitId(self as usize)
    }

    pub fn from_id(o: OrbitId) -> Option<Self> {
        Self::ALL.get(o.0).copied()
    }

    pub fn name(self) -> &'static str {
        match self {
            ExampleOrbit::Zero => "0",
            ExampleOrbit::O2 => "O_2",
            ExampleOrbit::O3 => "O_3",
            ExampleOrbit::O4 => "O_4",
            ExampleOrbit::O5 => "O_5",
        }
    }

    /// Orbit dimension; `O_i` has dimension `i`.
    pub fn dim(self) -> usize {
        match self {
            ExampleOrbit::Zero => 0,
            ExampleOrbit::O2 => 2,
            ExampleOrbit::O3 => 3,
            ExampleOrbit::O4 => 4,
            ExampleOrbit::O5 => 5,
        }
    }

    /// The representative `v_i` as a 2×3 integer matrix.
    pub fn representative(self) -> [[i64; 3]; 2] {
        match self {
            ExampleOrbit::Zero => [[0, 0, 0], [0, 0, 0]],
            ExampleOrbit::O2 => [[0, 0, 1], [0, 0, 0]],
            ExampleOrbit::O3 => [[1, 0, 0], [0, 0, 0]],
            ExampleOrbit::O4 => [[1, 0, 1], [0, 0, 0]],
            ExampleOrbit::O5 => [[1, 0, 0], [0, 0, 1]],
        }
    }
}

/// Coordinates `(row, column)` of each weight in the 2×3 matrix model.
pub fn example_position(mu: &Weight) -> Option<(usize, usize)> {
    match mu.fw_coords() {
        [1, 1] => Some((0, 0)),
        [1, -1] => Some((0, 1)),
        [-1, 1] => Some((1, 0)),
        [-1, -1] => Some((1, 1)),
        [1, 0] => Some((0, 2)),
        [-1, 0] => Some((1, 2)),
        _ => None,
    }
}

fn classify(rank_m: usize, c_zero: bool, c_in_image: bool) -> Result<ExampleOrbit, OrbitError> {
    match (rank_m, c_zero, c_in_image) {
        (0, true, _) => Ok(ExampleOrbit::Zero),
        (0, false, _) => Ok(ExampleOrbit::O2),
        (1, true, _) => Ok(ExampleOrbit::O3),
        (1, false, true) => Ok(ExampleOrbit::O4),
        (1, false, false) => Ok(ExampleOrbit::O5),
        _ => Err(OrbitError::NotNilpotent),
    }
}

/// Orbit of a concrete element, by exact rank computations.
pub fn classify_matrix(v: &[[Rational; 3]; 2]) -> Result<ExampleOrbit, OrbitError> {
    let block = Matrix::from_rows(v.iter().map(|r| r[..2].to_vec()).collect());
    let full = Matrix::from_rows(v.iter().map(|r| r.to_vec()).collect());
    let rank_m = block.rank();
    let c_zero = v[0][2].is_zero() && v[1][2].is_zero();
    classify(rank_m, c_zero, full.rank() == rank_m)
}

/// Generic rank of a matrix whose nonzero entries are independent
/// indeterminates: the size of a maximum matching in the support pattern.
fn term_rank(pattern: &[Vec<bool>]) -> usize {
    let cols = pattern.first().map_or(0, Vec::len);
    let mut owner: Vec<Option<usize>> = vec![None; cols];
    fn augment(
        r: usize,
        pattern: &[Vec<bool>],
        seen: &mut [bool],
        owner: &mut [Option<usize>],
    ) -> bool {
        for c in 0..seen.len() {
            if pattern[r][c] && !seen[c] {
                seen[c] = true;
                if owner[c].is_none_or(|o| augment(o, pattern, seen, owner)) {
                    owner[c] = Some(r);
                    return true;
                }
            }
        }
        false
    }
    (0..pattern.len())
        .filter(|&r| augment(r, pattern, &mut vec![false; cols], &mut owner))
        .count()
}

/// Orbit meeting the coordinate subspace spanned by `i_r` in a dense subset.
pub fn example_stratum(i_r: &BTreeSet<Weight>) -> Result<ExampleOrbit, OrbitError> {
    let mut pattern = vec![vec![false; 3]; 2];
    for mu in i_r {
        let (r, c) = example_position(mu).ok_or_else(|| OrbitError::NotInModel(mu.clone()))?;
        pattern[r][c] = true;
    }
    let block: Vec<Vec<bool>> = pattern.iter().map(|r| r[..2].to_vec()).collect();
    let rank_m = term_rank(&block);
    let c_zero = !pattern[0][2] && !pattern[1][2];
    classify(rank_m, c_zero, term_rank(&pattern) == rank_m)
}

/// Closure order: `0 < O_2 < O_4 < O_5`, `0 < O_3 < O_4`, with `O_2` and `O_3`
/// incomparable.
pub fn example_closure_leq(a: ExampleOrbit, b: ExampleOrbit) -> bool {
    use ExampleOrbit::*;
    a == b
        || matches!(
            (a, b),
            (Zero, _) | (O2, O4) | (O2, O5) | (O3, O4) | (O3, O5) | (O4, O5)
        )
}

/// The full order as a list of `(a, b)` pairs with `a ≤ b`.
pub fn example_closure_order() -> Vec<(ExampleOrbit, ExampleOrbit)> {
    let mut out = Vec::new();
    for a in ExampleOrbit::ALL {
        for b in ExampleOrbit::ALL {
            if example_closure_leq(a, b) {
                out.push((a, b));
            }
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct ExampleModule {
    ws: WeightSystem,
}

impl ExampleModule {
    pub fn new() -> Self {
        let rs = RootSystem::new(&[SimpleFactor::new(Series::A, 1); 2]).expect("A1xA1");
        let ws = WeightSystem::new(&rs, &Self::highest_weights()).expect("dominant weights");
        ExampleModule { ws }
    }

    /// `V_1 ⊗ V_2` and `V_1`.
    pub fn highest_weights() -> Vec<Weight> {
        vec![Weight::new(vec![1, 1]), Weight::new(vec![1, 0])]
    }
}

impl Default for ExampleModule {
    fn default() -> Self {
        Self::new()
    }
}

impl OrbitModel for ExampleModule {
    fn name(&self) -> String {
        "example-2x3".into()
    }

    fn weight_system(&self) -> &WeightSystem {
        &self.ws
    }

    fn orbit_count(&self) -> usize {
        ExampleOrbit::ALL.len()
    }

    fn zero_orbit(&self) -> OrbitId {
        ExampleOrbit::Zero.id()
    }

    fn generic_stratum(&self, i_r: &BTreeSet<Weight>) -> Result<OrbitId, OrbitError> {
        example_stratum(i_r).map(ExampleOrbit::id)
    }

    fn closure_leq(&self, a: OrbitId, b: OrbitId) -> bool {
        match (ExampleOrbit::from_id(a), ExampleOrbit::from_id(b)) {
            (Some(a), Some(b)) => example_closure_leq(a, b),
            _ => false,
        }
    }

    fn descriptor(&self, o: OrbitId) -> String {
        ExampleOrbit::from_id(o).map_or_else(|| format!("?{}", o.0), |e| e.name().to_string())
    }

    fn parse_orbit(&self, s: &str) -> Result<OrbitId, OrbitError> {
        let t = s.trim().to_ascii_uppercase().replace('_', "");
        let t = t.strip_prefix('O').unwrap_or(&t);
        match t {
            "0" | "ZERO" | "" => Ok(ExampleOrbit::Zero.id()),
            "2" => Ok(ExampleOrbit::O2.id()),
            "3" => Ok(ExampleOrbit::O3.id()),
            "4" => Ok(ExampleOrbit::O4.id()),
            "5" => Ok(ExampleOrbit::O5.id()),
            _ => Err(OrbitError::UnknownOrbit(s.to_string())),
        }
    }
}

/// Roman numeral of a region of the example arrangement, read off from its
/// weight set as in the standard picture of the six regions: `I` at the
/// origin, `II` and `III` left of `a_1 = 2`, `IV`, `V`, `VI` right of it from
/// bottom to top.
pub fn example_region_label(i_r: &BTreeSet<Weight>) -> Option<&'static str> {
    let mut coords: Vec<(usize, usize)> = i_r.iter().filter_map(example_position).collect();
    coords.sort_unstable();
    // m = (0,0), n = (0,1), p = (1,0), x = (0,2)
    match coords.as_slice() {
        [] => Some("I"),
        [(0, 0)] => Some("II"),
        [(0, 0), (1, 0)] => Some("III"),
        [(0, 0), (0, 1), (0, 2)] => Some("IV"),
        [(0, 0), (0, 2)] => Some("V"),
        [(0, 0), (0, 2), (1, 0)] => Some("VI"),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn w(v: &[i64]) -> Weight {
        Weight::new(v.to_vec())
    }

    fn rat(v: [[i64; 3]; 2]) -> [[Rational; 3]; 2] {
        v.map(|row| row.map(int))
    }

    #[test]
    fn strata_of_coordinate_subspaces() {
        let top_row = BTreeSet::from([w(&[1, 1]), w(&[1, -1]), w(&[1, 0])]);
        assert_eq!(example_stratum(&top_row).unwrap(), ExampleOrbit::O4);
        let column = BTreeSet::from([w(&[1, 1]), w(&[-1, 1])]);
        assert_eq!(example_stratum(&column).unwrap(), ExampleOrbit::O3);
        let mpx = BTreeSet::from([w(&[1, 1]), w(&[-1, 1]), w(&[1, 0])]);
        assert_eq!(example_stratum(&mpx).unwrap(), ExampleOrbit::O5);
        assert_eq!(example_stratum(&BTreeSet::new()).unwrap(), ExampleOrbit::Zero);
        let x_only = BTreeSet::from([w(&[1, 0])]);
        assert_eq!(example_stratum(&x_only).unwrap(), ExampleOrbit::O2);
    }

    #[test]
    fn full_rank_block_is_rejected() {
        let diag = BTreeSet::from([w(&[1, 1]), w(&[-1, -1])]);
        assert_eq!(example_stratum(&diag), Err(OrbitError::NotNilpotent));
        let foreign = BTreeSet::from([w(&[2, 0])]);
        assert!(matches!(example_stratum(&foreign), Err(OrbitError::NotInModel(_))));
    }

    #[test]
    fn representatives_classify_to_their_orbits() {
        for o in ExampleOrbit::ALL {
            assert_eq!(classify_matrix(&rat(o.representative())).unwrap(), o);
        }
        assert_eq!(
            classify_matrix(&rat([[1, 0, 0], [0, 1, 0]])),
            Err(OrbitError::NotNilpotent)
        );
    }

    #[test]
    fn order_shape() {
        use ExampleOrbit::*;
        assert!(example_closure_leq(O2, O4));
        assert!(!example_closure_leq(O2, O3));
        assert!(!example_closure_leq(O3, O2));
        assert!(example_closure_leq(O4, O5));
        assert!(!example_closure_leq(O5, O4));
        for o in ExampleOrbit::ALL {
            assert!(example_closure_leq(Zero, o));
        }
    }

    #[test]
    fn parse_orbit_names() {
        let m = ExampleModule::new();
        assert_eq!(m.parse_orbit("O_5").unwrap(), ExampleOrbit::O5.id());
        assert_eq!(m.parse_orbit("o3").unwrap(), ExampleOrbit::O3.id());
        assert_eq!(m.parse_orbit("0").unwrap(), ExampleOrbit::Zero.id());
        assert!(m.parse_orbit("O_6").is_err());
        assert_eq!(m.descriptor(ExampleOrbit::O4.id()), "O_4");
    }

    #[test]
    fn term_rank_matches_generic_rank() {
        assert_eq!(term_rank(&[vec![true, true], vec![true, false]]), 2);
        assert_eq!(term_rank(&[vec![true, true], vec![false, false]]), 1);
        assert_eq!(term_rank(&[vec![true, false, true], vec![true, false, false]]), 2);
    }
}
