//! Self-checks against independent oracles, reported row by row.

use crate::arrangement::{default_level, Arrangement};
use crate::config::{ConfigError, ModuleSpec, RunConfig};
use crate::liecore::{Point, RootSystem, Series, SimpleFactor};
use crate::orbits::example::example_region_label;
use crate::orbits::{
    weighted_dynkin_from_partition, CharacteristicEngine, CharacteristicError, ExampleModule,
    ExampleOrbit, Mode, OrbitModel, SlAdjoint,
};
use crate::rational::{int, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::fmt;

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error(transparent)]
    Characteristic(#[from] CharacteristicError),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Arrangement(#[from] crate::arrangement::ArrangementError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckRow {
    pub suite: String,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckRow {
    fn new(suite: &str, name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        CheckRow {
            suite: suite.to_string(),
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for CheckRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}/{}: {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.suite,
            self.name,
            self.detail
        )
    }
}

fn fmt_point(p: &Point) -> String {
    p.to_string()
}

/// Orbit, characteristic (`None` when the dense one is undefined), dense
/// region labels.
type Expected = (ExampleOrbit, Option<[i64; 2]>, &'static [&'static str]);

/// The worked example: characteristics and dense region sets by label.
pub fn example_suite() -> Result<Vec<CheckRow>, VerifyError> {
    let engine = CharacteristicEngine::standard(ExampleModule::new())?;
    let arr = engine.arrangement();
    let label_of = |id: usize| example_region_label(&arr.subspaces[id].i_r).unwrap_or("?");
    let mut rows = vec![CheckRow::new(
        "example",
        "regions",
        arr.hyperplanes.len() == 4 && arr.regions.len() == 6,
        format!("{} hyperplanes, {} regions", arr.hyperplanes.len(), arr.regions.len()),
    )];
    let expected: [Expected; 5] = [
        (ExampleOrbit::Zero, Some([0, 0]), &["I"]),
        (ExampleOrbit::O2, None, &[]),
        (ExampleOrbit::O3, Some([1, 1]), &["II", "III"]),
        (ExampleOrbit::O4, Some([2, 0]), &["IV", "V"]),
        (ExampleOrbit::O5, Some([2, 4]), &["VI"]),
    ];
    for (orbit, point, dense) in expected {
        let sets = engine.m_sets(orbit.id()).map_err(CharacteristicError::from)?;
        let labels: BTreeSet<&str> = sets.tilde_m_set.iter().map(|&i| label_of(i)).collect();
        let want: BTreeSet<&str> = dense.iter().copied().collect();
        rows.push(CheckRow::new(
            "example",
            format!("{} dense regions", orbit.name()),
            labels == want,
            format!("{labels:?}"),
        ));
        for mode in [Mode::Dense, Mode::Nonempty] {
            let got = engine.characteristic(orbit.id(), mode);
            let (ok, detail) = match (point, &got) {
                (Some(p), Ok(c)) => (c.point == Point::from_ints(&p), fmt_point(&c.point)),
                (None, Err(CharacteristicError::DenseUndefined(_))) if mode == Mode::Dense => {
                    (true, "undefined".to_string())
                }
                (None, Ok(c)) => (mode == Mode::Nonempty && c.point == Point::from_ints(&[2, 0]), fmt_point(&c.point)),
                (_, Err(e)) => (false, e.to_string()),
            };
            rows.push(CheckRow::new("example", format!("{} {mode}", orbit.name()), ok, detail));
        }
    }
    Ok(rows)
}

/// Characteristics of `sl_n` adjoint orbits against the weighted Dynkin
/// diagrams of their Jordan types.
pub fn dynkin_suite(n: usize, seed: u64) -> Result<Vec<CheckRow>, VerifyError> {
    let model = SlAdjoint::new(n, seed).map_err(CharacteristicError::from)?;
    let engine = CharacteristicEngine::standard(model)?;
    let mut rows = Vec::new();
    for o in engine.model().orbits() {
        let p = engine.model().partition(o).clone();
        let want: Vec<Rational> = weighted_dynkin_from_partition(&p).into_iter().map(int).collect();
        for mode in [Mode::Nonempty, Mode::Dense] {
            let row = match engine.characteristic(o, mode) {
                Ok(c) => CheckRow::new(
                    "dynkin",
                    format!("sl{n} ({p}) {mode}"),
                    c.labels == want,
                    format!("labels {}", fmt_labels(&c.labels)),
                ),
                Err(e) => CheckRow::new("dynkin", format!("sl{n} ({p}) {mode}"), false, e.to_string()),
            };
            rows.push(row);
        }
    }
    Ok(rows)
}

fn fmt_labels(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(crate::rational::format_rational).collect();
    format!("[{}]", parts.join(","))
}

/// A random point of the open dominant chamber: Dynkin labels
/// `k/q` with `q ∈ [1, 97]` and `k/q ∈ (0, bound]`, converted exactly.
pub fn random_chamber_point(rs: &RootSystem, rng: &mut impl Rng, bound: i64) -> Point {
    let labels: Vec<Rational> = (0..rs.rank())
        .map(|_| {
            let q: i64 = rng.gen_range(1..=97);
            let k: i64 = rng.gen_range(1..=bound * q);
            Rational::new(k.into(), q.into())
        })
        .collect();
    let cinv = rs.cartan_matrix().inverse().expect("Cartan matrices are invertible");
    Point::new(cinv.mul_vec(&labels))
}

/// Outcome of sampling points off every hyperplane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SamplingReport {
    pub points: usize,
    pub matched_once: usize,
    /// Draws rejected for lying on a hyperplane.
    pub rejected: usize,
    pub regions_hit: usize,
    pub regions: usize,
}

impl SamplingReport {
    pub fn passed(&self) -> bool {
        self.matched_once == self.points
    }
}

/// Draws `points` chamber points off every hyperplane and checks that each
/// sign vector belongs to exactly one region, whose closure rows hold
/// strictly at the point.
pub fn sample_arrangement(rs: &RootSystem, arr: &Arrangement, points: usize, seed: u64) -> SamplingReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Labels up to a few times the level reach past every crossing.
    let bound = 4 * (crate::rational::to_f64(&arr.level).ceil() as i64).max(1) + 4;
    let mut hit = vec![false; arr.regions.len()];
    let (mut drawn, mut matched_once, mut rejected) = (0, 0, 0);
    while drawn < points {
        let h = random_chamber_point(rs, &mut rng, bound);
        let Some(signs) = arr.sign_vector(rs, &h) else {
            rejected += 1;
            continue;
        };
        drawn += 1;
        let matching: Vec<usize> = arr
            .regions
            .iter()
            .filter(|r| r.signs == signs)
            .map(|r| r.id)
            .collect();
        if let [id] = matching.as_slice() {
            if arr.regions[*id].contains_strictly(&h) {
                matched_once += 1;
                hit[*id] = true;
            }
        }
    }
    SamplingReport {
        points,
        matched_once,
        rejected,
        regions_hit: hit.iter().filter(|&&b| b).count(),
        regions: arr.regions.len(),
    }
}

/// The modules used by the sampling suite.
pub fn sampling_cases() -> Vec<(String, RunConfig)> {
    let a = |k| vec![SimpleFactor::new(Series::A, k)];
    vec![
        ("example-2x3".into(), RunConfig::new(vec![], ModuleSpec::Example)),
        ("A2 adjoint".into(), RunConfig::new(a(2), ModuleSpec::Adjoint)),
        ("A3 adjoint".into(), RunConfig::new(a(3), ModuleSpec::Adjoint)),
        (
            "B2 little adjoint".into(),
            RunConfig::new(vec![SimpleFactor::new(Series::B, 2)], ModuleSpec::LittleAdjoint),
        ),
        (
            "G2 little adjoint".into(),
            RunConfig::new(vec![SimpleFactor::new(Series::G, 2)], ModuleSpec::LittleAdjoint),
        ),
    ]
}

pub fn sampling_suite(points: usize, seed: u64) -> Result<Vec<CheckRow>, VerifyError> {
    let mut rows = Vec::new();
    for (k, (name, cfg)) in sampling_cases().into_iter().enumerate() {
        let ws = cfg.weight_system()?;
        let arr = Arrangement::build(&ws, &default_level())?;
        let rep = sample_arrangement(ws.root_system(), &arr, points, seed.wrapping_add(k as u64));
        rows.push(CheckRow::new(
            "sampling",
            name,
            rep.passed(),
            format!(
                "{}/{} points in exactly one region ({} redrawn off hyperplanes), {}/{} regions hit",
                rep.matched_once, rep.points, rep.rejected, rep.regions_hit, rep.regions
            ),
        ));
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_suite_passes() {
        let rows = example_suite().unwrap();
        assert!(rows.iter().all(|r| r.passed), "{rows:#?}");
        assert_eq!(rows.len(), 1 + 5 * 3);
    }

    #[test]
    fn dynkin_small() {
        for n in 2..=4 {
            let rows = dynkin_suite(n, 0).unwrap();
            assert!(rows.iter().all(|r| r.passed), "{rows:#?}");
        }
    }

    #[test]
    fn chamber_points_are_dominant() {
        let rs = RootSystem::simple(Series::G, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            assert!(rs.in_open_chamber(&random_chamber_point(&rs, &mut rng, 5)));
        }
    }

    #[test]
    fn sampling_small() {
        let rows = sampling_suite(300, 1).unwrap();
        assert_eq!(rows.len(), 5);
        assert!(rows.iter().all(|r| r.passed), "{rows:#?}");
    }
}
