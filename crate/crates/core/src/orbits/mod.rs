//! Orbit models and the characteristic of a nilpotent orbit.
//!
//! For an orbit `O`, the regions `R` with `O ⊂ G·V_R` form the set `M_O`;
//! those whose subspace `V_R` is generically in `O` form `M̃_O ⊂ M_O`. The
//! characteristic is the minimal-norm point of the union of the closures of
//! the selected regions.
//!
//! Membership `O ⊂ G·V_R` is decided through the closure order: `V_R` is
//! stable under the Borel subalgebra, so `G·V_R` is closed and equals the
//! closure of the orbit meeting `V_R` densely (the generic stratum). Hence
//! `O ⊂ G·V_R` exactly when `O ≤ generic_stratum(I_R)`.

pub mod example;
pub mod partition;
pub mod sl;

use crate::arrangement::{Arrangement, ArrangementError, RegionSubspace};
use crate::liecore::{dynkin_labels, InvariantForm, LieError, Point, Weight, WeightSystem};
use crate::minnorm::{min_norm_point, min_over_results, MinNormError, MinNormResult};
use crate::rational::Rational;
use rayon::prelude::*;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

pub use example::{ExampleModule, ExampleOrbit};
pub use partition::{dominance_leq, partitions, weighted_dynkin_from_partition, Partition};
pub use sl::{generic_jordan_partition, SlAdjoint};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrbitError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("unknown orbit {0:?}")]
    UnknownOrbit(String),
    #[error("weight {0} is not a coordinate of this model")]
    NotInModel(Weight),
    #[error("subspace is not nilpotent")]
    NotNilpotent,
    #[error("random samples gave incomparable Jordan types {0:?}")]
    IncomparableSamples(Vec<String>),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrbitId(pub usize);

/// A module together with a classification of its nilpotent orbits.
pub trait OrbitModel: Send + Sync {
    fn name(&self) -> String;
    fn weight_system(&self) -> &WeightSystem;
    fn orbit_count(&self) -> usize;
    fn zero_orbit(&self) -> OrbitId;
    /// The orbit meeting the span of the weight spaces `i_r` in a dense subset.
    fn generic_stratum(&self, i_r: &BTreeSet<Weight>) -> Result<OrbitId, OrbitError>;
    /// `a ⊂ closure(b)`.
    fn closure_leq(&self, a: OrbitId, b: OrbitId) -> bool;
    fn descriptor(&self, o: OrbitId) -> String;
    fn parse_orbit(&self, s: &str) -> Result<OrbitId, OrbitError>;

    fn orbits(&self) -> Vec<OrbitId> {
        (0..self.orbit_count()).map(OrbitId).collect()
    }
}

impl<T: OrbitModel + ?Sized> OrbitModel for Box<T> {
    fn name(&self) -> String {
        (**self).name()
    }

    fn weight_system(&self) -> &WeightSystem {
        (**self).weight_system()
    }

    fn orbit_count(&self) -> usize {
        (**self).orbit_count()
    }

    fn zero_orbit(&self) -> OrbitId {
        (**self).zero_orbit()
    }

    fn generic_stratum(&self, i_r: &BTreeSet<Weight>) -> Result<OrbitId, OrbitError> {
        (**self).generic_stratum(i_r)
    }

    fn closure_leq(&self, a: OrbitId, b: OrbitId) -> bool {
        (**self).closure_leq(a, b)
    }

    fn descriptor(&self, o: OrbitId) -> String {
        (**self).descriptor(o)
    }

    fn parse_orbit(&self, s: &str) -> Result<OrbitId, OrbitError> {
        (**self).parse_orbit(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// `O ∩ V_R ≠ ∅`.
    Nonempty,
    /// `O ∩ V_R` dense in `V_R`.
    Dense,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Nonempty => "nonempty",
            Mode::Dense => "dense",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "nonempty" => Ok(Mode::Nonempty),
            "dense" => Ok(Mode::Dense),
            _ => Err(format!("unknown mode {s:?} (expected nonempty or dense)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CharacteristicError {
    #[error(transparent)]
    Orbit(#[from] OrbitError),
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
    #[error(transparent)]
    MinNorm(#[from] MinNormError),
    #[error("no region is generically in orbit {0}; the dense-mode characteristic is undefined")]
    DenseUndefined(String),
    #[error("form has dimension {form} but the root system has rank {rank}")]
    FormMismatch { form: usize, rank: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MSets {
    pub m_set: Vec<usize>,
    pub tilde_m_set: Vec<usize>,
}

/// `M_O` and `M̃_O` given the generic stratum of every region.
pub fn m_sets_from_strata(model: &dyn OrbitModel, orbit: OrbitId, strata: &[OrbitId]) -> Result<MSets, OrbitError> {
    if orbit.0 >= model.orbit_count() {
        return Err(OrbitError::UnknownOrbit(format!("#{}", orbit.0)));
    }
    let mut out = MSets::default();
    for (id, &s) in strata.iter().enumerate() {
        if model.closure_leq(orbit, s) {
            out.m_set.push(id);
        }
        if s == orbit {
            out.tilde_m_set.push(id);
        }
    }
    Ok(out)
}

/// `M_O` and `M̃_O` over the given region subspaces.
pub fn m_sets(model: &dyn OrbitModel, orbit: OrbitId, subspaces: &[RegionSubspace]) -> Result<MSets, OrbitError> {
    let strata: Vec<OrbitId> = subspaces
        .iter()
        .map(|s| model.generic_stratum(&s.i_r))
        .collect::<Result<_, _>>()?;
    m_sets_from_strata(model, orbit, &strata)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Characteristic {
    pub orbit: OrbitId,
    pub descriptor: String,
    pub mode: Mode,
    /// Dominant point in simple-coroot coordinates.
    pub point: Point,
    pub labels: Vec<Rational>,
    pub norm_sq: Rational,
    pub m_set: Vec<usize>,
    pub tilde_m_set: Vec<usize>,
    /// Regions whose closure attains the minimum.
    pub achieving: Vec<usize>,
}

/// Regions, generic strata, and per-region minimal-norm points for one
/// model, computed once and shared by every orbit.
pub struct CharacteristicEngine<M> {
    model: M,
    form: InvariantForm,
    arrangement: Arrangement,
    strata: Vec<OrbitId>,
    minima: Vec<MinNormResult>,
}

impl<M: OrbitModel> CharacteristicEngine<M> {
    pub fn new(model: M, form: InvariantForm, level: &Rational) -> Result<Self, CharacteristicError> {
        let rank = model.weight_system().root_system().rank();
        if form.dim() != rank {
            return Err(CharacteristicError::FormMismatch {
                form: form.dim(),
                rank,
            });
        }
        let arrangement = Arrangement::build(model.weight_system(), level)?;
        Self::with_arrangement(model, form, arrangement)
    }

    /// Equal factor scaling and level 2.
    pub fn standard(model: M) -> Result<Self, CharacteristicError> {
        let form = InvariantForm::standard(model.weight_system().root_system());
        Self::new(model, form, &crate::arrangement::default_level())
    }

    pub fn with_arrangement(
        model: M,
        form: InvariantForm,
        arrangement: Arrangement,
    ) -> Result<Self, CharacteristicError> {
        let strata: Vec<OrbitId> = arrangement
            .subspaces
            .par_iter()
            .map(|s| model.generic_stratum(&s.i_r))
            .collect::<Result<_, _>>()?;
        let minima: Vec<MinNormResult> = arrangement
            .regions
            .par_iter()
            .map(|r| min_norm_point(&r.closure(), &form))
            .collect::<Result<_, _>>()?;
        Ok(CharacteristicEngine {
            model,
            form,
            arrangement,
            strata,
            minima,
        })
    }

    pub fn model(&self) -> &M {
        &self.model
    }

    pub fn form(&self) -> &InvariantForm {
        &self.form
    }

    pub fn arrangement(&self) -> &Arrangement {
        &self.arrangement
    }

    /// Generic stratum of each region, indexed by region id.
    pub fn strata(&self) -> &[OrbitId] {
        &self.strata
    }

    /// Minimal-norm point of each region closure, indexed by region id.
    pub fn region_minima(&self) -> &[MinNormResult] {
        &self.minima
    }

    pub fn m_sets(&self, orbit: OrbitId) -> Result<MSets, OrbitError> {
        m_sets_from_strata(&self.model, orbit, &self.strata)
    }

    pub fn characteristic(&self, orbit: OrbitId, mode: Mode) -> Result<Characteristic, CharacteristicError> {
        let sets = self.m_sets(orbit)?;
        let selected = match mode {
            Mode::Nonempty => &sets.m_set,
            Mode::Dense => &sets.tilde_m_set,
        };
        if selected.is_empty() {
            return match mode {
                Mode::Dense => Err(CharacteristicError::DenseUndefined(self.model.descriptor(orbit))),
                // The zero orbit lies in every G·V_R, so M_O is never empty.
                Mode::Nonempty => Err(MinNormError::EmptyUnion.into()),
            };
        }
        let best = min_over_results(selected.iter().map(|&id| (id, &self.minima[id])))?;
        let rs = self.model.weight_system().root_system();
        Ok(Characteristic {
            orbit,
            descriptor: self.model.descriptor(orbit),
            mode,
            labels: dynkin_labels(rs, &best.point).map_err(OrbitError::from)?,
            point: best.point,
            norm_sq: best.norm_sq,
            m_set: sets.m_set,
            tilde_m_set: sets.tilde_m_set,
            achieving: best.achieving,
        })
    }
}

/// One-shot characteristic with the standard form and level 2.
pub fn characteristic<M: OrbitModel>(model: M, orbit: OrbitId, mode: Mode) -> Result<Characteristic, CharacteristicError> {
    CharacteristicEngine::standard(model)?.characteristic(orbit, mode)
}
