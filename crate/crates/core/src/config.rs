//! Run configuration: which group, which module, which form.

use crate::arrangement::default_level;
use crate::liecore::{InvariantForm, LieError, RootSystem, Series, SimpleFactor, Weight, WeightSystem};
use crate::orbits::{ExampleModule, OrbitError, OrbitModel, SlAdjoint};
use crate::rational::{parse_rational, Rational};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConfigError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Orbit(#[from] OrbitError),
    #[error("unknown module {0:?}")]
    UnknownModule(String),
    #[error("no orbit classification available for {0}")]
    NoOrbitModel(String),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuleSpec {
    Adjoint,
    LittleAdjoint,
    /// `V_1 ⊗ V_2 ⊕ V_1` for `SL_2 × SL_2`.
    Example,
    /// Direct sum of irreducibles with these highest weights.
    HighestWeights(Vec<Weight>),
}

impl FromStr for ModuleSpec {
    type Err = ConfigError;

    /// Accepts `adjoint`, `little-adjoint`, `example-2x3`, or a list of
    /// highest weights such as `1,1;1,0`.
    fn from_str(s: &str) -> Result<Self, ConfigError> {
        match s.trim() {
            "adjoint" => Ok(ModuleSpec::Adjoint),
            "little-adjoint" => Ok(ModuleSpec::LittleAdjoint),
            "example-2x3" | "example" => Ok(ModuleSpec::Example),
            other => {
                let body = other.strip_prefix("hw:").unwrap_or(other);
                let weights = body
                    .split(';')
                    .map(|w| {
                        w.split(',')
                            .map(|c| c.trim().parse::<i64>())
                            .collect::<Result<Vec<_>, _>>()
                            .map(Weight::new)
                    })
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| ConfigError::UnknownModule(s.to_string()))?;
                Ok(ModuleSpec::HighestWeights(weights))
            }
        }
    }
}

impl fmt::Display for ModuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleSpec::Adjoint => f.write_str("adjoint"),
            ModuleSpec::LittleAdjoint => f.write_str("little-adjoint"),
            ModuleSpec::Example => f.write_str("example-2x3"),
            ModuleSpec::HighestWeights(ws) => {
                let parts: Vec<String> = ws
                    .iter()
                    .map(|w| w.0.iter().map(i64::to_string).collect::<Vec<_>>().join(","))
                    .collect();
                write!(f, "{}", parts.join(";"))
            }
        }
    }
}

/// Parses the `--type`/`--rank` pair. `type` may be a single series letter,
/// a comma list of letters matched against a comma list of ranks, or a full
/// product such as `A1xA1` with no rank.
pub fn parse_group(ty: &str, rank: Option<&str>) -> Result<Vec<SimpleFactor>, ConfigError> {
    match rank {
        None => Ok(RootSystem::parse_factors(ty)?),
        Some(r) => {
            let series: Vec<&str> = ty.split(',').map(str::trim).collect();
            let ranks = r
                .split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| ConfigError::Invalid(format!("bad rank {r:?}")))?;
            if series.len() != ranks.len() {
                return Err(ConfigError::Invalid(format!(
                    "{} series but {} ranks",
                    series.len(),
                    ranks.len()
                )));
            }
            series
                .iter()
                .zip(ranks)
                .map(|(s, k)| Ok(SimpleFactor::new(s.parse::<Series>()?, k)))
                .collect()
        }
    }
}

/// Comma-separated positive rationals, one per simple factor.
pub fn parse_scales(s: &str) -> Result<Vec<Rational>, ConfigError> {
    s.split(',')
        .map(|t| parse_rational(t.trim()).map_err(|e| ConfigError::Invalid(e.to_string())))
        .collect()
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    /// Empty means the group implied by the module (only for the example).
    pub factors: Vec<SimpleFactor>,
    pub module: ModuleSpec,
    pub level: Rational,
    pub scales: Option<Vec<Rational>>,
    pub seed: u64,
}

impl RunConfig {
    pub fn new(factors: Vec<SimpleFactor>, module: ModuleSpec) -> Self {
        RunConfig {
            factors,
            module,
            level: default_level(),
            scales: None,
            seed: 0,
        }
    }

    pub fn root_system(&self) -> Result<RootSystem, ConfigError> {
        let example = [SimpleFactor::new(Series::A, 1); 2];
        match (&self.module, self.factors.is_empty()) {
            (ModuleSpec::Example, true) => Ok(RootSystem::new(&example)?),
            (ModuleSpec::Example, false) if self.factors != example => Err(ConfigError::Invalid(
                "the example module lives on A1xA1".into(),
            )),
            (_, true) => Err(ConfigError::Invalid("no group given".into())),
            _ => Ok(RootSystem::new(&self.factors)?),
        }
    }

    pub fn highest_weights(&self, rs: &RootSystem) -> Result<Vec<Weight>, ConfigError> {
        Ok(match &self.module {
            ModuleSpec::Adjoint => rs.adjoint_highest_weights(),
            ModuleSpec::LittleAdjoint => rs.little_adjoint_highest_weights()?,
            ModuleSpec::Example => ExampleModule::highest_weights(),
            ModuleSpec::HighestWeights(ws) => ws.clone(),
        })
    }

    pub fn weight_system(&self) -> Result<WeightSystem, ConfigError> {
        let rs = self.root_system()?;
        let hw = self.highest_weights(&rs)?;
        Ok(WeightSystem::new(&rs, &hw)?)
    }

    pub fn form(&self, rs: &RootSystem) -> Result<InvariantForm, ConfigError> {
        match &self.scales {
            None => Ok(InvariantForm::standard(rs)),
            Some(s) => Ok(InvariantForm::with_scales(rs, s)?),
        }
    }

    /// The orbit classification for this module, when one is implemented.
    pub fn orbit_model(&self) -> Result<Box<dyn OrbitModel>, ConfigError> {
        let rs = self.root_system()?;
        match (&self.module, rs.factors()) {
            (ModuleSpec::Example, _) => Ok(Box::new(ExampleModule::new())),
            (ModuleSpec::Adjoint, [f]) if f.series == Series::A => {
                Ok(Box::new(SlAdjoint::new(f.rank + 1, self.seed)?))
            }
            _ => Err(ConfigError::NoOrbitModel(format!(
                "{} of {}",
                self.module,
                rs.factors().iter().map(ToString::to_string).collect::<Vec<_>>().join("x")
            ))),
        }
    }
}
