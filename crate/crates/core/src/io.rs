//! JSON documents: root systems, weight systems, `regions.json`, and
//! `characteristics.json`. Rationals are written as lowest-terms strings.

use crate::arrangement::{Arrangement, ClosureRow, Hyperplane, Region, RegionSubspace, Side};
use crate::liecore::{LieError, Point, RootSystem, Series, SimpleFactor, Weight, WeightSystem};
use crate::orbits::Characteristic;
use crate::rational::{format_rational, parse_rational, Rational};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeSet;

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("malformed document: {0}")]
    Malformed(String),
}

/// A rational that (de)serializes as `"p/q"`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Q(pub Rational);

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map(Q).map_err(serde::de::Error::custom)
    }
}

fn qs(v: &[Rational]) -> Vec<Q> {
    v.iter().cloned().map(Q).collect()
}

fn unq(v: &[Q]) -> Vec<Rational> {
    v.iter().map(|q| q.0.clone()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSystemDoc {
    pub factors: Vec<(String, usize)>,
    pub cartan: Vec<Vec<i64>>,
    pub positive_roots: Vec<Vec<i64>>,
    pub root_lengths: Vec<Q>,
}

impl RootSystemDoc {
    pub fn new(rs: &RootSystem) -> Self {
        RootSystemDoc {
            factors: rs
                .factors()
                .iter()
                .map(|f| (f.series.to_string(), f.rank))
                .collect(),
            cartan: rs.cartan().to_vec(),
            positive_roots: rs.positive_roots().iter().map(|r| r.weight.0.clone()).collect(),
            root_lengths: qs(&rs.root_lengths()),
        }
    }

    /// Rebuilds the root system from its factors and checks the stored data.
    pub fn root_system(&self) -> Result<RootSystem, IoError> {
        let factors = self
            .factors
            .iter()
            .map(|(s, r)| Ok(SimpleFactor::new(s.parse::<Series>()?, *r)))
            .collect::<Result<Vec<_>, LieError>>()?;
        let rs = RootSystem::new(&factors)?;
        if RootSystemDoc::new(&rs) != *self {
            return Err(IoError::Malformed("root system data disagrees with its factors".into()));
        }
        Ok(rs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightEntry {
    pub weight: Vec<i64>,
    pub mult: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightSystemDoc {
    pub root_system: RootSystemDoc,
    pub module_spec: Vec<Vec<i64>>,
    pub weights: Vec<WeightEntry>,
    pub zero_mult: u64,
}

impl WeightSystemDoc {
    pub fn new(ws: &WeightSystem) -> Self {
        WeightSystemDoc {
            root_system: RootSystemDoc::new(ws.root_system()),
            module_spec: ws.module_spec().iter().map(|w| w.0.clone()).collect(),
            weights: ws
                .entries()
                .iter()
                .map(|(w, &m)| WeightEntry {
                    weight: w.0.clone(),
                    mult: m,
                })
                .collect(),
            zero_mult: ws.zero_mult(),
        }
    }

    pub fn weight_system(&self) -> Result<WeightSystem, IoError> {
        let rs = self.root_system.root_system()?;
        let spec: Vec<Weight> = self.module_spec.iter().cloned().map(Weight).collect();
        let ws = WeightSystem::new(&rs, &spec)?;
        if WeightSystemDoc::new(&ws) != *self {
            return Err(IoError::Malformed("weights disagree with the module spec".into()));
        }
        Ok(ws)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperplaneDoc {
    pub weight_fw: Vec<i64>,
    pub level: Q,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowDoc {
    pub normal: Vec<i64>,
    pub bound: Q,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionDoc {
    pub id: usize,
    pub signs: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub witness: Vec<Q>,
    pub closure_ineqs: Vec<RowDoc>,
    pub i_r: Vec<Vec<i64>>,
    pub dim: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionsDoc {
    pub root_system: RootSystemDoc,
    pub module_spec: Vec<Vec<i64>>,
    pub level: Q,
    pub hyperplanes: Vec<HyperplaneDoc>,
    pub regions: Vec<RegionDoc>,
}

impl RegionsDoc {
    pub fn new(
        ws: &WeightSystem,
        arr: &Arrangement,
        label: impl Fn(&RegionSubspace) -> Option<String>,
    ) -> Self {
        RegionsDoc {
            root_system: RootSystemDoc::new(ws.root_system()),
            module_spec: ws.module_spec().iter().map(|w| w.0.clone()).collect(),
            level: Q(arr.level.clone()),
            hyperplanes: arr
                .hyperplanes
                .iter()
                .map(|h| HyperplaneDoc {
                    weight_fw: h.weight.0.clone(),
                    level: Q(h.level.clone()),
                })
                .collect(),
            regions: arr
                .regions
                .iter()
                .zip(&arr.subspaces)
                .map(|(r, s)| RegionDoc {
                    id: r.id,
                    signs: r.sign_string(),
                    label: label(s),
                    witness: qs(r.witness.coroot_coords()),
                    closure_ineqs: r
                        .closure_ineqs
                        .iter()
                        .map(|row| RowDoc {
                            normal: row.normal.clone(),
                            bound: Q(row.bound.clone()),
                        })
                        .collect(),
                    i_r: s.i_r.iter().map(|w| w.0.clone()).collect(),
                    dim: s.dimension,
                })
                .collect(),
        }
    }

    /// Rebuilds the in-memory arrangement without recomputing it.
    pub fn arrangement(&self) -> Result<Arrangement, IoError> {
        let hyperplanes = self
            .hyperplanes
            .iter()
            .map(|h| Hyperplane {
                weight: Weight(h.weight_fw.clone()),
                level: h.level.0.clone(),
            })
            .collect();
        let mut regions = Vec::with_capacity(self.regions.len());
        let mut subspaces = Vec::with_capacity(self.regions.len());
        for r in &self.regions {
            let signs = r
                .signs
                .chars()
                .map(|c| Side::from_symbol(c).ok_or_else(|| IoError::Malformed(format!("bad sign {c:?}"))))
                .collect::<Result<Vec<_>, _>>()?;
            regions.push(Region {
                id: r.id,
                signs,
                witness: Point::new(unq(&r.witness)),
                closure_ineqs: r
                    .closure_ineqs
                    .iter()
                    .map(|row| ClosureRow {
                        normal: row.normal.clone(),
                        bound: row.bound.0.clone(),
                    })
                    .collect(),
            });
            subspaces.push(RegionSubspace {
                region_id: r.id,
                i_r: r.i_r.iter().cloned().map(Weight).collect::<BTreeSet<_>>(),
                dimension: r.dim,
            });
        }
        Ok(Arrangement {
            level: self.level.0.clone(),
            hyperplanes,
            regions,
            subspaces,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacteristicDoc {
    pub model: String,
    pub orbit: String,
    pub mode: String,
    pub point: Vec<Q>,
    pub labels: Vec<Q>,
    pub norm_sq: Q,
    pub m_set: Vec<usize>,
    pub tilde_m_set: Vec<usize>,
    pub achieving: Vec<usize>,
}

impl CharacteristicDoc {
    pub fn new(model: &str, c: &Characteristic) -> Self {
        CharacteristicDoc {
            model: model.to_string(),
            orbit: c.descriptor.clone(),
            mode: c.mode.to_string(),
            point: qs(c.point.coroot_coords()),
            labels: qs(&c.labels),
            norm_sq: Q(c.norm_sq.clone()),
            m_set: c.m_set.clone(),
            tilde_m_set: c.tilde_m_set.clone(),
            achieving: c.achieving.clone(),
        }
    }

    pub fn point(&self) -> Point {
        Point::new(unq(&self.point))
    }

    pub fn labels(&self) -> Vec<Rational> {
        unq(&self.labels)
    }
}

pub fn to_json<T: Serialize>(doc: &T) -> Result<String, IoError> {
    let mut s = serde_json::to_string_pretty(doc)?;
    s.push('\n');
    Ok(s)
}

pub fn from_json<T: for<'de> Deserialize<'de>>(s: &str) -> Result<T, IoError> {
    Ok(serde_json::from_str(s)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbits::{CharacteristicEngine, ExampleModule, ExampleOrbit, Mode, OrbitModel};
    use crate::rational::{frac, int};

    #[test]
    fn rational_strings() {
        assert_eq!(serde_json::to_string(&Q(frac(6, 4))).unwrap(), "\"3/2\"");
        assert_eq!(serde_json::to_string(&Q(int(-2))).unwrap(), "\"-2\"");
        let q: Q = serde_json::from_str("\"10/4\"").unwrap();
        assert_eq!(q.0, frac(5, 2));
        assert!(serde_json::from_str::<Q>("\"1/0\"").is_err());
    }

    #[test]
    fn root_system_document() {
        let rs = RootSystem::simple(Series::G, 2).unwrap();
        let doc = RootSystemDoc::new(&rs);
        let text = to_json(&doc).unwrap();
        assert!(text.contains("\"G\""));
        let back: RootSystemDoc = from_json(&text).unwrap();
        assert_eq!(back.root_system().unwrap(), rs);

        let mut tampered = doc.clone();
        tampered.cartan[0][1] = 0;
        assert!(tampered.root_system().is_err());
    }

    #[test]
    fn weight_system_document() {
        let m = ExampleModule::new();
        let doc = WeightSystemDoc::new(m.weight_system());
        let back: WeightSystemDoc = from_json(&to_json(&doc).unwrap()).unwrap();
        assert_eq!(&back.weight_system().unwrap(), m.weight_system());
    }

    #[test]
    fn regions_document_rebuilds_arrangement() {
        let engine = CharacteristicEngine::standard(ExampleModule::new()).unwrap();
        let ws = engine.model().weight_system();
        let doc = RegionsDoc::new(ws, engine.arrangement(), |s| {
            crate::orbits::example::example_region_label(&s.i_r).map(String::from)
        });
        let text = to_json(&doc).unwrap();
        let back: RegionsDoc = from_json(&text).unwrap();
        assert_eq!(back, doc);
        let arr = back.arrangement().unwrap();
        assert_eq!(arr.regions, engine.arrangement().regions);
        assert_eq!(arr.subspaces, engine.arrangement().subspaces);
        assert_eq!(arr.hyperplanes, engine.arrangement().hyperplanes);
    }

    #[test]
    fn characteristic_document() {
        let engine = CharacteristicEngine::standard(ExampleModule::new()).unwrap();
        let c = engine.characteristic(ExampleOrbit::O5.id(), Mode::Dense).unwrap();
        let doc = CharacteristicDoc::new("example-2x3", &c);
        let text = to_json(&doc).unwrap();
        assert!(text.contains("\"O_5\""));
        let back: CharacteristicDoc = from_json(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.point(), Point::from_ints(&[2, 4]));
    }
}
