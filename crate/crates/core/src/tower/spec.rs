//! JSON tower descriptions.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::parse::parse_terms;
use super::{Level, Terms, Tower, TowerData};
use crate::endo::MapSpec;
use crate::error::{Error, Result};
use crate::exact::{BaseAlgebra, Variable};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vars: Option<Vec<Variable>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ratfun: Option<String>,
}

impl BaseSpec {
    pub fn algebra(&self) -> Result<BaseAlgebra> {
        match (&self.vars, &self.ratfun) {
            (Some(_), Some(_)) => Err(Error::parse(1, "base has both `vars` and `ratfun`")),
            (Some(v), None) => Ok(BaseAlgebra::polynomial(v.clone())),
            (None, Some(x)) => Ok(BaseAlgebra::rational_functions(x.clone())),
            (None, None) => Ok(BaseAlgebra::rationals()),
        }
    }

    pub fn from_algebra(base: &BaseAlgebra) -> BaseSpec {
        match base {
            BaseAlgebra::Polynomial(v) => BaseSpec {
                vars: Some(v.clone()),
                ratfun: None,
            },
            BaseAlgebra::RationalFunction(x) => BaseSpec {
                vars: None,
                ratfun: Some(x.clone()),
            },
        }
    }
}

/// One level. Missing `sigma` entries are the identity, missing `delta`
/// entries are zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelSpec {
    pub name: String,
    #[serde(default)]
    pub invertible: bool,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub sigma: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma_inverse: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub delta: BTreeMap<String, String>,
}

impl LevelSpec {
    pub fn new(name: impl Into<String>) -> Self {
        LevelSpec {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn invertible(mut self) -> Self {
        self.invertible = true;
        self
    }

    pub fn sigma(mut self, gen: &str, image: &str) -> Self {
        self.sigma.insert(gen.into(), image.into());
        self
    }

    pub fn sigma_inverse(mut self, gen: &str, image: &str) -> Self {
        self.sigma_inverse
            .get_or_insert_with(BTreeMap::new)
            .insert(gen.into(), image.into());
        self
    }

    pub fn delta(mut self, gen: &str, image: &str) -> Self {
        self.delta.insert(gen.into(), image.into());
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default)]
    pub base: BaseSpec,
    #[serde(default)]
    pub levels: Vec<LevelSpec>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub noetherian_assumed: bool,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub maps: BTreeMap<String, MapSpec>,
}

impl TowerSpec {
    pub fn new(name: &str, base: BaseAlgebra) -> Self {
        TowerSpec {
            name: Some(name.to_string()),
            base: BaseSpec::from_algebra(&base),
            ..Default::default()
        }
    }

    pub fn level(mut self, level: LevelSpec) -> Self {
        self.levels.push(level);
        self
    }

    pub fn map(mut self, name: &str, map: MapSpec) -> Self {
        self.maps.insert(name.to_string(), map);
        self
    }

    pub fn noetherian(mut self) -> Self {
        self.noetherian_assumed = true;
        self
    }

    pub fn from_json(text: &str) -> Result<TowerSpec> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }
}

/// Builds and validates a tower: every level's maps must respect all
/// relations of the sub-tower below it.
pub fn validate_tower(spec: &TowerSpec) -> Result<Tower> {
    let base = spec.base.algebra()?;
    let m = base.nvars();
    let names: Vec<(String, bool)> = spec
        .levels
        .iter()
        .map(|l| (l.name.clone(), l.invertible))
        .collect();
    TowerData::partial(base.clone(), Vec::new(), &names).check_names()?;
    let mut defined: Vec<Level> = Vec::new();
    for (i, ls) in spec.levels.iter().enumerate() {
        let data = TowerData::partial(base.clone(), defined.clone(), &names[i..]);
        let below = m + i;
        let read = |map: &BTreeMap<String, String>, identity: bool| -> Result<Vec<Terms>> {
            for key in map.keys() {
                match data.gen_index(key) {
                    None => return Err(Error::UnknownSymbol(key.clone())),
                    Some(g) if g >= below => {
                        return Err(Error::ImageNotBelow {
                            level: ls.name.clone(),
                            generator: key.clone(),
                            offending: key.clone(),
                        })
                    }
                    Some(_) => {}
                }
            }
            (0..below)
                .map(|g| match map.get(data.gen_name(g)) {
                    Some(s) => parse_terms(&data, s),
                    None if identity => Ok(data.gen_terms(g)),
                    None => Ok(Terms::new()),
                })
                .collect()
        };
        let sigma = read(&ls.sigma, true)?;
        let sigma_inverse = ls.sigma_inverse.as_ref().map(|s| read(s, true)).transpose()?;
        let delta = read(&ls.delta, false)?;
        let level = Level::new(&data, ls.name.clone(), ls.invertible, sigma, sigma_inverse, delta);
        let mut with = defined.clone();
        with.push(level);
        let check = TowerData::partial(base.clone(), with.clone(), &names[i + 1..]);
        check.validate_level(i)?;
        defined = with;
    }
    let mut data = TowerData::new(base, defined);
    data.name = spec.name.clone();
    data.noetherian_assumed = spec.noetherian_assumed;
    Ok(Tower(std::sync::Arc::new(data)))
}

impl Tower {
    /// The tower as a spec. Identity `sigma` entries and zero `delta`
    /// entries are left out.
    pub fn to_spec(&self) -> TowerSpec {
        let d = self.data();
        let mut spec = TowerSpec {
            name: d.name.clone(),
            base: BaseSpec::from_algebra(&d.base),
            noetherian_assumed: d.noetherian_assumed,
            ..Default::default()
        };
        for (i, lv) in d.levels.iter().enumerate() {
            let mut ls = LevelSpec::new(lv.name.clone());
            ls.invertible = lv.invertible;
            for g in 0..d.m() + i {
                let name = d.gen_name(g);
                let id = d.gen_terms(g);
                if lv.sigma.images[g] != id {
                    ls = ls.sigma(name, &d.render(&lv.sigma.images[g]));
                }
                if let (false, Some(inv)) = (lv.sigma_identity, &lv.sigma_inverse) {
                    if inv.images[g] != id {
                        ls = ls.sigma_inverse(name, &d.render(&inv.images[g]));
                    }
                }
                if !lv.delta.images[g].is_empty() {
                    ls = ls.delta(name, &d.render(&lv.delta.images[g]));
                }
            }
            spec.levels.push(ls);
        }
        spec
    }
}
