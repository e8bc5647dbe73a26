//! Iterated Ore and skew Laurent extension towers.
//!
//! A tower is a commutative base followed by levels `x_1, ..., x_n`. Level
//! `i` carries an automorphism `sigma_i` and a `sigma_i`-derivation
//! `delta_i` of everything below it, given by images of the lower
//! generators. Invertible levels have `delta_i = 0`.

mod element;
pub(crate) mod engine;
mod opposite;
mod parse;
mod render;
mod spec;
mod tensor;
#[cfg(test)]
mod tests;

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exact::{BaseAlgebra, Coeff, Exponents};
use engine::{Ext, Images, Letter};

pub use element::Element;
pub use opposite::{opposite_tower, OppositeMap};
pub use spec::{validate_tower, BaseSpec, LevelSpec, TowerSpec};
pub use tensor::{tensor_towers, TensorProduct};

pub(crate) type Terms = BTreeMap<Exponents, Coeff>;

type CacheKey = (usize, bool, Exponents, Exponents);

/// Deliberate defects used to show that the verification suites have teeth.
#[doc(hidden)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mutation {
    #[default]
    None,
    /// Build opposite levels with `+delta sigma^-1`.
    FlipOppositeDeltaSign,
    /// Use the plain Leibniz rule in place of the sigma-twisted one.
    DropLeibnizTwist,
}

/// Images of the generators below a level, indexed globally.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct GenMap {
    pub images: Vec<Terms>,
}

#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub name: String,
    pub invertible: bool,
    pub sigma: GenMap,
    pub sigma_inverse: Option<GenMap>,
    pub delta: GenMap,
    pub sigma_identity: bool,
    pub delta_zero: bool,
}

impl Level {
    pub fn new(
        data: &TowerData,
        name: String,
        invertible: bool,
        sigma: Vec<Terms>,
        sigma_inverse: Option<Vec<Terms>>,
        delta: Vec<Terms>,
    ) -> Level {
        let sigma_identity = sigma.iter().enumerate().all(|(g, t)| *t == data.gen_terms(g));
        let delta_zero = delta.iter().all(|t| t.is_empty());
        Level {
            name,
            invertible,
            sigma: GenMap { images: sigma },
            sigma_inverse: sigma_inverse.map(|images| GenMap { images }),
            delta: GenMap { images: delta },
            sigma_identity,
            delta_zero,
        }
    }

    /// Identity maps of the right size, for levels not yet defined.
    fn placeholder(data: &TowerData, name: String, invertible: bool, below: usize) -> Level {
        let ids: Vec<Terms> = (0..below).map(|g| data.gen_terms(g)).collect();
        Level {
            name,
            invertible,
            sigma: GenMap { images: ids.clone() },
            sigma_inverse: Some(GenMap { images: ids }),
            delta: GenMap {
                images: vec![Terms::new(); below],
            },
            sigma_identity: true,
            delta_zero: true,
        }
    }

    pub fn sigma_images(&self) -> Images<'_> {
        if self.sigma_identity {
            Images::Identity
        } else {
            Images::Given(&self.sigma.images)
        }
    }

    pub fn sigma_inverse_images(&self) -> Images<'_> {
        match (&self.sigma_inverse, self.sigma_identity) {
            (_, true) => Images::Identity,
            (Some(m), false) => Images::Given(&m.images),
            (None, false) => panic!("level `{}` used without an inverse automorphism", self.name),
        }
    }

    fn sder(&self) -> Ext<'_> {
        Ext::SigmaDer {
            sigma: self.sigma_images(),
            delta: &self.delta.images,
        }
    }
}

pub(crate) struct TowerData {
    pub name: Option<String>,
    pub base: BaseAlgebra,
    pub levels: Vec<Level>,
    pub noetherian_assumed: bool,
    pub mutation: Mutation,
    pub cache: Mutex<HashMap<CacheKey, Arc<(Terms, Terms)>>>,
}

impl TowerData {
    pub fn new(base: BaseAlgebra, levels: Vec<Level>) -> TowerData {
        TowerData {
            name: None,
            base,
            levels,
            noetherian_assumed: false,
            mutation: Mutation::None,
            cache: Mutex::new(HashMap::new()),
        }
    }

    /// A tower whose levels from `defined` on are identity placeholders with
    /// the given names.
    pub fn partial(base: BaseAlgebra, defined: Vec<Level>, rest: &[(String, bool)]) -> TowerData {
        let mut data = TowerData::new(base, defined);
        let m = data.m();
        let start = data.levels.len();
        let n = start + rest.len();
        // gen_terms needs the final level count, so size placeholders in two passes
        data.levels.extend(rest.iter().map(|(name, inv)| Level {
            name: name.clone(),
            invertible: *inv,
            sigma: GenMap { images: Vec::new() },
            sigma_inverse: None,
            delta: GenMap { images: Vec::new() },
            sigma_identity: true,
            delta_zero: true,
        }));
        for j in start..n {
            let (name, inv) = rest[j - start].clone();
            data.levels[j] = Level::placeholder(&data, name, inv, m + j);
        }
        data
    }

    pub fn gen_name(&self, g: usize) -> &str {
        let m = self.m();
        if g < m {
            self.base.var_names()[g]
        } else {
            &self.levels[g - m].name
        }
    }

    pub fn gen_names(&self) -> Vec<String> {
        (0..self.ngens()).map(|g| self.gen_name(g).to_string()).collect()
    }

    pub fn gen_index(&self, name: &str) -> Option<usize> {
        (0..self.ngens()).find(|&g| self.gen_name(g) == name)
    }

    pub fn gen_invertible(&self, g: usize) -> bool {
        let m = self.m();
        if g < m {
            self.base.var_invertible(g)
        } else {
            self.levels[g - m].invertible
        }
    }

    /// The defining relations of the sub-tower below level `below`, each as
    /// a word and the normal form it must equal.
    pub fn relations(&self, below: usize) -> Result<Vec<Relation>> {
        let mut out = Vec::new();
        let m = self.m();
        if !self.base.is_ratfun() {
            for a in 0..m {
                for b in a + 1..m {
                    let lhs = vec![Letter::new(b), Letter::new(a)];
                    let rhs = self.word_terms(&[Letter::new(a), Letter::new(b)])?;
                    out.push(self.relation(lhs, rhs));
                }
            }
        }
        for j in 0..below {
            for g in 0..m + j {
                let lhs = vec![Letter::new(m + j), Letter::new(g)];
                let rhs = self.mul(&self.gen_terms(m + j), &self.gen_terms(g))?;
                out.push(self.relation(lhs, rhs));
            }
        }
        Ok(out)
    }

    fn relation(&self, lhs: Vec<Letter>, rhs: Terms) -> Relation {
        let word: Vec<&str> = lhs.iter().map(|l| self.gen_name(l.gen)).collect();
        let label = format!("{} = {}", word.join("*"), self.render(&rhs));
        Relation { lhs, rhs, label }
    }

    /// Runs every check for level `i`, assuming the levels below are valid.
    pub fn validate_level(&self, i: usize) -> Result<()> {
        let lv = &self.levels[i];
        let m = self.m();
        let mut maps: Vec<(&str, &GenMap)> = vec![("sigma", &lv.sigma), ("delta", &lv.delta)];
        if let Some(inv) = &lv.sigma_inverse {
            maps.push(("sigma_inverse", inv));
        }
        for (_, map) in &maps {
            debug_assert_eq!(map.images.len(), m + i);
            for (g, img) in map.images.iter().enumerate() {
                for e in img.keys() {
                    if let Some(j) = (i..self.n()).find(|&j| e.0[j] != 0) {
                        return Err(Error::ImageNotBelow {
                            level: lv.name.clone(),
                            generator: self.gen_name(g).to_string(),
                            offending: self.levels[j].name.clone(),
                        });
                    }
                }
            }
        }
        if lv.invertible && !lv.delta_zero {
            return Err(Error::LaurentWithDelta(lv.name.clone()));
        }
        if lv.invertible && !lv.sigma_identity && lv.sigma_inverse.is_none() {
            return Err(Error::MissingInverse(lv.name.clone()));
        }
        for g in (0..m + i).filter(|&g| self.gen_invertible(g)) {
            for (label, map) in &maps {
                if *label != "delta" && self.unit_inverse(&map.images[g]).is_none() {
                    return Err(Error::ImageNotUnit(format!(
                        "`{}` under {label} of level `{}`",
                        self.gen_name(g),
                        lv.name
                    )));
                }
            }
        }
        if let (false, Some(inv)) = (lv.sigma_identity, &lv.sigma_inverse) {
            let fwd = Ext::Hom(lv.sigma_images());
            let bwd = Ext::Hom(Images::Given(&inv.images));
            for g in 0..m + i {
                let id = self.gen_terms(g);
                if self.ext_apply(fwd, &inv.images[g])? != id || self.ext_apply(bwd, &lv.sigma.images[g])? != id {
                    return Err(Error::InverseMismatch(format!(
                        "`{}` at level `{}`",
                        self.gen_name(g),
                        lv.name
                    )));
                }
            }
        }
        let mut exts: Vec<(&str, Ext)> = Vec::new();
        if !lv.sigma_identity {
            exts.push(("sigma", Ext::Hom(lv.sigma_images())));
            if let Some(inv) = &lv.sigma_inverse {
                exts.push(("sigma_inverse", Ext::Hom(Images::Given(&inv.images))));
            }
        }
        if !lv.delta_zero {
            exts.push(("delta", lv.sder()));
        }
        if exts.is_empty() {
            return Ok(());
        }
        for rel in self.relations(i)? {
            for (label, ext) in &exts {
                let l = self.ext_word(*ext, &rel.lhs)?;
                let r = self.ext_apply(*ext, &rel.rhs)?;
                if l != r {
                    return Err(Error::RelationViolation {
                        level: lv.name.clone(),
                        relation: format!("{} under {label}", rel.label),
                        lhs: self.render(&l),
                        rhs: self.render(&r),
                    });
                }
            }
        }
        Ok(())
    }

    fn check_names(&self) -> Result<()> {
        let mut seen = HashSet::new();
        for g in 0..self.ngens() {
            if !seen.insert(self.gen_name(g)) {
                return Err(Error::DuplicateName(self.gen_name(g).to_string()));
            }
        }
        Ok(())
    }

    fn duplicate(&self) -> TowerData {
        TowerData {
            name: self.name.clone(),
            base: self.base.clone(),
            levels: self.levels.clone(),
            noetherian_assumed: self.noetherian_assumed,
            mutation: self.mutation,
            cache: Mutex::new(HashMap::new()),
        }
    }
}

pub(crate) struct Relation {
    pub lhs: Vec<Letter>,
    pub rhs: Terms,
    pub label: String,
}

/// A validated tower. Cloning is cheap and clones share identity: elements
/// of two towers interoperate only when the towers are clones of each other.
#[derive(Clone)]
pub struct Tower(pub(crate) Arc<TowerData>);

impl Tower {
    /// Validates level by level and wraps the data.
    pub(crate) fn from_data(data: TowerData) -> Result<Tower> {
        data.check_names()?;
        for i in 0..data.n() {
            data.validate_level(i)?;
        }
        Ok(Tower(Arc::new(data)))
    }

    pub(crate) fn data(&self) -> &TowerData {
        &self.0
    }

    pub fn same(&self, other: &Tower) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub fn name(&self) -> Option<&str> {
        self.0.name.as_deref()
    }

    pub fn with_name(&self, name: impl Into<String>) -> Tower {
        let mut d = self.0.duplicate();
        d.name = Some(name.into());
        Tower(Arc::new(d))
    }

    #[doc(hidden)]
    pub fn with_mutation(&self, mutation: Mutation) -> Tower {
        let mut d = self.0.duplicate();
        d.mutation = mutation;
        Tower(Arc::new(d))
    }

    pub fn mutation(&self) -> Mutation {
        self.0.mutation
    }

    pub fn base(&self) -> &BaseAlgebra {
        &self.0.base
    }

    pub fn noetherian_assumed(&self) -> bool {
        self.0.noetherian_assumed
    }

    pub fn n_levels(&self) -> usize {
        self.0.n()
    }

    pub fn level_names(&self) -> Vec<String> {
        self.0.levels.iter().map(|l| l.name.clone()).collect()
    }

    pub fn level_invertible(&self, i: usize) -> bool {
        self.0.levels[i].invertible
    }

    /// Base variables followed by level generators.
    pub fn generator_names(&self) -> Vec<String> {
        self.0.gen_names()
    }

    pub fn generator_invertible(&self, name: &str) -> Option<bool> {
        self.0.gen_index(name).map(|g| self.0.gen_invertible(g))
    }

    pub fn generators(&self) -> Vec<Element> {
        (0..self.0.ngens())
            .map(|g| Element::from_terms(self, self.0.gen_terms(g)))
            .collect()
    }

    pub fn generator(&self, name: &str) -> Result<Element> {
        let g = self
            .0
            .gen_index(name)
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))?;
        Ok(Element::from_terms(self, self.0.gen_terms(g)))
    }

    pub fn zero(&self) -> Element {
        Element::from_terms(self, Terms::new())
    }

    pub fn one(&self) -> Element {
        Element::from_terms(self, self.0.one_terms())
    }

    pub fn constant(&self, c: BigRational) -> Element {
        Element::from_terms(self, self.0.const_terms(self.0.base.constant(c)))
    }

    pub fn coefficient(&self, c: Coeff) -> Result<Element> {
        if !self.0.base.admits(&c) {
            return Err(Error::MixedBase);
        }
        Ok(Element::from_terms(self, self.0.const_terms(c)))
    }

    pub fn parse(&self, s: &str) -> Result<Element> {
        Ok(Element::from_terms(self, parse::parse_terms(&self.0, s)?))
    }

    /// The inverse of a monomial unit, if `a` is one.
    pub fn is_unit(&self, a: &Element) -> Option<Element> {
        if !self.same(a.tower()) {
            return None;
        }
        self.0.unit_inverse(a.raw()).map(|t| Element::from_terms(self, t))
    }

    /// `u a u^-1`.
    pub fn conjugate(&self, u: &Element, a: &Element) -> Result<Element> {
        let inv = u.inverse().ok_or_else(|| Error::NotAUnit(u.to_string()))?;
        u.mul(a)?.mul(&inv)
    }

    /// `sigma_i`, `sigma_i^-1` and `delta_i` images of a lower generator.
    pub fn level_images(&self, i: usize, gen: &str) -> Option<(Element, Option<Element>, Element)> {
        let g = self.0.gen_index(gen)?;
        let lv = &self.0.levels[i];
        if g >= self.0.m() + i {
            return None;
        }
        let wrap = |t: &Terms| Element::from_terms(self, t.clone());
        let inv = match (&lv.sigma_inverse, lv.sigma_identity) {
            (Some(m), _) => Some(wrap(&m.images[g])),
            (None, true) => Some(wrap(&self.0.gen_terms(g))),
            (None, false) => None,
        };
        Some((wrap(&lv.sigma.images[g]), inv, wrap(&lv.delta.images[g])))
    }

    /// Same base and level data, image for image.
    pub fn structurally_equal(&self, other: &Tower) -> bool {
        let (a, b) = (&self.0, &other.0);
        a.base == b.base
            && a.n() == b.n()
            && a.levels.iter().zip(&b.levels).all(|(x, y)| {
                let inv_eq = match (&x.sigma_inverse, &y.sigma_inverse) {
                    (Some(p), Some(q)) => p == q,
                    _ => true,
                };
                x.name == y.name && x.invertible == y.invertible && x.sigma == y.sigma && x.delta == y.delta && inv_eq
            })
    }

    /// Moves an element of a structurally equal tower into this one.
    pub fn adopt(&self, a: &Element) -> Result<Element> {
        if !self.structurally_equal(a.tower()) {
            return Err(Error::OwnerMismatch);
        }
        Ok(Element::from_terms(self, a.raw().clone()))
    }

    /// A readable one-line description such as `Q[x][d; delta(x) = 1]`.
    pub fn describe(&self) -> String {
        let d = &self.0;
        let mut out = d.base.describe();
        for (i, lv) in d.levels.iter().enumerate() {
            let mut parts = Vec::new();
            for g in 0..d.m() + i {
                if !lv.sigma_identity && lv.sigma.images[g] != d.gen_terms(g) {
                    parts.push(format!("sigma({}) = {}", d.gen_name(g), d.render(&lv.sigma.images[g])));
                }
            }
            for g in 0..d.m() + i {
                if !lv.delta.images[g].is_empty() {
                    parts.push(format!("delta({}) = {}", d.gen_name(g), d.render(&lv.delta.images[g])));
                }
            }
            let gen = if lv.invertible {
                format!("{0}, {0}^-1", lv.name)
            } else {
                lv.name.clone()
            };
            if parts.is_empty() {
                out.push_str(&format!("[{gen}]"));
            } else {
                out.push_str(&format!("[{gen}; {}]", parts.join(", ")));
            }
        }
        out
    }
}

impl fmt::Debug for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tower({})", self.describe())
    }
}

impl fmt::Display for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}
