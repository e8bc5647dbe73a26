//! Derivations, automorphisms and anti-automorphisms of towers.
//!
//! A map is given by the images of all generators. It is accepted only if
//! its extension (Leibniz rule, multiplicativity or reversed
//! multiplicativity) sends both sides of every defining relation to the same
//! normal form.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tower::engine::{sub_terms, Ext, Images};
use crate::tower::{Element, Terms, Tower};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum MapKind {
    Derivation,
    Automorphism,
    #[serde(alias = "anti_automorphism", alias = "anti")]
    AntiAutomorphism,
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MapKind::Derivation => "derivation",
            MapKind::Automorphism => "automorphism",
            MapKind::AntiAutomorphism => "antiAutomorphism",
        })
    }
}

/// A map as it appears in a tower spec file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    pub kind: MapKind,
    pub images: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inverse_images: Option<BTreeMap<String, String>>,
}

impl MapSpec {
    pub fn new(kind: MapKind) -> Self {
        MapSpec {
            kind,
            images: BTreeMap::new(),
            inverse_images: None,
        }
    }

    pub fn image(mut self, gen: &str, image: &str) -> Self {
        self.images.insert(gen.into(), image.into());
        self
    }

    pub fn inverse_image(mut self, gen: &str, image: &str) -> Self {
        self.inverse_images
            .get_or_insert_with(BTreeMap::new)
            .insert(gen.into(), image.into());
        self
    }
}

#[derive(Clone)]
pub struct LinMap {
    owner: Tower,
    kind: MapKind,
    images: Vec<Terms>,
    inverse_images: Option<Vec<Terms>>,
}

impl LinMap {
    pub fn owner(&self) -> &Tower {
        &self.owner
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    /// Generator names with their images, base variables first.
    pub fn images(&self) -> Vec<(String, Element)> {
        self.owner
            .generator_names()
            .into_iter()
            .zip(&self.images)
            .map(|(n, t)| (n, Element::from_terms(&self.owner, t.clone())))
            .collect()
    }

    pub fn image(&self, gen: &str) -> Option<Element> {
        let g = self.owner.data().gen_index(gen)?;
        Some(Element::from_terms(&self.owner, self.images[g].clone()))
    }

    pub fn has_inverse(&self) -> bool {
        self.inverse_images.is_some()
    }

    /// The inverse map, when inverse images were supplied.
    pub fn inverse(&self) -> Option<LinMap> {
        Some(LinMap {
            owner: self.owner.clone(),
            kind: self.kind,
            images: self.inverse_images.clone()?,
            inverse_images: Some(self.images.clone()),
        })
    }

    pub(crate) fn ext(&self) -> Ext<'_> {
        match self.kind {
            MapKind::Derivation => Ext::SigmaDer {
                sigma: Images::Identity,
                delta: &self.images,
            },
            MapKind::Automorphism => Ext::Hom(Images::Given(&self.images)),
            MapKind::AntiAutomorphism => Ext::Anti(Images::Given(&self.images)),
        }
    }

    pub fn apply(&self, a: &Element) -> Result<Element> {
        apply_map(self, a)
    }

    /// Whether the map fixes (automorphisms) or kills (derivations) every
    /// generator.
    pub fn is_trivial(&self) -> bool {
        let d = self.owner.data();
        self.images.iter().enumerate().all(|(g, t)| match self.kind {
            MapKind::Derivation => t.is_empty(),
            _ => *t == d.gen_terms(g),
        })
    }

    pub fn to_spec(&self) -> MapSpec {
        let d = self.owner.data();
        let mut spec = MapSpec::new(self.kind);
        for (g, t) in self.images.iter().enumerate() {
            spec = spec.image(d.gen_name(g), &d.render(t));
        }
        if let Some(inv) = &self.inverse_images {
            for (g, t) in inv.iter().enumerate() {
                spec = spec.inverse_image(d.gen_name(g), &d.render(t));
            }
        }
        spec
    }
}

impl PartialEq for LinMap {
    fn eq(&self, other: &LinMap) -> bool {
        self.owner.same(&other.owner) && self.kind == other.kind && self.images == other.images
    }
}

impl fmt::Display for LinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .images()
            .iter()
            .map(|(n, e)| format!("{n} -> {e}"))
            .collect();
        write!(f, "{}", parts.join(", "))
    }
}

impl fmt::Debug for LinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinMap({}: {self})", self.kind)
    }
}

fn collect_images(owner: &Tower, images: &BTreeMap<String, Element>) -> Result<Vec<Terms>> {
    let d = owner.data();
    for (name, e) in images {
        if d.gen_index(name).is_none() {
            return Err(Error::UnknownSymbol(name.clone()));
        }
        if !e.tower().same(owner) {
            return Err(Error::OwnerMismatch);
        }
    }
    (0..d.ngens())
        .map(|g| {
            images
                .get(d.gen_name(g))
                .map(|e| e.raw().clone())
                .ok_or_else(|| Error::MissingImage(d.gen_name(g).to_string()))
        })
        .collect()
}

fn check_relations(map: &LinMap) -> Result<()> {
    let owner = &map.owner;
    let d = owner.data();
    if map.kind != MapKind::Derivation {
        for g in (0..d.ngens()).filter(|&g| d.gen_invertible(g)) {
            if d.unit_inverse(&map.images[g]).is_none() {
                return Err(Error::ImageNotUnit(format!("`{}`", d.gen_name(g))));
            }
        }
    }
    let ext = map.ext();
    for rel in d.relations(d.n())? {
        let l = d.ext_word(ext, &rel.lhs)?;
        let r = d.ext_apply(ext, &rel.rhs)?;
        if l != r {
            return Err(Error::RelationViolation {
                level: d.gen_name(rel.lhs[0].gen).to_string(),
                relation: format!("{} under the {}", rel.label, map.kind),
                lhs: d.render(&l),
                rhs: d.render(&r),
            });
        }
    }
    Ok(())
}

/// Builds a map from generator images and validates it against every
/// defining relation of the tower.
pub fn make_map(
    owner: &Tower,
    kind: MapKind,
    images: &BTreeMap<String, Element>,
    inverse_images: Option<&BTreeMap<String, Element>>,
) -> Result<LinMap> {
    let imgs = collect_images(owner, images)?;
    let inv = inverse_images.map(|m| collect_images(owner, m)).transpose()?;
    if inv.is_some() && kind == MapKind::Derivation {
        return Err(Error::KindMismatch("derivations have no inverse images".into()));
    }
    let map = LinMap {
        owner: owner.clone(),
        kind,
        images: imgs,
        inverse_images: inv,
    };
    check_relations(&map)?;
    if let Some(back) = map.inverse() {
        check_relations(&back)?;
        let d = owner.data();
        for g in 0..d.ngens() {
            let id = d.gen_terms(g);
            let there = d.ext_apply(map.ext(), &back.images[g])?;
            let again = d.ext_apply(back.ext(), &map.images[g])?;
            if there != id || again != id {
                return Err(Error::InverseMismatch(d.gen_name(g).to_string()));
            }
        }
    }
    Ok(map)
}

/// Parses the images of a spec entry in the owner tower and validates.
pub fn map_from_spec(owner: &Tower, spec: &MapSpec) -> Result<LinMap> {
    let parse = |m: &BTreeMap<String, String>| -> Result<BTreeMap<String, Element>> {
        m.iter()
            .map(|(k, v)| Ok((k.clone(), owner.parse(v)?)))
            .collect()
    };
    let images = parse(&spec.images)?;
    let inverse = spec.inverse_images.as_ref().map(parse).transpose()?;
    make_map(owner, spec.kind, &images, inverse.as_ref())
}

pub fn apply_map(m: &LinMap, a: &Element) -> Result<Element> {
    if !a.tower().same(&m.owner) {
        return Err(Error::OwnerMismatch);
    }
    let t = m.owner.data().ext_apply(m.ext(), a.raw())?;
    Ok(Element::from_terms(&m.owner, t))
}

fn same_owner(a: &LinMap, b: &LinMap) -> Result<()> {
    if a.owner.same(&b.owner) {
        Ok(())
    } else {
        Err(Error::OwnerMismatch)
    }
}

/// `[m1, m2] = m1 m2 - m2 m1`, a derivation.
pub fn bracket(m1: &LinMap, m2: &LinMap) -> Result<LinMap> {
    same_owner(m1, m2)?;
    if m1.kind != MapKind::Derivation || m2.kind != MapKind::Derivation {
        return Err(Error::KindMismatch("bracket needs two derivations".into()));
    }
    let d = m1.owner.data();
    let images = (0..d.ngens())
        .map(|g| {
            let a = d.ext_apply(m1.ext(), &m2.images[g])?;
            let b = d.ext_apply(m2.ext(), &m1.images[g])?;
            Ok(sub_terms(&a, &b))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LinMap {
        owner: m1.owner.clone(),
        kind: MapKind::Derivation,
        images,
        inverse_images: None,
    })
}

/// `m1 ∘ m2` for two automorphisms.
pub fn compose(m1: &LinMap, m2: &LinMap) -> Result<LinMap> {
    same_owner(m1, m2)?;
    if m1.kind != MapKind::Automorphism || m2.kind != MapKind::Automorphism {
        return Err(Error::KindMismatch("compose needs two automorphisms".into()));
    }
    let d = m1.owner.data();
    let images = m2
        .images
        .iter()
        .map(|t| d.ext_apply(m1.ext(), t))
        .collect::<Result<Vec<_>>>()?;
    let inverse_images = match (m1.inverse(), m2.inverse()) {
        (Some(i1), Some(i2)) => Some(
            i1.images
                .iter()
                .map(|t| d.ext_apply(i2.ext(), t))
                .collect::<Result<Vec<_>>>()?,
        ),
        _ => None,
    };
    Ok(LinMap {
        owner: m1.owner.clone(),
        kind: MapKind::Automorphism,
        images,
        inverse_images,
    })
}

/// Outcome of [`commuting_check`]; on failure names the pair of maps (by
/// index) and a generator on which they disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutingVerdict {
    pub commuting: bool,
    pub witness: Option<(usize, usize, String)>,
}

pub fn commuting_check(maps: &[LinMap]) -> Result<CommutingVerdict> {
    let Some(first) = maps.first() else {
        return Ok(CommutingVerdict {
            commuting: true,
            witness: None,
        });
    };
    for m in maps {
        same_owner(first, m)?;
        if m.kind != first.kind || m.kind == MapKind::AntiAutomorphism {
            return Err(Error::KindMismatch(
                "commuting sets are all derivations or all automorphisms".into(),
            ));
        }
    }
    let d = first.owner.data();
    for i in 0..maps.len() {
        for j in i + 1..maps.len() {
            for g in 0..d.ngens() {
                let a = d.ext_apply(maps[i].ext(), &maps[j].images[g])?;
                let b = d.ext_apply(maps[j].ext(), &maps[i].images[g])?;
                if a != b {
                    return Ok(CommutingVerdict {
                        commuting: false,
                        witness: Some((i, j, d.gen_name(g).to_string())),
                    });
                }
            }
        }
    }
    Ok(CommutingVerdict {
        commuting: true,
        witness: None,
    })
}

/// `ad(h): a ↦ h a - a h`.
pub fn inner_derivation(h: &Element) -> Result<LinMap> {
    let owner = h.tower().clone();
    let images = owner
        .generators()
        .iter()
        .map(|g| Ok(h.mul(g)?.sub(&g.mul(h)?)?.raw().clone()))
        .collect::<Result<Vec<_>>>()?;
    Ok(LinMap {
        owner,
        kind: MapKind::Derivation,
        images,
        inverse_images: None,
    })
}

/// `a ↦ u a u^-1` with inverse `a ↦ u^-1 a u`.
pub fn conj_automorphism(u: &Element) -> Result<LinMap> {
    let inv = u.inverse().ok_or_else(|| Error::NotAUnit(u.to_string()))?;
    let owner = u.tower().clone();
    let mut images = Vec::new();
    let mut inverse_images = Vec::new();
    for g in owner.generators() {
        images.push(u.mul(&g)?.mul(&inv)?.raw().clone());
        inverse_images.push(inv.mul(&g)?.mul(u)?.raw().clone());
    }
    Ok(LinMap {
        owner,
        kind: MapKind::Automorphism,
        images,
        inverse_images: Some(inverse_images),
    })
}

/// The value of `m` on `s^-1 a` for a unit `s`, from the values of `m` on
/// `s` and `a`.
pub fn extend_to_unit_fraction(m: &LinMap, s: &Element, a: &Element) -> Result<Element> {
    let s_inv = s.inverse().ok_or_else(|| Error::NotAUnit(s.to_string()))?;
    let ms = apply_map(m, s)?;
    let ma = apply_map(m, a)?;
    match m.kind {
        MapKind::Derivation => {
            // s^-1 m(a) - s^-1 m(s) s^-1 a
            let first = s_inv.mul(&ma)?;
            let second = s_inv.mul(&ms)?.mul(&s_inv)?.mul(a)?;
            first.sub(&second)
        }
        MapKind::Automorphism => {
            let inv = ms.inverse().ok_or_else(|| Error::ImageNotUnit(s.to_string()))?;
            inv.mul(&ma)
        }
        MapKind::AntiAutomorphism => {
            let inv = ms.inverse().ok_or_else(|| Error::ImageNotUnit(s.to_string()))?;
            ma.mul(&inv)
        }
    }
}

#[cfg(test)]
mod tests;
