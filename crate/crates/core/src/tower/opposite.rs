use std::sync::Arc;

use super::engine::{add_into, neg_terms};
use super::{Element, Level, Mutation, Terms, Tower, TowerData};
use crate::error::{Error, Result};

/// The opposite tower with level data `(sigma^-1, -delta sigma^-1)` and the
/// anti-isomorphism onto it.
#[derive(Clone, Debug)]
pub struct OppositeMap {
    source: Tower,
    target: Tower,
}

/// `c x_1^e_1 ... x_n^e_n` goes to the target product `x_n^e_n ... x_1^e_1 c`.
fn op_terms(target: &TowerData, t: &Terms) -> Result<Terms> {
    let mut acc = Terms::new();
    for (e, c) in t {
        let mut r = target.const_terms(c.clone());
        for j in 0..target.n() {
            if e.0[j] != 0 {
                r = target.lmul_pow(j, e.0[j], &r)?;
            }
        }
        add_into(&mut acc, r);
    }
    Ok(acc)
}

pub fn opposite_tower(a: &Tower) -> Result<OppositeMap> {
    let src = a.data();
    let m = src.m();
    let names: Vec<(String, bool)> = src
        .levels
        .iter()
        .map(|l| (l.name.clone(), l.invertible))
        .collect();
    let mut defined: Vec<Level> = Vec::new();
    for (i, lv) in src.levels.iter().enumerate() {
        if !lv.sigma_identity && lv.sigma_inverse.is_none() {
            return Err(Error::MissingInverse(lv.name.clone()));
        }
        let mut partial = TowerData::partial(src.base.clone(), defined.clone(), &names[i..]);
        partial.mutation = src.mutation;
        let below = m + i;
        let sinv: Vec<Terms> = (0..below)
            .map(|g| match &lv.sigma_inverse {
                Some(inv) if !lv.sigma_identity => inv.images[g].clone(),
                _ => src.gen_terms(g),
            })
            .collect();
        let sigma = sinv
            .iter()
            .map(|t| op_terms(&partial, t))
            .collect::<Result<Vec<_>>>()?;
        let sigma_inverse = lv
            .sigma
            .images
            .iter()
            .map(|t| op_terms(&partial, t))
            .collect::<Result<Vec<_>>>()?;
        let delta = sinv
            .iter()
            .map(|t| {
                let d = src.ext_apply(lv.sder(), t)?;
                let o = op_terms(&partial, &d)?;
                Ok(if src.mutation == Mutation::FlipOppositeDeltaSign {
                    o
                } else {
                    neg_terms(&o)
                })
            })
            .collect::<Result<Vec<_>>>()?;
        defined.push(Level::new(
            &partial,
            lv.name.clone(),
            lv.invertible,
            sigma,
            Some(sigma_inverse),
            delta,
        ));
    }
    let mut data = TowerData::new(src.base.clone(), defined);
    data.mutation = src.mutation;
    data.noetherian_assumed = src.noetherian_assumed;
    data.name = src.name.as_ref().map(|n| format!("{n}_op"));
    let target = if src.mutation == Mutation::None {
        Tower::from_data(data)?
    } else {
        Tower(Arc::new(data))
    };
    Ok(OppositeMap {
        source: a.clone(),
        target,
    })
}

impl OppositeMap {
    pub fn source(&self) -> &Tower {
        &self.source
    }

    pub fn target(&self) -> &Tower {
        &self.target
    }

    pub fn apply(&self, a: &Element) -> Result<Element> {
        if !a.tower().same(&self.source) {
            return Err(Error::OwnerMismatch);
        }
        Ok(Element::from_terms(&self.target, op_terms(self.target.data(), a.raw())?))
    }
}
