use std::collections::HashSet;

use super::engine::add_term;
use super::{Element, Level, Terms, Tower, TowerData};
use crate::error::{Error, Result};
use crate::exact::{BaseAlgebra, BasePoly, Coeff, Exponents, Variable};

/// `A ⊗ B` as one tower: base variables of `A` then `B`, levels of `A`
/// then `B`, each map acting trivially on the other factor.
#[derive(Clone, Debug)]
pub struct TensorProduct {
    tower: Tower,
    left: Tower,
    right: Tower,
}

#[derive(Clone, Copy)]
struct Place {
    base_off: usize,
    gen_off: usize,
    m: usize,
    n: usize,
}

fn reindex(t: &Terms, p: Place, shape: &TowerData) -> Terms {
    let (m, n) = (shape.m(), shape.n());
    let mut out = Terms::new();
    for (e, c) in t {
        let mut g = Exponents::zero(n);
        g.0[p.gen_off..p.gen_off + e.len()].copy_from_slice(&e.0);
        let Coeff::Poly(poly) = c else {
            unreachable!("tensor factors have polynomial bases")
        };
        let terms = poly.terms().iter().map(|(b, q)| {
            let mut full = Exponents::zero(m);
            full.0[p.base_off..p.base_off + b.len()].copy_from_slice(&b.0);
            (full, q.clone())
        });
        add_term(&mut out, g, Coeff::Poly(BasePoly::from_terms(m, terms)));
    }
    debug_assert!(p.m <= m && p.n <= n);
    out
}

fn fresh(name: &str, used: &mut HashSet<String>) -> String {
    let mut s = name.to_string();
    while used.contains(&s) {
        s.push('\'');
    }
    used.insert(s.clone());
    s
}

pub fn tensor_towers(a: &Tower, b: &Tower) -> Result<TensorProduct> {
    let (da, db) = (a.data(), b.data());
    let vars = |t: &TowerData| -> Result<Vec<Variable>> {
        match &t.base {
            BaseAlgebra::Polynomial(v) => Ok(v.clone()),
            other => Err(Error::UnsupportedBase(other.describe())),
        }
    };
    let (va, vb) = (vars(da)?, vars(db)?);
    let mut used: HashSet<String> = da.gen_names().into_iter().collect();
    let mut base_vars = va.clone();
    for v in &vb {
        base_vars.push(Variable::new(fresh(&v.name, &mut used), v.laurent));
    }
    let mut names: Vec<(String, bool)> = da.levels.iter().map(|l| (l.name.clone(), l.invertible)).collect();
    for l in &db.levels {
        names.push((fresh(&l.name, &mut used), l.invertible));
    }
    let base = BaseAlgebra::polynomial(base_vars);
    let shape = TowerData::partial(base.clone(), Vec::new(), &names);
    let (ma, mb, na) = (da.m(), db.m(), da.n());
    let pa = Place { base_off: 0, gen_off: 0, m: ma, n: na };
    let pb = Place { base_off: ma, gen_off: na, m: mb, n: db.n() };

    // Global generator of the product for a generator of a factor.
    let global_a = |g: usize| if g < ma { g } else { ma + mb + (g - ma) };
    let global_b = |g: usize| if g < mb { ma + g } else { ma + mb + na + (g - mb) };

    let mut levels = Vec::new();
    let mut lift = |src: &TowerData, lv: &Level, p: Place, global: &dyn Fn(usize) -> usize, below: usize| {
        let mut sigma: Vec<Terms> = (0..below).map(|g| shape.gen_terms(g)).collect();
        let mut delta: Vec<Terms> = vec![Terms::new(); below];
        let mut inv = lv.sigma_inverse.as_ref().map(|_| sigma.clone());
        for g in 0..lv.sigma.images.len() {
            let k = global(g);
            sigma[k] = reindex(&lv.sigma.images[g], p, &shape);
            delta[k] = reindex(&lv.delta.images[g], p, &shape);
            if let (Some(dst), Some(s)) = (inv.as_mut(), lv.sigma_inverse.as_ref()) {
                dst[k] = reindex(&s.images[g], p, &shape);
            }
        }
        debug_assert_eq!(src.m(), p.m);
        levels.push(Level::new(&shape, String::new(), lv.invertible, sigma, inv, delta));
    };
    for (i, lv) in da.levels.iter().enumerate() {
        lift(da, lv, pa, &global_a, ma + mb + i);
    }
    for (i, lv) in db.levels.iter().enumerate() {
        lift(db, lv, pb, &global_b, ma + mb + na + i);
    }
    for (lv, (name, _)) in levels.iter_mut().zip(&names) {
        lv.name = name.clone();
    }
    let mut data = TowerData::new(base, levels);
    data.name = match (da.name.as_ref(), db.name.as_ref()) {
        (Some(x), Some(y)) => Some(format!("{x}_{y}")),
        _ => None,
    };
    Ok(TensorProduct {
        tower: Tower::from_data(data)?,
        left: a.clone(),
        right: b.clone(),
    })
}

impl TensorProduct {
    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    fn place(&self, left: bool) -> Place {
        let (da, db) = (self.left.data(), self.right.data());
        if left {
            Place { base_off: 0, gen_off: 0, m: da.m(), n: da.n() }
        } else {
            Place { base_off: da.m(), gen_off: da.n(), m: db.m(), n: db.n() }
        }
    }

    pub fn embed_left(&self, a: &Element) -> Result<Element> {
        if !a.tower().same(&self.left) {
            return Err(Error::OwnerMismatch);
        }
        let t = reindex(a.raw(), self.place(true), self.tower.data());
        Ok(Element::from_terms(&self.tower, t))
    }

    pub fn embed_right(&self, b: &Element) -> Result<Element> {
        if !b.tower().same(&self.right) {
            return Err(Error::OwnerMismatch);
        }
        let t = reindex(b.raw(), self.place(false), self.tower.data());
        Ok(Element::from_terms(&self.tower, t))
    }
}
