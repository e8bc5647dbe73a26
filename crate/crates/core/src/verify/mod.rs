//! Seeded randomized verification suites over the builtin catalog.
//!
//! Every check draws from its own ChaCha stream, so a run is reproducible
//! from the seed alone. Failures carry a witness shrunk by greedy term
//! dropping.

pub mod oracle;
pub mod sample;

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::builtins::{self, System};
use crate::eigen::{self, Section, WeightedTower};
use crate::endo::{apply_map, extend_to_unit_fraction, LinMap, MapKind};
use crate::error::{Error, Result};
use crate::tower::{opposite_tower, Element, Mutation, OppositeMap, Tower};
use sample::Shape;

pub const DEFAULT_SEED: u64 = 7;
pub const DEFAULT_SAMPLES: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Tower,
    Endo,
    Eigen,
    Abelian,
    All,
}

impl Suite {
    pub fn name(&self) -> &'static str {
        match self {
            Suite::Tower => "tower",
            Suite::Endo => "endo",
            Suite::Eigen => "eigen",
            Suite::Abelian => "abelian",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Ok(match s {
            "tower" => Suite::Tower,
            "endo" => Suite::Endo,
            "eigen" => Suite::Eigen,
            "abelian" => Suite::Abelian,
            "all" => Suite::All,
            _ => return Err(Error::UnknownName(s.to_string())),
        })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub seed: u64,
    pub samples: usize,
    #[doc(hidden)]
    pub mutation: Mutation,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            seed: DEFAULT_SEED,
            samples: DEFAULT_SAMPLES,
            mutation: Mutation::None,
        }
    }
}

/// One property checked on a batch of cases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub cases: usize,
    pub witness: Option<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            None => write!(f, "PASS {}/{} cases={}", self.suite, self.name, self.cases),
            Some(w) => write!(f, "FAIL {}/{} cases={} witness: {w}", self.suite, self.name, self.cases),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Summary {
    pub checks: Vec<Check>,
}

impl Summary {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn suite_passed(&self, suite: &str) -> bool {
        self.checks.iter().filter(|c| c.suite == suite).all(Check::passed)
    }
}

pub fn run(suite: Suite, opts: &Options) -> Summary {
    let mut out = Summary::default();
    let mut ctx = Ctx { opts, checks: &mut out.checks };
    match suite {
        Suite::Tower => tower_suite(&mut ctx),
        Suite::Endo => endo_suite(&mut ctx),
        Suite::Eigen => eigen_suite(&mut ctx),
        Suite::Abelian => abelian_suite(&mut ctx),
        Suite::All => {
            tower_suite(&mut ctx);
            endo_suite(&mut ctx);
            eigen_suite(&mut ctx);
            abelian_suite(&mut ctx);
        }
    }
    out
}

struct Ctx<'a> {
    opts: &'a Options,
    checks: &'a mut Vec<Check>,
}

/// A failed comparison: both sides rendered.
type Verdict = Result<Option<(String, String)>>;

fn compare(lhs: &Element, rhs: &Element) -> Verdict {
    Ok((lhs != rhs).then(|| (lhs.to_string(), rhs.to_string())))
}

fn fails(p: &dyn Fn(&[Element]) -> Verdict, xs: &[Element]) -> bool {
    !matches!(p(xs), Ok(None))
}

fn fnv(s: &str) -> u64 {
    s.bytes()
        .fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

impl Ctx<'_> {
    fn rng(&self, suite: &str, name: &str) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.opts.seed ^ fnv(suite).rotate_left(17) ^ fnv(name))
    }

    fn record(&mut self, suite: &'static str, name: String, cases: usize, witness: Option<String>) {
        self.checks.push(Check {
            suite,
            name,
            cases,
            witness,
        });
    }

    /// Draws `cases` inputs and checks `prop` on each, shrinking the first
    /// counterexample.
    fn property(
        &mut self,
        suite: &'static str,
        name: String,
        cases: usize,
        draw: &dyn Fn(&mut ChaCha8Rng) -> Vec<Element>,
        prop: &dyn Fn(&[Element]) -> Verdict,
    ) {
        let mut rng = self.rng(suite, &name);
        for _ in 0..cases {
            let xs = draw(&mut rng);
            if fails(prop, &xs) {
                let small = sample::shrink(xs, |t| fails(prop, t));
                let inputs: Vec<String> = small.iter().map(|e| e.to_string()).collect();
                let detail = match prop(&small) {
                    Ok(Some((l, r))) => format!("{l} != {r}"),
                    Ok(None) => "nondeterministic failure".to_string(),
                    Err(e) => e.to_string(),
                };
                let witness = format!("inputs [{}]: {detail}", inputs.join("; "));
                self.record(suite, name, cases, Some(witness));
                return;
            }
        }
        self.record(suite, name, cases, None);
    }

    fn systems(&mut self, suite: &'static str) -> Vec<(String, System)> {
        let mut out = Vec::new();
        for spec in builtins::catalog() {
            let name = spec.name.clone().unwrap_or_default();
            match builtins::instantiate_with(&spec, self.opts.mutation) {
                Ok(s) => out.push((name, s)),
                Err(e) => self.record(suite, format!("instantiate/{name}"), 1, Some(e.to_string())),
            }
        }
        out
    }
}

fn pair(tower: &Tower) -> impl Fn(&mut ChaCha8Rng) -> Vec<Element> + '_ {
    move |rng| {
        let s = Shape::default();
        vec![sample::element(rng, tower, s), sample::element(rng, tower, s)]
    }
}

fn single(tower: &Tower) -> impl Fn(&mut ChaCha8Rng) -> Vec<Element> + '_ {
    move |rng| vec![sample::element(rng, tower, Shape::default())]
}

fn triple(tower: &Tower) -> impl Fn(&mut ChaCha8Rng) -> Vec<Element> + '_ {
    move |rng| {
        let s = Shape {
            max_terms: 3,
            max_degree: 3,
            ..Shape::default()
        };
        (0..3).map(|_| sample::element(rng, tower, s)).collect()
    }
}

/// The part of `a` of degree 0, resp. 1, in level `i`.
fn level_slices(a: &Element, i: usize) -> (Element, Element) {
    let mut low = a.tower().zero();
    let mut one = a.tower().zero();
    for m in a.monomials() {
        let (e, _) = m.terms().next().expect("monomial has a term");
        match e.0[i] {
            0 => low = &low + &m,
            1 => one = &one + &m,
            _ => {}
        }
    }
    (low, one)
}

/// Expected opposite level data `(sigma^-1, -delta sigma^-1)` read off
/// from products `x * sigma^-1(g)` in the source.
fn opposite_level_mismatch(op: &OppositeMap) -> Result<Option<String>> {
    let (src, dst) = (op.source(), op.target());
    let names = src.generator_names();
    let m = src.base().nvars();
    for i in 0..src.n_levels() {
        let x = src.generator(&names[m + i])?;
        for g in &names[..m + i] {
            let (sigma, sigma_inv, _) = src.level_images(i, g).expect("generator below level");
            let pre = sigma_inv.unwrap_or_else(|| sigma.clone());
            let (delta_part, _) = level_slices(&x.mul(&pre)?, i);
            let want_sigma = op.apply(&pre)?;
            let want_delta = -&op.apply(&delta_part)?;
            let (got_sigma, _, got_delta) = dst.level_images(i, g).expect("same shape");
            if got_sigma != want_sigma || got_delta != want_delta {
                return Ok(Some(format!(
                    "level {} at {g}: sigma' = {got_sigma}, delta' = {got_delta}; expected {want_sigma}, {want_delta}",
                    names[m + i]
                )));
            }
        }
    }
    Ok(None)
}

fn tower_suite(ctx: &mut Ctx) {
    const S: &str = "tower";
    let n = ctx.opts.samples;
    for (name, sys) in ctx.systems(S) {
        let t = &sys.tower;
        ctx.property(S, format!("associative/{name}"), n / 4, &triple(t), &|x| {
            compare(&x[0].mul(&x[1])?.mul(&x[2])?, &x[0].mul(&x[1].mul(&x[2])?)?)
        });
        ctx.property(S, format!("distributive/{name}"), n / 4, &triple(t), &|x| {
            compare(&x[0].mul(&x[1].add(&x[2])?)?, &x[0].mul(&x[1])?.add(&x[0].mul(&x[2])?)?)
        });
        let op = match opposite_tower(t) {
            Ok(op) => op,
            Err(e) => {
                ctx.record(S, format!("opposite/{name}"), 1, Some(e.to_string()));
                continue;
            }
        };
        ctx.property(S, format!("opposite_anti/{name}"), n, &pair(t), &|x| {
            let lhs = op.apply(&x[0].mul(&x[1])?)?;
            let rhs = op.apply(&x[1])?.mul(&op.apply(&x[0])?)?;
            compare(&lhs, &rhs)
        });
        let structural = opposite_level_mismatch(&op).unwrap_or_else(|e| Some(e.to_string()));
        ctx.record(S, format!("opposite_levels/{name}"), 1, structural);
        match opposite_tower(op.target()) {
            Ok(back) => {
                ctx.property(S, format!("double_opposite/{name}"), n / 2, &single(t), &|x| {
                    let twice = back.apply(&op.apply(&x[0])?)?;
                    let same = twice.raw() == x[0].raw();
                    Ok((!same).then(|| (twice.to_string(), x[0].to_string())))
                });
            }
            Err(e) => ctx.record(S, format!("double_opposite/{name}"), 1, Some(e.to_string())),
        }
    }
}

fn map_checks(ctx: &mut Ctx, name: &str, sys: &System, mname: &str, map: &LinMap) {
    const S: &str = "endo";
    let n = ctx.opts.samples;
    let t = &sys.tower;
    let label = format!("{name}.{mname}");
    match map.kind() {
        MapKind::AntiAutomorphism => {
            ctx.property(S, format!("anti_multiplicative/{label}"), n, &pair(t), &|x| {
                let lhs = apply_map(map, &x[0].mul(&x[1])?)?;
                let rhs = apply_map(map, &x[1])?.mul(&apply_map(map, &x[0])?)?;
                compare(&lhs, &rhs)
            });
            if let Ok(op) = opposite_tower(t) {
                // a -> op(map(a)) is a homomorphism into the opposite
                ctx.property(S, format!("op_composite/{label}"), n / 2, &pair(t), &|x| {
                    let f = |a: &Element| op.apply(&apply_map(map, a)?);
                    compare(&f(&x[0].mul(&x[1])?)?, &f(&x[0])?.mul(&f(&x[1])?)?)
                });
            }
        }
        MapKind::Automorphism => {
            ctx.property(S, format!("multiplicative/{label}"), n, &pair(t), &|x| {
                let lhs = apply_map(map, &x[0].mul(&x[1])?)?;
                let rhs = apply_map(map, &x[0])?.mul(&apply_map(map, &x[1])?)?;
                compare(&lhs, &rhs)
            });
        }
        MapKind::Derivation => {
            ctx.property(S, format!("leibniz/{label}"), n, &pair(t), &|x| {
                let lhs = apply_map(map, &x[0].mul(&x[1])?)?;
                let rhs = apply_map(map, &x[0])?
                    .mul(&x[1])?
                    .add(&x[0].mul(&apply_map(map, &x[1])?)?)?;
                compare(&lhs, &rhs)
            });
        }
    }
    if let Some(inv) = map.inverse() {
        ctx.property(S, format!("inverse/{label}"), n / 2, &single(t), &|x| {
            compare(&apply_map(&inv, &apply_map(map, &x[0])?)?, &x[0])
        });
        if &inv == map {
            ctx.property(S, format!("involution/{label}"), n / 2, &single(t), &|x| {
                compare(&apply_map(map, &apply_map(map, &x[0])?)?, &x[0])
            });
        }
    }
}

fn fraction_check(ctx: &mut Ctx, name: &str, sys: &System, mname: &str, map: &LinMap) {
    const S: &str = "endo";
    let t = &sys.tower;
    let draw = |rng: &mut ChaCha8Rng| {
        let s = Shape::default();
        vec![sample::unit(rng, t, s), sample::element(rng, t, s)]
    };
    ctx.property(S, format!("unit_fraction/{name}.{mname}"), ctx.opts.samples / 2, &draw, &|x| {
        let (s, a) = (&x[0], &x[1]);
        let b = s.inverse().ok_or_else(|| Error::NotAUnit(s.to_string()))?.mul(a)?;
        let mb = extend_to_unit_fraction(map, s, a)?;
        let ms = apply_map(map, s)?;
        let rebuilt = match map.kind() {
            MapKind::Derivation => ms.mul(&b)?.add(&s.mul(&mb)?)?,
            _ => ms.mul(&mb)?,
        };
        if let Some(v) = compare(&rebuilt, &apply_map(map, a)?)? {
            return Ok(Some(v));
        }
        compare(&mb, &apply_map(map, &b)?)
    });
}

/// The endo checks for a single map of `sys`, labelled `name.mname`.
pub fn check_map(name: &str, sys: &System, mname: &str, opts: &Options) -> Result<Summary> {
    let map = sys.map(mname)?;
    let mut out = Summary::default();
    let mut ctx = Ctx { opts, checks: &mut out.checks };
    map_checks(&mut ctx, name, sys, mname, map);
    Ok(out)
}

fn endo_suite(ctx: &mut Ctx) {
    for (name, sys) in ctx.systems("endo") {
        for (mname, map) in &sys.maps {
            map_checks(ctx, &name, &sys, mname, map);
        }
        for kind in [MapKind::Derivation, MapKind::Automorphism] {
            if let Some((mname, map)) = sys.maps.iter().find(|(_, m)| m.kind() == kind) {
                fraction_check(ctx, &name, &sys, mname, map);
            }
        }
    }
}

/// Weighted configurations exercised by the eigen suite.
pub const WEIGHTED: &[(&str, &[&str])] = &[
    ("A1", &["ad_xd"]),
    ("A2", &["ad_x1d1", "ad_x2d2"]),
    ("LW1", &["ad_xd"]),
    ("QP", &["euler_x", "euler_y"]),
    ("T2", &["conj_x", "conj_y"]),
    ("T2", &["euler_x", "euler_y"]),
    ("S", &["euler_s"]),
    ("usolv2", &["ad_h"]),
    ("L", &["neg_x"]),
    ("L", &["euler"]),
    ("QW", &["euler"]),
];

pub fn weighted(sys: &System, maps: &[&str]) -> Result<WeightedTower> {
    let ms = maps
        .iter()
        .map(|m| sys.map(m).cloned())
        .collect::<Result<Vec<_>>>()?;
    eigen::weigh_generators(&sys.tower, &ms)
}

fn homogeneous<R: Rng>(rng: &mut R, wt: &WeightedTower) -> Element {
    let t = wt.tower();
    let s = Shape::default();
    let first = sample::random_monomial(rng, t, s);
    let w = eigen::weight_of(wt, &first).expect("monomials are homogeneous");
    let mut acc = first;
    for _ in 0..3 {
        let m = sample::random_monomial(rng, t, s);
        if eigen::weight_of(wt, &m).ok().as_ref() == Some(&w) {
            acc = &acc + &m;
        }
    }
    if acc.is_zero() {
        t.one()
    } else {
        acc
    }
}

fn eigen_suite(ctx: &mut Ctx) {
    const S: &str = "eigen";
    let n = ctx.opts.samples;
    for (name, maps) in WEIGHTED {
        let label = format!("{name}[{}]", maps.join(","));
        let wt = match builtins::builtin(name).and_then(|s| weighted(&s, maps)) {
            Ok(wt) => wt,
            Err(e) => {
                ctx.record(S, format!("weigh/{label}"), 1, Some(e.to_string()));
                continue;
            }
        };
        let a = wt.ambient();
        let draw = |rng: &mut ChaCha8Rng| vec![homogeneous(rng, &wt), homogeneous(rng, &wt)];
        ctx.property(S, format!("grading/{label}"), n, &draw, &|x| {
            let lw = eigen::weight_of(&wt, &x[0])?;
            let mw = eigen::weight_of(&wt, &x[1])?;
            let got = eigen::weight_of(&wt, &x[0].mul(&x[1])?)?;
            let want = a.combine(&lw, &mw);
            Ok((got != want).then(|| (got.to_string(), want.to_string())))
        });
        let t = wt.tower().clone();
        let units = |rng: &mut ChaCha8Rng| vec![sample::unit(rng, &t, Shape::default())];
        ctx.property(S, format!("unit_inverse/{label}"), n / 2, &units, &|x| {
            let inv = x[0].inverse().ok_or_else(|| Error::NotAUnit(x[0].to_string()))?;
            let got = eigen::weight_of(&wt, &inv)?;
            let want = a.inverse(&eigen::weight_of(&wt, &x[0])?);
            Ok((got != want).then(|| (got.to_string(), want.to_string())))
        });
        ctx.property(S, format!("components/{label}"), n, &single(&t), &|x| {
            let g = eigen::homogeneous_components(&wt, &x[0])?;
            for c in g.components.values() {
                eigen::weight_of(&wt, c)?;
            }
            compare(&g.sum(&t), &x[0])
        });
        cocycle_checks(ctx, &label, &wt);
    }
}

/// Section, cocycle and presentation coherence where the section is made
/// of units.
fn cocycle_checks(ctx: &mut Ctx, label: &str, wt: &WeightedTower) {
    const S: &str = "eigen";
    let Ok(section) = Section::new(wt) else {
        return;
    };
    let units_only = wt
        .generator_weights()
        .iter()
        .all(|(g, _)| wt.tower().generator_invertible(g) == Some(true));
    if !units_only {
        return;
    }
    let a = wt.ambient();
    let ball = section.ball(3);
    let mut cases = 0;
    let mut witness = None;
    'pairs: for l in &ball {
        for m in &ball {
            cases += 1;
            let check = || -> Result<Option<String>> {
                let c = eigen::cocycle(&section, l, m)?;
                let lhs = section.get(l)?.mul(&section.get(m)?)?;
                let rhs = c.mul(&section.get(&a.combine(l, m))?)?;
                let w0 = a.is_identity(&eigen::weight_of(wt, &c)?);
                Ok((lhs != rhs || !w0).then(|| format!("({l}, {m}): {lhs} != {rhs}")))
            };
            witness = check().unwrap_or_else(|e| Some(e.to_string()));
            if witness.is_some() {
                break 'pairs;
            }
        }
    }
    ctx.record(S, format!("cocycle/{label}"), cases, witness);

    let small = section.ball(2);
    let mut cases = 0;
    let mut witness = None;
    'triples: for l in &small {
        for m in &small {
            for n in &small {
                cases += 1;
                match eigen::cocycle_coherent(&section, l, m, n) {
                    Ok(true) => {}
                    Ok(false) => witness = Some(format!("({l}, {m}, {n})")),
                    Err(e) => witness = Some(e.to_string()),
                }
                if witness.is_some() {
                    break 'triples;
                }
            }
        }
    }
    ctx.record(S, format!("cocycle_associative/{label}"), cases, witness);

    let witness = match eigen::presentation(&section, None) {
        Err(e) => Some(e.to_string()),
        Ok(p) => {
            let mut w = None;
            for (i, j, lam) in &p.commutation {
                let (ui, uj) = (&p.representatives[*i], &p.representatives[*j]);
                if &(ui * uj) != &(&(lam * uj) * ui) {
                    w = Some(format!("u{} u{} != {lam} u{} u{}", i + 1, j + 1, j + 1, i + 1));
                }
            }
            for (s, c) in p.sigma_actions.iter().zip(p.constants.iter().cycle()) {
                let img = apply_map(s, c).and_then(|v| eigen::weight_of(wt, &v));
                if !matches!(img, Ok(ref v) if a.is_identity(v)) {
                    w = Some(format!("conjugate of {c} leaves weight 0"));
                }
            }
            w
        }
    };
    ctx.record(S, format!("presentation/{label}"), 1, witness);
}

fn abelian_suite(ctx: &mut Ctx) {
    const S: &str = "abelian";
    let mut rng = ctx.rng(S, "snf");
    let cases = 50.max(ctx.opts.samples / 4);
    let mut witness = None;
    let mut oracle_cases = 0;
    for _ in 0..cases {
        let m = oracle::random_matrix(&mut rng, 4, 3, 5);
        if let Some(w) = oracle::snf_mismatch(&m, &mut oracle_cases) {
            witness = Some(w);
            break;
        }
    }
    ctx.record(S, "smith_form".into(), cases, witness);
    ctx.record(S, "coset_oracle_coverage".into(), oracle_cases, (oracle_cases == 0).then(|| "no finite quotients drawn".into()));
    let mut rng = ctx.rng(S, "weights");
    let mut witness = None;
    for _ in 0..cases {
        if let Some(w) = oracle::encoding_mismatch(&mut rng) {
            witness = Some(w);
            break;
        }
    }
    ctx.record(S, "multiplicative_encoding".into(), cases, witness);
}

#[cfg(test)]
mod tests;
