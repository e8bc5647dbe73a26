//! End-to-end acceptance run: one PASS/FAIL line per criterion.

use std::time::Instant;

use num_bigint::BigInt;
use oreforge_core::abelian::Weight;
use oreforge_core::builtins::{self, System};
use oreforge_core::eigen::{self, Section, WeightedTower};
use oreforge_core::endo::LinMap;
use oreforge_core::tower::{tensor_towers, Element, Mutation, Tower};
use oreforge_core::verify::sample::{self, Shape};
use oreforge_core::verify::{self, oracle, Check, Options, Suite, Summary};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn opts(samples: usize, mutation: Mutation) -> Options {
    Options { samples, mutation, ..Options::default() }
}

fn sys(name: &str) -> Result<System, String> {
    builtins::builtin(name).map_err(|e| format!("{name}: {e}"))
}

fn el(t: &Tower, s: &str) -> Result<Element, String> {
    t.parse(s).map_err(|e| format!("{s}: {e}"))
}

fn weighted(name: &str, maps: &[&str]) -> Result<WeightedTower, String> {
    let s = sys(name)?;
    let ms = maps
        .iter()
        .map(|m| s.map(m).cloned().map_err(|e| e.to_string()))
        .collect::<Result<Vec<LinMap>, String>>()?;
    eigen::weigh_generators(&s.tower, &ms).map_err(|e| e.to_string())
}

/// The named check must exist, pass, and have run on `cases` inputs.
fn require(s: &Summary, name: &str, cases: usize) -> Result<(), String> {
    let c: &Check = s
        .checks
        .iter()
        .find(|c| c.name == name)
        .ok_or_else(|| format!("missing check {name}"))?;
    ensure(c.passed(), || c.to_string())?;
    ensure(c.cases == cases, || format!("{name}: {} cases, expected {cases}", c.cases))
}

fn all_pass(s: &Summary, prefix: &str) -> Result<usize, String> {
    let relevant: Vec<&Check> = s.checks.iter().filter(|c| c.name.starts_with(prefix)).collect();
    if let Some(bad) = relevant.iter().find(|c| !c.passed()) {
        return Err(bad.to_string());
    }
    ensure(!relevant.is_empty(), || format!("no {prefix} checks"))?;
    Ok(relevant.len())
}

fn opposite_functor() -> Outcome {
    let s = verify::run(Suite::Tower, &opts(200, Mutation::None));
    for name in builtins::names() {
        require(&s, &format!("opposite_anti/{name}"), 200)?;
        require(&s, &format!("opposite_levels/{name}"), 1)?;
        require(&s, &format!("double_opposite/{name}"), 100)?;
    }
    all_pass(&s, "")?;
    Ok(format!("{} towers, {} checks", builtins::names().len(), s.checks.len()))
}

fn weyl_transpose() -> Outcome {
    let mut n = 0;
    for (tower, map, images) in [
        ("A1", "weyl_transpose", vec![("x", "x"), ("d", "-d")]),
        ("A2", "weyl_transpose", vec![("x1", "x1"), ("x2", "x2"), ("d1", "-d1"), ("d2", "-d2")]),
        ("usolv2", "neg", vec![("e", "-e"), ("h", "-h")]),
    ] {
        let s = sys(tower)?;
        let m = s.map(map).map_err(|e| e.to_string())?;
        for (g, img) in images {
            ensure(m.image(g) == Some(el(&s.tower, img)?), || format!("{tower}.{map}: image of {g}"))?;
        }
        let sum = verify::check_map(tower, &s, map, &opts(200, Mutation::None)).map_err(|e| e.to_string())?;
        require(&sum, &format!("anti_multiplicative/{tower}.{map}"), 200)?;
        require(&sum, &format!("involution/{tower}.{map}"), 100)?;
        all_pass(&sum, "")?;
        n += sum.checks.len();
    }
    Ok(format!("{n} checks over A1, A2, usolv2"))
}

fn weyl_oracle() -> Outcome {
    let t = sys("A1")?.tower;
    let mut rng = ChaCha8Rng::seed_from_u64(verify::DEFAULT_SEED);
    let shape = Shape { max_degree: 3, ..Shape::default() };
    for _ in 0..100 {
        let p = sample::element(&mut rng, &t, shape);
        let q = sample::element(&mut rng, &t, shape);
        ensure(p.total_degree() <= 3 && q.total_degree() <= 3, || "sample degree".into())?;
        if let Some(w) = oracle::weyl_composition_mismatch(&t, &p, &q, 8) {
            return Err(w);
        }
    }
    Ok("100 pairs on x^0..x^8".into())
}

fn ev_decomposition() -> Outcome {
    let cases: [(&str, &[&str], &str, usize, i64); 3] = [
        ("T2", &["conj_x", "conj_y"], include_str!("golden/ev_T2.txt"), 2, 1),
        ("L", &["neg_x"], include_str!("golden/ev_L.txt"), 0, 2),
        ("LW1", &["ad_xd"], include_str!("golden/ev_LW1.txt"), 1, 1),
    ];
    for (tower, maps, golden, rank, torsion) in cases {
        let wt = weighted(tower, maps)?;
        let ev = eigen::ev_structure(&wt).map_err(|e| e.to_string())?;
        ensure(ev.group.rank == rank, || format!("{tower}: rank {}", ev.group.rank))?;
        ensure(ev.group.torsion_order() == BigInt::from(torsion), || format!("{tower}: torsion"))?;
        let lines: String = ev.report(&wt).iter().map(|(k, v)| format!("{k}={v}\n")).collect();
        ensure(lines == golden, || format!("{tower} report differs from golden:\n{lines}"))?;
    }
    let t2 = weighted("T2", &["conj_x", "conj_y"])?;
    let expect = vec![
        ("x".to_string(), Weight::from_ratios(&[(1, 1), (2, 1)])),
        ("y".to_string(), Weight::from_ratios(&[(1, 2), (1, 1)])),
    ];
    ensure(t2.generator_weights() == expect, || "T2 generator weights".into())?;
    Ok("T2 rank 2, L torsion Z/2, LW1 rank 1".into())
}

fn torsion_block() -> Outcome {
    let l = weighted("L", &["neg_x"])?;
    let t = l.tower().clone();
    let section = Section::new(&l).map_err(|e| e.to_string())?;
    let b = eigen::torsion_block(&section, Some(&el(&t, "1 + x")?)).map_err(|e| e.to_string())?;
    let basis: Vec<Element> = b.basis.iter().map(|(_, e)| e.clone()).collect();
    ensure(basis == vec![t.one(), el(&t, "x")?], || format!("basis {basis:?}"))?;
    ensure(b.dimension == 2, || format!("dimension {}", b.dimension))?;
    ensure(b.constants == vec![el(&t, "x^2")?, el(&t, "x^-2")?], || "constants".into())?;
    let d = b.division.ok_or("no division check")?;
    ensure(d.determinant == el(&t, "1 - x^2")?, || format!("determinant {}", d.determinant))?;
    ensure(d.invertible, || "not invertible".into())?;
    Ok("basis {1, x}, det 1 - x^2".into())
}

fn cocycles() -> Outcome {
    let wt = weighted("T2", &["conj_x", "conj_y"])?;
    let amb = wt.ambient();
    let s = Section::new(&wt).map_err(|e| e.to_string())?;
    let ball = s.ball(3);
    let u = |w: &Weight| s.get(w).map_err(|e| e.to_string());
    for l in &ball {
        for m in &ball {
            let c = eigen::cocycle(&s, l, m).map_err(|e| e.to_string())?;
            let lhs = u(l)?.mul(&u(m)?).map_err(|e| e.to_string())?;
            let rhs = c.mul(&u(&amb.combine(l, m))?).map_err(|e| e.to_string())?;
            ensure(lhs == rhs, || format!("u_{l} u_{m} != ({l},{m}) u_(l+m)"))?;
            let w = eigen::weight_of(&wt, &c).map_err(|e| e.to_string())?;
            ensure(amb.is_identity(&w), || format!("({l},{m}) has weight {w}"))?;
        }
    }
    let mut triples = 0;
    for l in &ball {
        for m in &ball {
            for n in &ball {
                let ok = eigen::cocycle_coherent(&s, l, m, n).map_err(|e| e.to_string())?;
                ensure(ok, || format!("coherence fails at {l}, {m}, {n}"))?;
                triples += 1;
            }
        }
    }
    let p = eigen::presentation(&s, None).map_err(|e| e.to_string())?;
    let t = wt.tower();
    let (i, j, lam) = p.commutation.first().cloned().ok_or("no commutation data")?;
    ensure((i, j) == (1, 0) && lam == el(t, "2")?, || format!("lambda_{}{} = {lam}", i + 1, j + 1))?;
    let (u1, u2) = (&p.representatives[0], &p.representatives[1]);
    let lhs = u2.mul(u1).map_err(|e| e.to_string())?;
    let rhs = lam.mul(&u1.mul(u2).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    ensure(lhs == rhs, || "u2 u1 != lambda21 u1 u2".into())?;
    Ok(format!("{} weights, {triples} triples, lambda21 = 2", ball.len()))
}

fn grading() -> Outcome {
    let s = verify::run(Suite::Eigen, &opts(200, Mutation::None));
    for (name, maps) in verify::WEIGHTED {
        let label = format!("{name}[{}]", maps.join(","));
        require(&s, &format!("grading/{label}"), 200)?;
        require(&s, &format!("unit_inverse/{label}"), 100)?;
    }
    all_pass(&s, "")?;
    Ok(format!("{} weighted configurations", verify::WEIGHTED.len()))
}

fn snf_oracle() -> Outcome {
    let s = verify::run(Suite::Abelian, &opts(200, Mutation::None));
    require(&s, "smith_form", 50)?;
    let cov = s.checks.iter().find(|c| c.name == "coset_oracle_coverage").ok_or("no coverage")?;
    ensure(cov.passed(), || cov.to_string())?;
    Ok(format!("50 matrices, {} with finite quotient", cov.cases))
}

fn fraction_extension() -> Outcome {
    let s = verify::run(Suite::Endo, &opts(200, Mutation::None));
    let n = all_pass(&s, "unit_fraction/")?;
    for c in s.checks.iter().filter(|c| c.name.starts_with("unit_fraction/")) {
        ensure(c.cases == 100, || format!("{}: {} cases", c.name, c.cases))?;
    }
    for name in builtins::names() {
        let sy = sys(&name)?;
        for kind in [oreforge_core::endo::MapKind::Derivation, oreforge_core::endo::MapKind::Automorphism] {
            if let Some((m, _)) = sy.maps.iter().find(|(_, m)| m.kind() == kind) {
                ensure(
                    s.checks.iter().any(|c| c.name == format!("unit_fraction/{name}.{m}")),
                    || format!("no fraction check for {name}.{m}"),
                )?;
            }
        }
    }
    all_pass(&s, "")?;
    Ok(format!("{n} map/tower pairs"))
}

fn tensor() -> Outcome {
    let a = sys("A1")?.tower;
    let tp = tensor_towers(&a, &a).map_err(|e| e.to_string())?;
    let t = tp.tower();
    let left: Vec<Element> = a.generators().iter().map(|g| tp.embed_left(g)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    let right: Vec<Element> = a.generators().iter().map(|g| tp.embed_right(g)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    let comm = |p: &Element, q: &Element| -> Result<Element, String> {
        p.mul(q).and_then(|pq| q.mul(p).and_then(|qp| pq.sub(&qp))).map_err(|e| e.to_string())
    };
    for p in &left {
        for q in &right {
            ensure(comm(p, q)?.is_zero(), || format!("[{p}, {q}] != 0"))?;
        }
    }
    for (emb, gens) in [(0, &left), (1, &right)] {
        let embed = |e: &Element| if emb == 0 { tp.embed_left(e) } else { tp.embed_right(e) };
        for (g, eg) in a.generators().iter().zip(gens.iter()) {
            for (h, eh) in a.generators().iter().zip(gens.iter()) {
                let lhs = embed(&g.mul(h).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
                ensure(lhs == eg.mul(eh).map_err(|e| e.to_string())?, || format!("embedding of {g}*{h}"))?;
            }
        }
        ensure(comm(&gens[1], &gens[0])? == t.one(), || "[d, x] != 1 after embedding".into())?;
    }
    Ok(format!("4 cross commutators vanish in {}", t.describe()))
}

fn mutation_sensitivity() -> Outcome {
    let mut notes = Vec::new();
    for m in [Mutation::FlipOppositeDeltaSign, Mutation::DropLeibnizTwist] {
        for (suite, kinds) in [
            (Suite::Tower, &["opposite_anti/", "double_opposite/"][..]),
            (Suite::Endo, &["anti_multiplicative/", "op_composite/"][..]),
        ] {
            let s = verify::run(suite, &opts(40, m));
            let f = s
                .failures()
                .find(|c| kinds.iter().any(|k| c.name.starts_with(k)))
                .ok_or_else(|| format!("{m:?}: {} suite still passes", suite.name()))?;
            ensure(f.witness.as_ref().is_some_and(|w| !w.is_empty()), || "empty witness".into())?;
            notes.push(format!("{m:?}/{}: {}", suite.name(), f.name));
        }
    }
    Ok(notes.join("; "))
}

fn main() {
    let start = Instant::now();
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("opposite functor", opposite_functor),
        ("weyl transpose and g -> -g", weyl_transpose),
        ("weyl multiplication oracle", weyl_oracle),
        ("ev decomposition", ev_decomposition),
        ("torsion block", torsion_block),
        ("cocycle and presentation", cocycles),
        ("grading", grading),
        ("smith form oracle", snf_oracle),
        ("fraction extension", fraction_extension),
        ("tensor product", tensor),
        ("mutation sensitivity", mutation_sensitivity),
    ];
    let results: Vec<(Outcome, f64)> = std::thread::scope(|sc| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|(_, f)| {
                sc.spawn(move || {
                    let t = Instant::now();
                    let r = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
                    (r, t.elapsed().as_secs_f64())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut failed = 0;
    for (i, ((name, _), (r, secs))) in criteria.iter().zip(results).enumerate() {
        match r {
            Ok(note) => println!("PASS {:>2} {name} ({secs:.1}s): {note}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.1}s): {why}", i + 1);
            }
        }
    }
    let total = start.elapsed().as_secs_f64();
    println!("{} of 11 criteria passed in {total:.1}s", 11 - failed);
    if failed > 0 || total > 120.0 {
        std::process::exit(1);
    }
}
