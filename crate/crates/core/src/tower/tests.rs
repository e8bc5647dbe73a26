use super::*;
use crate::builtins;
use crate::exact::Variable;

fn tower(name: &str) -> Tower {
    builtins::builtin(name).unwrap().tower
}

fn el(t: &Tower, s: &str) -> Element {
    t.parse(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[test]
fn weyl_commutation() {
    let a = tower("A1");
    assert_eq!((&el(&a, "d") * &el(&a, "x")).to_string(), "x*d + 1");
    assert_eq!((&el(&a, "d") * &el(&a, "x^2")).to_string(), "x^2*d + 2*x");
    let p = el(&a, "3*x^2*d + 1/2");
    assert_eq!(&a.one() * &p, p);
}

#[test]
fn module_operations() {
    let a = tower("A1");
    let s = &el(&a, "x*d + 1") + &el(&a, "x*d - 1");
    assert_eq!(s.to_string(), "2*x*d");
    let p = el(&a, "x^2 - d");
    assert!((&p + &(-&p)).is_zero());
    assert_eq!(el(&a, "2*x").scale(&q(1, 2)), el(&a, "x"));
}

#[test]
fn quantum_torus_products_and_units() {
    let t = tower("T2");
    assert_eq!((&el(&t, "y") * &el(&t, "x")).to_string(), "2*x*y");
    let x = el(&t, "x");
    assert_eq!(t.is_unit(&x).unwrap().to_string(), "x^-1");
    let u = el(&t, "2*x*y");
    let inv = t.is_unit(&u).unwrap();
    assert!((&u * &inv).is_one() && (&inv * &u).is_one());
    assert_eq!(inv, el(&t, "1/2*y^-1*x^-1"));
    assert_eq!(t.conjugate(&x, &el(&t, "y")).unwrap().to_string(), "1/2*y");
    assert_eq!(t.conjugate(&el(&t, "y"), &x).unwrap().to_string(), "2*x");
    assert!(t.conjugate(&x, &t.one()).unwrap().is_one());
}

#[test]
fn non_units() {
    let a = tower("A1");
    assert!(a.is_unit(&el(&a, "d")).is_none());
    assert!(a.is_unit(&el(&a, "x")).is_none());
    assert!(a.is_unit(&el(&a, "x + 1")).is_none());
    assert_eq!(a.conjugate(&el(&a, "d"), &a.one()), Err(Error::NotAUnit("d".into())));
}

#[test]
fn owner_mismatch() {
    let a = tower("A1");
    let b = tower("A1");
    assert_eq!(a.one().mul(&b.one()), Err(Error::OwnerMismatch));
}

#[test]
fn quantum_plane_validates() {
    let spec = TowerSpec::new("QP", BaseAlgebra::polynomial([Variable::new("x", false)]))
        .level(LevelSpec::new("y").sigma("x", "2*x"));
    let t = validate_tower(&spec).unwrap();
    assert_eq!((&el(&t, "y") * &el(&t, "x")).to_string(), "2*x*y");
}

#[test]
fn invertible_level_needs_inverse() {
    let spec = TowerSpec::new("bad", BaseAlgebra::polynomial([Variable::new("x", false)]))
        .level(LevelSpec::new("y").invertible().sigma("x", "x^2"));
    assert_eq!(validate_tower(&spec).unwrap_err(), Error::MissingInverse("y".into()));
}

#[test]
fn laurent_level_with_delta() {
    let spec = TowerSpec::new("bad", BaseAlgebra::polynomial([Variable::new("x", false)]))
        .level(LevelSpec::new("y").invertible().delta("x", "1"));
    assert_eq!(validate_tower(&spec).unwrap_err(), Error::LaurentWithDelta("y".into()));
}

#[test]
fn relation_violation_is_reported() {
    // delta(yx) = x^2 but delta(2xy) = 2x^2
    let spec = TowerSpec::new("bad", BaseAlgebra::polynomial([Variable::new("x", false)]))
        .level(LevelSpec::new("y").sigma("x", "2*x").sigma_inverse("x", "1/2*x"))
        .level(LevelSpec::new("z").delta("y", "x"));
    match validate_tower(&spec).unwrap_err() {
        Error::RelationViolation { level, relation, .. } => {
            assert_eq!(level, "z");
            assert!(relation.starts_with("y*x = 2*x*y"), "{relation}");
        }
        e => panic!("{e}"),
    }
}

#[test]
fn wrong_inverse_rejected() {
    let spec = TowerSpec::new("bad", BaseAlgebra::polynomial([Variable::new("x", false)]))
        .level(LevelSpec::new("y").sigma("x", "2*x").sigma_inverse("x", "x"));
    assert!(matches!(validate_tower(&spec), Err(Error::InverseMismatch(_))));
}

#[test]
fn images_must_stay_below() {
    let spec = TowerSpec::new("bad", BaseAlgebra::polynomial([Variable::new("x", false)]))
        .level(LevelSpec::new("d").delta("x", "d"));
    assert!(matches!(validate_tower(&spec), Err(Error::ImageNotBelow { .. })));
    let spec = TowerSpec::new("bad", BaseAlgebra::polynomial([Variable::new("x", false)]))
        .level(LevelSpec::new("d"))
        .level(LevelSpec::new("e").delta("x", "f"))
        .level(LevelSpec::new("f"));
    assert!(matches!(validate_tower(&spec), Err(Error::ImageNotBelow { .. })));
}

#[test]
fn duplicate_names() {
    let spec = TowerSpec::new("bad", BaseAlgebra::polynomial([Variable::new("x", false)]))
        .level(LevelSpec::new("x"));
    assert_eq!(validate_tower(&spec).unwrap_err(), Error::DuplicateName("x".into()));
}

#[test]
fn usolv2_relation() {
    let u = tower("usolv2");
    assert_eq!((&el(&u, "h") * &el(&u, "e")).to_string(), "e*h + e");
}

#[test]
fn parse_render_round_trip() {
    let a = tower("A2");
    for s in ["x1*d2 + 1", "-x1^2*d1*d2 + 3/4*x2", "0", "1", "-1/2"] {
        assert_eq!(el(&a, s).to_string(), s);
    }
    assert_eq!(el(&a, "d1*x1 - 1").to_string(), "x1*d1");
    let t = tower("T2");
    for s in ["x^-1*y^-1", "2*x*y - 1/3*y^2", "x^2 + x^-2"] {
        assert_eq!(el(&t, s).to_string(), s);
    }
}

#[test]
fn parse_errors() {
    let a = tower("A1");
    assert_eq!(a.parse("x^-1").unwrap_err(), Error::NegativeExponent("x".into()));
    assert_eq!(a.parse("q").unwrap_err(), Error::UnknownSymbol("q".into()));
    assert!(matches!(a.parse("x + "), Err(Error::Parse { column: 5, .. })));
    assert!(matches!(a.parse("x $ d"), Err(Error::Parse { column: 3, .. })));
    assert!(matches!(a.parse("(x"), Err(Error::Parse { .. })));
    assert_eq!(a.parse("x/0").unwrap_err(), Error::DivisionByZero);
    assert!(matches!(a.parse("1/d"), Err(Error::NotAUnit(_))));
}

#[test]
fn rational_function_base() {
    let r = tower("RW1");
    let d = el(&r, "d");
    let inv_x = el(&r, "1/x");
    let left = &d * &inv_x;
    let right = &(&inv_x * &d) - &el(&r, "1/x^2");
    assert_eq!(left, right);
    let p = el(&r, "(x + 1)/(x - 1)*d");
    assert_eq!(el(&r, &p.to_string()), p);
    assert_eq!(p.to_string(), "(x + 1)/(x - 1)*d");
}

#[test]
fn opposite_of_weyl() {
    let a = tower("A1");
    let op = opposite_tower(&a).unwrap();
    let t = op.target();
    assert_eq!((&el(t, "d") * &el(t, "x")).to_string(), "x*d - 1");
    let (s, _, d) = t.level_images(0, "x").unwrap();
    assert!(s == el(t, "x") && d == el(t, "-1"));
}

#[test]
fn opposite_of_commutative_is_identity() {
    let spec = TowerSpec::new("Qx", BaseAlgebra::polynomial([Variable::new("x", false)]));
    let a = validate_tower(&spec).unwrap();
    let op = opposite_tower(&a).unwrap();
    assert!(op.target().structurally_equal(&a));
    let p = el(&a, "x^3 - 2*x");
    assert_eq!(op.apply(&p).unwrap().raw(), p.raw());
}

#[test]
fn opposite_of_quantum_torus() {
    let t = tower("T2");
    let op = opposite_tower(&t).unwrap();
    let o = op.target();
    assert_eq!((&el(o, "y") * &el(o, "x")).to_string(), "1/2*x*y");
}

#[test]
fn opposite_needs_inverse_for_twisted_levels() {
    let spec = TowerSpec::new("QP", BaseAlgebra::polynomial([Variable::new("x", false)]))
        .level(LevelSpec::new("y").sigma("x", "2*x"));
    let t = validate_tower(&spec).unwrap();
    assert_eq!(opposite_tower(&t).unwrap_err(), Error::MissingInverse("y".into()));
}

#[test]
fn opposite_is_anti_and_involutive() {
    for name in ["A1", "A2", "QP", "S", "usolv2", "QW", "RW1", "LW1", "T2"] {
        let a = tower(name);
        let op = opposite_tower(&a).unwrap();
        let back = opposite_tower(op.target()).unwrap();
        assert!(back.target().structurally_equal(&a), "{name}");
        let gens = a.generators();
        let extra = a.parse("2").unwrap();
        for p in gens.iter().chain([&extra]) {
            for q in &gens {
                let lhs = op.apply(&(p * q)).unwrap();
                let rhs = &op.apply(q).unwrap() * &op.apply(p).unwrap();
                assert_eq!(lhs, rhs, "{name}: {p} {q}");
                let twice = back.apply(&op.apply(&(p * q)).unwrap()).unwrap();
                assert_eq!(twice.raw(), (p * q).raw(), "{name}");
            }
        }
    }
}

#[test]
fn tensor_of_weyl_algebras() {
    let a = tower("A1");
    let tp = tensor_towers(&a, &a).unwrap();
    let t = tp.tower();
    assert_eq!(t.generator_names(), vec!["x", "x'", "d", "d'"]);
    assert_eq!((&el(t, "d'") * &el(t, "x")).to_string(), "x*d'");
    assert_eq!((&el(t, "d'") * &el(t, "x'")).to_string(), "x'*d' + 1");
    for g in a.generators() {
        for h in a.generators() {
            let l = tp.embed_left(&g).unwrap();
            let r = tp.embed_right(&h).unwrap();
            assert_eq!(&l * &r, &r * &l);
            let gh = &g * &h;
            assert_eq!(tp.embed_left(&gh).unwrap(), &tp.embed_left(&g).unwrap() * &tp.embed_left(&h).unwrap());
            assert_eq!(tp.embed_right(&gh).unwrap(), &tp.embed_right(&g).unwrap() * &tp.embed_right(&h).unwrap());
        }
    }
}

#[test]
fn tensor_of_quantum_tori_commutes_across() {
    let t2 = tower("T2");
    let tp = tensor_towers(&t2, &t2).unwrap();
    assert_eq!(tp.tower().n_levels(), 4);
    for g in t2.generators() {
        for h in t2.generators() {
            let l = tp.embed_left(&g).unwrap();
            let r = tp.embed_right(&h).unwrap();
            assert_eq!(&l * &r, &r * &l);
        }
    }
}

#[test]
fn tensor_with_rationals_is_unit() {
    let a = tower("QP");
    let qq = validate_tower(&TowerSpec::new("Q", BaseAlgebra::rationals())).unwrap();
    let tp = tensor_towers(&a, &qq).unwrap();
    assert!(tp.tower().structurally_equal(&a));
}

#[test]
fn tensor_rejects_rational_functions() {
    let r = tower("RW1");
    assert!(matches!(tensor_towers(&r, &r), Err(Error::UnsupportedBase(_))));
}

#[test]
fn describe_mentions_level_data() {
    assert_eq!(tower("A1").describe(), "Q[x][d; delta(x) = 1]");
    assert_eq!(tower("T2").describe(), "Q[x, x^-1][y, y^-1; sigma(x) = 2*x]");
}
