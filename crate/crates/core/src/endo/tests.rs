use std::collections::BTreeMap;

use super::*;
use crate::builtins::{self, System};

fn sys(name: &str) -> System {
    builtins::builtin(name).unwrap()
}

fn el(t: &Tower, s: &str) -> Element {
    t.parse(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn images(t: &Tower, pairs: &[(&str, &str)]) -> BTreeMap<String, Element> {
    pairs.iter().map(|(g, v)| (g.to_string(), el(t, v))).collect()
}

#[test]
fn weyl_transpose_reverses_products() {
    let a = sys("A1");
    let t = &a.tower;
    let tr = a.map("weyl_transpose").unwrap();
    assert_eq!(apply_map(tr, &el(t, "x*d")).unwrap().to_string(), "-x*d - 1");
    assert_eq!(apply_map(tr, &el(t, "d*x")).unwrap(), el(t, "-x*d"));
    let p = el(t, "x^2*d^2 - 3*d + x");
    let twice = apply_map(tr, &apply_map(tr, &p).unwrap()).unwrap();
    assert_eq!(twice, p);
}

#[test]
fn inner_derivation_of_euler_operator() {
    let a = sys("A1");
    let t = &a.tower;
    let ad = a.map("ad_xd").unwrap();
    assert_eq!(apply_map(ad, &el(t, "x^2")).unwrap().to_string(), "2*x^2");
    assert_eq!(apply_map(ad, &el(t, "d^3")).unwrap(), el(t, "-3*d^3"));
    let inner = inner_derivation(&el(t, "x*d")).unwrap();
    assert_eq!(&inner, ad);
}

#[test]
fn relation_violation_for_bad_images() {
    let a = sys("A1");
    let t = &a.tower;
    let err = make_map(t, MapKind::Automorphism, &images(t, &[("x", "2*x"), ("d", "d")]), None);
    assert!(matches!(err, Err(Error::RelationViolation { .. })), "{err:?}");
    let err = make_map(t, MapKind::Derivation, &images(t, &[("x", "1")]), None);
    assert_eq!(err.unwrap_err(), Error::MissingImage("d".into()));
    let err = make_map(t, MapKind::Derivation, &images(t, &[("x", "1"), ("d", "0"), ("z", "0")]), None);
    assert_eq!(err.unwrap_err(), Error::UnknownSymbol("z".into()));
}

#[test]
fn inverse_images_checked() {
    let a = sys("A1");
    let t = &a.tower;
    let fwd = images(t, &[("x", "x"), ("d", "d + 1")]);
    let bad = images(t, &[("x", "x"), ("d", "d + 1")]);
    let err = make_map(t, MapKind::Automorphism, &fwd, Some(&bad));
    assert_eq!(err.unwrap_err(), Error::InverseMismatch("d".into()));
    let err = make_map(t, MapKind::Derivation, &fwd, Some(&fwd));
    assert!(matches!(err, Err(Error::KindMismatch(_))));
}

#[test]
fn unit_images_required_on_invertible_generators() {
    let s = sys("T2");
    let t = &s.tower;
    let err = make_map(t, MapKind::Automorphism, &images(t, &[("x", "x + 1"), ("y", "y")]), None);
    assert!(matches!(err, Err(Error::ImageNotUnit(_))));
}

#[test]
fn solvable_negation() {
    let s = sys("usolv2");
    let t = &s.tower;
    let neg = s.map("neg").unwrap();
    // (he)^T = e^T h^T = (-e)(-h) = eh
    assert_eq!(apply_map(neg, &el(t, "h*e")).unwrap(), el(t, "e*h"));
    assert_eq!(apply_map(neg, &el(t, "e*h")).unwrap(), el(t, "e*h + e"));
}

#[test]
fn compose_and_bracket() {
    let a = sys("A1");
    let t = &a.tower;
    let shift = a.map("shift_d").unwrap();
    let twice = compose(shift, shift).unwrap();
    assert_eq!(twice.image("d").unwrap(), el(t, "d + 2"));
    let back = twice.inverse().unwrap();
    assert_eq!(back.image("d").unwrap(), el(t, "d - 2"));
    let ad_x = inner_derivation(&el(t, "x")).unwrap();
    let ad_d = inner_derivation(&el(t, "d")).unwrap();
    let br = bracket(&ad_x, &ad_d).unwrap();
    // [ad x, ad d] = ad [x, d] = ad(-1) = 0
    assert!(br.is_trivial() || br.images().iter().all(|(_, v)| v.is_zero()));
    let ad = a.map("ad_xd").unwrap();
    let br = bracket(ad, &ad_d).unwrap();
    assert_eq!(br, inner_derivation(&el(t, "-d")).unwrap());
    assert!(matches!(bracket(ad, shift), Err(Error::KindMismatch(_))));
    assert!(matches!(compose(ad, shift), Err(Error::KindMismatch(_))));
}

#[test]
fn commuting_families() {
    let s = sys("T2");
    let cx = s.map("conj_x").unwrap().clone();
    let cy = s.map("conj_y").unwrap().clone();
    assert!(commuting_check(&[cx.clone(), cy.clone()]).unwrap().commuting);
    let ex = s.map("euler_x").unwrap().clone();
    let ey = s.map("euler_y").unwrap().clone();
    assert!(commuting_check(&[ex.clone(), ey]).unwrap().commuting);
    assert!(matches!(commuting_check(&[cx, ex]), Err(Error::KindMismatch(_))));

    let a = sys("A1");
    let ad_xd = a.map("ad_xd").unwrap().clone();
    let ad_d = inner_derivation(&el(&a.tower, "d")).unwrap();
    let v = commuting_check(&[ad_xd, ad_d]).unwrap();
    assert!(!v.commuting);
    assert_eq!(v.witness.unwrap().0, 0);
}

#[test]
fn conjugation_matches_builtin() {
    let s = sys("T2");
    let t = &s.tower;
    assert_eq!(&conj_automorphism(&el(t, "x")).unwrap(), s.map("conj_x").unwrap());
    assert_eq!(&conj_automorphism(&el(t, "y")).unwrap(), s.map("conj_y").unwrap());
    assert!(matches!(conj_automorphism(&el(t, "x + 1")), Err(Error::NotAUnit(_))));
}

#[test]
fn extension_to_unit_fractions() {
    let lw = sys("LW1");
    let t = &lw.tower;
    let ad = lw.map("ad_xd").unwrap();
    let v = extend_to_unit_fraction(ad, &el(t, "x"), &t.one()).unwrap();
    assert_eq!(v, el(t, "-x^-1"));
    assert_eq!(v, apply_map(ad, &el(t, "x^-1")).unwrap());

    let t2 = sys("T2");
    let t = &t2.tower;
    let cy = t2.map("conj_y").unwrap();
    let v = extend_to_unit_fraction(cy, &el(t, "x"), &t.one()).unwrap();
    assert_eq!(v.to_string(), "1/2*x^-1");
    let v = extend_to_unit_fraction(cy, &el(t, "x*y"), &el(t, "y^2")).unwrap();
    assert_eq!(v, apply_map(cy, &el(t, "y^-1*x^-1*y^2")).unwrap());

    let a = sys("A1");
    let tr = a.map("weyl_transpose").unwrap();
    assert!(matches!(
        extend_to_unit_fraction(tr, &el(&a.tower, "d"), &a.tower.one()),
        Err(Error::NotAUnit(_))
    ));
}

#[test]
fn spec_round_trip_and_display() {
    let a = sys("A1");
    let tr = a.map("weyl_transpose").unwrap();
    assert_eq!(tr.to_string(), "x -> x, d -> -d");
    let back = map_from_spec(&a.tower, &tr.to_spec()).unwrap();
    assert_eq!(&back, tr);
    assert!(back.has_inverse());
}

#[test]
fn owner_checked() {
    let a = sys("A1");
    let b = sys("A1");
    let tr = a.map("weyl_transpose").unwrap();
    assert_eq!(apply_map(tr, &b.tower.one()), Err(Error::OwnerMismatch));
}
