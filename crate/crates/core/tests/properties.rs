use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use oreforge_core::abelian::{encode_multiplicative, group_from_generators, smith_normal_form, Ambient, IntMatrix, Weight};
use oreforge_core::builtins;
use oreforge_core::endo::apply_map;
use oreforge_core::tower::{opposite_tower, Element, Tower};
use oreforge_core::verify::sample;

type Term = (i64, i64, Vec<i64>);

fn terms(ngens: usize) -> impl Strategy<Value = Vec<Term>> {
    let term = (
        (-8i64..=8).prop_filter("nonzero", |p| *p != 0),
        1i64..=8,
        prop::collection::vec(-2i64..=3, ngens),
    );
    prop::collection::vec(term, 1..4)
}

fn build(t: &Tower, ts: &[Term]) -> Element {
    let names = t.generator_names();
    ts.iter().fold(t.zero(), |acc, (p, q, e)| {
        let e: Vec<i64> = e
            .iter()
            .zip(&names)
            .map(|(&k, g)| if t.generator_invertible(g) == Some(true) { k } else { k.abs() })
            .collect();
        let m = sample::monomial(t, &e, BigRational::new(BigInt::from(*p), BigInt::from(*q)));
        acc.add(&m).unwrap()
    })
}

fn tower(name: &str) -> Tower {
    builtins::builtin(name).unwrap().tower
}

const RING_TOWERS: &[&str] = &["A1", "QP", "T2", "usolv2", "QW"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_laws(i in 0..RING_TOWERS.len(), a in terms(2), b in terms(2), c in terms(2)) {
        let t = tower(RING_TOWERS[i]);
        let (a, b, c) = (build(&t, &a), build(&t, &b), build(&t, &c));
        let ab_c = a.mul(&b).unwrap().mul(&c).unwrap();
        let a_bc = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        let left = a.mul(&b.add(&c).unwrap()).unwrap();
        let right = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(a.mul(&t.one()).unwrap(), a.clone());
    }

    #[test]
    fn render_parse_round_trip(i in 0..RING_TOWERS.len(), a in terms(2)) {
        let t = tower(RING_TOWERS[i]);
        let a = build(&t, &a);
        prop_assert_eq!(t.parse(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn opposite_reverses_products(i in 0..RING_TOWERS.len(), a in terms(2), b in terms(2)) {
        let t = tower(RING_TOWERS[i]);
        let op = opposite_tower(&t).unwrap();
        let (a, b) = (build(&t, &a), build(&t, &b));
        let lhs = op.apply(&a.mul(&b).unwrap()).unwrap();
        let rhs = op.apply(&b).unwrap().mul(&op.apply(&a).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn leibniz_rule(a in terms(4), b in terms(4)) {
        let s = builtins::builtin("A2").unwrap();
        let t = &s.tower;
        let (a, b) = (build(t, &a), build(t, &b));
        for m in s.maps.values().filter(|m| m.kind() == oreforge_core::endo::MapKind::Derivation) {
            let lhs = apply_map(m, &a.mul(&b).unwrap()).unwrap();
            let rhs = apply_map(m, &a).unwrap().mul(&b).unwrap()
                .add(&a.mul(&apply_map(m, &b).unwrap()).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn smith_form_invariants(rows in prop::collection::vec(prop::collection::vec(-6i64..=6, 3), 1..5)) {
        let m = IntMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(), 3);
        let f = smith_normal_form(&m);
        prop_assert_eq!(&(&f.u * &m) * &f.v, f.s.clone());
        prop_assert!(f.u.det().abs().is_one() && f.v.det().abs().is_one());
        prop_assert!(f.s.is_diagonal());
        let d = f.diagonal();
        let k = d.iter().take_while(|x| !x.is_zero()).count();
        prop_assert!(d[k..].iter().all(Zero::is_zero));
        prop_assert!(d[..k].windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
        prop_assert!(d.iter().all(|x| !x.is_negative()));
    }

    #[test]
    fn encoding_round_trip(q in prop::collection::vec(((-40i64..=40).prop_filter("nonzero", |p| *p != 0), 1i64..=40), 1..4)) {
        let q: Vec<BigRational> = q.iter().map(|(p, d)| BigRational::new(BigInt::from(*p), BigInt::from(*d))).collect();
        let enc = encode_multiplicative(&q).unwrap();
        prop_assert_eq!(enc.decode().0, q);
    }

    #[test]
    fn group_structure_ignores_order(gens in prop::collection::vec(prop::collection::vec(-6i64..=6, 2), 1..4), rot in 0usize..4) {
        let ws: Vec<Weight> = gens.iter().map(|g| Weight::from_ints(g)).collect();
        let mut shuffled = ws.clone();
        let n = shuffled.len();
        shuffled.rotate_left(rot % n);
        shuffled.reverse();
        let a = group_from_generators(&ws, Ambient::Additive(2)).unwrap();
        let b = group_from_generators(&shuffled, Ambient::Additive(2)).unwrap();
        prop_assert_eq!(a.rank, b.rank);
        prop_assert_eq!(&a.invariant_factors, &b.invariant_factors);
        for w in &ws {
            prop_assert!(b.contains(w));
        }
    }
}
