use super::*;

fn opts(samples: usize, mutation: Mutation) -> Options {
    Options {
        seed: DEFAULT_SEED,
        samples,
        mutation,
    }
}

#[test]
fn all_suites_pass() {
    let s = run(Suite::All, &opts(40, Mutation::None));
    let bad: Vec<String> = s.failures().map(|c| c.to_string()).collect();
    assert!(bad.is_empty(), "{bad:#?}");
    assert!(s.checks.len() > 50);
}

#[test]
fn runs_are_deterministic() {
    let a = run(Suite::Tower, &opts(12, Mutation::None));
    let b = run(Suite::Tower, &opts(12, Mutation::None));
    assert_eq!(a.checks, b.checks);
}

#[test]
fn flipped_opposite_sign_is_caught() {
    for suite in [Suite::Tower, Suite::Endo] {
        let s = run(suite, &opts(40, Mutation::FlipOppositeDeltaSign));
        let f: Vec<&Check> = s.failures().collect();
        assert!(!f.is_empty(), "{suite:?}");
        assert!(f.iter().all(|c| c.witness.as_ref().is_some_and(|w| !w.is_empty())));
    }
}

#[test]
fn dropped_leibniz_twist_is_caught() {
    for suite in [Suite::Tower, Suite::Endo] {
        let s = run(suite, &opts(40, Mutation::DropLeibnizTwist));
        assert!(!s.passed(), "{suite:?}");
    }
}

#[test]
fn shrinking_keeps_failure() {
    let t = builtins::builtin("A1").unwrap().tower;
    let p = t.parse("x^2*d + 3*x - d^2 + 1").unwrap();
    let q = t.parse("d + x").unwrap();
    let fails = |xs: &[Element]| &xs[0] * &xs[1] != &xs[1] * &xs[0];
    let small = sample::shrink(vec![p, q], fails);
    assert!(fails(&small));
    assert_eq!(small.iter().map(Element::len).sum::<usize>(), 2);
}

#[test]
fn coset_oracle_small_cases() {
    use crate::abelian::IntMatrix;
    let m = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]);
    let mut orders = oracle::quotient_orders(&m).unwrap();
    orders.sort();
    assert_eq!(orders, vec![1, 2, 3, 3, 6, 6]);
    assert!(oracle::quotient_orders(&IntMatrix::from_i64(&[&[1, 2]])).is_none());
    let mut n = 0;
    assert_eq!(oracle::snf_mismatch(&IntMatrix::from_i64(&[&[4, 6], &[6, 4]]), &mut n), None);
    assert_eq!(n, 1);
}

#[test]
fn weyl_operator_oracle() {
    let t = builtins::builtin("A1").unwrap().tower;
    let p = t.parse("x^2*d^2 + d").unwrap();
    let q = t.parse("x*d - 3").unwrap();
    assert_eq!(oracle::weyl_composition_mismatch(&t, &p, &q, 8), None);
}
