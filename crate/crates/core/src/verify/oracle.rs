//! Independent reference computations used to cross-check the kernel.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::abelian::{encode_multiplicative, smith_normal_form, IntMatrix};
use crate::exact::UniPoly;
use crate::tower::{Element, Tower};

/// Largest quotient group enumerated by the coset oracle.
pub const COSET_LIMIT: usize = 2000;

pub fn random_matrix<R: Rng>(rng: &mut R, max_rows: usize, max_cols: usize, bound: i64) -> IntMatrix {
    let r = rng.gen_range(1..=max_rows);
    let c = rng.gen_range(1..=max_cols);
    let rows = (0..r)
        .map(|_| (0..c).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect())
        .collect();
    IntMatrix::from_rows(rows, c)
}

/// Row echelon basis of the row lattice by repeated Euclid steps: row `i`
/// has its pivot in column `pivots[i]` and the pivot is positive.
fn echelon(m: &IntMatrix) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut rows: Vec<Vec<BigInt>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
    let mut basis = Vec::new();
    let mut pivots = Vec::new();
    for col in 0..m.cols() {
        loop {
            let mut live: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i][col].is_zero()).collect();
            if live.is_empty() {
                break;
            }
            live.sort_by_key(|&i| rows[i][col].abs());
            let p = live[0];
            if live.len() == 1 {
                let mut r = rows.swap_remove(p);
                if r[col].is_negative() {
                    r.iter_mut().for_each(|x| *x = -&*x);
                }
                basis.push(r);
                pivots.push(col);
                break;
            }
            let pivot = rows[p].clone();
            for &i in &live[1..] {
                let q = rows[i][col].div_floor(&pivot[col]);
                for (x, y) in rows[i].iter_mut().zip(&pivot) {
                    *x -= &q * y;
                }
            }
        }
    }
    (basis, pivots)
}

fn reduce(v: &mut [BigInt], basis: &[Vec<BigInt>], pivots: &[usize]) {
    for (row, &c) in basis.iter().zip(pivots) {
        let q = v[c].div_floor(&row[c]);
        if !q.is_zero() {
            for (x, y) in v.iter_mut().zip(row) {
                *x -= &q * y;
            }
        }
    }
}

/// Orders of all elements of `Z^n / rowspace(m)` by breadth-first coset
/// enumeration, or `None` when the quotient is infinite or too large.
pub fn quotient_orders(m: &IntMatrix) -> Option<Vec<usize>> {
    let (basis, pivots) = echelon(m);
    let n = m.cols();
    if pivots.len() < n {
        return None;
    }
    let size: BigInt = basis.iter().zip(&pivots).map(|(r, &c)| r[c].clone()).product();
    if size > BigInt::from(COSET_LIMIT) {
        return None;
    }
    let zero = vec![BigInt::zero(); n];
    let mut seen: HashSet<Vec<BigInt>> = HashSet::from([zero.clone()]);
    let mut queue = VecDeque::from([zero.clone()]);
    let mut elems = Vec::new();
    while let Some(v) = queue.pop_front() {
        for i in 0..n {
            let mut w = v.clone();
            w[i] += 1;
            reduce(&mut w, &basis, &pivots);
            if seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
        elems.push(v);
    }
    let orders = elems
        .iter()
        .map(|g| {
            let mut acc = g.clone();
            let mut k = 1;
            while acc != zero {
                for (a, b) in acc.iter_mut().zip(g) {
                    *a += b;
                }
                reduce(&mut acc, &basis, &pivots);
                k += 1;
            }
            k
        })
        .collect();
    Some(orders)
}

/// Checks the Smith form of `m`; on success with a finite quotient also
/// compares `#{g : kg = 0}` with `prod gcd(k, d_i)` for every `k`.
pub fn snf_mismatch(m: &IntMatrix, oracle_cases: &mut usize) -> Option<String> {
    let f = smith_normal_form(m);
    if &(&f.u * m) * &f.v != f.s {
        return Some(format!("U M V != S for\n{m}"));
    }
    if !f.u.det().abs().is_one() || !f.v.det().abs().is_one() {
        return Some(format!("non-unimodular transform for\n{m}"));
    }
    if !f.s.is_diagonal() {
        return Some(format!("S not diagonal for\n{m}"));
    }
    let diag = f.diagonal();
    if diag.iter().any(Signed::is_negative) {
        return Some(format!("negative diagonal for\n{m}"));
    }
    let k = diag.iter().take_while(|d| !d.is_zero()).count();
    if diag[k..].iter().any(|d| !d.is_zero()) || diag[..k].windows(2).any(|w| !(&w[1] % &w[0]).is_zero()) {
        return Some(format!("divisibility chain broken for\n{m}"));
    }
    let orders = quotient_orders(m)?;
    *oracle_cases += 1;
    let factors = f.invariant_factors();
    for k in 1..=orders.len() {
        let brute = orders.iter().filter(|&&o| k % o == 0).count();
        let kk = BigInt::from(k);
        let predicted: BigInt = factors.iter().map(|d| d.gcd(&kk)).product();
        if BigInt::from(brute) != predicted {
            return Some(format!(
                "coset count for k = {k}: enumerated {brute}, Smith form predicts {predicted}, for\n{m}"
            ));
        }
    }
    None
}

pub fn encoding_mismatch<R: Rng>(rng: &mut R) -> Option<String> {
    let t = rng.gen_range(1..=3);
    let q: Vec<BigRational> = (0..t)
        .map(|_| super::sample::rational(rng, 30, true))
        .collect();
    let enc = encode_multiplicative(&q).ok()?;
    if enc.decode().0 != q {
        return Some(format!("decode(encode({q:?})) != input"));
    }
    let inv: Vec<BigRational> = q.iter().map(|x| x.recip()).collect();
    let product: Vec<BigRational> = q.iter().zip(&inv).map(|(a, b)| a * b).collect();
    let one = encode_multiplicative(&product).ok()?;
    if one.signs.iter().any(|&s| s) || one.exponents.iter().flatten().any(|e| !e.is_zero()) {
        return Some("encoding of 1 is not zero".into());
    }
    let both: Vec<BigRational> = q.iter().chain(&inv).cloned().collect();
    let joint = encode_multiplicative(&both).ok()?;
    let (a, b) = (
        crate::abelian::MultiplicativeWeight {
            primes: joint.primes.clone(),
            signs: joint.signs[..t].to_vec(),
            exponents: joint.exponents[..t].to_vec(),
        },
        crate::abelian::MultiplicativeWeight {
            primes: joint.primes.clone(),
            signs: joint.signs[t..].to_vec(),
            exponents: joint.exponents[t..].to_vec(),
        },
    );
    let c = a.combine(&b).decode();
    if c.0.iter().any(|x| !x.is_one()) {
        return Some(format!("encoded product of {q:?} and its inverse is {c}"));
    }
    None
}

/// `sum c x^i d^j` as a differential operator on `Q[x]`, for elements of
/// a tower whose generators are `x` (base) and `d` with `d x = x d + 1`.
pub fn weyl_operator(p: &Element, f: &UniPoly) -> UniPoly {
    let mut acc = UniPoly::zero();
    for (e, c) in p.terms() {
        let mut g = f.clone();
        for _ in 0..e.0[0] {
            g = g.derivative();
        }
        let atoms = p.tower().data().base.atoms(c).expect("polynomial coefficient");
        for (b, k) in atoms {
            let xb = UniPoly::monomial(b.0[0] as usize, k);
            acc = &acc + &(&xb * &g);
        }
    }
    acc
}

/// Compares `(PQ)(x^k)` with `P(Q(x^k))` for `k <= max_degree`.
pub fn weyl_composition_mismatch(tower: &Tower, p: &Element, q: &Element, max_degree: usize) -> Option<String> {
    let pq = p.mul(q).ok()?;
    for k in 0..=max_degree {
        let f = UniPoly::monomial(k, BigRational::one());
        let lhs = weyl_operator(&pq, &f);
        let rhs = weyl_operator(p, &weyl_operator(q, &f));
        if lhs != rhs {
            return Some(format!("({p})({q}) on x^{k} in {}", tower.describe()));
        }
    }
    None
}
