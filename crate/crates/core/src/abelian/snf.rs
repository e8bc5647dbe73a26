use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

/// `u * m * v = s` with `u`, `v` unimodular and `s` diagonal, nonnegative,
/// and satisfying the divisibility chain. Inverses of the transforms are
/// tracked alongside.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        let n = self.s.rows().min(self.s.cols());
        (0..n).take_while(|&i| !self.s[(i, i)].is_zero()).count()
    }

    /// Nonzero diagonal entries in order.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rank()).map(|i| self.s[(i, i)].clone()).collect()
    }

    /// Diagonal entries greater than one.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal().into_iter().filter(|d| *d > BigInt::from(1)).collect()
    }
}

struct Calc {
    s: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Calc {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.s.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.s.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.s.add_row(dst, src, k);
        self.u.add_row(dst, src, k);
        self.u_inv.add_col(src, dst, &-k);
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.s.add_col(dst, src, k);
        self.v.add_col(dst, src, k);
        self.v_inv.add_row(src, dst, &-k);
    }

    fn negate_row(&mut self, i: usize) {
        self.s.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// Smallest nonzero magnitude in the trailing block; ties go to the
    /// first in row-then-column order.
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.s.rows() {
            for j in t..self.s.cols() {
                let x = &self.s[(i, j)];
                if x.is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some(b) => x.abs() < self.s[b].abs(),
                };
                if better {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    /// Returns false when the trailing block is zero.
    fn reduce_step(&mut self, t: usize) -> bool {
        let (rows, cols) = (self.s.rows(), self.s.cols());
        loop {
            let Some((pi, pj)) = self.pivot(t) else {
                return false;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            let p = self.s[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..rows {
                let q = &self.s[(i, t)] / &p;
                if !q.is_zero() {
                    self.add_row(i, t, &-q);
                }
                if !self.s[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let q = &self.s[(t, j)] / &p;
                if !q.is_zero() {
                    self.add_col(j, t, &-q);
                }
                if !self.s[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let bad_row = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !self.s[(i, j)].is_multiple_of(&p))
            });
            match bad_row {
                Some(i) => self.add_row(t, i, &BigInt::from(1)),
                None => break,
            }
        }
        if self.s[(t, t)].is_negative() {
            self.negate_row(t);
        }
        true
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut calc = Calc {
        s: m.clone(),
        u: IntMatrix::identity(rows),
        u_inv: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
        v_inv: IntMatrix::identity(cols),
    };
    for t in 0..rows.min(cols) {
        if !calc.reduce_step(t) {
            break;
        }
    }
    SmithForm {
        u: calc.u,
        s: calc.s,
        v: calc.v,
        u_inv: calc.u_inv,
        v_inv: calc.v_inv,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntMatrix) -> SmithForm {
        let f = smith_normal_form(m);
        assert_eq!(&(&f.u * m) * &f.v, f.s);
        assert!(f.s.is_diagonal());
        assert_eq!(&f.u * &f.u_inv, IntMatrix::identity(m.rows()));
        assert_eq!(&f.v * &f.v_inv, IntMatrix::identity(m.cols()));
        let d = f.diagonal();
        for w in d.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        f
    }

    #[test]
    fn identity_is_fixed() {
        let f = check(&IntMatrix::identity(3));
        assert_eq!(f.s, IntMatrix::identity(3));
    }

    #[test]
    fn diag_two_three() {
        let f = check(&IntMatrix::from_i64(&[&[2, 0], &[0, 3]]));
        assert_eq!(f.s, IntMatrix::from_i64(&[&[1, 0], &[0, 6]]));
        assert_eq!(f.invariant_factors(), vec![BigInt::from(6)]);
    }

    #[test]
    fn zero_matrix() {
        let m = IntMatrix::zeros(2, 3);
        let f = check(&m);
        assert_eq!(f.s, m);
        assert_eq!(f.u, IntMatrix::identity(2));
        assert_eq!(f.v, IntMatrix::identity(3));
    }

    #[test]
    fn rectangular_with_negative_entries() {
        let f = check(&IntMatrix::from_i64(&[&[4, -6, 2], &[-2, 8, 10]]));
        // entry gcd 2, gcd of 2x2 minors 4
        assert_eq!(f.diagonal(), vec![BigInt::from(2), BigInt::from(2)]);
    }
}
