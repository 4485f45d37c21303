//! Smith normal form over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// Result of diagonalising `A` by unimodular row and column operations:
/// `u * A * v == s`, with `s` diagonal and its diagonal a divisor chain.
/// The inverses of both transforms are tracked alongside them.
#[derive(Clone, Debug)]
pub struct Smith {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    rank: usize,
}

impl Smith {
    /// Number of nonzero invariant factors.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The first `min(rows, cols)` diagonal entries, zeros included.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.s.rows().min(self.s.cols());
        (0..k).map(|i| self.s[(i, i)].clone()).collect()
    }

    /// Nonzero invariant factors `d_1 | d_2 | ... | d_rank`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.s[(i, i)].clone()).collect()
    }

    /// Rank of `A mod p` for a prime `p`.
    pub fn rank_mod_prime(&self, p: &BigInt) -> usize {
        self.invariant_factors().iter().filter(|d| !d.is_multiple_of(p)).count()
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> Smith {
    let (m, n) = a.shape();
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut u_inv = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut v_inv = IntMatrix::identity(n);
    let mut rank = 0;

    'outer: for t in 0..m.min(n) {
        loop {
            let Some((pi, pj)) = min_abs_entry(&s, t) else {
                break 'outer;
            };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            u_inv.swap_cols(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);
            v_inv.swap_rows(t, pj);

            let mut clean = true;
            for i in t + 1..m {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = s[(i, t)].div_floor(&s[(t, t)]);
                let neg_q = -&q;
                s.add_row_multiple(i, t, &neg_q);
                u.add_row_multiple(i, t, &neg_q);
                u_inv.add_col_multiple(t, i, &q);
                if !s[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = s[(t, j)].div_floor(&s[(t, t)]);
                let neg_q = -&q;
                s.add_col_multiple(j, t, &neg_q);
                v.add_col_multiple(j, t, &neg_q);
                v_inv.add_row_multiple(t, j, &q);
                if !s[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }

            // The pivot must divide the whole remaining block, otherwise
            // fold an offending row into row t and go around again.
            let pivot = s[(t, t)].clone();
            let offending = (t + 1..m)
                .find(|&i| (t + 1..n).any(|j| !s[(i, j)].is_multiple_of(&pivot)));
            match offending {
                Some(i) => {
                    let one = BigInt::one();
                    s.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                    u_inv.add_col_multiple(i, t, &-one);
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
        rank += 1;
    }

    Smith { s, u, u_inv, v, v_inv, rank }
}

fn min_abs_entry(s: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..s.rows() {
        for j in t..s.cols() {
            let x = &s[(i, j)];
            if x.is_zero() {
                continue;
            }
            let a = x.abs();
            if best.as_ref().is_none_or(|(_, _, b)| a < *b) {
                let unit = a.is_one();
                best = Some((i, j, a));
                if unit {
                    let (i, j, _) = best.unwrap();
                    return Some((i, j));
                }
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Rank over the rationals.
pub fn rank(a: &IntMatrix) -> usize {
    smith_normal_form(a).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zmod::matrix::mat;

    fn check(a: &IntMatrix) -> Smith {
        let snf = smith_normal_form(a);
        assert_eq!(&(&snf.u * a) * &snf.v, snf.s);
        assert_eq!(&snf.u * &snf.u_inv, IntMatrix::identity(a.rows()));
        assert_eq!(&snf.v * &snf.v_inv, IntMatrix::identity(a.cols()));
        for i in 0..snf.s.rows() {
            for j in 0..snf.s.cols() {
                if i != j {
                    assert!(snf.s[(i, j)].is_zero());
                }
            }
        }
        let d = snf.invariant_factors();
        for w in d.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]), "divisor chain broken: {d:?}");
        }
        snf
    }

    #[test]
    fn zero_matrix_fixed_point() {
        let snf = check(&mat(&[[0]]));
        assert_eq!(snf.s, mat(&[[0]]));
        assert_eq!(snf.u, mat(&[[1]]));
        assert_eq!(snf.v, mat(&[[1]]));
    }

    #[test]
    fn identity_is_already_diagonal() {
        let snf = check(&IntMatrix::identity(4));
        assert_eq!(snf.s, IntMatrix::identity(4));
    }

    #[test]
    fn two_by_two_chain() {
        let snf = check(&mat(&[[2, 4], [6, 8]]));
        assert_eq!(snf.invariant_factors(), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn needs_divisibility_fixup() {
        // diag(2, 3) is diagonal but not a divisor chain.
        let snf = check(&mat(&[[2, 0], [0, 3]]));
        assert_eq!(snf.invariant_factors(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn rectangular_and_empty() {
        check(&mat(&[[4, 6, 10], [2, 0, 8]]));
        check(&IntMatrix::zeros(0, 3));
        check(&IntMatrix::zeros(2, 0));
        assert_eq!(rank(&mat(&[[1, 2], [2, 4]])), 1);
    }

    #[test]
    fn rank_mod_p_counts_units() {
        let snf = check(&mat(&[[2, 0], [0, 3]]));
        assert_eq!(snf.rank_mod_prime(&BigInt::from(2)), 1);
        assert_eq!(snf.rank_mod_prime(&BigInt::from(5)), 2);
    }
}
