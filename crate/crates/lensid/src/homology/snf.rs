//! Smith normal form over Z with unimodular transform tracking.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::matrix::{abs, IntegerMatrix};

/// U * A * V = S with U, V unimodular and S diagonal, d_i | d_{i+1}, d_i >= 0.
pub struct SmithForm {
    pub u: IntegerMatrix,
    pub s: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SmithForm {
    /// Nontrivial invariant factors (diagonal entries > 1), ascending.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let n = self.s.rows.min(self.s.cols);
        (0..n)
            .map(|i| self.s[(i, i)].clone())
            .filter(|d| d > &BigInt::from(1))
            .collect()
    }

    /// Number of nonzero diagonal entries = rank of the input.
    pub fn rank(&self) -> usize {
        let n = self.s.rows.min(self.s.cols);
        (0..n).filter(|&i| !self.s[(i, i)].is_zero()).count()
    }
}

/// Computes the Smith normal form with a minimal-absolute-value pivot rule
/// (ties broken by row then column order).
pub fn smith_normal_form(a: &IntegerMatrix) -> SmithForm {
    let mut s = a.clone();
    let mut u = IntegerMatrix::identity(a.rows);
    let mut v = IntegerMatrix::identity(a.cols);
    let n = a.rows.min(a.cols);

    for k in 0..n {
        loop {
            // Find minimal nonzero |entry| in the trailing block.
            let mut pivot: Option<(usize, usize)> = None;
            let mut best: Option<BigInt> = None;
            for i in k..s.rows {
                for j in k..s.cols {
                    if s[(i, j)].is_zero() {
                        continue;
                    }
                    let a = abs(&s[(i, j)]);
                    if best.as_ref().map_or(true, |b| &a < b) {
                        best = Some(a);
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                // trailing block fully zero
                return SmithForm { u, s, v };
            };
            s.swap_rows(k, pi);
            u.swap_rows(k, pi);
            s.swap_cols(k, pj);
            v.swap_cols(k, pj);
            if s[(k, k)].is_negative() {
                s.negate_row(k);
                u.negate_row(k);
            }

            // Reduce column k and row k by the pivot.
            let mut dirty = false;
            for i in k + 1..s.rows {
                if s[(i, k)].is_zero() {
                    continue;
                }
                let q = div_round(&s[(i, k)], &s[(k, k)]);
                if !q.is_zero() {
                    let c = -q;
                    s.add_row_multiple(i, k, &c);
                    u.add_row_multiple(i, k, &c);
                }
                if !s[(i, k)].is_zero() {
                    dirty = true;
                }
            }
            for j in k + 1..s.cols {
                if s[(k, j)].is_zero() {
                    continue;
                }
                let q = div_round(&s[(k, j)], &s[(k, k)]);
                if !q.is_zero() {
                    let c = -q;
                    s.add_col_multiple(j, k, &c);
                    v.add_col_multiple(j, k, &c);
                }
                if !s[(k, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue; // smaller remainders exist; pick a new pivot
            }

            // Column and row are clear. Enforce divisibility of the trailing
            // block by the pivot.
            let mut offender = None;
            'scan: for i in k + 1..s.rows {
                for j in k + 1..s.cols {
                    if !(&s[(i, j)] % &s[(k, k)]).is_zero() {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    // Fold row i into row k and restart the reduction.
                    let one = BigInt::from(1);
                    s.add_row_multiple(k, i, &one);
                    u.add_row_multiple(k, i, &one);
                }
                None => break,
            }
        }
    }
    SmithForm { u, s, v }
}

/// Rounded division: quotient q minimizing |a - q b|.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = (a / b, a % b);
    let two_r = BigInt::from(2) * r.abs();
    if two_r > b.abs() {
        if (a.is_negative()) ^ (b.is_negative()) {
            q - 1
        } else {
            q + 1
        }
    } else {
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn check(a: &IntegerMatrix) -> SmithForm {
        let f = smith_normal_form(a);
        // U A V = S
        assert_eq!(f.u.mul(a).mul(&f.v), f.s, "UAV != S");
        // unimodular
        assert_eq!(abs(&f.u.det()), BigInt::one());
        assert_eq!(abs(&f.v.det()), BigInt::one());
        // diagonal, nonnegative, divisibility chain
        let n = f.s.rows.min(f.s.cols);
        for i in 0..f.s.rows {
            for j in 0..f.s.cols {
                if i != j {
                    assert!(f.s[(i, j)].is_zero());
                }
            }
        }
        for i in 0..n.saturating_sub(1) {
            let (d1, d2) = (&f.s[(i, i)], &f.s[(i + 1, i + 1)]);
            assert!(!d1.is_negative());
            if !d1.is_zero() {
                assert!((d2 % d1).is_zero(), "divisibility chain broken");
            } else {
                assert!(d2.is_zero());
            }
        }
        f
    }

    #[test]
    fn snf_elementary() {
        let a = IntegerMatrix::from_rows(vec![vec![2, 0], vec![0, 3]]);
        let f = check(&a);
        assert_eq!(f.s[(0, 0)], BigInt::one());
        assert_eq!(f.s[(1, 1)], BigInt::from(6));
    }

    #[test]
    fn snf_identity() {
        let a = IntegerMatrix::identity(4);
        let f = check(&a);
        assert_eq!(f.s, IntegerMatrix::identity(4));
        assert_eq!(f.u, IntegerMatrix::identity(4));
        assert_eq!(f.v, IntegerMatrix::identity(4));
    }

    #[test]
    fn snf_rectangular_and_known() {
        let a = IntegerMatrix::from_rows(vec![
            vec![-6, 111, -36, 6],
            vec![5, -672, 210, 74],
            vec![0, -255, 81, 24],
            vec![-7, 255, -81, -10],
        ]);
        let f = check(&a);
        let d: Vec<BigInt> = (0..4).map(|i| f.s[(i, i)].clone()).collect();
        assert_eq!(
            d,
            vec![
                BigInt::one(),
                BigInt::from(3),
                BigInt::from(21),
                BigInt::zero()
            ]
        );

        let b = IntegerMatrix::from_rows(vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
        check(&b);
    }

    #[test]
    fn snf_random_self_check() {
        // deterministic pseudo-random 6x6 matrices
        let mut state = 0x12345678u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) % 19) as i64 - 9
        };
        for _ in 0..10 {
            let rows: Vec<Vec<i64>> = (0..6).map(|_| (0..6).map(|_| next()).collect()).collect();
            check(&IntegerMatrix::from_rows(rows));
        }
    }
}
