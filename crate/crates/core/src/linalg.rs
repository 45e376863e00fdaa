//! Small exact linear algebra helpers over arbitrary-precision rationals.

use num_rational::BigRational;
use num_traits::Zero;

/// Row-reduces `rows` in place and returns the rank. Rows may have any
/// common length.
pub fn rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let prow = &head[rank];
        for row in tail {
            if !row[col].is_zero() {
                let factor = &row[col] / &prow[col];
                for c in col..ncols {
                    let delta = &factor * &prow[c];
                    row[c] -= delta;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Solves the square system `A x = b` exactly by Gaussian elimination.
/// Returns `None` when `A` is singular.
pub fn solve_square(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = a.len();
    debug_assert!(a.iter().all(|r| r.len() == n));
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = &a[r][col] / &a[col][col];
                for c in col..n {
                    let delta = &factor * &a[col][c];
                    a[r][c] -= delta;
                }
                let delta = &factor * &b[col];
                b[r] -= delta;
            }
        }
    }
    Some(
        (0..n)
            .map(|i| &b[i] / &a[i][i])
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    #[test]
    fn rank_of_dependent_rows() {
        let rows = vec![
            vec![q(1), q(0), q(1)],
            vec![q(0), q(1), q(1)],
            vec![q(1), q(1), q(2)],
        ];
        assert_eq!(rank(rows), 2);
        assert_eq!(rank(vec![vec![q(0), q(0)]]), 0);
    }

    #[test]
    fn solve_small_system() {
        // x + y = 3, x - y = 1
        let a = vec![vec![q(1), q(1)], vec![q(1), q(-1)]];
        let b = vec![q(3), q(1)];
        assert_eq!(solve_square(a, b).unwrap(), vec![q(2), q(1)]);
    }

    #[test]
    fn solve_detects_singular() {
        let a = vec![vec![q(1), q(1)], vec![q(2), q(2)]];
        assert!(solve_square(a, vec![q(1), q(2)]).is_none());
    }
}
