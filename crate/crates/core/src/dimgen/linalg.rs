//! Exact linear solves over the coefficient field.

use crate::coefficients::RatFunc;
use crate::error::{Error, Result};

/// Solves `A X = B` for square `A` by Gaussian elimination with a nonzero
/// pivot search. `B` is given row by row and may have several columns.
pub fn solve(mut a: Vec<Vec<RatFunc>>, mut b: Vec<Vec<RatFunc>>) -> Result<Vec<Vec<RatFunc>>> {
    let n = a.len();
    assert!(a.iter().all(|r| r.len() == n) && b.len() == n, "square system expected");
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::SingularSystem(format!("no pivot in column {col}")))?;
        a.swap(col, piv);
        b.swap(col, piv);
        let inv = a[col][col].inv()?;
        let (pa, pb) = (a[col].clone(), b[col].clone());
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].mul(&inv);
            for c in col..n {
                a[r][c] = a[r][c].sub(&f.mul(&pa[c]));
            }
            for (x, y) in b[r].iter_mut().zip(&pb) {
                *x = x.sub(&f.mul(y));
            }
        }
    }
    for (i, row) in b.iter_mut().enumerate() {
        let inv = a[i][i].inv()?;
        for x in row.iter_mut() {
            *x = x.mul(&inv);
        }
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> RatFunc {
        s.parse().unwrap()
    }

    #[test]
    fn two_by_two() {
        let a = vec![vec![r("0"), r("q")], vec![r("1"), r("t")]];
        let b = vec![vec![r("q")], vec![r("1+t")]];
        assert_eq!(solve(a, b).unwrap(), vec![vec![r("1")], vec![r("1")]]);
    }

    #[test]
    fn singular() {
        let a = vec![vec![r("q"), r("q")], vec![r("1"), r("1")]];
        assert!(matches!(solve(a, vec![vec![r("1")], vec![r("1")]]), Err(Error::SingularSystem(_))));
    }
}
