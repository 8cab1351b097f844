//! Exact Gaussian elimination over `Q`.

#![allow(clippy::needless_range_loop)]

use num_traits::{One, Zero};

use crate::rat::Q;

pub fn det(mut m: Vec<Vec<Q>>) -> Q {
    let n = m.len();
    let mut d = Q::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Q::zero();
        };
        if piv != col {
            m.swap(piv, col);
            d = -d;
        }
        let p = m[col][col].clone();
        d *= &p;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &p;
            for c in col..n {
                let v = &f * &m[col][c];
                m[r][c] -= v;
            }
        }
    }
    d
}

/// Solves `A x = b`; `None` when `A` is singular.
pub fn solve(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let n = a.len();
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(piv, col);
        let p = m[col][col].clone();
        for c in col..=n {
            m[col][c] = &m[col][c] / &p;
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for c in col..=n {
                let v = &f * &m[col][c];
                m[r][c] -= v;
            }
        }
    }
    Some(m.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Inverse matrix; `None` when singular.
pub fn inverse(a: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = a.len();
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(piv, col);
        let p = m[col][col].clone();
        for c in 0..2 * n {
            m[col][c] = &m[col][c] / &p;
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for c in 0..2 * n {
                let v = &f * &m[col][c];
                m[r][c] -= v;
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Rank of a rectangular matrix.
pub fn rank(rows: &[Vec<Q>]) -> usize {
    let mut m = rows.to_vec();
    let nrows = m.len();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for col in 0..ncols {
        let Some(piv) = (r..nrows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(piv, r);
        let p = m[r][col].clone();
        for i in r + 1..nrows {
            if m[i][col].is_zero() {
                continue;
            }
            let f = &m[i][col] / &p;
            for c in col..ncols {
                let v = &f * &m[r][c];
                m[i][c] -= v;
            }
        }
        r += 1;
        if r == nrows {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::q;

    #[test]
    fn det_solve_inverse() {
        let a = vec![vec![q(2), q(1)], vec![q(1), q(3)]];
        assert_eq!(det(a.clone()), q(5));
        let x = solve(&a, &[q(3), q(4)]).unwrap();
        assert_eq!(x, vec![q(1), q(1)]);
        let inv = inverse(&a).unwrap();
        assert_eq!(inv[0][0], crate::rat::qf(3, 5));
        let s = vec![vec![q(1), q(2)], vec![q(2), q(4)]];
        assert!(solve(&s, &[q(0), q(0)]).is_none());
        assert_eq!(rank(&s), 1);
    }
}
