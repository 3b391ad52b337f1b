//! Exact vector helpers and Gaussian elimination over the rationals.

use num_traits::{One, Zero};

use crate::rational::Q;

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

pub fn sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(a: &[Q], s: &Q) -> Vec<Q> {
    a.iter().map(|x| x * s).collect()
}

/// `a + t (b - a)`.
pub fn lerp(a: &[Q], b: &[Q], t: &Q) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect()
}

pub fn norm2(a: &[Q]) -> Q {
    dot(a, a)
}

/// Reduced row echelon form; returns the nonzero rows and their pivot columns.
pub fn rref(mut rows: Vec<Vec<Q>>, ncols: usize) -> (Vec<Vec<Q>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Q::one() / &rows[r][c];
        rows[r] = rows[r].iter().map(|x| x * &inv).collect();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let pivot_row = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank(rows: Vec<Vec<Q>>, ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

/// Basis of `{x : rows * x = 0}`.
pub fn nullspace(rows: Vec<Vec<Q>>, ncols: usize) -> Vec<Vec<Q>> {
    let (r, pivots) = rref(rows, ncols);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Q::zero(); ncols];
        v[free] = Q::one();
        for (row, &pc) in r.iter().zip(&pivots) {
            v[pc] = -row[free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Scales a nonzero vector so that its first nonzero entry has absolute value 1.
pub fn normalize_direction(v: &[Q]) -> Vec<Q> {
    match v.iter().find(|x| !x.is_zero()) {
        Some(lead) => {
            let s = Q::one() / crate::rational::abs(lead);
            scale(v, &s)
        }
        None => v.to_vec(),
    }
}

/// Solves a square system by elimination; `None` when singular.
pub fn solve(a: Vec<Vec<Q>>, b: Vec<Q>) -> Option<Vec<Q>> {
    let n = b.len();
    let rows: Vec<Vec<Q>> = a
        .into_iter()
        .zip(b)
        .map(|(mut r, bi)| {
            r.push(bi);
            r
        })
        .collect();
    let (r, pivots) = rref(rows, n + 1);
    if pivots.len() != n || pivots.iter().any(|&p| p == n) {
        return None;
    }
    Some(r.iter().map(|row| row[n].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn nullspace_of_plane() {
        let ns = nullspace(vec![vec![int(1), int(1), int(1)]], 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(dot(&v, &[int(1), int(1), int(1)]).is_zero());
        }
    }

    #[test]
    fn solves_and_detects_singular() {
        let x = solve(vec![vec![int(2), int(1)], vec![int(1), int(3)]], vec![int(3), int(4)]).unwrap();
        assert_eq!(x, vec![int(1), int(1)]);
        assert!(solve(vec![vec![int(1), int(2)], vec![int(2), int(4)]], vec![int(1), int(2)]).is_none());
    }
}
