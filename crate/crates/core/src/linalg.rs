//! Exact row reduction over the rationals.

use num_traits::{One, Zero};

use crate::scalar::{zeros, Scalar, Vector};

/// Reduced row-echelon form of `rows` (each of length `ncols`).
/// Zero rows are dropped; the returned pivots are the pivot columns in order.
pub fn rref(mut rows: Vec<Vector>, ncols: usize) -> (Vec<Vector>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Scalar::one() / &rows[r][col];
        for x in rows[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(col) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank(rows: &[Vector], ncols: usize) -> usize {
    rref(rows.to_vec(), ncols).1.len()
}

/// Basis of `{x : A x = 0}` where `A` has the given rows.
pub fn nullspace(rows: &[Vector], ncols: usize) -> Vec<Vector> {
    let (r, pivots) = rref(rows.to_vec(), ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = zeros(ncols);
            v[f] = Scalar::one();
            for (row, &p) in r.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Solves `A x = b`. Returns a particular solution and a kernel basis, or
/// `None` when the system is inconsistent.
pub fn solve(rows: &[Vector], ncols: usize, b: &[Scalar]) -> Option<(Vector, Vec<Vector>)> {
    assert_eq!(rows.len(), b.len());
    let aug: Vec<Vector> = rows
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = zeros(ncols);
    for (row, &p) in r.iter().zip(&pivots) {
        x[p] = row[ncols].clone();
    }
    Some((x, nullspace(rows, ncols)))
}

pub fn inverse(m: &[Vector]) -> Option<Vec<Vector>> {
    let n = m.len();
    let aug: Vec<Vector> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }));
            r
        })
        .collect();
    let (r, pivots) = rref(aug, 2 * n);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(r.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub fn determinant(m: &[Vector]) -> Scalar {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Scalar::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !a[i][col].is_zero()) else {
            return Scalar::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let piv = a[col][col].clone();
        det *= &piv;
        for i in col + 1..n {
            if a[i][col].is_zero() {
                continue;
            }
            let f = &a[i][col] / &piv;
            for j in col..n {
                let y = a[col][j].clone();
                a[i][j] -= &f * y;
            }
        }
    }
    det
}

/// Coordinates of `v` in the (independent) family `basis`, if `v` lies in its span.
pub fn coordinates(basis: &[Vector], v: &[Scalar]) -> Option<Vector> {
    let n = v.len();
    let k = basis.len();
    let rows: Vec<Vector> = (0..n)
        .map(|i| basis.iter().map(|b| b[i].clone()).collect())
        .collect();
    let (x, _) = solve(&rows, k, v)?;
    Some(x)
}

pub fn mat_mul(a: &[Vector], b: &[Vector]) -> Vec<Vector> {
    let m = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            let mut out = zeros(m);
            for (x, brow) in row.iter().zip(b) {
                crate::scalar::add_scaled(&mut out, x, brow);
            }
            out
        })
        .collect()
}

pub fn mat_vec(a: &[Vector], v: &[Scalar]) -> Vector {
    a.iter().map(|row| crate::scalar::dot(row, v)).collect()
}

pub fn transpose(a: &[Vector]) -> Vec<Vector> {
    let m = a.first().map_or(0, Vec::len);
    (0..m).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    fn m(rows: &[&[i64]]) -> Vec<Vector> {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn rref_drops_dependent_rows() {
        let (r, p) = rref(m(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]), 3);
        assert_eq!(p, vec![0, 1]);
        assert_eq!(r, m(&[&[1, 0, 1], &[0, 1, 1]]));
    }

    #[test]
    fn nullspace_is_annihilated() {
        let a = m(&[&[1, 2, 3, 4], &[0, 1, -1, 2]]);
        let ns = nullspace(&a, 4);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(mat_vec(&a, v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn solve_detects_inconsistency() {
        let a = m(&[&[1, 1], &[2, 2]]);
        assert!(solve(&a, 2, &[int(1), int(3)]).is_none());
        let (x, k) = solve(&a, 2, &[int(1), int(2)]).unwrap();
        assert_eq!(mat_vec(&a, &x), vec![int(1), int(2)]);
        assert_eq!(k.len(), 1);
    }

    #[test]
    fn inverse_and_determinant() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(mat_mul(&a, &inv), m(&[&[1, 0], &[0, 1]]));
        assert_eq!(determinant(&a), int(1));
        assert_eq!(determinant(&m(&[&[0, 1], &[1, 0]])), int(-1));
        assert!(inverse(&m(&[&[1, 2], &[2, 4]])).is_none());
        assert_eq!(determinant(&[vec![frac(1, 2)]]), frac(1, 2));
    }

    #[test]
    fn coordinates_in_basis() {
        let basis = m(&[&[1, 1, 0], &[0, 1, 1]]);
        let c = coordinates(&basis, &[int(2), int(5), int(3)]).unwrap();
        assert_eq!(c, vec![int(2), int(3)]);
        assert!(coordinates(&basis, &[int(1), int(0), int(0)]).is_none());
    }
}
