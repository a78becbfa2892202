//! Dense Gaussian elimination over a field context.

use super::ring::Field;

/// Row-major matrix.
pub type Matrix<E> = Vec<Vec<E>>;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn row_reduce<F: Field>(field: &F, m: &mut Matrix<F::Elem>) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !field.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, pr);
        let inv = field.inv(&m[r][c]).unwrap();
        for j in c..cols {
            m[r][j] = field.mul(&m[r][j], &inv);
        }
        for i in 0..rows {
            if i == r || field.is_zero(&m[i][c]) {
                continue;
            }
            let factor = m[i][c].clone();
            for j in c..cols {
                let t = field.mul(&factor, &m[r][j]);
                m[i][j] = field.sub(&m[i][j], &t);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Solves `A x = b` for `A` given by its columns; `None` if inconsistent.
/// Free variables are set to zero.
pub fn solve_columns<F: Field>(
    field: &F,
    columns: &[Vec<F::Elem>],
    rhs: &[F::Elem],
) -> Option<Vec<F::Elem>> {
    let rows = rhs.len();
    let ncols = columns.len();
    let mut m: Matrix<F::Elem> = (0..rows)
        .map(|i| {
            let mut row: Vec<F::Elem> = columns.iter().map(|c| c[i].clone()).collect();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    let pivots = row_reduce(field, &mut m);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![field.zero(); ncols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][ncols].clone();
    }
    Some(x)
}

pub fn rank<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    let mut m = m.clone();
    row_reduce(field, &mut m).len()
}

pub fn determinant<F: Field>(field: &F, m: &Matrix<F::Elem>) -> F::Elem {
    let n = m.len();
    let mut m = m.clone();
    let mut det = field.one();
    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| !field.is_zero(&m[i][c])) else {
            return field.zero();
        };
        if pr != c {
            m.swap(pr, c);
            det = field.neg(&det);
        }
        det = field.mul(&det, &m[c][c]);
        let inv = field.inv(&m[c][c]).unwrap();
        for i in c + 1..n {
            if field.is_zero(&m[i][c]) {
                continue;
            }
            let factor = field.mul(&m[i][c], &inv);
            for j in c..n {
                let t = field.mul(&factor, &m[c][j]);
                m[i][j] = field.sub(&m[i][j], &t);
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ring::{int_rat, Rationals};

    #[test]
    fn solve_and_det() {
        let q = Rationals;
        let cols = vec![vec![int_rat(1), int_rat(1)], vec![int_rat(3), int_rat(4)]];
        let x = solve_columns(&q, &cols, &[int_rat(3), int_rat(0)]).unwrap();
        assert_eq!(x, vec![int_rat(12), int_rat(-3)]);
        let m = vec![vec![int_rat(1), int_rat(3)], vec![int_rat(1), int_rat(4)]];
        assert_eq!(determinant(&q, &m), int_rat(1));
        let sing = vec![vec![int_rat(1), int_rat(2)], vec![int_rat(2), int_rat(4)]];
        assert_eq!(rank(&q, &sing), 1);
        assert!(solve_columns(&q, &[vec![int_rat(1), int_rat(2)]], &[int_rat(1), int_rat(1)]).is_none());
    }
}
