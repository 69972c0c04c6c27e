//! Small dense linear-algebra helpers: exact rational nullspaces and a
//! complex least-squares solve.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::algebra::Rational;

/// Basis of `{x : m x = 0}` from reduced row echelon form.
///
/// Basis vector `k` has a one at `free[k]` and zeros at every other free column,
/// so the coordinates of a kernel vector are read off at the free columns.
#[derive(Debug, Clone)]
pub struct Nullspace {
    pub basis: Vec<Vec<Rational>>,
    pub free: Vec<usize>,
}

pub fn nullspace(mut rows: Vec<Vec<Rational>>, ncols: usize) -> Nullspace {
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::one() / &rows[r][col];
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let basis = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -rows[i][f].clone();
            }
            v
        })
        .collect();
    Nullspace { basis, free }
}

/// Least-squares solution of `a x = b` and the residual norm `|a x - b|`.
pub fn least_squares(a: &DMatrix<Complex64>, b: &DVector<Complex64>) -> (DVector<Complex64>, f64) {
    let svd = a.clone().svd(true, true);
    let x = svd
        .solve(b, 1e-12)
        .unwrap_or_else(|_| DVector::zeros(a.ncols()));
    let residual = (a * &x - b).norm();
    (x, residual)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational;

    #[test]
    fn nullspace_of_rank_one_matrix() {
        let rows = vec![
            vec![rational(1), rational(2), rational(3)],
            vec![rational(2), rational(4), rational(6)],
        ];
        let ns = nullspace(rows.clone(), 3);
        assert_eq!(ns.free, vec![1, 2]);
        for v in &ns.basis {
            for row in &rows {
                let dot: Rational = row.iter().zip(v).map(|(a, b)| a * b).sum();
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn full_rank_has_trivial_kernel() {
        let rows = vec![
            vec![rational(1), rational(1)],
            vec![rational(1), rational(-1)],
        ];
        assert!(nullspace(rows, 2).basis.is_empty());
    }

    #[test]
    fn least_squares_exact_system() {
        let a = DMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(1.0, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(2.0, 0.0),
                Complex64::new(-1.0, 0.0),
            ],
        );
        let b = DVector::from_vec(vec![Complex64::new(1.0, 0.0), Complex64::new(0.5, 0.0)]);
        let (x, res) = least_squares(&a, &b);
        assert!(res < 1e-12);
        assert!((x[0].re - 0.5).abs() < 1e-12 && (x[1].re - 0.5).abs() < 1e-12);
    }
}
