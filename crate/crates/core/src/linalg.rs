//! Linear systems over an exact field and over `F_p`.

use crate::field::{Field, Modular};

/// Row echelon data of a system reduced modulo p.
#[derive(Debug)]
pub struct ModularEchelon {
    /// `(column, original row)` per pivot, in elimination order.
    pub pivots: Vec<(usize, usize)>,
    /// An original row that became `0 = nonzero`, if any.
    pub inconsistent_row: Option<usize>,
    /// Particular solution with free variables set to zero (meaningful when consistent).
    pub solution: Vec<u64>,
}

/// Gauss-Jordan elimination of `[a | b]` over `F_p`.
pub fn echelon_mod(m: &Modular, a: &[Vec<u64>], b: &[u64]) -> ModularEchelon {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut mat: Vec<Vec<u64>> = a.iter().zip(b).map(|(r, &bi)| r.iter().copied().chain([bi]).collect()).collect();
    let mut origin: Vec<usize> = (0..rows).collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        let Some(r) = (rank..rows).find(|&r| mat[r][col] != 0) else {
            continue;
        };
        mat.swap(rank, r);
        origin.swap(rank, r);
        let inv = m.inv(mat[rank][col]).unwrap();
        for v in mat[rank].iter_mut() {
            *v = m.mul(*v, inv);
        }
        let pivot_row = mat[rank].clone();
        for (i, row) in mat.iter_mut().enumerate() {
            if i == rank || row[col] == 0 {
                continue;
            }
            let factor = row[col];
            for (v, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                *v = m.sub(*v, m.mul(factor, *p));
            }
        }
        pivots.push((col, origin[rank]));
        rank += 1;
    }
    let inconsistent_row = (rank..rows).find(|&r| mat[r][cols] != 0).map(|r| origin[r]);
    let mut solution = vec![0; cols];
    for (k, (col, _)) in pivots.iter().enumerate() {
        solution[*col] = mat[k][cols];
    }
    ModularEchelon { pivots, inconsistent_row, solution }
}

/// Solve `a·x = b` exactly. Returns `None` when the system is inconsistent;
/// free variables are set to zero.
pub fn solve<F: Field>(a: &[Vec<F>], b: &[F]) -> Option<Vec<F>> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut mat: Vec<Vec<F>> = a.iter().zip(b).map(|(r, bi)| r.iter().cloned().chain([bi.clone()]).collect()).collect();
    let mut pivot_cols = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        let best = (rank..rows).filter(|&r| !mat[r][col].is_zero()).min_by_key(|&r| mat[r][col].weight());
        let Some(r) = best else { continue };
        mat.swap(rank, r);
        let inv = mat[rank][col].inverse().unwrap();
        for v in mat[rank].iter_mut() {
            if !v.is_zero() {
                *v = v.times(&inv);
            }
        }
        let pivot_row = mat[rank].clone();
        for (i, row) in mat.iter_mut().enumerate() {
            if i == rank || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                if !p.is_zero() {
                    *v = v.minus(&factor.times(p));
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
    }
    if (rank..rows).any(|r| !mat[r][cols].is_zero()) {
        return None;
    }
    let mut x = vec![F::zero(); cols];
    for (k, col) in pivot_cols.iter().enumerate() {
        x[*col] = mat[k][cols].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, q_pow, ScalarK};

    #[test]
    fn exact_two_by_two() {
        // [1 q; 1 1] x = [1 + q, 2]
        let a = vec![vec![int(1), q_pow(1)], vec![int(1), int(1)]];
        let b = vec![int(1).plus(&q_pow(1)), int(2)];
        let x = solve(&a, &b).unwrap();
        assert_eq!(x, vec![int(1), int(1)]);
        let a = vec![vec![int(1)], vec![int(1)]];
        let b: Vec<ScalarK> = vec![int(1), int(2)];
        assert!(solve(&a, &b).is_none());
    }

    #[test]
    fn modular_detects_inconsistency() {
        let m = Modular::get();
        let e = echelon_mod(m, &[vec![1, 1], vec![2, 2]], &[1, 3]);
        assert_eq!(e.pivots.len(), 1);
        assert_eq!(e.inconsistent_row, Some(1));
        let e = echelon_mod(m, &[vec![1, 0], vec![0, 2]], &[5, 4]);
        assert_eq!(e.solution, vec![5, 2]);
    }
}
