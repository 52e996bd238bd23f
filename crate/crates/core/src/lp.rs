//! Dense exact-rational simplex (two-phase, Bland's anti-cycling rule).
//!
//! Solves `min c.x  s.t.  A x = b, x >= 0` with arbitrary-precision
//! rationals. Small and dense on purpose: the one client is the
//! local-witness program, whose instances stay below a few hundred
//! columns. The caller must pass a feasible program; infeasibility is an
//! internal assertion failure rather than an error.

use num_traits::{One, Signed, Zero};

use crate::scalar::Exact;

pub(crate) struct LpOutcome {
    pub value: Exact,
    pub solution: Vec<Exact>,
    /// Column indices of the final basis, one per constraint row.
    pub basis: Vec<usize>,
    /// Dual vector `y` with `A^T y <= c` and `b.y = value`.
    pub dual: Vec<Exact>,
}

pub(crate) fn simplex_min(c: &[Exact], a: &[Vec<Exact>], b: &[Exact]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    assert_eq!(b.len(), m);
    assert!(a.iter().all(|row| row.len() == n));

    // tableau: n real columns, m artificial columns, rhs
    let width = n + m + 1;
    let mut t: Vec<Vec<Exact>> = Vec::with_capacity(m);
    for i in 0..m {
        let mut row: Vec<Exact> = Vec::with_capacity(width);
        row.extend(a[i].iter().cloned());
        for j in 0..m {
            row.push(if i == j { Exact::one() } else { Exact::zero() });
        }
        row.push(b[i].clone());
        if row[width - 1].is_negative() {
            for v in row.iter_mut() {
                *v = -v.clone();
            }
        }
        t.push(row);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    let pivot = |t: &mut Vec<Vec<Exact>>, basis: &mut Vec<usize>, row: usize, col: usize| {
        let piv = t[row][col].clone();
        for v in t[row].iter_mut() {
            *v = v.clone() / piv.clone();
        }
        for i in 0..t.len() {
            if i != row && !t[i][col].is_zero() {
                let factor = t[i][col].clone();
                for j in 0..t[i].len() {
                    let delta = factor.clone() * t[row][j].clone();
                    t[i][j] = t[i][j].clone() - delta;
                }
            }
        }
        basis[row] = col;
    };

    // Bland: entering = lowest-index column with negative reduced cost;
    // leaving = minimum ratio, lowest basic index on ties. `cols` limits
    // the entering candidates (phase 2 never readmits an artificial).
    let run = |t: &mut Vec<Vec<Exact>>,
               basis: &mut Vec<usize>,
               cols: usize,
               cost: &dyn Fn(usize) -> Exact| loop {
        let mut entering = None;
        'cols: for j in 0..cols {
            if basis.contains(&j) {
                continue;
            }
            let mut reduced = cost(j);
            for i in 0..m {
                if !t[i][j].is_zero() {
                    reduced = reduced - cost(basis[i]) * t[i][j].clone();
                }
            }
            if reduced.is_negative() {
                entering = Some(j);
                break 'cols;
            }
        }
        let Some(col) = entering else {
            return;
        };
        let mut leave: Option<(usize, Exact)> = None;
        for i in 0..m {
            if t[i][col].is_positive() {
                let ratio = t[i][width - 1].clone() / t[i][col].clone();
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && basis[i] < basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let (row, _) = leave.expect("objective bounded below on a feasible program");
        pivot(t, basis, row, col);
    };

    // phase 1: drive the artificials to zero
    run(&mut t, &mut basis, n + m, &|j| {
        if j >= n {
            Exact::one()
        } else {
            Exact::zero()
        }
    });
    let infeasibility: Exact = (0..m)
        .filter(|&i| basis[i] >= n)
        .map(|i| t[i][width - 1].clone())
        .fold(Exact::zero(), |acc, v| acc + v);
    assert!(infeasibility.is_zero(), "program must be feasible");

    // drive degenerate artificials out of the basis; an all-zero row over
    // the real columns is a redundant constraint and may keep its
    // artificial (at value zero, with zero dual impact)
    for row in 0..m {
        if basis[row] >= n {
            if let Some(col) = (0..n).find(|&j| !t[row][j].is_zero()) {
                pivot(&mut t, &mut basis, row, col);
            }
        }
    }

    // phase 2 on the real objective; artificial columns may not re-enter
    // (a leftover basic artificial sits on a redundant row at value zero)
    run(&mut t, &mut basis, n, &|j| {
        if j < n {
            c[j].clone()
        } else {
            Exact::zero()
        }
    });

    let mut solution = vec![Exact::zero(); n];
    for i in 0..m {
        if basis[i] < n {
            solution[basis[i]] = t[i][width - 1].clone();
        }
    }
    let value = c
        .iter()
        .zip(&solution)
        .fold(Exact::zero(), |acc, (ci, xi)| acc + ci.clone() * xi.clone());

    // dual from the final basis: solve B^T y = c_B (artificial columns are
    // unit vectors with phase-2 cost replaced by 0 -- they sit on
    // redundant rows, so any consistent y works; 0 keeps b.y intact)
    let cb: Vec<Exact> = basis
        .iter()
        .map(|&j| if j < n { c[j].clone() } else { Exact::zero() })
        .collect();
    let bcols: Vec<Vec<Exact>> = basis
        .iter()
        .map(|&j| {
            (0..m)
                .map(|i| {
                    if j < n {
                        a[i][j].clone()
                    } else if i == j - n {
                        Exact::one()
                    } else {
                        Exact::zero()
                    }
                })
                .collect()
        })
        .collect();
    let dual = solve_transposed(&bcols, &cb);

    LpOutcome {
        value,
        solution,
        basis,
        dual,
    }
}

/// Solves `B^T y = c` where `cols[k]` is the k-th column of `B`.
fn solve_transposed(cols: &[Vec<Exact>], c: &[Exact]) -> Vec<Exact> {
    let m = c.len();
    // row k of B^T is cols[k]
    let mut mat: Vec<Vec<Exact>> = (0..m)
        .map(|k| {
            let mut row = cols[k].clone();
            row.push(c[k].clone());
            row
        })
        .collect();
    // Gaussian elimination with exact pivoting
    let mut pivot_col_of_row = vec![usize::MAX; m];
    let mut used_rows = vec![false; m];
    for col in 0..m {
        let Some(r) = (0..m).find(|&r| !used_rows[r] && !mat[r][col].is_zero()) else {
            continue;
        };
        used_rows[r] = true;
        pivot_col_of_row[r] = col;
        let piv = mat[r][col].clone();
        for v in mat[r].iter_mut() {
            *v = v.clone() / piv.clone();
        }
        for i in 0..m {
            if i != r && !mat[i][col].is_zero() {
                let factor = mat[i][col].clone();
                for j in 0..=m {
                    let delta = factor.clone() * mat[r][j].clone();
                    mat[i][j] = mat[i][j].clone() - delta;
                }
            }
        }
    }
    let mut y = vec![Exact::zero(); m];
    for r in 0..m {
        if pivot_col_of_row[r] != usize::MAX {
            y[pivot_col_of_row[r]] = mat[r][m].clone();
        } else {
            // free variable on a dependent system: zero is consistent
            assert!(
                mat[r][m].is_zero(),
                "dual system must be consistent at the optimal basis"
            );
        }
    }
    y
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::exact;

    #[test]
    fn tiny_equality_program() {
        // min x + 2y  s.t.  x + y = 1
        let c = vec![exact(1, 1), exact(2, 1)];
        let a = vec![vec![exact(1, 1), exact(1, 1)]];
        let b = vec![exact(1, 1)];
        let out = simplex_min(&c, &a, &b);
        assert_eq!(out.value, exact(1, 1));
        assert_eq!(out.solution, vec![exact(1, 1), exact(0, 1)]);
        assert_eq!(out.dual, vec![exact(1, 1)]);
    }

    #[test]
    fn degenerate_and_redundant_rows() {
        // min x + y  s.t.  x + y = 1 (twice), x - y = 0
        let c = vec![exact(1, 1), exact(1, 1)];
        let a = vec![
            vec![exact(1, 1), exact(1, 1)],
            vec![exact(1, 1), exact(1, 1)],
            vec![exact(1, 1), exact(-1, 1)],
        ];
        let b = vec![exact(1, 1), exact(1, 1), exact(0, 1)];
        let out = simplex_min(&c, &a, &b);
        assert_eq!(out.value, exact(1, 1));
        assert_eq!(out.solution, vec![exact(1, 2), exact(1, 2)]);
        // strong duality on the (redundant) system
        let by: Exact = b
            .iter()
            .zip(&out.dual)
            .fold(exact(0, 1), |acc, (bi, yi)| acc + bi.clone() * yi.clone());
        assert_eq!(by, out.value);
    }
}
