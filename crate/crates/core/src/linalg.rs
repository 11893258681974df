//! Exact Gaussian elimination over rationals: rank, unique solve, null space,
//! and affine-hull membership.  Sizes here are tiny (dimension <= 9), so the
//! textbook algorithm is the right tool.

use crate::rational::Rat;
use num_traits::Zero;

/// Reduced row echelon form in place; returns pivot column per row rank.
fn rref(rows: &mut [Vec<Rat>]) -> Vec<usize> {
    let nrows = rows.len();
    if nrows == 0 {
        return vec![];
    }
    let ncols = rows[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].clone();
        for v in rows[r].iter_mut() {
            *v = &*v / &inv;
        }
        for i in 0..nrows {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let pivot_row = rows[r].clone();
                for (x, p) in rows[i].iter_mut().zip(&pivot_row) {
                    let sub = p * &f;
                    *x = &*x - sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == nrows {
            break;
        }
    }
    pivots
}

pub fn rank(matrix: &[Vec<Rat>]) -> usize {
    let mut m = matrix.to_vec();
    rref(&mut m).len()
}

/// Solves `A x = b`; `Some(x)` only when the solution exists and is unique.
pub fn solve_unique(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.first().map_or(0, |r| r.len());
    let mut aug: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    // inconsistent if a pivot lands in the rhs column
    if pivots.last() == Some(&n) {
        return None;
    }
    if pivots.len() < n {
        return None; // underdetermined
    }
    let mut x = vec![Rat::zero(); n];
    for (row, &c) in pivots.iter().enumerate() {
        x[c] = aug[row][n].clone();
    }
    Some(x)
}

/// Basis of the null space of `A`.
pub fn null_space(a: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let n = a.first().map_or(0, |r| r.len());
    let mut m = a.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![Rat::zero(); n];
            v[fc] = Rat::from_integer(1.into());
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row][fc].clone();
            }
            v
        })
        .collect()
}

/// True if `q` lies in the affine hull of `points`.
pub fn affine_hull_contains(points: &[Vec<Rat>], q: &[Rat]) -> bool {
    let Some(base) = points.first() else {
        return false;
    };
    let diffs: Vec<Vec<Rat>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    let qd: Vec<Rat> = q.iter().zip(base).map(|(a, b)| a - b).collect();
    let r0 = rank(&diffs);
    let mut with = diffs;
    with.push(qd);
    rank(&with) == r0
}

/// Dimension of the affine hull of `points` (-1 for the empty set).
pub fn affine_dim(points: &[Vec<Rat>]) -> isize {
    let Some(base) = points.first() else {
        return -1;
    };
    let diffs: Vec<Vec<Rat>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    rank(&diffs) as isize
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    #[test]
    fn solve_2x2() {
        let a = vec![vec![rat_int(1), rat_int(1)], vec![rat_int(1), rat_int(-1)]];
        let b = vec![rat_int(3), rat_int(1)];
        assert_eq!(solve_unique(&a, &b), Some(vec![rat_int(2), rat_int(1)]));
    }

    #[test]
    fn solve_rejects_singular_and_inconsistent() {
        let a = vec![vec![rat_int(1), rat_int(1)], vec![rat_int(2), rat_int(2)]];
        assert_eq!(solve_unique(&a, &[rat_int(1), rat_int(2)]), None);
        assert_eq!(solve_unique(&a, &[rat_int(1), rat_int(3)]), None);
    }

    #[test]
    fn null_space_of_plane() {
        let a = vec![vec![rat_int(1), rat_int(1), rat_int(1)]];
        let ns = null_space(&a);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            let dot: Rat = v.iter().cloned().sum();
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn affine_hull() {
        let pts = vec![
            vec![rat_int(0), rat_int(0)],
            vec![rat_int(1), rat_int(1)],
        ];
        assert!(affine_hull_contains(&pts, &[rat(1, 2), rat(1, 2)]));
        assert!(!affine_hull_contains(&pts, &[rat(1, 2), rat(1, 3)]));
        assert_eq!(affine_dim(&pts), 1);
    }
}
