//! Dense exact linear algebra over cyclotomic fields.

use twistlab_cyclo::Cyclotomic;

/// Row-reduce in place; returns pivot columns.
fn row_reduce(m: &mut [Vec<Cyclotomic>], cols: usize) -> Vec<usize> {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        for v in m[r].iter_mut() {
            if !v.is_zero() {
                *v = &*v * &inv;
            }
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v = &*v - &(&f * pv);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Solve M x = b for square invertible M; `None` when M is singular.
pub(crate) fn solve(matrix: Vec<Vec<Cyclotomic>>, rhs: Vec<Cyclotomic>) -> Option<Vec<Cyclotomic>> {
    let n = matrix.len();
    let mut aug: Vec<Vec<Cyclotomic>> = matrix
        .into_iter()
        .zip(rhs)
        .map(|(mut row, b)| {
            row.push(b);
            row
        })
        .collect();
    let pivots = row_reduce(&mut aug, n);
    if pivots.len() < n {
        return None;
    }
    Some(aug.into_iter().map(|mut row| row.pop().expect("augmented column")).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: i64) -> Cyclotomic {
        Cyclotomic::from_i64(3, v)
    }

    #[test]
    fn solves_small_system() {
        let m = vec![vec![c(2), c(1)], vec![c(1), c(1)]];
        let x = solve(m, vec![c(3), c(2)]).unwrap();
        assert_eq!(x, vec![c(1), c(1)]);
        assert!(solve(vec![vec![c(1), c(2)], vec![c(2), c(4)]], vec![c(0), c(0)]).is_none());
    }
}
