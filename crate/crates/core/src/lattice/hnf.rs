use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{IntMatrix, LatticeError, UnimodularMap};

/// Row-style Hermite normal form: returns `(H, U, pivots)` with `H = U·A`,
/// `U` unimodular, `H` in upper echelon form with positive pivots and the
/// entries above each pivot reduced into `[0, pivot)`. `pivots[r]` is the
/// pivot column of row `r`; rows past `pivots.len()` are zero.
pub fn row_echelon(a: &IntMatrix) -> (IntMatrix, IntMatrix, Vec<usize>) {
    let m = a.nrows();
    let n = a.ncols();
    let mut h = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        if r == m {
            break;
        }
        loop {
            // smallest nonzero |entry| at or below row r
            let best = (r..m)
                .filter(|&i| !h.get(i, col).is_zero())
                .min_by(|&i, &j| h.get(i, col).abs().cmp(&h.get(j, col).abs()));
            let Some(best) = best else { break };
            swap_rows(&mut h, &mut u, r, best);
            let mut done = true;
            for i in r + 1..m {
                if h.get(i, col).is_zero() {
                    continue;
                }
                let q = h.get(i, col).div_floor(h.get(r, col));
                sub_row(&mut h, &mut u, i, r, &q);
                if !h.get(i, col).is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h.get(r, col).is_zero() {
            continue;
        }
        if h.get(r, col).is_negative() {
            negate_row(&mut h, &mut u, r);
        }
        for i in 0..r {
            let q = h.get(i, col).div_floor(h.get(r, col));
            if !q.is_zero() {
                sub_row(&mut h, &mut u, i, r, &q);
            }
        }
        pivots.push(col);
        r += 1;
    }
    (h, u, pivots)
}

fn swap_rows(h: &mut IntMatrix, u: &mut IntMatrix, i: usize, j: usize) {
    if i != j {
        h.rows_mut().swap(i, j);
        u.rows_mut().swap(i, j);
    }
}

fn negate_row(h: &mut IntMatrix, u: &mut IntMatrix, i: usize) {
    for m in [h, u] {
        for x in m.rows_mut()[i].iter_mut() {
            *x = -&*x;
        }
    }
}

/// row_i -= q * row_r
fn sub_row(h: &mut IntMatrix, u: &mut IntMatrix, i: usize, r: usize, q: &BigInt) {
    for m in [h, u] {
        let src = m.rows()[r].clone();
        for (x, s) in m.rows_mut()[i].iter_mut().zip(&src) {
            *x -= q * s;
        }
    }
}

fn reverse_both(a: &IntMatrix) -> IntMatrix {
    IntMatrix::new(
        a.rows()
            .iter()
            .rev()
            .map(|r| r.iter().rev().cloned().collect())
            .collect(),
    )
}

/// Column-style Hermite normal form of a full-row-rank matrix: `H = U·A` is
/// lower triangular (staircase for non-square input) with positive pivots,
/// and every entry to the left of a pivot position is reduced modulo the
/// pivot of its column.
///
/// Computed by conjugating the row-style form with the reversal permutation.
pub fn hermite_normal_form(a: &IntMatrix) -> Result<(IntMatrix, UnimodularMap), LatticeError> {
    let k = a.nrows();
    let (h_rev, u_rev, pivots) = row_echelon(&reverse_both(a));
    if pivots.len() < k {
        return Err(LatticeError::RankDeficient);
    }
    let h = reverse_both(&h_rev);
    let u = reverse_both(&u_rev);
    debug_assert_eq!(u.mul(a), h);
    let u = UnimodularMap::new(u).expect("row operations are unimodular");
    Ok((h, u))
}
