//! Exact rank over the rationals by fraction-free integer elimination.
//!
//! Rows are kept primitive (divided by their content) after each update, so the
//! rank agrees with rank over Q. The fast path runs in `i64` with checked
//! arithmetic and falls back to `BigInt` on overflow.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

pub fn rank(rows: &[Vec<i64>]) -> usize {
    let mut work: Vec<Vec<i64>> = rows.iter().filter(|r| r.iter().any(|&x| x != 0)).cloned().collect();
    if let Some(r) = rank_i64(&mut work) {
        return r;
    }
    let mut big: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    rank_big(&mut big)
}

fn rank_i64(m: &mut [Vec<i64>]) -> Option<usize> {
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&i| m[i][col] != 0) else { continue };
        m.swap(rank, p);
        let pivot_row = m[rank].clone();
        let pv = pivot_row[col];
        for row in m.iter_mut().skip(rank + 1) {
            let f = row[col];
            if f == 0 {
                continue;
            }
            let g = pv.gcd(&f);
            let (a, b) = (pv / g, f / g);
            let mut content = 0i64;
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                *x = x.checked_mul(a)?.checked_sub(y.checked_mul(b)?)?;
                content = content.gcd(x);
            }
            if content > 1 {
                row.iter_mut().for_each(|x| *x /= content);
            }
        }
        rank += 1;
    }
    Some(rank)
}

fn rank_big(m: &mut [Vec<BigInt>]) -> usize {
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(rank, p);
        let pivot_row = m[rank].clone();
        let pv = pivot_row[col].clone();
        for row in m.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let g = pv.gcd(&row[col]);
            let (a, b) = (&pv / &g, &row[col] / &g);
            let mut content = BigInt::zero();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = &*x * &a - y * &b;
                content = content.gcd(x);
            }
            if content.abs() > BigInt::from(1) {
                row.iter_mut().for_each(|x| *x = &*x / &content);
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ranks() {
        assert_eq!(rank(&[]), 0);
        assert_eq!(rank(&[vec![0, 0], vec![0, 0]]), 0);
        assert_eq!(rank(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(rank(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]), 2);
        assert_eq!(rank(&[vec![2, 0, 0], vec![0, 3, 0], vec![0, 0, 5]]), 3);
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = i64::MAX / 2;
        let rows = vec![vec![big, 3, 1], vec![3, big, 1], vec![1, 1, big]];
        let mut work = rows.clone();
        assert!(rank_i64(&mut work).is_none());
        assert_eq!(rank(&rows), 3);
    }

    #[test]
    fn both_paths_agree() {
        let rows = vec![vec![1, -1, 0, 0], vec![0, 1, -1, 0], vec![1, 0, -1, 0], vec![0, 0, 1, -1]];
        let mut big: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        assert_eq!(rank(&rows), rank_big(&mut big));
        assert_eq!(rank(&rows), 3);
    }
}
