//! Fraction-free exact linear algebra over the integers (Bareiss
//! elimination), plus rational solving built on top of it. All ranks and
//! solutions are exact; no floating point anywhere.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Rank of an integer matrix by single-step Bareiss elimination.
pub fn rank_bareiss(rows: &[Vec<BigInt>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let m = rows.len();
    let n = rows[0].len();
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let mut prev = BigInt::one();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..n {
        if row == m {
            break;
        }
        // Pivot: smallest nonzero magnitude keeps entries small.
        let piv = (row..m)
            .filter(|&i| !a[i][col].is_zero())
            .min_by_key(|&i| a[i][col].magnitude().clone());
        let Some(piv) = piv else { continue };
        a.swap(row, piv);
        for i in row + 1..m {
            for j in col + 1..n {
                let num = &a[row][col] * &a[i][j] - &a[i][col] * &a[row][j];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division not exact");
                a[i][j] = q;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[row][col].clone();
        row += 1;
        rank += 1;
    }
    rank
}

/// Rank of a rational matrix: clear denominators per row, then Bareiss.
pub fn rank_rational(rows: &[Vec<BigRational>]) -> usize {
    let cleared: Vec<Vec<BigInt>> = rows.iter().map(|r| clear_denominators(r)).collect();
    rank_bareiss(&cleared)
}

/// Scale a rational row by the lcm of its denominators.
pub fn clear_denominators(row: &[BigRational]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for q in row {
        l = l.lcm(q.denom());
    }
    row.iter().map(|q| q.numer() * (&l / q.denom())).collect()
}

/// Solve A x = b exactly over Q by fraction-free Gauss–Jordan on the
/// augmented matrix. Returns None if the system is inconsistent; if the
/// solution space is positive-dimensional, free variables are set to 0.
pub fn solve_rational(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let m = a.len();
    if m == 0 {
        return Some(Vec::new());
    }
    let n = a[0].len();
    let mut aug: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut row = 0;
    for col in 0..n {
        if row == m {
            break;
        }
        let Some(piv) = (row..m).find(|&i| !aug[i][col].is_zero()) else { continue };
        aug.swap(row, piv);
        let inv = aug[row][col].recip();
        for j in col..=n {
            let v = &aug[row][j] * &inv;
            aug[row][j] = v;
        }
        for i in 0..m {
            if i != row && !aug[i][col].is_zero() {
                let f = aug[i][col].clone();
                for j in col..=n {
                    let v = &aug[i][j] - &f * &aug[row][j];
                    aug[i][j] = v;
                }
            }
        }
        pivots.push((row, col));
        row += 1;
    }
    // Inconsistency check.
    for i in row..m {
        if !aug[i][n].is_zero() {
            return None;
        }
    }
    let mut x = vec![BigRational::zero(); n];
    for &(r, c) in &pivots {
        x[c] = aug[r][n].clone();
    }
    Some(x)
}

/// Express `target` in the rational span of `basis` (each a vector of equal
/// length). Returns coefficients if the target lies in the span.
pub fn in_span(basis: &[Vec<BigRational>], target: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = target.len();
    // Columns are basis vectors.
    let a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| basis.iter().map(|v| v[i].clone()).collect())
        .collect();
    let b: Vec<BigRational> = target.to_vec();
    let x = solve_rational(&a, &b)?;
    // Verify (free variables were zeroed; solve guarantees consistency, but
    // double-check exactly).
    for i in 0..n {
        let mut s = BigRational::zero();
        for (j, v) in basis.iter().enumerate() {
            s += &x[j] * &v[i];
        }
        if s != target[i] {
            return None;
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(x: i64) -> BigInt {
        BigInt::from(x)
    }
    fn br(p: i64, q: i64) -> BigRational {
        BigRational::new(bi(p), bi(q))
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_bareiss(&[vec![bi(1), bi(2)], vec![bi(2), bi(4)]]), 1);
        assert_eq!(rank_bareiss(&[vec![bi(1), bi(2)], vec![bi(3), bi(4)]]), 2);
        assert_eq!(
            rank_bareiss(&[
                vec![bi(2), bi(0), bi(1)],
                vec![bi(0), bi(3), bi(1)],
                vec![bi(2), bi(3), bi(2)],
            ]),
            2
        );
        assert_eq!(rank_bareiss(&[vec![bi(0), bi(0)]]), 0);
    }

    #[test]
    fn rank_matches_float_free_oracle() {
        // 4x4 Hilbert-like matrix has full rank.
        let rows: Vec<Vec<BigRational>> = (1..=4)
            .map(|i| (1..=4).map(|j| br(1, i + j - 1)).collect())
            .collect();
        assert_eq!(rank_rational(&rows), 4);
    }

    #[test]
    fn solve_and_span() {
        let a = vec![
            vec![br(1, 1), br(1, 1)],
            vec![br(1, 1), br(-1, 1)],
        ];
        let b = vec![br(3, 1), br(1, 1)];
        let x = solve_rational(&a, &b).unwrap();
        assert_eq!(x, vec![br(2, 1), br(1, 1)]);

        let basis = vec![vec![br(1, 1), br(0, 1), br(1, 1)], vec![br(0, 1), br(1, 1), br(1, 1)]];
        let t = vec![br(2, 1), br(3, 1), br(5, 1)];
        let c = in_span(&basis, &t).unwrap();
        assert_eq!(c, vec![br(2, 1), br(3, 1)]);
        let t2 = vec![br(2, 1), br(3, 1), br(4, 1)];
        assert!(in_span(&basis, &t2).is_none());
    }

    #[test]
    fn inconsistent_system() {
        let a = vec![vec![br(1, 1), br(1, 1)], vec![br(2, 1), br(2, 1)]];
        let b = vec![br(1, 1), br(3, 1)];
        assert!(solve_rational(&a, &b).is_none());
    }
}
