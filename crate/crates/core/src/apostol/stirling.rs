use std::cell::RefCell;

use num_bigint::BigInt;
use num_traits::{One, Zero};

thread_local! {
    static TABLE: RefCell<Vec<Vec<BigInt>>> = RefCell::new(vec![vec![BigInt::one()]]);
}

/// Stirling number of the second kind `S(n, k)`.
///
/// Rows are memoised per thread, so concurrent callers never contend.
pub fn stirling2(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    TABLE.with(|t| {
        let mut rows = t.borrow_mut();
        while rows.len() <= n {
            let m = rows.len();
            let prev = &rows[m - 1];
            let row: Vec<BigInt> = (0..=m)
                .map(|j| {
                    let keep = if j < m {
                        prev[j].clone() * BigInt::from(j)
                    } else {
                        BigInt::zero()
                    };
                    let grow = if j > 0 {
                        prev[j - 1].clone()
                    } else {
                        BigInt::zero()
                    };
                    keep + grow
                })
                .collect();
            rows.push(row);
        }
        rows[n][k].clone()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Counts set partitions of `{0..n}` into exactly `k` blocks by
    /// enumerating restricted growth strings.
    fn brute(n: usize, k: usize) -> u64 {
        fn go(i: usize, n: usize, k: usize, max: usize) -> u64 {
            if i == n {
                return u64::from(max == k);
            }
            (0..=max.min(k.saturating_sub(1)))
                .map(|b| go(i + 1, n, k, max.max(b + 1)))
                .sum()
        }
        if n == 0 {
            return u64::from(k == 0);
        }
        go(0, n, k, 0)
    }

    #[test]
    fn matches_partition_count() {
        for n in 0..=8 {
            for k in 0..=n + 1 {
                assert_eq!(stirling2(n, k), BigInt::from(brute(n, k)), "S({n},{k})");
            }
        }
    }

    #[test]
    fn boundary_values() {
        assert_eq!(stirling2(4, 2), BigInt::from(7));
        assert_eq!(stirling2(7, 7), BigInt::one());
        assert_eq!(stirling2(5, 0), BigInt::zero());
        assert_eq!(stirling2(0, 0), BigInt::one());
    }
}
