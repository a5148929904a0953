//! Cached big-integer factorials and multinomial coefficients.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

fn factorial_cache() -> &'static Mutex<Vec<BigInt>> {
    static CACHE: OnceLock<Mutex<Vec<BigInt>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(vec![BigInt::one()]))
}

/// `n!` as a big integer. Values are computed once and memoized.
pub fn factorial(n: usize) -> BigInt {
    let mut cache = factorial_cache().lock().expect("factorial cache poisoned");
    while cache.len() <= n {
        let next = cache.last().expect("cache is never empty") * BigInt::from(cache.len());
        cache.push(next);
    }
    cache[n].clone()
}

/// Binomial coefficient `n choose k`; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    multinomial(n, &[k, n - k])
}

/// Multinomial coefficient `n! / (parts[0]! · parts[1]! · …)`.
///
/// Panics unless the parts sum to `n`.
pub fn multinomial(n: usize, parts: &[usize]) -> BigInt {
    assert_eq!(
        parts.iter().sum::<usize>(),
        n,
        "multinomial parts must sum to n"
    );
    let mut denom = BigInt::one();
    for &p in parts {
        denom *= factorial(p);
    }
    factorial(n) / denom
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_factorials() {
        let expect: [u64; 8] = [1, 1, 2, 6, 24, 120, 720, 5040];
        for (n, &e) in expect.iter().enumerate() {
            assert_eq!(factorial(n), BigInt::from(e));
        }
        // 20! still fits u64; 21! does not, so go through strings.
        assert_eq!(factorial(20), BigInt::from(2_432_902_008_176_640_000u64));
        assert_eq!(factorial(21).to_string(), "51090942171709440000");
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(0, 0), BigInt::one());
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(2, 3), BigInt::zero());
        assert_eq!(binomial(6, 2), BigInt::from(15));
    }

    #[test]
    fn multinomials() {
        assert_eq!(multinomial(2, &[0, 2]), BigInt::one());
        assert_eq!(multinomial(4, &[0, 4]), BigInt::one());
        assert_eq!(multinomial(6, &[0, 4, 0, 2]), BigInt::from(15));
        assert_eq!(multinomial(6, &[2, 2, 2]), BigInt::from(90));
    }

    #[test]
    #[should_panic(expected = "sum to n")]
    fn multinomial_checks_total() {
        multinomial(5, &[1, 2]);
    }
}
