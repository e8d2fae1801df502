//! Binomial coefficients and lexicographic subset enumeration.

use num_bigint::BigUint;
use num_traits::One;

/// Exact `C(n, k)`; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `C(n, k)` if it fits in a `u128`.
pub fn binomial_u128(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        // acc * (n - i) / (i + 1) stays integral at every step
        let g = num_integer::gcd(acc, i + 1);
        let a = acc / g;
        let b = (n as u128 - i) / ((i + 1) / g);
        acc = a.checked_mul(b)?;
    }
    Some(acc)
}

/// `C(n, k)` as a float via log-gamma free multiplication (exact for small inputs).
pub fn binomial_f64(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// Lexicographic enumeration of the `k`-subsets of `0..n`, as sorted index vectors.
#[derive(Debug, Clone)]
pub struct Combinations {
    n: usize,
    current: Vec<usize>,
    done: bool,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            current: (0..k).collect(),
            done: k > n,
        }
    }

    /// Advances to the next subset in place; returns `false` once exhausted.
    fn advance(&mut self) -> bool {
        let k = self.current.len();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if self.current[i] < self.n - k + i {
                self.current[i] += 1;
                for j in i + 1..k {
                    self.current[j] = self.current[j - 1] + 1;
                }
                return true;
            }
        }
        false
    }

    /// Visits every subset without allocating; stops early when `f` returns `false`.
    pub fn for_each_while(mut self, mut f: impl FnMut(&[usize]) -> bool) {
        if self.done {
            return;
        }
        loop {
            if !f(&self.current) {
                return;
            }
            if !self.advance() {
                return;
            }
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        if !self.advance() {
            self.done = true;
        }
        Some(out)
    }
}

pub fn lcm(a: u128, b: u128) -> Option<u128> {
    if a == 0 || b == 0 {
        return Some(0);
    }
    (a / num_integer::gcd(a, b)).checked_mul(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials_agree_across_representations() {
        for n in 0..40u64 {
            for k in 0..=n + 1 {
                let big = binomial(n, k);
                let small = binomial_u128(n, k).unwrap();
                assert_eq!(big, BigUint::from(small), "C({n},{k})");
            }
        }
        assert_eq!(binomial_u128(6, 3), Some(20));
        assert_eq!(binomial(100, 50).to_string(), "100891344545564193334812497256");
        assert!((binomial_f64(10, 5) - 252.0).abs() < 1e-9);
    }

    #[test]
    fn combinations_are_lexicographic_and_complete() {
        let all: Vec<_> = Combinations::new(4, 2).collect();
        assert_eq!(
            all,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(Combinations::new(3, 0).count(), 1);
        assert_eq!(Combinations::new(2, 3).count(), 0);
        assert_eq!(Combinations::new(10, 4).count(), 210);
    }

    #[test]
    fn lcm_of_block_lengths() {
        assert_eq!(lcm(20, 15), Some(60));
        assert_eq!(lcm(u128::MAX, 2), None);
    }
}
