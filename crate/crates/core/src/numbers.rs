//! Exact integer sequences shared by several modules.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// `C_k = binom(2k, k) / (k + 1)`.
pub fn catalan(k: usize) -> BigUint {
    let mut c = BigUint::one();
    for i in 0..k {
        // C_{i+1} = C_i * 2(2i+1) / (i+2)
        c = c * BigUint::from(2 * (2 * i + 1)) / BigUint::from(i + 2);
    }
    c
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut b = BigUint::one();
    for i in 0..k {
        b = b * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    b
}

/// `binom(n, k)` as `u128`, saturating on overflow. Used for budget checks.
pub fn binomial_u128(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut b: u128 = 1;
    for i in 0..k {
        b = match b.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    b
}

/// Number of non-plane binary trees with `n` nodes (Wedderburn–Etherington numbers,
/// indexed by total node count, zero for even `n`), for all sizes `0..=max_n`.
pub fn wedderburn_etherington_table(max_n: usize) -> Vec<BigUint> {
    let mut w = vec![BigUint::zero(); max_n + 1];
    if max_n >= 1 {
        w[1] = BigUint::one();
    }
    for n in 2..=max_n {
        if n % 2 == 0 {
            continue;
        }
        let rest = n - 1;
        let mut total = BigUint::zero();
        // ordered pairs (a, b) with a + b = rest
        for a in 1..rest {
            let b = rest - a;
            if !w[a].is_zero() && !w[b].is_zero() {
                total += &w[a] * &w[b];
            }
        }
        if rest % 2 == 0 {
            total += &w[rest / 2];
        }
        w[n] = total / 2u32;
    }
    w
}
