use std::collections::BTreeSet;

use num_integer::Integer;

use super::{mod_pow, MODULUS};

/// Convergents `p/q` of the continued fraction of `num/den`, in order.
pub fn convergents(num: u64, den: u64) -> Vec<(u64, u64)> {
    assert!(den > 0, "zero denominator");
    let (mut a, mut b) = (num, den);
    // (h_{n-1}, k_{n-1}) and (h_{n-2}, k_{n-2})
    let (mut h1, mut k1, mut h2, mut k2) = (1u64, 0u64, 0u64, 1u64);
    let mut out = Vec::new();
    while b != 0 {
        let term = a / b;
        let (h, k) = (term * h1 + h2, term * k1 + k2);
        out.push((h, k));
        (h2, k2, h1, k1) = (h1, k1, h, k);
        (a, b) = (b, a % b);
    }
    out
}

/// Candidate order from an outcome `m` of a `q`-point register: the largest
/// convergent denominator below `n` whose convergent lies within `1/(2q)` of
/// `m/q`. `None` when `m = 0` or nothing qualifies.
pub fn continued_fraction_order(m: u64, q: u64, n: u64) -> Option<u64> {
    if m == 0 || m >= q {
        return None;
    }
    convergents(m, q)
        .into_iter()
        .filter(|&(p, d)| {
            // |m/q - p/d| <= 1/(2q)  <=>  2|m·d - p·q| <= d
            let diff = (m as u128 * d as u128).abs_diff(p as u128 * q as u128);
            d < n && 2 * diff <= d as u128
        })
        .map(|(_, d)| d)
        .max()
}

/// Nontrivial factors from `gcd(a^(r/2) ± 1, n)`; `None` for odd `r`, for
/// `a^(r/2) ≡ −1`, or when both gcds are trivial.
pub fn factor_from_order(a: u64, r: u64, n: u64) -> Option<BTreeSet<u64>> {
    if r == 0 || r % 2 == 1 {
        return None;
    }
    let half = mod_pow(a, r / 2, n);
    if half == n - 1 {
        return None;
    }
    let found: BTreeSet<u64> = [(half + n - 1) % n, half + 1]
        .into_iter()
        .map(|v| v.gcd(&n))
        .filter(|&g| g > 1 && g < n)
        .collect();
    (!found.is_empty()).then_some(found)
}

/// Smallest `r ≥ 1` with `a^r ≡ 1 (mod n)`, by enumeration.
pub fn multiplicative_order(a: u64, n: u64) -> Option<u64> {
    if n < 2 || a.gcd(&n) != 1 {
        return None;
    }
    let mut x = a % n;
    for r in 1..=n {
        if x == 1 {
            return Some(r);
        }
        x = x * a % n;
    }
    None
}

/// Whether outcome `m` of the N = 15 subroutine yields the exact order of `a`.
pub fn is_good_candidate(a: u64, m: u64, q: u64) -> bool {
    continued_fraction_order(m, q, MODULUS) == multiplicative_order(a, MODULUS)
}
