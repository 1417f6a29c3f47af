//! Small-integer modular arithmetic used throughout the crate.

use num_integer::Integer;

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Least non-negative residue of `a` modulo `m`.
pub fn modulo(a: i64, m: u64) -> u64 {
    a.rem_euclid(m as i64) as u64
}

pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let m128 = m as u128;
    let mut acc: u128 = 1;
    let mut b = (base % m) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let ext = (a as i64 % m as i64).extended_gcd(&(m as i64));
    if ext.gcd != 1 {
        return None;
    }
    Some(modulo(ext.x, m))
}

/// 2-adic valuation; `None` for zero.
pub fn nu2(n: u64) -> Option<u32> {
    if n == 0 {
        None
    } else {
        Some(n.trailing_zeros())
    }
}

/// Writes `n = 2^r * q` with `q` odd.
pub fn split_two_power(n: u64) -> (u32, u64) {
    assert!(n > 0);
    let r = n.trailing_zeros();
    (r, n >> r)
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n.is_multiple_of(i) {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Multiplicative order of a unit `a` modulo `m`.
pub fn mult_order(a: u64, m: u64) -> Option<u64> {
    inv_mod(a, m)?;
    let mut x = a % m;
    let mut k = 1;
    while x != 1 % m {
        x = (x as u128 * a as u128 % m as u128) as u64;
        k += 1;
    }
    Some(k)
}

/// Order of the class of a unit `a` in `(Z/m)^x / {±1}`.
pub fn mult_order_pm(a: u64, m: u64) -> Option<u64> {
    inv_mod(a, m)?;
    let mut x = a % m;
    let mut k = 1;
    while x != 1 % m && x != m - 1 {
        x = (x as u128 * a as u128 % m as u128) as u64;
        k += 1;
    }
    Some(k)
}

/// Chinese remaindering for coprime moduli: the residue modulo `m1*m2`.
pub fn crt(r1: u64, m1: u64, r2: u64, m2: u64) -> Option<u64> {
    let inv = inv_mod(m1 % m2, m2)?;
    let m = m1 as u128 * m2 as u128;
    let diff = (r2 as i128 - r1 as i128).rem_euclid(m2 as i128) as u128;
    let t = diff * inv as u128 % m2 as u128;
    Some(((r1 as u128 + m1 as u128 * t) % m) as u64)
}

/// Number of ones in the binary expansion.
pub fn binary_digit_sum(n: u64) -> u32 {
    n.count_ones()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverses_and_orders() {
        assert_eq!(inv_mod(3, 8), Some(3));
        assert_eq!(inv_mod(2, 8), None);
        assert_eq!(mult_order(5, 16), Some(4));
        assert_eq!(mult_order_pm(7, 16), Some(2));
        assert_eq!(mult_order_pm(7, 32), Some(4));
        assert_eq!(mult_order(1, 1), Some(1));
    }

    #[test]
    fn crt_examples() {
        // k = 1 mod 4, k = -1 mod 3
        assert_eq!(crt(1, 4, 2, 3), Some(5));
        assert_eq!(crt(1, 8, 2, 3), Some(17));
        assert_eq!(crt(1, 4, 4, 5), Some(9));
    }

    #[test]
    fn divisor_list() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(split_two_power(24), (3, 3));
    }
}
