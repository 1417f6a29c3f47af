//! Congruences on weights that control the homotopy and normal-invariant
//! filtration: k-invariant orders, Sylow restriction tests, elementary
//! symmetric functions of squared weights and 2-adic valuations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{binary_digit_sum, crt, gcd, inv_mod, modulo, mult_order, mult_order_pm, split_two_power};
use crate::error::{domain, precondition, Error, Result};
use crate::rep::{Irreducible, VirtualRep};

/// A multiset of integer weights given as `(weight, multiplicity)` pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightMultiset {
    entries: Vec<(BigInt, u64)>,
}

impl WeightMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: &[(i64, u64)]) -> Self {
        let mut ws = Self::new();
        for &(w, m) in pairs {
            ws.push(BigInt::from(w), m);
        }
        ws
    }

    /// `mult` copies of `w`.
    pub fn repeated(w: BigInt, mult: u64) -> Self {
        let mut ws = Self::new();
        ws.push(w, mult);
        ws
    }

    pub fn push(&mut self, w: BigInt, mult: u64) {
        if mult > 0 {
            self.entries.push((w, mult));
        }
    }

    pub fn total(&self) -> u64 {
        self.entries.iter().map(|(_, m)| m).sum()
    }

    pub fn entries(&self) -> &[(BigInt, u64)] {
        &self.entries
    }
}

/// All elementary symmetric functions `σ_0..σ_k` of the multiset.
pub fn elementary_symmetric_all(ws: &WeightMultiset, k: usize) -> Vec<BigInt> {
    let mut e = vec![BigInt::zero(); k + 1];
    e[0] = BigInt::one();
    let mut seen = 0usize;
    for (w, m) in ws.entries() {
        for _ in 0..*m {
            seen += 1;
            for j in (1..=seen.min(k)).rev() {
                let add = w * &e[j - 1];
                e[j] += add;
            }
        }
    }
    e
}

pub fn elementary_symmetric(ws: &WeightMultiset, k: u64) -> Result<BigInt> {
    if k > ws.total() {
        return domain(format!("σ_{k} of a multiset of size {}", ws.total()));
    }
    Ok(elementary_symmetric_all(ws, k as usize).pop().expect("non-empty"))
}

/// Power sum `s_k = Σ mult · w^k`.
pub fn newton_power_sum(ws: &WeightMultiset, k: u32) -> BigInt {
    ws.entries()
        .iter()
        .map(|(w, m)| BigInt::from(*m) * w.pow(k))
        .sum()
}

/// `σ_1..σ_k` from power sums `s_1..s_k` via `k σ_k = Σ (-1)^{i-1} σ_{k-i} s_i`.
pub fn elementary_from_power_sums(p: &[BigInt]) -> Result<Vec<BigInt>> {
    let mut e = vec![BigInt::one()];
    for k in 1..=p.len() {
        let mut acc = BigInt::zero();
        for i in 1..=k {
            let term = &e[k - i] * &p[i - 1];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        let (q, r) = acc.div_rem(&BigInt::from(k));
        if !r.is_zero() {
            return Err(Error::Domain("power sums of no integer multiset".into()));
        }
        e.push(q);
    }
    Ok(e)
}

/// `s_1..s_k` from `σ_0..σ_k` via `s_k = Σ_{i<k} (-1)^{i-1} σ_i s_{k-i} + (-1)^{k-1} k σ_k`.
pub fn power_sums_from_elementary(e: &[BigInt]) -> Vec<BigInt> {
    let k_max = e.len() - 1;
    let mut p: Vec<BigInt> = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let mut acc = BigInt::zero();
        for i in 1..k {
            let term = &e[i] * &p[k - i - 1];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        let last = BigInt::from(k) * &e[k];
        if k % 2 == 1 {
            acc += last;
        } else {
            acc -= last;
        }
        p.push(acc);
    }
    p
}

fn nu2_factorial(m: u64) -> u64 {
    m - binary_digit_sum(m) as u64
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `ν_2(C(2^s, k))` from the factorial formula `ν_2(m!) = m - α_2(m)`.
pub fn nu2_binomial_by_factorials(s: u32, k: u64) -> u64 {
    let n = 1u64 << s;
    nu2_factorial(n) - nu2_factorial(k) - nu2_factorial(n - k)
}

/// `ν_2(C(2^s, k))` from the binomial coefficient itself.
pub fn nu2_binomial_by_factorization(s: u32, k: u64) -> u64 {
    binomial(1u64 << s, k).trailing_zeros().unwrap_or(0)
}

/// `ν_2(C(2^s, k)) = s - ν_2(k)` for `1 <= k <= 2^s`; both computations are
/// carried out and must agree.
pub fn nu2_binomial(s: u32, k: u64) -> Result<u64> {
    if s > 40 || k == 0 || k > 1u64 << s {
        return precondition(format!("need 1 <= k <= 2^s, got s = {s}, k = {k}"));
    }
    let a = nu2_binomial_by_factorials(s, k);
    let b = nu2_binomial_by_factorization(s, k);
    if a != b {
        return Err(Error::Internal(format!("ν_2 C(2^{s},{k}): {a} vs {b}")));
    }
    Ok(a)
}

/// Data of one instance of the congruence for
/// `σ_k(2^s·(2^{r-s}-i)^2) - σ_k(2^s·i^2)` modulo `2^{r+3}`.
#[derive(Clone, Debug, Serialize)]
pub struct CongruenceReport {
    pub r: u32,
    pub s: u32,
    pub i: i64,
    pub k: u64,
    /// The weight actually used after replacing `i = 3 mod 4` by `-i`.
    pub effective_i: i64,
    pub modulus: String,
    pub lhs: String,
    pub lhs_residue: String,
    /// Same difference with `(2^{r-s}+i)^2` in place of `(2^{r-s}-i)^2`.
    pub lhs_printed_variant: String,
    pub lhs_printed_variant_residue: String,
    pub rhs: String,
    pub rhs_residue: String,
    pub target_residue: String,
    /// `lhs = ±2^{r+1} mod 2^{r+3}`.
    pub magnitude_ok: bool,
    /// `lhs = (-1)^{k+1} 2^{r+1} mod 2^{r+3}`.
    pub sign_ok: bool,
    pub rhs_matches_lhs: bool,
    pub rhs_matches_lhs_up_to_sign: bool,
}

pub fn a_prime_instance(r: u32, s: u32, i: i64, k: u64) -> Result<CongruenceReport> {
    if !(3..=40).contains(&r) || s < 1 || s + 2 > r {
        return precondition(format!("need 1 <= s <= r - 2, got r = {r}, s = {s}"));
    }
    if i % 2 == 0 {
        return precondition(format!("i = {i} must be odd"));
    }
    if k == 0 || k > 1u64 << s {
        return precondition(format!("need 1 <= k <= 2^s, got k = {k}"));
    }
    let effective_i = if modulo(i, 4) == 3 { -i } else { i };
    let count = 1u64 << s;
    let base = BigInt::one() << (r - s);
    let ib = BigInt::from(effective_i);
    let sq = |x: &BigInt| x * x;
    let sigma = |w: BigInt| elementary_symmetric(&WeightMultiset::repeated(w, count), k);
    let low = sigma(sq(&ib))?;
    let lhs = sigma(sq(&(&base - &ib)))? - &low;
    let lhs_printed = sigma(sq(&(&base + &ib)))? - &low;
    let rhs = BigInt::from(2)
        * ((&base - &ib).pow(count as u32) - ib.pow(count as u32))
        * binomial(count - 1, k - 1);
    let modulus = BigInt::one() << (r + 3);
    let unit = BigInt::one() << (r + 1);
    let res = |x: &BigInt| x.mod_floor(&modulus);
    let target = if k % 2 == 1 { unit.clone() } else { res(&-&unit) };
    let lr = res(&lhs);
    let rr = res(&rhs);
    Ok(CongruenceReport {
        r,
        s,
        i,
        k,
        effective_i,
        modulus: modulus.to_string(),
        lhs: lhs.to_string(),
        lhs_residue: lr.to_string(),
        lhs_printed_variant: lhs_printed.to_string(),
        lhs_printed_variant_residue: res(&lhs_printed).to_string(),
        rhs: rhs.to_string(),
        rhs_residue: rr.to_string(),
        target_residue: target.to_string(),
        magnitude_ok: lr == unit || lr == res(&-&unit),
        sign_ok: lr == target,
        rhs_matches_lhs: rr == lr,
        rhs_matches_lhs_up_to_sign: rr == lr || rr == res(&-&lhs),
    })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct KOrderReport {
    pub i: u64,
    pub s: u32,
    pub r: u32,
    pub q: u64,
    /// The class `i / (2^{r-s} q - i)` in `(Z/2^r q)^x / ±1`.
    pub class: u64,
    /// Order of that class, computed directly.
    pub order: u64,
    /// Order predicted by the closed form.
    pub closed_form: u64,
    /// Order of the class modulo `2^r` alone.
    pub sylow_order: u64,
    pub agrees: bool,
}

/// Order of the k-invariant of `b_{i,s} = t^i - t^{2^{r-s} q - i}` over `C(2^r q)`.
pub fn k_invariant_order(i: u64, s: u32, r: u32, q: u64) -> Result<KOrderReport> {
    if !(2..=40).contains(&r) || q.is_multiple_of(2) {
        return precondition(format!("need r >= 2 and q odd, got r = {r}, q = {q}"));
    }
    if s < 1 || s > r - 1 {
        return precondition(format!("need 1 <= s <= r - 1, got s = {s}"));
    }
    let n = (1u64 << r) * q;
    if gcd(i, 2 * q) != 1 {
        return precondition(format!("gcd({i}, 2q) must be 1"));
    }
    let other = modulo((1i64 << (r - s)) * q as i64 - i as i64, n);
    let inv = inv_mod(other, n).ok_or_else(|| Error::Precondition(format!("{other} is not a unit mod {n}")))?;
    let k = (i as u128 * inv as u128 % n as u128) as u64;
    let order = mult_order_pm(k, n).expect("unit");
    let two_r = 1u64 << r;
    let sylow_order = mult_order(k % two_r, two_r).expect("odd");
    let closed_form = if s + 2 <= r {
        1u64 << s
    } else if q == 1 {
        mult_order_pm(k % two_r, two_r).expect("odd")
    } else {
        // k = -1 mod q, so k^m = ±1 forces (-k)^m = 1 mod 2^r.
        mult_order(two_r - k % two_r, two_r).expect("odd")
    };
    Ok(KOrderReport {
        i,
        s,
        r,
        q,
        class: k.min(n - k),
        order,
        closed_form,
        sylow_order,
        agrees: order == closed_form,
    })
}

/// Sufficient test: the restrictions of `x` to the odd and 2-Sylow subgroups
/// both vanish.
pub fn sylow_kernel_test(x: &VirtualRep) -> Result<bool> {
    let (r, q) = split_two_power(x.order());
    if q == 1 {
        return precondition("Sylow test needs a group of order 2^r q with q > 1");
    }
    if !x.is_free() || x.dim() != 0 {
        return domain("Sylow test needs a free element of dimension zero");
    }
    Ok(x.restrict(q)?.is_zero() && x.restrict(1u64 << r)?.is_zero())
}

/// The unit `k` with `k = 1 mod 2^r` and `k = -1 mod q`.
pub fn kernel_generator_k(q: u64, r: u32) -> Result<u64> {
    if q <= 1 || q.is_multiple_of(2) {
        return precondition(format!("q must be odd and > 1, got {q}"));
    }
    let two_r = 1u64 << r;
    crt(1 % two_r, two_r, q - 1, q).ok_or_else(|| Error::Internal("moduli not coprime".into()))
}

/// `ν_2(Σ mult · w^2)` over canonical weights; `None` when the sum is zero.
pub fn sum_sq_defect(x: &VirtualRep) -> Result<Option<u64>> {
    if !x.is_free() || x.dim() != 0 {
        return domain("sum of squares needs a free element of dimension zero");
    }
    let mut total = BigInt::zero();
    for (irr, c) in x.iter() {
        if let Irreducible::Weight(a) = irr {
            total += BigInt::from(c) * BigInt::from(a) * BigInt::from(a);
        }
    }
    Ok(total.abs().trailing_zeros())
}

/// Convenience for callers holding machine integers.
pub fn to_i64(x: &BigInt) -> Option<i64> {
    x.to_i64()
}
