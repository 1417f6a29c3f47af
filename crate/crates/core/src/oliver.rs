//! Enumeration check of the kernel of Oliver's map `ψ_n` on
//! `M^n = ⊕_{i=0}^{n} (Z/2^{n+1})[Γ_i] e_i`, with `Γ_k` cyclic of order `2^k`.
//!
//! The elements `γ_a^b` are supplied by a [`GammaTable`]; the default reads
//! `γ_a^b ∈ Z[Γ_b]` as the norm element of the kernel of `Γ_b -> Γ_a`.

use serde::Serialize;

use crate::error::{precondition, Error, Result};

/// Source of the elements `γ_a^b`, written in `Z[Γ_m]` as a coefficient
/// vector of length `2^m` indexed by powers of the generator.
pub trait GammaTable {
    fn gamma(&self, a: u32, b: u32, m: u32) -> Vec<i64>;
}

/// `γ_a^b` is the norm of the subgroup of order `2^{b-a}`; in `Z[Γ_m]` for
/// `m < b` it is pushed forward along `Γ_b -> Γ_m`.
#[derive(Clone, Copy, Debug, Default)]
pub struct NormTable;

impl GammaTable for NormTable {
    fn gamma(&self, a: u32, b: u32, m: u32) -> Vec<i64> {
        let size = 1usize << m;
        let mut out = vec![0i64; size];
        let (order, mult) = if m >= b {
            (1usize << (b - a), 1i64)
        } else {
            let order = 1usize << m.saturating_sub(a);
            (order, (1i64 << (b - a)) / order as i64)
        };
        let step = size / order;
        for k in 0..order {
            out[k * step] += mult;
        }
        out
    }
}

fn ring_mul(x: &[i64], y: &[i64]) -> Vec<i64> {
    let n = x.len();
    let mut out = vec![0i64; n];
    for (i, a) in x.iter().enumerate() {
        if *a == 0 {
            continue;
        }
        for (j, b) in y.iter().enumerate() {
            out[(i + j) % n] += a * b;
        }
    }
    out
}

/// `a * γ` in `Z[Γ_m]` for `a ∈ Z[Γ_i]`: `a` is pushed forward when `m <= i`
/// and lifted otherwise, in which case `γ` must be invariant under the
/// kernel of `Γ_m -> Γ_i` for the product to be well defined.
pub fn mul_into(a: &[i64], gamma: &[i64], i: u32, m: u32) -> Result<Vec<i64>> {
    let size = 1usize << m;
    if a.len() != 1 << i || gamma.len() != size {
        return Err(Error::Domain("group ring element has the wrong length".into()));
    }
    let mut moved = vec![0i64; size];
    if m <= i {
        for (j, c) in a.iter().enumerate() {
            moved[j % size] += c;
        }
    } else {
        let k = 1usize << i;
        let rotated: Vec<i64> = (0..size).map(|j| gamma[(j + size - k) % size]).collect();
        if rotated != gamma {
            return Err(Error::Precondition(format!(
                "γ in Z[Γ_{m}] is not invariant under the kernel of Γ_{m} -> Γ_{i}"
            )));
        }
        moved[..a.len()].copy_from_slice(a);
    }
    Ok(ring_mul(&moved, gamma))
}

type Element = Vec<Vec<i64>>;

fn reduce(x: &mut Element, modulus: i64) {
    for comp in x.iter_mut() {
        for c in comp.iter_mut() {
            *c = c.rem_euclid(modulus);
        }
    }
}

/// `ψ_n(x) = Σ_i Σ_{j<=i} 2^{i-j} (a_i γ_{i-j}^{n-j}) e_{n-j}`, over `Z`.
pub fn psi(n: u32, x: &Element, table: &dyn GammaTable) -> Result<Element> {
    let mut out: Element = (0..=n).map(|i| vec![0i64; 1 << i]).collect();
    for i in 0..=n {
        let a = &x[i as usize];
        if a.iter().all(|&c| c == 0) {
            continue;
        }
        for j in 0..=i {
            let target = n - j;
            let g = table.gamma(i - j, n - j, target);
            let prod = mul_into(a, &g, i, target)?;
            let scale = 1i64 << (i - j);
            for (o, p) in out[target as usize].iter_mut().zip(prod) {
                *o += scale * p;
            }
        }
    }
    Ok(out)
}

/// `ind(a_i e_i) = a_i γ_i^{i+1} e_{i+1}`, from `M^n` to `M^{n+1}`.
pub fn induce(n: u32, x: &Element, table: &dyn GammaTable) -> Result<Element> {
    let mut out: Element = (0..=n + 1).map(|i| vec![0i64; 1 << i]).collect();
    for i in 0..=n {
        let g = table.gamma(i, i + 1, i + 1);
        out[i as usize + 1] = mul_into(&x[i as usize], &g, i, i + 1)?;
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub enum OliverStatus {
    Pass,
    /// The relation `γ_i^{i+1} γ_{i-j}^{n-j} = 2 γ_{i-j}^{n-j}` failed.
    InterpretationMismatch,
    /// Relation held but some element violates the kernel implication.
    ImplicationFails,
}

#[derive(Clone, Debug, Serialize)]
pub struct OliverReport {
    pub n: u32,
    pub relation_failures: Vec<(u32, u32)>,
    pub elements: u64,
    pub in_induced_kernel: u64,
    pub counterexamples: u64,
    pub status: OliverStatus,
}

/// Checks the norm relation and, by enumerating `M^n`, that
/// `ψ_{n+1}(ind x) = 0 mod 2^{n+2}` implies `ψ_n(x) = 0 mod 2^{n+1}`.
pub fn oliver_kernel_check(n: u32, table: &dyn GammaTable) -> Result<OliverReport> {
    if n > 2 {
        return precondition(format!("n = {n} is too large to enumerate (n <= 2)"));
    }
    let mut failures = Vec::new();
    for i in 0..=n {
        for j in 0..=i {
            let m = n - j;
            let lhs = ring_mul(&table.gamma(i, i + 1, m), &table.gamma(i - j, n - j, m));
            let rhs: Vec<i64> = table.gamma(i - j, n - j, m).iter().map(|c| 2 * c).collect();
            if lhs != rhs {
                failures.push((i, j));
            }
        }
    }
    if !failures.is_empty() {
        return Ok(OliverReport {
            n,
            relation_failures: failures,
            elements: 0,
            in_induced_kernel: 0,
            counterexamples: 0,
            status: OliverStatus::InterpretationMismatch,
        });
    }

    let modulus = 1i64 << (n + 1);
    let next_modulus = modulus * 2;
    let slots: usize = (0..=n).map(|i| 1usize << i).sum();
    let total = (modulus as u64).pow(slots as u32);
    let mut in_kernel = 0u64;
    let mut counter = 0u64;
    let mut digits = vec![0i64; slots];
    for _ in 0..total {
        let mut x: Element = Vec::with_capacity(n as usize + 1);
        let mut pos = 0;
        for i in 0..=n {
            let len = 1usize << i;
            x.push(digits[pos..pos + len].to_vec());
            pos += len;
        }
        let mut up = psi(n + 1, &induce(n, &x, table)?, table)?;
        reduce(&mut up, next_modulus);
        if up.iter().flatten().all(|&c| c == 0) {
            in_kernel += 1;
            let mut down = psi(n, &x, table)?;
            reduce(&mut down, modulus);
            if !down.iter().flatten().all(|&c| c == 0) {
                counter += 1;
            }
        }
        for d in digits.iter_mut() {
            *d += 1;
            if *d < modulus {
                break;
            }
            *d = 0;
        }
    }
    Ok(OliverReport {
        n,
        relation_failures: failures,
        elements: total,
        in_induced_kernel: in_kernel,
        counterexamples: counter,
        status: if counter == 0 {
            OliverStatus::Pass
        } else {
            OliverStatus::ImplicationFails
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_gammas() {
        let t = NormTable;
        assert_eq!(t.gamma(0, 1, 1), vec![1, 1]);
        assert_eq!(t.gamma(1, 2, 2), vec![1, 0, 1, 0]);
        assert_eq!(t.gamma(0, 2, 2), vec![1, 1, 1, 1]);
        assert_eq!(t.gamma(0, 2, 1), vec![2, 2]);
        assert_eq!(t.gamma(1, 2, 0), vec![2]);
        assert_eq!(t.gamma(0, 0, 0), vec![1]);
    }

    #[test]
    fn small_cases_pass() {
        let r0 = oliver_kernel_check(0, &NormTable).unwrap();
        assert_eq!(r0.elements, 2);
        assert_eq!(r0.status, OliverStatus::Pass);
        let r1 = oliver_kernel_check(1, &NormTable).unwrap();
        assert_eq!(r1.elements, 64);
        assert_eq!(r1.status, OliverStatus::Pass);
    }

    struct Broken;
    impl GammaTable for Broken {
        fn gamma(&self, _a: u32, _b: u32, m: u32) -> Vec<i64> {
            let mut v = vec![0; 1 << m];
            v[0] = 1;
            v
        }
    }

    #[test]
    fn mismatch_is_reported() {
        let r = oliver_kernel_check(1, &Broken).unwrap();
        assert_eq!(r.status, OliverStatus::InterpretationMismatch);
        assert!(!r.relation_failures.is_empty());
    }
}
