//! Enumeration oracle for Tate cohomology of finite modules.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::C2Module;
use crate::error::{Error, Result};
use crate::linalg::{smith, solve, IntMatrix};

/// Largest module the oracle will enumerate.
pub const MAX_ELEMENTS: u64 = 1 << 20;

/// `H^i` by listing every element of the module. Returns the invariant
/// factors greater than one in divisibility order.
pub fn tate_bruteforce(module: &C2Module, degree: u8) -> Result<Vec<u64>> {
    let kernel_sign: i128 = match degree {
        0 => -1,
        1 => 1,
        _ => return Err(Error::Domain(format!("Tate degree must be 0 or 1, got {degree}"))),
    };
    let n = module.n_gens();
    let s = smith(module.relations());
    let mut moduli: Vec<u64> = Vec::new();
    let mut keep: Vec<usize> = Vec::new();
    let mut size: u64 = 1;
    for i in 0..n {
        let d = if i < s.rank { s.diag[i].clone() } else { BigInt::zero() };
        if d.is_zero() {
            return Err(Error::CapacityExceeded("module is infinite".into()));
        }
        let d = d
            .to_u64()
            .filter(|&d| d <= MAX_ELEMENTS)
            .ok_or_else(|| Error::CapacityExceeded("module too large to enumerate".into()))?;
        if d > 1 {
            size = size.saturating_mul(d);
            if size > MAX_ELEMENTS {
                return Err(Error::CapacityExceeded(format!(
                    "module has more than {MAX_ELEMENTS} elements"
                )));
            }
            moduli.push(d);
            keep.push(i);
        }
    }
    // Coordinates x -> x V identify the module with the product of Z/d_i.
    let v = &s.v;
    let mut v_inv_cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![BigInt::zero(); n];
        e[j] = BigInt::from(1);
        v_inv_cols.push(solve(v, &e).ok_or_else(|| Error::Internal("Smith transform is not unimodular".into()))?);
    }
    let v_inv = IntMatrix::from_rows(n, v_inv_cols).transpose();
    let t_new = v_inv.mul(module.involution()).mul(v);
    let k = moduli.len();
    let mut action = vec![vec![0i128; k]; k];
    for (a, &i) in keep.iter().enumerate() {
        for (b, &j) in keep.iter().enumerate() {
            let m = BigInt::from(moduli[b]);
            action[a][b] = t_new.get(i, j).mod_floor(&m).to_i128().expect("reduced entry");
        }
    }

    let size = size as usize;
    let decode = |mut idx: usize| -> Vec<i128> {
        let mut out = vec![0i128; k];
        for (c, &d) in out.iter_mut().zip(&moduli) {
            *c = (idx as u64 % d) as i128;
            idx /= d as usize;
        }
        out
    };
    let encode = |coords: &[i128]| -> usize {
        let mut idx = 0usize;
        for (c, &d) in coords.iter().zip(&moduli).rev() {
            idx = idx * d as usize + c.rem_euclid(d as i128) as usize;
        }
        idx
    };
    let apply = |x: &[i128], sign: i128| -> Vec<i128> {
        (0..k)
            .map(|b| {
                let mut acc: i128 = sign * x[b];
                for a in 0..k {
                    acc += x[a] * action[a][b];
                }
                acc.rem_euclid(moduli[b] as i128)
            })
            .collect()
    };

    let mut in_kernel = vec![false; size];
    let mut in_image = vec![false; size];
    for (idx, k) in in_kernel.iter_mut().enumerate() {
        let x = decode(idx);
        *k = apply(&x, kernel_sign).iter().all(|&c| c == 0);
        in_image[encode(&apply(&x, -kernel_sign))] = true;
    }
    let kernel: Vec<usize> = (0..size).filter(|&i| in_kernel[i]).collect();
    let image_count = in_image.iter().filter(|&&b| b).count() as u64;
    let h_order = kernel.len() as u64 / image_count;
    if h_order == 1 {
        return Ok(Vec::new());
    }

    // |H[m]| = #{x in ker : m x in im} / |im|
    let torsion_count = |m: u64| -> u64 {
        let hits = kernel
            .iter()
            .filter(|&&idx| {
                let x = decode(idx);
                let y: Vec<i128> = x.iter().map(|&c| c * m as i128).collect();
                in_image[encode(&y)]
            })
            .count() as u64;
        hits / image_count
    };
    let mut prime_parts: Vec<Vec<u64>> = Vec::new();
    let mut rest = h_order;
    let mut p = 2;
    while rest > 1 {
        if !rest.is_multiple_of(p) {
            p += 1;
            continue;
        }
        while rest.is_multiple_of(p) {
            rest /= p;
        }
        // counts[k] = log_p |H[p^k]|
        let mut counts = vec![0u32];
        let mut pk = 1u64;
        loop {
            pk *= p;
            let c = torsion_count(pk);
            let e = log_exact(c, p);
            if e == *counts.last().expect("non-empty") {
                break;
            }
            counts.push(e);
        }
        let at_least: Vec<u32> = counts.windows(2).map(|w| w[1] - w[0]).collect();
        let mut powers = Vec::new();
        for (kk, &m) in at_least.iter().enumerate() {
            let next = at_least.get(kk + 1).copied().unwrap_or(0);
            for _ in 0..(m - next) {
                powers.push(p.pow(kk as u32 + 1));
            }
        }
        powers.sort_unstable_by(|a, b| b.cmp(a));
        prime_parts.push(powers);
    }
    let len = prime_parts.iter().map(Vec::len).max().unwrap_or(0);
    let mut factors: Vec<u64> = (0..len)
        .map(|i| prime_parts.iter().filter_map(|pp| pp.get(i)).product())
        .collect();
    factors.reverse();
    Ok(factors)
}

fn log_exact(mut x: u64, p: u64) -> u32 {
    let mut e = 0;
    while x > 1 {
        debug_assert_eq!(x % p, 0);
        x /= p;
        e += 1;
    }
    e
}
