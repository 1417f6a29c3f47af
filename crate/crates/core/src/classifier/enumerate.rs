//! Exhaustive sweeps over pairs of free representations of fixed dimension.

use serde::Serialize;

use super::basis::{check_r, std_basis};
use super::verdict::{decide_similarity, Decision, SimilarityVerdict};
use crate::error::{domain, Error, Result};
use crate::rep::VirtualRep;

/// Default bound on the number of pairs examined.
pub const DEFAULT_MAX_PAIRS: u64 = 1 << 20;

#[derive(Clone, Debug, Serialize)]
pub struct EnumeratedPair {
    pub v1: String,
    pub v2: String,
    pub verdict: SimilarityVerdict,
}

/// Multisets of size `k` drawn from `0..m`, as non-decreasing index lists.
fn multisets(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; k];
    if m == 0 {
        return if k == 0 { vec![Vec::new()] } else { out };
    }
    loop {
        out.push(cur.clone());
        let Some(pos) = (0..k).rev().find(|&p| cur[p] + 1 < m) else {
            return out;
        };
        let next = cur[pos] + 1;
        for c in cur[pos..].iter_mut() {
            *c = next;
        }
    }
}

fn binomial(n: u64, k: u64) -> Option<u64> {
    (0..k).try_fold(1u64, |acc, i| acc.checked_mul(n - i).map(|v| v / (i + 1)))
}

/// Every unordered pair of distinct free representations of complex
/// dimension `dim_complex` over `C(2^r)`, decided against `W`.
pub fn enumerate_unstable(
    r: u32,
    dim_complex: usize,
    w: &VirtualRep,
    max_pairs: u64,
) -> Result<Vec<EnumeratedPair>> {
    check_r(r)?;
    if dim_complex == 0 {
        return domain("dimension must be positive");
    }
    let n = 1u64 << r;
    if w.order() != n {
        return domain(format!("W lives over C({}), not C({n})", w.order()));
    }
    let basis = std_basis(r)?;
    let weights: Vec<i64> = (0..1u64 << (r - 2))
        .map(|k| crate::arith::pow_mod(5, k, n) as i64)
        .collect();
    debug_assert!(weights.iter().all(|&a| basis.log5(a as u64).is_some()));
    let sets = binomial(weights.len() as u64 + dim_complex as u64 - 1, dim_complex as u64);
    let pairs = sets.and_then(|s| s.checked_mul(s.saturating_sub(1))).map(|p| p / 2);
    match pairs {
        Some(p) if p <= max_pairs => {}
        _ => {
            return Err(Error::CapacityExceeded(format!(
                "r = {r}, dimension {dim_complex} gives more than {max_pairs} pairs"
            )))
        }
    }
    let reps: Vec<VirtualRep> = multisets(weights.len(), dim_complex)
        .into_iter()
        .map(|idx| VirtualRep::from_weights(n, &idx.iter().map(|&i| weights[i]).collect::<Vec<_>>()))
        .collect();
    let mut out = Vec::new();
    for (a, v1) in reps.iter().enumerate() {
        for v2 in &reps[a + 1..] {
            out.push(EnumeratedPair {
                v1: v1.to_string(),
                v2: v2.to_string(),
                verdict: decide_similarity(v1, v2, w)?,
            });
        }
    }
    Ok(out)
}

/// Number of `Yes` verdicts in a sweep.
pub fn count_yes(pairs: &[EnumeratedPair]) -> usize {
    pairs.iter().filter(|p| p.verdict.decision == Decision::Yes).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::parse_rep;

    #[test]
    fn multiset_counts() {
        assert_eq!(multisets(4, 2).len(), 10);
        assert_eq!(multisets(3, 3).len(), 10);
        assert_eq!(multisets(1, 2), vec![vec![0, 0]]);
    }

    #[test]
    fn no_five_dimensional_similarities() {
        for r in 3..=5 {
            let pairs = enumerate_unstable(r, 2, &parse_rep(1 << r, "rminus").unwrap(), DEFAULT_MAX_PAIRS).unwrap();
            assert_eq!(count_yes(&pairs), 0, "r = {r}");
        }
    }

    #[test]
    fn six_dimensional_pair_appears() {
        let pairs = enumerate_unstable(4, 2, &parse_rep(16, "rminus + rplus").unwrap(), DEFAULT_MAX_PAIRS).unwrap();
        assert!(pairs
            .iter()
            .any(|p| p.v1 == "2*t" && p.v2 == "2*t9" && p.verdict.decision == Decision::Yes));
        let c8 = enumerate_unstable(3, 2, &parse_rep(8, "rminus + rplus").unwrap(), DEFAULT_MAX_PAIRS).unwrap();
        assert_eq!(count_yes(&c8), 0);
    }

    #[test]
    fn capacity_is_enforced() {
        let w = VirtualRep::zero(64);
        assert!(matches!(enumerate_unstable(6, 3, &w, 100), Err(Error::CapacityExceeded(_))));
    }
}
