//! Weight sets, parity and the unstable similarity decision for `C(2^r)`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use super::basis::{std_basis, two_exponent};
use super::lattice::{rt_lattice, Generator, RtLattice, Seed};
use crate::error::{domain, Error, Result};
use crate::rep::{isotropy_index, Irreducible, VirtualRep};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Decision {
    Yes,
    No,
    NotInRt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Parity {
    Even,
    Odd,
}

/// Required isotropy indices of a single lattice generator.
pub fn generator_theta(g: Generator) -> Vec<u32> {
    match g {
        Generator::TwoAlpha | Generator::TwoAlphaBeta | Generator::FourAlpha => vec![1],
        Generator::Induced { k, seed: Seed::TwoAlpha } => vec![k + 1],
        Generator::Induced { k, .. } => vec![k, k + 1],
        Generator::Gamma { s, .. } => (1..=s).collect(),
    }
}

fn check_len(lattice: &RtLattice, n: &[BigInt]) -> Result<()> {
    if n.len() != lattice.len() {
        return domain(format!(
            "{} coefficients for {} lattice generators",
            n.len(),
            lattice.len()
        ));
    }
    Ok(())
}

/// Union of the index sets of the generators with non-zero coefficient.
pub fn theta(lattice: &RtLattice, n: &[BigInt]) -> Result<Vec<u32>> {
    check_len(lattice, n)?;
    let set: BTreeSet<u32> = lattice
        .generators()
        .iter()
        .zip(n)
        .filter(|(_, c)| !c.is_zero())
        .flat_map(|((g, _), _)| generator_theta(*g))
        .collect();
    Ok(set.into_iter().collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParityInfo {
    pub parity: Parity,
    pub mixed: bool,
    pub depth: Option<u32>,
}

pub fn parity_and_depth(lattice: &RtLattice, n: &[BigInt]) -> Result<ParityInfo> {
    check_len(lattice, n)?;
    let odd = |c: &BigInt| c.is_odd();
    let mut parity = Parity::Even;
    let mut depth: Option<u32> = None;
    for ((g, _), c) in lattice.generators().iter().zip(n) {
        match g {
            Generator::TwoAlpha | Generator::Gamma { .. } if odd(c) => parity = Parity::Odd,
            Generator::Induced { k, seed: Seed::TwoAlpha } if odd(c) => {
                depth = Some(depth.map_or(*k, |d| d.min(*k)));
            }
            _ => {}
        }
    }
    let mixed = parity == Parity::Even && depth.is_some();
    Ok(ParityInfo {
        parity,
        mixed,
        depth: if mixed { depth } else { None },
    })
}

/// Multiplicities of the non-free summands of `W` by isotropy index.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct WSummary {
    pub counts: BTreeMap<u32, u64>,
}

impl WSummary {
    pub fn of(w: &VirtualRep) -> Result<WSummary> {
        let r = two_exponent(w.order())?;
        let mut counts = BTreeMap::new();
        for (irr, c) in w.iter() {
            if c < 0 {
                return domain(format!("W = {w} is virtual"));
            }
            let idx = isotropy_index(irr, w.order())?;
            if idx < r {
                *counts.entry(idx).or_insert(0) += c as u64;
            }
        }
        Ok(WSummary { counts })
    }

    pub fn has(&self, index: u32) -> bool {
        self.counts.get(&index).is_some_and(|&c| c > 0)
    }
}

/// Name of the summand with isotropy index `k`.
pub fn summand_name(k: u32) -> String {
    match k {
        0 => "rplus".into(),
        1 => "rminus".into(),
        k => format!("W{k}"),
    }
}

/// A representative irreducible with isotropy index `k` over `C(2^r)`.
pub fn summand_for_index(k: u32, r: u32) -> Irreducible {
    match k {
        0 => Irreducible::RPlus,
        1 => Irreducible::RMinus,
        k => Irreducible::Weight(1 << (r - k)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimilarityVerdict {
    pub decision: Decision,
    pub theta: Vec<u32>,
    pub parity: Option<Parity>,
    pub mixed: bool,
    pub depth: Option<u32>,
    pub missing: Vec<String>,
    #[serde(serialize_with = "crate::bigser::opt_vec")]
    pub rt_coefficients: Option<Vec<BigInt>>,
}

fn check_pair(v1: &VirtualRep, v2: &VirtualRep) -> Result<u32> {
    if v1.order() != v2.order() {
        return domain("V1 and V2 live over different groups");
    }
    let r = two_exponent(v1.order())?;
    if !v1.is_free() || !v2.is_free() {
        return domain("V1 and V2 must be free");
    }
    if v1.dim() != v2.dim() {
        return domain("V1 and V2 have different dimensions");
    }
    Ok(r)
}

fn verdict_for(r: u32, x: &VirtualRep, w: &WSummary) -> Result<SimilarityVerdict> {
    let lattice = rt_lattice(r)?;
    if x.is_zero() {
        return Ok(SimilarityVerdict {
            decision: Decision::Yes,
            theta: Vec::new(),
            parity: Some(Parity::Even),
            mixed: false,
            depth: None,
            missing: Vec::new(),
            rt_coefficients: Some(Vec::new()),
        });
    }
    let coords = std_basis(r)?.to_coords(x)?;
    let Some(n) = lattice.solve(&coords) else {
        return Ok(SimilarityVerdict {
            decision: Decision::NotInRt,
            theta: Vec::new(),
            parity: None,
            mixed: false,
            depth: None,
            missing: Vec::new(),
            rt_coefficients: None,
        });
    };
    let theta = theta(&lattice, &n)?;
    let info = parity_and_depth(&lattice, &n)?;
    let mut missing: Vec<String> = theta
        .iter()
        .filter(|&&k| !w.has(k))
        .map(|&k| summand_name(k))
        .collect();
    if let Some(d) = info.depth {
        if !(0..=d).any(|t| w.has(t)) {
            missing.push(format!("W_t for some t <= {d}"));
        }
    }
    if info.parity == Parity::Odd && !w.has(0) {
        missing.push(summand_name(0));
    }
    Ok(SimilarityVerdict {
        decision: if missing.is_empty() { Decision::Yes } else { Decision::No },
        theta,
        parity: Some(info.parity),
        mixed: info.mixed,
        depth: info.depth,
        missing,
        rt_coefficients: Some(n),
    })
}

/// Whether `V1 ⊕ W` and `V2 ⊕ W` are topologically similar.
pub fn decide_similarity(v1: &VirtualRep, v2: &VirtualRep, w: &VirtualRep) -> Result<SimilarityVerdict> {
    let r = check_pair(v1, v2)?;
    if w.order() != v1.order() {
        return domain("W lives over a different group");
    }
    verdict_for(r, &v1.sub(v2)?, &WSummary::of(w)?)
}

/// The smallest `W` the conditions allow for a verdict in the lattice.
pub fn canonical_w(r: u32, verdict: &SimilarityVerdict) -> Result<VirtualRep> {
    let mut w = VirtualRep::zero(1 << r);
    for &k in &verdict.theta {
        w.add_irr(summand_for_index(k, r), 1)?;
    }
    if verdict.mixed || verdict.parity == Some(Parity::Odd) {
        w.add_irr(Irreducible::RPlus, 1)?;
    }
    Ok(w)
}

#[derive(Clone, Debug, Serialize)]
pub struct StableVerdict {
    pub stable: bool,
    #[serde(serialize_with = "crate::bigser::opt_vec")]
    pub rt_coefficients: Option<Vec<BigInt>>,
    /// A `W` realizing the similarity, checked with [`decide_similarity`].
    pub witness_w: Option<String>,
}

/// Whether `V1` and `V2` become similar after adding some `W`.
pub fn decide_stable(v1: &VirtualRep, v2: &VirtualRep) -> Result<StableVerdict> {
    let r = check_pair(v1, v2)?;
    let x = v1.sub(v2)?;
    let probe = verdict_for(r, &x, &WSummary::default())?;
    if probe.decision == Decision::NotInRt {
        return Ok(StableVerdict {
            stable: false,
            rt_coefficients: None,
            witness_w: None,
        });
    }
    let w = canonical_w(r, &probe)?;
    let check = decide_similarity(v1, v2, &w)?;
    if check.decision != Decision::Yes {
        return Err(Error::Internal(format!(
            "canonical W = {w} does not realize {x}: missing {:?}",
            check.missing
        )));
    }
    Ok(StableVerdict {
        stable: true,
        rt_coefficients: probe.rt_coefficients,
        witness_w: Some(w.to_string()),
    })
}
