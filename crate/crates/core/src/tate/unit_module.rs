//! Presentations of finitely generated subgroups of units of `Z[C(N)]` as
//! modules with involution.

use std::collections::HashMap;

use num_bigint::BigInt;

use super::C2Module;
use crate::error::{Error, Result};
use crate::group_ring::{GroupRingElem, Involution, TorsionUnit};
use crate::linalg::IntMatrix;

#[derive(Clone, Debug)]
pub struct UnitModuleOptions {
    /// Exponents range over `-bound..=bound` in the relation search.
    pub exponent_bound: i64,
    /// Identify units that differ by `±t^m`.
    pub modulo_trivial: bool,
    /// Extra units to divide out; they become generators killed by relations.
    pub quotient_by: Vec<TorsionUnit>,
    /// Upper limit on the number of exponent vectors examined.
    pub max_products: u64,
}

impl Default for UnitModuleOptions {
    fn default() -> Self {
        UnitModuleOptions {
            exponent_bound: 8,
            modulo_trivial: true,
            quotient_by: Vec::new(),
            max_products: 1 << 20,
        }
    }
}

/// Outcome of the bounded relation search.
#[derive(Clone, Debug)]
pub struct UnitModule {
    /// The presented module; `None` when some involution image was not found
    /// inside the search box.
    pub module: Option<C2Module>,
    /// Number of leading generators that are the requested units; the rest
    /// come from `quotient_by`.
    pub n_units: usize,
    /// Generators whose involution image lies outside the search box.
    pub missing_images: Vec<usize>,
    /// Relations are complete only up to this exponent bound.
    pub exponent_bound: i64,
    pub complete: bool,
}

fn key(x: &GroupRingElem, modulo_trivial: bool) -> Vec<BigInt> {
    if modulo_trivial {
        x.canonical_mod_trivial()
    } else {
        x.coeffs().to_vec()
    }
}

/// Presents the subgroup generated by `units` (and optionally `±t^m`) with
/// the action of `inv`, discovering relations by a bounded exponent search.
pub fn unit_subgroup_module(
    units: &[TorsionUnit],
    inv: Involution,
    opts: &UnitModuleOptions,
) -> Result<UnitModule> {
    let mut gens: Vec<TorsionUnit> = units.to_vec();
    gens.extend(opts.quotient_by.iter().cloned());
    let k = gens.len();
    let n_units = units.len();
    if k == 0 {
        return Ok(UnitModule {
            module: Some(C2Module::from_i64(0, &[], &[])?),
            n_units,
            missing_images: Vec::new(),
            exponent_bound: opts.exponent_bound,
            complete: true,
        });
    }
    let n = gens[0].order();
    if gens.iter().any(|g| g.order() != n) {
        return Err(Error::Domain("units live in different group rings".into()));
    }
    let b = opts.exponent_bound;
    let width = (2 * b + 1) as u64;
    let total = (0..k).try_fold(1u64, |acc, _| acc.checked_mul(width).filter(|&t| t <= opts.max_products));
    let total = total.ok_or_else(|| {
        Error::CapacityExceeded(format!(
            "{k} generators with exponent bound {b} exceed {} products",
            opts.max_products
        ))
    })?;

    // powers[g][e + b] = g^e
    let mut powers: Vec<Vec<GroupRingElem>> = Vec::with_capacity(k);
    for g in &gens {
        let mut row = Vec::with_capacity(width as usize);
        for e in -b..=b {
            row.push(g.pow(e)?.value().clone());
        }
        powers.push(row);
    }

    let mut table: HashMap<Vec<BigInt>, Vec<i64>> = HashMap::new();
    let mut relations: Vec<Vec<i64>> = Vec::new();
    let mut exps = vec![-b; k];
    for _ in 0..total {
        let mut prod = GroupRingElem::one(n);
        for (g, &e) in exps.iter().enumerate() {
            if e != 0 {
                prod = &prod * &powers[g][(e + b) as usize];
            }
        }
        let kk = key(&prod, opts.modulo_trivial);
        match table.get(&kk) {
            Some(prev) => {
                let rel: Vec<i64> = exps.iter().zip(prev).map(|(a, c)| a - c).collect();
                relations.push(rel);
            }
            None => {
                table.insert(kk, exps.clone());
            }
        }
        for e in exps.iter_mut() {
            if *e < b {
                *e += 1;
                break;
            }
            *e = -b;
        }
    }
    for j in n_units..k {
        let mut rel = vec![0i64; k];
        rel[j] = 1;
        relations.push(rel);
    }

    let mut involution = Vec::with_capacity(k);
    let mut missing = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let image = g.apply_involution(inv)?;
        match table.get(&key(image.value(), opts.modulo_trivial)) {
            Some(e) => involution.push(e.clone()),
            None => {
                missing.push(i);
                involution.push(vec![0; k]);
            }
        }
    }
    let relations = reduce_relations(k, &relations);
    let module = if missing.is_empty() {
        C2Module::from_i64(k, &relations, &involution).ok()
    } else {
        None
    };
    Ok(UnitModule {
        complete: module.is_some(),
        module,
        n_units,
        missing_images: missing,
        exponent_bound: b,
    })
}

/// Replaces a long list of relations by a basis of their span.
fn reduce_relations(k: usize, rels: &[Vec<i64>]) -> Vec<Vec<i64>> {
    use num_traits::ToPrimitive;
    let m = IntMatrix::from_i64_rows(k, rels);
    let basis = super::row_basis(&m);
    basis
        .row_vecs()
        .iter()
        .map(|r| r.iter().map(|c| c.to_i64().expect("small relation")).collect())
        .collect()
}
