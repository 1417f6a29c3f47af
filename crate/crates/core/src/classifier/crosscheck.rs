//! Parity against the torsion class in `H^1` of the units generated by the
//! `U_{1,i}`, for elements restricting to zero on the index-2 subgroup.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::basis::{std_basis, two_exponent};
use super::lattice::rt_lattice;
use super::verdict::{parity_and_depth, Parity};
use crate::error::Result;
use crate::group_ring::{reidemeister_quotient, u_1i_2group, Involution, TorsionUnit};
use crate::linalg::{solve, IntMatrix};
use crate::rep::VirtualRep;
use crate::tate::{tate, unit_subgroup_module, UnitModuleOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CrosscheckStatus {
    /// Even, and `τ = w̄ w^{-1}` up to `±t^m` for an explicit `w`.
    EvenWitnessFound,
    /// Odd, and the class of `τ` is non-zero.
    OddClassNontrivial,
    /// Parity and class disagree.
    Disagreement,
    /// The bounded search did not produce a complete presentation.
    SearchExhausted,
    /// `x` does not restrict to zero on the index-2 subgroup, or is not in
    /// the lattice.
    NotApplicable,
}

#[derive(Clone, Debug, Serialize)]
pub struct ParityTorsionReport {
    pub x: String,
    pub parity: Option<Parity>,
    pub in_ker_res: bool,
    /// Generators of the unit module: `U_{1,i}` labels followed by `tau`.
    pub generators: Vec<String>,
    pub exponent_bound: i64,
    pub tau: Option<String>,
    pub class: Option<Vec<String>>,
    /// Exponents `e` over the generators with `w = Π g^e`.
    pub witness_exponents: Option<Vec<i64>>,
    pub witness_verified: bool,
    pub status: CrosscheckStatus,
}

/// Runs the check with the given search options.
pub fn parity_torsion_crosscheck_with(
    x: &VirtualRep,
    opts: &UnitModuleOptions,
) -> Result<ParityTorsionReport> {
    let n = x.order();
    let r = two_exponent(n)?;
    let mut report = ParityTorsionReport {
        x: x.to_string(),
        parity: None,
        in_ker_res: false,
        generators: Vec::new(),
        exponent_bound: opts.exponent_bound,
        tau: None,
        class: None,
        witness_exponents: None,
        witness_verified: false,
        status: CrosscheckStatus::NotApplicable,
    };
    if x.is_zero() {
        report.parity = Some(Parity::Even);
        report.in_ker_res = true;
        report.class = Some(Vec::new());
        report.witness_exponents = Some(Vec::new());
        report.witness_verified = true;
        report.status = CrosscheckStatus::EvenWitnessFound;
        return Ok(report);
    }
    let lattice = rt_lattice(r)?;
    let Some(coeffs) = lattice.solve(&std_basis(r)?.to_coords(x)?) else {
        return Ok(report);
    };
    let parity = parity_and_depth(&lattice, &coeffs)?.parity;
    report.parity = Some(parity);
    report.in_ker_res = x.restrict(n / 2)?.is_zero();
    if !report.in_ker_res {
        return Ok(report);
    }

    let (pos, neg) = x.weight_lists();
    let as_i64 = |v: Vec<u64>| v.into_iter().map(|a| a as i64).collect::<Vec<_>>();
    let tau = reidemeister_quotient(n as usize, &as_i64(pos), &as_i64(neg))?;
    report.tau = Some(tau.value().to_string());
    let labels: Vec<u64> = (1..n / 2).filter(|i| i % 4 == 1).collect();
    let mut units: Vec<TorsionUnit> = labels
        .iter()
        .map(|&i| u_1i_2group(r, i))
        .collect::<Result<_>>()?;
    units.push(tau.clone());
    report.generators = labels.iter().map(|i| format!("U1,{i}")).collect();
    report.generators.push("tau".into());

    let presented = unit_subgroup_module(&units, Involution::NonOriented, opts)?;
    let Some(module) = presented.module else {
        report.status = CrosscheckStatus::SearchExhausted;
        return Ok(report);
    };
    let k = module.n_gens();
    let mut tau_vec = vec![BigInt::zero(); k];
    tau_vec[k - 1] = BigInt::from(1);
    let h1 = tate(&module, 1)?;
    let Some(class) = h1.class_map(&tau_vec) else {
        report.status = CrosscheckStatus::SearchExhausted;
        return Ok(report);
    };
    let trivial = class.iter().all(Zero::is_zero);
    report.class = Some(class.iter().map(ToString::to_string).collect());

    report.status = match (parity, trivial) {
        (Parity::Odd, false) => CrosscheckStatus::OddClassNontrivial,
        (Parity::Even, true) => {
            match coboundary_witness(&module, &tau_vec) {
                Some(e) => {
                    report.witness_verified = verify_witness(&units, &tau, &e)?;
                    report.witness_exponents = Some(e);
                    if report.witness_verified {
                        CrosscheckStatus::EvenWitnessFound
                    } else {
                        CrosscheckStatus::Disagreement
                    }
                }
                None => CrosscheckStatus::Disagreement,
            }
        }
        _ => CrosscheckStatus::Disagreement,
    };
    Ok(report)
}

/// Runs the check with exponent bound 3.
pub fn parity_torsion_crosscheck(x: &VirtualRep) -> Result<ParityTorsionReport> {
    let opts = UnitModuleOptions {
        exponent_bound: 3,
        ..Default::default()
    };
    parity_torsion_crosscheck_with(x, &opts)
}

/// Row vector `e` with `e (T - 1) = tau` modulo relations.
fn coboundary_witness(module: &crate::tate::C2Module, tau: &[BigInt]) -> Option<Vec<i64>> {
    let k = module.n_gens();
    let mut t_minus = module.involution().clone();
    for i in 0..k {
        let v = t_minus.get(i, i) - 1;
        t_minus.set(i, i, v);
    }
    let stacked: IntMatrix = t_minus.vstack(module.relations());
    let sol = solve(&stacked.transpose(), tau)?;
    sol[..k].iter().map(|c| c.to_i64()).collect()
}

/// Checks `tau = w̄ w^{-1}` up to `±t^m` for `w = Π g^e`.
fn verify_witness(gens: &[TorsionUnit], tau: &TorsionUnit, e: &[i64]) -> Result<bool> {
    let n = tau.order();
    let mut w = TorsionUnit::one(n);
    for (g, &c) in gens.iter().zip(e) {
        if c != 0 {
            w = w.mul(&g.pow(c)?)?;
        }
    }
    let cobound = w.apply_involution(Involution::NonOriented)?.mul(&w.inv())?;
    Ok(tau.mul(&cobound.inv())?.is_trivial())
}
