//! Exact checks of explicit unit identities in `Z[C(2^r)]` and in the
//! cyclotomic ring `Z[t]/Phi_{4q}`.

use serde::Serialize;

use super::cyclotomic::{cyclotomic_divide, project, CyclotomicElem};
use super::ring::{GroupRingElem, Involution};
use super::units::{geom_quotient, reidemeister_quotient, unit_quotient_5powers, TorsionUnit};
use crate::arith::{gcd, pow_mod};
use crate::error::{precondition, Result};

/// `U_{1,j} = Δ(t^{1+2q} ⊕ t^{j+2q}) / Δ(t ⊕ t^j)` over `C(4q)`.
pub fn u_1j_c4q(q: u64, j: u64) -> Result<TorsionUnit> {
    let n = 4 * q;
    let (a, b) = (1 + 2 * q, j + 2 * q);
    reidemeister_quotient(n as usize, &[a as i64, b as i64], &[1, j as i64])
}

/// `U_{1,i} = Δ(t ⊕ t^i) / Δ(t^{1+N/2} ⊕ t^{i+N/2})` over `C(2^r)`.
pub fn u_1i_2group(r: u32, i: u64) -> Result<TorsionUnit> {
    let n = 1u64 << r;
    let h = n / 2;
    reidemeister_quotient(n as usize, &[1, i as i64], &[(1 + h) as i64, (i + h) as i64])
}

/// Weights `j < 4q` with `gcd(j, 2q) = 1` and `j = 1 mod 4`.
pub fn legal_gamma_indices(q: u64) -> Vec<u64> {
    (1..4 * q)
        .filter(|&j| j % 4 == 1 && gcd(j, 2 * q) == 1)
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityVReport {
    pub q: u64,
    pub v: String,
    pub v_times_vbar_is_minus_one: bool,
    pub v_over_vbar_is_minus_u11: bool,
    pub holds: bool,
}

/// `v = (t+1)/(t-1)` in `Z[t]/Phi_{4q}`: checks `v v̄ = -1` and
/// `v / v̄ = -u_{1,1}` under `t -> -t^{-1}`.
pub fn verify_identity_v(q: u64) -> Result<IdentityVReport> {
    if q < 3 || q.is_multiple_of(2) {
        return precondition(format!("q must be odd and at least 3, got {q}"));
    }
    let d = 4 * q;
    let v = cyclotomic_divide(
        &CyclotomicElem::from_i64(d, &[1, 1]),
        &CyclotomicElem::from_i64(d, &[-1, 1]),
    )?;
    let vbar = v.apply_involution(Involution::NonOriented)?;
    let minus_one = CyclotomicElem::one(d).neg();
    let first = v.mul(&vbar) == minus_one;
    let u11 = project(u_1j_c4q(q, 1)?.value(), d)?;
    let second = match cyclotomic_divide(&v, &vbar) {
        Ok(ratio) => ratio == u11.neg(),
        Err(_) => false,
    };
    Ok(IdentityVReport {
        q,
        v: v.to_string(),
        v_times_vbar_is_minus_one: first,
        v_over_vbar_is_minus_u11: second,
        holds: first && second,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityGammaReport {
    pub q: u64,
    pub j: u64,
    pub gamma: String,
    pub lhs: String,
    pub rhs: String,
    /// `γ̄_j/γ_j = u_{1,j}/u_{1,1}` holds on the nose.
    pub exact: bool,
    /// `(sign, m)` with `lhs = sign * t^m * rhs`, when such a pair exists.
    pub up_to_trivial: Option<(i8, u64)>,
    /// Same comparison with `U_{1,j}` replaced by its inverse.
    pub inverse_orientation_exact: bool,
    pub holds: bool,
}

/// `γ_j = (t^j - 1)/(t - 1)`: compares `γ̄_j/γ_j` with `u_{1,j}/u_{1,1}` in
/// `Z[t]/Phi_{4q}`.
pub fn verify_identity_gamma(q: u64, j: u64) -> Result<IdentityGammaReport> {
    if q < 3 || q.is_multiple_of(2) {
        return precondition(format!("q must be odd and at least 3, got {q}"));
    }
    if j % 4 != 1 || gcd(j, 2 * q) != 1 {
        return precondition(format!("j = {j} must be a unit with j = 1 mod 4"));
    }
    let d = 4 * q;
    let gamma = project(&geom_quotient(d as usize, j as i64, 1)?, d)?;
    let gbar = gamma.apply_involution(Involution::NonOriented)?;
    let lhs = cyclotomic_divide(&gbar, &gamma)?;
    let u1j = project(u_1j_c4q(q, j)?.value(), d)?;
    let u11 = project(u_1j_c4q(q, 1)?.value(), d)?;
    let rhs = cyclotomic_divide(&u1j, &u11)?;
    let up_to_trivial = cyclotomic_divide(&lhs, &rhs)
        .ok()
        .and_then(|ratio| ratio.as_trivial_unit());
    let inverse_rhs = cyclotomic_divide(&u11, &u1j)?;
    Ok(IdentityGammaReport {
        q,
        j,
        gamma: gamma.to_string(),
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        exact: lhs == rhs,
        up_to_trivial,
        inverse_orientation_exact: lhs == inverse_rhs,
        holds: up_to_trivial.is_some(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorizationReport {
    pub r: u32,
    pub params: Vec<i64>,
    pub u: String,
    pub v: String,
    pub exact: bool,
    pub up_to_trivial: Option<(i8, usize)>,
    pub holds: bool,
}

fn compare_up_to_trivial(lhs: &TorsionUnit, rhs: &TorsionUnit) -> Result<(bool, Option<(i8, usize)>)> {
    let ratio: GroupRingElem = lhs.value() * rhs.inverse_value();
    let (s, m) = rhs.product_witness();
    let witness = ratio.as_trivial_unit().map(|(sign, shift)| {
        let n = lhs.order();
        (sign * s, (shift + n - m) % n)
    });
    Ok((lhs.value() == rhs.value(), witness))
}

/// With `P = 2^{r-s-2}`, `u = u(i, P+i+2; P+i, i+2)` and
/// `v = u(i, P+i+1; i+1, P+i)`: checks `u = σ_5(v) v` up to `±t^m`.
pub fn verify_sigma_v_factorization(r: u32, s: u32, i: u64) -> Result<FactorizationReport> {
    if r < 5 || s < 1 || s + 4 > r {
        return precondition(format!("need r >= 5 and 1 <= s <= r - 4, got r = {r}, s = {s}"));
    }
    let p = 1u64 << (r - s - 2);
    if i + 2 >= p {
        return precondition(format!("need 0 <= i < 2^(r-s-2) - 2 = {}, got i = {i}", p - 2));
    }
    let u = unit_quotient_5powers(r, i, p + i + 2, p + i, i + 2)?;
    let v = unit_quotient_5powers(r, i, p + i + 1, i + 1, p + i)?;
    let sv = v.apply_involution(Involution::Galois(5))?.mul(&v)?;
    let (exact, up_to_trivial) = compare_up_to_trivial(&sv, &u)?;
    Ok(FactorizationReport {
        r,
        params: vec![s as i64, i as i64],
        u: u.value().to_string(),
        v: v.value().to_string(),
        exact,
        up_to_trivial,
        holds: up_to_trivial.is_some(),
    })
}

/// All `(s, i)` accepted by [`verify_sigma_v_factorization`] for this `r`.
pub fn legal_sigma_v_params(r: u32) -> Vec<(u32, u64)> {
    let mut out = Vec::new();
    if r < 5 {
        return out;
    }
    for s in 1..=r - 4 {
        let p = 1u64 << (r - s - 2);
        for i in 0..p.saturating_sub(2) {
            out.push((s, i));
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct CondBReport {
    pub r: u32,
    pub candidates: Vec<u64>,
    pub passing: Vec<u64>,
    pub u: String,
    pub holds: bool,
}

/// With `Q = 2^{r-2}`, `u = (t^9-1)(t^{1+Q}-1) / ((t-1)(t^{9+Q}-1))`: searches
/// `ℓ` with `ℓ^2 = 9 mod 2^r`, `ℓ = 1 mod 4` and checks `u = σ_ℓ(v) v` up to
/// `±t^m` for `v = (t^ℓ-1)(t^{1+Q}-1) / ((t-1)(t^{ℓ+Q}-1))`.
pub fn verify_cond_b_unit(r: u32) -> Result<CondBReport> {
    if !(5..=12).contains(&r) {
        return precondition(format!("need 5 <= r <= 12, got {r}"));
    }
    let n = 1u64 << r;
    let q = n / 4;
    let u = reidemeister_quotient(n as usize, &[9, (1 + q) as i64], &[1, (9 + q) as i64])?;
    let candidates: Vec<u64> = (1..n)
        .filter(|&l| l % 4 == 1 && pow_mod(l, 2, n) == 9)
        .collect();
    let mut passing = Vec::new();
    for &l in &candidates {
        let v = reidemeister_quotient(n as usize, &[l as i64, (1 + q) as i64], &[1, (l + q) as i64])?;
        let prod = v.apply_involution(Involution::Galois(l as i64))?.mul(&v)?;
        if compare_up_to_trivial(&prod, &u)?.1.is_some() {
            passing.push(l);
        }
    }
    Ok(CondBReport {
        r,
        holds: !passing.is_empty(),
        candidates,
        passing,
        u: u.value().to_string(),
    })
}
