//! Reidemeister torsion quotients `prod (t^{a_i} - 1) / prod (t^{b_i} - 1)`
//! as verified units of `Z[C(N)]`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::ring::{GroupRingElem, Involution};
use crate::arith::{gcd, inv_mod, modulo, pow_mod};
use crate::error::{domain, precondition, Error, Result};
use crate::rep::VirtualRep;

/// `sum_{j < c} t^{b j}` with `c = a / b mod N`, so that
/// `(t^b - 1) * result = t^a - 1`.
pub fn geom_quotient(n: usize, a: i64, b: i64) -> Result<GroupRingElem> {
    let nn = n as u64;
    let b = modulo(b, nn);
    let binv = inv_mod(b, nn).ok_or_else(|| Error::Domain(format!("{b} is not a unit modulo {n}")))?;
    let c = (modulo(a, nn) as u128 * binv as u128 % nn as u128) as u64;
    let mut coeffs = vec![BigInt::zero(); n];
    let mut pos = 0u64;
    for _ in 0..c {
        coeffs[pos as usize] += 1;
        pos = (pos + b) % nn;
    }
    Ok(GroupRingElem::from_poly(n, &coeffs))
}

/// Subtracts the multiple of the norm element that brings the augmentation
/// to `±1`. Projections to `Phi_d` for `d > 1` are unchanged.
pub fn nu_normalize(p: &GroupRingElem) -> Result<GroupRingElem> {
    let n = BigInt::from(p.order() as u64);
    let eps = p.augmentation();
    let iota = if (&eps - BigInt::one()).is_multiple_of(&n) {
        BigInt::one()
    } else if (&eps + BigInt::one()).is_multiple_of(&n) {
        BigInt::from(-1)
    } else {
        return precondition(format!(
            "augmentation {eps} is not ±1 modulo {n}; no normalization to a unit"
        ));
    };
    let lambda = (eps - iota) / &n;
    if lambda.is_zero() {
        return Ok(p.clone());
    }
    Ok(p - &GroupRingElem::nu(p.order()).scale(&lambda))
}

/// A unit of `Z[C(N)]` together with an inverse, verified at construction:
/// `value * inverse = sign * t^shift`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionUnit {
    value: GroupRingElem,
    inverse: GroupRingElem,
    sign: i8,
    shift: usize,
}

impl TorsionUnit {
    pub fn new(value: GroupRingElem, inverse: GroupRingElem) -> Result<Self> {
        let prod = &value * &inverse;
        let (sign, shift) = prod.as_trivial_unit().ok_or_else(|| {
            Error::Internal(format!("({value}) * ({inverse}) = {prod} is not a trivial unit"))
        })?;
        let eps = value.augmentation();
        if !(eps.is_one() || eps == BigInt::from(-1)) {
            return Err(Error::Internal(format!("unit with augmentation {eps}")));
        }
        Ok(TorsionUnit {
            value,
            inverse,
            sign,
            shift,
        })
    }

    pub fn one(n: usize) -> Self {
        TorsionUnit {
            value: GroupRingElem::one(n),
            inverse: GroupRingElem::one(n),
            sign: 1,
            shift: 0,
        }
    }

    /// `±t^m` as a unit.
    pub fn trivial(n: usize, sign: i8, m: i64) -> Self {
        let s = BigInt::from(sign);
        let value = GroupRingElem::monomial(n, m, s.clone());
        let inverse = GroupRingElem::monomial(n, -m, s);
        TorsionUnit {
            value,
            inverse,
            sign: 1,
            shift: 0,
        }
    }

    pub fn value(&self) -> &GroupRingElem {
        &self.value
    }

    pub fn inverse_value(&self) -> &GroupRingElem {
        &self.inverse
    }

    pub fn order(&self) -> usize {
        self.value.order()
    }

    /// The trivial unit `sign * t^shift` equal to `value * inverse`.
    pub fn product_witness(&self) -> (i8, usize) {
        (self.sign, self.shift)
    }

    pub fn mul(&self, other: &TorsionUnit) -> Result<TorsionUnit> {
        TorsionUnit::new(&self.value * &other.value, &self.inverse * &other.inverse)
    }

    pub fn inv(&self) -> TorsionUnit {
        TorsionUnit {
            value: self.inverse.clone(),
            inverse: self.value.clone(),
            sign: self.sign,
            shift: self.shift,
        }
    }

    pub fn pow(&self, e: i64) -> Result<TorsionUnit> {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let k = e.unsigned_abs();
        TorsionUnit::new(base.value.pow(k), base.inverse.pow(k))
    }

    pub fn apply_involution(&self, inv: Involution) -> Result<TorsionUnit> {
        TorsionUnit::new(
            self.value.apply_involution(inv)?,
            self.inverse.apply_involution(inv)?,
        )
    }

    /// Whether this unit is `±t^m`.
    pub fn is_trivial(&self) -> bool {
        self.value.as_trivial_unit().is_some()
    }
}

/// `Δ(V1)/Δ(V2)` for raw weight lists, paired in order, normalized to
/// augmentation `±1`.
pub fn reidemeister_quotient(n: usize, v1: &[i64], v2: &[i64]) -> Result<TorsionUnit> {
    if v1.len() != v2.len() {
        return precondition("weight lists have different lengths");
    }
    let nn = n as u64;
    for &a in v1.iter().chain(v2) {
        if gcd(modulo(a, nn), nn) != 1 {
            return precondition(format!("weight {a} is not a unit modulo {n}"));
        }
    }
    let prod = |ws: &[i64]| {
        ws.iter()
            .fold(1u128, |acc, &a| acc * modulo(a, nn) as u128 % nn as u128) as u64
    };
    let (p1, p2) = (prod(v1), prod(v2));
    if p1 != p2 && (p1 + p2) % nn != 0 {
        return precondition(format!(
            "weight products {p1} and {p2} differ modulo ±1 in Z/{n}; not homotopy equivalent"
        ));
    }
    let mut value = GroupRingElem::one(n);
    let mut inverse = GroupRingElem::one(n);
    for (&a, &b) in v1.iter().zip(v2) {
        value = &value * &geom_quotient(n, a, b)?;
        inverse = &inverse * &geom_quotient(n, b, a)?;
    }
    TorsionUnit::new(nu_normalize(&value)?, nu_normalize(&inverse)?)
}

/// Torsion quotient for two free representations, using canonical weights.
pub fn reidemeister_quotient_reps(v1: &VirtualRep, v2: &VirtualRep) -> Result<TorsionUnit> {
    if v1.order() != v2.order() {
        return domain("representations live over different groups");
    }
    if !v1.is_free() || !v2.is_free() {
        return domain("torsion quotient needs free representations");
    }
    let weights = |v: &VirtualRep| -> Result<Vec<i64>> {
        let (pos, neg) = v.weight_lists();
        if !neg.is_empty() {
            return domain("torsion quotient needs actual, not virtual, representations");
        }
        Ok(pos.into_iter().map(|a| a as i64).collect())
    };
    reidemeister_quotient(v1.order() as usize, &weights(v1)?, &weights(v2)?)
}

/// `u(a,b;c,d) = (t^{5^a}-1)(t^{5^b}-1) / ((t^{5^c}-1)(t^{5^d}-1))` over `C(2^r)`.
pub fn unit_quotient_5powers(r: u32, a: u64, b: u64, c: u64, d: u64) -> Result<TorsionUnit> {
    if !(2..=16).contains(&r) {
        return precondition(format!("r = {r} outside 2..=16"));
    }
    let period = 1u64 << (r - 2);
    if (a + b) % period != (c + d) % period {
        return precondition(format!(
            "{a} + {b} and {c} + {d} differ modulo 2^{}",
            r - 2
        ));
    }
    let n = 1u64 << r;
    let w = |e: u64| pow_mod(5, e, n) as i64;
    reidemeister_quotient(n as usize, &[w(a), w(b)], &[w(c), w(d)])
}

/// Outcome of comparing `τ(t)τ(-t)` with the torsion quotient of the same
/// weights over the index-2 subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauCheck {
    pub product: GroupRingElem,
    pub even_supported: bool,
    pub matches_subgroup_quotient: bool,
}

impl TauCheck {
    pub fn holds(&self) -> bool {
        self.even_supported && self.matches_subgroup_quotient
    }
}

/// Checks that `τ(t)τ(-t)` is the image under `s -> t^2` of a given element
/// of `Z[s]/(s^{N/2} - 1)`.
pub fn tau_product_matches(tau: &GroupRingElem, h_quotient: &GroupRingElem) -> Result<TauCheck> {
    let n = tau.order();
    if !n.is_multiple_of(2) || h_quotient.order() * 2 != n {
        return domain("tau product check needs C(N) with N even and a C(N/2) element");
    }
    let product = tau * &tau.substitute_neg()?;
    let even_supported = product
        .coeffs()
        .iter()
        .enumerate()
        .all(|(j, c)| j % 2 == 0 || c.is_zero());
    let image = h_quotient.substitute_power(n, 2)?;
    Ok(TauCheck {
        matches_subgroup_quotient: product == image,
        product,
        even_supported,
    })
}

/// `τ = Δ(V1)/Δ(V2)` satisfies `τ(t)τ(-t) = τ_H(t^2)`, where `τ_H` is the
/// quotient of the same weights over the subgroup of index 2.
pub fn tau_induced_check(n: usize, v1: &[i64], v2: &[i64]) -> Result<TauCheck> {
    if !n.is_multiple_of(2) || n < 6 {
        return precondition(format!("tau check needs an even order N >= 6, got {n}"));
    }
    let tau = reidemeister_quotient(n, v1, v2)?;
    let h = n / 2;
    let reduce = |ws: &[i64]| -> Vec<i64> { ws.iter().map(|&a| modulo(a, h as u64) as i64).collect() };
    let tau_h = reidemeister_quotient(h, &reduce(v1), &reduce(v2))?;
    tau_product_matches(tau.value(), tau_h.value())
}
