use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly;
use super::ring::{GroupRingElem, Involution};
use crate::arith::divisors;
use crate::error::{domain, Error, Result};
use crate::linalg::{solve, IntMatrix};

fn cache() -> &'static RwLock<HashMap<u64, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The cyclotomic polynomial `Phi_d`, obtained by dividing `t^d - 1` by
/// `Phi_e` for every proper divisor `e` of `d`.
pub fn cyclotomic_poly(d: u64) -> Arc<Vec<BigInt>> {
    assert!(d > 0, "cyclotomic index must be positive");
    if let Some(p) = cache().read().expect("cyclotomic cache poisoned").get(&d) {
        return Arc::clone(p);
    }
    let mut p = vec![BigInt::zero(); d as usize + 1];
    p[0] = BigInt::from(-1);
    p[d as usize] = BigInt::one();
    for e in divisors(d) {
        if e == d {
            continue;
        }
        let phi_e = cyclotomic_poly(e);
        p = poly::div_exact_monic(&p, &phi_e).expect("cyclotomic division left a remainder");
    }
    let p = Arc::new(p);
    cache()
        .write()
        .expect("cyclotomic cache poisoned")
        .insert(d, Arc::clone(&p));
    p
}

/// Element of `Z[t]/Phi_d(t)`, stored as its reduced coefficient vector of
/// length `phi(d)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclotomicElem {
    d: u64,
    coeffs: Vec<BigInt>,
}

impl CyclotomicElem {
    pub fn from_poly(d: u64, p: &[BigInt]) -> Self {
        let phi = cyclotomic_poly(d);
        CyclotomicElem {
            d,
            coeffs: poly::rem_monic(p, &phi),
        }
    }

    pub fn from_i64(d: u64, p: &[i64]) -> Self {
        let big: Vec<BigInt> = p.iter().map(|&c| BigInt::from(c)).collect();
        Self::from_poly(d, &big)
    }

    pub fn one(d: u64) -> Self {
        Self::from_i64(d, &[1])
    }

    pub fn t_pow(d: u64, j: u64) -> Self {
        let mut p = vec![BigInt::zero(); (j % d) as usize + 1];
        p[(j % d) as usize] = BigInt::one();
        Self::from_poly(d, &p)
    }

    pub fn conductor(&self) -> u64 {
        self.d
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree_bound(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one(self.d)
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.d, other.d, "cyclotomic conductors differ");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        CyclotomicElem {
            d: self.d,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check(other);
        CyclotomicElem {
            d: self.d,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        CyclotomicElem {
            d: self.d,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        Self::from_poly(self.d, &poly::mul(&self.coeffs, &other.coeffs))
    }

    /// Lift to `Z[C(d)]`.
    pub fn lift(&self) -> GroupRingElem {
        GroupRingElem::from_poly(self.d as usize, &self.coeffs)
    }

    /// Involutions descend to `Z[t]/Phi_d` when they preserve primitive
    /// `d`-th roots of unity: the non-oriented one needs `4 | d`.
    pub fn apply_involution(&self, inv: Involution) -> Result<Self> {
        if inv == Involution::NonOriented && !self.d.is_multiple_of(4) {
            return domain(format!(
                "t -> -t^-1 does not preserve Phi_{} (needs 4 | d)",
                self.d
            ));
        }
        let image = self.lift().apply_involution(inv)?;
        Ok(Self::from_poly(self.d, image.coeffs()))
    }

    /// `Some((sign, m))` when this element equals `sign * t^m`.
    pub fn as_trivial_unit(&self) -> Option<(i8, u64)> {
        for m in 0..self.d {
            let tm = Self::t_pow(self.d, m);
            if *self == tm {
                return Some((1, m));
            }
            if *self == tm.neg() {
                return Some((-1, m));
            }
        }
        None
    }
}

impl fmt::Display for CyclotomicElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&poly::format(&self.coeffs))
    }
}

/// Projection `Z[t]/(t^N - 1) -> Z[t]/Phi_d` for `d | N`.
pub fn project(x: &GroupRingElem, d: u64) -> Result<CyclotomicElem> {
    let n = x.order() as u64;
    if d == 0 || !n.is_multiple_of(d) {
        return domain(format!("{d} does not divide {n}"));
    }
    let folded = x.fold(d as usize)?;
    Ok(CyclotomicElem::from_poly(d, folded.coeffs()))
}

/// Exact quotient `x / y` in `Z[t]/Phi_d`, found by solving the integer
/// linear system given by the multiplication matrix of `y`.
pub fn cyclotomic_divide(x: &CyclotomicElem, y: &CyclotomicElem) -> Result<CyclotomicElem> {
    x.check(y);
    if y.is_zero() {
        return domain("division by zero in a cyclotomic ring");
    }
    let d = x.d;
    let deg = y.coeffs.len();
    let columns: Vec<CyclotomicElem> = (0..deg as u64)
        .map(|j| y.mul(&CyclotomicElem::t_pow(d, j)))
        .collect();
    let rows: Vec<Vec<BigInt>> = (0..deg)
        .map(|i| columns.iter().map(|c| c.coeffs[i].clone()).collect())
        .collect();
    let m = IntMatrix::from_rows(deg, rows);
    match solve(&m, &x.coeffs) {
        Some(z) => Ok(CyclotomicElem { d, coeffs: z }),
        None => Err(Error::NotDivisible(format!(
            "({x}) / ({y}) is not integral in Z[t]/Phi_{d}"
        ))),
    }
}
