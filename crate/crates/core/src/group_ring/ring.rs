use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::poly;
use crate::arith::{gcd, modulo};
use crate::error::{domain, Result};

/// Largest group order accepted by the group ring.
pub const MAX_ORDER: usize = 1 << 16;

/// Element of the integral group ring `Z[t]/(t^N - 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupRingElem {
    coeffs: Vec<BigInt>,
}

/// The three coefficient involutions used on group rings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Involution {
    /// `t -> t^{-1}`
    Oriented,
    /// `t -> -t^{-1}`
    NonOriented,
    /// `t -> t^m`
    Galois(i64),
}

impl GroupRingElem {
    pub fn zero(n: usize) -> Self {
        assert!(n > 0 && n <= MAX_ORDER, "group order out of range");
        GroupRingElem {
            coeffs: vec![BigInt::zero(); n],
        }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(n, 0, BigInt::one())
    }

    /// `c * t^j`, with `j` reduced modulo `n`.
    pub fn monomial(n: usize, j: i64, c: BigInt) -> Self {
        let mut x = Self::zero(n);
        x.coeffs[modulo(j, n as u64) as usize] = c;
        x
    }

    pub fn t_pow(n: usize, j: i64) -> Self {
        Self::monomial(n, j, BigInt::one())
    }

    /// The norm element: the sum of all group elements.
    pub fn nu(n: usize) -> Self {
        GroupRingElem {
            coeffs: vec![BigInt::one(); n],
        }
    }

    /// Reduces an arbitrary-length coefficient list modulo `t^n - 1`.
    pub fn from_poly(n: usize, p: &[BigInt]) -> Self {
        let mut x = Self::zero(n);
        for (j, c) in p.iter().enumerate() {
            x.coeffs[j % n] += c;
        }
        x
    }

    pub fn from_i64(n: usize, p: &[i64]) -> Self {
        let big: Vec<BigInt> = p.iter().map(|&c| BigInt::from(c)).collect();
        Self::from_poly(n, &big)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> &BigInt {
        &self.coeffs[j]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// Augmentation: the sum of the coefficients.
    pub fn augmentation(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        GroupRingElem {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Multiplication by `t^m`.
    pub fn shift(&self, m: i64) -> Self {
        let n = self.order();
        let m = modulo(m, n as u64) as usize;
        let mut out = Self::zero(n);
        for (j, c) in self.coeffs.iter().enumerate() {
            out.coeffs[(j + m) % n] = c.clone();
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one(self.order());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `Some((sign, m))` when this element is `sign * t^m`.
    pub fn as_trivial_unit(&self) -> Option<(i8, usize)> {
        let mut found = None;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if found.is_some() || !c.abs().is_one() {
                return None;
            }
            found = Some((if c.is_positive() { 1 } else { -1 }, j));
        }
        found
    }

    /// Substitution `t -> -t`; needs even order.
    pub fn substitute_neg(&self) -> Result<Self> {
        if !self.order().is_multiple_of(2) {
            return domain("t -> -t needs a group of even order");
        }
        Ok(GroupRingElem {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(j, c)| if j % 2 == 1 { -c } else { c.clone() })
                .collect(),
        })
    }

    /// Image under `t -> t^k` in `Z[t]/(t^n - 1)`; needs `n | k * order`.
    pub fn substitute_power(&self, n: usize, k: usize) -> Result<Self> {
        if !(self.order() * k).is_multiple_of(n) {
            return domain(format!(
                "t -> t^{k} does not map C({}) into C({n})",
                self.order()
            ));
        }
        let mut out = Self::zero(n);
        for (j, c) in self.coeffs.iter().enumerate() {
            out.coeffs[(j * k) % n] += c;
        }
        Ok(out)
    }

    /// Reduction along the quotient map `C(N) -> C(d)`.
    pub fn fold(&self, d: usize) -> Result<Self> {
        if d == 0 || !self.order().is_multiple_of(d) {
            return domain(format!("{d} does not divide {}", self.order()));
        }
        Ok(Self::from_poly(d, &self.coeffs))
    }

    pub fn apply_involution(&self, inv: Involution) -> Result<Self> {
        let n = self.order();
        let mut out = Self::zero(n);
        match inv {
            Involution::Oriented => {
                for (j, c) in self.coeffs.iter().enumerate() {
                    out.coeffs[(n - j) % n] = c.clone();
                }
            }
            Involution::NonOriented => {
                if !n.is_multiple_of(2) {
                    return domain("the non-oriented involution needs a group of even order");
                }
                for (j, c) in self.coeffs.iter().enumerate() {
                    out.coeffs[(n - j) % n] = if j % 2 == 1 { -c } else { c.clone() };
                }
            }
            Involution::Galois(m) => {
                let m = modulo(m, n as u64);
                if gcd(m, n as u64) != 1 {
                    return domain(format!("{m} is not a unit modulo {n}"));
                }
                for (j, c) in self.coeffs.iter().enumerate() {
                    out.coeffs[(j as u128 * m as u128 % n as u128) as usize] = c.clone();
                }
            }
        }
        Ok(out)
    }

    /// The `2n` elements `±t^m * self`, minimized lexicographically; equal
    /// exactly when two elements differ by a trivial unit.
    pub fn canonical_mod_trivial(&self) -> Vec<BigInt> {
        let n = self.order();
        let mut best: Option<Vec<BigInt>> = None;
        for m in 0..n {
            let shifted: Vec<BigInt> = (0..n).map(|j| self.coeffs[(j + m) % n].clone()).collect();
            let negated: Vec<BigInt> = shifted.iter().map(|c| -c).collect();
            for cand in [shifted, negated] {
                if best.as_ref().is_none_or(|b| cand < *b) {
                    best = Some(cand);
                }
            }
        }
        best.unwrap_or_default()
    }

    pub fn parse(n: usize, s: &str) -> Result<Self> {
        Ok(Self::from_poly(n, &poly::parse(s)?))
    }
}

impl fmt::Display for GroupRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&poly::format(&self.coeffs))
    }
}

impl<'a> Add<&'a GroupRingElem> for &'a GroupRingElem {
    type Output = GroupRingElem;
    fn add(self, rhs: &GroupRingElem) -> GroupRingElem {
        assert_eq!(self.order(), rhs.order(), "group orders differ");
        GroupRingElem {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a GroupRingElem> for &'a GroupRingElem {
    type Output = GroupRingElem;
    fn sub(self, rhs: &GroupRingElem) -> GroupRingElem {
        assert_eq!(self.order(), rhs.order(), "group orders differ");
        GroupRingElem {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &GroupRingElem {
    type Output = GroupRingElem;
    fn neg(self) -> GroupRingElem {
        GroupRingElem {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl<'a> Mul<&'a GroupRingElem> for &'a GroupRingElem {
    type Output = GroupRingElem;
    fn mul(self, rhs: &GroupRingElem) -> GroupRingElem {
        let n = self.order();
        assert_eq!(n, rhs.order(), "group orders differ");
        let mut out = GroupRingElem::zero(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[(i + j) % n] += a * b;
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let t = GroupRingElem::t_pow(8, 1);
        assert!(t.pow(8).is_one());
        let x = GroupRingElem::parse(8, "1 + 2*t - t^7").unwrap();
        assert_eq!(x.augmentation(), BigInt::from(2));
        assert_eq!(x.to_string(), "1 + 2*t - t^7");
        assert_eq!(GroupRingElem::parse(8, &x.to_string()).unwrap(), x);
        assert_eq!((&x * &GroupRingElem::one(8)), x);
        assert_eq!(GroupRingElem::parse(4, "t^5").unwrap(), GroupRingElem::t_pow(4, 1));
    }

    #[test]
    fn involutions() {
        let t = GroupRingElem::t_pow(8, 1);
        assert_eq!(
            t.apply_involution(Involution::NonOriented).unwrap(),
            -&GroupRingElem::t_pow(8, 7)
        );
        let x = GroupRingElem::parse(8, "3 - t + 2*t^3 + t^6").unwrap();
        for inv in [Involution::Oriented, Involution::NonOriented] {
            let twice = x.apply_involution(inv).unwrap().apply_involution(inv).unwrap();
            assert_eq!(twice, x);
        }
        assert_eq!(
            x.apply_involution(Involution::Galois(3)).unwrap(),
            GroupRingElem::parse(8, "3 - t^3 + 2*t + t^2").unwrap()
        );
        assert!(x.apply_involution(Involution::Galois(2)).is_err());
        assert!(GroupRingElem::one(5).apply_involution(Involution::NonOriented).is_err());
    }

    #[test]
    fn trivial_units() {
        let u = -&GroupRingElem::t_pow(6, 4);
        assert_eq!(u.as_trivial_unit(), Some((-1, 4)));
        assert_eq!(GroupRingElem::nu(6).as_trivial_unit(), None);
        let x = GroupRingElem::parse(6, "1 + 2*t").unwrap();
        let y = -&x.shift(3);
        assert_eq!(x.canonical_mod_trivial(), y.canonical_mod_trivial());
    }
}
