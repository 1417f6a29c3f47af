//! The real representation ring of a finite cyclic group.
//!
//! Irreducible real representations of `C(N) = <t>` are the trivial line
//! `R+`, the sign line `R-` (only for even `N`) and the 2-dimensional
//! rotation representations `t^a` with `a` not congruent to `0` or `N/2`.
//! Weights are stored canonically so that equal representations have equal
//! multiplicity maps.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, inv_mod, modulo, split_two_power};
use crate::error::{domain, precondition, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CyclicGroup {
    order: u64,
}

impl CyclicGroup {
    pub fn new(order: u64) -> Result<Self> {
        if order == 0 {
            return domain("group order must be positive");
        }
        Ok(CyclicGroup { order })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn two_exponent(&self) -> u32 {
        split_two_power(self.order).0
    }

    pub fn odd_part(&self) -> u64 {
        split_two_power(self.order).1
    }

    pub fn has_subgroup(&self, d: u64) -> bool {
        d > 0 && self.order.is_multiple_of(d)
    }

    pub fn is_two_group(&self) -> bool {
        self.order.is_power_of_two()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Irreducible {
    Weight(u64),
    RPlus,
    RMinus,
}

impl Irreducible {
    pub fn dim(&self) -> i64 {
        match self {
            Irreducible::Weight(_) => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for Irreducible {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Irreducible::Weight(1) => write!(f, "t"),
            Irreducible::Weight(a) => write!(f, "t{a}"),
            Irreducible::RPlus => write!(f, "rplus"),
            Irreducible::RMinus => write!(f, "rminus"),
        }
    }
}

/// What a raw weight becomes over `C(n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightClass {
    Weight(u64),
    /// Weight 0: two copies of `R+`.
    TwoRPlus,
    /// Weight `n/2`: two copies of `R-`.
    TwoRMinus,
}

/// Canonical representative of the weight `a` over `C(n)`.
pub fn canonical_weight(a: i64, n: u64) -> WeightClass {
    let a = modulo(a, n);
    if a == 0 {
        return WeightClass::TwoRPlus;
    }
    if 2 * a == n {
        return WeightClass::TwoRMinus;
    }
    let b = n - a;
    if n.is_multiple_of(4) && gcd(a, n) == 1 {
        WeightClass::Weight(if a % 4 == 1 { a } else { b })
    } else {
        WeightClass::Weight(a.min(b))
    }
}

/// A raw literal term before canonicalization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Term {
    Weight(i64),
    RPlus,
    RMinus,
}

/// Finitely supported integer combination of irreducibles of `C(n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VirtualRep {
    n: u64,
    mult: BTreeMap<Irreducible, i64>,
}

impl VirtualRep {
    pub fn zero(n: u64) -> Self {
        assert!(n > 0, "group order must be positive");
        VirtualRep {
            n,
            mult: BTreeMap::new(),
        }
    }

    /// Sum of `t^a` over the given raw weights.
    pub fn from_weights(n: u64, weights: &[i64]) -> Self {
        let mut x = Self::zero(n);
        for &a in weights {
            x.add_weight(a, 1);
        }
        x
    }

    /// `pos - neg` for two raw weight lists.
    pub fn difference(n: u64, pos: &[i64], neg: &[i64]) -> Self {
        let mut x = Self::from_weights(n, pos);
        for &a in neg {
            x.add_weight(a, -1);
        }
        x
    }

    pub fn from_terms(n: u64, terms: &[(i64, Term)]) -> Result<Self> {
        let mut x = Self::zero(n);
        for &(c, term) in terms {
            match term {
                Term::Weight(a) => {
                    if n < 3 && modulo(a, n) != 0 && 2 * modulo(a, n) != n {
                        return domain(format!("weight {a} is not defined over C({n})"));
                    }
                    x.add_weight(a, c)
                }
                Term::RPlus => x.add_irr(Irreducible::RPlus, c)?,
                Term::RMinus => x.add_irr(Irreducible::RMinus, c)?,
            }
        }
        Ok(x)
    }

    pub fn order(&self) -> u64 {
        self.n
    }

    pub fn group(&self) -> CyclicGroup {
        CyclicGroup { order: self.n }
    }

    pub fn add_weight(&mut self, a: i64, c: i64) {
        let irr = match canonical_weight(a, self.n) {
            WeightClass::Weight(w) => (Irreducible::Weight(w), c),
            WeightClass::TwoRPlus => (Irreducible::RPlus, 2 * c),
            WeightClass::TwoRMinus => (Irreducible::RMinus, 2 * c),
        };
        self.bump(irr.0, irr.1);
    }

    pub fn add_irr(&mut self, irr: Irreducible, c: i64) -> Result<()> {
        match irr {
            Irreducible::RMinus if self.n % 2 == 1 => {
                return domain(format!("R- does not exist over C({})", self.n))
            }
            Irreducible::Weight(a)
                if canonical_weight(a as i64, self.n) != WeightClass::Weight(a) => {
                    return domain(format!("weight {a} is not canonical over C({})", self.n));
                }
            _ => {}
        }
        self.bump(irr, c);
        Ok(())
    }

    fn bump(&mut self, irr: Irreducible, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.mult.entry(irr).or_insert(0);
        *e += c;
        if *e == 0 {
            self.mult.remove(&irr);
        }
    }

    pub fn mult(&self, irr: Irreducible) -> i64 {
        self.mult.get(&irr).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Irreducible, i64)> + '_ {
        self.mult.iter().map(|(k, v)| (*k, *v))
    }

    pub fn is_zero(&self) -> bool {
        self.mult.is_empty()
    }

    pub fn dim(&self) -> i64 {
        self.iter().map(|(irr, c)| irr.dim() * c).sum()
    }

    /// Every summand acts with trivial kernel.
    pub fn is_free(&self) -> bool {
        self.iter().all(|(irr, _)| match irr {
            Irreducible::Weight(a) => gcd(a, self.n) == 1,
            Irreducible::RMinus => self.n == 2,
            Irreducible::RPlus => self.n == 1,
        })
    }

    fn same_group(&self, other: &VirtualRep) -> Result<()> {
        if self.n != other.n {
            return domain(format!("groups differ: C({}) vs C({})", self.n, other.n));
        }
        Ok(())
    }

    pub fn add(&self, other: &VirtualRep) -> Result<VirtualRep> {
        self.same_group(other)?;
        let mut out = self.clone();
        for (irr, c) in other.iter() {
            out.bump(irr, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &VirtualRep) -> Result<VirtualRep> {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> VirtualRep {
        let mut out = VirtualRep::zero(self.n);
        for (irr, c) in self.iter() {
            out.bump(irr, c * k);
        }
        out
    }

    /// Canonical weights of the 2-dimensional summands with positive and
    /// negative multiplicity, each repeated by its multiplicity.
    pub fn weight_lists(&self) -> (Vec<u64>, Vec<u64>) {
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        for (irr, c) in self.iter() {
            if let Irreducible::Weight(a) = irr {
                let target = if c > 0 { &mut pos } else { &mut neg };
                target.extend(std::iter::repeat_n(a, c.unsigned_abs() as usize));
            }
        }
        (pos, neg)
    }

    /// Restriction to the subgroup of order `m`.
    pub fn restrict(&self, m: u64) -> Result<VirtualRep> {
        if m == 0 || !self.n.is_multiple_of(m) {
            return domain(format!("C({m}) is not a subgroup of C({})", self.n));
        }
        let index = self.n / m;
        let mut out = VirtualRep::zero(m);
        for (irr, c) in self.iter() {
            match irr {
                Irreducible::Weight(a) => out.add_weight(a as i64, c),
                Irreducible::RPlus => out.bump(Irreducible::RPlus, c),
                Irreducible::RMinus if index % 2 == 1 => out.bump(Irreducible::RMinus, c),
                Irreducible::RMinus => out.bump(Irreducible::RPlus, c),
            }
        }
        Ok(out)
    }

    /// Induction from this group to the group of twice its order.
    pub fn induce(&self) -> VirtualRep {
        let m = self.n;
        let mut out = VirtualRep::zero(2 * m);
        for (irr, c) in self.iter() {
            match irr {
                Irreducible::Weight(a) => {
                    out.add_weight(a as i64, c);
                    out.add_weight((a + m) as i64, c);
                }
                Irreducible::RPlus => {
                    out.bump(Irreducible::RPlus, c);
                    out.bump(Irreducible::RMinus, c);
                }
                Irreducible::RMinus => out.add_weight((m / 2) as i64, c),
            }
        }
        out
    }

    /// Iterated index-2 induction up to `C(n)`.
    pub fn induce_to(&self, n: u64) -> Result<VirtualRep> {
        if !n.is_multiple_of(self.n) || !(n / self.n).is_power_of_two() {
            return domain(format!(
                "C({}) to C({n}) is not a chain of index-2 inclusions",
                self.n
            ));
        }
        let mut x = self.clone();
        while x.n < n {
            x = x.induce();
        }
        Ok(x)
    }

    /// Fixed set of the subgroup of order `m`, as a representation of the
    /// quotient `C(n/m)`.
    pub fn fixed_set(&self, m: u64) -> Result<VirtualRep> {
        if m == 0 || !self.n.is_multiple_of(m) {
            return domain(format!("C({m}) is not a subgroup of C({})", self.n));
        }
        let mut out = VirtualRep::zero(self.n / m);
        for (irr, c) in self.iter() {
            match irr {
                Irreducible::Weight(a) if a % m == 0 => out.add_weight((a / m) as i64, c),
                Irreducible::RPlus => out.bump(Irreducible::RPlus, c),
                Irreducible::RMinus if (self.n / 2).is_multiple_of(m) => out.bump(Irreducible::RMinus, c),
                _ => {}
            }
        }
        Ok(out)
    }

    /// Pulls a representation of `C(self.n)` back along `C(n) -> C(self.n)`.
    pub fn inflate(&self, n: u64) -> Result<VirtualRep> {
        if !n.is_multiple_of(self.n) {
            return domain(format!("C({}) is not a quotient of C({n})", self.n));
        }
        let k = n / self.n;
        let mut out = VirtualRep::zero(n);
        for (irr, c) in self.iter() {
            match irr {
                Irreducible::Weight(a) => out.add_weight((a * k) as i64, c),
                other => out.bump(other, c),
            }
        }
        Ok(out)
    }

    /// Splits into isotypic parts by kernel: the part at `d` is free over `C(d)`.
    pub fn split_free_parts(&self) -> BTreeMap<u64, VirtualRep> {
        let mut parts: BTreeMap<u64, VirtualRep> = BTreeMap::new();
        for (irr, c) in self.iter() {
            let (d, piece) = match irr {
                Irreducible::Weight(a) => {
                    let k = gcd(a, self.n);
                    (self.n / k, (Irreducible::Weight(a / k), c))
                }
                Irreducible::RMinus => (2, (Irreducible::RMinus, c)),
                Irreducible::RPlus => (1, (Irreducible::RPlus, c)),
            };
            let part = parts.entry(d).or_insert_with(|| VirtualRep::zero(d));
            match piece.0 {
                Irreducible::Weight(a) => part.add_weight(a as i64, piece.1),
                other => part.bump(other, piece.1),
            }
        }
        parts
    }

    /// The class of `prod a^mult` in `(Z/n)^x / {±1}`, represented by the
    /// smaller of `k` and `n - k`.
    pub fn k_invariant(&self) -> Result<u64> {
        if !self.is_free() {
            return domain("k-invariant needs a free virtual representation");
        }
        if self.dim() != 0 {
            return domain("k-invariant needs virtual dimension zero");
        }
        let n = self.n;
        if n <= 2 {
            return Ok(1);
        }
        let mut k: u128 = 1;
        for (irr, c) in self.iter() {
            if let Irreducible::Weight(a) = irr {
                let base = if c > 0 {
                    a
                } else {
                    inv_mod(a, n).ok_or_else(|| Error::Internal("free weight is not a unit".into()))?
                };
                for _ in 0..c.unsigned_abs() {
                    k = k * base as u128 % n as u128;
                }
            }
        }
        let k = k as u64;
        Ok(k.min(n - k))
    }

    /// Free representations of equal dimension whose difference has trivial
    /// k-invariant.
    pub fn homotopy_equivalent(v1: &VirtualRep, v2: &VirtualRep) -> Result<bool> {
        v1.same_group(v2)?;
        if !v1.is_free() || !v2.is_free() {
            return domain("homotopy equivalence test needs free representations");
        }
        if v1.dim() != v2.dim() {
            return domain("representations have different dimensions");
        }
        Ok(v1.sub(v2)?.k_invariant()? == 1)
    }

    /// Applies the group automorphism `t -> t^m`.
    pub fn galois_twist(&self, m: i64) -> Result<VirtualRep> {
        let mm = modulo(m, self.n);
        if gcd(mm, self.n) != 1 {
            return domain(format!("{m} is not a unit modulo {}", self.n));
        }
        let mut out = VirtualRep::zero(self.n);
        for (irr, c) in self.iter() {
            match irr {
                Irreducible::Weight(a) => {
                    let b = (a as u128 * mm as u128 % self.n as u128) as i64;
                    out.add_weight(b, c)
                }
                other => out.bump(other, c),
            }
        }
        Ok(out)
    }

    pub fn to_literal(&self) -> RepLiteral {
        let mut lit = RepLiteral {
            n: self.n,
            weights: Vec::new(),
            rplus: self.mult(Irreducible::RPlus),
            rminus: self.mult(Irreducible::RMinus),
            weights_neg: Vec::new(),
        };
        let (pos, neg) = self.weight_lists();
        lit.weights = pos.into_iter().map(|a| a as i64).collect();
        lit.weights_neg = neg.into_iter().map(|a| a as i64).collect();
        lit
    }
}

/// Isotropy index of an irreducible of `C(2^r)`: the `i` for which the
/// isotropy subgroup has index `2^i`.
pub fn isotropy_index(irr: Irreducible, n: u64) -> Result<u32> {
    if !n.is_power_of_two() {
        return precondition(format!("isotropy index needs a 2-group, got C({n})"));
    }
    let r = n.trailing_zeros();
    Ok(match irr {
        Irreducible::RPlus => 0,
        Irreducible::RMinus => 1,
        Irreducible::Weight(a) => r - gcd(a, n).trailing_zeros(),
    })
}

impl fmt::Display for VirtualRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (irr, c)) in self.iter().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            if idx == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if c.abs() != 1 {
                write!(f, "{}*", c.abs())?;
            }
            write!(f, "{irr}")?;
        }
        Ok(())
    }
}

/// JSON form of a representation: positive weights, negative weights and
/// signed multiplicities of `R+` and `R-`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepLiteral {
    #[serde(rename = "N")]
    pub n: u64,
    #[serde(default)]
    pub weights: Vec<i64>,
    #[serde(default)]
    pub rplus: i64,
    #[serde(default)]
    pub rminus: i64,
    #[serde(default)]
    pub weights_neg: Vec<i64>,
}

impl RepLiteral {
    pub fn to_rep(&self) -> Result<VirtualRep> {
        if self.n == 0 {
            return domain("group order must be positive");
        }
        let mut terms: Vec<(i64, Term)> = Vec::new();
        terms.extend(self.weights.iter().map(|&a| (1, Term::Weight(a))));
        terms.extend(self.weights_neg.iter().map(|&a| (-1, Term::Weight(a))));
        terms.push((self.rplus, Term::RPlus));
        if self.rminus != 0 {
            terms.push((self.rminus, Term::RMinus));
        }
        VirtualRep::from_terms(self.n, &terms)
    }
}

/// Parses a term list such as `"t, t9"`, `"2*t5 - t"` or `"rminus:1,rplus:1"`.
pub fn parse_terms(s: &str) -> Result<Vec<(i64, Term)>> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() || compact == "0" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut sign = 1i64;
    let mut current = String::new();
    for ch in compact.chars() {
        match ch {
            ',' | '+' => {
                if current.is_empty() {
                    return Err(Error::Parse(format!("empty term in {s:?}")));
                }
                out.push(signed(parse_term(&current)?, sign));
                current.clear();
                sign = 1;
            }
            '-' => {
                if !current.is_empty() {
                    out.push(signed(parse_term(&current)?, sign));
                    current.clear();
                    sign = 1;
                }
                sign = -sign;
            }
            _ => current.push(ch),
        }
    }
    if current.is_empty() {
        return Err(Error::Parse(format!("dangling separator in {s:?}")));
    }
    out.push(signed(parse_term(&current)?, sign));
    Ok(out)
}

fn signed((c, term): (i64, Term), sign: i64) -> (i64, Term) {
    (sign * c, term)
}

fn parse_term(tok: &str) -> Result<(i64, Term)> {
    let bad = || Error::Parse(format!("cannot parse term {tok:?}"));
    let (coef, body) = match tok.split_once('*') {
        Some((c, b)) => (c.parse::<i64>().map_err(|_| bad())?, b),
        None => (1, tok),
    };
    let (name, count) = match body.split_once(':') {
        Some((nm, k)) => (nm, k.parse::<i64>().map_err(|_| bad())?),
        None => (body, 1),
    };
    let term = match name {
        "rplus" => Term::RPlus,
        "rminus" => Term::RMinus,
        _ => {
            let rest = name.strip_prefix('t').ok_or_else(bad)?;
            let rest = rest.strip_prefix('^').unwrap_or(rest);
            if rest.is_empty() {
                Term::Weight(1)
            } else {
                Term::Weight(rest.parse::<i64>().map_err(|_| bad())?)
            }
        }
    };
    Ok((coef * count, term))
}

/// Parses a literal and canonicalizes it over `C(n)`.
pub fn parse_rep(n: u64, s: &str) -> Result<VirtualRep> {
    VirtualRep::from_terms(n, &parse_terms(s)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_forms() {
        assert_eq!(canonical_weight(7, 8), WeightClass::Weight(1));
        assert_eq!(canonical_weight(3, 8), WeightClass::Weight(5));
        assert_eq!(canonical_weight(6, 8), WeightClass::Weight(2));
        assert_eq!(canonical_weight(4, 8), WeightClass::TwoRMinus);
        assert_eq!(canonical_weight(16, 8), WeightClass::TwoRPlus);
        assert_eq!(canonical_weight(4, 5), WeightClass::Weight(1));
        assert_eq!(canonical_weight(-1, 12), WeightClass::Weight(1));
        assert_eq!(canonical_weight(7, 12), WeightClass::Weight(5));
    }

    #[test]
    fn restriction_examples() {
        let x = parse_rep(16, "t - t9").unwrap();
        assert!(x.restrict(8).unwrap().is_zero());
        let y = parse_rep(16, "t - t5").unwrap();
        assert_eq!(y.restrict(8).unwrap(), parse_rep(8, "t - t5").unwrap());
        let m = parse_rep(8, "rminus").unwrap();
        assert_eq!(m.restrict(4).unwrap(), parse_rep(4, "rplus").unwrap());
        assert_eq!(m.restrict(1).unwrap(), parse_rep(1, "rplus").unwrap());
        assert_eq!(parse_rep(24, "rminus").unwrap().restrict(8).unwrap(), parse_rep(8, "rminus").unwrap());
        assert!(x.restrict(5).is_err());
    }

    #[test]
    fn induction_examples() {
        let x = parse_rep(8, "t - t5").unwrap();
        assert_eq!(x.induce(), parse_rep(16, "t + t9 - t5 - t13").unwrap());
        assert_eq!(parse_rep(8, "rplus").unwrap().induce(), parse_rep(16, "rplus + rminus").unwrap());
        let t = parse_rep(8, "t").unwrap();
        assert_eq!(t.induce().restrict(8).unwrap(), t.scale(2));
        assert_eq!(parse_rep(8, "rminus").unwrap().induce(), parse_rep(16, "t4").unwrap());
    }

    #[test]
    fn fixed_sets_and_splitting() {
        let x = parse_rep(8, "t2 + t").unwrap();
        assert_eq!(x.fixed_set(2).unwrap(), parse_rep(4, "t").unwrap());
        let y = parse_rep(8, "t + t2 + rminus + rplus").unwrap();
        let parts = y.split_free_parts();
        assert_eq!(parts.keys().copied().collect::<Vec<_>>(), vec![1, 2, 4, 8]);
        assert_eq!(parts[&4], parse_rep(4, "t").unwrap());
        let mut back = VirtualRep::zero(8);
        for part in parts.values() {
            back = back.add(&part.inflate(8).unwrap()).unwrap();
        }
        assert_eq!(back, y);
        assert!(VirtualRep::zero(8).split_free_parts().is_empty());
    }

    #[test]
    fn k_invariants() {
        let a = parse_rep(8, "t + t3 - t5 - t7").unwrap();
        assert_eq!(a.k_invariant().unwrap(), 1);
        let b = parse_rep(8, "2*t - t - t5").unwrap();
        assert_eq!(b.k_invariant().unwrap(), 3);
        let c = parse_rep(16, "t - t7").unwrap();
        assert_eq!(c.k_invariant().unwrap(), 7);
        assert!(parse_rep(8, "t2 - t").unwrap().k_invariant().is_err());
    }

    #[test]
    fn isotropy_and_twists() {
        assert_eq!(isotropy_index(Irreducible::Weight(4), 16).unwrap(), 2);
        assert_eq!(isotropy_index(Irreducible::RMinus, 16).unwrap(), 1);
        assert_eq!(isotropy_index(Irreducible::Weight(1), 16).unwrap(), 4);
        let x = parse_rep(16, "t - t9").unwrap();
        assert_eq!(x.galois_twist(5).unwrap(), parse_rep(16, "t5 - t13").unwrap());
        assert!(x.galois_twist(2).is_err());
    }

    #[test]
    fn literal_grammar() {
        let x = parse_rep(16, "2*t5 - t, t9").unwrap();
        assert_eq!(x.mult(Irreducible::Weight(5)), 2);
        assert_eq!(x.mult(Irreducible::Weight(1)), -1);
        assert_eq!(x.mult(Irreducible::Weight(9)), 1);
        assert_eq!(parse_rep(16, "rminus:1,rplus:1").unwrap().dim(), 2);
        assert_eq!(parse_rep(16, &x.to_string()).unwrap(), x);
        let lit = x.to_literal();
        let json = serde_json::to_string(&lit).unwrap();
        let back: RepLiteral = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_rep().unwrap(), x);
        assert!(parse_rep(16, "t,,t").is_err());
        assert!(parse_rep(16, "u3").is_err());
    }
}
