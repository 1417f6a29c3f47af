//! The standard basis `a_s^{(i)}(r) = t^{5^i} - t^{5^{2^{r-s-2}+i}}` of the
//! free, dimension-zero part of the representation ring of `C(2^r)`.
//!
//! Every odd weight over `C(2^r)` is `±5^k`, so free characters are indexed
//! by the exponent `k` in `0..2^{r-2}` and weight vectors live in `Z^{2^{r-2}}`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::pow_mod;
use crate::error::{precondition, Error, Result};
use crate::linalg::{det, smith, solve_with, IntMatrix, Smith};
use crate::rep::{Irreducible, VirtualRep};

/// Largest exponent `r` the classifier accepts.
pub const MAX_R: u32 = 10;

pub(crate) fn check_r(r: u32) -> Result<()> {
    if !(3..=MAX_R).contains(&r) {
        return precondition(format!("need 3 <= r <= {MAX_R}, got r = {r}"));
    }
    Ok(())
}

/// Exponent `r` of a 2-group order, or `Unsupported`.
pub(crate) fn two_exponent(n: u64) -> Result<u32> {
    if !n.is_power_of_two() {
        return Err(Error::Unsupported(format!(
            "the classifier handles cyclic 2-groups only, got C({n})"
        )));
    }
    Ok(n.trailing_zeros())
}

#[derive(Debug)]
pub struct StdBasis {
    r: u32,
    elements: Vec<(u32, u64)>,
    /// Row `j` is element `j` in weight coordinates.
    matrix: IntMatrix,
    solver: Smith,
    log5: HashMap<u64, usize>,
}

/// Integer coordinates over [`StdBasis`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BasisCoords {
    pub r: u32,
    #[serde(serialize_with = "crate::bigser::vec")]
    pub coords: Vec<BigInt>,
}

impl BasisCoords {
    pub fn zero(r: u32) -> Self {
        BasisCoords {
            r,
            coords: vec![BigInt::zero(); (1usize << (r - 2)) - 1],
        }
    }

    pub fn unit(r: u32, j: usize) -> Self {
        let mut c = Self::zero(r);
        c.coords[j] = BigInt::one();
        c
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: i64) -> Self {
        BasisCoords {
            r: self.r,
            coords: self.coords.iter().map(|c| c * k).collect(),
        }
    }

    pub fn add(&self, other: &BasisCoords) -> Self {
        assert_eq!(self.r, other.r);
        BasisCoords {
            r: self.r,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.coords.iter().map(|c| c.to_i64()).collect()
    }
}

fn build(r: u32) -> Result<StdBasis> {
    let n = 1u64 << r;
    let m = 1usize << (r - 2);
    let mut log5 = HashMap::new();
    for k in 0..m {
        log5.insert(pow_mod(5, k as u64, n), k);
    }
    let mut elements = Vec::new();
    let mut rows = Vec::new();
    for s in 1..=r - 2 {
        let p = 1usize << (r - s - 2);
        for i in 0..p {
            elements.push((s, i as u64));
            let mut row = vec![BigInt::zero(); m];
            row[i] += 1;
            row[p + i] -= 1;
            rows.push(row);
        }
    }
    let matrix = IntMatrix::from_rows(m, rows);
    // Adding t = t^{5^0} must give a unimodular square matrix.
    let mut square = matrix.row_vecs().to_vec();
    let mut e0 = vec![BigInt::zero(); m];
    e0[0] = BigInt::one();
    square.push(e0);
    let d = det(&IntMatrix::from_rows(m, square));
    if d.abs() != BigInt::one() {
        return Err(Error::Internal(format!(
            "standard basis for r = {r} has determinant {d}"
        )));
    }
    let solver = smith(&matrix.transpose());
    Ok(StdBasis {
        r,
        elements,
        matrix,
        solver,
        log5,
    })
}

/// The standard basis for `C(2^r)`, shared per `r`.
pub fn std_basis(r: u32) -> Result<Arc<StdBasis>> {
    check_r(r)?;
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<StdBasis>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(b) = cache.lock().expect("basis cache").get(&r) {
        return Ok(b.clone());
    }
    let b = Arc::new(build(r)?);
    cache.lock().expect("basis cache").insert(r, b.clone());
    Ok(b)
}

impl StdBasis {
    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn order(&self) -> u64 {
        1u64 << self.r
    }

    /// `(s, i)` labels in basis order.
    pub fn elements(&self) -> &[(u32, u64)] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, s: u32, i: u64) -> Option<usize> {
        self.elements.iter().position(|&e| e == (s, i))
    }

    /// `a_s^{(i)}(r)` as a representation.
    pub fn element(&self, j: usize) -> VirtualRep {
        let (s, i) = self.elements[j];
        let n = self.order();
        let far = (1u64 << (self.r - s - 2)) + i;
        VirtualRep::difference(
            n,
            &[pow_mod(5, i, n) as i64],
            &[pow_mod(5, far, n) as i64],
        )
    }

    /// Weight-coordinate rows of the basis.
    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// The exponent `k` with `a = 5^k` for a canonical free weight `a`.
    pub fn log5(&self, a: u64) -> Option<usize> {
        self.log5.get(&a).copied()
    }

    pub fn weight_vector(&self, x: &VirtualRep) -> Result<Vec<BigInt>> {
        if x.order() != self.order() {
            return Err(Error::Domain(format!(
                "element of C({}) given to the basis of C({})",
                x.order(),
                self.order()
            )));
        }
        let mut w = vec![BigInt::zero(); 1 << (self.r - 2)];
        for (irr, c) in x.iter() {
            let k = match irr {
                Irreducible::Weight(a) => self.log5(a),
                _ => None,
            };
            match k {
                Some(k) => w[k] += c,
                None => {
                    return Err(Error::NotInSpan(format!(
                        "{x} has the non-free summand {irr}"
                    )))
                }
            }
        }
        Ok(w)
    }

    pub fn to_coords(&self, x: &VirtualRep) -> Result<BasisCoords> {
        let w = self.weight_vector(x)?;
        let coords = solve_with(&self.solver, self.len(), &w)
            .ok_or_else(|| Error::NotInSpan(format!("{x} has non-zero dimension")))?;
        Ok(BasisCoords { r: self.r, coords })
    }

    pub fn from_coords(&self, c: &BasisCoords) -> Result<VirtualRep> {
        if c.r != self.r || c.coords.len() != self.len() {
            return Err(Error::Domain("coordinate vector does not match the basis".into()));
        }
        let mut x = VirtualRep::zero(self.order());
        for (j, k) in c.coords.iter().enumerate() {
            let k = k
                .to_i64()
                .ok_or_else(|| Error::CapacityExceeded("coefficient exceeds i64".into()))?;
            if k != 0 {
                x = x.add(&self.element(j).scale(k))?;
            }
        }
        Ok(x)
    }
}

/// Coordinates of `x` over the standard basis of its group.
pub fn to_coords(x: &VirtualRep) -> Result<BasisCoords> {
    std_basis(two_exponent(x.order())?)?.to_coords(x)
}

pub fn from_coords(c: &BasisCoords) -> Result<VirtualRep> {
    std_basis(c.r)?.from_coords(c)
}

/// `Res_H(a_s^{(i)}(r))` read off the basis labels: `a_{s-1}^{(i)}(r-1)` for
/// `s >= 2` and zero for `s = 1`.
pub fn restrict_closed_form(r: u32, s: u32, i: u64) -> Result<BasisCoords> {
    if r < 4 {
        return precondition("restriction to C(2^{r-1}) needs r >= 4");
    }
    let lower = std_basis(r - 1)?;
    if s == 1 {
        return Ok(BasisCoords::zero(r - 1));
    }
    let j = lower
        .index_of(s - 1, i)
        .ok_or_else(|| Error::Precondition(format!("no basis element a_{s}^({i}) for r = {r}")))?;
    Ok(BasisCoords::unit(r - 1, j))
}

/// `Ind_H(a_{s-1}^{(i)}(r-1)) = 2 a_s^{(i)} - a_1^{(i)} + a_1^{(2^{r-s-2}+i)}`.
pub fn induce_closed_form(r: u32, s: u32, i: u64) -> Result<BasisCoords> {
    let b = std_basis(r)?;
    if s < 2 || s > r - 2 {
        return precondition(format!("need 2 <= s <= r - 2, got s = {s}"));
    }
    let idx = |s, i| {
        b.index_of(s, i)
            .ok_or_else(|| Error::Precondition(format!("no basis element a_{s}^({i}) for r = {r}")))
    };
    let mut c = BasisCoords::zero(r);
    c.coords[idx(s, i)?] += 2;
    c.coords[idx(1, i)?] -= 1;
    c.coords[idx(1, (1u64 << (r - s - 2)) + i)?] += 1;
    Ok(c)
}

/// Applies [`induce_closed_form`] linearly to coordinates over `C(2^{r-1})`.
pub fn induce_coords(c: &BasisCoords) -> Result<BasisCoords> {
    let r = c.r + 1;
    let lower = std_basis(c.r)?;
    let mut out = BasisCoords::zero(r);
    for (j, k) in c.coords.iter().enumerate() {
        if k.is_zero() {
            continue;
        }
        let (s, i) = lower.elements()[j];
        let img = induce_closed_form(r, s + 1, i)?;
        for (o, v) in out.coords.iter_mut().zip(img.coords) {
            *o += k * v;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::parse_rep;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_bases() {
        let b3 = std_basis(3).unwrap();
        assert_eq!(b3.len(), 1);
        assert_eq!(b3.element(0).to_string(), "t - t5");
        let b4 = std_basis(4).unwrap();
        let shown: Vec<String> = (0..3).map(|j| b4.element(j).to_string()).collect();
        assert_eq!(shown, ["t - t9", "t5 - t13", "t - t5"]);
        assert_eq!(std_basis(6).unwrap().len(), 15);
        assert!(std_basis(2).is_err());
    }

    #[test]
    fn coordinates() {
        let x = parse_rep(16, "t - t5").unwrap();
        assert_eq!(to_coords(&x).unwrap().coords, ints(&[0, 0, 1]));
        let y = parse_rep(16, "t + t9 - t5 - t13").unwrap();
        let c = to_coords(&y).unwrap();
        assert_eq!(c.coords, ints(&[-1, 1, 2]));
        assert_eq!(from_coords(&c).unwrap(), y);
        assert!(to_coords(&VirtualRep::zero(16)).unwrap().is_zero());
        assert!(matches!(to_coords(&parse_rep(16, "t").unwrap()), Err(Error::NotInSpan(_))));
        assert!(matches!(to_coords(&parse_rep(16, "t2 - t6").unwrap()), Err(Error::NotInSpan(_))));
        assert!(matches!(to_coords(&parse_rep(24, "t - t5").unwrap()), Err(Error::Unsupported(_))));
    }

    #[test]
    fn closed_forms_match_generic_maps() {
        for r in 4..=8 {
            let b = std_basis(r).unwrap();
            let lower = std_basis(r - 1).unwrap();
            for (j, &(s, i)) in b.elements().iter().enumerate() {
                let generic = lower.to_coords(&b.element(j).restrict(1 << (r - 1)).unwrap()).unwrap();
                assert_eq!(generic, restrict_closed_form(r, s, i).unwrap(), "Res r={r} s={s} i={i}");
            }
            for (j, &(s, i)) in lower.elements().iter().enumerate() {
                let generic = b.to_coords(&lower.element(j).induce()).unwrap();
                assert_eq!(generic, induce_closed_form(r, s + 1, i).unwrap(), "Ind r={r} s={s} i={i}");
            }
        }
    }
}
