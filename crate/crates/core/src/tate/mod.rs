//! Tate cohomology of `Z/2` with coefficients in a finitely presented
//! abelian group with involution.
//!
//! Convention: `H^0 = ker(T - 1) / im(T + 1)` and `H^1 = ker(T + 1) / im(T - 1)`.
//! Module elements are integer row vectors in the generators and the
//! involution acts on the right, `x -> x T`.

mod brute;
mod unit_module;

pub use brute::tate_bruteforce;
pub use unit_module::{unit_subgroup_module, UnitModule, UnitModuleOptions};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{left_kernel, smith, solve, IntMatrix, Smith};

/// A finitely presented abelian group `Z^n / rowspan(relations)` with an
/// involution given by the matrix whose row `i` is the image of generator `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct C2Module {
    n_gens: usize,
    relations: IntMatrix,
    involution: IntMatrix,
    relation_smith: Smith,
}

/// JSON form: `{"gens": n, "relations": [[..]], "involution": [[..]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct C2ModuleJson {
    pub gens: usize,
    #[serde(default)]
    pub relations: Vec<Vec<i64>>,
    pub involution: Vec<Vec<i64>>,
}

impl C2Module {
    pub fn new(relations: IntMatrix, involution: IntMatrix) -> Result<Self> {
        let n = involution.rows();
        if involution.cols() != n || relations.cols() != n {
            return Err(Error::Domain(format!(
                "involution must be {n}x{n} and relations must have {n} columns"
            )));
        }
        let relation_smith = smith(&relations.transpose());
        let module = C2Module {
            n_gens: n,
            relations,
            involution,
            relation_smith,
        };
        for i in 0..module.relations.rows() {
            let image = module.involution.left_apply(module.relations.row(i));
            if !module.in_relations(&image) {
                return Err(Error::Domain(format!(
                    "involution does not preserve relation {i}"
                )));
            }
        }
        let t2 = module.involution.mul(&module.involution);
        for i in 0..n {
            let mut row = t2.row(i).to_vec();
            row[i] -= 1;
            if !module.in_relations(&row) {
                return Err(Error::Domain(format!(
                    "involution squared moves generator {i}"
                )));
            }
        }
        Ok(module)
    }

    pub fn from_i64(n: usize, relations: &[Vec<i64>], involution: &[Vec<i64>]) -> Result<Self> {
        if involution.len() != n
            || involution.iter().any(|r| r.len() != n)
            || relations.iter().any(|r| r.len() != n)
        {
            return Err(Error::Domain("matrix shape does not match generator count".into()));
        }
        C2Module::new(
            IntMatrix::from_i64_rows(n, relations),
            IntMatrix::from_i64_rows(n, involution),
        )
    }

    pub fn from_json(doc: &C2ModuleJson) -> Result<Self> {
        Self::from_i64(doc.gens, &doc.relations, &doc.involution)
    }

    pub fn to_json(&self) -> Result<C2ModuleJson> {
        let small = |m: &IntMatrix| -> Result<Vec<Vec<i64>>> {
            m.row_vecs()
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|c| {
                            c.to_i64()
                                .ok_or_else(|| Error::CapacityExceeded("entry exceeds i64".into()))
                        })
                        .collect()
                })
                .collect()
        };
        Ok(C2ModuleJson {
            gens: self.n_gens,
            relations: small(&self.relations)?,
            involution: small(&self.involution)?,
        })
    }

    pub fn n_gens(&self) -> usize {
        self.n_gens
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn involution(&self) -> &IntMatrix {
        &self.involution
    }

    /// Whether `x` lies in the relation lattice.
    pub fn in_relations(&self, x: &[BigInt]) -> bool {
        if x.iter().all(|c| c.is_zero()) {
            return true;
        }
        crate::linalg::solve_with(&self.relation_smith, self.relations.rows(), x).is_some()
    }

    /// Invariant factors of the underlying abelian group, with `0` for each
    /// free summand.
    pub fn group_structure(&self) -> Vec<BigInt> {
        crate::linalg::cokernel_invariants(&self.relations)
    }

    /// `T - 1` (sign `-1`) or `T + 1` (sign `+1`).
    fn shifted(&self, sign: i64) -> IntMatrix {
        let mut m = self.involution.clone();
        for i in 0..self.n_gens {
            let v = m.get(i, i) + BigInt::from(sign);
            m.set(i, i, v);
        }
        m
    }
}

/// A computed Tate group with its class map.
#[derive(Clone, Debug)]
pub struct TateGroup {
    degree: u8,
    invariant_factors: Vec<BigInt>,
    kernel_basis: IntMatrix,
    quotient_smith: Smith,
    test_map: IntMatrix,
    module: C2Module,
}

impl TateGroup {
    pub fn degree(&self) -> u8 {
        self.degree
    }

    /// Invariant factors greater than one, in divisibility order.
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn invariant_factors_u64(&self) -> Vec<u64> {
        self.invariant_factors
            .iter()
            .map(|d| d.to_u64().unwrap_or(u64::MAX))
            .collect()
    }

    pub fn order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Coordinates of the class of `x` in `⊕ Z/d_i`, or `None` when `x` is not
    /// a cocycle.
    pub fn class_map(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        if x.len() != self.module.n_gens {
            return None;
        }
        if !self.module.in_relations(&self.test_map.left_apply(x)) {
            return None;
        }
        if self.kernel_basis.rows() == 0 {
            return Some(Vec::new());
        }
        let coords = solve(&self.kernel_basis.transpose(), x)?;
        let image = self.quotient_smith.v.left_apply(&coords);
        let mut out = Vec::new();
        for (k, d) in self.quotient_smith.diag.iter().enumerate() {
            if !d.is_one() && k < self.quotient_smith.rank {
                out.push(image[k].mod_floor(d));
            }
        }
        Some(out)
    }

    pub fn class_is_zero(&self, x: &[BigInt]) -> Option<bool> {
        self.class_map(x).map(|c| c.iter().all(|v| v.is_zero()))
    }
}

/// Echelon basis of the row span of `m`.
pub(crate) fn row_basis(m: &IntMatrix) -> IntMatrix {
    let cols = m.cols();
    let mut rows: Vec<Vec<BigInt>> = m.row_vecs().to_vec();
    let mut basis: Vec<Vec<BigInt>> = Vec::new();
    for c in 0..cols {
        loop {
            let nonzero: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i][c].is_zero()).collect();
            if nonzero.len() <= 1 {
                if let Some(&p) = nonzero.first() {
                    basis.push(rows.swap_remove(p));
                }
                break;
            }
            let p = *nonzero
                .iter()
                .min_by_key(|&&i| rows[i][c].abs())
                .expect("non-empty");
            for &i in &nonzero {
                if i == p {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[p][c]);
                let pivot_row = rows[p].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
            }
        }
    }
    IntMatrix::from_rows(cols, basis)
}

/// `H^i(Z/2; M)` for `i` in `{0, 1}`.
pub fn tate(module: &C2Module, degree: u8) -> Result<TateGroup> {
    let (kernel_sign, image_sign) = match degree {
        0 => (-1, 1),
        1 => (1, -1),
        _ => return Err(Error::Domain(format!("Tate degree must be 0 or 1, got {degree}"))),
    };
    let n = module.n_gens;
    let test_map = module.shifted(kernel_sign);
    let image_map = module.shifted(image_sign);
    // x (T ∓ 1) + y R = 0
    let stacked = test_map.vstack(&module.relations);
    let lk = left_kernel(&stacked);
    let projected: Vec<Vec<BigInt>> = lk.row_vecs().iter().map(|r| r[..n].to_vec()).collect();
    let kernel_basis = row_basis(&IntMatrix::from_rows(n, projected));
    let boundaries = image_map.vstack(&module.relations);
    let k = kernel_basis.rows();
    let mut coord_rows = Vec::with_capacity(boundaries.rows());
    if k > 0 {
        let kt = kernel_basis.transpose();
        for b in boundaries.row_vecs() {
            let c = solve(&kt, b).ok_or_else(|| {
                Error::Internal("boundary is not a cocycle; module is inconsistent".into())
            })?;
            coord_rows.push(c);
        }
    }
    let quotient = IntMatrix::from_rows(k, coord_rows);
    let quotient_smith = smith(&quotient);
    if quotient_smith.rank < k {
        return Err(Error::Internal("Tate group has a free part".into()));
    }
    let invariant_factors = quotient_smith.diag[..quotient_smith.rank]
        .iter()
        .filter(|d| !d.is_one())
        .cloned()
        .collect();
    Ok(TateGroup {
        degree,
        invariant_factors,
        kernel_basis,
        quotient_smith,
        test_map,
        module: module.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factors(g: &TateGroup) -> Vec<u64> {
        g.invariant_factors_u64()
    }

    #[test]
    fn integers_with_signs() {
        let plus = C2Module::from_i64(1, &[], &[vec![1]]).unwrap();
        assert_eq!(factors(&tate(&plus, 0).unwrap()), vec![2]);
        assert!(tate(&plus, 1).unwrap().is_trivial());
        let minus = C2Module::from_i64(1, &[], &[vec![-1]]).unwrap();
        assert!(tate(&minus, 0).unwrap().is_trivial());
        assert_eq!(factors(&tate(&minus, 1).unwrap()), vec![2]);
    }

    #[test]
    fn z4_with_negation() {
        let m = C2Module::from_i64(1, &[vec![4]], &[vec![-1]]).unwrap();
        let h0 = tate(&m, 0).unwrap();
        let h1 = tate(&m, 1).unwrap();
        assert_eq!(factors(&h0), vec![2]);
        assert_eq!(factors(&h1), vec![2]);
        let b = |v: i64| vec![BigInt::from(v)];
        assert_eq!(h0.class_is_zero(&b(2)), Some(false));
        assert_eq!(h0.class_is_zero(&b(0)), Some(true));
        assert_eq!(h0.class_map(&b(1)), None);
        assert_eq!(h1.class_is_zero(&b(1)), Some(false));
        assert_eq!(h1.class_is_zero(&b(2)), Some(true));
    }

    #[test]
    fn swap_module_is_acyclic() {
        let m = C2Module::from_i64(2, &[], &[vec![0, 1], vec![1, 0]]).unwrap();
        assert!(tate(&m, 0).unwrap().is_trivial());
        assert!(tate(&m, 1).unwrap().is_trivial());
    }

    #[test]
    fn rejects_bad_involutions() {
        assert!(C2Module::from_i64(1, &[], &[vec![2]]).is_err());
        assert!(C2Module::from_i64(2, &[vec![2, 0]], &[vec![0, 1], vec![1, 0]]).is_err());
        assert!(tate(&C2Module::from_i64(1, &[], &[vec![1]]).unwrap(), 2).is_err());
    }
}
