//! The lattice of stably topologically trivial elements and the quotient
//! group it presents.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::basis::{check_r, induce_coords, std_basis, two_exponent, BasisCoords};
use crate::error::{Error, Result};
use crate::linalg::{cokernel_invariants, det, smith, solve_with, IntMatrix, Smith};
use crate::rep::VirtualRep;

/// Element of `B̂(m)` that is induced up to `C(2^r)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Seed {
    /// `2α_1(m)` with `m >= 4`.
    TwoAlpha,
    /// `α_1(m) + β_1(m)` with `m >= 4`.
    AlphaBeta,
    /// `2α_1(3)`.
    TwoAlphaBase,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    /// `2α_1(r)`.
    TwoAlpha,
    /// `2(α_1(r) + β_1(r))`.
    TwoAlphaBeta,
    /// `4α_1(3)`, the only generator for `r = 3`.
    FourAlpha,
    /// `Ind_k(χ)` from the subgroup of index `2^k`.
    Induced { k: u32, seed: Seed },
    /// `γ_s^{(i)} = a_s^{(i)} - a_s^{(i+2)}`.
    Gamma { s: u32, i: u64 },
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::TwoAlpha => write!(f, "2a1"),
            Generator::TwoAlphaBeta => write!(f, "2(a1+b1)"),
            Generator::FourAlpha => write!(f, "4a1"),
            Generator::Induced { k, seed } => match seed {
                Seed::TwoAlpha => write!(f, "Ind{k}(2a1)"),
                Seed::AlphaBeta => write!(f, "Ind{k}(a1+b1)"),
                Seed::TwoAlphaBase => write!(f, "Ind{k}(2a1(3))"),
            },
            Generator::Gamma { s, i } => write!(f, "g{s}({i})"),
        }
    }
}

impl Serialize for Generator {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug)]
pub struct RtLattice {
    r: u32,
    generators: Vec<(Generator, BasisCoords)>,
    /// Smith form of the matrix whose columns are the generators.
    solver: Smith,
}

fn seed_coords(m: u32, seed: Seed) -> Result<BasisCoords> {
    let b = std_basis(m)?;
    let a0 = b.index_of(1, 0).expect("a_1^(0)");
    Ok(match seed {
        Seed::TwoAlpha | Seed::TwoAlphaBase => BasisCoords::unit(m, a0).scale(2),
        Seed::AlphaBeta => {
            let b0 = b.index_of(1, 1).expect("a_1^(1)");
            BasisCoords::unit(m, a0).add(&BasisCoords::unit(m, b0))
        }
    })
}

fn build(r: u32) -> Result<RtLattice> {
    let basis = std_basis(r)?;
    let n = basis.order();
    let unit = |s: u32, i: u64| BasisCoords::unit(r, basis.index_of(s, i).expect("basis label"));
    let mut gens = Vec::new();
    if r == 3 {
        gens.push((Generator::FourAlpha, unit(1, 0).scale(4)));
    } else {
        gens.push((Generator::TwoAlpha, unit(1, 0).scale(2)));
        gens.push((Generator::TwoAlphaBeta, unit(1, 0).add(&unit(1, 1)).scale(2)));
    }
    for k in 1..r.saturating_sub(2) {
        let m = r - k;
        let seeds: &[Seed] = if m == 3 {
            &[Seed::TwoAlphaBase]
        } else {
            &[Seed::TwoAlpha, Seed::AlphaBeta]
        };
        for &seed in seeds {
            let chi = seed_coords(m, seed)?;
            let generic = basis.to_coords(&std_basis(m)?.from_coords(&chi)?.induce_to(n)?)?;
            let mut closed = chi;
            for _ in 0..k {
                closed = induce_coords(&closed)?;
            }
            if closed != generic {
                return Err(Error::Internal(format!(
                    "Ind_{k} from C(2^{m}) disagrees with the closed form"
                )));
            }
            gens.push((Generator::Induced { k, seed }, generic));
        }
    }
    if r >= 5 {
        for s in 1..=r - 4 {
            for i in 0..(1u64 << (r - s - 2)) - 2 {
                gens.push((Generator::Gamma { s, i }, unit(s, i).add(&unit(s, i + 2).scale(-1))));
            }
        }
    }
    if gens.len() != basis.len() {
        return Err(Error::Internal(format!(
            "{} lattice generators for a basis of size {}",
            gens.len(),
            basis.len()
        )));
    }
    let cols: Vec<Vec<BigInt>> = gens.iter().map(|(_, c)| c.coords.clone()).collect();
    let m = IntMatrix::from_rows(basis.len(), cols);
    if det(&m).is_zero() {
        return Err(Error::Internal(format!("lattice generators for r = {r} are dependent")));
    }
    Ok(RtLattice {
        r,
        generators: gens,
        solver: smith(&m.transpose()),
    })
}

/// The lattice for `C(2^r)`, shared per `r`.
pub fn rt_lattice(r: u32) -> Result<Arc<RtLattice>> {
    check_r(r)?;
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<RtLattice>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(l) = cache.lock().expect("lattice cache").get(&r) {
        return Ok(l.clone());
    }
    let l = Arc::new(build(r)?);
    cache.lock().expect("lattice cache").insert(r, l.clone());
    Ok(l)
}

impl RtLattice {
    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn generators(&self) -> &[(Generator, BasisCoords)] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Generator rows in basis coordinates.
    pub fn matrix(&self) -> IntMatrix {
        let rows = self.generators.iter().map(|(_, c)| c.coords.clone()).collect();
        IntMatrix::from_rows(std_basis(self.r).expect("cached").len(), rows)
    }

    /// Coefficients of `c` over the generators, if it lies in the lattice.
    pub fn solve(&self, c: &BasisCoords) -> Option<Vec<BigInt>> {
        if c.r != self.r {
            return None;
        }
        solve_with(&self.solver, self.len(), &c.coords)
    }

    /// Least `m >= 1` with `m c` in the lattice.
    pub fn order_of(&self, c: &BasisCoords) -> BigInt {
        let uc = self.solver.u.apply(&c.coords);
        let mut m = BigInt::one();
        for (i, v) in uc.iter().enumerate() {
            if i >= self.solver.rank {
                if !v.is_zero() {
                    return BigInt::zero();
                }
                continue;
            }
            let d = &self.solver.diag[i];
            m = m.lcm(&(d / d.gcd(v)));
        }
        m
    }
}

/// Coefficients of `x` over the lattice generators, or `None` when `x` is
/// not stably topologically trivial.
pub fn in_rt(x: &VirtualRep) -> Result<Option<Vec<BigInt>>> {
    let r = two_exponent(x.order())?;
    let c = std_basis(r)?.to_coords(x)?;
    Ok(rt_lattice(r)?.solve(&c))
}

/// Order of `x` in the quotient by the lattice; `0` means infinite.
pub fn order_in_rtop(x: &VirtualRep) -> Result<u64> {
    let r = two_exponent(x.order())?;
    let c = std_basis(r)?.to_coords(x)?;
    rt_lattice(r)?
        .order_of(&c)
        .to_u64()
        .ok_or_else(|| Error::CapacityExceeded("order exceeds u64".into()))
}

#[derive(Clone, Debug, Serialize)]
pub struct NamedClass {
    pub name: String,
    pub element: String,
    pub order: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RtopPresentation {
    pub r: u32,
    /// Orders of the cyclic summands, largest first.
    pub invariant_factors: Vec<u64>,
    pub group_order: u64,
    /// `α_s`, `β_s` and `ψ_i = α_{i+1} + β_{i+1}` with their orders.
    pub classes: Vec<NamedClass>,
    /// Orders `2^s` attached to the generators `α_1..α_{r-2}`, `β_1`,
    /// `ψ_1..ψ_{r-4}`, largest first.
    pub expected_orders: Vec<u64>,
    pub matches_expected: bool,
}

pub fn rtop_presentation(r: u32) -> Result<RtopPresentation> {
    let basis = std_basis(r)?;
    let lattice = rt_lattice(r)?;
    let mut invariant_factors: Vec<u64> = cokernel_invariants(&lattice.matrix())
        .iter()
        .map(|d| {
            d.to_u64()
                .filter(|&d| d != 0)
                .ok_or_else(|| Error::Internal("quotient by the lattice is infinite".into()))
        })
        .collect::<Result<_>>()?;
    invariant_factors.reverse();
    let group_order = invariant_factors.iter().product();

    let unit = |s: u32, i: u64| BasisCoords::unit(r, basis.index_of(s, i).expect("basis label"));
    let order = |c: &BasisCoords| lattice.order_of(c).to_u64().unwrap_or(0);
    let mut classes = Vec::new();
    let mut expected = Vec::new();
    let mut push = |name: String, c: BasisCoords, exp: Option<u64>| -> Result<()> {
        classes.push(NamedClass {
            name,
            element: basis.from_coords(&c)?.to_string(),
            order: order(&c),
        });
        expected.extend(exp);
        Ok(())
    };
    for s in 1..=r - 2 {
        // Over C(8) the lattice is generated by 4α_1, so α_1 has order 4.
        let exp = if r == 3 { 4 } else { 1 << s };
        push(format!("alpha{s}"), unit(s, 0), Some(exp))?;
    }
    for s in 1..=r.saturating_sub(3) {
        push(format!("beta{s}"), unit(s, 1), (s == 1).then_some(2))?;
    }
    for i in 1..=r.saturating_sub(4) {
        push(
            format!("psi{i}"),
            unit(i + 1, 0).add(&unit(i + 1, 1)),
            Some(1 << i),
        )?;
    }
    expected.sort_unstable_by(|a, b| b.cmp(a));
    let expected_orders = expected;
    Ok(RtopPresentation {
        r,
        matches_expected: invariant_factors == expected_orders,
        invariant_factors,
        group_order,
        classes,
        expected_orders,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::parse_rep;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn generator_counts() {
        for (r, n) in [(3, 1), (4, 3), (5, 7), (6, 15), (7, 31)] {
            assert_eq!(rt_lattice(r).unwrap().len(), n);
        }
    }

    #[test]
    fn small_lattices() {
        let l3 = rt_lattice(3).unwrap();
        assert_eq!(l3.generators()[0].1.coords, ints(&[4]));
        let l4 = rt_lattice(4).unwrap();
        let coords: Vec<Vec<BigInt>> = l4.generators().iter().map(|(_, c)| c.coords.clone()).collect();
        assert_eq!(coords, vec![ints(&[2, 0, 0]), ints(&[2, 2, 0]), ints(&[-2, 2, 4])]);
        let tags: Vec<String> = rt_lattice(5).unwrap().generators().iter().map(|(g, _)| g.to_string()).collect();
        assert_eq!(
            tags,
            ["2a1", "2(a1+b1)", "Ind1(2a1)", "Ind1(a1+b1)", "Ind2(2a1(3))", "g1(0)", "g1(1)"]
        );
    }

    #[test]
    fn membership() {
        let x = parse_rep(16, "2*t - 2*t9").unwrap();
        assert_eq!(in_rt(&x).unwrap(), Some(ints(&[1, 0, 0])));
        assert_eq!(in_rt(&parse_rep(16, "t - t5").unwrap()).unwrap(), None);
        // t^9 + t^{1+2^{r-2}} - t - t^{9+2^{r-2}} only enters the lattice at r = 7.
        for (r, member) in [(5u32, false), (6, false), (7, true), (8, true)] {
            let q = 1i64 << (r - 2);
            let x = VirtualRep::difference(1 << r, &[9, 1 + q], &[1, 9 + q]);
            assert_eq!(in_rt(&x).unwrap().is_some(), member, "r = {r}");
            let h = 1i64 << (r - 1);
            let y = VirtualRep::difference(1 << r, &[9, 1 + h], &[1, 9 + h]);
            assert!(in_rt(&y).unwrap().is_some(), "r = {r}");
        }
    }

    #[test]
    fn orders() {
        assert_eq!(order_in_rtop(&parse_rep(8, "t - t5").unwrap()).unwrap(), 4);
        for r in 4..=6u32 {
            let x = parse_rep(1 << r, "t - t5").unwrap();
            assert_eq!(order_in_rtop(&x).unwrap(), 1 << (r - 2));
        }
        assert_eq!(order_in_rtop(&parse_rep(16, "2*t - 2*t9").unwrap()).unwrap(), 1);
        assert_eq!(order_in_rtop(&VirtualRep::zero(32)).unwrap(), 1);
    }

    #[test]
    fn presentations() {
        assert_eq!(rtop_presentation(3).unwrap().invariant_factors, vec![4]);
        assert_eq!(rtop_presentation(4).unwrap().invariant_factors, vec![4, 2, 2]);
        for r in 3..=7 {
            let p = rtop_presentation(r).unwrap();
            assert!(p.matches_expected, "{p:?}");
        }
    }
}
