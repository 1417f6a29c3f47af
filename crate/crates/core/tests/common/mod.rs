//! Random inputs shared by the integration tests.
#![allow(dead_code)]

use cyclosim::arith::{gcd, inv_mod};
use cyclosim::rep::{Irreducible, VirtualRep};
use cyclosim::tate::C2Module;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn units(n: u64) -> Vec<u64> {
    (1..n).filter(|&a| gcd(a, n) == 1).collect()
}

/// Random virtual representation of `C(n)` with up to `terms` summands.
pub fn random_rep<R: Rng>(rng: &mut R, n: u64, terms: usize) -> VirtualRep {
    let mut x = VirtualRep::zero(n);
    for _ in 0..rng.gen_range(0..=terms) {
        let c = rng.gen_range(-3i64..=3);
        match rng.gen_range(0..6) {
            0 => x.add_irr(Irreducible::RPlus, c).unwrap(),
            1 if n.is_multiple_of(2) => x.add_irr(Irreducible::RMinus, c).unwrap(),
            _ => x.add_weight(rng.gen_range(0..n as i64), c),
        }
    }
    x
}

/// Random free, dimension-zero element over `C(n)`.
pub fn random_free_zero<R: Rng>(rng: &mut R, n: u64, pairs: usize) -> VirtualRep {
    let us = units(n);
    let mut x = VirtualRep::zero(n);
    for _ in 0..pairs {
        let c = rng.gen_range(-2i64..=2);
        x.add_weight(*us.choose(rng).unwrap() as i64, c);
        x.add_weight(*us.choose(rng).unwrap() as i64, -c);
    }
    x
}

/// Two weight lists over `C(n)` with equal weight products, so the
/// representations are homotopy equivalent.
pub fn random_equivalent_weights<R: Rng>(rng: &mut R, n: u64, len: usize) -> (Vec<i64>, Vec<i64>) {
    let us = units(n);
    let v1: Vec<u64> = (0..len).map(|_| *us.choose(rng).unwrap()).collect();
    let mut v2: Vec<u64> = (0..len - 1).map(|_| *us.choose(rng).unwrap()).collect();
    let p1 = v1.iter().fold(1u64, |a, &b| a * b % n);
    let p2 = v2.iter().fold(1u64, |a, &b| a * b % n);
    v2.push(p1 * inv_mod(p2, n).unwrap() % n);
    let signed = |v: Vec<u64>| v.into_iter().map(|a| a as i64).collect();
    (signed(v1), signed(v2))
}

type Mat = Vec<Vec<i64>>;

fn identity(n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

fn mul(a: &Mat, b: &Mat, cols: usize) -> Mat {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| row.iter().enumerate().map(|(k, x)| x * b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// Random finite module with involution of order at most `max_size`,
/// built from cyclic blocks and disguised by a unimodular change of basis
/// and row operations on the relations.
pub fn random_c2module<R: Rng>(rng: &mut R, max_size: u64) -> C2Module {
    let mut size = 1u64;
    let mut rels: Mat = Vec::new();
    let mut blocks: Vec<(usize, Mat)> = Vec::new();
    let mut n = 0usize;
    loop {
        let m = rng.gen_range(2u64..=8);
        let kind = rng.gen_range(0..4);
        let width = if kind < 2 { 1 } else { 2 };
        let grow = m.pow(width as u32);
        if size * grow > max_size || n >= 5 {
            break;
        }
        size *= grow;
        let t: Mat = match kind {
            0 => vec![vec![1]],
            1 => vec![vec![-1]],
            2 => vec![vec![0, 1], vec![1, 0]],
            _ => vec![vec![1, 1], vec![0, -1]],
        };
        for k in 0..width {
            let mut row = vec![0i64; 0];
            row.resize(n + k, 0);
            row.push(m as i64);
            rels.push(row);
        }
        blocks.push((n, t));
        n += width;
        if rng.gen_bool(0.3) {
            break;
        }
    }
    if n == 0 {
        return C2Module::from_i64(0, &[], &[]).unwrap();
    }
    for r in rels.iter_mut() {
        r.resize(n, 0);
    }
    let mut t = vec![vec![0i64; n]; n];
    for (start, b) in &blocks {
        for (i, row) in b.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                t[start + i][start + j] = *v;
            }
        }
    }
    // P and its inverse from elementary column additions.
    let (mut p, mut p_inv) = (identity(n), identity(n));
    if n > 1 {
        for _ in 0..rng.gen_range(0..4) {
            let i = rng.gen_range(0..n);
            let j = (i + rng.gen_range(1..n)) % n;
            let c = rng.gen_range(-2i64..=2);
            for row in p.iter_mut() {
                row[j] += c * row[i];
            }
            let src = p_inv[j].clone();
            for (x, y) in p_inv[i].iter_mut().zip(src) {
                *x -= c * y;
            }
        }
    }
    let t = mul(&mul(&p, &t, n), &p_inv, n);
    let mut rels = mul(&rels, &p_inv, n);
    if rels.len() > 1 {
        for _ in 0..rng.gen_range(0..3) {
            let i = rng.gen_range(0..rels.len());
            let j = (i + rng.gen_range(1..rels.len())) % rels.len();
            let c = rng.gen_range(-2i64..=2);
            let src = rels[i].clone();
            for (x, y) in rels[j].iter_mut().zip(src) {
                *x += c * y;
            }
        }
    }
    C2Module::from_i64(n, &rels, &t).expect("valid module")
}
