//! Dense integer polynomials as coefficient vectors (lowest degree first) and
//! their textual form `"1 + 2*t - t^2"`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub(crate) fn trim(p: &mut Vec<BigInt>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(&mut out);
    out
}

/// Remainder of `a` modulo a monic polynomial `m`.
pub(crate) fn rem_monic(a: &[BigInt], m: &[BigInt]) -> Vec<BigInt> {
    let deg = m.len() - 1;
    debug_assert!(m[deg].is_one());
    let mut r = a.to_vec();
    trim(&mut r);
    while r.len() > deg {
        let top = r.len() - 1;
        let c = r[top].clone();
        if !c.is_zero() {
            for (k, mk) in m.iter().enumerate() {
                if !mk.is_zero() {
                    r[top - deg + k] -= &c * mk;
                }
            }
        }
        r.pop();
        trim(&mut r);
    }
    r.resize(deg, BigInt::zero());
    r
}

/// Exact quotient `a / m` for monic `m`; `None` when the remainder is non-zero.
pub(crate) fn div_exact_monic(a: &[BigInt], m: &[BigInt]) -> Option<Vec<BigInt>> {
    let deg = m.len() - 1;
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() <= deg {
        return r.iter().all(|c| c.is_zero()).then(Vec::new);
    }
    let mut q = vec![BigInt::zero(); r.len() - deg];
    for top in (deg..r.len()).rev() {
        let c = r[top].clone();
        if c.is_zero() {
            continue;
        }
        q[top - deg] = c.clone();
        for (k, mk) in m.iter().enumerate() {
            r[top - deg + k] -= &c * mk;
        }
    }
    r.iter().all(|c| c.is_zero()).then_some(q)
}

pub(crate) fn format(coeffs: &[BigInt]) -> String {
    let mut out = String::new();
    for (j, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mag = c.abs();
        match j {
            0 => out.push_str(&mag.to_string()),
            _ => {
                if !mag.is_one() {
                    out.push_str(&mag.to_string());
                    out.push('*');
                }
                out.push('t');
                if j > 1 {
                    out.push('^');
                    out.push_str(&j.to_string());
                }
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Parses the textual form into a coefficient vector with no trailing zeros.
pub(crate) fn parse(s: &str) -> Result<Vec<BigInt>> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut current = String::new();
    let mut neg = false;
    for ch in compact.chars() {
        if ch == '+' || ch == '-' {
            if !current.is_empty() {
                terms.push((neg, std::mem::take(&mut current)));
                neg = false;
            } else if (!terms.is_empty() || ch == '+')
                && (ch == '+' || neg) {
                    return Err(Error::Parse(format!("misplaced sign in {s:?}")));
                }
            if ch == '-' {
                neg = true;
            }
        } else {
            current.push(ch);
        }
    }
    if current.is_empty() {
        return Err(Error::Parse(format!("dangling sign in {s:?}")));
    }
    terms.push((neg, current));
    let mut out: Vec<BigInt> = Vec::new();
    for (neg, body) in terms {
        let (c, e) = parse_monomial(&body)?;
        if out.len() <= e {
            out.resize(e + 1, BigInt::zero());
        }
        out[e] += if neg { -c } else { c };
    }
    trim(&mut out);
    Ok(out)
}

fn parse_monomial(body: &str) -> Result<(BigInt, usize)> {
    let bad = || Error::Parse(format!("cannot parse monomial {body:?}"));
    let int = |s: &str| BigInt::from_str(s).map_err(|_| bad());
    if !body.contains('t') {
        return Ok((int(body)?, 0));
    }
    let (coef, power) = match body.split_once('*') {
        Some((c, p)) => (int(c)?, p),
        None => (BigInt::one(), body),
    };
    let rest = power.strip_prefix('t').ok_or_else(bad)?;
    let e = if rest.is_empty() {
        1
    } else {
        rest.strip_prefix('^')
            .ok_or_else(bad)?
            .parse::<usize>()
            .map_err(|_| bad())?
    };
    Ok((coef, e))
}
