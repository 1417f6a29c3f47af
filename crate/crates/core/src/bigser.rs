//! Serde helpers writing big integers as JSON numbers when they fit in
//! `i64` and as decimal strings otherwise.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::ser::{SerializeSeq, Serializer};

struct Big<'a>(&'a BigInt);

impl serde::Serialize for Big<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.collect_str(self.0),
        }
    }
}

pub fn vec<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&Big(x))?;
    }
    seq.end()
}

pub fn opt_vec<S: Serializer>(v: &Option<Vec<BigInt>>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => vec(v, s),
        None => s.serialize_none(),
    }
}
