//! Polytope and action documents.
//!
//! Integers are JSON numbers of arbitrary size. Offsets and other rationals
//! are JSON integers when integral and `"p/q"` strings otherwise; integer
//! strings such as `"3"` are accepted on input. Field order is fixed and
//! [`emit`] is byte-deterministic.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use serde_json::{Number, Value};

use crate::conic::ActionData;
use crate::error::{Error, Result};
use crate::lattice::{DualVector, IntegerMatrix, LatticeVector};
use crate::polytope::{HRep, HalfSpace, MarkedPolytope};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JsonInt(pub BigInt);

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JsonRational(pub BigRational);

fn number(n: &BigInt) -> Number {
    Number::from_str(&n.to_string()).expect("decimal integer is a JSON number")
}

fn parse_int(v: &Value) -> std::result::Result<BigInt, String> {
    match v {
        Value::Number(n) => BigInt::from_str(&n.to_string()).map_err(|_| format!("expected an integer, found {n}")),
        Value::String(s) => BigInt::from_str(s.trim()).map_err(|_| format!("expected an integer, found {s:?}")),
        other => Err(format!("expected an integer, found {other}")),
    }
}

fn parse_rational(v: &Value) -> std::result::Result<BigRational, String> {
    match v {
        Value::String(s) => {
            let s = s.trim();
            let (num, den) = match s.split_once('/') {
                Some((n, d)) => (n.trim(), d.trim()),
                None => (s, "1"),
            };
            let num = BigInt::from_str(num).map_err(|_| format!("malformed rational {s:?}"))?;
            let den = BigInt::from_str(den).map_err(|_| format!("malformed rational {s:?}"))?;
            if den.is_zero() {
                return Err(format!("zero denominator in {s:?}"));
            }
            Ok(BigRational::new(num, den))
        }
        other => parse_int(other).map(BigRational::from_integer),
    }
}

pub fn rational_to_value(q: &BigRational) -> Value {
    if q.is_integer() {
        Value::Number(number(q.numer()))
    } else {
        Value::String(format!("{}/{}", q.numer(), q.denom()))
    }
}

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        number(&self.0).serialize(s)
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        parse_int(&v).map(JsonInt).map_err(de::Error::custom)
    }
}

impl Serialize for JsonRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        rational_to_value(&self.0).serialize(s)
    }
}

impl<'de> Deserialize<'de> for JsonRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        parse_rational(&v).map(JsonRational).map_err(de::Error::custom)
    }
}

pub fn ints(v: &[BigInt]) -> Vec<JsonInt> {
    v.iter().cloned().map(JsonInt).collect()
}

pub fn rationals(v: &[BigRational]) -> Vec<JsonRational> {
    v.iter().cloned().map(JsonRational).collect()
}

fn unwrap_ints(v: &[JsonInt]) -> Vec<BigInt> {
    v.iter().map(|x| x.0.clone()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HalfSpaceDoc {
    pub normal: Vec<JsonInt>,
    pub offset: JsonRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeDoc {
    pub dim: usize,
    pub halfspaces: Vec<HalfSpaceDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub markings: Option<Vec<JsonInt>>,
}

impl PolytopeDoc {
    pub fn from_hrep(h: &HRep, markings: Option<&[BigInt]>) -> Self {
        Self {
            dim: h.dim(),
            halfspaces: h
                .halfspaces()
                .iter()
                .map(|hs| HalfSpaceDoc { normal: ints(hs.normal.coords()), offset: JsonRational(hs.offset.clone()) })
                .collect(),
            markings: markings.map(ints),
        }
    }

    /// The canonical H-representation with its markings.
    pub fn from_marked(p: &MarkedPolytope) -> Self {
        Self::from_hrep(&p.hrep(), p.markings())
    }

    pub fn to_hrep(&self) -> Result<HRep> {
        let mut rows = Vec::with_capacity(self.halfspaces.len());
        for (i, h) in self.halfspaces.iter().enumerate() {
            if h.normal.len() != self.dim {
                return Err(Error::Schema(format!(
                    "halfspace {i}: normal has {} entries, expected {}",
                    h.normal.len(),
                    self.dim
                )));
            }
            rows.push(HalfSpace::new(LatticeVector::new(unwrap_ints(&h.normal)), h.offset.0.clone()));
        }
        HRep::new(self.dim, rows)
    }

    pub fn markings(&self) -> Result<Option<Vec<BigInt>>> {
        match &self.markings {
            None => Ok(None),
            Some(m) if m.len() != self.halfspaces.len() => Err(Error::Schema(format!(
                "{} markings for {} halfspaces",
                m.len(),
                self.halfspaces.len()
            ))),
            Some(m) => Ok(Some(unwrap_ints(m))),
        }
    }

    pub fn to_marked(&self, require_integral: bool) -> Result<MarkedPolytope> {
        MarkedPolytope::from_hrep(&self.to_hrep()?, self.markings()?, require_integral)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionDoc {
    pub r: usize,
    /// `d` rows of `r` entries.
    pub iota: Vec<Vec<JsonInt>>,
    pub nu: Vec<JsonInt>,
    pub delta_tilde: Vec<JsonInt>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu_tilde: Option<Vec<JsonInt>>,
    /// `d` rows of `d - r` entries.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complement: Option<Vec<Vec<JsonInt>>>,
}

fn matrix(rows: &[Vec<JsonInt>], cols: usize, what: &str) -> Result<IntegerMatrix> {
    let mut entries = Vec::with_capacity(rows.len() * cols);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != cols {
            return Err(Error::Schema(format!("{what} row {i} has {} entries, expected {cols}", row.len())));
        }
        entries.extend(unwrap_ints(row));
    }
    IntegerMatrix::new(rows.len(), cols, entries)
}

fn matrix_rows(m: &IntegerMatrix) -> Vec<Vec<JsonInt>> {
    m.rows_vec().iter().map(|r| ints(r.coords())).collect()
}

impl ActionDoc {
    pub fn from_action(a: &ActionData) -> Self {
        Self {
            r: a.r,
            iota: matrix_rows(&a.iota),
            nu: ints(a.nu.coords()),
            delta_tilde: a.delta_tilde.coords().iter().map(|q| JsonInt(q.to_integer())).collect(),
            nu_tilde: a.nu_tilde.as_ref().map(|t| ints(t.coords())),
            complement: a.complement.as_ref().map(matrix_rows),
        }
    }

    pub fn to_action(&self) -> Result<ActionData> {
        let d = self.iota.len();
        if d == 0 {
            return Err(Error::Schema("iota has no rows".into()));
        }
        if self.r == 0 || self.r > d {
            return Err(Error::Schema(format!("rank {} out of range for dimension {d}", self.r)));
        }
        let iota = matrix(&self.iota, self.r, "iota")?;
        if self.delta_tilde.len() != d {
            return Err(Error::Schema(format!("delta_tilde has {} entries, expected {d}", self.delta_tilde.len())));
        }
        let complement = match &self.complement {
            Some(rows) => {
                if rows.len() != d {
                    return Err(Error::Schema(format!("complement has {} rows, expected {d}", rows.len())));
                }
                Some(matrix(rows, d - self.r, "complement")?)
            }
            None => None,
        };
        Ok(ActionData {
            r: self.r,
            iota,
            nu: LatticeVector::new(unwrap_ints(&self.nu)),
            delta_tilde: DualVector::new(self.delta_tilde.iter().map(|x| BigRational::from_integer(x.0.clone())).collect()),
            nu_tilde: self.nu_tilde.as_ref().map(|t| LatticeVector::new(unwrap_ints(t))),
            complement,
        })
    }
}

pub fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))
}

pub fn parse_polytope(text: &str) -> Result<PolytopeDoc> {
    parse(text)
}

pub fn parse_action(text: &str) -> Result<ActionDoc> {
    parse(text)
}

/// Pretty-printed JSON with a trailing newline.
pub fn emit<T: Serialize>(doc: &T) -> String {
    let mut out = serde_json::to_string_pretty(doc).expect("documents serialize");
    out.push('\n');
    out
}
