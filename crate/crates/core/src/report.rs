//! One JSON object per experiment trial.
//!
//! Integers that fit in 53 bits are emitted as JSON numbers and larger ones
//! as decimal strings, so every value survives a round trip through a
//! double-based JSON reader. Rationals are strings of the form `"p/q"`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::linalg::Rat;

const SAFE: i64 = (1 << 53) - 1;

/// Lossless JSON form of an integer.
pub fn int_value(v: impl Into<BigInt>) -> Value {
    let v = v.into();
    match v.to_i64() {
        Some(x) if (-SAFE..=SAFE).contains(&x) => Value::from(x),
        _ => Value::String(v.to_string()),
    }
}

pub fn rat_value(r: &Rat) -> Value {
    Value::String(format!("{}/{}", r.numer(), r.denom()))
}

/// Parses a value written by [`int_value`].
pub fn value_to_int(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from),
        Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

fn ser_seed<S: serde::Serializer>(seed: &u64, s: S) -> Result<S::Ok, S::Error> {
    int_value(*seed).serialize(s)
}

fn de_seed<'de, D: serde::Deserializer<'de>>(d: D) -> Result<u64, D::Error> {
    let v = Value::deserialize(d)?;
    value_to_int(&v)
        .and_then(|b| b.to_u64())
        .ok_or_else(|| serde::de::Error::custom(format!("bad seed {v}")))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub experiment: String,
    pub trial: u64,
    #[serde(serialize_with = "ser_seed", deserialize_with = "de_seed")]
    pub seed: u64,
    pub params: BTreeMap<String, Value>,
    pub observed: BTreeMap<String, Value>,
    /// `None` for report-only experiments.
    pub pass: Option<bool>,
}

impl Report {
    pub fn new(experiment: impl Into<String>, trial: u64, seed: u64) -> Self {
        Report {
            experiment: experiment.into(),
            trial,
            seed,
            params: BTreeMap::new(),
            observed: BTreeMap::new(),
            pass: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_owned(), value.into());
        self
    }

    pub fn observe(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.observed.insert(key.to_owned(), value.into());
        self
    }

    pub fn observe_int(&mut self, key: &str, value: impl Into<BigInt>) -> &mut Self {
        self.observe(key, int_value(value))
    }

    pub fn set_pass(&mut self, pass: bool) -> &mut Self {
        self.pass = Some(pass);
        self
    }

    pub fn failed(&self) -> bool {
        self.pass == Some(false)
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("plain data")
    }
}
