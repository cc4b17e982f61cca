//! Serialized check instances. A witness carries everything needed to
//! re-evaluate a check: the group, named sets and tuple sets, and scalar
//! parameters (including seeds for auxiliary random data).

use std::collections::BTreeMap;

use het_core::{Error, GSet, GroupSpec, TupleSet};
use rand::seq::index::sample;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::format::group_from;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Rows {
    pub arity: usize,
    pub rows: Vec<Vec<u64>>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub group: Vec<u64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub sets: BTreeMap<String, Vec<u64>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub tuples: BTreeMap<String, Rows>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Witness {
    pub fn new(g: &GroupSpec) -> Self {
        Witness {
            group: g.factors(),
            ..Self::default()
        }
    }

    pub fn group(&self) -> Result<GroupSpec, Error> {
        group_from(&self.group)
    }

    pub fn with_set(mut self, name: &str, a: &GSet) -> Self {
        self.sets.insert(name.into(), a.iter().map(|e| e.0 as u64).collect());
        self
    }

    pub fn with_tuples(mut self, name: &str, t: &TupleSet) -> Self {
        let rows = t.iter().map(|v| v.iter().map(|e| e.0 as u64).collect()).collect();
        self.tuples.insert(name.into(), Rows { arity: t.arity(), rows });
        self
    }

    pub fn with(mut self, name: &str, v: impl Into<Value>) -> Self {
        self.params.insert(name.into(), v.into());
        self
    }

    pub fn set(&self, name: &str) -> Result<GSet, Error> {
        let g = self.group()?;
        let idx = self.sets.get(name).ok_or(Error::InvalidArgument("witness lacks a set"))?;
        GSet::from_indices(&g, idx.iter().copied())
    }

    pub fn tuple_set(&self, name: &str) -> Result<TupleSet, Error> {
        let g = self.group()?;
        let rows = self.tuples.get(name).ok_or(Error::InvalidArgument("witness lacks a tuple set"))?;
        let arity = rows.arity;
        let rows = rows
            .rows
            .iter()
            .map(|r| r.iter().map(|&x| g.elem(x)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        TupleSet::from_tuples(&g, arity, rows)
    }

    pub fn int(&self, name: &str) -> Result<i64, Error> {
        self.params
            .get(name)
            .and_then(Value::as_i64)
            .ok_or(Error::InvalidArgument("witness lacks an integer parameter"))
    }

    pub fn uint(&self, name: &str) -> Result<u64, Error> {
        self.params
            .get(name)
            .and_then(Value::as_u64)
            .ok_or(Error::InvalidArgument("witness lacks an integer parameter"))
    }

    pub fn real(&self, name: &str) -> Result<f64, Error> {
        self.params
            .get(name)
            .and_then(Value::as_f64)
            .ok_or(Error::InvalidArgument("witness lacks a real parameter"))
    }

    pub fn flag(&self, name: &str) -> Result<bool, Error> {
        self.params
            .get(name)
            .and_then(Value::as_bool)
            .ok_or(Error::InvalidArgument("witness lacks a boolean parameter"))
    }

    pub fn str(&self, name: &str) -> Result<&str, Error> {
        self.params
            .get(name)
            .and_then(Value::as_str)
            .ok_or(Error::InvalidArgument("witness lacks a string parameter"))
    }
}

/// `m` distinct elements drawn uniformly.
pub fn random_set(g: &GroupSpec, m: usize, rng: &mut ChaCha8Rng) -> Result<GSet, Error> {
    if m > g.order() {
        return Err(Error::InvalidArgument("set size exceeds the group order"));
    }
    GSet::from_indices(g, sample(rng, g.order(), m).into_iter().map(|i| i as u64))
}

/// A random set of size in `[lo, hi]`.
pub fn random_sized(g: &GroupSpec, lo: usize, hi: usize, rng: &mut ChaCha8Rng) -> Result<GSet, Error> {
    let m = rng.gen_range(lo..=hi.min(g.order()));
    random_set(g, m, rng)
}

/// `Z/N` with `N` drawn from `choices`.
pub fn random_cyclic(choices: &[u64], rng: &mut ChaCha8Rng) -> GroupSpec {
    let n = choices[rng.gen_range(0..choices.len())];
    GroupSpec::cyclic(n).expect("small cyclic group")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn round_trip() {
        let g = GroupSpec::cyclic(16).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = random_set(&g, 5, &mut rng).unwrap();
        let y = TupleSet::from_tuples(&g, 2, [[g.elem(1).unwrap(), g.elem(3).unwrap()]]).unwrap();
        let w = Witness::new(&g).with_set("A", &a).with_tuples("Y", &y).with("k", 3);
        let text = serde_json::to_string(&w).unwrap();
        let back: Witness = serde_json::from_str(&text).unwrap();
        assert_eq!(back.set("A").unwrap(), a);
        assert_eq!(back.tuple_set("Y").unwrap(), y);
        assert_eq!(back.int("k").unwrap(), 3);
        assert!(random_set(&g, 17, &mut rng).is_err());
    }
}
