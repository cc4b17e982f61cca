//! JSON exchange formats for sets, tuple sets, functions, tensors, spectra and
//! energy values. Every format round-trips bit-exactly: writing what was read
//! reproduces the input up to whitespace.

use het_core::energy::{EnergyValue, Number};
use het_core::spectral::Spectrum;
use het_core::{Elem, Error, GSet, GroupSpec, DenseFn, SparseTensor, TupleSet, C64};
use serde::{Deserialize, Serialize};

use crate::cap::order_cap;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetJson {
    pub group: Vec<u64>,
    pub set: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TupleSetJson {
    pub group: Vec<u64>,
    pub arity: usize,
    pub tuples: Vec<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DenseFnJson {
    pub group: Vec<u64>,
    pub values: Vec<[f64; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorJson {
    pub group: Vec<u64>,
    pub arity: usize,
    pub entries: Vec<(Vec<u64>, i128)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumJson {
    pub eigenvalues: Vec<f64>,
    pub residual_max: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NumberJson {
    Exact(i128),
    Real(f64),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnergyJson {
    pub kind: String,
    pub value: NumberJson,
}

/// Builds a group from its factor list under the `HET_CAP_N` order cap.
pub fn group_from(factors: &[u64]) -> Result<GroupSpec, Error> {
    GroupSpec::with_cap(factors, order_cap())
}

fn elem(g: &GroupSpec, x: u64) -> Result<Elem, Error> {
    g.elem(x)
}

impl SetJson {
    pub fn from_set(a: &GSet) -> Self {
        SetJson {
            group: a.group().factors(),
            set: a.iter().map(|e| e.0 as u64).collect(),
        }
    }

    /// Rejects out-of-range and repeated elements.
    pub fn to_set(&self) -> Result<GSet, Error> {
        let g = group_from(&self.group)?;
        self.to_set_in(&g)
    }

    pub fn to_set_in(&self, g: &GroupSpec) -> Result<GSet, Error> {
        if g.factors() != self.group {
            return Err(Error::GroupMismatch);
        }
        let mut a = GSet::empty(g);
        for &x in &self.set {
            if !a.insert(elem(g, x)?) {
                return Err(Error::InvalidArgument("repeated element in set"));
            }
        }
        Ok(a)
    }
}

impl TupleSetJson {
    pub fn from_tuples(t: &TupleSet) -> Self {
        TupleSetJson {
            group: t.group().factors(),
            arity: t.arity(),
            tuples: t.iter().map(|v| v.iter().map(|e| e.0 as u64).collect()).collect(),
        }
    }

    pub fn to_tuples(&self) -> Result<TupleSet, Error> {
        let g = group_from(&self.group)?;
        let mut out = TupleSet::empty(&g, self.arity)?;
        for t in &self.tuples {
            if t.len() != self.arity {
                return Err(Error::InvalidArgument("tuple length differs from arity"));
            }
            let v = t.iter().map(|&x| elem(&g, x)).collect::<Result<Vec<_>, _>>()?;
            if !out.insert(&v) {
                return Err(Error::InvalidArgument("repeated tuple"));
            }
        }
        Ok(out)
    }
}

impl DenseFnJson {
    pub fn from_fn(f: &DenseFn) -> Self {
        DenseFnJson {
            group: f.group().factors(),
            values: f.to_complex().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    /// Integral input lands on the exact integer path.
    pub fn to_fn(&self) -> Result<DenseFn, Error> {
        let g = group_from(&self.group)?;
        let v = self.values.iter().map(|&[re, im]| C64::new(re, im)).collect();
        DenseFn::from_complex_exact(&g, v)
    }
}

impl TensorJson {
    pub fn from_tensor(t: &SparseTensor<i128>) -> Self {
        TensorJson {
            group: t.group().factors(),
            arity: t.arity(),
            entries: t
                .entries()
                .map(|(k, v)| (k.iter().map(|e| e.0 as u64).collect(), v))
                .collect(),
        }
    }

    pub fn to_tensor(&self) -> Result<SparseTensor<i128>, Error> {
        let g = group_from(&self.group)?;
        let mut t = SparseTensor::new(&g, self.arity)?;
        for (k, v) in &self.entries {
            if k.len() != self.arity {
                return Err(Error::InvalidArgument("tensor key length differs from arity"));
            }
            let key = k.iter().map(|&x| elem(&g, x)).collect::<Result<Vec<_>, _>>()?;
            t.set(&key, *v);
        }
        Ok(t)
    }
}

impl SpectrumJson {
    pub fn from_spectrum(s: &Spectrum) -> Self {
        SpectrumJson {
            eigenvalues: s.eigenvalues.clone(),
            residual_max: s.residual_max,
        }
    }
}

impl EnergyJson {
    pub fn from_value(v: &EnergyValue) -> Self {
        EnergyJson {
            kind: v.kind.to_string(),
            value: match v.value {
                Number::Exact(n) => NumberJson::Exact(n),
                Number::Real(x) => NumberJson::Real(x),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_round_trip() {
        let text = r#"{"group":[4,3],"set":[0,5,11]}"#;
        let s: SetJson = serde_json::from_str(text).unwrap();
        let a = s.to_set().unwrap();
        assert_eq!(a.len(), 3);
        assert_eq!(serde_json::to_string(&SetJson::from_set(&a)).unwrap(), text);
        let bad: SetJson = serde_json::from_str(r#"{"group":[5],"set":[5]}"#).unwrap();
        assert!(bad.to_set().is_err());
        let dup: SetJson = serde_json::from_str(r#"{"group":[5],"set":[1,1]}"#).unwrap();
        assert!(dup.to_set().is_err());
    }

    #[test]
    fn tuple_round_trip() {
        let text = r#"{"group":[5],"arity":2,"tuples":[[0,1],[4,4]]}"#;
        let t: TupleSetJson = serde_json::from_str(text).unwrap();
        let back = TupleSetJson::from_tuples(&t.to_tuples().unwrap());
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }

    #[test]
    fn fn_and_tensor_round_trip() {
        let text = r#"{"group":[3],"values":[[0.1,-2.5],[1e-300,0.0],[3.0,0.0]]}"#;
        let f: DenseFnJson = serde_json::from_str(text).unwrap();
        let back = DenseFnJson::from_fn(&f.to_fn().unwrap());
        assert_eq!(back, f);
        let text = r#"{"group":[5],"arity":2,"entries":[[[0,0],2],[[1,4],-170141183460469231731687303715884105728]]}"#;
        let t: TensorJson = serde_json::from_str(text).unwrap();
        assert_eq!(serde_json::to_string(&TensorJson::from_tensor(&t.to_tensor().unwrap())).unwrap(), text);
    }

    #[test]
    fn energy_json() {
        let v = EnergyJson {
            kind: "E2".into(),
            value: NumberJson::Exact(19),
        };
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"{"kind":"E2","value":19}"#);
        let r: EnergyJson = serde_json::from_str(r#"{"kind":"Ealpha(1.5)","value":7.25}"#).unwrap();
        assert_eq!(r.value, NumberJson::Real(7.25));
    }
}
