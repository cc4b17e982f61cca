//! The check registry. A check draws a random instance (its witness) from a
//! seed, evaluates one or more `(lhs, rhs)` pairs on it, and compares them
//! under its relation. The report carries the tightest pair.

mod energy;
mod harmonic;
mod sets;
mod spectral;
mod structures;

use std::sync::OnceLock;
use std::time::Instant;

use het_core::{Error, C64};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::witness::Witness;

#[derive(Copy, Clone, Debug, PartialEq)]
pub enum Relation {
    EqExact,
    LeqExact,
    /// Relative tolerance.
    EqTol(f64),
    LeqTol(f64),
    /// Monitored ratio; never pass or fail.
    ReportOnly,
}

/// Which acceptance suite a check belongs to.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Identity,
    Inequality,
    Fourier,
    Spectral,
    Structure,
    Monitor,
}

#[derive(Copy, Clone, Debug, PartialEq)]
pub enum Val {
    Int(i128),
    Real(f64),
    Complex(C64),
}

impl Val {
    fn modulus(self) -> f64 {
        match self {
            Val::Int(n) => (n as f64).abs(),
            Val::Real(x) => x.abs(),
            Val::Complex(z) => z.norm(),
        }
    }

    fn complex(self) -> C64 {
        match self {
            Val::Int(n) => C64::new(n as f64, 0.0),
            Val::Real(x) => C64::new(x, 0.0),
            Val::Complex(z) => z,
        }
    }

    fn real(self) -> f64 {
        self.complex().re
    }

    fn to_json(self) -> Value {
        match self {
            Val::Int(n) => i64::try_from(n).map(Value::from).unwrap_or_else(|_| Value::from(n as f64)),
            Val::Real(x) => serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number),
            Val::Complex(z) => match (serde_json::Number::from_f64(z.re), serde_json::Number::from_f64(z.im)) {
                (Some(re), Some(im)) => Value::Array(vec![Value::Number(re), Value::Number(im)]),
                _ => Value::Null,
            },
        }
    }
}

macro_rules! val_from_int {
    ($($t:ty),*) => {$(
        impl From<$t> for Val {
            fn from(n: $t) -> Self {
                Val::Int(n as i128)
            }
        }
    )*};
}
val_from_int!(usize, u64, i64, u32, i128, bool);

impl From<f64> for Val {
    fn from(x: f64) -> Self {
        Val::Real(x)
    }
}

impl From<C64> for Val {
    fn from(z: C64) -> Self {
        Val::Complex(z)
    }
}

/// One comparison. `scale` is a floor for the magnitude used by relative
/// tolerances, for sides that are legitimately zero.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct Pair {
    pub lhs: Val,
    pub rhs: Val,
    pub scale: f64,
}

impl Pair {
    pub fn new(lhs: impl Into<Val>, rhs: impl Into<Val>) -> Self {
        Pair {
            lhs: lhs.into(),
            rhs: rhs.into(),
            scale: 0.0,
        }
    }

    pub fn scaled(mut self, s: f64) -> Self {
        self.scale = s;
        self
    }

    fn ratio(&self) -> Option<f64> {
        let (l, r) = (self.lhs.modulus(), self.rhs.modulus());
        if r == 0.0 {
            (l == 0.0).then_some(1.0)
        } else {
            Some(l / r).filter(|x| x.is_finite())
        }
    }

    /// Whether the pair satisfies `rel`, and how tight it is (larger is tighter).
    fn judge(&self, rel: Relation) -> (bool, f64) {
        let mag = self.lhs.modulus().max(self.rhs.modulus()).max(self.scale);
        match rel {
            Relation::EqExact => match (self.lhs, self.rhs) {
                (Val::Int(l), Val::Int(r)) => (l == r, 0.0),
                (l, r) => (l.complex() == r.complex(), 0.0),
            },
            Relation::LeqExact => match (self.lhs, self.rhs) {
                (Val::Int(l), Val::Int(r)) => (l <= r, self.ratio().unwrap_or(f64::INFINITY)),
                (l, r) => (l.real() <= r.real(), self.ratio().unwrap_or(f64::INFINITY)),
            },
            Relation::EqTol(eps) => {
                let d = (self.lhs.complex() - self.rhs.complex()).norm();
                let rel_err = if mag == 0.0 { 0.0 } else { d / mag };
                (d <= eps * mag, rel_err)
            }
            Relation::LeqTol(eps) => {
                let (l, r) = (self.lhs.real(), self.rhs.real());
                (l <= r + eps * mag, self.ratio().unwrap_or(f64::INFINITY))
            }
            Relation::ReportOnly => (true, self.ratio().unwrap_or(0.0)),
        }
    }
}

pub type Gen = fn(&mut ChaCha8Rng) -> Result<Witness, Error>;
pub type Eval = fn(&Witness) -> Result<Vec<Pair>, Error>;

pub struct Check {
    pub name: &'static str,
    /// The relation tested, written out as a formula.
    pub paper_ref: &'static str,
    pub suite: Suite,
    pub relation: Relation,
    pub gen: Gen,
    pub eval: Eval,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Reported,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub paper_ref: String,
    pub seed: u64,
    pub lhs: Value,
    pub rhs: Value,
    pub ratio: Option<f64>,
    pub verdict: Verdict,
    pub elapsed_ms: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

/// A report plus the error that produced a failure, if any.
pub struct Execution {
    pub report: CheckReport,
    pub error: Option<Error>,
}

pub fn registry() -> &'static [Check] {
    static REG: OnceLock<Vec<Check>> = OnceLock::new();
    REG.get_or_init(|| {
        let mut v = Vec::new();
        v.extend(sets::checks());
        v.extend(harmonic::checks());
        v.extend(energy::checks());
        v.extend(spectral::checks());
        v.extend(structures::checks());
        v
    })
}

pub fn find(name: &str) -> Option<&'static Check> {
    registry().iter().find(|c| c.name == name)
}

/// Per-trial seed: the first 8 bytes of `sha256(master || name || trial)`.
pub fn derive_seed(master: u64, name: &str, trial: u64) -> u64 {
    let mut h = Sha256::new();
    h.update(master.to_le_bytes());
    h.update(name.as_bytes());
    h.update(trial.to_le_bytes());
    let d = h.finalize();
    u64::from_le_bytes(d[..8].try_into().expect("digest is 32 bytes"))
}

/// Draws the instance for `seed` and evaluates it.
pub fn execute(check: &Check, seed: u64, timing: bool) -> Execution {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ex = match (check.gen)(&mut rng) {
        Ok(w) => evaluate(check, &w, seed),
        Err(e) => failure(check, seed, Witness::default(), e),
    };
    if timing {
        ex.report.elapsed_ms = start.elapsed().as_millis() as u64;
    }
    ex
}

/// Re-evaluates a serialized witness.
pub fn evaluate(check: &Check, w: &Witness, seed: u64) -> Execution {
    let pairs = match (check.eval)(w) {
        Ok(p) => p,
        Err(e) => return failure(check, seed, w.clone(), e),
    };
    let judged: Vec<(bool, f64)> = pairs.iter().map(|p| p.judge(check.relation)).collect();
    let ok = judged.iter().all(|j| j.0);
    let pick = if ok {
        (0..pairs.len()).fold(None, |best: Option<usize>, i| match best {
            Some(b) if judged[b].1 >= judged[i].1 => Some(b),
            _ => Some(i),
        })
    } else {
        judged.iter().position(|j| !j.0)
    };
    let (lhs, rhs, ratio) = match pick {
        Some(i) => (pairs[i].lhs.to_json(), pairs[i].rhs.to_json(), pairs[i].ratio()),
        None => (Value::Null, Value::Null, None),
    };
    let verdict = match (check.relation, ok) {
        (Relation::ReportOnly, _) => Verdict::Reported,
        (_, true) => Verdict::Pass,
        (_, false) => Verdict::Fail,
    };
    Execution {
        report: CheckReport {
            check: check.name.into(),
            paper_ref: check.paper_ref.into(),
            seed,
            lhs,
            rhs,
            ratio,
            verdict,
            elapsed_ms: 0,
            witness: (verdict == Verdict::Fail).then(|| w.clone()),
        },
        error: None,
    }
}

fn failure(check: &Check, seed: u64, mut w: Witness, e: Error) -> Execution {
    w.error = Some(e.to_string());
    Execution {
        report: CheckReport {
            check: check.name.into(),
            paper_ref: check.paper_ref.into(),
            seed,
            lhs: Value::Null,
            rhs: Value::Null,
            ratio: None,
            verdict: Verdict::Fail,
            elapsed_ms: 0,
            witness: Some(w),
        },
        error: Some(e),
    }
}

/// Runs a registered check on the instance drawn from `seed`.
pub fn run_check(name: &str, seed: u64) -> Result<CheckReport, Error> {
    let c = find(name).ok_or(Error::InvalidArgument("unknown check name"))?;
    Ok(execute(c, seed, false).report)
}

/// Re-runs the witness carried by a report.
pub fn run_witness(report: &CheckReport) -> Result<CheckReport, Error> {
    let c = find(&report.check).ok_or(Error::InvalidArgument("unknown check name"))?;
    match &report.witness {
        Some(w) if w.error.is_none() => Ok(evaluate(c, w, report.seed).report),
        _ => Ok(execute(c, report.seed, false).report),
    }
}

/// The default instance: `Z/N` with `N` in `{16, 32, 64}` and named random
/// sets of size in `[lo, hi]`.
fn sets_instance(rng: &mut ChaCha8Rng, names: &[&str], lo: usize, hi: usize) -> Result<Witness, Error> {
    sets_in(rng, &[16, 32, 64], names, lo, hi)
}

fn sets_in(rng: &mut ChaCha8Rng, ns: &[u64], names: &[&str], lo: usize, hi: usize) -> Result<Witness, Error> {
    let g = crate::witness::random_cyclic(ns, rng);
    let mut w = Witness::new(&g);
    for n in names {
        let a = crate::witness::random_sized(&g, lo, hi, rng)?;
        w = w.with_set(n, &a);
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_check_passes_on_a_few_seeds() {
        let trials: u64 = std::env::var("HET_SMOKE_TRIALS").ok().and_then(|s| s.parse().ok()).unwrap_or(5);
        let mut bad = Vec::new();
        for c in registry() {
            for t in 0..trials {
                let ex = execute(c, derive_seed(7, c.name, t), false);
                if ex.report.verdict == Verdict::Fail {
                    bad.push(format!("{} #{t}: {:?} {}", c.name, ex.error, serde_json::to_string(&ex.report).unwrap()));
                }
            }
        }
        assert!(bad.is_empty(), "{}", bad.join("\n"));
    }

    #[test]
    fn names_are_unique() {
        let mut names: Vec<_> = registry().iter().map(|c| c.name).collect();
        names.sort();
        let n = names.len();
        names.dedup();
        assert_eq!(n, names.len());
    }

    #[test]
    fn seeds_are_stable() {
        assert_eq!(derive_seed(1, "x", 0), derive_seed(1, "x", 0));
        assert_ne!(derive_seed(1, "x", 0), derive_seed(1, "x", 1));
        assert_ne!(derive_seed(1, "x", 0), derive_seed(2, "x", 0));
    }
}
