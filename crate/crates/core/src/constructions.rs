//! Concrete input families: quadratic residues, multiplicative subgroups,
//! the Heilbronn subgroup and exponential sum, convex integer sets.

use alloc::vec;
use alloc::vec::Vec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::energy::{energy_kl, kahan_sum};
use crate::group::unit_root;
use crate::harmonic::{dft, DenseFn};
use crate::sets::{basis_depth_check, GSet};
use crate::spectral::{build_op, spectrum, subgroup_eigensystem, OpSign};
use crate::{Elem, Error, GroupSpec, Result, C64};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `Z/p` with its multiplication and the smallest primitive root.
#[derive(Clone, Debug, PartialEq)]
pub struct PrimeField {
    p: u64,
    root: u64,
    group: GroupSpec,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrimeField);
        }
        let group = GroupSpec::cyclic(p)?;
        let qs = prime_factors(p - 1);
        let root = (1..p)
            .find(|&g| qs.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
            .expect("a prime field has a primitive root");
        Ok(PrimeField { p, root, group })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn root(&self) -> u64 {
        self.root
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        Elem((a.0 as u64 * b.0 as u64 % self.p) as u32)
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        Elem(pow_mod(a.0 as u64, e, self.p) as u32)
    }
}

/// The nonzero squares of `Z/p`.
pub fn quadratic_residues(p: u64) -> Result<GSet> {
    if p == 2 || !is_prime(p) {
        return Err(Error::InvalidArgument("quadratic residues need an odd prime"));
    }
    let g = GroupSpec::cyclic(p)?;
    GSet::from_indices(&g, (1..p).map(|x| x * x % p))
}

/// The largest `k` with `k 2^k < sqrt(p)`, after checking exhaustively that
/// the residues are a basis of that depth.
pub fn residue_basis_depth(p: u64) -> Result<usize> {
    let r = quadratic_residues(p)?;
    let fits = |k: u32| {
        let v = (k as u128) << k;
        v * v < p as u128
    };
    if !fits(1) {
        return Err(Error::InvalidArgument("no depth satisfies k 2^k < sqrt(p)"));
    }
    let mut k = 1;
    while fits(k + 1) {
        k += 1;
    }
    if !basis_depth_check(&r, k as usize)? {
        return Err(Error::VerificationFailed("quadratic residues are not a basis of the predicted depth"));
    }
    Ok(k as usize)
}

/// A cyclic subgroup of the units of `Z/m`, with a generator fixing the
/// enumeration `g^0, g^1, ..., g^{t-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct MultSubgroup {
    set: GSet,
    modulus: u64,
    generator: u64,
    powers: Vec<u64>,
    elements: Vec<u64>,
}

impl MultSubgroup {
    /// Validates that `gamma` is a cyclic subgroup of `(Z/m)^x`.
    pub fn from_set(gamma: &GSet) -> Result<Self> {
        let m = gamma
            .group()
            .modulus()
            .ok_or(Error::InvalidArgument("multiplicative subgroups live in a cyclic group"))?;
        if gamma.is_empty() {
            return Err(Error::EmptySet("subgroup"));
        }
        let elements: Vec<u64> = gamma.iter().map(|e| e.0 as u64).collect();
        if elements.iter().any(|&x| gcd(x, m) != 1) {
            return Err(Error::InvalidArgument("subgroup elements must be units"));
        }
        for &x in &elements {
            for &y in &elements {
                if !gamma.contains(Elem((x * y % m) as u32)) {
                    return Err(Error::InvalidArgument("set is not closed under multiplication"));
                }
            }
        }
        let t = elements.len();
        let order = |g: u64| {
            let mut x = g;
            let mut k = 1;
            while x != 1 {
                x = x * g % m;
                k += 1;
            }
            k
        };
        let generator = elements
            .iter()
            .copied()
            .find(|&g| order(g) == t)
            .ok_or(Error::InvalidArgument("subgroup is not cyclic"))?;
        let mut powers = Vec::with_capacity(t);
        let mut x = 1 % m;
        for _ in 0..t {
            powers.push(x);
            x = x * generator % m;
        }
        Ok(MultSubgroup {
            set: gamma.clone(),
            modulus: m,
            generator,
            powers,
            elements,
        })
    }

    pub fn set(&self) -> &GSet {
        &self.set
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn generator(&self) -> u64 {
        self.generator
    }

    /// Ascending elements.
    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    /// `g^l` for `l = 0..t`.
    pub fn powers(&self) -> &[u64] {
        &self.powers
    }

    /// `table[alpha][l] = t^{-1/2} e(alpha l / t)`, the value of the `alpha`-th
    /// normalized character at `g^l`.
    pub fn character_table(&self) -> Vec<Vec<C64>> {
        let t = self.order() as u64;
        let s = 1.0 / libm::sqrt(t as f64);
        (0..t)
            .map(|a| (0..t).map(|l| unit_root(a * l % t, t) * s).collect())
            .collect()
    }
}

/// The order-`t` subgroup of `(Z/p)^x`, generated by `root^{(p-1)/t}`.
pub fn mult_subgroup(p: u64, t: u64) -> Result<MultSubgroup> {
    let f = PrimeField::new(p)?;
    if t == 0 || (p - 1) % t != 0 {
        return Err(Error::InvalidArgument("subgroup order must divide p - 1"));
    }
    let g = pow_mod(f.root, (p - 1) / t, p);
    let set = GSet::from_indices(f.group(), (0..t).map(|l| pow_mod(g, l, p)))?;
    MultSubgroup::from_set(&set)
}

/// Largest prime accepted by the Heilbronn routines (their checks do `p^4` work).
pub const HEILBRONN_MAX_P: u64 = 97;

/// `{m^p mod p^2 : 1 <= m <= p - 1}` in `Z/p^2`.
pub fn heilbronn_subgroup(p: u64) -> Result<GSet> {
    if !is_prime(p) || p == 2 || p > HEILBRONN_MAX_P {
        return Err(Error::InvalidArgument("Heilbronn subgroup needs an odd prime p <= 97"));
    }
    let n = p * p;
    let g = GroupSpec::cyclic(n)?;
    let gamma = GSet::from_indices(&g, (1..p).map(|m| pow_mod(m, p, n)))?;
    if gamma.len() != (p - 1) as usize || MultSubgroup::from_set(&gamma).is_err() {
        return Err(Error::VerificationFailed("m^p mod p^2 is not a subgroup of order p - 1"));
    }
    Ok(gamma)
}

/// `S(a) = sum_{n=1}^{p} e(a n^p / p^2)`.
pub fn heilbronn_sum(p: u64, a: i64) -> Result<C64> {
    if !is_prime(p) {
        return Err(Error::NotPrimeField);
    }
    let n2 = p * p;
    let a = a.rem_euclid(n2 as i64) as u64;
    Ok((1..=p)
        .map(|n| unit_root(a * pow_mod(n, p, n2) % n2, n2))
        .sum())
}

/// Every quantity of the exact pre-constant Heilbronn chain
/// `M^12 <= E_3(Gamma) sum_{a,b} |g^(a)|^2 |g^(b)|^2 |g^(a-b)|^2`, `g = xi Gamma`.
#[derive(Clone, Debug, PartialEq)]
pub struct HeilbronnChain {
    pub p: u64,
    /// Maximizer over `xi != 0` of `t^{-1} sum_{x in xi Gamma} |Gamma^(x)|^2`.
    pub xi: Elem,
    /// `M^2` at the maximizer.
    pub m_squared: f64,
    /// `mu_1` of `T^{g^}_Gamma` from the generic solver.
    pub mu1: f64,
    /// `mu_1` read off the multiplicative characters.
    pub mu1_characters: f64,
    pub e3: i128,
    pub triple: f64,
    pub lhs: f64,
    pub rhs: f64,
}

pub fn heilbronn_chain(p: u64) -> Result<HeilbronnChain> {
    let gamma = heilbronn_subgroup(p)?;
    let sub = MultSubgroup::from_set(&gamma)?;
    let g = gamma.group().clone();
    let n = g.order() as u64;
    let t = gamma.len() as f64;
    let hat = dft(&DenseFn::indicator(&gamma))?.to_complex();
    let mut best: Option<(f64, Elem)> = None;
    for xi in g.elements().skip(1) {
        let m2 = kahan_sum(
            sub.elements()
                .iter()
                .map(|&y| hat[(xi.0 as u64 * y % n) as usize].norm_sqr()),
        ) / t;
        if best.map_or(true, |(b, _)| m2 > b * (1.0 + 1e-12)) {
            best = Some((m2, xi));
        }
    }
    let (m_squared, xi) = best.expect("group has nonzero elements");
    let xi_gamma = GSet::from_indices(&g, sub.elements().iter().map(|&y| xi.0 as u64 * y % n))?;
    let weight = dft(&DenseFn::indicator(&xi_gamma))?;
    let op = build_op(&gamma, &weight, OpSign::Difference)?;
    let mu1 = spectrum(&op)?.eigenvalues[0];
    let mu1_characters = subgroup_eigensystem(&sub, &op)?.eigenvalues[0];
    let e3 = energy_kl(&gamma, 2, 3)?;
    let w2: Vec<f64> = weight.to_complex().iter().map(|z| z.norm_sqr()).collect();
    let triple = kahan_sum(g.elements().flat_map(|a| {
        let w2 = &w2;
        let g = &g;
        g.elements()
            .map(move |b| w2[a.index()] * w2[b.index()] * w2[g.sub(a, b).index()])
    }));
    Ok(HeilbronnChain {
        p,
        xi,
        m_squared,
        mu1,
        mu1_characters,
        e3,
        triple,
        lhs: libm::pow(m_squared, 6.0),
        rhs: e3 as f64 * triple,
    })
}

/// Integers `a_1 < ... < a_n` with strictly increasing gaps, hosted in `Z/N`
/// with `N >= 4 a_n` so that two-term sums and differences do not wrap.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvexIntSet {
    elems: Vec<u64>,
    group: GroupSpec,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ConvexKind {
    Squares,
    Cubes,
    Random,
}

impl ConvexIntSet {
    pub fn new(elems: Vec<u64>) -> Result<Self> {
        if elems.is_empty() {
            return Err(Error::EmptySet("convex set"));
        }
        let increasing = elems.windows(2).all(|w| w[0] < w[1]);
        let convex = elems.windows(3).all(|w| w[2] - w[1] > w[1] - w[0]);
        if !increasing || !convex {
            return Err(Error::InvalidArgument("gaps must be positive and strictly increasing"));
        }
        let host = (4 * elems[elems.len() - 1]).max(2);
        let group = GroupSpec::cyclic(host)?;
        Ok(ConvexIntSet { elems, group })
    }

    pub fn elements(&self) -> &[u64] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn set(&self) -> GSet {
        GSet::from_indices(&self.group, self.elems.iter().copied()).expect("fits the host")
    }

    /// Whether `plus A - minus A`, and so every quantity of that size, embeds
    /// in the host group without wraparound.
    pub fn faithful(&self, plus: u64, minus: u64) -> bool {
        let max = *self.elems.last().expect("nonempty");
        (plus + minus) * max < self.group.order() as u64
    }

    pub fn check_faithful(&self, plus: u64, minus: u64) -> Result<()> {
        if self.faithful(plus, minus) {
            Ok(())
        } else {
            Err(Error::InvalidArgument("host group too small: sums would wrap around"))
        }
    }
}

pub fn convex_set(kind: ConvexKind, n: usize, seed: u64) -> Result<ConvexIntSet> {
    if n < 3 {
        return Err(Error::InvalidArgument("convex sets need n >= 3"));
    }
    let n64 = n as u64;
    let elems = match kind {
        ConvexKind::Squares => (1..=n64).map(|i| i * i).collect(),
        ConvexKind::Cubes => (1..=n64).map(|i| i * i * i).collect(),
        ConvexKind::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut x = rng.gen_range(0..4u64);
            let mut gap = rng.gen_range(1..4u64);
            let mut v = vec![x];
            for _ in 1..n {
                x += gap;
                v.push(x);
                gap += rng.gen_range(1..=3u64);
            }
            v
        }
    };
    ConvexIntSet::new(elems)
}

/// Positive values of `A ∘ B`, descending, with their 1-based ranks.
pub fn decay_profile(a: &GSet, b: &GSet) -> Result<Vec<(usize, i128)>> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySet("decay profile operand"));
    }
    a.same_group(b)?;
    let r = DenseFn::indicator(a).correlate(&DenseFn::indicator(b))?;
    let mut v: Vec<i128> = r.ints().expect("integer path").iter().copied().filter(|&x| x > 0).collect();
    v.sort_unstable_by(|x, y| y.cmp(x));
    Ok(v.into_iter().enumerate().map(|(j, x)| (j + 1, x)).collect())
}

/// `max_j (A ∘ B)(s_j) j^{1/3} / (|A| |B|^2)^{1/3}` over the decay profile.
pub fn lcon_constant(a: &GSet, b: &GSet) -> Result<f64> {
    let prof = decay_profile(a, b)?;
    let scale = libm::cbrt(a.len() as f64 * (b.len() * b.len()) as f64);
    Ok(prof
        .iter()
        .map(|&(j, v)| v as f64 * libm::cbrt(j as f64) / scale)
        .fold(0.0, f64::max))
}
