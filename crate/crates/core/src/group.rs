//! Finite abelian groups `Z/n1 x ... x Z/nd` with elements packed as
//! mixed-radix indices in `[0, N)`, first factor fastest-varying.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::f64::consts::TAU;
use core::fmt;

use crate::limits::DEFAULT_ORDER_CAP;
use crate::{Error, Result, C64};

/// A group element, stored as its canonical packed index.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, PartialEq, Eq, Hash)]
struct Inner {
    factors: Vec<u32>,
    /// `strides[i] = n_0 * ... * n_{i-1}`.
    strides: Vec<u32>,
    order: u32,
}

/// The group `Z/n1 x ... x Z/nd`. Cheap to clone; immutable.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupSpec(Arc<Inner>);

impl fmt::Debug for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group{:?}", self.0.factors)
    }
}

/// A character of the group, identified with an element via self-duality.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Character {
    pub xi: Elem,
}

/// `e(k/n) = exp(2 pi i k / n)`.
#[inline]
pub fn unit_root(k: u64, n: u64) -> C64 {
    let k = k % n;
    if k == 0 {
        return C64::new(1.0, 0.0);
    }
    // exact quarter turns avoid sin(pi) ~ 1e-16 residue
    if 4 * k % n == 0 {
        return match 4 * k / n {
            1 => C64::new(0.0, 1.0),
            2 => C64::new(-1.0, 0.0),
            _ => C64::new(0.0, -1.0),
        };
    }
    let angle = TAU * (k as f64) / (n as f64);
    C64::new(libm::cos(angle), libm::sin(angle))
}

impl GroupSpec {
    /// Builds the group with the default order cap of `2^20`.
    pub fn new(factors: &[u64]) -> Result<Self> {
        Self::with_cap(factors, DEFAULT_ORDER_CAP)
    }

    /// Builds the group, failing when `N` exceeds `cap`.
    pub fn with_cap(factors: &[u64], cap: u64) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidArgument("a group needs at least one factor"));
        }
        let cap = cap.min(u32::MAX as u64);
        let mut order: u64 = 1;
        let mut strides = Vec::with_capacity(factors.len());
        for &n in factors {
            if n < 2 {
                return Err(Error::InvalidFactor(n));
            }
            strides.push(order as u32);
            order = order.checked_mul(n).filter(|&o| o <= cap).ok_or(Error::CapExceeded {
                what: "group order",
                needed: factors.iter().map(|&n| n as u128).product(),
                cap: cap as u128,
            })?;
        }
        Ok(GroupSpec(Arc::new(Inner {
            factors: factors.iter().map(|&n| n as u32).collect(),
            strides,
            order: order as u32,
        })))
    }

    /// `Z/n`.
    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(&[n])
    }

    /// Order `N` of the group.
    #[inline]
    pub fn order(&self) -> usize {
        self.0.order as usize
    }

    pub fn factors(&self) -> Vec<u64> {
        self.0.factors.iter().map(|&n| n as u64).collect()
    }

    pub fn rank(&self) -> usize {
        self.0.factors.len()
    }

    #[inline]
    pub fn is_cyclic(&self) -> bool {
        self.0.factors.len() == 1
    }

    /// The modulus of a cyclic group, `None` for products.
    pub fn modulus(&self) -> Option<u64> {
        self.is_cyclic().then(|| self.0.order as u64)
    }

    /// `G^k` with factors repeated, so that packed `k`-tuples of elements of
    /// `G` are exactly packed elements of `G^k`.
    pub fn power(&self, k: usize) -> Result<Self> {
        self.power_with_cap(k, DEFAULT_ORDER_CAP)
    }

    pub fn power_with_cap(&self, k: usize, cap: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("power of a group needs k >= 1"));
        }
        let factors: Vec<u64> = (0..k).flat_map(|_| self.factors()).collect();
        Self::with_cap(&factors, cap)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.0.order).map(Elem)
    }

    /// Validates an index.
    pub fn elem(&self, index: u64) -> Result<Elem> {
        if index < self.0.order as u64 {
            Ok(Elem(index as u32))
        } else {
            Err(Error::GroupMismatch)
        }
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        x.0 < self.0.order
    }

    /// Packs coordinates `(x_1, ..., x_d)`, each reduced modulo its factor.
    pub fn pack(&self, coords: &[i64]) -> Result<Elem> {
        if coords.len() != self.rank() {
            return Err(Error::GroupMismatch);
        }
        let mut index = 0u32;
        for ((&c, &n), &s) in coords.iter().zip(&self.0.factors).zip(&self.0.strides) {
            index += c.rem_euclid(n as i64) as u32 * s;
        }
        Ok(Elem(index))
    }

    pub fn unpack(&self, x: Elem) -> Vec<u64> {
        let mut rest = x.0;
        self.0
            .factors
            .iter()
            .map(|&n| {
                let digit = rest % n;
                rest /= n;
                digit as u64
            })
            .collect()
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    #[inline]
    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        let inner = &*self.0;
        if inner.factors.len() == 1 {
            let s = x.0 + y.0;
            return Elem(if s >= inner.order { s - inner.order } else { s });
        }
        let (mut a, mut b) = (x.0, y.0);
        let mut out = 0;
        for (&n, &s) in inner.factors.iter().zip(&inner.strides) {
            let d = a % n + b % n;
            out += if d >= n { d - n } else { d } * s;
            a /= n;
            b /= n;
        }
        Elem(out)
    }

    #[inline]
    pub fn neg(&self, x: Elem) -> Elem {
        let inner = &*self.0;
        if inner.factors.len() == 1 {
            return Elem(if x.0 == 0 { 0 } else { inner.order - x.0 });
        }
        let mut a = x.0;
        let mut out = 0;
        for (&n, &s) in inner.factors.iter().zip(&inner.strides) {
            let d = a % n;
            out += if d == 0 { 0 } else { n - d } * s;
            a /= n;
        }
        Elem(out)
    }

    #[inline]
    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        self.add(x, self.neg(y))
    }

    /// `k * x` for any integer `k`.
    pub fn scale(&self, k: i64, x: Elem) -> Elem {
        let coords: Vec<i64> = self
            .unpack(x)
            .into_iter()
            .zip(&self.0.factors)
            .map(|(c, &n)| ((c as i128 * k as i128).rem_euclid(n as i128)) as i64)
            .collect();
        self.pack(&coords).expect("rank matches")
    }

    /// Checked addition for elements of unknown provenance.
    pub fn try_add(&self, x: Elem, y: Elem) -> Result<Elem> {
        if self.contains(x) && self.contains(y) {
            Ok(self.add(x, y))
        } else {
            Err(Error::GroupMismatch)
        }
    }

    pub fn try_sub(&self, x: Elem, y: Elem) -> Result<Elem> {
        if self.contains(x) && self.contains(y) {
            Ok(self.sub(x, y))
        } else {
            Err(Error::GroupMismatch)
        }
    }

    /// The phase of `xi . x` as an integer `k` with `xi . x = k / N mod 1`.
    pub fn phase(&self, xi: Elem, x: Elem) -> u64 {
        let n_total = self.0.order as u64;
        let (mut a, mut b) = (xi.0 as u64, x.0 as u64);
        let mut k = 0u64;
        for &n in &self.0.factors {
            let n = n as u64;
            let prod = (a % n) * (b % n) % n;
            k = (k + prod * (n_total / n)) % n_total;
            a /= n;
            b /= n;
        }
        k
    }

    /// `e(xi . x) = exp(2 pi i sum_j xi_j x_j / n_j)`.
    pub fn char_eval(&self, chi: Character, x: Elem) -> Result<C64> {
        if !self.contains(chi.xi) || !self.contains(x) {
            return Err(Error::GroupMismatch);
        }
        Ok(unit_root(self.phase(chi.xi, x), self.0.order as u64))
    }
}

/// Standalone alias for [`GroupSpec::new`].
pub fn make_group(factors: &[u64]) -> Result<GroupSpec> {
    GroupSpec::new(factors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn make_group_examples() {
        assert_eq!(make_group(&[5]).unwrap().order(), 5);
        assert_eq!(make_group(&[2, 3]).unwrap().order(), 6);
        assert_eq!(make_group(&[25]).unwrap().order(), 25);
        assert_eq!(make_group(&[1, 3]), Err(Error::InvalidFactor(1)));
        assert!(matches!(
            make_group(&[1 << 11, 1 << 11]),
            Err(Error::CapExceeded { .. })
        ));
        assert!(GroupSpec::with_cap(&[1 << 11, 1 << 11], 1 << 22).is_ok());
    }

    #[test]
    fn elem_ops_examples() {
        let z5 = make_group(&[5]).unwrap();
        assert_eq!(z5.add(Elem(3), Elem(4)), Elem(2));
        assert_eq!(z5.neg(Elem(0)), Elem(0));
        assert_eq!(z5.sub(Elem(1), Elem(3)), Elem(3));
        assert_eq!(z5.scale(-2, Elem(1)), Elem(3));

        let g = make_group(&[2, 3]).unwrap();
        let x = g.pack(&[1, 2]).unwrap();
        assert_eq!(g.unpack(g.add(x, x)), [0, 1]);
        assert_eq!(g.try_add(x, Elem(6)), Err(Error::GroupMismatch));
    }

    #[test]
    fn char_eval_examples() {
        let z4 = make_group(&[4]).unwrap();
        let z5 = make_group(&[5]).unwrap();
        let one = z4.char_eval(Character { xi: Elem(0) }, Elem(3)).unwrap();
        assert!((one - C64::new(1.0, 0.0)).norm() < 1e-15);
        let i = z4.char_eval(Character { xi: Elem(1) }, Elem(1)).unwrap();
        assert!((i - C64::new(0.0, 1.0)).norm() < 1e-15);
        // e(6/5) = e(1/5)
        let v = z5.char_eval(Character { xi: Elem(2) }, Elem(3)).unwrap();
        let expect = C64::new(libm::cos(TAU / 5.0), libm::sin(TAU / 5.0));
        assert!((v - expect).norm() < 1e-12);
    }

    #[test]
    fn pack_unpack_roundtrip() {
        let g = make_group(&[3, 4, 7, 5]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10_000 {
            let x = Elem(rng.gen_range(0..g.order() as u32));
            let coords: Vec<i64> = g.unpack(x).into_iter().map(|c| c as i64).collect();
            assert_eq!(g.pack(&coords).unwrap(), x);
        }
    }

    #[test]
    fn characters_are_multiplicative_and_orthogonal() {
        let g = make_group(&[4, 6]).unwrap();
        let n = g.order();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..500 {
            let xi = Character { xi: Elem(rng.gen_range(0..n as u32)) };
            let x = Elem(rng.gen_range(0..n as u32));
            let y = Elem(rng.gen_range(0..n as u32));
            let lhs = g.char_eval(xi, g.add(x, y)).unwrap();
            let rhs = g.char_eval(xi, x).unwrap() * g.char_eval(xi, y).unwrap();
            assert!((lhs - rhs).norm() < 1e-12);
            assert!((lhs.norm() - 1.0).abs() < 1e-12);
        }
        for xi in g.elements() {
            let s: C64 = g
                .elements()
                .map(|x| g.char_eval(Character { xi }, x).unwrap())
                .sum();
            let expect = if xi == Elem::ZERO { n as f64 } else { 0.0 };
            assert!((s - C64::new(expect, 0.0)).norm() < 1e-9 * n as f64);
        }
    }

    #[test]
    fn power_group_packs_tuples() {
        let g = make_group(&[5]).unwrap();
        let g2 = g.power(2).unwrap();
        assert_eq!(g2.order(), 25);
        // (1, 3) packs to 1 + 3*5
        assert_eq!(g2.pack(&[1, 3]).unwrap(), Elem(16));
    }
}
