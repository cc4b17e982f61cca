use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use super::GSet;
use crate::limits::{check, TUPLE_CAP};
use crate::{Elem, Error, GroupSpec, Result};

/// A finite subset of `G^k`, stored sparsely as packed `k`-tuples.
///
/// A tuple `(x_1, ..., x_k)` packs to `sum_i x_i N^(i-1)`, which is also its
/// packed index as an element of [`GroupSpec::power`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TupleSet {
    group: GroupSpec,
    arity: usize,
    members: BTreeSet<u128>,
}

impl fmt::Debug for TupleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Tuple codec for one `(G, k)`.
#[derive(Copy, Clone, Debug)]
pub(crate) struct Packer {
    n: u128,
    arity: usize,
}

impl Packer {
    pub(crate) fn new(group: &GroupSpec, arity: usize) -> Result<Self> {
        if arity == 0 {
            return Err(Error::InvalidArgument("tuple arity must be at least 1"));
        }
        let n = group.order() as u128;
        n.checked_pow(arity as u32)
            .ok_or(Error::CapExceeded {
                what: "tuple key space N^k",
                needed: u128::MAX,
                cap: u128::MAX,
            })?;
        Ok(Packer { n, arity })
    }

    #[inline]
    pub(crate) fn pack(&self, t: &[Elem]) -> u128 {
        debug_assert_eq!(t.len(), self.arity);
        t.iter().rev().fold(0u128, |acc, x| acc * self.n + x.0 as u128)
    }

    #[inline]
    pub(crate) fn unpack_into(&self, mut key: u128, out: &mut Vec<Elem>) {
        out.clear();
        for _ in 0..self.arity {
            out.push(Elem((key % self.n) as u32));
            key /= self.n;
        }
    }

    pub(crate) fn unpack(&self, key: u128) -> Vec<Elem> {
        let mut v = Vec::with_capacity(self.arity);
        self.unpack_into(key, &mut v);
        v
    }
}

impl TupleSet {
    pub fn empty(group: &GroupSpec, arity: usize) -> Result<Self> {
        Packer::new(group, arity)?;
        Ok(TupleSet {
            group: group.clone(),
            arity,
            members: BTreeSet::new(),
        })
    }

    pub fn from_tuples<I, T>(group: &GroupSpec, arity: usize, tuples: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: AsRef<[Elem]>,
    {
        let mut s = Self::empty(group, arity)?;
        for t in tuples {
            let t = t.as_ref();
            if t.len() != arity || !t.iter().all(|&x| group.contains(x)) {
                return Err(Error::GroupMismatch);
            }
            s.insert(t);
        }
        Ok(s)
    }

    /// `A_1 x ... x A_k`.
    pub fn product(sets: &[GSet]) -> Result<Self> {
        let first = sets.first().ok_or(Error::InvalidArgument("empty product"))?;
        for s in sets {
            first.same_group(s)?;
        }
        let size = sets.iter().try_fold(1u128, |acc, s| crate::error::mul(acc, s.len() as u128))?;
        check("cartesian product size", size, TUPLE_CAP)?;
        let mut out = Self::empty(first.group(), sets.len())?;
        let lists: Vec<Vec<Elem>> = sets.iter().map(GSet::to_vec).collect();
        let mut cur = Vec::with_capacity(sets.len());
        fn rec(lists: &[Vec<Elem>], cur: &mut Vec<Elem>, out: &mut TupleSet) {
            if cur.len() == lists.len() {
                out.insert(cur);
                return;
            }
            for &x in &lists[cur.len()] {
                cur.push(x);
                rec(lists, cur, out);
                cur.pop();
            }
        }
        rec(&lists, &mut cur, &mut out);
        Ok(out)
    }

    /// `Delta_k(A) = {(a, ..., a) : a in A}`.
    pub fn diagonal(a: &GSet, k: usize) -> Result<Self> {
        let mut out = Self::empty(a.group(), k)?;
        let mut t = Vec::with_capacity(k);
        for x in a.iter() {
            t.clear();
            t.resize(k, x);
            out.insert(&t);
        }
        Ok(out)
    }

    /// A set of arity 1 viewed as a tuple set.
    pub fn from_set(a: &GSet) -> Self {
        let mut out = Self::empty(a.group(), 1).expect("arity 1");
        for x in a.iter() {
            out.insert(&[x]);
        }
        out
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub(crate) fn packer(&self) -> Packer {
        Packer::new(&self.group, self.arity).expect("validated at construction")
    }

    pub fn insert(&mut self, t: &[Elem]) -> bool {
        let key = self.packer().pack(t);
        self.members.insert(key)
    }

    pub(crate) fn insert_key(&mut self, key: u128) -> bool {
        self.members.insert(key)
    }

    pub fn contains(&self, t: &[Elem]) -> bool {
        t.len() == self.arity && self.members.contains(&self.packer().pack(t))
    }

    pub(crate) fn keys(&self) -> impl Iterator<Item = u128> + '_ {
        self.members.iter().copied()
    }

    /// Tuples in ascending packed order.
    pub fn iter(&self) -> impl Iterator<Item = Vec<Elem>> + '_ {
        let p = self.packer();
        self.members.iter().map(move |&k| p.unpack(k))
    }

    /// `Y x W`: concatenation of every pair of tuples.
    pub fn cartesian(&self, other: &TupleSet) -> Result<Self> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        let size = crate::error::mul(self.len() as u128, other.len() as u128)?;
        check("cartesian product size", size, TUPLE_CAP)?;
        let mut out = Self::empty(&self.group, self.arity + other.arity)?;
        let shift = (self.group.order() as u128).pow(self.arity as u32);
        for &y in &self.members {
            for &w in &other.members {
                out.members.insert(y + w * shift);
            }
        }
        Ok(out)
    }

    /// Embeds the tuple set as a subset of the group `G^k`.
    pub fn to_gset(&self) -> Result<GSet> {
        let big = self.group.power(self.arity)?;
        GSet::from_indices(&big, self.members.iter().map(|&k| k as u64))
    }
}
