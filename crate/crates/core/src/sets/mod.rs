//! Subsets of the group and of its powers, and the exact set operations on
//! them: sumsets, restricted sets, higher difference sets, bases of depth
//! `k`, covering by translates, magnification ratios and almost periods.

mod almost_periods;
mod basis;
mod higher;
mod magnify;
mod ops;
mod rational;
pub(crate) mod tuple;

pub use almost_periods::{cs_almost_periods, lp_norm, shift_deviation, AlmostPeriods};
pub use basis::{basis_depth_check, greedy_cover, greedy_cover_bound, sum_basis_depth_check};
pub use higher::{
    higher_diff, higher_diff_characterized, higher_diff_recursive, higher_sum, tuple_shift,
};
pub use magnify::{magnification_ratio, magnification_ratio_tuples, Magnification};
pub use ops::{diffset, iterated, restricted, restricted_vec, sumset};
pub use rational::Rational;
pub use tuple::TupleSet;

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::{Elem, Error, GroupSpec, Result};

/// `+` or `-`, for sumsets versus difference sets and the two operator kinds.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

/// A subset of a finite abelian group, stored as a bitset over packed indices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GSet {
    group: GroupSpec,
    bits: Vec<u64>,
    len: usize,
}

impl fmt::Debug for GSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|e| e.0)).finish()
    }
}

impl GSet {
    pub fn empty(group: &GroupSpec) -> Self {
        GSet {
            group: group.clone(),
            bits: vec![0; group.order().div_ceil(64)],
            len: 0,
        }
    }

    pub fn full(group: &GroupSpec) -> Self {
        let mut s = Self::empty(group);
        for x in group.elements() {
            s.insert(x);
        }
        s
    }

    pub fn singleton(group: &GroupSpec, x: Elem) -> Result<Self> {
        Self::from_elems(group, [x])
    }

    /// Builds a set from elements, failing on out-of-range indices.
    pub fn from_elems<I: IntoIterator<Item = Elem>>(group: &GroupSpec, elems: I) -> Result<Self> {
        let mut s = Self::empty(group);
        for x in elems {
            if !group.contains(x) {
                return Err(Error::GroupMismatch);
            }
            s.insert(x);
        }
        Ok(s)
    }

    pub fn from_indices<I: IntoIterator<Item = u64>>(group: &GroupSpec, idx: I) -> Result<Self> {
        let mut s = Self::empty(group);
        for i in idx {
            s.insert(group.elem(i)?);
        }
        Ok(s)
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        let i = x.index();
        i < self.group.order() && self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    /// Inserts `x`, returning whether it was new. `x` must be in the group.
    #[inline]
    pub fn insert(&mut self, x: Elem) -> bool {
        let i = x.index();
        debug_assert!(i < self.group.order());
        let word = &mut self.bits[i / 64];
        let mask = 1u64 << (i % 64);
        let fresh = *word & mask == 0;
        *word |= mask;
        self.len += fresh as usize;
        fresh
    }

    pub fn remove(&mut self, x: Elem) -> bool {
        if !self.contains(x) {
            return false;
        }
        let i = x.index();
        self.bits[i / 64] &= !(1u64 << (i % 64));
        self.len -= 1;
        true
    }

    /// Ascending iteration over the members.
    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.bits.iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            core::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros();
                rest &= rest - 1;
                Some(Elem((w * 64) as u32 + b))
            })
        })
    }

    pub fn to_vec(&self) -> Vec<Elem> {
        self.iter().collect()
    }

    pub fn min(&self) -> Option<Elem> {
        self.iter().next()
    }

    pub(crate) fn same_group(&self, other: &GSet) -> Result<()> {
        if self.group == other.group {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    fn zip_bits(&self, other: &GSet, op: impl Fn(u64, u64) -> u64) -> Result<GSet> {
        self.same_group(other)?;
        let bits: Vec<u64> = self.bits.iter().zip(&other.bits).map(|(&a, &b)| op(a, b)).collect();
        let len = bits.iter().map(|w| w.count_ones() as usize).sum();
        Ok(GSet {
            group: self.group.clone(),
            bits,
            len,
        })
    }

    pub fn union(&self, other: &GSet) -> Result<GSet> {
        self.zip_bits(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &GSet) -> Result<GSet> {
        self.zip_bits(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &GSet) -> Result<GSet> {
        self.zip_bits(other, |a, b| a & !b)
    }

    /// Whether `self` and `other` share an element (no allocation).
    pub fn intersects(&self, other: &GSet) -> bool {
        self.bits.iter().zip(&other.bits).any(|(a, b)| a & b != 0)
    }

    pub fn is_subset(&self, other: &GSet) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn complement(&self) -> GSet {
        GSet::full(&self.group).difference(self).expect("same group")
    }

    /// `A + x`.
    pub fn translate(&self, x: Elem) -> GSet {
        let mut out = GSet::empty(&self.group);
        for a in self.iter() {
            out.insert(self.group.add(a, x));
        }
        out
    }

    /// `-A`.
    pub fn negate(&self) -> GSet {
        let mut out = GSet::empty(&self.group);
        for a in self.iter() {
            out.insert(self.group.neg(a));
        }
        out
    }

    /// `{k a : a in A}`; in a cyclic group this is the dilate `k . A`.
    pub fn dilate(&self, k: i64) -> GSet {
        let mut out = GSet::empty(&self.group);
        for a in self.iter() {
            out.insert(self.group.scale(k, a));
        }
        out
    }
}
