use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::DenseFn;
use crate::error::mul;
use crate::limits::{check, TENSOR_CAP};
use crate::sets::tuple::Packer;
use crate::sets::TupleSet;
use crate::{Elem, Error, GroupSpec, Result, C64};

/// A function on `G^m` stored sparsely; zero entries are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseTensor<V = i128> {
    group: GroupSpec,
    arity: usize,
    entries: BTreeMap<u128, V>,
}

/// Scalars a [`SparseTensor`] can hold.
pub trait TensorValue: Copy + PartialEq + core::fmt::Debug {
    fn zero() -> Self;
    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }
    fn checked_add(self, other: Self) -> Result<Self>;
    fn checked_mul(self, other: Self) -> Result<Self>;
    fn to_c64(self) -> C64;
}

impl TensorValue for i128 {
    fn zero() -> Self {
        0
    }
    fn checked_add(self, other: Self) -> Result<Self> {
        i128::checked_add(self, other).ok_or(Error::Overflow)
    }
    fn checked_mul(self, other: Self) -> Result<Self> {
        i128::checked_mul(self, other).ok_or(Error::Overflow)
    }
    fn to_c64(self) -> C64 {
        C64::new(self as f64, 0.0)
    }
}

impl TensorValue for C64 {
    fn zero() -> Self {
        C64::new(0.0, 0.0)
    }
    fn checked_add(self, other: Self) -> Result<Self> {
        Ok(self + other)
    }
    fn checked_mul(self, other: Self) -> Result<Self> {
        Ok(self * other)
    }
    fn to_c64(self) -> C64 {
        self
    }
}

impl<V: TensorValue> SparseTensor<V> {
    pub fn new(group: &GroupSpec, arity: usize) -> Result<Self> {
        Packer::new(group, arity)?;
        Ok(SparseTensor {
            group: group.clone(),
            arity,
            entries: BTreeMap::new(),
        })
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Number of nonzero entries.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn packer(&self) -> Packer {
        Packer::new(&self.group, self.arity).expect("validated at construction")
    }

    pub fn get(&self, t: &[Elem]) -> V {
        if t.len() != self.arity {
            return V::zero();
        }
        self.entries
            .get(&self.packer().pack(t))
            .copied()
            .unwrap_or(V::zero())
    }

    pub fn get_key(&self, key: u128) -> V {
        self.entries.get(&key).copied().unwrap_or(V::zero())
    }

    pub fn set(&mut self, t: &[Elem], v: V) {
        let key = self.packer().pack(t);
        self.set_key(key, v);
    }

    pub(crate) fn set_key(&mut self, key: u128, v: V) {
        if v.is_zero() {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, v);
        }
    }

    pub(crate) fn add_key(&mut self, key: u128, v: V) -> Result<()> {
        let cur = self.get_key(key);
        self.set_key(key, cur.checked_add(v)?);
        Ok(())
    }

    /// Nonzero entries in ascending packed order.
    pub fn entries(&self) -> impl Iterator<Item = (Vec<Elem>, V)> + '_ {
        let p = self.packer();
        self.entries.iter().map(move |(&k, &v)| (p.unpack(k), v))
    }

    pub fn values(&self) -> impl Iterator<Item = V> + '_ {
        self.entries.values().copied()
    }

    /// Nonzero entries keyed by packed index in `group.power(arity)`.
    pub fn entries_raw(&self) -> impl Iterator<Item = (u128, V)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn support(&self) -> TupleSet {
        let mut out = TupleSet::empty(&self.group, self.arity).expect("validated");
        for &k in self.entries.keys() {
            out.insert_key(k);
        }
        out
    }

    /// `sum_t T(t)`.
    pub fn total(&self) -> Result<V> {
        self.values().try_fold(V::zero(), |acc, v| acc.checked_add(v))
    }

    /// `sum_t T(t)^e` for `e >= 1`.
    pub fn power_sum(&self, e: u32) -> Result<V> {
        if e == 0 {
            return Err(Error::InvalidArgument("exponent must be at least 1"));
        }
        self.values().try_fold(V::zero(), |acc, v| {
            let mut p = v;
            for _ in 1..e {
                p = p.checked_mul(v)?;
            }
            acc.checked_add(p)
        })
    }
}

impl SparseTensor<i128> {
    /// The tensor as a dense function on the group `G^m`.
    pub fn to_dense(&self) -> Result<DenseFn> {
        let big = self.group.power(self.arity)?;
        let mut v = alloc::vec![0i128; big.order()];
        for (k, x) in self.entries_raw() {
            v[k as usize] = x;
        }
        DenseFn::from_ints(&big, v)
    }

    /// Reads a dense function on `G^m` back as a tensor over `G`.
    pub fn from_dense(group: &GroupSpec, arity: usize, f: &DenseFn) -> Result<Self> {
        if *f.group() != group.power(arity)? {
            return Err(Error::GroupMismatch);
        }
        let ints = f
            .ints()
            .ok_or(Error::InvalidArgument("integer-valued function expected"))?;
        let mut t = Self::new(group, arity)?;
        for (i, &v) in ints.iter().enumerate() {
            t.set_key(i as u128, v);
        }
        Ok(t)
    }
}

impl SparseTensor<C64> {
    pub fn to_dense(&self) -> Result<DenseFn> {
        let big = self.group.power(self.arity)?;
        let mut v = alloc::vec![C64::new(0.0, 0.0); big.order()];
        for (k, x) in self.entries_raw() {
            v[k as usize] = x;
        }
        DenseFn::from_complex(&big, v)
    }
}

/// `C_{m}(f_1, ..., f_m)(x_1, ..., x_{m-1}) = sum_z f_1(z) f_2(z + x_1) ... f_m(z + x_{m-1})`
/// on the exact integer path.
pub fn gen_convolution(fs: &[DenseFn]) -> Result<SparseTensor<i128>> {
    let ints: Vec<&[i128]> = fs
        .iter()
        .map(|f| f.ints().ok_or(Error::InvalidArgument("integer-valued functions expected")))
        .collect::<Result<_>>()?;
    accumulate(fs, |i, x| ints[i][x.index()])
}

/// The complex-valued generalized convolution.
pub fn gen_convolution_complex(fs: &[DenseFn]) -> Result<SparseTensor<C64>> {
    let cx: Vec<Vec<C64>> = fs.iter().map(DenseFn::to_complex).collect();
    accumulate(fs, |i, x| cx[i][x.index()])
}

fn accumulate<V: TensorValue>(
    fs: &[DenseFn],
    value: impl Fn(usize, Elem) -> V,
) -> Result<SparseTensor<V>> {
    if fs.len() < 2 {
        return Err(Error::InvalidArgument("generalized convolution needs at least two functions"));
    }
    let g = fs[0].group().clone();
    if fs.iter().any(|f| *f.group() != g) {
        return Err(Error::GroupMismatch);
    }
    let supports: Vec<Vec<Elem>> = fs.iter().map(|f| f.support()).collect();
    let visits = supports
        .iter()
        .try_fold(1u128, |acc, s| mul(acc, s.len() as u128))?;
    check("generalized convolution loop", visits, TENSOR_CAP)?;
    let m = fs.len() - 1;
    let mut out = SparseTensor::new(&g, m)?;
    let p = Packer::new(&g, m)?;
    let mut t = Vec::with_capacity(m);
    for &z in &supports[0] {
        let w = value(0, z);
        rec(&g, &supports, &value, z, w, &p, &mut t, &mut out)?;
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn rec<V: TensorValue>(
    g: &GroupSpec,
    supports: &[Vec<Elem>],
    value: &impl Fn(usize, Elem) -> V,
    z: Elem,
    w: V,
    p: &Packer,
    t: &mut Vec<Elem>,
    out: &mut SparseTensor<V>,
) -> Result<()> {
    let i = t.len() + 1;
    if i == supports.len() {
        return out.add_key(p.pack(t), w);
    }
    for &y in &supports[i] {
        t.push(g.sub(y, z));
        rec(g, supports, value, z, w.checked_mul(value(i, y))?, p, t, out)?;
        t.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::{higher_diff, GSet};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn three_fold_example() {
        let g = GroupSpec::cyclic(5).unwrap();
        let a = GSet::from_indices(&g, [0, 1]).unwrap();
        let f = DenseFn::indicator(&a);
        let c = gen_convolution(&[f.clone(), f.clone(), f.clone()]).unwrap();
        let want = [
            ((0, 0), 2),
            ((0, 1), 1),
            ((1, 0), 1),
            ((1, 1), 1),
            ((0, 4), 1),
            ((4, 0), 1),
            ((4, 4), 1),
        ];
        assert_eq!(c.len(), want.len());
        for ((x, y), v) in want {
            assert_eq!(c.get(&[Elem(x), Elem(y)]), v);
        }
        assert_eq!(c.support(), higher_diff(&[a.clone(), a.clone()], &a).unwrap());
        let two = gen_convolution(&[f.clone(), f.clone()]).unwrap();
        assert_eq!(two.to_dense().unwrap().ints(), f.correlate(&f).unwrap().ints());
    }

    #[test]
    fn matches_direct_sum() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let g = GroupSpec::new(&[2, 3]).unwrap();
        for _ in 0..10 {
            let fs: Vec<DenseFn> = (0..3)
                .map(|_| DenseFn::from_ints(&g, (0..6).map(|_| rng.gen_range(-2..3)).collect()).unwrap())
                .collect();
            let c = gen_convolution(&fs).unwrap();
            let cc = gen_convolution_complex(&fs).unwrap();
            for x in g.elements() {
                for y in g.elements() {
                    let direct: i128 = g
                        .elements()
                        .map(|z| {
                            fs[0].ints().unwrap()[z.index()]
                                * fs[1].ints().unwrap()[g.add(z, x).index()]
                                * fs[2].ints().unwrap()[g.add(z, y).index()]
                        })
                        .sum();
                    assert_eq!(c.get(&[x, y]), direct);
                    assert_eq!(cc.get(&[x, y]), C64::new(direct as f64, 0.0));
                }
            }
        }
    }

    #[test]
    fn dense_round_trip() {
        let g = GroupSpec::cyclic(4).unwrap();
        let f = DenseFn::indicator(&GSet::from_indices(&g, [0, 1, 3]).unwrap());
        let c = gen_convolution(&[f.clone(), f.clone(), f]).unwrap();
        let back = SparseTensor::from_dense(&g, 2, &c.to_dense().unwrap()).unwrap();
        assert_eq!(back, c);
    }
}
