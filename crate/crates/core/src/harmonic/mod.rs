//! Functions on the group, convolutions, generalized convolutions and the
//! discrete Fourier transform.

mod dft;
mod tensor;

pub use dft::{dft, inverse_dft};
pub use tensor::{gen_convolution, gen_convolution_complex, SparseTensor};

use alloc::vec;
use alloc::vec::Vec;

use crate::sets::GSet;
use crate::{Elem, Error, GroupSpec, Result, C64};

/// Values of a [`DenseFn`]: exact integers when possible, complex otherwise.
#[derive(Clone, Debug, PartialEq)]
pub enum Values {
    Int(Vec<i128>),
    Complex(Vec<C64>),
}

/// A function `G -> C` stored densely, with an exact integer path.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseFn {
    group: GroupSpec,
    values: Values,
}

fn checked(r: Option<i128>) -> Result<i128> {
    r.ok_or(Error::Overflow)
}

impl DenseFn {
    pub fn zeros(group: &GroupSpec) -> Self {
        DenseFn {
            group: group.clone(),
            values: Values::Int(vec![0; group.order()]),
        }
    }

    pub fn from_ints(group: &GroupSpec, values: Vec<i128>) -> Result<Self> {
        if values.len() != group.order() {
            return Err(Error::InvalidArgument("value count must equal the group order"));
        }
        Ok(DenseFn {
            group: group.clone(),
            values: Values::Int(values),
        })
    }

    pub fn from_complex(group: &GroupSpec, values: Vec<C64>) -> Result<Self> {
        if values.len() != group.order() {
            return Err(Error::InvalidArgument("value count must equal the group order"));
        }
        Ok(DenseFn {
            group: group.clone(),
            values: Values::Complex(values),
        })
    }

    /// Complex input that happens to be integral is stored on the integer path.
    pub fn from_complex_exact(group: &GroupSpec, values: Vec<C64>) -> Result<Self> {
        let integral = values
            .iter()
            .all(|v| v.im == 0.0 && libm::trunc(v.re) == v.re && libm::fabs(v.re) < 1e30);
        if integral {
            Self::from_ints(group, values.iter().map(|v| v.re as i128).collect())
        } else {
            Self::from_complex(group, values)
        }
    }

    /// The characteristic function of `A`.
    pub fn indicator(a: &GSet) -> Self {
        let mut v = vec![0i128; a.group().order()];
        for x in a.iter() {
            v[x.index()] = 1;
        }
        DenseFn {
            group: a.group().clone(),
            values: Values::Int(v),
        }
    }

    /// The point mass at `x`.
    pub fn delta(group: &GroupSpec, x: Elem) -> Result<Self> {
        Ok(Self::indicator(&GSet::singleton(group, x)?))
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn values(&self) -> &Values {
        &self.values
    }

    pub fn is_int(&self) -> bool {
        matches!(self.values, Values::Int(_))
    }

    pub fn ints(&self) -> Option<&[i128]> {
        match &self.values {
            Values::Int(v) => Some(v),
            Values::Complex(_) => None,
        }
    }

    pub fn at(&self, x: Elem) -> C64 {
        match &self.values {
            Values::Int(v) => C64::new(v[x.index()] as f64, 0.0),
            Values::Complex(v) => v[x.index()],
        }
    }

    pub fn to_complex(&self) -> Vec<C64> {
        match &self.values {
            Values::Int(v) => v.iter().map(|&a| C64::new(a as f64, 0.0)).collect(),
            Values::Complex(v) => v.clone(),
        }
    }

    /// Elements where the function does not vanish, ascending.
    pub fn support(&self) -> Vec<Elem> {
        let n = self.group.order();
        (0..n)
            .filter(|&i| match &self.values {
                Values::Int(v) => v[i] != 0,
                Values::Complex(v) => v[i] != C64::new(0.0, 0.0),
            })
            .map(|i| Elem(i as u32))
            .collect()
    }

    fn same_group(&self, other: &DenseFn) -> Result<()> {
        if self.group == other.group {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    fn map_c(&self, f: impl Fn(C64) -> C64) -> DenseFn {
        DenseFn {
            group: self.group.clone(),
            values: Values::Complex(self.to_complex().into_iter().map(f).collect()),
        }
    }

    pub fn conj(&self) -> DenseFn {
        match &self.values {
            Values::Int(_) => self.clone(),
            Values::Complex(_) => self.map_c(|z| z.conj()),
        }
    }

    /// `f^c(x) = f(-x)`.
    pub fn reflect(&self) -> DenseFn {
        let g = &self.group;
        let perm = |i: usize| g.neg(Elem(i as u32)).index();
        let values = match &self.values {
            Values::Int(v) => Values::Int((0..v.len()).map(|i| v[perm(i)]).collect()),
            Values::Complex(v) => Values::Complex((0..v.len()).map(|i| v[perm(i)]).collect()),
        };
        DenseFn {
            group: g.clone(),
            values,
        }
    }

    /// `x -> f(x + t)`.
    pub fn shift(&self, t: Elem) -> DenseFn {
        let g = &self.group;
        let src = |i: usize| g.add(Elem(i as u32), t).index();
        let values = match &self.values {
            Values::Int(v) => Values::Int((0..v.len()).map(|i| v[src(i)]).collect()),
            Values::Complex(v) => Values::Complex((0..v.len()).map(|i| v[src(i)]).collect()),
        };
        DenseFn {
            group: g.clone(),
            values,
        }
    }

    /// Pointwise `|f|^2`.
    pub fn abs_sq(&self) -> Result<DenseFn> {
        match &self.values {
            Values::Int(v) => Ok(DenseFn {
                group: self.group.clone(),
                values: Values::Int(
                    v.iter().map(|&a| checked(a.checked_mul(a))).collect::<Result<_>>()?,
                ),
            }),
            Values::Complex(_) => Ok(self.map_c(|z| C64::new(z.norm_sqr(), 0.0))),
        }
    }

    fn zip(
        &self,
        other: &DenseFn,
        int: impl Fn(i128, i128) -> Option<i128>,
        cx: impl Fn(C64, C64) -> C64,
    ) -> Result<DenseFn> {
        self.same_group(other)?;
        let values = match (&self.values, &other.values) {
            (Values::Int(a), Values::Int(b)) => Values::Int(
                a.iter()
                    .zip(b)
                    .map(|(&x, &y)| checked(int(x, y)))
                    .collect::<Result<_>>()?,
            ),
            _ => Values::Complex(
                self.to_complex()
                    .into_iter()
                    .zip(other.to_complex())
                    .map(|(x, y)| cx(x, y))
                    .collect(),
            ),
        };
        Ok(DenseFn {
            group: self.group.clone(),
            values,
        })
    }

    pub fn add(&self, other: &DenseFn) -> Result<DenseFn> {
        self.zip(other, i128::checked_add, |a, b| a + b)
    }

    pub fn sub(&self, other: &DenseFn) -> Result<DenseFn> {
        self.zip(other, i128::checked_sub, |a, b| a - b)
    }

    /// Pointwise product.
    pub fn mul(&self, other: &DenseFn) -> Result<DenseFn> {
        self.zip(other, i128::checked_mul, |a, b| a * b)
    }

    pub fn scale(&self, c: C64) -> DenseFn {
        self.map_c(|z| z * c)
    }

    pub fn sum(&self) -> C64 {
        self.to_complex().into_iter().sum()
    }

    /// Exact sum on the integer path.
    pub fn int_sum(&self) -> Result<Option<i128>> {
        match &self.values {
            Values::Int(v) => v
                .iter()
                .try_fold(0i128, |acc, &a| checked(acc.checked_add(a)))
                .map(Some),
            Values::Complex(_) => Ok(None),
        }
    }

    /// `max_x |f(x) - g(x)|`.
    pub fn max_abs_diff(&self, other: &DenseFn) -> Result<f64> {
        self.same_group(other)?;
        Ok(self
            .to_complex()
            .into_iter()
            .zip(other.to_complex())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// `(f * g)(x) = sum_y f(y) g(x - y)`.
    pub fn convolve(&self, other: &DenseFn) -> Result<DenseFn> {
        self.pair_sum(other, |g, y, z| g.add(y, z))
    }

    /// `(f ∘ g)(x) = sum_y f(y) g(y + x)`.
    pub fn correlate(&self, other: &DenseFn) -> Result<DenseFn> {
        self.pair_sum(other, |g, y, z| g.sub(z, y))
    }

    // out[target(y, z)] += f(y) g(z) over both supports.
    fn pair_sum(
        &self,
        other: &DenseFn,
        target: impl Fn(&GroupSpec, Elem, Elem) -> Elem,
    ) -> Result<DenseFn> {
        self.same_group(other)?;
        let g = &self.group;
        let (sf, sg) = (self.support(), other.support());
        let values = match (&self.values, &other.values) {
            (Values::Int(a), Values::Int(b)) => {
                let mut out = vec![0i128; g.order()];
                for &y in &sf {
                    for &z in &sg {
                        let t = target(g, y, z).index();
                        let p = checked(a[y.index()].checked_mul(b[z.index()]))?;
                        out[t] = checked(out[t].checked_add(p))?;
                    }
                }
                Values::Int(out)
            }
            _ => {
                let (a, b) = (self.to_complex(), other.to_complex());
                let mut out = vec![C64::new(0.0, 0.0); g.order()];
                for &y in &sf {
                    for &z in &sg {
                        out[target(g, y, z).index()] += a[y.index()] * b[z.index()];
                    }
                }
                Values::Complex(out)
            }
        };
        Ok(DenseFn {
            group: g.clone(),
            values,
        })
    }

    /// `f *_k`: `f` for `k = 1`, else `f * (f *_{k-1})`.
    pub fn kfold_convolve(&self, k: usize) -> Result<DenseFn> {
        if k == 0 {
            return Err(Error::InvalidArgument("k-fold convolution needs k >= 1"));
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = self.convolve(&acc)?;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn a01() -> DenseFn {
        let g = GroupSpec::cyclic(5).unwrap();
        DenseFn::indicator(&GSet::from_indices(&g, [0, 1]).unwrap())
    }

    #[test]
    fn convolution_examples() {
        let a = a01();
        assert_eq!(a.correlate(&a).unwrap().ints().unwrap(), &[2, 1, 0, 0, 1]);
        assert_eq!(a.convolve(&a).unwrap().ints().unwrap(), &[1, 2, 1, 0, 0]);
        assert_eq!(a.kfold_convolve(2).unwrap(), a.convolve(&a).unwrap());
        assert_eq!(a.kfold_convolve(1).unwrap(), a);
        assert!(a.kfold_convolve(0).is_err());
        let d = DenseFn::delta(a.group(), Elem(0)).unwrap();
        assert_eq!(d.convolve(&a).unwrap(), a);
        let g = GroupSpec::cyclic(6).unwrap();
        let full = DenseFn::indicator(&GSet::full(&g));
        assert_eq!(full.kfold_convolve(2).unwrap().ints().unwrap(), &[6; 6]);
    }

    // Direct double loop over the whole group.
    fn naive(f: &[C64], h: &[C64], g: &GroupSpec, corr: bool) -> Vec<C64> {
        g.elements()
            .map(|x| {
                g.elements()
                    .map(|y| {
                        let z = if corr { g.add(y, x) } else { g.sub(x, y) };
                        f[y.index()] * h[z.index()]
                    })
                    .sum()
            })
            .collect()
    }

    #[test]
    fn complex_paths_match_naive() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let g = GroupSpec::new(&[3, 4]).unwrap();
        let rnd = |rng: &mut ChaCha8Rng| {
            (0..12)
                .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect::<Vec<_>>()
        };
        let (fv, hv) = (rnd(&mut rng), rnd(&mut rng));
        let f = DenseFn::from_complex(&g, fv.clone()).unwrap();
        let h = DenseFn::from_complex(&g, hv.clone()).unwrap();
        for (corr, got) in [(false, f.convolve(&h)), (true, f.correlate(&h))] {
            let want = DenseFn::from_complex(&g, naive(&fv, &hv, &g, corr)).unwrap();
            assert!(got.unwrap().max_abs_diff(&want).unwrap() < 1e-12);
        }
        // (f ∘ g)(x) = (g ∘ f)(-x) and f * g = g * f
        let fg = f.correlate(&h).unwrap();
        let gf = h.correlate(&f).unwrap().reflect();
        assert!(fg.max_abs_diff(&gf).unwrap() < 1e-12);
        let c1 = f.convolve(&h).unwrap();
        assert!(c1.max_abs_diff(&h.convolve(&f).unwrap()).unwrap() < 1e-12);
    }

    #[test]
    fn integer_overflow_is_reported() {
        let g = GroupSpec::cyclic(3).unwrap();
        let big = DenseFn::from_ints(&g, vec![i128::MAX / 2, 3, 0]).unwrap();
        assert_eq!(big.convolve(&big), Err(Error::Overflow));
    }
}
