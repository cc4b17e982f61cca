//! The energy hierarchy: `E(A,B)`, `E^x`, `E_{k,l}`, `E_alpha`, `T_k`, `sigma_k`.
//!
//! Every counting quantity is computed on the exact integer path; Fourier
//! evaluations are cross-checks only.

use alloc::collections::BTreeMap;
use core::fmt;

use crate::constructions::PrimeField;
use crate::error::{mul, pow};
use crate::harmonic::{dft, gen_convolution, DenseFn};
use crate::limits::{check, TUPLE_CAP};
use crate::sets::{GSet, TupleSet};
use crate::{Elem, Error, Result, C64};

/// Which energy a value is.
#[derive(Copy, Clone, Debug, PartialEq)]
pub enum EnergyKind {
    /// `E(A) = E(A, A)`.
    E2,
    /// `E(A, B)` for two sets.
    Mixed,
    /// Multiplicative energy in `Z/p`.
    Mult,
    Ekl(usize, usize),
    Ealpha(f64),
    Tk(usize),
    SigmaK(usize),
}

impl fmt::Display for EnergyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnergyKind::E2 => f.write_str("E2"),
            EnergyKind::Mixed => f.write_str("mixed"),
            EnergyKind::Mult => f.write_str("mult"),
            EnergyKind::Ekl(k, l) => write!(f, "Ekl({k},{l})"),
            EnergyKind::Ealpha(a) => write!(f, "Ealpha({a})"),
            EnergyKind::Tk(k) => write!(f, "Tk({k})"),
            EnergyKind::SigmaK(k) => write!(f, "sigmak({k})"),
        }
    }
}

/// An exact count, or a real number for non-integer exponents.
#[derive(Copy, Clone, Debug, PartialEq)]
pub enum Number {
    Exact(i128),
    Real(f64),
}

impl Number {
    pub fn to_f64(self) -> f64 {
        match self {
            Number::Exact(n) => n as f64,
            Number::Real(x) => x,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct EnergyValue {
    pub kind: EnergyKind,
    pub value: Number,
}

/// Compensated summation.
pub fn kahan_sum<I: IntoIterator<Item = f64>>(it: I) -> f64 {
    let (mut sum, mut c) = (0.0f64, 0.0f64);
    for x in it {
        let y = x - c;
        let t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    sum
}

fn int_square_sum(f: &DenseFn) -> Result<i128> {
    let v = f.ints().expect("integer path");
    v.iter().try_fold(0i128, |acc, &x| {
        x.checked_mul(x)
            .and_then(|s| acc.checked_add(s))
            .ok_or(Error::Overflow)
    })
}

/// `E(A, B) = #{a1 + b1 = a2 + b2} = sum_x (A ∘ B)(x)^2`.
pub fn energy2(a: &GSet, b: &GSet) -> Result<i128> {
    a.same_group(b)?;
    int_square_sum(&DenseFn::indicator(a).correlate(&DenseFn::indicator(b))?)
}

/// `E^x(A, B) = #{a1 b1 = a2 b2}` in the prime field `Z/p`.
pub fn mult_energy(a: &GSet, b: &GSet, field: &PrimeField) -> Result<i128> {
    a.same_group(b)?;
    if a.group().modulus() != Some(field.p()) {
        return Err(Error::NotPrimeField);
    }
    let p = field.p();
    let mut r = alloc::vec![0i128; p as usize];
    for x in a.iter() {
        for y in b.iter() {
            r[(x.0 as u64 * y.0 as u64 % p) as usize] += 1;
        }
    }
    Ok(r.iter().map(|&c| c * c).sum())
}

/// `E_{k,l}(A) = sum C_k(A)^l`, built from the tensor of the smaller index
/// (the two orders give the same value). `E_{k,1} = |A|^k`, `E_{1,l} = |A|^l`.
pub fn energy_kl(a: &GSet, k: usize, l: usize) -> Result<i128> {
    if k == 0 || l == 0 {
        return Err(Error::InvalidArgument("energy indices must be at least 1"));
    }
    let (lo, hi) = (k.min(l), k.max(l));
    let n = a.len() as u128;
    if lo == 1 {
        return pow(n, hi as u32).map(|v| v as i128);
    }
    if a.is_empty() {
        return Ok(0);
    }
    let f = DenseFn::indicator(a);
    let fs: alloc::vec::Vec<DenseFn> = (0..lo).map(|_| f.clone()).collect();
    gen_convolution(&fs)?.power_sum(hi as u32)
}

/// `E_alpha(A) = sum_x (A ∘ A)(x)^alpha`, Kahan-summed.
pub fn energy_alpha(a: &GSet, alpha: f64) -> Result<f64> {
    if !(alpha > 0.0) {
        return Err(Error::InvalidArgument("alpha must be positive"));
    }
    let r = DenseFn::indicator(a).correlate(&DenseFn::indicator(a))?;
    let v = r.ints().expect("integer path");
    if libm::trunc(alpha) == alpha && alpha <= 8.0 {
        let e = alpha as u32;
        let exact = v
            .iter()
            .try_fold(0i128, |acc, &x| {
                x.checked_pow(e).and_then(|t| acc.checked_add(t))
            })
            .ok_or(Error::Overflow)?;
        return Ok(exact as f64);
    }
    Ok(kahan_sum(
        v.iter().filter(|&&x| x > 0).map(|&x| libm::pow(x as f64, alpha)),
    ))
}

/// `T_k(A)` by `sum_x (A *_k)(x)^2`; the Fourier moment is computed as well and
/// must agree to `1e-6` relative.
pub fn t_k(a: &GSet, k: usize) -> Result<i128> {
    let exact = t_k_combinatorial(a, k)?;
    let fourier = t_k_fourier(a, k)?;
    let scale = (exact as f64).abs().max(1.0);
    if (fourier - exact as f64).abs() > 1e-6 * scale {
        return Err(Error::PathDisagreement {
            combinatorial: exact as f64,
            fourier,
        });
    }
    Ok(exact)
}

pub fn t_k_combinatorial(a: &GSet, k: usize) -> Result<i128> {
    int_square_sum(&DenseFn::indicator(a).kfold_convolve(k)?)
}

/// `N^{-1} sum_xi |A^(xi)|^{2k}`.
pub fn t_k_fourier(a: &GSet, k: usize) -> Result<f64> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1"));
    }
    let hat = dft(&DenseFn::indicator(a))?;
    let n = a.group().order() as f64;
    Ok(kahan_sum(hat.to_complex().iter().map(|z| libm::pow(z.norm_sqr(), k as f64))) / n)
}

/// `sigma_k(A) = (A *_k)(0) = #{a_1 + ... + a_k = 0}`.
pub fn sigma_k(a: &GSet, k: usize) -> Result<i128> {
    let r = DenseFn::indicator(a).kfold_convolve(k)?;
    Ok(r.ints().expect("integer path")[0])
}

/// `E(X, Y) = #{x1 + y1 = x2 + y2}` for `X, Y ⊆ G^k`.
pub fn tuple_energy(x: &TupleSet, y: &TupleSet) -> Result<i128> {
    if x.group() != y.group() || x.arity() != y.arity() {
        return Err(Error::GroupMismatch);
    }
    check("tuple energy pairs", mul(x.len() as u128, y.len() as u128)?, TUPLE_CAP)?;
    let g = x.group();
    let p = x.packer();
    let mut counts: BTreeMap<u128, i128> = BTreeMap::new();
    let (mut s, mut t, mut d) = (alloc::vec![], alloc::vec![], alloc::vec::Vec::<Elem>::new());
    for kx in x.keys() {
        p.unpack_into(kx, &mut s);
        for ky in y.keys() {
            p.unpack_into(ky, &mut t);
            d.clear();
            d.extend(s.iter().zip(&t).map(|(&u, &v)| g.sub(v, u)));
            *counts.entry(p.pack(&d)).or_insert(0) += 1;
        }
    }
    Ok(counts.values().map(|&c| c * c).sum())
}

/// `E(f, g) = sum_x (f ∘ f)(x) (g ∘ g)(x)`.
pub fn energy_fn(f: &DenseFn, g: &DenseFn) -> Result<C64> {
    let prod = f.correlate(f)?.mul(&g.correlate(g)?)?;
    Ok(match prod.int_sum()? {
        Some(n) => C64::new(n as f64, 0.0),
        None => prod.sum(),
    })
}

/// Evaluates one energy of a single set.
pub fn energy_of(a: &GSet, kind: EnergyKind) -> Result<EnergyValue> {
    let value = match kind {
        EnergyKind::E2 => Number::Exact(energy2(a, a)?),
        EnergyKind::Ekl(k, l) => Number::Exact(energy_kl(a, k, l)?),
        EnergyKind::Ealpha(al) => {
            let v = energy_alpha(a, al)?;
            if libm::trunc(al) == al && al <= 8.0 {
                Number::Exact(v as i128)
            } else {
                Number::Real(v)
            }
        }
        EnergyKind::Tk(k) => Number::Exact(t_k(a, k)?),
        EnergyKind::SigmaK(k) => Number::Exact(sigma_k(a, k)?),
        EnergyKind::Mixed | EnergyKind::Mult => {
            return Err(Error::InvalidArgument("this energy needs two sets"))
        }
    };
    Ok(EnergyValue { kind, value })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::GroupSpec;
    use alloc::vec::Vec;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn set(n: u64, e: &[u64]) -> GSet {
        GSet::from_indices(&GroupSpec::cyclic(n).unwrap(), e.iter().copied()).unwrap()
    }

    // Quadruple count a1 + b1 = a2 + b2.
    fn brute_energy(a: &GSet, b: &GSet) -> i128 {
        let g = a.group();
        let mut n = 0;
        for a1 in a.iter() {
            for b1 in b.iter() {
                for a2 in a.iter() {
                    for b2 in b.iter() {
                        n += (g.add(a1, b1) == g.add(a2, b2)) as i128;
                    }
                }
            }
        }
        n
    }

    // Direct sum over (x_1..x_{k-1}) of C_k(A)^l by enumerating G^{k-1}.
    fn brute_ekl(a: &GSet, k: usize, l: u32) -> i128 {
        let g = a.group();
        let n = g.order();
        let mut total = 0i128;
        for idx in 0..n.pow(k as u32 - 1) {
            let mut xs = Vec::new();
            let mut r = idx;
            for _ in 0..k - 1 {
                xs.push(Elem((r % n) as u32));
                r /= n;
            }
            let c = a
                .iter()
                .filter(|&z| xs.iter().all(|&x| a.contains(g.add(z, x))))
                .count() as i128;
            total += c.pow(l);
        }
        total
    }

    #[test]
    fn golden_energies() {
        let a = set(64, &[0, 1, 2]);
        assert_eq!(energy2(&a, &a).unwrap(), 19);
        assert_eq!(energy2(&set(5, &[0, 1]), &set(5, &[0, 1])).unwrap(), 6);
        let h = set(12, &[0, 3, 6, 9]);
        assert_eq!(energy2(&h, &h).unwrap(), 64);
        for n in 1..=20u64 {
            let ap = GSet::from_indices(&GroupSpec::cyclic(4 * n).unwrap(), 0..n).unwrap();
            let want = (2 * n * n * n + n) / 3;
            assert_eq!(energy2(&ap, &ap).unwrap(), want as i128);
            assert_eq!(brute_energy(&ap, &ap), want as i128);
        }
    }

    #[test]
    fn ekl_examples() {
        let a = set(5, &[0, 1]);
        assert_eq!(energy_kl(&a, 2, 2).unwrap(), 6);
        assert_eq!(energy_kl(&a, 3, 2).unwrap(), 10);
        assert_eq!(energy_kl(&a, 2, 3).unwrap(), 10);
        assert_eq!(energy_kl(&a, 3, 1).unwrap(), 8);
        assert_eq!(energy_kl(&a, 1, 4).unwrap(), 16);
        assert!(energy_kl(&a, 0, 2).is_err());
    }

    #[test]
    fn ekl_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..20 {
            let g = GroupSpec::cyclic(rng.gen_range(5..11)).unwrap();
            let a = GSet::from_elems(&g, g.elements().filter(|_| rng.gen_bool(0.5))).unwrap();
            for k in 1..=3 {
                for l in 1..=3u32 {
                    assert_eq!(energy_kl(&a, k, l as usize).unwrap(), brute_ekl(&a, k, l));
                }
            }
        }
    }

    #[test]
    fn alpha_examples() {
        let a = set(5, &[0, 1]);
        assert_eq!(energy_alpha(&a, 2.0).unwrap(), 6.0);
        assert_eq!(energy_alpha(&a, 1.0).unwrap(), 4.0);
        let v = energy_alpha(&a, 1.5).unwrap();
        assert!((v - (libm::pow(2.0, 1.5) + 2.0)).abs() < 1e-12);
        assert!(energy_alpha(&a, 0.0).is_err());
    }

    #[test]
    fn tk_and_sigma_examples() {
        let a = set(5, &[0, 1]);
        assert_eq!(t_k(&a, 1).unwrap(), 2);
        assert_eq!(t_k(&a, 2).unwrap(), 6);
        let g = GroupSpec::cyclic(6).unwrap();
        let full = GSet::full(&g);
        assert_eq!(t_k(&full, 3).unwrap(), 6i128.pow(5));
        assert_eq!(sigma_k(&a, 1).unwrap(), 1);
        assert_eq!(sigma_k(&set(5, &[1, 2]), 1).unwrap(), 0);
        assert_eq!(sigma_k(&set(5, &[0, 1, 4]), 2).unwrap(), 3);
        let sym = set(9, &[1, 8, 3, 6]);
        assert_eq!(sigma_k(&sym, 2).unwrap(), 4);
    }

    #[test]
    fn tuple_energy_is_higher_energy() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..10 {
            let g = GroupSpec::cyclic(rng.gen_range(5..12)).unwrap();
            let a = GSet::from_elems(&g, g.elements().filter(|_| rng.gen_bool(0.5))).unwrap();
            let d = TupleSet::diagonal(&a, 2).unwrap();
            let sq = TupleSet::product(&[a.clone(), a.clone()]).unwrap();
            assert_eq!(tuple_energy(&d, &sq).unwrap(), energy_kl(&a, 2, 3).unwrap());
        }
    }

    #[test]
    fn mult_energy_small() {
        let f = PrimeField::new(7).unwrap();
        let a = set(7, &[1, 2, 4]);
        // a subgroup of the units: every product a1 b1 has 3 representations
        assert_eq!(mult_energy(&a, &a, &f).unwrap(), 27);
        let b = set(8, &[1]);
        assert!(mult_energy(&b, &b, &f).is_err());
    }
}
