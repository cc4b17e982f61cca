use alloc::vec::Vec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::GSet;
use crate::harmonic::DenseFn;
use crate::{Elem, Error, Result, C64};

/// Output of [`cs_almost_periods`].
#[derive(Clone, Debug, PartialEq)]
pub struct AlmostPeriods {
    /// The base point `a`; the periods are `A'_s - a`.
    pub a: Elem,
    pub periods: GSet,
    /// Every returned period passed the direct norm check.
    pub all_valid: bool,
    /// `eps ||f||_p |A|^{1/p}`.
    pub bound: f64,
    /// Largest `||(f*A)(. + t) - f*A||_p` over the returned periods.
    pub max_deviation: f64,
    /// Samples drawn before one landed in the good set.
    pub attempts: usize,
}

/// `(sum_x |f(x)|^p)^{1/p}`.
pub fn lp_norm(f: &DenseFn, p: f64) -> f64 {
    norm(&f.to_complex(), p)
}

fn norm(v: &[C64], p: f64) -> f64 {
    let s: f64 = v.iter().map(|z| libm::pow(z.norm(), p)).sum();
    libm::pow(s, 1.0 / p)
}

/// `||F(. + t) - F||_p`.
pub fn shift_deviation(f: &DenseFn, t: Elem, p: f64) -> f64 {
    let g = f.group();
    let v = f.to_complex();
    let d: Vec<C64> = g
        .elements()
        .map(|x| v[g.add(x, t).index()] - v[x.index()])
        .collect();
    norm(&d, p)
}

/// Almost periods of `f * A` by random sampling: draw `x in A^k` and
/// `a in A` until `x` is good, where good means
/// `||(|A|/k) sum_j f(. - x_j) - f * A||_p <= bound / 2`, put `s = x - Delta(a)`,
/// collect `A'_s = {a' in A : s + Delta(a') good}` and return `A'_s - a`.
/// Every period is then checked against `bound` by direct evaluation.
pub fn cs_almost_periods(
    a: &GSet,
    f: &DenseFn,
    p: u32,
    eps: f64,
    k_samples: usize,
    trials: usize,
    seed: u64,
) -> Result<AlmostPeriods> {
    if a.is_empty() {
        return Err(Error::EmptySet("almost-period base set"));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidArgument("eps must lie in (0, 1)"));
    }
    if p == 0 || k_samples == 0 || trials == 0 {
        return Err(Error::InvalidArgument("p, k and trials must be positive"));
    }
    if f.group() != a.group() {
        return Err(Error::GroupMismatch);
    }
    let g = a.group();
    let pf = p as f64;
    let conv = f.convolve(&DenseFn::indicator(a))?;
    let target = conv.to_complex();
    let bound = eps * lp_norm(f, pf) * libm::pow(a.len() as f64, 1.0 / pf);
    let fv = f.to_complex();
    let elems = a.to_vec();
    let scale = a.len() as f64 / k_samples as f64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // distance of (|A|/k) sum_j f(. - s_j - shift) from f * A
    let distance = |avg: &[C64], shift: Elem| {
        let d: Vec<C64> = g
            .elements()
            .map(|y| avg[g.sub(y, shift).index()] - target[y.index()])
            .collect();
        norm(&d, pf)
    };

    for attempt in 1..=trials {
        let a0 = elems[rng.gen_range(0..elems.len())];
        let s: Vec<Elem> = (0..k_samples)
            .map(|_| g.sub(elems[rng.gen_range(0..elems.len())], a0))
            .collect();
        let mut avg = alloc::vec![C64::new(0.0, 0.0); g.order()];
        for &sj in &s {
            for y in g.elements() {
                avg[y.index()] += fv[g.sub(y, sj).index()] * scale;
            }
        }
        if distance(&avg, a0) > bound / 2.0 {
            continue;
        }
        let mut shifts: Vec<Elem> = s.clone();
        shifts.sort_unstable();
        shifts.dedup();
        let mut good = GSet::empty(g);
        for &cand in &elems {
            let inside = shifts.iter().all(|&sj| a.contains(g.add(cand, sj)));
            if inside && distance(&avg, cand) <= bound / 2.0 {
                good.insert(cand);
            }
        }
        let periods = good.translate(g.neg(a0));
        let max_deviation = periods
            .iter()
            .map(|t| shift_deviation(&conv, t, pf))
            .fold(0.0, f64::max);
        return Ok(AlmostPeriods {
            a: a0,
            all_valid: max_deviation <= bound * (1.0 + 1e-12) + 1e-12,
            periods,
            bound,
            max_deviation,
            attempts: attempt,
        });
    }
    Err(Error::NoAlmostPeriods { trials })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::GroupSpec;

    #[test]
    fn zero_shift_and_subgroup() {
        let g = GroupSpec::cyclic(12).unwrap();
        let h = GSet::from_indices(&g, [0, 3, 6, 9]).unwrap();
        let f = DenseFn::indicator(&h);
        let conv = f.convolve(&f).unwrap();
        assert_eq!(shift_deviation(&conv, Elem(0), 2.0), 0.0);
        for t in h.iter() {
            assert_eq!(shift_deviation(&conv, t, 2.0), 0.0);
        }
        assert!(shift_deviation(&conv, Elem(1), 2.0) > 0.0);
    }

    #[test]
    fn random_instance_is_valid() {
        let g = GroupSpec::cyclic(64).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut a = GSet::empty(&g);
        while a.len() < 16 {
            a.insert(Elem(rng.gen_range(0..64)));
        }
        let f = DenseFn::from_ints(&g, (0..64).map(|_| rng.gen_range(0..2)).collect()).unwrap();
        let k = 4 * 16 * 4 * 2;
        let out = cs_almost_periods(&a, &f, 2, 0.5, k, 50, 17).unwrap();
        assert!(out.all_valid);
        assert!(out.periods.contains(Elem(0)));
    }

    #[test]
    fn argument_errors() {
        let g = GroupSpec::cyclic(8).unwrap();
        let f = DenseFn::zeros(&g);
        let a = GSet::full(&g);
        assert!(cs_almost_periods(&GSet::empty(&g), &f, 2, 0.5, 4, 4, 0).is_err());
        assert!(cs_almost_periods(&a, &f, 2, 1.5, 4, 4, 0).is_err());
        assert!(cs_almost_periods(&a, &f, 0, 0.5, 4, 4, 0).is_err());
    }
}
