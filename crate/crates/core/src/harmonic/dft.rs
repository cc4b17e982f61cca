use alloc::vec;
use alloc::vec::Vec;

use super::DenseFn;
use crate::group::unit_root;
use crate::{Result, C64};

/// `f^(xi) = sum_x f(x) e(-xi . x)`, one cyclic factor at a time.
pub fn dft(f: &DenseFn) -> Result<DenseFn> {
    transform(f, true)
}

/// `f(x) = N^{-1} sum_xi f^(xi) e(xi . x)`.
pub fn inverse_dft(f: &DenseFn) -> Result<DenseFn> {
    transform(f, false)
}

fn transform(f: &DenseFn, forward: bool) -> Result<DenseFn> {
    let g = f.group();
    let mut data = f.to_complex();
    let mut scratch = vec![C64::new(0.0, 0.0); data.len()];
    let mut stride = 1usize;
    for n in g.factors() {
        let n = n as usize;
        let roots: Vec<C64> = (0..n)
            .map(|j| {
                let k = if forward { (n - j) % n } else { j };
                unit_root(k as u64, n as u64)
            })
            .collect();
        let block = stride * n;
        for base in (0..data.len()).step_by(block) {
            for off in 0..stride {
                for xi in 0..n {
                    let mut acc = C64::new(0.0, 0.0);
                    for x in 0..n {
                        acc += data[base + off + x * stride] * roots[xi * x % n];
                    }
                    scratch[base + off + xi * stride] = acc;
                }
            }
        }
        core::mem::swap(&mut data, &mut scratch);
        stride = block;
    }
    if !forward {
        let s = 1.0 / g.order() as f64;
        for v in &mut data {
            *v *= s;
        }
    }
    DenseFn::from_complex(g, data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::GSet;
    use crate::{Character, Elem, GroupSpec};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_fn(g: &GroupSpec, rng: &mut ChaCha8Rng) -> DenseFn {
        let v = (0..g.order())
            .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        DenseFn::from_complex(g, v).unwrap()
    }

    #[test]
    fn examples() {
        let g = GroupSpec::cyclic(8).unwrap();
        let full = dft(&DenseFn::indicator(&GSet::full(&g))).unwrap();
        assert!((full.at(Elem(0)) - C64::new(8.0, 0.0)).norm() < 1e-12);
        for xi in 1..8 {
            assert!(full.at(Elem(xi)).norm() < 1e-12);
        }
        let d = dft(&DenseFn::delta(&g, Elem(0)).unwrap()).unwrap();
        for xi in g.elements() {
            assert!((d.at(xi) - C64::new(1.0, 0.0)).norm() < 1e-12);
        }
        let g5 = GroupSpec::cyclic(5).unwrap();
        let a = dft(&DenseFn::indicator(&GSet::from_indices(&g5, [0, 1]).unwrap())).unwrap();
        let s: f64 = g5.elements().map(|x| a.at(x).norm_sqr().powi(2)).sum();
        assert!((s - 30.0).abs() < 1e-9);
    }

    #[test]
    fn matches_character_sum_and_inverts() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for factors in [vec![7u64], vec![2, 3], vec![4, 2, 3]] {
            let g = GroupSpec::new(&factors).unwrap();
            let f = random_fn(&g, &mut rng);
            let hat = dft(&f).unwrap();
            for xi in g.elements() {
                let direct: C64 = g
                    .elements()
                    .map(|x| f.at(x) * g.char_eval(Character { xi }, x).unwrap().conj())
                    .sum();
                assert!((direct - hat.at(xi)).norm() < 1e-10);
            }
            let back = inverse_dft(&hat).unwrap();
            assert!(back.max_abs_diff(&f).unwrap() < 1e-12);
        }
    }
}
