// Library results against naive enumeration over small cyclic groups.

use std::collections::{BTreeMap, BTreeSet};

use het_core::energy::{energy2, energy_kl, sigma_k, t_k};
use het_core::harmonic::{dft, gen_convolution, inverse_dft};
use het_core::sets::{diffset, higher_diff, restricted, sumset};
use het_core::{DenseFn, Elem, GSet, GroupSpec, C64};
use proptest::prelude::*;

fn set_in(n: u64, xs: &BTreeSet<u64>) -> GSet {
    let g = GroupSpec::cyclic(n).unwrap();
    GSet::from_indices(&g, xs.iter().copied()).unwrap()
}

fn elems(a: &GSet) -> Vec<u64> {
    a.iter().map(|x| x.0 as u64).collect()
}

fn instance(max_n: u64, max_len: usize) -> impl Strategy<Value = (u64, BTreeSet<u64>, BTreeSet<u64>)> {
    (2..=max_n).prop_flat_map(move |n| {
        let s = proptest::collection::btree_set(0..n, 1..=max_len.min(n as usize));
        (Just(n), s.clone(), s)
    })
}

fn corr(n: u64, a: &BTreeSet<u64>) -> Vec<i128> {
    (0..n).map(|s| a.iter().filter(|&&x| a.contains(&((x + s) % n))).count() as i128).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sumset_and_diffset((n, a, b) in instance(24, 8)) {
        let (sa, sb) = (set_in(n, &a), set_in(n, &b));
        let plus: BTreeSet<u64> = a.iter().flat_map(|x| b.iter().map(move |y| (x + y) % n)).collect();
        let minus: BTreeSet<u64> = a.iter().flat_map(|x| b.iter().map(move |y| (x + n - y) % n)).collect();
        prop_assert_eq!(elems(&sumset(&sa, &sb).unwrap()), plus.into_iter().collect::<Vec<_>>());
        prop_assert_eq!(elems(&diffset(&sa, &sb).unwrap()), minus.into_iter().collect::<Vec<_>>());
    }

    #[test]
    fn additive_energy((n, a, b) in instance(24, 8)) {
        let mut c = 0i128;
        for x in &a { for y in &b { for z in &a { for w in &b {
            if (x + y) % n == (z + w) % n { c += 1; }
        }}}}
        prop_assert_eq!(energy2(&set_in(n, &a), &set_in(n, &b)).unwrap(), c);
    }

    #[test]
    fn higher_energies((n, a, _b) in instance(16, 6)) {
        let sa = set_in(n, &a);
        let r = corr(n, &a);
        for l in 1..=4u32 {
            prop_assert_eq!(energy_kl(&sa, 2, l as usize).unwrap(), r.iter().map(|v| v.pow(l)).sum::<i128>());
        }
        // E_{3,2}: count of (z, z', x1, x2) with z, z', z+xi, z'+xi all in A
        let mut c = 0i128;
        for x1 in 0..n { for x2 in 0..n {
            let k = a.iter().filter(|&&z| a.contains(&((z + x1) % n)) && a.contains(&((z + x2) % n))).count() as i128;
            c += k * k;
        }}
        prop_assert_eq!(energy_kl(&sa, 3, 2).unwrap(), c);
    }

    #[test]
    fn additive_tuples((n, a, _b) in instance(12, 5)) {
        let sa = set_in(n, &a);
        // T_2: quadruples with a1 + a2 = a3 + a4 is E; sigma_2 = (A * A)(0)
        let r2: Vec<i128> = (0..n).map(|s| a.iter().filter(|&&x| a.contains(&((s + n - x) % n))).count() as i128).collect();
        prop_assert_eq!(t_k(&sa, 2).unwrap(), r2.iter().map(|v| v * v).sum::<i128>());
        prop_assert_eq!(sigma_k(&sa, 2).unwrap(), r2[0]);
    }

    #[test]
    fn restricted_sets((n, a, _b) in instance(24, 10), s in 0u64..24) {
        let s = s % n;
        let want: Vec<u64> = a.iter().copied().filter(|&x| a.contains(&((x + s) % n))).collect();
        let got = restricted(&set_in(n, &a), Elem(s as u32)).unwrap();
        prop_assert_eq!(elems(&got), want);
    }

    #[test]
    fn higher_difference_set((n, a, b) in instance(12, 5)) {
        let (sa, sb) = (set_in(n, &a), set_in(n, &b));
        let mut want = BTreeSet::new();
        for x in &a { for y in &a { for z in &b {
            want.insert(((x + n - z) % n, (y + n - z) % n));
        }}}
        let got: BTreeSet<(u64, u64)> = higher_diff(&[sa.clone(), sa], &sb).unwrap()
            .iter().map(|t| (t[0].0 as u64, t[1].0 as u64)).collect();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn three_fold_convolution((n, a, _b) in instance(10, 5)) {
        let ind = DenseFn::indicator(&set_in(n, &a));
        let t = gen_convolution(&[ind.clone(), ind.clone(), ind]).unwrap();
        let mut want = BTreeMap::new();
        for x1 in 0..n { for x2 in 0..n {
            let c = a.iter().filter(|&&z| a.contains(&((z + x1) % n)) && a.contains(&((z + x2) % n))).count() as i128;
            if c > 0 { want.insert((x1, x2), c); }
        }}
        let got: BTreeMap<(u64, u64), i128> = t.entries().map(|(k, v)| ((k[0].0 as u64, k[1].0 as u64), v)).collect();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn fourier_transform(raw in proptest::collection::vec((-50.0f64..50.0, -50.0f64..50.0), 2..40)) {
        let n = raw.len() as u64;
        let g = GroupSpec::cyclic(n).unwrap();
        let vals: Vec<C64> = raw.iter().map(|&(re, im)| C64::new(re, im)).collect();
        let f = DenseFn::from_complex(&g, vals.clone()).unwrap();
        let fh = dft(&f).unwrap().to_complex();
        for xi in 0..n {
            // f^(xi) = sum_x f(x) e(-x xi / N)
            let want: C64 = (0..n).map(|x| vals[x as usize] * C64::from_polar(1.0, -std::f64::consts::TAU * ((x * xi) % n) as f64 / n as f64)).sum();
            prop_assert!((fh[xi as usize] - want).norm() <= 1e-9 * (1.0 + want.norm()));
        }
        let back = inverse_dft(&dft(&f).unwrap()).unwrap();
        prop_assert!(back.max_abs_diff(&f).unwrap() < 1e-9);
    }
}
