use alloc::vec::Vec;

use super::{GSet, Sign};
use crate::error::pow;
use crate::limits::{check, ITERATION_CAP};
use crate::{Elem, Error, GroupSpec, Result};

/// Whether `B - B x ... x B - Delta(B)` (`k` factors) is all of `G^k`,
/// i.e. every `B ∩ (B - x_1) ∩ ... ∩ (B - x_k)` is nonempty.
pub fn basis_depth_check(b: &GSet, k: usize) -> Result<bool> {
    depth_check(b, k, Sign::Minus)
}

/// Whether `B^k + Delta(B) = G^k`, i.e. every `B ∩ (x_1 - B) ∩ ... ∩ (x_k - B)`
/// is nonempty.
pub fn sum_basis_depth_check(b: &GSet, k: usize) -> Result<bool> {
    depth_check(b, k, Sign::Plus)
}

fn depth_check(b: &GSet, k: usize, sign: Sign) -> Result<bool> {
    if k == 0 {
        return Err(Error::InvalidArgument("depth must be at least 1"));
    }
    let g = b.group();
    let n = g.order();
    check("G^k enumeration", pow(n as u128, k as u32)?, ITERATION_CAP)?;
    if b.is_empty() {
        return Ok(false);
    }
    // Intersections are symmetric in the x_i, so nondecreasing tuples suffice.
    let base = match sign {
        Sign::Minus => b.clone(),
        Sign::Plus => b.negate(),
    };
    let shift = |x: Elem| match sign {
        Sign::Minus => base.translate(g.neg(x)),
        Sign::Plus => base.translate(x),
    };
    let table: Option<Vec<GSet>> = if (n as u128) * (n as u128) <= 1 << 28 && k > 1 {
        Some(g.elements().map(shift).collect())
    } else {
        None
    };
    fn dfs(
        g: &GroupSpec,
        alive: &GSet,
        from: usize,
        depth: usize,
        get: &dyn Fn(Elem) -> GSet,
        table: &Option<Vec<GSet>>,
    ) -> bool {
        if depth == 0 {
            return true;
        }
        for i in from..g.order() {
            let x = Elem(i as u32);
            let next = match table {
                Some(t) => alive.intersection(&t[i]),
                None => alive.intersection(&get(x)),
            }
            .expect("same group");
            if next.is_empty() || !dfs(g, &next, i, depth - 1, get, table) {
                return false;
            }
        }
        true
    }
    Ok(dfs(g, b, 0, k, &shift, &table))
}

/// A set `X` with `A + X = G`, built greedily: each step adds the translate
/// covering the most uncovered elements, smallest `x` on ties.
pub fn greedy_cover(a: &GSet) -> Result<GSet> {
    if a.is_empty() {
        return Err(Error::EmptySet("covered set"));
    }
    let g = a.group();
    let n = g.order();
    let elems = a.to_vec();
    let mut covered = GSet::empty(g);
    let mut x_set = GSet::empty(g);
    while covered.len() < n {
        let mut best = (0usize, Elem::ZERO);
        for x in g.elements() {
            let gain = elems
                .iter()
                .filter(|&&e| !covered.contains(g.add(e, x)))
                .count();
            if gain > best.0 {
                best = (gain, x);
            }
        }
        let x = best.1;
        x_set.insert(x);
        for &e in &elems {
            covered.insert(g.add(e, x));
        }
    }
    Ok(x_set)
}

/// `ceil((N / |A|) ln N) + 1`, the size guarantee for [`greedy_cover`].
pub fn greedy_cover_bound(a: &GSet) -> Result<usize> {
    if a.is_empty() {
        return Err(Error::EmptySet("covered set"));
    }
    let n = a.group().order() as f64;
    Ok(libm::ceil(n / a.len() as f64 * libm::log(n)) as usize + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::sumset;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn set(n: u64, e: &[u64]) -> GSet {
        GSet::from_indices(&GroupSpec::cyclic(n).unwrap(), e.iter().copied()).unwrap()
    }

    // Exhaustive oracle: B^k - Delta(B) (resp. +) compared with G^k.
    fn oracle(b: &GSet, k: usize, sign: Sign) -> bool {
        let sets: Vec<GSet> = (0..k).map(|_| b.clone()).collect();
        let t = match sign {
            Sign::Minus => crate::sets::higher_diff(&sets, b),
            Sign::Plus => crate::sets::higher_sum(&sets, b),
        }
        .unwrap();
        let n = b.group().order();
        t.len() == n.pow(k as u32)
    }

    #[test]
    fn depth_examples() {
        assert!(basis_depth_check(&set(7, &[1, 2, 4]), 1).unwrap());
        assert!(!basis_depth_check(&set(7, &[0]), 1).unwrap());
        assert!(!basis_depth_check(&set(5, &[1, 4]), 1).unwrap());
        let big = set(12, &[0, 1, 2, 3, 4, 5, 6, 7, 8]);
        assert!(basis_depth_check(&big, 2).unwrap());
        assert!(basis_depth_check(&set(6, &[0]), 0).is_err());
    }

    #[test]
    fn matches_tuple_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..40 {
            let n = rng.gen_range(4..12u64);
            let g = GroupSpec::cyclic(n).unwrap();
            let b = GSet::from_elems(&g, g.elements().filter(|_| rng.gen_bool(0.7))).unwrap();
            let k = rng.gen_range(1..=3);
            assert_eq!(basis_depth_check(&b, k).unwrap(), oracle(&b, k, Sign::Minus));
            assert_eq!(sum_basis_depth_check(&b, k).unwrap(), oracle(&b, k, Sign::Plus));
        }
    }

    #[test]
    fn cover_examples() {
        let a = set(8, &[0, 1, 2, 3]);
        let x = greedy_cover(&a).unwrap();
        assert_eq!(x, set(8, &[0, 4]));
        assert_eq!(greedy_cover_bound(&a).unwrap(), 6);

        let full = GSet::full(&GroupSpec::cyclic(9).unwrap());
        assert_eq!(greedy_cover(&full).unwrap(), set(9, &[0]));

        let r = set(7, &[1, 2, 4]);
        let x = greedy_cover(&r).unwrap();
        assert_eq!(sumset(&r, &x).unwrap().len(), 7);
        assert_eq!(greedy_cover_bound(&r).unwrap(), 6);
        assert!(x.len() <= 6);
        assert!(greedy_cover(&GSet::empty(&GroupSpec::cyclic(4).unwrap())).is_err());
    }
}
