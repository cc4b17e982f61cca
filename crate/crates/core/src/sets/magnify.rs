use alloc::vec;
use alloc::vec::Vec;

use super::{GSet, Rational, TupleSet};
use crate::limits::MAGNIFICATION_CAP;
use crate::{Elem, Error, Result};

/// A minimizing pair for the magnification ratio.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Magnification {
    pub ratio: Rational,
    pub witness: GSet,
}

/// `R_B[A] = min |B + Z| / |Z|` over nonempty `Z ⊆ A`.
pub fn magnification_ratio(b: &GSet, a: &GSet) -> Result<Magnification> {
    b.same_group(a)?;
    let g = a.group();
    let images: Vec<Vec<u32>> = a
        .iter()
        .map(|z| b.iter().map(|x| g.add(x, z).0).collect())
        .collect();
    minimize(a, images, g.order())
}

/// `R_B[A] = min |B + Delta(Z)| / |Z|` for `B ⊆ G^k`.
pub fn magnification_ratio_tuples(b: &TupleSet, a: &GSet) -> Result<Magnification> {
    if b.group() != a.group() {
        return Err(Error::GroupMismatch);
    }
    check_size(a)?;
    let g = a.group();
    let p = b.packer();
    let mut t = Vec::with_capacity(b.arity());
    let mut keys: Vec<Vec<u128>> = Vec::with_capacity(a.len());
    for z in a.iter() {
        let mut row = Vec::with_capacity(b.len());
        for key in b.keys() {
            p.unpack_into(key, &mut t);
            for x in t.iter_mut() {
                *x = g.add(*x, z);
            }
            row.push(p.pack(&t));
        }
        keys.push(row);
    }
    // Relabel the shifted tuples densely so the counting array stays small.
    let mut all: Vec<u128> = keys.iter().flatten().copied().collect();
    all.sort_unstable();
    all.dedup();
    let images = keys
        .iter()
        .map(|row| {
            row.iter()
                .map(|k| all.binary_search(k).expect("present") as u32)
                .collect()
        })
        .collect();
    minimize(a, images, all.len())
}

fn check_size(a: &GSet) -> Result<()> {
    if a.is_empty() {
        return Err(Error::EmptySet("magnified set"));
    }
    crate::limits::check(
        "magnification brute force |A|",
        a.len() as u128,
        MAGNIFICATION_CAP as u128,
    )
}

struct Search<'a> {
    images: &'a [Vec<u32>],
    counts: Vec<u16>,
    covered: usize,
    chosen: Vec<usize>,
    best: Option<(usize, usize, Vec<usize>)>,
}

impl Search<'_> {
    fn offer(&mut self) {
        let (s, z) = (self.covered, self.chosen.len());
        let better = match &self.best {
            None => true,
            Some((bs, bz, bx)) => {
                let (lhs, rhs) = (s * bz, bs * z);
                lhs < rhs || (lhs == rhs && (z < *bz || (z == *bz && self.chosen < *bx)))
            }
        };
        if better {
            self.best = Some((s, z, self.chosen.clone()));
        }
    }

    fn run(&mut self, i: usize) {
        if i == self.images.len() {
            if !self.chosen.is_empty() {
                self.offer();
            }
            return;
        }
        for &c in &self.images[i] {
            let slot = &mut self.counts[c as usize];
            self.covered += (*slot == 0) as usize;
            *slot += 1;
        }
        self.chosen.push(i);
        self.run(i + 1);
        self.chosen.pop();
        for &c in &self.images[i] {
            let slot = &mut self.counts[c as usize];
            *slot -= 1;
            self.covered -= (*slot == 0) as usize;
        }
        self.run(i + 1);
    }
}

fn minimize(a: &GSet, images: Vec<Vec<u32>>, universe: usize) -> Result<Magnification> {
    check_size(a)?;
    let elems: Vec<Elem> = a.to_vec();
    let mut s = Search {
        images: &images,
        counts: vec![0; universe],
        covered: 0,
        chosen: Vec::with_capacity(elems.len()),
        best: None,
    };
    s.run(0);
    let (num, den, idx) = s.best.expect("A is nonempty");
    Ok(Magnification {
        ratio: Rational::new(num as i128, den as i128)?,
        witness: GSet::from_elems(a.group(), idx.into_iter().map(|i| elems[i]))?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::sumset;
    use crate::GroupSpec;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn set(g: &GroupSpec, e: &[u64]) -> GSet {
        GSet::from_indices(g, e.iter().copied()).unwrap()
    }

    // Enumerates subsets by bitmask.
    fn oracle(b: &GSet, a: &GSet) -> Rational {
        let el = a.to_vec();
        let mut best: Option<Rational> = None;
        for mask in 1u32..(1 << el.len()) {
            let z = GSet::from_elems(
                a.group(),
                (0..el.len()).filter(|i| mask >> i & 1 == 1).map(|i| el[i]),
            )
            .unwrap();
            let r = Rational::new(sumset(b, &z).unwrap().len() as i128, z.len() as i128).unwrap();
            if best.map_or(true, |x| r < x) {
                best = Some(r);
            }
        }
        best.unwrap()
    }

    #[test]
    fn examples() {
        let g = GroupSpec::cyclic(16).unwrap();
        let a = set(&g, &[0, 1]);
        let m = magnification_ratio(&a, &a).unwrap();
        assert_eq!(m.ratio, Rational::new(3, 2).unwrap());
        assert_eq!(m.witness, a);

        let a = set(&g, &[2, 5, 9]);
        let m = magnification_ratio(&set(&g, &[0]), &a).unwrap();
        assert_eq!(m.ratio, Rational::integer(1));
        assert_eq!(m.witness, set(&g, &[2]));

        let m = magnification_ratio(&GSet::full(&g), &a).unwrap();
        assert_eq!(m.ratio, Rational::new(16, 3).unwrap());
        assert_eq!(m.witness, a);

        assert!(magnification_ratio(&a, &GSet::empty(&g)).is_err());
    }

    #[test]
    fn tuple_version_reduces_to_sets() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let g = GroupSpec::cyclic(rng.gen_range(5..20)).unwrap();
            let a = GSet::from_elems(&g, g.elements().filter(|_| rng.gen_bool(0.4))).unwrap();
            let b = GSet::from_elems(&g, g.elements().filter(|_| rng.gen_bool(0.3))).unwrap();
            if a.is_empty() || a.len() > 10 {
                continue;
            }
            let direct = magnification_ratio(&b, &a).unwrap();
            assert_eq!(direct.ratio, oracle(&b, &a));
            let tuples = magnification_ratio_tuples(&TupleSet::from_set(&b), &a).unwrap();
            assert_eq!(direct, tuples);
        }
    }

    #[test]
    fn cap() {
        let g = GroupSpec::cyclic(64).unwrap();
        let a = GSet::from_indices(&g, 0..21).unwrap();
        assert!(matches!(
            magnification_ratio(&a, &a),
            Err(Error::CapExceeded { .. })
        ));
    }
}
