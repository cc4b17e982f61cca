use alloc::vec::Vec;

use super::tuple::Packer;
use super::{GSet, Sign, TupleSet};
use crate::error::mul;
use crate::limits::{check, TUPLE_CAP};
use crate::{Elem, Error, GroupSpec, Result};

fn common_group<'a>(sets: &'a [GSet], b: &GSet) -> Result<&'a GroupSpec> {
    let first = sets.first().ok_or(Error::InvalidArgument("need at least one set"))?;
    for s in sets {
        s.same_group(b)?;
    }
    Ok(first.group())
}

fn image_cap(sets: &[GSet], b: &GSet) -> Result<()> {
    let n = sets
        .iter()
        .try_fold(b.len() as u128, |acc, s| mul(acc, s.len() as u128))?;
    check("higher sumset image size", n, TUPLE_CAP)
}

/// `A_1 x ... x A_k ± Delta(B)` as the image of `(a_1, .., a_k, b) -> (a_i ± b)`.
fn shifted_product(sets: &[GSet], b: &GSet, sign: Sign) -> Result<TupleSet> {
    let g = common_group(sets, b)?;
    image_cap(sets, b)?;
    let k = sets.len();
    let mut out = TupleSet::empty(g, k)?;
    let p = Packer::new(g, k)?;
    let lists: Vec<Vec<Elem>> = sets.iter().map(GSet::to_vec).collect();
    let mut cur = Vec::with_capacity(k);
    for z in b.iter() {
        rec(g, &lists, z, sign, &p, &mut cur, &mut out);
    }
    Ok(out)
}

fn rec(
    g: &GroupSpec,
    lists: &[Vec<Elem>],
    z: Elem,
    sign: Sign,
    p: &Packer,
    cur: &mut Vec<Elem>,
    out: &mut TupleSet,
) {
    if cur.len() == lists.len() {
        out.insert_key(p.pack(cur));
        return;
    }
    for &a in &lists[cur.len()] {
        cur.push(match sign {
            Sign::Plus => g.add(a, z),
            Sign::Minus => g.sub(a, z),
        });
        rec(g, lists, z, sign, p, cur, out);
        cur.pop();
    }
}

/// `A_1 x ... x A_k - Delta(B)`, the set of `(a_1 - b, ..., a_k - b)`.
pub fn higher_diff(sets: &[GSet], b: &GSet) -> Result<TupleSet> {
    shifted_product(sets, b, Sign::Minus)
}

/// `A_1 x ... x A_k + Delta(B)`.
pub fn higher_sum(sets: &[GSet], b: &GSet) -> Result<TupleSet> {
    shifted_product(sets, b, Sign::Plus)
}

/// `A_1 x ... x A_k - Delta(B)` as the set of `x` with
/// `B ∩ (A_1 - x_1) ∩ ... ∩ (A_k - x_k)` nonempty, searched over `prod (A_i - B)`.
pub fn higher_diff_characterized(sets: &[GSet], b: &GSet) -> Result<TupleSet> {
    let g = common_group(sets, b)?;
    let k = sets.len();
    let cands: Vec<Vec<Elem>> = sets
        .iter()
        .map(|s| super::diffset(s, b).map(|d| d.to_vec()))
        .collect::<Result<_>>()?;
    let visits = cands
        .iter()
        .try_fold(1u128, |acc, c| mul(acc, c.len() as u128))?;
    check("candidate tuples", visits, TUPLE_CAP)?;
    let mut out = TupleSet::empty(g, k)?;
    let p = Packer::new(g, k)?;
    let mut cur = Vec::with_capacity(k);
    fn dfs(
        sets: &[GSet],
        cands: &[Vec<Elem>],
        alive: &GSet,
        p: &Packer,
        cur: &mut Vec<Elem>,
        out: &mut TupleSet,
    ) {
        let i = cur.len();
        if i == sets.len() {
            out.insert_key(p.pack(cur));
            return;
        }
        let g = alive.group();
        for &x in &cands[i] {
            let next = alive
                .intersection(&sets[i].translate(g.neg(x)))
                .expect("same group");
            if next.is_empty() {
                continue;
            }
            cur.push(x);
            dfs(sets, cands, &next, p, cur, out);
            cur.pop();
        }
    }
    if !b.is_empty() {
        dfs(sets, &cands, b, &p, &mut cur, &mut out);
    }
    Ok(out)
}

/// `A_1 x ... x A_k - Delta(B)` split after the first `m` factors: every head
/// `(x_1..x_m)` is extended by the tail set built over the shrunken base
/// `B ∩ (A_1 - x_1) ∩ ... ∩ (A_m - x_m)`.
pub fn higher_diff_recursive(sets: &[GSet], b: &GSet, m: usize) -> Result<TupleSet> {
    let g = common_group(sets, b)?;
    let k = sets.len();
    if m == 0 || m > k {
        return Err(Error::InvalidArgument("split point must lie in 1..=k"));
    }
    let head = higher_diff(&sets[..m], b)?;
    if m == k {
        return Ok(head);
    }
    let mut out = TupleSet::empty(g, k)?;
    let shift = (g.order() as u128).pow(m as u32);
    let hp = head.packer();
    let mut t = Vec::with_capacity(m);
    for key in head.keys() {
        hp.unpack_into(key, &mut t);
        let mut base = b.clone();
        for (s, &x) in sets.iter().zip(&t) {
            base = base.intersection(&s.translate(g.neg(x)))?;
        }
        let tail = higher_diff(&sets[m..], &base)?;
        for w in tail.keys() {
            out.insert_key(key + w * shift);
        }
    }
    Ok(out)
}

/// `Y ± Delta(Z) = {y ± (z, ..., z)}`.
pub fn tuple_shift(y: &TupleSet, z: &GSet, sign: Sign) -> Result<TupleSet> {
    if y.group() != z.group() {
        return Err(Error::GroupMismatch);
    }
    check(
        "tuple shift image size",
        mul(y.len() as u128, z.len() as u128)?,
        TUPLE_CAP,
    )?;
    let g = y.group();
    let p = y.packer();
    let mut out = TupleSet::empty(g, y.arity())?;
    let mut t = Vec::with_capacity(y.arity());
    let mut s = Vec::with_capacity(y.arity());
    for key in y.keys() {
        p.unpack_into(key, &mut t);
        for c in z.iter() {
            s.clear();
            s.extend(t.iter().map(|&x| match sign {
                Sign::Plus => g.add(x, c),
                Sign::Minus => g.sub(x, c),
            }));
            out.insert_key(p.pack(&s));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::diffset;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn set(g: &GroupSpec, e: &[u64]) -> GSet {
        GSet::from_indices(g, e.iter().copied()).unwrap()
    }

    fn random_set(g: &GroupSpec, rng: &mut ChaCha8Rng, density: f64) -> GSet {
        GSet::from_elems(g, g.elements().filter(|_| rng.gen_bool(density))).unwrap()
    }

    #[test]
    fn small_examples() {
        let g = GroupSpec::cyclic(5).unwrap();
        let a = set(&g, &[0, 1]);
        let one = higher_diff(&[a.clone()], &a).unwrap();
        assert_eq!(one.to_gset().unwrap(), {
            let d = diffset(&a, &a).unwrap();
            GSet::from_indices(&g, d.iter().map(|x| x.0 as u64)).unwrap()
        });
        assert_eq!(higher_diff(&[a.clone(), a.clone()], &a).unwrap().len(), 7);
        let e = GSet::empty(&g);
        assert!(higher_diff(&[a.clone(), a.clone()], &e).unwrap().is_empty());
        assert!(higher_diff_characterized(&[a.clone()], &e).unwrap().is_empty());
    }

    #[test]
    fn shift_examples() {
        let g = GroupSpec::cyclic(5).unwrap();
        let y = TupleSet::from_tuples(&g, 2, [[Elem(0), Elem(1)]]).unwrap();
        let z = set(&g, &[0, 1]);
        let got: Vec<_> = tuple_shift(&y, &z, Sign::Minus).unwrap().iter().collect();
        assert_eq!(got.len(), 2);
        assert!(got.contains(&alloc::vec![Elem(0), Elem(1)]));
        assert!(got.contains(&alloc::vec![Elem(4), Elem(0)]));
        assert_eq!(tuple_shift(&y, &set(&g, &[0]), Sign::Plus).unwrap(), y);
        let a = set(&g, &[1, 3]);
        let d = TupleSet::diagonal(&a, 3).unwrap();
        let expect = TupleSet::diagonal(&diffset(&a, &z).unwrap(), 3).unwrap();
        assert_eq!(tuple_shift(&d, &z, Sign::Minus).unwrap(), expect);
    }

    #[test]
    fn three_constructions_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [6u64, 9, 12] {
            let g = GroupSpec::cyclic(n).unwrap();
            for _ in 0..10 {
                let k = rng.gen_range(1..=3);
                let sets: Vec<GSet> = (0..k).map(|_| random_set(&g, &mut rng, 0.4)).collect();
                let b = random_set(&g, &mut rng, 0.4);
                let direct = higher_diff(&sets, &b).unwrap();
                assert_eq!(direct, higher_diff_characterized(&sets, &b).unwrap());
                for m in 1..=k {
                    assert_eq!(direct, higher_diff_recursive(&sets, &b, m).unwrap());
                }
            }
        }
    }
}
