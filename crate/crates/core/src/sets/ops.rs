use super::GSet;
use crate::{Elem, Error, Result};

/// `A + B`.
pub fn sumset(a: &GSet, b: &GSet) -> Result<GSet> {
    a.same_group(b)?;
    let g = a.group();
    let mut out = GSet::empty(g);
    for x in a.iter() {
        for y in b.iter() {
            out.insert(g.add(x, y));
        }
    }
    Ok(out)
}

/// `A - B`.
pub fn diffset(a: &GSet, b: &GSet) -> Result<GSet> {
    a.same_group(b)?;
    let g = a.group();
    let mut out = GSet::empty(g);
    for x in a.iter() {
        for y in b.iter() {
            out.insert(g.sub(x, y));
        }
    }
    Ok(out)
}

/// `nA - mA`.
pub fn iterated(n: usize, m: usize, a: &GSet) -> Result<GSet> {
    if n + m == 0 {
        return Err(Error::InvalidArgument("iterated sumset needs n + m >= 1"));
    }
    let mut acc = GSet::singleton(a.group(), Elem::ZERO)?;
    for _ in 0..n {
        acc = sumset(&acc, a)?;
    }
    for _ in 0..m {
        acc = diffset(&acc, a)?;
    }
    Ok(acc)
}

/// `A_s = A ∩ (A - s)`.
pub fn restricted(a: &GSet, s: Elem) -> Result<GSet> {
    restricted_vec(a, &[s])
}

/// `A_{s_1..s_k} = A ∩ (A - s_1) ∩ ... ∩ (A - s_k)`.
pub fn restricted_vec(a: &GSet, shifts: &[Elem]) -> Result<GSet> {
    let g = a.group();
    if !shifts.iter().all(|&s| g.contains(s)) {
        return Err(Error::GroupMismatch);
    }
    let mut out = GSet::empty(g);
    for x in a.iter() {
        if shifts.iter().all(|&s| a.contains(g.add(x, s))) {
            out.insert(x);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::GroupSpec;

    fn set(n: u64, e: &[u64]) -> GSet {
        GSet::from_indices(&GroupSpec::cyclic(n).unwrap(), e.iter().copied()).unwrap()
    }

    fn elems(s: &GSet) -> alloc::vec::Vec<u32> {
        s.iter().map(|e| e.0).collect()
    }

    #[test]
    fn sumset_examples() {
        let a = set(5, &[0, 1]);
        assert_eq!(elems(&sumset(&a, &a).unwrap()), [0, 1, 2]);
        assert_eq!(elems(&diffset(&a, &a).unwrap()), [0, 1, 4]);
        assert_eq!(sumset(&a, &set(5, &[0])).unwrap(), a);
        assert_eq!(sumset(&a, &set(6, &[0])), Err(Error::GroupMismatch));
    }

    #[test]
    fn iterated_examples() {
        let a = set(8, &[0, 1]);
        assert_eq!(elems(&iterated(2, 0, &a).unwrap()), [0, 1, 2]);
        assert_eq!(elems(&iterated(1, 1, &a).unwrap()), [0, 1, 7]);
        assert_eq!(iterated(0, 1, &a).unwrap(), a.negate());
        assert_eq!(iterated(1, 0, &a).unwrap(), a);
        assert!(iterated(0, 0, &a).is_err());
    }

    #[test]
    fn restricted_examples() {
        let a = set(5, &[0, 1]);
        assert_eq!(restricted(&a, Elem(0)).unwrap(), a);
        assert_eq!(elems(&restricted(&a, Elem(1)).unwrap()), [0]);
        let b = set(7, &[0, 1, 2]);
        assert_eq!(elems(&restricted_vec(&b, &[Elem(1), Elem(1)]).unwrap()), [0, 1]);
        assert_eq!(restricted(&a, Elem(9)), Err(Error::GroupMismatch));
    }
}
