//! Reproducible instances for `het gen`.

use het_core::constructions::{convex_set, heilbronn_subgroup, mult_subgroup, quadratic_residues, ConvexKind};
use het_core::{Error, GSet};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::format::{group_from, SetJson};
use crate::witness::random_set;

#[derive(Clone, Debug, PartialEq)]
pub enum InstanceKind {
    /// `m` elements of `Z/n`, uniform without replacement.
    RandomSet { n: u64, m: usize },
    Subgroup { p: u64, t: u64 },
    Residues { p: u64 },
    Convex { kind: ConvexKind, n: usize },
    Heilbronn { p: u64 },
}

pub fn gen_instance(kind: &InstanceKind, seed: u64) -> Result<SetJson, Error> {
    let set: GSet = match *kind {
        InstanceKind::RandomSet { n, m } => {
            let g = group_from(&[n])?;
            if m > g.order() {
                return Err(Error::InvalidArgument("set size exceeds the group order"));
            }
            random_set(&g, m, &mut ChaCha8Rng::seed_from_u64(seed))?
        }
        InstanceKind::Subgroup { p, t } => mult_subgroup(p, t)?.set().clone(),
        InstanceKind::Residues { p } => quadratic_residues(p)?,
        InstanceKind::Convex { kind, n } => convex_set(kind, n, seed)?.set(),
        InstanceKind::Heilbronn { p } => heilbronn_subgroup(p)?,
    };
    Ok(SetJson::from_set(&set))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn documented_instances() {
        let a = gen_instance(&InstanceKind::RandomSet { n: 64, m: 8 }, 5).unwrap();
        assert_eq!(a, gen_instance(&InstanceKind::RandomSet { n: 64, m: 8 }, 5).unwrap());
        assert_eq!(a.set.len(), 8);
        assert_eq!(gen_instance(&InstanceKind::Subgroup { p: 13, t: 4 }, 0).unwrap().set, vec![1, 5, 8, 12]);
        let c = gen_instance(&InstanceKind::Convex { kind: ConvexKind::Squares, n: 5 }, 0).unwrap();
        assert_eq!(c.set, vec![1, 4, 9, 16, 25]);
        assert_eq!(c.group, vec![100]);
        assert!(gen_instance(&InstanceKind::RandomSet { n: 4, m: 5 }, 0).is_err());
    }
}
