use het_core::group::Character;
use het_core::{Elem, GroupSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SHAPES: &[&[u64]] = &[&[64], &[4, 8], &[2, 3, 5], &[6, 6], &[7, 2, 2, 3]];

#[test]
fn pack_unpack_is_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for shape in SHAPES {
        let g = GroupSpec::new(shape).unwrap();
        for _ in 0..10_000 / SHAPES.len() {
            let x = Elem(rng.gen_range(0..g.order() as u32));
            let coords: Vec<i64> = g.unpack(x).iter().map(|&c| c as i64).collect();
            assert_eq!(g.pack(&coords).unwrap(), x);
        }
    }
}

#[test]
fn characters_are_multiplicative() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for shape in SHAPES {
        let g = GroupSpec::new(shape).unwrap();
        let n = g.order() as u32;
        for _ in 0..500 {
            let (xi, x, y) = (Elem(rng.gen_range(0..n)), Elem(rng.gen_range(0..n)), Elem(rng.gen_range(0..n)));
            let chi = Character { xi };
            let lhs = g.char_eval(chi, g.add(x, y)).unwrap();
            let rhs = g.char_eval(chi, x).unwrap() * g.char_eval(chi, y).unwrap();
            assert!((lhs - rhs).norm() < 1e-12);
        }
    }
}

#[test]
fn characters_are_orthogonal() {
    for shape in SHAPES {
        let g = GroupSpec::new(shape).unwrap();
        let n = g.order() as f64;
        for xi in g.elements() {
            let s: het_core::C64 = g.elements().map(|x| g.char_eval(Character { xi }, x).unwrap()).sum();
            let want = if xi == g.zero() { n } else { 0.0 };
            assert!((s.re - want).abs() < 1e-9 * n && s.im.abs() < 1e-9 * n, "{shape:?} xi={xi:?}");
        }
    }
}

#[test]
fn addition_matches_coordinates() {
    let g = GroupSpec::new(&[2, 3, 5]).unwrap();
    for x in g.elements() {
        for y in g.elements() {
            let (cx, cy) = (g.unpack(x), g.unpack(y));
            let sum: Vec<i64> = cx.iter().zip(&cy).map(|(a, b)| (a + b) as i64).collect();
            assert_eq!(g.add(x, y), g.pack(&sum).unwrap());
            assert_eq!(g.add(g.sub(x, y), y), x);
        }
    }
}

#[test]
fn bad_factors_and_caps_are_rejected() {
    assert!(GroupSpec::new(&[]).is_err());
    assert!(GroupSpec::new(&[0]).is_err());
    assert!(GroupSpec::with_cap(&[64], 32).is_err());
    assert!(GroupSpec::cyclic(1).is_err());
    assert!(GroupSpec::cyclic(2).is_ok());
}
