use het_core::energy::{energy2, energy_alpha, energy_kl, kahan_sum, sigma_k, t_k_combinatorial, t_k_fourier, tuple_energy};
use het_core::harmonic::{dft, gen_convolution};
use het_core::sets::{diffset, sumset};
use het_core::{DenseFn, Error, GSet, GroupSpec, TupleSet, C64};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{sets_in, sets_instance, Check, Pair, Relation, Suite};
use crate::witness::Witness;

type R<T> = Result<T, Error>;

fn card(a: &GSet) -> i128 {
    a.len() as i128
}

/// `A_s = A ∩ (A - s)`.
fn restrict(a: &GSet, s: u64) -> R<GSet> {
    let g = a.group();
    a.intersection(&a.translate(g.neg(g.elem(s)?)))
}

fn corr_ints(a: &GSet, b: &GSet) -> R<Vec<i128>> {
    Ok(DenseFn::indicator(a).correlate(&DenseFn::indicator(b))?.ints().expect("integer path").to_vec())
}

fn energy_cs(w: &Witness) -> R<Vec<Pair>> {
    let (a, b) = (w.set("A")?, w.set("B")?);
    let lhs = card(&a).pow(2) * card(&b).pow(2);
    let e = energy2(&a, &b)?;
    Ok(vec![
        Pair::new(lhs, e * card(&sumset(&a, &b)?)),
        Pair::new(lhs, e * card(&diffset(&a, &b)?)),
    ])
}

fn energy_trivial(w: &Witness) -> R<Vec<Pair>> {
    let (a, b) = (w.set("A")?, w.set("B")?);
    let (x, y) = (card(&a), card(&b));
    let e = energy2(&a, &b)?;
    Ok(vec![Pair::new(e, x * x * y), Pair::new(e, y * y * x), Pair::new(e * e, (x * y).pow(3))])
}

/// `sum C_k(A)^l` straight from the tensor of `C_k`; `C_1(A)` is the scalar `|A|`.
fn kl_direct(a: &GSet, k: usize, l: usize) -> R<i128> {
    if k == 1 {
        return Ok(card(a).pow(l as u32));
    }
    let f = DenseFn::indicator(a);
    gen_convolution(&vec![f; k])?.power_sum(l as u32)
}

fn kl_symmetry(w: &Witness) -> R<Vec<Pair>> {
    let a = w.set("A")?;
    let mut out = Vec::new();
    for k in 1..=3 {
        for l in k..=3 {
            out.push(Pair::new(kl_direct(&a, k, l)?, kl_direct(&a, l, k)?));
        }
    }
    out.push(Pair::new(energy_kl(&a, 2, 2)?, energy2(&a, &a)?));
    Ok(out)
}

fn ek_tuple(w: &Witness) -> R<Vec<Pair>> {
    let a = w.set("A")?;
    let rhs = tuple_energy(&TupleSet::diagonal(&a, 2)?, &TupleSet::product(&[a.clone(), a.clone()])?)?;
    Ok(vec![Pair::new(energy_kl(&a, 2, 3)?, rhs)])
}

fn restricted_energy(w: &Witness) -> R<Vec<Pair>> {
    let a = w.set("A")?;
    let n = a.group().order() as u64;
    let parts: Vec<GSet> = (0..n).map(|s| restrict(&a, s)).collect::<R<_>>()?;
    let mut e3 = 0i128;
    let mut e4 = 0i128;
    for (s, x) in parts.iter().enumerate() {
        e3 += energy2(&a, x)?;
        for y in &parts[s..] {
            let e = energy2(x, y)?;
            e4 += if std::ptr::eq(x, y) { e } else { 2 * e };
        }
    }
    Ok(vec![Pair::new(e3, energy_kl(&a, 2, 3)?), Pair::new(e4, energy_kl(&a, 2, 4)?)])
}

/// `sum_{s,t} sum_z C_2(A_s, A_t)(z)^l = E_{l,4}(A)` for `l = 1, 2, 3`.
fn gen_conv_moments(w: &Witness) -> R<Vec<Pair>> {
    let a = w.set("A")?;
    let n = a.group().order() as u64;
    let parts: Vec<GSet> = (0..n).map(|s| restrict(&a, s)).collect::<R<_>>()?;
    let mut sums = [0i128; 3];
    for x in &parts {
        for y in &parts {
            for r in corr_ints(x, y)? {
                sums[0] += r;
                sums[1] += r * r;
                sums[2] += r * r * r;
            }
        }
    }
    Ok(vec![
        Pair::new(sums[0], card(&a).pow(4)),
        Pair::new(sums[1], energy_kl(&a, 2, 4)?),
        Pair::new(sums[2], energy_kl(&a, 3, 4)?),
    ])
}

fn uncertainty(w: &Witness) -> R<Vec<Pair>> {
    let a = w.set("A")?;
    let lhs = (energy_alpha(&a, 1.5)? / a.len() as f64).powi(4);
    let rhs = energy2(&a, &a)? as f64 * t_k_combinatorial(&a, 2)? as f64;
    Ok(vec![Pair::new(lhs, rhs)])
}

fn fourier_energy(w: &Witness) -> R<Vec<Pair>> {
    let a = w.set("A")?;
    let g: &GroupSpec = a.group();
    let n = g.order() as f64;
    let k = 2;
    let hat = dft(&DenseFn::indicator(&a))?;
    let u = hat.conj().correlate(&hat)?.to_complex();
    let v = hat.correlate(&hat.conj())?.to_complex();
    let et: C64 = u.iter().zip(&v).map(|(x, y)| x.powi(k) * y.powi(k)).sum();
    let scale = kahan_sum(u.iter().zip(&v).map(|(x, y)| (x.norm() * y.norm()).powi(k)));
    let first = Pair::new(et, C64::new(n.powi(2 * k + 1) * t_k_combinatorial(&a, k as usize)? as f64, 0.0)).scaled(scale);
    // T_2 of the real function |A^|^2, by counting: sum_x ((f * f)(x))^2
    let f = hat.abs_sq()?;
    let ff = f.convolve(&f)?.to_complex();
    let t2 = kahan_sum(ff.iter().map(|z| z.norm_sqr()));
    let second = Pair::new(t2, n.powi(2 * k - 1) * energy_kl(&a, 2, 2 * k as usize)? as f64);
    Ok(vec![first, second])
}

fn tk_paths(w: &Witness) -> R<Vec<Pair>> {
    let a = w.set("A")?;
    (1..=3).map(|k| Ok(Pair::new(t_k_combinatorial(&a, k)? as f64, t_k_fourier(&a, k)?))).collect()
}

fn ek_sigma(w: &Witness) -> R<Vec<Pair>> {
    let a = w.set("A")?;
    let n = card(&a);
    let (d, s) = (diffset(&a, &a)?, sumset(&a, &a)?);
    let e2 = energy2(&a, &a)?;
    let e4 = energy_kl(&a, 2, 4)?;
    Ok(vec![
        Pair::new(n.pow(4), e2 * sigma_k(&d, 2)?),
        Pair::new(n.pow(8), e4 * t_k_combinatorial(&s, 2)?),
    ])
}

fn ek_ek(w: &Witness) -> R<Vec<Pair>> {
    let a = w.set("A")?;
    let n = card(&a);
    let (d, s) = (diffset(&a, &a)?, sumset(&a, &a)?);
    let e4 = energy_kl(&a, 2, 4)?;
    Ok(vec![Pair::new(n.pow(8), e4 * energy2(&d, &d)?), Pair::new(n.pow(8), e4 * energy2(&s, &s)?)])
}

fn energy_sanity(w: &Witness) -> R<Vec<Pair>> {
    let a = w.set("A")?;
    Ok(vec![Pair::new(card(&a).pow(2), energy2(&a, &a)?)])
}

/// Random insertion that keeps all nonzero differences distinct, then maybe
/// one extra element.
fn gen_sidon(rng: &mut ChaCha8Rng) -> R<Witness> {
    let g = crate::witness::random_cyclic(&[64, 128, 256], rng);
    let n = g.order() as u64;
    let mut a = GSet::empty(&g);
    for _ in 0..rng.gen_range(20..80) {
        let x = g.elem(rng.gen_range(0..n))?;
        let mut b = a.clone();
        b.insert(x);
        if corr_ints(&b, &b)?.iter().skip(1).all(|&r| r <= 1) {
            a = b;
        }
    }
    if rng.gen_bool(0.5) {
        a.insert(g.elem(rng.gen_range(0..n))?);
    }
    Ok(Witness::new(&g).with_set("A", &a))
}

fn sidon(w: &Witness) -> R<Vec<Pair>> {
    let a = w.set("A")?;
    let n = card(&a);
    let e = energy2(&a, &a)?;
    let sidon = corr_ints(&a, &a)?.iter().skip(1).all(|&r| r <= 1);
    let eq = e == 2 * n * n - n;
    Ok(vec![Pair::new(2 * n * n - n, e), Pair::new(eq, sidon), Pair::new(sidon, eq)])
}

pub(super) fn checks() -> Vec<Check> {
    use Relation::*;
    use Suite::*;
    vec![
        Check {
            name: "energy_cs",
            paper_ref: "|A|^2 |B|^2 <= E(A,B) |A ± B|",
            suite: Inequality,
            relation: LeqExact,
            gen: |r| sets_instance(r, &["A", "B"], 1, 24),
            eval: energy_cs,
        },
        Check {
            name: "energy_trivial",
            paper_ref: "E(A,B) <= min(|A|^2 |B|, |B|^2 |A|, (|A||B|)^{3/2})",
            suite: Inequality,
            relation: LeqExact,
            gen: |r| sets_instance(r, &["A", "B"], 1, 24),
            eval: energy_trivial,
        },
        Check {
            name: "energy_kl_symmetry",
            paper_ref: "E_{k,l}(A) = E_{l,k}(A), k,l <= 3",
            suite: Identity,
            relation: EqExact,
            gen: |r| sets_instance(r, &["A"], 1, 16),
            eval: kl_symmetry,
        },
        Check {
            name: "energy_tuple",
            paper_ref: "E_{k+1}(A) = E(Delta_k(A), A^k), k = 2",
            suite: Identity,
            relation: EqExact,
            gen: |r| sets_in(r, &[8, 12, 16], &["A"], 1, 8),
            eval: ek_tuple,
        },
        Check {
            name: "restricted_energy_sums",
            paper_ref: "sum_s E(A, A_s) = E_3(A) and sum_{s,t} E(A_s, A_t) = E_4(A)",
            suite: Identity,
            relation: EqExact,
            gen: |r| sets_in(r, &[16, 32], &["A"], 1, 16),
            eval: restricted_energy,
        },
        Check {
            name: "gen_conv_moments",
            paper_ref: "sum_{s,t} sum_z C_2(A_s, A_t)^l(z) = sum_x C_l(A)^4(x), l = 1, 2, 3",
            suite: Identity,
            relation: EqExact,
            gen: |r| sets_in(r, &[16, 32], &["A"], 1, 12),
            eval: gen_conv_moments,
        },
        Check {
            name: "uncertainty",
            paper_ref: "(E_{3/2}(A)/|A|)^{2k} <= E_k(A) T_k(A), k = 2",
            suite: Inequality,
            relation: LeqTol(1e-9),
            gen: |r| sets_instance(r, &["A"], 1, 24),
            eval: uncertainty,
        },
        Check {
            name: "fourier_energy",
            paper_ref: "sum_x (conj A^ ∘ A^)^k (A^ ∘ conj A^)^k = N^{2k+1} T_k(A) and T_k(|A^|^2) = N^{2k-1} E_{2k}(A), k = 2",
            suite: Fourier,
            relation: EqTol(1e-6),
            gen: |r| sets_instance(r, &["A"], 1, 16),
            eval: fourier_energy,
        },
        Check {
            name: "tk_paths",
            paper_ref: "T_k(A) = N^{-1} sum_xi |A^(xi)|^{2k}",
            suite: Fourier,
            relation: EqTol(1e-6),
            gen: |r| sets_instance(r, &["A"], 1, 24),
            eval: tk_paths,
        },
        Check {
            name: "energy_sigma",
            paper_ref: "|A|^{2k} <= E_k(A) sigma_k(A-A) and |A|^{4k} <= E_{2k}(A) T_k(A+A), k = 2",
            suite: Inequality,
            relation: LeqExact,
            gen: |r| sets_instance(r, &["A"], 1, 16),
            eval: ek_sigma,
        },
        Check {
            name: "energy_energy",
            paper_ref: "|A|^{2k+4} <= E_{k+2}(A) E_k(A ± A), k = 2",
            suite: Inequality,
            relation: LeqExact,
            gen: |r| sets_instance(r, &["A"], 1, 16),
            eval: ek_ek,
        },
        Check {
            name: "energy_sanity",
            paper_ref: "E(A) >= |A|^2",
            suite: Inequality,
            relation: LeqExact,
            gen: |r| sets_instance(r, &["A"], 1, 32),
            eval: energy_sanity,
        },
        Check {
            name: "sidon_equality",
            paper_ref: "E(A) >= 2|A|^2 - |A|, with equality iff (A ∘ A)(x) <= 1 for x != 0",
            suite: Inequality,
            relation: LeqExact,
            gen: gen_sidon,
            eval: sidon,
        },
    ]
}
