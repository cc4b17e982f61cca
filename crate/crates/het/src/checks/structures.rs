use het_core::constructions::{
    convex_set, heilbronn_chain, heilbronn_subgroup, heilbronn_sum, lcon_constant, mult_subgroup, quadratic_residues,
    residue_basis_depth, ConvexKind, MultSubgroup,
};
use het_core::energy::{energy2, energy_kl};
use het_core::harmonic::dft;
use het_core::sets::{cs_almost_periods, shift_deviation, sumset};
use het_core::{DenseFn, Error, GSet, GroupSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Check, Pair, Relation, Suite};
use crate::witness::{random_sized, Witness};

type R<T> = Result<T, Error>;

pub const HEILBRONN_PRIMES: &[u64] = &[5, 7, 11, 13];
pub const CONVEX_SIZES: &[usize] = &[10, 20, 40, 80];
pub const RESIDUE_PRIMES: &[u64] = &[7, 11, 13, 101];

fn pick<T: Copy>(v: &[T], rng: &mut ChaCha8Rng) -> T {
    v[rng.gen_range(0..v.len())]
}

fn gen_gamma(rng: &mut ChaCha8Rng) -> R<Witness> {
    let gamma = if rng.gen_bool(0.5) {
        heilbronn_subgroup(pick(HEILBRONN_PRIMES, rng))?
    } else {
        let p = pick(&[13, 17, 31, 37, 41, 61, 97, 101], rng);
        let ts: Vec<u64> = (1..p).filter(|t| (p - 1) % t == 0).collect();
        mult_subgroup(p, pick(&ts, rng))?.set().clone()
    };
    Ok(Witness::new(gamma.group()).with_set("Gamma", &gamma))
}

fn gamma_invariance(w: &Witness) -> R<Vec<Pair>> {
    let gamma = w.set("Gamma")?;
    let sub = MultSubgroup::from_set(&gamma)?;
    let m = sub.modulus();
    let f = DenseFn::indicator(&gamma);
    let r = f.correlate(&f)?;
    let r = r.ints().expect("integer path");
    let mismatches = sub
        .elements()
        .iter()
        .flat_map(|&c| (0..m).map(move |x| (c, x)))
        .filter(|&(c, x)| r[(c * x % m) as usize] != r[x as usize])
        .count();
    Ok(vec![Pair::new(mismatches, 0usize)])
}

fn gen_heilbronn(rng: &mut ChaCha8Rng) -> R<Witness> {
    let p = pick(HEILBRONN_PRIMES, rng);
    let g = GroupSpec::cyclic(p * p)?;
    Ok(Witness::new(&g).with("p", p))
}

fn gen_heilbronn_small(rng: &mut ChaCha8Rng) -> R<Witness> {
    let p = pick(&[5, 7], rng);
    let g = GroupSpec::cyclic(p * p)?;
    Ok(Witness::new(&g).with("p", p))
}

fn heilbronn_parseval(w: &Witness) -> R<Vec<Pair>> {
    let gamma = heilbronn_subgroup(w.uint("p")?)?;
    let hat = dft(&DenseFn::indicator(&gamma))?.to_complex();
    let n = gamma.group().order() as f64;
    Ok(vec![Pair::new(hat.iter().map(|z| z.norm_sqr()).sum::<f64>(), n * gamma.len() as f64)])
}

fn heilbronn_chain_check(w: &Witness) -> R<Vec<Pair>> {
    let c = heilbronn_chain(w.uint("p")?)?;
    Ok(vec![Pair::new(c.lhs, c.rhs)])
}

fn heilbronn_eigenvalue(w: &Witness) -> R<Vec<Pair>> {
    let c = heilbronn_chain(w.uint("p")?)?;
    Ok(vec![Pair::new(c.mu1, c.mu1_characters), Pair::new(c.mu1, c.m_squared)])
}

fn heilbronn_e3_ratio(w: &Witness) -> R<Vec<Pair>> {
    let p = w.uint("p")?;
    let gamma = heilbronn_subgroup(p)?;
    let pf = p as f64;
    Ok(vec![Pair::new(energy_kl(&gamma, 2, 3)?, pf.powi(3) * pf.ln())])
}

fn heilbronn_sum_ratio(w: &Witness) -> R<Vec<Pair>> {
    let p = w.uint("p")?;
    let pf = p as f64;
    let mut best = 0.0f64;
    for a in 1..(p * p) as i64 {
        best = best.max(heilbronn_sum(p, a)?.norm());
    }
    Ok(vec![Pair::new(best, pf.powf(5.0 / 6.0) * pf.ln().powf(1.0 / 6.0))])
}

/// `|S(a)|^2` against `mu_1 = M^2` at `a = -xi`; close but not equal, since
/// `S(a) = 1 + Gamma^(-a)`.
fn heilbronn_sum_square(w: &Witness) -> R<Vec<Pair>> {
    let p = w.uint("p")?;
    let c = heilbronn_chain(p)?;
    let s = heilbronn_sum(p, -(c.xi.0 as i64))?;
    Ok(vec![Pair::new(s.norm_sqr(), c.mu1)])
}

fn gen_convex(rng: &mut ChaCha8Rng) -> R<Witness> {
    let n = pick(CONVEX_SIZES, rng);
    let kind = pick(&["squares", "random"], rng);
    let seed = rng.gen::<u32>();
    let c = convex_set(if kind == "squares" { ConvexKind::Squares } else { ConvexKind::Random }, n, seed as u64)?;
    let top = *c.elements().last().expect("nonempty");
    // B inside [0, top], so A + B and A - B stay inside the host
    let m = rng.gen_range(1..=n.min(top as usize + 1));
    let idx = rand::seq::index::sample(rng, top as usize + 1, m);
    let b = GSet::from_indices(c.group(), idx.iter().map(|i| i as u64))?;
    Ok(Witness::new(c.group()).with_set("A", &c.set()).with_set("B", &b).with("aux", rng.gen::<u32>()))
}

fn gen_squares(rng: &mut ChaCha8Rng) -> R<Witness> {
    let c = convex_set(ConvexKind::Squares, pick(CONVEX_SIZES, rng), 0)?;
    Ok(Witness::new(c.group()).with_set("A", &c.set()))
}

fn convex_e3_ratio(w: &Witness) -> R<Vec<Pair>> {
    let a = w.set("A")?;
    let n = a.len() as f64;
    Ok(vec![Pair::new(energy_kl(&a, 2, 3)?, n.powi(3) * n.ln())])
}

fn convex_energy_ratio(w: &Witness) -> R<Vec<Pair>> {
    let (a, b) = (w.set("A")?, w.set("B")?);
    Ok(vec![Pair::new(energy2(&a, &b)?, a.len() as f64 * (b.len() as f64).powf(1.5))])
}

fn lcon(w: &Witness) -> R<Vec<Pair>> {
    let (a, b) = (w.set("A")?, w.set("B")?);
    Ok(vec![Pair::new(lcon_constant(&a, &b)?, 1.0), Pair::new(lcon_constant(&a, &a)?, 1.0)])
}

fn a_prime_b(w: &Witness) -> R<Vec<Pair>> {
    let (a, b) = (w.set("A")?, w.set("B")?);
    let mut rng = ChaCha8Rng::seed_from_u64(w.uint("aux")?);
    let el = a.to_vec();
    let keep = rand::seq::index::sample(&mut rng, el.len(), el.len() / 2);
    let ap = GSet::from_elems(a.group(), keep.iter().map(|i| el[i]))?;
    Ok(vec![Pair::new(sumset(&ap, &b)?.len() as f64, a.len() as f64 * (b.len() as f64).sqrt())])
}

fn gen_periods(rng: &mut ChaCha8Rng) -> R<Witness> {
    let g = GroupSpec::cyclic(64)?;
    let a = random_sized(&g, 8, 24, rng)?;
    let f = random_sized(&g, 4, 48, rng)?;
    Ok(Witness::new(&g)
        .with_set("A", &a)
        .with_set("f", &f)
        .with("p", rng.gen_range(2..=3u32))
        .with("eps", pick(&[0.5, 0.7, 0.9], rng))
        .with("aux", rng.gen::<u32>()))
}

fn periods_of(w: &Witness) -> R<(GSet, DenseFn, f64, het_core::sets::AlmostPeriods)> {
    let a = w.set("A")?;
    let f = DenseFn::indicator(&w.set("f")?);
    let p = w.uint("p")? as u32;
    let eps = w.real("eps")?;
    // the sampling error of (|A|/k) sum_j f(. - x_j) is about |A| / sqrt(k) in
    // units of ||f||_p, against a budget of eps |A|^{1/p} / 2
    let n = a.len() as f64;
    let k = (4.0 * p as f64 * n.powf(2.0 - 2.0 / p as f64) / (eps * eps)).ceil() as usize;
    let out = cs_almost_periods(&a, &f, p, eps, k, 200, w.uint("aux")?)?;
    Ok((a, f, p as f64, out))
}

fn almost_periods(w: &Witness) -> R<Vec<Pair>> {
    let (a, f, p, out) = periods_of(w)?;
    let conv = f.convolve(&DenseFn::indicator(&a))?;
    // direct evaluation: || (f * A)(. + t) - f * A ||_p <= eps ||f||_p |A|^{1/p}
    let fnorm = f.to_complex().iter().map(|z| z.norm().powf(p)).sum::<f64>().powf(1.0 / p);
    let bound = w.real("eps")? * fnorm * (a.len() as f64).powf(1.0 / p);
    let mut v: Vec<Pair> = out.periods.iter().map(|t| Pair::new(shift_deviation(&conv, t, p), bound)).collect();
    v.push(Pair::new(out.periods.contains(het_core::Elem(0)) as u8 as f64, 1.0));
    Ok(v)
}

fn almost_periods_size(w: &Witness) -> R<Vec<Pair>> {
    let (a, _, _, out) = periods_of(w)?;
    Ok(vec![Pair::new(out.periods.len(), a.len())])
}

fn gen_residues(rng: &mut ChaCha8Rng) -> R<Witness> {
    let p = pick(RESIDUE_PRIMES, rng);
    Ok(Witness::new(&GroupSpec::cyclic(p)?).with("p", p))
}

/// The largest `k` with `k 2^k < sqrt(p)`, and whether every `k`-tuple of
/// shifts meets `R` in a common point.
fn residue_oracle(p: u64) -> R<(u64, bool)> {
    let mut k = 1u64;
    while ((k + 1) << (k + 1)).pow(2) < p {
        k += 1;
    }
    let r = quadratic_residues(p)?;
    let g = r.group().clone();
    let total = p.pow(k as u32);
    for code in 0..total {
        let mut acc = r.clone();
        let mut c = code;
        for _ in 0..k {
            acc = acc.intersection(&r.translate(g.neg(g.elem(c % p)?)))?;
            c /= p;
        }
        if acc.is_empty() {
            return Ok((k, false));
        }
    }
    Ok((k, true))
}

fn residue_basis(w: &Witness) -> R<Vec<Pair>> {
    let p = w.uint("p")?;
    let (k, ok) = residue_oracle(p)?;
    Ok(vec![Pair::new(residue_basis_depth(p)? as u64, k), Pair::new(ok, true)])
}

pub(super) fn checks() -> Vec<Check> {
    use Relation::*;
    use Suite::*;
    vec![
        Check {
            name: "gamma_invariance",
            paper_ref: "(Gamma ∘ Gamma)(gamma x) = (Gamma ∘ Gamma)(x) for gamma in Gamma",
            suite: Structure,
            relation: EqExact,
            gen: gen_gamma,
            eval: gamma_invariance,
        },
        Check {
            name: "heilbronn_parseval",
            paper_ref: "sum_xi |Gamma^(xi)|^2 = N |Gamma|",
            suite: Structure,
            relation: EqTol(1e-9),
            gen: gen_heilbronn,
            eval: heilbronn_parseval,
        },
        Check {
            name: "heilbronn_chain",
            paper_ref: "M^12 <= E_3(Gamma) sum_{a,b} |g^(a)|^2 |g^(b)|^2 |g^(a-b)|^2, g = indicator of xi Gamma",
            suite: Structure,
            relation: LeqTol(1e-4),
            gen: gen_heilbronn_small,
            eval: heilbronn_chain_check,
        },
        Check {
            name: "heilbronn_eigenvalue",
            paper_ref: "mu_1(T^{g^}_Gamma) from characters = generic mu_1 = M^2 = max_{xi != 0} t^{-1} sum_{x in xi Gamma} |Gamma^(x)|^2",
            suite: Spectral,
            relation: EqTol(1e-8),
            gen: gen_heilbronn,
            eval: heilbronn_eigenvalue,
        },
        Check {
            name: "almost_periods",
            paper_ref: "||(f * A)(. + t) - f * A||_p <= eps ||f||_p |A|^{1/p} for every returned t",
            suite: Structure,
            relation: LeqTol(1e-9),
            gen: gen_periods,
            eval: almost_periods,
        },
        Check {
            name: "residue_basis",
            paper_ref: "quadratic residues R mod p: R ∩ (R - x_1) ∩ ... ∩ (R - x_k) != {} for all x, where k 2^k < sqrt(p)",
            suite: Structure,
            relation: EqExact,
            gen: gen_residues,
            eval: residue_basis,
        },
        Check {
            name: "heilbronn_e3_ratio",
            paper_ref: "E_3(Gamma) / (p^3 log p)",
            suite: Monitor,
            relation: ReportOnly,
            gen: gen_heilbronn,
            eval: heilbronn_e3_ratio,
        },
        Check {
            name: "heilbronn_sum_ratio",
            paper_ref: "max_{a != 0} |S(a)| / (p^{5/6} log^{1/6} p)",
            suite: Monitor,
            relation: ReportOnly,
            gen: gen_heilbronn,
            eval: heilbronn_sum_ratio,
        },
        Check {
            name: "heilbronn_sum_square",
            paper_ref: "|S(-xi)|^2 / mu_1(T^{g^}_Gamma)",
            suite: Monitor,
            relation: ReportOnly,
            gen: gen_heilbronn,
            eval: heilbronn_sum_square,
        },
        Check {
            name: "convex_e3_ratio",
            paper_ref: "E_3(A) / (|A|^3 log |A|), A = squares",
            suite: Monitor,
            relation: ReportOnly,
            gen: gen_squares,
            eval: convex_e3_ratio,
        },
        Check {
            name: "convex_energy_ratio",
            paper_ref: "E(A, B) / (|A| |B|^{3/2}), A convex",
            suite: Monitor,
            relation: ReportOnly,
            gen: gen_convex,
            eval: convex_energy_ratio,
        },
        Check {
            name: "lcon_constant",
            paper_ref: "max_j (A ∘ B)(s_j) j^{1/3} / (|A||B|^2)^{1/3}, A convex",
            suite: Monitor,
            relation: ReportOnly,
            gen: gen_convex,
            eval: lcon,
        },
        Check {
            name: "a_prime_b_ratio",
            paper_ref: "|A' + B| / (|A| |B|^{1/2}), A convex, |A'| = |A|/2",
            suite: Monitor,
            relation: ReportOnly,
            gen: gen_convex,
            eval: a_prime_b,
        },
        Check {
            name: "almost_periods_size",
            paper_ref: "|T| / |A| for the returned almost periods T",
            suite: Monitor,
            relation: ReportOnly,
            gen: gen_periods,
            eval: almost_periods_size,
        },
    ]
}
