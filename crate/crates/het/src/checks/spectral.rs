use het_core::constructions::{mult_subgroup, MultSubgroup, PrimeField};
use het_core::energy::{energy2, energy_alpha, energy_kl, mult_energy};
use het_core::harmonic::gen_convolution;
use het_core::sets::{diffset, sumset};
use het_core::spectral::{
    build_op, perron_vector, prune_half, rayleigh, spectrum, subgroup_eigensystem, triangle_sum, HermOp, OpSign,
};
use het_core::{DenseFn, Error, GSet, GroupSpec, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{sets_in, sets_instance, Check, Pair, Relation, Suite};
use crate::witness::Witness;

type R<T> = Result<T, Error>;

fn auto(a: &GSet) -> R<DenseFn> {
    let f = DenseFn::indicator(a);
    f.correlate(&f)
}

fn main_op(a: &GSet) -> R<HermOp> {
    build_op(a, &auto(a)?, OpSign::Difference)
}

fn gen_weighted(rng: &mut ChaCha8Rng) -> R<Witness> {
    Ok(sets_instance(rng, &["A"], 1, 24)?.with("aux", rng.gen::<u32>()).with("complex", rng.gen_bool(0.5)))
}

/// A random weight for which the operator of the given sign is Hermitian:
/// integer and even for the difference sign, or complex with
/// `conj g(-x) = g(x)`; always real for the sum sign.
fn weight(g: &GroupSpec, sign: OpSign, complex: bool, rng: &mut ChaCha8Rng) -> R<DenseFn> {
    let n = g.order();
    let neg = |x: usize| (n - x) % n;
    match (sign, complex) {
        (OpSign::Difference, true) => {
            let h: Vec<C64> = (0..n).map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
            DenseFn::from_complex(g, (0..n).map(|x| (h[x] + h[neg(x)].conj()) / 2.0).collect())
        }
        (OpSign::Difference, false) => {
            let h: Vec<i128> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
            DenseFn::from_ints(g, (0..n).map(|x| h[x] + h[neg(x)]).collect())
        }
        (OpSign::Sum, true) => DenseFn::from_complex(g, (0..n).map(|_| C64::new(rng.gen_range(-1.0..1.0), 0.0)).collect()),
        (OpSign::Sum, false) => DenseFn::from_ints(g, (0..n).map(|_| rng.gen_range(-3..=3)).collect()),
    }
}

fn weights(w: &Witness) -> R<(GSet, ChaCha8Rng, bool)> {
    Ok((w.set("A")?, ChaCha8Rng::seed_from_u64(w.uint("aux")?), w.flag("complex")?))
}

fn trace_1(w: &Witness) -> R<Vec<Pair>> {
    let (a, mut rng, complex) = weights(w)?;
    let g = a.group();
    let mut out = Vec::new();
    for sign in [OpSign::Difference, OpSign::Sum] {
        let f = weight(g, sign, complex, &mut rng)?;
        let op = build_op(&a, &f, sign)?;
        let s = spectrum(&op)?;
        let want = match sign {
            OpSign::Difference => f.at(g.elem(0)?).re * a.len() as f64,
            OpSign::Sum => a.iter().map(|x| f.at(g.add(x, x)).re).sum(),
        };
        out.push(Pair::new(s.eigenvalues.iter().sum::<f64>(), want).scaled(op.frobenius() * (a.len() as f64).sqrt()));
    }
    Ok(out)
}

fn trace_2(w: &Witness) -> R<Vec<Pair>> {
    let (a, mut rng, complex) = weights(w)?;
    let g = a.group();
    let ind = DenseFn::indicator(&a);
    let mut out = Vec::new();
    for sign in [OpSign::Difference, OpSign::Sum] {
        let f = weight(g, sign, complex, &mut rng)?;
        let s = spectrum(&build_op(&a, &f, sign)?)?;
        let r = match sign {
            OpSign::Difference => ind.correlate(&ind)?,
            OpSign::Sum => ind.convolve(&ind)?,
        };
        let want: f64 = g.elements().map(|z| f.at(z).norm_sqr() * r.at(z).re).sum();
        out.push(Pair::new(s.eigenvalues.iter().map(|m| m * m).sum::<f64>(), want));
    }
    Ok(out)
}

fn main_eigenvalue(w: &Witness) -> R<Vec<Pair>> {
    let a = w.set("A")?;
    let s = spectrum(&main_op(&a)?)?;
    Ok(vec![Pair::new(energy2(&a, &a)? as f64 / a.len() as f64, s.eigenvalues[0])])
}

fn eigen_square_sum(w: &Witness) -> R<Vec<Pair>> {
    let a = w.set("A")?;
    let s = spectrum(&main_op(&a)?)?;
    Ok(vec![Pair::new(s.eigenvalues.iter().map(|m| m * m).sum::<f64>(), energy_kl(&a, 2, 3)? as f64)])
}

fn triangles(w: &Witness) -> R<Vec<Pair>> {
    let (a, mut rng, complex) = weights(w)?;
    let g = a.group();
    let g1 = weight(g, OpSign::Difference, complex, &mut rng)?;
    let g2 = if complex {
        DenseFn::from_complex(
            g,
            g.elements().map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect(),
        )?
    } else {
        DenseFn::from_ints(g, g.elements().map(|_| rng.gen_range(-3..=3)).collect())?
    };
    let op = build_op(&a, &g1, OpSign::Difference)?;
    let s = spectrum(&op)?;
    let base = op.base();
    let (u, v) = (g1.to_complex(), g2.to_complex());
    let scale: f64 = {
        let m1 = u.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let m2 = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
        m1 * m1 * m2 * (a.len() as f64).powi(3)
    };
    // sum_a mu_a^2 conj(sum_{y,z} h(y - z) f_a(y) conj f_a(z)); the spectral side
    // of the triple sum. For real even h the inner form is <T^h f_a, f_a>.
    let spectral_side = |h: &[C64]| {
        let mut total = C64::new(0.0, 0.0);
        for (mu, f) in s.eigenvalues.iter().zip(&s.eigenvectors) {
            let mut form = C64::new(0.0, 0.0);
            for (i, &y) in base.iter().enumerate() {
                for (j, &z) in base.iter().enumerate() {
                    form += h[g.sub(y, z).index()] * f[i] * f[j].conj();
                }
            }
            total += form.conj() * mu * mu;
        }
        total
    };
    let cubic = triangle_sum(&a, &g1, &g1)?;
    let mixed = triangle_sum(&a, &g1, &g2)?;
    let mut out = vec![
        Pair::new(cubic, spectral_side(&u)).scaled(scale),
        Pair::new(mixed, spectral_side(&v)).scaled(scale),
    ];
    if !complex {
        // g1 = g2 real: sum_a mu_a^3
        let cubic_rhs: f64 = s.eigenvalues.iter().map(|m| m * m * m).sum();
        out.push(Pair::new(cubic, C64::new(cubic_rhs, 0.0)).scaled(scale));
    }
    // the C_3 form: sum_{s,t} g1(s) conj g1(t) conj g2(t - s) C_3(A)(-s, -t)
    let c3 = gen_convolution(&vec![DenseFn::indicator(&a); 3])?;
    let mut via_c3 = C64::new(0.0, 0.0);
    for (k, c) in c3.entries() {
        let (s_, t_) = (g.neg(k[0]), g.neg(k[1]));
        via_c3 += u[s_.index()] * u[t_.index()].conj() * v[g.sub(t_, s_).index()].conj() * c as f64;
    }
    out.push(Pair::new(mixed, via_c3).scaled(scale));
    Ok(out)
}

fn eigen_d_s(w: &Witness) -> R<Vec<Pair>> {
    let a = w.set("A")?;
    let n = a.len() as f64;
    let mut out = Vec::new();
    for (set, sign) in [(diffset(&a, &a)?, OpSign::Difference), (sumset(&a, &a)?, OpSign::Sum)] {
        let s = spectrum(&build_op(&a, &DenseFn::indicator(&set), sign)?)?;
        out.push(Pair::new(s.eigenvalues[0], n));
        out.extend(s.eigenvalues[1..].iter().map(|&m| Pair::new(m, 0.0).scaled(n)));
    }
    Ok(out)
}

fn energy_3_2(w: &Witness) -> R<Vec<Pair>> {
    let a = w.set("A")?;
    let g = a.group();
    let mut rng = ChaCha8Rng::seed_from_u64(w.uint("aux")?);
    let n = a.len() as f64;
    let e3 = energy_kl(&a, 2, 3)? as f64;
    let r = auto(&a)?.to_complex();
    let (d, s) = (diffset(&a, &a)?, sumset(&a, &a)?);
    let dd = auto(&d)?.to_complex();
    let ss = auto(&s)?.to_complex();
    let mut out = Vec::new();
    for _ in 0..100 {
        let psi: Vec<f64> = g.elements().map(|_| rng.gen_range(-1.0..1.0)).collect();
        let lhs = n * n * psi.iter().zip(&r).map(|(p, v)| p * v.re).sum::<f64>().powi(2);
        for w2 in [&dd, &ss] {
            out.push(Pair::new(lhs, e3 * psi.iter().zip(w2.iter()).map(|(p, v)| p * p * v.re).sum::<f64>()));
        }
    }
    Ok(out)
}

fn li(w: &Witness) -> R<Vec<Pair>> {
    let a = w.set("A")?;
    let n = a.len() as f64;
    let lhs = n * n * energy_alpha(&a, 1.5)?.powi(2);
    let e3 = energy_kl(&a, 2, 3)? as f64;
    Ok(vec![
        Pair::new(lhs, e3 * energy2(&a, &sumset(&a, &a)?)? as f64),
        Pair::new(lhs, e3 * energy2(&a, &diffset(&a, &a)?)? as f64),
    ])
}

fn d_const(w: &Witness) -> R<Vec<Pair>> {
    let a = w.set("A")?;
    let d = diffset(&a, &a)?;
    let n = a.len() as i128;
    Ok(vec![Pair::new(n.pow(8), d.len() as i128 * energy_kl(&a, 2, 3)? * energy2(&a, &d)?)])
}

fn ss2(w: &Witness) -> R<Vec<Pair>> {
    let a = w.set("A")?;
    let d = diffset(&a, &a)?;
    let e3 = energy_kl(&a, 2, 3)?;
    let n = a.len() as i128;
    let mut out = Vec::new();
    for t in [sumset(&a, &a)?, d.clone()] {
        let f = DenseFn::indicator(&t);
        let c = f.correlate(&f)?;
        let c = c.ints().expect("integer path");
        let sum: i128 = d.iter().map(|x| c[x.index()]).sum();
        out.push(Pair::new(n.pow(6), e3 * sum));
    }
    Ok(out)
}

fn action_g(w: &Witness) -> R<Vec<Pair>> {
    let a = w.set("A")?;
    let g = a.group();
    let mut rng = ChaCha8Rng::seed_from_u64(w.uint("aux")?);
    let n = g.order();
    let t = main_op(&a)?;
    let mut out = Vec::new();
    for sign in [OpSign::Difference, OpSign::Sum] {
        let h: Vec<i128> = (0..n).map(|_| if rng.gen_bool(0.4) { rng.gen_range(1..=4) } else { 0 }).collect();
        let vals: Vec<i128> = match sign {
            OpSign::Difference => (0..n).map(|x| h[x] + h[(n - x) % n]).collect(),
            OpSign::Sum => h,
        };
        if vals.iter().all(|&v| v == 0) {
            continue;
        }
        let f = DenseFn::from_ints(g, vals.clone())?;
        let op = build_op(&a, &f, sign)?;
        let s = spectrum(&op)?;
        let mu1 = s.eigenvalues[0];
        let f1: Vec<C64> = perron_vector(&op, &s)?.into_iter().map(|x| C64::new(x, 0.0)).collect();
        let l2: f64 = vals.iter().map(|&v| (v * v) as f64).sum();
        let linf = *vals.iter().max().expect("nonempty") as f64;
        out.push(Pair::new(mu1.powi(3) / (l2 * linf), t.form(&f1)));
    }
    Ok(out)
}

fn prune(w: &Witness) -> R<Vec<Pair>> {
    let a = w.set("A")?;
    let mut rng = ChaCha8Rng::seed_from_u64(w.uint("aux")?);
    let e = energy2(&a, &a)? as f64;
    let n = a.len() as f64;
    let ap = prune_half(&a)?;
    let r = auto(&a)?;
    let mut out = vec![
        Pair::new(a.len(), 2 * ap.len()),
        Pair::new(spectrum(&build_op(&ap, &r, OpSign::Difference)?)?.eigenvalues[0], 2.0 * e / n),
    ];
    // P inside the level set {x : |A_x| >= Delta}, a symmetric set
    let ints = r.ints().expect("integer path");
    let mut levels: Vec<i128> = ints.iter().copied().filter(|&v| v > 0).collect();
    levels.sort_unstable();
    levels.dedup();
    let delta = levels[rng.gen_range(0..levels.len())];
    let p = GSet::from_indices(a.group(), (0..ints.len() as u64).filter(|&x| ints[x as usize] >= delta))?;
    let mu = spectrum(&build_op(&ap, &DenseFn::indicator(&p), OpSign::Difference)?)?.eigenvalues[0];
    out.push(Pair::new(mu, 2.0 * e / (delta as f64 * n)));
    Ok(out)
}

/// The largest `gamma` for which `A` is `(1/2, gamma)`-connected, by
/// enumerating every `B ⊆ A` with `|B| >= |A|/2`.
fn connectivity(a: &GSet) -> R<f64> {
    let el = a.to_vec();
    let n = el.len();
    let e = energy2(a, a)? as f64;
    let mut gamma = 1.0f64;
    for mask in 1u32..(1 << n) {
        let m = mask.count_ones() as usize;
        if 2 * m < n {
            continue;
        }
        let b = GSet::from_elems(a.group(), (0..n).filter(|i| mask >> i & 1 == 1).map(|i| el[i]))?;
        let ratio = (m as f64 / n as f64).powi(4);
        gamma = gamma.min(energy2(&b, &b)? as f64 / (ratio * e));
    }
    Ok(gamma)
}

fn connected(w: &Witness) -> R<Vec<Pair>> {
    let a = w.set("A")?;
    let gamma = connectivity(&a)?;
    let n = a.len() as f64;
    let e = energy2(&a, &a)? as f64;
    [1.0, 1.5, 2.0]
        .iter()
        .map(|&s| Ok(Pair::new(gamma * n.powf(1.0 - s / 2.0) * e.powf(s / 2.0) / 32.0, energy_alpha(&a, s)?)))
        .collect()
}

fn variational(w: &Witness) -> R<Vec<Pair>> {
    let (a, mut rng, complex) = weights(w)?;
    let g = a.group();
    let f = weight(g, OpSign::Difference, complex, &mut rng)?;
    let op = build_op(&a, &f, OpSign::Difference)?;
    let s = spectrum(&op)?;
    let mut out = Vec::new();
    for _ in 0..10 {
        let v: Vec<C64> = (0..a.len()).map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        out.push(Pair::new(rayleigh(&op, &v)?, s.eigenvalues[0]).scaled(op.frobenius()));
    }
    // the top eigenvector attains the maximum
    out.push(Pair::new(rayleigh(&op, &s.eigenvectors[0])?, s.eigenvalues[0]).scaled(op.frobenius()));
    Ok(out)
}

const SUBGROUP_PRIMES: &[u64] = &[13, 17, 29, 31, 37, 41, 61, 73, 97, 101];

fn gen_subgroup(rng: &mut ChaCha8Rng) -> R<Witness> {
    let p = SUBGROUP_PRIMES[rng.gen_range(0..SUBGROUP_PRIMES.len())];
    let divisors: Vec<u64> = (2..p - 1).filter(|t| (p - 1) % t == 0 && *t <= 40).collect();
    let t = divisors[rng.gen_range(0..divisors.len())];
    let gamma = mult_subgroup(p, t)?;
    let a = crate::witness::random_sized(gamma.set().group(), 1, t as usize, rng)?
        .intersection(gamma.set())?;
    let a = if a.is_empty() { gamma.set().clone() } else { a };
    Ok(Witness::new(gamma.set().group())
        .with_set("Gamma", gamma.set())
        .with_set("A", &a)
        .with("aux", rng.gen::<u32>()))
}

/// A real even weight constant on the cosets `x Gamma`.
fn invariant_weight(gamma: &MultSubgroup, rng: &mut ChaCha8Rng) -> R<DenseFn> {
    let p = gamma.modulus();
    let g = gamma.set().group();
    let mut h = vec![0i128; p as usize];
    h[0] = rng.gen_range(-2..=2);
    for x in 1..p {
        if h[x as usize] != 0 {
            continue;
        }
        let v = rng.gen_range(-3..=3);
        let v = if v == 0 { 1 } else { v };
        for &y in gamma.elements() {
            h[(x * y % p) as usize] = v;
        }
    }
    let even: Vec<i128> = (0..p as usize).map(|x| h[x] + h[(p as usize - x) % p as usize]).collect();
    DenseFn::from_ints(g, even)
}

fn subgroup_eigen(w: &Witness) -> R<Vec<Pair>> {
    let gamma = MultSubgroup::from_set(&w.set("Gamma")?)?;
    let mut rng = ChaCha8Rng::seed_from_u64(w.uint("aux")?);
    let mut out = Vec::new();
    let f = invariant_weight(&gamma, &mut rng)?;
    let op = build_op(gamma.set(), &f, OpSign::Difference)?;
    let generic = spectrum(&op)?.eigenvalues;
    let chars = subgroup_eigensystem(&gamma, &op)?.eigenvalues;
    let scale = op.frobenius();
    out.extend(generic.iter().zip(&chars).map(|(&x, &y)| Pair::new(x, y).scaled(scale)));
    // principal character on the main example: mu_1 = E(Gamma) / |Gamma|
    let gs = gamma.set();
    let mu1 = spectrum(&main_op(gs)?)?.eigenvalues[0];
    out.push(Pair::new(mu1, energy2(gs, gs)? as f64 / gs.len() as f64));
    Ok(out)
}

fn subgroup_energy(w: &Witness) -> R<Vec<Pair>> {
    let (gs, a) = (w.set("Gamma")?, w.set("A")?);
    let p = gs.group().modulus().ok_or(Error::NotPrimeField)?;
    let field = PrimeField::new(p)?;
    let t = gs.len() as i128;
    let ag = energy2(&a, &gs)?;
    let na = a.len() as i128;
    Ok(vec![
        Pair::new(energy2(&gs, &gs)? * na * na, ag * t * t),
        Pair::new(ag * ag * t, energy_kl(&gs, 2, 3)? * mult_energy(&a, &a, &field)?),
    ])
}

pub(super) fn checks() -> Vec<Check> {
    use Relation::*;
    use Suite::*;
    vec![
        Check {
            name: "trace_1",
            paper_ref: "sum_a mu_a(T^g_A) = g(0)|A|; for T~^g_A the trace is sum_{x in A} g(2x)",
            suite: Spectral,
            relation: EqTol(1e-8),
            gen: gen_weighted,
            eval: trace_1,
        },
        Check {
            name: "trace_2",
            paper_ref: "sum_a |mu_a|^2 = sum_z |g(z)|^2 (A ∘ A)(z), with A * A for T~^g_A",
            suite: Spectral,
            relation: EqTol(1e-8),
            gen: gen_weighted,
            eval: trace_2,
        },
        Check {
            name: "main_eigenvalue",
            paper_ref: "mu_1(T^{A∘A}_A) >= E(A)/|A|",
            suite: Spectral,
            relation: LeqTol(1e-8),
            gen: |r| sets_instance(r, &["A"], 1, 32),
            eval: main_eigenvalue,
        },
        Check {
            name: "eigen_square_sum",
            paper_ref: "sum_a mu_a(T^{A∘A}_A)^2 = E_3(A)",
            suite: Spectral,
            relation: EqTol(1e-8),
            gen: |r| sets_instance(r, &["A"], 1, 32),
            eval: eigen_square_sum,
        },
        Check {
            name: "triangles_g",
            paper_ref: "sum_{x,y,z in A} g1(x-y) conj g1(x-z) conj g2(y-z) = sum_a mu_a^2 conj<T^{g2} f_a, f_a> = sum_{s,t} g1(s) conj g1(t) conj g2(t-s) C_3(A)(-s,-t)",
            suite: Spectral,
            relation: EqTol(1e-6),
            gen: gen_weighted,
            eval: triangles,
        },
        Check {
            name: "eigen_d_s",
            paper_ref: "Spec T^{A-A}_A = Spec T~^{A+A}_A = {|A|, 0, ..., 0}",
            suite: Spectral,
            relation: EqTol(1e-8),
            gen: |r| sets_instance(r, &["A"], 1, 24),
            eval: eigen_d_s,
        },
        Check {
            name: "energy_3_2",
            paper_ref: "|A|^2 (sum_x psi(x)(A∘A)(x))^2 <= E_3(A) sum_x |psi(x)|^2 (D∘D)(x), and with S = A+A",
            suite: Inequality,
            relation: LeqTol(1e-9),
            gen: |r| Ok(sets_instance(r, &["A"], 1, 24)?.with("aux", r.gen::<u32>())),
            eval: energy_3_2,
        },
        Check {
            name: "li_inequality",
            paper_ref: "|A|^2 E_{3/2}(A)^2 <= E_3(A) E(A, A ± A)",
            suite: Inequality,
            relation: LeqTol(1e-9),
            gen: |r| sets_instance(r, &["A"], 1, 32),
            eval: li,
        },
        Check {
            name: "d_const",
            paper_ref: "|A|^8 <= |D| E_3(A) E(A, D), D = A - A",
            suite: Inequality,
            relation: LeqExact,
            gen: |r| sets_instance(r, &["A"], 1, 32),
            eval: d_const,
        },
        Check {
            name: "ss2",
            paper_ref: "|A|^6 <= E_3(A) sum_{x in A-A} ((A ± A) ∘ (A ± A))(x)",
            suite: Inequality,
            relation: LeqExact,
            gen: |r| sets_instance(r, &["A"], 1, 32),
            eval: ss2,
        },
        Check {
            name: "action_g",
            paper_ref: "<T^{A∘A}_A f_1, f_1> >= mu_1^3 / (||g||_2^2 ||g||_inf), f_1 main function of T^g_A or T~^g_A, g >= 0",
            suite: Spectral,
            relation: LeqTol(1e-8),
            gen: |r| Ok(sets_instance(r, &["A"], 1, 24)?.with("aux", r.gen::<u32>())),
            eval: action_g,
        },
        Check {
            name: "prune_half",
            paper_ref: "|A'| >= |A|/2, mu_1(T^{A∘A}_{A'}) <= 2E(A)/|A|, mu_1(T^P_{A'}) <= 2E(A)/(Delta |A|) for P ⊆ {x : |A_x| >= Delta}",
            suite: Spectral,
            relation: LeqTol(1e-8),
            gen: |r| Ok(sets_instance(r, &["A"], 1, 32)?.with("aux", r.gen::<u32>())),
            eval: prune,
        },
        Check {
            name: "connected",
            paper_ref: "A (beta, gamma)-connected, beta = 1/2 => E_s(A) >= 2^{-5} gamma |A|^{1-s/2} E(A)^{s/2}, s in {1, 3/2, 2}",
            suite: Inequality,
            relation: LeqTol(1e-9),
            gen: |r| sets_in(r, &[16, 32, 64], &["A"], 1, 12),
            eval: connected,
        },
        Check {
            name: "variational",
            paper_ref: "<T f, f> / ||f||_2^2 <= mu_1(T), with equality at f_1",
            suite: Spectral,
            relation: LeqTol(1e-8),
            gen: gen_weighted,
            eval: variational,
        },
        Check {
            name: "subgroup_eigen",
            paper_ref: "Gamma-invariant H: characters of Gamma are eigenfunctions; mu_1(T^{Gamma∘Gamma}_Gamma) = E(Gamma)/|Gamma|",
            suite: Spectral,
            relation: EqTol(1e-8),
            gen: gen_subgroup,
            eval: subgroup_eigen,
        },
        Check {
            name: "subgroup_energy",
            paper_ref: "A ⊆ Gamma: E(Gamma)|A|^2/|Gamma|^2 <= E(A, Gamma) and E(A, Gamma)^2 |Gamma| <= E_3(Gamma) E^x(A)",
            suite: Inequality,
            relation: LeqExact,
            gen: gen_subgroup,
            eval: subgroup_energy,
        },
    ]
}
