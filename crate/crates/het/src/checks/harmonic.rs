use het_core::energy::energy2;
use het_core::harmonic::{dft, gen_convolution, inverse_dft};
use het_core::{DenseFn, Error, GSet, GroupSpec, SparseTensor, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{sets_instance, Check, Pair, Relation, Suite};
use crate::witness::{random_sized, Witness};

type R<T> = Result<T, Error>;

const FOURIER_GROUPS: &[&[u64]] = &[&[16], &[32], &[64], &[128], &[256], &[4, 8], &[2, 3, 5], &[6, 6]];

fn gen_fourier(rng: &mut ChaCha8Rng) -> R<Witness> {
    let g = GroupSpec::new(FOURIER_GROUPS[rng.gen_range(0..FOURIER_GROUPS.len())])?;
    let a = random_sized(&g, 1, g.order() / 2, rng)?;
    Ok(Witness::new(&g).with_set("A", &a).with("aux", rng.gen::<u32>()))
}

fn random_complex(g: &GroupSpec, rng: &mut ChaCha8Rng) -> R<DenseFn> {
    let v = g.elements().map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    DenseFn::from_complex(g, v)
}

fn aux_fns(w: &Witness, n: usize) -> R<Vec<DenseFn>> {
    let g = w.group()?;
    let mut rng = ChaCha8Rng::seed_from_u64(w.uint("aux")?);
    (0..n).map(|_| random_complex(&g, &mut rng)).collect()
}

fn norm2(v: &[C64]) -> f64 {
    het_core::energy::kahan_sum(v.iter().map(|z| z.norm_sqr()))
}

/// One pair per point, each measured against the largest entry of `want`.
fn pointwise(got: &[C64], want: &[C64]) -> Vec<Pair> {
    let s = want.iter().map(|z| z.norm()).fold(0.0, f64::max);
    got.iter().zip(want).map(|(&a, &b)| Pair::new(a, b).scaled(s)).collect()
}

fn parseval(w: &Witness) -> R<Vec<Pair>> {
    let f = &aux_fns(w, 1)?[0];
    let n = f.group().order() as f64;
    Ok(vec![Pair::new(norm2(&f.to_complex()), norm2(&dft(f)?.to_complex()) / n)])
}

fn parseval_inner(w: &Witness) -> R<Vec<Pair>> {
    let fs = aux_fns(w, 2)?;
    let n = fs[0].group().order() as f64;
    let (f, g) = (fs[0].to_complex(), fs[1].to_complex());
    let (fh, gh) = (dft(&fs[0])?.to_complex(), dft(&fs[1])?.to_complex());
    let lhs: C64 = f.iter().zip(&g).map(|(a, b)| a * b.conj()).sum();
    let rhs: C64 = fh.iter().zip(&gh).map(|(a, b)| a * b.conj()).sum::<C64>() / n;
    let scale = (norm2(&f) * norm2(&g)).sqrt();
    Ok(vec![Pair::new(lhs, rhs).scaled(scale)])
}

fn svertka(w: &Witness) -> R<Vec<Pair>> {
    let fs = aux_fns(w, 2)?;
    let n = fs[0].group().order() as f64;
    let lhs = norm2(&fs[0].convolve(&fs[1])?.to_complex());
    let (fh, gh) = (dft(&fs[0])?.to_complex(), dft(&fs[1])?.to_complex());
    let rhs = het_core::energy::kahan_sum(fh.iter().zip(&gh).map(|(a, b)| a.norm_sqr() * b.norm_sqr())) / n;
    Ok(vec![Pair::new(lhs, rhs)])
}

fn conv_transform(w: &Witness) -> R<Vec<Pair>> {
    let fs = aux_fns(w, 2)?;
    let (f, g) = (&fs[0], &fs[1]);
    let (fh, gh) = (dft(f)?.to_complex(), dft(g)?.to_complex());
    let prod: Vec<C64> = fh.iter().zip(&gh).map(|(a, b)| a * b).collect();
    let mut out = pointwise(&dft(&f.convolve(g)?)?.to_complex(), &prod);
    let fch = dft(&f.conj())?.to_complex();
    let corr: Vec<C64> = fch.iter().zip(&gh).map(|(a, b)| a.conj() * b).collect();
    out.extend(pointwise(&dft(&f.correlate(g)?)?.to_complex(), &corr));
    Ok(out)
}

/// `N^{-1} (conj(S^) ∘ S^)`, to compare against `S^`.
fn char_char_rhs(f: &DenseFn) -> R<Vec<C64>> {
    let h = dft(f)?;
    let n = f.group().order() as f64;
    Ok(h.conj().correlate(&h)?.to_complex().iter().map(|z| z / n).collect())
}

fn char_char(w: &Witness) -> R<Vec<Pair>> {
    let s = DenseFn::indicator(&w.set("A")?);
    Ok(pointwise(&dft(&s)?.to_complex(), &char_char_rhs(&s)?))
}

fn char_char_converse(w: &Witness) -> R<Vec<Pair>> {
    let g = w.group()?;
    let mut rng = ChaCha8Rng::seed_from_u64(w.uint("aux")?);
    // a 0/1/2-valued function that takes the value 2 somewhere
    let mut v: Vec<i128> = g.elements().map(|_| rng.gen_range(0..=2)).collect();
    let at = rng.gen_range(0..v.len());
    v[at] = 2;
    let f = DenseFn::from_ints(&g, v)?;
    let (lhs, rhs) = (dft(&f)?.to_complex(), char_char_rhs(&f)?);
    let s = rhs.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let dev = lhs.iter().zip(&rhs).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    Ok(vec![Pair::new(dev > 1e-6 * s, true)])
}

fn inversion(w: &Witness) -> R<Vec<Pair>> {
    let f = &aux_fns(w, 1)?[0];
    Ok(pointwise(&inverse_dft(&dft(f)?)?.to_complex(), &f.to_complex()))
}

/// A random integer function supported on a few random points.
fn sparse_int(g: &GroupSpec, rng: &mut ChaCha8Rng) -> R<DenseFn> {
    let mut v = vec![0i128; g.order()];
    for _ in 0..rng.gen_range(2..=3) {
        let x = rng.gen_range(0..v.len());
        v[x] = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
    }
    DenseFn::from_ints(g, v)
}

fn gen_matrix(rng: &mut ChaCha8Rng) -> R<Witness> {
    let g = crate::witness::random_cyclic(&[16, 32, 64], rng);
    Ok(Witness::new(&g)
        .with("l", rng.gen_range(2..=3))
        .with("k", rng.gen_range(2..=3))
        .with("aux", rng.gen::<u32>()))
}

/// Rewrites a key over `(G^{inner})^{outer}` with digit `(i, j)` at position
/// `i * inner + j` into the transposed layout.
fn transpose_key(key: u128, n: u128, outer: usize, inner: usize) -> u128 {
    let mut digits = vec![0u128; outer * inner];
    let mut k = key;
    for d in digits.iter_mut() {
        *d = k % n;
        k /= n;
    }
    let mut out = 0u128;
    for j in (0..inner).rev() {
        for i in (0..outer).rev() {
            out = out * n + digits[i * inner + j];
        }
    }
    out
}

/// `C_l(C_k(R_0), ..., C_k(R_{l-1}))` and `C_k(C_l(C_0), ..., C_l(C_{k-1}))` for
/// the `l x k` matrix `f`.
pub(crate) fn commutative_sides(f: &[Vec<DenseFn>]) -> R<(SparseTensor, SparseTensor)> {
    let (l, k) = (f.len(), f[0].len());
    let rows: Vec<DenseFn> = f.iter().map(|r| gen_convolution(r)?.to_dense()).collect::<R<_>>()?;
    let cols: Vec<DenseFn> = (0..k)
        .map(|j| gen_convolution(&f.iter().map(|r| r[j].clone()).collect::<Vec<_>>())?.to_dense())
        .collect::<R<_>>()?;
    let _ = l;
    Ok((gen_convolution(&rows)?, gen_convolution(&cols)?))
}

fn commutative(w: &Witness) -> R<Vec<Pair>> {
    let g = w.group()?;
    let (l, k) = (w.uint("l")? as usize, w.uint("k")? as usize);
    let mut rng = ChaCha8Rng::seed_from_u64(w.uint("aux")?);
    let f: Vec<Vec<DenseFn>> = (0..l)
        .map(|_| (0..k).map(|_| sparse_int(&g, &mut rng)).collect::<R<_>>())
        .collect::<R<_>>()?;
    let (lhs, rhs) = commutative_sides(&f)?;
    let n = g.order() as u128;
    let mismatches = lhs
        .entries_raw()
        .filter(|&(key, v)| rhs.get_key(transpose_key(key, n, l - 1, k - 1)) != v)
        .count();
    Ok(vec![Pair::new(mismatches, 0usize), Pair::new(lhs.len(), rhs.len())])
}

fn gen_fns(rng: &mut ChaCha8Rng) -> R<Witness> {
    let l = rng.gen_range(2..=3usize);
    let k = rng.gen_range(2..=3usize);
    let names = ["f0", "f1", "f2", "g0", "g1", "g2"];
    let mut w = sets_instance(rng, &[], 0, 0)?;
    let g = w.group()?;
    for n in names {
        w = w.with_set(n, &random_sized(&g, 4, 16, rng)?);
    }
    Ok(w.with("l", l).with("k", k))
}

fn named(w: &Witness, prefix: &str, n: usize) -> R<Vec<DenseFn>> {
    (0..n).map(|i| Ok(DenseFn::indicator(&w.set(&format!("{prefix}{i}"))?))).collect()
}

fn tensor_dot(fs: &[SparseTensor]) -> R<i128> {
    let mut total = 0i128;
    for (key, v) in fs[0].entries_raw() {
        let mut p = v;
        for t in &fs[1..] {
            p = p.checked_mul(t.get_key(key)).ok_or(Error::Overflow)?;
        }
        total = total.checked_add(p).ok_or(Error::Overflow)?;
    }
    Ok(total)
}

fn scalar_c(w: &Witness) -> R<Vec<Pair>> {
    let l = w.uint("l")? as usize;
    let (f, g) = (named(w, "f", l)?, named(w, "g", l)?);
    let lhs = tensor_dot(&[gen_convolution(&f)?, gen_convolution(&g)?])?;
    let corr: Vec<Vec<i128>> = f
        .iter()
        .zip(&g)
        .map(|(a, b)| Ok(a.correlate(b)?.ints().expect("integer path").to_vec()))
        .collect::<R<_>>()?;
    let rhs: i128 = (0..corr[0].len()).map(|z| corr.iter().map(|c| c[z]).product::<i128>()).sum();
    Ok(vec![Pair::new(lhs, rhs)])
}

fn gen_c(w: &Witness) -> R<Vec<Pair>> {
    let (l, k) = (w.uint("l")? as usize, w.uint("k")? as usize);
    let f = named(w, "f", k)?;
    let cs: Vec<SparseTensor> = f.iter().map(|fj| gen_convolution(&vec![fj.clone(); l])).collect::<R<_>>()?;
    let lhs = tensor_dot(&cs)?;
    let rhs = gen_convolution(&f)?.power_sum(l as u32)?;
    Ok(vec![Pair::new(lhs, rhs)])
}

/// Right-nested multi-correlation `f_0 ∘ (f_1 ∘ (... ∘ f_{k-1}))`.
fn multi_corr(fs: &[DenseFn]) -> R<DenseFn> {
    let mut acc = fs[fs.len() - 1].clone();
    for f in fs[..fs.len() - 1].iter().rev() {
        acc = f.correlate(&acc)?;
    }
    Ok(acc)
}

fn conv_c(w: &Witness) -> R<Vec<Pair>> {
    let (l, k) = (w.uint("l")? as usize, w.uint("k")? as usize);
    let f = named(w, "f", k)?;
    let cs: Vec<DenseFn> = f
        .iter()
        .map(|fj| gen_convolution(&vec![fj.clone(); l])?.to_dense())
        .collect::<R<_>>()?;
    let tail = multi_corr(&cs[1..])?;
    let lhs: i128 = cs[0]
        .ints()
        .expect("integer path")
        .iter()
        .zip(tail.ints().expect("integer path"))
        .map(|(a, b)| a * b)
        .sum();
    let m = multi_corr(&f)?;
    let rhs: i128 = m.ints().expect("integer path").iter().map(|v| v.pow(l as u32)).sum();
    Ok(vec![Pair::new(lhs, rhs)])
}

fn energy_tensor(w: &Witness) -> R<Vec<Pair>> {
    let a: GSet = w.set("A")?;
    let f = DenseFn::indicator(&a);
    Ok(vec![Pair::new(gen_convolution(&[f.clone(), f])?.power_sum(2)?, energy2(&a, &a)?)])
}

pub(super) fn checks() -> Vec<Check> {
    use Relation::*;
    use Suite::*;
    vec![
        Check {
            name: "parseval",
            paper_ref: "sum_x |f(x)|^2 = N^{-1} sum_xi |f^(xi)|^2",
            suite: Fourier,
            relation: EqTol(1e-9),
            gen: gen_fourier,
            eval: parseval,
        },
        Check {
            name: "parseval_inner",
            paper_ref: "sum_x f(x) conj g(x) = N^{-1} sum_xi f^(xi) conj g^(xi)",
            suite: Fourier,
            relation: EqTol(1e-9),
            gen: gen_fourier,
            eval: parseval_inner,
        },
        Check {
            name: "convolution_energy",
            paper_ref: "sum_y |(f*g)(y)|^2 = N^{-1} sum_xi |f^(xi)|^2 |g^(xi)|^2",
            suite: Fourier,
            relation: EqTol(1e-9),
            gen: gen_fourier,
            eval: svertka,
        },
        Check {
            name: "convolution_transform",
            paper_ref: "(f*g)^ = f^ g^ and (f∘g)^ = conj((conj f)^) g^",
            suite: Fourier,
            relation: EqTol(1e-9),
            gen: gen_fourier,
            eval: conv_transform,
        },
        Check {
            name: "char_char",
            paper_ref: "S indicator => S^(x) = N^{-1} (conj S^ ∘ S^)(x)",
            suite: Fourier,
            relation: EqTol(1e-9),
            gen: gen_fourier,
            eval: char_char,
        },
        Check {
            name: "char_char_converse",
            paper_ref: "f not an indicator => f^ != N^{-1} (conj f^ ∘ f^)",
            suite: Fourier,
            relation: EqExact,
            gen: gen_fourier,
            eval: char_char_converse,
        },
        Check {
            name: "inverse_dft",
            paper_ref: "f(x) = N^{-1} sum_xi f^(xi) e(xi.x)",
            suite: Fourier,
            relation: EqTol(1e-9),
            gen: gen_fourier,
            eval: inversion,
        },
        Check {
            name: "commutative_C",
            paper_ref: "C_l(C_k(R_0),..,C_k(R_{l-1})) = C_k(C_l(C_0),..,C_l(C_{k-1})) for an l x k functional matrix",
            suite: Identity,
            relation: EqExact,
            gen: gen_matrix,
            eval: commutative,
        },
        Check {
            name: "scalar_C",
            paper_ref: "sum_x C_l(f)(x) C_l(g)(x) = sum_z prod_i (f_i ∘ g_i)(z)",
            suite: Identity,
            relation: EqExact,
            gen: gen_fns,
            eval: scalar_c,
        },
        Check {
            name: "gen_C",
            paper_ref: "sum_x prod_j C_l(f_j)(x) = sum_y C_k(f_0,..,f_{k-1})(y)^l",
            suite: Identity,
            relation: EqExact,
            gen: gen_fns,
            eval: gen_c,
        },
        Check {
            name: "conv_C",
            paper_ref: "sum_x C_l(f_0)(x) (C_l(f_1) ∘ .. ∘ C_l(f_{k-1}))(x) = sum_z (f_0 ∘ .. ∘ f_{k-1})^l(z)",
            suite: Identity,
            relation: EqExact,
            gen: gen_fns,
            eval: conv_c,
        },
        Check {
            name: "energy_tensor",
            paper_ref: "sum_x C_2(A)(x)^2 = E(A)",
            suite: Identity,
            relation: EqExact,
            gen: |r| sets_instance(r, &["A"], 4, 16),
            eval: energy_tensor,
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `sum_{x_1..x_{k-1}} sum_{z_0..z_{l-1}} prod_{i,j} f_ij(x_j + y_ij + z_i)`
    /// with `x_0 = 0` and `y_0j = y_i0 = 0`.
    fn oracle(f: &[Vec<DenseFn>], y: &[Vec<u64>], n: u64) -> i128 {
        let (l, k) = (f.len(), f[0].len());
        let vals: Vec<Vec<&[i128]>> = f.iter().map(|r| r.iter().map(|g| g.ints().unwrap()).collect()).collect();
        let mut total = 0;
        let xs = n.pow(k as u32 - 1);
        let zs = n.pow(l as u32);
        for xi in 0..xs {
            let x: Vec<u64> = (0..k).map(|j| if j == 0 { 0 } else { xi / n.pow(j as u32 - 1) % n }).collect();
            for zi in 0..zs {
                let z: Vec<u64> = (0..l).map(|i| zi / n.pow(i as u32) % n).collect();
                let mut p = 1i128;
                for i in 0..l {
                    for j in 0..k {
                        let yij = if i == 0 || j == 0 { 0 } else { y[i - 1][j - 1] };
                        p *= vals[i][j][((x[j] + yij + z[i]) % n) as usize];
                        if p == 0 {
                            break;
                        }
                    }
                }
                total += p;
            }
        }
        total
    }

    #[test]
    fn commutative_matches_direct_sum() {
        let n = 5u64;
        let g = GroupSpec::cyclic(n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (l, k) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
            let f: Vec<Vec<DenseFn>> = (0..l)
                .map(|_| {
                    (0..k)
                        .map(|_| DenseFn::from_ints(&g, (0..n).map(|_| rng.gen_range(-1..=2)).collect()).unwrap())
                        .collect()
                })
                .collect();
            let (lhs, rhs) = commutative_sides(&f).unwrap();
            let cells = n.pow(((l - 1) * (k - 1)) as u32);
            for key in 0..cells {
                let y: Vec<Vec<u64>> = (0..l - 1)
                    .map(|i| (0..k - 1).map(|j| key / n.pow((i * (k - 1) + j) as u32) % n).collect())
                    .collect();
                let want = oracle(&f, &y, n);
                assert_eq!(lhs.get_key(key as u128), want, "l={l} k={k} key={key}");
                let t = transpose_key(key as u128, n as u128, l - 1, k - 1);
                assert_eq!(rhs.get_key(t), want);
            }
        }
    }
}
