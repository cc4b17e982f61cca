use het_core::sets::{
    basis_depth_check, diffset, greedy_cover, greedy_cover_bound, higher_diff, higher_diff_characterized,
    higher_diff_recursive, higher_sum, iterated, magnification_ratio, magnification_ratio_tuples, restricted,
    sum_basis_depth_check, sumset, tuple_shift,
};
use het_core::{Error, GSet, GroupSpec, Sign, TupleSet};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{sets_in, sets_instance, Check, Pair, Relation, Suite};
use crate::witness::{random_set, random_sized, Witness};

type R<T> = Result<T, Error>;

fn pow(b: usize, e: u32) -> i128 {
    (b as i128).pow(e)
}

fn random_tuples(g: &GroupSpec, k: usize, lo: usize, hi: usize, rng: &mut ChaCha8Rng) -> R<TupleSet> {
    let m = rng.gen_range(lo..=hi);
    let mut t = TupleSet::empty(g, k)?;
    while t.len() < m {
        let v: Vec<_> = (0..k).map(|_| g.elem(rng.gen_range(0..g.order() as u64))).collect::<R<_>>()?;
        t.insert(&v);
    }
    Ok(t)
}

fn power(a: &GSet, n: usize) -> Vec<GSet> {
    vec![a.clone(); n]
}

fn triangle(w: &Witness) -> R<Vec<Pair>> {
    let (a, b, c) = (w.set("A")?, w.set("B")?, w.set("C")?);
    let mid = higher_diff(&[a.clone(), b.clone()], &c)?.len();
    Ok(vec![
        Pair::new(c.len() * diffset(&a, &b)?.len(), mid),
        Pair::new(mid, diffset(&a, &c)?.len() * diffset(&b, &c)?.len()),
    ])
}

fn gen_wyxz(rng: &mut ChaCha8Rng) -> R<Witness> {
    let g = crate::witness::random_cyclic(&[16, 32], rng);
    let k = rng.gen_range(1..=2);
    let (wt, yt) = (random_tuples(&g, k, 2, 6, rng)?, random_tuples(&g, k, 2, 6, rng)?);
    let (x, z) = (random_sized(&g, 2, 5, rng)?, random_sized(&g, 2, 5, rng)?);
    Ok(Witness::new(&g).with_tuples("W", &wt).with_tuples("Y", &yt).with_set("X", &x).with_set("Z", &z))
}

fn triangle_higher(w: &Witness) -> R<Vec<Pair>> {
    let (wt, yt, x, z) = (w.tuple_set("W")?, w.tuple_set("Y")?, w.set("X")?, w.set("Z")?);
    let lhs = wt.len() * x.len() * tuple_shift(&yt, &z, Sign::Minus)?.len();
    let big = yt.cartesian(&wt)?.cartesian(&TupleSet::from_set(&z))?;
    Ok(vec![Pair::new(lhs, tuple_shift(&big, &x, Sign::Minus)?.len())])
}

fn triangle_swap(w: &Witness) -> R<Vec<Pair>> {
    let (yt, x, z) = (w.tuple_set("Y")?, w.set("X")?, w.set("Z")?);
    let yz = tuple_shift(&yt.cartesian(&TupleSet::from_set(&z))?, &x, Sign::Minus)?;
    let yx = tuple_shift(&yt.cartesian(&TupleSet::from_set(&x))?, &z, Sign::Minus)?;
    Ok(vec![Pair::new(yz.len(), yx.len())])
}

fn triangle_chain(w: &Witness) -> R<Vec<Pair>> {
    let a: Vec<GSet> = ["A1", "A2", "A3"].iter().map(|n| w.set(n)).collect::<R<_>>()?;
    let b = w.set("B")?;
    let whole = higher_diff(&a, &b)?.len();
    let mut out = Vec::new();
    for m in 1..a.len() {
        let head = higher_diff(&a[..m], &a[m])?.len();
        let tail = higher_diff(&a[m..], &b)?.len();
        out.push(Pair::new(whole, head * tail));
    }
    Ok(out)
}

fn restricted_diff(w: &Witness) -> R<Vec<Pair>> {
    let a = w.set("A")?;
    let mut sum = 0;
    for s in diffset(&a, &a)?.iter() {
        sum += diffset(&a, &restricted(&a, s)?)?.len();
    }
    Ok(vec![Pair::new(sum, higher_diff(&power(&a, 2), &a)?.len())])
}

fn restricted_sum_identity(w: &Witness) -> R<Vec<Pair>> {
    let a = w.set("A")?;
    let mut sum = 0;
    for s in diffset(&a, &a)?.iter() {
        sum += sumset(&a, &restricted(&a, s)?)?.len();
    }
    Ok(vec![Pair::new(higher_sum(&power(&a, 2), &a)?.len(), sum)])
}

fn restricted_sum_lower(w: &Witness) -> R<Vec<Pair>> {
    let a = w.set("A")?;
    let m = sumset(&a, &a)?.len().max(diffset(&a, &a)?.len());
    Ok(vec![Pair::new(a.len() * m, higher_sum(&power(&a, 2), &a)?.len())])
}

const NM: [(usize, usize); 3] = [(1, 1), (1, 2), (2, 1)];

fn power_diff(w: &Witness) -> R<Vec<Pair>> {
    let a = w.set("A")?;
    NM.iter()
        .map(|&(n, m)| {
            let small = higher_diff(&power(&a, n), &a)?.len() as i128;
            let big = higher_diff(&power(&a, n + m), &a)?.len();
            Ok(Pair::new(pow(a.len(), m as u32) * small, big))
        })
        .collect()
}

fn power_sum(w: &Witness) -> R<Vec<Pair>> {
    let a = w.set("A")?;
    NM.iter()
        .map(|&(n, m)| {
            let plus = higher_sum(&power(&a, n), &a)?.len();
            let minus = higher_diff(&power(&a, n), &a)?.len();
            let big = higher_sum(&power(&a, n + m), &a)?.len();
            Ok(Pair::new(pow(a.len(), m as u32) * plus.max(minus) as i128, big))
        })
        .collect()
}

fn gen_bases(rng: &mut ChaCha8Rng) -> R<Witness> {
    let k = rng.gen_range(2..=3usize);
    let hi = if k == 3 { 10 } else { 16 };
    let names = ["A1", "A2", "A3"];
    Ok(sets_instance(rng, &names[..k], 4, hi)?.with("k", k))
}

fn g_bases(w: &Witness) -> R<Vec<Pair>> {
    let k = w.uint("k")? as usize;
    let a: Vec<GSet> = ["A1", "A2", "A3"][..k].iter().map(|n| w.set(n)).collect::<R<_>>()?;
    let g = w.group()?;
    let lhs = higher_diff(&a, &GSet::full(&g))?.len();
    let rhs = g.order() * higher_diff(&a[..k - 1], &a[k - 1])?.len();
    Ok(vec![Pair::new(lhs, rhs)])
}

fn moshchevitin(w: &Witness) -> R<Vec<Pair>> {
    let (x, y, z, wset) = (w.set("X")?, w.set("Y")?, w.set("Z")?, w.set("W")?);
    let lhs = diffset(&x, &y)?.len() * diffset(&z, &wset)?.len();
    let rhs = higher_diff(&[diffset(&x, &wset)?, diffset(&y, &z)?], &diffset(&y, &wset)?)?.len();
    Ok(vec![Pair::new(lhs, rhs)])
}

fn petridis(w: &Witness) -> R<Vec<Pair>> {
    let a = w.set("A")?;
    let r = magnification_ratio(&a, &a)?.ratio;
    NM.iter()
        .map(|&(n, m)| {
            let e = (n + m) as u32;
            let lhs = iterated(n, m, &a)?.len() as i128 * r.denom().pow(e);
            Ok(Pair::new(lhs, r.numer().pow(e) * a.len() as i128))
        })
        .collect()
}

fn gen_bac(rng: &mut ChaCha8Rng) -> R<Witness> {
    let g = crate::witness::random_cyclic(&[16, 32, 64], rng);
    let k = rng.gen_range(1..=2);
    let b = random_tuples(&g, k, 2, 8, rng)?;
    let (a, c) = (random_sized(&g, 2, 10, rng)?, random_sized(&g, 2, 10, rng)?);
    Ok(Witness::new(&g).with_tuples("B", &b).with_set("A", &a).with_set("C", &c))
}

fn petridis_delta(w: &Witness) -> R<Vec<Pair>> {
    let (b, a, c) = (w.tuple_set("B")?, w.set("A")?, w.set("C")?);
    let m = magnification_ratio_tuples(&b, &a)?;
    let cx = sumset(&c, &m.witness)?;
    let lhs = tuple_shift(&b, &cx, Sign::Plus)?.len() as i128 * m.ratio.denom();
    Ok(vec![Pair::new(lhs, m.ratio.numer() * cx.len() as i128)])
}

fn triangle_plus(w: &Witness) -> R<Vec<Pair>> {
    let (b, a, c) = (w.tuple_set("B")?, w.set("A")?, w.set("C")?);
    let lhs = a.len() * tuple_shift(&b, &c, Sign::Plus)?.len();
    let rhs = tuple_shift(&b, &a, Sign::Plus)?.len() * sumset(&a, &c)?.len();
    Ok(vec![Pair::new(lhs, rhs)])
}

/// Integer sets in `[0, L)` hosted in `Z/4L`, so that `A + A` and `A - A`
/// embed without wraparound.
fn gen_integers(rng: &mut ChaCha8Rng) -> R<Witness> {
    let l = [16u64, 32][rng.gen_range(0..2)];
    let g = GroupSpec::cyclic(4 * l)?;
    let m = rng.gen_range(4..=16) as usize;
    let idx = rand::seq::index::sample(rng, l as usize, m);
    let a = GSet::from_indices(&g, idx.into_iter().map(|i| i as u64))?;
    Ok(Witness::new(&g).with_set("A", &a).with("L", l))
}

fn freiman_pigaev(w: &Witness) -> R<Vec<Pair>> {
    let a = w.set("A")?;
    let l = w.uint("L")?;
    if a.iter().any(|x| x.0 as u64 >= l) || 4 * l > w.group()?.order() as u64 {
        return Err(Error::InvalidArgument("integer set does not embed without wraparound"));
    }
    let (s, d) = (sumset(&a, &a)?.len(), diffset(&a, &a)?.len());
    Ok(vec![Pair::new(pow(s, 3), pow(d, 4)), Pair::new(pow(d, 3), pow(s, 4))])
}

/// A set denser than `(1 - 1/(k+1)) N`, plus a random `A`.
fn gen_dense(rng: &mut ChaCha8Rng) -> R<Witness> {
    let g = crate::witness::random_cyclic(&[16, 32], rng);
    let n = g.order();
    let k = if n == 16 { rng.gen_range(1..=3) } else { rng.gen_range(1..=2) };
    let bmin = k * n / (k + 1) + 1;
    let b = random_set(&g, rng.gen_range(bmin..=n), rng)?;
    let a = random_sized(&g, 1, n / 2, rng)?;
    Ok(Witness::new(&g).with_set("B", &b).with_set("A", &a).with("k", k))
}

fn basis_growth(w: &Witness, sum: bool) -> R<Vec<Pair>> {
    let (b, a, k) = (w.set("B")?, w.set("A")?, w.uint("k")? as u32);
    let is_basis = if sum { sum_basis_depth_check(&b, k as usize)? } else { basis_depth_check(&b, k as usize)? };
    if !is_basis {
        return Err(Error::VerificationFailed("dense set is not a basis"));
    }
    let n = b.group().order();
    Ok(vec![Pair::new(a.len() as i128 * pow(n, k), pow(sumset(&b, &a)?.len(), k + 1))])
}

fn dense_basis(w: &Witness) -> R<Vec<Pair>> {
    let (b, k) = (w.set("B")?, w.uint("k")? as usize);
    Ok(vec![
        Pair::new(basis_depth_check(&b, k)?, true),
        Pair::new(sum_basis_depth_check(&b, k)?, true),
    ])
}

fn gen_cover(rng: &mut ChaCha8Rng) -> R<Witness> {
    sets_in(rng, &[16, 32, 64, 128, 256], &["A"], 1, 24)
}

fn cover(w: &Witness) -> R<Vec<Pair>> {
    let a = w.set("A")?;
    let x = greedy_cover(&a)?;
    Ok(vec![
        Pair::new(x.len(), greedy_cover_bound(&a)?),
        Pair::new(a.group().order(), sumset(&a, &x)?.len()),
    ])
}

fn gen_agree(rng: &mut ChaCha8Rng) -> R<Witness> {
    let k = rng.gen_range(1..=3usize);
    let names = ["A1", "A2", "A3", "B"];
    let mut w = sets_instance(rng, &names[..k], 3, 12)?;
    let b = random_sized(&w.group()?, 3, 12, rng)?;
    w = w.with_set("B", &b);
    Ok(w.with("k", k))
}

fn agree(w: &Witness) -> R<Vec<Pair>> {
    let k = w.uint("k")? as usize;
    let a: Vec<GSet> = ["A1", "A2", "A3"][..k].iter().map(|n| w.set(n)).collect::<R<_>>()?;
    let b = w.set("B")?;
    let direct = higher_diff(&a, &b)?;
    let mut out = vec![Pair::new(direct == higher_diff_characterized(&a, &b)?, true)];
    for m in 1..=k {
        out.push(Pair::new(direct == higher_diff_recursive(&a, &b, m)?, true));
    }
    Ok(out)
}

pub(super) fn checks() -> Vec<Check> {
    use Relation::*;
    use Suite::*;
    vec![
        Check {
            name: "ruzsa_triangle",
            paper_ref: "|C||A-B| <= |AxB - Delta(C)| <= |A-C||B-C|",
            suite: Inequality,
            relation: LeqExact,
            gen: |r| sets_instance(r, &["A", "B", "C"], 1, 16),
            eval: triangle,
        },
        Check {
            name: "ruzsa_triangle_higher",
            paper_ref: "|WxX||Y - Delta(Z)| <= |YxWxZ - Delta(X)|, W,Y in G^k",
            suite: Inequality,
            relation: LeqExact,
            gen: gen_wyxz,
            eval: triangle_higher,
        },
        Check {
            name: "ruzsa_triangle_chain",
            paper_ref: "|A1x..xAk - Delta(B)| <= |A1x..xAm - Delta(A_{m+1})||A_{m+1}x..xAk - Delta(B)|",
            suite: Inequality,
            relation: LeqExact,
            gen: |r| sets_instance(r, &["A1", "A2", "A3", "B"], 2, 10),
            eval: triangle_chain,
        },
        Check {
            name: "ruzsa_triangle_swap",
            paper_ref: "|YxZ - Delta(X)| = |YxX - Delta(Z)|",
            suite: Identity,
            relation: EqExact,
            gen: gen_wyxz,
            eval: triangle_swap,
        },
        Check {
            name: "restricted_diff_sum",
            paper_ref: "sum_{s in A-A} |A - A_s| = |A^2 - Delta(A)|",
            suite: Identity,
            relation: EqExact,
            gen: |r| sets_instance(r, &["A"], 4, 16),
            eval: restricted_diff,
        },
        Check {
            name: "restricted_sum_sum",
            paper_ref: "|A^2 + Delta(A)| = sum_{s in A-A} |A + A_s|",
            suite: Identity,
            relation: EqExact,
            gen: |r| sets_instance(r, &["A"], 4, 16),
            eval: restricted_sum_identity,
        },
        Check {
            name: "restricted_sum_lower",
            paper_ref: "|A| max(|A+A|, |A-A|) <= |A^2 + Delta(A)|",
            suite: Inequality,
            relation: LeqExact,
            gen: |r| sets_instance(r, &["A"], 4, 16),
            eval: restricted_sum_lower,
        },
        Check {
            name: "higher_power_diff",
            paper_ref: "|A|^m |A^n - Delta(A)| <= |A^{n+m} - Delta(A)|, n+m <= 3",
            suite: Inequality,
            relation: LeqExact,
            gen: |r| sets_instance(r, &["A"], 4, 16),
            eval: power_diff,
        },
        Check {
            name: "higher_power_sum",
            paper_ref: "|A|^m max(|A^n + Delta(A)|, |A^n - Delta(A)|) <= |A^{n+m} + Delta(A)|, n+m <= 3",
            suite: Inequality,
            relation: LeqExact,
            gen: |r| sets_instance(r, &["A"], 4, 16),
            eval: power_sum,
        },
        Check {
            name: "g_bases",
            paper_ref: "|A1x..xAk - Delta(G)| = |G| |A1x..xA_{k-1} - Delta(Ak)|",
            suite: Identity,
            relation: EqExact,
            gen: gen_bases,
            eval: g_bases,
        },
        Check {
            name: "moshchevitin",
            paper_ref: "|X - Y||Z - W| <= |(X-W)x(Y-Z) - Delta(Y-W)|",
            suite: Inequality,
            relation: LeqExact,
            gen: |r| sets_instance(r, &["X", "Y", "Z", "W"], 2, 8),
            eval: moshchevitin,
        },
        Check {
            name: "petridis",
            paper_ref: "|nA - mA| <= R[A]^{n+m} |A|, R[A] = min |A+Z|/|Z|",
            suite: Inequality,
            relation: LeqExact,
            gen: |r| sets_instance(r, &["A"], 2, 12),
            eval: petridis,
        },
        Check {
            name: "petridis_delta",
            paper_ref: "|B + Delta(C+X)| <= R_B[A] |C+X| for a minimizing X",
            suite: Inequality,
            relation: LeqExact,
            gen: gen_bac,
            eval: petridis_delta,
        },
        Check {
            name: "triangle_plus",
            paper_ref: "|A||B + Delta(C)| <= |B + Delta(A)||A + C|, B in G^k",
            suite: Inequality,
            relation: LeqExact,
            gen: gen_bac,
            eval: triangle_plus,
        },
        Check {
            name: "freiman_pigaev",
            paper_ref: "|A+A|^{3/4} <= |A-A| <= |A+A|^{4/3}",
            suite: Inequality,
            relation: LeqExact,
            gen: gen_integers,
            eval: freiman_pigaev,
        },
        Check {
            name: "diff_basis_growth",
            paper_ref: "B basis of depth k => |B+A| >= |A|^{1/(k+1)} |G|^{k/(k+1)}",
            suite: Structure,
            relation: LeqExact,
            gen: gen_dense,
            eval: |w| basis_growth(w, false),
        },
        Check {
            name: "sum_basis_growth",
            paper_ref: "B^k + Delta(B) = G^k => |B+A| >= |A|^{1/(k+1)} |G|^{k/(k+1)}",
            suite: Structure,
            relation: LeqExact,
            gen: gen_dense,
            eval: |w| basis_growth(w, true),
        },
        Check {
            name: "dense_basis",
            paper_ref: "|B| > (1 - 1/(k+1))|G| => B is a basis of depth k",
            suite: Structure,
            relation: EqExact,
            gen: gen_dense,
            eval: dense_basis,
        },
        Check {
            name: "greedy_cover",
            paper_ref: "A + X = G with |X| <= ceil(N/|A| ln N) + 1",
            suite: Structure,
            relation: LeqExact,
            gen: gen_cover,
            eval: cover,
        },
        Check {
            name: "higher_diff_agree",
            paper_ref: "direct image = intersection characterization = recursive split for A1x..xAk - Delta(B)",
            suite: Identity,
            relation: EqExact,
            gen: gen_agree,
            eval: agree,
        },
    ]
}
