//! Weighted Cayley operators `T^g_A(x, y) = g(x - y)` and `T~^g_A(x, y) = g(x + y)`
//! on `A`, their spectra, and the quantities built from them.

mod jacobi;

use alloc::vec;
use alloc::vec::Vec;

use crate::constructions::MultSubgroup;
use crate::energy::energy2;
use crate::error::mul;
use crate::harmonic::DenseFn;
use crate::limits::{check, SPECTRAL_CAP, TRIPLE_CAP};
use crate::sets::GSet;
use crate::{Elem, Error, Result, C64};

/// `g(x - y)` or `g(x + y)`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum OpSign {
    Difference,
    Sum,
}

/// A Hermitian matrix indexed by a set `A` in ascending element order.
#[derive(Clone, Debug, PartialEq)]
pub struct HermOp {
    base: Vec<Elem>,
    n: usize,
    matrix: Vec<C64>,
}

/// Eigenvalues in descending order with orthonormal eigenvectors.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    /// `eigenvectors[i]` belongs to `eigenvalues[i]`.
    pub eigenvectors: Vec<Vec<C64>>,
    /// `max_i ||M v_i - mu_i v_i||_2`.
    pub residual_max: f64,
}

fn close(a: C64, b: C64, scale: f64) -> bool {
    (a - b).norm() <= 1e-12 * scale.max(1.0)
}

/// Builds `T^g_A` (difference) or `T~^g_A` (sum).
pub fn build_op(a: &GSet, g: &DenseFn, sign: OpSign) -> Result<HermOp> {
    if a.group() != g.group() {
        return Err(Error::GroupMismatch);
    }
    check("operator dimension", a.len() as u128, SPECTRAL_CAP as u128)?;
    let grp = a.group();
    let vals = g.to_complex();
    let scale = vals.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let hermitian = grp.elements().all(|x| match sign {
        OpSign::Difference => close(vals[grp.neg(x).index()].conj(), vals[x.index()], scale),
        OpSign::Sum => vals[x.index()].im.abs() <= 1e-12 * scale.max(1.0),
    });
    if !hermitian {
        return Err(Error::NotHermitian);
    }
    let base = a.to_vec();
    let n = base.len();
    let mut matrix = Vec::with_capacity(n * n);
    for &x in &base {
        for &y in &base {
            let z = match sign {
                OpSign::Difference => grp.sub(x, y),
                OpSign::Sum => grp.add(x, y),
            };
            matrix.push(vals[z.index()]);
        }
    }
    Ok(HermOp { base, n, matrix })
}

impl HermOp {
    /// Wraps a row-major matrix indexed by `base`, checking it is Hermitian.
    pub fn from_hermitian(base: Vec<Elem>, matrix: Vec<C64>) -> Result<Self> {
        let n = base.len();
        if matrix.len() != n * n {
            return Err(Error::InvalidArgument("matrix size must be |A|^2"));
        }
        check("operator dimension", n as u128, SPECTRAL_CAP as u128)?;
        let scale = matrix.iter().map(|z| z.norm()).fold(0.0, f64::max);
        for i in 0..n {
            for j in 0..n {
                if !close(matrix[i * n + j], matrix[j * n + i].conj(), scale) {
                    return Err(Error::NotHermitian);
                }
            }
        }
        Ok(HermOp { base, n, matrix })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn base(&self) -> &[Elem] {
        &self.base
    }

    pub fn entry(&self, i: usize, j: usize) -> C64 {
        self.matrix[i * self.n + j]
    }

    pub fn matrix(&self) -> &[C64] {
        &self.matrix
    }

    pub fn is_real(&self) -> bool {
        self.matrix.iter().all(|z| z.im == 0.0)
    }

    pub fn frobenius(&self) -> f64 {
        libm::sqrt(self.matrix.iter().map(|z| z.norm_sqr()).sum::<f64>())
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.entry(i, i).re).sum()
    }

    /// `M v`.
    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.entry(i, j) * v[j]).sum())
            .collect()
    }

    /// `<M v, v>` (real for Hermitian `M`).
    pub fn form(&self, v: &[C64]) -> f64 {
        dot(&self.apply(v), v).re
    }

    /// Restricts a function on the group to the base set.
    pub fn restrict(&self, f: &DenseFn) -> Vec<C64> {
        self.base.iter().map(|&x| f.at(x)).collect()
    }
}

/// `<u, v> = sum u_i conj(v_i)`.
pub fn dot(u: &[C64], v: &[C64]) -> C64 {
    u.iter().zip(v).map(|(a, b)| a * b.conj()).sum()
}

fn norm(v: &[C64]) -> f64 {
    libm::sqrt(v.iter().map(|z| z.norm_sqr()).sum::<f64>())
}

/// Rotates `v` so its first largest-modulus component is positive real.
fn normalize_phase(v: &mut [C64]) {
    let max = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if let Some(z) = v.iter().find(|z| z.norm() >= max * (1.0 - 1e-9)).copied() {
        let rot = z.conj() / z.norm();
        for x in v.iter_mut() {
            *x *= rot;
        }
    }
}

/// Full eigen-decomposition. Complex matrices go through the real
/// embedding `[[Re, -Im], [Im, Re]]`, whose eigenvalues come in pairs.
pub fn spectrum(op: &HermOp) -> Result<Spectrum> {
    let n = op.n;
    if n == 0 {
        return Ok(Spectrum {
            eigenvalues: vec![],
            eigenvectors: vec![],
            residual_max: 0.0,
        });
    }
    let (vals, vecs) = if op.is_real() {
        let (ev, v) = jacobi::jacobi(op.matrix.iter().map(|z| z.re).collect(), n)?;
        let vecs: Vec<Vec<C64>> = (0..n)
            .map(|j| (0..n).map(|i| C64::new(v[i * n + j], 0.0)).collect())
            .collect();
        (ev, vecs)
    } else {
        complex_eigen(op)?
    };
    let mut order: Vec<usize> = (0..vals.len()).collect();
    order.sort_by(|&i, &j| vals[j].total_cmp(&vals[i]));
    let mut eigenvalues = Vec::with_capacity(n);
    let mut eigenvectors = Vec::with_capacity(n);
    for i in order {
        let mut v = vecs[i].clone();
        normalize_phase(&mut v);
        eigenvalues.push(vals[i]);
        eigenvectors.push(v);
    }
    let residual_max = eigenvalues
        .iter()
        .zip(&eigenvectors)
        .map(|(&mu, v)| {
            let mv = op.apply(v);
            norm(&mv.iter().zip(v).map(|(a, b)| a - b * mu).collect::<Vec<_>>())
        })
        .fold(0.0, f64::max);
    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
        residual_max,
    })
}

fn complex_eigen(op: &HermOp) -> Result<(Vec<f64>, Vec<Vec<C64>>)> {
    let n = op.n;
    let m = 2 * n;
    let mut big = vec![0.0; m * m];
    for i in 0..n {
        for j in 0..n {
            let z = op.entry(i, j);
            big[i * m + j] = z.re;
            big[i * m + n + j] = -z.im;
            big[(n + i) * m + j] = z.im;
            big[(n + i) * m + n + j] = z.re;
        }
    }
    let (ev, v) = jacobi::jacobi(big, m)?;
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&i, &j| ev[j].total_cmp(&ev[i]));
    let tol = 1e-9 * op.frobenius().max(1.0);
    let mut vals = Vec::with_capacity(n);
    let mut vecs: Vec<Vec<C64>> = Vec::with_capacity(n);
    let mut start = 0;
    while start < m {
        let mut end = start + 1;
        while end < m && ev[order[start]] - ev[order[end]] <= tol {
            end += 1;
        }
        // The cluster holds 2r real vectors spanning r complex dimensions.
        let mut basis: Vec<Vec<C64>> = Vec::new();
        for &c in &order[start..end] {
            let mut z: Vec<C64> = (0..n).map(|i| C64::new(v[i * m + c], v[(n + i) * m + c])).collect();
            for b in &basis {
                let proj = dot(&z, b);
                for (zi, bi) in z.iter_mut().zip(b) {
                    *zi -= proj * bi;
                }
            }
            let len = norm(&z);
            if len > 0.5 {
                for zi in z.iter_mut() {
                    *zi /= len;
                }
                basis.push(z);
            }
        }
        let mean = order[start..end].iter().map(|&c| ev[c]).sum::<f64>() / (end - start) as f64;
        for b in basis {
            vals.push(mean);
            vecs.push(b);
        }
        start = end;
    }
    if vals.len() != n {
        return Err(Error::VerificationFailed("complex eigenvalues did not pair up"));
    }
    Ok((vals, vecs))
}

/// `<M f, f> / ||f||^2` for `f` restricted to the base set.
pub fn rayleigh(op: &HermOp, f: &[C64]) -> Result<f64> {
    if f.len() != op.n {
        return Err(Error::InvalidArgument("vector length must equal |A|"));
    }
    let nn = norm(f);
    if nn == 0.0 {
        return Err(Error::InvalidArgument("zero vector"));
    }
    Ok(op.form(f) / (nn * nn))
}

/// `sum_{x,y,z in A} g1(x - y) conj(g1(x - z)) conj(g2(y - z))` by direct
/// summation; exact on the integer path.
pub fn triangle_sum(a: &GSet, g1: &DenseFn, g2: &DenseFn) -> Result<C64> {
    if a.group() != g1.group() || a.group() != g2.group() {
        return Err(Error::GroupMismatch);
    }
    let n = a.len() as u128;
    check("triple sum over A^3", mul(mul(n, n)?, n)?, TRIPLE_CAP)?;
    let g = a.group();
    let el = a.to_vec();
    if let (Some(u), Some(w)) = (g1.ints(), g2.ints()) {
        let mut total = 0i128;
        for &x in &el {
            for &y in &el {
                let gxy = u[g.sub(x, y).index()];
                if gxy == 0 {
                    continue;
                }
                let mut inner = 0i128;
                for &z in &el {
                    let t = u[g.sub(x, z).index()]
                        .checked_mul(w[g.sub(y, z).index()])
                        .ok_or(Error::Overflow)?;
                    inner = inner.checked_add(t).ok_or(Error::Overflow)?;
                }
                total = inner
                    .checked_mul(gxy)
                    .and_then(|t| total.checked_add(t))
                    .ok_or(Error::Overflow)?;
            }
        }
        return Ok(C64::new(total as f64, 0.0));
    }
    let (u, w) = (g1.to_complex(), g2.to_complex());
    let mut total = C64::new(0.0, 0.0);
    for &x in &el {
        for &y in &el {
            let gxy = u[g.sub(x, y).index()];
            let inner: C64 = el
                .iter()
                .map(|&z| u[g.sub(x, z).index()].conj() * w[g.sub(y, z).index()].conj())
                .sum();
            total += gxy * inner;
        }
    }
    Ok(total)
}

/// `A' = A \ A_1` with `A_1 = {x : ((A * A) ∘ A)(x) > 2 E(A) / |A|}`;
/// `|A'| >= |A| / 2` is verified.
pub fn prune_half(a: &GSet) -> Result<GSet> {
    if a.is_empty() {
        return Ok(a.clone());
    }
    let f = DenseFn::indicator(a);
    let w = f.convolve(&f)?.correlate(&f)?;
    let w = w.ints().expect("integer path");
    let e = energy2(a, a)?;
    let n = a.len() as i128;
    let mut out = a.clone();
    for x in a.iter() {
        // w(x) > 2E/|A|  <=>  w(x) |A| > 2E
        if w[x.index()] * n > 2 * e {
            out.remove(x);
        }
    }
    if 2 * out.len() < a.len() {
        return Err(Error::VerificationFailed("pruned set lost more than half of A"));
    }
    Ok(out)
}

/// A nonnegative unit main eigenvector of a real operator with nonnegative
/// entries: the projection of the all-ones vector onto the top eigenspace.
pub fn perron_vector(op: &HermOp, spec: &Spectrum) -> Result<Vec<f64>> {
    if !op.is_real() || op.matrix.iter().any(|z| z.re < 0.0) {
        return Err(Error::InvalidArgument("Perron vector needs a nonnegative real operator"));
    }
    let n = op.n;
    if n == 0 {
        return Err(Error::EmptySet("operator base"));
    }
    let mu1 = spec.eigenvalues[0];
    let tol = 1e-8 * op.frobenius().max(1.0);
    let ones = vec![C64::new(1.0, 0.0); n];
    let mut p = vec![C64::new(0.0, 0.0); n];
    for (mu, v) in spec.eigenvalues.iter().zip(&spec.eigenvectors) {
        if mu1 - mu > tol {
            break;
        }
        let c = dot(&ones, v);
        for (pi, vi) in p.iter_mut().zip(v) {
            *pi += c * vi;
        }
    }
    let len = norm(&p);
    if len < 1e-12 {
        return Err(Error::VerificationFailed("top eigenspace orthogonal to the ones vector"));
    }
    Ok(p.iter().map(|z| (z.re / len).max(0.0)).collect())
}

/// The spectrum of a `Gamma`-invariant operator on a multiplicative subgroup, read
/// off its character eigenvectors: `mu_alpha = sum_l H(1, g^l) e(alpha l / t)`.
pub fn subgroup_eigensystem(gamma: &MultSubgroup, op: &HermOp) -> Result<Spectrum> {
    let t = gamma.order();
    let m = gamma.modulus();
    if op.base.len() != t {
        return Err(Error::InvalidArgument("operator must live on the subgroup"));
    }
    let pos = |x: u64| op.base.iter().position(|e| e.0 as u64 == x);
    let scale = op.frobenius().max(1.0);
    for &u in gamma.elements() {
        for (i, &x) in op.base.iter().enumerate() {
            for (j, &y) in op.base.iter().enumerate() {
                let (ux, uy) = (u * x.0 as u64 % m, u * y.0 as u64 % m);
                let (Some(a), Some(b)) = (pos(ux), pos(uy)) else {
                    return Err(Error::NotInvariant);
                };
                if (op.entry(a, b) - op.entry(i, j)).norm() > 1e-9 * scale {
                    return Err(Error::NotInvariant);
                }
            }
        }
    }
    let powers = gamma.powers();
    let index: Vec<usize> = powers
        .iter()
        .map(|&x| pos(x).ok_or(Error::NotInvariant))
        .collect::<Result<_>>()?;
    let one = index[0];
    let table = gamma.character_table();
    let mut pairs: Vec<(f64, Vec<C64>)> = (0..t)
        .map(|alpha| {
            // row alpha of the table is f_alpha(g^l) = t^{-1/2} e(alpha l / t)
            let mu: C64 = (0..t)
                .map(|l| op.entry(one, index[l]) * table[alpha][l])
                .sum::<C64>()
                / table[alpha][0];
            let mut v = vec![C64::new(0.0, 0.0); t];
            for l in 0..t {
                v[index[l]] = table[alpha][l];
            }
            (mu.re, v)
        })
        .collect();
    pairs.sort_by(|a, b| b.0.total_cmp(&a.0));
    let residual_max = pairs
        .iter()
        .map(|(mu, v)| {
            let mv = op.apply(v);
            norm(&mv.iter().zip(v).map(|(a, b)| a - b * *mu).collect::<Vec<_>>())
        })
        .fold(0.0, f64::max);
    let (eigenvalues, mut eigenvectors): (Vec<f64>, Vec<Vec<C64>>) = pairs.into_iter().unzip();
    for v in &mut eigenvectors {
        normalize_phase(v);
    }
    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
        residual_max,
    })
}
