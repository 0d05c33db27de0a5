//! Symmetric eigensolvers for periodic Jacobi matrices.
//!
//! Full spectra come from Householder tridiagonalisation followed by the
//! implicitly shifted QL iteration (EISPACK `tred2`/`tql2` lineage). Maximal
//! eigenvalues of Harper matrices come from power iteration on the entrywise
//! non-negative shift `A + 2I`, whose top eigenvalue is simple by
//! Perron–Frobenius.

use crate::error::{invalid, Error, Result};
use crate::reps::{harper_matrix, require_prime, HarperMatrix};

/// Maximum QL sweeps spent on a single eigenvalue.
const QL_MAX_SWEEPS: usize = 64;

pub const POWER_TOL: f64 = 1e-13;
pub const POWER_RESIDUAL_TOL: f64 = 1e-9;
pub const POWER_MAX_ITERS: usize = 1_000_000;

/// Power-iteration budget in the `q` sweep before switching to the QL solver.
const SWEEP_POWER_ITERS: usize = 50_000;

/// Asymptotic gate for the lemma checks.
pub const DEFAULT_N0: usize = 50;

/// Dense real symmetric matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        SymMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    /// Builds from a closure evaluated on the upper triangle.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = SymMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
        self.data[j * self.n + i] = v;
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.data.iter().all(|&v| v >= 0.0)
    }

    fn mul_vec(&self, v: &[f64], out: &mut [f64]) {
        for (i, o) in out.iter_mut().enumerate() {
            let row = &self.data[i * self.n..(i + 1) * self.n];
            *o = row.iter().zip(v).map(|(a, b)| a * b).sum();
        }
    }
}

impl From<&HarperMatrix> for SymMatrix {
    fn from(h: &HarperMatrix) -> Self {
        SymMatrix::from_fn(h.dim(), |i, j| h.entry(i, j))
    }
}

/// Periodic Jacobi matrix with the Harper diagonal and corners `corner`.
pub fn harper_with_corner(h: &HarperMatrix, corner: f64) -> SymMatrix {
    SymMatrix::from_fn(h.dim(), |i, j| h.entry_with_corner(i, j, corner))
}

/// 0/1 tridiagonal path matrix of size `m` (adjacency matrix of the path graph).
pub fn path_matrix(m: usize) -> SymMatrix {
    SymMatrix::from_fn(m, |i, j| if j == i + 1 { 1.0 } else { 0.0 })
}

/// Closed-form spectrum `{2cos(jπ/(m+1)) : j = 1..m}`, ascending.
pub fn path_spectrum(m: usize) -> Vec<f64> {
    let mut out: Vec<f64> = (1..=m)
        .map(|j| 2.0 * (std::f64::consts::PI * j as f64 / (m as f64 + 1.0)).cos())
        .collect();
    out.sort_by(f64::total_cmp);
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricSpectrum {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// `max_k ‖A v_k − λ_k v_k‖ / ‖A‖₂` over the computed pairs.
    pub residual: f64,
}

impl SymmetricSpectrum {
    pub fn max(&self) -> f64 {
        *self.eigenvalues.last().expect("non-empty spectrum")
    }
}

/// Householder reduction to tridiagonal form. On return `d` holds the
/// diagonal and `e[1..]` the sub-diagonal; `v` holds the orthogonal
/// transformation when `want_vectors` is set.
fn tridiagonalize(v: &mut [f64], n: usize, d: &mut [f64], e: &mut [f64], want_vectors: bool) {
    let at = |i: usize, j: usize| i * n + j;
    for j in 0..n {
        d[j] = v[at(n - 1, j)];
    }
    for i in (1..n).rev() {
        let scale: f64 = d[..i].iter().map(|x| x.abs()).sum();
        let mut h = 0.0;
        if scale == 0.0 {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[at(i - 1, j)];
                v[at(i, j)] = 0.0;
                v[at(j, i)] = 0.0;
            }
        } else {
            for dk in d[..i].iter_mut() {
                *dk /= scale;
                h += *dk * *dk;
            }
            let mut f = d[i - 1];
            let mut g = h.sqrt();
            if f > 0.0 {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for ej in e[..i].iter_mut() {
                *ej = 0.0;
            }
            for j in 0..i {
                f = d[j];
                v[at(j, i)] = f;
                g = e[j] + v[at(j, j)] * f;
                for k in j + 1..i {
                    g += v[at(k, j)] * d[k];
                    e[k] += v[at(k, j)] * f;
                }
                e[j] = g;
            }
            f = 0.0;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                f = d[j];
                g = e[j];
                for k in j..i {
                    v[at(k, j)] -= f * e[k] + g * d[k];
                }
                d[j] = v[at(i - 1, j)];
                v[at(i, j)] = 0.0;
            }
        }
        d[i] = h;
    }

    if !want_vectors {
        for i in 0..n {
            d[i] = v[at(i, i)];
        }
        e[0] = 0.0;
        return;
    }

    for i in 0..n - 1 {
        v[at(n - 1, i)] = v[at(i, i)];
        v[at(i, i)] = 1.0;
        let h = d[i + 1];
        if h != 0.0 {
            for k in 0..=i {
                d[k] = v[at(k, i + 1)] / h;
            }
            for j in 0..=i {
                let mut g = 0.0;
                for k in 0..=i {
                    g += v[at(k, i + 1)] * v[at(k, j)];
                }
                for k in 0..=i {
                    v[at(k, j)] -= g * d[k];
                }
            }
        }
        for k in 0..=i {
            v[at(k, i + 1)] = 0.0;
        }
    }
    for j in 0..n {
        d[j] = v[at(n - 1, j)];
        v[at(n - 1, j)] = 0.0;
    }
    v[at(n - 1, n - 1)] = 1.0;
    e[0] = 0.0;
}

/// Implicit QL with Wilkinson-type shifts on the tridiagonal `(d, e)`.
/// Eigenvalues are left (unsorted) in `d`; rotations are accumulated into `v`
/// when `want_vectors` is set.
fn ql_implicit(
    v: &mut [f64],
    n: usize,
    d: &mut [f64],
    e: &mut [f64],
    want_vectors: bool,
) -> Result<()> {
    let at = |i: usize, j: usize| i * n + j;
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;

    let eps = f64::EPSILON;
    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > eps * tst1 {
            m += 1;
        }
        if m > l {
            let mut sweeps = 0;
            loop {
                sweeps += 1;
                if sweeps > QL_MAX_SWEEPS {
                    return Err(Error::NoConvergence {
                        iterations: sweeps,
                        residual: e[l].abs(),
                    });
                }
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d[l + 2..].iter_mut() {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    if want_vectors {
                        for k in 0..n {
                            let vk1 = v[at(k, i + 1)];
                            let vk = v[at(k, i)];
                            v[at(k, i + 1)] = s * vk + c * vk1;
                            v[at(k, i)] = c * vk - s * vk1;
                        }
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}

/// Eigenvalues (ascending) and orthonormal eigenvectors (`vectors[k]` belongs
/// to `eigenvalues[k]`).
pub fn symmetric_eigen(a: &SymMatrix) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let n = a.dim();
    if n == 0 {
        return Err(invalid("empty matrix"));
    }
    let mut v = a.data.clone();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    tridiagonalize(&mut v, n, &mut d, &mut e, true);
    ql_implicit(&mut v, n, &mut d, &mut e, true)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].total_cmp(&d[j]));
    let values = order.iter().map(|&k| d[k]).collect();
    let vectors = order
        .iter()
        .map(|&k| (0..n).map(|i| v[i * n + k]).collect())
        .collect();
    Ok((values, vectors))
}

/// Eigenvalues only, ascending. Skips all vector accumulation.
pub fn symmetric_eigenvalues(a: &SymMatrix) -> Result<Vec<f64>> {
    let n = a.dim();
    if n == 0 {
        return Err(invalid("empty matrix"));
    }
    let mut v = a.data.clone();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    tridiagonalize(&mut v, n, &mut d, &mut e, false);
    ql_implicit(&mut v, n, &mut d, &mut e, false)?;
    d.sort_by(f64::total_cmp);
    Ok(d)
}

/// Full spectrum of a dense symmetric matrix with residual bookkeeping.
pub fn dense_spectrum(a: &SymMatrix) -> Result<SymmetricSpectrum> {
    let n = a.dim();
    let (values, vectors) = symmetric_eigen(a)?;
    let norm = values.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(f64::MIN_POSITIVE);
    let mut av = vec![0.0; n];
    let mut worst: f64 = 0.0;
    for (lambda, vec) in values.iter().zip(&vectors) {
        a.mul_vec(vec, &mut av);
        let r = av
            .iter()
            .zip(vec)
            .map(|(x, y)| (x - lambda * y).powi(2))
            .sum::<f64>()
            .sqrt();
        worst = worst.max(r);
    }
    Ok(SymmetricSpectrum {
        eigenvalues: values,
        residual: worst / norm,
    })
}

/// All eigenvalues of `T_q(Δ̃_n)`.
pub fn full_spectrum(h: &HarperMatrix) -> Result<SymmetricSpectrum> {
    dense_spectrum(&SymMatrix::from(h))
}

/// Something that can apply `A + shift·I` to a vector.
pub trait ShiftedOperator {
    fn dim(&self) -> usize;
    fn apply_shifted(&self, v: &[f64], shift: f64, out: &mut [f64]);
}

impl ShiftedOperator for HarperMatrix {
    fn dim(&self) -> usize {
        HarperMatrix::dim(self)
    }

    fn apply_shifted(&self, v: &[f64], shift: f64, out: &mut [f64]) {
        HarperMatrix::apply_shifted(self, v, shift, out)
    }
}

impl ShiftedOperator for SymMatrix {
    fn dim(&self) -> usize {
        self.n
    }

    fn apply_shifted(&self, v: &[f64], shift: f64, out: &mut [f64]) {
        self.mul_vec(v, out);
        for (o, x) in out.iter_mut().zip(v) {
            *o += shift * x;
        }
    }
}

/// Power iteration on `A + shift·I` from the all-ones vector. Stops when
/// successive Rayleigh quotients differ by less than [`POWER_TOL`] and the
/// residual `‖Ãv − ρv‖` is below [`POWER_RESIDUAL_TOL`]; returns the top
/// eigenvalue of `A` (the shift removed).
pub fn power_max_eigenvalue<A: ShiftedOperator>(a: &A, shift: f64) -> Result<f64> {
    power_iterate(a, shift, POWER_MAX_ITERS)
}

fn power_iterate<A: ShiftedOperator>(a: &A, shift: f64, max_iters: usize) -> Result<f64> {
    let n = a.dim();
    if n == 0 {
        return Err(invalid("empty matrix"));
    }
    let mut v = vec![1.0 / (n as f64).sqrt(); n];
    let mut w = vec![0.0; n];
    let mut rho_prev = f64::NAN;
    let mut residual = f64::INFINITY;
    for _ in 0..max_iters {
        a.apply_shifted(&v, shift, &mut w);
        let rho: f64 = v.iter().zip(&w).map(|(x, y)| x * y).sum();
        residual = v
            .iter()
            .zip(&w)
            .map(|(x, y)| (y - rho * x).powi(2))
            .sum::<f64>()
            .sqrt();
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Ok(-shift);
        }
        for (vi, wi) in v.iter_mut().zip(&w) {
            *vi = wi / norm;
        }
        if (rho - rho_prev).abs() < POWER_TOL && residual < POWER_RESIDUAL_TOL {
            return Ok(rho - shift);
        }
        rho_prev = rho;
    }
    Err(Error::NoConvergence {
        iterations: max_iters,
        residual,
    })
}

/// Largest eigenvalue of `T_q(Δ̃_n)` by power iteration on `Ã = A + 2I`.
pub fn max_eigenvalue(h: &HarperMatrix) -> Result<f64> {
    power_max_eigenvalue(h, 2.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lemma22Check {
    pub n: usize,
    pub lambda: f64,
    /// `4 − 40/n < λ_n`
    pub lower_ok: bool,
    /// `λ_n < 4 − 2/n`
    pub upper_ok: bool,
}

impl Lemma22Check {
    pub fn bound_low(&self) -> f64 {
        4.0 - 40.0 / self.n as f64
    }

    pub fn bound_high(&self) -> f64 {
        4.0 - 2.0 / self.n as f64
    }

    pub fn passed(&self) -> bool {
        self.lower_ok && self.upper_ok
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lemma23Check {
    pub n: usize,
    pub mu: f64,
    /// `μ_n ≤ 4 − 3/(5n)`
    pub ok: bool,
    pub argmax_q: usize,
}

impl Lemma23Check {
    pub fn bound_high(&self) -> f64 {
        4.0 - 3.0 / (5.0 * self.n as f64)
    }
}

fn lemma_gate(n: usize, n0: usize) -> Result<()> {
    require_prime(n as u64)?;
    if n < n0 {
        return Err(invalid(format!(
            "n={n} is below the asymptotic threshold n0={n0}"
        )));
    }
    Ok(())
}

/// `4 − 40/n < λ_n < 4 − 2/n` for the maximal eigenvalue of `T_1(Δ̃_n)`.
pub fn check_lemma_2_2(n: usize, n0: usize) -> Result<Lemma22Check> {
    lemma_gate(n, n0)?;
    let lambda = max_eigenvalue(&harper_matrix(n, 1)?)?;
    let nf = n as f64;
    Ok(Lemma22Check {
        n,
        lambda,
        lower_ok: 4.0 - 40.0 / nf < lambda,
        upper_ok: lambda < 4.0 - 2.0 / nf,
    })
}

/// Top eigenvalue of `T_q(Δ̃_n)`: power iteration first, and the full QL
/// solver when the top two eigenvalues are too close for the power budget
/// (multi-well diagonals for `q ≥ 2` give splittings around `1e-6`).
pub fn top_eigenvalue(h: &HarperMatrix) -> Result<f64> {
    match power_iterate(h, 2.0, SWEEP_POWER_ITERS) {
        Ok(lambda) => Ok(lambda),
        Err(Error::NoConvergence { .. }) => {
            let values = symmetric_eigenvalues(&SymMatrix::from(h))?;
            Ok(*values.last().expect("n >= 3"))
        }
        Err(e) => Err(e),
    }
}

/// Maximal eigenvalue over `q = 1..n−1` and the `q` attaining it. Only
/// `q ≤ (n−1)/2` is computed since `T_q` and `T_{n−q}` share a spectrum.
pub fn max_over_q(n: usize) -> Result<(f64, usize)> {
    if n < 3 {
        return Err(invalid(format!("need n >= 3, got {n}")));
    }
    let mut best = (f64::NEG_INFINITY, 0);
    for q in 1..=n / 2 {
        let lambda = top_eigenvalue(&harper_matrix(n, q)?)?;
        if lambda > best.0 {
            best = (lambda, q);
        }
    }
    Ok(best)
}

/// `μ_n ≤ 4 − 3/(5n)` where `μ_n` is the maximum over all `T_q`.
pub fn check_lemma_2_3(n: usize, n0: usize) -> Result<Lemma23Check> {
    lemma_gate(n, n0)?;
    let (mu, argmax_q) = max_over_q(n)?;
    Ok(Lemma23Check {
        n,
        mu,
        ok: mu <= 4.0 - 3.0 / (5.0 * n as f64),
        argmax_q,
    })
}
