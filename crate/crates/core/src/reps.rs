//! Irreducible representations of `H_n` for prime `n` and the image of the
//! Laplace operator `Δ̃ = x + x⁻¹ + y + y⁻¹` in each of them.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};

/// Smallest prime factor of `n` by trial division; `None` when `n` is prime.
/// Values below 2 report themselves.
pub fn smallest_factor(n: u64) -> Option<u64> {
    if n < 2 {
        return Some(n);
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return Some(d);
        }
        d += 1;
    }
    None
}

pub fn is_prime(n: u64) -> bool {
    smallest_factor(n).is_none()
}

pub fn require_prime(n: u64) -> Result<()> {
    match smallest_factor(n) {
        None => Ok(()),
        Some(factor) => Err(Error::NotPrime { n, factor }),
    }
}

/// `2cos(2πr/n)` with `r` folded to `min(r, n − r)`, so that `r` and `n − r`
/// give bit-identical values.
pub(crate) fn two_cos(r: u64, n: u64) -> f64 {
    let r = r % n;
    let r = r.min(n - r);
    2.0 * (TAU * r as f64 / n as f64).cos()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OneDimRep {
    pub alpha: u64,
    pub beta: u64,
}

/// Scalar value of `Δ̃_n` in `T_{α,β}`: `2cos(2πα/n) + 2cos(2πβ/n)`.
pub fn laplace_value(n: u64, rep: OneDimRep) -> Result<f64> {
    if n == 0 || !(1..=n).contains(&rep.alpha) || !(1..=n).contains(&rep.beta) {
        return Err(invalid(format!(
            "need 1 <= alpha, beta <= n, got ({}, {}) for n={n}",
            rep.alpha, rep.beta
        )));
    }
    Ok(two_cos(rep.alpha, n) + two_cos(rep.beta, n))
}

#[derive(Debug, Clone, PartialEq)]
pub struct IrrepTable {
    pub n: u64,
    /// `(α, β, T_{α,β}(Δ̃_n))` for `α, β = 1..n`.
    pub one_dim: Vec<(u64, u64, f64)>,
    /// Indices `q = 1..n−1` of the `n`-dimensional representations `T_q`.
    pub multi_dim: Vec<u64>,
}

impl IrrepTable {
    /// `Σ dim²`, which must equal `|H_n| = n³`.
    pub fn dimension_square_sum(&self) -> u64 {
        self.one_dim.len() as u64 + self.multi_dim.len() as u64 * self.n * self.n
    }
}

pub fn irrep_table(n: u64) -> Result<IrrepTable> {
    require_prime(n)?;
    let mut one_dim = Vec::with_capacity((n * n) as usize);
    for alpha in 1..=n {
        for beta in 1..=n {
            let value = laplace_value(n, OneDimRep { alpha, beta })?;
            one_dim.push((alpha, beta, value));
        }
    }
    Ok(IrrepTable {
        n,
        one_dim,
        multi_dim: (1..n).collect(),
    })
}

/// `T_q(Δ̃_n)`: the periodic Jacobi matrix with diagonal `2cos(2πqj/n)`,
/// unit off-diagonals and unit corners. Only the diagonal is stored.
#[derive(Debug, Clone, PartialEq)]
pub struct HarperMatrix {
    n: usize,
    q: usize,
    diag: Vec<f64>,
}

impl HarperMatrix {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn trace(&self) -> f64 {
        self.diag.iter().sum()
    }

    /// Entry `(i, j)` of the matrix with corner entries `corner`
    /// (`1` for the Harper matrix itself, `-1` for the antiperiodic twin).
    pub fn entry_with_corner(&self, i: usize, j: usize, corner: f64) -> f64 {
        let n = self.n;
        if i == j {
            self.diag[i]
        } else if (i == 0 && j == n - 1) || (j == 0 && i == n - 1) {
            corner
        } else if i.abs_diff(j) == 1 {
            1.0
        } else {
            0.0
        }
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.entry_with_corner(i, j, 1.0)
    }

    /// `y = (A + shift·I) v` in `O(n)`.
    pub fn apply_shifted(&self, v: &[f64], shift: f64, y: &mut [f64]) {
        let n = self.n;
        for j in 0..n {
            let prev = v[(j + n - 1) % n];
            let next = v[(j + 1) % n];
            y[j] = (self.diag[j] + shift) * v[j] + prev + next;
        }
    }
}

pub fn harper_matrix(n: usize, q: usize) -> Result<HarperMatrix> {
    if n < 3 {
        return Err(invalid(format!("Harper matrix needs n >= 3, got {n}")));
    }
    if q == 0 || q >= n {
        return Err(invalid(format!("need 1 <= q <= n-1, got q={q} for n={n}")));
    }
    let (nn, qq) = (n as u64, q as u64);
    let diag = (0..nn).map(|j| two_cos((qq * j) % nn, nn)).collect();
    Ok(HarperMatrix { n, q, diag })
}

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    pub n: usize,
    pub data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(n: usize) -> Self {
        ComplexMatrix {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.n + j] = v;
    }

    pub fn matmul(&self, other: &ComplexMatrix) -> ComplexMatrix {
        let n = self.n;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    /// Conjugate transpose; the inverse for the unitary matrices built here.
    pub fn adjoint(&self) -> ComplexMatrix {
        let n = self.n;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn add(&self, other: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Explicit matrices of `x`, `y`, `z` in `T_q`.
#[derive(Debug, Clone)]
pub struct RepMatrices {
    pub x: ComplexMatrix,
    pub y: ComplexMatrix,
    pub z: ComplexMatrix,
}

/// `T_q` on `ℂⁿ` with basis `u_0..u_{n−1}`: `x` shifts `u_j ↦ u_{j−1}`,
/// `y` is `diag(ω^{qj})`, `z` is `ω^q·I`, where `ω = e^{2πi/n}`.
/// With this shift direction `xyx⁻¹y⁻¹ = z` holds as matrices.
pub fn rep_matrices(n: usize, q: usize) -> Result<RepMatrices> {
    if n < 2 || q == 0 || q >= n {
        return Err(invalid(format!("need n >= 2 and 1 <= q < n, got n={n}, q={q}")));
    }
    let omega = |k: usize| Complex64::from_polar(1.0, TAU * ((k % n) as f64) / n as f64);
    let one = Complex64::new(1.0, 0.0);
    let mut x = ComplexMatrix::zeros(n);
    let mut y = ComplexMatrix::zeros(n);
    let mut z = ComplexMatrix::zeros(n);
    for j in 0..n {
        x.set((j + n - 1) % n, j, one);
        y.set(j, j, omega(q * j));
        z.set(j, j, omega(q));
    }
    Ok(RepMatrices { x, y, z })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert_eq!(smallest_factor(4), Some(2));
        assert_eq!(smallest_factor(91), Some(7));
        assert_eq!(smallest_factor(97), None);
        assert_eq!(smallest_factor(1), Some(1));
        assert!(is_prime(2));
    }

    #[test]
    fn table_counts() {
        let t3 = irrep_table(3).unwrap();
        assert_eq!(t3.one_dim.len(), 9);
        assert_eq!(t3.multi_dim, vec![1, 2]);
        assert_eq!(t3.dimension_square_sum(), 27);
        let t2 = irrep_table(2).unwrap();
        assert_eq!((t2.one_dim.len(), t2.multi_dim.len()), (4, 1));
        assert_eq!(t2.dimension_square_sum(), 8);
        assert_eq!(
            irrep_table(4).unwrap_err(),
            Error::NotPrime { n: 4, factor: 2 }
        );
    }

    #[test]
    fn completeness_up_to_100() {
        for n in (2..=100).filter(|&n| is_prime(n)) {
            assert_eq!(irrep_table(n).unwrap().dimension_square_sum(), n * n * n);
        }
    }

    #[test]
    fn laplace_values() {
        let v = |n, alpha, beta| laplace_value(n, OneDimRep { alpha, beta }).unwrap();
        assert_eq!(v(7, 7, 7), 4.0);
        assert!(v(4, 1, 3).abs() < 1e-15);
        assert!((v(3, 1, 2) + 2.0).abs() < 1e-15);
        assert!(laplace_value(3, OneDimRep { alpha: 0, beta: 1 }).is_err());
        for (_, _, val) in irrep_table(13).unwrap().one_dim {
            assert!((-4.0..=4.0).contains(&val));
        }
    }

    #[test]
    fn harper_small() {
        let h = harper_matrix(3, 1).unwrap();
        let d = h.diag();
        assert_eq!(d[0], 2.0);
        assert!((d[1] + 1.0).abs() < 1e-15 && (d[2] + 1.0).abs() < 1e-15);
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert_eq!(h.entry(i, j), 1.0);
                }
            }
        }
        let h5 = harper_matrix(5, 1).unwrap();
        for (j, &dj) in h5.diag().iter().enumerate() {
            let expected = 2.0 * (TAU * j as f64 / 5.0).cos();
            assert!((dj - expected).abs() < 1e-15);
        }
        assert!(harper_matrix(2, 1).is_err());
        assert!(harper_matrix(5, 5).is_err());
        assert!(harper_matrix(5, 0).is_err());
    }

    #[test]
    fn harper_trace_and_symmetry() {
        for n in 3..60 {
            for q in 1..n {
                let h = harper_matrix(n, q).unwrap();
                assert!(h.trace().abs() < 1e-12, "n={n} q={q}");
                let twin = harper_matrix(n, n - q).unwrap();
                assert_eq!(h.diag(), twin.diag());
                for i in 0..n {
                    for j in 0..n {
                        assert_eq!(h.entry(i, j), h.entry(j, i));
                    }
                }
            }
        }
    }

    #[test]
    fn explicit_rep_is_consistent() {
        for (n, q) in [(3, 1), (5, 2), (7, 3), (11, 10)] {
            let RepMatrices { x, y, z } = rep_matrices(n, q).unwrap();
            let comm = x.matmul(&y).matmul(&x.adjoint()).matmul(&y.adjoint());
            assert!(comm.max_abs_diff(&z) < 1e-12, "commutator n={n} q={q}");
            // z is central
            assert!(x.matmul(&z).max_abs_diff(&z.matmul(&x)) < 1e-12);
            // x + x⁻¹ + y + y⁻¹ is the Harper matrix
            let lap = x.add(&x.adjoint()).add(&y).add(&y.adjoint());
            let h = harper_matrix(n, q).unwrap();
            for i in 0..n {
                for j in 0..n {
                    let e = lap.get(i, j);
                    assert!((e.re - h.entry(i, j)).abs() < 1e-12 && e.im.abs() < 1e-12);
                }
            }
        }
    }
}
