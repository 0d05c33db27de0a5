//! Characteristic polynomials of Harper matrices through matchings of the
//! weighted cycle graph.
//!
//! Vertex `k` of the cycle carries the weight `x − d_k`, every edge carries
//! `−1`. The matching polynomial `K` sums, over all sets of disjoint edges,
//! the product of edge weights and uncovered vertex weights. Then
//! `det(xI − T_q) = K(x) − 2`, and `K(x)` is also the trace of the product of
//! the 2×2 transfer matrices `[[x − d_k, −1], [1, 0]]`.
//!
//! Coefficient vectors are stored lowest degree first.

use crate::error::{invalid, Error, Result};
use crate::reps::harper_matrix;

/// Largest `n` for which expanded coefficients are produced.
pub const MAX_EXPAND: usize = 64;
/// Largest `n` accepted by the permutation-expansion oracle.
pub const MAX_BRUTE_FORCE: usize = 12;

const RESCALE_EVERY: usize = 32;

/// `K_{n,q}` with optional expanded coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct MatchingPolynomial {
    pub n: usize,
    pub q: usize,
    diag: Vec<f64>,
    pub coefficients: Option<Vec<f64>>,
}

impl MatchingPolynomial {
    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    /// `K(x)` by the transfer-matrix trace.
    pub fn eval(&self, x: f64) -> Result<f64> {
        let (t, log_scale) = transfer_trace(&self.diag, x);
        rescaled(t, log_scale, self.n, self.q)
    }
}

pub fn matching_polynomial(n: usize, q: usize) -> Result<MatchingPolynomial> {
    let h = harper_matrix(n, q)?;
    let coefficients = if n <= MAX_EXPAND {
        Some(matching_poly_coeffs(n, q)?)
    } else {
        None
    };
    Ok(MatchingPolynomial {
        n,
        q,
        diag: h.diag().to_vec(),
        coefficients,
    })
}

pub fn poly_add(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len().max(b.len())];
    for (i, v) in a.iter().enumerate() {
        out[i] += v;
    }
    for (i, v) in b.iter().enumerate() {
        out[i] += v;
    }
    out
}

pub fn poly_scale(a: &[f64], s: f64) -> Vec<f64> {
    a.iter().map(|v| v * s).collect()
}

pub fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Horner evaluation of a lowest-degree-first coefficient vector.
pub fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

/// Matching polynomial of the weighted path on the given vertex weights
/// `x − d_k`, by `p_k = (x − d_k) p_{k−1} − p_{k−2}`.
fn path_matching_poly(d: &[f64]) -> Vec<f64> {
    let mut prev: Vec<f64> = Vec::new();
    let mut cur: Vec<f64> = vec![1.0];
    for &dk in d {
        let next = poly_add(&poly_mul(&[-dk, 1.0], &cur), &poly_scale(&prev, -1.0));
        prev = cur;
        cur = next;
    }
    cur
}

/// Expanded coefficients of `K_{n,q}`: matchings avoiding the closing edge
/// `(n−1, 0)` are matchings of the path `0..n−1`; those using it contribute
/// `−1` times the matchings of the path `1..n−2`.
pub fn matching_poly_coeffs(n: usize, q: usize) -> Result<Vec<f64>> {
    if !(3..=MAX_EXPAND).contains(&n) {
        return Err(invalid(format!(
            "coefficient expansion needs 3 <= n <= {MAX_EXPAND}, got {n}"
        )));
    }
    let h = harper_matrix(n, q)?;
    let d = h.diag();
    let open = path_matching_poly(d);
    let closed = path_matching_poly(&d[1..n - 1]);
    Ok(poly_add(&open, &poly_scale(&closed, -1.0)))
}

/// Expanded coefficients of `P_{n,q}(x) = det(xI − T_q)`.
pub fn charpoly_coeffs(n: usize, q: usize) -> Result<Vec<f64>> {
    let mut k = matching_poly_coeffs(n, q)?;
    k[0] -= 2.0;
    Ok(k)
}

/// Trace of `M_{n−1}···M_0` as `(mantissa, log_scale)` with the value equal
/// to `mantissa · e^{log_scale}`.
pub fn transfer_trace(diag: &[f64], x: f64) -> (f64, f64) {
    // [[a, b], [c, d]]
    let (mut a, mut b, mut c, mut d) = (1.0f64, 0.0f64, 0.0f64, 1.0f64);
    let mut log_scale = 0.0f64;
    for (k, &dk) in diag.iter().enumerate() {
        let w = x - dk;
        let (na, nb) = (w * a - c, w * b - d);
        c = a;
        d = b;
        a = na;
        b = nb;
        if (k + 1) % RESCALE_EVERY == 0 {
            let m = a.abs().max(b.abs()).max(c.abs()).max(d.abs());
            if m > 0.0 && m.is_finite() {
                a /= m;
                b /= m;
                c /= m;
                d /= m;
                log_scale += m.ln();
            }
        }
    }
    (a + d, log_scale)
}

fn rescaled(mantissa: f64, log_scale: f64, n: usize, q: usize) -> Result<f64> {
    let v = if mantissa == 0.0 {
        0.0
    } else {
        mantissa * log_scale.exp()
    };
    if !v.is_finite() {
        return Err(Error::Overflow(format!("P_{{{n},{q}}}")));
    }
    Ok(v)
}

/// `P_{n,q}(x) = det(xI − T_q(Δ̃_n))`.
pub fn charpoly_eval(n: usize, q: usize, x: f64) -> Result<f64> {
    let h = harper_matrix(n, q)?;
    let (t, log_scale) = transfer_trace(h.diag(), x);
    // the −2 is negligible once the trace is out of range
    if log_scale > 700.0 {
        return rescaled(t, log_scale, n, q);
    }
    Ok(rescaled(t, log_scale, n, q)? - 2.0)
}

fn sign(v: f64) -> f64 {
    if v == 0.0 {
        0.0
    } else {
        v.signum()
    }
}

/// Sign (`−1`, `0` or `1`) of `P_{n,q}(x) − shift`, robust against overflow
/// of `P` itself.
pub fn charpoly_sign(diag: &[f64], x: f64, shift: f64) -> f64 {
    let (t, log_scale) = transfer_trace(diag, x);
    if log_scale > 700.0 {
        return sign(t);
    }
    let v = t * log_scale.exp() - 2.0 - shift;
    if v.is_finite() {
        sign(v)
    } else {
        sign(t)
    }
}

/// `det(xI − A)` for the Harper matrix with corner entries `corner`, by
/// expanding the Leibniz sum over permutations with `σ(i) ∈ {i−1, i, i+1}`
/// (indices mod n), the only ones with non-zero products.
pub fn brute_force_with_corner(n: usize, q: usize, corner: f64) -> Result<Vec<f64>> {
    if n > MAX_BRUTE_FORCE {
        return Err(invalid(format!(
            "brute-force determinant limited to n <= {MAX_BRUTE_FORCE}, got {n}"
        )));
    }
    let h = harper_matrix(n, q)?;
    // entry (i, j) of xI − A as a polynomial
    let entry = |i: usize, j: usize| -> Vec<f64> {
        if i == j {
            vec![-h.diag()[i], 1.0]
        } else {
            vec![-h.entry_with_corner(i, j, corner)]
        }
    };
    let mut total = vec![0.0; n + 1];
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    leibniz(0, n, &entry, &mut perm, &mut used, vec![1.0], &mut total);
    Ok(total)
}

fn leibniz(
    row: usize,
    n: usize,
    entry: &dyn Fn(usize, usize) -> Vec<f64>,
    perm: &mut [usize],
    used: &mut [bool],
    acc: Vec<f64>,
    total: &mut Vec<f64>,
) {
    if row == n {
        let s = permutation_sign(perm);
        for (t, a) in total.iter_mut().zip(&acc) {
            *t += s * a;
        }
        return;
    }
    for col in [(row + n - 1) % n, row, (row + 1) % n] {
        if used[col] {
            continue;
        }
        let e = entry(row, col);
        if e.iter().all(|&v| v == 0.0) {
            continue;
        }
        used[col] = true;
        perm[row] = col;
        let mut next = poly_mul(&acc, &e);
        next.resize(n + 1, 0.0);
        leibniz(row + 1, n, entry, perm, used, next, total);
        used[col] = false;
    }
}

/// `(−1)^{n − #cycles}`.
fn permutation_sign(perm: &[usize]) -> f64 {
    let mut seen = vec![false; perm.len()];
    let mut cycles = 0;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
        }
    }
    if (perm.len() - cycles) % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Coefficients of `det(xI − T_q(Δ̃_n))` from the permutation expansion.
pub fn brute_force_charpoly(n: usize, q: usize) -> Result<Vec<f64>> {
    brute_force_with_corner(n, q, 1.0)
}
