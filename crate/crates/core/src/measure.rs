//! Spectral measure of the Markov operator `Δ = (x + x⁻¹ + y + y⁻¹)/4` at
//! `δ_e` for the finite Heisenberg group `H_N`, Chebyshev edge filters, and
//! the edge-mass lower-bound pipeline built on them.

use crate::eigen::symmetric_eigenvalues;
use crate::error::{invalid, Result};
use crate::group::GroupVector;
use crate::reps::{harper_matrix, require_prime, two_cos, is_prime};

/// Largest modulus accepted by default.
pub const DESK_GUARD: u64 = 311;

/// Atoms closer than this are merged.
pub const MERGE_TOL: f64 = 1e-12;

const EDGE_SLACK: f64 = 1e-12;
const C0_GRID: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    pub location: f64,
    pub weight: f64,
}

/// Finite atomic measure on `[−1, 1]`, atoms ascending by location.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomicMeasure {
    atoms: Vec<Atom>,
    modulus: u64,
}

impl AtomicMeasure {
    /// Sorts and merges atoms closer than [`MERGE_TOL`].
    pub fn from_atoms(modulus: u64, mut atoms: Vec<Atom>) -> Self {
        atoms.sort_by(|a, b| a.location.total_cmp(&b.location));
        let mut merged: Vec<Atom> = Vec::with_capacity(atoms.len());
        for a in atoms {
            match merged.last_mut() {
                Some(last) if a.location - last.location <= MERGE_TOL => last.weight += a.weight,
                _ => merged.push(a),
            }
        }
        AtomicMeasure {
            atoms: merged,
            modulus,
        }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.weight).sum()
    }

    pub fn moment(&self, k: usize) -> f64 {
        self.atoms
            .iter()
            .map(|a| a.weight * a.location.powi(k as i32))
            .sum()
    }

    /// `Σ w f(λ)`.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.atoms.iter().map(|a| a.weight * f(a.location)).sum()
    }
}

/// Atoms of the one-dimensional representations: `(2cos(2πα/N) + 2cos(2πβ/N))/4`
/// with weight `1/N³` each. Not normalised.
pub fn abelian_atoms(modulus: u64) -> Vec<Atom> {
    let w = 1.0 / (modulus as f64).powi(3);
    let mut out = Vec::with_capacity((modulus * modulus) as usize);
    for a in 1..=modulus {
        for b in 1..=modulus {
            let location = (two_cos(a % modulus, modulus) + two_cos(b % modulus, modulus)) / 4.0;
            out.push(Atom {
                location,
                weight: w,
            });
        }
    }
    out
}

/// `μ_N` with the default desk guard.
pub fn finite_measure(modulus: u64) -> Result<AtomicMeasure> {
    finite_measure_with_guard(modulus, DESK_GUARD)
}

/// Exact spectral measure of `Δ_N` at `δ_e` in the regular representation
/// of `H_N`: the one-dimensional atoms plus the eigenvalues of every `T_q`
/// (divided by 4) with weight `1/N²`. `T_q` and `T_{N−q}` are isospectral,
/// so only `q ≤ (N−1)/2` is diagonalised.
pub fn finite_measure_with_guard(modulus: u64, guard: u64) -> Result<AtomicMeasure> {
    require_prime(modulus)?;
    if modulus < 3 {
        return Err(invalid(format!("modulus must be at least 3, got {modulus}")));
    }
    if modulus > guard {
        return Err(invalid(format!(
            "modulus {modulus} exceeds the desk guard {guard}"
        )));
    }
    let n = modulus as usize;
    let mut atoms = abelian_atoms(modulus);
    let w = 2.0 / (modulus as f64).powi(2);
    for q in 1..=(n - 1) / 2 {
        let h = harper_matrix(n, q)?;
        for lam in symmetric_eigenvalues(&(&h).into())? {
            atoms.push(Atom {
                location: lam / 4.0,
                weight: w,
            });
        }
    }
    Ok(AtomicMeasure::from_atoms(modulus, atoms))
}

fn check_edge_width(t: f64) -> Result<()> {
    if !(t > 0.0 && t <= 1.0) {
        return Err(invalid(format!("edge width t must lie in (0, 1], got {t}")));
    }
    Ok(())
}

/// `μ(A_t)` for `A_t = [−1, −1+t] ∪ [1−t, 1]`.
pub fn measure_of_edge_set(m: &AtomicMeasure, t: f64) -> Result<f64> {
    check_edge_width(t)?;
    let cut = 1.0 - t - EDGE_SLACK;
    Ok(m.atoms
        .iter()
        .filter(|a| a.location.abs() >= cut)
        .map(|a| a.weight)
        .sum())
}

/// Mass of the one-dimensional atoms alone in `A_t`.
pub fn abelian_edge_mass(modulus: u64, t: f64) -> Result<f64> {
    check_edge_width(t)?;
    let cut = 1.0 - t - EDGE_SLACK;
    Ok(abelian_atoms(modulus)
        .iter()
        .filter(|a| a.location.abs() >= cut)
        .map(|a| a.weight)
        .sum())
}

/// `#{(s, u) : s, u symmetric residues mod N, (s² + u²)/N² ≤ 1/n²}`.
pub fn edge_lattice_count(modulus: u64, n: u64) -> u64 {
    let m = modulus as i64;
    let lo = -((m - 1) / 2);
    let hi = m / 2;
    let (nn, mm) = ((n * n) as i64, m * m);
    let mut count = 0;
    for s in lo..=hi {
        for u in lo..=hi {
            if (s * s + u * u) * nn <= mm {
                count += 1;
            }
        }
    }
    count
}

/// Chebyshev polynomial of the first kind: cosine form on `[−1, 1]`,
/// `½((x + √(x²−1))ⁿ + (x − √(x²−1))ⁿ)` outside.
pub fn chebyshev_t(n: usize, x: f64) -> f64 {
    if x.abs() <= 1.0 {
        return (n as f64 * x.acos()).cos();
    }
    let y = x.abs();
    let r = (y * y - 1.0).sqrt();
    let v = 0.5 * ((y + r).powi(n as i32) + (y - r).powi(n as i32));
    if x < 0.0 && n % 2 == 1 {
        -v
    } else {
        v
    }
}

/// Monomial coefficients of `T_n`, lowest degree first.
pub fn chebyshev_coeffs(n: usize) -> Vec<f64> {
    let mut prev = vec![1.0];
    if n == 0 {
        return prev;
    }
    let mut cur = vec![0.0, 1.0];
    for _ in 1..n {
        let mut next = vec![0.0; cur.len() + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += 2.0 * c;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// `P(x) = T_n(s·x) / T_n(s)` with `s = n^{2−α}/(n^{2−α} − 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChebFilter {
    pub degree: usize,
    pub alpha: f64,
    pub scale: f64,
    /// `1 / T_n(s)`.
    pub norm_c: f64,
}

pub fn cheb_filter(n: usize, alpha: f64) -> Result<ChebFilter> {
    if n < 4 || n % 2 == 1 {
        return Err(invalid(format!("filter degree must be even and >= 4, got {n}")));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(invalid(format!("alpha must lie in (0, 1), got {alpha}")));
    }
    let p = (n as f64).powf(2.0 - alpha);
    let scale = p / (p - 1.0);
    Ok(ChebFilter {
        degree: n,
        alpha,
        scale,
        norm_c: 1.0 / chebyshev_t(n, scale),
    })
}

impl ChebFilter {
    pub fn eval(&self, x: f64) -> f64 {
        chebyshev_t(self.degree, self.scale * x) / chebyshev_t(self.degree, self.scale)
    }

    /// `2e^{−√2 n^{α/2}}`.
    pub fn asymptotic_norm(&self) -> f64 {
        2.0 * (-(2f64.sqrt()) * (self.degree as f64).powf(self.alpha / 2.0)).exp()
    }

    /// `1 − 1/n^{2−α}`.
    pub fn interior_radius(&self) -> f64 {
        1.0 - (self.degree as f64).powf(self.alpha - 2.0)
    }

    /// `1 − 1/n²`.
    pub fn edge_radius(&self) -> f64 {
        1.0 - 1.0 / (self.degree as f64).powi(2)
    }

    /// `max |P|` over `points` equispaced nodes of `[−r, r]`.
    pub fn sup_abs(&self, r: f64, points: usize) -> f64 {
        grid(-r, r, points).map(|x| self.eval(x).abs()).fold(0.0, f64::max)
    }

    pub fn interior_sup(&self, points: usize) -> f64 {
        self.sup_abs(self.interior_radius(), points)
    }

    /// `min P` over `[1 − 1/n², 1]` on a grid; equals the minimum over the
    /// mirrored interval since `P` is even.
    pub fn c0(&self) -> f64 {
        grid(self.edge_radius(), 1.0, C0_GRID + 1)
            .map(|x| self.eval(x))
            .fold(f64::INFINITY, f64::min)
    }

    /// Monomial coefficients of `P`, lowest degree first.
    pub fn coeffs(&self) -> Vec<f64> {
        let denom = chebyshev_t(self.degree, self.scale);
        chebyshev_coeffs(self.degree)
            .iter()
            .enumerate()
            .map(|(k, c)| c * self.scale.powi(k as i32) / denom)
            .collect()
    }
}

fn grid(lo: f64, hi: f64, points: usize) -> impl Iterator<Item = f64> {
    let m = points.max(2) - 1;
    (0..=m).map(move |i| lo + (hi - lo) * i as f64 / m as f64)
}

/// `‖P(Δ_N)δ_e‖² = Σ w P(λ)²`.
pub fn filter_norm_squared(f: &ChebFilter, m: &AtomicMeasure) -> f64 {
    m.integrate(|x| f.eval(x).powi(2))
}

/// `‖P(Δ)δ_e‖²` computed in the group algebra of `H` (or `H_N`) from the
/// three-term recurrence `v_{k+1} = 2sΔv_k − v_{k−1}`.
pub fn filter_norm_squared_on_group(f: &ChebFilter, modulus: Option<u32>) -> f64 {
    let s = f.scale;
    let mut prev = GroupVector::delta(modulus);
    let mut cur = prev.laplace().scale(s);
    for _ in 1..f.degree {
        let next = cur.laplace().combine(2.0 * s, &prev, -1.0);
        prev = cur;
        cur = next;
    }
    cur.norm_squared() / chebyshev_t(f.degree, s).powi(2)
}

/// `Σ_k c_k m_k` where `c` are the coefficients of `P²` and `m_k` the
/// return moments (`moments.len() > 2·degree`).
pub fn filter_norm_squared_from_moments(f: &ChebFilter, moments: &[f64]) -> Result<f64> {
    let c = f.coeffs();
    let need = 2 * f.degree + 1;
    if moments.len() < need {
        return Err(invalid(format!(
            "need {need} moments, got {}",
            moments.len()
        )));
    }
    let mut sq = vec![0.0; need];
    for (i, a) in c.iter().enumerate() {
        for (j, b) in c.iter().enumerate() {
            sq[i + j] += a * b;
        }
    }
    Ok(sq.iter().zip(moments).map(|(a, m)| a * m).sum())
}

/// Smallest prime in `[lo, hi]`.
pub fn smallest_prime_in(lo: u64, hi: u64) -> Option<u64> {
    (lo..=hi).find(|&p| is_prime(p))
}

/// Modulus used for degree `n`: the smallest prime in `[n² + 1, 2n² + 1]`.
pub fn edge_modulus(n: usize) -> Result<u64> {
    let sq = (n * n) as u64;
    smallest_prime_in(sq + 1, 2 * sq + 1)
        .ok_or_else(|| invalid(format!("no prime in [{}, {}]", sq + 1, 2 * sq + 1)))
}

/// Largest even degree whose modulus fits under `guard`.
pub fn max_report_degree(guard: u64) -> usize {
    let mut best = 0;
    let mut n = 4;
    while (n * n + 1) as u64 <= guard {
        if edge_modulus(n).map_or(false, |p| p <= guard) {
            best = n;
        }
        n += 2;
    }
    best
}

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeBoundReport {
    pub n: usize,
    pub alpha: f64,
    /// `1/n²`.
    pub t: f64,
    pub modulus: u64,
    pub c0: f64,
    pub norm_c: f64,
    /// `μ_N(A_t)`.
    pub mu_edge: f64,
    /// `μ_N(A_{t^{1−α}})`.
    pub mu_relaxed: f64,
    /// `‖P(Δ_N)δ_e‖²` from the spectral measure.
    pub norm_squared: f64,
    /// `‖P(Δ)δ_e‖²` on the infinite group.
    pub norm_squared_infinite: f64,
    /// `μ_N(A_{t^{1−α}}) + 1/n⁶`.
    pub lhs: f64,
    /// `c₀ μ_N(A_t)`.
    pub rhs: f64,
    pub upper_ok: bool,
    pub lower_ok: bool,
    pub transfer_ok: bool,
    /// `1/n⁴`.
    pub counting_bound: f64,
    pub counting_ok: bool,
    pub chain_ok: bool,
    /// `c₀ μ_N(A_t) / t^{2+α}`.
    pub c1_estimate: f64,
}

/// Evaluates every link of
/// `μ_N(A_{t^{1−α}}) + 1/n⁶ ≥ ‖P(Δ)δ_e‖² = ‖P(Δ_N)δ_e‖² ≥ c₀ μ_N(A_t)`
/// at `t = 1/n²`, together with the counting bound `μ_N(A_t) ≥ 1/n⁴`.
pub fn edge_bound_report(n: usize, alpha: f64, guard: u64) -> Result<EdgeBoundReport> {
    if n < 4 {
        return Err(invalid(format!("n must be at least 4, got {n}")));
    }
    let filter = cheb_filter(n, alpha)?;
    let modulus = edge_modulus(n)?;
    if modulus > guard {
        return Err(invalid(format!(
            "modulus {modulus} for n={n} exceeds the desk guard {guard}; largest admissible n is {}",
            max_report_degree(guard)
        )));
    }
    let measure = finite_measure_with_guard(modulus, guard)?;
    let nf = n as f64;
    let t = 1.0 / (nf * nf);
    let c0 = filter.c0();
    let mu_edge = measure_of_edge_set(&measure, t)?;
    let mu_relaxed = measure_of_edge_set(&measure, t.powf(1.0 - alpha))?;
    let norm_squared = filter_norm_squared(&filter, &measure);
    let norm_squared_infinite = filter_norm_squared_on_group(&filter, None);
    let lhs = mu_relaxed + nf.powi(-6);
    let rhs = c0 * mu_edge;
    let upper_ok = lhs >= norm_squared;
    let lower_ok = norm_squared >= rhs;
    let transfer_ok = (norm_squared - norm_squared_infinite).abs() <= 1e-10 * norm_squared.max(1.0);
    let counting_bound = nf.powi(-4);
    let counting_ok = mu_edge >= counting_bound;
    Ok(EdgeBoundReport {
        n,
        alpha,
        t,
        modulus,
        c0,
        norm_c: filter.norm_c,
        mu_edge,
        mu_relaxed,
        norm_squared,
        norm_squared_infinite,
        lhs,
        rhs,
        upper_ok,
        lower_ok,
        transfer_ok,
        counting_bound,
        counting_ok,
        chain_ok: upper_ok && lower_ok && transfer_ok,
        c1_estimate: rhs / t.powf(2.0 + alpha),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{moment_to_f64, return_moments};

    #[test]
    fn mass_mean_and_edge_atom() {
        for p in [3u64, 5, 7, 11, 13, 17] {
            let m = finite_measure(p).unwrap();
            assert!((m.total_mass() - 1.0).abs() < 1e-10);
            assert!(m.moment(1).abs() < 1e-10);
            let top = m.atoms().last().unwrap();
            assert!((top.location - 1.0).abs() < 1e-15);
            assert!(top.weight >= 1.0 / (p as f64).powi(3) - 1e-18);
        }
    }

    #[test]
    fn fourth_moment_at_17() {
        let m = finite_measure(17).unwrap();
        assert!((m.moment(4) - 7.0 / 64.0).abs() < 1e-10);
    }

    #[test]
    fn moments_match_walk_counts() {
        for p in [5u64, 7, 11, 13, 31, 53] {
            let m = finite_measure(p).unwrap();
            let dp = return_moments(12, Some(p as u32)).unwrap();
            for (k, exact) in dp.iter().enumerate() {
                let e = moment_to_f64(exact);
                let d = (m.moment(k) - e).abs();
                assert!(d <= 1e-10 * e.max(1e-4), "N={p} k={k} diff={d:e}");
            }
        }
    }

    #[test]
    fn guards() {
        assert!(finite_measure(15).is_err());
        assert!(finite_measure(313).is_err());
        assert!(finite_measure_with_guard(313, 400).is_ok());
        let m = finite_measure(5).unwrap();
        assert!(measure_of_edge_set(&m, 0.0).is_err());
        assert!(measure_of_edge_set(&m, 1.5).is_err());
        assert!((measure_of_edge_set(&m, 1.0).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn chebyshev_forms_agree() {
        for n in 0..12 {
            let c = chebyshev_coeffs(n);
            for x in [-1.7, -1.0, -0.3, 0.0, 0.45, 1.0, 1.2] {
                let h = c.iter().rev().fold(0.0, |acc, v| acc * x + v);
                assert!((h - chebyshev_t(n, x)).abs() < 1e-9 * h.abs().max(1.0), "n={n} x={x}");
            }
        }
    }

    #[test]
    fn filter_conditions() {
        for n in [16, 32, 64] {
            let f = cheb_filter(n, 0.5).unwrap();
            assert_eq!(f.eval(1.0), 1.0);
            assert_eq!(f.eval(-1.0), 1.0);
            assert!(f.sup_abs(1.0, 10_000) <= 1.0 + 1e-12);
            assert!(f.c0() >= 0.1, "n={n} c0={}", f.c0());
        }
        let f = cheb_filter(64, 0.5).unwrap();
        let ratio = f.norm_c / f.asymptotic_norm();
        assert!((0.5..=2.0).contains(&ratio), "{ratio}");
        let mut last = f64::INFINITY;
        for n in (4..=128).step_by(2) {
            let c = cheb_filter(n, 0.5).unwrap().norm_c;
            assert!(c < last);
            last = c;
        }
        assert!(cheb_filter(5, 0.5).is_err());
        assert!(cheb_filter(2, 0.5).is_err());
        assert!(cheb_filter(8, 1.0).is_err());
    }

    #[test]
    fn constant_integrand_gives_total_mass() {
        let m = finite_measure(67).unwrap();
        assert!((m.integrate(|_| 1.0) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn three_routes_to_the_filter_norm() {
        let f = cheb_filter(4, 0.5).unwrap();
        let m = finite_measure(67).unwrap();
        let spectral = filter_norm_squared(&f, &m);
        let dp: Vec<f64> = return_moments(8, None)
            .unwrap()
            .iter()
            .map(moment_to_f64)
            .collect();
        let from_walks = filter_norm_squared_from_moments(&f, &dp).unwrap();
        let spectral_moments: Vec<f64> = (0..=8).map(|k| m.moment(k)).collect();
        let from_spectral = filter_norm_squared_from_moments(&f, &spectral_moments).unwrap();
        let group = filter_norm_squared_on_group(&f, None);
        assert!((spectral - from_walks).abs() < 1e-10);
        assert!((from_spectral - from_walks).abs() < 1e-10);
        assert!((group - from_walks).abs() < 1e-10);
    }

    #[test]
    fn lattice_count_dominates() {
        for n in [8u64, 10, 12] {
            let p = edge_modulus(n as usize).unwrap();
            let count = edge_lattice_count(p, n);
            assert!(count as f64 >= (p * p) as f64 / (n * n) as f64);
        }
    }

    #[test]
    fn abelian_edge_mass_scales_linearly() {
        let masses: Vec<f64> = [0.04, 0.02, 0.01]
            .iter()
            .map(|&t| abelian_edge_mass(149, t).unwrap() / t)
            .collect();
        let (lo, hi) = masses
            .iter()
            .fold((f64::INFINITY, 0.0f64), |(a, b), &m| (a.min(m), b.max(m)));
        assert!(hi / lo <= 3.0, "{masses:?}");
    }

    #[test]
    fn modulus_choice() {
        assert_eq!(edge_modulus(10).unwrap(), 101);
        assert_eq!(edge_modulus(12).unwrap(), 149);
        assert_eq!(edge_modulus(8).unwrap(), 67);
        assert_eq!(max_report_degree(DESK_GUARD), 16);
        assert!(edge_bound_report(18, 0.5, DESK_GUARD).is_err());
        assert!(edge_bound_report(2, 0.5, DESK_GUARD).is_err());
    }

    #[test]
    fn report_lower_link_and_transfer() {
        let r = edge_bound_report(8, 0.5, DESK_GUARD).unwrap();
        assert_eq!(r.modulus, 67);
        assert!(r.lower_ok);
        assert!(r.transfer_ok, "{} vs {}", r.norm_squared, r.norm_squared_infinite);
        assert!(r.c0 > 0.0 && r.mu_edge > 0.0);
    }
}
