//! Cross-module invariant suite behind `heisenspec verify`.

use num_complex::Complex64;

use crate::butterfly::{bands, gcd, Band};
use crate::charpoly::{brute_force_charpoly, charpoly_coeffs, charpoly_eval, horner, matching_polynomial};
use crate::eigen::{
    check_lemma_2_2, check_lemma_2_3, dense_spectrum, full_spectrum, max_eigenvalue, path_matrix,
    path_spectrum, symmetric_eigenvalues, SymMatrix,
};
use crate::error::Result;
use crate::group::{
    moment_to_f64, return_moments, verify_moment_transfer, GroupElement, WalkState,
};
use crate::measure::{
    abelian_edge_mass, cheb_filter, edge_bound_report, filter_norm_squared_on_group,
    finite_measure_with_guard, measure_of_edge_set, smallest_prime_in,
};
use crate::reps::{harper_matrix, irrep_table, is_prime, rep_matrices};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Quick,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteConfig {
    pub level: Level,
    pub n0: usize,
    pub desk_guard: u64,
    /// Adds `1e-3` to one eigenvalue before the root-consistency check.
    pub tamper_eigen: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Check = fn(&SuiteConfig) -> Result<(bool, String)>;

fn primes(lo: usize, hi: usize) -> impl Iterator<Item = usize> {
    (lo..=hi).filter(|&p| is_prime(p as u64))
}

fn pick<T>(cfg: &SuiteConfig, quick: T, full: T) -> T {
    match cfg.level {
        Level::Quick => quick,
        Level::Full => full,
    }
}

fn group_laws(_: &SuiteConfig) -> Result<(bool, String)> {
    let mut bad = 0;
    for modulus in [None, Some(7), Some(101)] {
        for i in 0..1000i64 {
            let e = |k: i64| (i * k + 17 * k * k) % 101 - 50;
            let f = |a, b, c| match modulus {
                Some(m) => GroupElement::with_modulus(a, b, c, m),
                None => Ok(GroupElement::new(a, b, c)),
            };
            let g = f(e(3), e(5), e(7))?;
            let h = f(e(11), e(13), e(17))?;
            let k = f(e(19), e(23), e(29))?;
            let left = g.multiply(&h)?.multiply(&k)?;
            let right = g.multiply(&h.multiply(&k)?)?;
            if left != right || !g.multiply(&g.inverse())?.is_identity() {
                bad += 1;
            }
        }
    }
    Ok((bad == 0, format!("{bad} violations in 3000 triples")))
}

fn walk_totals(cfg: &SuiteConfig) -> Result<(bool, String)> {
    let kmax = pick(cfg, 16, 30);
    let mut s = WalkState::origin(None);
    let mut ok = true;
    for k in 1..=kmax {
        s = s.walk_step();
        ok &= s.total() == 1u128 << (2 * k);
    }
    Ok((ok, format!("k <= {kmax}")))
}

fn walk_support(cfg: &SuiteConfig) -> Result<(bool, String)> {
    let kmax = pick(cfg, 12, 20);
    let mut s = WalkState::origin(None);
    let mut ok = true;
    for k in 1..=kmax as i64 {
        s = s.walk_step();
        ok &= s
            .entries()
            .iter()
            .all(|(g, _)| g.a.abs() <= k && g.b.abs() <= k && 2 * g.c.abs() <= k * k);
    }
    Ok((ok, format!("k <= {kmax}")))
}

fn odd_moments(cfg: &SuiteConfig) -> Result<(bool, String)> {
    let kmax = pick(cfg, 17, 29);
    let m = return_moments(kmax, None)?;
    let ok = m.iter().skip(1).step_by(2).all(|v| *v.numer() == 0);
    Ok((ok, format!("k <= {kmax}")))
}

fn moment_anchors(_: &SuiteConfig) -> Result<(bool, String)> {
    let m = return_moments(4, None)?;
    let ok = m[2] == crate::group::Moment::new(1, 4) && m[4] == crate::group::Moment::new(7, 64);
    Ok((ok, format!("m2 = {}, m4 = {}", m[2], m[4])))
}

fn moment_transfer(_: &SuiteConfig) -> Result<(bool, String)> {
    let mut ok = true;
    for n in 2..=8 {
        ok &= verify_moment_transfer(n)?;
    }
    Ok((ok, "n = 2..8 with N = n^2 + 1".into()))
}

fn spectral_moments(cfg: &SuiteConfig) -> Result<(bool, String)> {
    let list: Vec<usize> = pick(cfg, vec![17, 101], primes(3, 150).collect());
    let mut worst = 0.0f64;
    for &p in &list {
        let m = finite_measure_with_guard(p as u64, cfg.desk_guard)?;
        let dp = return_moments(12, Some(p as u32))?;
        worst = worst.max((m.total_mass() - 1.0).abs()).max(m.moment(1).abs());
        for (k, exact) in dp.iter().enumerate() {
            let e = moment_to_f64(exact);
            worst = worst.max((m.moment(k) - e).abs() / e.max(1e-4));
        }
    }
    Ok((worst <= 1e-10, format!("{} moduli, worst {worst:.3e}", list.len())))
}

fn spectral_transfer(_: &SuiteConfig) -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for n in 3..=8u64 {
        let p = smallest_prime_in(n * n + 1, 2 * n * n + 1).expect("prime exists");
        let m = finite_measure_with_guard(p, p)?;
        let dp = return_moments(n as usize, None)?;
        for (k, exact) in dp.iter().enumerate() {
            worst = worst.max((m.moment(k) - moment_to_f64(exact)).abs());
        }
    }
    Ok((worst <= 1e-10, format!("worst {worst:.3e}")))
}

fn completeness(_: &SuiteConfig) -> Result<(bool, String)> {
    let mut ok = true;
    for p in primes(2, 100) {
        let t = irrep_table(p as u64)?;
        ok &= t.dimension_square_sum() == (p as u64).pow(3);
    }
    Ok((ok, "primes <= 100".into()))
}

fn commutator(_: &SuiteConfig) -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for (n, q) in [(3, 1), (5, 2), (7, 3), (11, 5)] {
        let r = rep_matrices(n, q)?;
        let c = r.x.matmul(&r.y).matmul(&r.x.adjoint()).matmul(&r.y.adjoint());
        worst = worst.max(c.max_abs_diff(&r.z));
        let expect = Complex64::from_polar(1.0, std::f64::consts::TAU * q as f64 / n as f64);
        worst = worst.max((r.z.get(0, 0) - expect).norm());
    }
    Ok((worst < 1e-12, format!("worst {worst:.3e}")))
}

fn harper_symmetry(_: &SuiteConfig) -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for n in primes(3, 50) {
        for q in 1..n {
            let a = full_spectrum(&harper_matrix(n, q)?)?;
            let b = full_spectrum(&harper_matrix(n, n - q)?)?;
            for (x, y) in a.eigenvalues.iter().zip(&b.eigenvalues) {
                worst = worst.max((x - y).abs());
            }
        }
    }
    Ok((worst <= 1e-10, format!("worst {worst:.3e}")))
}

fn spectrum_in_range(_: &SuiteConfig) -> Result<(bool, String)> {
    let mut ok = true;
    for n in primes(3, 50) {
        for q in 1..n {
            let s = full_spectrum(&harper_matrix(n, q)?)?;
            ok &= s.eigenvalues.iter().all(|l| l.abs() <= 4.0);
            ok &= s.eigenvalues.iter().sum::<f64>().abs() <= 1e-9 * n as f64;
        }
    }
    Ok((ok, "primes <= 50".into()))
}

fn path_oracle(_: &SuiteConfig) -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for m in 1..=60 {
        let got = symmetric_eigenvalues(&path_matrix(m))?;
        for (x, y) in got.iter().zip(path_spectrum(m)) {
            worst = worst.max((x - y).abs());
        }
    }
    Ok((worst <= 1e-10, format!("m <= 60, worst {worst:.3e}")))
}

fn residuals(cfg: &SuiteConfig) -> Result<(bool, String)> {
    let nmax = pick(cfg, 101, 401);
    let mut worst = 0.0f64;
    for n in primes(3, nmax).step_by(5) {
        worst = worst.max(full_spectrum(&harper_matrix(n, 1)?)?.residual);
    }
    Ok((worst <= 1e-10, format!("worst {worst:.3e}")))
}

fn unit_noise(i: usize, j: usize, salt: usize) -> f64 {
    let v = ((i * 131 + j * 71 + salt * 29) as f64 * 12.9898).sin() * 43758.5453;
    v - v.floor()
}

fn perron_monotonicity(_: &SuiteConfig) -> Result<(bool, String)> {
    let mut ok = true;
    for pair in 0..50 {
        let n = 4 + pair % 7;
        let a = SymMatrix::from_fn(n, |i, j| unit_noise(i, j, pair));
        let b = SymMatrix::from_fn(n, |i, j| a.get(i, j) + unit_noise(j, i, pair + 1000));
        let top = |m: &SymMatrix| symmetric_eigenvalues(m).map(|v| *v.last().expect("n >= 4"));
        ok &= top(&a)? <= top(&b)? + 1e-12;
    }
    Ok((ok, "50 ordered pairs".into()))
}

fn root_consistency(cfg: &SuiteConfig) -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for n in primes(3, 31) {
        for q in 1..n {
            let c = charpoly_coeffs(n, q)?;
            let mut eig = full_spectrum(&harper_matrix(n, q)?)?.eigenvalues;
            if cfg.tamper_eigen && n == 7 && q == 1 {
                eig[0] += 1e-3;
            }
            let abs: Vec<f64> = c.iter().map(|v| v.abs()).collect();
            for lam in eig {
                let p = charpoly_eval(n, q, lam)?;
                worst = worst.max(p.abs() / horner(&abs, lam.abs()).max(1.0));
            }
        }
    }
    Ok((worst <= 1e-6, format!("primes <= 31, worst scaled |P| {worst:.3e}")))
}

fn top_gap(cfg: &SuiteConfig) -> Result<(bool, String)> {
    let nmax = pick(cfg, 101, 199);
    let mut smallest = f64::INFINITY;
    for n in primes(3, nmax) {
        let e = full_spectrum(&harper_matrix(n, 1)?)?.eigenvalues;
        smallest = smallest.min(e[n - 1] - e[n - 2]);
    }
    Ok((smallest > 0.0, format!("min gap {smallest:.3e}")))
}

fn matching_identity(_: &SuiteConfig) -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for n in 3..=12 {
        for q in 1..n {
            let a = charpoly_coeffs(n, q)?;
            let b = brute_force_charpoly(n, q)?;
            for (x, y) in a.iter().zip(&b) {
                worst = worst.max((x - y).abs());
            }
        }
    }
    let p31 = charpoly_coeffs(3, 1)?;
    let exact = [-4.0, -6.0, 0.0, 1.0];
    let ok31 = p31.iter().zip(exact).all(|(a, b)| (a - b).abs() < 1e-12);
    Ok((worst <= 1e-9 && ok31, format!("n = 3..12, worst {worst:.3e}")))
}

fn transfer_vs_horner(_: &SuiteConfig) -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for n in 3..=40 {
        let q = 1 + n % (n - 1);
        let mp = matching_polynomial(n, q)?;
        let k = mp.coefficients.clone().expect("n <= 64");
        let abs: Vec<f64> = k.iter().map(|v| v.abs()).collect();
        for i in 0..100 {
            let x = -5.0 + 10.0 * unit_noise(n, i, 7);
            let h = horner(&k, x);
            let scale = h.abs().max(1e-4 * horner(&abs, x.abs()));
            worst = worst.max((mp.eval(x)? - h).abs() / scale);
        }
    }
    Ok((worst <= 1e-8, format!("n <= 40, worst {worst:.3e}")))
}

fn coprime_fluxes(nmax: usize) -> impl Iterator<Item = (usize, usize)> {
    (3..=nmax).flat_map(|n| (1..n).filter(move |&q| gcd(n, q) == 1).map(move |q| (n, q)))
}

fn derivative(c: &[f64]) -> Vec<f64> {
    c.iter().enumerate().skip(1).map(|(k, v)| k as f64 * v).collect()
}

/// Each of the `n` bands has one endpoint at a root of `P` and the other at
/// a root of `P + 4`, up to an absolute error of `1e-12` in the endpoint.
fn band_roots(cfg: &SuiteConfig) -> Result<(bool, String)> {
    let nmax = pick(cfg, 30, 60);
    let mut bad = 0;
    for (n, q) in coprime_fluxes(nmax) {
        let b = bands(n, q)?;
        let c = charpoly_coeffs(n, q)?;
        let dc = derivative(&c);
        let abs: Vec<f64> = c.iter().map(|v| v.abs()).collect();
        let near = |e: f64, shift: f64| -> Result<bool> {
            let p = charpoly_eval(n, q, e)? + shift;
            let tol = 1e-6 * horner(&abs, e.abs()).max(1.0) + 1e-12 * horner(&dc, e).abs();
            Ok(p.abs() <= tol)
        };
        bad += usize::from(b.len() != n);
        for x in &b {
            let straight = near(x.lower, 0.0)? && near(x.upper, 4.0)?;
            let crossed = near(x.lower, 4.0)? && near(x.upper, 0.0)?;
            bad += usize::from(!(straight || crossed));
        }
    }
    Ok((bad == 0, format!("n <= {nmax}, {bad} bad bands")))
}

fn band_geometry(cfg: &SuiteConfig) -> Result<(bool, String)> {
    let nmax = pick(cfg, 30, 60);
    let mut ok = true;
    for (n, q) in coprime_fluxes(nmax) {
        let b = bands(n, q)?;
        let total: f64 = b.iter().map(Band::width).sum();
        ok &= total > 0.0 && total <= 8.0;
        ok &= b.iter().all(|x| x.lower >= -4.0 && x.upper <= 4.0 && x.lower <= x.upper);
        ok &= b.windows(2).all(|w| w[0].upper <= w[1].lower + 1e-9);
        let spec = full_spectrum(&harper_matrix(n, q)?)?;
        ok &= spec
            .eigenvalues
            .iter()
            .all(|&l| b.iter().any(|x| x.contains(l, 1e-9)));
    }
    Ok((ok, format!("n <= {nmax}")))
}

fn band_symmetry(cfg: &SuiteConfig) -> Result<(bool, String)> {
    let nmax = pick(cfg, 30, 60);
    let mut worst = 0.0f64;
    for (n, q) in coprime_fluxes(nmax) {
        for (x, y) in bands(n, q)?.iter().zip(&bands(n, n - q)?) {
            worst = worst.max((x.lower - y.lower).abs()).max((x.upper - y.upper).abs());
        }
    }
    Ok((worst <= 1e-10, format!("worst {worst:.3e}")))
}

fn band_closed_form(_: &SuiteConfig) -> Result<(bool, String)> {
    let (s3, s6) = (3f64.sqrt(), 6f64.sqrt());
    let expected = [(-s6, -2.0), (1.0 - s3, 0.0), (s6, 1.0 + s3)];
    let got = bands(3, 1)?;
    let worst = got
        .iter()
        .zip(expected)
        .map(|(b, (lo, hi))| (b.lower - lo).abs().max((b.upper - hi).abs()))
        .fold(0.0, f64::max);
    Ok((worst <= 1e-9, format!("worst {worst:.3e}")))
}

fn even_touching(_: &SuiteConfig) -> Result<(bool, String)> {
    let mut failing = Vec::new();
    for n in (4..=20).step_by(2) {
        for q in (1..n).filter(|&q| gcd(n, q) == 1) {
            let b = bands(n, q)?;
            if b[n / 2 - 1].upper.abs() > 1e-9 || b[n / 2].lower.abs() > 1e-9 {
                failing.push(format!("{q}/{n}"));
            }
        }
    }
    let detail = if failing.is_empty() {
        "even n = 4..20".to_string()
    } else {
        format!("no common vertex 0 at {}", failing.join(","))
    };
    Ok((failing.is_empty(), detail))
}

fn lemma_2_2(cfg: &SuiteConfig) -> Result<(bool, String)> {
    let nmax = pick(cfg, 199, 499);
    let mut bad = Vec::new();
    for n in primes(cfg.n0.max(53), nmax) {
        if !check_lemma_2_2(n, cfg.n0)?.passed() {
            bad.push(n);
        }
    }
    Ok((bad.is_empty(), format!("primes {}..{nmax}, failing {bad:?}", cfg.n0.max(53))))
}

fn lemma_2_3(cfg: &SuiteConfig) -> Result<(bool, String)> {
    let nmax = pick(cfg, 101, 199);
    let mut bad = Vec::new();
    let mut not_q1 = 0;
    for n in primes(cfg.n0.max(53), nmax) {
        let c = check_lemma_2_3(n, cfg.n0)?;
        if !c.ok {
            bad.push(n);
        }
        not_q1 += usize::from(c.argmax_q != 1);
    }
    Ok((
        bad.is_empty(),
        format!("primes {}..{nmax}, failing {bad:?}, argmax q != 1 for {not_q1}", cfg.n0.max(53)),
    ))
}

fn edge_slope(cfg: &SuiteConfig) -> Result<(bool, String)> {
    let (n, lo, hi) = pick(cfg, (997, 6.1, 6.5), (1000, 6.2, 6.4));
    let lambda = max_eigenvalue(&harper_matrix(n, 1)?)?;
    let slope = (4.0 - lambda) * n as f64;
    Ok(((lo..=hi).contains(&slope), format!("n={n}: (4 - lambda) n = {slope:.6}")))
}

fn power_vs_dense(_: &SuiteConfig) -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for n in primes(3, 61) {
        let h = harper_matrix(n, 1)?;
        worst = worst.max((max_eigenvalue(&h)? - dense_spectrum(&(&h).into())?.max()).abs());
    }
    Ok((worst <= 1e-10, format!("worst {worst:.3e}")))
}

fn filter_conditions(_: &SuiteConfig) -> Result<(bool, String)> {
    let mut ok = true;
    let mut sup = 0.0f64;
    for n in [16, 32, 64] {
        let f = cheb_filter(n, 0.5)?;
        ok &= f.eval(1.0) == 1.0 && f.eval(-1.0) == 1.0;
        sup = sup.max(f.sup_abs(1.0, 10_000));
    }
    Ok((ok && sup <= 1.0 + 1e-12, format!("sup |P| = {sup:.15}")))
}

fn filter_norm(_: &SuiteConfig) -> Result<(bool, String)> {
    let mut ok = true;
    let mut last = f64::INFINITY;
    for n in (4..=128).step_by(2) {
        let c = cheb_filter(n, 0.5)?.norm_c;
        ok &= c < last;
        last = c;
    }
    let f = cheb_filter(64, 0.5)?;
    let ratio = f.norm_c / f.asymptotic_norm();
    ok &= (0.5..=2.0).contains(&ratio);
    Ok((ok, format!("decreasing in n, C_64 / asymptotic = {ratio:.4}")))
}

fn filter_decay(_: &SuiteConfig) -> Result<(bool, String)> {
    let f = cheb_filter(64, 0.5)?;
    let sup = f.interior_sup(10_000);
    Ok((sup <= 1e-6, format!("n=64: interior sup {sup:.4e} vs 1e-6")))
}

fn filter_floor(_: &SuiteConfig) -> Result<(bool, String)> {
    let worst = [16, 32, 64]
        .iter()
        .map(|&n| cheb_filter(n, 0.5).map(|f| f.c0()))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    Ok((worst >= 0.1, format!("min c0 {worst:.4}")))
}

const CHAIN_CASES: [(usize, f64); 6] = [(8, 0.3), (8, 0.5), (10, 0.3), (10, 0.5), (12, 0.3), (12, 0.5)];

fn chain(cfg: &SuiteConfig) -> Result<(bool, String)> {
    let mut failing = Vec::new();
    for (n, a) in CHAIN_CASES {
        let r = edge_bound_report(n, a, cfg.desk_guard)?;
        if !(r.upper_ok && r.lower_ok) {
            failing.push(format!("({n},{a}): {:.3e} <= {:.3e} <= {:.3e}", r.rhs, r.norm_squared, r.lhs));
        }
    }
    Ok((failing.is_empty(), format!("failing {}", failing.join("; "))))
}

fn norm_transfer(cfg: &SuiteConfig) -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for (n, a) in CHAIN_CASES {
        let r = edge_bound_report(n, a, cfg.desk_guard)?;
        worst = worst.max((r.norm_squared - r.norm_squared_infinite).abs());
    }
    let f = cheb_filter(4, 0.5)?;
    let m = finite_measure_with_guard(67, cfg.desk_guard)?;
    let spectral = crate::measure::filter_norm_squared(&f, &m);
    worst = worst.max((spectral - filter_norm_squared_on_group(&f, None)).abs());
    Ok((worst <= 1e-10, format!("worst {worst:.3e}")))
}

fn counting(cfg: &SuiteConfig) -> Result<(bool, String)> {
    let mut failing = Vec::new();
    for n in [8usize, 10, 12] {
        let r = edge_bound_report(n, 0.5, cfg.desk_guard)?;
        if !r.counting_ok {
            failing.push(format!("n={n}: {:.3e} < {:.3e}", r.mu_edge, r.counting_bound));
        }
    }
    Ok((failing.is_empty(), format!("failing {}", failing.join("; "))))
}

fn abelian_scaling(cfg: &SuiteConfig) -> Result<(bool, String)> {
    let ratios = [0.04, 0.02, 0.01]
        .iter()
        .map(|&t| abelian_edge_mass(149, t).map(|m| m / t))
        .collect::<Result<Vec<_>>>()?;
    let lo = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = ratios.iter().copied().fold(0.0, f64::max);
    let m = finite_measure_with_guard(149, cfg.desk_guard)?;
    let full = measure_of_edge_set(&m, 1.0)?;
    Ok((hi / lo <= 3.0 && (full - 1.0).abs() < 1e-10, format!("spread {:.3}", hi / lo)))
}

/// Both levels run every invariant; `Full` uses the larger parameter ranges.
const SUITE: &[(&str, Check)] = &[
    ("group.associativity_inverse", group_laws),
    ("group.walk_total", walk_totals),
    ("group.walk_support_bound", walk_support),
    ("group.odd_moments_vanish", odd_moments),
    ("group.moment_anchors", moment_anchors),
    ("group.moment_transfer", moment_transfer),
    ("reps.completeness", completeness),
    ("reps.commutator", commutator),
    ("reps.harper_q_symmetry", harper_symmetry),
    ("reps.spectrum_in_range", spectrum_in_range),
    ("eigen.path_oracle", path_oracle),
    ("eigen.residual", residuals),
    ("eigen.perron_monotonicity", perron_monotonicity),
    ("eigen.power_vs_dense", power_vs_dense),
    ("eigen.top_gap_positive", top_gap),
    ("eigen.lemma_lower_upper_lambda", lemma_2_2),
    ("eigen.lemma_mu_bound", lemma_2_3),
    ("eigen.edge_slope", edge_slope),
    ("charpoly.matching_identity", matching_identity),
    ("charpoly.root_consistency", root_consistency),
    ("charpoly.transfer_vs_horner", transfer_vs_horner),
    ("butterfly.closed_form", band_closed_form),
    ("butterfly.root_counts", band_roots),
    ("butterfly.geometry_containment", band_geometry),
    ("butterfly.q_symmetry", band_symmetry),
    ("butterfly.even_common_vertex", even_touching),
    ("measure.moments", spectral_moments),
    ("measure.spectral_transfer", spectral_transfer),
    ("measure.abelian_scaling", abelian_scaling),
    ("filter.endpoints_and_sup", filter_conditions),
    ("filter.norm_constant", filter_norm),
    ("filter.edge_floor", filter_floor),
    ("filter.interior_decay", filter_decay),
    ("edge.norm_transfer", norm_transfer),
    ("edge.chain", chain),
    ("edge.counting_bound", counting),
];

/// Names of all invariants, in run order.
pub fn invariant_names() -> Vec<&'static str> {
    SUITE.iter().map(|(name, _)| *name).collect()
}

pub fn run_suite(cfg: &SuiteConfig, mut report: impl FnMut(&Outcome)) -> Vec<Outcome> {
    let mut out = Vec::with_capacity(SUITE.len());
    for &(name, check) in SUITE {
        let outcome = match check(cfg) {
            Ok((passed, detail)) => Outcome { name, passed, detail },
            Err(e) => Outcome {
                name,
                passed: false,
                detail: format!("error: {e}"),
            },
        };
        report(&outcome);
        out.push(outcome);
    }
    out
}
