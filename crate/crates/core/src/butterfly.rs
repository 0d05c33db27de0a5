//! Hofstadter butterfly bands: for flux `q/n` the spectrum of the Harper
//! operator is the set where `P_{n,q}(x) ∈ [−4, 0]`.
//!
//! Band endpoints are roots of `P` (eigenvalues of the periodic matrix) and
//! of `P + 4` (eigenvalues of the antiperiodic matrix, corners `−1`). The
//! k-th band joins the k-th root of each.

use std::fmt::Write as _;

use crate::charpoly::charpoly_sign;
use crate::eigen::{harper_with_corner, symmetric_eigenvalues};
use crate::error::{invalid, Error, Result};
use crate::reps::{harper_matrix, HarperMatrix};

const GRID_PER_ROOT: usize = 8;
const GRID_LO: f64 = -4.5;
const GRID_HI: f64 = 4.5;
const BISECTION_STEPS: usize = 60;
const POLISH_RADIUS: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Band {
    pub n: usize,
    pub q: usize,
    /// 1-based, ascending in energy.
    pub index: usize,
    pub lower: f64,
    pub upper: f64,
}

impl Band {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn contains(&self, x: f64, slack: f64) -> bool {
        x >= self.lower - slack && x <= self.upper + slack
    }
}

pub fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn bisect(diag: &[f64], shift: f64, mut lo: f64, mut hi: f64) -> f64 {
    let s_lo = charpoly_sign(diag, lo, shift);
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        let s = charpoly_sign(diag, mid, shift);
        if s == 0.0 {
            return mid;
        }
        if s == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Refines `x` by bisection when `P − shift` changes sign across a small
/// bracket around it; otherwise (double or clustered roots) returns `x`.
fn polish(diag: &[f64], shift: f64, x: f64) -> f64 {
    let (lo, hi) = (x - POLISH_RADIUS, x + POLISH_RADIUS);
    let (a, b) = (charpoly_sign(diag, lo, shift), charpoly_sign(diag, hi, shift));
    if a != 0.0 && b != 0.0 && a != b {
        bisect(diag, shift, lo, hi)
    } else {
        x
    }
}

fn band_edges(h: &HarperMatrix) -> Result<(Vec<f64>, Vec<f64>)> {
    let periodic = symmetric_eigenvalues(&harper_with_corner(h, 1.0))?;
    let antiperiodic = symmetric_eigenvalues(&harper_with_corner(h, -1.0))?;
    let periodic = periodic.iter().map(|&x| polish(h.diag(), 0.0, x)).collect();
    let antiperiodic = antiperiodic
        .iter()
        .map(|&x| polish(h.diag(), -4.0, x))
        .collect();
    Ok((periodic, antiperiodic))
}

fn check_flux(n: usize, q: usize) -> Result<()> {
    if n < 3 {
        return Err(invalid(format!("bands need n >= 3, got {n}")));
    }
    if q == 0 || q >= n {
        return Err(invalid(format!("need 1 <= q < n, got q={q} for n={n}")));
    }
    if gcd(n, q) != 1 {
        return Err(invalid(format!(
            "flux {q}/{n} is not in lowest terms (gcd {})",
            gcd(n, q)
        )));
    }
    Ok(())
}

/// The `n` closed bands `{x : P_{n,q}(x) ∈ [−4, 0]}`, ascending.
pub fn bands(n: usize, q: usize) -> Result<Vec<Band>> {
    check_flux(n, q)?;
    let h = harper_matrix(n, q)?;
    let (periodic, antiperiodic) = band_edges(&h)?;
    if periodic.len() != n || antiperiodic.len() != n {
        return Err(Error::RootCount {
            n,
            q,
            expected: n,
            found: periodic.len().min(antiperiodic.len()),
        });
    }
    Ok(periodic
        .iter()
        .zip(&antiperiodic)
        .enumerate()
        .map(|(k, (&p, &a))| Band {
            n,
            q,
            index: k + 1,
            lower: p.min(a),
            upper: p.max(a),
        })
        .collect())
}

/// `bands(n, q)` for all coprime `1 <= q < n`, `3 <= n <= max_denominator`.
pub fn butterfly_sweep(max_denominator: usize) -> Result<Vec<Band>> {
    if max_denominator < 3 {
        return Err(invalid(format!(
            "max denominator must be >= 3, got {max_denominator}"
        )));
    }
    let mut out = Vec::new();
    for n in 3..=max_denominator {
        for q in (1..n).filter(|&q| gcd(n, q) == 1) {
            out.extend(bands(n, q)?);
        }
    }
    Ok(out)
}

/// Roots of `P_{n,q} − shift` in `[−4.5, 4.5]` by sign changes on a grid of
/// `8n` points refined by bisection. Fails loudly when fewer than `n` sign
/// changes are resolved (double roots, exponentially thin gaps).
pub fn isolate_roots(n: usize, q: usize, shift: f64) -> Result<Vec<f64>> {
    let h = harper_matrix(n, q)?;
    let diag = h.diag();
    let m = GRID_PER_ROOT * n;
    let grid: Vec<f64> = (0..=m)
        .map(|i| GRID_LO + (GRID_HI - GRID_LO) * i as f64 / m as f64)
        .collect();
    let signs: Vec<f64> = grid.iter().map(|&x| charpoly_sign(diag, x, shift)).collect();
    let mut roots = Vec::new();
    for i in 0..m {
        if signs[i] == 0.0 {
            roots.push(grid[i]);
        } else if signs[i + 1] != 0.0 && signs[i] != signs[i + 1] {
            roots.push(bisect(diag, shift, grid[i], grid[i + 1]));
        }
    }
    if signs[m] == 0.0 {
        roots.push(grid[m]);
    }
    if roots.len() != n {
        return Err(Error::RootCount {
            n,
            q,
            expected: n,
            found: roots.len(),
        });
    }
    Ok(roots)
}

/// One vertical segment per band at abscissa `q/n`, energy axis `[−4, 4]`.
pub fn render_svg(bands: &[Band], width: u32, height: u32) -> Result<String> {
    if bands.is_empty() {
        return Err(invalid("no bands to render"));
    }
    if width == 0 || height == 0 {
        return Err(invalid(format!(
            "svg dimensions must be positive, got {width}x{height}"
        )));
    }
    let (w, h) = (width as f64, height as f64);
    let y = |e: f64| h * (4.0 - e) / 8.0;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(s, r#"<rect width="{width}" height="{height}" fill="white"/>"#);
    let _ = writeln!(s, r#"<g stroke="black" stroke-width="1">"#);
    for b in bands {
        let x = w * b.q as f64 / b.n as f64;
        let _ = writeln!(
            s,
            r#"<line x1="{x:.4}" y1="{:.4}" x2="{x:.4}" y2="{:.4}"/>"#,
            y(b.upper),
            y(b.lower)
        );
    }
    s.push_str("</g>\n</svg>\n");
    Ok(s)
}
