//! Exact arithmetic in the discrete Heisenberg group `H` and its finite
//! quotients `H_N`, plus return moments of the simple random walk computed
//! by dynamic programming over the group algebra.
//!
//! An element is stored as the triple `(a, b, c)` of the upper-unitriangular
//! matrix
//!
//! ```text
//! | 1 a c |
//! | 0 1 b |
//! | 0 0 1 |
//! ```
//!
//! so the product is `(a, b, c)·(a', b', c') = (a + a', b + b', c + c' + a·b')`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_rational::Ratio;

use crate::error::{invalid, Error, Result};

/// Largest walk length accepted by the exact DP. Counts are `u128`, exact up to
/// `4^63`; the cap keeps the `O(k^4)` state space at desk scale.
pub const MAX_WALK_STEPS: usize = 30;

/// Exact return moment `(Δ^k δ_e, δ_e)`.
pub type Moment = Ratio<u128>;

type Key = (i64, i64, i64);

/// Reduce `v` into the symmetric residue range `(-m/2, m/2]`.
pub fn symmetric_residue(v: i64, m: u32) -> i64 {
    let m = m as i64;
    let r = v.rem_euclid(m);
    if 2 * r > m {
        r - m
    } else {
        r
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub modulus: Option<u32>,
}

impl GroupElement {
    /// Element of the infinite group `H`.
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        GroupElement {
            a,
            b,
            c,
            modulus: None,
        }
    }

    /// Element of `H_N`, with entries reduced to `(-N/2, N/2]`.
    pub fn with_modulus(a: i64, b: i64, c: i64, modulus: u32) -> Result<Self> {
        if modulus == 0 {
            return Err(invalid("modulus must be a positive integer"));
        }
        Ok(Self::reduced(a, b, c, Some(modulus)))
    }

    fn reduced(a: i64, b: i64, c: i64, modulus: Option<u32>) -> Self {
        match modulus {
            None => GroupElement::new(a, b, c),
            Some(m) => GroupElement {
                a: symmetric_residue(a, m),
                b: symmetric_residue(b, m),
                c: symmetric_residue(c, m),
                modulus,
            },
        }
    }

    pub fn identity(modulus: Option<u32>) -> Self {
        GroupElement {
            a: 0,
            b: 0,
            c: 0,
            modulus,
        }
    }

    pub fn x(modulus: Option<u32>) -> Self {
        Self::reduced(1, 0, 0, modulus)
    }

    pub fn y(modulus: Option<u32>) -> Self {
        Self::reduced(0, 1, 0, modulus)
    }

    pub fn z(modulus: Option<u32>) -> Self {
        Self::reduced(0, 0, 1, modulus)
    }

    pub fn is_identity(&self) -> bool {
        self.a == 0 && self.b == 0 && self.c == 0
    }

    pub fn multiply(&self, other: &GroupElement) -> Result<GroupElement> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus,
                right: other.modulus,
            });
        }
        let c = self.c + other.c + self.a * other.b;
        Ok(Self::reduced(
            self.a + other.a,
            self.b + other.b,
            c,
            self.modulus,
        ))
    }

    pub fn inverse(&self) -> GroupElement {
        Self::reduced(-self.a, -self.b, -self.c + self.a * self.b, self.modulus)
    }

    fn key(&self) -> Key {
        (self.a, self.b, self.c)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.modulus {
            None => write!(f, "({}, {}, {})", self.a, self.b, self.c),
            Some(m) => write!(f, "({}, {}, {}) mod {}", self.a, self.b, self.c, m),
        }
    }
}

/// Right multiplication of a key by `x`, `x⁻¹`, `y`, `y⁻¹`.
#[inline]
fn neighbours((a, b, c): Key) -> [Key; 4] {
    [
        (a + 1, b, c),
        (a - 1, b, c),
        (a, b + 1, c + a),
        (a, b - 1, c - a),
    ]
}

#[inline]
fn reduce_key((a, b, c): Key, modulus: Option<u32>) -> Key {
    match modulus {
        None => (a, b, c),
        Some(m) => (
            symmetric_residue(a, m),
            symmetric_residue(b, m),
            symmetric_residue(c, m),
        ),
    }
}

/// Coefficients of `Δ̃^k δ_e = (x + x⁻¹ + y + y⁻¹)^k` as exact path counts.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkState {
    counts: HashMap<Key, u128>,
    step: usize,
    modulus: Option<u32>,
}

impl WalkState {
    /// The step-0 state `δ_e`.
    pub fn origin(modulus: Option<u32>) -> Self {
        let mut counts = HashMap::new();
        counts.insert((0, 0, 0), 1);
        WalkState {
            counts,
            step: 0,
            modulus,
        }
    }

    pub fn step(&self) -> usize {
        self.step
    }

    pub fn modulus(&self) -> Option<u32> {
        self.modulus
    }

    /// Number of distinct group elements with non-zero count.
    pub fn support_size(&self) -> usize {
        self.counts.len()
    }

    pub fn count(&self, g: &GroupElement) -> u128 {
        self.counts.get(&g.key()).copied().unwrap_or(0)
    }

    pub fn count_at_identity(&self) -> u128 {
        self.counts.get(&(0, 0, 0)).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u128 {
        self.counts.values().sum()
    }

    /// Support elements with their counts, sorted by `(a, b, c)`.
    pub fn entries(&self) -> Vec<(GroupElement, u128)> {
        let mut out: Vec<_> = self
            .counts
            .iter()
            .map(|(&(a, b, c), &n)| {
                (
                    GroupElement {
                        a,
                        b,
                        c,
                        modulus: self.modulus,
                    },
                    n,
                )
            })
            .collect();
        out.sort_unstable_by_key(|(g, _)| g.key());
        out
    }

    /// Redistribute every count over the four generator moves.
    pub fn walk_step(&self) -> WalkState {
        let mut next: HashMap<Key, u128> = HashMap::with_capacity(self.counts.len() * 2);
        for (&key, &n) in &self.counts {
            for nb in neighbours(key) {
                *next.entry(reduce_key(nb, self.modulus)).or_insert(0) += n;
            }
        }
        WalkState {
            counts: next,
            step: self.step + 1,
            modulus: self.modulus,
        }
    }
}

fn check_walk_args(k: usize, modulus: Option<u32>) -> Result<()> {
    if k > MAX_WALK_STEPS {
        return Err(invalid(format!(
            "walk length k={k} exceeds the exact DP cap of {MAX_WALK_STEPS}"
        )));
    }
    if modulus == Some(0) {
        return Err(invalid("modulus must be at least 1"));
    }
    Ok(())
}

/// `(Δ^k δ_e, δ_e)` for `H` (`modulus = None`) or `H_N`.
pub fn return_moment(k: usize, modulus: Option<u32>) -> Result<Moment> {
    Ok(*return_moments(k, modulus)?.last().expect("k+1 moments"))
}

/// All return moments for `0..=kmax` from a single DP pass.
pub fn return_moments(kmax: usize, modulus: Option<u32>) -> Result<Vec<Moment>> {
    check_walk_args(kmax, modulus)?;
    let mut state = WalkState::origin(modulus);
    let mut out = Vec::with_capacity(kmax + 1);
    out.push(Moment::from_integer(1));
    for k in 1..=kmax {
        state = state.walk_step();
        out.push(Moment::new(state.count_at_identity(), 1u128 << (2 * k)));
    }
    Ok(out)
}

/// Checks that `H` and `H_{n²+1}` have identical return moments for all `k ≤ n`.
pub fn verify_moment_transfer(n: usize) -> Result<bool> {
    if n == 0 {
        return Err(invalid("n must be at least 1"));
    }
    let modulus = u32::try_from(n * n + 1).map_err(|_| invalid("n too large"))?;
    let infinite = return_moments(n, None)?;
    let finite = return_moments(n, Some(modulus))?;
    Ok(infinite == finite)
}

/// Render a moment as `p/q` in lowest terms (integers keep the `/1`).
pub fn format_moment(m: &Moment) -> String {
    format!("{}/{}", m.numer(), m.denom())
}

pub fn moment_to_f64(m: &Moment) -> f64 {
    *m.numer() as f64 / *m.denom() as f64
}

/// Real-valued element of the group algebra, used to evaluate polynomials in
/// `Δ` applied to `δ_e` without going through a spectral decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupVector {
    coeffs: BTreeMap<Key, f64>,
    modulus: Option<u32>,
}

impl GroupVector {
    pub fn delta(modulus: Option<u32>) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert((0, 0, 0), 1.0);
        GroupVector { coeffs, modulus }
    }

    pub fn zero(modulus: Option<u32>) -> Self {
        GroupVector {
            coeffs: BTreeMap::new(),
            modulus,
        }
    }

    pub fn support_size(&self) -> usize {
        self.coeffs.len()
    }

    /// `Δ v = v·(x + x⁻¹ + y + y⁻¹)/4`.
    pub fn laplace(&self) -> GroupVector {
        let mut next: BTreeMap<Key, f64> = BTreeMap::new();
        for (&key, &w) in &self.coeffs {
            let w = 0.25 * w;
            for nb in neighbours(key) {
                *next.entry(reduce_key(nb, self.modulus)).or_insert(0.0) += w;
            }
        }
        GroupVector {
            coeffs: next,
            modulus: self.modulus,
        }
    }

    /// `alpha·self + beta·other`.
    pub fn combine(&self, alpha: f64, other: &GroupVector, beta: f64) -> GroupVector {
        let mut coeffs: BTreeMap<Key, f64> = self
            .coeffs
            .iter()
            .map(|(&k, &v)| (k, alpha * v))
            .collect();
        for (&k, &v) in &other.coeffs {
            *coeffs.entry(k).or_insert(0.0) += beta * v;
        }
        GroupVector {
            coeffs,
            modulus: self.modulus,
        }
    }

    pub fn scale(&self, s: f64) -> GroupVector {
        self.combine(s, &GroupVector::zero(self.modulus), 0.0)
    }

    pub fn coefficient(&self, g: &GroupElement) -> f64 {
        self.coeffs.get(&g.key()).copied().unwrap_or(0.0)
    }

    /// `‖v‖²` in `ℓ²` of the group, summed in key order.
    pub fn norm_squared(&self) -> f64 {
        self.coeffs.values().map(|v| v * v).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Multiply out every word of length `k` over {x, x⁻¹, y, y⁻¹}.
    fn brute_force_returns(k: u32) -> u128 {
        let gens = [
            GroupElement::new(1, 0, 0),
            GroupElement::new(-1, 0, 0),
            GroupElement::new(0, 1, 0),
            GroupElement::new(0, -1, 0),
        ];
        let mut hits = 0;
        for word in 0..4usize.pow(k) {
            let mut w = word;
            let mut g = GroupElement::identity(None);
            for _ in 0..k {
                g = g.multiply(&gens[w % 4]).unwrap();
                w /= 4;
            }
            if g.is_identity() {
                hits += 1;
            }
        }
        hits
    }

    #[test]
    fn x_times_y() {
        let g = GroupElement::x(None).multiply(&GroupElement::y(None)).unwrap();
        assert_eq!(g, GroupElement::new(1, 1, 1));
    }

    #[test]
    fn commutator_is_z() {
        for m in [None, Some(5), Some(2)] {
            let x = GroupElement::x(m);
            let y = GroupElement::y(m);
            let g = x
                .multiply(&y)
                .unwrap()
                .multiply(&x.inverse())
                .unwrap()
                .multiply(&y.inverse())
                .unwrap();
            assert_eq!(g, GroupElement::z(m));
        }
    }

    #[test]
    fn modulus_mismatch_is_rejected() {
        let g = GroupElement::new(1, 2, 3);
        let h = GroupElement::with_modulus(1, 2, 3, 7).unwrap();
        assert!(matches!(g.multiply(&h), Err(Error::ModulusMismatch { .. })));
        assert!(GroupElement::with_modulus(0, 0, 0, 0).is_err());
    }

    #[test]
    fn symmetric_range() {
        assert_eq!(symmetric_residue(3, 5), -2);
        assert_eq!(symmetric_residue(2, 5), 2);
        assert_eq!(symmetric_residue(2, 4), 2);
        assert_eq!(symmetric_residue(-2, 4), 2);
        assert_eq!(symmetric_residue(1, 2), 1);
        assert_eq!(symmetric_residue(7, 1), 0);
    }

    #[test]
    fn first_step() {
        let s = WalkState::origin(None).walk_step();
        assert_eq!(s.support_size(), 4);
        for g in [
            GroupElement::new(1, 0, 0),
            GroupElement::new(-1, 0, 0),
            GroupElement::new(0, 1, 0),
            GroupElement::new(0, -1, 0),
        ] {
            assert_eq!(s.count(&g), 1);
        }
    }

    #[test]
    fn identity_counts_match_brute_force() {
        let mut s = WalkState::origin(None);
        for k in 1..=8 {
            s = s.walk_step();
            assert_eq!(s.count_at_identity(), brute_force_returns(k), "k={k}");
        }
        assert_eq!(brute_force_returns(2), 4);
        assert_eq!(brute_force_returns(4), 28);
    }

    #[test]
    fn anchor_moments() {
        assert_eq!(return_moment(2, None).unwrap(), Moment::new(1, 4));
        assert_eq!(return_moment(4, None).unwrap(), Moment::new(7, 64));
        assert_eq!(return_moment(3, None).unwrap(), Moment::from_integer(0));
        assert_eq!(format_moment(&return_moment(4, None).unwrap()), "7/64");
        assert_eq!(format_moment(&return_moment(0, None).unwrap()), "1/1");
        assert_eq!(format_moment(&return_moment(1, None).unwrap()), "0/1");
    }

    #[test]
    fn walk_cap_enforced() {
        assert!(return_moment(MAX_WALK_STEPS + 1, None).is_err());
        assert!(return_moment(2, Some(0)).is_err());
    }

    #[test]
    fn moment_transfer_small() {
        assert!(verify_moment_transfer(1).unwrap());
        assert!(verify_moment_transfer(4).unwrap());
        assert!(verify_moment_transfer(0).is_err());
    }

    #[test]
    fn wraparound_breaks_transfer() {
        // x^5 is the identity in H_5, so an odd moment appears.
        let finite = return_moment(5, Some(5)).unwrap();
        let infinite = return_moment(5, None).unwrap();
        assert_eq!(infinite, Moment::from_integer(0));
        assert!(finite > infinite);
    }

    #[test]
    fn group_vector_matches_counts() {
        let mut v = GroupVector::delta(None);
        let mut s = WalkState::origin(None);
        for k in 1..=6 {
            v = v.laplace();
            s = s.walk_step();
            let expected = s.count_at_identity() as f64 / 4f64.powi(k);
            let got = v.coefficient(&GroupElement::identity(None));
            assert!((got - expected).abs() < 1e-15);
        }
        // ‖Δ^3 δ_e‖² = (Δ^6 δ_e, δ_e)
        let v3 = (0..3).fold(GroupVector::delta(None), |v, _| v.laplace());
        let m6 = moment_to_f64(&return_moment(6, None).unwrap());
        assert!((v3.norm_squared() - m6).abs() < 1e-15);
    }
}
