use heisenspec::butterfly::{bands, gcd};
use heisenspec::charpoly::{charpoly_eval, matching_polynomial};
use heisenspec::eigen::{max_eigenvalue, symmetric_eigenvalues, SymMatrix};
use heisenspec::group::GroupElement;
use heisenspec::measure::cheb_filter;
use heisenspec::reps::harper_matrix;
use proptest::prelude::*;

fn element() -> impl Strategy<Value = GroupElement> {
    (-50i64..=50, -50i64..=50, -50i64..=50).prop_map(|(a, b, c)| GroupElement::new(a, b, c))
}

fn flux() -> impl Strategy<Value = (usize, usize)> {
    (3usize..40)
        .prop_flat_map(|n| (Just(n), 1..n))
        .prop_filter("coprime", |&(n, q)| gcd(n, q) == 1)
}

proptest! {
    #[test]
    fn group_is_associative(g in element(), h in element(), k in element()) {
        let left = g.multiply(&h).unwrap().multiply(&k).unwrap();
        let right = g.multiply(&h.multiply(&k).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn inverse_cancels(g in element()) {
        prop_assert!(g.multiply(&g.inverse()).unwrap().is_identity());
        prop_assert!(g.inverse().multiply(&g).unwrap().is_identity());
    }

    #[test]
    fn harper_spectrum_sits_in_minus_four_four((n, q) in flux()) {
        let h = harper_matrix(n, q).unwrap();
        let eig = symmetric_eigenvalues(&SymMatrix::from(&h)).unwrap();
        prop_assert!(eig.iter().all(|e| e.abs() <= 4.0 + 1e-12));
        prop_assert!((eig.iter().sum::<f64>() - h.trace()).abs() < 1e-9);
    }

    #[test]
    fn power_iteration_matches_dense((n, _) in flux()) {
        let h = harper_matrix(n, 1).unwrap();
        let dense = *symmetric_eigenvalues(&SymMatrix::from(&h)).unwrap().last().unwrap();
        prop_assert!((max_eigenvalue(&h).unwrap() - dense).abs() < 1e-9);
    }

    #[test]
    fn transfer_agrees_with_coefficients((n, q) in flux(), x in -4.5f64..4.5) {
        let mp = matching_polynomial(n, q).unwrap();
        let coeffs = mp.coefficients.clone().unwrap();
        let scale: f64 = coeffs.iter().rev().fold(0.0, |acc, c| acc * x.abs() + c.abs());
        let horner = coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c);
        prop_assert!((mp.eval(x).unwrap() - horner).abs() <= 1e-10 * scale.max(1.0));
        prop_assert!((charpoly_eval(n, q, x).unwrap() - (horner - 2.0)).abs() <= 1e-10 * scale.max(1.0));
    }

    #[test]
    fn bands_are_ordered_and_disjoint((n, q) in flux()) {
        let b = bands(n, q).unwrap();
        prop_assert_eq!(b.len(), n);
        for w in b.windows(2) {
            prop_assert!(w[0].lower <= w[0].upper);
            prop_assert!(w[0].upper <= w[1].lower + 1e-9);
        }
    }

    #[test]
    fn filter_is_bounded_by_one(half in 2usize..40, alpha in 0.05f64..0.95, x in -1.0f64..=1.0) {
        let f = cheb_filter(2 * half, alpha).unwrap();
        prop_assert!(f.eval(x).abs() <= 1.0 + 1e-12);
    }
}
