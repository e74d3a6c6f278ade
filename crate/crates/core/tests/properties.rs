use std::sync::OnceLock;

use massforge::exact::PowerSeries;
use massforge::lfdata::{c123_check, SquareClass};
use massforge::tame::{tame_mass_pairs, tame_quasi_poly};
use massforge::weyl::{parse_group, GroupOptions};
use massforge::wild::{census_mass, Census};
use massforge::{rat, LaurentPoly, MatGroup, Rational};
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-12i64..12, 1i64..7).prop_map(|(n, d)| rat(n, d))
}

fn small_poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-3i64..5, small_rational()), 0..5).prop_map(LaurentPoly::from_terms)
}

/// Series through `x^5` with zero constant term.
fn series_no_constant() -> impl Strategy<Value = PowerSeries> {
    prop::collection::vec(small_poly(), 5)
        .prop_map(|cs| PowerSeries::from_coeffs(5, std::iter::once(LaurentPoly::zero()).chain(cs)))
}

fn groups() -> &'static Vec<(&'static str, MatGroup)> {
    static G: OnceLock<Vec<(&'static str, MatGroup)>> = OnceLock::new();
    G.get_or_init(|| {
        [
            "A1",
            "A2",
            "A3",
            "B2",
            "B3",
            "G2",
            "D4",
            "Z3",
            "Z2reg2",
            "A1×Z3",
            "Dsigned(3)+1",
        ]
        .into_iter()
        .map(|n| (n, parse_group(n, &GroupOptions::default()).unwrap()))
        .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, LaurentPoly::zero());
        prop_assert_eq!(&a * &LaurentPoly::one(), a.clone());
    }

    #[test]
    fn evaluation_is_a_ring_map(a in small_poly(), b in small_poly(), q in 2u64..9) {
        let ea = a.eval_at_q(q).unwrap();
        let eb = b.eval_at_q(q).unwrap();
        prop_assert_eq!((&a * &b).eval_at_q(q).unwrap(), &ea * &eb);
        prop_assert_eq!((&a + &b).eval_at_q(q).unwrap(), ea + eb);
    }

    #[test]
    fn display_parses_back(a in small_poly()) {
        prop_assert_eq!(a.to_string().parse::<LaurentPoly>().unwrap(), a);
    }

    #[test]
    fn exp_log_round_trip(f in series_no_constant()) {
        let e = f.exp().unwrap();
        prop_assert_eq!(e.log().unwrap(), f.clone());
        prop_assert_eq!(e.mul(&f.scale(&rat(-1, 1)).exp().unwrap()), PowerSeries::one(5));
    }

    #[test]
    fn pow_is_additive(f in series_no_constant(), a in small_rational(), b in small_rational()) {
        let g = f.exp().unwrap();
        let lhs = g.pow(&a).unwrap().mul(&g.pow(&b).unwrap());
        prop_assert_eq!(lhs, g.pow(&(a + b)).unwrap());
    }

    #[test]
    fn x_scaling_inverts(f in series_no_constant(), k in -3i64..4) {
        prop_assert_eq!(f.substitute_x_scale(k).substitute_x_scale(-k), f);
    }

    #[test]
    fn power_map_is_periodic(gi in 0usize..11, m in -40i64..40) {
        let (_, g) = &groups()[gi];
        let e = g.exponent() as i64;
        prop_assert_eq!(g.class_power_map(m), g.class_power_map(m + e));
        prop_assert_eq!(g.class_power_map(m), g.class_power_map(m - 3 * e));
    }

    #[test]
    fn codim_is_a_class_function(gi in 0usize..11, x in any::<prop::sample::Index>(), h in any::<prop::sample::Index>()) {
        let (_, g) = &groups()[gi];
        let x = x.index(g.order());
        let h = h.index(g.order());
        let conj = g.mul_index(g.mul_index(h, x), g.inverse_index(h));
        prop_assert_eq!(g.codim(x), g.codim(conj));
        prop_assert_eq!(g.codim(x) == 0, x == g.identity_index());
    }

    #[test]
    fn pair_sum_matches_class_sum(gi in 0usize..11, k in 0usize..40) {
        let (name, g) = &groups()[gi];
        let qp = tame_quasi_poly(g);
        let units: Vec<u64> = (2u64..400).filter(|q| qp.at(*q as i64).is_ok()).collect();
        let q = units[k % units.len()];
        prop_assert_eq!(tame_mass_pairs(g, q).unwrap(), qp.eval(q).unwrap(), "{} at {}", name, q);
    }

    #[test]
    fn quasi_poly_depends_on_residue(gi in 0usize..11, q in 2i64..500) {
        let (_, g) = &groups()[gi];
        let qp = tame_quasi_poly(g);
        if let Ok(p) = qp.at(q) {
            prop_assert_eq!(p, qp.at(q + qp.modulus() as i64).unwrap());
        }
    }

    #[test]
    fn square_classes_are_multiplicative(a in -500i128..500, b in -500i128..500) {
        prop_assume!(a != 0 && b != 0);
        let (ca, cb) = (SquareClass::of_integer(a), SquareClass::of_integer(b));
        prop_assert_eq!(SquareClass::of_integer(a * b), ca.mul(cb));
        prop_assert_eq!(SquareClass::of_integer(a * a), SquareClass::TRIVIAL);
    }

    #[test]
    fn cyclic_towers_are_unique(n in 2usize..13, d in 1usize..13) {
        prop_assume!(n % d == 0);
        let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let h: Vec<usize> = (0..n).map(|i| (i + d) % n).collect();
        for r in c123_check(&[rot], &[h], n, 100).unwrap() {
            prop_assert!(r.unique_tower() && r.aut_equal());
        }
    }

    #[test]
    fn census_mass_is_additive(t1 in prop::collection::vec((1u64..9, 0u32..8), 1..5),
                               t2 in prop::collection::vec((1u64..9, 0u32..8), 1..5),
                               q in 2u64..6) {
        let a = Census::finite(4, &t1);
        let b = Census::finite(4, &t2);
        let merged = Census::merge([&a, &b]).unwrap();
        prop_assert_eq!(
            census_mass(&merged, q).unwrap(),
            census_mass(&a, q).unwrap() + census_mass(&b, q).unwrap()
        );
    }
}

#[test]
fn unramified_only_census_has_mass_one() {
    for order in [1u64, 2, 12, 48] {
        assert_eq!(
            census_mass(&Census::finite(order, &[(order, 0)]), 3).unwrap(),
            rat(1, 1)
        );
    }
}
