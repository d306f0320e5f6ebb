//! Property tests for symbol evaluation and Hecke operators.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;

use super::{eigen_data_for_curve, mat_mul, EigenSymbol, HomogeneousPoly, ManinSymbolSpace};
use crate::curves::find_curve;
use crate::exactnum::primes::primes_up_to;
use crate::exactnum::{Cusp, Rational, UnimodularPath};
use crate::mazurtate::Form;
use crate::qseries::delta_qexp;

const LABELS: [&str; 5] = ["delta", "11a1", "27a1", "36a1", "32a1"];

fn symbols() -> &'static Vec<EigenSymbol> {
    static CELL: OnceLock<Vec<EigenSymbol>> = OnceLock::new();
    CELL.get_or_init(|| {
        LABELS
            .iter()
            .map(|l| match *l {
                "delta" => Form::Delta,
                l => Form::Curve(find_curve(l).unwrap()),
            })
            .map(|f| f.eigen_symbol().unwrap())
            .collect()
    })
}

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

fn cusp(num: i64, den: i64) -> Cusp {
    Cusp::from_pair(big(num), big(den))
}

fn minus(a: &HomogeneousPoly, b: &HomogeneousPoly) -> HomogeneousPoly {
    a + &b.scale(&-Rational::one())
}

/// Completes a coprime bottom row `(c, d)` to a matrix of determinant 1.
fn complete(c: i64, d: i64) -> (i64, i64) {
    let e = d.extended_gcd(&c);
    assert_eq!(e.gcd.abs(), 1);
    // a d + (-b) c = 1 with a = x, -b = y
    let s = e.gcd.signum();
    (s * e.x, -s * e.y)
}

fn coprime_pair() -> impl Strategy<Value = (i64, i64)> {
    (-40i64..40, 1i64..60).prop_filter("coprime", |(a, b)| a.gcd(b) == 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// A single unimodular geodesic agrees with the continued-fraction
    /// evaluation of its endpoints: `φ({g∞} - {g0}) = φ({∞} - {g0}) - φ({∞} - {g∞})`.
    #[test]
    fn path_additivity(which in 0usize..LABELS.len(), (c, d) in coprime_pair(), flip in any::<bool>()) {
        let phi = &symbols()[which];
        let (a, b) = complete(c, d);
        let (a, c) = if flip { (-a, -c) } else { (a, c) };
        let g = UnimodularPath { a: big(a), b: big(b), c: big(c), d: big(d) };
        let direct = phi.evaluate_unimodular(&g);
        let split = minus(&phi.evaluate_cusp(&g.start()), &phi.evaluate_cusp(&g.end()));
        prop_assert_eq!(direct, split);
    }

    /// `φ({γ∞} - {γr})(X, Y) = φ({∞} - {r})(aX + cY, bX + dY)` for `γ` in `Γ_0(N)`.
    #[test]
    fn gamma0_invariance(which in 0usize..LABELS.len(), k in -6i64..6, d in 1i64..80, sign in any::<bool>(), (rn, rd) in coprime_pair()) {
        let phi = &symbols()[which];
        let c = k * phi.level() as i64;
        prop_assume!(c.gcd(&d) == 1);
        let (a, b) = complete(c, d);
        let s = if sign { 1 } else { -1 };
        let (a, b, c, d) = (s * a, s * b, s * c, s * d);
        let moved = minus(
            &phi.evaluate_cusp(&cusp(a * rn + b * rd, c * rn + d * rd)),
            &phi.evaluate_cusp(&cusp(a, c)),
        );
        let base = phi.evaluate_cusp(&cusp(rn, rd)).substitute(&big(a), &big(c), &big(b), &big(d));
        prop_assert_eq!(moved, base);
    }
}

fn primes() -> Vec<u64> {
    primes_up_to(23)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn hecke_operators_commute(level in 2u64..=32, weight in prop::sample::select(vec![2u32, 4]), i in 0usize..9, j in 0usize..9) {
        let ps = primes();
        let (l1, l2) = (ps[i], ps[j]);
        prop_assume!(l1 != l2);
        let space = ManinSymbolSpace::new(level, weight);
        let (t1, t2) = (space.hecke_matrix(l1), space.hecke_matrix(l2));
        prop_assert_eq!(mat_mul(&t1, &t2), mat_mul(&t2, &t1));
    }
}

#[test]
fn eigenvalues_match_point_counts() {
    for label in ["11a1", "24a1", "27a1", "32a1", "36a1", "45a1", "99c1"] {
        let e = find_curve(label).unwrap();
        let data = eigen_data_for_curve(&e, 50).unwrap();
        assert!(data.iter().all(|(l, _)| *l <= 50));
        let phi = Form::Curve(e).eigen_symbol().unwrap();
        for (l, a) in &data {
            assert!(phi.is_hecke_eigen(*l, a), "{label} at {l}");
        }
    }
    let phi = Form::Delta.eigen_symbol().unwrap();
    let tau = delta_qexp(50);
    for l in primes_up_to(50) {
        assert!(phi.is_hecke_eigen(l, tau.coefficient(l as usize)), "delta at {l}");
    }
    assert!(!phi.is_hecke_eigen(5, &BigInt::zero()));
}
