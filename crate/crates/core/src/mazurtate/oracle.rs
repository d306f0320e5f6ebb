//! Symbol values checked against independent values from PARI/GP
//! (`msfromell`/`msfromhecke` followed by `mseval` on the path `{∞} → {a/m}`).
//! The two normalizations differ by a constant, so only proportionality is
//! asserted.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::Form;
use crate::curves::find_curve;
use crate::exactnum::Rational;

const CURVE_VALUES: &[(&str, u64, &[&str])] = &[
    ("11a1", 11, &["0", "1", "1/2", "-1/2", "-1", "-1", "-1/2", "1/2", "1", "0"]),
    ("27a1", 27, &["0", "1", "1/2", "1/2", "-1/2", "0", "0", "-1/2", "-1", "-1", "-1/2", "0", "0", "-1/2", "1/2", "1/2", "1", "0"]),
    ("36a1", 27, &["1/6", "1/6", "1/6", "1/6", "1/6", "-1/3", "1/6", "-1/3", "-1/3", "-1/3", "-1/3", "1/6", "-1/3", "1/6", "1/6", "1/6", "1/6", "1/6"]),
    ("175a1", 25, &["1/2", "-1/2", "1/2", "1/2", "1/2", "1/2", "1/2", "-1/2", "-1", "-1", "-1", "-1", "-1/2", "1/2", "1/2", "1/2", "1/2", "1/2", "-1/2", "1/2"]),
    ("99c1", 27, &["2", "1", "-1", "2", "-2", "-1", "-1", "1", "-1", "-1", "1", "-1", "-1", "-2", "2", "-1", "1", "2"]),
    ("32a1", 16, &["1/2", "0", "0", "-1/2", "-1/2", "0", "0", "1/2"]),
];

/// Leading `x^10` coefficient of PARI's polynomial, i.e. `∫ f(z) dz`.
const DELTA_VALUES: &[(u64, &[&str])] = &[
    (8, &["27596627136", "-27568390464", "-27568390464", "27596627136"]),
    (9, &["96867086436", "-120449649564", "23313729636", "23313729636", "-120449649564", "96867086436"]),
    (25, &[
        "3328294600822500", "-3487855255020828", "-1446859933856028", "256305220726500", "1872489786358500",
        "-610889257145628", "2524690343238372", "-3257967180476700", "-2198578182486300", "3019520551110372",
        "3019520551110372", "-2198578182486300", "-3257967180476700", "2524690343238372", "-610889257145628",
        "1872489786358500", "256305220726500", "-1446859933856028", "-3487855255020828", "3328294600822500",
    ]),
];

fn parse(s: &str) -> Rational {
    match s.split_once('/') {
        Some((n, d)) => Rational::new(n.parse().unwrap(), d.parse().unwrap()),
        None => Rational::from_integer(s.parse().unwrap()),
    }
}

fn assert_proportional(form: &Form, m: u64, expected: &[&str]) {
    let phi = form.eigen_symbol().unwrap();
    let units: Vec<u64> = (1..m).filter(|a| a.gcd(&m) == 1).collect();
    assert_eq!(units.len(), expected.len());
    let ours: Vec<Rational> = units
        .iter()
        .map(|&a| Rational::from_integer(phi.theta_value(&Rational::new(BigInt::from(a), BigInt::from(m)))))
        .collect();
    let theirs: Vec<Rational> = expected.iter().map(|s| parse(s)).collect();
    let pivot = theirs.iter().position(|x| !x.is_zero()).expect("nonzero reference");
    let ratio = &ours[pivot] / &theirs[pivot];
    assert!(!ratio.is_zero(), "{} at m = {m}: our value vanishes", form.label());
    for (a, (x, y)) in units.iter().zip(ours.iter().zip(&theirs)) {
        assert_eq!(x, &(y * &ratio), "{} at {a}/{m}", form.label());
    }
}

#[test]
fn curve_symbols_agree_with_pari() {
    for (label, m, values) in CURVE_VALUES {
        assert_proportional(&Form::Curve(find_curve(label).unwrap()), *m, values);
    }
}

#[test]
fn delta_symbol_agrees_with_pari() {
    for (m, values) in DELTA_VALUES {
        assert_proportional(&Form::Delta, *m, values);
    }
}
