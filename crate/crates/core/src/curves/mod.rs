//! Rational elliptic curves: Weierstrass models, reduction and point
//! counts modulo primes, rational 2- and 3-torsion, curve-file ingestion,
//! and the congruence `a_ℓ(E) = τ(ℓ) mod p` for curves with a rational
//! p-torsion point.

mod parse;
mod reduction;
mod torsion;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::primes::primes_up_to;
use crate::qseries::{delta_qexp, QSeries};

pub use parse::{bundled_curves, find_curve, parse_curves, BUNDLED_CURVES};
pub use reduction::{count_points, count_points_with_bound, ReductionData, ReductionType, DEFAULT_COUNT_BOUND};
pub use torsion::{has_rational_p_torsion, Point, TorsionWitness};

/// A Weierstrass model `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`
/// together with its Cremona label and (ingested) conductor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeierstrassCurve {
    label: String,
    a: [BigInt; 5],
    conductor: u64,
}

impl WeierstrassCurve {
    pub fn new(label: impl Into<String>, a: [BigInt; 5], conductor: u64) -> Result<Self> {
        if conductor == 0 {
            return Err(Error::InvalidArgument("conductor must be positive".into()));
        }
        let curve = WeierstrassCurve {
            label: label.into(),
            a,
            conductor,
        };
        if curve.discriminant().is_zero() {
            return Err(Error::SingularCurve);
        }
        Ok(curve)
    }

    /// Shorthand for small integer coefficients.
    pub fn from_ints(label: &str, a: [i64; 5], conductor: u64) -> Result<Self> {
        Self::new(label, a.map(BigInt::from), conductor)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Cremona isogeny-class part of the label (`"27a1"` -> `"27a"`).
    pub fn class_label(&self) -> &str {
        self.label.trim_end_matches(|c: char| c.is_ascii_digit())
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn a_invariants(&self) -> &[BigInt; 5] {
        &self.a
    }

    pub fn a1(&self) -> &BigInt {
        &self.a[0]
    }
    pub fn a2(&self) -> &BigInt {
        &self.a[1]
    }
    pub fn a3(&self) -> &BigInt {
        &self.a[2]
    }
    pub fn a4(&self) -> &BigInt {
        &self.a[3]
    }
    pub fn a6(&self) -> &BigInt {
        &self.a[4]
    }

    pub fn b2(&self) -> BigInt {
        self.a1() * self.a1() + 4 * self.a2()
    }

    pub fn b4(&self) -> BigInt {
        2 * self.a4() + self.a1() * self.a3()
    }

    pub fn b6(&self) -> BigInt {
        self.a3() * self.a3() + 4 * self.a6()
    }

    pub fn b8(&self) -> BigInt {
        let [a1, a2, a3, a4, a6] = &self.a;
        a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    }

    pub fn c4(&self) -> BigInt {
        let b2 = self.b2();
        &b2 * &b2 - 24 * self.b4()
    }

    pub fn c6(&self) -> BigInt {
        let b2 = self.b2();
        -(&b2 * &b2 * &b2) + 36 * &b2 * self.b4() - 216 * self.b6()
    }

    pub fn discriminant(&self) -> BigInt {
        let (b2, b4, b6, b8) = (self.b2(), self.b4(), self.b6(), self.b8());
        -(&b2 * &b2 * &b8) - 8 * &b4 * &b4 * &b4 - 27 * &b6 * &b6 + 9 * &b2 * &b4 * &b6
    }

    /// Whether the (trusted minimal) model has a cusp modulo `p`.
    pub fn is_additive_at(&self, p: u64) -> bool {
        let p = BigInt::from(p);
        self.c4().is_multiple_of(&p) && self.discriminant().is_multiple_of(&p)
    }

    /// The model after `(x, y) -> (u^2 x + r, u^3 y + u^2 s x + t)`.
    pub fn change_coordinates(&self, u: &BigInt, r: &BigInt, s: &BigInt, t: &BigInt) -> Result<Self> {
        // Inverse formulas give integral coefficients scaled by powers of u;
        // multiply through so that the transformed model is u^{-i} a_i' = ...
        let [a1, a2, a3, a4, a6] = &self.a;
        let u2 = u * u;
        let u3 = &u2 * u;
        let u4 = &u2 * &u2;
        let u6 = &u3 * &u3;
        let n1 = a1 + 2 * s;
        let n2 = a2 - s * a1 + 3 * r - s * s;
        let n3 = a3 + r * a1 + 2 * t;
        let n4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t;
        let n6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
        let parts = [(n1, u.clone()), (n2, u2), (n3, u3), (n4, u4), (n6, u6)];
        let mut out: Vec<BigInt> = Vec::with_capacity(5);
        for (n, d) in parts {
            let (q, rem) = n.div_rem(&d);
            if !rem.is_zero() {
                return Err(Error::InvalidArgument(
                    "coordinate change does not give an integral model".into(),
                ));
            }
            out.push(q);
        }
        let a: [BigInt; 5] = out.try_into().expect("five coefficients");
        WeierstrassCurve::new(self.label.clone(), a, self.conductor)
    }
}

impl fmt::Display for WeierstrassCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a1, a2, a3, a4, a6] = &self.a;
        write!(f, "{} [{a1},{a2},{a3},{a4},{a6}] {}", self.label, self.conductor)
    }
}

/// Outcome of comparing `a_ℓ(E)` with `τ(ℓ)` modulo `p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TauCongruenceReport {
    pub label: String,
    pub prime: u64,
    pub bound: u64,
    /// Whether `E` has a rational point of order `p`.
    pub hypothesis_holds: bool,
    pub witness: Option<(String, String)>,
    pub primes_checked: usize,
    pub mismatches: Vec<u64>,
}

impl TauCongruenceReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn status(&self) -> &'static str {
        match (self.hypothesis_holds, self.passed()) {
            (true, true) => "pass",
            (true, false) => "fail",
            (false, _) => "hypothesis fails",
        }
    }
}

pub fn verify_tau_congruence(curve: &WeierstrassCurve, p: u64, bound: u64) -> Result<TauCongruenceReport> {
    let delta = delta_qexp(bound.max(1) as usize);
    verify_tau_congruence_with(curve, p, &delta)
}

/// Same as [`verify_tau_congruence`] against a precomputed Δ expansion,
/// scanning primes up to its bound.
pub fn verify_tau_congruence_with(curve: &WeierstrassCurve, p: u64, delta: &QSeries) -> Result<TauCongruenceReport> {
    if p != 2 && p != 3 {
        return Err(Error::InvalidArgument(format!("p must be 2 or 3, got {p}")));
    }
    let witness = has_rational_p_torsion(curve, p)?;
    let modulus = BigInt::from(p);
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for ell in primes_up_to(delta.bound() as u64) {
        if ell == p || curve.conductor() % ell == 0 {
            continue;
        }
        checked += 1;
        let red = count_points(curve, ell)?;
        let diff = BigInt::from(red.a_ell) - delta.coefficient(ell as usize);
        if !diff.is_multiple_of(&modulus) {
            mismatches.push(ell);
        }
    }
    Ok(TauCongruenceReport {
        label: curve.label().to_string(),
        prime: p,
        bound: delta.bound() as u64,
        hypothesis_holds: witness.is_some(),
        witness: witness.map(|w| (w.point.0.to_string(), w.point.1.to_string())),
        primes_checked: checked,
        mismatches,
    })
}
