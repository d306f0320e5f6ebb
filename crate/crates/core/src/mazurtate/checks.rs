use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use super::group_ring::GroupRingElement;
use super::{theta, ThetaResult};
use crate::error::{Error, Result};
use crate::modsymb::EigenSymbol;

/// `cor(θ_{n+1}) = a_p θ_n` modulo `p^M`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormRelationReport {
    pub p: u64,
    pub n: u32,
    pub precision: u32,
    pub a_p: String,
    pub lhs_zero: bool,
    pub rhs_zero: bool,
    /// First `X`-power index where the two sides differ.
    pub first_mismatch: Option<usize>,
}

impl NormRelationReport {
    pub fn passed(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

pub fn check_norm_relation(phi: &EigenSymbol, a_p: &BigInt, p: u64, n: u32, precision: u32) -> Result<NormRelationReport> {
    let upper = super::raw::theta_raw(phi, p, n + 1)?;
    let lower = super::raw::theta_raw(phi, p, n)?;
    let lhs = super::raw::project_twist(&upper, precision)?.corestrict()?;
    let rhs = super::raw::project_twist(&lower, precision)?.scale(a_p);
    let first_mismatch = lhs
        .coefficients()
        .iter()
        .zip(rhs.coefficients())
        .position(|(x, y)| x != y);
    Ok(NormRelationReport {
        p,
        n,
        precision,
        a_p: a_p.to_string(),
        lhs_zero: lhs.is_zero(),
        rhs_zero: rhs.is_zero(),
        first_mismatch,
    })
}

/// `λ(θ_n) >= p^{e-1}` for a group ring of order `p^e`; an infinite λ
/// satisfies it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LowerBoundReport {
    pub p: u64,
    pub n: u32,
    pub lambda: Option<u64>,
    pub bound: u64,
    pub passed: bool,
}

pub fn check_lambda_lower_bound(theta: &ThetaResult) -> LowerBoundReport {
    let (p, n, e) = (theta.element.p(), theta.raw.n(), theta.element.n());
    let bound = if e == 0 { 0 } else { p.pow(e - 1) };
    let lambda = theta.invariants.lambda_value();
    LowerBoundReport {
        p,
        n,
        lambda,
        bound,
        passed: lambda.map_or(true, |l| l >= bound),
    }
}

/// Corestriction, division by `ω_{e-1}` and the λ shift for `θ_{n+1}`,
/// whose group ring has order `p^e`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdditivePairReport {
    pub p: u64,
    pub n: u32,
    pub precision: u32,
    pub corestriction_zero: bool,
    pub divisible: bool,
    pub lambda_upper: Option<u64>,
    pub lambda_quotient: Option<u64>,
    /// `λ(θ_{n+1}) - λ(G)` when both are finite and `μ` agrees.
    pub lambda_shift: Option<u64>,
    pub expected_shift: u64,
}

impl AdditivePairReport {
    pub fn passed(&self) -> bool {
        self.corestriction_zero
            && self.divisible
            && (self.lambda_upper.is_none() || self.lambda_shift == Some(self.expected_shift))
    }
}

pub fn check_additive_pair(phi: &EigenSymbol, p: u64, n: u32) -> Result<AdditivePairReport> {
    let upper = theta(phi, p, n + 1)?;
    let precision = upper.precision();
    let f = &upper.element;
    let corestriction_zero = f.corestrict()?.is_zero();
    let (divisible, quotient) = match f.divide_by_augmentation_cycle() {
        Ok(g) => (true, Some(g)),
        Err(Error::NotDivisible { .. }) => (false, None),
        Err(e) => return Err(e),
    };
    let inv_f = upper.invariants;
    let inv_g = quotient.as_ref().map(|g| g.mu_lambda());
    let lambda_shift = match (inv_f.lambda_value(), inv_g) {
        (Some(lf), Some(ig)) if ig.mu == inv_f.mu => ig.lambda_value().and_then(|lg| lf.checked_sub(lg)),
        _ => None,
    };
    Ok(AdditivePairReport {
        p,
        n,
        precision,
        corestriction_zero,
        divisible,
        lambda_upper: inv_f.lambda_value(),
        lambda_quotient: inv_g.and_then(|i| i.lambda_value()),
        lambda_shift,
        expected_shift: p.pow(f.n() - 1),
    })
}

/// Congruence of two elements modulo `p` and their μ/λ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThetaCongruenceReport {
    /// Coefficientwise congruence modulo `p`.
    pub congruent: bool,
    pub mu_first: Option<u64>,
    pub mu_second: Option<u64>,
    /// `F / p^{μ(F)} ≡ u · G / p^{μ(G)}` modulo `p` for some unit `u`.
    pub primitive_congruent: bool,
    pub lambda_first: Option<u64>,
    pub lambda_second: Option<u64>,
    pub lambda_equal: bool,
}

impl ThetaCongruenceReport {
    pub fn mu_zero(&self) -> bool {
        self.mu_first == Some(0) && self.mu_second == Some(0)
    }

    pub fn passed(&self) -> bool {
        self.congruent && self.mu_zero() && self.lambda_equal
    }
}

/// Coefficients of `F / p^{μ(F)}` reduced modulo `p`.
fn primitive_mod_p(f: &GroupRingElement, mu: Option<u64>) -> Option<Vec<BigInt>> {
    let p = BigInt::from(f.p());
    let scale = p.pow(mu? as u32);
    Some(f.coefficients().iter().map(|c| (c / &scale).mod_floor(&p)).collect())
}

pub fn compare_theta_mod_p(f: &GroupRingElement, g: &GroupRingElement) -> Result<ThetaCongruenceReport> {
    if f.p() != g.p() || f.n() != g.n() {
        return Err(Error::Incompatible(format!(
            "level (p, n) = ({}, {}) against ({}, {})",
            f.p(),
            f.n(),
            g.p(),
            g.n()
        )));
    }
    let p = BigInt::from(f.p());
    let congruent = f
        .coefficients()
        .iter()
        .zip(g.coefficients())
        .all(|(x, y)| (x - y).is_multiple_of(&p));
    let (inv_f, inv_g) = (f.mu_lambda(), g.mu_lambda());
    let primitive_congruent = match (primitive_mod_p(f, inv_f.mu_value()), primitive_mod_p(g, inv_g.mu_value())) {
        (Some(x), Some(y)) => {
            let lead = inv_f.lambda_value().expect("finite with μ") as usize;
            // u = x_λ / y_λ modulo p
            match crate::exactnum::ResidueRing::new(f.p(), 1, y[lead].clone()).inverse() {
                Ok(inv) => {
                    let u = (&x[lead] * inv.value()).mod_floor(&p);
                    x.iter().zip(&y).all(|(a, b)| (a - &u * b).is_multiple_of(&p))
                }
                Err(_) => false,
            }
        }
        (None, None) => true,
        _ => false,
    };
    Ok(ThetaCongruenceReport {
        congruent,
        mu_first: inv_f.mu_value(),
        mu_second: inv_g.mu_value(),
        primitive_congruent,
        lambda_first: inv_f.lambda_value(),
        lambda_second: inv_g.lambda_value(),
        lambda_equal: inv_f.lambda == inv_g.lambda,
    })
}
