//! Mazur–Tate elements: assembly of `Θ_n` from an eigen-symbol, the
//! projection to `Z_p[X]/((1+X)^{p^n} - 1)`, μ/λ invariants, corestriction
//! and the norm-relation checks.

mod checks;
mod group_ring;
mod raw;
#[cfg(test)]
mod oracle;

use num_bigint::BigInt;

use crate::curves::{count_points, WeierstrassCurve};
use crate::error::Result;
use crate::modsymb::{eigen_data_for_curve, eigen_data_for_delta, eigen_symbol_with_bound, EigenData, EigenSymbol, ManinSymbolSpace, DEFAULT_EIGEN_BOUND};
use crate::qseries::delta_qexp;

pub use checks::{
    check_additive_pair, check_lambda_lower_bound, check_norm_relation, compare_theta_mod_p, AdditivePairReport,
    LowerBoundReport, NormRelationReport, ThetaCongruenceReport,
};
pub use group_ring::{json_valuation, GroupRingElement, IwasawaInvariants, DEFAULT_GUARD};
pub use raw::{check_budget, evaluation_count, group_exponent, project_twist, project_twist_with, raw_from_fn, theta_modulus, theta_raw, RawTheta};

/// Starting precision is `n + DEFAULT_EXTRA_PRECISION`.
pub const DEFAULT_EXTRA_PRECISION: u32 = 12;

/// A Hecke eigenform with rational coefficients: Δ or the newform of a
/// rational elliptic curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Form {
    Delta,
    Curve(WeierstrassCurve),
}

impl Form {
    /// `"delta"` or the curve label.
    pub fn label(&self) -> String {
        match self {
            Form::Delta => "delta".to_string(),
            Form::Curve(e) => e.label().to_string(),
        }
    }

    pub fn level(&self) -> u64 {
        match self {
            Form::Delta => 1,
            Form::Curve(e) => e.conductor(),
        }
    }

    pub fn weight(&self) -> u32 {
        match self {
            Form::Delta => 12,
            Form::Curve(_) => 2,
        }
    }

    /// Eigenvalues at good primes up to `bound`.
    pub fn eigen_data(&self, bound: u64) -> Result<EigenData> {
        match self {
            Form::Delta => Ok(eigen_data_for_delta(bound)),
            Form::Curve(e) => eigen_data_for_curve(e, bound),
        }
    }

    /// The plus quotient the eigen-symbol lives in.
    pub fn space(&self) -> ManinSymbolSpace {
        ManinSymbolSpace::new(self.level(), self.weight())
    }

    pub fn eigen_symbol(&self) -> Result<EigenSymbol> {
        let data = self.eigen_data(DEFAULT_EIGEN_BOUND)?;
        eigen_symbol_with_bound(&self.space(), &data, DEFAULT_EIGEN_BOUND)
    }

    /// `a_p`: `τ(p)`, or `a_p(E)` from the point count (also at bad `p`).
    pub fn a_p(&self, p: u64) -> Result<BigInt> {
        match self {
            Form::Delta => Ok(delta_qexp(p as usize).coefficient(p as usize).clone()),
            Form::Curve(e) => Ok(BigInt::from(count_points(e, p)?.a_ell)),
        }
    }
}

/// `θ_n` together with its invariants at the precision that certified them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaResult {
    pub raw: RawTheta,
    pub element: GroupRingElement,
    pub invariants: IwasawaInvariants,
    /// `θ` vanishes as an element of `Z_p[ζ][X]`, not just modulo `p^M`.
    pub exactly_zero: bool,
}

impl ThetaResult {
    pub fn precision(&self) -> u32 {
        self.element.precision()
    }

    pub fn to_json(&self) -> String {
        self.element.to_json_at_level(self.raw.n(), &self.invariants)
    }
}

/// `θ_n` for the symbol `phi`, with the default precision policy.
pub fn theta(phi: &EigenSymbol, p: u64, n: u32) -> Result<ThetaResult> {
    theta_from_raw(theta_raw(phi, p, n)?, n + DEFAULT_EXTRA_PRECISION)
}

/// Projects `raw` starting at precision `start`, doubling until μ/λ are
/// certified. An exactly vanishing `θ` returns `(∞, ∞)`, certified.
pub fn theta_from_raw(raw: RawTheta, start: u32) -> Result<ThetaResult> {
    let mut precision = start.max(1);
    if raw.twisted_is_zero()? {
        let element = project_twist(&raw, precision)?;
        return Ok(ThetaResult {
            raw,
            element,
            invariants: IwasawaInvariants::infinite(true),
            exactly_zero: true,
        });
    }
    loop {
        let element = project_twist(&raw, precision)?;
        let invariants = element.mu_lambda();
        if invariants.precision_certified {
            return Ok(ThetaResult {
                raw,
                element,
                invariants,
                exactly_zero: false,
            });
        }
        precision *= 2;
    }
}
