use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{ordp_int, Valuation};

pub const DEFAULT_GUARD: u32 = 2;

/// `μ` and `λ` of a group-ring element; both infinite for zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IwasawaInvariants {
    pub mu: Valuation,
    pub lambda: Valuation,
    pub precision_certified: bool,
}

impl IwasawaInvariants {
    pub fn infinite(precision_certified: bool) -> Self {
        IwasawaInvariants {
            mu: Valuation::Infinite,
            lambda: Valuation::Infinite,
            precision_certified,
        }
    }

    pub fn lambda_value(&self) -> Option<u64> {
        self.lambda.finite().map(|v| v as u64)
    }

    pub fn mu_value(&self) -> Option<u64> {
        self.mu.finite().map(|v| v as u64)
    }
}

impl fmt::Display for IwasawaInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "mu={} lambda={}", self.mu, self.lambda)?;
        if !self.precision_certified {
            f.write_str(" (uncertified)")?;
        }
        Ok(())
    }
}

fn binomial_row(n: usize) -> Vec<Vec<BigInt>> {
    let mut rows = vec![vec![BigInt::one()]];
    for i in 1..=n {
        let prev = &rows[i - 1];
        let mut row = vec![BigInt::one(); i + 1];
        for j in 1..i {
            row[j] = &prev[j - 1] + &prev[j];
        }
        rows.push(row);
    }
    rows
}

/// An element `Σ a_i X^i` of `(Z/p^M)[X]/((1+X)^{p^n} - 1)`, `i < p^n`,
/// with coefficients reduced into `[0, p^M)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupRingElement {
    p: u64,
    n: u32,
    precision: u32,
    coeffs: Vec<BigInt>,
}

impl GroupRingElement {
    pub fn new(p: u64, n: u32, precision: u32, coeffs: Vec<BigInt>) -> Result<GroupRingElement> {
        let width = p.pow(n) as usize;
        if coeffs.len() != width {
            return Err(Error::InvalidArgument(format!(
                "expected {width} coefficients, got {}",
                coeffs.len()
            )));
        }
        let modulus = BigInt::from(p).pow(precision);
        let coeffs = coeffs.into_iter().map(|c| c.mod_floor(&modulus)).collect();
        Ok(GroupRingElement {
            p,
            n,
            precision,
            coeffs,
        })
    }

    pub fn zero(p: u64, n: u32, precision: u32) -> GroupRingElement {
        GroupRingElement {
            p,
            n,
            precision,
            coeffs: vec![BigInt::zero(); p.pow(n) as usize],
        }
    }

    /// `ω_m = (1+X)^{p^m} - 1` as an element at level `n >= m`.
    pub fn augmentation_cycle(p: u64, m: u32, n: u32, precision: u32) -> GroupRingElement {
        assert!(m <= n, "ω_m lives at levels n >= m");
        let mut gamma = vec![BigInt::zero(); p.pow(n) as usize];
        gamma[0] = BigInt::from(-1);
        let width = gamma.len();
        gamma[p.pow(m) as usize % width] += 1;
        Self::from_gamma_basis(p, n, precision, gamma)
    }

    /// From coefficients `g_j` of `(1+X)^j`.
    pub fn from_gamma_basis(p: u64, n: u32, precision: u32, gamma: Vec<BigInt>) -> GroupRingElement {
        let width = p.pow(n) as usize;
        assert_eq!(gamma.len(), width, "expected {width} coefficients");
        let modulus = BigInt::from(p).pow(precision);
        // Horner in (1+X): acc <- acc·(1+X) + g_j, from the top down
        let mut acc = vec![BigInt::zero(); width];
        for g in gamma.iter().rev() {
            for i in (1..width).rev() {
                let lower = acc[i - 1].clone();
                acc[i] += lower;
                acc[i] = acc[i].mod_floor(&modulus);
            }
            acc[0] = (&acc[0] + g).mod_floor(&modulus);
        }
        GroupRingElement {
            p,
            n,
            precision,
            coeffs: acc,
        }
    }

    /// Coefficients `g_j` with `Σ a_i X^i = Σ g_j (1+X)^j`.
    pub fn to_gamma_basis(&self) -> Vec<BigInt> {
        let width = self.coeffs.len();
        let modulus = self.modulus();
        let binom = binomial_row(width.saturating_sub(1));
        // X^i = Σ_j binom(i, j) (-1)^{i-j} (1+X)^j
        let mut out = vec![BigInt::zero(); width];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in binom[i].iter().enumerate() {
                let term = a * b;
                if (i - j) % 2 == 0 {
                    out[j] += term;
                } else {
                    out[j] -= term;
                }
            }
        }
        out.into_iter().map(|x| x.mod_floor(&modulus)).collect()
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn modulus(&self) -> BigInt {
        BigInt::from(self.p).pow(self.precision)
    }

    /// `a_i`, the coefficient of `X^i`.
    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The same element modulo `p^precision`, for `precision <= M`.
    pub fn truncate(&self, precision: u32) -> GroupRingElement {
        let precision = precision.min(self.precision);
        Self::new(self.p, self.n, precision, self.coeffs.clone()).expect("same width")
    }

    pub fn scale(&self, s: &BigInt) -> GroupRingElement {
        Self::new(self.p, self.n, self.precision, self.coeffs.iter().map(|c| c * s).collect()).expect("same width")
    }

    fn check_compatible(&self, other: &GroupRingElement) -> Result<()> {
        if (self.p, self.n) != (other.p, other.n) {
            return Err(Error::Incompatible(format!(
                "(p, n) = ({}, {}) vs ({}, {})",
                self.p, self.n, other.p, other.n
            )));
        }
        Ok(())
    }

    /// Sum, at the smaller of the two precisions.
    pub fn add(&self, other: &GroupRingElement) -> Result<GroupRingElement> {
        self.check_compatible(other)?;
        let prec = self.precision.min(other.precision);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Self::new(self.p, self.n, prec, coeffs)
    }

    /// Product in the group ring: cyclic convolution in the `(1+X)` basis.
    pub fn mul(&self, other: &GroupRingElement) -> Result<GroupRingElement> {
        self.check_compatible(other)?;
        let prec = self.precision.min(other.precision);
        let (a, b) = (self.to_gamma_basis(), other.to_gamma_basis());
        let width = a.len();
        let mut out = vec![BigInt::zero(); width];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[(i + j) % width] += x * y;
            }
        }
        let modulus = BigInt::from(self.p).pow(prec);
        let out = out.into_iter().map(|x| x.mod_floor(&modulus)).collect();
        Ok(Self::from_gamma_basis(self.p, self.n, prec, out))
    }

    /// `μ = min_i ord_p(a_i)`, `λ = min{i : ord_p(a_i) = μ}`.
    pub fn mu_lambda(&self) -> IwasawaInvariants {
        self.mu_lambda_with_guard(DEFAULT_GUARD)
    }

    /// As [`mu_lambda`](Self::mu_lambda); finite results are certified when
    /// `μ < M - guard`. Zero at working precision is never certified.
    pub fn mu_lambda_with_guard(&self, guard: u32) -> IwasawaInvariants {
        let mut best: Option<(i64, usize)> = None;
        for (i, c) in self.coeffs.iter().enumerate() {
            if let Valuation::Finite(v) = ordp_int(c, self.p) {
                if best.map_or(true, |(m, _)| v < m) {
                    best = Some((v, i));
                }
            }
        }
        match best {
            None => IwasawaInvariants::infinite(false),
            Some((mu, lambda)) => IwasawaInvariants {
                mu: Valuation::Finite(mu),
                lambda: Valuation::Finite(lambda as i64),
                precision_certified: (mu as i64) + (guard as i64) < self.precision as i64,
            },
        }
    }

    /// Image at level `n - 1` under `γ_n ↦ γ_{n-1}`: exponents of `(1+X)`
    /// are reduced modulo `p^{n-1}`.
    pub fn corestrict(&self) -> Result<GroupRingElement> {
        if self.n == 0 {
            return Err(Error::InvalidArgument("level 0 has no corestriction".into()));
        }
        let width = self.p.pow(self.n - 1) as usize;
        let mut folded = vec![BigInt::zero(); width];
        for (j, g) in self.to_gamma_basis().into_iter().enumerate() {
            folded[j % width] += g;
        }
        let modulus = self.modulus();
        let folded = folded.into_iter().map(|x| x.mod_floor(&modulus)).collect();
        Ok(Self::from_gamma_basis(self.p, self.n - 1, self.precision, folded))
    }

    /// Corestriction computed as the remainder of `Σ a_i X^i` on division
    /// by `(1+X)^{p^{n-1}} - 1`.
    pub fn corestrict_by_division(&self) -> Result<GroupRingElement> {
        if self.n == 0 {
            return Err(Error::InvalidArgument("level 0 has no corestriction".into()));
        }
        let (_, rem) = self.divide_by_cycle_raw();
        Self::new(self.p, self.n - 1, self.precision, rem)
    }

    /// Quotient and remainder of the `X`-polynomial by `ω_{n-1}`.
    fn divide_by_cycle_raw(&self) -> (Vec<BigInt>, Vec<BigInt>) {
        let d = self.p.pow(self.n - 1) as usize;
        let modulus = self.modulus();
        let binom = binomial_row(d);
        // ω = Σ_{t=1}^{d} binom(d, t) X^t, monic of degree d
        let omega: Vec<BigInt> = (0..=d).map(|t| if t == 0 { BigInt::zero() } else { binom[d][t].clone() }).collect();
        let mut rem = self.coeffs.clone();
        let qlen = rem.len() - d;
        let mut quot = vec![BigInt::zero(); qlen];
        for i in (0..qlen).rev() {
            let c = rem[i + d].mod_floor(&modulus);
            if c.is_zero() {
                rem[i + d] = BigInt::zero();
                continue;
            }
            for (t, w) in omega.iter().enumerate() {
                if !w.is_zero() {
                    rem[i + t] = (&rem[i + t] - &c * w).mod_floor(&modulus);
                }
            }
            quot[i] = c;
        }
        rem.truncate(d);
        (quot, rem.into_iter().map(|x| x.mod_floor(&modulus)).collect())
    }

    /// `G` with `F = G · ω_{n-1}`, where `F = self` sits at level `n`.
    pub fn divide_by_augmentation_cycle(&self) -> Result<GroupRingElement> {
        if self.n == 0 {
            return Err(Error::InvalidArgument("level 0 has no augmentation cycle below it".into()));
        }
        let (quot, rem) = self.divide_by_cycle_raw();
        if let Some(index) = rem.iter().position(|x| !x.is_zero()) {
            return Err(Error::NotDivisible { index });
        }
        let mut coeffs = quot;
        coeffs.resize(self.coeffs.len(), BigInt::zero());
        Self::new(self.p, self.n, self.precision, coeffs)
    }

    /// The substitution `X ↦ (1+X)^u - 1`, i.e. `γ ↦ γ^u`.
    pub fn change_generator(&self, u: u64) -> Result<GroupRingElement> {
        if u % self.p == 0 {
            return Err(Error::NotAUnit {
                value: u.to_string(),
                modulus: self.p.to_string(),
            });
        }
        let gamma = self.to_gamma_basis();
        let width = gamma.len() as u64;
        let mut out = vec![BigInt::zero(); gamma.len()];
        for (j, g) in gamma.into_iter().enumerate() {
            out[((j as u128 * u as u128) % width as u128) as usize] += g;
        }
        Ok(Self::from_gamma_basis(self.p, self.n, self.precision, out))
    }

    /// `{"p":, "n":, "M":, "basis":"X-power", "coefficients":[...], "mu":, "lambda":, "precision_certified":}`
    pub fn to_json(&self, inv: &IwasawaInvariants) -> String {
        self.to_json_at_level(self.n, inv)
    }

    /// As [`to_json`](Self::to_json), reporting `level` as `n`.
    pub fn to_json_at_level(&self, level: u32, inv: &IwasawaInvariants) -> String {
        let coeffs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        format!(
            "{{\"p\":{},\"n\":{},\"M\":{},\"basis\":\"X-power\",\"coefficients\":[{}],\"mu\":{},\"lambda\":{},\"precision_certified\":{}}}",
            self.p,
            level,
            self.precision,
            coeffs.join(","),
            json_valuation(inv.mu),
            json_valuation(inv.lambda),
            inv.precision_certified
        )
    }
}

/// A finite valuation as a JSON number, `∞` as the string `"inf"`.
pub fn json_valuation(v: Valuation) -> String {
    match v {
        Valuation::Finite(x) => x.to_string(),
        Valuation::Infinite => "\"inf\"".to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn el(p: u64, n: u32, m: u32, c: &[i64]) -> GroupRingElement {
        let mut v: Vec<BigInt> = c.iter().map(|&x| BigInt::from(x)).collect();
        v.resize(p.pow(n) as usize, BigInt::zero());
        GroupRingElement::new(p, n, m, v).unwrap()
    }

    #[test]
    fn definition_examples() {
        let f = el(3, 1, 5, &[3, 0, 1]);
        let inv = f.mu_lambda();
        assert_eq!((inv.mu, inv.lambda), (Valuation::Finite(0), Valuation::Finite(2)));
        assert!(inv.precision_certified);
        let z = GroupRingElement::zero(3, 2, 10).mu_lambda();
        assert_eq!(z, IwasawaInvariants::infinite(false));
        let g = el(3, 1, 3, &[9, 18]);
        let inv = g.mu_lambda();
        assert_eq!((inv.mu, inv.lambda), (Valuation::Finite(2), Valuation::Finite(0)));
        assert!(!inv.precision_certified);
    }

    #[test]
    fn basis_round_trip_and_cycles() {
        let f = el(3, 2, 6, &[1, 2, 3, 4, 5, 6, 7, 8, 9]);
        assert_eq!(GroupRingElement::from_gamma_basis(3, 2, 6, f.to_gamma_basis()), f);
        // corestriction of ω_n is zero, of a constant is the constant
        let w = GroupRingElement::augmentation_cycle(3, 1, 2, 6);
        assert!(w.corestrict().unwrap().is_zero());
        let c = el(3, 2, 6, &[5]);
        assert_eq!(c.corestrict().unwrap(), el(3, 1, 6, &[5]));
        // ω_n / ω_n = 1
        assert_eq!(w.divide_by_augmentation_cycle().unwrap(), el(3, 2, 6, &[1]));
        assert!(matches!(c.divide_by_augmentation_cycle(), Err(Error::NotDivisible { index: 0 })));
    }

    fn arb_element() -> impl Strategy<Value = GroupRingElement> {
        (prop::sample::select(vec![(2u64, 3u32), (3, 2), (3, 3), (5, 2), (7, 2)]), 1u32..12).prop_flat_map(|((p, n), m)| {
            let width = p.pow(n) as usize;
            prop::collection::vec(0i64..1_000_000, width).prop_map(move |v| {
                GroupRingElement::new(p, n, m, v.into_iter().map(BigInt::from).collect()).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn corestriction_routes_agree(f in arb_element()) {
            prop_assert_eq!(f.corestrict().unwrap(), f.corestrict_by_division().unwrap());
        }

        #[test]
        fn division_round_trips(f in arb_element()) {
            let n = f.n();
            let w = GroupRingElement::augmentation_cycle(f.p(), n - 1, n, f.precision());
            let prod = f.mul(&w).unwrap();
            prop_assert!(prod.corestrict().unwrap().is_zero());
            let g = prod.divide_by_augmentation_cycle().unwrap();
            prop_assert_eq!(g.mul(&w).unwrap(), prod.clone());
            let (pi, gi) = (prod.mu_lambda(), g.mu_lambda());
            if pi.mu == gi.mu && pi.mu.is_finite() {
                prop_assert_eq!(pi.lambda_value().unwrap(), gi.lambda_value().unwrap() + f.p().pow(n - 1));
            }
        }

        #[test]
        fn invariants_survive_generator_change_and_unit_scaling(f in arb_element(), u in 1u64..200, s in 1i64..500) {
            let p = f.p();
            prop_assume!(u % p != 0 && s % p as i64 != 0);
            let base = f.mu_lambda();
            let g = f.change_generator(u).unwrap().mu_lambda();
            prop_assert_eq!((base.mu, base.lambda), (g.mu, g.lambda));
            let h = f.scale(&BigInt::from(s)).mu_lambda();
            prop_assert_eq!((base.mu, base.lambda), (h.mu, h.lambda));
        }
    }
}
