//! Truncated q-expansions: Δ as an η-product, general η-quotients and
//! coefficientwise congruence checks.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::primes::{is_prime, primes_up_to};

/// Coefficients `a_1, ..., a_B` of a q-expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    coefficients: Vec<BigInt>,
}

impl QSeries {
    pub fn from_coefficients(coefficients: Vec<BigInt>) -> Self {
        QSeries { coefficients }
    }

    pub fn bound(&self) -> usize {
        self.coefficients.len()
    }

    /// Coefficient of `q^n`, `1 <= n <= bound`.
    pub fn coefficient(&self, n: usize) -> &BigInt {
        assert!(n >= 1 && n <= self.bound(), "index {n} outside 1..={}", self.bound());
        &self.coefficients[n - 1]
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    /// `{"bound": B, "coefficients": [...]}` with exact integers.
    pub fn to_json(&self) -> String {
        let coeffs: Vec<String> = self.coefficients.iter().map(|c| c.to_string()).collect();
        format!(
            "{{\"bound\":{},\"coefficients\":[{}]}}",
            self.bound(),
            coeffs.join(",")
        )
    }
}

/// Exponents and signs of `prod_{n>=1} (1 - x^n)` below `len` (Euler's
/// pentagonal theorem), scaled to `x = q^scale`.
fn euler_product_terms(scale: usize, len: usize) -> Vec<(usize, i64)> {
    let mut terms = vec![(0usize, 1i64)];
    let mut k = 1usize;
    loop {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let g1 = k * (3 * k - 1) / 2 * scale;
        let g2 = k * (3 * k + 1) / 2 * scale;
        if g1 >= len {
            break;
        }
        terms.push((g1, sign));
        if g2 < len {
            terms.push((g2, sign));
        }
        k += 1;
    }
    terms
}

/// `prod_{n>=1} (1 - q^{scale n})^exponent` truncated to degrees `< len`.
///
/// Uses the power recurrence `n G_n = sum_k ((e+1)k - n) P_k G_{n-k}` over the
/// sparse pentagonal expansion `P`.
fn euler_product_power(scale: usize, exponent: i64, len: usize) -> Vec<BigInt> {
    let mut g = vec![BigInt::zero(); len];
    if len == 0 {
        return g;
    }
    g[0] = BigInt::one();
    let terms: Vec<(usize, i64)> = euler_product_terms(scale, len)
        .into_iter()
        .filter(|&(k, _)| k > 0)
        .collect();
    for n in 1..len {
        let mut acc = BigInt::zero();
        for &(k, sign) in &terms {
            if k > n {
                break;
            }
            let weight = (exponent + 1) * k as i64 - n as i64;
            if weight != 0 {
                acc += &g[n - k] * (weight * sign);
            }
        }
        let (quot, rem) = acc.div_rem(&BigInt::from(n));
        debug_assert!(rem.is_zero());
        g[n] = quot;
    }
    g
}

fn truncated_product(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// τ(1), ..., τ(B) from `q prod (1 - q^n)^24`.
pub fn delta_qexp(bound: usize) -> QSeries {
    assert!(bound >= 1, "bound must be positive");
    QSeries::from_coefficients(euler_product_power(1, 24, bound))
}

/// Expansion of `prod_d η(d z)^{e_d}` through `q^bound`.
pub fn eta_quotient_qexp(factors: &[(u64, i64)], bound: usize) -> Result<QSeries> {
    if bound == 0 {
        return Err(Error::InvalidArgument("bound must be positive".into()));
    }
    let weighted: i64 = factors.iter().map(|&(d, e)| d as i64 * e).sum();
    if weighted <= 0 || weighted % 24 != 0 || factors.iter().any(|&(d, _)| d == 0) {
        return Err(Error::BadEtaLeadingPower {
            numerator: weighted,
        });
    }
    let lead = (weighted / 24) as usize;
    let mut coefficients = vec![BigInt::zero(); bound];
    if lead <= bound {
        let len = bound - lead + 1;
        let mut series: Option<Vec<BigInt>> = None;
        for &(d, e) in factors {
            if e == 0 {
                continue;
            }
            let factor = euler_product_power(d as usize, e, len);
            series = Some(match series {
                None => factor,
                Some(s) => truncated_product(&s, &factor, len),
            });
        }
        let series = series.unwrap_or_else(|| {
            let mut one = vec![BigInt::zero(); len];
            one[0] = BigInt::one();
            one
        });
        for (i, c) in series.into_iter().enumerate() {
            coefficients[lead + i - 1] = c;
        }
    }
    Ok(QSeries::from_coefficients(coefficients))
}

/// The weight-2 newform of level 32, `η(4z)^2 η(8z)^2`.
pub fn f32_qexp(bound: usize) -> QSeries {
    eta_quotient_qexp(&[(4, 2), (8, 2)], bound).expect("valid eta quotient")
}

/// The weight-2 newform of level 27, `η(3z)^2 η(9z)^2`.
pub fn f27_qexp(bound: usize) -> QSeries {
    eta_quotient_qexp(&[(3, 2), (9, 2)], bound).expect("valid eta quotient")
}

/// Outcome of a coefficientwise congruence scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceReport {
    pub prime: u64,
    pub bound: usize,
    /// Least `n` with `a_n(f) != a_n(g) mod p`.
    pub first_failure: Option<usize>,
}

impl CongruenceReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

pub fn check_congruence_qexp(f: &QSeries, g: &QSeries, p: u64) -> Result<CongruenceReport> {
    if f.bound() != g.bound() {
        return Err(Error::BoundMismatch {
            left: f.bound(),
            right: g.bound(),
        });
    }
    let modulus = BigInt::from(p);
    let first_failure = f
        .coefficients
        .iter()
        .zip(&g.coefficients)
        .position(|(a, b)| !(a - b).is_multiple_of(&modulus))
        .map(|i| i + 1);
    Ok(CongruenceReport {
        prime: p,
        bound: f.bound(),
        first_failure,
    })
}

/// Result of scanning `τ(ℓ) = 1 + ℓ mod p` over primes `ℓ <= bound`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TauLemmaReport {
    pub prime: u64,
    pub bound: usize,
    pub primes_checked: usize,
    pub failures: Vec<u64>,
}

impl TauLemmaReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn check_tau_lemma(p: u64, bound: usize) -> Result<TauLemmaReport> {
    check_tau_lemma_with(&delta_qexp(bound.max(1)), p)
}

/// Same scan against an already computed expansion of Δ.
pub fn check_tau_lemma_with(delta: &QSeries, p: u64) -> Result<TauLemmaReport> {
    if p != 2 && p != 3 {
        return Err(Error::InvalidArgument(format!(
            "the tau congruence is stated for p in {{2, 3}}, got {p}"
        )));
    }
    let modulus = BigInt::from(p);
    let mut checked = 0;
    let mut failures = Vec::new();
    for ell in primes_up_to(delta.bound() as u64) {
        if ell == p {
            continue;
        }
        checked += 1;
        let diff = delta.coefficient(ell as usize) - BigInt::from(1 + ell);
        if !diff.is_multiple_of(&modulus) {
            failures.push(ell);
        }
    }
    Ok(TauLemmaReport {
        prime: p,
        bound: delta.bound(),
        primes_checked: checked,
        failures,
    })
}

/// τ(ℓ) for a prime `ℓ <= delta.bound()`; convenience for Hecke eigen-data.
pub fn prime_coefficients(series: &QSeries, primes: &[u64]) -> Vec<(u64, BigInt)> {
    primes
        .iter()
        .filter(|&&l| is_prime(l) && (l as usize) <= series.bound())
        .map(|&l| (l, series.coefficient(l as usize).clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    /// Naive product expansion, one factor at a time.
    fn brute_eta(factors: &[(usize, i64)], bound: usize) -> Vec<BigInt> {
        let lead: i64 = factors.iter().map(|&(d, e)| d as i64 * e).sum::<i64>() / 24;
        let len = bound + 1;
        let mut s = vec![BigInt::zero(); len];
        s[0] = BigInt::one();
        for &(d, e) in factors {
            for n in 1.. {
                let step = d * n;
                if step >= len {
                    break;
                }
                for _ in 0..e {
                    for i in (step..len).rev() {
                        let t = s[i - step].clone();
                        s[i] -= t;
                    }
                }
            }
        }
        (1..=bound)
            .map(|n| {
                if (n as i64) < lead {
                    BigInt::zero()
                } else {
                    s[n - lead as usize].clone()
                }
            })
            .collect()
    }

    #[test]
    fn tau_values() {
        let d = delta_qexp(11);
        assert_eq!(d.coefficient(1), &b(1));
        assert_eq!(d.coefficient(2), &b(-24));
        assert_eq!(d.coefficient(3), &b(252));
        assert_eq!(d.coefficient(11), &b(534612));
    }

    #[test]
    fn eta_quotients_match_brute_force() {
        let delta = eta_quotient_qexp(&[(1, 24)], 3).unwrap();
        assert_eq!(delta.coefficients(), &[b(1), b(-24), b(252)]);
        for (factors, bound) in [
            (vec![(3usize, 2i64), (9, 2)], 60),
            (vec![(4, 2), (8, 2)], 60),
            (vec![(1, 2), (11, 2)], 40),
            (vec![(1, 24)], 40),
        ] {
            let spec: Vec<(u64, i64)> = factors.iter().map(|&(d, e)| (d as u64, e)).collect();
            let fast = eta_quotient_qexp(&spec, bound).unwrap();
            assert_eq!(fast.coefficients(), brute_eta(&factors, bound).as_slice());
        }
        let f27 = f27_qexp(5);
        assert_eq!(f27.coefficient(1), &b(1));
        // brute-force oracle for f32 at q^3, reduced mod 2 against tau(3)
        let f32 = f32_qexp(3);
        let brute = brute_eta(&[(4, 2), (8, 2)], 3);
        assert_eq!(f32.coefficient(3), &brute[2]);
        assert!((f32.coefficient(3) - b(252)).is_even());
    }

    #[test]
    fn negative_exponents_invert() {
        // eta(z)^24 * eta(z)^-24 * eta(2z)^12 = eta(2z)^12, leading power 1
        let a = eta_quotient_qexp(&[(1, 24), (1, -24), (2, 12)], 30).unwrap();
        let b2 = eta_quotient_qexp(&[(2, 12)], 30).unwrap();
        assert_eq!(a, b2);
    }

    #[test]
    fn bad_leading_power() {
        assert!(matches!(
            eta_quotient_qexp(&[(1, 2)], 10),
            Err(Error::BadEtaLeadingPower { .. })
        ));
        assert!(eta_quotient_qexp(&[(1, -24)], 10).is_err());
    }

    #[test]
    fn congruences() {
        let d = delta_qexp(500);
        assert!(check_congruence_qexp(&d, &d, 7).unwrap().passed());
        assert!(check_congruence_qexp(&d, &f27_qexp(500), 3).unwrap().passed());
        assert!(check_congruence_qexp(&d, &f32_qexp(500), 2).unwrap().passed());
        let r = check_congruence_qexp(&delta_qexp(20), &f27_qexp(20), 5).unwrap();
        let first = r.first_failure.expect("no congruence mod 5");
        assert!(first <= 20);
        let r2 = check_congruence_qexp(&f27_qexp(20), &delta_qexp(20), 5).unwrap();
        assert_eq!(r, r2);
        assert!(check_congruence_qexp(&delta_qexp(5), &delta_qexp(6), 2).is_err());
    }

    #[test]
    fn multiplicativity() {
        let d = delta_qexp(400);
        assert_eq!(d.coefficient(6), &(d.coefficient(2) * d.coefficient(3)));
        for m in 1..=20usize {
            for n in 1..=20usize {
                if num_integer::gcd(m, n) == 1 {
                    assert_eq!(d.coefficient(m * n), &(d.coefficient(m) * d.coefficient(n)));
                }
            }
        }
    }

    #[test]
    fn tau_lemma_small_cases() {
        let d = delta_qexp(3);
        assert!(((d.coefficient(2) - b(3)) % 3i64).is_zero());
        assert!(((d.coefficient(3) - b(4)) % 2i64).is_zero());
        assert!(check_tau_lemma(3, 2000).unwrap().passed());
        assert!(check_tau_lemma(2, 2000).unwrap().passed());
        assert!(check_tau_lemma(5, 100).is_err());
    }

    #[test]
    fn json_shape() {
        assert_eq!(delta_qexp(3).to_json(), r#"{"bound":3,"coefficients":[1,-24,252]}"#);
    }
}
