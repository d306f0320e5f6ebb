use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use super::group_ring::GroupRingElement;
use crate::error::{Error, Result};
use crate::exactnum::primes::{euler_phi, is_prime, pow_mod, prime_factors};
use crate::exactnum::{teichmuller, DlogTable, Rational};
use crate::modsymb::EigenSymbol;

/// The modulus whose units index `Θ_n`: `p^{n+1}`, or `2^{n+1}` for `p = 2`.
pub fn theta_modulus(p: u64, n: u32) -> u64 {
    if p == 2 {
        2u64.pow(n + 1)
    } else {
        p.pow(n + 1)
    }
}

/// `e` with `θ_n` living in a group ring of order `p^e`: `n`, or `n - 1`
/// for `p = 2` (the units modulo `2^{n+1}` divided by `±1`).
pub fn group_exponent(p: u64, n: u32) -> u32 {
    if p == 2 {
        n - 1
    } else {
        n
    }
}

fn check_level(p: u64, n: u32) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 && n == 0 {
        return Err(Error::InvalidArgument("for p = 2 the level starts at 1".into()));
    }
    Ok(())
}

/// Number of symbol evaluations needed for `Θ_n`.
pub fn evaluation_count(p: u64, n: u32) -> u64 {
    euler_phi(theta_modulus(p, n))
}

pub fn check_budget(p: u64, n: u32, budget: u64) -> Result<()> {
    if p.checked_pow(n.saturating_add(1)).is_none() {
        return Err(Error::Budget { needed: u64::MAX, budget });
    }
    let needed = evaluation_count(p, n);
    if needed > budget {
        return Err(Error::Budget { needed, budget });
    }
    Ok(())
}

/// `Θ_{n,f} = Σ_a C_a σ_a` with `C_a = φ({∞} - {a/m})|_{(X,Y)=(0,1)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawTheta {
    p: u64,
    n: u32,
    /// `(a, C_a)` for every unit `a` of the modulus, increasing in `a`.
    coeffs: Vec<(u64, BigInt)>,
}

impl RawTheta {
    pub fn new(p: u64, n: u32, mut coeffs: Vec<(u64, BigInt)>) -> Result<RawTheta> {
        check_level(p, n)?;
        let m = theta_modulus(p, n);
        coeffs.sort_by_key(|(a, _)| *a);
        let expected = euler_phi(m) as usize;
        let distinct = coeffs.windows(2).all(|w| w[0].0 != w[1].0);
        if coeffs.len() != expected || !distinct || coeffs.iter().any(|(a, _)| *a >= m || a % p == 0) {
            return Err(Error::InvalidArgument(format!(
                "Θ needs one coefficient per unit modulo {m} ({expected} in all)"
            )));
        }
        Ok(RawTheta { p, n, coeffs })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> u64 {
        theta_modulus(self.p, self.n)
    }

    pub fn group_exponent(&self) -> u32 {
        group_exponent(self.p, self.n)
    }

    pub fn coefficients(&self) -> &[(u64, BigInt)] {
        &self.coeffs
    }

    pub fn coefficient(&self, a: u64) -> Option<&BigInt> {
        self.coeffs
            .binary_search_by_key(&a, |(x, _)| *x)
            .ok()
            .map(|i| &self.coeffs[i].1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|(_, c)| c.is_zero())
    }

    /// Every `C_a` multiplied by `s`.
    pub fn scaled(&self, s: &BigInt) -> RawTheta {
        RawTheta {
            coeffs: self.coeffs.iter().map(|(a, c)| (*a, c * s)).collect(),
            ..self.clone()
        }
    }

    /// Whether `θ = Σ C_a (1+X)^{a'}` vanishes exactly.
    pub fn twisted_is_zero(&self) -> Result<bool> {
        self.twisted_is_zero_with(0)
    }

    /// Whether `Σ C_a ω(a)^{-power} (1+X)^{a'}` vanishes exactly.
    ///
    /// The Teichmüller values are roots of unity of order dividing `p - 1`
    /// (order 2 for `p = 2`), so each coefficient in the `(1+X)`-power basis
    /// lies in `Z[ζ]` and vanishes iff its reduction modulo the cyclotomic
    /// polynomial does.
    pub fn twisted_is_zero_with(&self, power: u32) -> Result<bool> {
        let p = self.p;
        let order = if p == 2 { 2 } else { p - 1 };
        let table = DlogTable::new(p, self.group_exponent())?;
        // ω(a) = ζ^k for a fixed generator of the residues
        let exponent_of = |r: u64| -> usize {
            if p == 2 {
                return if r == 1 { 0 } else { 1 };
            }
            let g = primitive_root(p);
            (0..order).find(|&k| pow_mod(g, k, p) == r).expect("unit residue") as usize
        };
        let width = p.pow(self.group_exponent()) as usize;
        let mut acc = vec![vec![BigInt::zero(); order as usize]; width];
        for (a, c) in &self.coeffs {
            let (j, r) = table.lookup(*a).expect("unit");
            let k = exponent_of(r);
            // ω(a)^{-power} = ζ^{-k·power}
            let slot = (order as usize - (k * power as usize) % order as usize) % order as usize;
            acc[j as usize][slot] += c;
        }
        let phi = cyclotomic_polynomial(order);
        Ok(acc.into_iter().all(|v| reduce_mod_monic(v, &phi).iter().all(|x| x.is_zero())))
    }
}

fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let factors = prime_factors(p - 1);
    (2..p)
        .find(|&g| factors.iter().all(|q| pow_mod(g, (p - 1) / q, p) != 1))
        .expect("primes have primitive roots")
}

/// `Φ_m` with coefficients from the constant term up.
fn cyclotomic_polynomial(m: u64) -> Vec<BigInt> {
    // x^m - 1 divided by Φ_d for every proper divisor d
    let mut poly = vec![BigInt::zero(); m as usize + 1];
    poly[0] = BigInt::from(-1);
    poly[m as usize] = BigInt::from(1);
    for d in 1..m {
        if m % d == 0 {
            poly = exact_divide(&poly, &cyclotomic_polynomial(d));
        }
    }
    poly
}

fn exact_divide(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![BigInt::zero(); num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd].clone();
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(|x| x.is_zero()));
    quot
}

/// Remainder of `v` (constant term first) modulo a monic polynomial.
fn reduce_mod_monic(mut v: Vec<BigInt>, modulus: &[BigInt]) -> Vec<BigInt> {
    let dd = modulus.len() - 1;
    for i in (dd..v.len()).rev() {
        let c = std::mem::take(&mut v[i]);
        if c.is_zero() {
            continue;
        }
        for (j, mj) in modulus.iter().enumerate().take(dd) {
            v[i - dd + j] -= &c * mj;
        }
    }
    v.truncate(dd);
    v
}

/// `C_a` for every unit `a` of the modulus, evaluated in parallel.
pub fn theta_raw(phi: &EigenSymbol, p: u64, n: u32) -> Result<RawTheta> {
    check_level(p, n)?;
    let m = theta_modulus(p, n);
    let units: Vec<u64> = (1..m).filter(|a| a % p != 0).collect();
    let coeffs: Vec<(u64, BigInt)> = units
        .par_iter()
        .map(|&a| {
            let r = Rational::new(BigInt::from(a), BigInt::from(m));
            (a, phi.theta_value(&r))
        })
        .collect();
    RawTheta::new(p, n, coeffs)
}

/// `θ = Σ_a C_a (1+X)^{a'}` modulo `p^precision`: the image of `Θ` under
/// `σ_a ↦ γ^{a'}`, where `a'` is the discrete log of `⟨a⟩ = a/ω(a)`.
pub fn project_twist(raw: &RawTheta, precision: u32) -> Result<GroupRingElement> {
    project_twist_with(raw, precision, 0)
}

/// `Σ_a C_a ω(a)^{-power} (1+X)^{a'}` modulo `p^precision`.
///
/// Plus symbols satisfy `C_{-a} = C_a`, so every odd power gives zero.
pub fn project_twist_with(raw: &RawTheta, precision: u32, power: u32) -> Result<GroupRingElement> {
    if precision == 0 {
        return Err(Error::InvalidArgument("precision must be at least 1".into()));
    }
    let p = raw.p;
    let table = DlogTable::new(p, raw.group_exponent())?;
    let modulus = BigInt::from(p).pow(precision);
    let residues: Vec<u64> = if p == 2 { vec![1, 3] } else { (1..p).collect() };
    let mut inv_omega = vec![BigInt::zero(); *residues.last().unwrap() as usize + 1];
    for r in residues {
        let w = teichmuller(&BigInt::from(r), p, precision)?;
        inv_omega[r as usize] = w.inverse()?.value().modpow(&BigInt::from(power), &modulus);
    }
    let width = p.pow(raw.group_exponent()) as usize;
    let mut gamma = vec![BigInt::zero(); width];
    for (a, c) in &raw.coeffs {
        let (j, r) = table.lookup(*a).expect("unit");
        gamma[j as usize] += c * &inv_omega[r as usize];
    }
    for g in gamma.iter_mut() {
        *g = num_integer::Integer::mod_floor(g, &modulus);
    }
    Ok(GroupRingElement::from_gamma_basis(p, raw.group_exponent(), precision, gamma))
}

/// Small helper for tests and callers holding `u64` coefficients.
pub fn raw_from_fn(p: u64, n: u32, f: impl Fn(u64) -> BigInt) -> Result<RawTheta> {
    check_level(p, n)?;
    let m = theta_modulus(p, n);
    RawTheta::new(p, n, (1..m).filter(|a| a % p != 0).map(|a| (a, f(a))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        let ints = |v: Vec<BigInt>| v.into_iter().map(|x| to_i(&x)).collect::<Vec<i64>>();
        fn to_i(x: &BigInt) -> i64 {
            x.try_into().unwrap()
        }
        assert_eq!(ints(cyclotomic_polynomial(1)), vec![-1, 1]);
        assert_eq!(ints(cyclotomic_polynomial(2)), vec![1, 1]);
        assert_eq!(ints(cyclotomic_polynomial(4)), vec![1, 0, 1]);
        assert_eq!(ints(cyclotomic_polynomial(6)), vec![1, -1, 1]);
    }

    #[test]
    fn domain_sizes() {
        assert_eq!(evaluation_count(3, 1), 6);
        assert_eq!(evaluation_count(2, 1), 2);
        assert_eq!(evaluation_count(2, 3), 8);
        assert!(raw_from_fn(2, 0, |_| BigInt::zero()).is_err());
        assert!(raw_from_fn(3, 1, |_| BigInt::zero()).unwrap().coefficients().len() == 6);
        assert!(RawTheta::new(3, 1, vec![(1, BigInt::zero())]).is_err());
        assert!(check_budget(7, 2, 1000).is_ok());
        assert!(matches!(check_budget(7, 6, 1000), Err(Error::Budget { .. })));
        assert!(matches!(check_budget(3, 200, 1000), Err(Error::Budget { .. })));
    }

    #[test]
    fn exact_zero_detection() {
        for (p, n) in [(2u64, 2u32), (2, 3), (3, 1), (5, 1), (7, 1), (5, 2)] {
            let zero = raw_from_fn(p, n, |_| BigInt::zero()).unwrap();
            assert!(zero.twisted_is_zero().unwrap());
            let one = raw_from_fn(p, n, |a| BigInt::from(if a == 1 { 1 } else { 0 })).unwrap();
            assert!(!one.twisted_is_zero().unwrap());
            assert!(!one.twisted_is_zero_with(1).unwrap());
            // an even function of a dies under the odd twist
            let m = theta_modulus(p, n);
            let even = raw_from_fn(p, n, |a| BigInt::from(a.min(m - a))).unwrap();
            assert!(even.twisted_is_zero_with(1).unwrap());
            assert!(project_twist_with(&even, 20, 1).unwrap().is_zero());
        }
        // modulo 25 the Teichmüller lifts are 1, 7, 18, 24, all with a' = 0
        let pick = |set: &'static [u64]| raw_from_fn(5, 1, move |a| BigInt::from(set.contains(&a) as i64)).unwrap();
        for (set, zero) in [(&[1u64, 24][..], true), (&[7, 18][..], true), (&[1, 7][..], false)] {
            let raw = pick(set);
            assert!(!raw.is_zero());
            assert_eq!(raw.twisted_is_zero_with(1).unwrap(), zero, "{set:?}");
            assert_eq!(project_twist_with(&raw, 30, 1).unwrap().is_zero(), zero);
        }
    }
}
