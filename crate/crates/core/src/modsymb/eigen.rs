use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::linalg::{primitive_integer_vector, Echelon, SparseRow};
use super::p1::P1List;
use super::space::{act_on_generator, binomial, heilbronn_merel, monomial_action, ManinSymbolSpace};
use super::HomogeneousPoly;
use crate::curves::{count_points, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::exactnum::primes::primes_up_to;
use crate::exactnum::{cfrac_paths, Cusp, Rational, UnimodularPath};
use crate::qseries::delta_qexp;

pub const DEFAULT_EIGEN_BOUND: u64 = 50;

/// Hecke eigenvalues `ell ↦ a_ell` at primes not dividing the level.
pub type EigenData = Vec<(u64, BigInt)>;

/// `τ(ell)` for primes `ell <= bound`.
pub fn eigen_data_for_delta(bound: u64) -> EigenData {
    let delta = delta_qexp(bound.max(2) as usize);
    primes_up_to(bound)
        .into_iter()
        .map(|l| (l, delta.coefficient(l as usize).clone()))
        .collect()
}

/// `a_ell(E)` from point counts, for primes `ell <= bound` of good reduction.
pub fn eigen_data_for_curve(curve: &WeierstrassCurve, bound: u64) -> Result<EigenData> {
    primes_up_to(bound)
        .into_iter()
        .filter(|l| curve.conductor() % l != 0)
        .map(|l| Ok((l, BigInt::from(count_points(curve, l)?.a_ell))))
        .collect()
}

/// A Hecke eigen-functional on the plus quotient, stored by its values on
/// every Manin generator. The values are coprime integers with the first
/// nonzero one positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenSymbol {
    level: u64,
    weight: u32,
    p1: P1List,
    values: Vec<BigInt>,
    eigenvalues: EigenData,
    dimension: usize,
}

pub fn eigen_symbol(space: &ManinSymbolSpace, data: &EigenData) -> Result<EigenSymbol> {
    eigen_symbol_with_bound(space, data, DEFAULT_EIGEN_BOUND)
}

/// Intersects the kernels of `T_ell - a_ell` over the primes of `data` up
/// to `bound` (skipping primes dividing the level) until a line remains.
pub fn eigen_symbol_with_bound(space: &ManinSymbolSpace, data: &EigenData, bound: u64) -> Result<EigenSymbol> {
    let dim = space.dimension();
    let mut ech = Echelon::new(dim);
    let mut used: EigenData = Vec::new();
    let mut last = 0;
    let mut primes: Vec<&(u64, BigInt)> = data
        .iter()
        .filter(|(l, _)| *l <= bound && space.level() % l != 0)
        .collect();
    primes.sort_by_key(|(l, _)| *l);
    for (ell, a) in primes {
        if ech.nullity() <= 1 {
            break;
        }
        last = *ell;
        used.push((*ell, a.clone()));
        let t = space.hecke_matrix(*ell);
        // T ψ = a ψ for the column vector ψ of basis values
        for (i, row) in t.iter().enumerate() {
            let mut shifted = row.clone();
            shifted[i] -= Rational::from_integer(a.clone());
            let ints = primitive_integer_vector(&shifted);
            let sparse: SparseRow = ints.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect();
            ech.insert(sparse);
        }
    }
    match ech.nullity() {
        0 => return Err(Error::NoEigenvector { prime: last }),
        1 => {}
        d => return Err(Error::NotRankOne { dimension: d, bound }),
    }
    let psi = ech.kernel().pop().expect("one kernel vector");
    let raw: Vec<Rational> = (0..space.num_generators())
        .map(|g| {
            space
                .expression(g)
                .iter()
                .fold(Rational::zero(), |acc, (b, c)| acc + c * Rational::from_integer(psi[*b].clone()))
        })
        .collect();
    let mut values = primitive_integer_vector(&raw);
    if values.iter().find(|v| !v.is_zero()).is_some_and(|v| v.is_negative()) {
        values.iter_mut().for_each(|v| *v = -&*v);
    }
    Ok(EigenSymbol {
        level: space.level(),
        weight: space.weight(),
        p1: space.p1().clone(),
        values,
        eigenvalues: used,
        dimension: dim,
    })
}

fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf29ce484222325u64, |h, b| (h ^ *b as u64).wrapping_mul(0x100000001b3))
}

impl EigenSymbol {
    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn eigenvalues(&self) -> &EigenData {
        &self.eigenvalues
    }

    /// Dimension of the plus quotient the symbol was extracted from.
    pub fn space_dimension(&self) -> usize {
        self.dimension
    }

    /// Value on the generator `[X^i Y^{k-2-i}, point]`.
    pub fn generator_value(&self, i: u32, point: usize) -> &BigInt {
        &self.values[i as usize + (self.weight - 1) as usize * point]
    }

    /// Multiplies the symbol by `s` and renormalizes; a fixed point for
    /// every nonzero `s`.
    pub fn renormalized(&self, s: &Rational) -> EigenSymbol {
        let scaled: Vec<Rational> = self.values.iter().map(|v| Rational::from_integer(v.clone()) * s).collect();
        let mut values = primitive_integer_vector(&scaled);
        if values.iter().find(|v| !v.is_zero()).is_some_and(|v| v.is_negative()) {
            values.iter_mut().for_each(|v| *v = -&*v);
        }
        EigenSymbol { values, ..self.clone() }
    }

    /// Checks `Σ_h ψ(x·h) = a ψ(x)` on every generator `x`, with `h`
    /// running over the Heilbronn matrices of determinant `ell`.
    pub fn is_hecke_eigen(&self, ell: u64, a: &BigInt) -> bool {
        let hs = heilbronn_merel(ell);
        (0..self.values.len()).all(|g| {
            let lhs = hs
                .iter()
                .flat_map(|h| act_on_generator(&self.p1, self.weight, g, h))
                .fold(BigInt::zero(), |acc, (t, c)| acc + c * &self.values[t]);
            lhs == a * &self.values[g]
        })
    }

    /// `ψ` on `x^i y^{w-i}` over the unimodular path `g`, i.e. the Manin
    /// symbol `[P|g, (c : d)]` for `g` in `SL_2(Z)`.
    fn unimodular_values(&self, g: &UnimodularPath) -> Vec<BigInt> {
        let g = g.to_sl2();
        let w = self.weight - 2;
        let point = self.p1.index_big(&g.c, &g.d).expect("bottom row is coprime");
        (0..=w)
            .map(|i| {
                monomial_action(i, w, &g.a, &g.b, &g.c, &g.d)
                    .iter()
                    .enumerate()
                    .fold(BigInt::zero(), |acc, (m, coef)| acc + coef * self.generator_value(m as u32, point))
            })
            .collect()
    }

    /// `ψ(x^i y^{w-i} {r, ∞})` for every `i`.
    fn values_to_infinity(&self, r: &Rational) -> Vec<BigInt> {
        let w = self.weight - 2;
        let mut acc = vec![BigInt::zero(); w as usize + 1];
        for g in cfrac_paths(r) {
            for (a, v) in acc.iter_mut().zip(self.unimodular_values(&g)) {
                *a -= v;
            }
        }
        acc
    }

    fn to_poly(&self, vals: Vec<BigInt>) -> HomogeneousPoly {
        let w = self.weight - 2;
        HomogeneousPoly::new(
            vals.into_iter()
                .enumerate()
                .map(|(i, v)| Rational::from_integer(v * binomial(w, i as u32)))
                .collect(),
        )
    }

    /// `φ({∞} - {r})`, with the `X^i Y^{w-i}` coefficient equal to
    /// `binom(w, i) ψ(x^i y^{w-i} {r, ∞})`.
    pub fn evaluate(&self, r: &Rational) -> HomogeneousPoly {
        self.to_poly(self.values_to_infinity(r))
    }

    /// `φ({∞} - {c})` for any cusp, zero at `∞`.
    pub fn evaluate_cusp(&self, c: &Cusp) -> HomogeneousPoly {
        match c {
            Cusp::Infinity => HomogeneousPoly::zero(self.weight - 2),
            Cusp::Finite(r) => self.evaluate(r),
        }
    }

    /// `φ({g∞} - {g0})` for a single unimodular path.
    pub fn evaluate_unimodular(&self, g: &UnimodularPath) -> HomogeneousPoly {
        self.to_poly(self.unimodular_values(g))
    }

    /// `φ({∞} - {r})` at `(X, Y) = (0, 1)`.
    pub fn theta_value(&self, r: &Rational) -> BigInt {
        let w = self.weight - 2;
        let mut acc = BigInt::zero();
        for g in cfrac_paths(r) {
            let g = g.to_sl2();
            let point = self.p1.index_big(&g.c, &g.d).expect("bottom row is coprime");
            // (cX + dY)^w on the Y^w generator
            for m in 0..=w {
                let coef = binomial(w, m) * g.c.pow(m) * g.d.pow(w - m);
                acc -= coef * self.generator_value(m, point);
            }
        }
        acc
    }

    /// Cache key component identifying the eigen-system.
    pub fn fingerprint(level: u64, weight: u32, data: &EigenData) -> String {
        let mut s = format!("{level};{weight}");
        for (l, a) in data {
            s.push_str(&format!(";{l}:{a}"));
        }
        format!("{:016x}", fnv1a(s.as_bytes()))
    }

    pub fn to_json(&self) -> String {
        let doc = json!({
            "level": self.level,
            "weight": self.weight,
            "normalization": "coprime integer values on Manin generators, first nonzero positive",
            "plus_dimension": self.dimension,
            "generator_order": "i + (k-1)*j for X^i Y^(k-2-i) and the j-th point of P1(Z/N) in lexicographic order",
            "eigenvalues": self.eigenvalues.iter().map(|(l, a)| json!([l, a.to_string()])).collect::<Vec<_>>(),
            "values": self.values.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        });
        serde_json::to_string(&doc).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<EigenSymbol> {
        let bad = |what: &str| Error::InvalidArgument(format!("malformed eigen-symbol cache: {what}"));
        let doc: Value = serde_json::from_str(text).map_err(|e| bad(&e.to_string()))?;
        let level = doc["level"].as_u64().ok_or_else(|| bad("level"))?;
        let weight = doc["weight"].as_u64().ok_or_else(|| bad("weight"))? as u32;
        let dimension = doc["plus_dimension"].as_u64().ok_or_else(|| bad("plus_dimension"))? as usize;
        let parse = |v: &Value| -> Result<BigInt> {
            v.as_str().and_then(|s| s.parse().ok()).ok_or_else(|| bad("integer"))
        };
        let values = doc["values"]
            .as_array()
            .ok_or_else(|| bad("values"))?
            .iter()
            .map(parse)
            .collect::<Result<Vec<_>>>()?;
        let eigenvalues = doc["eigenvalues"]
            .as_array()
            .ok_or_else(|| bad("eigenvalues"))?
            .iter()
            .map(|pair| {
                let l = pair[0].as_u64().ok_or_else(|| bad("prime"))?;
                Ok((l, parse(&pair[1])?))
            })
            .collect::<Result<EigenData>>()?;
        if level == 0 || weight < 2 || weight % 2 == 1 {
            return Err(bad("level or weight"));
        }
        let p1 = P1List::new(level);
        if values.len() != p1.len() * (weight - 1) as usize {
            return Err(bad("number of values"));
        }
        let g = values.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
        if !g.is_one() {
            return Err(bad("values are not coprime"));
        }
        Ok(EigenSymbol {
            level,
            weight,
            p1,
            values,
            eigenvalues,
            dimension,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::find_curve;

    #[test]
    fn delta_symbol() {
        let space = ManinSymbolSpace::new(1, 12);
        let phi = eigen_symbol(&space, &eigen_data_for_delta(50)).unwrap();
        let g = phi.values().iter().fold(BigInt::zero(), |g, v| g.gcd(v));
        assert!(g.is_one());
        assert!(phi.is_hecke_eigen(2, &BigInt::from(-24)));
        assert!(phi.is_hecke_eigen(3, &BigInt::from(252)));
        assert!(!phi.is_hecke_eigen(2, &BigInt::from(2049)));
        assert_eq!(phi.renormalized(&Rational::new((-7).into(), 3.into())), phi);
        // the Eisenstein eigenvalue alone cannot produce a cusp form symbol
        let wrong = vec![(2u64, BigInt::from(5))];
        assert!(matches!(eigen_symbol(&space, &wrong), Err(Error::NoEigenvector { prime: 2 })));
    }

    #[test]
    fn not_rank_one_without_data() {
        let space = ManinSymbolSpace::new(1, 12);
        assert!(matches!(eigen_symbol(&space, &Vec::new()), Err(Error::NotRankOne { dimension: 2, .. })));
    }

    #[test]
    fn curve_symbols_match_point_counts() {
        for label in ["11a1", "27a1", "32a1"] {
            let e = find_curve(label).unwrap();
            let space = ManinSymbolSpace::new(e.conductor(), 2);
            let data = eigen_data_for_curve(&e, 50).unwrap();
            let phi = eigen_symbol(&space, &data).unwrap();
            for (l, a) in &data {
                assert!(phi.is_hecke_eigen(*l, a), "{label} at {l}");
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let space = ManinSymbolSpace::new(11, 2);
        let e = find_curve("11a1").unwrap();
        let phi = eigen_symbol(&space, &eigen_data_for_curve(&e, 50).unwrap()).unwrap();
        let back = EigenSymbol::from_json(&phi.to_json()).unwrap();
        assert_eq!(back, phi);
        assert!(EigenSymbol::from_json("{}").is_err());
    }

    #[test]
    fn zero_and_integrality() {
        let space = ManinSymbolSpace::new(1, 12);
        let phi = eigen_symbol(&space, &eigen_data_for_delta(50)).unwrap();
        assert!(phi.evaluate_cusp(&Cusp::Infinity).is_zero());
        for (a, m) in [(1, 3), (2, 9), (5, 27), (7, 343)] {
            let r = Rational::new(BigInt::from(a), BigInt::from(m));
            let p = phi.evaluate(&r);
            assert!(p.is_integral());
            assert_eq!(p.coefficient(0).to_integer(), phi.theta_value(&r));
        }
    }
}
