use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::Rational;

/// A point of `P^1(Q)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Cusp {
    Infinity,
    Finite(Rational),
}

impl Cusp {
    pub fn from_pair(num: BigInt, den: BigInt) -> Cusp {
        if den.is_zero() {
            Cusp::Infinity
        } else {
            Cusp::Finite(Rational::new(num, den))
        }
    }
}

impl fmt::Display for Cusp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cusp::Infinity => f.write_str("oo"),
            Cusp::Finite(r) => write!(f, "{r}"),
        }
    }
}

/// Integer matrix `(a b; c d)` with determinant `±1`, read as the geodesic
/// from `g·0 = b/d` to `g·∞ = a/c`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UnimodularPath {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl UnimodularPath {
    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn start(&self) -> Cusp {
        Cusp::from_pair(self.b.clone(), self.d.clone())
    }

    pub fn end(&self) -> Cusp {
        Cusp::from_pair(self.a.clone(), self.c.clone())
    }

    /// The same geodesic as an element of `SL_2(Z)` (first column negated
    /// when the determinant is `-1`).
    pub fn to_sl2(&self) -> UnimodularPath {
        if self.det().is_negative() {
            UnimodularPath {
                a: -&self.a,
                b: self.b.clone(),
                c: -&self.c,
                d: self.d.clone(),
            }
        } else {
            self.clone()
        }
    }
}

/// Continued-fraction convergents `p_k/q_k` of `r`, as integer pairs.
pub fn convergents(r: &Rational) -> Vec<(BigInt, BigInt)> {
    let mut out = Vec::new();
    let (mut num, mut den) = (r.numer().clone(), r.denom().clone());
    let (mut p_prev, mut q_prev) = (BigInt::one(), BigInt::zero());
    let (mut p_prev2, mut q_prev2) = (BigInt::zero(), BigInt::one());
    while !den.is_zero() {
        let (quot, rem) = num.div_mod_floor(&den);
        let p = &quot * &p_prev + &p_prev2;
        let q = &quot * &q_prev + &q_prev2;
        out.push((p.clone(), q.clone()));
        p_prev2 = std::mem::replace(&mut p_prev, p);
        q_prev2 = std::mem::replace(&mut q_prev, q);
        num = std::mem::replace(&mut den, rem);
    }
    out
}

/// Decomposes the path `{∞} → {r}` into unimodular geodesics.
///
/// Path `j` runs from the convergent `p_{j-1}/q_{j-1}` (with `p_{-1}/q_{-1} = 1/0`)
/// to `p_j/q_j`, so consecutive paths share endpoints and the last one ends at `r`.
pub fn cfrac_paths(r: &Rational) -> Vec<UnimodularPath> {
    let mut prev = (BigInt::one(), BigInt::zero());
    convergents(r)
        .into_iter()
        .map(|(p, q)| {
            let path = UnimodularPath {
                a: p.clone(),
                b: prev.0.clone(),
                c: q.clone(),
                d: prev.1.clone(),
            };
            prev = (p, q);
            path
        })
        .collect()
}
