//! Weight-k modular symbols for `Γ_0(N)` through Manin symbols: the plus
//! quotient, Heilbronn–Merel Hecke operators, extraction of an integrally
//! normalized eigen-symbol, and its evaluation on paths between cusps.

mod eigen;
pub mod linalg;
mod p1;
#[cfg(test)]
mod props;
mod space;

use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exactnum::Rational;

pub use eigen::{eigen_data_for_curve, eigen_data_for_delta, eigen_symbol, eigen_symbol_with_bound, EigenData, EigenSymbol, DEFAULT_EIGEN_BOUND};
pub use p1::P1List;
pub use space::{heilbronn_merel, mat_mul, ManinSymbolSpace, Matrix, SymbolSign};

/// A homogeneous polynomial of degree `w`, stored as the coefficients of
/// `X^i Y^{w-i}` for `i = 0..=w`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomogeneousPoly {
    coeffs: Vec<Rational>,
}

impl HomogeneousPoly {
    pub fn new(coeffs: Vec<Rational>) -> HomogeneousPoly {
        assert!(!coeffs.is_empty(), "a homogeneous polynomial has at least one coefficient");
        HomogeneousPoly { coeffs }
    }

    pub fn zero(degree: u32) -> HomogeneousPoly {
        HomogeneousPoly::new(vec![Rational::zero(); degree as usize + 1])
    }

    pub fn monomial(degree: u32, i: u32) -> HomogeneousPoly {
        let mut p = Self::zero(degree);
        p.coeffs[i as usize] = Rational::one();
        p
    }

    pub fn degree(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    /// Coefficient of `X^i Y^{w-i}`.
    pub fn coefficient(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        let w = self.degree();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * num_traits::pow(x.clone(), i) * num_traits::pow(y.clone(), w as usize - i))
            .fold(Rational::zero(), |a, b| a + b)
    }

    /// `P(aX + bY, cX + dY)`.
    pub fn substitute(&self, a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) -> HomogeneousPoly {
        let w = self.degree();
        let mut out = vec![Rational::zero(); w as usize + 1];
        for (i, coef) in self.coeffs.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            for (m, v) in space::monomial_action(i as u32, w, a, b, c, d).into_iter().enumerate() {
                out[m] += coef * Rational::from_integer(v);
            }
        }
        HomogeneousPoly::new(out)
    }

    pub fn scale(&self, s: &Rational) -> HomogeneousPoly {
        HomogeneousPoly::new(self.coeffs.iter().map(|c| c * s).collect())
    }
}

impl Add for &HomogeneousPoly {
    type Output = HomogeneousPoly;
    fn add(self, rhs: &HomogeneousPoly) -> HomogeneousPoly {
        assert_eq!(self.degree(), rhs.degree(), "degree mismatch");
        HomogeneousPoly::new(self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for HomogeneousPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.degree() as usize;
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})*X^{i}*Y^{}", w - i)?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
