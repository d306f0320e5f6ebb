//! Exact integer, rational and `Z/p^M` arithmetic.
//!
//! Everything here is a pure function on immutable values: p-adic
//! valuations, residues modulo prime powers, Teichmüller lifts, discrete
//! logarithms in the cyclotomic tower and the continued-fraction
//! decomposition of paths between cusps.

mod cfrac;
pub mod primes;
mod residue;
mod teichmuller;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

pub use cfrac::{cfrac_paths, convergents, Cusp, UnimodularPath};
pub use residue::ResidueRing;
pub use teichmuller::{cyclotomic_dlog, teichmuller, teichmuller_sign, DlogTable};

/// Reduced fractions of arbitrary-precision integers.
pub type Rational = num_rational::BigRational;

/// A p-adic valuation; `Infinite` is the valuation of zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn is_finite(self) -> bool {
        matches!(self, Valuation::Finite(_))
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
            (Valuation::Finite(_), Valuation::Infinite) => Ordering::Less,
            (Valuation::Infinite, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::ops::Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

/// Valuation of a nonzero integer at `p`; `Infinite` for zero.
pub fn ordp_int(x: &BigInt, p: u64) -> Valuation {
    if x.is_zero() {
        return Valuation::Infinite;
    }
    let p = BigInt::from(p);
    let mut v = 0;
    let mut y = x.clone();
    loop {
        let (q, r) = y.div_rem(&p);
        if !r.is_zero() {
            break;
        }
        y = q;
        v += 1;
    }
    Valuation::Finite(v)
}

/// The p-adic valuation of a rational number.
pub fn ordp(x: &Rational, p: u64) -> Valuation {
    if x.is_zero() {
        return Valuation::Infinite;
    }
    match (ordp_int(x.numer(), p), ordp_int(x.denom(), p)) {
        (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a - b),
        _ => unreachable!("nonzero rational has finite valuation"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(ordp(&q(9, 2), 3), Valuation::Finite(2));
        assert_eq!(ordp(&q(0, 1), 5), Valuation::Infinite);
        assert_eq!(ordp(&q(-24, 1), 2), Valuation::Finite(3));
        assert_eq!(ordp(&q(5, 12), 2), Valuation::Finite(-2));
    }

    proptest! {
        #[test]
        fn valuation_is_multiplicative_and_ultrametric(
            a in -5000i64..5000, b in 1i64..5000, c in -5000i64..5000, d in 1i64..5000,
            pi in 0usize..4,
        ) {
            let p = [2u64, 3, 5, 7][pi];
            let x = q(a, b);
            let y = q(c, d);
            prop_assert_eq!(ordp(&(&x * &y), p), ordp(&x, p) + ordp(&y, p));
            prop_assert!(ordp(&(&x + &y), p) >= ordp(&x, p).min(ordp(&y, p)));
        }
    }
}
