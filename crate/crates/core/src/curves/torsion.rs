use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::WeierstrassCurve;
use crate::error::{Error, Result};
use crate::exactnum::primes::{divisors, exact_sqrt};
use crate::exactnum::Rational;

/// A rational point, `None` being the point at infinity.
pub type Point = Option<(Rational, Rational)>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionWitness {
    pub point: (Rational, Rational),
    pub order: u64,
}

fn q(x: &BigInt) -> Rational {
    Rational::from_integer(x.clone())
}

impl WeierstrassCurve {
    pub fn contains(&self, pt: &Point) -> bool {
        let Some((x, y)) = pt else { return true };
        let [a1, a2, a3, a4, a6] = self.a_invariants().clone().map(|c| q(&c));
        let lhs = y * y + &a1 * x * y + &a3 * y;
        let rhs = x * x * x + &a2 * x * x + &a4 * x + a6;
        lhs == rhs
    }

    pub fn negate(&self, pt: &Point) -> Point {
        pt.as_ref().map(|(x, y)| {
            let ny = -y - q(self.a1()) * x - q(self.a3());
            (x.clone(), ny)
        })
    }

    pub fn add_points(&self, p1: &Point, p2: &Point) -> Point {
        let (Some((x1, y1)), Some((x2, y2))) = (p1, p2) else {
            return p1.clone().or_else(|| p2.clone());
        };
        let [a1, a2, a3, a4, _] = self.a_invariants().clone().map(|c| q(&c));
        let slope = if x1 != x2 {
            (y2 - y1) / (x2 - x1)
        } else {
            let denom = Rational::from_integer(2.into()) * y1 + &a1 * x1 + &a3;
            if denom.is_zero() || y1 != y2 {
                return None;
            }
            let three = Rational::from_integer(3.into());
            let two = Rational::from_integer(2.into());
            (three * x1 * x1 + two * &a2 * x1 + &a4 - &a1 * y1) / denom
        };
        let nu = y1 - &slope * x1;
        let x3 = &slope * &slope + &a1 * &slope - &a2 - x1 - x2;
        let y3 = -(&slope + &a1) * &x3 - nu - a3;
        Some((x3, y3))
    }

    pub fn multiply_point(&self, pt: &Point, n: u64) -> Point {
        let mut acc: Point = None;
        let mut base = pt.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_points(&acc, &base);
            }
            base = self.add_points(&base, &base);
            k >>= 1;
        }
        acc
    }
}

/// Integer roots of a monic integer polynomial (coefficients from the
/// leading term down), by the rational-root test.
fn integer_roots(coeffs: &[BigInt]) -> Vec<BigInt> {
    let eval = |x: &BigInt| coeffs.iter().fold(BigInt::zero(), |acc, c| acc * x + c);
    let Some(pos) = coeffs.iter().rposition(|c| !c.is_zero()) else {
        return vec![BigInt::zero()];
    };
    let mut roots = Vec::new();
    if pos + 1 < coeffs.len() {
        roots.push(BigInt::zero());
    }
    for d in divisors(&coeffs[pos].abs()) {
        for cand in [d.clone(), -d] {
            if eval(&cand).is_zero() {
                roots.push(cand);
            }
        }
    }
    roots.sort();
    roots
}

/// Square root of a nonnegative rational, if it is a rational square.
fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    Some(Rational::new(exact_sqrt(r.numer())?, exact_sqrt(r.denom())?))
}

/// Searches for a rational point of exact order `p ∈ {2, 3}`.
///
/// Returns `Ok(None)` as a proof of absence: the division polynomial has no
/// admissible rational root.
pub fn has_rational_p_torsion(curve: &WeierstrassCurve, p: u64) -> Result<Option<TorsionWitness>> {
    let (b2, b4, b6, b8) = (curve.b2(), curve.b4(), curve.b6(), curve.b8());
    let (scale, roots) = match p {
        // 4x^3 + b2 x^2 + 2 b4 x + b6 with x = X/4
        2 => (4, integer_roots(&[BigInt::one(), b2, 8 * b4, 16 * b6])),
        // 3x^4 + b2 x^3 + 3 b4 x^2 + 3 b6 x + b8 with x = X/3
        3 => (3, integer_roots(&[BigInt::one(), b2, 9 * b4, 27 * b6, 27 * b8])),
        _ => return Err(Error::InvalidArgument(format!("p must be 2 or 3, got {p}"))),
    };
    for root in roots {
        let x = Rational::new(root, BigInt::from(scale));
        let lin = q(curve.a1()) * &x + q(curve.a3());
        let disc = Rational::from_integer(4.into()) * &x * &x * &x
            + q(&curve.b2()) * &x * &x
            + Rational::from_integer(2.into()) * q(&curve.b4()) * &x
            + q(&curve.b6());
        let Some(s) = rational_sqrt(&disc) else { continue };
        let y = (s - lin) / Rational::from_integer(2.into());
        let pt: Point = Some((x, y));
        debug_assert!(curve.contains(&pt));
        if curve.multiply_point(&pt, p).is_none() {
            let point = pt.expect("finite point");
            return Ok(Some(TorsionWitness { point, order: p }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::bundled_curves;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn two_torsion_examples() {
        let e = WeierstrassCurve::from_ints("e", [0, 0, 0, 0, 1], 36).unwrap();
        let w = has_rational_p_torsion(&e, 2).unwrap().unwrap();
        assert_eq!(w.point, (r(-1), r(0)));
        let e = WeierstrassCurve::from_ints("e", [0, 0, 0, 0, -2], 1728).unwrap();
        assert!(has_rational_p_torsion(&e, 2).unwrap().is_none());
    }

    #[test]
    fn three_torsion_on_27a3() {
        let e = WeierstrassCurve::from_ints("27a3", [0, 0, 1, 0, 0], 27).unwrap();
        let w = has_rational_p_torsion(&e, 3).unwrap().unwrap();
        assert_eq!(w.point.0, r(0));
        let pt = Some(w.point.clone());
        assert!(e.multiply_point(&pt, 3).is_none());
        assert!(e.multiply_point(&pt, 1).is_some());
        assert!(has_rational_p_torsion(&e, 5).is_err());
    }

    #[test]
    fn group_law_agrees_with_negation() {
        let e = WeierstrassCurve::from_ints("e", [1, -1, 1, -2, 0], 99).unwrap();
        let p: Point = Some((r(0), r(0)));
        assert!(e.contains(&p));
        assert!(e.add_points(&p, &e.negate(&p)).is_none());
        let two = e.add_points(&p, &p);
        let three = e.add_points(&two, &p);
        assert!(e.contains(&two) && e.contains(&three));
        assert_eq!(e.add_points(&two, &p), e.add_points(&p, &two));
        assert_eq!(e.multiply_point(&p, 3), three);
    }

    #[test]
    fn witnesses_on_bundled_curves_have_the_right_order() {
        for e in bundled_curves() {
            for p in [2, 3] {
                if let Some(w) = has_rational_p_torsion(&e, p).unwrap() {
                    let pt = Some(w.point.clone());
                    assert!(e.contains(&pt));
                    assert!(pt.is_some());
                    assert!(e.multiply_point(&pt, p).is_none(), "{} p={p}", e.label());
                }
            }
        }
        let e27 = crate::curves::find_curve("27a1").unwrap();
        assert!(has_rational_p_torsion(&e27, 3).unwrap().is_some());
        let e32 = crate::curves::find_curve("32a1").unwrap();
        assert!(has_rational_p_torsion(&e32, 2).unwrap().is_some());
    }
}
