use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::WeierstrassCurve;
use crate::error::{Error, Result};
use crate::exactnum::primes::is_prime;

pub const DEFAULT_COUNT_BOUND: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReductionType {
    Good,
    SplitMultiplicative,
    NonsplitMultiplicative,
    Additive,
}

/// Reduction of a curve at a prime: type, trace of Frobenius and the
/// number of points (including the point at infinity and, for bad primes,
/// the singular point) of the reduced model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionData {
    pub prime: u64,
    pub kind: ReductionType,
    pub a_ell: i64,
    pub points: u64,
}

pub fn count_points(curve: &WeierstrassCurve, ell: u64) -> Result<ReductionData> {
    count_points_with_bound(curve, ell, DEFAULT_COUNT_BOUND)
}

fn reduce(x: &BigInt, ell: u64) -> u64 {
    x.mod_floor(&BigInt::from(ell)).to_u64().unwrap()
}

pub fn count_points_with_bound(curve: &WeierstrassCurve, ell: u64, bound: u64) -> Result<ReductionData> {
    if !is_prime(ell) {
        return Err(Error::NotPrime(ell));
    }
    if ell > bound {
        return Err(Error::EnumerationBound { prime: ell, bound });
    }
    let a = curve.a_invariants().clone().map(|c| reduce(&c, ell));
    let points = count_projective_points(a, ell);
    let a_ell = ell as i64 + 1 - points as i64;
    let ell_big = BigInt::from(ell);
    let kind = if !curve.discriminant().is_multiple_of(&ell_big) {
        ReductionType::Good
    } else {
        node_type(a, ell)
    };
    debug_assert!(match kind {
        ReductionType::Good => true,
        ReductionType::SplitMultiplicative => a_ell == 1,
        ReductionType::NonsplitMultiplicative => a_ell == -1,
        ReductionType::Additive => a_ell == 0,
    });
    Ok(ReductionData {
        prime: ell,
        kind,
        a_ell,
        points,
    })
}

fn mulm(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `#E(F_ℓ)` for the model with reduced coefficients `a`, including infinity.
pub(crate) fn count_projective_points(a: [u64; 5], ell: u64) -> u64 {
    let [a1, a2, a3, a4, a6] = a;
    if ell == 2 {
        let mut count = 1;
        for x in 0..2u64 {
            for y in 0..2u64 {
                let lhs = (y * y + a1 * x * y + a3 * y) % 2;
                let rhs = (x * x * x + a2 * x * x + a4 * x + a6) % 2;
                if lhs == rhs {
                    count += 1;
                }
            }
        }
        return count;
    }
    // chi table: 0 for zero, 1 for nonzero squares, 2 otherwise
    let mut is_square = vec![false; ell as usize];
    for y in 0..ell {
        is_square[mulm(y, y, ell) as usize] = true;
    }
    let mut count = 1u64;
    for x in 0..ell {
        let lin = (mulm(a1, x, ell) + a3) % ell;
        let x2 = mulm(x, x, ell);
        let cubic = (mulm(x2, x, ell) + mulm(a2, x2, ell) + mulm(a4, x, ell) + a6) % ell;
        let disc = (mulm(lin, lin, ell) + mulm(4, cubic, ell)) % ell;
        count += if disc == 0 {
            1
        } else if is_square[disc as usize] {
            2
        } else {
            0
        };
    }
    count
}

/// Locates the singular point of a singular reduction and classifies it
/// by the splitting of its tangent directions.
fn node_type(a: [u64; 5], ell: u64) -> ReductionType {
    let [a1, a2, a3, a4, a6] = a;
    let m = ell;
    let f = |x: u64, y: u64| -> bool {
        let lhs = (mulm(y, y, m) + mulm(mulm(a1, x, m), y, m) + mulm(a3, y, m)) % m;
        let x2 = mulm(x, x, m);
        let rhs = (mulm(x2, x, m) + mulm(a2, x2, m) + mulm(a4, x, m) + a6) % m;
        lhs == rhs
    };
    let fx = |x: u64, y: u64| -> bool {
        // a1 y - 3x^2 - 2 a2 x - a4 = 0
        let pos = mulm(a1, y, m);
        let neg = (mulm(3, mulm(x, x, m), m) + mulm(mulm(2, a2, m), x, m) + a4) % m;
        pos == neg
    };
    let fy = |x: u64, y: u64| -> bool { (mulm(2, y, m) + mulm(a1, x, m) + a3) % m == 0 };
    let mut singular = None;
    'search: for x in 0..m {
        let ys: Vec<u64> = if m == 2 {
            vec![0, 1]
        } else {
            // F_y = 0 pins y = -(a1 x + a3)/2
            let half = (m + 1) / 2;
            let s = (mulm(a1, x, m) + a3) % m;
            vec![mulm((m - s) % m, half, m)]
        };
        for y in ys {
            if f(x, y) && fx(x, y) && fy(x, y) {
                singular = Some(x);
                break 'search;
            }
        }
    }
    let x0 = singular.expect("singular reduction has a singular point");
    // tangent slopes t solve t^2 + a1 t - (3 x0 + a2) = 0
    let c = (mulm(3, x0, m) + a2) % m;
    if m == 2 {
        return match (a1 % 2, c % 2) {
            (0, _) => ReductionType::Additive,
            (_, 0) => ReductionType::SplitMultiplicative,
            _ => ReductionType::NonsplitMultiplicative,
        };
    }
    let disc = (mulm(a1, a1, m) + mulm(4, c, m)) % m;
    if disc == 0 {
        return ReductionType::Additive;
    }
    let legendre = super::super::exactnum::primes::pow_mod(disc, (m - 1) / 2, m);
    if legendre == 1 {
        ReductionType::SplitMultiplicative
    } else {
        ReductionType::NonsplitMultiplicative
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::find_curve;
    use rand::{Rng, SeedableRng};

    fn brute_count(a: [u64; 5], ell: u64) -> u64 {
        let [a1, a2, a3, a4, a6] = a;
        let mut n = 1;
        for x in 0..ell {
            for y in 0..ell {
                let lhs = (y * y + a1 * x * y + a3 * y) % ell;
                let rhs = (x * x * x + a2 * x * x + a4 * x + a6) % ell;
                if lhs == rhs {
                    n += 1;
                }
            }
        }
        n
    }

    #[test]
    fn small_examples() {
        let e = WeierstrassCurve::from_ints("e", [0, 0, 0, 1, 0], 64).unwrap();
        let r = count_points(&e, 3).unwrap();
        assert_eq!(brute_count([0, 0, 0, 1, 0], 3), 4);
        assert_eq!((r.points, r.a_ell, r.kind), (4, 0, ReductionType::Good));
        let e = WeierstrassCurve::from_ints("e", [0, 0, 0, 0, 1], 36).unwrap();
        let r = count_points(&e, 5).unwrap();
        assert_eq!(brute_count([0, 0, 0, 0, 1], 5), 6);
        assert_eq!(r.a_ell, 0);
        assert!(r.a_ell.abs() <= 4);
        let e27 = find_curve("27a1").unwrap();
        let r = count_points(&e27, 3).unwrap();
        assert_eq!((r.kind, r.a_ell), (ReductionType::Additive, 0));
        assert!(count_points(&e27, 9).is_err());
        assert!(matches!(
            count_points_with_bound(&e27, 101, 100),
            Err(Error::EnumerationBound { .. })
        ));
    }

    #[test]
    fn multiplicative_primes() {
        // tangent classification must agree with the point count
        let e11 = find_curve("11a1").unwrap();
        let r = count_points(&e11, 11).unwrap();
        assert_eq!((r.kind, r.a_ell), (ReductionType::SplitMultiplicative, 1));
        let e = WeierstrassCurve::from_ints("14a1", [1, 0, 1, 4, -6], 14).unwrap();
        for ell in [2, 7] {
            let r = count_points(&e, ell).unwrap();
            let expect = match r.a_ell {
                1 => ReductionType::SplitMultiplicative,
                -1 => ReductionType::NonsplitMultiplicative,
                _ => panic!("multiplicative prime with a = {}", r.a_ell),
            };
            assert_eq!(r.kind, expect);
        }
        // known: 14a has a_2 = -1, a_7 = 1
        assert_eq!(count_points(&e, 2).unwrap().a_ell, -1);
        assert_eq!(count_points(&e, 7).unwrap().a_ell, 1);
    }

    #[test]
    fn fast_count_matches_brute_force_and_hasse() {
        let mut rng = rand_chacha_like();
        for _ in 0..300 {
            let ell = [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29][rng.gen_range(0..10)];
            let a: [u64; 5] = std::array::from_fn(|_| rng.gen_range(0..ell));
            assert_eq!(count_projective_points(a, ell), brute_count(a, ell), "{a:?} mod {ell}");
        }
        for e in crate::curves::bundled_curves() {
            for ell in crate::exactnum::primes::primes_up_to(200) {
                let r = count_points(&e, ell).unwrap();
                if r.kind == ReductionType::Good {
                    assert!((r.a_ell * r.a_ell) as u64 <= 4 * ell, "{} at {ell}", e.label());
                }
            }
        }
    }

    /// Counts are unchanged by (x, y) -> (u^2 x + r, u^3 y + u^2 s x + t).
    #[test]
    fn invariant_under_coordinate_change() {
        let mut rng = rand_chacha_like();
        for e in crate::curves::bundled_curves().into_iter().take(12) {
            for _ in 0..5 {
                let u = BigInt::from(if rng.gen_bool(0.5) { 1 } else { -1 });
                let r = BigInt::from(rng.gen_range(-20..20));
                let s = BigInt::from(rng.gen_range(-20..20));
                let t = BigInt::from(rng.gen_range(-20..20));
                let moved = e.change_coordinates(&u, &r, &s, &t).unwrap();
                assert_eq!(moved.discriminant(), e.discriminant());
                for ell in [2u64, 3, 5, 7, 11, 13, 37] {
                    assert_eq!(count_points(&e, ell).unwrap(), count_points(&moved, ell).unwrap());
                }
            }
            // general unit u handled modulo ell
            for ell in [5u64, 7, 11, 13] {
                let base = e.a_invariants().clone().map(|c| reduce(&c, ell));
                let u = rng.gen_range(1..ell);
                let (r, s, t) = (rng.gen_range(0..ell), rng.gen_range(0..ell), rng.gen_range(0..ell));
                let moved = transform_mod(base, u, r, s, t, ell);
                assert_eq!(count_projective_points(base, ell), count_projective_points(moved, ell));
            }
        }
    }

    fn transform_mod(a: [u64; 5], u: u64, r: u64, s: u64, t: u64, m: u64) -> [u64; 5] {
        let [a1, a2, a3, a4, a6] = a.map(|x| x as i128);
        let (r, s, t) = (r as i128, s as i128, t as i128);
        let m = m as i128;
        let inv = |x: i128| -> i128 {
            let mut acc = 1i128;
            for _ in 0..(m - 2) {
                acc = acc * x % m;
            }
            acc
        };
        let ui = inv(u as i128);
        let n1 = a1 + 2 * s;
        let n2 = a2 - s * a1 + 3 * r - s * s;
        let n3 = a3 + r * a1 + 2 * t;
        let n4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t;
        let n6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
        let pw = |k: u32| -> i128 { (0..k).fold(1i128, |acc, _| acc * ui % m) };
        [(n1, 1), (n2, 2), (n3, 3), (n4, 4), (n6, 6)]
            .map(|(n, k)| ((n.rem_euclid(m)) * pw(k)).rem_euclid(m) as u64)
    }

    fn rand_chacha_like() -> rand::rngs::StdRng {
        rand::rngs::StdRng::seed_from_u64(0x5eed)
    }
}
