use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::primes::pow_mod;
use super::residue::ResidueRing;
use crate::error::{Error, Result};

/// Teichmüller lift of a unit modulo `p^precision`.
///
/// For odd `p` this is the unique `(p-1)`-st root of unity congruent to `a`
/// mod `p`; for `p = 2` it is `+1` or `-1` according to `a mod 4`.
pub fn teichmuller(a: &BigInt, p: u64, precision: u32) -> Result<ResidueRing> {
    let pb = BigInt::from(p);
    if a.mod_floor(&pb) == BigInt::from(0) {
        return Err(Error::NotAUnit {
            value: a.to_string(),
            modulus: p.to_string(),
        });
    }
    if p == 2 {
        return Ok(ResidueRing::new(2, precision, teichmuller_sign(a)));
    }
    let mut w = ResidueRing::new(p, precision, a.clone());
    // a -> a^p converges: each step gains one digit of agreement.
    for _ in 0..=precision {
        let next = w.pow(p);
        if next == w {
            return Ok(w);
        }
        w = next;
    }
    debug_assert_eq!(w.pow(p), w);
    Ok(w)
}

/// The 2-adic Teichmüller sign of an odd integer: `+1` if `a = 1 mod 4`.
pub fn teichmuller_sign(a: &BigInt) -> i64 {
    if a.mod_floor(&BigInt::from(4)) == BigInt::from(1) {
        1
    } else {
        -1
    }
}

fn cyclotomic_modulus(p: u64, n: u32) -> u64 {
    if p == 2 {
        2u64.pow(n + 2)
    } else {
        p.pow(n + 1)
    }
}

/// Discrete logarithm of `a / ω(a)` to the base `1 + p` (odd `p`) or `5`
/// (`p = 2`, in the quotient by `±1`), as an exponent in `[0, p^n)`.
///
/// Solved one p-adic digit at a time.
pub fn cyclotomic_dlog(a: &BigInt, p: u64, n: u32) -> Result<u64> {
    let m = cyclotomic_modulus(p, n);
    let pb = BigInt::from(p);
    if a.mod_floor(&pb) == BigInt::from(0) {
        return Err(Error::NotAUnit {
            value: a.to_string(),
            modulus: m.to_string(),
        });
    }
    let a_mod = a.mod_floor(&BigInt::from(m)).to_u64().unwrap();
    let target = if p == 2 {
        if teichmuller_sign(a) == 1 {
            a_mod
        } else {
            m - a_mod
        }
    } else {
        let w = teichmuller(a, p, n + 1)?;
        let winv = w.inverse()?.value().to_u64().unwrap();
        ((a_mod as u128 * winv as u128) % m as u128) as u64
    };
    let base = if p == 2 { 5 } else { 1 + p };
    // digit i is fixed by the congruence modulo p^{i+2} (resp. 2^{i+3}).
    let mut x = 0u64;
    let mut place = 1u64;
    for i in 0..n {
        let check = if p == 2 { 2u64.pow(i + 3) } else { p.pow(i + 2) };
        let want = target % check;
        let digit = (0..p)
            .find(|&d| pow_mod(base, x + d * place, check) == want)
            .expect("unit in the pro-p part always has a digit");
        x += digit * place;
        place *= p;
    }
    Ok(x)
}

/// Precomputed decomposition `a = ω(a) · γ^{a'}` of every unit modulo
/// `p^{n+1}` (odd `p`) or `2^{n+2}`.
#[derive(Debug, Clone)]
pub struct DlogTable {
    p: u64,
    n: u32,
    modulus: u64,
    // (exponent a', residue of a mod p, or 1/3 for the 2-adic sign)
    entries: Vec<Option<(u32, u32)>>,
}

impl DlogTable {
    pub fn new(p: u64, n: u32) -> Result<Self> {
        let modulus = cyclotomic_modulus(p, n);
        let order = p.pow(n);
        let mut entries = vec![None; modulus as usize];
        let base = if p == 2 { 5 } else { 1 + p };
        let lifts: Vec<(u64, u32)> = if p == 2 {
            vec![(1, 1), (modulus - 1, 3)]
        } else {
            (1..p)
                .map(|r| {
                    let w = teichmuller(&BigInt::from(r), p, n + 1)?;
                    Ok((w.value().to_u64().unwrap(), r as u32))
                })
                .collect::<Result<_>>()?
        };
        let mut g = 1u64;
        for x in 0..order {
            for &(w, r) in &lifts {
                let a = ((w as u128 * g as u128) % modulus as u128) as usize;
                debug_assert!(entries[a].is_none());
                entries[a] = Some((x as u32, r));
            }
            g = ((g as u128 * base as u128) % modulus as u128) as u64;
        }
        Ok(DlogTable {
            p,
            n,
            modulus,
            entries,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn level(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// `(a', a mod p)` for odd `p`, `(a', a mod 4)` for `p = 2`.
    pub fn lookup(&self, a: u64) -> Option<(u64, u64)> {
        self.entries[(a % self.modulus) as usize].map(|(x, r)| (x as u64, r as u64))
    }

    /// All units of the modulus in increasing order.
    pub fn units(&self) -> impl Iterator<Item = u64> + '_ {
        self.entries
            .iter()
            .enumerate()
            .filter_map(|(a, e)| e.map(|_| a as u64))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn teichmuller_examples() {
        assert!(teichmuller(&b(1), 3, 5).unwrap().value().is_one());
        // oracle: iterate a -> a^3 mod 9 from 2: 8, 8^3 = 512 = 8 mod 9
        let w = teichmuller(&b(2), 3, 2).unwrap();
        assert_eq!(w.value(), &b(8));
        assert_eq!(w.centered(), b(-1));
        assert_eq!(teichmuller(&b(3), 2, 7).unwrap().centered(), b(-1));
        assert_eq!(teichmuller(&b(5), 2, 7).unwrap().centered(), b(1));
        assert!(teichmuller(&b(6), 3, 4).is_err());
    }

    #[test]
    fn teichmuller_is_root_of_unity_lifting_a() {
        for p in [3u64, 5, 7, 11] {
            for a in 1..p {
                let w = teichmuller(&b(a as i64), p, 6).unwrap();
                assert!(w.pow(p - 1).value().is_one());
                assert_eq!(w.value() % p, b(a as i64));
            }
        }
    }

    #[test]
    fn dlog_examples() {
        assert_eq!(cyclotomic_dlog(&b(1), 3, 2).unwrap(), 0);
        assert_eq!(cyclotomic_dlog(&b(4), 3, 1).unwrap(), 1);
        // exhaustive oracle: 4^8 = 7 mod 27 and 7 = 1 mod 3
        let hits: Vec<u64> = (0..9).filter(|&x| pow_mod(4, x, 27) == 7).collect();
        assert_eq!(hits, vec![8]);
        assert_eq!(cyclotomic_dlog(&b(7), 3, 2).unwrap(), 8);
        assert!(cyclotomic_dlog(&b(9), 3, 2).is_err());
    }

    /// gamma^{dlog(a)} * omega(a) = a, exhaustively for small moduli.
    #[test]
    fn dlog_reconstructs_every_unit() {
        for (p, n) in [(3u64, 1u32), (3, 2), (3, 3), (3, 4), (5, 1), (5, 2), (7, 1), (2, 1), (2, 2), (2, 3), (2, 4), (2, 5)] {
            let table = DlogTable::new(p, n).unwrap();
            let m = table.modulus();
            let base = if p == 2 { 5 } else { 1 + p };
            let mut count = 0;
            for a in 1..m {
                if a % p == 0 {
                    assert!(table.lookup(a).is_none());
                    continue;
                }
                count += 1;
                let x = cyclotomic_dlog(&b(a as i64), p, n).unwrap();
                assert!(x < p.pow(n));
                assert_eq!(table.lookup(a).unwrap().0, x, "p={p} n={n} a={a}");
                let w = teichmuller(&b(a as i64), p, if p == 2 { n + 2 } else { n + 1 }).unwrap();
                let w = w.value().to_u64().unwrap();
                let rebuilt = ((pow_mod(base, x, m) as u128 * w as u128) % m as u128) as u64;
                assert_eq!(rebuilt, a, "p={p} n={n} a={a}");
            }
            assert_eq!(count, table.units().count());
        }
    }
}
