use num_integer::Integer;

/// The projective line `P^1(Z/N)`, with each point stored as the
/// lexicographically least `(c, d)` in its orbit under scaling by units.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct P1List {
    n: u64,
    points: Vec<(u64, u64)>,
    table: Vec<u32>,
}

const INVALID: u32 = u32::MAX;

impl P1List {
    pub fn new(n: u64) -> P1List {
        assert!(n >= 1, "level must be positive");
        let size = (n * n) as usize;
        let units: Vec<u64> = (1..=n).filter(|u| u.gcd(&n) == 1).map(|u| u % n).collect();
        let mut table = vec![INVALID; size];
        let mut points = Vec::new();
        for c in 0..n {
            for d in 0..n {
                let idx = (c * n + d) as usize;
                if table[idx] != INVALID || c.gcd(&d).gcd(&n) != 1 {
                    continue;
                }
                // (c, d) is the first orbit member met in lexicographic order
                let id = points.len() as u32;
                points.push((c, d));
                for &u in &units {
                    let (uc, ud) = (u * c % n, u * d % n);
                    table[(uc * n + ud) as usize] = id;
                }
            }
        }
        P1List { n, points, table }
    }

    pub fn level(&self) -> u64 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> (u64, u64) {
        self.points[i]
    }

    pub fn points(&self) -> &[(u64, u64)] {
        &self.points
    }

    /// Index of the point `(c : d)`, or `None` if `gcd(c, d, N) != 1`.
    pub fn index(&self, c: i64, d: i64) -> Option<usize> {
        let n = self.n as i64;
        let (c, d) = (c.rem_euclid(n) as u64, d.rem_euclid(n) as u64);
        match self.table[(c * self.n + d) as usize] {
            INVALID => None,
            id => Some(id as usize),
        }
    }

    pub fn index_big(&self, c: &num_bigint::BigInt, d: &num_bigint::BigInt) -> Option<usize> {
        let n = num_bigint::BigInt::from(self.n);
        let c: i64 = c.mod_floor(&n).try_into().expect("reduced");
        let d: i64 = d.mod_floor(&n).try_into().expect("reduced");
        self.index(c, d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn psi(n: u64) -> usize {
        let mut out = n;
        for p in crate::exactnum::primes::prime_factors(n) {
            out = out / p * (p + 1);
        }
        out as usize
    }

    #[test]
    fn sizes_match_the_index_formula() {
        for n in 1..=60 {
            assert_eq!(P1List::new(n).len(), psi(n), "N = {n}");
        }
        assert_eq!(P1List::new(441).len(), psi(441));
    }

    #[test]
    fn lookup_is_scaling_invariant() {
        let p1 = P1List::new(36);
        for (i, &(c, d)) in p1.points().iter().enumerate() {
            assert_eq!(p1.index(c as i64, d as i64), Some(i));
            for u in [5i64, 7, 11, 35] {
                assert_eq!(p1.index(u * c as i64, u * d as i64), Some(i));
                assert_eq!(p1.index(-u * c as i64, -u * d as i64), Some(i));
            }
        }
        assert_eq!(p1.index(2, 4), None);
        assert_eq!(p1.index(0, 3), None);
    }
}
