//! Sparse fraction-free row reduction over the integers.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exactnum::Rational;

/// A sparse integer row, sorted by column with no zero entries.
pub type SparseRow = Vec<(usize, BigInt)>;

pub fn normalize_row(row: &mut SparseRow) {
    row.sort_by_key(|(c, _)| *c);
    let mut merged: SparseRow = Vec::with_capacity(row.len());
    for (c, v) in row.drain(..) {
        match merged.last_mut() {
            Some((lc, lv)) if *lc == c => *lv += v,
            _ => merged.push((c, v)),
        }
    }
    merged.retain(|(_, v)| !v.is_zero());
    *row = merged;
}

fn content(row: &SparseRow) -> BigInt {
    row.iter().fold(BigInt::zero(), |g, (_, v)| g.gcd(v))
}

fn divide_content(row: &mut SparseRow) {
    let g = content(row);
    if !g.is_zero() && !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v /= &g;
        }
    }
}

/// `alpha * r + beta * s`.
fn combine(alpha: &BigInt, r: &SparseRow, beta: &BigInt, s: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(r.len() + s.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < s.len() {
        let take = match (r.get(i), s.get(j)) {
            (Some((cr, _)), Some((cs, _))) => cr.cmp(cs),
            (Some(_), None) => std::cmp::Ordering::Less,
            (None, Some(_)) => std::cmp::Ordering::Greater,
            (None, None) => unreachable!(),
        };
        let (col, val) = match take {
            std::cmp::Ordering::Less => {
                i += 1;
                (r[i - 1].0, alpha * &r[i - 1].1)
            }
            std::cmp::Ordering::Greater => {
                j += 1;
                (s[j - 1].0, beta * &s[j - 1].1)
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
                (r[i - 1].0, alpha * &r[i - 1].1 + beta * &s[j - 1].1)
            }
        };
        if !val.is_zero() {
            out.push((col, val));
        }
    }
    out
}

fn entry(row: &SparseRow, col: usize) -> Option<&BigInt> {
    row.binary_search_by_key(&col, |(c, _)| *c).ok().map(|i| &row[i].1)
}

/// Reduced row echelon form, grown one row at a time. Each pivot row has
/// a positive pivot entry, content one, and zeros in every other pivot
/// column. The pivot of a new row is its largest surviving column, so that
/// low columns tend to stay free.
#[derive(Debug, Clone)]
pub struct Echelon {
    ncols: usize,
    pivots: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Echelon {
        Echelon {
            ncols,
            pivots: BTreeMap::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn nullity(&self) -> usize {
        self.ncols - self.rank()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivots.contains_key(&col)
    }

    pub fn pivot_row(&self, col: usize) -> Option<&SparseRow> {
        self.pivots.get(&col)
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|c| !self.pivots.contains_key(c)).collect()
    }

    /// Reduces `row` against the current pivots.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        normalize_row(&mut row);
        let hits: Vec<usize> = row
            .iter()
            .map(|(c, _)| *c)
            .filter(|c| self.pivots.contains_key(c))
            .collect();
        for col in hits {
            let Some(a) = entry(&row, col).cloned() else { continue };
            let piv = &self.pivots[&col];
            let p = entry(piv, col).expect("pivot entry");
            row = combine(p, &row, &(-a), piv);
            divide_content(&mut row);
        }
        row
    }

    /// Adds a row; returns whether the rank grew.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let mut row = self.reduce(row);
        if row.is_empty() {
            return false;
        }
        divide_content(&mut row);
        let (col, lead) = row.last().cloned().expect("nonempty");
        if lead.is_negative() {
            for (_, v) in row.iter_mut() {
                *v = -&*v;
            }
        }
        let p = entry(&row, col).expect("pivot").clone();
        for other in self.pivots.values_mut() {
            if let Some(a) = entry(other, col).cloned() {
                *other = combine(&p, other, &(-a), &row);
                divide_content(other);
            }
        }
        self.pivots.insert(col, row);
        true
    }

    /// Expresses column `col` in terms of the free columns: returns the
    /// coefficients `x_col = sum_f c_f x_f` valid on the solution space.
    pub fn solve_column(&self, col: usize) -> Vec<(usize, Rational)> {
        match self.pivots.get(&col) {
            None => vec![(col, Rational::one())],
            Some(row) => {
                let p = entry(row, col).expect("pivot").clone();
                row.iter()
                    .filter(|(c, _)| *c != col)
                    .map(|(c, v)| (*c, Rational::new(-v.clone(), p.clone())))
                    .collect()
            }
        }
    }

    /// A basis of `{x : row · x = 0 for every inserted row}`, one vector
    /// per free column, with integer entries of content one.
    pub fn kernel(&self) -> Vec<Vec<BigInt>> {
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut v = vec![Rational::zero(); self.ncols];
                v[f] = Rational::one();
                for (col, row) in &self.pivots {
                    if let Some(a) = entry(row, f) {
                        let p = entry(row, *col).expect("pivot");
                        v[*col] = Rational::new(-a.clone(), p.clone());
                    }
                }
                primitive_integer_vector(&v)
            })
            .collect()
    }
}

/// Scales a rational vector to coprime integers, keeping its direction.
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(entries: &[(usize, i64)]) -> SparseRow {
        entries.iter().map(|&(c, v)| (c, BigInt::from(v))).collect()
    }

    #[test]
    fn rank_and_kernel() {
        let mut e = Echelon::new(4);
        assert!(e.insert(row(&[(0, 1), (1, 2), (3, -1)])));
        assert!(e.insert(row(&[(0, 2), (1, 4), (2, 3), (3, -2)])));
        assert!(!e.insert(row(&[(2, 6)])));
        assert_eq!(e.rank(), 2);
        let ker = e.kernel();
        assert_eq!(ker.len(), 2);
        for v in &ker {
            let dot1: BigInt = &v[0] + 2 * &v[1] - &v[3];
            let dot2: BigInt = 2 * &v[0] + 4 * &v[1] + 3 * &v[2] - 2 * &v[3];
            assert!(dot1.is_zero() && dot2.is_zero());
        }
    }

    #[test]
    fn solve_column_matches_relations() {
        let mut e = Echelon::new(3);
        e.insert(row(&[(0, 3), (2, 6)]));
        e.insert(row(&[(1, 1), (2, -1)]));
        // pivots are the last columns; x2 = -x0/2, x1 = x2
        let x2 = e.solve_column(2);
        assert_eq!(x2, vec![(0, Rational::new((-1).into(), 2.into()))]);
        let x1 = e.solve_column(1);
        assert!(x1.iter().all(|(c, _)| !e.is_pivot(*c)));
    }
}
