use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::linalg::{Echelon, SparseRow};
use super::p1::P1List;
use crate::exactnum::primes::{is_prime, primes_up_to};
use crate::exactnum::Rational;

/// Dense matrix over `Q`, row-major.
pub type Matrix = Vec<Vec<Rational>>;

/// Which quotient of the Manin-symbol space to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SymbolSign {
    /// The quotient by `x = ι x`.
    Plus,
    /// No involution imposed.
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Class {
    Zero,
    /// `x_g = sign · x_col`
    Col(i8, usize),
}

/// Manin symbols `[X^i Y^{k-2-i}, (c : d)]` for `Γ_0(N)` modulo the
/// two- and three-term relations, and optionally the plus involution.
///
/// Generator `(i, j)` has index `i + (k - 1) j`, where `j` indexes the
/// points of `P^1(Z/N)`. The right action of an integer matrix `g` is
/// `[P, (c, d)]·g = [P(aX + bY, cX + dY), (c, d) g]`.
#[derive(Debug, Clone)]
pub struct ManinSymbolSpace {
    level: u64,
    weight: u32,
    sign: SymbolSign,
    p1: P1List,
    classes: Vec<Class>,
    relation_rank: usize,
    /// Column of each basis element.
    basis_cols: Vec<usize>,
    /// Generator whose class is each column.
    col_gens: Vec<usize>,
    /// Each generator as a sparse vector in the basis.
    gen_expr: Vec<Vec<(usize, Rational)>>,
}

pub(crate) fn binomial(n: u32, r: u32) -> BigInt {
    (0..r).fold(BigInt::one(), |acc, t| acc * (n - t) / (t + 1))
}

/// Coefficients (on `X^m Y^{w-m}`, `m = 0..=w`) of `(aX + bY)^i (cX + dY)^{w-i}`.
pub(crate) fn monomial_action(i: u32, w: u32, a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) -> Vec<BigInt> {
    let expand = |e: u32, x: &BigInt, y: &BigInt| -> Vec<BigInt> {
        (0..=e).map(|s| binomial(e, s) * x.pow(s) * y.pow(e - s)).collect()
    };
    let left = expand(i, a, b);
    let right = expand(w - i, c, d);
    let mut out = vec![BigInt::zero(); (w + 1) as usize];
    for (s, l) in left.iter().enumerate() {
        if l.is_zero() {
            continue;
        }
        for (t, r) in right.iter().enumerate() {
            out[s + t] += l * r;
        }
    }
    out
}

/// Matrices `(a b; c d)` with `ad - bc = ell`, `a > b >= 0`, `d > c >= 0`.
pub fn heilbronn_merel(ell: u64) -> Vec<[i64; 4]> {
    let n = ell as i64;
    let mut out = Vec::new();
    for a in 1..=n {
        for d in 1..=n {
            let ad = a * d;
            if ad < n {
                continue;
            }
            if ad == n {
                // bc = 0 with b < a, c < d
                for b in 0..a {
                    out.push([a, b, 0, d]);
                }
                for c in 1..d {
                    out.push([a, 0, c, d]);
                }
                continue;
            }
            let bc = ad - n;
            for b in 1..a {
                if bc % b == 0 {
                    let c = bc / b;
                    if c < d {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}

/// `[X^i Y^{k-2-i}, (u : v)] · m` as generator multiplicities, or nothing
/// when `(u, v) m` is not a point of `P^1(Z/N)`.
pub(crate) fn act_on_generator(p1: &P1List, weight: u32, g: usize, m: &[i64; 4]) -> Vec<(usize, BigInt)> {
    let stride = (weight - 1) as usize;
    let (i, j) = ((g % stride) as u32, g / stride);
    let (u, v) = p1.point(j);
    let (u, v) = (u as i64, v as i64);
    let [a, b, c, d] = *m;
    let Some(target) = p1.index(u * a + v * c, u * b + v * d) else {
        return Vec::new();
    };
    let coeffs = monomial_action(i, weight - 2, &a.into(), &b.into(), &c.into(), &d.into());
    coeffs
        .into_iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(mono, x)| (mono + stride * target, x))
        .collect()
}

impl ManinSymbolSpace {
    pub fn new(level: u64, weight: u32) -> ManinSymbolSpace {
        Self::with_sign(level, weight, SymbolSign::Plus)
    }

    pub fn with_sign(level: u64, weight: u32, sign: SymbolSign) -> ManinSymbolSpace {
        assert!(level >= 1, "level must be positive");
        assert!(weight >= 2 && weight % 2 == 0, "weight must be even and at least 2");
        let p1 = P1List::new(level);
        let w = weight - 2;
        let stride = (weight - 1) as usize;
        let ngens = stride * p1.len();
        let gen = |i: u32, j: usize| i as usize + stride * j;

        let mut uf = SignedUnionFind::new(ngens);
        for j in 0..p1.len() {
            let (c, d) = p1.point(j);
            let (c, d) = (c as i64, d as i64);
            let sj = p1.index(d, -c).expect("S preserves P^1");
            let ij = p1.index(-c, d).expect("involution preserves P^1");
            for i in 0..=w {
                let parity = if i % 2 == 0 { 1 } else { -1 };
                // x + x S = 0, with [X^i Y^{w-i}] S = (-1)^i X^{w-i} Y^i
                uf.relate(gen(i, j), gen(w - i, sj), parity);
                if sign == SymbolSign::Plus {
                    // x - ι x = 0
                    uf.relate(gen(i, j), gen(i, ij), -parity);
                }
            }
        }

        let mut col_of_root = vec![usize::MAX; ngens];
        let mut col_gens = Vec::new();
        let mut classes = Vec::with_capacity(ngens);
        for g in 0..ngens {
            let (root, s, zero) = uf.find(g);
            if zero {
                classes.push(Class::Zero);
                continue;
            }
            if col_of_root[root] == usize::MAX {
                col_of_root[root] = col_gens.len();
                col_gens.push(root);
            }
            classes.push(Class::Col(s, col_of_root[root]));
        }
        // the root of each class has sign +1 relative to itself
        debug_assert!(col_gens.iter().all(|&g| matches!(classes[g], Class::Col(1, _))));

        let mut space = ManinSymbolSpace {
            level,
            weight,
            sign,
            p1,
            classes,
            relation_rank: 0,
            basis_cols: Vec::new(),
            col_gens,
            gen_expr: Vec::new(),
        };

        let tau = [0i64, -1, 1, -1];
        let tau2 = [-1i64, 1, -1, 0];
        let mut echelon = Echelon::new(space.col_gens.len());
        for j in 0..space.p1.len() {
            for i in 0..=w {
                let mut row: SparseRow = Vec::new();
                space.push_class(&mut row, gen(i, j), &BigInt::one());
                for m in [tau, tau2] {
                    for (g, coef) in space.act_on_generator(gen(i, j), &m) {
                        space.push_class(&mut row, g, &coef);
                    }
                }
                echelon.insert(row);
            }
        }
        space.basis_cols = echelon.free_columns();
        let mut pos = vec![usize::MAX; space.col_gens.len()];
        for (b, &c) in space.basis_cols.iter().enumerate() {
            pos[c] = b;
        }
        space.gen_expr = space
            .classes
            .iter()
            .map(|cl| match *cl {
                Class::Zero => Vec::new(),
                Class::Col(s, col) => echelon
                    .solve_column(col)
                    .into_iter()
                    .map(|(c, v)| (pos[c], if s < 0 { -v } else { v }))
                    .collect(),
            })
            .collect();
        space.relation_rank = echelon.rank();
        space
    }

    fn push_class(&self, row: &mut SparseRow, g: usize, coef: &BigInt) {
        if let Class::Col(s, col) = self.classes[g] {
            row.push((col, if s < 0 { -coef } else { coef.clone() }));
        }
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn sign(&self) -> SymbolSign {
        self.sign
    }

    pub fn p1(&self) -> &P1List {
        &self.p1
    }

    pub fn dimension(&self) -> usize {
        self.basis_cols.len()
    }

    /// Rank of the three-term relations after the two-term reduction.
    pub fn relation_rank(&self) -> usize {
        self.relation_rank
    }

    pub fn num_generators(&self) -> usize {
        self.classes.len()
    }

    pub fn generator_index(&self, i: u32, point: usize) -> usize {
        i as usize + (self.weight - 1) as usize * point
    }

    /// `(i, point index)` of a generator.
    pub fn generator(&self, g: usize) -> (u32, usize) {
        let stride = (self.weight - 1) as usize;
        ((g % stride) as u32, g / stride)
    }

    /// Generator `g` as a sparse vector in the basis.
    pub fn expression(&self, g: usize) -> &[(usize, Rational)] {
        &self.gen_expr[g]
    }

    /// A generator representing basis element `b`.
    pub fn basis_generator(&self, b: usize) -> usize {
        self.col_gens[self.basis_cols[b]]
    }

    /// `x_g · m` for an integer matrix `m = (a, b, c, d)`, as generator
    /// multiplicities; terms whose point leaves `P^1(Z/N)` are dropped.
    pub fn act_on_generator(&self, g: usize, m: &[i64; 4]) -> Vec<(usize, BigInt)> {
        act_on_generator(&self.p1, self.weight, g, m)
    }

    /// A combination of generators, reduced to the basis.
    pub fn reduce(&self, terms: &[(usize, BigInt)]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dimension()];
        for (g, coef) in terms {
            let c = Rational::from_integer(coef.clone());
            for (b, v) in &self.gen_expr[*g] {
                out[*b] += &c * v;
            }
        }
        out
    }

    /// Matrix of `T_ell` (or `U_ell` when `ell | N`) via the Heilbronn
    /// matrices of determinant `ell`. Row `b` is the image of basis element `b`.
    pub fn hecke_matrix(&self, ell: u64) -> Matrix {
        assert!(is_prime(ell), "{ell} is not prime");
        let hs = heilbronn_merel(ell);
        (0..self.dimension())
            .map(|b| {
                let g = self.basis_generator(b);
                let terms: Vec<(usize, BigInt)> = hs.iter().flat_map(|h| self.act_on_generator(g, h)).collect();
                self.reduce(&terms)
            })
            .collect()
    }

    /// Matrix of the involution `diag(-1, 1)`; the identity on the plus quotient.
    pub fn involution_matrix(&self) -> Matrix {
        (0..self.dimension())
            .map(|b| {
                let g = self.basis_generator(b);
                let (i, j) = self.generator(g);
                let (c, d) = self.p1.point(j);
                let target = self.p1.index(-(c as i64), d as i64).expect("point");
                let s = if i % 2 == 0 { 1 } else { -1 };
                self.reduce(&[(self.generator_index(i, target), BigInt::from(s))])
            })
            .collect()
    }

    /// Checks that every defining relation vanishes in the quotient.
    pub fn relations_hold(&self) -> bool {
        let zero = |v: &[Rational]| v.iter().all(|x| x.is_zero());
        let sigma = [0i64, -1, 1, 0];
        let tau = [0i64, -1, 1, -1];
        let tau2 = [-1i64, 1, -1, 0];
        let iota = [-1i64, 0, 0, 1];
        for g in 0..self.num_generators() {
            let one = (g, BigInt::one());
            let mut s = vec![one.clone()];
            s.extend(self.act_on_generator(g, &sigma));
            let mut t = vec![one.clone()];
            t.extend(self.act_on_generator(g, &tau));
            t.extend(self.act_on_generator(g, &tau2));
            if !zero(&self.reduce(&s)) || !zero(&self.reduce(&t)) {
                return false;
            }
            if self.sign == SymbolSign::Plus {
                let mut i = vec![one];
                i.extend(self.act_on_generator(g, &iota).into_iter().map(|(h, c)| (h, -c)));
                if !zero(&self.reduce(&i)) {
                    return false;
                }
            }
        }
        true
    }

    /// Dimension of the cuspidal part, computed as the complement of the
    /// Eisenstein part under one Hecke operator.
    ///
    /// On the Eisenstein part, `T_ell` has eigenvalues `ζ + ζ^{-1} ell^{k-1}`
    /// for roots of unity `ζ` of order dividing the exponent of
    /// `(Z/c)^×`, `c^2 | N`. `ell` is chosen so that these exceed the
    /// Ramanujan bound, which keeps them away from cuspidal eigenvalues.
    pub fn cuspidal_dimension(&self) -> usize {
        let k = self.weight;
        let ell = primes_up_to(1000)
            .into_iter()
            .find(|&l| {
                let big = (l as f64).powi(k as i32 - 1);
                self.level % l != 0 && (big - 1.0) * (big - 1.0) > 4.0 * big + 1.0
            })
            .expect("a suitable prime");
        let c = (1..=self.level)
            .filter(|c| self.level % (c * c) == 0)
            .max()
            .unwrap_or(1);
        let e = exponent_of_unit_group(c);
        let big_l = BigInt::from(ell).pow(k - 1);
        let poly = eisenstein_polynomial(e, &big_l);
        let t = self.hecke_matrix(ell);
        let m = poly_of_matrix(&poly, &t);
        let mut ech = Echelon::new(self.dimension());
        for row in &m {
            let lcm = row.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
            let ints: SparseRow = row
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (i, (x * Rational::from_integer(lcm.clone())).to_integer()))
                .collect();
            ech.insert(ints);
        }
        // rank of E(T) equals the cuspidal dimension
        ech.rank()
    }
}

fn exponent_of_unit_group(c: u64) -> u64 {
    (1..=c.max(1))
        .filter(|u| u.gcd(&c) == 1)
        .map(|u| {
            let mut x = u % c.max(1);
            let mut ord = 1;
            while c > 1 && x != 1 {
                x = x * u % c;
                ord += 1;
            }
            ord
        })
        .fold(1, |acc, o| acc.lcm(&o))
}

/// `prod_{ζ^e = 1} (x - ζ - L/ζ)` via power sums and Newton's identities.
/// Coefficients from the constant term upwards.
pub(crate) fn eisenstein_polynomial(e: u64, big_l: &BigInt) -> Vec<BigInt> {
    let e_us = e as usize;
    let power_sum = |m: usize| -> BigInt {
        let mut s = BigInt::zero();
        for t in 0..=m {
            if (2 * t as i64 - m as i64).rem_euclid(e as i64) == 0 {
                s += binomial(m as u32, t as u32) * big_l.pow((m - t) as u32);
            }
        }
        s * BigInt::from(e)
    };
    let p: Vec<BigInt> = (0..=e_us).map(power_sum).collect();
    // elementary symmetric functions
    let mut el = vec![BigInt::one()];
    for m in 1..=e_us {
        let mut acc = BigInt::zero();
        for i in 1..=m {
            let term = &el[m - i] * &p[i];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        debug_assert!((&acc % BigInt::from(m)).is_zero());
        el.push(acc / BigInt::from(m));
    }
    // prod (x - r) = sum_m (-1)^m el_m x^{e-m}
    let mut coeffs = vec![BigInt::zero(); e_us + 1];
    for (m, v) in el.into_iter().enumerate() {
        coeffs[e_us - m] = if m % 2 == 0 { v } else { -v };
    }
    coeffs
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let mut out = vec![vec![Rational::zero(); m]; n];
    for i in 0..n {
        for (k, aik) in a[i].iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[k][j].is_zero() {
                    out[i][j] += aik * &b[k][j];
                }
            }
        }
    }
    out
}

fn poly_of_matrix(coeffs: &[BigInt], t: &Matrix) -> Matrix {
    let n = t.len();
    let mut acc: Matrix = vec![vec![Rational::zero(); n]; n];
    for c in coeffs.iter().rev() {
        acc = mat_mul(&acc, t);
        for (i, row) in acc.iter_mut().enumerate() {
            row[i] += Rational::from_integer(c.clone());
        }
    }
    acc
}

/// Union-find over generators tracking `x_g = sign · x_root`, with
/// classes forced to zero by relations like `x = -x`.
struct SignedUnionFind {
    parent: Vec<usize>,
    sign: Vec<i8>,
    zero: Vec<bool>,
}

impl SignedUnionFind {
    fn new(n: usize) -> Self {
        SignedUnionFind {
            parent: (0..n).collect(),
            sign: vec![1; n],
            zero: vec![false; n],
        }
    }

    /// Root, sign relative to root, and whether the class is zero.
    fn find(&mut self, g: usize) -> (usize, i8, bool) {
        let mut path = Vec::new();
        let mut cur = g;
        while self.parent[cur] != cur {
            path.push(cur);
            cur = self.parent[cur];
        }
        let root = cur;
        // fold signs from the top of the path down
        for &node in path.iter().rev() {
            let par = self.parent[node];
            if par != root {
                self.sign[node] *= self.sign[par];
            }
            self.parent[node] = root;
        }
        (root, if g == root { 1 } else { self.sign[g] }, self.zero[root])
    }

    /// Imposes `x_g + c x_h = 0`, `c = ±1`.
    fn relate(&mut self, g: usize, h: usize, c: i8) {
        let (rg, sg, zg) = self.find(g);
        let (rh, sh, zh) = self.find(h);
        if rg == rh {
            // sg x + c sh x = 0
            if sg + c * sh != 0 {
                self.zero[rg] = true;
            }
            return;
        }
        // x_rg = -c sg sh x_rh
        self.parent[rg] = rh;
        self.sign[rg] = -c * sg * sh;
        self.zero[rh] = self.zero[rh] || zg || zh;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merel_set_sizes() {
        for ell in [2u64, 3, 5, 7] {
            let hs = heilbronn_merel(ell);
            assert!(hs.iter().all(|[a, b, c, d]| a * d - b * c == ell as i64));
            assert!(hs.iter().all(|[a, b, c, d]| a > b && *b >= 0 && d > c && *c >= 0));
        }
        assert_eq!(heilbronn_merel(2).len(), 4);
    }

    #[test]
    fn eisenstein_polynomial_small_cases() {
        let l = BigInt::from(7);
        // e = 1: x - (1 + L)
        assert_eq!(eisenstein_polynomial(1, &l), vec![BigInt::from(-8), BigInt::one()]);
        // e = 2: (x - 1 - L)(x + 1 + L) = x^2 - (1 + L)^2
        assert_eq!(
            eisenstein_polynomial(2, &l),
            vec![BigInt::from(-64), BigInt::zero(), BigInt::one()]
        );
        // e = 4 adds ζ = ±i: x = ±i(1 - L), so x^2 + (L - 1)^2
        let p4 = eisenstein_polynomial(4, &l);
        assert_eq!(p4[4], BigInt::one());
        assert_eq!(p4[0], BigInt::from(-64 * 36));
    }

    #[test]
    fn relations_and_dimensions() {
        for (n, k, cusp) in [(1u64, 12u32, 1usize), (1, 2, 0), (1, 24, 2), (11, 2, 1), (27, 2, 1), (32, 2, 1), (37, 2, 2), (36, 2, 1)] {
            let m = ManinSymbolSpace::new(n, k);
            assert!(m.relations_hold(), "relations at ({n}, {k})");
            assert_eq!(m.cuspidal_dimension(), cusp, "cuspidal dimension at ({n}, {k})");
        }
        let full = ManinSymbolSpace::with_sign(11, 2, SymbolSign::Full);
        assert!(full.relations_hold());
        assert_eq!(full.dimension(), 3);
        let i = full.involution_matrix();
        let id: Matrix = (0..3)
            .map(|r| (0..3).map(|c| if r == c { Rational::one() } else { Rational::zero() }).collect())
            .collect();
        assert_eq!(mat_mul(&i, &i), id);
    }

    #[test]
    fn hecke_at_level_one() {
        let m = ManinSymbolSpace::new(1, 12);
        assert_eq!(m.dimension(), 2);
        let t2 = m.hecke_matrix(2);
        let t3 = m.hecke_matrix(3);
        assert_eq!(mat_mul(&t2, &t3), mat_mul(&t3, &t2));
        // char poly of T_2 is (x - (1 + 2^11)) (x + 24)
        let tr = &t2[0][0] + &t2[1][1];
        let det = &t2[0][0] * &t2[1][1] - &t2[0][1] * &t2[1][0];
        assert_eq!(tr, Rational::from_integer(BigInt::from(2049 - 24)));
        assert_eq!(det, Rational::from_integer(BigInt::from(-2049 * 24)));
    }
}
