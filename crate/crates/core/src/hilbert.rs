//! Dimension and degree of projective schemes via Hilbert polynomials.
//!
//! The leading-term ideal of a Gröbner basis feeds a recursive computation
//! of the multigraded Hilbert-series numerator. For products of projective
//! spaces the scheme's dimension and degree are read off the diagonal
//! (Segre) Hilbert polynomial.

use crate::mpoly::{Exp, QQ};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;

/// Multidegree of a monomial w.r.t. the block ranges.
fn multideg(e: &Exp, blocks: &[std::ops::Range<usize>]) -> Vec<u16> {
    blocks
        .iter()
        .map(|r| e[r.clone()].iter().sum::<u16>())
        .collect()
}

fn mono_gcd_quot(a: &Exp, b: &Exp) -> Exp {
    // a / gcd(a, b)
    a.iter()
        .zip(b.iter())
        .map(|(&x, &y)| x.saturating_sub(y))
        .collect()
}

fn mono_divides(a: &Exp, b: &Exp) -> bool {
    a.iter().zip(b.iter()).all(|(&x, &y)| x <= y)
}

fn minimalize(gens: Vec<Exp>) -> Vec<Exp> {
    let mut out: Vec<Exp> = vec![];
    let mut sorted = gens;
    sorted.sort_by_key(|e| e.iter().map(|&x| x as u32).sum::<u32>());
    for g in sorted {
        if !out.iter().any(|m| mono_divides(m, &g)) {
            out.push(g);
        }
    }
    out
}

/// Numerator of the multigraded Hilbert series of R/I for the monomial
/// ideal I: a map multidegree → integer coefficient, with
/// HS(R/I) = Σ c_d u^d / Π_b (1-u_b)^{n_b}.
pub fn hilbert_numerator(
    gens: &[Exp],
    blocks: &[std::ops::Range<usize>],
) -> HashMap<Vec<u16>, i64> {
    let mut acc: HashMap<Vec<u16>, i64> = HashMap::new();
    numerator_rec(
        minimalize(gens.to_vec()),
        blocks,
        &Exp::from_elem(0, blocks.last().map(|r| r.end).unwrap_or(0)),
        1,
        &mut acc,
    );
    acc.retain(|_, c| *c != 0);
    acc
}

fn numerator_rec(
    gens: Vec<Exp>,
    blocks: &[std::ops::Range<usize>],
    shift: &Exp,
    sign: i64,
    acc: &mut HashMap<Vec<u16>, i64>,
) {
    let add = |acc: &mut HashMap<Vec<u16>, i64>, e: &Exp, s: i64| {
        let d = multideg(e, blocks);
        *acc.entry(d).or_insert(0) += s;
    };
    match gens.len() {
        0 => add(acc, shift, sign),
        1 => {
            add(acc, shift, sign);
            let mut e = shift.clone();
            for (i, &x) in gens[0].iter().enumerate() {
                e[i] += x;
            }
            add(acc, &e, -sign);
        }
        _ => {
            // check for pure powers only: closed form
            if gens
                .iter()
                .all(|g| g.iter().filter(|&&x| x > 0).count() == 1)
            {
                // numerator = Π (1 - u^{deg g}) expanded
                let mut parts: Vec<(Exp, i64)> = vec![(shift.clone(), sign)];
                for g in &gens {
                    let mut next = vec![];
                    for (e, s) in &parts {
                        next.push((e.clone(), *s));
                        let mut e2 = e.clone();
                        for (i, &x) in g.iter().enumerate() {
                            e2[i] += x;
                        }
                        next.push((e2, -s));
                    }
                    parts = next;
                }
                for (e, s) in parts {
                    add(acc, &e, s);
                }
                return;
            }
            // split off the last generator m:
            // N(I) = N(I') - u^{deg m} N(I' : m)
            let mut rest = gens.clone();
            let m = rest.pop().unwrap();
            let colon: Vec<Exp> = rest.iter().map(|g| mono_gcd_quot(g, &m)).collect();
            numerator_rec(rest, blocks, shift, sign, acc);
            let mut shift2 = shift.clone();
            for (i, &x) in m.iter().enumerate() {
                shift2[i] += x;
            }
            numerator_rec(minimalize(colon), blocks, &shift2, -sign, acc);
        }
    }
}

/// Dense univariate rational polynomial in t, low-to-high.
#[derive(Clone, Debug, PartialEq)]
pub struct UniPoly(pub Vec<QQ>);

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly(vec![])
    }

    fn trim(&mut self) {
        while self.0.last().map(|c| c.is_zero()).unwrap_or(false) {
            self.0.pop();
        }
    }

    pub fn add_scaled(&mut self, other: &UniPoly, k: i64) {
        if self.0.len() < other.0.len() {
            self.0.resize(other.0.len(), QQ::zero());
        }
        let kq = QQ::from(BigInt::from(k));
        for (i, c) in other.0.iter().enumerate() {
            self.0[i] += c * &kq;
        }
        self.trim();
    }

    pub fn degree(&self) -> Option<usize> {
        if self.0.is_empty() {
            None
        } else {
            Some(self.0.len() - 1)
        }
    }

    pub fn eval_int(&self, t: i64) -> QQ {
        let tq = QQ::from(BigInt::from(t));
        let mut acc = QQ::zero();
        for c in self.0.iter().rev() {
            acc = acc * &tq + c;
        }
        acc
    }
}

/// Π_{i=1}^{m} (t - d + i) / m!  — the polynomial form of
/// binom(t - d + m, m); counts monomials of degree t-d in m+1 variables.
fn binom_poly(d: i64, m: usize) -> UniPoly {
    let mut p = UniPoly(vec![QQ::one()]);
    for i in 1..=m {
        // multiply by (t - d + i)
        let c = QQ::from(BigInt::from(i as i64 - d));
        let mut next = vec![QQ::zero(); p.0.len() + 1];
        for (k, a) in p.0.iter().enumerate() {
            next[k] += a * &c;
            next[k + 1] += a;
        }
        p = UniPoly(next);
    }
    let mut fact = BigInt::one();
    for i in 2..=m {
        fact *= i as i64;
    }
    let inv = QQ::new(BigInt::one(), fact);
    UniPoly(p.0.into_iter().map(|c| c * &inv).collect())
}

/// Diagonal (Segre) Hilbert polynomial of R/I from the numerator data.
pub fn diagonal_hilbert_polynomial(
    numerator: &HashMap<Vec<u16>, i64>,
    block_sizes: &[usize],
) -> UniPoly {
    let mut out = UniPoly::zero();
    let mut cache: HashMap<Vec<u16>, UniPoly> = HashMap::new();
    for (d, &c) in numerator {
        if c == 0 {
            continue;
        }
        let term = cache.entry(d.clone()).or_insert_with(|| {
            let mut prod = UniPoly(vec![QQ::one()]);
            for (b, &n) in block_sizes.iter().enumerate() {
                let f = binom_poly(d[b] as i64, n - 1);
                // prod *= f
                let mut next = vec![QQ::zero(); prod.0.len() + f.0.len() - 1];
                for (i, a) in prod.0.iter().enumerate() {
                    for (j, bb) in f.0.iter().enumerate() {
                        next[i + j] += a * bb;
                    }
                }
                prod = UniPoly(next);
            }
            prod
        });
        out.add_scaled(term, c);
    }
    out
}

/// Dimension and degree of the projective scheme from its leading-term
/// ideal. Returns None for the empty scheme (dimension -1).
pub fn dim_deg_from_lts(
    lts: &[Exp],
    blocks: &[std::ops::Range<usize>],
) -> Option<(u32, BigInt)> {
    let sizes: Vec<usize> = blocks.iter().map(|r| r.len()).collect();
    let num = hilbert_numerator(lts, blocks);
    let p = diagonal_hilbert_polynomial(&num, &sizes);
    let d = p.degree()?;
    let lead = p.0[d].clone();
    let mut fact = BigInt::one();
    for i in 2..=d {
        fact *= i as i64;
    }
    let deg = lead * QQ::from(fact);
    debug_assert!(deg.denom().is_one(), "degree must be an integer");
    let deg_int = deg.numer().clone();
    debug_assert!(deg_int.is_positive(), "degree must be positive");
    Some((d as u32, deg_int))
}

/// Maximum independent set of variables modulo a monomial ideal: largest Y
/// with no generator supported inside Y. Returns the set (affine Krull
/// dimension of R/I is its size).
pub fn max_independent_set(lts: &[Exp], nvars: usize) -> Vec<usize> {
    let gens = minimalize(lts.to_vec());
    if gens.iter().any(|g| g.iter().all(|&x| x == 0)) {
        return vec![]; // unit ideal
    }
    let mut best: Vec<usize> = vec![];
    let mut current: Vec<usize> = vec![];
    fn search(
        v: usize,
        nvars: usize,
        gens: &[Exp],
        current: &mut Vec<usize>,
        best: &mut Vec<usize>,
    ) {
        if current.len() + (nvars - v) <= best.len() {
            return; // cannot beat best
        }
        if v == nvars {
            if current.len() > best.len() {
                *best = current.clone();
            }
            return;
        }
        // try including v
        current.push(v);
        let ok = gens.iter().all(|g| {
            g.iter()
                .enumerate()
                .any(|(i, &x)| x > 0 && !current.contains(&i))
        });
        if ok {
            search(v + 1, nvars, gens, current, best);
        }
        current.pop();
        // try excluding v
        search(v + 1, nvars, gens, current, best);
    }
    search(0, nvars, &gens, &mut current, &mut best);
    best
}

/// Monomial basis of R/I when finite (affine zero-dimensional); None when
/// infinite.
pub fn quotient_staircase(lts: &[Exp], nvars: usize) -> Option<Vec<Exp>> {
    let gens = minimalize(lts.to_vec());
    // finite iff each variable has a pure power among the generators
    let mut bound = vec![0u16; nvars];
    for v in 0..nvars {
        let mut found = None;
        for g in &gens {
            if g.iter().enumerate().all(|(i, &x)| i == v || x == 0) && g[v] > 0 {
                found = Some(g[v]);
                break;
            }
        }
        bound[v] = found?;
    }
    let mut out = vec![];
    let mut cur = Exp::from_elem(0, nvars);
    loop {
        if !gens.iter().any(|g| mono_divides(g, &cur)) {
            out.push(cur.clone());
        }
        // increment odometer
        let mut v = 0;
        loop {
            if v == nvars {
                return Some(out);
            }
            cur[v] += 1;
            if cur[v] < bound[v] {
                break;
            }
            cur[v] = 0;
            v += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use smallvec::smallvec;

    fn e(v: &[u16]) -> Exp {
        Exp::from_slice(v)
    }

    #[test]
    fn hyperplane_in_p3() {
        // V(x1) in P^3: dim 2 deg 1
        let blocks = vec![0..4];
        let (d, deg) = dim_deg_from_lts(&[e(&[1, 0, 0, 0])], &blocks).unwrap();
        assert_eq!((d, deg), (2, BigInt::from(1)));
    }

    #[test]
    fn quadric_and_quartic() {
        let blocks = vec![0..4];
        let (d, deg) = dim_deg_from_lts(&[e(&[2, 0, 0, 0])], &blocks).unwrap();
        assert_eq!((d, deg), (2, BigInt::from(2)));
        let (d, deg) = dim_deg_from_lts(&[e(&[4, 0, 0, 0])], &blocks).unwrap();
        assert_eq!((d, deg), (2, BigInt::from(4)));
    }

    #[test]
    fn twisted_cubic_lts() {
        // grevlex LT ideal of the twisted cubic: <x1^2, x1 x2, x2^2> in P^3
        // (x0 x2 - x1^2, x1 x3 - x2^2, x0 x3 - x1 x2) → dim 1 deg 3
        let blocks = vec![0..4];
        let lts = vec![e(&[0, 2, 0, 0]), e(&[0, 1, 1, 0]), e(&[0, 0, 2, 0])];
        let (d, deg) = dim_deg_from_lts(&lts, &blocks).unwrap();
        assert_eq!((d, deg), (1, BigInt::from(3)));
    }

    #[test]
    fn empty_scheme() {
        let blocks = vec![0..3];
        // irrelevant ideal <x, y, z> in P^2 → empty
        let lts = vec![e(&[1, 0, 0]), e(&[0, 1, 0]), e(&[0, 0, 1])];
        assert!(dim_deg_from_lts(&lts, &blocks).is_none());
    }

    #[test]
    fn segre_product_degrees() {
        // P1 x P1 inside P3 via Segre: the whole product has dim 2, deg 2:
        // numerator of k[x0,x1;y0,y1] (no relations) = 1
        let blocks = vec![0..2, 2..4];
        let (d, deg) = dim_deg_from_lts(&[], &blocks).unwrap();
        assert_eq!((d, deg), (2, BigInt::from(2)));
        // a (1,1) divisor on P1xP1: conic in P3: dim 1 deg 2
        let (d, deg) = dim_deg_from_lts(&[e(&[1, 0, 1, 0])], &blocks).unwrap();
        assert_eq!((d, deg), (1, BigInt::from(2)));
        // P3 x P3 diagonal O(1,1): the full product has dim 6, deg C(6,3)=20
        let blocks2 = vec![0..4, 4..8];
        let (d, deg) = dim_deg_from_lts(&[], &blocks2).unwrap();
        assert_eq!((d, deg), (6, BigInt::from(20)));
        // point x P3: x-block irrelevant-supported monomials kill it
        let lts = vec![
            e(&[1, 0, 0, 0, 0, 0, 0, 0]),
            e(&[0, 1, 0, 0, 0, 0, 0, 0]),
            e(&[0, 0, 1, 0, 0, 0, 0, 0]),
            e(&[0, 0, 0, 1, 0, 0, 0, 0]),
        ];
        assert!(dim_deg_from_lts(&lts, &blocks2).is_none());
        // hyperplane x P3 ~ P2 x P3: dim 5, deg = C(5,2) = 10
        let lts = vec![e(&[1, 0, 0, 0, 0, 0, 0, 0])];
        let (d, deg) = dim_deg_from_lts(&lts, &blocks2).unwrap();
        assert_eq!((d, deg), (5, BigInt::from(10)));
    }

    #[test]
    fn independent_sets() {
        // <x y> in k[x,y,z]: max independent sets {x,z} or {y,z} → dim 2
        let lts = vec![e(&[1, 1, 0])];
        let s = max_independent_set(&lts, 3);
        assert_eq!(s.len(), 2);
        // zero-dim: <x^2, y^3>: independent set empty in k[x,y]
        let lts: Vec<Exp> = vec![smallvec![2, 0], smallvec![0, 3]];
        assert_eq!(max_independent_set(&lts, 2).len(), 0);
    }

    #[test]
    fn staircase() {
        let lts: Vec<Exp> = vec![smallvec![2, 0], smallvec![0, 2], smallvec![1, 1]];
        let b = quotient_staircase(&lts, 2).unwrap();
        assert_eq!(b.len(), 3); // 1, x, y
        let lts2: Vec<Exp> = vec![smallvec![1, 0]];
        assert!(quotient_staircase(&lts2, 2).is_none());
    }
}
