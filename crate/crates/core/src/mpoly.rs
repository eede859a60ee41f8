//! Sparse multivariate polynomials over the rationals.
//!
//! `MPoly` is the arithmetic substrate for the whole crate: parameter
//! polynomials inside scalars, cleared Gröbner-engine polynomials and the
//! factorization engine all run on it. Variables are anonymous indices;
//! ring descriptors with names live at a higher level.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

pub type QQ = BigRational;
pub type Exp = SmallVec<[u16; 16]>;

pub fn qq(n: i64) -> QQ {
    QQ::from(BigInt::from(n))
}

pub fn qq_frac(n: i64, d: i64) -> QQ {
    QQ::new(BigInt::from(n), BigInt::from(d))
}

/// Comparison kind of a single order block.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrdKind {
    Lex,
    GrevLex,
}

/// A block monomial order: blocks are compared left to right, each with its
/// own comparison kind over its own list of variable indices. An
/// elimination order for a set `F` is `blocks = [(GrevLex, F), (GrevLex, rest)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonOrder {
    pub blocks: Vec<(OrdKind, Vec<usize>)>,
}

impl MonOrder {
    pub fn grevlex(vars: Vec<usize>) -> Self {
        MonOrder {
            blocks: vec![(OrdKind::GrevLex, vars)],
        }
    }

    pub fn lex(vars: Vec<usize>) -> Self {
        MonOrder {
            blocks: vec![(OrdKind::Lex, vars)],
        }
    }

    /// Eliminate `front` first, then grevlex on `rest`.
    pub fn elim(front: Vec<usize>, rest: Vec<usize>) -> Self {
        MonOrder {
            blocks: vec![(OrdKind::GrevLex, front), (OrdKind::GrevLex, rest)],
        }
    }

    pub fn cmp(&self, a: &[u16], b: &[u16]) -> Ordering {
        for (kind, vars) in &self.blocks {
            match kind {
                OrdKind::Lex => {
                    for &v in vars {
                        let (ea, eb) = (get(a, v), get(b, v));
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                    }
                }
                OrdKind::GrevLex => {
                    let da: u32 = vars.iter().map(|&v| get(a, v) as u32).sum();
                    let db: u32 = vars.iter().map(|&v| get(b, v) as u32).sum();
                    if da != db {
                        return da.cmp(&db);
                    }
                    for &v in vars.iter().rev() {
                        let (ea, eb) = (get(a, v), get(b, v));
                        if ea != eb {
                            // smaller exponent on the later variable wins
                            return eb.cmp(&ea);
                        }
                    }
                }
            }
        }
        Ordering::Equal
    }
}

#[inline]
fn get(e: &[u16], v: usize) -> u16 {
    e.get(v).copied().unwrap_or(0)
}

/// Sparse polynomial; terms kept sorted descending under a fixed internal
/// grevlex over all variables so that equality and hashing are canonical.
#[derive(Clone, PartialEq, Eq)]
pub struct MPoly {
    pub nvars: usize,
    pub terms: Vec<(Exp, QQ)>,
}

fn canon_cmp(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&x| x as u32).sum();
    let db: u32 = b.iter().map(|&x| x as u32).sum();
    if da != db {
        return da.cmp(&db);
    }
    for i in (0..a.len().max(b.len())).rev() {
        let (ea, eb) = (get(a, i), get(b, i));
        if ea != eb {
            return eb.cmp(&ea);
        }
    }
    Ordering::Equal
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: vec![],
        }
    }

    pub fn constant(nvars: usize, c: QQ) -> Self {
        if c.is_zero() {
            return Self::zero(nvars);
        }
        MPoly {
            nvars,
            terms: vec![(Exp::from_elem(0, nvars), c)],
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, QQ::one())
    }

    pub fn int(nvars: usize, n: i64) -> Self {
        Self::constant(nvars, qq(n))
    }

    pub fn var(nvars: usize, v: usize) -> Self {
        Self::var_pow(nvars, v, 1)
    }

    pub fn var_pow(nvars: usize, v: usize, e: u16) -> Self {
        assert!(v < nvars);
        if e == 0 {
            return Self::one(nvars);
        }
        let mut exp = Exp::from_elem(0, nvars);
        exp[v] = e;
        MPoly {
            nvars,
            terms: vec![(exp, QQ::one())],
        }
    }

    pub fn monomial(nvars: usize, exp: &[u16], c: QQ) -> Self {
        if c.is_zero() {
            return Self::zero(nvars);
        }
        let mut e = Exp::from_slice(exp);
        e.resize(nvars, 0);
        MPoly {
            nvars,
            terms: vec![(e, c)],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.iter().all(|(e, _)| e.iter().all(|&x| x == 0))
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && self.terms.len() == 1 && self.terms[0].1.is_one()
    }

    pub fn constant_value(&self) -> Option<QQ> {
        if self.is_zero() {
            Some(QQ::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    /// Sort, merge duplicate monomials, drop zeros.
    pub fn normalize(mut self) -> Self {
        self.terms
            .sort_unstable_by(|a, b| canon_cmp(&b.0, &a.0));
        let mut out: Vec<(Exp, QQ)> = Vec::with_capacity(self.terms.len());
        for (e, c) in self.terms.into_iter() {
            if let Some(last) = out.last_mut() {
                if last.0 == e {
                    last.1 += c;
                    continue;
                }
            }
            out.push((e, c));
        }
        out.retain(|(_, c)| !c.is_zero());
        MPoly {
            nvars: self.nvars,
            terms: out,
        }
    }

    pub fn from_terms(nvars: usize, terms: Vec<(Exp, QQ)>) -> Self {
        MPoly { nvars, terms }.normalize()
    }

    pub fn neg(&self) -> Self {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match canon_cmp(&self.terms[i].0, &other.terms[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &self.terms[i].1 + &other.terms[j].1;
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        MPoly {
            nvars: self.nvars,
            terms: out,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &QQ) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, k)| (e.clone(), k * c))
                .collect(),
        }
    }

    pub fn mul_term(&self, exp: &[u16], c: &QQ) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, k)| {
                    let mut ne = e.clone();
                    for (i, &x) in exp.iter().enumerate() {
                        if x != 0 {
                            ne[i] += x;
                        }
                    }
                    (ne, k * c)
                })
                .collect(),
        }
        .normalize()
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.nvars, other.nvars);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, &other.terms[0].1);
        }
        let mut acc: HashMap<Exp, QQ> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let mut e = ea.clone();
                for (i, &x) in eb.iter().enumerate() {
                    if x != 0 {
                        e[i] += x;
                    }
                }
                let entry = acc.entry(e).or_insert_with(QQ::zero);
                *entry += ca * cb;
            }
        }
        let terms: Vec<(Exp, QQ)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        MPoly {
            nvars: self.nvars,
            terms,
        }
        .normalize()
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut out = Self::one(self.nvars);
        while n > 0 {
            if n & 1 == 1 {
                out = out.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    pub fn deg(&self, v: usize) -> u16 {
        self.terms.iter().map(|(e, _)| get(e, v)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(e, _)| e.iter().map(|&x| x as u32).sum())
            .max()
            .unwrap_or(0)
    }

    /// Total degree over a subset of the variables.
    pub fn degree_in(&self, vars: &[usize]) -> u32 {
        self.terms
            .iter()
            .map(|(e, _)| vars.iter().map(|&v| get(e, v) as u32).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn vars_used(&self) -> Vec<usize> {
        let mut used = vec![false; self.nvars];
        for (e, _) in &self.terms {
            for (i, &x) in e.iter().enumerate() {
                if x != 0 {
                    used[i] = true;
                }
            }
        }
        (0..self.nvars).filter(|&i| used[i]).collect()
    }

    pub fn derivative(&self, v: usize) -> Self {
        let terms: Vec<(Exp, QQ)> = self
            .terms
            .iter()
            .filter(|(e, _)| get(e, v) > 0)
            .map(|(e, c)| {
                let k = get(e, v);
                let mut ne = e.clone();
                ne[v] = k - 1;
                (ne, c * qq(k as i64))
            })
            .collect();
        MPoly {
            nvars: self.nvars,
            terms,
        }
        .normalize()
    }

    /// Substitute variable `v` by a polynomial (same variable space).
    pub fn subst(&self, v: usize, value: &MPoly) -> Self {
        let d = self.deg(v) as usize;
        if d == 0 {
            return self.clone();
        }
        // Horner over the coefficients of v.
        let mut coeffs: Vec<MPoly> = vec![MPoly::zero(self.nvars); d + 1];
        for (e, c) in &self.terms {
            let k = get(e, v) as usize;
            let mut ne = e.clone();
            ne[v] = 0;
            coeffs[k] = coeffs[k].add(&MPoly {
                nvars: self.nvars,
                terms: vec![(ne, c.clone())],
            });
        }
        let mut out = coeffs[d].clone().normalize();
        for k in (0..d).rev() {
            out = out.mul(value).add(&coeffs[k].clone().normalize());
        }
        out
    }

    /// Substitute a rational value for variable `v`.
    pub fn eval_var(&self, v: usize, value: &QQ) -> Self {
        let terms: Vec<(Exp, QQ)> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let k = get(e, v);
                let mut ne = e.clone();
                ne[v] = 0;
                let mut cc = c.clone();
                for _ in 0..k {
                    cc *= value;
                }
                (ne, cc)
            })
            .collect();
        MPoly {
            nvars: self.nvars,
            terms,
        }
        .normalize()
    }

    /// Full evaluation at a point.
    pub fn eval_all(&self, point: &[QQ]) -> QQ {
        let mut acc = QQ::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &x) in e.iter().enumerate() {
                for _ in 0..x {
                    t *= &point[i];
                }
            }
            acc += t;
        }
        acc
    }

    pub fn leading(&self, order: &MonOrder) -> Option<(&Exp, &QQ)> {
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(&a.0, &b.0))
            .map(|(e, c)| (e, c))
    }

    /// View as univariate in `v`: dense coefficient list, index = power of v,
    /// coefficients polynomials with v cleared.
    pub fn to_univar(&self, v: usize) -> Vec<MPoly> {
        let d = self.deg(v) as usize;
        let mut out = vec![MPoly::zero(self.nvars); d + 1];
        for (e, c) in &self.terms {
            let k = get(e, v) as usize;
            let mut ne = e.clone();
            ne[v] = 0;
            out[k].terms.push((ne, c.clone()));
        }
        out.into_iter().map(|p| p.normalize()).collect()
    }

    pub fn from_univar(nvars: usize, v: usize, coeffs: &[MPoly]) -> Self {
        let mut terms = vec![];
        for (k, c) in coeffs.iter().enumerate() {
            for (e, q) in &c.terms {
                let mut ne = e.clone();
                ne[v] += k as u16;
                terms.push((ne, q.clone()));
            }
        }
        MPoly { nvars, terms }.normalize()
    }

    /// Map variable indices into a new variable space.
    /// `map[i] = j` sends old variable i to new variable j.
    pub fn remap(&self, new_nvars: usize, map: &[usize]) -> Self {
        let terms: Vec<(Exp, QQ)> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut ne = Exp::from_elem(0, new_nvars);
                for (i, &x) in e.iter().enumerate() {
                    if x != 0 {
                        ne[map[i]] += x;
                    }
                }
                (ne, c.clone())
            })
            .collect();
        MPoly {
            nvars: new_nvars,
            terms,
        }
        .normalize()
    }

    /// Largest exponent vector dividing every term (the monomial content).
    pub fn monomial_content(&self) -> Exp {
        let mut m: Option<Exp> = None;
        for (e, _) in &self.terms {
            match &mut m {
                None => m = Some(e.clone()),
                Some(cur) => {
                    for i in 0..cur.len() {
                        cur[i] = cur[i].min(get(e, i));
                    }
                }
            }
        }
        m.unwrap_or_else(|| Exp::from_elem(0, self.nvars))
    }

    pub fn div_exact_mono(&self, exp: &[u16]) -> Self {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut ne = e.clone();
                    for (i, &x) in exp.iter().enumerate() {
                        assert!(ne[i] >= x);
                        ne[i] -= x;
                    }
                    (ne, c.clone())
                })
                .collect(),
        }
    }

    /// Rational content and integer-primitive part: returns `(u, p)` with
    /// `self = u * p`, p having coprime integer coefficients and positive
    /// canonical leading coefficient.
    pub fn rat_content(&self) -> (QQ, MPoly) {
        use num_integer::Integer;
        if self.is_zero() {
            return (QQ::one(), self.clone());
        }
        let mut den = BigInt::one();
        for (_, c) in &self.terms {
            den = den.lcm(c.denom());
        }
        let mut num = BigInt::zero();
        for (_, c) in &self.terms {
            let n = c.numer() * (&den / c.denom());
            num = num.gcd(&n);
        }
        if num.is_zero() {
            num = BigInt::one();
        }
        // canonical sign from the internally-leading term
        let lead = &self.terms[0].1;
        if lead.is_negative() {
            num = -num;
        }
        let unit = QQ::new(num.clone(), den.clone());
        let inv = QQ::new(den, num);
        (unit, self.scale(&inv))
    }

    /// Exact division; returns None if not divisible. `self / d`.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        assert!(!d.is_zero());
        let order = MonOrder::grevlex((0..self.nvars).collect());
        let mut rem = self.clone();
        let mut q = MPoly::zero(self.nvars);
        let (dl_e, dl_c) = {
            let (e, c) = d.leading(&order).unwrap();
            (e.clone(), c.clone())
        };
        while !rem.is_zero() {
            let (rl_e, rl_c) = {
                let (e, c) = rem.leading(&order).unwrap();
                (e.clone(), c.clone())
            };
            let mut quot = Exp::from_elem(0, self.nvars);
            for i in 0..self.nvars {
                let (a, b) = (get(&rl_e, i), get(&dl_e, i));
                if a < b {
                    return None;
                }
                quot[i] = a - b;
            }
            let coef = rl_c / &dl_c;
            let qt = MPoly::monomial(self.nvars, &quot, coef);
            q = q.add(&qt);
            rem = rem.sub(&qt.mul(d));
        }
        Some(q)
    }

    /// Max coefficient height (max of |numerator|, denominator bits) — used
    /// by budget heuristics only.
    pub fn coeff_bits(&self) -> u64 {
        self.terms
            .iter()
            .map(|(_, c)| c.numer().bits().max(c.denom().bits()))
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly[{}]{{", self.nvars)?;
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{} {:?}", c, e.as_slice())?;
        }
        write!(f, "}}")
    }
}
