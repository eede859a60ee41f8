//! Public polynomial ring with named, block-structured variables over a
//! scalar tower, plus the literal-syntax parser shared by scalars and
//! polynomials.

use crate::error::{Error, Result};
use crate::mpoly::{Exp, MPoly, MonOrder, QQ};
use crate::scalar::{RatFun, Scalar, Tower};
use std::fmt;
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    pub tower: Tower,
    /// variable names partitioned into grading blocks (flattened in order)
    pub blocks: Vec<Vec<String>>,
}

pub type Ring = Arc<PolyRing>;

impl PolyRing {
    pub fn new(tower: &Tower, blocks: Vec<Vec<&str>>) -> Ring {
        let blocks: Vec<Vec<String>> = blocks
            .into_iter()
            .map(|b| b.into_iter().map(|s| s.to_string()).collect())
            .collect();
        let mut seen = std::collections::HashSet::new();
        for b in &blocks {
            assert!(!b.is_empty(), "every block must be nonempty");
            for n in b {
                assert!(seen.insert(n.clone()), "variable names must be distinct");
            }
        }
        Arc::new(PolyRing {
            tower: tower.clone(),
            blocks,
        })
    }

    pub fn nvars(&self) -> usize {
        self.blocks.iter().map(|b| b.len()).sum()
    }

    pub fn var_names(&self) -> Vec<&str> {
        self.blocks
            .iter()
            .flat_map(|b| b.iter().map(|s| s.as_str()))
            .collect()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.var_names().iter().position(|&n| n == name)
    }

    /// (block index, range of flat indices) per block
    pub fn block_ranges(&self) -> Vec<std::ops::Range<usize>> {
        let mut out = vec![];
        let mut start = 0;
        for b in &self.blocks {
            out.push(start..start + b.len());
            start += b.len();
        }
        out
    }

    pub fn block_of(&self, var: usize) -> usize {
        for (i, r) in self.block_ranges().iter().enumerate() {
            if r.contains(&var) {
                return i;
            }
        }
        unreachable!()
    }
}

/// Monomial orders on the geometric variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyOrder {
    Lex,
    GrevLex,
    /// eliminate the given flat variable indices first
    Elim(Vec<usize>),
}

impl PolyOrder {
    pub fn to_mon_order(&self, nvars: usize) -> MonOrder {
        match self {
            PolyOrder::Lex => MonOrder::lex((0..nvars).collect()),
            PolyOrder::GrevLex => MonOrder::grevlex((0..nvars).collect()),
            PolyOrder::Elim(front) => {
                let rest: Vec<usize> = (0..nvars).filter(|v| !front.contains(v)).collect();
                MonOrder::elim(front.clone(), rest)
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    pub ring: Ring,
    /// sorted descending under the ring's canonical grevlex; no zero coeffs
    pub terms: Vec<(Exp, Scalar)>,
}

impl Poly {
    pub fn zero(ring: &Ring) -> Self {
        Poly {
            ring: ring.clone(),
            terms: vec![],
        }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, Scalar::one(&ring.tower))
    }

    pub fn constant(ring: &Ring, c: Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(ring);
        }
        Poly {
            ring: ring.clone(),
            terms: vec![(Exp::from_elem(0, ring.nvars()), c)],
        }
    }

    pub fn var(ring: &Ring, v: usize) -> Self {
        let mut e = Exp::from_elem(0, ring.nvars());
        e[v] = 1;
        Poly {
            ring: ring.clone(),
            terms: vec![(e, Scalar::one(&ring.tower))],
        }
    }

    pub fn monomial(ring: &Ring, exp: &[u16], c: Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(ring);
        }
        let mut e = Exp::from_slice(exp);
        e.resize(ring.nvars(), 0);
        Poly {
            ring: ring.clone(),
            terms: vec![(e, c)],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn canon(mut self) -> Self {
        let n = self.ring.nvars();
        let ord = MonOrder::grevlex((0..n).collect());
        self.terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        let mut out: Vec<(Exp, Scalar)> = vec![];
        for (e, c) in self.terms.into_iter() {
            if let Some(last) = out.last_mut() {
                if last.0 == e {
                    last.1 = last.1.add(&c);
                    continue;
                }
            }
            out.push((e, c));
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly {
            ring: self.ring,
            terms: out,
        }
    }

    pub fn from_terms(ring: &Ring, terms: Vec<(Exp, Scalar)>) -> Self {
        Poly {
            ring: ring.clone(),
            terms,
        }
        .canon()
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut t = self.terms.clone();
        t.extend(o.terms.iter().cloned());
        Poly {
            ring: self.ring.clone(),
            terms: t,
        }
        .canon()
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, k)| (e.clone(), k.mul(c)))
                .collect(),
        }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut terms = vec![];
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let mut e = ea.clone();
                for (i, &x) in eb.iter().enumerate() {
                    e[i] += x;
                }
                terms.push((e, ca.mul(cb)));
            }
        }
        Poly {
            ring: self.ring.clone(),
            terms,
        }
        .canon()
    }

    pub fn pow(&self, mut n: u32) -> Poly {
        let mut out = Poly::one(&self.ring);
        let mut base = self.clone();
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

    pub fn derivative(&self, v: usize) -> Poly {
        let terms: Vec<(Exp, Scalar)> = self
            .terms
            .iter()
            .filter(|(e, _)| e[v] > 0)
            .map(|(e, c)| {
                let k = e[v];
                let mut ne = e.clone();
                ne[v] = k - 1;
                (ne, c.mul(&Scalar::from_int(&self.ring.tower, k as i64)))
            })
            .collect();
        Poly {
            ring: self.ring.clone(),
            terms,
        }
        .canon()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(e, _)| e.iter().map(|&x| x as u32).sum())
            .max()
            .unwrap_or(0)
    }

    /// multidegree of a term w.r.t. the ring's blocks
    pub fn block_degrees(&self, e: &[u16]) -> Vec<u32> {
        self.ring
            .block_ranges()
            .iter()
            .map(|r| e[r.clone()].iter().map(|&x| x as u32).sum())
            .collect()
    }

    /// Homogeneous w.r.t. every grading block?
    pub fn is_block_homogeneous(&self) -> bool {
        if self.terms.is_empty() {
            return true;
        }
        let d0 = self.block_degrees(&self.terms[0].0);
        self.terms.iter().all(|(e, _)| self.block_degrees(e) == d0)
    }

    pub fn is_homogeneous_total(&self) -> bool {
        if self.terms.is_empty() {
            return true;
        }
        let d0: u32 = self.terms[0].0.iter().map(|&x| x as u32).sum();
        self.terms
            .iter()
            .all(|(e, _)| e.iter().map(|&x| x as u32).sum::<u32>() == d0)
    }

    /// Split into homogeneous components under the total degree.
    pub fn homogeneous_components(&self) -> Vec<Poly> {
        let mut by_deg: std::collections::BTreeMap<u32, Vec<(Exp, Scalar)>> = Default::default();
        for (e, c) in &self.terms {
            let d: u32 = e.iter().map(|&x| x as u32).sum();
            by_deg.entry(d).or_default().push((e.clone(), c.clone()));
        }
        by_deg
            .into_values()
            .map(|t| Poly::from_terms(&self.ring, t))
            .collect()
    }

    /// Substitute variable v by a polynomial.
    pub fn subst(&self, v: usize, value: &Poly) -> Poly {
        let mut out = Poly::zero(&self.ring);
        for (e, c) in &self.terms {
            let k = e[v];
            let mut ne = e.clone();
            ne[v] = 0;
            let mut t = Poly::monomial(&self.ring, &ne, c.clone());
            if k > 0 {
                t = t.mul(&value.pow(k as u32));
            }
            out = out.add(&t);
        }
        out
    }

    /// Apply an invertible linear substitution on one block:
    /// x_i ↦ Σ_j m[i][j] x_j (flat indices within the block).
    pub fn linear_subst_block(&self, block: usize, m: &[Vec<Scalar>]) -> Poly {
        let range = self.ring.block_ranges()[block].clone();
        let n = range.len();
        assert_eq!(m.len(), n);
        let images: Vec<Poly> = (0..n)
            .map(|i| {
                let mut p = Poly::zero(&self.ring);
                for j in 0..n {
                    if !m[i][j].is_zero() {
                        p = p.add(&Poly::var(&self.ring, range.start + j).scale(&m[i][j]));
                    }
                }
                p
            })
            .collect();
        let mut out = Poly::zero(&self.ring);
        for (e, c) in &self.terms {
            let mut t = Poly::constant(&self.ring, c.clone());
            for (i, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                if range.contains(&i) {
                    t = t.mul(&images[i - range.start].pow(x as u32));
                } else {
                    let mut me = Exp::from_elem(0, self.ring.nvars());
                    me[i] = x;
                    t = t.mul(&Poly::monomial(
                        &self.ring,
                        &me,
                        Scalar::one(&self.ring.tower),
                    ));
                }
            }
            out = out.add(&t);
        }
        out
    }

    pub fn leading(&self, order: &MonOrder) -> Option<(&Exp, &Scalar)> {
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(&a.0, &b.0))
            .map(|(e, c)| (e, c))
    }

    /// Divide by the leading coefficient under the given order.
    pub fn monic(&self, order: &MonOrder) -> Poly {
        match self.leading(order) {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.inv().unwrap();
                self.scale(&inv)
            }
        }
    }

    /// Move the polynomial to a ring with the same variables over a larger
    /// tower.
    pub fn lift_to_ring(&self, ring: &Ring) -> Result<Poly> {
        assert_eq!(self.ring.blocks, ring.blocks);
        let terms: Result<Vec<(Exp, Scalar)>> = self
            .terms
            .iter()
            .map(|(e, c)| Ok((e.clone(), c.lift_to(&ring.tower)?)))
            .collect();
        Ok(Poly {
            ring: ring.clone(),
            terms: terms?,
        })
    }

    // -- engine bridge ------------------------------------------------------

    /// Flatten to an MPoly over [geo vars | params | alpha], clearing scalar
    /// denominators (result equals `self` times a nonzero tower scalar).
    pub fn to_flat(&self) -> MPoly {
        let ctx = FlatCtx::of(&self.ring);
        let mut den = MPoly::one(ctx.nparams);
        for (_, c) in &self.terms {
            for r in &c.c {
                den = crate::gcd::lcm(&den, &r.den);
            }
        }
        let mut out = MPoly::zero(ctx.total);
        for (e, c) in &self.terms {
            for (k, r) in c.c.iter().enumerate() {
                if r.is_zero() {
                    continue;
                }
                let mult = den.div_exact(&r.den).unwrap();
                let coeff = r.num.mul(&mult); // in params
                for (pe, pc) in &coeff.terms {
                    let mut fe = Exp::from_elem(0, ctx.total);
                    for (i, &x) in e.iter().enumerate() {
                        fe[i] = x;
                    }
                    for (i, &x) in pe.iter().enumerate() {
                        fe[ctx.ngeo + i] = x;
                    }
                    if k > 0 {
                        fe[ctx.alpha_index()] = k as u16;
                    }
                    out.terms.push((fe, pc.clone()));
                }
            }
        }
        out.normalize()
    }

    /// Reassemble from a flat MPoly (coefficients become denominator-free
    /// scalars).
    pub fn from_flat(ring: &Ring, flat: &MPoly) -> Poly {
        let ctx = FlatCtx::of(ring);
        let mut grouped: std::collections::HashMap<Exp, Vec<MPoly>> = Default::default();
        let d = ring.tower.ext_degree();
        for (fe, c) in &flat.terms {
            let mut ge = Exp::from_elem(0, ctx.ngeo);
            ge[..ctx.ngeo].copy_from_slice(&fe[..ctx.ngeo]);
            let mut pe = Exp::from_elem(0, ctx.nparams);
            for i in 0..ctx.nparams {
                pe[i] = fe[ctx.ngeo + i];
            }
            let ak = if ctx.has_alpha {
                fe[ctx.alpha_index()] as usize
            } else {
                0
            };
            assert!(ak < d, "alpha degree must be reduced before reassembly");
            let entry = grouped
                .entry(ge)
                .or_insert_with(|| vec![MPoly::zero(ctx.nparams); d]);
            entry[ak] = entry[ak].add(&MPoly::monomial(ctx.nparams, &pe, c.clone()));
        }
        let terms: Vec<(Exp, Scalar)> = grouped
            .into_iter()
            .map(|(ge, coefs)| {
                let sc = Scalar {
                    tower: ring.tower.clone(),
                    c: coefs.into_iter().map(RatFun::from_poly).collect(),
                };
                (ge, sc)
            })
            .collect();
        Poly::from_terms(ring, terms)
    }
}

/// Flat variable layout shared by the engine modules.
#[derive(Clone, Debug)]
pub struct FlatCtx {
    pub ngeo: usize,
    pub nparams: usize,
    pub has_alpha: bool,
    pub total: usize,
}

impl FlatCtx {
    pub fn of(ring: &PolyRing) -> FlatCtx {
        let ngeo = ring.nvars();
        let nparams = ring.tower.nparams();
        let has_alpha = ring.tower.ext.is_some();
        FlatCtx {
            ngeo,
            nparams,
            has_alpha,
            total: ngeo + nparams + if has_alpha { 1 } else { 0 },
        }
    }

    pub fn alpha_index(&self) -> usize {
        debug_assert!(self.has_alpha);
        self.ngeo + self.nparams
    }
}

// ---------------------------------------------------------------------------
// ideals
// ---------------------------------------------------------------------------

#[derive(Clone)]
pub struct Ideal {
    pub ring: Ring,
    pub gens: Vec<Poly>,
}

impl Ideal {
    pub fn new(ring: &Ring, gens: Vec<Poly>) -> Self {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal {
            ring: ring.clone(),
            gens,
        }
    }

    pub fn is_block_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_block_homogeneous())
    }

    pub fn lift_to_ring(&self, ring: &Ring) -> Result<Ideal> {
        let gens: Result<Vec<Poly>> = self.gens.iter().map(|g| g.lift_to_ring(ring)).collect();
        Ok(Ideal::new(ring, gens?))
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", g)?;
        }
        write!(f, ")")
    }
}

// ---------------------------------------------------------------------------
// parsing and printing
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub enum Tok {
    Ident(String),
    Int(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

pub fn lex_tokens(text: &str) -> Result<Vec<Tok>> {
    let mut out = vec![];
    let mut it = text.chars().peekable();
    while let Some(&ch) = it.peek() {
        match ch {
            ' ' | '\t' | '\n' | '\r' => {
                it.next();
            }
            '+' => {
                it.next();
                out.push(Tok::Plus);
            }
            '-' => {
                it.next();
                out.push(Tok::Minus);
            }
            '*' => {
                it.next();
                out.push(Tok::Star);
            }
            '/' => {
                it.next();
                out.push(Tok::Slash);
            }
            '^' => {
                it.next();
                out.push(Tok::Caret);
            }
            '(' => {
                it.next();
                out.push(Tok::LParen);
            }
            ')' => {
                it.next();
                out.push(Tok::RParen);
            }
            c if c.is_ascii_digit() => {
                let mut s = String::new();
                while let Some(&d) = it.peek() {
                    if d.is_ascii_digit() {
                        s.push(d);
                        it.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Int(s));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&d) = it.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        s.push(d);
                        it.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Ident(s));
            }
            c => return Err(Error::Parse(format!("unexpected character '{}'", c))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    ring: &'a Ring,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut lhs = self.term()?;
        while let Some(t) = self.peek() {
            match t {
                Tok::Plus => {
                    self.next();
                    let rhs = self.term()?;
                    lhs = lhs.add(&rhs);
                }
                Tok::Minus => {
                    self.next();
                    let rhs = self.term()?;
                    lhs = lhs.sub(&rhs);
                }
                _ => break,
            }
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.next();
                    let rhs = self.factor()?;
                    lhs = lhs.mul(&rhs);
                }
                Some(Tok::Slash) => {
                    self.next();
                    let rhs = self.factor()?;
                    if rhs.is_zero() {
                        return Err(Error::DivisionByZero);
                    }
                    if rhs.total_degree() != 0 {
                        return Err(Error::Parse(
                            "division by a non-scalar polynomial".into(),
                        ));
                    }
                    let inv = rhs.terms[0].1.inv()?;
                    lhs = lhs.scale(&inv);
                }
                _ => break,
            }
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = match self.next() {
            Some(Tok::Minus) => {
                let f = self.factor()?;
                return Ok(f.neg());
            }
            Some(Tok::Plus) => return self.factor(),
            Some(Tok::Int(s)) => {
                let n: num_bigint::BigInt = s
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad integer {}", s)))?;
                Poly::constant(self.ring, Scalar::from_qq(&self.ring.tower, QQ::from(n)))
            }
            Some(Tok::Ident(name)) => {
                if let Some(v) = self.ring.var_index(&name) {
                    Poly::var(self.ring, v)
                } else if let Some(p) = self.ring.tower.param_index(&name) {
                    Poly::constant(self.ring, Scalar::param(&self.ring.tower, p))
                } else if self
                    .ring
                    .tower
                    .ext
                    .as_ref()
                    .map(|e| e.name == name)
                    .unwrap_or(false)
                {
                    Poly::constant(self.ring, Scalar::alpha(&self.ring.tower).unwrap())
                } else {
                    return Err(Error::Parse(format!("unknown symbol '{}'", name)));
                }
            }
            Some(Tok::LParen) => {
                let e = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => e,
                    _ => return Err(Error::Parse("missing ')'".into())),
                }
            }
            other => {
                return Err(Error::Parse(format!(
                    "unexpected token {:?}",
                    other
                )))
            }
        };
        if let Some(Tok::Caret) = self.peek() {
            self.next();
            match self.next() {
                Some(Tok::Int(s)) => {
                    let n: u32 = s
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent {}", s)))?;
                    Ok(base.pow(n))
                }
                _ => Err(Error::Parse("exponent must be a positive integer".into())),
            }
        } else {
            Ok(base)
        }
    }
}

/// Parse a polynomial in the shared literal syntax.
pub fn parse_poly(ring: &Ring, text: &str) -> Result<Poly> {
    let toks = lex_tokens(text)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        ring,
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse("trailing tokens".into()));
    }
    Ok(e)
}

/// Parse a scalar literal over a tower.
pub fn parse_scalar(tower: &Tower, text: &str) -> Result<Scalar> {
    let ring = PolyRing::new(tower, vec![]);
    let p = parse_poly(&ring, text)?;
    if p.is_zero() {
        return Ok(Scalar::zero(tower));
    }
    Ok(p.terms[0].1.clone())
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = self.ring.var_names();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let cs = format!("{}", c);
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) if !rest.contains('+') && !rest.contains(" - ") => {
                    (true, rest.to_string())
                }
                _ => (false, cs),
            };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let is_const_mono = e.iter().all(|&x| x == 0);
            let simple = !mag.contains('+') && !mag.contains(" - ") && !mag.contains('/');
            let mut parts: Vec<String> = vec![];
            if mag != "1" || is_const_mono {
                if simple {
                    parts.push(mag);
                } else {
                    parts.push(format!("({})", mag));
                }
            }
            for (v, &x) in e.iter().enumerate() {
                if x == 1 {
                    parts.push(names[v].to_string());
                } else if x > 1 {
                    parts.push(format!("{}^{}", names[v], x));
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::FieldTower;

    fn ring_fh() -> Ring {
        let t = FieldTower::with_params(&["f", "h"]);
        PolyRing::new(&t, vec![vec!["x1", "x2", "x3", "x4"]])
    }

    #[test]
    fn parse_roundtrip() {
        let r = ring_fh();
        let p = parse_poly(&r, "(h^3*f - h^3)*x1*x3 - 2*x2^2 + 1/2*x4").unwrap();
        let s = format!("{}", p);
        let p2 = parse_poly(&r, &s).unwrap();
        assert_eq!(p, p2);
    }

    #[test]
    fn parse_errors() {
        let r = ring_fh();
        assert!(parse_poly(&r, "x5 + 1").is_err());
        assert!(parse_poly(&r, "x1 +").is_err());
        assert!(parse_poly(&r, "x1 / x2").is_err());
    }

    #[test]
    fn homogeneity() {
        let r = ring_fh();
        let p = parse_poly(&r, "x1*x2 - f*x3^2").unwrap();
        assert!(p.is_block_homogeneous());
        let q = parse_poly(&r, "x1*x2 - x3").unwrap();
        assert!(!q.is_block_homogeneous());
    }

    #[test]
    fn flat_roundtrip() {
        let r = ring_fh();
        let p = parse_poly(&r, "(f/h)*x1^2 + x2*x3 - 1/3*x4^2").unwrap();
        let flat = p.to_flat();
        let back = Poly::from_flat(&r, &flat);
        // equal up to the cleared denominator: monic forms must agree
        let ord = MonOrder::grevlex((0..4).collect());
        assert_eq!(p.monic(&ord), back.monic(&ord));
    }

    #[test]
    fn blocks_and_degrees() {
        let t = FieldTower::rationals();
        let r = PolyRing::new(&t, vec![vec!["x1", "x2"], vec!["y1", "y2"]]);
        let p = parse_poly(&r, "x1*y1 + x2*y2").unwrap();
        assert!(p.is_block_homogeneous());
        assert_eq!(p.block_degrees(&p.terms[0].0), vec![1, 1]);
        let q = parse_poly(&r, "x1^2*y1 + x2*y2").unwrap();
        assert!(!q.is_block_homogeneous());
    }

    #[test]
    fn linear_subst() {
        let t = FieldTower::rationals();
        let r = PolyRing::new(&t, vec![vec!["x", "y"]]);
        let p = parse_poly(&r, "x^2 - y^2").unwrap();
        // x -> x+y, y -> x-y: (x+y)^2 - (x-y)^2 = 4xy
        let m = vec![
            vec![Scalar::one(&t), Scalar::one(&t)],
            vec![Scalar::one(&t), Scalar::from_int(&t, -1)],
        ];
        let q = p.linear_subst_block(0, &m);
        assert_eq!(q, parse_poly(&r, "4*x*y").unwrap());
    }
}
