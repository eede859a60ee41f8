//! Exact scalars: rationals, rational functions in named parameters, and a
//! single algebraic extension layer on top.
//!
//! A `FieldTower` describes ℚ(t₁,…,t_k) or ℚ(t₁,…,t_k)(α) with α a root of
//! a monic irreducible minimal polynomial over the parameter field. A
//! `Scalar` is an element of its tower, stored in the α-power basis with
//! reduced rational-function coordinates.

use crate::error::{Error, Result};
use crate::gcd;
use crate::mpoly::{MPoly, QQ};
use crate::rng::Rng;
use num_traits::{One, Signed};
use std::fmt;
use std::sync::Arc;

/// Reduced quotient of two parameter polynomials. The denominator is
/// integer-primitive with positive canonical leading coefficient.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFun {
    pub num: MPoly,
    pub den: MPoly,
}

impl RatFun {
    pub fn zero(nparams: usize) -> Self {
        RatFun {
            num: MPoly::zero(nparams),
            den: MPoly::one(nparams),
        }
    }

    pub fn one(nparams: usize) -> Self {
        RatFun {
            num: MPoly::one(nparams),
            den: MPoly::one(nparams),
        }
    }

    pub fn from_int(nparams: usize, n: i64) -> Self {
        RatFun {
            num: MPoly::int(nparams, n),
            den: MPoly::one(nparams),
        }
    }

    pub fn from_qq(nparams: usize, c: QQ) -> Self {
        RatFun {
            num: MPoly::constant(nparams, c),
            den: MPoly::one(nparams),
        }
    }

    pub fn from_poly(num: MPoly) -> Self {
        let den = MPoly::one(num.nvars);
        RatFun { num, den }
    }

    pub fn new(num: MPoly, den: MPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::new_unchecked(num, den))
    }

    fn new_unchecked(num: MPoly, den: MPoly) -> Self {
        let mut r = RatFun { num, den };
        r.reduce();
        r
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = MPoly::one(self.den.nvars);
            return;
        }
        if !self.den.is_constant() {
            let g = gcd::gcd(&self.num, &self.den);
            if !g.is_constant() {
                self.num = self.num.div_exact(&g).unwrap();
                self.den = self.den.div_exact(&g).unwrap();
            }
        }
        // canonical denominator: integer-primitive, positive lead
        let (u, d) = self.den.rat_content();
        self.den = d;
        let inv = QQ::one() / u;
        self.num = self.num.scale(&inv);
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new_unchecked(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new_unchecked(
            self.num.mul(&o.den).sub(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn neg(&self) -> Self {
        RatFun {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new_unchecked(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::new_unchecked(
            self.num.mul(&o.den),
            self.den.mul(&o.num),
        ))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::new_unchecked(self.den.clone(), self.num.clone()))
    }

    /// Constant value if parameter-free.
    pub fn as_qq(&self) -> Option<QQ> {
        match (self.num.constant_value(), self.den.constant_value()) {
            (Some(n), Some(d)) => Some(n / d),
            _ => None,
        }
    }
}

/// The algebraic extension layer of a tower.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension {
    /// Minimal polynomial z^d + c_{d-1} z^{d-1} + … + c_0 (monic), with
    /// coefficients in the parameter field; stored as c_0..c_{d-1}.
    pub minpoly_tail: Vec<RatFun>,
    pub name: String,
}

impl Extension {
    pub fn degree(&self) -> usize {
        self.minpoly_tail.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldTower {
    pub params: Vec<String>,
    pub ext: Option<Extension>,
}

impl FieldTower {
    pub fn rationals() -> Arc<Self> {
        Arc::new(FieldTower {
            params: vec![],
            ext: None,
        })
    }

    pub fn with_params(params: &[&str]) -> Arc<Self> {
        let names: Vec<String> = params.iter().map(|s| s.to_string()).collect();
        assert!(
            names.iter().collect::<std::collections::HashSet<_>>().len() == names.len(),
            "parameter names must be distinct"
        );
        Arc::new(FieldTower { params: names, ext: None })
    }

    pub fn nparams(&self) -> usize {
        self.params.len()
    }

    pub fn ext_degree(&self) -> usize {
        self.ext.as_ref().map(|e| e.degree()).unwrap_or(1)
    }

    pub fn param_index(&self, name: &str) -> Option<usize> {
        self.params.iter().position(|p| p == name)
    }
}

pub type Tower = Arc<FieldTower>;

/// Element of a field tower in the α-power basis.
#[derive(Clone)]
pub struct Scalar {
    pub tower: Tower,
    /// coordinates c[0] + c[1] α + …; length = extension degree (1 if none)
    pub c: Vec<RatFun>,
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.compatible(other) && self.c == other.c
    }
}
impl Eq for Scalar {}

impl Scalar {
    pub fn zero(tower: &Tower) -> Self {
        let n = tower.nparams();
        Scalar {
            tower: tower.clone(),
            c: vec![RatFun::zero(n); tower.ext_degree()],
        }
    }

    pub fn one(tower: &Tower) -> Self {
        let mut s = Self::zero(tower);
        s.c[0] = RatFun::one(tower.nparams());
        s
    }

    pub fn from_int(tower: &Tower, n: i64) -> Self {
        let mut s = Self::zero(tower);
        s.c[0] = RatFun::from_int(tower.nparams(), n);
        s
    }

    pub fn from_qq(tower: &Tower, c: QQ) -> Self {
        let mut s = Self::zero(tower);
        s.c[0] = RatFun::from_qq(tower.nparams(), c);
        s
    }

    pub fn from_ratfun(tower: &Tower, r: RatFun) -> Self {
        assert_eq!(r.num.nvars, tower.nparams());
        let mut s = Self::zero(tower);
        s.c[0] = r;
        s
    }

    pub fn param(tower: &Tower, idx: usize) -> Self {
        let mut s = Self::zero(tower);
        s.c[0] = RatFun::from_poly(MPoly::var(tower.nparams(), idx));
        s
    }

    pub fn alpha(tower: &Tower) -> Result<Self> {
        if tower.ext.is_none() {
            return Err(Error::Invalid("tower has no extension element".into()));
        }
        let mut s = Self::zero(tower);
        s.c[1] = RatFun::one(tower.nparams());
        Ok(s)
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|r| r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(|r| r.is_zero())
    }

    pub fn compatible(&self, o: &Self) -> bool {
        self.tower.params == o.tower.params && self.tower.ext == o.tower.ext
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.compatible(o) {
            Ok(())
        } else {
            Err(Error::TowerMismatch)
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o).expect("tower mismatch");
        Scalar {
            tower: self.tower.clone(),
            c: self
                .c
                .iter()
                .zip(&o.c)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check(o).expect("tower mismatch");
        Scalar {
            tower: self.tower.clone(),
            c: self
                .c
                .iter()
                .zip(&o.c)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Scalar {
            tower: self.tower.clone(),
            c: self.c.iter().map(|a| a.neg()).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check(o).expect("tower mismatch");
        let d = self.tower.ext_degree();
        let np = self.tower.nparams();
        if d == 1 {
            return Scalar {
                tower: self.tower.clone(),
                c: vec![self.c[0].mul(&o.c[0])],
            };
        }
        // polynomial multiply then reduce mod minpoly
        let mut prod = vec![RatFun::zero(np); 2 * d - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                prod[i + j] = prod[i + j].add(&a.mul(b));
            }
        }
        let tail = &self.tower.ext.as_ref().unwrap().minpoly_tail;
        // reduce: z^d = -(c_0 + … + c_{d-1} z^{d-1})
        for k in (d..prod.len()).rev() {
            let top = prod[k].clone();
            if top.is_zero() {
                continue;
            }
            prod[k] = RatFun::zero(np);
            for (i, m) in tail.iter().enumerate() {
                let t = top.mul(m).neg();
                prod[k - d + i] = prod[k - d + i].add(&t);
            }
        }
        prod.truncate(d);
        Scalar {
            tower: self.tower.clone(),
            c: prod,
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let d = self.tower.ext_degree();
        let np = self.tower.nparams();
        if d == 1 {
            return Ok(Scalar {
                tower: self.tower.clone(),
                c: vec![self.c[0].inv()?],
            });
        }
        // extended Euclid in K[z] with K = Q(params): gcd(minpoly, self) = 1
        let tail = &self.tower.ext.as_ref().unwrap().minpoly_tail;
        let mut m: Vec<RatFun> = tail.clone();
        m.push(RatFun::one(np)); // minpoly coefficients low..high
        let a: Vec<RatFun> = self.c.clone();
        // Bezout: find u with u*a ≡ 1 mod m
        let (g, _, v) = upoly_ext_gcd(&m, &a, np);
        if g.len() != 1 {
            return Err(Error::Invalid(
                "element is a zero divisor: minimal polynomial not irreducible".into(),
            ));
        }
        let ginv = g[0].inv()?;
        let mut c: Vec<RatFun> = v.iter().map(|x| x.mul(&ginv)).collect();
        c.resize(d, RatFun::zero(np));
        Ok(Scalar {
            tower: self.tower.clone(),
            c,
        })
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one(&self.tower);
        let mut base = self.clone();
        let mut n = n;
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

    /// Rational value if the scalar is parameter- and α-free.
    pub fn as_qq(&self) -> Option<QQ> {
        if self.c[1..].iter().any(|r| !r.is_zero()) {
            return None;
        }
        self.c[0].as_qq()
    }

    /// Move to a tower with more parameters / an extension on top; existing
    /// parameters must appear in the target (by name), and an existing
    /// extension must agree with the target's after remapping parameters.
    pub fn lift_to(&self, target: &Tower) -> Result<Self> {
        if self.tower.params == target.params && self.tower.ext == target.ext {
            let mut s = self.clone();
            s.tower = target.clone();
            return Ok(s);
        }
        let map: Option<Vec<usize>> = self
            .tower
            .params
            .iter()
            .map(|p| target.param_index(p))
            .collect();
        let map = map.ok_or(Error::TowerMismatch)?;
        let np = target.nparams();
        let remap = |r: &RatFun| RatFun::new_unchecked(
            r.num.remap(np, &map),
            r.den.remap(np, &map),
        );
        if let Some(ext) = &self.tower.ext {
            let remapped: Vec<RatFun> = ext.minpoly_tail.iter().map(remap).collect();
            match &target.ext {
                Some(text) if text.minpoly_tail == remapped => {}
                _ => return Err(Error::TowerMismatch),
            }
        }
        let mut c: Vec<RatFun> = self.c.iter().map(remap).collect();
        c.resize(target.ext_degree(), RatFun::zero(np));
        Ok(Scalar {
            tower: target.clone(),
            c,
        })
    }
}

/// Extended gcd in K[z], K = Q(params): returns (g, u, v) with u*a + v*b = g
/// (dense low-to-high coefficient vectors, g trimmed).
fn upoly_ext_gcd(
    a: &[RatFun],
    b: &[RatFun],
    np: usize,
) -> (Vec<RatFun>, Vec<RatFun>, Vec<RatFun>) {
    fn trim(v: &mut Vec<RatFun>) {
        while v.last().map(|x| x.is_zero()).unwrap_or(false) {
            v.pop();
        }
    }
    fn is_zero(v: &[RatFun]) -> bool {
        v.is_empty()
    }
    let zero = |n: usize| vec![RatFun::zero(n); 0];
    let mut r0: Vec<RatFun> = a.to_vec();
    let mut r1: Vec<RatFun> = b.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    let mut s0 = vec![RatFun::one(np)];
    let mut s1 = zero(np);
    let mut t0 = zero(np);
    let mut t1 = vec![RatFun::one(np)];
    while !is_zero(&r1) {
        // divide r0 by r1
        let mut rem = r0.clone();
        let mut q: Vec<RatFun> = vec![RatFun::zero(np); rem.len().saturating_sub(r1.len()) + 1];
        let lead = r1.last().unwrap().clone();
        while rem.len() >= r1.len() && !rem.is_empty() {
            let k = rem.len() - r1.len();
            let f = rem.last().unwrap().div(&lead).unwrap();
            q[k] = q[k].add(&f);
            for i in 0..r1.len() {
                let t = f.mul(&r1[i]);
                rem[k + i] = rem[k + i].sub(&t);
            }
            trim(&mut rem);
        }
        let sub_mul = |x0: &[RatFun], x1: &[RatFun], q: &[RatFun]| -> Vec<RatFun> {
            // x0 - q*x1
            let mut out = x0.to_vec();
            let need = q.len() + x1.len();
            if out.len() < need {
                out.resize(need, RatFun::zero(np));
            }
            for (i, qi) in q.iter().enumerate() {
                if qi.is_zero() {
                    continue;
                }
                for (j, xj) in x1.iter().enumerate() {
                    let t = qi.mul(xj);
                    out[i + j] = out[i + j].sub(&t);
                }
            }
            let mut out = out;
            trim(&mut out);
            out
        };
        let s2 = sub_mul(&s0, &s1, &q);
        let t2 = sub_mul(&t0, &t1, &q);
        r0 = r1;
        r1 = rem;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    (r0, s0, t0)
}

/// Deterministic random rational with |numerator| ≤ height and
/// 1 ≤ denominator ≤ height.
pub fn random_scalar(tower: &Tower, seed: u64, height: u64) -> Scalar {
    assert!(height >= 1);
    let mut rng = Rng::new(seed ^ 0x5ca1a6);
    let num = rng.int_in(height);
    let den = 1 + rng.below(height);
    Scalar::from_qq(tower, QQ::new(num.into(), (den as i64).into()))
}

// ---------------------------------------------------------------------------
// display
// ---------------------------------------------------------------------------

fn fmt_mpoly(p: &MPoly, names: &[String]) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut terms: Vec<(Vec<u16>, QQ)> = p
        .terms
        .iter()
        .map(|(e, c)| (e.to_vec(), c.clone()))
        .collect();
    // stable display order: internal canonical descending
    terms.sort_by(|a, b| {
        let da: u32 = a.0.iter().map(|&x| x as u32).sum();
        let db: u32 = b.0.iter().map(|&x| x as u32).sum();
        db.cmp(&da).then_with(|| b.0.cmp(&a.0))
    });
    let mut out = String::new();
    for (i, (e, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let mag = if neg { -c.clone() } else { c.clone() };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mut factors: Vec<String> = vec![];
        if !mag.is_one() || e.iter().all(|&x| x == 0) {
            factors.push(fmt_qq(&mag));
        }
        for (v, &x) in e.iter().enumerate() {
            if x == 1 {
                factors.push(names[v].clone());
            } else if x > 1 {
                factors.push(format!("{}^{}", names[v], x));
            }
        }
        out.push_str(&factors.join("*"));
    }
    out
}

pub fn fmt_qq(c: &QQ) -> String {
    if c.denom().is_one() {
        format!("{}", c.numer())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = &self.tower.params;
        let ext_name = self
            .tower
            .ext
            .as_ref()
            .map(|e| e.name.clone())
            .unwrap_or_default();
        let mut parts: Vec<String> = vec![];
        for (k, r) in self.c.iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            let base = if r.den.is_one() {
                let s = fmt_mpoly(&r.num, names);
                if r.num.terms.len() > 1 && k > 0 {
                    format!("({})", s)
                } else {
                    s
                }
            } else {
                format!(
                    "({})/({})",
                    fmt_mpoly(&r.num, names),
                    fmt_mpoly(&r.den, names)
                )
            };
            let part = match k {
                0 => base,
                1 => format!("{}*{}", base, ext_name),
                _ => format!("{}*{}^{}", base, ext_name, k),
            };
            parts.push(part);
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.num.nvars).map(|i| format!("t{}", i)).collect();
        if self.den.is_one() {
            write!(f, "{}", fmt_mpoly(&self.num, &names))
        } else {
            write!(
                f,
                "({})/({})",
                fmt_mpoly(&self.num, &names),
                fmt_mpoly(&self.den, &names)
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::{qq, qq_frac};

    fn q_tower() -> Tower {
        FieldTower::rationals()
    }

    #[test]
    fn rational_arith() {
        let t = q_tower();
        let a = Scalar::from_qq(&t, qq_frac(1, 2));
        let b = Scalar::from_qq(&t, qq_frac(1, 3));
        let s = a.add(&b);
        assert_eq!(s.as_qq().unwrap(), qq_frac(5, 6));
    }

    #[test]
    fn param_cancellation() {
        // (h^3 f - h^3) * (1/h^3) = f - 1 in Q(f,h)
        let t = FieldTower::with_params(&["f", "h"]);
        let f = Scalar::param(&t, 0);
        let h = Scalar::param(&t, 1);
        let a = h.pow(3).mul(&f).sub(&h.pow(3));
        let b = Scalar::one(&t).div(&h.pow(3)).unwrap();
        let prod = a.mul(&b);
        let expect = f.sub(&Scalar::one(&t));
        assert_eq!(prod, expect);
    }

    #[test]
    fn extension_inverse() {
        // Q(alpha), alpha^2 = 2: (1+alpha)/(1-alpha) = -3 - 2 alpha
        let tower = Arc::new(FieldTower {
            params: vec![],
            ext: Some(Extension {
                minpoly_tail: vec![RatFun::from_int(0, -2), RatFun::zero(0)],
                name: "alpha".into(),
            }),
        });
        let one = Scalar::one(&tower);
        let al = Scalar::alpha(&tower).unwrap();
        let r = one.add(&al).div(&one.sub(&al)).unwrap();
        let expect = Scalar::from_int(&tower, -3).sub(&al.mul(&Scalar::from_int(&tower, 2)));
        assert_eq!(r, expect);
        // brute-force oracle: multiply out (−3−2α)(1−α) and reduce mod α²−2
        let back = r.mul(&one.sub(&al));
        assert_eq!(back, one.add(&al));
    }

    #[test]
    fn random_scalar_props() {
        let t = q_tower();
        let a = random_scalar(&t, 1, 100);
        let b = random_scalar(&t, 1, 100);
        assert_eq!(a, b);
        let c = random_scalar(&t, 7, 1);
        let v = c.as_qq().unwrap();
        assert!(v == qq(-1) || v == qq(0) || v == qq(1));
        let mut distinct = 0;
        for s in 0..1000u64 {
            let x = random_scalar(&t, 2 * s, 100);
            let y = random_scalar(&t, 2 * s + 1, 100);
            if x != y {
                distinct += 1;
            }
        }
        assert!(distinct > 950);
    }

    #[test]
    fn field_axioms_random() {
        // associativity, distributivity, inverses over random triples,
        // in Q and in Q(f,h)(alpha), alpha^2 = f
        let tq = q_tower();
        let tfh = FieldTower::with_params(&["f", "h"]);
        let text = Arc::new(FieldTower {
            params: vec!["f".into(), "h".into()],
            ext: Some(Extension {
                minpoly_tail: vec![
                    RatFun::from_poly(MPoly::var(2, 0)).neg(),
                    RatFun::zero(2),
                ],
                name: "alpha".into(),
            }),
        });
        let mut rng = Rng::new(99);
        let rand_in = |tower: &Tower, rng: &mut Rng| -> Scalar {
            let mut s = Scalar::from_qq(tower, QQ::new(rng.int_in(9).into(), (1 + rng.below(4) as i64).into()));
            for i in 0..tower.nparams() {
                if rng.below(2) == 0 {
                    let p = Scalar::param(tower, i);
                    s = s.add(&p.mul(&Scalar::from_int(tower, rng.int_in(3))));
                }
            }
            if tower.ext.is_some() && rng.below(2) == 0 {
                let a = Scalar::alpha(tower).unwrap();
                s = s.add(&a.mul(&Scalar::from_int(tower, rng.nonzero_int_in(3))));
            }
            s
        };
        for tower in [&tq, &tfh, &text] {
            for _ in 0..40 {
                let a = rand_in(tower, &mut rng);
                let b = rand_in(tower, &mut rng);
                let c = rand_in(tower, &mut rng);
                assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
                assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
                assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
                if !a.is_zero() {
                    assert!(a.mul(&a.inv().unwrap()).is_one());
                }
            }
        }
    }

    #[test]
    fn tower_lift() {
        let tq = q_tower();
        let tfh = FieldTower::with_params(&["f", "h"]);
        let a = Scalar::from_qq(&tq, qq_frac(3, 4));
        let lifted = a.lift_to(&tfh).unwrap();
        assert_eq!(lifted.as_qq().unwrap(), qq_frac(3, 4));
        let f = Scalar::param(&tfh, 0);
        assert!(f.lift_to(&tq).is_err());
    }
}
