//! Algebra presentations: the `.alg` file format, the built-in catalog, and
//! conversion of noncommutative quadratic relations into relation spaces.

use crate::error::{Error, Result};
use crate::scalar::{FieldTower, Scalar, Tower};
use crate::superpotential::{pair_index, RelationSpace};
use std::fmt;

#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraSpec {
    pub name: String,
    pub params: Vec<String>,
    pub relations: Vec<String>,
}

impl AlgebraSpec {
    pub fn tower(&self) -> Tower {
        let refs: Vec<&str> = self.params.iter().map(|s| s.as_str()).collect();
        FieldTower::with_params(&refs)
    }

    pub fn relation_space(&self) -> Result<RelationSpace> {
        let tower = self.tower();
        if self.relations.len() != 6 {
            return Err(Error::Invalid(format!(
                "expected 6 relations, found {}",
                self.relations.len()
            )));
        }
        let mut basis = vec![];
        for r in &self.relations {
            basis.push(parse_nc_quadratic(&tower, r)?);
        }
        RelationSpace::new(&tower, basis)
    }
}

/// Value in the truncated free algebra K⟨x1..x4⟩ / (degree ≥ 3).
#[derive(Clone)]
struct NcVal {
    deg0: Scalar,
    deg1: [Scalar; 4],
    deg2: Vec<Scalar>, // 16 entries, noncommutative pairs
    overflow: bool,
}

impl NcVal {
    fn zero(t: &Tower) -> Self {
        NcVal {
            deg0: Scalar::zero(t),
            deg1: std::array::from_fn(|_| Scalar::zero(t)),
            deg2: vec![Scalar::zero(t); 16],
            overflow: false,
        }
    }

    fn scalar(t: &Tower, s: Scalar) -> Self {
        let mut v = Self::zero(t);
        v.deg0 = s;
        v
    }

    fn letter(t: &Tower, i: usize) -> Self {
        let mut v = Self::zero(t);
        v.deg1[i] = Scalar::one(t);
        v
    }

    fn add(&self, o: &NcVal) -> NcVal {
        let mut out = self.clone();
        out.deg0 = out.deg0.add(&o.deg0);
        for i in 0..4 {
            out.deg1[i] = out.deg1[i].add(&o.deg1[i]);
        }
        for i in 0..16 {
            out.deg2[i] = out.deg2[i].add(&o.deg2[i]);
        }
        out.overflow |= o.overflow;
        out
    }

    fn neg(&self) -> NcVal {
        let mut out = self.clone();
        out.deg0 = out.deg0.neg();
        for i in 0..4 {
            out.deg1[i] = out.deg1[i].neg();
        }
        for i in 0..16 {
            out.deg2[i] = out.deg2[i].neg();
        }
        out
    }

    fn mul(&self, o: &NcVal) -> NcVal {
        let t = self.deg0.tower.clone();
        let mut out = NcVal::zero(&t);
        out.overflow = self.overflow || o.overflow;
        out.deg0 = self.deg0.mul(&o.deg0);
        for i in 0..4 {
            out.deg1[i] = self.deg0.mul(&o.deg1[i]).add(&self.deg1[i].mul(&o.deg0));
        }
        for i in 0..16 {
            out.deg2[i] = self.deg0.mul(&o.deg2[i]).add(&self.deg2[i].mul(&o.deg0));
        }
        for a in 0..4 {
            for b in 0..4 {
                let prod = self.deg1[a].mul(&o.deg1[b]);
                let idx = pair_index(a as u8, b as u8);
                out.deg2[idx] = out.deg2[idx].add(&prod);
            }
        }
        // degree-3+ terms
        let cubic = (0..4).any(|a| {
            !self.deg1[a].is_zero() && o.deg2.iter().any(|c| !c.is_zero())
                || !self.deg2[4 * a..4 * a + 4].iter().all(|c| c.is_zero())
                    && o.deg1.iter().any(|c| !c.is_zero())
        }) || (self.deg2.iter().any(|c| !c.is_zero()) && o.deg2.iter().any(|c| !c.is_zero()));
        out.overflow |= cubic;
        out
    }

    fn pow(&self, n: u32) -> NcVal {
        let t = self.deg0.tower.clone();
        let mut out = NcVal::scalar(&t, Scalar::one(&t));
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }
}

/// Parse a noncommutative quadratic relation (letters x1..x4, parameters,
/// `* + - ^ ( )`); letter order in monomials is preserved.
pub fn parse_nc_quadratic(tower: &Tower, text: &str) -> Result<Vec<Scalar>> {
    let toks = crate::polyring::lex_tokens(text)?;
    let mut p = NcParser {
        toks,
        pos: 0,
        tower: tower.clone(),
    };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse("trailing tokens in relation".into()));
    }
    if v.overflow {
        return Err(Error::Invalid(
            "relation has terms of degree ≥ 3".into(),
        ));
    }
    if !v.deg0.is_zero() || v.deg1.iter().any(|c| !c.is_zero()) {
        return Err(Error::Invalid(
            "relation is not homogeneous of degree 2".into(),
        ));
    }
    Ok(v.deg2)
}

struct NcParser {
    toks: Vec<crate::polyring::Tok>,
    pos: usize,
    tower: Tower,
}

impl NcParser {
    fn peek(&self) -> Option<&crate::polyring::Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<crate::polyring::Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<NcVal> {
        use crate::polyring::Tok;
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
                    lhs = lhs.add(&rhs.neg());
                }
                _ => break,
            }
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<NcVal> {
        use crate::polyring::Tok;
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
                    if !rhs.deg1.iter().all(|c| c.is_zero())
                        || !rhs.deg2.iter().all(|c| c.is_zero())
                    {
                        return Err(Error::Parse("division by a non-scalar".into()));
                    }
                    let inv = rhs.deg0.inv()?;
                    lhs = lhs.mul(&NcVal::scalar(&self.tower, inv));
                }
                _ => break,
            }
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<NcVal> {
        use crate::polyring::Tok;
        let base = match self.next() {
            Some(Tok::Minus) => return Ok(self.factor()?.neg()),
            Some(Tok::Plus) => return self.factor(),
            Some(Tok::Int(s)) => {
                let n: num_bigint::BigInt = s
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad integer {}", s)))?;
                NcVal::scalar(
                    &self.tower,
                    Scalar::from_qq(&self.tower, crate::mpoly::QQ::from(n)),
                )
            }
            Some(Tok::Ident(name)) => {
                if let Some(rest) = name.strip_prefix('x') {
                    if let Ok(k) = rest.parse::<usize>() {
                        if (1..=4).contains(&k) {
                            let v = NcVal::letter(&self.tower, k - 1);
                            return self.maybe_pow(v);
                        }
                    }
                }
                if let Some(p) = self.tower.param_index(&name) {
                    NcVal::scalar(&self.tower, Scalar::param(&self.tower, p))
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
            other => return Err(Error::Parse(format!("unexpected token {:?}", other))),
        };
        self.maybe_pow(base)
    }

    fn maybe_pow(&mut self, base: NcVal) -> Result<NcVal> {
        use crate::polyring::Tok;
        if let Some(Tok::Caret) = self.peek() {
            self.next();
            match self.next() {
                Some(Tok::Int(s)) => {
                    let n: u32 = s
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent {}", s)))?;
                    Ok(base.pow(n))
                }
                _ => Err(Error::Parse("exponent must be an integer".into())),
            }
        } else {
            Ok(base)
        }
    }
}

// ---------------------------------------------------------------------------
// .alg file format
// ---------------------------------------------------------------------------

/// Parse an algebra file:
/// ```text
/// algebra "name"
/// params f h
/// relations:
/// x2*x1 - x1*x2 - x1^2
/// ...
/// ```
pub fn parse_algebra(text: &str) -> Result<AlgebraSpec> {
    let mut name = None;
    let mut params: Vec<String> = vec![];
    let mut relations = vec![];
    let mut in_relations = false;
    for raw in text.lines() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if in_relations {
            relations.push(line.to_string());
            continue;
        }
        if let Some(rest) = line.strip_prefix("algebra") {
            let rest = rest.trim();
            let n = rest.trim_matches('"');
            name = Some(n.to_string());
        } else if let Some(rest) = line.strip_prefix("params") {
            params = rest
                .split_whitespace()
                .map(|s| s.to_string())
                .collect();
        } else if line == "relations:" {
            in_relations = true;
        } else {
            return Err(Error::Parse(format!("unexpected line '{}'", line)));
        }
    }
    let name = name.ok_or_else(|| Error::Parse("missing `algebra \"name\"` line".into()))?;
    if relations.len() != 6 {
        return Err(Error::Invalid(format!(
            "expected 6 relations, found {}",
            relations.len()
        )));
    }
    let spec = AlgebraSpec {
        name,
        params,
        relations,
    };
    // validate now: distinct params, parseable homogeneous relations
    spec.relation_space()?;
    Ok(spec)
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "algebra \"{}\"", self.name)?;
        if !self.params.is_empty() {
            writeln!(f, "params {}", self.params.join(" "))?;
        }
        writeln!(f, "relations:")?;
        for r in &self.relations {
            writeln!(f, "{}", r)?;
        }
        Ok(())
    }
}

pub const BUILTIN_POLYRING: &str = "\
algebra \"polyring\"
relations:
x1*x2 - x2*x1
x1*x3 - x3*x1
x1*x4 - x4*x1
x2*x3 - x3*x2
x2*x4 - x4*x2
x3*x4 - x4*x3
";

pub const BUILTIN_SKEW: &str = "\
algebra \"skew\"
params q12 q13 q14 q23 q24 q34
relations:
x1*x2 - q12*x2*x1
x1*x3 - q13*x3*x1
x1*x4 - q14*x4*x1
x2*x3 - q23*x3*x2
x2*x4 - q24*x4*x2
x3*x4 - q34*x4*x3
";

pub const BUILTIN_ALGEBRA_H: &str = "\
algebra \"algebra-H\"
params f h
relations:
x2*x1 - x1*x2 - x1^2
x4*x3 + x3*x4
x3*x1 - h*x1*x4
x3*x2 - h*f*x1*x4 - h*x2*x4
x4*x1 - h*x1*x3
x4*x2 - h*f*x1*x3 - h*x2*x3
";

pub fn builtin_names() -> Vec<&'static str> {
    vec!["polyring", "skew", "algebra-H"]
}

pub fn load_builtin(name: &str) -> Option<AlgebraSpec> {
    let text = match name {
        "polyring" => BUILTIN_POLYRING,
        "skew" => BUILTIN_SKEW,
        "algebra-H" | "algebra-h" | "H" => BUILTIN_ALGEBRA_H,
        _ => return None,
    };
    Some(parse_algebra(text).expect("builtin algebra parses"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::FieldTower;
    use crate::superpotential::{
        compute_superpotential, derivation_quotient_relations, verify_twisted_identity,
    };
    use crate::tensor::Tensor4;

    #[test]
    fn builtin_roundtrip() {
        for name in builtin_names() {
            let spec = load_builtin(name).unwrap();
            let text = format!("{}", spec);
            let back = parse_algebra(&text).unwrap();
            assert_eq!(spec, back);
            assert_eq!(spec.relation_space().unwrap().rank(), 6);
        }
    }

    #[test]
    fn parse_errors() {
        assert!(parse_algebra("algebra \"x\"\nrelations:\nx1*x2\n").is_err()); // 1 relation
        let bad_inhomog = "algebra \"x\"\nrelations:\nx1*x2 - x1\nx1*x3\nx1*x4\nx2*x3\nx2*x4\nx3*x4\n";
        assert!(parse_algebra(bad_inhomog).is_err());
        let bad_symbol = "algebra \"x\"\nrelations:\nx1*x2 - t*x2*x1\nx1*x3\nx1*x4\nx2*x3\nx2*x4\nx3*x4\n";
        assert!(parse_algebra(bad_symbol).is_err());
        let cubic = "algebra \"x\"\nrelations:\nx1*x2*x3\nx1*x3\nx1*x4\nx2*x3\nx2*x4\nx3*x4\n";
        assert!(parse_algebra(cubic).is_err());
    }

    #[test]
    fn noncommutative_order_matters() {
        let t = FieldTower::rationals();
        let a = parse_nc_quadratic(&t, "x2*x1").unwrap();
        let b = parse_nc_quadratic(&t, "x1*x2").unwrap();
        assert_ne!(a, b);
        let sq = parse_nc_quadratic(&t, "x1^2").unwrap();
        assert_eq!(sq[pair_index(0, 0)], Scalar::one(&t));
    }

    /// The printed 36-term expected superpotential of the built-in
    /// two-parameter algebra, used as an exact test vector.
    pub fn algebra_h_expected_tensor() -> Tensor4 {
        let spec = load_builtin("algebra-H").unwrap();
        let tower = spec.tower();
        let terms: [(&str, [u8; 4]); 36] = [
            ("h^4", [1, 1, 3, 4]),
            ("h^4", [1, 1, 4, 3]),
            ("h^4", [1, 2, 3, 4]),
            ("h^4", [1, 2, 4, 3]),
            ("h^3*f - h^3", [1, 3, 1, 3]),
            ("-h^3", [1, 3, 2, 3]),
            ("-2*h^2*f + h^2", [1, 3, 4, 1]),
            ("h^2", [1, 3, 4, 2]),
            ("h^3*f - h^3", [1, 4, 1, 4]),
            ("-h^3", [1, 4, 2, 4]),
            ("-2*h^2*f + h^2", [1, 4, 3, 1]),
            ("h^2", [1, 4, 3, 2]),
            ("-h^4", [2, 1, 3, 4]),
            ("-h^4", [2, 1, 4, 3]),
            ("h^3", [2, 3, 1, 3]),
            ("-h^2", [2, 3, 4, 1]),
            ("h^3", [2, 4, 1, 4]),
            ("-h^2", [2, 4, 3, 1]),
            ("h^2", [3, 1, 1, 4]),
            ("h^2", [3, 1, 2, 4]),
            ("h*f - h", [3, 1, 3, 1]),
            ("-h", [3, 1, 3, 2]),
            ("-h^2", [3, 2, 1, 4]),
            ("h", [3, 2, 3, 1]),
            ("1", [3, 4, 1, 1]),
            ("1", [3, 4, 1, 2]),
            ("-1", [3, 4, 2, 1]),
            ("h^2", [4, 1, 1, 3]),
            ("h^2", [4, 1, 2, 3]),
            ("h*f - h", [4, 1, 4, 1]),
            ("-h", [4, 1, 4, 2]),
            ("-h^2", [4, 2, 1, 3]),
            ("h", [4, 2, 4, 1]),
            ("1", [4, 3, 1, 1]),
            ("1", [4, 3, 1, 2]),
            ("-1", [4, 3, 2, 1]),
        ];
        let mut w = Tensor4::zero(&tower);
        for (coef, word) in terms {
            let c = crate::polyring::parse_scalar(&tower, coef).unwrap();
            w.coeffs
                .insert([word[0] - 1, word[1] - 1, word[2] - 1, word[3] - 1], c);
        }
        w
    }

    #[test]
    fn algebra_h_superpotential_matches() {
        let spec = load_builtin("algebra-H").unwrap();
        let rel = spec.relation_space().unwrap();
        let res = compute_superpotential(&rel).unwrap();
        assert_eq!(res.intersection_dimension, 1);
        assert!(verify_twisted_identity(&res));
        let expected = algebra_h_expected_tensor();
        // equality up to one overall scalar: normalize both the same way
        let got = res.w.normalized(None).unwrap();
        let want = expected.normalized(None).unwrap();
        assert_eq!(got, want);
        // derivation-quotient round trip
        let back = derivation_quotient_relations(&res.w);
        assert!(back.same_span(&rel));
    }
}
