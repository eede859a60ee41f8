//! Polynomial gcd and squarefree machinery over the rationals.
//!
//! Multivariate gcds go through content/primitive-part recursion on a main
//! variable with a primitive PRS on the primitive parts. A cheap modular
//! evaluation probe short-circuits the common trivial-gcd case before any
//! PRS work starts.

use crate::mpoly::{MPoly, QQ};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// gcd of two rationals' numerators viewed over ℤ after clearing — only used
/// through integer-primitive representatives, see `MPoly::rat_content`.
fn int_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    use num_integer::Integer;
    a.gcd(b)
}

/// Pick a main variable: used by both gcd and factorization. Prefers the
/// variable of lowest positive degree (cheapest PRS direction).
pub fn pick_main_var(p: &MPoly) -> Option<usize> {
    let mut best: Option<(usize, u16)> = None;
    for v in 0..p.nvars {
        let d = p.deg(v);
        if d > 0 {
            match best {
                None => best = Some((v, d)),
                Some((_, bd)) if d < bd => best = Some((v, d)),
                _ => {}
            }
        }
    }
    best.map(|(v, _)| v)
}

/// Content of `p` w.r.t. variable `v`: gcd of its univariate coefficients.
pub fn content_wrt(p: &MPoly, v: usize) -> MPoly {
    let coeffs = p.to_univar(v);
    let mut g = MPoly::zero(p.nvars);
    for c in coeffs {
        if !c.is_zero() {
            g = gcd(&g, &c);
            if g.is_constant() && !g.is_zero() {
                return MPoly::one(p.nvars);
            }
        }
    }
    g
}

/// 63-bit prime used for the trivial-gcd probe.
const PROBE_P: u64 = 0x7fffffffffffffe7; // 2^63 - 25, prime

fn probe_eval(p: &MPoly, v: usize, point: &[u64]) -> Option<Vec<u64>> {
    // Evaluate all variables except v at `point` modulo PROBE_P; returns
    // dense univariate coefficients, or None if a denominator vanishes.
    let d = p.deg(v) as usize;
    let mut out = vec![0u64; d + 1];
    for (e, c) in &p.terms {
        let mut acc = modq(c)?;
        for (i, &x) in e.iter().enumerate() {
            if i == v || x == 0 {
                continue;
            }
            acc = mulmod(acc, powmod(point[i], x as u64));
        }
        let k = e.get(v).copied().unwrap_or(0) as usize;
        out[k] = addmod(out[k], acc);
    }
    Some(out)
}

fn modq(c: &QQ) -> Option<u64> {
    let p = BigInt::from(PROBE_P);
    let n = ((c.numer() % &p) + &p) % &p;
    let d = ((c.denom() % &p) + &p) % &p;
    let n = n.iter_u64_digits().next().unwrap_or(0);
    let d = d.iter_u64_digits().next().unwrap_or(0);
    if d == 0 {
        return None;
    }
    Some(mulmod(n, invmod(d)))
}

fn addmod(a: u64, b: u64) -> u64 {
    ((a as u128 + b as u128) % PROBE_P as u128) as u64
}

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PROBE_P as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1u64;
    a %= PROBE_P;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

fn invmod(a: u64) -> u64 {
    powmod(a, PROBE_P - 2)
}

fn univar_gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>) -> Vec<u64> {
    let trim = |v: &mut Vec<u64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
    };
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        // a mod b
        let lb = invmod(*b.last().unwrap());
        while a.len() >= b.len() && !a.is_empty() {
            let k = a.len() - b.len();
            let f = mulmod(*a.last().unwrap(), lb);
            for i in 0..b.len() {
                let t = mulmod(f, b[i]);
                a[k + i] = addmod(a[k + i], PROBE_P - t % PROBE_P);
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a
}

/// Degree in `v` of gcd at a random evaluation — an upper bound is not
/// guaranteed but a result of 0 proves the true gcd has v-degree 0 with
/// overwhelming probability; we verify downstream by exact division anyway.
fn probe_gcd_deg(a: &MPoly, b: &MPoly, v: usize, salt: u64) -> Option<usize> {
    let mut rng = crate::rng::Rng::new(0xde5c ^ salt);
    let point: Vec<u64> = (0..a.nvars).map(|_| 2 + rng.below(1 << 20)).collect();
    let ea = probe_eval(a, v, &point)?;
    let eb = probe_eval(b, v, &point)?;
    if ea.len() != a.deg(v) as usize + 1 || eb.len() != b.deg(v) as usize + 1 {
        // leading coefficient vanished; inconclusive
    }
    let g = univar_gcd_mod(ea, eb);
    if g.is_empty() {
        None
    } else {
        Some(g.len() - 1)
    }
}

/// gcd of multivariate polynomials over ℚ, defined up to a rational unit;
/// result is integer-primitive with positive leading coefficient.
/// gcd(0, b) = primitive(b).
pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
    assert_eq!(a.nvars, b.nvars);
    if a.is_zero() {
        return b.rat_content().1;
    }
    if b.is_zero() {
        return a.rat_content().1;
    }
    let a = a.rat_content().1;
    let b = b.rat_content().1;
    if a.is_constant() || b.is_constant() {
        return MPoly::one(a.nvars);
    }
    // monomial content first
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let mut mg = ma.clone();
    for i in 0..mg.len() {
        mg[i] = mg[i].min(mb[i]);
    }
    let a1 = a.div_exact_mono(&ma);
    let b1 = b.div_exact_mono(&mb);
    let core = gcd_primitive_scaffold(&a1, &b1);
    core.mul_term(&mg, &QQ::one()).rat_content().1
}

fn gcd_primitive_scaffold(a: &MPoly, b: &MPoly) -> MPoly {
    let nv = a.nvars;
    // choose main variable present in both
    let mut v = None;
    for i in 0..nv {
        if a.deg(i) > 0 && b.deg(i) > 0 {
            let d = a.deg(i).min(b.deg(i));
            match v {
                None => v = Some((i, d)),
                Some((_, bd)) if d < bd => v = Some((i, d)),
                _ => {}
            }
        }
    }
    let v = match v {
        Some((i, _)) => i,
        None => {
            // no shared variable: gcd divides both contents, which are
            // coprime-by-construction after rat_content; still the true gcd
            // is gcd of contents = 1 unless one divides the other's content.
            return MPoly::one(nv);
        }
    };

    // content-free reduction
    let ca = content_wrt(a, v);
    let cb = content_wrt(b, v);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let cg = gcd(&ca, &cb);

    // probe: likely-trivial gcd of the primitive parts?
    let mut trivially_one = false;
    for salt in 0..2u64 {
        if let Some(d) = probe_gcd_deg(&pa, &pb, v, salt) {
            if d == 0 {
                trivially_one = true;
            }
            break;
        }
    }
    let pg = if trivially_one {
        MPoly::one(nv)
    } else {
        primitive_prs(&pa, &pb, v)
    };
    cg.mul(&pg).rat_content().1
}

/// Primitive PRS on primitive inputs w.r.t. main variable v.
fn primitive_prs(a: &MPoly, b: &MPoly, v: usize) -> MPoly {
    let (mut f, mut g) = if a.deg(v) >= b.deg(v) {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    loop {
        if g.is_zero() {
            // primitive part of f
            let c = content_wrt(&f, v);
            return f.div_exact(&c).unwrap().rat_content().1;
        }
        let r = pseudo_rem(&f, &g, v);
        f = g;
        g = if r.is_zero() {
            r
        } else {
            let c = content_wrt(&r, v);
            r.div_exact(&c).unwrap().rat_content().1
        };
    }
}

/// Pseudo remainder of f by g w.r.t. v: lc(g)^(df-dg+1) f = q g + r.
pub fn pseudo_rem(f: &MPoly, g: &MPoly, v: usize) -> MPoly {
    let dg = g.deg(v);
    assert!(dg > 0 || !g.is_zero());
    let gu = g.to_univar(v);
    let lg = gu.last().unwrap().clone();
    let mut r = f.clone();
    loop {
        let dr = r.deg(v);
        if r.is_zero() || dr < dg {
            return r;
        }
        let ru = r.to_univar(v);
        let lr = ru.last().unwrap().clone();
        // r := lg * r - lr * v^(dr-dg) * g
        let shift = MPoly::var_pow(f.nvars, v, dr - dg);
        r = r.mul(&lg).sub(&lr.mul(&shift).mul(g));
        debug_assert!(r.deg(v) < dr || r.is_zero());
    }
}

/// Pseudo-division: returns (q, r, m) with m*f = q*g + r, deg_v r < deg_v g,
/// where m = lc_v(g)^k for some k.
pub fn pseudo_divrem(f: &MPoly, g: &MPoly, v: usize) -> (MPoly, MPoly, MPoly) {
    let dg = g.deg(v);
    let gu = g.to_univar(v);
    let lg = gu.last().unwrap().clone();
    let mut r = f.clone();
    let mut q = MPoly::zero(f.nvars);
    let mut m = MPoly::one(f.nvars);
    loop {
        let dr = r.deg(v);
        if r.is_zero() || dr < dg {
            return (q, r, m);
        }
        let ru = r.to_univar(v);
        let lr = ru.last().unwrap().clone();
        let shift = MPoly::var_pow(f.nvars, v, dr - dg);
        q = q.mul(&lg).add(&lr.mul(&shift));
        r = r.mul(&lg).sub(&lr.mul(&shift).mul(g));
        m = m.mul(&lg);
    }
}

/// lcm via gcd.
pub fn lcm(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() || b.is_zero() {
        return MPoly::zero(a.nvars);
    }
    let g = gcd(a, b);
    a.div_exact(&g).unwrap().mul(b).rat_content().1
}

/// Squarefree part of p (all variables), up to a rational unit.
pub fn squarefree_part(p: &MPoly) -> MPoly {
    let mut out = p.rat_content().1;
    loop {
        let mut reduced = false;
        for v in 0..out.nvars {
            if out.deg(v) == 0 {
                continue;
            }
            let d = out.derivative(v);
            if d.is_zero() {
                continue;
            }
            let g = gcd(&out, &d);
            if !g.is_constant() {
                out = out.div_exact(&g).unwrap().rat_content().1;
                reduced = true;
            }
        }
        if !reduced {
            return out;
        }
    }
}

/// Squarefree decomposition w.r.t. all variables (Yun on a main variable,
/// recursing into the content): returns list of (factor, multiplicity) with
/// p = unit * prod factor^mult and factors pairwise coprime squarefree.
pub fn squarefree_decomposition(p: &MPoly) -> Vec<(MPoly, u32)> {
    let p = p.rat_content().1;
    if p.is_constant() {
        return vec![];
    }
    let v = pick_main_var(&p).unwrap();
    let cont = content_wrt(&p, v);
    let prim = p.div_exact(&cont).unwrap();
    let mut out = if cont.is_constant() {
        vec![]
    } else {
        squarefree_decomposition(&cont)
    };

    // Yun's algorithm on prim w.r.t. v (char 0)
    let dp = prim.derivative(v);
    let mut g = gcd(&prim, &dp);
    if g.is_constant() {
        out.push((prim, 1));
        return merge_sqf(out);
    }
    let mut c = prim.div_exact(&g).unwrap();
    let mut d = dp.div_exact(&g).unwrap().sub(&c.derivative(v));
    let mut i = 1u32;
    loop {
        if c.is_constant() {
            break;
        }
        let a = gcd(&c, &d);
        if !a.is_constant() {
            out.push((a.clone(), i));
        }
        c = c.div_exact(&a).unwrap();
        d = d.div_exact(&a).unwrap().sub(&c.derivative(v));
        i += 1;
        let _ = &g;
        g = MPoly::one(p.nvars);
    }
    merge_sqf(out)
}

fn merge_sqf(list: Vec<(MPoly, u32)>) -> Vec<(MPoly, u32)> {
    // combine equal factors (can arise via content recursion)
    let mut out: Vec<(MPoly, u32)> = vec![];
    for (f, m) in list {
        if let Some(e) = out.iter_mut().find(|(g, _)| *g == f) {
            e.1 += m;
        } else {
            out.push((f, m));
        }
    }
    out
}

/// Resultant of f and g w.r.t. variable v, subresultant PRS.
pub fn resultant(f: &MPoly, g: &MPoly, v: usize) -> MPoly {
    let nv = f.nvars;
    if f.is_zero() || g.is_zero() {
        return MPoly::zero(nv);
    }
    let (mut a, mut b) = (f.clone(), g.clone());
    let mut sign = false;
    if a.deg(v) < b.deg(v) {
        if a.deg(v) % 2 == 1 && b.deg(v) % 2 == 1 {
            sign = !sign;
        }
        std::mem::swap(&mut a, &mut b);
    }
    if b.deg(v) == 0 {
        return b.pow(a.deg(v) as u32);
    }
    // primitive parts; track contents
    let ca = content_wrt(&a, v);
    let cb = content_wrt(&b, v);
    let mut t = ca.pow(b.deg(v) as u32).mul(&cb.pow(a.deg(v) as u32));
    a = a.div_exact(&ca).unwrap();
    b = b.div_exact(&cb).unwrap();

    let mut g_ = MPoly::one(nv);
    let mut h = MPoly::one(nv);
    loop {
        let da = a.deg(v) as u32;
        let db = b.deg(v) as u32;
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign = !sign;
        }
        let r = pseudo_rem(&a, &b, v);
        a = b;
        let divisor = g_.mul(&h.pow(delta));
        b = if r.is_zero() {
            r
        } else {
            r.div_exact(&divisor).expect("subresultant exact division")
        };
        g_ = a.to_univar(v).last().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            g_.pow(delta)
                .div_exact(&h.pow(delta - 1))
                .expect("subresultant h update")
        };
        if b.is_zero() {
            return MPoly::zero(nv);
        }
        if b.deg(v) == 0 {
            let da = a.deg(v) as u32;
            // h' = h^(1-da) * lc(b)^da = b^da / h^(da-1)
            let res = if da == 0 {
                MPoly::one(nv)
            } else {
                b.pow(da)
                    .div_exact(&h.pow(da - 1))
                    .expect("subresultant final division")
            };
            t = t.mul(&res);
            return if sign { t.neg() } else { t };
        }
    }
}

/// Integer-coefficient view: clear denominators, return (scale, int poly)
/// with int coefficients.
pub fn clear_denominators(p: &MPoly) -> (BigInt, MPoly) {
    use num_integer::Integer;
    let mut den = BigInt::one();
    for (_, c) in &p.terms {
        den = den.lcm(c.denom());
    }
    (den.clone(), p.scale(&QQ::from(den)))
}

/// gcd of all integer coefficients (input must have integer coefficients).
pub fn int_content(p: &MPoly) -> BigInt {
    let mut g = BigInt::zero();
    for (_, c) in &p.terms {
        debug_assert!(c.denom().is_one());
        g = int_gcd(&g, c.numer());
    }
    if g.is_zero() {
        BigInt::one()
    } else {
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::{qq, MPoly};

    fn x(n: usize, v: usize) -> MPoly {
        MPoly::var(n, v)
    }

    #[test]
    fn gcd_univar() {
        // (x+1)^2 (x-3) vs (x+1)(x+2)
        let xv = x(1, 0);
        let a = xv
            .add(&MPoly::int(1, 1))
            .pow(2)
            .mul(&xv.sub(&MPoly::int(1, 3)));
        let b = xv.add(&MPoly::int(1, 1)).mul(&xv.add(&MPoly::int(1, 2)));
        let g = gcd(&a, &b);
        assert_eq!(g, xv.add(&MPoly::int(1, 1)));
    }

    #[test]
    fn gcd_multivar() {
        // common factor (x y - 1)
        let (xv, yv) = (x(2, 0), x(2, 1));
        let f = xv.mul(&yv).sub(&MPoly::int(2, 1));
        let a = f.mul(&xv.add(&yv));
        let b = f.mul(&xv.sub(&yv).add(&MPoly::int(2, 5)));
        let g = gcd(&a, &b);
        assert_eq!(g, f);
    }

    #[test]
    fn gcd_coprime_fast() {
        let (xv, yv) = (x(2, 0), x(2, 1));
        let a = xv.pow(3).add(&yv.pow(2)).add(&MPoly::int(2, 1));
        let b = xv.add(&yv.pow(3)).sub(&MPoly::int(2, 7));
        assert!(gcd(&a, &b).is_one());
    }

    #[test]
    fn sqfree_decomp() {
        // x^2 y (x+y)^3
        let (xv, yv) = (x(2, 0), x(2, 1));
        let p = xv.pow(2).mul(&yv).mul(&xv.add(&yv).pow(3));
        let d = squarefree_decomposition(&p);
        let mut total = MPoly::one(2);
        for (f, m) in &d {
            total = total.mul(&f.pow(*m));
        }
        let (_, p1) = p.rat_content();
        let (_, t1) = total.rat_content();
        assert_eq!(p1, t1);
        assert_eq!(d.iter().map(|(_, m)| m).max(), Some(&3));
    }

    #[test]
    fn resultant_univar() {
        // res_x(x^2-2, x^2-3) = 1 (they share no root); res(x-2, x-3) = ±1
        let xv = x(1, 0);
        let a = xv.pow(2).sub(&MPoly::int(1, 2));
        let b = xv.pow(2).sub(&MPoly::int(1, 3));
        let r = resultant(&a, &b, 0);
        assert!(r.is_constant() && !r.is_zero());
        assert_eq!(r.constant_value().unwrap(), qq(1));
    }

    #[test]
    fn resultant_common_root() {
        let xv = x(1, 0);
        let a = xv.pow(2).sub(&MPoly::int(1, 4));
        let b = xv.sub(&MPoly::int(1, 2));
        assert!(resultant(&a, &b, 0).is_zero());
    }

    #[test]
    fn pseudo_rem_div() {
        let (xv, yv) = (x(2, 0), x(2, 1));
        let f = xv.pow(3).mul(&yv).add(&xv).add(&MPoly::int(2, 1));
        let g = yv.mul(&xv).add(&MPoly::int(2, 2));
        let (q, r, m) = pseudo_divrem(&f, &g, 0);
        assert_eq!(m.mul(&f), q.mul(&g).add(&r));
        assert!(r.deg(0) < g.deg(0));
    }
}
