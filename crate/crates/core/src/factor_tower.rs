//! Factorization over scalar towers: ℚ(params) by clearing denominators,
//! and one algebraic extension layer via Trager's norm method.

use crate::error::{Error, Result};
use crate::gcd;
use crate::mpoly::{MPoly, MonOrder};
use crate::polyring::{FlatCtx, Poly, PolyRing};
use crate::scalar::{Extension, FieldTower, RatFun, Scalar, Tower};
use std::sync::Arc;

/// Factor a polynomial over its ring's tower into irreducibles:
/// (unit, [(monic irreducible factor, multiplicity)]).
pub fn factor_poly(p: &Poly) -> (Scalar, Vec<(Poly, u32)>) {
    let ring = &p.ring;
    if p.is_zero() {
        return (Scalar::zero(&ring.tower), vec![]);
    }
    let raw = if ring.tower.ext.is_none() {
        factor_no_ext(p)
    } else {
        factor_with_ext(p)
    };
    // normalize factors monic, recompute the unit as p / prod
    let ord = MonOrder::grevlex((0..ring.nvars()).collect());
    let mut prod = Poly::one(ring);
    let mut out = vec![];
    for (f, m) in raw {
        let f = f.monic(&ord);
        for _ in 0..m {
            prod = prod.mul(&f);
        }
        out.push((f, m));
    }
    // unit = leading(p) / leading(prod)
    let unit = match (p.leading(&ord), prod.leading(&ord)) {
        (Some((_, a)), Some((_, b))) => a.div(b).expect("unit"),
        _ => Scalar::one(&ring.tower),
    };
    #[cfg(debug_assertions)]
    {
        let check = prod.scale(&unit);
        debug_assert_eq!(&check, p, "tower factorization product mismatch");
    }
    // deterministic order
    out.sort_by(|a, b| {
        let (ea, eb) = (&a.0.terms[0].0, &b.0.terms[0].0);
        ord.cmp(ea, eb).then_with(|| format!("{}", a.0).cmp(&format!("{}", b.0)))
    });
    (unit, out)
}

fn factor_no_ext(p: &Poly) -> Vec<(Poly, u32)> {
    let ring = &p.ring;
    let flat = p.to_flat();
    let (_, facs) = crate::qfactor::factor_qq(&flat);
    let ctx = FlatCtx::of(ring);
    facs.into_iter()
        .filter(|(f, _)| (0..ctx.ngeo).any(|v| f.deg(v) > 0))
        .map(|(f, m)| (Poly::from_flat(ring, &f), m))
        .collect()
}

/// Squarefree decomposition over the tower (Yun via tower gcd on a main
/// variable, recursing into the content).
pub fn squarefree_decomposition_tower(p: &Poly) -> Vec<(Poly, u32)> {
    let ring = &p.ring;
    if p.is_zero() || p.total_degree() == 0 {
        return vec![];
    }
    let v = (0..ring.nvars())
        .filter(|&v| p.terms.iter().any(|(e, _)| e[v] > 0))
        .min_by_key(|&v| p.terms.iter().map(|(e, _)| e[v]).max().unwrap())
        .unwrap();
    let cont = content_wrt_tower(p, v);
    let prim = poly_div(p, &cont);
    let mut out = squarefree_decomposition_tower(&cont);

    let dp = prim.derivative(v);
    let mut g = tower_gcd(&prim, &dp);
    if g.total_degree() == 0 {
        out.push((prim, 1));
        return out;
    }
    let mut c = poly_div(&prim, &g);
    let mut d = poly_div(&dp, &g).sub(&c.derivative(v));
    let mut i = 1u32;
    loop {
        if c.total_degree() == 0 {
            break;
        }
        let a = tower_gcd(&c, &d);
        if a.total_degree() > 0 {
            out.push((a.clone(), i));
        }
        c = poly_div(&c, &a);
        d = poly_div(&d, &a).sub(&c.derivative(v));
        i += 1;
        g = Poly::one(ring);
        let _ = &g;
    }
    out
}

fn poly_div(a: &Poly, b: &Poly) -> Poly {
    crate::groebner::poly_div_exact(a, b).expect("exact division over tower")
}

/// Content of p w.r.t. variable v over the tower: gcd of the coefficients.
fn content_wrt_tower(p: &Poly, v: usize) -> Poly {
    let ring = &p.ring;
    let mut coeffs: std::collections::HashMap<u16, Vec<(crate::mpoly::Exp, Scalar)>> =
        Default::default();
    for (e, c) in &p.terms {
        let k = e[v];
        let mut ne = e.clone();
        ne[v] = 0;
        coeffs.entry(k).or_default().push((ne, c.clone()));
    }
    let mut g = Poly::zero(ring);
    for (_, terms) in coeffs {
        let q = Poly::from_terms(ring, terms);
        g = tower_gcd(&g, &q);
        if g.total_degree() == 0 && !g.is_zero() {
            return Poly::one(ring);
        }
    }
    if g.is_zero() {
        Poly::one(ring)
    } else {
        g
    }
}

/// gcd over the tower field (monic result). Primitive PRS on a main
/// variable; correct over any of the supported towers.
pub fn tower_gcd(a: &Poly, b: &Poly) -> Poly {
    let ring = &a.ring;
    let ord = MonOrder::grevlex((0..ring.nvars()).collect());
    if a.is_zero() {
        return b.monic(&ord);
    }
    if b.is_zero() {
        return a.monic(&ord);
    }
    if a.total_degree() == 0 || b.total_degree() == 0 {
        return Poly::one(ring);
    }
    if ring.tower.ext.is_none() {
        // flat route
        let fa = a.to_flat();
        let fb = b.to_flat();
        let g = gcd::gcd(&fa, &fb);
        let gp = Poly::from_flat(ring, &g);
        // gcd may contain a parameter-only factor (a unit); dividing by the
        // leading coefficient normalizes it away
        return gp.monic(&ord);
    }
    // extension: PRS with field arithmetic on a shared main variable
    let v = (0..ring.nvars())
        .find(|&v| a.terms.iter().any(|(e, _)| e[v] > 0) && b.terms.iter().any(|(e, _)| e[v] > 0));
    let Some(v) = v else {
        return Poly::one(ring);
    };
    let ca = content_wrt_tower(a, v);
    let cb = content_wrt_tower(b, v);
    let pa = poly_div(a, &ca);
    let pb = poly_div(b, &cb);
    let cg = tower_gcd(&ca, &cb);

    let degv = |p: &Poly| p.terms.iter().map(|(e, _)| e[v]).max().unwrap_or(0);
    let lead_in = |p: &Poly, v: usize| -> Poly {
        let d = degv(p);
        let terms: Vec<_> = p
            .terms
            .iter()
            .filter(|(e, _)| e[v] == d)
            .map(|(e, c)| {
                let mut ne = e.clone();
                ne[v] = 0;
                (ne, c.clone())
            })
            .collect();
        Poly::from_terms(&p.ring, terms)
    };
    let (mut f, mut g) = if degv(&pa) >= degv(&pb) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    loop {
        if g.is_zero() {
            let c = content_wrt_tower(&f, v);
            let r = poly_div(&f, &c);
            return cg.mul(&r).monic(&ord);
        }
        // pseudo remainder of f by g in v
        let dg = degv(&g);
        let lg = lead_in(&g, v);
        let mut r = f.clone();
        loop {
            let dr = degv(&r);
            if r.is_zero() || dr < dg {
                break;
            }
            let lr = lead_in(&r, v);
            let mut shift_e = crate::mpoly::Exp::from_elem(0, ring.nvars());
            shift_e[v] = dr - dg;
            let shift = Poly::monomial(ring, &shift_e, Scalar::one(&ring.tower));
            r = r.mul(&lg).sub(&lr.mul(&shift).mul(&g));
        }
        f = g;
        g = if r.is_zero() {
            r
        } else {
            let c = content_wrt_tower(&r, v);
            poly_div(&r, &c)
        };
    }
}

/// Trager: factor a squarefree polynomial over K(α) via the norm.
fn factor_with_ext(p: &Poly) -> Vec<(Poly, u32)> {
    let ring = &p.ring;
    let mut out = vec![];
    for (sf, mult) in squarefree_decomposition_tower(p) {
        for f in factor_ext_squarefree(&sf).expect("norm-based factorization failed") {
            out.push((f, mult));
        }
    }
    // constant factors dropped; they are absorbed by the caller's unit
    out.retain(|(f, _)| f.total_degree() > 0);
    if out.is_empty() && p.total_degree() > 0 {
        out.push((p.clone(), 1));
    }
    let _ = ring;
    out
}

fn factor_ext_squarefree(f: &Poly) -> crate::error::Result<Vec<Poly>> {
    let ring = &f.ring;
    let ctx = FlatCtx::of(ring);
    let ext = ring.tower.ext.as_ref().unwrap();
    let d = ext.degree();
    if f.total_degree() == 0 {
        return Ok(vec![]);
    }

    // cleared minpoly over the flat space [geo | params | alpha]
    let minpoly_flat = {
        let mut den = MPoly::one(ctx.nparams);
        for r in &ext.minpoly_tail {
            den = gcd::lcm(&den, &r.den);
        }
        let map: Vec<usize> = (0..ctx.nparams).map(|i| ctx.ngeo + i).collect();
        let mut acc = MPoly::zero(ctx.total);
        for (i, r) in ext.minpoly_tail.iter().enumerate() {
            let c = r.num.mul(&den.div_exact(&r.den).unwrap()).remap(ctx.total, &map);
            let zi = MPoly::var_pow(ctx.total, ctx.alpha_index(), i as u16);
            acc = acc.add(&c.mul(&zi));
        }
        let top = den
            .remap(ctx.total, &map)
            .mul(&MPoly::var_pow(ctx.total, ctx.alpha_index(), d as u16));
        acc.add(&top)
    };

    // try shifts x -> x + s*alpha over the used variables until the norm
    // is squarefree
    let used: Vec<usize> = (0..ring.nvars())
        .filter(|&v| f.terms.iter().any(|(e, _)| e[v] > 0))
        .collect();
    let alpha = Scalar::alpha(&ring.tower).unwrap();
    for attempt in 0..(8 * used.len() as i64) {
        let s = attempt / used.len() as i64;
        let shift_var = used[(attempt % used.len() as i64) as usize];
        let shifted = if s == 0 && attempt > 0 {
            continue;
        } else if s == 0 {
            f.clone()
        } else {
            let sub = Poly::var(ring, shift_var).add(&Poly::constant(
                ring,
                alpha.mul(&Scalar::from_int(&ring.tower, s)),
            ));
            f.subst(shift_var, &sub)
        };
        let flat = shifted.to_flat();
        let norm = gcd::resultant(&minpoly_flat, &flat, ctx.alpha_index());
        if norm.is_zero() {
            continue;
        }
        let norm_sf = gcd::squarefree_part(&norm);
        let (_, norm_prim) = norm.rat_content();
        if norm_sf != norm_prim {
            continue; // not squarefree; shift more
        }
        // factor the norm over Q(params): geo-positive factors only
        let (_, nfacs) = crate::qfactor::factor_qq(&norm_prim);
        let mut pieces = vec![];
        for (g, _) in nfacs {
            if !(0..ctx.ngeo).any(|v| g.deg(v) > 0) {
                continue;
            }
            // lift g into the extension ring and take gcd with shifted f
            let gp = Poly::from_flat(ring, &g.remap(ctx.total, &(0..ctx.total).collect::<Vec<_>>()));
            let factor = tower_gcd(&shifted, &gp);
            if factor.total_degree() > 0 {
                pieces.push(factor);
            }
        }
        if pieces.is_empty() {
            pieces.push(shifted.clone());
        }
        // un-shift
        let ord = MonOrder::grevlex((0..ring.nvars()).collect());
        let mut out = vec![];
        for piece in pieces {
            let back = if s == 0 {
                piece
            } else {
                let sub = Poly::var(ring, shift_var).sub(&Poly::constant(
                    ring,
                    alpha.mul(&Scalar::from_int(&ring.tower, s)),
                ));
                piece.subst(shift_var, &sub)
            };
            out.push(back.monic(&ord));
        }
        // verify the product; if degrees do not add up, fall through
        let tot: u32 = out.iter().map(|g| g.total_degree()).sum();
        if tot == f.total_degree() {
            return Ok(out);
        }
    }
    Err(crate::error::Error::BudgetExceeded {
        phase: "norm-based factorization over the extension".into(),
    })
}

/// Build an extension tower after verifying the minimal polynomial is monic,
/// of degree ≥ 2, and irreducible over the base.
/// `minpoly` is given by its coefficients c_0..c_d (low to high) over the
/// base tower.
pub fn make_extension(base: &Tower, minpoly: &[Scalar], name: &str) -> Result<Tower> {
    if base.ext.is_some() {
        return Err(Error::Invalid(
            "tower already carries an extension; a single layer is supported".into(),
        ));
    }
    let d = minpoly.len().saturating_sub(1);
    if d < 2 {
        return Err(Error::Invalid("minimal polynomial must have degree >= 2".into()));
    }
    let lead = &minpoly[d];
    if lead.is_zero() {
        return Err(Error::Invalid("leading coefficient is zero".into()));
    }
    let inv = lead.inv()?;
    let monic: Vec<Scalar> = minpoly.iter().map(|c| c.mul(&inv)).collect();

    // irreducibility over the base: factor in a 1-variable ring
    let zring = PolyRing::new(base, vec![vec!["z"]]);
    let mut p = Poly::zero(&zring);
    for (i, c) in monic.iter().enumerate() {
        let mut e = crate::mpoly::Exp::from_elem(0, 1);
        e[0] = i as u16;
        p = p.add(&Poly::monomial(&zring, &e, c.clone()));
    }
    let (_, facs) = factor_poly(&p);
    if facs.len() != 1 || facs[0].1 != 1 {
        let witness = facs
            .iter()
            .min_by_key(|(f, _)| f.total_degree())
            .map(|(f, _)| format!("{}", f))
            .unwrap_or_else(|| "1".into());
        return Err(Error::ReducibleMinpoly { factor: witness });
    }

    let tail: Vec<RatFun> = monic[..d]
        .iter()
        .map(|c| {
            debug_assert!(c.c.len() == 1 || c.c[1..].iter().all(|r| r.is_zero()));
            c.c[0].clone()
        })
        .collect();
    Ok(Arc::new(FieldTower {
        params: base.params.clone(),
        ext: Some(Extension {
            minpoly_tail: tail,
            name: name.to_string(),
        }),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_poly;
    use crate::scalar::FieldTower;

    #[test]
    fn make_extension_checks() {
        let q = FieldTower::rationals();
        let z2m2 = vec![
            Scalar::from_int(&q, -2),
            Scalar::zero(&q),
            Scalar::one(&q),
        ];
        let t = make_extension(&q, &z2m2, "alpha").unwrap();
        assert_eq!(t.ext_degree(), 2);
        // z^2 - 4 reducible with factor z - 2
        let z2m4 = vec![
            Scalar::from_int(&q, -4),
            Scalar::zero(&q),
            Scalar::one(&q),
        ];
        match make_extension(&q, &z2m4, "alpha") {
            Err(Error::ReducibleMinpoly { factor }) => {
                assert!(factor.contains("z"), "witness factor: {}", factor);
            }
            other => panic!("expected reducible error, got {:?}", other.map(|_| ())),
        }
        // z^2 - f over Q(f,h) is irreducible
        let fh = FieldTower::with_params(&["f", "h"]);
        let z2mf = vec![
            Scalar::param(&fh, 0).neg(),
            Scalar::zero(&fh),
            Scalar::one(&fh),
        ];
        assert!(make_extension(&fh, &z2mf, "alpha").is_ok());
    }

    #[test]
    fn factor_over_extension() {
        // x1^2 - 2 x2^2 over Q: irreducible; over Q(sqrt2): splits
        let q = FieldTower::rationals();
        let rq = PolyRing::new(&q, vec![vec!["x1", "x2"]]);
        let p = parse_poly(&rq, "x1^2 - 2*x2^2").unwrap();
        let (_, facs) = factor_poly(&p);
        assert_eq!(facs.len(), 1);
        assert_eq!(facs[0].1, 1);

        let t = make_extension(
            &q,
            &[Scalar::from_int(&q, -2), Scalar::zero(&q), Scalar::one(&q)],
            "alpha",
        )
        .unwrap();
        let rt = PolyRing::new(&t, vec![vec!["x1", "x2"]]);
        let pe = parse_poly(&rt, "x1^2 - 2*x2^2").unwrap();
        let (_, facs) = factor_poly(&pe);
        assert_eq!(facs.len(), 2, "facs: {:?}", facs);
        // expand-product oracle
        let prod = facs[0].0.mul(&facs[1].0);
        let ord = MonOrder::grevlex((0..2).collect());
        assert_eq!(prod.monic(&ord), pe.monic(&ord));
    }

    #[test]
    fn factor_with_params_units() {
        // (f^2+1) * (x1 - h x2)^2 * x2 over Q(f,h): unit folds away
        let t = FieldTower::with_params(&["f", "h"]);
        let r = PolyRing::new(&t, vec![vec!["x1", "x2"]]);
        let p = parse_poly(&r, "(f^2 + 1) * (x1 - h*x2)^2 * x2").unwrap();
        let (unit, facs) = factor_poly(&p);
        assert_eq!(facs.len(), 2);
        let mut prod = Poly::constant(&r, unit);
        for (f, m) in &facs {
            prod = prod.mul(&f.pow(*m));
        }
        assert_eq!(prod, p);
        let mults: Vec<u32> = facs.iter().map(|(_, m)| *m).collect();
        assert!(mults.contains(&2) && mults.contains(&1));
    }

    #[test]
    fn tower_gcd_with_alpha() {
        let q = FieldTower::rationals();
        let t = make_extension(
            &q,
            &[Scalar::from_int(&q, -2), Scalar::zero(&q), Scalar::one(&q)],
            "alpha",
        )
        .unwrap();
        let r = PolyRing::new(&t, vec![vec!["x", "y"]]);
        // common factor x - alpha*y
        let a = parse_poly(&r, "(x - alpha*y)*(x + y)").unwrap();
        let b = parse_poly(&r, "(x - alpha*y)*(x - y)").unwrap();
        let g = tower_gcd(&a, &b);
        let expect = parse_poly(&r, "x - alpha*y").unwrap();
        let ord = MonOrder::grevlex((0..2).collect());
        assert_eq!(g.monic(&ord), expect.monic(&ord));
    }
}
