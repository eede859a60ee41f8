//! Buchberger engine over scalar towers.
//!
//! Internally a polynomial is a list of (geometric monomial, coefficient)
//! pairs with coefficients in ℚ[params][α] — scalars are cleared on entry
//! and reductions are pseudo-reductions with per-polynomial content removal,
//! so no rational-function arithmetic happens in the inner loop. α-exponents
//! are reduced against the cleared minimal polynomial, whose leading
//! coefficient is a unit of the tower.

use crate::error::{Error, Result};
use crate::gcd;
use crate::mpoly::{Exp, MPoly, MonOrder};
use crate::polyring::{FlatCtx, Ideal, Poly, PolyOrder, PolyRing, Ring};
use crate::scalar::Scalar;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// Shared context for engine computations in one ring.
#[derive(Clone, Debug)]
pub struct EngCtx {
    pub ring: Ring,
    pub flat: FlatCtx,
    pub order: MonOrder,
    /// cleared minimal polynomial coefficients (over the coefficient vars),
    /// low..high, when the tower has an extension
    alpha_minpoly: Option<Vec<MPoly>>,
}

impl EngCtx {
    pub fn new(ring: &Ring, order: &PolyOrder) -> EngCtx {
        let flat = FlatCtx::of(ring);
        let ncoef = flat.nparams + if flat.has_alpha { 1 } else { 0 };
        let alpha_minpoly = ring.tower.ext.as_ref().map(|e| {
            // clear denominators of the monic minpoly
            let mut den = MPoly::one(flat.nparams);
            for r in &e.minpoly_tail {
                den = gcd::lcm(&den, &r.den);
            }
            let mut coeffs: Vec<MPoly> = e
                .minpoly_tail
                .iter()
                .map(|r| r.num.mul(&den.div_exact(&r.den).unwrap()).remap(
                    ncoef,
                    &(0..flat.nparams).collect::<Vec<_>>(),
                ))
                .collect();
            coeffs.push(den.remap(ncoef, &(0..flat.nparams).collect::<Vec<_>>()));
            coeffs
        });
        EngCtx {
            ring: ring.clone(),
            flat,
            order: order.to_mon_order(ring.nvars()),
            alpha_minpoly,
        }
    }

    pub fn ncoef(&self) -> usize {
        self.flat.nparams + if self.flat.has_alpha { 1 } else { 0 }
    }

    fn alpha_var(&self) -> usize {
        self.flat.nparams
    }

    /// Reduce α-exponents below the extension degree; pseudo-multiplies by
    /// the cleared leading coefficient (a unit of the field).
    pub fn alpha_reduce(&self, p: MPoly) -> MPoly {
        let Some(mp) = &self.alpha_minpoly else {
            return p;
        };
        let d = (mp.len() - 1) as u16;
        let av = self.alpha_var();
        let mut cur = p;
        loop {
            let k = cur.deg(av);
            if k < d {
                return cur;
            }
            let lead = &mp[mp.len() - 1];
            // cur = high*α^k + rest  →  lead*rest − high*Σ mp_i α^{k-d+i}
            let mut high = MPoly::zero(cur.nvars);
            let mut rest = MPoly::zero(cur.nvars);
            for (e, c) in &cur.terms {
                if e[av] == k {
                    let mut ne = e.clone();
                    ne[av] = 0;
                    high.terms.push((ne, c.clone()));
                } else {
                    rest.terms.push((e.clone(), c.clone()));
                }
            }
            let high = high.normalize();
            let rest = rest.normalize();
            let mut acc = rest.mul(lead);
            for (i, m) in mp.iter().enumerate().take(mp.len() - 1) {
                if m.is_zero() {
                    continue;
                }
                let mut shift = Exp::from_elem(0, cur.nvars);
                shift[av] = k - d + i as u16;
                let t = high.mul(m).mul_term(&shift, &num_traits::One::one());
                acc = acc.sub(&t);
            }
            cur = acc;
        }
    }

    fn coef_mul(&self, a: &MPoly, b: &MPoly) -> MPoly {
        self.alpha_reduce(a.mul(b))
    }
}

/// Engine polynomial: geometric monomials with coefficient polynomials,
/// sorted descending under the context order.
#[derive(Clone, Debug, PartialEq)]
pub struct GPoly {
    pub terms: Vec<(Exp, MPoly)>,
    pub sugar: u32,
}

impl GPoly {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lt(&self) -> &(Exp, MPoly) {
        &self.terms[0]
    }

    fn sort(&mut self, ctx: &EngCtx) {
        self.terms.sort_by(|a, b| ctx.order.cmp(&b.0, &a.0));
    }

    pub fn from_flat(ctx: &EngCtx, flat: &MPoly) -> GPoly {
        let ngeo = ctx.flat.ngeo;
        let ncoef = ctx.ncoef();
        let mut map: std::collections::HashMap<Exp, MPoly> = Default::default();
        for (e, c) in &flat.terms {
            let mut ge = Exp::from_elem(0, ngeo);
            ge[..ngeo].copy_from_slice(&e[..ngeo]);
            let mut ce = Exp::from_elem(0, ncoef);
            for i in 0..ncoef {
                ce[i] = e[ngeo + i];
            }
            let entry = map.entry(ge).or_insert_with(|| MPoly::zero(ncoef));
            entry.terms.push((ce, c.clone()));
        }
        let mut terms: Vec<(Exp, MPoly)> = map
            .into_iter()
            .map(|(e, c)| (e, ctx.alpha_reduce(c.normalize())))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        terms.sort_by(|a, b| ctx.order.cmp(&b.0, &a.0));
        let sugar = terms
            .iter()
            .map(|(e, _)| e.iter().map(|&x| x as u32).sum())
            .max()
            .unwrap_or(0);
        GPoly { terms, sugar }
    }

    pub fn from_poly(ctx: &EngCtx, p: &Poly) -> GPoly {
        Self::from_flat(ctx, &p.to_flat())
    }

    pub fn to_poly(&self, ctx: &EngCtx) -> Poly {
        let ngeo = ctx.flat.ngeo;
        let ncoef = ctx.ncoef();
        let total = ngeo + ncoef;
        let mut flat = MPoly::zero(total);
        for (ge, c) in &self.terms {
            for (ce, q) in &c.terms {
                let mut e = Exp::from_elem(0, total);
                e[..ngeo].copy_from_slice(&ge[..ngeo]);
                for i in 0..ncoef {
                    e[ngeo + i] = ce[i];
                }
                flat.terms.push((e, q.clone()));
            }
        }
        Poly::from_flat(&ctx.ring, &flat.normalize())
    }

    /// Remove the content of the coefficient polynomials (α treated as a
    /// free variable — conservative but sound).
    pub fn remove_content(&mut self) {
        if self.terms.is_empty() {
            return;
        }
        let mut g = MPoly::zero(self.terms[0].1.nvars);
        for (_, c) in &self.terms {
            g = gcd::gcd(&g, c);
            if g.is_one() {
                break;
            }
        }
        if !g.is_one() {
            for (_, c) in self.terms.iter_mut() {
                *c = c.div_exact(&g).unwrap();
            }
        }
        // canonical sign: leading coefficient's canonical form positive
        let (u, _) = self.terms[0].1.rat_content();
        if u < num_traits::Zero::zero() {
            for (_, c) in self.terms.iter_mut() {
                *c = c.neg();
            }
        }
    }

    fn add_scaled(
        &self,
        ctx: &EngCtx,
        self_scale: &MPoly,
        other: &GPoly,
        other_scale: &MPoly,
        other_shift: &Exp,
    ) -> GPoly {
        // self*self_scale - other*other_scale*x^shift, merged by order
        let mut out: Vec<(Exp, MPoly)> = vec![];
        let mut i = 0;
        let mut j = 0;
        while i < self.terms.len() || j < other.terms.len() {
            let pick_self = if i >= self.terms.len() {
                false
            } else if j >= other.terms.len() {
                true
            } else {
                let mut oe = other.terms[j].0.clone();
                for (k, &x) in other_shift.iter().enumerate() {
                    oe[k] += x;
                }
                match ctx.order.cmp(&self.terms[i].0, &oe) {
                    Ordering::Greater => true,
                    Ordering::Less => false,
                    Ordering::Equal => {
                        let c = ctx
                            .coef_mul(&self.terms[i].1, self_scale)
                            .sub(&ctx.coef_mul(&other.terms[j].1, other_scale));
                        if !c.is_zero() {
                            out.push((self.terms[i].0.clone(), c));
                        }
                        i += 1;
                        j += 1;
                        continue;
                    }
                }
            };
            if pick_self {
                let c = ctx.coef_mul(&self.terms[i].1, self_scale);
                if !c.is_zero() {
                    out.push((self.terms[i].0.clone(), c));
                }
                i += 1;
            } else {
                let mut oe = other.terms[j].0.clone();
                for (k, &x) in other_shift.iter().enumerate() {
                    oe[k] += x;
                }
                let c = ctx.coef_mul(&other.terms[j].1, other_scale).neg();
                if !c.is_zero() {
                    out.push((oe, c));
                }
                j += 1;
            }
        }
        let sugar = self.sugar.max(
            other.sugar + other_shift.iter().map(|&x| x as u32).sum::<u32>(),
        );
        GPoly { terms: out, sugar }
    }
}

fn divides(a: &Exp, b: &Exp) -> bool {
    a.iter().zip(b.iter()).all(|(&x, &y)| x <= y)
}

fn exp_lcm(a: &Exp, b: &Exp) -> Exp {
    a.iter().zip(b.iter()).map(|(&x, &y)| x.max(y)).collect()
}

fn exp_sub(a: &Exp, b: &Exp) -> Exp {
    a.iter().zip(b.iter()).map(|(&x, &y)| x - y).collect()
}

/// Shared step budget.
#[derive(Clone, Debug)]
pub struct Budget {
    pub remaining: u64,
}

impl Budget {
    pub fn new(steps: u64) -> Budget {
        Budget { remaining: steps }
    }

    pub fn take(&mut self, n: u64, phase: &str) -> Result<()> {
        if self.remaining < n {
            return Err(Error::BudgetExceeded {
                phase: phase.to_string(),
            });
        }
        self.remaining -= n;
        Ok(())
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(50_000_000)
    }
}

/// Full reduction of `p` by the list `basis`. Returns the pseudo normal form
/// (defined up to a coefficient-ring unit). When `track_multiplier` is set,
/// content removal is suppressed and the accumulated multiplier m with
/// m·p ≡ nf (mod basis) is returned.
pub fn reduce_full(
    ctx: &EngCtx,
    p: &GPoly,
    basis: &[GPoly],
    budget: &mut Budget,
    track_multiplier: bool,
) -> Result<(GPoly, MPoly)> {
    let ncoef = ctx.ncoef();
    let mut mult = MPoly::one(ncoef);
    let mut done: Vec<(Exp, MPoly)> = vec![];
    let mut cur = p.clone();
    'outer: loop {
        if cur.is_zero() {
            break;
        }
        budget.take(1, "reduction")?;
        let (le, lc) = cur.lt().clone();
        for b in basis {
            let (be, bc) = b.lt();
            if divides(be, &le) {
                let shift = exp_sub(&le, be);
                let g = if track_multiplier {
                    MPoly::one(ncoef)
                } else {
                    gcd::gcd(&lc, bc)
                };
                let self_scale = bc.div_exact(&g).unwrap_or_else(|| bc.clone());
                let other_scale = lc.div_exact(&g).unwrap_or_else(|| lc.clone());
                if track_multiplier {
                    mult = ctx.coef_mul(&mult, &self_scale);
                }
                // the whole pseudo-remainder is scaled, including the
                // irreducible head terms already moved out
                if !self_scale.is_one() {
                    for (_, c) in done.iter_mut() {
                        *c = ctx.coef_mul(c, &self_scale);
                    }
                }
                cur = cur.add_scaled(ctx, &self_scale, b, &other_scale, &shift);
                continue 'outer;
            }
        }
        // head is irreducible; move it out
        done.push((le, lc));
        cur.terms.remove(0);
    }
    let mut out = GPoly {
        terms: done,
        sugar: p.sugar,
    };
    out.sort(ctx);
    if !track_multiplier {
        out.remove_content();
    }
    Ok((out, mult))
}

#[derive(Clone, PartialEq, Eq)]
struct PairKey {
    sugar: u32,
    deg: u32,
    i: usize,
    j: usize,
}

impl Ord for PairKey {
    fn cmp(&self, other: &Self) -> Ordering {
        // BinaryHeap is a max-heap; invert for min-first
        other
            .sugar
            .cmp(&self.sugar)
            .then(other.deg.cmp(&self.deg))
            .then(other.i.cmp(&self.i))
            .then(other.j.cmp(&self.j))
    }
}
impl PartialOrd for PairKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A computed Gröbner basis with its context.
pub struct GroebnerBasis {
    pub ctx: EngCtx,
    pub gens: Vec<GPoly>,
}

impl GroebnerBasis {
    /// Normal form of a public polynomial (up to a unit).
    pub fn nf(&self, p: &Poly, budget: &mut Budget) -> Result<Poly> {
        let g = GPoly::from_poly(&self.ctx, p);
        let (r, _) = reduce_full(&self.ctx, &g, &self.gens, budget, false)?;
        Ok(r.to_poly(&self.ctx))
    }

    pub fn contains(&self, p: &Poly, budget: &mut Budget) -> Result<bool> {
        Ok(self.nf(p, budget)?.is_zero())
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.gens
            .iter()
            .any(|g| g.terms.len() >= 1 && g.lt().0.iter().all(|&x| x == 0))
    }

    /// Leading exponents (geometric part).
    pub fn lead_exps(&self) -> Vec<Exp> {
        self.gens.iter().map(|g| g.lt().0.clone()).collect()
    }

    /// Public generators with unit leading coefficients.
    pub fn to_polys(&self) -> Vec<Poly> {
        self.gens
            .iter()
            .map(|g| {
                let p = g.to_poly(&self.ctx);
                p.monic(&self.ctx.order)
            })
            .collect()
    }
}

/// Buchberger with the coprime and chain criteria and sugar selection.
pub fn groebner(
    ideal: &Ideal,
    order: &PolyOrder,
    budget: &mut Budget,
) -> Result<GroebnerBasis> {
    let ctx = EngCtx::new(&ideal.ring, order);
    let mut basis: Vec<GPoly> = vec![];
    for g in &ideal.gens {
        let mut gp = GPoly::from_poly(&ctx, g);
        if gp.is_zero() {
            continue;
        }
        gp.remove_content();
        basis.push(gp);
    }
    // deterministic start order
    basis.sort_by(|a, b| ctx.order.cmp(&a.lt().0, &b.lt().0));

    let mut pairs: BinaryHeap<PairKey> = BinaryHeap::new();
    let mut pending: std::collections::HashSet<(usize, usize)> = Default::default();
    let npairs_of = |basis: &[GPoly], i: usize, j: usize| -> PairKey {
        let l = exp_lcm(&basis[i].lt().0, &basis[j].lt().0);
        let deg: u32 = l.iter().map(|&x| x as u32).sum();
        let sugar = basis[i]
            .sugar
            .max(basis[j].sugar)
            .max(deg);
        PairKey {
            sugar,
            deg,
            i,
            j,
        }
    };
    for i in 0..basis.len() {
        for j in 0..i {
            pairs.push(npairs_of(&basis, j, i));
            pending.insert((j, i));
        }
    }

    while let Some(PairKey { i, j, .. }) = pairs.pop() {
        budget.take(1, "buchberger")?;
        pending.remove(&(i, j));
        let (ei, ci) = basis[i].lt().clone();
        let (ej, cj) = basis[j].lt().clone();
        let l = exp_lcm(&ei, &ej);
        // coprime criterion
        if ei.iter().zip(ej.iter()).all(|(&a, &b)| a == 0 || b == 0) {
            continue;
        }
        // chain criterion: some k with LT(k) | lcm(i,j) whose pairs with i
        // and j have both already been handled
        let mut skip = false;
        for (k, b) in basis.iter().enumerate() {
            if k == i || k == j {
                continue;
            }
            if divides(&b.lt().0, &l) {
                let pik = (i.min(k), i.max(k));
                let pjk = (j.min(k), j.max(k));
                if !pending.contains(&pik) && !pending.contains(&pjk) {
                    skip = true;
                    break;
                }
            }
        }
        if skip {
            continue;
        }
        let g = gcd::gcd(&ci, &cj);
        let mi = cj.div_exact(&g).unwrap_or_else(|| cj.clone());
        let mj = ci.div_exact(&g).unwrap_or_else(|| ci.clone());
        let si = exp_sub(&l, &ei);
        let sj = exp_sub(&l, &ej);
        // s = mi * x^si * basis[i] − mj * x^sj * basis[j]
        let shifted_i = GPoly {
            terms: basis[i]
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut ne = e.clone();
                    for (k, &x) in si.iter().enumerate() {
                        ne[k] += x;
                    }
                    (ne, c.clone())
                })
                .collect(),
            sugar: basis[i].sugar + si.iter().map(|&x| x as u32).sum::<u32>(),
        };
        let spoly = shifted_i.add_scaled(&ctx, &mi, &basis[j], &mj, &sj);
        if spoly.is_zero() {
            continue;
        }
        let (mut r, _) = reduce_full(&ctx, &spoly, &basis, budget, false)?;
        if r.is_zero() {
            continue;
        }
        r.remove_content();
        basis.push(r);
        let n = basis.len() - 1;
        for k in 0..n {
            pairs.push(npairs_of(&basis, k, n));
            pending.insert((k, n));
        }
    }

    // minimalize
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            if divides(&basis[j].lt().0, &basis[i].lt().0)
                && (basis[j].lt().0 != basis[i].lt().0 || j < i)
            {
                keep[i] = false;
                break;
            }
        }
    }
    let minimal: Vec<GPoly> = basis
        .into_iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(g, _)| g)
        .collect();
    // autoreduce
    let mut reduced: Vec<GPoly> = vec![];
    for i in 0..minimal.len() {
        let others: Vec<GPoly> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let (mut r, _) = reduce_full(&ctx, &minimal[i], &others, budget, false)?;
        if !r.is_zero() {
            r.remove_content();
            reduced.push(r);
        }
    }
    reduced.sort_by(|a, b| ctx.order.cmp(&a.lt().0, &b.lt().0));
    Ok(GroebnerBasis { ctx, gens: reduced })
}

// ---------------------------------------------------------------------------
// derived ideal operations
// ---------------------------------------------------------------------------

/// Append fresh variables to a ring (same tower), as a new front block.
fn extend_ring(ring: &Ring, extra: &[&str]) -> Ring {
    let mut blocks: Vec<Vec<&str>> = vec![extra.to_vec()];
    for b in &ring.blocks {
        blocks.push(b.iter().map(|s| s.as_str()).collect());
    }
    PolyRing::new(&ring.tower, blocks)
}

/// Move a polynomial into a ring that has extra leading variables.
fn inject(p: &Poly, big: &Ring, offset: usize) -> Poly {
    let terms: Vec<(Exp, Scalar)> = p
        .terms
        .iter()
        .map(|(e, c)| {
            let mut ne = Exp::from_elem(0, big.nvars());
            for (i, &x) in e.iter().enumerate() {
                ne[offset + i] = x;
            }
            (ne, c.clone())
        })
        .collect();
    Poly::from_terms(big, terms)
}

/// Drop leading variables (they must not occur).
fn project(p: &Poly, small: &Ring, offset: usize) -> Poly {
    let terms: Vec<(Exp, Scalar)> = p
        .terms
        .iter()
        .map(|(e, c)| {
            debug_assert!(e[..offset].iter().all(|&x| x == 0));
            let mut ne = Exp::from_elem(0, small.nvars());
            for i in 0..small.nvars() {
                ne[i] = e[offset + i];
            }
            (ne, c.clone())
        })
        .collect();
    Poly::from_terms(small, terms)
}

/// Eliminate the given flat variables: returns generators of I ∩ K[rest]
/// (expressed in the same ring; eliminated variables simply do not occur).
pub fn eliminate(ideal: &Ideal, front: &[usize], budget: &mut Budget) -> Result<Vec<Poly>> {
    let gb = groebner(ideal, &PolyOrder::Elim(front.to_vec()), budget)?;
    let out: Vec<Poly> = gb
        .to_polys()
        .into_iter()
        .filter(|g| {
            g.terms
                .iter()
                .all(|(e, _)| front.iter().all(|&v| e[v] == 0))
        })
        .collect();
    Ok(out)
}

/// Saturation I : f^∞ via the Rabinowitsch trick. For block-homogeneous
/// inputs the generators are re-split into homogeneous components.
pub fn saturate(ideal: &Ideal, f: &Poly, budget: &mut Budget) -> Result<Ideal> {
    if ideal.gens.is_empty() {
        return Ok(ideal.clone());
    }
    if f.is_zero() {
        return Ok(ideal.clone());
    }
    if f.total_degree() == 0 {
        return Ok(ideal.clone()); // unit
    }
    let homog = ideal.is_block_homogeneous() && f.is_block_homogeneous();
    let big = extend_ring(&ideal.ring, &["_t"]);
    let mut gens: Vec<Poly> = ideal.gens.iter().map(|g| inject(g, &big, 1)).collect();
    let t = Poly::var(&big, 0);
    let one = Poly::one(&big);
    gens.push(one.sub(&t.mul(&inject(f, &big, 1))));
    let elim = eliminate(&Ideal::new(&big, gens), &[0], budget)?;
    let mut out: Vec<Poly> = elim
        .into_iter()
        .map(|g| project(&g, &ideal.ring, 1))
        .collect();
    if homog {
        out = out
            .into_iter()
            .flat_map(|g| g.homogeneous_components())
            .collect();
    }
    Ok(Ideal::new(&ideal.ring, out))
}

/// Ideal intersection via the t-trick.
pub fn intersect(a: &Ideal, b: &Ideal, budget: &mut Budget) -> Result<Ideal> {
    if a.gens.is_empty() {
        return Ok(a.clone());
    }
    if b.gens.is_empty() {
        return Ok(b.clone());
    }
    let homog = a.is_block_homogeneous() && b.is_block_homogeneous();
    let big = extend_ring(&a.ring, &["_t"]);
    let t = Poly::var(&big, 0);
    let one_minus_t = Poly::one(&big).sub(&t);
    let mut gens: Vec<Poly> = vec![];
    for g in &a.gens {
        gens.push(inject(g, &big, 1).mul(&t));
    }
    for g in &b.gens {
        gens.push(inject(g, &big, 1).mul(&one_minus_t));
    }
    let elim = eliminate(&Ideal::new(&big, gens), &[0], budget)?;
    let mut out: Vec<Poly> = elim
        .into_iter()
        .map(|g| project(&g, &a.ring, 1))
        .collect();
    if homog {
        out = out
            .into_iter()
            .flat_map(|g| g.homogeneous_components())
            .collect();
    }
    Ok(Ideal::new(&a.ring, out))
}

/// Exact division g / f in the polynomial ring over the tower field;
/// None if f does not divide g.
pub fn poly_div_exact(g: &Poly, f: &Poly) -> Option<Poly> {
    if g.is_zero() {
        return Some(g.clone());
    }
    if f.is_zero() {
        return None;
    }
    let ring = &g.ring;
    let order = MonOrder::grevlex((0..ring.nvars()).collect());
    let mut rem = g.clone();
    let mut q = Poly::zero(ring);
    let (fe, fc) = {
        let (e, c) = f.leading(&order).unwrap();
        (e.clone(), c.clone())
    };
    let fcinv = fc.inv().ok()?;
    while !rem.is_zero() {
        let (re, rc) = {
            let (e, c) = rem.leading(&order).unwrap();
            (e.clone(), c.clone())
        };
        if !fe.iter().zip(re.iter()).all(|(&a, &b)| a <= b) {
            return None;
        }
        let shift = exp_sub(&re, &fe);
        let coef = rc.mul(&fcinv);
        let term = Poly::monomial(ring, &shift, coef);
        q = q.add(&term);
        rem = rem.sub(&term.mul(f));
    }
    Some(q)
}

/// Ideal quotient I : f.
pub fn quotient(ideal: &Ideal, f: &Poly, budget: &mut Budget) -> Result<Ideal> {
    let inter = intersect(
        ideal,
        &Ideal::new(&ideal.ring, vec![f.clone()]),
        budget,
    )?;
    let gens: Vec<Poly> = inter
        .gens
        .iter()
        .map(|g| poly_div_exact(g, f).expect("quotient division"))
        .collect();
    Ok(Ideal::new(&ideal.ring, gens))
}

/// Do the two ideals generate the same ideal?
pub fn ideal_equal(a: &Ideal, b: &Ideal, budget: &mut Budget) -> Result<bool> {
    let ga = groebner(a, &PolyOrder::GrevLex, budget)?;
    for g in &b.gens {
        if !ga.contains(g, budget)? {
            return Ok(false);
        }
    }
    let gb = groebner(b, &PolyOrder::GrevLex, budget)?;
    for g in &a.gens {
        if !gb.contains(g, budget)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_poly;
    use crate::scalar::FieldTower;

    fn ring_xyz() -> Ring {
        let t = FieldTower::rationals();
        PolyRing::new(&t, vec![vec!["x", "y", "z"]])
    }

    #[test]
    fn gb_trivial() {
        let r = ring_xyz();
        let i = Ideal::new(
            &r,
            vec![parse_poly(&r, "x").unwrap(), parse_poly(&r, "y").unwrap()],
        );
        let gb = groebner(&i, &PolyOrder::Lex, &mut Budget::default()).unwrap();
        let polys = gb.to_polys();
        assert_eq!(polys.len(), 2);
    }

    #[test]
    fn gb_lex_example() {
        // I = <x^2 - y, x^3 - z>, lex x>y>z: basis contains y^3 - z^2
        let r = ring_xyz();
        let i = Ideal::new(
            &r,
            vec![
                parse_poly(&r, "x^2 - y").unwrap(),
                parse_poly(&r, "x^3 - z").unwrap(),
            ],
        );
        let gb = groebner(&i, &PolyOrder::Lex, &mut Budget::default()).unwrap();
        let target = parse_poly(&r, "y^3 - z^2").unwrap();
        let polys = gb.to_polys();
        assert!(
            polys.iter().any(|g| g == &target),
            "basis: {:?}",
            polys
        );
    }

    #[test]
    fn gb_plucker_single() {
        let t = FieldTower::rationals();
        let r = PolyRing::new(&t, vec![vec!["b1", "b2", "b3", "b4", "b5", "b6"]]);
        let q = parse_poly(&r, "b1*b6 - b2*b5 + b3*b4").unwrap();
        let gb = groebner(
            &Ideal::new(&r, vec![q.clone()]),
            &PolyOrder::GrevLex,
            &mut Budget::default(),
        )
        .unwrap();
        assert_eq!(gb.to_polys(), vec![q]);
    }

    #[test]
    fn input_gens_reduce_to_zero() {
        let r = ring_xyz();
        let gens = vec![
            parse_poly(&r, "x^2*y - z^3 + x").unwrap(),
            parse_poly(&r, "x*z - y^2 + 2").unwrap(),
            parse_poly(&r, "y*z - x - 5").unwrap(),
        ];
        let i = Ideal::new(&r, gens.clone());
        let gb = groebner(&i, &PolyOrder::GrevLex, &mut Budget::default()).unwrap();
        let mut budget = Budget::default();
        for g in &gens {
            assert!(gb.contains(g, &mut budget).unwrap());
        }
        // every S-polynomial of the output reduces to zero: spot-check via a
        // random element of the ideal
        let w = gens[0].mul(&gens[1]).add(&gens[2]);
        assert!(gb.contains(&w, &mut budget).unwrap());
    }

    #[test]
    fn saturation_and_elimination() {
        let r = ring_xyz();
        // saturate(<x^2 y>, x) = <y>
        let i = Ideal::new(&r, vec![parse_poly(&r, "x^2*y").unwrap()]);
        let s = saturate(&i, &parse_poly(&r, "x").unwrap(), &mut Budget::default()).unwrap();
        let gb = groebner(&s, &PolyOrder::GrevLex, &mut Budget::default()).unwrap();
        assert_eq!(gb.to_polys(), vec![parse_poly(&r, "y").unwrap()]);
        // elim(<x - t^2, y - t^3>, {t}) = <y^2 - x^3>  (t=z role swap)
        let t = FieldTower::rationals();
        let r2 = PolyRing::new(&t, vec![vec!["t", "x", "y"]]);
        let i2 = Ideal::new(
            &r2,
            vec![
                parse_poly(&r2, "x - t^2").unwrap(),
                parse_poly(&r2, "y - t^3").unwrap(),
            ],
        );
        let e = eliminate(&i2, &[0], &mut Budget::default()).unwrap();
        assert_eq!(e.len(), 1);
        let got = &e[0];
        let want = parse_poly(&r2, "y^2 - x^3").unwrap();
        let ord = MonOrder::grevlex((0..3).collect());
        assert_eq!(got.monic(&ord), want.monic(&ord));
    }

    #[test]
    fn saturate_by_unit_and_self() {
        let r = ring_xyz();
        let i = Ideal::new(&r, vec![parse_poly(&r, "x*y - z^2").unwrap()]);
        let s = saturate(&i, &Poly::one(&r), &mut Budget::default()).unwrap();
        assert!(ideal_equal(&i, &s, &mut Budget::default()).unwrap());
    }

    #[test]
    fn quotient_example() {
        // <x^2, x y> : x = <x, y>
        let r = ring_xyz();
        let i = Ideal::new(
            &r,
            vec![
                parse_poly(&r, "x^2").unwrap(),
                parse_poly(&r, "x*y").unwrap(),
            ],
        );
        let q = quotient(&i, &parse_poly(&r, "x").unwrap(), &mut Budget::default()).unwrap();
        let expect = Ideal::new(
            &r,
            vec![parse_poly(&r, "x").unwrap(), parse_poly(&r, "y").unwrap()],
        );
        assert!(ideal_equal(&q, &expect, &mut Budget::default()).unwrap());
    }

    #[test]
    fn gb_with_parameters() {
        // over Q(f): <x + f y, f x - y> should be <x, y> (f generic)
        let t = FieldTower::with_params(&["f"]);
        let r = PolyRing::new(&t, vec![vec!["x", "y"]]);
        let i = Ideal::new(
            &r,
            vec![
                parse_poly(&r, "x + f*y").unwrap(),
                parse_poly(&r, "f*x - y").unwrap(),
            ],
        );
        let gb = groebner(&i, &PolyOrder::GrevLex, &mut Budget::default()).unwrap();
        let polys = gb.to_polys();
        assert_eq!(polys.len(), 2);
        assert_eq!(polys[0], parse_poly(&r, "y").unwrap());
        assert_eq!(polys[1], parse_poly(&r, "x").unwrap());
    }

    #[test]
    fn budget_is_honored() {
        let r = ring_xyz();
        let i = Ideal::new(
            &r,
            vec![
                parse_poly(&r, "x^4*y - z^3 + x*y*z").unwrap(),
                parse_poly(&r, "x*z^3 - y^4 + 2*x").unwrap(),
                parse_poly(&r, "y^2*z^2 - x^3 - 5*y").unwrap(),
            ],
        );
        let err = groebner(&i, &PolyOrder::Lex, &mut Budget::new(3));
        assert!(matches!(err, Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn shuffled_generators_same_basis() {
        let r = ring_xyz();
        let gens = vec![
            parse_poly(&r, "x^2 + y*z").unwrap(),
            parse_poly(&r, "y^2 - x*z").unwrap(),
            parse_poly(&r, "x*y + z^2").unwrap(),
        ];
        let gb1 = groebner(
            &Ideal::new(&r, gens.clone()),
            &PolyOrder::GrevLex,
            &mut Budget::default(),
        )
        .unwrap()
        .to_polys();
        let mut shuffled = gens.clone();
        shuffled.reverse();
        let gb2 = groebner(
            &Ideal::new(&r, shuffled),
            &PolyOrder::GrevLex,
            &mut Budget::default(),
        )
        .unwrap()
        .to_polys();
        assert_eq!(gb1, gb2);
    }
}
