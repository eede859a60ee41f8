//! Primary decomposition and radicals (Gianni–Trager–Zacharias).
//!
//! Hypersurfaces go through factorization directly. General ideals are
//! split by factoring generators first, then reduced to dimension zero by
//! moving a maximal independent set of variables into the coefficient
//! field, decomposed there by minimal-polynomial splitting, contracted back
//! by saturation, with a remainder branch `I + h^m` handled recursively.

use crate::error::{Error, Result};
use crate::factor_tower::{factor_poly, squarefree_decomposition_tower};
use crate::groebner::{
    groebner, ideal_equal, intersect, saturate, Budget, GroebnerBasis,
};
use crate::hilbert::{max_independent_set, quotient_staircase};
use crate::linalg::RowSpace;
use crate::mpoly::Exp;
use crate::polyring::{Ideal, Poly, PolyOrder, PolyRing, Ring};
use crate::rng::Rng;
use crate::scalar::{FieldTower, Scalar, Tower};
use std::sync::Arc;

#[derive(Clone)]
pub struct Component {
    pub primary: Ideal,
    pub prime: Ideal,
}

impl std::fmt::Debug for Component {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Component{{ primary: {:?}, prime: {:?} }}", self.primary, self.prime)
    }
}

/// Primary decomposition of a proper ideal. Deterministic for a fixed seed.
pub fn primary_decomposition(
    ideal: &Ideal,
    seed: u64,
    budget: &mut Budget,
) -> Result<Vec<Component>> {
    let gb = groebner(ideal, &PolyOrder::GrevLex, budget)?;
    if gb.is_unit_ideal() {
        return Err(Error::Invalid("primary decomposition of the unit ideal".into()));
    }
    let basis = gb.to_polys();
    if basis.is_empty() {
        let zero = Ideal::new(&ideal.ring, vec![]);
        return Ok(vec![Component {
            primary: zero.clone(),
            prime: zero,
        }]);
    }
    let mut rng = Rng::new(seed ^ 0x6dec);
    let mut raw = decompose_rec(&Ideal::new(&ideal.ring, basis), &mut rng, budget, 0)?;
    raw = merge_same_prime(raw, budget)?;
    raw = drop_contained(raw, budget)?;
    raw = irredundant(raw, ideal, budget)?;
    if ideal.is_block_homogeneous() {
        raw = homogenize_components(raw, budget)?;
    }
    sort_components(&mut raw);
    Ok(raw)
}

/// Radical of a proper ideal.
pub fn radical(ideal: &Ideal, seed: u64, budget: &mut Budget) -> Result<Ideal> {
    let gb = groebner(ideal, &PolyOrder::GrevLex, budget)?;
    if gb.is_unit_ideal() {
        return Ok(Ideal::new(&ideal.ring, vec![Poly::one(&ideal.ring)]));
    }
    let basis = gb.to_polys();
    if basis.len() == 1 {
        // principal: squarefree part
        let sf = squarefree_decomposition_tower(&basis[0]);
        let mut prod = Poly::one(&ideal.ring);
        for (f, _) in sf {
            prod = prod.mul(&f);
        }
        return Ok(Ideal::new(&ideal.ring, vec![prod]));
    }
    let comps = primary_decomposition(ideal, seed, budget)?;
    let mut acc: Option<Ideal> = None;
    for c in &comps {
        acc = Some(match acc {
            None => c.prime.clone(),
            Some(a) => intersect(&a, &c.prime, budget)?,
        });
    }
    Ok(acc.unwrap_or_else(|| Ideal::new(&ideal.ring, vec![])))
}

fn sort_components(list: &mut [Component]) {
    list.sort_by_key(|c| {
        let gens: Vec<String> = c.primary.gens.iter().map(|g| format!("{}", g)).collect();
        (c.primary.gens.len(), gens.join(";"))
    });
}

fn decompose_rec(
    ideal: &Ideal,
    rng: &mut Rng,
    budget: &mut Budget,
    depth: usize,
) -> Result<Vec<Component>> {
    if depth > 24 {
        return Err(Error::BudgetExceeded {
            phase: "primary decomposition recursion".into(),
        });
    }
    let gb = groebner(ideal, &PolyOrder::GrevLex, budget)?;
    if gb.is_unit_ideal() {
        return Ok(vec![]);
    }
    let basis = gb.to_polys();
    if basis.is_empty() {
        let zero = Ideal::new(&ideal.ring, vec![]);
        return Ok(vec![Component {
            primary: zero.clone(),
            prime: zero,
        }]);
    }
    let cur = Ideal::new(&ideal.ring, basis.clone());

    // hypersurface: factor the generator
    if basis.len() == 1 {
        let (_, facs) = factor_poly(&basis[0]);
        return Ok(facs
            .into_iter()
            .map(|(f, m)| Component {
                primary: Ideal::new(&ideal.ring, vec![f.pow(m)]),
                prime: Ideal::new(&ideal.ring, vec![f]),
            })
            .collect());
    }

    // all generators linear: prime (a linear subspace)
    if basis.iter().all(|g| g.total_degree() == 1) {
        return Ok(vec![Component {
            primary: cur.clone(),
            prime: cur,
        }]);
    }

    // factor-split: find a generator with a nontrivial factorization
    for g in &basis {
        let (_, facs) = factor_poly(g);
        if facs.len() >= 2 || (facs.len() == 1 && facs[0].1 > 1 && facs[0].0.total_degree() < g.total_degree())
        {
            let f0 = facs[0].0.clone();
            if let Some(out) = split_by(&cur, &f0, rng, budget, depth)? {
                return Ok(out);
            }
            break;
        }
    }

    // GTZ core
    let lts: Vec<Exp> = gb.lead_exps();
    let nv = ideal.ring.nvars();
    let mut indep = max_independent_set(&lts, nv);
    if indep.is_empty() {
        let comps = zero_dim_decompose(&cur, rng, budget, depth)?;
        return Ok(comps);
    }

    // stabilize the independent set against the block-order basis and make
    // sure the localization is zero-dimensional
    let mut egb_opt = None;
    for _ in 0..=nv {
        let zvars: Vec<usize> = (0..nv).filter(|v| !indep.contains(v)).collect();
        let egb = groebner(&cur, &PolyOrder::Elim(zvars.clone()), budget)?;
        let zparts: Vec<Exp> = egb
            .lead_exps()
            .iter()
            .map(|e| {
                let mut z = Exp::from_elem(0, zvars.len());
                for (k, &v) in zvars.iter().enumerate() {
                    z[k] = e[v];
                }
                z
            })
            .collect();
        if quotient_staircase(&zparts, zvars.len()).is_some() {
            egb_opt = Some((egb, zvars));
            break;
        }
        let next = max_independent_set(&egb.lead_exps(), nv);
        if next == indep {
            break;
        }
        indep = next;
        if indep.is_empty() {
            return zero_dim_decompose(&cur, rng, budget, depth);
        }
    }
    let Some((egb, _zvars)) = egb_opt else {
        return Err(Error::BudgetExceeded {
            phase: "independent set stabilization".into(),
        });
    };
    let ebasis = egb.to_polys();

    // contraction multiplier from the K[Y]-leading coefficients
    let h = contraction_multiplier(&ebasis, &ideal.ring, &indep)?;

    // localize: move independent variables into the coefficient field
    let (lring, fwd) = localized_ring(&ideal.ring, &indep);
    let lgens: Vec<Poly> = ebasis.iter().map(|g| localize_poly(g, &lring, &fwd)).collect();
    let lideal = Ideal::new(&lring, lgens);
    let lcomps = zero_dim_decompose(&lideal, rng, budget, depth)?;

    // contract every component back
    let mut components = vec![];
    for c in lcomps {
        let q = contract_back(&c.primary, &cur, &fwd, &indep, budget)?;
        let p = contract_back(&c.prime, &cur, &fwd, &indep, budget)?;
        components.push(Component {
            primary: q,
            prime: p,
        });
    }

    // remainder branch
    let rest = split_remainder(&cur, &h, Some(&components), rng, budget, depth)?;
    components.extend(rest);
    Ok(components)
}

/// Contract a localized ideal back to the original ring: adjoin the original
/// generators, recompute the block-order basis and saturate by its own
/// multiplier.
fn contract_back(
    localized: &Ideal,
    orig: &Ideal,
    fwd: &[std::result::Result<usize, usize>],
    indep: &[usize],
    budget: &mut Budget,
) -> Result<Ideal> {
    let nv = orig.ring.nvars();
    let mut gens: Vec<Poly> = localized
        .gens
        .iter()
        .map(|g| delocalize_poly(g, &orig.ring, fwd))
        .collect();
    gens.extend(orig.gens.iter().cloned());
    let a = Ideal::new(&orig.ring, gens);
    let zvars: Vec<usize> = (0..nv).filter(|v| !indep.contains(v)).collect();
    let agb = groebner(&a, &PolyOrder::Elim(zvars), budget)?;
    let h = contraction_multiplier(&agb.to_polys(), &orig.ring, indep)?;
    saturate_by_factors(&a, &h, budget)
}

/// I = (I : f^∞) ∩ (I + f^m): decompose both branches. Returns None when
/// the split is vacuous (f avoids all components, or f^m ∈ I already).
fn split_by(
    ideal: &Ideal,
    f: &Poly,
    rng: &mut Rng,
    budget: &mut Budget,
    depth: usize,
) -> Result<Option<Vec<Component>>> {
    let sat = saturate(ideal, f, budget)?;
    if ideal_equal(&sat, ideal, budget)? {
        return Ok(None);
    }
    // minimal m with I = sat ∩ (I + f^m)
    let mut m = 1u32;
    loop {
        let mut jgens = ideal.gens.clone();
        jgens.push(f.pow(m));
        let j = Ideal::new(&ideal.ring, jgens);
        let inter = intersect(&sat, &j, budget)?;
        if ideal_equal(&inter, ideal, budget)? {
            if ideal_equal(&j, ideal, budget)? {
                return Ok(None);
            }
            let mut out = if sat.gens.iter().any(|g| g.total_degree() == 0) {
                vec![] // saturation is the unit ideal
            } else {
                decompose_rec(&sat, rng, budget, depth + 1)?
            };
            let jcomps = decompose_rec(&j, rng, budget, depth + 1)?;
            out.extend(jcomps);
            return Ok(Some(out));
        }
        m += 1;
        if m > 24 {
            return Err(Error::BudgetExceeded {
                phase: "saturation exponent search".into(),
            });
        }
    }
}

fn split_remainder(
    ideal: &Ideal,
    h: &Poly,
    isolated: Option<&[Component]>,
    rng: &mut Rng,
    budget: &mut Budget,
    depth: usize,
) -> Result<Vec<Component>> {
    if h.total_degree() == 0 {
        return Ok(vec![]);
    }
    // intersection of the isolated components equals I : h^∞
    let sat = match isolated {
        Some(comps) if !comps.is_empty() => {
            let mut acc = comps[0].primary.clone();
            for c in &comps[1..] {
                acc = intersect(&acc, &c.primary, budget)?;
            }
            acc
        }
        _ => saturate(ideal, h, budget)?,
    };
    let mut m = 1u32;
    loop {
        let mut jgens = ideal.gens.clone();
        jgens.push(h.pow(m));
        let j = Ideal::new(&ideal.ring, jgens);
        let inter = intersect(&sat, &j, budget)?;
        if ideal_equal(&inter, ideal, budget)? {
            // everything already captured?
            if ideal_equal(&sat, ideal, budget)? {
                return Ok(vec![]);
            }
            return decompose_rec(&j, rng, budget, depth + 1);
        }
        m += 1;
        if m > 24 {
            return Err(Error::BudgetExceeded {
                phase: "saturation exponent search".into(),
            });
        }
    }
}

/// Product of the distinct irreducible factors of the K[Y]-leading
/// coefficients of a block-order basis (Z-variables first).
fn contraction_multiplier(basis: &[Poly], ring: &Ring, indep: &[usize]) -> Result<Poly> {
    let nv = PolyRing::nvars(ring);
    let zvars: Vec<usize> = (0..nv).filter(|v| !indep.contains(v)).collect();
    let order = PolyOrder::Elim(zvars.clone()).to_mon_order(nv);
    let mut factors: Vec<Poly> = vec![];
    for g in basis {
        let Some((lt, _)) = g.leading(&order) else {
            continue;
        };
        let zpart: Vec<u16> = zvars.iter().map(|&v| lt[v]).collect();
        // leading coefficient in K[Y]: all terms sharing the maximal Z-part
        let terms: Vec<(Exp, Scalar)> = g
            .terms
            .iter()
            .filter(|(e, _)| zvars.iter().enumerate().all(|(k, &v)| e[v] == zpart[k]))
            .map(|(e, c)| {
                let mut ne = e.clone();
                for &v in &zvars {
                    ne[v] = 0;
                }
                (ne, c.clone())
            })
            .collect();
        let lc = Poly::from_terms(ring, terms);
        if lc.total_degree() == 0 {
            continue;
        }
        for (f, _) in factor_poly(&lc).1 {
            if f.total_degree() > 0 && !factors.contains(&f) {
                factors.push(f);
            }
        }
    }
    let mut h = Poly::one(ring);
    for f in factors {
        h = h.mul(&f);
    }
    Ok(h)
}

fn saturate_by_factors(ideal: &Ideal, h: &Poly, budget: &mut Budget) -> Result<Ideal> {
    if h.total_degree() == 0 {
        return groebner(ideal, &PolyOrder::GrevLex, budget).map(|g| Ideal::new(&ideal.ring, g.to_polys()));
    }
    let s = saturate(ideal, h, budget)?;
    let gb = groebner(&s, &PolyOrder::GrevLex, budget)?;
    Ok(Ideal::new(&ideal.ring, gb.to_polys()))
}

// ---------------------------------------------------------------------------
// localization
// ---------------------------------------------------------------------------

/// Ring with the independent variables moved into the parameter field.
/// Returns the localized ring and for each original variable its fate:
/// Ok(new geo index) or Err(new param index).
fn localized_ring(ring: &Ring, indep: &[usize]) -> (Ring, Vec<std::result::Result<usize, usize>>) {
    let names = ring.var_names();
    let tower = &ring.tower;
    let mut params: Vec<String> = tower.params.clone();
    let base_params = params.len();
    for &v in indep {
        params.push(names[v].to_string());
    }
    let new_tower: Tower = Arc::new(FieldTower {
        params,
        ext: tower.ext.as_ref().map(|e| {
            // minpoly coefficients lift: pad parameter polynomials
            let np_new = tower.nparams() + indep.len();
            let map: Vec<usize> = (0..tower.nparams()).collect();
            crate::scalar::Extension {
                minpoly_tail: e
                    .minpoly_tail
                    .iter()
                    .map(|r| crate::scalar::RatFun {
                        num: r.num.remap(np_new, &map),
                        den: r.den.remap(np_new, &map),
                    })
                    .collect(),
                name: e.name.clone(),
            }
        }),
    });
    let rest: Vec<&str> = (0..ring.nvars())
        .filter(|v| !indep.contains(v))
        .map(|v| names[v])
        .collect();
    let lring = PolyRing::new(&new_tower, vec![rest.clone()]);
    let mut fate = vec![];
    for v in 0..ring.nvars() {
        if let Some(k) = indep.iter().position(|&y| y == v) {
            fate.push(Err(base_params + k));
        } else {
            let k = (0..v).filter(|u| !indep.contains(u)).count();
            fate.push(Ok(k));
        }
    }
    (lring, fate)
}

fn localize_poly(p: &Poly, lring: &Ring, fate: &[std::result::Result<usize, usize>]) -> Poly {
    let np = lring.tower.nparams();
    let terms: Vec<(Exp, Scalar)> = p
        .terms
        .iter()
        .map(|(e, c)| {
            let mut ge = Exp::from_elem(0, lring.nvars());
            let mut pe = Exp::from_elem(0, np);
            for (v, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                match fate[v] {
                    Ok(g) => ge[g] += x,
                    Err(q) => pe[q] += x,
                }
            }
            let mono = crate::mpoly::MPoly::monomial(np, &pe, num_traits::One::one());
            let lifted = lift_scalar_params(c, &lring.tower);
            let coeff = lifted.mul(&Scalar::from_ratfun(
                &lring.tower,
                crate::scalar::RatFun::from_poly(mono),
            ));
            (ge, coeff)
        })
        .collect();
    Poly::from_terms(lring, terms)
}

fn lift_scalar_params(c: &Scalar, target: &Tower) -> Scalar {
    c.lift_to(target).expect("parameter lift")
}

/// Clear localized denominators and pull parameters back to variables.
fn delocalize_poly(p: &Poly, orig: &Ring, fate: &[std::result::Result<usize, usize>]) -> Poly {
    // the flat layout of p is [loc geo | base params + Y | alpha?]
    let flat = p.to_flat();
    let nl = p.ring.nvars();
    let nbase = orig.ring_params_len();
    let ny = p.ring.tower.nparams() - nbase;
    let has_alpha = p.ring.tower.ext.is_some();
    let nv = orig.nvars();
    let total_new = nv + nbase + if has_alpha { 1 } else { 0 };
    let mut map = vec![0usize; flat.nvars];
    // localized geo index -> original var
    let mut geo_targets = vec![];
    for (v, f) in fate.iter().enumerate() {
        if f.is_ok() {
            geo_targets.push(v);
        }
    }
    for i in 0..nl {
        map[i] = geo_targets[i];
    }
    for i in 0..nbase {
        map[nl + i] = nv + i;
    }
    // Y params -> original vars
    let mut y_targets = vec![];
    for (v, f) in fate.iter().enumerate() {
        if f.is_err() {
            y_targets.push(v);
        }
    }
    for i in 0..ny {
        map[nl + nbase + i] = y_targets[i];
    }
    if has_alpha {
        map[nl + nbase + ny] = nv + nbase;
    }
    let remapped = flat.remap(total_new, &map);
    Poly::from_flat(orig, &remapped)
}

trait RingParamsLen {
    fn ring_params_len(&self) -> usize;
    fn nvars(&self) -> usize;
}

impl RingParamsLen for Ring {
    fn ring_params_len(&self) -> usize {
        self.tower.nparams()
    }
    fn nvars(&self) -> usize {
        PolyRing::nvars(self)
    }
}

// ---------------------------------------------------------------------------
// zero-dimensional decomposition
// ---------------------------------------------------------------------------

fn zero_dim_decompose(
    ideal: &Ideal,
    rng: &mut Rng,
    budget: &mut Budget,
    depth: usize,
) -> Result<Vec<Component>> {
    if depth > 40 {
        return Err(Error::BudgetExceeded {
            phase: "zero-dimensional recursion".into(),
        });
    }
    let gb = groebner(ideal, &PolyOrder::GrevLex, budget)?;
    if gb.is_unit_ideal() {
        return Ok(vec![]);
    }
    let nv = ideal.ring.nvars();
    let lts = gb.lead_exps();
    let stair = quotient_staircase(&lts, nv).ok_or_else(|| {
        Error::Invalid("zero-dimensional decomposition on a positive-dimensional ideal".into())
    })?;
    let vdim = stair.len();
    let cur = Ideal::new(&ideal.ring, gb.to_polys());

    // candidate elements: variables first, then seeded random combinations
    let mut candidates: Vec<Poly> = (0..nv).map(|v| Poly::var(&ideal.ring, v)).collect();
    for _ in 0..4 {
        let mut u = Poly::zero(&ideal.ring);
        for v in 0..nv {
            let c = rng.int_in(3);
            if c != 0 {
                u = u.add(&Poly::var(&ideal.ring, v).scale(&Scalar::from_int(
                    &ideal.ring.tower,
                    c,
                )));
            }
        }
        if !u.is_zero() {
            candidates.push(u);
        }
    }

    let mut primitive: Option<(Poly, Vec<Scalar>)> = None;
    for u in &candidates {
        let m = minpoly_of(&gb, &stair, u, budget)?;
        let facs = factor_univar_scalar(&ideal.ring.tower, &m);
        if facs.len() >= 2 {
            // split: I = ∩ (I + q_i(u)^{e_i})
            let mut out = vec![];
            for (q, e) in facs {
                let qu = eval_univar(&q, u);
                let mut gens = cur.gens.clone();
                gens.push(qu.pow(e));
                out.extend(zero_dim_decompose(
                    &Ideal::new(&ideal.ring, gens),
                    rng,
                    budget,
                    depth + 1,
                )?);
            }
            return Ok(out);
        }
        if primitive.is_none() && (m.len() - 1) == vdim {
            primitive = Some((u.clone(), m.clone()));
        }
    }

    // all minimal polynomials are prime powers → compute the radical
    let mut rad_gens = cur.gens.clone();
    for v in 0..nv {
        let u = Poly::var(&ideal.ring, v);
        let m = minpoly_of(&gb, &stair, &u, budget)?;
        let facs = factor_univar_scalar(&ideal.ring.tower, &m);
        debug_assert!(facs.len() == 1);
        rad_gens.push(eval_univar(&facs[0].0, &u));
    }
    let rad = Ideal::new(&ideal.ring, rad_gens);
    let rgb = groebner(&rad, &PolyOrder::GrevLex, budget)?;
    let rstair = quotient_staircase(&rgb.lead_exps(), nv).ok_or_else(|| {
        Error::Invalid("radical not zero-dimensional".into())
    })?;
    let rvdim = rstair.len();

    // primality of the radical via a primitive element
    for u in &candidates {
        let m = minpoly_of(&rgb, &rstair, u, budget)?;
        let facs = factor_univar_scalar(&ideal.ring.tower, &m);
        if facs.len() >= 2 || facs[0].1 > 1 {
            // the radical splits; split I along it
            let mut out = vec![];
            for (q, _) in facs {
                let qu = eval_univar(&q, u);
                // lift exponent: use the multiplicity seen in I's minpoly
                let mi = minpoly_of(&gb, &stair, u, budget)?;
                let mfacs = factor_univar_scalar(&ideal.ring.tower, &mi);
                let e = mfacs
                    .iter()
                    .find(|(g, _)| g == &q)
                    .map(|(_, e)| *e)
                    .unwrap_or(1);
                let mut gens = cur.gens.clone();
                gens.push(qu.pow(e));
                out.extend(zero_dim_decompose(
                    &Ideal::new(&ideal.ring, gens),
                    rng,
                    budget,
                    depth + 1,
                )?);
            }
            return Ok(out);
        }
        if m.len() - 1 == rvdim {
            // primitive element with irreducible minimal polynomial: field
            return Ok(vec![Component {
                primary: cur,
                prime: Ideal::new(&ideal.ring, rgb.to_polys()),
            }]);
        }
    }
    // no primitive element found among candidates
    let _ = primitive;
    Err(Error::BudgetExceeded {
        phase: "primitive element search".into(),
    })
}

/// Minimal polynomial of u in K[x]/I, low..high coefficients, monic.
fn minpoly_of(
    gb: &GroebnerBasis,
    stair: &[Exp],
    u: &Poly,
    budget: &mut Budget,
) -> Result<Vec<Scalar>> {
    let ring = &gb.ctx.ring;
    let tower = &ring.tower;
    let index: std::collections::HashMap<&Exp, usize> =
        stair.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut rs = RowSpace::new(tower, stair.len());
    let mut powers: Vec<Poly> = vec![];
    let mut cur = Poly::one(ring);
    loop {
        budget.take(1, "minimal polynomial")?;
        let nf = true_nf(gb, &cur, budget)?;
        let mut vec = vec![Scalar::zero(tower); stair.len()];
        for (e, c) in &nf.terms {
            let idx = *index
                .get(e)
                .ok_or_else(|| Error::Invalid("normal form outside staircase".into()))?;
            vec[idx] = c.clone();
        }
        if !rs.insert(&vec) {
            // dependency: vec = Σ coords_k * (previous powers)
            let coords = rs.coords(&vec).unwrap();
            let k = powers.len();
            let mut m = vec![Scalar::zero(tower); k + 1];
            for (i, c) in coords.iter().enumerate() {
                m[i] = c.neg();
            }
            m[k] = Scalar::one(tower);
            return Ok(m);
        }
        powers.push(cur.clone());
        cur = cur.mul(u);
    }
}

/// True normal form over the field (pseudo normal form divided by its
/// multiplier).
fn true_nf(gb: &GroebnerBasis, p: &Poly, budget: &mut Budget) -> Result<Poly> {
    let g = crate::groebner::GPoly::from_poly(&gb.ctx, p);
    let (nf, mult) = crate::groebner::reduce_full(&gb.ctx, &g, &gb.gens, budget, true)?;
    let poly = nf.to_poly(&gb.ctx);
    // divide by the multiplier (a coefficient-space polynomial = a scalar)
    let mult_poly = crate::groebner::GPoly {
        terms: vec![(Exp::from_elem(0, gb.ctx.flat.ngeo), mult)],
        sugar: 0,
    }
    .to_poly(&gb.ctx);
    let ms = mult_poly.terms[0].1.clone();
    Ok(poly.scale(&ms.inv().expect("multiplier nonzero")))
}

/// Factor a monic univariate polynomial (coefficient list over the tower).
fn factor_univar_scalar(tower: &Tower, m: &[Scalar]) -> Vec<(Vec<Scalar>, u32)> {
    let zring = PolyRing::new(tower, vec![vec!["_z"]]);
    let mut p = Poly::zero(&zring);
    for (i, c) in m.iter().enumerate() {
        let mut e = Exp::from_elem(0, 1);
        e[0] = i as u16;
        p = p.add(&Poly::monomial(&zring, &e, c.clone()));
    }
    let (_, facs) = factor_poly(&p);
    facs.into_iter()
        .map(|(f, mult)| {
            let d = f.terms.iter().map(|(e, _)| e[0]).max().unwrap_or(0) as usize;
            let mut coeffs = vec![Scalar::zero(tower); d + 1];
            for (e, c) in &f.terms {
                coeffs[e[0] as usize] = c.clone();
            }
            (coeffs, mult)
        })
        .collect()
}

/// q(u) for a univariate coefficient list q.
fn eval_univar(q: &[Scalar], u: &Poly) -> Poly {
    let ring = &u.ring;
    let mut acc = Poly::zero(ring);
    for c in q.iter().rev() {
        acc = acc.mul(u).add(&Poly::constant(ring, c.clone()));
    }
    acc
}

// ---------------------------------------------------------------------------
// cleanup passes
// ---------------------------------------------------------------------------

fn merge_same_prime(list: Vec<Component>, budget: &mut Budget) -> Result<Vec<Component>> {
    let mut out: Vec<Component> = vec![];
    'next: for c in list {
        for o in out.iter_mut() {
            if ideal_equal(&c.prime, &o.prime, budget)? {
                if !ideal_equal(&c.primary, &o.primary, budget)? {
                    o.primary = intersect(&o.primary, &c.primary, budget)?;
                }
                continue 'next;
            }
        }
        out.push(c);
    }
    Ok(out)
}

fn drop_contained(list: Vec<Component>, budget: &mut Budget) -> Result<Vec<Component>> {
    // drop Q_i if some other Q_j ⊆ Q_i (then Q_i is superfluous)
    let mut keep = vec![true; list.len()];
    for i in 0..list.len() {
        if !keep[i] {
            continue;
        }
        for j in 0..list.len() {
            if i == j || !keep[j] {
                continue;
            }
            // Q_j ⊆ Q_i?
            let gbi = groebner(&list[i].primary, &PolyOrder::GrevLex, budget)?;
            let mut contained = true;
            for g in &list[j].primary.gens {
                if !gbi.contains(g, budget)? {
                    contained = false;
                    break;
                }
            }
            // contained means Q_j ⊇ ... careful: g ∈ GB_i means Q_j ⊆ Q_i is
            // wrong direction; we check gens of Q_j reduce mod Q_i, i.e.
            // Q_j ⊆ Q_i, so Q_i ∩ Q_j = Q_j and Q_i is NOT superfluous —
            // the superfluous one is the larger ideal Q_i only if Q_j ⊆ Q_i.
            if contained {
                keep[i] = false;
                break;
            }
        }
    }
    Ok(list
        .into_iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(c, _)| c)
        .collect())
}

fn irredundant(
    list: Vec<Component>,
    ideal: &Ideal,
    budget: &mut Budget,
) -> Result<Vec<Component>> {
    if list.len() <= 1 {
        return Ok(list);
    }
    let n = list.len();
    // prefix/suffix intersections
    let mut prefix: Vec<Option<Ideal>> = vec![None; n + 1];
    let mut suffix: Vec<Option<Ideal>> = vec![None; n + 1];
    for i in 0..n {
        prefix[i + 1] = Some(match &prefix[i] {
            None => list[i].primary.clone(),
            Some(a) => intersect(a, &list[i].primary, budget)?,
        });
    }
    for i in (0..n).rev() {
        suffix[i] = Some(match &suffix[i + 1] {
            None => list[i].primary.clone(),
            Some(a) => intersect(a, &list[i].primary, budget)?,
        });
    }
    let mut keep = vec![];
    let mut dropped = false;
    for i in 0..n {
        let others = match (&prefix[i], &suffix[i + 1]) {
            (None, Some(s)) => s.clone(),
            (Some(p), None) => p.clone(),
            (Some(p), Some(s)) => intersect(p, s, budget)?,
            (None, None) => unreachable!(),
        };
        // component i is redundant if others ⊆ primary_i
        let gbi = groebner(&list[i].primary, &PolyOrder::GrevLex, budget)?;
        let mut redundant = true;
        for g in &others.gens {
            if !gbi.contains(g, budget)? {
                redundant = false;
                break;
            }
        }
        if redundant && !dropped {
            // re-verify the rest still intersects to I before dropping
            if ideal_equal(&others, ideal, budget)? {
                dropped = true;
                continue;
            }
        }
        keep.push(list[i].clone());
    }
    if dropped && keep.len() < n {
        return irredundant(keep, ideal, budget);
    }
    Ok(keep)
}

fn homogenize_components(list: Vec<Component>, budget: &mut Budget) -> Result<Vec<Component>> {
    let mut out = vec![];
    for c in list {
        out.push(Component {
            primary: homogenize_ideal(&c.primary, budget)?,
            prime: homogenize_ideal(&c.prime, budget)?,
        });
    }
    Ok(out)
}

/// If all graded pieces of all generators stay inside the ideal, replace the
/// generators by the pieces (the ideal was homogeneous all along; this just
/// exhibits it). Otherwise keep the ideal as computed.
fn homogenize_ideal(ideal: &Ideal, budget: &mut Budget) -> Result<Ideal> {
    if ideal.is_block_homogeneous() {
        return Ok(ideal.clone());
    }
    let pieces: Vec<Poly> = ideal
        .gens
        .iter()
        .flat_map(|g| g.homogeneous_components())
        .collect();
    let gb = groebner(ideal, &PolyOrder::GrevLex, budget)?;
    for p in &pieces {
        if !gb.contains(p, budget)? {
            return Ok(ideal.clone());
        }
    }
    let gb2 = groebner(&Ideal::new(&ideal.ring, pieces), &PolyOrder::GrevLex, budget)?;
    Ok(Ideal::new(&ideal.ring, gb2.to_polys()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_poly;
    use crate::scalar::FieldTower;

    fn ring3() -> Ring {
        let t = FieldTower::rationals();
        PolyRing::new(&t, vec![vec!["x", "y", "z"]])
    }

    #[test]
    fn principal_x2y() {
        // <x^2 y> in P^2: primaries <x^2>, <y>
        let r = ring3();
        let i = Ideal::new(&r, vec![parse_poly(&r, "x^2*y").unwrap()]);
        let comps = primary_decomposition(&i, 1, &mut Budget::default()).unwrap();
        assert_eq!(comps.len(), 2);
        let gens: Vec<String> = comps
            .iter()
            .map(|c| format!("{:?}", c.primary))
            .collect();
        assert!(gens.iter().any(|g| g.contains("x^2")));
        assert!(gens.iter().any(|g| g.contains("y")));
    }

    #[test]
    fn monomial_xy_xz() {
        // <xy, xz> = <x> ∩ <y, z>
        let r = ring3();
        let i = Ideal::new(
            &r,
            vec![
                parse_poly(&r, "x*y").unwrap(),
                parse_poly(&r, "x*z").unwrap(),
            ],
        );
        let comps = primary_decomposition(&i, 1, &mut Budget::default()).unwrap();
        assert_eq!(comps.len(), 2, "{:?}", comps);
        // both inclusions
        let mut budget = Budget::default();
        let inter = intersect(&comps[0].primary, &comps[1].primary, &mut budget).unwrap();
        assert!(ideal_equal(&inter, &i, &mut budget).unwrap());
    }

    #[test]
    fn embedded_component() {
        // <x^2, x y> = <x> ∩ <x^2, y> (embedded point at origin in A^2)
        let t = FieldTower::rationals();
        let r = PolyRing::new(&t, vec![vec!["x", "y"]]);
        let i = Ideal::new(
            &r,
            vec![
                parse_poly(&r, "x^2").unwrap(),
                parse_poly(&r, "x*y").unwrap(),
            ],
        );
        let comps = primary_decomposition(&i, 1, &mut Budget::default()).unwrap();
        assert_eq!(comps.len(), 2, "{:?}", comps);
        let mut budget = Budget::default();
        let inter = intersect(&comps[0].primary, &comps[1].primary, &mut budget).unwrap();
        assert!(ideal_equal(&inter, &i, &mut budget).unwrap());
        // one component is the line <x>, the other supported at the origin
        let primes: Vec<usize> = comps.iter().map(|c| c.prime.gens.len()).collect();
        assert!(primes.contains(&1) && primes.contains(&2));
    }

    #[test]
    fn radical_examples() {
        let r = ring3();
        // radical(<x^2>) = <x>
        let i = Ideal::new(&r, vec![parse_poly(&r, "x^2").unwrap()]);
        let rad = radical(&i, 1, &mut Budget::default()).unwrap();
        let mut budget = Budget::default();
        let expect = Ideal::new(&r, vec![parse_poly(&r, "x").unwrap()]);
        assert!(ideal_equal(&rad, &expect, &mut budget).unwrap());
        // radical(<x^2, xy>) = <x>
        let i2 = Ideal::new(
            &r,
            vec![
                parse_poly(&r, "x^2").unwrap(),
                parse_poly(&r, "x*y").unwrap(),
            ],
        );
        let rad2 = radical(&i2, 1, &mut Budget::default()).unwrap();
        assert!(ideal_equal(&rad2, &expect, &mut budget).unwrap());
        // idempotence
        let rad3 = radical(&rad2, 1, &mut Budget::default()).unwrap();
        assert!(ideal_equal(&rad3, &rad2, &mut budget).unwrap());
    }

    #[test]
    fn two_points_split() {
        // V(x^2 - z^2, y) in P^2: two reduced points
        let r = ring3();
        let i = Ideal::new(
            &r,
            vec![
                parse_poly(&r, "x^2 - z^2").unwrap(),
                parse_poly(&r, "y").unwrap(),
            ],
        );
        let comps = primary_decomposition(&i, 1, &mut Budget::default()).unwrap();
        assert_eq!(comps.len(), 2, "{:?}", comps);
        for c in &comps {
            let mut budget = Budget::default();
            assert!(ideal_equal(&c.primary, &c.prime, &mut budget).unwrap());
        }
    }

    #[test]
    fn twisted_cubic_is_prime() {
        let t = FieldTower::rationals();
        let r = PolyRing::new(&t, vec![vec!["x0", "x1", "x2", "x3"]]);
        let i = Ideal::new(
            &r,
            vec![
                parse_poly(&r, "x0*x2 - x1^2").unwrap(),
                parse_poly(&r, "x1*x3 - x2^2").unwrap(),
                parse_poly(&r, "x0*x3 - x1*x2").unwrap(),
            ],
        );
        let comps = primary_decomposition(&i, 1, &mut Budget::default()).unwrap();
        assert_eq!(comps.len(), 1, "{:?}", comps);
        let mut budget = Budget::default();
        assert!(ideal_equal(&comps[0].primary, &i, &mut budget).unwrap());
        assert!(ideal_equal(&comps[0].prime, &i, &mut budget).unwrap());
    }

    #[test]
    fn conjugate_points_stay_joined() {
        // V(x^2 - 2 z^2, y) over Q: a single prime (conjugate point pair)
        let r = ring3();
        let i = Ideal::new(
            &r,
            vec![
                parse_poly(&r, "x^2 - 2*z^2").unwrap(),
                parse_poly(&r, "y").unwrap(),
            ],
        );
        let comps = primary_decomposition(&i, 1, &mut Budget::default()).unwrap();
        assert_eq!(comps.len(), 1, "{:?}", comps);
    }

    #[test]
    fn parameter_field_decomposition() {
        // over Q(q): <x^2 - q^2 y^2> = <x - q y> ∩ <x + q y>
        let t = FieldTower::with_params(&["q"]);
        let r = PolyRing::new(&t, vec![vec!["x", "y"]]);
        let i = Ideal::new(&r, vec![parse_poly(&r, "x^2 - q^2*y^2").unwrap()]);
        let comps = primary_decomposition(&i, 1, &mut Budget::default()).unwrap();
        assert_eq!(comps.len(), 2, "{:?}", comps);
    }

    #[test]
    fn intersection_curve_with_multiplicity() {
        // <x^2, y> ∩ <y^3, x> has primaries exactly as given
        let t = FieldTower::rationals();
        let r = PolyRing::new(&t, vec![vec!["x", "y", "z"]]);
        let a = Ideal::new(
            &r,
            vec![
                parse_poly(&r, "x^2").unwrap(),
                parse_poly(&r, "y").unwrap(),
            ],
        );
        let b = Ideal::new(
            &r,
            vec![
                parse_poly(&r, "y^3").unwrap(),
                parse_poly(&r, "x").unwrap(),
            ],
        );
        let mut budget = Budget::default();
        let i = intersect(&a, &b, &mut budget).unwrap();
        // the radical is the maximal ideal <x,y>, so the intersection is
        // itself primary: minimal decomposition has a single component
        let comps = primary_decomposition(&i, 1, &mut Budget::default()).unwrap();
        assert_eq!(comps.len(), 1, "{:?}", comps);
        assert!(ideal_equal(&comps[0].primary, &i, &mut budget).unwrap());
        let p = Ideal::new(
            &r,
            vec![parse_poly(&r, "x").unwrap(), parse_poly(&r, "y").unwrap()],
        );
        assert!(ideal_equal(&comps[0].prime, &p, &mut budget).unwrap());
    }
}
