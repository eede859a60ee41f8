//! Factorization of multivariate polynomials over ℚ.
//!
//! Univariate: Zassenhaus — factor modulo a word-sized prime
//! (Cantor–Zassenhaus), Hensel-lift to a Landau–Mignotte height, recombine.
//! Multivariate: evaluate all but a main variable at a small point, factor
//! the univariate image, then Hensel-lift the minor variables jointly with
//! imposed leading coefficients; subset recombination covers unlucky points.

use crate::gcd::{self, int_content};
use crate::mpoly::{Exp, MPoly, QQ};
use crate::rng::Rng;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

// ---------------------------------------------------------------------------
// dense arithmetic over F_p, p < 2^62
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
struct Fp {
    p: u64,
}

impl Fp {
    fn add(&self, a: u64, b: u64) -> u64 {
        let s = a as u128 + b as u128;
        (s % self.p as u128) as u64
    }
    fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.p - b % self.p)
    }
    fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }
    fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }
    fn inv(&self, a: u64) -> u64 {
        self.pow(a, self.p - 2)
    }
}

type PV = Vec<u64>; // dense, low-to-high

fn pv_trim(v: &mut PV) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn pv_deg(v: &PV) -> isize {
    v.len() as isize - 1
}

fn pv_mul(fp: &Fp, a: &PV, b: &PV) -> PV {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = fp.add(out[i + j], fp.mul(x, y));
        }
    }
    pv_trim(&mut out);
    out
}

fn pv_rem(fp: &Fp, a: &PV, m: &PV) -> PV {
    let mut r = a.clone();
    pv_trim(&mut r);
    let lm = fp.inv(*m.last().unwrap());
    while r.len() >= m.len() && !r.is_empty() {
        let k = r.len() - m.len();
        let f = fp.mul(*r.last().unwrap(), lm);
        for i in 0..m.len() {
            let t = fp.mul(f, m[i]);
            r[k + i] = fp.sub(r[k + i], t);
        }
        pv_trim(&mut r);
    }
    r
}

fn pv_gcd(fp: &Fp, a: &PV, b: &PV) -> PV {
    let (mut a, mut b) = (a.clone(), b.clone());
    pv_trim(&mut a);
    pv_trim(&mut b);
    while !b.is_empty() {
        let r = pv_rem(fp, &a, &b);
        a = b;
        b = r;
    }
    // monic
    if let Some(&l) = a.last() {
        let li = fp.inv(l);
        for x in a.iter_mut() {
            *x = fp.mul(*x, li);
        }
    }
    a
}

fn pv_powmod(fp: &Fp, a: &PV, e: &BigInt, m: &PV) -> PV {
    let mut r = vec![1u64];
    let mut base = pv_rem(fp, a, m);
    let bits = e.bits();
    for i in (0..bits).rev() {
        r = pv_rem(fp, &pv_mul(fp, &r, &r), m);
        if e.bit(i) {
            r = pv_rem(fp, &pv_mul(fp, &r, &base), m);
        }
    }
    let _ = &mut base;
    r
}

fn pv_derivative(fp: &Fp, a: &PV) -> PV {
    let mut out: PV = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| fp.mul(c, (i as u64) % fp.p))
        .collect();
    pv_trim(&mut out);
    out
}

/// Distinct-degree then equal-degree splitting; input squarefree monic.
fn factor_fp_squarefree(fp: &Fp, f: &PV, rng: &mut Rng) -> Vec<PV> {
    let mut out = vec![];
    let mut rest = f.clone();
    let mut xqpow = vec![0u64, 1]; // x
    let mut d = 0usize;
    while pv_deg(&rest) > 0 {
        d += 1;
        if (pv_deg(&rest) as usize) < 2 * d {
            out.push(rest.clone());
            break;
        }
        // xqpow = x^(p^d) mod rest
        xqpow = pv_powmod(fp, &xqpow, &BigInt::from(fp.p), &rest);
        let mut diff = xqpow.clone();
        // diff = x^(p^d) - x
        if diff.len() < 2 {
            diff.resize(2, 0);
        }
        diff[1] = fp.sub(diff[1], 1);
        pv_trim(&mut diff);
        let g = pv_gcd(fp, &rest, &diff);
        if pv_deg(&g) > 0 {
            // split g into its degree-d irreducible factors
            equal_degree_split(fp, &g, d, rng, &mut out);
            // rest /= g
            rest = pv_divide_exact(fp, &rest, &g);
            xqpow = pv_rem(fp, &xqpow, &rest);
        }
    }
    out
}

fn pv_divide_exact(fp: &Fp, a: &PV, b: &PV) -> PV {
    let mut r = a.clone();
    let mut q = vec![0u64; a.len() - b.len() + 1];
    let lb = fp.inv(*b.last().unwrap());
    while r.len() >= b.len() && !r.is_empty() {
        let k = r.len() - b.len();
        let f = fp.mul(*r.last().unwrap(), lb);
        q[k] = f;
        for i in 0..b.len() {
            let t = fp.mul(f, b[i]);
            r[k + i] = fp.sub(r[k + i], t);
        }
        pv_trim(&mut r);
    }
    debug_assert!(r.is_empty());
    pv_trim(&mut q);
    q
}

fn equal_degree_split(fp: &Fp, f: &PV, d: usize, rng: &mut Rng, out: &mut Vec<PV>) {
    if pv_deg(f) as usize == d {
        let li = fp.inv(*f.last().unwrap());
        out.push(f.iter().map(|&c| fp.mul(c, li)).collect());
        return;
    }
    let e = (BigInt::from(fp.p).pow(d as u32) - 1) / 2;
    loop {
        let r: PV = (0..pv_deg(f) as usize + 1)
            .map(|_| rng.below(fp.p))
            .collect();
        let mut r = r;
        pv_trim(&mut r);
        if pv_deg(&r) < 1 {
            continue;
        }
        let mut t = pv_powmod(fp, &r, &e, f);
        // t - 1
        if t.is_empty() {
            t = vec![0];
        }
        t[0] = fp.sub(t[0], 1);
        pv_trim(&mut t);
        if t.is_empty() {
            continue;
        }
        let g = pv_gcd(fp, f, &t);
        let dg = pv_deg(&g);
        if dg > 0 && dg < pv_deg(f) {
            let h = pv_divide_exact(fp, f, &g);
            equal_degree_split(fp, &g, d, rng, out);
            equal_degree_split(fp, &h, d, rng, out);
            return;
        }
    }
}

// ---------------------------------------------------------------------------
// dense BigInt univariate helpers (low-to-high)
// ---------------------------------------------------------------------------

type ZV = Vec<BigInt>;

fn zv_trim(v: &mut ZV) {
    while v.last().map(|x| x.is_zero()).unwrap_or(false) {
        v.pop();
    }
}

fn zv_mul(a: &ZV, b: &ZV) -> ZV {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    zv_trim(&mut out);
    out
}

fn zv_mod(v: &ZV, m: &BigInt) -> ZV {
    // symmetric remainder in (-m/2, m/2]
    let half = m / 2;
    let mut out: ZV = v
        .iter()
        .map(|x| {
            let mut r = x % m;
            if r > half {
                r -= m;
            }
            if r < -half.clone() {
                r += m;
            }
            r
        })
        .collect();
    zv_trim(&mut out);
    out
}

// ---------------------------------------------------------------------------
// univariate factorization over Z (primitive squarefree input)
// ---------------------------------------------------------------------------

const SMALL_PRIMES: [u64; 30] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127,
];

fn zv_to_pv(fp: &Fp, f: &ZV) -> PV {
    let p = BigInt::from(fp.p);
    let mut out: PV = f
        .iter()
        .map(|c| {
            let r = ((c % &p) + &p) % &p;
            r.to_u64().unwrap()
        })
        .collect();
    pv_trim(&mut out);
    out
}

/// Factor a primitive squarefree univariate integer polynomial. Returns
/// integer-primitive factors with positive leading coefficient.
fn factor_z_univar_squarefree(f: &ZV) -> Vec<ZV> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.clone()];
    }
    let lc = f.last().unwrap().clone();
    // choose prime
    let mut chosen: Option<(Fp, Vec<PV>)> = None;
    let mut rng = Rng::new(0xfac70 ^ n as u64);
    for &p in SMALL_PRIMES.iter() {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = Fp { p };
        let fbar = zv_to_pv(&fp, f);
        if pv_deg(&fbar) as usize != n {
            continue;
        }
        let der = pv_derivative(&fp, &fbar);
        if der.is_empty() {
            continue;
        }
        let g = pv_gcd(&fp, &fbar, &der);
        if pv_deg(&g) != 0 {
            continue;
        }
        // make monic and factor
        let li = fp.inv(*fbar.last().unwrap());
        let monic: PV = fbar.iter().map(|&c| fp.mul(c, li)).collect();
        let facs = factor_fp_squarefree(&fp, &monic, &mut rng);
        match &chosen {
            None => chosen = Some((fp, facs)),
            Some((_, prev)) if facs.len() < prev.len() => chosen = Some((fp, facs)),
            _ => {}
        }
        if chosen.as_ref().unwrap().1.len() == 1 {
            break;
        }
    }
    let (fp, facs) = chosen.expect("no usable prime among the small primes");
    if facs.len() == 1 {
        return vec![f.clone()];
    }

    // Landau–Mignotte style bound for coefficients of lc*g, g | f
    let maxc = f
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap();
    let bound: BigInt = (BigInt::one() << (n + 2)) * maxc * lc.abs() * (n as i64 + 1);
    let p_big = BigInt::from(fp.p);
    let mut pk = p_big.clone();
    let mut k = 1u32;
    while pk < 2 * &bound {
        pk *= &p_big;
        k += 1;
    }
    let _ = k;

    // Hensel lift the monic modular factors of (monic f) against f directly:
    // maintain f ≡ lc * prod(g_i) mod p^m with g_i monic.
    let lifted = hensel_lift_all(&fp, f, &facs, &pk);

    // recombination
    recombine(f, &lifted, &pk)
}

/// Linear Hensel lifting of all factors at once: f ≡ lc(f)·Π g_i mod p^m,
/// g_i monic, lifted from mod p to mod target (a power of p).
fn hensel_lift_all(fp: &Fp, f: &ZV, facs: &[PV], target: &BigInt) -> Vec<ZV> {
    let p_big = BigInt::from(fp.p);
    let r = facs.len();
    // Bezout basis mod p: s_i * prod_{j≠i} g_j ≡ 1 mod g_i
    let mut bezout: Vec<PV> = Vec::with_capacity(r);
    for i in 0..r {
        let mut prod = vec![1u64];
        for (j, g) in facs.iter().enumerate() {
            if j != i {
                prod = pv_rem(fp, &pv_mul(fp, &prod, g), &facs[i]);
            }
        }
        bezout.push(pv_modinv(fp, &prod, &facs[i]));
    }
    let mut cur: Vec<ZV> = facs
        .iter()
        .map(|g| g.iter().map(|&c| BigInt::from(c)).collect())
        .collect();
    let lc = f.last().unwrap().clone();
    let mut modulus = p_big.clone();
    while &modulus < target {
        // error e = (f - lc * prod(cur)) / modulus mod p
        let mut prod = vec![BigInt::one()];
        for g in &cur {
            prod = zv_mul(&prod, g);
        }
        let scaled: ZV = prod.iter().map(|c| c * &lc).collect();
        let mut err: ZV = vec![BigInt::zero(); f.len().max(scaled.len())];
        for (i, c) in f.iter().enumerate() {
            err[i] += c;
        }
        for (i, c) in scaled.iter().enumerate() {
            err[i] -= c;
        }
        zv_trim(&mut err);
        let e_over: ZV = err.iter().map(|c| c / &modulus).collect();
        let e_p = zv_to_pv(fp, &e_over);
        if !e_p.is_empty() {
            // Solve sum delta_i * prod_{j≠i} g_j ≡ e/lc mod p (division by lc
            // folded into the deltas via multiplying bezout by lc^{-1}).
            let lcp = zv_to_pv(fp, &vec![lc.clone()]);
            let lci = fp.inv(lcp[0]);
            for i in 0..r {
                let gi_p = zv_to_pv(fp, &cur[i]);
                let rhs = pv_rem(fp, &e_p, &gi_p);
                let mut delta = pv_rem(fp, &pv_mul(fp, &rhs, &bezout[i]), &gi_p);
                for c in delta.iter_mut() {
                    *c = fp.mul(*c, lci);
                }
                // cur[i] += modulus * delta  (keeps g_i monic: deg delta < deg g_i)
                for (j, &d) in delta.iter().enumerate() {
                    if d != 0 {
                        cur[i][j] += &modulus * BigInt::from(d);
                    }
                }
            }
        }
        modulus *= &p_big;
        for g in cur.iter_mut() {
            *g = {
                let mut t = zv_mod(g, &modulus);
                // monic: ensure top coeff exactly 1
                t.resize(t.len().max(1), BigInt::zero());
                t
            };
        }
    }
    cur
}

fn pv_modinv(fp: &Fp, a: &PV, m: &PV) -> PV {
    // extended Euclid over F_p[x]
    let (mut r0, mut r1) = (m.clone(), pv_rem(fp, a, m));
    let (mut t0, mut t1): (PV, PV) = (vec![], vec![1]);
    while !r1.is_empty() {
        // q = r0 / r1
        let mut q = vec![0u64; r0.len().saturating_sub(r1.len()) + 1];
        let lb = fp.inv(*r1.last().unwrap());
        let mut rem = r0.clone();
        while rem.len() >= r1.len() && !rem.is_empty() {
            let k = rem.len() - r1.len();
            let f = fp.mul(*rem.last().unwrap(), lb);
            q[k] = f;
            for i in 0..r1.len() {
                let t = fp.mul(f, r1[i]);
                rem[k + i] = fp.sub(rem[k + i], t);
            }
            pv_trim(&mut rem);
        }
        pv_trim(&mut q);
        // t2 = t0 - q*t1
        let qt = pv_mul(fp, &q, &t1);
        let mut t2 = t0.clone();
        if t2.len() < qt.len() {
            t2.resize(qt.len(), 0);
        }
        for (i, &c) in qt.iter().enumerate() {
            t2[i] = fp.sub(t2[i], c);
        }
        pv_trim(&mut t2);
        r0 = r1;
        r1 = rem;
        t0 = t1;
        t1 = t2;
    }
    // r0 = gcd (a unit); scale t0 by inverse
    let li = fp.inv(r0[0]);
    t0.iter().map(|&c| fp.mul(c, li)).collect()
}

fn zv_primitive(f: &ZV) -> ZV {
    let mut g = BigInt::zero();
    for c in f {
        g = g.gcd(c);
    }
    if g.is_zero() {
        return f.clone();
    }
    if f.last().unwrap().is_negative() {
        g = -g;
    }
    f.iter().map(|c| c / &g).collect()
}

fn zv_divides(a: &ZV, b: &ZV) -> Option<ZV> {
    // exact division b / a over Q with integer check
    if a.is_empty() {
        return None;
    }
    let mut rem: Vec<QQ> = b.iter().map(|c| QQ::from(c.clone())).collect();
    let la = QQ::from(a.last().unwrap().clone());
    let mut q: Vec<QQ> = vec![QQ::zero(); b.len().saturating_sub(a.len()) + 1];
    while rem.len() >= a.len() {
        while rem.last().map(|x| x.is_zero()).unwrap_or(false) {
            rem.pop();
        }
        if rem.len() < a.len() {
            break;
        }
        let k = rem.len() - a.len();
        let f = rem.last().unwrap() / &la;
        q[k] = f.clone();
        for i in 0..a.len() {
            let t = &f * QQ::from(a[i].clone());
            rem[k + i] -= t;
        }
        if rem.last().map(|x| x.is_zero()).unwrap_or(false) {
            rem.pop();
        } else {
            return None;
        }
    }
    while rem.last().map(|x| x.is_zero()).unwrap_or(false) {
        rem.pop();
    }
    if !rem.is_empty() {
        return None;
    }
    if q.iter().any(|c| !c.denom().is_one()) {
        return None;
    }
    let mut out: ZV = q.into_iter().map(|c| c.numer().clone()).collect();
    zv_trim(&mut out);
    Some(out)
}

fn recombine(f: &ZV, lifted: &[ZV], pk: &BigInt) -> Vec<ZV> {
    let mut remaining: Vec<ZV> = lifted.to_vec();
    let mut rest = f.clone();
    let mut out = vec![];
    let mut size = 1usize;
    'outer: while 2 * size <= remaining.len() {
        let idxs: Vec<usize> = (0..remaining.len()).collect();
        for combo in combinations(&idxs, size) {
            let lc = rest.last().unwrap().clone();
            let mut cand = vec![lc.clone()];
            for &i in &combo {
                cand = zv_mod(&zv_mul(&cand, &remaining[i]), pk);
            }
            let cand = zv_primitive(&cand);
            if cand.len() < 2 {
                continue;
            }
            if let Some(q) = zv_divides(&cand, &rest) {
                out.push(cand);
                rest = zv_primitive(&q);
                let mut keep = vec![];
                for (i, g) in remaining.iter().enumerate() {
                    if !combo.contains(&i) {
                        keep.push(g.clone());
                    }
                }
                remaining = keep;
                continue 'outer;
            }
        }
        size += 1;
    }
    if rest.len() > 1 {
        out.push(zv_primitive(&rest));
    }
    out
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    let n = items.len();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

// ---------------------------------------------------------------------------
// public API over MPoly
// ---------------------------------------------------------------------------

/// Factor an arbitrary polynomial over ℚ into irreducibles:
/// returns (unit, [(factor, multiplicity)]), factors integer-primitive with
/// positive canonical leading coefficient, unit ∈ ℚ.
pub fn factor_qq(p: &MPoly) -> (QQ, Vec<(MPoly, u32)>) {
    if p.is_zero() {
        return (QQ::zero(), vec![]);
    }
    let (unit, prim) = p.rat_content();
    if prim.is_constant() {
        return (unit, vec![]);
    }
    let mut out: Vec<(MPoly, u32)> = vec![];
    // monomial content
    let mc = prim.monomial_content();
    let core = prim.div_exact_mono(&mc);
    for (v, &e) in mc.iter().enumerate() {
        if e > 0 {
            out.push((MPoly::var(p.nvars, v), e as u32));
        }
    }
    if !core.is_constant() {
        for (sf, mult) in gcd::squarefree_decomposition(&core) {
            for fac in factor_primitive_squarefree(&sf) {
                out.push((fac, mult));
            }
        }
    }
    // fold factor units into the overall unit and sort canonically
    let mut unit = unit;
    let mut res: Vec<(MPoly, u32)> = vec![];
    for (f, m) in out {
        let (u, fp) = f.rat_content();
        for _ in 0..m {
            unit *= &u;
        }
        if let Some(e) = res.iter_mut().find(|(g, _)| *g == fp) {
            e.1 += m;
        } else {
            res.push((fp, m));
        }
    }
    // re-scale: unit must make product exact; verify in debug builds
    #[cfg(debug_assertions)]
    {
        let mut check = MPoly::constant(p.nvars, unit.clone());
        for (f, m) in &res {
            check = check.mul(&f.pow(*m));
        }
        debug_assert_eq!(&check, p, "factorization product mismatch");
    }
    (unit, res)
}

/// Factor a primitive squarefree polynomial into irreducibles over ℚ.
pub fn factor_primitive_squarefree(p: &MPoly) -> Vec<MPoly> {
    let vars = p.vars_used();
    match vars.len() {
        0 => vec![],
        1 => {
            let v = vars[0];
            let dense = to_dense_z(p, v);
            factor_z_univar_squarefree(&dense)
                .into_iter()
                .map(|f| from_dense_z(p.nvars, v, &f))
                .collect()
        }
        _ => factor_multivar(p, &vars),
    }
}

fn to_dense_z(p: &MPoly, v: usize) -> ZV {
    let (_, prim) = p.rat_content();
    let d = prim.deg(v) as usize;
    let mut out = vec![BigInt::zero(); d + 1];
    for (e, c) in &prim.terms {
        debug_assert!(c.denom().is_one());
        out[e.get(v).copied().unwrap_or(0) as usize] += c.numer();
    }
    out
}

fn from_dense_z(nvars: usize, v: usize, f: &ZV) -> MPoly {
    let mut terms = vec![];
    for (k, c) in f.iter().enumerate() {
        if !c.is_zero() {
            let mut e = Exp::from_elem(0, nvars);
            e[v] = k as u16;
            terms.push((e, QQ::from(c.clone())));
        }
    }
    MPoly::from_terms(nvars, terms)
}

/// Pick the main variable for multivariate factorization: smallest positive
/// degree, ties by fewer terms in the leading coefficient.
fn pick_factor_main(p: &MPoly, vars: &[usize]) -> usize {
    let mut best = vars[0];
    let mut best_deg = u16::MAX;
    for &v in vars {
        let d = p.deg(v);
        if d > 0 && d < best_deg {
            best = v;
            best_deg = d;
        }
    }
    best
}

fn factor_multivar(p: &MPoly, vars: &[usize]) -> Vec<MPoly> {
    let x = pick_factor_main(p, vars);
    // x-content recursion
    let cont = gcd::content_wrt(p, x);
    let prim = p.div_exact(&cont).unwrap();
    let mut out = if cont.is_constant() {
        vec![]
    } else {
        factor_primitive_squarefree(&gcd::squarefree_part(&cont))
            .into_iter()
            .flat_map(|f| {
                // cont may have multiplicities folded already by caller's
                // squarefree decomposition; handle residual powers honestly
                let mut fs = vec![];
                let mut c = cont.clone();
                while let Some(q) = c.div_exact(&f) {
                    fs.push(f.clone());
                    c = q;
                }
                fs
            })
            .collect()
    };
    if prim.deg(x) == 1 {
        out.push(prim);
        return out;
    }
    if prim.is_constant() {
        return out;
    }
    out.extend(factor_primitive_squarefree_main(&prim, x));
    out
}

/// Factor a squarefree polynomial, primitive w.r.t. the chosen main
/// variable x, with ≥ 2 variables in use.
fn factor_primitive_squarefree_main(f: &MPoly, x: usize) -> Vec<MPoly> {
    let nv = f.nvars;
    let minor: Vec<usize> = f.vars_used().into_iter().filter(|&v| v != x).collect();
    let lc_poly = f.to_univar(x).last().unwrap().clone();

    // search evaluation points
    let mut rng = Rng::new(0x9a1e ^ (f.terms.len() as u64) << 8 ^ x as u64);
    let mut best: Option<(Vec<QQ>, ZV, Vec<ZV>)> = None;
    let mut tries = 0;
    let mut radius = 2u64;
    while tries < 60 {
        tries += 1;
        if tries % 12 == 0 {
            radius += 1;
        }
        let point: Vec<QQ> = (0..nv)
            .map(|v| {
                if minor.contains(&v) {
                    QQ::from(BigInt::from(rng.int_in(radius)))
                } else {
                    QQ::zero()
                }
            })
            .collect();
        if lc_poly.eval_all(&point).is_zero() {
            continue;
        }
        // evaluate f
        let mut img = f.clone();
        for &v in &minor {
            img = img.eval_var(v, &point[v]);
        }
        if img.deg(x) != f.deg(x) {
            continue;
        }
        // squarefree check
        let d = img.derivative(x);
        if !gcd::gcd(&img, &d).is_constant() {
            continue;
        }
        let dense = to_dense_z(&img, x);
        let facs = factor_z_univar_squarefree(&zv_primitive(&dense));
        if facs.len() == 1 {
            return vec![f.clone()];
        }
        match &best {
            None => best = Some((point, dense, facs)),
            Some((_, _, pf)) if facs.len() < pf.len() => best = Some((point, dense, facs)),
            _ => {}
        }
        if best.as_ref().map(|b| b.2.len()).unwrap_or(usize::MAX) <= 2 {
            break;
        }
        if tries >= 8 && best.is_some() {
            break;
        }
    }
    let (point, _, ufacs) = best.expect("no valid evaluation point found");

    // Try the fine pattern first, then bipartition recombination.
    if let Some(factors) = try_lift(f, x, &minor, &point, &ufacs) {
        return factors;
    }
    // bipartition search: find a true factor matching a subset
    let r = ufacs.len();
    for size in 1..=r / 2 {
        for combo in combinations(&(0..r).collect::<Vec<_>>(), size) {
            let mut a = vec![BigInt::one()];
            let mut b = vec![BigInt::one()];
            for (i, u) in ufacs.iter().enumerate() {
                if combo.contains(&i) {
                    a = zv_mul(&a, u);
                } else {
                    b = zv_mul(&b, u);
                }
            }
            if let Some(mut factors) = try_lift(f, x, &minor, &point, &[a, b]) {
                if factors.len() == 2 {
                    let g = factors.remove(0);
                    let h = factors.remove(0);
                    let mut out = factor_primitive_squarefree(&g);
                    out.extend(factor_primitive_squarefree(&h));
                    return out;
                }
            }
        }
    }
    vec![f.clone()]
}

/// Multivariate Hensel lift with imposed leading coefficients. Returns the
/// true factors if the pattern verifies, None otherwise.
fn try_lift(
    f: &MPoly,
    x: usize,
    minor: &[usize],
    point: &[QQ],
    ufacs: &[ZV],
) -> Option<Vec<MPoly>> {
    let nv = f.nvars;
    let r = ufacs.len();
    if r == 1 {
        return Some(vec![f.clone()]);
    }
    // translate minor variables so the point is the origin
    let mut ft = f.clone();
    for &v in minor {
        if !point[v].is_zero() {
            let shifted = MPoly::var(nv, v).add(&MPoly::constant(nv, point[v].clone()));
            ft = ft.subst(v, &shifted);
        }
    }
    let l = ft.to_univar(x).last().unwrap().clone(); // lc_x as poly in minor vars
    let zeros = vec![QQ::zero(); nv];
    let l0 = l.eval_all(&zeros);
    debug_assert!(!l0.is_zero());
    // F* = l^(r-1) * ft ; target factors have lc_x = l
    let fstar = ft.mul(&l.pow(r as u32 - 1));
    let degy = fstar.degree_in(minor);

    // base factors scaled to lc = l0
    let base: Vec<Vec<QQ>> = ufacs
        .iter()
        .map(|u| {
            let luc = QQ::from(u.last().unwrap().clone());
            let s = &l0 / &luc;
            u.iter().map(|c| QQ::from(c.clone()) * &s).collect()
        })
        .collect();

    // Bezout data over Q[x]: s_i = (prod_{j≠i} u_j)^{-1} mod u_i
    let bez: Vec<Vec<QQ>> = (0..r)
        .map(|i| {
            let mut prod = vec![QQ::one()];
            for (j, u) in base.iter().enumerate() {
                if j != i {
                    prod = qv_rem(&qv_mul(&prod, u), &base[i]);
                }
            }
            qv_modinv(&prod, &base[i])
        })
        .collect();

    // initialize G_i with imposed leading coefficient l(y)
    let mut gs: Vec<MPoly> = base
        .iter()
        .map(|u| {
            let d = u.len() - 1;
            let mut g = MPoly::zero(nv);
            for (k, c) in u.iter().enumerate() {
                if k == d {
                    continue;
                }
                if !c.is_zero() {
                    let mono = MPoly::var_pow(nv, x, k as u16);
                    g = g.add(&mono.scale(c));
                }
            }
            g.add(&l.mul(&MPoly::var_pow(nv, x, d as u16)))
        })
        .collect();

    for m in 1..=degy {
        let mut prod = MPoly::one(nv);
        for g in &gs {
            prod = prod.mul(g);
        }
        let err = fstar.sub(&prod);
        if err.is_zero() {
            break;
        }
        // terms of total minor-degree exactly m
        let mut slices: std::collections::HashMap<Exp, Vec<QQ>> = std::collections::HashMap::new();
        let dx = fstar.deg(x) as usize;
        for (e, c) in &err.terms {
            let ydeg: u32 = minor.iter().map(|&v| e[v] as u32).sum();
            if ydeg != m {
                continue;
            }
            let mut key = e.clone();
            let xd = key[x] as usize;
            key[x] = 0;
            let entry = slices
                .entry(key)
                .or_insert_with(|| vec![QQ::zero(); dx + 1]);
            entry[xd] += c;
        }
        if slices.is_empty() {
            continue;
        }
        for (ymono, rhs) in slices {
            // solve sum delta_i * prod_{j≠i} base_j = rhs
            for i in 0..r {
                let rem = qv_rem(&rhs, &base[i]);
                let delta = qv_rem(&qv_mul(&rem, &bez[i]), &base[i]);
                if delta.iter().all(|c| c.is_zero()) {
                    continue;
                }
                let mut add = MPoly::zero(nv);
                for (k, c) in delta.iter().enumerate() {
                    if !c.is_zero() {
                        let mut e = ymono.clone();
                        e[x] = k as u16;
                        add = add.add(&MPoly::monomial(nv, &e, c.clone()));
                    }
                }
                gs[i] = gs[i].add(&add);
            }
        }
    }

    // verify
    let mut prod = MPoly::one(nv);
    for g in &gs {
        prod = prod.mul(g);
    }
    if prod != fstar {
        return None;
    }
    // translate back, strip contents
    let mut out = vec![];
    for g in gs {
        let mut gt = g;
        for &v in minor {
            if !point[v].is_zero() {
                let shifted = MPoly::var(nv, v).sub(&MPoly::constant(nv, point[v].clone()));
                gt = gt.subst(v, &shifted);
            }
        }
        let c = gcd::content_wrt(&gt, x);
        let (_, prim) = gt.div_exact(&c).unwrap().rat_content();
        out.push(prim);
    }
    // final sanity: product reproduces f up to unit
    let mut check = MPoly::one(nv);
    for g in &out {
        check = check.mul(g);
    }
    let (_, fp) = f.rat_content();
    let (_, cp) = check.rat_content();
    if fp != cp {
        return None;
    }
    Some(out)
}

// dense rational univariate helpers (low-to-high)
fn qv_mul(a: &[QQ], b: &[QQ]) -> Vec<QQ> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![QQ::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    qv_trim(&mut out);
    out
}

fn qv_trim(v: &mut Vec<QQ>) {
    while v.last().map(|x| x.is_zero()).unwrap_or(false) {
        v.pop();
    }
}

fn qv_rem(a: &[QQ], m: &[QQ]) -> Vec<QQ> {
    let mut r = a.to_vec();
    qv_trim(&mut r);
    let lm = m.last().unwrap();
    while r.len() >= m.len() && !r.is_empty() {
        let k = r.len() - m.len();
        let f = r.last().unwrap() / lm;
        for i in 0..m.len() {
            let t = &f * &m[i];
            r[k + i] -= t;
        }
        qv_trim(&mut r);
    }
    r
}

fn qv_modinv(a: &[QQ], m: &[QQ]) -> Vec<QQ> {
    let (mut r0, mut r1) = (m.to_vec(), qv_rem(a, m));
    let (mut t0, mut t1): (Vec<QQ>, Vec<QQ>) = (vec![], vec![QQ::one()]);
    while !r1.is_empty() {
        // q = r0 / r1
        let mut q = vec![QQ::zero(); r0.len().saturating_sub(r1.len()) + 1];
        let lb = r1.last().unwrap().clone();
        let mut rem = r0.clone();
        while rem.len() >= r1.len() && !rem.is_empty() {
            let k = rem.len() - r1.len();
            let f = rem.last().unwrap() / &lb;
            q[k] = f.clone();
            for i in 0..r1.len() {
                let t = &f * &r1[i];
                rem[k + i] -= t;
            }
            qv_trim(&mut rem);
        }
        qv_trim(&mut q);
        let qt = qv_mul(&q, &t1);
        let mut t2 = t0.clone();
        if t2.len() < qt.len() {
            t2.resize(qt.len(), QQ::zero());
        }
        for (i, c) in qt.iter().enumerate() {
            t2[i] -= c;
        }
        qv_trim(&mut t2);
        r0 = r1;
        r1 = rem;
        t0 = t1;
        t1 = t2;
    }
    debug_assert!(r0.len() == 1);
    let inv = QQ::one() / &r0[0];
    t0.iter().map(|c| c * &inv).collect()
}

/// Convenience: is the polynomial irreducible over ℚ (ignoring units)?
pub fn is_irreducible_qq(p: &MPoly) -> bool {
    let (_, facs) = factor_qq(p);
    facs.len() == 1 && facs[0].1 == 1
}

pub fn int_content_of(p: &MPoly) -> BigInt {
    int_content(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::qq;

    fn x(n: usize, v: usize) -> MPoly {
        MPoly::var(n, v)
    }

    #[test]
    fn univar_basic() {
        // x^2 - 4 = (x-2)(x+2)
        let f = x(1, 0).pow(2).sub(&MPoly::int(1, 4));
        let (_, facs) = factor_qq(&f);
        assert_eq!(facs.len(), 2);
        // x^2 - 2 irreducible
        let g = x(1, 0).pow(2).sub(&MPoly::int(1, 2));
        assert!(is_irreducible_qq(&g));
    }

    #[test]
    fn univar_cyclotomic_like() {
        // x^4 - 1 = (x-1)(x+1)(x^2+1)
        let f = x(1, 0).pow(4).sub(&MPoly::int(1, 1));
        let (_, facs) = factor_qq(&f);
        assert_eq!(facs.len(), 3);
        let degs: Vec<u16> = {
            let mut d: Vec<u16> = facs.iter().map(|(g, _)| g.deg(0)).collect();
            d.sort();
            d
        };
        assert_eq!(degs, vec![1, 1, 2]);
    }

    #[test]
    fn univar_with_multiplicity() {
        // (x+1)^2 (2x - 3)^3
        let f = x(1, 0)
            .add(&MPoly::int(1, 1))
            .pow(2)
            .mul(&x(1, 0).scale(&qq(2)).sub(&MPoly::int(1, 3)).pow(3));
        let (_, facs) = factor_qq(&f);
        let mut mults: Vec<u32> = facs.iter().map(|(_, m)| *m).collect();
        mults.sort();
        assert_eq!(mults, vec![2, 3]);
    }

    #[test]
    fn bivar_split() {
        // (x + y)(x - y) = x^2 - y^2
        let f = x(2, 0).pow(2).sub(&x(2, 1).pow(2));
        let (_, facs) = factor_qq(&f);
        assert_eq!(facs.len(), 2);
        // x^2 + y^2 irreducible over Q
        let g = x(2, 0).pow(2).add(&x(2, 1).pow(2));
        assert!(is_irreducible_qq(&g));
    }

    #[test]
    fn multivar_expand_oracle() {
        // random-ish product of three factors in 3 variables
        let (xv, yv, zv) = (x(3, 0), x(3, 1), x(3, 2));
        let f1 = xv.add(&yv).add(&zv); // x+y+z
        let f2 = xv.mul(&yv).sub(&zv).add(&MPoly::int(3, 1)); // xy - z + 1
        let f3 = xv.sub(&MPoly::int(3, 2)); // x - 2
        let f = f1.mul(&f2).mul(&f3);
        let (unit, facs) = factor_qq(&f);
        assert_eq!(facs.iter().map(|(_, m)| *m).sum::<u32>(), 3);
        let mut prod = MPoly::constant(3, unit);
        for (g, m) in &facs {
            prod = prod.mul(&g.pow(*m));
        }
        assert_eq!(prod, f);
    }

    #[test]
    fn multivar_nontrivial_lc() {
        // leading coefficient in the minor variable: (y x + 1)(x + y)
        let (xv, yv) = (x(2, 0), x(2, 1));
        let f = yv.mul(&xv).add(&MPoly::int(2, 1)).mul(&xv.add(&yv));
        let (unit, facs) = factor_qq(&f);
        assert_eq!(facs.len(), 2);
        let mut prod = MPoly::constant(2, unit);
        for (g, m) in &facs {
            prod = prod.mul(&g.pow(*m));
        }
        assert_eq!(prod, f);
    }

    #[test]
    fn quartic_four_planes() {
        // x1 x2 x3 x4 viewed in 4 variables: monomial factors
        let f = x(4, 0).mul(&x(4, 1)).mul(&x(4, 2)).mul(&x(4, 3));
        let (_, facs) = factor_qq(&f);
        assert_eq!(facs.len(), 4);
    }

    #[test]
    fn parameter_quadric_shape() {
        // (x1 - f x2)(x1 + f x2) with f a "parameter" variable
        let (x1, x2, fv) = (x(3, 0), x(3, 1), x(3, 2));
        let p = x1.sub(&fv.mul(&x2)).mul(&x1.add(&fv.mul(&x2)));
        let (_, facs) = factor_qq(&p);
        assert_eq!(facs.len(), 2);
    }

    #[test]
    fn irreducible_conic_with_params() {
        // x1^2 + x2^2 + f x3^2: irreducible in Q[f, x1, x2, x3]
        let (x1, x2, x3, fv) = (x(4, 0), x(4, 1), x(4, 2), x(4, 3));
        let p = x1.pow(2).add(&x2.pow(2)).add(&fv.mul(&x3.pow(2)));
        assert!(is_irreducible_qq(&p));
    }
}
