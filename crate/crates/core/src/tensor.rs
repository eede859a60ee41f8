//! The 256-dimensional tensor space V⊗4 with its S₄ and gl₄ actions:
//! cyclic rotation, Young idempotents from the character table, the cyclic
//! and Klein-four splits, left partial derivatives, and highest-weight
//! extraction under the raising operators.

use crate::linalg::{Mat, RowSpace};
use crate::mpoly::{qq, qq_frac, QQ};
use crate::scalar::{Scalar, Tower};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;

/// A 4-letter word over {0,1,2,3} (displayed as x1..x4).
pub type Word = [u8; 4];

pub fn all_words() -> Vec<Word> {
    let mut out = Vec::with_capacity(256);
    for a in 0..4u8 {
        for b in 0..4u8 {
            for c in 0..4u8 {
                for d in 0..4u8 {
                    out.push([a, b, c, d]);
                }
            }
        }
    }
    out
}

pub fn word_index(w: &Word) -> usize {
    ((w[0] as usize) << 6) | ((w[1] as usize) << 4) | ((w[2] as usize) << 2) | (w[3] as usize)
}

/// Sparse element of V⊗4 over a scalar tower.
#[derive(Clone, PartialEq)]
pub struct Tensor4 {
    pub tower: Tower,
    pub coeffs: BTreeMap<Word, Scalar>,
}

impl Tensor4 {
    pub fn zero(tower: &Tower) -> Self {
        Tensor4 {
            tower: tower.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn word(tower: &Tower, w: Word) -> Self {
        let mut t = Self::zero(tower);
        t.coeffs.insert(w, Scalar::one(tower));
        t
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn get(&self, w: &Word) -> Scalar {
        self.coeffs
            .get(w)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(&self.tower))
    }

    pub fn set(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            self.coeffs.remove(&w);
        } else {
            self.coeffs.insert(w, c);
        }
    }

    pub fn add_to(&mut self, w: Word, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let cur = self.get(&w);
        self.set(w, cur.add(c));
    }

    pub fn add(&self, o: &Tensor4) -> Tensor4 {
        let mut out = self.clone();
        for (w, c) in &o.coeffs {
            out.add_to(*w, c);
        }
        out
    }

    pub fn sub(&self, o: &Tensor4) -> Tensor4 {
        self.add(&o.scale_neg())
    }

    fn scale_neg(&self) -> Tensor4 {
        Tensor4 {
            tower: self.tower.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|(w, c)| (*w, c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Tensor4 {
        if s.is_zero() {
            return Tensor4::zero(&self.tower);
        }
        Tensor4 {
            tower: self.tower.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|(w, c)| (*w, c.mul(s)))
                .collect(),
        }
    }

    pub fn scale_qq(&self, s: &QQ) -> Tensor4 {
        self.scale(&Scalar::from_qq(&self.tower, s.clone()))
    }

    /// Dense coefficient vector over all 256 words.
    pub fn to_vec(&self) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(&self.tower); 256];
        for (w, c) in &self.coeffs {
            out[word_index(w)] = c.clone();
        }
        out
    }

    pub fn from_vec(tower: &Tower, v: &[Scalar]) -> Tensor4 {
        let mut t = Tensor4::zero(tower);
        for (i, w) in all_words().iter().enumerate() {
            if !v[i].is_zero() {
                t.coeffs.insert(*w, v[i].clone());
            }
        }
        t
    }

    /// Normalize so the lexicographically first word has the given
    /// coefficient (or 1); None for the zero tensor.
    pub fn normalized(&self, target_first: Option<&Scalar>) -> Option<Tensor4> {
        let (_, c) = self.coeffs.iter().next()?;
        let target = match target_first {
            Some(t) => t.clone(),
            None => Scalar::one(&self.tower),
        };
        let f = target.div(c).ok()?;
        Some(self.scale(&f))
    }

    pub fn lift_to(&self, tower: &Tower) -> crate::error::Result<Tensor4> {
        let mut out = Tensor4::zero(tower);
        for (w, c) in &self.coeffs {
            out.coeffs.insert(*w, c.lift_to(tower)?);
        }
        Ok(out)
    }
}

impl fmt::Display for Tensor4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.coeffs.iter().enumerate() {
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
            let simple = !mag.contains('+') && !mag.contains(" - ") && !mag.contains('/');
            if mag != "1" {
                if simple {
                    write!(f, "{}*", mag)?;
                } else {
                    write!(f, "({})*", mag)?;
                }
            }
            write!(
                f,
                "x{}*x{}*x{}*x{}",
                w[0] + 1,
                w[1] + 1,
                w[2] + 1,
                w[3] + 1
            )?;
        }
        Ok(())
    }
}

impl fmt::Debug for Tensor4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

// ---------------------------------------------------------------------------
// S4
// ---------------------------------------------------------------------------

/// A permutation of {0,1,2,3}; `perm[i]` is the image of i.
pub type Perm = [u8; 4];

pub const IDENTITY: Perm = [0, 1, 2, 3];
/// the 4-cycle (1234): 1→2→3→4→1
pub const P4: Perm = [1, 2, 3, 0];

pub fn compose(a: &Perm, b: &Perm) -> Perm {
    // (a∘b)(i) = a(b(i))
    [
        a[b[0] as usize],
        a[b[1] as usize],
        a[b[2] as usize],
        a[b[3] as usize],
    ]
}

pub fn all_perms() -> Vec<Perm> {
    let mut out = vec![];
    let mut items = [0u8, 1, 2, 3];
    permute(&mut items, 0, &mut out);
    out.sort();
    out
}

fn permute(items: &mut [u8; 4], k: usize, out: &mut Vec<Perm>) {
    if k == 4 {
        out.push(*items);
        return;
    }
    for i in k..4 {
        items.swap(k, i);
        permute(items, k + 1, out);
        items.swap(k, i);
    }
}

/// Cycle type as a sorted list of cycle lengths.
pub fn cycle_type(p: &Perm) -> Vec<u8> {
    let mut seen = [false; 4];
    let mut out = vec![];
    for s in 0..4 {
        if seen[s] {
            continue;
        }
        let mut len = 0u8;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            i = p[i] as usize;
            len += 1;
        }
        out.push(len);
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

pub fn sign(p: &Perm) -> i64 {
    let ct = cycle_type(p);
    let transpositions: u8 = ct.iter().map(|&l| l - 1).sum();
    if transpositions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Position-permutation action: factor i moves to position g(i), i.e.
/// (g·t)[a] = t[(a_{g(0)}, a_{g(1)}, a_{g(2)}, a_{g(3)})]. Under this
/// convention the 4-cycle (1234) acts exactly as the rotation φ.
pub fn s4_act(g: &Perm, t: &Tensor4) -> Tensor4 {
    let mut out = Tensor4::zero(&t.tower);
    for (w, c) in &t.coeffs {
        // find the word a with a_{g(i)} = w'? directly: mapping each input
        // word b to output word c with c[g(i)] = b[i]
        let mut nw = [0u8; 4];
        for i in 0..4 {
            nw[g[i] as usize] = w[i];
        }
        out.add_to(nw, c);
    }
    out
}

/// The superpotential rotation: φ = (−1)^{m−1} · (v1⊗…⊗v4 ↦ v4⊗v1⊗v2⊗v3),
/// so for m = 4 the plain rotation is negated. With this graded sign the
/// alternating tensor is a fixed point (its derivation quotient is the
/// commutative polynomial ring with identity Nakayama matrix).
pub fn cyclic_phi(t: &Tensor4) -> Tensor4 {
    s4_act(&P4, t).scale_neg()
}

/// Element of the rational group algebra of S₄.
#[derive(Clone, Debug, PartialEq)]
pub struct PermAlgebraElem {
    pub coeffs: Vec<(Perm, QQ)>,
}

impl PermAlgebraElem {
    pub fn apply(&self, t: &Tensor4) -> Tensor4 {
        let mut out = Tensor4::zero(&t.tower);
        for (g, c) in &self.coeffs {
            if c.is_zero() {
                continue;
            }
            let part = s4_act(g, t).scale_qq(c);
            out = out.add(&part);
        }
        out
    }

    pub fn multiply(&self, o: &PermAlgebraElem) -> PermAlgebraElem {
        let mut acc: BTreeMap<Perm, QQ> = BTreeMap::new();
        for (g, a) in &self.coeffs {
            for (h, b) in &o.coeffs {
                let gh = compose(g, h);
                *acc.entry(gh).or_insert_with(QQ::zero) += a * b;
            }
        }
        PermAlgebraElem {
            coeffs: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn add(&self, o: &PermAlgebraElem) -> PermAlgebraElem {
        let mut acc: BTreeMap<Perm, QQ> = self.coeffs.iter().cloned().collect();
        for (g, c) in &o.coeffs {
            *acc.entry(*g).or_insert_with(QQ::zero) += c;
        }
        PermAlgebraElem {
            coeffs: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn one() -> PermAlgebraElem {
        PermAlgebraElem {
            coeffs: vec![(IDENTITY, qq(1))],
        }
    }
}

// ---------------------------------------------------------------------------
// partitions and idempotents
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Partition {
    P4_,
    P31,
    P22,
    P211,
    P1111,
}

pub const PARTITIONS: [Partition; 5] = [
    Partition::P4_,
    Partition::P31,
    Partition::P22,
    Partition::P211,
    Partition::P1111,
];

impl Partition {
    pub fn parts(&self) -> &'static [u8] {
        match self {
            Partition::P4_ => &[4],
            Partition::P31 => &[3, 1],
            Partition::P22 => &[2, 2],
            Partition::P211 => &[2, 1, 1],
            Partition::P1111 => &[1, 1, 1, 1],
        }
    }

    /// difference tuple d_λ = (λ1−λ2, λ2−λ3, λ3−λ4)
    pub fn difference_tuple(&self) -> [u8; 3] {
        let mut l = [0u8; 4];
        for (i, &p) in self.parts().iter().enumerate() {
            l[i] = p;
        }
        [l[0] - l[1], l[1] - l[2], l[2] - l[3]]
    }

    /// dimension of the S₄-irreducible U_λ
    pub fn dim_u(&self) -> usize {
        match self {
            Partition::P4_ | Partition::P1111 => 1,
            Partition::P31 | Partition::P211 => 3,
            Partition::P22 => 2,
        }
    }

    /// dimension of the GL₄ Schur functor S_λ(V), dim V = 4
    pub fn dim_schur(&self) -> usize {
        match self {
            Partition::P4_ => 35,
            Partition::P31 => 45,
            Partition::P22 => 20,
            Partition::P211 => 15,
            Partition::P1111 => 1,
        }
    }

    /// character on a permutation (by cycle type)
    pub fn character(&self, g: &Perm) -> i64 {
        let ct = cycle_type(g);
        let class = match ct.as_slice() {
            [1, 1, 1, 1] => 0, // e
            [2, 1, 1] => 1,    // transposition
            [2, 2] => 2,       // double transposition
            [3, 1] => 3,       // 3-cycle
            [4] => 4,          // 4-cycle
            _ => unreachable!(),
        };
        match self {
            Partition::P4_ => [1, 1, 1, 1, 1][class],
            Partition::P31 => [3, 1, -1, 0, -1][class],
            Partition::P22 => [2, 0, 2, -1, 0][class],
            Partition::P211 => [3, -1, -1, 0, 1][class],
            Partition::P1111 => [1, -1, 1, 1, -1][class],
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Partition::P4_ => "400",
            Partition::P31 => "210",
            Partition::P22 => "020",
            Partition::P211 => "101",
            Partition::P1111 => "000",
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Partition::P4_ => "(4)",
            Partition::P31 => "(3,1)",
            Partition::P22 => "(2,2)",
            Partition::P211 => "(2,1,1)",
            Partition::P1111 => "(1,1,1,1)",
        }
    }
}

/// e_λ = (dim U_λ / 24) Σ_g χ_λ(g) g
pub fn young_idempotent(l: Partition) -> PermAlgebraElem {
    let scale = qq_frac(l.dim_u() as i64, 24);
    let coeffs = all_perms()
        .into_iter()
        .filter_map(|g| {
            let chi = l.character(&g);
            if chi == 0 {
                None
            } else {
                Some((g, &scale * qq(chi)))
            }
        })
        .collect();
    PermAlgebraElem { coeffs }
}

pub fn project_isotypic(t: &Tensor4, l: Partition) -> Tensor4 {
    young_idempotent(l).apply(t)
}

/// e_{L0} = ¼(1 + p + p² + p³), e_{L2} = ¼(1 − p + p² − p³), p = (1234)
pub fn cyclic_idempotents() -> (PermAlgebraElem, PermAlgebraElem) {
    let p1 = P4;
    let p2 = compose(&P4, &P4);
    let p3 = compose(&p2, &P4);
    let q = qq_frac(1, 4);
    let e0 = PermAlgebraElem {
        coeffs: vec![
            (IDENTITY, q.clone()),
            (p1, q.clone()),
            (p2, q.clone()),
            (p3, q.clone()),
        ],
    };
    let e2 = PermAlgebraElem {
        coeffs: vec![
            (IDENTITY, q.clone()),
            (p1, -q.clone()),
            (p2, q.clone()),
            (p3, -q),
        ],
    };
    (e0, e2)
}

/// The three idempotents of the Klein four-group V₄ = {e, (12)(34),
/// (13)(24), (14)(23)} attached to its nontrivial characters.
pub fn klein_idempotents() -> [PermAlgebraElem; 3] {
    let a: Perm = [1, 0, 3, 2]; // (12)(34)
    let b: Perm = [2, 3, 0, 1]; // (13)(24)
    let c: Perm = [3, 2, 1, 0]; // (14)(23)
    let q = qq_frac(1, 4);
    let make = |sa: i64, sb: i64, sc: i64| PermAlgebraElem {
        coeffs: vec![
            (IDENTITY, q.clone()),
            (a, &q * qq(sa)),
            (b, &q * qq(sb)),
            (c, &q * qq(sc)),
        ],
    };
    [make(1, -1, -1), make(-1, 1, -1), make(-1, -1, 1)]
}

// ---------------------------------------------------------------------------
// partial derivatives
// ---------------------------------------------------------------------------

/// Lower-degree suffix tensor: sparse map from shorter words.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorLow {
    pub tower: Tower,
    pub coeffs: BTreeMap<Vec<u8>, Scalar>,
}

/// ∂_{x_i} w: strip one leading letter i.
pub fn left_partial(t: &Tensor4, i: u8) -> TensorLow {
    let mut out = TensorLow {
        tower: t.tower.clone(),
        coeffs: BTreeMap::new(),
    };
    for (w, c) in &t.coeffs {
        if w[0] == i {
            let key = w[1..].to_vec();
            let cur = out
                .coeffs
                .get(&key)
                .cloned()
                .unwrap_or_else(|| Scalar::zero(&t.tower));
            let s = cur.add(c);
            if s.is_zero() {
                out.coeffs.remove(&key);
            } else {
                out.coeffs.insert(key, s);
            }
        }
    }
    out
}

/// ∂²_{x_i x_j} w: strip the leading two letters (i, j); this matches the
/// expansion w = Σ_{i,j} x_i x_j ⊗ ∂²_{x_i x_j} w.
pub fn left_partial2(t: &Tensor4, i: u8, j: u8) -> TensorLow {
    let mut out = TensorLow {
        tower: t.tower.clone(),
        coeffs: BTreeMap::new(),
    };
    for (w, c) in &t.coeffs {
        if w[0] == i && w[1] == j {
            let key = w[2..].to_vec();
            let cur = out
                .coeffs
                .get(&key)
                .cloned()
                .unwrap_or_else(|| Scalar::zero(&t.tower));
            let s = cur.add(c);
            if s.is_zero() {
                out.coeffs.remove(&key);
            } else {
                out.coeffs.insert(key, s);
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// gl(4) coproduct action
// ---------------------------------------------------------------------------

/// 4×4 rational matrix (rows index input letters).
pub type Mat4 = [[QQ; 4]; 4];

pub fn mat4_zero() -> Mat4 {
    std::array::from_fn(|_| std::array::from_fn(|_| QQ::zero()))
}

pub fn mat4_unit(i: usize, j: usize) -> Mat4 {
    let mut m = mat4_zero();
    m[i][j] = qq(1);
    m
}

pub fn mat4_diag(d: [i64; 4]) -> Mat4 {
    let mut m = mat4_zero();
    for i in 0..4 {
        m[i][i] = qq(d[i]);
    }
    m
}

pub fn mat4_mul(a: &Mat4, b: &Mat4) -> Mat4 {
    let mut m = mat4_zero();
    for i in 0..4 {
        for k in 0..4 {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..4 {
                if b[k][j].is_zero() {
                    continue;
                }
                m[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    m
}

/// Leibniz (coproduct) action of g on each tensor factor: letters are
/// substituted along the rows of g, one position at a time.
pub fn coproduct_action(g: &Mat4, t: &Tensor4) -> Tensor4 {
    let mut out = Tensor4::zero(&t.tower);
    for (w, c) in &t.coeffs {
        for pos in 0..4 {
            let a = w[pos] as usize;
            for j in 0..4 {
                if g[a][j].is_zero() {
                    continue;
                }
                let mut nw = *w;
                nw[pos] = j as u8;
                let s = c.mul(&Scalar::from_qq(&t.tower, g[a][j].clone()));
                out.add_to(nw, &s);
            }
        }
    }
    out
}

/// Diagonal (group-level) action: every letter substituted simultaneously.
pub fn diagonal_action(g: &Mat4, t: &Tensor4) -> Tensor4 {
    let mut out = Tensor4::zero(&t.tower);
    for (w, c) in &t.coeffs {
        // product over positions of row substitutions
        let mut acc: Vec<(Word, Scalar)> = vec![([0; 4], c.clone())];
        for pos in 0..4 {
            let a = w[pos] as usize;
            let mut next = vec![];
            for (bw, bc) in &acc {
                for j in 0..4 {
                    if g[a][j].is_zero() {
                        continue;
                    }
                    let mut nw = *bw;
                    nw[pos] = j as u8;
                    next.push((nw, bc.mul(&Scalar::from_qq(&t.tower, g[a][j].clone()))));
                }
            }
            acc = next;
        }
        for (nw, nc) in acc {
            out.add_to(nw, &nc);
        }
    }
    out
}

/// The raising operators fixed by the orientation convention.
pub fn raising_operators() -> [Mat4; 3] {
    [mat4_unit(0, 1), mat4_unit(1, 2), mat4_unit(2, 3)]
}

/// Basis of (span ∩ ker of all raising operators) over the tower of the
/// span vectors.
pub fn highest_weight_vectors(span: &[Tensor4]) -> Vec<Tensor4> {
    if span.is_empty() {
        return vec![];
    }
    let tower = span[0].tower.clone();
    // reduce span to an independent basis
    let mut rs = RowSpace::new(&tower, 256);
    let mut basis: Vec<Tensor4> = vec![];
    for t in span {
        if rs.insert(&t.to_vec()) {
            basis.push(t.clone());
        }
    }
    // kernel condition: for x = Σ c_k basis_k, raising(x) = 0 for all ops
    let ops = raising_operators();
    let images: Vec<Vec<Tensor4>> = basis
        .iter()
        .map(|b| ops.iter().map(|m| coproduct_action(m, b)).collect())
        .collect();
    let mut rows: Vec<Vec<Scalar>> = vec![];
    for op_i in 0..3 {
        // each word coordinate of the image gives one linear condition
        let mut support: std::collections::BTreeSet<Word> = Default::default();
        for im in images.iter().map(|v| &v[op_i]) {
            support.extend(im.coeffs.keys().copied());
        }
        for w in support {
            let row: Vec<Scalar> = images.iter().map(|v| v[op_i].get(&w)).collect();
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return basis;
    }
    let mat = Mat::from_rows(&tower, rows);
    let kernel = mat.kernel();
    kernel
        .into_iter()
        .map(|coefs| {
            let mut acc = Tensor4::zero(&tower);
            for (k, c) in coefs.iter().enumerate() {
                if !c.is_zero() {
                    acc = acc.add(&basis[k].scale(c));
                }
            }
            acc
        })
        .collect()
}

/// Rank of the λ-isotypic projector on V⊗4 (over ℚ).
pub fn isotypic_rank(l: Partition) -> usize {
    let tower = crate::scalar::FieldTower::rationals();
    let e = young_idempotent(l);
    let mut rs = RowSpace::new(&tower, 256);
    let mut rank = 0;
    for w in all_words() {
        let t = Tensor4::word(&tower, w);
        let p = e.apply(&t);
        if !p.is_zero() && rs.insert(&p.to_vec()) {
            rank += 1;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::FieldTower;

    fn tq() -> Tower {
        FieldTower::rationals()
    }

    #[test]
    fn phi_definition_and_order() {
        let t = tq();
        let w = Tensor4::word(&t, [0, 1, 2, 3]);
        let r = cyclic_phi(&w);
        // φ rotates the last factor to the front and carries the graded
        // sign: x1x2x3x4 ↦ −x4x1x2x3.
        assert_eq!(r.coeffs.keys().next().unwrap(), &[3, 0, 1, 2]);
        assert_eq!(r.get(&[3, 0, 1, 2]), Scalar::from_int(&t, -1));
        // φ^4 = id
        let mut cur = w.clone();
        for _ in 0..4 {
            cur = cyclic_phi(&cur);
        }
        assert_eq!(cur, w);
    }

    #[test]
    fn phi_fixes_alternating_tensor() {
        let t = tq();
        let mut w = Tensor4::zero(&t);
        for g in all_perms() {
            let mut word = [0u8; 4];
            for i in 0..4 {
                word[g[i] as usize] = i as u8;
            }
            w.add_to(word, &Scalar::from_int(&t, sign(&g)));
        }
        assert_eq!(cyclic_phi(&w), w);
    }

    #[test]
    fn transposition_action() {
        let t = tq();
        // (12) on x1x2x3x4 → x2x1x3x4
        let g: Perm = [1, 0, 2, 3];
        let w = Tensor4::word(&t, [0, 1, 2, 3]);
        let r = s4_act(&g, &w);
        assert_eq!(r.coeffs.keys().next().unwrap(), &[1, 0, 2, 3]);
    }

    #[test]
    fn action_is_homomorphism() {
        let t = tq();
        let mut rng = crate::rng::Rng::new(5);
        for _ in 0..20 {
            let g = all_perms()[rng.below(24) as usize];
            let h = all_perms()[rng.below(24) as usize];
            let mut w = Tensor4::zero(&t);
            for _ in 0..5 {
                let word = [
                    rng.below(4) as u8,
                    rng.below(4) as u8,
                    rng.below(4) as u8,
                    rng.below(4) as u8,
                ];
                w.add_to(word, &Scalar::from_int(&t, rng.int_in(5)));
            }
            let lhs = s4_act(&g, &s4_act(&h, &w));
            let rhs = s4_act(&compose(&g, &h), &w);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn idempotent_suite() {
        // e_λ² = e_λ, orthogonality, completeness, centrality
        let es: Vec<PermAlgebraElem> =
            PARTITIONS.iter().map(|&l| young_idempotent(l)).collect();
        for (i, e) in es.iter().enumerate() {
            assert_eq!(e.multiply(e), *e);
            for (j, f) in es.iter().enumerate() {
                if i != j {
                    assert!(e.multiply(f).coeffs.is_empty());
                }
            }
        }
        let mut sum = es[0].clone();
        for e in &es[1..] {
            sum = sum.add(e);
        }
        assert_eq!(sum, PermAlgebraElem::one());
        // centrality: e g = g e for generators g
        for g in [[1u8, 0, 2, 3], P4] {
            let ge = PermAlgebraElem {
                coeffs: vec![(g, qq(1))],
            };
            for e in &es {
                assert_eq!(e.multiply(&ge), ge.multiply(e));
            }
        }
    }

    #[test]
    fn isotypic_ranks() {
        let ranks: Vec<usize> = PARTITIONS.iter().map(|&l| isotypic_rank(l)).collect();
        assert_eq!(ranks, vec![35, 135, 40, 45, 1]);
        assert_eq!(ranks.iter().sum::<usize>(), 256);
        // hook-length oracle: dim U_λ via hooks of the Young diagram and
        // hook-content for dim S_λ(V); rank = product
        for (i, &l) in PARTITIONS.iter().enumerate() {
            let hooks = hook_length_dim(l.parts());
            let content = hook_content_dim(l.parts(), 4);
            assert_eq!(hooks, l.dim_u());
            assert_eq!(content, l.dim_schur());
            assert_eq!(ranks[i], hooks * content);
        }
    }

    fn cells(parts: &[u8]) -> Vec<(usize, usize)> {
        let mut out = vec![];
        for (r, &len) in parts.iter().enumerate() {
            for c in 0..len as usize {
                out.push((r, c));
            }
        }
        out
    }

    fn hook_len(parts: &[u8], r: usize, c: usize) -> usize {
        let arm = parts[r] as usize - c - 1;
        let leg = parts.iter().skip(r + 1).filter(|&&l| l as usize > c).count();
        arm + leg + 1
    }

    fn hook_length_dim(parts: &[u8]) -> usize {
        let n: usize = parts.iter().map(|&p| p as usize).sum();
        let mut fact = 1usize;
        for i in 2..=n {
            fact *= i;
        }
        let mut denom = 1usize;
        for (r, c) in cells(parts) {
            denom *= hook_len(parts, r, c);
        }
        fact / denom
    }

    fn hook_content_dim(parts: &[u8], n: usize) -> usize {
        let mut num = 1i64;
        let mut den = 1i64;
        for (r, c) in cells(parts) {
            num *= n as i64 + c as i64 - r as i64;
            den *= hook_len(parts, r, c) as i64;
        }
        (num / den) as usize
    }

    #[test]
    fn symmetric_tensor_is_pure_sym4() {
        let t = tq();
        // symmetrization of x1x2x3x4
        let mut w = Tensor4::zero(&t);
        for g in all_perms() {
            let mut word = [0u8; 4];
            for i in 0..4 {
                word[g[i] as usize] = i as u8;
            }
            w.add_to(word, &Scalar::one(&t));
        }
        for &l in &PARTITIONS {
            let p = project_isotypic(&w, l);
            if l == Partition::P4_ {
                assert!(!p.is_zero());
            } else {
                assert!(p.is_zero(), "λ = {:?}", l);
            }
        }
    }

    #[test]
    fn partials_reconstruction() {
        let t = tq();
        let mut rng = crate::rng::Rng::new(11);
        let mut w = Tensor4::zero(&t);
        for _ in 0..12 {
            let word = [
                rng.below(4) as u8,
                rng.below(4) as u8,
                rng.below(4) as u8,
                rng.below(4) as u8,
            ];
            w.add_to(word, &Scalar::from_int(&t, rng.int_in(7)));
        }
        // w = Σ_{ij} x_i x_j ⊗ ∂²_{ij} w
        let mut rebuilt = Tensor4::zero(&t);
        for i in 0..4u8 {
            for j in 0..4u8 {
                let d = left_partial2(&w, i, j);
                for (suf, c) in &d.coeffs {
                    rebuilt.add_to([i, j, suf[0], suf[1]], c);
                }
            }
        }
        assert_eq!(rebuilt, w);
    }

    #[test]
    fn coproduct_weight_operator() {
        let t = tq();
        let w = Tensor4::word(&t, [0, 1, 2, 3]);
        // identity matrix → 4·t
        let id = mat4_diag([1, 1, 1, 1]);
        assert_eq!(coproduct_action(&id, &w), w.scale(&Scalar::from_int(&t, 4)));
        // diag(1,0,0,0) counts occurrences of letter 1
        let d = mat4_diag([1, 0, 0, 0]);
        assert_eq!(coproduct_action(&d, &w), w);
        let w2 = Tensor4::word(&t, [0, 0, 2, 3]);
        assert_eq!(
            coproduct_action(&d, &w2),
            w2.scale(&Scalar::from_int(&t, 2))
        );
    }

    #[test]
    fn coproduct_commutator() {
        // coproduct([a,b]) = [coproduct(a), coproduct(b)] on random tensors
        let t = tq();
        let mut rng = crate::rng::Rng::new(23);
        let rand_mat = |rng: &mut crate::rng::Rng| -> Mat4 {
            let mut m = mat4_zero();
            for i in 0..4 {
                for j in 0..4 {
                    m[i][j] = qq(rng.int_in(2));
                }
            }
            m
        };
        for _ in 0..5 {
            let a = rand_mat(&mut rng);
            let b = rand_mat(&mut rng);
            let mut w = Tensor4::zero(&t);
            for _ in 0..6 {
                let word = [
                    rng.below(4) as u8,
                    rng.below(4) as u8,
                    rng.below(4) as u8,
                    rng.below(4) as u8,
                ];
                w.add_to(word, &Scalar::from_int(&t, rng.int_in(4)));
            }
            // [a,b] = ab - ba; under the row-substitution convention the
            // matrix product ab acts as "apply a, then b"
            let ab = mat4_mul(&a, &b);
            let ba = mat4_mul(&b, &a);
            let mut comm = mat4_zero();
            for i in 0..4 {
                for j in 0..4 {
                    comm[i][j] = &ab[i][j] - &ba[i][j];
                }
            }
            let lhs = coproduct_action(&comm, &w);
            let rhs = coproduct_action(&b, &coproduct_action(&a, &w))
                .sub(&coproduct_action(&a, &coproduct_action(&b, &w)));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn klein_and_cyclic_idempotents() {
        let (e0, e2) = cyclic_idempotents();
        assert_eq!(e0.multiply(&e0), e0);
        assert_eq!(e2.multiply(&e2), e2);
        assert!(e0.multiply(&e2).coeffs.is_empty());
        let ks = klein_idempotents();
        for (i, a) in ks.iter().enumerate() {
            assert_eq!(a.multiply(a), *a);
            for (j, b) in ks.iter().enumerate() {
                if i != j {
                    assert!(a.multiply(b).coeffs.is_empty());
                }
            }
        }
    }

    #[test]
    fn idempotents_commute_with_phi() {
        let t = tq();
        let mut rng = crate::rng::Rng::new(31);
        let mut w = Tensor4::zero(&t);
        for _ in 0..10 {
            let word = [
                rng.below(4) as u8,
                rng.below(4) as u8,
                rng.below(4) as u8,
                rng.below(4) as u8,
            ];
            w.add_to(word, &Scalar::from_int(&t, rng.int_in(6)));
        }
        for &l in &PARTITIONS {
            let a = cyclic_phi(&project_isotypic(&w, l));
            let b = project_isotypic(&cyclic_phi(&w), l);
            assert_eq!(a, b);
        }
    }

    #[test]
    fn gl_equivariance_of_projectors() {
        let t = tq();
        let mut rng = crate::rng::Rng::new(37);
        let mut w = Tensor4::zero(&t);
        for _ in 0..6 {
            let word = [
                rng.below(4) as u8,
                rng.below(4) as u8,
                rng.below(4) as u8,
                rng.below(4) as u8,
            ];
            w.add_to(word, &Scalar::from_int(&t, rng.int_in(3)));
        }
        // an invertible-ish random matrix (diagonal-dominant)
        let mut g = mat4_diag([1, 1, 1, 1]);
        for i in 0..4 {
            for j in 0..4 {
                if i != j && rng.below(2) == 0 {
                    g[i][j] = qq(rng.int_in(2));
                }
            }
        }
        for &l in &PARTITIONS {
            let a = diagonal_action(&g, &project_isotypic(&w, l));
            let b = project_isotypic(&diagonal_action(&g, &w), l);
            assert_eq!(a, b, "λ = {:?}", l);
        }
    }
}
