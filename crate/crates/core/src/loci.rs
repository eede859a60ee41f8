//! The five linear systems attached to the isotypic components of a
//! superpotential, realized on their partial flag varieties, together with
//! the base-locus ideals.

use crate::error::{Error, Result};
use crate::linalg::RowSpace;
use crate::polyring::{Ideal, Poly, PolyRing, Ring};
use crate::scalar::{Scalar, Tower};
use crate::tensor::{
    coproduct_action, cyclic_idempotents, highest_weight_vectors, klein_idempotents, mat4_diag,
    mat4_mul, mat4_unit, project_isotypic, Mat4, Partition, Tensor4,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AmbientKind {
    P3,
    Gr24,
    F13,
    F12,
    Point,
}

#[derive(Clone, Debug)]
pub struct AmbientModel {
    pub kind: AmbientKind,
    pub ring: Ring,
    pub structural: Vec<Poly>,
}

impl AmbientModel {
    pub fn p3(tower: &Tower) -> AmbientModel {
        let ring = PolyRing::new(tower, vec![vec!["x1", "x2", "x3", "x4"]]);
        AmbientModel {
            kind: AmbientKind::P3,
            ring,
            structural: vec![],
        }
    }

    pub fn gr24(tower: &Tower) -> AmbientModel {
        let ring = PolyRing::new(tower, vec![vec!["b1", "b2", "b3", "b4", "b5", "b6"]]);
        let q = crate::polyring::parse_poly(&ring, "b1*b6 - b2*b5 + b3*b4").unwrap();
        AmbientModel {
            kind: AmbientKind::Gr24,
            ring,
            structural: vec![q],
        }
    }

    pub fn f13(tower: &Tower) -> AmbientModel {
        let ring = PolyRing::new(
            tower,
            vec![
                vec!["x1", "x2", "x3", "x4"],
                vec!["y1", "y2", "y3", "y4"],
            ],
        );
        let inc =
            crate::polyring::parse_poly(&ring, "x1*y1 + x2*y2 + x3*y3 + x4*y4").unwrap();
        AmbientModel {
            kind: AmbientKind::F13,
            ring,
            structural: vec![inc],
        }
    }

    pub fn f12(tower: &Tower) -> AmbientModel {
        let ring = PolyRing::new(
            tower,
            vec![
                vec!["x1", "x2", "x3", "x4"],
                vec!["b1", "b2", "b3", "b4", "b5", "b6"],
            ],
        );
        let parse = |s: &str| crate::polyring::parse_poly(&ring, s).unwrap();
        let structural = vec![
            parse("b1*b6 - b2*b5 + b3*b4"),
            // coefficients of x ∧ ω on e_j∧e_k∧e_l
            parse("x1*b4 - x2*b2 + x3*b1"),
            parse("x1*b5 - x2*b3 + x4*b1"),
            parse("x1*b6 - x3*b3 + x4*b2"),
            parse("x2*b6 - x3*b5 + x4*b4"),
        ];
        AmbientModel {
            kind: AmbientKind::F12,
            ring,
            structural,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Locus {
    pub ambient: AmbientModel,
    pub sections: Vec<Poly>,
    pub ideal: Ideal,
    pub lambda: Partition,
    pub zero_flag: bool,
}

impl Locus {
    fn zero(ambient: AmbientModel, lambda: Partition) -> Locus {
        let ideal = Ideal::new(&ambient.ring, vec![]);
        Locus {
            ambient,
            sections: vec![],
            ideal,
            lambda,
            zero_flag: true,
        }
    }

    fn assemble(ambient: AmbientModel, sections: Vec<Poly>, lambda: Partition) -> Locus {
        let mut gens = ambient.structural.clone();
        let order = crate::mpoly::MonOrder::grevlex((0..ambient.ring.nvars()).collect());
        let sections: Vec<Poly> = sections.into_iter().map(|s| s.monic(&order)).collect();
        gens.extend(sections.iter().filter(|s| !s.is_zero()).cloned());
        let ideal = Ideal::new(&ambient.ring, gens);
        Locus {
            ambient,
            sections,
            ideal,
            lambda,
            zero_flag: false,
        }
    }
}

// ---------------------------------------------------------------------------
// λ = (4): quartic in P³
// ---------------------------------------------------------------------------

pub fn locus_400(w: &Tensor4) -> Locus {
    let tower = &w.tower;
    let w4 = project_isotypic(w, Partition::P4_);
    let ambient = AmbientModel::p3(tower);
    if w4.is_zero() {
        return Locus::zero(ambient, Partition::P4_);
    }
    // symmetrize into a commutative quartic
    let mut q = Poly::zero(&ambient.ring);
    for (word, c) in &w4.coeffs {
        let mut e = crate::mpoly::Exp::from_elem(0, 4);
        for &l in word.iter() {
            e[l as usize] += 1;
        }
        q = q.add(&Poly::monomial(&ambient.ring, &e, c.clone()));
    }
    Locus::assemble(ambient, vec![q], Partition::P4_)
}

// ---------------------------------------------------------------------------
// λ = (1,1,1,1): the scalar coefficient on the alternating tensor
// ---------------------------------------------------------------------------

pub fn locus_000(w: &Tensor4) -> Scalar {
    let w0 = project_isotypic(w, Partition::P1111);
    // the normalized alternating tensor has coefficient 1 on x1x2x3x4
    w0.get(&[0, 1, 2, 3])
}

// ---------------------------------------------------------------------------
// shared machinery: models, orbits, matching
// ---------------------------------------------------------------------------

fn word_tensor(tower: &Tower, letters: &[u8]) -> Tensor4 {
    debug_assert!(letters.len() == 4);
    Tensor4::word(tower, [letters[0], letters[1], letters[2], letters[3]])
}

/// commutator 2-tensor embedded at slots (pos, pos+1): helper builds full
/// 4-tensors as products of two 2-tensors.
fn two_by_two(tower: &Tower, first: &[(u8, u8, i64)], second: &[(u8, u8, i64)]) -> Tensor4 {
    let mut out = Tensor4::zero(tower);
    for &(a, b, ca) in first {
        for &(c, d, cb) in second {
            let t = word_tensor(tower, &[a, b, c, d]).scale(&Scalar::from_int(tower, ca * cb));
            out = out.add(&t);
        }
    }
    out
}

fn comm_pairs(a: u8, b: u8) -> Vec<(u8, u8, i64)> {
    vec![(a, b, 1), (b, a, -1)]
}

fn sym_pairs(a: u8, b: u8) -> Vec<(u8, u8, i64)> {
    if a == b {
        vec![(a, b, 2)]
    } else {
        vec![(a, b, 1), (b, a, 1)]
    }
}

/// The ordered Plücker pairs (1-based paper order): b1=p12, b2=p13, b3=p14,
/// b4=p23, b5=p24, b6=p34 — zero-based here.
pub const PLUCKER_PAIRS: [(u8, u8); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// The 21 basis tensors S_i of Sym²(⋀²V) in the fixed pairing order, and
/// their quadric forms in the Plücker coordinates.
pub fn quadric_basis(tower: &Tower, gr_ring: &Ring) -> (Vec<Tensor4>, Vec<Poly>) {
    // E matrix entries as signed b-indices: E[a][b] = ± b_k
    let e_entry = |a: u8, b: u8| -> Option<(usize, i64)> {
        if a == b {
            return None;
        }
        let (lo, hi, sign) = if a < b { (a, b, 1) } else { (b, a, -1) };
        let k = PLUCKER_PAIRS.iter().position(|&p| p == (lo, hi)).unwrap();
        Some((k, sign))
    };
    let mut tensors = vec![];
    let mut quadrics = vec![];
    for jdx in 0..6 {
        for idx in 0..=jdx {
            let (i, j) = PLUCKER_PAIRS[jdx];
            let (k, l) = PLUCKER_PAIRS[idx];
            // tensor: c_ij⊗c_kl + c_li⊗c_jk + c_kl⊗c_ij + c_jk⊗c_li
            let mut t = two_by_two(tower, &comm_pairs(i, j), &comm_pairs(k, l));
            t = t.add(&two_by_two(tower, &comm_pairs(l, i), &comm_pairs(j, k)));
            t = t.add(&two_by_two(tower, &comm_pairs(k, l), &comm_pairs(i, j)));
            t = t.add(&two_by_two(tower, &comm_pairs(j, k), &comm_pairs(l, i)));
            tensors.push(t);
            // quadric: E[i,j]E[k,l] + E[l,i]E[j,k] + E[k,l]E[i,j] + E[j,k]E[l,i]
            let mut q = Poly::zero(gr_ring);
            for (p1, p2) in [((i, j), (k, l)), ((l, i), (j, k)), ((k, l), (i, j)), ((j, k), (l, i))]
            {
                let (Some((k1, s1)), Some((k2, s2))) =
                    (e_entry(p1.0, p1.1), e_entry(p2.0, p2.1))
                else {
                    continue;
                };
                let mut exp = crate::mpoly::Exp::from_elem(0, 6);
                exp[k1] += 1;
                exp[k2] += 1;
                q = q.add(&Poly::monomial(
                    gr_ring,
                    &exp,
                    Scalar::from_int(tower, s1 * s2),
                ));
            }
            quadrics.push(q);
        }
    }
    (tensors, quadrics)
}

/// The Lie-algebra element list used to sweep out orbits (Cartan elements,
/// lowering operators, a few products, and the identity).
fn lie_alg_list() -> Vec<Mat4> {
    let e21 = mat4_unit(1, 0);
    let e32 = mat4_unit(2, 1);
    let e43 = mat4_unit(3, 2);
    let e23 = mat4_unit(1, 2);
    let e1 = mat4_diag([1, 0, 0, -1]);
    let e2 = mat4_diag([1, -1, 0, 0]);
    let e3 = mat4_diag([0, 1, -1, 0]);
    let p1 = mat4_mul(&e43, &e32);
    let p2 = mat4_mul(&e32, &e21);
    let p3 = mat4_mul(&mat4_mul(&e43, &e32), &e21);
    let p4 = mat4_mul(&e23, &e32);
    vec![
        e21,
        e32,
        e43,
        e1,
        e2,
        e3,
        p1,
        p2,
        p3,
        p4,
        mat4_diag([1, 1, 1, 1]),
    ]
}

/// Orbit of a vector under words (length ≤ 4) in the Lie-algebra list,
/// tracked in parallel with a partner vector under the same words.
/// Returns (rank, list of (orbit vector, partner vector)).
fn paired_orbit(h: &Tensor4, partner: &Tensor4) -> (usize, Vec<(Tensor4, Tensor4)>, RowSpace) {
    let tower = h.tower.clone();
    let ops = lie_alg_list();
    let mut rs = RowSpace::new(&tower, 256);
    let mut pairs: Vec<(Tensor4, Tensor4)> = vec![];
    let mut frontier = vec![(h.clone(), partner.clone())];
    rs.insert(&h.to_vec());
    pairs.push((h.clone(), partner.clone()));
    for _depth in 0..4 {
        let mut next = vec![];
        for (a, b) in &frontier {
            for m in &ops {
                let na = coproduct_action(m, a);
                if na.is_zero() {
                    continue;
                }
                let nb = coproduct_action(m, b);
                if rs.insert(&na.to_vec()) {
                    next.push((na.clone(), nb.clone()));
                    pairs.push((na, nb));
                } else {
                    // dependent, but still counts for the well-definedness
                    // bookkeeping
                    pairs.push((na, nb));
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    (rs.rank(), pairs, rs)
}

/// Verify that the pairing (a_k → b_k) defines a linear map on span{a_k}:
/// the rank of the stacked (a|b) vectors must equal the rank of the a's.
fn pairing_well_defined(pairs: &[(Tensor4, Tensor4)], rank_a: usize) -> bool {
    if pairs.is_empty() {
        return true;
    }
    let tower = pairs[0].0.tower.clone();
    let mut rs = RowSpace::new(&tower, 512);
    for (a, b) in pairs {
        let mut v = a.to_vec();
        v.extend(b.to_vec());
        rs.insert(&v);
    }
    rs.rank() == rank_a
}

/// Apply the linear map defined by the paired orbit to a target vector in
/// span{a_k}: target = Σ c_k a_k ↦ Σ c_k b_k.
fn apply_pairing(
    pairs: &[(Tensor4, Tensor4)],
    rs: &RowSpace,
    target: &Tensor4,
) -> Option<Tensor4> {
    let _ = rs;
    let tower = target.tower.clone();
    let mut out = Tensor4::zero(&tower);
    // coordinates are indexed by insertion attempt; only independent
    // attempts can carry nonzero coefficients
    let mut rs2 = RowSpace::new(&tower, 256);
    let mut partner_of: Vec<Option<&Tensor4>> = vec![];
    for p in pairs {
        if rs2.insert(&p.0.to_vec()) {
            partner_of.push(Some(&p.1));
        } else {
            partner_of.push(None);
        }
    }
    let coords = rs2.coords(&target.to_vec())?;
    for (k, c) in coords.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        match partner_of[k] {
            Some(b) => out = out.add(&b.scale(c)),
            None => return None,
        }
    }
    Some(out)
}

/// Highest-weight vector in a span, filtered to a given letter-multiset
/// weight; expects a one-dimensional answer.
fn extremal_vector(span: &[Tensor4], weight: Option<[u8; 4]>) -> Result<Tensor4> {
    let hw = highest_weight_vectors(span);
    let filtered: Vec<Tensor4> = match weight {
        None => hw,
        Some(mult) => hw
            .into_iter()
            .filter(|t| {
                t.coeffs.keys().all(|w| {
                    let mut m = [0u8; 4];
                    for &l in w.iter() {
                        m[l as usize] += 1;
                    }
                    m == mult
                })
            })
            .collect(),
    };
    if filtered.len() != 1 {
        return Err(Error::Invalid(format!(
            "expected a unique extremal vector, found {}",
            filtered.len()
        )));
    }
    Ok(filtered[0].clone())
}

/// Basis of the image of a group-algebra projector chain applied to V⊗4
/// over ℚ, lifted to the given tower.
fn projector_image(
    tower: &Tower,
    projectors: &[&crate::tensor::PermAlgebraElem],
) -> Vec<Tensor4> {
    let q = crate::scalar::FieldTower::rationals();
    let mut rs = RowSpace::new(&q, 256);
    let mut basis = vec![];
    for w in crate::tensor::all_words() {
        let mut t = Tensor4::word(&q, w);
        for p in projectors {
            t = p.apply(&t);
        }
        if t.is_zero() {
            continue;
        }
        if rs.insert(&t.to_vec()) {
            basis.push(t.lift_to(tower).unwrap());
        }
    }
    basis
}

// ---------------------------------------------------------------------------
// λ = (2,2): quadric pair on Gr(2,4)
// ---------------------------------------------------------------------------

pub struct Locus020Detail {
    pub locus: Locus,
    pub h0: Tensor4,
    pub h1: Tensor4,
    pub h1_0: Tensor4,
    pub h1_1: Tensor4,
    pub orbit_ranks: [usize; 3],
    pub beta0: Poly,
    pub beta2: Poly,
}

pub fn locus_020(w: &Tensor4) -> Result<Locus> {
    Ok(locus_020_detail(w)?.locus)
}

pub fn locus_020_detail(w: &Tensor4) -> Result<Locus020Detail> {
    let tower = &w.tower;
    let ambient = AmbientModel::gr24(tower);
    let q = crate::scalar::FieldTower::rationals();

    // models over Q
    let (s_tensors_q, _) = quadric_basis(&q, &AmbientModel::gr24(&q).ring);
    let mut w1_span = vec![];
    for i in 0..4u8 {
        for j in i..4u8 {
            for k in 0..4u8 {
                for l in k..4u8 {
                    let t = two_by_two(&q, &sym_pairs(i, j), &sym_pairs(k, l));
                    let t = t.add(&two_by_two(&q, &sym_pairs(k, l), &sym_pairs(i, j)));
                    w1_span.push(t);
                }
            }
        }
    }
    // highest weight vectors with weight x3²x4² (letter multiset {2,2,3,3})
    let h0q = extremal_vector(&s_tensors_q, Some([0, 0, 2, 2]))?;
    let h1q = extremal_vector(&w1_span, Some([0, 0, 2, 2]))?;
    // match the printed normalization: lex-first coefficient −1 for h0, +1 for h1
    let h0q = h0q
        .normalized(Some(&Scalar::from_int(&q, -1)))
        .unwrap();
    let h1q = h1q.normalized(None).unwrap();

    let (e_l0, e_l2) = cyclic_idempotents();
    let h1_0q = e_l0.apply(&h1q);
    let h1_1q = e_l2.apply(&h1q);

    // orbits with partner h0 (rational), then lift
    let (r0, pairs0, rs0) = paired_orbit(&h1_0q, &h0q);
    let (r2, pairs2, rs2) = paired_orbit(&h1_1q, &h0q);
    let (r1, _, _) = paired_orbit(&h0q, &h0q);
    for (r, name) in [(r0, "M0"), (r1, "M1"), (r2, "M2")] {
        if r != 20 {
            return Err(Error::Invalid(format!(
                "orbit matrix {} has rank {}, expected 20",
                name, r
            )));
        }
    }
    if !pairing_well_defined(&pairs0, r0) || !pairing_well_defined(&pairs2, r2) {
        return Err(Error::Invalid(
            "model-matching system is inconsistent".into(),
        ));
    }

    // project the superpotential
    let w22 = project_isotypic(w, Partition::P22);
    if w22.is_zero() {
        return Ok(Locus020Detail {
            locus: Locus::zero(ambient, Partition::P22),
            h0: h0q,
            h1: h1q,
            h1_0: h1_0q,
            h1_1: h1_1q,
            orbit_ranks: [r0, r1, r2],
            beta0: Poly::zero(&AmbientModel::gr24(tower).ring),
            beta2: Poly::zero(&AmbientModel::gr24(tower).ring),
        });
    }
    let w_triv = e_l0.apply(&w22);
    let w_sign = e_l2.apply(&w22);

    // lift pair data to the tower
    let lift_pairs = |pairs: &[(Tensor4, Tensor4)]| -> (Vec<(Tensor4, Tensor4)>, RowSpace) {
        let mut out = vec![];
        let mut rs = RowSpace::new(tower, 256);
        for (a, b) in pairs {
            let la = a.lift_to(tower).unwrap();
            let lb = b.lift_to(tower).unwrap();
            rs.insert(&la.to_vec());
            out.push((la, lb));
        }
        (out, rs)
    };
    let (pairs0t, rs0t) = lift_pairs(&pairs0);
    let (pairs2t, rs2t) = lift_pairs(&pairs2);
    let _ = (rs0, rs2);

    let f0 = if w_triv.is_zero() {
        Tensor4::zero(tower)
    } else {
        apply_pairing(&pairs0t, &rs0t, &w_triv).ok_or_else(|| {
            Error::Invalid("trivial-character component lies outside the model orbit".into())
        })?
    };
    let f2 = if w_sign.is_zero() {
        Tensor4::zero(tower)
    } else {
        apply_pairing(&pairs2t, &rs2t, &w_sign).ok_or_else(|| {
            Error::Invalid("sign-character component lies outside the model orbit".into())
        })?
    };

    // express f0, f2 in the 21-element quadric basis
    let (s_tensors, s_quadrics) = quadric_basis(tower, &ambient.ring);
    let mut s_space = RowSpace::new(tower, 256);
    for s in &s_tensors {
        s_space.insert(&s.to_vec());
    }
    let expand = |f: &Tensor4| -> Result<Poly> {
        if f.is_zero() {
            return Ok(Poly::zero(&ambient.ring));
        }
        let coords = s_space.coords(&f.to_vec()).ok_or_else(|| {
            Error::Invalid("section does not lie in the quadric-basis span".into())
        })?;
        let mut q = Poly::zero(&ambient.ring);
        for (i, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                q = q.add(&s_quadrics[i].scale(c));
            }
        }
        Ok(q)
    };
    let beta0 = expand(&f0)?;
    let beta2 = expand(&f2)?;

    let locus = Locus::assemble(
        ambient,
        vec![beta0.clone(), beta2.clone()],
        Partition::P22,
    );
    Ok(Locus020Detail {
        locus,
        h0: h0q,
        h1: h1q,
        h1_0: h1_0q,
        h1_1: h1_1q,
        orbit_ranks: [r0, r1, r2],
        beta0,
        beta2,
    })
}

// ---------------------------------------------------------------------------
// λ = (2,1,1): three bilinear sections on F(1,3;4)
// ---------------------------------------------------------------------------

pub fn locus_101(w: &Tensor4) -> Result<Locus> {
    let tower = &w.tower;
    let ambient = AmbientModel::f13(tower);
    let w211 = project_isotypic(w, Partition::P211);
    if w211.is_zero() {
        return Ok(Locus::zero(ambient, Partition::P211));
    }
    let q = crate::scalar::FieldTower::rationals();

    // model: ⋀³V ⊗ V inside V⊗4 (alternator on the first three slots)
    let mut model_span = vec![];
    for a in 0..4u8 {
        for b in (a + 1)..4u8 {
            for c in (b + 1)..4u8 {
                // alternating sum over arrangements of (a,b,c)
                let mut alt = Tensor4::zero(&q);
                let perms3: [([usize; 3], i64); 6] = [
                    ([0, 1, 2], 1),
                    ([1, 2, 0], 1),
                    ([2, 0, 1], 1),
                    ([1, 0, 2], -1),
                    ([0, 2, 1], -1),
                    ([2, 1, 0], -1),
                ];
                let letters = [a, b, c];
                for d in 0..4u8 {
                    for (p, s) in perms3 {
                        let word = [letters[p[0]], letters[p[1]], letters[p[2]], d];
                        let t =
                            Tensor4::word(&q, word).scale(&Scalar::from_int(&q, s));
                        alt = alt.add(&t);
                    }
                    model_span.push(alt.clone());
                    alt = Tensor4::zero(&q);
                }
            }
        }
    }
    // extremal model vector: weight multiset {2,3,4,4} (one x2, one x3, two x4)
    let h_model = extremal_vector(&model_span, Some([0, 1, 1, 2]))?;

    let kleins = klein_idempotents();
    let e211 = crate::tensor::young_idempotent(Partition::P211);
    let mut sections = vec![];
    for ek in kleins.iter() {
        let piece_basis = projector_image(&q, &[&e211, ek]);
        if piece_basis.len() != 15 {
            return Err(Error::Invalid(format!(
                "Klein piece has dimension {}, expected 15",
                piece_basis.len()
            )));
        }
        let h_piece = extremal_vector(&piece_basis, None)?;
        let (rank, pairs, rs) = paired_orbit(&h_piece, &h_model);
        if rank != 15 {
            return Err(Error::Invalid(format!(
                "orbit rank {} for a Klein piece, expected 15",
                rank
            )));
        }
        if !pairing_well_defined(&pairs, rank) {
            return Err(Error::Invalid(
                "model-matching system is inconsistent".into(),
            ));
        }
        let wk = ek.apply(&w211);
        if wk.is_zero() {
            sections.push(Poly::zero(&ambient.ring));
            continue;
        }
        // lift and apply
        let mut pairs_t = vec![];
        let mut rs_t = RowSpace::new(tower, 256);
        for (a, b) in &pairs {
            let la = a.lift_to(tower).unwrap();
            let lb = b.lift_to(tower).unwrap();
            rs_t.insert(&la.to_vec());
            pairs_t.push((la, lb));
        }
        let _ = rs;
        let mk = apply_pairing(&pairs_t, &rs_t, &wk).ok_or_else(|| {
            Error::Invalid("Klein component lies outside the model orbit".into())
        })?;
        sections.push(bilinear_section(&ambient.ring, &mk)?);
    }
    if sections.iter().all(|s| s.is_zero()) {
        return Ok(Locus::zero(ambient, Partition::P211));
    }
    Ok(Locus::assemble(ambient, sections, Partition::P211))
}

/// Interpret a model tensor in ⋀³V⊗V as the bilinear form Σ A_dm x_d y_m,
/// contracting the alternating prefix with the dual coordinates. The
/// resulting coefficient matrix must be traceless.
fn bilinear_section(ring: &Ring, m: &Tensor4) -> Result<Poly> {
    let tower = &ring.tower;
    // γ for sorted triples: (234)→+y1, (134)→−y2, (124)→+y3, (123)→−y4
    let gamma = |p: u8, q_: u8, r: u8| -> Option<(usize, i64)> {
        let mut s = [p, q_, r];
        // permutation sign of sorting
        let mut sign = 1i64;
        for i in 0..3 {
            for j in (i + 1)..3 {
                if s[i] > s[j] {
                    s.swap(i, j);
                    sign = -sign;
                } else if s[i] == s[j] {
                    return None;
                }
            }
        }
        let (m_idx, base_sign) = match (s[0], s[1], s[2]) {
            (1, 2, 3) => (0, 1),
            (0, 2, 3) => (1, -1),
            (0, 1, 3) => (2, 1),
            (0, 1, 2) => (3, -1),
            _ => unreachable!(),
        };
        Some((m_idx, sign * base_sign))
    };
    let mut a = vec![vec![Scalar::zero(tower); 4]; 4]; // a[d][m] coefficient of x_d y_m
    for (word, c) in &m.coeffs {
        let Some((midx, s)) = gamma(word[0], word[1], word[2]) else {
            return Err(Error::Invalid(
                "model tensor has non-alternating prefix support".into(),
            ));
        };
        let d = word[3] as usize;
        let signed = if s < 0 { c.neg() } else { c.clone() };
        a[d][midx] = a[d][midx].add(&signed);
    }
    // tracelessness
    let mut trace = Scalar::zero(tower);
    for i in 0..4 {
        trace = trace.add(&a[i][i]);
    }
    if !trace.is_zero() {
        return Err(Error::Invalid("section matrix is not traceless".into()));
    }
    let mut out = Poly::zero(ring);
    for d in 0..4 {
        for m_ in 0..4 {
            if a[d][m_].is_zero() {
                continue;
            }
            let mut e = crate::mpoly::Exp::from_elem(0, 8);
            e[d] += 1;
            e[4 + m_] += 1;
            out = out.add(&Poly::monomial(ring, &e, a[d][m_].clone()));
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// λ = (3,1): three (2,1)-sections on F(1,2;4)
// ---------------------------------------------------------------------------

pub fn locus_210(w: &Tensor4) -> Result<Locus> {
    let tower = &w.tower;
    let ambient = AmbientModel::f12(tower);
    let w31 = project_isotypic(w, Partition::P31);
    if w31.is_zero() {
        return Ok(Locus::zero(ambient, Partition::P31));
    }
    let q = crate::scalar::FieldTower::rationals();

    // model: Sym²V ⊗ ⋀²V inside V⊗4
    let mut model_span = vec![];
    for a in 0..4u8 {
        for b in a..4u8 {
            for (c, d) in PLUCKER_PAIRS {
                let t = two_by_two(&q, &sym_pairs(a, b), &comm_pairs(c, d));
                model_span.push(t);
            }
        }
    }
    // extremal vector of the S_(3,1) copy: weight multiset {3,4,4,4}
    let h_model = extremal_vector(&model_span, Some([0, 0, 1, 3]))?;

    let kleins = klein_idempotents();
    let e31 = crate::tensor::young_idempotent(Partition::P31);
    let mut sections = vec![];
    for ek in kleins.iter() {
        let piece_basis = projector_image(&q, &[&e31, ek]);
        if piece_basis.len() != 45 {
            return Err(Error::Invalid(format!(
                "Klein piece has dimension {}, expected 45",
                piece_basis.len()
            )));
        }
        let h_piece = extremal_vector(&piece_basis, None)?;
        let (rank, pairs, _rs) = paired_orbit(&h_piece, &h_model);
        if rank != 45 {
            return Err(Error::Invalid(format!(
                "orbit rank {} for a Klein piece, expected 45",
                rank
            )));
        }
        if !pairing_well_defined(&pairs, rank) {
            return Err(Error::Invalid(
                "model-matching system is inconsistent".into(),
            ));
        }
        let wk = ek.apply(&w31);
        if wk.is_zero() {
            sections.push(Poly::zero(&ambient.ring));
            continue;
        }
        let mut pairs_t = vec![];
        let mut rs_t = RowSpace::new(tower, 256);
        for (a, b) in &pairs {
            let la = a.lift_to(tower).unwrap();
            let lb = b.lift_to(tower).unwrap();
            rs_t.insert(&la.to_vec());
            pairs_t.push((la, lb));
        }
        let mk = apply_pairing(&pairs_t, &rs_t, &wk).ok_or_else(|| {
            Error::Invalid("Klein component lies outside the model orbit".into())
        })?;
        sections.push(sym_pl_section(&ambient.ring, &mk));
    }
    if sections.iter().all(|s| s.is_zero()) {
        return Ok(Locus::zero(ambient, Partition::P31));
    }
    Ok(Locus::assemble(ambient, sections, Partition::P31))
}

/// Interpret a model tensor in Sym²V⊗⋀²V as the (2,1)-form
/// Σ m[(a,b,c,d)] x_a x_b β_{cd}.
fn sym_pl_section(ring: &Ring, m: &Tensor4) -> Poly {
    let tower = &ring.tower;
    let mut out = Poly::zero(ring);
    for (word, c) in &m.coeffs {
        let (a, b, cc, dd) = (word[0], word[1], word[2], word[3]);
        if cc == dd {
            continue;
        }
        let (lo, hi, sign) = if cc < dd {
            (cc, dd, 1)
        } else {
            (dd, cc, -1)
        };
        let k = PLUCKER_PAIRS.iter().position(|&p| p == (lo, hi)).unwrap();
        let mut e = crate::mpoly::Exp::from_elem(0, 10);
        e[a as usize] += 1;
        e[b as usize] += 1;
        e[4 + k] += 1;
        let coef = if sign < 0 { c.neg() } else { c.clone() };
        out = out.add(&Poly::monomial(ring, &e, coef.mul(&Scalar::one(tower))));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::load_builtin;
    use crate::superpotential::compute_superpotential;

    fn h_superpotential() -> Tensor4 {
        let spec = load_builtin("algebra-H").unwrap();
        compute_superpotential(&spec.relation_space().unwrap())
            .unwrap()
            .w
    }

    fn polyring_superpotential() -> Tensor4 {
        let spec = load_builtin("polyring").unwrap();
        compute_superpotential(&spec.relation_space().unwrap())
            .unwrap()
            .w
    }

    #[test]
    fn printed_highest_weight_vectors() {
        let w = polyring_superpotential();
        let detail = locus_020_detail(&w).unwrap();
        let q = crate::scalar::FieldTower::rationals();
        // h0 = −x3x4x3x4 + x3x4x4x3 + x4x3x3x4 − x4x3x4x3
        let mut h0 = Tensor4::zero(&q);
        h0.set([2, 3, 2, 3], Scalar::from_int(&q, -1));
        h0.set([2, 3, 3, 2], Scalar::from_int(&q, 1));
        h0.set([3, 2, 2, 3], Scalar::from_int(&q, 1));
        h0.set([3, 2, 3, 2], Scalar::from_int(&q, -1));
        assert_eq!(detail.h0, h0);
        // h1 = x3x3x4x4 − ½x3x4x3x4 − ½x3x4x4x3 − ½x4x3x3x4 − ½x4x3x4x3 + x4x4x3x3
        let half = |n: i64| Scalar::from_qq(&q, crate::mpoly::qq_frac(n, 2));
        let mut h1 = Tensor4::zero(&q);
        h1.set([2, 2, 3, 3], Scalar::from_int(&q, 1));
        h1.set([2, 3, 2, 3], half(-1));
        h1.set([2, 3, 3, 2], half(-1));
        h1.set([3, 2, 2, 3], half(-1));
        h1.set([3, 2, 3, 2], half(-1));
        h1.set([3, 3, 2, 2], Scalar::from_int(&q, 1));
        assert_eq!(detail.h1, h1);
        // h1^0 = ¼x3x3x4x4 − ½x3x4x3x4 + ¼x3x4x4x3 + ¼x4x3x3x4 − ½x4x3x4x3 + ¼x4x4x3x3
        let quarter = |n: i64| Scalar::from_qq(&q, crate::mpoly::qq_frac(n, 4));
        let mut h10 = Tensor4::zero(&q);
        h10.set([2, 2, 3, 3], quarter(1));
        h10.set([2, 3, 2, 3], half(-1));
        h10.set([2, 3, 3, 2], quarter(1));
        h10.set([3, 2, 2, 3], quarter(1));
        h10.set([3, 2, 3, 2], half(-1));
        h10.set([3, 3, 2, 2], quarter(1));
        assert_eq!(detail.h1_0, h10);
        // h1^1 = ¾x3x3x4x4 − ¾x3x4x4x3 − ¾x4x3x3x4 + ¾x4x4x3x3
        let mut h11 = Tensor4::zero(&q);
        h11.set([2, 2, 3, 3], quarter(3));
        h11.set([2, 3, 3, 2], quarter(-3));
        h11.set([3, 2, 2, 3], quarter(-3));
        h11.set([3, 3, 2, 2], quarter(3));
        assert_eq!(detail.h1_1, h11);
        assert_eq!(detail.orbit_ranks, [20, 20, 20]);
    }

    #[test]
    fn phi_maps_h1_components_to_h0() {
        // φ₁⁰(h₁⁰) = h₀ and φ₁¹(h₁¹) = h₀ by the paired-orbit construction
        let w = polyring_superpotential();
        let detail = locus_020_detail(&w).unwrap();
        let q = crate::scalar::FieldTower::rationals();
        let (rank0, pairs0, rs0) = super::paired_orbit(&detail.h1_0, &detail.h0);
        assert_eq!(rank0, 20);
        let f = super::apply_pairing(&pairs0, &rs0, &detail.h1_0).unwrap();
        assert_eq!(f, detail.h0);
        let (rank2, pairs2, rs2) = super::paired_orbit(&detail.h1_1, &detail.h0);
        assert_eq!(rank2, 20);
        let f = super::apply_pairing(&pairs2, &rs2, &detail.h1_1).unwrap();
        assert_eq!(f, detail.h0);
        let _ = q;
    }

    #[test]
    fn polyring_loci_vanish() {
        let w = polyring_superpotential();
        assert!(locus_400(&w).zero_flag);
        assert!(locus_020(&w).unwrap().zero_flag);
        assert!(locus_101(&w).unwrap().zero_flag);
        assert!(locus_210(&w).unwrap().zero_flag);
        assert!(!locus_000(&w).is_zero());
    }

    #[test]
    fn algebra_h_locus_shapes() {
        let w = h_superpotential();
        let l400 = locus_400(&w);
        assert!(!l400.zero_flag);
        assert_eq!(l400.sections.len(), 1);
        assert_eq!(l400.sections[0].total_degree(), 4);
        assert!(locus_000(&w).is_zero());

        let l020 = locus_020(&w).unwrap();
        assert!(!l020.zero_flag);
        assert_eq!(l020.sections.len(), 2);
        // Q_Gr appears verbatim
        let qgr = crate::polyring::parse_poly(&l020.ambient.ring, "b1*b6 - b2*b5 + b3*b4")
            .unwrap();
        assert!(l020.ideal.gens.contains(&qgr));
        for s in &l020.sections {
            assert!(!s.is_zero());
            assert_eq!(s.total_degree(), 2);
        }

        let l101 = locus_101(&w).unwrap();
        assert!(!l101.zero_flag);
        assert_eq!(l101.sections.len(), 3);
        for s in &l101.sections {
            assert!(!s.is_zero());
            assert!(s.is_block_homogeneous());
        }

        let l210 = locus_210(&w).unwrap();
        assert!(!l210.zero_flag);
        assert_eq!(l210.sections.len(), 3);
    }
}
