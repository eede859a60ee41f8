//! From quadratic relations to the twisted superpotential: the triple
//! intersection, the Nakayama matrix, the derivation-quotient round trip,
//! and the Koszul-dual Frobenius signature.

use crate::error::{Error, Result};
use crate::linalg::{Mat, RowSpace};
use crate::scalar::{Scalar, Tower};
use crate::tensor::{cyclic_phi, left_partial2, Tensor4};

/// A 6-dimensional space of quadratic relations in V⊗2, presentation order
/// preserved. Each basis vector is a dense 16-vector indexed by the pair
/// (first letter, second letter) as 4*a + b.
#[derive(Clone, Debug)]
pub struct RelationSpace {
    pub tower: Tower,
    pub basis: Vec<Vec<Scalar>>,
}

pub fn pair_index(a: u8, b: u8) -> usize {
    (a as usize) * 4 + b as usize
}

impl RelationSpace {
    pub fn new(tower: &Tower, basis: Vec<Vec<Scalar>>) -> Result<Self> {
        for b in &basis {
            if b.len() != 16 {
                return Err(Error::Invalid("relation vectors must have length 16".into()));
            }
        }
        let rs = RelationSpace {
            tower: tower.clone(),
            basis,
        };
        Ok(rs)
    }

    pub fn rank(&self) -> usize {
        let mut rs = RowSpace::new(&self.tower, 16);
        for b in &self.basis {
            rs.insert(b);
        }
        rs.rank()
    }

    /// row-reduced span for membership tests
    fn row_space(&self) -> RowSpace {
        let mut rs = RowSpace::new(&self.tower, 16);
        for b in &self.basis {
            rs.insert(b);
        }
        rs
    }

    /// Same span as another relation space?
    pub fn same_span(&self, o: &RelationSpace) -> bool {
        let a = self.row_space();
        if o.basis.iter().any(|v| !a.contains(v)) {
            return false;
        }
        let b = o.row_space();
        self.basis.iter().all(|v| b.contains(v))
    }
}

#[derive(Clone, Debug)]
pub struct SuperpotentialResult {
    pub w: Tensor4,
    /// 4×4 Nakayama matrix (row-substitution convention)
    pub nakayama: Vec<Vec<Scalar>>,
    pub intersection_dimension: usize,
    /// dimension of the solution space for the Nakayama system beyond the
    /// chosen representative
    pub mu_ambiguity: usize,
}

/// Intersection ⋂_{i=0..n-2} V^i ⊗ R ⊗ V^(n-2-i) computed degree by degree:
/// returns bases of W_2 = R, W_3, …, W_top as dense coefficient vectors of
/// length 4^k.
pub fn intersection_tower(rel: &RelationSpace, top: usize) -> Vec<Vec<Vec<Scalar>>> {
    let tower = &rel.tower;
    let rspace = rel.row_space();
    let mut levels: Vec<Vec<Vec<Scalar>>> = vec![rel.basis.clone()];
    let mut dim_prev = 4usize * 4;
    for _k in 3..=top {
        let prev = levels.last().unwrap();
        let dim_k = dim_prev * 4;
        // candidates: span of prev ⊗ V  (each prev vector extended by a last
        // letter); impose that fixing the first k-2 letters lands in R
        let ncand = prev.len() * 4;
        // constraint rows: for x = Σ c_{jd} prev_j ⊗ e_d, for every prefix p
        // of length k-2 the 16-slice must lie in R.
        let mut rows: Vec<Vec<Scalar>> = vec![];
        let nprefix = dim_k / 16;
        for prefix in 0..nprefix {
            // slice of candidate (j, d): vector over pair (a,b) of
            // prev_j[prefix-part .. a] δ_{b,d}  — assemble per candidate
            let mut slice_vecs: Vec<Vec<Scalar>> = Vec::with_capacity(ncand);
            for pj in prev.iter() {
                for d in 0..4usize {
                    let mut s = vec![Scalar::zero(tower); 16];
                    // positions of x: index = prefix * 16 + a*4 + b where the
                    // word is (prefix letters, a, b); x[(prefix, a, b)] =
                    // prev_j[(prefix, a)] * δ_{b, d}
                    for a in 0..4usize {
                        let idx_prev = prefix * 4 + a;
                        if idx_prev < pj.len() && !pj[idx_prev].is_zero() {
                            s[a * 4 + d] = pj[idx_prev].clone();
                        }
                    }
                    slice_vecs.push(s);
                }
            }
            // residual of each slice against R gives linear conditions; we
            // want: Σ c_t slice_t ∈ R. Reduce the slice matrix modulo R's
            // row space: conditions are the coordinates of the residuals.
            // Build the residual matrix and take its kernel below; here we
            // append rows (one per non-R direction) lazily: instead, stack
            // "slice coordinates after eliminating R" — equivalently solve
            // kernel of M where M maps c to residual(Σ c_t slice_t).
            // Residual via projection: res(v) = v - proj_R(v); we use the
            // R row space to reduce.
            let reduced: Vec<Vec<Scalar>> = slice_vecs
                .iter()
                .map(|v| residual_mod(&rspace, v))
                .collect();
            // transpose into condition rows (16 coordinates)
            for coord in 0..16 {
                if reduced.iter().all(|r| r[coord].is_zero()) {
                    continue;
                }
                rows.push(reduced.iter().map(|r| r[coord].clone()).collect());
            }
        }
        let kernel = if rows.is_empty() {
            Mat::identity(tower, ncand)
                .a
                .into_iter()
                .collect::<Vec<_>>()
        } else {
            Mat::from_rows(tower, rows).kernel()
        };
        // materialize kernel vectors as dense degree-k tensors
        let mut basis_k: Vec<Vec<Scalar>> = vec![];
        for kv in kernel {
            let mut dense = vec![Scalar::zero(tower); dim_k];
            for (t, c) in kv.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let j = t / 4;
                let d = t % 4;
                for (idx_prev, pc) in prev[j].iter().enumerate() {
                    if !pc.is_zero() {
                        let idx = idx_prev * 4 + d;
                        dense[idx] = dense[idx].add(&pc.mul(c));
                    }
                }
            }
            basis_k.push(dense);
        }
        levels.push(basis_k);
        dim_prev = dim_k;
    }
    levels
}

fn residual_mod(space: &RowSpace, v: &[Scalar]) -> Vec<Scalar> {
    // reduce v against the row space; the coords call performs exactly the
    // reduction, so re-derive the residual directly
    space.residual(v)
}

/// Compute the twisted superpotential of a rank-6 relation space.
pub fn compute_superpotential(rel: &RelationSpace) -> Result<SuperpotentialResult> {
    if rel.rank() != 6 {
        return Err(Error::Invalid(format!(
            "relation space has rank {}, expected 6",
            rel.rank()
        )));
    }
    let tower = &rel.tower;
    let levels = intersection_tower(rel, 4);
    let w4 = &levels[2];
    let dim = w4.len();
    if dim == 0 {
        return Err(Error::Invalid(
            "triple intersection is zero: relations do not define a type-(14641) algebra".into(),
        ));
    }
    if dim > 1 {
        return Err(Error::Invalid(format!(
            "triple intersection has dimension {}: degenerate input",
            dim
        )));
    }
    let mut w = Tensor4::zero(tower);
    for (i, c) in w4[0].iter().enumerate() {
        if !c.is_zero() {
            let word = [
                ((i >> 6) & 3) as u8,
                ((i >> 4) & 3) as u8,
                ((i >> 2) & 3) as u8,
                (i & 3) as u8,
            ];
            w.coeffs.insert(word, c.clone());
        }
    }
    let w = w.normalized(None).unwrap();

    // Nakayama: (μ ⊗ id³) φ(w) = w, acting on the first slot by rows.
    let phi_w = cyclic_phi(&w);
    // for column a: Σ_e μ[e][a] φw[(e,b,c,d)] = w[(a,b,c,d)]
    let mut rows = vec![];
    let mut rhs_cols: Vec<Vec<Scalar>> = vec![vec![]; 4];
    for b in 0..4u8 {
        for c in 0..4u8 {
            for d in 0..4u8 {
                let row: Vec<Scalar> = (0..4u8).map(|e| phi_w.get(&[e, b, c, d])).collect();
                if row.iter().all(|x| x.is_zero())
                    && (0..4u8).all(|a| w.get(&[a, b, c, d]).is_zero())
                {
                    continue;
                }
                rows.push(row);
                for a in 0..4u8 {
                    rhs_cols[a as usize].push(w.get(&[a, b, c, d]));
                }
            }
        }
    }
    let m = Mat::from_rows(tower, rows);
    let kernel_dim = m.cols - m.rank();
    let mut mu = vec![vec![Scalar::zero(tower); 4]; 4];
    for a in 0..4 {
        let col = m.solve(&rhs_cols[a]).ok_or_else(|| {
            Error::Invalid("no Nakayama matrix exists: w is not a twisted superpotential".into())
        })?;
        for e in 0..4 {
            mu[e][a] = col[e].clone();
        }
    }
    // invertibility check
    let mu_mat = Mat::from_rows(tower, mu.clone());
    if mu_mat.inverse().is_none() {
        return Err(Error::Invalid(
            "Nakayama matrix is singular: w is not a twisted superpotential".into(),
        ));
    }
    Ok(SuperpotentialResult {
        w,
        nakayama: mu,
        intersection_dimension: dim,
        mu_ambiguity: 4 * kernel_dim,
    })
}

/// The span of the 16 second-order left partials of w.
pub fn derivation_quotient_relations(w: &Tensor4) -> RelationSpace {
    let tower = &w.tower;
    let mut basis = vec![];
    let mut rs = RowSpace::new(tower, 16);
    for i in 0..4u8 {
        for j in 0..4u8 {
            let d = left_partial2(w, i, j);
            let mut v = vec![Scalar::zero(tower); 16];
            for (suf, c) in &d.coeffs {
                v[pair_index(suf[0], suf[1])] = c.clone();
            }
            if rs.insert(&v) {
                basis.push(v);
            }
        }
    }
    RelationSpace {
        tower: tower.clone(),
        basis,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct KoszulSignature {
    pub dims: Vec<usize>,
    pub frobenius_ok: bool,
    /// first degree where the expected dimension fails, if any
    pub failing_degree: Option<usize>,
}

/// Graded dimensions of the Koszul dual in degrees 0..=5 and the Frobenius
/// pairing verdict.
pub fn koszul_dual_signature(rel: &RelationSpace) -> Result<KoszulSignature> {
    if rel.rank() != 6 {
        return Err(Error::Invalid("relation space must have rank 6".into()));
    }
    let tower = &rel.tower;
    let levels = intersection_tower(rel, 4);
    let w3 = &levels[1];
    let w4 = &levels[2];
    let mut dims = vec![1, 4, 6, w3.len(), w4.len()];
    // degree 5: (W4 ⊗ V) ∩ (V ⊗ W4)
    let dim5 = if w4.len() == 1 {
        let w = &w4[0];
        // x = Σ_d a_d (w ⊗ e_d) = Σ_e b_e (e_e ⊗ w): compare coefficients:
        // a_d w[(p)] at word (p,d); b_e w[(q)] at word (e,q).
        // Solve the 8-unknown homogeneous system.
        let mut rows: Vec<Vec<Scalar>> = vec![];
        for idx in 0..1024usize {
            let first = idx >> 8; // leading letter
            let last = idx & 3;
            let head = idx >> 2; // word without last letter (length 4 index)
            let tail = idx & 255; // word without first letter
            let lhs = &w[head]; // coefficient of (head, d=last): a_last * w[head]
            let rhs = &w[tail]; // b_first * w[tail]
            if lhs.is_zero() && rhs.is_zero() {
                continue;
            }
            let mut row = vec![Scalar::zero(tower); 8];
            row[last] = lhs.clone();
            row[4 + first] = rhs.neg();
            rows.push(row);
        }
        if rows.is_empty() {
            8
        } else {
            let kernel = Mat::from_rows(tower, rows).kernel();
            // a solution (a, b) describes one degree-5 element; the element
            // is zero only if a = 0 (then b = 0 too); count the dimension of
            // the image space { Σ a_d w⊗e_d }
            kernel
                .iter()
                .filter(|k| k[..4].iter().any(|x| !x.is_zero()))
                .count()
        }
    } else {
        0
    };
    dims.push(dim5);

    let expected = [1usize, 4, 6, 4, 1, 0];
    let failing_degree = dims
        .iter()
        .zip(expected.iter())
        .position(|(a, b)| a != b);

    let mut frobenius_ok = failing_degree.is_none();
    if frobenius_ok {
        // pairing A1 × A3 → A4: coefficient matrix of w in V ⊗ W3
        let w = &w4[0];
        let mut w3_space = RowSpace::new(tower, 64);
        let mut w3_basis = vec![];
        for v in w3 {
            if w3_space.insert(v) {
                w3_basis.push(v.clone());
            }
        }
        let mut c13 = vec![];
        let mut ok = true;
        for a in 0..4usize {
            let slice: Vec<Scalar> = (0..64).map(|t| w[a * 64 + t].clone()).collect();
            match w3_space.coords(&slice) {
                Some(coords) => c13.push(coords),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok || Mat::from_rows(tower, c13).rank() != 4 {
            frobenius_ok = false;
        }
        if frobenius_ok {
            // pairing A2 × A2: w ∈ R ⊗ R; coordinates in r_i ⊗ r_j
            let rbasis = independent_basis(tower, &rel.basis);
            let mut prods: Vec<Vec<Scalar>> = vec![];
            for ri in &rbasis {
                for rj in &rbasis {
                    let mut v = vec![Scalar::zero(tower); 256];
                    for (p, cp) in ri.iter().enumerate() {
                        if cp.is_zero() {
                            continue;
                        }
                        for (q, cq) in rj.iter().enumerate() {
                            if !cq.is_zero() {
                                v[p * 16 + q] = cp.mul(cq);
                            }
                        }
                    }
                    prods.push(v);
                }
            }
            let mut prod_space = RowSpace::new(tower, 256);
            for p in &prods {
                prod_space.insert(p);
            }
            match prod_space.coords(w) {
                Some(coords) => {
                    // coords refer to inserted product vectors in order
                    let mut c22 = vec![vec![Scalar::zero(tower); 6]; 6];
                    for (t, c) in coords.iter().enumerate() {
                        c22[t / 6][t % 6] = c.clone();
                    }
                    if Mat::from_rows(tower, c22).rank() != 6 {
                        frobenius_ok = false;
                    }
                }
                None => frobenius_ok = false,
            }
        }
    }
    Ok(KoszulSignature {
        dims,
        frobenius_ok,
        failing_degree,
    })
}

fn independent_basis(tower: &Tower, vecs: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let mut rs = RowSpace::new(tower, vecs.first().map(|v| v.len()).unwrap_or(0));
    let mut out = vec![];
    for v in vecs {
        if rs.insert(v) {
            out.push(v.clone());
        }
    }
    out
}

/// Verify the defining identity (μ ⊗ id³) φ(w) = w.
pub fn verify_twisted_identity(res: &SuperpotentialResult) -> bool {
    let tower = &res.w.tower;
    let phi_w = cyclic_phi(&res.w);
    let mut out = Tensor4::zero(tower);
    for (word, c) in &phi_w.coeffs {
        let e = word[0] as usize;
        for a in 0..4usize {
            if res.nakayama[e][a].is_zero() {
                continue;
            }
            let mut nw = *word;
            nw[0] = a as u8;
            out.add_to(nw, &c.mul(&res.nakayama[e][a]));
        }
    }
    out == res.w
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::FieldTower;
    use crate::tensor::{all_perms, sign, Tensor4};

    /// commutator relations x_i x_j − x_j x_i, i < j
    pub fn commutator_relations(tower: &Tower) -> RelationSpace {
        let mut basis = vec![];
        for i in 0..4u8 {
            for j in (i + 1)..4u8 {
                let mut v = vec![Scalar::zero(tower); 16];
                v[pair_index(i, j)] = Scalar::one(tower);
                v[pair_index(j, i)] = Scalar::from_int(tower, -1);
                basis.push(v);
            }
        }
        RelationSpace::new(tower, basis).unwrap()
    }

    /// skew relations x_i x_j − q_ij x_j x_i over Q(q12..q34), i < j
    pub fn skew_relations(tower: &Tower) -> RelationSpace {
        let mut basis = vec![];
        let mut p = 0usize;
        for i in 0..4u8 {
            for j in (i + 1)..4u8 {
                let mut v = vec![Scalar::zero(tower); 16];
                v[pair_index(i, j)] = Scalar::one(tower);
                v[pair_index(j, i)] = Scalar::param(tower, p).neg();
                basis.push(v);
                p += 1;
            }
        }
        RelationSpace::new(tower, basis).unwrap()
    }

    #[test]
    fn polynomial_ring_superpotential() {
        let t = FieldTower::rationals();
        let rel = commutator_relations(&t);
        let res = compute_superpotential(&rel).unwrap();
        assert_eq!(res.intersection_dimension, 1);
        // 24 words, alternating signs; normalized lex-first (x1x2x3x4) = 1
        assert_eq!(res.w.coeffs.len(), 24);
        for g in all_perms() {
            let mut word = [0u8; 4];
            for i in 0..4 {
                word[g[i] as usize] = i as u8;
            }
            let expect = Scalar::from_int(&t, sign(&g));
            assert_eq!(res.w.get(&word), expect, "word {:?}", word);
        }
        // μ = identity
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(res.nakayama[i][j].is_one(), i == j);
            }
        }
        assert!(verify_twisted_identity(&res));
        // derivation-quotient round trip
        let back = derivation_quotient_relations(&res.w);
        assert_eq!(back.rank(), 6);
        assert!(back.same_span(&rel));
    }

    #[test]
    fn skew_ring_superpotential() {
        let t = FieldTower::with_params(&["q12", "q13", "q14", "q23", "q24", "q34"]);
        let rel = skew_relations(&t);
        let res = compute_superpotential(&rel).unwrap();
        assert_eq!(res.intersection_dimension, 1);
        assert!(verify_twisted_identity(&res));
        // w is supported exactly on the 24 permutation words
        assert_eq!(res.w.coeffs.len(), 24);
        let alpha = |w: [u8; 4]| -> Scalar {
            // α_σ with the sign convention w = Σ (−1)^σ α_σ x_σ(1..4)
            let mut g = [0u8; 4];
            for i in 0..4 {
                g[i] = w[i];
            }
            let s = sign(&g);
            let c = res.w.get(&w);
            if s < 0 {
                c.neg()
            } else {
                c
            }
        };
        let q = |i: u8, j: u8| -> Scalar {
            // q_{ij} for i < j is the corresponding parameter
            let idx = match (i, j) {
                (0, 1) => 0,
                (0, 2) => 1,
                (0, 3) => 2,
                (1, 2) => 3,
                (1, 3) => 4,
                (2, 3) => 5,
                _ => unreachable!(),
            };
            Scalar::param(&t, idx)
        };
        // the slice conditions force α_{klji} = q_ij · α_{klij} for every
        // arrangement (k,l) of the complementary letters; with q extended by
        // q_ji = 1/q_ij this is the ratio identity q_ij = α_{klij}/α_{klji}
        // read against the relation orientation.
        for i in 0..4u8 {
            for j in (i + 1)..4u8 {
                let rest: Vec<u8> = (0..4u8).filter(|&x| x != i && x != j).collect();
                for (k, l) in [(rest[0], rest[1]), (rest[1], rest[0])] {
                    let lhs = alpha([k, l, j, i]);
                    let rhs = q(i, j).mul(&alpha([k, l, i, j]));
                    assert_eq!(lhs, rhs, "i={} j={} k={} l={}", i, j, k, l);
                }
            }
        }
        // α_{iklj} α_{kijl} = α_{kilj} α_{ikjl} on all index choices
        for perm in all_perms() {
            let (i, k, l, j) = (perm[0], perm[1], perm[2], perm[3]);
            let lhs = alpha([i, k, l, j]).mul(&alpha([k, i, j, l]));
            let rhs = alpha([k, i, l, j]).mul(&alpha([i, k, j, l]));
            assert_eq!(lhs, rhs);
        }
        // round trip
        let back = derivation_quotient_relations(&res.w);
        assert!(back.same_span(&rel));
    }

    #[test]
    fn koszul_signature_polyring() {
        let t = FieldTower::rationals();
        let rel = commutator_relations(&t);
        let sig = koszul_dual_signature(&rel).unwrap();
        assert_eq!(sig.dims, vec![1, 4, 6, 4, 1, 0]);
        assert!(sig.frobenius_ok);
        assert_eq!(sig.failing_degree, None);
    }

    #[test]
    fn koszul_signature_random_fails() {
        // a random 6-dimensional R almost surely has trivial intersection
        let t = FieldTower::rationals();
        let mut rng = crate::rng::Rng::new(17);
        let mut basis = vec![];
        for _ in 0..6 {
            let v: Vec<Scalar> = (0..16)
                .map(|_| Scalar::from_int(&t, rng.int_in(9)))
                .collect();
            basis.push(v);
        }
        let rel = RelationSpace::new(&t, basis).unwrap();
        if rel.rank() == 6 {
            let sig = koszul_dual_signature(&rel).unwrap();
            assert!(!sig.frobenius_ok);
            assert!(sig.failing_degree.is_some());
            assert!(compute_superpotential(&rel).is_err());
        }
    }

    #[test]
    fn scale_and_basis_invariance() {
        let t = FieldTower::rationals();
        let rel = commutator_relations(&t);
        let w0 = compute_superpotential(&rel).unwrap().w;
        // scale one basis vector
        let mut scaled = rel.basis.clone();
        for x in scaled[2].iter_mut() {
            *x = x.mul(&Scalar::from_int(&t, 7));
        }
        let rel2 = RelationSpace::new(&t, scaled).unwrap();
        assert_eq!(compute_superpotential(&rel2).unwrap().w, w0);
        // random invertible recombination
        let mut rng = crate::rng::Rng::new(3);
        loop {
            let mut mixed = vec![vec![Scalar::zero(&t); 16]; 6];
            for i in 0..6 {
                for j in 0..6 {
                    let c = Scalar::from_int(&t, rng.int_in(2));
                    if !c.is_zero() {
                        for k in 0..16 {
                            mixed[i][k] = mixed[i][k].add(&c.mul(&rel.basis[j][k]));
                        }
                    }
                }
            }
            let rel3 = RelationSpace::new(&t, mixed).unwrap();
            if rel3.rank() == 6 {
                assert_eq!(compute_superpotential(&rel3).unwrap().w, w0);
                break;
            }
        }
    }

    #[test]
    fn zero_tensor_derivations() {
        let t = FieldTower::rationals();
        let w = Tensor4::zero(&t);
        let rel = derivation_quotient_relations(&w);
        assert_eq!(rel.rank(), 0);
    }
}
