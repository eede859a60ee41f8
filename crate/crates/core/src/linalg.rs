//! Dense exact linear algebra over a scalar tower.

use crate::scalar::{Scalar, Tower};

#[derive(Clone, Debug)]
pub struct Mat {
    pub tower: Tower,
    pub rows: usize,
    pub cols: usize,
    pub a: Vec<Vec<Scalar>>,
}

impl Mat {
    pub fn zero(tower: &Tower, rows: usize, cols: usize) -> Self {
        Mat {
            tower: tower.clone(),
            rows,
            cols,
            a: vec![vec![Scalar::zero(tower); cols]; rows],
        }
    }

    pub fn identity(tower: &Tower, n: usize) -> Self {
        let mut m = Self::zero(tower, n, n);
        for i in 0..n {
            m.a[i][i] = Scalar::one(tower);
        }
        m
    }

    pub fn from_rows(tower: &Tower, rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        assert!(rows.iter().all(|x| x.len() == c));
        Mat {
            tower: tower.clone(),
            rows: r,
            cols: c,
            a: rows,
        }
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zero(&self.tower, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.a[j][i] = self.a[i][j].clone();
            }
        }
        t
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows);
        let mut m = Mat::zero(&self.tower, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.a[i][k].is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    if o.a[k][j].is_zero() {
                        continue;
                    }
                    let t = self.a[i][k].mul(&o.a[k][j]);
                    m.a[i][j] = m.a[i][j].add(&t);
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero(&self.tower);
                for j in 0..self.cols {
                    if !self.a[i][j].is_zero() && !v[j].is_zero() {
                        acc = acc.add(&self.a[i][j].mul(&v[j]));
                    }
                }
                acc
            })
            .collect()
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    /// Pivot choice prefers structurally small entries to limit coefficient
    /// growth over rational-function fields.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = vec![];
        let mut row = 0;
        for col in 0..self.cols {
            if row >= self.rows {
                break;
            }
            // find best pivot in this column
            let mut best: Option<(usize, u64)> = None;
            for r in row..self.rows {
                if self.a[r][col].is_zero() {
                    continue;
                }
                let w = scalar_weight(&self.a[r][col]);
                match best {
                    None => best = Some((r, w)),
                    Some((_, bw)) if w < bw => best = Some((r, w)),
                    _ => {}
                }
            }
            let Some((prow, _)) = best else { continue };
            self.a.swap(row, prow);
            // normalize pivot row
            let inv = self.a[row][col].inv().expect("pivot nonzero");
            for j in col..self.cols {
                if !self.a[row][j].is_zero() {
                    self.a[row][j] = self.a[row][j].mul(&inv);
                }
            }
            // eliminate everywhere else
            for r in 0..self.rows {
                if r == row || self.a[r][col].is_zero() {
                    continue;
                }
                let f = self.a[r][col].clone();
                for j in col..self.cols {
                    if !self.a[row][j].is_zero() {
                        let t = f.mul(&self.a[row][j]);
                        self.a[r][j] = self.a[r][j].sub(&t);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right kernel { x : A x = 0 }.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        let mut out = vec![];
        for &fc in &free {
            let mut v = vec![Scalar::zero(&self.tower); self.cols];
            v[fc] = Scalar::one(&self.tower);
            for (r, &pc) in pivots.iter().enumerate() {
                // row r: x_pc + sum_{free} a[r][j] x_j = 0
                if !m.a[r][fc].is_zero() {
                    v[pc] = m.a[r][fc].neg();
                }
            }
            out.push(v);
        }
        out
    }

    /// Solve A x = b; returns one solution if consistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Mat::zero(&self.tower, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.a[i][j] = self.a[i][j].clone();
            }
            aug.a[i][self.cols] = b[i].clone();
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // inconsistent
        }
        let mut x = vec![Scalar::zero(&self.tower); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.a[r][self.cols].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Mat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Mat::zero(&self.tower, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.a[i][j] = self.a[i][j].clone();
            }
            aug.a[i][n + i] = Scalar::one(&self.tower);
        }
        let pivots = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        let mut inv = Mat::zero(&self.tower, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.a[i][j] = aug.a[i][n + j].clone();
            }
        }
        Some(inv)
    }
}

fn scalar_weight(s: &Scalar) -> u64 {
    let mut w = 0u64;
    for r in &s.c {
        w += (r.num.terms.len() + r.den.terms.len()) as u64;
        w += r.num.coeff_bits() / 16 + r.den.coeff_bits() / 16;
    }
    w
}

/// Incremental echelon row space with coordinates of each reduced row in
/// terms of the originally inserted vectors. Supports orbit saturation and
/// expressing vectors in a spanning set.
pub struct RowSpace {
    pub tower: Tower,
    pub cols: usize,
    /// reduced rows, each with (pivot column, row, combination), rows kept
    /// normalized so row[pivot] = 1 and fully back-substituted.
    rows: Vec<(usize, Vec<Scalar>, Vec<Scalar>)>,
    inserted: usize,
}

impl RowSpace {
    pub fn new(tower: &Tower, cols: usize) -> Self {
        RowSpace {
            tower: tower.clone(),
            cols,
            rows: vec![],
            inserted: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the space. Returns (residual, coords-so-far):
    /// residual = v - sum coords_i * original_i spans the new direction.
    fn reduce(&self, v: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
        let mut r = v.to_vec();
        let mut coords = vec![Scalar::zero(&self.tower); self.inserted];
        for (pc, row, comb) in &self.rows {
            if r[*pc].is_zero() {
                continue;
            }
            let f = r[*pc].clone();
            for j in 0..self.cols {
                if !row[j].is_zero() {
                    let t = f.mul(&row[j]);
                    r[j] = r[j].sub(&t);
                }
            }
            for (k, c) in comb.iter().enumerate() {
                if !c.is_zero() {
                    let t = f.mul(c);
                    coords[k] = coords[k].add(&t);
                }
            }
        }
        (r, coords)
    }

    /// Insert a vector; returns true if it enlarged the span.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.cols);
        let (mut r, mut coords) = self.reduce(v);
        let idx = self.inserted;
        self.inserted += 1;
        for c in self.rows.iter_mut() {
            c.2.resize(self.inserted, Scalar::zero(&self.tower));
        }
        coords.resize(self.inserted, Scalar::zero(&self.tower));
        let Some(pc) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        // this row = original_idx - sum coords_k original_k, normalized
        let mut comb = vec![Scalar::zero(&self.tower); self.inserted];
        comb[idx] = Scalar::one(&self.tower);
        for (k, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                comb[k] = c.neg();
            }
        }
        let inv = r[pc].inv().unwrap();
        for x in r.iter_mut() {
            if !x.is_zero() {
                *x = x.mul(&inv);
            }
        }
        for x in comb.iter_mut() {
            if !x.is_zero() {
                *x = x.mul(&inv);
            }
        }
        // back-substitute into existing rows to keep full reduction
        for i in 0..self.rows.len() {
            if !self.rows[i].1[pc].is_zero() {
                let f = self.rows[i].1[pc].clone();
                for j in 0..self.cols {
                    if !r[j].is_zero() {
                        let t = f.mul(&r[j]);
                        self.rows[i].1[j] = self.rows[i].1[j].sub(&t);
                    }
                }
                for j in 0..self.inserted {
                    if !comb[j].is_zero() {
                        let t = f.mul(&comb[j]);
                        self.rows[i].2[j] = self.rows[i].2[j].sub(&t);
                    }
                }
            }
        }
        self.rows.push((pc, r, comb));
        self.rows.sort_by_key(|(pc, _, _)| *pc);
        true
    }

    /// Residual of `v` after reduction against the space.
    pub fn residual(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.reduce(v).0
    }

    /// Express `v` in terms of the inserted vectors, if it lies in the span.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let (r, coords) = self.reduce(v);
        if r.iter().all(|x| x.is_zero()) {
            Some(coords)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coords(v).is_some()
    }

    /// The reduced basis rows.
    pub fn basis(&self) -> Vec<Vec<Scalar>> {
        self.rows.iter().map(|(_, r, _)| r.clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::FieldTower;

    fn s(t: &Tower, n: i64) -> Scalar {
        Scalar::from_int(t, n)
    }

    #[test]
    fn rref_kernel_solve() {
        let t = FieldTower::rationals();
        // A = [[1,2,3],[2,4,6],[1,0,1]]
        let a = Mat::from_rows(
            &t,
            vec![
                vec![s(&t, 1), s(&t, 2), s(&t, 3)],
                vec![s(&t, 2), s(&t, 4), s(&t, 6)],
                vec![s(&t, 1), s(&t, 0), s(&t, 1)],
            ],
        );
        assert_eq!(a.rank(), 2);
        let k = a.kernel();
        assert_eq!(k.len(), 1);
        let prod = a.mul_vec(&k[0]);
        assert!(prod.iter().all(|x| x.is_zero()));
        let b = vec![s(&t, 6), s(&t, 12), s(&t, 2)];
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul_vec(&x), b);
    }

    #[test]
    fn inverse_roundtrip() {
        let t = FieldTower::with_params(&["f"]);
        let f = Scalar::param(&t, 0);
        let a = Mat::from_rows(
            &t,
            vec![
                vec![Scalar::one(&t), f.clone()],
                vec![f.clone(), Scalar::one(&t)],
            ],
        );
        let inv = a.inverse().unwrap();
        let prod = a.mul(&inv);
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(prod.a[i][j].is_one(), i == j);
            }
        }
    }

    #[test]
    fn rowspace_coords() {
        let t = FieldTower::rationals();
        let mut rs = RowSpace::new(&t, 3);
        let v1 = vec![s(&t, 1), s(&t, 1), s(&t, 0)];
        let v2 = vec![s(&t, 0), s(&t, 1), s(&t, 1)];
        assert!(rs.insert(&v1));
        assert!(rs.insert(&v2));
        assert!(!rs.insert(&vec![s(&t, 1), s(&t, 2), s(&t, 1)]));
        let target = vec![s(&t, 2), s(&t, 5), s(&t, 3)];
        let c = rs.coords(&target).unwrap();
        // c holds coefficients over all inserted vectors (three of them)
        let mut acc = vec![Scalar::zero(&t); 3];
        let ins = [v1.clone(), v2.clone(), vec![s(&t, 1), s(&t, 2), s(&t, 1)]];
        for (k, coef) in c.iter().enumerate() {
            for j in 0..3 {
                acc[j] = acc[j].add(&coef.mul(&ins[k][j]));
            }
        }
        assert_eq!(acc, target);
        assert!(rs.coords(&vec![s(&t, 1), s(&t, 0), s(&t, 0)]).is_none());
    }
}
