//! Row spaces over F_{p^m} kept in reduced row-echelon form.

use crate::algebra::{FieldCtx, FieldElement};

/// `y -= c * x`
fn sub_scaled(f: &FieldCtx, y: &mut [FieldElement], c: FieldElement, x: &[FieldElement]) {
    if c.is_zero() {
        return;
    }
    for (yi, &xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi = f.sub(*yi, f.mul(c, xi));
        }
    }
}

fn scale(f: &FieldCtx, y: &mut [FieldElement], c: FieldElement) {
    for yi in y.iter_mut() {
        *yi = f.mul(*yi, c);
    }
}

/// A subspace of F_{p^m}^n. Rows are in RREF and sorted by pivot column,
/// so two equal subspaces have identical representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RowSpace {
    ncols: usize,
    rows: Vec<Vec<FieldElement>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(ncols: usize) -> RowSpace {
        RowSpace { ncols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_vectors<I>(f: &FieldCtx, ncols: usize, vectors: I) -> RowSpace
    where
        I: IntoIterator<Item = Vec<FieldElement>>,
    {
        let mut space = RowSpace::new(ncols);
        for v in vectors {
            space.insert(f, v);
        }
        space
    }

    pub fn full(ncols: usize) -> RowSpace {
        let rows = (0..ncols)
            .map(|i| {
                let mut r = vec![FieldElement::ZERO; ncols];
                r[i] = FieldElement::ONE;
                r
            })
            .collect();
        RowSpace { ncols, rows, pivots: (0..ncols).collect() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<FieldElement>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` modulo the space; the result is zero on every pivot
    /// column and is zero iff `v` lies in the space.
    pub fn reduce(&self, f: &FieldCtx, v: &mut [FieldElement]) {
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let coef = v[c];
            sub_scaled(f, v, coef, row);
        }
    }

    pub fn contains(&self, f: &FieldCtx, v: &[FieldElement]) -> bool {
        let mut w = v.to_vec();
        self.reduce(f, &mut w);
        w.iter().all(|c| c.is_zero())
    }

    /// Adds `v` to the spanning set; returns whether the rank grew.
    pub fn insert(&mut self, f: &FieldCtx, mut v: Vec<FieldElement>) -> bool {
        debug_assert_eq!(v.len(), self.ncols);
        self.reduce(f, &mut v);
        let Some(pivot) = v.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = f.inv(v[pivot]).expect("pivot is nonzero");
        scale(f, &mut v, inv);
        for row in self.rows.iter_mut() {
            let coef = row[pivot];
            sub_scaled(f, row, coef, &v);
        }
        let at = self.pivots.partition_point(|&c| c < pivot);
        self.pivots.insert(at, pivot);
        self.rows.insert(at, v);
        true
    }

    pub fn sum(&self, f: &FieldCtx, other: &RowSpace) -> RowSpace {
        let (mut big, small) =
            if self.rank() >= other.rank() { (self.clone(), other) } else { (other.clone(), self) };
        for r in &small.rows {
            if big.rank() == big.ncols {
                break;
            }
            big.insert(f, r.clone());
        }
        big
    }

    pub fn is_subspace_of(&self, f: &FieldCtx, other: &RowSpace) -> bool {
        self.rank() <= other.rank() && self.rows.iter().all(|r| other.contains(f, r))
    }

    /// The vector of the space that agrees with `target` on its first
    /// `target.len()` columns, choosing zero for every pivot beyond that
    /// prefix. `None` if no vector of the space has this prefix.
    pub fn solve_prefix(&self, f: &FieldCtx, target: &[FieldElement]) -> Option<Vec<FieldElement>> {
        let len = target.len();
        let mut w = vec![FieldElement::ZERO; self.ncols];
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            if c >= len {
                break;
            }
            sub_scaled(f, &mut w, f.neg(target[c]), row);
        }
        (w[..len] == *target).then_some(w)
    }
}

/// Basis of `{c : sum_j c_j images[j] = 0}`.
pub fn kernel(f: &FieldCtx, images: &[Vec<FieldElement>]) -> Vec<Vec<FieldElement>> {
    let n = images.len();
    let width = images.first().map_or(0, |v| v.len());
    // echelon rows indexed by pivot column, each carrying its combination
    let mut by_pivot: Vec<Option<(Vec<FieldElement>, Vec<FieldElement>)>> = vec![None; width];
    let mut out = Vec::new();
    for (j, img) in images.iter().enumerate() {
        let mut v = img.clone();
        let mut combo = vec![FieldElement::ZERO; n];
        combo[j] = FieldElement::ONE;
        let mut lead = None;
        for c in 0..width {
            if v[c].is_zero() {
                continue;
            }
            match &by_pivot[c] {
                Some((row, rc)) => {
                    let coef = v[c];
                    sub_scaled(f, &mut v, coef, row);
                    sub_scaled(f, &mut combo, coef, rc);
                }
                None => {
                    lead = Some(c);
                    break;
                }
            }
        }
        match lead {
            Some(c) => {
                let inv = f.inv(v[c]).expect("pivot is nonzero");
                scale(f, &mut v, inv);
                scale(f, &mut combo, inv);
                by_pivot[c] = Some((v, combo));
            }
            None => out.push(combo),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vecs(f: &FieldCtx, rows: &[&[i64]]) -> Vec<Vec<FieldElement>> {
        rows.iter().map(|r| r.iter().map(|&c| f.from_int(c)).collect()).collect()
    }

    #[test]
    fn rref_is_canonical() {
        let f = FieldCtx::new(3, 1, None).unwrap();
        let a = RowSpace::from_vectors(&f, 3, vecs(&f, &[&[1, 2, 0], &[0, 1, 1]]));
        let b = RowSpace::from_vectors(&f, 3, vecs(&f, &[&[1, 0, 1], &[2, 0, 2], &[1, 1, 2]]));
        assert_eq!(a, b);
        assert_eq!(a.rank(), 2);
        assert_eq!(a.pivots(), &[0, 1]);
        assert!(a.contains(&f, &vecs(&f, &[&[2, 2, 1]])[0]));
        assert!(!a.contains(&f, &vecs(&f, &[&[0, 0, 1]])[0]));
    }

    #[test]
    fn prefix_solve_sets_free_pivots_to_zero() {
        let f = FieldCtx::new(2, 1, None).unwrap();
        let s = RowSpace::from_vectors(&f, 4, vecs(&f, &[&[1, 1, 0, 1], &[0, 0, 1, 1]]));
        let w = s.solve_prefix(&f, &vecs(&f, &[&[1, 1]])[0]).unwrap();
        assert_eq!(w, vecs(&f, &[&[1, 1, 0, 1]])[0]);
        assert!(s.solve_prefix(&f, &vecs(&f, &[&[0, 1]])[0]).is_none());
    }

    #[test]
    fn kernel_dimension_and_membership() {
        let f = FieldCtx::new(3, 1, None).unwrap();
        let images = vecs(&f, &[&[1, 0], &[0, 1], &[1, 1], &[2, 0]]);
        let ker = kernel(&f, &images);
        assert_eq!(ker.len(), 2);
        for c in &ker {
            let mut acc = [FieldElement::ZERO; 2];
            for (cj, img) in c.iter().zip(&images) {
                for k in 0..2 {
                    acc[k] = f.add(acc[k], f.mul(*cj, img[k]));
                }
            }
            assert!(acc.iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn sum_and_subspace() {
        let f = FieldCtx::new(2, 1, None).unwrap();
        let a = RowSpace::from_vectors(&f, 3, vecs(&f, &[&[1, 0, 0]]));
        let b = RowSpace::from_vectors(&f, 3, vecs(&f, &[&[0, 1, 0]]));
        let s = a.sum(&f, &b);
        assert_eq!(s.rank(), 2);
        assert!(a.is_subspace_of(&f, &s));
        assert!(!s.is_subspace_of(&f, &a));
        assert_eq!(RowSpace::full(3).rank(), 3);
    }
}
