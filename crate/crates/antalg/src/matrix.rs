//! Dense matrices over exact rationals and the row-reduction primitives the
//! rest of the crate is built on: `rref`, `nullspace`, `coords_in_span`.

use crate::scalar::Scalar;
use num::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|row| row.len()).unwrap_or(0);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Scalar) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .fold(Scalar::zero(), |acc, t| acc + t)
            })
            .collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        Matrix::from_fn(self.rows, other.cols, |r, c| {
            (0..self.cols)
                .map(|k| &self[(r, k)] * &other[(k, c)])
                .fold(Scalar::zero(), |acc, t| acc + t)
        })
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Row-major flattening, for rank arguments over spaces of matrices.
    pub fn flatten(&self) -> Vec<Scalar> {
        self.entries.clone()
    }

    /// Reduced row echelon form together with the pivot column list.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(r) = (pivot_row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(pivot_row, r);
            let inv = m[(pivot_row, col)].recip();
            for c in col..m.cols {
                let v = &m[(pivot_row, c)] * &inv;
                m[(pivot_row, c)] = v;
            }
            for r in 0..m.rows {
                if r != pivot_row && !m[(r, col)].is_zero() {
                    let factor = m[(r, col)].clone();
                    for c in col..m.cols {
                        let v = &m[(r, c)] - &factor * &m[(pivot_row, c)];
                        m[(r, c)] = v;
                    }
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of `{v : self * v = 0}`; length is `cols - rank`.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![Scalar::zero(); self.cols];
                v[fc] = Scalar::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r[(row, fc)].clone();
                }
                v
            })
            .collect()
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        &self.entries[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        &mut self.entries[r * self.cols + c]
    }
}

impl Matrix {
    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

/// Coordinates of `v` in the given spanning list, or `None` when `v` is not
/// in the span. A returned `c` satisfies `sum c_i basis_i = v` exactly.
pub fn coords_in_span(v: &[Scalar], basis: &[Vec<Scalar>]) -> Option<Vec<Scalar>> {
    let n = v.len();
    assert!(basis.iter().all(|b| b.len() == n), "length mismatch");
    let k = basis.len();
    // Columns: basis vectors, then v; solve by rref of the augmented matrix.
    let aug = Matrix::from_fn(n, k + 1, |r, c| {
        if c < k {
            basis[c][r].clone()
        } else {
            v[r].clone()
        }
    });
    let (red, pivots) = aug.rref();
    if pivots.contains(&k) {
        return None; // v independent of the basis columns
    }
    let mut coords = vec![Scalar::zero(); k];
    for (row, &pc) in pivots.iter().enumerate() {
        coords[pc] = red[(row, k)].clone();
    }
    Some(coords)
}

/// Incremental row-space accumulator: keeps an eliminated basis of the rows
/// fed to it. Used for building solution spaces row by row without holding
/// the full equation matrix.
#[derive(Debug, Clone, Default)]
pub struct RowSpace {
    /// Rows in echelon form (each starts with a 1 at its pivot column).
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new() -> Self {
        RowSpace::default()
    }

    /// Reduces `row` against the store; inserts the remainder when nonzero.
    /// Returns true when the row enlarged the space.
    pub fn insert(&mut self, mut row: Vec<Scalar>) -> bool {
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            if !row[p].is_zero() {
                let factor = row[p].clone();
                for (x, y) in row.iter_mut().zip(r) {
                    let v = &*x - &factor * y;
                    *x = v;
                }
            }
        }
        let Some(pivot) = row.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = row[pivot].recip();
        for x in row.iter_mut() {
            let v = &*x * &inv;
            *x = v;
        }
        // Back-substitute into existing rows to keep full reduction.
        for (r, &p) in self.rows.iter_mut().zip(&self.pivots) {
            let _ = p;
            if !r[pivot].is_zero() {
                let factor = r[pivot].clone();
                for (x, y) in r.iter_mut().zip(&row) {
                    let v = &*x - &factor * y;
                    *x = v;
                }
            }
        }
        let pos = self.pivots.iter().position(|&p| p > pivot).unwrap_or(self.pivots.len());
        self.rows.insert(pos, row);
        self.pivots.insert(pos, pivot);
        true
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    /// Nullspace of the accumulated row set, over `cols` variables.
    pub fn nullspace(&self, cols: usize) -> Vec<Vec<Scalar>> {
        let m = Matrix::from_fn(self.rows.len(), cols, |r, c| self.rows[r][c].clone());
        if self.rows.is_empty() {
            return Matrix::zero(1, cols).nullspace();
        }
        m.nullspace()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};
    use proptest::prelude::*;

    fn m(rows: Vec<Vec<i64>>) -> Matrix {
        Matrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(int).collect())
                .collect(),
        )
    }

    #[test]
    fn rref_identity() {
        let (r, pivots) = Matrix::identity(2).rref();
        assert_eq!(r, Matrix::identity(2));
        assert_eq!(pivots, vec![0, 1]);
    }

    #[test]
    fn rref_zero() {
        let (r, pivots) = Matrix::zero(3, 3).rref();
        assert_eq!(r, Matrix::zero(3, 3));
        assert!(pivots.is_empty());
    }

    #[test]
    fn rref_proportional_rows() {
        let (r, pivots) = m(vec![vec![1, 2], vec![2, 4]]).rref();
        assert_eq!(r, m(vec![vec![1, 2], vec![0, 0]]));
        assert_eq!(pivots, vec![0]);
    }

    #[test]
    fn nullspace_identity_empty() {
        assert!(Matrix::identity(4).nullspace().is_empty());
    }

    #[test]
    fn nullspace_zero_full() {
        let ns = Matrix::zero(2, 2).nullspace();
        assert_eq!(ns.len(), 2);
        assert_eq!(ns[0], vec![int(1), int(0)]);
        assert_eq!(ns[1], vec![int(0), int(1)]);
    }

    #[test]
    fn nullspace_single_equation() {
        let ns = m(vec![vec![1, 1]]).nullspace();
        assert_eq!(ns.len(), 1);
        // span of (1, -1): the basis vector is (-1, 1) scaled; check m * v = 0
        // and that (1, -1) is in its span.
        assert!(coords_in_span(&[int(1), int(-1)], &ns).is_some());
    }

    #[test]
    fn coords_examples() {
        let basis = vec![vec![int(1), int(0)], vec![int(1), int(1)]];
        assert_eq!(
            coords_in_span(&[int(1), int(0)], &basis),
            Some(vec![int(1), int(0)])
        );
        assert_eq!(
            coords_in_span(&[int(0), int(0)], &basis),
            Some(vec![int(0), int(0)])
        );
        assert_eq!(coords_in_span(&[int(0), int(1)], &[vec![int(1), int(0)]]), None);
    }

    #[test]
    fn rowspace_matches_matrix_rref() {
        let mat = m(vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        let mut rs = RowSpace::new();
        for r in 0..mat.rows() {
            rs.insert(mat.row(r).to_vec());
        }
        assert_eq!(rs.rank(), mat.rank());
        let ns_a = rs.nullspace(3);
        let ns_b = mat.nullspace();
        assert_eq!(ns_a.len(), ns_b.len());
        for v in &ns_b {
            assert!(coords_in_span(v, &ns_a).is_some());
        }
    }

    fn small_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-4i64..5, r * c).prop_map(move |vals| {
                Matrix::from_fn(r, c, |i, j| int(vals[i * c + j]))
            })
        })
    }

    proptest! {
        #[test]
        fn rref_is_idempotent(mat in small_matrix()) {
            let (r1, p1) = mat.rref();
            let (r2, p2) = r1.rref();
            prop_assert_eq!(r1, r2);
            prop_assert_eq!(p1, p2);
        }

        #[test]
        fn rank_nullity(mat in small_matrix()) {
            let ns = mat.nullspace();
            prop_assert_eq!(mat.rank() + ns.len(), mat.cols());
            for v in &ns {
                let image = mat.mul_vec(v);
                prop_assert!(image.iter().all(|x| x.is_zero()));
            }
        }

        #[test]
        fn coords_reconstruct(mat in small_matrix(), target in proptest::collection::vec(-3i64..4, 4)) {
            // Build v as a known combination of the matrix rows, then recover it.
            let basis: Vec<Vec<Scalar>> = (0..mat.rows()).map(|r| mat.row(r).to_vec()).collect();
            let coeffs: Vec<Scalar> = target.iter().take(basis.len()).map(|&t| frac(t, 2)).collect();
            let mut v = vec![Scalar::zero(); mat.cols()];
            for (c, b) in coeffs.iter().zip(&basis) {
                for (x, y) in v.iter_mut().zip(b) {
                    let s = &*x + c * y;
                    *x = s;
                }
            }
            let coords = coords_in_span(&v, &basis).expect("in span by construction");
            let mut back = vec![Scalar::zero(); mat.cols()];
            for (c, b) in coords.iter().zip(&basis) {
                for (x, y) in back.iter_mut().zip(b) {
                    let s = &*x + c * y;
                    *x = s;
                }
            }
            prop_assert_eq!(v, back);
        }
    }
}
