//! Dense rational matrices, integer Hermite normal form, and canonical
//! rational lattices (a positive rational scale times a primitive HNF basis).

use alloc::{vec, vec::Vec};
use core::fmt;
use num::{Integer, One, Signed, Zero};

use crate::arith::{Int, Rat};

/// Dense matrix over the rationals, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rat>,
}

impl QMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMat {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        QMat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> QMat {
        let mut t = QMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &QMat) -> QMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = QMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let p = a * &other[(k, j)];
                    out[(i, j)] = &out[(i, j)] + &p;
                }
            }
        }
        out
    }

    pub fn scale(&self, s: &Rat) -> QMat {
        let mut out = self.clone();
        for x in &mut out.data {
            *x = &*x * s;
        }
        out
    }

    /// Inverse by Gauss-Jordan elimination; None when singular.
    pub fn inverse(&self) -> Option<QMat> {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = QMat::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[(r, col)].is_zero())?;
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let d = a[(col, col)].clone();
            for j in 0..n {
                a[(col, j)] = &a[(col, j)] / &d;
                inv[(col, j)] = &inv[(col, j)] / &d;
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for j in 0..n {
                    let s = &a[(col, j)] * &f;
                    a[(r, j)] = &a[(r, j)] - &s;
                    let s = &inv[(col, j)] * &f;
                    inv[(r, j)] = &inv[(r, j)] - &s;
                }
            }
        }
        Some(inv)
    }

    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Rat::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[(r, col)].is_zero()) else {
                return Rat::zero();
            };
            if pivot != col {
                a.swap_rows(pivot, col);
                det = -det;
            }
            det = &det * &a[(col, col)];
            let d = a[(col, col)].clone();
            for r in col + 1..n {
                if a[(r, col)].is_zero() {
                    continue;
                }
                let f = &a[(r, col)] / &d;
                for j in col..n {
                    let s = &a[(col, j)] * &f;
                    a[(r, j)] = &a[(r, j)] - &s;
                }
            }
        }
        det
    }

    /// Row rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut rank = 0;
        for col in 0..a.cols {
            let Some(pivot) = (rank..a.rows).find(|&r| !a[(r, col)].is_zero()) else {
                continue;
            };
            a.swap_rows(pivot, rank);
            let d = a[(rank, col)].clone();
            for r in rank + 1..a.rows {
                if a[(r, col)].is_zero() {
                    continue;
                }
                let f = &a[(r, col)] / &d;
                for j in col..a.cols {
                    let s = &a[(rank, j)] * &f;
                    a[(r, j)] = &a[(r, j)] - &s;
                }
            }
            rank += 1;
            if rank == a.rows {
                break;
            }
        }
        rank
    }

    /// Basis of the right kernel {x : M·x = 0}, as column vectors.
    pub fn kernel(&self) -> Vec<Vec<Rat>> {
        let mut a = self.clone();
        let n = self.cols;
        let mut pivot_of_col: Vec<Option<usize>> = vec![None; n];
        let mut rank = 0;
        for col in 0..n {
            let Some(p) = (rank..a.rows).find(|&r| !a[(r, col)].is_zero()) else {
                continue;
            };
            a.swap_rows(p, rank);
            let d = a[(rank, col)].clone();
            for j in 0..n {
                a[(rank, j)] = &a[(rank, j)] / &d;
            }
            for r in 0..a.rows {
                if r == rank || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for j in 0..n {
                    let s = &a[(rank, j)] * &f;
                    a[(r, j)] = &a[(r, j)] - &s;
                }
            }
            pivot_of_col[col] = Some(rank);
            rank += 1;
            if rank == a.rows {
                break;
            }
        }
        let mut basis = Vec::new();
        for free in 0..n {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = vec![Rat::zero(); n];
            v[free] = Rat::one();
            for col in 0..n {
                if let Some(r) = pivot_of_col[col] {
                    v[col] = -a[(r, free)].clone();
                }
            }
            basis.push(v);
        }
        basis
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }
}

impl core::ops::Index<(usize, usize)> for QMat {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for QMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

/// Row-style Hermite normal form of an integer matrix whose rows generate a
/// full-rank sublattice of Zⁿ: returns the unique upper-triangular basis with
/// positive diagonal and entries above each pivot reduced into [0, pivot).
/// None when the rows do not have full column rank.
pub fn hnf(rows: &[Vec<Int>]) -> Option<Vec<Vec<Int>>> {
    let n = rows.first()?.len();
    let mut m: Vec<Vec<Int>> = rows.to_vec();
    assert!(m.iter().all(|r| r.len() == n), "ragged rows");
    for col in 0..n {
        // Euclid on the entries of this column at or below the pivot row,
        // which is row `col` once the earlier columns are processed.
        loop {
            let mut idx: Vec<usize> = (col..m.len()).filter(|&r| !m[r][col].is_zero()).collect();
            if idx.is_empty() {
                return None; // column rank deficiency
            }
            if idx.len() == 1 {
                let r = idx[0];
                m.swap(col, r);
                break;
            }
            // Reduce every entry by the smallest nonzero one.
            idx.sort_by(|&a, &b| m[a][col].abs().cmp(&m[b][col].abs()));
            let smallest = idx[0];
            for &r in &idx[1..] {
                let q = m[r][col].div_floor(&m[smallest][col]);
                subtract_row_multiple(&mut m, r, smallest, &q);
            }
        }
        if m[col][col].is_negative() {
            for x in &mut m[col] {
                *x = -core::mem::take(x);
            }
        }
        // Reduce the entries above the pivot into [0, pivot).
        for r in 0..col {
            let q = m[r][col].div_floor(&m[col][col]);
            if !q.is_zero() {
                subtract_row_multiple(&mut m, r, col, &q);
            }
        }
    }
    // Each column sweep zeroes the column below its pivot row, so every row
    // past the square block is now zero.
    debug_assert!(m[n..].iter().all(|r| r.iter().all(Zero::is_zero)));
    m.truncate(n);
    Some(m)
}

/// Row operation m[dst] -= q·m[src] for distinct rows.
fn subtract_row_multiple(m: &mut [Vec<Int>], dst: usize, src: usize, q: &Int) {
    let srow = m[src].clone();
    for (d, s) in m[dst].iter_mut().zip(&srow) {
        *d = &*d - &(s * q);
    }
}

/// A full-rank lattice in Qⁿ in canonical form: a positive rational `scale`
/// times the row lattice of a primitive (content-1) HNF basis. The canonical
/// form is unique per lattice, so equality is representation equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    pub scale: Rat,
    pub basis: Vec<Vec<Int>>,
}

impl Lattice {
    /// Lattice generated by the given rational rows; None when they do not
    /// span full rank.
    pub fn from_generators(gens: &[Vec<Rat>]) -> Option<Lattice> {
        let n = gens.first()?.len();
        if gens.len() < n {
            return None;
        }
        // Clear denominators.
        let mut den = Int::one();
        for row in gens {
            for x in row {
                den = den.lcm(x.denom());
            }
        }
        let int_rows: Vec<Vec<Int>> = gens
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| {
                        let scaled = x * Rat::from_integer(den.clone());
                        debug_assert!(scaled.is_integer());
                        scaled.to_integer()
                    })
                    .collect()
            })
            .collect();
        let h = hnf(&int_rows)?;
        // Extract content so the stored basis is primitive.
        let mut content = Int::zero();
        for row in &h {
            for x in row {
                content = content.gcd(x);
            }
        }
        let basis: Vec<Vec<Int>> = h
            .iter()
            .map(|row| row.iter().map(|x| x / &content).collect())
            .collect();
        Some(Lattice {
            scale: Rat::new(content, den),
            basis,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Rows of the basis as rational vectors (scale folded in).
    pub fn rational_rows(&self) -> Vec<Vec<Rat>> {
        self.basis
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| Rat::from_integer(x.clone()) * &self.scale)
                    .collect()
            })
            .collect()
    }

    pub fn basis_matrix(&self) -> QMat {
        QMat::from_rows(self.rational_rows())
    }

    /// Membership test by triangular back-substitution over the integers.
    pub fn contains(&self, v: &[Rat]) -> bool {
        let n = self.dim();
        assert_eq!(v.len(), n);
        let mut rem: Vec<Rat> = v.iter().map(|x| x / &self.scale).collect();
        for i in 0..n {
            let pivot = Rat::from_integer(self.basis[i][i].clone());
            let c = &rem[i] / &pivot;
            if !c.is_integer() {
                return false;
            }
            for (s_ij, r) in self.basis[i][i..].iter().zip(rem[i..].iter_mut()) {
                *r = &*r - &(Rat::from_integer(s_ij.clone()) * &c);
            }
        }
        rem.iter().all(Rat::is_zero)
    }

    pub fn is_sublattice_of(&self, other: &Lattice) -> bool {
        self.rational_rows().iter().all(|r| other.contains(r))
    }

    /// Covolume relative to Zⁿ: |det| of the basis matrix.
    pub fn covolume(&self) -> Rat {
        let mut d = Rat::one();
        for i in 0..self.dim() {
            d = &d * &Rat::from_integer(self.basis[i][i].clone());
        }
        let mut s = Rat::one();
        for _ in 0..self.dim() {
            s = &s * &self.scale;
        }
        (d * s).abs()
    }

    /// Smallest lattice containing both operands.
    pub fn sum(&self, other: &Lattice) -> Lattice {
        let mut gens = self.rational_rows();
        gens.extend(other.rational_rows());
        Lattice::from_generators(&gens).expect("sum of full-rank lattices is full rank")
    }

    /// Index [other : self] when self ⊆ other; must be an integer.
    pub fn index_in(&self, other: &Lattice) -> Int {
        debug_assert!(self.is_sublattice_of(other));
        let q = self.covolume() / other.covolume();
        assert!(q.is_integer(), "index of non-sublattice requested");
        q.to_integer()
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} * {:?}", self.scale, self.basis)
    }
}
