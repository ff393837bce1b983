//! Exact linear algebra over a [`Field`]: reduced row echelon forms,
//! kernels, and canonical subspaces.
//!
//! Vectors are rows. A [`Subspace`] stores its basis in reduced row echelon
//! form, so two subspaces are equal exactly when their bases are equal.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::Field;

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatF<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Copy> MatF<E> {
    pub fn from_rows(cols: usize, rows: &[Vec<E>]) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::usage(format!("row of length {} in a {cols}-column matrix", bad.len())));
        }
        Ok(MatF { rows: rows.len(), cols, data: rows.iter().flatten().copied().collect() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        MatF { rows, cols, data }
    }

    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        MatF { rows, cols, data: vec![value; rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> E {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        MatF::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }
}

impl<E: Copy> MatF<E> {
    pub fn zero<F: Field<Elem = E>>(f: &F, rows: usize, cols: usize) -> Self {
        MatF::filled(rows, cols, f.zero())
    }

    pub fn identity<F: Field<Elem = E>>(f: &F, n: usize) -> Self {
        MatF::from_fn(n, n, |i, j| if i == j { f.one() } else { f.zero() })
    }

    pub fn mul<F: Field<Elem = E>>(&self, f: &F, other: &MatF<E>) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::usage(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(MatF::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(f.zero(), |acc, k| f.add(acc, f.mul(self.get(i, k), other.get(k, j))))
        }))
    }

    /// `M v` for a column vector `v`.
    pub fn apply<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> Vec<E> {
        (0..self.rows)
            .map(|i| (0..self.cols).fold(f.zero(), |acc, k| f.add(acc, f.mul(self.get(i, k), v[k]))))
            .collect()
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, k: E) -> Self {
        MatF { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&x| f.mul(k, x)).collect() }
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, other: &MatF<E>) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::usage("matrix shapes differ"));
        }
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(MatF { rows: self.rows, cols: self.cols, data })
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.data.iter().all(|&x| f.is_zero(x))
    }

    pub fn trace<F: Field<Elem = E>>(&self, f: &F) -> E {
        (0..self.rows.min(self.cols)).fold(f.zero(), |acc, i| f.add(acc, self.get(i, i)))
    }
}

/// Result of [`rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon<E> {
    pub matrix: MatF<E>,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Reduces `rows` in place to reduced row echelon form; nonzero rows come
/// first. Returns the pivot columns.
pub fn rref_rows<F, R>(f: &F, rows: &mut [R]) -> Vec<usize>
where
    F: Field,
    R: AsMut<[F::Elem]> + AsRef<[F::Elem]>,
{
    let ncols = rows.first().map_or(0, |r| r.as_ref().len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| !f.is_zero(rows[i].as_ref()[col])) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = f.inv(rows[r].as_ref()[col]).expect("pivot is nonzero");
        for x in rows[r].as_mut()[col..].iter_mut() {
            *x = f.mul(inv, *x);
        }
        for i in 0..rows.len() {
            if i == r {
                continue;
            }
            let factor = rows[i].as_ref()[col];
            if f.is_zero(factor) {
                continue;
            }
            for j in col..ncols {
                let sub = f.mul(factor, rows[r].as_ref()[j]);
                let cur = rows[i].as_ref()[j];
                rows[i].as_mut()[j] = f.sub(cur, sub);
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

/// Rank of a list of rows, without touching the input.
pub fn rank_rows<F: Field, R: AsRef<[F::Elem]>>(f: &F, rows: &[R]) -> usize {
    let mut work: Vec<Vec<F::Elem>> = rows.iter().map(|r| r.as_ref().to_vec()).collect();
    rref_rows(f, &mut work).len()
}

pub fn rref<F: Field>(f: &F, m: &MatF<F::Elem>) -> Echelon<F::Elem> {
    let mut rows = m.to_rows();
    let pivots = rref_rows(f, &mut rows);
    let matrix = if rows.is_empty() {
        m.clone()
    } else {
        MatF::from_rows(m.cols, &rows).expect("row lengths preserved")
    };
    Echelon { matrix, rank: pivots.len(), pivots }
}

pub fn rank<F: Field>(f: &F, m: &MatF<F::Elem>) -> usize {
    rref(f, m).rank
}

/// Right null space `{v : M v = 0}` as a subspace of `F^cols`.
pub fn kernel<F: Field>(f: &F, m: &MatF<F::Elem>) -> Subspace<F::Elem> {
    let ech = rref(f, m);
    let n = m.cols;
    let free: Vec<usize> = (0..n).filter(|c| !ech.pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &fc in &free {
        let mut v = vec![f.zero(); n];
        v[fc] = f.one();
        for (r, &pc) in ech.pivots.iter().enumerate() {
            v[pc] = f.neg(ech.matrix.get(r, fc));
        }
        basis.push(v);
    }
    Subspace::span(f, n, &basis).expect("kernel vectors have the ambient length")
}

/// Determinant by elimination. The matrix must be square.
pub fn det<F: Field>(f: &F, m: &MatF<F::Elem>) -> Result<F::Elem> {
    if m.rows != m.cols {
        return Err(Error::usage(format!("determinant of a {}x{} matrix", m.rows, m.cols)));
    }
    let n = m.rows;
    let mut a = m.to_rows();
    let mut d = f.one();
    for col in 0..n {
        let Some(pr) = (col..n).find(|&i| !f.is_zero(a[i][col])) else {
            return Ok(f.zero());
        };
        if pr != col {
            a.swap(pr, col);
            d = f.neg(d);
        }
        let piv = a[col][col];
        d = f.mul(d, piv);
        let inv = f.inv(piv)?;
        for i in col + 1..n {
            let factor = f.mul(a[i][col], inv);
            if f.is_zero(factor) {
                continue;
            }
            for j in col..n {
                let sub = f.mul(factor, a[col][j]);
                a[i][j] = f.sub(a[i][j], sub);
            }
        }
    }
    Ok(d)
}

/// Inverse of a square matrix; `Err(Domain)` when singular.
pub fn inverse<F: Field>(f: &F, m: &MatF<F::Elem>) -> Result<MatF<F::Elem>> {
    if m.rows != m.cols {
        return Err(Error::usage("inverse of a non-square matrix"));
    }
    let n = m.rows;
    let mut aug: Vec<Vec<F::Elem>> = (0..n)
        .map(|i| {
            let mut row = m.row(i).to_vec();
            row.extend((0..n).map(|j| if i == j { f.one() } else { f.zero() }));
            row
        })
        .collect();
    let pivots = rref_rows(f, &mut aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return Err(Error::domain("matrix is singular"));
    }
    Ok(MatF::from_fn(n, n, |i, j| aug[i][n + j]))
}

/// A subspace of `F^n` with its basis in reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace<E> {
    ambient: usize,
    basis: Vec<Vec<E>>,
}

impl<E: Copy + Eq> Subspace<E> {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new() }
    }

    pub fn full<F: Field<Elem = E>>(f: &F, ambient: usize) -> Self {
        Subspace { ambient, basis: MatF::identity(f, ambient).to_rows() }
    }

    pub fn span<F: Field<Elem = E>>(f: &F, ambient: usize, vectors: &[Vec<E>]) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient) {
            return Err(Error::usage(format!(
                "vector of length {} in F^{ambient}",
                v.len()
            )));
        }
        let mut rows = vectors.to_vec();
        let rank = rref_rows(f, &mut rows).len();
        rows.truncate(rank);
        Ok(Subspace { ambient, basis: rows })
    }

    /// Wraps rows already in reduced row echelon form.
    pub(crate) fn from_rref_rows(ambient: usize, basis: Vec<Vec<E>>) -> Self {
        Subspace { ambient, basis }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<E>] {
        &self.basis
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::usage(format!(
                "subspaces of F^{} and F^{} cannot be combined",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    pub fn sum<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Subspace::span(f, self.ambient, &rows)
    }

    /// `S1 ∩ S2` from the left kernel of the stacked bases `[B1; -B2]`:
    /// each kernel vector `(a, b)` gives the common vector `a B1 = b B2`.
    pub fn intersect<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let (k1, k2) = (self.dim(), other.dim());
        if k1 == 0 || k2 == 0 {
            return Ok(Subspace::zero(self.ambient));
        }
        let n = self.ambient;
        let coeffs = MatF::from_fn(n, k1 + k2, |i, j| {
            if j < k1 {
                self.basis[j][i]
            } else {
                f.neg(other.basis[j - k1][i])
            }
        });
        let ker = kernel(f, &coeffs);
        let vectors: Vec<Vec<E>> = ker
            .basis
            .iter()
            .map(|ab| {
                (0..n)
                    .map(|c| (0..k1).fold(f.zero(), |acc, r| f.add(acc, f.mul(ab[r], self.basis[r][c]))))
                    .collect()
            })
            .collect();
        Subspace::span(f, n, &vectors)
    }

    pub fn contains<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> bool {
        if v.len() != self.ambient {
            return false;
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        rank_rows(f, &rows) == self.dim()
    }

    pub fn is_subspace_of<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> bool {
        self.basis.iter().all(|v| other.contains(f, v))
    }
}

/// Serialized form `{ambient, basis}` with element strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceRecord {
    pub ambient: usize,
    pub basis: Vec<Vec<String>>,
}

impl SubspaceRecord {
    pub fn from_subspace<F: Field>(f: &F, s: &Subspace<F::Elem>) -> Self {
        SubspaceRecord {
            ambient: s.ambient,
            basis: s.basis.iter().map(|r| r.iter().map(|&x| f.format(x)).collect()).collect(),
        }
    }

    /// Parses and re-canonicalizes.
    pub fn to_subspace<F: Field>(&self, f: &F) -> Result<Subspace<F::Elem>> {
        let rows = self
            .basis
            .iter()
            .map(|r| r.iter().map(|s| f.parse(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Subspace::span(f, self.ambient, &rows)
    }
}
