//! Linear algebra over prime fields.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

pub fn pow_mod(a: u32, mut e: u32, p: u32) -> u32 {
    let mut base = (a % p) as u64;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

pub fn reduce(x: i64, p: u32) -> u32 {
    x.rem_euclid(p as i64) as u32
}

/// Dense matrix with entries in `0..p`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FpMatrix {
    pub fn zero(p: u32, rows: usize, cols: usize) -> Self {
        FpMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = FpMatrix::zero(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    /// Builds a matrix from integer rows, reducing entries mod `p`.
    pub fn from_rows(p: u32, rows: &[Vec<i64>]) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidParameter(format!("{p} is not prime")));
        }
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidParameter("ragged matrix rows".into()));
        }
        Ok(FpMatrix {
            p,
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().map(|&x| reduce(x, p)).collect(),
        })
    }

    pub fn from_vectors(p: u32, cols: usize, vectors: &[Vec<u32>]) -> Self {
        let mut m = FpMatrix::zero(p, vectors.len(), cols);
        for (i, v) in vectors.iter().enumerate() {
            assert_eq!(v.len(), cols);
            for (j, &x) in v.iter().enumerate() {
                m.data[i * cols + j] = x % p;
            }
        }
        m
    }

    /// Block-diagonal matrix with `copies` copies of `self`.
    pub fn block_diagonal(&self, copies: usize) -> Self {
        let n = self.rows;
        let mut m = FpMatrix::zero(self.p, n * copies, self.cols * copies);
        for c in 0..copies {
            for i in 0..n {
                for j in 0..self.cols {
                    m.set(c * n + i, c * self.cols + j, self.get(i, j));
                }
            }
        }
        m
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.rows, "matrix shapes");
        let p = self.p as u64;
        let mut out = FpMatrix::zero(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = ((out.data[idx] as u64 + a * other.get(k, j) as u64) % p) as u32;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (x, &y) in out.data.iter_mut().zip(&other.data) {
            *x = (*x + y) % self.p;
        }
        out
    }

    pub fn sub(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (x, &y) in out.data.iter_mut().zip(&other.data) {
            *x = (*x + self.p - y) % self.p;
        }
        out
    }

    pub fn scale(&self, c: u32) -> FpMatrix {
        let mut out = self.clone();
        for x in out.data.iter_mut() {
            *x = ((*x as u64 * c as u64) % self.p as u64) as u32;
        }
        out
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut out = FpMatrix::zero(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.rows);
        let p = self.p as u64;
        let mut out = vec![0u64; self.cols];
        for (i, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = (*o + a as u64 * self.get(i, j) as u64) % p;
            }
        }
        out.into_iter().map(|x| x as u32).collect()
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (FpMatrix, Vec<usize>) {
        let mut m = self.clone();
        let p = self.p as u64;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let inv = inv_mod(m.get(r, c), self.p) as u64;
            for j in 0..m.cols {
                let idx = r * m.cols + j;
                m.data[idx] = (m.data[idx] as u64 * inv % p) as u32;
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c) as u64;
                if f == 0 {
                    continue;
                }
                for j in 0..m.cols {
                    let sub = f * m.get(r, j) as u64 % p;
                    let idx = i * m.cols + j;
                    m.data[idx] = ((m.data[idx] as u64 + p - sub) % p) as u32;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self * x = 0}` (column vectors, returned as rows).
    pub fn nullspace(&self) -> Vec<Vec<u32>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0u32; self.cols];
                v[f] = 1;
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = (self.p - r.get(i, f)) % self.p;
                }
                v
            })
            .collect()
    }

    /// Basis of `{x : x * self = 0}`.
    pub fn left_nullspace(&self) -> Vec<Vec<u32>> {
        self.transpose().nullspace()
    }

    /// Nonzero rows of the reduced row echelon form.
    pub fn row_space(&self) -> Vec<Vec<u32>> {
        let (r, pivots) = self.rref();
        (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
    }

    pub fn inverse(&self) -> Option<FpMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = FpMatrix::zero(self.p, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = FpMatrix::zero(self.p, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j));
            }
        }
        Some(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn pow(&self, mut e: u64) -> FpMatrix {
        let mut base = self.clone();
        let mut acc = FpMatrix::identity(self.p, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order of an invertible matrix.
    pub fn order(&self) -> u64 {
        let id = FpMatrix::identity(self.p, self.rows);
        let mut x = self.clone();
        let mut k = 1;
        while x != id {
            x = x.mul(self);
            k += 1;
        }
        k
    }
}

/// All vectors of `F_p^n` in lexicographic order of coordinates.
pub fn all_vectors(p: u32, n: usize) -> Vec<Vec<u32>> {
    let total = (p as usize).pow(n as u32);
    (0..total).map(|i| index_to_vector(i, p, n)).collect()
}

/// Coordinates of `i` in base `p`, most significant first.
pub fn index_to_vector(mut i: usize, p: u32, n: usize) -> Vec<u32> {
    let mut v = vec![0u32; n];
    for k in (0..n).rev() {
        v[k] = (i % p as usize) as u32;
        i /= p as usize;
    }
    v
}

pub fn vector_to_index(v: &[u32], p: u32) -> usize {
    v.iter().fold(0usize, |acc, &x| acc * p as usize + x as usize)
}

/// Dimension of the span of a set of vectors of length `n`.
pub fn span_dim(p: u32, n: usize, vectors: &[Vec<u32>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    FpMatrix::from_vectors(p, n, vectors).rank()
}

/// Closes a set of invertible matrices under multiplication, up to `limit` elements.
pub fn matrix_group(gens: &[FpMatrix], limit: usize) -> Result<Vec<FpMatrix>> {
    let first = gens
        .first()
        .ok_or_else(|| Error::InvalidParameter("no generators".into()))?;
    let id = FpMatrix::identity(first.p(), first.rows());
    let mut seen: rustc_hash::FxHashSet<FpMatrix> = Default::default();
    seen.insert(id.clone());
    let mut list = vec![id];
    let mut i = 0;
    while i < list.len() {
        for g in gens {
            let y = list[i].mul(g);
            if seen.insert(y.clone()) {
                list.push(y);
                if list.len() > limit {
                    return Err(Error::budget("matrix group", list.len() as u128, limit as u128));
                }
            }
        }
        i += 1;
    }
    list.sort();
    Ok(list)
}

/// Whether the matrices act irreducibly on row vectors.
pub fn is_irreducible(gens: &[FpMatrix]) -> bool {
    let Some(first) = gens.first() else {
        return false;
    };
    let (p, n) = (first.p(), first.rows());
    all_vectors(p, n)
        .into_iter()
        .filter(|v| v.iter().any(|&x| x != 0))
        .all(|v| spin(gens, &[v]).len() == n)
}

/// Basis (reduced) of the smallest invariant subspace containing the vectors.
pub fn spin(gens: &[FpMatrix], start: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let Some(first) = gens.first() else {
        return start.to_vec();
    };
    let (p, n) = (first.p(), first.rows());
    let mut basis: Vec<Vec<u32>> = Vec::new();
    let mut queue: Vec<Vec<u32>> = start.to_vec();
    while let Some(v) = queue.pop() {
        let mut cand = basis.clone();
        cand.push(v.clone());
        if span_dim(p, n, &cand) > basis.len() {
            basis = cand;
            for g in gens {
                queue.push(g.apply(&v));
            }
        }
    }
    if basis.is_empty() {
        return basis;
    }
    FpMatrix::from_vectors(p, n, &basis).row_space()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_rank() {
        let m = FpMatrix::from_rows(5, &[vec![1, 2], vec![3, 4]]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), FpMatrix::identity(5, 2));
        let s = FpMatrix::from_rows(5, &[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(s.rank(), 1);
        assert!(s.inverse().is_none());
        assert_eq!(s.left_nullspace(), vec![vec![3, 1]]);
        let ns = s.nullspace();
        assert_eq!(ns.len(), 1);
        let col = FpMatrix::from_vectors(5, 2, &ns).transpose();
        assert!(s.mul(&col).is_zero());
    }

    #[test]
    fn group_closure_and_irreducibility() {
        let i = FpMatrix::from_rows(3, &[vec![1, 1], vec![1, -1]]).unwrap();
        let j = FpMatrix::from_rows(3, &[vec![0, -1], vec![1, 0]]).unwrap();
        let q = matrix_group(&[i.clone(), j.clone()], 100).unwrap();
        assert_eq!(q.len(), 8);
        assert!(is_irreducible(&[i, j]));
        let d = FpMatrix::from_rows(3, &[vec![1, 0], vec![0, 2]]).unwrap();
        assert!(!is_irreducible(&[d]));
        assert!(FpMatrix::from_rows(4, &[vec![1]]).is_err());
    }

    #[test]
    fn vector_indexing() {
        for (i, v) in all_vectors(3, 3).iter().enumerate() {
            assert_eq!(vector_to_index(v, 3), i);
        }
    }
}
