//! Exact matrices over the polynomial ring: products, determinants,
//! adjugates, block sums and the reducedness test.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::{Coeff, Rat};

/// Rectangular matrix with polynomial entries, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix<K: Coeff> {
    rows: usize,
    cols: usize,
    entries: Vec<Poly<K>>,
}

impl<K: Coeff> PolyMatrix<K> {
    pub fn new(rows: usize, cols: usize, entries: Vec<Poly<K>>) -> Result<PolyMatrix<K>> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(rows, cols, entries.len(), 1));
        }
        Ok(PolyMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zero(rows: usize, cols: usize) -> PolyMatrix<K> {
        PolyMatrix {
            rows,
            cols,
            entries: vec![Poly::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> PolyMatrix<K> {
        let mut m = PolyMatrix::zero(n, n);
        for i in 0..n {
            *m.get_mut(i, i) = Poly::one();
        }
        m
    }

    /// Scalar matrix `p * Id_n`.
    pub fn scalar(n: usize, p: &Poly<K>) -> PolyMatrix<K> {
        let mut m = PolyMatrix::zero(n, n);
        for i in 0..n {
            *m.get_mut(i, i) = p.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Poly<K> {
        &self.entries[r * self.cols + c]
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut Poly<K> {
        &mut self.entries[r * self.cols + c]
    }

    pub fn entries(&self) -> &[Poly<K>] {
        &self.entries
    }

    pub fn map(&self, f: impl Fn(&Poly<K>) -> Poly<K>) -> PolyMatrix<K> {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn neg(&self) -> PolyMatrix<K> {
        self.map(|p| p.neg_ref())
    }

    pub fn add(&self, other: &PolyMatrix<K>) -> Result<PolyMatrix<K>> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(
                self.rows, self.cols, other.rows, other.cols,
            ));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.add_ref(b))
            .collect();
        Ok(PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn sub(&self, other: &PolyMatrix<K>) -> Result<PolyMatrix<K>> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &PolyMatrix<K>) -> Result<PolyMatrix<K>> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(
                self.rows, self.cols, other.rows, other.cols,
            ));
        }
        let mut out = PolyMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Poly::zero();
                for k in 0..self.cols {
                    acc = acc.add_ref(&self.get(i, k).mul_ref(other.get(k, j)));
                }
                *out.get_mut(i, j) = acc;
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> PolyMatrix<K> {
        let mut out = PolyMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.get_mut(j, i) = self.get(i, j).clone();
            }
        }
        out
    }

    /// Exact determinant by cofactor expansion, choosing the row with the
    /// most zero entries at each level. Intended for the desk-scale sizes
    /// this crate produces.
    pub fn determinant(&self) -> Result<Poly<K>> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        Ok(det_rec(self))
    }

    /// Adjugate (transpose of the cofactor matrix). The defining identity
    /// `adj(M) * M = M * adj(M) = det(M) * Id` is checked before returning.
    pub fn adjugate(&self) -> Result<PolyMatrix<K>> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(PolyMatrix::zero(0, 0));
        }
        let mut adj = PolyMatrix::zero(n, n);
        if n == 1 {
            *adj.get_mut(0, 0) = Poly::one();
        } else {
            for i in 0..n {
                for j in 0..n {
                    let minor = self.minor(i, j);
                    let cof = det_rec(&minor);
                    let signed = if (i + j) % 2 == 0 { cof } else { cof.neg_ref() };
                    // transpose: cofactor of (i, j) lands at (j, i)
                    *adj.get_mut(j, i) = signed;
                }
            }
        }
        let det = det_rec(self);
        let left = adj.mul(self)?;
        let right = self.mul(&adj)?;
        let expected = PolyMatrix::scalar(n, &det);
        if left != expected || right != expected {
            return Err(Error::VerificationFailed(
                "adjugate identity adj(M)*M = det(M)*Id".into(),
            ));
        }
        Ok(adj)
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> PolyMatrix<K> {
        let n = self.rows;
        let mut entries = Vec::with_capacity((n - 1) * (n - 1));
        for i in 0..n {
            if i == skip_row {
                continue;
            }
            for j in 0..n {
                if j == skip_col {
                    continue;
                }
                entries.push(self.get(i, j).clone());
            }
        }
        PolyMatrix {
            rows: n - 1,
            cols: n - 1,
            entries,
        }
    }

    /// Block-diagonal sum.
    pub fn block_diag(blocks: &[PolyMatrix<K>]) -> PolyMatrix<K> {
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = PolyMatrix::zero(rows, cols);
        let mut ro = 0;
        let mut co = 0;
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    *out.get_mut(ro + i, co + j) = b.get(i, j).clone();
                }
            }
            ro += b.rows;
            co += b.cols;
        }
        out
    }

    /// True when every entry lies in the maximal ideal of the surface
    /// variables, i.e. no term of any entry is constant in `X1, X2, X3`.
    pub fn is_reduced(&self) -> bool {
        self.entries.iter().all(|p| p.has_no_x_constant_term())
    }
}

fn det_rec<K: Coeff>(m: &PolyMatrix<K>) -> Poly<K> {
    let n = m.rows;
    match n {
        0 => return Poly::one(),
        1 => return m.get(0, 0).clone(),
        2 => {
            return m
                .get(0, 0)
                .mul_ref(m.get(1, 1))
                .sub_ref(&m.get(0, 1).mul_ref(m.get(1, 0)))
        }
        _ => {}
    }
    // expand along the row with the most zeros
    let row = (0..n)
        .max_by_key(|&i| (0..n).filter(|&j| m.get(i, j).is_zero()).count())
        .unwrap();
    let mut det = Poly::zero();
    for j in 0..n {
        let e = m.get(row, j);
        if e.is_zero() {
            continue;
        }
        let minor = m.minor(row, j);
        let cof = det_rec(&minor);
        let signed = if (row + j) % 2 == 0 {
            e.mul_ref(&cof)
        } else {
            e.mul_ref(&cof).neg_ref()
        };
        det = det.add_ref(&signed);
    }
    det
}

impl<K: Coeff> fmt::Debug for PolyMatrix<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Serialized form `{rows, cols, entries}` with entries in the polynomial
/// text grammar.
#[derive(Serialize, Deserialize)]
struct MatrixDoc {
    rows: usize,
    cols: usize,
    entries: Vec<Poly<Rat>>,
}

impl Serialize for PolyMatrix<Rat> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixDoc {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PolyMatrix<Rat> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = MatrixDoc::deserialize(d)?;
        PolyMatrix::new(doc.rows, doc.cols, doc.entries).map_err(serde::de::Error::custom)
    }
}
