//! Dense square matrices over F_q[X].

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldSpec};
use crate::poly::Poly;
use crate::word::{ElemMat, ElemWord};

#[derive(Clone, PartialEq, Eq)]
pub struct SqMatrix {
    n: usize,
    field: FieldSpec,
    entries: Vec<Poly>,
}

/// Which side a word multiplies from: row moves act on the left, column moves on the right.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl SqMatrix {
    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        let mut entries = vec![Poly::zero(field); n * n];
        for i in 0..n {
            entries[i * n + i] = Poly::one(field);
        }
        SqMatrix {
            n,
            field: field.clone(),
            entries,
        }
    }

    pub fn from_rows(rows: Vec<Vec<Poly>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::ShapeMismatch("matrix has no rows".into()));
        }
        let field = rows[0]
            .first()
            .ok_or_else(|| Error::ShapeMismatch("matrix row is empty".into()))?
            .field()
            .clone();
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::ShapeMismatch(format!(
                    "row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
            for e in row {
                if e.field() != &field {
                    return Err(Error::FieldMismatch);
                }
                entries.push(e);
            }
        }
        Ok(SqMatrix { n, field, entries })
    }

    /// Convenience constructor from integer-code rows.
    pub fn from_codes(field: &FieldSpec, rows: &[Vec<Vec<u32>>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|c| Poly::from_codes(field, c)).collect())
            .collect::<Result<Vec<Vec<Poly>>>>()?;
        Self::from_rows(rows)
    }

    /// The 2x2 block `core` in the top-left corner of an `n x n` identity.
    pub fn framed(core: &SqMatrix, n: usize) -> Self {
        assert_eq!(core.n, 2, "framed core must be 2x2");
        let mut m = SqMatrix::identity(&core.field, n);
        for i in 0..2 {
            for j in 0..2 {
                m.set(i, j, core.get(i, j).clone());
            }
        }
        m
    }

    pub fn diagonal(field: &FieldSpec, diag: &[FieldElement]) -> Self {
        let n = diag.len();
        let mut m = SqMatrix::identity(field, n);
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, Poly::constant(field, d));
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Poly) {
        assert!(v.field() == &self.field, "entry lives over a different field");
        self.entries[i * self.n + j] = v;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Poly]> {
        self.entries.chunks(self.n)
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                let e = self.get(i, j);
                if i == j {
                    e.is_one()
                } else {
                    e.is_zero()
                }
            })
        })
    }

    /// Largest entry degree; `-1` for the zero matrix.
    pub fn max_degree(&self) -> isize {
        self.entries.iter().map(Poly::deg).max().unwrap_or(-1)
    }

    /// The top-left `k x k` block.
    pub fn block(&self, k: usize) -> SqMatrix {
        let mut entries = Vec::with_capacity(k * k);
        for i in 0..k {
            for j in 0..k {
                entries.push(self.get(i, j).clone());
            }
        }
        SqMatrix {
            n: k,
            field: self.field.clone(),
            entries,
        }
    }

    /// True when everything outside the top-left 2x2 block is the identity.
    pub fn is_framed(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                if i < 2 && j < 2 {
                    return true;
                }
                let e = self.get(i, j);
                if i == j {
                    e.is_one()
                } else {
                    e.is_zero()
                }
            })
        })
    }

    pub fn transpose(&self) -> SqMatrix {
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(self.get(j, i).clone());
            }
        }
        SqMatrix {
            n,
            field: self.field.clone(),
            entries,
        }
    }

    /// `out[i][j] = self[perm[i]][perm[j]]`, a conjugation by a permutation matrix.
    pub fn permuted(&self, perm: &[usize]) -> SqMatrix {
        assert_eq!(perm.len(), self.n);
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(self.get(perm[i], perm[j]).clone());
            }
        }
        SqMatrix {
            n,
            field: self.field.clone(),
            entries,
        }
    }

    pub fn mul(&self, other: &SqMatrix) -> Result<SqMatrix> {
        if self.n != other.n {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.n, self.n, other.n, other.n
            )));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Poly::zero(&self.field);
                for k in 0..n {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                entries.push(acc);
            }
        }
        Ok(SqMatrix {
            n,
            field: self.field.clone(),
            entries,
        })
    }

    /// Row move `R_i += t R_j`, i.e. left multiplication by `E_ij(t)`.
    pub fn row_add(&mut self, i: usize, j: usize, t: &Poly) {
        if t.is_zero() {
            return;
        }
        let n = self.n;
        for k in 0..n {
            let src = &self.entries[j * n + k];
            if src.is_zero() {
                continue;
            }
            let v = &self.entries[i * n + k] + &(t * src);
            self.entries[i * n + k] = v;
        }
    }

    /// Column move `C_j += t C_i`, i.e. right multiplication by `E_ij(t)`.
    pub fn col_add(&mut self, i: usize, j: usize, t: &Poly) {
        if t.is_zero() {
            return;
        }
        let n = self.n;
        for k in 0..n {
            let src = &self.entries[k * n + i];
            if src.is_zero() {
                continue;
            }
            let v = &self.entries[k * n + j] + &(t * src);
            self.entries[k * n + j] = v;
        }
    }

    pub fn apply_left(&mut self, e: &ElemMat) {
        self.row_add(e.i, e.j, &e.t);
    }

    pub fn apply_right(&mut self, e: &ElemMat) {
        self.col_add(e.i, e.j, &e.t);
    }

    /// `product(word) * self` or `self * product(word)`.
    pub fn apply_word(&self, word: &ElemWord, side: Side) -> Result<SqMatrix> {
        if word.n() != self.n {
            return Err(Error::ShapeMismatch(format!(
                "word acts on {} coordinates, matrix is {}x{}",
                word.n(),
                self.n,
                self.n
            )));
        }
        if word.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        let mut out = self.clone();
        match side {
            Side::Left => word.factors().iter().rev().for_each(|e| out.apply_left(e)),
            Side::Right => word.factors().iter().for_each(|e| out.apply_right(e)),
        }
        Ok(out)
    }

    /// Exact determinant: cofactor expansion up to 4x4, fraction-free
    /// elimination beyond.
    pub fn det(&self) -> Poly {
        if self.n <= 4 {
            self.det_cofactor()
        } else {
            self.det_bareiss()
        }
    }

    pub fn det_cofactor(&self) -> Poly {
        let idx: Vec<usize> = (0..self.n).collect();
        cofactor(self, 0, &idx)
    }

    /// Bareiss elimination; every division is exact by Sylvester's identity.
    pub fn det_bareiss(&self) -> Poly {
        let n = self.n;
        let field = &self.field;
        let mut a: Vec<Vec<Poly>> = self.rows().map(|r| r.to_vec()).collect();
        let mut negate = false;
        let mut prev = Poly::one(field);
        for k in 0..n.saturating_sub(1) {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        negate = !negate;
                    }
                    None => return Poly::zero(field),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = num
                        .exact_div(&prev)
                        .expect("Bareiss division is exact");
                }
                a[i][k] = Poly::zero(field);
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        if negate {
            -d
        } else {
            d
        }
    }

    pub fn is_special_linear(&self) -> bool {
        self.det().is_one()
    }
}

fn cofactor(m: &SqMatrix, row: usize, cols: &[usize]) -> Poly {
    let field = m.field();
    if cols.len() == 1 {
        return m.get(row, cols[0]).clone();
    }
    let mut acc = Poly::zero(field);
    for (k, &c) in cols.iter().enumerate() {
        let e = m.get(row, c);
        if e.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = e * &cofactor(m, row + 1, &rest);
        acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

impl fmt::Debug for SqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SqMatrix {}x{} over {:?}", self.n, self.n, self.field)?;
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|p| p.pretty()).collect();
            writeln!(f, "  ( {} )", cells.join(" , "))?;
        }
        Ok(())
    }
}
