//! Elementary matrices and words in them.

use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldSpec};
use crate::matrix::{Side, SqMatrix};
use crate::poly::Poly;

/// `E_ij(t) = I + t e_ij` with 0-based indices, `i != j`.
#[derive(Clone, PartialEq, Eq)]
pub struct ElemMat {
    pub i: usize,
    pub j: usize,
    pub t: Poly,
}

impl ElemMat {
    pub fn new(i: usize, j: usize, t: Poly) -> Result<Self> {
        if i == j {
            return Err(Error::InvalidElementary(format!("diagonal position ({i}, {j})")));
        }
        Ok(ElemMat { i, j, t })
    }

    pub fn to_matrix(&self, n: usize) -> SqMatrix {
        let mut m = SqMatrix::identity(self.t.field(), n);
        m.set(self.i, self.j, self.t.clone());
        m
    }

    pub fn inverse(&self) -> ElemMat {
        ElemMat {
            i: self.i,
            j: self.j,
            t: -&self.t,
        }
    }

    pub fn transpose(&self) -> ElemMat {
        ElemMat {
            i: self.j,
            j: self.i,
            t: self.t.clone(),
        }
    }
}

impl std::fmt::Debug for ElemMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "E{}{}({})", self.i + 1, self.j + 1, self.t.pretty())
    }
}

/// An ordered product of elementary matrices of a fixed size.
/// Identity factors are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct ElemWord {
    n: usize,
    field: FieldSpec,
    factors: Vec<ElemMat>,
}

impl ElemWord {
    pub fn new(field: &FieldSpec, n: usize) -> Self {
        ElemWord {
            n,
            field: field.clone(),
            factors: Vec::new(),
        }
    }

    pub fn from_factors(field: &FieldSpec, n: usize, factors: Vec<ElemMat>) -> Result<Self> {
        let mut w = ElemWord::new(field, n);
        for e in factors {
            w.try_push(e)?;
        }
        Ok(w)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn factors(&self) -> &[ElemMat] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn try_push(&mut self, e: ElemMat) -> Result<()> {
        if e.i >= self.n || e.j >= self.n || e.i == e.j {
            return Err(Error::InvalidElementary(format!(
                "E{}{} in size {}",
                e.i + 1,
                e.j + 1,
                self.n
            )));
        }
        if e.t.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        if !e.t.is_zero() {
            self.factors.push(e);
        }
        Ok(())
    }

    /// Appends `E_ij(t)`; panics on a malformed factor.
    pub fn push(&mut self, i: usize, j: usize, t: Poly) {
        self.try_push(ElemMat { i, j, t }).expect("well-formed elementary factor");
    }

    /// `self <- self * other`.
    pub fn extend(&mut self, other: &ElemWord) {
        assert_eq!(self.n, other.n, "word sizes differ");
        assert!(self.field == other.field, "word fields differ");
        self.factors.extend(other.factors.iter().cloned());
    }

    pub fn concat(words: &[&ElemWord]) -> ElemWord {
        let mut out = ElemWord::new(&words[0].field, words[0].n);
        for w in words {
            out.extend(w);
        }
        out
    }

    pub fn product(&self) -> SqMatrix {
        SqMatrix::identity(&self.field, self.n)
            .apply_word(self, Side::Right)
            .expect("matching shape")
    }

    pub fn inverse(&self) -> ElemWord {
        self.map_reversed(ElemMat::inverse)
    }

    pub fn transpose(&self) -> ElemWord {
        self.map_reversed(ElemMat::transpose)
    }

    fn map_reversed(&self, f: impl Fn(&ElemMat) -> ElemMat) -> ElemWord {
        ElemWord {
            n: self.n,
            field: self.field.clone(),
            factors: self.factors.iter().rev().map(f).collect(),
        }
    }

    /// The word for `D W D^{-1}`, `D = diag(d)`.
    pub fn conjugate_by_diagonal(&self, d: &[FieldElement]) -> Result<ElemWord> {
        if d.len() != self.n {
            return Err(Error::ShapeMismatch(format!(
                "{} diagonal entries for size {}",
                d.len(),
                self.n
            )));
        }
        let f = &self.field;
        let inv = d
            .iter()
            .map(|&x| f.try_inv(x))
            .collect::<Result<Vec<_>>>()?;
        let factors = self
            .factors
            .iter()
            .map(|e| ElemMat {
                i: e.i,
                j: e.j,
                t: e.t.scale(f.mul(d[e.i], inv[e.j])),
            })
            .collect();
        Ok(ElemWord {
            n: self.n,
            field: f.clone(),
            factors,
        })
    }

    /// Renames coordinate `k` to `perm[k]`; with `P` the matching permutation
    /// matrix this is the word for `P W P^{-1}`.
    pub fn relabel(&self, perm: &[usize]) -> ElemWord {
        assert_eq!(perm.len(), self.n);
        ElemWord {
            n: self.n,
            field: self.field.clone(),
            factors: self
                .factors
                .iter()
                .map(|e| ElemMat {
                    i: perm[e.i],
                    j: perm[e.j],
                    t: e.t.clone(),
                })
                .collect(),
        }
    }

    /// Same factors viewed in a larger size.
    pub fn embed(&self, n: usize) -> ElemWord {
        assert!(n >= self.n);
        ElemWord {
            n,
            field: self.field.clone(),
            factors: self.factors.clone(),
        }
    }

    pub fn max_degree(&self) -> isize {
        self.factors.iter().map(|e| e.t.deg()).max().unwrap_or(-1)
    }
}

impl std::fmt::Debug for ElemWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(&self.factors).finish()
    }
}

/// Four factors whose product is `diag(.., w at i, .., w^-1 at j, ..)`:
/// `E_ij(1) E_ji(w-1) E_ij(-w^-1) E_ji(-w(w-1))`. Empty for `w = 1`.
pub fn unit_diag_word(
    field: &FieldSpec,
    w: FieldElement,
    i: usize,
    j: usize,
    n: usize,
) -> Result<ElemWord> {
    let w_inv = field.try_inv(w)?;
    if i == j || i >= n || j >= n {
        return Err(Error::InvalidElementary(format!("unit patch at ({}, {})", i + 1, j + 1)));
    }
    let mut word = ElemWord::new(field, n);
    if w.is_one() {
        return Ok(word);
    }
    let c = |x: FieldElement| Poly::constant(field, x);
    let w1 = field.sub(w, FieldElement::ONE);
    word.push(i, j, Poly::one(field));
    word.push(j, i, c(w1));
    word.push(i, j, c(field.neg(w_inv)));
    word.push(j, i, c(field.neg(field.mul(w, w1))));
    Ok(word)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_diag_exhaustive_small_fields() {
        for (p, m) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1), (2, 4)] {
            let f = FieldSpec::new(p, m).unwrap();
            for w in f.elements().filter(|w| !w.is_zero()) {
                for (i, j) in [(0, 1), (1, 0), (0, 2), (2, 1)] {
                    let word = unit_diag_word(&f, w, i, j, 3).unwrap();
                    assert_eq!(word.len(), if w.is_one() { 0 } else { 4 });
                    let mut d = vec![FieldElement::ONE; 3];
                    d[i] = w;
                    d[j] = f.inv(w).unwrap();
                    assert_eq!(word.product(), SqMatrix::diagonal(&f, &d));
                }
            }
        }
    }

    #[test]
    fn unit_diag_gf3_example() {
        let f = FieldSpec::prime(3).unwrap();
        let two = f.from_int(2);
        let word = unit_diag_word(&f, two, 0, 1, 2).unwrap();
        let one = Poly::one(&f);
        let expected = [ElemMat::new(0, 1, one.clone()).unwrap(),
            ElemMat::new(1, 0, one.clone()).unwrap(),
            ElemMat::new(0, 1, one.clone()).unwrap(),
            ElemMat::new(1, 0, one).unwrap()];
        assert_eq!(word.factors(), &expected[..]);
        assert_eq!(word.product(), SqMatrix::diagonal(&f, &[two, two]));
        assert!(unit_diag_word(&f, FieldElement::ZERO, 0, 1, 2).is_err());
    }

    #[test]
    fn conjugation_example_gf4() {
        let f = FieldSpec::new(2, 2).unwrap();
        let g = f.element(2).unwrap();
        let mut w = ElemWord::new(&f, 3);
        w.push(0, 1, Poly::x(&f));
        let c = w.conjugate_by_diagonal(&[g, FieldElement::ONE, FieldElement::ONE]).unwrap();
        assert_eq!(c.factors()[0].t, Poly::x(&f).scale(g));
        let same = w.conjugate_by_diagonal(&[FieldElement::ONE; 3]).unwrap();
        assert_eq!(same, w);
        assert!(w.conjugate_by_diagonal(&[FieldElement::ZERO, FieldElement::ONE, FieldElement::ONE]).is_err());
    }

    #[test]
    fn zero_factors_are_dropped() {
        let f = FieldSpec::prime(2).unwrap();
        let mut w = ElemWord::new(&f, 3);
        w.push(0, 1, Poly::zero(&f));
        assert!(w.is_empty());
        assert!(w.try_push(ElemMat { i: 1, j: 1, t: Poly::one(&f) }).is_err());
        assert!(w.try_push(ElemMat { i: 0, j: 3, t: Poly::one(&f) }).is_err());
    }

    #[test]
    fn elementary_products_add_parameters() {
        let f = FieldSpec::prime(3).unwrap();
        let (t, s) = (Poly::x(&f), Poly::from_codes(&f, &[1, 2]).unwrap());
        let a = ElemMat::new(0, 1, t.clone()).unwrap().to_matrix(3);
        let b = ElemMat::new(0, 1, s.clone()).unwrap().to_matrix(3);
        assert_eq!(a.mul(&b).unwrap(), ElemMat::new(0, 1, &t + &s).unwrap().to_matrix(3));
    }

    #[test]
    fn left_and_right_application() {
        let f = FieldSpec::prime(2).unwrap();
        let m = SqMatrix::from_codes(&f, &[vec![vec![0, 1], vec![1, 1]], vec![vec![1, 1, 1], vec![0, 0, 1]]]).unwrap();
        let mut w = ElemWord::new(&f, 2);
        w.push(1, 0, Poly::x(&f));
        w.push(0, 1, Poly::one(&f));
        assert_eq!(m.apply_word(&w, Side::Left).unwrap(), w.product().mul(&m).unwrap());
        assert_eq!(m.apply_word(&w, Side::Right).unwrap(), m.mul(&w.product()).unwrap());
        assert_eq!(m.apply_word(&ElemWord::new(&f, 2), Side::Left).unwrap(), m);
    }
}
