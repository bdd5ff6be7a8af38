//! The main step: a framed SL2 matrix as a bounded elementary word.
//!
//! The anti-diagonal is made prime, the matrix is split as `X Y^-1` with both
//! factors powers of it, and each factor is brought to a diagonal form by the
//! swindle lemma applied to its Cayley-Hamilton expression.

mod ch;
mod dagger;
mod framed;
mod primalize;
mod swindle;

pub use ch::{ch_power, CHPair};
pub use dagger::{dagger_diagonal, dagger_reduce, DaggerResult};
pub use framed::{
    euclid_plan, execute_plan, plan_framed, reduce_framed_sl2, reduce_framed_sl2_with, FramedOptions, FramedPlan,
    FramedWord,
};
pub(crate) use framed::check_ceiling;
pub use primalize::{primalize_antidiagonal, primalize_with, split_exponents, Primalized};
pub use swindle::{swindle, swindle_traced, Swindle, SwindleFactors};

use crate::gf::FieldSpec;
use crate::matrix::SqMatrix;
use crate::poly::Poly;
use crate::word::{ElemMat, ElemWord};

/// A matrix together with the row and column moves applied to it so far:
/// `left * original * right = m`.
#[derive(Clone, Debug)]
pub(crate) struct Moves {
    pub m: SqMatrix,
    left_ops: Vec<ElemMat>,
    pub right: ElemWord,
    /// Moves requested, identity moves included.
    pub scheduled: usize,
}

impl Moves {
    pub fn new(m: SqMatrix) -> Self {
        let right = ElemWord::new(m.field(), m.n());
        Moves {
            m,
            left_ops: Vec::new(),
            right,
            scheduled: 0,
        }
    }

    /// `R_i += t R_j`.
    pub fn row(&mut self, i: usize, j: usize, t: Poly) {
        self.scheduled += 1;
        if !t.is_zero() {
            let e = ElemMat { i, j, t };
            self.m.apply_left(&e);
            self.left_ops.push(e);
        }
    }

    /// `C_j += t C_i`.
    pub fn col(&mut self, i: usize, j: usize, t: Poly) {
        self.scheduled += 1;
        if !t.is_zero() {
            let e = ElemMat { i, j, t };
            self.m.apply_right(&e);
            self.right.push(e.i, e.j, e.t);
        }
    }

    /// Applies a word from the left, factor by factor.
    pub fn left_word(&mut self, w: &ElemWord) {
        for e in w.factors().iter().rev() {
            self.row(e.i, e.j, e.t.clone());
        }
    }

    /// The left word: the row moves multiplied in application order.
    pub fn left(&self) -> ElemWord {
        let mut w = ElemWord::new(self.m.field(), self.m.n());
        for e in self.left_ops.iter().rev() {
            w.push(e.i, e.j, e.t.clone());
        }
        w
    }
}

/// The `n x n` matrix with `(a, b; c, d)` in the top-left corner.
pub fn framed_block(a: &Poly, b: &Poly, c: &Poly, d: &Poly, n: usize) -> SqMatrix {
    let core = SqMatrix::from_rows(vec![vec![a.clone(), b.clone()], vec![c.clone(), d.clone()]])
        .expect("2x2 block");
    SqMatrix::framed(&core, n)
}

fn constant(field: &FieldSpec, c: crate::gf::FieldElement) -> Poly {
    Poly::constant(field, c)
}
