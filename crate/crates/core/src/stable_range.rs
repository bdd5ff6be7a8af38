//! Stable-range reduction of an SL_n matrix to a framed SL2 matrix.
//!
//! Stage `k` (for `k = n` down to 3) works on the last row `(r_1, .., r_k)` of
//! the leading `k x k` block: fold the tail into one entry so that two entries
//! become coprime, make `r_k = 1` with a Bezout combination of that pair, then
//! clear the last row and column. A stage costs at most `3k - 2` moves.

use crate::certificate::stable_range_bound;
use crate::error::{Error, Result};
use crate::gf::FieldElement;
use crate::matrix::SqMatrix;
use crate::poly::{coprime_shift, Poly};
use crate::word::{ElemMat, ElemWord};

/// A fold choice for one stage: `r_target += t * w`, where `w` is the gcd of the
/// entries other than `r_anchor` and `r_target`, spread over their columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fold {
    pub anchor: usize,
    pub target: usize,
    pub t: Poly,
}

/// Column moves making the designated pair coprime.
#[derive(Clone, Debug)]
pub struct FoldPlan {
    /// Right factors `E_{j,target}(t * lambda_j)`.
    pub moves: Vec<ElemMat>,
    pub pair: (usize, usize),
}

#[derive(Clone, Debug)]
pub struct FramedReduction {
    pub left: ElemWord,
    pub right: ElemWord,
    /// The 2x2 block left in the top-left corner.
    pub core: SqMatrix,
    pub moves_used: usize,
    /// Moves spent per stage, from `k = n` down to 3.
    pub stage_moves: Vec<usize>,
}

/// `(g, lambda)` with `g = sum lambda_i v_i` the monic gcd (zero if all vanish).
fn combination(values: &[&Poly]) -> (Poly, Vec<Poly>) {
    let field = values[0].field();
    let mut g = Poly::zero(field);
    let mut lambda: Vec<Poly> = Vec::with_capacity(values.len());
    for v in values {
        if v.is_zero() {
            lambda.push(Poly::zero(field));
            continue;
        }
        let (d, s, t) = g.xgcd(v).expect("v is nonzero");
        for l in lambda.iter_mut() {
            *l = &*l * &s;
        }
        lambda.push(t);
        g = d;
    }
    (g, lambda)
}

fn tail_indices(k: usize, anchor: usize, target: usize) -> Vec<usize> {
    (0..k).filter(|&j| j != anchor && j != target).collect()
}

/// The gcd `w` of the tail of `row` and the fold moves for parameter `t`.
fn fold_moves(row: &[Poly], fold: &Fold) -> (Poly, Vec<ElemMat>) {
    let tail = tail_indices(row.len(), fold.anchor, fold.target);
    let vals: Vec<&Poly> = tail.iter().map(|&j| &row[j]).collect();
    let (w, lambda) = combination(&vals);
    let moves = tail
        .iter()
        .zip(lambda)
        .map(|(&j, l)| ElemMat {
            i: j,
            j: fold.target,
            t: &fold.t * &l,
        })
        .filter(|e| !e.t.is_zero())
        .collect();
    (w, moves)
}

/// Whether `fold` leaves a coprime pair `(r_anchor, r_target + t w)`.
pub fn fold_is_valid(row: &[Poly], fold: &Fold) -> bool {
    let k = row.len();
    if fold.anchor == fold.target || fold.anchor >= k - 1 || fold.target >= k - 1 {
        return false;
    }
    if row[fold.anchor].is_zero() {
        return false;
    }
    let (w, _) = fold_moves(row, fold);
    row[fold.anchor].gcd(&(&row[fold.target] + &(&fold.t * &w))).is_one()
}

/// The default fold: anchor at the first nonzero entry among `r_1..r_{k-1}`,
/// target at the lowest other index, `t` from the coprime shift (zero when the
/// pair is already coprime). `None` when `r_1..r_{k-1}` all vanish.
pub fn default_fold(row: &[Poly]) -> Result<Option<Fold>> {
    let k = row.len();
    let Some(anchor) = (0..k - 1).find(|&j| !row[j].is_zero()) else {
        return Ok(None);
    };
    let target = (0..k - 1).find(|&j| j != anchor).expect("k >= 3");
    let u = &row[anchor];
    let v = &row[target];
    let t = if u.gcd(v).is_one() {
        Poly::zero(u.field())
    } else {
        let (w, _) = fold_moves(
            row,
            &Fold {
                anchor,
                target,
                t: Poly::one(u.field()),
            },
        );
        coprime_shift(u, v, &w)?
    };
    Ok(Some(Fold { anchor, target, t }))
}

/// At most `k - 2` column moves after which the designated pair is coprime.
pub fn coprimify_last_row(row: &[Poly]) -> Result<FoldPlan> {
    let k = row.len();
    if k < 3 {
        return Err(Error::ShapeMismatch(format!("row of length {k}, need at least 3")));
    }
    let refs: Vec<&Poly> = row.iter().collect();
    if !combination(&refs).0.is_one() {
        return Err(Error::NotCoprime("row entries have a common factor".into()));
    }
    match default_fold(row)? {
        None => Ok(FoldPlan {
            moves: Vec::new(),
            pair: (0, 1),
        }),
        Some(fold) => {
            let (_, moves) = fold_moves(row, &fold);
            debug_assert!(fold_is_valid(row, &fold));
            Ok(FoldPlan {
                moves,
                pair: (fold.anchor, fold.target),
            })
        }
    }
}

/// Fold choices for a stage: the default first, then every valid
/// `(anchor, target)` ordering with the coprime shift and with the first
/// `small` polynomials in enumeration order as `t`. Duplicates are removed.
pub fn fold_candidates(row: &[Poly], small: u64) -> Result<Vec<Fold>> {
    let k = row.len();
    let field = row[0].field();
    let mut out: Vec<Fold> = Vec::new();
    let push = |f: Fold, out: &mut Vec<Fold>| {
        if !out.contains(&f) && fold_is_valid(row, &f) {
            out.push(f);
        }
    };
    if let Some(f) = default_fold(row)? {
        push(f, &mut out);
    } else {
        return Ok(out);
    }
    for anchor in 0..k - 1 {
        for target in 0..k - 1 {
            if anchor == target || row[anchor].is_zero() {
                continue;
            }
            let probe = Fold {
                anchor,
                target,
                t: Poly::one(field),
            };
            let (w, _) = fold_moves(row, &probe);
            if let Ok(t) = coprime_shift(&row[anchor], &row[target], &w) {
                push(Fold { anchor, target, t }, &mut out);
            }
            for i in 0..small {
                push(
                    Fold {
                        anchor,
                        target,
                        t: Poly::from_index(field, i),
                    },
                    &mut out,
                );
            }
        }
    }
    Ok(out)
}

/// Incremental stable-range reduction; stages can be driven one at a time so
/// that callers may pick the fold of each stage.
#[derive(Clone, Debug)]
pub struct Reducer {
    m: SqMatrix,
    /// Row moves in the order applied.
    left_ops: Vec<ElemMat>,
    right: ElemWord,
    k: usize,
    stage_moves: Vec<usize>,
}

impl Reducer {
    pub fn new(m: &SqMatrix) -> Result<Self> {
        let n = m.n();
        if n < 3 {
            return Err(Error::DimensionTooSmall(n));
        }
        let det = m.det();
        if !det.is_one() {
            return Err(Error::NotSpecialLinear(det.to_string()));
        }
        Ok(Reducer {
            m: m.clone(),
            left_ops: Vec::new(),
            right: ElemWord::new(m.field(), n),
            k: n,
            stage_moves: Vec::new(),
        })
    }

    /// Size of the block still to be reduced.
    pub fn block_size(&self) -> usize {
        self.k
    }

    pub fn current(&self) -> &SqMatrix {
        &self.m
    }

    pub fn moves_used(&self) -> usize {
        self.left_ops.len() + self.right.len()
    }

    /// Last row of the current block.
    pub fn last_row(&self) -> Vec<Poly> {
        (0..self.k).map(|j| self.m.get(self.k - 1, j).clone()).collect()
    }

    fn col(&mut self, e: ElemMat) {
        if !e.t.is_zero() {
            self.m.apply_right(&e);
            self.right.push(e.i, e.j, e.t);
        }
    }

    fn row(&mut self, e: ElemMat) {
        if !e.t.is_zero() {
            self.m.apply_left(&e);
            self.left_ops.push(e);
        }
    }

    /// Runs one stage, shrinking the block by one. `fold = None` uses the
    /// default fold. Returns the number of moves spent.
    pub fn step(&mut self, fold: Option<&Fold>) -> Result<usize> {
        let k = self.k;
        assert!(k >= 3, "already framed");
        let l = k - 1;
        let field = self.m.field().clone();
        let before = self.moves_used();
        let row = self.last_row();

        if !row[l].is_one() {
            if row[..l].iter().all(Poly::is_zero) {
                // r_k is a unit omega: two moves make it 1.
                let omega = row[l]
                    .as_constant()
                    .filter(|c| !c.is_zero())
                    .ok_or_else(|| Error::NotSpecialLinear("last row is not unimodular".into()))?;
                let inv = field.inv(omega).expect("unit");
                self.col(ElemMat { i: l, j: 0, t: Poly::constant(&field, inv) });
                let one_minus = field.sub(FieldElement::ONE, omega);
                self.col(ElemMat { i: 0, j: l, t: Poly::constant(&field, one_minus) });
            } else {
                let fold = match fold {
                    Some(f) => f.clone(),
                    None => default_fold(&row)?.expect("nonzero prefix"),
                };
                if !fold_is_valid(&row, &fold) {
                    return Err(Error::NotCoprime(format!("fold {fold:?} does not give a coprime pair")));
                }
                let (_, moves) = fold_moves(&row, &fold);
                for e in moves {
                    self.col(e);
                }
                let (a, b) = (fold.anchor, fold.target);
                let u = self.m.get(l, a).clone();
                let v = self.m.get(l, b).clone();
                let rhs = &Poly::one(&field) - self.m.get(l, l);
                let (g, alpha0, beta0) = u.xgcd(&v)?;
                debug_assert!(g.is_one());
                let mut alpha = &alpha0 * &rhs;
                let mut beta = &beta0 * &rhs;
                if v.deg() > 0 {
                    let (quo, rem) = alpha.divmod(&v)?;
                    alpha = rem;
                    beta = &beta + &(&quo * &u);
                }
                self.col(ElemMat { i: a, j: l, t: alpha });
                self.col(ElemMat { i: b, j: l, t: beta });
            }
        }
        debug_assert!(self.m.get(l, l).is_one());

        for j in 0..l {
            let t = -self.m.get(l, j);
            self.col(ElemMat { i: l, j, t });
        }
        for i in 0..l {
            let t = -self.m.get(i, l);
            self.row(ElemMat { i, j: l, t });
        }

        let used = self.moves_used() - before;
        assert!(used <= 3 * k - 2, "stage {k} used {used} moves");
        self.stage_moves.push(used);
        self.k -= 1;
        Ok(used)
    }

    pub fn finish(self) -> FramedReduction {
        assert_eq!(self.k, 2, "reduction not complete");
        let n = self.m.n();
        let mut left = ElemWord::new(self.m.field(), n);
        for e in self.left_ops.into_iter().rev() {
            left.push(e.i, e.j, e.t);
        }
        let moves_used = left.len() + self.right.len();
        assert!(moves_used <= stable_range_bound(n));
        debug_assert!(self.m.is_framed());
        FramedReduction {
            left,
            right: self.right,
            core: self.m.block(2),
            moves_used,
            stage_moves: self.stage_moves,
        }
    }
}

/// Reduces `m` (n >= 3, det 1) with the default folds.
pub fn reduce_to_framed(m: &SqMatrix) -> Result<FramedReduction> {
    let mut r = Reducer::new(m)?;
    while r.block_size() > 2 {
        r.step(None)?;
    }
    Ok(r.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldSpec;
    use crate::matrix::Side;

    fn gf2() -> FieldSpec {
        FieldSpec::prime(2).unwrap()
    }

    fn p(codes: &[u32]) -> Poly {
        Poly::from_codes(&gf2(), codes).unwrap()
    }

    fn check(m: &SqMatrix, r: &FramedReduction) {
        let lhs = m
            .apply_word(&r.left, Side::Left)
            .unwrap()
            .apply_word(&r.right, Side::Right)
            .unwrap();
        assert_eq!(lhs, SqMatrix::framed(&r.core, m.n()));
        assert!(r.core.det().is_one());
        assert_eq!(r.moves_used, r.left.len() + r.right.len());
    }

    #[test]
    fn identity_needs_no_moves() {
        let m = SqMatrix::identity(&gf2(), 3);
        let r = reduce_to_framed(&m).unwrap();
        assert_eq!(r.moves_used, 0);
        assert!(r.core.is_identity());
    }

    #[test]
    fn coprimify_examples() {
        let plan = coprimify_last_row(&[p(&[0, 1]), p(&[1, 1]), p(&[1, 0, 1])]).unwrap();
        assert!(plan.moves.is_empty());
        assert_eq!(plan.pair, (0, 1));

        let plan = coprimify_last_row(&[p(&[0, 1, 1]), p(&[0, 1]), p(&[1])]).unwrap();
        assert_eq!(plan.moves.len(), 1);
        assert_eq!(plan.moves[0].t, p(&[1, 1]));
        assert_eq!(plan.pair, (0, 1));

        let plan = coprimify_last_row(&[p(&[]), p(&[]), p(&[1])]).unwrap();
        assert!(plan.moves.is_empty());

        assert!(coprimify_last_row(&[p(&[0, 1]), p(&[0, 1]), p(&[0, 0, 1])]).is_err());
    }

    #[test]
    fn zero_anchor_shifts() {
        let row = [p(&[]), p(&[0, 1, 1]), p(&[1, 1, 1])];
        let f = default_fold(&row).unwrap().unwrap();
        assert_eq!((f.anchor, f.target), (1, 0));
        assert!(fold_is_valid(&row, &f));
    }

    #[test]
    fn rejects_small_or_singular_inputs() {
        let f = gf2();
        assert!(matches!(
            reduce_to_framed(&SqMatrix::identity(&f, 2)),
            Err(Error::DimensionTooSmall(2))
        ));
        let mut m = SqMatrix::identity(&f, 3);
        m.set(0, 0, Poly::x(&f));
        assert!(matches!(reduce_to_framed(&m), Err(Error::NotSpecialLinear(_))));
    }

    #[test]
    fn unit_tail_in_odd_characteristic() {
        let f = FieldSpec::prime(3).unwrap();
        let two = Poly::from_codes(&f, &[2]).unwrap();
        let mut m = SqMatrix::identity(&f, 3);
        m.set(1, 1, two.clone());
        m.set(2, 2, two);
        m.set(1, 2, Poly::x(&f));
        let r = reduce_to_framed(&m).unwrap();
        check(&m, &r);
        assert!(r.moves_used <= 7);
    }

    #[test]
    fn elementary_input_stays_short() {
        let f = gf2();
        let mut w = ElemWord::new(&f, 3);
        w.push(0, 2, Poly::x(&f).pow(5));
        let m = w.product();
        let r = reduce_to_framed(&m).unwrap();
        check(&m, &r);
        assert_eq!(r.moves_used, 1);
    }

    #[test]
    fn four_by_four_fold_spreads_over_the_tail() {
        let f = gf2();
        let mut w = ElemWord::new(&f, 4);
        w.push(3, 0, p(&[0, 1, 1]));
        w.push(3, 1, p(&[0, 1]));
        w.push(3, 2, p(&[1, 1]));
        w.push(0, 3, p(&[1, 0, 1]));
        w.push(2, 3, p(&[0, 0, 1]));
        w.push(1, 0, p(&[1, 1]));
        let m = w.product();
        let r = reduce_to_framed(&m).unwrap();
        check(&m, &r);
        assert!(r.stage_moves[0] <= 10 && r.stage_moves[1] <= 7);
        assert!(r.moves_used <= 17);
    }
}
