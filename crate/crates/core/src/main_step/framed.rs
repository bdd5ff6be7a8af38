use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::dagger::dagger_diagonal;
use super::primalize::{default_primes, split_deltas};
use super::{dagger_reduce, primalize_with};
use crate::certificate::Breakdown;
use crate::error::{Error, Result};
use crate::gf::FieldElement;
use crate::matrix::SqMatrix;
use crate::poly::{delta, first_prime_of_degree, BigNat, Poly};
use crate::word::{unit_diag_word, ElemMat, ElemWord};

/// Limits and search effort for the framed SL2 step.
#[derive(Clone, Debug)]
pub struct FramedOptions {
    /// Highest degree the prime searcher may reach.
    pub max_prime_degree: usize,
    /// Largest allowed Cayley-Hamilton exponent.
    pub max_exponent: u64,
    /// Largest allowed predicted entry degree of the output.
    pub degree_ceiling: u64,
    /// How many admissible prime degrees per residue class are compared.
    pub prime_window: usize,
    /// Compare prime pairs and pivots instead of taking the first choice.
    pub search: bool,
    /// When the general path exceeds the ceiling, fall back to division steps
    /// ending in a short path, if they fit in 34 moves.
    pub fallback: bool,
}

impl Default for FramedOptions {
    fn default() -> Self {
        FramedOptions {
            max_prime_degree: 24,
            max_exponent: 1_000_000,
            degree_ceiling: 100_000,
            prime_window: 4,
            search: true,
            fallback: true,
        }
    }
}

/// How a framed SL2 block will be reduced. `swap` means the block is first
/// conjugated by the transposition of the two coordinates, so that `d` plays
/// the role of the pivot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FramedPlan {
    Identity,
    /// Pivot zero: the off-diagonal entries are units, 3 moves.
    ZeroPivot { swap: bool },
    /// Pivot a nonzero constant: at most 6 moves.
    UnitPivot { swap: bool },
    General {
        swap: bool,
        b_prime: Poly,
        c_prime: Poly,
        x: BigNat,
        y: BigNat,
        /// Exponent of the X factor, `x delta(b')`.
        k_x: BigNat,
        /// Exponent of the Y factor, `y delta(c')`.
        k_y: BigNat,
        /// Largest entry degree of the primalized block.
        block_degree: usize,
    },
    /// Division steps on the pivot's column (`rows`) or row until the pivot is
    /// zero or constant, then the matching short path. `moves` counts both.
    Euclid { swap: bool, rows: bool, moves: usize },
}

impl FramedPlan {
    /// Rough size of the largest output entry: exponent times block degree.
    pub fn predicted_degree(&self) -> BigNat {
        match self {
            FramedPlan::General { k_x, block_degree, .. } => k_x * BigNat::from((*block_degree).max(1)),
            _ => BigNat::zero(),
        }
    }

    fn swapped(&self) -> bool {
        match self {
            FramedPlan::Identity => false,
            FramedPlan::ZeroPivot { swap } | FramedPlan::UnitPivot { swap } => *swap,
            FramedPlan::General { swap, .. } => *swap,
            FramedPlan::Euclid { swap, .. } => *swap,
        }
    }

    /// Short paths first, then general plans by predicted degree, then the
    /// division fallback by length.
    pub(crate) fn rank(&self) -> (u8, BigNat, BigNat) {
        match self {
            FramedPlan::General { k_x, .. } => (1, self.predicted_degree(), k_x.clone()),
            FramedPlan::Euclid { moves, .. } => (2, BigNat::from(*moves), BigNat::zero()),
            _ => (0, BigNat::zero(), BigNat::zero()),
        }
    }
}

/// A word for `framed(B)` with its phase counts.
#[derive(Clone, Debug)]
pub struct FramedWord {
    pub word: ElemWord,
    pub breakdown: Breakdown,
    pub plan: FramedPlan,
    /// Units of the Y and X diagonal forms, on the general path.
    pub units: Option<(FieldElement, FieldElement)>,
    /// Move counts of the two dagger reductions.
    pub dagger_moves: Vec<usize>,
    /// Scheduled moves of the two swindles, identity moves included.
    pub swindle_scheduled: Vec<usize>,
    /// Whether each swindle took the `s = 0` path.
    pub swindle_degenerate: Vec<bool>,
}

fn check_block(b: &SqMatrix) -> Result<()> {
    if b.n() != 2 {
        return Err(Error::ShapeMismatch(format!("{0}x{0} block, expected 2x2", b.n())));
    }
    let det = b.det();
    if !det.is_one() {
        return Err(Error::NotSpecialLinear(det.to_string()));
    }
    Ok(())
}

fn swap_block(b: &SqMatrix) -> SqMatrix {
    b.permuted(&[1, 0])
}

fn swap_perm(n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.swap(0, 1);
    p
}

/// The first prime of each of the first `window` degrees in which the class of
/// `b` mod `a` has one.
fn prime_window(a: &Poly, b: &Poly, window: usize, max_degree: usize) -> Result<Vec<Poly>> {
    let start = b.rem(a)?.degree().unwrap_or(0).max(1);
    let mut out = Vec::new();
    for d in start..=max_degree {
        if out.len() >= window {
            break;
        }
        if let Some(p) = first_prime_of_degree(a, b, d)? {
            out.push(p);
        }
    }
    Ok(out)
}

fn general_plan(b: &SqMatrix, swap: bool, b_prime: &Poly, c_prime: &Poly) -> Result<FramedPlan> {
    let (x, y) = split_deltas(&delta(b_prime)?, &delta(c_prime)?)?;
    let k_x = &x * delta(b_prime)?;
    let k_y = &y * delta(c_prime)?;
    let block_degree = primalize_with(b, b_prime, c_prime)?.m_prime.max_degree().max(0) as usize;
    Ok(FramedPlan::General {
        swap,
        b_prime: b_prime.clone(),
        c_prime: c_prime.clone(),
        x,
        y,
        k_x,
        k_y,
        block_degree,
    })
}

fn plan_key(p: &FramedPlan) -> (BigNat, BigNat) {
    match p {
        FramedPlan::General { k_x, .. } => (p.predicted_degree(), k_x.clone()),
        _ => (BigNat::zero(), BigNat::zero()),
    }
}

/// Best general plan for one orientation. The first candidate is the plain
/// choice of `primalize_antidiagonal`; with `search`, pairs from the first few
/// admissible degrees of each class compete on the predicted output degree.
fn orientation_plan(b: &SqMatrix, swap: bool, opts: &FramedOptions) -> Result<FramedPlan> {
    let (a, bb, c) = (b.get(0, 0), b.get(0, 1), b.get(1, 0));
    let (b0, c0) = default_primes(b, opts.max_prime_degree)?;
    let mut best = general_plan(b, swap, &b0, &c0)?;
    if !opts.search {
        return Ok(best);
    }
    let bs = prime_window(a, bb, opts.prime_window, opts.max_prime_degree)?;
    let cs = prime_window(a, c, opts.prime_window, opts.max_prime_degree)?;
    for bp in &bs {
        for cp in &cs {
            let (db, dc) = (bp.degree().expect("prime"), cp.degree().expect("prime"));
            if db.gcd(&dc) != 1 {
                continue;
            }
            let cand = general_plan(b, swap, bp, cp)?;
            if plan_key(&cand) < plan_key(&best) {
                best = cand;
            }
        }
    }
    Ok(best)
}

/// Chooses how to reduce the framed block `b`.
pub fn plan_framed(b: &SqMatrix, opts: &FramedOptions) -> Result<FramedPlan> {
    check_block(b)?;
    if b.is_identity() {
        return Ok(FramedPlan::Identity);
    }
    let (a, d) = (b.get(0, 0), b.get(1, 1));
    if a.is_zero() {
        return Ok(FramedPlan::ZeroPivot { swap: false });
    }
    if d.is_zero() {
        return Ok(FramedPlan::ZeroPivot { swap: true });
    }
    if a.deg() == 0 {
        return Ok(FramedPlan::UnitPivot { swap: false });
    }
    if d.deg() == 0 {
        return Ok(FramedPlan::UnitPivot { swap: true });
    }
    let general = general_plan_framed(b, opts);
    if !opts.fallback {
        return general;
    }
    let err = match general {
        Ok(p) => match check_ceiling(&p, opts) {
            Ok(()) => return Ok(p),
            Err(e) => e,
        },
        Err(e) => e,
    };
    euclid_plan(b).ok_or(err)
}

fn general_plan_framed(b: &SqMatrix, opts: &FramedOptions) -> Result<FramedPlan> {
    let direct = orientation_plan(b, false, opts);
    if !opts.search {
        return direct;
    }
    let swapped = orientation_plan(&swap_block(b), true, opts);
    match (direct, swapped) {
        (Ok(p), Ok(q)) => Ok(if plan_key(&q) < plan_key(&p) { q } else { p }),
        (Ok(p), Err(_)) | (Err(_), Ok(p)) => Ok(p),
        (Err(e), Err(_)) => Err(e),
    }
}

/// Division steps on the first column (`rows`) or first row of `b` until the
/// pivot is zero or constant. Returns the moves, as row or column additions in
/// the order applied, and the reduced block.
fn euclid_reduce(b: &SqMatrix, rows: bool) -> (Vec<ElemMat>, SqMatrix) {
    let mut m = b.clone();
    let mut ops = Vec::new();
    let other = |m: &SqMatrix| if rows { m.get(1, 0).clone() } else { m.get(0, 1).clone() };
    loop {
        let a = m.get(0, 0).clone();
        if a.deg() <= 0 {
            return (ops, m);
        }
        let o = other(&m);
        // o is nonzero here: otherwise the determinant makes a constant
        let (i, j, q) = if a.deg() >= o.deg() {
            (0, 1, a.divmod(&o).expect("nonzero").0)
        } else {
            (1, 0, o.divmod(&a).expect("nonzero").0)
        };
        let t = -&q;
        let op = if rows {
            m.row_add(i, j, &t);
            ElemMat::new(i, j, t)
        } else {
            m.col_add(j, i, &t);
            ElemMat::new(j, i, t)
        };
        ops.push(op.expect("off-diagonal"));
    }
}

fn short_plan(b: &SqMatrix) -> FramedPlan {
    if b.is_identity() {
        FramedPlan::Identity
    } else if b.get(0, 0).is_zero() {
        FramedPlan::ZeroPivot { swap: false }
    } else {
        FramedPlan::UnitPivot { swap: false }
    }
}

fn short_len(b: &SqMatrix) -> usize {
    execute_oriented(b, 3, short_plan(b)).expect("short path").word.len()
}

/// The shortest division fallback over both orientations and both sides, if
/// it fits in 34 moves.
pub fn euclid_plan(b: &SqMatrix) -> Option<FramedPlan> {
    let mut best: Option<FramedPlan> = None;
    for swap in [false, true] {
        let oriented = if swap { swap_block(b) } else { b.clone() };
        for rows in [true, false] {
            let (ops, reduced) = euclid_reduce(&oriented, rows);
            let moves = ops.len() + short_len(&reduced);
            if moves <= 34 && best.as_ref().is_none_or(|p| p.rank().1 > BigNat::from(moves)) {
                best = Some(FramedPlan::Euclid { swap, rows, moves });
            }
        }
    }
    best
}

/// Fails when the plan would produce entries beyond the configured ceiling.
pub(crate) fn check_ceiling(plan: &FramedPlan, opts: &FramedOptions) -> Result<()> {
    if let FramedPlan::General { k_x, .. } = plan {
        let predicted = plan.predicted_degree();
        let too_big_k = k_x.to_u64().is_none_or(|k| k > opts.max_exponent);
        let too_big_deg = predicted.to_u64().is_none_or(|d| d > opts.degree_ceiling);
        if too_big_k || too_big_deg {
            return Err(Error::OutputTooLarge {
                exponent: k_x.to_string(),
                max_exponent: opts.max_exponent,
                predicted_degree: predicted.to_string(),
                degree_ceiling: opts.degree_ceiling,
            });
        }
    }
    Ok(())
}

/// A word of at most 34 factors with product `framed(b)`, using the default options.
pub fn reduce_framed_sl2(b: &SqMatrix, n: usize) -> Result<ElemWord> {
    Ok(reduce_framed_sl2_with(b, n, &FramedOptions::default())?.word)
}

pub fn reduce_framed_sl2_with(b: &SqMatrix, n: usize, opts: &FramedOptions) -> Result<FramedWord> {
    if n < 3 {
        return Err(Error::DimensionTooSmall(n));
    }
    let plan = plan_framed(b, opts)?;
    check_ceiling(&plan, opts)?;
    execute_plan(b, n, plan)
}

/// Carries out `plan` on the block `b`.
pub fn execute_plan(b: &SqMatrix, n: usize, plan: FramedPlan) -> Result<FramedWord> {
    check_block(b)?;
    if n < 3 {
        return Err(Error::DimensionTooSmall(n));
    }
    let oriented = if plan.swapped() { swap_block(b) } else { b.clone() };
    let mut out = execute_oriented(&oriented, n, plan)?;
    if out.plan.swapped() {
        out.word = out.word.relabel(&swap_perm(n));
    }
    let total = out.word.len();
    assert_eq!(total, out.breakdown.total());
    assert!(total <= 34, "framed step used {total} moves");
    Ok(out)
}

fn execute_oriented(b: &SqMatrix, n: usize, plan: FramedPlan) -> Result<FramedWord> {
    let field = b.field().clone();
    let (a, bb, c, d) = (b.get(0, 0), b.get(0, 1), b.get(1, 0), b.get(1, 1));
    let mut word = ElemWord::new(&field, n);
    let mut breakdown = Breakdown::default();
    let mut units = None;
    let mut dagger_moves = Vec::new();
    let mut swindle_scheduled = Vec::new();
    let mut swindle_degenerate = Vec::new();
    match &plan {
        FramedPlan::Identity => {}
        FramedPlan::ZeroPivot { .. } => {
            // (0, b; c, d) = E12(b) E21(-b^-1) E12(b - b d), b a unit
            let unit = bb.as_constant().filter(|x| !x.is_zero()).expect("unit off-diagonal");
            let inv = field.inv(unit).expect("unit");
            word.push(0, 1, bb.clone());
            word.push(1, 0, Poly::constant(&field, field.neg(inv)));
            word.push(0, 1, bb - &(bb * d));
            breakdown.finish = word.len();
        }
        FramedPlan::UnitPivot { .. } => {
            // (a, b; c, d) = E21(c/a) diag(a, a^-1) E12(b/a)
            let unit = a.as_constant().expect("constant pivot");
            let inv = field.inv(unit).expect("unit");
            word.push(1, 0, c.scale(inv));
            word.extend(&unit_diag_word(&field, unit, 0, 1, n)?);
            word.push(0, 1, bb.scale(inv));
            breakdown.finish = word.len();
        }
        FramedPlan::General {
            b_prime,
            c_prime,
            k_x,
            k_y,
            ..
        } => {
            let prim = primalize_with(b, b_prime, c_prime)?;
            let mp = &prim.m_prime;
            assert!(
                delta(b_prime)?.gcd(&delta(c_prime)?).is_one(),
                "delta values of the primes are not coprime"
            );

            let dx = dagger_reduce(&mp.transpose(), k_x, b_prime, n)?;
            let lx = dx.right.transpose();
            let rx = dx.left.transpose();
            let dy = dagger_reduce(mp, k_y, c_prime, n)?;
            let (u, v) = (dy.u, dx.u);
            let w = field.mul(v, field.inv(u).expect("unit"));
            let patch = unit_diag_word(&field, w, 0, 1, n)?;
            let mut inner = rx.inverse();
            inner.extend(&dy.right);
            let inner = inner.conjugate_by_diagonal(&dagger_diagonal(&field, u, n))?;

            word.push(1, 0, -&prim.row_move.t);
            word.extend(&lx.inverse());
            word.extend(&patch);
            word.extend(&inner);
            word.extend(&dy.left);
            word.push(0, 1, -&prim.col_move.t);

            breakdown.primalize = prim.moves();
            breakdown.x_side = dx.moves;
            breakdown.patch = patch.len();
            breakdown.y_side = dy.moves;
            units = Some((u, v));
            dagger_moves = vec![dx.moves, dy.moves];
            swindle_scheduled = vec![dx.swindle_scheduled, dy.swindle_scheduled];
            swindle_degenerate = vec![dx.swindle_degenerate, dy.swindle_degenerate];
        }
        FramedPlan::Euclid { rows, .. } => {
            let (ops, reduced) = euclid_reduce(b, *rows);
            let tail = execute_oriented(&reduced, n, short_plan(&reduced))?.word;
            let undo = ops.iter().map(ElemMat::inverse);
            if *rows {
                // reduced = L b, so b = L^-1 reduced
                word.extend(&ElemWord::from_factors(&field, n, undo.collect())?);
                word.extend(&tail);
            } else {
                word.extend(&tail);
                word.extend(&ElemWord::from_factors(&field, n, undo.rev().collect())?);
            }
            breakdown.finish = word.len();
        }
    }
    Ok(FramedWord {
        word,
        breakdown,
        plan,
        units,
        dagger_moves,
        swindle_scheduled,
        swindle_degenerate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldSpec;

    fn framed(b: &SqMatrix, n: usize) -> SqMatrix {
        SqMatrix::framed(b, n)
    }

    #[test]
    fn identity_is_empty() {
        let f = FieldSpec::prime(2).unwrap();
        let w = reduce_framed_sl2(&SqMatrix::identity(&f, 2), 3).unwrap();
        assert!(w.is_empty());
    }

    #[test]
    fn zero_pivot_takes_three_moves() {
        let f = FieldSpec::prime(2).unwrap();
        let b = SqMatrix::from_codes(&f, &[vec![vec![], vec![1]], vec![vec![1], vec![0, 1, 1]]]).unwrap();
        let w = reduce_framed_sl2(&b, 3).unwrap();
        assert!(w.len() <= 3);
        assert_eq!(w.product(), framed(&b, 3));
        let swapped = swap_block(&b);
        let w = reduce_framed_sl2(&swapped, 4).unwrap();
        assert!(w.len() <= 3);
        assert_eq!(w.product(), framed(&swapped, 4));
    }

    #[test]
    fn unit_pivot_in_odd_characteristic() {
        let f = FieldSpec::prime(5).unwrap();
        let p = |c: &[u32]| Poly::from_codes(&f, c).unwrap();
        // (2, X; X^2, d) with 2d - X^3 = 1
        let d = (&p(&[1]) + &p(&[0, 0, 0, 1])).scale(f.inv(f.from_int(2)).unwrap());
        let b = SqMatrix::from_rows(vec![vec![p(&[2]), p(&[0, 1])], vec![p(&[0, 0, 1]), d]]).unwrap();
        let w = reduce_framed_sl2(&b, 3).unwrap();
        assert!(w.len() <= 6);
        assert_eq!(w.product(), framed(&b, 3));
    }

    #[test]
    fn general_example_gf2() {
        let f = FieldSpec::prime(2).unwrap();
        let b = SqMatrix::from_codes(&f, &[vec![vec![0, 1], vec![1, 1]], vec![vec![1, 1, 1], vec![0, 0, 1]]]).unwrap();
        for search in [false, true] {
            let opts = FramedOptions { search, ..Default::default() };
            let fw = reduce_framed_sl2_with(&b, 3, &opts).unwrap();
            assert!(fw.word.len() <= 34);
            assert_eq!(fw.word.product(), framed(&b, 3));
            assert!(fw.dagger_moves.iter().all(|&m| m <= 14));
            assert!(fw.breakdown.patch <= 4 && fw.breakdown.primalize <= 2);
        }
    }

    #[test]
    fn general_examples_odd_and_extension_fields() {
        for (p, m) in [(3, 1), (2, 2), (5, 1)] {
            let f = FieldSpec::new(p, m).unwrap();
            let g = f.element(f.q() as u64 - 1).unwrap();
            let x = Poly::x(&f);
            // E21(X) E12(g X + 1) E21(X^2)
            let mut w = ElemWord::new(&f, 2);
            w.push(1, 0, x.clone());
            w.push(0, 1, &x.scale(g) + &Poly::one(&f));
            w.push(1, 0, x.pow(2));
            let b = w.product();
            let fw = reduce_framed_sl2_with(&b, 3, &FramedOptions::default()).unwrap();
            assert!(fw.word.len() <= 34);
            assert_eq!(fw.word.product(), framed(&b, 3), "GF({p}^{m})");
        }
    }

    #[test]
    fn ceiling_is_enforced() {
        let f = FieldSpec::prime(2).unwrap();
        let b = SqMatrix::from_codes(&f, &[vec![vec![0, 1], vec![1, 1]], vec![vec![1, 1, 1], vec![0, 0, 1]]]).unwrap();
        let opts = FramedOptions { degree_ceiling: 1, fallback: false, ..Default::default() };
        let err = reduce_framed_sl2_with(&b, 3, &opts).unwrap_err();
        assert!(err.is_budget());
        let b = SqMatrix::from_codes(&f, &[vec![vec![0, 1], vec![1]], vec![vec![1, 1, 1], vec![1, 1]]]).unwrap();
        let opts = FramedOptions { max_prime_degree: 0, fallback: false, ..Default::default() };
        assert!(reduce_framed_sl2_with(&b, 3, &opts).unwrap_err().is_budget());
    }
}
