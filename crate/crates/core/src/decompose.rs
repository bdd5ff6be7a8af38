//! Full decomposition of an SL_n matrix into a bounded elementary word.
//!
//! Relabeling coordinates, transposing, and the fold chosen at each stable
//! range stage leave the move counts within budget but change the framed SL2
//! block that reaches the main step, and with it the exponents and output
//! degrees. The driver tries several such choices and keeps the cheapest plan.

use crate::certificate::{nu, stable_range_bound, Breakdown, Certificate};
use crate::error::{Error, Result};
use crate::main_step::{check_ceiling, execute_plan, plan_framed, FramedOptions, FramedPlan};
use crate::matrix::SqMatrix;
use crate::poly::BigNat;
use crate::stable_range::{fold_candidates, FramedReduction, Reducer};
use crate::word::ElemWord;

#[derive(Clone, Debug)]
pub struct DecomposeOptions {
    pub framed: FramedOptions,
    /// Try relabelings, transposition and alternative folds.
    pub search: bool,
    /// Small polynomials tried as fold parameters besides the coprime shift.
    pub fold_small: u64,
    /// How many candidate blocks are fully planned.
    pub plan_top: usize,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        DecomposeOptions {
            framed: FramedOptions::default(),
            search: true,
            fold_small: 8,
            plan_top: 16,
        }
    }
}

/// A coordinate change applied before reducing: `permuted(perm)`, then
/// optionally transposed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Variant {
    pub perm: Vec<usize>,
    pub transpose: bool,
}

impl Variant {
    pub fn identity(n: usize) -> Self {
        Variant {
            perm: (0..n).collect(),
            transpose: false,
        }
    }

    pub fn apply(&self, m: &SqMatrix) -> SqMatrix {
        let p = m.permuted(&self.perm);
        if self.transpose {
            p.transpose()
        } else {
            p
        }
    }

    /// Turns a word for `apply(m)` into a word for `m`.
    pub fn pull_back(&self, w: &ElemWord) -> ElemWord {
        let w = if self.transpose { w.transpose() } else { w.clone() };
        w.relabel(&self.perm)
    }
}

/// All relabelings for `n <= 4`; otherwise the identity and the transpositions
/// with the last coordinate. Each with and without transposition.
pub fn variants(n: usize) -> Vec<Variant> {
    let perms: Vec<Vec<usize>> = if n <= 4 {
        permutations(n)
    } else {
        let mut out = vec![(0..n).collect::<Vec<_>>()];
        for i in 0..n - 1 {
            let mut p: Vec<usize> = (0..n).collect();
            p.swap(i, n - 1);
            out.push(p);
        }
        out
    };
    perms
        .into_iter()
        .flat_map(|perm| {
            [false, true].map(|transpose| Variant {
                perm: perm.clone(),
                transpose,
            })
        })
        .collect()
}

/// Permutations of `0..n` in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).expect("successor exists");
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(cur.clone());
    }
}

/// Everything learned while decomposing one matrix.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub certificate: Certificate,
    pub variant: Variant,
    pub plan: FramedPlan,
    pub core: SqMatrix,
    pub stage_moves: Vec<usize>,
    pub dagger_moves: Vec<usize>,
    pub swindle_scheduled: Vec<usize>,
    pub swindle_degenerate: Vec<bool>,
}

impl Decomposition {
    pub fn max_entry_degree(&self) -> isize {
        self.certificate.word.max_degree()
    }
}

struct Candidate {
    variant: Variant,
    reduction: FramedReduction,
}

/// Runs the stable-range stages; with `search`, earlier stages keep the fold
/// giving the smallest entry degrees and the last stage returns every fold.
fn reductions(m: &SqMatrix, variant: &Variant, opts: &DecomposeOptions) -> Result<Vec<Candidate>> {
    let mut r = Reducer::new(&variant.apply(m))?;
    if !opts.search {
        while r.block_size() > 2 {
            r.step(None)?;
        }
        return Ok(vec![Candidate {
            variant: variant.clone(),
            reduction: r.finish(),
        }]);
    }
    while r.block_size() > 3 {
        let folds = fold_candidates(&r.last_row(), opts.fold_small)?;
        let mut best: Option<(isize, Reducer)> = None;
        for f in folds.iter().map(Some).chain(folds.is_empty().then_some(None)) {
            let mut trial = r.clone();
            trial.step(f)?;
            let deg = trial.current().max_degree();
            if best.as_ref().is_none_or(|(d, _)| deg < *d) {
                best = Some((deg, trial));
            }
        }
        r = best.expect("at least one fold").1;
    }
    let folds = fold_candidates(&r.last_row(), opts.fold_small)?;
    let mut out = Vec::new();
    for f in folds.iter().map(Some).chain(folds.is_empty().then_some(None)) {
        let mut trial = r.clone();
        trial.step(f)?;
        out.push(Candidate {
            variant: variant.clone(),
            reduction: trial.finish(),
        });
    }
    Ok(out)
}

/// Cheap ordering of blocks before planning: blocks with a short path first,
/// then by pivot degree and entry degree.
fn block_key(core: &SqMatrix) -> (usize, isize, isize) {
    let (a, d) = (core.get(0, 0), core.get(1, 1));
    let short = core.is_identity() || a.deg() <= 0 || d.deg() <= 0;
    (usize::from(!short), a.deg().min(d.deg()), core.max_degree())
}

/// Decomposes `m` with the default options.
pub fn decompose(m: &SqMatrix) -> Result<Certificate> {
    Ok(decompose_with(m, &DecomposeOptions::default())?.certificate)
}

pub fn decompose_with(m: &SqMatrix, opts: &DecomposeOptions) -> Result<Decomposition> {
    let n = m.n();
    if n < 3 {
        return Err(Error::DimensionTooSmall(n));
    }
    let det = m.det();
    if !det.is_one() {
        return Err(Error::NotSpecialLinear(det.to_string()));
    }

    let vs = if opts.search { variants(n) } else { vec![Variant::identity(n)] };
    let mut candidates = Vec::new();
    for v in &vs {
        candidates.extend(reductions(m, v, opts)?);
    }
    candidates.sort_by_key(|c| (block_key(&c.reduction.core), c.reduction.moves_used));

    let mut seen: Vec<SqMatrix> = Vec::new();
    let mut best: Option<((u8, BigNat, BigNat, usize), usize, FramedPlan)> = None;
    let mut first_err: Option<Error> = None;
    for (idx, c) in candidates.iter().enumerate() {
        if seen.len() >= opts.plan_top.max(1) {
            break;
        }
        if seen.contains(&c.reduction.core) {
            continue;
        }
        seen.push(c.reduction.core.clone());
        match plan_framed(&c.reduction.core, &opts.framed) {
            Ok(plan) => {
                let (class, size, k) = plan.rank();
                let key = (class, size, k, c.reduction.moves_used);
                if best.as_ref().is_none_or(|(k, _, _)| key < *k) {
                    best = Some((key, idx, plan));
                }
            }
            Err(e) => {
                first_err.get_or_insert(e);
            }
        }
        if best.as_ref().is_some_and(|(k, _, _)| k.0 == 0) {
            break;
        }
    }
    let Some((_, idx, plan)) = best else {
        return Err(first_err.expect("some candidate was planned"));
    };
    check_ceiling(&plan, &opts.framed)?;

    let chosen = &candidates[idx];
    let red = &chosen.reduction;
    let fw = execute_plan(&red.core, n, plan)?;

    let mut word = red.left.inverse();
    word.extend(&fw.word);
    word.extend(&red.right.inverse());
    let word = chosen.variant.pull_back(&word);
    if cfg!(debug_assertions) {
        let mut running = SqMatrix::identity(m.field(), n);
        for (k, e) in word.factors().iter().enumerate() {
            running.apply_right(e);
            debug_assert!(running.det().is_one(), "determinant left 1 after move {}", k + 1);
        }
    }

    let breakdown = Breakdown {
        stable_range: red.moves_used,
        ..fw.breakdown
    };
    assert!(red.moves_used <= stable_range_bound(n));
    assert!(word.len() <= nu(n), "word of length {} exceeds the bound", word.len());
    let certificate = Certificate::new(m.clone(), word, breakdown);
    Ok(Decomposition {
        certificate,
        variant: chosen.variant.clone(),
        plan: fw.plan,
        core: red.core.clone(),
        stage_moves: red.stage_moves.clone(),
        dagger_moves: fw.dagger_moves,
        swindle_scheduled: fw.swindle_scheduled,
        swindle_degenerate: fw.swindle_degenerate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldSpec;
    use crate::poly::Poly;

    #[test]
    fn permutation_enumeration() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(4).len(), 24);
        assert_eq!(variants(3).len(), 12);
        assert_eq!(variants(5).len(), 10);
    }

    #[test]
    fn variants_pull_back() {
        let f = FieldSpec::prime(3).unwrap();
        let mut w = ElemWord::new(&f, 4);
        w.push(0, 3, Poly::x(&f));
        w.push(2, 1, Poly::from_codes(&f, &[1, 2]).unwrap());
        w.push(3, 0, Poly::one(&f));
        let m = w.product();
        for v in variants(4) {
            let vm = v.apply(&m);
            // a word for vm, pulled back, multiplies to m
            let mut direct = ElemWord::new(&f, 4);
            let mut r = Reducer::new(&vm).unwrap();
            while r.block_size() > 2 {
                r.step(None).unwrap();
            }
            let red = r.finish();
            let core = crate::main_step::reduce_framed_sl2(&red.core, 4).unwrap();
            direct.extend(&red.left.inverse());
            direct.extend(&core);
            direct.extend(&red.right.inverse());
            assert_eq!(direct.product(), vm);
            assert_eq!(v.pull_back(&direct).product(), m);
        }
    }

    #[test]
    fn elementary_input_gives_one_factor() {
        let f = FieldSpec::prime(2).unwrap();
        let mut w = ElemWord::new(&f, 3);
        w.push(0, 2, Poly::x(&f).pow(5));
        let c = decompose(&w.product()).unwrap();
        assert!(c.verified);
        assert_eq!(c.length, 1);
    }

    #[test]
    fn identity_gives_empty_word() {
        let f = FieldSpec::prime(3).unwrap();
        let c = decompose(&SqMatrix::identity(&f, 4)).unwrap();
        assert!(c.verified);
        assert_eq!((c.length, c.bound), (0, 51));
    }

    #[test]
    fn guard_rails() {
        let f = FieldSpec::prime(2).unwrap();
        let err = decompose(&SqMatrix::identity(&f, 2)).unwrap_err();
        assert!(err.to_string().contains("not boundedly generated by the elementary"));
        let mut m = SqMatrix::identity(&f, 3);
        m.set(2, 2, Poly::x(&f));
        assert!(matches!(decompose(&m), Err(Error::NotSpecialLinear(_))));
    }
}
