use super::{ch_power, swindle, CHPair, Moves};
use crate::error::{Error, Result};
use crate::gf::FieldElement;
use crate::matrix::SqMatrix;
use crate::poly::{BigNat, Poly};
use crate::word::ElemWord;

/// `left * framed(M'^k) * right = diag(-u, u^-1, -1, 1, ..)`.
#[derive(Clone, Debug)]
pub struct DaggerResult {
    pub left: ElemWord,
    pub right: ElemWord,
    pub u: FieldElement,
    pub moves: usize,
    /// Scheduled swindle moves, identity moves included.
    pub swindle_scheduled: usize,
    /// The swindle took the `s = 0` path.
    pub swindle_degenerate: bool,
    pub ch: CHPair,
}

/// The diagonal `(-u, u^-1, -1, 1, .., 1)` of size `n`.
pub fn dagger_diagonal(field: &crate::gf::FieldSpec, u: FieldElement, n: usize) -> Vec<FieldElement> {
    let minus_one = field.neg(FieldElement::ONE);
    let mut d = vec![FieldElement::ONE; n];
    d[0] = field.neg(u);
    d[1] = field.inv(u).expect("unit");
    d[2] = minus_one;
    d
}

/// Reduces `Y = M'^k`, `k` a positive multiple of `delta(c')`, to a diagonal
/// matrix in at most 14 moves. `M'` must have the prime `c'` in its lower-left
/// corner; `Y = e I + f M'` is handled through its Cayley-Hamilton pair and
/// never formed as a power.
pub fn dagger_reduce(m_prime: &SqMatrix, k: &BigNat, c_prime: &Poly, n: usize) -> Result<DaggerResult> {
    if m_prime.get(1, 0) != c_prime {
        return Err(Error::ShapeMismatch("c' is not the lower-left entry".into()));
    }
    let field = m_prime.field().clone();
    let ch = ch_power(m_prime, k)?;
    let (a, b, d) = (m_prime.get(0, 0), m_prime.get(0, 1), m_prime.get(1, 1));
    let big_a = &ch.e + &(&ch.f * a);
    let big_d = &ch.e + &(&ch.f * d);
    let fb = &ch.f * b;

    let sw = swindle(&big_a, &fb, c_prime, &big_d, &ch.f, n)?;

    let u_poly = big_a.rem(c_prime)?;
    let u = u_poly
        .as_constant()
        .filter(|c| !c.is_zero())
        .ok_or_else(|| Error::NotCoprime(format!("e + f a = {u_poly:?} mod c' is not a unit")))?;
    assert_eq!(a.modpow(k, c_prime)?, u_poly, "e + f a differs from a^k mod c'");
    let u_inv = field.inv(u).expect("unit");
    let u_inv_poly = Poly::constant(&field, u_inv);
    assert_eq!(big_d.rem(c_prime)?, u_inv_poly, "e + f d is not u^-1 mod c'");

    let mut mv = Moves::new(sw.out.clone());
    let t1 = (&big_a - &u_poly).exact_div(c_prime).expect("congruent mod c'");
    mv.row(0, 1, t1);
    let t2 = (&u_inv_poly - &big_d).exact_div(c_prime).expect("congruent mod c'");
    mv.col(0, 1, t2);
    debug_assert!(mv.m.get(0, 1).is_zero());
    mv.row(1, 0, c_prime.scale(u_inv));

    let expected = SqMatrix::diagonal(&field, &dagger_diagonal(&field, u, n));
    assert!(mv.m == expected, "dagger reduction missed its diagonal target");

    let mut left = mv.left();
    left.extend(&sw.left);
    let mut right = sw.right.clone();
    right.extend(&mv.right);
    let moves = left.len() + right.len();
    assert!(moves <= 14, "dagger reduction used {moves} moves");
    Ok(DaggerResult {
        left,
        right,
        u,
        moves,
        swindle_scheduled: sw.scheduled,
        swindle_degenerate: sw.factors.is_none(),
        ch,
    })
}
