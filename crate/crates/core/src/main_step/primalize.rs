use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::SqMatrix;
use crate::poly::{delta, find_prime_in_progression, int_xgcd, BigNat, Poly};
use crate::word::ElemMat;

/// `m_prime = E21(g) * m * E12(h)` with prime anti-diagonal `(b', c')`.
#[derive(Clone, Debug)]
pub struct Primalized {
    pub m_prime: SqMatrix,
    /// `E21(g)`, applied on the left.
    pub row_move: ElemMat,
    /// `E12(h)`, applied on the right.
    pub col_move: ElemMat,
    pub b_prime: Poly,
    pub c_prime: Poly,
}

impl Primalized {
    /// Number of non-identity moves.
    pub fn moves(&self) -> usize {
        usize::from(!self.row_move.t.is_zero()) + usize::from(!self.col_move.t.is_zero())
    }
}

fn check_block(m: &SqMatrix) -> Result<()> {
    if m.n() != 2 {
        return Err(Error::ShapeMismatch(format!("{0}x{0} matrix, expected 2x2", m.n())));
    }
    let det = m.det();
    if !det.is_one() {
        return Err(Error::NotSpecialLinear(det.to_string()));
    }
    if m.get(0, 0).is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(())
}

/// Replaces `b` and `c` by primes `b' = b mod a`, `c' = c mod a`: `b'` of least
/// possible degree, then `c'` of least degree coprime to `deg b'`. Entries that
/// are already suitable primes are kept.
pub fn primalize_antidiagonal(m: &SqMatrix, max_prime_degree: usize) -> Result<Primalized> {
    check_block(m)?;
    let (b_prime, c_prime) = default_primes(m, max_prime_degree)?;
    primalize_with(m, &b_prime, &c_prime)
}

pub(crate) fn default_primes(m: &SqMatrix, max_prime_degree: usize) -> Result<(Poly, Poly)> {
    let (a, b, c) = (m.get(0, 0), m.get(0, 1), m.get(1, 0));
    let b_prime = if b.is_irreducible() {
        b.clone()
    } else {
        find_prime_in_progression(a, b, None, max_prime_degree)?
    };
    let db = b_prime.degree().expect("prime");
    let c_prime = if c.is_irreducible() && c.degree().expect("prime").gcd(&db) == 1 {
        c.clone()
    } else {
        find_prime_in_progression(a, c, Some(db), max_prime_degree)?
    };
    Ok((b_prime, c_prime))
}

/// The two moves taking `b` to `b_prime` and `c` to `c_prime`, which must be
/// congruent to them modulo `a`.
pub fn primalize_with(m: &SqMatrix, b_prime: &Poly, c_prime: &Poly) -> Result<Primalized> {
    check_block(m)?;
    let a = m.get(0, 0);
    let h = (b_prime - m.get(0, 1))
        .exact_div(a)
        .ok_or_else(|| Error::NotCoprime("b' is not congruent to b mod a".into()))?;
    let g = (c_prime - m.get(1, 0))
        .exact_div(a)
        .ok_or_else(|| Error::NotCoprime("c' is not congruent to c mod a".into()))?;
    let row_move = ElemMat::new(1, 0, g)?;
    let col_move = ElemMat::new(0, 1, h)?;
    let mut m_prime = m.clone();
    m_prime.apply_right(&col_move);
    m_prime.apply_left(&row_move);
    debug_assert!(m_prime.get(0, 1) == b_prime && m_prime.get(1, 0) == c_prime);
    Ok(Primalized {
        m_prime,
        row_move,
        col_move,
        b_prime: b_prime.clone(),
        c_prime: c_prime.clone(),
    })
}

/// Least `x >= 1` with `x delta(b') - y delta(c') = 1` for some `y >= 1`.
pub fn split_exponents(b_prime: &Poly, c_prime: &Poly) -> Result<(BigNat, BigNat)> {
    let db = delta(b_prime)?;
    let dc = delta(c_prime)?;
    split_deltas(&db, &dc)
}

pub(crate) fn split_deltas(db: &BigNat, dc: &BigNat) -> Result<(BigNat, BigNat)> {
    let (g, alpha, _) = int_xgcd(db, dc)?;
    if !g.is_one() {
        return Err(Error::NotCoprime(format!("delta values {db} and {dc} share the factor {g}")));
    }
    let dc_i = BigInt::from(dc.clone());
    let mut x = alpha.mod_floor(&dc_i);
    if x.is_zero() {
        x = dc_i.clone();
    }
    // x delta(b) - 1 must reach delta(c) so that y >= 1
    while &x * BigInt::from(db.clone()) - BigInt::one() < dc_i {
        x += &dc_i;
    }
    debug_assert!(x.is_positive());
    let x = x.to_biguint().expect("positive");
    let y = (&x * db - BigNat::one()) / dc;
    debug_assert!(&x * db - &y * dc == BigNat::one());
    Ok((x, y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldSpec;

    fn n(v: u32) -> BigNat {
        BigNat::from(v)
    }

    #[test]
    fn split_examples() {
        assert_eq!(split_deltas(&n(1), &n(3)).unwrap(), (n(4), n(1)));
        assert_eq!(split_deltas(&n(7), &n(3)).unwrap(), (n(1), n(2)));
        assert_eq!(split_deltas(&n(1), &n(4)).unwrap(), (n(5), n(1)));
        assert_eq!(split_deltas(&n(1), &n(1)).unwrap(), (n(2), n(1)));
        assert!(split_deltas(&n(3), &n(15)).is_err());
        let f = FieldSpec::prime(2).unwrap();
        let b = Poly::from_codes(&f, &[1, 1, 0, 1]).unwrap();
        let c = Poly::from_codes(&f, &[1, 1, 1]).unwrap();
        assert_eq!(split_exponents(&b, &c).unwrap(), (n(1), n(2)));
    }

    #[test]
    fn already_prime_antidiagonal_is_kept() {
        let f = FieldSpec::prime(2).unwrap();
        let m = SqMatrix::from_codes(&f, &[vec![vec![0, 1], vec![1, 1]], vec![vec![1, 1, 1], vec![0, 0, 1]]]).unwrap();
        let p = primalize_antidiagonal(&m, 24).unwrap();
        assert_eq!(p.moves(), 0);
        assert_eq!(p.m_prime, m);
    }

    #[test]
    fn unit_residue_moves_to_a_prime() {
        let f = FieldSpec::prime(2).unwrap();
        // (X, 1; X^2 + X + 1, X + 1)
        let m = SqMatrix::from_codes(&f, &[vec![vec![0, 1], vec![1]], vec![vec![1, 1, 1], vec![1, 1]]]).unwrap();
        assert!(m.det().is_one());
        let p = primalize_antidiagonal(&m, 24).unwrap();
        assert_eq!(p.b_prime, Poly::from_codes(&f, &[1, 1]).unwrap());
        assert_eq!(p.col_move.t, Poly::one(&f));
        assert!(p.b_prime.is_irreducible() && p.c_prime.is_irreducible());
        assert!(p.m_prime.det().is_one());
    }
}
