use super::{constant, framed_block, Moves};
use crate::error::{Error, Result};
use crate::gf::FieldElement;
use crate::matrix::SqMatrix;
use crate::poly::Poly;
use crate::word::{unit_diag_word, ElemWord};

/// `s = s1 s2`, `a = k1 s1 + 1 = k2 s2 - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwindleFactors {
    pub s1: Poly,
    pub s2: Poly,
    pub k1: Poly,
    pub k2: Poly,
}

impl SwindleFactors {
    /// Splits `s` given `a^2 = 1 mod s`. `s1 = gcd(s, a - 1)` carries the part
    /// of `s` dividing `a - 1`; the cofactor divides `a + 1`.
    pub fn new(a: &Poly, s: &Poly) -> Result<Self> {
        let one = Poly::one(a.field());
        let am1 = a - &one;
        let ap1 = a + &one;
        let s1 = s.gcd(&am1);
        let s2 = s
            .exact_div(&s1)
            .ok_or_else(|| Error::NotCoprime("gcd does not divide s".into()))?;
        let k1 = am1
            .exact_div(&s1)
            .ok_or_else(|| Error::NotCoprime("s1 does not divide a - 1".into()))?;
        let k2 = ap1.exact_div(&s2).ok_or_else(|| {
            Error::NotCoprime(format!("s2 = {s2:?} does not divide a + 1; a^2 != 1 mod s"))
        })?;
        let f = SwindleFactors { s1, s2, k1, k2 };
        debug_assert!(f.holds(a, s));
        Ok(f)
    }

    pub fn holds(&self, a: &Poly, s: &Poly) -> bool {
        let one = Poly::one(a.field());
        &self.s1 * &self.s2 == *s
            && &(&self.k1 * &self.s1) + &one == *a
            && &(&self.k2 * &self.s2) - &one == *a
    }
}

/// Result of the swindle: `left * framed(a, b; sc, d) * right = out`, with
/// `out = framed(-a, -sb; c, d)` and `-1` in position (3, 3).
#[derive(Clone, Debug)]
pub struct Swindle {
    pub left: ElemWord,
    pub right: ElemWord,
    pub out: SqMatrix,
    /// `None` on the `s = 0` path.
    pub factors: Option<SwindleFactors>,
    /// Moves of the schedule, identity moves included; 11 unless `s = 0`.
    pub scheduled: usize,
}

impl Swindle {
    /// Non-identity moves.
    pub fn moves(&self) -> usize {
        self.left.len() + self.right.len()
    }
}

/// Moves `s` from the lower-left entry to the upper-right one, in 11 moves
/// (at most 6 when `s = 0`). The block sits in coordinates 1..3 of `n`.
pub fn swindle(a: &Poly, b: &Poly, c: &Poly, d: &Poly, s: &Poly, n: usize) -> Result<Swindle> {
    swindle_impl(a, b, c, d, s, n, None)
}

/// As [`swindle`], also returning the matrix after every move.
pub fn swindle_traced(
    a: &Poly,
    b: &Poly,
    c: &Poly,
    d: &Poly,
    s: &Poly,
    n: usize,
) -> Result<(Swindle, Vec<SqMatrix>)> {
    let mut trace = Vec::new();
    let out = swindle_impl(a, b, c, d, s, n, Some(&mut trace))?;
    Ok((out, trace))
}

fn swindle_impl(
    a: &Poly,
    b: &Poly,
    c: &Poly,
    d: &Poly,
    s: &Poly,
    n: usize,
    mut trace: Option<&mut Vec<SqMatrix>>,
) -> Result<Swindle> {
    if n < 3 {
        return Err(Error::DimensionTooSmall(n));
    }
    let field = a.field();
    let sc = s * c;
    let det = &(a * d) - &(b * &sc);
    if !det.is_one() {
        return Err(Error::NotSpecialLinear(det.to_string()));
    }
    let congruent = if s.is_zero() { a == d } else { s.divides(&(a - d)) };
    if !congruent {
        return Err(Error::NotCoprime("swindle needs a = d mod s".into()));
    }

    let mut mv = Moves::new(framed_block(a, b, &sc, d, n));
    let mut snap = |mv: &Moves| {
        if let Some(t) = trace.as_deref_mut() {
            t.push(mv.m.clone());
        }
    };

    let factors = if s.is_zero() {
        // (a, b; 0, a) with a = +-1.
        let inv_a = field.inv(a.as_constant().expect("unit")).expect("unit");
        mv.col(0, 1, -&b.scale(inv_a));
        snap(&mv);
        let minus_one = field.neg(FieldElement::ONE);
        let patch = unit_diag_word(field, minus_one, 0, 2, n)?;
        mv.left_word(&patch);
        snap(&mv);
        mv.row(1, 0, -&c.scale(inv_a));
        snap(&mv);
        None
    } else {
        let f = SwindleFactors::new(a, s)?;
        let SwindleFactors { s1, s2, k1, k2 } = &f;
        mv.col(2, 0, s1.clone());
        snap(&mv);
        mv.row(0, 2, -k1);
        snap(&mv);
        mv.row(1, 2, -&(s2 * c));
        snap(&mv);
        mv.row(2, 0, -s1);
        snap(&mv);
        mv.col(0, 1, -b);
        snap(&mv);
        mv.col(0, 2, k1 + s2);
        snap(&mv);
        mv.row(1, 0, c.clone());
        snap(&mv);
        mv.row(2, 0, -k2);
        snap(&mv);
        mv.row(0, 2, s2.clone());
        snap(&mv);
        mv.col(2, 0, -k2);
        snap(&mv);
        mv.col(2, 1, -&(s1 * b));
        snap(&mv);
        Some(f)
    };

    let minus_one = constant(field, field.neg(FieldElement::ONE));
    let mut expected = framed_block(&-a, &-&(s * b), c, d, n);
    expected.set(2, 2, minus_one);
    assert!(mv.m == expected, "swindle schedule missed its target");
    Ok(Swindle {
        left: mv.left(),
        right: mv.right.clone(),
        scheduled: mv.scheduled,
        out: mv.m,
        factors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldSpec;
    use crate::matrix::Side;

    fn check(input: &SqMatrix, sw: &Swindle) {
        let got = input
            .apply_word(&sw.left, Side::Left)
            .unwrap()
            .apply_word(&sw.right, Side::Right)
            .unwrap();
        assert_eq!(got, sw.out);
    }

    #[test]
    fn worked_example_gf2() {
        let f = FieldSpec::prime(2).unwrap();
        let p = |c: &[u32]| Poly::from_codes(&f, c).unwrap();
        let (a, b, c, d, s) = (p(&[1, 1]), p(&[1]), p(&[1]), p(&[1]), p(&[0, 1]));
        let sw = swindle(&a, &b, &c, &d, &s, 3).unwrap();
        assert_eq!(sw.scheduled, 11);
        // C3 += (k1 + s2) C1 is the identity here: k1 = s2 = 1 in characteristic 2
        assert_eq!(sw.moves(), 10);
        let fac = sw.factors.clone().unwrap();
        assert_eq!((fac.s1, fac.s2, fac.k1, fac.k2), (p(&[0, 1]), p(&[1]), p(&[1]), p(&[0, 1])));
        assert_eq!(sw.out, framed_block(&a, &p(&[0, 1]), &p(&[1]), &p(&[1]), 3));
        check(&framed_block(&a, &b, &p(&[0, 1]), &d, 3), &sw);
    }

    #[test]
    fn odd_characteristic() {
        let f = FieldSpec::prime(5).unwrap();
        let p = |c: &[u32]| Poly::from_codes(&f, c).unwrap();
        // a = X^2 + 2, s = X^2 + 1 (a = 1 mod s); b c = (a d - 1)/s
        let a = p(&[2, 0, 1]);
        let s = p(&[1, 0, 1]);
        let d = p(&[1]);
        let c = p(&[1]);
        let b = (&(&a * &d) - &p(&[1])).exact_div(&(&s * &c)).unwrap();
        let sw = swindle(&a, &b, &c, &d, &s, 4).unwrap();
        assert_eq!(sw.moves(), 11);
        check(&framed_block(&a, &b, &(&s * &c), &d, 4), &sw);
    }

    #[test]
    fn unit_s_still_takes_eleven_moves() {
        let f = FieldSpec::prime(3).unwrap();
        let p = |c: &[u32]| Poly::from_codes(&f, c).unwrap();
        let (a, c, d, s) = (p(&[0, 1]), p(&[1]), p(&[1, 1]), p(&[2]));
        // det: a d - b s c = 1 with b = (a d - 1)/(s c)
        let b = (&(&a * &d) - &p(&[1])).exact_div(&(&s * &c)).unwrap();
        let sw = swindle(&a, &b, &c, &d, &s, 3).unwrap();
        let fac = sw.factors.clone().unwrap();
        assert!(fac.s1.is_one());
        assert_eq!(sw.moves(), 11);
        check(&framed_block(&a, &b, &(&s * &c), &d, 3), &sw);
    }

    #[test]
    fn zero_s() {
        let f = FieldSpec::prime(3).unwrap();
        let p = |c: &[u32]| Poly::from_codes(&f, c).unwrap();
        let (a, b, c) = (p(&[2]), p(&[1, 1, 2]), p(&[0, 1]));
        let sw = swindle(&a, &b, &c, &a, &p(&[]), 3).unwrap();
        assert!(sw.moves() <= 6);
        check(&framed_block(&a, &b, &p(&[]), &a, 3), &sw);
    }

    #[test]
    fn hypotheses_are_checked() {
        let f = FieldSpec::prime(2).unwrap();
        let p = |c: &[u32]| Poly::from_codes(&f, c).unwrap();
        assert!(swindle(&p(&[0, 1]), &p(&[1]), &p(&[1]), &p(&[1]), &p(&[1]), 3).is_err());
        // det 1 but a != d mod s
        let (a, b, c, d, s) = (p(&[0, 1]), p(&[1]), p(&[1]), p(&[1, 1]), p(&[1, 1, 1]));
        assert!(swindle(&a, &b, &c, &d, &s, 3).is_err());
    }
}
