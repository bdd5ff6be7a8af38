//! The polynomial ring F_q[X].
//!
//! [`Poly`] is a dense coefficient vector (ascending, no trailing zeros) tied to
//! its [`FieldSpec`]. Arithmetic operators panic when the operands come from
//! different fields; [`Poly::arith`] is the checked variant.

mod euclid;
mod irreducible;
pub(crate) mod mul;
mod primes;
mod radical;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldSpec};

pub use euclid::int_xgcd;
pub use primes::{delta, find_prime_in_progression, first_prime_of_degree, residue_class_of_degree};
pub use radical::coprime_shift;

/// Arbitrary-precision naturals for the exponents of the main step.
pub type BigNat = num_bigint::BigUint;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

/// An element of F_q[X].
#[derive(Clone)]
pub struct Poly {
    field: FieldSpec,
    coeffs: Vec<FieldElement>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.field == other.field
    }
}

impl Eq for Poly {}

impl Poly {
    /// Builds a polynomial, trimming trailing zeros.
    pub fn new(field: &FieldSpec, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    /// Builds a polynomial from integer codes, each in `[0, q)`.
    pub fn from_codes(field: &FieldSpec, codes: &[u32]) -> Result<Self> {
        let coeffs = codes
            .iter()
            .map(|&c| field.element(c as u64))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(field, coeffs))
    }

    pub fn zero(field: &FieldSpec) -> Self {
        Poly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &FieldSpec) -> Self {
        Self::constant(field, FieldElement::ONE)
    }

    pub fn constant(field: &FieldSpec, c: FieldElement) -> Self {
        Self::new(field, vec![c])
    }

    /// The indeterminate `X`.
    pub fn x(field: &FieldSpec) -> Self {
        Self::monomial(field, FieldElement::ONE, 1)
    }

    pub fn monomial(field: &FieldSpec, c: FieldElement, degree: usize) -> Self {
        let mut coeffs = vec![FieldElement::ZERO; degree + 1];
        coeffs[degree] = c;
        Self::new(field, coeffs)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn codes(&self) -> Vec<u32> {
        self.coeffs.iter().map(|c| c.code()).collect()
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or(FieldElement::ZERO)
    }

    /// Degree, `None` standing for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to `-1`.
    pub fn deg(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn leading(&self) -> FieldElement {
        self.coeffs.last().copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Nonzero constants, the units of F_q[X].
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// The constant value when the degree is at most zero.
    pub fn as_constant(&self) -> Option<FieldElement> {
        match self.coeffs.len() {
            0 => Some(FieldElement::ZERO),
            1 => Some(self.coeffs[0]),
            _ => None,
        }
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn same_field(&self, other: &Poly) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn assert_same_field(&self, other: &Poly) {
        assert!(
            self.field == other.field,
            "polynomial operands live over different fields"
        );
    }

    /// Ring operation with an explicit field check.
    pub fn arith(&self, op: PolyOp, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        Ok(match op {
            PolyOp::Add => self + other,
            PolyOp::Sub => self - other,
            PolyOp::Mul => self * other,
        })
    }

    pub fn scale(&self, c: FieldElement) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        Poly {
            field: f.clone(),
            coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    /// Multiplication by `X^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![FieldElement::ZERO; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly {
            field: self.field.clone(),
            coeffs,
        }
    }

    /// Scales to a monic polynomial; returns the monic form and the removed leading
    /// coefficient. Zero maps to zero with leading coefficient zero.
    pub fn monic(&self) -> (Poly, FieldElement) {
        let lc = self.leading();
        match self.field.inv(lc) {
            Some(inv) if !lc.is_one() => (self.scale(inv), lc),
            _ => (self.clone(), lc),
        }
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(f.from_int(i as i64), c))
            .collect();
        Poly::new(f, coeffs)
    }

    pub fn evaluate(&self, x: FieldElement) -> FieldElement {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElement::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Human-readable form such as `X^2 + X + 1`; coefficients print as codes.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let coef = if c.is_one() && i > 0 {
                String::new()
            } else {
                c.code().to_string()
            };
            let mono = match i {
                0 => String::new(),
                1 => "X".to_string(),
                _ => format!("X^{i}"),
            };
            let sep = if !coef.is_empty() && !mono.is_empty() { "*" } else { "" };
            terms.push(format!("{coef}{sep}{mono}"));
        }
        terms.join(" + ")
    }
}

/// Text syntax `[c0 c1 ... ck]`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", c.code())?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pretty())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.assert_same_field(rhs);
        let f = &self.field;
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        mul::add_into(f, &mut coeffs, &short.coeffs);
        Poly::new(f, coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.assert_same_field(rhs);
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| f.sub(self.coeff(i), rhs.coeff(i)))
            .collect();
        Poly::new(f, coeffs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.assert_same_field(rhs);
        Poly::new(&self.field, mul::mul_slices(&self.field, &self.coeffs, &rhs.coeffs))
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let f = &self.field;
        Poly {
            field: f.clone(),
            coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2() -> FieldSpec {
        FieldSpec::prime(2).unwrap()
    }

    fn p(field: &FieldSpec, codes: &[u32]) -> Poly {
        Poly::from_codes(field, codes).unwrap()
    }

    #[test]
    fn arithmetic_examples_gf2() {
        let f = gf2();
        let x1 = p(&f, &[1, 1]);
        let x2x1 = p(&f, &[1, 1, 1]);
        assert_eq!(&x1 * &x2x1, p(&f, &[1, 0, 0, 1]));
        assert!((&x2x1 + &x2x1).is_zero());
        assert!((&Poly::zero(&f) * &x2x1).is_zero());
    }

    #[test]
    fn canonical_form_trims_zeros() {
        let f = gf2();
        let a = p(&f, &[1, 0, 0, 0]);
        assert_eq!(a.degree(), Some(0));
        assert_eq!(Poly::zero(&f).degree(), None);
        assert_eq!(Poly::zero(&f).deg(), -1);
        assert_eq!(p(&f, &[1, 1]) + p(&f, &[0, 1]), Poly::one(&f));
    }

    #[test]
    fn mismatched_fields_are_rejected() {
        let a = Poly::x(&gf2());
        let b = Poly::x(&FieldSpec::prime(3).unwrap());
        assert!(matches!(a.arith(PolyOp::Mul, &b), Err(Error::FieldMismatch)));
    }

    #[test]
    fn derivative_in_characteristic_three() {
        let f = FieldSpec::prime(3).unwrap();
        // X^3 + 2X^2 + X -> 3X^2 + 4X + 1 = X + 1
        assert_eq!(p(&f, &[0, 1, 2, 1]).derivative(), p(&f, &[1, 1]));
    }

    #[test]
    fn display_uses_text_syntax() {
        let f = gf2();
        assert_eq!(p(&f, &[1, 1, 1]).to_string(), "[1 1 1]");
        assert_eq!(Poly::zero(&f).to_string(), "[]");
        assert_eq!(p(&f, &[1, 1, 1]).pretty(), "X^2 + X + 1");
    }
}
