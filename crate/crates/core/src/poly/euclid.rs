//! Division with remainder, gcds, and modular powers.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use super::mul::gf2;
use super::{BigNat, Poly};
use crate::error::{Error, Result};
use crate::gf::FieldElement;

impl Poly {
    /// `(q, r)` with `self = q * g + r` and `deg r < deg g`.
    pub fn divmod(&self, g: &Poly) -> Result<(Poly, Poly)> {
        self.same_field(g)?;
        let dg = g.degree().ok_or(Error::DivisionByZero)?;
        let f = &self.field;
        let df = match self.degree() {
            Some(d) if d >= dg => d,
            _ => return Ok((Poly::zero(f), self.clone())),
        };
        if f.p() == 2 && f.m() == 1 {
            let (q, r) = gf2::divmod(&gf2::pack(&self.coeffs), &gf2::pack(&g.coeffs));
            return Ok((
                Poly::new(f, gf2::unpack(&q, df - dg + 1)),
                Poly::new(f, gf2::unpack(&r, dg)),
            ));
        }
        let lc_inv = f.inv(g.leading()).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![FieldElement::ZERO; df - dg + 1];
        let gc = &g.coeffs;
        for i in (dg..=df).rev() {
            let top = rem[i];
            if top.is_zero() {
                continue;
            }
            let c = f.mul(top, lc_inv);
            quot[i - dg] = c;
            let base = i - dg;
            for (j, &gj) in gc.iter().enumerate() {
                if !gj.is_zero() {
                    rem[base + j] = f.sub(rem[base + j], f.mul(c, gj));
                }
            }
        }
        rem.truncate(dg);
        Ok((Poly::new(f, quot), Poly::new(f, rem)))
    }

    pub fn rem(&self, g: &Poly) -> Result<Poly> {
        Ok(self.divmod(g)?.1)
    }

    /// Quotient when `g` divides `self` exactly.
    pub fn exact_div(&self, g: &Poly) -> Option<Poly> {
        match self.divmod(g) {
            Ok((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    pub fn divides(&self, f: &Poly) -> bool {
        if self.is_zero() {
            return f.is_zero();
        }
        f.rem(self).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(&self, g: &Poly) -> Poly {
        self.assert_same_field(g);
        let f = &self.field;
        if f.p() == 2 && f.m() == 1 {
            let d = gf2::gcd(&gf2::pack(&self.coeffs), &gf2::pack(&g.coeffs));
            let len = gf2::degree(&d).map_or(0, |k| k + 1);
            return Poly::new(f, gf2::unpack(&d, len));
        }
        let mut a = self.clone();
        let mut b = g.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic().0
    }

    pub fn lcm(&self, g: &Poly) -> Poly {
        if self.is_zero() || g.is_zero() {
            return Poly::zero(&self.field);
        }
        let d = self.gcd(g);
        (self * &g.exact_div(&d).expect("gcd divides")).monic().0
    }

    /// Extended gcd: `(d, alpha, beta)` with `d = alpha*self + beta*g`, `d` monic.
    pub fn xgcd(&self, g: &Poly) -> Result<(Poly, Poly, Poly)> {
        self.same_field(g)?;
        if self.is_zero() && g.is_zero() {
            return Err(Error::BothZero);
        }
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), g.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1)?;
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let inv = f.inv(r0.leading()).expect("nonzero gcd");
        Ok((r0.scale(inv), s0.scale(inv), t0.scale(inv)))
    }

    /// `self^exp mod modulus` by square-and-multiply.
    pub fn modpow(&self, exp: &BigNat, modulus: &Poly) -> Result<Poly> {
        self.same_field(modulus)?;
        if modulus.degree().unwrap_or(0) == 0 {
            return Err(Error::ConstantModulus);
        }
        let mut acc = Poly::one(&self.field);
        let base = self.rem(modulus)?;
        for i in (0..exp.bits()).rev() {
            acc = (&acc * &acc).rem(modulus)?;
            if exp.bit(i) {
                acc = (&acc * &base).rem(modulus)?;
            }
        }
        Ok(acc)
    }
}

/// Integer extended gcd: `(g, alpha, beta)` with `alpha*a + beta*b = g`.
pub fn int_xgcd(a: &BigUint, b: &BigUint) -> Result<(BigUint, BigInt, BigInt)> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::BothZero);
    }
    let ext = BigInt::from(a.clone()).extended_gcd(&BigInt::from(b.clone()));
    let g = ext.gcd.magnitude().clone();
    let (x, y) = if ext.gcd.sign() == num_bigint::Sign::Minus {
        (-ext.x, -ext.y)
    } else {
        (ext.x, ext.y)
    };
    debug_assert!(g.is_one() || !g.is_zero());
    Ok((g, x, y))
}
