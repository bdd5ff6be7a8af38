//! Squarefree support and the coprime shift of a unimodular triple.

use super::Poly;
use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldSpec};

impl Poly {
    /// The polynomial whose coefficients, read as base-q digits, spell `index`.
    /// Enumerating `index = 0, 1, 2, ...` visits F_q[X] in degree-ascending order.
    pub fn from_index(field: &FieldSpec, mut index: u64) -> Poly {
        let q = field.q() as u64;
        let mut coeffs = Vec::new();
        while index > 0 {
            coeffs.push(FieldElement::from_code_unchecked((index % q) as u32));
            index /= q;
        }
        Poly::new(field, coeffs)
    }

    /// For `f = g(X^p)` with coefficients pth powers, returns `g^(1/p)`, i.e. the
    /// polynomial `h` with `h^p = f`. `None` when `f` is not a pth power.
    pub fn pth_root(&self) -> Option<Poly> {
        let f = &self.field;
        let p = f.p() as usize;
        let mut out = Vec::with_capacity(self.coeffs.len() / p + 1);
        for (i, &c) in self.coeffs.iter().enumerate() {
            if i % p == 0 {
                out.push(f.pth_root(c));
            } else if !c.is_zero() {
                return None;
            }
        }
        Some(Poly::new(f, out))
    }

    /// Monic product of the distinct monic irreducible factors.
    ///
    /// `f / gcd(f, f')` collects the primes whose multiplicity is prime to p;
    /// the rest sit in `gcd(f, f')`, which is handled recursively. A vanishing
    /// derivative means `f` is a pth power.
    pub fn radical(&self) -> Result<Poly> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(radical_of(&self.monic().0))
    }
}

fn radical_of(f: &Poly) -> Poly {
    if f.degree().unwrap_or(0) == 0 {
        return Poly::one(f.field());
    }
    let d = f.derivative();
    if d.is_zero() {
        let root = f.pth_root().expect("zero derivative implies a pth power");
        return radical_of(&root);
    }
    let g = f.gcd(&d);
    let coprime_part = f.exact_div(&g).expect("gcd divides").monic().0;
    coprime_part.lcm(&radical_of(&g))
}

/// Returns `t` with `gcd(u, v + t*w) = 1`.
///
/// `t` is the product of the primes dividing `u` but not `v` (one per associate
/// class), obtained from the radical of `u` by stripping common factors with `v`;
/// `t = 1` when there are none.
pub fn coprime_shift(u: &Poly, v: &Poly, w: &Poly) -> Result<Poly> {
    u.same_field(v)?;
    u.same_field(w)?;
    if u.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if !u.gcd(v).gcd(w).is_one() {
        return Err(Error::NotCoprime(format!(
            "gcd({u:?}, {v:?}, {w:?}) is not 1"
        )));
    }
    let mut r = u.radical()?;
    loop {
        let g = r.gcd(v);
        if g.is_one() {
            break;
        }
        r = r.exact_div(&g).expect("gcd divides");
    }
    let t = if r.degree() == Some(0) {
        Poly::one(u.field())
    } else {
        r
    };
    if u.gcd(&(v + &(&t * w))).is_one() {
        return Ok(t);
    }
    // Unreachable for a correct radical; keep an exhaustive fallback.
    let field = u.field();
    (0u64..)
        .map(|i| Poly::from_index(field, i))
        .find(|t| u.gcd(&(v + &(t * w))).is_one())
        .ok_or_else(|| Error::NotCoprime("no shift found".into()))
}
