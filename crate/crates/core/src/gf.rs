//! Arithmetic in the finite field GF(q), q = p^m.
//!
//! Elements are stored as integer codes `c = d_0 + d_1 p + ... + d_{m-1} p^{m-1}`
//! where `d_i` are the coefficients of the representative polynomial in the
//! field generator. The same integer is used by the text and JSON formats, so
//! a certificate can be read back without knowing anything but `(p, m, modulus)`.
//!
//! Prime fields use plain modular arithmetic. Extension fields use exp/log
//! tables over a primitive element, with Zech logarithms for addition in odd
//! characteristic and XOR in characteristic 2.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::Poly;

/// Largest supported characteristic (exclusive) and field order (inclusive).
pub const MAX_CHARACTERISTIC: u64 = 1 << 16;
pub const MAX_ORDER: u64 = 1 << 16;

/// An element of GF(q), encoded by its base-p digit vector.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// The integer code `sum d_i p^i`. Callers must know it is below q.
    pub(crate) const fn from_code_unchecked(code: u32) -> Self {
        FieldElement(code)
    }

    pub const fn code(self) -> u32 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub const fn is_one(self) -> bool {
        self.0 == 1
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

enum Arith {
    Prime,
    Tables {
        /// `exp[i] = g^i` for `i < 2(q-1)`, doubled so sums of logs need no reduction.
        exp: Vec<u32>,
        log: Vec<u32>,
        /// `zech[i] = log(1 + g^i)`, `NO_LOG` when `1 + g^i = 0`. Odd characteristic only.
        zech: Vec<u32>,
    },
}

const NO_LOG: u32 = u32::MAX;

struct Inner {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    arith: Arith,
}

/// The coefficient field GF(p^m) with an explicit irreducible modulus.
///
/// Cloning is cheap (shared tables). Two specs are equal when `p`, `m` and the
/// modulus agree.
#[derive(Clone)]
pub struct FieldSpec(Arc<Inner>);

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.m == other.0.m && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.m == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({}^{}, modulus {:?})", self.0.p, self.0.m, self.0.modulus)
        }
    }
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn check_params(p: u64, m: u64) -> Result<u32> {
    if m == 0 || p >= MAX_CHARACTERISTIC {
        return Err(Error::UnsupportedField { p, m });
    }
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    let q = (p as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
    if m > 32 || q > MAX_ORDER as u128 {
        return Err(Error::UnsupportedField { p, m });
    }
    Ok(q as u32)
}

/// Placeholder modulus stored for prime fields: the polynomial `X`.
pub fn prime_field_placeholder() -> Vec<u32> {
    vec![0, 1]
}

/// The monic irreducible polynomial of degree `m` over GF(p) whose ascending
/// coefficient tuple, read as a base-p integer, is smallest.
///
/// Returns the placeholder `X` for `m = 1`.
pub fn default_modulus(p: u32, m: u32) -> Result<Vec<u32>> {
    check_params(p as u64, m as u64)?;
    if m == 1 {
        return Ok(prime_field_placeholder());
    }
    let base = FieldSpec::prime(p)?;
    let count = (p as u64).pow(m);
    for code in 0..count {
        let mut coeffs = Vec::with_capacity(m as usize + 1);
        let mut c = code;
        for _ in 0..m {
            coeffs.push((c % p as u64) as u32);
            c /= p as u64;
        }
        coeffs.push(1);
        let f = Poly::from_codes(&base, &coeffs)?;
        if f.is_irreducible() {
            return Ok(coeffs);
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl FieldSpec {
    /// The prime field GF(p).
    pub fn prime(p: u32) -> Result<Self> {
        let q = check_params(p as u64, 1)?;
        Ok(FieldSpec(Arc::new(Inner {
            p,
            m: 1,
            q,
            modulus: prime_field_placeholder(),
            arith: Arith::Prime,
        })))
    }

    /// GF(p^m) with the default (lexicographically minimal) modulus.
    pub fn new(p: u32, m: u32) -> Result<Self> {
        Self::with_modulus(p, m, None)
    }

    /// GF(p^m) with an explicit modulus (ascending coefficients over GF(p)).
    /// For `m = 1` the modulus must be omitted or equal the placeholder `[0 1]`.
    pub fn with_modulus(p: u32, m: u32, modulus: Option<Vec<u32>>) -> Result<Self> {
        let q = check_params(p as u64, m as u64)?;
        if m == 1 {
            if let Some(given) = modulus {
                if given != prime_field_placeholder() {
                    return Err(Error::InvalidModulus(format!(
                        "prime fields take no modulus (or the placeholder [0 1]), got {given:?}"
                    )));
                }
            }
            return Self::prime(p);
        }
        let modulus = match modulus {
            Some(given) => {
                validate_modulus(p, m, &given)?;
                given
            }
            None => default_modulus(p, m)?,
        };
        let arith = build_tables(p, m, q, &modulus);
        Ok(FieldSpec(Arc::new(Inner {
            p,
            m,
            q,
            modulus,
            arith,
        })))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn m(&self) -> u32 {
        self.0.m
    }

    /// Field order q = p^m.
    pub fn q(&self) -> u32 {
        self.0.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn same(&self, other: &FieldSpec) -> bool {
        self == other
    }

    /// Builds an element from its integer code, checking the range.
    pub fn element(&self, code: u64) -> Result<FieldElement> {
        if code >= self.0.q as u64 {
            return Err(Error::ElementOutOfRange { code, q: self.0.q });
        }
        Ok(FieldElement(code as u32))
    }

    /// Reduces an integer into the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        let p = self.0.p as i64;
        FieldElement(n.rem_euclid(p) as u32)
    }

    /// The `m` base-p digits of an element, ascending.
    pub fn digits(&self, a: FieldElement) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.0.m as usize);
        let mut c = a.0;
        for _ in 0..self.0.m {
            out.push(c % self.0.p);
            c /= self.0.p;
        }
        out
    }

    pub fn from_digits(&self, digits: &[u32]) -> Result<FieldElement> {
        if digits.len() != self.0.m as usize || digits.iter().any(|&d| d >= self.0.p) {
            return Err(Error::InvalidModulus(format!(
                "digit vector {digits:?} is not an element of GF({}^{})",
                self.0.p, self.0.m
            )));
        }
        let mut code = 0u32;
        for &d in digits.iter().rev() {
            code = code * self.0.p + d;
        }
        Ok(FieldElement(code))
    }

    /// All field elements in code order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.0.q).map(FieldElement)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let inner = &*self.0;
        match &inner.arith {
            Arith::Prime => {
                let s = a.0 + b.0;
                FieldElement(if s >= inner.p { s - inner.p } else { s })
            }
            Arith::Tables { exp, log, zech } => {
                if inner.p == 2 {
                    return FieldElement(a.0 ^ b.0);
                }
                if a.0 == 0 {
                    return b;
                }
                if b.0 == 0 {
                    return a;
                }
                let order = inner.q - 1;
                let la = log[a.0 as usize];
                let lb = log[b.0 as usize];
                let diff = if lb >= la { lb - la } else { lb + order - la };
                let z = zech[diff as usize];
                if z == NO_LOG {
                    FieldElement::ZERO
                } else {
                    FieldElement(exp[(la + z) as usize])
                }
            }
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let inner = &*self.0;
        if a.0 == 0 {
            return a;
        }
        match &inner.arith {
            Arith::Prime => FieldElement(inner.p - a.0),
            Arith::Tables { exp, log, .. } => {
                if inner.p == 2 {
                    a
                } else {
                    // -1 = g^((q-1)/2)
                    let half = (inner.q - 1) / 2;
                    FieldElement(exp[(log[a.0 as usize] + half) as usize])
                }
            }
        }
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let inner = &*self.0;
        match &inner.arith {
            Arith::Prime => FieldElement(((a.0 as u64 * b.0 as u64) % inner.p as u64) as u32),
            Arith::Tables { exp, log, .. } => {
                FieldElement(exp[(log[a.0 as usize] + log[b.0 as usize]) as usize])
            }
        }
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        if a.0 == 0 {
            return None;
        }
        let inner = &*self.0;
        Some(match &inner.arith {
            Arith::Prime => self.pow(a, inner.p as u64 - 2),
            Arith::Tables { exp, log, .. } => {
                let order = inner.q - 1;
                let l = log[a.0 as usize];
                FieldElement(exp[((order - l) % order) as usize])
            }
        })
    }

    pub fn try_inv(&self, a: FieldElement) -> Result<FieldElement> {
        self.inv(a).ok_or(Error::DivisionByZero)
    }

    /// The unique `r` with `r^p = a`, computed as `a^(p^(m-1))`.
    pub fn pth_root(&self, a: FieldElement) -> FieldElement {
        let e = (self.0.p as u64).pow(self.0.m - 1);
        self.pow(a, e)
    }
}

fn validate_modulus(p: u32, m: u32, modulus: &[u32]) -> Result<()> {
    if modulus.len() != m as usize + 1 {
        return Err(Error::InvalidModulus(format!(
            "expected degree {m}, got {} coefficients",
            modulus.len()
        )));
    }
    if modulus.last() != Some(&1) {
        return Err(Error::InvalidModulus("modulus must be monic".into()));
    }
    if modulus.iter().any(|&c| c >= p) {
        return Err(Error::InvalidModulus(format!(
            "coefficients must lie in [0, {p})"
        )));
    }
    let base = FieldSpec::prime(p)?;
    if !Poly::from_codes(&base, modulus)?.is_irreducible() {
        return Err(Error::InvalidModulus(format!(
            "{modulus:?} is reducible over GF({p})"
        )));
    }
    Ok(())
}

/// Multiplication of digit vectors modulo the field modulus, used only while
/// building the tables.
fn slow_mul(p: u32, m: usize, modulus: &[u32], a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut prod = vec![0u64; 2 * m - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    for top in (m..prod.len()).rev() {
        let c = prod[top];
        if c == 0 {
            continue;
        }
        // X^m = -(modulus without its leading term)
        for (k, &mk) in modulus[..m].iter().enumerate() {
            let idx = top - m + k;
            prod[idx] = (prod[idx] + (p as u64 - mk as u64) * c) % p as u64;
        }
        prod[top] = 0;
    }
    prod.truncate(m);
    prod.into_iter().map(|v| v as u32).collect()
}

fn encode(p: u32, digits: &[u32]) -> u32 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn decode(p: u32, m: usize, mut code: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(m);
    for _ in 0..m {
        out.push(code % p);
        code /= p;
    }
    out
}

fn build_tables(p: u32, m: u32, q: u32, modulus: &[u32]) -> Arith {
    let m = m as usize;
    let order = (q - 1) as u64;
    let factors = prime_factors(order);
    let one = decode(p, m, 1);
    let slow_pow = |base: &[u32], mut e: u64| {
        let mut acc = one.clone();
        let mut b = base.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = slow_mul(p, m, modulus, &acc, &b);
            }
            b = slow_mul(p, m, modulus, &b, &b);
            e >>= 1;
        }
        acc
    };
    let generator = (2..q)
        .map(|c| decode(p, m, c))
        .find(|g| factors.iter().all(|&l| slow_pow(g, order / l) != one))
        .expect("the multiplicative group of a finite field is cyclic");

    let mut exp = vec![0u32; 2 * (q as usize - 1)];
    let mut log = vec![0u32; q as usize];
    let mut cur = one.clone();
    for i in 0..(q - 1) as usize {
        let code = encode(p, &cur);
        exp[i] = code;
        exp[i + q as usize - 1] = code;
        log[code as usize] = i as u32;
        cur = slow_mul(p, m, modulus, &cur, &generator);
    }

    let mut zech = Vec::new();
    if p != 2 {
        zech = vec![NO_LOG; q as usize - 1];
        for (i, z) in zech.iter_mut().enumerate() {
            // 1 + g^i: add one to the constant digit
            let mut digits = decode(p, m, exp[i]);
            digits[0] = (digits[0] + 1) % p;
            let code = encode(p, &digits);
            if code != 0 {
                *z = log[code as usize];
            }
        }
    }
    Arith::Tables { exp, log, zech }
}
