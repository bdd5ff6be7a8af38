//! Slow, obviously-correct reference implementations used as test oracles.
//! They rely only on ring arithmetic and division with remainder.

#![allow(dead_code)]

use elemgen::{FieldSpec, Poly, SqMatrix};

/// Every polynomial of degree at most `max_deg`, zero included.
pub fn all_polys(f: &FieldSpec, max_deg: usize) -> Vec<Poly> {
    let q = f.q() as u64;
    let total = q.pow(max_deg as u32 + 1);
    (0..total)
        .map(|mut code| {
            let mut c = Vec::new();
            while code > 0 {
                c.push((code % q) as u32);
                code /= q;
            }
            Poly::from_codes(f, &c).unwrap()
        })
        .collect()
}

/// Every polynomial of exact degree `d`.
pub fn polys_of_degree(f: &FieldSpec, d: usize) -> Vec<Poly> {
    all_polys(f, d).into_iter().filter(|p| p.degree() == Some(d)).collect()
}

pub fn monic_of_degree(f: &FieldSpec, d: usize) -> Vec<Poly> {
    polys_of_degree(f, d).into_iter().filter(|p| p.leading().is_one()).collect()
}

pub fn divides(g: &Poly, f: &Poly) -> bool {
    f.divmod(g).unwrap().1.is_zero()
}

/// Irreducible iff nonconstant with no monic divisor of degree `1..=deg/2`.
pub fn irreducible(f: &Poly) -> bool {
    let Some(d) = f.degree() else { return false };
    if d == 0 {
        return false;
    }
    !(1..=d / 2).any(|k| monic_of_degree(f.field(), k).iter().any(|g| divides(g, f)))
}

/// Monic irreducible factors with multiplicities, by trial division.
pub fn factor(f: &Poly) -> Vec<(Poly, usize)> {
    let mut rest = f.clone();
    let mut out = Vec::new();
    let mut k = 1;
    while rest.deg() >= 1 {
        if 2 * k > rest.deg() as usize {
            // what is left has no factor of degree <= deg/2
            let (m, _) = rest.monic();
            out.push((m, 1));
            break;
        }
        for g in monic_of_degree(f.field(), k) {
            let mut e = 0;
            while divides(&g, &rest) {
                rest = rest.divmod(&g).unwrap().0;
                e += 1;
            }
            if e > 0 {
                out.push((g, e));
            }
        }
        k += 1;
    }
    out
}

pub fn radical(f: &Poly) -> Poly {
    factor(f)
        .into_iter()
        .fold(Poly::one(f.field()), |acc, (g, _)| &acc * &g)
}

pub fn power(m: &SqMatrix, k: u32) -> SqMatrix {
    let mut acc = SqMatrix::identity(m.field(), m.n());
    for _ in 0..k {
        acc = acc.mul(m).unwrap();
    }
    acc
}

pub fn int_gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `1 + q + ... + q^(d-1)`.
pub fn delta_oracle(q: u128, d: u32) -> u128 {
    (0..d).map(|i| q.pow(i)).sum()
}
