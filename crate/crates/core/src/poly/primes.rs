//! Primes in residue classes of F_q[X] and the degree invariant delta.

use num_integer::Integer;
use num_traits::One;

use super::{BigNat, Poly};
use crate::error::{Error, Result};
use crate::gf::FieldElement;

/// `(q^deg(f) - 1) / (q - 1)` for nonconstant `f`.
pub fn delta(f: &Poly) -> Result<BigNat> {
    match f.degree() {
        Some(d) if d > 0 => Ok(delta_of_degree(f.field().q(), d)),
        _ => Err(Error::ConstantModulus),
    }
}

pub(crate) fn delta_of_degree(q: u32, d: usize) -> BigNat {
    let q = BigNat::from(q);
    (q.pow(d as u32) - BigNat::one()) / (q - BigNat::one())
}

/// Every polynomial of exact degree `degree` congruent to `b` modulo `a`, in the
/// searcher's deterministic order.
///
/// With `r = b mod a`, candidates of degree below `deg a` are just `r`; above,
/// they are `r + a*h` with `deg h = degree - deg a`. The leading coefficient of
/// `h` that makes the candidate monic comes first, then the remaining ones by
/// code; lower coefficients of `h` run through all tuples in base-q order.
pub fn residue_class_of_degree(
    a: &Poly,
    b: &Poly,
    degree: usize,
) -> Result<impl Iterator<Item = Poly> + use<>> {
    a.same_field(b)?;
    let da = a.degree().ok_or(Error::DivisionByZero)?;
    let r = b.rem(a)?;
    let field = a.field().clone();
    let a = a.clone();

    let below: Option<Poly> = (degree < da && r.degree() == Some(degree)).then(|| r.clone());
    let above = (degree >= da).then(|| {
        let hdeg = degree - da;
        let monic_lead = field.inv(a.leading()).expect("nonzero");
        let leads: Vec<FieldElement> = std::iter::once(monic_lead)
            .chain(field.elements().filter(move |&c| !c.is_zero() && c != monic_lead))
            .collect();
        let q = field.q();
        let field2 = field.clone();
        leads.into_iter().flat_map(move |lead| {
            let field = field2.clone();
            let a = a.clone();
            let r = r.clone();
            let mut digits: Option<Vec<u32>> = Some(vec![0; hdeg]);
            std::iter::from_fn(move || {
                let cur = digits.take()?;
                let mut next = cur.clone();
                let mut carried = true;
                for d in next.iter_mut() {
                    *d += 1;
                    if *d < q {
                        carried = false;
                        break;
                    }
                    *d = 0;
                }
                if !carried {
                    digits = Some(next);
                }
                let mut coeffs: Vec<FieldElement> = cur
                    .iter()
                    .map(|&c| FieldElement::from_code_unchecked(c))
                    .collect();
                coeffs.push(lead);
                let h = Poly::new(&field, coeffs);
                Some(&r + &(&a * &h))
            })
        })
    });
    Ok(below.into_iter().chain(above.into_iter().flatten()))
}

/// An irreducible `b'` with `b' = b mod a`, searching degrees upward from the
/// least degree of the class; with `degree_coprime_to = Some(k)` only degrees
/// coprime to `k` are considered.
pub fn find_prime_in_progression(
    a: &Poly,
    b: &Poly,
    degree_coprime_to: Option<usize>,
    max_degree: usize,
) -> Result<Poly> {
    a.same_field(b)?;
    if a.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if !a.gcd(b).is_one() {
        return Err(Error::NotCoprime(format!("gcd({a:?}, {b:?}) is not 1")));
    }
    let start = b.rem(a)?.degree().unwrap_or(0).max(1);
    for degree in start..=max_degree {
        if degree_coprime_to.is_some_and(|k| degree.gcd(&k) != 1) {
            continue;
        }
        if let Some(p) = first_prime_of_degree(a, b, degree)? {
            return Ok(p);
        }
    }
    Err(Error::PrimeSearchExhausted {
        modulus: a.to_string(),
        residue: b.to_string(),
        max_degree,
    })
}

/// The first irreducible of the given degree in the residue class of `b`.
pub fn first_prime_of_degree(a: &Poly, b: &Poly, degree: usize) -> Result<Option<Poly>> {
    Ok(residue_class_of_degree(a, b, degree)?.find(|c| c.is_irreducible()))
}
