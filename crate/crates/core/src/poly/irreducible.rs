//! Rabin's irreducibility test.

use super::{BigNat, Poly};

fn distinct_prime_factors(mut n: usize) -> Vec<usize> {
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

impl Poly {
    /// True iff `self` is irreducible over its field; constants are not.
    ///
    /// A degree-d polynomial f is irreducible iff `X^(q^d) = X mod f` and
    /// `gcd(X^(q^(d/l)) - X, f) = 1` for every prime l dividing d.
    pub fn is_irreducible(&self) -> bool {
        let d = match self.degree() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(d) => d,
        };
        let f = self.monic().0;
        let field = f.field().clone();
        let q = BigNat::from(field.q());
        let x = Poly::x(&field);
        let checkpoints: Vec<usize> = distinct_prime_factors(d).iter().map(|l| d / l).collect();
        // frob[i] = X^(q^i) mod f
        let mut frob = x.clone();
        for i in 1..=d {
            frob = frob.modpow(&q, &f).expect("nonconstant modulus");
            if checkpoints.contains(&i) && !(&frob - &x).gcd(&f).is_one() {
                return false;
            }
        }
        frob == x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldSpec;

    #[test]
    fn examples() {
        let f2 = FieldSpec::prime(2).unwrap();
        let f3 = FieldSpec::prime(3).unwrap();
        assert!(Poly::from_codes(&f2, &[1, 1, 1]).unwrap().is_irreducible());
        assert!(!Poly::from_codes(&f2, &[1, 0, 1]).unwrap().is_irreducible());
        assert!(Poly::from_codes(&f3, &[1, 0, 1]).unwrap().is_irreducible());
        assert!(!Poly::from_codes(&f3, &[2]).unwrap().is_irreducible());
        assert!(!Poly::zero(&f3).is_irreducible());
        // X^4 + X + 1 irreducible, X^4 + X^2 + 1 = (X^2+X+1)^2 not
        assert!(Poly::from_codes(&f2, &[1, 1, 0, 0, 1]).unwrap().is_irreducible());
        assert!(!Poly::from_codes(&f2, &[1, 0, 1, 0, 1]).unwrap().is_irreducible());
    }

    #[test]
    fn non_monic_inputs() {
        let f5 = FieldSpec::prime(5).unwrap();
        // 3(X^2 + 2) : 2 is a non-residue mod 5
        assert!(Poly::from_codes(&f5, &[1, 0, 3]).unwrap().is_irreducible());
    }
}
