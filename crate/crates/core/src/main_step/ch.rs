use crate::error::{Error, Result};
use crate::matrix::SqMatrix;
use crate::poly::{BigNat, Poly};

/// `M^k = e I + f M` for a 2x2 matrix of determinant 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CHPair {
    pub e: Poly,
    pub f: Poly,
    pub k: BigNat,
}

impl CHPair {
    /// `e I + f M`.
    pub fn matrix(&self, m: &SqMatrix) -> SqMatrix {
        let (e, f) = (&self.e, &self.f);
        SqMatrix::from_rows(vec![
            vec![e + &(f * m.get(0, 0)), f * m.get(0, 1)],
            vec![f * m.get(1, 0), e + &(f * m.get(1, 1))],
        ])
        .expect("2x2")
    }
}

/// Computes `T^k mod (T^2 - tau T + 1)`, `tau = trace(M)`, by square and
/// multiply; the class `e + f T` gives `M^k = e I + f M`.
pub fn ch_power(m: &SqMatrix, k: &BigNat) -> Result<CHPair> {
    if m.n() != 2 {
        return Err(Error::ShapeMismatch(format!("{0}x{0} matrix, expected 2x2", m.n())));
    }
    let det = m.det();
    if !det.is_one() {
        return Err(Error::NotSpecialLinear(det.to_string()));
    }
    let field = m.field();
    let tau = m.get(0, 0) + m.get(1, 1);
    // (e1 + f1 T)(e2 + f2 T) with T^2 = tau T - 1
    let mul = |(e1, f1): (&Poly, &Poly), (e2, f2): (&Poly, &Poly)| -> (Poly, Poly) {
        let ff = f1 * f2;
        let e = &(e1 * e2) - &ff;
        let f = &(&(e1 * f2) + &(f1 * e2)) + &(&ff * &tau);
        (e, f)
    };
    let mut acc = (Poly::one(field), Poly::zero(field));
    let base = (Poly::zero(field), Poly::one(field));
    for i in (0..k.bits()).rev() {
        acc = mul((&acc.0, &acc.1), (&acc.0, &acc.1));
        if k.bit(i) {
            acc = mul((&acc.0, &acc.1), (&base.0, &base.1));
        }
    }
    Ok(CHPair {
        e: acc.0,
        f: acc.1,
        k: k.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldSpec;

    fn sample() -> SqMatrix {
        let f = FieldSpec::prime(2).unwrap();
        SqMatrix::from_codes(&f, &[vec![vec![0, 1], vec![1, 1]], vec![vec![1, 1, 1], vec![0, 0, 1]]]).unwrap()
    }

    #[test]
    fn small_exponents() {
        let m = sample();
        let f = m.field().clone();
        let p0 = ch_power(&m, &BigNat::from(0u32)).unwrap();
        assert_eq!((p0.e, p0.f), (Poly::one(&f), Poly::zero(&f)));
        let p1 = ch_power(&m, &BigNat::from(1u32)).unwrap();
        assert_eq!((p1.e, p1.f), (Poly::zero(&f), Poly::one(&f)));
    }

    #[test]
    fn cube_example() {
        let m = sample();
        let f = m.field().clone();
        let p3 = ch_power(&m, &BigNat::from(3u32)).unwrap();
        assert_eq!(p3.e, Poly::from_codes(&f, &[0, 1, 1]).unwrap());
        assert_eq!(p3.f, Poly::from_codes(&f, &[1, 0, 1, 0, 1]).unwrap());
        let cube = m.mul(&m).unwrap().mul(&m).unwrap();
        assert_eq!(p3.matrix(&m), cube);
    }

    #[test]
    fn rejects_non_special() {
        let f = FieldSpec::prime(3).unwrap();
        let m = SqMatrix::from_codes(&f, &[vec![vec![2], vec![]], vec![vec![], vec![1]]]).unwrap();
        assert!(ch_power(&m, &BigNat::from(2u32)).is_err());
    }
}
