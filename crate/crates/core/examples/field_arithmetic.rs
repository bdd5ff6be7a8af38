//! Arithmetic in GF(9) = GF(3)[y]/(y^2 + 1): a multiplication table row,
//! inverses and the Frobenius map.

use elemgen::{FieldElement, FieldSpec};

fn main() -> elemgen::Result<()> {
    let f = FieldSpec::with_modulus(3, 2, Some(vec![1, 0, 1]))?;
    println!("field GF({}^{}) = GF({}), modulus digits {:?}", f.p(), f.m(), f.q(), f.modulus());

    let y = f.from_digits(&[0, 1])?;
    for a in f.elements() {
        let inv = f.inv(a).map(|i| i.to_string()).unwrap_or_else(|| "-".into());
        println!(
            "{a:>2}  digits {:?}  y*a = {:>2}  a^-1 = {inv:>2}  a^3 = {}",
            f.digits(a),
            f.mul(y, a),
            f.pow(a, 3)
        );
    }

    // y has order 4, so y^2 = -1
    assert_eq!(f.pow(y, 2), f.neg(FieldElement::ONE));
    // the multiplicative group is cyclic of order 8
    let g = f.elements().skip(1).find(|&a| (1..8).all(|k| f.pow(a, k) != FieldElement::ONE)).expect("generator");
    println!("generator {g} (digits {:?})", f.digits(g));
    Ok(())
}
