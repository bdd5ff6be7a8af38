//! Large powers of a 2x2 matrix of determinant 1 via `M^k = e I + f M`.

use elemgen::main_step::ch_power;
use elemgen::{BigNat, FieldSpec, Poly, SqMatrix};

fn main() -> elemgen::Result<()> {
    let f = FieldSpec::prime(5)?;
    let x = Poly::x(&f);
    let one = Poly::one(&f);
    // [[X, 1], [-1, 0]] has determinant 1 and trace X
    let m = SqMatrix::from_rows(vec![vec![x.clone(), one.clone()], vec![-&one, Poly::zero(&f)]])?;

    let mut direct = SqMatrix::identity(&f, 2);
    for k in 0u32..=12 {
        let pair = ch_power(&m, &BigNat::from(k))?;
        assert_eq!(pair.matrix(&m), direct);
        println!("k = {k:>2}: e = {}, f = {}", pair.e.pretty(), pair.f.pretty());
        direct = direct.mul(&m)?;
    }

    // a constant matrix to a huge power: only the pair is computed
    let c = |v: i64| Poly::constant(&f, f.from_int(v));
    let n = SqMatrix::from_rows(vec![vec![c(1), c(1)], vec![c(1), c(2)]])?;
    let k = BigNat::from(7u32).pow(40);
    let pair = ch_power(&n, &k)?;
    println!("k = 7^40: e = {}, f = {}", pair.e.pretty(), pair.f.pretty());
    // the order of n divides 24 = |SL_2(5)| / 5, and 7^40 = 1 mod 24
    assert_eq!(pair.matrix(&n), n);
    Ok(())
}
