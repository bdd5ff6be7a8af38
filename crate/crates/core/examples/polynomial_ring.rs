//! Division, gcd, Bezout coefficients, radicals and irreducibility in GF(2)[X].

use elemgen::poly::delta;
use elemgen::{FieldSpec, Poly};

fn main() -> elemgen::Result<()> {
    let f = FieldSpec::prime(2)?;
    let p = |c: &[u32]| Poly::from_codes(&f, c);

    let a = p(&[1, 0, 1, 1, 0, 1])?; // X^5 + X^3 + X^2 + 1
    let b = p(&[1, 1, 1])?; // X^2 + X + 1
    let (q, r) = a.divmod(&b)?;
    println!("({}) = ({}) * ({}) + ({})", a.pretty(), q.pretty(), b.pretty(), r.pretty());

    let c = p(&[1, 1, 0, 1])?;
    let (g, s, t) = a.xgcd(&c)?;
    println!("gcd({}, {}) = {} = s*a + t*c with s = {}, t = {}", a.pretty(), c.pretty(), g.pretty(), s.pretty(), t.pretty());
    assert_eq!(&(&s * &a) + &(&t * &c), g);

    // (X + 1)^4 (X^2 + X + 1)^2 has radical (X + 1)(X^2 + X + 1)
    let sq = &p(&[1, 1])?.pow(4) * &b.pow(2);
    println!("radical of {} is {}", sq.pretty(), sq.radical()?.pretty());

    println!("irreducible of degree 4:");
    for code in 16..32 {
        let h = Poly::from_index(&f, code);
        if h.is_irreducible() {
            println!("  {}  delta = {}", h.pretty(), delta(&h)?);
        }
    }
    Ok(())
}
