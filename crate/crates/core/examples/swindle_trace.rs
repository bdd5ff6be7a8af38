//! The swindle on a small block over GF(2): moves `s = X` from the lower-left
//! entry to the upper-right one, printing the matrix after each move.

use elemgen::main_step::{framed_block, swindle_traced};
use elemgen::{FieldSpec, Poly};

fn main() -> elemgen::Result<()> {
    let f = FieldSpec::prime(2)?;
    let p = |c: &[u32]| Poly::from_codes(&f, c);
    let (a, b, c, d, s) = (p(&[1, 1])?, p(&[1])?, p(&[1])?, p(&[1])?, p(&[0, 1])?);

    println!("start\n{:?}", framed_block(&a, &b, &(&s * &c), &d, 3));
    let (sw, trace) = swindle_traced(&a, &b, &c, &d, &s, 3)?;
    if let Some(k) = &sw.factors {
        println!("s1 = {}, s2 = {}, k1 = {}, k2 = {}\n", k.s1.pretty(), k.s2.pretty(), k.k1.pretty(), k.k2.pretty());
    }
    for (i, m) in trace.iter().enumerate() {
        println!("after move {}\n{m:?}", i + 1);
    }
    println!("{} scheduled moves, {} elementary factors", sw.scheduled, sw.moves());
    assert_eq!(trace.last(), Some(&sw.out));
    Ok(())
}
