//! Reduces a random SL_5 matrix over GF(3) to a framed 2x2 block, one stage
//! at a time.

use elemgen::corpus::{random_word, rng, stream};
use elemgen::stable_range::{default_fold, Reducer};
use elemgen::{stable_range_bound, FieldSpec, Side};

fn main() -> elemgen::Result<()> {
    let f = FieldSpec::prime(3)?;
    let mut r = rng(7, stream::RANDOM);
    let m = random_word(&f, 5, 8, 1, &mut r)?.product();
    println!("input\n{m:?}");

    let mut red = Reducer::new(&m)?;
    while red.block_size() > 2 {
        let row = red.last_row();
        let fold = default_fold(&row)?;
        let k = red.block_size();
        let used = red.step(fold.as_ref())?;
        println!("stage {k}: {used} moves, fold {:?}", fold.map(|f| (f.anchor, f.target, f.t.pretty())));
    }
    let out = red.finish();
    println!("core block\n{:?}", out.core);
    println!("{} moves (bound {})", out.moves_used, stable_range_bound(5));

    let back = m.apply_word(&out.left, Side::Left)?.apply_word(&out.right, Side::Right)?;
    assert_eq!(back, elemgen::SqMatrix::framed(&out.core, 5));
    Ok(())
}
