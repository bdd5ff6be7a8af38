//! Writes an SL_3 matrix over GF(2)[X] as a short product of elementary
//! matrices and shows how the moves are spent.

use elemgen::main_step::FramedPlan;
use elemgen::{decompose_with, format_matrix, nu, parse_matrix, DecomposeOptions, ElemWord, FieldSpec, Poly};

fn main() -> elemgen::Result<()> {
    let f = FieldSpec::prime(2)?;
    let x = Poly::x(&f);
    let mut w = ElemWord::new(&f, 3);
    for (i, j, k) in [(0, 1, 2), (1, 2, 1), (2, 0, 3), (0, 2, 1), (1, 0, 2), (2, 1, 1)] {
        w.push(i, j, &x.pow(k) + &Poly::one(&f));
    }
    let text = format_matrix(&w.product());
    print!("{text}");
    let m = parse_matrix(&text)?;

    let d = decompose_with(&m, &DecomposeOptions::default())?;
    let cert = &d.certificate;
    let plan = match &d.plan {
        FramedPlan::Identity => "identity".to_string(),
        FramedPlan::ZeroPivot { .. } => "zero pivot".into(),
        FramedPlan::UnitPivot { .. } => "unit pivot".into(),
        FramedPlan::General { b_prime, c_prime, .. } => format!("general, b' = {}, c' = {}", b_prime.pretty(), c_prime.pretty()),
        FramedPlan::Euclid { moves, .. } => format!("division steps, {moves} moves"),
    };
    println!("\ncore block {:?}, plan {plan}", d.core);
    println!("length {} (bound {}), verified {}", cert.length, nu(3), cert.verify());
    println!("breakdown {:?}", cert.breakdown);
    println!("{:?}", cert.word.factors());
    Ok(())
}
