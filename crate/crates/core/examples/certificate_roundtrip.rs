//! Decomposes a matrix, serializes the certificate, reads it back and checks
//! it, then shows that a tampered copy is rejected.

use elemgen::corpus::CorpusSpec;
use elemgen::{decompose, Certificate, ElemWord, Poly};

fn main() -> elemgen::Result<()> {
    let spec = CorpusSpec { p: 3, m: 1, n: 4, max_len: 10, max_deg: 1, count: 1, seed: 4 };
    let f = spec.field()?;
    let m = spec.item(&f, 0)?;

    let cert = decompose(&m)?;
    let json = cert.to_json();
    println!("{} bytes of JSON, length {}", json.len(), cert.length);

    let back = Certificate::from_json(&json)?;
    println!("read back: verifies {}", back.verify());

    let mut factors = back.word.factors().to_vec();
    if let Some(first) = factors.first_mut() {
        first.t = &first.t + &Poly::one(&f);
        if first.t.is_zero() {
            first.t = Poly::x(&f);
        }
        let bad = Certificate { word: ElemWord::from_factors(&f, 4, factors)?, ..back };
        println!("tampered: verifies {}", bad.verify());
    }
    Ok(())
}
