//! Decomposes a seeded random corpus and prints length and degree statistics.
//!
//!     cargo run --release --example corpus_stats -- [p m n count max_len max_deg seed]

use std::time::Instant;

use elemgen::corpus::CorpusSpec;
use elemgen::decompose::{decompose_with, DecomposeOptions};
use elemgen::nu;

fn main() -> elemgen::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse().expect("integer argument")).collect();
    let arg = |i: usize, default: u64| args.get(i).copied().unwrap_or(default);
    let spec = CorpusSpec {
        p: arg(0, 2) as u32,
        m: arg(1, 1) as u32,
        n: arg(2, 3) as usize,
        count: arg(3, 100) as usize,
        max_len: arg(4, 15) as usize,
        max_deg: arg(5, 2) as usize,
        seed: arg(6, 1),
    };
    let field = spec.field()?;
    let opts = DecomposeOptions::default();
    let mut lengths = Vec::new();
    let mut max_degree = -1;
    let mut slowest = (0.0f64, 0);
    for i in 0..spec.count {
        let m = spec.item(&field, i)?;
        let start = Instant::now();
        match decompose_with(&m, &opts) {
            Ok(d) => {
                assert!(d.certificate.verify());
                lengths.push(d.certificate.length);
                max_degree = max_degree.max(d.max_entry_degree());
            }
            Err(e) => println!("item {i}: {e}"),
        }
        let secs = start.elapsed().as_secs_f64();
        if secs > slowest.0 {
            slowest = (secs, i);
        }
    }
    let max = lengths.iter().max().copied().unwrap_or(0);
    let mean = lengths.iter().sum::<usize>() as f64 / lengths.len().max(1) as f64;
    println!(
        "SL_{} over GF({}^{}): {} of {} decomposed, length mean {mean:.2} max {max} (bound {}), max entry degree {max_degree}",
        spec.n,
        spec.p,
        spec.m,
        lengths.len(),
        spec.count,
        nu(spec.n)
    );
    println!("slowest item {} took {:.3}s", slowest.1, slowest.0);
    Ok(())
}
