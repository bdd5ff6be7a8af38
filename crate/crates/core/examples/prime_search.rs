//! Irreducible polynomials in a residue class, the analogue of primes in an
//! arithmetic progression.
//!
//!     cargo run --example prime_search -- [max_degree]

use elemgen::poly::{find_prime_in_progression, first_prime_of_degree};
use elemgen::{FieldSpec, Poly};

fn main() -> elemgen::Result<()> {
    let max: usize = std::env::args().nth(1).map_or(12, |a| a.parse().expect("degree"));
    let f = FieldSpec::prime(3)?;
    let a = Poly::from_codes(&f, &[1, 0, 1, 1])?; // X^3 + X^2 + 1
    let b = Poly::from_codes(&f, &[1, 1])?; // X + 1

    println!("irreducible b' = {} mod {}:", b.pretty(), a.pretty());
    for d in 1..=max {
        match first_prime_of_degree(&a, &b, d)? {
            Some(q) => println!("  degree {d:>2}: {}", q.pretty()),
            None => println!("  degree {d:>2}: none"),
        }
    }
    let odd = find_prime_in_progression(&a, &b, Some(2), max)?;
    println!("least with odd degree: {} (degree {})", odd.pretty(), odd.deg());
    Ok(())
}
