//! A quick invariant suite, run by `elemgen selftest`.

use crate::corpus::{self, CorpusSpec};
use crate::decompose::decompose;
use crate::error::Error;
use crate::gf::FieldSpec;
use crate::main_step::{ch_power, swindle};
use crate::matrix::SqMatrix;
use crate::poly::{BigNat, Poly};
use crate::{nu, Certificate};

pub struct Check {
    pub name: &'static str,
    pub outcome: Result<(), String>,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn field(p: u32, m: u32) -> Result<FieldSpec, String> {
    FieldSpec::new(p, m).map_err(|e| e.to_string())
}

fn field_axioms() -> Result<(), String> {
    for (p, m) in [(2, 1), (3, 1), (2, 2), (3, 2)] {
        let f = field(p, m)?;
        for a in f.elements() {
            if !a.is_zero() {
                let inv = f.inv(a).ok_or("missing inverse")?;
                ensure(f.mul(a, inv).is_one(), || format!("GF({p}^{m}): bad inverse of {a}"))?;
            }
            for b in f.elements() {
                ensure(f.sub(f.add(a, b), b) == a, || format!("GF({p}^{m}): a + b - b != a"))?;
                for c in f.elements() {
                    let lhs = f.mul(a, f.add(b, c));
                    let rhs = f.add(f.mul(a, b), f.mul(a, c));
                    ensure(lhs == rhs, || format!("GF({p}^{m}): distributivity fails"))?;
                }
            }
        }
    }
    Ok(())
}

/// Every polynomial of each degree up to `max_deg`, leading coefficient 1.
fn monic_of_degree(f: &FieldSpec, deg: usize) -> impl Iterator<Item = Poly> + '_ {
    let q = f.q() as u64;
    (0..q.pow(deg as u32)).map(move |mut code| {
        let mut c = Vec::with_capacity(deg + 1);
        for _ in 0..deg {
            c.push((code % q) as u32);
            code /= q;
        }
        c.push(1);
        Poly::from_codes(f, &c).expect("valid codes")
    })
}

fn irreducibility() -> Result<(), String> {
    for (p, max_deg) in [(2u32, 6usize), (3, 3)] {
        let f = field(p, 1)?;
        for deg in 1..=max_deg {
            for g in monic_of_degree(&f, deg) {
                let has_factor = (1..=deg / 2).any(|d| monic_of_degree(&f, d).any(|h| h.divides(&g)));
                ensure(g.is_irreducible() == !has_factor, || format!("GF({p}): disagreement on {g}"))?;
            }
        }
    }
    Ok(())
}

fn cayley_hamilton() -> Result<(), String> {
    for (p, m) in [(2, 1), (3, 1), (2, 2)] {
        let f = field(p, m)?;
        let mut rng = corpus::rng(11, corpus::stream::RANDOM);
        for _ in 0..10 {
            let b = corpus::random_word(&f, 2, 4, 1, &mut rng).map_err(|e| e.to_string())?.product();
            let mut power = SqMatrix::identity(&f, 2);
            for k in 0..=24u32 {
                let pair = ch_power(&b, &BigNat::from(k)).map_err(|e| e.to_string())?;
                ensure(pair.matrix(&b) == power, || format!("GF({p}^{m}): k = {k} mismatch"))?;
                power = power.mul(&b).map_err(|e| e.to_string())?;
            }
        }
    }
    Ok(())
}

fn swindle_example() -> Result<(), String> {
    let f = field(2, 1)?;
    let p = |c: &[u32]| Poly::from_codes(&f, c).expect("valid");
    let sw = swindle(&p(&[1, 1]), &p(&[1]), &p(&[1]), &p(&[1]), &p(&[0, 1]), 3).map_err(|e| e.to_string())?;
    ensure(sw.scheduled == 11, || format!("{} scheduled moves", sw.scheduled))?;
    let expected = SqMatrix::framed(
        &SqMatrix::from_rows(vec![vec![p(&[1, 1]), p(&[0, 1])], vec![p(&[1]), p(&[1])]]).expect("2x2"),
        3,
    );
    ensure(sw.out == expected, || "unexpected swindle output".into())
}

fn small_corpora() -> Result<(), String> {
    for (p, n, count, len, deg) in [(2, 3, 40, 15, 2), (3, 4, 20, 10, 1), (5, 3, 10, 6, 1)] {
        let spec = CorpusSpec {
            p,
            m: 1,
            n,
            max_len: len,
            max_deg: deg,
            count,
            seed: 5,
        };
        for (i, m) in spec.generate().map_err(|e| e.to_string())?.into_iter().enumerate() {
            let cert = decompose(&m).map_err(|e| format!("item {i}: {e}"))?;
            let again = Certificate::from_json(&cert.to_json()).map_err(|e| e.to_string())?;
            ensure(cert.verified && again.verify() && cert.length <= nu(n), || {
                format!("SL_{n} over GF({p}) item {i}: certificate fails")
            })?;
        }
    }
    Ok(())
}

fn guard_rails() -> Result<(), String> {
    let f = field(2, 1)?;
    let small = decompose(&SqMatrix::identity(&f, 2));
    ensure(matches!(small, Err(Error::DimensionTooSmall(2))), || "n = 2 accepted".into())?;
    let mut m = SqMatrix::identity(&f, 3);
    m.set(0, 0, Poly::x(&f));
    ensure(matches!(decompose(&m), Err(Error::NotSpecialLinear(_))), || "det != 1 accepted".into())
}

pub fn run() -> Vec<Check> {
    let checks: [(&'static str, fn() -> Result<(), String>); 6] = [
        ("field axioms", field_axioms),
        ("irreducibility against trial division", irreducibility),
        ("Cayley-Hamilton pairs against powers", cayley_hamilton),
        ("swindle on (X+1, 1; X, 1)", swindle_example),
        ("seeded corpora decompose and verify", small_corpora),
        ("guard rails", guard_rails),
    ];
    checks
        .into_iter()
        .map(|(name, f)| Check { name, outcome: f() })
        .collect()
}
