mod common;

use elemgen::main_step::{ch_power, dagger_diagonal, dagger_reduce, primalize_antidiagonal, reduce_framed_sl2};
use elemgen::poly::delta;
use elemgen::text::{format_matrix, parse_matrix};
use elemgen::{
    decompose_with, nu, stable_range_bound, unit_diag_word, BigNat, Certificate, DecomposeOptions, ElemWord,
    FieldSpec, Poly, Side, SqMatrix,
};
use num_traits::ToPrimitive;
use proptest::prelude::*;

const FIELDS: [(u32, u32); 6] = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (3, 2)];

fn field_strategy() -> impl Strategy<Value = FieldSpec> {
    (0..FIELDS.len()).prop_map(|i| FieldSpec::new(FIELDS[i].0, FIELDS[i].1).unwrap())
}

fn poly_from(f: &FieldSpec, raw: &[u32]) -> Poly {
    let codes: Vec<u32> = raw.iter().map(|c| c % f.q()).collect();
    Poly::from_codes(f, &codes).unwrap()
}

/// Raw factors: (i, j) with i != j, and coefficient codes reduced later.
fn raw_word(n: usize, max_len: usize, max_deg: usize) -> impl Strategy<Value = Vec<(usize, usize, Vec<u32>)>> {
    prop::collection::vec(
        (0..n, 1..n, prop::collection::vec(any::<u32>(), 1..=max_deg + 1))
            .prop_map(move |(i, shift, c)| (i, (i + shift) % n, c)),
        0..=max_len,
    )
}

fn build_word(f: &FieldSpec, n: usize, raw: &[(usize, usize, Vec<u32>)]) -> ElemWord {
    let mut w = ElemWord::new(f, n);
    for (i, j, c) in raw {
        let t = poly_from(f, c);
        if !t.is_zero() {
            w.push(*i, *j, t);
        }
    }
    w
}

fn unit(f: &FieldSpec, raw: u32) -> elemgen::FieldElement {
    f.element((raw % (f.q() - 1) + 1) as u64).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn word_transforms(f in field_strategy(), raw in raw_word(4, 8, 2), d in prop::collection::vec(any::<u32>(), 4)) {
        let w = build_word(&f, 4, &raw);
        let p = w.product();
        prop_assert!(p.det().is_one());
        prop_assert!(p.mul(&w.inverse().product()).unwrap().is_identity());
        prop_assert_eq!(w.transpose().product(), p.transpose());

        let diag: Vec<_> = d.iter().map(|&r| unit(&f, r)).collect();
        let inv: Vec<_> = diag.iter().map(|&x| f.inv(x).unwrap()).collect();
        let (dm, dinv) = (SqMatrix::diagonal(&f, &diag), SqMatrix::diagonal(&f, &inv));
        let conj = w.conjugate_by_diagonal(&diag).unwrap();
        prop_assert_eq!(conj.len(), w.len());
        prop_assert_eq!(conj.product(), dm.mul(&p).unwrap().mul(&dinv).unwrap());

        let perm = [2, 0, 3, 1];
        prop_assert_eq!(w.relabel(&perm).product().permuted(&perm), p.clone());

        let left = SqMatrix::identity(&f, 4).apply_word(&w, Side::Left).unwrap();
        let right = SqMatrix::identity(&f, 4).apply_word(&w, Side::Right).unwrap();
        prop_assert_eq!(left, p.clone());
        prop_assert_eq!(right, p);
    }

    #[test]
    fn unit_diagonal_words(f in field_strategy(), raw in any::<u32>()) {
        let w = unit(&f, raw);
        let word = unit_diag_word(&f, w, 0, 2, 3).unwrap();
        prop_assert!(word.len() <= 4);
        let inv = f.inv(w).unwrap();
        let one = elemgen::FieldElement::ONE;
        prop_assert_eq!(word.product(), SqMatrix::diagonal(&f, &[w, one, inv]));
    }

    #[test]
    fn cayley_hamilton_pairs(f in field_strategy(), raw in raw_word(2, 5, 1), k in 0u32..200) {
        let m = build_word(&f, 2, &raw).product();
        let pair = ch_power(&m, &BigNat::from(k)).unwrap();
        let mut combo = m.clone();
        for r in 0..2 {
            for c in 0..2 {
                let diag = if r == c { pair.e.clone() } else { Poly::zero(&f) };
                combo.set(r, c, &diag + &(&pair.f * m.get(r, c)));
            }
        }
        prop_assert_eq!(combo, common::power(&m, k));
    }

    #[test]
    fn polynomial_division_and_gcd(f in field_strategy(), a in prop::collection::vec(any::<u32>(), 0..30), b in prop::collection::vec(any::<u32>(), 1..20)) {
        let (a, b) = (poly_from(&f, &a), poly_from(&f, &b));
        prop_assume!(!b.is_zero());
        let (q, r) = a.divmod(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &r, a.clone());
        prop_assert!(r.deg() < b.deg());
        let (g, s, t) = a.xgcd(&b).unwrap();
        prop_assert_eq!(&(&s * &a) + &(&t * &b), g.clone());
        prop_assert_eq!(g.clone(), a.gcd(&b));
        prop_assert!(common::divides(&g, &a) && common::divides(&g, &b));
    }

    #[test]
    fn framed_blocks_reduce(f in field_strategy(), raw in raw_word(2, 6, 2)) {
        let b = build_word(&f, 2, &raw).product();
        let w = reduce_framed_sl2(&b, 3).unwrap();
        prop_assert!(w.len() <= 34);
        prop_assert_eq!(w.product(), SqMatrix::framed(&b, 3));
    }

    #[test]
    fn dagger_reaches_its_diagonal(f in field_strategy(), raw in raw_word(2, 4, 1), j in 1u32..3) {
        let b = build_word(&f, 2, &raw).product();
        prop_assume!(!b.get(0, 0).is_zero() && b.get(0, 0).deg() > 0);
        let Ok(prim) = primalize_antidiagonal(&b, 8) else { return Ok(()) };
        let c = prim.c_prime.clone();
        let k = delta(&c).unwrap() * BigNat::from(j);
        prop_assume!(k.to_u32().is_some_and(|k| k <= 60));
        let r = dagger_reduce(&prim.m_prime, &k, &c, 3).unwrap();
        prop_assert!(r.moves <= 14);
        // u is a^k mod c', by direct powering
        let mut acc = Poly::one(&f);
        for _ in 0..k.to_u32().unwrap() {
            acc = (&acc * prim.m_prime.get(0, 0)).divmod(&c).unwrap().1;
        }
        prop_assert_eq!(acc, Poly::constant(&f, r.u));
        let y = common::power(&prim.m_prime, k.to_u32().unwrap());
        let got = SqMatrix::framed(&y, 3)
            .apply_word(&r.left, Side::Left)
            .unwrap()
            .apply_word(&r.right, Side::Right)
            .unwrap();
        prop_assert_eq!(got, SqMatrix::diagonal(&f, &dagger_diagonal(&f, r.u, 3)));
    }

    #[test]
    fn decompositions_verify(f in field_strategy(), n in 3usize..=5, raw in raw_word(5, 10, 2)) {
        let raw: Vec<_> = raw.into_iter().filter(|(i, j, _)| *i < n && *j < n).collect();
        let m = build_word(&f, n, &raw).product();
        let d = decompose_with(&m, &DecomposeOptions::default()).unwrap();
        let cert = &d.certificate;
        prop_assert!(cert.verified && cert.verify());
        prop_assert!(cert.length <= nu(n));
        prop_assert!(cert.breakdown.stable_range <= stable_range_bound(n));
        prop_assert!(cert.breakdown.framed() <= 34);
        prop_assert!(d.dagger_moves.iter().all(|&k| k <= 14));
        for (&k, &degenerate) in d.swindle_scheduled.iter().zip(&d.swindle_degenerate) {
            prop_assert!(degenerate || k == 11);
        }
        let back = Certificate::from_json(&cert.to_json()).unwrap();
        prop_assert!(back.verify());
        prop_assert_eq!(back.input, m);
    }

    #[test]
    fn text_format_round_trip(f in field_strategy(), raw in raw_word(3, 6, 3)) {
        let m = build_word(&f, 3, &raw).product();
        prop_assert_eq!(parse_matrix(&format_matrix(&m)).unwrap(), m);
    }

    #[test]
    fn tampered_certificates_fail(raw in raw_word(3, 8, 2), pick in any::<prop::sample::Index>()) {
        let f = FieldSpec::prime(3).unwrap();
        let m = build_word(&f, 3, &raw).product();
        let cert = decompose_with(&m, &DecomposeOptions::default()).unwrap().certificate;
        prop_assume!(!cert.word.is_empty());
        let k = pick.index(cert.word.len());
        let mut factors = cert.word.factors().to_vec();
        factors[k].t = &factors[k].t + &Poly::one(&f);
        prop_assume!(!factors[k].t.is_zero());
        let bad = Certificate {
            word: ElemWord::from_factors(&f, 3, factors).unwrap(),
            ..cert.clone()
        };
        prop_assert!(!bad.verify());
        let miscounted = Certificate { length: cert.length + 1, ..cert };
        prop_assert!(!miscounted.verify());
    }
}
