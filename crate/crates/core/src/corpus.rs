//! Seeded random elementary words and SL_n matrices.
//!
//! All randomness comes from ChaCha8 seeded with a 64-bit seed; sub-tasks use
//! their own stream of the same seed, so item `i` of a corpus does not depend
//! on how many items are generated or in which order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldSpec};
use crate::matrix::SqMatrix;
use crate::poly::Poly;
use crate::word::ElemWord;

/// Stream numbers of the sub-tasks drawing from one seed.
pub mod stream {
    pub const RANDOM: u64 = 1;
    /// Corpus item `i` uses stream `CORPUS + i`.
    pub const CORPUS: u64 = 1 << 32;
}

pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// A uniformly random polynomial of degree at most `max_deg`.
pub fn random_poly<R: Rng>(field: &FieldSpec, max_deg: usize, rng: &mut R) -> Poly {
    let q = field.q();
    let coeffs = (0..=max_deg)
        .map(|_| FieldElement::from_code_unchecked(rng.random_range(0..q)))
        .collect();
    Poly::new(field, coeffs)
}

/// `len` factors `E_ij(t)` with uniform `i != j` and uniform nonzero `t` of
/// degree at most `max_deg`.
pub fn random_word<R: Rng>(field: &FieldSpec, n: usize, len: usize, max_deg: usize, rng: &mut R) -> Result<ElemWord> {
    if n < 2 {
        return Err(Error::ShapeMismatch(format!("size {n}, need at least 2")));
    }
    let mut w = ElemWord::new(field, n);
    while w.len() < len {
        let i = rng.random_range(0..n);
        let mut j = rng.random_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let t = random_poly(field, max_deg, rng);
        w.push(i, j, t);
    }
    Ok(w)
}

/// Parameters of a random SL_n corpus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusSpec {
    pub p: u32,
    pub m: u32,
    pub n: usize,
    /// Each item is a word of length drawn uniformly from `0..=max_len`.
    pub max_len: usize,
    pub max_deg: usize,
    pub count: usize,
    pub seed: u64,
}

impl CorpusSpec {
    pub fn field(&self) -> Result<FieldSpec> {
        FieldSpec::new(self.p, self.m)
    }

    /// Item `index` of the corpus.
    pub fn item(&self, field: &FieldSpec, index: usize) -> Result<SqMatrix> {
        let mut r = rng(self.seed, stream::CORPUS + index as u64);
        let len = r.random_range(0..=self.max_len);
        Ok(random_word(field, self.n, len, self.max_deg, &mut r)?.product())
    }

    pub fn generate(&self) -> Result<Vec<SqMatrix>> {
        let field = self.field()?;
        (0..self.count).map(|i| self.item(&field, i)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_deterministic_and_special_linear() {
        let spec = CorpusSpec {
            p: 3,
            m: 1,
            n: 3,
            max_len: 8,
            max_deg: 2,
            count: 20,
            seed: 7,
        };
        let a = spec.generate().unwrap();
        let b = spec.generate().unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|m| m.det().is_one()));
        let field = spec.field().unwrap();
        assert_eq!(spec.item(&field, 5).unwrap(), a[5]);
        let other = CorpusSpec { seed: 8, ..spec };
        assert_ne!(other.generate().unwrap(), a);
    }

    #[test]
    fn empty_word_is_identity() {
        let f = FieldSpec::prime(2).unwrap();
        let w = random_word(&f, 4, 0, 3, &mut rng(1, stream::RANDOM)).unwrap();
        assert!(w.product().is_identity());
        assert!(random_word(&f, 1, 3, 3, &mut rng(1, stream::RANDOM)).is_err());
    }
}
