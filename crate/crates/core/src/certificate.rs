//! Decomposition certificates and their JSON form.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::matrix::SqMatrix;
use crate::poly::Poly;
use crate::word::{ElemMat, ElemWord};

/// Word-length bound for SL_n: `(3n^2 - n)/2 + 29`.
pub fn nu(n: usize) -> usize {
    (3 * n * n - n) / 2 + 29
}

/// Move budget of the stable-range phase: `(3n^2 - n)/2 - 5`.
pub fn stable_range_bound(n: usize) -> usize {
    (3 * n * n - n) / 2 - 5
}

/// Moves spent in each phase of the pipeline.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Breakdown {
    pub stable_range: usize,
    pub primalize: usize,
    pub x_side: usize,
    pub patch: usize,
    pub y_side: usize,
    /// Moves of the short framed-SL2 branches (identity, triangular, `a = 0`).
    pub finish: usize,
}

impl Breakdown {
    pub fn total(&self) -> usize {
        self.stable_range + self.primalize + self.x_side + self.patch + self.y_side + self.finish
    }

    /// Moves used on the framed SL2 core.
    pub fn framed(&self) -> usize {
        self.total() - self.stable_range
    }
}

#[derive(Clone, Debug)]
pub struct Certificate {
    pub input: SqMatrix,
    pub word: ElemWord,
    pub length: usize,
    pub bound: usize,
    pub verified: bool,
    pub breakdown: Breakdown,
}

impl Certificate {
    /// Builds a certificate and checks it.
    pub fn new(input: SqMatrix, word: ElemWord, breakdown: Breakdown) -> Self {
        let n = input.n();
        let mut cert = Certificate {
            length: word.len(),
            bound: nu(n),
            input,
            word,
            verified: false,
            breakdown,
        };
        cert.verified = cert.verify();
        cert
    }

    pub fn n(&self) -> usize {
        self.input.n()
    }

    pub fn field(&self) -> &FieldSpec {
        self.input.field()
    }

    /// Recomputes everything from the factors; the stored verdict is ignored.
    pub fn verify(&self) -> bool {
        let n = self.input.n();
        self.word.n() == n
            && self.word.field() == self.input.field()
            && self.length == self.word.len()
            && self.bound == nu(n)
            && self.length <= self.bound
            && self.word.product() == self.input
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&CertificateJson::from(self)).expect("serializable")
    }

    /// Parses a certificate; the `verified` flag is taken as written.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: CertificateJson = serde_json::from_str(text)?;
        raw.into_certificate()
    }
}

#[derive(Serialize, Deserialize)]
struct FieldJson {
    p: u32,
    m: u32,
    modulus: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct FactorJson {
    i: usize,
    j: usize,
    t: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct CertificateJson {
    field: FieldJson,
    n: usize,
    input: Vec<Vec<Vec<u32>>>,
    factors: Vec<FactorJson>,
    length: usize,
    bound: usize,
    verified: bool,
    breakdown: Breakdown,
}

impl From<&Certificate> for CertificateJson {
    fn from(c: &Certificate) -> Self {
        let f = c.field();
        CertificateJson {
            field: FieldJson {
                p: f.p(),
                m: f.m(),
                modulus: f.modulus().to_vec(),
            },
            n: c.n(),
            input: c.input.rows().map(|r| r.iter().map(Poly::codes).collect()).collect(),
            factors: c
                .word
                .factors()
                .iter()
                .map(|e| FactorJson {
                    i: e.i + 1,
                    j: e.j + 1,
                    t: e.t.codes(),
                })
                .collect(),
            length: c.length,
            bound: c.bound,
            verified: c.verified,
            breakdown: c.breakdown,
        }
    }
}

impl CertificateJson {
    fn into_certificate(self) -> Result<Certificate> {
        let field = FieldSpec::with_modulus(self.field.p, self.field.m, Some(self.field.modulus))?;
        let n = self.n;
        if self.input.len() != n || n == 0 {
            return Err(Error::Certificate(format!(
                "input has {} rows but n = {n}",
                self.input.len()
            )));
        }
        let input = SqMatrix::from_codes(&field, &self.input)?;
        let mut factors = Vec::with_capacity(self.factors.len());
        for (k, e) in self.factors.into_iter().enumerate() {
            if e.i == 0 || e.j == 0 || e.i > n || e.j > n || e.i == e.j {
                return Err(Error::Certificate(format!(
                    "factor {} has invalid indices ({}, {})",
                    k + 1,
                    e.i,
                    e.j
                )));
            }
            let t = Poly::from_codes(&field, &e.t)?;
            if t.is_zero() {
                return Err(Error::Certificate(format!("factor {} is the identity", k + 1)));
            }
            factors.push(ElemMat::new(e.i - 1, e.j - 1, t)?);
        }
        let word = ElemWord::from_factors(&field, n, factors)?;
        Ok(Certificate {
            input,
            word,
            length: self.length,
            bound: self.bound,
            verified: self.verified,
            breakdown: self.breakdown,
        })
    }
}
