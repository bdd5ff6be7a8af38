//! Multiplication kernels on coefficient slices.

use crate::gf::{FieldElement, FieldSpec};

/// Below this length the quadratic kernel wins.
const KARATSUBA_THRESHOLD: usize = 32;

pub(crate) fn add_into(field: &FieldSpec, acc: &mut [FieldElement], src: &[FieldElement]) {
    for (a, &s) in acc.iter_mut().zip(src) {
        *a = field.add(*a, s);
    }
}

fn sub_into(field: &FieldSpec, acc: &mut [FieldElement], src: &[FieldElement]) {
    for (a, &s) in acc.iter_mut().zip(src) {
        *a = field.sub(*a, s);
    }
}

fn schoolbook(field: &FieldSpec, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    let len = a.len() + b.len() - 1;
    if field.m() == 1 {
        let p = field.p() as u64;
        if p == 2 {
            let mut out = vec![0u32; len];
            for (i, x) in a.iter().enumerate() {
                if x.code() == 0 {
                    continue;
                }
                for (o, y) in out[i..].iter_mut().zip(b) {
                    *o ^= y.code();
                }
            }
            return out.into_iter().map(FieldElement::from_code_unchecked).collect();
        }
        // (p-1)^2 < 2^32: folding every 1024 rows keeps the u64 sums in range.
        let mut acc = vec![0u64; len];
        for (i, x) in a.iter().enumerate() {
            let x = x.code() as u64;
            if x == 0 {
                continue;
            }
            for (o, y) in acc[i..].iter_mut().zip(b) {
                *o += x * y.code() as u64;
            }
            if i % 1024 == 1023 {
                for o in acc.iter_mut() {
                    *o %= p;
                }
            }
        }
        return acc
            .into_iter()
            .map(|v| FieldElement::from_code_unchecked((v % p) as u32))
            .collect();
    }
    let mut out = vec![FieldElement::ZERO; len];
    for (i, &x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (o, &y) in out[i..].iter_mut().zip(b) {
            *o = field.add(*o, field.mul(x, y));
        }
    }
    out
}

fn karatsuba(field: &FieldSpec, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    debug_assert!(!a.is_empty() && !b.is_empty());
    if a.len().min(b.len()) <= KARATSUBA_THRESHOLD {
        return schoolbook(field, a, b);
    }
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    if long.len() > 2 * short.len() {
        // Unbalanced: slice the long operand into chunks of the short length.
        let mut out = vec![FieldElement::ZERO; a.len() + b.len() - 1];
        for (k, chunk) in long.chunks(short.len()).enumerate() {
            let part = karatsuba(field, chunk, short);
            let off = k * short.len();
            add_into(field, &mut out[off..off + part.len()], &part);
        }
        return out;
    }
    let half = long.len().div_ceil(2);
    let (a0, a1) = long.split_at(half);
    let (b0, b1) = if short.len() > half {
        short.split_at(half)
    } else {
        (short, &short[short.len()..])
    };
    let z0 = karatsuba(field, a0, b0);
    let mut out = vec![FieldElement::ZERO; a.len() + b.len() - 1];
    out[..z0.len()].copy_from_slice(&z0);
    if b1.is_empty() {
        let z = karatsuba(field, a1, b0);
        add_into(field, &mut out[half..half + z.len()], &z);
        return out;
    }
    let z2 = karatsuba(field, a1, b1);
    let mut sa = a0.to_vec();
    add_into(field, &mut sa, a1);
    let mut sb = b0.to_vec();
    add_into(field, &mut sb, b1);
    let mut z1 = karatsuba(field, &sa, &sb);
    sub_into(field, &mut z1, &z0);
    sub_into(field, &mut z1, &z2);
    add_into(field, &mut out[half..half + z1.len()], &z1);
    add_into(field, &mut out[2 * half..2 * half + z2.len()], &z2);
    out
}

/// Product of two coefficient vectors (ascending). Result may carry trailing zeros
/// only if the field has zero divisors, which it does not; callers still normalize.
pub(crate) fn mul_slices(
    field: &FieldSpec,
    a: &[FieldElement],
    b: &[FieldElement],
) -> Vec<FieldElement> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if field.m() == 1 {
        let len = a.len() + b.len() - 1;
        if field.p() == 2 {
            let prod = gf2::mul(&gf2::pack(a), &gf2::pack(b));
            return gf2::unpack(&prod, len);
        }
        let codes = |v: &[FieldElement]| v.iter().map(|x| x.code()).collect::<Vec<u32>>();
        let prod = prime::karatsuba(field.p(), &codes(a), &codes(b));
        return prod[..len].iter().map(|&c| FieldElement::from_code_unchecked(c)).collect();
    }
    karatsuba(field, a, b)
}

/// GF(2) polynomials packed 64 coefficients to a word.
pub(crate) mod gf2 {
    use crate::gf::FieldElement;

    const THRESHOLD: usize = 16;

    pub fn pack(a: &[FieldElement]) -> Vec<u64> {
        let mut out = vec![0u64; a.len().div_ceil(64)];
        for (i, x) in a.iter().enumerate() {
            out[i / 64] |= u64::from(x.code() & 1) << (i % 64);
        }
        out
    }

    pub fn unpack(w: &[u64], len: usize) -> Vec<FieldElement> {
        (0..len)
            .map(|i| FieldElement::from_code_unchecked(((w[i / 64] >> (i % 64)) & 1) as u32))
            .collect()
    }

    /// Carry-less product of two words, as (low, high).
    fn clmul(a: u64, b: u64) -> (u64, u64) {
        let mut table = [(0u64, 0u64); 16];
        for k in 1..16usize {
            let (mut lo, mut hi) = (0u64, 0u64);
            for bit in 0..4 {
                if k >> bit & 1 == 1 {
                    lo ^= a << bit;
                    if bit > 0 {
                        hi ^= a >> (64 - bit);
                    }
                }
            }
            table[k] = (lo, hi);
        }
        let (mut lo, mut hi) = (0u64, 0u64);
        for nib in (0..16).rev() {
            // shift the accumulator by 4 bits, then add the next nibble's row
            hi = hi << 4 | lo >> 60;
            lo <<= 4;
            let (tl, th) = table[(b >> (4 * nib) & 15) as usize];
            lo ^= tl;
            hi ^= th;
        }
        (lo, hi)
    }

    fn schoolbook(a: &[u64], b: &[u64], out: &mut [u64]) {
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                let (lo, hi) = clmul(x, y);
                out[i + j] ^= lo;
                out[i + j + 1] ^= hi;
            }
        }
    }

    pub fn degree(w: &[u64]) -> Option<usize> {
        let top = w.iter().rposition(|&x| x != 0)?;
        Some(top * 64 + 63 - w[top].leading_zeros() as usize)
    }

    /// `rem ^= g * X^s`; the shifted `g` must fit in `rem`.
    fn xor_shifted(rem: &mut [u64], g: &[u64], s: usize) {
        let (w, b) = (s / 64, s % 64);
        for (k, &x) in g.iter().enumerate() {
            rem[w + k] ^= x << b;
            if b > 0 && w + k + 1 < rem.len() {
                rem[w + k + 1] ^= x >> (64 - b);
            }
        }
    }

    /// Quotient and remainder; `g` must be nonzero.
    pub fn divmod(a: &[u64], g: &[u64]) -> (Vec<u64>, Vec<u64>) {
        let dg = degree(g).expect("nonzero divisor");
        let g = &g[..=dg / 64];
        let mut rem = a.to_vec();
        let da = match degree(&rem) {
            Some(d) if d >= dg => d,
            _ => return (Vec::new(), rem),
        };
        let mut quot = vec![0u64; (da - dg) / 64 + 1];
        for i in (dg..=da).rev() {
            if rem[i / 64] >> (i % 64) & 1 == 1 {
                let s = i - dg;
                quot[s / 64] |= 1 << (s % 64);
                xor_shifted(&mut rem, g, s);
            }
        }
        (quot, rem)
    }

    pub fn gcd(a: &[u64], b: &[u64]) -> Vec<u64> {
        let (mut a, mut b) = (a.to_vec(), b.to_vec());
        while degree(&b).is_some() {
            let r = divmod(&a, &b).1;
            a = std::mem::replace(&mut b, r);
        }
        a
    }

    fn xor_into(acc: &mut [u64], src: &[u64]) {
        for (a, s) in acc.iter_mut().zip(src) {
            *a ^= s;
        }
    }

    /// Product of length `a.len() + b.len()` words.
    pub fn mul(a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; a.len() + b.len()];
        if a.is_empty() || b.is_empty() {
            return out;
        }
        if a.len().min(b.len()) <= THRESHOLD {
            schoolbook(a, b, &mut out);
            return out;
        }
        let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        if long.len() > 2 * short.len() {
            for (k, chunk) in long.chunks(short.len()).enumerate() {
                let part = mul(chunk, short);
                let off = k * short.len();
                xor_into(&mut out[off..], &part);
            }
            return out;
        }
        let half = long.len().div_ceil(2);
        let (a0, a1) = long.split_at(half);
        let (b0, b1) = short.split_at(half.min(short.len()));
        let z0 = mul(a0, b0);
        let z2 = mul(a1, b1);
        let mut sa = a0.to_vec();
        xor_into(&mut sa, a1);
        let mut sb = b0.to_vec();
        xor_into(&mut sb, b1);
        let mut z1 = mul(&sa, &sb);
        xor_into(&mut z1, &z0);
        xor_into(&mut z1, &z2);
        xor_into(&mut out, &z0);
        xor_into(&mut out[half..], &z1);
        xor_into(&mut out[2 * half..], &z2);
        out
    }
}

/// Prime fields on raw residues.
mod prime {
    const THRESHOLD: usize = 32;

    fn schoolbook(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
        let p = p as u64;
        // (p-1)^2 < 2^32: folding every 1024 rows keeps the u64 sums in range.
        let mut acc = vec![0u64; a.len() + b.len()];
        for (i, &x) in a.iter().enumerate() {
            let x = x as u64;
            if x == 0 {
                continue;
            }
            for (o, &y) in acc[i..].iter_mut().zip(b) {
                *o += x * y as u64;
            }
            if i % 1024 == 1023 {
                for o in acc.iter_mut() {
                    *o %= p;
                }
            }
        }
        acc.into_iter().map(|v| (v % p) as u32).collect()
    }

    fn add_into(p: u32, acc: &mut [u32], src: &[u32]) {
        for (a, &s) in acc.iter_mut().zip(src) {
            let t = *a + s;
            *a = if t >= p { t - p } else { t };
        }
    }

    fn sub_into(p: u32, acc: &mut [u32], src: &[u32]) {
        for (a, &s) in acc.iter_mut().zip(src) {
            *a = if *a >= s { *a - s } else { *a + p - s };
        }
    }

    /// Product of length `a.len() + b.len()`, the last entry zero.
    pub fn karatsuba(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return vec![0; a.len() + b.len()];
        }
        if a.len().min(b.len()) <= THRESHOLD {
            return schoolbook(p, a, b);
        }
        let mut out = vec![0u32; a.len() + b.len()];
        let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        if long.len() > 2 * short.len() {
            for (k, chunk) in long.chunks(short.len()).enumerate() {
                let part = karatsuba(p, chunk, short);
                add_into(p, &mut out[k * short.len()..], &part);
            }
            return out;
        }
        let half = long.len().div_ceil(2);
        let (a0, a1) = long.split_at(half);
        let (b0, b1) = short.split_at(half.min(short.len()));
        let z0 = karatsuba(p, a0, b0);
        let z2 = karatsuba(p, a1, b1);
        let mut sa = a0.to_vec();
        add_into(p, &mut sa, a1);
        let mut sb = b0.to_vec();
        add_into(p, &mut sb, b1);
        let mut z1 = karatsuba(p, &sa, &sb);
        sub_into(p, &mut z1, &z0);
        sub_into(p, &mut z1, &z2);
        add_into(p, &mut out, &z0);
        add_into(p, &mut out[half..], &z1);
        add_into(p, &mut out[2 * half..], &z2);
        out
    }
}
