//! Number-theoretic transform over the prime 15·2^27 + 1.
//!
//! The field has 2-adic order 27, so transforms of any power-of-two length up
//! to 2^27 exist, and every convolution count below 2^27 is recovered
//! exactly from its residue.
//!
//! Twiddles are kept in Montgomery form (scaled by 2^32) while data stays in
//! plain form, so each butterfly product is plain again after reduction.
//! Only the pointwise product picks up a stray 2^-32, which the final
//! scaling undoes.

use std::sync::{Arc, RwLock};

pub(crate) const MODULUS: u32 = 2_013_265_921;
const GENERATOR: u64 = 31;
pub(crate) const MAX_LOG_LEN: u32 = 27;

const P: u64 = MODULUS as u64;
// -P^-1 mod 2^32
const P_NEG_INV: u32 = {
    let mut inv: u32 = 1;
    let mut i = 0;
    while i < 5 {
        inv = inv.wrapping_mul(2u32.wrapping_sub(MODULUS.wrapping_mul(inv)));
        i += 1;
    }
    inv.wrapping_neg()
};

/// `a · b · 2^-32 mod P`, for `a · b < P · 2^32`.
#[inline(always)]
fn mont_mul(a: u32, b: u32) -> u32 {
    let t = a as u64 * b as u64;
    let m = (t as u32).wrapping_mul(P_NEG_INV);
    let u = ((t + m as u64 * P) >> 32) as u32;
    if u >= MODULUS {
        u - MODULUS
    } else {
        u
    }
}

#[inline(always)]
fn add(a: u32, b: u32) -> u32 {
    let s = a + b;
    if s >= MODULUS {
        s - MODULUS
    } else {
        s
    }
}

#[inline(always)]
fn sub(a: u32, b: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        a + MODULUS - b
    }
}

fn pow(mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1u64;
    base %= P;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % P;
        }
        base = base * base % P;
        exp >>= 1;
    }
    acc
}

fn to_mont(x: u64) -> u32 {
    ((x % P) << 32).rem_euclid(P) as u32
}

/// Montgomery-form twiddles: roots of unity of order `2·half` at
/// `[half, 2·half)`, for every `half < len`. The layout does not depend on
/// the transform length, so one table serves all shorter transforms.
struct Twiddles {
    forward: Vec<u32>,
    inverse: Vec<u32>,
}

impl Twiddles {
    fn build(len: usize) -> Self {
        let mut forward = vec![0u32; len.max(2)];
        let mut inverse = vec![0u32; len.max(2)];
        let mut half = 1;
        while half < len {
            let order = (2 * half) as u64;
            let w = pow(GENERATOR, (P - 1) / order);
            let w_inv = pow(w, P - 2);
            let mut cur = 1u64;
            let mut cur_inv = 1u64;
            for k in half..2 * half {
                forward[k] = to_mont(cur);
                inverse[k] = to_mont(cur_inv);
                cur = cur * w % P;
                cur_inv = cur_inv * w_inv % P;
            }
            half *= 2;
        }
        Twiddles { forward, inverse }
    }
}

static TWIDDLES: RwLock<Option<Arc<Twiddles>>> = RwLock::new(None);

fn twiddles(len: usize) -> Arc<Twiddles> {
    if let Some(t) = TWIDDLES.read().unwrap().as_ref() {
        if t.forward.len() >= len {
            return Arc::clone(t);
        }
    }
    let mut guard = TWIDDLES.write().unwrap();
    match guard.as_ref() {
        Some(t) if t.forward.len() >= len => Arc::clone(t),
        _ => {
            let t = Arc::new(Twiddles::build(len));
            *guard = Some(Arc::clone(&t));
            t
        }
    }
}

/// Decimation-in-frequency: natural order in, bit-reversed order out.
fn forward(a: &mut [u32], tw: &[u32]) {
    let n = a.len();
    let mut half = n / 2;
    while half >= 1 {
        let roots = &tw[half..2 * half];
        for block in a.chunks_exact_mut(2 * half) {
            let (lo, hi) = block.split_at_mut(half);
            for ((u, v), &w) in lo.iter_mut().zip(hi.iter_mut()).zip(roots) {
                let x = *u;
                let y = *v;
                *u = add(x, y);
                *v = mont_mul(sub(x, y), w);
            }
        }
        half /= 2;
    }
}

/// Decimation-in-time: bit-reversed order in, natural order out (unscaled).
fn inverse(a: &mut [u32], tw: &[u32]) {
    let n = a.len();
    let mut half = 1;
    while half < n {
        let roots = &tw[half..2 * half];
        for block in a.chunks_exact_mut(2 * half) {
            let (lo, hi) = block.split_at_mut(half);
            for ((u, v), &w) in lo.iter_mut().zip(hi.iter_mut()).zip(roots) {
                let x = *u;
                let y = mont_mul(*v, w);
                *u = add(x, y);
                *v = sub(x, y);
            }
        }
        half *= 2;
    }
}

/// Forward transform in place; output is in bit-reversed order and only
/// meaningful to [`multiply_inverse`].
pub(crate) fn transform(a: &mut [u32]) {
    debug_assert!(a.len().is_power_of_two() && a.len().trailing_zeros() <= MAX_LOG_LEN);
    let tw = twiddles(a.len());
    forward(a, &tw.forward);
}

/// Pointwise product of two transforms followed by the inverse transform;
/// leaves the cyclic convolution in `a`.
pub(crate) fn multiply_inverse(a: &mut [u32], b: &[u32]) {
    let n = a.len();
    debug_assert_eq!(n, b.len());
    for (x, &y) in a.iter_mut().zip(b) {
        *x = mont_mul(*x, y);
    }
    let tw = twiddles(n);
    inverse(a, &tw.inverse);
    // n^-1 · 2^64 mod P: one Montgomery product removes 2^32 here and
    // compensates the 2^-32 left by the pointwise product.
    let n_inv = pow(n as u64, P - 2);
    let r2 = pow(2, 64);
    let scale = (n_inv * r2 % P) as u32;
    for x in a.iter_mut() {
        *x = mont_mul(*x, scale);
    }
}

/// Cyclic convolution of `a` and `b`, both of the same power-of-two length.
/// Result is written into `a`.
#[cfg(test)]
pub(crate) fn cyclic_convolve(a: &mut [u32], b: &mut [u32]) {
    transform(a);
    transform(b);
    multiply_inverse(a, b);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_has_full_two_adic_order() {
        let root = pow(GENERATOR, (P - 1) >> MAX_LOG_LEN);
        assert_eq!(pow(root, 1 << MAX_LOG_LEN), 1);
        assert_ne!(pow(root, 1 << (MAX_LOG_LEN - 1)), 1);
    }

    #[test]
    fn montgomery_product() {
        assert_eq!(MODULUS.wrapping_mul(P_NEG_INV.wrapping_neg()), 1);
        for (a, b) in [
            (0u64, 5u64),
            (1, 1),
            (12345, 67890),
            (P - 1, P - 1),
            (P - 2, 3),
        ] {
            assert_eq!(mont_mul(a as u32, to_mont(b)) as u64, a * b % P);
        }
    }

    #[test]
    fn cyclic_wraps_around() {
        // (1 + x^3) * (x + x^2) mod (x^4 - 1) = x + x^2 + x^4 + x^5 = 1 + 2x + x^2
        let mut a = vec![1, 0, 0, 1];
        let mut b = vec![0, 1, 1, 0];
        cyclic_convolve(&mut a, &mut b);
        assert_eq!(a, vec![1, 2, 1, 0]);
    }

    #[test]
    fn length_one_and_two() {
        let mut a = vec![7];
        let mut b = vec![3];
        cyclic_convolve(&mut a, &mut b);
        assert_eq!(a, vec![21]);
        let mut a = vec![1, 2];
        let mut b = vec![3, 4];
        cyclic_convolve(&mut a, &mut b);
        assert_eq!(a, vec![3 + 8, 4 + 6]);
    }

    #[test]
    fn matches_schoolbook_cyclic() {
        let n = 256;
        let a: Vec<u32> = (0..n).map(|i| (i * 7 + 3) % 11).collect();
        let b: Vec<u32> = (0..n).map(|i| (i * i + 1) % 5).collect();
        let mut expected = vec![0u64; n as usize];
        for i in 0..n as usize {
            for j in 0..n as usize {
                expected[(i + j) % n as usize] += a[i] as u64 * b[j] as u64;
            }
        }
        let (mut x, mut y) = (a.clone(), b.clone());
        cyclic_convolve(&mut x, &mut y);
        assert_eq!(x.iter().map(|&v| v as u64).collect::<Vec<_>>(), expected);
    }
}
