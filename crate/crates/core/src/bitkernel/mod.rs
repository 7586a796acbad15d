//! Packed bit vectors and exact convolution of their indicators.
//!
//! Boolean convolution `c[i] = OR_{j+k=i} (a[j] AND b[k])` is computed by
//! treating bits as the integers 0 and 1, convolving numerically with a
//! number-theoretic transform, and thresholding the counts at zero. Counts
//! are bounded by the shorter input's popcount, well below the transform
//! modulus, so the numeric result is exact.

mod bitvec;
mod ntt;

use std::borrow::Cow;
use std::collections::HashMap;
use std::ops::Range;

pub use bitvec::{BitVec, Ones};

use crate::{Error, Result};

/// Integer-valued vector over `[offset, offset + counts.len())`, the numeric
/// convolution of two bit vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CountVec {
    offset: usize,
    counts: Vec<u32>,
}

impl CountVec {
    pub fn new(offset: usize, counts: Vec<u32>) -> Self {
        CountVec { offset, counts }
    }

    pub fn offset(&self) -> usize {
        self.offset
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Bits set where the count is nonzero.
    pub fn support(&self) -> BitVec {
        BitVec::from_positions(
            self.offset,
            self.counts.len(),
            self.counts
                .iter()
                .enumerate()
                .filter(|(_, &c)| c > 0)
                .map(|(i, _)| self.offset + i),
        )
    }
}

/// Tuning knobs for the exact convolution. Neither changes results.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConvolveConfig {
    /// Largest allowed full output length `a.len + b.len − 1`. Capped at
    /// 2^27, the largest power-of-two root of unity in the transform field.
    pub max_len: usize,
    /// Inputs whose shorter side is below this length use the direct
    /// quadratic method.
    pub naive_below: usize,
}

impl Default for ConvolveConfig {
    fn default() -> Self {
        ConvolveConfig {
            max_len: 1 << ntt::MAX_LOG_LEN,
            naive_below: 64,
        }
    }
}

/// Direct convolution; `O(a.len · b.len)` in the worst case.
pub fn convolve_naive(a: &BitVec, b: &BitVec) -> Result<CountVec> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyInput);
    }
    let base = a.offset() + b.offset();
    Ok(naive_window(a, b, base..base + a.len() + b.len() - 1))
}

/// Exact numeric convolution via the number-theoretic transform, bit-identical
/// to [`convolve_naive`].
pub fn convolve_exact(a: &BitVec, b: &BitVec) -> Result<CountVec> {
    convolve_exact_with(a, b, &ConvolveConfig::default())
}

pub fn convolve_exact_with(a: &BitVec, b: &BitVec, config: &ConvolveConfig) -> Result<CountVec> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyInput);
    }
    let full = a.len() + b.len() - 1;
    let max_len = config.max_len.min(1 << ntt::MAX_LOG_LEN);
    if full > max_len {
        return Err(Error::LengthCeiling {
            len: full,
            max: max_len,
        });
    }
    let base = a.offset() + b.offset();
    convolve_window(a, b, base..base + full, config)
}

/// Boolean convolution: bit `i` is set iff some `j + k = i` has `a[j]` and
/// `b[k]` both set. Offsets add.
pub fn convolve_boolean(a: &BitVec, b: &BitVec) -> Result<BitVec> {
    convolve_boolean_with(a, b, &ConvolveConfig::default())
}

pub fn convolve_boolean_with(a: &BitVec, b: &BitVec, config: &ConvolveConfig) -> Result<BitVec> {
    Ok(convolve_exact_with(a, b, config)?.support())
}

/// Counts of the convolution restricted to the absolute index range
/// `window`. Entries of the window outside the full output are zero.
///
/// Only the requested window is guaranteed exact, which lets the transform
/// length shrink to `max(window end, full length − window start)` rounded to
/// a power of two: everything that wraps around lands outside the window.
/// That transform length must not exceed 2^27; the ceiling in `config` is
/// not consulted here.
pub fn convolve_window(
    a: &BitVec,
    b: &BitVec,
    window: Range<usize>,
    config: &ConvolveConfig,
) -> Result<CountVec> {
    window_with(a, b, window, config, |n| {
        let mut fb = fold(b, n);
        ntt::transform(&mut fb);
        Cow::Owned(fb)
    })
}

/// Shared body of the windowed convolution; `b_hat(n)` supplies the length-`n`
/// transform of `b`.
fn window_with<'t, F>(
    a: &BitVec,
    b: &BitVec,
    window: Range<usize>,
    config: &ConvolveConfig,
    b_hat: F,
) -> Result<CountVec>
where
    F: FnOnce(usize) -> Cow<'t, [u32]>,
{
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyInput);
    }
    let full = a.len() + b.len() - 1;
    if window.start >= window.end {
        return Ok(CountVec::new(window.start, Vec::new()));
    }
    if a.len().min(b.len()) < config.naive_below {
        return Ok(naive_window(a, b, window));
    }

    let base = a.offset() + b.offset();
    let lo = window.start.saturating_sub(base).min(full);
    let hi = window.end.saturating_sub(base).min(full);
    let mut out = vec![0u32; window.end - window.start];
    if lo >= hi {
        return Ok(CountVec::new(window.start, out));
    }
    let n = hi.max(full - lo).next_power_of_two();
    if n > 1 << ntt::MAX_LOG_LEN {
        return Err(Error::LengthCeiling {
            len: n,
            max: 1 << ntt::MAX_LOG_LEN,
        });
    }
    let mut fa = fold(a, n);
    ntt::transform(&mut fa);
    ntt::multiply_inverse(&mut fa, &b_hat(n));
    let dst_start = base + lo - window.start;
    out[dst_start..dst_start + (hi - lo)].copy_from_slice(&fa[lo..hi]);
    Ok(CountVec::new(window.start, out))
}

/// Right-hand operand reused across many windowed convolutions, with its
/// transforms cached by length.
pub(crate) struct PreparedOperand {
    bits: BitVec,
    transforms: HashMap<usize, Vec<u32>>,
}

impl PreparedOperand {
    pub(crate) fn new(bits: BitVec) -> Self {
        PreparedOperand {
            bits,
            transforms: HashMap::new(),
        }
    }

    /// Same result as `convolve_window(a, &self.bits, window, config)`.
    pub(crate) fn convolve_window(
        &mut self,
        a: &BitVec,
        window: Range<usize>,
        config: &ConvolveConfig,
    ) -> Result<CountVec> {
        let bits = &self.bits;
        let transforms = &mut self.transforms;
        window_with(a, bits, window, config, move |n| {
            Cow::Borrowed(
                transforms
                    .entry(n)
                    .or_insert_with(|| {
                        let mut fb = fold(bits, n);
                        ntt::transform(&mut fb);
                        fb
                    })
                    .as_slice(),
            )
        })
    }
}

/// Boolean form of [`convolve_window`].
pub fn convolve_boolean_window(
    a: &BitVec,
    b: &BitVec,
    window: Range<usize>,
    config: &ConvolveConfig,
) -> Result<BitVec> {
    Ok(convolve_window(a, b, window, config)?.support())
}

/// Indicator of `v` reduced cyclically to length `n` (relative indices).
fn fold(v: &BitVec, n: usize) -> Vec<u32> {
    let mut out = vec![0u32; n];
    for i in v.ones() {
        out[i & (n - 1)] += 1;
    }
    out
}

fn naive_window(a: &BitVec, b: &BitVec, window: Range<usize>) -> CountVec {
    let base = a.offset() + b.offset();
    let mut out = vec![0u32; window.end.saturating_sub(window.start)];
    let b_ones: Vec<usize> = b.ones().collect();
    for j in a.ones() {
        let first = base + j;
        if first >= window.end {
            break;
        }
        // b indices k with first + k inside the window
        let from = b_ones.partition_point(|&k| first + k < window.start);
        for &k in &b_ones[from..] {
            let i = first + k;
            if i >= window.end {
                break;
            }
            out[i - window.start] += 1;
        }
    }
    CountVec::new(window.start, out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(s: &str) -> BitVec {
        s.parse().unwrap()
    }

    fn transform_only() -> ConvolveConfig {
        ConvolveConfig {
            naive_below: 0,
            ..ConvolveConfig::default()
        }
    }

    #[test]
    fn naive_small_cases() {
        assert_eq!(
            convolve_naive(&bv("101"), &bv("01")).unwrap().counts(),
            &[0, 1, 0, 1]
        );
        assert_eq!(
            convolve_naive(&bv("000"), &bv("111")).unwrap().counts(),
            &[0; 5]
        );
        assert_eq!(
            convolve_naive(&bv("11"), &bv("11")).unwrap().counts(),
            &[1, 2, 1]
        );
    }

    #[test]
    fn exact_small_cases_through_transform() {
        let cfg = transform_only();
        assert_eq!(
            convolve_exact_with(&bv("101"), &bv("01"), &cfg)
                .unwrap()
                .counts(),
            &[0, 1, 0, 1]
        );
        assert_eq!(
            convolve_exact_with(&bv("11"), &bv("11"), &cfg)
                .unwrap()
                .counts(),
            &[1, 2, 1]
        );
    }

    #[test]
    fn boolean_thresholds_counts() {
        let c = convolve_boolean(&bv("101"), &bv("01")).unwrap();
        assert_eq!(c.to_string(), "0101");
        let z = convolve_boolean(&bv("0000"), &bv("1101")).unwrap();
        assert_eq!(z.count_ones(), 0);
        assert_eq!(z.len(), 7);
    }

    #[test]
    fn empty_inputs_rejected() {
        let empty = BitVec::zeros(0, 0);
        assert_eq!(convolve_naive(&empty, &bv("1")), Err(Error::EmptyInput));
        assert_eq!(convolve_exact(&bv("1"), &empty), Err(Error::EmptyInput));
    }

    #[test]
    fn ceiling_enforced() {
        let cfg = ConvolveConfig {
            max_len: 100,
            naive_below: 0,
        };
        let a = BitVec::zeros(0, 60);
        assert_eq!(
            convolve_exact_with(&a, &a, &cfg),
            Err(Error::LengthCeiling { len: 119, max: 100 })
        );
        assert!(convolve_exact_with(&a, &BitVec::zeros(0, 41), &cfg).is_ok());
    }

    #[test]
    fn offsets_add() {
        let a = BitVec::from_positions(10, 4, [10, 13]);
        let b = BitVec::from_positions(3, 2, [4]);
        let c = convolve_exact_with(&a, &b, &transform_only()).unwrap();
        assert_eq!(c.offset(), 13);
        assert_eq!(c.support().positions().collect::<Vec<_>>(), vec![14, 17]);
    }

    #[test]
    fn prepared_operand_matches_plain_window() {
        let b = BitVec::from_positions(0, 500, (1..23usize).map(|i| i * i));
        let mut prepared = PreparedOperand::new(b.clone());
        let cfg = transform_only();
        for (lo, hi) in [(0, 100), (100, 300), (37, 211), (0, 100), (250, 500)] {
            let a = BitVec::from_positions(lo, hi - lo, (lo..hi).filter(|p| p % 7 < 3));
            let window = (lo + hi) / 2..hi;
            assert_eq!(
                prepared.convolve_window(&a, window.clone(), &cfg).unwrap(),
                convolve_window(&a, &b, window, &cfg).unwrap()
            );
        }
    }

    #[test]
    fn window_matches_full_output() {
        let a = BitVec::from_positions(7, 300, (7..307).filter(|p| p % 5 < 2));
        let b = BitVec::from_positions(0, 600, (1..25usize).map(|i| i * i));
        let full = convolve_naive(&a, &b).unwrap();
        for window in [157..457, 7..20, 800..1000, 0..7, 900..910] {
            let w = convolve_window(&a, &b, window.clone(), &transform_only()).unwrap();
            assert_eq!(w.offset(), window.start);
            for (i, &c) in w.counts().iter().enumerate() {
                let abs = window.start + i;
                let expected = abs
                    .checked_sub(full.offset())
                    .and_then(|r| full.counts().get(r).copied())
                    .unwrap_or(0);
                assert_eq!(c, expected, "index {abs} of window {window:?}");
            }
        }
    }
}
