use std::fmt;
use std::str::FromStr;

const WORD: usize = 64;

/// Packed indicator of a set of non-negative integers over the half-open
/// range `[offset, offset + len)`.
///
/// Bit `i` stands for the integer `offset + i`. Indexing methods take the
/// relative index `i`; [`BitVec::positions`] yields absolute integers.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVec {
    offset: usize,
    len: usize,
    // Bits at index >= len in the last word are always zero.
    words: Vec<u64>,
}

impl BitVec {
    /// All-zero vector over `[offset, offset + len)`.
    pub fn zeros(offset: usize, len: usize) -> Self {
        BitVec {
            offset,
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    /// All-one vector over `[offset, offset + len)`.
    pub fn ones_range(offset: usize, len: usize) -> Self {
        let mut v = BitVec {
            offset,
            len,
            words: vec![!0; len.div_ceil(WORD)],
        };
        v.clear_tail();
        v
    }

    /// Indicator of `positions` (absolute) over `[offset, offset + len)`.
    /// Positions outside the range are ignored.
    pub fn from_positions<I>(offset: usize, len: usize, positions: I) -> Self
    where
        I: IntoIterator<Item = usize>,
    {
        let mut v = Self::zeros(offset, len);
        for p in positions {
            if p >= offset && p - offset < len {
                v.set(p - offset, true);
            }
        }
        v
    }

    pub fn from_bools(offset: usize, bits: &[bool]) -> Self {
        let mut v = Self::zeros(offset, bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    #[inline]
    pub fn offset(&self) -> usize {
        self.offset
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Exclusive absolute end of the covered range.
    #[inline]
    pub fn end(&self) -> usize {
        self.offset + self.len
    }

    /// Same bits, reported over a different starting integer.
    pub fn with_offset(mut self, offset: usize) -> Self {
        self.offset = offset;
        self
    }

    /// Reads bit `i` (relative).
    ///
    /// # Panics
    ///
    /// Panics if `i >= len`.
    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(
            i < self.len,
            "bit index {i} out of range for length {}",
            self.len
        );
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    #[inline]
    pub fn checked_get(&self, i: usize) -> Option<bool> {
        (i < self.len).then(|| self.words[i / WORD] >> (i % WORD) & 1 == 1)
    }

    /// Writes bit `i` (relative).
    ///
    /// # Panics
    ///
    /// Panics if `i >= len`.
    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(
            i < self.len,
            "bit index {i} out of range for length {}",
            self.len
        );
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Number of set bits with relative index below `end`.
    pub fn count_ones_before(&self, end: usize) -> usize {
        let end = end.min(self.len);
        let full = end / WORD;
        let mut total: usize = self.words[..full]
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum();
        if !end.is_multiple_of(WORD) {
            let mask = (1u64 << (end % WORD)) - 1;
            total += (self.words[full] & mask).count_ones() as usize;
        }
        total
    }

    /// Relative indices of set bits, increasing.
    pub fn ones(&self) -> Ones<'_> {
        Ones {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    /// Absolute integers of the represented set, increasing.
    pub fn positions(&self) -> impl Iterator<Item = usize> + '_ {
        let offset = self.offset;
        self.ones().map(move |i| i + offset)
    }

    /// Copy of relative bits `[start, end)`, reported from absolute
    /// `offset + start`.
    ///
    /// # Panics
    ///
    /// Panics if `start > end` or `end > len`.
    pub fn slice(&self, start: usize, end: usize) -> BitVec {
        assert!(
            start <= end && end <= self.len,
            "slice {start}..{end} out of range"
        );
        let len = end - start;
        let mut words = Vec::with_capacity(len.div_ceil(WORD));
        let mut bit = start;
        while bit < end {
            words.push(self.word_at(bit));
            bit += WORD;
        }
        let mut out = BitVec {
            offset: self.offset + start,
            len,
            words,
        };
        out.clear_tail();
        out
    }

    /// Complement within the covered range.
    pub fn complement(&self) -> BitVec {
        let mut out = BitVec {
            offset: self.offset,
            len: self.len,
            words: self.words.iter().map(|w| !w).collect(),
        };
        out.clear_tail();
        out
    }

    /// ORs `other` into `self` over the overlap of their absolute ranges.
    pub fn or_assign_aligned(&mut self, other: &BitVec) {
        let lo = self.offset.max(other.offset);
        let hi = self.end().min(other.end());
        if lo >= hi {
            return;
        }
        if lo == self.offset && lo == other.offset {
            let n = (hi - lo).div_ceil(WORD);
            for (dst, src) in self.words[..n].iter_mut().zip(&other.words) {
                *dst |= *src;
            }
            self.clear_tail();
            return;
        }
        for p in other
            .positions()
            .skip_while(|&p| p < lo)
            .take_while(|&p| p < hi)
        {
            self.set(p - self.offset, true);
        }
    }

    /// 64 bits starting at relative index `bit`; bits past `len` read as 0.
    #[inline]
    pub(crate) fn word_at(&self, bit: usize) -> u64 {
        let w = bit / WORD;
        let s = bit % WORD;
        let lo = self.words.get(w).copied().unwrap_or(0);
        if s == 0 {
            lo
        } else {
            let hi = self.words.get(w + 1).copied().unwrap_or(0);
            (lo >> s) | (hi << (WORD - s))
        }
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

/// Iterator over the relative indices of set bits.
pub struct Ones<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        while self.current == 0 {
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
        let tz = self.current.trailing_zeros() as usize;
        self.current &= self.current - 1;
        Some(self.index * WORD + tz)
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec@{}[", self.offset)?;
        if self.len <= 256 {
            write!(f, "{self}")?;
        } else {
            write!(f, "{} bits, {} set", self.len, self.count_ones())?;
        }
        f.write_str("]")
    }
}

/// Parses a string of `0`/`1` characters, bit 0 first, at offset 0.
impl FromStr for BitVec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(format!("unexpected character {other:?} in bit string")),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(BitVec::from_bools(0, &bits))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let v: BitVec = "01101".parse().unwrap();
        assert_eq!(v.len(), 5);
        assert_eq!(v.count_ones(), 3);
        assert_eq!(v.to_string(), "01101");
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![1, 2, 4]);
        assert!("012".parse::<BitVec>().is_err());
    }

    #[test]
    #[should_panic]
    fn read_past_end_panics() {
        BitVec::zeros(0, 3).get(3);
    }

    #[test]
    fn checked_get_bounds() {
        let v = BitVec::ones_range(10, 70);
        assert_eq!(v.checked_get(69), Some(true));
        assert_eq!(v.checked_get(70), None);
        assert_eq!(v.count_ones(), 70);
    }

    #[test]
    fn slices_across_word_boundaries() {
        let v = BitVec::from_positions(5, 300, (5..305).filter(|p| p % 3 == 0));
        let s = v.slice(61, 200);
        assert_eq!(s.offset(), 66);
        assert_eq!(s.len(), 139);
        let expected: Vec<_> = (66..205).filter(|p| p % 3 == 0).collect();
        assert_eq!(s.positions().collect::<Vec<_>>(), expected);
    }

    #[test]
    fn complement_stays_in_range() {
        let v = BitVec::from_positions(0, 67, [0, 66]);
        let c = v.complement();
        assert_eq!(c.count_ones(), 65);
        assert!(!c.get(0) && !c.get(66));
    }

    #[test]
    fn or_assign_with_shifted_offsets() {
        let mut a = BitVec::zeros(100, 100);
        let b = BitVec::from_positions(150, 100, [150, 199, 200, 249]);
        a.or_assign_aligned(&b);
        assert_eq!(a.positions().collect::<Vec<_>>(), vec![150, 199]);

        let mut c = BitVec::from_positions(0, 130, [1]);
        c.or_assign_aligned(&BitVec::from_positions(0, 130, [129]));
        assert_eq!(c.positions().collect::<Vec<_>>(), vec![1, 129]);
    }

    #[test]
    fn prefix_counts() {
        let v = BitVec::from_positions(0, 200, (0..200).step_by(2));
        assert_eq!(v.count_ones_before(0), 0);
        assert_eq!(v.count_ones_before(1), 1);
        assert_eq!(v.count_ones_before(128), 64);
        assert_eq!(v.count_ones_before(1000), 100);
    }
}
