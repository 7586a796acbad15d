//! Position-evaluation algorithms.
//!
//! Every solver works over positions `[0, game.limit())`. The dynamic
//! programming solvers ([`nim_dp`], [`hotcold_dp`]) are the reference
//! implementations; [`cold_sieve`], [`hotcold_dandc`] and [`nim_layered`]
//! must agree with them bit for bit.

mod dandc;
mod dp;

pub use dandc::{hotcold_dandc, hotcold_dandc_with, nim_layered, nim_layered_with, DandcConfig};
pub use dp::{cold_sieve, hotcold_dp, nim_dp};

use std::ops::Range;

use crate::{BitVec, Error, GameSpec, NimValue, Result};

/// Smallest non-negative integer not in `values`.
pub fn mex<I>(values: I) -> NimValue
where
    I: IntoIterator<Item = NimValue>,
{
    let values: Vec<NimValue> = values.into_iter().collect();
    let mut present = vec![false; values.len() + 1];
    for v in values {
        if let Some(slot) = present.get_mut(v as usize) {
            *slot = true;
        }
    }
    present.iter().position(|&p| !p).unwrap_or(present.len()) as NimValue
}

/// Partition of a position range into hot and cold positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HotCold {
    hot: BitVec,
    cold: BitVec,
}

impl HotCold {
    /// Builds the partition from the cold indicator; hot is its complement.
    pub fn from_cold(cold: BitVec) -> Self {
        HotCold {
            hot: cold.complement(),
            cold,
        }
    }

    pub fn range(&self) -> Range<usize> {
        self.cold.offset()..self.cold.end()
    }

    pub fn hot(&self) -> &BitVec {
        &self.hot
    }

    pub fn cold(&self) -> &BitVec {
        &self.cold
    }

    pub fn into_cold(self) -> BitVec {
        self.cold
    }

    /// Cold positions, increasing.
    pub fn cold_positions(&self) -> Vec<usize> {
        self.cold.positions().collect()
    }
}

/// Nim-values of heaps `0..limit`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NimTable {
    values: Vec<NimValue>,
}

impl NimTable {
    pub fn new(values: Vec<NimValue>) -> Self {
        NimTable { values }
    }

    /// Exclusive bound on heap sizes covered.
    pub fn limit(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[NimValue] {
        &self.values
    }

    pub fn get(&self, heap: usize) -> Option<NimValue> {
        self.values.get(heap).copied()
    }

    pub fn max_value(&self) -> NimValue {
        self.values.iter().copied().max().unwrap_or(0)
    }

    /// Indicator of heaps with nim-value zero.
    pub fn zero_set(&self) -> BitVec {
        BitVec::from_positions(
            0,
            self.values.len(),
            self.values
                .iter()
                .enumerate()
                .filter(|(_, &v)| v == 0)
                .map(|(p, _)| p),
        )
    }

    /// Checks the mex rule at every position: no move keeps the value, and
    /// every smaller value is reachable. Returns the first failing position.
    pub fn first_mex_violation(&self, game: &GameSpec) -> Option<usize> {
        let moves = game.move_list();
        let mut reachable = Vec::new();
        for (p, &v) in self.values.iter().enumerate() {
            reachable.clear();
            reachable.resize(v as usize, false);
            for &s in moves.iter().take_while(|&&s| s <= p) {
                let w = self.values[p - s];
                if w == v {
                    return Some(p);
                }
                if w < v {
                    reachable[w as usize] = true;
                }
            }
            if reachable.iter().any(|&r| !r) {
                return Some(p);
            }
        }
        None
    }
}

/// Outcome of a multi-heap position under optimal play.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiHeapVerdict {
    pub heaps: Vec<usize>,
    /// XOR of the heaps' nim-values.
    pub xor_value: NimValue,
    /// Whether the player to move can force a win.
    pub winning: bool,
    /// `(heap index, tokens removed)` that brings the XOR to zero.
    pub winning_move: Option<(usize, usize)>,
}

/// Evaluates a sum of heaps of `game`. When the XOR of nim-values is
/// nonzero, the reported move is the first zeroing move by heap index and
/// then by removal amount.
pub fn multiheap_analyze(
    heaps: &[usize],
    game: &GameSpec,
    table: &NimTable,
) -> Result<MultiHeapVerdict> {
    let mut xor_value = 0;
    for &h in heaps {
        let v = table.get(h).ok_or(Error::HeapOutOfRange {
            heap: h,
            limit: table.limit(),
        })?;
        xor_value ^= v;
    }
    let mut winning_move = None;
    if xor_value != 0 {
        let moves = game.move_list();
        'heaps: for (i, &h) in heaps.iter().enumerate() {
            // Moves may raise a heap's value, so larger targets count too.
            let target = table.values[h] ^ xor_value;
            for &s in moves.iter().take_while(|&&s| s <= h) {
                if table.values[h - s] == target {
                    winning_move = Some((i, s));
                    break 'heaps;
                }
            }
        }
    }
    Ok(MultiHeapVerdict {
        heaps: heaps.to_vec(),
        xor_value,
        winning: xor_value != 0,
        winning_move,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::{explicit_game, squares_game};

    #[test]
    fn mex_examples() {
        assert_eq!(mex([]), 0);
        assert_eq!(mex([0, 1, 2]), 3);
        assert_eq!(mex([1, 3]), 0);
        assert_eq!(mex([2, 0, 0, 1, 5]), 3);
    }

    #[test]
    fn multiheap_examples() {
        let game = squares_game(64).unwrap();
        let table = nim_dp(&game).unwrap();

        let v = multiheap_analyze(&[2], &game, &table).unwrap();
        assert_eq!((v.xor_value, v.winning, v.winning_move), (0, false, None));

        let v = multiheap_analyze(&[], &game, &table).unwrap();
        assert_eq!((v.xor_value, v.winning, v.winning_move), (0, false, None));

        let v = multiheap_analyze(&[4, 5], &game, &table).unwrap();
        assert_eq!(v.xor_value, 2);
        assert!(v.winning);
        assert_eq!(v.winning_move, Some((0, 4)));

        assert_eq!(
            multiheap_analyze(&[64], &game, &table),
            Err(Error::HeapOutOfRange {
                heap: 64,
                limit: 64
            })
        );
    }

    #[test]
    fn multiheap_exhaustive_small() {
        // Every winning verdict's move zeroes the XOR; every losing position
        // has no zeroing move.
        let game = squares_game(40).unwrap();
        let table = nim_dp(&game).unwrap();
        let moves = game.move_list();
        let v = table.values();
        for a in 0..40 {
            for b in 0..40 {
                let heaps = [a, b];
                let verdict = multiheap_analyze(&heaps, &game, &table).unwrap();
                let mut zeroing = Vec::new();
                for (i, &h) in heaps.iter().enumerate() {
                    for &s in moves.iter().filter(|&&s| s <= h) {
                        let mut after = heaps;
                        after[i] -= s;
                        if v[after[0]] ^ v[after[1]] == 0 {
                            zeroing.push((i, s));
                        }
                    }
                }
                assert_eq!(verdict.winning, verdict.xor_value != 0);
                assert_eq!(
                    verdict.winning_move,
                    zeroing.first().copied(),
                    "heaps {heaps:?}"
                );
                assert_eq!(verdict.winning, !zeroing.is_empty());
            }
        }
    }

    #[test]
    fn mex_violation_detected() {
        let game = explicit_game(&[1], 4).unwrap();
        assert_eq!(
            NimTable::new(vec![0, 1, 0, 1]).first_mex_violation(&game),
            None
        );
        assert_eq!(
            NimTable::new(vec![0, 1, 1, 0]).first_mex_violation(&game),
            Some(2)
        );
        assert_eq!(
            NimTable::new(vec![0, 2, 0, 1]).first_mex_violation(&game),
            Some(1)
        );
    }

    #[test]
    fn hotcold_from_cold() {
        let hc = HotCold::from_cold(BitVec::from_positions(0, 5, [0, 2, 4]));
        assert_eq!(hc.range(), 0..5);
        assert_eq!(hc.hot().positions().collect::<Vec<_>>(), vec![1, 3]);
        assert_eq!(hc.cold_positions(), vec![0, 2, 4]);
    }
}
