//! Subtraction sets and game specifications.

use std::fmt;
use std::str::FromStr;

use crate::{BitVec, Error, Result};

/// A nim-value (Grundy value). Bounded by the size of the subtraction set.
pub type NimValue = u32;

/// A single-heap subtraction game over positions `[0, limit)`.
///
/// `moves` marks the subtraction set `S` (bit 0 is never set); `hotspots`
/// optionally marks positions `H` that count as hot regardless of their
/// moves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameSpec {
    name: String,
    limit: usize,
    moves: BitVec,
    hotspots: Option<BitVec>,
}

impl GameSpec {
    /// Game over `[0, limit)` whose moves are `moves`. Values at or beyond
    /// `limit` are dropped.
    pub fn new<I>(name: impl Into<String>, limit: usize, moves: I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        if limit == 0 {
            return Err(Error::ZeroLimit);
        }
        let mut set = BitVec::zeros(0, limit);
        for m in moves {
            if m == 0 {
                return Err(Error::ZeroMove);
            }
            if m < limit {
                set.set(m, true);
            }
        }
        Ok(GameSpec {
            name: name.into(),
            limit,
            moves: set,
            hotspots: None,
        })
    }

    /// Same game with hotspot set `H`. Positions at or beyond `limit` are
    /// ignored.
    pub fn with_hotspots<I>(mut self, hotspots: I) -> Self
    where
        I: IntoIterator<Item = usize>,
    {
        self.hotspots = Some(BitVec::from_positions(0, self.limit, hotspots));
        self
    }

    /// Same game with the hotspot indicator `hotspots`, which is realigned to
    /// `[0, limit)`.
    pub fn with_hotspot_bits(mut self, hotspots: &BitVec) -> Self {
        let mut h = BitVec::zeros(0, self.limit);
        h.or_assign_aligned(hotspots);
        self.hotspots = Some(h);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Exclusive bound on positions.
    pub fn limit(&self) -> usize {
        self.limit
    }

    /// Indicator of the subtraction set over `[0, limit)`.
    pub fn moves(&self) -> &BitVec {
        &self.moves
    }

    /// Subtraction set, increasing.
    pub fn move_list(&self) -> Vec<usize> {
        self.moves.ones().collect()
    }

    pub fn hotspots(&self) -> Option<&BitVec> {
        self.hotspots.as_ref()
    }

    /// True when at least one hotspot is set.
    pub fn has_hotspots(&self) -> bool {
        self.hotspots.as_ref().is_some_and(|h| h.count_ones() > 0)
    }
}

/// Subtract-a-square: the moves are the positive perfect squares.
pub fn squares_game(limit: usize) -> Result<GameSpec> {
    let squares = (1..).map(|i: usize| i * i).take_while(|&s| s < limit);
    GameSpec::new("squares", limit, squares)
}

/// True when `n` written in base 4 uses only the digits 0 and 1.
pub fn is_moser_de_bruijn(mut n: u64) -> bool {
    while n > 0 {
        if n % 4 > 1 {
            return false;
        }
        n /= 4;
    }
    true
}

/// The game whose moves are the positive sums of distinct powers of four.
pub fn moser_de_bruijn_game(limit: usize) -> Result<GameSpec> {
    if limit == 0 {
        return Err(Error::ZeroLimit);
    }
    // The k-th element is k's binary digits read in base 4.
    let moves = (1u64..)
        .map(|k| {
            let mut v = 0u64;
            let mut place = 1u64;
            let mut bits = k;
            while bits > 0 {
                v += (bits & 1) * place;
                place *= 4;
                bits >>= 1;
            }
            v as usize
        })
        .take_while(|&v| v < limit);
    GameSpec::new("moser", limit, moves)
}

/// A game with an explicit list of moves.
pub fn explicit_game(values: &[usize], limit: usize) -> Result<GameSpec> {
    let mut name = String::from("explicit:");
    let mut sorted = values.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    for (i, v) in sorted.iter().enumerate() {
        if i > 0 {
            name.push(',');
        }
        name.push_str(&v.to_string());
    }
    GameSpec::new(name, limit, values.iter().copied())
}

/// Nim-value of heap `n` in the Moser–de Bruijn game: base-4 digits taken
/// mod 2 and read as a binary number.
pub fn moser_nim_formula(mut n: u64) -> NimValue {
    let mut value = 0;
    let mut bit = 0;
    while n > 0 {
        value |= ((n % 4 % 2) as NimValue) << bit;
        n /= 4;
        bit += 1;
    }
    value
}

/// Game family named on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GameSelector {
    Squares,
    Moser,
    Explicit(Vec<usize>),
}

impl GameSelector {
    pub fn build(&self, limit: usize) -> Result<GameSpec> {
        match self {
            GameSelector::Squares => squares_game(limit),
            GameSelector::Moser => moser_de_bruijn_game(limit),
            GameSelector::Explicit(values) => explicit_game(values, limit),
        }
    }
}

impl FromStr for GameSelector {
    type Err = Error;

    /// Accepts `squares`, `moser`, and `explicit:<v1>,<v2>,...` (an empty
    /// list after the colon is allowed).
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "squares" => Ok(GameSelector::Squares),
            "moser" => Ok(GameSelector::Moser),
            _ => {
                let list = s
                    .strip_prefix("explicit:")
                    .ok_or_else(|| Error::InvalidGame(s.to_string()))?;
                let values = list
                    .split(',')
                    .map(str::trim)
                    .filter(|v| !v.is_empty())
                    .map(|v| {
                        v.parse::<usize>()
                            .map_err(|_| Error::InvalidGame(s.to_string()))
                    })
                    .collect::<Result<Vec<_>>>()?;
                if values.contains(&0) {
                    return Err(Error::ZeroMove);
                }
                Ok(GameSelector::Explicit(values))
            }
        }
    }
}

impl fmt::Display for GameSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GameSelector::Squares => f.write_str("squares"),
            GameSelector::Moser => f.write_str("moser"),
            GameSelector::Explicit(values) => {
                f.write_str("explicit:")?;
                for (i, v) in values.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{v}")?;
                }
                Ok(())
            }
        }
    }
}
