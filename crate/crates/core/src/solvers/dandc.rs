use std::collections::HashMap;

use crate::bitkernel::{ConvolveConfig, PreparedOperand};
use crate::solvers::{HotCold, NimTable};
use crate::{BitVec, Error, GameSpec, NimValue, Result};

/// Tuning for the divide-and-conquer solver. No setting changes results.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DandcConfig {
    /// Ranges of at most this many positions are finished by direct
    /// evaluation of the recurrence. Values 0 and 1 recurse all the way down
    /// to single positions.
    pub leaf_size: usize,
    pub convolve: ConvolveConfig,
}

impl Default for DandcConfig {
    fn default() -> Self {
        DandcConfig {
            leaf_size: 256,
            convolve: ConvolveConfig::default(),
        }
    }
}

/// Hot/cold partition by divide and conquer, `O(n log² n)`.
///
/// For a range `[x, y)` split at `m = ⌊(x + y) / 2⌋`: solve `[x, m)`, then
/// convolve its cold positions with the moves shorter than `y − x` to find
/// every position of `[m, y)` reachable from a lower cold position, add
/// those as hotspots, and solve `[m, y)`. Identical to [`super::hotcold_dp`].
///
/// Fails only if a transform would exceed the configured length ceiling.
pub fn hotcold_dandc(game: &GameSpec) -> Result<HotCold> {
    hotcold_dandc_with(game, &DandcConfig::default())
}

pub fn hotcold_dandc_with(game: &GameSpec, config: &DandcConfig) -> Result<HotCold> {
    let cold = solve_cold(game.moves(), game.hotspots(), game.limit(), config)?;
    Ok(HotCold::from_cold(cold))
}

/// Nim-values one layer at a time: the heaps of value `t` are the cold
/// positions of the game whose hotspots are all heaps of value below `t`.
/// Each layer is solved by [`hotcold_dandc`]; total `O(m · n log² n)` for
/// maximum nim-value `m`.
pub fn nim_layered(game: &GameSpec) -> Result<NimTable> {
    nim_layered_with(game, &DandcConfig::default())
}

pub fn nim_layered_with(game: &GameSpec, config: &DandcConfig) -> Result<NimTable> {
    if game.has_hotspots() {
        return Err(Error::HotspotsPresent(game.name().to_string()));
    }
    let limit = game.limit();
    let mut values: Vec<NimValue> = vec![0; limit];
    let mut assigned = BitVec::zeros(0, limit);
    let mut remaining = limit;
    let mut layer: NimValue = 0;
    while remaining > 0 {
        // Each layer assigns at least position min(unassigned), so `limit`
        // layers always suffice.
        assert!(
            (layer as usize) < limit,
            "layered evaluation failed to cover all positions"
        );
        let cold = solve_cold(game.moves(), Some(&assigned), limit, config)?;
        for p in cold.positions() {
            values[p] = layer;
            assigned.set(p, true);
            remaining -= 1;
        }
        layer += 1;
    }
    Ok(NimTable::new(values))
}

fn solve_cold(
    moves: &BitVec,
    hotspots: Option<&BitVec>,
    limit: usize,
    config: &DandcConfig,
) -> Result<BitVec> {
    let mut marks = BitVec::zeros(0, limit);
    if let Some(h) = hotspots {
        marks.or_assign_aligned(h);
    }
    let mut solver = Solver {
        moves,
        move_list: moves.ones().collect(),
        prefixes: HashMap::new(),
        marks,
        cold: BitVec::zeros(0, limit),
        config,
    };
    solver.solve(0, limit)?;
    Ok(solver.cold)
}

struct Solver<'a> {
    moves: &'a BitVec,
    move_list: Vec<usize>,
    // Move indicators truncated to each range length seen, with cached
    // transforms. Equal-length ranges share one entry.
    prefixes: HashMap<usize, PreparedOperand>,
    // Positions known hot: hotspots, plus positions reached from a cold
    // position in an already-solved lower range.
    marks: BitVec,
    cold: BitVec,
    config: &'a DandcConfig,
}

impl Solver<'_> {
    fn solve(&mut self, x: usize, y: usize) -> Result<()> {
        if y - x <= self.config.leaf_size.max(1) {
            self.leaf(x, y);
            return Ok(());
        }
        let m = x + (y - x) / 2;
        self.solve(x, m)?;
        let lower_cold = self.cold.slice(x, m);
        let span = (y - x).min(self.moves.len());
        let moves = self.moves;
        let steps = self
            .prefixes
            .entry(span)
            .or_insert_with(|| PreparedOperand::new(moves.slice(0, span)));
        let reached = steps
            .convolve_window(&lower_cold, m..y, &self.config.convolve)?
            .support();
        self.marks.or_assign_aligned(&reached);
        self.solve(m, y)
    }

    /// Direct recurrence on `[x, y)`. Moves landing below `x` are already
    /// reflected in `marks`.
    fn leaf(&mut self, x: usize, y: usize) {
        for p in x..y {
            if self.marks.get(p) {
                continue;
            }
            let hot = self
                .move_list
                .iter()
                .take_while(|&&s| s <= p - x)
                .any(|&s| self.cold.get(p - s));
            if !hot {
                self.cold.set(p, true);
            }
        }
    }
}
