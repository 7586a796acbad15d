use crate::solvers::{HotCold, NimTable};
use crate::{BitVec, Error, GameSpec, NimValue, Result};

fn reject_hotspots(game: &GameSpec) -> Result<()> {
    if game.has_hotspots() {
        Err(Error::HotspotsPresent(game.name().to_string()))
    } else {
        Ok(())
    }
}

/// Nim-values by the mex recurrence, `O(limit · |S|)`.
pub fn nim_dp(game: &GameSpec) -> Result<NimTable> {
    reject_hotspots(game)?;
    let moves = game.move_list();
    let limit = game.limit();
    let mut values: Vec<NimValue> = vec![0; limit];
    // seen[v] == p marks v as reachable from p; values never exceed |S|.
    let mut seen = vec![usize::MAX; moves.len() + 2];
    for p in 0..limit {
        for &s in moves.iter().take_while(|&&s| s <= p) {
            seen[values[p - s] as usize] = p;
        }
        let mut m = 0;
        while seen[m] == p {
            m += 1;
        }
        values[p] = m as NimValue;
    }
    Ok(NimTable::new(values))
}

/// Hot/cold partition by the hotspot recurrence: `p` is hot if it is a
/// hotspot or some move from `p` reaches a cold position.
pub fn hotcold_dp(game: &GameSpec) -> HotCold {
    let moves = game.move_list();
    let limit = game.limit();
    let mut cold = BitVec::zeros(0, limit);
    for p in 0..limit {
        if game.hotspots().is_some_and(|h| h.get(p)) {
            continue;
        }
        let hot = moves
            .iter()
            .take_while(|&&s| s <= p)
            .any(|&s| cold.get(p - s));
        if !hot {
            cold.set(p, true);
        }
    }
    HotCold::from_cold(cold)
}

/// Cold positions by sieving: each unmarked position is cold and marks every
/// position one move above it as hot. `O(|C| · |S|)`.
pub fn cold_sieve(game: &GameSpec) -> Result<BitVec> {
    reject_hotspots(game)?;
    let moves = game.move_list();
    let limit = game.limit();
    let mut hot = BitVec::zeros(0, limit);
    let mut cold = BitVec::zeros(0, limit);
    for p in 0..limit {
        if hot.get(p) {
            continue;
        }
        cold.set(p, true);
        for &s in moves.iter().take_while(|&&s| s < limit - p) {
            hot.set(p + s, true);
        }
    }
    Ok(cold)
}
