//! Markov-assumption assembly simulator with temperature-sensitive binding.
//!
//! Growth starts from a seed tile and proceeds one attachment at a time. A
//! tile may attach at a frontier site only if every side facing an occupied
//! neighbor is exactly complementary to that neighbor's facing side (strong
//! no-misbinding). Among all (site, oriented tile) events the site is chosen
//! uniformly and the tile proportionally to its concentration. Each step runs
//! hybridization to quiescence, applies its temperature schedule, and repeats
//! until a full pass changes nothing. Raising the temperature to rank r
//! denatures every bond of class <= r: tiles left with no stronger bond fall
//! off, and fragments no longer connected to the seed through stronger bonds
//! wash away.
//!
//! Runs are bit-reproducible: the RNG is ChaCha8 with a per-step stream key
//! derived from the run seed by a splitmix64 chain, and all iteration is over
//! ordered maps.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::SimError;
use crate::layout::Coord;
use crate::program::AssemblyProgram;
use crate::side::{sides_complementary, Dir, TileType};
use crate::symbol::TempClass;

#[derive(Debug, Clone)]
pub struct AssemblyState {
    pub placed: BTreeMap<Coord, TileType>,
    pub seed: Coord,
    pub current_temp: TempClass,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RemovalCause {
    Cycle(TempClass),
    Cut(TempClass),
}

#[derive(Debug, Clone)]
pub enum TraceEvent {
    Placed { step: usize, coord: Coord, tile: TileType, bound: Vec<Dir> },
    Removed { step: usize, coord: Coord, tile: TileType, cause: RemovalCause },
}

#[derive(Debug, Clone, Default)]
pub struct Trace(pub Vec<TraceEvent>);

#[derive(Debug, Clone)]
pub struct StallInfo {
    pub step: usize,
    pub missing: Vec<Coord>,
}

#[derive(Debug, Clone)]
pub struct RunResult {
    pub state: AssemblyState,
    pub trace: Trace,
    pub stalled: Option<StallInfo>,
}

/// A tile in a concrete orientation (rotation already applied).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct AttachmentEvent {
    pub coord: Coord,
    pub tile: TileType,
    pub bound: Vec<Dir>,
}

impl AssemblyState {
    pub fn new(seed: Coord, tile: TileType) -> AssemblyState {
        let mut placed = BTreeMap::new();
        placed.insert(seed, tile);
        AssemblyState { placed, seed, current_temp: 0 }
    }

    pub fn len(&self) -> usize {
        self.placed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.placed.is_empty()
    }

    /// Bond class between an occupied cell and its occupied neighbor, if both
    /// are present.
    fn bond_class(&self, c: Coord, d: Dir) -> Option<TempClass> {
        let (dx, dy) = d.offset();
        let n = (c.0 + dx, c.1 + dy);
        let a = self.placed.get(&c)?;
        self.placed.get(&n)?;
        Some(a.side(d).temp_class())
    }

    /// Every pair of adjacent placed tiles must face each other with exactly
    /// complementary side labels.
    pub fn check_adjacency(&self) -> Result<(), SimError> {
        for (&(x, y), t) in &self.placed {
            for d in [Dir::N, Dir::E] {
                let (dx, dy) = d.offset();
                if let Some(u) = self.placed.get(&(x + dx, y + dy)) {
                    let ok = sides_complementary(t.side(d), u.side(d.opposite()))
                        .unwrap_or(false);
                    if !ok {
                        return Err(SimError::InconsistentPlacement { x, y });
                    }
                }
            }
        }
        Ok(())
    }
}

/// Empty lattice sites with at least one placed 4-neighbor.
pub fn frontier(state: &AssemblyState) -> Result<BTreeSet<Coord>, SimError> {
    if state.placed.is_empty() {
        return Err(SimError::EmptyState);
    }
    let mut out = BTreeSet::new();
    for &(x, y) in state.placed.keys() {
        for d in Dir::ALL {
            let (dx, dy) = d.offset();
            let c = (x + dx, y + dy);
            if !state.placed.contains_key(&c) {
                out.insert(c);
            }
        }
    }
    Ok(out)
}

/// All full-match attachment events at `coord` for the given tile pool.
/// Rotated placements are considered; duplicate orientations collapse.
pub fn attachment_candidates(
    state: &AssemblyState,
    pool: &[TileType],
    coord: Coord,
) -> Vec<AttachmentEvent> {
    let mut out: Vec<AttachmentEvent> = Vec::new();
    let mut seen: BTreeSet<[crate::side::SideLabel; 4]> = BTreeSet::new();
    let occupied: Vec<(Dir, &TileType)> = Dir::ALL
        .iter()
        .filter_map(|&d| {
            let (dx, dy) = d.offset();
            state.placed.get(&(coord.0 + dx, coord.1 + dy)).map(|t| (d, t))
        })
        .collect();
    if occupied.is_empty() {
        return out;
    }
    for tile in pool {
        for rot in 0..4 {
            let mut sides = tile.sides.clone();
            sides.rotate_left(rot);
            let oriented = TileType { sides, concentration: tile.concentration };
            let ok = occupied.iter().all(|(d, nb)| {
                sides_complementary(oriented.side(*d), nb.side(d.opposite())).unwrap_or(false)
            });
            if ok && seen.insert(oriented.sides.clone()) {
                out.push(AttachmentEvent {
                    coord,
                    tile: oriented,
                    bound: occupied.iter().map(|(d, _)| *d).collect(),
                });
            }
        }
    }
    out
}

fn place(state: &mut AssemblyState, ev: &AttachmentEvent) -> Result<(), SimError> {
    debug_assert!(!state.placed.contains_key(&ev.coord));
    state.placed.insert(ev.coord, ev.tile.clone());
    #[cfg(debug_assertions)]
    state.check_adjacency()?;
    Ok(())
}

/// Hybridize to quiescence: place events while any frontier site admits one.
/// Returns the number of placements.
fn hybridize(
    state: &mut AssemblyState,
    pool: &[TileType],
    rng: &mut ChaCha8Rng,
    trace: &mut Trace,
    step: usize,
) -> Result<usize, SimError> {
    // Candidate cache per frontier site, updated around each placement.
    let mut cands: BTreeMap<Coord, Vec<AttachmentEvent>> = BTreeMap::new();
    for c in frontier(state)? {
        let evs = attachment_candidates(state, pool, c);
        if !evs.is_empty() {
            cands.insert(c, evs);
        }
    }
    let mut placed_count = 0usize;
    let cap = 64 * (state.placed.len() + pool.len() + 64) * 64;
    while !cands.is_empty() {
        if placed_count > cap {
            return Err(SimError::NoQuiescence { step });
        }
        let site_idx = rng.gen_range(0..cands.len());
        let site = *cands.keys().nth(site_idx).unwrap();
        let evs = &cands[&site];
        // Concentration-weighted tile choice (exact integer weights).
        let idx = if evs.len() == 1 {
            0
        } else {
            let dens: u128 = evs.iter().map(|e| e.tile.concentration.1 as u128).product();
            let weights: Vec<u128> = evs
                .iter()
                .map(|e| e.tile.concentration.0 as u128 * (dens / e.tile.concentration.1 as u128))
                .collect();
            let total: u128 = weights.iter().sum();
            let mut pick = rng.gen_range(0..total);
            let mut idx = 0;
            for (i, w) in weights.iter().enumerate() {
                if pick < *w {
                    idx = i;
                    break;
                }
                pick -= w;
            }
            idx
        };
        let ev = cands.get_mut(&site).unwrap().swap_remove(idx);
        place(state, &ev)?;
        trace.0.push(TraceEvent::Placed {
            step,
            coord: ev.coord,
            tile: ev.tile.clone(),
            bound: ev.bound.clone(),
        });
        placed_count += 1;
        // The placed site stops being a candidate; its neighbors change.
        cands.remove(&site);
        for d in Dir::ALL {
            let (dx, dy) = d.offset();
            let c = (site.0 + dx, site.1 + dy);
            if state.placed.contains_key(&c) {
                continue;
            }
            let evs = attachment_candidates(state, pool, c);
            if evs.is_empty() {
                cands.remove(&c);
            } else {
                cands.insert(c, evs);
            }
        }
    }
    Ok(placed_count)
}

/// Raise the solution temperature to `rank`: iteratively remove non-seed
/// tiles whose every present bond has class <= rank, then wash away any
/// fragment that is no longer connected to the seed through stronger bonds.
/// Returns the number of removals. Monotone and idempotent at fixed rank.
pub fn apply_temperature(
    state: &mut AssemblyState,
    rank: TempClass,
    trace: &mut Trace,
    step: usize,
    cause: RemovalCause,
) -> usize {
    let mut removed = 0usize;
    loop {
        let mut doomed: Vec<Coord> = Vec::new();
        for &c in state.placed.keys() {
            if c == state.seed {
                continue;
            }
            let holds = Dir::ALL
                .iter()
                .filter_map(|&d| state.bond_class(c, d))
                .any(|cls| cls > rank);
            if !holds {
                doomed.push(c);
            }
        }
        if doomed.is_empty() {
            break;
        }
        for c in doomed {
            let t = state.placed.remove(&c).unwrap();
            trace.0.push(TraceEvent::Removed { step, coord: c, tile: t, cause });
            removed += 1;
        }
    }
    // Connectivity through bonds stronger than the current temperature.
    let mut reach: BTreeSet<Coord> = BTreeSet::new();
    let mut stack = vec![state.seed];
    while let Some(c) = stack.pop() {
        if !state.placed.contains_key(&c) || !reach.insert(c) {
            continue;
        }
        for d in Dir::ALL {
            let (dx, dy) = d.offset();
            let nb = (c.0 + dx, c.1 + dy);
            if reach.contains(&nb) {
                continue;
            }
            if let Some(cls) = state.bond_class(c, d) {
                if cls > rank {
                    stack.push(nb);
                }
            }
        }
    }
    let drop: Vec<Coord> =
        state.placed.keys().copied().filter(|c| !reach.contains(c)).collect();
    for c in drop {
        let t = state.placed.remove(&c).unwrap();
        trace.0.push(TraceEvent::Removed { step, coord: c, tile: t, cause });
        removed += 1;
    }
    state.current_temp = rank;
    removed
}

/// The terminal cut: raise the temperature to the cut rank so that all
/// borderline bonds denature, keeping only the component that contains the
/// seed. Idempotent.
pub fn cut(state: &mut AssemblyState, rank: TempClass, trace: &mut Trace, step: usize) -> usize {
    apply_temperature(state, rank, trace, step, RemovalCause::Cut(rank))
}

/// Execute one step against the current solution pool. Alternates
/// hybridization to quiescence with the step's temperature schedule until a
/// whole pass changes nothing.
pub fn run_step(
    state: &mut AssemblyState,
    pool: &[TileType],
    schedule: &[TempClass],
    rng: &mut ChaCha8Rng,
    trace: &mut Trace,
    step: usize,
) -> Result<(), SimError> {
    let mut passes = 0usize;
    let mut prev: Option<BTreeMap<Coord, TileType>> = None;
    loop {
        hybridize(state, pool, rng, trace, step)?;
        for &t in schedule {
            apply_temperature(state, t, trace, step, RemovalCause::Cycle(t));
            state.current_temp = 0;
        }
        // Converged when the post-cycle structure stops changing; transient
        // weak-bound churn during hybridization does not count.
        if prev.as_ref() == Some(&state.placed) {
            break;
        }
        prev = Some(state.placed.clone());
        passes += 1;
        if passes > 8 * (state.placed.len() + 64) {
            return Err(SimError::NoQuiescence { step });
        }
    }
    Ok(())
}

/// Per-step RNG stream: splitmix64 over (seed, step) expanded to a ChaCha8 key.
pub fn step_rng(seed: u64, step: usize) -> ChaCha8Rng {
    fn splitmix(z: &mut u64) -> u64 {
        *z = z.wrapping_add(0x9e3779b97f4a7c15);
        let mut x = *z;
        x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
        x ^ (x >> 31)
    }
    let mut z = seed ^ (step as u64).wrapping_mul(0xa076_1d64_78bd_642f);
    let mut key = [0u8; 32];
    for chunk in key.chunks_mut(8) {
        chunk.copy_from_slice(&splitmix(&mut z).to_le_bytes());
    }
    ChaCha8Rng::from_seed(key)
}

/// Run a whole program: seed, every step in order, then the cut. If a step
/// leaves mandatory sites unfilled the run stops there and reports the stall.
pub fn run_program(program: &AssemblyProgram, seed: u64) -> Result<RunResult, SimError> {
    let mut state = AssemblyState::new(program.seed_coord, program.seed_tile.clone());
    let mut trace = Trace::default();
    let mut pool: Vec<TileType> = Vec::new();
    for (i, step) in program.steps.iter().enumerate() {
        for t in &step.batch {
            if !pool.contains(t) {
                pool.push(t.clone());
            }
        }
        let mut rng = step_rng(seed, i);
        run_step(&mut state, &pool, &step.temp_schedule, &mut rng, &mut trace, i)?;
        let missing: Vec<Coord> =
            step.cells.iter().copied().filter(|c| !state.placed.contains_key(c)).collect();
        if !missing.is_empty() {
            return Ok(RunResult {
                state,
                trace,
                stalled: Some(StallInfo { step: i, missing }),
            });
        }
        if step.wash {
            pool.clear();
        }
    }
    let cut_step = program.steps.len();
    cut(&mut state, program.cut_rank, &mut trace, cut_step);
    state.check_adjacency()?;
    Ok(RunResult { state, trace, stalled: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::side::SideLabel;
    use crate::symbol::{Mark, Symbol};

    fn lbl(a: Symbol, b: Symbol, c: Symbol) -> SideLabel {
        SideLabel::triple(a, b, c)
    }

    fn blank() -> SideLabel {
        lbl(Symbol::mark(Mark::Chi1), Symbol::mark(Mark::Chi2), Symbol::mark(Mark::Chi1))
    }

    #[test]
    fn frontier_of_single_seed() {
        let t = TileType::new(blank(), blank(), blank(), blank());
        let st = AssemblyState::new((0, 0), t);
        let f = frontier(&st).unwrap();
        assert_eq!(
            f.into_iter().collect::<Vec<_>>(),
            vec![(-1, 0), (0, -1), (0, 1), (1, 0)]
        );
    }

    #[test]
    fn frontier_of_block_is_its_boundary_ring() {
        let t = TileType::new(blank(), blank().complement(), blank().complement(), blank());
        // Hand-build a 3x3 block of mutually complementary tiles.
        let mut st = AssemblyState::new((0, 0), t.clone());
        for x in 0..3i64 {
            for y in 0..3i64 {
                st.placed.insert((x, y), t.clone());
            }
        }
        let f = frontier(&st).unwrap();
        assert_eq!(f.len(), 12); // 4n for n=3
    }

    #[test]
    fn weakly_held_tile_denatures() {
        let weak = lbl(Symbol::mark(Mark::Phi1), Symbol::mark(Mark::Phi2), Symbol::mark(Mark::Phi3));
        let strongn = lbl(Symbol::mark(Mark::Beta), Symbol::h(0), Symbol::v(0));
        // Seed with a weak north side; the neighbor above holds only that bond.
        let seed = TileType::new(weak.clone(), blank(), blank(), blank());
        let hanger =
            TileType::new(strongn, blank(), weak.complement(), blank());
        let mut st = AssemblyState::new((0, 0), seed);
        st.placed.insert((0, 1), hanger);
        let mut trace = Trace::default();
        // Below every class: nothing happens.
        assert_eq!(apply_temperature(&mut st, 0, &mut trace, 0, RemovalCause::Cycle(0)), 0);
        // At rank 1 the phi-class bond denatures and the hanger falls off.
        assert_eq!(apply_temperature(&mut st, 1, &mut trace, 0, RemovalCause::Cycle(1)), 1);
        assert_eq!(st.len(), 1);
        // Idempotent.
        assert_eq!(apply_temperature(&mut st, 1, &mut trace, 0, RemovalCause::Cycle(1)), 0);
    }

    #[test]
    fn rng_streams_are_stable() {
        let mut a = step_rng(42, 3);
        let mut b = step_rng(42, 3);
        let mut c = step_rng(42, 4);
        let xa: u64 = a.gen();
        assert_eq!(xa, b.gen::<u64>());
        assert_ne!(xa, c.gen::<u64>());
    }
}
