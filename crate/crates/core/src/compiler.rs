//! Compilation of hollow-box specifications (n, pattern alphabet size) into
//! executable assembly programs.
//!
//! The row-by-row program runs 5n+6 steps (plus the terminal cut):
//!
//! | step            | adds                                            |
//! |-----------------|-------------------------------------------------|
//! | 0               | base strip (random assembly, no cycling)        |
//! | 1 .. 2n-2       | row pair +i / -i of the central column          |
//! | 2n-1, 2n, 2n+1  | ordered final rows -(2n-1), 2n-1, 2n            |
//! | 2n+2 .. 3n+1    | wing columns 1..n of E and F (edges drawn here) |
//! | 3n+2            | turn blocks G,H,I,J + A/D glue columns          |
//! | 3n+3            | relay turns K and O                            |
//! | 3n+4 .. 4n+3    | relay rows L and P                             |
//! | 4n+4            | relay turns M and Q                            |
//! | 4n+5 .. 5n+4    | delivery columns N and R (+ C glue columns)    |
//! | 5n+5            | lock columns                                   |
//!
//! The all-together program keeps the same cell plan but pins every bond with
//! both position counters and collapses everything after the strip into one
//! bulk step; its plain and cycling variants differ only in the temperature
//! schedule of that step.

use std::collections::BTreeMap;

use crate::error::CompileError;
use crate::layout::{BondTemplate, Coord, FlowRef, Layout, RegionId, Slot};
use crate::program::{AlgorithmKind, AssemblyProgram, PlannedCell, Step};
use crate::side::{SideLabel, TileType};
use crate::symbol::{Mark, Symbol, SymbolKind};

/// Which step of the row-by-row program introduces the cell at (x, y).
pub fn step_of(layout: &Layout, x: i64, y: i64) -> Option<usize> {
    let n = layout.n;
    let region = layout.region_of(x, y)?;
    let turn = (3 * n + 2) as usize;
    let deliver = (3 * n + 3) as usize;
    let glue_ad = (3 * n + 4) as usize;
    let locks = (5 * n + 5) as usize;
    use RegionId::*;
    let s = match region {
        BaseStrip => 0,
        B => (-y) as usize,
        A | C | D => {
            if x == 0 || x == n - 1 {
                // Glue columns: A/D sides after their delivery columns exist;
                // C sides with the last N/R delivery column.
                if (1..=n).contains(&y) || (-(2 * n - 1)..=-n).contains(&y) {
                    glue_ad
                } else {
                    (5 * n + 4) as usize
                }
            } else if x == 1 || x == n - 2 {
                locks
            } else {
                // Copy-body rows.
                match y {
                    y if y == 2 * n => (2 * n + 1) as usize,
                    y if y == 2 * n - 1 => (2 * n) as usize,
                    y if y == -(2 * n - 1) => (2 * n - 1) as usize,
                    y => y.unsigned_abs() as usize,
                }
            }
        }
        E => (2 * n + 1 + (-x)) as usize,
        F => (2 * n + 1 + (x - (n - 1))) as usize,
        // Turn blocks fill first; their delivery columns (facing the glue
        // columns) follow one step later so that no batch ever contains a
        // tile carrying a fold-label side while the matching fold edge or
        // delivery face is exposed.
        G | I => {
            if x == -1 {
                deliver
            } else {
                turn
            }
        }
        H | J => {
            if x == n {
                deliver
            } else {
                turn
            }
        }
        K | O => deliver,
        L | P => (3 * n + 4 + y) as usize,
        M | Q => (4 * n + 5) as usize,
        N => (4 * n + 4 + (x + n + 1)) as usize,
        R => (4 * n + 4 + (2 * n - x)) as usize,
    };
    Some(s)
}

fn has_delta(t: &BondTemplate) -> bool {
    t.slots.iter().any(|s| {
        matches!(
            s,
            Slot::Sym(Symbol {
                kind: SymbolKind::Mark(
                    Mark::DeltaAE
                        | Mark::DeltaAF
                        | Mark::DeltaDE
                        | Mark::DeltaDF
                        | Mark::DeltaCE
                        | Mark::DeltaCF
                ),
                ..
            })
        )
    })
}

fn mentions_h(t: &BondTemplate) -> bool {
    t.slots.iter().any(|s| matches!(s, Slot::Sym(Symbol { kind: SymbolKind::H(_), .. })))
}

fn mentions_v(t: &BondTemplate) -> bool {
    t.slots.iter().any(|s| matches!(s, Slot::Sym(Symbol { kind: SymbolKind::V(_), .. })))
}

/// Pin a bond with both position counters for the all-together tile set.
/// Fold/delivery labels (delta-marked) and already fully pinned bonds are
/// kept; everything else becomes (content, H, V) for vertical bonds and
/// (content, V, H) for horizontal ones, with the content slot preserving the
/// bond's pattern component or weak/strong class. The opposite counter order
/// on the two axes keeps rotated placements from binding perpendicular bonds.
fn pin(layout: &Layout, t: BondTemplate, x: i64, y: i64, vertical: bool) -> BondTemplate {
    if has_delta(&t) || (mentions_h(&t) && mentions_v(&t)) {
        return t;
    }
    let content = t
        .slots
        .iter()
        .copied()
        .find(|s| matches!(s, Slot::Flow(_)))
        .unwrap_or(t.slots[0]);
    let n = layout.n;
    let vy = if y == -2 * n { 2 * n } else { y };
    let hx = if x >= 2 * n { -(x - 2 * n) - (n + 1) } else { x };
    let (a, b) = if vertical {
        (Slot::Sym(Symbol::h(hx)), Slot::Sym(Symbol::v(vy)))
    } else {
        (Slot::Sym(Symbol::v(vy)), Slot::Sym(Symbol::h(hx)))
    };
    BondTemplate { slots: [content, a, b], barred: t.barred }
}

/// All admissible tiles for one cell of the committed layout (test support).
pub fn cell_tiles_for(layout: &Layout, x: i64, y: i64, p: u32) -> Vec<TileType> {
    materialize_cell(layout, x, y, p, false).tiles
}

pub struct CellTiles {
    pub coord: Coord,
    pub flow: Option<FlowRef>,
    /// One tile per pattern choice (always exactly one for structural cells).
    pub tiles: Vec<TileType>,
    /// Reference tile: every pattern draw fixed to pi1.
    pub reference: TileType,
}

fn materialize_cell(
    layout: &Layout,
    x: i64,
    y: i64,
    p: u32,
    pinned: bool,
) -> CellTiles {
    let n = layout.n;
    let raw = layout.cell_sides(x, y).expect("cell exists");
    let sides: Vec<BondTemplate> = if pinned {
        // North bond lives at (x, y); east at (x+1, y); south at (x, y-1);
        // west at (x, y). Pin each with its own bond coordinates.
        vec![
            pin(layout, layout.vbond(x, y).unwrap(), x, y, true),
            pin(layout, layout.hbond(x + 1, y).unwrap(), x + 1, y, false).barred(),
            pin(layout, layout.vbond(x, y - 1).unwrap(), x, y - 1, true).barred(),
            pin(layout, layout.hbond(x, y).unwrap(), x, y, false),
        ]
    } else {
        raw.to_vec()
    };
    let mut flow = None;
    for t in &sides {
        if let Some(f) = t.flow() {
            if !layout.flow_is_corner(f) {
                flow = Some(f);
            }
        }
    }
    let build = |k: u32| -> TileType {
        let draw = |_f: FlowRef| k;
        let m: Vec<SideLabel> = sides.iter().map(|t| layout.materialize(t, &draw)).collect();
        TileType::new(m[0].clone(), m[1].clone(), m[2].clone(), m[3].clone())
    };
    let tiles: Vec<TileType> =
        if flow.is_some() { (1..=p).map(build).collect() } else { vec![build(1)] };
    let _ = n;
    CellTiles { coord: (x, y), flow, tiles, reference: build(1) }
}

/// Dependency-valid canonical ordering of the plan: repeatedly place the
/// lexicographically least (step, y, x) cell that touches an already placed
/// cell (the seed starts placed).
fn canonical_order(cells: &BTreeMap<Coord, (usize, TileType)>, seed: Coord) -> Vec<PlannedCell> {
    let mut placed: std::collections::BTreeSet<Coord> = [seed].into();
    let mut remaining: Vec<(usize, i64, i64)> =
        cells.iter().filter(|(c, _)| **c != seed).map(|(&(x, y), &(s, _))| (s, y, x)).collect();
    remaining.sort();
    let mut out = vec![PlannedCell {
        coord: seed,
        step: cells[&seed].0,
        tile: cells[&seed].1.clone(),
    }];
    while !remaining.is_empty() {
        let pos = remaining
            .iter()
            .position(|&(_, y, x)| {
                [(x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)]
                    .iter()
                    .any(|c| placed.contains(c))
            })
            .expect("plan is edge-connected");
        let (s, y, x) = remaining.remove(pos);
        placed.insert((x, y));
        out.push(PlannedCell { coord: (x, y), step: s, tile: cells[&(x, y)].1.clone() });
    }
    out
}

fn check_params(n: i64, p: u32) -> Result<Layout, CompileError> {
    if p < 2 {
        return Err(CompileError::AlphabetTooSmall(p as usize));
    }
    Layout::new(n)
}

fn all_cells(layout: &Layout) -> Vec<Coord> {
    let n = layout.n;
    let mut v = Vec::new();
    for y in -(2 * n - 1)..=2 * n {
        for x in -2 * n..3 * n {
            if layout.cell_exists(x, y) {
                v.push((x, y));
            }
        }
    }
    v
}

pub fn compile_row_by_row(n: i64, p: u32) -> Result<AssemblyProgram, CompileError> {
    let layout = check_params(n, p)?;
    let total_steps = (5 * n + 6) as usize;
    let mut steps: Vec<Step> = (0..total_steps)
        .map(|i| Step {
            label: row_by_row_step_label(n, i),
            batch: Vec::new(),
            temp_schedule: if i == 0 { vec![] } else { vec![1] },
            wash: true,
            cells: Vec::new(),
        })
        .collect();
    let mut plan_cells: BTreeMap<Coord, (usize, TileType)> = BTreeMap::new();
    let mut batch_seen: Vec<std::collections::BTreeSet<TileType>> =
        vec![Default::default(); total_steps];
    for (x, y) in all_cells(&layout) {
        let s = step_of(&layout, x, y).unwrap();
        let ct = materialize_cell(&layout, x, y, p, false);
        steps[s].cells.push((x, y));
        for t in ct.tiles {
            if batch_seen[s].insert(t.canonical_rotation()) {
                steps[s].batch.push(t);
            }
        }
        plan_cells.insert((x, y), (s, ct.reference));
    }
    let seed_coord = (0, 0);
    let seed_tile = plan_cells[&seed_coord].1.clone();
    let plan = canonical_order(&plan_cells, seed_coord);
    Ok(AssemblyProgram {
        algorithm: AlgorithmKind::RowByRow,
        n,
        p,
        seed_coord,
        seed_tile,
        steps,
        cut_rank: 2,
        plan,
    })
}

fn row_by_row_step_label(n: i64, i: usize) -> String {
    let i = i as i64;
    if i == 0 {
        "base strip".into()
    } else if i <= 2 * n - 2 {
        format!("rows +{} / -{}", i, i)
    } else if i == 2 * n - 1 {
        format!("row {}", -(2 * n - 1))
    } else if i == 2 * n {
        format!("row {}", 2 * n - 1)
    } else if i == 2 * n + 1 {
        format!("row {}", 2 * n)
    } else if i <= 3 * n + 1 {
        format!("wing columns {}", i - (2 * n + 1))
    } else if i == 3 * n + 2 {
        "turn blocks G,H,I,J".into()
    } else if i == 3 * n + 3 {
        "relay turns K,O + delivery columns".into()
    } else if i == 3 * n + 4 {
        "A/D glue columns".into()
    } else if i <= 4 * n + 4 {
        format!("relay rows L,P at {}", i - (3 * n + 4))
    } else if i == 4 * n + 5 {
        "relay turns M,Q + first N,R column".into()
    } else if i <= 5 * n + 4 {
        format!("delivery columns N,R #{}", i - (4 * n + 4))
    } else {
        "lock columns".into()
    }
}

pub fn compile_all_together(
    n: i64,
    p: u32,
    cycling: bool,
) -> Result<AssemblyProgram, CompileError> {
    let layout = check_params(n, p)?;
    let mut strip = Step {
        label: "base strip (assembled separately)".into(),
        batch: Vec::new(),
        temp_schedule: vec![],
        wash: true,
        cells: Vec::new(),
    };
    let mut bulk = Step {
        label: "all tiles at once".into(),
        batch: Vec::new(),
        temp_schedule: if cycling { vec![1] } else { vec![] },
        wash: false,
        cells: Vec::new(),
    };
    let mut plan_cells: BTreeMap<Coord, (usize, TileType)> = BTreeMap::new();
    let mut rbr_step: BTreeMap<Coord, usize> = BTreeMap::new();
    let mut seen0: std::collections::BTreeSet<TileType> = Default::default();
    let mut seen1: std::collections::BTreeSet<TileType> = Default::default();
    for (x, y) in all_cells(&layout) {
        let rbr = step_of(&layout, x, y).unwrap();
        rbr_step.insert((x, y), rbr);
        let ct = materialize_cell(&layout, x, y, p, true);
        let (step_idx, step, seen) =
            if rbr == 0 { (0usize, &mut strip, &mut seen0) } else { (1usize, &mut bulk, &mut seen1) };
        step.cells.push((x, y));
        for t in ct.tiles {
            if seen.insert(t.canonical_rotation()) {
                step.batch.push(t);
            }
        }
        plan_cells.insert((x, y), (step_idx, ct.reference));
    }
    let seed_coord = (0, 0);
    let seed_tile = plan_cells[&seed_coord].1.clone();
    // Canonical order follows the row-by-row construction order (this is the
    // reference fill order used by the analyzer).
    let ordered: BTreeMap<Coord, (usize, TileType)> = plan_cells
        .iter()
        .map(|(&c, (s, t))| {
            let _ = s;
            (c, (rbr_step[&c], t.clone()))
        })
        .collect();
    let mut plan = canonical_order(&ordered, seed_coord);
    for pc in &mut plan {
        pc.step = if pc.step == 0 { 0 } else { 1 };
    }
    Ok(AssemblyProgram {
        algorithm: if cycling {
            AlgorithmKind::AllTogetherCycling
        } else {
            AlgorithmKind::AllTogetherPlain
        },
        n,
        p,
        seed_coord,
        seed_tile,
        steps: vec![strip, bulk],
        cut_rank: 2,
        plan,
    })
}

pub fn compile(algorithm: AlgorithmKind, n: i64, p: u32) -> Result<AssemblyProgram, CompileError> {
    match algorithm {
        AlgorithmKind::RowByRow => compile_row_by_row(n, p),
        AlgorithmKind::AllTogetherPlain => compile_all_together(n, p, false),
        AlgorithmKind::AllTogetherCycling => compile_all_together(n, p, true),
    }
}

/// The base-strip tile set alone (the paper's random-assembly seed structure):
/// two end tiles and |Pi| variants for each of the n-2 pattern positions.
pub fn base_strip_tiles(n: i64, p: u32) -> Result<Vec<TileType>, CompileError> {
    let layout = check_params(n, p)?;
    let mut out = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for x in 0..n {
        for t in materialize_cell(&layout, x, 0, p, false).tiles {
            if seen.insert(t.canonical_rotation()) {
                out.push(t);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn step_count_is_5n_plus_6() {
        for n in [4i64, 6, 8, 16] {
            let prog = compile_row_by_row(n, 2).unwrap();
            assert_eq!(prog.steps.len() as i64, 5 * n + 6, "n={}", n);
        }
    }

    #[test]
    fn every_cell_is_scheduled_exactly_once() {
        let prog = compile_row_by_row(6, 2).unwrap();
        let mut seen = std::collections::BTreeSet::new();
        for s in &prog.steps {
            for c in &s.cells {
                assert!(seen.insert(*c), "cell {:?} scheduled twice", c);
            }
        }
        assert_eq!(seen.len(), prog.plan.len());
    }

    #[test]
    fn strip_tile_count_matches_contract() {
        // n=6, |Pi|=2 -> 10 distinct strip tiles; n=4, |Pi|=2 -> 6.
        assert_eq!(base_strip_tiles(6, 2).unwrap().len(), 10);
        assert_eq!(base_strip_tiles(4, 2).unwrap().len(), 6);
        assert_eq!(base_strip_tiles(8, 4).unwrap().len(), 2 + 4 * 6);
    }

    #[test]
    fn no_two_compiled_tiles_are_rotations_of_each_other() {
        let prog = compile_row_by_row(5, 2).unwrap();
        let tiles = prog.distinct_tiles();
        for (i, a) in tiles.iter().enumerate() {
            for b in tiles.iter().skip(i + 1) {
                assert!(!a.same_tile(b), "{} vs {}", a, b);
            }
        }
    }

    #[test]
    fn all_together_is_two_steps() {
        let prog = compile_all_together(4, 2, true).unwrap();
        assert_eq!(prog.steps.len(), 2);
        assert_eq!(prog.temperature_ranks(), vec![0, 1, 2]);
        let plain = compile_all_together(4, 2, false).unwrap();
        assert_eq!(plain.temperature_ranks(), vec![0, 2]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(compile_row_by_row(3, 2).is_err());
        assert!(compile_row_by_row(6, 1).is_err());
    }
}
