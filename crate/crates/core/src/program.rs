//! Assembly programs: ordered step schedules produced by the compilers.

use crate::layout::Coord;
use crate::side::TileType;
use crate::symbol::TempClass;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlgorithmKind {
    RowByRow,
    AllTogetherPlain,
    AllTogetherCycling,
}

impl AlgorithmKind {
    pub fn name(self) -> &'static str {
        match self {
            AlgorithmKind::RowByRow => "row-by-row",
            AlgorithmKind::AllTogetherPlain => "all-together",
            AlgorithmKind::AllTogetherCycling => "all-together-cycling",
        }
    }

    pub fn parse(s: &str) -> Option<AlgorithmKind> {
        match s {
            "row-by-row" => Some(AlgorithmKind::RowByRow),
            "all-together" => Some(AlgorithmKind::AllTogetherPlain),
            "all-together-cycling" => Some(AlgorithmKind::AllTogetherCycling),
            _ => None,
        }
    }
}

/// One laboratory step: a batch of tile types added to solution, a
/// temperature cycle applied while hybridizing, and a wash flag that discards
/// the solution pool afterwards.
#[derive(Debug, Clone)]
pub struct Step {
    pub label: String,
    pub batch: Vec<TileType>,
    pub temp_schedule: Vec<TempClass>,
    pub wash: bool,
    /// Lattice cells this step is expected to fill (stalled-assembly check).
    pub cells: Vec<Coord>,
}

/// A cell of the canonical reference configuration: where it sits, which step
/// introduces it, and the reference tile (all pattern draws fixed to pi1).
#[derive(Debug, Clone)]
pub struct PlannedCell {
    pub coord: Coord,
    pub step: usize,
    pub tile: TileType,
}

#[derive(Debug, Clone)]
pub struct AssemblyProgram {
    pub algorithm: AlgorithmKind,
    pub n: i64,
    pub p: u32,
    pub seed_coord: Coord,
    pub seed_tile: TileType,
    pub steps: Vec<Step>,
    pub cut_rank: TempClass,
    /// Canonical reference configuration in dependency-valid order.
    pub plan: Vec<PlannedCell>,
}

impl AssemblyProgram {
    /// Distinct canonical tile types across all batches (space complexity).
    pub fn distinct_tiles(&self) -> Vec<TileType> {
        let mut set = std::collections::BTreeSet::new();
        for s in &self.steps {
            for t in &s.batch {
                set.insert(t.canonical_rotation());
            }
        }
        set.into_iter().collect()
    }

    /// Distinct solution temperature ranks the program touches: the ambient
    /// assembly temperature, every cycling rank, and the final cut.
    pub fn temperature_ranks(&self) -> Vec<TempClass> {
        let mut set = std::collections::BTreeSet::new();
        set.insert(0);
        for s in &self.steps {
            set.extend(s.temp_schedule.iter().copied());
        }
        set.insert(self.cut_rank);
        set.into_iter().collect()
    }
}
