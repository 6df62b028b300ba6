use tilefold_core::compiler::compile_row_by_row;
use tilefold_core::sim::*;

fn main() {
    let n = 4;
    let prog = compile_row_by_row(n, 2).unwrap();
    println!("steps={} tiles={}", prog.steps.len(), prog.distinct_tiles().len());
    let mut state = AssemblyState::new(prog.seed_coord, prog.seed_tile.clone());
    let mut trace = Trace::default();
    let mut pool: Vec<tilefold_core::side::TileType> = Vec::new();
    for (i, step) in prog.steps.iter().enumerate() {
        for t in &step.batch { if !pool.contains(t) { pool.push(t.clone()); } }
        let mut rng = step_rng(1, i);
        let before = state.len();
        match run_step(&mut state, &pool, &step.temp_schedule, &mut rng, &mut trace, i) {
            Ok(()) => {}
            Err(e) => { println!("step {i} ERR {e}"); return; }
        }
        let missing: Vec<_> = step.cells.iter().filter(|c| !state.placed.contains_key(c)).collect();
        println!("step {i:2} [{}] cells {} -> {} (missing {})", step.label, before, state.len(), missing.len());
        if !missing.is_empty() { println!("  missing: {:?}", &missing[..missing.len().min(10)]); return; }
        if step.wash { pool.clear(); }
    }
    let removed = cut(&mut state, prog.cut_rank, &mut trace, prog.steps.len());
    println!("cut removed {removed}, final {}", state.len());
}
