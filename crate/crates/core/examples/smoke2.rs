use tilefold_core::compiler::compile_row_by_row;
use tilefold_core::sim::*;

fn main() {
    let n = 4i64;
    let prog = compile_row_by_row(n, 2).unwrap();
    let mut state = AssemblyState::new(prog.seed_coord, prog.seed_tile.clone());
    let mut trace = Trace::default();
    let mut pool: Vec<tilefold_core::side::TileType> = Vec::new();
    for (i, step) in prog.steps.iter().enumerate().take(14) {
        for t in &step.batch { if !pool.contains(t) { pool.push(t.clone()); } }
        let mut rng = step_rng(1, i);
        run_step(&mut state, &pool, &step.temp_schedule, &mut rng, &mut trace, i).unwrap();
        if step.wash { pool.clear(); }
    }
    let step = &prog.steps[14];
    let pool: Vec<_> = step.batch.clone();
    let mut rng = step_rng(1, 14);
    for pass in 0..6 {
        let t0 = trace.0.len();
        // one hybridize pass: reuse run_step would loop; emulate single pass
        // by calling the internals: hybridize isn't public, so do it manually.
        loop {
            let f = frontier(&state).unwrap();
            let mut evs = vec![];
            for c in f { for e in attachment_candidates(&state, &pool, c) { evs.push(e); } }
            if evs.is_empty() { break; }
            use rand::Rng;
            let e = evs[rng.gen_range(0..evs.len())].clone();
            state.placed.insert(e.coord, e.tile.clone());
            trace.0.push(TraceEvent::Placed{step:14, coord:e.coord, tile:e.tile.clone(), bound:e.bound.clone()});
        }
        let placed = trace.0.len() - t0;
        let t1 = trace.0.len();
        let removed = apply_temperature(&mut state, 1, &mut trace, 14, RemovalCause::Cycle(1));
        println!("pass {pass}: placed {placed} removed {removed} size {}", state.len());
        if pass == 4 {
            for ev in &trace.0[t1..] {
                if let TraceEvent::Removed{coord, tile, ..} = ev {
                    println!("  removed {:?} {}", coord, tile);
                }
            }
        }
    }
}
