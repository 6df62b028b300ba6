use tilefold_core::compiler::compile_row_by_row;
use tilefold_core::sim::*;

fn main() {
    let n = 4i64;
    let prog = compile_row_by_row(n, 2).unwrap();
    let mut state = AssemblyState::new(prog.seed_coord, prog.seed_tile.clone());
    let mut trace = Trace::default();
    let mut pool: Vec<tilefold_core::side::TileType> = Vec::new();
    for (i, step) in prog.steps.iter().enumerate().take(15) {
        for t in &step.batch { if !pool.contains(t) { pool.push(t.clone()); } }
        let mut rng = step_rng(1, i);
        run_step(&mut state, &pool, &step.temp_schedule, &mut rng, &mut trace, i).unwrap();
        if step.wash { pool.clear(); }
    }
    let step = &prog.steps[15];
    let pool: Vec<_> = step.batch.clone();
    let mut rng = step_rng(1, 14);
    // Replicate run_step with site-then-tile selection like the real hybridize.
    use std::collections::BTreeMap;
    use rand::Rng;
    for pass in 0..12 {
        let mut placed = 0usize;
        let mut cands: BTreeMap<(i64,i64), Vec<AttachmentEvent>> = BTreeMap::new();
        for c in frontier(&state).unwrap() {
            let evs = attachment_candidates(&state, &pool, c);
            if !evs.is_empty() { cands.insert(c, evs); }
        }
        while !cands.is_empty() {
            let site_idx = rng.gen_range(0..cands.len());
            let site = *cands.keys().nth(site_idx).unwrap();
            let evs = &cands[&site];
            let idx = if evs.len() == 1 { 0 } else { rng.gen_range(0..evs.len()) };
            let ev = cands.get_mut(&site).unwrap().swap_remove(idx);
            state.placed.insert(ev.coord, ev.tile.clone());
            placed += 1;
            if placed > 2000 { println!("pass {pass}: RUNAWAY at {:?} {}", ev.coord, ev.tile); return; }
            cands.remove(&site);
            for d in tilefold_core::side::Dir::ALL {
                let (dx,dy) = d.offset();
                let c = (site.0+dx, site.1+dy);
                if state.placed.contains_key(&c) { continue; }
                let evs = attachment_candidates(&state, &pool, c);
                if evs.is_empty() { cands.remove(&c); } else { cands.insert(c, evs); }
            }
        }
        let t1 = trace.0.len();
        let removed = apply_temperature(&mut state, 1, &mut trace, 15, RemovalCause::Cycle(1));
        println!("pass {pass}: placed {placed} removed {removed} size {}", state.len());
        if pass >= 9 {
            let missing: Vec<_> = step.cells.iter().filter(|c| !state.placed.contains_key(c)).collect();
            println!("   missing: {:?}", missing);
            if let Some(&&mc) = missing.first() {
                let evs = attachment_candidates(&state, &pool, mc);
                println!("   candidates at {:?}: {}", mc, evs.len());
                for d in tilefold_core::side::Dir::ALL {
                    let (dx,dy)=d.offset(); let nb=(mc.0+dx,mc.1+dy);
                    if let Some(t) = state.placed.get(&nb) { println!("     nb {:?} {:?}: {}", d, nb, t); }
                }
            }
            for ev in &trace.0[t1..] {
                if let TraceEvent::Removed{coord, tile, ..} = ev { println!("   junk {:?} {}", coord, tile); }
            }
            let missing: Vec<_> = step.cells.iter().filter(|c| !state.placed.contains_key(c)).collect();
            println!("   missing cells: {:?}", missing);

        }
        if placed == 0 && removed == 0 { break; }
    }
}
// marker
