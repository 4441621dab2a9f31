//! Timing probe for the size-3 relations elimination.

use std::time::Instant;

use discvar::groebner::{eliminate_limited, Limits, PolySystem};
use discvar::poly::{MonomialOrder, MultiPoly, VarContext};
use discvar::symform::{build_generic, sym_ctx};
use discvar::Rat;

fn main() {
    let n: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(3);
    let setup = build_generic(n);

    let mut names: Vec<String> = setup.ctx.names().to_vec();
    let x_ctx = sym_ctx(n);
    names.extend(x_ctx.names().iter().cloned());
    let full = VarContext::new(names);
    let order = MonomialOrder::GrevLex;

    let mut gens: Vec<MultiPoly<Rat>> = setup
        .ort_es
        .gens()
        .iter()
        .map(|g| g.rename_into(&full, order))
        .collect();
    for i in 0..n {
        for j in i..n {
            let xvar = MultiPoly::<Rat>::var_named(&full, order, &format!("x{}{}", i + 1, j + 1))
                .unwrap();
            let img = setup.x.at(i, j).rename_into(&full, order);
            gens.push(xvar.sub(&img));
        }
    }
    let sys = PolySystem::new(full.clone(), order, gens);

    let drop: Vec<&str> = setup.ctx.names().iter().map(|s| s.as_str()).collect();
    let t1 = Instant::now();
    let limits = if n >= 4 { Limits { max_pairs: Some(2000), ..Limits::default() } } else { Limits::unlimited() };
    match eliminate_limited(&sys, &drop, &limits) {
        Ok((basis, stats)) => {
            println!("eliminate: {:?}", t1.elapsed());
            println!(
                "stats: pairs={} skipped={} zero={} maxdeg={}",
                stats.pairs_processed,
                stats.pairs_skipped,
                stats.reductions_to_zero,
                stats.max_degree_seen
            );
            println!("basis size: {}", basis.len());
            for g in basis.gens() {
                println!(
                    "  deg {} terms {}: {}",
                    g.total_degree().unwrap_or(0),
                    g.num_terms(),
                    g
                );
            }
        }
        Err(e) => println!("aborted: {e}"),
    }
}
