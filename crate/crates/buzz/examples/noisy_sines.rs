//! Nine noisy sines whose amplitude ramps up and back down. The loop of the
//! embedded sine is tracked while the amplitude is large.
//!
//! `cargo run --release --example noisy_sines -- [seed]`

use buzz::{run_pipeline, PipelineConfig};

fn main() {
    let seed = std::env::args().nth(1).map_or(1, |s| s.parse().expect("seed must be an integer"));
    let result = run_pipeline(&PipelineConfig::sine_experiment(seed)).unwrap();
    for p in result.diagram.in_dim(1) {
        println!("H1: ({}, {})", p.birth, p.death);
    }
    let p = result.dominant_in(1).expect("no loops found");
    println!("dominant H1: ({}, {})", p.birth, p.death);
    println!("simplices: {}, peak live: {}", result.diagnostics.total_simplices, result.diagnostics.max_live);
    for (stage, ms) in &result.diagnostics.timings_ms {
        println!("{stage}: {ms:.1} ms");
    }
}
