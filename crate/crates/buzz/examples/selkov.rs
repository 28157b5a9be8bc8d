//! Sel'kov glycolysis model swept across its Hopf window. The dominant loop
//! maps back to the range of `b` with a limit cycle.

use buzz::{run_pipeline, PipelineConfig};

fn main() {
    let result = run_pipeline(&PipelineConfig::selkov_experiment()).unwrap();
    for p in result.diagram.in_dim(1) {
        println!("H1: ({}, {})", p.birth, p.death);
    }
    let p = result.dominant_in(1).expect("no loops found");
    println!("dominant H1: ({}, {})", p.birth, p.death);
    if let Some(range) = &result.parameter_range {
        println!("limit cycle for b in [{:.2}, {:.2}]", range.appear, range.disappear);
    }
}
