//! Runs the pipeline from a JSON config and writes its outputs.
//!
//! `cargo run --release --example pipeline_config -- config.json out/`

use buzz::pipeline::OutputSpec;
use buzz::{run_pipeline, PipelineConfig};

const DEFAULT: &str = r#"{
  "input": {"generate": {"kind": "selkov", "bs": [0.35, 0.4, 0.45, 0.5, 0.55, 0.6, 0.65, 0.7, 0.75, 0.8]}},
  "embedding": {"dim": 2, "tau": 3},
  "subsample": {"k": 20},
  "radii": 0.25
}"#;

fn main() {
    let mut args = std::env::args().skip(1);
    let mut config = match args.next() {
        Some(path) => PipelineConfig::from_path(path).unwrap(),
        None => PipelineConfig::from_json(DEFAULT).unwrap(),
    };
    if let Some(dir) = args.next() {
        config.output = Some(OutputSpec { dir: dir.into(), svg: true });
    }
    match run_pipeline(&config) {
        Ok(result) => {
            for p in &result.dominant {
                println!("dominant H{}: ({}, {})", p.dim, p.birth, p.death);
            }
            if let Some(r) = &result.parameter_range {
                println!("parameter range: {} to {}", r.appear, r.disappear);
            }
            println!("{:?}", result.diagnostics.timings_ms);
        }
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(1);
        }
    }
}
