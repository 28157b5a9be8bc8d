//! Five concentric circles of growing then shrinking radius, one loop
//! persisting through the middle of the zigzag.

use std::f64::consts::TAU;

use buzz::{build_schedule_variable, compute_zigzag, dominant_interval, PointCloud};
use buzz::pipeline::globalize;

fn circle(radius: f64, n: usize) -> PointCloud {
    let rows: Vec<[f64; 2]> = (0..n)
        .map(|k| {
            let a = TAU * k as f64 / n as f64;
            [radius * a.cos(), radius * a.sin()]
        })
        .collect();
    PointCloud::from_rows(&rows).unwrap()
}

fn main() {
    let clouds: Vec<PointCloud> = [0.2, 1.0, 2.0, 1.0, 0.2].iter().map(|&r| circle(r, 20)).collect();
    let radii = [0.5, 0.6, 0.8, 0.6, 0.5];
    let schedule = build_schedule_variable(&globalize(&clouds), &radii, 2).unwrap();
    let diagram = compute_zigzag(&schedule, 1).unwrap();
    for p in &diagram.points {
        println!("H{}: ({}, {})", p.dim, p.birth, p.death);
    }
    if let Some(p) = dominant_interval(&diagram, 1) {
        println!("dominant H1: ({}, {})", p.birth, p.death);
    }
}
