//! A loop that is filled in by the union, and two components that merge.

use buzz::pipeline::globalize;
use buzz::{betti_consistency, build_schedule_fixed, compute_zigzag, PointCloud};

fn main() {
    let square = PointCloud::from_rows(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]).unwrap();
    let center_and_far = PointCloud::from_rows(&[[0.5, 0.5], [10.0, 10.0]]).unwrap();
    let schedule = build_schedule_fixed(&globalize(&[square, center_and_far]), 1.2, 2).unwrap();
    let diagram = compute_zigzag(&schedule, 1).unwrap();
    for p in &diagram.points {
        println!("H{}: ({}, {})", p.dim, p.birth, p.death);
    }
    let report = betti_consistency(&schedule, &diagram).unwrap();
    println!("consistent with Betti numbers at {} positions: {}", report.positions_checked, report.is_consistent());
    print!("{}", diagram.to_csv().unwrap());
}
