//! Furthest-point subsampling keeps the shape of a dense cloud.

use std::f64::consts::TAU;

use buzz::{greedy_permutation, PointCloud};

fn main() {
    let rows: Vec<[f64; 2]> = (0..400)
        .map(|k| {
            let a = TAU * k as f64 / 400.0;
            [a.cos(), a.sin()]
        })
        .collect();
    let cloud = PointCloud::from_rows(&rows).unwrap();
    let sub = greedy_permutation(&cloud, 8, 0).unwrap();
    println!("picked ids {:?}", sub.ids());
    for p in sub.points() {
        println!("({:+.3}, {:+.3})", p[0], p[1]);
    }
}
