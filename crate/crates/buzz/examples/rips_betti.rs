//! Betti numbers of a Rips complex of a ring as the radius grows.

use std::f64::consts::TAU;

use buzz::{betti_numbers, pairwise_distances, rips_complex, PointCloud};

fn main() {
    let rows: Vec<[f64; 2]> = (0..12)
        .map(|k| {
            let a = TAU * k as f64 / 12.0;
            [a.cos(), a.sin()]
        })
        .collect();
    let dm = pairwise_distances(&PointCloud::from_rows(&rows).unwrap()).unwrap();
    for r in [0.3, 0.6, 1.2, 1.8, 2.1] {
        let k = rips_complex(&dm, r, 2);
        let betti = betti_numbers(&k, 1).unwrap();
        println!("r = {r:.1}: {} simplices, b0 = {}, b1 = {}", k.len(), betti[0], betti[1]);
    }
}
