//! Delay-embedding a sine turns it into a circle.

use std::f64::consts::TAU;

use buzz::{delay_embed, sine_series};

fn main() {
    // a quarter period delay maps sin onto (sin, cos)
    let series = sine_series(1.0, 32, TAU / 16.0, 0.0, 0).unwrap();
    let cloud = delay_embed(&series.values, 2, 4).unwrap();
    println!("{} samples -> {} points in R^{}", series.len(), cloud.len(), cloud.dim());
    for p in cloud.points().take(5) {
        let radius = (p[0] * p[0] + p[1] * p[1]).sqrt();
        println!("({:+.3}, {:+.3})  |p| = {radius:.3}", p[0], p[1]);
    }
}
