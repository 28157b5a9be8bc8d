//! With a smaller radius in the middle snapshot, an edge can vanish there and
//! come back in the next union, so its times list has two intervals.

use buzz::pipeline::globalize;
use buzz::{build_schedule_variable, Simplex, PointCloud};

fn main() {
    let x0 = PointCloud::from_rows(&[[0.0, 5.0]]).unwrap();
    let x1 = PointCloud::from_rows(&[[0.0, 0.0], [1.0, 0.0]]).unwrap();
    let x2 = PointCloud::from_rows(&[[0.0, -5.0]]).unwrap();
    let schedule = build_schedule_variable(&globalize(&[x0, x1, x2]), &[1.2, 0.5, 1.2], 2).unwrap();
    let edge = Simplex::new([1, 2]).unwrap();
    let times: Vec<String> = schedule.times_of(&edge).unwrap().iter().map(ToString::to_string).collect();
    println!("{edge}: [{}]", times.join(", "));
}
