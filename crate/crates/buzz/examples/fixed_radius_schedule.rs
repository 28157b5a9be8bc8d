//! Schedule of a two-snapshot zigzag at a fixed radius: two points, then a
//! third point close to both.

use buzz::pipeline::globalize;
use buzz::{build_schedule_fixed, validate_schedule, PointCloud};

fn main() {
    let x0 = PointCloud::from_rows(&[[0.0, 0.0], [1.0, 0.0]]).unwrap();
    let x1 = PointCloud::from_rows(&[[0.5, 0.5]]).unwrap();
    let schedule = build_schedule_fixed(&globalize(&[x0, x1]), 1.0, 2).unwrap();
    for (s, times) in schedule.simplices.iter().zip(&schedule.times) {
        let times: Vec<String> = times.iter().map(ToString::to_string).collect();
        println!("{s}: [{}]", times.join(", "));
    }
    let report = validate_schedule(&schedule);
    println!("valid: {}, live per position: {:?}", report.valid, report.live_counts);
    println!("{}", schedule.to_json().unwrap());
}
