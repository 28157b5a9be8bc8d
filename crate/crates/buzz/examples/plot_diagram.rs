//! Renders a diagram to SVG.
//!
//! `cargo run --example plot_diagram -- out.svg`

use buzz::{diagram_svg, render_diagram, GridTime, PersistencePoint, ZigzagDiagram};

fn main() {
    let t = |x| GridTime::from_f64(x).unwrap();
    let diagram = ZigzagDiagram::new(
        2,
        vec![
            PersistencePoint::new(1, t(0.0), t(0.5)),
            PersistencePoint::new(0, t(0.0), t(2.0)),
            PersistencePoint::new(0, t(0.5), t(2.0)),
        ],
    );
    match std::env::args().nth(1) {
        Some(path) => {
            render_diagram(&diagram, &path).unwrap();
            println!("wrote {path}");
        }
        None => print!("{}", diagram_svg(&diagram)),
    }
}
