//! Hopf bifurcation detection with zigzag persistence.
//!
//! A family of time series indexed by a system parameter is delay-embedded
//! into point clouds `X_0, ..., X_n`. Rips complexes of the snapshots and of
//! the unions of neighbors form a zigzag
//!
//! ```text
//! R(X_0) -> R(X_0 ∪ X_1) <- R(X_1) -> ... <- R(X_n)
//! ```
//!
//! and its persistence diagram tracks loops across the parameter range. A
//! long-lived 1-dimensional interval marks a limit cycle; its endpoints map
//! back to the parameters where the cycle appears and disappears.
//!
//! Grid times are half-integers: `i` is snapshot `i`, `i + 0.5` is the union of
//! snapshots `i` and `i + 1`, and `n + 1` closes every interval still alive.
//!
//! ```
//! use buzz::{build_schedule_fixed, compute_zigzag, PointCloud};
//!
//! let ring: Vec<Vec<f64>> = (0..8)
//!     .map(|k| {
//!         let a = k as f64 * std::f64::consts::TAU / 8.0;
//!         vec![a.cos(), a.sin()]
//!     })
//!     .collect();
//! let cloud = PointCloud::from_rows(&ring).unwrap();
//! let schedule = build_schedule_fixed(&[cloud], 0.8, 2).unwrap();
//! let diagram = compute_zigzag(&schedule, 1).unwrap();
//! assert_eq!(diagram.in_dim(1).count(), 1);
//! ```

pub mod complex;
pub mod dynamics;
pub mod error;
pub mod geometry;
pub mod io;
pub mod pipeline;
pub mod plot;
pub mod schedule;
pub mod zigzag;

pub use complex::{betti_numbers, boundary_matrix, rips_complex, BoundaryMatrix, Simplex, SimplicialComplex};
pub use dynamics::{
    make_buzz_family, rk4_step, selkov_trajectory, sine_series, FamilySpec, SelkovParams, TimeSeries,
};
pub use error::{BuzzError, Result, Stage};
pub use geometry::{
    delay_embed, disjoint_union, greedy_permutation, pairwise_distances, DistanceMatrix, PointCloud,
    VertexId,
};
pub use pipeline::{
    dominant_interval, map_index_to_parameter, run_pipeline, PipelineConfig, PipelineResult, Radii, Role,
};
pub use plot::{diagram_svg, render_diagram};
pub use schedule::{
    build_schedule_fixed, build_schedule_variable, validate_schedule, GridTime, ScheduleReport,
    Violation, ZigzagSchedule,
};
pub use zigzag::{
    betti_consistency, compute_zigzag, standard_persistence, BettiReport, PersistencePoint, ZigzagDiagram,
};
