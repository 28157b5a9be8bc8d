mod common;

use std::collections::BTreeSet;

use buzz::pipeline::{globalize, run_pipeline, InputSpec, PipelineConfig, Radii};
use buzz::{
    betti_numbers, boundary_matrix, build_schedule_fixed, build_schedule_variable, compute_zigzag,
    delay_embed, disjoint_union, dominant_interval, greedy_permutation, map_index_to_parameter,
    pairwise_distances, rips_complex, selkov_trajectory, sine_series, standard_persistence,
    validate_schedule, GridTime, PointCloud, Role, SelkovParams, ZigzagDiagram, ZigzagSchedule,
};
use common::*;
use proptest::prelude::*;

fn cloud_rows(max: usize) -> impl Strategy<Value = Vec<[f64; 2]>> {
    prop::collection::vec([-2.0..2.0f64, -2.0..2.0f64], 1..=max)
}

fn clouds(snapshots: usize, points: usize) -> impl Strategy<Value = Vec<PointCloud>> {
    prop::collection::vec(cloud_rows(points), 1..=snapshots).prop_map(|rows| {
        let raw: Vec<PointCloud> = rows.iter().map(|r| PointCloud::from_rows(r).unwrap()).collect();
        globalize(&raw)
    })
}

fn clouds_and_radii(snapshots: usize, points: usize) -> impl Strategy<Value = (Vec<PointCloud>, Vec<f64>)> {
    clouds(snapshots, points).prop_flat_map(|c| {
        let n = c.len();
        (Just(c), prop::collection::vec(0.2..2.0f64, n))
    })
}


proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn delay_embed_size(n in 1usize..200, d in 1usize..6, tau in 1usize..10) {
        let series: Vec<f64> = (0..n).map(|i| i as f64).collect();
        match delay_embed(&series, d, tau) {
            Ok(cloud) => {
                prop_assert_eq!(cloud.len(), n - (d - 1) * tau);
                prop_assert_eq!(cloud.dim(), d);
            }
            Err(_) => prop_assert!(n < (d - 1) * tau + 1),
        }
    }

    #[test]
    fn greedy_prefix_and_determinism(rows in cloud_rows(30), a in 1usize..30, b in 1usize..30) {
        let cloud = PointCloud::from_rows(&rows).unwrap();
        let (a, b) = (a.min(cloud.len()), b.min(cloud.len()));
        let pa = greedy_permutation(&cloud, a, 0).unwrap();
        let pb = greedy_permutation(&cloud, b, 0).unwrap();
        let j = a.min(b);
        prop_assert_eq!(&pa.ids()[..j], &pb.ids()[..j]);
        prop_assert_eq!(pa, greedy_permutation(&cloud, a, 0).unwrap());
    }

    #[test]
    fn distances_symmetric(rows in cloud_rows(20)) {
        let cloud = PointCloud::from_rows(&rows).unwrap();
        let dm = pairwise_distances(&cloud).unwrap();
        for i in 0..cloud.len() {
            prop_assert_eq!(dm.get(i, i), 0.0);
            for j in 0..cloud.len() {
                prop_assert_eq!(dm.get(i, j).to_bits(), dm.get(j, i).to_bits());
            }
        }
    }

    #[test]
    fn disjoint_union_associative(c in clouds(3, 6)) {
        prop_assume!(c.len() == 3);
        let left = disjoint_union(&disjoint_union(&c[0], &c[1]).unwrap(), &c[2]).unwrap();
        let right = disjoint_union(&c[0], &disjoint_union(&c[1], &c[2]).unwrap()).unwrap();
        let key = |p: &PointCloud| {
            let mut v: Vec<(u32, Vec<u64>)> = (0..p.len())
                .map(|i| (p.id(i), p.point(i).iter().map(|x| x.to_bits()).collect()))
                .collect();
            v.sort();
            v
        };
        prop_assert_eq!(key(&left), key(&right));
        let ids: BTreeSet<u32> = left.ids().iter().copied().collect();
        prop_assert_eq!(ids.len(), left.len());
        prop_assert_eq!(left.len(), c.iter().map(PointCloud::len).sum::<usize>());
    }

    #[test]
    fn rips_monotone(rows in cloud_rows(9), r1 in 0.0..2.0f64, dr in 0.0..1.0f64, extra in cloud_rows(3)) {
        let cloud = PointCloud::from_rows(&rows).unwrap();
        let small = rips_complex(&pairwise_distances(&cloud).unwrap(), r1, 3);
        let big = rips_complex(&pairwise_distances(&cloud).unwrap(), r1 + dr, 3);
        prop_assert!(small.iter().all(|s| big.contains(s)));
        prop_assert!(small.is_face_closed() && big.is_face_closed());
        let more = disjoint_union(&cloud, &PointCloud::from_rows(&extra).unwrap()
            .relabeled(cloud.len() as u32, 0)).unwrap();
        let grown = rips_complex(&pairwise_distances(&more).unwrap(), r1, 3);
        prop_assert!(small.iter().all(|s| grown.contains(s)));
    }

    #[test]
    fn boundary_squares_to_zero(rows in cloud_rows(8), r in 0.5..3.0f64) {
        let cloud = PointCloud::from_rows(&rows).unwrap();
        let k = rips_complex(&pairwise_distances(&cloud).unwrap(), r, 3);
        for p in 1..3 {
            let d1 = boundary_matrix(&k, p).unwrap();
            let d2 = boundary_matrix(&k, p + 1).unwrap();
            for c in 0..d2.n_cols() {
                for row in 0..d1.n_rows() {
                    let mut acc = false;
                    for m in 0..d1.n_cols() {
                        acc ^= d1.get(row, m) && d2.get(m, c);
                    }
                    prop_assert!(!acc);
                }
            }
        }
    }

    #[test]
    fn large_radius_is_connected(rows in cloud_rows(10)) {
        let cloud = PointCloud::from_rows(&rows).unwrap();
        let k = rips_complex(&pairwise_distances(&cloud).unwrap(), 10.0, 1);
        prop_assert_eq!(betti_numbers(&k, 0).unwrap()[0], 1);
    }

    #[test]
    fn constant_radii_variable_equals_fixed(c in clouds(4, 5), r in 0.2..2.0f64) {
        let fixed = build_schedule_fixed(&c, r, 2).unwrap();
        let variable = build_schedule_variable(&c, &vec![r; c.len()], 2).unwrap();
        prop_assert_eq!(&fixed, &variable);
        prop_assert_eq!(fixed, build_schedule_fixed(&c, r, 2).unwrap());
    }

    #[test]
    fn snapshot_simplices_live_around_their_snapshot((c, radii) in clouds_and_radii(4, 5)) {
        let schedule = build_schedule_variable(&c, &radii, 2).unwrap();
        prop_assert!(validate_schedule(&schedule).valid);
        let n = c.len() - 1;
        for (i, cloud) in c.iter().enumerate() {
            let k = rips_complex(&pairwise_distances(cloud).unwrap(), radii[i], 2);
            for s in k.iter() {
                let lo = (2 * i).saturating_sub(1);
                let hi = (2 * i + 1).min(2 * n);
                for h in lo..=hi {
                    let idx = schedule.simplices.iter().position(|x| x == s).unwrap();
                    prop_assert!(schedule.is_live(idx, GridTime::from_halves(h as u32)));
                }
            }
        }
    }

    #[test]
    fn intervals_count_betti_numbers((c, radii) in clouds_and_radii(4, 6)) {
        let schedule = build_schedule_variable(&c, &radii, 2).unwrap();
        let diagram = compute_zigzag(&schedule, 1).unwrap();
        for (h, complex) in live_complexes(&schedule).iter().enumerate() {
            let t = GridTime::from_halves(h as u32);
            let betti = dense_betti(complex, 1);
            prop_assert_eq!(diagram.alive_at(t, 0), betti[0]);
            prop_assert_eq!(diagram.alive_at(t, 1), betti[1]);
            prop_assert_eq!(diagram.alive_at(t, 0), components(complex));
        }
        prop_assert!(buzz::betti_consistency(&schedule, &diagram).unwrap().is_consistent());
    }

    #[test]
    fn arrow_ranks_count_spanning_intervals((c, radii) in clouds_and_radii(3, 6)) {
        let schedule = build_schedule_variable(&c, &radii, 2).unwrap();
        let diagram = compute_zigzag(&schedule, 1).unwrap();
        let sets = live_complexes(&schedule);
        for h in 0..sets.len().saturating_sub(1) {
            // snapshots sit inside the neighboring unions
            let (small, big) = if h % 2 == 0 { (h, h + 1) } else { (h + 1, h) };
            for p in 0..=1 {
                let spanning = diagram
                    .in_dim(p)
                    .filter(|q| q.contains(GridTime::from_halves(h as u32))
                        && q.contains(GridTime::from_halves(h as u32 + 1)))
                    .count();
                prop_assert_eq!(inclusion_rank(&sets[small], &sets[big], p), spanning);
            }
        }
    }

    #[test]
    fn simplex_order_does_not_matter((c, radii) in clouds_and_radii(3, 6), seed in any::<u64>()) {
        let schedule = build_schedule_variable(&c, &radii, 2).unwrap();
        let mut order: Vec<usize> = (0..schedule.len()).collect();
        let mut rng = rng(seed);
        rand::seq::SliceRandom::shuffle(order.as_mut_slice(), &mut rng);
        let shuffled = ZigzagSchedule::from_parts(
            schedule.n_snapshots,
            schedule.radii.clone(),
            2,
            order.iter().map(|&i| schedule.simplices[i].clone()).collect(),
            order.iter().map(|&i| schedule.times[i].clone()).collect(),
        );
        prop_assert_eq!(compute_zigzag(&schedule, 1).unwrap(), compute_zigzag(&shuffled, 1).unwrap());
    }

    #[test]
    fn monotone_schedules_match_standard_persistence(
        rows in cloud_rows(12),
        snapshots in 1usize..6,
        scale in 0.3..3.0f64,
    ) {
        let schedule = monotone_schedule(&rows, snapshots, scale);
        let filtration = buzz::zigzag::monotone_filtration(&schedule).unwrap();
        let standard: Vec<_> = standard_persistence(&filtration, snapshots)
            .unwrap()
            .points
            .into_iter()
            .filter(|p| p.dim <= 1)
            .collect();
        prop_assert_eq!(compute_zigzag(&schedule, 1).unwrap().points, standard);
    }

    #[test]
    fn dominant_ignores_label_shift(shift in -10.0..10.0f64, (c, radii) in clouds_and_radii(4, 6)) {
        let config = PipelineConfig {
            input: InputSpec::Clouds(c.iter().map(rows).collect()),
            embedding: None,
            subsample: None,
            radii: Radii::PerSnapshot(radii),
            max_hom_dim: 1,
            max_dim: None,
            parameter_labels: Some((0..c.len()).map(|i| i as f64).collect()),
            output: None,
        };
        let base = run_pipeline(&config).unwrap();
        let shifted = run_pipeline(&PipelineConfig {
            parameter_labels: Some((0..c.len()).map(|i| i as f64 + shift).collect()),
            ..config
        })
        .unwrap();
        prop_assert_eq!(&base.dominant, &shifted.dominant);
        if let (Some(a), Some(b)) = (&base.parameter_range, &shifted.parameter_range) {
            prop_assert!((b.appear - a.appear - shift).abs() < 1e-9);
            prop_assert!((b.disappear - a.disappear - shift).abs() < 1e-9);
        }
    }

    #[test]
    fn pipeline_equals_manual_composition((c, radii) in clouds_and_radii(4, 6)) {
        let config = PipelineConfig {
            input: InputSpec::Clouds(c.iter().map(rows).collect()),
            embedding: None,
            subsample: None,
            radii: Radii::PerSnapshot(radii.clone()),
            max_hom_dim: 1,
            max_dim: None,
            parameter_labels: None,
            output: None,
        };
        let result = run_pipeline(&config).unwrap();
        let manual = compute_zigzag(&build_schedule_variable(&c, &radii, 2).unwrap(), 1).unwrap();
        prop_assert_eq!(result.diagram.to_json().unwrap(), manual.to_json().unwrap());
        prop_assert_eq!(result.dominant_in(1), dominant_interval(&manual, 1));
    }

    #[test]
    fn half_integer_mapping(i in 0usize..9, labels in prop::collection::vec(-5.0..5.0f64, 10)) {
        let mut labels = labels;
        labels.sort_by(f64::total_cmp);
        let t = GridTime::from_halves(2 * i as u32 + 1);
        prop_assert_eq!(map_index_to_parameter(t, &labels, Role::Birth).unwrap(), labels[i]);
        prop_assert_eq!(map_index_to_parameter(t, &labels, Role::Death).unwrap(), labels[i + 1]);
    }

    #[test]
    fn sine_is_seed_deterministic(seed in any::<u64>(), amp in 0.0..3.0f64) {
        let a = sine_series(amp, 50, 0.3, 0.1, seed).unwrap();
        let b = sine_series(amp, 50, 0.3, 0.1, seed).unwrap();
        prop_assert_eq!(a.values, b.values);
    }
}

#[test]
fn selkov_burn_in_is_a_suffix() {
    let base = SelkovParams {
        n_samples: 200,
        t_max: 100.0,
        burn_in: 0,
        ..SelkovParams::with_b(0.6)
    };
    let (x0, y0) = selkov_trajectory(&base).unwrap();
    for k in [1, 17, 50] {
        let (xk, yk) = selkov_trajectory(&SelkovParams { burn_in: k, ..base.clone() }).unwrap();
        assert_eq!(xk.values, x0.values[k..]);
        assert_eq!(yk.values, y0.values[k..]);
    }
}

#[test]
fn diagram_json_round_trip_is_exact() {
    let t = |x| GridTime::from_f64(x).unwrap();
    let d = ZigzagDiagram::new(
        4,
        vec![buzz::PersistencePoint::new(1, t(0.5), t(5.0)), buzz::PersistencePoint::new(0, t(2.0), t(3.5))],
    );
    assert_eq!(ZigzagDiagram::from_json(&d.to_json().unwrap()).unwrap(), d);
}
