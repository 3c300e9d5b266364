//! Property suites: randomized invariants over exact rational inputs.

use num_traits::Zero;
use proptest::prelude::*;
use tightspan::geometry::Point2;
use tightspan::hyperconvex::{balls_compatible, boxes_intersect, Ball};
use tightspan::metric::{glue_metrics, linf_distance, FiniteMetric, PointN};
use tightspan::rat::{rat, rat_int, rat_max, Rat};
use tightspan::region::{minimal_gch, orthogonal_hull};
use tightspan::retraction::{retract_point, verify_nonexpansive, NonexpansiveCheck};
use tightspan::span::{descend_to_tight, embed3, embed4, kuratowski, tspan_distance, TightFunction};

fn small_rat() -> impl Strategy<Value = Rat> {
    (-12i64..=12, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn point2() -> impl Strategy<Value = Point2> {
    (small_rat(), small_rat()).prop_map(|(x, y)| Point2::new(x, y))
}

fn point_set(max: usize) -> impl Strategy<Value = Vec<Point2>> {
    proptest::collection::vec(point2(), 1..=max).prop_map(|mut v| {
        v.sort();
        v.dedup();
        v
    })
}

/// Distance entries in [1, 2] always satisfy the triangle inequality.
fn random_metric(n: usize) -> impl Strategy<Value = FiniteMetric> {
    proptest::collection::vec(1i64..=8, n * (n - 1) / 2).prop_map(move |raw| {
        let mut dist = vec![vec![Rat::zero(); n]; n];
        let mut k = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                let v = rat_int(1) + rat(raw[k], 8);
                dist[i][j] = v.clone();
                dist[j][i] = v;
                k += 1;
            }
        }
        let labels = (0..n).map(|i| format!("p{i}")).collect();
        FiniteMetric::new(labels, dist).expect("entries in [1,2] form a metric")
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn linf_point_sets_form_metrics(pts in point_set(6)) {
        let pn: Vec<PointN> = pts
            .iter()
            .map(|p| PointN(vec![p.x.clone(), p.y.clone()]))
            .collect();
        let labels = (0..pts.len()).map(|i| format!("p{i}")).collect();
        prop_assert!(FiniteMetric::from_linf_points(labels, &pn).is_ok());
    }

    #[test]
    fn rotation_is_a_similarity(p in point2(), q in point2()) {
        let (pu, qu) = (p.to_l1(), q.to_l1());
        prop_assert_eq!(pu.from_l1(), p.clone());
        // The l1 distance of the rotated images is twice the sup distance.
        let l1 = {
            let (dx, dy) = qu.sub(&pu);
            tightspan::rat::rat_abs(&dx) + tightspan::rat::rat_abs(&dy)
        };
        prop_assert_eq!(l1, rat_int(2) * p.dist(&q));
    }

    #[test]
    fn hull_and_gch_invariants(pts in point_set(6)) {
        let hull = orthogonal_hull(&pts);
        let gch = minimal_gch(&pts);
        for p in &pts {
            prop_assert!(hull.contains(p));
            prop_assert!(gch.contains(p));
        }
        prop_assert!(gch.is_geodesically_convex());
        // The hull is contained in the bridged hull.
        for f in hull.features() {
            for v in f.loop_vertices() {
                prop_assert!(gch.contains(&v));
            }
        }
        // Idempotence: the hull of the hull's vertices stays inside the gch.
        if hull.components().len() == 1 {
            prop_assert_eq!(&gch, &hull);
        }
    }

    #[test]
    fn sampled_pairs_have_midpoints(pts in point_set(5), seed in 0u64..1000) {
        let gch = minimal_gch(&pts);
        let sample = gch.sample_points(4, seed);
        for pair in sample.chunks_exact(2) {
            let (p, q) = (&pair[0], &pair[1]);
            let m = gch.midpoint_between(p, q);
            prop_assert!(m.is_some(), "no midpoint for {:?} {:?}", p, q);
            let m = m.unwrap();
            prop_assert!(gch.contains(&m));
            prop_assert_eq!(p.dist(&m), q.dist(&m));
            prop_assert_eq!(rat_int(2) * p.dist(&m), p.dist(q));
        }
    }

    #[test]
    fn retraction_is_sound(pts in point_set(5), p in point2()) {
        let gch = minimal_gch(&pts);
        let trace = retract_point(&gch, &p).unwrap();
        prop_assert!(gch.contains(&trace.target));
        if gch.contains(&p) {
            prop_assert_eq!(&trace.target, &p);
        }
        let check = verify_nonexpansive(&gch, &p, &trace.target, 60, 5).unwrap();
        prop_assert_eq!(check, NonexpansiveCheck::Pass);
        // Idempotence.
        let again = retract_point(&gch, &trace.target).unwrap();
        prop_assert_eq!(again.target, trace.target);
    }

    #[test]
    fn kuratowski_is_isometric(m in random_metric(5)) {
        for i in 0..m.len() {
            let f = kuratowski(&m, i);
            prop_assert!(f.is_tight_point());
            for j in 0..m.len() {
                let g = kuratowski(&m, j);
                prop_assert_eq!(tspan_distance(&f, &g).unwrap(), m.dist(i, j).clone());
            }
        }
    }

    #[test]
    fn descent_reaches_tight_points(m in random_metric(4), slack in 0i64..=8) {
        // Start from the largest row plus slack: always admissible.
        let n = m.len();
        let big = (0..n)
            .map(|i| {
                (0..n).fold(Rat::zero(), |acc, j| rat_max(&acc, m.dist(i, j)))
                    + rat(slack, 4)
            })
            .collect::<Vec<_>>();
        let f = TightFunction::new(m.clone(), big).unwrap();
        let (t, passes) = descend_to_tight(&f);
        prop_assert!(t.is_tight_point());
        prop_assert!(passes <= n * n + 1);
        for i in 0..n {
            prop_assert!(t.values()[i] <= f.values()[i]);
        }
    }

    #[test]
    fn glued_metrics_restrict_correctly(m in random_metric(5)) {
        // Split the space into two overlapping parts and glue them back.
        let m1 = m.restrict(&[0, 1, 2]).unwrap();
        let m2 = m.restrict(&[2, 3, 4]).unwrap();
        let glued = glue_metrics(&m1, &m2).unwrap();
        // Both parts embed isometrically in the glue.
        for part in [&m1, &m2] {
            for (i, li) in part.labels().iter().enumerate() {
                for (j, lj) in part.labels().iter().enumerate() {
                    let gi = glued.index_of(li).unwrap();
                    let gj = glued.index_of(lj).unwrap();
                    prop_assert_eq!(glued.dist(gi, gj), part.dist(i, j));
                }
            }
        }
        // Glued cross distances never exceed the originals (the glue is the
        // largest metric agreeing with both parts).
        for (i, li) in m.labels().iter().enumerate() {
            for (j, lj) in m.labels().iter().enumerate() {
                let gi = glued.index_of(li).unwrap();
                let gj = glued.index_of(lj).unwrap();
                prop_assert!(m.dist(i, j) <= glued.dist(gi, gj));
            }
        }
    }

    #[test]
    fn compatible_boxes_always_intersect(
        centers in proptest::collection::vec(
            proptest::collection::vec(-10i64..=10, 3), 2..=5),
        r_extra in 0i64..=4,
    ) {
        let pts: Vec<PointN> = centers
            .iter()
            .map(|c| PointN(c.iter().map(|&v| rat_int(v)).collect()))
            .collect();
        // Radius = half the largest pairwise distance plus slack makes the
        // family compatible by construction.
        let mut half_max = Rat::zero();
        for i in 0..pts.len() {
            for j in (i + 1)..pts.len() {
                half_max = rat_max(&half_max, &(linf_distance(&pts[i], &pts[j]) / rat_int(2)));
            }
        }
        let radius = half_max + rat(r_extra, 2);
        let balls: Vec<Ball> = pts
            .into_iter()
            .map(|c| Ball::new(c, radius.clone()).unwrap())
            .collect();
        prop_assert_eq!(balls_compatible(&balls).unwrap(), None);
        let w = boxes_intersect(&balls).unwrap();
        prop_assert!(w.is_some());
        let w = w.unwrap();
        for b in &balls {
            prop_assert!(linf_distance(&w, &b.center) <= b.radius);
        }
    }

    #[test]
    fn embed3_realizes_random_triangles(
        l1 in 0i64..=8, l2 in 0i64..=8, l3 in 0i64..=8,
    ) {
        // Generate triangle distances from tripod legs (always valid).
        let (l1, l2, l3) = (rat(l1, 2), rat(l2, 2), rat(l3, 2));
        let a = &l2 + &l3;
        let b = &l1 + &l3;
        let c = &l1 + &l2;
        prop_assume!(!a.is_zero() && !b.is_zero() && !c.is_zero());
        let m = embed3(&a, &b, &c).unwrap();
        prop_assert_eq!(m.points[1].dist(&m.points[2]), a);
        prop_assert_eq!(m.points[0].dist(&m.points[2]), b);
        prop_assert_eq!(m.points[0].dist(&m.points[1]), c);
        prop_assert_eq!(m.legs, [l1, l2, l3]);
    }

    #[test]
    fn embed4_realizes_generated_quads(
        legs in proptest::collection::vec(1i64..=6, 4),
        w in 0i64..=6, h_part in 0i64..=6,
        shuffle in 0usize..24,
    ) {
        // Inverse model: legs and a rectangle reconstruct the six distances
        // of a plane-embeddable 4-point space.
        let l: Vec<Rat> = legs.iter().map(|&v| rat(v, 2)).collect();
        let w = rat(w, 2);
        let h = rat_max(&Rat::zero(), &(&w - rat(h_part, 2))); // h <= w
        // Canonical roles: 1 upper-left, 2 lower-left, 3 upper-right,
        // 4 lower-right of the rectangle.
        let d = |i: usize, j: usize| -> Rat {
            let across = match (i, j) {
                (0, 1) | (1, 0) | (2, 3) | (3, 2) => h.clone(),
                (0, 2) | (2, 0) | (1, 3) | (3, 1) => w.clone(),
                _ => &w + &h,
            };
            &l[i] + &across + &l[j]
        };
        // Apply one of the 24 relabelings before embedding.
        let perms: Vec<[usize; 4]> = {
            let mut out = Vec::new();
            for a in 0..4 {
                for b in 0..4 {
                    for c in 0..4 {
                        if a != b && a != c && b != c {
                            out.push([a, b, c, 6 - a - b - c]);
                        }
                    }
                }
            }
            out
        };
        let p = perms[shuffle];
        let dd = |i: usize, j: usize| d(p[i], p[j]);
        let tuple = [dd(0, 1), dd(0, 2), dd(0, 3), dd(1, 2), dd(1, 3), dd(2, 3)];
        let model = embed4(&tuple).unwrap();
        let want = |i: usize, j: usize| dd(i, j);
        for i in 0..4 {
            for j in (i + 1)..4 {
                prop_assert_eq!(model.points[i].dist(&model.points[j]), want(i, j));
                prop_assert_eq!(model.path_metric(i, j), want(i, j));
            }
        }
    }
}
