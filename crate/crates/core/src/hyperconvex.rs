//! Hyperconvexity checks: compatible families of sup-norm balls, exact
//! Helly-style intersection witnesses, and two certified fixtures on the
//! plane x + y + z = 0 inside three-dimensional sup-norm space, where the
//! binary intersection (Helly) property fails.

use crate::clip::{clip_halfplane, intersect_convex, lex_min, HalfPlane};
use crate::geometry::Point2;
use crate::metric::{linf_distance, FiniteMetric, PointN};
use crate::rat::{rat, rat_int, rat_max, rat_min, Rat};
use crate::region::RegionComplex;
use crate::span::{tspan_distance, TightFunction};
use num_traits::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HyperconvexError {
    #[error("ball radius is negative")]
    NegativeRadius,
    #[error("balls live in different dimensions")]
    DimensionMismatch,
    #[error("expected a planar (2-dimensional) ball")]
    NotPlanar,
    #[error("empty family of balls")]
    EmptyFamily,
}

/// A closed sup-norm ball.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ball {
    pub center: PointN,
    pub radius: Rat,
}

impl Ball {
    pub fn new(center: PointN, radius: Rat) -> Result<Self, HyperconvexError> {
        if radius.is_negative() {
            return Err(HyperconvexError::NegativeRadius);
        }
        Ok(Ball { center, radius })
    }
}

/// Checks the pairwise compatibility condition `d(c_i, c_j) <= r_i + r_j`;
/// returns the first violating pair, if any.
pub fn balls_compatible(balls: &[Ball]) -> Result<Option<(usize, usize)>, HyperconvexError> {
    for i in 0..balls.len() {
        for j in (i + 1)..balls.len() {
            if balls[i].center.dim() != balls[j].center.dim() {
                return Err(HyperconvexError::DimensionMismatch);
            }
            let d = linf_distance(&balls[i].center, &balls[j].center);
            if d > &balls[i].radius + &balls[j].radius {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

/// Intersects sup-norm balls (boxes) coordinate by coordinate. Returns the
/// lexicographically smallest common point, or `None` when the intersection
/// is empty. This always succeeds for compatible families: boxes have the
/// Helly property in every dimension.
pub fn boxes_intersect(balls: &[Ball]) -> Result<Option<PointN>, HyperconvexError> {
    let first = balls.first().ok_or(HyperconvexError::EmptyFamily)?;
    let dim = first.center.dim();
    let mut lo: Vec<Rat> = Vec::with_capacity(dim);
    let mut hi: Vec<Rat> = Vec::with_capacity(dim);
    for k in 0..dim {
        lo.push(&first.center.0[k] - &first.radius);
        hi.push(&first.center.0[k] + &first.radius);
    }
    for b in &balls[1..] {
        if b.center.dim() != dim {
            return Err(HyperconvexError::DimensionMismatch);
        }
        for k in 0..dim {
            lo[k] = rat_max(&lo[k], &(&b.center.0[k] - &b.radius));
            hi[k] = rat_min(&hi[k], &(&b.center.0[k] + &b.radius));
        }
    }
    if lo.iter().zip(hi.iter()).any(|(l, h)| l > h) {
        return Ok(None);
    }
    Ok(Some(PointN(lo)))
}

/// Intersects planar balls with a region complex. Returns the
/// lexicographically smallest point common to the region and every ball, or
/// `None` when there is none.
pub fn region_balls_intersect(
    region: &RegionComplex,
    balls: &[Ball],
) -> Result<Option<Point2>, HyperconvexError> {
    let mut halfplanes = Vec::new();
    for b in balls {
        if b.center.dim() != 2 {
            return Err(HyperconvexError::NotPlanar);
        }
        let (cx, cy) = (&b.center.0[0], &b.center.0[1]);
        let one = rat_int(1);
        halfplanes.push(HalfPlane { a: one.clone(), b: Rat::zero(), c: cx - &b.radius });
        halfplanes.push(HalfPlane { a: -one.clone(), b: Rat::zero(), c: -(cx + &b.radius) });
        halfplanes.push(HalfPlane { a: Rat::zero(), b: one.clone(), c: cy - &b.radius });
        halfplanes.push(HalfPlane { a: Rat::zero(), b: -one.clone(), c: -(cy + &b.radius) });
    }
    let mut best: Option<Point2> = None;
    for f in region.features() {
        let mut loop_vs = f.loop_vertices();
        for hp in &halfplanes {
            loop_vs = clip_halfplane(&loop_vs, hp);
        }
        if let Some(p) = lex_min(&loop_vs) {
            best = Some(match best {
                None => p,
                Some(b) => rat_min_point(&b, &p),
            });
        }
    }
    Ok(best)
}

fn rat_min_point(a: &Point2, b: &Point2) -> Point2 {
    if a <= b {
        a.clone()
    } else {
        b.clone()
    }
}

/// Lifts chart coordinates `(x, y)` to the plane x + y + z = 0.
pub fn plane_point(x: Rat, y: Rat) -> PointN {
    let z = -(&x + &y);
    PointN(vec![x, y, z])
}

/// The ball of the plane x + y + z = 0 (with the induced sup metric) around
/// a plane point, drawn in the `(x, y)` chart: a hexagon obtained by
/// clipping the coordinate box against the two diagonal constraints.
pub fn plane_hexagon_chart(center: &PointN, radius: &Rat) -> Vec<Point2> {
    assert_eq!(center.dim(), 3, "center must lie in 3-space");
    let (cx, cy, cz) = (&center.0[0], &center.0[1], &center.0[2]);
    assert!((cx + cy + cz).is_zero(), "center must lie on the plane");
    let square = vec![
        Point2::new(cx - radius, cy - radius),
        Point2::new(cx + radius, cy - radius),
        Point2::new(cx + radius, cy + radius),
        Point2::new(cx - radius, cy + radius),
    ];
    let one = rat_int(1);
    // |z - cz| <= r with z = -x - y gives two diagonal half-planes.
    let lower = HalfPlane { a: one.clone(), b: one.clone(), c: -cz - radius };
    let upper = HalfPlane { a: -one.clone(), b: -one.clone(), c: cz - radius };
    let clipped = clip_halfplane(&clip_halfplane(&square, &lower), &upper);
    clipped
}

/// Certified failure of the binary intersection property on the plane
/// x + y + z = 0: three pairwise-compatible balls of equal radius whose
/// pairwise intersections are nonempty while the triple intersection is
/// empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HexagonReport {
    pub centers: [PointN; 3],
    pub radius: Rat,
    /// Pairwise centers are within the sum of the radii.
    pub compatible: bool,
    /// A common point of each pair of balls, as (i, j, point).
    pub pairwise_witnesses: Vec<(usize, usize, PointN)>,
    pub triple_empty: bool,
}

pub fn hexagon_counterexample() -> HexagonReport {
    let centers = [
        plane_point(rat_int(2), rat_int(-1)),
        plane_point(rat_int(-1), rat_int(2)),
        plane_point(rat_int(-1), rat_int(-1)),
    ];
    let radius = rat(3, 2);
    let hexes: Vec<Vec<Point2>> =
        centers.iter().map(|c| plane_hexagon_chart(c, &radius)).collect();
    let compatible = (0..3).all(|i| {
        ((i + 1)..3).all(|j| {
            linf_distance(&centers[i], &centers[j]) <= &radius + &radius
        })
    });
    let mut pairwise_witnesses = Vec::new();
    for i in 0..3 {
        for j in (i + 1)..3 {
            let inter = intersect_convex(&hexes[i], &[&hexes[j]]);
            if let Some(p) = lex_min(&inter) {
                pairwise_witnesses.push((i, j, plane_point(p.x, p.y)));
            }
        }
    }
    let triple = intersect_convex(&hexes[0], &[&hexes[1], &hexes[2]]);
    HexagonReport {
        centers,
        radius,
        compatible,
        pairwise_witnesses,
        triple_empty: triple.is_empty(),
    }
}

/// A three-point subset of the plane x - 2y + 2z = 1 (with the induced sup
/// metric of 3-space) together with a quadrilateral region of that plane
/// that contains the points, but is not isometric to their tight span
/// (which is a tripod).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneQuadFixture {
    pub base: FiniteMetric,
    /// The three base points in 3-space.
    pub base_points: [PointN; 3],
    /// The quadrilateral in chart coordinates (s, t); its third listed
    /// vertex lies on an edge, so the shape is a triangle with one marked
    /// boundary point.
    pub quad_chart: Vec<Point2>,
}

/// Chart for the quadrilateral fixture: `(s, t)` maps to
/// `A + s*(0,1,1) + t*(-2,-1,0)` on the plane.
pub fn quad_chart_lift(p: &Point2) -> PointN {
    let x = rat_int(1) - rat_int(2) * &p.y;
    let y = rat_int(1) + &p.x - &p.y;
    let z = rat_int(1) + &p.x;
    PointN(vec![x, y, z])
}

pub fn plane_quad_fixture() -> PlaneQuadFixture {
    let a = PointN(vec![rat_int(1), rat_int(1), rat_int(1)]);
    let b = PointN(vec![rat_int(1), rat_int(-2), rat_int(-2)]);
    let c = PointN(vec![rat_int(-1), rat_int(0), rat_int(1)]);
    let base = FiniteMetric::from_linf_points(
        vec!["A".into(), "B".into(), "C".into()],
        &[a.clone(), b.clone(), c.clone()],
    )
    .expect("fixture points give a metric");
    // Chart vertices: A, (1,-1,-1), (-1/3,-1/3,1/3), C. The third vertex is
    // on the segment from the second to the fourth.
    let quad_chart = vec![
        Point2::from_ints(0, 0),
        Point2::from_ints(-2, 0),
        Point2::new(rat(-2, 3), rat(2, 3)),
        Point2::from_ints(0, 1),
    ];
    PlaneQuadFixture { base, base_points: [a, b, c], quad_chart }
}

/// Why the quadrilateral fixture is not isometric to the tight span.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlaneQuadWitness {
    /// A quadrilateral point whose distance profile to the base points is
    /// not a tight-span point (given in chart coordinates and in 3-space).
    NotTight { chart: Point2, point: PointN },
    /// Two quadrilateral points at a plane distance different from the
    /// distance of their profiles in the span.
    DistanceMismatch { chart_p: Point2, chart_q: Point2, plane: Rat, span: Rat },
}

/// Searches a deterministic barycentric grid of the quadrilateral for a
/// failure of the profile map to be an isometry onto the tight span.
pub fn plane_quad_witness() -> Option<PlaneQuadWitness> {
    let fx = plane_quad_fixture();
    // Barycentric grid over the triangle A, C, (-2, 0) plus the marked
    // boundary vertex.
    let v = [
        Point2::from_ints(0, 0),
        Point2::from_ints(0, 1),
        Point2::from_ints(-2, 0),
    ];
    let mut chart_pts: Vec<Point2> = vec![Point2::new(rat(-2, 3), rat(2, 3))];
    let n = 6i64;
    for i in 0..=n {
        for j in 0..=(n - i) {
            let k = n - i - j;
            let w = [rat(i, n), rat(j, n), rat(k, n)];
            let x = &v[0].x * &w[0] + &v[1].x * &w[1] + &v[2].x * &w[2];
            let y = &v[0].y * &w[0] + &v[1].y * &w[1] + &v[2].y * &w[2];
            chart_pts.push(Point2::new(x, y));
        }
    }
    let profile = |p: &Point2| -> Result<TightFunction, crate::span::SpanError> {
        let q = quad_chart_lift(p);
        let values: Vec<Rat> =
            fx.base_points.iter().map(|x| linf_distance(&q, x)).collect();
        TightFunction::new(fx.base.clone(), values)
    };
    for p in &chart_pts {
        match profile(p) {
            Err(_) => {
                return Some(PlaneQuadWitness::NotTight {
                    chart: p.clone(),
                    point: quad_chart_lift(p),
                })
            }
            Ok(f) => {
                if !f.is_tight_point() {
                    return Some(PlaneQuadWitness::NotTight {
                        chart: p.clone(),
                        point: quad_chart_lift(p),
                    });
                }
            }
        }
    }
    for i in 0..chart_pts.len() {
        for j in (i + 1)..chart_pts.len() {
            let (fi, fj) = (profile(&chart_pts[i]).ok()?, profile(&chart_pts[j]).ok()?);
            let span = tspan_distance(&fi, &fj).expect("same base");
            let plane = linf_distance(
                &quad_chart_lift(&chart_pts[i]),
                &quad_chart_lift(&chart_pts[j]),
            );
            if span != plane {
                return Some(PlaneQuadWitness::DistanceMismatch {
                    chart_p: chart_pts[i].clone(),
                    chart_q: chart_pts[j].clone(),
                    plane,
                    span,
                });
            }
        }
    }
    None
}

/// Checks the profile map on a planar region against the span of planar
/// base points, re-exported here for ball-test pipelines.
pub use crate::span::{check_isometry, IsometryReport};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::region::minimal_gch;

    fn ball(coords: &[i64], num: i64, den: i64) -> Ball {
        Ball::new(
            PointN(coords.iter().map(|&c| rat_int(c)).collect()),
            rat(num, den),
        )
        .unwrap()
    }

    #[test]
    fn boxes_have_helly_property() {
        // Pairwise compatible boxes in 3-space always share a point.
        let balls = [
            ball(&[0, 0, 0], 1, 1),
            ball(&[2, 0, 0], 1, 1),
            ball(&[1, 1, 1], 1, 1),
        ];
        assert_eq!(balls_compatible(&balls).unwrap(), None);
        let w = boxes_intersect(&balls).unwrap().unwrap();
        for b in &balls {
            assert!(linf_distance(&w, &b.center) <= b.radius);
        }
        // Lexicographically smallest witness.
        assert_eq!(w, PointN(vec![rat_int(1), rat_int(0), rat_int(0)]));
    }

    #[test]
    fn incompatible_pair_is_reported() {
        let balls = [ball(&[0, 0], 1, 1), ball(&[5, 0], 1, 1)];
        assert_eq!(balls_compatible(&balls).unwrap(), Some((0, 1)));
        assert_eq!(boxes_intersect(&balls).unwrap(), None);
    }

    #[test]
    fn region_ball_intersection_witness() {
        let region = minimal_gch(&[
            Point2::from_ints(0, 0),
            Point2::from_ints(0, 3),
            Point2::from_ints(2, 3),
        ]);
        // Ball around the branch point (1,2).
        let b = ball(&[1, 2], 1, 2);
        let w = region_balls_intersect(&region, &[b.clone()]).unwrap().unwrap();
        assert!(region.contains(&w));
        assert!(w.dist(&Point2::from_ints(1, 2)) <= b.radius);
        // Ball far away misses the region.
        let far = ball(&[10, 10], 1, 2);
        assert_eq!(region_balls_intersect(&region, &[far]).unwrap(), None);
    }

    #[test]
    fn hexagon_family_violates_binary_intersection() {
        let report = hexagon_counterexample();
        assert!(report.compatible);
        assert_eq!(report.pairwise_witnesses.len(), 3);
        for (i, j, w) in &report.pairwise_witnesses {
            // Witness lies on the plane and inside both balls.
            assert!(w.0.iter().fold(Rat::zero(), |s, c| s + c).is_zero());
            assert!(linf_distance(w, &report.centers[*i]) <= report.radius);
            assert!(linf_distance(w, &report.centers[*j]) <= report.radius);
        }
        assert!(report.triple_empty);
    }

    #[test]
    fn hexagon_chart_shape() {
        let hex = plane_hexagon_chart(&plane_point(Rat::zero(), Rat::zero()), &rat_int(1));
        assert_eq!(hex.len(), 6);
    }

    #[test]
    fn plane_quad_fixture_metric() {
        let fx = plane_quad_fixture();
        assert_eq!(*fx.base.dist(0, 1), rat_int(3));
        assert_eq!(*fx.base.dist(0, 2), rat_int(2));
        assert_eq!(*fx.base.dist(1, 2), rat_int(3));
        // All chart vertices lift onto the plane.
        for p in &fx.quad_chart {
            let q = quad_chart_lift(p);
            let plane_val = &q.0[0] - rat_int(2) * &q.0[1] + rat_int(2) * &q.0[2];
            assert_eq!(plane_val, rat_int(1));
        }
        // The lifted first and last vertices are A and C.
        assert_eq!(quad_chart_lift(&fx.quad_chart[0]), fx.base_points[0]);
        assert_eq!(quad_chart_lift(&fx.quad_chart[3]), fx.base_points[2]);
    }

    #[test]
    fn plane_quad_is_not_the_tight_span() {
        let w = plane_quad_witness().expect("fixture must fail the isometry check");
        match w {
            PlaneQuadWitness::NotTight { point, .. } => {
                // The witness lies on the plane x - 2y + 2z = 1.
                let plane_val = &point.0[0] - rat_int(2) * &point.0[1] + rat_int(2) * &point.0[2];
                assert_eq!(plane_val, rat_int(1));
            }
            PlaneQuadWitness::DistanceMismatch { plane, span, .. } => {
                assert_ne!(plane, span);
            }
        }
    }
}
