//! The tight span of a finite metric space, as a function-space oracle, and
//! exact sup-norm plane embeddings of 3- and 4-point metric spaces.
//!
//! A point of the tight span of `(X, d)` is a function `f: X -> R>=0` with
//! `f(x) + f(y) >= d(x, y)` for all pairs and, for every `x`, an
//! arbitrarily-near-tight partner: `min_y (f(x) + f(y) - d(x, y)) = 0`. The
//! span carries the sup metric. `descend_to_tight` projects any admissible
//! function down to the span; `check_isometry` uses the oracle to test
//! whether a candidate plane region is isometric to the span.

use crate::geometry::Point2;
use crate::metric::{FiniteMetric, MetricError};
use crate::rat::{rat_abs, rat_int, rat_max, Rat};
use crate::region::RegionComplex;
use num_traits::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpanError {
    #[error("function has {got} values for a {want}-point space")]
    ValueCountMismatch { want: usize, got: usize },
    #[error("functions live over different base spaces")]
    BaseMismatch,
    #[error("function value at index {0} is negative")]
    NegativeValue(usize),
    #[error("function is not admissible: f({i}) + f({j}) < d({i},{j})")]
    NotAdmissible { i: usize, j: usize },
    #[error("metric error: {0}")]
    Metric(#[from] MetricError),
    #[error("distances do not embed in the sup-norm plane with the quadrilateral template")]
    EmbeddingInfeasible,
}

/// An admissible function on a finite metric space (a tight-span candidate).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TightFunction {
    base: FiniteMetric,
    values: Vec<Rat>,
}

impl TightFunction {
    /// Wraps values after checking count, nonnegativity and admissibility.
    pub fn new(base: FiniteMetric, values: Vec<Rat>) -> Result<Self, SpanError> {
        let n = base.len();
        if values.len() != n {
            return Err(SpanError::ValueCountMismatch { want: n, got: values.len() });
        }
        for (i, v) in values.iter().enumerate() {
            if v.is_negative() {
                return Err(SpanError::NegativeValue(i));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if &values[i] + &values[j] < *base.dist(i, j) {
                    return Err(SpanError::NotAdmissible { i, j });
                }
            }
        }
        Ok(TightFunction { base, values })
    }

    pub fn base(&self) -> &FiniteMetric {
        &self.base
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    /// Slack table: `gap[i][j] = f(i) + f(j) - d(i, j)` (all nonnegative).
    pub fn gap_table(&self) -> Vec<Vec<Rat>> {
        let n = self.base.len();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| &self.values[i] + &self.values[j] - self.base.dist(i, j))
                    .collect()
            })
            .collect()
    }

    /// Whether the function lies in the tight span: every row of the gap
    /// table attains zero.
    pub fn is_tight_point(&self) -> bool {
        self.gap_table()
            .iter()
            .all(|row| row.iter().any(|g| g.is_zero()))
    }
}

/// Distance function of the `i`-th base point (the canonical embedding of
/// the space into its own tight span).
pub fn kuratowski(base: &FiniteMetric, i: usize) -> TightFunction {
    let values: Vec<Rat> = (0..base.len()).map(|j| base.dist(i, j).clone()).collect();
    TightFunction::new(base.clone(), values).expect("distance rows are admissible and tight")
}

/// Sup distance between two functions over the same base space.
pub fn tspan_distance(f: &TightFunction, g: &TightFunction) -> Result<Rat, SpanError> {
    if f.base != g.base {
        return Err(SpanError::BaseMismatch);
    }
    Ok(f.values
        .iter()
        .zip(g.values.iter())
        .map(|(a, b)| rat_abs(&(a - b)))
        .fold(Rat::zero(), |acc, v| rat_max(&acc, &v)))
}

/// Projects an admissible function onto the tight span by round-robin
/// relaxation `f(x) <- max_y (d(x, y) - f(y))` until a full pass makes no
/// change. Returns the tight function and the number of passes. The result
/// is pointwise minimal below the input, so it never moves a function that
/// is already tight.
pub fn descend_to_tight(f: &TightFunction) -> (TightFunction, usize) {
    let n = f.base.len();
    let mut values = f.values.clone();
    let mut passes = 0;
    loop {
        passes += 1;
        assert!(
            passes <= n * n + 1,
            "tight-span descent exceeded its pass bound"
        );
        let mut changed = false;
        for i in 0..n {
            let mut best = Rat::zero();
            for j in 0..n {
                if j == i {
                    continue;
                }
                best = rat_max(&best, &(f.base.dist(i, j) - &values[j]));
            }
            if best != values[i] {
                values[i] = best;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let tight = TightFunction::new(f.base.clone(), values)
        .expect("descent preserves admissibility");
    debug_assert!(tight.is_tight_point());
    (tight, passes)
}

/// Exact sup-norm plane realization of a 3-point metric space: three plane
/// points with matching pairwise distances, plus the leg lengths of the
/// tripod-shaped tight span (leg `i` is the distance from input point `i`
/// to the branch point).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripodModel {
    pub points: [Point2; 3],
    pub legs: [Rat; 3],
}

/// Embeds the metric with d(1,2)=c, d(1,3)=b, d(2,3)=a isometrically into
/// the sup-norm plane.
pub fn embed3(a: &Rat, b: &Rat, c: &Rat) -> Result<TripodModel, SpanError> {
    let labels = vec!["1".into(), "2".into(), "3".into()];
    let dist = vec![
        vec![Rat::zero(), c.clone(), b.clone()],
        vec![c.clone(), Rat::zero(), a.clone()],
        vec![b.clone(), a.clone(), Rat::zero()],
    ];
    FiniteMetric::new(labels, dist)?;
    let two = rat_int(2);
    let legs = [(b + c - a) / &two, (a + c - b) / &two, (a + b - c) / &two];
    // Template needs a >= b; swap points 1 and 2 otherwise (this exchanges
    // the roles of a and b and leaves c fixed).
    let (aa, bb, swapped) = if a >= b { (a, b, false) } else { (b, a, true) };
    let p1 = Point2::new(Rat::zero(), c.clone());
    let p2 = Point2::new(Rat::zero(), Rat::zero());
    let p3 = Point2::new(bb.clone(), aa.clone());
    let points = if swapped { [p2, p1, p3] } else { [p1, p2, p3] };
    debug_assert_eq!(&points[0].dist(&points[1]), c);
    debug_assert_eq!(&points[0].dist(&points[2]), b);
    debug_assert_eq!(&points[1].dist(&points[2]), a);
    Ok(TripodModel { points, legs })
}

/// Exact sup-norm plane realization of a 4-point metric space, together
/// with the combinatorics of its tight span: four legs attached to the
/// corners of a rectangle (possibly degenerate).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadModel {
    /// Plane points in caller order, realizing the six distances.
    pub points: [Point2; 4],
    /// Leg length of each input point in caller order.
    pub legs: [Rat; 4],
    /// Central rectangle (width, height) with width >= height.
    pub rect: (Rat, Rat),
    perm: [usize; 4],
}

impl QuadModel {
    /// Distance in the abstract tight span (leg + rectilinear rectangle
    /// path + leg); agrees with the input metric.
    pub fn path_metric(&self, i: usize, j: usize) -> Rat {
        if i == j {
            return Rat::zero();
        }
        // Corner of each canonical role in the (width, height) rectangle:
        // role 1 -> (0, H), role 2 -> (0, 0), role 3 -> (W, H),
        // role 4 -> (W, 0).
        let corner = |role: usize| -> (Rat, Rat) {
            let (w, h) = (&self.rect.0, &self.rect.1);
            match role {
                0 => (Rat::zero(), h.clone()),
                1 => (Rat::zero(), Rat::zero()),
                2 => (w.clone(), h.clone()),
                _ => (w.clone(), Rat::zero()),
            }
        };
        let (ci, cj) = (corner(self.perm[i]), corner(self.perm[j]));
        let across = rat_abs(&(&ci.0 - &cj.0)) + rat_abs(&(&ci.1 - &cj.1));
        &self.legs[i] + &across + &self.legs[j]
    }
}

/// Embeds a 4-point metric (d12, d13, d14, d23, d24, d34) isometrically
/// into the sup-norm plane. Tries the relabelings of the four points in a
/// fixed order and uses the first one for which the rectangle template
/// verifies all six distances.
pub fn embed4(d: &[Rat; 6]) -> Result<QuadModel, SpanError> {
    let [d12, d13, d14, d23, d24, d34] = d;
    let labels = vec!["1".into(), "2".into(), "3".into(), "4".into()];
    let dist = vec![
        vec![Rat::zero(), d12.clone(), d13.clone(), d14.clone()],
        vec![d12.clone(), Rat::zero(), d23.clone(), d24.clone()],
        vec![d13.clone(), d23.clone(), Rat::zero(), d34.clone()],
        vec![d14.clone(), d24.clone(), d34.clone(), Rat::zero()],
    ];
    let metric = FiniteMetric::new(labels, dist)?;
    let perms = permutations4();
    for perm in perms {
        // perm[k] = original index playing canonical role k.
        let dd = |r: usize, s: usize| metric.dist(perm[r], perm[s]).clone();
        let (a, b, c) = (dd(1, 2), dd(0, 2), dd(0, 1));
        let (dv, e, f) = (dd(0, 3), dd(1, 3), dd(2, 3));
        // Matching-sum ordering that makes the template coordinates valid.
        if !(&c + &f <= &b + &e && &b + &e <= &a + &dv) {
            continue;
        }
        let p1 = Point2::new(&e - &dv, c.clone());
        let p2 = Point2::new(Rat::zero(), Rat::zero());
        let p3 = Point2::new(&b + &e - &dv, a.clone());
        let p4 = Point2::new(e.clone(), &a - &f);
        let pts = [p1, p2, p3, p4];
        let ok = (0..4).all(|r| {
            ((r + 1)..4).all(|s| pts[r].dist(&pts[s]) == dd(r, s))
        });
        if !ok {
            continue;
        }
        let two = rat_int(2);
        // Leg lengths and central rectangle from the canonical distances.
        let leg = [
            (&b + &c - &a) / &two,
            (&c + &e - &dv) / &two,
            (&b + &f - &dv) / &two,
            (&e + &f - &a) / &two,
        ];
        let width = (&a + &dv - &c - &f) / &two;
        let height = (&a + &dv - &b - &e) / &two;
        if leg.iter().any(|l| l.is_negative()) || width.is_negative() || height.is_negative() {
            continue;
        }
        // Map back to caller order.
        let mut inv = [0usize; 4];
        for (role, &orig) in perm.iter().enumerate() {
            inv[orig] = role;
        }
        let points = [
            pts[inv[0]].clone(),
            pts[inv[1]].clone(),
            pts[inv[2]].clone(),
            pts[inv[3]].clone(),
        ];
        let legs = [
            leg[inv[0]].clone(),
            leg[inv[1]].clone(),
            leg[inv[2]].clone(),
            leg[inv[3]].clone(),
        ];
        let model = QuadModel { points, legs, rect: (width, height), perm: inv };
        debug_assert!((0..4).all(|i| {
            (0..4).all(|j| model.path_metric(i, j) == *metric.dist(i, j))
        }));
        return Ok(model);
    }
    Err(SpanError::EmbeddingInfeasible)
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            if b == a {
                continue;
            }
            for c in 0..4 {
                if c == a || c == b {
                    continue;
                }
                let d = 6 - a - b - c;
                out.push([a, b, c, d]);
            }
        }
    }
    out
}

/// Builds the finite metric of a planar point set (deduplicated and
/// sorted), labeled "1".."n", together with the points in label order.
pub fn plane_base(
    points: &[Point2],
) -> Result<(FiniteMetric, Vec<Point2>), MetricError> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    let labels = (1..=pts.len()).map(|i| i.to_string()).collect();
    let pn: Vec<crate::metric::PointN> = pts
        .iter()
        .map(|p| crate::metric::PointN(vec![p.x.clone(), p.y.clone()]))
        .collect();
    Ok((FiniteMetric::from_linf_points(labels, &pn)?, pts))
}

/// Distance profile of a plane point against the base points: the image of
/// `y` under the candidate isometry into the function space.
pub fn phi_map(base: &FiniteMetric, base_points: &[Point2], y: &Point2) -> Result<TightFunction, SpanError> {
    let values: Vec<Rat> = base_points.iter().map(|x| y.dist(x)).collect();
    TightFunction::new(base.clone(), values)
}

/// Outcome of the region-versus-tight-span isometry check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsometryReport {
    Pass,
    /// A region point whose distance profile is not a tight-span point.
    NotTight { point: Point2 },
    /// A pair of region points whose span distance disagrees with their
    /// plane distance.
    DistanceMismatch { p: Point2, q: Point2, plane: Rat, span: Rat },
    /// A region point whose distance profile is not even admissible.
    NotAdmissible { point: Point2 },
}

/// Checks that the map sending a region point to its distance profile is an
/// isometry onto the tight span of the base points. Tightness is checked at
/// every arrangement vertex and every sampled point; distances are checked
/// on all vertex pairs plus `n_pairs` seeded sample pairs.
pub fn check_isometry(
    region: &RegionComplex,
    base: &FiniteMetric,
    base_points: &[Point2],
    n_pairs: usize,
    seed: u64,
) -> IsometryReport {
    assert_eq!(base.len(), base_points.len());
    let vertices = region.arrangement_vertices();
    let samples = region.sample_points(2 * n_pairs, seed);
    let profile = |y: &Point2| -> Result<TightFunction, IsometryReport> {
        match phi_map(base, base_points, y) {
            Err(_) => Err(IsometryReport::NotAdmissible { point: y.clone() }),
            Ok(f) => {
                if !f.is_tight_point() {
                    Err(IsometryReport::NotTight { point: y.clone() })
                } else {
                    Ok(f)
                }
            }
        }
    };
    let check_pair = |p: &Point2, fp: &TightFunction, q: &Point2, fq: &TightFunction| {
        let plane = p.dist(q);
        let span = tspan_distance(fp, fq).expect("same base");
        if plane != span {
            Some(IsometryReport::DistanceMismatch { p: p.clone(), q: q.clone(), plane, span })
        } else {
            None
        }
    };
    let mut vertex_profiles = Vec::with_capacity(vertices.len());
    for y in &vertices {
        match profile(y) {
            Err(r) => return r,
            Ok(f) => vertex_profiles.push(f),
        }
    }
    for i in 0..vertices.len() {
        for j in (i + 1)..vertices.len() {
            if let Some(r) =
                check_pair(&vertices[i], &vertex_profiles[i], &vertices[j], &vertex_profiles[j])
            {
                return r;
            }
        }
    }
    for pair in samples.chunks_exact(2) {
        let (fp, fq) = match (profile(&pair[0]), profile(&pair[1])) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(r), _) | (_, Err(r)) => return r,
        };
        if let Some(r) = check_pair(&pair[0], &fp, &pair[1], &fq) {
            return r;
        }
    }
    IsometryReport::Pass
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};
    use crate::region::minimal_gch;

    fn metric2(d: i64) -> FiniteMetric {
        FiniteMetric::new(
            vec!["x".into(), "y".into()],
            vec![
                vec![Rat::zero(), rat_int(d)],
                vec![rat_int(d), Rat::zero()],
            ],
        )
        .unwrap()
    }

    #[test]
    fn kuratowski_rows_are_tight() {
        let m = metric2(5);
        let f = kuratowski(&m, 0);
        assert_eq!(f.values(), &[rat_int(0), rat_int(5)]);
        assert!(f.is_tight_point());
        assert_eq!(tspan_distance(&kuratowski(&m, 0), &kuratowski(&m, 1)).unwrap(), rat_int(5));
    }

    #[test]
    fn descend_two_point_example() {
        // On a two-point space with d = 5, the admissible function (4, 4)
        // descends to the tight point (1, 4).
        let m = metric2(5);
        let f = TightFunction::new(m, vec![rat_int(4), rat_int(4)]).unwrap();
        assert!(!f.is_tight_point());
        let (t, passes) = descend_to_tight(&f);
        assert_eq!(t.values(), &[rat_int(1), rat_int(4)]);
        assert!(passes <= 4 + 1);
        // Tight points are fixed.
        let (t2, _) = descend_to_tight(&t);
        assert_eq!(t2, t);
    }

    #[test]
    fn admissibility_is_enforced() {
        let m = metric2(5);
        assert!(matches!(
            TightFunction::new(m.clone(), vec![rat_int(1), rat_int(1)]),
            Err(SpanError::NotAdmissible { .. })
        ));
        assert!(matches!(
            TightFunction::new(m, vec![rat_int(-1), rat_int(6)]),
            Err(SpanError::NegativeValue(0))
        ));
    }

    #[test]
    fn embed3_realizes_distances_and_legs() {
        // d(2,3)=3, d(1,3)=2, d(1,2)=3: legs (1, 2, 1).
        let m = embed3(&rat_int(3), &rat_int(2), &rat_int(3)).unwrap();
        assert_eq!(m.legs, [rat_int(1), rat_int(2), rat_int(1)]);
        assert_eq!(m.points[0].dist(&m.points[1]), rat_int(3));
        assert_eq!(m.points[0].dist(&m.points[2]), rat_int(2));
        assert_eq!(m.points[1].dist(&m.points[2]), rat_int(3));
        // The span region of the realized points is a tripod whose legs
        // have the computed lengths.
        let region = minimal_gch(&m.points);
        assert!(region.is_geodesically_convex());
        assert_eq!(region.segments().len(), 3);
    }

    #[test]
    fn embed3_rejects_invalid_metrics() {
        assert!(embed3(&rat_int(10), &rat_int(1), &rat_int(1)).is_err());
        assert!(embed3(&rat_int(-1), &rat_int(1), &rat_int(1)).is_err());
    }

    #[test]
    fn embed4_fixture() {
        // (d12, d13, d14, d23, d24, d34) = (3, 3, 3, 4, 3, 2).
        let d = [
            rat_int(3),
            rat_int(3),
            rat_int(3),
            rat_int(4),
            rat_int(3),
            rat_int(2),
        ];
        let m = embed4(&d).unwrap();
        let want = |i: usize, j: usize| -> Rat {
            match (i, j) {
                (0, 1) => rat_int(3),
                (0, 2) => rat_int(3),
                (0, 3) => rat_int(3),
                (1, 2) => rat_int(4),
                (1, 3) => rat_int(3),
                (2, 3) => rat_int(2),
                _ => unreachable!(),
            }
        };
        for i in 0..4 {
            for j in (i + 1)..4 {
                assert_eq!(m.points[i].dist(&m.points[j]), want(i, j), "pair {i} {j}");
                assert_eq!(m.path_metric(i, j), want(i, j), "path {i} {j}");
            }
        }
        assert_eq!(m.rect, (rat_int(1), rat(1, 2)));
        let mut legs = m.legs.clone();
        legs.sort();
        assert_eq!(legs, [rat(1, 2), rat_int(1), rat_int(1), rat(3, 2)]);
    }

    #[test]
    fn embed4_shuffled_labels_still_embed() {
        // Same metric with points relabeled: embedding must still verify.
        let d = [
            rat_int(4),
            rat_int(3),
            rat_int(3),
            rat_int(3),
            rat_int(3),
            rat_int(2),
        ];
        let m = embed4(&d).unwrap();
        assert_eq!(m.points[0].dist(&m.points[1]), rat_int(4));
        assert_eq!(m.points[2].dist(&m.points[3]), rat_int(2));
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(
                    m.path_metric(i, j),
                    m.path_metric(j, i)
                );
            }
        }
    }

    #[test]
    fn isometry_check_passes_for_tripod() {
        let t = embed3(&rat_int(3), &rat_int(2), &rat_int(3)).unwrap();
        let region = minimal_gch(&t.points);
        let base = FiniteMetric::from_linf_points(
            vec!["1".into(), "2".into(), "3".into()],
            &t.points
                .iter()
                .map(|p| crate::metric::PointN(vec![p.x.clone(), p.y.clone()]))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let report = check_isometry(&region, &base, &t.points, 10, 42);
        assert_eq!(report, IsometryReport::Pass);
    }

    #[test]
    fn isometry_check_fails_for_too_big_region() {
        // The full bounding box of the tripod points is not the tight span.
        let t = embed3(&rat_int(3), &rat_int(2), &rat_int(3)).unwrap();
        let (lo, hi) = minimal_gch(&t.points).bounding_box();
        let cell = vec![
            lo.clone(),
            Point2::new(hi.x.clone(), lo.y.clone()),
            hi.clone(),
            Point2::new(lo.x.clone(), hi.y.clone()),
        ];
        let region = RegionComplex::new(vec![], vec![], vec![cell]).unwrap();
        let base = FiniteMetric::from_linf_points(
            vec!["1".into(), "2".into(), "3".into()],
            &t.points
                .iter()
                .map(|p| crate::metric::PointN(vec![p.x.clone(), p.y.clone()]))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let report = check_isometry(&region, &base, &t.points, 10, 42);
        assert_ne!(report, IsometryReport::Pass);
    }
}
