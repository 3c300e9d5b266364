//! Region complexes: finite unions of points, segments and convex cells in
//! the l-infinity plane, with all edges in the four grid/diagonal
//! directions.
//!
//! The module computes orthogonal hulls of finite point sets, connected
//! components, an exact geodesic-convexity decision, and the minimal closed
//! geodesically convex superset (hull components joined by monotone
//! staircase bridges). Everything is exact; complexes are kept in a
//! canonical form so equal sets compare equal feature-for-feature.
//!
//! Most computations run in rotated coordinates (`Point2::to_l1`) where
//! sup-geodesics are coordinate-monotone staircases and hull features are
//! axis-aligned. Geodesic convexity is decided by the line criterion: a
//! closed set here is geodesically convex iff it is connected and meets
//! every rotated-axis-parallel line in a connected interval (staircase
//! connectivity of closed planar sets).

use crate::clip::{
    area2, clip_halfplane, intersect_convex, is_convex_ccw, orient, point_in_convex,
    point_on_segment, segments_touch, simplify_convex,
};
use crate::geometry::{GeodesicPolyline, Point2};
use crate::rat::{rat, rat_abs, rat_int, rat_max, rat_min, Rat};
use num_traits::{Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use thiserror::Error;

/// A single feature of a region complex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Feature {
    Point(Point2),
    Segment(Point2, Point2),
    Cell(Vec<Point2>),
}

impl Feature {
    /// The feature as a vertex loop (point: 1 vertex, segment: 2, cell: n).
    pub fn loop_vertices(&self) -> Vec<Point2> {
        match self {
            Feature::Point(p) => vec![p.clone()],
            Feature::Segment(a, b) => vec![a.clone(), b.clone()],
            Feature::Cell(vs) => vs.clone(),
        }
    }

    /// Whether the closed feature contains `p`.
    pub fn contains(&self, p: &Point2) -> bool {
        match self {
            Feature::Point(q) => q == p,
            Feature::Segment(a, b) => point_on_segment(a, b, p),
            Feature::Cell(vs) => point_in_convex(vs, p),
        }
    }

    /// Whether two closed features share at least one point.
    pub fn touches(&self, other: &Feature) -> bool {
        use Feature::*;
        match (self, other) {
            (Point(p), _) => other.contains(p),
            (_, Point(p)) => self.contains(p),
            (Segment(a, b), Segment(c, d)) => segments_touch(a, b, c, d),
            (Segment(a, b), Cell(vs)) | (Cell(vs), Segment(a, b)) => {
                if point_in_convex(vs, a) || point_in_convex(vs, b) {
                    return true;
                }
                let n = vs.len();
                (0..n).any(|i| segments_touch(a, b, &vs[i], &vs[(i + 1) % n]))
            }
            (Cell(us), Cell(vs)) => {
                us.iter().any(|p| point_in_convex(vs, p))
                    || vs.iter().any(|p| point_in_convex(us, p))
                    || {
                        let (n, m) = (us.len(), vs.len());
                        (0..n).any(|i| {
                            (0..m).any(|j| {
                                segments_touch(
                                    &us[i],
                                    &us[(i + 1) % n],
                                    &vs[j],
                                    &vs[(j + 1) % m],
                                )
                            })
                        })
                    }
            }
        }
    }

    /// Applies a coordinate map to every vertex.
    pub fn map(&self, f: &impl Fn(&Point2) -> Point2) -> Feature {
        match self {
            Feature::Point(p) => Feature::Point(f(p)),
            Feature::Segment(a, b) => Feature::Segment(f(a), f(b)),
            Feature::Cell(vs) => Feature::Cell(vs.iter().map(f).collect()),
        }
    }

    /// Edges of the feature (none for points, one for segments).
    fn edges(&self) -> Vec<(Point2, Point2)> {
        match self {
            Feature::Point(_) => Vec::new(),
            Feature::Segment(a, b) => vec![(a.clone(), b.clone())],
            Feature::Cell(vs) => {
                let n = vs.len();
                (0..n).map(|i| (vs[i].clone(), vs[(i + 1) % n].clone())).collect()
            }
        }
    }
}

/// Rejections from building or sampling a region complex.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegionError {
    #[error("region complex has no features")]
    EmptyRegion,
    #[error("edge from ({0:?}) to ({1:?}) is not in an allowed direction")]
    InvalidDirection(Point2, Point2),
    #[error("zero-length segment at {0:?}")]
    DegenerateSegment(Point2),
    #[error("cell is not a convex polygon with positive area")]
    NonConvexCell,
    #[error("cells have overlapping interiors")]
    OverlappingCells,
    #[error("sample point request on empty region")]
    NothingToSample,
}

fn direction_allowed(a: &Point2, b: &Point2) -> bool {
    let (dx, dy) = b.sub(a);
    dx.is_zero() || dy.is_zero() || rat_abs(&dx) == rat_abs(&dy)
}

/// A canonical region complex. Construction validates the invariants:
/// nonempty, all edges in the four allowed directions, cells convex ccw with
/// positive area and pairwise disjoint interiors, segments not contained in
/// cells, isolated points not contained in other features, collinear
/// touching segments merged, everything sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionComplex {
    points: Vec<Point2>,
    segments: Vec<(Point2, Point2)>,
    cells: Vec<Vec<Point2>>,
}

impl RegionComplex {
    pub fn new(
        points: Vec<Point2>,
        segments: Vec<(Point2, Point2)>,
        cells: Vec<Vec<Point2>>,
    ) -> Result<Self, RegionError> {
        // Normalize cells: simplify collinear vertices, force ccw, validate.
        let mut norm_cells = Vec::new();
        for cell in cells {
            let mut vs = simplify_convex(&cell);
            if vs.len() < 3 {
                return Err(RegionError::NonConvexCell);
            }
            if area2(&vs).is_negative() {
                vs.reverse();
            }
            if !is_convex_ccw(&vs) {
                return Err(RegionError::NonConvexCell);
            }
            let n = vs.len();
            for i in 0..n {
                let (a, b) = (&vs[i], &vs[(i + 1) % n]);
                if !direction_allowed(a, b) {
                    return Err(RegionError::InvalidDirection(a.clone(), b.clone()));
                }
            }
            // Rotate so the lexicographically smallest vertex comes first.
            let min_idx = (0..vs.len()).min_by_key(|&i| vs[i].clone()).unwrap();
            vs.rotate_left(min_idx);
            norm_cells.push(vs);
        }
        for i in 0..norm_cells.len() {
            for j in (i + 1)..norm_cells.len() {
                let inter = intersect_convex(&norm_cells[i], &[&norm_cells[j]]);
                if inter.len() >= 3 && area2(&inter).is_positive() {
                    return Err(RegionError::OverlappingCells);
                }
            }
        }
        // Normalize segments.
        let mut norm_segs = Vec::new();
        for (a, b) in segments {
            if a == b {
                return Err(RegionError::DegenerateSegment(a));
            }
            if !direction_allowed(&a, &b) {
                return Err(RegionError::InvalidDirection(a, b));
            }
            norm_segs.push(if a <= b { (a, b) } else { (b, a) });
        }
        let norm_segs = merge_collinear(norm_segs);
        let norm_segs: Vec<_> = norm_segs
            .into_iter()
            .filter(|(a, b)| {
                !norm_cells
                    .iter()
                    .any(|c| point_in_convex(c, a) && point_in_convex(c, b))
            })
            .collect();
        // Drop points covered by other features.
        let mut norm_points: Vec<_> = points
            .into_iter()
            .filter(|p| {
                !norm_segs.iter().any(|(a, b)| point_on_segment(a, b, p))
                    && !norm_cells.iter().any(|c| point_in_convex(c, p))
            })
            .collect();
        norm_points.sort();
        norm_points.dedup();
        let mut norm_segs = norm_segs;
        norm_segs.sort();
        norm_segs.dedup();
        let mut norm_cells = norm_cells;
        norm_cells.sort();
        norm_cells.dedup();
        if norm_points.is_empty() && norm_segs.is_empty() && norm_cells.is_empty() {
            return Err(RegionError::EmptyRegion);
        }
        Ok(RegionComplex { points: norm_points, segments: norm_segs, cells: norm_cells })
    }

    pub fn from_features(features: Vec<Feature>) -> Result<Self, RegionError> {
        let mut points = Vec::new();
        let mut segments = Vec::new();
        let mut cells = Vec::new();
        for f in features {
            match f {
                Feature::Point(p) => points.push(p),
                Feature::Segment(a, b) => segments.push((a, b)),
                Feature::Cell(vs) => cells.push(vs),
            }
        }
        RegionComplex::new(points, segments, cells)
    }

    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    pub fn segments(&self) -> &[(Point2, Point2)] {
        &self.segments
    }

    pub fn cells(&self) -> &[Vec<Point2>] {
        &self.cells
    }

    /// All features in canonical order (points, then segments, then cells).
    pub fn features(&self) -> Vec<Feature> {
        let mut out = Vec::new();
        out.extend(self.points.iter().cloned().map(Feature::Point));
        out.extend(self.segments.iter().cloned().map(|(a, b)| Feature::Segment(a, b)));
        out.extend(self.cells.iter().cloned().map(Feature::Cell));
        out
    }

    /// Whether the closed region contains `p`.
    pub fn contains(&self, p: &Point2) -> bool {
        self.features().iter().any(|f| f.contains(p))
    }

    /// Applies a coordinate map (must preserve the allowed directions).
    pub fn map_points(&self, f: &impl Fn(&Point2) -> Point2) -> RegionComplex {
        RegionComplex::from_features(self.features().iter().map(|x| x.map(f)).collect())
            .expect("mapped complex remains valid")
    }

    /// Connected components, each as its own complex, ordered canonically.
    pub fn components(&self) -> Vec<RegionComplex> {
        let feats = self.features();
        let n = feats.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, i: usize) -> usize {
            if parent[i] != i {
                let r = find(parent, parent[i]);
                parent[i] = r;
            }
            parent[i]
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if feats[i].touches(&feats[j]) {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
        let mut groups: Vec<(usize, Vec<Feature>)> = Vec::new();
        for i in 0..n {
            let root = find(&mut parent, i);
            match groups.iter_mut().find(|(r, _)| *r == root) {
                Some((_, g)) => g.push(feats[i].clone()),
                None => groups.push((root, vec![feats[i].clone()])),
            }
        }
        let mut comps: Vec<RegionComplex> = groups
            .into_iter()
            .map(|(_, g)| RegionComplex::from_features(g).expect("component is valid"))
            .collect();
        comps.sort_by_key(|c| c.features()[0].loop_vertices()[0].clone());
        comps
    }

    /// All feature vertices plus pairwise edge-intersection points, sorted.
    pub fn arrangement_vertices(&self) -> Vec<Point2> {
        let feats = self.features();
        let mut set: BTreeSet<Point2> = BTreeSet::new();
        for f in &feats {
            for v in f.loop_vertices() {
                set.insert(v);
            }
        }
        let edges: Vec<(Point2, Point2)> = feats.iter().flat_map(|f| f.edges()).collect();
        for i in 0..edges.len() {
            for j in (i + 1)..edges.len() {
                let (a, b) = (&edges[i].0, &edges[i].1);
                let (c, d) = (&edges[j].0, &edges[j].1);
                if let Some(p) = proper_intersection(a, b, c, d) {
                    set.insert(p);
                }
            }
        }
        set.into_iter().collect()
    }

    /// Bounding box (min corner, max corner).
    pub fn bounding_box(&self) -> (Point2, Point2) {
        let mut vs = self.features().iter().flat_map(|f| f.loop_vertices()).collect::<Vec<_>>();
        let first = vs.pop().expect("nonempty region");
        let mut lo = first.clone();
        let mut hi = first;
        for v in vs {
            lo = Point2::new(rat_min(&lo.x, &v.x), rat_min(&lo.y, &v.y));
            hi = Point2::new(rat_max(&hi.x, &v.x), rat_max(&hi.y, &v.y));
        }
        (lo, hi)
    }

    /// Geodesic convexity decision. Returns `None` when convex, otherwise a
    /// witness pair `(p, q)` of region points such that no geodesic between
    /// them stays inside the region.
    pub fn geodesic_convexity_witness(&self) -> Option<(Point2, Point2)> {
        let comps = self.components();
        if comps.len() > 1 {
            let rep = |c: &RegionComplex| c.arrangement_vertices()[0].clone();
            return Some((rep(&comps[0]), rep(&comps[1])));
        }
        // Line criterion in rotated coordinates: every rotated-vertical and
        // rotated-horizontal line must meet the region in a single interval.
        let l1_feats: Vec<Feature> =
            self.features().iter().map(|f| f.map(&|p| p.to_l1())).collect();
        let verts: Vec<Point2> = self
            .arrangement_vertices()
            .iter()
            .map(|p| p.to_l1())
            .collect();
        for swap in [false, true] {
            // swap=false: vertical lines u=c; swap=true: horizontal lines v=c.
            let coord = |p: &Point2| if swap { p.y.clone() } else { p.x.clone() };
            let mut crits: Vec<Rat> = verts.iter().map(coord).collect();
            crits.sort();
            crits.dedup();
            let mut candidates = Vec::new();
            for w in crits.windows(2) {
                candidates.push(w[0].clone());
                candidates.push((&w[0] + &w[1]) / rat_int(2));
            }
            if let Some(last) = crits.last() {
                candidates.push(last.clone());
            }
            for c in candidates {
                let mut intervals: Vec<(Rat, Rat)> = Vec::new();
                for f in &l1_feats {
                    if let Some(iv) = line_interval(f, &c, swap) {
                        intervals.push(iv);
                    }
                }
                if intervals.len() < 2 {
                    continue;
                }
                intervals.sort();
                let mut hi = intervals[0].1.clone();
                for iv in &intervals[1..] {
                    if iv.0 > hi {
                        // Gap: two region points on the same rotated line
                        // with the unique geodesic between them escaping.
                        let mk = |other: &Rat| {
                            let p = if swap {
                                Point2::new(other.clone(), c.clone())
                            } else {
                                Point2::new(c.clone(), other.clone())
                            };
                            p.from_l1()
                        };
                        return Some((mk(&hi), mk(&iv.0)));
                    }
                    hi = rat_max(&hi, &iv.1);
                }
            }
        }
        None
    }

    pub fn is_geodesically_convex(&self) -> bool {
        self.geodesic_convexity_witness().is_none()
    }

    /// Deterministic seeded sample of `n` region points: first one
    /// representative per feature (in canonical order), then seeded draws.
    pub fn sample_points(&self, n: usize, seed: u64) -> Vec<Point2> {
        let feats = self.features();
        let mut out = Vec::new();
        for f in &feats {
            if out.len() >= n {
                break;
            }
            out.push(representative(f));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        while out.len() < n {
            let f = &feats[rng.gen_range(0..feats.len())];
            out.push(random_point(f, &mut rng));
        }
        out
    }

    /// Whether the closed segment [a, b] lies inside the region.
    pub fn covers_segment(&self, a: &Point2, b: &Point2) -> bool {
        if a == b {
            return self.contains(a);
        }
        // Collect parameter intervals of the segment covered by features and
        // check they merge to [0, 1].
        let mut intervals: Vec<(Rat, Rat)> = Vec::new();
        for f in self.features() {
            if let Some(iv) = segment_cover_interval(&f, a, b) {
                intervals.push(iv);
            }
        }
        intervals.sort();
        let mut reach = Rat::zero();
        for (lo, hi) in intervals {
            if lo > reach {
                return false;
            }
            reach = rat_max(&reach, &hi);
            if reach >= rat_int(1) {
                return true;
            }
        }
        false
    }

    /// Constructs a geodesic between two region points as a monotone
    /// staircase (in rotated coordinates) over the coordinate grid of the
    /// region. Complete for regions whose features are axis-aligned in
    /// rotated coordinates (everything produced by the hull pipeline).
    pub fn staircase_path(&self, p: &Point2, q: &Point2) -> Option<GeodesicPolyline> {
        if !self.contains(p) || !self.contains(q) {
            return None;
        }
        if p == q {
            return GeodesicPolyline::new(vec![p.clone(), q.clone()]).ok();
        }
        let pl = p.to_l1();
        let ql = q.to_l1();
        let mut us: Vec<Rat> = vec![pl.x.clone(), ql.x.clone()];
        let mut vs: Vec<Rat> = vec![pl.y.clone(), ql.y.clone()];
        for f in self.features() {
            for v in f.map(&|p| p.to_l1()).loop_vertices() {
                us.push(v.x);
                vs.push(v.y);
            }
        }
        us.sort();
        us.dedup();
        vs.sort();
        vs.dedup();
        // Keep only grid coordinates inside the monotone rectangle of p, q.
        let (ulo, uhi) = if pl.x <= ql.x { (&pl.x, &ql.x) } else { (&ql.x, &pl.x) };
        let (vlo, vhi) = if pl.y <= ql.y { (&pl.y, &ql.y) } else { (&ql.y, &pl.y) };
        let us: Vec<Rat> = us.into_iter().filter(|u| u >= ulo && u <= uhi).collect();
        let vs: Vec<Rat> = vs.into_iter().filter(|v| v >= vlo && v <= vhi).collect();
        let iu = |u: &Rat| us.iter().position(|x| x == u).unwrap();
        let iv = |v: &Rat| vs.iter().position(|x| x == v).unwrap();
        let (pi, pj) = (iu(&pl.x), iv(&pl.y));
        let (qi, qj) = (iu(&ql.x), iv(&ql.y));
        let du: i64 = if qi > pi { 1 } else if qi < pi { -1 } else { 0 };
        let dv: i64 = if qj > pj { 1 } else if qj < pj { -1 } else { 0 };
        let grid_pt = |i: usize, j: usize| Point2::new(us[i].clone(), vs[j].clone()).from_l1();
        let idx = |i: usize, j: usize| i * vs.len() + j;
        let mut prev: Vec<Option<usize>> = vec![None; us.len() * vs.len()];
        let mut queue = std::collections::VecDeque::new();
        prev[idx(pi, pj)] = Some(idx(pi, pj));
        queue.push_back((pi, pj));
        while let Some((i, j)) = queue.pop_front() {
            if (i, j) == (qi, qj) {
                break;
            }
            let mut moves: Vec<(usize, usize)> = Vec::new();
            if du != 0 && i as i64 + du >= 0 && ((i as i64 + du) as usize) < us.len() {
                moves.push(((i as i64 + du) as usize, j));
            }
            if dv != 0 && j as i64 + dv >= 0 && ((j as i64 + dv) as usize) < vs.len() {
                moves.push((i, (j as i64 + dv) as usize));
            }
            for (ni, nj) in moves {
                if prev[idx(ni, nj)].is_none()
                    && self.covers_segment(&grid_pt(i, j), &grid_pt(ni, nj))
                {
                    prev[idx(ni, nj)] = Some(idx(i, j));
                    queue.push_back((ni, nj));
                }
            }
        }
        prev[idx(qi, qj)]?;
        let mut path = vec![(qi, qj)];
        let mut cur = idx(qi, qj);
        while cur != idx(pi, pj) {
            cur = prev[cur].unwrap();
            path.push((cur / vs.len(), cur % vs.len()));
        }
        path.reverse();
        let mut pts: Vec<Point2> = path.into_iter().map(|(i, j)| grid_pt(i, j)).collect();
        // Drop collinear interior vertices.
        let mut simplified: Vec<Point2> = Vec::new();
        for pt in pts.drain(..) {
            while simplified.len() >= 2 {
                let a = &simplified[simplified.len() - 2];
                let b = &simplified[simplified.len() - 1];
                if orient(a, b, &pt).is_zero() {
                    simplified.pop();
                } else {
                    break;
                }
            }
            simplified.push(pt);
        }
        if simplified.len() < 2 {
            simplified.push(simplified[0].clone());
        }
        Some(GeodesicPolyline::new(simplified).expect("monotone staircase is a geodesic"))
    }

    /// Midpoint of some geodesic between two region points, if a staircase
    /// geodesic inside the region is found.
    pub fn midpoint_between(&self, p: &Point2, q: &Point2) -> Option<Point2> {
        self.staircase_path(p, q).map(|g| g.midpoint())
    }
}

/// Canonical representative of a feature: the point itself, a segment's
/// midpoint, a cell's vertex centroid.
fn representative(f: &Feature) -> Point2 {
    match f {
        Feature::Point(p) => p.clone(),
        Feature::Segment(a, b) => {
            let two = rat_int(2);
            Point2::new((&a.x + &b.x) / &two, (&a.y + &b.y) / &two)
        }
        Feature::Cell(vs) => {
            let n = rat_int(vs.len() as i64);
            let sx: Rat = vs.iter().map(|v| v.x.clone()).fold(Rat::zero(), |a, b| a + b);
            let sy: Rat = vs.iter().map(|v| v.y.clone()).fold(Rat::zero(), |a, b| a + b);
            Point2::new(sx / &n, sy / &n)
        }
    }
}

/// Seeded random point of a feature (exact rational coordinates).
fn random_point(f: &Feature, rng: &mut ChaCha8Rng) -> Point2 {
    match f {
        Feature::Point(p) => p.clone(),
        Feature::Segment(a, b) => {
            let lambda = rat(rng.gen_range(0..=64), 64);
            let (dx, dy) = b.sub(a);
            a.offset(&(&dx * &lambda), &(&dy * &lambda))
        }
        Feature::Cell(vs) => {
            // Random convex combination of the vertices: always inside.
            let weights: Vec<Rat> = vs.iter().map(|_| rat_int(rng.gen_range(1..=16))).collect();
            let total: Rat = weights.iter().fold(Rat::zero(), |a, b| a + b.clone());
            let mut x = Rat::zero();
            let mut y = Rat::zero();
            for (v, w) in vs.iter().zip(weights.iter()) {
                x = x + &v.x * w;
                y = y + &v.y * w;
            }
            Point2::new(x / &total, y / &total)
        }
    }
}

/// Intersection point of two non-collinear edges, if they properly cross or
/// touch at a point that may not be a vertex.
fn proper_intersection(a: &Point2, b: &Point2, c: &Point2, d: &Point2) -> Option<Point2> {
    let (ex, ey) = b.sub(a);
    let (fx, fy) = d.sub(c);
    let denom = &ex * &fy - &ey * &fx;
    if denom.is_zero() {
        return None;
    }
    let (wx, wy) = c.sub(a);
    let t = (&wx * &fy - &wy * &fx) / &denom;
    let s = (&wx * &ey - &wy * &ex) / &denom;
    let unit = rat_int(1);
    if t.is_negative() || t > unit || s.is_negative() || s > unit {
        return None;
    }
    Some(a.offset(&(&ex * &t), &(&ey * &t)))
}

/// Interval of the `other` coordinate where a feature (in rotated
/// coordinates) meets the line `coord = c`; `swap` selects horizontal lines.
fn line_interval(f: &Feature, c: &Rat, swap: bool) -> Option<(Rat, Rat)> {
    let sel = |p: &Point2| if swap { (p.y.clone(), p.x.clone()) } else { (p.x.clone(), p.y.clone()) };
    let mut lo: Option<Rat> = None;
    let mut hi: Option<Rat> = None;
    let mut add = |v: Rat| {
        lo = Some(match &lo {
            None => v.clone(),
            Some(l) => rat_min(l, &v),
        });
        hi = Some(match &hi {
            None => v,
            Some(h) => rat_max(h, &v),
        });
    };
    let loop_vs = f.loop_vertices();
    let n = loop_vs.len();
    if n == 1 {
        let (u, v) = sel(&loop_vs[0]);
        if &u == c {
            return Some((v.clone(), v));
        }
        return None;
    }
    for i in 0..n {
        let p = &loop_vs[i];
        let q = &loop_vs[(i + 1) % n];
        if n == 2 && i == 1 {
            break;
        }
        let (pu, pv) = sel(p);
        let (qu, qv) = sel(q);
        if &pu == c {
            add(pv.clone());
        }
        if &qu == c {
            add(qv.clone());
        }
        let du = &qu - &pu;
        if !du.is_zero() {
            let t = (c - &pu) / &du;
            if !t.is_negative() && t <= rat_int(1) {
                add(&pv + &(&(&qv - &pv) * &t));
            }
        }
    }
    match (lo, hi) {
        (Some(l), Some(h)) => Some((l, h)),
        _ => None,
    }
}

/// Parameter interval of [a,b] covered by a feature, if nonempty.
fn segment_cover_interval(f: &Feature, a: &Point2, b: &Point2) -> Option<(Rat, Rat)> {
    match f {
        Feature::Point(p) => {
            if !point_on_segment(a, b, p) {
                return None;
            }
            let t = segment_param(a, b, p);
            Some((t.clone(), t))
        }
        Feature::Segment(c, d) => {
            if !orient(a, b, c).is_zero() || !orient(a, b, d).is_zero() {
                // Not collinear: at most a single touching point.
                let touch = [c, d]
                    .into_iter()
                    .find(|p| point_on_segment(a, b, p))
                    .cloned()
                    .or_else(|| proper_intersection(a, b, c, d));
                return touch.map(|p| {
                    let t = segment_param(a, b, &p);
                    (t.clone(), t)
                });
            }
            let tc = segment_param(a, b, c);
            let td = segment_param(a, b, d);
            let (lo, hi) = if tc <= td { (tc, td) } else { (td, tc) };
            let lo = rat_max(&lo, &Rat::zero());
            let hi = rat_min(&hi, &rat_int(1));
            if lo <= hi {
                Some((lo, hi))
            } else {
                None
            }
        }
        Feature::Cell(vs) => {
            let clipped = crate::clip::edge_halfplanes(vs).iter().fold(
                vec![a.clone(), b.clone()],
                |acc, hp| clip_halfplane(&acc, hp),
            );
            if clipped.is_empty() {
                return None;
            }
            let params: Vec<Rat> = clipped.iter().map(|p| segment_param(a, b, p)).collect();
            let lo = params.iter().fold(rat_int(1), |acc, t| rat_min(&acc, t));
            let hi = params.iter().fold(Rat::zero(), |acc, t| rat_max(&acc, t));
            Some((lo, hi))
        }
    }
}

/// Parameter of a collinear point on [a,b] (a=0, b=1).
fn segment_param(a: &Point2, b: &Point2, p: &Point2) -> Rat {
    let (dx, dy) = b.sub(a);
    if !dx.is_zero() {
        (&p.x - &a.x) / &dx
    } else {
        (&p.y - &a.y) / &dy
    }
}

/// Merges collinear touching/overlapping segments (inputs normalized a<=b).
fn merge_collinear(segs: Vec<(Point2, Point2)>) -> Vec<(Point2, Point2)> {
    // Group by supporting line: key is (direction class, offset).
    #[derive(PartialEq, Eq, PartialOrd, Ord, Clone)]
    enum LineKey {
        H(Rat),
        V(Rat),
        DiagUp(Rat),
        DiagDown(Rat),
    }
    let key = |a: &Point2, b: &Point2| -> LineKey {
        let (dx, dy) = b.sub(a);
        if dy.is_zero() {
            LineKey::H(a.y.clone())
        } else if dx.is_zero() {
            LineKey::V(a.x.clone())
        } else if dx == dy {
            LineKey::DiagUp(&a.y - &a.x)
        } else {
            LineKey::DiagDown(&a.y + &a.x)
        }
    };
    let param = |k: &LineKey, p: &Point2| -> Rat {
        match k {
            LineKey::H(_) | LineKey::DiagUp(_) | LineKey::DiagDown(_) => p.x.clone(),
            LineKey::V(_) => p.y.clone(),
        }
    };
    let mut groups: Vec<(LineKey, Vec<(Rat, Rat, Point2, Point2)>)> = Vec::new();
    for (a, b) in segs {
        let k = key(&a, &b);
        let (ta, tb) = (param(&k, &a), param(&k, &b));
        let entry = (rat_min(&ta, &tb), rat_max(&ta, &tb), a, b);
        match groups.iter_mut().find(|(gk, _)| *gk == k) {
            Some((_, v)) => v.push(entry),
            None => groups.push((k, vec![entry])),
        }
    }
    let mut out = Vec::new();
    for (k, mut items) in groups {
        items.sort_by(|x, y| (x.0.clone(), x.1.clone()).cmp(&(y.0.clone(), y.1.clone())));
        let interp = |t: &Rat, a: &Point2, b: &Point2| -> Point2 {
            let ta = param(&k, a);
            let tb = param(&k, b);
            let lambda = (t - &ta) / (&tb - &ta);
            let (dx, dy) = b.sub(a);
            a.offset(&(&dx * &lambda), &(&dy * &lambda))
        };
        let mut cur: Option<(Rat, Rat, Point2, Point2)> = None;
        for (lo, hi, a, b) in items {
            match cur.take() {
                None => cur = Some((lo, hi, a, b)),
                Some((clo, chi, ca, cb)) => {
                    if lo <= chi {
                        let nhi = rat_max(&chi, &hi);
                        let end = interp(&nhi, &a, &b);
                        cur = Some((clo, nhi, ca, end));
                    } else {
                        out.push(order_seg(ca, cb));
                        cur = Some((lo, hi, a, b));
                    }
                }
            }
        }
        if let Some((_, _, ca, cb)) = cur {
            out.push(order_seg(ca, cb));
        }
    }
    out
}

fn order_seg(a: Point2, b: Point2) -> (Point2, Point2) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Orthogonal hull of a finite point set: the closed set of points all four
/// of whose sectors contain an input point. Computed on the rotated grid,
/// where sectors are quadrants and the hull is rectilinear.
pub fn orthogonal_hull(points: &[Point2]) -> RegionComplex {
    assert!(!points.is_empty(), "hull of an empty point set");
    let mut pts: Vec<Point2> = points.iter().map(|p| p.to_l1()).collect();
    pts.sort();
    pts.dedup();
    let mut us: Vec<Rat> = pts.iter().map(|p| p.x.clone()).collect();
    let mut vs: Vec<Rat> = pts.iter().map(|p| p.y.clone()).collect();
    us.sort();
    us.dedup();
    vs.sort();
    vs.dedup();
    let surrounded = |u: &Rat, v: &Rat| -> bool {
        let mut ne = false;
        let mut nw = false;
        let mut se = false;
        let mut sw = false;
        for p in &pts {
            let right = &p.x >= u;
            let left = &p.x <= u;
            let up = &p.y >= v;
            let down = &p.y <= v;
            ne |= right && up;
            nw |= left && up;
            se |= right && down;
            sw |= left && down;
        }
        ne && nw && se && sw
    };
    let two = rat_int(2);
    let mid = |a: &Rat, b: &Rat| (a + b) / &two;
    let nu = us.len();
    let nv = vs.len();
    // Cells between consecutive grid coordinates.
    let mut cell_on = vec![vec![false; nv.saturating_sub(1)]; nu.saturating_sub(1)];
    for i in 0..nu.saturating_sub(1) {
        for j in 0..nv.saturating_sub(1) {
            cell_on[i][j] = surrounded(&mid(&us[i], &us[i + 1]), &mid(&vs[j], &vs[j + 1]));
        }
    }
    let mut features: Vec<Feature> = Vec::new();
    for i in 0..nu.saturating_sub(1) {
        for j in 0..nv.saturating_sub(1) {
            if cell_on[i][j] {
                features.push(Feature::Cell(vec![
                    Point2::new(us[i].clone(), vs[j].clone()),
                    Point2::new(us[i + 1].clone(), vs[j].clone()),
                    Point2::new(us[i + 1].clone(), vs[j + 1].clone()),
                    Point2::new(us[i].clone(), vs[j + 1].clone()),
                ]));
            }
        }
    }
    // Horizontal edges not covered by a surrounded cell above or below.
    for i in 0..nu.saturating_sub(1) {
        for (j, v) in vs.iter().enumerate() {
            let covered = (j > 0 && cell_on[i][j - 1]) || (j < nv - 1 && cell_on[i][j]);
            if !covered && surrounded(&mid(&us[i], &us[i + 1]), v) {
                features.push(Feature::Segment(
                    Point2::new(us[i].clone(), v.clone()),
                    Point2::new(us[i + 1].clone(), v.clone()),
                ));
            }
        }
    }
    // Vertical edges.
    for (i, u) in us.iter().enumerate() {
        for j in 0..nv.saturating_sub(1) {
            let covered = (i > 0 && cell_on[i - 1][j]) || (i < nu - 1 && cell_on[i][j]);
            if !covered && surrounded(u, &mid(&vs[j], &vs[j + 1])) {
                features.push(Feature::Segment(
                    Point2::new(u.clone(), vs[j].clone()),
                    Point2::new(u.clone(), vs[j + 1].clone()),
                ));
            }
        }
    }
    // Isolated vertices.
    for u in &us {
        for v in &vs {
            let p = Point2::new(u.clone(), v.clone());
            if surrounded(u, v) && !features.iter().any(|f| f.contains(&p)) {
                features.push(Feature::Point(p));
            }
        }
    }
    let mapped: Vec<Feature> = features.iter().map(|f| f.map(&|p| p.from_l1())).collect();
    RegionComplex::from_features(mapped).expect("hull is a valid complex")
}

/// Minimal closed geodesically convex superset of a finite point set: the
/// orthogonal hull with consecutive components joined by monotone staircase
/// bridges (one or two diagonal-direction segments each).
pub fn minimal_gch(points: &[Point2]) -> RegionComplex {
    let hull = orthogonal_hull(points);
    let comps = hull.components();
    if comps.len() == 1 {
        return hull;
    }
    // Order components by rotated u-extent (extents are pairwise disjoint
    // because the hull meets every rotated-vertical line in an interval).
    let mut ordered: Vec<(Rat, RegionComplex)> = comps
        .into_iter()
        .map(|c| {
            let min_u = c
                .features()
                .iter()
                .flat_map(|f| f.map(&|p| p.to_l1()).loop_vertices())
                .map(|p| p.x)
                .min()
                .expect("component has vertices");
            (min_u, c)
        })
        .collect();
    ordered.sort_by(|a, b| a.0.cmp(&b.0));
    let l1_vertices = |c: &RegionComplex| -> Vec<Point2> {
        c.features()
            .iter()
            .flat_map(|f| f.map(&|p| p.to_l1()).loop_vertices())
            .collect()
    };
    let mut features: Vec<Feature> = hull
        .features()
        .iter()
        .map(|f| f.map(&|p| p.to_l1()))
        .collect();
    for w in ordered.windows(2) {
        let left = l1_vertices(&w[0].1);
        let right = l1_vertices(&w[1].1);
        let left_max_v = left.iter().map(|p| p.y.clone()).max().unwrap();
        let right_min_v = right.iter().map(|p| p.y.clone()).min().unwrap();
        let ascending = right_min_v > left_max_v;
        // Closest pair: extreme corners of the facing sides. The objective
        // u+v (ascending) or u-v (descending) is linear, so the optimum is a
        // vertex; ties break to the lexicographically smallest point.
        let score = |p: &Point2| if ascending { &p.x + &p.y } else { &p.x - &p.y };
        let a = left
            .iter()
            .max_by(|p, q| (score(p), std::cmp::Reverse((*p).clone())).cmp(&(score(q), std::cmp::Reverse((*q).clone()))))
            .unwrap()
            .clone();
        let b = right
            .iter()
            .min_by(|p, q| (score(p), (*p).clone()).cmp(&(score(q), (*q).clone())))
            .unwrap()
            .clone();
        // Monotone L-bridge, sweep axis first.
        let corner = Point2::new(b.x.clone(), a.y.clone());
        if corner != a {
            features.push(Feature::Segment(a.clone(), corner.clone()));
        }
        if corner != b {
            features.push(Feature::Segment(corner, b));
        }
    }
    let mapped: Vec<Feature> = features.iter().map(|f| f.map(&|p| p.from_l1())).collect();
    let out = RegionComplex::from_features(mapped).expect("bridged hull is a valid complex");
    debug_assert!(points.iter().all(|p| out.contains(p)));
    assert!(
        out.geodesic_convexity_witness().is_none(),
        "bridged hull must be geodesically convex"
    );
    out
}
