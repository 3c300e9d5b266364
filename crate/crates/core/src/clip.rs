//! Exact convex-polygon primitives.
//!
//! All predicates and constructions here are exact over the rationals:
//! orientation tests, point/segment/polygon containment and intersection,
//! half-plane clipping, and first-hit queries of rays against features.
//! Polygons are vertex loops; convex ones are kept counterclockwise.

use crate::geometry::Point2;
use crate::rat::{rat_int, Rat};
use num_traits::{Signed, Zero};

/// Cross product (b - a) x (c - a); positive means `c` is left of `a -> b`.
pub fn orient(a: &Point2, b: &Point2, c: &Point2) -> Rat {
    let (abx, aby) = b.sub(a);
    let (acx, acy) = c.sub(a);
    &abx * &acy - &aby * &acx
}

/// Closed half-plane `a*x + b*y >= c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfPlane {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
}

impl HalfPlane {
    /// Half-plane to the left of the directed line `p -> q`.
    pub fn left_of(p: &Point2, q: &Point2) -> HalfPlane {
        let a = &p.y - &q.y;
        let b = &q.x - &p.x;
        let c = &a * &p.x + &b * &p.y;
        HalfPlane { a, b, c }
    }

    pub fn value(&self, p: &Point2) -> Rat {
        &self.a * &p.x + &self.b * &p.y - &self.c
    }

    pub fn contains(&self, p: &Point2) -> bool {
        !self.value(p).is_negative()
    }
}

/// Clips a convex vertex loop (possibly degenerate: 1 or 2 vertices) to a
/// closed half-plane, returning the clipped loop (possibly empty).
pub fn clip_halfplane(poly: &[Point2], hp: &HalfPlane) -> Vec<Point2> {
    match poly.len() {
        0 => return Vec::new(),
        1 => {
            return if hp.contains(&poly[0]) { poly.to_vec() } else { Vec::new() };
        }
        _ => {}
    }
    let mut out: Vec<Point2> = Vec::new();
    let n = poly.len();
    for i in 0..n {
        let cur = &poly[i];
        let nxt = &poly[(i + 1) % n];
        let vc = hp.value(cur);
        let vn = hp.value(nxt);
        if !vc.is_negative() {
            out.push(cur.clone());
        }
        if (vc.is_negative() && vn.is_positive()) || (vc.is_positive() && vn.is_negative()) {
            // Exact crossing point of the edge with the boundary line.
            let t = &vc / &(&vc - &vn);
            let (dx, dy) = nxt.sub(cur);
            out.push(cur.offset(&(&dx * &t), &(&dy * &t)));
        }
    }
    dedup_loop(out)
}

/// Removes consecutive duplicate vertices (cyclically).
fn dedup_loop(mut v: Vec<Point2>) -> Vec<Point2> {
    v.dedup();
    while v.len() > 1 && v.first() == v.last() {
        v.pop();
    }
    v
}

/// Half-planes of a convex ccw polygon (one per edge).
pub fn edge_halfplanes(poly: &[Point2]) -> Vec<HalfPlane> {
    let n = poly.len();
    (0..n)
        .filter(|&i| poly[i] != poly[(i + 1) % n])
        .map(|i| HalfPlane::left_of(&poly[i], &poly[(i + 1) % n]))
        .collect()
}

/// Twice the signed area of a vertex loop (positive for ccw).
pub fn area2(poly: &[Point2]) -> Rat {
    let n = poly.len();
    let mut acc = Rat::zero();
    for i in 0..n {
        let p = &poly[i];
        let q = &poly[(i + 1) % n];
        acc = acc + (&p.x * &q.y - &q.x * &p.y);
    }
    acc
}

/// Whether a vertex loop is convex (all turns weakly left, ccw, positive area).
pub fn is_convex_ccw(poly: &[Point2]) -> bool {
    let n = poly.len();
    if n < 3 || !area2(poly).is_positive() {
        return false;
    }
    (0..n).all(|i| !orient(&poly[i], &poly[(i + 1) % n], &poly[(i + 2) % n]).is_negative())
}

/// Removes collinear intermediate vertices and duplicates from a convex loop.
pub fn simplify_convex(poly: &[Point2]) -> Vec<Point2> {
    let v = dedup_loop(poly.to_vec());
    let n = v.len();
    if n < 3 {
        return v;
    }
    let mut out = Vec::new();
    for i in 0..n {
        let prev = &v[(i + n - 1) % n];
        let cur = &v[i];
        let nxt = &v[(i + 1) % n];
        if !orient(prev, cur, nxt).is_zero() {
            out.push(cur.clone());
        }
    }
    out
}

/// Whether `p` lies in the closed convex ccw polygon.
pub fn point_in_convex(poly: &[Point2], p: &Point2) -> bool {
    match poly.len() {
        0 => false,
        1 => &poly[0] == p,
        2 => point_on_segment(&poly[0], &poly[1], p),
        _ => edge_halfplanes(poly).iter().all(|hp| hp.contains(p)),
    }
}

/// Whether `p` lies on the closed segment [a, b].
pub fn point_on_segment(a: &Point2, b: &Point2, p: &Point2) -> bool {
    if !orient(a, b, p).is_zero() {
        return false;
    }
    let within = |lo: &Rat, hi: &Rat, v: &Rat| {
        if lo <= hi { lo <= v && v <= hi } else { hi <= v && v <= lo }
    };
    within(&a.x, &b.x, &p.x) && within(&a.y, &b.y, &p.y)
}

/// Whether closed segments [a,b] and [c,d] share at least one point.
pub fn segments_touch(a: &Point2, b: &Point2, c: &Point2, d: &Point2) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    let opposite = |x: &Rat, y: &Rat| {
        (x.is_positive() && y.is_negative()) || (x.is_negative() && y.is_positive())
    };
    if opposite(&o1, &o2) && opposite(&o3, &o4) {
        return true;
    }
    (o1.is_zero() && point_on_segment(a, b, c))
        || (o2.is_zero() && point_on_segment(a, b, d))
        || (o3.is_zero() && point_on_segment(c, d, a))
        || (o4.is_zero() && point_on_segment(c, d, b))
}

/// Intersection of a list of convex ccw loops (each possibly degenerate is
/// NOT supported as clipper: clippers must have nonzero area). Returns the
/// resulting vertex loop, empty if the intersection is empty. The result can
/// be degenerate (a segment or a point).
pub fn intersect_convex(subject: &[Point2], clippers: &[&[Point2]]) -> Vec<Point2> {
    let mut cur = subject.to_vec();
    for clipper in clippers {
        for hp in edge_halfplanes(clipper) {
            cur = clip_halfplane(&cur, &hp);
            if cur.is_empty() {
                return cur;
            }
        }
    }
    cur
}

/// Lexicographically smallest vertex of a loop.
pub fn lex_min(poly: &[Point2]) -> Option<Point2> {
    poly.iter().min().cloned()
}

/// First parameter `t >= 0` with `o + t*dir` on the closed segment [a,b].
pub fn ray_hit_segment(o: &Point2, dir: &(Rat, Rat), a: &Point2, b: &Point2) -> Option<Rat> {
    let (ex, ey) = b.sub(a);
    let (wx, wy) = a.sub(o);
    let denom = &dir.0 * &ey - &dir.1 * &ex;
    if !denom.is_zero() {
        let t = (&wx * &ey - &wy * &ex) / &denom;
        let s = (&wx * &dir.1 - &wy * &dir.0) / &denom;
        // a + s e = o + t dir
        if !t.is_negative() && !s.is_negative() && s <= rat_int(1) {
            return Some(t);
        }
        return None;
    }
    // Parallel: collinear iff w is parallel to dir.
    if !(&wx * &dir.1 - &wy * &dir.0).is_zero() {
        return None;
    }
    let param = |p: &Point2| -> Rat {
        let (px, py) = p.sub(o);
        if !dir.0.is_zero() { px / &dir.0 } else { py / &dir.1 }
    };
    let (ta, tb) = (param(a), param(b));
    let (lo, hi) = if ta <= tb { (ta, tb) } else { (tb, ta) };
    if hi.is_negative() {
        None
    } else if lo.is_negative() {
        Some(Rat::zero())
    } else {
        Some(lo)
    }
}

/// First parameter `t >= 0` with `o + t*dir` inside the convex ccw polygon.
pub fn ray_hit_polygon(o: &Point2, dir: &(Rat, Rat), poly: &[Point2]) -> Option<Rat> {
    match poly.len() {
        0 => return None,
        1 => return ray_hit_point(o, dir, &poly[0]),
        2 => return ray_hit_segment(o, dir, &poly[0], &poly[1]),
        _ => {}
    }
    let mut lo = Rat::zero();
    let mut hi: Option<Rat> = None;
    for hp in edge_halfplanes(poly) {
        // hp: a*x + b*y >= c along o + t*dir: k*t >= m.
        let k = &hp.a * &dir.0 + &hp.b * &dir.1;
        let m = &hp.c - (&hp.a * &o.x + &hp.b * &o.y);
        if k.is_zero() {
            if m.is_positive() {
                return None;
            }
        } else if k.is_positive() {
            let bound = &m / &k;
            if bound > lo {
                lo = bound;
            }
        } else {
            let bound = &m / &k;
            hi = Some(match hi {
                None => bound,
                Some(h) => if bound < h { bound } else { h },
            });
        }
    }
    match hi {
        Some(h) if h < lo => None,
        _ => Some(lo),
    }
}

/// First parameter `t >= 0` with `o + t*dir == p`.
pub fn ray_hit_point(o: &Point2, dir: &(Rat, Rat), p: &Point2) -> Option<Rat> {
    let (wx, wy) = p.sub(o);
    if !(&wx * &dir.1 - &wy * &dir.0).is_zero() {
        return None;
    }
    let t = if !dir.0.is_zero() { &wx / &dir.0 } else { &wy / &dir.1 };
    if t.is_negative() {
        None
    } else {
        Some(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn pt(x: i64, y: i64) -> Point2 {
        Point2::from_ints(x, y)
    }

    fn square() -> Vec<Point2> {
        vec![pt(0, 0), pt(2, 0), pt(2, 2), pt(0, 2)]
    }

    #[test]
    fn halfplane_clip_square() {
        // Keep x + y >= 2: clips the square to a triangle.
        let hp = HalfPlane { a: rat_int(1), b: rat_int(1), c: rat_int(2) };
        let clipped = clip_halfplane(&square(), &hp);
        assert_eq!(clipped.len(), 3);
        assert!(clipped.contains(&pt(2, 0)));
        assert!(clipped.contains(&pt(2, 2)));
        assert!(clipped.contains(&pt(0, 2)));
    }

    #[test]
    fn halfplane_clip_to_point() {
        let hp = HalfPlane { a: rat_int(1), b: rat_int(1), c: rat_int(4) };
        let clipped = clip_halfplane(&square(), &hp);
        assert_eq!(clipped, vec![pt(2, 2)]);
    }

    #[test]
    fn halfplane_clip_away() {
        let hp = HalfPlane { a: rat_int(1), b: rat_int(0), c: rat_int(5) };
        assert!(clip_halfplane(&square(), &hp).is_empty());
    }

    #[test]
    fn convexity_and_simplify() {
        assert!(is_convex_ccw(&square()));
        let with_collinear = vec![pt(0, 0), pt(1, 0), pt(2, 0), pt(2, 2), pt(0, 2)];
        assert!(is_convex_ccw(&with_collinear));
        assert_eq!(simplify_convex(&with_collinear), square());
        let reflex = vec![pt(0, 0), pt(2, 0), pt(1, 1), pt(2, 2), pt(0, 2)];
        assert!(!is_convex_ccw(&reflex));
    }

    #[test]
    fn containment() {
        assert!(point_in_convex(&square(), &pt(1, 1)));
        assert!(point_in_convex(&square(), &pt(2, 2)));
        assert!(!point_in_convex(&square(), &pt(3, 1)));
        assert!(point_on_segment(&pt(0, 0), &pt(4, 2), &pt(2, 1)));
        assert!(!point_on_segment(&pt(0, 0), &pt(4, 2), &pt(2, 2)));
    }

    #[test]
    fn segment_touching() {
        assert!(segments_touch(&pt(0, 0), &pt(2, 2), &pt(0, 2), &pt(2, 0)));
        assert!(segments_touch(&pt(0, 0), &pt(2, 2), &pt(2, 2), &pt(3, 0)));
        assert!(segments_touch(&pt(0, 0), &pt(2, 2), &pt(1, 1), &pt(5, 5)));
        assert!(!segments_touch(&pt(0, 0), &pt(2, 2), &pt(3, 3), &pt(5, 5)));
        assert!(!segments_touch(&pt(0, 0), &pt(2, 0), &pt(0, 1), &pt(2, 1)));
    }

    #[test]
    fn polygon_intersection() {
        let other = vec![pt(1, 1), pt(3, 1), pt(3, 3), pt(1, 3)];
        let sq = square();
        let inter = intersect_convex(&sq, &[&other]);
        assert_eq!(area2(&inter), rat_int(2));
        // Touching only at a corner: degenerate single-point intersection.
        let corner = vec![pt(2, 2), pt(4, 2), pt(4, 4), pt(2, 4)];
        let inter = intersect_convex(&sq, &[&corner]);
        assert_eq!(inter, vec![pt(2, 2)]);
        // Disjoint.
        let far = vec![pt(5, 5), pt(6, 5), pt(6, 6), pt(5, 6)];
        assert!(intersect_convex(&sq, &[&far]).is_empty());
    }

    #[test]
    fn ray_hits() {
        let dir = (rat_int(1), rat_int(0));
        assert_eq!(
            ray_hit_polygon(&pt(-1, 1), &dir, &square()),
            Some(rat_int(1))
        );
        assert_eq!(ray_hit_polygon(&pt(-1, 3), &dir, &square()), None);
        assert_eq!(
            ray_hit_segment(&pt(0, 0), &(rat_int(1), rat_int(1)), &pt(2, 0), &pt(0, 2)),
            Some(rat(1, 1))
        );
        // Collinear overlap: first entry point wins.
        assert_eq!(
            ray_hit_segment(&pt(0, 0), &dir, &pt(3, 0), &pt(5, 0)),
            Some(rat_int(3))
        );
        // Ray origin inside the segment span.
        assert_eq!(
            ray_hit_segment(&pt(4, 0), &dir, &pt(3, 0), &pt(5, 0)),
            Some(rat_int(0))
        );
        assert_eq!(ray_hit_point(&pt(0, 0), &dir, &pt(4, 0)), Some(rat_int(4)));
        assert_eq!(ray_hit_point(&pt(0, 0), &dir, &pt(-4, 0)), None);
        assert_eq!(ray_hit_point(&pt(0, 0), &dir, &pt(4, 1)), None);
    }
}
