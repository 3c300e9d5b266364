//! Exact geometry of the l-infinity plane.
//!
//! Coordinates are exact rationals. The central objects are the four closed
//! *sectors* of a point (the loci where the sup-distance is realized by a
//! fixed signed coordinate), the four diagonal *rays* bounding them, and the
//! *diamond* `D(p,q)` of points between `p` and `q` (a 45-degree-sided
//! parallelogram). Geodesics are the rectifiable paths of length `d(p,q)`
//! inside `D(p,q)`; they are unique exactly when `q - p` is diagonal.
//!
//! A 45-degree rotation (`to_l1` / `from_l1`) turns sectors into axis-
//! aligned quadrants and sup-geodesics into coordinate-monotone staircases;
//! several algorithms in other modules work in those rotated coordinates.

use crate::rat::{rat_abs, rat_int, rat_max, Rat};
use num_traits::{Signed, Zero};
use thiserror::Error;

/// A point of the plane with exact rational coordinates.
///
/// Ordering is lexicographic (x, then y); it is used for canonical feature
/// ordering, witness tie-breaking, and deterministic output.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point2 {
    pub x: Rat,
    pub y: Rat,
}

impl Point2 {
    pub fn new(x: Rat, y: Rat) -> Self {
        Point2 { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point2::new(rat_int(x), rat_int(y))
    }

    /// Sup-distance to another point.
    pub fn dist(&self, other: &Point2) -> Rat {
        rat_max(&rat_abs(&(&self.x - &other.x)), &rat_abs(&(&self.y - &other.y)))
    }

    /// Componentwise difference `self - other`.
    pub fn sub(&self, other: &Point2) -> (Rat, Rat) {
        (&self.x - &other.x, &self.y - &other.y)
    }

    /// Translation by a vector.
    pub fn offset(&self, dx: &Rat, dy: &Rat) -> Point2 {
        Point2::new(&self.x + dx, &self.y + dy)
    }

    /// Rotated coordinates `(x+y, y-x)`.
    ///
    /// The rotation doubles scale: the l1 distance of two images is exactly
    /// twice the sup-distance of the originals.
    pub fn to_l1(&self) -> Point2 {
        Point2::new(&self.x + &self.y, &self.y - &self.x)
    }

    /// Inverse of [`Point2::to_l1`]: `(u,v)` maps back to `((u-v)/2, (u+v)/2)`.
    pub fn from_l1(&self) -> Point2 {
        let two = rat_int(2);
        Point2::new((&self.x - &self.y) / &two, (&self.x + &self.y) / &two)
    }
}

/// Sign of a sector or ray direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Neg,
    Pos,
}

impl Sign {
    pub fn apply(&self, r: &Rat) -> Rat {
        match self {
            Sign::Pos => r.clone(),
            Sign::Neg => -r.clone(),
        }
    }

    pub fn flip(&self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn unit(&self) -> Rat {
        match self {
            Sign::Pos => rat_int(1),
            Sign::Neg => rat_int(-1),
        }
    }
}

/// One of the four closed sectors of a point: `axis` is 1 or 2, `sign` the
/// direction. `q` lies in sector `(i, s)` of `p` iff `d(p,q) = s*(q_i - p_i)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SectorId {
    pub axis: u8,
    pub sign: Sign,
}

impl SectorId {
    pub const X_POS: SectorId = SectorId { axis: 1, sign: Sign::Pos };
    pub const X_NEG: SectorId = SectorId { axis: 1, sign: Sign::Neg };
    pub const Y_POS: SectorId = SectorId { axis: 2, sign: Sign::Pos };
    pub const Y_NEG: SectorId = SectorId { axis: 2, sign: Sign::Neg };

    /// All four sectors in canonical order.
    pub const ALL: [SectorId; 4] = [
        SectorId::X_NEG,
        SectorId::X_POS,
        SectorId::Y_NEG,
        SectorId::Y_POS,
    ];

    /// The sector on the opposite side of the same axis.
    pub fn opposite(&self) -> SectorId {
        SectorId { axis: self.axis, sign: self.sign.flip() }
    }

    /// Whether two sectors share a bounding ray (different axes).
    pub fn is_adjacent(&self, other: &SectorId) -> bool {
        self.axis != other.axis
    }
}

/// One of the four diagonal rays of a point, indexed by the signs of its
/// direction vector `(sx, sy)`; ray `(sx, sy)` is the intersection of
/// sectors `(1, sx)` and `(2, sy)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RayId {
    pub sx: Sign,
    pub sy: Sign,
}

impl RayId {
    pub const ALL: [RayId; 4] = [
        RayId { sx: Sign::Neg, sy: Sign::Neg },
        RayId { sx: Sign::Neg, sy: Sign::Pos },
        RayId { sx: Sign::Pos, sy: Sign::Neg },
        RayId { sx: Sign::Pos, sy: Sign::Pos },
    ];

    /// Unit direction vector of the ray.
    pub fn direction(&self) -> (Rat, Rat) {
        (self.sx.unit(), self.sy.unit())
    }
}

/// Whether `q` lies in the closed sector `s` of `p`.
pub fn in_sector(p: &Point2, s: SectorId, q: &Point2) -> bool {
    let (dx, dy) = q.sub(p);
    let signed = match s.axis {
        1 => s.sign.apply(&dx),
        2 => s.sign.apply(&dy),
        _ => unreachable!("axis is 1 or 2"),
    };
    signed == p.dist(q)
}

/// Whether `q` lies on the closed diagonal ray `r` of `p`.
pub fn in_ray(p: &Point2, r: RayId, q: &Point2) -> bool {
    let (dx, dy) = q.sub(p);
    let a = r.sx.apply(&dx);
    let b = r.sy.apply(&dy);
    a == b && !a.is_negative()
}

/// Whether `u` is metrically between `p` and `q`, i.e. lies in the diamond
/// `D(p,q) = {u : d(p,u) + d(u,q) = d(p,q)}`.
pub fn in_diamond(p: &Point2, q: &Point2, u: &Point2) -> bool {
    p.dist(u) + u.dist(q) == p.dist(q)
}

/// Whether the sup-geodesic between `p` and `q` is unique, i.e. `q - p` is
/// diagonal (|dx| = |dy|), including the degenerate case `p = q`.
pub fn unique_geodesic(p: &Point2, q: &Point2) -> bool {
    let (dx, dy) = q.sub(p);
    rat_abs(&dx) == rat_abs(&dy)
}

/// Errors for geodesic polylines and crossing parameters.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeodesicError {
    #[error("polyline needs at least two vertices")]
    TooShort,
    #[error("polyline is not a geodesic: length exceeds endpoint distance at vertex {0}")]
    NotGeodesic(usize),
    #[error("crossing precondition violated: endpoints not in the required sectors")]
    PreconditionViolated,
    #[error("geodesic does not cross the ray")]
    NoCrossing,
}

/// A sup-geodesic represented as a polyline: consecutive segment lengths sum
/// exactly to the distance between the endpoints, so the arc-length
/// parameterization is canonical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeodesicPolyline {
    vertices: Vec<Point2>,
    length: Rat,
}

impl GeodesicPolyline {
    /// Validates that the polyline is a geodesic from first to last vertex.
    pub fn new(vertices: Vec<Point2>) -> Result<Self, GeodesicError> {
        if vertices.len() < 2 {
            return Err(GeodesicError::TooShort);
        }
        let total: Rat = vertices
            .windows(2)
            .map(|w| w[0].dist(&w[1]))
            .fold(Rat::zero(), |acc, d| acc + d);
        let direct = vertices[0].dist(vertices.last().unwrap());
        if total != direct {
            // Locate the first prefix that already overshoots, for the witness.
            let mut acc = Rat::zero();
            for (i, w) in vertices.windows(2).enumerate() {
                acc = acc + w[0].dist(&w[1]);
                let rest = w[1].dist(vertices.last().unwrap());
                if &acc + &rest != direct {
                    return Err(GeodesicError::NotGeodesic(i + 1));
                }
            }
            return Err(GeodesicError::NotGeodesic(vertices.len() - 1));
        }
        Ok(GeodesicPolyline { vertices, length: total })
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn start(&self) -> &Point2 {
        &self.vertices[0]
    }

    pub fn end(&self) -> &Point2 {
        self.vertices.last().unwrap()
    }

    pub fn length(&self) -> &Rat {
        &self.length
    }

    /// Point at arc-length parameter `t` (clamped to `[0, length]`).
    pub fn at(&self, t: &Rat) -> Point2 {
        let mut remaining = if t.is_negative() { Rat::zero() } else { t.clone() };
        for w in self.vertices.windows(2) {
            let seg = w[0].dist(&w[1]);
            if remaining <= seg {
                if seg.is_zero() {
                    return w[0].clone();
                }
                let lambda = &remaining / &seg;
                let (dx, dy) = w[1].sub(&w[0]);
                return w[0].offset(&(&dx * &lambda), &(&dy * &lambda));
            }
            remaining = remaining - seg;
        }
        self.end().clone()
    }

    /// Midpoint in arc length.
    pub fn midpoint(&self) -> Point2 {
        self.at(&(&self.length / rat_int(2)))
    }
}

/// First arc-length parameter at which a geodesic from a point of sector
/// `(1, eps)` of `u` to a point of sector `(2, delta)` of `u` crosses the
/// ray `(eps, delta)` of `u`. Every such geodesic crosses that ray.
pub fn crossing_parameter(
    u: &Point2,
    g: &GeodesicPolyline,
    eps: Sign,
    delta: Sign,
) -> Result<Rat, GeodesicError> {
    if !in_sector(u, SectorId { axis: 1, sign: eps }, g.start())
        || !in_sector(u, SectorId { axis: 2, sign: delta }, g.end())
    {
        return Err(GeodesicError::PreconditionViolated);
    }
    let ray = RayId { sx: eps, sy: delta };
    let mut offset = Rat::zero();
    for w in g.vertices().windows(2) {
        let (a, b) = (&w[0], &w[1]);
        let seg_len = a.dist(b);
        if let Some(s) = segment_ray_first_param(a, b, u, ray) {
            // `s` is the fraction along [a,b] of the first ray point.
            return Ok(offset + s * seg_len);
        }
        offset = offset + seg_len;
    }
    Err(GeodesicError::NoCrossing)
}

/// Smallest `s` in [0,1] with `a + s (b - a)` on the closed ray `r` of `u`,
/// if any. Exact, handles collinear overlap.
fn segment_ray_first_param(a: &Point2, b: &Point2, u: &Point2, r: RayId) -> Option<Rat> {
    // Ray: points q with sx*(q.x - u.x) = sy*(q.y - u.y) >= 0.
    // Along the segment, f(s) = sx*(ax - ux) - sy*(ay - uy) + s * (sx*dx - sy*dy)
    // must vanish with g(s) = sx*(ax - ux) + s*sx*dx >= 0.
    let (dx, dy) = b.sub(a);
    let (ax, ay) = a.sub(u);
    let f0 = r.sx.apply(&ax) - r.sy.apply(&ay);
    let f1 = r.sx.apply(&dx) - r.sy.apply(&dy);
    let g0 = r.sx.apply(&ax);
    let g1 = r.sx.apply(&dx);
    let in_range = |s: &Rat| !s.is_negative() && *s <= rat_int(1);
    let on_ray_at = |s: &Rat| {
        (&f0 + &(&f1 * s)).is_zero() && !(&g0 + &(&g1 * s)).is_negative()
    };
    if f1.is_zero() {
        if !f0.is_zero() {
            return None;
        }
        // Segment parallel to (or on) the ray line: need g(s) >= 0 minimal s.
        if !g0.is_negative() {
            return Some(Rat::zero());
        }
        if g1.is_positive() {
            let s = -&g0 / &g1;
            if in_range(&s) {
                return Some(s);
            }
        }
        return None;
    }
    let s = -&f0 / &f1;
    if in_range(&s) && on_ray_at(&s) {
        Some(s)
    } else {
        None
    }
}
