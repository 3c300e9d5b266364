//! Nonexpansive retraction of the l-infinity plane onto a closed
//! geodesically convex region complex.
//!
//! `retract_point` moves an outside point onto the region by a short
//! sequence of exact case-dispatched steps. Each step looks at which of the
//! four closed sectors at the current point contain region points, maps the
//! configuration to a canonical one via one of the eight sector symmetries
//! about the point, performs a ray shot or a diagonal/elbow sweep, and
//! records the step in a trace. `verify_nonexpansive` checks the defining
//! inequality d(a, q) <= d(a, p) over arrangement vertices and seeded
//! samples.

use crate::clip::{clip_halfplane, ray_hit_point, ray_hit_polygon, ray_hit_segment, HalfPlane};
use crate::geometry::{Point2, SectorId};
use crate::rat::{rat_abs, rat_int, rat_min, Rat};
use crate::region::{Feature, RegionComplex};
use num_traits::Signed;
use thiserror::Error;

/// Which closed sectors at a base point contain region points, indexed in
/// the order of [`SectorId::ALL`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SectorProfile {
    occupied: [bool; 4],
}

impl SectorProfile {
    pub fn contains(&self, s: SectorId) -> bool {
        self.occupied[sector_index(s)]
    }

    pub fn count(&self) -> usize {
        self.occupied.iter().filter(|b| **b).count()
    }

    pub fn occupied_sectors(&self) -> Vec<SectorId> {
        SectorId::ALL
            .into_iter()
            .filter(|s| self.contains(*s))
            .collect()
    }
}

fn sector_index(s: SectorId) -> usize {
    SectorId::ALL.iter().position(|t| *t == s).expect("sector in table")
}

/// The two half-planes whose intersection is the closed sector `s` at `p`.
pub fn sector_halfplanes(p: &Point2, s: SectorId) -> [HalfPlane; 2] {
    let u = s.sign.unit();
    let one = rat_int(1);
    if s.axis == 1 {
        // u*(x - px) >= +/-(y - py)
        [
            HalfPlane { a: u.clone(), b: -one.clone(), c: &u * &p.x - &p.y },
            HalfPlane { a: u.clone(), b: one.clone(), c: &u * &p.x + &p.y },
        ]
    } else {
        [
            HalfPlane { a: -one.clone(), b: u.clone(), c: &u * &p.y - &p.x },
            HalfPlane { a: one.clone(), b: u.clone(), c: &u * &p.y + &p.x },
        ]
    }
}

/// Computes the sector profile of a region at a point by exact clipping of
/// every feature against each sector's half-planes.
pub fn sector_profile(region: &RegionComplex, p: &Point2) -> SectorProfile {
    let feats = region.features();
    let mut occupied = [false; 4];
    for (i, s) in SectorId::ALL.into_iter().enumerate() {
        let hps = sector_halfplanes(p, s);
        occupied[i] = feats.iter().any(|f| {
            let mut loop_vs = f.loop_vertices();
            for hp in &hps {
                loop_vs = clip_halfplane(&loop_vs, hp);
            }
            !loop_vs.is_empty()
        });
    }
    SectorProfile { occupied }
}

/// One of the eight symmetries of the sup-norm square about a center point:
/// optionally swap the coordinate axes, then optionally negate each offset.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Sym {
    swap: bool,
    neg_x: bool,
    neg_y: bool,
    center: Point2,
}

impl Sym {
    fn all(center: &Point2) -> Vec<Sym> {
        let mut out = Vec::with_capacity(8);
        for swap in [false, true] {
            for neg_x in [false, true] {
                for neg_y in [false, true] {
                    out.push(Sym { swap, neg_x, neg_y, center: center.clone() });
                }
            }
        }
        out
    }

    fn apply(&self, q: &Point2) -> Point2 {
        let (mut dx, mut dy) = q.sub(&self.center);
        if self.swap {
            std::mem::swap(&mut dx, &mut dy);
        }
        if self.neg_x {
            dx = -dx;
        }
        if self.neg_y {
            dy = -dy;
        }
        self.center.offset(&dx, &dy)
    }

    fn unapply(&self, q: &Point2) -> Point2 {
        let (mut dx, mut dy) = q.sub(&self.center);
        if self.neg_x {
            dx = -dx;
        }
        if self.neg_y {
            dy = -dy;
        }
        if self.swap {
            std::mem::swap(&mut dx, &mut dy);
        }
        self.center.offset(&dx, &dy)
    }

    /// Image of a sector at the center under `apply`.
    fn apply_sector(&self, s: SectorId) -> SectorId {
        let axis = if self.swap { 3 - s.axis } else { s.axis };
        let mut sign = s.sign;
        if (self.neg_x && axis == 1) || (self.neg_y && axis == 2) {
            sign = sign.flip();
        }
        SectorId { axis, sign }
    }
}

/// Which canonical case a retraction step used.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseTag {
    /// Only one sector meets the region: axis-parallel elbow sweep.
    OneSector,
    /// Two adjacent sectors meet the region: diagonal sweep.
    TwoSector,
    /// Three sectors meet the region: axis-parallel ray shot.
    ThreeSector,
}

/// The sequence of intermediate points (with the case used to produce each)
/// and the final region point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RetractionTrace {
    pub steps: Vec<(Point2, CaseTag)>,
    pub target: Point2,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RetractError {
    #[error("internal invariant violated: {0}")]
    InternalInvariant(&'static str),
    #[error("claimed retraction target lies outside the region")]
    TargetOutsideRegion,
}

const MAX_STEPS: usize = 8;

/// Retracts `p` onto the region. Requires the region to be closed and
/// geodesically convex; the caller validates convexity.
pub fn retract_point(region: &RegionComplex, p: &Point2) -> Result<RetractionTrace, RetractError> {
    let mut steps: Vec<(Point2, CaseTag)> = Vec::new();
    let mut cur = p.clone();
    for _ in 0..MAX_STEPS {
        if region.contains(&cur) {
            return Ok(RetractionTrace { steps, target: cur });
        }
        let profile = sector_profile(region, &cur);
        let occ = profile.occupied_sectors();
        match occ.len() {
            4 => {
                // All four sectors occupied at an outside point contradicts
                // geodesic convexity.
                return Err(RetractError::InternalInvariant(
                    "four occupied sectors at a point outside the region",
                ));
            }
            3 => {
                let missing = SectorId::ALL
                    .into_iter()
                    .find(|s| !profile.contains(*s))
                    .expect("one sector missing");
                let sym = normalize(&cur, &occ, &canonical_three())
                    .ok_or(RetractError::InternalInvariant("no normalizing symmetry"))?;
                debug_assert_eq!(sym.apply_sector(missing), SectorId::X_NEG);
                let mapped = region.map_points(&|q| sym.apply(q));
                let dir = (rat_int(1), rat_int(0));
                let t = first_hit(&mapped, &cur, &dir).ok_or(RetractError::InternalInvariant(
                    "axis ray misses the region in the three-sector case",
                ))?;
                let q = sym.unapply(&cur.offset(&t, &rat_int(0)));
                steps.push((q.clone(), CaseTag::ThreeSector));
                cur = q;
            }
            2 => {
                if !occ[0].is_adjacent(&occ[1]) {
                    return Err(RetractError::InternalInvariant(
                        "two opposite occupied sectors at a point outside the region",
                    ));
                }
                let sym = normalize(&cur, &occ, &canonical_two())
                    .ok_or(RetractError::InternalInvariant("no normalizing symmetry"))?;
                let mapped = region.map_points(&|q| sym.apply(q));
                // The region lies in the half-plane x + y >= px + py + 2 t0
                // with t0 > 0; sweep the diagonal to the supporting line.
                let base = &cur.x + &cur.y;
                let t0 = mapped
                    .features()
                    .iter()
                    .flat_map(|f| f.loop_vertices())
                    .map(|v| (&v.x + &v.y - &base) / rat_int(2))
                    .min()
                    .expect("region has vertices");
                if !t0.is_positive() {
                    return Err(RetractError::InternalInvariant(
                        "diagonal sweep distance must be positive",
                    ));
                }
                let q = sym.unapply(&cur.offset(&t0, &t0));
                steps.push((q.clone(), CaseTag::TwoSector));
                cur = q;
            }
            1 => {
                let sym = normalize(&cur, &occ, &canonical_one())
                    .ok_or(RetractError::InternalInvariant("no normalizing symmetry"))?;
                let mapped = region.map_points(&|q| sym.apply(q));
                // Every region point satisfies x - px >= |y - py|; sweep to
                // the elbow contact. The objective is concave, so feature
                // vertices attain the minimum on this compact region.
                let t0 = mapped
                    .features()
                    .iter()
                    .flat_map(|f| f.loop_vertices())
                    .map(|v| &v.x - &cur.x - rat_abs(&(&v.y - &cur.y)))
                    .min()
                    .expect("region has vertices");
                if !t0.is_positive() {
                    return Err(RetractError::InternalInvariant(
                        "elbow sweep distance must be positive",
                    ));
                }
                let q = sym.unapply(&cur.offset(&t0, &rat_int(0)));
                steps.push((q.clone(), CaseTag::OneSector));
                cur = q;
            }
            _ => {
                return Err(RetractError::InternalInvariant(
                    "no occupied sector for a nonempty region",
                ));
            }
        }
    }
    Err(RetractError::InternalInvariant("retraction did not converge"))
}

fn canonical_three() -> Vec<SectorId> {
    vec![SectorId::X_POS, SectorId::Y_POS, SectorId::Y_NEG]
}

fn canonical_two() -> Vec<SectorId> {
    vec![SectorId::X_POS, SectorId::Y_POS]
}

fn canonical_one() -> Vec<SectorId> {
    vec![SectorId::X_POS]
}

/// First symmetry (in a fixed order) mapping the occupied sector set onto
/// the canonical one.
fn normalize(center: &Point2, occupied: &[SectorId], canonical: &[SectorId]) -> Option<Sym> {
    let target: Vec<usize> = {
        let mut idx: Vec<usize> = canonical.iter().map(|s| sector_index(*s)).collect();
        idx.sort();
        idx
    };
    Sym::all(center).into_iter().find(|sym| {
        let mut mapped: Vec<usize> =
            occupied.iter().map(|s| sector_index(sym.apply_sector(*s))).collect();
        mapped.sort();
        mapped == target
    })
}

/// Smallest parameter at which a ray from `o` meets the region.
fn first_hit(region: &RegionComplex, o: &Point2, dir: &(Rat, Rat)) -> Option<Rat> {
    let mut best: Option<Rat> = None;
    for f in region.features() {
        let hit = match &f {
            Feature::Point(p) => ray_hit_point(o, dir, p),
            Feature::Segment(a, b) => ray_hit_segment(o, dir, a, b),
            Feature::Cell(vs) => ray_hit_polygon(o, dir, vs),
        };
        if let Some(t) = hit {
            best = Some(match best {
                None => t,
                Some(b) => rat_min(&b, &t),
            });
        }
    }
    best
}

/// Result of the nonexpansiveness check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NonexpansiveCheck {
    Pass,
    /// A region point strictly closer to the source than to the target.
    Expanded { witness: Point2 },
}

/// Verifies d(a, q) <= d(a, p) for all arrangement vertices of the region
/// plus `n` seeded sample points `a`.
pub fn verify_nonexpansive(
    region: &RegionComplex,
    p: &Point2,
    q: &Point2,
    n: usize,
    seed: u64,
) -> Result<NonexpansiveCheck, RetractError> {
    if !region.contains(q) {
        return Err(RetractError::TargetOutsideRegion);
    }
    let mut candidates = region.arrangement_vertices();
    candidates.extend(region.sample_points(n, seed));
    for a in candidates {
        if a.dist(q) > a.dist(p) {
            return Ok(NonexpansiveCheck::Expanded { witness: a });
        }
    }
    Ok(NonexpansiveCheck::Pass)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;
    use crate::region::minimal_gch;

    fn pt(x: i64, y: i64) -> Point2 {
        Point2::from_ints(x, y)
    }

    fn tripod() -> RegionComplex {
        minimal_gch(&[pt(0, 0), pt(0, 3), pt(2, 3)])
    }

    #[test]
    fn profile_counts_sectors() {
        let t = tripod();
        // A point far to the right sees the whole region in one sector.
        let prof = sector_profile(&t, &pt(10, 0));
        assert_eq!(prof.count(), 1);
        assert!(prof.contains(SectorId::X_NEG));
        // A point inside the convex hull of the tripod arms sees several.
        let prof = sector_profile(&t, &pt(1, 2));
        assert_eq!(prof.count(), 4);
    }

    #[test]
    fn retract_fixes_region_points() {
        let t = tripod();
        for p in t.sample_points(12, 3) {
            let tr = retract_point(&t, &p).unwrap();
            assert_eq!(tr.target, p);
            assert!(tr.steps.is_empty());
        }
    }

    #[test]
    fn retract_outside_points_lands_inside() {
        let t = tripod();
        let cases = [
            pt(5, 0),
            pt(-3, -3),
            pt(3, 1),
            pt(-2, 5),
            pt(4, 4),
            pt(2, 1),
            Point2::new(rat(7, 3), rat(-5, 2)),
        ];
        for p in &cases {
            let tr = retract_point(&t, p).unwrap();
            assert!(t.contains(&tr.target), "retraction of {p:?} inside");
            assert!(!tr.steps.is_empty());
            assert!(tr.steps.len() <= 3);
            // Every intermediate step is the next step's source; the last
            // step is the target.
            assert_eq!(tr.steps.last().unwrap().0, tr.target);
            // Nonexpansive against vertices and samples.
            let check = verify_nonexpansive(&t, p, &tr.target, 40, 11).unwrap();
            assert_eq!(check, NonexpansiveCheck::Pass);
        }
    }

    #[test]
    fn retract_is_idempotent_and_nonexpansive_pairwise() {
        let t = tripod();
        let outside = [pt(6, -2), pt(-4, 6), pt(3, 3), pt(0, -5)];
        let mut images = Vec::new();
        for p in &outside {
            let tr = retract_point(&t, p).unwrap();
            let tr2 = retract_point(&t, &tr.target).unwrap();
            assert_eq!(tr2.target, tr.target);
            images.push((p.clone(), tr.target));
        }
        for (p1, q1) in &images {
            for (p2, q2) in &images {
                assert!(q1.dist(q2) <= p1.dist(p2), "pairwise nonexpansive");
            }
        }
    }

    #[test]
    fn verify_rejects_outside_target() {
        let t = tripod();
        assert_eq!(
            verify_nonexpansive(&t, &pt(5, 5), &pt(9, 9), 5, 0),
            Err(RetractError::TargetOutsideRegion)
        );
    }

    #[test]
    fn verify_reports_expansion_witness() {
        let t = tripod();
        // Mapping (3,4), which sits next to the arm tip (2,3), all the way
        // to (0,0) expands the distance from the arm tip (3 versus 1).
        let check = verify_nonexpansive(&t, &pt(3, 4), &pt(0, 0), 20, 0).unwrap();
        assert!(matches!(check, NonexpansiveCheck::Expanded { .. }));
    }
}
