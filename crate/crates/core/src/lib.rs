//! Exact rational geometry of tight spans and hyperconvexity in the
//! l-infinity plane.
//!
//! The crate computes, with arbitrary-precision rational arithmetic and no
//! tolerances:
//!
//! - finite metric spaces, validation, gluing ([`metric`]);
//! - sectors, diagonal rays, diamonds and geodesics of the sup-metric plane
//!   ([`geometry`]);
//! - region complexes, orthogonal hulls, and minimal closed geodesically
//!   convex supersets of finite point sets ([`region`]);
//! - the constructive nonexpansive retraction of the plane onto a closed
//!   geodesically convex region ([`retraction`]);
//! - the tight span (injective hull) of a finite metric: tight functions,
//!   closed-form embeddings for three and four points, and an isometry
//!   cross-check between regions and tight spans ([`span`]);
//! - Helly-style ball intersection tests and the counterexamples showing
//!   that a certain hexagonal plane geometry is not hyperconvex
//!   ([`hyperconvex`]);
//! - JSON-based file formats ([`io`]) and deterministic SVG rendering
//!   ([`svg`]).

pub mod clip;
pub mod geometry;
pub mod hyperconvex;
pub mod io;
pub mod metric;
pub mod rat;
pub mod region;
pub mod retraction;
pub mod span;
pub mod svg;
