//! Deterministic SVG rendering of region complexes and marker points.
//! Display coordinates are printed with six decimal digits; every element
//! also carries the exact rational coordinates in `data-*` attributes.

use crate::geometry::Point2;
use crate::rat::{rat_int, rat_max, rat_to_decimal, rat_to_string, Rat};
use crate::region::RegionComplex;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SvgError {
    #[error("nothing to render")]
    EmptyTarget,
}

const DIGITS: u32 = 6;

/// Renders a region (optional) and marker points (optional) to a standalone
/// SVG document. Fails with [`SvgError::EmptyTarget`] when both are absent.
pub fn render_svg(region: Option<&RegionComplex>, markers: &[Point2]) -> Result<String, SvgError> {
    let mut all: Vec<Point2> = markers.to_vec();
    if let Some(r) = region {
        for f in r.features() {
            all.extend(f.loop_vertices());
        }
    }
    let first = all.first().ok_or(SvgError::EmptyTarget)?.clone();
    let (mut lox, mut hix, mut loy, mut hiy) =
        (first.x.clone(), first.x.clone(), first.y.clone(), first.y.clone());
    for p in &all {
        if p.x < lox {
            lox = p.x.clone();
        }
        if p.x > hix {
            hix = p.x.clone();
        }
        if p.y < loy {
            loy = p.y.clone();
        }
        if p.y > hiy {
            hiy = p.y.clone();
        }
    }
    let pad = rat_max(&rat_int(1), &((&hix - &lox + (&hiy - &loy)) / rat_int(20)));
    let lox = &lox - &pad;
    let loy = &loy - &pad;
    let hix = &hix + &pad;
    let hiy = &hiy + &pad;
    let width = &hix - &lox;
    let height = &hiy - &loy;
    // SVG y grows downward; flip about the top of the padded box.
    let sx = |x: &Rat| rat_to_decimal(&(x - &lox), DIGITS);
    let sy = |y: &Rat| rat_to_decimal(&(&hiy - y), DIGITS);
    let mut out = String::new();
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {} {}\">",
        rat_to_decimal(&width, DIGITS),
        rat_to_decimal(&height, DIGITS)
    )
    .unwrap();
    if let Some(r) = region {
        for cell in r.cells() {
            let pts: Vec<String> =
                cell.iter().map(|p| format!("{},{}", sx(&p.x), sy(&p.y))).collect();
            let exact: Vec<String> = cell
                .iter()
                .map(|p| format!("{},{}", rat_to_string(&p.x), rat_to_string(&p.y)))
                .collect();
            writeln!(
                out,
                "  <polygon points=\"{}\" fill=\"#9ecae1\" stroke=\"#3182bd\" \
                 stroke-width=\"0.02\" data-exact=\"{}\"/>",
                pts.join(" "),
                exact.join(";")
            )
            .unwrap();
        }
        for (a, b) in r.segments() {
            writeln!(
                out,
                "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#3182bd\" \
                 stroke-width=\"0.05\" data-exact=\"{},{};{},{}\"/>",
                sx(&a.x),
                sy(&a.y),
                sx(&b.x),
                sy(&b.y),
                rat_to_string(&a.x),
                rat_to_string(&a.y),
                rat_to_string(&b.x),
                rat_to_string(&b.y)
            )
            .unwrap();
        }
        for p in r.points() {
            writeln!(
                out,
                "  <circle cx=\"{}\" cy=\"{}\" r=\"0.08\" fill=\"#3182bd\" \
                 data-exact=\"{},{}\"/>",
                sx(&p.x),
                sy(&p.y),
                rat_to_string(&p.x),
                rat_to_string(&p.y)
            )
            .unwrap();
        }
    }
    for p in markers {
        writeln!(
            out,
            "  <circle cx=\"{}\" cy=\"{}\" r=\"0.1\" fill=\"#e6550d\" \
             data-exact=\"{},{}\"/>",
            sx(&p.x),
            sy(&p.y),
            rat_to_string(&p.x),
            rat_to_string(&p.y)
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    Ok(out)
}
