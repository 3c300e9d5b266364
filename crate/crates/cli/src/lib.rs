//! Command-line interface: exact tight-span construction, retraction, and
//! hyperconvexity checks over JSON fixtures. All numeric output is printed
//! as exact rational strings. Exit codes: 0 = success/pass, 1 =
//! verification failure (witness printed), 2 = usage or input error.

use clap::{Parser, Subcommand, ValueEnum};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use tightspan::geometry::Point2;
use tightspan::hyperconvex::{
    balls_compatible, boxes_intersect, hexagon_counterexample, plane_quad_fixture,
    plane_quad_witness, quad_chart_lift, region_balls_intersect, PlaneQuadWitness,
};
use tightspan::io::{
    parse_balls_json, parse_metric_json, parse_points_json, parse_region_json, region_to_json,
};
use tightspan::metric::linf_distance;
use tightspan::rat::{parse_rat, rat_to_string, Rat};
use tightspan::region::minimal_gch;
use tightspan::retraction::{retract_point, verify_nonexpansive, CaseTag, NonexpansiveCheck};
use tightspan::span::{
    check_isometry, descend_to_tight, embed3, embed4, IsometryReport, TightFunction,
};
use tightspan::svg::render_svg;

#[derive(Parser)]
#[command(name = "tspan", version, disable_help_subcommand = true)]
#[command(about = "Exact tight spans, retractions and hyperconvexity checks in the sup-norm plane")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate a metric file against the metric axioms.
    Validate {
        #[arg(long)]
        metric: PathBuf,
    },
    /// Embed a 3-point metric (d23, d13, d12) into the sup-norm plane.
    Embed3 { a: String, b: String, c: String },
    /// Embed a 4-point metric (d12 d13 d14 d23 d24 d34) into the plane.
    Embed4 {
        #[arg(num_args = 6)]
        d: Vec<String>,
    },
    /// Compute the minimal geodesically convex superset of a point set.
    Span {
        #[arg(long)]
        points: PathBuf,
        /// Verify isometry with the function-space span over n seeded pairs.
        #[arg(long)]
        verify: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write an SVG rendering to this path.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Retract a point onto a geodesically convex region.
    Retract {
        #[arg(long)]
        region: PathBuf,
        #[arg(long, num_args = 2, value_names = ["X", "Y"])]
        point: Vec<String>,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Intersect a compatible family of sup-norm balls (optionally inside a
    /// region).
    Helly {
        #[arg(long)]
        balls: PathBuf,
        #[arg(long)]
        region: Option<PathBuf>,
    },
    /// Print a certified counterexample report.
    Counterexample {
        #[arg(value_enum)]
        which: Counterexample,
    },
    /// Render a region file to SVG.
    Render {
        #[arg(long)]
        region: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Test whether a function on a metric space is a tight-span point.
    Oracle {
        #[arg(long)]
        metric: PathBuf,
        #[arg(long, num_args = 1..)]
        function: Vec<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Counterexample {
    /// Three pairwise-intersecting plane hexagons with empty triple
    /// intersection.
    Hexagons,
    /// A plane quadrilateral containing three points but not isometric to
    /// their tight span.
    Quad,
}

struct Failure(i32, String);

type CmdResult = Result<String, Failure>;

fn fail(code: i32, msg: impl Into<String>) -> Failure {
    Failure(code, msg.into())
}

/// Runs the CLI on the given arguments (excluding the program name) and
/// returns the exit code and combined output.
pub fn run_cli(args: &[String]) -> (i32, String) {
    let mut argv = vec!["tspan".to_string()];
    argv.extend(args.iter().cloned());
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.to_string());
        }
    };
    match dispatch(cli.cmd) {
        Ok(out) => (0, out),
        Err(Failure(code, out)) => (code, out),
    }
}

fn dispatch(cmd: Cmd) -> CmdResult {
    match cmd {
        Cmd::Validate { metric } => cmd_validate(&metric),
        Cmd::Embed3 { a, b, c } => cmd_embed3(&a, &b, &c),
        Cmd::Embed4 { d } => cmd_embed4(&d),
        Cmd::Span { points, verify, seed, svg } => cmd_span(&points, verify, seed, svg.as_deref()),
        Cmd::Retract { region, point, samples, seed } => {
            cmd_retract(&region, &point, samples, seed)
        }
        Cmd::Helly { balls, region } => cmd_helly(&balls, region.as_deref()),
        Cmd::Counterexample { which } => cmd_counterexample(which),
        Cmd::Render { region, out } => cmd_render(&region, &out),
        Cmd::Oracle { metric, function } => cmd_oracle(&metric, &function),
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| fail(2, format!("cannot read {}: {e}", path.display())))
}

fn parse_rat_arg(s: &str, what: &str) -> Result<Rat, Failure> {
    parse_rat(s).map_err(|e| fail(2, format!("invalid rational for {what}: {e}")))
}

fn fmt_point(p: &Point2) -> String {
    format!("({}, {})", rat_to_string(&p.x), rat_to_string(&p.y))
}

fn cmd_validate(path: &Path) -> CmdResult {
    let text = read_file(path)?;
    match parse_metric_json(&text) {
        Ok(m) => Ok(format!("valid metric on {} points\n", m.len())),
        Err(tightspan::io::FileError::Metric(e)) => Err(fail(1, format!("invalid metric: {e}\n"))),
        Err(e) => Err(fail(2, format!("invalid input: {e}\n"))),
    }
}

fn cmd_embed3(a: &str, b: &str, c: &str) -> CmdResult {
    let (a, b, c) = (
        parse_rat_arg(a, "a")?,
        parse_rat_arg(b, "b")?,
        parse_rat_arg(c, "c")?,
    );
    let m = embed3(&a, &b, &c).map_err(|e| fail(2, format!("cannot embed: {e}\n")))?;
    let mut out = String::new();
    for (i, p) in m.points.iter().enumerate() {
        writeln!(out, "point {}: {}", i + 1, fmt_point(p)).unwrap();
    }
    let legs: Vec<String> = m.legs.iter().map(rat_to_string).collect();
    writeln!(out, "legs: {}", legs.join(" ")).unwrap();
    Ok(out)
}

fn cmd_embed4(d: &[String]) -> CmdResult {
    let mut vals = Vec::with_capacity(6);
    for (i, s) in d.iter().enumerate() {
        vals.push(parse_rat_arg(s, &format!("distance {}", i + 1))?);
    }
    let arr: [Rat; 6] = vals.try_into().expect("six values");
    let m = embed4(&arr).map_err(|e| fail(2, format!("cannot embed: {e}\n")))?;
    let mut out = String::new();
    for (i, p) in m.points.iter().enumerate() {
        writeln!(out, "point {}: {}", i + 1, fmt_point(p)).unwrap();
    }
    let legs: Vec<String> = m.legs.iter().map(rat_to_string).collect();
    writeln!(out, "legs: {}", legs.join(" ")).unwrap();
    writeln!(
        out,
        "rectangle: {} x {}",
        rat_to_string(&m.rect.0),
        rat_to_string(&m.rect.1)
    )
    .unwrap();
    Ok(out)
}

fn cmd_span(path: &Path, verify: Option<usize>, seed: u64, svg: Option<&Path>) -> CmdResult {
    let pts = parse_points_json(&read_file(path)?)
        .map_err(|e| fail(2, format!("invalid points file: {e}\n")))?;
    if pts.is_empty() {
        return Err(fail(2, "points file is empty\n"));
    }
    let region = minimal_gch(&pts);
    let mut out = region_to_json(&region);
    out.push('\n');
    if let Some(svg_path) = svg {
        let doc = render_svg(Some(&region), &pts)
            .map_err(|e| fail(2, format!("cannot render: {e}\n")))?;
        std::fs::write(svg_path, doc)
            .map_err(|e| fail(2, format!("cannot write {}: {e}\n", svg_path.display())))?;
        writeln!(out, "svg written to {}", svg_path.display()).unwrap();
    }
    if let Some(n_pairs) = verify {
        let (base, base_pts) = tightspan::span::plane_base(&pts)
            .map_err(|e| fail(2, format!("invalid base points: {e}\n")))?;
        match check_isometry(&region, &base, &base_pts, n_pairs, seed) {
            IsometryReport::Pass => {
                writeln!(out, "isometry: pass ({n_pairs} pairs, seed {seed})").unwrap();
            }
            IsometryReport::NotTight { point } => {
                writeln!(out, "isometry: FAIL, non-tight profile at {}", fmt_point(&point))
                    .unwrap();
                return Err(fail(1, out));
            }
            IsometryReport::NotAdmissible { point } => {
                writeln!(out, "isometry: FAIL, inadmissible profile at {}", fmt_point(&point))
                    .unwrap();
                return Err(fail(1, out));
            }
            IsometryReport::DistanceMismatch { p, q, plane, span } => {
                writeln!(
                    out,
                    "isometry: FAIL, {} to {}: plane {} vs span {}",
                    fmt_point(&p),
                    fmt_point(&q),
                    rat_to_string(&plane),
                    rat_to_string(&span)
                )
                .unwrap();
                return Err(fail(1, out));
            }
        }
    }
    Ok(out)
}

fn cmd_retract(path: &Path, point: &[String], samples: usize, seed: u64) -> CmdResult {
    let region = parse_region_json(&read_file(path)?)
        .map_err(|e| fail(2, format!("invalid region file: {e}\n")))?;
    let p = Point2::new(parse_rat_arg(&point[0], "x")?, parse_rat_arg(&point[1], "y")?);
    if let Some((a, b)) = region.geodesic_convexity_witness() {
        return Err(fail(
            2,
            format!(
                "region is not geodesically convex: no inside geodesic between {} and {}\n",
                fmt_point(&a),
                fmt_point(&b)
            ),
        ));
    }
    let trace =
        retract_point(&region, &p).map_err(|e| fail(2, format!("retraction failed: {e}\n")))?;
    let mut out = String::new();
    for (i, (q, tag)) in trace.steps.iter().enumerate() {
        let name = match tag {
            CaseTag::OneSector => "one-sector sweep",
            CaseTag::TwoSector => "two-sector sweep",
            CaseTag::ThreeSector => "three-sector ray",
        };
        writeln!(out, "step {}: {} -> {}", i + 1, name, fmt_point(q)).unwrap();
    }
    writeln!(out, "target: {}", fmt_point(&trace.target)).unwrap();
    match verify_nonexpansive(&region, &p, &trace.target, samples, seed)
        .map_err(|e| fail(2, format!("verification failed: {e}\n")))?
    {
        NonexpansiveCheck::Pass => {
            writeln!(out, "nonexpansive: pass ({samples} samples, seed {seed})").unwrap();
            Ok(out)
        }
        NonexpansiveCheck::Expanded { witness } => {
            writeln!(out, "nonexpansive: FAIL, witness {}", fmt_point(&witness)).unwrap();
            Err(fail(1, out))
        }
    }
}

fn cmd_helly(balls_path: &Path, region_path: Option<&Path>) -> CmdResult {
    let balls = parse_balls_json(&read_file(balls_path)?)
        .map_err(|e| fail(2, format!("invalid balls file: {e}\n")))?;
    if balls.is_empty() {
        return Err(fail(2, "balls file is empty\n"));
    }
    let mut out = String::new();
    let compatible = match balls_compatible(&balls)
        .map_err(|e| fail(2, format!("invalid family: {e}\n")))?
    {
        None => {
            writeln!(out, "compatible: yes").unwrap();
            true
        }
        Some((i, j)) => {
            writeln!(out, "compatible: no (balls {i} and {j})").unwrap();
            false
        }
    };
    let witness: Option<String> = match region_path {
        None => boxes_intersect(&balls)
            .map_err(|e| fail(2, format!("invalid family: {e}\n")))?
            .map(|w| {
                let coords: Vec<String> = w.0.iter().map(rat_to_string).collect();
                format!("({})", coords.join(", "))
            }),
        Some(rp) => {
            let region = parse_region_json(&read_file(rp)?)
                .map_err(|e| fail(2, format!("invalid region file: {e}\n")))?;
            region_balls_intersect(&region, &balls)
                .map_err(|e| fail(2, format!("invalid family: {e}\n")))?
                .map(|w| fmt_point(&w))
        }
    };
    match witness {
        Some(w) => {
            writeln!(out, "intersection: {w}").unwrap();
            Ok(out)
        }
        None => {
            writeln!(out, "intersection: empty").unwrap();
            if compatible {
                Err(fail(1, out))
            } else {
                Ok(out)
            }
        }
    }
}

fn cmd_counterexample(which: Counterexample) -> CmdResult {
    let mut out = String::new();
    match which {
        Counterexample::Hexagons => {
            let report = hexagon_counterexample();
            writeln!(out, "radius: {}", rat_to_string(&report.radius)).unwrap();
            for (i, c) in report.centers.iter().enumerate() {
                let coords: Vec<String> = c.0.iter().map(rat_to_string).collect();
                writeln!(out, "center {}: ({})", i + 1, coords.join(", ")).unwrap();
            }
            writeln!(out, "pairwise compatible: {}", report.compatible).unwrap();
            for (i, j, w) in &report.pairwise_witnesses {
                let coords: Vec<String> = w.0.iter().map(rat_to_string).collect();
                writeln!(out, "balls {} and {} meet at ({})", i + 1, j + 1, coords.join(", "))
                    .unwrap();
            }
            writeln!(out, "triple intersection empty: {}", report.triple_empty).unwrap();
            let certified = report.compatible
                && report.pairwise_witnesses.len() == 3
                && report.triple_empty;
            writeln!(
                out,
                "certified: binary intersection property {}",
                if certified { "fails as claimed" } else { "NOT certified" }
            )
            .unwrap();
            if certified {
                Ok(out)
            } else {
                Err(fail(1, out))
            }
        }
        Counterexample::Quad => {
            let fx = plane_quad_fixture();
            writeln!(
                out,
                "base distances: d(A,B) = {}, d(A,C) = {}, d(B,C) = {}",
                rat_to_string(fx.base.dist(0, 1)),
                rat_to_string(fx.base.dist(0, 2)),
                rat_to_string(fx.base.dist(1, 2))
            )
            .unwrap();
            // The marked vertex splits one side of the quadrilateral.
            let lift: Vec<_> = fx.quad_chart.iter().map(quad_chart_lift).collect();
            writeln!(
                out,
                "split edge lengths: {} and {}",
                rat_to_string(&linf_distance(&lift[1], &lift[2])),
                rat_to_string(&linf_distance(&lift[2], &lift[3]))
            )
            .unwrap();
            match plane_quad_witness() {
                Some(PlaneQuadWitness::NotTight { chart, point }) => {
                    let coords: Vec<String> = point.0.iter().map(rat_to_string).collect();
                    writeln!(
                        out,
                        "witness: profile of chart point {} = plane point ({}) is not tight",
                        fmt_point(&chart),
                        coords.join(", ")
                    )
                    .unwrap();
                    writeln!(out, "certified: quadrilateral is not the tight span").unwrap();
                    Ok(out)
                }
                Some(PlaneQuadWitness::DistanceMismatch { chart_p, chart_q, plane, span }) => {
                    writeln!(
                        out,
                        "witness: chart points {} and {}: plane {} vs span {}",
                        fmt_point(&chart_p),
                        fmt_point(&chart_q),
                        rat_to_string(&plane),
                        rat_to_string(&span)
                    )
                    .unwrap();
                    writeln!(out, "certified: quadrilateral is not the tight span").unwrap();
                    Ok(out)
                }
                None => {
                    writeln!(out, "no witness found").unwrap();
                    Err(fail(1, out))
                }
            }
        }
    }
}

fn cmd_render(region_path: &Path, out_path: &Path) -> CmdResult {
    let region = parse_region_json(&read_file(region_path)?)
        .map_err(|e| fail(2, format!("invalid region file: {e}\n")))?;
    let doc = render_svg(Some(&region), &[])
        .map_err(|e| fail(2, format!("cannot render: {e}\n")))?;
    std::fs::write(out_path, doc)
        .map_err(|e| fail(2, format!("cannot write {}: {e}\n", out_path.display())))?;
    Ok(format!("svg written to {}\n", out_path.display()))
}

fn cmd_oracle(metric_path: &Path, function: &[String]) -> CmdResult {
    let metric = parse_metric_json(&read_file(metric_path)?)
        .map_err(|e| fail(2, format!("invalid metric file: {e}\n")))?;
    let mut values = Vec::with_capacity(function.len());
    for (i, s) in function.iter().enumerate() {
        values.push(parse_rat_arg(s, &format!("function value {}", i + 1))?);
    }
    let f = TightFunction::new(metric, values)
        .map_err(|e| fail(1, format!("not in the span: {e}\n")))?;
    let mut out = String::new();
    writeln!(out, "gap table (f(x) + f(y) - d(x,y)):").unwrap();
    for row in f.gap_table() {
        let cells: Vec<String> = row.iter().map(rat_to_string).collect();
        writeln!(out, "  {}", cells.join(" ")).unwrap();
    }
    if f.is_tight_point() {
        writeln!(out, "tight: yes").unwrap();
        Ok(out)
    } else {
        let (t, passes) = descend_to_tight(&f);
        let vals: Vec<String> = t.values().iter().map(rat_to_string).collect();
        writeln!(out, "tight: no").unwrap();
        writeln!(out, "nearest tight point below: ({}) after {passes} passes", vals.join(", "))
            .unwrap();
        Err(fail(1, out))
    }
}
