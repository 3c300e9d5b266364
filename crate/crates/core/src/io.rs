//! JSON file formats. All coordinates and distances are exact rationals
//! written as strings ("3/2", "-1", "0"); serialization is canonical and
//! deterministic (regions are stored in their canonical form).

use crate::geometry::Point2;
use crate::hyperconvex::{Ball, HyperconvexError};
use crate::metric::{FiniteMetric, MetricError, PointN};
use crate::rat::{parse_rat, rat_to_string, Rat, RatParseError};
use crate::region::{RegionComplex, RegionError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FileError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid rational number: {0}")]
    Rat(#[from] RatParseError),
    #[error("invalid metric: {0}")]
    Metric(#[from] MetricError),
    #[error("invalid region: {0}")]
    Region(#[from] RegionError),
    #[error("invalid ball: {0}")]
    Ball(#[from] HyperconvexError),
}

#[derive(Debug, Serialize, Deserialize)]
struct MetricFile {
    labels: Vec<String>,
    dist: Vec<Vec<String>>,
}

pub fn parse_metric_json(s: &str) -> Result<FiniteMetric, FileError> {
    let raw: MetricFile = serde_json::from_str(s)?;
    let dist = raw
        .dist
        .iter()
        .map(|row| row.iter().map(|v| parse_rat(v)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FiniteMetric::new(raw.labels, dist)?)
}

pub fn metric_to_json(m: &FiniteMetric) -> String {
    let raw = MetricFile {
        labels: m.labels().to_vec(),
        dist: m
            .matrix()
            .iter()
            .map(|row| row.iter().map(rat_to_string).collect())
            .collect(),
    };
    serde_json::to_string_pretty(&raw).expect("serializable")
}

#[derive(Debug, Serialize, Deserialize)]
struct PointsFile {
    points: Vec<[String; 2]>,
}

pub fn parse_points_json(s: &str) -> Result<Vec<Point2>, FileError> {
    let raw: PointsFile = serde_json::from_str(s)?;
    raw.points
        .iter()
        .map(|[x, y]| Ok(Point2::new(parse_rat(x)?, parse_rat(y)?)))
        .collect()
}

pub fn points_to_json(points: &[Point2]) -> String {
    let raw = PointsFile { points: points.iter().map(point_pair).collect() };
    serde_json::to_string_pretty(&raw).expect("serializable")
}

fn point_pair(p: &Point2) -> [String; 2] {
    [rat_to_string(&p.x), rat_to_string(&p.y)]
}

#[derive(Debug, Serialize, Deserialize)]
struct RegionFile {
    points: Vec<[String; 2]>,
    segments: Vec<[[String; 2]; 2]>,
    cells: Vec<Vec<[String; 2]>>,
}

pub fn parse_region_json(s: &str) -> Result<RegionComplex, FileError> {
    let raw: RegionFile = serde_json::from_str(s)?;
    let parse_pt = |[x, y]: &[String; 2]| -> Result<Point2, FileError> {
        Ok(Point2::new(parse_rat(x)?, parse_rat(y)?))
    };
    let points = raw.points.iter().map(parse_pt).collect::<Result<Vec<_>, _>>()?;
    let segments = raw
        .segments
        .iter()
        .map(|[a, b]| Ok::<_, FileError>((parse_pt(a)?, parse_pt(b)?)))
        .collect::<Result<Vec<_>, _>>()?;
    let cells = raw
        .cells
        .iter()
        .map(|c| c.iter().map(parse_pt).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RegionComplex::new(points, segments, cells)?)
}

pub fn region_to_json(r: &RegionComplex) -> String {
    let raw = RegionFile {
        points: r.points().iter().map(point_pair).collect(),
        segments: r
            .segments()
            .iter()
            .map(|(a, b)| [point_pair(a), point_pair(b)])
            .collect(),
        cells: r
            .cells()
            .iter()
            .map(|c| c.iter().map(point_pair).collect())
            .collect(),
    };
    serde_json::to_string_pretty(&raw).expect("serializable")
}

#[derive(Debug, Serialize, Deserialize)]
struct BallsFile {
    balls: Vec<BallEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
struct BallEntry {
    center: Vec<String>,
    radius: String,
}

pub fn parse_balls_json(s: &str) -> Result<Vec<Ball>, FileError> {
    let raw: BallsFile = serde_json::from_str(s)?;
    raw.balls
        .iter()
        .map(|b| {
            let center = PointN(
                b.center.iter().map(|v| parse_rat(v)).collect::<Result<Vec<_>, _>>()?,
            );
            Ok(Ball::new(center, parse_rat(&b.radius)?)?)
        })
        .collect()
}

pub fn balls_to_json(balls: &[Ball]) -> String {
    let raw = BallsFile {
        balls: balls
            .iter()
            .map(|b| BallEntry {
                center: b.center.0.iter().map(rat_to_string).collect(),
                radius: rat_to_string(&b.radius),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&raw).expect("serializable")
}

#[derive(Debug, Serialize, Deserialize)]
struct ValuesFile {
    values: Vec<String>,
}

/// Parses a function-on-the-base-space file: `{"values": ["3/2", ...]}`.
pub fn parse_values_json(s: &str) -> Result<Vec<Rat>, FileError> {
    let raw: ValuesFile = serde_json::from_str(s)?;
    Ok(raw.values.iter().map(|v| parse_rat(v)).collect::<Result<Vec<_>, _>>()?)
}

pub fn values_to_json(values: &[Rat]) -> String {
    let raw = ValuesFile { values: values.iter().map(rat_to_string).collect() };
    serde_json::to_string_pretty(&raw).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_int;

    #[test]
    fn metric_roundtrip() {
        let src = r#"{"labels": ["a", "b"], "dist": [["0", "3/2"], ["3/2", "0"]]}"#;
        let m = parse_metric_json(src).unwrap();
        assert_eq!(*m.dist(0, 1), crate::rat::rat(3, 2));
        let again = parse_metric_json(&metric_to_json(&m)).unwrap();
        assert_eq!(again.matrix(), m.matrix());
    }

    #[test]
    fn metric_rejects_bad_data() {
        assert!(matches!(
            parse_metric_json(r#"{"labels": ["a"], "dist": [["1/0"]]}"#),
            Err(FileError::Rat(_))
        ));
        assert!(matches!(
            parse_metric_json(r#"{"labels": ["a", "b"], "dist": [["0", "1"], ["2", "0"]]}"#),
            Err(FileError::Metric(_))
        ));
        assert!(matches!(parse_metric_json("not json"), Err(FileError::Json(_))));
    }

    #[test]
    fn region_roundtrip_is_canonical() {
        let src = r#"{
            "points": [["0", "0"]],
            "segments": [[["0", "0"], ["1", "1"]], [["1", "1"], ["2", "2"]]],
            "cells": []
        }"#;
        let r = parse_region_json(src).unwrap();
        // The two collinear segments merge; the point is absorbed.
        assert_eq!(r.segments().len(), 1);
        let json = region_to_json(&r);
        assert_eq!(parse_region_json(&json).unwrap(), r);
        // Deterministic output.
        assert_eq!(json, region_to_json(&r));
    }

    #[test]
    fn balls_and_points_roundtrip() {
        let balls = parse_balls_json(
            r#"{"balls": [{"center": ["1", "-1/2"], "radius": "2"}]}"#,
        )
        .unwrap();
        assert_eq!(balls[0].radius, rat_int(2));
        let again = parse_balls_json(&balls_to_json(&balls)).unwrap();
        assert_eq!(again, balls);
        let pts = parse_points_json(r#"{"points": [["0", "0"], ["1/3", "2"]]}"#).unwrap();
        assert_eq!(parse_points_json(&points_to_json(&pts)).unwrap(), pts);
        assert!(parse_balls_json(
            r#"{"balls": [{"center": ["0"], "radius": "-1"}]}"#
        )
        .is_err());
    }

    #[test]
    fn values_roundtrip() {
        let vs = parse_values_json(r#"{"values": ["4", "4"]}"#).unwrap();
        assert_eq!(vs, vec![rat_int(4), rat_int(4)]);
        assert_eq!(parse_values_json(&values_to_json(&vs)).unwrap(), vs);
    }
}
