//! Finite metric spaces with exact rational distances.
//!
//! A [`FiniteMetric`] is a labelled symmetric distance matrix that has been
//! checked against the metric axioms. Validation is witness-producing: every
//! rejection names the offending entries so callers can report precisely
//! what failed.

use crate::rat::{rat_max, Rat};
use num_traits::Zero;
use thiserror::Error;

/// A point of some R^n with rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PointN(pub Vec<Rat>);

impl PointN {
    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

/// Sup-distance between two points of the same R^n.
///
/// Panics if dimensions differ; callers validate dimensions at the boundary.
pub fn linf_distance(p: &PointN, q: &PointN) -> Rat {
    assert_eq!(p.dim(), q.dim(), "dimension mismatch");
    let mut best = Rat::zero();
    for (a, b) in p.0.iter().zip(q.0.iter()) {
        let d = if a >= b { a - b } else { b - a };
        best = rat_max(&best, &d);
    }
    best
}

/// Witness-carrying rejection from [`validate_metric`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricError {
    #[error("matrix is not square: row {row} has length {len}, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("label count {labels} does not match matrix size {size}")]
    LabelCountMismatch { labels: usize, size: usize },
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("asymmetric matrix: dist[{i}][{j}] != dist[{j}][{i}]")]
    AsymmetricMatrix { i: usize, j: usize },
    #[error("nonzero diagonal entry at index {0}")]
    NonzeroDiagonal(usize),
    #[error("negative distance at dist[{i}][{j}]")]
    NegativeDistance { i: usize, j: usize },
    #[error("zero distance between distinct points {i} and {j}")]
    ZeroOffDiagonal { i: usize, j: usize },
    #[error("triangle inequality violated: d({i},{k}) > d({i},{j}) + d({j},{k})")]
    TriangleViolation { i: usize, j: usize, k: usize },
    #[error("glue overlap is empty")]
    EmptyOverlap,
    #[error("glue inputs disagree on overlap pair (`{0}`, `{1}`)")]
    OverlapMismatch(String, String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
}

/// A validated finite metric space: labels plus a symmetric distance matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMetric {
    labels: Vec<String>,
    dist: Vec<Vec<Rat>>,
}

impl FiniteMetric {
    /// Validates and wraps a labelled distance matrix.
    pub fn new(labels: Vec<String>, dist: Vec<Vec<Rat>>) -> Result<Self, MetricError> {
        validate_metric(&labels, &dist)?;
        Ok(FiniteMetric { labels, dist })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dist(&self, i: usize, j: usize) -> &Rat {
        &self.dist[i][j]
    }

    pub fn matrix(&self) -> &[Vec<Rat>] {
        &self.dist
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Metric induced by a list of points of R^n under the sup norm.
    ///
    /// Points must be pairwise distinct (otherwise `ZeroOffDiagonal`).
    pub fn from_linf_points(labels: Vec<String>, points: &[PointN]) -> Result<Self, MetricError> {
        let n = points.len();
        let mut dist = vec![vec![Rat::zero(); n]; n];
        for i in 0..n {
            for j in (i + 1)..n {
                let d = linf_distance(&points[i], &points[j]);
                dist[i][j] = d.clone();
                dist[j][i] = d;
            }
        }
        FiniteMetric::new(labels, dist)
    }

    /// Restriction to a subset of indices, in the given order.
    pub fn restrict(&self, indices: &[usize]) -> Result<Self, MetricError> {
        let labels = indices.iter().map(|&i| self.labels[i].clone()).collect();
        let dist = indices
            .iter()
            .map(|&i| indices.iter().map(|&j| self.dist[i][j].clone()).collect())
            .collect();
        FiniteMetric::new(labels, dist)
    }
}

/// Checks the metric axioms on a labelled matrix, naming the first witness
/// of any failure. Check order: shape, labels, symmetry, diagonal, signs,
/// distinctness, triangle inequality.
pub fn validate_metric(labels: &[String], dist: &[Vec<Rat>]) -> Result<(), MetricError> {
    let n = dist.len();
    for (row, r) in dist.iter().enumerate() {
        if r.len() != n {
            return Err(MetricError::NotSquare { row, len: r.len(), expected: n });
        }
    }
    if labels.len() != n {
        return Err(MetricError::LabelCountMismatch { labels: labels.len(), size: n });
    }
    for (i, l) in labels.iter().enumerate() {
        if labels[..i].contains(l) {
            return Err(MetricError::DuplicateLabel(l.clone()));
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if dist[i][j] != dist[j][i] {
                return Err(MetricError::AsymmetricMatrix { i, j });
            }
        }
    }
    for i in 0..n {
        if !dist[i][i].is_zero() {
            return Err(MetricError::NonzeroDiagonal(i));
        }
    }
    for i in 0..n {
        for j in 0..n {
            if dist[i][j] < Rat::zero() {
                return Err(MetricError::NegativeDistance { i, j });
            }
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if dist[i][j].is_zero() {
                return Err(MetricError::ZeroOffDiagonal { i, j });
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if &dist[i][k] > &(&dist[i][j] + &dist[j][k]) {
                    return Err(MetricError::TriangleViolation { i, j, k });
                }
            }
        }
    }
    Ok(())
}

/// Glues two metric spaces along their common labels.
///
/// The glued distance between `x` in the first space and `y` in the second
/// is the minimum over overlap labels `u` of `d1(x,u) + d2(u,y)`; distances
/// within either space are kept. The overlap must be nonempty and the two
/// inputs must agree on it. The result is re-validated (the formula always
/// yields a pseudometric; validation also certifies distinctness).
pub fn glue_metrics(m1: &FiniteMetric, m2: &FiniteMetric) -> Result<FiniteMetric, MetricError> {
    let overlap: Vec<String> = m1
        .labels()
        .iter()
        .filter(|l| m2.index_of(l).is_some())
        .cloned()
        .collect();
    if overlap.is_empty() {
        return Err(MetricError::EmptyOverlap);
    }
    for a in &overlap {
        for b in &overlap {
            let i1 = m1.index_of(a).unwrap();
            let j1 = m1.index_of(b).unwrap();
            let i2 = m2.index_of(a).unwrap();
            let j2 = m2.index_of(b).unwrap();
            if m1.dist(i1, j1) != m2.dist(i2, j2) {
                return Err(MetricError::OverlapMismatch(a.clone(), b.clone()));
            }
        }
    }
    // Union label list: all of m1, then the m2-only labels in m2 order.
    let mut labels = m1.labels().to_vec();
    for l in m2.labels() {
        if m1.index_of(l).is_none() {
            labels.push(l.clone());
        }
    }
    let n = labels.len();
    let mut dist = vec![vec![Rat::zero(); n]; n];
    let locate = |label: &str| -> (Option<usize>, Option<usize>) {
        (m1.index_of(label), m2.index_of(label))
    };
    for i in 0..n {
        for j in (i + 1)..n {
            let (a1, a2) = locate(&labels[i]);
            let (b1, b2) = locate(&labels[j]);
            let d = match ((a1, b1), (a2, b2)) {
                ((Some(x), Some(y)), _) => m1.dist(x, y).clone(),
                (_, (Some(x), Some(y))) => m2.dist(x, y).clone(),
                _ => {
                    // One label is exclusive to each side: infimum over the overlap.
                    let mut best: Option<Rat> = None;
                    for u in &overlap {
                        let via = match ((a1, b1), (a2, b2)) {
                            ((Some(x), None), (None, Some(y))) => {
                                m1.dist(x, m1.index_of(u).unwrap())
                                    + m2.dist(m2.index_of(u).unwrap(), y)
                            }
                            ((None, Some(y)), (Some(x), None)) => {
                                m2.dist(x, m2.index_of(u).unwrap())
                                    + m1.dist(m1.index_of(u).unwrap(), y)
                            }
                            _ => unreachable!("label belongs to at least one space"),
                        };
                        best = Some(match best {
                            None => via,
                            Some(b) => if via < b { via } else { b },
                        });
                    }
                    best.expect("nonempty overlap")
                }
            };
            dist[i][j] = d.clone();
            dist[j][i] = d;
        }
    }
    FiniteMetric::new(labels, dist)
}

/// Finds a midpoint of `i` and `j`: the first label `z` (in label order)
/// with `d(i,z) = d(z,j) = d(i,j)/2`.
pub fn has_midpoint(m: &FiniteMetric, i: usize, j: usize) -> Option<usize> {
    let half = m.dist(i, j) / crate::rat::rat_int(2);
    (0..m.len()).find(|&z| m.dist(i, z) == &half && m.dist(z, j) == &half)
}
