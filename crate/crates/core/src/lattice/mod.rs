//! Finite point sets in `Z^d`: projections, collinearity, crosses and the
//! classification of 3- and 4-point sets.

mod classify;
mod coloring;
pub mod linalg;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::set::parse_int_list;

pub use classify::{
    pnum_collinear, pnum_zd_small, tiles_if_independent, torus_tiling, Certificate, IndependentTiling,
    TorusTiling, ZdPnum,
};
pub use coloring::{
    alternating_block_coloring, cross_coloring, cross_set, semicross_coloring, semicross_set, LatticeColoring,
};

/// A finite set of distinct points in `Z^d`, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct LatticeSet {
    dim: usize,
    points: Vec<Vec<i64>>,
}

impl LatticeSet {
    pub fn new(points: Vec<Vec<i64>>) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::EmptySet);
        };
        let dim = first.len();
        if dim == 0 {
            return Err(Error::DimensionMismatch { expected: 1, got: 0 });
        }
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: p.len(),
            });
        }
        let mut points = points;
        points.sort();
        if let Some(w) = points.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Parse(format!("duplicate point {}", Point(&w[0]))));
        }
        Ok(Self { dim, points })
    }

    /// Like [`LatticeSet::new`] but merges repeated points.
    pub fn collapsing(mut points: Vec<Vec<i64>>) -> Result<Self> {
        points.sort();
        points.dedup();
        Self::new(points)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.points.binary_search_by(|p| p.as_slice().cmp(v)).is_ok()
    }

    pub fn translated(&self, t: &[i64]) -> Self {
        let points = self
            .points
            .iter()
            .map(|p| p.iter().zip(t).map(|(x, y)| x + y).collect())
            .collect();
        Self::new(points).expect("translation keeps points distinct")
    }

    /// Translate with the least point at the origin.
    pub fn based(&self) -> Self {
        let t: Vec<i64> = self.points[0].iter().map(|x| -x).collect();
        self.translated(&t)
    }

    /// Differences `p - points[0]` of the later points.
    pub fn differences(&self) -> Vec<Vec<i64>> {
        let base = &self.points[0];
        self.points[1..]
            .iter()
            .map(|p| p.iter().zip(base).map(|(x, y)| x - y).collect())
            .collect()
    }
}

struct Point<'a>(&'a [i64]);

impl fmt::Display for Point<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        crate::set::write_list(f, self.0)?;
        f.write_str(")")
    }
}

/// `(0,0);(1,2);(3,4)`.
impl fmt::Display for LatticeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{}", Point(p))?;
        }
        Ok(())
    }
}

impl FromStr for LatticeSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let points = s
            .split(';')
            .map(|tok| {
                let tok = tok.trim();
                let inner = tok
                    .strip_prefix('(')
                    .and_then(|t| t.strip_suffix(')'))
                    .ok_or_else(|| Error::Parse(format!("point {tok:?} is not parenthesized")))?;
                parse_int_list(inner)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(points)
    }
}

/// `w = (w_1, ..., w_{d-1}, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ProjectionVector(Vec<i64>);

impl ProjectionVector {
    pub fn new(w: Vec<i64>) -> Result<Self> {
        match w.last() {
            Some(1) if w.len() >= 2 => Ok(Self(w)),
            Some(1) => Err(Error::InvalidProjection("need dimension at least 2".into())),
            _ => Err(Error::InvalidProjection(format!(
                "last coordinate must be 1 in {}",
                Point(&w)
            ))),
        }
    }

    /// `(w_1, ..., w_{d-1})` padded with the final 1.
    pub fn from_head(head: &[i64]) -> Self {
        let mut w = head.to_vec();
        w.push(1);
        Self(w)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    /// `f_w(v) = (v_1, ..., v_{d-1}) - v_d (w_1, ..., w_{d-1})`.
    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        let d = self.0.len();
        let last = v[d - 1];
        (0..d - 1).map(|i| v[i] - last * self.0[i]).collect()
    }
}

impl fmt::Display for ProjectionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::set::write_list(f, &self.0)
    }
}

impl FromStr for ProjectionVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        Self::new(parse_int_list(inner)?)
    }
}

/// Image of `S` under `f_w`, in dimension `d - 1`.
pub fn project(set: &LatticeSet, w: &ProjectionVector) -> Result<LatticeSet> {
    if set.dim() < 2 {
        return Err(Error::InvalidProjection("cannot project from dimension 1".into()));
    }
    if w.dim() != set.dim() {
        return Err(Error::DimensionMismatch {
            expected: set.dim(),
            got: w.dim(),
        });
    }
    LatticeSet::collapsing(set.points().iter().map(|p| w.apply(p)).collect())
}

fn is_multiple_of(v: &[i64], w: &[i64]) -> bool {
    let d = w.len();
    let t = v[d - 1];
    (0..d).all(|i| v[i] == t * w[i])
}

/// The first `w = (w_1, 0, ..., 0, 1)`, `w_1 = 0, 1, 2, ...`, parallel to no
/// difference of `S`, so that `f_w` is injective on `S`.
pub fn injective_projection(set: &LatticeSet) -> Result<ProjectionVector> {
    let d = set.dim();
    if d < 2 {
        return Err(Error::InvalidProjection("cannot project from dimension 1".into()));
    }
    let pts = set.points();
    let diffs: Vec<Vec<i64>> = (0..pts.len())
        .flat_map(|i| (i + 1..pts.len()).map(move |j| (i, j)))
        .map(|(i, j)| pts[j].iter().zip(&pts[i]).map(|(x, y)| x - y).collect())
        .collect();
    let mut head = vec![0; d - 1];
    loop {
        let w = ProjectionVector::from_head(&head);
        if diffs.iter().all(|v| !is_multiple_of(v, w.as_slice())) {
            return Ok(w);
        }
        head[0] += 1;
    }
}

/// Projects to `Z` by repeated injective projections.
pub fn project_to_line(set: &LatticeSet) -> Result<(Vec<ProjectionVector>, LatticeSet)> {
    let mut current = set.clone();
    let mut chain = Vec::new();
    while current.dim() > 1 {
        let w = injective_projection(&current)?;
        current = project(&current, &w)?;
        chain.push(w);
    }
    Ok((chain, current))
}

/// Collinearity type of a lattice set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Collinearity {
    /// Points `p_0 + l_i a` with primitive `a`, first nonzero coordinate
    /// positive, and parameters ascending from 0.
    AllCollinear { direction: Vec<i64>, params: Vec<i64> },
    /// The largest collinear subset has this many points (at least 3).
    ExactlyCollinear(usize),
    /// No three points collinear.
    GeneralPosition,
}

fn primitive(v: &[i64]) -> Vec<i64> {
    let g = v.iter().fold(0, |g, &x| gcd(g, x)).max(1);
    let sign = v.iter().find(|&&x| x != 0).map_or(1, |x| x.signum());
    v.iter().map(|x| sign * x / g).collect()
}

pub(crate) fn collinear(p: &[i64], q: &[i64], r: &[i64]) -> bool {
    let u: Vec<i64> = q.iter().zip(p).map(|(a, b)| a - b).collect();
    let v: Vec<i64> = r.iter().zip(p).map(|(a, b)| a - b).collect();
    (0..u.len()).all(|i| (i + 1..u.len()).all(|j| u[i] as i128 * v[j] as i128 == u[j] as i128 * v[i] as i128))
}

pub fn collinear_structure(set: &LatticeSet) -> Result<Collinearity> {
    let pts = set.points();
    let n = pts.len();
    if n < 2 {
        return Err(Error::TooSmall { needed: 2, got: n });
    }
    let mut largest = 2;
    for i in 0..n {
        for j in i + 1..n {
            let on_line = (0..n)
                .filter(|&k| k == i || k == j || collinear(&pts[i], &pts[j], &pts[k]))
                .count();
            largest = largest.max(on_line);
        }
    }
    if largest == n {
        let diff: Vec<i64> = pts[1].iter().zip(&pts[0]).map(|(a, b)| a - b).collect();
        let direction = primitive(&diff);
        let axis = direction.iter().position(|&x| x != 0).expect("distinct points");
        let mut params: Vec<i64> = pts
            .iter()
            .map(|p| (p[axis] - pts[0][axis]) / direction[axis])
            .collect();
        let low = *params.iter().min().expect("nonempty");
        params.iter_mut().for_each(|l| *l -= low);
        params.sort_unstable();
        Ok(Collinearity::AllCollinear { direction, params })
    } else if largest >= 3 {
        Ok(Collinearity::ExactlyCollinear(largest))
    } else {
        Ok(Collinearity::GeneralPosition)
    }
}
