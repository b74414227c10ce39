//! Projection and slice statistics of finite point sets, and the classic
//! versus slice-refined product bounds.
//!
//! For `n` distinct points in `d` dimensions, the classic bound is
//! `n^{d-1} ≤ Π_i n_{-i}` where `n_{-i}` counts distinct projections onto
//! the hyperplane deleting coordinate `i`. The slice-refined bound replaces
//! one projection factor with the largest cardinality of a slice at a fixed
//! value of that coordinate, which can only shrink the product.
//!
//! Coordinates are exact rationals so distinctness and projection
//! deduplication are exact; bound values are exact integers. Only the
//! entropy cross-check ([`entropy_cross_check`]) touches floats.

use std::collections::{BTreeMap, BTreeSet};

use num::rational::Ratio;
use serde::Serialize;

use crate::exec;
use crate::setfun::{entropy_oracle, JointDistribution};
use crate::subset::Subset;
use crate::tol;
use crate::Error;

/// Exact point coordinate.
pub type Coord = Ratio<i64>;

/// A set of distinct exact-coordinate points in `d ≥ 2` dimensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    d: usize,
    points: Vec<Vec<Coord>>,
}

impl PointSet {
    pub fn new(d: usize, points: Vec<Vec<Coord>>) -> Result<Self, Error> {
        if d < 2 {
            return Err(Error::PointSetInvalid { reason: format!("dimension {d} < 2") });
        }
        if points.is_empty() {
            return Err(Error::PointSetInvalid { reason: "no points".into() });
        }
        if let Some(p) = points.iter().find(|p| p.len() != d) {
            return Err(Error::PointSetInvalid {
                reason: format!("point {p:?} has {} coordinates, expected {d}", p.len()),
            });
        }
        let mut seen = BTreeSet::new();
        for p in &points {
            if !seen.insert(p.clone()) {
                return Err(Error::PointSetInvalid { reason: format!("duplicate point {p:?}") });
            }
        }
        Ok(PointSet { d, points })
    }

    pub fn from_integers(d: usize, points: &[Vec<i64>]) -> Result<Self, Error> {
        let pts = points
            .iter()
            .map(|p| p.iter().map(|&c| Ratio::from_integer(c)).collect())
            .collect();
        PointSet::new(d, pts)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<Coord>] {
        &self.points
    }
}

/// Distinct-projection counts and maximum slice cardinalities, one per
/// coordinate (index `i-1` holds coordinate `i`).
#[derive(Clone, Debug, Serialize)]
pub struct ProjectionStats {
    /// `n_{-i}`: distinct `(d-1)`-tuples after deleting coordinate `i`.
    pub n_minus: Vec<u64>,
    /// Largest number of points sharing one value of coordinate `i`. Since
    /// points are distinct, these are also distinct after deleting `i`.
    pub slice_max: Vec<u64>,
    /// A value of coordinate `i` attaining `slice_max[i-1]` (the smallest
    /// such value).
    pub slice_arg: Vec<Coord>,
}

/// Computes projection and slice statistics for every coordinate.
pub fn projection_counts(ps: &PointSet) -> ProjectionStats {
    let d = ps.d();
    let mut n_minus = Vec::with_capacity(d);
    let mut slice_max = Vec::with_capacity(d);
    let mut slice_arg = Vec::with_capacity(d);
    for i in 0..d {
        let mut proj = BTreeSet::new();
        let mut slices: BTreeMap<Coord, u64> = BTreeMap::new();
        for p in ps.points() {
            let mut q = p.clone();
            q.remove(i);
            proj.insert(q);
            *slices.entry(p[i]).or_insert(0) += 1;
        }
        let (arg, count) = slices
            .iter()
            .fold((Coord::from_integer(0), 0u64), |(a, c), (&v, &cnt)| {
                if cnt > c {
                    (v, cnt)
                } else {
                    (a, c)
                }
            });
        n_minus.push(proj.len() as u64);
        slice_max.push(count);
        slice_arg.push(arg);
    }
    ProjectionStats { n_minus, slice_max, slice_arg }
}

/// Both product bounds for one choice of slice coordinate, in exact integer
/// arithmetic.
#[derive(Clone, Debug, Serialize)]
pub struct LwBounds {
    pub n: u64,
    pub d: usize,
    pub slice_coord: usize,
    /// `n^{d-1}`.
    pub n_power: u128,
    /// `Π_i n_{-i}`.
    pub classic: u128,
    /// `(Π_{i≠slice} n_{-i}) · slice_max(slice)`.
    pub strong: u128,
    pub classic_holds: bool,
    pub strong_holds: bool,
    pub strong_le_classic: bool,
    pub stats: ProjectionStats,
}

/// Evaluates the classic and slice-refined bounds with the slice placed on
/// `slice_coord` (1-based).
pub fn lw_bounds(ps: &PointSet, slice_coord: usize) -> Result<LwBounds, Error> {
    let d = ps.d();
    if slice_coord < 1 || slice_coord > d {
        return Err(Error::ElementOutOfRange { element: slice_coord, n: d });
    }
    let stats = projection_counts(ps);
    let n = ps.len() as u64;
    let n_power = (n as u128).pow(d as u32 - 1);
    let classic: u128 = stats.n_minus.iter().map(|&c| c as u128).product();
    let strong: u128 = stats
        .n_minus
        .iter()
        .enumerate()
        .map(|(i, &c)| if i + 1 == slice_coord { stats.slice_max[i] as u128 } else { c as u128 })
        .product();
    Ok(LwBounds {
        n,
        d,
        slice_coord,
        n_power,
        classic,
        strong,
        classic_holds: n_power <= classic,
        strong_holds: n_power <= strong,
        strong_le_classic: strong <= classic,
        stats,
    })
}

/// Evaluates the slice-refined bound for every slice choice and returns the
/// minimizer (ties broken by the lowest coordinate index).
pub fn best_slice_coord(ps: &PointSet) -> (usize, u128) {
    let d = ps.d();
    let bounds: Vec<u128> =
        exec::map_indexed(d, |i| lw_bounds(ps, i + 1).expect("coordinate in range").strong);
    let mut best = (1usize, bounds[0]);
    for (i, &b) in bounds.iter().enumerate().skip(1) {
        if b < best.1 {
            best = (i + 1, b);
        }
    }
    best
}

/// Entropy chain behind the slice-refined bound, evaluated on the uniform
/// distribution over the points.
#[derive(Clone, Debug, Serialize)]
pub struct EntropyCrossCheck {
    /// `(d−1)·H(X) = (d−1)·ln n`.
    pub lhs: f64,
    /// `Σ_{i≠slice} H(X_{−i}) + H(X_{−slice} | X_slice)`.
    pub mid: f64,
    /// `ln(strong bound)`.
    pub rhs: f64,
    pub holds: bool,
}

/// Checks `(d−1)·H(X) ≤ Σ_{i≠c} H(X_{−i}) + H(X_{−c}|X_c) ≤ ln(strong)` for
/// the uniform distribution on the point set, with `c = slice_coord`.
pub fn entropy_cross_check(ps: &PointSet, slice_coord: usize) -> Result<EntropyCrossCheck, Error> {
    let d = ps.d();
    if slice_coord < 1 || slice_coord > d {
        return Err(Error::ElementOutOfRange { element: slice_coord, n: d });
    }
    // Relabel each coordinate's values to 0-based alphabet indices.
    let mut alphabets: Vec<BTreeMap<Coord, usize>> = vec![BTreeMap::new(); d];
    for p in ps.points() {
        for (i, &v) in p.iter().enumerate() {
            let next = alphabets[i].len();
            alphabets[i].entry(v).or_insert(next);
        }
    }
    let sizes: Vec<usize> = alphabets.iter().map(|a| a.len()).collect();
    let cells: usize = sizes.iter().product();
    let mut pmf = vec![0.0f64; cells];
    let mass = 1.0 / ps.len() as f64;
    for p in ps.points() {
        let mut idx = 0usize;
        for (i, &v) in p.iter().enumerate() {
            idx = idx * sizes[i] + alphabets[i][&v];
        }
        pmf[idx] = mass;
    }
    let dist = JointDistribution::new(sizes, pmf)?;
    let f = entropy_oracle(&dist);

    let full = Subset::full(d);
    let lhs = (d as f64 - 1.0) * f.eval(full);
    let mut mid = 0.0;
    for i in 1..=d {
        let minus_i = full.minus(Subset::singleton(i));
        if i == slice_coord {
            mid += f.eval(full) - f.eval(Subset::singleton(i));
        } else {
            mid += f.eval(minus_i);
        }
    }
    let strong = lw_bounds(ps, slice_coord)?.strong;
    let rhs = (strong as f64).ln();
    let holds = lhs <= mid + tol::INEQ_ABS && mid <= rhs + tol::INEQ_ABS;
    Ok(EntropyCrossCheck { lhs, mid, rhs, holds })
}
