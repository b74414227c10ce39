//! Numeric tolerances used across the crate.
//!
//! Everything here is an absolute tolerance unless stated otherwise. The
//! inequality tolerance is deliberately loose relative to f64 precision:
//! bound evaluations sum up to `2^20` terms of entropy-scale magnitude, so
//! accumulated rounding stays well below `1e-9` while genuine violations
//! (which are algebraically impossible for valid inputs) sit far above it.

/// Absolute slack tolerance for inequality verdicts on real-valued set
/// functions. A verdict `a <= b` passes iff `b - a >= -INEQ_ABS`.
pub const INEQ_ABS: f64 = 1e-9;

/// Probability mass functions must sum to 1 within this tolerance.
pub const PMF_SUM_ABS: f64 = 1e-12;

/// A grounded oracle must satisfy `|f(empty)| <= GROUNDED_ABS`.
pub const GROUNDED_ABS: f64 = 1e-12;

/// Weight comparisons for float-valued fractional partitions/coverings.
pub const WEIGHT_ABS: f64 = 1e-9;

/// Linear-program optimality: pivoting stops when no reduced cost is below
/// `-LP_PIVOT_ABS`; the returned objective is within `1e-7` of the optimum
/// at desk scale (at most 200 columns, 20 rows).
pub const LP_PIVOT_ABS: f64 = 1e-9;

/// Relative tolerance for the sampled second-difference affinity test in
/// equality certificates: `max |second difference| <= AFFINE_REL * scale`.
pub const AFFINE_REL: f64 = 1e-8;

/// Tight agreement tolerance for values that must coincide up to float
/// rounding (identity-transform reductions, log-base cancellation).
pub const AGREE_ABS: f64 = 1e-12;
