//! Submodularity-based information inequalities.
//!
//! This crate computes and verifies, at desk scale, the family of
//! inequalities that submodularity induces on set functions:
//!
//! - strong and weak fractional bounds `Σ γ(S)·f(S|·)` sandwiching
//!   `f([1:n])` over fractional partitions, with covering/packing
//!   relaxations for monotone-prefix functions ([`mt`]);
//! - convex-functional generalizations applying a monotone transform to
//!   normalized values, with equality certification ([`convex`]);
//! - a slice-refined projection bound for finite point sets that tightens
//!   the classical product-of-projections bound ([`lw`]);
//! - an edge-count bound for difference-pattern graphs on the hypercube
//!   `{-1,1}^n` ([`pattern`]);
//! - deterministic random-instance generation and fuzz campaigns that pit
//!   every inequality against a brute-force oracle ([`harness`]).
//!
//! Set-function oracles ([`setfun`]) are pure and immutable; every verdict
//! is a signed slack rather than a bare boolean, so tightness can be
//! studied. With the default `parallel` feature, exhaustive checks and
//! campaigns fan out over rayon; disabling it gives a sequential build with
//! identical results.

pub mod convex;
pub mod family;
pub mod harness;
pub mod io;
pub mod lp;
pub mod lw;
pub mod mt;
pub mod pattern;
pub mod setfun;
pub mod subset;
pub mod tol;

mod exec;

pub use family::{SetFamily, WeightedFamily};
pub use setfun::{JointDistribution, SetFunctionOracle};
pub use subset::{GroundSet, Subset};

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("ground-set size {n} out of range (1..={})", subset::MAX_GROUND)]
    GroundSize { n: usize },

    #[error("element {element} outside ground set [1:{n}]")]
    ElementOutOfRange { element: usize, n: usize },

    #[error("invalid evaluation order: {reason}")]
    BadOrder { reason: String },

    #[error("oracle is not grounded: f(empty) = {value}")]
    NotGrounded { value: f64 },

    #[error("ground set of size {n} exceeds the exhaustive-check cap {cap}; refusing (no sampling fallback)")]
    TooLargeForExhaustive { n: usize, cap: usize },

    #[error("invalid joint distribution: {reason}")]
    PmfInvalid { reason: String },

    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: usize },

    #[error("family member {index} is empty")]
    EmptyMember { index: usize },

    #[error("family member {index} has multiplicity 0")]
    ZeroMultiplicity { index: usize },

    #[error("family has {members} members but {weights} weights")]
    WeightCount { members: usize, weights: usize },

    #[error("weight {index} is negative")]
    NegativeWeight { index: usize },

    #[error("subset size k={k} out of range 1..={n}")]
    SizeOutOfRange { k: usize, n: usize },

    #[error("element {element} belongs to no family member; covering impossible")]
    UncoveredElement { element: usize },

    #[error("family member {index} equals the full ground set; complement would be empty")]
    FullSetMember { index: usize },

    #[error("complement dual requires total weight > 1, got {total_weight}")]
    DualDegenerate { total_weight: f64 },

    #[error("covering LP infeasible (artificial residual {residual})")]
    LpInfeasible { residual: f64 },

    #[error("covering LP unbounded in column {column}")]
    LpUnbounded { column: usize },

    #[error("covering LP cost is not finite: {cost}")]
    LpBadCost { cost: f64 },

    #[error("weights are not a fractional partition: {reason}")]
    NotPartition { reason: String },

    #[error("weights classify neither as covering nor as packing: {reason}")]
    NotApplicable { reason: String },

    #[error("monotone-prefix check failed at prefix length {j}: f = {prev} then {next}")]
    MonotonePrefixRequired { j: usize, prev: f64, next: f64 },

    #[error("transform '{transform}' failed the sampled {property} check on [{lo}, {hi}]")]
    ShapeClaimFailed { transform: String, property: String, lo: f64, hi: f64 },

    #[error("equality certificate requires a strictly increasing transform; '{transform}' does not claim it")]
    NotStrictlyIncreasing { transform: String },

    #[error("invalid point set: {reason}")]
    PointSetInvalid { reason: String },

    #[error("invalid vertex set: {reason}")]
    VertexSetInvalid { reason: String },

    #[error("instance caps exceeded: {reason}")]
    CapsExceeded { reason: String },

    #[error("file format error: {reason}")]
    FileFormat { reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error("internal invariant violated: {reason}")]
    Internal { reason: String },
}
