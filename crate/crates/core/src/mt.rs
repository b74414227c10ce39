//! Strong and weak fractional bounds for grounded submodular functions, the
//! gap-duality identity, and the covering/packing relaxations.
//!
//! For a fractional partition `γ` on a family `F` and a grounded submodular
//! `f`, the four bounds sandwich `f([1:n])`:
//!
//! ```text
//! Σ γ(S)·f(S|S^c)  ≤  Σ γ(S)·f(S|S^c∖>S)  ≤  f([1:n])
//!                  ≤  Σ γ(S)·f(S|<S)      ≤  Σ γ(S)·f(S)
//! ```
//!
//! where `<S` / `>S` are the elements ordered strictly below / above all of
//! `S` in the ground-set evaluation order. The strong bounds depend on that
//! order; the weak bounds do not. For functions whose prefixes `f([1:j])`
//! are non-decreasing, fractional coverings stand in for `γ` on the upper
//! side and fractional packings on the lower side.

use serde::Serialize;

use crate::family::{classify_weights, complement_dual, WeightedFamily};
use crate::setfun::{check_structure, SetFunctionOracle, StructureFlag, StructureWitness};
use crate::subset::GroundSet;
use crate::tol;
use crate::Error;

/// How solid the submodularity premise behind a verdict is.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Premise {
    /// Exhaustively verified on this oracle.
    #[serde(rename = "verified")]
    Verified,
    /// Claimed by the oracle's builder but not verified here.
    #[serde(rename = "unverified-premise")]
    Claimed,
    /// Not even claimed; the verdict is informational only.
    #[serde(rename = "unclaimed")]
    Unclaimed,
}

/// One inequality check with its signed slack (`slack = rhs − lhs`; the
/// inequality holds when `slack ≥ −1e-9`).
#[derive(Clone, Debug, Serialize)]
pub struct InequalityVerdict {
    pub name: String,
    pub slack: f64,
    pub holds: bool,
    pub premise: Premise,
}

impl InequalityVerdict {
    fn new(name: &str, lhs: f64, rhs: f64, premise: Premise) -> Self {
        let slack = rhs - lhs;
        InequalityVerdict { name: name.to_string(), slack, holds: slack >= -tol::INEQ_ABS, premise }
    }
}

/// Values of the four bounds around `f([1:n])`, their gaps, and per-inequality
/// verdicts. Sides that do not apply (covering-only / packing-only weights)
/// are `None`.
#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub f_full: f64,
    pub strong_upper: Option<f64>,
    pub strong_lower: Option<f64>,
    pub weak_upper: Option<f64>,
    pub weak_lower: Option<f64>,
    /// `f([1:n]) − weak_lower`.
    pub gap_lower: Option<f64>,
    /// `weak_upper − f([1:n])`.
    pub gap_upper: Option<f64>,
    pub verdicts: Vec<InequalityVerdict>,
    pub order: Vec<usize>,
}

impl BoundReport {
    pub fn all_hold(&self) -> bool {
        self.verdicts.iter().all(|v| v.holds)
    }

    pub fn min_slack(&self) -> f64 {
        self.verdicts.iter().map(|v| v.slack).fold(f64::INFINITY, f64::min)
    }
}

fn require_grounded(f: &SetFunctionOracle) -> Result<(), Error> {
    let at_empty = f.eval(crate::Subset::EMPTY);
    if !f.claims().grounded || at_empty.abs() > tol::GROUNDED_ABS {
        return Err(Error::NotGrounded { value: at_empty });
    }
    Ok(())
}

fn premise_of(f: &SetFunctionOracle) -> Premise {
    if f.verified().submodular {
        Premise::Verified
    } else if f.claims().submodular {
        Premise::Claimed
    } else {
        Premise::Unclaimed
    }
}

fn check_dims(f: &SetFunctionOracle, wf: &WeightedFamily, ground: &GroundSet) -> Result<(), Error> {
    if f.n() != wf.n() || f.n() != ground.n() {
        return Err(Error::Internal {
            reason: format!(
                "dimension mismatch: oracle n={}, family n={}, order n={}",
                f.n(),
                wf.n(),
                ground.n()
            ),
        });
    }
    Ok(())
}

/// The four weighted sums of Theorem-style bounds for the given weights and
/// evaluation order. No classification checks; callers gate applicability.
fn bound_sums(f: &SetFunctionOracle, wf: &WeightedFamily, ground: &GroundSet) -> [f64; 4] {
    let n = ground.n();
    let mut strong_upper = 0.0;
    let mut strong_lower = 0.0;
    let mut weak_upper = 0.0;
    let mut weak_lower = 0.0;
    for (s, w) in wf.iter() {
        let w = w.value();
        if w == 0.0 {
            continue;
        }
        let comp = s.complement(n);
        strong_upper += w * f.conditional(s, ground.below(s));
        strong_lower += w * f.conditional(s, comp.minus(ground.above(s)));
        weak_upper += w * f.eval(s);
        weak_lower += w * f.conditional(s, comp);
    }
    [strong_upper, strong_lower, weak_upper, weak_lower]
}

/// Evaluates the strong and weak bounds for a fractional partition.
///
/// `f` must be grounded; non-partition weights are rejected (use
/// [`covering_packing_bounds`] for those). Verdicts are computed even when
/// submodularity is merely claimed, but are then labelled with an unverified
/// premise.
pub fn mt_bounds(
    f: &SetFunctionOracle,
    wf: &WeightedFamily,
    ground: &GroundSet,
) -> Result<BoundReport, Error> {
    check_dims(f, wf, ground)?;
    require_grounded(f)?;
    let class = classify_weights(wf);
    if !class.is_partition {
        return Err(Error::NotPartition {
            reason: format!("per-element sums {:?}", class.per_element),
        });
    }

    let f_full = f.eval(ground.full());
    let [strong_upper, strong_lower, weak_upper, weak_lower] = bound_sums(f, wf, ground);
    let premise = premise_of(f);
    let verdicts = vec![
        InequalityVerdict::new("weak_lower<=strong_lower", weak_lower, strong_lower, premise),
        InequalityVerdict::new("strong_lower<=f_full", strong_lower, f_full, premise),
        InequalityVerdict::new("f_full<=strong_upper", f_full, strong_upper, premise),
        InequalityVerdict::new("strong_upper<=weak_upper", strong_upper, weak_upper, premise),
    ];

    Ok(BoundReport {
        f_full,
        strong_upper: Some(strong_upper),
        strong_lower: Some(strong_lower),
        weak_upper: Some(weak_upper),
        weak_lower: Some(weak_lower),
        gap_lower: Some(f_full - weak_lower),
        gap_upper: Some(weak_upper - f_full),
        verdicts,
        order: ground.order().to_vec(),
    })
}

/// The two normalized weak-form gaps related by complement duality.
#[derive(Clone, Debug, Serialize)]
pub struct DualityRecord {
    /// `Gap_L(f,F,γ) / w(γ)`.
    pub gap_lower_normalized: f64,
    /// `Gap_U(f,F̄,γ̄) / w(γ̄)` on the complement dual.
    pub dual_gap_upper_normalized: f64,
    /// Absolute difference; zero (to rounding) for any grounded `f`.
    pub difference: f64,
}

/// Checks the gap-duality identity
/// `Gap_L(f,F,γ)/w(γ) = Gap_U(f,F̄,γ̄)/w(γ̄)`.
///
/// The identity is unconditional for grounded `f` (it only rewrites
/// `f(S|S^c)` through `f([1:n])`), so `difference` should vanish even for
/// non-submodular oracles.
pub fn mt_gaps_duality(f: &SetFunctionOracle, wf: &WeightedFamily) -> Result<DualityRecord, Error> {
    require_grounded(f)?;
    let n = f.n();
    if wf.n() != n {
        return Err(Error::Internal { reason: "oracle/family dimension mismatch".into() });
    }
    let class = classify_weights(wf);
    if !class.is_partition {
        return Err(Error::NotPartition {
            reason: format!("per-element sums {:?}", class.per_element),
        });
    }
    let dual = complement_dual(wf)?;
    let ground = GroundSet::identity(n)?;
    let f_full = f.eval(ground.full());

    let [.., weak_lower] = bound_sums(f, wf, &ground);
    let gap_lower = f_full - weak_lower;
    let w = wf.total_weight();

    let [_, _, dual_weak_upper, _] = bound_sums(f, &dual, &ground);
    let dual_gap_upper = dual_weak_upper - f_full;
    let w_dual = dual.total_weight();

    let a = gap_lower / w;
    let b = dual_gap_upper / w_dual;
    Ok(DualityRecord {
        gap_lower_normalized: a,
        dual_gap_upper_normalized: b,
        difference: (a - b).abs(),
    })
}

/// Covering/packing relaxation of [`mt_bounds`] for monotone-prefix `f`.
///
/// The monotone-prefix hypothesis is checked here (it is cheap) and a
/// violation is rejected with the offending prefix. Fractional coverings
/// yield the upper bounds, fractional packings the lower bounds; weights
/// that are a partition (both at once) reproduce the full report. The
/// identity evaluation order is used for the strong conditioning sets.
pub fn covering_packing_bounds(
    f: &SetFunctionOracle,
    wf: &WeightedFamily,
) -> Result<BoundReport, Error> {
    require_grounded(f)?;
    let n = f.n();
    if wf.n() != n {
        return Err(Error::Internal { reason: "oracle/family dimension mismatch".into() });
    }
    let report = check_structure(f, &[StructureFlag::MonotonePrefix])?;
    if let Some(v) = report.verdicts.first() {
        if !v.holds {
            if let Some(StructureWitness::Prefix { j, prev, next }) = &v.witness {
                return Err(Error::MonotonePrefixRequired { j: *j, prev: *prev, next: *next });
            }
        }
    }

    let class = classify_weights(wf);
    if !class.is_covering && !class.is_packing {
        return Err(Error::NotApplicable {
            reason: format!("per-element sums {:?}", class.per_element),
        });
    }

    let ground = GroundSet::identity(n)?;
    let f_full = f.eval(ground.full());
    let [strong_upper, strong_lower, weak_upper, weak_lower] = bound_sums(f, wf, &ground);
    let premise = premise_of(f);

    let mut verdicts = Vec::new();
    let mut out = BoundReport {
        f_full,
        strong_upper: None,
        strong_lower: None,
        weak_upper: None,
        weak_lower: None,
        gap_lower: None,
        gap_upper: None,
        verdicts: Vec::new(),
        order: ground.order().to_vec(),
    };
    if class.is_covering {
        verdicts.push(InequalityVerdict::new("f_full<=strong_upper", f_full, strong_upper, premise));
        verdicts.push(InequalityVerdict::new(
            "strong_upper<=weak_upper",
            strong_upper,
            weak_upper,
            premise,
        ));
        out.strong_upper = Some(strong_upper);
        out.weak_upper = Some(weak_upper);
        out.gap_upper = Some(weak_upper - f_full);
    }
    if class.is_packing {
        verdicts.push(InequalityVerdict::new(
            "weak_lower<=strong_lower",
            weak_lower,
            strong_lower,
            premise,
        ));
        verdicts.push(InequalityVerdict::new("strong_lower<=f_full", strong_lower, f_full, premise));
        out.strong_lower = Some(strong_lower);
        out.weak_lower = Some(weak_lower);
        out.gap_lower = Some(f_full - weak_lower);
    }
    out.verdicts = verdicts;
    Ok(out)
}
