//! Convex-functional generalizations of the fractional bounds.
//!
//! A monotone non-decreasing transform `g` applied to normalized values
//! turns the strong upper bound into
//!
//! ```text
//! g(f([1:n])/n)  ≤  Σ (γ(S)|S|/n) · g(f(S|<S)/|S|)        (g convex)
//! g(f([1:n])/n)  ≥  Σ (γ(S)|S|/n) · g(f(S|S^c∖>S)/|S|)    (g concave)
//! ```
//!
//! by Jensen's inequality, since the coefficients `γ(S)|S|/n` of a
//! fractional partition sum to one. The weak variants replace the
//! conditioned values by `f(S)` / `f(S|S^c)` and admit an exact equality
//! characterization: for strictly increasing `g`, equality holds iff `f` is
//! modular and `g` is affine on the interval spanned by the normalized
//! values. Coverings and packings slot in after renormalizing by
//! `v = Σ weight(S)|S|/n`, provided the prefixes `f([1:j])` are
//! non-decreasing.
//!
//! The supermodular/non-increasing variant is not a separate code path:
//! negate the oracle ([`setfun::negated_oracle`](crate::setfun)) and reflect
//! the transform ([`ScalarTransform::reflected`]), which maps it onto the
//! inequalities above term by term.

use std::sync::Arc;

use num::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::family::{classify_weights, WeightedFamily};
use crate::mt::{InequalityVerdict, Premise};
use crate::setfun::{
    check_structure, entropy_oracle, JointDistribution, SetFunctionOracle, StructureFlag,
    StructureWitness,
};
use crate::subset::GroundSet;
use crate::tol;
use crate::Error;

const SHAPE_SAMPLES: usize = 64;

/// Claimed shape properties of a scalar transform.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ShapeClaims {
    pub nondecreasing: bool,
    pub nonincreasing: bool,
    pub convex: bool,
    pub concave: bool,
    pub strictly_increasing: bool,
}

/// A total scalar transform `g: R → R` with claimed shape properties.
///
/// Claims are verified numerically on demand (sampled first/second
/// differences over the interval an operation actually spans); the builtins
/// carry the claims their closed forms justify.
#[derive(Clone)]
pub struct ScalarTransform {
    g: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    claims: ShapeClaims,
    name: String,
}

impl std::fmt::Debug for ScalarTransform {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ScalarTransform")
            .field("name", &self.name)
            .field("claims", &self.claims)
            .finish()
    }
}

impl ScalarTransform {
    pub fn custom<F>(name: &str, claims: ShapeClaims, g: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        ScalarTransform { g: Arc::new(g), claims, name: name.to_string() }
    }

    /// `x ↦ x`.
    pub fn identity() -> Self {
        ScalarTransform::custom(
            "identity",
            ShapeClaims {
                nondecreasing: true,
                convex: true,
                concave: true,
                strictly_increasing: true,
                ..ShapeClaims::default()
            },
            |x| x,
        )
    }

    /// `x ↦ e^{2x}` (the entropy-power transform).
    pub fn exp2x() -> Self {
        ScalarTransform::custom(
            "exp2x",
            ShapeClaims {
                nondecreasing: true,
                convex: true,
                strictly_increasing: true,
                ..ShapeClaims::default()
            },
            |x| (2.0 * x).exp(),
        )
    }

    /// `x ↦ a·x + b`.
    pub fn affine(a: f64, b: f64) -> Self {
        ScalarTransform::custom(
            &format!("affine:{a},{b}"),
            ShapeClaims {
                nondecreasing: a >= 0.0,
                nonincreasing: a <= 0.0,
                convex: true,
                concave: true,
                strictly_increasing: a > 0.0,
            },
            move |x| a * x + b,
        )
    }

    /// `x ↦ max(x,0)^p` for `p ≥ 1`; the intended domain is `x ≥ 0`.
    pub fn power(p: f64) -> Result<Self, Error> {
        if !(p >= 1.0) {
            return Err(Error::FileFormat { reason: format!("power exponent must be >= 1, got {p}") });
        }
        Ok(ScalarTransform::custom(
            &format!("power:{p}"),
            ShapeClaims {
                nondecreasing: true,
                convex: true,
                strictly_increasing: true,
                ..ShapeClaims::default()
            },
            move |x| x.max(0.0).powf(p),
        ))
    }

    /// `x ↦ sqrt(max(x,0))`: concave non-decreasing on the intended domain
    /// `x ≥ 0`.
    pub fn sqrt() -> Self {
        ScalarTransform::custom(
            "sqrt",
            ShapeClaims {
                nondecreasing: true,
                concave: true,
                strictly_increasing: true,
                ..ShapeClaims::default()
            },
            |x| x.max(0.0).sqrt(),
        )
    }

    /// Parses the CLI/JSON transform syntax:
    /// `identity | exp2x | affine:a,b | power:p`.
    pub fn parse(spec: &str) -> Result<Self, Error> {
        match spec {
            "identity" => return Ok(ScalarTransform::identity()),
            "exp2x" => return Ok(ScalarTransform::exp2x()),
            _ => {}
        }
        if let Some(rest) = spec.strip_prefix("affine:") {
            let parts: Vec<&str> = rest.split(',').collect();
            if parts.len() == 2 {
                if let (Ok(a), Ok(b)) = (parts[0].parse::<f64>(), parts[1].parse::<f64>()) {
                    return Ok(ScalarTransform::affine(a, b));
                }
            }
            return Err(Error::FileFormat { reason: format!("bad affine transform '{spec}'") });
        }
        if let Some(rest) = spec.strip_prefix("power:") {
            if let Ok(p) = rest.parse::<f64>() {
                return ScalarTransform::power(p);
            }
            return Err(Error::FileFormat { reason: format!("bad power transform '{spec}'") });
        }
        Err(Error::FileFormat { reason: format!("unknown transform '{spec}'") })
    }

    /// `x ↦ g(−x)`: swaps the monotonicity direction and preserves
    /// convexity/concavity. Together with a negated oracle this realizes the
    /// supermodular/non-increasing variant of the bounds.
    pub fn reflected(&self) -> Self {
        let inner = self.g.clone();
        ScalarTransform {
            g: Arc::new(move |x| inner(-x)),
            claims: ShapeClaims {
                nondecreasing: self.claims.nonincreasing,
                nonincreasing: self.claims.nondecreasing,
                convex: self.claims.convex,
                concave: self.claims.concave,
                strictly_increasing: false,
            },
            name: format!("{}∘neg", self.name),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn claims(&self) -> ShapeClaims {
        self.claims
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.g)(x)
    }

    /// Verifies the *claimed* properties among `props` by sampled first and
    /// second differences on `[lo, hi]`.
    pub fn verify_claims_on(&self, lo: f64, hi: f64, props: &[ShapeProp]) -> Result<(), Error> {
        let width = hi - lo;
        if !(width > 0.0) {
            return Ok(());
        }
        let xs: Vec<f64> = (0..SHAPE_SAMPLES)
            .map(|i| lo + width * i as f64 / (SHAPE_SAMPLES - 1) as f64)
            .collect();
        let ys: Vec<f64> = xs.iter().map(|&x| self.eval(x)).collect();
        let scale = ys.iter().fold(1.0f64, |m, &y| m.max(y.abs()));
        let eps = 1e-9 * scale;

        for &prop in props {
            let ok = match prop {
                ShapeProp::Nondecreasing => {
                    !self.claims.nondecreasing || ys.windows(2).all(|w| w[1] >= w[0] - eps)
                }
                ShapeProp::Nonincreasing => {
                    !self.claims.nonincreasing || ys.windows(2).all(|w| w[1] <= w[0] + eps)
                }
                ShapeProp::Convex => {
                    !self.claims.convex
                        || ys.windows(3).all(|w| w[2] - 2.0 * w[1] + w[0] >= -eps)
                }
                ShapeProp::Concave => {
                    !self.claims.concave
                        || ys.windows(3).all(|w| w[2] - 2.0 * w[1] + w[0] <= eps)
                }
            };
            if !ok {
                return Err(Error::ShapeClaimFailed {
                    transform: self.name.clone(),
                    property: format!("{prop:?}").to_lowercase(),
                    lo,
                    hi,
                });
            }
        }
        Ok(())
    }

    /// Sampled affinity test: max second difference at `SHAPE_SAMPLES` points
    /// spanning `[lo, hi]`, relative to the value scale.
    fn is_affine_on(&self, lo: f64, hi: f64) -> bool {
        let width = hi - lo;
        if !(width > 0.0) {
            return true;
        }
        let xs: Vec<f64> = (0..SHAPE_SAMPLES)
            .map(|i| lo + width * i as f64 / (SHAPE_SAMPLES - 1) as f64)
            .collect();
        let ys: Vec<f64> = xs.iter().map(|&x| self.eval(x)).collect();
        let scale = ys.iter().fold(1.0f64, |m, &y| m.max(y.abs()));
        ys.windows(3).all(|w| (w[2] - 2.0 * w[1] + w[0]).abs() <= tol::AFFINE_REL * scale)
    }
}

/// Shape properties an operation may need to verify.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ShapeProp {
    Nondecreasing,
    Nonincreasing,
    Convex,
    Concave,
}

/// Report for a convex-functional bound evaluation.
///
/// `lhs` is `g(f([1:n])/(n·v))`. The upper side is present when `g` claims
/// non-decreasing convex, the lower side when it claims non-decreasing
/// concave; `identity`-like transforms produce both.
#[derive(Clone, Debug, Serialize)]
pub struct ConvexReport {
    pub transform: String,
    pub lhs: f64,
    pub rhs_upper: Option<f64>,
    pub rhs_lower: Option<f64>,
    /// `Σ weight(S)|S|/(n·v)`; equals 1 up to rounding by construction.
    pub coefficient_sum: f64,
    /// Weak-form only: the strong-form upper RHS it must dominate.
    pub strong_rhs_upper: Option<f64>,
    pub verdicts: Vec<InequalityVerdict>,
}

impl ConvexReport {
    pub fn all_hold(&self) -> bool {
        self.verdicts.iter().all(|v| v.holds)
    }

    pub fn min_slack(&self) -> f64 {
        self.verdicts.iter().map(|v| v.slack).fold(f64::INFINITY, f64::min)
    }
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

fn require_grounded(f: &SetFunctionOracle) -> Result<(), Error> {
    let at_empty = f.eval(crate::Subset::EMPTY);
    if !f.claims().grounded || at_empty.abs() > tol::GROUNDED_ABS {
        return Err(Error::NotGrounded { value: at_empty });
    }
    Ok(())
}

/// `v = Σ weight(S)|S|/n`, exact when the weights are exact.
fn mean_size_weight(wf: &WeightedFamily) -> f64 {
    let n = wf.n();
    let exact: Option<num::BigRational> = wf
        .weights()
        .iter()
        .map(|w| w.exact().cloned())
        .zip(wf.family().members())
        .try_fold(num::BigRational::zero(), |acc, (w, s)| {
            w.map(|w| acc + w * num::BigRational::from_integer(num::BigInt::from(s.len())))
        });
    match exact {
        Some(total) => {
            (total / num::BigRational::from_integer(num::BigInt::from(n))).to_f64().unwrap()
        }
        None => wf.iter().map(|(s, w)| w.value() * s.len() as f64).sum::<f64>() / n as f64,
    }
}

/// Conditioning variants for the normalized values.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
enum Conditioning {
    /// `f(S | <S)` — strong upper.
    Below,
    /// `f(S | S^c ∖ >S)` — strong lower.
    ComplementMinusAbove,
    /// `f(S)` — weak upper.
    None,
    /// `f(S | S^c)` — weak lower.
    Complement,
}

/// Normalized values `f(S|·)/|S|` and the Jensen combination
/// `Σ (weight·|S|/denominator)·g(value)`. One shared path so that a covering
/// with `v = 1` reproduces the partition evaluation bit for bit.
fn jensen_side(
    f: &SetFunctionOracle,
    wf: &WeightedFamily,
    ground: &GroundSet,
    g: &ScalarTransform,
    denominator: f64,
    cond: Conditioning,
) -> (Vec<f64>, f64, f64) {
    let n = ground.n();
    let mut values = Vec::with_capacity(wf.family().len());
    let mut rhs = 0.0;
    let mut coeff_sum = 0.0;
    for (s, w) in wf.iter() {
        let size = s.len() as f64;
        let raw = match cond {
            Conditioning::Below => f.conditional(s, ground.below(s)),
            Conditioning::ComplementMinusAbove => {
                f.conditional(s, s.complement(n).minus(ground.above(s)))
            }
            Conditioning::None => f.eval(s),
            Conditioning::Complement => f.conditional(s, s.complement(n)),
        };
        let value = raw / size;
        values.push(value);
        let coeff = w.value() * size / denominator;
        coeff_sum += coeff;
        rhs += coeff * g.eval(value);
    }
    (values, rhs, coeff_sum)
}

fn span(values: &[f64], extra: f64) -> (f64, f64) {
    let mut lo = extra;
    let mut hi = extra;
    for &v in values {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    // pad 10% of the width on each side
    let pad = (hi - lo) * 0.1;
    (lo - pad, hi + pad)
}

fn applicable_sides(g: &ScalarTransform) -> Result<(bool, bool), Error> {
    let c = g.claims();
    if !c.nondecreasing {
        return Err(Error::ShapeClaimFailed {
            transform: g.name().to_string(),
            property: "nondecreasing (required; negate the oracle and reflect the transform for the non-increasing variant)".into(),
            lo: f64::NAN,
            hi: f64::NAN,
        });
    }
    if !c.convex && !c.concave {
        return Err(Error::ShapeClaimFailed {
            transform: g.name().to_string(),
            property: "convex-or-concave".into(),
            lo: f64::NAN,
            hi: f64::NAN,
        });
    }
    Ok((c.convex, c.concave))
}

fn convex_bounds_impl(
    f: &SetFunctionOracle,
    wf: &WeightedFamily,
    g: &ScalarTransform,
    ground: &GroundSet,
    denominator: f64,
    upper_cond: Conditioning,
    lower_cond: Conditioning,
    want_upper: bool,
    want_lower: bool,
) -> Result<ConvexReport, Error> {
    let premise = premise_of(f);
    let lhs_arg = f.eval(ground.full()) / denominator;
    let lhs = g.eval(lhs_arg);

    let mut rhs_upper = None;
    let mut rhs_lower = None;
    let mut coefficient_sum = 0.0;
    let mut verdicts = Vec::new();

    if want_upper {
        let (values, rhs, csum) = jensen_side(f, wf, ground, g, denominator, upper_cond);
        let (lo, hi) = span(&values, lhs_arg);
        g.verify_claims_on(lo, hi, &[ShapeProp::Nondecreasing, ShapeProp::Convex])?;
        verdicts.push(InequalityVerdict { name: "lhs<=rhs_upper".into(), slack: rhs - lhs, holds: rhs - lhs >= -tol::INEQ_ABS, premise });
        rhs_upper = Some(rhs);
        coefficient_sum = csum;
    }
    if want_lower {
        let (values, rhs, csum) = jensen_side(f, wf, ground, g, denominator, lower_cond);
        let (lo, hi) = span(&values, lhs_arg);
        g.verify_claims_on(lo, hi, &[ShapeProp::Nondecreasing, ShapeProp::Concave])?;
        verdicts.push(InequalityVerdict { name: "rhs_lower<=lhs".into(), slack: lhs - rhs, holds: lhs - rhs >= -tol::INEQ_ABS, premise });
        rhs_lower = Some(rhs);
        coefficient_sum = csum;
    }

    Ok(ConvexReport {
        transform: g.name().to_string(),
        lhs,
        rhs_upper,
        rhs_lower,
        coefficient_sum,
        strong_rhs_upper: None,
        verdicts,
    })
}

/// Strong-form convex bounds over a fractional partition.
pub fn convex_bounds_strong(
    f: &SetFunctionOracle,
    wf: &WeightedFamily,
    g: &ScalarTransform,
    ground: &GroundSet,
) -> Result<ConvexReport, Error> {
    require_grounded(f)?;
    if f.n() != wf.n() || f.n() != ground.n() {
        return Err(Error::Internal { reason: "dimension mismatch".into() });
    }
    let class = classify_weights(wf);
    if !class.is_partition {
        return Err(Error::NotPartition {
            reason: format!("per-element sums {:?}", class.per_element),
        });
    }
    let (upper, lower) = applicable_sides(g)?;
    convex_bounds_impl(
        f,
        wf,
        g,
        ground,
        ground.n() as f64,
        Conditioning::Below,
        Conditioning::ComplementMinusAbove,
        upper,
        lower,
    )
}

/// Weak-form convex bounds over a fractional partition.
///
/// Also evaluates the strong upper RHS (identity order) and asserts that the
/// weak RHS dominates it, which holds whenever `g` is non-decreasing.
pub fn convex_bounds_weak(
    f: &SetFunctionOracle,
    wf: &WeightedFamily,
    g: &ScalarTransform,
) -> Result<ConvexReport, Error> {
    require_grounded(f)?;
    if f.n() != wf.n() {
        return Err(Error::Internal { reason: "dimension mismatch".into() });
    }
    let class = classify_weights(wf);
    if !class.is_partition {
        return Err(Error::NotPartition {
            reason: format!("per-element sums {:?}", class.per_element),
        });
    }
    let (upper, lower) = applicable_sides(g)?;
    let ground = GroundSet::identity(f.n())?;
    let mut report = convex_bounds_impl(
        f,
        wf,
        g,
        &ground,
        f.n() as f64,
        Conditioning::None,
        Conditioning::Complement,
        upper,
        lower,
    )?;

    if upper {
        let (_, strong_rhs, _) =
            jensen_side(f, wf, &ground, g, f.n() as f64, Conditioning::Below);
        let weak_rhs = report.rhs_upper.unwrap();
        report.strong_rhs_upper = Some(strong_rhs);
        report.verdicts.push(InequalityVerdict {
            name: "strong_rhs_upper<=weak_rhs_upper".into(),
            slack: weak_rhs - strong_rhs,
            holds: weak_rhs - strong_rhs >= -tol::INEQ_ABS,
            premise: premise_of(f),
        });
    }
    Ok(report)
}

/// Covering/packing variant with renormalization by `v = Σ weight|S|/n`.
///
/// Coverings (with convex `g`) give the upper side, packings (with concave
/// `g`) the lower side; both use the strong-form conditionings under the
/// identity order. Requires a monotone-prefix oracle.
pub fn covering_packing_convex(
    f: &SetFunctionOracle,
    wf: &WeightedFamily,
    g: &ScalarTransform,
) -> Result<ConvexReport, Error> {
    require_grounded(f)?;
    if f.n() != wf.n() {
        return Err(Error::Internal { reason: "dimension mismatch".into() });
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
    let (g_upper, g_lower) = applicable_sides(g)?;
    let want_upper = class.is_covering && g_upper;
    let want_lower = class.is_packing && g_lower;
    if !want_upper && !want_lower {
        return Err(Error::NotApplicable {
            reason: format!(
                "covering={} packing={} with transform '{}' (convex={}, concave={})",
                class.is_covering,
                class.is_packing,
                g.name(),
                g_upper,
                g_lower
            ),
        });
    }

    let v = mean_size_weight(wf);
    if v <= 0.0 {
        return Err(Error::NotApplicable { reason: "normalizer v = 0".into() });
    }
    let ground = GroundSet::identity(f.n())?;
    convex_bounds_impl(
        f,
        wf,
        g,
        &ground,
        f.n() as f64 * v,
        Conditioning::Below,
        Conditioning::ComplementMinusAbove,
        want_upper,
        want_lower,
    )
}

/// Which weak-form inequality an equality certificate refers to.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundSide {
    Upper,
    Lower,
}

/// Outcome of the equality characterization for the weak convex bounds.
#[derive(Clone, Debug, Serialize)]
pub struct CertificateRecord {
    /// Exhaustive modularity verdict for `f`.
    pub f_modular: bool,
    /// Sampled affinity of `g` on the interval spanned by the normalized
    /// values.
    pub g_affine_on_interval: bool,
    /// Whether the bound held with equality (`|slack| ≤ 1e-9`).
    pub equality_observed: bool,
    pub slack: f64,
    /// `equality_observed == (f_modular && g_affine_on_interval)`.
    pub biconditional_holds: bool,
}

/// Certifies the equality conditions of the weak convex bound on one side.
///
/// Requires a transform claiming strict monotonicity (the characterization
/// is an iff only then).
pub fn equality_certificate(
    f: &SetFunctionOracle,
    wf: &WeightedFamily,
    g: &ScalarTransform,
    side: BoundSide,
) -> Result<CertificateRecord, Error> {
    if !g.claims().strictly_increasing {
        return Err(Error::NotStrictlyIncreasing { transform: g.name().to_string() });
    }
    require_grounded(f)?;
    let class = classify_weights(wf);
    if !class.is_partition {
        return Err(Error::NotPartition {
            reason: format!("per-element sums {:?}", class.per_element),
        });
    }

    let structure = check_structure(f, &[StructureFlag::Modular])?;
    let f_modular = structure.holds(StructureFlag::Modular).unwrap_or(false);

    let n = f.n();
    let ground = GroundSet::identity(n)?;
    let cond = match side {
        BoundSide::Upper => Conditioning::None,
        BoundSide::Lower => Conditioning::Complement,
    };
    let (values, rhs, _) = jensen_side(f, wf, &ground, g, n as f64, cond);
    let lhs = g.eval(f.eval(ground.full()) / n as f64);
    let slack = match side {
        BoundSide::Upper => rhs - lhs,
        BoundSide::Lower => lhs - rhs,
    };

    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let g_affine_on_interval = g.is_affine_on(lo, hi);
    let equality_observed = slack.abs() <= tol::INEQ_ABS;

    Ok(CertificateRecord {
        f_modular,
        g_affine_on_interval,
        equality_observed,
        slack,
        biconditional_holds: equality_observed == (f_modular && g_affine_on_interval),
    })
}

/// Entropy-power chain for a joint distribution: with `g(x) = e^{2x}`,
/// `e^{2H(X_{[1:n]})/n}` is at most the conditioned Jensen combination,
/// which in turn is at most the unconditioned one.
#[derive(Clone, Debug, Serialize)]
pub struct EpiReport {
    pub lhs: f64,
    pub rhs_conditioned: f64,
    pub rhs_unconditioned: f64,
    pub verdicts: Vec<InequalityVerdict>,
}

impl EpiReport {
    pub fn all_hold(&self) -> bool {
        self.verdicts.iter().all(|v| v.holds)
    }
}

/// Evaluates the entropy-power chain for `p` over a fractional partition.
pub fn epi_bound(
    p: &JointDistribution,
    wf: &WeightedFamily,
    ground: &GroundSet,
) -> Result<EpiReport, Error> {
    let f = entropy_oracle(p);
    if f.n() != wf.n() || f.n() != ground.n() {
        return Err(Error::Internal { reason: "dimension mismatch".into() });
    }
    let class = classify_weights(wf);
    if !class.is_partition {
        return Err(Error::NotPartition {
            reason: format!("per-element sums {:?}", class.per_element),
        });
    }
    let g = ScalarTransform::exp2x();
    let denom = ground.n() as f64;
    let lhs = g.eval(f.eval(ground.full()) / denom);
    let (_, rhs_conditioned, _) = jensen_side(&f, wf, ground, &g, denom, Conditioning::Below);
    let (_, rhs_unconditioned, _) = jensen_side(&f, wf, ground, &g, denom, Conditioning::None);
    let premise = Premise::Claimed;
    let verdicts = vec![
        InequalityVerdict {
            name: "lhs<=rhs_conditioned".into(),
            slack: rhs_conditioned - lhs,
            holds: rhs_conditioned - lhs >= -tol::INEQ_ABS,
            premise,
        },
        InequalityVerdict {
            name: "rhs_conditioned<=rhs_unconditioned".into(),
            slack: rhs_unconditioned - rhs_conditioned,
            holds: rhs_unconditioned - rhs_conditioned >= -tol::INEQ_ABS,
            premise,
        },
    ];
    Ok(EpiReport { lhs, rhs_conditioned, rhs_unconditioned, verdicts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{han_family, shearer_weights, SetFamily, Weight};
    use crate::mt::mt_bounds;
    use crate::setfun::{modular_oracle, negated_oracle};
    use crate::subset::Subset;

    fn dist(sizes: &[usize], pmf: &[f64]) -> JointDistribution {
        JointDistribution::new(sizes.to_vec(), pmf.to_vec()).unwrap()
    }

    fn fam(n: usize, lists: &[&[usize]]) -> SetFamily {
        SetFamily::from_elem_lists(n, &lists.iter().map(|l| l.to_vec()).collect::<Vec<_>>())
            .unwrap()
    }

    fn skewed() -> JointDistribution {
        dist(&[2, 2], &[0.5, 0.25, 0.125, 0.125])
    }

    #[test]
    fn identity_transform_reduces_to_theorem_one() {
        let f = entropy_oracle(&skewed());
        let wf = han_family(2, 1).unwrap();
        let ground = GroundSet::identity(2).unwrap();
        let mt = mt_bounds(&f, &wf, &ground).unwrap();
        let cx = convex_bounds_strong(&f, &wf, &ScalarTransform::identity(), &ground).unwrap();
        let n = 2.0;
        assert!((cx.rhs_upper.unwrap() - mt.strong_upper.unwrap() / n).abs() <= tol::AGREE_ABS);
        assert!((cx.rhs_lower.unwrap() - mt.strong_lower.unwrap() / n).abs() <= tol::AGREE_ABS);
        assert!((cx.lhs - mt.f_full / n).abs() <= tol::AGREE_ABS);

        let cw = convex_bounds_weak(&f, &wf, &ScalarTransform::identity()).unwrap();
        assert!((cw.rhs_upper.unwrap() - mt.weak_upper.unwrap() / n).abs() <= tol::AGREE_ABS);
        assert!((cw.rhs_lower.unwrap() - mt.weak_lower.unwrap() / n).abs() <= tol::AGREE_ABS);
    }

    #[test]
    fn independent_bits_exp2x_equality_at_four() {
        let f = entropy_oracle(&dist(&[2, 2], &[0.25; 4]));
        let wf = han_family(2, 1).unwrap();
        let ground = GroundSet::identity(2).unwrap();
        let r = convex_bounds_strong(&f, &wf, &ScalarTransform::exp2x(), &ground).unwrap();
        assert!((r.lhs - 4.0).abs() < 1e-12);
        assert!((r.rhs_upper.unwrap() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn skewed_pmf_exp2x_strict_slack() {
        let f = entropy_oracle(&skewed());
        let wf = han_family(2, 1).unwrap();
        let r = convex_bounds_weak(&f, &wf, &ScalarTransform::exp2x()).unwrap();
        // frozen from direct evaluation of both sides
        assert!((r.lhs - 3.363_585_661_014_858).abs() < 1e-12);
        assert!((r.rhs_upper.unwrap() - 3.417_172_422_998_241_6).abs() < 1e-12);
        assert!(r.all_hold());
        assert!(r.min_slack() > 0.0);

        let strong =
            convex_bounds_strong(&f, &wf, &ScalarTransform::exp2x(), &GroundSet::identity(2).unwrap())
                .unwrap();
        assert!(strong.all_hold());
        assert!(strong.rhs_upper.unwrap() <= r.rhs_upper.unwrap() + tol::INEQ_ABS);
    }

    #[test]
    fn weak_reduces_to_k_uniform_average() {
        // under the all-k-subsets family the weak RHS is the plain average
        // of g over the normalized k-subset values
        let p = dist(&[2, 2, 2], &[0.15, 0.1, 0.05, 0.2, 0.1, 0.1, 0.05, 0.25]);
        let f = entropy_oracle(&p);
        for k in 1..=3usize {
            let wf = han_family(3, k).unwrap();
            let g = ScalarTransform::exp2x();
            let r = convex_bounds_weak(&f, &wf, &g).unwrap();
            let subsets = Subset::all_of_size(3, k);
            let avg: f64 = subsets.iter().map(|&s| g.eval(f.eval(s) / k as f64)).sum::<f64>()
                / subsets.len() as f64;
            assert!((r.rhs_upper.unwrap() - avg).abs() < 1e-12, "k={k}");
        }
    }

    #[test]
    fn modular_affine_equality_both_sides() {
        let f = modular_oracle(&[1.0, 2.0, 3.0]).unwrap();
        let wf = han_family(3, 2).unwrap();
        let g = ScalarTransform::affine(2.0, -1.0);
        let r = convex_bounds_weak(&f, &wf, &g).unwrap();
        assert!(r.verdicts[0].slack.abs() < 1e-12);
        assert!(r.verdicts[1].slack.abs() < 1e-12);
    }

    #[test]
    fn correlated_bits_power2_strict() {
        let f = entropy_oracle(&dist(&[2, 2], &[0.5, 0.0, 0.0, 0.5]));
        let wf = han_family(2, 1).unwrap();
        let r = convex_bounds_weak(&f, &wf, &ScalarTransform::power(2.0).unwrap()).unwrap();
        assert!(r.all_hold());
        assert!(r.verdicts[0].slack > 1e-6, "slack {}", r.verdicts[0].slack);
    }

    #[test]
    fn partition_covering_reproduces_strong_bitwise() {
        let f = entropy_oracle(&skewed());
        let wf = han_family(2, 1).unwrap();
        let ground = GroundSet::identity(2).unwrap();
        let g = ScalarTransform::exp2x();
        let strong = convex_bounds_strong(&f, &wf, &g, &ground).unwrap();
        let covpack = covering_packing_convex(&f, &wf, &g).unwrap();
        assert_eq!(covpack.lhs, strong.lhs);
        assert_eq!(covpack.rhs_upper, strong.rhs_upper);
    }

    #[test]
    fn shearer_covering_exp2x_holds() {
        let p = dist(&[2, 2, 2], &[0.15, 0.1, 0.05, 0.2, 0.1, 0.1, 0.05, 0.25]);
        let f = entropy_oracle(&p);
        let wf = shearer_weights(&fam(3, &[&[1, 2], &[1, 3], &[2, 3]])).unwrap();
        let r = covering_packing_convex(&f, &wf, &ScalarTransform::exp2x()).unwrap();
        assert!(r.rhs_upper.is_some() && r.rhs_lower.is_none());
        assert!(r.all_hold(), "{r:?}");
    }

    #[test]
    fn half_weight_packing_identity_lower_holds() {
        let f = entropy_oracle(&dist(&[2, 2], &[0.4, 0.1, 0.2, 0.3]));
        let packing =
            WeightedFamily::new(fam(2, &[&[1], &[2]]), vec![Weight::from_ratio(1, 2); 2])
                .unwrap();
        let r = covering_packing_convex(&f, &packing, &ScalarTransform::identity()).unwrap();
        assert!(r.rhs_lower.is_some());
        assert!(r.all_hold(), "{r:?}");
    }

    #[test]
    fn certificate_modular_affine_all_true() {
        let f = modular_oracle(&[1.0, 2.0, 3.0]).unwrap();
        let wf = han_family(3, 1).unwrap();
        let g = ScalarTransform::affine(1.5, 0.25);
        let c = equality_certificate(&f, &wf, &g, BoundSide::Upper).unwrap();
        assert!(c.f_modular && c.g_affine_on_interval && c.equality_observed);
        assert!(c.biconditional_holds);
    }

    #[test]
    fn certificate_modular_convex_spread_not_equal() {
        let f = modular_oracle(&[0.2, 0.9, 1.7]).unwrap();
        let wf = han_family(3, 1).unwrap();
        let c = equality_certificate(&f, &wf, &ScalarTransform::exp2x(), BoundSide::Upper)
            .unwrap();
        assert!(c.f_modular && !c.g_affine_on_interval && !c.equality_observed);
        assert!(c.biconditional_holds);
    }

    #[test]
    fn certificate_strict_submodular_affine_not_equal() {
        let f = entropy_oracle(&dist(&[2, 2], &[0.5, 0.0, 0.0, 0.5]));
        let wf = han_family(2, 1).unwrap();
        let g = ScalarTransform::affine(1.0, 0.0);
        let c = equality_certificate(&f, &wf, &g, BoundSide::Upper).unwrap();
        assert!(!c.f_modular && c.g_affine_on_interval && !c.equality_observed);
        assert!(c.biconditional_holds);
    }

    #[test]
    fn certificate_requires_strictly_increasing() {
        let f = modular_oracle(&[1.0, 2.0]).unwrap();
        let wf = han_family(2, 1).unwrap();
        let flat = ScalarTransform::affine(0.0, 1.0);
        assert!(matches!(
            equality_certificate(&f, &wf, &flat, BoundSide::Upper),
            Err(Error::NotStrictlyIncreasing { .. })
        ));
    }

    #[test]
    fn epi_chain_examples() {
        let ground2 = GroundSet::identity(2).unwrap();
        let wf2 = han_family(2, 1).unwrap();

        let iid = dist(&[2, 2], &[0.25; 4]);
        let r = epi_bound(&iid, &wf2, &ground2).unwrap();
        assert!((r.lhs - 4.0).abs() < 1e-12);
        assert!((r.rhs_conditioned - 4.0).abs() < 1e-12);

        let corr = dist(&[2, 2], &[0.4, 0.1, 0.1, 0.4]);
        let r = epi_bound(&corr, &wf2, &ground2).unwrap();
        assert!(r.all_hold(), "{r:?}");
        // frozen from direct evaluation
        assert!((r.lhs - 3.298_769_776_932_236).abs() < 1e-12);
        assert!((r.rhs_conditioned - 3.360_235_255_150_194).abs() < 1e-12);
        assert!((r.rhs_unconditioned - 4.0).abs() < 1e-12);

        // fair bit times a correlated pair on three coordinates
        let mut pmf = Vec::new();
        for &q in &[0.4, 0.1, 0.1, 0.4] {
            pmf.extend([q * 0.5, q * 0.5]);
        }
        let p3 = dist(&[2, 2, 2], &pmf);
        let r =
            epi_bound(&p3, &han_family(3, 2).unwrap(), &GroundSet::identity(3).unwrap()).unwrap();
        assert!(r.all_hold(), "{r:?}");
    }

    #[test]
    fn transform_parsing() {
        assert_eq!(ScalarTransform::parse("identity").unwrap().name(), "identity");
        assert_eq!(ScalarTransform::parse("exp2x").unwrap().name(), "exp2x");
        let a = ScalarTransform::parse("affine:2,0.5").unwrap();
        assert!((a.eval(1.0) - 2.5).abs() < 1e-15);
        let p = ScalarTransform::parse("power:2").unwrap();
        assert!((p.eval(3.0) - 9.0).abs() < 1e-15);
        assert!(ScalarTransform::parse("power:0.5").is_err());
        assert!(ScalarTransform::parse("cosh").is_err());
        assert!(ScalarTransform::parse("affine:1").is_err());
    }

    #[test]
    fn shape_verification_rejects_false_claims() {
        let bogus = ScalarTransform::custom(
            "sin-as-convex",
            ShapeClaims { nondecreasing: true, convex: true, ..ShapeClaims::default() },
            f64::sin,
        );
        let err = bogus.verify_claims_on(0.0, 6.0, &[ShapeProp::Nondecreasing, ShapeProp::Convex]);
        assert!(matches!(err, Err(Error::ShapeClaimFailed { .. })));
    }

    #[test]
    fn supermodular_nonincreasing_variant_via_negation() {
        // f supermodular (negated entropy), h nonincreasing convex: the
        // reflected/negated route must reproduce the direct sums term by term.
        let p = dist(&[2, 2], &[0.4, 0.1, 0.2, 0.3]);
        let entropy = entropy_oracle(&p);
        let f_super = negated_oracle(&entropy);
        let h = ScalarTransform::custom(
            "exp-neg-2x",
            ShapeClaims { nonincreasing: true, convex: true, ..ShapeClaims::default() },
            |x| (-2.0 * x).exp(),
        );
        // reflected transform g(x) = h(-x) = e^{2x} is nondecreasing convex,
        // and the negated oracle is submodular again
        let g = h.reflected();
        let wf = han_family(2, 1).unwrap();
        let ground = GroundSet::identity(2).unwrap();
        let via = convex_bounds_strong(&negated_oracle(&f_super), &wf, &g, &ground).unwrap();
        let direct = convex_bounds_strong(&entropy, &wf, &ScalarTransform::exp2x(), &ground).unwrap();
        assert!((via.lhs - direct.lhs).abs() < 1e-12);
        assert!((via.rhs_upper.unwrap() - direct.rhs_upper.unwrap()).abs() < 1e-12);
    }
}
