//! Set families with multiplicity, fractional weight assignments, and the
//! canonical constructions (uniform k-subset families, minimum-degree
//! coverings, complement duals).
//!
//! Weights are either exact rationals or floats. Canonical constructions use
//! exact weights so that partition/covering verdicts are exact; user-supplied
//! float weights are classified with a `1e-9` tolerance.

use num::rational::Ratio;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::subset::{Subset, MAX_GROUND};
use crate::tol;
use crate::Error;

/// A family of nonempty subsets of `[1:n]`, allowing repetitions.
///
/// Repeated members are distinct entries (and later, distinct weight slots).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SetFamily {
    n: usize,
    members: Vec<Subset>,
}

impl SetFamily {
    pub fn new(n: usize, members: Vec<Subset>) -> Result<Self, Error> {
        if n == 0 || n > MAX_GROUND {
            return Err(Error::GroundSize { n });
        }
        let full = Subset::full(n);
        for (i, &m) in members.iter().enumerate() {
            if m.is_empty() {
                return Err(Error::EmptyMember { index: i });
            }
            if !m.is_subset_of(full) {
                return Err(Error::ElementOutOfRange {
                    element: m.minus(full).iter().next().unwrap(),
                    n,
                });
            }
        }
        Ok(SetFamily { n, members })
    }

    /// Builds from 1-based element lists.
    pub fn from_elem_lists(n: usize, lists: &[Vec<usize>]) -> Result<Self, Error> {
        let members = lists
            .iter()
            .map(|l| Subset::from_elems(l, n))
            .collect::<Result<Vec<_>, _>>()?;
        SetFamily::new(n, members)
    }

    /// Builds from `(subset, multiplicity)` pairs, expanding each member into
    /// `multiplicity` entries.
    pub fn with_multiplicity(n: usize, pairs: &[(Subset, usize)]) -> Result<Self, Error> {
        let mut members = Vec::new();
        for (i, &(s, mult)) in pairs.iter().enumerate() {
            if mult == 0 {
                return Err(Error::ZeroMultiplicity { index: i });
            }
            members.extend(std::iter::repeat(s).take(mult));
        }
        SetFamily::new(n, members)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[Subset] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Number of members containing `elem` (counting multiplicity).
    pub fn degree(&self, elem: usize) -> usize {
        self.members.iter().filter(|m| m.contains(elem)).count()
    }

    /// `k(F)`: the largest k such that every element belongs to at least k
    /// members — equivalently the minimum degree.
    pub fn cover_number(&self) -> usize {
        (1..=self.n).map(|e| self.degree(e)).min().unwrap_or(0)
    }
}

/// A nonnegative weight, exact or floating-point.
#[derive(Clone, Debug, PartialEq)]
pub enum Weight {
    Exact(BigRational),
    Real(f64),
}

impl Weight {
    pub fn from_ratio(num: i64, den: i64) -> Weight {
        Weight::Exact(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn value(&self) -> f64 {
        match self {
            Weight::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Weight::Real(v) => *v,
        }
    }

    pub fn exact(&self) -> Option<&BigRational> {
        match self {
            Weight::Exact(r) => Some(r),
            Weight::Real(_) => None,
        }
    }

    fn is_negative(&self) -> bool {
        match self {
            Weight::Exact(r) => r.is_negative(),
            Weight::Real(v) => *v < 0.0,
        }
    }
}

impl Serialize for Weight {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.value().serialize(s)
    }
}

/// A set family with one nonnegative weight per member occurrence.
#[derive(Clone, Debug, Serialize)]
pub struct WeightedFamily {
    family: SetFamily,
    weights: Vec<Weight>,
}

impl WeightedFamily {
    pub fn new(family: SetFamily, weights: Vec<Weight>) -> Result<Self, Error> {
        if weights.len() != family.len() {
            return Err(Error::WeightCount {
                members: family.len(),
                weights: weights.len(),
            });
        }
        if let Some(i) = weights.iter().position(Weight::is_negative) {
            return Err(Error::NegativeWeight { index: i });
        }
        Ok(WeightedFamily { family, weights })
    }

    pub fn from_reals(family: SetFamily, weights: &[f64]) -> Result<Self, Error> {
        WeightedFamily::new(family, weights.iter().map(|&w| Weight::Real(w)).collect())
    }

    /// Uniform exact weight on every member.
    pub fn uniform_exact(family: SetFamily, num: i64, den: i64) -> Result<Self, Error> {
        let w = vec![Weight::from_ratio(num, den); family.len()];
        WeightedFamily::new(family, w)
    }

    pub fn family(&self) -> &SetFamily {
        &self.family
    }

    pub fn n(&self) -> usize {
        self.family.n()
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn weight_values(&self) -> Vec<f64> {
        self.weights.iter().map(Weight::value).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Subset, &Weight)> {
        self.family.members().iter().copied().zip(self.weights.iter())
    }

    fn all_exact(&self) -> bool {
        self.weights.iter().all(|w| w.exact().is_some())
    }

    /// `w(γ) = Σ_S γ(S)` as a float.
    pub fn total_weight(&self) -> f64 {
        self.weights.iter().map(Weight::value).sum()
    }
}

/// Per-element weight sums and the partition/covering/packing verdicts.
#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    /// `σ_i = Σ_{S∋i} weight(S)` for each `i ∈ [1:n]`.
    pub per_element: Vec<f64>,
    pub is_partition: bool,
    pub is_covering: bool,
    pub is_packing: bool,
    /// Elements with `σ_i = 0`; a covering is impossible with these members.
    pub uncovered: Vec<usize>,
    /// Whether the verdicts were decided in exact rational arithmetic.
    pub exact: bool,
    /// `w = Σ_S weight(S)`.
    pub total_weight: f64,
    /// `v = Σ_S weight(S)·|S|/n`.
    pub mean_size_weight: f64,
}

/// Classifies a weighted family as fractional partition / covering / packing.
///
/// Exact weights are classified exactly; float weights within
/// [`tol::WEIGHT_ABS`] of the defining conditions.
pub fn classify_weights(wf: &WeightedFamily) -> Classification {
    let n = wf.n();
    let exact = wf.all_exact();
    let mut per_element = vec![0.0f64; n];
    let mut uncovered = Vec::new();
    let (mut is_partition, mut is_covering, mut is_packing) = (true, true, true);

    if exact {
        let one = BigRational::one();
        for i in 1..=n {
            let sigma: BigRational = wf
                .iter()
                .filter(|(s, _)| s.contains(i))
                .map(|(_, w)| w.exact().unwrap().clone())
                .fold(BigRational::zero(), |a, b| a + b);
            per_element[i - 1] = sigma.to_f64().unwrap_or(f64::NAN);
            if sigma.is_zero() {
                uncovered.push(i);
            }
            is_partition &= sigma == one;
            is_covering &= sigma >= one;
            is_packing &= sigma <= one;
        }
    } else {
        for i in 1..=n {
            let sigma: f64 =
                wf.iter().filter(|(s, _)| s.contains(i)).map(|(_, w)| w.value()).sum();
            per_element[i - 1] = sigma;
            if sigma == 0.0 {
                uncovered.push(i);
            }
            is_partition &= (sigma - 1.0).abs() <= tol::WEIGHT_ABS;
            is_covering &= sigma >= 1.0 - tol::WEIGHT_ABS;
            is_packing &= sigma <= 1.0 + tol::WEIGHT_ABS;
        }
    }

    let total_weight = wf.total_weight();
    let mean_size_weight =
        wf.iter().map(|(s, w)| w.value() * s.len() as f64).sum::<f64>() / n as f64;

    Classification {
        per_element,
        is_partition,
        is_covering,
        is_packing,
        uncovered,
        exact,
        total_weight,
        mean_size_weight,
    }
}

/// The uniform k-subset family: all `C(n,k)` subsets of size `k`, each with
/// exact weight `1/C(n−1,k−1)`. Always a fractional partition.
pub fn han_family(n: usize, k: usize) -> Result<WeightedFamily, Error> {
    if n == 0 || n > MAX_GROUND {
        return Err(Error::GroundSize { n });
    }
    if k < 1 || k > n {
        return Err(Error::SizeOutOfRange { k, n });
    }
    let members = Subset::all_of_size(n, k);
    let family = SetFamily::new(n, members)?;
    let den = binomial(n - 1, k - 1) as i64;
    WeightedFamily::uniform_exact(family, 1, den)
}

/// Uniform weights `1/k(F)` on an arbitrary family; always a fractional
/// covering when `k(F) ≥ 1`.
pub fn shearer_weights(family: &SetFamily) -> Result<WeightedFamily, Error> {
    let k = family.cover_number();
    if k == 0 {
        let missing = (1..=family.n()).find(|&e| family.degree(e) == 0).unwrap();
        return Err(Error::UncoveredElement { element: missing });
    }
    WeightedFamily::uniform_exact(family.clone(), 1, k as i64)
}

/// Complement dual: `F̄ = {S^c}`, `γ̄(S^c) = γ(S)/(w(γ)−1)`.
///
/// Maps fractional partitions to fractional partitions (this is verified on
/// the output when the input is one). Requires `w(γ) > 1` and no member equal
/// to the full ground set.
pub fn complement_dual(wf: &WeightedFamily) -> Result<WeightedFamily, Error> {
    let n = wf.n();
    let full = Subset::full(n);
    if let Some((i, _)) = wf.family().members().iter().enumerate().find(|(_, &s)| s == full) {
        return Err(Error::FullSetMember { index: i });
    }

    let input_class = classify_weights(wf);
    let members: Vec<Subset> = wf.family().members().iter().map(|s| s.complement(n)).collect();
    let family = SetFamily::new(n, members)?;

    let dual = if wf.all_exact() {
        let w: BigRational = wf
            .weights()
            .iter()
            .map(|x| x.exact().unwrap().clone())
            .fold(BigRational::zero(), |a, b| a + b);
        if w <= BigRational::one() {
            return Err(Error::DualDegenerate { total_weight: w.to_f64().unwrap_or(f64::NAN) });
        }
        let denom = w - BigRational::one();
        let weights = wf
            .weights()
            .iter()
            .map(|x| Weight::Exact(x.exact().unwrap() / &denom))
            .collect();
        WeightedFamily::new(family, weights)?
    } else {
        let w = wf.total_weight();
        if w <= 1.0 + tol::WEIGHT_ABS {
            return Err(Error::DualDegenerate { total_weight: w });
        }
        let weights = wf.weights().iter().map(|x| Weight::Real(x.value() / (w - 1.0))).collect();
        WeightedFamily::new(family, weights)?
    };

    if input_class.is_partition && !classify_weights(&dual).is_partition {
        return Err(Error::Internal {
            reason: "complement dual of a fractional partition failed to classify as one".into(),
        });
    }
    Ok(dual)
}

/// Exact binomial coefficient (desk scale: `n ≤ 64`).
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}
