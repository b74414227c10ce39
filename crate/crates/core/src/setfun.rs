//! Set-function oracles, structural checks, and concrete builders.
//!
//! A [`SetFunctionOracle`] evaluates a real-valued function on subsets of
//! `[1:n]` and carries *claims* about its structure (submodular, grounded,
//! ...). Claims are assertions: [`check_structure`] tests them exhaustively
//! and an oracle can be [`attested`](SetFunctionOracle::attested) with the
//! outcome, upgrading claims to verified facts. Downstream bound reports
//! distinguish verified premises from merely claimed ones.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::exec;
use crate::subset::{GroundSet, Subset, MAX_GROUND};
use crate::tol;
use crate::Error;

/// Structural properties an oracle may claim or have verified.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StructureFlag {
    Submodular,
    Supermodular,
    Modular,
    MonotonePrefix,
    Grounded,
}

impl StructureFlag {
    pub const ALL: [StructureFlag; 5] = [
        StructureFlag::Submodular,
        StructureFlag::Supermodular,
        StructureFlag::Modular,
        StructureFlag::MonotonePrefix,
        StructureFlag::Grounded,
    ];
}

/// A set of structural flags.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Claims {
    pub submodular: bool,
    pub supermodular: bool,
    pub modular: bool,
    pub monotone_prefix: bool,
    pub grounded: bool,
}

impl Claims {
    pub fn get(&self, flag: StructureFlag) -> bool {
        match flag {
            StructureFlag::Submodular => self.submodular,
            StructureFlag::Supermodular => self.supermodular,
            StructureFlag::Modular => self.modular,
            StructureFlag::MonotonePrefix => self.monotone_prefix,
            StructureFlag::Grounded => self.grounded,
        }
    }

    fn set(&mut self, flag: StructureFlag, value: bool) {
        match flag {
            StructureFlag::Submodular => self.submodular = value,
            StructureFlag::Supermodular => self.supermodular = value,
            StructureFlag::Modular => self.modular = value,
            StructureFlag::MonotonePrefix => self.monotone_prefix = value,
            StructureFlag::Grounded => self.grounded = value,
        }
    }
}

/// Evaluates `f(S)` on subsets of `[1:n]`.
///
/// Oracles are immutable after construction and cheap to clone (the
/// evaluation closure is shared). Any number of concurrent readers is safe.
#[derive(Clone)]
pub struct SetFunctionOracle {
    n: usize,
    eval: Arc<dyn Fn(Subset) -> f64 + Send + Sync>,
    claims: Claims,
    verified: Claims,
    label: String,
}

impl std::fmt::Debug for SetFunctionOracle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SetFunctionOracle")
            .field("n", &self.n)
            .field("label", &self.label)
            .field("claims", &self.claims)
            .field("verified", &self.verified)
            .finish()
    }
}

impl SetFunctionOracle {
    /// Wraps an arbitrary evaluation closure with the stated claims.
    pub fn custom<F>(n: usize, label: &str, claims: Claims, eval: F) -> Result<Self, Error>
    where
        F: Fn(Subset) -> f64 + Send + Sync + 'static,
    {
        if n == 0 || n > MAX_GROUND {
            return Err(Error::GroundSize { n });
        }
        Ok(SetFunctionOracle {
            n,
            eval: Arc::new(eval),
            claims,
            verified: Claims::default(),
            label: label.to_string(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn claims(&self) -> Claims {
        self.claims
    }

    pub fn verified(&self) -> Claims {
        self.verified
    }

    pub fn eval(&self, s: Subset) -> f64 {
        debug_assert!(s.is_subset_of(Subset::full(self.n)));
        (self.eval)(s)
    }

    /// Conditional value `f(S|T) = f(S ∪ T) − f(T)`.
    pub fn conditional(&self, s: Subset, t: Subset) -> f64 {
        self.eval(s.union(t)) - self.eval(t)
    }

    /// Returns a copy whose verified flags are upgraded for every claim the
    /// report confirms. Claims the report refutes are dropped.
    pub fn attested(mut self, report: &StructureReport) -> Self {
        for v in &report.verdicts {
            if v.holds {
                self.verified.set(v.flag, true);
                self.claims.set(v.flag, true);
            } else {
                self.claims.set(v.flag, false);
                self.verified.set(v.flag, false);
            }
        }
        self
    }
}

/// Conditional value `f(S|T)`; rejects oracles that are not grounded.
pub fn eval_conditional(f: &SetFunctionOracle, s: Subset, t: Subset) -> Result<f64, Error> {
    let full = Subset::full(f.n);
    for sub in [s, t] {
        if !sub.is_subset_of(full) {
            return Err(Error::ElementOutOfRange {
                element: sub.minus(full).iter().next().unwrap_or(0),
                n: f.n,
            });
        }
    }
    let at_empty = f.eval(Subset::EMPTY);
    if !f.claims.grounded || at_empty.abs() > tol::GROUNDED_ABS {
        return Err(Error::NotGrounded { value: at_empty });
    }
    Ok(f.conditional(s, t))
}

/// Witness accompanying a failed structural verdict.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StructureWitness {
    /// First subset pair violating the defining (in)equality, with the two
    /// side values `f(S)+f(T)` and `f(S∪T)+f(S∩T)`.
    Pair { s: Subset, t: Subset, lhs: f64, rhs: f64 },
    /// First decreasing prefix step `f([1:j-1]) > f([1:j])`.
    Prefix { j: usize, prev: f64, next: f64 },
    /// `f(∅)` is not zero.
    Ground { value: f64 },
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureVerdict {
    pub flag: StructureFlag,
    pub holds: bool,
    pub witness: Option<StructureWitness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureReport {
    pub n: usize,
    pub verdicts: Vec<StructureVerdict>,
}

impl StructureReport {
    pub fn holds(&self, flag: StructureFlag) -> Option<bool> {
        self.verdicts.iter().find(|v| v.flag == flag).map(|v| v.holds)
    }
}

/// Exhaustively checks the requested structural flags over all subset pairs.
///
/// Sound by construction: every pair `(S, T)` is examined (there is no
/// sampling fallback), which is why ground sets above [`MAX_GROUND`] are
/// refused outright. Inequalities use the [`tol::INEQ_ABS`] slack;
/// groundedness uses [`tol::GROUNDED_ABS`]. On failure the verdict carries
/// the first violating pair in `(S, T)` mask order.
pub fn check_structure(
    f: &SetFunctionOracle,
    which: &[StructureFlag],
) -> Result<StructureReport, Error> {
    let n = f.n;
    if n > MAX_GROUND {
        return Err(Error::TooLargeForExhaustive { n, cap: MAX_GROUND });
    }
    let size = 1usize << n;
    // The full table is only needed for pair scans; prefix and groundedness
    // checks get by on n+1 direct evaluations.
    let needs_pairs = which.iter().any(|w| {
        matches!(
            w,
            StructureFlag::Submodular | StructureFlag::Supermodular | StructureFlag::Modular
        )
    });
    let table: Vec<f64> = if needs_pairs {
        exec::map_indexed(size, |m| f.eval(Subset::from_mask(m as u32)))
    } else {
        Vec::new()
    };

    let pair_scan = |check: &(dyn Fn(f64, f64) -> bool + Sync)| -> Option<StructureWitness> {
        exec::find_map_first(size, |s| {
            for t in 0..size {
                let lhs = table[s] + table[t];
                let rhs = table[s | t] + table[s & t];
                if !check(lhs, rhs) {
                    return Some(StructureWitness::Pair {
                        s: Subset::from_mask(s as u32),
                        t: Subset::from_mask(t as u32),
                        lhs,
                        rhs,
                    });
                }
            }
            None
        })
    };

    let mut verdicts = Vec::new();
    for &flag in which {
        let witness = match flag {
            StructureFlag::Submodular => pair_scan(&|lhs, rhs| lhs >= rhs - tol::INEQ_ABS),
            StructureFlag::Supermodular => pair_scan(&|lhs, rhs| lhs <= rhs + tol::INEQ_ABS),
            StructureFlag::Modular => pair_scan(&|lhs, rhs| (lhs - rhs).abs() <= tol::INEQ_ABS),
            StructureFlag::MonotonePrefix => {
                let ground = GroundSet::identity(n)?;
                let mut hit = None;
                for j in 1..=n {
                    let prev = f.eval(ground.prefix(j - 1));
                    let next = f.eval(ground.prefix(j));
                    if next < prev - tol::INEQ_ABS {
                        hit = Some(StructureWitness::Prefix { j, prev, next });
                        break;
                    }
                }
                hit
            }
            StructureFlag::Grounded => {
                let value = f.eval(Subset::EMPTY);
                (value.abs() > tol::GROUNDED_ABS).then_some(StructureWitness::Ground { value })
            }
        };
        verdicts.push(StructureVerdict {
            flag,
            holds: witness.is_none(),
            witness,
        });
    }
    Ok(StructureReport { n, verdicts })
}

/// A discrete joint probability mass function over a product alphabet.
///
/// Coordinate `i` (1-based) takes values in `0..alphabet_sizes[i-1]`; the
/// flat `pmf` is row-major: `index = Σ_i x_i · Π_{j>i} a_j`.
#[derive(Clone, Debug, Serialize)]
pub struct JointDistribution {
    alphabet_sizes: Vec<usize>,
    pmf: Vec<f64>,
}

impl JointDistribution {
    pub fn new(alphabet_sizes: Vec<usize>, pmf: Vec<f64>) -> Result<Self, Error> {
        if alphabet_sizes.is_empty() || alphabet_sizes.len() > MAX_GROUND {
            return Err(Error::PmfInvalid {
                reason: format!(
                    "need between 1 and {MAX_GROUND} coordinates, got {}",
                    alphabet_sizes.len()
                ),
            });
        }
        let mut cells = 1usize;
        for &a in &alphabet_sizes {
            if a == 0 {
                return Err(Error::PmfInvalid {
                    reason: "alphabet sizes must be positive".into(),
                });
            }
            cells = cells.checked_mul(a).filter(|&c| c <= 1 << 22).ok_or_else(|| {
                Error::PmfInvalid {
                    reason: "product alphabet too large".into(),
                }
            })?;
        }
        if pmf.len() != cells {
            return Err(Error::PmfInvalid {
                reason: format!("pmf has {} entries, product alphabet has {cells}", pmf.len()),
            });
        }
        if let Some(&bad) = pmf.iter().find(|&&p| !(p >= 0.0)) {
            return Err(Error::PmfInvalid {
                reason: format!("negative or non-finite probability {bad}"),
            });
        }
        let sum: f64 = pmf.iter().sum();
        if (sum - 1.0).abs() > tol::PMF_SUM_ABS {
            return Err(Error::PmfInvalid {
                reason: format!("pmf sums to {sum}, expected 1 within {}", tol::PMF_SUM_ABS),
            });
        }
        Ok(JointDistribution { alphabet_sizes, pmf })
    }

    pub fn n(&self) -> usize {
        self.alphabet_sizes.len()
    }

    pub fn alphabet_sizes(&self) -> &[usize] {
        &self.alphabet_sizes
    }

    pub fn pmf(&self) -> &[f64] {
        &self.pmf
    }

    /// Value of coordinate `coord` (0-based) in flat cell `idx`.
    fn digit(&self, idx: usize, coord: usize) -> usize {
        let stride: usize = self.alphabet_sizes[coord + 1..].iter().product();
        (idx / stride) % self.alphabet_sizes[coord]
    }

    /// Shannon entropy in nats of the marginal on coordinates `S`, with the
    /// convention `0·ln 0 = 0`. `H(X_∅) = 0`.
    pub fn marginal_entropy_nats(&self, s: Subset) -> f64 {
        if s.is_empty() {
            return 0.0;
        }
        let coords: Vec<usize> = s.iter().map(|e| e - 1).collect();
        let m: usize = coords.iter().map(|&c| self.alphabet_sizes[c]).product();
        let mut marginal = vec![0.0f64; m];
        for (idx, &p) in self.pmf.iter().enumerate() {
            if p == 0.0 {
                continue;
            }
            let mut key = 0usize;
            for &c in &coords {
                key = key * self.alphabet_sizes[c] + self.digit(idx, c);
            }
            marginal[key] += p;
        }
        -marginal.iter().filter(|&&q| q > 0.0).map(|&q| q * q.ln()).sum::<f64>()
    }
}

/// Entropy oracle `f(S) = H(X_S)` in nats for a joint distribution.
pub fn entropy_oracle(p: &JointDistribution) -> SetFunctionOracle {
    let dist = p.clone();
    let n = p.n();
    SetFunctionOracle {
        n,
        eval: Arc::new(move |s| dist.marginal_entropy_nats(s)),
        claims: Claims {
            submodular: true,
            monotone_prefix: true,
            grounded: true,
            ..Claims::default()
        },
        verified: Claims::default(),
        label: "entropy".into(),
    }
}

/// Graph cut oracle: `f(S)` counts edges with exactly one endpoint in `S`.
///
/// Submodular and grounded but *not* monotone-prefix (the full set cuts
/// nothing), so it exercises the partition-only code paths.
pub fn cut_oracle(edges: &[(usize, usize)], n: usize) -> Result<SetFunctionOracle, Error> {
    if n == 0 || n > MAX_GROUND {
        return Err(Error::GroundSize { n });
    }
    for &(a, b) in edges {
        for e in [a, b] {
            if e < 1 || e > n {
                return Err(Error::ElementOutOfRange { element: e, n });
            }
        }
        if a == b {
            return Err(Error::SelfLoop { vertex: a });
        }
    }
    let edges = edges.to_vec();
    Ok(SetFunctionOracle {
        n,
        eval: Arc::new(move |s: Subset| {
            edges.iter().filter(|&&(a, b)| s.contains(a) != s.contains(b)).count() as f64
        }),
        claims: Claims {
            submodular: true,
            grounded: true,
            ..Claims::default()
        },
        verified: Claims::default(),
        label: "cut".into(),
    })
}

/// Coverage oracle: `f(S) = |∪_{i∈S} covers[i]|`.
pub fn coverage_oracle(covers: &[BTreeSet<u32>]) -> Result<SetFunctionOracle, Error> {
    let n = covers.len();
    if n == 0 || n > MAX_GROUND {
        return Err(Error::GroundSize { n });
    }
    let covers = covers.to_vec();
    Ok(SetFunctionOracle {
        n,
        eval: Arc::new(move |s: Subset| {
            let mut union = BTreeSet::new();
            for i in s.iter() {
                union.extend(covers[i - 1].iter().copied());
            }
            union.len() as f64
        }),
        claims: Claims {
            submodular: true,
            monotone_prefix: true,
            grounded: true,
            ..Claims::default()
        },
        verified: Claims::default(),
        label: "coverage".into(),
    })
}

/// Modular oracle `f(S) = Σ_{i∈S} c_i`.
pub fn modular_oracle(singleton_values: &[f64]) -> Result<SetFunctionOracle, Error> {
    let n = singleton_values.len();
    if n == 0 || n > MAX_GROUND {
        return Err(Error::GroundSize { n });
    }
    let c = singleton_values.to_vec();
    let nonneg = c.iter().all(|&v| v >= 0.0);
    Ok(SetFunctionOracle {
        n,
        eval: Arc::new(move |s: Subset| s.iter().map(|i| c[i - 1]).sum()),
        claims: Claims {
            submodular: true,
            supermodular: true,
            modular: true,
            monotone_prefix: nonneg,
            grounded: true,
        },
        verified: Claims::default(),
        label: "modular".into(),
    })
}

/// Cardinality oracle `f(S) = |S|`.
pub fn cardinality_oracle(n: usize) -> Result<SetFunctionOracle, Error> {
    modular_oracle(&vec![1.0; n])
}

/// `-f`, with the submodular/supermodular claims swapped. Together with
/// [`ScalarTransform::reflected`](crate::convex::ScalarTransform::reflected)
/// this realizes the supermodular/non-increasing variant of the convex
/// bounds. The monotone-prefix claim does not survive negation and is
/// dropped.
pub fn negated_oracle(f: &SetFunctionOracle) -> SetFunctionOracle {
    let inner = f.eval.clone();
    let claims = f.claims;
    SetFunctionOracle {
        n: f.n,
        eval: Arc::new(move |s| -inner(s)),
        claims: Claims {
            submodular: claims.supermodular,
            supermodular: claims.submodular,
            modular: claims.modular,
            monotone_prefix: false,
            grounded: claims.grounded,
        },
        verified: Claims::default(),
        label: format!("neg({})", f.label),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dist(sizes: &[usize], pmf: &[f64]) -> JointDistribution {
        JointDistribution::new(sizes.to_vec(), pmf.to_vec()).unwrap()
    }

    fn set(elems: &[usize], n: usize) -> Subset {
        Subset::from_elems(elems, n).unwrap()
    }

    /// Independent entropy computation used as the test-side oracle: direct
    /// −Σ q ln q over an explicitly accumulated marginal map, no Subset or
    /// stride machinery shared with the implementation.
    fn direct_marginal_entropy(sizes: &[usize], pmf: &[f64], coords: &[usize]) -> f64 {
        use std::collections::HashMap;
        let mut acc: HashMap<Vec<usize>, f64> = HashMap::new();
        for (idx, &p) in pmf.iter().enumerate() {
            let mut rem = idx;
            let mut cell = vec![0usize; sizes.len()];
            for i in (0..sizes.len()).rev() {
                cell[i] = rem % sizes[i];
                rem /= sizes[i];
            }
            let key: Vec<usize> = coords.iter().map(|&c| cell[c - 1]).collect();
            *acc.entry(key).or_insert(0.0) += p;
        }
        -acc.values().filter(|&&q| q > 0.0).map(|&q| q * q.ln()).sum::<f64>()
    }

    #[test]
    fn conditional_cardinality() {
        let f = cardinality_oracle(2).unwrap();
        let v = eval_conditional(&f, set(&[1], 2), set(&[2], 2)).unwrap();
        assert_eq!(v, 1.0);
    }

    #[test]
    fn conditional_correlated_bits_is_zero() {
        let p = dist(&[2, 2], &[0.5, 0.0, 0.0, 0.5]);
        let f = entropy_oracle(&p);
        let v = eval_conditional(&f, set(&[2], 2), set(&[1], 2)).unwrap();
        assert!(v.abs() < 1e-12, "H(X2|X1) = {v}, expected 0");
    }

    #[test]
    fn conditional_matches_direct_entropy() {
        let sizes = [2, 2];
        let pmf = [0.5, 0.25, 0.125, 0.125];
        let p = dist(&sizes, &pmf);
        let f = entropy_oracle(&p);
        let got = eval_conditional(&f, set(&[2], 2), set(&[1], 2)).unwrap();
        let expect = direct_marginal_entropy(&sizes, &pmf, &[1, 2])
            - direct_marginal_entropy(&sizes, &pmf, &[1]);
        assert!((got - expect).abs() < 1e-12);
        // frozen from the independent computation
        assert!((got - 0.650_672_421_361_095_9).abs() < 1e-12);
    }

    #[test]
    fn ungrounded_oracle_rejected() {
        let f = SetFunctionOracle::custom(2, "shifted", Claims::default(), |_| 1.0).unwrap();
        assert!(matches!(
            eval_conditional(&f, Subset::EMPTY, Subset::EMPTY),
            Err(Error::NotGrounded { .. })
        ));
    }

    #[test]
    fn squared_cardinality_not_submodular_with_witness() {
        let f = SetFunctionOracle::custom(2, "card^2", Claims::default(), |s| {
            (s.len() * s.len()) as f64
        })
        .unwrap();
        let report = check_structure(&f, &[StructureFlag::Submodular]).unwrap();
        let v = &report.verdicts[0];
        assert!(!v.holds);
        match v.witness.as_ref().unwrap() {
            StructureWitness::Pair { s, t, lhs, rhs } => {
                // first violating pair in mask order: S={1}, T={2}; 1+1 < 4+0
                assert_eq!((s.elems(), t.elems()), (vec![1], vec![2]));
                assert_eq!((*lhs, *rhs), (2.0, 4.0));
            }
            other => panic!("unexpected witness {other:?}"),
        }
    }

    #[test]
    fn entropy_oracle_is_submodular_and_grounded() {
        let p = dist(&[2, 3], &[0.1, 0.2, 0.05, 0.25, 0.3, 0.1]);
        let f = entropy_oracle(&p);
        let report = check_structure(
            &f,
            &[StructureFlag::Submodular, StructureFlag::Grounded, StructureFlag::MonotonePrefix],
        )
        .unwrap();
        assert!(report.verdicts.iter().all(|v| v.holds), "{report:?}");
    }

    #[test]
    fn triangle_cut_submodular_but_not_monotone_prefix() {
        let f = cut_oracle(&[(1, 2), (2, 3), (1, 3)], 3).unwrap();
        let report =
            check_structure(&f, &[StructureFlag::Submodular, StructureFlag::MonotonePrefix])
                .unwrap();
        assert_eq!(report.holds(StructureFlag::Submodular), Some(true));
        assert_eq!(report.holds(StructureFlag::MonotonePrefix), Some(false));
        // f({1,2,3}) = 0 < f({1,2}) = 2: the violating prefix is j = 3
        match report.verdicts[1].witness.as_ref().unwrap() {
            StructureWitness::Prefix { j, prev, next } => {
                assert_eq!(*j, 3);
                assert_eq!((*prev, *next), (2.0, 0.0));
            }
            other => panic!("unexpected witness {other:?}"),
        }
    }

    #[test]
    fn modular_reports_all_three_flags() {
        let f = modular_oracle(&[1.0, 2.0, 3.0]).unwrap();
        let report = check_structure(
            &f,
            &[StructureFlag::Submodular, StructureFlag::Supermodular, StructureFlag::Modular],
        )
        .unwrap();
        assert!(report.verdicts.iter().all(|v| v.holds));
    }

    #[test]
    fn exhaustive_check_refuses_oversized_ground() {
        let err = SetFunctionOracle::custom(MAX_GROUND + 1, "big", Claims::default(), |_| 0.0);
        assert!(err.is_err());
    }

    #[test]
    fn entropy_values_independent_bits() {
        let p = dist(&[2, 2], &[0.25, 0.25, 0.25, 0.25]);
        let f = entropy_oracle(&p);
        let ln2 = std::f64::consts::LN_2;
        assert!((f.eval(set(&[1], 2)) - ln2).abs() < 1e-12);
        assert!((f.eval(Subset::full(2)) - 2.0 * ln2).abs() < 1e-12);
        assert_eq!(f.eval(Subset::EMPTY), 0.0);
    }

    #[test]
    fn entropy_values_correlated_and_skewed() {
        let ln2 = std::f64::consts::LN_2;
        let corr = entropy_oracle(&dist(&[2, 2], &[0.5, 0.0, 0.0, 0.5]));
        assert!((corr.eval(Subset::full(2)) - ln2).abs() < 1e-12);

        let pmf = [0.5, 0.25, 0.125, 0.125];
        let skew = entropy_oracle(&dist(&[2, 2], &pmf));
        let h12 = skew.eval(Subset::full(2));
        assert!((h12 - 1.75 * ln2).abs() < 1e-12);
        let cross: f64 = -pmf.iter().filter(|&&p| p > 0.0).map(|&p| p * p.ln()).sum::<f64>();
        assert!((h12 - cross).abs() < 1e-12);
    }

    #[test]
    fn pmf_validation() {
        assert!(JointDistribution::new(vec![2, 2], vec![0.5, 0.5]).is_err());
        assert!(JointDistribution::new(vec![2], vec![0.7, 0.2]).is_err());
        assert!(JointDistribution::new(vec![2], vec![1.1, -0.1]).is_err());
        assert!(JointDistribution::new(vec![2], vec![0.5, 0.5]).is_ok());
    }

    #[test]
    fn cut_oracle_values() {
        let tri = cut_oracle(&[(1, 2), (2, 3), (1, 3)], 3).unwrap();
        assert_eq!(tri.eval(set(&[1], 3)), 2.0);
        assert_eq!(tri.eval(Subset::full(3)), 0.0);
        let path = cut_oracle(&[(1, 2), (2, 3)], 3).unwrap();
        assert_eq!(path.eval(set(&[2], 3)), 2.0);
        assert!(cut_oracle(&[(1, 1)], 2).is_err());
        assert!(cut_oracle(&[(1, 4)], 3).is_err());
    }

    #[test]
    fn coverage_oracle_values_and_structure() {
        let mk = |xs: &[u32]| xs.iter().copied().collect::<BTreeSet<u32>>();
        let same = coverage_oracle(&[mk(&[0]), mk(&[0])]).unwrap();
        assert_eq!(same.eval(Subset::full(2)), 1.0);
        let disjoint = coverage_oracle(&[mk(&[0]), mk(&[1])]).unwrap();
        assert_eq!(disjoint.eval(Subset::full(2)), 2.0);

        let f = coverage_oracle(&[mk(&[0, 1]), mk(&[1, 2]), mk(&[2])]).unwrap();
        assert_eq!(f.eval(set(&[1, 3], 3)), 3.0);
        let report = check_structure(&f, &[StructureFlag::Submodular]).unwrap();
        assert!(report.verdicts[0].holds);
    }

    #[test]
    fn attested_upgrades_and_drops_claims() {
        let f = SetFunctionOracle::custom(
            2,
            "card^2",
            Claims { submodular: true, grounded: true, ..Claims::default() },
            |s| (s.len() * s.len()) as f64,
        )
        .unwrap();
        let report =
            check_structure(&f, &[StructureFlag::Submodular, StructureFlag::Grounded]).unwrap();
        let f = f.attested(&report);
        assert!(!f.claims().submodular, "refuted claim must be dropped");
        assert!(f.verified().grounded);
    }

    #[test]
    fn conditioning_reduces_submodular_value() {
        // f(S|T) <= f(S) for grounded submodular f
        let p = dist(&[2, 2, 2], &[0.15, 0.1, 0.05, 0.2, 0.1, 0.1, 0.05, 0.25]);
        let f = entropy_oracle(&p);
        for s in Subset::all(3) {
            for t in Subset::all(3) {
                let cond = f.conditional(s.minus(t), t);
                assert!(cond <= f.eval(s.minus(t)) + tol::INEQ_ABS);
            }
        }
    }
}
