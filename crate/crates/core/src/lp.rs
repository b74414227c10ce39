//! Minimum-weight fractional covering via a dense two-phase simplex.
//!
//! Solves `min Σ cost(S)·α(S)` subject to `Σ_{S∋i} α(S) ≥ 1` for every
//! element `i`, `α ≥ 0`. Pivoting uses Bland's rule (entering: lowest
//! eligible column index; leaving: lowest basic variable index among minimum
//! ratios), which cannot cycle and makes the returned vertex deterministic.
//! Dense tableaus are fine at desk scale (at most a few hundred members and
//! twenty elements).

use crate::family::{SetFamily, WeightedFamily};
use crate::tol;
use crate::Error;

/// Result of [`min_weight_covering_lp`].
#[derive(Clone, Debug)]
pub struct CoveringLp {
    /// The optimal fractional covering.
    pub weighted: WeightedFamily,
    /// `Σ cost(S)·α(S)` at the optimum.
    pub objective: f64,
}

/// Finds a minimum-cost fractional covering of `[1:n]` by the family's
/// members.
pub fn min_weight_covering_lp(family: &SetFamily, costs: &[f64]) -> Result<CoveringLp, Error> {
    let m = family.len();
    let n = family.n();
    if costs.len() != m {
        return Err(Error::WeightCount { members: m, weights: costs.len() });
    }
    if let Some(&bad) = costs.iter().find(|c| !c.is_finite()) {
        return Err(Error::LpBadCost { cost: bad });
    }
    if let Some(e) = (1..=n).find(|&e| family.degree(e) == 0) {
        return Err(Error::UncoveredElement { element: e });
    }

    // Columns: 0..m member weights, m..m+n surplus, m+n..m+2n artificial.
    let cols = m + 2 * n;
    let mut tab = vec![vec![0.0f64; cols + 1]; n];
    for (row, tr) in tab.iter_mut().enumerate() {
        let elem = row + 1;
        for (j, &s) in family.members().iter().enumerate() {
            if s.contains(elem) {
                tr[j] = 1.0;
            }
        }
        tr[m + row] = -1.0;
        tr[m + n + row] = 1.0;
        tr[cols] = 1.0;
    }
    let mut basis: Vec<usize> = (0..n).map(|i| m + n + i).collect();

    // Phase 1: minimize the artificial sum.
    let phase1_cost: Vec<f64> =
        (0..cols).map(|j| if j >= m + n { 1.0 } else { 0.0 }).collect();
    let mut obj = reduced_costs(&tab, &basis, &phase1_cost);
    run_simplex(&mut tab, &mut basis, &mut obj, cols)?;
    let artificial_sum = -obj[cols];
    if artificial_sum > 1e-7 {
        return Err(Error::LpInfeasible { residual: artificial_sum });
    }

    // Drive remaining artificials out of the basis (degenerate pivots), or
    // drop the row if it has become redundant.
    let mut row = 0;
    while row < tab.len() {
        if basis[row] >= m + n {
            if let Some(j) = (0..m + n).find(|&j| tab[row][j].abs() > tol::LP_PIVOT_ABS) {
                pivot(&mut tab, &mut obj, row, j);
                basis[row] = j;
                row += 1;
            } else {
                tab.remove(row);
                basis.remove(row);
            }
        } else {
            row += 1;
        }
    }

    // Phase 2: original costs, artificial columns banned.
    let phase2_cost: Vec<f64> = (0..cols)
        .map(|j| if j < m { costs[j] } else { 0.0 })
        .collect();
    let mut obj = reduced_costs(&tab, &basis, &phase2_cost);
    for j in m + n..cols {
        obj[j] = f64::INFINITY; // never eligible to enter
    }
    run_simplex(&mut tab, &mut basis, &mut obj, m + n)?;

    let mut alpha = vec![0.0f64; m];
    for (row, &b) in basis.iter().enumerate() {
        if b < m {
            alpha[b] = tab[row][cols].max(0.0);
        }
    }
    let objective = alpha.iter().zip(costs).map(|(a, c)| a * c).sum();
    let weighted = WeightedFamily::from_reals(family.clone(), &alpha)?;
    Ok(CoveringLp { weighted, objective })
}

/// Reduced-cost row for the current basis: `r_j = c_j − Σ_i c_B(i)·T[i][j]`,
/// with the right-hand cell holding minus the objective value.
fn reduced_costs(tab: &[Vec<f64>], basis: &[usize], cost: &[f64]) -> Vec<f64> {
    let cols = tab.first().map_or(0, |r| r.len() - 1);
    let mut obj = vec![0.0f64; cols + 1];
    for j in 0..cols {
        obj[j] = cost[j];
    }
    for (i, row) in tab.iter().enumerate() {
        let cb = cost[basis[i]];
        if cb != 0.0 {
            for j in 0..=cols {
                obj[j] -= cb * row[j];
            }
        }
    }
    obj
}

fn pivot(tab: &mut [Vec<f64>], obj: &mut [f64], row: usize, col: usize) {
    let p = tab[row][col];
    for v in tab[row].iter_mut() {
        *v /= p;
    }
    let pivot_row = tab[row].clone();
    for (i, r) in tab.iter_mut().enumerate() {
        if i != row && r[col].abs() > 0.0 {
            let factor = r[col];
            for (v, pv) in r.iter_mut().zip(&pivot_row) {
                *v -= factor * pv;
            }
        }
    }
    if obj[col].is_finite() && obj[col] != 0.0 {
        let factor = obj[col];
        for (v, pv) in obj.iter_mut().zip(&pivot_row) {
            if v.is_finite() {
                *v -= factor * pv;
            }
        }
    }
}

/// Bland-rule simplex over columns `0..eligible`.
fn run_simplex(
    tab: &mut [Vec<f64>],
    basis: &mut [usize],
    obj: &mut [f64],
    eligible: usize,
) -> Result<(), Error> {
    let cols = tab.first().map_or(0, |r| r.len() - 1);
    loop {
        let Some(enter) =
            (0..eligible).find(|&j| obj[j].is_finite() && obj[j] < -tol::LP_PIVOT_ABS)
        else {
            return Ok(());
        };
        let mut leave: Option<usize> = None;
        let mut best = f64::INFINITY;
        for (i, row) in tab.iter().enumerate() {
            if row[enter] > tol::LP_PIVOT_ABS {
                let ratio = row[cols] / row[enter];
                let better = ratio < best - tol::LP_PIVOT_ABS
                    || ((ratio - best).abs() <= tol::LP_PIVOT_ABS
                        && leave.is_some_and(|l| basis[i] < basis[l]));
                if leave.is_none() || better {
                    best = ratio.min(best);
                    leave = Some(i);
                }
            }
        }
        let Some(leave) = leave else {
            return Err(Error::LpUnbounded { column: enter });
        };
        pivot(tab, obj, leave, enter);
        basis[leave] = enter;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::classify_weights;

    fn fam(n: usize, lists: &[&[usize]]) -> SetFamily {
        SetFamily::from_elem_lists(n, &lists.iter().map(|l| l.to_vec()).collect::<Vec<_>>())
            .unwrap()
    }

    #[test]
    fn singleton_cover_forces_unit_weights() {
        let f = fam(3, &[&[1], &[2], &[3]]);
        let sol = min_weight_covering_lp(&f, &[1.0, 1.0, 1.0]).unwrap();
        assert!((sol.objective - 3.0).abs() < 1e-7);
        assert!(sol.weighted.weight_values().iter().all(|&w| (w - 1.0).abs() < 1e-9));
    }

    #[test]
    fn pairs_of_four_cover_with_objective_two() {
        // frozen from brute-force enumeration of the LP's vertex solutions
        let lists: Vec<Vec<usize>> = vec![
            vec![1, 2],
            vec![1, 3],
            vec![1, 4],
            vec![2, 3],
            vec![2, 4],
            vec![3, 4],
        ];
        let f = SetFamily::from_elem_lists(4, &lists).unwrap();
        let sol = min_weight_covering_lp(&f, &[1.0; 6]).unwrap();
        assert!((sol.objective - 2.0).abs() < 1e-7, "objective {}", sol.objective);
        assert!(classify_weights(&sol.weighted).is_covering);
    }

    #[test]
    fn triangle_fractional_optimum() {
        // frozen from brute-force enumeration: objective 3/2 at α ≡ 1/2
        let f = fam(3, &[&[1, 2], &[2, 3], &[1, 3]]);
        let sol = min_weight_covering_lp(&f, &[1.0, 1.0, 1.0]).unwrap();
        assert!((sol.objective - 1.5).abs() < 1e-7, "objective {}", sol.objective);
        for w in sol.weighted.weight_values() {
            assert!((w - 0.5).abs() < 1e-7, "weight {w}");
        }
    }

    #[test]
    fn uncovered_element_rejected() {
        let f = fam(3, &[&[1, 2]]);
        assert!(matches!(
            min_weight_covering_lp(&f, &[1.0]),
            Err(Error::UncoveredElement { element: 3 })
        ));
    }

    #[test]
    fn deterministic_solution() {
        let f = fam(4, &[&[1, 2], &[2, 3], &[3, 4], &[1, 4], &[1, 3]]);
        let costs = [1.0, 2.0, 1.0, 1.5, 1.0];
        let a = min_weight_covering_lp(&f, &costs).unwrap();
        let b = min_weight_covering_lp(&f, &costs).unwrap();
        assert_eq!(a.weighted.weight_values(), b.weighted.weight_values());
        assert_eq!(a.objective, b.objective);
    }

    #[test]
    fn beats_or_matches_uniform_shearer_weights() {
        let f = fam(3, &[&[1, 2], &[2, 3], &[1, 3]]);
        let k = f.cover_number() as f64;
        let costs = [1.0, 1.0, 1.0];
        let uniform_objective: f64 = costs.iter().map(|c| c / k).sum();
        let sol = min_weight_covering_lp(&f, &costs).unwrap();
        assert!(sol.objective <= uniform_objective + 1e-7);
    }
}
