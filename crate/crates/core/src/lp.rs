//! Linear-programming test for the existence of a global joint
//! distribution.
//!
//! Given pair tables on an arbitrary set of variable pairs, a noncontextual
//! model is a point `q` of the `2^n`-cell probability simplex whose pair
//! marginals reproduce every table:
//!
//! ```text
//! Σ_x q_x = 1,   Σ_{x: x_i=a, x_j=b} q_x = p_ij(a, b),   q >= 0.
//! ```
//!
//! [`jpd_exists`] decides this with a phase-1 simplex (Bland's anti-cycling
//! rule) and returns either an explicit witness distribution or a Farkas
//! infeasibility certificate `y` with `yᵀA <= 0 < yᵀb`. An independent
//! brute-force decision procedure, [`brute_force_feasibility_oracle`],
//! cross-checks the solver on small instances by enumerating candidate
//! basic solutions directly.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{JointDistribution, PairwiseMarginals};
use crate::numfmt::{ser_sig12, ser_sig12_opt_vec};
use crate::quantum::{PentagonConfig, PENTAGON_EDGES};

/// Hard cap on the number of variables the LP handles (`2^n` columns).
pub const MAX_LP_VARS: usize = 12;

/// Pivot entries smaller than this are treated as zero by the simplex.
pub const PIVOT_TOL: f64 = 1e-10;

/// The problem is declared feasible when the phase-1 objective (total
/// artificial mass) falls to or below this threshold.
pub const FEASIBILITY_TOL: f64 = 1e-7;

/// A joint-distribution existence problem: `n` binary variables and a
/// collection of pair tables to reproduce.
///
/// The tables are deliberately *not* required to be marginal-consistent:
/// inconsistent inputs are legitimate instances that the LP correctly
/// reports as infeasible.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ProblemRepr", into = "ProblemRepr")]
pub struct FeasibilityProblem {
    n: usize,
    marginals: PairwiseMarginals,
}

#[derive(Serialize, Deserialize)]
struct ProblemRepr {
    marginals: PairwiseMarginals,
}

impl FeasibilityProblem {
    /// Wrap a marginal collection, capping the variable count at
    /// [`MAX_LP_VARS`].
    pub fn new(marginals: PairwiseMarginals) -> Result<Self> {
        let n = marginals.variable_count();
        if n == 0 || n > MAX_LP_VARS {
            return Err(Error::TooLarge {
                what: "feasibility problem variables",
                got: n,
                limit: MAX_LP_VARS,
            });
        }
        Ok(Self { n, marginals })
    }

    /// Number of variables.
    pub fn variable_count(&self) -> usize {
        self.n
    }

    /// The pair tables.
    pub fn marginals(&self) -> &PairwiseMarginals {
        &self.marginals
    }

    /// Assemble the dense equality system `A q = b` over the `2^n` cell
    /// probabilities: the normalization row first, then four rows per
    /// stored pair in sorted pair order, cell order
    /// `(0,0), (0,1), (1,0), (1,1)`.
    pub fn constraint_system(&self) -> (Vec<Vec<f64>>, Vec<f64>) {
        let cells = 1usize << self.n;
        let mut a = vec![vec![1.0; cells]];
        let mut b = vec![1.0];
        for (i, j) in self.marginals.pairs() {
            let table = self.marginals.get(i, j).expect("pair listed by pairs()");
            for (ai, aj) in [(0usize, 0usize), (0, 1), (1, 0), (1, 1)] {
                let mut row = vec![0.0; cells];
                for (x, slot) in row.iter_mut().enumerate() {
                    if (x >> i) & 1 == ai && (x >> j) & 1 == aj {
                        *slot = 1.0;
                    }
                }
                a.push(row);
                b.push(table.prob(ai, aj));
            }
        }
        (a, b)
    }
}

impl TryFrom<ProblemRepr> for FeasibilityProblem {
    type Error = Error;

    fn try_from(r: ProblemRepr) -> Result<Self> {
        Self::new(r.marginals)
    }
}

impl From<FeasibilityProblem> for ProblemRepr {
    fn from(p: FeasibilityProblem) -> Self {
        ProblemRepr {
            marginals: p.marginals,
        }
    }
}

/// The feasibility problem of a pentagon configuration: its five Born-rule
/// edge tables on the 5-cycle.
pub fn pentagon_problem(config: &PentagonConfig) -> Result<FeasibilityProblem> {
    let mut marginals = PairwiseMarginals::new(5);
    for &(i, j) in &PENTAGON_EDGES {
        marginals.insert(i, j, config.edge_distribution((i, j))?)?;
    }
    FeasibilityProblem::new(marginals)
}

/// Outcome of a feasibility decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FeasibilityStatus {
    /// A joint distribution reproducing all tables exists.
    Feasible,
    /// No such distribution exists.
    Infeasible,
}

/// Result of [`jpd_exists`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FeasibilityResult {
    /// Feasible or infeasible.
    pub status: FeasibilityStatus,
    /// For feasible problems: an explicit joint distribution whose pair
    /// marginals reproduce the tables (up to `residual`).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<JointDistribution>,
    /// For infeasible problems: a Farkas certificate `y` (one entry per
    /// constraint row) with `yᵀA <= 0` and `yᵀb > 0`, proving that no
    /// nonnegative solution can exist.
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_sig12_opt_vec")]
    pub certificate: Option<Vec<f64>>,
    /// Feasible: the maximum constraint violation `max_k |(A q - b)_k|` of
    /// the witness. Infeasible: the phase-1 objective, i.e. the smallest
    /// total constraint violation any nonnegative `q` can achieve.
    #[serde(serialize_with = "ser_sig12")]
    pub residual: f64,
}

/// Decide whether a joint distribution reproducing the problem's pair
/// tables exists.
///
/// Runs a dense phase-1 simplex: artificial variables start in the basis,
/// their total is minimized with Bland's rule (smallest eligible index;
/// provably cycle-free), and the problem is feasible iff the optimum falls
/// below [`FEASIBILITY_TOL`]. Feasible instances yield a witness
/// distribution read off the final basis; infeasible ones yield the Farkas
/// certificate `y_k = 1 - r_k` recovered from the final reduced costs
/// `r_k` of the artificial columns.
pub fn jpd_exists(problem: &FeasibilityProblem) -> Result<FeasibilityResult> {
    let (a, b) = problem.constraint_system();
    let m = a.len();
    let cells = 1usize << problem.variable_count();
    let width = cells + m + 1; // original | artificial | rhs

    // Tableau rows 0..m hold [A | I | b]; row m holds reduced costs and
    // the negated objective. With the artificial basis and costs (0 | 1),
    // the reduced cost of column j is -Σ_i A_ij and the objective is Σ b_i.
    let mut t = vec![vec![0.0; width]; m + 1];
    for (i, row) in a.iter().enumerate() {
        t[i][..cells].copy_from_slice(row);
        t[i][cells + i] = 1.0;
        t[i][width - 1] = b[i];
    }
    for j in 0..cells {
        t[m][j] = -a.iter().map(|row| row[j]).sum::<f64>();
    }
    t[m][width - 1] = -b.iter().sum::<f64>();

    let mut basis: Vec<usize> = (cells..cells + m).collect();
    let mut iterations = 0usize;
    const MAX_ITERATIONS: usize = 200_000;
    loop {
        iterations += 1;
        if iterations > MAX_ITERATIONS {
            return Err(Error::SolverFailure {
                reason: format!("phase-1 simplex exceeded {MAX_ITERATIONS} pivots"),
            });
        }
        // Bland: entering column = smallest index with negative reduced cost.
        let Some(enter) = (0..width - 1).find(|&j| t[m][j] < -PIVOT_TOL) else {
            break;
        };
        // Ratio test; Bland tie-break on the smallest basis variable.
        let mut leave: Option<(usize, f64)> = None;
        for i in 0..m {
            if t[i][enter] > PIVOT_TOL {
                let ratio = t[i][width - 1] / t[i][enter];
                let better = match leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < lr - PIVOT_TOL
                            || (ratio < lr + PIVOT_TOL && basis[i] < basis[li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((pivot_row, _)) = leave else {
            // The phase-1 objective is bounded below by 0, so an unbounded
            // ray cannot occur with consistent arithmetic.
            return Err(Error::SolverFailure {
                reason: "phase-1 simplex found an unbounded direction".into(),
            });
        };
        // Pivot.
        let pivot = t[pivot_row][enter];
        for v in &mut t[pivot_row] {
            *v /= pivot;
        }
        for i in 0..=m {
            if i == pivot_row {
                continue;
            }
            let factor = t[i][enter];
            if factor == 0.0 {
                continue;
            }
            let pivot_row_copy = t[pivot_row].clone();
            for (v, pv) in t[i].iter_mut().zip(&pivot_row_copy) {
                *v -= factor * pv;
            }
        }
        basis[pivot_row] = enter;
    }

    let objective = -t[m][width - 1];
    if objective <= FEASIBILITY_TOL {
        // Read the witness off the basis and renormalize away the (at
        // most FEASIBILITY_TOL) artificial residue.
        let mut q = vec![0.0; cells];
        for (i, &var) in basis.iter().enumerate() {
            if var < cells {
                q[var] = t[i][width - 1].max(0.0);
            }
        }
        let total: f64 = q.iter().sum();
        if total <= 0.0 {
            return Err(Error::SolverFailure {
                reason: "phase-1 simplex returned an empty witness".into(),
            });
        }
        for v in &mut q {
            *v /= total;
        }
        let residual = a
            .iter()
            .zip(&b)
            .map(|(row, &bi)| {
                (row.iter().zip(&q).map(|(c, qi)| c * qi).sum::<f64>() - bi).abs()
            })
            .fold(0.0, f64::max);
        let witness = JointDistribution::new((0..problem.variable_count()).collect(), q)?;
        Ok(FeasibilityResult {
            status: FeasibilityStatus::Feasible,
            witness: Some(witness),
            certificate: None,
            residual,
        })
    } else {
        // Farkas certificate from the artificial columns' reduced costs.
        let y: Vec<f64> = (0..m).map(|k| 1.0 - t[m][cells + k]).collect();
        Ok(FeasibilityResult {
            status: FeasibilityStatus::Infeasible,
            witness: None,
            certificate: Some(y),
            residual: objective,
        })
    }
}

/// Iterate lexicographic `k`-combinations of `0..n`, stopping early when
/// the callback returns `true`; returns whether any callback did.
fn any_combination(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    if k > n {
        return false;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if f(&idx) {
            return true;
        }
        // Advance to the next combination.
        let mut i = k;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return false;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Independent feasibility decision by exhaustive basic-solution
/// enumeration, for cross-checking [`jpd_exists`] on small instances
/// (`n <= 4`).
///
/// Reduces `[A | b]` by Gaussian elimination: if `rank([A|b]) > rank(A)`
/// the system is inconsistent outright. Otherwise a feasible region, being
/// pointed (`q >= 0`), is nonempty iff it has a vertex — a basic solution
/// supported on `rank(A)` linearly independent columns — so every
/// `rank`-sized column subset is tried with a dense square solve and a
/// nonnegativity-plus-residual check.
pub fn brute_force_feasibility_oracle(problem: &FeasibilityProblem) -> Result<bool> {
    const MAX_ORACLE_VARS: usize = 4;
    if problem.variable_count() > MAX_ORACLE_VARS {
        return Err(Error::TooLarge {
            what: "brute-force oracle variables",
            got: problem.variable_count(),
            limit: MAX_ORACLE_VARS,
        });
    }
    const RANK_TOL: f64 = 1e-9;
    let (a, b) = problem.constraint_system();
    let m = a.len();
    let cells = 1usize << problem.variable_count();

    // Gaussian elimination with partial pivoting on [A | b].
    let mut aug: Vec<Vec<f64>> = a
        .iter()
        .zip(&b)
        .map(|(row, &bi)| {
            let mut r = row.clone();
            r.push(bi);
            r
        })
        .collect();
    let mut pivot_rows = Vec::new();
    let mut row = 0usize;
    for col in 0..cells {
        let Some(best) = (row..m)
            .max_by(|&x, &y| aug[x][col].abs().total_cmp(&aug[y][col].abs()))
            .filter(|&r| aug[r][col].abs() > RANK_TOL)
        else {
            continue;
        };
        aug.swap(row, best);
        for r in 0..m {
            if r != row && aug[r][col].abs() > 0.0 {
                let factor = aug[r][col] / aug[row][col];
                let pivot_row = aug[row].clone();
                for (v, pv) in aug[r].iter_mut().zip(&pivot_row) {
                    *v -= factor * pv;
                }
            }
        }
        pivot_rows.push(row);
        row += 1;
        if row == m {
            break;
        }
    }
    let rank = row;
    // Any leftover row with zero coefficients but nonzero rhs means the
    // linear system itself (ignoring q >= 0) has no solution.
    for r in aug.iter().skip(rank) {
        if r[cells].abs() > RANK_TOL {
            return Ok(false);
        }
    }

    // Work with `rank` independent rows of the original system. The rows
    // that became pivots during elimination index a row basis, but row
    // swaps reordered `aug`; simplest is to re-run selection on the
    // original matrix: greedily keep rows that increase the rank.
    let mut independent: Vec<usize> = Vec::new();
    {
        let mut work: Vec<Vec<f64>> = Vec::new();
        for (i, row_a) in a.iter().enumerate() {
            let mut candidate = row_a.clone();
            // Orthogonalize against kept rows (Gram-Schmidt suffices for a
            // rank check on these small, well-scaled 0/1 systems).
            for w in &work {
                let dot: f64 = candidate.iter().zip(w).map(|(x, y)| x * y).sum();
                let nrm: f64 = w.iter().map(|x| x * x).sum();
                let coeff = dot / nrm;
                for (c, wv) in candidate.iter_mut().zip(w) {
                    *c -= coeff * wv;
                }
            }
            let nrm: f64 = candidate.iter().map(|x| x * x).sum::<f64>().sqrt();
            if nrm > RANK_TOL {
                work.push(candidate);
                independent.push(i);
            }
            if independent.len() == rank {
                break;
            }
        }
    }

    // Try every `rank`-sized column subset as a candidate basis.
    let found = any_combination(cells, rank, |subset| {
        // Solve the square system A[independent][subset] x = b[independent].
        let k = rank;
        let mut mat: Vec<Vec<f64>> = independent
            .iter()
            .map(|&r| {
                let mut row: Vec<f64> = subset.iter().map(|&c| a[r][c]).collect();
                row.push(b[r]);
                row
            })
            .collect();
        for col in 0..k {
            let Some(best) = (col..k)
                .max_by(|&x, &y| mat[x][col].abs().total_cmp(&mat[y][col].abs()))
                .filter(|&r| mat[r][col].abs() > RANK_TOL)
            else {
                return false; // singular subset; not a basis
            };
            mat.swap(col, best);
            for r in 0..k {
                if r != col {
                    let factor = mat[r][col] / mat[col][col];
                    let pivot_row = mat[col].clone();
                    for (v, pv) in mat[r].iter_mut().zip(&pivot_row) {
                        *v -= factor * pv;
                    }
                }
            }
        }
        let mut q = vec![0.0; cells];
        for (i, &c) in subset.iter().enumerate() {
            let x = mat[i][k] / mat[i][i];
            if x < -1e-9 {
                return false;
            }
            q[c] = x.max(0.0);
        }
        // Verify against the full system, not just the independent rows.
        a.iter().zip(&b).all(|(row, &bi)| {
            (row.iter().zip(&q).map(|(c, qi)| c * qi).sum::<f64>() - bi).abs() <= FEASIBILITY_TOL
        })
    });
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::PairTable;
    use crate::graph::random_jpd;
    use crate::quantum::{build_pentagon_family, build_symmetric_pentagram, FamilyParams};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn verify_certificate(problem: &FeasibilityProblem, y: &[f64]) {
        let (a, b) = problem.constraint_system();
        let yb: f64 = y.iter().zip(&b).map(|(yi, bi)| yi * bi).sum();
        assert!(yb > FEASIBILITY_TOL, "yᵀb = {yb} not positive");
        for j in 0..a[0].len() {
            let ya: f64 = y.iter().zip(&a).map(|(yi, row)| yi * row[j]).sum();
            assert!(ya <= 1e-7, "yᵀA column {j} = {ya} not <= 0");
        }
    }

    fn verify_witness(problem: &FeasibilityProblem, result: &FeasibilityResult) {
        let witness = result.witness.as_ref().expect("feasible result has witness");
        for (i, j) in problem.marginals().pairs() {
            let want = problem.marginals().get(i, j).unwrap();
            let got = witness.pair_marginal(i, j).unwrap();
            for x in 0..2 {
                for y in 0..2 {
                    assert!(
                        (got.prob(x, y) - want.prob(x, y)).abs() <= 1e-7,
                        "pair ({i},{j}) cell ({x},{y})"
                    );
                }
            }
        }
        assert!(result.residual <= FEASIBILITY_TOL);
    }

    #[test]
    fn quantum_pentagon_tables_admit_no_joint_distribution() {
        let cfg = build_pentagon_family(&FamilyParams::new(0.2366, 0.1698).unwrap()).unwrap();
        let problem = pentagon_problem(&cfg).unwrap();
        let result = jpd_exists(&problem).unwrap();
        assert_eq!(result.status, FeasibilityStatus::Infeasible);
        assert!(result.residual > FEASIBILITY_TOL);
        verify_certificate(&problem, result.certificate.as_ref().unwrap());
    }

    #[test]
    fn pentagram_maximum_tables_admit_no_joint_distribution() {
        let problem = pentagon_problem(&build_symmetric_pentagram()).unwrap();
        let result = jpd_exists(&problem).unwrap();
        assert_eq!(result.status, FeasibilityStatus::Infeasible);
        verify_certificate(&problem, result.certificate.as_ref().unwrap());
    }

    #[test]
    fn marginals_of_an_actual_joint_distribution_are_feasible() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let master = random_jpd(&[0, 1, 2, 3, 4], &mut rng).unwrap();
        let mut marginals = PairwiseMarginals::new(5);
        for (i, j) in [(0usize, 1usize), (1, 2), (2, 3), (3, 4), (0, 4)] {
            marginals
                .insert(i, j, master.pair_marginal(i, j).unwrap())
                .unwrap();
        }
        let problem = FeasibilityProblem::new(marginals).unwrap();
        let result = jpd_exists(&problem).unwrap();
        assert_eq!(result.status, FeasibilityStatus::Feasible);
        verify_witness(&problem, &result);
    }

    #[test]
    fn anticorrelated_triangle_is_infeasible_but_chain_is_feasible() {
        // Three pairwise perfectly anticorrelated variables cannot exist:
        // the triangle admits no global sign assignment.
        let anti = PairTable::from_cells(0.0, 0.5, 0.5, 0.0).unwrap();
        let mut triangle = PairwiseMarginals::new(3);
        for (i, j) in [(0usize, 1usize), (1, 2), (0, 2)] {
            triangle.insert(i, j, anti).unwrap();
        }
        let problem = FeasibilityProblem::new(triangle).unwrap();
        let result = jpd_exists(&problem).unwrap();
        assert_eq!(result.status, FeasibilityStatus::Infeasible);
        verify_certificate(&problem, result.certificate.as_ref().unwrap());
        assert!(!brute_force_feasibility_oracle(&problem).unwrap());

        // The same tables on an open chain are realized by alternating
        // fair signs.
        let mut chain = PairwiseMarginals::new(3);
        for (i, j) in [(0usize, 1usize), (1, 2)] {
            chain.insert(i, j, anti).unwrap();
        }
        let problem = FeasibilityProblem::new(chain).unwrap();
        let result = jpd_exists(&problem).unwrap();
        assert_eq!(result.status, FeasibilityStatus::Feasible);
        verify_witness(&problem, &result);
        assert!(brute_force_feasibility_oracle(&problem).unwrap());
    }

    #[test]
    fn solver_matches_oracle_on_random_small_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(101);
        let mut feasible_seen = 0;
        let mut infeasible_seen = 0;
        for case in 0..40 {
            let n = 3 + (case % 2);
            let all_pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
                .collect();
            let mut marginals = PairwiseMarginals::new(n);
            if case % 2 == 0 {
                // Marginals of a genuine joint distribution: must be feasible.
                let vars: Vec<usize> = (0..n).collect();
                let master = random_jpd(&vars, &mut rng).unwrap();
                for &(i, j) in &all_pairs {
                    marginals
                        .insert(i, j, master.pair_marginal(i, j).unwrap())
                        .unwrap();
                }
            } else {
                // Independently random tables: usually obstructed.
                for &(i, j) in &all_pairs {
                    let t = random_jpd(&[0, 1], &mut rng).unwrap();
                    marginals
                        .insert(
                            i,
                            j,
                            PairTable::new([
                                [t.prob(0), t.prob(2)],
                                [t.prob(1), t.prob(3)],
                            ])
                            .unwrap(),
                        )
                        .unwrap();
                }
            }
            let problem = FeasibilityProblem::new(marginals).unwrap();
            let solver = jpd_exists(&problem).unwrap();
            let oracle = brute_force_feasibility_oracle(&problem).unwrap();
            assert_eq!(
                solver.status == FeasibilityStatus::Feasible,
                oracle,
                "case {case}: solver disagrees with oracle"
            );
            match solver.status {
                FeasibilityStatus::Feasible => {
                    feasible_seen += 1;
                    verify_witness(&problem, &solver);
                }
                FeasibilityStatus::Infeasible => {
                    infeasible_seen += 1;
                    verify_certificate(&problem, solver.certificate.as_ref().unwrap());
                }
            }
        }
        assert!(feasible_seen >= 10, "battery should exercise feasible cases");
        assert!(infeasible_seen >= 10, "battery should exercise infeasible cases");
    }

    #[test]
    fn problem_size_limits_are_enforced() {
        let m = PairwiseMarginals::new(13);
        assert!(matches!(
            FeasibilityProblem::new(m),
            Err(Error::TooLarge { .. })
        ));
        let mut m = PairwiseMarginals::new(5);
        m.insert(0, 1, PairTable::from_cells(0.25, 0.25, 0.25, 0.25).unwrap())
            .unwrap();
        let p = FeasibilityProblem::new(m).unwrap();
        assert!(matches!(
            brute_force_feasibility_oracle(&p),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn constraint_system_shape_and_content() {
        let mut m = PairwiseMarginals::new(3);
        m.insert(0, 1, PairTable::from_cells(0.1, 0.2, 0.3, 0.4).unwrap())
            .unwrap();
        let p = FeasibilityProblem::new(m).unwrap();
        let (a, b) = p.constraint_system();
        assert_eq!(a.len(), 5);
        assert_eq!(a[0], vec![1.0; 8]);
        assert_eq!(b, vec![1.0, 0.1, 0.2, 0.3, 0.4]);
        // Row for (a_0, a_1) = (1, 0) selects cells with bit0 = 1, bit1 = 0.
        for (x, &coeff) in a[3].iter().enumerate() {
            let selected = (x & 1 == 1) && (x & 2 == 0);
            assert_eq!(coeff == 1.0, selected, "cell {x}");
        }
    }

    #[test]
    fn result_serializes_compactly() {
        let cfg = build_pentagon_family(&FamilyParams::new(0.2366, 0.1698).unwrap()).unwrap();
        let result = jpd_exists(&pentagon_problem(&cfg).unwrap()).unwrap();
        let json = serde_json::to_string(&result).unwrap();
        assert!(json.contains("\"status\":\"infeasible\""));
        assert!(json.contains("\"certificate\":["));
        assert!(!json.contains("witness"));
    }
}
