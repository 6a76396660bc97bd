//! Shannon entropies and the entropic contextuality quantity `C`.
//!
//! For a cycle of observables `A_1, ..., A_n` in which neighbors are
//! jointly measurable, the chain rule and monotonicity of Shannon entropy
//! imply, for any noncontextual (jointly distributed) model,
//!
//! ```text
//! H(A_1 | A_n) <= H(A_1 | A_2) + H(A_2 | A_3) + ... + H(A_{n-1} | A_n)
//! ```
//!
//! The quantity `C = H(A_1|A_n) - Σ rhs` is therefore non-positive
//! classically; `C > 0` certifies contextuality. All entropies are in bits.

use serde::{Deserialize, Serialize};

use crate::dist::{PairTable, CONSISTENCY_TOL};
use crate::error::{Error, Result};
use crate::numfmt::{ser_sig12, ser_sig12_arr, ser_sig12_slice};
use crate::quantum::PentagonConfig;

/// Probabilities at or below this are treated as exact zeros inside
/// entropy sums (`0 log 0 = 0`).
pub const ENTROPY_ZERO_TOL: f64 = 1e-15;

/// Shannon entropy `H(p) = -Σ p_i log2 p_i` in bits.
///
/// Validates that `probs` is a distribution: entries may undershoot zero by
/// at most `1e-12` and must total 1 within `1e-9`.
pub fn shannon_entropy(probs: &[f64]) -> Result<f64> {
    let mut sum = 0.0;
    for &p in probs {
        if !p.is_finite() || p < -1e-12 {
            return Err(Error::InvalidDistribution {
                reason: format!("probability {p} is negative or non-finite"),
            });
        }
        sum += p.max(0.0);
    }
    if (sum - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidDistribution {
            reason: format!("probabilities sum to {sum}, not 1"),
        });
    }
    let mut h = 0.0;
    for &p in probs {
        if p > ENTROPY_ZERO_TOL {
            h -= p * p.log2();
        }
    }
    Ok(h.max(0.0))
}

/// Conditional entropy `H(A | B) = Σ_b p(B=b) H(A | B=b)` in bits, where
/// `A` is the first variable of the table and `B` the second.
pub fn conditional_entropy(table: &PairTable) -> f64 {
    let mut h = 0.0;
    for (b, &marginal) in table.marginal_second().iter().enumerate() {
        if marginal <= ENTROPY_ZERO_TOL {
            continue;
        }
        for a in 0..2 {
            let joint = table.prob(a, b);
            if joint > ENTROPY_ZERO_TOL {
                h -= joint * (joint / marginal).log2();
            }
        }
    }
    h.max(0.0)
}

/// Evaluation of the pentagon entropic test.
///
/// Serialized fields are rounded to 12 significant digits, so repeated runs
/// emit byte-identical reports.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntropyReport {
    /// Left-hand side `H(A_1 | A_5)`.
    #[serde(serialize_with = "ser_sig12")]
    pub h_a1_given_a5: f64,
    /// Chain terms `[H(A_1|A_2), H(A_2|A_3), H(A_3|A_4), H(A_4|A_5)]`.
    #[serde(serialize_with = "ser_sig12_arr")]
    pub rhs_terms: [f64; 4],
    /// `C = H(A_1|A_5) - Σ rhs_terms`; positive iff contextual.
    #[serde(serialize_with = "ser_sig12")]
    pub c_value: f64,
}

/// Evaluation of the entropic test on an `n`-cycle of pair tables.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CycleReport {
    /// Left-hand side `H(A_1 | A_n)`.
    #[serde(serialize_with = "ser_sig12")]
    pub h_first_given_last: f64,
    /// Chain terms `H(A_i | A_{i+1})` for `i = 1..n-1`.
    #[serde(serialize_with = "ser_sig12_slice")]
    pub rhs_terms: Vec<f64>,
    /// `C = H(A_1|A_n) - Σ rhs_terms`; positive iff contextual.
    #[serde(serialize_with = "ser_sig12")]
    pub c_value: f64,
}

fn cycle_terms(tables: &[PairTable]) -> CycleReport {
    let n = tables.len();
    let h_first_given_last = conditional_entropy(&tables[n - 1]);
    let rhs_terms: Vec<f64> = tables[..n - 1].iter().map(conditional_entropy).collect();
    let c_value = h_first_given_last - rhs_terms.iter().sum::<f64>();
    CycleReport {
        h_first_given_last,
        rhs_terms,
        c_value,
    }
}

fn check_cycle_shape(tables: &[PairTable]) -> Result<()> {
    if tables.len() < 3 {
        return Err(Error::WrongStructure {
            reason: format!(
                "an entropic cycle test needs at least 3 pair tables, got {}",
                tables.len()
            ),
        });
    }
    Ok(())
}

/// Evaluate the cycle quantity `C` from measured-and-consistent pair tables.
///
/// For `n` variables `A_1..A_n`, `tables` must hold the chain pairs
/// `(A_1,A_2), ..., (A_{n-1},A_n)` followed by the closing pair
/// `(A_1,A_n)`, each oriented with the named first variable on the first
/// table index. Shared single-variable marginals must agree across tables
/// within `1e-9`; use this entry point for exact (e.g. Born-rule) tables
/// and [`evaluate_c_plugin`] for noisy empirical frequencies.
pub fn evaluate_c_from_marginals(tables: &[PairTable]) -> Result<CycleReport> {
    check_cycle_shape(tables)?;
    let n = tables.len();
    let check = |variable: usize, left: f64, right: f64| -> Result<()> {
        let difference = (left - right).abs();
        if difference > CONSISTENCY_TOL {
            return Err(Error::InconsistentMarginals {
                variable,
                left,
                right,
                difference,
                tolerance: CONSISTENCY_TOL,
            });
        }
        Ok(())
    };
    // Chain tables share their inner variables: second of (A_i, A_{i+1})
    // is first of (A_{i+1}, A_{i+2}).
    for k in 0..n - 2 {
        check(
            k + 1,
            tables[k].marginal_second()[1],
            tables[k + 1].marginal_first()[1],
        )?;
    }
    // Closing table (A_1, A_n) shares A_1 with the first chain table and
    // A_n with the last one.
    check(
        0,
        tables[n - 1].marginal_first()[1],
        tables[0].marginal_first()[1],
    )?;
    check(
        n - 1,
        tables[n - 1].marginal_second()[1],
        tables[n - 2].marginal_second()[1],
    )?;
    Ok(cycle_terms(tables))
}

/// Evaluate the cycle quantity `C` without cross-table consistency checks.
///
/// Same table layout as [`evaluate_c_from_marginals`]. Finite-sample
/// frequency tables fluctuate around a consistent point, so their shared
/// marginals disagree at the `1/sqrt(shots)` scale; plug-in estimation must
/// therefore skip the exact-consistency validation.
pub fn evaluate_c_plugin(tables: &[PairTable]) -> Result<CycleReport> {
    check_cycle_shape(tables)?;
    Ok(cycle_terms(tables))
}

/// Evaluate the pentagon entropic test on a configuration via the Born
/// rule.
pub fn evaluate_c(config: &PentagonConfig) -> Result<EntropyReport> {
    let tables = config.edge_distributions()?;
    let report = cycle_terms(&tables);
    Ok(EntropyReport {
        h_a1_given_a5: report.h_first_given_last,
        rhs_terms: [
            report.rhs_terms[0],
            report.rhs_terms[1],
            report.rhs_terms[2],
            report.rhs_terms[3],
        ],
        c_value: report.c_value,
    })
}
