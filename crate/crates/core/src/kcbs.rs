//! The pentagram inequality `Σ p(A_i = 1) <= 2`.
//!
//! In any noncontextual assignment, the five exclusive-neighbor
//! observables of the pentagon can have at most two outcomes equal to 1
//! (an independent set of the 5-cycle), bounding the sum of outcome-1
//! probabilities by 2. Quantum mechanics reaches `sqrt(5) ≈ 2.236`.
//!
//! This is the probabilistic counterpart of the entropic test in
//! [`crate::entropy`]; the two witness overlapping but distinct regions of
//! configuration space, and the crate evaluates both side by side.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numfmt::ser_sig12;
use crate::quantum::{outcome_probability, PentagonConfig};

/// Evaluation of the pentagram inequality.
///
/// Serialized fields are rounded to 12 significant digits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KcbsReport {
    /// `Σ_i p(A_i = 1)`.
    #[serde(serialize_with = "ser_sig12")]
    pub sum: f64,
    /// `sum - 2`; positive iff the noncontextual bound is violated.
    #[serde(serialize_with = "ser_sig12")]
    pub violation: f64,
}

/// The noncontextual pentagram bound, `Σ p(A_i = 1) <= 2`.
pub const CLASSICAL_BOUND: f64 = 2.0;

/// The quantum maximum of the pentagram sum, `sqrt(5)`.
pub fn quantum_maximum() -> f64 {
    5.0_f64.sqrt()
}

/// Evaluate the pentagram sum and its violation for a configuration.
pub fn kcbs_value(config: &PentagonConfig) -> KcbsReport {
    let sum = config
        .projectors()
        .iter()
        .map(|p| outcome_probability(config.state(), p))
        .sum();
    KcbsReport {
        sum,
        violation: sum - CLASSICAL_BOUND,
    }
}

/// Noncontextual bound on `Σ p(A_i = 1)` for observables whose exclusivity
/// structure is the given graph: the maximum number of 1-outcomes any
/// deterministic assignment can realize, i.e. the maximum independent set
/// size, found by exhaustive enumeration over all `2^n` assignments.
///
/// Supports `n <= 20`; edge endpoints must be distinct and in range.
pub fn exclusivity_bound(n: usize, edges: &[(usize, usize)]) -> Result<f64> {
    const MAX_N: usize = 20;
    if n > MAX_N {
        return Err(Error::TooLarge {
            what: "exclusivity graph vertices",
            got: n,
            limit: MAX_N,
        });
    }
    for &(i, j) in edges {
        if i >= n || j >= n {
            return Err(Error::UnknownVariable {
                variable: i.max(j),
                count: n,
            });
        }
        if i == j {
            return Err(Error::WrongStructure {
                reason: format!("self-loop at vertex {i} in exclusivity graph"),
            });
        }
    }
    let mut best = 0u32;
    for mask in 0u32..(1u32 << n) {
        if edges
            .iter()
            .all(|&(i, j)| mask & (1 << i) == 0 || mask & (1 << j) == 0)
        {
            best = best.max(mask.count_ones());
        }
    }
    Ok(f64::from(best))
}

/// The pentagram bound computed from first principles: the maximum
/// independent set of the 5-cycle has size 2.
pub fn classical_kcbs_bound() -> f64 {
    exclusivity_bound(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
        .expect("the 5-cycle is a valid exclusivity graph")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{build_pentagon_family, build_symmetric_pentagram, FamilyParams,
                         PureState, PentagonConfig};

    #[test]
    fn classical_bound_is_two_by_enumeration() {
        assert_eq!(classical_kcbs_bound(), 2.0);
        assert_eq!(classical_kcbs_bound(), CLASSICAL_BOUND);
    }

    #[test]
    fn exclusivity_bound_on_reference_graphs() {
        // Odd cycles: max independent set of C_n is (n-1)/2.
        let c7: Vec<(usize, usize)> = (0..7).map(|i| (i, (i + 1) % 7)).collect();
        assert_eq!(exclusivity_bound(7, &c7).unwrap(), 3.0);
        // Complete graph K_4: only one observable can fire.
        let k4 = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        assert_eq!(exclusivity_bound(4, &k4).unwrap(), 1.0);
        // No exclusivity: everything can fire.
        assert_eq!(exclusivity_bound(5, &[]).unwrap(), 5.0);
    }

    #[test]
    fn exclusivity_bound_rejects_bad_input() {
        assert!(matches!(
            exclusivity_bound(21, &[]),
            Err(Error::TooLarge { .. })
        ));
        assert!(matches!(
            exclusivity_bound(3, &[(0, 3)]),
            Err(Error::UnknownVariable { .. })
        ));
        assert!(matches!(
            exclusivity_bound(3, &[(1, 1)]),
            Err(Error::WrongStructure { .. })
        ));
    }

    #[test]
    fn symmetric_pentagram_reaches_the_quantum_maximum() {
        let report = kcbs_value(&build_symmetric_pentagram());
        assert!((report.sum - quantum_maximum()).abs() < 1e-14);
        assert!((report.violation - (5.0_f64.sqrt() - 2.0)).abs() < 1e-14);
    }

    #[test]
    fn entropic_optimum_violates_kcbs_by_frozen_amount() {
        // Frozen from a 50-digit evaluation at (0.2366, 0.1698).
        let cfg = build_pentagon_family(&FamilyParams::new(0.2366, 0.1698).unwrap()).unwrap();
        let report = kcbs_value(&cfg);
        assert!((report.sum - 2.0491707063769153).abs() < 1e-12);
        assert!((report.violation - 0.04917070637691527).abs() < 1e-12);
    }

    #[test]
    fn parked_state_does_not_violate() {
        let cfg = build_pentagon_family(&FamilyParams::new(0.2366, 0.1698).unwrap()).unwrap();
        let parked = PentagonConfig::new(
            PureState::real([1.0, 0.0, 0.0]).unwrap(),
            *cfg.projectors(),
        )
        .unwrap();
        let report = kcbs_value(&parked);
        assert!((report.sum - 1.9706045765368953).abs() < 1e-12);
        assert!(report.violation < 0.0);
    }

    #[test]
    fn report_serializes_at_twelve_significant_digits() {
        let cfg = build_pentagon_family(&FamilyParams::new(0.2366, 0.1698).unwrap()).unwrap();
        let json = serde_json::to_string(&kcbs_value(&cfg)).unwrap();
        assert_eq!(
            json,
            "{\"sum\":2.04917070638,\"violation\":0.0491707063769}"
        );
    }
}
