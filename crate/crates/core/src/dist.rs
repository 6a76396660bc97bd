//! Joint distributions of a pair of binary observables.
//!
//! A [`PairTable`] stores `p[a][b] = p(A = a, B = b)` for dichotomic
//! outcomes `a, b ∈ {0, 1}`. It is the basic statistical object of the
//! crate: measured or Born-rule pair statistics enter as pair tables, and
//! all entropic quantities are computed from them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Entries may undershoot zero by at most this much before being rejected;
/// anything in `[-NEGATIVE_TOL, 0)` is clipped to exactly zero. Covers
/// cancellation noise in `1 - p - q` style expressions.
pub const NEGATIVE_TOL: f64 = 1e-12;

/// A table's entries must sum to 1 within this tolerance.
pub const SUM_TOL: f64 = 1e-9;

/// Two tables sharing a variable must agree on its single-variable marginal
/// within this tolerance.
pub const CONSISTENCY_TOL: f64 = 1e-9;

/// Joint distribution of two binary observables, `p[a][b] = p(A=a, B=b)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[[f64; 2]; 2]", into = "[[f64; 2]; 2]")]
pub struct PairTable {
    p: [[f64; 2]; 2],
}

impl PairTable {
    /// Build a table from `p[a][b]`, clipping entries in `[-1e-12, 0)` to
    /// zero and requiring the total to be 1 within [`SUM_TOL`].
    pub fn new(mut p: [[f64; 2]; 2]) -> Result<Self> {
        let mut sum = 0.0;
        for row in &mut p {
            for cell in row.iter_mut() {
                if !cell.is_finite() || *cell < -NEGATIVE_TOL {
                    return Err(Error::InvalidDistribution {
                        reason: format!("pair table entry {cell} is negative or non-finite"),
                    });
                }
                if *cell < 0.0 {
                    *cell = 0.0;
                }
                sum += *cell;
            }
        }
        if (sum - 1.0).abs() > SUM_TOL {
            return Err(Error::InvalidDistribution {
                reason: format!("pair table sums to {sum}, not 1 within {SUM_TOL:.0e}"),
            });
        }
        Ok(Self { p })
    }

    /// Build a table from the four cell probabilities in the order
    /// `p(0,0), p(0,1), p(1,0), p(1,1)`.
    pub fn from_cells(p00: f64, p01: f64, p10: f64, p11: f64) -> Result<Self> {
        Self::new([[p00, p01], [p10, p11]])
    }

    /// Probability `p(A = a, B = b)`. Panics if an index exceeds 1.
    pub fn prob(&self, a: usize, b: usize) -> f64 {
        self.p[a][b]
    }

    /// The raw `p[a][b]` array.
    pub fn cells(&self) -> [[f64; 2]; 2] {
        self.p
    }

    /// Marginal distribution of the first variable, `[p(A=0), p(A=1)]`.
    pub fn marginal_first(&self) -> [f64; 2] {
        [self.p[0][0] + self.p[0][1], self.p[1][0] + self.p[1][1]]
    }

    /// Marginal distribution of the second variable, `[p(B=0), p(B=1)]`.
    pub fn marginal_second(&self) -> [f64; 2] {
        [self.p[0][0] + self.p[1][0], self.p[0][1] + self.p[1][1]]
    }

    /// The same joint distribution with the variables swapped:
    /// `q[b][a] = p[a][b]`.
    pub fn transposed(&self) -> Self {
        Self {
            p: [
                [self.p[0][0], self.p[1][0]],
                [self.p[0][1], self.p[1][1]],
            ],
        }
    }

    /// Whether the two variables are exclusive (never both 1) within `tol`.
    pub fn is_exclusive(&self, tol: f64) -> bool {
        self.p[1][1] <= tol
    }
}

impl TryFrom<[[f64; 2]; 2]> for PairTable {
    type Error = Error;

    fn try_from(p: [[f64; 2]; 2]) -> Result<Self> {
        Self::new(p)
    }
}

impl From<PairTable> for [[f64; 2]; 2] {
    fn from(t: PairTable) -> Self {
        t.p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_and_reads_back_cells() {
        let t = PairTable::from_cells(0.5, 0.25, 0.0, 0.25).unwrap();
        assert_eq!(t.prob(0, 0), 0.5);
        assert_eq!(t.prob(0, 1), 0.25);
        assert_eq!(t.prob(1, 0), 0.0);
        assert_eq!(t.prob(1, 1), 0.25);
    }

    #[test]
    fn clips_tiny_negative_entries() {
        let t = PairTable::from_cells(0.5, 0.5 + 1e-13, -1e-13, 0.0).unwrap();
        assert_eq!(t.prob(1, 0), 0.0);
    }

    #[test]
    fn rejects_genuinely_negative_entries() {
        let err = PairTable::from_cells(0.5, 0.5, -1e-6, 1e-6).unwrap_err();
        assert!(matches!(err, Error::InvalidDistribution { .. }));
    }

    #[test]
    fn rejects_wrong_total() {
        let err = PairTable::from_cells(0.5, 0.25, 0.25, 0.1).unwrap_err();
        assert!(matches!(err, Error::InvalidDistribution { .. }));
    }

    #[test]
    fn marginals_sum_rows_and_columns() {
        let t = PairTable::from_cells(0.1, 0.2, 0.3, 0.4).unwrap();
        assert!((t.marginal_first()[0] - 0.3).abs() < 1e-15);
        assert!((t.marginal_first()[1] - 0.7).abs() < 1e-15);
        assert!((t.marginal_second()[0] - 0.4).abs() < 1e-15);
        assert!((t.marginal_second()[1] - 0.6).abs() < 1e-15);
    }

    #[test]
    fn transpose_swaps_off_diagonal_cells() {
        let t = PairTable::from_cells(0.1, 0.2, 0.3, 0.4).unwrap();
        let u = t.transposed();
        assert_eq!(u.prob(0, 1), 0.3);
        assert_eq!(u.prob(1, 0), 0.2);
        assert_eq!(u.transposed(), t);
    }

    #[test]
    fn serde_round_trips_as_nested_array() {
        let t = PairTable::from_cells(0.5, 0.25, 0.0, 0.25).unwrap();
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(json, "[[0.5,0.25],[0.0,0.25]]");
        let back: PairTable = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn serde_rejects_invalid_table() {
        let r: std::result::Result<PairTable, _> = serde_json::from_str("[[0.9,0.3],[0.0,0.0]]");
        assert!(r.is_err());
    }
}
