//! Finite-statistics simulation: multinomial sampling of the five
//! measurement contexts and bootstrap estimation of `C`.
//!
//! Each context `(A_i, A_j)` of an exclusive pair has three possible
//! outcomes — `(0,0)`, `(0,1)`, `(1,0)` — since both projectors firing is
//! forbidden. [`sample_context`] draws multinomial counts for one context;
//! [`estimate_c`] turns per-context counts into a plug-in estimate of `C`
//! with a percentile-bootstrap confidence interval and an optional
//! Miller-Madow bias correction.
//!
//! The Miller-Madow correction for an entropy estimated from `n` samples
//! over `m` occupied cells adds `(m - 1) / (2 n ln 2)` bits; for a
//! conditional entropy `H(A|B) = H(AB) - H(B)` the corrections subtract,
//! leaving `(m_AB - m_B) / (2 n ln 2)`.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dist::PairTable;
use crate::entropy::evaluate_c_plugin;
use crate::error::{Error, Result};
use crate::numfmt::ser_sig12;
use crate::par;
use crate::quantum::PentagonConfig;

/// Exclusive pairs never fire together beyond this tolerance.
pub const EXCLUSIVITY_TOL: f64 = 1e-12;

/// Hard cap on bootstrap resamples.
pub const MAX_RESAMPLES: usize = 1_000_000;

/// Outcome counts for one measurement context of an exclusive pair. The
/// `(1,1)` outcome is structurally impossible, so three counters suffice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ContextCounts {
    /// Times neither projector fired.
    pub n00: u64,
    /// Times only the second fired.
    pub n01: u64,
    /// Times only the first fired.
    pub n10: u64,
}

impl ContextCounts {
    /// Total shots recorded in this context.
    pub fn total(&self) -> u64 {
        self.n00 + self.n01 + self.n10
    }

    /// The empirical frequency table (exclusive cell fixed at zero).
    pub fn frequencies(&self) -> Result<PairTable> {
        let n = self.total();
        if n == 0 {
            return Err(Error::InvalidDistribution {
                reason: "cannot take frequencies of zero shots".into(),
            });
        }
        let n = n as f64;
        PairTable::from_cells(
            self.n00 as f64 / n,
            self.n01 as f64 / n,
            self.n10 as f64 / n,
            0.0,
        )
    }

    /// Occupied cells of the joint table (for Miller-Madow).
    fn support_joint(&self) -> u64 {
        u64::from(self.n00 > 0) + u64::from(self.n01 > 0) + u64::from(self.n10 > 0)
    }

    /// Occupied cells of the second variable's marginal.
    fn support_second(&self) -> u64 {
        u64::from(self.n00 + self.n10 > 0) + u64::from(self.n01 > 0)
    }
}

/// Draw multinomial outcome counts for one exclusive-pair context.
///
/// The table must be exclusive (`p(1,1) <=` [`EXCLUSIVITY_TOL`]) and
/// `shots >= 1`. The three live cells are renormalized and sampled by a
/// chain of binomial draws, so the counts always sum to `shots` exactly.
pub fn sample_context<R: Rng + ?Sized>(
    rng: &mut R,
    table: &PairTable,
    shots: u64,
) -> Result<ContextCounts> {
    if shots == 0 {
        return Err(Error::ParameterOutOfDomain {
            name: "shots",
            value: 0.0,
            domain: "positive integers",
        });
    }
    if !table.is_exclusive(EXCLUSIVITY_TOL) {
        return Err(Error::InvalidDistribution {
            reason: format!(
                "context table is not exclusive: p(1,1) = {} exceeds {EXCLUSIVITY_TOL}",
                table.prob(1, 1)
            ),
        });
    }
    let cells = table.cells();
    let (p00, p01, p10) = (cells[0][0], cells[0][1], cells[1][0]);
    let live = p00 + p01 + p10;

    let n00 = draw_binomial(rng, shots, p00 / live)?;
    let rest = shots - n00;
    let n01 = if rest == 0 {
        0
    } else {
        let denom = live - p00;
        if denom <= 0.0 {
            // p00 carried all the mass; floating-point leftovers go to (0,1).
            rest
        } else {
            draw_binomial(rng, rest, p01 / denom)?
        }
    };
    Ok(ContextCounts {
        n00,
        n01,
        n10: rest - n01,
    })
}

fn draw_binomial<R: Rng + ?Sized>(rng: &mut R, n: u64, p: f64) -> Result<u64> {
    let binomial = rand_distr::Binomial::new(n, p.clamp(0.0, 1.0)).map_err(|e| {
        Error::SolverFailure {
            reason: format!("binomial sampler rejected n = {n}, p = {p}: {e}"),
        }
    })?;
    Ok(rng.sample(binomial))
}

/// Sample all five contexts of a pentagon configuration, `shots` each, in
/// the cyclic edge order `(A_1,A_2) .. (A_4,A_5), (A_1,A_5)`.
pub fn sample_pentagon_edges<R: Rng + ?Sized>(
    rng: &mut R,
    config: &PentagonConfig,
    shots: u64,
) -> Result<[ContextCounts; 5]> {
    let tables = config.edge_distributions()?;
    let mut counts = [ContextCounts {
        n00: 0,
        n01: 0,
        n10: 0,
    }; 5];
    for (count, table) in counts.iter_mut().zip(&tables) {
        *count = sample_context(rng, table, shots)?;
    }
    Ok(counts)
}

/// A bootstrap estimate of `C` from per-context counts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CEstimate {
    /// Point estimate of `C` (Miller-Madow corrected when requested).
    #[serde(serialize_with = "ser_sig12")]
    pub c_hat: f64,
    /// 2.5% percentile of the bootstrap distribution.
    #[serde(serialize_with = "ser_sig12")]
    pub ci_low: f64,
    /// 97.5% percentile of the bootstrap distribution.
    #[serde(serialize_with = "ser_sig12")]
    pub ci_high: f64,
    /// Shots per context.
    pub shots: u64,
    /// Bootstrap resamples taken.
    pub resamples: usize,
    /// Whether the Miller-Madow correction was applied.
    pub miller_madow: bool,
}

/// Estimate `C` from five contexts' counts with a percentile bootstrap.
///
/// Every context must hold exactly `shots` outcomes. The point estimate
/// plugs the empirical frequencies into the cycle formula; each of the
/// `resamples` bootstrap replicates redraws all five contexts
/// multinomially from those frequencies (sub-seeded from `seed`, so the
/// result is reproducible and independent of thread scheduling) and the
/// 2.5%/97.5% percentiles of the replicate estimates bound the interval.
pub fn estimate_c(
    counts: &[ContextCounts; 5],
    shots: u64,
    resamples: usize,
    seed: u64,
    miller_madow: bool,
) -> Result<CEstimate> {
    if shots == 0 {
        return Err(Error::ParameterOutOfDomain {
            name: "shots",
            value: 0.0,
            domain: "positive integers",
        });
    }
    if resamples == 0 || resamples > MAX_RESAMPLES {
        return Err(Error::TooLarge {
            what: "bootstrap resamples",
            got: resamples,
            limit: MAX_RESAMPLES,
        });
    }
    for (k, count) in counts.iter().enumerate() {
        if count.total() != shots {
            return Err(Error::InvalidDistribution {
                reason: format!(
                    "context {k} holds {} outcomes, expected {shots}",
                    count.total()
                ),
            });
        }
    }

    let mut tables = Vec::with_capacity(5);
    for count in counts {
        tables.push(count.frequencies()?);
    }
    let c_hat = point_estimate(counts, &tables, shots, miller_madow)?;

    let replicates: Result<Vec<f64>> = par::map_indexed(resamples, |r| {
        let mut rng = ChaCha8Rng::seed_from_u64(par::sub_seed(seed, r as u64));
        let mut redrawn = [ContextCounts {
            n00: 0,
            n01: 0,
            n10: 0,
        }; 5];
        let mut retables = Vec::with_capacity(5);
        for (count, table) in redrawn.iter_mut().zip(&tables) {
            *count = sample_context(&mut rng, table, shots)?;
            retables.push(count.frequencies()?);
        }
        point_estimate(&redrawn, &retables, shots, miller_madow)
    })
    .into_iter()
    .collect();
    let mut replicates = replicates?;
    replicates.sort_by(f64::total_cmp);

    Ok(CEstimate {
        c_hat,
        ci_low: quantile_type7(&replicates, 0.025),
        ci_high: quantile_type7(&replicates, 0.975),
        shots,
        resamples,
        miller_madow,
    })
}

fn point_estimate(
    counts: &[ContextCounts; 5],
    tables: &[PairTable],
    shots: u64,
    miller_madow: bool,
) -> Result<f64> {
    let report = evaluate_c_plugin(tables)?;
    if !miller_madow {
        return Ok(report.c_value);
    }
    // C = H(A_1|A_5) - sum of chain terms, so the closing context's
    // correction enters positively and the chain contexts' negatively.
    let scale = 1.0 / (2.0 * shots as f64 * std::f64::consts::LN_2);
    let corr =
        |c: &ContextCounts| -> f64 { (c.support_joint() as f64 - c.support_second() as f64) * scale };
    let chain: f64 = counts[..4].iter().map(corr).sum();
    Ok(report.c_value + corr(&counts[4]) - chain)
}

/// Linear-interpolation quantile (type 7) of an ascending-sorted slice.
fn quantile_type7(sorted: &[f64], q: f64) -> f64 {
    let n = sorted.len();
    if n == 1 {
        return sorted[0];
    }
    let h = (n - 1) as f64 * q;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(n - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}
