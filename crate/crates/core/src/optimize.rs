//! Grid scans and derivative-free maximization of the entropic quantity
//! `C`.
//!
//! Two searches are provided. [`optimize_two_param`] polishes `(theta,
//! phi)` inside the two-parameter family. [`optimize_general`] searches all
//! real pentagon configurations through a gauge-fixed four-angle
//! parameterization: rotations are spent putting `a_3 = (1,0,0)` and the
//! state into the x-y plane, which leaves exactly four intrinsic angles —
//! the state tilt, the two fan angles of `a_2` and `a_4`, and the
//! position of `a_1` in the plane orthogonal to `a_2` (`a_5` is then
//! forced by orthogonality). A real configuration has `2 + 5·2 - 5 = 7`
//! parameters minus 3 gauge rotations, so four angles are exhaustive.
//!
//! Both searches run a standard Nelder-Mead simplex (reflection 1,
//! expansion 2, contraction 0.5, shrink 0.5) with a parameter-diameter
//! convergence test; the multi-start general search distributes restarts
//! across the thread pool deterministically.

use serde::Serialize;

use crate::entropy::evaluate_c;
use crate::error::{Error, Result};
use crate::kcbs::{kcbs_value, KcbsReport};
use crate::numfmt::{ser_sig12, ser_sig12_arr};
use crate::par;
use crate::quantum::{
    symmetry_residuals, FamilyParams, PentagonConfig, Projector, PureState,
};

/// Hard cap on grid resolution per axis.
pub const MAX_RESOLUTION: usize = 4096;

/// Nelder-Mead convergence tolerance on the simplex parameter diameter.
pub const SIMPLEX_TOL: f64 = 1e-10;

/// Objective value used for out-of-domain or degenerate evaluations.
const PENALTY: f64 = 1e9;

/// A rectangular `(theta, phi)` grid specification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    theta_min: f64,
    theta_max: f64,
    phi_min: f64,
    phi_max: f64,
    resolution: usize,
}

impl GridSpec {
    /// Validate a grid: finite ordered ranges whose corners lie in the
    /// family domain, and `1 <= resolution <=` [`MAX_RESOLUTION`] points
    /// per axis.
    pub fn new(
        theta_min: f64,
        theta_max: f64,
        phi_min: f64,
        phi_max: f64,
        resolution: usize,
    ) -> Result<Self> {
        if resolution == 0 || resolution > MAX_RESOLUTION {
            return Err(Error::TooLarge {
                what: "grid resolution",
                got: resolution,
                limit: MAX_RESOLUTION,
            });
        }
        // Corner validation covers the whole rectangle and rules out
        // non-finite bounds before the ordering checks.
        FamilyParams::new(theta_min, phi_min)?;
        FamilyParams::new(theta_max, phi_max)?;
        if theta_min > theta_max {
            return Err(Error::ParameterOutOfDomain {
                name: "theta_max",
                value: theta_max,
                domain: "[theta_min, inf)",
            });
        }
        if phi_min > phi_max {
            return Err(Error::ParameterOutOfDomain {
                name: "phi_max",
                value: phi_max,
                domain: "[phi_min, pi/4)",
            });
        }
        Ok(Self {
            theta_min,
            theta_max,
            phi_min,
            phi_max,
            resolution,
        })
    }

    /// The default scan window: `theta` over `[0, pi/2]`, `phi` over
    /// `[0, 0.785]` (just inside the domain boundary `pi/4`).
    pub fn default_window(resolution: usize) -> Result<Self> {
        Self::new(0.0, std::f64::consts::FRAC_PI_2, 0.0, 0.785, resolution)
    }

    /// Points per axis.
    pub fn resolution(&self) -> usize {
        self.resolution
    }

    /// The `i`-th theta value (row index).
    pub fn theta_at(&self, i: usize) -> f64 {
        lerp(self.theta_min, self.theta_max, i, self.resolution)
    }

    /// The `j`-th phi value (column index).
    pub fn phi_at(&self, j: usize) -> f64 {
        lerp(self.phi_min, self.phi_max, j, self.resolution)
    }
}

fn lerp(min: f64, max: f64, k: usize, resolution: usize) -> f64 {
    if resolution == 1 {
        return min;
    }
    min + (max - min) * (k as f64) / ((resolution - 1) as f64)
}

/// One evaluated grid point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    /// State angle.
    pub theta: f64,
    /// Fan angle.
    pub phi: f64,
    /// Entropic quantity at `(theta, phi)`.
    pub c_value: f64,
}

fn scan_impl(spec: &GridSpec, parallel: bool) -> Result<Vec<GridPoint>> {
    let res = spec.resolution();
    let eval = |k: usize| -> Result<GridPoint> {
        let (theta, phi) = (spec.theta_at(k / res), spec.phi_at(k % res));
        let config = build(theta, phi)?;
        Ok(GridPoint {
            theta,
            phi,
            c_value: evaluate_c(&config)?.c_value,
        })
    };
    let results = if parallel {
        par::map_indexed(res * res, eval)
    } else {
        par::map_indexed_serial(res * res, eval)
    };
    results.into_iter().collect()
}

fn build(theta: f64, phi: f64) -> Result<PentagonConfig> {
    crate::quantum::build_pentagon_family(&FamilyParams::new(theta, phi)?)
}

/// Evaluate `C` on the grid, row-major with `theta` as the outer (row)
/// index. Runs on the thread pool when the `parallel` feature is enabled;
/// output order and values are identical either way.
pub fn scan_grid(spec: &GridSpec) -> Result<Vec<GridPoint>> {
    scan_impl(spec, true)
}

/// Sequential reference implementation of [`scan_grid`], bit-identical to
/// it; the benchmark suite compares the two.
pub fn scan_grid_serial(spec: &GridSpec) -> Result<Vec<GridPoint>> {
    scan_impl(spec, false)
}

/// The grid point with the largest `C`; ties resolve to the
/// lexicographically smallest `(theta, phi)`. `None` on an empty slice.
pub fn grid_argmax(points: &[GridPoint]) -> Option<GridPoint> {
    points.iter().copied().reduce(|best, p| {
        if p.c_value > best.c_value
            || (p.c_value == best.c_value && (p.theta, p.phi) < (best.theta, best.phi))
        {
            p
        } else {
            best
        }
    })
}

/// Result of a Nelder-Mead run.
struct NmOutcome {
    x: Vec<f64>,
    fx: f64,
    iterations: usize,
    converged: bool,
}

/// Minimize `f` with the Nelder-Mead simplex from `x0` with initial step
/// `step`. Convergence: the max-norm diameter of the simplex falls below
/// [`SIMPLEX_TOL`].
fn nelder_mead(f: impl Fn(&[f64]) -> f64, x0: &[f64], step: f64, max_iter: usize) -> NmOutcome {
    let dim = x0.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
    simplex.push((x0.to_vec(), f(x0)));
    for i in 0..dim {
        let mut x = x0.to_vec();
        x[i] += step;
        let fx = f(&x);
        simplex.push((x, fx));
    }

    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iter {
        iterations += 1;
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let diameter = simplex[1..]
            .iter()
            .flat_map(|(x, _)| {
                x.iter()
                    .zip(&simplex[0].0)
                    .map(|(a, b)| (a - b).abs())
            })
            .fold(0.0, f64::max);
        if diameter < SIMPLEX_TOL {
            converged = true;
            break;
        }

        // Centroid of all but the worst vertex.
        let mut centroid = vec![0.0; dim];
        for (x, _) in &simplex[..dim] {
            for (c, xi) in centroid.iter_mut().zip(x) {
                *c += xi / dim as f64;
            }
        }
        let worst = simplex[dim].clone();
        let at = |coeff: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&worst.0)
                .map(|(c, w)| c + coeff * (c - w))
                .collect()
        };

        let reflected = at(1.0);
        let f_reflected = f(&reflected);
        if f_reflected < simplex[0].1 {
            // Try expanding past the reflection.
            let expanded = at(2.0);
            let f_expanded = f(&expanded);
            simplex[dim] = if f_expanded < f_reflected {
                (expanded, f_expanded)
            } else {
                (reflected, f_reflected)
            };
        } else if f_reflected < simplex[dim - 1].1 {
            simplex[dim] = (reflected, f_reflected);
        } else {
            // Contract toward the better of worst/reflected.
            let contracted = if f_reflected < worst.1 {
                at(0.5)
            } else {
                at(-0.5)
            };
            let f_contracted = f(&contracted);
            if f_contracted < worst.1.min(f_reflected) {
                simplex[dim] = (contracted, f_contracted);
            } else {
                // Shrink everything toward the best vertex.
                let best = simplex[0].0.clone();
                for (x, fx) in &mut simplex[1..] {
                    for (xi, bi) in x.iter_mut().zip(&best) {
                        *xi = bi + 0.5 * (*xi - bi);
                    }
                    *fx = f(x);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (x, fx) = simplex.swap_remove(0);
    NmOutcome {
        x,
        fx,
        iterations,
        converged,
    }
}

/// Result of [`optimize_two_param`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwoParamOptimum {
    /// The located parameters.
    pub params: FamilyParams,
    /// `C` at the optimum.
    #[serde(serialize_with = "ser_sig12")]
    pub c_value: f64,
    /// Nelder-Mead iterations used.
    pub iterations: usize,
    /// Whether the simplex met its convergence tolerance within the
    /// iteration budget.
    pub converged: bool,
}

/// Maximize `C` over the two-parameter family from the given start.
///
/// Out-of-domain proposals are rejected with a large penalty, steering the
/// simplex back inside. A result with `converged == false` exhausted
/// `max_iter` without meeting the tolerance.
pub fn optimize_two_param(start: FamilyParams, max_iter: usize) -> Result<TwoParamOptimum> {
    let objective = |x: &[f64]| -> f64 {
        let (theta, phi) = (x[0], x[1]);
        if !theta.is_finite() || theta.abs() > 10.0 {
            return PENALTY;
        }
        match build(theta, phi) {
            Ok(config) => match evaluate_c(&config) {
                Ok(report) => -report.c_value,
                Err(_) => PENALTY,
            },
            Err(_) => PENALTY,
        }
    };
    let outcome = nelder_mead(objective, &[start.theta(), start.phi()], 0.05, max_iter);
    let params = FamilyParams::new(outcome.x[0], outcome.x[1])?;
    Ok(TwoParamOptimum {
        params,
        c_value: -outcome.fx,
        iterations: outcome.iterations,
        converged: outcome.converged,
    })
}

/// Build a pentagon configuration from the four gauge-fixed angles
/// `[state tilt, a_2 fan, a_4 fan, a_1 position]`:
///
/// ```text
/// psi = (sin x0, cos x0, 0)         a_3 = (1, 0, 0)
/// a_2 = (0, cos x1, -sin x1)        a_4 = (0, cos x2, sin x2)
/// a_1 = cos x3 · e_x + sin x3 · (0, sin x1, cos x1)
/// a_5 = (a_4 × a_1) / |a_4 × a_1|
/// ```
///
/// Every neighbor orthogonality holds by construction; the build fails
/// only when `a_4` and `a_1` become parallel and `a_5` degenerates.
pub fn pentagon_from_angles(angles: &[f64; 4]) -> Result<PentagonConfig> {
    for (k, a) in angles.iter().enumerate() {
        if !a.is_finite() {
            return Err(Error::ParameterOutOfDomain {
                name: ["x0", "x1", "x2", "x3"][k],
                value: *a,
                domain: "finite reals",
            });
        }
    }
    let [x0, x1, x2, x3] = *angles;
    let psi = PureState::real([x0.sin(), x0.cos(), 0.0])?;
    let a2 = [0.0, x1.cos(), -x1.sin()];
    let a3 = [1.0, 0.0, 0.0];
    let a4 = [0.0, x2.cos(), x2.sin()];
    let a1 = [x3.cos(), x3.sin() * x1.sin(), x3.sin() * x1.cos()];
    let a5 = [
        a4[1] * a1[2] - a4[2] * a1[1],
        a4[2] * a1[0] - a4[0] * a1[2],
        a4[0] * a1[1] - a4[1] * a1[0],
    ];
    let norm = (a5[0] * a5[0] + a5[1] * a5[1] + a5[2] * a5[2]).sqrt();
    if norm < 1e-12 {
        return Err(Error::DegenerateConfiguration {
            reason: "a_4 and a_1 are parallel; a_5 is undefined".into(),
        });
    }
    PentagonConfig::new(
        psi,
        [
            Projector::real(a1)?,
            Projector::real(a2)?,
            Projector::real(a3)?,
            Projector::real(a4)?,
            Projector::normalized([a5[0].into(), a5[1].into(), a5[2].into()])?,
        ],
    )
}

/// Result of [`optimize_general`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeneralOptimum {
    /// The best gauge angles found.
    pub angles: [f64; 4],
    /// `C` at the best configuration.
    #[serde(serialize_with = "ser_sig12")]
    pub c_value: f64,
    /// Pentagram evaluation at the best configuration.
    pub kcbs: KcbsReport,
    /// Residuals of the three optimum symmetry relations.
    #[serde(serialize_with = "ser_sig12_arr")]
    pub symmetry_residuals: [f64; 3],
    /// The best configuration itself.
    pub config: PentagonConfig,
    /// Number of restarts performed.
    pub restarts: usize,
    /// Iterations used by the winning restart.
    pub iterations: usize,
    /// Whether the winning restart converged.
    pub converged: bool,
}

/// Multi-start maximization of `C` over all real pentagon configurations.
///
/// Each restart draws its four starting angles uniformly from `[0, 2π)`
/// using a sub-seed derived from `seed` and the restart index, then runs
/// Nelder-Mead; restarts execute in parallel and the best result (ties to
/// the lowest restart index) wins. The winner's configuration, pentagram
/// value, and symmetry residuals are reported together.
pub fn optimize_general(restarts: usize, seed: u64, max_iter: usize) -> Result<GeneralOptimum> {
    use rand::{Rng, SeedableRng};

    if restarts == 0 {
        return Err(Error::ParameterOutOfDomain {
            name: "restarts",
            value: 0.0,
            domain: "positive integers",
        });
    }
    let objective = |x: &[f64]| -> f64 {
        let angles = [x[0], x[1], x[2], x[3]];
        match pentagon_from_angles(&angles) {
            Ok(config) => match evaluate_c(&config) {
                Ok(report) => -report.c_value,
                Err(_) => PENALTY,
            },
            Err(_) => PENALTY,
        }
    };
    let runs = par::map_indexed(restarts, |r| {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(par::sub_seed(seed, r as u64));
        let x0: Vec<f64> = (0..4)
            .map(|_| rng.random::<f64>() * 2.0 * std::f64::consts::PI)
            .collect();
        nelder_mead(objective, &x0, 0.3, max_iter)
    });
    let best = runs
        .into_iter()
        .reduce(|best, run| if run.fx < best.fx { run } else { best })
        .expect("at least one restart");

    let angles = [best.x[0], best.x[1], best.x[2], best.x[3]];
    let config = pentagon_from_angles(&angles)?;
    let report = evaluate_c(&config)?;
    Ok(GeneralOptimum {
        angles,
        c_value: report.c_value,
        kcbs: kcbs_value(&config),
        symmetry_residuals: symmetry_residuals(&config),
        config,
        restarts,
        iterations: best.iterations,
        converged: best.converged,
    })
}
