//! Qutrit states, rank-1 projectors, and pentagon measurement geometry.
//!
//! A measurement `A_i` is the dichotomic observable `A_i = |a_i><a_i|` for a
//! unit vector `|a_i>`; outcome 1 fires with Born probability
//! `p(A_i = 1) = |<a_i|psi>|^2`. Two such observables are jointly measurable
//! exactly when their vectors are orthogonal, and then the pair statistics
//! are exclusive: `p(1,1) = 0`, `p(1,0) = |<a|psi>|^2`, `p(0,1) = |<b|psi>|^2`.
//!
//! A [`PentagonConfig`] is a five-cycle of such observables
//! (`a_i ⟂ a_{i+1}`, indices mod 5) together with the system state. Two
//! concrete constructions are provided: the one-parameter-pair family
//! [`build_pentagon_family`] that maximizes the entropic quantity `C`, and
//! the symmetric pentagram [`build_symmetric_pentagram`] that maximizes the
//! pentagram sum `Σ p(A_i = 1)`.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::dist::PairTable;
use crate::error::{Error, Result};

/// Unit-norm tolerance for states and projector directions.
pub const NORM_TOL: f64 = 1e-12;

/// Orthogonality tolerance for jointly measurable pairs.
pub const ORTH_TOL: f64 = 1e-9;

/// Default tolerance for the three symmetry relations of an optimal
/// configuration (see [`symmetry_residuals`]).
pub const SYMMETRY_TOL: f64 = 1e-6;

/// Complex amplitude triple backing states and projector directions.
pub type Vec3 = [Complex64; 3];

/// Hermitian inner product `<u|v> = Σ_i conj(u_i) v_i`.
pub fn inner(u: &Vec3, v: &Vec3) -> Complex64 {
    u[0].conj() * v[0] + u[1].conj() * v[1] + u[2].conj() * v[2]
}

/// Euclidean norm `sqrt(<v|v>)`.
pub fn norm(v: &Vec3) -> f64 {
    (v[0].norm_sqr() + v[1].norm_sqr() + v[2].norm_sqr()).sqrt()
}

/// Conjugated cross product `w_i = ε_ijk conj(u_j) conj(v_k)`.
///
/// Unlike the plain cross product, this is Hermitian-orthogonal to both
/// inputs: `<u|w> = <v|w> = 0` for arbitrary complex `u`, `v` (the plain
/// cross product only guarantees that for real vectors). The result is not
/// normalized; it vanishes iff `u` and `v` are linearly dependent.
pub fn conj_cross(u: &Vec3, v: &Vec3) -> Vec3 {
    let (u, v) = (
        [u[0].conj(), u[1].conj(), u[2].conj()],
        [v[0].conj(), v[1].conj(), v[2].conj()],
    );
    [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ]
}

fn vec3_from_pairs(p: [[f64; 2]; 3]) -> Vec3 {
    [
        Complex64::new(p[0][0], p[0][1]),
        Complex64::new(p[1][0], p[1][1]),
        Complex64::new(p[2][0], p[2][1]),
    ]
}

fn vec3_to_pairs(v: &Vec3) -> [[f64; 2]; 3] {
    [[v[0].re, v[0].im], [v[1].re, v[1].im], [v[2].re, v[2].im]]
}

fn check_unit(v: &Vec3) -> Result<()> {
    let deviation = (norm(v) - 1.0).abs();
    if deviation > NORM_TOL {
        return Err(Error::NotNormalized {
            deviation,
            tolerance: NORM_TOL,
        });
    }
    Ok(())
}

fn rescale_unit(v: &Vec3) -> Result<Vec3> {
    let n = norm(v);
    if n < 1e-12 {
        return Err(Error::DegenerateConfiguration {
            reason: "cannot normalize a (near-)zero vector".into(),
        });
    }
    Ok([v[0] / n, v[1] / n, v[2] / n])
}

/// A pure qutrit state: a unit vector of three complex amplitudes.
///
/// Serialized as `[[re, im], [re, im], [re, im]]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[[f64; 2]; 3]", into = "[[f64; 2]; 3]")]
pub struct PureState {
    amplitudes: Vec3,
}

impl PureState {
    /// Wrap an amplitude triple, requiring unit norm within [`NORM_TOL`].
    pub fn new(amplitudes: Vec3) -> Result<Self> {
        check_unit(&amplitudes)?;
        Ok(Self { amplitudes })
    }

    /// Wrap an amplitude triple after rescaling it to unit norm.
    pub fn normalized(amplitudes: Vec3) -> Result<Self> {
        Ok(Self {
            amplitudes: rescale_unit(&amplitudes)?,
        })
    }

    /// Build a real state vector, requiring unit norm within [`NORM_TOL`].
    pub fn real(v: [f64; 3]) -> Result<Self> {
        Self::new([v[0].into(), v[1].into(), v[2].into()])
    }

    /// The amplitude triple.
    pub fn amplitudes(&self) -> &Vec3 {
        &self.amplitudes
    }
}

impl TryFrom<[[f64; 2]; 3]> for PureState {
    type Error = Error;

    fn try_from(p: [[f64; 2]; 3]) -> Result<Self> {
        Self::new(vec3_from_pairs(p))
    }
}

impl From<PureState> for [[f64; 2]; 3] {
    fn from(s: PureState) -> Self {
        vec3_to_pairs(&s.amplitudes)
    }
}

/// A rank-1 projector `|a><a|`, stored as its unit direction vector.
///
/// The direction is physically meaningful only up to a global phase; use
/// [`Projector::phase_eq`] to compare projectors, not `==`.
/// Serialized as `[[re, im], [re, im], [re, im]]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[[f64; 2]; 3]", into = "[[f64; 2]; 3]")]
pub struct Projector {
    direction: Vec3,
}

impl Projector {
    /// Wrap a direction, requiring unit norm within [`NORM_TOL`].
    pub fn new(direction: Vec3) -> Result<Self> {
        check_unit(&direction)?;
        Ok(Self { direction })
    }

    /// Wrap a direction after rescaling it to unit norm.
    pub fn normalized(direction: Vec3) -> Result<Self> {
        Ok(Self {
            direction: rescale_unit(&direction)?,
        })
    }

    /// Build a real direction, requiring unit norm within [`NORM_TOL`].
    pub fn real(v: [f64; 3]) -> Result<Self> {
        Self::new([v[0].into(), v[1].into(), v[2].into()])
    }

    /// The unit direction vector.
    pub fn direction(&self) -> &Vec3 {
        &self.direction
    }

    /// Whether two projectors are equal as physical observables, i.e. their
    /// directions agree up to a global phase: `1 - |<a|b>| <= tol`.
    pub fn phase_eq(&self, other: &Self, tol: f64) -> bool {
        1.0 - inner(&self.direction, &other.direction).norm() <= tol
    }
}

impl TryFrom<[[f64; 2]; 3]> for Projector {
    type Error = Error;

    fn try_from(p: [[f64; 2]; 3]) -> Result<Self> {
        Self::new(vec3_from_pairs(p))
    }
}

impl From<Projector> for [[f64; 2]; 3] {
    fn from(p: Projector) -> Self {
        vec3_to_pairs(&p.direction)
    }
}

/// Born probability of outcome 1: `p(A = 1) = |<a|psi>|^2`.
pub fn outcome_probability(state: &PureState, projector: &Projector) -> f64 {
    inner(projector.direction(), state.amplitudes()).norm_sqr()
}

/// Joint outcome distribution of two jointly measurable (orthogonal)
/// observables, with the first table index belonging to `a`.
///
/// Orthogonality makes the pair exclusive, so the table is
/// `p(1,1) = 0`, `p(1,0) = |<a|psi>|^2`, `p(0,1) = |<b|psi>|^2`,
/// `p(0,0) = 1 - p(1,0) - p(0,1)`.
/// Fails with [`Error::NotOrthogonal`] if `|<a|b>|` exceeds [`ORTH_TOL`].
pub fn pair_joint_distribution(
    state: &PureState,
    a: &Projector,
    b: &Projector,
) -> Result<PairTable> {
    let overlap = inner(a.direction(), b.direction()).norm();
    if overlap > ORTH_TOL {
        return Err(Error::NotOrthogonal {
            first: 0,
            second: 1,
            overlap,
            tolerance: ORTH_TOL,
        });
    }
    let p10 = outcome_probability(state, a);
    let p01 = outcome_probability(state, b);
    PairTable::from_cells(1.0 - p10 - p01, p01, p10, 0.0)
}

/// A five-cycle of pairwise-orthogonal-neighbor observables plus the state.
///
/// Projector `i` must be orthogonal to projector `(i + 1) mod 5` within
/// [`ORTH_TOL`]; nothing is assumed about non-neighbors. Indices are
/// 0-based, so the literature's `A_1..A_5` are `projectors()[0..=4]`.
///
/// Serialized as `{"state": [[re,im]; 3], "projectors": [[[re,im]; 3]; 5]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PentagonRepr", into = "PentagonRepr")]
pub struct PentagonConfig {
    state: PureState,
    projectors: [Projector; 5],
}

#[derive(Serialize, Deserialize)]
struct PentagonRepr {
    state: [[f64; 2]; 3],
    projectors: [[[f64; 2]; 3]; 5],
}

/// The five jointly measurable pairs of the pentagon, ordered as the four
/// chain edges `(i, i+1)` followed by the closing edge `(0, 4)`. The pair
/// orientation matters: entropic quantities condition the first member on
/// the second for chain edges, and the closing edge is oriented `(A_1, A_5)`.
pub const PENTAGON_EDGES: [(usize, usize); 5] = [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)];

impl PentagonConfig {
    /// Assemble a configuration, validating all five neighbor
    /// orthogonalities within [`ORTH_TOL`].
    pub fn new(state: PureState, projectors: [Projector; 5]) -> Result<Self> {
        for i in 0..5 {
            let j = (i + 1) % 5;
            let overlap = inner(projectors[i].direction(), projectors[j].direction()).norm();
            if overlap > ORTH_TOL {
                return Err(Error::NotOrthogonal {
                    first: i,
                    second: j,
                    overlap,
                    tolerance: ORTH_TOL,
                });
            }
        }
        Ok(Self { state, projectors })
    }

    /// The system state.
    pub fn state(&self) -> &PureState {
        &self.state
    }

    /// All five projectors, 0-indexed.
    pub fn projectors(&self) -> &[Projector; 5] {
        &self.projectors
    }

    /// Born-rule joint distribution of edge pair `(i, j)` of
    /// [`PENTAGON_EDGES`], oriented with the first table index on `i`.
    pub fn edge_distribution(&self, edge: (usize, usize)) -> Result<PairTable> {
        let (i, j) = edge;
        if i >= 5 || j >= 5 {
            return Err(Error::UnknownVariable {
                variable: i.max(j),
                count: 5,
            });
        }
        pair_joint_distribution(&self.state, &self.projectors[i], &self.projectors[j]).map_err(
            |e| match e {
                Error::NotOrthogonal {
                    overlap, tolerance, ..
                } => Error::NotOrthogonal {
                    first: i,
                    second: j,
                    overlap,
                    tolerance,
                },
                other => other,
            },
        )
    }

    /// The five edge distributions in [`PENTAGON_EDGES`] order.
    pub fn edge_distributions(&self) -> Result<[PairTable; 5]> {
        let mut tables = [PairTable::from_cells(1.0, 0.0, 0.0, 0.0)?; 5];
        for (k, &edge) in PENTAGON_EDGES.iter().enumerate() {
            tables[k] = self.edge_distribution(edge)?;
        }
        Ok(tables)
    }
}

impl TryFrom<PentagonRepr> for PentagonConfig {
    type Error = Error;

    fn try_from(r: PentagonRepr) -> Result<Self> {
        let state = PureState::new(vec3_from_pairs(r.state))?;
        let mut projectors = [Projector::real([1.0, 0.0, 0.0])?; 5];
        for (i, p) in r.projectors.iter().enumerate() {
            projectors[i] = Projector::new(vec3_from_pairs(*p))?;
        }
        Self::new(state, projectors)
    }
}

impl From<PentagonConfig> for PentagonRepr {
    fn from(c: PentagonConfig) -> Self {
        PentagonRepr {
            state: vec3_to_pairs(&c.state.amplitudes),
            projectors: [
                vec3_to_pairs(&c.projectors[0].direction),
                vec3_to_pairs(&c.projectors[1].direction),
                vec3_to_pairs(&c.projectors[2].direction),
                vec3_to_pairs(&c.projectors[3].direction),
                vec3_to_pairs(&c.projectors[4].direction),
            ],
        }
    }
}

/// Parameters `(theta, phi)` of the two-parameter pentagon family.
///
/// `theta` tilts the state inside the x-y plane; `phi` opens the
/// measurement fan. `phi` must lie in `[0, pi/4)`: at `phi = pi/4` the
/// directions `a_1` and `a_4` become parallel and the closing projector
/// `a_5` degenerates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct FamilyParams {
    theta: f64,
    phi: f64,
}

#[derive(Serialize, Deserialize)]
struct RawParams {
    theta: f64,
    phi: f64,
}

impl FamilyParams {
    /// Validate `theta` (finite) and `phi` (in `[0, pi/4)`).
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !theta.is_finite() {
            return Err(Error::ParameterOutOfDomain {
                name: "theta",
                value: theta,
                domain: "finite reals",
            });
        }
        if !(0.0..std::f64::consts::FRAC_PI_4).contains(&phi) {
            return Err(Error::ParameterOutOfDomain {
                name: "phi",
                value: phi,
                domain: "[0, pi/4)",
            });
        }
        Ok(Self { theta, phi })
    }

    /// State angle.
    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Measurement-fan angle.
    pub fn phi(&self) -> f64 {
        self.phi
    }
}

impl TryFrom<RawParams> for FamilyParams {
    type Error = Error;

    fn try_from(r: RawParams) -> Result<Self> {
        Self::new(r.theta, r.phi)
    }
}

impl From<FamilyParams> for RawParams {
    fn from(p: FamilyParams) -> Self {
        RawParams {
            theta: p.theta,
            phi: p.phi,
        }
    }
}

/// Build the two-parameter pentagon family
///
/// ```text
/// psi = (sin θ, cos θ, 0)
/// a_1 = (sqrt(cos 2φ) / (sqrt2 cos φ), tan φ / sqrt2, 1/sqrt2)
/// a_2 = (0, cos φ, -sin φ)
/// a_3 = (1, 0, 0)
/// a_4 = (0, cos φ, sin φ)
/// a_5 = (a_1 × a_4) / |a_1 × a_4|
/// ```
///
/// All vectors are real and the five-cycle orthogonality holds for every
/// parameter choice in the domain.
pub fn build_pentagon_family(params: &FamilyParams) -> Result<PentagonConfig> {
    let (theta, phi) = (params.theta(), params.phi());
    let (sp, cp) = phi.sin_cos();
    let c2 = (2.0 * phi).cos();
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;

    let psi = PureState::real([theta.sin(), theta.cos(), 0.0])?;
    let a1 = [
        c2.sqrt() / (std::f64::consts::SQRT_2 * cp),
        sp / (std::f64::consts::SQRT_2 * cp),
        inv_sqrt2,
    ];
    let a2 = [0.0, cp, -sp];
    let a3 = [1.0, 0.0, 0.0];
    let a4 = [0.0, cp, sp];
    // Real cross product a_1 × a_4; both inputs are real so this equals the
    // conjugated cross product and is orthogonal to both.
    let a5 = [
        a1[1] * a4[2] - a1[2] * a4[1],
        a1[2] * a4[0] - a1[0] * a4[2],
        a1[0] * a4[1] - a1[1] * a4[0],
    ];
    let a5_norm = (a5[0] * a5[0] + a5[1] * a5[1] + a5[2] * a5[2]).sqrt();
    if a5_norm < 1e-12 {
        return Err(Error::DegenerateConfiguration {
            reason: format!("a_1 and a_4 are parallel at phi = {phi}; a_5 is undefined"),
        });
    }

    PentagonConfig::new(
        psi,
        [
            Projector::normalized([a1[0].into(), a1[1].into(), a1[2].into()])?,
            Projector::real(a2)?,
            Projector::real(a3)?,
            Projector::real(a4)?,
            Projector::normalized([a5[0].into(), a5[1].into(), a5[2].into()])?,
        ],
    )
}

/// Build the symmetric pentagram configuration
///
/// ```text
/// psi = (0, 0, 1)
/// a_j = (sin α cos(4πj/5), sin α sin(4πj/5), cos α),   j = 1..5
/// cos²α = cos(π/5) / (1 + cos(π/5)) = 1/√5
/// ```
///
/// The `4π/5` step makes consecutive vectors orthogonal (the pentagram
/// ordering of the five directions), and the polar angle is chosen so the
/// pentagram sum reaches its quantum maximum `Σ p(A_j = 1) = √5`.
pub fn build_symmetric_pentagram() -> PentagonConfig {
    let cos_alpha = 5.0_f64.powf(-0.25);
    let sin_alpha = (1.0 - 1.0 / 5.0_f64.sqrt()).sqrt();
    let psi = PureState::real([0.0, 0.0, 1.0]).expect("unit basis vector");
    let mut projectors = Vec::with_capacity(5);
    for j in 1..=5 {
        let azimuth = 4.0 * std::f64::consts::PI * (j as f64) / 5.0;
        projectors.push(
            Projector::normalized([
                (sin_alpha * azimuth.cos()).into(),
                (sin_alpha * azimuth.sin()).into(),
                cos_alpha.into(),
            ])
            .expect("non-zero direction"),
        );
    }
    let projectors: [Projector; 5] = projectors.try_into().expect("exactly five directions");
    PentagonConfig::new(psi, projectors).expect("analytic orthogonality of the pentagram")
}

/// Greedily complete a unit vector to an orthonormal basis whose first
/// element is that vector, picking at each step the canonical basis vector
/// with the largest residual (deterministic and well-conditioned).
pub fn complete_basis(first: &Vec3) -> [Vec3; 3] {
    let canonical: [Vec3; 3] = [
        [1.0.into(), 0.0.into(), 0.0.into()],
        [0.0.into(), 1.0.into(), 0.0.into()],
        [0.0.into(), 0.0.into(), 1.0.into()],
    ];
    let mut basis = vec![*first];
    while basis.len() < 3 {
        let mut best: Option<(f64, Vec3)> = None;
        for e in &canonical {
            let mut w = *e;
            // Two orthogonalization passes for numerical robustness.
            for _ in 0..2 {
                for b in &basis {
                    let c = inner(b, &w);
                    for k in 0..3 {
                        w[k] -= c * b[k];
                    }
                }
            }
            let n = norm(&w);
            if best.as_ref().is_none_or(|(bn, _)| n > *bn) {
                best = Some((n, w));
            }
        }
        let (n, w) = best.expect("canonical set is non-empty");
        basis.push([w[0] / n, w[1] / n, w[2] / n]);
    }
    [basis[0], basis[1], basis[2]]
}

/// Rigidly rotate a configuration so its state becomes `target`.
///
/// Builds orthonormal bases extending the current and target states,
/// forms the unitary `U = Σ_k |b'_k><b_k|` mapping one onto the other, and
/// applies it to the state and all five projectors. All pairwise overlaps —
/// and hence every probability, entropy, and pentagram value — are
/// preserved.
pub fn rotate_to_state(config: &PentagonConfig, target: &PureState) -> Result<PentagonConfig> {
    let from = complete_basis(config.state().amplitudes());
    let to = complete_basis(target.amplitudes());
    let apply = |v: &Vec3| -> Vec3 {
        let mut out: Vec3 = [0.0.into(), 0.0.into(), 0.0.into()];
        for k in 0..3 {
            // U v = Σ_k |to_k> <from_k|v>
            let c = inner(&from[k], v);
            for i in 0..3 {
                out[i] += c * to[k][i];
            }
        }
        out
    };
    let state = PureState::normalized(apply(config.state().amplitudes()))?;
    let mut projectors = *config.projectors();
    for p in &mut projectors {
        *p = Projector::normalized(apply(p.direction()))?;
    }
    PentagonConfig::new(state, projectors)
}

/// Residuals of the three symmetry relations satisfied by every optimum of
/// the entropic quantity `C` over pentagon configurations:
///
/// 1. `|<a_5|psi>| = |<a_1|psi>|`
/// 2. `|<a_5|a_2>| = |<a_1|a_4>|`
/// 3. `|<a_5|a_3>| = |<a_1|a_3>|`
///
/// Returns the absolute differences in that order.
pub fn symmetry_residuals(config: &PentagonConfig) -> [f64; 3] {
    let psi = config.state().amplitudes();
    let a = |i: usize| config.projectors()[i].direction();
    let m = |u: &Vec3, v: &Vec3| inner(u, v).norm();
    [
        (m(a(4), psi) - m(a(0), psi)).abs(),
        (m(a(4), a(1)) - m(a(0), a(3))).abs(),
        (m(a(4), a(2)) - m(a(0), a(2))).abs(),
    ]
}

/// Whether all three optimum symmetry relations hold within `tol`
/// (see [`symmetry_residuals`]; use [`SYMMETRY_TOL`] for the standard
/// check).
pub fn check_symmetries(config: &PentagonConfig, tol: f64) -> bool {
    symmetry_residuals(config).iter().all(|r| *r <= tol)
}

/// The unique direction orthogonal to two given ones — the four-cycle
/// collapse.
///
/// In a qutrit, the orthogonal complement of two linearly independent
/// directions is one-dimensional. Consequently, in any chordless four-cycle
/// of observables `X ⟂ A ⟂ Y ⟂ B ⟂ X`, both `A` and `B` must equal this
/// direction up to phase — the cycle collapses (`A = B` as observables), and
/// every entropic test built on a four-cycle (or any even cycle, by
/// iterating the argument) trivializes.
///
/// Fails with [`Error::DegenerateConfiguration`] when the inputs are
/// (nearly) parallel.
pub fn four_cycle_collapse(x: &Projector, y: &Projector) -> Result<Projector> {
    let w = conj_cross(x.direction(), y.direction());
    if norm(&w) < 1e-9 {
        return Err(Error::DegenerateConfiguration {
            reason: "the two directions are (nearly) parallel; their common orthogonal \
                     complement is not unique"
                .into(),
        });
    }
    Projector::normalized(w)
}

/// Whether three directions are linearly dependent — coplanar, for real
/// vectors — within `tol`: `|det[u, v, w]| <= tol`.
///
/// Complements [`four_cycle_collapse`]: the collapse argument applies
/// whenever the two off-cycle neighbors of a pair span only a plane, which
/// is exactly the non-degenerate case here.
pub fn is_coplanar(u: &Projector, v: &Projector, w: &Projector, tol: f64) -> bool {
    let (u, v, w) = (u.direction(), v.direction(), w.direction());
    let det = u[0] * (v[1] * w[2] - v[2] * w[1]) - u[1] * (v[0] * w[2] - v[2] * w[0])
        + u[2] * (v[0] * w[1] - v[1] * w[0]);
    det.norm() <= tol
}

/// Draw a Haar-random pure qutrit state (six i.i.d. standard normal
/// amplitude components, normalized).
pub fn random_state<R: Rng + ?Sized>(rng: &mut R) -> PureState {
    loop {
        let mut v: Vec3 = [0.0.into(), 0.0.into(), 0.0.into()];
        for a in &mut v {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            *a = Complex64::new(re, im);
        }
        if let Ok(state) = PureState::normalized(v) {
            return state;
        }
    }
}
