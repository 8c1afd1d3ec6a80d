//! Closed-form analytic layer.
//!
//! Everything here is exact algebra on the potential `Q = u1^3/3 + u1 u2^2`:
//! flux and characteristic speeds, the Hugoniot locus (three straight lines),
//! the energy function `Z` of the profile ODE and its four critical points,
//! evolutionary (Lax) classification of jumps, the saddle-connection speeds,
//! and the structure-existence thresholds for slow and fast shocks.

use thiserror::Error;

use crate::state::{State, Viscosity};

/// Residual tolerance for membership in the Hugoniot locus.
///
/// States are assumed O(1-10); closed-form inputs keep residuals near
/// machine precision, so 1e-8 separates locus points from everything else
/// by many orders of magnitude.
pub const ON_LOCUS_TOL: f64 = 1e-8;

/// Tolerance below which eigenvalues/determinants count as zero.
pub const DEGENERACY_TOL: f64 = 1e-9;

/// Half-width, in the Hugoniot line parameter `t`, of the band around the
/// structure thresholds in which [`structure_exists`] answers `Boundary`.
pub const BOUNDARY_BAND: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("states are not connected by the jump condition (residual {residual:.3e})")]
    NotOnLocus { residual: f64 },
    #[error("left and right states coincide")]
    IdenticalStates,
    #[error("saddle connections require 0 < mu2 < mu1")]
    NoUndercompressive,
    #[error("saddle pairs for this family require 0 < mu2 < mu1")]
    NoConnection,
    #[error("state ahead lies on the degenerate axis u2 = 0")]
    DegenerateAxis,
    #[error("candidate is not a compressive shock (classified {0:?})")]
    NotAShock(ShockKind),
}

/// Flux `dQ/du = (u1^2 + u2^2, 2 u1 u2)`.
pub fn flux(u: State) -> State {
    State::new(u.u1 * u.u1 + u.u2 * u.u2, 2.0 * u.u1 * u.u2)
}

/// Characteristic structure of the flux Jacobian at a point.
#[derive(Debug, Clone, Copy)]
pub struct CharSpeeds {
    /// Slow speed `c1 = 2 u1 - 2 |u2|`.
    pub c1: f64,
    /// Fast speed `c2 = 2 u1 + 2 |u2|`.
    pub c2: f64,
    /// Unit eigenvector for `c1`.
    pub beta1: State,
    /// Unit eigenvector for `c2`.
    pub beta2: State,
    /// Set on the axis `u2 = 0`, where the speeds coincide and strict
    /// hyperbolicity is lost.
    pub coincident: bool,
}

/// Eigen-decomposition of the flux Jacobian `2 [[u1, u2], [u2, u1]]`.
///
/// The eigenvalues are `2 u1 -/+ 2 |u2|` with eigenvectors `(1, -1)` and
/// `(1, 1)` for `u2 > 0`, swapped for `u2 < 0`.
pub fn characteristic_speeds(u: State) -> CharSpeeds {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let down = State::new(s, -s);
    let up = State::new(s, s);
    let (beta1, beta2) = if u.u2 >= 0.0 { (down, up) } else { (up, down) };
    CharSpeeds {
        c1: 2.0 * u.u1 - 2.0 * u.u2.abs(),
        c2: 2.0 * u.u1 + 2.0 * u.u2.abs(),
        beta1,
        beta2,
        coincident: u.u2 == 0.0,
    }
}

/// One straight-line component of the Hugoniot locus of a fixed state ahead.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchId {
    /// `u2 = -u2p`, the line of the conjugate equilibria; carries the
    /// undercompressive and overcompressive candidates.
    Horizontal,
    /// `u2 = u1 - u1p + u2p`; carries the fast shocks of the diagonal family.
    Diagonal,
    /// `u2 = -u1 + u1p + u2p`; carries slow shocks and the fast shocks of
    /// the antidiagonal family.
    Antidiagonal,
}

/// A Hugoniot branch: a line through `point` along `direction`, with the
/// affine jump-speed map `u1 -> W` along it.
#[derive(Debug, Clone, Copy)]
pub struct HugoniotBranch {
    pub id: BranchId,
    pub point: State,
    pub direction: State,
    /// `W = speed_slope * u1 + speed_intercept` for a point on this line.
    pub speed_slope: f64,
    pub speed_intercept: f64,
}

impl HugoniotBranch {
    /// The point on this branch with first coordinate `u1`.
    pub fn state_at(&self, u1: f64) -> State {
        let t = u1 - self.point.u1;
        State::new(u1, self.point.u2 + t * self.direction.u2 / self.direction.u1)
    }

    pub fn speed_at(&self, u1: f64) -> f64 {
        self.speed_slope * u1 + self.speed_intercept
    }
}

/// The three lines of the Hugoniot locus of `u_plus`:
///
/// ```text
/// horizontal:    u2 = -u2p,              W = u1 + u1p,
/// diagonal:      u2 = u1 - u1p + u2p,    W = 2 (u1 + u2p),
/// antidiagonal:  u2 = -u1 + u1p + u2p,   W = 2 (u1 - u2p).
/// ```
pub fn hugoniot_branches(u_plus: State) -> [HugoniotBranch; 3] {
    [
        HugoniotBranch {
            id: BranchId::Horizontal,
            point: State::new(u_plus.u1, -u_plus.u2),
            direction: State::new(1.0, 0.0),
            speed_slope: 1.0,
            speed_intercept: u_plus.u1,
        },
        HugoniotBranch {
            id: BranchId::Diagonal,
            point: u_plus,
            direction: State::new(1.0, 1.0),
            speed_slope: 2.0,
            speed_intercept: 2.0 * u_plus.u2,
        },
        HugoniotBranch {
            id: BranchId::Antidiagonal,
            point: u_plus,
            direction: State::new(1.0, -1.0),
            speed_slope: 2.0,
            speed_intercept: -2.0 * u_plus.u2,
        },
    ]
}

/// Triple product whose zero set is exactly the Hugoniot locus of `u_plus`:
/// `(u2 + u2p)(u2 - u1 + u1p - u2p)(u2 + u1 - u1p - u2p)`.
pub fn hugoniot_product(u: State, u_plus: State) -> f64 {
    (u.u2 + u_plus.u2)
        * (u.u2 - u.u1 + u_plus.u1 - u_plus.u2)
        * (u.u2 + u.u1 - u_plus.u1 - u_plus.u2)
}

/// A jump candidate: state behind (`u_minus`), state ahead (`u_plus`) and
/// jump speed `w`.
#[derive(Debug, Clone, Copy)]
pub struct ShockCandidate {
    pub u_minus: State,
    pub u_plus: State,
    pub w: f64,
}

impl ShockCandidate {
    pub fn new(u_minus: State, u_plus: State, w: f64) -> Self {
        ShockCandidate { u_minus, u_plus, w }
    }

    pub fn mirror(self) -> Self {
        ShockCandidate {
            u_minus: self.u_minus.mirror(),
            u_plus: self.u_plus.mirror(),
            w: self.w,
        }
    }
}

/// Euclidean norm of the jump-condition residual
/// `W (u+ - u-) - (dQ/du(u+) - dQ/du(u-))`.
pub fn rh_residual(c: &ShockCandidate) -> f64 {
    let du = c.u_plus - c.u_minus;
    let df = flux(c.u_plus) - flux(c.u_minus);
    (du * c.w - df).norm()
}

/// Jump speed solving both scalar jump conditions, when they are consistent.
///
/// The overdetermined 2x1 system is solved by least squares (avoids division
/// by a small jump component) and accepted when the residual at the
/// minimizer stays below [`ON_LOCUS_TOL`] times the data scale.
pub fn shock_speed(u_minus: State, u_plus: State) -> Result<f64, ModelError> {
    let du = u_plus - u_minus;
    let df = flux(u_plus) - flux(u_minus);
    let den = du.dot(du);
    if den == 0.0 {
        return Err(ModelError::IdenticalStates);
    }
    let w = du.dot(df) / den;
    let residual = rh_residual(&ShockCandidate::new(u_minus, u_plus, w));
    let scale = 1.0_f64.max(du.norm()).max(df.norm());
    if residual <= ON_LOCUS_TOL * scale {
        Ok(w)
    } else {
        Err(ModelError::NotOnLocus { residual })
    }
}

/// Constants `D = (D1, D2)` making `u_plus` an equilibrium of the profile
/// ODE: `D1 = u1p^2 + u2p^2 - W u1p`, `D2 = 2 u1p u2p - W u2p`.
pub fn coefficients_d(u_plus: State, w: f64) -> (f64, f64) {
    (
        u_plus.u1 * u_plus.u1 + u_plus.u2 * u_plus.u2 - w * u_plus.u1,
        2.0 * u_plus.u1 * u_plus.u2 - w * u_plus.u2,
    )
}

/// Energy function of the profile ODE,
/// `Z = -Q + W (u1^2 + u2^2)/2 + D1 u1 + D2 u2`,
/// with `D` fixed by `(u_plus, w)`. `Z` decreases along profiles.
pub fn energy_z(u: State, u_plus: State, w: f64) -> f64 {
    let (d1, d2) = coefficients_d(u_plus, w);
    let q = u.u1 * u.u1 * u.u1 / 3.0 + u.u1 * u.u2 * u.u2;
    -q + 0.5 * w * (u.u1 * u.u1 + u.u2 * u.u2) + d1 * u.u1 + d2 * u.u2
}

/// Gradient of `Z` at `u`; vanishes exactly at the four critical points.
pub fn grad_z(u: State, u_plus: State, w: f64) -> State {
    let (d1, d2) = coefficients_d(u_plus, w);
    State::new(
        -(u.u1 * u.u1) - u.u2 * u.u2 + w * u.u1 + d1,
        -2.0 * u.u1 * u.u2 + w * u.u2 + d2,
    )
}

/// Hessian of `Z` at `u`: `[[W - 2 u1, -2 u2], [-2 u2, W - 2 u1]]`,
/// returned as `(diagonal, off_diagonal)`.
pub fn hess_z(u: State, w: f64) -> (f64, f64) {
    (w - 2.0 * u.u1, -2.0 * u.u2)
}

/// Type of a critical point of `Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZType {
    /// `Z` has a local minimum: an attracting node of the profile ODE.
    Minimum,
    /// `Z` has a local maximum: a repelling node.
    Maximum,
    Saddle,
    /// Hessian determinant vanishes to tolerance (a saddle-node).
    Degenerate,
}

/// A critical point of `Z`, classified.
#[derive(Debug, Clone, Copy)]
pub struct EquilibriumInfo {
    pub location: State,
    pub z_type: ZType,
    /// Hessian of `Z` there, `(diagonal, off_diagonal)`.
    pub hessian: (f64, f64),
}

impl EquilibriumInfo {
    pub fn classify(location: State, w: f64) -> Self {
        let (h, k) = hess_z(location, w);
        let det = h * h - k * k;
        let scale = 1.0_f64.max(h * h + k * k);
        let z_type = if det.abs() <= DEGENERACY_TOL * scale {
            ZType::Degenerate
        } else if det < 0.0 {
            ZType::Saddle
        } else if h > 0.0 {
            ZType::Minimum
        } else {
            ZType::Maximum
        };
        EquilibriumInfo {
            location,
            z_type,
            hessian: (h, k),
        }
    }

    /// Eigenpairs of the profile-ODE linearization `-M^{-1} Hess Z` at this
    /// point, sorted by eigenvalue. Eigenvectors are unit length.
    pub fn ode_eigen(&self, mu: Viscosity) -> [(f64, State); 2] {
        let (h, k) = self.hessian;
        // -M^{-1} H = [[-h/mu1, -k/mu1], [-k/mu2, -h/mu2]]
        let (p, q) = (-h / mu.mu1(), -k / mu.mu1());
        let (r, s) = (-k / mu.mu2(), -h / mu.mu2());
        let half_tr = 0.5 * (p + s);
        let disc = (0.5 * (p - s)).powi(2) + q * r;
        let root = disc.max(0.0).sqrt();
        let l1 = half_tr - root;
        let l2 = half_tr + root;
        let vec_for = |l: f64| -> State {
            let v1 = State::new(q, l - p);
            let v2 = State::new(l - s, r);
            let v = if v1.norm() >= v2.norm() { v1 } else { v2 };
            if v.norm() == 0.0 {
                State::new(1.0, 0.0)
            } else {
                v.normalized()
            }
        };
        [(l1, vec_for(l1)), (l2, vec_for(l2))]
    }
}

/// The four critical points of `Z` for given `(u_plus, W)`, in the order
/// `u_plus`, its horizontal conjugate `(W - u1p, -u2p)`, the antidiagonal
/// partner `(u2p + W/2, u1p - W/2)` and the diagonal partner
/// `(W/2 - u2p, W/2 - u1p)`. Coincident points simply repeat.
pub fn critical_points(u_plus: State, w: f64) -> [EquilibriumInfo; 4] {
    let horizontal = State::new(w - u_plus.u1, -u_plus.u2);
    let antidiag = State::new(u_plus.u2 + 0.5 * w, u_plus.u1 - 0.5 * w);
    let diag = State::new(0.5 * w - u_plus.u2, 0.5 * w - u_plus.u1);
    [
        EquilibriumInfo::classify(u_plus, w),
        EquilibriumInfo::classify(horizontal, w),
        EquilibriumInfo::classify(antidiag, w),
        EquilibriumInfo::classify(diag, w),
    ]
}

/// Evolutionary type of a jump on the Hugoniot locus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShockKind {
    /// `c2+ < W`, `c1- < W < c2-`: one family crosses, the fast one enters.
    FastShock,
    /// `c1+ < W < c2+`, `W < c1-`: the slow family enters.
    SlowShock,
    /// `c1 < W < c2` on both sides; admissible only at the saddle-connection
    /// speed.
    Undercompressive,
    /// `c2+ < W < c1-`: all four characteristics enter.
    Overcompressive,
    /// Some characteristic speed equals `W` to tolerance.
    Degenerate,
    /// No evolutionary sign pattern holds (time-reversed configurations).
    NonEvolutionary,
}

/// Lax classification of an on-locus jump candidate.
#[derive(Debug, Clone, Copy)]
pub struct Classification {
    pub kind: ShockKind,
    /// `[c1- - W, c2- - W, c1+ - W, c2+ - W]`.
    pub lambdas: [f64; 4],
}

/// Classify a jump by the sign pattern of `lambda_j = c_j - W` on both
/// sides. Fails with `NotOnLocus` when the candidate violates the jump
/// condition.
pub fn lax_classify(c: &ShockCandidate) -> Result<Classification, ModelError> {
    let residual = rh_residual(c);
    let scale = 1.0_f64
        .max((c.u_plus - c.u_minus).norm())
        .max((flux(c.u_plus) - flux(c.u_minus)).norm());
    if residual > ON_LOCUS_TOL * scale {
        return Err(ModelError::NotOnLocus { residual });
    }
    let minus = characteristic_speeds(c.u_minus);
    let plus = characteristic_speeds(c.u_plus);
    let lambdas = [
        minus.c1 - c.w,
        minus.c2 - c.w,
        plus.c1 - c.w,
        plus.c2 - c.w,
    ];
    let lam_scale = lambdas
        .iter()
        .fold(1.0_f64.max(c.w.abs()), |acc, l| acc.max((l + c.w).abs()));
    if lambdas.iter().any(|l| l.abs() <= DEGENERACY_TOL * lam_scale) {
        return Ok(Classification {
            kind: ShockKind::Degenerate,
            lambdas,
        });
    }
    let [l1m, l2m, l1p, l2p] = lambdas;
    let kind = if l2p < 0.0 && l1m < 0.0 && l2m > 0.0 {
        ShockKind::FastShock
    } else if l1p < 0.0 && l2p > 0.0 && l1m > 0.0 {
        ShockKind::SlowShock
    } else if l1p < 0.0 && l2p > 0.0 && l1m < 0.0 && l2m > 0.0 {
        ShockKind::Undercompressive
    } else if l2p < 0.0 && l1m > 0.0 {
        ShockKind::Overcompressive
    } else {
        ShockKind::NonEvolutionary
    };
    Ok(Classification { kind, lambdas })
}

/// Speed of the undercompressive shock out of `u_plus`:
/// `W = 2 (u1p + m |u2p|)`, the unique speed at which the two saddle
/// equilibria `u_plus` and its horizontal conjugate are joined by a
/// (rectilinear) heteroclinic, with the orientation that makes the energy
/// decrease toward `u_plus`.
pub fn undercompressive_speed(u_plus: State, mu: Viscosity) -> Result<f64, ModelError> {
    let m = mu.anisotropy().ok_or(ModelError::NoUndercompressive)?;
    if u_plus.u2 == 0.0 {
        return Err(ModelError::DegenerateAxis);
    }
    Ok(2.0 * (u_plus.u1 + m * u_plus.u2.abs()))
}

/// Energy drop `Z(conjugate) - Z(u_plus)` at the undercompressive speed:
/// `4 m |u2p|^3 (1 + m^2/3)`.
pub fn undercompressive_energy_drop(u_plus: State, mu: Viscosity) -> Result<f64, ModelError> {
    let m = mu.anisotropy().ok_or(ModelError::NoUndercompressive)?;
    let a = u_plus.u2.abs();
    Ok(4.0 * m * a * a * a * (1.0 + m * m / 3.0))
}

/// The two speeds at which the antidiagonal and diagonal partner saddles are
/// joined by a heteroclinic: `W/2 = u1p +/- u2p / m`.
pub fn ab_connection_speeds(u_plus: State, mu: Viscosity) -> Result<[f64; 2], ModelError> {
    let m = mu.anisotropy().ok_or(ModelError::NoConnection)?;
    Ok([
        2.0 * (u_plus.u1 + u_plus.u2 / m),
        2.0 * (u_plus.u1 - u_plus.u2 / m),
    ])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StructureVerdict {
    Yes,
    No,
    /// Within [`BOUNDARY_BAND`] of a threshold in the line parameter.
    Boundary,
}

/// Which rule decided a structure verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StructureReason {
    /// `mu1 <= mu2`: every compressive shock has a profile.
    AllStructuredRegime,
    /// Diagonal-family fast shock: has a profile for every viscosity.
    DiagonalFamily,
    /// Slow shock ahead of the slow threshold on the antidiagonal.
    BelowSlowThreshold,
    /// Slow shock past the slow threshold: no profile.
    BeyondSlowThreshold,
    /// Antidiagonal-family fast shock past the fast threshold.
    BeyondFastThreshold,
    /// Antidiagonal-family fast shock between the locus corner and the fast
    /// threshold: no profile.
    BeforeFastThreshold,
    /// Within tolerance of a threshold.
    NearThreshold,
}

#[derive(Debug, Clone, Copy)]
pub struct StructureAnswer {
    pub verdict: StructureVerdict,
    pub reason: StructureReason,
}

/// Does a compressive shock have a viscous profile?
///
/// With `t` the parameter of `u_minus` along the antidiagonal branch
/// (`u_minus = u_plus + t (1, -1)` for `u2p > 0`):
///
/// * slow shocks (`0 < t < 2 u2p`): yes iff `mu1 <= mu2`, or `mu2 < mu1`
///   and `t < (1 + m) u2p`;
/// * fast shocks of the diagonal family: always;
/// * fast shocks of the antidiagonal family (`t > 2 u2p`): yes iff
///   `mu1 <= mu2` or `t > (1 + 1/m) u2p`.
///
/// `Boundary` is returned within [`BOUNDARY_BAND`] of either threshold.
/// Data with `u2p < 0` is handled by reflection.
pub fn structure_exists(
    c: &ShockCandidate,
    mu: Viscosity,
) -> Result<StructureAnswer, ModelError> {
    let class = lax_classify(c)?;
    match class.kind {
        ShockKind::FastShock | ShockKind::SlowShock => {}
        other => return Err(ModelError::NotAShock(other)),
    }
    let c = if c.u_plus.u2 < 0.0 { c.mirror() } else { *c };
    let d = c.u_minus - c.u_plus;

    // Diagonal family: u_minus - u_plus along (1, 1).
    if (d.u1 - d.u2).abs() <= (d.u1 + d.u2).abs() {
        return Ok(StructureAnswer {
            verdict: StructureVerdict::Yes,
            reason: StructureReason::DiagonalFamily,
        });
    }

    // Antidiagonal family: u_minus = u_plus + t (1, -1), t > 0.
    let t = d.u1;
    if mu.all_shocks_structured() {
        return Ok(StructureAnswer {
            verdict: StructureVerdict::Yes,
            reason: StructureReason::AllStructuredRegime,
        });
    }
    let m = mu.anisotropy().expect("mu2 < mu1 here");
    let v = c.u_plus.u2;
    let (threshold, below, above) = match class.kind {
        ShockKind::SlowShock => (
            (1.0 + m) * v,
            StructureReason::BelowSlowThreshold,
            StructureReason::BeyondSlowThreshold,
        ),
        _ => (
            (1.0 + 1.0 / m) * v,
            StructureReason::BeforeFastThreshold,
            StructureReason::BeyondFastThreshold,
        ),
    };
    if (t - threshold).abs() <= BOUNDARY_BAND {
        return Ok(StructureAnswer {
            verdict: StructureVerdict::Boundary,
            reason: StructureReason::NearThreshold,
        });
    }
    let answer = match class.kind {
        ShockKind::SlowShock => {
            if t < threshold {
                (StructureVerdict::Yes, below)
            } else {
                (StructureVerdict::No, above)
            }
        }
        _ => {
            if t > threshold {
                (StructureVerdict::Yes, above)
            } else {
                (StructureVerdict::No, below)
            }
        }
    };
    Ok(StructureAnswer {
        verdict: answer.0,
        reason: answer.1,
    })
}

/// The anchor points of the wave-pattern map for a given state ahead.
///
/// With `v = |u2p|` and `m` the anisotropy parameter:
///
/// * `a` — the state ahead itself;
/// * `b`, `c` — corners of the locus, `u_plus + 2 v (1, -s)` and
///   `u_plus + 2 v (-1, -s)` where `s = sign(u2p)`;
/// * `d` — end of the slow shocks with profile, `u_plus + (1+m) v (1, -s)`;
/// * `e` — start of the structured antidiagonal fast shocks,
///   `u_plus + (1 + 1/m) v (1, -s)`;
/// * `f` — start of the structured overcompressive jumps,
///   `(u1p + 2 v / m, -u2p)`;
/// * `h` — foot of the pattern map on the degenerate axis,
///   `(u1p - v, 0)`.
///
/// `d`, `e`, `f` exist only for `mu2 < mu1`.
#[derive(Debug, Clone, Copy)]
pub struct KeyPoints {
    pub a: State,
    pub b: State,
    pub c: State,
    pub d: Option<State>,
    pub e: Option<State>,
    pub f: Option<State>,
    pub h: State,
}

pub fn key_points(u_plus: State, mu: Viscosity) -> KeyPoints {
    let s = if u_plus.u2 < 0.0 { -1.0 } else { 1.0 };
    let v = u_plus.u2.abs();
    let down = State::new(1.0, -s);
    let m = mu.anisotropy();
    KeyPoints {
        a: u_plus,
        b: u_plus + down * (2.0 * v),
        c: u_plus + State::new(-1.0, -s) * (2.0 * v),
        d: m.map(|m| u_plus + down * ((1.0 + m) * v)),
        e: m.map(|m| u_plus + down * ((1.0 + 1.0 / m) * v)),
        f: m.map(|m| State::new(u_plus.u1 + 2.0 * v / m, -u_plus.u2)),
        h: State::new(u_plus.u1 - v, 0.0),
    }
}

/// The anisotropy value that would make a horizontal-branch candidate an
/// undercompressive shock with profile, if it lies in the admissible range
/// `0 < m < 1`. Identifies the sub-segment of the horizontal branch marked
/// as undercompressive in the wave-pattern map.
pub fn undercompressive_anisotropy(c: &ShockCandidate) -> Option<f64> {
    let c = if c.u_plus.u2 < 0.0 { c.mirror() } else { *c };
    if c.u_plus.u2 == 0.0 || (c.u_minus.u2 + c.u_plus.u2).abs() > 1e-12 {
        return None;
    }
    let m = (0.5 * c.w - c.u_plus.u1) / c.u_plus.u2;
    (m > 0.0 && m < 1.0).then_some(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    const U_PLUS: State = State::new(2.0, 3.0);

    fn mu(mu1: f64, mu2: f64) -> Viscosity {
        Viscosity::new(mu1, mu2).unwrap()
    }

    #[test]
    fn flux_closed_form() {
        assert_eq!(flux(State::new(0.0, 0.0)), State::new(0.0, 0.0));
        assert_eq!(flux(State::new(2.0, 3.0)), State::new(13.0, 12.0));
        assert_eq!(flux(State::new(1.0, -1.0)), State::new(2.0, -2.0));
    }

    #[test]
    fn characteristic_speeds_and_coincidence() {
        let c = characteristic_speeds(State::new(0.0, 0.0));
        assert_eq!((c.c1, c.c2), (0.0, 0.0));
        assert!(c.coincident);

        let c = characteristic_speeds(State::new(2.0, 3.0));
        assert_eq!((c.c1, c.c2), (-2.0, 10.0));
        assert!(!c.coincident);
        assert!((c.beta1.norm() - 1.0).abs() < 1e-15);
        assert!(c.beta1.u2 < 0.0 && c.beta2.u2 > 0.0);

        // speeds depend on |u2| only
        let c = characteristic_speeds(State::new(2.0, -3.0));
        assert_eq!((c.c1, c.c2), (-2.0, 10.0));
    }

    #[test]
    fn hugoniot_branches_for_reference_state() {
        let [hor, diag, anti] = hugoniot_branches(U_PLUS);

        let p = hor.state_at(7.0);
        assert_eq!(p, State::new(7.0, -3.0));
        assert_eq!(hor.speed_at(7.0), 9.0);

        let p = diag.state_at(1.0);
        assert_eq!(p, State::new(1.0, 2.0)); // u2 = u1 + 1
        assert_eq!(diag.speed_at(1.0), 8.0); // W = 2 (u1 + 3)

        let p = anti.state_at(1.0);
        assert_eq!(p, State::new(1.0, 4.0)); // u2 = -u1 + 5
        assert_eq!(anti.speed_at(1.0), -4.0); // W = 2 (u1 - 3)
    }

    #[test]
    fn branch_points_satisfy_jump_condition() {
        for br in hugoniot_branches(U_PLUS) {
            for k in -20..=20 {
                let u = br.state_at(2.0 + 0.37 * k as f64);
                let w = br.speed_at(u.u1);
                let r = rh_residual(&ShockCandidate::new(u, U_PLUS, w));
                assert!(r < 1e-12, "branch {:?} residual {r}", br.id);
                assert!(hugoniot_product(u, U_PLUS).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn shock_speed_examples() {
        let w = shock_speed(State::new(4.0, 5.0), U_PLUS).unwrap();
        assert!((w - 14.0).abs() < 1e-12);

        // equal fluxes: stationary jump
        let w = shock_speed(State::new(3.0, 2.0), U_PLUS).unwrap();
        assert!(w.abs() < 1e-12);

        let err = shock_speed(State::new(0.0, 0.5), U_PLUS).unwrap_err();
        assert!(matches!(err, ModelError::NotOnLocus { .. }));
        // triple product there: 3.5 * (-0.5) * (-4.5)
        let p = hugoniot_product(State::new(0.0, 0.5), U_PLUS);
        assert!((p - 7.875).abs() < 1e-12);

        assert_eq!(
            shock_speed(U_PLUS, U_PLUS).unwrap_err(),
            ModelError::IdenticalStates
        );
    }

    #[test]
    fn coefficients_make_u_plus_critical() {
        for (u_plus, w) in [
            (U_PLUS, 7.0),
            (State::new(-1.0, 0.3), -2.0),
            (State::new(0.0, 0.0), 1.0),
        ] {
            let g = grad_z(u_plus, u_plus, w);
            assert!(g.norm() < 1e-14);
        }
        let w = 7.4641016;
        let (d1, d2) = coefficients_d(U_PLUS, w);
        assert!((d1 - -1.9282032).abs() < 1e-7);
        assert!((d2 - -10.3923048).abs() < 1e-7);
    }

    #[test]
    fn energy_drop_matches_closed_form() {
        let mu = mu(1.0, 0.5);
        let w = undercompressive_speed(U_PLUS, mu).unwrap();
        let conj = State::new(w - U_PLUS.u1, -U_PLUS.u2);
        let drop = energy_z(conj, U_PLUS, w) - energy_z(U_PLUS, U_PLUS, w);
        assert!((drop - 69.2820323).abs() < 1e-6);
        let formula = undercompressive_energy_drop(U_PLUS, mu).unwrap();
        assert!((drop - formula).abs() < 1e-10);
        // saddle condition (u1p - W/2)^2 < u2p^2 at this speed
        assert!((U_PLUS.u1 - 0.5 * w).powi(2) < U_PLUS.u2.powi(2));
    }

    #[test]
    fn critical_points_examples() {
        let pts = critical_points(U_PLUS, 7.0);
        assert_eq!(pts[1].location, State::new(5.0, -3.0));
        assert_eq!(pts[2].location, State::new(6.5, -1.5));
        assert_eq!(pts[3].location, State::new(0.5, 1.5));

        // Jouguet configuration: antidiagonal partner collides with the
        // horizontal conjugate at W = 2 (u1p + u2p)
        let pts = critical_points(U_PLUS, 10.0);
        assert_eq!(pts[1].location, State::new(8.0, -3.0));
        assert_eq!(pts[2].location, State::new(8.0, -3.0));
        assert_eq!(pts[1].z_type, ZType::Degenerate);

        // full degeneracy on the axis
        let pts = critical_points(State::new(1.0, 0.0), 2.0);
        for p in &pts {
            assert_eq!(p.location, State::new(1.0, 0.0));
        }
    }

    #[test]
    fn type_pairing_of_critical_points() {
        // whenever the four points are distinct, the (plus, horizontal) pair
        // and the (antidiag, diag) pair have the same saddle-vs-extremum
        // class and the two pairs have opposite class
        for w in [-3.0, 1.0, 6.9, 7.3, 11.0] {
            let pts = critical_points(U_PLUS, w);
            let saddle = |e: &EquilibriumInfo| e.z_type == ZType::Saddle;
            assert_eq!(saddle(&pts[0]), saddle(&pts[1]), "W = {w}");
            assert_eq!(saddle(&pts[2]), saddle(&pts[3]), "W = {w}");
            assert_ne!(saddle(&pts[0]), saddle(&pts[2]), "W = {w}");
        }
    }

    #[test]
    fn lax_classification_examples() {
        let class = |um: State, w: f64| {
            lax_classify(&ShockCandidate::new(um, U_PLUS, w))
                .unwrap()
                .kind
        };
        assert_eq!(class(State::new(4.0, 5.0), 14.0), ShockKind::FastShock);
        assert_eq!(class(State::new(3.0, 2.0), 0.0), ShockKind::SlowShock);
        assert_eq!(
            class(State::new(5.4641016, -3.0), 7.4641016),
            ShockKind::Undercompressive
        );
        assert_eq!(class(State::new(9.0, -3.0), 11.0), ShockKind::Overcompressive);

        let err = lax_classify(&ShockCandidate::new(State::new(0.0, 0.5), U_PLUS, 1.0));
        assert!(matches!(err, Err(ModelError::NotOnLocus { .. })));
    }

    #[test]
    fn undercompressive_speed_examples() {
        let w = undercompressive_speed(U_PLUS, mu(1.0, 0.5)).unwrap();
        assert!((w - 7.4641016).abs() < 1e-6);

        assert_eq!(
            undercompressive_speed(U_PLUS, mu(1.0, 2.0)).unwrap_err(),
            ModelError::NoUndercompressive
        );
        assert_eq!(
            undercompressive_speed(State::new(2.0, 0.0), mu(1.0, 0.5)).unwrap_err(),
            ModelError::DegenerateAxis
        );

        // mirror symmetry: speed unchanged under u2 -> -u2
        let w_m = undercompressive_speed(U_PLUS.mirror(), mu(1.0, 0.5)).unwrap();
        assert_eq!(w, w_m);
    }

    #[test]
    fn ab_connection_speed_examples() {
        let ws = ab_connection_speeds(U_PLUS, mu(1.0, 0.5)).unwrap();
        assert!((ws[0] - 14.3923048).abs() < 1e-6);
        assert!((ws[1] - -6.3923048).abs() < 1e-6);

        assert_eq!(
            ab_connection_speeds(U_PLUS, mu(1.0, 1.0)).unwrap_err(),
            ModelError::NoConnection
        );

        // both speeds tend to 2 u1p as u2p -> 0
        let ws = ab_connection_speeds(State::new(2.0, 1e-12), mu(1.0, 0.5)).unwrap();
        assert!((ws[0] - 4.0).abs() < 1e-10 && (ws[1] - 4.0).abs() < 1e-10);
    }

    #[test]
    fn structure_thresholds() {
        let cand = |um: State| {
            let w = shock_speed(um, U_PLUS).unwrap();
            ShockCandidate::new(um, U_PLUS, w)
        };
        // slow shock, t = 4: structured in both regimes ((1+m) u2p = 4.732)
        let slow = cand(State::new(6.0, -1.0));
        let ans = structure_exists(&slow, mu(1.0, 2.0)).unwrap();
        assert_eq!(ans.verdict, StructureVerdict::Yes);
        let ans = structure_exists(&slow, mu(1.0, 0.5)).unwrap();
        assert_eq!(ans.verdict, StructureVerdict::Yes);

        // slow shock, t = 5 > 4.732: no profile for mu2 < mu1
        let ans = structure_exists(&cand(State::new(7.0, -2.0)), mu(1.0, 0.5)).unwrap();
        assert_eq!(ans.verdict, StructureVerdict::No);

        // diagonal-family fast shock: always structured
        let ans = structure_exists(&cand(State::new(4.0, 5.0)), mu(1.0, 0.5)).unwrap();
        assert_eq!(ans.verdict, StructureVerdict::Yes);
        assert_eq!(ans.reason, StructureReason::DiagonalFamily);

        let err = structure_exists(&cand(State::new(9.0, -3.0)), mu(1.0, 0.5)).unwrap_err();
        assert!(matches!(err, ModelError::NotAShock(ShockKind::Overcompressive)));
    }

    #[test]
    fn key_points_examples() {
        let kp = key_points(U_PLUS, mu(1.0, 0.5));
        assert_eq!(kp.a, U_PLUS);
        assert_eq!(kp.b, State::new(8.0, -3.0));
        assert_eq!(kp.c, State::new(-4.0, -3.0));
        assert_eq!(kp.h, State::new(-1.0, 0.0));
        let d = kp.d.unwrap();
        assert!((d.u1 - 6.7320508).abs() < 1e-6 && (d.u2 - -1.7320508).abs() < 1e-6);
        let e = kp.e.unwrap();
        assert!((e.u1 - 10.1961524).abs() < 1e-6 && (e.u2 - -5.1961524).abs() < 1e-6);
        let f = kp.f.unwrap();
        assert!((f.u1 - 12.3923048).abs() < 1e-6 && (f.u2 - -3.0).abs() < 1e-12);

        // no thresholds when mu1 <= mu2
        let kp = key_points(U_PLUS, mu(1.0, 2.0));
        assert!(kp.d.is_none() && kp.e.is_none() && kp.f.is_none());

        // mirrored data gives mirrored points
        let kp_m = key_points(U_PLUS.mirror(), mu(1.0, 0.5));
        assert_eq!(kp_m.b, State::new(8.0, 3.0));
        assert_eq!(kp_m.h, State::new(-1.0, 0.0));
    }

    #[test]
    fn thresholds_collapse_to_corner_as_regimes_meet() {
        // as mu2 -> mu1 the anisotropy tends to 1 and d, e, f all tend to b
        let kp = key_points(U_PLUS, mu(1.0, 1.0 - 1e-12));
        let b = kp.b;
        assert!(kp.d.unwrap().dist(b) < 1e-5);
        assert!(kp.e.unwrap().dist(b) < 1e-5);
        assert!(kp.f.unwrap().dist(b) < 1e-5);
    }
}
