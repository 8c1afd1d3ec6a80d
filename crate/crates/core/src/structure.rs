//! Phase-plane layer: the profile ODE and heteroclinic shooting.
//!
//! A traveling wave `u(xi)`, `xi = x - W t`, of the regularized system
//! satisfies the gradient-like ODE
//!
//! ```text
//! u' = -M^{-1} dZ/du,    Z = -Q + W (u1^2 + u2^2)/2 + D1 u1 + D2 u2,
//! ```
//!
//! whose equilibria are the four critical points of `Z` and along whose
//! orbits `Z` decreases. A shock `u- -> u+` has a structure exactly when a
//! heteroclinic orbit runs from `u-` to `u+`. This module integrates the
//! ODE, shoots separatrices, and measures saddle-connection speeds by
//! bisection — the independent oracle for the closed-form layer.

use thiserror::Error;

use crate::model::{self, EquilibriumInfo, ModelError, ZType};
use crate::ode::{integrate, OdeSettings};
use crate::state::{State, Viscosity};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StructureError {
    #[error("equilibrium is not a saddle ({0:?})")]
    NotASaddle(ZType),
    #[error("state {0} is not an equilibrium of the field (|rhs| = {1:.3e})")]
    NotEquilibrium(State, f64),
    #[error("equilibrium is degenerate (saddle-node); generic shooting refuses it")]
    DegenerateEquilibrium,
    #[error("no heteroclinic orbit found")]
    NotFound,
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Parameters of the profile ODE for a fixed `(u_plus, W, mu)`.
#[derive(Debug, Clone, Copy)]
pub struct OdeParams {
    pub u_plus: State,
    pub w: f64,
    pub mu: Viscosity,
    /// Constants fixed so that `u_plus` is an equilibrium.
    pub d: (f64, f64),
}

impl OdeParams {
    pub fn new(u_plus: State, w: f64, mu: Viscosity) -> Self {
        OdeParams {
            u_plus,
            w,
            mu,
            d: model::coefficients_d(u_plus, w),
        }
    }

    /// Right-hand side `-M^{-1} dZ/du`:
    /// `((u1^2 + u2^2 - W u1 - D1)/mu1, (2 u1 u2 - W u2 - D2)/mu2)`.
    pub fn rhs(&self, u: State) -> State {
        let (d1, d2) = self.d;
        State::new(
            (u.u1 * u.u1 + u.u2 * u.u2 - self.w * u.u1 - d1) / self.mu.mu1(),
            (2.0 * u.u1 * u.u2 - self.w * u.u2 - d2) / self.mu.mu2(),
        )
    }

    pub fn energy(&self, u: State) -> f64 {
        model::energy_z(u, self.u_plus, self.w)
    }

    pub fn equilibria(&self) -> [EquilibriumInfo; 4] {
        model::critical_points(self.u_plus, self.w)
    }
}

/// Shooting settings on top of the raw integrator tolerances.
#[derive(Debug, Clone, Copy)]
pub struct ShootSettings {
    pub ode: OdeSettings,
    /// Launch offset from an equilibrium, relative to the equilibrium
    /// separation scale.
    pub offset_rel: f64,
    /// Radius of the convergence ball around equilibria.
    pub conv_delta: f64,
}

impl Default for ShootSettings {
    fn default() -> Self {
        ShootSettings {
            ode: OdeSettings::default(),
            offset_rel: 1e-6,
            conv_delta: 1e-5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Terminal {
    ConvergedTo(State),
    Escaped,
    StepLimit,
}

/// A sampled orbit of the profile ODE.
#[derive(Debug, Clone)]
pub struct Trajectory {
    /// `(xi, u)` at every accepted step, `xi` strictly increasing.
    pub samples: Vec<(f64, State)>,
    pub terminal: Terminal,
}

impl Trajectory {
    pub fn last_state(&self) -> State {
        self.samples.last().expect("trajectory never empty").1
    }
}

fn cluster_geometry(eqs: &[EquilibriumInfo; 4]) -> (State, f64) {
    let mut center = State::default();
    for e in eqs {
        center = center + e.location * 0.25;
    }
    let mut diam: f64 = 0.0;
    for i in 0..4 {
        for j in i + 1..4 {
            diam = diam.max(eqs[i].location.dist(eqs[j].location));
        }
    }
    (center, diam)
}

struct Shot<'a> {
    params: &'a OdeParams,
    settings: &'a ShootSettings,
    targets: Vec<State>,
    center: State,
    escape_radius: f64,
    reversed: bool,
}

impl<'a> Shot<'a> {
    fn new(params: &'a OdeParams, settings: &'a ShootSettings, exclude: State) -> Self {
        let eqs = params.equilibria();
        let targets = eqs
            .iter()
            .map(|e| e.location)
            .filter(|&loc| loc.dist(exclude) > 10.0 * settings.conv_delta)
            .collect();
        Shot::with_targets(params, settings, targets)
    }

    /// A shot that only ever reports convergence to the given targets;
    /// orbits passing near other equilibria (e.g. skimming a saddle) run on.
    fn with_targets(params: &'a OdeParams, settings: &'a ShootSettings, targets: Vec<State>) -> Self {
        let eqs = params.equilibria();
        let (center, diam) = cluster_geometry(&eqs);
        Shot {
            params,
            settings,
            targets,
            center,
            escape_radius: 10.0 * diam + 10.0,
            reversed: false,
        }
    }

    fn launch_scale(&self) -> f64 {
        (self.escape_radius - 10.0) / 10.0 + 1.0
    }

    fn run(&self, from: State) -> Trajectory {
        let p = *self.params;
        let reversed = self.reversed;
        let f = move |u: State| {
            let v = p.rhs(u);
            if reversed {
                -v
            } else {
                v
            }
        };
        let mut samples = vec![(0.0, from)];
        let mut terminal = Terminal::StepLimit;
        let done = integrate(&f, from, &self.settings.ode, |t, u| {
            samples.push((t, u));
            for &target in &self.targets {
                if u.dist(target) <= self.settings.conv_delta {
                    terminal = Terminal::ConvergedTo(target);
                    return true;
                }
            }
            if u.dist(self.center) > self.escape_radius {
                terminal = Terminal::Escaped;
                return true;
            }
            false
        });
        if done.is_none() {
            terminal = Terminal::StepLimit;
        }
        Trajectory { samples, terminal }
    }
}

/// Shoot one separatrix branch of a saddle.
///
/// `direction` must be (close to) a unit eigenvector of the linearization at
/// the saddle; its eigenvalue sign decides the time direction: unstable
/// branches run forward, stable branches are integrated in reversed time.
/// The orbit stops on entering the convergence ball of another equilibrium,
/// on leaving the escape radius of the equilibrium cluster, or on the step
/// budget.
pub fn shoot_separatrix(
    eq: &EquilibriumInfo,
    direction: State,
    params: &OdeParams,
    settings: &ShootSettings,
) -> Result<Trajectory, StructureError> {
    if eq.z_type != ZType::Saddle {
        return Err(StructureError::NotASaddle(eq.z_type));
    }
    let pairs = eq.ode_eigen(params.mu);
    // eigenvalue associated with the requested direction
    let lambda = pairs
        .iter()
        .map(|&(l, v)| (l, v.dot(direction).abs()))
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(l, _)| l)
        .unwrap();
    let mut shot = Shot::new(params, settings, eq.location);
    shot.reversed = lambda < 0.0;
    let from = eq.location + direction * (settings.offset_rel * shot.launch_scale());
    Ok(shot.run(from))
}

/// A traveling-wave profile: a heteroclinic orbit from `u_minus` to
/// `u_plus`, stored in forward orientation (`xi` increasing toward
/// `u_plus`).
#[derive(Debug, Clone)]
pub struct Profile {
    pub trajectory: Trajectory,
    pub u_minus: State,
    pub u_plus: State,
    pub w: f64,
    /// 0 for isolated connections, 1 for the node-to-node family of
    /// overcompressive profiles.
    pub family_dof: usize,
}

impl Profile {
    /// Linear interpolation of the profile at `xi`, clamped to the end
    /// states outside the sampled range.
    pub fn eval(&self, xi: f64) -> State {
        let s = &self.trajectory.samples;
        if xi <= s[0].0 {
            return self.u_minus;
        }
        if xi >= s[s.len() - 1].0 {
            return self.u_plus;
        }
        let idx = s.partition_point(|&(x, _)| x < xi);
        let (x0, u0) = s[idx - 1];
        let (x1, u1) = s[idx];
        let a = (xi - x0) / (x1 - x0);
        u0 + (u1 - u0) * a
    }
}

fn require_equilibrium(params: &OdeParams, u: State) -> Result<(), StructureError> {
    let r = params.rhs(u).norm();
    let scale = 1.0 + u.norm() * u.norm();
    if r > 1e-6 * scale {
        return Err(StructureError::NotEquilibrium(u, r));
    }
    Ok(())
}

/// Center `xi` so that the sample nearest the midpoint of the end states
/// sits at `xi = 0`.
fn center_profile(mut samples: Vec<(f64, State)>, u_minus: State, u_plus: State) -> Vec<(f64, State)> {
    let mid = (u_minus + u_plus) * 0.5;
    let (shift, _) = samples
        .iter()
        .map(|&(x, u)| (x, u.dist(mid)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap();
    for (x, _) in samples.iter_mut() {
        *x -= shift;
    }
    samples
}

/// Find a heteroclinic orbit from `u_minus` to `u_plus` at speed `w`.
///
/// Saddle-to-node and saddle-to-saddle connections are found by shooting
/// the unstable separatrix branches of `u_minus`; node-to-saddle ones by
/// shooting the stable branches of `u_plus` in reversed time; node-to-node
/// (overcompressive) families by a fan of shots from a small circle around
/// the repelling node. Degenerate (saddle-node) end states are refused.
pub fn find_heteroclinic(
    u_minus: State,
    u_plus: State,
    w: f64,
    mu: Viscosity,
    settings: &ShootSettings,
) -> Result<Profile, StructureError> {
    let params = OdeParams::new(u_plus, w, mu);
    require_equilibrium(&params, u_minus)?;
    require_equilibrium(&params, u_plus)?;
    let minus = EquilibriumInfo::classify(u_minus, w);
    let plus = EquilibriumInfo::classify(u_plus, w);
    if minus.z_type == ZType::Degenerate || plus.z_type == ZType::Degenerate {
        return Err(StructureError::DegenerateEquilibrium);
    }

    let profile = |samples, family_dof| Profile {
        trajectory: Trajectory {
            samples: center_profile(samples, u_minus, u_plus),
            terminal: Terminal::ConvergedTo(u_plus),
        },
        u_minus,
        u_plus,
        w,
        family_dof,
    };
    // equilibrium locations recomputed inside the shots may differ from the
    // caller's states in the last bits
    let reaches = |traj: &Trajectory, target: State| match traj.terminal {
        Terminal::ConvergedTo(loc) => loc.dist(target) <= settings.conv_delta,
        _ => false,
    };

    match (minus.z_type, plus.z_type) {
        // orbit leaves along an unstable branch of the saddle behind
        (ZType::Saddle, ZType::Minimum) | (ZType::Saddle, ZType::Saddle) => {
            let dir = unstable_direction(&minus, mu);
            for d in [dir, -dir] {
                let traj = shoot_separatrix(&minus, d, &params, settings)?;
                if reaches(&traj, u_plus) {
                    return Ok(profile(traj.samples, 0));
                }
            }
            Err(StructureError::NotFound)
        }
        // orbit arrives along a stable branch of the saddle ahead
        (ZType::Maximum, ZType::Saddle) => {
            let dir = stable_direction(&plus, mu);
            for d in [dir, -dir] {
                let traj = shoot_separatrix(&plus, d, &params, settings)?;
                if reaches(&traj, u_minus) {
                    let samples = traj
                        .samples
                        .into_iter()
                        .rev()
                        .map(|(x, u)| (-x, u))
                        .collect();
                    return Ok(profile(samples, 0));
                }
            }
            Err(StructureError::NotFound)
        }
        // repelling node to attracting node: a one-parameter family
        (ZType::Maximum, ZType::Minimum) => {
            match node_to_node_orbit(&params, settings, u_minus, u_plus) {
                Some(samples) => Ok(profile(samples, 1)),
                None => Err(StructureError::NotFound),
            }
        }
        _ => Err(StructureError::NotFound),
    }
}

/// Find one member of the node-to-node orbit family, if any.
///
/// Every orbit leaving a repelling node does so tangent to the weak
/// eigendirection, so the basin of the attractor meets a small circle
/// around the node in an exponentially thin sliver and radial shooting
/// misses it. Instead, launch just inside the channel bounded by the saddle
/// separatrices: from each saddle, step off along its unstable direction
/// (toward the attractor) plus a nudge along its stable direction (toward
/// the node). A launch point belongs to the family iff it flows forward
/// into the attractor and backward into the node; the two legs glued
/// together are the orbit.
fn node_to_node_orbit(
    params: &OdeParams,
    settings: &ShootSettings,
    node_from: State,
    node_to: State,
) -> Option<Vec<(f64, State)>> {
    let saddles: Vec<EquilibriumInfo> = params
        .equilibria()
        .into_iter()
        .filter(|e| e.z_type == ZType::Saddle)
        .collect();
    let forward = Shot::with_targets(params, settings, vec![node_to]);
    let mut backward = Shot::with_targets(params, settings, vec![node_from]);
    backward.reversed = true;
    let eps = settings.offset_rel * forward.launch_scale();
    let reaches = |traj: &Trajectory, target: State| match traj.terminal {
        Terminal::ConvergedTo(loc) => loc.dist(target) <= settings.conv_delta,
        _ => false,
    };

    for saddle in &saddles {
        let mut vu = unstable_direction(saddle, params.mu);
        if vu.dot(node_to - saddle.location) < 0.0 {
            vu = -vu;
        }
        let mut vs = stable_direction(saddle, params.mu);
        if vs.dot(node_from - saddle.location) < 0.0 {
            vs = -vs;
        }
        let from = saddle.location + vu * eps + vs * eps;
        let ahead = forward.run(from);
        if !reaches(&ahead, node_to) {
            continue;
        }
        let behind = backward.run(from);
        if !reaches(&behind, node_from) {
            continue;
        }
        let mut samples: Vec<(f64, State)> = behind
            .samples
            .into_iter()
            .rev()
            .map(|(t, u)| (-t, u))
            .collect();
        samples.extend(ahead.samples.into_iter().skip(1));
        return Some(samples);
    }
    None
}

#[doc(hidden)]
pub fn debug_shot(
    params: &OdeParams,
    settings: &ShootSettings,
    exclude: State,
    from: State,
) -> Trajectory {
    Shot::new(params, settings, exclude).run(from)
}

fn unstable_direction(eq: &EquilibriumInfo, mu: Viscosity) -> State {
    let [lo, hi] = eq.ode_eigen(mu);
    debug_assert!(lo.0 < 0.0 && hi.0 > 0.0, "saddle eigenvalues straddle zero");
    hi.1
}

fn stable_direction(eq: &EquilibriumInfo, mu: Viscosity) -> State {
    let [lo, _] = eq.ode_eigen(mu);
    lo.1
}

/// Which side of the straight saddle-to-saddle segment a shot ends on.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Side {
    Hit,
    Off(f64),
}

/// Shoot the unstable separatrix of the horizontal conjugate of `u_plus`
/// toward `u_plus` at trial speed `w` and report the signed side on which
/// it leaves the connecting segment (or `Hit` when it reaches `u_plus`).
fn connection_side(
    u_plus: State,
    mu: Viscosity,
    w: f64,
    settings: &ShootSettings,
    hit_radius: f64,
) -> Result<Side, StructureError> {
    let params = OdeParams::new(u_plus, w, mu);
    let conj = State::new(w - u_plus.u1, -u_plus.u2);
    let info = EquilibriumInfo::classify(conj, w);
    if info.z_type != ZType::Saddle {
        return Err(StructureError::NotASaddle(info.z_type));
    }
    let mut dir = unstable_direction(&info, mu);
    let chord = u_plus - conj;
    if dir.dot(chord) < 0.0 {
        dir = -dir;
    }
    let e = chord.normalized();
    let e_perp = State::new(-e.u2, e.u1);
    let len = chord.norm();
    let tube = 0.1 * len;

    let shot = Shot::new(&params, settings, conj);
    let from = conj + dir * (settings.offset_rel * shot.launch_scale());
    let p = params;
    let f = move |u: State| p.rhs(u);
    let mut side = Side::Off(0.0);
    let mut last_cross = 0.0;
    integrate(&f, from, &settings.ode, |_, u| {
        if u.dist(u_plus) <= hit_radius {
            side = Side::Hit;
            return true;
        }
        let r = u - conj;
        last_cross = e_perp.dot(r);
        // left the tube around the chord, or overshot past the far saddle:
        // the splitting sign is decided
        if last_cross.abs() > tube || e.dot(r) > len {
            side = Side::Off(last_cross.signum());
            return true;
        }
        if u.dist(shot.center) > shot.escape_radius {
            side = Side::Off(if last_cross == 0.0 { 1.0 } else { last_cross.signum() });
            return true;
        }
        false
    });
    Ok(side)
}

/// True when the saddle-to-saddle shot at trial speed `w` actually reaches
/// `u_plus`.
pub fn connection_shot_hits(
    u_plus: State,
    mu: Viscosity,
    w: f64,
    settings: &ShootSettings,
) -> bool {
    let u_plus = if u_plus.u2 < 0.0 { u_plus.mirror() } else { u_plus };
    matches!(
        connection_side(u_plus, mu, w, settings, settings.conv_delta),
        Ok(Side::Hit)
    )
}

/// Measure the saddle-connection speed by bisection of the separatrix
/// splitting, independent of the closed-form speed.
///
/// Requires `mu2 < mu1` and a state ahead off the degenerate axis.
pub fn verify_connection(
    u_plus: State,
    mu: Viscosity,
    settings: &ShootSettings,
) -> Result<f64, StructureError> {
    let m = mu
        .anisotropy()
        .ok_or(StructureError::Model(ModelError::NoUndercompressive))?;
    if u_plus.u2 == 0.0 {
        return Err(StructureError::Model(ModelError::DegenerateAxis));
    }
    let u_plus = if u_plus.u2 < 0.0 { u_plus.mirror() } else { u_plus };

    // Bracket inside the window where both end equilibria are saddles.
    // Deliberately asymmetric around the predicted speed so that no
    // bisection midpoint coincides with it: the measured speed comes from
    // genuine sign changes of the separatrix splitting.
    let w_pred = 2.0 * (u_plus.u1 + m * u_plus.u2);
    let window_lo = 2.0 * (u_plus.u1 - u_plus.u2);
    let window_hi = 2.0 * (u_plus.u1 + u_plus.u2);
    // measuring to ~1e-10 in W needs a hit ball far below the generic
    // convergence delta, or the bisection would stop at the first graze
    let hit = 1e-9 * 1.0f64.max(u_plus.norm());
    // start with tight brackets: the splitting changes sign exactly once
    // near the connection, while far away the separatrix may curve across
    // the chord line for unrelated reasons
    let mut widths = [0.02, 0.06, 0.2, 0.5, 0.9]
        .iter()
        .map(|&a| a * (w_pred - window_lo).min(window_hi - w_pred))
        .collect::<Vec<_>>()
        .into_iter();

    let (mut lo, mut hi, s_lo) = loop {
        let d = widths.next().ok_or(StructureError::NotFound)?;
        let (lo, hi) = (w_pred - d, w_pred + 0.618 * d);
        match (
            connection_side(u_plus, mu, lo, settings, hit)?,
            connection_side(u_plus, mu, hi, settings, hit)?,
        ) {
            (Side::Hit, _) => return Ok(lo),
            (_, Side::Hit) => return Ok(hi),
            (Side::Off(a), Side::Off(b)) if a != b => break (lo, hi, a),
            _ => continue,
        }
    };

    let tol = 1e-10 * 1.0f64.max(w_pred.abs());
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        match connection_side(u_plus, mu, mid, settings, hit)? {
            Side::Hit => return Ok(mid),
            Side::Off(s) => {
                if s == s_lo {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Dedicated shot for the degenerate (Jouguet) configuration: both end
/// states are saddle-nodes, so generic separatrix shooting refuses them.
/// Launches from the locus corner along its outgoing direction and reports
/// whether the orbit reaches the state ahead.
pub fn jouguet_connection(u_plus: State, mu: Viscosity, settings: &ShootSettings) -> bool {
    let u_plus = if u_plus.u2 < 0.0 { u_plus.mirror() } else { u_plus };
    if u_plus.u2 == 0.0 {
        return false;
    }
    let w = 2.0 * (u_plus.u1 + u_plus.u2);
    let params = OdeParams::new(u_plus, w, mu);
    let corner = u_plus + State::new(1.0, -1.0) * (2.0 * u_plus.u2);
    // outgoing eigendirection of the saddle-node at the corner
    let dir = State::new(mu.mu2(), -mu.mu1()).normalized();
    let dir = if dir.dot(u_plus - corner) < 0.0 { -dir } else { dir };
    let loose = ShootSettings {
        conv_delta: 1e-3,
        ..*settings
    };
    let shot = Shot::new(&params, &loose, corner);
    let from = corner + dir * (loose.offset_rel * shot.launch_scale());
    let traj = shot.run(from);
    traj.terminal == Terminal::ConvergedTo(u_plus)
}

#[cfg(test)]
mod tests {
    use super::*;

    const U_PLUS: State = State::new(2.0, 3.0);

    fn mu(mu1: f64, mu2: f64) -> Viscosity {
        Viscosity::new(mu1, mu2).unwrap()
    }

    fn settings() -> ShootSettings {
        ShootSettings::default()
    }

    #[test]
    fn rhs_examples() {
        let p = OdeParams::new(U_PLUS, 7.4641016, mu(1.0, 1.0));
        // at the origin the field is -D / mu
        let v = p.rhs(State::new(0.0, 0.0));
        assert!((v.u1 - 1.9282032).abs() < 1e-7);
        assert!((v.u2 - 10.3923048).abs() < 1e-7);
        // every critical point is a zero of the field
        for eq in p.equilibria() {
            assert!(p.rhs(eq.location).norm() < 1e-12);
        }
    }

    #[test]
    fn unstable_separatrix_realizes_saddle_connection() {
        let mu = mu(1.0, 0.5);
        let w = model::undercompressive_speed(U_PLUS, mu).unwrap();
        let params = OdeParams::new(U_PLUS, w, mu);
        let conj = State::new(w - U_PLUS.u1, -U_PLUS.u2);
        let info = EquilibriumInfo::classify(conj, w);
        let mut dir = unstable_direction(&info, mu);
        if dir.dot(U_PLUS - conj) < 0.0 {
            dir = -dir;
        }
        let traj = shoot_separatrix(&info, dir, &params, &settings()).unwrap();
        assert_eq!(traj.terminal, Terminal::ConvergedTo(U_PLUS));

        // the connection is rectilinear: stay within 1e-5 of the segment
        let e = (U_PLUS - conj).normalized();
        let mut max_dev: f64 = 0.0;
        for &(_, u) in &traj.samples {
            let r = u - conj;
            max_dev = max_dev.max((r - e * r.dot(e)).norm().abs());
        }
        assert!(max_dev <= 1e-5, "deviation {max_dev}");

        // energy decreases along the orbit
        let mut z_prev = f64::INFINITY;
        for &(_, u) in &traj.samples {
            let z = params.energy(u);
            assert!(z <= z_prev + 1e-9);
            z_prev = z;
        }
    }

    #[test]
    fn detuned_speed_breaks_the_connection() {
        let mu = mu(1.0, 0.5);
        let w = 7.6;
        let params = OdeParams::new(U_PLUS, w, mu);
        let conj = State::new(w - U_PLUS.u1, -U_PLUS.u2);
        let info = EquilibriumInfo::classify(conj, w);
        let mut dir = unstable_direction(&info, mu);
        if dir.dot(U_PLUS - conj) < 0.0 {
            dir = -dir;
        }
        let traj = shoot_separatrix(&info, dir, &params, &settings()).unwrap();
        assert_ne!(traj.terminal, Terminal::ConvergedTo(U_PLUS));
    }

    #[test]
    fn slow_shock_profile_inside_threshold() {
        // t = 4 < (1 + m) u2p = 4.732..., so the profile exists
        let p = find_heteroclinic(State::new(6.0, -1.0), U_PLUS, 6.0, mu(1.0, 0.5), &settings())
            .unwrap();
        assert_eq!(p.family_dof, 0);
        let first = p.trajectory.samples.first().unwrap().1;
        let last = p.trajectory.samples.last().unwrap().1;
        assert!(first.dist(State::new(6.0, -1.0)) < 1e-4);
        assert!(last.dist(U_PLUS) < 1e-4);
        // xi strictly increasing
        for pair in p.trajectory.samples.windows(2) {
            assert!(pair[1].0 > pair[0].0);
        }
    }

    #[test]
    fn slow_shock_profile_beyond_threshold_is_absent() {
        // t = 5 > 4.732...
        let err = find_heteroclinic(State::new(7.0, -2.0), U_PLUS, 8.0, mu(1.0, 0.5), &settings())
            .unwrap_err();
        assert_eq!(err, StructureError::NotFound);
    }

    #[test]
    fn overcompressive_family_membership() {
        let mu = mu(1.0, 0.5);
        // W/2 = 5.5 below the overcompressive threshold u1p + u2p/m = 7.196:
        // no profile family
        let err =
            find_heteroclinic(State::new(9.0, -3.0), U_PLUS, 11.0, mu, &settings()).unwrap_err();
        assert_eq!(err, StructureError::NotFound);

        // W/2 = 7.5 beyond it: family found
        let p = find_heteroclinic(State::new(13.0, -3.0), U_PLUS, 15.0, mu, &settings()).unwrap();
        assert_eq!(p.family_dof, 1);
    }

    #[test]
    fn rejects_non_equilibrium_input() {
        let err = find_heteroclinic(State::new(6.1, -1.0), U_PLUS, 6.0, mu(1.0, 0.5), &settings())
            .unwrap_err();
        assert!(matches!(err, StructureError::NotEquilibrium(_, _)));
    }

    #[test]
    fn measured_connection_speed_matches_closed_form() {
        let mu1 = mu(1.0, 0.5);
        let w_star = verify_connection(U_PLUS, mu1, &settings()).unwrap();
        assert!((w_star - 7.4641016).abs() < 1e-6, "W* = {w_star}");

        let mu2 = mu(2.0, 1.0);
        let w_star = verify_connection(State::new(1.0, 1.0), mu2, &settings()).unwrap();
        assert!((w_star - 3.1547005).abs() < 1e-6, "W* = {w_star}");

        let err = verify_connection(U_PLUS, mu(1.0, 1.5), &settings()).unwrap_err();
        assert_eq!(
            err,
            StructureError::Model(ModelError::NoUndercompressive)
        );
    }

    #[test]
    fn reversed_stable_shot_reproduces_forward_connection() {
        // at the saddle-connection speed, shooting the stable separatrix of
        // u_plus backward lands on the conjugate saddle
        let mu = mu(1.0, 0.5);
        let w = model::undercompressive_speed(U_PLUS, mu).unwrap();
        let params = OdeParams::new(U_PLUS, w, mu);
        let conj = State::new(w - U_PLUS.u1, -U_PLUS.u2);
        let info = EquilibriumInfo::classify(U_PLUS, w);
        let mut dir = stable_direction(&info, mu);
        if dir.dot(conj - U_PLUS) < 0.0 {
            dir = -dir;
        }
        let traj = shoot_separatrix(&info, dir, &params, &settings()).unwrap();
        assert_eq!(traj.terminal, Terminal::ConvergedTo(conj));
    }

    #[test]
    fn jouguet_connection_exists_only_in_the_structured_regime() {
        assert!(jouguet_connection(U_PLUS, mu(1.0, 2.0), &settings()));
        assert!(jouguet_connection(U_PLUS, mu(1.0, 1.0), &settings()));
        assert!(!jouguet_connection(U_PLUS, mu(1.0, 0.5), &settings()));
    }
}
