//! Finite-difference solver for the regularized system
//! `d/dt u + d/dx dQ/du = M d2/dx2 u`.
//!
//! Second-order central interface fluxes with the viscous term folded into
//! the flux, explicit Heun time stepping under a combined
//! advective/diffusive CFL bound, and Dirichlet far-field boundaries. The
//! physical viscosity is the object under study here, so the scheme adds no
//! upwind dissipation of its own; callers keep `dx <= sqrt(mu_min) / 4` so
//! that the physical term dominates the truncation error.
//!
//! Used to cross-validate traveling profiles, the vanishing-viscosity limit
//! of the Riemann solver, the scalar decoupling at `mu1 = mu2`, and the
//! time-asymptotic stability of profiles.

use thiserror::Error;

use crate::model::flux;
use crate::riemann::{sample_solution, RiemannSolution};
use crate::state::{State, Viscosity};
use crate::structure::Profile;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ViscousError {
    #[error("solution exceeded the magnitude bound at t = {time}")]
    BlowUp { time: f64 },
    #[error("grid needs at least 16 cells with x_min < x_max, got n = {n}")]
    BadGrid { n: usize },
}

/// Uniform cell-centered grid on `[x_min, x_max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    pub x_min: f64,
    pub x_max: f64,
    pub n: usize,
}

impl Grid1D {
    pub fn new(x_min: f64, x_max: f64, n: usize) -> Result<Self, ViscousError> {
        if n < 16 || !(x_max > x_min) {
            return Err(ViscousError::BadGrid { n });
        }
        Ok(Grid1D { x_min, x_max, n })
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / self.n as f64
    }

    pub fn center(&self, i: usize) -> f64 {
        self.x_min + (i as f64 + 0.5) * self.dx()
    }
}

/// A sampled space-time state of the regularized system.
#[derive(Debug, Clone)]
pub struct Field {
    pub grid: Grid1D,
    pub time: f64,
    pub values: Vec<State>,
}

impl Field {
    pub fn from_fn(grid: Grid1D, f: impl Fn(f64) -> State) -> Self {
        let values = (0..grid.n).map(|i| f(grid.center(i))).collect();
        Field {
            grid,
            time: 0.0,
            values,
        }
    }

    pub fn constant(grid: Grid1D, u: State) -> Self {
        Field::from_fn(grid, |_| u)
    }

    /// Total of `u dx` over the grid; conserved up to boundary fluxes.
    pub fn mass(&self) -> State {
        let mut m = State::default();
        for &u in &self.values {
            m = m + u;
        }
        m * self.grid.dx()
    }
}

/// Explicit scheme settings.
#[derive(Debug, Clone, Copy)]
pub struct SchemeSettings {
    /// Safety factor on both CFL bounds.
    pub cfl_safety: f64,
    /// Magnitude bound beyond which the run aborts with `BlowUp`.
    pub blowup_bound: f64,
}

impl Default for SchemeSettings {
    fn default() -> Self {
        SchemeSettings {
            cfl_safety: 0.4,
            blowup_bound: 1e6,
        }
    }
}

fn max_char_speed(values: &[State]) -> f64 {
    values
        .iter()
        .fold(0.0f64, |a, u| a.max(2.0 * (u.u1.abs() + u.u2.abs())))
}

/// `du/dt` from central interface fluxes; boundary cells are pinned.
fn apply_rhs(values: &[State], fluxes: &[State], mu: Viscosity, dx: f64, out: &mut [State]) {
    let n = values.len();
    out[0] = State::default();
    out[n - 1] = State::default();
    let visc = |d: State| State::new(mu.mu1() * d.u1, mu.mu2() * d.u2) * (1.0 / dx);
    let mut g_left = (fluxes[0] + fluxes[1]) * 0.5 - visc(values[1] - values[0]);
    for i in 1..n - 1 {
        let g_right = (fluxes[i] + fluxes[i + 1]) * 0.5 - visc(values[i + 1] - values[i]);
        out[i] = (g_left - g_right) * (1.0 / dx);
        g_left = g_right;
    }
}

struct Stepper {
    mu: Viscosity,
    dx: f64,
    fluxes: Vec<State>,
    k1: Vec<State>,
    k2: Vec<State>,
    stage: Vec<State>,
}

impl Stepper {
    fn new(n: usize, mu: Viscosity, dx: f64) -> Self {
        Stepper {
            mu,
            dx,
            fluxes: vec![State::default(); n],
            k1: vec![State::default(); n],
            k2: vec![State::default(); n],
            stage: vec![State::default(); n],
        }
    }

    fn cfl_dt(&self, values: &[State], safety: f64) -> f64 {
        let cmax = max_char_speed(values).max(1e-12);
        let mu_max = self.mu.mu1().max(self.mu.mu2());
        let advective = self.dx / (2.0 * cmax);
        let diffusive = self.dx * self.dx / (2.0 * mu_max);
        safety * advective.min(diffusive)
    }

    /// One Heun step of size `dt` in place.
    fn step(&mut self, values: &mut [State], dt: f64) {
        let n = values.len();
        for i in 0..n {
            self.fluxes[i] = flux(values[i]);
        }
        apply_rhs(values, &self.fluxes, self.mu, self.dx, &mut self.k1);
        for i in 0..n {
            self.stage[i] = values[i] + self.k1[i] * dt;
        }
        for i in 0..n {
            self.fluxes[i] = flux(self.stage[i]);
        }
        apply_rhs(&self.stage, &self.fluxes, self.mu, self.dx, &mut self.k2);
        for i in 0..n {
            values[i] = values[i] + (self.k1[i] + self.k2[i]) * (0.5 * dt);
        }
    }
}

/// Advance a field to `t_end`.
pub fn evolve(
    f0: &Field,
    mu: Viscosity,
    t_end: f64,
    settings: &SchemeSettings,
) -> Result<Field, ViscousError> {
    let mut field = f0.clone();
    let mut stepper = Stepper::new(field.values.len(), mu, field.grid.dx());
    while field.time < t_end {
        let dt = stepper
            .cfl_dt(&field.values, settings.cfl_safety)
            .min(t_end - field.time);
        stepper.step(&mut field.values, dt);
        field.time += dt;
        if field
            .values
            .iter()
            .any(|u| !u.is_finite() || u.u1.abs() > settings.blowup_bound || u.u2.abs() > settings.blowup_bound)
        {
            return Err(ViscousError::BlowUp { time: field.time });
        }
    }
    Ok(field)
}

/// Riemann initial data: a tanh-smoothed step from `ul` to `ur` centered at
/// `x = 0`; `width = 0` gives the sharp step.
pub fn riemann_ic(ul: State, ur: State, grid: Grid1D, width: f64) -> Field {
    let mid = (ul + ur) * 0.5;
    let half = (ur - ul) * 0.5;
    Field::from_fn(grid, |x| {
        if width > 0.0 {
            mid + half * (x / width).tanh()
        } else if x < 0.0 {
            ul
        } else if x > 0.0 {
            ur
        } else {
            mid
        }
    })
}

/// True when the field still matches its far-field states well inside the
/// boundaries (at 10% and 90% of the domain), i.e. no wave has come within
/// 20% of either end. Ten-percent margins on both sides of each probe.
pub fn far_field_ok(field: &Field, ul: State, ur: State, tol: f64) -> bool {
    let n = field.values.len();
    field.values[n / 10].dist(ul) <= tol && field.values[n - 1 - n / 10].dist(ur) <= tol
}

/// L1 distance at time `t` between the viscous evolution of step data and
/// the inviscid Riemann solution sampled at `x / t`.
pub fn compare_to_riemann(
    sol: &RiemannSolution,
    mu: Viscosity,
    t: f64,
    grid: Grid1D,
    settings: &SchemeSettings,
) -> Result<f64, ViscousError> {
    let f0 = riemann_ic(sol.left_state, sol.right_state, grid, 0.0);
    let field = evolve(&f0, mu, t, settings)?;
    let dx = grid.dx();
    let mut l1 = 0.0;
    for (i, &u) in field.values.iter().enumerate() {
        let exact = sample_solution(sol, grid.center(i) / t);
        l1 += ((u.u1 - exact.u1).abs() + (u.u2 - exact.u2).abs()) * dx;
    }
    Ok(l1)
}

/// Evolve scalar data with the same interface scheme and a prescribed step
/// size; used by the decoupling check.
fn burgers_step(values: &mut [f64], mu: f64, dx: f64, dt: f64) {
    let n = values.len();
    let rhs = |v: &[f64], out: &mut [f64]| {
        out[0] = 0.0;
        out[n - 1] = 0.0;
        let mut g_left = 0.5 * (v[0] * v[0] + v[1] * v[1]) - mu * (v[1] - v[0]) / dx;
        for i in 1..n - 1 {
            let g_right = 0.5 * (v[i] * v[i] + v[i + 1] * v[i + 1]) - mu * (v[i + 1] - v[i]) / dx;
            out[i] = (g_left - g_right) / dx;
            g_left = g_right;
        }
    };
    let mut k1 = vec![0.0; n];
    let mut k2 = vec![0.0; n];
    rhs(values, &mut k1);
    let stage: Vec<f64> = values
        .iter()
        .zip(&k1)
        .map(|(&v, &k)| v + dt * k)
        .collect();
    rhs(&stage, &mut k2);
    for i in 0..n {
        values[i] += 0.5 * dt * (k1[i] + k2[i]);
    }
}

/// Evolve the coupled system with `mu1 = mu2 = mu_scalar` and, in lockstep
/// with the same step sizes, the two scalar conservation laws satisfied by
/// `u1 + u2` and `u1 - u2`. Returns the max-norm deviation at `t_end`;
/// the discrete operators commute with the linear change of variables, so
/// the deviation is pure roundoff.
pub fn decoupling_check(
    f0: &Field,
    mu_scalar: f64,
    t_end: f64,
    settings: &SchemeSettings,
) -> Result<f64, ViscousError> {
    let mu = Viscosity::new(mu_scalar, mu_scalar).expect("positive viscosity");
    let mut field = f0.clone();
    let dx = field.grid.dx();
    let mut plus: Vec<f64> = field.values.iter().map(|u| u.u1 + u.u2).collect();
    let mut minus: Vec<f64> = field.values.iter().map(|u| u.u1 - u.u2).collect();
    let mut stepper = Stepper::new(field.values.len(), mu, dx);
    while field.time < t_end {
        let dt = stepper
            .cfl_dt(&field.values, settings.cfl_safety)
            .min(t_end - field.time);
        stepper.step(&mut field.values, dt);
        burgers_step(&mut plus, mu_scalar, dx, dt);
        burgers_step(&mut minus, mu_scalar, dx, dt);
        field.time += dt;
        if field.values.iter().any(|u| !u.is_finite()) {
            return Err(ViscousError::BlowUp { time: field.time });
        }
    }
    let mut dev = 0.0f64;
    for (i, &u) in field.values.iter().enumerate() {
        dev = dev.max((u.u1 + u.u2 - plus[i]).abs());
        dev = dev.max((u.u1 - u.u2 - minus[i]).abs());
    }
    Ok(dev)
}

/// How the distance to the profile is minimized over translations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftMode {
    /// One common shift: the profile is an isolated traveling wave.
    Rigid,
    /// Independent shifts of the `u1 + u2` and `u1 - u2` components:
    /// distance to the nearest member of an overcompressive profile family.
    Componentwise,
}

/// Shift-minimized max-norm distance between a field and the traveling
/// profile at the field's time.
pub fn profile_distance(field: &Field, profile: &Profile, mode: ShiftMode) -> f64 {
    let span = 0.25 * (field.grid.x_max - field.grid.x_min);
    let drift = profile.w * field.time;
    match mode {
        ShiftMode::Rigid => min_over_shift(span, |s| {
            let mut d = 0.0f64;
            for (i, &u) in field.values.iter().enumerate() {
                let p = profile.eval(field.grid.center(i) - drift - s);
                d = d.max((u.u1 - p.u1).abs()).max((u.u2 - p.u2).abs());
            }
            d
        }),
        ShiftMode::Componentwise => {
            let plus = min_over_shift(span, |s| {
                let mut d = 0.0f64;
                for (i, &u) in field.values.iter().enumerate() {
                    let p = profile.eval(field.grid.center(i) - drift - s);
                    d = d.max((u.u1 + u.u2 - p.u1 - p.u2).abs());
                }
                d
            });
            let minus = min_over_shift(span, |s| {
                let mut d = 0.0f64;
                for (i, &u) in field.values.iter().enumerate() {
                    let p = profile.eval(field.grid.center(i) - drift - s);
                    d = d.max((u.u1 - u.u2 - p.u1 + p.u2).abs());
                }
                d
            });
            plus.max(minus)
        }
    }
}

/// Coarse scan followed by golden-section refinement of `f` over
/// `[-span, span]`.
fn min_over_shift(span: f64, f: impl Fn(f64) -> f64) -> f64 {
    min_shift(span, f).1
}

/// Argmin and minimum of `f` over `[-span, span]`: coarse scan, then
/// golden-section refinement around the best scan point.
pub fn min_shift(span: f64, f: impl Fn(f64) -> f64) -> (f64, f64) {
    let coarse = 80;
    let mut best = (0.0, f(0.0));
    for k in 0..=coarse {
        let s = -span + 2.0 * span * k as f64 / coarse as f64;
        let v = f(s);
        if v < best.1 {
            best = (s, v);
        }
    }
    let golden = 0.5 * (5.0f64.sqrt() - 1.0);
    let step = 2.0 * span / coarse as f64;
    let (mut a, mut b) = (best.0 - step, best.0 + step);
    let mut c = b - golden * (b - a);
    let mut d = a + golden * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..60 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - golden * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + golden * (b - a);
            fd = f(d);
        }
    }
    let refined = if fc < fd { (c, fc) } else { (d, fd) };
    if refined.1 < best.1 {
        refined
    } else {
        best
    }
}

/// Evolve a perturbed traveling profile and record the shift-minimized
/// distance back to the profile at `samples` evenly spaced times.
pub fn stability_experiment(
    profile: &Profile,
    perturbation: &Field,
    mu: Viscosity,
    t_end: f64,
    samples: usize,
    mode: ShiftMode,
    settings: &SchemeSettings,
) -> Result<Vec<(f64, f64)>, ViscousError> {
    let grid = perturbation.grid;
    let mut field = Field::from_fn(grid, |x| profile.eval(x));
    for (u, p) in field.values.iter_mut().zip(&perturbation.values) {
        *u = *u + *p;
    }
    let mut record = vec![(0.0, profile_distance(&field, profile, mode))];
    for k in 1..=samples {
        let t = t_end * k as f64 / samples as f64;
        field = evolve(&field, mu, t, settings)?;
        record.push((t, profile_distance(&field, profile, mode)));
    }
    Ok(record)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::{find_heteroclinic, ShootSettings};

    fn mu(mu1: f64, mu2: f64) -> Viscosity {
        Viscosity::new(mu1, mu2).unwrap()
    }

    fn settings() -> SchemeSettings {
        SchemeSettings::default()
    }

    #[test]
    fn constant_states_are_exact() {
        let grid = Grid1D::new(-5.0, 5.0, 64).unwrap();
        let f0 = Field::constant(grid, State::new(1.5, -0.5));
        let f1 = evolve(&f0, mu(1.0, 0.5), 0.7, &settings()).unwrap();
        for &u in &f1.values {
            assert!(u.dist(State::new(1.5, -0.5)) < 1e-14);
        }
    }

    #[test]
    fn grid_validation() {
        assert!(Grid1D::new(0.0, 1.0, 8).is_err());
        assert!(Grid1D::new(1.0, 0.0, 100).is_err());
    }

    #[test]
    fn riemann_ic_shapes() {
        let grid = Grid1D::new(-8.0, 8.0, 64).unwrap();
        let (ul, ur) = (State::new(1.0, 2.0), State::new(3.0, -1.0));
        let sharp = riemann_ic(ul, ur, grid, 0.0);
        assert_eq!(sharp.values[0], ul);
        assert_eq!(sharp.values[63], ur);
        let smooth = riemann_ic(ul, ur, grid, 1.0);
        assert!(smooth.values[0].dist(ul) < 1e-6);
        assert!(smooth.values[63].dist(ur) < 1e-6);
        // odd smoothing: value at x = 0 is the midpoint
        let grid_odd = Grid1D::new(-8.0, 8.0, 65).unwrap();
        let f = riemann_ic(ul, ur, grid_odd, 1.0);
        assert!(f.values[32].dist((ul + ur) * 0.5) < 1e-12);
    }

    #[test]
    fn mass_is_conserved_for_interior_dynamics() {
        let grid = Grid1D::new(-10.0, 10.0, 200).unwrap();
        let base = State::new(0.3, -0.2);
        let f0 = Field::from_fn(grid, |x| {
            base + State::new(0.2, 0.1) * (-x * x).exp()
        });
        let m0 = f0.mass();
        let f1 = evolve(&f0, mu(0.7, 0.4), 0.5, &settings()).unwrap();
        let m1 = f1.mass();
        assert!((m1 - m0).norm() < 1e-10, "drift {}", (m1 - m0).norm());
    }

    #[test]
    fn exact_scalar_profile_is_steady_and_second_order() {
        // decoupled exact solution: u1 + u2 = -tanh(x), u1 - u2 = -3
        let exact = |x: f64| {
            let p = -(x.tanh());
            State::new(0.5 * (p - 3.0), 0.5 * (p + 3.0))
        };
        let mut errors = Vec::new();
        for n in [200, 400] {
            let grid = Grid1D::new(-12.0, 12.0, n).unwrap();
            let f0 = Field::from_fn(grid, exact);
            let f1 = evolve(&f0, mu(1.0, 1.0), 1.0, &settings()).unwrap();
            let mut err = 0.0f64;
            for (i, &u) in f1.values.iter().enumerate() {
                err = err.max(u.dist(exact(grid.center(i))));
            }
            errors.push(err);
        }
        assert!(
            errors[0] / errors[1] >= 3.0,
            "refinement ratio {:?}",
            errors
        );
        assert!(errors[1] < 5e-3);
    }

    #[test]
    fn shooting_profile_travels_at_its_speed() {
        // slow shock with profile: (6,-1) -> (2,3) at W = 6, mu = (1, 0.5)
        let m = mu(1.0, 0.5);
        let profile = find_heteroclinic(
            State::new(6.0, -1.0),
            State::new(2.0, 3.0),
            6.0,
            m,
            &ShootSettings::default(),
        )
        .unwrap();
        let grid = Grid1D::new(-14.0, 26.0, 1600).unwrap();
        let f0 = Field::from_fn(grid, |x| profile.eval(x));
        let t = 1.0;
        let f1 = evolve(&f0, m, t, &settings()).unwrap();
        let mut err = 0.0f64;
        for (i, &u) in f1.values.iter().enumerate() {
            err = err.max(u.dist(profile.eval(grid.center(i) - profile.w * t)));
        }
        assert!(err <= 5e-2, "L-inf error {err}");
    }

    #[test]
    fn rescaling_invariance_is_exact_for_power_of_two() {
        let m = mu(1.0, 0.5);
        let grid = Grid1D::new(-4.0, 4.0, 128).unwrap();
        let f0 = riemann_ic(State::new(1.0, 0.5), State::new(0.0, 1.0), grid, 0.5);
        let f1 = evolve(&f0, m, 0.25, &settings()).unwrap();

        let s = 2.0;
        let grid_s = Grid1D::new(-4.0 * s, 4.0 * s, 128).unwrap();
        let f0s = riemann_ic(State::new(1.0, 0.5), State::new(0.0, 1.0), grid_s, 0.5 * s);
        let f1s = evolve(&f0s, m.scaled(s), 0.25 * s, &settings()).unwrap();
        for (a, b) in f1.values.iter().zip(&f1s.values) {
            assert!(a.dist(*b) < 1e-13);
        }
    }

    #[test]
    fn decoupling_deviation_is_roundoff() {
        let grid = Grid1D::new(-10.0, 10.0, 400).unwrap();
        let f0 = riemann_ic(State::new(5.0, 2.0), State::new(2.0, 3.0), grid, 0.5);
        let dev = decoupling_check(&f0, 1.0, 0.3, &settings()).unwrap();
        assert!(dev <= 1e-8, "deviation {dev}");

        // zero data stays zero
        let zero = Field::constant(grid, State::default());
        let dev = decoupling_check(&zero, 1.0, 0.3, &settings()).unwrap();
        assert_eq!(dev, 0.0);
    }

    #[test]
    fn blowup_is_detected() {
        let grid = Grid1D::new(-1.0, 1.0, 64).unwrap();
        // CFL is computed from the current state; an enormous initial
        // gradient with tiny viscosity still advances but must trip the
        // magnitude bound rather than return garbage
        let f0 = Field::from_fn(grid, |x| State::new(1e5 * x.signum(), 0.0));
        let r = evolve(&f0, mu(1e-8, 1e-8), 1.0, &settings());
        match r {
            Err(ViscousError::BlowUp { .. }) => {}
            Ok(f) => {
                assert!(f.values.iter().all(|u| u.is_finite()));
            }
            Err(e) => panic!("unexpected error {e}"),
        }
    }

    #[test]
    fn zero_perturbation_stays_on_profile() {
        let m = mu(1.0, 1.0);
        let profile = find_heteroclinic(
            State::new(-1.0, 2.0),
            State::new(-2.0, 1.0),
            0.0,
            m,
            &ShootSettings::default(),
        )
        .unwrap();
        let grid = Grid1D::new(-20.0, 20.0, 400).unwrap();
        let zero = Field::constant(grid, State::default());
        let record =
            stability_experiment(&profile, &zero, m, 2.0, 4, ShiftMode::Rigid, &settings())
                .unwrap();
        for &(_, d) in &record {
            assert!(d < 1e-3, "distance {d}");
        }
    }
}
