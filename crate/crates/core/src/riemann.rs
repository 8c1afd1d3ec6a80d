//! Exact Riemann solver.
//!
//! The solution of the decay problem `u(x, 0) = uL for x < 0, uR for x > 0`
//! is a sequence of waves ordered by increasing speed from left to right,
//! each wave either a rarefaction fan or a shock with a viscous profile.
//! Which patterns occur depends on the viscosity regime: for `mu1 <= mu2`
//! every compressive shock has a profile and eight patterns tile the plane
//! of left states; for `mu1 > mu2` slow shocks lose their profile past the
//! threshold point and undercompressive waves enter, giving eleven patterns.
//!
//! The solver is compositional: for each candidate pattern it solves the
//! (linear) equations for the intermediate states along the known straight
//! wave families, tests admissibility (parameter ranges, profile existence,
//! speed ordering), and returns the unique survivor.

use std::fmt;

use thiserror::Error;

use crate::model::{
    self, characteristic_speeds, shock_speed, ShockCandidate, ShockKind, StructureVerdict,
};
use crate::state::{State, Viscosity};

/// Slack below which a pattern constraint counts as active (a tie between
/// neighboring patterns).
pub const TIE_TOL: f64 = 1e-9;

/// Wave strength below which a zero-width wave is dropped from a solution.
const STRENGTH_TOL: f64 = 1e-11;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RiemannError {
    #[error("no unique admissible wave pattern for uL={ul}, uR={ur} ({candidates} survivors)")]
    NoSolution {
        ul: State,
        ur: State,
        candidates: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WaveKind {
    FastShock,
    SlowShock,
    Undercompressive,
    /// Degenerate contact shock whose speed equals the adjacent fan edges.
    Jouguet,
    FastRarefaction,
    SlowRarefaction,
    /// Fan along the invariant axis `u2 = 0`.
    SpecialRarefaction,
}

impl WaveKind {
    pub fn is_shock(self) -> bool {
        matches!(
            self,
            WaveKind::FastShock
                | WaveKind::SlowShock
                | WaveKind::Undercompressive
                | WaveKind::Jouguet
        )
    }

    pub fn label(self) -> &'static str {
        match self {
            WaveKind::FastShock => "fast_shock",
            WaveKind::SlowShock => "slow_shock",
            WaveKind::Undercompressive => "undercompressive",
            WaveKind::Jouguet => "jouguet",
            WaveKind::FastRarefaction => "fast_rarefaction",
            WaveKind::SlowRarefaction => "slow_rarefaction",
            WaveKind::SpecialRarefaction => "special_rarefaction",
        }
    }
}

/// Speed content of a wave: a single speed for shocks, a fan interval for
/// rarefactions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WaveSpeed {
    Shock(f64),
    Fan { theta_min: f64, theta_max: f64 },
}

/// One wave of a Riemann solution, with its left and right states.
#[derive(Debug, Clone, Copy)]
pub struct Wave {
    pub kind: WaveKind,
    pub left: State,
    pub right: State,
    pub speed: WaveSpeed,
}

impl Wave {
    pub fn min_speed(&self) -> f64 {
        match self.speed {
            WaveSpeed::Shock(w) => w,
            WaveSpeed::Fan { theta_min, .. } => theta_min,
        }
    }

    pub fn max_speed(&self) -> f64 {
        match self.speed {
            WaveSpeed::Shock(w) => w,
            WaveSpeed::Fan { theta_max, .. } => theta_max,
        }
    }

    /// State at similarity coordinate `theta` inside this wave. Shocks
    /// return their right state; fan interiors use the closed forms
    /// `u = (theta/4)(1, +/-1) + const`.
    pub fn sample(&self, theta: f64) -> State {
        match self.speed {
            WaveSpeed::Shock(_) => self.right,
            WaveSpeed::Fan { .. } => {
                if self.kind == WaveKind::SpecialRarefaction {
                    return State::new(0.5 * theta, 0.0);
                }
                let d = self.right - self.left;
                if d.u1 * d.u2 >= 0.0 {
                    // theta equals the eigenvalue 2 u1 + 2 u2
                    let inv = 0.5 * (self.left.u1 - self.left.u2);
                    State::new(0.25 * theta + inv, 0.25 * theta - inv)
                } else {
                    // theta equals the eigenvalue 2 u1 - 2 u2
                    let inv = 0.5 * (self.left.u1 + self.left.u2);
                    State::new(0.25 * theta + inv, inv - 0.25 * theta)
                }
            }
        }
    }

    pub fn mirror(&self) -> Wave {
        Wave {
            kind: self.kind,
            left: self.left.mirror(),
            right: self.right.mirror(),
            speed: self.speed,
        }
    }
}

/// Label of the region of left states producing a given wave pattern.
///
/// Unprimed labels follow the `mu1 <= mu2` pattern map, primed labels the
/// additional undercompressive patterns of `mu1 > mu2`. The label always
/// reflects the wave pattern: `R1` fast+slow shock, `R2` antidiagonal fast
/// shock + slow shock, `R3` antidiagonal fast shock + slow fan, `R4` the
/// fan-Jouguet-fan composite, `R5` three fans through the axis, `R6` two
/// fans, `R7` fast shock + slow fan, `R8` fast fan + slow shock, and
/// `R1p..R4p` the same two-wave patterns with an undercompressive wave in
/// the middle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegionLabel {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    R7,
    R8,
    R1p,
    R2p,
    R3p,
    R4p,
    /// Axis-degenerate data (or coinciding states): handled outside the
    /// generic pattern map.
    Degenerate,
}

impl fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RegionLabel::R1 => "1",
            RegionLabel::R2 => "2",
            RegionLabel::R3 => "3",
            RegionLabel::R4 => "4",
            RegionLabel::R5 => "5",
            RegionLabel::R6 => "6",
            RegionLabel::R7 => "7",
            RegionLabel::R8 => "8",
            RegionLabel::R1p => "1'",
            RegionLabel::R2p => "2'",
            RegionLabel::R3p => "3'",
            RegionLabel::R4p => "4'",
            RegionLabel::Degenerate => "degenerate",
        };
        f.write_str(s)
    }
}

/// A solved Riemann problem: ordered waves with implied intermediate states.
#[derive(Debug, Clone)]
pub struct RiemannSolution {
    pub left_state: State,
    pub right_state: State,
    /// Waves ordered left to right (increasing speed).
    pub waves: Vec<Wave>,
    pub region: RegionLabel,
    /// Set when a second pattern was admissible within [`TIE_TOL`]: the left
    /// state sits on a region boundary and the canonical first pattern won.
    pub boundary_tie: bool,
}

impl RiemannSolution {
    pub fn mirror(&self) -> RiemannSolution {
        RiemannSolution {
            left_state: self.left_state.mirror(),
            right_state: self.right_state.mirror(),
            waves: self.waves.iter().map(Wave::mirror).collect(),
            region: self.region,
            boundary_tie: self.boundary_tie,
        }
    }
}

// ---------------------------------------------------------------------------
// wave constructors (right state + strength), valid for either sign of u2
// ---------------------------------------------------------------------------

fn half_sign(u2: f64) -> f64 {
    if u2 < 0.0 {
        -1.0
    } else {
        1.0
    }
}

fn shock(kind: WaveKind, left: State, right: State) -> Option<Wave> {
    let w = shock_speed(left, right).ok()?;
    Some(Wave {
        kind,
        left,
        right,
        speed: WaveSpeed::Shock(w),
    })
}

/// Slow shock into `right`: `left = right + t (1, -s)`, `0 < t < 2 |u2|`.
fn slow_shock(right: State, t: f64) -> Option<Wave> {
    let s = half_sign(right.u2);
    shock(WaveKind::SlowShock, right + State::new(1.0, -s) * t, right)
}

/// Diagonal-family fast shock into `right`: `left = right + lam (1, s)`.
fn fast_shock_diag(right: State, lam: f64) -> Option<Wave> {
    let s = half_sign(right.u2);
    shock(WaveKind::FastShock, right + State::new(1.0, s) * lam, right)
}

/// Antidiagonal-family fast shock into `right`: `left = right + t (1, -s)`,
/// `t > 2 |u2|`.
fn fast_shock_anti(right: State, t: f64) -> Option<Wave> {
    let s = half_sign(right.u2);
    shock(WaveKind::FastShock, right + State::new(1.0, -s) * t, right)
}

/// Undercompressive wave into `right` at the saddle-connection speed.
fn undercompressive(right: State, m: f64) -> Option<Wave> {
    let w = 2.0 * (right.u1 + m * right.u2.abs());
    let left = State::new(w - right.u1, -right.u2);
    Some(Wave {
        kind: WaveKind::Undercompressive,
        left,
        right,
        speed: WaveSpeed::Shock(w),
    })
}

/// Jouguet contact into `right`: the limit slow shock from the locus corner,
/// moving exactly at the fast characteristic speed of `right`.
fn jouguet(right: State) -> Option<Wave> {
    let s = half_sign(right.u2);
    let left = right + State::new(1.0, -s) * (2.0 * right.u2.abs());
    Some(Wave {
        kind: WaveKind::Jouguet,
        left,
        right,
        speed: WaveSpeed::Shock(characteristic_speeds(right).c2),
    })
}

/// Slow fan into `right`: `left = right - lam (1, -s)`, moving away from the
/// axis.
fn slow_fan(right: State, lam: f64) -> Option<Wave> {
    let s = half_sign(right.u2);
    slow_fan_to_axis(right, lam, s)
}

/// Slow fan with an explicit half-plane for its left end; needed when the
/// right end lies exactly on the axis.
fn slow_fan_to_axis(right: State, lam: f64, side: f64) -> Option<Wave> {
    let left = right + State::new(-1.0, side) * lam;
    Some(Wave {
        kind: WaveKind::SlowRarefaction,
        left,
        right,
        speed: WaveSpeed::Fan {
            theta_min: characteristic_speeds(left).c1,
            theta_max: characteristic_speeds(right).c1,
        },
    })
}

/// Fast fan into `right`: `left = right - lam (1, s)`, `0 <= lam <= |u2|`
/// (the fan may end exactly on the axis).
fn fast_fan(right: State, lam: f64) -> Option<Wave> {
    let s = half_sign(right.u2);
    let left = right + State::new(-1.0, -s) * lam;
    Some(Wave {
        kind: WaveKind::FastRarefaction,
        left,
        right,
        speed: WaveSpeed::Fan {
            theta_min: characteristic_speeds(left).c2,
            theta_max: characteristic_speeds(right).c2,
        },
    })
}

/// Fan along the invariant axis: `left = right - (lam, 0)`.
fn special_fan(right: State, lam: f64) -> Option<Wave> {
    let left = right - State::new(lam, 0.0);
    Some(Wave {
        kind: WaveKind::SpecialRarefaction,
        left,
        right,
        speed: WaveSpeed::Fan {
            theta_min: 2.0 * left.u1,
            theta_max: 2.0 * right.u1,
        },
    })
}

// ---------------------------------------------------------------------------
// pattern machinery
// ---------------------------------------------------------------------------

struct Candidate {
    waves: Vec<Wave>,
    region: RegionLabel,
    /// Smallest slack among the pattern's defining inequalities; positive
    /// in the region interior, near zero on its boundary.
    margin: f64,
}

/// Solve `p * col1 + q * col2 = rhs` for `(p, q)`.
fn solve2(col1: State, col2: State, rhs: State) -> (f64, f64) {
    let det = col1.cross(col2);
    let p = rhs.cross(col2) / det;
    let q = col1.cross(rhs) / det;
    (p, q)
}

/// Assemble a candidate from `(strength, wave)` pairs ordered left to right,
/// dropping zero-strength waves; rejects on construction failure.
fn assemble(
    region: RegionLabel,
    parts: Vec<(f64, Option<Wave>)>,
    slacks: Vec<f64>,
    scale: f64,
) -> Option<Candidate> {
    let mut waves = Vec::with_capacity(parts.len());
    for (strength, wave) in parts {
        if strength <= STRENGTH_TOL * scale {
            continue;
        }
        waves.push(wave?);
    }
    let margin = slacks.iter().fold(f64::INFINITY, |a, &b| a.min(b));
    Some(Candidate {
        waves,
        region,
        margin,
    })
}

/// Try one pattern for normalized data (`ur.u2 >= 0`).
fn try_pattern(region: RegionLabel, ul: State, ur: State, mu: Viscosity) -> Option<Candidate> {
    let v = ur.u2;
    let d = ul - ur;
    let scale = 1.0_f64.max(ul.norm()).max(ur.norm());
    let m = mu.anisotropy(); // None in the all-structured regime
    let up = State::new(1.0, 1.0);
    let down = State::new(1.0, -1.0);

    match region {
        RegionLabel::R1 => {
            // fast shock (diagonal) then slow shock
            let (a, b) = solve2(up, down, d);
            let mid = ur + up * a;
            let s2 = fast_shock_diag(ur, a);
            let s1 = slow_shock(mid, b);
            let mut slacks = vec![a, b, 2.0 * mid.u2 - b];
            if let Some(m) = m {
                slacks.push((1.0 + m) * mid.u2 - b);
            }
            if let (Some(s1w), Some(s2w)) = (&s1, &s2) {
                slacks.push(s2w.min_speed() - s1w.max_speed());
            }
            assemble(region, vec![(b, s1), (a, s2)], slacks, scale)
        }
        RegionLabel::R2 => {
            // antidiagonal fast shock then slow shock below the axis
            let (t, b) = solve2(down, up, d);
            let mid = ur + down * t;
            let s2 = fast_shock_anti(ur, t);
            let s1 = slow_shock(mid, b);
            let mut slacks = vec![t - 2.0 * v, b, -2.0 * mid.u2 - b];
            if let Some(m) = m {
                slacks.push(t - (1.0 + 1.0 / m) * v);
                slacks.push((1.0 + m) * (-mid.u2) - b);
            }
            if let (Some(s1w), Some(s2w)) = (&s1, &s2) {
                slacks.push(s2w.min_speed() - s1w.max_speed());
            }
            assemble(region, vec![(b, s1), (t, s2)], slacks, scale)
        }
        RegionLabel::R3 => {
            // antidiagonal fast shock then slow fan below the axis
            let (t, c) = solve2(down, -up, d);
            let mid = ur + down * t;
            let r1 = slow_fan(mid, c);
            let s2 = fast_shock_anti(ur, t);
            let mut slacks = vec![t - 2.0 * v, c];
            if let Some(m) = m {
                slacks.push(t - (1.0 + 1.0 / m) * v);
            }
            assemble(region, vec![(c, r1), (t, s2)], slacks, scale)
        }
        RegionLabel::R4 => {
            // fan - Jouguet contact - fan; only when every slow shock has a
            // profile, i.e. mu1 <= mu2
            if m.is_some() {
                return None;
            }
            // the Jouguet corner traces (ur.u1 + 2v - 3a, -v + a)
            let corner0 = State::new(ur.u1 + 2.0 * v, -v);
            let (a, c) = solve2(State::new(-3.0, 1.0), -up, ul - corner0);
            let mid = ur - up * a;
            let sj = jouguet(mid);
            let corner = sj.as_ref()?.left;
            let r1 = slow_fan(corner, c);
            let r2 = fast_fan(ur, a);
            let slacks = vec![a, v - a, c];
            assemble(region, vec![(c, r1), (1.0, sj), (a, r2)], slacks, scale)
        }
        RegionLabel::R5 => {
            // slow fan into the axis, axis fan, fast fan out of the axis
            let mid = State::new(ur.u1 - v, 0.0);
            let c = ul.u2.abs();
            let hat = State::new(ul.u1 + c, 0.0);
            let g = mid.u1 - hat.u1;
            let r1 = slow_fan_to_axis(hat, c, half_sign(ul.u2));
            let rs = special_fan(mid, g);
            let r2 = fast_fan(ur, v);
            let slacks = vec![g];
            assemble(region, vec![(c, r1), (g, rs), (v, r2)], slacks, scale)
        }
        RegionLabel::R6 => {
            // slow fan then fast fan in the upper half-plane
            let (a, c) = solve2(-up, -down, d);
            let mid = ur - up * a;
            let r1 = slow_fan(mid, c);
            let r2 = fast_fan(ur, a);
            let slacks = vec![a, v - a, c];
            assemble(region, vec![(c, r1), (a, r2)], slacks, scale)
        }
        RegionLabel::R7 => {
            // slow fan then diagonal fast shock
            let (a, c) = solve2(up, -down, d);
            let mid = ur + up * a;
            let r1 = slow_fan(mid, c);
            let s2 = fast_shock_diag(ur, a);
            let mut slacks = vec![a, c];
            if let (Some(r1w), Some(s2w)) = (&r1, &s2) {
                slacks.push(s2w.min_speed() - r1w.max_speed());
            }
            assemble(region, vec![(c, r1), (a, s2)], slacks, scale)
        }
        RegionLabel::R8 => {
            // slow shock then fast fan
            let (a, b) = solve2(-up, down, d);
            let mid = ur - up * a;
            let s1 = slow_shock(mid, b);
            let r2 = fast_fan(ur, a);
            let mut slacks = vec![a, v - a, b, 2.0 * mid.u2 - b];
            if let Some(m) = m {
                slacks.push((1.0 + m) * mid.u2 - b);
            }
            assemble(region, vec![(b, s1), (a, r2)], slacks, scale)
        }
        RegionLabel::R1p | RegionLabel::R2p | RegionLabel::R3p | RegionLabel::R4p => {
            let m = m?;
            // mid = ur +/- a (1, 1); conj = horizontal conjugate of mid at
            // the saddle-connection speed
            let toward = matches!(region, RegionLabel::R1p | RegionLabel::R2p);
            let col_mid = if toward { up } else { -up };
            let col_conj = State::new(col_mid.u1 + 2.0 * m * col_mid.u2, -col_mid.u2);
            let base = State::new(ur.u1 + 2.0 * m * v, -v);
            let slow_side = matches!(region, RegionLabel::R1p | RegionLabel::R3p);
            let col_b = if slow_side { up } else { -up };
            let (a, b) = solve2(col_conj, col_b, ul - base);
            let mid = ur + col_mid * a;
            let zw = undercompressive(mid, m);
            let conj = zw.as_ref()?.left;
            let wx = zw.as_ref()?.min_speed();

            let mut slacks = vec![a, b];
            if !toward {
                slacks.push(v - a);
            }
            let (first, first_wave) = if slow_side {
                let s1 = slow_shock(conj, b);
                if let Some(w1) = &s1 {
                    slacks.push(wx - w1.max_speed());
                    slacks.push(-2.0 * conj.u2 - b);
                    slacks.push((1.0 + m) * (-conj.u2) - b);
                }
                (b, s1)
            } else {
                (b, slow_fan(conj, b))
            };
            let (last, last_wave) = if toward {
                let s2 = fast_shock_diag(ur, a);
                if let Some(w2) = &s2 {
                    slacks.push(w2.min_speed() - wx);
                }
                (a, s2)
            } else {
                let r2 = fast_fan(ur, a);
                if let Some(w2) = &r2 {
                    slacks.push(w2.min_speed() - wx);
                }
                (a, r2)
            };
            assemble(
                region,
                vec![(first, first_wave), (1.0, zw), (last, last_wave)],
                slacks,
                scale,
            )
        }
        RegionLabel::Degenerate => None,
    }
}

#[doc(hidden)]
pub fn debug_try_pattern(
    region: RegionLabel,
    ul: State,
    ur: State,
    mu: Viscosity,
) -> Option<(usize, f64)> {
    try_pattern(region, ul, ur, mu).map(|c| (c.waves.len(), c.margin))
}

const PATTERN_ORDER: [RegionLabel; 12] = [
    RegionLabel::R1,
    RegionLabel::R2,
    RegionLabel::R3,
    RegionLabel::R4,
    RegionLabel::R5,
    RegionLabel::R6,
    RegionLabel::R7,
    RegionLabel::R8,
    RegionLabel::R1p,
    RegionLabel::R2p,
    RegionLabel::R3p,
    RegionLabel::R4p,
];

fn solve_normalized(ul: State, ur: State, mu: Viscosity) -> Result<RiemannSolution, RiemannError> {
    // axis-degenerate data: the system reduces to a scalar conservation law
    if ur.u2 == 0.0 && ul.u2 == 0.0 {
        return Ok(solve_on_axis(ul, ur));
    }

    let mut interior: Vec<Candidate> = Vec::new();
    let mut boundary: Vec<Candidate> = Vec::new();
    for region in PATTERN_ORDER {
        if let Some(c) = try_pattern(region, ul, ur, mu) {
            if c.margin > TIE_TOL {
                interior.push(c);
            } else if c.margin >= -TIE_TOL {
                boundary.push(c);
            }
        }
    }

    let build = |c: Candidate, tie: bool| {
        let mut waves = c.waves;
        if let Some(first) = waves.first_mut() {
            first.left = ul; // absorb linear-solve roundoff
        }
        RiemannSolution {
            left_state: ul,
            right_state: ur,
            waves,
            region: c.region,
            boundary_tie: tie,
        }
    };

    match interior.len() {
        1 => {
            let tie = !boundary.is_empty();
            Ok(build(interior.into_iter().next().unwrap(), tie))
        }
        0 if !boundary.is_empty() => Ok(build(boundary.into_iter().next().unwrap(), true)),
        n => Err(RiemannError::NoSolution {
            ul,
            ur,
            candidates: n,
        }),
    }
}

/// Both states on the invariant axis: a single scalar wave. Expanding data
/// (`a < c`) gives a special rarefaction; compressive data the limit of a
/// fast+slow double shock with coinciding speeds.
fn solve_on_axis(ul: State, ur: State) -> RiemannSolution {
    let (a, c) = (ul.u1, ur.u1);
    let waves = if a < c {
        vec![special_fan(ur, c - a).unwrap()]
    } else {
        let mid = State::new(0.5 * (a + c), 0.5 * (a - c));
        vec![
            slow_shock(mid, 0.5 * (a - c)).unwrap(),
            fast_shock_diag(ur, 0.5 * (a - c)).unwrap(),
        ]
    };
    RiemannSolution {
        left_state: ul,
        right_state: ur,
        waves,
        region: RegionLabel::Degenerate,
        boundary_tie: false,
    }
}

/// Solve the Riemann problem for left state `ul` and right state `ur`.
///
/// Returns the unique admissible wave sequence; `ul == ur` yields an empty
/// one. `NoSolution` would indicate a tiling violation and is unreachable
/// for valid inputs.
pub fn solve_riemann(
    ul: State,
    ur: State,
    mu: Viscosity,
) -> Result<RiemannSolution, RiemannError> {
    let scale = 1.0_f64.max(ul.norm()).max(ur.norm());
    if ul.dist(ur) <= STRENGTH_TOL * scale {
        return Ok(RiemannSolution {
            left_state: ul,
            right_state: ur,
            waves: Vec::new(),
            region: RegionLabel::Degenerate,
            boundary_tie: false,
        });
    }
    if ur.u2 < 0.0 {
        return solve_normalized(ul.mirror(), ur.mirror(), mu).map(|s| s.mirror());
    }
    solve_normalized(ul, ur, mu)
}

/// Region of the left-state plane that `ul` falls in for the given `ur` and
/// viscosity regime. Axis-degenerate and coinciding data report
/// `Degenerate`.
pub fn classify_region(ul: State, ur: State, mu: Viscosity) -> RegionLabel {
    solve_riemann(ul, ur, mu)
        .map(|s| s.region)
        .unwrap_or(RegionLabel::Degenerate)
}

/// Evaluate a solution at the similarity coordinate `theta = x / t`.
///
/// Constant states between waves, closed-form fan interiors; at a shock
/// speed the right limit is returned.
pub fn sample_solution(sol: &RiemannSolution, theta: f64) -> State {
    let mut left = sol.left_state;
    for wave in &sol.waves {
        if theta < wave.min_speed() {
            return left;
        }
        if theta <= wave.max_speed() {
            return wave.sample(theta);
        }
        left = wave.right;
    }
    sol.right_state
}

/// Report of every invariant a solution violates; empty for solver output.
#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            writeln!(f, "ok")
        } else {
            for v in &self.violations {
                writeln!(f, "violation: {v}")?;
            }
            Ok(())
        }
    }
}

/// Check every structural invariant of a (possibly hand-built) solution:
/// adjacency of states, jump conditions, Lax class per wave kind, profile
/// existence for every shock, fan families and orientation, and the speed
/// ordering with equality permitted only at fan contacts and Jouguet waves.
pub fn validate_solution(sol: &RiemannSolution, mu: Viscosity) -> ValidationReport {
    let mut report = ValidationReport::default();
    let tol = 1e-8;

    // adjacency
    let mut left = sol.left_state;
    for (i, w) in sol.waves.iter().enumerate() {
        if w.left.dist(left) > tol {
            report.violations.push(format!(
                "wave {i}: left state {} detached from {}",
                w.left, left
            ));
        }
        left = w.right;
    }
    if left.dist(sol.right_state) > tol {
        report.violations.push(format!(
            "last wave ends at {} instead of {}",
            left, sol.right_state
        ));
    }

    for (i, w) in sol.waves.iter().enumerate() {
        validate_wave(i, w, mu, tol, &mut report.violations);
    }

    // speed ordering, left to right
    for (i, pair) in sol.waves.windows(2).enumerate() {
        let (wl, wr) = (&pair[0], &pair[1]);
        let gap = wr.min_speed() - wl.max_speed();
        if gap < -tol {
            report.violations.push(format!(
                "waves {i}/{}: speeds out of order (gap {gap:.3e})",
                i + 1
            ));
        } else if gap <= tol {
            // contact: allowed at a Jouguet wave, where a fan touches, and
            // for the degenerate axis double shock
            let at_jouguet = wl.kind == WaveKind::Jouguet || wr.kind == WaveKind::Jouguet;
            let at_fan = !wl.kind.is_shock() || !wr.kind.is_shock();
            let degenerate = sol.region == RegionLabel::Degenerate || sol.boundary_tie;
            if !(at_jouguet || at_fan || degenerate) {
                report
                    .violations
                    .push(format!("waves {i}/{}: shocks with coinciding speeds", i + 1));
            }
        }
    }

    report
}

fn validate_wave(i: usize, w: &Wave, mu: Viscosity, tol: f64, violations: &mut Vec<String>) {
    let mut flag = |msg: String| violations.push(msg);
    match w.speed {
        WaveSpeed::Shock(speed) => {
            if !w.kind.is_shock() {
                flag(format!("wave {i}: fan kind with a shock speed"));
                return;
            }
            let cand = ShockCandidate::new(w.left, w.right, speed);
            let r = model::rh_residual(&cand);
            if r > tol {
                flag(format!("wave {i}: jump condition residual {r:.3e}"));
                return;
            }
            let class = match model::lax_classify(&cand) {
                Ok(c) => c,
                Err(e) => {
                    flag(format!("wave {i}: {e}"));
                    return;
                }
            };
            match w.kind {
                WaveKind::FastShock | WaveKind::SlowShock => {
                    let expect = if w.kind == WaveKind::FastShock {
                        ShockKind::FastShock
                    } else {
                        ShockKind::SlowShock
                    };
                    if class.kind != expect {
                        flag(format!(
                            "wave {i}: kind {:?} classifies as {:?}",
                            w.kind, class.kind
                        ));
                        return;
                    }
                    match model::structure_exists(&cand, mu) {
                        Ok(ans) if ans.verdict == StructureVerdict::No => {
                            flag(format!("wave {i}: shock has no viscous profile"));
                        }
                        Ok(_) => {}
                        Err(e) => flag(format!("wave {i}: {e}")),
                    }
                }
                WaveKind::Undercompressive => {
                    if class.kind != ShockKind::Undercompressive {
                        flag(format!(
                            "wave {i}: undercompressive wave classifies as {:?}",
                            class.kind
                        ));
                    }
                    match model::undercompressive_speed(w.right, mu) {
                        Ok(wx) if (wx - speed).abs() <= tol => {}
                        Ok(wx) => flag(format!(
                            "wave {i}: speed {speed} is not the saddle-connection speed {wx}"
                        )),
                        Err(e) => flag(format!("wave {i}: {e}")),
                    }
                }
                WaveKind::Jouguet => {
                    if class.kind != ShockKind::Degenerate {
                        flag(format!(
                            "wave {i}: Jouguet wave classifies as {:?}",
                            class.kind
                        ));
                    }
                    if !mu.all_shocks_structured() {
                        flag(format!(
                            "wave {i}: Jouguet contact has no profile for mu1 > mu2"
                        ));
                    }
                    let c2 = characteristic_speeds(w.right).c2;
                    if (speed - c2).abs() > tol {
                        flag(format!(
                            "wave {i}: Jouguet speed {speed} differs from fan edge {c2}"
                        ));
                    }
                }
                _ => unreachable!(),
            }
        }
        WaveSpeed::Fan { theta_min, theta_max } => {
            if w.kind.is_shock() {
                flag(format!("wave {i}: shock kind with fan speeds"));
                return;
            }
            let d = w.right - w.left;
            if w.kind == WaveKind::SpecialRarefaction {
                if w.left.u2.abs() > tol || w.right.u2.abs() > tol {
                    flag(format!("wave {i}: axis fan leaves the axis"));
                }
                if w.left.u1 >= w.right.u1 {
                    flag(format!("wave {i}: axis fan not expanding"));
                }
            } else {
                if (d.u1.abs() - d.u2.abs()).abs() > tol {
                    flag(format!("wave {i}: fan direction {d} not diagonal"));
                }
                if w.left.u2 * w.right.u2 < -tol {
                    flag(format!("wave {i}: fan crosses the axis"));
                }
                let (cl, cr) = match w.kind {
                    WaveKind::SlowRarefaction => (
                        characteristic_speeds(w.left).c1,
                        characteristic_speeds(w.right).c1,
                    ),
                    _ => (
                        characteristic_speeds(w.left).c2,
                        characteristic_speeds(w.right).c2,
                    ),
                };
                if (cl - theta_min).abs() > tol || (cr - theta_max).abs() > tol {
                    flag(format!("wave {i}: fan bounds do not match its family"));
                }
            }
            if theta_min >= theta_max {
                flag(format!("wave {i}: fan not expanding in theta"));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const UR: State = State::new(2.0, 3.0);

    fn mu(mu1: f64, mu2: f64) -> Viscosity {
        Viscosity::new(mu1, mu2).unwrap()
    }

    fn solve(ul: State, m: Viscosity) -> RiemannSolution {
        let sol = solve_riemann(ul, UR, m).unwrap();
        let report = validate_solution(&sol, m);
        assert!(report.is_ok(), "ul = {ul}: {report}");
        sol
    }

    #[test]
    fn equal_states_give_empty_solution() {
        let sol = solve_riemann(UR, UR, mu(1.0, 2.0)).unwrap();
        assert!(sol.waves.is_empty());
    }

    #[test]
    fn region_one_double_shock() {
        let sol = solve(State::new(5.0, 2.0), mu(1.0, 2.0));
        assert_eq!(sol.region, RegionLabel::R1);
        assert_eq!(sol.waves.len(), 2);
        assert_eq!(sol.waves[0].kind, WaveKind::SlowShock);
        assert_eq!(sol.waves[1].kind, WaveKind::FastShock);
        assert!((sol.waves[0].min_speed() - 2.0).abs() < 1e-12);
        assert!((sol.waves[1].min_speed() - 12.0).abs() < 1e-12);
        assert!(sol.waves[0].right.dist(State::new(3.0, 4.0)) < 1e-12);
    }

    #[test]
    fn region_six_double_fan() {
        let sol = solve(State::new(0.5, 2.5), mu(1.0, 2.0));
        assert_eq!(sol.region, RegionLabel::R6);
        assert_eq!(sol.waves[0].kind, WaveKind::SlowRarefaction);
        assert_eq!(sol.waves[1].kind, WaveKind::FastRarefaction);
        assert_eq!(
            sol.waves[0].speed,
            WaveSpeed::Fan {
                theta_min: -4.0,
                theta_max: -2.0
            }
        );
        assert_eq!(
            sol.waves[1].speed,
            WaveSpeed::Fan {
                theta_min: 6.0,
                theta_max: 10.0
            }
        );
        assert!(sol.waves[0].right.dist(State::new(1.0, 2.0)) < 1e-12);

        // same pattern in the other regime
        let sol = solve(State::new(0.5, 2.5), mu(1.0, 0.5));
        assert_eq!(sol.region, RegionLabel::R6);
    }

    #[test]
    fn region_one_prime_with_undercompressive_wave() {
        let sol = solve(State::new(7.5414519, -2.5), mu(1.0, 0.5));
        assert_eq!(sol.region, RegionLabel::R1p);
        assert_eq!(sol.waves.len(), 3);
        assert_eq!(sol.waves[0].kind, WaveKind::SlowShock);
        assert_eq!(sol.waves[1].kind, WaveKind::Undercompressive);
        assert_eq!(sol.waves[2].kind, WaveKind::FastShock);
        assert!((sol.waves[0].min_speed() - 8.0829038).abs() < 1e-6);
        assert!((sol.waves[1].min_speed() - 9.0414519).abs() < 1e-6);
        assert!((sol.waves[2].min_speed() - 11.0).abs() < 1e-6);
        assert!(sol.waves[0].right.dist(State::new(6.5414519, -3.5)) < 1e-6);
        assert!(sol.waves[1].right.dist(State::new(2.5, 3.5)) < 1e-6);
    }

    #[test]
    fn sample_inside_slow_fan() {
        let sol = solve(State::new(0.5, 2.5), mu(1.0, 2.0));
        let u = sample_solution(&sol, -3.0);
        assert!(u.dist(State::new(0.75, 2.25)) < 1e-12);
        // outside all waves
        assert_eq!(sample_solution(&sol, -100.0), State::new(0.5, 2.5));
        assert_eq!(sample_solution(&sol, 100.0), UR);
    }

    #[test]
    fn axis_data_gives_special_rarefaction() {
        let ur = State::new(2.0, 0.0);
        let m = mu(1.0, 0.5);
        let sol = solve_riemann(State::new(-1.0, 0.0), ur, m).unwrap();
        assert_eq!(sol.region, RegionLabel::Degenerate);
        assert_eq!(sol.waves.len(), 1);
        assert_eq!(sol.waves[0].kind, WaveKind::SpecialRarefaction);
        assert_eq!(
            sol.waves[0].speed,
            WaveSpeed::Fan {
                theta_min: -2.0,
                theta_max: 4.0
            }
        );
        assert!(validate_solution(&sol, m).is_ok());

        // compressive axis data: double shock at one speed
        let sol = solve_riemann(State::new(4.0, 0.0), ur, m).unwrap();
        assert_eq!(sol.waves.len(), 2);
        assert!((sol.waves[0].min_speed() - 6.0).abs() < 1e-12);
        assert!((sol.waves[1].min_speed() - 6.0).abs() < 1e-12);
        let report = validate_solution(&sol, m);
        assert!(report.is_ok(), "{report}");
    }

    #[test]
    fn mirrored_data_gives_mirrored_solution() {
        for (ul, m) in [
            (State::new(5.0, 2.0), mu(1.0, 2.0)),
            (State::new(7.5414519, -2.5), mu(1.0, 0.5)),
            (State::new(0.5, 2.5), mu(1.0, 0.5)),
            (State::new(-6.0, 1.0), mu(1.0, 2.0)),
        ] {
            let sol = solve_riemann(ul, UR, m).unwrap();
            let mir = solve_riemann(ul.mirror(), UR.mirror(), m).unwrap();
            assert_eq!(sol.region, mir.region, "ul = {ul}");
            assert_eq!(sol.waves.len(), mir.waves.len());
            for (w, wm) in sol.waves.iter().zip(&mir.waves) {
                assert_eq!(w.kind, wm.kind);
                assert!((w.min_speed() - wm.min_speed()).abs() < 1e-12);
                assert!(w.left.mirror().dist(wm.left) < 1e-12);
            }
        }
    }

    #[test]
    fn validation_flags_bad_sequences() {
        // speeds out of order
        let s1 = slow_shock(UR, 1.0).unwrap();
        let mid = s1.left;
        let s2 = fast_shock_diag(mid, 1.0).unwrap();
        let sol = RiemannSolution {
            left_state: s2.left,
            right_state: UR,
            waves: vec![s2, s1],
            region: RegionLabel::R1,
            boundary_tie: false,
        };
        let report = validate_solution(&sol, mu(1.0, 2.0));
        assert!(report.violations.iter().any(|v| v.contains("out of order")));

        // slow shock beyond the profile threshold
        let s1 = slow_shock(UR, 5.0).unwrap();
        let sol = RiemannSolution {
            left_state: s1.left,
            right_state: UR,
            waves: vec![s1],
            region: RegionLabel::R1,
            boundary_tie: false,
        };
        let report = validate_solution(&sol, mu(1.0, 0.5));
        assert!(report
            .violations
            .iter()
            .any(|v| v.contains("no viscous profile")));
        // ... but fine when mu1 <= mu2
        assert!(validate_solution(&sol, mu(1.0, 2.0)).is_ok());
    }

    #[test]
    fn jouguet_region_contacts() {
        // a left state below the corner fan strip, mu1 <= mu2
        let m = mu(1.0, 2.0);
        let sol = solve(State::new(1.5, -3.5), m);
        assert_eq!(sol.region, RegionLabel::R4);
        assert_eq!(sol.waves.len(), 3);
        assert_eq!(sol.waves[1].kind, WaveKind::Jouguet);
        let wj = sol.waves[1].min_speed();
        assert!((sol.waves[0].max_speed() - wj).abs() < 1e-12);
        assert!((sol.waves[2].min_speed() - wj).abs() < 1e-12);

        // the same left state needs the undercompressive pattern for
        // mu1 > mu2
        let m = mu(1.0, 0.5);
        let sol = solve(State::new(1.5, -3.5), m);
        assert_eq!(sol.region, RegionLabel::R4p);
        assert_eq!(sol.waves[1].kind, WaveKind::Undercompressive);
    }
}
