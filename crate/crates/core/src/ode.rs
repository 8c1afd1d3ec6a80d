//! Adaptive explicit Runge-Kutta integration for planar fields.
//!
//! A plain Dormand-Prince 5(4) pair with PI-free step control is all the
//! profile ODE needs: the field is polynomial and smooth, and the viscosity
//! ratios of interest are O(1), so stiff machinery would be wasted.

use crate::state::State;

/// Integration settings for separatrix shooting.
#[derive(Debug, Clone, Copy)]
pub struct OdeSettings {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_steps: usize,
}

impl Default for OdeSettings {
    fn default() -> Self {
        OdeSettings {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            max_steps: 1_000_000,
        }
    }
}

/// Outcome of one attempted step.
pub struct StepResult {
    pub y: State,
    pub err: f64,
    pub k_last: State,
}

// Dormand-Prince 5(4) coefficients.
const A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// One Dormand-Prince step of size `h` from `y` with cached derivative `k0`.
pub fn dp54_step<F: Fn(State) -> State>(f: &F, y: State, k0: State, h: f64) -> StepResult {
    let mut k = [k0, State::default(), State::default(), State::default(),
        State::default(), State::default(), State::default()];
    for (i, row) in A.iter().enumerate() {
        let mut yi = y;
        for (j, &a) in row.iter().enumerate().take(i + 1) {
            yi = yi + k[j] * (a * h);
        }
        k[i + 1] = f(yi);
    }
    // the 6th stage evaluation already is the 5th-order solution
    let mut y5 = y;
    for (j, &a) in A[5].iter().enumerate() {
        y5 = y5 + k[j] * (a * h);
    }
    let mut err_vec = State::default();
    for (j, &e) in E.iter().enumerate() {
        err_vec = err_vec + k[j] * e;
    }
    StepResult {
        y: y5,
        err: (err_vec * h).norm(),
        k_last: k[6],
    }
}

/// Drive the integration from `y0`, calling `observe` after every accepted
/// step with `(t, y)`. `observe` returns `true` to stop.
///
/// Returns the number of accepted steps, or `None` if the step budget ran
/// out before `observe` asked to stop.
pub fn integrate<F, O>(f: &F, y0: State, settings: &OdeSettings, mut observe: O) -> Option<usize>
where
    F: Fn(State) -> State,
    O: FnMut(f64, State) -> bool,
{
    let mut y = y0;
    let mut t = 0.0;
    let mut k0 = f(y);
    // conservative initial step from the local derivative scale
    let mut h = 1e-4 * (1.0 + y.norm()) / (1.0 + k0.norm());
    let mut accepted = 0;
    while accepted < settings.max_steps {
        let step = dp54_step(f, y, k0, h);
        let tol = settings.abs_tol
            + settings.rel_tol * y.norm().max(step.y.norm()).max(1.0);
        let ratio = step.err / tol;
        if ratio <= 1.0 {
            t += h;
            y = step.y;
            k0 = step.k_last; // FSAL
            accepted += 1;
            if observe(t, y) {
                return Some(accepted);
            }
        }
        let factor = if ratio > 0.0 {
            (0.9 * ratio.powf(-0.2)).clamp(0.2, 5.0)
        } else {
            5.0
        };
        h *= factor;
        if !(h.is_finite() && h > 0.0) {
            return None;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_linear_decay_accurately() {
        // u' = -u, exact e^{-t}
        let f = |u: State| -u;
        let mut last = (0.0, State::default());
        let steps = integrate(&f, State::new(1.0, 2.0), &OdeSettings::default(), |t, u| {
            last = (t, u);
            t >= 5.0
        });
        assert!(steps.is_some());
        let (t, u) = last;
        assert!((u.u1 - (-t).exp()).abs() < 1e-9);
        assert!((u.u2 - 2.0 * (-t).exp()).abs() < 1e-9);
    }

    #[test]
    fn respects_step_budget() {
        let f = |_: State| State::new(1.0, 0.0);
        let settings = OdeSettings {
            max_steps: 10,
            ..OdeSettings::default()
        };
        let out = integrate(&f, State::default(), &settings, |_, _| false);
        assert_eq!(out, None);
    }
}
