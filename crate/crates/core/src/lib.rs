//! Wave theory for the 2x2 system of conservation laws
//!
//! ```text
//! d/dt u + d/dx dQ/du = 0,      Q(u) = u1^3/3 + u1 u2^2,   u = (u1, u2),
//! ```
//!
//! and its anisotropic viscous regularization
//!
//! ```text
//! d/dt u + d/dx dQ/du = M d2/dx2 u,   M = diag(mu1, mu2),  mu1, mu2 > 0.
//! ```
//!
//! The flux Jacobian has eigenvalues `2 u1 -/+ 2 u2`, so the system is
//! hyperbolic but degenerates on the axis `u2 = 0`. Admissible shocks are
//! those with a viscous profile (a traveling wave of the regularized system),
//! and which shocks have one depends on the viscosity ratio `mu1/mu2` only.
//!
//! The crate is organized in four layers:
//!
//! * [`model`] — closed-form analytic layer: flux, characteristic speeds,
//!   the Hugoniot locus (three straight lines), shock classification, the
//!   profile energy function, saddle-connection speeds and the structure
//!   existence thresholds.
//! * [`structure`] — numerical phase-plane layer: integrates the profile
//!   ODE, shoots separatrices and finds heteroclinic orbits. Serves as the
//!   independent oracle for everything `model` claims in closed form.
//! * [`riemann`] — exact Riemann solver assembling the unique admissible
//!   sequence of structured shocks, rarefaction fans, undercompressive and
//!   Jouguet waves, for both viscosity regimes.
//! * [`viscous`] — finite-difference solver for the regularized system,
//!   used to cross-validate profiles, Riemann solutions (vanishing-viscosity
//!   limit) and the scalar decoupling at `mu1 = mu2`.
//!
//! [`validate`] bundles the heavyweight randomized cross-checks into named
//! suites shared by the CLI and the acceptance tests. [`output`] holds the
//! CSV / structured-text writers.

pub mod model;
pub mod ode;
pub mod output;
pub mod riemann;
pub mod state;
pub mod structure;
pub mod validate;
pub mod viscous;

pub use state::{State, Viscosity};
