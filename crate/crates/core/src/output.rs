//! Output writers (to come).
