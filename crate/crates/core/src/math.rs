//! Small special-function helpers shared by the reflection kernels.

use num_traits::Float;

const LAURENT_CUTOFF: f64 = 1e-4;
const ASYMPTOTIC_CUTOFF: f64 = 20.0;

/// `coth x` for `x > 0`, finite for every positive input.
///
/// Returns `+inf` at `x = 0`.
pub fn coth(x: f64) -> f64 {
    debug_assert!(x >= 0.0);
    if x == 0.0 {
        f64::INFINITY
    } else if x < LAURENT_CUTOFF {
        1.0 / x + x / 3.0
    } else if x > ASYMPTOTIC_CUTOFF {
        let e = (-2.0 * x).exp();
        1.0 + 2.0 * e / (1.0 - e)
    } else {
        1.0 / x.tanh()
    }
}

/// `x · coth x`, the regular form used inside the reflection kernels.
///
/// Equals 1 at `x = 0` and grows like `x` for large `x`.
pub fn x_coth_x(x: f64) -> f64 {
    debug_assert!(x >= 0.0);
    if x < LAURENT_CUTOFF {
        let x2 = x * x;
        1.0 + x2 / 3.0 - x2 * x2 / 45.0
    } else if x > ASYMPTOTIC_CUTOFF {
        let e = (-2.0 * x).exp();
        x * (1.0 + 2.0 * e / (1.0 - e))
    } else {
        x / x.tanh()
    }
}
