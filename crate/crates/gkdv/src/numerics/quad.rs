//! Trapezoidal quadrature on uniform grids.

/// Composite trapezoid rule with spacing `h`.
///
/// Periodic mode treats the samples as one value per cell of a periodic grid
/// (`h * sum v_i`); open mode halves the two end weights.
pub fn trapezoid_integral(values: &[f64], h: f64, periodic: bool) -> f64 {
    assert!(h > 0.0, "grid spacing must be positive");
    if values.is_empty() {
        return 0.0;
    }
    let sum: f64 = values.iter().sum();
    if periodic || values.len() == 1 {
        h * sum
    } else {
        h * (sum - 0.5 * (values[0] + values[values.len() - 1]))
    }
}
