//! Three-point binomial low-pass filter.

use crate::error::{Error, Result};

/// Replace each point by the weighted average `(v[i-1] + 2 v[i] + v[i+1]) / 4`.
///
/// The stencil annihilates the grid-scale alternating mode while leaving
/// constants untouched. With `preserve_ends` the first and last values are
/// copied through unchanged (the variant used inside the profile solver,
/// where both ends are pinned by boundary conditions); otherwise the stencil
/// wraps periodically.
pub fn low_pass_filter(values: &[f64], preserve_ends: bool) -> Result<Vec<f64>> {
    let n = values.len();
    if n < 3 {
        return Err(Error::InvalidInput(format!(
            "low-pass filter needs at least 3 points (got {n})"
        )));
    }
    let mut out = Vec::with_capacity(n);
    if preserve_ends {
        out.push(values[0]);
        for i in 1..n - 1 {
            out.push(0.25 * (values[i - 1] + 2.0 * values[i] + values[i + 1]));
        }
        out.push(values[n - 1]);
    } else {
        for i in 0..n {
            let prev = values[(i + n - 1) % n];
            let next = values[(i + 1) % n];
            out.push(0.25 * (prev + 2.0 * values[i] + next));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn second_difference_energy(v: &[f64]) -> f64 {
        (1..v.len() - 1)
            .map(|i| {
                let d = v[i - 1] - 2.0 * v[i] + v[i + 1];
                d * d
            })
            .sum()
    }

    #[test]
    fn rejects_short_input() {
        assert!(low_pass_filter(&[1.0, 2.0], true).is_err());
    }

    #[test]
    fn preserves_constants() {
        let v = vec![2.5; 9];
        assert_eq!(low_pass_filter(&v, true).unwrap(), v);
        assert_eq!(low_pass_filter(&v, false).unwrap(), v);
    }

    #[test]
    fn spike_is_halved() {
        let out = low_pass_filter(&[0.0, 1.0, 0.0], true).unwrap();
        assert_eq!(out, vec![0.0, 0.5, 0.0]);
    }

    #[test]
    fn alternating_interior_maps_to_zero() {
        let v = vec![1.0, -1.0, 1.0, -1.0, 1.0, -1.0, 1.0];
        let out = low_pass_filter(&v, true).unwrap();
        for (i, x) in out.iter().enumerate().take(v.len() - 1).skip(1) {
            assert!(x.abs() < 1e-15, "interior point {i} should vanish, got {x}");
        }
    }

    #[test]
    fn periodic_mode_preserves_sum() {
        let v = vec![0.3, -1.2, 4.5, 0.0, 2.2, -0.7, 1.1, 0.4];
        let out = low_pass_filter(&v, false).unwrap();
        let s_in: f64 = v.iter().sum();
        let s_out: f64 = out.iter().sum();
        assert!((s_in - s_out).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn filter_is_linear(
            a in proptest::collection::vec(-10.0f64..10.0, 6),
            b in proptest::collection::vec(-10.0f64..10.0, 6),
            s in -3.0f64..3.0,
        ) {
            let combined: Vec<f64> = a.iter().zip(&b).map(|(x, y)| x + s * y).collect();
            let fa = low_pass_filter(&a, true).unwrap();
            let fb = low_pass_filter(&b, true).unwrap();
            let fc = low_pass_filter(&combined, true).unwrap();
            for i in 0..a.len() {
                prop_assert!((fc[i] - (fa[i] + s * fb[i])).abs() < 1e-10);
            }
        }

        #[test]
        fn repeated_filtering_never_roughens(
            v in proptest::collection::vec(-5.0f64..5.0, 5..40),
        ) {
            let once = low_pass_filter(&v, true).unwrap();
            let twice = low_pass_filter(&once, true).unwrap();
            let e0 = second_difference_energy(&v);
            let e1 = second_difference_energy(&once);
            let e2 = second_difference_energy(&twice);
            prop_assert!(e1 <= e0 + 1e-12 * (1.0 + e0));
            prop_assert!(e2 <= e1 + 1e-12 * (1.0 + e1));
        }
    }
}
