//! Least-squares helpers shared by the growth, exponent and length fits.

use crate::util::stable_sum;

/// Ordinary least squares of `y` against `x`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    /// Standard error of the slope.
    pub stderr: f64,
    pub r2: f64,
    pub n: usize,
}

/// Fits `y = intercept + slope * x` by least squares.
///
/// Samples are accumulated in value order, so the fit is invariant under any
/// reordering of the input pairs. Panics if fewer than 2 samples.
pub fn line_fit(samples: &[(f64, f64)]) -> LineFit {
    let n = samples.len();
    assert!(n >= 2, "line_fit needs at least 2 samples");
    let mut ordered: Vec<(f64, f64)> = samples.to_vec();
    ordered.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));

    let nf = n as f64;
    let mean = |vals: &mut Vec<f64>| stable_sum(vals) / nf;
    let x_mean = mean(&mut ordered.iter().map(|s| s.0).collect());
    let y_mean = mean(&mut ordered.iter().map(|s| s.1).collect());

    let sxx = stable_sum(&mut ordered.iter().map(|s| (s.0 - x_mean).powi(2)).collect());
    let sxy = stable_sum(
        &mut ordered
            .iter()
            .map(|s| (s.0 - x_mean) * (s.1 - y_mean))
            .collect(),
    );
    let syy = stable_sum(&mut ordered.iter().map(|s| (s.1 - y_mean).powi(2)).collect());

    let slope = sxy / sxx;
    let intercept = y_mean - slope * x_mean;
    let ss_res = stable_sum(
        &mut ordered
            .iter()
            .map(|s| (s.1 - intercept - slope * s.0).powi(2))
            .collect(),
    );
    let r2 = if syy > 0.0 { 1.0 - ss_res / syy } else { 1.0 };
    let stderr = if n > 2 {
        (ss_res / (nf - 2.0) / sxx).sqrt()
    } else {
        0.0
    };
    LineFit {
        slope,
        intercept,
        stderr,
        r2,
        n,
    }
}

/// Fits `y = a + b x + c x^2`; returns `(a, b, c)`.
///
/// Used to detect systematic curvature in residuals. Solves the 3x3 normal
/// equations directly.
pub fn quadratic_fit(samples: &[(f64, f64)]) -> (f64, f64, f64) {
    let n = samples.len();
    assert!(n >= 3, "quadratic_fit needs at least 3 samples");
    let mut ordered: Vec<(f64, f64)> = samples.to_vec();
    ordered.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));

    // Center x for conditioning.
    let x_mean = stable_sum(&mut ordered.iter().map(|s| s.0).collect()) / n as f64;
    let pow_sum =
        |k: i32| stable_sum(&mut ordered.iter().map(|s| (s.0 - x_mean).powi(k)).collect());
    let m0 = n as f64;
    let (m1, m2, m3, m4) = (pow_sum(1), pow_sum(2), pow_sum(3), pow_sum(4));
    let b0 = stable_sum(&mut ordered.iter().map(|s| s.1).collect());
    let b1 = stable_sum(&mut ordered.iter().map(|s| s.1 * (s.0 - x_mean)).collect());
    let b2 = stable_sum(
        &mut ordered
            .iter()
            .map(|s| s.1 * (s.0 - x_mean).powi(2))
            .collect(),
    );

    let m = nalgebra::Matrix3::new(m0, m1, m2, m1, m2, m3, m2, m3, m4);
    let rhs = nalgebra::Vector3::new(b0, b1, b2);
    let sol = m
        .lu()
        .solve(&rhs)
        .unwrap_or_else(|| nalgebra::Vector3::new(b0 / m0, 0.0, 0.0));
    // Undo the centering: y = a' + b'(x-m) + c(x-m)^2.
    let (ap, bp, c) = (sol[0], sol[1], sol[2]);
    let b = bp - 2.0 * c * x_mean;
    let a = ap - bp * x_mean + c * x_mean * x_mean;
    (a, b, c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_exact_line() {
        let pts: Vec<(f64, f64)> = (1..20).map(|i| (i as f64, 3.0 - 2.0 * i as f64)).collect();
        let fit = line_fit(&pts);
        assert!((fit.slope + 2.0).abs() < 1e-12);
        assert!((fit.intercept - 3.0).abs() < 1e-12);
        assert!(fit.r2 > 1.0 - 1e-12);
        assert!(fit.stderr < 1e-12);
    }

    #[test]
    fn fit_is_order_invariant_bitwise() {
        let pts: Vec<(f64, f64)> = (1..50)
            .map(|i| (i as f64, (i as f64).ln() + 0.1 * (i % 7) as f64))
            .collect();
        let mut rev = pts.clone();
        rev.reverse();
        let (a, b) = (line_fit(&pts), line_fit(&rev));
        assert_eq!(a.slope.to_bits(), b.slope.to_bits());
        assert_eq!(a.stderr.to_bits(), b.stderr.to_bits());
    }

    #[test]
    fn quadratic_recovers_coefficients() {
        let pts: Vec<(f64, f64)> = (0..30)
            .map(|i| {
                let x = i as f64 * 0.5;
                (x, 1.5 - 0.5 * x + 0.25 * x * x)
            })
            .collect();
        let (a, b, c) = quadratic_fit(&pts);
        assert!((a - 1.5).abs() < 1e-9);
        assert!((b + 0.5).abs() < 1e-9);
        assert!((c - 0.25).abs() < 1e-9);
    }
}
