//! Empirical decay-exponent fitting for error traces.

use std::fmt;

use crate::BenchError;

/// Result of a log–log fit. A slope near −1 matches the guaranteed decay
/// of the decreasing-step method on problems with a known solution.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RateFit {
    /// Least-squares slope of log(error) against log(k).
    Slope(f64),
    /// Every error in the window sits below the double-precision floor;
    /// there is no decay left to measure.
    AtNumericalFloor,
}

impl fmt::Display for RateFit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RateFit::Slope(s) => write!(f, "{s}"),
            RateFit::AtNumericalFloor => write!(f, "at numerical floor"),
        }
    }
}

/// Errors this close to zero carry rounding noise instead of decay
/// information and are excluded from fits.
pub const FLOOR: f64 = 1e-14;

/// Least-squares slope of log(error) vs log(k) over indices k in
/// [from, to]. Entries are paired positionally: `ks[i]` is the iteration
/// index of `errors[i]`. Index 0 and sub-floor or nonpositive errors are
/// skipped; if nothing above the floor remains, the window is reported as
/// floored rather than fitted.
pub fn fit_rate(ks: &[usize], errors: &[f64], from: usize, to: usize) -> Result<RateFit, BenchError> {
    if ks.len() != errors.len() {
        return Err(BenchError::Fit(format!(
            "index and error columns differ in length ({} vs {})",
            ks.len(),
            errors.len()
        )));
    }
    if from > to {
        return Err(BenchError::Fit(format!(
            "empty window: from = {from} exceeds to = {to}"
        )));
    }
    let in_window: Vec<(usize, f64)> = ks
        .iter()
        .zip(errors)
        .filter(|(&k, _)| k >= from.max(1) && k <= to)
        .map(|(&k, &e)| (k, e))
        .collect();
    if in_window.is_empty() {
        return Err(BenchError::Fit(format!(
            "window [{from}, {to}] selects no iterations"
        )));
    }
    let points: Vec<(f64, f64)> = in_window
        .iter()
        .filter(|(_, e)| e.is_finite() && *e > FLOOR)
        .map(|(k, e)| ((*k as f64).ln(), e.ln()))
        .collect();
    if points.len() < 2 {
        return Ok(RateFit::AtNumericalFloor);
    }

    let n = points.len() as f64;
    let mean_x = points.iter().map(|(x, _)| x).sum::<f64>() / n;
    let mean_y = points.iter().map(|(_, y)| y).sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (x, y) in &points {
        sxx += (x - mean_x) * (x - mean_x);
        sxy += (x - mean_x) * (y - mean_y);
    }
    if sxx == 0.0 {
        return Err(BenchError::Fit(
            "window needs at least two distinct iteration indices".into(),
        ));
    }
    Ok(RateFit::Slope(sxy / sxx))
}
