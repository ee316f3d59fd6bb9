//! Least-squares line fits for the scaling experiments.

/// (slope, intercept) of the least-squares line through `points`.
///
/// Needs at least two distinct x values.
pub fn linear_fit(points: &[(f64, f64)]) -> (f64, f64) {
    assert!(points.len() >= 2, "a line needs two points");
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    assert!(sxx > 0.0, "all x values equal");
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}
