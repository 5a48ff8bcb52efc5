//! Total variation between truncated geometric and uniform laws.

use mfo_core::TruncatedGeometric;

use crate::error::LabError;

/// `d_TV(TGeo(m, 1 - q), Uniform[m])` by direct summation; 0 at `q = 1`.
pub fn tv_tgeo_uniform(m: usize, q: f64) -> Result<f64, LabError> {
    if m == 0 {
        return Err(LabError::Invalid("support size m must be at least 1".into()));
    }
    if q == 1.0 {
        return Ok(0.0);
    }
    let law = TruncatedGeometric::from_q(m, q)?;
    let u = 1.0 / m as f64;
    Ok(0.5 * (1..=m).map(|k| (law.pmf(k) - u).abs()).sum::<f64>())
}

/// `Σ_{i=1}^n d_TV(TGeo(n - i + 1, 1 - q), Uniform)`: the coupling bound on
/// `d_TV(Mallows(n, q), Mallows(n, 1))`.
pub fn coupling_bound(n: usize, q: f64) -> Result<f64, LabError> {
    (1..=n).map(|m| tv_tgeo_uniform(m, q)).sum()
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(points: &[(f64, f64)]) -> Result<f64, LabError> {
    if points.len() < 2 {
        return Err(LabError::Invalid("need at least two points".into()));
    }
    if points.iter().any(|&(x, y)| !(x > 0.0 && y > 0.0)) {
        return Err(LabError::Invalid("log-log fit needs positive coordinates".into()));
    }
    let k = points.len() as f64;
    let (lx, ly): (Vec<f64>, Vec<f64>) = points.iter().map(|&(x, y)| (x.ln(), y.ln())).unzip();
    let mx = lx.iter().sum::<f64>() / k;
    let my = ly.iter().sum::<f64>() / k;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(LabError::Invalid("x values are all equal".into()));
    }
    Ok(sxy / sxx)
}
