//! Least-squares fits and correlation used by the reports and acceptance checks.

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
}

/// Ordinary least squares `y = slope·x + intercept`; `None` with fewer than two
/// distinct `x`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> Option<LinearFit> {
    let n = x.len();
    if n != y.len() || n < 2 {
        return None;
    }
    let mx = x.iter().sum::<f64>() / n as f64;
    let my = y.iter().sum::<f64>() / n as f64;
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let syy: f64 = y.iter().map(|b| (b - my).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = x.iter().zip(y).map(|(a, b)| (b - slope * a - intercept).powi(2)).sum();
    let r2 = if syy == 0.0 { 1.0 } else { 1.0 - ss_res / syy };
    Some(LinearFit { slope, intercept, r2 })
}

/// `ε = a·exp(-b·k^β)` fitted as a line in `(k^β, ln ε)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExpLawFit {
    pub a: f64,
    pub b: f64,
    pub r2: f64,
}

pub fn fit_exp_law(k_max: &[f64], eps: &[f64], beta: f64) -> Option<ExpLawFit> {
    if eps.iter().any(|e| !(*e > 0.0)) {
        return None;
    }
    let x: Vec<f64> = k_max.iter().map(|k| k.powf(beta)).collect();
    let y: Vec<f64> = eps.iter().map(|e| e.ln()).collect();
    let f = linear_fit(&x, &y)?;
    Some(ExpLawFit {
        a: f.intercept.exp(),
        b: -f.slope,
        r2: f.r2,
    })
}

pub fn pearson(x: &[f64], y: &[f64]) -> Option<f64> {
    let n = x.len();
    if n != y.len() || n < 2 {
        return None;
    }
    let mx = x.iter().sum::<f64>() / n as f64;
    let my = y.iter().sum::<f64>() / n as f64;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let syy: f64 = y.iter().map(|b| (b - my).powi(2)).sum();
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    Some(sxy / (sxx * syy).sqrt())
}

/// `max / min` of positive values.
pub fn spread(v: &[f64]) -> f64 {
    let max = v.iter().copied().fold(f64::MIN, f64::max);
    let min = v.iter().copied().fold(f64::MAX, f64::min);
    max / min
}

pub fn argmin(x: &[f64], y: &[f64]) -> Option<f64> {
    x.iter()
        .zip(y)
        .filter(|(_, b)| b.is_finite())
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map(|(a, _)| *a)
}
