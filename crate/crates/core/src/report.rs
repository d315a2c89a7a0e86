//! Report types shared by the experiment runners, plus small fitting
//! helpers for decay-slope estimates.

use serde::{Deserialize, Serialize};

/// Least-squares line through (x_i, y_i).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    pub max_residual: f64,
}

pub fn fit_line(xs: &[f64], ys: &[f64]) -> LineFit {
    assert!(xs.len() == ys.len() && xs.len() >= 2);
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let max_residual = xs
        .iter()
        .zip(ys)
        .map(|(&x, &y)| (y - slope * x - intercept).abs())
        .fold(0.0, f64::max);
    LineFit {
        slope,
        intercept,
        max_residual,
    }
}

/// Top-level experiment report: config echo, per-case results, verdict.
/// Serialization uses sorted keys (default serde_json maps), so a report
/// is byte-identical across runs modulo `wall_clock_seconds`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EstimateReport {
    pub schema_version: u32,
    pub crate_version: String,
    pub experiment: String,
    pub config: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rng_algorithm: Option<String>,
    pub cases: Vec<serde_json::Value>,
    pub passed: bool,
    pub wall_clock_seconds: f64,
}

impl EstimateReport {
    pub fn new(experiment: &str, config: serde_json::Value) -> Self {
        Self {
            schema_version: 1,
            crate_version: crate::VERSION.to_string(),
            experiment: experiment.to_string(),
            config,
            seed: None,
            rng_algorithm: None,
            cases: Vec::new(),
            passed: true,
            wall_clock_seconds: 0.0,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self.rng_algorithm = Some("chacha8".into());
        self
    }

    pub fn push_case(&mut self, case: serde_json::Value) {
        self.cases.push(case);
    }

    pub fn fail(&mut self) {
        self.passed = false;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_line_recovered() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        let ys: Vec<f64> = xs.iter().map(|x| -2.5 * x + 0.7).collect();
        let f = fit_line(&xs, &ys);
        assert!((f.slope + 2.5).abs() < 1e-12);
        assert!((f.intercept - 0.7).abs() < 1e-12);
        assert!(f.max_residual < 1e-12);
    }

    #[test]
    fn report_serializes_with_sorted_keys() {
        let r = EstimateReport::new("demo", serde_json::json!({"b": 1, "a": 2}));
        let s = serde_json::to_string(&r).unwrap();
        // Default serde_json maps are ordered; "a" printed before "b".
        assert!(s.find("\"a\"").unwrap() < s.find("\"b\"").unwrap());
    }
}
