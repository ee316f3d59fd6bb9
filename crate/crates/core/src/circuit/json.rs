use serde::{Deserialize, Serialize};

use crate::approx::CompileResult;

/// The JSON object printed for one compile.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompileReport {
    pub target: String,
    pub epsilon: f64,
    pub seed: u64,
    pub braid: String,
    pub ft: String,
    pub sigma_count: usize,
    /// Decimal string: the value is usually far below f64 resolution of 1 − d.
    pub distance: String,
    pub trials: u64,
    pub elapsed_ms: u64,
}

impl CompileReport {
    pub fn new(target: &str, epsilon: f64, seed: u64, result: &CompileResult, elapsed_ms: u64) -> Self {
        CompileReport {
            target: target.to_string(),
            epsilon,
            seed,
            braid: result.braid.to_string(),
            ft: result.ft.to_string(),
            sigma_count: result.braid.sigma_count(),
            distance: result.achieved_distance.to_sci_string(12),
            trials: result.trials,
            elapsed_ms,
        }
    }
}

pub fn to_json(report: &CompileReport) -> String {
    serde_json::to_string(report).expect("plain data serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx::compile_rz;
    use crate::rings::BigFloat;
    use crate::rng::CompileRng;

    #[test]
    fn fields_and_round_trip() {
        let mut rng = CompileRng::from_seed(1);
        let r = compile_rz(&BigFloat::from_f64(0.4, 128), &BigFloat::from_f64(1e-4, 64), &mut rng).unwrap();
        let rep = CompileReport::new("rz(0.4)", 1e-4, 1, &r, 3);
        let text = to_json(&rep);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        for key in [
            "target",
            "epsilon",
            "seed",
            "braid",
            "ft",
            "sigma_count",
            "distance",
            "trials",
            "elapsed_ms",
        ] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert!(v["distance"].is_string());
        assert_eq!(serde_json::from_str::<CompileReport>(&text).unwrap(), rep);
    }
}
