//! Deterministic synthetic datasets.

mod golden;
mod random;

use thiserror::Error;

pub use golden::golden_fixture;
pub use random::{generate_random_dataset, GeneratorParams};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FixtureError {
    #[error("invalid generator parameters: {0}")]
    InvalidParams(String),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::validate_dataset;

    #[test]
    fn golden_validates_clean() {
        let report = validate_dataset(&golden_fixture());
        assert!(report.is_clean(), "{report}");
    }

    #[test]
    fn zero_applications_is_empty() {
        let ds = generate_random_dataset(&GeneratorParams { seed: 1, n_applications: 0, n_persons: 0, ..Default::default() })
            .unwrap();
        assert!(ds.is_empty());
    }

    #[test]
    fn seed_seven_validates_clean() {
        let ds = generate_random_dataset(&GeneratorParams::with_seed(7)).unwrap();
        let report = validate_dataset(&ds);
        assert!(report.is_clean(), "{report}");
        assert_eq!(ds.applications.len(), 2_000);
    }

    #[test]
    fn same_seed_same_rows() {
        let a = generate_random_dataset(&GeneratorParams::with_seed(7)).unwrap();
        let b = generate_random_dataset(&GeneratorParams::with_seed(7)).unwrap();
        let c = generate_random_dataset(&GeneratorParams::with_seed(8)).unwrap();
        assert!(a.same_rows(&b));
        assert!(!a.same_rows(&c));
    }

    #[test]
    fn bad_params_are_rejected() {
        for p in [
            GeneratorParams { pct_share: 1.5, ..Default::default() },
            GeneratorParams { missing_share: -0.1, ..Default::default() },
            GeneratorParams { family_p: 0.0, ..Default::default() },
            GeneratorParams { citation_density: f64::NAN, ..Default::default() },
            GeneratorParams { authorities: vec![crate::model::AuthorityCode::WO], ..Default::default() },
        ] {
            assert!(matches!(generate_random_dataset(&p), Err(FixtureError::InvalidParams(_))));
        }
    }
}
