//! In-memory Patstat analytics.
//!
//! Load the bibliographic tables from delimited files ([`ingest`]), index
//! them ([`store`]), pick a cohort of applications and compute patent
//! indicators over it ([`indicators`]): national-phase entries, priority
//! status, family sizes, fractional counts by country, international
//! collaboration, windowed forward citations, grant status, and office
//! publication numbers.
//!
//! Every indicator has a brute-force twin in [`oracle`] used to cross-check
//! results. [`fixtures`] builds the golden dataset and seeded random ones.
//!
//! ```
//! use patstat::fixtures::golden_fixture;
//! use patstat::indicators::{family_size, select_cohort, CohortFilter, IndicatorOptions};
//! use patstat::model::ApplnId;
//! use patstat::store::build_store;
//!
//! let store = build_store(golden_fixture()).unwrap();
//! let cohort = select_cohort(&store, &CohortFilter::new("F03D", 2005).unwrap());
//! let sizes = family_size(&store, &cohort, IndicatorOptions::FAITHFUL);
//! assert_eq!(sizes.get(ApplnId(65303)), Some(9));
//! ```

pub mod cli;
pub mod export;
pub mod fixtures;
pub mod indicators;
pub mod ingest;
pub mod model;
pub mod oracle;
pub mod store;
