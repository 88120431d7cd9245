//! The ten patent indicators as typed operations over an [`IndexedStore`].
//!
//! Inner-join semantics are kept: an application that the underlying join
//! would drop is absent from the output unless
//! [`IndicatorOptions::emit_defaults`] asks for an explicit default row.
//!
//! [`IndexedStore`]: crate::store::IndexedStore

mod citations;
mod cohort;
mod family;
mod grant;
mod persons;

use std::fmt;
use std::str::FromStr;

use chrono::{Datelike, NaiveDate};
use thiserror::Error;

use crate::model::{AuthorityCode, IndicatorRow, KindCode};

pub use citations::forward_citations_window;
pub use cohort::{national_phase_entries, priority_status, select_cohort};
pub use family::{family_size, geographic_family_size};
pub use grant::{
    external_publication_numbers, formatter_for, grant_status, PublicationNumberFormatter, UkipoFormatter,
};
pub use persons::{fractional_count_by_country, fractional_shares, inventor_country_count};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IndicatorError {
    #[error("invalid role {0:?}; expected inventor or applicant")]
    InvalidRole(String),
    #[error("no publication-number formatter registered for office {0}")]
    UnknownOfficeFormatter(AuthorityCode),
    #[error("invalid cohort filter: {0}")]
    InvalidFilter(String),
}

/// Cohort filter: IPC prefix, filing year, application kinds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohortFilter {
    ipc_prefix: String,
    filing_year: i32,
    kinds: Vec<KindCode>,
}

impl CohortFilter {
    pub const MIN_YEAR: i32 = 1800;
    pub const MAX_YEAR: i32 = 2200;

    /// Filter with the default kinds {A, W}.
    pub fn new(ipc_prefix: &str, filing_year: i32) -> Result<Self, IndicatorError> {
        let kinds = vec![crate::model::kind("A"), crate::model::kind("W")];
        Self::with_kinds(ipc_prefix, filing_year, kinds)
    }

    pub fn with_kinds(ipc_prefix: &str, filing_year: i32, kinds: Vec<KindCode>) -> Result<Self, IndicatorError> {
        if ipc_prefix.trim().is_empty() {
            return Err(IndicatorError::InvalidFilter("IPC prefix is empty".into()));
        }
        if !(Self::MIN_YEAR..=Self::MAX_YEAR).contains(&filing_year) {
            return Err(IndicatorError::InvalidFilter(format!(
                "filing year {filing_year} outside [{}, {}]",
                Self::MIN_YEAR,
                Self::MAX_YEAR
            )));
        }
        let mut kinds = kinds;
        kinds.sort();
        kinds.dedup();
        Ok(CohortFilter { ipc_prefix: ipc_prefix.to_string(), filing_year, kinds })
    }

    pub fn ipc_prefix(&self) -> &str {
        &self.ipc_prefix
    }

    pub fn filing_year(&self) -> i32 {
        self.filing_year
    }

    pub fn kinds(&self) -> &[KindCode] {
        &self.kinds
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct IndicatorOptions {
    /// Emit a default row (size 1 for family size, 0 elsewhere) for
    /// applications the inner join would drop.
    pub emit_defaults: bool,
}

impl IndicatorOptions {
    pub const FAITHFUL: IndicatorOptions = IndicatorOptions { emit_defaults: false };
    pub const WITH_DEFAULTS: IndicatorOptions = IndicatorOptions { emit_defaults: true };
}

/// Which person role a fractional count attributes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    /// `invt_seq_nr > 0`
    Inventor,
    /// `applt_seq_nr > 0`
    Applicant,
}

impl Role {
    pub fn sequence(self, link: &crate::model::PersonApplnLink) -> u32 {
        match self {
            Role::Inventor => link.invt_seq_nr,
            Role::Applicant => link.applt_seq_nr,
        }
    }
}

impl FromStr for Role {
    type Err = IndicatorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inventor" | "inventors" | "invt" => Ok(Role::Inventor),
            "applicant" | "applicants" | "applt" => Ok(Role::Applicant),
            _ => Err(IndicatorError::InvalidRole(s.to_string())),
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::Inventor => "inventor",
            Role::Applicant => "applicant",
        })
    }
}

/// Denominator of an application's country shares.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum Denominator {
    /// Highest sequence number among the application's role rows.
    #[default]
    MaxSequence,
    /// Number of role rows; differs from the above when sequences have gaps.
    RowCount,
}

/// Forward-citation window parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CitationWindow {
    pub cited_office: AuthorityCode,
    pub citing_office: AuthorityCode,
    pub window_years: u32,
}

impl CitationWindow {
    pub fn new(cited_office: AuthorityCode, citing_office: AuthorityCode) -> Self {
        CitationWindow { cited_office, citing_office, window_years: 3 }
    }
}

/// Adds whole years; Feb 29 becomes Feb 28 when the target year is not a
/// leap year.
pub fn add_years(date: NaiveDate, years: u32) -> NaiveDate {
    let year = date.year() + years as i32;
    date.with_year(year)
        .or_else(|| NaiveDate::from_ymd_opt(year, 2, 28))
        .expect("year within chrono range")
}

pub(crate) fn sort_value_desc(rows: &mut [IndicatorRow]) {
    rows.sort_by(|a, b| b.value.cmp(&a.value).then(a.appln_id.cmp(&b.appln_id)));
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ymd(y: i32, m: u32, d: u32) -> NaiveDate {
        NaiveDate::from_ymd_opt(y, m, d).unwrap()
    }

    #[test]
    fn add_years_clamps_leap_day() {
        assert_eq!(add_years(ymd(2004, 2, 29), 3), ymd(2007, 2, 28));
        assert_eq!(add_years(ymd(2004, 2, 29), 4), ymd(2008, 2, 29));
        assert_eq!(add_years(ymd(2006, 7, 13), 3), ymd(2009, 7, 13));
        assert_eq!(add_years(ymd(2006, 7, 13), 0), ymd(2006, 7, 13));
    }

    #[test]
    fn role_parsing() {
        assert_eq!("Inventor".parse::<Role>().unwrap(), Role::Inventor);
        assert_eq!("applicant".parse::<Role>().unwrap(), Role::Applicant);
        assert_eq!("examiner".parse::<Role>(), Err(IndicatorError::InvalidRole("examiner".into())));
    }

    #[test]
    fn filter_bounds() {
        assert!(CohortFilter::new("F03D", 2005).is_ok());
        assert!(CohortFilter::new("  ", 2005).is_err());
        assert!(CohortFilter::new("F03D", 1799).is_err());
        assert!(CohortFilter::new("F03D", 2201).is_err());
        let f = CohortFilter::with_kinds("F03D", 2005, vec![crate::model::kind("W"), crate::model::kind("A"), crate::model::kind("W")]).unwrap();
        assert_eq!(f.kinds().len(), 2);
    }

    proptest! {
        #[test]
        fn add_years_is_monotone(days in 0i64..80_000, a in 0u32..20, b in 0u32..20) {
            let d = ymd(1900, 1, 1) + chrono::Duration::days(days);
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            prop_assert!(add_years(d, lo) <= add_years(d, hi));
            prop_assert!(add_years(d, lo) >= d);
            prop_assert_eq!(add_years(d, lo).year(), d.year() + lo as i32);
        }
    }
}
