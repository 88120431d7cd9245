//! Output shapes shared by the indexed indicators and the brute-force oracles.

use std::collections::HashSet;
use std::fmt;

use num_rational::BigRational;

use super::{ApplnId, AuthorityCode, CountryCode, KindCode};

/// How a cohort came to be.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CohortProvenance {
    Filter {
        ipc_prefix: String,
        filing_year: i32,
        kinds: Vec<KindCode>,
    },
    ExplicitList,
}

impl fmt::Display for CohortProvenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CohortProvenance::Filter { ipc_prefix, filing_year, kinds } => {
                let kinds: Vec<&str> = kinds.iter().map(KindCode::as_str).collect();
                write!(f, "ipc_prefix={ipc_prefix} filing_year={filing_year} kinds={}", kinds.join(","))
            }
            CohortProvenance::ExplicitList => f.write_str("explicit list"),
        }
    }
}

/// An ordered, duplicate-free set of applications (the `our_sample` view).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cohort {
    members: Vec<ApplnId>,
    provenance: CohortProvenance,
}

impl Cohort {
    /// Builds a cohort from already ordered members; later duplicates are
    /// dropped.
    pub fn new(members: impl IntoIterator<Item = ApplnId>, provenance: CohortProvenance) -> Self {
        let mut seen = HashSet::new();
        let members = members.into_iter().filter(|id| seen.insert(*id)).collect();
        Cohort { members, provenance }
    }

    pub fn explicit(members: impl IntoIterator<Item = ApplnId>) -> Self {
        Cohort::new(members, CohortProvenance::ExplicitList)
    }

    pub fn members(&self) -> &[ApplnId] {
        &self.members
    }

    pub fn provenance(&self) -> &CohortProvenance {
        &self.provenance
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowOrder {
    /// `ORDER BY appln_id`
    ApplnIdAsc,
    /// `ORDER BY value DESC, appln_id ASC`
    ValueDescApplnIdAsc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndicatorRow {
    pub appln_id: ApplnId,
    pub value: u64,
}

/// Per-application indicator output: one row per application at most.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndicatorTable {
    pub value_column: &'static str,
    pub order: RowOrder,
    pub rows: Vec<IndicatorRow>,
}

impl IndicatorTable {
    pub fn get(&self, appln_id: ApplnId) -> Option<u64> {
        self.rows.iter().find(|r| r.appln_id == appln_id).map(|r| r.value)
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

/// A PCT application and one of its national-phase entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NationalPhaseRow {
    pub pct_appln_id: ApplnId,
    pub pct_appln_auth: AuthorityCode,
    pub pct_appln_nr: String,
    pub pct_appln_kind: KindCode,
    pub entry_appln_id: ApplnId,
    pub entry_appln_auth: AuthorityCode,
}

/// One application/country group before aggregation.
///
/// The share of the group is `tot_in_ctry / tot_in_patent`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalShareRow {
    pub appln_id: ApplnId,
    pub country: Option<CountryCode>,
    pub tot_in_ctry: u64,
    pub tot_in_patent: u64,
}

/// Country total of a fractional count. `None` groups unknown countries and
/// applications without any person of the requested role.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalCountRow {
    pub country: Option<CountryCode>,
    pub fractional_count: BigRational,
}

/// One external publication number row.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ExternalNumberRow {
    pub appln_id: ApplnId,
    pub publn_nr_patstat: String,
    pub publn_nr_external: String,
}
