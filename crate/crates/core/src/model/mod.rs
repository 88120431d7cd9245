//! Typed rows for the Patstat tables the indicators read.
//!
//! Every table is a plain `Vec` of rows. Missing dates and countries are
//! `None`; the year-9999 sentinel never survives ingest.

mod codes;
mod results;
mod validation;

use std::collections::BTreeMap;
use std::fmt;

use chrono::NaiveDate;

pub use codes::{auth, kind, AuthorityCode, CodeError, CountryCode, KindCode};
pub use results::{
    Cohort, CohortProvenance, ExternalNumberRow, FractionalCountRow, FractionalShareRow,
    IndicatorRow, IndicatorTable, NationalPhaseRow, RowOrder,
};
pub use validation::{validate_dataset, validate_dataset_with_samples, TableReport, ValidationReport};

macro_rules! id_type {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
        pub struct $name(pub u64);

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt(f)
            }
        }

        impl From<u64> for $name {
            fn from(v: u64) -> Self {
                $name(v)
            }
        }
    };
}

id_type!(
    /// `appln_id`, the Patstat surrogate key of an application.
    ApplnId
);
id_type!(
    /// `pat_publn_id`.
    PublnId
);
id_type!(PersonId);
id_type!(
    /// `inpadoc_family_id`.
    FamilyId
);

/// Row of `tls201_appln`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Application {
    pub appln_id: ApplnId,
    pub appln_auth: AuthorityCode,
    pub appln_nr: String,
    pub appln_kind: KindCode,
    pub appln_filing_date: Option<NaiveDate>,
    /// `appln_id` of the PCT application this one derives from; 0 when none.
    pub internat_appln_id: ApplnId,
}

/// Row of `tls211_pat_publn`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Publication {
    pub pat_publn_id: PublnId,
    pub appln_id: ApplnId,
    pub publn_auth: AuthorityCode,
    pub publn_nr: String,
    pub publn_kind: KindCode,
    pub publn_date: Option<NaiveDate>,
    pub publn_first_grant: bool,
}

/// Row of `tls206_person`, reduced to the fields indicators use.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Person {
    pub person_id: PersonId,
    pub person_ctry_code: Option<CountryCode>,
}

/// Row of `tls207_pers_appln`. A sequence number above zero marks the role.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PersonApplnLink {
    pub person_id: PersonId,
    pub appln_id: ApplnId,
    pub invt_seq_nr: u32,
    pub applt_seq_nr: u32,
}

/// Row of `tls209_appln_ipc`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IpcAssignment {
    pub appln_id: ApplnId,
    /// Verbatim symbol, internal padding included (`"F03D   1/00"`).
    pub ipc_class_symbol: String,
}

impl IpcAssignment {
    /// Uppercased symbol with leading blanks removed; prefix matching runs
    /// against this.
    pub fn compare_key(&self) -> String {
        self.ipc_class_symbol.trim_start().to_uppercase()
    }
}

/// Row of `tls204_appln_prior`: `appln_id` claims `prior_appln_id`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PriorityClaim {
    pub appln_id: ApplnId,
    pub prior_appln_id: ApplnId,
    pub prior_appln_seq_nr: Option<u32>,
}

/// Row of `tls219_inpadoc_fam`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyMembership {
    pub appln_id: ApplnId,
    pub inpadoc_family_id: FamilyId,
}

/// Row of `tls212_citation`. `cited_pat_publn_id == 0` means the cited item
/// is not a patent publication.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Citation {
    pub pat_publn_id: PublnId,
    pub cited_pat_publn_id: PublnId,
}

/// The eight Patstat tables this crate understands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Table {
    Appln,
    PatPubln,
    Person,
    PersAppln,
    ApplnIpc,
    ApplnPrior,
    InpadocFam,
    Citation,
}

impl Table {
    pub const ALL: [Table; 8] = [
        Table::Appln,
        Table::PatPubln,
        Table::Person,
        Table::PersAppln,
        Table::ApplnIpc,
        Table::ApplnPrior,
        Table::InpadocFam,
        Table::Citation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Table::Appln => "tls201_appln",
            Table::PatPubln => "tls211_pat_publn",
            Table::Person => "tls206_person",
            Table::PersAppln => "tls207_pers_appln",
            Table::ApplnIpc => "tls209_appln_ipc",
            Table::ApplnPrior => "tls204_appln_prior",
            Table::InpadocFam => "tls219_inpadoc_fam",
            Table::Citation => "tls212_citation",
        }
    }

    pub fn from_name(name: &str) -> Option<Table> {
        Table::ALL.into_iter().find(|t| t.name() == name)
    }
}

impl fmt::Display for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One row that ingest refused, with the 1-based line it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RejectedRow {
    pub line: u64,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TableStats {
    pub file_present: bool,
    pub data_rows: u64,
    pub accepted: u64,
    pub rejected: Vec<RejectedRow>,
    /// Dates carrying the year-9999 placeholder.
    pub sentinel_dates: u64,
    /// Non-empty dates that did not parse.
    pub invalid_dates: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IngestStats {
    pub tables: BTreeMap<Table, TableStats>,
}

impl IngestStats {
    pub fn rejected_total(&self) -> u64 {
        self.tables.values().map(|t| t.rejected.len() as u64).sum()
    }
}

/// All loaded tables. Immutable once built; share it freely across threads.
#[derive(Debug, Clone, Default)]
pub struct PatstatDataset {
    pub applications: Vec<Application>,
    pub publications: Vec<Publication>,
    pub persons: Vec<Person>,
    pub person_links: Vec<PersonApplnLink>,
    pub ipc: Vec<IpcAssignment>,
    pub priority_claims: Vec<PriorityClaim>,
    pub families: Vec<FamilyMembership>,
    pub citations: Vec<Citation>,
    pub stats: IngestStats,
}

impl PatstatDataset {
    /// Field-by-field equality of every table, ignoring ingest statistics.
    pub fn same_rows(&self, other: &PatstatDataset) -> bool {
        self.applications == other.applications
            && self.publications == other.publications
            && self.persons == other.persons
            && self.person_links == other.person_links
            && self.ipc == other.ipc
            && self.priority_claims == other.priority_claims
            && self.families == other.families
            && self.citations == other.citations
    }

    pub fn row_count(&self, table: Table) -> usize {
        match table {
            Table::Appln => self.applications.len(),
            Table::PatPubln => self.publications.len(),
            Table::Person => self.persons.len(),
            Table::PersAppln => self.person_links.len(),
            Table::ApplnIpc => self.ipc.len(),
            Table::ApplnPrior => self.priority_claims.len(),
            Table::InpadocFam => self.families.len(),
            Table::Citation => self.citations.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        Table::ALL.iter().all(|&t| self.row_count(t) == 0)
    }
}
