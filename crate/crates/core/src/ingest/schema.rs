//! Column layouts of the supported Patstat tables and the row codecs that
//! map them onto model types.

use csv::StringRecord;

use super::date::{classify_date, is_null, DateField};
use crate::model::{
    Application, ApplnId, AuthorityCode, Citation, FamilyMembership, IpcAssignment, KindCode,
    Person, PersonApplnLink, PersonId, PriorityClaim, Publication, PublnId, Table,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColumnType {
    Integer,
    Text,
    /// Two-letter ST.3 code.
    Code,
    Kind,
    Date,
    Flag,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColumnSpec {
    pub name: &'static str,
    pub ty: ColumnType,
    pub nullable: bool,
}

const fn col(name: &'static str, ty: ColumnType, nullable: bool) -> ColumnSpec {
    ColumnSpec { name, ty, nullable }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableSchema {
    pub table: Table,
    pub columns: &'static [ColumnSpec],
}

impl TableSchema {
    pub fn name(&self) -> &'static str {
        self.table.name()
    }

    pub fn column_names(&self) -> impl Iterator<Item = &'static str> {
        self.columns.iter().map(|c| c.name)
    }
}

use ColumnType::*;

pub static APPLN: TableSchema = TableSchema {
    table: Table::Appln,
    columns: &[
        col("appln_id", Integer, false),
        col("appln_auth", Code, false),
        col("appln_nr", Text, false),
        col("appln_kind", Kind, false),
        col("appln_filing_date", Date, true),
        col("internat_appln_id", Integer, true),
    ],
};

pub static PAT_PUBLN: TableSchema = TableSchema {
    table: Table::PatPubln,
    columns: &[
        col("pat_publn_id", Integer, false),
        col("appln_id", Integer, false),
        col("publn_auth", Code, false),
        col("publn_nr", Text, false),
        col("publn_kind", Kind, false),
        col("publn_date", Date, true),
        col("publn_first_grant", Flag, true),
    ],
};

pub static PERSON: TableSchema = TableSchema {
    table: Table::Person,
    columns: &[col("person_id", Integer, false), col("person_ctry_code", Code, true)],
};

pub static PERS_APPLN: TableSchema = TableSchema {
    table: Table::PersAppln,
    columns: &[
        col("person_id", Integer, false),
        col("appln_id", Integer, false),
        col("applt_seq_nr", Integer, true),
        col("invt_seq_nr", Integer, true),
    ],
};

pub static APPLN_IPC: TableSchema = TableSchema {
    table: Table::ApplnIpc,
    columns: &[col("appln_id", Integer, false), col("ipc_class_symbol", Text, false)],
};

pub static APPLN_PRIOR: TableSchema = TableSchema {
    table: Table::ApplnPrior,
    columns: &[
        col("appln_id", Integer, false),
        col("prior_appln_id", Integer, false),
        col("prior_appln_seq_nr", Integer, true),
    ],
};

pub static INPADOC_FAM: TableSchema = TableSchema {
    table: Table::InpadocFam,
    columns: &[col("appln_id", Integer, false), col("inpadoc_family_id", Integer, false)],
};

pub static CITATION: TableSchema = TableSchema {
    table: Table::Citation,
    columns: &[col("pat_publn_id", Integer, false), col("cited_pat_publn_id", Integer, true)],
};

pub fn schema_for(table: Table) -> &'static TableSchema {
    match table {
        Table::Appln => &APPLN,
        Table::PatPubln => &PAT_PUBLN,
        Table::Person => &PERSON,
        Table::PersAppln => &PERS_APPLN,
        Table::ApplnIpc => &APPLN_IPC,
        Table::ApplnPrior => &APPLN_PRIOR,
        Table::InpadocFam => &INPADOC_FAM,
        Table::Citation => &CITATION,
    }
}

/// Sentinel/invalid date counters filled while decoding a file.
#[derive(Debug, Default, Clone, Copy)]
pub struct DateTally {
    pub sentinel: u64,
    pub invalid: u64,
}

/// One record viewed through the schema: `get(i)` returns the field for the
/// schema's i-th column wherever it sits in the file.
pub struct Fields<'a> {
    pub(crate) record: &'a StringRecord,
    pub(crate) positions: &'a [usize],
    pub(crate) schema: &'static TableSchema,
    pub(crate) line: u64,
}

impl<'a> Fields<'a> {
    fn raw(&self, i: usize) -> &'a str {
        self.record.get(self.positions[i]).unwrap_or("")
    }

    fn name(&self, i: usize) -> &'static str {
        self.schema.columns[i].name
    }

    fn id(&self, i: usize) -> Result<u64, String> {
        let text = self.raw(i).trim();
        if is_null(text) {
            return if self.schema.columns[i].nullable {
                Ok(0)
            } else {
                Err(format!("{} is empty", self.name(i)))
            };
        }
        text.parse::<u64>()
            .map_err(|_| format!("{} {text:?} is not a non-negative integer", self.name(i)))
    }

    fn key(&self, i: usize) -> Result<u64, String> {
        match self.id(i)? {
            0 => Err(format!("{} must be positive", self.name(i))),
            v => Ok(v),
        }
    }

    fn seq(&self, i: usize) -> Result<Option<u32>, String> {
        let text = self.raw(i).trim();
        if is_null(text) {
            return Ok(None);
        }
        text.parse::<u32>()
            .map(Some)
            .map_err(|_| format!("{} {text:?} is not a non-negative integer", self.name(i)))
    }

    fn text(&self, i: usize) -> Result<String, String> {
        let text = self.raw(i);
        if text.trim().is_empty() {
            return Err(format!("{} is empty", self.name(i)));
        }
        Ok(text.to_string())
    }

    fn code(&self, i: usize) -> Result<AuthorityCode, String> {
        AuthorityCode::new(self.raw(i)).map_err(|e| format!("{}: {e}", self.name(i)))
    }

    fn optional_code(&self, i: usize) -> Result<Option<AuthorityCode>, String> {
        let text = self.raw(i).trim();
        if is_null(text) {
            return Ok(None);
        }
        self.code(i).map(Some)
    }

    fn kind(&self, i: usize) -> Result<KindCode, String> {
        KindCode::new(self.raw(i)).map_err(|e| format!("{}: {e}", self.name(i)))
    }

    fn flag(&self, i: usize) -> Result<bool, String> {
        let text = self.raw(i).trim();
        if is_null(text) {
            return Ok(false);
        }
        match text.to_ascii_lowercase().as_str() {
            "1" | "true" | "y" | "yes" => Ok(true),
            "0" | "false" | "n" | "no" => Ok(false),
            _ => Err(format!("{} {text:?} is not a flag", self.name(i))),
        }
    }

    fn date(&self, i: usize, tally: &mut DateTally) -> Option<chrono::NaiveDate> {
        let text = self.raw(i);
        let field = classify_date(text);
        match field {
            DateField::Sentinel => tally.sentinel += 1,
            DateField::Invalid => {
                tally.invalid += 1;
                log::warn!(
                    "{} line {}: unparseable {} {text:?} treated as missing",
                    self.schema.name(),
                    self.line,
                    self.name(i)
                );
            }
            DateField::Date(_) | DateField::Null => {}
        }
        field.date()
    }
}

fn format_date(date: Option<chrono::NaiveDate>) -> String {
    match date {
        Some(d) => d.format("%Y-%m-%d").to_string(),
        None => "9999-12-31".to_string(),
    }
}

/// A model row type that has a Patstat table layout.
pub trait TableRow: Sized + Send {
    fn schema() -> &'static TableSchema;

    /// Decodes one record; the error is the human-readable reject reason.
    fn decode(fields: &Fields<'_>, dates: &mut DateTally) -> Result<Self, String>;

    /// Field values in schema column order.
    fn encode(&self) -> Vec<String>;
}

impl TableRow for Application {
    fn schema() -> &'static TableSchema {
        &APPLN
    }

    fn decode(f: &Fields<'_>, dates: &mut DateTally) -> Result<Self, String> {
        Ok(Application {
            appln_id: ApplnId(f.key(0)?),
            appln_auth: f.code(1)?,
            appln_nr: f.text(2)?,
            appln_kind: f.kind(3)?,
            appln_filing_date: f.date(4, dates),
            internat_appln_id: ApplnId(f.id(5)?),
        })
    }

    fn encode(&self) -> Vec<String> {
        vec![
            self.appln_id.to_string(),
            self.appln_auth.to_string(),
            self.appln_nr.clone(),
            self.appln_kind.to_string(),
            format_date(self.appln_filing_date),
            self.internat_appln_id.to_string(),
        ]
    }
}

impl TableRow for Publication {
    fn schema() -> &'static TableSchema {
        &PAT_PUBLN
    }

    fn decode(f: &Fields<'_>, dates: &mut DateTally) -> Result<Self, String> {
        Ok(Publication {
            pat_publn_id: PublnId(f.key(0)?),
            appln_id: ApplnId(f.key(1)?),
            publn_auth: f.code(2)?,
            publn_nr: f.text(3)?,
            publn_kind: f.kind(4)?,
            publn_date: f.date(5, dates),
            publn_first_grant: f.flag(6)?,
        })
    }

    fn encode(&self) -> Vec<String> {
        vec![
            self.pat_publn_id.to_string(),
            self.appln_id.to_string(),
            self.publn_auth.to_string(),
            self.publn_nr.clone(),
            self.publn_kind.to_string(),
            format_date(self.publn_date),
            u8::from(self.publn_first_grant).to_string(),
        ]
    }
}

impl TableRow for Person {
    fn schema() -> &'static TableSchema {
        &PERSON
    }

    fn decode(f: &Fields<'_>, _: &mut DateTally) -> Result<Self, String> {
        Ok(Person { person_id: PersonId(f.key(0)?), person_ctry_code: f.optional_code(1)? })
    }

    fn encode(&self) -> Vec<String> {
        vec![
            self.person_id.to_string(),
            self.person_ctry_code.map(|c| c.to_string()).unwrap_or_default(),
        ]
    }
}

impl TableRow for PersonApplnLink {
    fn schema() -> &'static TableSchema {
        &PERS_APPLN
    }

    fn decode(f: &Fields<'_>, _: &mut DateTally) -> Result<Self, String> {
        Ok(PersonApplnLink {
            person_id: PersonId(f.key(0)?),
            appln_id: ApplnId(f.key(1)?),
            applt_seq_nr: f.seq(2)?.unwrap_or(0),
            invt_seq_nr: f.seq(3)?.unwrap_or(0),
        })
    }

    fn encode(&self) -> Vec<String> {
        vec![
            self.person_id.to_string(),
            self.appln_id.to_string(),
            self.applt_seq_nr.to_string(),
            self.invt_seq_nr.to_string(),
        ]
    }
}

impl TableRow for IpcAssignment {
    fn schema() -> &'static TableSchema {
        &APPLN_IPC
    }

    fn decode(f: &Fields<'_>, _: &mut DateTally) -> Result<Self, String> {
        Ok(IpcAssignment { appln_id: ApplnId(f.key(0)?), ipc_class_symbol: f.text(1)? })
    }

    fn encode(&self) -> Vec<String> {
        vec![self.appln_id.to_string(), self.ipc_class_symbol.clone()]
    }
}

impl TableRow for PriorityClaim {
    fn schema() -> &'static TableSchema {
        &APPLN_PRIOR
    }

    fn decode(f: &Fields<'_>, _: &mut DateTally) -> Result<Self, String> {
        Ok(PriorityClaim {
            appln_id: ApplnId(f.key(0)?),
            prior_appln_id: ApplnId(f.key(1)?),
            prior_appln_seq_nr: f.seq(2)?,
        })
    }

    fn encode(&self) -> Vec<String> {
        vec![
            self.appln_id.to_string(),
            self.prior_appln_id.to_string(),
            self.prior_appln_seq_nr.map(|s| s.to_string()).unwrap_or_default(),
        ]
    }
}

impl TableRow for FamilyMembership {
    fn schema() -> &'static TableSchema {
        &INPADOC_FAM
    }

    fn decode(f: &Fields<'_>, _: &mut DateTally) -> Result<Self, String> {
        Ok(FamilyMembership { appln_id: ApplnId(f.key(0)?), inpadoc_family_id: f.id(1)?.into() })
    }

    fn encode(&self) -> Vec<String> {
        vec![self.appln_id.to_string(), self.inpadoc_family_id.to_string()]
    }
}

impl TableRow for Citation {
    fn schema() -> &'static TableSchema {
        &CITATION
    }

    fn decode(f: &Fields<'_>, _: &mut DateTally) -> Result<Self, String> {
        Ok(Citation { pat_publn_id: PublnId(f.key(0)?), cited_pat_publn_id: PublnId(f.id(1)?) })
    }

    fn encode(&self) -> Vec<String> {
        vec![self.pat_publn_id.to_string(), self.cited_pat_publn_id.to_string()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn column_names_unique_per_table() {
        for t in Table::ALL {
            let schema = schema_for(t);
            assert_eq!(schema.table, t);
            let names: HashSet<_> = schema.column_names().collect();
            assert_eq!(names.len(), schema.columns.len(), "{t}");
        }
    }

    #[test]
    fn encode_arity_matches_schema() {
        let app = Application {
            appln_id: ApplnId(1),
            appln_auth: crate::model::auth("DE"),
            appln_nr: "1".into(),
            appln_kind: crate::model::kind("A"),
            appln_filing_date: None,
            internat_appln_id: ApplnId(0),
        };
        assert_eq!(app.encode().len(), APPLN.columns.len());
        assert_eq!(app.encode()[4], "9999-12-31");
        let link = PersonApplnLink { person_id: PersonId(1), appln_id: ApplnId(2), invt_seq_nr: 3, applt_seq_nr: 0 };
        assert_eq!(link.encode(), ["1", "2", "0", "3"]);
    }
}
