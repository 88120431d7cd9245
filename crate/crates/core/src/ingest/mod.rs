//! Delimited-file ingest of Patstat table dumps.
//!
//! Each table lives in `<table_name>.csv` (e.g. `tls201_appln.csv`). Columns
//! are matched by header name, so Patstat editions that reorder or add
//! columns load unchanged. Empty fields and `NULL` read as missing.

mod date;
mod schema;
mod writer;

use std::fs::File;
use std::io::{self, Read};
use std::path::{Path, PathBuf};

use csv::ReaderBuilder;
use thiserror::Error;

use crate::model::{PatstatDataset, RejectedRow, Table, TableStats};

pub use date::{classify_date, parse_date, DateField};
pub use schema::{
    schema_for, ColumnSpec, ColumnType, DateTally, Fields, TableRow, TableSchema, APPLN,
    APPLN_IPC, APPLN_PRIOR, CITATION, INPADOC_FAM, PAT_PUBLN, PERSON, PERS_APPLN,
};
pub use writer::{write_dataset, write_table};

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("invalid ingest config: {0}")]
    InvalidConfig(String),
    #[error("{table}: required column {column:?} missing from header")]
    MissingColumn { table: &'static str, column: &'static str },
    #[error("{table} line {line}: {reason} (reject policy is abort)")]
    Abort { table: &'static str, line: u64, reason: String },
    #[error("cannot read directory {path}: {source}")]
    DirectoryUnreadable { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{table}: {source}")]
    Csv { table: &'static str, source: csv::Error },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RejectPolicy {
    #[default]
    SkipAndLog,
    Abort,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IngestConfig {
    pub delimiter: u8,
    pub quote: u8,
    pub has_header: bool,
    pub reject_policy: RejectPolicy,
}

impl Default for IngestConfig {
    fn default() -> Self {
        IngestConfig { delimiter: b',', quote: b'"', has_header: true, reject_policy: RejectPolicy::SkipAndLog }
    }
}

impl IngestConfig {
    pub fn strict() -> Self {
        IngestConfig { reject_policy: RejectPolicy::Abort, ..IngestConfig::default() }
    }

    pub fn validate(&self) -> Result<(), IngestError> {
        if self.delimiter == self.quote {
            return Err(IngestError::InvalidConfig(format!(
                "delimiter and quote are both {:?}",
                self.delimiter as char
            )));
        }
        Ok(())
    }
}

/// Rows of one table plus the per-file statistics and reject log.
#[derive(Debug, Clone)]
pub struct ParsedTable<T> {
    pub rows: Vec<T>,
    pub stats: TableStats,
}

/// Parses one table dump.
///
/// With a header, the schema's columns may appear in any order and extra
/// columns are ignored; without one, columns are taken in schema order.
/// Rows with the wrong field count or undecodable values are rejected and
/// logged with their line number.
pub fn parse_table_file<T: TableRow, R: Read>(
    input: R,
    config: &IngestConfig,
) -> Result<ParsedTable<T>, IngestError> {
    config.validate()?;
    let schema = T::schema();
    let table = schema.name();
    let mut reader = ReaderBuilder::new()
        .delimiter(config.delimiter)
        .quote(config.quote)
        .has_headers(config.has_header)
        .flexible(true)
        .from_reader(input);

    let (positions, width) = if config.has_header {
        let header = reader.headers().map_err(|source| IngestError::Csv { table, source })?;
        let names: Vec<String> = header.iter().map(|h| h.trim().to_ascii_lowercase()).collect();
        let positions = schema
            .columns
            .iter()
            .map(|c| {
                names
                    .iter()
                    .position(|n| n == c.name)
                    .ok_or(IngestError::MissingColumn { table, column: c.name })
            })
            .collect::<Result<Vec<_>, _>>()?;
        (positions, names.len())
    } else {
        ((0..schema.columns.len()).collect(), schema.columns.len())
    };

    let mut stats = TableStats { file_present: true, ..TableStats::default() };
    let mut tally = DateTally::default();
    let mut rows = Vec::new();
    let mut record = csv::StringRecord::new();

    loop {
        let line = reader.position().line();
        let outcome = match reader.read_record(&mut record) {
            Ok(false) => break,
            Ok(true) => {
                let line = record.position().map_or(line, |p| p.line());
                if record.len() != width {
                    Err((line, format!("expected {width} fields, found {}", record.len())))
                } else {
                    let fields = Fields { record: &record, positions: &positions, schema, line };
                    T::decode(&fields, &mut tally).map_err(|reason| (line, reason))
                }
            }
            Err(err) => match err.kind() {
                csv::ErrorKind::Utf8 { pos, .. } => {
                    let line = pos.as_ref().map_or(line, |p| p.line());
                    Err((line, "field is not valid UTF-8".to_string()))
                }
                _ => return Err(IngestError::Csv { table, source: err }),
            },
        };
        stats.data_rows += 1;
        match outcome {
            Ok(row) => {
                rows.push(row);
                stats.accepted += 1;
            }
            Err((line, reason)) => {
                if config.reject_policy == RejectPolicy::Abort {
                    return Err(IngestError::Abort { table, line, reason });
                }
                log::warn!("{table} line {line}: rejected: {reason}");
                stats.rejected.push(RejectedRow { line, reason });
            }
        }
    }

    stats.sentinel_dates = tally.sentinel;
    stats.invalid_dates = tally.invalid;
    Ok(ParsedTable { rows, stats })
}

pub fn table_path(dir: &Path, table: Table) -> PathBuf {
    dir.join(format!("{}.csv", table.name()))
}

fn load_table<T: TableRow>(dir: &Path, config: &IngestConfig) -> Result<ParsedTable<T>, IngestError> {
    let table = T::schema().table;
    let path = table_path(dir, table);
    match File::open(&path) {
        Ok(file) => parse_table_file(io::BufReader::with_capacity(1 << 20, file), config),
        Err(e) if e.kind() == io::ErrorKind::NotFound => {
            log::info!("{} not found; {table} loaded empty", path.display());
            Ok(ParsedTable { rows: Vec::new(), stats: TableStats::default() })
        }
        Err(source) => Err(IngestError::Io { path, source }),
    }
}

/// Loads every supported table present in `dir`. Files are parsed in
/// parallel; absent tables load empty.
pub fn load_dataset(dir: impl AsRef<Path>, config: &IngestConfig) -> Result<PatstatDataset, IngestError> {
    let dir = dir.as_ref();
    config.validate()?;
    std::fs::read_dir(dir).map_err(|source| IngestError::DirectoryUnreadable { path: dir.to_path_buf(), source })?;

    let mut ds = PatstatDataset::default();
    std::thread::scope(|s| -> Result<(), IngestError> {
        let apps = s.spawn(|| load_table(dir, config));
        let publns = s.spawn(|| load_table(dir, config));
        let persons = s.spawn(|| load_table(dir, config));
        let links = s.spawn(|| load_table(dir, config));
        let ipc = s.spawn(|| load_table(dir, config));
        let prior = s.spawn(|| load_table(dir, config));
        let fam = s.spawn(|| load_table(dir, config));
        let cites = s.spawn(|| load_table(dir, config));

        macro_rules! take {
            ($handle:expr, $field:ident, $table:expr) => {{
                let parsed = $handle.join().expect("ingest worker panicked")?;
                ds.$field = parsed.rows;
                ds.stats.tables.insert($table, parsed.stats);
            }};
        }
        take!(apps, applications, Table::Appln);
        take!(publns, publications, Table::PatPubln);
        take!(persons, persons, Table::Person);
        take!(links, person_links, Table::PersAppln);
        take!(ipc, ipc, Table::ApplnIpc);
        take!(prior, priority_claims, Table::ApplnPrior);
        take!(fam, families, Table::InpadocFam);
        take!(cites, citations, Table::Citation);
        Ok(())
    })?;
    Ok(ds)
}
