//! Rendering of indicator results (CSV, JSON, aligned text) and the cohort
//! file format.

use std::fmt::Write as _;
use std::io::{self, BufRead, Write};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::model::{
    kind, Application, ApplnId, Cohort, CohortProvenance, ExternalNumberRow, FractionalCountRow,
    FractionalShareRow, IndicatorTable, KindCode, NationalPhaseRow,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
    Table,
}

/// One output value. `Missing` renders as an empty CSV field and JSON null.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cell {
    Int(u64),
    Text(String),
    /// Exact decimal already rounded; exported as a string in JSON so no
    /// digits are lost.
    Decimal(String),
    Missing,
}

impl Cell {
    fn text(&self) -> &str {
        match self {
            Cell::Text(s) | Cell::Decimal(s) => s,
            Cell::Int(_) | Cell::Missing => "",
        }
    }

    fn render(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            other => other.text().to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Text(s) | Cell::Decimal(s) => json!(s),
            Cell::Missing => Value::Null,
        }
    }
}

fn opt_text(value: Option<impl ToString>) -> Cell {
    value.map_or(Cell::Missing, |v| Cell::Text(v.to_string()))
}

/// A named result with ordered columns and rows, ready to render.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResultTable {
    pub indicator: String,
    pub params: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl ResultTable {
    pub fn new(indicator: &str, columns: &[&str]) -> Self {
        ResultTable {
            indicator: indicator.to_string(),
            params: Vec::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.push((key.to_string(), value.to_string()));
        self
    }

    /// Cohort listing: `appln_id, appln_auth, appln_nr, appln_kind`.
    pub fn cohort<'a>(apps: impl IntoIterator<Item = &'a Application>) -> Self {
        let mut t = ResultTable::new("cohort", &["appln_id", "appln_auth", "appln_nr", "appln_kind"]);
        t.rows = apps
            .into_iter()
            .map(|a| {
                vec![
                    Cell::Int(a.appln_id.0),
                    Cell::Text(a.appln_auth.to_string()),
                    Cell::Text(a.appln_nr.clone()),
                    Cell::Text(a.appln_kind.to_string()),
                ]
            })
            .collect();
        t
    }

    /// `appln_id` plus the table's value column, or `value_column` when given.
    pub fn indicator(name: &str, table: &IndicatorTable, value_column: Option<&str>) -> Self {
        let mut t = ResultTable::new(name, &["appln_id", value_column.unwrap_or(table.value_column)]);
        t.rows = table.rows.iter().map(|r| vec![Cell::Int(r.appln_id.0), Cell::Int(r.value)]).collect();
        t
    }

    pub fn national_phase(rows: &[NationalPhaseRow]) -> Self {
        let mut t = ResultTable::new(
            "national-phase",
            &["PCT_appln_id", "PCT_appln_auth", "PCT_appln_nr", "appln_kind", "appln_id_sf", "appln_auth_sf"],
        );
        t.rows = rows
            .iter()
            .map(|r| {
                vec![
                    Cell::Int(r.pct_appln_id.0),
                    Cell::Text(r.pct_appln_auth.to_string()),
                    Cell::Text(r.pct_appln_nr.clone()),
                    Cell::Text(r.pct_appln_kind.to_string()),
                    Cell::Int(r.entry_appln_id.0),
                    Cell::Text(r.entry_appln_auth.to_string()),
                ]
            })
            .collect();
        t
    }

    pub fn fractional_shares(rows: &[FractionalShareRow]) -> Self {
        let mut t =
            ResultTable::new("fractional-shares", &["appln_id", "person_ctry_code", "tot_in_ctry", "tot_in_patent"]);
        t.rows = rows
            .iter()
            .map(|r| {
                vec![Cell::Int(r.appln_id.0), opt_text(r.country), Cell::Int(r.tot_in_ctry), Cell::Int(r.tot_in_patent)]
            })
            .collect();
        t
    }

    pub fn fractional_counts(rows: &[FractionalCountRow], places: u32) -> Self {
        let mut t = ResultTable::new("fractional-count", &["person_ctry_code", "fractional_count"]);
        t.rows = rows
            .iter()
            .map(|r| vec![opt_text(r.country), Cell::Decimal(render_decimal(&r.fractional_count, places))])
            .collect();
        t.param("decimals", places)
    }

    pub fn external_numbers(rows: &[ExternalNumberRow], external_column: &str) -> Self {
        let mut t = ResultTable::new("external-numbers", &["appln_id", "publn_nr_patstat", external_column]);
        t.rows = rows
            .iter()
            .map(|r| {
                vec![
                    Cell::Int(r.appln_id.0),
                    Cell::Text(r.publn_nr_patstat.clone()),
                    Cell::Text(r.publn_nr_external.clone()),
                ]
            })
            .collect();
        t
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
            OutputFormat::Table => self.to_text_table(),
        }
    }

    /// RFC 4180 CSV with a header row.
    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(Vec::new());
        w.write_record(&self.columns).expect("write to memory");
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render)).expect("write to memory");
        }
        String::from_utf8(w.into_inner().expect("flush to memory")).expect("utf-8 cells")
    }

    /// `{"indicator": .., "params": {..}, "rows": [{column: value}, ..]}`.
    pub fn to_json(&self) -> String {
        let params: Map<String, Value> = self.params.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| Value::Object(self.columns.iter().cloned().zip(row.iter().map(Cell::json)).collect()))
            .collect();
        let doc = json!({ "indicator": self.indicator, "params": params, "rows": rows });
        let mut out = serde_json::to_string_pretty(&doc).expect("json values");
        out.push('\n');
        out
    }

    /// Left-aligned columns separated by two spaces.
    pub fn to_text_table(&self) -> String {
        let rendered: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(Cell::render).collect()).collect();
        let widths: Vec<usize> = (0..self.columns.len())
            .map(|i| {
                rendered.iter().map(|r| r[i].chars().count()).chain([self.columns[i].chars().count()]).max().unwrap_or(0)
            })
            .collect();
        let mut out = String::new();
        let mut line = |cells: &[String]| {
            let mut s = String::new();
            for (i, c) in cells.iter().enumerate() {
                if i + 1 == cells.len() {
                    s.push_str(c);
                } else {
                    let _ = write!(s, "{c:<w$}  ", w = widths[i]);
                }
            }
            out.push_str(s.trim_end());
            out.push('\n');
        };
        line(&self.columns);
        for r in &rendered {
            line(r);
        }
        out
    }
}

/// Decimal string of `value` with `places` digits after the point, rounding
/// halves away from zero. `places` 0 prints an integer.
pub fn render_decimal(value: &BigRational, places: u32) -> String {
    let scale = BigInt::from(10u32).pow(places);
    let scaled = value.abs() * BigRational::from_integer(scale.clone());
    let (numer, denom) = (scaled.numer(), scaled.denom());
    let q = numer / denom;
    let twice = (numer % denom) * BigInt::from(2u32);
    let rounded = if twice >= *denom { q + 1 } else { q };
    let (int_part, frac_part) = (&rounded / &scale, &rounded % &scale);
    let sign = if value.is_negative() && !(int_part.is_zero() && frac_part.is_zero()) { "-" } else { "" };
    if places == 0 {
        return format!("{sign}{int_part}");
    }
    let frac = frac_part.to_str_radix(10);
    format!("{sign}{int_part}.{frac:0>width$}", width = places as usize)
}

#[derive(Debug, Error)]
pub enum CohortFileError {
    #[error("cohort file: {0}")]
    Io(#[from] io::Error),
    #[error("cohort file has no appln_id header")]
    MissingHeader,
    #[error("cohort file line {line}: {value:?} is not an appln_id")]
    BadId { line: usize, value: String },
}

const PROVENANCE_TAG: &str = "# provenance: ";

/// Writes a one-column CSV of `appln_id` behind a provenance comment.
pub fn write_cohort<W: Write>(cohort: &Cohort, mut out: W) -> io::Result<()> {
    writeln!(out, "{PROVENANCE_TAG}{}", cohort.provenance())?;
    writeln!(out, "appln_id")?;
    for id in cohort.members() {
        writeln!(out, "{id}")?;
    }
    out.flush()
}

fn parse_provenance(text: &str) -> Option<CohortProvenance> {
    let mut ipc_prefix = None;
    let mut filing_year = None;
    let mut kinds = None;
    for part in text.split_whitespace() {
        let (key, value) = part.split_once('=')?;
        match key {
            "ipc_prefix" => ipc_prefix = Some(value.to_string()),
            "filing_year" => filing_year = value.parse().ok(),
            "kinds" => kinds = value.split(',').map(|k| k.parse::<KindCode>().ok()).collect::<Option<Vec<_>>>(),
            _ => return None,
        }
    }
    Some(CohortProvenance::Filter { ipc_prefix: ipc_prefix?, filing_year: filing_year?, kinds: kinds? })
}

/// Reads a cohort file. Comment lines start with `#`; blank lines are
/// skipped. A recognizable filter provenance comment is restored, anything
/// else reads as an explicit list.
pub fn read_cohort<R: BufRead>(input: R) -> Result<Cohort, CohortFileError> {
    let mut provenance = CohortProvenance::ExplicitList;
    let mut header = false;
    let mut ids = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if let Some(rest) = line.strip_prefix(PROVENANCE_TAG) {
            if let Some(p) = parse_provenance(rest) {
                provenance = p;
            }
            continue;
        }
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if !header {
            if !trimmed.eq_ignore_ascii_case("appln_id") {
                return Err(CohortFileError::MissingHeader);
            }
            header = true;
            continue;
        }
        let id: u64 =
            trimmed.parse().map_err(|_| CohortFileError::BadId { line: i + 1, value: trimmed.to_string() })?;
        ids.push(ApplnId(id));
    }
    if !header {
        return Err(CohortFileError::MissingHeader);
    }
    Ok(Cohort::new(ids, provenance))
}

/// Kinds listed as `A,W` on the command line or in a provenance comment.
pub fn parse_kinds(text: &str) -> Result<Vec<KindCode>, String> {
    text.split(',').filter(|k| !k.trim().is_empty()).map(|k| k.parse::<KindCode>().map_err(|e| e.to_string())).collect()
}

/// The default application kinds of a cohort filter.
pub fn default_kinds() -> Vec<KindCode> {
    vec![kind("A"), kind("W")]
}
