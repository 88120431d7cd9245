use chrono::NaiveDate;

/// Outcome of reading one date field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DateField {
    Date(NaiveDate),
    /// Empty or NULL.
    Null,
    /// Year 9999, Patstat's placeholder for unknown dates.
    Sentinel,
    /// Non-empty text that is not a calendar date.
    Invalid,
}

impl DateField {
    pub fn date(self) -> Option<NaiveDate> {
        match self {
            DateField::Date(d) => Some(d),
            _ => None,
        }
    }
}

pub(crate) fn is_null(text: &str) -> bool {
    text.is_empty() || text.eq_ignore_ascii_case("null")
}

/// Classifies a date field. Accepts `YYYY-MM-DD` and `YYYYMMDD`.
pub fn classify_date(text: &str) -> DateField {
    let text = text.trim();
    if is_null(text) {
        return DateField::Null;
    }
    if text.starts_with("9999") {
        return DateField::Sentinel;
    }
    let parsed = match text.len() {
        10 => NaiveDate::parse_from_str(text, "%Y-%m-%d").ok(),
        8 if text.bytes().all(|b| b.is_ascii_digit()) => NaiveDate::parse_from_str(text, "%Y%m%d").ok(),
        _ => None,
    };
    parsed.map_or(DateField::Invalid, DateField::Date)
}

/// Parses a date, mapping empty, NULL, year-9999, and unparseable input to
/// `None`. Unparseable input is logged.
pub fn parse_date(text: &str) -> Option<NaiveDate> {
    match classify_date(text) {
        DateField::Date(d) => Some(d),
        DateField::Invalid => {
            log::warn!("unparseable date {text:?} treated as missing");
            None
        }
        DateField::Null | DateField::Sentinel => None,
    }
}
