use super::{IndicatorError, IndicatorOptions};
use crate::model::{
    kind, AuthorityCode, Cohort, ExternalNumberRow, IndicatorRow, IndicatorTable, KindCode, RowOrder,
};
use crate::store::IndexedStore;

/// Granted is 1 when any publication of the application carries
/// `publn_first_grant`.
///
/// Only members filed at `office` with application kind `kind` are
/// considered; those without publications are absent unless
/// `emit_defaults` is set. Ordered by `appln_id`.
pub fn grant_status(
    store: &IndexedStore,
    cohort: &Cohort,
    office: AuthorityCode,
    kind: KindCode,
    opts: IndicatorOptions,
) -> IndicatorTable {
    let mut rows: Vec<IndicatorRow> = cohort
        .members()
        .iter()
        .filter_map(|&id| store.application(id))
        .filter(|a| a.appln_auth == office && a.appln_kind == kind)
        .filter_map(|a| {
            let mut any = false;
            let mut granted = false;
            for p in store.publications_of(a.appln_id) {
                any = true;
                granted |= p.publn_first_grant;
            }
            (any || opts.emit_defaults).then_some(IndicatorRow { appln_id: a.appln_id, value: u64::from(granted) })
        })
        .collect();
    rows.sort_unstable_by_key(|r| r.appln_id);
    IndicatorTable { value_column: "granted", order: RowOrder::ApplnIdAsc, rows }
}

/// Turns a Patstat `publn_nr` into the number format an office's own
/// online service expects.
pub trait PublicationNumberFormatter: Send + Sync {
    fn office(&self) -> AuthorityCode;

    /// Publication kinds that never get an external number.
    fn excluded_kinds(&self) -> Vec<KindCode>;

    fn format(&self, publn_nr: &str) -> String;

    /// Header of the formatted-number column in exports.
    fn column_name(&self) -> &'static str {
        "publn_nr_external"
    }
}

/// UK IPO: `GB` followed by the last seven characters of `publn_nr`.
/// Application-as-filed documents (kind D0) are excluded.
#[derive(Debug, Clone, Copy, Default)]
pub struct UkipoFormatter;

impl UkipoFormatter {
    const DIGITS: usize = 7;
}

impl PublicationNumberFormatter for UkipoFormatter {
    fn office(&self) -> AuthorityCode {
        crate::model::auth("GB")
    }

    fn excluded_kinds(&self) -> Vec<KindCode> {
        vec![kind("D0")]
    }

    fn format(&self, publn_nr: &str) -> String {
        let chars: Vec<char> = publn_nr.chars().collect();
        if chars.len() < Self::DIGITS {
            log::warn!("publn_nr {publn_nr:?} shorter than {} characters; used whole", Self::DIGITS);
        }
        let tail: String = chars[chars.len().saturating_sub(Self::DIGITS)..].iter().collect();
        format!("GB{tail}")
    }

    fn column_name(&self) -> &'static str {
        "publn_nr_ukipo"
    }
}

/// The registered formatter for `office`.
pub fn formatter_for(office: AuthorityCode) -> Result<Box<dyn PublicationNumberFormatter>, IndicatorError> {
    if office == UkipoFormatter.office() {
        Ok(Box::new(UkipoFormatter))
    } else {
        Err(IndicatorError::UnknownOfficeFormatter(office))
    }
}

/// External publication numbers for cohort members filed at
/// `office` with application kind A. Distinct rows, ordered by `appln_id`
/// then Patstat number.
pub fn external_publication_numbers(
    store: &IndexedStore,
    cohort: &Cohort,
    office: AuthorityCode,
) -> Result<Vec<ExternalNumberRow>, IndicatorError> {
    let formatter = formatter_for(office)?;
    let excluded = formatter.excluded_kinds();
    let direct = kind("A");
    let mut rows: Vec<ExternalNumberRow> = cohort
        .members()
        .iter()
        .filter_map(|&id| store.application(id))
        .filter(|a| a.appln_auth == office && a.appln_kind == direct)
        .flat_map(|a| {
            store
                .publications_of(a.appln_id)
                .filter(|p| !excluded.contains(&p.publn_kind))
                .map(|p| ExternalNumberRow {
                    appln_id: a.appln_id,
                    publn_nr_patstat: p.publn_nr.clone(),
                    publn_nr_external: formatter.format(&p.publn_nr),
                })
        })
        .collect();
    rows.sort();
    rows.dedup();
    Ok(rows)
}
