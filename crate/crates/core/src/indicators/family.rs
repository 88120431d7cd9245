use std::collections::BTreeSet;

use super::IndicatorOptions;
use crate::model::{AuthorityCode, Cohort, IndicatorRow, IndicatorTable, RowOrder};
use crate::store::IndexedStore;

/// INPADOC family size, the member itself included.
///
/// Members without a family row are absent; with `emit_defaults` they get
/// size 1.
pub fn family_size(store: &IndexedStore, cohort: &Cohort, opts: IndicatorOptions) -> IndicatorTable {
    let mut rows: Vec<IndicatorRow> = cohort
        .members()
        .iter()
        .filter_map(|&id| {
            let size = store.family_of(id).map(|f| store.family_members(f).len() as u64);
            match size {
                Some(size) => Some(IndicatorRow { appln_id: id, value: size }),
                None if opts.emit_defaults => Some(IndicatorRow { appln_id: id, value: 1 }),
                None => None,
            }
        })
        .collect();
    rows.sort_unstable_by_key(|r| r.appln_id);
    IndicatorTable { value_column: "family_size", order: RowOrder::ApplnIdAsc, rows }
}

/// Number of distinct publication authorities across the family,
/// WO excluded.
///
/// A family published only at WO yields 0. Members without a family row, or
/// whose family has no publications at all, are absent unless
/// `emit_defaults` is set.
pub fn geographic_family_size(store: &IndexedStore, cohort: &Cohort, opts: IndicatorOptions) -> IndicatorTable {
    let mut rows: Vec<IndicatorRow> = cohort
        .members()
        .iter()
        .filter_map(|&id| {
            let count = store.family_of(id).and_then(|f| {
                let mut published = false;
                let mut offices = BTreeSet::new();
                for &member in store.family_members(f) {
                    for p in store.publications_of(member) {
                        published = true;
                        if p.publn_auth != AuthorityCode::WO {
                            offices.insert(p.publn_auth);
                        }
                    }
                }
                published.then_some(offices.len() as u64)
            });
            match count {
                Some(n) => Some(IndicatorRow { appln_id: id, value: n }),
                None if opts.emit_defaults => Some(IndicatorRow { appln_id: id, value: 0 }),
                None => None,
            }
        })
        .collect();
    rows.sort_unstable_by_key(|r| r.appln_id);
    IndicatorTable { value_column: "geog_family_size", order: RowOrder::ApplnIdAsc, rows }
}
