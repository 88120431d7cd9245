use std::collections::HashSet;

use chrono::Datelike;

use super::CohortFilter;
use crate::model::{
    ApplnId, AuthorityCode, Cohort, CohortProvenance, IndicatorRow, IndicatorTable, NationalPhaseRow, RowOrder,
};
use crate::store::IndexedStore;

/// Distinct applications filed in the filter year, of an allowed
/// kind, carrying at least one IPC symbol under the prefix. Ordered by
/// authority, then `appln_id`.
pub fn select_cohort(store: &IndexedStore, filter: &CohortFilter) -> Cohort {
    let candidates: HashSet<ApplnId> = store.ipc_prefix_matches(filter.ipc_prefix()).collect();
    let mut members: Vec<_> = candidates
        .into_iter()
        .filter_map(|id| store.application(id))
        .filter(|a| {
            a.appln_filing_date.is_some_and(|d| d.year() == filter.filing_year())
                && filter.kinds().contains(&a.appln_kind)
        })
        .map(|a| (a.appln_auth, a.appln_id))
        .collect();
    members.sort_unstable();
    Cohort::new(
        members.into_iter().map(|(_, id)| id),
        CohortProvenance::Filter {
            ipc_prefix: filter.ipc_prefix().to_string(),
            filing_year: filter.filing_year(),
            kinds: filter.kinds().to_vec(),
        },
    )
}

/// National-phase entries at `target_offices` of cohort PCT
/// applications received by `receiving_office`.
pub fn national_phase_entries(
    store: &IndexedStore,
    cohort: &Cohort,
    receiving_office: AuthorityCode,
    target_offices: &[AuthorityCode],
) -> Vec<NationalPhaseRow> {
    let mut rows: Vec<NationalPhaseRow> = cohort
        .members()
        .iter()
        .filter_map(|&id| store.application(id))
        .filter(|pct| pct.appln_auth == receiving_office)
        .flat_map(|pct| {
            store
                .national_phase_children(pct.appln_id)
                .filter(|entry| target_offices.contains(&entry.appln_auth))
                .map(move |entry| NationalPhaseRow {
                    pct_appln_id: pct.appln_id,
                    pct_appln_auth: pct.appln_auth,
                    pct_appln_nr: pct.appln_nr.clone(),
                    pct_appln_kind: pct.appln_kind,
                    entry_appln_id: entry.appln_id,
                    entry_appln_auth: entry.appln_auth,
                })
        })
        .collect();
    rows.sort_by_key(|r| (r.pct_appln_id, r.entry_appln_id));
    rows
}

/// `is_a_pf` is 1 when the application claims no priority.
/// One row per cohort member.
pub fn priority_status(store: &IndexedStore, cohort: &Cohort) -> IndicatorTable {
    let mut rows: Vec<IndicatorRow> = cohort
        .members()
        .iter()
        .map(|&id| IndicatorRow { appln_id: id, value: u64::from(!store.claims_priority(id)) })
        .collect();
    rows.sort_unstable_by_key(|r| r.appln_id);
    IndicatorTable { value_column: "is_a_pf", order: RowOrder::ApplnIdAsc, rows }
}
