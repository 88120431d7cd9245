use std::collections::HashSet;

use super::{add_years, sort_value_desc, CitationWindow, IndicatorOptions};
use crate::model::{Cohort, IndicatorRow, IndicatorTable, PublnId, RowOrder};
use crate::store::{earliest_publication_date, IndexedStore};

/// Distinct publications at `citing_office` citing the member's
/// `cited_office` publications no later than `window_years` after the
/// member's earliest publication date (any authority).
///
/// Members with no dated publication, or no qualifying citation, are absent
/// unless `emit_defaults` is set. Citing publications with a missing date
/// never count. Ordered by count descending, then `appln_id`.
pub fn forward_citations_window(
    store: &IndexedStore,
    cohort: &Cohort,
    window: &CitationWindow,
    opts: IndicatorOptions,
) -> IndicatorTable {
    let mut rows: Vec<IndicatorRow> = cohort
        .members()
        .iter()
        .filter_map(|&id| {
            let cites = earliest_publication_date(store, id).map_or(0, |reference| {
                let limit = add_years(reference, window.window_years);
                let mut citing: HashSet<PublnId> = HashSet::new();
                for cited in store.publications_of(id).filter(|p| p.publn_auth == window.cited_office) {
                    for &citing_id in store.citing_publications(cited.pat_publn_id) {
                        let qualifies = store.publication(citing_id).is_some_and(|c| {
                            c.publn_auth == window.citing_office && c.publn_date.is_some_and(|d| d <= limit)
                        });
                        if qualifies {
                            citing.insert(citing_id);
                        }
                    }
                }
                citing.len() as u64
            });
            (cites > 0 || opts.emit_defaults).then_some(IndicatorRow { appln_id: id, value: cites })
        })
        .collect();
    sort_value_desc(&mut rows);
    IndicatorTable { value_column: "cites", order: RowOrder::ValueDescApplnIdAsc, rows }
}
