use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{sort_value_desc, Denominator, IndicatorOptions, Role};
use crate::model::{
    ApplnId, Cohort, CountryCode, FractionalCountRow, FractionalShareRow, IndicatorRow, IndicatorTable, RowOrder,
};
use crate::store::IndexedStore;

/// Country groups of one application: `(country, persons in group)` plus the
/// denominator. `None` when the application has no person of the role.
fn member_groups(
    store: &IndexedStore,
    id: ApplnId,
    role: Role,
    denominator: Denominator,
) -> Option<(BTreeMap<Option<CountryCode>, u64>, u64)> {
    let mut groups: BTreeMap<Option<CountryCode>, u64> = BTreeMap::new();
    let mut max_seq = 0u64;
    let mut rows = 0u64;
    for link in store.person_links(id) {
        let seq = role.sequence(link);
        if seq == 0 {
            continue;
        }
        rows += 1;
        max_seq = max_seq.max(u64::from(seq));
        let country = store.person(link.person_id).and_then(|p| p.person_ctry_code);
        *groups.entry(country).or_default() += 1;
    }
    if rows == 0 {
        return None;
    }
    let denom = match denominator {
        Denominator::MaxSequence => max_seq,
        Denominator::RowCount => rows,
    };
    Some((groups, denom))
}

/// Per-application country groups behind a fractional count, ordered by
/// `appln_id` then country (missing first).
///
/// An application without any person of the role contributes a single
/// missing-country row with `1 / 1`.
pub fn fractional_shares(
    store: &IndexedStore,
    cohort: &Cohort,
    role: Role,
    denominator: Denominator,
) -> Vec<FractionalShareRow> {
    let mut members: Vec<ApplnId> = cohort.members().to_vec();
    members.sort_unstable();
    let mut out = Vec::new();
    for id in members {
        match member_groups(store, id, role, denominator) {
            Some((groups, denom)) => out.extend(groups.into_iter().map(|(country, n)| FractionalShareRow {
                appln_id: id,
                country,
                tot_in_ctry: n,
                tot_in_patent: denom,
            })),
            None => out.push(FractionalShareRow { appln_id: id, country: None, tot_in_ctry: 1, tot_in_patent: 1 }),
        }
    }
    out
}

/// Fractional count of the cohort by person country of residence.
///
/// Each application spreads `tot_in_ctry / tot_in_patent` over its country
/// groups; sums are exact. Rows are ordered by count descending, ties by
/// country with the missing group first.
pub fn fractional_count_by_country(
    store: &IndexedStore,
    cohort: &Cohort,
    role: Role,
    denominator: Denominator,
) -> Vec<FractionalCountRow> {
    // numerator sums keyed by (country, denominator); combined exactly at the end
    let mut sums: BTreeMap<Option<CountryCode>, BTreeMap<u64, u64>> = BTreeMap::new();
    for &id in cohort.members() {
        match member_groups(store, id, role, denominator) {
            Some((groups, denom)) => {
                for (country, n) in groups {
                    *sums.entry(country).or_default().entry(denom).or_default() += n;
                }
            }
            None => *sums.entry(None).or_default().entry(1).or_default() += 1,
        }
    }
    let mut rows: Vec<FractionalCountRow> = sums
        .into_iter()
        .map(|(country, parts)| {
            let total = parts.into_iter().fold(BigRational::zero(), |acc, (denom, num)| {
                acc + BigRational::new(BigInt::from(num), BigInt::from(denom))
            });
            FractionalCountRow { country, fractional_count: total }
        })
        .collect();
    rows.sort_by(|a, b| b.fractional_count.cmp(&a.fractional_count).then(a.country.cmp(&b.country)));
    rows
}

/// Distinct known inventor countries per application, ordered by
/// count descending then `appln_id`. Applications with no known inventor
/// country are absent unless `emit_defaults` is set.
pub fn inventor_country_count(store: &IndexedStore, cohort: &Cohort, opts: IndicatorOptions) -> IndicatorTable {
    let mut rows: Vec<IndicatorRow> = cohort
        .members()
        .iter()
        .filter_map(|&id| {
            let countries: BTreeSet<CountryCode> = store
                .person_links(id)
                .filter(|l| l.invt_seq_nr > 0)
                .filter_map(|l| store.person(l.person_id).and_then(|p| p.person_ctry_code))
                .collect();
            let n = countries.len() as u64;
            (n > 0 || opts.emit_defaults).then_some(IndicatorRow { appln_id: id, value: n })
        })
        .collect();
    sort_value_desc(&mut rows);
    IndicatorTable { value_column: "nb_locations", order: RowOrder::ValueDescApplnIdAsc, rows }
}
