//! Brute-force reference implementations of every indicator.
//!
//! Each function mirrors its indexed counterpart in [`crate::indicators`]
//! with the same parameters, but reads the raw [`PatstatDataset`] with
//! linear scans and nested loops only. Nothing here calls into the
//! indicators or the store; only model types are shared. Slow on purpose:
//! use it to audit small datasets.

use chrono::{Datelike, Months, NaiveDate};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::indicators::{CitationWindow, CohortFilter, Denominator, IndicatorError, IndicatorOptions, Role};
use crate::model::{
    Application, ApplnId, AuthorityCode, Cohort, CohortProvenance, CountryCode, ExternalNumberRow,
    FractionalCountRow, FractionalShareRow, IndicatorRow, IndicatorTable, KindCode, NationalPhaseRow,
    PatstatDataset, RowOrder,
};

fn find_application(ds: &PatstatDataset, id: ApplnId) -> Option<&Application> {
    ds.applications.iter().find(|a| a.appln_id == id)
}

fn by_appln_id(mut rows: Vec<IndicatorRow>, value_column: &'static str) -> IndicatorTable {
    rows.sort_by_key(|a| a.appln_id);
    IndicatorTable { value_column, order: RowOrder::ApplnIdAsc, rows }
}

fn by_value_desc(mut rows: Vec<IndicatorRow>, value_column: &'static str) -> IndicatorTable {
    rows.sort_by(|a, b| match b.value.cmp(&a.value) {
        std::cmp::Ordering::Equal => a.appln_id.cmp(&b.appln_id),
        other => other,
    });
    IndicatorTable { value_column, order: RowOrder::ValueDescApplnIdAsc, rows }
}

fn role_seq(role: Role, invt: u32, applt: u32) -> u32 {
    match role {
        Role::Inventor => invt,
        Role::Applicant => applt,
    }
}

fn person_country(ds: &PatstatDataset, person: crate::model::PersonId) -> (bool, Option<CountryCode>) {
    for p in &ds.persons {
        if p.person_id == person {
            return (true, p.person_ctry_code);
        }
    }
    (false, None)
}

pub fn oracle_select_cohort(ds: &PatstatDataset, filter: &CohortFilter) -> Cohort {
    let prefix = filter.ipc_prefix().trim().to_uppercase();
    let mut picked: Vec<(AuthorityCode, ApplnId)> = Vec::new();
    for a in &ds.applications {
        let Some(date) = a.appln_filing_date else { continue };
        if date.year() != filter.filing_year() {
            continue;
        }
        if !filter.kinds().contains(&a.appln_kind) {
            continue;
        }
        let mut matched = false;
        for row in &ds.ipc {
            if row.appln_id == a.appln_id && row.ipc_class_symbol.trim_start().to_uppercase().starts_with(&prefix) {
                matched = true;
            }
        }
        if matched && !picked.iter().any(|(_, id)| *id == a.appln_id) {
            picked.push((a.appln_auth, a.appln_id));
        }
    }
    picked.sort();
    Cohort::new(
        picked.into_iter().map(|(_, id)| id),
        CohortProvenance::Filter {
            ipc_prefix: filter.ipc_prefix().to_string(),
            filing_year: filter.filing_year(),
            kinds: filter.kinds().to_vec(),
        },
    )
}

pub fn oracle_national_phase(
    ds: &PatstatDataset,
    cohort: &Cohort,
    receiving_office: AuthorityCode,
    target_offices: &[AuthorityCode],
) -> Vec<NationalPhaseRow> {
    let mut rows = Vec::new();
    for &member in cohort.members() {
        for pct in &ds.applications {
            if pct.appln_id != member || pct.appln_auth != receiving_office {
                continue;
            }
            for entry in &ds.applications {
                if entry.internat_appln_id == pct.appln_id && target_offices.contains(&entry.appln_auth) {
                    rows.push(NationalPhaseRow {
                        pct_appln_id: pct.appln_id,
                        pct_appln_auth: pct.appln_auth,
                        pct_appln_nr: pct.appln_nr.clone(),
                        pct_appln_kind: pct.appln_kind,
                        entry_appln_id: entry.appln_id,
                        entry_appln_auth: entry.appln_auth,
                    });
                }
            }
        }
    }
    rows.sort_by_key(|a| (a.pct_appln_id, a.entry_appln_id));
    rows
}

pub fn oracle_priority_status(ds: &PatstatDataset, cohort: &Cohort) -> IndicatorTable {
    let mut rows = Vec::new();
    for &member in cohort.members() {
        let mut claims = 0;
        for c in &ds.priority_claims {
            if c.appln_id == member {
                claims += 1;
            }
        }
        rows.push(IndicatorRow { appln_id: member, value: if claims == 0 { 1 } else { 0 } });
    }
    by_appln_id(rows, "is_a_pf")
}

pub fn oracle_family_size(ds: &PatstatDataset, cohort: &Cohort, opts: IndicatorOptions) -> IndicatorTable {
    let mut rows = Vec::new();
    for &member in cohort.members() {
        let mut size = None;
        for own in &ds.families {
            if own.appln_id != member {
                continue;
            }
            let mut n = 0u64;
            for other in &ds.families {
                if other.inpadoc_family_id == own.inpadoc_family_id {
                    n += 1;
                }
            }
            size = Some(n);
        }
        match size {
            Some(n) => rows.push(IndicatorRow { appln_id: member, value: n }),
            None if opts.emit_defaults => rows.push(IndicatorRow { appln_id: member, value: 1 }),
            None => {}
        }
    }
    by_appln_id(rows, "family_size")
}

pub fn oracle_geog_family_size(ds: &PatstatDataset, cohort: &Cohort, opts: IndicatorOptions) -> IndicatorTable {
    let mut rows = Vec::new();
    for &member in cohort.members() {
        let mut result = None;
        for own in &ds.families {
            if own.appln_id != member {
                continue;
            }
            let mut publications = 0;
            let mut offices: Vec<AuthorityCode> = Vec::new();
            for other in &ds.families {
                if other.inpadoc_family_id != own.inpadoc_family_id {
                    continue;
                }
                for p in &ds.publications {
                    if p.appln_id != other.appln_id {
                        continue;
                    }
                    publications += 1;
                    if p.publn_auth.as_str() != "WO" && !offices.contains(&p.publn_auth) {
                        offices.push(p.publn_auth);
                    }
                }
            }
            if publications > 0 {
                result = Some(offices.len() as u64);
            }
        }
        match result {
            Some(n) => rows.push(IndicatorRow { appln_id: member, value: n }),
            None if opts.emit_defaults => rows.push(IndicatorRow { appln_id: member, value: 0 }),
            None => {}
        }
    }
    by_appln_id(rows, "geog_family_size")
}

/// `(country, persons)` groups and the denominator for one application, or
/// `None` when it has no person of the role.
fn oracle_groups(
    ds: &PatstatDataset,
    member: ApplnId,
    role: Role,
    denominator: Denominator,
) -> Option<(Vec<(Option<CountryCode>, u64)>, u64)> {
    let mut groups: Vec<(Option<CountryCode>, u64)> = Vec::new();
    let mut max_seq = 0u64;
    let mut rows = 0u64;
    for link in &ds.person_links {
        if link.appln_id != member {
            continue;
        }
        let seq = role_seq(role, link.invt_seq_nr, link.applt_seq_nr);
        if seq == 0 {
            continue;
        }
        rows += 1;
        if u64::from(seq) > max_seq {
            max_seq = u64::from(seq);
        }
        let (_, country) = person_country(ds, link.person_id);
        match groups.iter_mut().find(|(c, _)| *c == country) {
            Some((_, n)) => *n += 1,
            None => groups.push((country, 1)),
        }
    }
    if rows == 0 {
        return None;
    }
    let denom = match denominator {
        Denominator::MaxSequence => max_seq,
        Denominator::RowCount => rows,
    };
    groups.sort_by_key(|a| a.0);
    Some((groups, denom))
}

pub fn oracle_fractional_shares(
    ds: &PatstatDataset,
    cohort: &Cohort,
    role: Role,
    denominator: Denominator,
) -> Vec<FractionalShareRow> {
    let mut out = Vec::new();
    for &member in cohort.members() {
        match oracle_groups(ds, member, role, denominator) {
            Some((groups, denom)) => {
                for (country, n) in groups {
                    out.push(FractionalShareRow { appln_id: member, country, tot_in_ctry: n, tot_in_patent: denom });
                }
            }
            None => out.push(FractionalShareRow { appln_id: member, country: None, tot_in_ctry: 1, tot_in_patent: 1 }),
        }
    }
    out.sort_by_key(|a| (a.appln_id, a.country));
    out
}

pub fn oracle_fractional_count(
    ds: &PatstatDataset,
    cohort: &Cohort,
    role: Role,
    denominator: Denominator,
) -> Vec<FractionalCountRow> {
    let mut totals: Vec<(Option<CountryCode>, BigRational)> = Vec::new();
    let mut add = |country: Option<CountryCode>, share: BigRational| {
        match totals.iter_mut().find(|(c, _)| *c == country) {
            Some((_, sum)) => *sum += share,
            None => totals.push((country, share)),
        }
    };
    for &member in cohort.members() {
        match oracle_groups(ds, member, role, denominator) {
            Some((groups, denom)) => {
                for (country, n) in groups {
                    add(country, BigRational::new(BigInt::from(n), BigInt::from(denom)));
                }
            }
            None => add(None, BigRational::new(BigInt::from(1), BigInt::from(1))),
        }
    }
    let mut rows: Vec<FractionalCountRow> = totals
        .into_iter()
        .map(|(country, fractional_count)| FractionalCountRow { country, fractional_count })
        .collect();
    rows.sort_by(|a, b| match b.fractional_count.cmp(&a.fractional_count) {
        std::cmp::Ordering::Equal => a.country.cmp(&b.country),
        other => other,
    });
    debug_assert!(rows.iter().all(|r| r.fractional_count > BigRational::zero()));
    rows
}

pub fn oracle_country_count(ds: &PatstatDataset, cohort: &Cohort, opts: IndicatorOptions) -> IndicatorTable {
    let mut rows = Vec::new();
    for &member in cohort.members() {
        let mut countries: Vec<CountryCode> = Vec::new();
        for link in &ds.person_links {
            if link.appln_id != member || link.invt_seq_nr == 0 {
                continue;
            }
            if let (true, Some(country)) = person_country(ds, link.person_id) {
                if !countries.contains(&country) {
                    countries.push(country);
                }
            }
        }
        if !countries.is_empty() || opts.emit_defaults {
            rows.push(IndicatorRow { appln_id: member, value: countries.len() as u64 });
        }
    }
    by_value_desc(rows, "nb_locations")
}

/// Window end by calendar-month arithmetic; chrono clamps day 29 of
/// February to the last day of the target month.
fn window_end(reference: NaiveDate, years: u32) -> NaiveDate {
    reference.checked_add_months(Months::new(12 * years)).expect("date in range")
}

pub fn oracle_forward_citations(
    ds: &PatstatDataset,
    cohort: &Cohort,
    window: &CitationWindow,
    opts: IndicatorOptions,
) -> IndicatorTable {
    let mut rows = Vec::new();
    for &member in cohort.members() {
        let mut earliest: Option<NaiveDate> = None;
        for p in &ds.publications {
            if p.appln_id == member {
                if let Some(d) = p.publn_date {
                    if earliest.is_none_or(|e| d < e) {
                        earliest = Some(d);
                    }
                }
            }
        }
        let mut citing_ids = Vec::new();
        if let Some(reference) = earliest {
            let end = window_end(reference, window.window_years);
            for cited in &ds.publications {
                if cited.appln_id != member || cited.publn_auth != window.cited_office {
                    continue;
                }
                for c in &ds.citations {
                    if c.cited_pat_publn_id != cited.pat_publn_id {
                        continue;
                    }
                    for citing in &ds.publications {
                        if citing.pat_publn_id == c.pat_publn_id
                            && citing.publn_auth == window.citing_office
                            && citing.publn_date.is_some_and(|d| d <= end)
                            && !citing_ids.contains(&citing.pat_publn_id)
                        {
                            citing_ids.push(citing.pat_publn_id);
                        }
                    }
                }
            }
        }
        if !citing_ids.is_empty() || opts.emit_defaults {
            rows.push(IndicatorRow { appln_id: member, value: citing_ids.len() as u64 });
        }
    }
    by_value_desc(rows, "cites")
}

pub fn oracle_grant_status(
    ds: &PatstatDataset,
    cohort: &Cohort,
    office: AuthorityCode,
    kind: KindCode,
    opts: IndicatorOptions,
) -> IndicatorTable {
    let mut rows = Vec::new();
    for &member in cohort.members() {
        let Some(app) = find_application(ds, member) else { continue };
        if app.appln_auth != office || app.appln_kind != kind {
            continue;
        }
        let mut max_grant: Option<u64> = None;
        for p in &ds.publications {
            if p.appln_id == member {
                let flag = if p.publn_first_grant { 1 } else { 0 };
                max_grant = Some(max_grant.map_or(flag, |m| m.max(flag)));
            }
        }
        match max_grant {
            Some(v) => rows.push(IndicatorRow { appln_id: member, value: v }),
            None if opts.emit_defaults => rows.push(IndicatorRow { appln_id: member, value: 0 }),
            None => {}
        }
    }
    by_appln_id(rows, "granted")
}

pub fn oracle_external_numbers(
    ds: &PatstatDataset,
    cohort: &Cohort,
    office: AuthorityCode,
) -> Result<Vec<ExternalNumberRow>, IndicatorError> {
    if office.as_str() != "GB" {
        return Err(IndicatorError::UnknownOfficeFormatter(office));
    }
    let mut rows: Vec<ExternalNumberRow> = Vec::new();
    for &member in cohort.members() {
        let Some(app) = find_application(ds, member) else { continue };
        if app.appln_auth != office || app.appln_kind.as_str() != "A" {
            continue;
        }
        for p in &ds.publications {
            if p.appln_id != member || p.publn_kind.as_str() == "D0" {
                continue;
            }
            let count = p.publn_nr.chars().count();
            let tail: String = p.publn_nr.chars().skip(count.saturating_sub(7)).collect();
            let row = ExternalNumberRow {
                appln_id: member,
                publn_nr_patstat: p.publn_nr.clone(),
                publn_nr_external: format!("GB{tail}"),
            };
            if !rows.contains(&row) {
                rows.push(row);
            }
        }
    }
    rows.sort();
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_dataset_gives_empty_outputs() {
        let ds = PatstatDataset::default();
        let cohort = Cohort::explicit([]);
        let opts = IndicatorOptions::FAITHFUL;
        let filter = CohortFilter::new("F03D", 2005).unwrap();
        let gb = crate::model::auth("GB");
        assert!(oracle_select_cohort(&ds, &filter).is_empty());
        assert!(oracle_national_phase(&ds, &cohort, gb, &[gb]).is_empty());
        assert!(oracle_priority_status(&ds, &cohort).is_empty());
        assert!(oracle_family_size(&ds, &cohort, opts).is_empty());
        assert!(oracle_geog_family_size(&ds, &cohort, opts).is_empty());
        assert!(oracle_fractional_count(&ds, &cohort, Role::Inventor, Denominator::MaxSequence).is_empty());
        assert!(oracle_country_count(&ds, &cohort, opts).is_empty());
        assert!(oracle_forward_citations(&ds, &cohort, &CitationWindow::new(gb, gb), opts).is_empty());
        assert!(oracle_grant_status(&ds, &cohort, gb, crate::model::kind("A"), opts).is_empty());
        assert!(oracle_external_numbers(&ds, &cohort, gb).unwrap().is_empty());
    }

    #[test]
    fn window_end_clamps_leap_day() {
        let d = NaiveDate::from_ymd_opt(2004, 2, 29).unwrap();
        assert_eq!(window_end(d, 1), NaiveDate::from_ymd_opt(2005, 2, 28).unwrap());
        assert_eq!(window_end(d, 4), d.with_year(2008).unwrap());
    }
}
