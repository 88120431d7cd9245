#![allow(dead_code)]

use patstat::indicators::{
    self as ind, CitationWindow, CohortFilter, Denominator, IndicatorError, IndicatorOptions, Role,
};
use patstat::model::{
    auth, kind, AuthorityCode, Cohort, ExternalNumberRow, FractionalCountRow, FractionalShareRow, IndicatorTable,
    NationalPhaseRow, PatstatDataset,
};
use patstat::oracle;
use patstat::store::IndexedStore;

/// Parameters for one pass over every indicator.
#[derive(Debug, Clone)]
pub struct Params {
    pub receiving: AuthorityCode,
    pub targets: Vec<AuthorityCode>,
    pub role: Role,
    pub denominator: Denominator,
    pub window: CitationWindow,
    pub grant_office: AuthorityCode,
    pub opts: IndicatorOptions,
}

impl Default for Params {
    fn default() -> Self {
        Params {
            receiving: auth("DK"),
            targets: vec![auth("CN"), auth("JP")],
            role: Role::Inventor,
            denominator: Denominator::MaxSequence,
            window: CitationWindow::new(auth("DE"), auth("EP")),
            grant_office: auth("GB"),
            opts: IndicatorOptions::FAITHFUL,
        }
    }
}

/// Exact outputs of all indicators for one cohort.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AllOutputs {
    pub national_phase: Vec<NationalPhaseRow>,
    pub priority: IndicatorTable,
    pub family: IndicatorTable,
    pub geog_family: IndicatorTable,
    pub shares: Vec<FractionalShareRow>,
    pub fractional: Vec<FractionalCountRow>,
    pub country_count: IndicatorTable,
    pub citations: IndicatorTable,
    pub grant: IndicatorTable,
    pub external: Result<Vec<ExternalNumberRow>, IndicatorError>,
}

pub fn indexed(store: &IndexedStore, cohort: &Cohort, p: &Params) -> AllOutputs {
    AllOutputs {
        national_phase: ind::national_phase_entries(store, cohort, p.receiving, &p.targets),
        priority: ind::priority_status(store, cohort),
        family: ind::family_size(store, cohort, p.opts),
        geog_family: ind::geographic_family_size(store, cohort, p.opts),
        shares: ind::fractional_shares(store, cohort, p.role, p.denominator),
        fractional: ind::fractional_count_by_country(store, cohort, p.role, p.denominator),
        country_count: ind::inventor_country_count(store, cohort, p.opts),
        citations: ind::forward_citations_window(store, cohort, &p.window, p.opts),
        grant: ind::grant_status(store, cohort, p.grant_office, kind("A"), p.opts),
        external: ind::external_publication_numbers(store, cohort, p.grant_office),
    }
}

pub fn brute_force(ds: &PatstatDataset, cohort: &Cohort, p: &Params) -> AllOutputs {
    AllOutputs {
        national_phase: oracle::oracle_national_phase(ds, cohort, p.receiving, &p.targets),
        priority: oracle::oracle_priority_status(ds, cohort),
        family: oracle::oracle_family_size(ds, cohort, p.opts),
        geog_family: oracle::oracle_geog_family_size(ds, cohort, p.opts),
        shares: oracle::oracle_fractional_shares(ds, cohort, p.role, p.denominator),
        fractional: oracle::oracle_fractional_count(ds, cohort, p.role, p.denominator),
        country_count: oracle::oracle_country_count(ds, cohort, p.opts),
        citations: oracle::oracle_forward_citations(ds, cohort, &p.window, p.opts),
        grant: oracle::oracle_grant_status(ds, cohort, p.grant_office, kind("A"), p.opts),
        external: oracle::oracle_external_numbers(ds, cohort, p.grant_office),
    }
}

/// First field-by-field difference, for readable failures.
pub fn first_difference(a: &AllOutputs, b: &AllOutputs) -> Option<&'static str> {
    [
        ("national_phase", a.national_phase == b.national_phase),
        ("priority", a.priority == b.priority),
        ("family", a.family == b.family),
        ("geog_family", a.geog_family == b.geog_family),
        ("shares", a.shares == b.shares),
        ("fractional", a.fractional == b.fractional),
        ("country_count", a.country_count == b.country_count),
        ("citations", a.citations == b.citations),
        ("grant", a.grant == b.grant),
        ("external", a.external == b.external),
    ]
    .into_iter()
    .find(|(_, same)| !same)
    .map(|(name, _)| name)
}

pub fn filter(prefix: &str, year: i32) -> CohortFilter {
    CohortFilter::new(prefix, year).expect("valid filter")
}

/// Every displayed cell of the published example tables as
/// `(label, expected, actual)`, computed on the golden fixture.
pub fn golden_cells() -> Vec<(String, String, String)> {
    use patstat::export::render_decimal;
    use patstat::fixtures::golden_fixture;
    use patstat::store::build_store;

    let store = build_store(golden_fixture()).expect("unique keys");
    let cohort = ind::select_cohort(&store, &filter("F03D", 2005));
    let mut cells = Vec::new();
    let mut cell = |label: String, expected: &str, actual: Option<String>| {
        cells.push((label, expected.to_string(), actual.unwrap_or_else(|| "<no row>".into())));
    };

    let head_cohort = [
        ["55286477", "AP", "200603687", "A"],
        ["55286499", "AP", "200603713", "A"],
        ["532990", "AR", "P050100289", "A"],
        ["533082", "AR", "P050100386", "A"],
        ["533175", "AR", "P050100493", "A"],
    ];
    for (i, row) in head_cohort.iter().enumerate() {
        let app = cohort.members().get(i).and_then(|&id| store.application(id));
        let actual = [
            app.map(|a| a.appln_id.to_string()),
            app.map(|a| a.appln_auth.to_string()),
            app.map(|a| a.appln_nr.clone()),
            app.map(|a| a.appln_kind.to_string()),
        ];
        for (j, (e, a)) in row.iter().zip(actual).enumerate() {
            cell(format!("cohort r{} c{}", i + 1, j + 1), e, a);
        }
    }

    let np = ind::national_phase_entries(&store, &cohort, auth("DK"), &[auth("CN"), auth("JP")]);
    let t2 = [
        ["15563101", "DK", "2005000031", "W", "8300709", "CN"],
        ["15563116", "DK", "2005000046", "W", "8300768", "CN"],
        ["15563118", "DK", "2005000048", "W", "8300756", "CN"],
        ["15563246", "DK", "2005000181", "W", "8306357", "CN"],
        ["15563258", "DK", "2005000193", "W", "39635652", "JP"],
    ];
    for (i, row) in t2.iter().enumerate() {
        let r = np.get(i);
        let actual = [
            r.map(|r| r.pct_appln_id.to_string()),
            r.map(|r| r.pct_appln_auth.to_string()),
            r.map(|r| r.pct_appln_nr.clone()),
            r.map(|r| r.pct_appln_kind.to_string()),
            r.map(|r| r.entry_appln_id.to_string()),
            r.map(|r| r.entry_appln_auth.to_string()),
        ];
        for (j, (e, a)) in row.iter().zip(actual).enumerate() {
            cell(format!("national-phase r{} c{}", i + 1, j + 1), e, a);
        }
    }

    let opts = IndicatorOptions::FAITHFUL;
    let heads: [(&str, IndicatorTable, [(&str, &str); 5]); 6] = [
        ("priority-status", ind::priority_status(&store, &cohort), [("65303", "0"), ("133780", "0"), ("149552", "1"), ("151084", "0"), ("151176", "0")]),
        ("family-size", ind::family_size(&store, &cohort, opts), [("65303", "9"), ("133780", "4"), ("149552", "14"), ("151084", "13"), ("151176", "9")]),
        ("geog-family-size", ind::geographic_family_size(&store, &cohort, opts), [("65303", "4"), ("133780", "4"), ("149552", "12"), ("151084", "11"), ("151176", "8")]),
        ("country-count", ind::inventor_country_count(&store, &cohort, opts), [("48145305", "3"), ("273390", "2"), ("4975233", "2"), ("4979189", "2"), ("5804835", "2")]),
        (
            "forward-citations",
            ind::forward_citations_window(&store, &cohort, &CitationWindow::new(auth("DE"), auth("EP")), opts),
            [("14995919", "5"), ("14997816", "2"), ("14971868", "1"), ("14974947", "1"), ("14975309", "1")],
        ),
        ("grant-status", ind::grant_status(&store, &cohort, auth("GB"), kind("A"), opts), [("21465239", "1"), ("21466952", "0"), ("21467768", "0"), ("21470294", "0"), ("21471154", "0")]),
    ];
    for (name, table, rows) in heads {
        for (i, (id, value)) in rows.iter().enumerate() {
            let r = table.rows.get(i);
            cell(format!("{name} r{} appln_id", i + 1), id, r.map(|r| r.appln_id.to_string()));
            cell(format!("{name} r{} value", i + 1), value, r.map(|r| r.value.to_string()));
        }
    }

    let shares = ind::fractional_shares(&store, &cohort, Role::Inventor, Denominator::MaxSequence);
    let t6 = [["263066", "DE", "2", "2"], ["273390", "CH", "1", "4"], ["273390", "DE", "3", "4"], ["273768", "JP", "1", "1"], ["273769", "JP", "1", "1"]];
    for (i, row) in t6.iter().enumerate() {
        let r = shares
            .iter()
            .find(|r| r.appln_id.to_string() == row[0] && r.country.map(|c| c.to_string()).as_deref() == Some(row[1]));
        cell(format!("fractional-shares r{} appln_id", i + 1), row[0], r.map(|r| r.appln_id.to_string()));
        cell(format!("fractional-shares r{} person_ctry_code", i + 1), row[1], r.and_then(|r| r.country.map(|c| c.to_string())));
        cell(format!("fractional-shares r{} tot_in_ctry", i + 1), row[2], r.map(|r| r.tot_in_ctry.to_string()));
        cell(format!("fractional-shares r{} tot_in_patent", i + 1), row[3], r.map(|r| r.tot_in_patent.to_string()));
    }

    let counts = ind::fractional_count_by_country(&store, &cohort, Role::Inventor, Denominator::MaxSequence);
    let t7 = [("", "609.5"), ("DE", "357.2"), ("US", "248.0"), ("CN", "155.8"), ("DK", "113.5")];
    for (i, (country, value)) in t7.iter().enumerate() {
        let r = counts.get(i);
        cell(format!("fractional-count r{} person_ctry_code", i + 1), country, r.map(|r| r.country.map_or(String::new(), |c| c.to_string())));
        cell(format!("fractional-count r{} fractional_count", i + 1), value, r.map(|r| render_decimal(&r.fractional_count, 1)));
    }

    let ext = ind::external_publication_numbers(&store, &cohort, auth("GB")).unwrap_or_default();
    let t11 = [
        ["21465239", "2410379", "GB2410379"],
        ["21467768", "2423650", "GB2423650"],
        ["21470294", "2441770", "GB2441770"],
        ["21471154", "2424926", "GB2424926"],
        ["21471862", "2425334", "GB2425334"],
    ];
    for (i, row) in t11.iter().enumerate() {
        let r = ext.get(i);
        cell(format!("external-numbers r{} appln_id", i + 1), row[0], r.map(|r| r.appln_id.to_string()));
        cell(format!("external-numbers r{} publn_nr_patstat", i + 1), row[1], r.map(|r| r.publn_nr_patstat.clone()));
        cell(format!("external-numbers r{} publn_nr_ukipo", i + 1), row[2], r.map(|r| r.publn_nr_external.clone()));
    }
    cells
}
