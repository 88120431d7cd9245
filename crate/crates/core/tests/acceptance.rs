//! Acceptance run: one PASS/FAIL line per criterion. Exits non-zero when
//! any criterion fails.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use chrono::NaiveDate;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use patstat::cli::{Cli, Command, Engine};
use patstat::export::{write_cohort, OutputFormat};
use patstat::fixtures::{generate_random_dataset, GeneratorParams};
use patstat::indicators::{self as ind, add_years, CitationWindow, Denominator, IndicatorOptions, Role};
use patstat::ingest::{load_dataset, write_dataset, IngestConfig};
use patstat::model::{
    auth, kind, Application, ApplnId, Citation, Cohort, PatstatDataset, Publication, PublnId,
};
use patstat::oracle;
use patstat::store::build_store;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

/// AC1: every displayed cell reproduced on the golden fixture, under 5 s.
fn golden_exactness() -> Outcome {
    let start = Instant::now();
    let cells = common::golden_cells();
    let elapsed = start.elapsed();
    let wrong: Vec<String> = cells
        .iter()
        .filter(|(_, e, a)| e != a)
        .map(|(label, e, a)| format!("{label}: expected {e}, got {a}"))
        .collect();
    let pass = wrong.is_empty() && elapsed < Duration::from_secs(5);
    let mut detail = format!("{}/{} cells exact in {} (limit 5s)", cells.len() - wrong.len(), cells.len(), secs(elapsed));
    for w in wrong.iter().take(5) {
        detail.push_str("; ");
        detail.push_str(w);
    }
    outcome(pass, detail)
}

const OFFICES: [&str; 6] = ["DE", "EP", "US", "CN", "JP", "GB"];

fn random_params(rng: &mut ChaCha8Rng) -> common::Params {
    let pick = |rng: &mut ChaCha8Rng| auth(OFFICES.choose(rng).unwrap());
    let n_targets = rng.gen_range(1..=3);
    common::Params {
        receiving: pick(rng),
        targets: (0..n_targets).map(|_| pick(rng)).collect(),
        role: if rng.gen_bool(0.5) { Role::Inventor } else { Role::Applicant },
        denominator: if rng.gen_bool(0.5) { Denominator::MaxSequence } else { Denominator::RowCount },
        window: CitationWindow { cited_office: pick(rng), citing_office: pick(rng), window_years: rng.gen_range(1..=5) },
        grant_office: auth("GB"),
        opts: IndicatorOptions { emit_defaults: rng.gen_bool(0.5) },
    }
}

/// AC2: 200 seeded datasets, filtered and explicit cohorts, every indicator
/// equal to its oracle row for row, under 10 minutes single-threaded.
fn oracle_equivalence() -> Outcome {
    const SEEDS: u64 = 200;
    let start = Instant::now();
    let mut failures = Vec::new();
    let (mut max_pubs, mut max_persons, mut comparisons) = (0, 0, 0);
    for seed in 0..SEEDS {
        let params = GeneratorParams { seed, n_applications: 2_000, n_persons: 4_000, ..Default::default() };
        let ds = generate_random_dataset(&params).expect("valid params");
        max_pubs = max_pubs.max(ds.publications.len());
        max_persons = max_persons.max(ds.persons.len());
        let store = build_store(ds).expect("unique keys");
        let ds = store.dataset();
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let filter = common::filter("F03D", rng.gen_range(2003..=2007));
        let filtered = ind::select_cohort(&store, &filter);
        if filtered != oracle::oracle_select_cohort(ds, &filter) {
            failures.push(format!("seed {seed}: cohort selection"));
        }
        let mut ids: Vec<ApplnId> = ds.applications.iter().map(|a| a.appln_id).filter(|_| rng.gen_bool(0.3)).collect();
        let max_id = ds.applications.iter().map(|a| a.appln_id.0).max().unwrap_or(0);
        ids.extend((1..=10).map(|i| ApplnId(max_id + i * 7)));
        ids.shuffle(&mut rng);
        let explicit = Cohort::explicit(ids);
        for cohort in [&filtered, &explicit] {
            for p in [common::Params::default(), random_params(&mut rng)] {
                comparisons += 1;
                let a = common::indexed(&store, cohort, &p);
                let b = common::brute_force(ds, cohort, &p);
                if let Some(field) = common::first_difference(&a, &b) {
                    failures.push(format!("seed {seed}: {field}"));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = failures.is_empty() && elapsed < Duration::from_secs(600) && max_pubs <= 5_000 && max_persons <= 4_000;
    let mut detail = format!(
        "{SEEDS} seeds x 2000 applications (max {max_pubs} publications, {max_persons} persons), \
         {comparisons} ten-indicator comparisons, {} mismatches in {} (limit 600s)",
        failures.len(),
        secs(elapsed)
    );
    if let Some(f) = failures.first() {
        detail.push_str("; first: ");
        detail.push_str(f);
    }
    outcome(pass, detail)
}

/// AC3: with gap-free sequences every application's shares sum to 1 and the
/// country totals sum to the cohort size, exactly.
fn fractional_conservation() -> Outcome {
    let mut problems = Vec::new();
    let mut checked = 0usize;
    for seed in 0..40u64 {
        let params = GeneratorParams { seed, sequence_gap_share: 0.0, ..Default::default() };
        let store = build_store(generate_random_dataset(&params).unwrap()).unwrap();
        let mut members: Vec<ApplnId> = store.dataset().applications.iter().map(|a| a.appln_id).collect();
        members.push(ApplnId(u64::MAX));
        let cohorts = [Cohort::explicit(members), ind::select_cohort(&store, &common::filter("F03D", 2005))];
        for cohort in &cohorts {
            for role in [Role::Inventor, Role::Applicant] {
                for denom in [Denominator::MaxSequence, Denominator::RowCount] {
                    let mut per_app: BTreeMap<ApplnId, BigRational> = BTreeMap::new();
                    for s in ind::fractional_shares(&store, cohort, role, denom) {
                        *per_app.entry(s.appln_id).or_insert_with(BigRational::zero) +=
                            BigRational::new(BigInt::from(s.tot_in_ctry), BigInt::from(s.tot_in_patent));
                    }
                    checked += per_app.len();
                    let one = BigRational::from_integer(BigInt::from(1));
                    if let Some((id, sum)) = per_app.iter().find(|(_, v)| **v != one) {
                        problems.push(format!("seed {seed} {role}: appln {id} shares sum to {sum}"));
                    }
                    if per_app.len() != cohort.len() {
                        problems.push(format!("seed {seed}: {} of {} members have shares", per_app.len(), cohort.len()));
                    }
                    let total = ind::fractional_count_by_country(&store, cohort, role, denom)
                        .into_iter()
                        .fold(BigRational::zero(), |acc, r| acc + r.fractional_count);
                    if total != BigRational::from_integer(BigInt::from(cohort.len())) {
                        problems.push(format!("seed {seed} {role}: grand total {total} != {}", cohort.len()));
                    }
                }
            }
        }
    }
    let mut detail = format!("40 gap-free datasets, {checked} application share sums, {} violations", problems.len());
    if let Some(p) = problems.first() {
        detail.push_str("; first: ");
        detail.push_str(p);
    }
    outcome(problems.is_empty(), detail)
}

fn date(s: &str) -> NaiveDate {
    NaiveDate::parse_from_str(s, "%Y-%m-%d").unwrap()
}

/// Tiny dataset around the citation window edges, written to disk and read
/// back so missing dates travel through the year-9999 sentinel.
fn window_dataset() -> PatstatDataset {
    let mut ds = PatstatDataset::default();
    let app = |id: u64, office: &str| Application {
        appln_id: ApplnId(id),
        appln_auth: auth(office),
        appln_nr: format!("N{id}"),
        appln_kind: kind("A"),
        appln_filing_date: Some(date("2005-01-01")),
        internat_appln_id: ApplnId(0),
    };
    let publn = |id: u64, appln: u64, office: &str, d: Option<&str>| Publication {
        pat_publn_id: PublnId(id),
        appln_id: ApplnId(appln),
        publn_auth: auth(office),
        publn_nr: format!("P{id}"),
        publn_kind: kind("A1"),
        publn_date: d.map(date),
        publn_first_grant: false,
    };
    // cited applications: 1 (plain), 2 (leap day), 3 (only an undated publication)
    for (id, office) in [(1, "DE"), (2, "DE"), (3, "DE"), (10, "EP"), (11, "EP"), (12, "EP"), (13, "EP"), (14, "EP"), (15, "EP")] {
        ds.applications.push(app(id, office));
    }
    let reference = date("2005-03-10");
    let edge = add_years(reference, 3).format("%Y-%m-%d").to_string();
    let leap_edge = add_years(date("2008-02-29"), 3).format("%Y-%m-%d").to_string();
    ds.publications.extend([
        publn(1, 1, "DE", Some("2005-03-10")),
        publn(2, 2, "DE", Some("2008-02-29")),
        publn(3, 3, "DE", None),
        publn(10, 10, "EP", Some(&edge)),
        publn(11, 11, "EP", Some("2008-03-11")),
        publn(12, 12, "EP", None),
        publn(13, 13, "EP", Some(&leap_edge)),
        publn(14, 14, "EP", Some("2011-03-01")),
        publn(15, 15, "EP", Some("2006-01-01")),
    ]);
    for (citing, cited) in [(10, 1), (11, 1), (12, 1), (13, 2), (14, 2), (15, 3)] {
        ds.citations.push(Citation { pat_publn_id: PublnId(citing), cited_pat_publn_id: PublnId(cited) });
    }
    ds
}

/// AC4: exact boundary counted, one day later not, year-9999 on either side
/// disqualifies.
fn date_window_boundary() -> Outcome {
    let start = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    write_dataset(dir.path(), &window_dataset()).unwrap();
    let ds = load_dataset(dir.path(), &IngestConfig::strict()).unwrap();
    let sentinels: u64 = ds.stats.tables.values().map(|t| t.sentinel_dates).sum();
    let store = build_store(ds).unwrap();
    let cohort = Cohort::explicit([1, 2, 3].map(ApplnId));
    let window = CitationWindow::new(auth("DE"), auth("EP"));
    let mut problems = Vec::new();
    for opts in [IndicatorOptions::FAITHFUL, IndicatorOptions::WITH_DEFAULTS] {
        let t = ind::forward_citations_window(&store, &cohort, &window, opts);
        let o = oracle::oracle_forward_citations(store.dataset(), &cohort, &window, opts);
        if t != o {
            problems.push("oracle disagrees".to_string());
        }
        let expect_3 = if opts.emit_defaults { Some(0) } else { None };
        for (id, expected) in [(1, Some(1)), (2, Some(1)), (3, expect_3)] {
            let got = t.get(ApplnId(id));
            if got != expected {
                problems.push(format!("appln {id}: expected {expected:?}, got {got:?}"));
            }
        }
    }
    if sentinels != 2 {
        problems.push(format!("expected 2 sentinel dates on ingest, saw {sentinels}"));
    }
    let elapsed = start.elapsed();
    let pass = problems.is_empty() && elapsed < Duration::from_secs(1);
    let mut detail = format!(
        "boundary {} counted, +1 day excluded, leap-day boundary {} counted, 9999 citing and 9999 reference excluded; {} problems in {}",
        add_years(date("2005-03-10"), 3),
        add_years(date("2008-02-29"), 3),
        problems.len(),
        secs(elapsed)
    );
    if let Some(p) = problems.first() {
        detail.push_str("; first: ");
        detail.push_str(p);
    }
    outcome(pass, detail)
}

const INDICATOR_NAMES: [&str; 10] = [
    "national-phase",
    "priority-status",
    "family-size",
    "geog-family-size",
    "fractional-count",
    "fractional-shares",
    "country-count",
    "forward-citations",
    "grant-status",
    "external-numbers",
];

/// Renders every indicator in every format through the CLI layer.
fn export_all(seed: u64, dir: &std::path::Path) -> Vec<String> {
    let store = build_store(generate_random_dataset(&GeneratorParams::with_seed(seed)).unwrap()).unwrap();
    let cohort = ind::select_cohort(&store, &common::filter("F03D", 2005));
    let cohort_path = dir.join("cohort.csv");
    write_cohort(&cohort, std::fs::File::create(&cohort_path).unwrap()).unwrap();
    let mut out = Vec::new();
    for name in INDICATOR_NAMES {
        let cli = <Cli as clap::Parser>::try_parse_from([
            "patstat",
            "indicator",
            name,
            dir.to_str().unwrap(),
            "--cohort",
            cohort_path.to_str().unwrap(),
            "--decimals",
            "6",
        ])
        .unwrap();
        let Command::Indicator(args) = cli.command else { unreachable!() };
        let table = Engine::Indexed(&store).indicator(&args, &cohort).unwrap();
        for format in [OutputFormat::Csv, OutputFormat::Json, OutputFormat::Table] {
            out.push(table.render(format));
        }
    }
    out
}

/// AC5: byte-identical exports across runs; write, ingest, recompute
/// changes nothing.
fn determinism_and_round_trip() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let first = export_all(7, dir.path());
    let second = export_all(7, dir.path());
    let identical = first == second;

    let mut unchanged = true;
    for seed in [7u64, 19, 23] {
        let original = generate_random_dataset(&GeneratorParams::with_seed(seed)).unwrap();
        let data = dir.path().join(format!("seed{seed}"));
        write_dataset(&data, &original).unwrap();
        let loaded = load_dataset(&data, &IngestConfig::strict()).unwrap();
        unchanged &= loaded.same_rows(&original);
        let before = build_store(original).unwrap();
        let after = build_store(loaded).unwrap();
        let filter = common::filter("F03D", 2006);
        let (c1, c2) = (ind::select_cohort(&before, &filter), ind::select_cohort(&after, &filter));
        unchanged &= c1 == c2;
        for opts in [IndicatorOptions::FAITHFUL, IndicatorOptions::WITH_DEFAULTS] {
            let p = common::Params { opts, ..Default::default() };
            unchanged &= common::indexed(&before, &c1, &p) == common::indexed(&after, &c2, &p);
        }
    }
    outcome(
        identical && unchanged,
        format!(
            "(a) {} exports byte-identical across two runs: {identical}; (b) 3 seeds generate-write-ingest, rows and all indicators unchanged: {unchanged}",
            first.len()
        ),
    )
}

fn peak_rss_mib() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    let kib: u64 = line.split_whitespace().nth(1)?.parse().ok()?;
    Some(kib / 1024)
}

/// AC6: ingest and index 1,000,000 applications, then family size and
/// fractional count over a 100,000-member cohort, under 60 s and 8 GB.
fn desk_scale() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let params = GeneratorParams { seed: 2013, n_applications: 1_000_000, n_persons: 1_500_000, ..Default::default() };
    let setup = Instant::now();
    {
        let ds = generate_random_dataset(&params).unwrap();
        write_dataset(dir.path(), &ds).unwrap();
    }
    let setup = setup.elapsed();

    let start = Instant::now();
    let ds = load_dataset(dir.path(), &IngestConfig::default()).unwrap();
    let loaded = start.elapsed();
    let counts = (ds.applications.len(), ds.publications.len(), ds.persons.len(), ds.person_links.len(), ds.citations.len());
    let store = build_store(ds).unwrap();
    let indexed = start.elapsed();
    let cohort = Cohort::explicit(store.dataset().applications.iter().step_by(10).map(|a| a.appln_id));
    let sizes = ind::family_size(&store, &cohort, IndicatorOptions::FAITHFUL);
    let fractional = ind::fractional_count_by_country(&store, &cohort, Role::Inventor, Denominator::MaxSequence);
    let total = start.elapsed();
    let rss = peak_rss_mib();
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get());

    let pass = total < Duration::from_secs(60)
        && rss.is_none_or(|m| m < 8 * 1024)
        && cohort.len() == 100_000
        && !sizes.is_empty()
        && !fractional.is_empty();
    outcome(
        pass,
        format!(
            "{} applications, {} publications, {} persons, {} links, {} citations; ingest {}, +index {}, \
             +family_size and fractional_count over {} members {} (limit 60s); peak RSS {} MiB (limit 8192); \
             {threads} hardware thread(s); untimed generation and write {}",
            counts.0,
            counts.1,
            counts.2,
            counts.3,
            counts.4,
            secs(loaded),
            secs(indexed),
            cohort.len(),
            secs(total),
            rss.map_or("n/a".into(), |m| m.to_string()),
            secs(setup)
        ),
    )
}

fn main() {
    let criteria: [(&str, &str, fn() -> Outcome); 6] = [
        ("AC1", "golden-table exactness", golden_exactness),
        ("AC2", "oracle equivalence", oracle_equivalence),
        ("AC3", "fractional conservation", fractional_conservation),
        ("AC4", "date-window boundary", date_window_boundary),
        ("AC5", "determinism and round-trip", determinism_and_round_trip),
        ("AC6", "desk-scale performance", desk_scale),
    ];
    let mut failed = 0;
    for (id, name, run) in criteria {
        let result = catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|e| {
                let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
                outcome(false, format!("panicked: {}", msg.unwrap_or_default()))
            });
        if !result.pass {
            failed += 1;
        }
        println!("{} {id} {name}: {}", if result.pass { "PASS" } else { "FAIL" }, result.detail);
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
