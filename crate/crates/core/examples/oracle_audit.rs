//! Cross-check every indexed indicator against its brute-force oracle on a
//! handful of random datasets.
//!
//!     cargo run --release --example oracle_audit -- [SEEDS]

use patstat::fixtures::{generate_random_dataset, GeneratorParams};
use patstat::indicators::{self as ind, CitationWindow, CohortFilter, Denominator, IndicatorOptions, Role};
use patstat::model::{auth, kind};
use patstat::oracle;
use patstat::store::build_store;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seeds: u64 = std::env::args().nth(1).map_or(Ok(10), |s| s.parse())?;
    let mut mismatches = 0;
    for seed in 0..seeds {
        let store = build_store(generate_random_dataset(&GeneratorParams::with_seed(seed))?)?;
        let ds = store.dataset();
        let filter = CohortFilter::new("F03D", 2005)?;
        let cohort = ind::select_cohort(&store, &filter);
        let opts = IndicatorOptions::WITH_DEFAULTS;
        let window = CitationWindow::new(auth("DE"), auth("EP"));
        let (role, denom) = (Role::Inventor, Denominator::MaxSequence);
        let targets = [auth("CN"), auth("JP")];

        let checks = [
            ("cohort", cohort == oracle::oracle_select_cohort(ds, &filter)),
            (
                "national-phase",
                ind::national_phase_entries(&store, &cohort, auth("DK"), &targets)
                    == oracle::oracle_national_phase(ds, &cohort, auth("DK"), &targets),
            ),
            ("priority", ind::priority_status(&store, &cohort) == oracle::oracle_priority_status(ds, &cohort)),
            ("family", ind::family_size(&store, &cohort, opts) == oracle::oracle_family_size(ds, &cohort, opts)),
            (
                "geog-family",
                ind::geographic_family_size(&store, &cohort, opts) == oracle::oracle_geog_family_size(ds, &cohort, opts),
            ),
            (
                "fractional",
                ind::fractional_count_by_country(&store, &cohort, role, denom)
                    == oracle::oracle_fractional_count(ds, &cohort, role, denom),
            ),
            (
                "country-count",
                ind::inventor_country_count(&store, &cohort, opts) == oracle::oracle_country_count(ds, &cohort, opts),
            ),
            (
                "citations",
                ind::forward_citations_window(&store, &cohort, &window, opts)
                    == oracle::oracle_forward_citations(ds, &cohort, &window, opts),
            ),
            (
                "grant",
                ind::grant_status(&store, &cohort, auth("GB"), kind("A"), opts)
                    == oracle::oracle_grant_status(ds, &cohort, auth("GB"), kind("A"), opts),
            ),
        ];
        let bad: Vec<&str> = checks.iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect();
        mismatches += bad.len();
        println!("seed {seed:>3}: {:>4} members  {}", cohort.len(), if bad.is_empty() { "ok".into() } else { bad.join(", ") });
    }
    if mismatches > 0 {
        std::process::exit(1);
    }
    Ok(())
}
