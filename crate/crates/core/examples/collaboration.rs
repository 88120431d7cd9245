//! International collaboration: number of distinct inventor countries per
//! application, and how the cohort spreads over that count.

use std::collections::BTreeMap;

use patstat::fixtures::golden_fixture;
use patstat::indicators::{inventor_country_count, select_cohort, CohortFilter, IndicatorOptions};
use patstat::store::build_store;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let store = build_store(golden_fixture())?;
    let cohort = select_cohort(&store, &CohortFilter::new("F03D", 2005)?);
    let counts = inventor_country_count(&store, &cohort, IndicatorOptions::WITH_DEFAULTS);

    let mut spread: BTreeMap<u64, usize> = BTreeMap::new();
    for row in &counts.rows {
        *spread.entry(row.value).or_default() += 1;
    }
    println!("countries  applications");
    for (countries, apps) in &spread {
        println!("{countries:>9}  {apps:>12}");
    }

    println!("\nmost international:");
    for row in counts.rows.iter().take(5) {
        println!("  {} ({} countries)", row.appln_id, row.value);
    }
    Ok(())
}
