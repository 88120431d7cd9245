//! Priority status, INPADOC family size and geographic family size side by
//! side for the first applications of the cohort.

use patstat::fixtures::golden_fixture;
use patstat::indicators::{family_size, geographic_family_size, priority_status, select_cohort, CohortFilter, IndicatorOptions};
use patstat::store::build_store;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let store = build_store(golden_fixture())?;
    let cohort = select_cohort(&store, &CohortFilter::new("F03D", 2005)?);

    let opts = IndicatorOptions::FAITHFUL;
    let priority = priority_status(&store, &cohort);
    let family = family_size(&store, &cohort, opts);
    let geog = geographic_family_size(&store, &cohort, opts);

    println!("{:>10}  {:>8}  {:>6}  {:>11}", "appln_id", "is_a_pf", "family", "geog_family");
    for row in priority.rows.iter().take(10) {
        let id = row.appln_id;
        let show = |v: Option<u64>| v.map_or("-".to_string(), |v| v.to_string());
        println!("{:>10}  {:>8}  {:>6}  {:>11}", id, row.value, show(family.get(id)), show(geog.get(id)));
    }
    println!(
        "\n{} of {} cohort members are priority filings",
        priority.rows.iter().filter(|r| r.value == 1).count(),
        cohort.len()
    );
    Ok(())
}
