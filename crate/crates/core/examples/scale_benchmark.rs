//! Time ingest, indexing and two indicators on a large generated dataset.
//!
//!     cargo run --release --example scale_benchmark -- [N_APPLICATIONS]

use std::time::Instant;

use patstat::fixtures::{generate_random_dataset, GeneratorParams};
use patstat::indicators::{family_size, fractional_count_by_country, Denominator, IndicatorOptions, Role};
use patstat::ingest::{load_dataset, write_dataset, IngestConfig};
use patstat::model::Cohort;
use patstat::store::build_store;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n: usize = std::env::args().nth(1).map_or(Ok(200_000), |s| s.parse())?;
    let dir = tempfile::tempdir()?;
    let params = GeneratorParams { seed: 2013, n_applications: n, n_persons: n * 3 / 2, ..Default::default() };
    write_dataset(dir.path(), &generate_random_dataset(&params)?)?;

    let t = Instant::now();
    let ds = load_dataset(dir.path(), &IngestConfig::default())?;
    println!("ingest      {:>8.2?}  ({} applications, {} publications)", t.elapsed(), ds.applications.len(), ds.publications.len());
    let t = Instant::now();
    let store = build_store(ds)?;
    println!("index       {:>8.2?}", t.elapsed());

    let cohort = Cohort::explicit(store.dataset().applications.iter().step_by(10).map(|a| a.appln_id));
    let t = Instant::now();
    let sizes = family_size(&store, &cohort, IndicatorOptions::FAITHFUL);
    println!("family      {:>8.2?}  ({} rows)", t.elapsed(), sizes.len());
    let t = Instant::now();
    let counts = fractional_count_by_country(&store, &cohort, Role::Inventor, Denominator::MaxSequence);
    println!("fractional  {:>8.2?}  ({} countries)", t.elapsed(), counts.len());
    Ok(())
}
