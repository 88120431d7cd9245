//! Write a dataset as delimited files, read it back and check referential
//! integrity. Pass a directory to validate your own extract instead.
//!
//!     cargo run --example ingest_and_validate -- [DATA_DIR]

use patstat::fixtures::golden_fixture;
use patstat::ingest::{load_dataset, write_dataset, IngestConfig};
use patstat::model::{validate_dataset, Table};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let scratch = tempfile::tempdir()?;
    let dir = match std::env::args().nth(1) {
        Some(d) => d.into(),
        None => {
            write_dataset(scratch.path(), &golden_fixture())?;
            scratch.path().to_path_buf()
        }
    };

    let ds = load_dataset(&dir, &IngestConfig::default())?;
    for table in Table::ALL {
        let stats = &ds.stats.tables[&table];
        println!(
            "{:<26} {:>8} rows  {:>3} rejected  {:>3} year-9999 dates",
            table.name(),
            ds.row_count(table),
            stats.rejected.len(),
            stats.sentinel_dates
        );
    }
    println!();
    let report = validate_dataset(&ds);
    print!("{report}");
    if !report.is_clean() {
        std::process::exit(3);
    }
    Ok(())
}
