//! Select the wind-power cohort (IPC F03D, filed 2005, kinds A and W) and
//! print it as a cohort file.
//!
//!     cargo run --example cohort_selection -- [IPC_PREFIX] [YEAR]

use patstat::export::{write_cohort, OutputFormat, ResultTable};
use patstat::fixtures::golden_fixture;
use patstat::indicators::{select_cohort, CohortFilter};
use patstat::store::build_store;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let prefix = args.next().unwrap_or_else(|| "F03D".into());
    let year: i32 = args.next().map_or(Ok(2005), |y| y.parse())?;

    let store = build_store(golden_fixture())?;
    let cohort = select_cohort(&store, &CohortFilter::new(&prefix, year)?);
    eprintln!("{} applications ({})", cohort.len(), cohort.provenance());

    let head = cohort.members().iter().take(5).filter_map(|&id| store.application(id));
    print!("{}", ResultTable::cohort(head).render(OutputFormat::Table));
    println!();
    write_cohort(&cohort, std::io::stdout().lock())?;
    Ok(())
}
