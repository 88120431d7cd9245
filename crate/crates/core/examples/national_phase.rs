//! PCT applications filed at one receiving office that entered the national
//! phase at given offices.
//!
//!     cargo run --example national_phase -- [RECEIVING] [TARGET...]

use patstat::export::{OutputFormat, ResultTable};
use patstat::fixtures::golden_fixture;
use patstat::indicators::{national_phase_entries, select_cohort, CohortFilter};
use patstat::model::{auth, AuthorityCode};
use patstat::store::build_store;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let receiving = AuthorityCode::new(&args.next().unwrap_or_else(|| "DK".into()))?;
    let mut targets = args.map(|a| AuthorityCode::new(&a)).collect::<Result<Vec<_>, _>>()?;
    if targets.is_empty() {
        targets = vec![auth("CN"), auth("JP")];
    }

    let store = build_store(golden_fixture())?;
    let cohort = select_cohort(&store, &CohortFilter::new("F03D", 2005)?);
    let rows = national_phase_entries(&store, &cohort, receiving, &targets);
    print!("{}", ResultTable::national_phase(&rows).render(OutputFormat::Table));
    Ok(())
}
