//! Grant status at an office and the office's own publication numbers,
//! rendered as CSV and JSON.

use patstat::export::{OutputFormat, ResultTable};
use patstat::fixtures::golden_fixture;
use patstat::indicators::{external_publication_numbers, formatter_for, grant_status, select_cohort, CohortFilter, IndicatorOptions};
use patstat::model::{auth, kind};
use patstat::store::build_store;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let store = build_store(golden_fixture())?;
    let cohort = select_cohort(&store, &CohortFilter::new("F03D", 2005)?);
    let office = auth("GB");

    let granted = grant_status(&store, &cohort, office, kind("A"), IndicatorOptions::FAITHFUL);
    print!("{}", ResultTable::indicator("grant-status", &granted, Some("granted")).render(OutputFormat::Csv));
    println!();

    let numbers = external_publication_numbers(&store, &cohort, office)?;
    let column = formatter_for(office)?.column_name();
    print!("{}", ResultTable::external_numbers(&numbers, column).render(OutputFormat::Json));

    // offices without a number format are refused
    if let Err(e) = external_publication_numbers(&store, &cohort, auth("FR")) {
        eprintln!("FR: {e}");
    }
    Ok(())
}
