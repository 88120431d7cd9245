//! Fractional counts of inventors (or applicants) by country, with the
//! per-application shares they are built from.
//!
//!     cargo run --example fractional_counts -- [inventor|applicant] [max-sequence|row-count]

use patstat::export::{OutputFormat, ResultTable};
use patstat::fixtures::golden_fixture;
use patstat::indicators::{fractional_count_by_country, fractional_shares, select_cohort, CohortFilter, Denominator, Role};
use patstat::store::build_store;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let role = match args.next().as_deref() {
        None | Some("inventor") => Role::Inventor,
        Some("applicant") => Role::Applicant,
        Some(other) => return Err(format!("unknown role {other}").into()),
    };
    let denominator = match args.next().as_deref() {
        None | Some("max-sequence") => Denominator::MaxSequence,
        Some("row-count") => Denominator::RowCount,
        Some(other) => return Err(format!("unknown denominator {other}").into()),
    };

    let store = build_store(golden_fixture())?;
    let cohort = select_cohort(&store, &CohortFilter::new("F03D", 2005)?);

    let shares = fractional_shares(&store, &cohort, role, denominator);
    let head: Vec<_> = shares.into_iter().take(8).collect();
    print!("{}", ResultTable::fractional_shares(&head).render(OutputFormat::Table));
    println!();

    let counts = fractional_count_by_country(&store, &cohort, role, denominator);
    let top: Vec<_> = counts.into_iter().take(10).collect();
    print!("{}", ResultTable::fractional_counts(&top, 1).render(OutputFormat::Table));
    Ok(())
}
