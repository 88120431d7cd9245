//! Forward citations received from one office's publications within N years
//! of the cited application's earliest publication.
//!
//!     cargo run --example citation_window -- [CITED] [CITING] [YEARS]

use patstat::export::{OutputFormat, ResultTable};
use patstat::fixtures::golden_fixture;
use patstat::indicators::{add_years, forward_citations_window, select_cohort, CitationWindow, CohortFilter, IndicatorOptions};
use patstat::model::AuthorityCode;
use patstat::store::build_store;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let cited = AuthorityCode::new(&args.next().unwrap_or_else(|| "DE".into()))?;
    let citing = AuthorityCode::new(&args.next().unwrap_or_else(|| "EP".into()))?;
    let years: u32 = args.next().map_or(Ok(3), |y| y.parse())?;

    let store = build_store(golden_fixture())?;
    let cohort = select_cohort(&store, &CohortFilter::new("F03D", 2005)?);
    let window = CitationWindow { window_years: years, ..CitationWindow::new(cited, citing) };
    let table = forward_citations_window(&store, &cohort, &window, IndicatorOptions::FAITHFUL);

    if let Some(top) = table.rows.first() {
        if let Some(start) = store.earliest_publication_date(top.appln_id) {
            eprintln!("{}: window {} ..= {}", top.appln_id, start, add_years(start, years));
        }
    }
    let column = format!("cites_{years}y");
    print!("{}", ResultTable::indicator("forward-citations", &table, Some(&column)).render(OutputFormat::Table));
    Ok(())
}
