//! Command-line front end. The `patstat` binary is a thin wrapper over
//! [`run`].

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::export::{read_cohort, write_cohort, CohortFileError, OutputFormat, ResultTable};
use crate::fixtures::{generate_random_dataset, golden_fixture, FixtureError, GeneratorParams};
use crate::indicators::{self as ind, CitationWindow, CohortFilter, Denominator, IndicatorError, IndicatorOptions, Role};
use crate::ingest::{load_dataset, write_dataset, IngestConfig, IngestError, RejectPolicy};
use crate::model::{validate_dataset, AuthorityCode, Cohort, KindCode, PatstatDataset};
use crate::oracle;
use crate::store::{build_store, IndexedStore, StoreError};

/// Environment variable naming the default data directory.
pub const DATA_DIR_ENV: &str = "PATSTAT_DATA_DIR";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error(transparent)]
    CohortFile(#[from] CohortFileError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{0}")]
    Validation(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Ingest(_) | CliError::CohortFile(_) | CliError::Io { .. } => EXIT_IO,
            CliError::Validation(_) => EXIT_VALIDATION,
        }
    }
}

impl From<IndicatorError> for CliError {
    fn from(e: IndicatorError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<FixtureError> for CliError {
    fn from(e: FixtureError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<StoreError> for CliError {
    fn from(e: StoreError) -> Self {
        CliError::Validation(format!("{e}; run `patstat validate` for details"))
    }
}

#[derive(Debug, Parser)]
#[command(name = "patstat", version, about = "Patent indicators over Patstat extracts")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check keys and references; exit 3 on any violation.
    Validate {
        #[arg(env = DATA_DIR_ENV)]
        data_dir: PathBuf,
        #[command(flatten)]
        ingest: IngestArgs,
    },
    /// Select applications by IPC prefix, filing year, and kind.
    Cohort(CohortArgs),
    /// Compute an indicator over a saved cohort.
    Indicator(IndicatorArgs),
    /// Write a synthetic dataset.
    Fixture {
        #[command(subcommand)]
        which: FixtureCommand,
    },
}

#[derive(Debug, Clone, Args)]
pub struct IngestArgs {
    /// Field delimiter of the table files.
    #[arg(long, default_value_t = ',')]
    pub delimiter: char,
    /// Files have no header row (columns in schema order).
    #[arg(long)]
    pub no_header: bool,
    /// Abort on the first malformed row instead of skipping it.
    #[arg(long)]
    pub strict: bool,
}

impl IngestArgs {
    fn config(&self) -> Result<IngestConfig, CliError> {
        let delimiter = u8::try_from(self.delimiter)
            .ok()
            .filter(u8::is_ascii)
            .ok_or_else(|| CliError::Usage(format!("delimiter {:?} is not a single ASCII byte", self.delimiter)))?;
        let reject_policy = if self.strict { RejectPolicy::Abort } else { RejectPolicy::SkipAndLog };
        Ok(IngestConfig { delimiter, has_header: !self.no_header, reject_policy, ..IngestConfig::default() })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
    Table,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
            FormatArg::Table => OutputFormat::Table,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    pub format: FormatArg,
    /// Write here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct CohortArgs {
    #[arg(env = DATA_DIR_ENV)]
    pub data_dir: PathBuf,
    #[arg(long)]
    pub ipc_prefix: String,
    #[arg(long)]
    pub year: i32,
    /// Application kinds, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "A,W")]
    pub kinds: Vec<KindCode>,
    /// Also save the members as a cohort file.
    #[arg(long)]
    pub save: Option<PathBuf>,
    /// Use the brute-force reference implementation.
    #[arg(long)]
    pub oracle: bool,
    #[command(flatten)]
    pub output: OutputArgs,
    #[command(flatten)]
    pub ingest: IngestArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum IndicatorName {
    NationalPhase,
    PriorityStatus,
    FamilySize,
    GeogFamilySize,
    FractionalCount,
    FractionalShares,
    CountryCount,
    ForwardCitations,
    GrantStatus,
    ExternalNumbers,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DenominatorArg {
    MaxSequence,
    RowCount,
}

impl From<DenominatorArg> for Denominator {
    fn from(d: DenominatorArg) -> Self {
        match d {
            DenominatorArg::MaxSequence => Denominator::MaxSequence,
            DenominatorArg::RowCount => Denominator::RowCount,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct IndicatorArgs {
    #[arg(value_enum)]
    pub name: IndicatorName,
    #[arg(env = DATA_DIR_ENV)]
    pub data_dir: PathBuf,
    /// Cohort file written by `patstat cohort --save`.
    #[arg(long)]
    pub cohort: PathBuf,
    #[arg(long, default_value = "DK")]
    pub receiving_office: AuthorityCode,
    #[arg(long, value_delimiter = ',', default_value = "CN,JP")]
    pub target_offices: Vec<AuthorityCode>,
    #[arg(long, default_value = "inventor")]
    pub role: Role,
    #[arg(long, value_enum, default_value_t = DenominatorArg::MaxSequence)]
    pub denominator: DenominatorArg,
    #[arg(long, default_value = "DE")]
    pub cited_office: AuthorityCode,
    #[arg(long, default_value = "EP")]
    pub citing_office: AuthorityCode,
    #[arg(long, default_value_t = 3)]
    pub window_years: u32,
    #[arg(long, default_value = "GB")]
    pub office: AuthorityCode,
    #[arg(long, default_value = "A")]
    pub kind: KindCode,
    /// Digits after the decimal point for fractional counts.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(0..=12))]
    pub decimals: u32,
    /// Emit default values for members the query would drop.
    #[arg(long)]
    pub emit_defaults: bool,
    /// Use the brute-force reference implementation.
    #[arg(long)]
    pub oracle: bool,
    #[command(flatten)]
    pub output: OutputArgs,
    #[command(flatten)]
    pub ingest: IngestArgs,
}

#[derive(Debug, Subcommand)]
pub enum FixtureCommand {
    /// The hand-built dataset behind the golden tests.
    Golden {
        #[arg(long)]
        out: PathBuf,
    },
    /// A seeded random dataset.
    Random(RandomArgs),
}

#[derive(Debug, Clone, Args)]
pub struct RandomArgs {
    #[arg(long)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub n_applications: Option<usize>,
    #[arg(long)]
    pub n_persons: Option<usize>,
    #[arg(long)]
    pub family_p: Option<f64>,
    #[arg(long)]
    pub citation_density: Option<f64>,
    #[arg(long)]
    pub pct_share: Option<f64>,
    #[arg(long)]
    pub missing_share: Option<f64>,
    #[arg(long)]
    pub sequence_gap_share: Option<f64>,
    #[arg(long, value_delimiter = ',')]
    pub authorities: Option<Vec<AuthorityCode>>,
}

impl RandomArgs {
    pub fn params(&self) -> GeneratorParams {
        let d = GeneratorParams::with_seed(self.seed);
        GeneratorParams {
            seed: self.seed,
            n_applications: self.n_applications.unwrap_or(d.n_applications),
            n_persons: self.n_persons.unwrap_or(d.n_persons),
            family_p: self.family_p.unwrap_or(d.family_p),
            citation_density: self.citation_density.unwrap_or(d.citation_density),
            pct_share: self.pct_share.unwrap_or(d.pct_share),
            missing_share: self.missing_share.unwrap_or(d.missing_share),
            sequence_gap_share: self.sequence_gap_share.unwrap_or(d.sequence_gap_share),
            authorities: self.authorities.clone().unwrap_or(d.authorities),
        }
    }
}

/// Settings shared by every result-producing command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub data_dir: PathBuf,
    pub format: OutputFormat,
    pub output: Option<PathBuf>,
    /// In `0..=12`.
    pub decimals: u32,
    pub emit_defaults: bool,
    pub oracle: bool,
}

impl IndicatorArgs {
    pub fn run_config(&self) -> RunConfig {
        RunConfig {
            data_dir: self.data_dir.clone(),
            format: self.output.format.into(),
            output: self.output.output.clone(),
            decimals: self.decimals,
            emit_defaults: self.emit_defaults,
            oracle: self.oracle,
        }
    }
}

/// Where indicators are computed: the indexed store or the brute-force
/// oracles over the raw rows.
#[derive(Debug, Clone, Copy)]
pub enum Engine<'a> {
    Indexed(&'a IndexedStore),
    Oracle(&'a PatstatDataset),
}

impl<'a> Engine<'a> {
    pub fn application(&self, id: crate::model::ApplnId) -> Option<&'a crate::model::Application> {
        match self {
            Engine::Indexed(s) => s.application(id),
            Engine::Oracle(d) => d.applications.iter().find(|a| a.appln_id == id),
        }
    }

    pub fn select_cohort(&self, filter: &CohortFilter) -> Cohort {
        match self {
            Engine::Indexed(s) => ind::select_cohort(s, filter),
            Engine::Oracle(d) => oracle::oracle_select_cohort(d, filter),
        }
    }

    /// Runs `args.name` over `cohort` and shapes the result for export.
    pub fn indicator(&self, args: &IndicatorArgs, cohort: &Cohort) -> Result<ResultTable, IndicatorError> {
        let opts = IndicatorOptions { emit_defaults: args.emit_defaults };
        let name = args.name.to_possible_value().expect("no skipped variants").get_name().to_string();
        let table = match args.name {
            IndicatorName::NationalPhase => {
                let rows = match self {
                    Engine::Indexed(s) => ind::national_phase_entries(s, cohort, args.receiving_office, &args.target_offices),
                    Engine::Oracle(d) => oracle::oracle_national_phase(d, cohort, args.receiving_office, &args.target_offices),
                };
                let targets: Vec<&str> = args.target_offices.iter().map(AuthorityCode::as_str).collect();
                ResultTable::national_phase(&rows)
                    .param("receiving_office", args.receiving_office)
                    .param("target_offices", targets.join(","))
            }
            IndicatorName::PriorityStatus => {
                let t = match self {
                    Engine::Indexed(s) => ind::priority_status(s, cohort),
                    Engine::Oracle(d) => oracle::oracle_priority_status(d, cohort),
                };
                ResultTable::indicator(&name, &t, None)
            }
            IndicatorName::FamilySize => {
                let t = match self {
                    Engine::Indexed(s) => ind::family_size(s, cohort, opts),
                    Engine::Oracle(d) => oracle::oracle_family_size(d, cohort, opts),
                };
                ResultTable::indicator(&name, &t, None)
            }
            IndicatorName::GeogFamilySize => {
                let t = match self {
                    Engine::Indexed(s) => ind::geographic_family_size(s, cohort, opts),
                    Engine::Oracle(d) => oracle::oracle_geog_family_size(d, cohort, opts),
                };
                ResultTable::indicator(&name, &t, None)
            }
            IndicatorName::FractionalCount => {
                let denom = args.denominator.into();
                let rows = match self {
                    Engine::Indexed(s) => ind::fractional_count_by_country(s, cohort, args.role, denom),
                    Engine::Oracle(d) => oracle::oracle_fractional_count(d, cohort, args.role, denom),
                };
                ResultTable::fractional_counts(&rows, args.decimals).param("role", args.role)
            }
            IndicatorName::FractionalShares => {
                let denom = args.denominator.into();
                let rows = match self {
                    Engine::Indexed(s) => ind::fractional_shares(s, cohort, args.role, denom),
                    Engine::Oracle(d) => oracle::oracle_fractional_shares(d, cohort, args.role, denom),
                };
                ResultTable::fractional_shares(&rows).param("role", args.role)
            }
            IndicatorName::CountryCount => {
                let t = match self {
                    Engine::Indexed(s) => ind::inventor_country_count(s, cohort, opts),
                    Engine::Oracle(d) => oracle::oracle_country_count(d, cohort, opts),
                };
                ResultTable::indicator(&name, &t, None)
            }
            IndicatorName::ForwardCitations => {
                let window = CitationWindow {
                    cited_office: args.cited_office,
                    citing_office: args.citing_office,
                    window_years: args.window_years,
                };
                let t = match self {
                    Engine::Indexed(s) => ind::forward_citations_window(s, cohort, &window, opts),
                    Engine::Oracle(d) => oracle::oracle_forward_citations(d, cohort, &window, opts),
                };
                let column = format!("cites_{}y", args.window_years);
                ResultTable::indicator(&name, &t, Some(&column))
                    .param("cited_office", args.cited_office)
                    .param("citing_office", args.citing_office)
                    .param("window_years", args.window_years)
            }
            IndicatorName::GrantStatus => {
                let t = match self {
                    Engine::Indexed(s) => ind::grant_status(s, cohort, args.office, args.kind, opts),
                    Engine::Oracle(d) => oracle::oracle_grant_status(d, cohort, args.office, args.kind, opts),
                };
                ResultTable::indicator(&name, &t, None).param("office", args.office).param("kind", args.kind)
            }
            IndicatorName::ExternalNumbers => {
                let formatter = ind::formatter_for(args.office)?;
                let rows = match self {
                    Engine::Indexed(s) => ind::external_publication_numbers(s, cohort, args.office)?,
                    Engine::Oracle(d) => oracle::oracle_external_numbers(d, cohort, args.office)?,
                };
                ResultTable::external_numbers(&rows, formatter.column_name()).param("office", args.office)
            }
        };
        let table = match args.name {
            IndicatorName::FamilySize
            | IndicatorName::GeogFamilySize
            | IndicatorName::CountryCount
            | IndicatorName::ForwardCitations
            | IndicatorName::GrantStatus => table.param("emit_defaults", args.emit_defaults),
            _ => table,
        };
        Ok(table)
    }
}

/// Loaded data, indexed unless the oracles were asked for.
enum Loaded {
    Raw(PatstatDataset),
    Indexed(IndexedStore),
}

impl Loaded {
    fn open(dir: &Path, ingest: &IngestArgs, oracle: bool) -> Result<Self, CliError> {
        let dataset = load(dir, ingest)?;
        Ok(if oracle { Loaded::Raw(dataset) } else { Loaded::Indexed(build_store(dataset)?) })
    }

    fn engine(&self) -> Engine<'_> {
        match self {
            Loaded::Raw(d) => Engine::Oracle(d),
            Loaded::Indexed(s) => Engine::Indexed(s),
        }
    }
}

fn load(dir: &Path, ingest: &IngestArgs) -> Result<PatstatDataset, CliError> {
    let dataset = load_dataset(dir, &ingest.config()?)?;
    let rejected = dataset.stats.rejected_total();
    if rejected > 0 {
        log::warn!("{rejected} malformed rows skipped; run `patstat validate` for details");
    }
    Ok(dataset)
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), CliError> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source }),
        None => {
            let mut stdout = io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|()| stdout.flush())
                .map_err(|source| CliError::Io { path: PathBuf::from("<stdout>"), source })
        }
    }
}

fn run_validate(data_dir: &Path, ingest: &IngestArgs) -> Result<(), CliError> {
    let dataset = load(data_dir, ingest)?;
    let report = validate_dataset(&dataset);
    emit(&format!("{report}\n"), None)?;
    if report.is_clean() {
        Ok(())
    } else {
        Err(CliError::Validation(format!("{} integrity violations", report.total_violations())))
    }
}

fn run_cohort(args: &CohortArgs) -> Result<(), CliError> {
    let filter = CohortFilter::with_kinds(&args.ipc_prefix, args.year, args.kinds.clone())?;
    let loaded = Loaded::open(&args.data_dir, &args.ingest, args.oracle)?;
    let engine = loaded.engine();
    let cohort = engine.select_cohort(&filter);
    if let Some(path) = &args.save {
        let file = File::create(path).map_err(|source| CliError::Io { path: path.clone(), source })?;
        write_cohort(&cohort, io::BufWriter::new(file)).map_err(|source| CliError::Io { path: path.clone(), source })?;
    }
    let apps: Vec<_> = cohort.members().iter().filter_map(|&id| engine.application(id)).collect();
    let kinds: Vec<&str> = filter.kinds().iter().map(KindCode::as_str).collect();
    let table = ResultTable::cohort(apps)
        .param("ipc_prefix", filter.ipc_prefix())
        .param("filing_year", filter.filing_year())
        .param("kinds", kinds.join(","));
    emit(&table.render(args.output.format.into()), args.output.output.as_deref())
}

fn run_indicator(args: &IndicatorArgs) -> Result<(), CliError> {
    let cohort = {
        let file = File::open(&args.cohort).map_err(|source| CliError::Io { path: args.cohort.clone(), source })?;
        read_cohort(BufReader::new(file))?
    };
    let config = args.run_config();
    let loaded = Loaded::open(&config.data_dir, &args.ingest, config.oracle)?;
    let table = loaded.engine().indicator(args, &cohort)?;
    emit(&table.render(config.format), config.output.as_deref())
}

fn run_fixture(which: &FixtureCommand) -> Result<(), CliError> {
    let (dataset, out) = match which {
        FixtureCommand::Golden { out } => (golden_fixture(), out),
        FixtureCommand::Random(args) => (generate_random_dataset(&args.params())?, &args.out),
    };
    write_dataset(out, &dataset)?;
    log::info!("wrote {} applications to {}", dataset.applications.len(), out.display());
    Ok(())
}

/// Executes a parsed command.
pub fn execute(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Validate { data_dir, ingest } => run_validate(data_dir, ingest),
        Command::Cohort(args) => run_cohort(args),
        Command::Indicator(args) => run_indicator(args),
        Command::Fixture { which } => run_fixture(which),
    }
}

/// Parses `args` (program name first), runs, and returns the exit code.
/// Diagnostics go to standard error.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("patstat: {e}");
            e.exit_code()
        }
    }
}
