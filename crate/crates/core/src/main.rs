//! Command-line front door. Every subcommand is a thin shell over the
//! library; results go to stdout, diagnostics to stderr. Exit codes:
//! 0 success, 1 domain errors (invalid input, failed verification),
//! 2 usage errors.

use clap::{Args, Parser, Subcommand, ValueEnum};
use covercount::{
    constant_field_cover, cover_invariants, load_records, parse_dataset, render_pairs,
    render_search, render_verification, run_search, validate_weil, verify_paper_tables,
    CandidateRecord, Error, ErrorPolicy, FetchClient, FetchConfig, FieldSize, IsogenyClassLabel,
    LPolynomial, OutputFormat, RecordsTable, SearchConfig,
};
use num_bigint::BigInt;
use serde_json::{json, Value};
use std::collections::BTreeSet;
use std::io::IsTerminal;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

#[derive(Parser)]
#[command(
    name = "covercount",
    version,
    about = "Invariants and record searches for unramified abelian covers of curves over finite fields"
)]
struct Cli {
    /// Output format; defaults to table on a terminal, json otherwise
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Table,
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Decode an isogeny-class label into its L-polynomial
    Decode {
        /// Label such as 4.2.d_i_o_x
        label: String,
    },
    /// Point counts, class number, and Weil validation for one class
    Invariants {
        #[command(flatten)]
        input: PolyInput,
        /// Extension degrees of point counts to report (default 2g)
        #[arg(long)]
        depth: Option<u32>,
    },
    /// L-polynomial of the same curve over a degree-d extension
    BaseChange {
        #[command(flatten)]
        input: PolyInput,
        /// Extension degree
        #[arg(long)]
        degree: u32,
    },
    /// Cover invariants: label form runs the constant-field trick,
    /// flag form evaluates the general quotient formula
    Cover {
        /// Label such as 4.2.d_i_o_x (omit when using the flag form)
        label: Option<String>,
        /// Order of J_X(K) (flag form)
        #[arg(long)]
        j_order: Option<BigInt>,
        /// Order of the subgroup H (flag form)
        #[arg(long)]
        h_order: Option<BigInt>,
        /// Base genus (flag form)
        #[arg(long)]
        genus: Option<u32>,
        /// Number of points of X(K) that split completely (flag form)
        #[arg(long)]
        split: Option<BigInt>,
    },
    /// Evaluate a candidate dataset against a records table
    Search {
        /// Candidate dataset, one JSON object per line
        #[arg(long)]
        dataset: PathBuf,
        /// Records CSV (default: the bundled prior-records table)
        #[arg(long)]
        records: Option<PathBuf>,
        /// Largest cover genus to report
        #[arg(long)]
        max_cover_genus: Option<u64>,
        /// Smallest base genus to consider
        #[arg(long)]
        min_base_genus: Option<u32>,
        /// Require curve evidence (default: auto from the dataset)
        #[arg(long)]
        require_evidence: Option<bool>,
        /// Comma-separated base field sizes, or "all"
        #[arg(long)]
        allow_fields: Option<String>,
        /// Emit ties and below-record rows too
        #[arg(long)]
        all_rows: bool,
        /// Abort on the first malformed dataset line
        #[arg(long)]
        fail_fast: bool,
        /// Worker threads for candidate evaluation
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Recompute the bundled record tables and compare
    VerifyTables {
        /// Alternative expected-values fixture (JSONL)
        #[arg(long)]
        fixture: Option<PathBuf>,
    },
    /// Fetch isogeny classes from the configured HTTP API and print
    /// them in dataset form
    Fetch {
        /// Base field size
        #[arg(long)]
        q: u64,
        /// Genus
        #[arg(long)]
        genus: u32,
        /// Cache directory (also COVERCOUNT_CACHE_DIR)
        #[arg(long)]
        cache: Option<PathBuf>,
        /// Endpoint override (also COVERCOUNT_LMFDB_URL)
        #[arg(long)]
        base_url: Option<String>,
        /// Minimum delay between requests, in milliseconds
        #[arg(long, default_value_t = 500)]
        delay_ms: u64,
    },
}

/// A class given either as a label or as explicit coefficients.
#[derive(Args)]
struct PolyInput {
    /// Isogeny-class label (alternative to --q with coefficients)
    label: Option<String>,
    /// Field size, used with --half or --full
    #[arg(long, conflicts_with = "label")]
    q: Option<u64>,
    /// Comma-separated a_1..a_g
    #[arg(long, requires = "q", conflicts_with_all = ["label", "full"])]
    half: Option<String>,
    /// Comma-separated a_0..a_2g (a_0 = 1)
    #[arg(long, requires = "q", conflicts_with = "label")]
    full: Option<String>,
}

impl PolyInput {
    fn resolve(&self) -> Result<LPolynomial, CliError> {
        match (&self.label, self.q, &self.half, &self.full) {
            (Some(label), None, None, None) => Ok(IsogenyClassLabel::parse(label)?.lpolynomial()?),
            (None, Some(q), Some(half), None) => {
                let coefficients = parse_integers(half)?;
                let genus = coefficients.len() as u32;
                Ok(LPolynomial::from_half(
                    FieldSize::new(q)?,
                    genus,
                    &coefficients,
                )?)
            }
            (None, Some(q), None, Some(full)) => {
                let coefficients = parse_integers(full)?;
                if coefficients.len() < 3 || coefficients.len() % 2 == 0 {
                    return Err(CliError::Usage(
                        "--full needs an odd number of coefficients, at least 3".to_string(),
                    ));
                }
                let genus = (coefficients.len() / 2) as u32;
                Ok(LPolynomial::new(FieldSize::new(q)?, genus, coefficients)?)
            }
            _ => Err(CliError::Usage(
                "give a label, or --q with exactly one of --half/--full".to_string(),
            )),
        }
    }
}

fn parse_integers(text: &str) -> Result<Vec<BigInt>, CliError> {
    text.split(',')
        .map(|piece| {
            piece
                .trim()
                .parse::<BigInt>()
                .map_err(|_| CliError::Usage(format!("not an integer: {piece:?}")))
        })
        .collect()
}

/// Domain errors exit 1; usage errors exit 2.
enum CliError {
    Domain(Error),
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = resolve_format(cli.format);
    match run(cli.command, format) {
        Ok(code) => code,
        Err(CliError::Domain(error)) => {
            eprintln!("error: {error}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(message)) => {
            eprintln!("usage error: {message}");
            ExitCode::from(2)
        }
    }
}

fn resolve_format(flag: Option<FormatArg>) -> OutputFormat {
    match flag {
        Some(FormatArg::Table) => OutputFormat::Table,
        Some(FormatArg::Csv) => OutputFormat::Csv,
        Some(FormatArg::Json) => OutputFormat::Json,
        None if std::io::stdout().is_terminal() => OutputFormat::Table,
        None => OutputFormat::Json,
    }
}

fn bigint(value: &BigInt) -> Value {
    covercount::render::bigint_value(value)
}

fn bigints(values: &[BigInt]) -> Value {
    Value::Array(values.iter().map(bigint).collect())
}

fn run(command: Command, format: OutputFormat) -> Result<ExitCode, CliError> {
    match command {
        Command::Decode { label } => {
            let label = IsogenyClassLabel::parse(&label)?;
            let lpoly = label.lpolynomial()?;
            print!(
                "{}",
                render_pairs(
                    &[
                        ("label", Value::String(label.to_string())),
                        ("field", json!(label.field().q())),
                        ("genus", json!(label.genus())),
                        ("coefficients", bigints(lpoly.coefficients())),
                    ],
                    format
                )
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Invariants { input, depth } => {
            let lpoly = input.resolve()?;
            let depth = depth.unwrap_or(2 * lpoly.genus()).max(1);
            let report = validate_weil(&lpoly);
            let counts = lpoly.point_counts(depth as usize);
            let class_number = lpoly
                .class_number()
                .map(|h| bigint(&h))
                .unwrap_or(Value::Null);
            print!(
                "{}",
                render_pairs(
                    &[
                        ("field", json!(lpoly.base_field().q())),
                        ("genus", json!(lpoly.genus())),
                        ("coefficients", bigints(lpoly.coefficients())),
                        ("point_counts", bigints(counts.values())),
                        ("class_number", class_number),
                        (
                            "functional_equation_ok",
                            json!(report.functional_equation_ok)
                        ),
                        ("root_location_ok", json!(report.root_location_ok)),
                        ("plausibility_ok", json!(report.plausibility_ok)),
                        (
                            "findings",
                            Value::Array(
                                report
                                    .failure_messages()
                                    .into_iter()
                                    .map(Value::String)
                                    .collect()
                            )
                        ),
                    ],
                    format
                )
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::BaseChange { input, degree } => {
            let lpoly = input.resolve()?;
            let changed = lpoly.base_change(degree)?;
            print!(
                "{}",
                render_pairs(
                    &[
                        ("field", json!(changed.base_field().q())),
                        ("genus", json!(changed.genus())),
                        ("coefficients", bigints(changed.coefficients())),
                    ],
                    format
                )
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Cover {
            label,
            j_order,
            h_order,
            genus,
            split,
        } => {
            let flags = [
                j_order.is_some(),
                h_order.is_some(),
                genus.is_some(),
                split.is_some(),
            ];
            let any_flag = flags.iter().any(|&x| x);
            match (label, any_flag) {
                (Some(_), true) => Err(CliError::Usage(
                    "give a label or the four --j-order/--h-order/--genus/--split flags, not both"
                        .to_string(),
                )),
                (Some(text), false) => {
                    let parsed = IsogenyClassLabel::parse(&text)?;
                    let lpoly = parsed.lpolynomial()?;
                    let cover = constant_field_cover(&lpoly)?;
                    let target = lpoly.base_field().extend(2)?;
                    print!(
                        "{}",
                        render_pairs(
                            &[
                                ("label", Value::String(parsed.to_string())),
                                ("base_field", json!(lpoly.base_field().q())),
                                ("target_field", json!(target.q())),
                                ("base_genus", json!(cover.base_genus)),
                                ("group_order", bigint(&cover.quotient_order)),
                                ("cover_genus", bigint(&cover.cover_genus)),
                                ("cover_points", bigint(&cover.cover_points)),
                            ],
                            format
                        )
                    );
                    Ok(ExitCode::SUCCESS)
                }
                (None, _) => {
                    let (Some(j), Some(h), Some(genus), Some(split)) =
                        (j_order, h_order, genus, split)
                    else {
                        return Err(CliError::Usage(
                            "flag form needs all of --j-order, --h-order, --genus, --split"
                                .to_string(),
                        ));
                    };
                    let cover = cover_invariants(&j, &h, genus, &split)?;
                    print!(
                        "{}",
                        render_pairs(
                            &[
                                ("base_genus", json!(cover.base_genus)),
                                ("group_order", bigint(&cover.quotient_order)),
                                ("cover_genus", bigint(&cover.cover_genus)),
                                ("split_count", bigint(&cover.split_count)),
                                ("cover_points", bigint(&cover.cover_points)),
                            ],
                            format
                        )
                    );
                    Ok(ExitCode::SUCCESS)
                }
            }
        }
        Command::Search {
            dataset,
            records,
            max_cover_genus,
            min_base_genus,
            require_evidence,
            allow_fields,
            all_rows,
            fail_fast,
            jobs,
        } => {
            let text = std::fs::read_to_string(&dataset).map_err(Error::from)?;
            let policy = if fail_fast {
                ErrorPolicy::FailFast
            } else {
                ErrorPolicy::SkipAndReport
            };
            let parsed = parse_dataset(&text, policy, &dataset.display().to_string())?;
            for error in &parsed.errors {
                eprintln!("dataset: {error}");
            }
            let records_table = load_records_from(records.as_deref())?;
            let mut config = SearchConfig {
                include_all_rows: all_rows,
                require_curve_evidence: require_evidence,
                ..SearchConfig::default()
            };
            if let Some(cap) = max_cover_genus {
                config.max_cover_genus = cap;
            }
            if let Some(minimum) = min_base_genus {
                config.min_base_genus = minimum;
            }
            if let Some(fields) = allow_fields {
                config.base_field_allowlist = parse_allowlist(&fields)?;
            }
            let report = execute_search(&parsed.records, &records_table, &config, jobs)?;
            print!("{}", render_search(&report, format));
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyTables { fixture } => {
            let text = match fixture {
                Some(path) => std::fs::read_to_string(path).map_err(Error::from)?,
                None => covercount::bundled_verification_fixture().to_string(),
            };
            let report = verify_paper_tables(&text)?;
            print!("{}", render_verification(&report, format));
            if report.all_pass() {
                Ok(ExitCode::SUCCESS)
            } else {
                eprintln!(
                    "verification failed: {}/{} rows pass",
                    report.passed, report.total
                );
                Ok(ExitCode::from(1))
            }
        }
        Command::Fetch {
            q,
            genus,
            cache,
            base_url,
            delay_ms,
        } => {
            let mut config = FetchConfig::from_env();
            if let Some(url) = base_url {
                config.base_url = url;
            }
            if let Some(dir) = cache {
                config.cache_dir = Some(dir);
            }
            config.min_delay = Duration::from_millis(delay_ms);
            let records = FetchClient::new(config).fetch_candidates(q, genus)?;
            eprintln!(
                "fetched {} classes for genus {genus} over F_{q}",
                records.len()
            );
            for record in &records {
                let mut line = json!({"label": record.label.to_string()});
                if let Some(count) = record.curve_evidence {
                    line["curve_count"] = json!(count);
                }
                println!("{line}");
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn load_records_from(path: Option<&std::path::Path>) -> Result<RecordsTable, CliError> {
    let text = match path {
        Some(path) => std::fs::read_to_string(path).map_err(Error::from)?,
        None => covercount::bundled_old_records().to_string(),
    };
    Ok(load_records(&text)?)
}

fn parse_allowlist(text: &str) -> Result<Option<BTreeSet<u64>>, CliError> {
    if text.trim().eq_ignore_ascii_case("all") {
        return Ok(None);
    }
    let mut fields = BTreeSet::new();
    for piece in text.split(',') {
        let q: u64 = piece
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("not a field size: {piece:?}")))?;
        fields.insert(q);
    }
    if fields.is_empty() {
        return Err(CliError::Usage("empty field allowlist".to_string()));
    }
    Ok(Some(fields))
}

fn execute_search(
    candidates: &[CandidateRecord],
    records: &RecordsTable,
    config: &SearchConfig,
    jobs: Option<usize>,
) -> Result<covercount::SearchReport, CliError> {
    match jobs {
        None => Ok(run_search(candidates, records, config)),
        Some(threads) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads.max(1))
                .build()
                .map_err(|e| CliError::Domain(Error::Io(e.to_string())))?;
            Ok(pool.install(|| run_search(candidates, records, config)))
        }
    }
}
