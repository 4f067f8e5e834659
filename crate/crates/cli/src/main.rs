use std::io::{IsTerminal, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context as _, Result};
use clap::{Parser, Subcommand, ValueEnum};
use vocab_lint_core::engine::{
    exit_code, health_mode, render_catalog, render_health, render_report, render_suggestions, render_text, run_lint,
    suggest_mode, InputSpec, OutputFormat, RuleConfig, Suppression,
};
use vocab_lint_core::{Format, Severity};

/// Lint controlled vocabularies, ontology extracts and term tables.
///
/// Settings come from the built-in defaults, then the `--config` JSON file,
/// then command-line flags, each overriding the one before.
#[derive(Parser)]
#[command(name = "vocab-lint", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Obo,
    Tsv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Obo => Format::Obo,
            FormatArg::Tsv => Format::Tsv,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputArg {
    Text,
    Json,
}

impl From<OutputArg> for OutputFormat {
    fn from(o: OutputArg) -> Self {
        match o {
            OutputArg::Text => OutputFormat::Text,
            OutputArg::Json => OutputFormat::Json,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SeverityArg {
    Error,
    Warning,
    Info,
}

impl From<SeverityArg> for Severity {
    fn from(s: SeverityArg) -> Self {
        match s {
            SeverityArg::Error => Severity::Error,
            SeverityArg::Warning => Severity::Warning,
            SeverityArg::Info => Severity::Info,
        }
    }
}

#[derive(clap::Args)]
struct Common {
    /// JSON configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output format.
    #[arg(long, value_enum, default_value = "text")]
    output: OutputArg,
}

#[derive(Subcommand)]
enum Command {
    /// Check term files and report findings.
    Check {
        /// OBO or TSV files.
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Format for every file; guessed from the extension otherwise.
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        #[command(flatten)]
        common: Common,
        /// Lowest severity that makes the exit code 1.
        #[arg(long, value_enum)]
        fail_on: Option<SeverityArg>,
        /// Rule-id pattern to run (repeatable; replaces the config's list).
        #[arg(long = "rule", value_name = "PATTERN")]
        rules: Vec<String>,
        /// Suppress a rule on one subject, as RULE:SUBJECT (repeatable).
        #[arg(long = "suppress", value_name = "RULE:SUBJECT")]
        suppressions: Vec<String>,
        /// Reference vocabularies for reuse findings.
        #[arg(long, num_args = 1..)]
        references: Vec<PathBuf>,
        /// Prefix map file (PREFIX, base, obo|external per line).
        #[arg(long)]
        prefix_map: Option<PathBuf>,
        /// Check each file separately instead of as one vocabulary.
        #[arg(long)]
        isolate: bool,
    },
    /// Search reference vocabularies for existing terms.
    Suggest {
        #[arg(required = true)]
        queries: Vec<String>,
        #[arg(long, num_args = 1.., required = true)]
        references: Vec<PathBuf>,
        /// Results per query.
        #[arg(short = 'k', long, default_value_t = 5, value_parser = clap::value_parser!(u32).range(1..))]
        top: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Score the maintenance health of source vocabularies.
    Health {
        /// Metadata snapshot file.
        #[arg(long)]
        metadata: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// List every rule with its default severity and guideline.
    Rules {
        #[arg(long, value_enum, default_value = "text")]
        output: OutputArg,
    },
}

fn load_config(path: Option<&PathBuf>) -> Result<RuleConfig> {
    match path {
        Some(p) => RuleConfig::load(p).with_context(|| format!("loading config `{}`", p.display())),
        None => Ok(RuleConfig::default()),
    }
}

fn use_color() -> bool {
    std::io::stdout().is_terminal() && std::env::var_os("NO_COLOR").is_none_or(|v| v.is_empty())
}

fn run(cli: Cli) -> Result<(String, u8)> {
    match cli.command {
        Command::Check { files, format, common, fail_on, rules, suppressions, references, prefix_map, isolate } => {
            let mut cfg = load_config(common.config.as_ref())?;
            if let Some(f) = fail_on {
                cfg.fail_threshold = f.into();
            }
            if !rules.is_empty() {
                cfg.enabled_rules = rules;
            }
            for s in &suppressions {
                cfg.suppressions.push(Suppression::parse_flag(s)?);
            }
            if !references.is_empty() {
                cfg.reference_paths = references.into_iter().map(|p| InputSpec::new(p, None)).collect();
            }
            if prefix_map.is_some() {
                cfg.prefix_map_path = prefix_map;
            }
            cfg.isolate_files |= isolate;
            cfg.validate()?;
            let inputs: Vec<InputSpec> = files.into_iter().map(|p| InputSpec::new(p, format.map(Into::into))).collect();
            let report = run_lint(&cfg, &inputs)?;
            let text = match common.output {
                OutputArg::Text => render_text(&report, use_color()),
                OutputArg::Json => render_report(&report, OutputFormat::Json),
            };
            Ok((text, exit_code(&report, &cfg) as u8))
        }
        Command::Suggest { queries, references, top, common } => {
            let mut cfg = load_config(common.config.as_ref())?;
            cfg.reference_paths = references.into_iter().map(|p| InputSpec::new(p, None)).collect();
            let results = suggest_mode(&cfg, &queries, top as usize)?;
            Ok((render_suggestions(&results, common.output.into()), 0))
        }
        Command::Health { metadata, common } => {
            let mut cfg = load_config(common.config.as_ref())?;
            cfg.metadata_path = Some(metadata);
            let out = health_mode(&cfg)?;
            for e in &out.errors {
                eprintln!("vocab-lint: {e}");
            }
            Ok((render_health(&out, common.output.into()), 0))
        }
        Command::Rules { output } => Ok((render_catalog(output.into()), 0)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((text, code)) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("vocab-lint: error: {e:#}");
            ExitCode::from(2)
        }
    }
}
