//! Command-line front end for the advisor engine.
//!
//! Exit codes: 0 on success, 1 on a domain error (unknown id, invalid KB,
//! rejected answer), 2 on a usage error (bad flags, malformed weights).
//! Results go to stdout and diagnostics to stderr. With `--format json` the
//! stdout payload is exactly the body the HTTP service returns for the same
//! request.

use std::collections::BTreeSet;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use msa_advisor_core::advisor::{
    explain_pattern, score_patterns, Decision, ExplanationCard, PendingDecision, QaWeights, Ranking, Session,
    SessionResult, TradeoffReport,
};
use msa_advisor_core::api::{self, to_body, ModelSummary};
use msa_advisor_core::kb::{builtin_kb, export_dot, lint_kb, load_kb, parse_kb, serialize_kb, validate_kb};
use msa_advisor_core::model::NodeKind;
use msa_advisor_core::validate::ValidationReport;
use msa_advisor_core::{AdvisorError, KnowledgeBase};
use num_rational::BigRational;
use num_traits::ToPrimitive;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "msa-advisor",
    version,
    about = "Select microservices architecture patterns by quality attributes"
)]
pub struct Cli {
    /// Knowledge-base JSON file to use instead of the built-in one.
    #[arg(long, global = true, value_name = "PATH")]
    pub kb: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Inspect decision models.
    Models {
        #[command(subcommand)]
        action: ModelsCmd,
    },
    /// Inspect patterns.
    Patterns {
        #[command(subcommand)]
        action: PatternsCmd,
    },
    /// Rank patterns by weighted quality attributes.
    Recommend {
        /// Model id, or `all` for the whole catalog.
        #[arg(long)]
        model: String,
        /// Weight in [0,1] for one quality attribute, as `qa=value`. Repeatable.
        #[arg(long = "weight", value_name = "QA=VALUE")]
        weights: Vec<String>,
    },
    /// Walk a decision model gateway by gateway.
    Walk {
        model: String,
        /// JSON decision log (`[{"gateway":..,"edges":[..]}]`) to replay before prompting.
        #[arg(long, value_name = "FILE")]
        script: Option<PathBuf>,
    },
    /// Report quality-attribute trade-offs of a pattern set.
    Tradeoff {
        #[arg(long, value_delimiter = ',', num_args = 0.., required = true)]
        patterns: Vec<String>,
    },
    /// Check a knowledge-base file.
    Validate { file: PathBuf },
    /// Write the active knowledge base as JSON.
    ExportKb {
        #[arg(short = 'o', long = "output", value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Render a decision model as Graphviz DOT.
    ExportDot {
        model: String,
        #[arg(short = 'o', long = "output", value_name = "FILE")]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum ModelsCmd {
    /// List the decision models.
    List,
}

#[derive(Subcommand, Debug)]
pub enum PatternsCmd {
    /// List patterns, optionally of one model.
    List {
        #[arg(long)]
        model: Option<String>,
    },
    /// Explain one pattern.
    Show { id: String },
}

/// A failure with its exit code. Rendered as `error: CODE: message` on stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub exit: i32,
    pub code: String,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            exit: EXIT_USAGE,
            code: "E_USAGE".into(),
            message: message.into(),
        }
    }

    fn domain(code: &str, message: impl Into<String>) -> Self {
        Failure {
            exit: EXIT_DOMAIN,
            code: code.into(),
            message: message.into(),
        }
    }
}

impl From<AdvisorError> for Failure {
    fn from(e: AdvisorError) -> Self {
        Failure::domain(e.code(), e.to_string())
    }
}

fn io_failure(e: std::io::Error) -> Failure {
    Failure::domain("E_IO", e.to_string())
}

/// Parses `qa=value` tokens. Repeated attributes (also through aliases) keep
/// the last value and produce a warning.
pub fn parse_weights<S: AsRef<str>>(kb: &KnowledgeBase, tokens: &[S]) -> Result<(QaWeights, Vec<String>), Failure> {
    let mut weights = QaWeights::new();
    let mut warnings = Vec::new();
    for tok in tokens {
        let tok = tok.as_ref();
        let (qa, value) = tok
            .split_once('=')
            .filter(|(q, v)| !q.trim().is_empty() && !v.trim().is_empty())
            .ok_or_else(|| Failure::usage(format!("malformed weight `{tok}`, expected qa=number")))?;
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("malformed weight `{tok}`, expected qa=number")))?;
        match weights.set_user(kb, qa.trim(), value) {
            Ok((canonical, Some(_))) => {
                warnings.push(format!("weight for `{canonical}` given more than once; using `{tok}`"))
            }
            Ok(_) => {}
            Err(e) => {
                return Err(Failure {
                    exit: EXIT_USAGE,
                    code: e.code().into(),
                    message: format!("`{tok}`: {e}"),
                })
            }
        }
    }
    Ok((weights, warnings))
}

struct Io<'a> {
    stdin: &'a mut dyn BufRead,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    format: Format,
}

impl Io<'_> {
    /// Prompts belong on stderr when stdout carries JSON.
    fn prompt(&mut self) -> &mut dyn Write {
        match self.format {
            Format::Json => &mut *self.err,
            Format::Table => &mut *self.out,
        }
    }
}

/// Runs one invocation and returns its exit code.
pub fn run<I, T>(argv: I, stdin: &mut dyn BufRead, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let help = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let text = e.render().to_string();
            if help {
                let _ = write!(stdout, "{text}");
                return EXIT_OK;
            }
            let _ = write!(stderr, "{text}");
            return EXIT_USAGE;
        }
    };
    let mut io = Io {
        stdin,
        out: stdout,
        err: stderr,
        format: cli.format,
    };
    match execute(&cli, &mut io) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(io.err, "error: {}: {}", f.code, f.message);
            f.exit
        }
    }
}

fn load(path: Option<&Path>) -> Result<KnowledgeBase, Failure> {
    let Some(path) = path else { return Ok(builtin_kb()) };
    let doc = std::fs::read_to_string(path).map_err(|e| Failure::domain("E_IO", format!("{}: {e}", path.display())))?;
    load_kb(&doc).map_err(|e| {
        let detail = match &e {
            msa_advisor_core::KbError::Invalid(r) => format!("{e}\n{r}"),
            _ => e.to_string(),
        };
        Failure::domain(e.code(), format!("{}: {detail}", path.display()))
    })
}

fn execute(cli: &Cli, io: &mut Io<'_>) -> Result<(), Failure> {
    if let Command::Validate { file } = &cli.command {
        return validate(file, io);
    }
    let kb = load(cli.kb.as_deref())?;
    match &cli.command {
        Command::Models {
            action: ModelsCmd::List,
        } => {
            let models = api::list_models(&kb);
            match io.format {
                Format::Json => writeln!(io.out, "{}", to_body(&models)),
                Format::Table => write!(io.out, "{}", models_table(&models)),
            }
            .map_err(io_failure)
        }
        Command::Patterns {
            action: PatternsCmd::List { model },
        } => {
            let patterns = match model {
                Some(m) => msa_advisor_core::advisor::patterns_in_scope(&kb, m)?,
                None => kb.patterns().iter().collect(),
            };
            match io.format {
                Format::Json => writeln!(io.out, "{}", to_body(&patterns)),
                Format::Table => {
                    let rows: Vec<Vec<String>> = patterns
                        .iter()
                        .map(|p| vec![p.id.clone(), p.area.to_string(), p.name.clone()])
                        .collect();
                    write!(io.out, "{}", table(&["ID", "AREA", "NAME"], &rows))
                }
            }
            .map_err(io_failure)
        }
        Command::Patterns {
            action: PatternsCmd::Show { id },
        } => {
            let card = explain_pattern(&kb, id)?;
            match io.format {
                Format::Json => writeln!(io.out, "{}", to_body(&card)),
                Format::Table => write!(io.out, "{}", card_text(&card)),
            }
            .map_err(io_failure)
        }
        Command::Recommend { model, weights } => {
            let (w, warnings) = parse_weights(&kb, weights)?;
            for warn in warnings {
                let _ = writeln!(io.err, "warning: {warn}");
            }
            let ranking = score_patterns(&kb, model, &w)?;
            match io.format {
                Format::Json => writeln!(io.out, "{}", to_body(&ranking)),
                Format::Table => write!(io.out, "{}", ranking_table(&ranking)),
            }
            .map_err(io_failure)
        }
        Command::Tradeoff { patterns } => {
            let patterns: Vec<String> = patterns.iter().filter(|p| !p.is_empty()).cloned().collect();
            let report = api::tradeoff(&kb, &api::TradeoffRequest { patterns })?;
            match io.format {
                Format::Json => writeln!(io.out, "{}", to_body(&report)),
                Format::Table => write!(io.out, "{}", tradeoff_text(&report)),
            }
            .map_err(io_failure)
        }
        Command::ExportDot { model, output } => {
            let m = kb.model_by_id(model).map_err(AdvisorError::from)?;
            let dot = export_dot(m, kb.catalog());
            match output {
                Some(path) => {
                    std::fs::write(path, dot).map_err(|e| Failure::domain("E_IO", format!("{}: {e}", path.display())))
                }
                None => write!(io.out, "{dot}").map_err(io_failure),
            }
        }
        Command::ExportKb { output } => {
            let doc = serialize_kb(&kb);
            match output {
                Some(path) => {
                    std::fs::write(path, doc).map_err(|e| Failure::domain("E_IO", format!("{}: {e}", path.display())))
                }
                None => write!(io.out, "{doc}").map_err(io_failure),
            }
        }
        Command::Walk { model, script } => walk(&kb, model, script.as_deref(), io),
        Command::Validate { .. } => unreachable!("handled above"),
    }
}

fn validate(file: &Path, io: &mut Io<'_>) -> Result<(), Failure> {
    let doc = std::fs::read_to_string(file).map_err(|e| Failure::domain("E_IO", format!("{}: {e}", file.display())))?;
    let mut data = parse_kb(&doc).map_err(|e| Failure::domain(e.code(), e.to_string()))?;
    data.resolve_aliases();
    let mut report = validate_kb(&data);
    if report.is_valid() {
        if let Ok(kb) = KnowledgeBase::from_data(data) {
            report = lint_kb(&kb);
        }
    }
    match io.format {
        Format::Json => writeln!(io.out, "{}", to_body(&report)),
        Format::Table => writeln!(io.out, "{report}"),
    }
    .map_err(io_failure)?;
    if report.is_valid() {
        Ok(())
    } else {
        Err(Failure::domain("E_INVALID_KB", invalid_summary(&report)))
    }
}

fn invalid_summary(r: &ValidationReport) -> String {
    let codes: BTreeSet<&str> = r.errors.iter().map(|i| i.code.as_str()).collect();
    format!(
        "{} error(s): {}",
        r.errors.len(),
        codes.into_iter().collect::<Vec<_>>().join(", ")
    )
}

fn walk(kb: &KnowledgeBase, model: &str, script: Option<&Path>, io: &mut Io<'_>) -> Result<(), Failure> {
    let mut session = match script {
        Some(path) => {
            let doc = std::fs::read_to_string(path)
                .map_err(|e| Failure::domain("E_IO", format!("{}: {e}", path.display())))?;
            let log: Vec<Decision> = serde_json::from_str(&doc)
                .map_err(|e| Failure::usage(format!("{}: invalid decision log: {e}", path.display())))?;
            Session::replay(kb, model, &log)?
        }
        None => Session::start(kb, model)?,
    };
    while let Some(pending) = session.pending_decisions(kb).into_iter().next() {
        let edges = ask(io, &pending)?;
        if let Err(e) = session.apply_answer(kb, &pending.gateway, &edges) {
            let _ = writeln!(io.prompt(), "rejected: {e}");
        }
    }
    let result = session.result(kb)?;
    match io.format {
        Format::Json => writeln!(io.out, "{}", to_body(&result)),
        Format::Table => write!(io.out, "{}", result_text(&result)),
    }
    .map_err(io_failure)
}

/// Prompts until a syntactically valid choice arrives, or fails on end of input.
fn ask(io: &mut Io<'_>, p: &PendingDecision) -> Result<Vec<String>, Failure> {
    let many = p.kind == NodeKind::GatewayInclusive;
    loop {
        let w = io.prompt();
        let _ = writeln!(w, "\n[{}] {}", p.gateway, p.question.as_deref().unwrap_or("choose"));
        for (i, o) in p.options.iter().enumerate() {
            let _ = writeln!(w, "  {}) {}", i + 1, o.condition.as_deref().unwrap_or(&o.edge));
        }
        let _ = write!(
            w,
            "{}> ",
            if many {
                "choose one or more (e.g. 1,3) "
            } else {
                "choose one "
            }
        );
        let _ = w.flush();

        let mut line = String::new();
        let n = io.stdin.read_line(&mut line).map_err(io_failure)?;
        if n == 0 {
            let _ = writeln!(io.prompt());
            return Err(Failure::domain(
                "E_INCOMPLETE",
                format!("input ended while gateway `{}` was pending", p.gateway),
            ));
        }
        let picks: Result<Vec<usize>, _> = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(str::parse::<usize>)
            .collect();
        match picks {
            Ok(picks) if !picks.is_empty() && picks.iter().all(|&k| (1..=p.options.len()).contains(&k)) => {
                let set: BTreeSet<usize> = picks.into_iter().collect();
                return Ok(set.into_iter().map(|k| p.options[k - 1].edge.clone()).collect());
            }
            _ => {
                let _ = writeln!(io.prompt(), "enter option numbers between 1 and {}", p.options.len());
            }
        }
    }
}

fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (i, (c, w)) in cells.iter().zip(&widths).enumerate() {
            if i + 1 == cells.len() {
                s.push_str(c);
            } else {
                s.push_str(&format!("{c:<w$}  "));
            }
        }
        out.push_str(s.trim_end());
        out.push('\n');
    };
    line(header.to_vec());
    for r in rows {
        line(r.iter().map(String::as_str).collect());
    }
    out
}

fn models_table(models: &[ModelSummary]) -> String {
    let rows: Vec<Vec<String>> = models
        .iter()
        .map(|m| vec![m.id.to_string(), m.pattern_count.to_string(), m.title.clone()])
        .collect();
    table(&["ID", "PATTERNS", "TITLE"], &rows)
}

fn fmt_score(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{:.3}", r.to_f64().unwrap_or(f64::NAN))
    }
}

fn ranking_table(r: &Ranking) -> String {
    let rows: Vec<Vec<String>> = r
        .entries
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let why = e
                .contributions
                .iter()
                .map(|c| format!("{}{}", c.polarity.symbol(), c.qa))
                .collect::<Vec<_>>()
                .join(" ");
            vec![(i + 1).to_string(), fmt_score(&e.score), e.pattern.clone(), why]
        })
        .collect();
    table(&["#", "SCORE", "PATTERN", "CONTRIBUTIONS"], &rows)
}

fn card_text(c: &ExplanationCard) -> String {
    let mut s = format!("{} ({}, {})\n  {}\n", c.name, c.pattern, c.area, c.summary);
    if !c.impacts.is_empty() {
        s.push_str("impacts:\n");
        for i in &c.impacts {
            s.push_str(&format!("  {} {}", i.polarity.symbol(), i.display_name));
            if let Some(n) = &i.note {
                s.push_str(&format!(": {n}"));
            }
            s.push('\n');
        }
    }
    if !c.constraints.is_empty() {
        s.push_str("constraints:\n");
        for k in &c.constraints {
            s.push_str(&format!("  - {k}\n"));
        }
    }
    if !c.complements.is_empty() {
        s.push_str(&format!("complements: {}\n", c.complements.join(", ")));
    }
    for p in &c.paths {
        if !p.is_empty() {
            s.push_str(&format!("reached via: {}\n", p.join(" > ")));
        }
    }
    s
}

fn tradeoff_text(r: &TradeoffReport) -> String {
    let rows: Vec<Vec<String>> = r
        .qas
        .iter()
        .map(|t| {
            let who = t
                .contributors
                .iter()
                .map(|c| format!("{}{}", c.polarity.symbol(), c.pattern))
                .collect::<Vec<_>>()
                .join(" ");
            vec![
                t.qa.clone(),
                t.plus_count.to_string(),
                t.minus_count.to_string(),
                format!("{:+}", t.net),
                if t.is_conflict() { "yes".into() } else { "-".into() },
                who,
            ]
        })
        .collect();
    let mut s = table(&["QA", "PLUS", "MINUS", "NET", "CONFLICT", "PATTERNS"], &rows);
    if !r.constraints.is_empty() {
        s.push_str("constraints:\n");
        for c in &r.constraints {
            s.push_str(&format!("  {}: {}\n", c.pattern, c.constraint));
        }
    }
    s
}

fn result_text(r: &SessionResult) -> String {
    let mut s = format!("selected: {}\n", r.selected.join(", "));
    if !r.suggestions.is_empty() {
        s.push_str(&format!("consider also: {}\n", r.suggestions.join(", ")));
    }
    s.push_str(&tradeoff_text(&r.tradeoff));
    s
}
