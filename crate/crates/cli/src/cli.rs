use std::ffi::OsString;
use std::fs;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use storyuml_core::classifier::{self, parse_dataset, ClassifierError};
use storyuml_core::project::{
    evaluate_corpus, load_corpus, ExtractionReport, PipelineError, Severity, BUNDLED_CORPUS,
};
use storyuml_core::{ConfusionMatrix, Pipeline, PipelineConfig, PipelineResult};

use crate::repl;
use crate::server::{self, ServeOptions};

/// Generate UML use case diagrams from English user stories.
#[derive(Debug, Parser)]
#[command(name = "storyuml", version)]
pub struct Cli {
    /// TOML file with pipeline settings; flags override it.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Turn a story into PlantUML source.
    Generate(GenerateArgs),
    /// Train the use case classifier from a labeled CSV file.
    Train(TrainArgs),
    /// Score extraction against an annotated corpus.
    Evaluate(EvaluateArgs),
    /// Run the HTTP service.
    Serve(ServeArgs),
    /// Edit the extracted model interactively.
    Edit(EditArgs),
}

#[derive(Debug, Args, Default)]
pub struct PipelineArgs {
    /// Classifier model written by `train`.
    #[arg(long, value_name = "FILE")]
    pub model: Option<PathBuf>,
    /// Keep every extracted use case.
    #[arg(long)]
    pub no_filter: bool,
    /// Directory with replacement lexicon files.
    #[arg(long, value_name = "DIR")]
    pub lexicon_dir: Option<PathBuf>,
    /// Also take objects of infinitives ("to make an appointment").
    #[arg(long)]
    pub infinitives: bool,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// Story file; standard input when omitted or "-".
    pub input: Option<PathBuf>,
    /// Write here instead of standard output.
    #[arg(long, short, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// System name shown on the rectangle.
    #[arg(long)]
    pub system: Option<String>,
    /// Print the full pipeline result as JSON instead of PlantUML.
    #[arg(long)]
    pub json: bool,
    #[command(flatten)]
    pub pipeline: PipelineArgs,
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    /// CSV with a `phrase,label` header; the bundled seed data when omitted.
    #[arg(long, value_name = "FILE")]
    pub data: Option<PathBuf>,
    #[arg(long, default_value_t = classifier::DEFAULT_ALPHA)]
    pub alpha: f64,
    #[arg(long, short, value_name = "FILE")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    /// Line-delimited JSON gold stories; the bundled corpus when omitted.
    #[arg(long, value_name = "FILE")]
    pub corpus: Option<PathBuf>,
    /// Labeled CSV test set for classifier metrics.
    #[arg(long, value_name = "FILE")]
    pub ml_test: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
    #[command(flatten)]
    pub pipeline: PipelineArgs,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[arg(long, default_value_t = 8080)]
    pub port: u16,
    #[arg(long, default_value = "127.0.0.1")]
    pub host: String,
    /// Where projects are stored; defaults to $STORYUML_DATA_DIR, then ./storyuml-data.
    #[arg(long, value_name = "DIR")]
    pub data_dir: Option<PathBuf>,
    /// Built web UI to serve at `/`.
    #[arg(long, value_name = "DIR")]
    pub assets: Option<PathBuf>,
    #[command(flatten)]
    pub pipeline: PipelineArgs,
}

#[derive(Debug, Args)]
pub struct EditArgs {
    /// Story file to extract from; standard input when omitted and no project is given.
    pub input: Option<PathBuf>,
    /// Continue editing a saved project.
    #[arg(long, value_name = "FILE", conflicts_with = "input")]
    pub project: Option<PathBuf>,
    /// System name for a new model.
    #[arg(long)]
    pub system: Option<String>,
    #[command(flatten)]
    pub pipeline: PipelineArgs,
}

/// Failure of a subcommand, split by exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or input data: exit code 1.
    Input(anyhow::Error),
    /// Anything else: exit code 2.
    Internal(anyhow::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Internal(_) => 2,
        }
    }
}

fn input<E: Into<anyhow::Error>>(e: E) -> CliError {
    CliError::Input(e.into())
}

fn internal<E: Into<anyhow::Error>>(e: E) -> CliError {
    CliError::Internal(e.into())
}

impl From<PipelineError> for CliError {
    fn from(e: PipelineError) -> Self {
        CliError::Input(e.into())
    }
}

pub type CliResult = Result<(), CliError>;

/// Parses `argv` and runs the command against the given streams. Returns
/// the process exit code.
pub fn run<I, T>(argv: I, stdin: &mut dyn BufRead, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { stdout } else { stderr };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match dispatch(cli, stdin, stdout, stderr) {
        Ok(()) => 0,
        Err(e) => {
            let (CliError::Input(err) | CliError::Internal(err)) = &e;
            let _ = writeln!(stderr, "error: {err:#}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: Cli, stdin: &mut dyn BufRead, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CliResult {
    let base = match &cli.config {
        Some(path) => load_config(path)?,
        None => PipelineConfig::default(),
    };
    match cli.command {
        Command::Generate(args) => generate(args, base, stdin, stdout, stderr),
        Command::Train(args) => train(args, stdout),
        Command::Evaluate(args) => evaluate(args, base, stdout),
        Command::Serve(args) => serve(args, base, stderr),
        Command::Edit(args) => edit(args, base, stdin, stdout),
    }
}

pub fn load_config(path: &Path) -> Result<PipelineConfig, CliError> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(input)?;
    toml::from_str(&text)
        .with_context(|| format!("parsing {}", path.display()))
        .map_err(input)
}

fn apply_flags(mut config: PipelineConfig, flags: &PipelineArgs, system: Option<&str>) -> PipelineConfig {
    if flags.model.is_some() {
        config.model_path = flags.model.clone();
    }
    if flags.lexicon_dir.is_some() {
        config.lexicon_dir = flags.lexicon_dir.clone();
    }
    if flags.no_filter {
        config.filter = false;
    }
    if flags.infinitives {
        config.include_infinitives = true;
    }
    if let Some(name) = system {
        config.system_name = name.to_string();
    }
    config
}

fn read_story(path: Option<&Path>, stdin: &mut dyn BufRead) -> Result<String, CliError> {
    match path {
        Some(p) if p != Path::new("-") => fs::read_to_string(p)
            .with_context(|| format!("reading {}", p.display()))
            .map_err(input),
        _ => {
            let mut text = String::new();
            stdin.read_to_string(&mut text).context("reading standard input").map_err(input)?;
            Ok(text)
        }
    }
}

pub(crate) fn run_story(story: &str, pipeline: &Pipeline) -> Result<PipelineResult, CliError> {
    pipeline.run(story).map_err(input)
}

fn report_diagnostics(result: &PipelineResult, stderr: &mut dyn Write) -> std::io::Result<()> {
    for d in &result.diagnostics {
        if d.severity == Severity::Info {
            continue;
        }
        let level = match d.severity {
            Severity::Error => "error",
            _ => "warning",
        };
        match d.location {
            Some(l) => writeln!(stderr, "{level}[{}] sentence {}, token {}: {}", d.code, l.sentence + 1, l.token + 1, d.message)?,
            None => writeln!(stderr, "{level}[{}]: {}", d.code, d.message)?,
        }
    }
    Ok(())
}

fn generate(
    args: GenerateArgs,
    base: PipelineConfig,
    stdin: &mut dyn BufRead,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> CliResult {
    let config = apply_flags(base, &args.pipeline, args.system.as_deref());
    let pipeline = Pipeline::from_config(config)?;
    let story = read_story(args.input.as_deref(), stdin)?;
    let result = run_story(&story, &pipeline)?;
    report_diagnostics(&result, stderr).map_err(internal)?;
    let text = if args.json {
        let mut json = serde_json::to_string_pretty(&result).map_err(internal)?;
        json.push('\n');
        json
    } else {
        result.plantuml.clone()
    };
    match &args.out {
        Some(path) => fs::write(path, text)
            .with_context(|| format!("writing {}", path.display()))
            .map_err(input)?,
        None => stdout.write_all(text.as_bytes()).map_err(internal)?,
    }
    if result.has_errors() {
        return Err(CliError::Input(anyhow!("no use case model could be extracted")));
    }
    Ok(())
}

fn train(args: TrainArgs, stdout: &mut dyn Write) -> CliResult {
    let rows = match &args.data {
        Some(path) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))
                .map_err(input)?;
            parse_dataset(&text)
                .with_context(|| format!("parsing {}", path.display()))
                .map_err(input)?
        }
        None => classifier::bundled_seed_dataset(),
    };
    let model = classifier::train(&rows, args.alpha).map_err(input)?;
    fs::write(&args.out, model.to_json())
        .with_context(|| format!("writing {}", args.out.display()))
        .map_err(input)?;
    writeln!(
        stdout,
        "trained on {} phrases ({} genuine, {} not), vocabulary {}, alpha {}",
        rows.len(),
        model.keep.docs,
        model.drop.docs,
        model.vocabulary.len(),
        model.alpha
    )
    .map_err(internal)
}

/// Two-column table with right-aligned values.
pub fn format_table(rows: &[(&str, String)]) -> String {
    let label_width = rows.iter().map(|(l, _)| l.len()).max().unwrap_or(0);
    let value_width = rows.iter().map(|(_, v)| v.len()).max().unwrap_or(0);
    rows.iter()
        .map(|(l, v)| format!("{l:<label_width$}  {v:>value_width$}\n"))
        .collect()
}

pub fn report_table(report: &ExtractionReport) -> String {
    format_table(&[
        ("stories", report.story_count.to_string()),
        ("actual actors", report.actual_actors.to_string()),
        ("identified actors", report.identified_actors.to_string()),
        ("actor identification", format!("{:.2}%", report.actor_pct)),
        ("actual use cases", report.actual_use_cases.to_string()),
        ("identified use cases", report.identified_use_cases.to_string()),
        ("use case identification", format!("{:.2}%", report.use_case_pct)),
    ])
}

pub fn metrics_table(cm: &ConfusionMatrix) -> String {
    let show = |r: Result<f64, ClassifierError>| match r {
        Ok(v) => format!("{:.2}%", 100.0 * v),
        Err(_) => "undefined".to_string(),
    };
    format_table(&[
        ("true positives", cm.tp.to_string()),
        ("false positives", cm.fp.to_string()),
        ("false negatives", cm.fn_.to_string()),
        ("true negatives", cm.tn.to_string()),
        ("accuracy", show(cm.accuracy())),
        ("precision", show(cm.precision())),
        ("recall", show(cm.recall())),
        ("f1", show(cm.f1())),
    ])
}

fn evaluate(args: EvaluateArgs, base: PipelineConfig, stdout: &mut dyn Write) -> CliResult {
    let config = apply_flags(base, &args.pipeline, None);
    let pipeline = Pipeline::from_config(config)?;
    let corpus_text = match &args.corpus {
        Some(path) => fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))
            .map_err(input)?,
        None => BUNDLED_CORPUS.to_string(),
    };
    let corpus = load_corpus(&corpus_text).map_err(input)?;
    if corpus.is_empty() {
        return Err(CliError::Input(anyhow!("corpus is empty")));
    }
    let report = evaluate_corpus(&corpus, &pipeline);

    let confusion = match &args.ml_test {
        Some(path) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))
                .map_err(input)?;
            let rows = parse_dataset(&text).map_err(input)?;
            if rows.is_empty() {
                return Err(CliError::Input(anyhow!("{} has no rows", path.display())));
            }
            let model = match pipeline.model() {
                Some(m) => m.clone(),
                None => classifier::train(&classifier::bundled_seed_dataset(), pipeline.config.alpha)
                    .map_err(internal)?,
            };
            Some(classifier::confusion(&model, &rows))
        }
        None => None,
    };

    if args.json {
        let value = serde_json::json!({
            "extraction": report,
            "classifier": confusion.map(|cm| serde_json::json!({
                "confusion": cm,
                "metrics": classifier::metrics(&cm).ok(),
            })),
        });
        writeln!(stdout, "{}", serde_json::to_string_pretty(&value).map_err(internal)?).map_err(internal)?;
        return Ok(());
    }
    stdout.write_all(report_table(&report).as_bytes()).map_err(internal)?;
    if let Some(cm) = confusion {
        writeln!(stdout).map_err(internal)?;
        stdout.write_all(metrics_table(&cm).as_bytes()).map_err(internal)?;
    }
    Ok(())
}

pub fn data_dir(flag: Option<PathBuf>) -> PathBuf {
    flag.or_else(|| std::env::var_os(server::DATA_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("storyuml-data"))
}

fn serve(args: ServeArgs, base: PipelineConfig, stderr: &mut dyn Write) -> CliResult {
    let config = apply_flags(base, &args.pipeline, None);
    let pipeline = Pipeline::from_config(config)?;
    let options = ServeOptions {
        host: args.host,
        port: args.port,
        data_dir: data_dir(args.data_dir),
        assets: args.assets,
    };
    let runtime = tokio::runtime::Runtime::new().map_err(internal)?;
    runtime.block_on(server::serve(pipeline, options, stderr))
}

fn edit(args: EditArgs, base: PipelineConfig, stdin: &mut dyn BufRead, stdout: &mut dyn Write) -> CliResult {
    let config = apply_flags(base, &args.pipeline, args.system.as_deref());
    let pipeline = Pipeline::from_config(config)?;
    let (result, session, path) = match &args.project {
        Some(path) => {
            let (result, session) = storyuml_core::project::load_project(path).map_err(input)?;
            (result, session, Some(path.clone()))
        }
        None => {
            let story = match &args.input {
                Some(p) => read_story(Some(p), stdin)?,
                None => {
                    writeln!(stdout, "Enter the story, then an empty line:").map_err(internal)?;
                    let mut story = String::new();
                    let mut line = String::new();
                    loop {
                        line.clear();
                        if stdin.read_line(&mut line).map_err(internal)? == 0 || line.trim().is_empty() {
                            break;
                        }
                        story.push_str(&line);
                    }
                    story
                }
            };
            let result = run_story(&story, &pipeline)?;
            let session = storyuml_core::Session::new(result.filtered_model.clone());
            (result, session, None)
        }
    };
    repl::run(result, session, path, stdin, stdout).map_err(internal)
}
