//! Command-line front end. Every subcommand is a thin shell over the
//! library; this crate only parses flags and formats results.

mod latex;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use gwtqft::checks::{run_suite, summary_table, CheckReport, Suite, SuiteConfig};
use gwtqft::exactring::TRat;
use gwtqft::gluing::{evaluate_word, parse_word};
use gwtqft::operators::{ClassRefined, Variance};
use gwtqft::partition::{phi_terms, MemoEntry, PartitionEngine, PhiTerm, SectionClassIndex, SpaceParams};
use gwtqft::phicalc::PhiElem;
use gwtqft::{Error, VERSION};

pub use latex::phi_elem as latex_phi_elem;

/// Environment variable naming the directory of the persistent memo table.
pub const CACHE_ENV: &str = "GWTQFT_CACHE_DIR";
const CACHE_FILE: &str = "memo.json";

pub const EXIT_OK: u8 = 0;
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_INTERNAL: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "gwtqft",
    version,
    about = "Section-class equivariant GW partition functions of P2-bundles over curves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Latex,
    Text,
}

#[derive(Args, Debug)]
struct Space {
    /// Genus of the base curve.
    #[arg(short = 'g', long)]
    genus: u32,
    /// First level.
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    level1: i64,
    /// Second level.
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    level2: i64,
}

impl Space {
    fn params(&self) -> SpaceParams {
        SpaceParams::new(self.genus, self.level1, self.level2)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print Z(g|k1,k2).
    Compute {
        #[command(flatten)]
        space: Space,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the component of the section class beta0 + n f.
    Extract {
        #[command(flatten)]
        space: Space,
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print genus-h invariants of one section class.
    Genus {
        #[command(flatten)]
        space: Space,
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long, default_value_t = 3)]
        hmax: u32,
        /// Truncation order of the u-series.
        #[arg(long, default_value_t = 10)]
        order: i32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        gmax: Option<u32>,
        #[arg(long)]
        kmax: Option<i64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        trials: Option<usize>,
        /// Worker threads; defaults to the number of cores.
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Evaluate a cobordism word.
    Word {
        word: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

/// A partition function or one of its class components.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZDoc {
    pub g: u32,
    pub k1: i64,
    pub k2: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<i64>,
    pub terms: Vec<PhiTerm>,
    pub version: String,
}

/// One genus-h invariant in canonical fraction form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenusRow {
    pub h: u32,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenusDoc {
    pub g: u32,
    pub k1: i64,
    pub k2: i64,
    pub n: i64,
    pub order: i32,
    pub rows: Vec<GenusRow>,
    pub version: String,
}

/// Dense entries of one class piece, slot 0 most significant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WordPiece {
    pub n: i32,
    pub entries: Vec<Vec<PhiTerm>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WordDoc {
    pub word: String,
    pub variance: Vec<String>,
    pub pieces: Vec<WordPiece>,
    pub version: String,
}

/// Parses a serialized document and serializes it again; the output is
/// byte-identical to canonical input.
pub fn reserialize<T: Serialize + for<'de> Deserialize<'de>>(json: &str) -> serde_json::Result<String> {
    serde_json::to_string(&serde_json::from_str::<T>(json)?)
}

impl ZDoc {
    pub fn new(p: SpaceParams, n: Option<i64>, z: &PhiElem) -> Self {
        ZDoc { g: p.g, k1: p.k1, k2: p.k2, n, terms: phi_terms(z), version: VERSION.to_string() }
    }
}

impl GenusDoc {
    fn new(p: SpaceParams, n: i64, order: i32, rows: &[(u32, TRat)]) -> Self {
        let rows = rows.iter().map(|(h, v)| GenusRow { h: *h, value: v.to_string() }).collect();
        GenusDoc { g: p.g, k1: p.k1, k2: p.k2, n, order, rows, version: VERSION.to_string() }
    }
}

impl WordDoc {
    fn new(word: &str, r: &ClassRefined) -> Self {
        let variance = r
            .variance()
            .iter()
            .map(|v| match v {
                Variance::Lowered => "lowered".to_string(),
                Variance::Raised => "raised".to_string(),
            })
            .collect();
        let pieces =
            r.pieces().map(|(n, t)| WordPiece { n, entries: t.entries().iter().map(phi_terms).collect() }).collect();
        WordDoc { word: word.to_string(), variance, pieces, version: VERSION.to_string() }
    }
}

/// Exit code for a library error: malformed or unsupported input is a
/// usage error, anything else an internal one.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. }
        | Error::VarianceMismatch(_)
        | Error::InvalidSlot { .. }
        | Error::RankUnderflow(_)
        | Error::UnsupportedLevel(..)
        | Error::InsufficientPrecision { .. }
        | Error::Unsupported(_) => EXIT_USAGE,
        _ => EXIT_INTERNAL,
    }
}

/// The memo table persisted under [`CACHE_ENV`].
struct Cache {
    path: Option<PathBuf>,
    loaded: usize,
}

impl Cache {
    fn open(engine: &PartitionEngine, err: &mut dyn Write) -> Cache {
        let Some(dir) = std::env::var_os(CACHE_ENV).filter(|d| !d.is_empty()) else {
            return Cache { path: None, loaded: 0 };
        };
        let path = Path::new(&dir).join(CACHE_FILE);
        if let Ok(text) = std::fs::read_to_string(&path) {
            let loaded = serde_json::from_str::<Vec<MemoEntry>>(&text)
                .map_err(|e| e.to_string())
                .and_then(|entries| engine.import_memo(&entries).map_err(|e| e.to_string()));
            if let Err(e) = loaded {
                let _ = writeln!(err, "warning: ignoring cache {}: {e}", path.display());
            }
        }
        Cache { path: Some(path), loaded: engine.memo_len() }
    }

    /// Writes the table if it grew, through a temporary file and a rename.
    fn save(&self, engine: &PartitionEngine, err: &mut dyn Write) {
        let Some(path) = &self.path else { return };
        if engine.memo_len() == self.loaded {
            return;
        }
        let json = serde_json::to_string(&engine.export_memo()).expect("memo serializes");
        let tmp = path.with_extension(format!("json.{}.tmp", std::process::id()));
        let written = path
            .parent()
            .map_or(Ok(()), std::fs::create_dir_all)
            .and_then(|_| std::fs::write(&tmp, json))
            .and_then(|_| std::fs::rename(&tmp, path));
        if let Err(e) = written {
            let _ = std::fs::remove_file(&tmp);
            let _ = writeln!(err, "warning: could not write cache {}: {e}", path.display());
        }
    }
}

fn render_z(doc: &ZDoc, z: &PhiElem, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string(doc).expect("document serializes"),
        Format::Latex => latex::phi_elem(z),
        Format::Text => z.to_string(),
    }
}

fn render_genus(doc: &GenusDoc, rows: &[(u32, TRat)], format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string(doc).expect("document serializes"),
        Format::Latex => {
            let mut s = String::from("\\begin{tabular}{rl}\nh & N_h \\\\\n\\hline\n");
            for (h, v) in rows {
                s.push_str(&format!("{h} & {} \\\\\n", latex::trat(v)));
            }
            s.push_str("\\end{tabular}");
            s
        }
        Format::Text => rows.iter().map(|(h, v)| format!("{h}\t{v}")).collect::<Vec<_>>().join("\n"),
    }
}

fn render_word(word: &str, r: &ClassRefined, format: Format) -> String {
    let total = r.total();
    match (format, total.as_scalar()) {
        (Format::Json, _) => serde_json::to_string(&WordDoc::new(word, r)).expect("document serializes"),
        (Format::Latex, Some(z)) => latex::phi_elem(z),
        (Format::Text, Some(z)) => z.to_string(),
        (Format::Latex, None) => {
            let mut s = String::new();
            for (n, t) in r.pieces() {
                s.push_str(&format!("n = {n}:\n"));
                for (pos, e) in t.entries().iter().enumerate() {
                    s.push_str(&format!("  {pos}: {}\n", latex::phi_elem(e)));
                }
            }
            s.trim_end().to_string()
        }
        (Format::Text, None) => r.to_string().trim_end().to_string(),
    }
}

fn render_reports(reports: &[CheckReport], format: Format) -> String {
    match format {
        Format::Json => reports.iter().map(CheckReport::to_json_line).collect::<Vec<_>>().join("\n"),
        Format::Text => summary_table(reports).trim_end().to_string(),
        Format::Latex => {
            let mut s = String::from("\\begin{tabular}{lrl}\ncheck & cases & result \\\\\n\\hline\n");
            for r in reports {
                let id = r.id.replace('_', "\\_");
                s.push_str(&format!(
                    "\\texttt{{{id}}} & {} & {} \\\\\n",
                    r.cases,
                    if r.passed { "pass" } else { "FAIL" }
                ));
            }
            s.push_str("\\end{tabular}");
            s
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: exit_code(&e), message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

fn verify_config(gmax: Option<u32>, kmax: Option<i64>, seed: Option<u64>, trials: Option<usize>) -> SuiteConfig {
    let mut cfg = SuiteConfig::default();
    if let Some(g) = gmax {
        cfg.cy_g_max = g;
        cfg.special.g_max = g;
    }
    if let Some(k) = kmax {
        cfg.cy_k_max = k;
        cfg.special.k_max = k;
    }
    if let Some(s) = seed {
        cfg.seed = s;
    }
    if let Some(t) = trials {
        cfg.trials = t;
    }
    cfg
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8, Failure> {
    let engine = PartitionEngine::new();
    let text = match command {
        Command::Compute { space, format } => {
            let cache = Cache::open(&engine, err);
            let p = space.params();
            let z = engine.compute_z(p)?;
            cache.save(&engine, err);
            render_z(&ZDoc::new(p, None, &z), &z, format)
        }
        Command::Extract { space, n, format } => {
            let cache = Cache::open(&engine, err);
            let p = space.params();
            let z = engine.class_component(p, SectionClassIndex::new(n))?;
            cache.save(&engine, err);
            render_z(&ZDoc::new(p, Some(n), &z), &z, format)
        }
        Command::Genus { space, n, hmax, order, format } => {
            let cache = Cache::open(&engine, err);
            let p = space.params();
            let rows = engine.genus_expansion(p, SectionClassIndex::new(n), hmax, order)?;
            cache.save(&engine, err);
            render_genus(&GenusDoc::new(p, n, order, &rows), &rows, format)
        }
        Command::Word { word, format } => {
            let r = evaluate_word(&parse_word(&word)?)?;
            render_word(&word, &r, format)
        }
        Command::Verify { suite, gmax, kmax, seed, trials, jobs, format } => {
            let suite: Suite = suite.parse()?;
            let cfg = verify_config(gmax, kmax, seed, trials);
            let reports = match jobs {
                Some(0) => return Err(usage("--jobs must be at least 1")),
                Some(j) => rayon::ThreadPoolBuilder::new()
                    .num_threads(j)
                    .build()
                    .map_err(|e| Failure { code: EXIT_INTERNAL, message: e.to_string() })?
                    .install(|| run_suite(suite, &cfg)),
                None => run_suite(suite, &cfg),
            };
            writeln!(out, "{}", render_reports(&reports, format)).ok();
            let ok = !reports.is_empty() && reports.iter().all(|r| r.passed);
            return Ok(if ok { EXIT_OK } else { EXIT_CHECK_FAILED });
        }
    };
    writeln!(out, "{text}").ok();
    Ok(EXIT_OK)
}

/// Runs the command line `args` (program name first) and returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            write!(sink, "{rendered}").ok();
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(f) => {
            writeln!(err, "error: {}", f.message).ok();
            f.code
        }
    }
}
