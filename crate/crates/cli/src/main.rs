//! `semibrace`: validate, analyze, construct and enumerate finite left
//! semi-braces stored as JSON structure files.
//!
//! Exit codes: 0 ok, 1 parse error, 2 semantic or validation error,
//! 3 resource cap exceeded.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use semibrace::constructions::{
    conjugation_map, direct_product, endomorphism_from_pairs, from_idempotent_endomorphism, quotient, semidirect,
    skew_brace_of_group, trivial_semibrace, ActionTable,
};
use semibrace::enumeration::{enumerate, search_counterexample, EnumerationOptions, Question, DEFAULT_RAW_CAP};
use semibrace::format::{FileError, StructureFile};
use semibrace::report::{analyze, labels_of};
use semibrace::subsets::{is_ideal_def, is_ideal_prop, is_ideal_thm, is_left_ideal, IdealVerdict};
use semibrace::ybe::{check_braid, properties, restrict_to_e, solution_of};
use semibrace::{catalog_group, Elem, Error, FiniteLeftSemibrace, Subset};

#[derive(Parser)]
#[command(name = "semibrace", version, about = "Finite left semi-braces from Cayley tables")]
struct Cli {
    /// Directory searched for structure files given by bare name.
    #[arg(long, global = true, default_value = "fixtures")]
    fixture_dir: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct OutputFormat {
    /// Emit JSON.
    #[arg(long, conflicts_with = "text")]
    json: bool,
    /// Emit plain text (the default).
    #[arg(long)]
    text: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Check the semi-brace axioms.
    Validate { path: String },
    /// Full report: decomposition, socles, series, nilpotency, YBE.
    Analyze {
        path: String,
        #[command(flatten)]
        format: OutputFormat,
    },
    /// The nilpotency series and the profile derived from them.
    Series {
        path: String,
        #[command(flatten)]
        format: OutputFormat,
    },
    /// Ideal tests for one subset, or every ideal and left ideal.
    Ideals {
        path: String,
        /// Comma-separated element labels.
        #[arg(long)]
        subset: Option<String>,
        #[command(flatten)]
        format: OutputFormat,
    },
    /// Build a structure file from a recipe.
    Construct(ConstructArgs),
    /// The quotient by an ideal.
    Quotient {
        path: String,
        /// Comma-separated element labels of the ideal.
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The Yang–Baxter solution and its properties.
    Ybe {
        path: String,
        #[command(flatten)]
        format: OutputFormat,
    },
    /// Semi-braces of one order up to isomorphism.
    Enumerate {
        order: usize,
        /// Largest order searched exhaustively.
        #[arg(long, default_value_t = DEFAULT_RAW_CAP)]
        cap: usize,
        /// Only the constructive families, at any order.
        #[arg(long)]
        family_only: bool,
        /// Write one structure file per class and a census here.
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[command(flatten)]
        format: OutputFormat,
    },
    /// Look for a nil structure that is not nilpotent.
    Search {
        /// right_nil or left_nil.
        question: String,
        max_order: Option<usize>,
        #[arg(long = "max-order", conflicts_with = "max_order")]
        max_order_flag: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_RAW_CAP)]
        cap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        format: OutputFormat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Recipe {
    Trivial,
    Skewbrace,
    Endo,
    Direct,
    Semidirect,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Orient {
    /// The skew brace factor is acted on: `--left` skew, `--right` trivial.
    #[value(name = "S-acts")]
    SActs,
    /// The trivial factor is acted on: `--left` trivial, `--right` skew.
    #[value(name = "T-acts")]
    TActs,
}

#[derive(Args)]
struct ConstructArgs {
    recipe: Recipe,
    /// Catalog group for trivial, skewbrace and endo.
    #[arg(long)]
    group: Option<String>,
    /// Endomorphism on generators, e.g. "(12)->(12),(123)->id".
    #[arg(long)]
    phi: Option<String>,
    /// Acted-on factor: a file, a fixture name, or `<Group>brace` /
    /// `<Group>trivial`.
    #[arg(long)]
    left: Option<String>,
    /// Acting factor, same forms as `--left`.
    #[arg(long)]
    right: Option<String>,
    /// `trivial`, or `conj(x)` per generator of the acting factor
    /// (separated by `;`), conjugating by the element labelled `x`.
    #[arg(long, default_value = "trivial")]
    action: String,
    #[arg(long)]
    orient: Option<Orient>,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Parse(String),
    Semantic(String),
    Cap(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Parse(_) => 1,
            Failure::Semantic(_) => 2,
            Failure::Cap(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Parse(m) | Failure::Semantic(m) | Failure::Cap(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. } => Failure::Cap(e.to_string()),
            other => Failure::Semantic(other.to_string()),
        }
    }
}

/// `println!` that exits quietly when stdout is closed early.
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        if let Err(e) = writeln!(std::io::stdout(), $($t)*) {
            stdout_failed(e)
        }
    }};
}

macro_rules! out_raw {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        if let Err(e) = write!(std::io::stdout(), $($t)*) {
            stdout_failed(e)
        }
    }};
}

fn stdout_failed(e: std::io::Error) -> ! {
    if e.kind() == std::io::ErrorKind::BrokenPipe {
        std::process::exit(0);
    }
    eprintln!("error: writing output: {e}");
    std::process::exit(1);
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    let dir = cli.fixture_dir.as_path();
    match &cli.command {
        Command::Validate { path } => {
            let b = load(dir, path)?;
            out!(
                "valid left semi-brace: |B| = {}, |G| = {}, |E| = {}",
                b.order(),
                b.group_elems().len(),
                b.idempotents().len()
            );
            Ok(())
        }
        Command::Analyze { path, format } => {
            let r = analyze(&load(dir, path)?)?;
            out_raw!("{}", if format.json { r.to_json() } else { r.to_text() });
            Ok(())
        }
        Command::Series { path, format } => {
            let r = analyze(&load(dir, path)?)?;
            if format.json {
                emit_json(&json!({ "profile": r.profile, "series": r.series }));
            } else {
                let text = r.to_text();
                let body: Vec<&str> = text
                    .lines()
                    .skip_while(|l| !l.starts_with("right nilpotent"))
                    .take_while(|l| !l.starts_with("braid relation"))
                    .collect();
                out!("{}", body.join("\n"));
            }
            Ok(())
        }
        Command::Ideals { path, subset, format } => ideals(&load(dir, path)?, subset.as_deref(), *format),
        Command::Construct(args) => construct(dir, args),
        Command::Quotient { path, ideal, out } => {
            let b = load(dir, path)?;
            let i = parse_subset(&b, ideal)?;
            let q = quotient(&b, &i)?;
            let mut meta = BTreeMap::new();
            meta.insert("quotient_of".to_string(), json!(path));
            meta.insert("ideal".to_string(), json!(labels_of(&b, &i)));
            meta.insert("projection".to_string(), json!(q.projection));
            write_structure(&q.semibrace, meta, out.as_deref())
        }
        Command::Ybe { path, format } => {
            let b = load(dir, path)?;
            let r = solution_of(&b);
            let braid = check_braid(&r);
            let s = restrict_to_e(&b, &r);
            let props = properties(&r);
            if format.json {
                emit_json(&json!({
                    "braid": braid,
                    "s_idempotent": s.is_ok(),
                    "s_order": s.as_ref().map(|s| s.map.order()).ok(),
                    "properties": props,
                }));
            } else {
                out!("braid relation: {}", yes(braid.holds));
                if let Some(w) = braid.witness {
                    out!("  fails at ({}, {}, {})", b.label(w[0]), b.label(w[1]), b.label(w[2]));
                }
                out!("s idempotent: {}", yes(s.is_ok()));
                out!("bijective: {}", yes(props.bijective));
                out!("involutive: {}", yes(props.involutive));
                out!("idempotent: {}", yes(props.idempotent));
                out!("left non-degenerate: {}", yes(props.left_non_degenerate));
                out!("right non-degenerate: {}", yes(props.right_non_degenerate));
                out!("period: {}", props.period);
            }
            Ok(())
        }
        Command::Enumerate { order, cap, family_only, out_dir, format } => {
            let census = enumerate(*order, EnumerationOptions { cap: *cap, family_only: *family_only })?;
            let entries: Vec<_> = census
                .entries
                .iter()
                .enumerate()
                .map(|(i, e)| {
                    let b = &e.semibrace;
                    json!({
                        "index": i,
                        "origin": e.origin,
                        "g_order": b.group_elems().len(),
                        "e_order": b.idempotents().len(),
                        "skew_brace": b.is_skew_brace(),
                    })
                })
                .collect();
            let report = json!({
                "order": census.order,
                "completeness": census.completeness,
                "count": census.entries.len(),
                "candidates": census.candidates,
                "structures": entries,
            });
            if let Some(dir) = out_dir {
                fs::create_dir_all(dir).map_err(|e| Failure::Semantic(format!("{}: {e}", dir.display())))?;
                for (i, e) in census.entries.iter().enumerate() {
                    let mut meta = BTreeMap::new();
                    meta.insert("origin".to_string(), json!(e.origin));
                    let text = StructureFile::from_semibrace(&e.semibrace, Some(meta)).to_json();
                    write_file(&dir.join(format!("order{}_{i:03}.json", census.order)), &text)?;
                }
                write_file(&dir.join(format!("census_{}.json", census.order)), &pretty(&report))?;
            }
            if format.json {
                emit_json(&report);
            } else {
                out!("order {}: {} structures ({})", census.order, census.entries.len(), census.completeness);
                for e in &census.entries {
                    let b = &e.semibrace;
                    out!(
                        "  |G| = {}, |E| = {}  {}",
                        b.group_elems().len(),
                        b.idempotents().len(),
                        e.origin
                    );
                }
            }
            Ok(())
        }
        Command::Search { question, max_order, max_order_flag, cap, out, format } => {
            let q: Question = question.parse().map_err(|e: Error| Failure::Parse(e.to_string()))?;
            let max = max_order.or(*max_order_flag).unwrap_or(4);
            let report = search_counterexample(q, max, *cap)?;
            let text = pretty(&serde_json::to_value(&report).expect("report serializes"));
            if let Some(path) = out {
                write_file(path, &text)?;
            }
            if format.json {
                out_raw!("{text}");
            } else {
                out!("question: {}", q.name());
                out!("orders searched: {:?}", report.orders_searched);
                out!("structures checked: {}", report.structures_checked);
                match &report.witness {
                    Some(w) => out!("witness of order {}: {}", w.order, w.origin),
                    None => out!("no witness"),
                }
                out!("exhaustive: {}", yes(report.exhaustive));
            }
            Ok(())
        }
    }
}

fn yes(x: bool) -> &'static str {
    if x {
        "yes"
    } else {
        "no"
    }
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

fn emit_json(v: &serde_json::Value) {
    out_raw!("{}", pretty(v));
}

fn write_file(path: &Path, text: &str) -> Outcome {
    // write then rename so readers never see a partial file
    let tmp = path.with_extension("json.tmp");
    fs::write(&tmp, text)
        .and_then(|_| fs::rename(&tmp, path))
        .map_err(|e| Failure::Semantic(format!("{}: {e}", path.display())))
}

/// A path as given, or a bare name looked up in the fixture directory.
fn resolve_path(dir: &Path, name: &str) -> Option<PathBuf> {
    let direct = PathBuf::from(name);
    if direct.is_file() {
        return Some(direct);
    }
    [dir.join(name), dir.join(format!("{name}.json"))].into_iter().find(|p| p.is_file())
}

fn load(dir: &Path, name: &str) -> Result<FiniteLeftSemibrace, Failure> {
    let path = resolve_path(dir, name).ok_or_else(|| Failure::Parse(format!("{name}: no such file")))?;
    let text = fs::read_to_string(&path).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;
    let file = StructureFile::parse(&text).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;
    let labels = file.labels.clone().unwrap_or_else(|| (0..file.order).map(|i| i.to_string()).collect());
    file.to_semibrace().map_err(|e| match e {
        FileError::Format(f) => Failure::Parse(f.to_string()),
        FileError::Invalid(v) => Failure::Semantic(v.describe(&labels)),
    })
}

/// Splits on commas outside parentheses.
fn split_top_level(s: &str, sep: char) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut current = String::new();
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if c == sep && depth == 0 {
            out.push(current.trim().to_string());
            current.clear();
        } else {
            current.push(c);
        }
    }
    if !current.trim().is_empty() {
        out.push(current.trim().to_string());
    }
    out
}

fn element(labels: &[String], token: &str) -> Result<Elem, Failure> {
    let compact = |s: &str| s.chars().filter(|c| !c.is_whitespace()).collect::<String>();
    let t = compact(token);
    labels
        .iter()
        .position(|l| compact(l) == t)
        .or_else(|| labels.iter().position(|l| compact(l) == format!("({t})")))
        .ok_or_else(|| Failure::Parse(format!("unknown element {token:?}")))
}

fn parse_subset(b: &FiniteLeftSemibrace, list: &str) -> Result<Subset, Failure> {
    let elems = split_top_level(list, ',')
        .iter()
        .map(|t| element(b.labels(), t))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Subset::from_elems(b.order(), elems))
}

fn verdict_json(b: &FiniteLeftSemibrace, v: &IdealVerdict) -> serde_json::Value {
    json!({
        "is_left_ideal": v.is_left_ideal,
        "is_ideal": v.is_ideal,
        "failure": v.failure.as_ref().map(|f| json!({
            "condition": f.condition,
            "witness": f.witness.iter().map(|&x| b.label(x)).collect::<Vec<_>>(),
        })),
    })
}

fn ideals(b: &FiniteLeftSemibrace, subset: Option<&str>, format: OutputFormat) -> Outcome {
    if let Some(list) = subset {
        let i = parse_subset(b, list)?;
        let prop = match is_ideal_prop(b, &i) {
            Ok(v) => verdict_json(b, &v),
            Err(e) => json!({ "error": e.to_string() }),
        };
        let report = json!({
            "subset": labels_of(b, &i),
            "left_ideal": verdict_json(b, &is_left_ideal(b, &i)),
            "def": verdict_json(b, &is_ideal_def(b, &i)),
            "thm": verdict_json(b, &is_ideal_thm(b, &i)),
            "prop": prop,
        });
        if format.json {
            emit_json(&report);
        } else {
            out!("subset {{{}}}", labels_of(b, &i).join(", "));
            for key in ["left_ideal", "def", "thm", "prop"] {
                let v = &report[key];
                let mut line = format!("  {key}: ideal {}, left ideal {}", v["is_ideal"], v["is_left_ideal"]);
                if let Some(f) = v["failure"].as_object() {
                    let _ = write!(line, ", fails {} at {}", f["condition"], f["witness"]);
                }
                if let Some(e) = v["error"].as_str() {
                    line = format!("  {key}: {e}");
                }
                out!("{line}");
            }
        }
        return Ok(());
    }
    let n = b.order();
    if n > 16 {
        return Err(Failure::Cap(format!("listing all ideals needs order ≤ 16, got {n}; use --subset")));
    }
    let mut ideals = Vec::new();
    let mut left = Vec::new();
    for mask in 0u32..(1 << (n - 1)) {
        let s = Subset::from_elems(n, std::iter::once(0).chain((1..n).filter(|&x| mask >> (x - 1) & 1 == 1)));
        let v = is_ideal_thm(b, &s);
        if v.is_ideal {
            ideals.push(labels_of(b, &s));
        } else if v.is_left_ideal {
            left.push(labels_of(b, &s));
        }
    }
    ideals.sort_by_key(|s| s.len());
    left.sort_by_key(|s| s.len());
    if format.json {
        emit_json(&json!({ "ideals": ideals, "left_ideals_not_ideals": left }));
    } else {
        out!("ideals ({}):", ideals.len());
        for s in &ideals {
            out!("  {{{}}}", s.join(", "));
        }
        out!("left ideals that are not ideals ({}):", left.len());
        for s in &left {
            out!("  {{{}}}", s.join(", "));
        }
    }
    Ok(())
}

fn group_arg(args: &ConstructArgs) -> Result<(String, semibrace::GroupTable), Failure> {
    let name = args.group.clone().ok_or_else(|| Failure::Parse("--group is required".into()))?;
    let g = catalog_group(&name).ok_or_else(|| Failure::Semantic(format!("unknown catalog group {name}")))?;
    Ok((name, g))
}

/// `<Group>brace`, `<Group>trivial`, or a structure file.
fn piece(dir: &Path, name: &str) -> Result<FiniteLeftSemibrace, Failure> {
    if let Some(g) = name.strip_suffix("brace").and_then(catalog_group) {
        return Ok(skew_brace_of_group(&g));
    }
    if let Some(g) = name.strip_suffix("trivial").and_then(catalog_group) {
        return Ok(trivial_semibrace(&g));
    }
    load(dir, name)
}

fn construct(dir: &Path, args: &ConstructArgs) -> Outcome {
    let mut meta = BTreeMap::new();
    let b = match args.recipe {
        Recipe::Trivial => {
            let (name, g) = group_arg(args)?;
            meta.insert("recipe".to_string(), json!(format!("trivial {name}")));
            trivial_semibrace(&g)
        }
        Recipe::Skewbrace => {
            let (name, g) = group_arg(args)?;
            meta.insert("recipe".to_string(), json!(format!("skewbrace {name}")));
            skew_brace_of_group(&g)
        }
        Recipe::Endo => {
            let (name, g) = group_arg(args)?;
            let phi_text = args.phi.as_deref().ok_or_else(|| Failure::Parse("--phi is required".into()))?;
            let pairs = split_top_level(phi_text, ',')
                .iter()
                .map(|p| {
                    let (from, to) = p.split_once("->").ok_or_else(|| Failure::Parse(format!("bad pair {p:?}")))?;
                    Ok((element(g.labels(), from)?, element(g.labels(), to)?))
                })
                .collect::<Result<Vec<_>, Failure>>()?;
            let phi = endomorphism_from_pairs(&g, &pairs)
                .ok_or_else(|| Failure::Semantic(format!("{phi_text:?} does not extend to an endomorphism of {name}")))?;
            meta.insert("recipe".to_string(), json!(format!("endo {name} {phi_text}")));
            from_idempotent_endomorphism(&g, &phi)?
        }
        Recipe::Direct | Recipe::Semidirect => {
            let left_arg = args.left.as_deref().ok_or_else(|| Failure::Parse("--left is required".into()))?;
            let right_arg = args.right.as_deref().ok_or_else(|| Failure::Parse("--right is required".into()))?;
            let left = piece(dir, left_arg)?;
            let right = piece(dir, right_arg)?;
            if matches!(args.recipe, Recipe::Direct) {
                meta.insert("recipe".to_string(), json!(format!("direct {left_arg} {right_arg}")));
                direct_product(&left, &right)
            } else {
                if let Some(o) = args.orient {
                    let (acted_skew, acting_trivial) = (left.is_skew_brace(), right.idempotents().is_full());
                    let (left_trivial, right_skew) = (left.idempotents().is_full(), right.is_skew_brace());
                    let ok = match o {
                        Orient::SActs => acted_skew && acting_trivial,
                        Orient::TActs => left_trivial && right_skew,
                    };
                    if !ok {
                        return Err(Failure::Semantic("--orient does not match the factors".into()));
                    }
                }
                let action = parse_action(&left, &right, &args.action)?;
                meta.insert(
                    "recipe".to_string(),
                    json!(format!("semidirect {left_arg} {right_arg} {}", args.action)),
                );
                semidirect(&left, &right, &action)?
            }
        }
    };
    write_structure(&b, meta, args.out.as_deref())
}

fn parse_action(acted: &FiniteLeftSemibrace, acting: &FiniteLeftSemibrace, text: &str) -> Result<ActionTable, Failure> {
    if text.trim() == "trivial" {
        return Ok(ActionTable::trivial(acting.order(), acted.order()));
    }
    let gens = acting.mul_group_table().generators();
    let parts: Vec<String> = split_top_level(text, ';');
    if parts.len() != gens.len() {
        return Err(Failure::Parse(format!(
            "action needs {} generator image(s) for {}, got {}",
            gens.len(),
            labels_of(acting, &Subset::from_elems(acting.order(), gens.iter().copied())).join(", "),
            parts.len()
        )));
    }
    let images = parts
        .iter()
        .map(|p| {
            let inner = p
                .strip_prefix("conj(")
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(|| Failure::Parse(format!("bad action {p:?}; expected conj(x)")))?;
            Ok(conjugation_map(acted, element(acted.labels(), inner)?))
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    Ok(ActionTable::generated(acting, acted.order(), &gens, &images)?)
}

fn write_structure(
    b: &FiniteLeftSemibrace,
    meta: BTreeMap<String, serde_json::Value>,
    out: Option<&Path>,
) -> Outcome {
    let text = StructureFile::from_semibrace(b, Some(meta)).to_json();
    let summary = format!(
        "|B| = {}, |G| = {}, |E| = {}",
        b.order(),
        b.group_elems().len(),
        b.idempotents().len()
    );
    match out {
        Some(path) => {
            write_file(path, &text)?;
            out!("wrote {}: {summary}", path.display());
        }
        None => {
            out_raw!("{text}");
            eprintln!("{summary}");
        }
    }
    Ok(())
}
