//! Command-line surface. Exit codes: 0 pass, 1 failed mathematical check,
//! 2 input error.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use conley_core::{
    assemble_block_gttm, build_morse_complex, certify_ucc, check_connection_matrix,
    enumerate_gttm, preserved_pivots, ss_oracle, ss_pages, sweep, verify_gttm,
    verify_prop41, verify_unique_gttm, AdjacentPair, ConnectionMatrix, FinitePoset, Gf2Matrix,
    GradedBasis, Interval, PivotKind, SpectralPage, TransitionError,
};
use serde_json::{json, Map, Value};

use crate::bundled;
use crate::io::{self, position_label, Instance, LoadError};
use crate::random;

#[derive(Debug, Parser)]
#[command(name = "conley", version, about = "Exact GF(2) connection and transition matrices")]
pub struct Cli {
    /// Emit a machine-readable JSON report.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct FileArg {
    /// Instance file.
    #[arg(long)]
    pub file: PathBuf,
}

#[derive(Debug, Args)]
pub struct MatrixArg {
    /// Connection matrix to use, by name in the file's `matrices` section.
    #[arg(long)]
    pub matrix: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check degree, triangularity and Δ² = 0.
    VerifyDelta {
        #[command(flatten)]
        file: FileArg,
        #[command(flatten)]
        matrix: MatrixArg,
        /// Check the file's `singular` matrix instead, with the unknown
        /// entry set to `--star`.
        #[arg(long)]
        singular: bool,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(0..=1))]
        star: u8,
    },
    /// Interval homology with canonical representatives.
    Homology {
        #[command(flatten)]
        file: FileArg,
        #[command(flatten)]
        matrix: MatrixArg,
        /// Comma-separated element labels; all intervals when omitted.
        #[arg(long)]
        interval: Option<String>,
    },
    /// Long exact sequences of adjacent pairs.
    Les {
        #[command(flatten)]
        file: FileArg,
        #[command(flatten)]
        matrix: MatrixArg,
        /// `I|J` with comma-separated labels on each side; all adjacent
        /// pairs when omitted.
        #[arg(long)]
        pair: Option<String>,
    },
    /// Check that the file's transition is a GTTM.
    VerifyT {
        #[command(flatten)]
        file: FileArg,
    },
    /// Enumerate every GTTM as an affine set.
    EnumerateGttm {
        #[command(flatten)]
        file: FileArg,
    },
    /// Certify a connection from `q` to `p` when every GTTM has a nonzero
    /// `(p, q)` block.
    CertifyUcc {
        #[command(flatten)]
        file: FileArg,
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
    },
    /// Run the sweeping method.
    Sweep {
        #[command(flatten)]
        file: FileArg,
        #[command(flatten)]
        matrix: MatrixArg,
        /// Compare the pages with the filtered-complex oracle.
        #[arg(long)]
        check_oracle: bool,
    },
    /// Spectral sequence pages from the filtered complex directly.
    SsOracle {
        #[command(flatten)]
        file: FileArg,
        #[command(flatten)]
        matrix: MatrixArg,
    },
    /// Check the sweep's invariants and any frozen expected pages.
    VerifySweep {
        #[command(flatten)]
        file: FileArg,
        #[command(flatten)]
        matrix: MatrixArg,
    },
    /// Build the Morse complex of the file's `morse` section.
    MorseBuild {
        #[command(flatten)]
        file: FileArg,
    },
    /// Assemble the block-diagonal transition from the file's `blocks`.
    Blocks {
        #[command(flatten)]
        file: FileArg,
    },
    /// List or print the bundled instance files.
    Examples {
        /// Name of the file to print.
        name: Option<String>,
        /// Write every bundled file into this directory.
        #[arg(long)]
        write: Option<PathBuf>,
    },
    /// Print a random valid instance.
    Random {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        generators: usize,
        /// Number of poset elements; a chain with one generator per element
        /// when omitted.
        #[arg(long)]
        elements: Option<usize>,
        #[arg(long, default_value_t = 3)]
        max_degree: u32,
        /// Freeze the oracle pages into `expected_pages`.
        #[arg(long)]
        pages: bool,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum CliError {
    Input(String),
}

impl From<LoadError> for CliError {
    fn from(e: LoadError) -> Self {
        CliError::Input(e.to_string())
    }
}

fn input(e: impl ToString) -> CliError {
    CliError::Input(e.to_string())
}

/// A finished report: text lines plus the same content as JSON.
struct Report {
    pass: bool,
    lines: Vec<String>,
    json: Map<String, Value>,
}

impl Report {
    fn new() -> Self {
        Self {
            pass: true,
            lines: Vec::new(),
            json: Map::new(),
        }
    }

    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    fn set(&mut self, key: &str, value: Value) {
        self.json.insert(key.into(), value);
    }

    fn fail(&mut self) {
        self.pass = false;
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            };
        }
    };
    let name = command_name(&cli.command);
    match dispatch(&cli.command) {
        Ok(Output::Raw(text)) => Outcome {
            code: 0,
            stdout: text,
            stderr: String::new(),
        },
        Ok(Output::Report(report)) => {
            let code = if report.pass { 0 } else { 1 };
            let stdout = if cli.json {
                let mut obj = Map::new();
                obj.insert("schema".into(), json!(io::SCHEMA));
                obj.insert("command".into(), json!(name));
                obj.insert("ok".into(), json!(report.pass));
                obj.extend(report.json);
                io::to_json(&Value::Object(obj))
            } else {
                let mut s = report.lines.join("\n");
                s.push('\n');
                s
            };
            Outcome {
                code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(CliError::Input(msg)) => {
            let stdout = if cli.json {
                io::to_json(&json!({"schema": io::SCHEMA, "command": name, "ok": false, "error": msg}))
            } else {
                String::new()
            };
            Outcome {
                code: 2,
                stdout,
                stderr: format!("error: {msg}\n"),
            }
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::VerifyDelta { .. } => "verify-delta",
        Command::Homology { .. } => "homology",
        Command::Les { .. } => "les",
        Command::VerifyT { .. } => "verify-t",
        Command::EnumerateGttm { .. } => "enumerate-gttm",
        Command::CertifyUcc { .. } => "certify-ucc",
        Command::Sweep { .. } => "sweep",
        Command::SsOracle { .. } => "ss-oracle",
        Command::VerifySweep { .. } => "verify-sweep",
        Command::MorseBuild { .. } => "morse-build",
        Command::Blocks { .. } => "blocks",
        Command::Examples { .. } => "examples",
        Command::Random { .. } => "random",
    }
}

enum Output {
    Report(Report),
    Raw(String),
}

fn dispatch(command: &Command) -> Result<Output, CliError> {
    let report = match command {
        Command::VerifyDelta {
            file,
            matrix,
            singular,
            star,
        } => verify_delta(&io::load(&file.file)?, matrix.matrix.as_deref(), *singular, *star == 1)?,
        Command::Homology { file, matrix, interval } => {
            homology(&io::load(&file.file)?, matrix.matrix.as_deref(), interval.as_deref())?
        }
        Command::Les { file, matrix, pair } => {
            les(&io::load(&file.file)?, matrix.matrix.as_deref(), pair.as_deref())?
        }
        Command::VerifyT { file } => verify_t(&io::load(&file.file)?)?,
        Command::EnumerateGttm { file } => enumerate(&io::load(&file.file)?)?,
        Command::CertifyUcc { file, p, q } => certify(&io::load(&file.file)?, p, q)?,
        Command::Sweep {
            file,
            matrix,
            check_oracle,
        } => sweep_cmd(&io::load(&file.file)?, matrix.matrix.as_deref(), *check_oracle)?,
        Command::SsOracle { file, matrix } => oracle_cmd(&io::load(&file.file)?, matrix.matrix.as_deref())?,
        Command::VerifySweep { file, matrix } => {
            verify_sweep(&io::load(&file.file)?, matrix.matrix.as_deref())?
        }
        Command::MorseBuild { file } => morse_build(&io::load(&file.file)?)?,
        Command::Blocks { file } => blocks(&io::load(&file.file)?)?,
        Command::Examples { name, write } => return examples(name.as_deref(), write.as_ref()),
        Command::Random {
            seed,
            generators,
            elements,
            max_degree,
            pages,
        } => return random_instance(*seed, *generators, *elements, *max_degree, *pages),
    };
    Ok(Output::Report(report))
}

// ---------------------------------------------------------------------------
// Formatting helpers

fn fmt_matrix(m: &Gf2Matrix) -> String {
    if m.rows() == 0 || m.cols() == 0 {
        return format!("[{}x{}]", m.rows(), m.cols());
    }
    let rows: Vec<String> = (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| if m.get(i, j) { "1" } else { "0" })
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect();
    format!("[{}]", rows.join("; "))
}

fn matrix_json(m: &Gf2Matrix) -> Value {
    json!({"rows": m.rows(), "cols": m.cols(), "entries": m.entries()})
}

fn entry_name(basis: &GradedBasis, (r, c): (usize, usize)) -> String {
    format!("({}, {})", position_label(basis, r), position_label(basis, c))
}

fn chain_name(basis: &GradedBasis, v: &conley_core::Gf2Vector) -> String {
    let terms: Vec<&str> = v.ones().map(|i| basis.generator(i).label.as_str()).collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

fn parse_interval(order: &FinitePoset, text: &str) -> Result<Interval, CliError> {
    let labels: Vec<&str> = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    order.interval_by_labels(&labels).map_err(input)
}

fn parse_pair(order: &FinitePoset, text: &str) -> Result<AdjacentPair, CliError> {
    let (i, j) = text
        .split_once('|')
        .ok_or_else(|| input(format!("pair `{text}` must look like `I|J`")))?;
    let (i, j) = (parse_interval(order, i)?, parse_interval(order, j)?);
    order
        .adjacent_pair(i.clone(), j.clone())
        .ok_or_else(|| input(format!("({}, {}) is not an adjacent pair", i.display(order), j.display(order))))
}

fn element(order: &FinitePoset, label: &str) -> Result<usize, CliError> {
    order
        .index_of(label)
        .ok_or_else(|| input(format!("unknown element `{label}`")))
}

fn dims_text(dims: &std::collections::BTreeMap<u32, usize>) -> String {
    if dims.is_empty() {
        return "0".into();
    }
    dims.iter()
        .map(|(k, d)| format!("H{k}={d}"))
        .collect::<Vec<_>>()
        .join(" ")
}

// ---------------------------------------------------------------------------
// Commands

fn verify_delta(inst: &Instance, matrix: Option<&str>, singular: bool, star: bool) -> Result<Report, CliError> {
    let mut r = Report::new();
    let (label, basis, m) = if singular {
        let s = inst
            .singular
            .as_ref()
            .ok_or_else(|| input("the file has no `singular` section"))?;
        (format!("singular (* = {})", u8::from(star)), s.basis.clone(), s.matrix(star))
    } else {
        let (name, d) = inst.matrix(matrix)?;
        (name.to_string(), d.basis().clone(), d.matrix().clone())
    };
    let report = check_connection_matrix(&basis, &m).map_err(input)?;
    r.line(format!("matrix: {label} ({} generators)", basis.len()));
    r.set("matrix", json!(label));
    let label_of = |e: &(usize, usize)| {
        format!(
            "({}, {})",
            basis.generator(e.0).label,
            basis.generator(e.1).label
        )
    };
    for (name, bad) in [
        ("degree", &report.degree),
        ("triangularity", &report.triangularity),
        ("boundary", &report.boundary),
    ] {
        if bad.is_empty() {
            r.line(format!("{name}: ok"));
        } else {
            r.fail();
            let list: Vec<String> = bad.iter().map(label_of).collect();
            r.line(format!("{name}: fails at {}", list.join(", ")));
        }
        let entries: Vec<Value> = bad
            .iter()
            .map(|&(i, j)| json!([basis.generator(i).label, basis.generator(j).label]))
            .collect();
        r.set(name, json!({"ok": bad.is_empty(), "entries": entries}));
    }
    Ok(r)
}

fn homology(inst: &Instance, matrix: Option<&str>, interval: Option<&str>) -> Result<Report, CliError> {
    let (_, d) = inst.matrix(matrix)?;
    let order = d.order();
    let intervals = match interval {
        Some(text) => vec![parse_interval(order, text)?],
        None => order.intervals(),
    };
    let mut r = Report::new();
    let mut out = Vec::new();
    for i in intervals {
        let h = d.homology(&i).map_err(input)?;
        let classes: Vec<String> = h
            .classes()
            .iter()
            .map(|c| format!("{}:{}", c.degree, chain_name(d.basis(), &c.chain)))
            .collect();
        let mut line = format!("{}: {}", i.display(order), dims_text(&h.dims()));
        if !classes.is_empty() {
            line.push_str(&format!("; classes {}", classes.join(", ")));
        }
        r.line(line);
        out.push(json!({
            "interval": i.members().iter().map(|&p| order.label(p)).collect::<Vec<_>>(),
            "dims": h.dims().iter().map(|(k, v)| json!([k, v])).collect::<Vec<_>>(),
            "classes": h.classes().iter().map(|c| json!({
                "degree": c.degree,
                "chain": c.chain.ones().map(|g| d.basis().generator(g).label.clone()).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        }));
    }
    r.set("intervals", Value::Array(out));
    Ok(r)
}

fn les(inst: &Instance, matrix: Option<&str>, pair: Option<&str>) -> Result<Report, CliError> {
    let (_, d) = inst.matrix(matrix)?;
    let order = d.order();
    let pairs = match pair {
        Some(text) => vec![parse_pair(order, text)?],
        None => order.adjacent_pairs(),
    };
    let mut r = Report::new();
    let mut out = Vec::new();
    for pair in pairs {
        let les = d.les_unchecked(&pair).map_err(input)?;
        let inexact = les.first_inexact_node();
        if inexact.is_some() {
            r.fail();
        }
        let (i, j) = (pair.attractor().display(order), pair.repeller().display(order));
        r.line(format!(
            "({i}, {j}): {}; i* = {}; p* = {}; delta = {}",
            match inexact {
                None => "exact".to_string(),
                Some(node) => format!("not exact at {node}"),
            },
            fmt_matrix(&les.inclusion),
            fmt_matrix(&les.projection),
            fmt_matrix(&les.connecting),
        ));
        out.push(json!({
            "attractor": pair.attractor().members().iter().map(|&p| order.label(p)).collect::<Vec<_>>(),
            "repeller": pair.repeller().members().iter().map(|&p| order.label(p)).collect::<Vec<_>>(),
            "exact": inexact.is_none(),
            "inclusion": matrix_json(&les.inclusion),
            "projection": matrix_json(&les.projection),
            "connecting": matrix_json(&les.connecting),
        }));
    }
    r.set("pairs", Value::Array(out));
    Ok(r)
}

fn transition_inputs(inst: &Instance) -> Result<(&ConnectionMatrix, &ConnectionMatrix, &conley_core::CoverData), CliError> {
    let (dom, cod) = inst.pair()?;
    let cover = inst
        .cover
        .as_ref()
        .ok_or_else(|| input("the file has no `cover` section"))?;
    Ok((dom, cod, cover))
}

fn verify_t(inst: &Instance) -> Result<Report, CliError> {
    let (dom, cod, cover) = transition_inputs(inst)?;
    let t = inst
        .transition
        .as_ref()
        .ok_or_else(|| input("the file has no `transition` section"))?;
    let mut r = Report::new();
    let report = match verify_gttm(t, dom, cod, cover) {
        Ok(report) => report,
        Err(TransitionError::Cover(e)) => {
            r.fail();
            r.line(format!("cover: invalid ({e})"));
            r.set("cover", json!({"ok": false, "error": e.to_string()}));
            return Ok(r);
        }
        Err(e) => return Err(input(e)),
    };
    let basis = t.domain();
    let chain = match report.chain_mismatch {
        None => "chain map: ok".to_string(),
        Some(e) => {
            r.fail();
            format!("chain map: fails at {}", entry_name(basis, e))
        }
    };
    let shape = if report.shape.is_ok() {
        "shape: ok".to_string()
    } else {
        r.fail();
        let list: Vec<String> = report
            .shape
            .violations
            .iter()
            .map(|v| entry_name(basis, v.position()))
            .collect();
        format!("shape: fails at {}", list.join(", "))
    };
    let failed: Vec<String> = report
        .intervals
        .iter()
        .filter(|(_, ok)| !ok)
        .map(|(i, _)| i.display(dom.order()))
        .collect();
    let cover_text = if report.intervals.is_empty() && !report.is_gttm() {
        "cover: not examined".to_string()
    } else if failed.is_empty() {
        format!("cover: ok ({} intervals)", report.intervals.len())
    } else {
        r.fail();
        format!("cover: fails on {}", failed.join(" "))
    };
    r.line(format!("{chain}; {shape}; {cover_text}"));
    r.set("chain_map", json!({"ok": report.chain_mismatch.is_none(), "entry": report.chain_mismatch.map(|e| entry_name(basis, e))}));
    r.set("shape", json!({"ok": report.shape.is_ok(), "violations": report.shape.violations.iter().map(|v| format!("{v:?}")).collect::<Vec<_>>()}));
    r.set(
        "cover",
        json!({
            "ok": report.covers() && report.chain_mismatch.is_none() && report.shape.is_ok(),
            "intervals": report.intervals.iter().map(|(i, ok)| json!({
                "interval": i.members().iter().map(|&p| dom.order().label(p)).collect::<Vec<_>>(),
                "ok": ok,
            })).collect::<Vec<_>>(),
        }),
    );
    Ok(r)
}

fn solution_count(free: usize) -> String {
    if free < 64 {
        (1u64 << free).to_string()
    } else {
        format!("2^{free}")
    }
}

fn enumerate(inst: &Instance) -> Result<Report, CliError> {
    let (dom, cod, cover) = transition_inputs(inst)?;
    cover.validate(dom, cod).map_err(input)?;
    let set = enumerate_gttm(dom, cod, cover).map_err(input)?;
    let basis = dom.basis();
    let mut r = Report::new();
    let name = |&(i, j): &(usize, usize)| {
        format!("T({},{})", position_label(basis, i), position_label(basis, j))
    };
    match (set.free_dims(), set.particular()) {
        (Some(free), Some(t)) => {
            let mut parts = vec![
                format!("solutions: {}", solution_count(free)),
                format!("free dims: {free}"),
            ];
            for pos in set.positions() {
                parts.push(format!("{}={}", name(pos), u8::from(t.matrix().get(pos.0, pos.1))));
            }
            r.line(parts.join("; "));
            for (k, v) in set.affine_set().nullspace().iter().enumerate() {
                let toggles: Vec<String> = v.ones().map(|u| name(&set.positions()[u])).collect();
                r.line(format!("direction {}: {}", k + 1, toggles.join(" ")));
            }
            r.set("solutions", json!(solution_count(free)));
            r.set("free_dims", json!(free));
            r.set("particular", matrix_json(t.matrix()));
            r.set(
                "unknowns",
                Value::Array(
                    set.positions()
                        .iter()
                        .map(|pos| json!({"position": name(pos), "value": t.matrix().get(pos.0, pos.1)}))
                        .collect(),
                ),
            );
            r.set(
                "nullspace",
                Value::Array(
                    set.affine_set()
                        .nullspace()
                        .iter()
                        .map(|v| json!(v.ones().map(|u| name(&set.positions()[u])).collect::<Vec<_>>()))
                        .collect(),
                ),
            );
        }
        _ => {
            r.line("solutions: 0");
            r.set("solutions", json!("0"));
        }
    }
    Ok(r)
}

fn certify(inst: &Instance, p: &str, q: &str) -> Result<Report, CliError> {
    let (dom, cod, cover) = transition_inputs(inst)?;
    cover.validate(dom, cod).map_err(input)?;
    let order = dom.order();
    let (pi, qi) = (element(order, p)?, element(order, q)?);
    let set = enumerate_gttm(dom, cod, cover).map_err(input)?;
    let minimal = inst.minimal_order();
    let mut r = Report::new();
    r.set("p", json!(p));
    r.set("q", json!(q));
    match certify_ucc(&set, minimal, pi, qi) {
        Ok(Some(cert)) => {
            let chain: Vec<&str> = cert.witness.iter().map(|&e| minimal.label(e)).collect();
            r.line(format!(
                "certificate: connection from {q} to {p}; witness {}; free dims {}",
                chain.join(" < "),
                cert.free_dims
            ));
            for a in &cert.assumptions {
                r.line(format!("assumes: {a}"));
            }
            for a in inst.assumptions.declared() {
                r.line(format!("declared: {a}"));
            }
            r.set("certificate", json!({
                "witness": chain,
                "free_dims": cert.free_dims,
                "assumptions": cert.assumptions,
                "declared": inst.assumptions.declared(),
            }));
        }
        Ok(None) => {
            r.fail();
            r.line(format!("no certificate: some GTTM has a zero ({p},{q}) block"));
            r.set("certificate", Value::Null);
        }
        Err(TransitionError::EmptySolutionSet) => {
            r.fail();
            r.line("no certificate: hypothesis GTTM(<_m) nonempty violated");
            r.set("certificate", Value::Null);
        }
        Err(e) => return Err(input(e)),
    }
    Ok(r)
}

fn pages_lines(basis: &GradedBasis, pages: &[SpectralPage]) -> Vec<String> {
    pages
        .iter()
        .map(|page| {
            let slots: Vec<String> = page
                .dims
                .iter()
                .map(|(&(p, k), d)| {
                    let rank = page.rank(p, k);
                    let tail = if rank > 0 { format!(" d{rank}") } else { String::new() };
                    format!("({},{}):{d}{tail}", position_label(basis, p), k)
                })
                .collect();
            format!(
                "E{}: {}",
                page.stage,
                if slots.is_empty() { "0".into() } else { slots.join(" ") }
            )
        })
        .collect()
}

fn pages_json(pages: &[SpectralPage]) -> Value {
    serde_json::to_value(pages.iter().map(io::page_section).collect::<Vec<_>>())
        .expect("plain data serializes")
}

fn first_difference(a: &[SpectralPage], b: &[SpectralPage]) -> Option<usize> {
    if a.len() != b.len() {
        return Some(a.len().min(b.len()) + 1);
    }
    a.iter().zip(b).find(|(x, y)| x != y).map(|(x, _)| x.stage)
}

fn sweep_cmd(inst: &Instance, matrix: Option<&str>, check_oracle: bool) -> Result<Report, CliError> {
    let (name, d) = inst.matrix(matrix)?;
    let s = sweep(d).map_err(input)?;
    let basis = d.basis();
    let mut r = Report::new();
    r.line(format!("matrix: {name}"));
    let mut stages = Vec::new();
    for st in &s.states {
        let mut primary = Vec::new();
        let mut change = Vec::new();
        for (&pos, kind) in &st.pivots {
            match kind {
                PivotKind::Primary => primary.push(entry_name(basis, pos)),
                PivotKind::ChangeOfBasis => change.push(entry_name(basis, pos)),
            }
        }
        let ops: Vec<String> = st
            .transition
            .matrix()
            .entries()
            .into_iter()
            .filter(|(i, j)| i != j)
            .map(|(i, j)| format!("T({},{})", position_label(basis, i), position_label(basis, j)))
            .collect();
        let or_none = |v: &[String]| if v.is_empty() { "none".to_string() } else { v.join(" ") };
        r.line(format!(
            "stage {}: primary {}; change of basis {}; T {}",
            st.stage,
            or_none(&primary),
            or_none(&change),
            if ops.is_empty() { "identity".into() } else { format!("I + {}", ops.join(" + ")) }
        ));
        stages.push(json!({
            "stage": st.stage,
            "primary": primary,
            "change_of_basis": change,
            "transition": matrix_json(st.transition.matrix()),
        }));
    }
    let pages = ss_pages(&s);
    r.lines.extend(pages_lines(basis, &pages));
    r.set("matrix", json!(name));
    r.set("stages", Value::Array(stages));
    r.set("pages", pages_json(&pages));
    if check_oracle {
        let oracle = ss_oracle(d).map_err(input)?;
        match first_difference(&pages, &oracle) {
            None => r.line("oracle: match"),
            Some(stage) => {
                r.fail();
                r.line(format!("oracle: differs at stage {stage}"));
            }
        }
        r.set("oracle_match", json!(pages == oracle));
    }
    Ok(r)
}

fn oracle_cmd(inst: &Instance, matrix: Option<&str>) -> Result<Report, CliError> {
    let (name, d) = inst.matrix(matrix)?;
    let pages = ss_oracle(d).map_err(input)?;
    let mut r = Report::new();
    r.line(format!("matrix: {name}"));
    r.lines.extend(pages_lines(d.basis(), &pages));
    r.set("matrix", json!(name));
    r.set("pages", pages_json(&pages));
    Ok(r)
}

fn verify_sweep(inst: &Instance, matrix: Option<&str>) -> Result<Report, CliError> {
    let (name, d) = inst.matrix(matrix)?;
    let s = sweep(d).map_err(input)?;
    let mut r = Report::new();
    r.set("matrix", json!(name));
    r.line(format!("matrix: {name}"));

    let prop = verify_prop41(&s);
    match &prop {
        Ok(()) => r.line(format!("conjugation and shape: ok ({} stages)", s.states.len())),
        Err(e) => {
            r.fail();
            r.line(format!("conjugation and shape: {e}"));
        }
    }
    r.set("conjugation", json!(prop.is_ok()));

    let preserved = preserved_pivots(&s);
    match &preserved {
        Ok(p) => {
            let list: Vec<String> = p.iter().map(|&e| entry_name(d.basis(), e)).collect();
            r.line(format!(
                "primary pivots preserved: {}",
                if list.is_empty() { "none".into() } else { list.join(" ") }
            ));
        }
        Err(e) => {
            r.fail();
            r.line(format!("primary pivots preserved: {e}"));
        }
    }
    r.set("pivots_preserved", json!(preserved.is_ok()));

    let again = sweep(&s.terminal).map_err(input)?;
    let primaries = |sw: &conley_core::Sweep| -> BTreeSet<(usize, usize)> {
        sw.primary_pivots().into_iter().map(|(_, p)| p).collect()
    };
    let fixed = again.change_of_basis_pivots().is_empty() && primaries(&again) == primaries(&s);
    if fixed {
        r.line("fixed point: ok");
    } else {
        r.fail();
        r.line("fixed point: sweeping the swept matrix changes the pivots");
    }
    r.set("fixed_point", json!(fixed));

    if let Some(expected) = inst.expected_pages.as_ref().filter(|e| e.matrix == name) {
        let pages = ss_pages(&s);
        match first_difference(&pages, &expected.pages) {
            None => r.line(format!("expected pages: match ({} pages)", pages.len())),
            Some(stage) => {
                r.fail();
                r.line(format!("expected pages: differ at stage {stage}"));
            }
        }
        r.set("expected_pages", json!(pages == expected.pages));
    }
    Ok(r)
}

fn morse_build(inst: &Instance) -> Result<Report, CliError> {
    let data = inst
        .morse
        .as_ref()
        .ok_or_else(|| input("the file has no `morse` section"))?;
    let mut r = Report::new();
    let d = match build_morse_complex(data) {
        Ok(d) => d,
        Err(e @ conley_core::MorseError::NotABoundary { .. }) => {
            r.fail();
            r.line(format!("complex: {e}"));
            return Ok(r);
        }
        Err(e) => return Err(input(e)),
    };
    let basis = d.basis();
    let mut boundaries = Vec::new();
    for j in 0..basis.len() {
        let col = d.matrix().column(j);
        if !col.is_zero() {
            let line = format!("d {} = {}", basis.generator(j).label, chain_name(basis, &col).replace('+', " + "));
            boundaries.push(line);
        }
    }
    if boundaries.is_empty() {
        r.line("differential: zero");
    } else {
        r.line(format!("differential: {}", boundaries.join("; ")));
    }
    let h = d.homology(&d.order().full()).map_err(input)?;
    let top = basis.generators().iter().map(|g| g.degree).max().unwrap_or(0);
    let dims: Vec<usize> = (0..=top).map(|k| h.dim(k)).collect();
    r.line(format!(
        "homology: {}",
        dims.iter()
            .enumerate()
            .map(|(k, v)| format!("H{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ")
    ));
    r.set("differential", json!(boundaries));
    r.set("homology", json!(dims));
    if let Some(stored) = inst.matrices.get("delta") {
        let same = stored.basis() == d.basis() && stored.matrix() == d.matrix();
        if same {
            r.line("stored delta: matches");
        } else {
            r.fail();
            r.line("stored delta: differs from the built complex");
        }
        r.set("stored_delta_matches", json!(same));
    }
    for a in inst.assumptions.declared() {
        r.line(format!("declared: {a}"));
    }
    Ok(r)
}

fn blocks(inst: &Instance) -> Result<Report, CliError> {
    let blocks = inst
        .blocks
        .as_ref()
        .ok_or_else(|| input("the file has no `blocks` section"))?;
    let (dom, cod) = inst.pair()?;
    let mut r = Report::new();
    let t = match assemble_block_gttm(blocks, dom, cod) {
        Ok(t) => t,
        Err(e @ conley_core::MorseError::Interleaving { .. })
        | Err(e @ conley_core::MorseError::BlockNotTriangular { .. }) => {
            r.fail();
            r.line(format!("interleaving: {e}"));
            r.set("interleaving", json!({"ok": false, "error": e.to_string()}));
            return Ok(r);
        }
        Err(e) => return Err(input(e)),
    };
    r.line(format!("T = {}", fmt_matrix(t.matrix())));
    r.line("interleaving: ok");
    r.set("transition", matrix_json(t.matrix()));
    r.set("interleaving", json!({"ok": true}));
    if let Some(cover) = &inst.cover {
        let report = verify_gttm(&t, dom, cod, cover).map_err(input)?;
        if report.is_gttm() {
            r.line(format!("covers: ok ({} intervals)", report.intervals.len()));
        } else {
            r.fail();
            r.line("covers: fails");
        }
        let unique = verify_unique_gttm(dom, cod, cover).map_err(input)?;
        match unique.free_dims {
            Some(k) => r.line(format!(
                "gttm set: free dims {k}; unique: {}; block-diagonal: {}",
                yes(unique.is_unique()),
                yes(unique.block_diagonal)
            )),
            None => {
                r.fail();
                r.line("gttm set: empty");
            }
        }
        if unique.solution.as_ref().is_some_and(|s| *s != t) && unique.is_unique() {
            r.fail();
            r.line("unique gttm differs from the assembled blocks");
        }
        r.set("covers", json!(report.is_gttm()));
        r.set("free_dims", json!(unique.free_dims));
        r.set("unique", json!(unique.is_unique()));
        r.set("block_diagonal", json!(unique.block_diagonal));
    }
    Ok(r)
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn examples(name: Option<&str>, write: Option<&PathBuf>) -> Result<Output, CliError> {
    if let Some(dir) = write {
        std::fs::create_dir_all(dir).map_err(input)?;
        for (file, text) in bundled::FILES {
            std::fs::write(dir.join(file), text).map_err(input)?;
        }
        return Ok(Output::Raw(format!(
            "wrote {} files to {}\n",
            bundled::FILES.len(),
            dir.display()
        )));
    }
    match name {
        None => {
            let mut s = String::new();
            for (file, _) in bundled::FILES {
                s.push_str(file);
                s.push('\n');
            }
            Ok(Output::Raw(s))
        }
        Some(n) => bundled::FILES
            .iter()
            .find(|(f, _)| *f == n || f.trim_end_matches(".json") == n)
            .map(|(_, text)| Output::Raw(text.to_string()))
            .ok_or_else(|| input(format!("no bundled file `{n}`"))),
    }
}

fn random_instance(
    seed: u64,
    generators: usize,
    elements: Option<usize>,
    max_degree: u32,
    pages: bool,
) -> Result<Output, CliError> {
    let mut rng = random::rng(seed);
    let d = match elements {
        None => random::filtered(&mut rng, generators, max_degree),
        Some(0) if generators > 0 => return Err(input("generators need at least one element")),
        Some(e) => random::complex(&mut rng, e, generators, max_degree),
    };
    let expected = if pages {
        let pages = ss_oracle(&d).map_err(input)?;
        Some(io::ExpectedPages {
            matrix: "delta".into(),
            pages,
        })
    } else {
        None
    };
    let inst = bundled::single_matrix(format!("random seed {seed}"), d, expected);
    Ok(Output::Raw(inst.to_json()))
}
