//! Command-line front end: compute invariants from PD files, evaluate
//! surface patterns, emit prescribed links, and run the property suites.
//!
//! Exit codes: 1 property failure, 2 parse error, 3 invalid indices,
//! 4 pattern invariant violation, 5 unwritable output.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use mubar::builder::Prescription;
use mubar::diagram::LinkDiagram;
use mubar::milnor::{self, MilnorError};
use mubar::surfaces::{Role, SurfacePattern};
use mubar::verify;

#[derive(Parser)]
#[command(
    name = "mubar",
    version,
    about = "Triple linking numbers of links, two ways"
)]
struct Cli {
    /// Emit the report as JSON instead of plain text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Linking invariants of a PD diagram for an index sequence
    Compute {
        /// PD JSON file
        file: PathBuf,
        /// component indices, at least two
        #[arg(required = true)]
        indices: Vec<usize>,
    },
    /// Invariants of a Seifert surface intersection pattern
    Surface {
        /// pattern JSON file
        file: PathBuf,
        /// also sort the boundary words and report the sorted form
        #[arg(long)]
        normalize: bool,
    },
    /// Emit a link with prescribed pairwise and triple linking numbers
    Build {
        p: i64,
        q: i64,
        r: i64,
        m: i64,
        #[arg(long, value_enum, default_value_t = Emit::Both)]
        emit: Emit,
        /// output path prefix
        #[arg(long, default_value = "link")]
        out: String,
    },
    /// Run the seeded property suites
    Verify {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        cases: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Pd,
    Pattern,
    Both,
}

#[derive(Serialize)]
struct RunReport {
    command: String,
    input_digest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    results: Vec<ReportItem>,
    suites: Vec<SuiteLine>,
}

#[derive(Serialize)]
struct ReportItem {
    name: String,
    value: String,
}

#[derive(Serialize)]
struct SuiteLine {
    name: String,
    cases: usize,
    failures: Vec<String>,
}

impl RunReport {
    fn new(command: String, input_digest: String) -> RunReport {
        RunReport {
            command,
            input_digest,
            seed: None,
            results: Vec::new(),
            suites: Vec::new(),
        }
    }

    fn push(&mut self, name: impl Into<String>, value: impl ToString) {
        self.results.push(ReportItem {
            name: name.into(),
            value: value.to_string(),
        });
    }

    fn render_plain(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        let _ = writeln!(out, "input: {}", self.input_digest);
        if let Some(seed) = self.seed {
            let _ = writeln!(out, "seed: {seed}");
        }
        for suite in &self.suites {
            let status = if suite.failures.is_empty() {
                "pass"
            } else {
                "fail"
            };
            let _ = writeln!(
                out,
                "suite {}: {} ({} cases)",
                suite.name, status, suite.cases
            );
            for failure in &suite.failures {
                let _ = writeln!(out, "  failed: {failure}");
            }
        }
        for item in &self.results {
            let _ = writeln!(out, "{} = {}", item.name, item.value);
        }
        out
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl ToString) -> Failure {
        Failure {
            code,
            message: message.to_string(),
        }
    }
}

fn fnv1a64(bytes: &[u8]) -> String {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x1_0000_01b3);
    }
    format!("fnv1a:{hash:016x}")
}

fn read_input(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::new(2, format!("cannot read {}: {e}", path.display())))
}

fn index_failure(e: &MilnorError) -> u8 {
    match e {
        MilnorError::IndexTooShort(_)
        | MilnorError::ComponentOutOfRange { .. }
        | MilnorError::RepeatedIndex(..) => 3,
        _ => 2,
    }
}

fn cmd_compute(file: &PathBuf, indices: &[usize]) -> Result<RunReport, Failure> {
    let text = read_input(file)?;
    let diagram =
        LinkDiagram::parse(&text).map_err(|e| Failure::new(2, format!("parse error: {e}")))?;
    let mut report = RunReport::new(
        format!(
            "compute {} {}",
            file.display(),
            indices
                .iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        ),
        fnv1a64(text.as_bytes()),
    );
    report.push("components", diagram.component_count());

    let mut unique: Vec<usize> = indices.to_vec();
    unique.sort_unstable();
    unique.dedup();
    for (n, &a) in unique.iter().enumerate() {
        for &b in &unique[n + 1..] {
            let lk = milnor::mu(&diagram, &[a, b])
                .map_err(|e| Failure::new(index_failure(&e), e.to_string()))?;
            report.push(format!("lk({a},{b})"), lk);
        }
    }

    let seq = indices
        .iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(",");
    let mu = milnor::mu(&diagram, indices)
        .map_err(|e| Failure::new(index_failure(&e), e.to_string()))?;
    let delta = milnor::delta(&diagram, indices)
        .map_err(|e| Failure::new(index_failure(&e), e.to_string()))?;
    let mu_bar = milnor::mu_bar(&diagram, indices)
        .map_err(|e| Failure::new(index_failure(&e), e.to_string()))?;
    report.push(format!("mu[{seq}]"), mu);
    report.push(format!("delta[{seq}]"), delta);
    report.push(format!("mu_bar[{seq}]"), mu_bar);
    Ok(report)
}

fn pattern_word_text(pattern: &SurfacePattern, role: Role) -> String {
    let letters: Vec<String> = pattern.word(role).iter().map(|l| l.to_string()).collect();
    if letters.is_empty() {
        "1".to_string()
    } else {
        letters.join(" ")
    }
}

fn cmd_surface(file: &PathBuf, normalize: bool) -> Result<RunReport, Failure> {
    let text = read_input(file)?;
    let pattern =
        SurfacePattern::parse(&text).map_err(|e| Failure::new(2, format!("parse error: {e}")))?;
    let violations = pattern.validate();
    if !violations.is_empty() {
        let mut message = String::from("pattern invariant violations:");
        for v in &violations {
            let _ = write!(message, "\n  {v}");
        }
        return Err(Failure::new(4, message));
    }

    let mut report = RunReport::new(
        format!("surface {}", file.display()),
        fnv1a64(text.as_bytes()),
    );
    let labels = pattern.labels();
    report.push(
        "labels",
        format!("{} {} {}", labels[0], labels[1], labels[2]),
    );
    report.push("t", pattern.t_value([Role::I, Role::J, Role::K]));
    for r in [Role::K, Role::I, Role::J] {
        let (p, q) = r.others();
        report.push(
            format!("e({},{},{})", p.token(), q.token(), r.token()),
            pattern.e_value(p, q, r).expect("cyclic roles are distinct"),
        );
    }
    report.push("m", pattern.m_value());
    report.push("delta", pattern.delta());
    report.push("mu_bar", pattern.mu_bar().expect("validated above"));

    if normalize {
        let (sorted, residue) = pattern
            .normalize_boundary_ordered()
            .expect("validated above");
        for role in Role::ALL {
            report.push(
                format!("normalized w_{}", role.token()),
                pattern_word_text(&sorted, role),
            );
        }
        report.push("normalized t", sorted.triple_points());
        report.push("normalized mu_bar", residue);
    }
    Ok(report)
}

fn cmd_build(p: i64, q: i64, r: i64, m: i64, emit: Emit, out: &str) -> Result<RunReport, Failure> {
    let prescription = Prescription::new(p, q, r, m);
    let mut report = RunReport::new(
        format!("build {p} {q} {r} {m}"),
        fnv1a64(format!("{p} {q} {r} {m}").as_bytes()),
    );
    report.push("expected mu_bar", prescription.expected_mu_bar());

    let write = |report: &mut RunReport, path: String, contents: String| -> Result<(), Failure> {
        std::fs::write(&path, contents)
            .map_err(|e| Failure::new(5, format!("cannot write {path}: {e}")))?;
        report.push("wrote", path);
        Ok(())
    };
    if emit != Emit::Pattern {
        write(
            &mut report,
            format!("{out}.pd.json"),
            prescription.build_diagram().to_json_string(),
        )?;
    }
    if emit != Emit::Pd {
        write(
            &mut report,
            format!("{out}.pattern.json"),
            prescription.build_pattern().to_json_string(),
        )?;
    }
    Ok(report)
}

fn cmd_verify(seed: u64, cases: usize, json: bool) -> Result<RunReport, Failure> {
    let mut report = RunReport::new(
        format!("verify --seed {seed} --cases {cases}"),
        fnv1a64(format!("{seed} {cases}").as_bytes()),
    );
    report.seed = Some(seed);
    let results = verify::run_all(seed, cases);
    let all_passed = results.iter().all(|s| s.passed());
    for suite in results {
        report.suites.push(SuiteLine {
            name: suite.name.to_string(),
            cases: suite.cases,
            failures: suite.failures,
        });
    }
    report.push("result", if all_passed { "pass" } else { "fail" });
    if all_passed {
        Ok(report)
    } else {
        // print the full report before signalling failure
        print_report(&report, json);
        Err(Failure::new(1, "property suites failed"))
    }
}

fn print_report(report: &RunReport, json: bool) {
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(report).expect("report serializes")
        );
    } else {
        print!("{}", report.render_plain());
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Compute { file, indices } => cmd_compute(file, indices),
        Command::Surface { file, normalize } => cmd_surface(file, *normalize),
        Command::Build {
            p,
            q,
            r,
            m,
            emit,
            out,
        } => cmd_build(*p, *q, *r, *m, *emit, out),
        Command::Verify { seed, cases } => cmd_verify(*seed, *cases, cli.json),
    };
    match result {
        Ok(report) => {
            print_report(&report, cli.json);
            ExitCode::SUCCESS
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
