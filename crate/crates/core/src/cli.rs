//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage or I/O error, 2 invalid polytope or file,
//! 3 internal invariant violation.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::cayley::{self, generate};
use crate::invariants::{self, InvariantReport};
use crate::io;
use crate::polytope::{lattice_equivalent, LatticePolytope};
use crate::ratlin::IntVector;
use crate::{Error, Rat, Result};

#[derive(Parser, Debug)]
#[command(name = "latpoly", version, about = "Exact invariants and Cayley structure of lattice polytopes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the invariant report of a polytope file.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Build or detect Cayley polytopes.
    Cayley {
        #[command(subcommand)]
        command: CayleyCommand,
    },
    /// Check rational codegree and nef value of a strict Cayley polytope
    /// against (k+1)/s.
    Localsplit {
        #[arg(required = true, num_args = 2..)]
        files: Vec<PathBuf>,
        #[arg(long)]
        order: u64,
        #[arg(long)]
        json: bool,
    },
    /// Generate a family member: simplex D N | blowup D LAMBDA N | cube N |
    /// lawrence L0 L1 ... | product FILE FILE.
    Gen {
        family: String,
        params: Vec<String>,
        #[arg(short = 'o', long = "out")]
        out: Option<PathBuf>,
    },
    /// Analyze every *.json file of a directory into one report.
    Batch {
        dir: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        threads: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum CayleyCommand {
    /// Write the Cayley polytope of the summand files.
    Build {
        #[arg(required = true, num_args = 2..)]
        files: Vec<PathBuf>,
        #[arg(long)]
        order: u64,
        /// require a common normal fan
        #[arg(long)]
        strict: bool,
        #[arg(short = 'o', long = "out")]
        out: Option<PathBuf>,
    },
    /// Print a Cayley structure of maximal length, or "none".
    Detect {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        order: u64,
        #[arg(long)]
        json: bool,
        /// directory receiving one file per summand
        #[arg(short = 'o', long = "out")]
        out: Option<PathBuf>,
    },
}

/// Runs the command line and returns the process exit code.
pub fn main() -> i32 {
    run(std::env::args_os())
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cmd: Command) -> Result<i32> {
    match cmd {
        Command::Analyze { file, json } => {
            let p = io::read_lattice(&file)?;
            let r = invariants::analyze(&p)?;
            if json {
                print!("{}", io::to_pretty(&io::report_json(&r)));
            } else {
                print!("{}", report_text(&p, &r));
            }
            Ok(0)
        }
        Command::Cayley { command: CayleyCommand::Build { files, order, strict, out } } => {
            let summands = files.iter().map(|f| io::read_vpolytope(f)).collect::<Result<Vec<_>>>()?;
            let v = if strict { cayley::build_strict(&summands, order)? } else { cayley::build(&summands, order)? };
            let p = LatticePolytope::from_v(&v)?;
            emit(&io::polytope_json(&p), out.as_deref())?;
            Ok(0)
        }
        Command::Cayley { command: CayleyCommand::Detect { file, order, json, out } } => {
            if order == 0 {
                return Err(Error::InvalidParameter("order must be positive".into()));
            }
            let p = io::read_lattice(&file)?;
            let found = cayley::detect(&p, order);
            if let (Some(d), Some(dir)) = (&found, &out) {
                std::fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
                for (j, s) in d.summands.iter().enumerate() {
                    io::write_json(&dir.join(format!("summand_{j}.json")), &io::vpolytope_json(s))?;
                }
            }
            match (&found, json) {
                (None, false) => println!("none"),
                (None, true) => println!("null"),
                (Some(d), true) => print!("{}", io::to_pretty(&io::decomposition_json(d))),
                (Some(d), false) => print!("{}", decomposition_text(d)),
            }
            Ok(0)
        }
        Command::Localsplit { files, order, json } => {
            let summands = files.iter().map(|f| io::read_vpolytope(f)).collect::<Result<Vec<_>>>()?;
            let r = cayley::check_localsplit(&summands, order)?;
            let v = io::localsplit_json(&r);
            if json {
                print!("{}", io::to_pretty(&v));
            } else {
                print!("{}", key_values(&v));
            }
            Ok(0)
        }
        Command::Gen { family, params, out } => {
            let p = generate_family(&family, &params)?;
            emit(&io::polytope_json(&p), out.as_deref())?;
            Ok(0)
        }
        Command::Batch { dir, out, threads } => batch(&dir, &out, threads),
    }
}

fn emit(v: &Value, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => io::write_json(path, v),
        None => {
            print!("{}", io::to_pretty(v));
            Ok(())
        }
    }
}

fn int_param(params: &[String], i: usize, name: &str) -> Result<i64> {
    let raw = params
        .get(i)
        .ok_or_else(|| Error::InvalidParameter(format!("missing parameter {name}")))?;
    raw.parse()
        .map_err(|_| Error::InvalidParameter(format!("{name} must be an integer, got {raw:?}")))
}

fn arity(params: &[String], n: usize, family: &str) -> Result<()> {
    if params.len() != n {
        return Err(Error::InvalidParameter(format!("{family} takes {n} parameters, got {}", params.len())));
    }
    Ok(())
}

fn dim_param(params: &[String], i: usize) -> Result<usize> {
    let n = int_param(params, i, "n")?;
    usize::try_from(n).map_err(|_| Error::InvalidParameter(format!("n must be nonnegative, got {n}")))
}

/// Family member by name, with parameters as given on the command line.
pub fn generate_family(family: &str, params: &[String]) -> Result<LatticePolytope> {
    match family {
        "simplex" => {
            arity(params, 2, family)?;
            generate::simplex(int_param(params, 0, "d")?, dim_param(params, 1)?)
        }
        "blowup" => {
            arity(params, 3, family)?;
            generate::blowup(int_param(params, 0, "d")?, int_param(params, 1, "lambda")?, dim_param(params, 2)?)
        }
        "cube" => {
            arity(params, 1, family)?;
            generate::cube(dim_param(params, 0)?)
        }
        "lawrence" => {
            let lengths = (0..params.len()).map(|i| int_param(params, i, "length")).collect::<Result<Vec<_>>>()?;
            generate::lawrence(&lengths)
        }
        "product" => {
            arity(params, 2, family)?;
            let a = io::read_lattice(Path::new(&params[0]))?;
            let b = io::read_lattice(Path::new(&params[1]))?;
            generate::product(&a, &b)
        }
        other => Err(Error::InvalidParameter(format!("unknown family {other:?}"))),
    }
}

fn vector_text(v: &IntVector) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn rat_text(r: &Rat) -> String {
    io::rat_to_string(r)
}

fn report_text(p: &LatticePolytope, r: &InvariantReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "dim: {}", r.dim);
    let _ = writeln!(s, "vertices: {}", r.vertex_count);
    let _ = writeln!(s, "lattice points: {}", r.lattice_point_count);
    match &r.smooth_witness {
        None => {
            let _ = writeln!(s, "smooth: true");
        }
        Some(w) => {
            let _ = writeln!(s, "smooth: false (witness {})", vector_text(w));
        }
    }
    let _ = writeln!(s, "codeg: {}", r.codegree);
    let _ = writeln!(s, "deg: {}", r.degree);
    let _ = writeln!(s, "codeg_Q: {}", rat_text(&r.qcodegree));
    if let Some(t) = &r.nef_value {
        let _ = writeln!(s, "tau: {}", rat_text(t));
    }
    if r.spanned == Some(false) {
        if let Ok(fails) = invariants::spanning_failures(p, 1, 1) {
            for (m, x) in fails {
                let shifted: Vec<String> = x.iter().map(|c| c.to_string()).collect();
                let _ = writeln!(s, "not 1-spanned at {}: shifted point ({})", vector_text(&m), shifted.join(", "));
            }
        }
    }
    let _ = writeln!(s, "q_normal: {}", r.q_normal);
    let _ = writeln!(s, "condition (1): {}", r.condition1);
    match &r.cayley {
        Some(c) => {
            let _ = writeln!(s, "cayley: k={} s={} strict={}", c.k, c.s, c.strict);
        }
        None => {
            let _ = writeln!(s, "cayley: none");
        }
    }
    if let Some(d) = r.predicted_defect {
        let _ = writeln!(s, "predicted defect: {d}");
    }
    s
}

fn decomposition_text(d: &cayley::CayleyDecomposition) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "k: {}", d.k);
    let _ = writeln!(s, "s: {}", d.s);
    let _ = writeln!(s, "strict: {}", d.strict);
    for row in d.projection.to_rows() {
        let _ = writeln!(s, "functional: {}", vector_text(&row));
    }
    let _ = writeln!(s, "translation: {}", vector_text(&d.translation));
    for (j, summand) in d.summands.iter().enumerate() {
        let verts: Vec<String> = summand
            .integer_vertices()
            .unwrap_or_default()
            .iter()
            .map(vector_text)
            .collect();
        let _ = writeln!(s, "summand {j}: {}", verts.join(" "));
    }
    s
}

fn key_values(v: &Value) -> String {
    let mut s = String::new();
    if let Some(obj) = v.as_object() {
        for (k, val) in obj {
            let text = match val {
                Value::String(x) => x.clone(),
                other => other.to_string(),
            };
            let _ = writeln!(s, "{k}: {text}");
        }
    }
    s
}

/// Checks of the known inequalities on one report; returns violated names.
pub fn property_violations(p: &LatticePolytope, r: &InvariantReport) -> Vec<&'static str> {
    let mut out = Vec::new();
    let n = r.dim as u64;
    let c = Rat::from_integer(r.codegree.into());
    if r.qcodegree > c {
        out.push("codeg_Q <= codeg");
    }
    if r.codegree > n + 1 {
        out.push("codeg <= n + 1");
    }
    if let Some(t) = &r.nef_value {
        if *t <= &c - Rat::from_integer(1.into()) {
            out.push("tau > codeg - 1");
        }
        if *t < r.qcodegree {
            out.push("tau >= codeg_Q");
        }
        let top = Rat::from_integer((n + 1).into());
        let is_simplex = generate::simplex(1, r.dim).ok().and_then(|s| lattice_equivalent(p, &s)).is_some();
        if (*t == top) != is_simplex || *t > top {
            out.push("tau = n + 1 iff simplex, else tau <= n");
        }
    }
    if let Some(d) = r.predicted_defect {
        if d != 2 * r.codegree as i64 - 2 - r.dim as i64 {
            out.push("defect = 2 codeg - 2 - n");
        }
    }
    out
}

struct BatchEntry {
    record: Value,
    internal: bool,
}

fn analyze_entry(path: &Path, name: String) -> BatchEntry {
    let result = io::read_lattice(path).and_then(|p| invariants::analyze(&p).map(|r| (p, r)));
    match result {
        Ok((p, r)) => {
            let violations = property_violations(&p, &r);
            BatchEntry {
                internal: !violations.is_empty(),
                record: json!({ "input": name, "report": io::report_json(&r), "violations": violations }),
            }
        }
        Err(e) => BatchEntry {
            internal: matches!(e, Error::Internal(_)),
            record: json!({ "input": name, "error": { "exit_code": e.exit_code(), "message": e.to_string() } }),
        },
    }
}

fn batch(dir: &Path, out: &Path, threads: Option<usize>) -> Result<i32> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        if t == 0 {
            return Err(Error::InvalidParameter("--threads must be positive".into()));
        }
        pool = pool.num_threads(t);
    }
    let pool = pool.build().map_err(|e| Error::Internal(e.to_string()))?;
    let entries: Vec<BatchEntry> = pool.install(|| {
        files
            .par_iter()
            .map(|f| {
                let name = f.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
                analyze_entry(f, name)
            })
            .collect()
    });
    let internal = entries.iter().any(|e| e.internal);
    let doc = json!({
        "format": io::REPORT_FORMAT,
        "tool_version": env!("CARGO_PKG_VERSION"),
        "entries": entries.into_iter().map(|e| e.record).collect::<Vec<_>>(),
    });
    io::write_json(out, &doc)?;
    Ok(if internal { 3 } else { 0 })
}
