//! System files and the command driver behind the `trichain` binary.
//!
//! File format:
//!
//! ```text
//! # comment
//! vars: x y
//! chain:
//! x^3 - x^2 + 2
//! (x^5+x)*y^3 - x^3*y^2
//! ```

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::arith::{
    format_rational, parse_poly, parse_rational, GaussianRational, Rational, VarOrder,
};
use crate::chains::{check_regular_named, TriangularSet, ZeroDimChain};
use crate::dualspace::{dual_space_dim, DEFAULT_CAP};
use crate::error::{Error, Result};
use crate::isolate::iso_mult_with_width;
use crate::reg2sim::{reg2sim_named, reg_mult, SimpleBranch};

fn err_at(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Parses a system file into its variable order and triangular set.
pub fn parse_system(text: &str) -> Result<(VarOrder, TriangularSet)> {
    let mut order: Option<VarOrder> = None;
    let mut in_chain = false;
    let mut polys = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = content.len() - content.trim_start().len();
        if let Some(rest) = trimmed.strip_prefix("vars:") {
            if order.is_some() {
                return Err(err_at(lineno, indent + 1, "duplicate `vars:` line"));
            }
            let names: Vec<&str> = rest.split_whitespace().collect();
            let o = VarOrder::new(&names).map_err(|e| match e {
                Error::Domain(m) => err_at(lineno, indent + 6, m),
                other => other,
            })?;
            order = Some(o);
            continue;
        }
        if trimmed == "chain:" {
            if order.is_none() {
                return Err(err_at(lineno, indent + 1, "`chain:` before `vars:`"));
            }
            if in_chain {
                return Err(err_at(lineno, indent + 1, "duplicate `chain:` line"));
            }
            in_chain = true;
            continue;
        }
        let Some(o) = order.as_ref().filter(|_| in_chain) else {
            return Err(err_at(lineno, indent + 1, "expected `vars:` then `chain:`"));
        };
        let p = parse_poly(content, o).map_err(|e| match e {
            Error::Parse {
                column, message, ..
            } => err_at(lineno, column, message),
            Error::Domain(m) => err_at(lineno, indent + 1, m),
            other => other,
        })?;
        if p.is_constant() {
            return Err(err_at(lineno, indent + 1, "constant polynomial in chain"));
        }
        if let Some(prev) = polys
            .last()
            .and_then(|q: &crate::arith::MPoly| q.main_var())
        {
            if p.main_var() <= Some(prev) {
                return Err(err_at(
                    lineno,
                    indent + 1,
                    format!(
                        "leading variables not ascending: `{}` after `{}`",
                        o.name(p.main_var().unwrap()),
                        o.name(prev)
                    ),
                ));
            }
        }
        polys.push(p);
    }
    let Some(order) = order else {
        return Err(err_at(1, 1, "missing `vars:` line"));
    };
    if !in_chain {
        return Err(err_at(
            text.lines().count().max(1),
            1,
            "missing `chain:` line",
        ));
    }
    if polys.is_empty() {
        return Err(err_at(text.lines().count().max(1), 1, "empty chain"));
    }
    let n = order.len();
    let t = TriangularSet::new(polys, n)?;
    Ok((order, t))
}

#[derive(Debug, Parser)]
#[command(
    name = "trichain",
    version,
    about = "Multiplicities and real zeros of zero-dimensional regular chains"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Emit a JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for per-branch isolation.
    #[arg(long, global = true, value_name = "N")]
    pub threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Split the chain into simple branches with multiplicity arrays.
    Decompose { file: PathBuf },
    /// Local multiplicity at a Gaussian-rational zero, e.g. `--point 1+1i,0`.
    Mult {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Real zeros with multiplicities.
    Isolate {
        file: PathBuf,
        /// Refine every box to at most this width (rational, e.g. 1/1000).
        #[arg(long)]
        width: Option<String>,
    },
    /// Multiplicity at a rational zero by dual-space dimension.
    Oracle {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Whether the file holds a zero-dimensional regular chain.
    Check { file: PathBuf },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Decompose { .. } => "decompose",
            Command::Mult { .. } => "mult",
            Command::Isolate { .. } => "isolate",
            Command::Oracle { .. } => "oracle",
            Command::Check { .. } => "check",
        }
    }

    fn file(&self) -> &PathBuf {
        match self {
            Command::Decompose { file }
            | Command::Mult { file, .. }
            | Command::Isolate { file, .. }
            | Command::Oracle { file, .. }
            | Command::Check { file } => file,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchDoc {
    pub chain: Vec<String>,
    pub array: Vec<u32>,
    pub product: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroDoc {
    #[serde(rename = "box")]
    pub bounds: Vec<[String; 2]>,
    pub multiplicity: u64,
}

/// Output of one command. Rationals are `p/q` strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub command: String,
    pub vars: Vec<String>,
    pub branches: Vec<BranchDoc>,
    pub zeros: Vec<ZeroDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multiplicity: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub regular: Option<bool>,
    pub ms: u64,
}

/// Failed command: exit code and message.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_PARSE: i32 = 2;

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } => EXIT_PARSE,
            _ => EXIT_DOMAIN,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: String) -> Failure {
    Failure {
        code: EXIT_PARSE,
        message,
    }
}

fn parse_point(text: &str) -> std::result::Result<Vec<GaussianRational>, Failure> {
    text.split(',')
        .map(|c| GaussianRational::parse(c).map_err(|e| usage(format!("bad --point: {e}"))))
        .collect()
}

fn branch_doc(b: &SimpleBranch, order: &VarOrder) -> BranchDoc {
    BranchDoc {
        chain: b.chain.to_texts(order),
        array: b.array.0.clone(),
        product: b.array.product(),
    }
}

/// Runs one command on an already parsed system.
pub fn run_on(
    command: &Command,
    order: &VarOrder,
    t: &TriangularSet,
) -> std::result::Result<ResultDocument, Failure> {
    let start = Instant::now();
    let mut doc = ResultDocument {
        command: command.name().to_string(),
        vars: order.names().to_vec(),
        branches: Vec::new(),
        zeros: Vec::new(),
        multiplicity: None,
        regular: None,
        ms: 0,
    };
    let chain = || ZeroDimChain::from_triangular(t);
    match command {
        Command::Check { .. } => {
            let ok = chain().and_then(|c| check_regular_named(&c, order));
            if let Err(e) = ok {
                return Err(Failure {
                    code: EXIT_DOMAIN,
                    message: format!("not a zero-dimensional regular chain: {e}"),
                });
            }
            doc.regular = Some(true);
        }
        Command::Decompose { .. } => {
            let d = reg2sim_named(&chain()?, order)?;
            doc.branches = d.branches.iter().map(|b| branch_doc(b, order)).collect();
        }
        Command::Mult { point, .. } => {
            let pt = parse_point(point)?;
            let c = chain()?;
            let d = reg2sim_named(&c, order)?;
            let m = reg_mult(&c, &pt)?;
            let i = d.branch_at(&pt)?;
            doc.branches = vec![branch_doc(&d.branches[i], order)];
            doc.multiplicity = Some(m);
        }
        Command::Isolate { width, .. } => {
            let w = match width {
                Some(text) => {
                    Some(parse_rational(text).map_err(|e| usage(format!("bad --width: {e}")))?)
                }
                None => None,
            };
            let c = chain()?;
            let d = reg2sim_named(&c, order)?;
            doc.branches = d.branches.iter().map(|b| branch_doc(b, order)).collect();
            doc.zeros = iso_mult_with_width(&c, w.as_ref())?
                .into_iter()
                .map(|z| ZeroDoc {
                    bounds: z
                        .bounds
                        .intervals
                        .iter()
                        .map(|iv| [format_rational(&iv.lo), format_rational(&iv.hi)])
                        .collect(),
                    multiplicity: z.multiplicity,
                })
                .collect();
        }
        Command::Oracle { point, cap, .. } => {
            let pt = parse_point(point)?;
            let real: Option<Vec<Rational>> = pt
                .iter()
                .map(|g| g.is_real().then(|| g.re.clone()))
                .collect();
            let Some(real) = real else {
                return Err(Error::Domain("the oracle needs a rational point".into()).into());
            };
            if real.len() != order.len() {
                return Err(Error::Domain(format!(
                    "point has {} coordinates, system has {} variables",
                    real.len(),
                    order.len()
                ))
                .into());
            }
            doc.multiplicity = Some(dual_space_dim(t.polys(), &real, *cap)?);
        }
    }
    doc.ms = start.elapsed().as_millis() as u64;
    Ok(doc)
}

/// Reads the command's file and runs it.
pub fn run(command: &Command) -> std::result::Result<ResultDocument, Failure> {
    let path = command.file();
    let text = std::fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_DOMAIN,
        message: format!("cannot read {}: {e}", path.display()),
    })?;
    let (order, t) = parse_system(&text).map_err(|e| {
        let mut f = Failure::from(e);
        f.message = format!("{}: {}", path.display(), f.message);
        f
    })?;
    run_on(command, &order, &t)
}

/// Human-readable rendering of a result.
pub fn render_text(doc: &ResultDocument) -> String {
    let mut out = String::new();
    match doc.command.as_str() {
        "check" => out.push_str("regular: true\n"),
        "mult" | "oracle" => {
            out.push_str(&format!("{}\n", doc.multiplicity.unwrap_or_default()));
        }
        _ => {}
    }
    if doc.command != "mult" {
        for (i, b) in doc.branches.iter().enumerate() {
            let arr: Vec<String> = b.array.iter().map(u32::to_string).collect();
            out.push_str(&format!(
                "branch {}: [{}] array [{}] product {}\n",
                i + 1,
                b.chain.join(", "),
                arr.join(", "),
                b.product
            ));
        }
    }
    if doc.command == "isolate" {
        out.push_str(&format!("{} real zeros\n", doc.zeros.len()));
        for z in &doc.zeros {
            let ivs: Vec<String> = z
                .bounds
                .iter()
                .map(|[lo, hi]| format!("[{lo}, {hi}]"))
                .collect();
            out.push_str(&format!(
                "[{}] multiplicity {}\n",
                ivs.join(", "),
                z.multiplicity
            ));
        }
    }
    out
}

/// Entry point of the binary; returns the process exit code.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let result = match cli.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| run(&cli.command)),
            Err(e) => Err(Failure {
                code: EXIT_DOMAIN,
                message: format!("cannot start {n} threads: {e}"),
            }),
        },
        None => run(&cli.command),
    };
    match result {
        Ok(doc) => {
            if cli.json {
                let _ = writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&doc).expect("serializable document")
                );
            } else {
                let _ = write!(out, "{}", render_text(&doc));
                let _ = writeln!(err, "time: {} ms", doc.ms);
            }
            0
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
