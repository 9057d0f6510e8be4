//! The `fsing` command line: reads an `.fsg` input file, runs one command and
//! prints a JSON result record (or a table, or JSON lines for sweeps).
//!
//! Exit codes: 0 TRUE, 1 FALSE, 2 UNDETERMINED (0 for commands without a
//! verdict), 3 budget exceeded, 4 other computation errors, 64 usage errors,
//! 65 malformed input files, 74 I/O errors.

pub mod cache;
pub mod input;
pub mod record;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Rational64;
use serde_json::{json, Map, Value};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::frobenius::{compatibly_fpure_along, fedder_fpure, sfr_certificate, sharply_fpure_pair};
use crate::groebner::is_smooth;
use crate::numerics::{csig_estimate, fsig_estimate, hk_estimate, rsig_estimate, sdim_rf_estimate};
use crate::perturb::{continuity_table, perturb_sweep, Invariant, PerturbationFamily, Perturbations, Property};
use crate::polyring::{parse_poly, Polynomial};
use crate::verdict::{Status, Verdict};
use cache::{input_hash, Cache};
use input::{parse_input, InputFile};

pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_COMPUTATION: i32 = 4;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;
pub const EXIT_IO: i32 = 74;

#[derive(Parser, Debug, Clone)]
#[command(
    name = "fsing",
    version,
    about = "Frobenius splitting tests and finite-e invariants over F_p"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// JSON config file (budgets, e_max, seed, threads).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Result cache directory (default: $FSING_CACHE, else no cache).
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Table,
    Jsonl,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Input file in the .fsg format.
    #[arg(short = 'i', long = "input")]
    pub input: PathBuf,
    /// Ideal to work with; optional when the file has exactly one.
    #[arg(long)]
    pub ideal: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct SigArgs {
    #[command(flatten)]
    pub common: Common,
    /// System of parameters, `;`-separated polynomials.
    #[arg(long, allow_hyphen_values = true)]
    pub sop: String,
    /// Frobenius level; q = p^e.
    #[arg(long)]
    pub e: u32,
    /// Candidate cap for exhaustive enumeration (default from config).
    #[arg(long)]
    pub budget: Option<u64>,
    /// Dimension override for the q^d normalization.
    #[arg(long)]
    pub d: Option<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct SweepArgs {
    #[command(flatten)]
    pub common: Common,
    /// Element x; rows evaluate at x + δ.
    #[arg(long)]
    pub elem: String,
    /// δ(N) = COEF*G^N, e.g. "-w^N" or "2*(x+y)^N".
    #[arg(long, requires = "nrange", conflicts_with = "deltas", allow_hyphen_values = true)]
    pub family: Option<String>,
    /// Inclusive range A..B of exponents N.
    #[arg(long)]
    pub nrange: Option<String>,
    /// Explicit perturbations, `;`-separated.
    #[arg(long, allow_hyphen_values = true)]
    pub deltas: Option<String>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum PropName {
    Fpure,
    Compat,
    CompatX,
    Sharp,
    Sfr,
    Smooth,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvName {
    Hk,
    Fsig,
    Rsig,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Fedder's criterion.
    Fpure {
        #[command(flatten)]
        common: Common,
    },
    /// Compatible F-purity along another ideal of the file.
    Compat {
        #[command(flatten)]
        common: Common,
        /// Ideal a of the file (or `m`) to test along.
        #[arg(long)]
        along: String,
    },
    /// Sharp F-purity of the pair (R, x^t), bounded search.
    Sharp {
        #[command(flatten)]
        common: Common,
        /// Element x of the pair.
        #[arg(long)]
        elem: String,
        /// Rational exponent a/b.
        #[arg(long)]
        t: String,
        /// Highest level searched (default from config).
        #[arg(long)]
        emax: Option<u32>,
    },
    /// Strong F-regularity certificate with test element c.
    Sfr {
        #[command(flatten)]
        common: Common,
        /// Test element c, as a polynomial.
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        /// Highest level searched (default from config).
        #[arg(long)]
        emax: Option<u32>,
        /// Check that c cuts down the dimension.
        #[arg(long)]
        check_dim: bool,
    },
    /// Jacobian criterion.
    Smooth {
        #[command(flatten)]
        common: Common,
        /// Codimension override (default n - dim).
        #[arg(long)]
        codim: Option<usize>,
        /// Refuse to enumerate more minors than this.
        #[arg(long, default_value_t = 100_000)]
        max_minors: u64,
    },
    /// ℓ(R/J^[q]) and its normalization.
    Hk {
        #[command(flatten)]
        common: Common,
        /// Ideal J, m-primary in R.
        #[arg(long = "J")]
        j: String,
        /// Frobenius level; q = p^e.
        #[arg(long)]
        e: u32,
        /// Dimension override for the q^d normalization.
        #[arg(long)]
        d: Option<usize>,
    },
    /// Free rank a_e and a_e / q^d.
    Fsig {
        #[command(flatten)]
        common: Common,
        /// Frobenius level; q = p^e.
        #[arg(long)]
        e: u32,
        /// Dimension override for the q^d normalization.
        #[arg(long)]
        d: Option<usize>,
    },
    /// Splitting dimension and ratio estimates from a_e1, a_e2.
    Sdim {
        #[command(flatten)]
        common: Common,
        /// Lower level.
        #[arg(long)]
        e1: u32,
        /// Upper level, greater than e1.
        #[arg(long)]
        e2: u32,
    },
    /// F-rational signature estimate.
    Rsig(SigArgs),
    /// Relative F-rational signature estimate.
    Csig(SigArgs),
    /// Property sweep over x + δ.
    Perturb {
        #[command(flatten)]
        sweep: SweepArgs,
        /// Property evaluated on every row.
        #[arg(long, value_enum)]
        prop: PropName,
        /// Ideal for `--prop compat`.
        #[arg(long)]
        along: Option<String>,
        /// Element of the pair for `--prop sharp`.
        #[arg(long)]
        pair_elem: Option<String>,
        /// Exponent for `--prop sharp`.
        #[arg(long)]
        t: Option<String>,
        /// Highest level for `--prop sharp` and `--prop sfr`.
        #[arg(long)]
        emax: Option<u32>,
        /// Test element for `--prop sfr`.
        #[arg(long, allow_hyphen_values = true)]
        c: Option<String>,
        /// Minor cap for `--prop smooth`.
        #[arg(long, default_value_t = 100_000)]
        max_minors: u64,
    },
    /// Invariant table over x + δ with distances from δ = 0.
    Continuity {
        #[command(flatten)]
        sweep: SweepArgs,
        /// Frobenius level; q = p^e.
        #[arg(long)]
        e: u32,
        /// Invariant tabulated on every row.
        #[arg(long, value_enum)]
        invariant: InvName,
        /// Ideal J for `--invariant hk` (default m).
        #[arg(long = "J")]
        j: Option<String>,
        /// System of parameters for `--invariant rsig`.
        #[arg(long, allow_hyphen_values = true)]
        sop: Option<String>,
        /// Candidate cap for `--invariant rsig`.
        #[arg(long)]
        budget: Option<u64>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Fpure { .. } => "fpure",
            Command::Compat { .. } => "compat",
            Command::Sharp { .. } => "sharp",
            Command::Sfr { .. } => "sfr",
            Command::Smooth { .. } => "smooth",
            Command::Hk { .. } => "hk",
            Command::Fsig { .. } => "fsig",
            Command::Sdim { .. } => "sdim",
            Command::Rsig(_) => "rsig",
            Command::Csig(_) => "csig",
            Command::Perturb { .. } => "perturb",
            Command::Continuity { .. } => "continuity",
        }
    }

    fn common(&self) -> &Common {
        match self {
            Command::Fpure { common }
            | Command::Compat { common, .. }
            | Command::Sharp { common, .. }
            | Command::Sfr { common, .. }
            | Command::Smooth { common, .. }
            | Command::Hk { common, .. }
            | Command::Fsig { common, .. }
            | Command::Sdim { common, .. } => common,
            Command::Rsig(s) | Command::Csig(s) => &s.common,
            Command::Perturb { sweep, .. } | Command::Continuity { sweep, .. } => &sweep.common,
        }
    }
}

/// A finished command: the record, its sweep rows if any, and the exit code.
#[derive(Debug, Clone)]
pub struct Report {
    pub record: Value,
    pub rows: Option<Vec<Value>>,
    pub exit: i32,
}

struct Computed {
    body: Map<String, Value>,
    rows: Option<Vec<Value>>,
    timings: Value,
    status: Option<Status>,
}

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

fn flag_poly(src: &str, input: &InputFile, what: &str) -> Result<Polynomial> {
    parse_poly(src, &input.ring).map_err(|e| usage(format!("--{what} {src:?}: {e}")))
}

fn flag_polys(src: &str, input: &InputFile, what: &str) -> Result<Vec<Polynomial>> {
    src.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| flag_poly(s, input, what))
        .collect()
}

fn render_list(ps: &[Polynomial]) -> String {
    ps.iter().map(Polynomial::render).collect::<Vec<_>>().join(";")
}

fn parse_t(src: &str) -> Result<Rational64> {
    let t: Rational64 = src
        .trim()
        .parse()
        .map_err(|_| usage(format!("--t {src:?} is not a rational a/b")))?;
    if t < Rational64::from_integer(0) {
        return Err(Error::NegativeT);
    }
    Ok(t)
}

/// Inclusive range `A..B` (or `A..=B`).
pub fn parse_nrange(src: &str) -> Result<Vec<u32>> {
    let bad = || usage(format!("--nrange {src:?}: expected A..B"));
    let (a, b) = src.split_once("..").ok_or_else(bad)?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let a: u32 = a.trim().parse().map_err(|_| bad())?;
    let b: u32 = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a..=b).collect())
}

/// Splits "COEF*G^N" into (COEF, G): G is the last factor, parenthesized or a
/// single name; an empty COEF is 1 and a bare sign is ±1.
pub fn parse_family(src: &str, input: &InputFile) -> Result<(Polynomial, Polynomial)> {
    let bad = |m: &str| usage(format!("--family {src:?}: {m}"));
    let body = src
        .trim()
        .strip_suffix("^N")
        .ok_or_else(|| bad("must end in ^N"))?
        .trim_end();
    let (prefix, g) = if let Some(inner) = body.strip_suffix(')') {
        let mut depth = 0i32;
        let mut open = None;
        for (k, ch) in inner.char_indices().rev() {
            match ch {
                ')' => depth += 1,
                '(' if depth == 0 => {
                    open = Some(k);
                    break;
                }
                '(' => depth -= 1,
                _ => {}
            }
        }
        let k = open.ok_or_else(|| bad("unbalanced parentheses"))?;
        (&body[..k], &inner[k + 1..])
    } else {
        let start = body
            .char_indices()
            .rev()
            .take_while(|(_, c)| c.is_ascii_alphanumeric() || *c == '_')
            .last()
            .map(|(k, _)| k)
            .ok_or_else(|| bad("missing direction G"))?;
        (&body[..start], &body[start..])
    };
    let prefix = prefix.trim();
    let prefix = prefix.strip_suffix('*').unwrap_or(prefix).trim();
    let coef = match prefix {
        "" | "+" => input.ring.one(),
        "-" => input.ring.constant(-1),
        p => flag_poly(p, input, "family")?,
    };
    Ok((coef, flag_poly(g, input, "family")?))
}

fn perturbations(s: &SweepArgs, input: &InputFile, flags: &mut Vec<(String, String)>) -> Result<Perturbations> {
    match (&s.family, &s.deltas) {
        (Some(f), None) => {
            let range = parse_nrange(s.nrange.as_deref().ok_or_else(|| usage("--family needs --nrange"))?)?;
            let (c, g) = parse_family(f, input)?;
            flags.push(("family".into(), format!("{}|{}", c.render(), g.render())));
            flags.push(("nrange".into(), format!("{:?}", range)));
            Ok(Perturbations::Family(PerturbationFamily::new(c, g, range)?))
        }
        (None, Some(d)) => {
            let list = flag_polys(d, input, "deltas")?;
            flags.push(("deltas".into(), render_list(&list)));
            Ok(Perturbations::Explicit(list))
        }
        _ => Err(usage("give either --family with --nrange, or --deltas")),
    }
}

fn verdict_body(v: &Verdict, extra: Map<String, Value>) -> Computed {
    let (body, levels) = record::verdict(v);
    let mut body = body.as_object().expect("object").clone();
    body.extend(extra);
    Computed {
        body,
        rows: None,
        timings: json!({ "levels_ms": levels }),
        status: Some(v.status),
    }
}

fn values(v: Value) -> Computed {
    let mut body = Map::new();
    body.insert("values".into(), v);
    Computed {
        body,
        rows: None,
        timings: json!({}),
        status: None,
    }
}

fn obj(pairs: &[(&str, Value)]) -> Map<String, Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

/// Validates arguments, returning the hashed flag list and the deferred computation.
#[allow(clippy::type_complexity)]
fn plan<'a>(
    cmd: &'a Command,
    input: &'a InputFile,
    config: &'a Config,
) -> Result<(Vec<(String, String)>, Box<dyn FnOnce() -> Result<Computed> + 'a>)> {
    let (ideal_name, ideal) = input.main_ideal(cmd.common().ideal.as_deref())?;
    let mut flags = vec![("ideal".to_string(), ideal_name)];
    let budget = config.budget();
    let e_max = |e: &Option<u32>| e.unwrap_or(config.e_max);
    let run: Box<dyn FnOnce() -> Result<Computed>> = match cmd {
        Command::Fpure { .. } => Box::new(move || Ok(verdict_body(&fedder_fpure(&ideal, &budget)?, Map::new()))),
        Command::Compat { along, .. } => {
            let a = input.ideal(along)?;
            flags.push(("along".into(), along.clone()));
            Box::new(move || Ok(verdict_body(&compatibly_fpure_along(&ideal, &a, &budget)?, Map::new())))
        }
        Command::Sharp { elem, t, emax, .. } => {
            let x = input.elem(elem)?;
            let t = parse_t(t)?;
            let e = e_max(emax);
            flags.extend([
                ("elem".into(), elem.clone()),
                ("t".into(), t.to_string()),
                ("emax".into(), e.to_string()),
            ]);
            Box::new(move || {
                let v = sharply_fpure_pair(&ideal, &x, t, e, &budget)?;
                Ok(verdict_body(
                    &v,
                    obj(&[("t", json!(t.to_string())), ("e_max", json!(e))]),
                ))
            })
        }
        Command::Sfr { c, emax, check_dim, .. } => {
            let c = flag_poly(c, input, "c")?;
            let e = e_max(emax);
            flags.extend([
                ("c".into(), c.render()),
                ("emax".into(), e.to_string()),
                ("check_dim".into(), check_dim.to_string()),
            ]);
            let check = *check_dim;
            Box::new(move || {
                let v = sfr_certificate(&ideal, &c, e, check, &budget)?;
                Ok(verdict_body(&v, obj(&[("c", json!(c.render())), ("e_max", json!(e))])))
            })
        }
        Command::Smooth { codim, max_minors, .. } => {
            flags.extend([
                ("codim".into(), format!("{codim:?}")),
                ("max_minors".into(), max_minors.to_string()),
            ]);
            let (codim, max) = (*codim, *max_minors);
            Box::new(move || Ok(verdict_body(&is_smooth(&ideal, codim, max, &budget)?, Map::new())))
        }
        Command::Hk { j, e, d, .. } => {
            let jj = input.ideal(j)?;
            flags.extend([
                ("J".into(), j.clone()),
                ("e".into(), e.to_string()),
                ("d".into(), format!("{d:?}")),
            ]);
            let (e, d) = (*e, *d);
            Box::new(move || Ok(values(record::hk(&hk_estimate(&ideal, &jj, e, d, &budget)?))))
        }
        Command::Fsig { e, d, .. } => {
            flags.extend([("e".into(), e.to_string()), ("d".into(), format!("{d:?}"))]);
            let (e, d) = (*e, *d);
            Box::new(move || Ok(values(record::fsig(&fsig_estimate(&ideal, e, d, &budget)?))))
        }
        Command::Sdim { e1, e2, .. } => {
            flags.extend([("e1".into(), e1.to_string()), ("e2".into(), e2.to_string())]);
            let (e1, e2) = (*e1, *e2);
            Box::new(move || Ok(values(record::sdim(&sdim_rf_estimate(&ideal, e1, e2, &budget)?))))
        }
        Command::Rsig(s) | Command::Csig(s) => {
            let sop = flag_polys(&s.sop, input, "sop")?;
            let cap = s.budget.unwrap_or(config.enumeration_budget);
            flags.extend([
                ("sop".into(), render_list(&sop)),
                ("e".into(), s.e.to_string()),
                ("budget".into(), cap.to_string()),
                ("d".into(), format!("{:?}", s.d)),
            ]);
            let relative = matches!(cmd, Command::Csig(_));
            let (e, d, seed) = (s.e, s.d, config.seed);
            Box::new(move || {
                let f = if relative { csig_estimate } else { rsig_estimate };
                Ok(values(record::signature(
                    &f(&ideal, &sop, e, cap, seed, d, &budget)?,
                    &sop,
                )))
            })
        }
        Command::Perturb {
            sweep,
            prop,
            along,
            pair_elem,
            t,
            emax,
            c,
            max_minors,
        } => {
            let x = input.elem(&sweep.elem)?;
            flags.push(("elem".into(), sweep.elem.clone()));
            let fam = perturbations(sweep, input, &mut flags)?;
            let need =
                |o: &Option<String>, what: &str| o.clone().ok_or_else(|| usage(format!("--prop needs --{what}")));
            let property = match prop {
                PropName::Fpure => Property::FPure,
                PropName::Compat => Property::Compat(input.ideal(&need(along, "along")?)?),
                PropName::CompatX => Property::CompatAlongElement,
                PropName::Sharp => Property::Sharp {
                    x: input.elem(&need(pair_elem, "pair-elem")?)?,
                    t: parse_t(&need(t, "t")?)?,
                    e_max: e_max(emax),
                },
                PropName::Sfr => Property::Sfr {
                    c: flag_poly(&need(c, "c")?, input, "c")?,
                    e_max: e_max(emax),
                },
                PropName::Smooth => Property::Smooth {
                    max_minors: *max_minors,
                },
            };
            flags.extend([
                ("prop".into(), property.name().to_string()),
                ("along".into(), format!("{along:?}")),
                ("pair_elem".into(), format!("{pair_elem:?}")),
                (
                    "t".into(),
                    format!("{:?}", t.as_deref().map(parse_t).transpose()?.map(|t| t.to_string())),
                ),
                ("emax".into(), e_max(emax).to_string()),
                (
                    "c".into(),
                    format!(
                        "{:?}",
                        c.as_deref()
                            .map(|c| flag_poly(c, input, "c"))
                            .transpose()?
                            .map(|p| p.render())
                    ),
                ),
                ("max_minors".into(), max_minors.to_string()),
            ]);
            Box::new(move || {
                let rep = perturb_sweep(&ideal, &x, &fam, &property, &budget)?;
                let (rows, summary, timings) = record::sweep(&rep);
                let mut body = Map::new();
                body.insert("sweep".into(), summary);
                Ok(Computed {
                    body,
                    rows: Some(rows),
                    timings: json!({ "rows_ms": timings }),
                    status: None,
                })
            })
        }
        Command::Continuity {
            sweep,
            e,
            invariant,
            j,
            sop,
            budget: cap,
        } => {
            let x = input.elem(&sweep.elem)?;
            flags.push(("elem".into(), sweep.elem.clone()));
            let fam = perturbations(sweep, input, &mut flags)?;
            let inv = match invariant {
                InvName::Hk => Invariant::Hk(input.ideal(j.as_deref().unwrap_or("m"))?),
                InvName::Fsig => Invariant::Fsig,
                InvName::Rsig => Invariant::Rsig {
                    sop: flag_polys(
                        sop.as_deref().ok_or_else(|| usage("--invariant rsig needs --sop"))?,
                        input,
                        "sop",
                    )?,
                    cap: cap.unwrap_or(config.enumeration_budget),
                    seed: config.seed,
                },
            };
            flags.extend([
                ("e".into(), e.to_string()),
                ("invariant".into(), inv.name().to_string()),
                ("J".into(), format!("{j:?}")),
                (
                    "sop".into(),
                    format!(
                        "{:?}",
                        sop.as_deref()
                            .map(|s| flag_polys(s, input, "sop"))
                            .transpose()?
                            .map(|v| render_list(&v))
                    ),
                ),
                ("budget".into(), format!("{cap:?}")),
            ]);
            let e = *e;
            Box::new(move || {
                let rep = continuity_table(&ideal, &x, &fam, e, &inv, &budget)?;
                let (rows, summary, timings) = record::continuity(&rep);
                let mut body = Map::new();
                body.insert("continuity".into(), summary);
                Ok(Computed {
                    body,
                    rows: Some(rows),
                    timings: json!({ "rows_ms": timings }),
                    status: None,
                })
            })
        }
    };
    Ok((flags, run))
}

pub fn exit_for_status(s: Option<Status>) -> i32 {
    match s {
        Some(Status::True) | None => 0,
        Some(Status::False) => 1,
        Some(Status::Undetermined) => 2,
    }
}

fn status_of(record: &Value) -> Option<Status> {
    match record.get("verdict")?.as_str()? {
        "TRUE" => Some(Status::True),
        "FALSE" => Some(Status::False),
        "UNDETERMINED" => Some(Status::Undetermined),
        _ => None,
    }
}

pub fn exit_for_error(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::Input { .. } => EXIT_DATA,
        Error::Io(_) => EXIT_IO,
        Error::InvalidArgument(_) | Error::NegativeT => EXIT_USAGE,
        _ => EXIT_COMPUTATION,
    }
}

/// Loads the config file if any; `FSING_THREADS` overrides the thread count.
pub fn load_config(path: Option<&PathBuf>) -> Result<Config> {
    let mut config = match path {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
            serde_json::from_str(&text).map_err(|e| Error::Input {
                line: e.line(),
                message: format!("config {}: {e}", p.display()),
            })?
        }
        None => Config::default(),
    };
    if let Ok(t) = std::env::var("FSING_THREADS") {
        config.threads = t
            .trim()
            .parse()
            .map_err(|_| usage(format!("FSING_THREADS={t:?} is not a number")))?;
    }
    Ok(config)
}

/// Runs one parsed command line with an explicit config.
pub fn execute_with(cli: &Cli, config: &Config) -> Result<Report> {
    let path = &cli.command.common().input;
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let input = parse_input(&text)?;
    let (flags, run) = plan(&cli.command, &input, config)?;
    let command = cli.command.name();
    let hash = input_hash(&input, command, &flags, config);

    let cache_dir = cli
        .cache
        .clone()
        .or_else(|| std::env::var_os("FSING_CACHE").map(PathBuf::from));
    let cache = cache_dir.map(Cache::new);
    if let Some(hit) = cache.as_ref().and_then(|c| c.load(&hash)) {
        let mut record = hit;
        let rows = record.get("rows").and_then(Value::as_array).cloned();
        record["cached"] = json!(true);
        let exit = exit_for_status(status_of(&record));
        return Ok(Report { record, rows, exit });
    }

    let started = Instant::now();
    let computed = run()?;
    let total = started.elapsed().as_millis() as u64;

    let mut record = Map::new();
    record.insert("command".into(), json!(command));
    record.insert("input_hash".into(), json!(hash));
    record.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    record.insert(
        "config".into(),
        serde_json::to_value(config).expect("config serializes"),
    );
    record.insert(
        "flags".into(),
        Value::Object(flags.iter().map(|(k, v)| (k.clone(), json!(v))).collect()),
    );
    record.extend(computed.body);
    if let Some(rows) = &computed.rows {
        record.insert("rows".into(), Value::Array(rows.clone()));
    }
    record.insert("cached".into(), json!(false));
    let mut timings = computed.timings;
    timings["total_ms"] = json!(total);
    record.insert(record::TIMINGS.into(), timings);
    let record = Value::Object(record);

    if let Some(c) = &cache {
        if let Err(e) = c.store(&hash, &record) {
            log::warn!("could not write cache entry: {e}");
        }
    }
    Ok(Report {
        record,
        rows: computed.rows,
        exit: exit_for_status(computed.status),
    })
}

pub fn execute(cli: &Cli) -> Result<Report> {
    let config = load_config(cli.config.as_ref())?;
    if config.threads > 0 {
        // Only the first call can size the global pool; later calls keep it.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(config.threads)
            .build_global();
    }
    execute_with(cli, &config)
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Object(m) if m.contains_key("num") && m.contains_key("den") => {
            let (n, d) = (m["num"].as_str().unwrap_or("?"), m["den"].as_str().unwrap_or("?"));
            if d == "1" {
                n.to_string()
            } else {
                format!("{n}/{d}")
            }
        }
        other => other.to_string(),
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) if !(m.contains_key("num") && m.contains_key("den")) => {
            for (k, x) in m {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, x, out);
            }
        }
        _ => out.push((prefix.to_string(), scalar(v))),
    }
}

/// Aligned `key  value` lines, then the sweep rows as columns.
pub fn render_table(report: &Report) -> String {
    let mut record = report.record.clone();
    if let Some(m) = record.as_object_mut() {
        m.remove("rows");
        m.remove("config");
    }
    let mut pairs = Vec::new();
    flatten("", &record, &mut pairs);
    let width = pairs.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in &pairs {
        out.push_str(&format!("{k:<width$}  {v}\n"));
    }
    if let Some(rows) = &report.rows {
        let cols: Vec<&str> = [
            "n",
            "delta",
            "verdict",
            "value",
            "delta_from_base",
            "unchanged",
            "budget_exceeded",
        ]
        .into_iter()
        .filter(|c| rows.iter().any(|r| r.get(*c).is_some()))
        .collect();
        let cells: Vec<Vec<String>> = rows
            .iter()
            .map(|r| cols.iter().map(|c| r.get(*c).map_or("-".into(), scalar)).collect())
            .collect();
        let widths: Vec<usize> = cols
            .iter()
            .enumerate()
            .map(|(k, c)| cells.iter().map(|r| r[k].len()).max().unwrap_or(0).max(c.len()))
            .collect();
        out.push('\n');
        let line = |cells: Vec<String>| {
            cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect::<Vec<_>>()
                .join("  ")
                .trim_end()
                .to_string()
        };
        out.push_str(&line(cols.iter().map(|c| c.to_string()).collect()));
        out.push('\n');
        for r in cells {
            out.push_str(&line(r));
            out.push('\n');
        }
    }
    out
}

/// Serializes a report in the requested format.
pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&report.record).expect("json")),
        Format::Table => render_table(report),
        Format::Jsonl => {
            let mut out = String::new();
            let mut summary = report.record.clone();
            if let (Some(rows), Some(m)) = (&report.rows, summary.as_object_mut()) {
                m.remove("rows");
                for r in rows {
                    out.push_str(&serde_json::to_string(r).expect("json"));
                    out.push('\n');
                }
            }
            out.push_str(&serde_json::to_string(&summary).expect("json"));
            out.push('\n');
            out
        }
    }
}

/// Entry point shared by the binary and tests: parses `args`, writes the
/// result to `out`, diagnostics to `err`, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = write!(
                if code == 0 {
                    out as &mut dyn Write
                } else {
                    err as &mut dyn Write
                },
                "{}",
                e.render()
            );
            return code;
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let _ = out.write_all(render(&report, cli.format).as_bytes());
            report.exit
        }
        Err(e) => {
            let _ = writeln!(err, "fsing: {e}");
            exit_for_error(&e)
        }
    }
}
