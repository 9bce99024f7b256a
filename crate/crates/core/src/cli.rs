//! Command-line front end. `run` parses arguments, dispatches to the library
//! and writes TSV or JSON; the binary is a thin wrapper around it.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::chow::{elem_abelian_ring, ingest_ring};
use crate::error::{Error, Result};
use crate::fp::Prime;
use crate::groups::{load_group_path, rep_classes, GroupData, GroupFile};
use crate::lannes::{tv_structural, tv_table};
use crate::localization::{bounds_report, build_lambda, d0_estimate, d1_estimate, f_iso_check, ring_window, Verdict};
use crate::poly::parse_poly;
use crate::powers::{adem_reduce, parse_operation};
use crate::unstable::{nilpotence_degree, nilpotence_degree_fp, FinitelyPresentedModule, NilVerdict};

/// Exit status for validation and input errors.
pub const EXIT_INVALID: i32 = 2;
/// Exit status for unresolved verdicts under `--strict`.
pub const EXIT_UNRESOLVED: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "steenrod-chow", version, about = "Steenrod operations, T-functor and localization computations on mod-p Chow rings")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct Common {
    /// The prime p (defaults to the prime in the input file when there is one)
    #[arg(long, global = true)]
    pub prime: Option<u32>,
    /// Largest degree computed
    #[arg(long, global = true, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
    pub cutoff: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Tsv)]
    pub format: Format,
    /// Worker threads for the parallel parts
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Treat unresolved verdicts as failures
    #[arg(long, global = true)]
    pub strict: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Adem normal form of an operation
    Adem {
        #[arg(long)]
        expr: String,
    },
    /// Apply an operation to a polynomial in CH*((Z/p)^rank)
    Act {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        op: String,
        #[arg(long)]
        poly: String,
    },
    /// Dimensions of T_V for a group (product formula) or a presented module
    Tv {
        #[arg(long, conflicts_with = "module")]
        group: Option<PathBuf>,
        #[arg(long)]
        module: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        rank: usize,
    },
    /// Nilpotence degree of a presented module or a ring
    Nil {
        #[arg(long, conflicts_with = "ring")]
        module: Option<PathBuf>,
        #[arg(long)]
        ring: Option<PathBuf>,
    },
    /// Rep((Z/p)^rank, G)
    Reps {
        #[arg(long)]
        group: PathBuf,
        #[arg(long, default_value_t = 1)]
        rank: usize,
    },
    /// F-isomorphism certificate for CH*_G -> lim_E CH*_E
    QuillenCheck {
        #[arg(long)]
        group: PathBuf,
    },
    /// The localization map λ_n and its equalizer
    Localize {
        #[arg(long)]
        group: PathBuf,
        #[arg(long, default_value_t = 1)]
        level: usize,
    },
    /// d0 and d1 estimates with the degree bounds
    D0 {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        faithful_degree: Option<usize>,
    },
}

/// What a command produced: TSV lines, the JSON mirror, and whether any
/// verdict is unresolved or a checked bound failed.
#[derive(Debug, Default)]
struct Report {
    lines: Vec<String>,
    json: serde_json::Map<String, Value>,
    unresolved: bool,
    failed: bool,
}

impl Report {
    fn note(&mut self, key: &str, text: impl Into<String>, value: Value) {
        self.lines.push(format!("{key} = {}", text.into()));
        self.json.insert(key.to_string(), value);
    }

    fn table(&mut self, columns: &[&str], rows: Vec<Vec<Value>>) {
        self.lines.push(columns.join("\t"));
        let mut objs = Vec::new();
        for row in rows {
            self.lines.push(row.iter().map(cell).collect::<Vec<_>>().join("\t"));
            let obj: serde_json::Map<String, Value> =
                columns.iter().map(|c| c.to_string()).zip(row).collect();
            objs.push(Value::Object(obj));
        }
        self.json.insert("rows".into(), Value::Array(objs));
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match cli.common.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(&cli)),
            Err(e) => Err(Error::Unsupported(format!("thread pool: {e}"))),
        },
        None => dispatch(&cli),
    };
    match result {
        Ok(report) => {
            let text = match cli.common.format {
                Format::Tsv => {
                    let mut s = report.lines.join("\n");
                    s.push('\n');
                    s
                }
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&Value::Object(report.json)).expect("serializable");
                    s.push('\n');
                    s
                }
            };
            let _ = out.write_all(text.as_bytes());
            if report.failed {
                let _ = writeln!(err, "error: a checked bound failed");
                EXIT_INVALID
            } else if report.unresolved && cli.common.strict {
                let _ = writeln!(err, "error: unresolved verdicts under --strict");
                EXIT_UNRESOLVED
            } else {
                0
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INVALID
        }
    }
}

fn prime_arg(common: &Common, default: Option<Prime>) -> Result<Prime> {
    match (common.prime, default) {
        (Some(q), _) => Prime::new(q).map_err(|e| Error::validation("--prime", e.to_string())),
        (None, Some(p)) => Ok(p),
        (None, None) => Err(Error::validation("--prime", "required (the input does not name a prime)")),
    }
}

fn with_path<T>(path: &Path, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Validation { path: field, msg } => Error::Validation {
            path: format!("{}: {field}", path.display()),
            msg,
        },
        Error::Io(m) => Error::Io(format!("{}: {m}", path.display())),
        other => other,
    })
}

fn read(path: &Path) -> Result<String> {
    with_path(path, std::fs::read_to_string(path).map_err(Error::from))
}

fn group_data(common: &Common, path: &Path) -> Result<(GroupFile, GroupData)> {
    let file = with_path(path, load_group_path(path))?;
    let p = prime_arg(common, file.prime)?;
    let data = GroupData::from_file(&file, p);
    Ok((file, data))
}

fn dispatch(cli: &Cli) -> Result<Report> {
    let c = &cli.common;
    let cutoff = c.cutoff as usize;
    let mut r = Report::default();
    match &cli.command {
        Command::Adem { expr } => {
            let p = prime_arg(c, None)?;
            let e = parse_operation(expr, p)?;
            let nf = adem_reduce(&e);
            r.lines.push(nf.to_string());
            r.json.insert("prime".into(), json!(p.value()));
            r.json.insert("normal_form".into(), json!(nf.to_string()));
            let terms: Vec<Value> = nf
                .sorted_terms()
                .into_iter()
                .map(|(w, k)| json!({"coeff": k, "word": w.exponents()}))
                .collect();
            r.json.insert("terms".into(), Value::Array(terms));
        }
        Command::Act { rank, op, poly } => {
            let p = prime_arg(c, None)?;
            let ring = elem_abelian_ring(*rank, p);
            let names = ring.names();
            let f = parse_poly(poly, &names, p)?;
            let e = parse_operation(op, p)?;
            let g = ring.apply_expr(&e, &f)?;
            r.lines.push(g.display(&names));
            r.json.insert("prime".into(), json!(p.value()));
            r.json.insert("result".into(), json!(g.display(&names)));
        }
        Command::Tv { group, module, rank } => match (group, module) {
            (Some(path), None) => {
                let (_, g) = group_data(c, path)?;
                let tv = tv_structural(&g, *rank)?;
                let table = tv.table(cutoff)?;
                r.table(
                    &["rank", "degree", "dimension"],
                    table.dims.iter().map(|(k, d)| vec![json!(rank), json!(k), json!(d)]).collect(),
                );
                let comps: Vec<Value> = tv
                    .components
                    .iter()
                    .map(|comp| {
                        json!({
                            "representative": comp.class.representative,
                            "orbit_size": comp.class.orbit_size,
                            "centralizer_order": comp.centralizer.len(),
                            "ring_generators": comp.ring.generators().len(),
                            "provenance": comp.ring.provenance(),
                        })
                    })
                    .collect();
                r.json.insert("group".into(), json!(g.name));
                r.json.insert("components".into(), Value::Array(comps));
                r.note("components", tv.components.len().to_string(), json!(tv.components.len()));
            }
            (None, Some(path)) => {
                let m = with_path(path, FinitelyPresentedModule::from_json(&read(path)?))?;
                if let Some(q) = c.prime {
                    if q != m.prime().value() {
                        return Err(Error::validation("--prime", "does not match the module's prime"));
                    }
                }
                let id = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
                let table = tv_table(&m, &id, *rank, cutoff)?;
                r.table(
                    &["rank", "degree", "dimension"],
                    table.dims.iter().map(|(k, d)| vec![json!(rank), json!(k), json!(d)]).collect(),
                );
                r.json.insert("module".into(), json!(id));
            }
            _ => return Err(Error::validation("tv", "exactly one of --group or --module is required")),
        },
        Command::Nil { module, ring } => {
            let n = match (module, ring) {
                (Some(path), None) => {
                    let m = with_path(path, FinitelyPresentedModule::from_json(&read(path)?))?;
                    nilpotence_degree_fp(&m, cutoff)
                }
                (None, Some(path)) => {
                    let ring = with_path(path, ingest_ring(&read(path)?))?;
                    // The window must reach p times the degrees examined.
                    let q = ring.prime().value() as usize;
                    let c = ring.cutoff().map_or(cutoff, |rc| cutoff.min(rc / q));
                    if c == 0 {
                        return Err(Error::validation("cutoff", "the ring's cutoff is below p"));
                    }
                    nilpotence_degree(&ring_window(&ring, c)?, c)
                }
                _ => return Err(Error::validation("nil", "exactly one of --module or --ring is required")),
            };
            let verdict = match n.verdict {
                NilVerdict::Exact => Verdict::VerifiedThroughCutoff,
                NilVerdict::AtLeast => Verdict::Unresolved,
            };
            let bound = match n.verdict {
                NilVerdict::Exact => "exact",
                NilVerdict::AtLeast => "at-least",
            };
            r.table(&["nilpotence_degree", "bound", "verdict"], vec![vec![json!(n.n), json!(bound), json!(verdict)]]);
            r.unresolved = verdict == Verdict::Unresolved;
        }
        Command::Reps { group, rank } => {
            let (_, g) = group_data(c, group)?;
            let classes = rep_classes(*rank, &g.group, g.prime);
            let rows = classes
                .iter()
                .enumerate()
                .map(|(i, cl)| {
                    let labels: Vec<&str> = cl.representative.iter().map(|&x| g.group.label(x)).collect();
                    vec![
                        json!(i),
                        json!(cl.representative.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")),
                        json!(labels.join(",")),
                        json!(cl.orbit_size),
                        json!(cl.image(&g.group).len()),
                    ]
                })
                .collect();
            r.table(&["class", "representative", "labels", "orbit_size", "image_order"], rows);
            r.note("classes", classes.len().to_string(), json!(classes.len()));
        }
        Command::QuillenCheck { group } => {
            let (_, g) = group_data(c, group)?;
            let cert = f_iso_check(&g, cutoff)?;
            let mut rows = Vec::new();
            for k in &cert.kernel_report {
                rows.push(vec![json!("kernel"), json!(k.degree), json!(k.element), json!(k.nilpotent_at)]);
            }
            for i in &cert.image_report {
                rows.push(vec![json!("image"), json!(i.degree), json!(i.element), json!(i.power)]);
            }
            r.table(&["report", "degree", "element", "power"], rows);
            let dims: Vec<String> = cert.limit_dims.iter().map(|d| d.to_string()).collect();
            r.note("limit_dims", dims.join(","), json!(cert.limit_dims));
            r.note("kernel_empty", cert.kernel_empty().to_string(), json!(cert.kernel_empty()));
            r.note("image_full", cert.image_full().to_string(), json!(cert.image_full()));
            r.note("verdict", cert.verdict.to_string(), json!(cert.verdict));
            r.unresolved = cert.verdict == Verdict::Unresolved;
        }
        Command::Localize { group, level } => {
            if *level == 0 {
                return Err(Error::validation("--level", "must be at least 1"));
            }
            let (_, g) = group_data(c, group)?;
            let e = build_lambda(&g, *level, cutoff)?;
            let rows = e
                .degrees
                .iter()
                .map(|d| {
                    vec![
                        json!(d.degree),
                        json!(d.source_dim),
                        json!(d.middle_dims.iter().sum::<usize>()),
                        json!(d.right_dims.iter().sum::<usize>()),
                        json!(d.lambda_rank),
                        json!(d.equalizer_dim),
                        json!(d.injective()),
                        json!(d.onto_equalizer()),
                        json!(d.legs_agree),
                    ]
                })
                .collect();
            r.table(
                &[
                    "degree",
                    "source_dim",
                    "middle_dim",
                    "right_dim",
                    "lambda_rank",
                    "equalizer_dim",
                    "injective",
                    "onto_equalizer",
                    "legs_agree",
                ],
                rows,
            );
            r.note("objects", e.objects.len().to_string(), json!(e.objects.len()));
            r.note("morphisms", e.morphisms.len().to_string(), json!(e.morphisms.len()));
            r.note("verdict", Verdict::VerifiedThroughCutoff.to_string(), json!(Verdict::VerifiedThroughCutoff));
            r.failed = !e.legs_agree();
        }
        Command::D0 { group, faithful_degree } => {
            let (file, g) = group_data(c, group)?;
            match faithful_degree.or(file.faithful_degree) {
                Some(n) => {
                    let b = bounds_report(&g, n, cutoff)?;
                    r.note("d0", b.d0.to_string(), json!(b.d0));
                    r.note("d1", b.d1.to_string(), json!(b.d1));
                    r.note(
                        "d0_bound",
                        format!("{} ({})", b.d0_bound, ok(b.d0_within_bound)),
                        json!({"bound": b.d0_bound, "holds": b.d0_within_bound}),
                    );
                    r.note(
                        "d1_bound",
                        format!("{} ({})", b.d1_bound, ok(b.d1_within_bound)),
                        json!({"bound": b.d1_bound, "holds": b.d1_within_bound}),
                    );
                    r.note(
                        "max_nil_level",
                        format!("{} ({})", b.nil_level, ok(b.totaro_identity)),
                        json!({"value": b.nil_level.value, "verdict": b.nil_level.verdict, "equals_d0": b.totaro_identity}),
                    );
                    r.unresolved = b.verdict == Verdict::Unresolved;
                    r.failed = !b.passed();
                }
                None => {
                    let d0 = d0_estimate(&g, cutoff)?;
                    let d1 = d1_estimate(&g, cutoff)?;
                    r.note("d0", d0.to_string(), json!(d0));
                    r.note("d1", d1.to_string(), json!(d1));
                    r.unresolved = d0.verdict == Verdict::Unresolved || d1.verdict == Verdict::Unresolved;
                }
            }
        }
    }
    Ok(r)
}

fn ok(b: bool) -> &'static str {
    if b {
        "holds"
    } else {
        "FAILS"
    }
}
