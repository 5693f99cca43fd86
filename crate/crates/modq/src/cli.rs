//! Command-line front door. One job per process: parse a subcommand, run
//! the pipeline, and emit the result as JSON or as a table that is a pure
//! render of the same JSON value. Exit codes: 0 success, 2 validation
//! error, 3 budget exhaustion.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use itertools::Itertools;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::geometry::{
    count_points, fit_motive_class, mckay_report, singular_locus, AffineVarietyPresentation,
};
use crate::invariants::{
    default_degree_bound, diagonal_relations, hilbert_basis_diagonal, invariant_dims,
    minimal_generators, presentation, AlgebraPresentation,
};
use crate::poly::MultiPoly;
use crate::rep::{build_representation, parse_summands, Regime, Representation};
use crate::structure::{
    classify_cm, cm_defect, gorenstein_verdict, regular_sequence_probe, structure_report,
    ClassifyOptions,
};

/// Default Groebner budget, counted in S-pairs processed.
pub const DEFAULT_BUDGET: u64 = 1 << 20;

const SCHEMA: &str = "modq/1";

#[derive(Parser)]
#[command(
    name = "modq",
    version,
    about = "Invariant rings of cyclic groups of order 2p over small fields",
    disable_help_subcommand = true
)]
struct Cli {
    /// Emit machine-readable JSON instead of the table rendering.
    #[arg(long, global = true)]
    json: bool,
    /// key=value file with defaults for degree_bound, budget, cap.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RepArgs {
    /// Odd part p of the group order 2p (p = 2 gives the cyclic 4-group).
    #[arg(short, long)]
    p: u64,
    /// Field characteristic (p itself, or 2).
    #[arg(long = "char")]
    characteristic: u64,
    /// Comma-separated summand tags, e.g. "V3", "V2+,V1-", "W1".
    #[arg(long)]
    summands: String,
}

#[derive(Args)]
struct BoundArgs {
    /// Generator search bound; defaults to twice the group order.
    #[arg(long)]
    degree_bound: Option<u32>,
    /// Groebner budget in S-pairs.
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Graded dimensions and minimal generators of the invariant ring.
    Invariants {
        #[command(flatten)]
        rep: RepArgs,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Minimal generators together with a minimal relation ideal.
    Presentation {
        #[command(flatten)]
        rep: RepArgs,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// The Cohen-Macaulay classification for a regime.
    Classify {
        /// Odd part p of the group order 2p.
        #[arg(short, long)]
        p: u64,
        /// Field characteristic.
        #[arg(long = "char")]
        characteristic: u64,
        /// Restrict to faithful (true) or non-faithful (false) actions.
        #[arg(long)]
        faithful: Option<bool>,
        /// Restrict to representations of this dimension.
        #[arg(long)]
        dimension: Option<u32>,
    },
    /// Depth and Gorenstein verdicts for one representation.
    Gorenstein {
        #[command(flatten)]
        rep: RepArgs,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Monomial Hilbert basis of a two-variable diagonal p-group action.
    HilbertBasis {
        /// The modulus p.
        #[arg(short, long)]
        p: u64,
        /// Weight of the first variable.
        #[arg(short)]
        i: u64,
        /// Weight of the second variable.
        #[arg(short)]
        j: u64,
        /// Coefficient characteristic for the relation polynomials.
        #[arg(long = "char", default_value_t = 2)]
        characteristic: u64,
    },
    /// Jacobian singular locus of the quotient presentation over F_q.
    SingularLocus {
        #[command(flatten)]
        rep: RepArgs,
        #[command(flatten)]
        bounds: BoundArgs,
        /// Field size to enumerate (a power of the characteristic).
        #[arg(short, long)]
        q: u64,
        /// Enumeration cap on q^n.
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Point counts of the quotient presentation over listed field sizes.
    CountPoints {
        #[command(flatten)]
        rep: RepArgs,
        #[command(flatten)]
        bounds: BoundArgs,
        /// Comma-separated field sizes, e.g. 2,4,8,16.
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<u64>,
        /// Enumeration cap on q^n.
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Point-count comparison for the two-dimensional W quotient.
    Mckay {
        /// The odd prime p (characteristic 2 is implied).
        #[arg(short, long)]
        p: u64,
        /// Groebner budget in S-pairs.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Regular-sequence probe for invariants inside the invariant ring.
    Probe {
        #[command(flatten)]
        rep: RepArgs,
        #[command(flatten)]
        bounds: BoundArgs,
        /// Semicolon-separated candidate elements, parsed in the action ring.
        #[arg(long)]
        elements: String,
        /// Degree window to search for zerodivisor certificates.
        #[arg(long)]
        window: Option<u32>,
    },
}

#[derive(Clone, Copy, Default)]
struct FileDefaults {
    degree_bound: Option<u32>,
    budget: Option<u64>,
    cap: Option<u64>,
}

fn load_config(path: &Path) -> Result<FileDefaults> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read config {}: {e}", path.display())))?;
    let mut out = FileDefaults::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::InvalidInput(format!("config line {}: expected key=value", idx + 1))
        })?;
        let (key, value) = (key.trim(), value.trim());
        let int = value.parse::<u64>().map_err(|_| {
            Error::InvalidInput(format!("config line {}: {key} wants an integer", idx + 1))
        });
        match key {
            "degree_bound" => out.degree_bound = Some(int? as u32),
            "budget" => out.budget = Some(int?),
            "cap" => out.cap = Some(int?),
            _ => {
                return Err(Error::InvalidInput(format!(
                    "config line {}: unknown key {key}",
                    idx + 1
                )))
            }
        }
    }
    Ok(out)
}

struct Job {
    defaults: FileDefaults,
}

impl Job {
    fn degree_bound(&self, flag: Option<u32>, rep: &Representation) -> u32 {
        flag.or(self.defaults.degree_bound)
            .unwrap_or_else(|| default_degree_bound(rep))
    }

    fn budget(&self, flag: Option<u64>) -> u64 {
        flag.or(self.defaults.budget).unwrap_or(DEFAULT_BUDGET)
    }

    fn cap(&self, flag: Option<u64>) -> Option<u64> {
        flag.or(self.defaults.cap)
    }
}

fn build(args: &RepArgs) -> Result<Representation> {
    let regime = Regime::of(args.p, args.characteristic)?;
    let summands = parse_summands(&args.summands, regime, args.p)?;
    build_representation(args.p, args.characteristic, &summands)
}

fn rep_echo(rep: &Representation) -> Value {
    json!({
        "p": rep.p(),
        "characteristic": rep.characteristic(),
        "regime": rep.regime().as_str(),
        "summands": rep.summands().iter().map(|s| s.to_string()).join(","),
        "dimension": rep.dimension(),
        "group_order": rep.group_order(),
    })
}

fn header(command: &str, rep: Option<&Representation>) -> Value {
    let mut value = json!({ "schema": SCHEMA, "command": command });
    if let Some(rep) = rep {
        let map = value.as_object_mut().expect("header is an object");
        for (k, v) in rep_echo(rep).as_object().expect("echo is an object") {
            map.insert(k.clone(), v.clone());
        }
    }
    value
}

fn extend(mut base: Value, tail: Value) -> Value {
    let map = base.as_object_mut().expect("report is an object");
    for (k, v) in tail.as_object().expect("tail is an object") {
        map.insert(k.clone(), v.clone());
    }
    base
}

fn strings<T: std::fmt::Display>(items: &[T]) -> Vec<String> {
    items.iter().map(|x| x.to_string()).collect()
}

fn presentation_value(pres: &AlgebraPresentation) -> Value {
    let generators: Vec<Value> = pres
        .generators
        .generators
        .iter()
        .zip(&pres.generators.degrees)
        .enumerate()
        .map(|(idx, (g, d))| {
            json!({ "name": format!("U{}", idx + 1), "degree": d, "polynomial": g.to_string() })
        })
        .collect();
    let relations: Vec<Value> = pres
        .relations
        .iter()
        .map(|r| json!({ "degree": r.weighted_degree(), "polynomial": r.to_string() }))
        .collect();
    json!({
        "class": pres.class.as_str(),
        "ambient_dim": pres.ambient_dim,
        "generators": generators,
        "relations": relations,
    })
}

fn dispatch(command: &Command, job: &Job) -> Result<Value> {
    match command {
        Command::Invariants { rep: args, bounds } => {
            let rep = build(args)?;
            let bound = job.degree_bound(bounds.degree_bound, &rep);
            let gens = minimal_generators(&rep, bound);
            Ok(extend(
                header("invariants", Some(&rep)),
                json!({
                    "degree_bound": bound,
                    "dims": invariant_dims(&rep, bound),
                    "generator_degrees": gens.degrees,
                    "generators": strings(&gens.generators),
                    "new_generator_at_bound": gens.new_at_bound,
                }),
            ))
        }
        Command::Presentation { rep: args, bounds } => {
            let rep = build(args)?;
            let bound = job.degree_bound(bounds.degree_bound, &rep);
            let pres = presentation(&rep, bound, job.budget(bounds.budget))?;
            Ok(extend(
                extend(header("presentation", Some(&rep)), json!({ "degree_bound": bound })),
                presentation_value(&pres),
            ))
        }
        Command::Classify { p, characteristic, faithful, dimension } => {
            let options = ClassifyOptions { faithful: *faithful, dimension: *dimension };
            let result = classify_cm(*p, *characteristic, options)?;
            Ok(extend(
                header("classify", None),
                json!({
                    "p": p,
                    "characteristic": characteristic,
                    "regime": result.regime.as_str(),
                    "families": result.labels(),
                }),
            ))
        }
        Command::Gorenstein { rep: args, bounds } => {
            let rep = build(args)?;
            let bound = job.degree_bound(bounds.degree_bound, &rep);
            // A presentation can only move the verdict on rules 1 and 3,
            // both of which require a Cohen-Macaulay ring; skip the
            // expensive computation when the formula rules already decide.
            let quick = gorenstein_verdict(&rep, None);
            let pres = if quick.rule == 4 && cm_defect(&rep) == 0 {
                Some(presentation(&rep, bound, job.budget(bounds.budget))?)
            } else {
                None
            };
            let report = structure_report(&rep, pres.as_ref());
            Ok(extend(
                header("gorenstein", Some(&rep)),
                json!({
                    "degree_bound": bound,
                    "cm_defect": report.cm_defect,
                    "is_cm": report.is_cm,
                    "presentation_class": report.presentation_class.map(|c| c.as_str()),
                    "gorenstein": {
                        "verdict": report.gorenstein.verdict.as_str(),
                        "rule": report.gorenstein.rule,
                        "witness": report.gorenstein.witness,
                    },
                    "bireflection_ok": report.bireflection_ok,
                }),
            ))
        }
        Command::HilbertBasis { p, i, j, characteristic } => {
            let basis = hilbert_basis_diagonal(*p, *i, *j)?;
            let field = Field::new(*characteristic, 1)?;
            let relations = diagonal_relations(&basis, &field)?;
            Ok(extend(
                header("hilbert-basis", None),
                json!({
                    "p": p,
                    "i": i,
                    "j": j,
                    "pairs": basis.pairs,
                    "degrees": basis.pairs.iter().map(|(a, b)| a + b).collect::<Vec<u32>>(),
                    "relations": strings(&relations),
                }),
            ))
        }
        Command::SingularLocus { rep: args, bounds, q, cap } => {
            let rep = build(args)?;
            let bound = job.degree_bound(bounds.degree_bound, &rep);
            let pres = presentation(&rep, bound, job.budget(bounds.budget))?;
            let variety = AffineVarietyPresentation::from_presentation(&pres)?;
            let locus = singular_locus(&variety, *q, job.cap(*cap))?;
            let points: Vec<Vec<String>> = locus.points.iter().map(|pt| strings(pt)).collect();
            Ok(extend(
                header("singular-locus", Some(&rep)),
                json!({
                    "q": q,
                    "codim": variety.codim,
                    "jacobian_ideal": strings(&locus.jacobian_ideal),
                    "count": points.len(),
                    "points": points,
                }),
            ))
        }
        Command::CountPoints { rep: args, bounds, sizes, cap } => {
            if sizes.is_empty() {
                return Err(Error::InvalidInput("need at least one field size".into()));
            }
            let rep = build(args)?;
            let bound = job.degree_bound(bounds.degree_bound, &rep);
            let pres = presentation(&rep, bound, job.budget(bounds.budget))?;
            let variety = AffineVarietyPresentation::from_presentation(&pres)?;
            let mut sizes = sizes.clone();
            sizes.sort_unstable();
            sizes.dedup();
            let counts: Vec<(u64, u64)> = sizes
                .iter()
                .map(|&q| Ok((q, count_points(&variety, q, job.cap(*cap))?)))
                .collect::<Result<_>>()?;
            let class = match fit_motive_class(&counts) {
                Ok(class) => Value::String(class.to_string()),
                Err(Error::NotPolynomialCount(_)) => Value::Null,
                Err(e) => return Err(e),
            };
            Ok(extend(
                header("count-points", Some(&rep)),
                json!({ "counts": counts, "class": class }),
            ))
        }
        Command::Mckay { p, budget } => {
            let report = mckay_report(*p, job.budget(*budget))?;
            Ok(extend(
                header("mckay", None),
                json!({
                    "p": report.p,
                    "class_of_x": report.class_of_x.to_string(),
                    "class_of_y": report.class_of_y.to_string(),
                    "chi_Y": report.euler_y,
                    "conj_classes": report.conj_classes,
                    "match": report.matches,
                }),
            ))
        }
        Command::Probe { rep: args, bounds, elements, window } => {
            let rep = build(args)?;
            let parsed: Vec<MultiPoly> = elements
                .split(';')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| rep.ring().parse(s))
                .collect::<Result<_>>()?;
            if parsed.is_empty() {
                return Err(Error::InvalidInput("need at least one probe element".into()));
            }
            // The probe only inspects graded pieces up to its window, so
            // generators beyond that degree cannot participate; default the
            // generator search to the resolved window instead of the
            // representation-wide bound.
            let degs: Vec<u32> = parsed.iter().map(MultiPoly::total_degree).collect();
            let needed = window
                .unwrap_or_else(|| degs.iter().sum())
                .max(degs.iter().copied().max().unwrap_or(0));
            let bound = bounds.degree_bound.or(job.defaults.degree_bound).unwrap_or(needed);
            let gens = minimal_generators(&rep, bound);
            let report =
                regular_sequence_probe(&parsed, &gens, *window, job.budget(bounds.budget))?;
            let lm = report.certificate_lm.as_ref().map(|m| {
                MultiPoly::from_terms(rep.ring(), vec![(m.clone(), rep.field().from_int(1))])
                    .to_string()
            });
            Ok(extend(
                header("probe", Some(&rep)),
                json!({
                    "elements": strings(&parsed),
                    "window": report.window,
                    "verdict": report.verdict.as_str(),
                    "multiplier": report.multiplier.map(|m| m.to_string()),
                    "certificate_lm": lm,
                    "identity_nf_zero": report.identity_nf_zero,
                }),
            ))
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("null".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

/// Renders the JSON value as indented `key: value` lines. Pure function of
/// the JSON document.
fn render_table(value: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    let Value::Object(map) = value else {
        out.push_str(&format!("{pad}{}\n", scalar(value).unwrap_or_default()));
        return;
    };
    for (k, v) in map {
        if let Some(s) = scalar(v) {
            out.push_str(&format!("{pad}{k}: {s}\n"));
            continue;
        }
        if let Value::Array(items) = v {
            if items.iter().all(|i| scalar(i).is_some()) {
                let joined = items.iter().filter_map(scalar).join(", ");
                out.push_str(&format!("{pad}{k}: [{joined}]\n"));
                continue;
            }
            out.push_str(&format!("{pad}{k}:\n"));
            for item in items {
                match item {
                    Value::Array(row) if row.iter().all(|i| scalar(i).is_some()) => {
                        let joined = row.iter().filter_map(scalar).join(", ");
                        out.push_str(&format!("{pad}  - ({joined})\n"));
                    }
                    other => {
                        out.push_str(&format!("{pad}  -\n"));
                        render_table(other, indent + 2, out);
                    }
                }
            }
            continue;
        }
        out.push_str(&format!("{pad}{k}:\n"));
        render_table(v, indent + 1, out);
    }
}

/// Parses the argument vector, runs the job, and returns the exit code and
/// the full output text. Never panics on user input.
pub fn run<I, S>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let mut text = e.to_string();
            if !text.ends_with('\n') {
                text.push('\n');
            }
            return (code, text);
        }
    };
    let defaults = match &cli.config {
        Some(path) => match load_config(path) {
            Ok(d) => d,
            Err(e) => return (2, format!("error: {e}\n")),
        },
        None => FileDefaults::default(),
    };
    let job = Job { defaults };
    match dispatch(&cli.command, &job) {
        Ok(value) => {
            let text = if cli.json {
                let mut s = serde_json::to_string_pretty(&value).expect("reports serialize");
                s.push('\n');
                s
            } else {
                let mut s = String::new();
                render_table(&value, 0, &mut s);
                s
            };
            (0, text)
        }
        Err(e) => {
            let code = match e {
                Error::BudgetExceeded { .. } => 3,
                _ => 2,
            };
            (code, format!("error: {e}\n"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_vec(args: &[&str]) -> (i32, String) {
        run(std::iter::once("modq").chain(args.iter().copied()))
    }

    fn run_json(args: &[&str]) -> Value {
        let (code, text) = run_vec(args);
        assert_eq!(code, 0, "unexpected failure: {text}");
        serde_json::from_str(&text).expect("valid JSON")
    }

    #[test]
    fn presentation_of_the_four_dimensional_quotient() {
        let v = run_json(&["presentation", "--char", "2", "-p", "2", "--summands", "V3", "--json"]);
        assert_eq!(v["schema"], "modq/1");
        assert_eq!(v["class"], "hypersurface");
        let degrees: Vec<u64> = v["generators"]
            .as_array()
            .unwrap()
            .iter()
            .map(|g| g["degree"].as_u64().unwrap())
            .collect();
        assert_eq!(degrees, vec![1, 2, 3, 4]);
        assert_eq!(v["relations"].as_array().unwrap().len(), 1);
    }

    #[test]
    fn json_output_is_deterministic() {
        let args = ["presentation", "--char", "2", "-p", "2", "--summands", "V2,V2", "--json"];
        assert_eq!(run_vec(&args), run_vec(&args));
    }

    #[test]
    fn hilbert_basis_pairs_and_relation_count() {
        let v = run_json(&["hilbert-basis", "-p", "5", "-i", "1", "-j", "2", "--json"]);
        let pairs: Vec<(u64, u64)> = v["pairs"]
            .as_array()
            .unwrap()
            .iter()
            .map(|p| (p[0].as_u64().unwrap(), p[1].as_u64().unwrap()))
            .collect();
        assert_eq!(pairs, vec![(5, 0), (3, 1), (1, 2), (0, 5)]);
        assert_eq!(v["relations"].as_array().unwrap().len(), 3);
    }

    #[test]
    fn mckay_summary_keys() {
        let v = run_json(&["mckay", "-p", "3", "--json"]);
        assert_eq!(v["chi_Y"], 3);
        assert_eq!(v["conj_classes"], 6);
        assert_eq!(v["match"], false);
    }

    #[test]
    fn classify_the_order_four_regime() {
        let v = run_json(&["classify", "-p", "2", "--char", "2", "--json"]);
        assert_eq!(v["regime"], "char2_p2");
        assert_eq!(v["families"].as_array().unwrap().len(), 3);
    }

    #[test]
    fn count_points_fits_affine_space() {
        let v = run_json(&[
            "count-points", "--char", "2", "-p", "2", "--summands", "V2", "--sizes", "2,4,8",
            "--json",
        ]);
        assert_eq!(v["counts"][0][1], 4);
        assert_eq!(v["counts"][1][1], 16);
        assert_eq!(v["counts"][2][1], 64);
        assert_eq!(v["class"], "L^2");
    }

    #[test]
    fn probe_single_invariant_is_regular() {
        let v = run_json(&[
            "probe", "-p", "5", "--char", "5", "--summands", "V2+", "--elements", "x", "--json",
        ]);
        assert_eq!(v["verdict"], "regular");
        assert_eq!(v["multiplier"], Value::Null);
    }

    #[test]
    fn table_mode_renders_the_json_fields() {
        let (code, text) = run_vec(&["presentation", "--char", "2", "-p", "2", "--summands", "V3"]);
        assert_eq!(code, 0);
        assert!(text.contains("class: hypersurface"), "table was:\n{text}");
        assert!(text.contains("schema: modq/1"));
    }

    #[test]
    fn validation_and_budget_exit_codes() {
        let (code, text) = run_vec(&["presentation", "--char", "3", "-p", "5", "--summands", "V2+"]);
        assert_eq!(code, 2, "regime mismatch: {text}");
        let (code, _) = run_vec(&["no-such-command"]);
        assert_eq!(code, 2);
        let (code, text) = run_vec(&[
            "presentation", "--char", "2", "-p", "2", "--summands", "V3,V3", "--budget", "1",
        ]);
        assert_eq!(code, 3, "budget should exhaust: {text}");
        assert!(text.contains("budget"));
    }

    #[test]
    fn config_file_defaults_apply_and_flags_override() {
        let path = std::env::temp_dir().join(format!("modq-cli-test-{}.conf", std::process::id()));
        std::fs::write(&path, "# defaults\ndegree_bound = 4\n").unwrap();
        let config = path.to_str().unwrap();
        let v = run_json(&[
            "invariants", "--char", "5", "-p", "5", "--summands", "V2+", "--config", config,
            "--json",
        ]);
        assert_eq!(v["degree_bound"], 4);
        let v = run_json(&[
            "invariants", "--char", "5", "-p", "5", "--summands", "V2+", "--config", config,
            "--degree-bound", "6", "--json",
        ]);
        assert_eq!(v["degree_bound"], 6);
        std::fs::remove_file(&path).unwrap();
        let (code, _) = run_vec(&["invariants", "--char", "5", "-p", "5", "--summands", "V2+",
            "--config", "/nonexistent/modq.conf"]);
        assert_eq!(code, 2);
    }
}
