mod checklist;
mod plot;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dsmat::exactmat::families::{self, Family, Vertex3};
use dsmat::exactmat::scalar::parse_rational;
use dsmat::graphbridge::{mates_csv, Graph};
use dsmat::spectra::{eigenvalues_symmetric, rational_roots};
use dsmat::triangle3::Verdict3;
use dsmat::*;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "dsmat", version, about = "Spectral determination of doubly stochastic matrices")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    /// Matrix input: a JSON file path or inline JSON. Repeat for two-matrix verbs.
    #[arg(long = "in", global = true)]
    inputs: Vec<String>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = dsmat::certify::DEFAULT_BUDGET)]
    budget: usize,
    #[arg(long, global = true, default_value_t = 201)]
    grid: usize,
    #[arg(long, global = true, value_enum, default_value_t = ScopeArg::Sym)]
    scope: ScopeArg,
    #[arg(long, global = true)]
    n: Option<usize>,
    #[arg(long, global = true)]
    k: Option<usize>,
    /// Trace parameter, as an exact rational such as `1/2`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    a: Option<String>,
    /// Level parameter for the n = 3 level curves.
    #[arg(long, global = true)]
    d: Option<String>,
    #[arg(long, global = true)]
    count: Option<usize>,
}

#[derive(Subcommand)]
enum Verb {
    /// Build a named matrix.
    Construct {
        #[arg(value_enum)]
        family: FamilyArg,
        /// One-based images for `permutation` and `sym-vertex`, e.g. `[2,3,1]`.
        #[arg(long)]
        perm: Option<String>,
    },
    /// Characteristic polynomial, rational roots and numeric eigenvalues.
    Spectrum,
    /// Compare the spectra of two matrices.
    Cospectral,
    /// Decide permutation similarity of two matrices.
    Permsim,
    /// Locate a 3x3 symmetric doubly stochastic matrix among the seven segments.
    Classify3,
    /// Produce a cospectral, non permutation similar matrix.
    Mate,
    /// Decide whether a matrix is determined by its spectrum.
    Certify,
    /// What a prescribed spectrum forces on its realizations.
    Characterize {
        /// Comma separated eigenvalues, e.g. `1,0,-2/3`.
        #[arg(long, allow_hyphen_values = true)]
        spectrum: String,
    },
    /// Sample a trace slice and certify or refute every sample.
    ScanConjecture,
    /// Enumerate regular graphs and their cospectral mates.
    Graphs {
        /// Report on one graph, given in graph6.
        #[arg(long)]
        graph: Option<String>,
    },
    /// CSV or JSON data for the n = 3 pictures.
    Plotdata {
        #[arg(value_enum)]
        kind: PlotKind,
    },
    /// Run the built-in checklist of reference facts.
    #[command(name = "verify-paper")]
    Checklist,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScopeArg {
    Sym,
    Full,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Identity,
    J,
    C,
    X,
    Y,
    Z,
    Permutation,
    SymVertex,
    D,
    BlockI,
    BlockJ,
    BlockC,
}

#[derive(Clone, Copy, ValueEnum)]
enum PlotKind {
    Triangle,
    Polytope,
}

/// Failure with the exit code it maps to.
enum Failure {
    Input(String),
    Internal(String),
}

impl From<dsmat::Error> for Failure {
    fn from(e: dsmat::Error) -> Self {
        match e {
            Error::Internal(_) | Error::NoConvergence { .. } | Error::SimilarityUndecided(_) => Failure::Internal(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = std::result::Result<(String, u8), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    eprintln!("seed={} budget={}", cli.seed, cli.budget);
    match run(&cli) {
        Ok((text, code)) => {
            let written = match &cli.out {
                Some(path) => fs::write(path, &text).map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            match written {
                Ok(()) => ExitCode::from(code),
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
            }
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Internal(e)) => {
            eprintln!("internal error: {e}");
            ExitCode::from(2)
        }
    }
}

fn input_err(msg: impl Into<String>) -> Failure {
    Failure::Input(msg.into())
}

fn load_matrix(src: &str) -> std::result::Result<ExactMatrix, Failure> {
    let text = if src.trim_start().starts_with('{') {
        src.to_string()
    } else {
        fs::read_to_string(src).map_err(|e| input_err(format!("cannot read {src}: {e}")))?
    };
    Ok(ExactMatrix::from_json_str(&text)?)
}

fn matrices(cli: &Cli, count: usize) -> std::result::Result<Vec<ExactMatrix>, Failure> {
    if cli.inputs.len() != count {
        return Err(input_err(format!("expected {count} --in argument(s), got {}", cli.inputs.len())));
    }
    cli.inputs.iter().map(|s| load_matrix(s)).collect()
}

fn required<T: Copy>(v: Option<T>, flag: &str) -> std::result::Result<T, Failure> {
    v.ok_or_else(|| input_err(format!("--{flag} is required")))
}

fn rational_flag(v: &Option<String>, flag: &str) -> std::result::Result<Rational, Failure> {
    let s = v.as_deref().ok_or_else(|| input_err(format!("--{flag} is required")))?;
    Ok(parse_rational(s)?)
}

fn scope(cli: &Cli) -> Scope {
    match cli.scope {
        ScopeArg::Sym => Scope::Symmetric,
        ScopeArg::Full => Scope::Full,
    }
}

fn json_out(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn no_csv(cli: &Cli, verb: &str) -> std::result::Result<(), Failure> {
    if cli.format == Format::Csv {
        return Err(input_err(format!("{verb} has no csv output")));
    }
    Ok(())
}

fn run(cli: &Cli) -> Outcome {
    match &cli.verb {
        Verb::Construct { family, perm } => construct(cli, *family, perm.as_deref()),
        Verb::Spectrum => spectrum(cli),
        Verb::Cospectral => {
            no_csv(cli, "cospectral")?;
            let m = matrices(cli, 2)?;
            let same = cospectral(&m[0], &m[1])?;
            let v = json!({ "cospectral": same, "char_poly_a": char_poly(&m[0]), "char_poly_b": char_poly(&m[1]) });
            Ok((render(cli, &v, || format!("cospectral: {same}\n")), 0))
        }
        Verb::Permsim => {
            no_csv(cli, "permsim")?;
            let m = matrices(cli, 2)?;
            let w = are_perm_similar(&m[0], &m[1])?;
            let text = match (w.one_based(), w.invariant_report) {
                (Some(p), _) => format!("similar via {p}\n"),
                (None, Some(sep)) => format!("not similar ({sep})\n"),
                (None, None) => "not similar\n".to_string(),
            };
            Ok((render(cli, &to_value(&w), || text), 0))
        }
        Verb::Classify3 => classify3(cli),
        Verb::Mate => mate(cli),
        Verb::Certify => {
            no_csv(cli, "certify")?;
            let m = matrices(cli, 1)?;
            let v = certify(&m[0], scope(cli), cli.seed, cli.budget)?;
            let code = v.exit_code() as u8;
            let text = verdict_text(&v);
            Ok((render(cli, &to_value(&v), || text), code))
        }
        Verb::Characterize { spectrum } => {
            no_csv(cli, "characterize")?;
            let lambda = spectrum.split(',').map(|s| parse_rational(s.trim())).collect::<dsmat::Result<Vec<_>>>()?;
            let r = positive_realization_check(&lambda, cli.seed, cli.budget)?;
            let text = format!("inequality value {}\n{}\n", r.inequality_value, r.conclusion);
            Ok((render(cli, &to_value(&r), || text), 0))
        }
        Verb::ScanConjecture => scan(cli),
        Verb::Graphs { graph } => graphs(cli, graph.as_deref()),
        Verb::Plotdata { kind } => {
            let s = match kind {
                PlotKind::Triangle => plot::triangle(cli.grid, cli.format)?,
                PlotKind::Polytope => plot::polytope(cli.format),
            };
            Ok((s, 0))
        }
        Verb::Checklist => {
            let (report, ok) = checklist::run(cli.grid, cli.seed);
            Ok((report, if ok { 0 } else { 2 }))
        }
    }
}

fn render(cli: &Cli, v: &Value, text: impl FnOnce() -> String) -> String {
    match cli.format {
        Format::Text => text(),
        _ => json_out(v),
    }
}

fn matrix_output(cli: &Cli, m: &ExactMatrix) -> String {
    match cli.format {
        Format::Json => json_out(&to_value(&m.to_json())),
        Format::Text => format!("{m}\n"),
        Format::Csv => m.rows().map(|r| r.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",") + "\n").collect(),
    }
}

fn construct(cli: &Cli, family: FamilyArg, perm: Option<&str>) -> Outcome {
    let images = || -> std::result::Result<Vec<usize>, Failure> {
        Ok(dsmat::permsim::parse_permutation(perm.ok_or_else(|| input_err("--perm is required"))?)?)
    };
    let m = match family {
        FamilyArg::X => Vertex3::X.matrix(),
        FamilyArg::Y => Vertex3::Y.matrix(),
        FamilyArg::Z => Vertex3::Z.matrix(),
        FamilyArg::SymVertex => families::symmetric_vertex_form(&images()?)?,
        FamilyArg::Permutation => families::permutation_matrix(&images()?)?,
        other => {
            let n = required(cli.n, "n")?;
            let fam = match other {
                FamilyArg::Identity => Family::Identity,
                FamilyArg::J => Family::J,
                FamilyArg::C => Family::C,
                FamilyArg::D => Family::DOfTrace(rational_flag(&cli.a, "a")?),
                FamilyArg::BlockI => Family::BlockI,
                FamilyArg::BlockJ => Family::BlockJ,
                _ => Family::BlockC,
            };
            dsmat::construct(&fam, n)?
        }
    };
    Ok((matrix_output(cli, &m), 0))
}

fn spectrum(cli: &Cli) -> Outcome {
    no_csv(cli, "spectrum")?;
    let m = matrices(cli, 1)?;
    let m = &m[0];
    let cp = char_poly(m);
    let roots: Option<Vec<String>> = cp.to_rational().map(|p| {
        let mut r = rational_roots(&p);
        r.sort_by(|x, y| y.cmp(x));
        r.iter().map(|x| x.to_string()).collect()
    });
    let numeric = if m.is_symmetric() { Some(eigenvalues_symmetric(m)?) } else { None };
    let v = json!({ "n": m.n(), "char_poly": cp, "rational_roots": roots, "numeric": numeric });
    let text = format!("p(x) = {cp}\nrational roots: {}\n", roots.map(|r| r.join(", ")).unwrap_or_else(|| "n/a".into()));
    Ok((render(cli, &v, || text), 0))
}

fn classify3(cli: &Cli) -> Outcome {
    no_csv(cli, "classify3")?;
    let m = matrices(cli, 1)?;
    let c = classify(&m[0])?;
    let (segment, t) = match &c.verdict {
        Verdict3::OnSegment { segment, t } => (Some(segment.name()), Some(t.to_string())),
        Verdict3::NotDS => (None, None),
    };
    let v = json!({
        "ds": c.is_ds(),
        "segment": segment,
        "t": t,
        "trace": c.trace.to_string(),
        "slice_point": c.slice_point,
        "d": c.d.as_ref().map(|d| d.to_string()),
    });
    let text = match (segment, &t) {
        (Some(s), Some(t)) => format!("DS: on {s} at t = {t}\n"),
        _ => "not DS: a cospectral mate exists\n".to_string(),
    };
    Ok((render(cli, &v, || text), 0))
}

fn mate(cli: &Cli) -> Outcome {
    let m = matrices(cli, 1)?;
    let m = &m[0];
    let found = if m.n() == 3 && m.is_symmetric() && m.is_rational() {
        if classify(m)?.is_ds() {
            None
        } else {
            Some((mate_for(m)?, "n3-level-curve".to_string()))
        }
    } else {
        mate_search(m, scope(cli), cli.seed, cli.budget)?.witness.map(|w| (w.matrix, w.strategy))
    };
    match found {
        Some((b, strategy)) => {
            if cli.format == Format::Json {
                let v = json!({ "matrix": b.to_json(), "strategy": strategy, "char_poly": char_poly(&b) });
                Ok((json_out(&v), 0))
            } else {
                Ok((matrix_output(cli, &b), 0))
            }
        }
        None => {
            let v = json!({ "matrix": Value::Null, "strategy": Value::Null });
            Ok((render(cli, &v, || "no mate found\n".to_string()), 4))
        }
    }
}

fn verdict_text(v: &Verdict) -> String {
    let mut s = format!("{}\n", v.status);
    if let Some(c) = &v.certificate {
        s += &format!("certificate: {}\n", c.basis);
        for a in &c.also {
            s += &format!("also: {a}\n");
        }
    }
    if let Some(w) = &v.witness {
        s += &format!("witness ({}, {}):\n{}\n", w.strategy, w.separation, w.matrix);
    }
    s
}

fn scan(cli: &Cli) -> Outcome {
    let n = required(cli.n, "n")?;
    let a = rational_flag(&cli.a, "a")?;
    let r = conjecture_scan(n, &a, cli.count.unwrap_or(500), cli.seed, cli.budget)?;
    let s = match cli.format {
        Format::Json => json_out(&to_value(&r)),
        Format::Text => format!(
            "n = {n}, trace {a}: {} samples, {} on segment, {} refuted, {} unknown, {} certified off segment\n",
            r.samples,
            r.on_segment,
            r.refuted,
            r.unknown,
            r.certified_off_segment.len()
        ),
        Format::Csv => {
            let mut s = String::from("index,matrix\n");
            for (i, m) in r.counterexample_candidates().iter().enumerate() {
                s += &format!("{i},\"{}\"\n", m.to_json_string().replace('"', "\"\""));
            }
            s
        }
    };
    Ok((s, 0))
}

fn graphs(cli: &Cli, graph: Option<&str>) -> Outcome {
    if let Some(g6) = graph {
        no_csv(cli, "graphs --graph")?;
        let g = Graph::from_graph6(g6)?;
        let r = graph_ds_report(&g, cli.seed, cli.budget)?;
        let text = format!(
            "{}: {} graph mates among {} {}-regular graphs; scaled matrix {}\n",
            r.graph,
            r.graph_mates.len(),
            r.class_size,
            r.k,
            r.matrix_verdict.status
        );
        return Ok((render(cli, &to_value(&r), || text), 0));
    }
    let n = required(cli.n, "n")?;
    let k = required(cli.k, "k")?;
    let gs = enumerate_regular(n, k)?;
    let mates = cospectral_mates(n, k)?;
    let s = match cli.format {
        Format::Csv => mates_csv(n, k, &mates),
        Format::Json => json_out(&json!({ "n": n, "k": k, "count": gs.len(), "graphs": gs, "mates": mates })),
        Format::Text => {
            let mut s = format!("{} {k}-regular graphs on {n} vertices, {} cospectral pairs\n", gs.len(), mates.len());
            for p in &mates {
                s += &format!("{} {}\n", p.g, p.h);
            }
            s
        }
    };
    Ok((s, 0))
}
