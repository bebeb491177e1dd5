use std::cell::RefCell;
use std::collections::HashSet;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use bisetkit::analysis::{ext1, ext1_by_loewy};
use bisetkit::burnside::{AlgebraTable, BisetCategory};
use bisetkit::cache::Cache;
use bisetkit::error::Error;
use bisetkit::functor::nv_check;
use bisetkit::goursat::BisetBasis;
use bisetkit::groups::{parse_group, recognize, GroupError, PermGroup, DEFAULT_BOUND};
use bisetkit::report::{self, a5_report, group_report, label_json, Context, Rational};
use bisetkit::sigma::{Sigma, SimpleLabel};
use bisetkit::verify::acceptance::{run_all, Corpus};

const GRAMMAR: &str = "groups: 1, C<n>, S<n>, A<n>, D<n> (dihedral of order n), V4, Q8, products with x (C2xC2), or gens:(1 2)(3 4);(1 2 3)";

#[derive(Parser)]
#[command(name = "bisetkit", version, about = "Exact double Burnside algebras and biset functors", after_help = GRAMMAR)]
struct Cli {
    /// Print JSON instead of a table.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Cache root (defaults to $BISETKIT_CACHE).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Neither read nor write the cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Largest group order that may be enumerated.
    #[arg(long, global = true, default_value_t = DEFAULT_BOUND)]
    bound: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Conjugacy classes of subgroups.
    Subgroups { group: String },
    /// Sections P/K up to conjugacy.
    Sections { group: String },
    /// Transitive bisets of B(G, H).
    Basis { g: String, h: String },
    /// Product of basis element i of B(G, H) with basis element j of B(H, K).
    Compose { g: String, h: String, k: String, i: String, j: String },
    /// Structure constants of kB(G, G).
    Table { group: String },
    /// Essential quotient Hom-bar(H, K) for subquotients of G.
    Hombar { group: String, h: String, k: String },
    /// Standard module Δ_{H,V}(G).
    Delta { group: String, h: String, v: String },
    /// Simple module S_{H,V}(G).
    Simple { group: String, h: String, v: String },
    /// dim Δ(G) and dim S(G) for every label.
    Vanishing { group: String },
    /// Whether no simple functor vanishes at G.
    Nv { group: String },
    /// Decomposition matrix [Δ : S].
    Decomp { group: String },
    /// Cartan matrix [P : S].
    Cartan { group: String },
    /// Projective indecomposable module of a label.
    Pim { group: String, h: String, v: String },
    /// dim Ext^1(S, T).
    Ext1 { group: String, h1: String, v1: String, h2: String, v2: String },
    /// Quasi-heredity certificate.
    Qh { group: String },
    /// Verification of the A5 example.
    #[command(name = "a5-report")]
    A5Report,
    /// Full acceptance suite.
    Selftest,
}

enum Failure {
    Usage(String),
    Assertion(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Assertion(m) => Failure::Assertion(m),
            Error::Group(g @ GroupError::Parse(_)) => Failure::Usage(format!("{g}\n{GRAMMAR}")),
            Error::InvalidData(m) | Error::SourceTargetMismatch(m) => Failure::Usage(m),
            e => Failure::Other(e.to_string()),
        }
    }
}

impl From<GroupError> for Failure {
    fn from(e: GroupError) -> Self {
        Failure::from(Error::from(e))
    }
}

type Outcome = std::result::Result<Output, Failure>;

/// A JSON document with its human rendering.
struct Output {
    json: Value,
    text: String,
}

struct App {
    bound: usize,
    cache: Cache,
    loaded: RefCell<HashSet<String>>,
}

impl App {
    fn group(&self, text: &str) -> std::result::Result<Arc<PermGroup>, Failure> {
        parse_group(text, self.bound).map(Arc::new).map_err(|e| match e {
            GroupError::BoundExceeded { .. } => Failure::Usage(format!("{text}: {e}")),
            e => Failure::from(e),
        })
    }

    fn table_key(&self, text: &str) -> Vec<String> {
        vec![text.trim().to_string(), self.bound.to_string()]
    }

    fn sigma(&self, text: &str) -> std::result::Result<Sigma, Failure> {
        let sigma = Sigma::new(text, self.group(text)?)?;
        if let Some(v) = self.cache.get("table", &self.table_key(text)) {
            match AlgebraTable::from_json(&v) {
                Ok(t) if t.group == text => {
                    sigma.set_algebra(t);
                    self.loaded.borrow_mut().insert(text.to_string());
                }
                _ => eprintln!("warning: cached table for {text} is unusable; recomputing"),
            }
        }
        Ok(sigma)
    }

    /// Stores a freshly computed algebra table.
    fn persist(&self, sigma: &Sigma) -> std::result::Result<(), Failure> {
        if let Some(t) = sigma.algebra_if_ready() {
            let key = self.table_key(&sigma.group_name);
            if self.cache.dir().is_some() && !self.loaded.borrow().contains(&sigma.group_name) {
                self.cache.put("table", &key, &t.to_json())?;
            }
        }
        Ok(())
    }
}

fn label(sigma: &Sigma, h: &str, v: &str) -> std::result::Result<SimpleLabel, Failure> {
    sigma.label_by_names(h, v).ok_or_else(|| {
        let known: Vec<String> = sigma
            .labels()
            .into_iter()
            .map(|l| {
                let (a, b) = sigma.label_name(l);
                format!("{a} {b}")
            })
            .collect();
        Failure::Usage(format!("no label ({h}, {v}) over {}; labels: {}", sigma.group_name, known.join(", ")))
    })
}

fn class(sigma: &Sigma, name: &str) -> std::result::Result<usize, Failure> {
    sigma.class_by_name(name).ok_or_else(|| {
        let known: Vec<&str> = sigma.classes.iter().map(|c| c.name.as_str()).collect();
        Failure::Usage(format!("{name} is not a subquotient of {}; subquotients: {}", sigma.group_name, known.join(", ")))
    })
}

fn label_text(sigma: &Sigma, l: SimpleLabel) -> String {
    let (h, v) = sigma.label_name(l);
    format!("({h}, {v})")
}

fn matrix_text(rows: &[String], cols: &[String], entries: &[Vec<u64>]) -> String {
    let w = rows.iter().map(String::len).max().unwrap_or(0);
    let mut out = format!("{:w$}  {}\n", "", cols.join(" "));
    for (r, row) in rows.iter().zip(entries) {
        let cells: Vec<String> = row
            .iter()
            .zip(cols)
            .map(|(x, c)| format!("{x:>width$}", width = c.len()))
            .collect();
        out += &format!("{r:w$}  {}\n", cells.join(" "));
    }
    out
}

fn group_name(g: &PermGroup) -> String {
    recognize(g).unwrap_or_else(|| format!("order {}", g.order()))
}

fn subgroups(app: &App, text: &str) -> Outcome {
    let g = app.group(text)?;
    let lat = g.lattice();
    let mut rows = Vec::new();
    let mut lines = vec![format!("{} subgroup classes of {text} (order {})", lat.classes.len(), g.order())];
    for (i, c) in lat.classes.iter().enumerate() {
        let sub = &lat.subgroups[c.rep];
        let (h, _) = g.subgroup_as_group(&sub.elements);
        let name = group_name(&h);
        lines.push(format!("{i:>3}  order {:>3}  conjugates {:>3}  {name}", sub.order(), c.members.len()));
        rows.push(json!({"order": sub.order(), "conjugates": c.members.len(), "name": name, "elements": sub.elements.to_vec()}));
    }
    Ok(Output {
        json: json!({"group": text, "order": g.order(), "classes": rows}),
        text: lines.join("\n"),
    })
}

fn sections(app: &App, text: &str) -> Outcome {
    let g = app.group(text)?;
    let lat = g.lattice();
    let mut rows = Vec::new();
    let mut lines = vec![format!("{} section classes of {text}", lat.sections.len())];
    for (i, s) in lat.sections.iter().enumerate() {
        let name = group_name(&s.quotient);
        let (p, k) = (lat.subgroups[s.top].order(), lat.subgroups[s.bottom].order());
        lines.push(format!("{i:>3}  |P| {p:>3}  |K| {k:>3}  P/K = {name}"));
        rows.push(json!({"top_order": p, "bottom_order": k, "quotient": name}));
    }
    Ok(Output {
        json: json!({"group": text, "sections": rows}),
        text: lines.join("\n"),
    })
}

fn basis(app: &App, g: &str, h: &str) -> Outcome {
    let b = BisetBasis::new(app.group(g)?, app.group(h)?)?;
    let labels: Vec<Value> = b.labels.iter().map(|l| json!({"key": l.key, "order": l.order})).collect();
    let mut lines = vec![format!("dim B({g}, {h}) = {}", b.dim())];
    for (i, l) in b.labels.iter().enumerate() {
        lines.push(format!("{i:>4}  |L| {:>4}  {}", l.order, l.key));
    }
    Ok(Output {
        json: json!({"target": g, "source": h, "dim": b.dim(), "labels": labels}),
        text: lines.join("\n"),
    })
}

fn basis_index(b: &BisetBasis, s: &str) -> std::result::Result<usize, Failure> {
    if let Ok(i) = s.parse::<usize>() {
        if i < b.dim() {
            return Ok(i);
        }
    }
    b.index_of_key(s)
        .ok_or_else(|| Failure::Usage(format!("{s} is neither a basis index below {} nor a label key", b.dim())))
}

fn compose(app: &App, g: &str, h: &str, k: &str, i: &str, j: &str) -> Outcome {
    let cat = BisetCategory::new(vec![(g.into(), app.group(g)?), (h.into(), app.group(h)?), (k.into(), app.group(k)?)]);
    let (left, right, out) = (cat.basis(0, 1)?, cat.basis(1, 2)?, cat.basis(0, 2)?);
    let a = cat.basis_element(0, 1, basis_index(&left, i)?);
    let b = cat.basis_element(1, 2, basis_index(&right, j)?);
    let c = cat.compose(&a, &b)?;
    let terms: Vec<Value> = c
        .coeffs
        .iter()
        .map(|(&t, x)| json!({"key": out.labels[t].key, "coefficient": Rational(x.clone())}))
        .collect();
    let text = c
        .coeffs
        .iter()
        .map(|(&t, x)| format!("{x} [{}]", out.labels[t].key))
        .collect::<Vec<_>>()
        .join(" + ");
    Ok(Output {
        json: json!({"target": g, "source": k, "terms": terms}),
        text: if text.is_empty() { "0".into() } else { text },
    })
}

fn table(app: &App, text: &str) -> Outcome {
    let sigma = app.sigma(text)?;
    let t = sigma.algebra()?;
    app.persist(&sigma)?;
    let nonzero = t.products.iter().filter(|p| !p.is_empty()).count();
    Ok(Output {
        json: t.to_json(),
        text: format!("kB({text}, {text}): dimension {}, {nonzero} nonzero basis products", t.dim()),
    })
}

fn hombar(app: &App, text: &str, h: &str, k: &str) -> Outcome {
    let sigma = app.sigma(text)?;
    let (hi, ki) = (class(&sigma, h)?, class(&sigma, k)?);
    let hb = sigma.hombar(hi, ki)?;
    let basis = sigma.cat.basis(ki, hi)?;
    let reps: Vec<&str> = hb.reps.iter().map(|&r| basis.labels[r].key.as_str()).collect();
    Ok(Output {
        json: json!({
            "group": text, "source": h, "target": k,
            "ambient_dim": hb.ambient_dim, "ideal_dim": hb.ideal.dim(), "dim": hb.dim(), "representatives": reps,
        }),
        text: format!(
            "dim Hom-bar({h}, {k}) = {} (B({k}, {h}) has dim {}, ideal dim {})\nrepresentatives: {}",
            hb.dim(),
            hb.ambient_dim,
            hb.ideal.dim(),
            reps.join(", ")
        ),
    })
}

fn delta_or_simple(app: &App, text: &str, h: &str, v: &str, simple: bool) -> Outcome {
    let sigma = app.sigma(text)?;
    let l = label(&sigma, h, v)?;
    let e = sigma.evaluation(l)?;
    let (dd, ds) = (e.delta.module.dim, e.simple.module.dim);
    let out = if simple {
        let cx = Context::new(Arc::new(sigma))?;
        let end_dim = cx.analysis.catalog_index(l).map(|i| cx.analysis.catalog[i].end_dim);
        app.persist(&cx.sigma)?;
        Output {
            json: json!({"group": text, "label": label_json(&cx.sigma, l), "dim": ds, "kernel_dim": dd - ds, "end_dim": end_dim}),
            text: format!("dim S({h}, {v})({text}) = {ds} (Δ has dim {dd})"),
        }
    } else {
        let cx = Context::new(Arc::new(sigma))?;
        let factors = cx.delta_factors(l)?;
        let fj: Vec<Value> = factors
            .iter()
            .map(|&(m, x)| json!({"label": label_json(&cx.sigma, m), "multiplicity": x}))
            .collect();
        app.persist(&cx.sigma)?;
        Output {
            json: json!({"group": text, "label": label_json(&cx.sigma, l), "dim": dd, "composition_factors": fj}),
            text: format!("dim Δ({h}, {v})({text}) = {dd}; factors: {}", cx.factors_text(&factors)),
        }
    };
    Ok(out)
}

fn vanishing(app: &App, text: &str) -> Outcome {
    let sigma = app.sigma(text)?;
    let rows = report::vanishing_json(&sigma)?;
    let mut lines = vec![format!("{:<16} {:>6} {:>6}", "label", "dim Δ", "dim S")];
    for r in &rows {
        lines.push(format!("{:<16} {:>6} {:>6}", format!("({}, {})", r.label.h, r.label.v), r.dim_delta, r.dim_simple));
    }
    app.persist(&sigma)?;
    Ok(Output {
        json: json!({"group": text, "vanishing_table": rows}),
        text: lines.join("\n"),
    })
}

fn nv(app: &App, text: &str) -> Outcome {
    let sigma = app.sigma(text)?;
    let (ok, offenders) = nv_check(&sigma)?;
    let names: Vec<String> = offenders.iter().map(|&l| label_text(&sigma, l)).collect();
    let with_delta: Vec<String> = offenders
        .iter()
        .filter(|&&l| sigma.evaluation(l).map(|e| e.delta.module.dim > 0).unwrap_or(false))
        .map(|&l| label_text(&sigma, l))
        .collect();
    app.persist(&sigma)?;
    let text_out = if ok {
        "true".to_string()
    } else {
        let mut line = format!("false; offenders: {}", names.join(", "));
        if !with_delta.is_empty() {
            line.push_str(&format!(" (with Δ(G) ≠ 0: {})", with_delta.join(", ")));
        }
        line
    };
    Ok(Output {
        json: json!({
            "group": text, "nv": ok,
            "offenders": offenders.iter().map(|&l| label_json(&sigma, l)).collect::<Vec<_>>(),
            "offenders_with_nonzero_delta": with_delta,
        }),
        text: text_out,
    })
}

fn context(app: &App, text: &str) -> std::result::Result<Context, Failure> {
    let cx = Context::new(Arc::new(app.sigma(text)?))?;
    app.persist(&cx.sigma)?;
    Ok(cx)
}

fn names(m: &[report::LabelJson]) -> Vec<String> {
    m.iter().map(|l| format!("({}, {})", l.h, l.v)).collect()
}

fn decomp(app: &App, text: &str) -> Outcome {
    let cx = context(app, text)?;
    let m = report::decomposition_json(&cx.sigma, &cx.analysis)?;
    let t = matrix_text(&names(&m.rows), &names(&m.cols), &m.entries);
    Ok(Output {
        json: json!({"group": text, "decomposition_matrix": m}),
        text: format!("rows Δ, columns S\n{t}"),
    })
}

fn cartan(app: &App, text: &str) -> Outcome {
    let cx = context(app, text)?;
    let c = report::cartan_json(&cx.sigma, &cx.analysis)?;
    let labels = names(&c.labels);
    let t = matrix_text(&labels, &labels, &c.entries);
    Ok(Output {
        text: format!("rows P, columns S\n{t}determinant {}", c.determinant.0),
        json: json!({"group": text, "cartan_matrix": c}),
    })
}

fn pim(app: &App, text: &str, h: &str, v: &str) -> Outcome {
    let cx = context(app, text)?;
    let l = label(&cx.sigma, h, v)?;
    let p = cx
        .analysis
        .pim(l)
        .ok_or_else(|| Failure::Usage(format!("S({h}, {v})({text}) = 0 has no projective cover")))?;
    let catalog: Vec<String> = cx.analysis.catalog.iter().map(|c| label_text(&cx.sigma, c.label)).collect();
    let layer_text: Vec<String> = p
        .layers
        .iter()
        .map(|layer| {
            layer
                .iter()
                .zip(&catalog)
                .filter(|(x, _)| **x > 0)
                .map(|(x, n)| if *x == 1 { format!("S{n}") } else { format!("{x} S{n}") })
                .collect::<Vec<_>>()
                .join(" + ")
        })
        .collect();
    let layers_json: Vec<Value> = p
        .layers
        .iter()
        .map(|layer| {
            Value::Array(
                layer
                    .iter()
                    .zip(&cx.analysis.catalog)
                    .filter(|(x, _)| **x > 0)
                    .map(|(x, c)| json!({"label": label_json(&cx.sigma, c.label), "multiplicity": x}))
                    .collect(),
            )
        })
        .collect();
    let idempotent: Vec<Rational> = p.idempotent.iter().cloned().map(Rational).collect();
    Ok(Output {
        json: json!({
            "group": text, "label": label_json(&cx.sigma, l), "dim": p.dim(),
            "loewy_dims": p.loewy, "layers": layers_json, "idempotent": idempotent,
        }),
        text: format!(
            "dim P({h}, {v}) = {}; Loewy layers {:?}\n{}",
            p.dim(),
            p.loewy,
            layer_text
                .iter()
                .enumerate()
                .map(|(i, t)| format!("  layer {i}: {t}"))
                .collect::<Vec<_>>()
                .join("\n")
        ),
    })
}

fn ext1_cmd(app: &App, text: &str, s: (&str, &str), t: (&str, &str)) -> Outcome {
    let cx = context(app, text)?;
    let (ls, lt) = (label(&cx.sigma, s.0, s.1)?, label(&cx.sigma, t.0, t.1)?);
    let e = ext1(&cx.analysis, ls, lt)?;
    let check = ext1_by_loewy(&cx.analysis, ls, lt)?;
    if e != check {
        return Err(Failure::Assertion(format!("cocycles give {e}, radical layers give {check}")));
    }
    Ok(Output {
        json: json!({"group": text, "s": label_json(&cx.sigma, ls), "t": label_json(&cx.sigma, lt), "ext1": e}),
        text: format!("dim Ext^1(S({}, {}), S({}, {})) = {e}", s.0, s.1, t.0, t.1),
    })
}

fn qh(app: &App, text: &str) -> Outcome {
    let sigma = Arc::new(app.sigma(text)?);
    let r = group_report(&sigma)?;
    app.persist(&sigma)?;
    let mut lines = vec![format!("{text}: {}", if r.qh.verdict { "quasi-hereditary" } else { "not certified" })];
    for c in &r.qh.checks {
        lines.push(format!("  [{}] {}", if c.passed { "pass" } else { "fail" }, c.name));
        for w in &c.witnesses {
            lines.push(format!("         {w}"));
        }
    }
    if r.qh.checks.iter().any(|c| c.name == "no_self_extensions" && !c.passed) {
        lines.push("  infinite global dimension witness: Ext^1(S, S) ≠ 0".into());
    }
    Ok(Output {
        json: serde_json::to_value(&r).expect("serializable"),
        text: lines.join("\n"),
    })
}

fn a5(app: &App) -> Outcome {
    let cx4 = context(app, "A4")?;
    let cx5 = context(app, "A5")?;
    let r = a5_report(&cx4, &cx5)?;
    let mut lines = Vec::new();
    for f in &r.facts {
        lines.push(format!("[{}] {} ({})", if f.passed { "PASS" } else { "FAIL" }, f.name, f.detail));
    }
    for n in &r.notes {
        lines.push(format!("[note] {}: {} ({})", n.name, n.passed, n.detail));
    }
    lines.push(r.conclusion.clone());
    let json = serde_json::to_value(&r).expect("serializable");
    if let Some(f) = r.first_failure() {
        return Err(Failure::Assertion(format!("{}\nfirst mismatch: {}: {}", lines.join("\n"), f.name, f.detail)));
    }
    Ok(Output { json, text: lines.join("\n") })
}

fn selftest(app: &App, json_mode: bool) -> Outcome {
    let corpus = Corpus::new(app.bound);
    let results = run_all(&corpus, |r| {
        if !json_mode {
            println!("{}", r.line());
        }
    });
    let passed = results.iter().filter(|r| r.passed).count();
    let json = json!({
        "criteria": results.iter().map(|r| json!({"number": r.number, "title": r.title, "passed": r.passed, "detail": r.detail})).collect::<Vec<_>>(),
        "passed": passed,
    });
    let summary = format!("{passed}/{} criteria passed", results.len());
    if passed == results.len() {
        Ok(Output { json, text: summary })
    } else if json_mode {
        println!("{}", serde_json::to_string_pretty(&json).expect("json"));
        Err(Failure::Assertion(summary))
    } else {
        Err(Failure::Assertion(summary))
    }
}

fn run(cli: &Cli, app: &App) -> Outcome {
    match &cli.command {
        Command::Subgroups { group } => subgroups(app, group),
        Command::Sections { group } => sections(app, group),
        Command::Basis { g, h } => basis(app, g, h),
        Command::Compose { g, h, k, i, j } => compose(app, g, h, k, i, j),
        Command::Table { group } => table(app, group),
        Command::Hombar { group, h, k } => hombar(app, group, h, k),
        Command::Delta { group, h, v } => delta_or_simple(app, group, h, v, false),
        Command::Simple { group, h, v } => delta_or_simple(app, group, h, v, true),
        Command::Vanishing { group } => vanishing(app, group),
        Command::Nv { group } => nv(app, group),
        Command::Decomp { group } => decomp(app, group),
        Command::Cartan { group } => cartan(app, group),
        Command::Pim { group, h, v } => pim(app, group, h, v),
        Command::Ext1 { group, h1, v1, h2, v2 } => ext1_cmd(app, group, (h1, v1), (h2, v2)),
        Command::Qh { group } => qh(app, group),
        Command::A5Report => a5(app),
        Command::Selftest => selftest(app, cli.json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            eprintln!("warning: {e}");
        }
    }
    let app = App {
        bound: cli.bound,
        cache: Cache::configure(cli.cache_dir.clone(), cli.no_cache),
        loaded: RefCell::new(HashSet::new()),
    };
    match run(&cli, &app) {
        Ok(out) => {
            let text = if cli.json {
                serde_json::to_string_pretty(&out.json).expect("json")
            } else {
                out.text
            };
            // A closed pipe is not an error for a reader such as `head`.
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Assertion(m)) => {
            eprintln!("assertion failed: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Other(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
