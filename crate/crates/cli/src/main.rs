//! `effectlab`: check, build and enumerate finite order-algebraic structures.
//!
//! Exit codes: 0 pass, 1 law violation or classification failure (report on
//! stdout), 2 malformed input or usage error, 3 budget refusal.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use effectlab::algebra::check_action_laws;
use effectlab::enumerate::{enumerate_orthomodular_posets, estimate_ea_candidates};
use effectlab::interval::no_lub_witness;
use effectlab::io::{export_dot, parse, serialize, Document};
use effectlab::*;

#[derive(Parser)]
#[command(name = "effectlab", version, about = "Finite posets, orthomodular posets, effect algebras and effect monoids")]
struct Cli {
    /// Worker threads for enumeration (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Largest structure size enumeration and census accept.
    #[arg(long, global = true, default_value_t = Budget::default().max_enumeration_size)]
    budget: usize,
    /// Largest Kalmbach extension that will be built.
    #[arg(long, global = true, default_value_t = Budget::default().max_kalmbach_elements)]
    kalmbach_cap: u128,
    /// Largest candidate count a uniqueness search may visit.
    #[arg(long, global = true, default_value_t = Budget::default().max_search)]
    search_cap: u128,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse every document in FILE and check its laws.
    Validate { file: PathBuf },
    /// Build the Kalmbach extension of the order in FILE.
    Kalmbach {
        file: PathBuf,
        /// Also write the Hasse diagram as DOT.
        #[arg(long, value_name = "OUT")]
        dot: Option<PathBuf>,
    },
    /// Check the orthomodular poset laws.
    CheckOmp { file: PathBuf },
    /// Check the effect algebra axioms.
    CheckEa { file: PathBuf },
    /// Check the effect monoid axioms.
    CheckEm { file: PathBuf },
    /// Tabulate the action of the Kalmbach extension on an effect algebra and check its laws.
    Action { file: PathBuf },
    /// Extend a monotone map P → A to the orthomodular morphism K(P) → A.
    Factorize { p: PathBuf, a: PathBuf, map: PathBuf },
    /// Classify an effect monoid, or split it along one idempotent.
    Decompose {
        file: PathBuf,
        /// Label of the idempotent to split along.
        #[arg(long)]
        idempotent: Option<String>,
    },
    /// Print every structure of the given kind up to isomorphism.
    Enumerate {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        max: usize,
    },
    /// Count effect algebras and monoids by size and classify the monoids.
    Census {
        #[arg(long)]
        max: usize,
        /// Write the census as JSON.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Print a strictly decreasing sequence of upper bounds of the chains Sₙ.
    Counterexample {
        #[arg(long)]
        steps: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Ea,
    Em,
    Poset,
    Omp,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Lib(#[from] Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Input { path: PathBuf, source: Error },
}

/// What a command concluded, once it ran to completion.
enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    fn from_passed(passed: bool) -> Self {
        if passed {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

type Outcome = Result<Verdict, CliError>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let budget = Budget {
        max_enumeration_size: cli.budget,
        max_kalmbach_elements: cli.kalmbach_cap,
        max_search: cli.search_cap,
    };
    match run(cli.command, &budget) {
        Ok(Verdict::Pass) => ExitCode::SUCCESS,
        Ok(Verdict::Fail) => ExitCode::from(1),
        Err(e) => ExitCode::from(report_error(e)),
    }
}

fn report_error(e: CliError) -> u8 {
    let lib = match &e {
        CliError::Lib(err) | CliError::Input { source: err, .. } => Some(err),
        CliError::Io { .. } => None,
    };
    match lib {
        Some(Error::LawViolation(report)) => {
            print!("{report}");
            1
        }
        Some(Error::Budget { .. }) => {
            eprintln!("error: {e}");
            3
        }
        _ => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn run(command: Command, budget: &Budget) -> Outcome {
    match command {
        Command::Validate { file } => validate(&file),
        Command::Kalmbach { file, dot } => kalmbach(&file, dot.as_deref(), budget),
        Command::CheckOmp { file } => check_each(&file, |doc| match doc {
            Document::Omp { name, omp } => Some(check_omp(omp).with_structure(name.clone())),
            _ => None,
        }),
        Command::CheckEa { file } => check_each(&file, |doc| {
            let (name, ea) = ea_of(doc)?;
            Some(check_effect_algebra(ea).with_structure(name))
        }),
        Command::CheckEm { file } => check_each(&file, |doc| match doc {
            Document::EffectMonoid { name, monoid } => {
                Some(check_effect_monoid(monoid).with_structure(name.clone()))
            }
            _ => None,
        }),
        Command::Action { file } => action(&file, budget),
        Command::Factorize { p, a, map } => factorize(&p, &a, &map, budget),
        Command::Decompose { file, idempotent } => decompose(&file, idempotent.as_deref()),
        Command::Enumerate { kind, max } => enumerate(kind, max, budget),
        Command::Census { max, out } => run_census(max, out.as_deref(), budget),
        Command::Counterexample { steps } => counterexample(steps),
    }
}

fn read_docs(path: &Path) -> Result<Vec<Document>, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let docs = parse(&text).map_err(|source| CliError::Input {
        path: path.to_path_buf(),
        source,
    })?;
    if docs.is_empty() {
        return Err(malformed(path, "no documents"));
    }
    Ok(docs)
}

fn malformed(path: &Path, msg: impl Into<String>) -> CliError {
    CliError::Input {
        path: path.to_path_buf(),
        source: Error::Malformed(msg.into()),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn ea_of(doc: &Document) -> Option<(String, &FinEffectAlgebra)> {
    match doc {
        Document::EffectAlgebra { name, ea } => Some((name.clone(), ea)),
        Document::EffectMonoid { name, monoid } => Some((name.clone(), monoid.ea())),
        _ => None,
    }
}

/// The bounded order underlying any structure document.
fn order_of(doc: &Document) -> Result<Option<Arc<FinBoundedPoset>>, Error> {
    Ok(match doc {
        Document::Poset { poset, .. } => Some(Arc::new(poset.clone())),
        Document::Omp { omp, .. } => Some(omp.poset().clone()),
        Document::EffectAlgebra { ea, .. } => Some(induced_order(ea)?),
        Document::EffectMonoid { monoid, .. } => Some(induced_order(monoid.ea())?),
        Document::Map { .. } | Document::RChain { .. } => None,
    })
}

fn first_with<T>(
    path: &Path,
    docs: &[Document],
    what: &str,
    pick: impl Fn(&Document) -> Option<T>,
) -> Result<T, CliError> {
    docs.iter()
        .find_map(pick)
        .ok_or_else(|| malformed(path, format!("no {what} document")))
}

/// Runs `check` on every applicable document; fails if none applies.
fn check_each(path: &Path, check: impl Fn(&Document) -> Option<Report>) -> Outcome {
    let docs = read_docs(path)?;
    let reports: Vec<Report> = docs.iter().filter_map(check).collect();
    if reports.is_empty() {
        return Err(malformed(path, "no document of the checked kind"));
    }
    for r in &reports {
        print!("{r}");
    }
    Ok(Verdict::from_passed(reports.iter().all(Report::passed)))
}

fn validate(path: &Path) -> Outcome {
    let docs = read_docs(path)?;
    let by_name: HashMap<&str, &Document> = docs.iter().map(|d| (d.name(), d)).collect();
    let mut passed = true;
    for doc in &docs {
        let report = match doc {
            Document::Poset { name, .. } | Document::RChain { name, .. } => Report::new(name.clone()),
            Document::Omp { name, omp } => check_omp(omp).with_structure(name.clone()),
            Document::EffectAlgebra { name, ea } => check_effect_algebra(ea).with_structure(name.clone()),
            Document::EffectMonoid { name, monoid } => {
                check_effect_monoid(monoid).with_structure(name.clone())
            }
            Document::Map { name, from, to, pairs } => {
                let lookup = |n: &str| {
                    by_name
                        .get(n)
                        .copied()
                        .ok_or_else(|| malformed(path, format!("map `{name}` refers to unknown `{n}`")))
                };
                let (src, tgt) = (lookup(from)?, lookup(to)?);
                check_map_doc(path, name, src, tgt, pairs)?
            }
        };
        passed &= report.passed();
        print!("{report}");
    }
    Ok(Verdict::from_passed(passed))
}

fn resolve_map(
    path: &Path,
    name: &str,
    source: Arc<FinBoundedPoset>,
    target: Arc<FinBoundedPoset>,
    pairs: &[(String, String)],
) -> Result<PosetMap, CliError> {
    let mut assignment = vec![None; source.size()];
    for (x, y) in pairs {
        let xi = source
            .find(x)
            .ok_or_else(|| malformed(path, format!("map `{name}`: `{x}` is not in the source")))?;
        let yi = target
            .find(y)
            .ok_or_else(|| malformed(path, format!("map `{name}`: `{y}` is not in the target")))?;
        assignment[xi] = Some(yi);
    }
    let assignment = assignment
        .into_iter()
        .enumerate()
        .map(|(x, y)| {
            y.ok_or_else(|| malformed(path, format!("map `{name}` does not send `{}`", source.label(x))))
        })
        .collect::<Result<Vec<_>, _>>()?;
    PosetMap::new(source, target, assignment).map_err(|source| CliError::Input {
        path: path.to_path_buf(),
        source,
    })
}

fn check_map_doc(
    path: &Path,
    name: &str,
    src: &Document,
    tgt: &Document,
    pairs: &[(String, String)],
) -> Result<Report, CliError> {
    let (Some(p), Some(q)) = (order_of(src)?, order_of(tgt)?) else {
        return Err(malformed(path, format!("map `{name}` must join two ordered structures")));
    };
    let f = resolve_map(path, name, p, q, pairs)?;
    let mut report = check_poset_map(&f).with_structure(name);
    if let (Document::Omp { omp: a, .. }, Document::Omp { omp: b, .. }) = (src, tgt) {
        report.absorb(check_omp_morphism(&f, a, b)?);
    }
    if let (Some((_, a)), Some((_, b))) = (ea_of(src), ea_of(tgt)) {
        let hom = EaHom::new(Arc::new(a.clone()), Arc::new(b.clone()), f.assignment().to_vec())?;
        report.absorb(check_ea_hom(&hom));
    }
    Ok(report)
}

fn kalmbach(path: &Path, dot: Option<&Path>, budget: &Budget) -> Outcome {
    let docs = read_docs(path)?;
    let (name, p) = first_with(path, &docs, "ordered", |d| {
        order_of(d).ok().flatten().map(|p| (d.name().to_string(), p))
    })?;
    let k = kalmbach_extension(&p, budget)?;
    let kname = format!("K({name})");
    print!(
        "{}",
        serialize(&Document::Omp {
            name: kname.clone(),
            omp: k.omp().clone(),
        })
    );
    if let Some(out) = dot {
        write_file(out, &export_dot(&kname, k.omp()))?;
    }
    let report = check_omp(k.omp()).with_structure(kname);
    print!("{report}");
    Ok(Verdict::from_passed(report.passed()))
}

fn action(path: &Path, budget: &Budget) -> Outcome {
    let docs = read_docs(path)?;
    let (name, ea) = first_with(path, &docs, "effect algebra", |d| {
        ea_of(d).map(|(name, ea)| (name, ea.clone()))
    })?;
    let ea = &ea;
    let axioms = check_effect_algebra(ea).with_structure(name.clone());
    if !axioms.passed() {
        print!("{axioms}");
        return Ok(Verdict::Fail);
    }
    let k = kalmbach_extension(&induced_order(ea)?, budget)?;
    let act = algebra_action(ea, &k)?;
    for c in k.poset().elements() {
        println!("act {} {}", k.poset().label(c), ea.label(act.apply(c)));
    }
    let kk = match kalmbach_extension(k.poset(), budget) {
        Ok(kk) => Some(kk),
        Err(Error::Budget { required, .. }) => {
            eprintln!("note: K(K({name})) has {required} elements; multiplication law skipped");
            None
        }
        Err(e) => return Err(e.into()),
    };
    let report = check_action_laws(ea, &k, kk.as_ref())?.with_structure(format!("act({name})"));
    print!("{report}");
    Ok(Verdict::from_passed(report.passed()))
}

fn factorize(p_path: &Path, a_path: &Path, map_path: &Path, budget: &Budget) -> Outcome {
    let p_docs = read_docs(p_path)?;
    let p = first_with(p_path, &p_docs, "ordered", |d| order_of(d).ok().flatten())?;
    let a_docs = read_docs(a_path)?;
    let a = first_with(a_path, &a_docs, "omp", |d| match d {
        Document::Omp { omp, .. } => Some(omp.clone()),
        _ => None,
    })?;
    let omp_report = check_omp(&a);
    if !omp_report.passed() {
        print!("{omp_report}");
        return Ok(Verdict::Fail);
    }
    let map_docs = read_docs(map_path)?;
    let (name, pairs) = first_with(map_path, &map_docs, "map", |d| match d {
        Document::Map { name, pairs, .. } => Some((name.clone(), pairs.clone())),
        _ => None,
    })?;
    let f = resolve_map(map_path, &name, p, a.poset().clone(), &pairs)?;
    let monotone = check_poset_map(&f).with_structure(name.clone());
    if !monotone.passed() {
        print!("{monotone}");
        return Ok(Verdict::Fail);
    }
    let fac = free_factorization(&f, &a, budget)?;
    let kp = fac.kalmbach.poset();
    for c in kp.elements() {
        println!("h {} {}", kp.label(c), a.label(fac.h.apply(c)));
    }
    print!("{}", fac.report.clone().with_structure(format!("h({name})")));
    match &fac.uniqueness {
        Uniqueness::Certified { searched } => {
            println!("unique searched {searched}");
            Ok(Verdict::from_passed(fac.report.passed()))
        }
        Uniqueness::Violated { alternative } => {
            let alt: Vec<_> = alternative.iter().map(|&y| a.label(y)).collect();
            println!("not-unique alternative {}", alt.join(" "));
            Ok(Verdict::Fail)
        }
        Uniqueness::NotCertified { candidates } => Err(Error::Budget {
            what: "uniqueness search".into(),
            required: *candidates,
            limit: budget.max_search,
        }
        .into()),
    }
}

fn decompose(path: &Path, idempotent: Option<&str>) -> Outcome {
    let docs = read_docs(path)?;
    let (name, m) = first_with(path, &docs, "effect monoid", |d| match d {
        Document::EffectMonoid { name, monoid } => Some((name.clone(), monoid.clone())),
        _ => None,
    })?;
    let Some(label) = idempotent else {
        return Ok(match classify_finite_em(&m) {
            Ok(c) => {
                println!("class {name} {}", c.class);
                for s in &c.steps {
                    println!(
                        "split {} at {} into {} x {}",
                        s.factor_size, s.idempotent, s.left_size, s.right_size
                    );
                }
                Verdict::Pass
            }
            Err(failure) => {
                println!("{failure}");
                Verdict::Fail
            }
        });
    };
    let p = m
        .ea()
        .find(label)
        .ok_or_else(|| malformed(path, format!("`{label}` is not an element of `{name}`")))?;
    let d = corner_decompose(&m, p).map_err(|source| CliError::Input {
        path: path.to_path_buf(),
        source,
    })?;
    let perp = m.label(m.ea().perp_id(p)).to_string();
    for (part, monoid) in [(label, &d.left), (perp.as_str(), &d.right)] {
        print!(
            "{}",
            serialize(&Document::EffectMonoid {
                name: format!("{name}.{part}"),
                monoid: monoid.clone(),
            })
        );
    }
    for a in m.elements() {
        println!("iso {} {}", m.label(a), d.product.label(d.iso[a]));
    }
    Ok(Verdict::Pass)
}

fn enumerate(kind: Kind, max: usize, budget: &Budget) -> Outcome {
    let docs: Vec<Document> = match kind {
        Kind::Ea | Kind::Em => {
            let estimate: u128 = (1..=max.min(ALGEBRA_SIZE_WALL)).map(estimate_ea_candidates).sum();
            eprintln!("estimated sum-table candidates: {estimate}");
            if matches!(kind, Kind::Ea) {
                enumerate_effect_algebras(max, budget)?
                    .into_iter()
                    .map(|ea| Document::EffectAlgebra { name: String::new(), ea })
                    .collect()
            } else {
                enumerate_effect_monoids(max, budget)?
                    .into_iter()
                    .map(|monoid| Document::EffectMonoid { name: String::new(), monoid })
                    .collect()
            }
        }
        Kind::Poset => enumerate_bounded_posets(max, budget)?
            .into_iter()
            .map(|poset| Document::Poset { name: String::new(), poset })
            .collect(),
        Kind::Omp => enumerate_orthomodular_posets(max, budget)?
            .into_iter()
            .map(|omp| Document::Omp { name: String::new(), omp })
            .collect(),
    };
    let prefix = match kind {
        Kind::Ea => "ea",
        Kind::Em => "em",
        Kind::Poset => "p",
        Kind::Omp => "omp",
    };
    let mut seen: HashMap<usize, usize> = HashMap::new();
    for doc in docs {
        let doc = named(doc, prefix, &mut seen);
        print!("{}", serialize(&doc));
    }
    eprintln!("{} structures", seen.values().sum::<usize>());
    Ok(Verdict::Pass)
}

/// Names a nameless document `{prefix}{size}_{index}`.
fn named(doc: Document, prefix: &str, seen: &mut HashMap<usize, usize>) -> Document {
    let size = match &doc {
        Document::Poset { poset, .. } => poset.size(),
        Document::Omp { omp, .. } => omp.size(),
        Document::EffectAlgebra { ea, .. } => ea.size(),
        Document::EffectMonoid { monoid, .. } => monoid.size(),
        Document::Map { .. } | Document::RChain { .. } => 0,
    };
    let i = seen.entry(size).or_default();
    *i += 1;
    let name = format!("{prefix}{size}_{i}");
    match doc {
        Document::Poset { poset, .. } => Document::Poset { name, poset },
        Document::Omp { omp, .. } => Document::Omp { name, omp },
        Document::EffectAlgebra { ea, .. } => Document::EffectAlgebra { name, ea },
        Document::EffectMonoid { monoid, .. } => Document::EffectMonoid { name, monoid },
        other => other,
    }
}

fn run_census(max: usize, out: Option<&Path>, budget: &Budget) -> Outcome {
    let c = census(max, budget)?;
    print!("{}", c.to_text());
    if let Some(elapsed) = c.elapsed {
        eprintln!("census took {elapsed:.2?}");
    }
    if let Some(out) = out {
        write_file(out, &c.to_json())?;
    }
    Ok(Verdict::from_passed(c.passed()))
}

fn counterexample(steps: usize) -> Outcome {
    for (i, c) in no_lub_witness(steps)?.iter().enumerate() {
        println!("bound {i} {c}");
    }
    Ok(Verdict::Pass)
}
