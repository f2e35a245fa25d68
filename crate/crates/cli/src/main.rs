use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use omkit::crn::{self, Deficiencies, Network, Report, SubspacePair, Verdict};
use omkit::io::{
    parse_assignments, parse_intervals_json, parse_matrix_json_declared, parse_network_json,
    rational_to_json, scalar_to_json, sign_vector_to_json, vector_to_json,
};
use omkit::oriented_matroid::format_chirotope;
use omkit::sign_vector::format_set;
use omkit::{
    chirotope, cocircuits_from_matrix, covectors_from_matrix, elementary_vectors, exists_vector,
    exists_vector_assuming, AssumptionSet, Error, ExactMatrix, Rational, Scalar, SignVectorSet, Subspace,
};

#[derive(Parser)]
#[command(name = "omkit", version, about = "Exact oriented-matroid and sign-vector computations")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    output: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Elementary vectors of the kernel (or row space) of a matrix
    ElementaryVectors {
        #[command(flatten)]
        input: MatrixInput,
        #[arg(long)]
        row_space: bool,
        /// Keep one vector per column set, even when supports repeat
        #[arg(long)]
        no_dedup: bool,
    },
    /// Maximal minors in lexicographic order of column sets
    Minors {
        #[command(flatten)]
        input: MatrixInput,
    },
    /// Cocircuits of the kernel (or row space)
    Cocircuits(SignVectorArgs),
    /// Covectors of the kernel (or row space)
    Covectors(SignVectorArgs),
    /// Signs of the maximal minors
    Chirotope {
        #[command(flatten)]
        input: MatrixInput,
    },
    /// Does the row space of a matrix meet a box of intervals?
    ExistsVector {
        #[command(flatten)]
        input: MatrixInput,
        #[arg(long)]
        intervals: PathBuf,
        /// Also print a point of the row space inside the box
        #[arg(long)]
        witness: bool,
    },
    /// Reaction-network conditions
    #[command(subcommand)]
    Crn(CrnCommand),
}

#[derive(Args)]
struct MatrixInput {
    #[arg(long)]
    matrix: PathBuf,
    #[command(flatten)]
    params: Params,
}

#[derive(Args)]
struct SignVectorArgs {
    #[command(flatten)]
    input: MatrixInput,
    #[arg(long)]
    row_space: bool,
}

#[derive(Args, Clone, Default)]
struct Params {
    /// Parameters assumed positive, e.g. `a,b,c`
    #[arg(long, value_delimiter = ',')]
    assume_positive: Vec<String>,
    /// Exact substitutions applied before anything else, e.g. `a=1/2,b=2`
    #[arg(long)]
    at: Option<String>,
}

#[derive(Args)]
struct PairInput {
    #[arg(long = "W")]
    w: PathBuf,
    #[arg(long = "Wt")]
    wt: PathBuf,
    #[command(flatten)]
    params: Params,
}

#[derive(Args)]
struct NetworkInput {
    #[arg(long)]
    network: PathBuf,
    #[command(flatten)]
    params: Params,
}

#[derive(Subcommand)]
enum CrnCommand {
    /// Deficiencies, weak reversibility and both existence theorems
    Check(NetworkInput),
    /// sign(ker W) lies in the lower closure of sign(ker W̃)
    Closure(PairInput),
    /// sign(ker W) meets sign(row W̃) only in zero
    Uniqueness(PairInput),
    /// Nonnegative cocircuits of row W̃ dominate those of row W
    Faces(PairInput),
    /// The pair (ker W, ker W̃) is nondegenerate
    Nondegenerate(PairInput),
    /// Deficiency, kinetic-order deficiency and linkage classes
    Deficiency(NetworkInput),
}

/// What a command prints, and whether it reports a negative verdict.
struct Outcome {
    text: String,
    json: Value,
    negative: bool,
}

impl Outcome {
    fn positive(text: String, json: Value) -> Self {
        Self { text, json, negative: false }
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

fn within(declared: &[String], names: impl IntoIterator<Item = String>, what: &str) -> Result<(), Error> {
    for name in names {
        if !declared.contains(&name) {
            return Err(Error::UnknownIdentifier { name: format!("{name} (in {what})"), position: 0 });
        }
    }
    Ok(())
}

impl Params {
    fn assignments(&self) -> Result<HashMap<String, Rational>, Error> {
        self.at.as_deref().map(parse_assignments).unwrap_or_else(|| Ok(HashMap::new()))
    }

    fn assumptions(&self) -> AssumptionSet {
        AssumptionSet::positive(self.assume_positive.iter().cloned())
    }

    fn check(&self, declared: &[String]) -> Result<HashMap<String, Rational>, Error> {
        let values = self.assignments()?;
        within(declared, values.keys().cloned(), "--at")?;
        within(declared, self.assume_positive.iter().cloned(), "--assume-positive")?;
        Ok(values)
    }
}

fn load_matrices(paths: &[&Path], params: &Params) -> Result<Vec<ExactMatrix>, Error> {
    let mut declared = Vec::new();
    let mut matrices = Vec::new();
    for path in paths {
        let (m, vars) = parse_matrix_json_declared(&read(path)?)?;
        declared.extend(vars);
        matrices.push(m);
    }
    let values = params.check(&declared)?;
    if !values.is_empty() {
        matrices = matrices.iter().map(|m| m.substitute(&values)).collect();
    }
    Ok(matrices)
}

fn load_matrix(path: &Path, params: &Params) -> Result<ExactMatrix, Error> {
    Ok(load_matrices(&[path], params)?.remove(0))
}

fn load_network(input: &NetworkInput) -> Result<Network, Error> {
    let (net, declared) = parse_network_json(&read(&input.network)?)?;
    let values = input.params.check(&declared)?;
    Ok(if values.is_empty() { net } else { net.substitute(&values) })
}

fn load_pair(input: &PairInput) -> Result<SubspacePair, Error> {
    let mut matrices = load_matrices(&[&input.w, &input.wt], &input.params)?;
    let wt = matrices.pop().expect("two matrices");
    let w = matrices.pop().expect("two matrices");
    SubspacePair::new(w, wt)
}

fn tuple(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

fn list<T>(items: &[T], f: impl Fn(&T) -> String) -> String {
    let parts: Vec<String> = items.iter().map(f).collect();
    format!("[{}]", parts.join(", "))
}

fn subspace(row_space: bool) -> Subspace {
    if row_space {
        Subspace::RowSpace
    } else {
        Subspace::Kernel
    }
}

fn sign_vector_outcome(set: &SignVectorSet) -> Outcome {
    let json = Value::Array(set.iter().map(sign_vector_to_json).collect());
    Outcome::positive(format_set(set), json!({ "sign_vectors": json }))
}

fn verdict_json(v: &Verdict) -> Value {
    match v {
        Verdict::Holds => json!(true),
        Verdict::Fails => json!(false),
        Verdict::Conditional(d) => {
            let branches: Vec<Vec<String>> =
                d.branches().iter().map(|b| b.iter().map(ToString::to_string).collect()).collect();
            json!({ "iff_any": branches })
        }
        Verdict::Undetermined(why) => json!({ "undetermined": why }),
    }
}

fn deficiency_json(d: &Deficiencies) -> Value {
    json!({
        "deficiency": d.stoichiometric,
        "kinetic_order_deficiency": d.kinetic_order,
        "linkage_classes": d.linkage_classes,
    })
}

fn report_json(r: &Report) -> Value {
    let findings: serde_json::Map<String, Value> =
        r.findings.iter().map(|f| (f.name.to_string(), verdict_json(&f.verdict))).collect();
    json!({
        "claim": r.claim,
        "deficiencies": r.deficiencies.as_ref().map(deficiency_json),
        "weakly_reversible": r.weakly_reversible,
        "conditions": findings,
        "conclusion": verdict_json(&r.conclusion),
    })
}

fn verdict_outcome(name: &str, v: Verdict) -> Outcome {
    Outcome {
        text: format!("{name}: {v}"),
        json: json!({ name: verdict_json(&v) }),
        negative: v == Verdict::Fails,
    }
}

fn run(command: &Command) -> Result<Outcome, Error> {
    match command {
        Command::ElementaryVectors { input, row_space, no_dedup } => {
            let m = load_matrix(&input.matrix, &input.params)?;
            let ev = elementary_vectors(&m, subspace(*row_space), !no_dedup)?;
            let sets: Vec<Vec<usize>> = ev.source_sets().iter().map(|s| s.one_based()).collect();
            let json = json!({
                "vectors": ev.vectors().iter().map(|v| vector_to_json(v)).collect::<Vec<_>>(),
                "column_sets": sets,
            });
            Ok(Outcome::positive(list(ev.vectors(), |v| tuple(v)), json))
        }
        Command::Minors { input } => {
            let m = load_matrix(&input.matrix, &input.params)?;
            let minors = m.maximal_minors()?;
            let sets: Vec<Vec<usize>> = minors.index_sets().iter().map(|s| s.one_based()).collect();
            let json = json!({
                "minors": vector_to_json(minors.values()),
                "column_sets": sets,
            });
            Ok(Outcome::positive(list(minors.values(), ToString::to_string), json))
        }
        Command::Cocircuits(args) => {
            let m = load_matrix(&args.input.matrix, &args.input.params)?;
            let set = cocircuits_from_matrix(&m, subspace(args.row_space), &args.input.params.assumptions())?;
            Ok(sign_vector_outcome(&set))
        }
        Command::Covectors(args) => {
            let m = load_matrix(&args.input.matrix, &args.input.params)?;
            let set = covectors_from_matrix(&m, subspace(args.row_space), &args.input.params.assumptions())?;
            Ok(sign_vector_outcome(&set))
        }
        Command::Chirotope { input } => {
            let m = load_matrix(&input.matrix, &input.params)?;
            let signs = chirotope(&m, &input.params.assumptions())?;
            let json: Vec<String> = signs.iter().map(|s| s.as_char().to_string()).collect();
            Ok(Outcome::positive(format_chirotope(&signs), json!({ "chirotope": json })))
        }
        Command::ExistsVector { input, intervals, witness } => {
            let m = load_matrix(&input.matrix, &input.params)?;
            let bounds = parse_intervals_json(&read(intervals)?)?;
            let result = if m.is_rational() {
                exists_vector(&m, &bounds, *witness)?
            } else {
                exists_vector_assuming(&m, &bounds, &input.params.assumptions())?
            };
            let mut text = format!("feasible: {}", result.feasible);
            if let Some(w) = &result.witness {
                let w: Vec<Scalar> = w.iter().cloned().map(Scalar::Rational).collect();
                text.push_str(&format!("\nwitness: {}", tuple(&w)));
            }
            if let Some(c) = &result.certificate {
                text.push_str(&format!("\ncertificate: {}", tuple(c)));
            }
            let json = json!({
                "feasible": result.feasible,
                "witness": result.witness.as_ref().map(|w| w.iter().map(rational_to_json).collect::<Vec<_>>()),
                "certificate": result.certificate.as_ref().map(|c| c.iter().map(scalar_to_json).collect::<Vec<_>>()),
            });
            Ok(Outcome { text, json, negative: !result.feasible })
        }
        Command::Crn(c) => run_crn(c),
    }
}

fn run_crn(command: &CrnCommand) -> Result<Outcome, Error> {
    match command {
        CrnCommand::Check(input) => {
            let net = load_network(input)?;
            let assumptions = input.params.assumptions();
            let robust = crn::check_robust_existence(&net, &assumptions)?;
            let unique = crn::check_unique_existence(&net, &assumptions)?;
            let negative = robust.conclusion == Verdict::Fails || unique.conclusion == Verdict::Fails;
            let unique_lines: Vec<String> = unique.to_string().lines().skip(3).map(String::from).collect();
            let text = format!("{robust}\n{}", unique_lines.join("\n"));
            let json = json!({ "robust_existence": report_json(&robust), "unique_existence": report_json(&unique) });
            Ok(Outcome { text, json, negative })
        }
        CrnCommand::Closure(input) => {
            let pair = load_pair(input)?;
            let report = crn::check_robust_existence_pair(&pair, &input.params.assumptions())?;
            Ok(verdict_outcome("closure", report.findings[0].verdict.clone()))
        }
        CrnCommand::Uniqueness(input) => {
            let pair = load_pair(input)?;
            let assumptions = input.params.assumptions();
            let verdict = if pair.is_rational() {
                Verdict::from_bool(crn::condition_uniqueness_sign_vectors(&pair, &assumptions)?)
            } else {
                Verdict::from_disjunction(crn::condition_uniqueness_minors(&pair, &assumptions)?)
            };
            Ok(verdict_outcome("uniqueness", verdict))
        }
        CrnCommand::Faces(input) => {
            let pair = load_pair(input)?;
            Ok(verdict_outcome("faces", Verdict::from_bool(crn::condition_faces(&pair)?)))
        }
        CrnCommand::Nondegenerate(input) => {
            let pair = load_pair(input)?;
            Ok(verdict_outcome("nondegenerate", Verdict::from_bool(crn::condition_nondegenerate(&pair)?)))
        }
        CrnCommand::Deficiency(input) => {
            let net = load_network(input)?;
            let d = crn::deficiency(&net, &input.params.assumptions())?;
            let wr = crn::is_weakly_reversible(&net);
            let text = format!(
                "deficiency: {}\nkinetic-order deficiency: {}\nlinkage classes: {}\nweakly reversible: {wr}",
                d.stoichiometric, d.kinetic_order, d.linkage_classes
            );
            let mut json = deficiency_json(&d);
            json["weakly_reversible"] = json!(wr);
            Ok(Outcome::positive(text, json))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(outcome) => {
            let text = match cli.output {
                Format::Text => outcome.text,
                Format::Json => serde_json::to_string_pretty(&outcome.json).expect("serializable"),
            };
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            ExitCode::from(if outcome.negative { 1 } else { 0 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
