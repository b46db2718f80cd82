mod render;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ddx_core::cohomology::froelicher::froelicher;
use ddx_core::cohomology::{self, all_tables};
use ddx_core::complex::io::{complex_from_json, complex_to_json, morphism_from_json, ComplexFile};
use ddx_core::complex::ops::{direct_sum, quotient_by_injection, shift_diag, tensor};
use ddx_core::complex::DoubleComplex;
use ddx_core::error::ComplexError;
use ddx_core::formula::{check_blowup, check_projbundle, AdjunctionRule, FormulaReport, FormulaTheory};
use ddx_core::models::lie::lie_model_from_json;
use ddx_core::models::{builtin, builtin_names, describe, from_lie_model};
use ddx_core::poly::{build_family, check_h_identity, check_support, check_weighted_homogeneity};
use ddx_core::zigzag::{decompose, e1_equivalent, is_ddbar, Method};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "ddx", version, about = "Cohomology, spectral sequences and zigzag decompositions of double complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Complexes named by `--model` come first, then those read by `--file`.
#[derive(Args, Clone)]
struct Input {
    /// Builtin model name (see `ddx model list`)
    #[arg(long = "model", value_name = "NAME")]
    models: Vec<String>,
    /// Double-complex JSON file
    #[arg(long = "file", value_name = "PATH")]
    files: Vec<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check shapes and the identities d1² = d2² = 0, d1d2 + d2d1 = 0 and those of σ
    Validate {
        #[command(flatten)]
        input: Input,
    },
    /// Bigraded and de Rham cohomology tables
    Cohomology {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = TableChoice::All)]
        table: TableChoice,
        #[arg(long)]
        json: bool,
    },
    /// Frölicher spectral sequence pages, Hodge filtration and Hodge pieces
    Froelicher {
        #[command(flatten)]
        input: Input,
        /// Number of pages (default: until the sequence is stationary)
        #[arg(long)]
        pages: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Decompose into squares and zigzags
    Zigzag {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        json: bool,
    },
    /// Decide the ddbar-lemma
    CheckDdbar {
        #[command(flatten)]
        input: Input,
        /// zigzag, bc-iso, hodge or all
        #[arg(long, default_value = "all")]
        method: Method,
        #[arg(long)]
        json: bool,
    },
    /// Compare zigzag multiplicities of two complexes
    E1Equiv {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        json: bool,
    },
    /// Build a new complex and print it as JSON
    Op {
        #[command(subcommand)]
        op: OpCommand,
    },
    /// Builtin models
    Model {
        #[command(subcommand)]
        action: ModelCommand,
    },
    /// Convert a Lie-model file into a double-complex file
    Lie {
        #[arg(long, value_name = "PATH")]
        file: PathBuf,
    },
    /// The polynomial family P_0 .. P_{r-1} and its identities
    Poly {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        json: bool,
    },
    /// Symbolic check of the inverse-isomorphism formulas
    Formula {
        #[command(subcommand)]
        which: FormulaCommand,
    },
}

#[derive(Subcommand)]
enum OpCommand {
    /// Direct sum of all inputs
    Sum {
        #[command(flatten)]
        input: Input,
    },
    /// Diagonal shift K[i,i]
    Shift {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_negative_numbers = true)]
        shift: i64,
    },
    /// Tensor product of two inputs
    Tensor {
        #[command(flatten)]
        input: Input,
    },
    /// Quotient of the target of an injective morphism by its image
    Quotient {
        /// Morphism JSON file
        #[arg(long, value_name = "PATH")]
        file: PathBuf,
    },
}

#[derive(Subcommand)]
enum ModelCommand {
    List {
        #[arg(long)]
        json: bool,
    },
    /// Print a builtin model as a double-complex file
    Emit { name: String },
}

#[derive(Args)]
struct FormulaFlags {
    #[arg(long)]
    rank: usize,
    #[arg(long, value_enum, default_value_t = TheoryChoice::DeRham)]
    theory: TheoryChoice,
    /// Print every rewriting step
    #[arg(long)]
    trace: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum FormulaCommand {
    Projbundle {
        #[command(flatten)]
        flags: FormulaFlags,
    },
    Blowup {
        #[command(flatten)]
        flags: FormulaFlags,
        /// How i_E^* i_E* acts
        #[arg(long, value_enum, default_value_t = AdjunctionChoice::SelfIntersection)]
        adjunction: AdjunctionChoice,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableChoice {
    Bc,
    A,
    Dol,
    Dolc,
    Dr,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum TheoryChoice {
    DeRham,
    Dolbeault,
    BottChern,
}

#[derive(Clone, Copy, ValueEnum)]
enum AdjunctionChoice {
    SelfIntersection,
    Zero,
    Unavailable,
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<ComplexError> for Failure {
    fn from(e: ComplexError) -> Self {
        Failure::Domain(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

fn domain(e: impl std::fmt::Display) -> Failure {
    Failure::Domain(e.to_string())
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Domain(format!("cannot read {}: {e}", path.display())))
}

impl Input {
    fn load(&self) -> Result<Vec<DoubleComplex>, Failure> {
        let mut out = Vec::new();
        for name in &self.models {
            out.push(builtin(name).map_err(domain)?);
        }
        for path in &self.files {
            out.push(complex_from_json(&read(path)?).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?);
        }
        Ok(out)
    }

    fn exactly(&self, n: usize) -> Result<Vec<DoubleComplex>, Failure> {
        let given = self.models.len() + self.files.len();
        if given != n {
            let what = if n == 1 { "one input".to_string() } else { format!("{n} inputs") };
            return Err(Failure::Usage(format!("expected {what} via --model/--file, got {given}")));
        }
        self.load()
    }

    fn one(&self) -> Result<DoubleComplex, Failure> {
        Ok(self.exactly(1)?.remove(0))
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn validate(input: &Input) -> Outcome {
    let k = if let Some(path) = input.files.first().filter(|_| input.models.is_empty() && input.files.len() == 1) {
        let file: ComplexFile = serde_json::from_str(&read(path)?).map_err(domain)?;
        match file.to_complex() {
            Ok(k) => k,
            Err(ComplexError::Invalid(report)) => return Err(Failure::Domain(format!("invalid double complex\n{report}"))),
            Err(e) => return Err(e.into()),
        }
    } else {
        input.one()?
    };
    Ok(format!(
        "valid: {} nonzero spaces, total dimension {}, real structure: {}\n",
        k.spaces().len(),
        k.total_dim(),
        yes_no(k.has_real_structure())
    ))
}

fn cohomology_cmd(input: &Input, table: TableChoice, as_json: bool) -> Outcome {
    let k = input.one()?;
    let t = all_tables(&k);
    let chosen = [
        (TableChoice::Bc, &t.bott_chern),
        (TableChoice::A, &t.aeppli),
        (TableChoice::Dol, &t.dolbeault),
        (TableChoice::Dolc, &t.conjugate_dolbeault),
    ];
    let wanted = |c: TableChoice| table == TableChoice::All || table == c;
    if as_json {
        let mut values: Vec<Value> = chosen.iter().filter(|(c, _)| wanted(*c)).map(|(_, t)| render::table_json(t)).collect();
        if wanted(TableChoice::Dr) {
            values.push(render::betti_json(&t.de_rham));
        }
        let v = if values.len() == 1 { values.remove(0) } else { Value::Array(values) };
        return Ok(pretty(&v));
    }
    let mut out: Vec<String> = chosen.iter().filter(|(c, _)| wanted(*c)).map(|(_, t)| render::table_text(&k, t)).collect();
    if wanted(TableChoice::Dr) {
        out.push(render::betti_text(&t.de_rham));
    }
    Ok(out.join("\n"))
}

fn froelicher_cmd(input: &Input, pages: Option<usize>, as_json: bool) -> Outcome {
    let k = input.one()?;
    if pages == Some(0) {
        return Err(Failure::Usage("--pages must be at least 1".into()));
    }
    let ss = froelicher(&k, pages);
    let fdims = cohomology::hodge::filtration_dims(&k);
    if as_json {
        let einf: Vec<Value> = ss.e_infinity.iter().map(|(b, d)| json!({"p": b.p, "q": b.q, "dim": d})).collect();
        let pieces = ss.hodge_pieces.as_ref().map(|all| {
            all.values()
                .map(|h| {
                    let dims: Vec<Value> = h.piece_dims().iter().map(|(b, d)| json!({"p": b.p, "q": b.q, "dim": d})).collect();
                    json!({"k": h.degree, "holds": h.holds, "pieces": dims})
                })
                .collect::<Vec<_>>()
        });
        let v = json!({
            "pages": ss.pages.iter().map(render::page_json).collect::<Vec<_>>(),
            "e_infinity": einf,
            "degenerates_at_e1": ss.degenerates_at_e1,
            "hodge_filtration": render::filtration_json(&fdims),
            "hodge_structure": pieces,
        });
        return Ok(pretty(&v));
    }
    let mut out: Vec<String> = ss.pages.iter().map(|p| render::page_text(&k, p)).collect();
    out.push(render::grid("E_infinity", &k, |b| ss.e_infinity.get(&b).copied().unwrap_or(0)));
    let mut tail = format!("degenerates at E1: {}\n", yes_no(ss.degenerates_at_e1));
    tail.push_str(&render::filtration_text(&fdims));
    if let Some(all) = &ss.hodge_pieces {
        tail.push_str("hodge structure\n");
        for h in all.values() {
            let dims: Vec<String> = h.piece_dims().iter().map(|(b, d)| format!("V{b}={d}")).collect();
            tail.push_str(&format!("  H{}: {} {}\n", h.degree, yes_no(h.holds), dims.join(" ")).replace("  \n", "\n"));
        }
    }
    out.push(tail);
    Ok(out.join("\n"))
}

fn zigzag_cmd(input: &Input, as_json: bool) -> Outcome {
    let k = input.one()?;
    let d = decompose(&k);
    let ok = d.verify(&k);
    if !ok {
        return Err(Failure::Domain("decomposition certificate failed".into()));
    }
    Ok(if as_json { pretty(&render::decomposition_json(&d, ok)) } else { render::decomposition_text(&d, ok) })
}

fn ddbar_cmd(input: &Input, method: Method, as_json: bool) -> Outcome {
    let k = input.one()?;
    let v = is_ddbar(&k, method)?;
    if as_json {
        let results: Vec<Value> = v.results.iter().map(|(m, r)| json!({"method": m.name(), "holds": r})).collect();
        return Ok(pretty(&json!({"ddbar": v.holds, "results": results})));
    }
    Ok(format!("{v}\n"))
}

fn e1_cmd(input: &Input, as_json: bool) -> Outcome {
    let ks = input.exactly(2)?;
    let same = e1_equivalent(&ks[0], &ks[1]);
    if as_json {
        return Ok(pretty(&json!({"e1_equivalent": same})));
    }
    Ok(format!("E1-equivalent: {}\n", if same { "YES" } else { "NO" }))
}

fn op_cmd(op: &OpCommand) -> Outcome {
    let k = match op {
        OpCommand::Sum { input } => {
            let ks = input.load()?;
            if ks.is_empty() {
                return Err(Failure::Usage("sum needs at least one input".into()));
            }
            direct_sum(&ks.iter().collect::<Vec<_>>())?
        }
        OpCommand::Shift { input, shift } => shift_diag(&input.one()?, *shift),
        OpCommand::Tensor { input } => {
            let ks = input.exactly(2)?;
            tensor(&ks[0], &ks[1])
        }
        OpCommand::Quotient { file } => quotient_by_injection(&morphism_from_json(&read(file)?)?)?,
    };
    Ok(complex_to_json(&k) + "\n")
}

fn model_cmd(action: &ModelCommand) -> Outcome {
    match action {
        ModelCommand::List { json: true } => {
            let v: Vec<Value> = builtin_names().iter().map(|n| json!({"name": n, "description": describe(n)})).collect();
            Ok(pretty(&Value::Array(v)))
        }
        ModelCommand::List { json: false } => {
            let names = builtin_names();
            let width = names.iter().map(|n| n.len()).max().unwrap_or(0);
            Ok(names.iter().map(|n| format!("{n:<width$}  {}\n", describe(n).unwrap_or(""))).collect())
        }
        ModelCommand::Emit { name } => Ok(complex_to_json(&builtin(name).map_err(domain)?) + "\n"),
    }
}

fn lie_cmd(file: &PathBuf) -> Outcome {
    let m = lie_model_from_json(&read(file)?).map_err(domain)?;
    Ok(complex_to_json(&from_lie_model(&m).map_err(domain)?) + "\n")
}

fn poly_cmd(rank: usize, as_json: bool) -> Outcome {
    let f = build_family(rank).map_err(domain)?;
    let checks = [
        ("H-identity", check_h_identity(&f)),
        ("support", check_support(&f)),
        ("weighted homogeneity", check_weighted_homogeneity(&f)),
    ];
    if as_json {
        let polys: Vec<Value> = (0..rank).rev().map(|i| json!({"i": i, "poly": f.p(i).to_string()})).collect();
        let mut v = json!({"rank": rank, "polys": polys});
        for (name, ok) in checks {
            v[name.replace([' ', '-'], "_").to_lowercase()] = json!(ok);
        }
        return Ok(pretty(&v));
    }
    let mut out: String = (0..rank).rev().map(|i| format!("P_{i} = {}\n", f.p(i))).collect();
    for (name, ok) in checks {
        out.push_str(&format!("{name}: {}\n", if ok { "OK" } else { "FAILED" }));
    }
    Ok(out)
}

fn report_output(rep: &FormulaReport, flags: &FormulaFlags) -> Outcome {
    if flags.json {
        let mut v = serde_json::to_value(rep).expect("serializable");
        if !flags.trace {
            v.as_object_mut().expect("object").remove("trace");
        }
        return Ok(pretty(&v));
    }
    let mut out = format!("{}\n", rep.summary());
    for (component, value) in &rep.components {
        out.push_str(&format!("  {component} = {value}\n"));
    }
    out.push_str(&format!("homogeneous: {}\nH-consistent: {}\n", yes_no(rep.homogeneous), yes_no(rep.h_consistent)));
    if flags.trace {
        out.push_str(&rep.render_trace());
    }
    Ok(out)
}

fn formula_cmd(which: &FormulaCommand) -> Outcome {
    let theory = |t: TheoryChoice| match t {
        TheoryChoice::DeRham => FormulaTheory::DeRham,
        TheoryChoice::Dolbeault => FormulaTheory::Dolbeault,
        TheoryChoice::BottChern => FormulaTheory::BottChern,
    };
    match which {
        FormulaCommand::Projbundle { flags } => report_output(&check_projbundle(flags.rank, theory(flags.theory)).map_err(domain)?, flags),
        FormulaCommand::Blowup { flags, adjunction } => {
            let rule = match adjunction {
                AdjunctionChoice::SelfIntersection => AdjunctionRule::SelfIntersection,
                AdjunctionChoice::Zero => AdjunctionRule::Zero,
                AdjunctionChoice::Unavailable => AdjunctionRule::Unavailable,
            };
            report_output(&check_blowup(flags.rank, theory(flags.theory), rule).map_err(domain)?, flags)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Validate { input } => validate(input),
        Command::Cohomology { input, table, json } => cohomology_cmd(input, *table, *json),
        Command::Froelicher { input, pages, json } => froelicher_cmd(input, *pages, *json),
        Command::Zigzag { input, json } => zigzag_cmd(input, *json),
        Command::CheckDdbar { input, method, json } => ddbar_cmd(input, *method, *json),
        Command::E1Equiv { input, json } => e1_cmd(input, *json),
        Command::Op { op } => op_cmd(op),
        Command::Model { action } => model_cmd(action),
        Command::Lie { file } => lie_cmd(file),
        Command::Poly { rank, json } => poly_cmd(*rank, *json),
        Command::Formula { which } => formula_cmd(which),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
