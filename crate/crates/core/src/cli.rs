//! Command-line front end. [`run`] parses arguments, validates them, runs
//! the request and returns the exit code with the rendered output.
//! Exit codes: 0 success, 1 an identity failed, 2 usage error.

use crate::coefficients::{RatFunc, TruncPoly};
use crate::dimgen::{
    generalized_block, generalized_cauchy_sides, generalized_eigenvalue_with, generalized_macdonald_p_with,
    generalized_macdonald_q_with, tensor_monomial_coefficients, thm_1_3_both_sides_with, unit_spectral,
    TensorFockVector,
};
use crate::error::Error;
use crate::macdonald::{macdonald_block, macdonald_p, macdonald_q};
use crate::partitions::{Partition, PartitionTuple};
use crate::process::{
    cauchy_product, correlation_direct, correlation_operator, fredholm_expectation_sides, multilevel_formula,
    operator_normalization, q_whittaker_limit_check, KernelVariant, Observable, ProcessSpec,
};
use crate::symfunc::{to_monomial_coefficients, SymFunc};
use crate::verify;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::time::Instant;

#[derive(Parser, Debug)]
#[command(name = "macfock", version, about = "Exact Macdonald process computations in the free-field picture")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Expand a Macdonald function P_λ or Q_λ.
    Compute {
        #[arg(value_enum, ignore_case = true)]
        function: Function,
        /// Partition such as "2,1".
        #[arg(long)]
        lambda: String,
        /// Basis of the output: monomial or power sum.
        #[arg(long, value_enum, default_value_t = Basis::M)]
        basis: Basis,
    },
    /// Run acceptance checks or a parametrized identity.
    Verify {
        /// A criterion number or name, or "all".
        target: String,
        /// Stated acceptance parameters only.
        #[arg(long)]
        quick: bool,
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Correlation function of one observable per level.
    Expect {
        /// Comma-separated observables, one per level: unit, hatE1, E<r>, Ep<r>, G<r>, Gp<r>.
        #[arg(long)]
        obs: String,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Fredholm determinant coefficients against direct expectations.
    Fredholm {
        #[arg(long, value_enum, ignore_case = true)]
        kernel: KernelArg,
        /// Highest power of u.
        #[arg(long, default_value_t = 2)]
        uorder: u32,
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Generalized Macdonald functions at level m.
    Dim {
        #[arg(value_enum, ignore_case = true)]
        action: DimAction,
        /// Partition tuple such as "1|0", for p and q.
        #[arg(long)]
        tuple: Option<String>,
        /// Comma-separated spectral parameters; defaults to all ones.
        #[arg(long)]
        u: Option<String>,
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Time the main computations.
    Bench {
        #[arg(long, default_value_t = 4)]
        degree: u32,
    },
}

#[derive(Args, Debug, Clone)]
struct SpecArgs {
    /// Total-degree cutoff.
    #[arg(long)]
    degree: Option<u32>,
    /// X variables per level.
    #[arg(long)]
    xvars: Option<usize>,
    /// Y variables per level.
    #[arg(long)]
    yvars: Option<usize>,
    /// Number of levels (or legs for dim).
    #[arg(long)]
    levels: Option<usize>,
}

impl SpecArgs {
    fn spec(&self, levels: usize, x: usize, y: usize, d: u32) -> ProcessSpec {
        let n = self.levels.unwrap_or(levels).max(1);
        ProcessSpec::uniform(n, self.xvars.unwrap_or(x), self.yvars.unwrap_or(y), self.degree.unwrap_or(d))
    }

    fn is_set(&self) -> bool {
        self.degree.is_some() || self.xvars.is_some() || self.yvars.is_some() || self.levels.is_some()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Function {
    P,
    Q,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Basis {
    M,
    P,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Direct,
    Operator,
    Formula,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum KernelArg {
    #[value(name = "KE")]
    Ke,
    #[value(name = "KEp")]
    KEp,
    #[value(name = "KG")]
    Kg,
    #[value(name = "KGp")]
    KGp,
    /// The t = 0 kernel with its q-Whittaker limit check.
    #[value(name = "KGp0")]
    KGp0,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum DimAction {
    P,
    Q,
    Cauchy,
    Expect,
}

/// Exit code and rendered output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

fn usage(flag: &str, e: impl std::fmt::Display) -> Failure {
    Failure::Usage(format!("invalid value for {flag}: {e}"))
}

/// Runs the CLI on `argv` (including the program name).
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let display =
                matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion);
            let text = e.render().to_string();
            return if display {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            } else {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(&cli.command) {
        Ok((ok, v)) => {
            let stdout = match cli.format {
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&v).expect("json")),
                Format::Text => render_text(&v),
            };
            Outcome { code: if ok { 0 } else { 1 }, stdout, stderr: String::new() }
        }
        Err(Failure::Usage(m)) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {m}\n") },
        Err(Failure::Compute(e)) => Outcome { code: 1, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn dispatch(cmd: &Command) -> Result<(bool, Value), Failure> {
    match cmd {
        Command::Compute { function, lambda, basis } => compute(*function, lambda, *basis),
        Command::Verify { target, quick, spec } => verify_cmd(target, *quick, spec),
        Command::Expect { obs, method, spec } => expect(obs, *method, spec),
        Command::Fredholm { kernel, uorder, spec } => fredholm(*kernel, *uorder, spec),
        Command::Dim { action, tuple, u, spec } => dim(*action, tuple.as_deref(), u.as_deref(), spec),
        Command::Bench { degree } => bench(*degree),
    }
}

fn partition_json(l: &Partition) -> Value {
    json!(l.parts())
}

fn tuple_json(k: &PartitionTuple) -> Value {
    Value::Array(k.0.iter().map(partition_json).collect())
}

fn coeff_json(c: &RatFunc) -> Value {
    Value::String(c.to_string())
}

fn sym_json(f: &SymFunc<RatFunc>, basis: Basis) -> Value {
    let terms: Vec<(Partition, RatFunc)> = match basis {
        Basis::M => to_monomial_coefficients(f).into_iter().collect(),
        Basis::P => f.terms().iter().map(|(k, c)| (k.clone(), c.clone())).collect(),
    };
    Value::Array(terms.iter().map(|(k, c)| json!({"partition": partition_json(k), "coeff": coeff_json(c)})).collect())
}

fn tensor_json(f: &TensorFockVector<RatFunc>) -> Value {
    Value::Array(f.terms().iter().map(|(k, c)| json!({"tuple": tuple_json(k), "coeff": coeff_json(c)})).collect())
}

/// Variable names `x<level>_<i>`, `y<level>_<i>` in the spec's numbering.
fn variable_names(spec: &ProcessSpec) -> Vec<String> {
    let mut names = Vec::new();
    for (a, l) in spec.levels.iter().enumerate() {
        names.extend((1..=l.x).map(|i| format!("x{}_{i}", a + 1)));
        names.extend((1..=l.y).map(|i| format!("y{}_{i}", a + 1)));
    }
    names
}

fn series_json(p: &TruncPoly, names: &[String]) -> Value {
    let series: Vec<Value> = p
        .terms()
        .iter()
        .map(|(e, c)| {
            let mono: serde_json::Map<String, Value> =
                e.iter().enumerate().filter(|(_, &k)| k > 0).map(|(i, &k)| (names[i].clone(), json!(k))).collect();
            json!({"monomial": mono, "coeff": coeff_json(c)})
        })
        .collect();
    Value::Array(series)
}

fn method_json(method: &str, p: &TruncPoly, names: &[String]) -> Value {
    json!({"method": method, "series": series_json(p, names)})
}

fn spec_json(spec: &ProcessSpec) -> Value {
    json!({
        "levels": spec.n_levels(),
        "xvars": spec.levels.iter().map(|l| l.x).collect::<Vec<_>>(),
        "yvars": spec.levels.iter().map(|l| l.y).collect::<Vec<_>>(),
        "degree": spec.degree,
    })
}

fn compute(function: Function, lambda: &str, basis: Basis) -> Result<(bool, Value), Failure> {
    let l: Partition = lambda.parse().map_err(|e| usage("--lambda", e))?;
    let f = match function {
        Function::P => macdonald_p(&l)?,
        Function::Q => macdonald_q(&l)?,
    };
    let name = match function {
        Function::P => "P",
        Function::Q => "Q",
    };
    let basis_name = match basis {
        Basis::M => "m",
        Basis::P => "p",
    };
    Ok((
        true,
        json!({"function": name, "lambda": partition_json(&l), "basis": basis_name, "coefficients": sym_json(&f, basis)}),
    ))
}

fn verify_cmd(target: &str, quick: bool, spec: &SpecArgs) -> Result<(bool, Value), Failure> {
    let results = if target == "all" {
        if spec.is_set() {
            return Err(Failure::Usage("verify all takes no --degree/--xvars/--yvars/--levels".into()));
        }
        verify::run_all(quick)
    } else if target == "cauchy" && spec.is_set() {
        if spec.levels.is_some() {
            return Err(usage("--levels", "the Cauchy identity is one-level"));
        }
        let s = spec.spec(1, 2, 2, 5);
        let lhs = operator_normalization(&s)?;
        let rhs = cauchy_product(&s.x_vars(0), &s.y_vars(0), s.degree);
        let pass = lhs == rhs;
        let names = variable_names(&s);
        let mut v = json!({"target": "cauchy", "spec": spec_json(&s), "pass": pass});
        if !pass {
            v["diff"] = json!({"operator": series_json(&lhs, &names), "product": series_json(&rhs, &names)});
        }
        return Ok((pass, v));
    } else {
        if spec.is_set() {
            return Err(Failure::Usage(format!("verify {target} takes no spec flags")));
        }
        let id =
            verify::criterion_id(target).ok_or_else(|| usage("target", format!("unknown criterion {target:?}")))?;
        vec![verify::run_criterion(id, quick)]
    };
    let pass = results.iter().all(|r| r.pass);
    Ok((pass, json!({"results": verify::results_json(&results), "pass": pass})))
}

fn expect(obs: &str, method: Method, spec: &SpecArgs) -> Result<(bool, Value), Failure> {
    let o: Vec<Observable> =
        obs.split(',').map(|s| s.parse()).collect::<Result<_, _>>().map_err(|e| usage("--obs", e))?;
    if let Some(n) = spec.levels {
        if n != o.len() {
            return Err(usage("--levels", format!("{n} levels but {} observables", o.len())));
        }
    }
    let s = spec.spec(o.len(), 1, 1, 3);
    let names = variable_names(&s);
    let mut v = json!({"observables": o.iter().map(|x| x.to_string()).collect::<Vec<_>>(), "spec": spec_json(&s)});
    let mut ok = true;
    match method {
        Method::Direct => v["direct"] = method_json("direct", &correlation_direct(&o, &s)?, &names),
        Method::Operator => v["operator"] = method_json("operator", &correlation_operator(&o, &s)?, &names),
        Method::Formula => v["formula"] = method_json("formula", &multilevel_formula(&o, &s)?, &names),
        Method::Both => {
            let d = correlation_direct(&o, &s)?;
            let op = correlation_operator(&o, &s)?;
            ok = d == op;
            v["direct"] = method_json("direct", &d, &names);
            v["operator"] = method_json("operator", &op, &names);
            v["equal"] = json!(ok);
        }
    }
    Ok((ok, v))
}

fn fredholm(kernel: KernelArg, uorder: u32, spec: &SpecArgs) -> Result<(bool, Value), Failure> {
    if spec.levels.is_some_and(|n| n != 1) {
        return Err(usage("--levels", "Fredholm identities are one-level"));
    }
    let s = spec.spec(1, 1, 1, 3);
    let names = variable_names(&s);
    let list = |v: &[TruncPoly]| Value::Array(v.iter().map(|p| series_json(p, &names)).collect());
    let variant = match kernel {
        KernelArg::Ke => KernelVariant::KE,
        KernelArg::KEp => KernelVariant::KEprime,
        KernelArg::Kg => KernelVariant::KG,
        KernelArg::KGp => KernelVariant::KGprime,
        KernelArg::KGp0 => {
            let rep = q_whittaker_limit_check(uorder, &s)?;
            let ok = rep.ok();
            return Ok((
                ok,
                json!({
                    "kernel": "KGp0",
                    "spec": spec_json(&s),
                    "determinant": list(&rep.determinant),
                    "expectation": list(&rep.expectation),
                    "equal": ok,
                }),
            ));
        }
    };
    let (det, exp) = fredholm_expectation_sides(variant, &s, uorder)?;
    let ok = det == exp;
    Ok((
        ok,
        json!({"kernel": format!("{variant:?}"), "spec": spec_json(&s), "determinant": list(&det), "expectation": list(&exp), "equal": ok}),
    ))
}

fn dim(action: DimAction, tuple: Option<&str>, u: Option<&str>, spec: &SpecArgs) -> Result<(bool, Value), Failure> {
    let parsed_tuple = tuple.map(|t| t.parse::<PartitionTuple>().map_err(|e| usage("--tuple", e))).transpose()?;
    let parsed_u = u
        .map(|s| s.split(',').map(|x| x.parse::<RatFunc>()).collect::<Result<Vec<_>, _>>().map_err(|e| usage("--u", e)))
        .transpose()?;
    let m =
        parsed_tuple.as_ref().map(|t| t.arity()).or(parsed_u.as_ref().map(|u| u.len())).or(spec.levels).unwrap_or(2);
    let u = parsed_u.unwrap_or_else(|| unit_spectral(m));
    if u.len() != m {
        return Err(usage("--u", format!("{} parameters for level {m}", u.len())));
    }
    if spec.levels.is_some_and(|n| n != m) {
        return Err(usage("--levels", format!("level {m} from the other flags")));
    }
    let u_json: Vec<Value> = u.iter().map(coeff_json).collect();
    match action {
        DimAction::P | DimAction::Q => {
            let l = parsed_tuple.ok_or_else(|| Failure::Usage("dim p/q needs --tuple".into()))?;
            let f = match action {
                DimAction::P => generalized_macdonald_p_with(&u, &l)?,
                _ => generalized_macdonald_q_with(&u, &l)?,
            };
            let mono: Vec<Value> = tensor_monomial_coefficients(&f, l.weight())
                .iter()
                .map(|(k, c)| json!({"tuple": tuple_json(k), "coeff": coeff_json(c)}))
                .collect();
            Ok((
                true,
                json!({
                    "function": if action == DimAction::P { "P" } else { "Q" },
                    "tuple": tuple_json(&l),
                    "u": u_json,
                    "eigenvalue": coeff_json(&generalized_eigenvalue_with(&u, &l)),
                    "p_basis": tensor_json(&f),
                    "m_basis": mono,
                }),
            ))
        }
        DimAction::Cauchy => {
            let s = spec.spec(m, 1, 1, 2);
            let names = variable_names(&s);
            let (a, b) = generalized_cauchy_sides(&u, &s)?;
            let ok = a == b;
            Ok((
                ok,
                json!({"u": u_json, "spec": spec_json(&s), "sum": series_json(&a, &names), "product": series_json(&b, &names), "equal": ok}),
            ))
        }
        DimAction::Expect => {
            let s = spec.spec(m, 1, 1, 2);
            let names = variable_names(&s);
            let r = thm_1_3_both_sides_with(&u, &s)?;
            let readings: Vec<String> = r.matching().iter().map(|x| format!("{x:?}")).collect();
            let ok = r.equal();
            Ok((
                ok,
                json!({
                    "u": u_json,
                    "spec": spec_json(&s),
                    "direct": r.lhs.as_ref().map(|p| method_json("direct", p, &names)).unwrap_or(Value::Null),
                    "operator": method_json("operator", &r.operator, &names),
                    "formula": {
                        "OuterIndex": series_json(&r.rhs_outer, &names),
                        "RunningIndex": series_json(&r.rhs_running, &names),
                        "Exchange": series_json(&r.rhs_exchange, &names),
                    },
                    "matching_readings": readings,
                    "equal": ok,
                }),
            ))
        }
    }
}

fn bench(degree: u32) -> Result<(bool, Value), Failure> {
    let mut rows = Vec::new();
    let mut time = |name: &str, f: &mut dyn FnMut() -> Result<(), Error>| -> Result<(), Failure> {
        let t = Instant::now();
        f()?;
        rows.push(json!({"task": name, "ms": t.elapsed().as_millis() as u64}));
        Ok(())
    };
    time("macdonald basis", &mut || (0..=degree).try_for_each(|d| macdonald_block(d).map(|_| ())))?;
    time("operator matrices", &mut || {
        (0..=degree).try_for_each(|d| {
            crate::fockvertex::operator_matrix(
                crate::fockvertex::FreeFieldFamily::E,
                2,
                crate::fockvertex::KernelForm::Determinant,
                d,
            )
            .map(|_| ())
        })
    })?;
    time("correlation N=2", &mut || {
        let s = ProcessSpec::uniform(2, 1, 1, degree.min(3));
        correlation_operator(&[Observable::hat_e1(), Observable::hat_e1()], &s).map(|_| ())
    })?;
    time("generalized blocks m=2", &mut || {
        let u = vec![RatFunc::one(), RatFunc::int(2)];
        (0..=degree.min(3)).try_for_each(|d| generalized_block(&u, d).map(|_| ()))
    })?;
    Ok((true, json!({"degree": degree, "timings": rows})))
}

/// Flat `path: value` lines.
fn render_text(v: &Value) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut String) {
        match v {
            Value::Object(m) => {
                for (k, x) in m {
                    walk(&if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") }, x, out);
                }
            }
            Value::Array(a) if a.iter().any(|x| x.is_object() || x.is_array()) => {
                for (i, x) in a.iter().enumerate() {
                    walk(&format!("{prefix}[{i}]"), x, out);
                }
            }
            Value::String(s) => out.push_str(&format!("{prefix}: {s}\n")),
            other => out.push_str(&format!("{prefix}: {other}\n")),
        }
    }
    let mut out = String::new();
    walk("", v, &mut out);
    out
}
