//! Command-line front end. Every command returns a [`CommandResult`]; the
//! binary only prints it and exits with its code.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use itertools::Itertools;
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::constructions::{gen_family, two_sum, FamilySpec};
use crate::eisenstein::Eisenstein;
use crate::error::{Error, Result};
use crate::hmatrix::{apply_ops, parse_op_script, validate, ValidationMode};
use crate::io::{format_matrix, read_matrix, write_matrix};
use crate::jacobian::{abelianize, jacobian_class, jacobian_of, JacobianE};
use crate::matrix::{Label, MatrixE};
use crate::matroid::{enumerate_bases, laplacian_determinant, verify_three_connected};
use crate::projection::{averaging_matrix, dual_quotient_order, projector};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "srujac", version, about = "Jacobians of sixth-root-of-unity matroids")]
pub struct Cli {
    /// Print the structured payload as JSON instead of the text report.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the H-matrix conditions.
    Validate {
        #[command(flatten)]
        input: Input,
        /// Also run the brute-force 3-connectivity check.
        #[arg(long)]
        three_connected: bool,
    },
    /// Elementary divisors, abelian form and order of the Jacobian.
    Jacobian {
        #[command(flatten)]
        input: Input,
        /// Enumerate bases and check order = bases^2.
        #[arg(long)]
        verify: bool,
    },
    /// Enumerate bases.
    Bases {
        #[command(flatten)]
        input: Input,
        /// Print only the number of bases.
        #[arg(long)]
        count: bool,
    },
    /// The orthogonal projector onto the row space.
    Projection {
        #[command(flatten)]
        input: Input,
        /// Check N = sum of N_B over all bases equals kappa * P.
        #[arg(long)]
        verify_averaging: bool,
        /// Count the classes of P(E^n) modulo the row lattice, up to this limit.
        #[arg(long, value_name = "LIMIT")]
        dual_order: Option<usize>,
    },
    /// 2-sum of two representations along one column of each.
    Twosum {
        #[arg(long, conflicts_with = "family1", required_unless_present = "family1")]
        file1: Option<PathBuf>,
        #[arg(long)]
        family1: Option<String>,
        #[arg(long, conflicts_with = "family2", required_unless_present = "family2")]
        file2: Option<PathBuf>,
        #[arg(long)]
        family2: Option<String>,
        #[arg(long, default_value_t = 1)]
        basepoint1: Label,
        #[arg(long, default_value_t = 1)]
        basepoint2: Label,
        /// Conjugate the second representation before gluing.
        #[arg(long)]
        conjugate_second: bool,
        /// Write the result here instead of printing it.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit a built-in family in .hmat form.
    Gen {
        /// u24, ag23, ag23_del:<e>, t_r:<r>, whirl:<r>, counterexample_m,
        /// counterexample_mprime, graphic_complete:<m>
        spec: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare two Jacobians as E-modules and as abelian groups. Inputs are
    /// taken files first, then families.
    Compare {
        #[arg(long)]
        file: Vec<PathBuf>,
        #[arg(long)]
        family: Vec<String>,
        #[command(flatten)]
        validation: ValidationArgs,
    },
    /// Jacobian class of a vector, as residues modulo the divisors.
    Class {
        #[command(flatten)]
        input: Input,
        /// Entries separated by commas or spaces, e.g. "1,0,w,0".
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
    },
}

#[derive(Args, Debug, Clone)]
pub struct ValidationArgs {
    /// entries, maximal or full.
    #[arg(long, default_value = "maximal", value_parser = parse_mode)]
    pub validation: ValidationMode,
    /// Same as --validation full.
    #[arg(long)]
    pub full: bool,
}

impl ValidationArgs {
    fn mode(&self) -> ValidationMode {
        if self.full {
            ValidationMode::Full
        } else {
            self.validation
        }
    }
}

fn parse_mode(s: &str) -> std::result::Result<ValidationMode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Args, Debug, Clone)]
pub struct Input {
    /// Matrix file in .hmat format.
    #[arg(long, conflicts_with = "family", required_unless_present = "family")]
    pub file: Option<PathBuf>,
    /// Built-in family, e.g. u24 or t_r:4.
    #[arg(long)]
    pub family: Option<String>,
    /// Equivalence operations to apply after loading, one per line.
    #[arg(long)]
    pub ops: Option<PathBuf>,
    #[command(flatten)]
    pub validation: ValidationArgs,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CommandResult {
    pub exit_code: i32,
    pub report: String,
    pub payload: Map<String, Value>,
}

impl CommandResult {
    fn ok(report: String, payload: Map<String, Value>) -> Self {
        CommandResult {
            exit_code: EXIT_OK,
            report,
            payload,
        }
    }

    fn failure(report: String, mut payload: Map<String, Value>) -> Self {
        payload.insert("error".into(), json!(report));
        CommandResult {
            exit_code: EXIT_FAILURE,
            report,
            payload,
        }
    }

    fn from_error(err: &Error) -> Self {
        let code = match err {
            Error::Family(_) | Error::ParseEisenstein(_) => EXIT_USAGE,
            _ => EXIT_FAILURE,
        };
        let mut report = format!("error: {err}");
        match err {
            Error::MinorGuard { .. } => {
                report.push_str("\nhint: use --validation maximal or --validation entries for large inputs")
            }
            Error::SizeGuard { .. } => report.push_str("\nhint: this computation is limited to small inputs"),
            _ => {}
        }
        let mut payload = Map::new();
        payload.insert("error".into(), json!(err.to_string()));
        CommandResult {
            exit_code: code,
            report,
            payload,
        }
    }

    /// Text for stdout: the report, or the payload as JSON.
    pub fn render(&self, json: bool) -> String {
        if json {
            let mut p = self.payload.clone();
            p.insert("exit_code".into(), json!(self.exit_code));
            Value::Object(p).to_string()
        } else {
            self.report.clone()
        }
    }
}

struct Loaded {
    matrix: MatrixE,
    source: String,
}

fn load_family(spec: &str) -> Result<MatrixE> {
    let spec: FamilySpec = spec.parse()?;
    Ok(gen_family(spec)?.into_matrix())
}

fn load(input: &Input) -> Result<Loaded> {
    let (mut matrix, source) = match (&input.file, &input.family) {
        (Some(path), _) => (read_matrix(path)?, path.display().to_string()),
        (None, Some(spec)) => (load_family(spec)?, spec.clone()),
        (None, None) => return Err(Error::Family("one of --file or --family is required".into())),
    };
    if let Some(path) = &input.ops {
        let text = fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        matrix = apply_ops(&matrix, &parse_op_script(&text)?)?;
    }
    Ok(Loaded { matrix, source })
}

/// Validates `m`; a violation becomes a failed result.
fn check(m: &MatrixE, mode: ValidationMode) -> Result<std::result::Result<(), CommandResult>> {
    let report = validate(m, mode)?;
    Ok(match report.violation {
        None => Ok(()),
        Some(v) => {
            let mut payload = Map::new();
            payload.insert("valid".into(), json!(false));
            payload.insert("violation".into(), json!(v.to_string()));
            Err(CommandResult::failure(
                format!("not an H-matrix ({mode} mode): {v}"),
                payload,
            ))
        }
    })
}

fn joined(xs: &[Eisenstein]) -> String {
    if xs.is_empty() {
        "(none)".into()
    } else {
        xs.iter().join(", ")
    }
}

fn strings(xs: &[Eisenstein]) -> Value {
    json!(xs.iter().map(|x| x.to_string()).collect::<Vec<_>>())
}

pub fn run(cli: &Cli) -> CommandResult {
    match dispatch(&cli.command) {
        Ok(r) => r,
        Err(e) => CommandResult::from_error(&e),
    }
}

fn dispatch(cmd: &Command) -> Result<CommandResult> {
    match cmd {
        Command::Validate { input, three_connected } => cmd_validate(input, *three_connected),
        Command::Jacobian { input, verify } => cmd_jacobian(input, *verify),
        Command::Bases { input, count } => cmd_bases(input, *count),
        Command::Projection {
            input,
            verify_averaging,
            dual_order,
        } => cmd_projection(input, *verify_averaging, *dual_order),
        Command::Twosum {
            file1,
            family1,
            file2,
            family2,
            basepoint1,
            basepoint2,
            conjugate_second,
            out,
        } => {
            let first = load_one(file1.as_ref(), family1.as_deref())?;
            let second = load_one(file2.as_ref(), family2.as_deref())?;
            cmd_twosum(first, *basepoint1, second, *basepoint2, *conjugate_second, out.as_ref())
        }
        Command::Gen { spec, out } => cmd_gen(spec, out.as_ref()),
        Command::Compare {
            file,
            family,
            validation,
        } => cmd_compare(file, family, validation.mode()),
        Command::Class { input, vector } => cmd_class(input, vector),
    }
}

fn load_one(file: Option<&PathBuf>, family: Option<&str>) -> Result<MatrixE> {
    match (file, family) {
        (Some(path), _) => read_matrix(path),
        (None, Some(spec)) => load_family(spec),
        (None, None) => Err(Error::Family("an input file or family is required".into())),
    }
}

pub fn cmd_validate(input: &Input, three_connected: bool) -> Result<CommandResult> {
    let loaded = load(input)?;
    let mode = input.validation.mode();
    let report = validate(&loaded.matrix, mode)?;
    let mut payload = Map::new();
    payload.insert("source".into(), json!(loaded.source));
    payload.insert("mode".into(), json!(mode.to_string()));
    payload.insert("minors_checked".into(), json!(report.minors_checked.to_string()));
    let (rows, cols) = loaded.matrix.shape();
    payload.insert("rows".into(), json!(rows));
    payload.insert("cols".into(), json!(cols));
    if let Some(v) = &report.violation {
        payload.insert("valid".into(), json!(false));
        payload.insert("violation".into(), json!(v.to_string()));
        return Ok(CommandResult::failure(
            format!("not an H-matrix ({mode} mode): {v}"),
            payload,
        ));
    }
    payload.insert("valid".into(), json!(true));
    let mut text = format!(
        "H-matrix ({mode} mode): {rows}x{cols}, {} minors checked",
        report.minors_checked
    );
    if three_connected {
        let c = verify_three_connected(&loaded.matrix)?;
        payload.insert("three_connected".into(), json!(c));
        text.push_str(&format!("\n3-connected: {}", if c { "yes" } else { "no" }));
    }
    Ok(CommandResult::ok(text, payload))
}

fn jacobian_payload(j: &JacobianE, bases: &BigInt) -> Map<String, Value> {
    let mut payload = Map::new();
    payload.insert("divisors".into(), strings(&j.divisors));
    payload.insert("snf".into(), strings(j.full_divisors()));
    payload.insert("module".into(), json!(j.to_string()));
    let ab = abelianize(j);
    payload.insert(
        "abelian".into(),
        json!(ab.invariant_factors.iter().map(|d| d.to_string()).collect::<Vec<_>>()),
    );
    payload.insert("abelian_text".into(), json!(ab.to_string()));
    payload.insert("order".into(), json!(j.order.to_string()));
    payload.insert("bases".into(), json!(bases.to_string()));
    payload.insert("rank".into(), json!(j.rank));
    payload
}

fn jacobian_text(j: &JacobianE, bases: &BigInt) -> String {
    format!(
        "divisors: {}\nsnf: ({})\nmodule: {}\nabelian: {}\norder: {}\nbases: {}",
        joined(&j.divisors),
        j.full_divisors().iter().join(", "),
        j,
        abelianize(j),
        j.order,
        bases
    )
}

pub fn cmd_jacobian(input: &Input, verify: bool) -> Result<CommandResult> {
    let loaded = load(input)?;
    if let Err(r) = check(&loaded.matrix, input.validation.mode())? {
        return Ok(r);
    }
    let j = jacobian_of(&loaded.matrix)?;
    let bases = laplacian_determinant(&j.representation)?;
    let mut payload = jacobian_payload(&j, &bases);
    payload.insert("source".into(), json!(loaded.source));
    let mut text = jacobian_text(&j, &bases);
    if verify {
        let count = BigInt::from(enumerate_bases(&j.representation)?.len());
        let ok = &count * &count == j.order;
        payload.insert("verified".into(), json!(ok));
        if !ok {
            return Ok(CommandResult::failure(
                format!("order {} differs from bases^2 = {}", j.order, &count * &count),
                payload,
            ));
        }
        text.push_str(&format!("\nverified: order = {count}^2"));
    }
    Ok(CommandResult::ok(text, payload))
}

pub fn cmd_bases(input: &Input, count_only: bool) -> Result<CommandResult> {
    let loaded = load(input)?;
    if let Err(r) = check(&loaded.matrix, input.validation.mode())? {
        return Ok(r);
    }
    let m = loaded.matrix.full_row_rank_restriction()?;
    let bases = enumerate_bases(&m)?;
    let mut payload = Map::new();
    payload.insert("source".into(), json!(loaded.source));
    payload.insert("count".into(), json!(bases.len()));
    if count_only {
        return Ok(CommandResult::ok(bases.len().to_string(), payload));
    }
    let lists: Vec<Vec<Label>> = bases.iter().map(|b| b.elements.clone()).collect();
    let mut text: Vec<String> = lists.iter().map(|b| b.iter().join(" ")).collect();
    text.push(format!("count: {}", bases.len()));
    payload.insert("bases".into(), json!(lists));
    Ok(CommandResult::ok(text.join("\n"), payload))
}

pub fn cmd_projection(input: &Input, verify_averaging: bool, dual_order: Option<usize>) -> Result<CommandResult> {
    let loaded = load(input)?;
    if let Err(r) = check(&loaded.matrix, input.validation.mode())? {
        return Ok(r);
    }
    let m = loaded.matrix.full_row_rank_restriction()?;
    let p = projector(&m)?;
    let mut payload = Map::new();
    payload.insert("source".into(), json!(loaded.source));
    payload.insert(
        "p".into(),
        json!(p.p.row_vectors().iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>()),
    );
    payload.insert("idempotent".into(), json!(p.is_idempotent()));
    payload.insert("hermitian".into(), json!(p.is_hermitian()));
    let mut text = format!(
        "P =\n{}\nidempotent: {}\nhermitian: {}",
        p.p,
        p.is_idempotent(),
        p.is_hermitian()
    );
    if verify_averaging {
        let avg = averaging_matrix(&m)?;
        payload.insert("kappa".into(), json!(avg.kappa.to_string()));
        payload.insert("averaging_verified".into(), json!(true));
        payload.insert("n_hermitian".into(), json!(avg.n.is_hermitian()));
        text.push_str(&format!("\nN = {}·P verified", avg.kappa));
    }
    if let Some(limit) = dual_order {
        let order = dual_quotient_order(&m, limit)?;
        payload.insert("dual_quotient_order".into(), json!(order));
        text.push_str(&format!("\ndual quotient order: {order}"));
    }
    Ok(CommandResult::ok(text, payload))
}

pub fn cmd_twosum(
    first: MatrixE,
    p1: Label,
    second: MatrixE,
    p2: Label,
    conjugate_second: bool,
    out: Option<&PathBuf>,
) -> Result<CommandResult> {
    let mut second = if conjugate_second { second.conj() } else { second };
    let mut p2 = p2;
    // shift colliding labels of the second input past those of the first
    if second.labels().iter().any(|l| first.labels().contains(l)) {
        let shift = *first.labels().iter().max().expect("nonempty");
        let labels = second.labels().iter().map(|l| l + shift).collect();
        second.label_index(p2)?;
        second = second.with_labels(labels)?;
        p2 += shift;
    }
    let sum = two_sum(&first, p1, &second, p2)?.into_matrix();
    let mut payload = Map::new();
    payload.insert("rows".into(), json!(sum.rows()));
    payload.insert("cols".into(), json!(sum.cols()));
    payload.insert("labels".into(), json!(sum.labels()));
    let text = match out {
        Some(path) => {
            write_matrix(&sum, path)?;
            payload.insert("out".into(), json!(path.display().to_string()));
            format!("wrote {}x{} matrix to {}", sum.rows(), sum.cols(), path.display())
        }
        None => format_matrix(&sum).trim_end().to_string(),
    };
    payload.insert("matrix".into(), json!(format_matrix(&sum)));
    Ok(CommandResult::ok(text, payload))
}

pub fn cmd_gen(spec: &str, out: Option<&PathBuf>) -> Result<CommandResult> {
    let m = load_family(spec)?;
    let mut payload = Map::new();
    payload.insert("family".into(), json!(spec));
    payload.insert("matrix".into(), json!(format_matrix(&m)));
    let text = match out {
        Some(path) => {
            write_matrix(&m, path)?;
            format!("wrote {spec} to {}", path.display())
        }
        None => format_matrix(&m).trim_end().to_string(),
    };
    Ok(CommandResult::ok(text, payload))
}

pub fn cmd_compare(files: &[PathBuf], families: &[String], mode: ValidationMode) -> Result<CommandResult> {
    if files.len() + families.len() != 2 {
        return Err(Error::Family(format!(
            "compare needs exactly two inputs, got {}",
            files.len() + families.len()
        )));
    }
    let mut inputs: Vec<(String, MatrixE)> = vec![];
    for f in files {
        inputs.push((f.display().to_string(), read_matrix(f)?));
    }
    for s in families {
        inputs.push((s.clone(), load_family(s)?));
    }
    let mut jacs = vec![];
    for (_, m) in &inputs {
        if let Err(r) = check(m, mode)? {
            return Ok(r);
        }
        jacs.push(jacobian_of(m)?);
    }
    let same_e = jacs[0].same_module(&jacs[1]);
    let same_z = abelianize(&jacs[0]) == abelianize(&jacs[1]);
    let word = |b: bool| if b { "same" } else { "different" };
    let mut payload = Map::new();
    payload.insert("e_module_equal".into(), json!(same_e));
    payload.insert("abelian_equal".into(), json!(same_z));
    let mut text = vec![];
    for (k, ((name, _), j)) in inputs.iter().zip(&jacs).enumerate() {
        payload.insert(format!("input{}", k + 1), json!(name));
        payload.insert(format!("divisors{}", k + 1), strings(&j.divisors));
        payload.insert(format!("abelian{}", k + 1), json!(abelianize(j).to_string()));
        text.push(format!("{name}: {j}  [{}]", abelianize(j)));
    }
    text.push(format!("E-module: {}; abelian: {}", word(same_e), word(same_z)));
    Ok(CommandResult::ok(text.join("\n"), payload))
}

fn parse_vector(s: &str) -> Result<Vec<Eisenstein>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(str::parse)
        .collect()
}

pub fn cmd_class(input: &Input, vector: &str) -> Result<CommandResult> {
    let loaded = load(input)?;
    if let Err(r) = check(&loaded.matrix, input.validation.mode())? {
        return Ok(r);
    }
    let v = parse_vector(vector)?;
    let j = jacobian_of(&loaded.matrix)?;
    let class = jacobian_class(&j, &v)?;
    let mut payload = Map::new();
    payload.insert("divisors".into(), strings(&j.divisors));
    payload.insert("class".into(), strings(&class));
    let zero = class.iter().all(num_traits::Zero::is_zero);
    payload.insert("trivial".into(), json!(zero));
    let text = format!(
        "divisors: {}\nclass: ({})\ntrivial: {}",
        joined(&j.divisors),
        class.iter().join(", "),
        if zero { "yes" } else { "no" }
    );
    Ok(CommandResult::ok(text, payload))
}
