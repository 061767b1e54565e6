use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;

use monodromy_core::document::{parse_integers, MatrixDocument};
use monodromy_core::dynamics::{DynamicsError, SystemSpec};
use monodromy_core::exact_int::{IntMatrix, PrimitiveVector};
use monodromy_core::monodromy::{continue_loop, CycleSample, LoopSpec, MonodromyError};
use monodromy_core::normal_forms::{
    block_diagonalize, classify, reduce_mg2, unimodular_completion, verify_theorem1, BlockDiagonalization,
    Classification, EigenSignature, FormTag, MaslovVector, Mg2Reduction, TheoremVerdict,
};
use serde::Serialize;

use crate::args::{Command, Format, MatrixInput, SimulateArgs};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Usage,
    NoUnitEigenvalue,
    NearCritical,
    TheoremFails,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Self::Ok => 0,
            Self::Usage => 1,
            Self::NoUnitEigenvalue => 2,
            Self::NearCritical => 3,
            Self::TheoremFails => 4,
        }
    }
}

#[derive(Debug)]
pub struct Failure {
    pub status: Status,
    pub message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Self { status: Status::Usage, message: message.to_string() }
    }
}

type Outcome = Result<Status, Failure>;

pub fn run(command: Command) -> Outcome {
    match command {
        Command::Classify(input) => cmd_classify(&read_matrix(&input)?),
        Command::Complete { vector, format } => cmd_complete(&vector, format),
        Command::Blockdiag(input) => cmd_blockdiag(&read_matrix(&input)?),
        Command::Simulate(args) => cmd_simulate(&args),
        Command::TheoremCheck { input, maslov } => cmd_theorem_check(&read_matrix(&input)?, &maslov),
    }
}

fn read_matrix(input: &MatrixInput) -> Result<IntMatrix, Failure> {
    let text = match input.input.as_deref() {
        None => read_stdin()?,
        Some(p) if p == Path::new("-") => read_stdin()?,
        Some(p) => fs::read_to_string(p).map_err(|e| Failure::usage(format!("{}: {e}", p.display())))?,
    };
    MatrixDocument::parse(&text).map(|d| d.entries).map_err(Failure::usage)
}

fn read_stdin() -> Result<String, Failure> {
    let mut s = String::new();
    io::stdin().read_to_string(&mut s).map_err(Failure::usage)?;
    Ok(s)
}

fn emit<T: Serialize>(value: &T) -> Result<(), Failure> {
    let json = serde_json::to_string(value).map_err(Failure::usage)?;
    let mut out = io::stdout().lock();
    writeln!(out, "{json}").map_err(Failure::usage)
}

#[derive(Serialize)]
struct ClassifyOutput<'a> {
    signature: &'a EigenSignature,
    verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    form: Option<FormTag>,
    #[serde(skip_serializing_if = "Option::is_none")]
    conjugator: Option<&'a IntMatrix>,
    #[serde(skip_serializing_if = "Option::is_none")]
    normal_form: Option<&'a IntMatrix>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reduce_mg2: Option<Mg2Reduction>,
    #[serde(skip_serializing_if = "Option::is_none")]
    block_diagonalize: Option<BlockDiagonalization>,
}

fn cmd_classify(m: &IntMatrix) -> Outcome {
    let c = classify(m).map_err(Failure::usage)?;
    let sig = c.signature();
    let reduce = if sig.dim == 3 && sig.ma_plus == 3 && sig.mg_plus == 2 {
        Some(reduce_mg2(m).map_err(Failure::usage)?)
    } else {
        None
    };
    let out = match &c {
        Classification::Form(r) => {
            // the normal form is [[1, a], [0, B]]; try to clear a
            let block = if r.normal_form.rows() == 3 {
                let a = r.normal_form.row(0)[1..].to_vec();
                let b = r.normal_form.submatrix(1, 1, 2, 2);
                Some(block_diagonalize(&a, &b).map_err(Failure::usage)?)
            } else {
                None
            };
            ClassifyOutput {
                signature: sig,
                verdict: "form",
                form: Some(r.form),
                conjugator: Some(&r.conjugator),
                normal_form: Some(&r.normal_form),
                reduce_mg2: reduce,
                block_diagonalize: block,
            }
        }
        Classification::NoUnitEigenvalue { .. } => ClassifyOutput {
            signature: sig,
            verdict: "no_unit_eigenvalue",
            form: None,
            conjugator: None,
            normal_form: None,
            reduce_mg2: None,
            block_diagonalize: None,
        },
    };
    emit(&out)?;
    if c.result().is_some() {
        Ok(Status::Ok)
    } else {
        eprintln!("matrix has no eigenvalue 1");
        Ok(Status::NoUnitEigenvalue)
    }
}

fn cmd_complete(vector: &str, format: Format) -> Outcome {
    let entries = parse_integers(vector).map_err(Failure::usage)?;
    let u = PrimitiveVector::new(entries).map_err(Failure::usage)?;
    let s = unimodular_completion(&u).map_err(Failure::usage)?;
    let doc = MatrixDocument::new(s).map_err(Failure::usage)?;
    match format {
        Format::Json => println!("{}", doc.to_json()),
        Format::Text => print!("{}", doc.to_text()),
    }
    Ok(Status::Ok)
}

fn cmd_blockdiag(m: &IntMatrix) -> Outcome {
    let n = m.rows();
    let first_column_is_e1 = m.column(0).iter().enumerate().all(|(i, x)| *x == (i == 0).into());
    if n < 2 || !first_column_is_e1 {
        return Err(Failure::usage("blockdiag expects a matrix of shape [[1, a], [0, A]]"));
    }
    let a = m.row(0)[1..].to_vec();
    let block = m.submatrix(1, 1, n - 1, n - 1);
    emit(&block_diagonalize(&a, &block).map_err(Failure::usage)?)?;
    Ok(Status::Ok)
}

#[derive(Serialize)]
struct TheoremOutput<'a> {
    monodromy: &'a IntMatrix,
    maslov: &'a MaslovVector,
    image: MaslovVector,
    theorem: TheoremVerdict,
}

fn cmd_theorem_check(m: &IntMatrix, maslov: &str) -> Outcome {
    let mu = MaslovVector(parse_integers(maslov).map_err(Failure::usage)?);
    let theorem = verify_theorem1(m, &mu).map_err(Failure::usage)?;
    let image = MaslovVector(m.mul_vec(&mu.0).map_err(Failure::usage)?);
    emit(&TheoremOutput { monodromy: m, maslov: &mu, image, theorem })?;
    Ok(verdict_status(theorem))
}

fn verdict_status(v: TheoremVerdict) -> Status {
    match v {
        TheoremVerdict::Holds | TheoremVerdict::Vacuous => Status::Ok,
        TheoremVerdict::Fails => Status::TheoremFails,
    }
}

#[derive(Serialize)]
struct CsvRow {
    s: f64,
    j: f64,
    h: f64,
    theta_unwrapped: f64,
    #[serde(rename = "I1")]
    i1: f64,
    #[serde(rename = "I2")]
    i2: f64,
    w1: f64,
    w2: f64,
}

impl From<&CycleSample> for CsvRow {
    fn from(c: &CycleSample) -> Self {
        Self { s: c.s, j: c.j, h: c.h, theta_unwrapped: c.theta_unwrapped, i1: c.i1, i2: c.i2, w1: c.w1, w2: c.w2 }
    }
}

fn write_csv(path: &Path, samples: &[CycleSample]) -> Result<(), Failure> {
    let fail = |e: csv::Error| Failure::usage(format!("{}: {e}", path.display()));
    let mut w = csv::Writer::from_path(path).map_err(fail)?;
    for s in samples {
        w.serialize(CsvRow::from(s)).map_err(fail)?;
    }
    w.flush().map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn simulation_failure(e: MonodromyError) -> Failure {
    match &e {
        MonodromyError::InvalidLoop(_) | MonodromyError::Dynamics(DynamicsError::InvalidSystem(_)) => Failure::usage(e),
        _ => {
            let at = e.failing_s().map(|s| format!(" (failing sample s = {s})")).unwrap_or_default();
            Failure { status: Status::NearCritical, message: format!("{e}{at}") }
        }
    }
}

fn cmd_simulate(args: &SimulateArgs) -> Outcome {
    let [a, b] = args.system;
    let sys = SystemSpec::new(a, b, args.tol).map_err(Failure::usage)?;
    let spec = LoopSpec::new(args.loop_center, args.loop_radii, args.samples, args.orientation.into())
        .map_err(Failure::usage)?;
    let report = continue_loop(&spec, &sys).map_err(simulation_failure)?;
    if let Some(path) = &args.csv {
        write_csv(path, &report.samples)?;
    }
    emit(&report)?;
    let status = verdict_status(report.theorem);
    if status != Status::Ok {
        eprintln!("M mu != mu for the computed monodromy");
    }
    Ok(status)
}
