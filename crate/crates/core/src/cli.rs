//! Command-line front end. Every subcommand is also a library function
//! returning the text it would print.
//!
//! Exit codes: 0 on success, 1 when a domain invariant fails, 2 on I/O,
//! parse or usage errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::decompose::{decompose_generator, spectral_split};
use crate::error::{Error, Result};
use crate::io::{
    complex_vector, cost_to_json, matrix, parse, plan_to_json, read_generator, real, to_canonical_string,
    GeneratorDocument, Mode, SimulationRequest,
};
use crate::lambda_atom::LambdaAtom;
use crate::lindblad::{apply_exact, GksGenerator, QuantumState};
use crate::numerics::trace_distance;
use crate::trotter::{cost_report, simulate, CostReport};

#[derive(Debug, Parser)]
#[command(name = "lindblad-universal", version, about = "Decompose and simulate Markovian generators")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a generator document and report its invariants.
    Validate { path: PathBuf },
    /// Write the conjugation plan of every rank-one term.
    Decompose {
        path: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evolve a state by the product formula or the exact exponential.
    Simulate {
        request: PathBuf,
        #[arg(long)]
        t: Option<f64>,
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long)]
        mode: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Trotter order, step count and exponential-count bounds.
    Cost {
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        #[arg(long, default_value_t = 1e-3)]
        eps: f64,
        #[arg(long, default_value_t = 1.0)]
        l1: f64,
        #[arg(long, default_value_t = 1.0)]
        l2: f64,
        /// `name=v1,v2,...` over one of m, t, eps, l1, l2; prints CSV.
        #[arg(long)]
        sweep: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Three-level Λ atom: generator, spectrum, plans and a simulation.
    ExampleLambda {
        #[arg(long, default_value_t = 1.0)]
        gamma1: f64,
        #[arg(long, default_value_t = 1.0)]
        gamma2: f64,
        #[arg(long, default_value_t = std::f64::consts::FRAC_PI_3)]
        phi: f64,
        #[arg(long, default_value_t = std::f64::consts::FRAC_PI_3)]
        eta: f64,
        #[arg(long, default_value_t = std::f64::consts::FRAC_PI_3)]
        alpha: f64,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        #[arg(long, default_value_t = 1e-3)]
        eps: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub valid: bool,
    pub hermitian_residual: f64,
    pub min_eigenvalue: Option<f64>,
    /// Number of non-zero eigenvalues of the GKS matrix.
    pub m: Option<usize>,
    pub error: Option<String>,
}

impl ValidationReport {
    pub fn to_json(&self) -> Result<Value> {
        Ok(json!({
            "valid": self.valid,
            "hermitian_residual": real(self.hermitian_residual)?,
            "min_eigenvalue": self.min_eigenvalue.map(real).transpose()?,
            "m": self.m,
            "error": self.error,
        }))
    }
}

fn read(path: &Path) -> Result<String> {
    Ok(fs::read_to_string(path)?)
}

fn canonical(v: &Value) -> Result<String> {
    Ok(to_canonical_string(v)? + "\n")
}

pub fn validate_document(doc: &GeneratorDocument) -> Result<ValidationReport> {
    let hermitian_residual = doc.h.hermitian_residual();
    let spectrum = |g: &GksGenerator| -> Result<(f64, usize)> { Ok((g.min_gks_eigenvalue()?, g.rank()?)) };
    Ok(match doc.to_generator() {
        Ok(g) => {
            let (min, m) = spectrum(&g)?;
            ValidationReport {
                valid: true,
                hermitian_residual,
                min_eigenvalue: Some(min),
                m: Some(m),
                error: None,
            }
        }
        Err(e) if e.is_input_error() => return Err(e),
        Err(e) => {
            // report the dissipator even when H is at fault
            let mut sym = doc.clone();
            sym.h = (&doc.h + &doc.h.adjoint()).scale_real(0.5);
            let (min, m) = match sym.to_generator().and_then(|g| spectrum(&g)) {
                Ok((min, m)) => (Some(min), Some(m)),
                Err(_) => (None, None),
            };
            ValidationReport {
                valid: false,
                hermitian_residual,
                min_eigenvalue: min,
                m,
                error: Some(e.to_string()),
            }
        }
    })
}

pub fn cmd_validate(path: &Path) -> Result<ValidationReport> {
    validate_document(&read_generator(&read(path)?)?)
}

pub fn decompose_document(doc: &GeneratorDocument) -> Result<String> {
    let g = doc.to_generator()?;
    canonical(&plan_to_json(&decompose_generator(&g)?)?)
}

pub fn cmd_decompose(path: &Path) -> Result<String> {
    decompose_document(&read_generator(&read(path)?)?)
}

pub fn simulate_request(req: &SimulationRequest) -> Result<String> {
    let g = req.generator.to_generator()?;
    let rho0 = QuantumState::new(req.rho0.clone())?;
    let exact = apply_exact(&g, &rho0, req.t)?;
    let mut out = json!({
        "mode": req.mode.as_str(),
        "t": real(req.t)?,
        "epsilon": real(req.epsilon)?,
    });
    match req.mode {
        Mode::Oracle => {
            out["rho"] = matrix(exact.matrix())?;
        }
        Mode::Trotter => {
            let run = simulate(&g, &rho0, req.t, req.epsilon)?;
            out["rho"] = matrix(run.state.matrix())?;
            out["trace_distance_to_oracle"] = real(trace_distance(run.state.matrix(), exact.matrix())?)?;
            out["cost"] = cost_to_json(&run.report)?;
        }
    }
    canonical(&out)
}

pub fn cmd_simulate(path: &Path, t: Option<f64>, eps: Option<f64>, mode: Option<Mode>) -> Result<String> {
    let mut req = SimulationRequest::from_json(&parse(&read(path)?)?)?;
    req.t = t.unwrap_or(req.t);
    req.epsilon = eps.unwrap_or(req.epsilon);
    req.mode = mode.unwrap_or(req.mode);
    simulate_request(&req)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostArgs {
    pub m: usize,
    pub t: f64,
    pub eps: f64,
    pub l1: f64,
    pub l2: f64,
}

impl CostArgs {
    fn report(&self) -> Result<CostReport> {
        if !(self.t > 0.0) || !(self.eps > 0.0) || !(self.l1 > 0.0) || self.m == 0 {
            return Err(Error::InvalidArgument("m, t, eps and L1 must be positive".into()));
        }
        if self.m > 1 && !(self.l2 > 0.0 && self.l1 >= self.l2) {
            return Err(Error::InvalidArgument(format!(
                "need L1 >= L2 > 0, got L1 = {}, L2 = {}",
                self.l1, self.l2
            )));
        }
        cost_report(self.m, self.t, self.eps, self.l1, self.l2)
    }

    fn with(mut self, name: &str, value: f64) -> Result<Self> {
        match name {
            "m" if value >= 1.0 && value.fract() == 0.0 => self.m = value as usize,
            "m" => return Err(Error::InvalidArgument(format!("m must be a positive integer, got {value}"))),
            "t" => self.t = value,
            "eps" => self.eps = value,
            "l1" => self.l1 = value,
            "l2" => self.l2 = value,
            _ => return Err(Error::Format(format!("cannot sweep \"{name}\" (use m, t, eps, l1 or l2)"))),
        }
        Ok(self)
    }
}

pub fn cmd_cost(args: CostArgs) -> Result<String> {
    canonical(&cost_to_json(&args.report()?)?)
}

/// One CSV row per value of the swept parameter.
pub fn cmd_cost_sweep(args: CostArgs, sweep: &str) -> Result<String> {
    let (name, values) = sweep
        .split_once('=')
        .ok_or_else(|| Error::Format("sweep must look like name=v1,v2,...".into()))?;
    let values: Vec<f64> = values
        .split(',')
        .map(|v| v.trim().parse().map_err(|_| Error::Format(format!("bad sweep value \"{v}\""))))
        .collect::<Result<_>>()?;
    let mut out = format!(
        "{name},k,r,n_reps,N_exp_actual,N_exp_bound_res,N_exp_bound_closed_form,negative_segments\n"
    );
    for v in values {
        let r = args.with(name, v)?.report()?;
        out.push_str(&format!(
            "{v},{},{},{},{},{},{},{}\n",
            r.k, r.r, r.n_reps, r.n_exp_actual, r.n_exp_bound_res, r.n_exp_bound_closed_form, r.negative_segments
        ));
    }
    Ok(out)
}

/// Generator, spectrum, plans and a Trotter run from the excited state.
pub fn cmd_example_lambda(atom: &LambdaAtom, t: f64, eps: f64) -> Result<String> {
    let g = atom.generator()?;
    let terms = spectral_split(&g)?;
    let dec = decompose_generator(&g)?;
    let rho0 = QuantumState::basis_state(3, crate::lambda_atom::EXCITED);
    let run = simulate(&g, &rho0, t, eps)?;
    let exact = apply_exact(&g, &rho0, t)?;
    let spectrum = terms
        .iter()
        .map(|term| Ok(json!({"lambda": real(term.lambda)?, "vector": complex_vector(&term.vector)?})))
        .collect::<Result<Vec<_>>>()?;
    canonical(&json!({
        "parameters": {
            "gamma1": real(atom.gamma1)?,
            "gamma2": real(atom.gamma2)?,
            "phi": real(atom.phi)?,
            "eta": real(atom.eta)?,
            "alpha": real(atom.alpha)?,
        },
        "generator": GeneratorDocument::from_generator(&g).to_json()?,
        "spectrum": spectrum,
        "plan": plan_to_json(&dec)?,
        "simulation": {
            "t": real(t)?,
            "epsilon": real(eps)?,
            "rho0": matrix(rho0.matrix())?,
            "rho": matrix(run.state.matrix())?,
            "oracle": matrix(exact.matrix())?,
            "trace_distance_to_oracle": real(trace_distance(run.state.matrix(), exact.matrix())?)?,
            "cost": cost_to_json(&run.report)?,
        },
    }))
}

fn emit(text: &str, out: Option<&Path>, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn exit_code(e: &Error) -> i32 {
    if e.is_input_error() {
        2
    } else {
        1
    }
}

fn execute(cli: Cli, stdout: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Validate { path } => {
            let report = cmd_validate(&path)?;
            emit(&canonical(&report.to_json()?)?, None, stdout)?;
            Ok(if report.valid { 0 } else { 1 })
        }
        Command::Decompose { path, out } => {
            emit(&cmd_decompose(&path)?, out.as_deref(), stdout)?;
            Ok(0)
        }
        Command::Simulate {
            request,
            t,
            eps,
            mode,
            out,
        } => {
            let mode = mode.as_deref().map(str::parse).transpose()?;
            emit(&cmd_simulate(&request, t, eps, mode)?, out.as_deref(), stdout)?;
            Ok(0)
        }
        Command::Cost {
            m,
            t,
            eps,
            l1,
            l2,
            sweep,
            out,
        } => {
            let args = CostArgs { m, t, eps, l1, l2 };
            let text = match sweep {
                Some(s) => cmd_cost_sweep(args, &s)?,
                None => cmd_cost(args)?,
            };
            emit(&text, out.as_deref(), stdout)?;
            Ok(0)
        }
        Command::ExampleLambda {
            gamma1,
            gamma2,
            phi,
            eta,
            alpha,
            t,
            eps,
            out,
        } => {
            let atom = LambdaAtom {
                gamma1,
                gamma2,
                phi,
                eta,
                alpha,
            };
            emit(&cmd_example_lambda(&atom, t, eps)?, out.as_deref(), stdout)?;
            Ok(0)
        }
    }
}

/// Parses `args` and runs the command; returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}
