use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use sympl4::gaussian::{
    bipartite_from_covariance, covariance, dispersions, kernel_apply_gaussian, OscillatorConfig, DEFAULT_GH_ORDER,
};
use sympl4::io::{
    read_trajectory_csv, trajectory_rows, write_trajectory_csv, CovarianceJson, LieJson, MatrixJson, PolymerJson,
};
use sympl4::polymer::{
    apply_bipartite_squeeze, apply_diag_squeeze, dispersion_laws, position_moments, Normalization, PositionMoments,
};
use sympl4::special_forms::{squeeze_generator, squeeze_matrix, squeeze_matrix_x, squeeze_trajectory, SqueezeParams};
use sympl4::symplectic::{
    bracket, build_m, exp_map, expm_taylor, lambda_pm, symplectic_eigenvalues, to_x_order, trace_power,
    ExpMethod, Ordering,
};
use sympl4::verify::{self, trajectory_metrics, VerifyOptions, ERRATA, TRAJECTORY_INITIAL};
use sympl4::{Error, Lie};

#[derive(Parser)]
#[command(name = "sympl4", version, about = "Closed-form Sp(4,R) exponentials, Gaussian covariances and polymer dispersions")]
struct Cli {
    /// Symplecticity tolerance for matrix input
    #[arg(long, global = true, env = "SYMPL4_TOL", default_value_t = 1e-10)]
    tol: f64,
    /// Pretty-print JSON output
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// exp((J⊕J)L) for a generator {"a","b","c"}
    Exp {
        #[command(flatten)]
        input: Input,
        /// Ordering of the returned matrix
        #[arg(long, value_enum, default_value = "y")]
        ordering: OrderArg,
    },
    /// Symplecticity and determinant of a matrix {"ordering","entries"}
    Check {
        #[command(flatten)]
        input: Input,
    },
    /// Lie bracket of {"x": L1, "y": L2}
    Bracket {
        #[command(flatten)]
        input: Input,
    },
    /// λ±, eigenvalues and power traces of exp((J⊕J)L)
    Eigen {
        #[command(flatten)]
        input: Input,
    },
    /// Two-mode squeeze matrix and its generator
    Squeeze {
        #[command(flatten)]
        sq: SqueezeArgs,
        #[arg(long, value_enum, default_value = "x")]
        ordering: OrderArg,
    },
    /// Covariance of the transformed vacuum
    Covariance {
        /// Matrix JSON file ("-" for stdin); Y-ordered input is converted
        #[arg(long, conflicts_with = "squeeze")]
        matrix: Option<PathBuf>,
        /// Squeeze parameters "r,phi"
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        squeeze: Option<Vec<f64>>,
        #[command(flatten)]
        osc: OscArgs,
        /// Also integrate the kernel with this Gauss-Hermite order and report the discrepancy
        #[arg(long, num_args = 0..=1, default_missing_value = "64")]
        quadrature: Option<usize>,
    },
    /// CSV of a rotated trajectory and its squeezed image
    Trajectory {
        #[command(flatten)]
        sq: SqueezeArgs,
        #[arg(long, default_value_t = sympl4::special_forms::DEFAULT_SAMPLES)]
        samples: usize,
        /// Initial point "q1,p1,q2,p2"
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        initial: Option<Vec<f64>>,
        /// Output file; CSV goes to stdout when absent
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Polymer state operations
    Polymer {
        #[command(subcommand)]
        op: PolymerOp,
    },
    /// Run the acceptance checks; exit 0 iff all pass
    Verify {
        #[arg(long, default_value_t = VerifyOptions::default().seed)]
        seed: u64,
        /// Emit a JSON result instead of the text table
        #[arg(long)]
        json: bool,
        #[arg(long, hide = true, default_value_t = 0.0)]
        inject_perturbation: f64,
    },
}

#[derive(Subcommand)]
enum PolymerOp {
    /// Position moments
    Moments {
        #[command(flatten)]
        p: PolymerArgs,
    },
    /// Point map x_j → e^{−r_j} x_j
    DiagSqueeze {
        #[command(flatten)]
        p: PolymerArgs,
        #[arg(long, allow_negative_numbers = true)]
        r1: f64,
        #[arg(long, allow_negative_numbers = true)]
        r2: f64,
    },
    /// Bipartite point map with hyperbolic mixing
    BipartiteSqueeze {
        #[command(flatten)]
        p: PolymerArgs,
        #[arg(long, allow_negative_numbers = true)]
        r: f64,
    },
    /// Before/after dispersion figures under the bipartite map
    Laws {
        #[command(flatten)]
        p: PolymerArgs,
        #[arg(long, allow_negative_numbers = true)]
        r: f64,
    },
}

#[derive(Args)]
struct Input {
    /// JSON input file ("-" for stdin)
    #[arg(long, conflicts_with = "json")]
    input: Option<PathBuf>,
    /// Inline JSON input
    #[arg(long)]
    json: Option<String>,
}

#[derive(Args)]
struct PolymerArgs {
    #[command(flatten)]
    input: Input,
    /// Rescale unnormalized states instead of rejecting them
    #[arg(long)]
    lenient: bool,
}

#[derive(Args)]
struct OscArgs {
    #[arg(long, default_value_t = 1.0)]
    l1: f64,
    #[arg(long, default_value_t = 1.0)]
    l2: f64,
    #[arg(long, default_value_t = 1.0)]
    hbar: f64,
}

#[derive(Args)]
struct SqueezeArgs {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    r: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    phi: f64,
    #[command(flatten)]
    osc: OscArgs,
}

impl SqueezeArgs {
    fn params(&self) -> sympl4::Result<SqueezeParams<f64>> {
        SqueezeParams::new(self.r, self.phi, self.osc.l1, self.osc.l2, self.osc.hbar)
    }
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum OrderArg {
    X,
    Y,
}

/// Successful command output: payload plus diagnostics.
struct Outcome {
    payload: Value,
    diagnostics: Vec<String>,
}

impl Outcome {
    fn new(payload: Value) -> Self {
        Self {
            payload,
            diagnostics: Vec::new(),
        }
    }
}

enum Reply {
    Json(Outcome),
    /// Already written to stdout; carries the exit code.
    Raw(ExitCode),
}

fn read_input(input: &Input) -> anyhow::Result<String> {
    match (&input.json, &input.input) {
        (Some(s), _) => Ok(s.clone()),
        (None, Some(p)) if p.as_os_str() == "-" => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
        (None, Some(p)) => std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
        (None, None) => bail!(Error::InvalidParameter("no input: pass --input PATH, --input - or --json".into())),
    }
}

fn parse<T: serde::de::DeserializeOwned>(input: &Input) -> anyhow::Result<T> {
    Ok(serde_json::from_str(&read_input(input)?)?)
}

fn moments_json(m: &PositionMoments<f64>) -> Value {
    // adding +0 turns a −0 mean into 0
    json!({
        "mean": [m.mean[0] + 0.0, m.mean[1] + 0.0],
        "second": m.second,
        "dispersion": m.dispersion,
        "covariance": m.covariance,
        "rescaled_by": m.rescaled_by,
    })
}

fn mode(lenient: bool) -> Normalization {
    if lenient {
        Normalization::Lenient
    } else {
        Normalization::Strict
    }
}

fn cmd_exp(input: &Input, ordering: OrderArg) -> anyhow::Result<Outcome> {
    let l = parse::<LieJson>(input)?.to_element()?;
    let res = exp_map(&l)?;
    let oracle = expm_taylor(&build_m(&l));
    let residual = res.matrix.entries().max_abs_diff(&oracle);
    let m = match ordering {
        OrderArg::Y => res.matrix,
        OrderArg::X => to_x_order(&res.matrix)?,
    };
    let mut out = Outcome::new(json!({
        "matrix": MatrixJson::from(&m),
        "method": res.method,
    }));
    out.diagnostics.push(format!("oracle residual {residual:.3e}"));
    if res.method == ExpMethod::OracleFallback {
        let code = lambda_pm(&l).err().map(|e| e.to_string()).unwrap_or_default();
        out.diagnostics.push(format!("ComplexEigenvalueRegime: {code}; returned the Taylor oracle"));
    }
    Ok(out)
}

fn cmd_check(input: &Input, tol: f64) -> anyhow::Result<Outcome> {
    let mj: MatrixJson = parse(input)?;
    let m = mj.to_matrix(tol)?;
    Ok(Outcome::new(json!({
        "ordering": m.ordering(),
        "symplectic_residual": m.symplectic_residual(),
        "det_error": m.det_error(),
        "tolerance": tol,
    })))
}

fn cmd_bracket(input: &Input) -> anyhow::Result<Outcome> {
    #[derive(serde::Deserialize)]
    struct Pair {
        x: LieJson,
        y: LieJson,
    }
    let p: Pair = parse(input)?;
    let (x, y) = (p.x.to_element()?, p.y.to_element()?);
    Ok(Outcome::new(json!(LieJson::from(&bracket(&x, &y)))))
}

fn cmd_eigen(input: &Input) -> anyhow::Result<Outcome> {
    let l: Lie = parse::<LieJson>(input)?.to_element()?;
    let ep = lambda_pm(&l)?;
    let traces = (1..=3).map(|n| trace_power(&l, n)).collect::<sympl4::Result<Vec<_>>>()?;
    let mut out = Outcome::new(json!({
        "lambda_plus": ep.lambda_plus,
        "lambda_minus": ep.lambda_minus,
        "delta": ep.delta,
        "traces": traces,
    }));
    match symplectic_eigenvalues(&l) {
        Ok(ev) => out.payload["eigenvalues"] = json!(ev),
        Err(e @ Error::EllipticSpectrum { .. }) => {
            out.payload["eigenvalues"] = Value::Null;
            out.diagnostics.push(format!("EllipticSpectrum: {e}"));
        }
        Err(e) => return Err(e.into()),
    }
    Ok(out)
}

fn cmd_squeeze(sq: &SqueezeArgs, ordering: OrderArg) -> anyhow::Result<Outcome> {
    let p = sq.params()?;
    let m = match ordering {
        OrderArg::X => squeeze_matrix_x(&p),
        OrderArg::Y => squeeze_matrix(&p),
    };
    Ok(Outcome::new(json!({
        "matrix": MatrixJson::from(&m),
        "generator": LieJson::from(&squeeze_generator(&p)),
    })))
}

fn cmd_covariance(
    matrix: Option<&PathBuf>,
    squeeze: Option<&[f64]>,
    osc: &OscArgs,
    quadrature: Option<usize>,
    tol: f64,
) -> anyhow::Result<Outcome> {
    let config = OscillatorConfig::new(osc.l1, osc.l2, osc.hbar)?;
    let m = match (matrix, squeeze) {
        (Some(path), _) => {
            let input = Input {
                input: Some(path.clone()),
                json: None,
            };
            let m = parse::<MatrixJson>(&input)?.to_matrix(tol)?;
            match m.ordering() {
                Ordering::X => m,
                Ordering::Y => to_x_order(&m)?,
            }
        }
        (None, Some(&[r, phi])) => squeeze_matrix_x(&SqueezeParams::new(r, phi, osc.l1, osc.l2, osc.hbar)?),
        (None, Some(_)) => bail!(Error::InvalidParameter("--squeeze takes r,phi".into())),
        // vacuum
        (None, None) => to_x_order(&sympl4::Sympl::identity(Ordering::Y))?,
    };
    let v = covariance(&m, &config)?;
    let b = bipartite_from_covariance(&v);
    let mut out = Outcome::new(json!({
        "covariance": CovarianceJson::from(&v),
        "dispersions": dispersions(&v),
        "heisenberg_products": v.heisenberg_products(),
        "williamson_eigenvalues": v.williamson_eigenvalues(),
        "bipartite": {
            "x_plus": b.x_plus,
            "x_minus": b.x_minus,
            "p_plus": b.p_plus,
            "p_minus": b.p_minus,
            "x_dispersion_sum": b.x_dispersion_sum(),
        },
    }));
    if let Some(order) = quadrature {
        let q = kernel_apply_gaussian(&m, &config, order.max(1))?;
        let disc = q.covariance.entries().max_abs_diff(v.entries());
        out.payload["quadrature"] = json!({
            "order": q.order,
            "norm": q.norm,
            "means": q.means,
            "moment_discrepancy": disc,
            "order_doubling_change": q.change,
        });
    }
    out.diagnostics.push(format!("X order (x1, x2, p1, p2); default quadrature order {DEFAULT_GH_ORDER}"));
    Ok(out)
}

fn cmd_trajectory(sq: &SqueezeArgs, samples: usize, initial: Option<&[f64]>, out: Option<&PathBuf>) -> anyhow::Result<Reply> {
    let p = sq.params()?;
    let init = match initial {
        Some(&[a, b, c, d]) => [a, b, c, d],
        Some(_) => bail!(Error::InvalidParameter("--initial takes q1,p1,q2,p2".into())),
        None => TRAJECTORY_INITIAL,
    };
    let rows = trajectory_rows(&squeeze_trajectory(&p, samples, init)?);
    let Some(path) = out else {
        write_trajectory_csv(&rows, BufWriter::new(io::stdout().lock()))?;
        return Ok(Reply::Raw(ExitCode::SUCCESS));
    };
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    write_trajectory_csv(&rows, BufWriter::new(file))?;
    // re-read what was written so the reported figures describe the file
    let parsed = read_trajectory_csv(File::open(path)?)?;
    let (defect, ratio) = trajectory_metrics(&parsed);
    Ok(Reply::Json(Outcome::new(json!({
        "path": path,
        "rows": parsed.len(),
        "two_form_defect": defect,
        "collective_axis_ratio": ratio,
    }))))
}

fn cmd_polymer(op: &PolymerOp) -> anyhow::Result<Outcome> {
    let state = |p: &PolymerArgs| -> anyhow::Result<sympl4::Polymer> { Ok(parse::<PolymerJson>(&p.input)?.to_state()?) };
    Ok(match op {
        PolymerOp::Moments { p } => Outcome::new(moments_json(&position_moments(&state(p)?, mode(p.lenient))?)),
        PolymerOp::DiagSqueeze { p, r1, r2 } => {
            let s = state(p)?;
            let before = position_moments(&s, mode(p.lenient))?;
            let t = apply_diag_squeeze(&s, *r1, *r2);
            let after = position_moments(&t, mode(p.lenient))?;
            Outcome::new(json!({
                "state": PolymerJson::from(&t),
                "before": moments_json(&before),
                "after": moments_json(&after),
                "dispersion_ratio": [after.dispersion[0] / before.dispersion[0], after.dispersion[1] / before.dispersion[1]],
            }))
        }
        PolymerOp::BipartiteSqueeze { p, r } => {
            let t = apply_bipartite_squeeze(&state(p)?, *r);
            Outcome::new(json!({
                "state": PolymerJson::from(&t),
                "after": moments_json(&position_moments(&t, mode(p.lenient))?),
            }))
        }
        PolymerOp::Laws { p, r } => {
            let rep = dispersion_laws(&state(p)?, *r, mode(p.lenient))?;
            let mut out = Outcome::new(json!({
                "r": rep.r,
                "difference": rep.difference,
                "sum": rep.sum,
                "covariance": rep.covariance,
                "predicted_sum": rep.predicted_sum,
                "pure_symmetric": rep.pure_symmetric,
                "pure_symmetric_sum": rep.pure_symmetric_sum,
            }));
            if !rep.pure_symmetric {
                out.diagnostics
                    .push("state is not a product of symmetric factors; only predicted_sum applies".into());
            }
            out
        }
    })
}

fn cmd_verify(seed: u64, json_out: bool, eps: f64) -> Reply {
    let opts = VerifyOptions {
        seed,
        exp_perturbation: eps,
    };
    let results = verify::run_all(&opts);
    let all = results.iter().all(|o| o.passed);
    let code = if all { ExitCode::SUCCESS } else { ExitCode::FAILURE };
    if json_out {
        let mut out = Outcome::new(json!({ "all_passed": all, "criteria": results }));
        out.diagnostics = ERRATA.iter().map(|(id, text)| format!("{id}: {text}")).collect();
        let status = if all { "ok" } else { "error" };
        let mut v = json!({ "status": status, "payload": out.payload, "diagnostics": out.diagnostics });
        if !all {
            v["code"] = json!("VerificationFailed");
        }
        println!("{v}");
        return Reply::Raw(code);
    }
    let mut stdout = io::stdout().lock();
    for o in &results {
        let _ = writeln!(stdout, "{}", o.line());
    }
    let passed = results.iter().filter(|o| o.passed).count();
    let _ = writeln!(stdout, "{passed}/{} criteria passed", results.len());
    let _ = writeln!(stdout, "errata:");
    for (id, text) in ERRATA {
        let _ = writeln!(stdout, "  {id}: {text}");
    }
    Reply::Raw(code)
}

fn error_code(e: &anyhow::Error) -> &'static str {
    if let Some(e) = e.downcast_ref::<Error>() {
        e.code()
    } else if e.downcast_ref::<serde_json::Error>().is_some() {
        "ParseError"
    } else if e.downcast_ref::<io::Error>().is_some() {
        "IoError"
    } else {
        "Error"
    }
}

fn run(cli: &Cli) -> anyhow::Result<Reply> {
    let json = |o: anyhow::Result<Outcome>| o.map(Reply::Json);
    match &cli.cmd {
        Command::Exp { input, ordering } => json(cmd_exp(input, *ordering)),
        Command::Check { input } => json(cmd_check(input, cli.tol)),
        Command::Bracket { input } => json(cmd_bracket(input)),
        Command::Eigen { input } => json(cmd_eigen(input)),
        Command::Squeeze { sq, ordering } => json(cmd_squeeze(sq, *ordering)),
        Command::Covariance {
            matrix,
            squeeze,
            osc,
            quadrature,
        } => json(cmd_covariance(matrix.as_ref(), squeeze.as_deref(), osc, *quadrature, cli.tol)),
        Command::Trajectory {
            sq,
            samples,
            initial,
            out,
        } => cmd_trajectory(sq, *samples, initial.as_deref(), out.as_ref()),
        Command::Polymer { op } => json(cmd_polymer(op)),
        Command::Verify {
            seed,
            json,
            inject_perturbation,
        } => Ok(cmd_verify(*seed, *json, *inject_perturbation)),
    }
}

fn emit(v: &Value, pretty: bool) {
    let s = if pretty {
        serde_json::to_string_pretty(v)
    } else {
        serde_json::to_string(v)
    };
    println!("{}", s.expect("JSON values always serialize"));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Reply::Raw(code)) => code,
        Ok(Reply::Json(o)) => {
            emit(
                &json!({ "status": "ok", "payload": o.payload, "diagnostics": o.diagnostics }),
                cli.pretty,
            );
            ExitCode::SUCCESS
        }
        Err(e) => {
            emit(
                &json!({
                    "status": "error",
                    "code": error_code(&e),
                    "payload": { "message": format!("{e:#}") },
                    "diagnostics": [],
                }),
                cli.pretty,
            );
            ExitCode::FAILURE
        }
    }
}
