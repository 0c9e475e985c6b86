//! Command line front end: basis and norm tables, verification suites,
//! weight sampling on the unit circle, and the normalization and transform
//! experiments.
//!
//! Exit codes: 0 on success, 1 when a verification fails or a computation
//! cannot run, 2 on usage errors.

use std::fs::File;
use std::io::Write;
use std::str::FromStr;

use b2dunkl::algebra::{dunkl, group_act, q, GroupElement, GROUP};
use b2dunkl::forms::{exp_half_laplacian, pair_gauss, pair_tau};
use b2dunkl::harmonic::{basis_rows, build_basis, index_count, norm_pi};
use b2dunkl::kernel::kernel_e_rows;
use b2dunkl::quad::{estimate_c, fourier_eigen_check, gaussian_form_gram, LaguerreArg, QuadSpec};
use b2dunkl::weight::{
    k_matrix, k_pde_residual, l_matrix, mat2_mul, mat2_transpose, weight_sample, CMode, Precision,
    WeightParams,
};
use b2dunkl::{Params, Q, VPoly};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "b2dunkl",
    version,
    about = "Vector-valued Dunkl calculus for the B2 reflection group"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the harmonic basis with types and norms
    Basis(TableArgs),
    /// Print the closed-form norm table
    Norms(TableArgs),
    /// Run a named verification suite and report pass/fail
    Verify(VerifyArgs),
    /// Sample the matrix weight on the unit circle as CSV
    WeightSample(WeightSampleArgs),
    /// Measure the weight normalization constant against its closed form
    EstimateC(EstimateCArgs),
    /// Transform one Gaussian-dressed eigenfunction and report the residual
    FourierCheck(FourierCheckArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum PrecisionArg {
    Double,
    Extended,
}

impl PrecisionArg {
    fn to_core(self) -> Precision {
        match self {
            PrecisionArg::Double => Precision::Double,
            PrecisionArg::Extended => Precision::Extended,
        }
    }
}

#[derive(Args)]
struct TableArgs {
    /// Multiplicity of the diagonal mirrors, an exact rational like 1/4
    #[arg(long, allow_hyphen_values = true)]
    k0: String,
    /// Multiplicity of the axis mirrors, an exact rational like 1/8
    #[arg(long, allow_hyphen_values = true)]
    k1: String,
    /// Largest degree to tabulate
    #[arg(long, default_value_t = 6)]
    nmax: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write to this file instead of stdout
    #[arg(long)]
    out: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteName {
    Algebra,
    Harmonic,
    Forms,
    Kernel,
    Weight,
    Gaussian,
    Fourier,
}

#[derive(Args)]
struct VerifyArgs {
    /// Which suite to run
    #[arg(value_enum)]
    suite: SuiteName,
    /// Exact rational for algebra/harmonic/forms/kernel/gaussian/fourier,
    /// decimal accepted for weight
    #[arg(long, allow_hyphen_values = true)]
    k0: String,
    #[arg(long, allow_hyphen_values = true)]
    k1: String,
    /// Degree ceiling for the exact suites
    #[arg(long, default_value_t = 6)]
    nmax: u32,
    /// Tolerance override for the floating-point suites
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct WeightSampleArgs {
    #[arg(long, allow_negative_numbers = true)]
    k0: f64,
    #[arg(long, allow_negative_numbers = true)]
    k1: f64,
    /// Number of midpoint samples over the full circle
    #[arg(long, default_value_t = 64)]
    steps: u32,
    /// Emit the Hermitian-conjugated form sigma K sigma instead of K
    #[arg(long)]
    conjugated: bool,
    /// Normalization constant: "conjecture", "unit", or a number
    #[arg(long, default_value = "conjecture")]
    c: String,
    #[arg(long, value_enum, default_value_t = PrecisionArg::Double)]
    precision: PrecisionArg,
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct EstimateCArgs {
    #[arg(long, allow_negative_numbers = true)]
    k0: f64,
    #[arg(long, allow_negative_numbers = true)]
    k1: f64,
    /// Largest allowed |estimate - closed form|
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = PrecisionArg::Double)]
    precision: PrecisionArg,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct FourierCheckArgs {
    /// Exact rational multiplicities
    #[arg(long, allow_hyphen_values = true)]
    k0: String,
    #[arg(long, allow_hyphen_values = true)]
    k1: String,
    /// Radial (Laguerre) index of the eigenfunction
    #[arg(long, default_value_t = 0)]
    m: u32,
    /// Harmonic degree
    #[arg(long, default_value_t = 1)]
    n: u32,
    /// Harmonic index, 1-based
    #[arg(long, default_value_t = 1)]
    i: u8,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.5)]
    y1: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = -0.3)]
    y2: f64,
    /// Kernel series cutoff
    #[arg(long, default_value_t = 40)]
    trunc_n: u32,
    /// Largest allowed residual
    #[arg(long, default_value_t = 1e-4)]
    tol: f64,
    /// Dress with Laguerre polynomials in half the squared radius instead
    /// of the full squared radius
    #[arg(long)]
    half_argument: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    out: Option<String>,
}

enum AppError {
    Usage(String),
    Run(String),
}

type CliResult<T> = Result<T, AppError>;

fn usage(msg: impl Into<String>) -> AppError {
    AppError::Usage(msg.into())
}

fn run_err(e: impl std::fmt::Display) -> AppError {
    AppError::Run(e.to_string())
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    let code = match dispatch(cli) {
        Ok(code) => code,
        Err(AppError::Usage(m)) => {
            eprintln!("error: {m}");
            2
        }
        Err(AppError::Run(m)) => {
            eprintln!("error: {m}");
            1
        }
    };
    std::process::exit(code);
}

fn dispatch(cli: Cli) -> CliResult<i32> {
    match cli.cmd {
        Cmd::Basis(a) => cmd_table(a, true),
        Cmd::Norms(a) => cmd_table(a, false),
        Cmd::Verify(a) => cmd_verify(a),
        Cmd::WeightSample(a) => cmd_weight_sample(a),
        Cmd::EstimateC(a) => cmd_estimate_c(a),
        Cmd::FourierCheck(a) => cmd_fourier_check(a),
    }
}

fn parse_exact(flag: &str, s: &str) -> CliResult<Q> {
    Q::from_str(s).map_err(|_| {
        usage(format!(
            "--{flag} expects an exact rational like 3/10 or -1/4, got '{s}'"
        ))
    })
}

fn parse_decimal(flag: &str, s: &str) -> CliResult<f64> {
    if let Ok(v) = s.parse::<f64>() {
        return Ok(v);
    }
    if let Ok(r) = Q::from_str(s) {
        if let Some(v) = r.to_f64() {
            return Ok(v);
        }
    }
    Err(usage(format!("--{flag} expects a number, got '{s}'")))
}

fn writer(out: &Option<String>) -> CliResult<Box<dyn Write>> {
    match out {
        Some(path) => Ok(Box::new(File::create(path).map_err(run_err)?)),
        None => Ok(Box::new(std::io::stdout())),
    }
}

// ---------------------------------------------------------------- tables

#[derive(Serialize)]
struct NormRow {
    n: u32,
    i: u8,
    #[serde(rename = "type")]
    type_label: &'static str,
    nu: String,
}

fn cmd_table(args: TableArgs, with_polys: bool) -> CliResult<i32> {
    let k0 = parse_exact("k0", &args.k0)?;
    let k1 = parse_exact("k1", &args.k1)?;
    let params = Params::new(k0, k1);
    let entries = build_basis(args.nmax, &params);
    let mut w = writer(&args.out)?;
    match (args.format, with_polys) {
        (Format::Json, true) => {
            let doc = serde_json::json!({
                "k0": args.k0,
                "k1": args.k1,
                "nmax": args.nmax,
                "entries": entries,
            });
            serde_json::to_writer_pretty(&mut w, &doc).map_err(run_err)?;
            writeln!(w).map_err(run_err)?;
        }
        (Format::Json, false) => {
            let rows: Vec<NormRow> = entries
                .iter()
                .map(|e| NormRow {
                    n: e.n,
                    i: e.i,
                    type_label: e.type_label.as_str(),
                    nu: e.nu.to_string(),
                })
                .collect();
            let doc = serde_json::json!({
                "k0": args.k0,
                "k1": args.k1,
                "nmax": args.nmax,
                "entries": rows,
            });
            serde_json::to_writer_pretty(&mut w, &doc).map_err(run_err)?;
            writeln!(w).map_err(run_err)?;
        }
        (Format::Text, with_polys) => {
            writeln!(w, "# k0 = {}, k1 = {}, nmax = {}", args.k0, args.k1, args.nmax)
                .map_err(run_err)?;
            for e in &entries {
                if with_polys {
                    let poly = serde_json::to_string(&e.poly).map_err(run_err)?;
                    writeln!(
                        w,
                        "n={} i={} type={} nu={} poly={poly}",
                        e.n,
                        e.i,
                        e.type_label.as_str(),
                        e.nu
                    )
                    .map_err(run_err)?;
                } else {
                    writeln!(
                        w,
                        "n={} i={} type={} nu={}",
                        e.n,
                        e.i,
                        e.type_label.as_str(),
                        e.nu
                    )
                    .map_err(run_err)?;
                }
            }
        }
    }
    Ok(0)
}

// ---------------------------------------------------------------- verify

#[derive(Serialize)]
struct Report {
    test: String,
    params: String,
    tolerance: f64,
    measured: f64,
    pass: bool,
}

impl Report {
    fn exact(test: &str, params: &str, failures: usize) -> Report {
        Report {
            test: test.to_string(),
            params: params.to_string(),
            tolerance: 0.0,
            measured: failures as f64,
            pass: failures == 0,
        }
    }

    fn measured(test: &str, params: &str, tolerance: f64, measured: f64) -> Report {
        Report {
            test: test.to_string(),
            params: params.to_string(),
            tolerance,
            measured,
            pass: measured <= tolerance,
        }
    }
}

fn emit_reports(reports: &[Report], format: Format, out: &Option<String>) -> CliResult<i32> {
    let mut w = writer(out)?;
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut w, reports).map_err(run_err)?;
            writeln!(w).map_err(run_err)?;
        }
        Format::Text => {
            for r in reports {
                writeln!(
                    w,
                    "{} {} [{}]: measured = {:.6e}, tolerance = {:.1e}",
                    if r.pass { "PASS" } else { "FAIL" },
                    r.test,
                    r.params,
                    r.measured,
                    r.tolerance
                )
                .map_err(run_err)?;
            }
        }
    }
    Ok(if reports.iter().all(|r| r.pass) { 0 } else { 1 })
}

fn probe_poly() -> VPoly {
    VPoly::monomial(3, 0, [q(1, 1), q(-1, 2)])
        .add(&VPoly::monomial(1, 2, [q(2, 3), q(1, 1)]))
        .add(&VPoly::monomial(0, 1, [q(0, 1), q(3, 4)]))
        .add(&VPoly::monomial(0, 0, [q(1, 5), q(-2, 1)]))
}

fn probe_poly_second() -> VPoly {
    VPoly::monomial(2, 1, [q(1, 2), q(1, 3)])
        .add(&VPoly::monomial(4, 0, [q(-1, 1), q(0, 1)]))
        .add(&VPoly::monomial(1, 1, [q(1, 1), q(1, 1)]))
}

fn cmd_verify(args: VerifyArgs) -> CliResult<i32> {
    let reports = match args.suite {
        SuiteName::Algebra => {
            let params = exact_params(&args)?;
            suite_algebra(&params, &param_str(&args))
        }
        SuiteName::Harmonic => {
            let params = exact_params(&args)?;
            suite_harmonic(&params, &param_str(&args), args.nmax)
        }
        SuiteName::Forms => {
            let params = exact_params(&args)?;
            suite_forms(&params, &param_str(&args), args.nmax.min(4))
        }
        SuiteName::Kernel => {
            let params = exact_params(&args)?;
            suite_kernel(&params, &param_str(&args), args.nmax.min(4))?
        }
        SuiteName::Weight => {
            let k0 = parse_decimal("k0", &args.k0)?;
            let k1 = parse_decimal("k1", &args.k1)?;
            suite_weight(k0, k1, &param_str(&args), args.tol)?
        }
        SuiteName::Gaussian => {
            let params = exact_params(&args)?;
            suite_gaussian(&params, &param_str(&args), args.tol)?
        }
        SuiteName::Fourier => {
            let params = exact_params(&args)?;
            suite_fourier(&params, &param_str(&args), args.tol)?
        }
    };
    emit_reports(&reports, args.format, &args.out)
}

fn exact_params(args: &VerifyArgs) -> CliResult<Params> {
    Ok(Params::new(
        parse_exact("k0", &args.k0)?,
        parse_exact("k1", &args.k1)?,
    ))
}

fn param_str(args: &VerifyArgs) -> String {
    format!("k0={} k1={}", args.k0, args.k1)
}

fn suite_algebra(params: &Params, pstr: &str) -> Vec<Report> {
    let f = probe_poly();
    let commute = dunkl(1, &dunkl(2, &f, params), params)
        != dunkl(2, &dunkl(1, &f, params), params);
    let mut closure_failures = 0;
    for a in GROUP {
        for b in GROUP {
            let c = GroupElement::compose(a, b);
            if group_act(a, &group_act(b, &f)) != group_act(c, &f) {
                closure_failures += 1;
            }
        }
    }
    let (u1, u2) = (q(2, 3), q(-1, 5));
    let mut equiv_failures = 0;
    for w in GROUP {
        let wf = group_act(w, &f);
        let lhs = dunkl(1, &wf, params)
            .scale(&u1)
            .add(&dunkl(2, &wf, params).scale(&u2));
        let m = w.matrix();
        let mq = |r: usize, c: usize| q(m[r][c] as i64, 1);
        let v1 = u1.clone() * mq(0, 0) + u2.clone() * mq(1, 0);
        let v2 = u1.clone() * mq(0, 1) + u2.clone() * mq(1, 1);
        let rhs = group_act(
            w,
            &dunkl(1, &f, params)
                .scale(&v1)
                .add(&dunkl(2, &f, params).scale(&v2)),
        );
        if lhs != rhs {
            equiv_failures += 1;
        }
    }
    vec![
        Report::exact("dunkl-commutation", pstr, commute as usize),
        Report::exact("group-closure", pstr, closure_failures),
        Report::exact("directional-equivariance", pstr, equiv_failures),
    ]
}

fn suite_harmonic(params: &Params, pstr: &str, nmax: u32) -> Vec<Report> {
    use b2dunkl::algebra::laplacian;
    let rows = basis_rows(nmax, params);
    let mut laplace_failures = 0;
    let mut norm_failures = 0;
    for n in 0..=nmax {
        let cnt = index_count(n) as usize;
        for i in 0..cnt {
            if laplacian(&rows[n as usize][i], params) != VPoly::zero() {
                laplace_failures += 1;
            }
            for j in 0..cnt {
                let got = pair_tau(&rows[n as usize][i], &rows[n as usize][j], params);
                let want = if i == j {
                    norm_pi(n, (i + 1) as u8, params)
                } else {
                    Q::from_integer(0.into())
                };
                if got != want {
                    norm_failures += 1;
                }
            }
        }
    }
    vec![
        Report::exact("laplacian-annihilation", pstr, laplace_failures),
        Report::exact("pairing-norms", pstr, norm_failures),
    ]
}

fn suite_forms(params: &Params, pstr: &str, nmax: u32) -> Vec<Report> {
    let f = probe_poly();
    let g = probe_poly_second();
    let mut adjoint_failures = 0;
    for (axis, xf) in [(1usize, f.mul_monomial(1, 0)), (2, f.mul_monomial(0, 1))] {
        if pair_tau(&xf, &g, params) != pair_tau(&f, &dunkl(axis, &g, params), params) {
            adjoint_failures += 1;
        }
    }
    let rows = basis_rows(nmax, params);
    let mut cross_failures = 0;
    for n in 0..=nmax {
        for i in 0..index_count(n) as usize {
            let p = &rows[n as usize][i];
            let cross = pair_gauss(p, &p.mul_rsq_pow(1), params);
            let want = q(2 * (n as i64 + 1), 1) * norm_pi(n, (i + 1) as u8, params);
            if cross != want {
                cross_failures += 1;
            }
        }
    }
    let dressed = exp_half_laplacian(&f, params, false);
    let inversion = exp_half_laplacian(&dressed, params, true) != f;
    vec![
        Report::exact("pairing-adjointness", pstr, adjoint_failures),
        Report::exact("radial-cross-pairing", pstr, cross_failures),
        Report::exact("dressing-inversion", pstr, inversion as usize),
    ]
}

fn suite_kernel(params: &Params, pstr: &str, nmax: u32) -> CliResult<Vec<Report>> {
    let y = [q(2, 3), q(-1, 5)];
    let rows = basis_rows(nmax, params);
    let mut reproduction_failures = 0;
    for n in 0..=nmax {
        let erows = kernel_e_rows(n, &y, params).map_err(run_err)?;
        let mut family: Vec<VPoly> = (0..index_count(n) as usize)
            .map(|i| rows[n as usize][i].clone())
            .collect();
        if n >= 2 {
            for i in 0..index_count(n - 2) as usize {
                family.push(rows[(n - 2) as usize][i].mul_rsq_pow(1));
            }
        }
        for f in &family {
            let want = f.eval_q(&y);
            for l in 0..2 {
                if pair_tau(&erows[l], f, params) != want[l] {
                    reproduction_failures += 1;
                }
            }
        }
    }
    let mut intertwining_failures = 0;
    for n in 1..=nmax.min(3) {
        let hi = kernel_e_rows(n, &y, params).map_err(run_err)?;
        let lo = kernel_e_rows(n - 1, &y, params).map_err(run_err)?;
        for l in 0..2 {
            for axis in 1..=2usize {
                let lhs = dunkl(axis, &hi[l], params);
                let rhs = lo[l].scale(&y[axis - 1]);
                if lhs != rhs {
                    intertwining_failures += 1;
                }
            }
        }
    }
    Ok(vec![
        Report::exact("kernel-reproduction", pstr, reproduction_failures),
        Report::exact("kernel-intertwining", pstr, intertwining_failures),
    ])
}

fn suite_weight(k0: f64, k1: f64, pstr: &str, tol: Option<f64>) -> CliResult<Vec<Report>> {
    let wp = WeightParams::new(k0, k1, CMode::Conjecture).map_err(run_err)?;
    let mut det_dev = 0.0f64;
    for j in 0..100 {
        let u = 0.05 + 0.9 * (j as f64 + 0.5) / 100.0;
        let l = l_matrix(u, &wp).map_err(run_err)?;
        det_dev = det_dev.max((l[0][0] * l[1][1] - l[0][1] * l[1][0] - 1.0).abs());
    }
    let mut pde_res = 0.0f64;
    for jr in 0..4 {
        let r = 0.7 + 0.2 * jr as f64;
        for ja in 0..5 {
            let th = 0.12 + (ja as f64 + 0.5) * 0.11;
            let x = [r * th.cos(), r * th.sin()];
            pde_res = pde_res.max(k_pde_residual(x, &wp).map_err(run_err)?);
        }
    }
    let mut equiv_dev = 0.0f64;
    for x in [[0.9, 0.2], [0.4, 1.1], [-0.7, 0.33]] {
        let kx = k_matrix(x, &wp).map_err(run_err)?;
        for w in GROUP {
            let xw = w.apply_point(x);
            let got = k_matrix(xw, &wp).map_err(run_err)?;
            let m = w.matrix_f64();
            let want = mat2_mul(&mat2_mul(&mat2_transpose(&m), &kx), &m);
            for r in 0..2 {
                for c in 0..2 {
                    equiv_dev = equiv_dev.max((got[r][c] - want[r][c]).abs());
                }
            }
        }
    }
    Ok(vec![
        Report::measured("det-l", pstr, tol.unwrap_or(1e-10), det_dev),
        Report::measured("pde-residual", pstr, tol.unwrap_or(1e-6), pde_res),
        Report::measured("group-equivariance", pstr, tol.unwrap_or(1e-10), equiv_dev),
    ])
}

fn suite_gaussian(params: &Params, pstr: &str, tol: Option<f64>) -> CliResult<Vec<Report>> {
    let k0 = params.k0.to_f64().ok_or_else(|| usage("k0 out of range"))?;
    let k1 = params.k1.to_f64().ok_or_else(|| usage("k1 out of range"))?;
    let wp = WeightParams::new(k0, k1, CMode::Conjecture).map_err(run_err)?;
    let rows = basis_rows(2, params);
    let mut family = Vec::new();
    for n in 0..=2u32 {
        for i in 0..index_count(n) as usize {
            family.push(rows[n as usize][i].clone());
            family.push(rows[n as usize][i].mul_rsq_pow(1));
        }
    }
    let gram = gaussian_form_gram(&family, &family, &wp, &QuadSpec::default()).map_err(run_err)?;
    let dressed: Vec<VPoly> = family
        .iter()
        .map(|f| exp_half_laplacian(f, params, false))
        .collect();
    let mut max_rel = 0.0f64;
    for (fi, ef) in dressed.iter().enumerate() {
        for (gi, eg) in dressed.iter().enumerate() {
            let exact = pair_tau(ef, eg, params)
                .to_f64()
                .ok_or_else(|| run_err("pairing overflowed f64"))?;
            max_rel = max_rel.max((gram[fi][gi] - exact).abs() / exact.abs().max(1.0));
        }
    }
    Ok(vec![Report::measured(
        "gram-match",
        pstr,
        tol.unwrap_or(1e-8),
        max_rel,
    )])
}

fn suite_fourier(params: &Params, pstr: &str, tol: Option<f64>) -> CliResult<Vec<Report>> {
    let k0 = params.k0.to_f64().ok_or_else(|| usage("k0 out of range"))?;
    let k1 = params.k1.to_f64().ok_or_else(|| usage("k1 out of range"))?;
    let wp = WeightParams::new(k0, k1, CMode::Conjecture).map_err(run_err)?;
    let spec = QuadSpec {
        angular_tol: 1e-9,
        max_levels: 12,
        trunc_n: 30,
    };
    let y = [0.5, -0.3];
    let tol = tol.unwrap_or(1e-4);
    let mut max_res = 0.0f64;
    let mut warnings = 0usize;
    for (m, n) in [(0u32, 0u32), (0, 1), (0, 2), (1, 0)] {
        for i in 1..=index_count(n) {
            let chk = fourier_eigen_check(m, n, i, y, params, &wp, &spec, LaguerreArg::Full)
                .map_err(run_err)?;
            max_res = max_res.max(chk.residual);
            warnings += chk.truncation_warning as usize;
        }
    }
    let mut reports = vec![Report::measured("eigen-residual", pstr, tol, max_res)];
    reports.push(Report::exact("truncation-adequate", pstr, warnings));
    Ok(reports)
}

// ---------------------------------------------------------- weight-sample

fn cmd_weight_sample(args: WeightSampleArgs) -> CliResult<i32> {
    if args.steps == 0 {
        return Err(usage("--steps must be at least 1"));
    }
    let c_mode = match args.c.as_str() {
        "conjecture" => CMode::Conjecture,
        "unit" => CMode::Unit,
        other => CMode::Numeric(
            other
                .parse::<f64>()
                .map_err(|_| usage(format!("--c expects 'conjecture', 'unit', or a number, got '{other}'")))?,
        ),
    };
    let wp = WeightParams::new(args.k0, args.k1, c_mode)
        .map_err(run_err)?
        .with_precision(args.precision.to_core());
    let grid: Vec<f64> = (0..args.steps)
        .map(|j| (j as f64 + 0.5) * std::f64::consts::TAU / args.steps as f64)
        .collect();
    let rows = weight_sample(&grid, &wp, args.conjugated).map_err(run_err)?;
    let mut w = writer(&args.out)?;
    writeln!(w, "# b2dunkl weight-sample").map_err(run_err)?;
    writeln!(w, "# k0 = {}", args.k0).map_err(run_err)?;
    writeln!(w, "# k1 = {}", args.k1).map_err(run_err)?;
    writeln!(w, "# c = {:.16e} ({})", wp.c(), args.c).map_err(run_err)?;
    writeln!(w, "# conjugated = {}", args.conjugated).map_err(run_err)?;
    writeln!(
        w,
        "# steps = {}, theta_j = (j + 1/2) 2 pi / steps; mirror hits left empty",
        args.steps
    )
    .map_err(run_err)?;
    let mut csvw = csv::Writer::from_writer(w);
    csvw.write_record(["theta", "k11", "k12", "k22"])
        .map_err(run_err)?;
    for row in &rows {
        match row.entries {
            Some((k11, k12, k22)) => csvw
                .write_record([
                    format!("{:.16e}", row.theta),
                    format!("{k11:.16e}"),
                    format!("{k12:.16e}"),
                    format!("{k22:.16e}"),
                ])
                .map_err(run_err)?,
            None => csvw
                .write_record([format!("{:.16e}", row.theta), String::new(), String::new(), String::new()])
                .map_err(run_err)?,
        }
    }
    csvw.flush().map_err(run_err)?;
    Ok(0)
}

// ------------------------------------------------------------ estimate-c

#[derive(Serialize)]
struct CReport {
    test: &'static str,
    params: String,
    tolerance: f64,
    estimate: f64,
    conjecture: f64,
    measured: f64,
    pass: bool,
}

fn cmd_estimate_c(args: EstimateCArgs) -> CliResult<i32> {
    let spec = QuadSpec::default();
    let est = estimate_c(args.k0, args.k1, &spec).map_err(run_err)?;
    let report = CReport {
        test: "estimate-c",
        params: format!("k0={} k1={}", args.k0, args.k1),
        tolerance: args.tol,
        estimate: est.estimate,
        conjecture: est.conjecture,
        measured: est.abs_diff,
        pass: est.abs_diff <= args.tol,
    };
    let mut w = writer(&args.out)?;
    match args.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut w, &report).map_err(run_err)?;
            writeln!(w).map_err(run_err)?;
        }
        Format::Text => {
            writeln!(
                w,
                "{} estimate-c [{}]: estimate = {:.15e}, closed form = {:.15e}, |diff| = {:.3e} (tolerance {:.1e})",
                if report.pass { "PASS" } else { "FAIL" },
                report.params,
                report.estimate,
                report.conjecture,
                report.measured,
                report.tolerance
            )
            .map_err(run_err)?;
        }
    }
    Ok(if report.pass { 0 } else { 1 })
}

// ---------------------------------------------------------- fourier-check

#[derive(Serialize)]
struct FourierReport {
    test: &'static str,
    params: String,
    m: u32,
    n: u32,
    i: u8,
    y: [f64; 2],
    laguerre_argument: &'static str,
    tolerance: f64,
    measured: f64,
    tail_estimate: f64,
    truncation_warning: bool,
    lhs: [[f64; 2]; 2],
    rhs: [[f64; 2]; 2],
    pass: bool,
}

fn cmd_fourier_check(args: FourierCheckArgs) -> CliResult<i32> {
    let params = Params::new(parse_exact("k0", &args.k0)?, parse_exact("k1", &args.k1)?);
    if args.i == 0 || args.i > index_count(args.n) {
        return Err(usage(format!(
            "--i must lie in 1..={} for degree {}",
            index_count(args.n),
            args.n
        )));
    }
    let k0 = params.k0.to_f64().ok_or_else(|| usage("k0 out of range"))?;
    let k1 = params.k1.to_f64().ok_or_else(|| usage("k1 out of range"))?;
    let wp = WeightParams::new(k0, k1, CMode::Conjecture).map_err(run_err)?;
    let spec = QuadSpec {
        angular_tol: 1e-9,
        max_levels: 12,
        trunc_n: args.trunc_n,
    };
    let convention = if args.half_argument {
        LaguerreArg::Half
    } else {
        LaguerreArg::Full
    };
    let chk = fourier_eigen_check(
        args.m,
        args.n,
        args.i,
        [args.y1, args.y2],
        &params,
        &wp,
        &spec,
        convention,
    )
    .map_err(run_err)?;
    let report = FourierReport {
        test: "fourier-check",
        params: format!("k0={} k1={}", args.k0, args.k1),
        m: args.m,
        n: args.n,
        i: args.i,
        y: [args.y1, args.y2],
        laguerre_argument: if args.half_argument { "half" } else { "full" },
        tolerance: args.tol,
        measured: chk.residual,
        tail_estimate: chk.tail_estimate,
        truncation_warning: chk.truncation_warning,
        lhs: [[chk.lhs[0].re, chk.lhs[0].im], [chk.lhs[1].re, chk.lhs[1].im]],
        rhs: [[chk.rhs[0].re, chk.rhs[0].im], [chk.rhs[1].re, chk.rhs[1].im]],
        pass: chk.residual <= args.tol && !chk.truncation_warning,
    };
    let mut w = writer(&args.out)?;
    match args.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut w, &report).map_err(run_err)?;
            writeln!(w).map_err(run_err)?;
        }
        Format::Text => {
            writeln!(
                w,
                "{} fourier-check [{} m={} n={} i={} y=({}, {})]: residual = {:.3e} \
                 (tolerance {:.1e}), tail = {:.3e}, phase target (-i)^(n+2m), {} argument",
                if report.pass { "PASS" } else { "FAIL" },
                report.params,
                args.m,
                args.n,
                args.i,
                args.y1,
                args.y2,
                report.measured,
                report.tolerance,
                report.tail_estimate,
                report.laguerre_argument
            )
            .map_err(run_err)?;
        }
    }
    Ok(if report.pass { 0 } else { 1 })
}
