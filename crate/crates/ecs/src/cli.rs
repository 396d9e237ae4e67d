//! Command-line front end.
//!
//! Exit codes: 0 success, 1 other failure, 2 configuration error,
//! 3 resonance (the offending root vector is printed), 4 disagreement between
//! algorithms (a diff is printed).

use std::fmt::Display;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ecs_core::eigenfunction::{compute_alpha_table, corollary_residual, default_window};
use ecs_core::eigenvalue::{
    eigenvalue_from_table_lagrange, eigenvalue_via_fixed_point, eigenvalue_via_q2_recursion_n2, EigenvalueSeries,
};
use ecs_core::fhat::{default_dmax, fhat_series};
use ecs_core::lattice::Spectrum;
use ecs_core::{BiSeries, Error, ModelParams, NumericModel, QuantumNumbers, Rational, SymbolicPair};

use crate::assembly::assemble_phi_parallel;
use crate::cache::Cache;
use crate::json::{
    alpha_table_to_json, eigenvalue_to_json, laurent_to_json, render, residual_to_json, JsonScalar,
};
use crate::latex::eigenvalue_latex;
use crate::oracle::{eval_series, galerkin_offset, monomial_coefficients, two_part_partitions, EllipticParams};

#[derive(Parser, Debug)]
#[command(name = "ecs", version, about = "Exact perturbative spectrum of the elliptic Calogero-Sutherland model")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Eigenvalue series E = E_0 + Σ q^{2l} γ^s E_{l,s}.
    Eigenvalue(EigenvalueArgs),
    /// Eigenfunction coefficients alpha(mu) with the recursion residual.
    Alpha(AlphaArgs),
    /// The q = 0 eigenfunction and its monomial coefficients.
    Jack(ModelArgs),
    /// The building block F-hat(x; n).
    Fhat(FhatArgs),
    /// Series eigenvalues against the Galerkin solver, as CSV.
    Verify(VerifyArgs),
    /// Built-in reference suites.
    Selftest,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Latex,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    Lagrange,
    Q2,
    Fixpoint,
    All,
}

#[derive(Args, Debug, Clone)]
pub struct ModelArgs {
    /// Particle number (defaults to the length of -n).
    #[arg(short = 'N', long = "particles")]
    pub particles: Option<usize>,
    /// Quantum numbers, weakly decreasing, comma separated.
    #[arg(short = 'n', long = "n", allow_hyphen_values = true)]
    pub n: String,
    /// Coupling as "p/q" or an integer.
    #[arg(long)]
    pub lambda: Option<String>,
    /// Highest power of q².
    #[arg(long = "Lq", default_value_t = 2)]
    pub lq: usize,
    /// Highest power of γ (default 2·Lq, at least 2).
    #[arg(long = "Sgamma")]
    pub sgamma: Option<usize>,
    /// Keep P = n_1 − n_2 + λ as an indeterminate (N = 2 only).
    #[arg(long)]
    pub symbolic: bool,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Cache directory for G_k tables (overrides ECS_CACHE_DIR).
    #[arg(long = "cache-dir")]
    pub cache_dir: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct EigenvalueArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, value_enum, default_value = "lagrange")]
    pub algorithm: Algorithm,
}

#[derive(Args, Debug, Clone)]
pub struct AlphaArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Window size W (moment floor −(N−1)W).
    #[arg(long)]
    pub window: Option<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct FhatArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Degree window |x_j| ≤ Dmax.
    #[arg(long)]
    pub dmax: Option<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Nome values, comma separated.
    #[arg(long = "q", default_value = "0,0.02,0.04,0.08")]
    pub q: String,
    /// Galerkin basis size (odd).
    #[arg(long = "basis", default_value_t = 61)]
    pub basis: usize,
}

/// Failure with its exit code.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Resonance(Vec<i64>),
    Mismatch(String),
    Other(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Resonance(_) => 3,
            CliError::Mismatch(_) => 4,
            CliError::Other(_) => 1,
        }
    }

    pub fn message(&self) -> String {
        match self {
            CliError::Config(m) => format!("configuration error: {m}"),
            CliError::Resonance(mu) => format!("resonance: b(mu; n) = 0 at mu = {mu:?}"),
            CliError::Mismatch(d) => format!("algorithms disagree:\n{d}"),
            CliError::Other(m) => format!("error: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Usage(m) => CliError::Config(m),
            Error::Resonance { mu } => CliError::Resonance(mu),
            other => CliError::Other(other.to_string()),
        }
    }
}

/// Text written to stdout and stderr plus the exit code.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { stdout: text, stderr: String::new(), code }
            } else {
                Outcome { stdout: String::new(), stderr: text, code }
            };
        }
    };
    match dispatch(&cli.command) {
        Ok((stdout, code)) => Outcome { stdout, stderr: String::new(), code },
        Err(e) => Outcome { stdout: String::new(), stderr: e.message() + "\n", code: e.exit_code() },
    }
}

fn dispatch(cmd: &Command) -> Result<(String, i32), CliError> {
    match cmd {
        Command::Eigenvalue(a) => cmd_eigenvalue(a).map(|s| (s, 0)),
        Command::Alpha(a) => cmd_alpha(a).map(|s| (s, 0)),
        Command::Jack(a) => cmd_jack(a).map(|s| (s, 0)),
        Command::Fhat(a) => cmd_fhat(a).map(|s| (s, 0)),
        Command::Verify(a) => cmd_verify(a).map(|s| (s, 0)),
        Command::Selftest => Ok(cmd_selftest()),
    }
}

/// Validated model configuration.
struct Config {
    n: Vec<i64>,
    lambda: Option<Rational>,
    lq: usize,
    sg: usize,
    symbolic: bool,
    format: Format,
    cache: Cache,
}

fn parse_n(text: &str) -> Result<Vec<i64>, CliError> {
    text.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| CliError::Config(format!("bad quantum number '{t}'"))))
        .collect()
}

fn configure(a: &ModelArgs) -> Result<Config, CliError> {
    let n = parse_n(&a.n)?;
    QuantumNumbers::new(n.clone())?;
    let nn = a.particles.unwrap_or(n.len());
    if nn != n.len() {
        return Err(CliError::Config(format!("-N {nn} but {} quantum numbers", n.len())));
    }
    if nn < 2 {
        return Err(CliError::Config("at least two particles are required".into()));
    }
    if a.symbolic && nn != 2 {
        return Err(CliError::Config("symbolic P mode requires N = 2".into()));
    }
    let lambda = match &a.lambda {
        Some(s) => {
            let l: Rational = s.parse()?;
            ModelParams::new(nn, l.clone())?;
            Some(l)
        }
        None if a.symbolic => None,
        None => return Err(CliError::Config("--lambda is required unless --symbolic".into())),
    };
    let sg = a.sgamma.unwrap_or((2 * a.lq).max(2));
    Ok(Config {
        n,
        lambda,
        lq: a.lq,
        sg,
        symbolic: a.symbolic,
        format: a.format,
        cache: Cache::from_env_or(a.cache_dir.clone()),
    })
}

impl Config {
    fn numeric(&self) -> Result<NumericModel, CliError> {
        let lambda = self.lambda.clone().ok_or_else(|| CliError::Config("this command needs --lambda".into()))?;
        Ok(NumericModel::new(ModelParams::new(self.n.len(), lambda)?, QuantumNumbers::new(self.n.clone())?)?)
    }

    fn symbolic_pair(&self) -> Result<SymbolicPair, CliError> {
        Ok(SymbolicPair::from_quantum_numbers(&QuantumNumbers::new(self.n.clone())?)?)
    }

    fn json(&self) -> Value {
        json!({
            "N": self.n.len(),
            "n": self.n,
            "lambda": self.lambda.as_ref().map(|l| l.to_pq_string()),
            "Lq": self.lq,
            "Sgamma": self.sg,
            "mode": if self.symbolic { "symbolic-P" } else { "numeric" },
        })
    }

    fn require_numeric_mode(&self, what: &str) -> Result<(), CliError> {
        if self.symbolic {
            return Err(CliError::Config(format!("{what} needs numeric lambda, not --symbolic")));
        }
        Ok(())
    }
}

/// Scalars the front end can print in every format.
pub trait Printable: JsonScalar + Display {}
impl<T: JsonScalar + Display> Printable for T {}

fn series_text<F: Printable>(s: &BiSeries<F>, indent: &str) -> String {
    let mut out = String::new();
    for (l, g, c) in s.terms() {
        out.push_str(&format!("{indent}q^{} gamma^{g}: {c}\n", 2 * l));
    }
    if out.is_empty() {
        out.push_str(&format!("{indent}0\n"));
    }
    out
}

fn series_csv<F: Printable>(s: &BiSeries<F>, prefix: &str) -> String {
    s.terms().map(|(l, g, c)| format!("{prefix}{l},{g},\"{c}\"\n")).collect()
}

fn series_diff<F: Printable>(a: &BiSeries<F>, b: &BiSeries<F>, na: &str, nb: &str) -> String {
    let mut keys: Vec<(usize, usize)> = a.terms().map(|t| (t.0, t.1)).chain(b.terms().map(|t| (t.0, t.1))).collect();
    keys.sort();
    keys.dedup();
    let mut out = String::new();
    for (l, s) in keys {
        let (x, y) = (a.coeff(l, s), b.coeff(l, s));
        if x != y {
            out.push_str(&format!("  q^{} gamma^{s}: {na} = {x}, {nb} = {y}\n", 2 * l));
        }
    }
    out
}

fn solve<S: Spectrum>(
    sp: &S,
    cfg: &Config,
    algorithm: Algorithm,
) -> Result<(EigenvalueSeries<S::Scalar>, Vec<&'static str>), CliError>
where
    S::Scalar: Printable,
{
    let lagrange = || -> Result<EigenvalueSeries<S::Scalar>, CliError> {
        let table = cfg.cache.gk_table(sp, cfg.lq, cfg.sg)?;
        Ok(eigenvalue_from_table_lagrange(sp, &table)?)
    };
    let q2 = || -> Result<EigenvalueSeries<S::Scalar>, CliError> {
        if sp.n_particles() != 2 {
            return Err(CliError::Config("the q² recursion handles N = 2 only".into()));
        }
        Ok(eigenvalue_via_q2_recursion_n2(sp, cfg.lq, cfg.sg)?)
    };
    let fixpoint = || -> Result<EigenvalueSeries<S::Scalar>, CliError> {
        Ok(eigenvalue_via_fixed_point(sp, cfg.lq, cfg.sg, cfg.lq.max(1))?)
    };
    match algorithm {
        Algorithm::Lagrange => Ok((lagrange()?, vec!["lagrange"])),
        Algorithm::Q2 => Ok((q2()?, vec!["q2"])),
        Algorithm::Fixpoint => Ok((fixpoint()?, vec!["fixpoint"])),
        Algorithm::All => {
            let base = lagrange()?;
            let mut used = vec!["lagrange", "fixpoint"];
            let mut others = vec![("fixpoint", fixpoint()?)];
            if sp.n_particles() == 2 {
                others.push(("q2", q2()?));
                used.push("q2");
            }
            let mut diff = String::new();
            for (name, e) in &others {
                if e != &base {
                    diff.push_str(&format!("lagrange vs {name}:\n"));
                    diff.push_str(&series_diff(&base.tilde_e, &e.tilde_e, "lagrange", name));
                    if e.e0 != base.e0 {
                        diff.push_str(&format!("  E0: lagrange = {}, {name} = {}\n", base.e0, e.e0));
                    }
                }
            }
            if !diff.is_empty() {
                return Err(CliError::Mismatch(diff));
            }
            Ok((base, used))
        }
    }
}

fn render_eigenvalue<F: Printable>(
    cfg: &Config,
    e: &EigenvalueSeries<F>,
    used: &[&str],
    latex: impl Fn(&EigenvalueSeries<F>) -> String,
) -> String {
    match cfg.format {
        Format::Json => render(&json!({
            "command": "eigenvalue",
            "config": cfg.json(),
            "algorithms": used,
            "eigenvalue": eigenvalue_to_json(e),
        })),
        Format::Latex => latex(e),
        Format::Csv => {
            let mut out = String::from("q2_power,gamma_power,value\n");
            out.push_str(&format!("0,0,\"{}\"\n", e.e0));
            out.push_str(&series_csv(&e.tilde_e, ""));
            out
        }
        Format::Text => {
            let mut out = format!("algorithms: {}\nE0 = {}\nE - E0:\n", used.join(", "), e.e0);
            out.push_str(&series_text(&e.tilde_e, "  "));
            out
        }
    }
}

fn numeric_latex(e: &EigenvalueSeries<Rational>) -> String {
    let mut out = format!("\\mathcal{{E}}_{{0}} = {}\n", latex_rat(&e.e0));
    for l in 1..=e.tilde_e.q2_order() {
        let terms: Vec<String> = e
            .tilde_e
            .terms()
            .filter(|t| t.0 == l)
            .map(|(_, s, c)| format!("{}\\gamma^{{{s}}}", latex_rat(c)))
            .collect();
        let body = if terms.is_empty() { "0".to_string() } else { terms.join(" + ").replace("+ -", "- ") };
        out.push_str(&format!("\\mathcal{{E}}_{{{l}}} = {body}\n"));
    }
    out
}

fn latex_rat(r: &Rational) -> String {
    if r.is_integer() {
        r.to_string()
    } else {
        let sign = if r.is_negative() { "-" } else { "" };
        let a = r.abs();
        format!("{sign}\\frac{{{}}}{{{}}}", a.numer(), a.denom())
    }
}

pub fn cmd_eigenvalue(a: &EigenvalueArgs) -> Result<String, CliError> {
    let cfg = configure(&a.model)?;
    if cfg.symbolic {
        let sp = cfg.symbolic_pair()?;
        let (e, used) = solve(&sp, &cfg, a.algorithm)?;
        Ok(render_eigenvalue(&cfg, &e, &used, eigenvalue_latex))
    } else {
        let sp = cfg.numeric()?;
        let (e, used) = solve(&sp, &cfg, a.algorithm)?;
        Ok(render_eigenvalue(&cfg, &e, &used, numeric_latex))
    }
}

fn alpha_generic<S: Spectrum>(sp: &S, cfg: &Config, window: usize) -> Result<String, CliError>
where
    S::Scalar: Printable,
{
    let table = cfg.cache.gk_table(sp, cfg.lq, cfg.sg)?;
    let e = eigenvalue_from_table_lagrange(sp, &table)?;
    let alpha = compute_alpha_table(sp, &e.tilde_e, window)?;
    let report = corollary_residual(&alpha, sp, &e)?;
    let max_residual = if report.is_exact() { 0 } else { 1 };
    Ok(match cfg.format {
        Format::Json => render(&json!({
            "command": "alpha",
            "config": cfg.json(),
            "window": window,
            "eigenvalue": eigenvalue_to_json(&e),
            "alpha": alpha_table_to_json(&alpha),
            "residual": residual_to_json(&report),
        })),
        Format::Csv => {
            let mut out = String::from("mu,q2_power,gamma_power,value\n");
            for (mu, s) in alpha.window_entries() {
                let key: Vec<String> = mu.as_slice().iter().map(|x| x.to_string()).collect();
                out.push_str(&series_csv(s, &format!("\"{}\",", key.join(","))));
            }
            out
        }
        Format::Text | Format::Latex => {
            let mut out = format!("window: {window}\n");
            for (mu, s) in alpha.window_entries() {
                out.push_str(&format!("mu = {:?}\n", mu.as_slice()));
                out.push_str(&series_text(s, "  "));
            }
            out.push_str(&format!(
                "residual: {} window points, {} halo points\nmax_residual: {max_residual}\n",
                report.window_points, report.halo_points
            ));
            out
        }
    })
}

pub fn cmd_alpha(a: &AlphaArgs) -> Result<String, CliError> {
    let cfg = configure(&a.model)?;
    let window = a.window.unwrap_or_else(|| default_window(&cfg.n, cfg.lq));
    if cfg.symbolic {
        alpha_generic(&cfg.symbolic_pair()?, &cfg, window)
    } else {
        alpha_generic(&cfg.numeric()?, &cfg, window)
    }
}

/// `γ` order for the `q = 0` eigenfunction: only positive steps survive at
/// `q = 0` and each lowers the spread of `n + μ`, so longer walks end where
/// `F̂` vanishes.
fn jack_gamma_order(n: &[i64]) -> usize {
    let spread = n.iter().max().unwrap_or(&0) - n.iter().min().unwrap_or(&0);
    ((spread as usize + 1) * (n.len() - 1)).max(2)
}

pub fn cmd_jack(a: &ModelArgs) -> Result<String, CliError> {
    let mut args = a.clone();
    args.lq = 0;
    let mut cfg = configure(&args)?;
    cfg.require_numeric_mode("jack")?;
    cfg.sg = a.sgamma.unwrap_or(0).max(jack_gamma_order(&cfg.n));
    let sp = cfg.numeric()?;
    let lambda = cfg.lambda.clone().expect("numeric mode has lambda");
    let table = cfg.cache.gk_table(&sp, 0, cfg.sg)?;
    let e = eigenvalue_from_table_lagrange(&sp, &table)?;
    let window = default_window(&cfg.n, 0);
    let alpha = compute_alpha_table(&sp, &e.tilde_e, window)?;
    let phi = assemble_phi_parallel(&cfg.n, &alpha, &lambda, default_dmax(&cfg.n, window, 0))?;
    let gamma = sp.params().gamma().clone();
    let phi = phi.substitute_gamma(&gamma);
    let monomials = if cfg.n.len() == 2 {
        let n = [cfg.n[0], cfg.n[1]];
        let coeffs = monomial_coefficients(&phi, n).map_err(|e| CliError::Other(e.to_string()))?;
        let shift = n[1].min(0);
        let parts = two_part_partitions(n[0] + n[1] - 2 * shift);
        Some(
            parts
                .into_iter()
                .map(|p| [p[0] + shift, p[1] + shift])
                .zip(coeffs)
                .collect::<Vec<([i64; 2], Rational)>>(),
        )
    } else {
        None
    };
    Ok(match cfg.format {
        Format::Json => render(&json!({
            "command": "jack",
            "config": cfg.json(),
            "phi": laurent_to_json(&phi),
            "monomial_coefficients": monomials.as_ref().map(|m| m
                .iter()
                .map(|(p, c)| json!({ "partition": p, "value": c.to_json() }))
                .collect::<Vec<_>>()),
        })),
        Format::Csv => {
            let mut out = String::from("exps,value\n");
            for (k, c) in phi.terms() {
                let key: Vec<String> = k.iter().map(|x| x.to_string()).collect();
                out.push_str(&format!("\"{}\",\"{}\"\n", key.join(","), c.coeff(0, 0)));
            }
            out
        }
        Format::Text | Format::Latex => {
            let mut out = String::new();
            if let Some(m) = &monomials {
                out.push_str("normalized monomial coefficients:\n");
                for (p, c) in m {
                    out.push_str(&format!("  m_({},{}): {c}\n", p[0], p[1]));
                }
            }
            out.push_str("phi at q = 0:\n");
            for (k, c) in phi.terms() {
                out.push_str(&format!("  z^{k:?}: {}\n", c.coeff(0, 0)));
            }
            out
        }
    })
}

pub fn cmd_fhat(a: &FhatArgs) -> Result<String, CliError> {
    let cfg = configure(&a.model)?;
    cfg.require_numeric_mode("fhat")?;
    let lambda = cfg.lambda.clone().expect("numeric mode has lambda");
    let dmax = a.dmax.unwrap_or_else(|| default_dmax(&cfg.n, 0, cfg.lq));
    let f = fhat_series(&cfg.n, &lambda, cfg.lq, dmax)?;
    Ok(match cfg.format {
        Format::Json => {
            render(&json!({ "command": "fhat", "config": cfg.json(), "dmax": dmax, "fhat": laurent_to_json(&f) }))
        }
        Format::Csv => {
            let mut out = String::from("exps,q2_power,gamma_power,value\n");
            for (k, c) in f.terms() {
                let key: Vec<String> = k.iter().map(|x| x.to_string()).collect();
                out.push_str(&series_csv(c, &format!("\"{}\",", key.join(","))));
            }
            out
        }
        Format::Text | Format::Latex => {
            let mut out = format!("dmax: {dmax}\n");
            for (k, c) in f.terms() {
                out.push_str(&format!("z^{k:?}:\n"));
                out.push_str(&series_text(c, "  "));
            }
            out
        }
    })
}

fn parse_q_list(text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|t| {
            let q: f64 = t.trim().parse().map_err(|_| CliError::Config(format!("bad q value '{t}'")))?;
            if !(0.0..1.0).contains(&q) {
                return Err(CliError::Config(format!("q = {q} outside [0, 1)")));
            }
            Ok(q)
        })
        .collect()
}

/// One row of the comparison table.
#[derive(Clone, Debug, PartialEq)]
pub struct VerifyRow {
    pub q: f64,
    pub e_series: f64,
    pub e_galerkin: f64,
    pub abs_err: f64,
    /// `d log(abs_err) / d log(q)` against the previous row with `q > 0`.
    pub slope: Option<f64>,
}

/// Series and Galerkin eigenvalues for `n = (n_1, n_2)` at each `q`.
///
/// Both sides are computed relative to `E_0`, so `abs_err` is not limited by
/// the rounding of `E_0` itself.
pub fn verify_rows(
    n: [i64; 2],
    lambda: &Rational,
    lq: usize,
    sg: usize,
    qs: &[f64],
    basis: usize,
) -> Result<Vec<VerifyRow>, CliError> {
    let sp = NumericModel::new(ModelParams::new(2, lambda.clone())?, QuantumNumbers::new(n.to_vec())?)?;
    // γ = 0 is the free point: every correction vanishes, even where the
    // formal-γ series would hit an integer-P resonance.
    let e = if sp.params().gamma().is_zero() {
        EigenvalueSeries { e0: sp.e0(), tilde_e: BiSeries::zero(lq, sg) }
    } else {
        let table = crate::cache::Cache::disabled().gk_table(&sp, lq, sg)?;
        eigenvalue_from_table_lagrange(&sp, &table)?
    };
    let lam = lambda.to_f64();
    let gamma = 2.0 * lam * (lam - 1.0);
    let e0 = e.e0.to_f64();
    let mut rows: Vec<VerifyRow> = Vec::new();
    for &q in qs {
        let ep = EllipticParams::from_q(q).map_err(|e| CliError::Config(e.to_string()))?;
        let series_off = eval_series(&e.tilde_e, q, gamma);
        let gal_off = galerkin_offset(n, lam, &ep, basis, e0).map_err(|e| CliError::Other(e.to_string()))?;
        let abs_err = (series_off - gal_off).abs();
        let slope = rows
            .iter()
            .rev()
            .find(|r| r.q > 0.0)
            .filter(|_| q > 0.0)
            .map(|prev| (abs_err.ln() - prev.abs_err.ln()) / (q.ln() - prev.q.ln()));
        rows.push(VerifyRow { q, e_series: e0 + series_off, e_galerkin: e0 + gal_off, abs_err, slope });
    }
    Ok(rows)
}

pub fn cmd_verify(a: &VerifyArgs) -> Result<String, CliError> {
    let cfg = configure(&a.model)?;
    cfg.require_numeric_mode("verify")?;
    if cfg.n.len() != 2 {
        return Err(CliError::Config("verify handles N = 2 only".into()));
    }
    if a.basis.is_multiple_of(2) {
        return Err(CliError::Config(format!("basis size {} must be odd", a.basis)));
    }
    let qs = parse_q_list(&a.q)?;
    let lambda = cfg.lambda.clone().expect("numeric mode has lambda");
    let rows = verify_rows([cfg.n[0], cfg.n[1]], &lambda, cfg.lq, cfg.sg, &qs, a.basis)?;
    let n_text = format!("\"{},{}\"", cfg.n[0], cfg.n[1]);
    let mut out = String::from("q,lambda,n,E_series,E_galerkin,abs_err,slope\n");
    for r in &rows {
        out.push_str(&format!(
            "{},{},{n_text},{:.16e},{:.16e},{:.6e},{}\n",
            r.q,
            lambda.to_pq_string(),
            r.e_series,
            r.e_galerkin,
            r.abs_err,
            r.slope.map(|s| format!("{s:.3}")).unwrap_or_default()
        ));
    }
    Ok(out)
}

pub fn cmd_selftest() -> (String, i32) {
    let results = crate::selftest::run_all();
    let mut out = String::new();
    for r in &results {
        out.push_str(&r.line());
        out.push('\n');
        for note in &r.notes {
            out.push_str(&format!("  {note}\n"));
        }
    }
    let ok = results.iter().all(|r| r.passed);
    (out, if ok { 0 } else { 1 })
}
