use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num::BigRational;
use serde::Serialize;

use quasistar::field::is_prime;
use quasistar::geometry::{self, Configuration, TailLayout};
use quasistar::invariants::{self, BettiTable};
use quasistar::symbolic::{self, CellBudget, CorollaryMode, SymbolicMethod};
use quasistar::verify::{self, SuiteOptions};
use quasistar::{Budget, PrimeField, DEFAULT_PRIME, SECOND_PRIME};

#[derive(Parser)]
#[command(name = "quasistar", version, about = "Invariants, symbolic powers and resurgence of plane point configurations")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Characteristic of the coefficient field.
    #[arg(long, global = true, default_value_t = DEFAULT_PRIME)]
    prime: u32,
    /// Seed for all random choices.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Largest S-pair degree / internal degree a computation may reach.
    #[arg(long, global = true)]
    budget_degree: Option<u32>,
    /// Wall-clock limit per computation (per cell for containment grids).
    #[arg(long, global = true)]
    budget_seconds: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Repeat the computation over a second prime and compare.
    #[arg(long, global = true)]
    second_prime_check: bool,
    /// Write the report here instead of standard output.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Star,
    QuasiStar,
    Generic,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Intersection,
    Interpolation,
}

impl From<Method> for SymbolicMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::Intersection => SymbolicMethod::Intersection,
            Method::Interpolation => SymbolicMethod::Interpolation,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build a certified configuration.
    Construct {
        #[arg(value_enum)]
        kind: Kind,
        /// Number of lines (star, quasi-star).
        #[arg(long)]
        d: Option<usize>,
        /// Number of points (generic).
        #[arg(long)]
        n: Option<usize>,
        /// Place the extra quasi-star points on this many carrier lines.
        #[arg(long)]
        t_on_lines: Option<usize>,
        /// Also choose the auxiliary lines of the determinantal description.
        #[arg(long)]
        aux_lines: bool,
    },
    /// alpha, regularity, Betti table, Hilbert function and multiplicity.
    Invariants { config: PathBuf },
    /// Graded Betti numbers of I or of a symbolic power.
    Betti {
        config: PathBuf,
        /// Use I^(m) instead of I.
        #[arg(long)]
        symbolic: Option<u32>,
    },
    /// Generators of the symbolic power I^(m).
    Symbolic {
        config: PathBuf,
        #[arg(long)]
        m: u32,
        #[arg(long, value_enum, default_value_t = Method::Intersection)]
        method: Method,
    },
    /// Decide I^(m) ⊆ I^r on a grid.
    Containment {
        config: PathBuf,
        #[arg(long, default_value_t = 4)]
        m_max: u32,
        #[arg(long, default_value_t = 3)]
        r_max: u32,
        #[arg(long, value_enum, default_value_t = Method::Intersection)]
        method: Method,
    },
    /// Interval for the Waldschmidt constant.
    Waldschmidt {
        config: PathBuf,
        #[arg(long, default_value_t = 8)]
        m_max: u32,
        /// Skip the explicit upper-bound certificate for quasi star configurations.
        #[arg(long)]
        no_certificate: bool,
    },
    /// Interval for the resurgence.
    Resurgence {
        config: PathBuf,
        #[arg(long, default_value_t = 8)]
        m_max: u32,
        /// Containment grid used for failing ratios (0 disables it).
        #[arg(long, default_value_t = 4)]
        grid_m: u32,
        #[arg(long, default_value_t = 3)]
        grid_r: u32,
        #[arg(long)]
        no_certificate: bool,
    },
    /// Number of lines needed for a prescribed resurgence.
    CorollaryParams {
        /// Target gap to 2, e.g. 2/5.
        #[arg(long, conflicts_with = "r")]
        epsilon: Option<String>,
        /// Failure order r of I^(2r-1) ⊄ I^r.
        #[arg(long)]
        r: Option<u32>,
    },
    /// Recompute every published value and report one result per claim.
    Verify {
        /// Restrict to these claim ids.
        #[arg(long = "claim")]
        claims: Vec<String>,
        /// List claim ids and exit.
        #[arg(long)]
        list: bool,
    },
}

/// Which formats a report supports besides JSON.
trait Report: Serialize {
    fn text(&self) -> Option<String> {
        None
    }
    fn csv(&self) -> Option<String> {
        None
    }
}

fn emit<R: Report>(g: &Global, r: &R) -> Result<()> {
    let body = match g.format {
        Format::Json => serde_json::to_string_pretty(r)? + "\n",
        Format::Text => r.text().ok_or_else(|| anyhow!("text output is not available for this command"))?,
        Format::Csv => r.csv().ok_or_else(|| anyhow!("csv output is not available for this command"))?,
    };
    match &g.output {
        Some(p) => fs::write(p, body).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{body}"),
    }
    Ok(())
}

impl Report for Configuration {}

impl Report for invariants::InvariantReport {
    fn text(&self) -> Option<String> {
        Some(format!(
            "alpha {}\nregularity {}\nmultiplicity {}\ngenerator degrees {:?}\nstabilized at {:?}\n{}",
            self.alpha,
            self.regularity,
            self.multiplicity,
            self.minimal_generator_degrees,
            self.hilbert.stabilized_at,
            self.betti.to_text()
        ))
    }
}

impl Report for BettiTable {
    fn text(&self) -> Option<String> {
        Some(self.to_text())
    }
    fn csv(&self) -> Option<String> {
        let mut s = String::from("i,j,beta\n");
        for ((i, j), b) in &self.entries {
            s.push_str(&format!("{i},{j},{b}\n"));
        }
        Some(s)
    }
}

impl Report for symbolic::ContainmentReport {
    fn text(&self) -> Option<String> {
        Some(self.to_text())
    }
    fn csv(&self) -> Option<String> {
        Some(self.to_csv())
    }
}

impl Report for symbolic::WaldschmidtEstimate {
    fn text(&self) -> Option<String> {
        let mut s = format!("alpha-hat in [{}, {}]\n", self.lower_bound, self.upper_bound);
        for (m, a) in &self.alpha_values {
            s.push_str(&format!("alpha(I^({m})) = {a}\n"));
        }
        Some(s)
    }
    fn csv(&self) -> Option<String> {
        let mut s = String::from("m,alpha\n");
        for (m, a) in &self.alpha_values {
            s.push_str(&format!("{m},{a}\n"));
        }
        Some(s)
    }
}

impl Report for symbolic::ResurgenceBounds {
    fn text(&self) -> Option<String> {
        let mut s = format!("rho in [{}, {}]\n", self.lower, self.upper);
        for c in &self.lower_candidates {
            s.push_str(&format!("  >= {}  ({})\n", c.value, c.source));
        }
        for c in &self.upper_candidates {
            s.push_str(&format!("  <= {}  ({})\n", c.value, c.source));
        }
        Some(s)
    }
}

impl Report for symbolic::CorollaryPrediction {
    fn text(&self) -> Option<String> {
        Some(format!(
            "d = {}\nlower = {}\nbound for quasi star ideals = {}\n",
            self.d,
            self.lower,
            self.quasi_star_lower.as_ref().map_or("-".into(), |t| t.to_string())
        ))
    }
}

impl Report for verify::SuiteReport {
    fn text(&self) -> Option<String> {
        Some(self.to_text())
    }
}

#[derive(Serialize)]
struct SymbolicReport {
    m: u32,
    config_hash: String,
    method: SymbolicMethod,
    alpha: u32,
    generator_degrees: Vec<u32>,
    generators: Vec<String>,
}

impl Report for SymbolicReport {
    fn text(&self) -> Option<String> {
        let mut s = format!("I^({}) alpha {} degrees {:?}\n", self.m, self.alpha, self.generator_degrees);
        for g in &self.generators {
            s.push_str(g);
            s.push('\n');
        }
        Some(s)
    }
}

#[derive(Serialize)]
struct ClaimList(Vec<&'static str>);

impl Report for ClaimList {
    fn text(&self) -> Option<String> {
        Some(self.0.join("\n") + "\n")
    }
}

impl Global {
    fn field(&self) -> Result<PrimeField> {
        Ok(PrimeField::new(self.prime)?)
    }

    fn budget(&self) -> Budget {
        Budget {
            max_degree: self.budget_degree,
            deadline: self.budget_seconds.map(|s| Instant::now() + Duration::from_secs_f64(s)),
        }
    }

    fn other_prime(&self) -> u32 {
        if self.prime == SECOND_PRIME {
            DEFAULT_PRIME
        } else {
            SECOND_PRIME
        }
    }
}

fn load(path: &Path) -> Result<Configuration> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let cfg = Configuration::from_json(&text).with_context(|| format!("parsing {}", path.display()))?;
    check_prime(cfg.prime, &cfg)?;
    Ok(cfg)
}

/// The field must be large against the multiplicities in use.
fn check_prime(p: u32, cfg: &Configuration) -> Result<()> {
    let m = cfg.points.iter().map(|x| x.multiplicity).max().unwrap_or(1);
    if !is_prime(p as u64) || (p as u64) <= 2 * m as u64 {
        bail!("prime {p} must be a prime larger than twice the largest multiplicity ({m})");
    }
    Ok(())
}

/// Repeats `f` over the second prime when requested and fails on a mismatch.
fn second_prime<T: PartialEq + std::fmt::Debug>(
    g: &Global,
    cfg: &Configuration,
    first: &T,
    f: impl Fn(&Configuration) -> Result<T>,
) -> Result<()> {
    if !g.second_prime_check {
        return Ok(());
    }
    let other = cfg.at_prime(g.other_prime())?;
    let again = f(&other)?;
    if &again != first {
        bail!("result differs over the prime {}: {first:?} vs {again:?}", other.prime);
    }
    eprintln!("second prime {}: same result", other.prime);
    Ok(())
}

fn certificates(cfg: &Configuration, skip: bool) -> Result<Vec<symbolic::CertificateRecord>> {
    match cfg.kind {
        geometry::ConfigurationKind::QuasiStar { d } if d >= 4 && !skip && cfg.is_reduced() => {
            Ok(vec![symbolic::waldschmidt_certificate(cfg, 1)?])
        }
        _ => Ok(Vec::new()),
    }
}

fn estimate(g: &Global, cfg: &Configuration, m_max: u32, skip_cert: bool) -> Result<symbolic::WaldschmidtEstimate> {
    let certs = certificates(cfg, skip_cert)?;
    Ok(symbolic::waldschmidt_estimate(cfg, m_max, &certs, g.budget().deadline)?)
}

fn resurgence(g: &Global, cfg: &Configuration, m_max: u32, grid: (u32, u32), skip_cert: bool) -> Result<symbolic::ResurgenceBounds> {
    let ideal = symbolic::configuration_ideal(cfg, &g.budget())?;
    let table = invariants::betti_until_complete(&ideal, g.budget_degree)?;
    let w = estimate(g, cfg, m_max, skip_cert)?;
    let cells = if grid.0 > 0 && grid.1 > 0 {
        Some(symbolic::containment_table(
            cfg,
            grid.0,
            grid.1,
            CellBudget {
                max_degree: g.budget_degree,
                seconds: g.budget_seconds,
            },
            SymbolicMethod::Intersection,
        )?)
    } else {
        None
    };
    Ok(symbolic::resurgence_bounds(
        invariants::alpha(&ideal),
        table.regularity().expect("nonzero ideal"),
        &w,
        cells.as_ref(),
    )?)
}

fn parse_rational(s: &str) -> Result<BigRational> {
    s.trim().parse::<BigRational>().map_err(|e| anyhow!("not a rational number: {s} ({e})"))
}

fn run(cli: Cli) -> Result<ExitCode> {
    let g = &cli.global;
    if !is_prime(g.prime as u64) || g.prime <= 2 {
        bail!("--prime must be an odd prime");
    }
    match cli.command {
        Command::Construct {
            kind,
            d,
            n,
            t_on_lines,
            aux_lines,
        } => {
            let f = g.field()?;
            let need_d = || d.ok_or_else(|| anyhow!("--d is required"));
            let mut cfg = match kind {
                Kind::Star => geometry::star_configuration(f, need_d()?, g.seed)?,
                Kind::QuasiStar => {
                    let layout = match t_on_lines {
                        Some(k) => TailLayout::OnCarrierLines { k },
                        None => TailLayout::Random,
                    };
                    geometry::quasi_star_with_layout(f, need_d()?, g.seed, layout)?
                }
                Kind::Generic => geometry::generic_points(f, n.ok_or_else(|| anyhow!("--n is required"))?, g.seed)?,
            };
            if aux_lines {
                cfg = geometry::with_aux_lines(&cfg)?;
            }
            if !cfg.certificate.passed() {
                bail!("genericity certification failed");
            }
            second_prime(g, &cfg, &cfg.len(), |c| Ok(c.len()))?;
            emit(g, &cfg)?;
        }
        Command::Invariants { config } => {
            let cfg = load(&config)?;
            let r = invariants::invariant_report(&cfg, &g.budget())?;
            let key = |r: &invariants::InvariantReport| (r.alpha, r.regularity, r.multiplicity, r.betti.entries.clone());
            second_prime(g, &cfg, &key(&r), |c| Ok(key(&invariants::invariant_report(c, &g.budget())?)))?;
            emit(g, &r)?;
        }
        Command::Betti { config, symbolic } => {
            let cfg = load(&config)?;
            let table = |c: &Configuration| -> Result<BettiTable> {
                let ideal = match symbolic {
                    Some(m) => symbolic::symbolic_power(c, m, &g.budget())?.ideal,
                    None => symbolic::configuration_ideal(c, &g.budget())?,
                };
                Ok(invariants::betti_until_complete(&ideal, g.budget_degree)?)
            };
            let t = table(&cfg)?;
            second_prime(g, &cfg, &t.entries, |c| Ok(table(c)?.entries))?;
            emit(g, &t)?;
        }
        Command::Symbolic { config, m, method } => {
            let cfg = load(&config)?;
            let s = symbolic::symbolic_power_with(&cfg, m, &g.budget(), method.into())?;
            s.ideal.try_groebner(&g.budget())?;
            let degrees = invariants::minimal_generator_degrees(&s.ideal);
            let r = SymbolicReport {
                m,
                config_hash: s.config_hash.clone(),
                method: method.into(),
                alpha: invariants::alpha(&s.ideal),
                generator_degrees: degrees.clone(),
                generators: s.ideal.groebner().iter().map(|p| p.canonical()).collect(),
            };
            second_prime(g, &cfg, &degrees, |c| {
                let s = symbolic::symbolic_power_with(c, m, &g.budget(), method.into())?;
                Ok(invariants::minimal_generator_degrees(&s.ideal))
            })?;
            emit(g, &r)?;
        }
        Command::Containment {
            config,
            m_max,
            r_max,
            method,
        } => {
            let cfg = load(&config)?;
            let cell = CellBudget {
                max_degree: g.budget_degree,
                seconds: g.budget_seconds,
            };
            let rep = symbolic::containment_table(&cfg, m_max, r_max, cell, method.into())?;
            let statuses = |r: &symbolic::ContainmentReport| r.rows.iter().map(|c| c.holds()).collect::<Vec<_>>();
            second_prime(g, &cfg, &statuses(&rep), |c| {
                Ok(statuses(&symbolic::containment_table(c, m_max, r_max, cell, method.into())?))
            })?;
            emit(g, &rep)?;
            if !rep.is_complete() {
                return Ok(ExitCode::from(2));
            }
        }
        Command::Waldschmidt {
            config,
            m_max,
            no_certificate,
        } => {
            let cfg = load(&config)?;
            let w = estimate(g, &cfg, m_max, no_certificate)?;
            second_prime(g, &cfg, &w.alpha_values, |c| Ok(estimate(g, c, m_max, no_certificate)?.alpha_values))?;
            emit(g, &w)?;
            if w.truncated_at.is_some() {
                return Ok(ExitCode::from(2));
            }
        }
        Command::Resurgence {
            config,
            m_max,
            grid_m,
            grid_r,
            no_certificate,
        } => {
            let cfg = load(&config)?;
            let r = resurgence(g, &cfg, m_max, (grid_m, grid_r), no_certificate)?;
            let key = |r: &symbolic::ResurgenceBounds| (r.lower.clone(), r.upper.clone());
            second_prime(g, &cfg, &key(&r), |c| Ok(key(&resurgence(g, c, m_max, (grid_m, grid_r), no_certificate)?)))?;
            emit(g, &r)?;
        }
        Command::CorollaryParams { epsilon, r } => {
            let mode = match (epsilon, r) {
                (Some(e), None) => CorollaryMode::Epsilon {
                    epsilon: parse_rational(&e)?,
                },
                (None, Some(r)) => CorollaryMode::FailureOrder { r },
                _ => bail!("give exactly one of --epsilon or --r"),
            };
            emit(g, &symbolic::corollary_parameters(&mode)?)?;
        }
        Command::Verify { claims, list } => {
            if list {
                emit(g, &ClaimList(verify::claim_ids()))?;
                return Ok(ExitCode::SUCCESS);
            }
            let known = verify::claim_ids();
            if let Some(bad) = claims.iter().find(|c| !known.contains(&c.as_str())) {
                bail!("unknown claim {bad}; known: {}", known.join(", "));
            }
            let report = verify::run_suite(&SuiteOptions {
                prime: g.prime,
                seed: g.seed,
                budget_degree: g.budget_degree,
                budget_seconds: g.budget_seconds,
                second_prime_check: g.second_prime_check,
                only: claims,
            })?;
            emit(g, &report)?;
            return Ok(ExitCode::from(report.exit_code() as u8));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
