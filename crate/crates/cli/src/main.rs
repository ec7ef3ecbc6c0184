//! `qhyp`: command-line front end for the qhyp library.

mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qhyp::quantum::{self, Method, Precision, RootOfUnityContext, SweepReport};
use qhyp::twistknots::{self, Family};
use qhyp::{acceptance, census, mcg, surgery, DoubleTwistKnot, ExactRational, Slope};
use serde_json::json;

use report::{Format, Report};

#[derive(Parser, Debug)]
#[command(name = "qhyp", version, about = "Double twist knots, their surgeries and quantum invariants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Report format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Alternating continued fraction [2, -2, ..., 2, -2, 2] for genus g.
    Cfe {
        #[arg(long, allow_negative_numbers = true)]
        genus: i64,
    },
    /// Two-bridge fraction, Alexander polynomial and fiberedness of a knot.
    Knot(KnotArgs),
    /// Kirby-move trace identifying a figure-eight filling with a family filling.
    SurgeryCheck {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
    },
    /// Colored Jones polynomial J'_N at q = e^{2πi/r}.
    Jones {
        #[command(flatten)]
        knot: KnotArgs,
        /// Color N; omit for all colors 1..(r-1)/2.
        #[arg(long)]
        color: Option<u64>,
        #[arg(long)]
        r: u64,
        #[arg(long, value_enum, default_value_t = MethodArg::Fusion)]
        method: MethodArg,
        #[command(flatten)]
        precision: PrecisionArg,
    },
    /// Turaev-Viro invariants of the complement or of a filling over a range of r.
    Tv(SweepArgs),
    /// Growth-rate estimate over a range of r, with the census volume when known.
    Ltv {
        #[command(flatten)]
        sweep: SweepArgs,
        /// Also sweep the complement and check it grows at least as fast as the filling.
        #[arg(long)]
        compare: bool,
    },
    /// Symplectic action of the monodromy word, checked against the Alexander polynomial.
    Monodromy {
        #[arg(long)]
        genus: usize,
    },
    /// Census of shared fillings.
    Census {
        /// Check the volume bounds on every row.
        #[arg(long)]
        check_bounds: bool,
        /// Show only rows with this census name.
        #[arg(long)]
        row: Option<String>,
    },
    /// Run the acceptance criteria; exits nonzero if any fails.
    VerifyAll {
        /// Comma-separated subset of criteria, e.g. 1,2,11.
        #[arg(long, value_delimiter = ',')]
        criteria: Option<Vec<u8>>,
        #[command(flatten)]
        range: RangeArgs,
        /// Cases per property suite (at least 100).
        #[arg(long, default_value_t = 256)]
        cases: u32,
    },
}

#[derive(Args, Debug, Clone)]
struct KnotArgs {
    /// Twist parameters m,n of D(m,n).
    #[arg(long, value_parser = parse_knot, conflicts_with_all = ["family", "n"], allow_hyphen_values = true)]
    knot: Option<DoubleTwistKnot>,
    /// Family D = D(2n,-3) or D' = D(2n,-2).
    #[arg(long, value_parser = parse_family, requires = "n")]
    family: Option<Family>,
    #[arg(long, allow_negative_numbers = true, requires = "family")]
    n: Option<i64>,
}

impl KnotArgs {
    fn resolve(&self) -> Result<DoubleTwistKnot, CliError> {
        match (self.knot, self.family, self.n) {
            (Some(k), _, _) => Ok(k),
            (None, Some(f), Some(n)) => Ok(f.knot(n)),
            _ => Err(CliError::Usage("give --knot m,n or --family F --n n".into())),
        }
    }
}

#[derive(Args, Debug, Clone)]
struct RangeArgs {
    #[arg(long)]
    r_min: Option<u64>,
    #[arg(long)]
    r_max: Option<u64>,
    #[arg(long)]
    r_step: Option<u64>,
}

impl RangeArgs {
    fn is_set(&self) -> bool {
        self.r_min.is_some() || self.r_max.is_some() || self.r_step.is_some()
    }

    fn levels(&self, default: (u64, u64, u64)) -> Result<Vec<u64>, CliError> {
        let (lo, hi, step) = default;
        quantum::odd_r_range(self.r_min.unwrap_or(lo), self.r_max.unwrap_or(hi), self.r_step.unwrap_or(step))
            .map_err(|e| CliError::Usage(e.to_string()))
    }
}

#[derive(Args, Debug, Clone)]
struct PrecisionArg {
    #[arg(long, value_enum, default_value_t = PrecisionMode::Extended)]
    precision: PrecisionMode,
}

#[derive(Args, Debug, Clone)]
struct SweepArgs {
    #[command(flatten)]
    knot: KnotArgs,
    /// Surgery slope p/q; omit for the knot complement.
    #[arg(long, value_parser = parse_slope, allow_hyphen_values = true)]
    slope: Option<Slope>,
    #[command(flatten)]
    range: RangeArgs,
    #[command(flatten)]
    precision: PrecisionArg,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum PrecisionMode {
    Double,
    Extended,
}

impl From<PrecisionMode> for Precision {
    fn from(p: PrecisionMode) -> Self {
        match p {
            PrecisionMode::Double => Precision::Double,
            PrecisionMode::Extended => Precision::Extended,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum MethodArg {
    Fusion,
    Rmatrix,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Fusion => Method::Fusion,
            MethodArg::Rmatrix => Method::RMatrix,
        }
    }
}

const DEFAULT_RANGE: (u64, u64, u64) = (51, 501, 50);

fn parse_knot(s: &str) -> Result<DoubleTwistKnot, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [m, n] => {
            let m = m.parse::<i64>().map_err(|e| format!("m: {e}"))?;
            let n = n.parse::<i64>().map_err(|e| format!("n: {e}"))?;
            Ok(DoubleTwistKnot::new(m, n))
        }
        _ => Err(format!("expected m,n, got {s:?}")),
    }
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: qhyp::Error| e.to_string())
}

fn parse_slope(s: &str) -> Result<Slope, String> {
    s.parse().map_err(|e: qhyp::Error| e.to_string())
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Compute(String),
}

impl From<qhyp::Error> for CliError {
    fn from(e: qhyp::Error) -> Self {
        CliError::Compute(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = std::env::var("QHYP_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let result = run(&cli.command).and_then(|(rep, ok)| {
        rep.emit(cli.format, cli.output.as_deref()).map_err(|e| CliError::Compute(format!("writing report: {e}")))?;
        Ok(ok)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(CliError::Compute(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}

/// The report and whether the command succeeded.
fn run(cmd: &Command) -> Result<(Report, bool), CliError> {
    match cmd {
        Command::Cfe { genus } => cfe(*genus).map(|r| (r, true)),
        Command::Knot(k) => knot(&k.resolve()?).map(|r| (r, true)),
        Command::SurgeryCheck { family, n } => surgery_check(*family, *n),
        Command::Jones { knot, color, r, method, precision } => {
            jones(&knot.resolve()?, *color, *r, (*method).into(), precision.precision.into()).map(|r| (r, true))
        }
        Command::Tv(s) => tv(s).map(|r| (r, true)),
        Command::Ltv { sweep, compare } => ltv(sweep, *compare),
        Command::Monodromy { genus } => monodromy(*genus),
        Command::Census { check_bounds, row } => census_cmd(*check_bounds, row.as_deref()),
        Command::VerifyAll { criteria, range, cases } => verify_all(criteria.as_deref(), range, *cases),
    }
}

fn cfe(g: i64) -> Result<Report, CliError> {
    let c = qhyp::alternating_cfe(g).map_err(|e| CliError::Usage(e.to_string()))?;
    let v = qhyp::cfe_eval(&c);
    let want = ExactRational::new(2 * g, 6 * g - 1)?;
    let json = json!({ "genus": g, "entries": c.entries(), "value": v, "expected": want, "matches": v == want });
    let text = format!("genus {g}\nentries {c}\nvalue {v}\nexpected 2g/(6g-1) = {want}\nmatches {}", v == want);
    let rows = c.entries().iter().enumerate().map(|(i, a)| vec![i.to_string(), a.to_string()]).collect();
    Ok(Report::new(json, text).with_table(&["index", "entry"], rows))
}

fn knot(k: &DoubleTwistKnot) -> Result<Report, CliError> {
    let frac = twistknots::fraction_of(k)?;
    let delta = twistknots::alexander(&frac);
    let monic = twistknots::is_monic(&delta)?;
    let cfe = twistknots::fibered_cfe(&frac);
    let genus = cfe.as_ref().map(twistknots::fiber_genus).transpose()?;
    let name = quantum::knot_name(k);
    let families: Vec<String> = Family::identify(k).iter().map(|(f, n)| format!("{f}_{n}")).collect();
    let json = json!({
        "knot": k, "name": name.as_ref().map(|x| &x.0), "mirrored": name.as_ref().map(|x| x.1),
        "families": families, "fraction": frac.to_string(), "alexander": delta, "monic": monic,
        "fibered": cfe.is_some(), "fibered_cfe": cfe.as_ref().map(|c| c.entries().to_vec()), "genus": genus,
    });
    let mut text = format!("knot {k}\n");
    if let Some((n, m)) = &name {
        text += &format!("name {n}{}\n", if *m { " (mirror)" } else { "" });
    }
    if !families.is_empty() {
        text += &format!("families {}\n", families.join(" "));
    }
    text += &format!("fraction {frac}\nalexander {delta}\nmonic {monic}\n");
    match (&cfe, genus) {
        (Some(c), Some(g)) => text += &format!("fibered yes, continued fraction {c}, genus {g}"),
        _ => text += "fibered no",
    }
    Ok(Report::new(json, text))
}

fn surgery_check(family: Family, n: i64) -> Result<(Report, bool), CliError> {
    let (steps, fin, want) = match family {
        Family::D => (surgery::trace_d(n)?, surgery::pipeline_d(n)?, ExactRational::from_int(4 * n + 1)),
        Family::DPrime => (surgery::trace_dprime(n)?, surgery::pipeline_dprime(n)?, ExactRational::from_int(1)),
    };
    let shared = surgery::shared_surgery(family, n).ok();
    let ok = fin == want;
    let json = json!({
        "family": family, "n": n, "knot": family.knot(n), "final_slope": fin, "expected": want, "matches": ok,
        "shared_surgery": shared, "steps": steps,
    });
    let mut text = format!("{family}_{n} = {}\n", family.knot(n));
    for (i, s) in steps.iter().enumerate() {
        text += &format!("{:>2}. {}\n", i + 1, s.description);
    }
    text += &format!("final slope {fin}, expected {want}: {}", if ok { "ok" } else { "MISMATCH" });
    if let Some((a, b)) = &shared {
        text += &format!("\nshared filling: slope {a} on the knot, {b} on 4_1");
    }
    Ok((Report::new(json, text), ok))
}

fn jones(k: &DoubleTwistKnot, color: Option<u64>, r: u64, method: Method, p: Precision) -> Result<Report, CliError> {
    let ctx = RootOfUnityContext::new(r).map_err(|e| CliError::Usage(e.to_string()))?;
    let values: Vec<(u64, qhyp::Complex64, Option<u32>)> = match (color, method) {
        (Some(c), Method::Fusion) => {
            let v = quantum::colored_jones_with(k, c, &ctx, p)?;
            vec![(c, v.value, Some(v.bits))]
        }
        (Some(c), Method::RMatrix) => vec![(c, quantum::colored_jones_rmatrix_oracle(k, c, &ctx)?, None)],
        (None, Method::Fusion) => {
            let t = quantum::colored_jones_all(k, &ctx, p)?;
            t.values.iter().enumerate().map(|(i, z)| (i as u64 + 1, *z, Some(t.bits))).collect()
        }
        (None, Method::RMatrix) => (1..=(r - 1) / 2)
            .map(|c| quantum::colored_jones_rmatrix_oracle(k, c, &ctx).map(|z| (c, z, None)))
            .collect::<qhyp::Result<_>>()?,
    };
    let json = json!({
        "knot": k, "r": r, "method": method,
        "values": values.iter().map(|(c, z, b)| json!({ "color": c, "re": z.re, "im": z.im, "bits": b })).collect::<Vec<_>>(),
    });
    let mut text = format!("{k} at r = {r} ({method})\n");
    for (c, z, _) in &values {
        text += &format!("J'_{c} = {:+.15e} {:+.15e}i\n", z.re, z.im);
    }
    let rows = values
        .iter()
        .map(|(c, z, _)| vec![c.to_string(), format!("{:.17e}", z.re), format!("{:.17e}", z.im)])
        .collect();
    Ok(Report::new(json, text.trim_end().to_string()).with_table(&["color", "re", "im"], rows))
}

fn manifold(k: &DoubleTwistKnot, slope: Option<&Slope>) -> String {
    match slope {
        Some(s) => format!("{k}({s})"),
        None => format!("complement of {k}"),
    }
}

fn sample_rows(samples: &[quantum::TVSample]) -> Vec<Vec<String>> {
    samples
        .iter()
        .map(|s| {
            vec![
                s.r.to_string(),
                format!("{:.17e}", s.log_tv),
                format!("{:.17e}", s.logslope),
                s.bits.to_string(),
                format!("{:.3}", s.log10_condition),
            ]
        })
        .collect()
}

const SAMPLE_HEADER: [&str; 5] = ["r", "log_tv", "logslope", "bits", "log10_condition"];

fn sample_text(samples: &[quantum::TVSample]) -> String {
    let mut t = format!("{:>5} {:>22} {:>12} {:>6}\n", "r", "log TV", "logslope", "bits");
    for s in samples {
        t += &format!("{:>5} {:>22.12} {:>12.6} {:>6}\n", s.r, s.log_tv, s.logslope, s.bits);
    }
    t
}

fn tv(a: &SweepArgs) -> Result<Report, CliError> {
    let k = a.knot.resolve()?;
    let rs = a.range.levels(DEFAULT_RANGE)?;
    let samples = quantum::tv_sweep(&k, a.slope.as_ref(), &rs, a.precision.precision.into())?;
    let json = json!({ "manifold": manifold(&k, a.slope.as_ref()), "knot": k, "slope": a.slope, "samples": samples });
    let text = format!("{}\n{}", manifold(&k, a.slope.as_ref()), sample_text(&samples).trim_end());
    Ok(Report::new(json, text).with_table(&SAMPLE_HEADER, sample_rows(&samples)))
}

fn sweep_text(title: &str, s: &SweepReport) -> String {
    let mut t = format!("{title}\n{}", sample_text(&s.samples));
    if let Some(e) = &s.estimate {
        t += &format!("extrapolated {:.6}  raw_last {:.6}  residual {:.2e}\n", e.extrapolated, e.raw_last, e.residual);
    }
    if let (Some(v), Some(src)) = (s.target, &s.target_source) {
        t += &format!("target {v} ({src})");
        if let Some(d) = s.relative_deviation {
            t += &format!(", deviation {:+.2}%", 100.0 * d);
        }
        t += "\n";
    }
    t += &format!("monotone {}", s.monotone);
    if let Some(m) = s.monotone_toward_target {
        t += &format!(", toward target {m}");
    }
    t
}

fn ltv(a: &SweepArgs, compare: bool) -> Result<(Report, bool), CliError> {
    let k = a.knot.resolve()?;
    let rs = a.range.levels(DEFAULT_RANGE)?;
    let p: Precision = a.precision.precision.into();
    if compare {
        let slope = a.slope.as_ref().ok_or_else(|| CliError::Usage("--compare needs --slope".into()))?;
        let rep = quantum::q_hyperbolicity_report(&k, Some(slope), &rs, p)?;
        let filling = rep.filling.as_ref().expect("slope given");
        let holds = rep.inequality_holds;
        let mut text = sweep_text(&manifold(&k, None), &rep.complement);
        text += &format!("\n\n{}", sweep_text(&manifold(&k, Some(slope)), filling));
        text += &format!(
            "\n\ncomplement grows at least as fast as the filling (slack {}): {}",
            rep.tolerance,
            holds.map_or("undetermined".to_string(), |h| h.to_string())
        );
        let rows = sample_rows(&rep.complement.samples)
            .into_iter()
            .map(|mut r| {
                r.insert(0, "complement".into());
                r
            })
            .chain(sample_rows(&filling.samples).into_iter().map(|mut r| {
                r.insert(0, "filling".into());
                r
            }))
            .collect();
        let mut header = vec!["manifold"];
        header.extend(SAMPLE_HEADER);
        let json = serde_json::to_value(&rep).map_err(|e| CliError::Compute(e.to_string()))?;
        return Ok((Report::new(json, text).with_table(&header, rows), holds != Some(false)));
    }
    let (ct, ft) = quantum::census_targets(&k, a.slope.as_ref());
    let target = if a.slope.is_some() { ft } else { ct };
    let samples = quantum::tv_sweep(&k, a.slope.as_ref(), &rs, p)?;
    let rep = SweepReport::new(samples, target);
    let mut json = serde_json::to_value(&rep).map_err(|e| CliError::Compute(e.to_string()))?;
    json["manifold"] = json!(manifold(&k, a.slope.as_ref()));
    let text = sweep_text(&manifold(&k, a.slope.as_ref()), &rep);
    let rows = sample_rows(&rep.samples);
    Ok((Report::new(json, text).with_table(&SAMPLE_HEADER, rows), true))
}

fn monodromy(g: usize) -> Result<(Report, bool), CliError> {
    let rep = mcg::fibered_crosscheck(g).map_err(|e| CliError::Usage(e.to_string()))?;
    let stretch = mcg::stretch_certificate(&mcg::phi_word(g)?)?;
    let stretch_prime = mcg::stretch_certificate(&mcg::phi_prime_word(g)?)?;
    let ok = rep.agrees && rep.symplectic;
    let mut json = serde_json::to_value(&rep).map_err(|e| CliError::Compute(e.to_string()))?;
    json["stretch"] = json!(stretch);
    json["stretch_prime"] = json!(stretch_prime);
    let mut text = format!("genus {g}, knot {}\nword {}\naction\n", rep.knot, rep.word);
    for row in &rep.matrix {
        text += &format!("  [{}]\n", row.join(" "));
    }
    text += &format!(
        "characteristic polynomial {}\nalexander {}\nsymplectic {}\nagrees {}\nstretch {stretch:.6} (flipped word {stretch_prime:.6})",
        rep.char_poly, rep.alexander, rep.symplectic, rep.agrees
    );
    Ok((Report::new(json, text), ok))
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map_or(String::new(), |v| v.to_string())
}

fn census_cmd(check_bounds: bool, row: Option<&str>) -> Result<(Report, bool), CliError> {
    let rows: Vec<&census::CensusRow> = match row {
        Some(name) => {
            let r = census::rows_named(name);
            if r.is_empty() {
                return Err(CliError::Compute(format!("no census row named {name}")));
            }
            r
        }
        None => census::census().iter().collect(),
    };
    let mut header = vec!["census_name", "knot", "vol_complement", "slope_on_k", "slope_on_41", "vol_filled"];
    let mut table: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.census_name.clone(),
                opt(&r.knot_name),
                r.vol_complement.clone(),
                opt(&r.slope_on_k),
                opt(&r.slope_on_41),
                opt(&r.vol_filled),
            ]
        })
        .collect();
    let mut json = json!({ "rows": rows });
    let mut ok = true;
    if check_bounds {
        let checks: Vec<census::BoundCheck> = rows.iter().map(|r| census::check_volume_bounds(r)).collect();
        let matches = census::family_rows_match();
        ok = checks.iter().all(|c| c.passes) && matches.iter().all(|m| m.matches);
        header.push("bounds");
        for (t, c) in table.iter_mut().zip(&checks) {
            t.push(if c.no_filling {
                "no filling".into()
            } else if c.passes {
                "pass".into()
            } else {
                "FAIL".into()
            });
        }
        json["bounds"] = json!(checks);
        json["family_matches"] = json!(matches);
        json["all_pass"] = json!(ok);
    }
    let widths: Vec<usize> = (0..header.len())
        .map(|i| table.iter().map(|r| r[i].len()).chain([header[i].len()]).max().unwrap_or(0))
        .collect();
    let line = |cells: Vec<&str>| {
        cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect::<Vec<_>>().join("  ").trim_end().to_string()
    };
    let mut text = line(header.clone());
    for r in &table {
        text += "\n";
        text += &line(r.iter().map(String::as_str).collect());
    }
    if check_bounds {
        text += &format!("\nall rows within bounds and family slopes match: {ok}");
    }
    Ok((Report::new(json, text).with_table(&header, table), ok))
}

fn verify_all(criteria: Option<&[u8]>, range: &RangeArgs, cases: u32) -> Result<(Report, bool), CliError> {
    if let Some(bad) = criteria.and_then(|c| c.iter().find(|&&i| !(1..=12).contains(&i))) {
        return Err(CliError::Usage(format!("no criterion {bad}; criteria are 1 to 12")));
    }
    let mut cfg = acceptance::Config::default();
    if range.is_set() {
        cfg.rs = range.levels((101, 501, 50))?;
    }
    cfg.property_cases = cases.max(acceptance::MIN_PROPERTY_CASES);
    let outcomes = acceptance::run_all(criteria, &cfg, |o| eprintln!("{o}"));
    let ok = outcomes.iter().all(|o| o.passed);
    let passed = outcomes.iter().filter(|o| o.passed).count();
    let mut text: String = outcomes.iter().map(|o| format!("{o}\n")).collect();
    text += &format!("{passed} of {} criteria passed", outcomes.len());
    let rows = outcomes
        .iter()
        .map(|o| {
            vec![
                o.id.to_string(),
                o.title.to_string(),
                o.passed.to_string(),
                o.detail.clone(),
                format!("{:.3}", o.seconds),
            ]
        })
        .collect();
    let json = json!({ "outcomes": outcomes, "passed": passed, "total": outcomes.len(), "all_passed": ok });
    Ok((Report::new(json, text).with_table(&["criterion", "title", "passed", "detail", "seconds"], rows), ok))
}
