//! The `ringlab` command line.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails or a
//! computation is refused, 2 for usage, I/O and parse errors.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::algebra::{dual_names, LocalAlgebra};
use crate::corpus::{random_inverse_system, variable_names};
use crate::decomposition::{factorize, multiplicity11_certificate, Terminal};
use crate::error::{Error, Result};
use crate::io::cache::Cache;
use crate::io::report::Report;
use crate::io::ringfile::{parse_ring_file, RingBody, RingFile};
use crate::linalg::{Field, FieldDescriptor};
use crate::products::{connected_sum, fibre_product};
use crate::resolution::{ar_diagnostic, betti_sequence, poincare_pairing_check, ArVerdict, PresentedModule};
use crate::series::{
    backelin_roos_denominator, check_denominator, check_deviation_divisibility, check_dress, check_levin_socle,
    golod_certificate, power_quotient_poincare, stretched_module_denominator, stretched_poincare, GolodVerdict,
    TruncatedSeries,
};
use crate::with_field;

#[derive(Parser, Debug)]
#[command(name = "ringlab", version, about = "Computations with Artinian local algebras")]
pub struct Cli {
    /// Bypass the on-disk resolution cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Markdown,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Invariants, stretch class, Gorenstein test, socle and Hilbert function.
    Analyze { file: PathBuf },
    /// Split off Loewy length 2 connected summands, with certificates.
    Decompose { file: PathBuf },
    /// Betti numbers of a module from the ring file (`k` by default).
    Betti {
        file: PathBuf,
        #[arg(long, default_value = "k")]
        module: String,
        #[arg(short = 'N', default_value_t = 10)]
        n: usize,
    },
    /// Check a Poincare series identity or structural property.
    Verify {
        check: Check,
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(short = 'N', default_value_t = 10)]
        n: usize,
        /// Restrict module checks to this module.
        #[arg(long)]
        module: Option<String>,
        /// First degree of the vanishing window for denominator checks.
        #[arg(long)]
        window: Option<usize>,
        /// Odd degrees up to this level enter the divisibility target.
        #[arg(long, default_value_t = 2)]
        level: usize,
    },
    /// Generate seeded examples.
    Gen {
        #[command(subcommand)]
        what: Generate,
    },
    /// Fibre product or connected sum of two rings.
    Compose {
        kind: ComposeKind,
        a: PathBuf,
        b: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum Generate {
    /// A random form of the given degree as an inverse system.
    InverseSystem {
        #[arg(long)]
        vars: usize,
        #[arg(long)]
        socle_degree: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// `GF(p)` or `QQ`.
        #[arg(long, default_value = "GF(32003)")]
        field: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ComposeKind {
    Fibre,
    Connected,
}

/// Checks run by `verify`. The short aliases are accepted as well.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Check {
    /// Fibre product formula for `k` and for a module over the first factor.
    Dress,
    /// Poincare series of the socle quotient of a Gorenstein ring.
    Levin,
    /// Residue field series against the Golod bound.
    Golod,
    /// `R/m^i` has `P_k = 1/(1 - nt)` for `2 ≤ i ≤ lo`.
    #[value(alias = "ds4")]
    PowerQuotients,
    /// `d_R(t)·P_M(t)` is eventually zero for the Koszul denominator `d_R`.
    #[value(alias = "sbr2")]
    Denominator,
    /// Closed forms for stretched rings and `μ(m^2) ≤ 2`.
    #[value(alias = "sbr3")]
    ClosedForms,
    /// `d_R·P_k` divides the product over deviations.
    #[value(alias = "prl9_5")]
    Divisibility,
    /// Length ≤ 11 Gorenstein certificate.
    #[value(alias = "ggc6")]
    LengthEleven,
    /// `H_1 × H_{n-1}` Koszul pairing of a Gorenstein ring.
    Pairing,
    /// Ext vanishing windows for the modules of the file.
    Ar,
}

/// Result of one invocation.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
    pub report: Option<Report>,
}

struct Input {
    path: String,
    bytes: Vec<u8>,
    ring: RingFile,
}

/// Failure before any computation: usage, I/O or parse.
struct UsageError(String);

fn load(path: &PathBuf) -> std::result::Result<Input, UsageError> {
    let bytes = std::fs::read(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| UsageError(format!("{}: not UTF-8", path.display())))?;
    let ring = parse_ring_file(&text).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    Ok(Input {
        path: path.display().to_string(),
        bytes,
        ring,
    })
}

fn usage(message: String) -> Outcome {
    Outcome {
        code: 2,
        stdout: String::new(),
        stderr: format!("error: {message}\n"),
        report: None,
    }
}

/// Runs the command line `args` (without the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(std::iter::once("ringlab".to_string()).chain(args.iter().cloned())) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return Outcome {
                code,
                stdout: if code == 0 { text.clone() } else { String::new() },
                stderr: if code == 0 { String::new() } else { text },
                report: None,
            };
        }
    };
    let start = Instant::now();
    let mut report = Report::new(&args);
    let mut stderr = String::new();
    let cache = if cli.no_cache { Cache::disabled() } else { Cache::from_env() };

    let body = match &cli.command {
        Command::Gen { what } => match generate(what, &mut report) {
            Ok(text) => Some(text),
            Err(e) => return usage(e.0),
        },
        Command::Compose { kind, a, b } => {
            let inputs = match [a, b].into_iter().map(load).collect::<std::result::Result<Vec<_>, _>>() {
                Ok(v) => v,
                Err(e) => return usage(e.0),
            };
            for i in &inputs {
                report.add_input(&i.path, &i.bytes);
            }
            match compose(*kind, &inputs, &mut report) {
                Ok(text) => Some(text),
                Err(e) => {
                    report.check("compose", false, e.to_string(), serde_json::Value::Null);
                    None
                }
            }
        }
        cmd => {
            let files: Vec<&PathBuf> = match cmd {
                Command::Analyze { file } | Command::Decompose { file } | Command::Betti { file, .. } => vec![file],
                Command::Verify { files, .. } => files.iter().collect(),
                _ => unreachable!(),
            };
            let inputs = match files.into_iter().map(load).collect::<std::result::Result<Vec<_>, _>>() {
                Ok(v) => v,
                Err(e) => return usage(e.0),
            };
            if let Command::Verify { check, .. } = cmd {
                let want = if *check == Check::Dress { 2 } else { 1 };
                if inputs.len() != want {
                    return usage(format!("{check:?} takes {want} ring file(s), got {}", inputs.len()));
                }
            }
            if let Some(other) = inputs.iter().find(|i| i.ring.field != inputs[0].ring.field) {
                return usage(format!("{} is over {}, expected {}", other.path, other.ring.field, inputs[0].ring.field));
            }
            for i in &inputs {
                report.add_input(&i.path, &i.bytes);
            }
            let field = inputs[0].ring.field;
            if let Err(e) = dispatch(field, cmd, &inputs, &cache, &mut report) {
                report.check("run", false, e.to_string(), serde_json::Value::Null);
            }
            None
        }
    };
    report.time("total", start);
    if let Some(c) = &report.runtime.cache {
        stderr.push_str(&format!("cache: {c}\n"));
    }
    if let Some(path) = &cli.report {
        if let Err(e) = std::fs::write(path, report.to_json()) {
            return usage(format!("{}: {e}", path.display()));
        }
    }
    let stdout = match body {
        Some(text) => text,
        None => match cli.format {
            Format::Json => report.to_json() + "\n",
            Format::Markdown => report.to_markdown(),
        },
    };
    for c in report.checks.iter().filter(|c| !c.passed) {
        stderr.push_str(&format!("FAIL {}: {}\n", c.name, c.summary));
    }
    Outcome {
        code: if report.passed() { 0 } else { 1 },
        stdout,
        stderr,
        report: Some(report),
    }
}

fn dispatch(field: FieldDescriptor, cmd: &Command, inputs: &[Input], cache: &Cache, report: &mut Report) -> Result<()> {
    with_field!(field, f => run_on(&f, cmd, inputs, cache, report))
}

fn run_on<F: Field>(f: &F, cmd: &Command, inputs: &[Input], cache: &Cache, report: &mut Report) -> Result<()> {
    let ring = &inputs[0].ring;
    let t = Instant::now();
    let a = ring.algebra(f)?;
    report.time("build", t);
    match cmd {
        Command::Analyze { .. } => analyze(&a, ring, report),
        Command::Decompose { .. } => decompose(&a, report),
        Command::Betti { module, n, .. } => betti(&a, ring, module, *n, cache, report),
        Command::Verify {
            check,
            n,
            module,
            window,
            level,
            ..
        } => {
            let t = Instant::now();
            let opts = VerifyOptions {
                n: *n,
                module: module.clone(),
                window: *window,
                level: *level,
            };
            verify(*check, &a, inputs, &opts, report)?;
            report.time("verify", t);
            Ok(())
        }
        Command::Gen { .. } | Command::Compose { .. } => unreachable!(),
    }
}

fn analyze<F: Field>(a: &LocalAlgebra<F>, ring: &RingFile, report: &mut Report) -> Result<()> {
    let socle = a.socle();
    report.result("field", a.descriptor().to_string());
    report.result("vars", &ring.vars);
    report.result("length", a.dim());
    report.result("edim", a.edim());
    report.result("loewy_length", a.loewy_length());
    report.result("hilbert_function", a.hilbert_function());
    report.result("socle_dim", socle.dim());
    report.result(
        "socle_basis",
        socle.basis().iter().map(|v| a.format_element(v)).collect::<Vec<_>>(),
    );
    report.result("gorenstein", a.is_gorenstein());
    report.result("mu_m2", a.mu(&a.ideal_power(2)));
    report.result("stretch_class", a.classify_stretch().to_string());
    let p = a.minimal_presentation();
    report.result("minimal_presentation_vars", &p.vars);
    report.result(
        "minimal_presentation",
        p.relations.iter().map(|r| r.format(a.field(), &p.vars)).collect::<Vec<_>>(),
    );
    report.result("table_sha256", crate::io::report::sha256_hex(a.canonical_string().as_bytes()));
    Ok(())
}

fn factor_summary<F: Field>(a: &LocalAlgebra<F>) -> serde_json::Value {
    let p = a.minimal_presentation();
    json!({
        "length": a.dim(),
        "hilbert_function": a.hilbert_function(),
        "vars": p.vars,
        "relations": p.relations.iter().map(|r| r.format(a.field(), &p.vars)).collect::<Vec<_>>(),
    })
}

fn decompose<F: Field>(a: &LocalAlgebra<F>, report: &mut Report) -> Result<()> {
    let fz = factorize(a)?;
    for (i, c) in fz.certificates.iter().enumerate() {
        let passed = c.checks.iter().all(|(_, ok)| *ok);
        report.check(
            &format!("split {}", i + 1),
            passed,
            format!(
                "A = S # T with lengths {} and {}; phi multiplicative on {} basis pairs",
                c.s.dim(),
                c.t.dim(),
                c.pairs_checked
            ),
            json!({ "checks": c.checks, "pairs_checked": c.pairs_checked }),
        );
    }
    report.result("factors", fz.factors.iter().map(factor_summary).collect::<Vec<_>>());
    report.result("terminal", fz.terminal);
    if let Terminal::CriterionIndecomposable { .. } = fz.terminal {
        report.note("the last factor has (0 : m^2) inside m^2, so no Loewy length 2 summand splits off");
    }
    Ok(())
}

/// Canonical text of a module for cache keys.
fn module_key<F: Field>(a: &LocalAlgebra<F>, m: &PresentedModule<F>) -> String {
    let f = a.field();
    let mut s = format!("rank={};", m.rank());
    for col in m.relations() {
        for e in col {
            s.push_str(&e.iter().map(|x| f.format(x)).collect::<Vec<_>>().join(","));
            s.push('|');
        }
        s.push(';');
    }
    s
}

fn betti<F: Field>(
    a: &LocalAlgebra<F>,
    ring: &RingFile,
    module: &str,
    n: usize,
    cache: &Cache,
    report: &mut Report,
) -> Result<()> {
    let m = ring.module(a, module)?;
    let key = Cache::key(&[
        "betti-v1",
        &a.canonical_string(),
        &module_key(a, &m),
        &n.to_string(),
    ]);
    let t = Instant::now();
    let (b, status): (Vec<usize>, String) = cache.get_or_compute(&key, || betti_sequence(a, &m, n))?;
    report.time("resolution", t);
    report.runtime.cache = Some(status);
    report.result("module", module);
    report.result("N", n);
    report.result("betti", &b);
    report.result("poincare_series", TruncatedSeries::from_counts(&b).to_string());
    Ok(())
}

struct VerifyOptions {
    n: usize,
    module: Option<String>,
    window: Option<usize>,
    level: usize,
}

/// Modules a module-level check runs on: the requested one, else `k` and
/// every module of the file.
fn modules_for<F: Field>(
    a: &LocalAlgebra<F>,
    ring: &RingFile,
    opts: &VerifyOptions,
) -> Result<Vec<(String, PresentedModule<F>)>> {
    let names: Vec<String> = match &opts.module {
        Some(m) => vec![m.clone()],
        None => std::iter::once("k".to_string())
            .chain(ring.module_names().into_iter().filter(|n| *n != "k").map(String::from))
            .collect(),
    };
    names
        .into_iter()
        .map(|n| Ok((n.clone(), ring.module(a, &n)?)))
        .collect()
}

fn record<T: serde::Serialize>(report: &mut Report, name: &str, r: Result<(bool, String, T)>) {
    match r {
        Ok((passed, summary, details)) => report.check(name, passed, summary, details),
        Err(e) => report.check(name, false, e.to_string(), serde_json::Value::Null),
    }
}

fn verify<F: Field>(
    check: Check,
    a: &LocalAlgebra<F>,
    inputs: &[Input],
    opts: &VerifyOptions,
    report: &mut Report,
) -> Result<()> {
    let ring = &inputs[0].ring;
    let n = opts.n;
    report.result("N", n);
    match check {
        Check::Dress => {
            let t = inputs[1].ring.algebra(a.field())?;
            let module = match &opts.module {
                Some(name) => Some(ring.module(a, name)?),
                None => None,
            };
            let r = check_dress(a, &t, module.as_ref(), n)?;
            report.check("fibre product, residue field", r.ring.passed, r.ring.summary(), &r.ring);
            if let Some(m) = &r.module {
                report.check("fibre product, module", m.passed, m.summary(), m);
            }
        }
        Check::Levin => record(
            report,
            "socle quotient series",
            check_levin_socle(a, n).map(|c| (c.passed, c.summary(), c)),
        ),
        Check::Golod => record(
            report,
            "golod bound",
            golod_certificate(a, n).map(|g| {
                let passed = matches!(g.verdict, GolodVerdict::NumericallyGolod { .. });
                (passed, g.verdict.to_string(), g)
            }),
        ),
        Check::PowerQuotients => {
            let lo = a.loewy_length();
            if lo < 2 {
                report.check("power quotients", false, "Loewy length below 2", serde_json::Value::Null);
            }
            for i in 2..=lo {
                record(
                    report,
                    &format!("R/m^{i}"),
                    power_quotient_poincare(a, i).and_then(|(q, pred)| {
                        let c = pred.verify(&q, n)?;
                        let gor = q.is_gorenstein();
                        let summary = format!("{}; quotient Gorenstein: {gor}", c.summary());
                        Ok((c.passed && !gor, summary, c))
                    }),
                );
            }
        }
        Check::Denominator => {
            let d = backelin_roos_denominator(a)?;
            report.result("denominator", &d);
            for (name, m) in modules_for(a, ring, opts)? {
                record(
                    report,
                    &format!("denominator times P_{name}"),
                    check_denominator(a, &m, &d, n, opts.window).map(|r| {
                        let s = format!(
                            "window [{}, {}]: polynomial part {}",
                            r.window_start, r.through, r.polynomial_part
                        );
                        (r.passed, s, r)
                    }),
                );
            }
        }
        Check::ClosedForms => {
            record(
                report,
                "closed form for P_k",
                stretched_poincare(a).and_then(|p| {
                    let c = p.verify(a, n)?;
                    Ok((c.passed, format!("{:?}: {}; {}", p.family, p.formula, c.summary()), c))
                }),
            );
            if a.is_gorenstein() && a.mu(&a.ideal_power(2)) <= 2 {
                let d = stretched_module_denominator(a.edim());
                report.result("module_denominator", &d);
                for (name, m) in modules_for(a, ring, opts)? {
                    record(
                        report,
                        &format!("common denominator for {name}"),
                        check_denominator(a, &m, &d, n, opts.window).map(|r| {
                            let s = format!("window [{}, {}]", r.window_start, r.through);
                            (r.passed, s, r)
                        }),
                    );
                }
            }
        }
        Check::Divisibility => {
            let d = backelin_roos_denominator(a)?;
            record(
                report,
                "deviation divisibility",
                check_deviation_divisibility(a, &d, opts.level, n).map(|r| {
                    let s = if r.hypothesis_holds {
                        format!("{} divides {}: {}", r.product, r.target, r.passed)
                    } else {
                        "denominator times P_k is not a polynomial on the window".to_string()
                    };
                    (r.passed, s, r)
                }),
            );
            report.note("e-values are deviation-formula values");
        }
        Check::LengthEleven => {
            match multiplicity11_certificate(a) {
                Ok(c) => report.check("length 11 certificate", true, c.summary(), json!({"depth": c.depth()})),
                Err(e @ Error::OutOfRange(_)) => {
                    report.check("length 11 certificate", false, e.to_string(), serde_json::Value::Null);
                    report.note(format!("{e}; best-effort factorization reported separately"));
                    match factorize(a) {
                        Ok(fz) => report.result(
                            "best_effort_factors",
                            fz.factors.iter().map(factor_summary).collect::<Vec<_>>(),
                        ),
                        Err(e) => report.note(format!("best-effort factorization failed: {e}")),
                    }
                }
                Err(e) => return Err(e),
            }
        }
        Check::Pairing => record(
            report,
            "koszul pairing",
            poincare_pairing_check(a).map(|(ok, w)| {
                (ok, format!("H1 rank {}, pairing rank {}", w.h1, w.pairing_rank), w)
            }),
        ),
        Check::Ar => {
            for (name, m) in modules_for(a, ring, opts)? {
                record(
                    report,
                    &format!("ext window for {name}"),
                    ar_diagnostic(a, &m, n).map(|v| {
                        let passed = v != ArVerdict::VanishingWindowFound;
                        (passed, format!("{v:?}"), v)
                    }),
                );
            }
        }
    }
    Ok(())
}

fn parse_field_arg(s: &str) -> std::result::Result<FieldDescriptor, UsageError> {
    let rf = parse_ring_file(&format!("field: {s}\nvars: x\nrelations: x\n")).map_err(|e| UsageError(e.to_string()))?;
    Ok(rf.field)
}

fn generate(what: &Generate, report: &mut Report) -> std::result::Result<String, UsageError> {
    match what {
        Generate::InverseSystem {
            vars,
            socle_degree,
            seed,
            field,
        } => {
            report.seed = Some(*seed);
            let desc = parse_field_arg(field)?;
            let inner = || -> Result<String> {
                with_field!(desc, f => {
                    let dual = random_inverse_system(&f, *vars, *socle_degree, *seed)?;
                    let names = variable_names(*vars);
                    let rf = RingFile {
                        field: desc,
                        vars: names.clone(),
                        body: RingBody::InverseSystem(dual.format(&f, &dual_names(&names))),
                        modules: Vec::new(),
                    };
                    Ok(format!(
                        "# ringlab gen inverse-system --vars {vars} --socle-degree {socle_degree} --seed {seed}\n{rf}"
                    ))
                })
            };
            inner().map_err(|e| UsageError(e.to_string()))
        }
    }
}

fn compose(kind: ComposeKind, inputs: &[Input], report: &mut Report) -> Result<String> {
    let field = inputs[0].ring.field;
    if inputs[1].ring.field != field {
        return Err(Error::FieldMismatch(field.to_string(), inputs[1].ring.field.to_string()));
    }
    with_field!(field, f => {
        let r = inputs[0].ring.algebra(&f)?;
        let s = inputs[1].ring.algebra(&f)?;
        let product = match kind {
            ComposeKind::Fibre => fibre_product(&r, &s)?.algebra,
            ComposeKind::Connected => connected_sum(&r, &s)?.algebra,
        };
        report.result("length", product.dim());
        report.result("hilbert_function", product.hilbert_function());
        Ok(RingFile::from_algebra(&product).to_string())
    })
}
