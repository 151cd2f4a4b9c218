use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use grex::casestudy::{case_data, run_case_study};
use grex::corpus::{run_corpus, CorpusConfig};
use grex::kl::{conjecture_iii_series, young_quotient_poly, CoxeterElement, CoxeterGroup, KlTable, DEFAULT_LENGTH_BOUND};
use grex::koszul::{
    check_koszul, check_n_q_koszul, check_standard_q_koszul, check_tight, degree_bound, delta0_filtration_suite,
    product_formula_check, quadratic_check, PropertyReport,
};
use grex::par::{set_jobs, Exec};
use grex::qha::{cartan_from_decomposition, certify_qha, decomposition_matrix, QhaVerdict, StandardSystem};
use grex::report::Report;
use grex::specfile::AlgebraDoc;
use grex::{GrexError, Result};

#[derive(Parser)]
#[command(name = "grex", version, about = "Graded algebras, Koszul-type properties, Kazhdan-Lusztig polynomials")]
struct Cli {
    /// Worker threads (default: logical cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Property {
    Koszul,
    Qkoszul,
    StandardQkoszul,
    Tight,
    Quadratic,
    Qha,
    Filtrations,
    ProductFormula,
}

#[derive(Subcommand)]
enum Command {
    /// Check a property of the algebra in a spec file.
    Check {
        spec: PathBuf,
        #[arg(value_enum)]
        property: Property,
        /// Ext degree bound (default: GREX_DEGREE_BOUND or 8).
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Kazhdan-Lusztig polynomials.
    ///
    ///   kl <kind> <rank> <x> <y>               P_{x,y}; kind `~a` for affine
    ///   kl psing <kind> <rank> <I> <ȳ> <w̄>     parabolic singular polynomial
    ///   kl poincare <n> <composition>          r_λ(q) = p_{S_n}(q) / p_{S_λ}(q)
    ///   kl ciii <kind> <rank> <p> <λ> <μ>      Conjecture III series
    ///
    /// Words are strings of generator labels (`e` for the identity); `I`
    /// and weights are comma-separated, `-` for an empty `I`.
    #[command(verbatim_doc_comment)]
    Kl {
        /// Longest element length the recursion may visit.
        #[arg(long, default_value_t = DEFAULT_LENGTH_BOUND)]
        length_bound: usize,
        /// Apply the bar involution in the Conjecture III series.
        #[arg(long)]
        bar: bool,
        /// Use `--` before arguments that start with `-`, such as negative weights.
        #[arg(required = true, num_args = 1..)]
        args: Vec<String>,
    },
    /// The S(5,5), p = 2 case study.
    Casestudy {
        #[command(subcommand)]
        action: CaseAction,
    },
    /// Generate the small-algebra corpus and run the theorem suites.
    Corpus {
        #[arg(long, default_value_t = 3)]
        max_vertices: usize,
        #[arg(long, default_value_t = 4)]
        max_arrows: usize,
        #[arg(long, default_value_t = 2)]
        max_grade: u32,
        #[arg(long, value_delimiter = ',', default_values_t = [2u64, 3])]
        characteristics: Vec<u64>,
        #[arg(long, default_value_t = 40)]
        max_dim: usize,
        #[arg(long, default_value_t = 2)]
        degree: usize,
        /// Run a random subset of this many presentations.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Disable data parallelism.
        #[arg(long)]
        sequential: bool,
    },
}

#[derive(Subcommand)]
enum CaseAction {
    /// Run the full pipeline and report every fact.
    Run,
    /// Dump the embedded tables as TOML.
    ExportData,
}

/// Command outcome: a report, or raw text for data exports.
enum Output {
    Report(Report),
    Raw(String),
}

fn exit_code(e: &GrexError) -> u8 {
    match e {
        GrexError::Parse(_) | GrexError::InvalidInput(_) | GrexError::InfiniteDimensional(_) => 2,
        GrexError::LengthOverflow { .. } | GrexError::DimensionGuard { .. } => 3,
        GrexError::Precondition(_) | GrexError::Structural(_) => 1,
    }
}

fn property_report(name: &str, r: &PropertyReport) -> Report {
    Report::new(name, r.holds(), r)
}

fn cmd_check(spec: &Path, property: Property, degree: Option<usize>) -> Result<Output> {
    let nmax = degree.unwrap_or_else(degree_bound);
    if nmax == 0 {
        return Err(GrexError::InvalidInput("degree bound must be at least 1".into()));
    }
    let doc = AlgebraDoc::load(spec)?;
    let a = doc.build()?;
    let poset = doc.weight_poset(&a)?;
    let report = match property {
        Property::Koszul => property_report("check koszul", &check_koszul(&a, nmax)),
        Property::Qkoszul => property_report("check qkoszul", &check_n_q_koszul(&a, &poset, nmax)),
        Property::StandardQkoszul => property_report("check standard-qkoszul", &check_standard_q_koszul(&a, &poset, nmax)),
        Property::Tight => property_report("check tight", &check_tight(&a)),
        Property::Quadratic => {
            let (data, r) = quadratic_check(&a);
            Report::new("check quadratic", r.holds(), &json!({ "report": r, "data": data }))
        }
        Property::Qha => {
            let sys = StandardSystem::new(a.clone(), poset.clone())?;
            match certify_qha(&sys) {
                QhaVerdict::Certified(cert) => {
                    let d = decomposition_matrix(&sys);
                    let c = cartan_from_decomposition(&d);
                    Report::new(
                        "check qha",
                        true,
                        &json!({ "labels": poset.labels, "certificate": cert, "decomposition": d, "cartan": c }),
                    )
                }
                QhaVerdict::Refuted(why) => Report::new("check qha", false, &json!({ "labels": poset.labels, "failure": why })),
            }
        }
        Property::Filtrations => property_report("check filtrations", &delta0_filtration_suite(&a, &poset, nmax)),
        Property::ProductFormula => property_report("check product-formula", &product_formula_check(&a, &poset, nmax)),
    };
    Ok(Output::Report(report))
}

fn parse_group(kind: &str, rank: &str) -> Result<CoxeterGroup> {
    CoxeterGroup::parse(&format!("{kind}{rank}"))
}

fn parse_element(g: &CoxeterGroup, word: &str) -> Result<CoxeterElement> {
    match word {
        "" | "e" => Ok(g.identity()),
        w => g.element(w),
    }
}

fn parse_ints(s: &str) -> Result<Vec<i64>> {
    s.split(',').map(|x| x.trim().parse().map_err(|_| GrexError::Parse(format!("bad integer list {s:?}")))).collect()
}

fn expect_args(args: &[String], n: usize, usage: &str) -> Result<()> {
    if args.len() != n {
        return Err(GrexError::Parse(format!("usage: kl {usage}")));
    }
    Ok(())
}

fn cmd_kl(args: &[String], length_bound: usize, bar: bool) -> Result<Output> {
    let poly = |p: &grex::exact::LaurentPoly| json!({ "pairs": p.to_pairs(), "text": p.render("q") });
    let result = match args[0].as_str() {
        "poincare" => {
            expect_args(args, 3, "poincare <n> <composition>")?;
            let n: usize = args[1].parse().map_err(|_| GrexError::Parse(format!("bad n {:?}", args[1])))?;
            let comp: Vec<usize> = parse_ints(&args[2])?.into_iter().map(|x| x.max(0) as usize).collect();
            if comp.iter().sum::<usize>() != n {
                return Err(GrexError::InvalidInput(format!("{} is not a composition of {n}", args[2])));
            }
            let r = young_quotient_poly(&comp)?;
            json!({ "n": n, "composition": comp, "poly": poly(&r) })
        }
        "psing" => {
            expect_args(args, 6, "psing <kind> <rank> <I> <ybar> <wbar>")?;
            let g = parse_group(&args[1], &args[2])?;
            let gens: Vec<usize> = if args[3] == "-" || args[3].is_empty() {
                vec![]
            } else {
                args[3]
                    .split(',')
                    .map(|l| g.generator_index(l.trim()).ok_or_else(|| GrexError::Parse(format!("unknown generator {l}"))))
                    .collect::<Result<_>>()?
            };
            let (y, w) = (parse_element(&g, &args[4])?, parse_element(&g, &args[5])?);
            let mut table = KlTable::with_bound(g.clone(), length_bound);
            let p = table.parabolic_sing(&y, &w, &gens)?;
            let t = p.render("t");
            json!({ "group": g.name, "I": gens.iter().map(|&s| g.labels[s].clone()).collect::<Vec<_>>(), "ybar": g.word_labels(&y), "wbar": g.word_labels(&w), "poly": { "pairs": p.to_pairs(), "text": t }, "variable": "t" })
        }
        "ciii" => {
            expect_args(args, 6, "ciii <kind> <rank> <p> <lambda> <mu>")?;
            let g = parse_group(&args[1], &args[2])?;
            let p: i64 = args[3].parse().map_err(|_| GrexError::Parse(format!("bad p {:?}", args[3])))?;
            let (lambda, mu) = (parse_ints(&args[4])?, parse_ints(&args[5])?);
            let mut table = KlTable::with_bound(g.clone(), length_bound);
            let s = conjecture_iii_series(&mut table, &lambda, &mu, p, bar)?;
            json!({ "group": g.name, "p": p, "lambda": lambda, "mu": mu, "bar": bar, "poly": { "pairs": s.to_pairs(), "text": s.render("t") }, "variable": "t" })
        }
        _ => {
            expect_args(args, 4, "<kind> <rank> <x> <y>")?;
            let g = parse_group(&args[0], &args[1])?;
            let (x, y) = (parse_element(&g, &args[2])?, parse_element(&g, &args[3])?);
            let mut table = KlTable::with_bound(g.clone(), length_bound);
            let p = table.p(&x, &y)?;
            json!({ "group": g.name, "x": g.word_labels(&x), "y": g.word_labels(&y), "poly": poly(&p), "variable": "q" })
        }
    };
    Ok(Output::Report(Report::new("kl", true, &result)))
}

fn cmd_casestudy(action: &CaseAction) -> Result<Output> {
    match action {
        CaseAction::Run => {
            let r = run_case_study();
            let failed: Vec<&str> = r.failures().iter().map(|f| f.name.as_str()).collect();
            for name in &failed {
                eprintln!("casestudy: step {name} failed");
            }
            Ok(Output::Report(Report::new("casestudy run", failed.is_empty(), &r)))
        }
        CaseAction::ExportData => Ok(Output::Raw(case_data().to_toml()?)),
    }
}

fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Check { spec, property, degree } => cmd_check(spec, *property, *degree),
        Command::Kl { length_bound, bar, args } => cmd_kl(args, *length_bound, *bar),
        Command::Casestudy { action } => cmd_casestudy(action),
        Command::Corpus { max_vertices, max_arrows, max_grade, characteristics, max_dim, degree, sample, seed, sequential } => {
            let cfg = CorpusConfig {
                max_vertices: *max_vertices,
                max_arrows: *max_arrows,
                max_grade: *max_grade,
                characteristics: characteristics.clone(),
                max_dim: *max_dim,
                degree: *degree,
                sample: *sample,
                seed: *seed,
            };
            let exec = if *sequential { Exec::Sequential } else { Exec::Parallel };
            let r = run_corpus(&cfg, exec)?;
            Ok(Output::Report(Report::new("corpus", r.counterexamples() == 0, &r)))
        }
    }
}

fn emit(cli: &Cli, text: &str) -> std::result::Result<(), String> {
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            let mut out = std::io::stdout().lock();
            match writeln!(out, "{}", text.trim_end()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.to_string()),
                _ => Ok(()),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        set_jobs(j);
    }
    let (text, code) = match run(&cli) {
        Ok(Output::Raw(s)) => (s, 0),
        Ok(Output::Report(r)) => {
            let text = match cli.format {
                Format::Json => r.to_json(),
                Format::Text => r.to_text(),
            };
            (text, u8::from(!r.ok))
        }
        Err(e) => {
            eprintln!("grex: {e}");
            let code = exit_code(&e);
            let r = Report::new("error", false, &json!({ "error": e.to_string(), "exit_code": code }));
            (r.to_json(), code)
        }
    };
    if let Err(e) = emit(&cli, &text) {
        eprintln!("grex: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
