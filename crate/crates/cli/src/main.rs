use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use onematrix::correlators::{
    self, free_energy_with, partition_function_with, thooft_substitute, Basis, BasisExpansion,
    Engine,
};
use onematrix::hz::{hz_c_poly, HzTable};
use onematrix::kp::{self, default_cap, symmetrized_blocks};
use onematrix::polyalg::{NPoly, Series};
use onematrix::verify::{verify, Suite};
use onematrix::wick::{connected_correlator, genus_census};
use onematrix::{Error, Graded, Partition};

#[derive(Parser)]
#[command(
    name = "onematrix",
    version,
    about = "Exact correlators and n-point functions of the Hermitian one-matrix model"
)]
struct Cli {
    /// Worker threads for the parallel engines (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EngineArg {
    Wick,
    Char,
    Kp,
    Both,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BasisArg {
    Power,
    Schur,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// ⟨p_λ⟩ at finite N, optionally connected or in 't Hooft form.
    Correlator {
        #[arg(long)]
        lambda: String,
        #[arg(long, value_enum, default_value = "char")]
        engine: EngineArg,
        /// Substitute N = t/g_s.
        #[arg(long)]
        thooft: bool,
        /// Connected correlator ⟨p_λ⟩_c.
        #[arg(long)]
        connected: bool,
    },
    /// The partition function Z_N in the power or Schur basis.
    Zfunction {
        #[arg(long)]
        degree: usize,
        #[arg(long, value_enum, default_value = "power")]
        basis: BasisArg,
        #[arg(long, value_enum, default_value = "char")]
        engine: EngineArg,
        #[arg(long)]
        json: bool,
    },
    /// The free energy log Z_N in the power basis.
    FreeEnergy {
        #[arg(long)]
        degree: usize,
        #[arg(long, value_enum, default_value = "char")]
        engine: EngineArg,
        #[arg(long)]
        thooft: bool,
        #[arg(long)]
        json: bool,
    },
    /// The n-point function G^(n) through Σ j ≤ cap.
    Npoint {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        cap: Option<i64>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        #[arg(long, value_enum, default_value = "kp")]
        engine: EngineArg,
    },
    /// Harer–Zagier numbers c(n, k).
    Hz {
        /// n_max and k_max.
        #[arg(long, num_args = 2, value_names = ["N_MAX", "K_MAX"])]
        table: Vec<u32>,
        /// Print c(n, N) as polynomials in N instead.
        #[arg(long)]
        poly: bool,
        #[arg(long)]
        json: bool,
    },
    /// Cross-check suites; prints a JSON report.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 6)]
        n_max: u32,
    },
    /// Face census of all gluings of the stars of λ.
    Census {
        #[arg(long)]
        lambda: String,
    },
}

enum Failure {
    Error(Error),
    Disagreement(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Disagreement(m) => Failure::Disagreement(m),
            e => Failure::Error(e),
        }
    }
}

type Run = std::result::Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match dispatch(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Disagreement(m)) => {
            println!("{m}");
            eprintln!("error: engines disagree");
            ExitCode::from(4)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::InvalidPartition(_) => 2,
                Error::CapacityExceeded { .. } => 3,
                _ => 1,
            })
        }
    }
}

fn dispatch(command: Command) -> Run {
    match command {
        Command::Correlator {
            lambda,
            engine,
            thooft,
            connected,
        } => correlator(&lambda, engine, thooft, connected),
        Command::Zfunction {
            degree,
            basis,
            engine,
            json,
        } => zfunction(degree, basis, engine, json),
        Command::FreeEnergy {
            degree,
            engine,
            thooft,
            json,
        } => free_energy(degree, engine, thooft, json),
        Command::Npoint {
            n,
            cap,
            format,
            engine,
        } => npoint(n, cap.unwrap_or_else(|| default_cap(n)), format, engine),
        Command::Hz { table, poly, json } => hz(&table, poly, json),
        Command::Verify { suite, n_max } => {
            let suite: Suite = suite.parse()?;
            let report = verify(suite, n_max)?;
            let text = report.to_json() + "\n";
            if report.passed() {
                Ok(text)
            } else {
                Err(Failure::Disagreement(text.trim_end().to_string()))
            }
        }
        Command::Census { lambda } => {
            let c = genus_census(&parse_partition(&lambda)?)?;
            Ok(to_json(&c))
        }
    }
}

fn parse_partition(s: &str) -> std::result::Result<Partition, Failure> {
    Ok(s.parse::<Partition>()?)
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

/// The engines selected for a correlator-type computation.
fn correlator_engines(engine: EngineArg) -> std::result::Result<Vec<Engine>, Failure> {
    match engine {
        EngineArg::Wick => Ok(vec![Engine::Wick]),
        EngineArg::Char => Ok(vec![Engine::Char]),
        EngineArg::Both | EngineArg::All => Ok(vec![Engine::Char, Engine::Wick]),
        EngineArg::Kp => Err(Failure::Usage(
            "the kp engine computes n-point functions only".into(),
        )),
    }
}

fn agree<T: PartialEq + std::fmt::Display>(values: &[(Engine, T)], what: &str) -> Run {
    let (first_engine, first) = &values[0];
    for (e, v) in &values[1..] {
        if v != first {
            return Err(Failure::Disagreement(format!(
                "{what}: {first_engine:?} gives {first}, {e:?} gives {v}"
            )));
        }
    }
    Ok(String::new())
}

fn correlator(lambda: &str, engine: EngineArg, thooft: bool, connected: bool) -> Run {
    let lambda = parse_partition(lambda)?;
    let engines = correlator_engines(engine)?;
    let mut values: Vec<(Engine, Graded)> = Vec::new();
    for &e in &engines {
        let v = if connected {
            match e {
                Engine::Wick => connected_correlator(&lambda)?,
                Engine::Char => {
                    let f = free_energy_with(lambda.weight(), Engine::Char)?;
                    f.coeff(&lambda)
                        .scale(&num_rational::BigRational::from_integer(
                            onematrix::partitions::z_of(&lambda),
                        ))
                }
            }
        } else {
            correlators::correlator(&lambda, e)?
        };
        values.push((e, v));
    }
    agree(&values, &format!("⟨p_({lambda})⟩"))?;
    let v = &values[0].1;
    Ok(if thooft {
        format!("{}\n", thooft_substitute(v))
    } else {
        format!("{v}\n")
    })
}

fn expansion_text(x: &BasisExpansion, thooft: bool) -> String {
    let mut out = String::new();
    let name = match x.basis {
        Basis::Power => "p",
        Basis::Schur => "s",
    };
    for (lambda, g) in x.ordered() {
        let label = if lambda.is_empty() {
            "∅".to_string()
        } else {
            lambda.to_string()
        };
        let value = if thooft {
            thooft_substitute(g).to_string()
        } else {
            g.to_string()
        };
        let _ = writeln!(out, "{name}_({label})\t{value}");
    }
    out
}

fn zfunction(degree: usize, basis: BasisArg, engine: EngineArg, json: bool) -> Run {
    let basis = match basis {
        BasisArg::Power => Basis::Power,
        BasisArg::Schur => Basis::Schur,
    };
    let engines = correlator_engines(engine)?;
    let mut results = Vec::new();
    for &e in &engines {
        results.push((e, partition_function_with(degree, basis, e)?));
    }
    check_expansions(&results, "Z_N")?;
    let z = &results[0].1;
    Ok(if json {
        to_json(&z.to_json_terms())
    } else {
        expansion_text(z, false)
    })
}

fn check_expansions(
    results: &[(Engine, BasisExpansion)],
    what: &str,
) -> std::result::Result<(), Failure> {
    let (e0, first) = &results[0];
    for (e, x) in &results[1..] {
        if x.coeffs != first.coeffs {
            let lambda = first
                .coeffs
                .keys()
                .chain(x.coeffs.keys())
                .find(|l| first.coeff(l) != x.coeff(l))
                .cloned()
                .unwrap_or_else(Partition::empty);
            return Err(Failure::Disagreement(format!(
                "{what} at g_({lambda}): {e0:?} gives {}, {e:?} gives {}",
                first.coeff(&lambda),
                x.coeff(&lambda)
            )));
        }
    }
    Ok(())
}

fn free_energy(degree: usize, engine: EngineArg, thooft: bool, json: bool) -> Run {
    let engines = correlator_engines(engine)?;
    let mut results = Vec::new();
    for &e in &engines {
        results.push((e, free_energy_with(degree, e)?));
    }
    check_expansions(&results, "log Z_N")?;
    let f = &results[0].1;
    Ok(if json {
        to_json(&f.to_json_terms())
    } else {
        expansion_text(f, thooft)
    })
}

fn npoint(n: usize, cap: i64, format: Format, engine: EngineArg) -> Run {
    let g = match engine {
        EngineArg::Kp => kp::npoint(n, cap)?,
        EngineArg::All => {
            let g = kp::npoint(n, cap)?;
            let mut others = vec![("symbolic", kp::npoint_symbolic(n, cap)?)];
            if n == 2 {
                others.push(("closed form", kp::two_point_closed_form(cap)?));
            }
            for (name, h) in others {
                if let Some(d) = series_difference(&g, &h) {
                    return Err(Failure::Disagreement(format!("sampled vs {name}: {d}")));
                }
            }
            g
        }
        _ => {
            return Err(Failure::Usage(
                "n-point functions use the kp engine (or all)".into(),
            ))
        }
    };
    Ok(match format {
        Format::Json => to_json(&json!({
            "n": n,
            "cap": cap,
            "space": g.space(),
            "terms": g.to_json_terms(0),
        })),
        Format::Csv => {
            let mut out = String::from("exponents,gs,poly\n");
            for (e, c) in ordered_terms(&g) {
                let exps: Vec<String> = e.iter().map(|x| x.to_string()).collect();
                let _ = writeln!(out, "{},0,{}", exps.join(" "), c);
            }
            out
        }
        Format::Table => {
            let blocks = symmetrized_blocks(&g).ok_or_else(|| {
                Failure::Error(Error::Internal("n-point function is not symmetric".into()))
            })?;
            let mut out = String::new();
            for (e, c) in blocks {
                let exps: Vec<String> = e.iter().map(|x| x.to_string()).collect();
                let _ = writeln!(out, "[{}]\t{}", exps.join(","), c);
            }
            out
        }
    })
}

/// Terms ordered by total degree, then lexicographically from the largest
/// first exponent.
fn ordered_terms(g: &Series<NPoly>) -> Vec<(&Vec<i32>, &NPoly)> {
    let mut v: Vec<_> = g.terms().collect();
    v.sort_by(|a, b| {
        let (sa, sb): (i32, i32) = (a.0.iter().sum(), b.0.iter().sum());
        sa.cmp(&sb).then(b.0.cmp(a.0))
    });
    v
}

fn series_difference(a: &Series<NPoly>, b: &Series<NPoly>) -> Option<String> {
    let zero = NPoly::zero();
    a.terms()
        .map(|(e, _)| e)
        .chain(b.terms().map(|(e, _)| e))
        .find(|e| a.coeff(e) != b.coeff(e))
        .map(|e| {
            format!(
                "exponents {e:?}: {} vs {}",
                a.coeff(e).unwrap_or(&zero),
                b.coeff(e).unwrap_or(&zero)
            )
        })
}

fn hz(table: &[u32], poly: bool, json: bool) -> Run {
    let (n_max, k_max) = match table {
        [n, k] => (*n, *k),
        _ => (6, 6),
    };
    if n_max > 40 || k_max > 40 {
        return Err(Failure::Error(Error::CapacityExceeded {
            what: "Harer–Zagier table size",
            requested: n_max.max(k_max) as usize,
            limit: 40,
        }));
    }
    if poly {
        let rows: Vec<(u32, NPoly)> = (0..=n_max).map(|n| (n, hz_c_poly(n))).collect();
        return Ok(if json {
            to_json(
                &rows
                    .iter()
                    .map(|(n, p)| json!({"n": n, "poly": p}))
                    .collect::<Vec<_>>(),
            )
        } else {
            rows.iter()
                .map(|(n, p)| format!("c({n}, N)\t{p}\n"))
                .collect()
        });
    }
    let t = HzTable::new(n_max, k_max);
    let rows: Vec<Vec<String>> = (0..=n_max)
        .map(|n| (0..=k_max).map(|k| t.c(n, k).to_string()).collect())
        .collect();
    Ok(if json {
        to_json(&json!({"n_max": n_max, "k_max": k_max, "c": rows}))
    } else {
        let mut out = String::from("n\\k");
        for k in 0..=k_max {
            let _ = write!(out, "\t{k}");
        }
        out.push('\n');
        for (n, row) in rows.iter().enumerate() {
            let _ = writeln!(out, "{n}\t{}", row.join("\t"));
        }
        out
    })
}
