//! Command-line interface: analysis pipeline, cohomology queries,
//! constructions, and the built-in catalog.
//!
//! Exit codes: 0 success, 1 validation or input error, 2 internal
//! invariant failure.

use std::io::Read as _;
use std::panic;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use prehomog::catalog::{
    affinize_document, catalog, catalog_entry, det_three_form, dual_tube_document, load,
    metric_summary, omega_from_json, run_analysis, save, AlgebraSpecDocument,
};
use prehomog::constructions::{coadjoint_extension, CoadjointCocycle};
use prehomog::koszul::{top_character, RelativeComplex};
use prehomog::lie::{InfinitesimalCharacter, SubalgebraSpec};
use prehomog::prehomog::characteristic_map;
use prehomog::scalar::{format_rat, parse_rat, Rat};

#[derive(Parser)]
#[command(name = "prehomog", about = "Exact analysis of affine Lie algebra actions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full analysis pipeline on an affine realization.
    Analyze {
        /// Path, "-" for stdin, or "catalog:NAME".
        input: String,
        /// Also report values at this point, e.g. "1,0,-1/2".
        #[arg(long)]
        at: Option<String>,
        /// Seed for the deterministic witness search.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Relative Lie algebra cohomology dimensions and the top-degree
    /// character criterion.
    Cohomology {
        input: String,
        /// Subalgebra as comma-separated 1-based basis indices.
        #[arg(long = "h", value_name = "INDICES")]
        subalgebra: Option<String>,
        /// Character coefficients, e.g. "0,0,1".
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long)]
        degree: usize,
    },
    /// Build derived objects from an input algebra.
    Construct {
        #[command(subcommand)]
        what: Construct,
    },
    /// List catalog entries, or emit one as JSON.
    Catalog {
        name: Option<String>,
        /// Analyze every affine-realization entry (concurrently).
        #[arg(long)]
        all: bool,
    },
}

#[derive(Subcommand)]
enum Construct {
    /// Coadjoint extension of a two-step nilpotent base algebra.
    Coadjoint {
        base: String,
        /// JSON grid of "p/q" strings: omega(e_i, e_j) components.
        #[arg(long, conflicts_with = "three_form")]
        omega: Option<String>,
        /// Built-in 3-form; currently only "det".
        #[arg(long = "three-form")]
        three_form: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Dual tube realization of an affine realization.
    Tube {
        input: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Etale affine realization of a two-step nilpotent algebra.
    Affinize {
        input: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

fn read_input(input: &str) -> Result<AlgebraSpecDocument, String> {
    if let Some(name) = input.strip_prefix("catalog:") {
        return catalog_entry(name).ok_or_else(|| format!("no catalog entry named '{name}'"));
    }
    let text = if input == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| format!("reading stdin: {e}"))?;
        buf
    } else {
        std::fs::read_to_string(input).map_err(|e| format!("reading {input}: {e}"))?
    };
    load(&text).map_err(|e| e.to_string())
}

fn parse_rat_list(s: &str) -> Result<Vec<Rat>, String> {
    s.split(',')
        .map(|t| parse_rat(t.trim()))
        .collect::<Result<Vec<_>, _>>()
}

fn effective_seed(seed: u64) -> u64 {
    match std::env::var("PHG_SEED") {
        Ok(v) => v.parse().unwrap_or(seed),
        Err(_) => seed,
    }
}

fn cmd_analyze(input: &str, at: Option<&str>, seed: u64, format: Format) -> Result<(), String> {
    let doc = read_input(input)?;
    let report = run_analysis(&doc, effective_seed(seed)).map_err(|e| e.to_string())?;
    match format {
        Format::Json => print!("{}", report.render_json()),
        Format::Text => {
            print!("{}", report.render_text());
            if let Some(point) = at {
                let x = parse_rat_list(point)?;
                let r = doc.to_realization().map_err(|e| e.to_string())?;
                if x.len() != r.ambient_dim() {
                    return Err(format!(
                        "point has {} coordinates, ambient dimension is {}",
                        x.len(),
                        r.ambient_dim()
                    ));
                }
                let cf = characteristic_map(&r).map_err(|e| e.to_string())?;
                let coords: Vec<String> = x.iter().map(format_rat).collect();
                println!("at: ({})", coords.join(", "));
                println!("open orbit at point: {}", cf.nonzero_at(&x));
                if let Some(d) = &report.delta {
                    let rr = prehomog::prehomog::relative_invariant(&r)
                        .map_err(|e| e.to_string())?;
                    let _ = d;
                    println!("delta at point: {}", format_rat(&rr.delta.eval(&x)));
                }
            }
        }
    }
    Ok(())
}

fn cmd_cohomology(
    input: &str,
    subalgebra: Option<&str>,
    lambda: Option<&str>,
    degree: usize,
) -> Result<(), String> {
    let doc = read_input(input)?;
    let g = doc.to_abstract().map_err(|e| e.to_string())?;
    let m = g.dim();
    let h = match subalgebra {
        None => SubalgebraSpec::zero(),
        Some(s) => {
            let mut basis = Vec::new();
            for t in s.split(',') {
                let i: usize = t
                    .trim()
                    .parse()
                    .map_err(|_| format!("bad basis index '{t}'"))?;
                if i == 0 || i > m {
                    return Err(format!("basis index {i} out of range 1..={m}"));
                }
                basis.push(prehomog::lie::basis_vec(m, i - 1));
            }
            SubalgebraSpec::new(&g, basis).map_err(|e| e.to_string())?
        }
    };
    let lam = match lambda {
        None => InfinitesimalCharacter::zero(m),
        Some(s) => {
            let coeffs = parse_rat_list(s)?;
            if coeffs.len() != m {
                return Err(format!("lambda has {} coefficients, need {m}", coeffs.len()));
            }
            InfinitesimalCharacter::new(coeffs)
        }
    };
    let top = m - h.dim();
    if degree > top {
        return Err(format!("degree {degree} exceeds dim g/h = {top}"));
    }
    let complex = RelativeComplex::new(&g, &h, &lam).map_err(|e| e.to_string())?;
    println!("dim g: {m}");
    println!("dim h: {}", h.dim());
    println!("relative cochain dims: {:?}", (0..=top).map(|k| complex.relative_dim(k)).collect::<Vec<_>>());
    println!("H^{degree}: {}", complex.cohomology_dim(degree));
    if degree == top {
        let chi = top_character(&g, &h, &lam);
        let vanishes = chi.iter().all(|(_, v)| {
            use num_traits::Zero;
            v.is_zero()
        });
        println!("top character vanishes on normalizer: {vanishes}");
    }
    Ok(())
}

fn cmd_coadjoint(
    base: &str,
    omega: Option<&str>,
    three_form: Option<&str>,
    format: Format,
) -> Result<(), String> {
    let doc = read_input(base)?;
    let g = match doc.kind.as_str() {
        "metric" => doc.to_metric().map_err(|e| e.to_string())?.algebra,
        _ => doc.to_abstract().map_err(|e| e.to_string())?,
    };
    let cocycle = match (omega, three_form) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("reading {path}: {e}"))?;
            omega_from_json(&g, &text).map_err(|e| e.to_string())?
        }
        (None, Some(name)) => match name {
            "det" => det_three_form(&g).map_err(|e| e.to_string())?,
            other => return Err(format!("unknown three-form '{other}' (expected \"det\")")),
        },
        (None, None) => CoadjointCocycle::zero(g.dim()),
        (Some(_), Some(_)) => unreachable!("clap forbids combining --omega and --three-form"),
    };
    let m = coadjoint_extension(&g, &cocycle).map_err(|e| e.to_string())?;
    let out = AlgebraSpecDocument::from_metric(&format!("{}_coadjoint", doc.name), &m);
    match format {
        Format::Json => print!("{}", save(&out)),
        Format::Text => {
            println!("name: {}", out.name);
            print!("{}", metric_summary(&m));
        }
    }
    Ok(())
}

fn cmd_catalog(name: Option<&str>, all: bool) -> Result<(), String> {
    if all {
        let entries: Vec<_> = catalog()
            .into_iter()
            .filter(|d| d.kind == "affine_realization")
            .collect();
        let reports: Vec<Result<String, String>> = std::thread::scope(|scope| {
            let handles: Vec<_> = entries
                .iter()
                .map(|doc| {
                    scope.spawn(move || {
                        run_analysis(doc, effective_seed(0))
                            .map(|r| r.render_text())
                            .map_err(|e| format!("{}: {e}", doc.name))
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("analysis thread")).collect()
        });
        let mut first_err = None;
        for (i, r) in reports.into_iter().enumerate() {
            if i > 0 {
                println!();
            }
            match r {
                Ok(text) => print!("{text}"),
                Err(e) => {
                    eprintln!("error: {e}");
                    first_err.get_or_insert(e);
                }
            }
        }
        return match first_err {
            None => Ok(()),
            Some(e) => Err(e),
        };
    }
    match name {
        Some(n) => {
            let doc = catalog_entry(n).ok_or_else(|| format!("no catalog entry named '{n}'"))?;
            print!("{}", save(&doc));
        }
        None => {
            for doc in catalog() {
                let note = doc.note.as_deref().unwrap_or("");
                println!("{:<16} {:<20} {note}", doc.name, doc.kind);
            }
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), String> {
    match cli.command {
        Command::Analyze {
            input,
            at,
            seed,
            format,
        } => cmd_analyze(&input, at.as_deref(), seed, format),
        Command::Cohomology {
            input,
            subalgebra,
            lambda,
            degree,
        } => cmd_cohomology(&input, subalgebra.as_deref(), lambda.as_deref(), degree),
        Command::Construct { what } => match what {
            Construct::Coadjoint {
                base,
                omega,
                three_form,
                format,
            } => cmd_coadjoint(&base, omega.as_deref(), three_form.as_deref(), format),
            Construct::Tube { input, format } => {
                let doc = read_input(&input)?;
                let (out, text) = dual_tube_document(&doc).map_err(|e| e.to_string())?;
                match format {
                    Format::Json => print!("{}", save(&out)),
                    Format::Text => {
                        println!("name: {}", out.name);
                        print!("{text}");
                    }
                }
                Ok(())
            }
            Construct::Affinize { input, format } => {
                let doc = read_input(&input)?;
                let out = affinize_document(&doc).map_err(|e| e.to_string())?;
                match format {
                    Format::Json => print!("{}", save(&out)),
                    Format::Text => {
                        let r = out.to_realization().map_err(|e| e.to_string())?;
                        println!("name: {}", out.name);
                        println!("ambient dimension: {}", r.ambient_dim());
                        println!("generators: {}", r.dim());
                        let delta = prehomog::prehomog::relative_invariant(&r)
                            .map_err(|e| e.to_string())?;
                        println!("delta: {}", delta.delta);
                    }
                }
                Ok(())
            }
        },
        Command::Catalog { name, all } => cmd_catalog(name.as_deref(), all),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match panic::catch_unwind(panic::AssertUnwindSafe(|| run(cli))) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(_) => {
            eprintln!("error: internal invariant failure");
            ExitCode::from(2)
        }
    }
}
