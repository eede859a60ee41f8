//! Command-line driver: superpotentials of quadratic algebra presentations,
//! isotypic decomposition, linear systems on flag varieties, and their
//! discrete invariants.

use asinv::catalog::{builtin_names, load_builtin, parse_algebra, AlgebraSpec};
use asinv::pipeline::{
    build_locus, group_boxes, lambda_by_label, render_jsonl, render_table, run_pipeline,
    InvariantSignature, PipelineFlags, ALL_LAMBDAS,
};
use asinv::superpotential::compute_superpotential;
use asinv::tensor::{project_isotypic, Partition};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "asinv",
    about = "Superpotentials of 4-dimensional quadratic algebras and discrete invariants of their geometric loci"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute the twisted superpotential and Nakayama matrix
    Superpotential {
        /// built-in algebra name or path to an .alg file
        algebra: String,
    },
    /// Project the superpotential onto the S4-isotypic components
    Decompose {
        algebra: String,
        #[arg(long, default_value = "all")]
        lambda: String,
    },
    /// Build the linear system and base-locus ideal for one component
    Locus {
        algebra: String,
        #[arg(long)]
        lambda: String,
    },
    /// Compute dimension/degree invariants of the geometric loci
    Invariants {
        algebra: String,
        #[arg(long, default_value = "all")]
        lambda: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 50_000_000)]
        budget: u64,
        /// adjoin a root of this polynomial in z before computing
        #[arg(long)]
        extend: Option<String>,
        /// search for extensions until all components are absolutely irreducible
        #[arg(long)]
        auto_extend: bool,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Group algebras into classes with identical invariant signatures
    Boxes {
        algebras: Vec<String>,
        #[arg(long, default_value = "all")]
        lambda: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 50_000_000)]
        budget: u64,
        #[arg(long)]
        auto_extend: bool,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

fn load(name_or_path: &str) -> Result<AlgebraSpec, String> {
    if let Some(spec) = load_builtin(name_or_path) {
        return Ok(spec);
    }
    let text = std::fs::read_to_string(name_or_path).map_err(|e| {
        format!(
            "'{}' is not a built-in ({}) and could not be read: {}",
            name_or_path,
            builtin_names().join(", "),
            e
        )
    })?;
    parse_algebra(&text).map_err(|e| format!("parse error in {}: {}", name_or_path, e))
}

fn lambdas_from(arg: &str) -> Result<Vec<Partition>, String> {
    if arg == "all" {
        return Ok(ALL_LAMBDAS.to_vec());
    }
    let mut out = vec![];
    for part in arg.split(',') {
        let l = lambda_by_label(part.trim())
            .ok_or_else(|| format!("unknown lambda '{}' (use 400,210,020,101,000,all)", part))?;
        out.push(l);
    }
    Ok(out)
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("error: {}", e);
        std::process::exit(1);
    }
}

fn run(cli: Cli) -> Result<(), String> {
    match cli.command {
        Cmd::Superpotential { algebra } => {
            let spec = load(&algebra)?;
            let rel = spec.relation_space().map_err(|e| e.to_string())?;
            let res = compute_superpotential(&rel).map_err(|e| e.to_string())?;
            println!("algebra: {}", spec.name);
            println!("intersection dimension: {}", res.intersection_dimension);
            println!("w = {}", res.w);
            println!("nakayama:");
            for row in &res.nakayama {
                let cells: Vec<String> = row.iter().map(|c| format!("{}", c)).collect();
                println!("  [{}]", cells.join(", "));
            }
            Ok(())
        }
        Cmd::Decompose { algebra, lambda } => {
            let spec = load(&algebra)?;
            let rel = spec.relation_space().map_err(|e| e.to_string())?;
            let res = compute_superpotential(&rel).map_err(|e| e.to_string())?;
            for l in lambdas_from(&lambda)? {
                let p = project_isotypic(&res.w, l);
                println!("w_{} = {}", l.label(), p);
            }
            Ok(())
        }
        Cmd::Locus { algebra, lambda } => {
            let spec = load(&algebra)?;
            let rel = spec.relation_space().map_err(|e| e.to_string())?;
            let res = compute_superpotential(&rel).map_err(|e| e.to_string())?;
            for l in lambdas_from(&lambda)? {
                if l == Partition::P1111 {
                    let c = asinv::loci::locus_000(&res.w);
                    println!("lambda 000: scalar = {}", c);
                    continue;
                }
                let locus = build_locus(&res.w, l)
                    .map_err(|e| e.to_string())?
                    .expect("geometric lambda");
                println!("lambda {}: ambient {:?}", l.label(), locus.ambient.kind);
                if locus.zero_flag {
                    println!("  component is zero");
                    continue;
                }
                for s in &locus.ambient.structural {
                    println!("  structural: {}", s);
                }
                for s in &locus.sections {
                    println!("  section: {}", s);
                }
            }
            Ok(())
        }
        Cmd::Invariants {
            algebra,
            lambda,
            seed,
            budget,
            extend,
            auto_extend,
            format,
        } => {
            let spec = load(&algebra)?;
            let flags = PipelineFlags {
                seed,
                budget_steps: budget,
                extend,
                auto_extend,
            };
            let sig = run_pipeline(&spec, &lambdas_from(&lambda)?, &flags)
                .map_err(|e| e.to_string())?;
            emit(&sig, format);
            Ok(())
        }
        Cmd::Boxes {
            algebras,
            lambda,
            seed,
            budget,
            auto_extend,
            format,
        } => {
            if algebras.is_empty() {
                return Err("no algebras given".into());
            }
            let flags = PipelineFlags {
                seed,
                budget_steps: budget,
                extend: None,
                auto_extend,
            };
            let lambdas = lambdas_from(&lambda)?;
            let mut sigs: Vec<InvariantSignature> = vec![];
            for a in &algebras {
                let spec = load(a)?;
                sigs.push(
                    run_pipeline(&spec, &lambdas, &flags).map_err(|e| e.to_string())?,
                );
            }
            let boxes = group_boxes(&sigs);
            match format {
                Format::Json => {
                    println!(
                        "{}",
                        serde_json::to_string(&boxes).expect("serialize boxes")
                    );
                }
                Format::Table => {
                    for (i, b) in boxes.iter().enumerate() {
                        let warn = if b.incomparable {
                            "  (incomparable: contains ***** entries)"
                        } else {
                            ""
                        };
                        println!("box {}: {}{}", i + 1, b.algebras.join(", "), warn);
                    }
                }
            }
            Ok(())
        }
    }
}

fn emit(sig: &InvariantSignature, format: Format) {
    match format {
        Format::Table => print!("{}", render_table(sig)),
        Format::Json => print!("{}", render_jsonl(sig)),
    }
}
