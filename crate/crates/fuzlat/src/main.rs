//! Command-line surface for the fuzzy-lattice toolkit.
//!
//! Exit codes: 0 on success/pass, 1 when a check fails (witnesses go to
//! stdout as JSON), 2 on usage or input errors.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use fuzlat::gen::{self, GenConfig};
use fuzlat::io::{self, Format, MatrixDocument};
use fuzlat::morphism::LatticeMap;
use fuzlat::order::{BoundedFuzzyLattice, LatticeCertError};
use fuzlat::product::{direct_product, ProductOptions};
use fuzlat::tnorm::TNorm;
use fuzlat::verify::{verify_theorem, Theorem, VerifyConfig};
use fuzlat::FuzzyRelationFrame;

#[derive(Parser)]
#[command(
    name = "fuzlat",
    version,
    about = "Bounded fuzzy lattices and t-norm direct products"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the fuzzy poset axioms and certify a matrix as a bounded fuzzy
    /// lattice.
    Check { file: PathBuf },
    /// Build the direct product of one or more certified lattices.
    Product {
        /// Factor matrices, in order.
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long, value_parser = parse_tnorm)]
        tnorm: TNorm,
        /// Separator between factor labels.
        #[arg(long, default_value = "")]
        sep: String,
        /// Write the product here instead of stdout (format by extension).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Fuzzy meet of two elements, by label.
    Meet { file: PathBuf, a: String, b: String },
    /// Fuzzy join of two elements, by label.
    Join { file: PathBuf, a: String, b: String },
    /// Check a label-to-label map for monotonicity and the bounded
    /// homomorphism equations.
    Hom {
        source: PathBuf,
        target: PathBuf,
        /// JSON file of the form {"source_label": "target_label", ...}.
        #[arg(long)]
        map: PathBuf,
    },
    /// Find the first transitivity counterexample of a relation.
    WitnessIntransitivity { file: PathBuf },
    /// Run a seeded property-verification target.
    Verify(VerifyArgs),
    /// Generate a random lattice or poset fixture.
    Gen {
        /// JSON generator config; defaults apply when omitted.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        /// Generate a poset instead of a lattice.
        #[arg(long)]
        poset: bool,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Target id (Thm4_8, Thm5_6, ThmProd5_6, Thm4_4, Lemma4_11) or its
    /// descriptive alias.
    #[arg(long, value_parser = Theorem::parse)]
    theorem: Theorem,
    #[arg(long, default_value_t = 100)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated t-norm names; per-target defaults when omitted.
    #[arg(long, value_delimiter = ',')]
    tnorm: Vec<String>,
    /// Where to write failure bundles.
    #[arg(long, default_value = "verify-failures")]
    out_dir: PathBuf,
}

fn parse_tnorm(name: &str) -> Result<TNorm, String> {
    TNorm::builtin(name).map_err(|e| e.to_string())
}

enum Outcome {
    Pass,
    CheckFailed,
}

#[derive(Debug)]
struct InputError(String);

impl<E: std::error::Error> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn main() -> ExitCode {
    // terminate quietly when downstream closes the pipe (fuzlat ... | head)
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::CheckFailed) => ExitCode::from(1),
        Err(InputError(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn load_frame(path: &Path) -> Result<FuzzyRelationFrame, InputError> {
    Ok(io::load(path, Format::from_path(path))?)
}

fn certify_or_report(
    frame: FuzzyRelationFrame,
) -> Result<BoundedFuzzyLattice, Box<LatticeCertError>> {
    BoundedFuzzyLattice::certify(frame).map_err(Box::new)
}

fn cert_error_json(error: &LatticeCertError) -> serde_json::Value {
    let detail = match error {
        LatticeCertError::NotPoset { report } => json!({ "poset": report }),
        LatticeCertError::MissingMeet {
            a,
            b,
            label_a,
            label_b,
        }
        | LatticeCertError::MissingJoin {
            a,
            b,
            label_a,
            label_b,
        } => {
            json!({ "pair": [a, b], "labels": [label_a, label_b] })
        }
        LatticeCertError::AmbiguousBound {
            a,
            b,
            first,
            second,
        } => {
            json!({ "pair": [a, b], "candidates": [first, second] })
        }
        LatticeCertError::NoBottom { blockers } | LatticeCertError::NoTop { blockers } => {
            json!({ "blockers": blockers })
        }
    };
    json!({ "kind": error.kind(), "message": error.to_string(), "detail": detail })
}

fn print_json(value: &serde_json::Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("report serializes")
    );
}

fn run(command: Command) -> Result<Outcome, InputError> {
    match command {
        Command::Check { file } => {
            let frame = load_frame(&file)?;
            let poset = frame.is_fuzzy_poset();
            let (lattice_json, pass) = match certify_or_report(frame) {
                Ok(lattice) => (
                    json!({
                        "certified": true,
                        "bottom": lattice.label(lattice.bottom()),
                        "top": lattice.label(lattice.top()),
                    }),
                    true,
                ),
                Err(error) => (
                    json!({ "certified": false, "error": cert_error_json(&error) }),
                    false,
                ),
            };
            print_json(&json!({
                "file": file.display().to_string(),
                "poset": poset,
                "lattice": lattice_json,
            }));
            Ok(if pass {
                Outcome::Pass
            } else {
                Outcome::CheckFailed
            })
        }
        Command::Product {
            files,
            tnorm,
            sep,
            output,
        } => {
            let mut factors = Vec::new();
            for file in &files {
                let frame = load_frame(file)?;
                match certify_or_report(frame) {
                    Ok(lattice) => factors.push(lattice),
                    Err(error) => {
                        print_json(&json!({
                            "file": file.display().to_string(),
                            "error": cert_error_json(&error),
                        }));
                        return Ok(Outcome::CheckFailed);
                    }
                }
            }
            let options = ProductOptions {
                separator: sep,
                ..ProductOptions::default()
            };
            let product = direct_product(factors, tnorm.clone(), &options)?;
            let name = format!("product of {} factors under {}", files.len(), tnorm.name());
            let doc = MatrixDocument::from_frame(product.frame()).with_name(name);
            match output {
                Some(path) => io::save(&doc, &path, Format::from_path(&path))?,
                None => print!("{}", io::emit(&doc, Format::Json)),
            }
            Ok(Outcome::Pass)
        }
        Command::Meet { file, a, b } => table_query(&file, &a, &b, "meet"),
        Command::Join { file, a, b } => table_query(&file, &a, &b, "join"),
        Command::Hom {
            source,
            target,
            map,
        } => {
            let source_lattice = certify_input(&source)?;
            let target_lattice = certify_input(&target)?;
            let text = fs::read_to_string(&map).map_err(|e| InputError(e.to_string()))?;
            let pairs: BTreeMap<String, String> = serde_json::from_str(&text)?;
            let map = LatticeMap::from_labels(&source_lattice, &target_lattice, &pairs)?;
            let monotone = map.is_monotone();
            let hom = map.is_bounded_homomorphism();
            let pass = hom.holds();
            print_json(&json!({
                "monotone": monotone,
                "bounded_homomorphism": hom,
                "pass": pass,
            }));
            Ok(if pass {
                Outcome::Pass
            } else {
                Outcome::CheckFailed
            })
        }
        Command::WitnessIntransitivity { file } => {
            let frame = load_frame(&file)?;
            match frame.witness_intransitivity() {
                Some([a, b, c]) => {
                    print_json(&json!({
                        "transitive": false,
                        "witness": {
                            "indices": [a, b, c],
                            "labels": [frame.label(a), frame.label(b), frame.label(c)],
                        },
                    }));
                    Ok(Outcome::CheckFailed)
                }
                None => {
                    print_json(&json!({ "transitive": true, "witness": null }));
                    Ok(Outcome::Pass)
                }
            }
        }
        Command::Verify(args) => {
            let mut cfg = VerifyConfig::new(args.trials, args.seed);
            cfg.tnorms = args.tnorm;
            let run = verify_theorem(args.theorem, &cfg)?;
            let mut bundle_paths = Vec::new();
            if !run.failures.is_empty() {
                fs::create_dir_all(&args.out_dir).map_err(|e| InputError(e.to_string()))?;
                for bundle in &run.failures {
                    let path = args.out_dir.join(format!(
                        "bundle-{}-trial{}-{}.json",
                        run.theorem.id(),
                        bundle.trial,
                        bundle.tnorm.as_deref().unwrap_or("none"),
                    ));
                    let text = serde_json::to_string_pretty(bundle)?;
                    fs::write(&path, text).map_err(|e| InputError(e.to_string()))?;
                    bundle_paths.push(path.display().to_string());
                }
            }
            print_json(&json!({
                "theorem": run.theorem.id(),
                "trials": run.trials,
                "seed": run.seed,
                "pass": run.passed(),
                "failures": run.failures.len(),
                "bundles": bundle_paths,
                "notes": run.notes,
            }));
            Ok(if run.passed() {
                Outcome::Pass
            } else {
                Outcome::CheckFailed
            })
        }
        Command::Gen {
            config,
            seed,
            poset,
            output,
        } => {
            let mut cfg = match config {
                Some(path) => {
                    let text = fs::read_to_string(&path).map_err(|e| InputError(e.to_string()))?;
                    serde_json::from_str::<GenConfig>(&text)?
                }
                None if poset => GenConfig::posets(0),
                None => GenConfig::lattices(0),
            };
            if let Some(seed) = seed {
                cfg.seed = seed;
            }
            let frame = if poset {
                gen::gen_fuzzy_poset(&cfg)?
            } else {
                gen::gen_bounded_fuzzy_lattice(&cfg)?.into_frame()
            };
            let doc = MatrixDocument::from_frame(&frame);
            io::save(&doc, &output, Format::from_path(&output))?;
            Ok(Outcome::Pass)
        }
    }
}

fn certify_input(path: &Path) -> Result<BoundedFuzzyLattice, InputError> {
    let frame = load_frame(path)?;
    certify_or_report(frame).map_err(|error| InputError(error.to_string()))
}

fn table_query(file: &Path, a: &str, b: &str, which: &str) -> Result<Outcome, InputError> {
    let frame = load_frame(file)?;
    let poset = frame.is_fuzzy_poset();
    if !poset.pass {
        print_json(&json!({ "error": "not a fuzzy poset", "poset": poset }));
        return Ok(Outcome::CheckFailed);
    }
    let i = frame
        .index_of(a)
        .ok_or_else(|| InputError(format!("no element labeled {a:?}")))?;
    let j = frame
        .index_of(b)
        .ok_or_else(|| InputError(format!("no element labeled {b:?}")))?;
    let found = match which {
        "meet" => fuzlat::order::fuzzy_meet(&frame, i, j),
        _ => fuzlat::order::fuzzy_join(&frame, i, j),
    };
    match found {
        Ok(k) => {
            print_json(&json!({ which: frame.label(k), "index": k }));
            Ok(Outcome::Pass)
        }
        Err(failure) => {
            print_json(&json!({ which: null, "error": failure.to_string() }));
            Ok(Outcome::CheckFailed)
        }
    }
}
