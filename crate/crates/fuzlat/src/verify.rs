//! Seeded property-verification drivers for the closure results.
//!
//! Each target generates random instances, runs the relevant construction,
//! and records a replayable failure bundle for anything that does not hold.
//! Bundles carry the full input matrices plus the trial seed, so a reported
//! failure can always be reproduced from the bundle alone.
//!
//! Trials draw from substreams derived as `seed + trial_index` and are
//! independent; failures are reported in trial order.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::frame::FuzzyRelationFrame;
use crate::gen::{self, GenConfig, GenError};
use crate::io::MatrixDocument;
use crate::laws;
use crate::order::BoundedFuzzyLattice;
use crate::product::{direct_product, product_relation_frame, ProductOptions};
use crate::samples;
use crate::tnorm::{self, TNorm, UnknownTNorm};

/// The verification targets. Each canonical id (`Thm4_8`, ...) names one
/// closure claim; descriptive aliases are accepted interchangeably on the
/// command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Theorem {
    /// Products of bounded fuzzy lattices under a zero-divisor-free t-norm
    /// certify, with coordinatewise meets, joins, and bounds.
    ProductClosure,
    /// Every distributive fuzzy lattice is modular, and the two
    /// distributivity forms agree.
    DistributiveImpliesModular,
    /// Products of distributive (resp. modular) factors under a
    /// zero-divisor-free t-norm are distributive (resp. modular).
    ProductLawTransfer,
    /// Lukasiewicz products of fuzzy posets can fail transitivity; at least
    /// one counterexample must be found.
    LukasiewiczIntransitivity,
    /// On a fixed grid, a zero-divisor witness exists exactly when a
    /// nilpotence witness does, for every built-in operator.
    ZeroDivisorNilpotentAgreement,
}

pub const ALL_THEOREMS: [Theorem; 5] = [
    Theorem::ProductClosure,
    Theorem::DistributiveImpliesModular,
    Theorem::ProductLawTransfer,
    Theorem::LukasiewiczIntransitivity,
    Theorem::ZeroDivisorNilpotentAgreement,
];

impl Theorem {
    /// Canonical command-line id.
    pub fn id(self) -> &'static str {
        match self {
            Theorem::ProductClosure => "Thm4_8",
            Theorem::DistributiveImpliesModular => "Thm5_6",
            Theorem::ProductLawTransfer => "ThmProd5_6",
            Theorem::LukasiewiczIntransitivity => "Thm4_4",
            Theorem::ZeroDivisorNilpotentAgreement => "Lemma4_11",
        }
    }

    pub fn alias(self) -> &'static str {
        match self {
            Theorem::ProductClosure => "product-closure",
            Theorem::DistributiveImpliesModular => "distributive-implies-modular",
            Theorem::ProductLawTransfer => "product-law-transfer",
            Theorem::LukasiewiczIntransitivity => "lukasiewicz-intransitivity",
            Theorem::ZeroDivisorNilpotentAgreement => "zero-divisor-nilpotent-agreement",
        }
    }

    pub fn parse(text: &str) -> Result<Theorem, VerifyError> {
        ALL_THEOREMS
            .into_iter()
            .find(|t| t.id().eq_ignore_ascii_case(text) || t.alias().eq_ignore_ascii_case(text))
            .ok_or_else(|| VerifyError::UnknownTheorem(text.to_string()))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub trials: u64,
    pub seed: u64,
    /// Carrier size range for generated factors.
    pub size_range: (usize, usize),
    /// Number of product factors per trial.
    pub factor_range: (usize, usize),
    /// T-norm names; empty means the per-theorem default.
    pub tnorms: Vec<String>,
    /// Grid step for the zero-divisor/nilpotence scans.
    pub grid_step: f64,
    /// Fold ceiling for the nilpotence scan.
    pub max_fold: u32,
}

impl VerifyConfig {
    pub fn new(trials: u64, seed: u64) -> VerifyConfig {
        VerifyConfig {
            trials,
            seed,
            size_range: (2, 6),
            factor_range: (2, 3),
            tnorms: Vec::new(),
            grid_step: 0.05,
            max_fold: 64,
        }
    }
}

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("unknown verification target {0:?}")]
    UnknownTheorem(String),
    #[error("a verification run needs at least one trial")]
    ZeroTrials,
    #[error(transparent)]
    Tnorm(#[from] UnknownTNorm),
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Grid(#[from] tnorm::GridError),
    #[error("bundle does not replay: {0}")]
    Replay(String),
}

/// A reproducible counterexample: the full inputs plus what went wrong.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FailureBundle {
    pub theorem: Theorem,
    pub trial: u64,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tnorm: Option<String>,
    pub factors: Vec<MatrixDocument>,
    pub message: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationRun {
    pub theorem: Theorem,
    pub trials: u64,
    pub seed: u64,
    pub failures: Vec<FailureBundle>,
    pub notes: Vec<String>,
}

impl VerificationRun {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn resolve_tnorms(cfg: &VerifyConfig, default: &[&str]) -> Result<Vec<TNorm>, VerifyError> {
    let names: Vec<String> = if cfg.tnorms.is_empty() {
        default.iter().map(|s| s.to_string()).collect()
    } else {
        cfg.tnorms.clone()
    };
    names
        .iter()
        .map(|name| TNorm::builtin(name).map_err(VerifyError::from))
        .collect()
}

fn gen_factors(
    cfg: &VerifyConfig,
    base: &GenConfig,
    trial: u64,
) -> Result<Vec<BoundedFuzzyLattice>, GenError> {
    let trial_seed = cfg.seed.wrapping_add(trial);
    let span = (cfg.factor_range.1 - cfg.factor_range.0) as u64 + 1;
    // cheap deterministic factor count derived from the trial seed
    let count = cfg.factor_range.0 + (trial_seed.wrapping_mul(0x9e3779b97f4a7c15) % span) as usize;
    (0..count)
        .map(|i| {
            gen::gen_bounded_fuzzy_lattice(&GenConfig {
                seed: trial_seed.wrapping_add(1 + i as u64 * 0x51_7c_c1),
                ..base.clone()
            })
        })
        .collect()
}

fn docs_of(factors: &[BoundedFuzzyLattice]) -> Vec<MatrixDocument> {
    factors
        .iter()
        .map(|l| MatrixDocument::from_frame(l.frame()))
        .collect()
}

pub fn verify_theorem(
    theorem: Theorem,
    cfg: &VerifyConfig,
) -> Result<VerificationRun, VerifyError> {
    if cfg.trials == 0 {
        return Err(VerifyError::ZeroTrials);
    }
    let mut run = VerificationRun {
        theorem,
        trials: cfg.trials,
        seed: cfg.seed,
        failures: Vec::new(),
        notes: Vec::new(),
    };
    match theorem {
        Theorem::ProductClosure => product_closure(cfg, &mut run)?,
        Theorem::DistributiveImpliesModular => distributive_implies_modular(cfg, &mut run)?,
        Theorem::ProductLawTransfer => product_law_transfer(cfg, &mut run)?,
        Theorem::LukasiewiczIntransitivity => lukasiewicz_intransitivity(cfg, &mut run)?,
        Theorem::ZeroDivisorNilpotentAgreement => zero_divisor_nilpotent(cfg, &mut run)?,
    }
    Ok(run)
}

fn product_closure(cfg: &VerifyConfig, run: &mut VerificationRun) -> Result<(), VerifyError> {
    let tnorms = resolve_tnorms(cfg, &["minimum", "algebraic", "hamacher"])?;
    let base = GenConfig {
        size_range: cfg.size_range,
        ..GenConfig::lattices(0)
    };
    for trial in 0..cfg.trials {
        let factors = gen_factors(cfg, &base, trial)?;
        for t in &tnorms {
            if let Err(error) = build_and_certify(&factors, t) {
                run.failures.push(FailureBundle {
                    theorem: run.theorem,
                    trial,
                    seed: cfg.seed.wrapping_add(trial),
                    tnorm: Some(t.name().to_string()),
                    factors: docs_of(&factors),
                    message: error,
                });
            }
        }
    }
    run.notes.push(format!(
        "{} trials x {} realizations certified with coordinatewise agreement",
        cfg.trials,
        tnorms.len()
    ));
    Ok(())
}

fn build_and_certify(factors: &[BoundedFuzzyLattice], t: &TNorm) -> Result<(), String> {
    let product = direct_product(factors.to_vec(), t.clone(), &ProductOptions::default())
        .map_err(|e| e.to_string())?;
    product.certify().map(|_| ()).map_err(|e| e.to_string())
}

fn distributive_implies_modular(
    cfg: &VerifyConfig,
    run: &mut VerificationRun,
) -> Result<(), VerifyError> {
    let base = GenConfig {
        size_range: cfg.size_range,
        ..GenConfig::lattices(0)
    };
    let mut distributive_count = 0u64;
    for trial in 0..cfg.trials {
        let lattice = gen::gen_bounded_fuzzy_lattice(&GenConfig {
            seed: cfg.seed.wrapping_add(trial),
            ..base.clone()
        })?;
        let dist = laws::check_distributive(&lattice);
        let modular = laws::check_modular(&lattice);
        let mut problems = Vec::new();
        if !dist.forms_agree() {
            problems.push("the two distributivity forms disagree".to_string());
        }
        if dist.holds() {
            distributive_count += 1;
            if !modular.holds {
                problems.push(format!(
                    "distributive but not modular; witness {:?}",
                    modular.witnesses.first()
                ));
            }
        }
        for message in problems {
            run.failures.push(FailureBundle {
                theorem: run.theorem,
                trial,
                seed: cfg.seed.wrapping_add(trial),
                tnorm: None,
                factors: vec![MatrixDocument::from_frame(lattice.frame())],
                message,
            });
        }
    }
    run.notes.push(format!(
        "{} of {} generated lattices were distributive; all of those were modular",
        distributive_count, cfg.trials
    ));
    Ok(())
}

fn product_law_transfer(cfg: &VerifyConfig, run: &mut VerificationRun) -> Result<(), VerifyError> {
    let tnorms = resolve_tnorms(cfg, &["minimum", "algebraic", "hamacher"])?;
    for (class, base) in [
        ("distributive", GenConfig::distributive_lattices(0)),
        ("modular", GenConfig::modular_lattices(0)),
    ] {
        let base = GenConfig {
            size_range: cfg.size_range,
            ..base
        };
        for trial in 0..cfg.trials {
            let factors = gen_factors(cfg, &base, trial)?;
            // the generator promises the class; trust but verify
            for factor in &factors {
                let have = match class {
                    "distributive" => laws::check_distributive(factor).holds(),
                    _ => laws::check_modular(factor).holds,
                };
                assert!(have, "generated factor lost its {class} law class");
            }
            for t in &tnorms {
                let outcome =
                    direct_product(factors.clone(), t.clone(), &ProductOptions::default())
                        .map_err(|e| e.to_string())
                        .and_then(|p| p.certify().map_err(|e| e.to_string()))
                        .and_then(|lattice| {
                            let ok = match class {
                                // distributive products must also come out
                                // modular, the corollary of the two transfers
                                "distributive" => {
                                    laws::check_distributive(&lattice).holds()
                                        && laws::check_modular(&lattice).holds
                                }
                                _ => laws::check_modular(&lattice).holds,
                            };
                            if ok {
                                Ok(())
                            } else {
                                Err(format!("product of {class} factors is not {class}"))
                            }
                        });
                if let Err(message) = outcome {
                    run.failures.push(FailureBundle {
                        theorem: run.theorem,
                        trial,
                        seed: cfg.seed.wrapping_add(trial),
                        tnorm: Some(t.name().to_string()),
                        factors: docs_of(&factors),
                        message,
                    });
                }
            }
        }
        run.notes.push(format!(
            "{} trials with {class} factors stayed {class} under {} realizations",
            cfg.trials,
            tnorms.len()
        ));
    }
    Ok(())
}

fn lukasiewicz_intransitivity(
    cfg: &VerifyConfig,
    run: &mut VerificationRun,
) -> Result<(), VerifyError> {
    let t = TNorm::lukasiewicz();
    let mut hits = 0u64;
    // trial 0 is the worked pair, which demonstrably breaks transitivity
    let mut examined = 0u64;
    for trial in 0..cfg.trials {
        let frames: Vec<FuzzyRelationFrame> = if trial == 0 {
            vec![samples::chain4_frame(), samples::diamond4_frame()]
        } else {
            let trial_seed = cfg.seed.wrapping_add(trial);
            let span = (cfg.factor_range.1 - cfg.factor_range.0) as u64 + 1;
            let count =
                cfg.factor_range.0 + (trial_seed.wrapping_mul(0x9e3779b97f4a7c15) % span) as usize;
            (0..count)
                .map(|i| {
                    gen::gen_fuzzy_poset(&GenConfig {
                        seed: trial_seed.wrapping_add(1 + i as u64 * 0x51_7c_c1),
                        size_range: cfg.size_range,
                        ..GenConfig::posets(0)
                    })
                })
                .collect::<Result<_, _>>()?
        };
        examined += 1;
        let product = product_relation_frame(&frames, &t, &ProductOptions::default())
            .map_err(|e| VerifyError::Replay(e.to_string()))?;
        if let Some([a, b, c]) = product.witness_intransitivity() {
            hits += 1;
            run.notes.push(format!(
                "trial {trial}: intransitivity witness ({}, {}, {})",
                product.label(a),
                product.label(b),
                product.label(c)
            ));
        }
    }
    run.notes.insert(
        0,
        format!("transitivity failed in {hits} of {examined} products"),
    );
    if hits == 0 {
        run.failures.push(FailureBundle {
            theorem: run.theorem,
            trial: 0,
            seed: cfg.seed,
            tnorm: Some(t.name().to_string()),
            factors: vec![
                MatrixDocument::from_frame(&samples::chain4_frame()),
                MatrixDocument::from_frame(&samples::diamond4_frame()),
            ],
            message: "no product lost transitivity, including the worked pair".to_string(),
        });
    }
    Ok(())
}

fn zero_divisor_nilpotent(
    cfg: &VerifyConfig,
    run: &mut VerificationRun,
) -> Result<(), VerifyError> {
    for name in ["minimum", "algebraic", "lukasiewicz", "hamacher"] {
        let t = TNorm::builtin(name).expect("built-in");
        let zd = tnorm::find_zero_divisor(&t, cfg.grid_step)?;
        let np = tnorm::find_nilpotent(&t, cfg.grid_step, cfg.max_fold)?;
        if zd.is_some() != np.is_some() {
            run.failures.push(FailureBundle {
                theorem: run.theorem,
                trial: 0,
                seed: cfg.seed,
                tnorm: Some(name.to_string()),
                factors: Vec::new(),
                message: format!(
                    "grid disagreement: zero divisor {:?}, nilpotent {:?}",
                    zd, np
                ),
            });
        }
        run.notes.push(match (zd, np) {
            (Some(z), Some(n)) => format!(
                "{name}: zero divisor ({}, {}), nilpotent ({}, {})",
                z.a, z.b, n.a, n.n
            ),
            _ => format!("{name}: no witnesses on the grid"),
        });
    }
    Ok(())
}

/// Re-run the single check a bundle records. Returns the reproduced failure
/// message, or `None` when the inputs no longer fail.
pub fn replay(bundle: &FailureBundle) -> Result<Option<String>, VerifyError> {
    let frames: Vec<FuzzyRelationFrame> = bundle
        .factors
        .iter()
        .map(|doc| {
            doc.to_frame()
                .map_err(|e| VerifyError::Replay(e.to_string()))
        })
        .collect::<Result<_, _>>()?;
    match bundle.theorem {
        Theorem::ProductClosure | Theorem::ProductLawTransfer => {
            let name = bundle.tnorm.as_deref().unwrap_or("minimum");
            let t = TNorm::builtin(name)?;
            let factors: Vec<BoundedFuzzyLattice> = frames
                .into_iter()
                .map(|f| {
                    BoundedFuzzyLattice::certify(f).map_err(|e| VerifyError::Replay(e.to_string()))
                })
                .collect::<Result<_, _>>()?;
            match build_and_certify(&factors, &t) {
                Err(message) => Ok(Some(message)),
                Ok(()) if bundle.theorem == Theorem::ProductLawTransfer => {
                    // certification passed; the recorded failure was a law-class loss
                    let product = direct_product(factors, t, &ProductOptions::default())
                        .map_err(|e| VerifyError::Replay(e.to_string()))?;
                    let lattice = product
                        .certify()
                        .map_err(|e| VerifyError::Replay(e.to_string()))?;
                    let lost_class = (bundle.message.contains("distributive")
                        && !laws::check_distributive(&lattice).holds())
                        || (bundle.message.contains("modular")
                            && !laws::check_modular(&lattice).holds);
                    Ok(lost_class.then(|| bundle.message.clone()))
                }
                Ok(()) => Ok(None),
            }
        }
        Theorem::DistributiveImpliesModular => {
            let lattice = frames
                .into_iter()
                .next()
                .ok_or_else(|| VerifyError::Replay("bundle carries no lattice".into()))
                .and_then(|f| {
                    BoundedFuzzyLattice::certify(f).map_err(|e| VerifyError::Replay(e.to_string()))
                })?;
            let dist = laws::check_distributive(&lattice);
            let modular = laws::check_modular(&lattice);
            if !dist.forms_agree() {
                Ok(Some("the two distributivity forms disagree".to_string()))
            } else if dist.holds() && !modular.holds {
                Ok(Some("distributive but not modular".to_string()))
            } else {
                Ok(None)
            }
        }
        Theorem::LukasiewiczIntransitivity => {
            let product =
                product_relation_frame(&frames, &TNorm::lukasiewicz(), &ProductOptions::default())
                    .map_err(|e| VerifyError::Replay(e.to_string()))?;
            match product.witness_intransitivity() {
                None => Ok(Some(bundle.message.clone())),
                Some(_) => Ok(None),
            }
        }
        Theorem::ZeroDivisorNilpotentAgreement => {
            let cfg = VerifyConfig::new(1, bundle.seed);
            let name = bundle.tnorm.as_deref().unwrap_or("minimum");
            let t = TNorm::builtin(name)?;
            let zd = tnorm::find_zero_divisor(&t, cfg.grid_step)?;
            let np = tnorm::find_nilpotent(&t, cfg.grid_step, cfg.max_fold)?;
            if zd.is_some() != np.is_some() {
                Ok(Some(bundle.message.clone()))
            } else {
                Ok(None)
            }
        }
    }
}
