//! Monte-Carlo erasure and repair experiments.
//!
//! Trial `t` draws everything from ChaCha20 keyed with
//! `ChaCha20Rng::seed_from_u64(seed)` on stream `t`, so each trial's
//! randomness depends only on `(seed, t)`. Statistics are integer counts
//! summed across trials and turned into rates once at the end, which makes
//! the report independent of scheduling and thread count.

use std::ops::Add;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::code::{CodeSpec, LrcCode};
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::io::SpecFile;
use crate::recovery::{ErasedWord, RecoveryOutcome};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case", deny_unknown_fields)]
pub enum ErasureModel {
    /// Each position is erased independently with probability `rate`.
    Iid { rate: f64 },
    /// Exactly `count` positions, uniformly at random.
    Fixed { count: usize },
    /// `count` positions (default: all) of one random line in `direction`.
    LineBurst {
        direction: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        count: Option<usize>,
    },
}

/// On-disk form of a [`SimConfig`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimConfigFile {
    pub spec: SpecFile,
    pub erasure: ErasureModel,
    pub trials: u64,
    pub seed: u64,
}

#[derive(Clone, Debug)]
pub struct SimConfig {
    pub spec: CodeSpec,
    pub erasure: ErasureModel,
    pub trials: u64,
    pub seed: u64,
}

impl SimConfig {
    pub fn new(spec: CodeSpec, erasure: ErasureModel, trials: u64, seed: u64) -> Result<Self> {
        let bad = |msg: String| Err(Error::SimConfig(msg));
        if trials == 0 {
            return bad("trials must be at least 1".into());
        }
        let m = spec.length();
        match erasure {
            ErasureModel::Iid { rate } if !(0.0..=1.0).contains(&rate) => {
                return bad(format!("erasure rate {rate} is outside [0, 1]"));
            }
            ErasureModel::Fixed { count } if count as u64 > m => {
                return bad(format!("{count} erasures exceed the code length {m}"));
            }
            ErasureModel::LineBurst { direction, count } => {
                if direction >= spec.availability() {
                    return bad(format!(
                        "direction {direction} out of range for availability {}",
                        spec.availability()
                    ));
                }
                let size = spec.size(direction) as usize;
                if count.is_some_and(|c| c > size) {
                    return bad(format!("burst of {} exceeds line length {size}", count.unwrap()));
                }
            }
            _ => {}
        }
        Ok(SimConfig {
            spec,
            erasure,
            trials,
            seed,
        })
    }

    pub fn from_file(file: &SimConfigFile) -> Result<Self> {
        SimConfig::new(file.spec.to_spec()?, file.erasure.clone(), file.trials, file.seed)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: SimConfigFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("simulation config: {e}")))?;
        SimConfig::from_file(&file)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Tally {
    trials: u64,
    full_repairs: u64,
    erasures: u64,
    residual: u64,
    passes: u64,
    false_repairs: u64,
    repairs_per_direction: Vec<u64>,
}

impl Add for Tally {
    type Output = Tally;

    fn add(self, rhs: Tally) -> Tally {
        let n = self.repairs_per_direction.len().max(rhs.repairs_per_direction.len());
        let mut per_dir = vec![0; n];
        for (slot, v) in per_dir
            .iter_mut()
            .zip(self.repairs_per_direction.iter().chain(std::iter::repeat(&0)))
        {
            *slot += v;
        }
        for (slot, v) in per_dir
            .iter_mut()
            .zip(rhs.repairs_per_direction.iter().chain(std::iter::repeat(&0)))
        {
            *slot += v;
        }
        Tally {
            trials: self.trials + rhs.trials,
            full_repairs: self.full_repairs + rhs.full_repairs,
            erasures: self.erasures + rhs.erasures,
            residual: self.residual + rhs.residual,
            passes: self.passes + rhs.passes,
            false_repairs: self.false_repairs + rhs.false_repairs,
            repairs_per_direction: per_dir,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimReport {
    pub trials: u64,
    pub seed: u64,
    pub full_repairs: u64,
    pub full_repair_rate: f64,
    pub total_erasures: u64,
    pub mean_erasures: f64,
    pub residual_erasures: u64,
    pub mean_residual_erasures: f64,
    pub repairs_per_direction: Vec<u64>,
    pub total_passes: u64,
    pub mean_passes: f64,
    /// Trials in which some repaired entry differs from the encoded one.
    pub false_repairs: u64,
}

impl SimReport {
    fn from_tally(t: Tally, seed: u64) -> Self {
        let per = |x: u64| x as f64 / t.trials as f64;
        SimReport {
            trials: t.trials,
            seed,
            full_repairs: t.full_repairs,
            full_repair_rate: per(t.full_repairs),
            total_erasures: t.erasures,
            mean_erasures: per(t.erasures),
            residual_erasures: t.residual,
            mean_residual_erasures: per(t.residual),
            repairs_per_direction: t.repairs_per_direction,
            total_passes: t.passes,
            mean_passes: per(t.passes),
            false_repairs: t.false_repairs,
        }
    }

    pub fn summary(&self) -> String {
        let dirs: Vec<String> = self.repairs_per_direction.iter().map(u64::to_string).collect();
        format!(
            "trials           {}\n\
             full repair rate {:.6} ({}/{})\n\
             mean erasures    {:.4}\n\
             mean residual    {:.4}\n\
             mean passes      {:.4}\n\
             repairs by dir   [{}]\n\
             false repairs    {}\n",
            self.trials,
            self.full_repair_rate,
            self.full_repairs,
            self.trials,
            self.mean_erasures,
            self.mean_residual_erasures,
            self.mean_passes,
            dirs.join(", "),
            self.false_repairs
        )
    }
}

/// Random generator for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn erasure_pattern(code: &LrcCode, model: &ErasureModel, rng: &mut ChaCha20Rng) -> Vec<usize> {
    let m = code.length();
    match *model {
        ErasureModel::Iid { rate } => (0..m).filter(|_| rng.gen::<f64>() < rate).collect(),
        ErasureModel::Fixed { count } => {
            let mut v = sample(rng, m, count).into_vec();
            v.sort_unstable();
            v
        }
        ErasureModel::LineBurst { direction, count } => {
            let center = rng.gen_range(0..m);
            let line = code
                .recovery_set(center, direction)
                .expect("validated direction")
                .positions;
            let count = count.unwrap_or(line.len());
            let mut v: Vec<usize> = sample(rng, line.len(), count).into_iter().map(|t| line[t]).collect();
            v.sort_unstable();
            v
        }
    }
}

fn run_trial(code: &LrcCode, config: &SimConfig, trial: u64) -> Result<Tally> {
    let mut rng = trial_rng(config.seed, trial);
    let q = code.field().order();
    let message: Vec<FieldElement> = (0..code.dimension())
        .map(|_| FieldElement::from_rank(rng.gen_range(0..q)))
        .collect();
    let codeword = code.encode(&message)?;
    let pattern = erasure_pattern(code, &config.erasure, &mut rng);
    let mut word = ErasedWord::from(&codeword);
    for &j in &pattern {
        word.erase(j);
    }
    let (outcome, report) = code.recover_all(&word)?;
    let repaired = outcome.to_erased_word();
    let false_repair = pattern
        .iter()
        .any(|&j| repaired.get(j).is_some_and(|v| v != codeword.entries()[j]));
    Ok(Tally {
        trials: 1,
        full_repairs: matches!(outcome, RecoveryOutcome::Complete(_)) as u64,
        erasures: pattern.len() as u64,
        residual: report.stuck.len() as u64,
        passes: report.passes as u64,
        false_repairs: false_repair as u64,
        repairs_per_direction: report.repairs_per_direction.iter().map(|&x| x as u64).collect(),
    })
}

/// Runs all trials on the current rayon pool.
pub fn run_simulation(config: &SimConfig) -> Result<SimReport> {
    let code = LrcCode::new(config.spec.clone());
    let identity = || Tally {
        repairs_per_direction: vec![0; config.spec.availability()],
        ..Default::default()
    };
    let tally = (0..config.trials)
        .into_par_iter()
        .map(|t| run_trial(&code, config, t))
        .try_reduce(identity, |a, b| Ok(a + b))?;
    Ok(SimReport::from_tally(tally, config.seed))
}

/// Runs all trials on a dedicated pool with `threads` workers.
pub fn run_simulation_with_threads(config: &SimConfig, threads: usize) -> Result<SimReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::SimConfig(format!("thread pool: {e}")))?;
    pool.install(|| run_simulation(config))
}
