//! Kernel-lattice features of disaggregated systems, exported as CSV.

use std::io::Write;
use std::path::Path;

use knapcrack_core::analysis::{kernel_features, KernelFeatures};
use knapcrack_core::attacks::{is_binary, VerdictStatus};
use knapcrack_core::disagg::{build_disaggregated, cuts_off, DisaggParams};
use knapcrack_core::jumps::enumerate_jump_points;
use knapcrack_core::kernel::decompose;
use knapcrack_core::problem::LdeSystem;
use knapcrack_core::{BigInt, Error};

use crate::pipeline::{attack, solve_once, PipelineError, SearchConfig};

/// A sequence of `(row, t/M)` disaggregations applied in order.
pub type Scenario = Vec<(usize, DisaggParams)>;

#[derive(Debug, Clone, PartialEq)]
pub struct FeatureRecord {
    pub instance_id: String,
    pub m: usize,
    pub n: usize,
    /// `t` of every step, `;`-separated.
    pub t: String,
    /// `M` of every step, `;`-separated.
    pub modulus: String,
    pub features: KernelFeatures,
}

#[derive(Debug, thiserror::Error)]
pub enum FeaturesError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

fn header(axes: usize) -> Vec<String> {
    let mut h: Vec<String> = ["instance_id", "m", "n", "t", "M", "kernel_dim", "volume", "mve_volume", "gamma_check"]
        .map(String::from)
        .to_vec();
    h.extend((1..=axes).map(|i| format!("ax{i}")));
    h.extend(["lambda_tilde", "d", "d_tilde", "cut", "success"].map(String::from));
    h
}

/// Writes `records`; the `ax` columns run to the largest kernel dimension and
/// shorter rows leave the rest empty.
pub fn write_features<W: Write>(writer: W, records: &[FeatureRecord]) -> Result<(), FeaturesError> {
    let axes = records.iter().map(|r| r.features.semi_axes.len()).max().unwrap_or(0);
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(header(axes))?;
    for r in records {
        let f = &r.features;
        let mut row = vec![
            r.instance_id.clone(),
            r.m.to_string(),
            r.n.to_string(),
            r.t.clone(),
            r.modulus.clone(),
            f.dim.to_string(),
            f.volume.to_string(),
            f.mve_volume.to_string(),
            f.gamma_check().to_string(),
        ];
        row.extend((0..axes).map(|i| f.semi_axes.get(i).map_or(String::new(), f64::to_string)));
        row.extend([
            f.lambda_tilde.to_string(),
            f.d.to_string(),
            f.d_tilde.to_string(),
            f.cut.to_string(),
            f.success.to_string(),
        ]);
        w.write_record(&row)?;
    }
    w.flush().map_err(|e| FeaturesError::Io {
        path: "<output>".into(),
        source: e,
    })?;
    Ok(())
}

pub fn export_features_csv(path: &Path, records: &[FeatureRecord]) -> Result<(), FeaturesError> {
    let io = |source| FeaturesError::Io {
        path: path.display().to_string(),
        source,
    };
    let file = std::fs::File::create(path).map_err(io)?;
    write_features(std::io::BufWriter::new(file), records)
}

/// The non-binary solution of the plain attack, if that is what it found.
pub fn initial_non_binary(sys: &LdeSystem, cfg: &SearchConfig) -> Result<Option<Vec<BigInt>>, PipelineError> {
    let out = attack(sys, cfg)?;
    Ok(match out.verdict.into_status() {
        VerdictStatus::ShortNonBinary(x) => Some(x),
        _ => None,
    })
}

/// Features of one scenario. A step whose equation is implied by the
/// current rows leaves the kernel unchanged and is skipped.
pub fn scenario_features(
    sys: &LdeSystem,
    scenario: &[(usize, DisaggParams)],
    initial: Option<&[BigInt]>,
    cfg: &SearchConfig,
) -> Result<KernelFeatures, Error> {
    let mut cur = sys.clone();
    let mut cut = false;
    for (row, p) in scenario {
        match build_disaggregated(&cur, *row, p) {
            Ok(ds) => cur = ds.system,
            Err(Error::RankDeficient) => {}
            Err(e) => return Err(e),
        }
        if let (Some(x), true) = (initial, *row < sys.m()) {
            cut |= cuts_off(sys.equation(*row)?, &p.ratio(), x)?;
        }
    }
    let kd = decompose(&cur, &cfg.scale, &cfg.alpha)?;
    let success = match solve_once(&cur, cfg) {
        Ok(v) => v.solution().is_some_and(|x| {
            let prefix = &x[..sys.n()];
            is_binary(prefix) && sys.is_solution(prefix)
        }),
        Err(Error::EscalationExhausted { .. }) => false,
        Err(e) => return Err(e),
    };
    kernel_features(&kd.d, cut, success)
}

pub fn label(scenario: &[(usize, DisaggParams)]) -> (String, String) {
    let join = |f: &dyn Fn(&DisaggParams) -> String| scenario.iter().map(|(_, p)| f(p)).collect::<Vec<_>>().join(";");
    (join(&|p| p.t().to_string()), join(&|p| p.modulus().to_string()))
}

pub fn analyze(
    instance_id: &str,
    sys: &LdeSystem,
    scenarios: &[Scenario],
    cfg: &SearchConfig,
) -> Result<Vec<FeatureRecord>, PipelineError> {
    let initial = initial_non_binary(sys, cfg)?;
    scenarios
        .iter()
        .map(|s| {
            let features = scenario_features(sys, s, initial.as_deref(), cfg)?;
            let (t, modulus) = label(s);
            Ok(FeatureRecord {
                instance_id: instance_id.to_string(),
                m: sys.m(),
                n: sys.n(),
                t,
                modulus,
                features,
            })
        })
        .collect()
}

/// One single-step scenario per `t` in `lo..hi` with modulus `M` on `row`;
/// values of `t` outside `(0, M)` are dropped.
pub fn t_range_scenarios(row: usize, lo: u64, hi: u64, modulus: &BigInt) -> Vec<Scenario> {
    (lo..hi)
        .filter_map(|t| DisaggParams::new(t.into(), modulus.clone()).ok())
        .map(|p| vec![(row, p)])
        .collect()
}

/// One single-step scenario per jump point of `row`.
pub fn jump_point_scenarios(sys: &LdeSystem, row: usize, cap: usize) -> Result<Vec<Scenario>, Error> {
    enumerate_jump_points(sys.equation(row)?, cap)?
        .into_iter()
        .map(|j| Ok(vec![(row, DisaggParams::new(j.value.numer().clone(), j.value.denom().clone())?)]))
        .collect()
}
