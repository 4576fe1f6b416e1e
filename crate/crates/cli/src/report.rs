//! The JSON verification report and its residual summary.

use mannheim_core::mannheim::{DevelopabilityReport, MannheimParams, OffsetReport, OffsetRow, ResidualRecord, StrictionOffset};
use mannheim_core::numerics::NumericsConfig;
use serde::{Deserialize, Serialize};

use crate::spec_file::SurfaceSpecFile;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub tool: String,
    pub version: String,
    pub spec: SurfaceSpecFile,
    pub mannheim: MannheimParams,
    pub direction: StrictionOffset,
    pub config: NumericsConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualSummary {
    pub name: String,
    pub max: f64,
    pub mean: f64,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdicts {
    /// Every residual maximum is under its tolerance.
    pub within_tolerance: bool,
    /// Names of the residuals that are not.
    pub failing: Vec<String>,
    pub developability: DevelopabilityReport,
    pub developability_consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub metadata: Metadata,
    pub rows: Vec<OffsetRow>,
    pub summary: Vec<ResidualSummary>,
    pub verdicts: Verdicts,
}

/// Folds the residuals of `rows` into per-name maxima and means, in
/// [`ResidualRecord::NAMES`] order.
pub fn summarize(rows: &[OffsetRow], theorem_tolerance: f64) -> Vec<ResidualSummary> {
    ResidualRecord::NAMES
        .iter()
        .enumerate()
        .map(|(i, name)| {
            let (max, sum) = rows.iter().fold((0.0f64, 0.0f64), |(m, s), r| {
                let v = r.residuals.values()[i];
                (m.max(v), s + v)
            });
            let mean = if rows.is_empty() { 0.0 } else { sum / rows.len() as f64 };
            ResidualSummary {
                name: name.to_string(),
                max,
                mean,
                tolerance: ResidualRecord::tolerance_of(name, theorem_tolerance),
            }
        })
        .collect()
}

impl ReportFile {
    pub fn new(spec: SurfaceSpecFile, config: NumericsConfig, report: OffsetReport) -> Self {
        let summary = summarize(&report.rows, config.tolerance_theorem);
        let failing: Vec<String> = summary.iter().filter(|s| !(s.max < s.tolerance)).map(|s| s.name.clone()).collect();
        let developability_consistent = report.developability.consistent();
        ReportFile {
            metadata: Metadata {
                tool: "mannheim".to_string(),
                version: env!("CARGO_PKG_VERSION").to_string(),
                spec,
                mannheim: report.params,
                direction: report.direction,
                config,
            },
            verdicts: Verdicts {
                within_tolerance: failing.is_empty(),
                failing,
                developability: report.developability,
                developability_consistent,
            },
            rows: report.rows,
            summary,
        }
    }

    /// The summary recomputed from the stored rows.
    pub fn recompute_summary(&self) -> Vec<ResidualSummary> {
        summarize(&self.rows, self.metadata.config.tolerance_theorem)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports contain only finite numbers")
    }
}
