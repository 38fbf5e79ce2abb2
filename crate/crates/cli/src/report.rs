//! Result rows and their on-disk formats.

use std::io::Write;

use serde::Serialize;
use twochoice_core::analysis::{ExactTime, Regime, ThresholdReport, CRITICAL_BIAS};
use twochoice_core::montecarlo::{ConsensusStats, SweepSpec};
use twochoice_core::GraphKind;

use crate::format::{from_log10, sig12};

pub const SIMULATE_HEADER: [&str; 12] = [
    "graph_kind",
    "n",
    "degree_or_pedge",
    "alpha",
    "p",
    "trials",
    "mean_T",
    "ci_low",
    "ci_high",
    "capped",
    "master_seed",
    "normalized_T",
];

pub const EXACT_HEADER: [&str; 6] = ["n", "alpha", "p", "T_exact", "log10_T", "lower_bound"];

/// One simulated `(spec, n)` point.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub graph: GraphKind,
    pub n: usize,
    pub alpha: f64,
    pub p: f64,
    pub trials: u64,
    pub mean_t: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub capped: usize,
    pub master_seed: u64,
}

impl ResultRow {
    pub fn new(spec: &SweepSpec, n: usize, graph: GraphKind, stats: &ConsensusStats) -> Self {
        Self {
            graph,
            n,
            alpha: spec.params.alpha(),
            p: spec.params.p(),
            trials: spec.trials,
            mean_t: stats.mean,
            ci_low: stats.ci_low,
            ci_high: stats.ci_high,
            capped: stats.capped_count,
            master_seed: spec.master_seed,
        }
    }

    pub fn normalized_t(&self) -> f64 {
        self.mean_t / self.n as f64
    }

    /// Degree for complete and regular graphs, edge probability for G(n, p).
    pub fn degree_or_pedge(&self) -> String {
        match self.graph {
            GraphKind::Complete => (self.n - 1).to_string(),
            GraphKind::RandomRegular { degree } => degree.to_string(),
            GraphKind::ErdosRenyi { edge_probability } => sig12(edge_probability),
        }
    }

    pub fn fields(&self) -> [String; 12] {
        [
            self.graph.label().to_string(),
            self.n.to_string(),
            self.degree_or_pedge(),
            sig12(self.alpha),
            sig12(self.p),
            self.trials.to_string(),
            sig12(self.mean_t),
            sig12(self.ci_low),
            sig12(self.ci_high),
            self.capped.to_string(),
            self.master_seed.to_string(),
            sig12(self.normalized_t()),
        ]
    }
}

/// One exact-analysis point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactRow {
    pub n: usize,
    pub alpha: f64,
    pub p: f64,
    pub time: ExactTime,
    pub lower_bound: f64,
}

impl ExactRow {
    pub fn fields(&self) -> [String; 6] {
        let log10 = self.time.log10();
        [
            self.n.to_string(),
            sig12(self.alpha),
            sig12(self.p),
            from_log10(log10),
            sig12(log10),
            sig12(self.lower_bound),
        ]
    }
}

pub fn write_csv<W, const N: usize, I>(out: W, header: [&str; N], rows: I) -> csv::Result<()>
where
    W: Write,
    I: IntoIterator<Item = [String; N]>,
{
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

/// JSON form of a [`ThresholdReport`]. Absent quantities are `null`.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct ThresholdJson {
    pub alpha: f64,
    pub critical_bias: f64,
    pub x_star: f64,
    pub r: f64,
    pub x_low: Option<f64>,
    pub x_high: Option<f64>,
    pub p_c: Option<f64>,
    /// Initial fraction the `regime` field was classified for, if given.
    pub p: Option<f64>,
    /// `null` when the bias is below 1/9 and no `p` was given.
    pub regime: Option<&'static str>,
    pub regime_below_p_c: Option<&'static str>,
    pub regime_at_or_above_p_c: Option<&'static str>,
}

impl ThresholdJson {
    pub fn new(report: &ThresholdReport, p: Option<f64>) -> Self {
        let low_bias = report.p_c.is_some();
        let regime = match p {
            Some(p) => Some(report.classify(p)),
            None => report.p_independent_regime(),
        };
        Self {
            alpha: report.alpha,
            critical_bias: CRITICAL_BIAS,
            x_star: report.x_star,
            r: report.r,
            x_low: report.x_low,
            x_high: report.x_high,
            p_c: report.p_c,
            p,
            regime: regime.map(|r| r.name()),
            regime_below_p_c: low_bias.then_some(Regime::SlowBelowThreshold.name()),
            regime_at_or_above_p_c: low_bias.then_some(Regime::FastAboveThreshold.name()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use twochoice_core::threshold_report;

    #[test]
    fn csv_layout() {
        let row = ResultRow {
            graph: GraphKind::RandomRegular { degree: 5 },
            n: 100,
            alpha: 0.05,
            p: 0.8,
            trials: 500,
            mean_t: 1234.5,
            ci_low: 1200.0,
            ci_high: 1269.0,
            capped: 0,
            master_seed: 7,
        };
        let mut buf = Vec::new();
        write_csv(&mut buf, SIMULATE_HEADER, [row.fields()]).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "graph_kind,n,degree_or_pedge,alpha,p,trials,mean_T,ci_low,ci_high,capped,master_seed,normalized_T\n\
             regular,100,5,0.05,0.8,500,1234.5,1200,1269,0,7,12.345\n"
        );
    }

    #[test]
    fn threshold_json_boundary() {
        let report = threshold_report(1.0 / 9.0, 1e-10).unwrap();
        let json = serde_json::to_value(ThresholdJson::new(&report, None)).unwrap();
        assert_eq!(json["regime"], "Unclassified");
        assert!(json["p_c"].is_null());
        assert!((json["x_low"].as_f64().unwrap() - 0.25).abs() < 1e-12);
    }
}
