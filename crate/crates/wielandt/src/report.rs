//! Machine-readable report envelope shared by every command.
//!
//! Each command emits one JSON document with a fixed top-level shape:
//! tool name and version, the command, the seed (when randomness is
//! involved), an echo of the parsed input, the spectral summary of the
//! pair, and a command-specific `payload` tagged by `kind`. Every real
//! number is serialized in scientific notation with 17 significant
//! digits, so values round-trip bit-exactly and identical runs produce
//! byte-identical documents. Non-finite values render as JSON `null`.

use crate::angles::AngleReport;
use crate::bounds::{BoundName, BoundReport};
use crate::extremal::{EqualityClassification, ExtremalPair};
use crate::linalg::Vector;
use crate::oracle::{OracleConfig, SuiteReport};
use crate::spectrum::SpectralData;
use serde::Serialize;
use serde_json::Value;
use std::io;

/// Spectral block present in every report.
#[derive(Clone, Debug, Serialize)]
pub struct SpectrumSummary {
    pub m: f64,
    #[serde(rename = "M")]
    pub m_max: f64,
    pub kappa: f64,
    pub chi: f64,
    pub mu: f64,
    pub pencil_eigenvalues: Vec<f64>,
    /// Dimension of the subspace attaining the minimum ratio.
    pub min_dim: usize,
    /// Dimension of the subspace attaining the maximum ratio.
    pub max_dim: usize,
    pub proportional: bool,
    pub tol_member: f64,
}

impl SpectrumSummary {
    pub fn from_spectrum(s: &SpectralData) -> Self {
        SpectrumSummary {
            m: s.m_min,
            m_max: s.m_max,
            kappa: s.kappa,
            chi: s.chi,
            mu: s.mu,
            pencil_eigenvalues: s.pencil_evals.clone(),
            min_dim: s.min_basis.len(),
            max_dim: s.max_basis.len(),
            proportional: s.proportional,
            tol_member: s.tol_member,
        }
    }
}

/// A bound evaluated without a concrete vector pair: interval only.
#[derive(Clone, Debug, Serialize)]
pub struct IntervalReport {
    pub name: BoundName,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
}

/// Command-specific report body, tagged by `kind`.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Analyze {
        note: Option<String>,
    },
    BoundsPair {
        u: Vector,
        v: Vector,
        angles: AngleReport,
        bounds: Vec<BoundReport>,
        classification: EqualityClassification,
    },
    BoundsAngle {
        phi: f64,
        intervals: Vec<IntervalReport>,
    },
    Extremal {
        pair: ExtremalPair,
        angles: AngleReport,
        classification: EqualityClassification,
    },
    Kolotilina {
        x: Vector,
        y: Vector,
        cos_phi: f64,
        epsilon: [f64; 2],
        /// `|<x,y>_2|`.
        equality_lhs: f64,
        /// Sharp cosine bound times `||x||_2 ||y||_2`.
        equality_rhs: f64,
        classification: EqualityClassification,
    },
    Verify {
        config: OracleConfig,
        fault_factor: Option<f64>,
        suite: SuiteReport,
    },
}

/// The complete document a command prints to standard output.
#[derive(Debug, Serialize)]
pub struct ReportDocument {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub seed: Option<u64>,
    pub input: Value,
    pub spectrum: SpectrumSummary,
    pub payload: Payload,
}

impl ReportDocument {
    pub fn new(
        command: &'static str,
        input: Value,
        spectrum: &SpectralData,
        payload: Payload,
    ) -> Self {
        ReportDocument {
            tool: "wielandt",
            version: env!("CARGO_PKG_VERSION"),
            command,
            seed: None,
            input,
            spectrum: SpectrumSummary::from_spectrum(spectrum),
            payload,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    /// Compact JSON with all reals at 17 significant digits.
    pub fn to_json(&self) -> String {
        let mut out = Vec::new();
        let mut ser = serde_json::Serializer::with_formatter(&mut out, SciFormatter);
        self.serialize(&mut ser).expect("report serialization cannot fail");
        String::from_utf8(out).expect("serializer emits UTF-8")
    }
}

/// Compact formatter that writes floats as `{:.16e}` (17 significant
/// digits — enough to reproduce any f64 exactly).
struct SciFormatter;

impl serde_json::ser::Formatter for SciFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.16e}")
    }
}
