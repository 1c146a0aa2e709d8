//! Machine-readable result documents.
//!
//! Field order is fixed by the struct layout and every real number is
//! written with 17 significant digits, so output is byte-stable for fixed
//! inputs.

use serde::{Serialize, Serializer};

use crate::bounds::{BoundKind, BoundsReport, CriticalFinding, PartitionHint};
use crate::connectivity::ConnectivityMatrix;
use crate::graph::ProbGraph;
use crate::matrix::Matrix;
use crate::mc::McEstimate;
use crate::sensitivity::{DerivativeMethod, SensitivityRanking};
use crate::spectral::SpectralReport;
use crate::walk::WalkMatrix;

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// A real number serialized with 17 significant digits in exponent form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Real(pub f64);

impl Serialize for Real {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return serializer.serialize_none();
        }
        let text = format_real(self.0);
        let number: serde_json::Number = text.parse().map_err(serde::ser::Error::custom)?;
        number.serialize(serializer)
    }
}

pub fn format_real(x: f64) -> String {
    format!("{x:.16e}")
}

fn reals(xs: &[f64]) -> Vec<Real> {
    xs.iter().copied().map(Real).collect()
}

fn rows(m: &Matrix) -> Vec<Vec<Real>> {
    (0..m.dim()).map(|i| reals(m.row(i))).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Exact,
    Mc,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComponentDoc {
    pub vertices: Vec<usize>,
    pub lambda_max: Real,
}

#[derive(Debug, Clone, Serialize)]
pub struct ViolationDoc {
    pub i: usize,
    pub j: usize,
    pub kind: BoundKind,
    pub magnitude: Real,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundsDoc {
    pub tolerance: Real,
    pub lower: Vec<Vec<Real>>,
    pub upper: Vec<Vec<Real>>,
    pub violations: Vec<ViolationDoc>,
    pub unconstrained: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FactorWarningDoc {
    pub l: usize,
    pub m: usize,
    pub deviation: Real,
}

#[derive(Debug, Clone, Serialize)]
pub struct CriticalDoc {
    pub k: usize,
    pub witnesses: Vec<(usize, usize)>,
    pub partition_hint: Option<PartitionHint>,
    pub warnings: Vec<FactorWarningDoc>,
    pub statistical: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct RankDoc {
    pub edge: Option<usize>,
    pub i: usize,
    pub j: usize,
    pub p: Real,
    pub dlambda: Real,
    pub method: DerivativeMethod,
    pub headroom: Real,
    pub projected_gain: Real,
}

#[derive(Debug, Clone, Serialize)]
pub struct WalkDoc {
    pub z: usize,
    pub matrix: Vec<Vec<Real>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct McDoc {
    pub samples: u64,
    pub seed: u64,
    pub std_err: Vec<Vec<Real>>,
}

/// Output of one CLI command. Absent sections are omitted.
#[derive(Debug, Clone, Serialize)]
pub struct ResultDocument {
    pub schema_version: u32,
    pub tool_version: &'static str,
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub engine: Option<Engine>,
    pub n: usize,
    pub m: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<Vec<Vec<Real>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eigenvalues: Option<Vec<Real>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_max: Option<Real>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_max_normalized: Option<Real>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub psd: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub definite: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<ComponentDoc>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundsDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub critical_vertices: Option<Vec<CriticalDoc>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ranking: Option<Vec<RankDoc>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub walk: Option<WalkDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mc: Option<McDoc>,
}

impl ResultDocument {
    pub fn new(command: &'static str, g: &ProbGraph) -> Self {
        ResultDocument {
            schema_version: SCHEMA_VERSION,
            tool_version: TOOL_VERSION,
            command,
            engine: None,
            n: g.n(),
            m: g.m(),
            q: None,
            eigenvalues: None,
            lambda_max: None,
            lambda_max_normalized: None,
            psd: None,
            definite: None,
            components: None,
            bounds: None,
            critical_vertices: None,
            ranking: None,
            walk: None,
            mc: None,
        }
    }

    pub fn with_q(mut self, engine: Engine, q: &ConnectivityMatrix) -> Self {
        self.engine = Some(engine);
        self.q = Some(rows(q.matrix()));
        self
    }

    pub fn with_spectrum(mut self, s: &SpectralReport) -> Self {
        self.eigenvalues = Some(reals(&s.eigenvalues));
        self.lambda_max = Some(Real(s.lambda_max));
        self.lambda_max_normalized = Some(Real(s.lambda_max_normalized));
        self.psd = Some(s.psd);
        self.definite = Some(s.definite);
        self.components = Some(
            s.components
                .iter()
                .map(|c| ComponentDoc {
                    vertices: c.vertices.clone(),
                    lambda_max: Real(c.lambda_max),
                })
                .collect(),
        );
        self
    }

    pub fn with_bounds(mut self, b: &BoundsReport) -> Self {
        self.bounds = Some(BoundsDoc {
            tolerance: Real(b.tolerance),
            lower: rows(&b.lower),
            upper: rows(&b.upper),
            violations: b
                .violations
                .iter()
                .map(|v| ViolationDoc {
                    i: v.i,
                    j: v.j,
                    kind: v.kind,
                    magnitude: Real(v.magnitude),
                })
                .collect(),
            unconstrained: b.unconstrained.clone(),
        });
        self
    }

    pub fn with_critical(mut self, findings: &[CriticalFinding]) -> Self {
        self.critical_vertices = Some(
            findings
                .iter()
                .map(|f| CriticalDoc {
                    k: f.k,
                    witnesses: f.witnesses.clone(),
                    partition_hint: f.partition_hint.clone(),
                    warnings: f
                        .warnings
                        .iter()
                        .map(|w| FactorWarningDoc {
                            l: w.l,
                            m: w.m,
                            deviation: Real(w.deviation),
                        })
                        .collect(),
                    statistical: f.statistical,
                })
                .collect(),
        );
        self
    }

    pub fn with_ranking(mut self, r: &SensitivityRanking) -> Self {
        self.lambda_max = Some(Real(r.lambda_max));
        self.ranking = Some(
            r.entries
                .iter()
                .map(|e| RankDoc {
                    edge: e.edge,
                    i: e.i,
                    j: e.j,
                    p: Real(e.p),
                    dlambda: Real(e.dlambda),
                    method: e.method,
                    headroom: Real(e.headroom),
                    projected_gain: Real(e.projected_gain),
                })
                .collect(),
        );
        self
    }

    pub fn with_walk(mut self, w: &WalkMatrix) -> Self {
        self.walk = Some(WalkDoc {
            z: w.z(),
            matrix: rows(w.entries()),
        });
        self
    }

    pub fn with_mc(mut self, est: &McEstimate) -> Self {
        self.mc = Some(McDoc {
            samples: est.samples,
            seed: est.seed,
            std_err: rows(&est.std_err),
        });
        self
    }

    pub fn to_json(&self, pretty: bool) -> String {
        let text = if pretty {
            serde_json::to_string_pretty(self)
        } else {
            serde_json::to_string(self)
        };
        text.expect("result documents always serialize")
    }
}
