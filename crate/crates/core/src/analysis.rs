//! End-to-end analysis of a metric nilpotent Lie algebra, producing a
//! deterministic JSON certificate.
//!
//! Every positive or negative claim in the certificate is re-checked from
//! its certificate object (graph, solution or infeasibility witness) before
//! it is reported; failed re-checks are listed in `reverification_failures`.

use serde::{Deserialize, Serialize};

use crate::derivations::{skew_derivation_algebra, DerivationAlgebra, DerivationError};
use crate::double_extension::{base_go_report, decompose, roundtrip_matches, Decomposition};
use crate::exec::Execution;
use crate::geodesic::{
    check_equivariance, find_linear_graph, go_pointwise_system, go_sample_report, natural_reductivity,
    natural_reductivity_system, verify_geodesic_graph, GoSampleSummary, GoVerdict, LinearGraph, NatRedVerdict,
};
use crate::io::{AlgebraSpecFile, SpecError};
use crate::lie::MetricLieAlgebra;
use crate::linalg::{Feasibility, RMatrix, Signature, Subspace};
use crate::module_theory::{complement_system, complete_reducibility_probe, ActionSpec, ProbeSummary, ProbeVerdict};
use crate::rational::Rational;

pub const TOOL: &str = concat!("gonil ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, thiserror::Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Derivation(#[from] DerivationError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnalysisOptions {
    pub samples: usize,
    pub seed: u64,
    pub exec: Execution,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions { samples: 200, seed: 1, exec: Execution::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputSummary {
    pub name: String,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivedSummary {
    pub dim: usize,
    pub restricted_signature: Signature,
    pub radical_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplingSummary {
    pub tested: usize,
    pub feasible: usize,
    pub seed: u64,
}

impl From<&GoSampleSummary> for SamplingSummary {
    fn from(s: &GoSampleSummary) -> Self {
        SamplingSummary { tested: s.tested, feasible: s.feasible, seed: s.seed }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoSection {
    pub operation: String,
    pub verdict: GoVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sampling: Option<SamplingSummary>,
}

/// Nonzero entry of a sparse certificate vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseEntry {
    pub index: usize,
    pub coeff: Rational,
}

fn sparse(v: &[Rational]) -> Vec<SparseEntry> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(index, coeff)| SparseEntry { index, coeff: coeff.clone() })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NatRedSection {
    pub operation: String,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equations: Option<usize>,
    /// Combination of equations reducing to `0 = c ≠ 0`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<SparseEntry>>,
    /// `alpha[a][i]`, the graph in coordinates of the isotropy basis.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph: Option<Vec<Vec<Rational>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleExtensionSection {
    pub operation: String,
    pub outcome: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e: Option<Vec<Rational>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f: Option<Vec<Rational>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub noncentral_witness: Option<Vec<Rational>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base_signature: Option<Signature>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base_step: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub roundtrip: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base_go: Option<GoSection>,
}

impl DoubleExtensionSection {
    fn outcome(outcome: &str, reason: Option<String>) -> Self {
        DoubleExtensionSection {
            operation: "decompose".to_string(),
            outcome: outcome.to_string(),
            reason,
            e: None,
            f: None,
            noncentral_witness: None,
            base_dim: None,
            base_signature: None,
            base_step: None,
            roundtrip: None,
            base_go: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisCertificate {
    pub tool: String,
    pub input: InputSummary,
    pub dim: usize,
    pub signature: Signature,
    pub nilpotency_step: Option<usize>,
    pub lower_central_dims: Vec<usize>,
    pub derived: DerivedSummary,
    pub isotropy_dim: usize,
    pub geodesic_orbit: GoSection,
    pub natural_reductivity: NatRedSection,
    pub double_extension: DoubleExtensionSection,
    pub complete_reducibility: ProbeSummary,
    pub reverification_failures: Vec<String>,
}

impl AnalysisCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize")
    }

    pub fn reverified(&self) -> bool {
        self.reverification_failures.is_empty()
    }
}

/// Validates and analyzes `file`. `graph`, if given, lists operators
/// `A(e_i)` of a candidate linear geodesic graph.
pub fn analyze(
    file: &AlgebraSpecFile,
    graph: Option<&[RMatrix]>,
    opts: &AnalysisOptions,
) -> Result<AnalysisCertificate, AnalysisError> {
    let m = file.to_metric()?;
    let input = InputSummary { name: file.metadata.name.clone(), sha256: file.digest()? };
    let alg = m.algebra();
    let series = alg.lower_central_series();
    let derived = alg.derived_algebra();
    let radical = m.form().radical_in(&derived);
    let derived_summary = DerivedSummary {
        dim: derived.dim(),
        restricted_signature: m.form().restrict(&derived).signature(),
        radical_dim: radical.dim(),
    };
    let h = skew_derivation_algebra(&m, opts.exec)?;
    let mut failures = Vec::new();

    let go = geodesic_orbit(&m, &h, graph, opts, &mut failures);
    let natred = natural_reductivity_section(&m, &h, &go.verdict, &mut failures);
    let dext = double_extension_section(&m, opts, &mut failures);
    let probe = complete_reducibility_probe(&m, &h, opts.exec);
    reverify_probe(&h, &probe, &mut failures);

    Ok(AnalysisCertificate {
        tool: TOOL.to_string(),
        input,
        dim: m.dim(),
        signature: m.signature(),
        nilpotency_step: alg.nilpotency_step(),
        lower_central_dims: series.iter().map(Subspace::dim).collect(),
        derived: derived_summary,
        isotropy_dim: h.dim(),
        geodesic_orbit: go,
        natural_reductivity: natred,
        double_extension: dext,
        complete_reducibility: ProbeSummary::from(&probe),
        reverification_failures: failures,
    })
}

fn graph_section() -> GoSection {
    GoSection {
        operation: "verify_geodesic_graph (linear graph, polynomial identity)".to_string(),
        verdict: GoVerdict::CertifiedByGraph,
        sampling: None,
    }
}

fn sampled_section(
    m: &MetricLieAlgebra,
    h: &DerivationAlgebra,
    opts: &AnalysisOptions,
    failures: &mut Vec<String>,
    context: &str,
) -> GoSection {
    let report = go_sample_report(m, h, opts.samples, opts.seed, opts.exec);
    if let Some(fail) = &report.first_failure {
        let ok = fail.witness.as_ref().is_some_and(|w| {
            go_pointwise_system(m, h, &fail.t).check(&Feasibility::Infeasible { witness: w.clone() })
        });
        if !ok {
            failures.push(format!("{context}: GO disproof witness failed re-verification"));
        }
    }
    GoSection {
        operation: "go_sample_report (pointwise exact feasibility)".to_string(),
        verdict: GoVerdict::from_samples(&report),
        sampling: Some(SamplingSummary::from(&report)),
    }
}

fn geodesic_orbit(
    m: &MetricLieAlgebra,
    h: &DerivationAlgebra,
    graph: Option<&[RMatrix]>,
    opts: &AnalysisOptions,
    failures: &mut Vec<String>,
) -> GoSection {
    if let Some(ops) = graph {
        match LinearGraph::from_operators(h, ops) {
            Ok(g) if verify_geodesic_graph(m, h, &g) => return graph_section(),
            Ok(_) => failures.push("supplied geodesic graph fails the geodesic identity".to_string()),
            Err(i) => failures.push(format!("supplied geodesic graph: A(e{}) is not a skew derivation", i + 1)),
        }
    }
    if let Some(g) = find_linear_graph(m, h) {
        if verify_geodesic_graph(m, h, &g) {
            return graph_section();
        }
        failures.push("solved linear geodesic graph fails the geodesic identity".to_string());
    }
    sampled_section(m, h, opts, failures, "geodesic orbit")
}

fn natural_reductivity_section(
    m: &MetricLieAlgebra,
    h: &DerivationAlgebra,
    go: &GoVerdict,
    failures: &mut Vec<String>,
) -> NatRedSection {
    let verdict = natural_reductivity(m, h, go);
    let mut section = NatRedSection {
        operation: "natural_reductivity (linear equivariant graph feasibility)".to_string(),
        verdict: verdict.label().to_string(),
        reason: None,
        equations: None,
        witness: None,
        graph: None,
    };
    match verdict {
        NatRedVerdict::NaturallyReductive(g) => {
            if !(verify_geodesic_graph(m, h, &g) && check_equivariance(h, &g)) {
                failures.push("natural-reductivity graph failed re-verification".to_string());
            }
            section.graph = Some(g.alpha.row_vecs());
        }
        NatRedVerdict::NotNaturallyReductive { witness, equations } => {
            let sys = natural_reductivity_system(m, h);
            if !sys.check(&Feasibility::Infeasible { witness: witness.clone() }) {
                failures.push("natural-reductivity infeasibility witness failed re-verification".to_string());
            }
            section.equations = Some(equations);
            section.witness = Some(sparse(&witness));
        }
        NatRedVerdict::NotApplicable(reason) => section.reason = Some(reason),
    }
    section
}

fn double_extension_section(
    m: &MetricLieAlgebra,
    opts: &AnalysisOptions,
    failures: &mut Vec<String>,
) -> DoubleExtensionSection {
    let result = match decompose(m) {
        Ok(r) => r,
        Err(e) => return DoubleExtensionSection::outcome("not-applicable", Some(e.to_string())),
    };
    match result {
        Decomposition::NotCentral { e, x } => {
            if m.algebra().bracket(&e, &x).iter().all(Rational::is_zero) || !m.inner(&e, &x).is_zero() {
                failures.push("non-centrality witness failed re-verification".to_string());
            }
            let mut s = DoubleExtensionSection::outcome(
                "e-not-central",
                Some("e does not commute with e-perp, so the metric is not geodesic orbit".to_string()),
            );
            s.e = Some(e);
            s.noncentral_witness = Some(x);
            s
        }
        Decomposition::Extension(r) => {
            let (zero, one) = (Rational::zero(), Rational::one());
            if m.inner(&r.e, &r.e) != zero || m.inner(&r.f, &r.f) != zero || m.inner(&r.e, &r.f) != one {
                failures.push("double extension: e, f fail the null-pair relations".to_string());
            }
            let base_go = match base_go_report(&r, opts.samples, opts.seed, opts.exec) {
                Ok(report) => Some(GoSection {
                    operation: "go_sample_report on the base".to_string(),
                    verdict: GoVerdict::from_samples(&report),
                    sampling: Some(SamplingSummary::from(&report)),
                }),
                Err(_) => None,
            };
            let mut s = DoubleExtensionSection::outcome("double-extension", None);
            s.e = Some(r.e.clone());
            s.f = Some(r.f.clone());
            s.base_dim = Some(r.data.base.dim());
            s.base_signature = Some(r.base_signature());
            s.base_step = r.base_step;
            s.roundtrip = Some(roundtrip_matches(&r));
            s.base_go = base_go;
            s
        }
    }
}

fn reverify_probe(h: &DerivationAlgebra, probe: &ProbeVerdict, failures: &mut Vec<String>) {
    if let ProbeVerdict::NotCompletelyReducible { subspace, witness, .. } = probe {
        let action = ActionSpec::from_derivations(h);
        let ok = subspace
            .complement_in(&Subspace::full(h.ambient_dim()))
            .ok()
            .and_then(|v| complement_system(&action, subspace, &v).ok())
            .is_some_and(|sys| sys.check(&Feasibility::Infeasible { witness: witness.clone() }));
        if !ok {
            failures.push("complete-reducibility witness failed re-verification".to_string());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::LieAlgebra;
    use crate::presets::{family, family_graph_operators, shift_matrix};

    #[test]
    fn heisenberg_certificate() {
        let m = MetricLieAlgebra::euclidean(LieAlgebra::heisenberg3());
        let file = AlgebraSpecFile::from_metric(&m, "h3", "");
        let opts = AnalysisOptions { samples: 20, seed: 1, exec: Execution::Sequential };
        let cert = analyze(&file, None, &opts).unwrap();
        assert_eq!(cert.dim, 3);
        assert_eq!(cert.nilpotency_step, Some(2));
        assert_eq!(cert.natural_reductivity.verdict, "naturally-reductive");
        assert_eq!(cert.double_extension.outcome, "not-applicable");
        assert!(cert.reverified());
    }

    #[test]
    fn preset_graph_and_file_agree() {
        let spec = shift_matrix(2).unwrap();
        let m = family(&spec);
        let file = AlgebraSpecFile::from_metric(&m, "family-d2", "");
        let opts = AnalysisOptions { samples: 10, seed: 1, exec: Execution::Sequential };
        let a = analyze(&file, Some(&family_graph_operators(&spec)), &opts).unwrap();
        let b = analyze(&file, None, &opts).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.geodesic_orbit.verdict, GoVerdict::CertifiedByGraph);
        assert_eq!(a.complete_reducibility.verdict, "not-completely-reducible");
        assert_eq!(a.double_extension.roundtrip, Some(true));
        assert!(a.reverified());
    }
}
