use serde::Serialize;
use serde_json::Value;

use super::Analysis;
use crate::error::Result;
use crate::graph::graph6::encode_graph6;
use crate::linalg::Subspace;
use crate::modules::{IdentityCheck, IntertwinerMode, Tolerances};

/// JSON schema of the report, shipped with the crate.
pub const REPORT_SCHEMA: &str = include_str!("../../../../docs/report.schema.json");

#[derive(Debug, Clone, Serialize)]
pub struct GraphInfo {
    pub source: String,
    pub n: usize,
    pub edges: usize,
    pub graph6: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct GradingEntry {
    pub n: i64,
    pub dim: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ModuleRow {
    pub index: usize,
    pub endpoint: usize,
    pub diameter: usize,
    pub dim: usize,
    pub shell_dims: Vec<usize>,
    pub thin: bool,
    pub a: Option<Vec<f64>>,
    pub x: Option<Vec<f64>>,
    pub iso_class: String,
    pub quasi_class: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct IsoClassRow {
    pub label: String,
    pub endpoint: usize,
    pub diameter: usize,
    pub dim: usize,
    pub shell_dims: Vec<usize>,
    pub thin: bool,
    pub multiplicity: usize,
    pub quasi_class: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct QuasiClassRow {
    pub label: String,
    pub diameter: usize,
    pub dim: usize,
    pub endpoints: Vec<usize>,
    pub iso_classes: Vec<String>,
    pub m_mu: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessRow {
    pub u: String,
    pub w: String,
    pub endpoints: [usize; 2],
    pub diameter: usize,
    pub mode: IntertwinerMode,
}

#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub q_equals_t: bool,
    pub witness: Option<WitnessRow>,
    pub witness_count: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct NonUnitalDetails {
    pub dim: usize,
    pub contains_identity: bool,
    pub grading: Vec<GradingEntry>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Timing {
    pub total_ms: f64,
}

/// Serializable summary of an [`Analysis`].
#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub graph: GraphInfo,
    pub base: usize,
    pub diameter: usize,
    pub shell_sizes: Vec<usize>,
    pub dim_m_star: usize,
    pub dim_t: usize,
    pub dim_q: usize,
    pub dim_q_non_unital: usize,
    pub q_non_unital_contains_identity: bool,
    pub dim_commutant: usize,
    pub t_grading: Vec<GradingEntry>,
    pub q_grading: Vec<GradingEntry>,
    pub modules: Vec<ModuleRow>,
    pub iso_classes: Vec<IsoClassRow>,
    pub quasi_classes: Vec<QuasiClassRow>,
    pub verdict: Verdict,
    pub identities: Vec<IdentityCheck>,
    pub rng_seed: u64,
    pub rng_seed_used: u64,
    pub decomposition_attempts: usize,
    pub tolerances: Tolerances,
    pub non_unital_q: Option<NonUnitalDetails>,
    pub timing: Timing,
}

fn grading_table(g: &std::collections::BTreeMap<i64, Subspace>) -> Vec<GradingEntry> {
    g.iter()
        .map(|(&n, s)| GradingEntry { n, dim: s.dim() })
        .collect()
}

impl AnalysisReport {
    pub fn from_analysis(an: &Analysis) -> Result<Self> {
        let cls = &an.classification;
        let iso_label = |k: usize| cls.iso_classes[k].label.clone();
        let quasi_label = |k: usize| cls.quasi_classes[k].label.clone();
        let modules = an
            .modules
            .modules
            .iter()
            .enumerate()
            .map(|(i, m)| ModuleRow {
                index: i,
                endpoint: m.endpoint(),
                diameter: m.diameter(),
                dim: m.dim(),
                shell_dims: m.profile.shell_dims.clone(),
                thin: m.is_thin(),
                a: m.params.as_ref().map(|p| p.a.clone()),
                x: m.params.as_ref().map(|p| p.x.clone()),
                iso_class: iso_label(cls.module_iso[i]),
                quasi_class: quasi_label(cls.module_quasi[i]),
            })
            .collect();
        let iso_classes = cls
            .iso_classes
            .iter()
            .map(|c| IsoClassRow {
                label: c.label.clone(),
                endpoint: c.endpoint,
                diameter: c.diameter,
                dim: c.dim,
                shell_dims: c.shell_dims.clone(),
                thin: c.thin,
                multiplicity: c.members.len(),
                quasi_class: quasi_label(c.quasi_class),
            })
            .collect();
        let quasi_classes = cls
            .quasi_classes
            .iter()
            .map(|c| QuasiClassRow {
                label: c.label.clone(),
                diameter: c.diameter,
                dim: c.dim,
                endpoints: c.endpoints.clone(),
                iso_classes: c.iso_classes.iter().map(|&k| iso_label(k)).collect(),
                m_mu: c.multiplicity,
            })
            .collect();
        let verdict = Verdict {
            q_equals_t: cls.q_equals_t,
            witness: cls.witness.as_ref().map(|w| WitnessRow {
                u: w.u_label.clone(),
                w: w.w_label.clone(),
                endpoints: [w.endpoints.0, w.endpoints.1],
                diameter: w.diameter,
                mode: IntertwinerMode::Quasi,
            }),
            witness_count: cls.all_witnesses.len(),
        };
        let non_unital_q = if an.options.non_unital_details {
            Some(NonUnitalDetails {
                dim: an.q_non_unital.dim(),
                contains_identity: an.q_non_unital_contains_identity(),
                grading: grading_table(&an.q_non_unital_grading()?),
            })
        } else {
            None
        };
        Ok(AnalysisReport {
            graph: GraphInfo {
                source: an.source.to_string(),
                n: an.graph.vertex_count(),
                edges: an.graph.edge_count(),
                graph6: encode_graph6(&an.graph),
            },
            base: an.partition.base,
            diameter: an.partition.diameter,
            shell_sizes: an.partition.shell_sizes(),
            dim_m_star: an.partition.diameter + 1,
            dim_t: an.dim_t(),
            dim_q: an.dim_q(),
            dim_q_non_unital: an.q_non_unital.dim(),
            q_non_unital_contains_identity: an.q_non_unital_contains_identity(),
            dim_commutant: an.commutant.dim(),
            t_grading: grading_table(&an.algebras.t_grading),
            q_grading: grading_table(&an.algebras.q_grading),
            modules,
            iso_classes,
            quasi_classes,
            verdict,
            identities: cls.identities.clone(),
            rng_seed: an.options.seed,
            rng_seed_used: an.modules.seed_used,
            decomposition_attempts: an.modules.attempts,
            tolerances: an.options.tolerances,
            non_unital_q,
            timing: Timing {
                total_ms: an.elapsed_ms,
            },
        })
    }

    /// JSON value with sorted keys and floats cut to 12 significant digits.
    pub fn to_json_value(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        round_floats(&mut v);
        v
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("report serializes")
    }
}

/// 12 significant digits; magnitudes below 1e-12 become zero.
pub(crate) fn round_sig12(x: f64) -> f64 {
    if !x.is_finite() || x.abs() < 1e-12 {
        return if x.is_finite() { 0.0 } else { x };
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

fn round_floats(v: &mut Value) {
    match v {
        Value::Number(num) if num.is_f64() => {
            let x = round_sig12(num.as_f64().expect("f64 number"));
            *v = serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number);
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding() {
        assert_eq!(round_sig12(4.000000000000001), 4.0);
        assert_eq!(round_sig12(-3.2e-15), 0.0);
        assert_eq!(round_sig12(1.23456789012345), 1.23456789012);
        assert_eq!(round_sig12(-0.0), 0.0);
    }
}
