//! End-to-end analysis of a rooted graph.

mod report;
mod source;
mod verify;

use std::time::Instant;

use crate::algebra::{
    adjacency_matrix, build_q, dual_idempotents, grading_components, lfr_decomposition,
    GradedAlgebraPair, QuantumDecomposition,
};
use crate::error::Result;
use crate::graph::{distance_partition, DistancePartition, Graph};
use crate::linalg::{MatrixAlgebra, RationalMatrix, Subspace};
use crate::modules::{
    classify_modules, commutant, decompose_standard_module, Decomposition, ModuleClassification,
    NumericOperators, Tolerances,
};

pub use report::{AnalysisReport, REPORT_SCHEMA};
pub use source::GraphSource;
pub use verify::{run_invariant_suite, CheckOutcome};

/// Knobs for [`analyze`].
#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisOptions {
    pub seed: u64,
    pub tolerances: Tolerances,
    /// Also report the grading of the closure of `{L, F, R}` without `I`.
    pub non_unital_details: bool,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            seed: 1,
            tolerances: Tolerances::default(),
            non_unital_details: false,
        }
    }
}

/// Everything computed for one graph and base vertex.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub graph: Graph,
    pub source: GraphSource,
    pub partition: DistancePartition,
    pub decomposition: QuantumDecomposition,
    pub algebras: GradedAlgebraPair,
    /// Closure of `{L, F, R}` without adjoining `I`.
    pub q_non_unital: MatrixAlgebra,
    pub commutant: Subspace,
    pub operators: NumericOperators,
    pub modules: Decomposition,
    pub classification: ModuleClassification,
    pub options: AnalysisOptions,
    pub elapsed_ms: f64,
}

impl Analysis {
    pub fn dim_t(&self) -> usize {
        self.algebras.t.dim()
    }

    pub fn dim_q(&self) -> usize {
        self.algebras.q.dim()
    }

    pub fn q_equals_t(&self) -> bool {
        self.classification.q_equals_t
    }

    pub fn q_non_unital_contains_identity(&self) -> bool {
        self.q_non_unital
            .contains(&RationalMatrix::identity(self.graph.vertex_count()))
    }

    /// Grading of the non-unital closure, when it is graded.
    pub fn q_non_unital_grading(&self) -> Result<std::collections::BTreeMap<i64, Subspace>> {
        grading_components(&self.q_non_unital, &self.decomposition.e)
    }
}

/// Runs the full pipeline: shells, `E_i*`, `L/F/R`, `T`, `Q` and gradings,
/// the commutant, the module decomposition and the classification.
pub fn analyze(
    graph: &Graph,
    source: &GraphSource,
    base: usize,
    options: &AnalysisOptions,
) -> Result<Analysis> {
    let start = Instant::now();
    let partition = distance_partition(graph, base)?;
    let a = adjacency_matrix(graph);
    let e = dual_idempotents(&partition);
    let decomposition = lfr_decomposition(&a, &e)?;
    let algebras = GradedAlgebraPair::build(&decomposition)?;
    let q_non_unital = build_q(&decomposition, &algebras.t, false)?;

    let mut generators = vec![a];
    generators.extend(e);
    let commutant = commutant(&generators)?;
    let operators = NumericOperators::from_decomposition(&decomposition);
    let tol = &options.tolerances;
    let modules =
        decompose_standard_module(&operators, &commutant, algebras.t.dim(), options.seed, tol)?;
    let classification = classify_modules(
        &modules.modules,
        &operators,
        algebras.t.dim(),
        algebras.q.dim(),
        tol,
    )?;
    Ok(Analysis {
        graph: graph.clone(),
        source: source.clone(),
        partition,
        decomposition,
        algebras,
        q_non_unital,
        commutant,
        operators,
        modules,
        classification,
        options: options.clone(),
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}
