//! The invariant suite behind `subconst verify`.

use std::collections::BTreeSet;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{Analysis, GraphSource};
use crate::algebra::{hamming_dual_adjacency, hamming_dual_eigenvalue, product_span};
use crate::graph::graph6::{encode_graph6, parse_graph6};
use crate::graph::{distance_partition, dual_polar_vertex_count};
use crate::linalg::{span_of, subspace_intersection, RationalMatrix, Subspace};
use crate::modules::{singular_values, spectral_norm,
    classify_modules, decompose_standard_module, intertwiner_exists, IntertwinerMode,
    IrreducibleModuleView, ModuleClassification,
};

/// Result of one named invariant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub id: String,
    pub passed: bool,
    pub detail: String,
}

struct Suite(Vec<CheckOutcome>);

impl Suite {
    fn check(&mut self, id: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.0.push(CheckOutcome {
            id: id.into(),
            passed,
            detail: detail.into(),
        });
    }
}

/// Runs every graph, algebra and module invariant on a finished analysis.
pub fn run_invariant_suite(an: &Analysis) -> Vec<CheckOutcome> {
    let mut s = Suite(Vec::new());
    graph_checks(an, &mut s);
    linalg_checks(an, &mut s);
    algebra_checks(an, &mut s);
    module_checks(an, &mut s);
    s.0
}

fn graph_checks(an: &Analysis, s: &mut Suite) {
    let g = &an.graph;
    let p = &an.partition;
    let banded = g.edges().iter().all(|&(u, v)| p.dist[u].abs_diff(p.dist[v]) <= 1);
    s.check("graph.edges-join-adjacent-shells", banded, "");
    let partition_ok = p.dist[p.base] == 0
        && p.shells.iter().all(|sh| !sh.is_empty())
        && p.shells.iter().map(Vec::len).sum::<usize>() == g.vertex_count();
    s.check("graph.shells-partition-vertices", partition_ok, format!("{:?}", p.shell_sizes()));
    let round_trip = parse_graph6(&encode_graph6(g)).map(|h| &h == g).unwrap_or(false);
    s.check("graph.graph6-round-trip", round_trip, "");
    match an.source {
        GraphSource::Hamming { d, n } => {
            let vertices = n.pow(d as u32);
            let ok = g.vertex_count() == vertices
                && g.edge_count() == d * (n - 1) * vertices / 2
                && g.regular_degree() == Some(d * (n - 1))
                && p.diameter == d;
            s.check("graph.hamming-shape", ok, format!("H({d},{n})"));
        }
        GraphSource::DualPolar { d, q } => {
            let ok = g.vertex_count() as u128 == dual_polar_vertex_count(d, q)
                && p.diameter == d
                && g.edges().iter().all(|&(u, v)| p.dist[u] % 2 != p.dist[v] % 2);
            s.check("graph.dual-polar-shape", ok, format!("D_{d}({q})"));
        }
        _ => {}
    }
}

fn linalg_checks(an: &Analysis, s: &mut Suite) {
    let t = &an.algebras.t;
    let q = &an.algebras.q;
    s.check("linalg.closure-sound T", t.is_closed(), "");
    s.check("linalg.closure-sound Q", q.is_closed(), "");
    s.check("linalg.closure-sound Q without I", an.q_non_unital.is_closed(), "");
    let mut reversed = t.basis_matrices();
    reversed.reverse();
    let canonical = span_of(&reversed).map(|sp| &sp == t.space()).unwrap_or(false);
    s.check("linalg.canonical-span", canonical, "");
    let t0 = &an.algebras.t_grading[&0];
    let formula = match (q.space().sum(t0), subspace_intersection(q.space(), t0)) {
        (Ok(sum), Ok(cap)) => sum.dim() + cap.dim() == q.dim() + t0.dim(),
        _ => false,
    };
    s.check("linalg.dimension-formula", formula, "dim(Q+T_0) + dim(Q∩T_0) = dim Q + dim T_0");
}

fn graded_products_ok(pieces: &std::collections::BTreeMap<i64, Subspace>) -> bool {
    let bases: Vec<(i64, Vec<RationalMatrix>)> =
        pieces.iter().map(|(&n, p)| (n, p.basis_matrices())).collect();
    bases.iter().all(|(n, xs)| {
        bases.iter().all(|(m, ys)| {
            xs.iter().all(|x| {
                ys.iter().all(|y| {
                    let p = x * y;
                    match pieces.get(&(n + m)) {
                        Some(target) => target.contains(&p),
                        None => p.is_zero(),
                    }
                })
            })
        })
    })
}

fn algebra_checks(an: &Analysis, s: &mut Suite) {
    let dec = &an.decomposition;
    for (name, ok) in dec.identity_checks() {
        s.check(format!("algebra.{name}"), ok, "");
    }
    let t = &an.algebras.t;
    let q = &an.algebras.q;
    s.check("algebra.T-star-closed", t.is_transpose_closed(), "");
    s.check("algebra.Q-star-closed", q.is_transpose_closed(), "");
    s.check("algebra.Q-in-T", q.space().is_subspace_of(t.space()), "");
    let qb = q.basis_matrices();
    let qm = product_span(&qb, &dec.e).map(|sp| &sp == t.space()).unwrap_or(false);
    let mq = product_span(&dec.e, &qb).map(|sp| &sp == t.space()).unwrap_or(false);
    s.check("algebra.QM* = T", qm, "");
    s.check("algebra.M*Q = T", mq, "");

    let tg = &an.algebras.t_grading;
    let qg = &an.algebras.q_grading;
    let t_sum: usize = tg.values().map(Subspace::dim).sum();
    let q_sum: usize = qg.values().map(Subspace::dim).sum();
    s.check("algebra.sum dim T_n = dim T", t_sum == t.dim(), format!("{t_sum} vs {}", t.dim()));
    s.check("algebra.sum dim Q_n = dim Q", q_sum == q.dim(), format!("{q_sum} vs {}", q.dim()));
    let nested = qg
        .iter()
        .all(|(n, qn)| qn.is_subspace_of(&tg[n]) && qn.is_subspace_of(q.space()));
    s.check("algebra.Q_n inside T_n and Q", nested, "");
    let m_star = span_of(&dec.e).expect("nonempty");
    s.check("algebra.M* inside T_0", m_star.is_subspace_of(&tg[&0]), "");
    let placed = qg[&0].contains(&RationalMatrix::identity(dec.size()))
        && qg[&0].contains(&dec.f)
        && qg.get(&-1).is_some_and(|p| p.contains(&dec.l))
        && qg.get(&1).is_some_and(|p| p.contains(&dec.r));
    let placed = placed || dec.diameter == 0;
    s.check("algebra.I,F in Q_0; L in Q_-1; R in Q_1", placed, "");
    s.check("algebra.T_n T_m inside T_(n+m)", graded_products_ok(tg), "");
    s.check("algebra.Q_n Q_m inside Q_(n+m)", graded_products_ok(qg), "");
    let shifts = tg.iter().all(|(&n, piece)| {
        piece
            .basis_matrices()
            .iter()
            .all(|b| (-1..=dec.diameter as i64 + 1).all(|i| b * &dec.e_star(i) == &dec.e_star(i + n) * b))
    });
    s.check("algebra.S E_i* = E_(i+n)* S on T_n", shifts, "");

    if let GraphSource::Hamming { d, n } = an.source {
        let thetas: BTreeSet<i64> = (0..=d).map(|i| hamming_dual_eigenvalue(d, n, i)).collect();
        s.check("hamming theta* distinct", thetas.len() == d + 1, format!("{thetas:?}"));
        if an.partition.diameter == d {
            let a_star = hamming_dual_adjacency(&dec.e, d, n).expect("D+1 idempotents");
            let rhs = &(&dec.f + &(&dec.l * &dec.r)) - &(&dec.r * &dec.l);
            s.check("hamming A* = F+LR−RL", a_star == rhs, "");
            s.check("hamming A* in Q", q.contains(&a_star), "");
            s.check("hamming dim Q = dim T", q.dim() == t.dim(), "");
        }
    }
}

/// Dimension of the span of `{ g w }` as `g` runs over words in the
/// restricted generators and `w` starts at a random vector.
fn cyclic_span_dim(gens: &[DMatrix<f64>], dim: usize, seed: u64, tol: f64) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = DVector::from_fn(dim, |_, _| rng.gen_range(-1.0..1.0));
    let mut basis: Vec<DVector<f64>> = Vec::new();
    let mut queue = vec![start];
    while let Some(v) = queue.pop() {
        let mut w = v.clone();
        for b in &basis {
            w -= b * b.dot(&w);
        }
        if w.norm() <= tol * v.norm().max(1e-300) {
            continue;
        }
        let w = w.normalize();
        for g in gens {
            queue.push(g * &w);
        }
        basis.push(w);
        if basis.len() == dim {
            break;
        }
    }
    basis.len()
}

/// Rank with an absolute threshold, for products of unit-norm factors.
fn absolute_rank(m: &DMatrix<f64>, tol: f64) -> usize {
    if m.ncols() == 0 {
        return 0;
    }
    singular_values(m).iter().filter(|&&x| x > tol).count()
}

fn summary(c: &ModuleClassification, modules: &[IrreducibleModuleView]) -> Vec<(usize, usize, usize, Vec<usize>, usize, usize)> {
    let mut rows: Vec<_> = c
        .iso_classes
        .iter()
        .map(|k| {
            let m = &modules[k.members[0]];
            (
                m.endpoint(),
                m.diameter(),
                m.dim(),
                m.profile.shell_dims.clone(),
                k.members.len(),
                c.quasi_classes[k.quasi_class].multiplicity,
            )
        })
        .collect();
    rows.sort();
    rows
}

fn module_checks(an: &Analysis, s: &mut Suite) {
    let ops = &an.operators;
    let tol = &an.options.tolerances;
    let modules = &an.modules.modules;
    let n = ops.size();

    let total: usize = modules.iter().map(IrreducibleModuleView::dim).sum();
    let mut all = DMatrix::<f64>::zeros(n, total);
    let mut at = 0;
    for m in modules {
        all.columns_mut(at, m.dim()).copy_from(&m.basis);
        at += m.dim();
    }
    let gram = all.transpose() * &all;
    let ortho = all.ncols() == n && (&gram - DMatrix::<f64>::identity(n, n)).amax() <= 1e-10;
    s.check("modules.orthogonal-direct-sum", ortho, format!("{} columns", all.ncols()));

    let mut worst = 0.0f64;
    for m in modules {
        let proj = m.projector();
        for g in ops.t_generators() {
            let norm = spectral_norm(g).max(1.0);
            let img = g * &m.basis;
            let res = &img - &proj * &img;
            for c in res.column_iter() {
                worst = worst.max(c.norm() / norm);
            }
        }
    }
    s.check("modules.invariance-residual", worst <= tol.residual, format!("{worst:e}"));

    let profiles_ok = modules.iter().all(|m| {
        m.profile.shell_dims.iter().all(|&d| d >= 1)
            && m.profile.shell_dims.iter().sum::<usize>() == m.dim()
            && m.profile.thin == m.profile.shell_dims.iter().all(|&d| d == 1)
    });
    s.check("modules.shell-profile", profiles_ok, "");

    let q_irreducible = modules.iter().enumerate().all(|(k, m)| {
        let mut gens: Vec<DMatrix<f64>> = [&ops.l, &ops.f, &ops.r].iter().map(|g| m.restrict(g)).collect();
        gens.push(DMatrix::identity(m.dim(), m.dim()));
        cyclic_span_dim(&gens, m.dim(), 1000 + k as u64, 1e-8) == m.dim()
    });
    s.check("modules.Q-irreducible", q_irreducible, "");

    let q_pieces: Vec<(i64, Vec<DMatrix<f64>>)> = an
        .algebras
        .q_grading
        .iter()
        .map(|(&sh, p)| {
            let mats = p.basis_matrices().iter().map(|b| b.to_f64().normalize()).collect();
            (sh, mats)
        })
        .collect();
    let mut transitive = true;
    let mut diameter_from_q = true;
    for m in modules {
        let r = m.endpoint() as i64;
        let d = m.diameter() as i64;
        let shell_dim = |i: i64| -> usize {
            if i < r || i > r + d {
                0
            } else {
                m.profile.shell_dims[(i - r) as usize]
            }
        };
        for j in r..=r + d {
            let block = &ops.e[j as usize] * &m.basis;
            for (shift, mats) in &q_pieces {
                let images: Vec<DMatrix<f64>> = mats.iter().map(|q| q * &block).collect();
                let cols: usize = images.iter().map(DMatrix::ncols).sum();
                let mut stacked = DMatrix::<f64>::zeros(n, cols);
                let mut at = 0;
                for img in &images {
                    stacked.columns_mut(at, img.ncols()).copy_from(img);
                    at += img.ncols();
                }
                if absolute_rank(&stacked, tol.rank) != shell_dim(j + shift) {
                    transitive = false;
                }
            }
        }
        let max_nonzero = q_pieces
            .iter()
            .filter(|(sh, mats)| {
                *sh >= 0 && mats.iter().any(|q| (q * &m.basis).amax() > tol.rank)
            })
            .map(|(sh, _)| *sh)
            .max()
            .unwrap_or(0);
        if max_nonzero != d {
            diameter_from_q = false;
        }
    }
    s.check("modules.Q_i E_j*W = E_(i+j)*W", transitive, "");
    s.check("modules.diameter = max{i : Q_i W != 0}", diameter_from_q, "");

    let cls = &an.classification;
    let iso_ok = cls.iso_classes.iter().all(|c| {
        c.members.iter().all(|&i| {
            let m = &modules[i];
            m.endpoint() == c.endpoint && m.diameter() == c.diameter && m.profile.shell_dims == c.shell_dims
        })
    });
    s.check("modules.iso-classes-share-profile", iso_ok, "");
    let quasi_ok = cls.quasi_classes.iter().all(|q| {
        q.iso_classes.iter().all(|&k| cls.iso_classes[k].diameter == q.diameter)
    });
    s.check("modules.quasi-classes-share-diameter", quasi_ok, "");
    for id in &cls.identities {
        s.check(format!("modules.{}", id.name), id.passed, format!("{} vs {}", id.lhs, id.rhs));
    }

    let mut disagreements = 0;
    for (i, u) in modules.iter().enumerate() {
        for w in &modules[i + 1..] {
            if let (Some(pu), Some(pw)) = (&u.params, &w.params) {
                let by_params = u.diameter() == w.diameter() && pu.approx_eq(pw, tol.parameter);
                let by_map = intertwiner_exists(u, w, ops, IntertwinerMode::Quasi, tol);
                if by_params != by_map {
                    disagreements += 1;
                }
            }
        }
    }
    s.check("modules.thin-parameters-match-quasi-iso", disagreements == 0, format!("{disagreements} disagreements"));

    let other_seed = an.options.seed.wrapping_add(7919);
    let stable = decompose_standard_module(ops, &an.commutant, an.dim_t(), other_seed, tol)
        .and_then(|d| {
            classify_modules(&d.modules, ops, an.dim_t(), an.dim_q(), tol)
                .map(|c| summary(&c, &d.modules) == summary(cls, modules) && c.q_equals_t == cls.q_equals_t)
        })
        .unwrap_or(false);
    s.check("modules.seed-independent-classification", stable, format!("reseeded with {other_seed}"));

    let verdict = cls.q_equals_t == (an.dim_t() == an.dim_q()) && cls.q_equals_t == cls.witness.is_none();
    s.check("report.verdict-consistent", verdict, "");

    // Vertex transitivity makes every base vertex equivalent for the two
    // generated families.
    if matches!(an.source, GraphSource::Hamming { .. } | GraphSource::DualPolar { .. }) {
        let shells = |x| distance_partition(&an.graph, x).map(|p| p.shell_sizes()).ok();
        let same = [0, an.graph.vertex_count() / 2, an.graph.vertex_count() - 1]
            .iter()
            .all(|&x| shells(x) == shells(an.partition.base));
        s.check("graph.shell-sizes-base-independent", same, "");
    }
}
