use std::collections::BTreeSet;

use serde::Serialize;

use super::{intertwiner_exists, IntertwinerMode, IrreducibleModuleView, NumericOperators, Tolerances};
use crate::error::{Error, Result};

/// Groups module indices into `T`-isomorphism classes.
///
/// Only modules with the same endpoint, diameter and shell dimensions are
/// compared; each is tested against the first member of every candidate
/// class.
pub(crate) fn group_isomorphic(
    modules: &[IrreducibleModuleView],
    ops: &NumericOperators,
    tol: &Tolerances,
) -> Vec<Vec<usize>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, m) in modules.iter().enumerate() {
        let home = classes.iter_mut().find(|c| {
            let rep = &modules[c[0]];
            rep.sort_key() == m.sort_key()
                && intertwiner_exists(rep, m, ops, IntertwinerMode::Iso, tol)
        });
        match home {
            Some(c) => c.push(i),
            None => classes.push(vec![i]),
        }
    }
    classes
}

/// A `T`-isomorphism class `λ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IsoClass {
    pub label: String,
    /// Indices into the module list.
    pub members: Vec<usize>,
    pub endpoint: usize,
    pub diameter: usize,
    pub dim: usize,
    pub shell_dims: Vec<usize>,
    pub thin: bool,
    /// Index of the enclosing quasi-isomorphism class.
    pub quasi_class: usize,
}

/// A quasi-isomorphism class, i.e. a `Q`-isomorphism type `μ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuasiClass {
    pub label: String,
    /// Indices into the iso-class list.
    pub iso_classes: Vec<usize>,
    pub diameter: usize,
    pub dim: usize,
    /// Distinct endpoints of the member classes.
    pub endpoints: Vec<usize>,
    /// `m_μ`: number of `T`-isomorphism classes merged into this class.
    pub multiplicity: usize,
}

/// Two quasi-isomorphic iso classes with different endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Iso-class indices.
    pub u: usize,
    pub w: usize,
    pub u_label: String,
    pub w_label: String,
    pub endpoints: (usize, usize),
    pub diameter: usize,
}

/// One exact dimension identity and whether it held.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub lhs: usize,
    pub rhs: usize,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModuleClassification {
    pub iso_classes: Vec<IsoClass>,
    pub quasi_classes: Vec<QuasiClass>,
    /// Iso-class index of each module.
    pub module_iso: Vec<usize>,
    /// Quasi-class index of each module.
    pub module_quasi: Vec<usize>,
    pub q_equals_t: bool,
    /// Preferred witness: largest diameter, then smallest endpoints.
    pub witness: Option<Witness>,
    pub all_witnesses: Vec<Witness>,
    pub identities: Vec<IdentityCheck>,
}

/// Sorts modules into isomorphism and quasi-isomorphism classes, derives
/// `m_μ`, decides whether `Q = T`, and cross-checks every dimension
/// identity against the exact `dim T` and `dim Q`.
pub fn classify_modules(
    modules: &[IrreducibleModuleView],
    ops: &NumericOperators,
    dim_t: usize,
    dim_q: usize,
    tol: &Tolerances,
) -> Result<ModuleClassification> {
    let mut raw_iso = group_isomorphic(modules, ops, tol);
    raw_iso.sort_by(|a, b| {
        let (ma, mb) = (&modules[a[0]], &modules[b[0]]);
        ma.sort_key().cmp(&mb.sort_key()).then_with(|| a[0].cmp(&b[0]))
    });

    // Union iso classes that are quasi-isomorphic.
    let mut quasi_of: Vec<usize> = (0..raw_iso.len()).collect();
    let mut quasi_groups: Vec<Vec<usize>> = Vec::new();
    for (k, class) in raw_iso.iter().enumerate() {
        let m = &modules[class[0]];
        let home = quasi_groups.iter_mut().find(|g| {
            let rep = &modules[raw_iso[g[0]][0]];
            rep.diameter() == m.diameter()
                && rep.profile.shell_dims == m.profile.shell_dims
                && intertwiner_exists(rep, m, ops, IntertwinerMode::Quasi, tol)
        });
        match home {
            Some(g) => g.push(k),
            None => quasi_groups.push(vec![k]),
        }
    }
    for (q, g) in quasi_groups.iter().enumerate() {
        for &k in g {
            quasi_of[k] = q;
        }
    }

    let iso_classes: Vec<IsoClass> = raw_iso
        .iter()
        .enumerate()
        .map(|(k, members)| {
            let m = &modules[members[0]];
            IsoClass {
                label: format!("T{k}"),
                members: members.clone(),
                endpoint: m.endpoint(),
                diameter: m.diameter(),
                dim: m.dim(),
                shell_dims: m.profile.shell_dims.clone(),
                thin: m.is_thin(),
                quasi_class: quasi_of[k],
            }
        })
        .collect();
    let quasi_classes: Vec<QuasiClass> = quasi_groups
        .iter()
        .enumerate()
        .map(|(q, members)| {
            let first = &iso_classes[members[0]];
            let endpoints: BTreeSet<usize> = members.iter().map(|&k| iso_classes[k].endpoint).collect();
            QuasiClass {
                label: format!("Q{q}"),
                iso_classes: members.clone(),
                diameter: first.diameter,
                dim: first.dim,
                endpoints: endpoints.into_iter().collect(),
                multiplicity: members.len(),
            }
        })
        .collect();

    let mut module_iso = vec![0; modules.len()];
    let mut module_quasi = vec![0; modules.len()];
    for (k, class) in iso_classes.iter().enumerate() {
        for &i in &class.members {
            module_iso[i] = k;
            module_quasi[i] = class.quasi_class;
        }
    }

    let mut all_witnesses = Vec::new();
    for class in &quasi_classes {
        for (x, &a) in class.iso_classes.iter().enumerate() {
            for &b in &class.iso_classes[x + 1..] {
                let (ia, ib) = (&iso_classes[a], &iso_classes[b]);
                if ia.endpoint != ib.endpoint {
                    let (u, w) = if ia.endpoint < ib.endpoint { (a, b) } else { (b, a) };
                    all_witnesses.push(Witness {
                        u,
                        w,
                        u_label: iso_classes[u].label.clone(),
                        w_label: iso_classes[w].label.clone(),
                        endpoints: (iso_classes[u].endpoint, iso_classes[w].endpoint),
                        diameter: class.diameter,
                    });
                }
            }
        }
    }
    let witness = all_witnesses
        .iter()
        .min_by_key(|w| (std::cmp::Reverse(w.diameter), w.endpoints, w.u, w.w))
        .cloned();

    let sum_t: usize = iso_classes.iter().map(|c| c.dim * c.dim).sum();
    let sum_q: usize = quasi_classes.iter().map(|c| c.dim * c.dim).sum();
    let sum_mq: usize = quasi_classes.iter().map(|c| c.multiplicity * c.dim * c.dim).sum();
    let check = |name: &str, lhs: usize, rhs: usize| IdentityCheck {
        name: name.into(),
        lhs,
        rhs,
        passed: lhs == rhs,
    };
    let verdict_dims = dim_t == dim_q;
    let verdict_modules = witness.is_none();
    let identities = vec![
        check("sum over T-classes of d^2 = dim T", sum_t, dim_t),
        check("sum over Q-classes of d^2 = dim Q", sum_q, dim_q),
        check("sum over Q-classes of m d^2 = dim T", sum_mq, dim_t),
        check(
            "(dim T = dim Q) iff no quasi-isomorphic pair with different endpoints",
            usize::from(verdict_dims),
            usize::from(verdict_modules),
        ),
    ];
    if let Some(bad) = identities.iter().find(|c| !c.passed) {
        return Err(Error::ClassificationInconsistency(format!(
            "{}: {} != {}",
            bad.name, bad.lhs, bad.rhs
        )));
    }
    for class in &quasi_classes {
        let diams: BTreeSet<usize> = class.iso_classes.iter().map(|&k| iso_classes[k].diameter).collect();
        if diams.len() != 1 {
            return Err(Error::ClassificationInconsistency(format!(
                "quasi class {} mixes diameters {diams:?}",
                class.label
            )));
        }
    }

    Ok(ModuleClassification {
        iso_classes,
        quasi_classes,
        module_iso,
        module_quasi,
        q_equals_t: verdict_dims,
        witness,
        all_witnesses,
        identities,
    })
}
