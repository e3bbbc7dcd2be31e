//! Acceptance suite. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use subconst::algebra::product_span;
use subconst::analysis::{analyze, Analysis, AnalysisOptions, GraphSource};
use subconst::graph::{connected_graphs, gen_dual_polar, gen_hamming, DEFAULT_SIZE_CAP};
use subconst::linalg::{span_of, subspace_intersection};
use subconst::modules::{
    classify_modules, decompose_standard_module, intertwiner_exists, IntertwinerMode,
    ModuleClassification,
};
use subconst::{Graph, Rational, RationalMatrix};

const HAMMING: [(usize, usize); 5] = [(2, 2), (2, 3), (3, 2), (2, 4), (3, 3)];

struct Instance {
    name: String,
    hamming: Option<(usize, usize)>,
    an: Analysis,
}

fn run(graph: &Graph, source: GraphSource, base: usize, seed: u64) -> Analysis {
    let options = AnalysisOptions {
        seed,
        ..AnalysisOptions::default()
    };
    analyze(graph, &source, base, &options)
        .unwrap_or_else(|e| panic!("analysis of {source} at base {base} failed: {e}"))
}

fn int(i: i64) -> Rational {
    Rational::from_integer(i.into())
}

type Outcome = Result<String, String>;

fn criterion_1(instances: &mut Vec<Instance>) -> Outcome {
    let start = Instant::now();
    let mut notes = Vec::new();
    let mut bad = Vec::new();
    for (d, n) in HAMMING {
        let g = gen_hamming(d, n, DEFAULT_SIZE_CAP).map_err(|e| e.to_string())?;
        let an = run(&g, GraphSource::Hamming { d, n }, 0, 1);
        notes.push(format!("H({d},{n}) {}/{}", an.dim_t(), an.dim_q()));
        if an.dim_t() != an.dim_q() || !an.classification.all_witnesses.is_empty() {
            bad.push(format!("H({d},{n})"));
        }
        instances.push(Instance {
            name: format!("H({d},{n})"),
            hamming: Some((d, n)),
            an,
        });
    }
    let elapsed = start.elapsed();
    let summary = format!("{} in {:.1}s", notes.join(", "), elapsed.as_secs_f64());
    if !bad.is_empty() {
        return Err(format!("dim Q != dim T or witness found for {bad:?}; {summary}"));
    }
    if elapsed >= Duration::from_secs(30) {
        return Err(format!("over the 30s budget; {summary}"));
    }
    Ok(summary)
}

fn criterion_2(instances: &mut Vec<Instance>) -> Outcome {
    let start = Instant::now();
    let g = gen_dual_polar(3, 2, DEFAULT_SIZE_CAP).map_err(|e| e.to_string())?;
    let an = run(&g, GraphSource::DualPolar { d: 3, q: 2 }, 0, 1);
    let elapsed = start.elapsed();
    let (dt, dq) = (an.dim_t(), an.dim_q());
    let cls = &an.classification;
    let check = || -> Result<String, String> {
        if dq >= dt {
            return Err(format!("dim Q = {dq} is not below dim T = {dt}"));
        }
        let w = cls.witness.as_ref().ok_or("no witness emitted")?;
        let ends: BTreeSet<usize> = [w.endpoints.0, w.endpoints.1].into();
        if ends != BTreeSet::from([1, 2]) {
            return Err(format!("witness endpoints {:?}", w.endpoints));
        }
        // Closed form q^(i+1) (q^i - 1) (q^(D-i-1) - 1) at q = 2, D = 3, i = 1.
        let (q, big_d, i) = (2i64, 3u32, 1u32);
        let x1 = (q.pow(i + 1) * (q.pow(i) - 1) * (q.pow(big_d - i - 1) - 1)) as f64;
        for k in [w.u, w.w] {
            let class = &cls.iso_classes[k];
            if !class.thin || class.diameter != 1 {
                return Err(format!("{} thin={} d={}", class.label, class.thin, class.diameter));
            }
            for &m in &class.members {
                let p = an.modules.modules[m].params.as_ref().ok_or("missing parameters")?;
                if p.a.iter().any(|a| a.abs() >= 1e-8) {
                    return Err(format!("a = {:?} in {}", p.a, class.label));
                }
                if (p.x[0] - x1).abs() >= 1e-8 {
                    return Err(format!("x_1 = {} in {}, expected {x1}", p.x[0], class.label));
                }
            }
        }
        Ok(format!(
            "dim T = {dt}, dim Q = {dq}, witness {} ~ {} endpoints {:?}, x_1 = {x1}, {:.2}s",
            w.u_label,
            w.w_label,
            w.endpoints,
            elapsed.as_secs_f64()
        ))
    };
    let res = check();
    instances.push(Instance {
        name: "D_3(2)".into(),
        hamming: None,
        an,
    });
    let msg = res?;
    if elapsed >= Duration::from_secs(120) {
        return Err(format!("over the 2 min budget; {msg}"));
    }
    Ok(msg)
}

fn small_graph_instances(instances: &mut Vec<Instance>) {
    for n in 1..=6 {
        for (k, g) in connected_graphs(n).into_iter().enumerate() {
            for base in 0..n {
                let an = run(&g, GraphSource::Inline(format!("n{n}#{k}")), base, 1);
                instances.push(Instance {
                    name: format!("graph n={n} #{k} base {base}"),
                    hamming: None,
                    an,
                });
            }
        }
    }
}

fn criterion_3(instances: &[Instance]) -> Outcome {
    let bad: Vec<&str> = instances
        .iter()
        .filter(|i| {
            let equal = i.an.dim_t() == i.an.dim_q();
            equal != i.an.classification.all_witnesses.is_empty()
        })
        .map(|i| i.name.as_str())
        .collect();
    if bad.is_empty() {
        let unequal = instances.iter().filter(|i| i.an.dim_t() != i.an.dim_q()).count();
        Ok(format!("{} instances, {unequal} with Q != T, 0 counterexamples", instances.len()))
    } else {
        Err(format!("{} counterexamples, first {}", bad.len(), bad[0]))
    }
}

fn identity_failures(an: &Analysis) -> Vec<&'static str> {
    let dec = &an.decomposition;
    let n = dec.size();
    let e = &dec.e;
    let mut failed = Vec::new();
    let mut expect = |ok: bool, name: &'static str| {
        if !ok {
            failed.push(name);
        }
    };
    expect(dec.a == &(&dec.l + &dec.f) + &dec.r, "A = L+F+R");
    expect(dec.l.transpose() == dec.r, "L^t = R");
    expect(dec.f.transpose() == dec.f, "F^t = F");
    let mut sum = RationalMatrix::zeros(n, n);
    for ei in e {
        sum = &sum + ei;
    }
    expect(sum == RationalMatrix::identity(n), "sum E_i* = I");
    let zero = RationalMatrix::zeros(n, n);
    for (i, ei) in e.iter().enumerate() {
        for (j, ej) in e.iter().enumerate() {
            let p = ei * ej;
            expect(if i == j { &p == ei } else { p == zero }, "E_i*E_j* = delta E_i*");
            if i.abs_diff(j) > 1 {
                expect(&(ei * &dec.a) * ej == zero, "E_i*AE_j* = 0");
            }
        }
    }
    let t = an.algebras.t.space();
    let q = an.algebras.q.basis_matrices();
    expect(product_span(&q, e).is_ok_and(|s| &s == t), "QM* = T");
    expect(product_span(e, &q).is_ok_and(|s| &s == t), "M*Q = T");
    let t_sum: usize = an.algebras.t_grading.values().map(|s| s.dim()).sum();
    let q_sum: usize = an.algebras.q_grading.values().map(|s| s.dim()).sum();
    expect(t_sum == an.dim_t(), "sum dim T_n = dim T");
    expect(q_sum == an.dim_q(), "sum dim Q_n = dim Q");
    for (&shift, qn) in &an.algebras.q_grading {
        let by_cap = subspace_intersection(an.algebras.q.space(), &an.algebras.t_grading[&shift]);
        let projected: Vec<RationalMatrix> = q
            .iter()
            .map(|x| {
                let mut acc = RationalMatrix::zeros(n, n);
                for (i, ei) in e.iter().enumerate() {
                    let target = i as i64 + shift;
                    if (0..e.len() as i64).contains(&target) {
                        acc = &acc + &(&(&e[target as usize] * x) * ei);
                    }
                }
                acc
            })
            .collect();
        let by_projection = span_of(&projected);
        let ok = matches!((by_cap, by_projection), (Ok(a), Ok(b)) if &a == qn && &b == qn);
        expect(ok, "Q_n by intersection = Q_n by projection");
    }
    failed
}

fn criterion_4(instances: &[Instance]) -> Outcome {
    for i in instances {
        let failed = identity_failures(&i.an);
        if !failed.is_empty() {
            return Err(format!("{}: {failed:?}", i.name));
        }
    }
    Ok(format!("{} instances", instances.len()))
}

fn certificate(cls: &ModuleClassification, dim_t: usize, dim_q: usize) -> Result<(), String> {
    let sum_t: usize = cls.iso_classes.iter().map(|c| c.dim * c.dim).sum();
    let sum_q: usize = cls.quasi_classes.iter().map(|c| c.dim * c.dim).sum();
    let sum_m: usize = cls
        .quasi_classes
        .iter()
        .map(|c| c.multiplicity * c.dim * c.dim)
        .sum();
    if sum_t != dim_t || sum_q != dim_q || sum_m != dim_t {
        return Err(format!(
            "sums {sum_t}/{sum_q}/{sum_m} against dim T = {dim_t}, dim Q = {dim_q}"
        ));
    }
    Ok(())
}

fn criterion_5(instances: &[Instance]) -> Outcome {
    const SEEDS: [u64; 2] = [1, 2];
    for i in instances {
        let an = &i.an;
        let tol = &an.options.tolerances;
        for seed in SEEDS {
            let dec = decompose_standard_module(&an.operators, &an.commutant, an.dim_t(), seed, tol)
                .map_err(|e| format!("{} seed {seed}: {e}", i.name))?;
            let cls = classify_modules(&dec.modules, &an.operators, an.dim_t(), an.dim_q(), tol)
                .map_err(|e| format!("{} seed {seed}: {e}", i.name))?;
            certificate(&cls, an.dim_t(), an.dim_q()).map_err(|e| format!("{} seed {seed}: {e}", i.name))?;
        }
    }
    Ok(format!("{} instances x seeds {SEEDS:?}", instances.len()))
}

fn criterion_6(instances: &[Instance]) -> Outcome {
    let mut checked = 0;
    for i in instances {
        let Some((d, n)) = i.hamming else { continue };
        let dec = &i.an.decomposition;
        let dist = &i.an.partition.dist;
        let theta = |s: usize| ((n - 1) * (d - s)) as i64 - s as i64;
        let values: Vec<Rational> = dist.iter().map(|&s| int(theta(s))).collect();
        let a_star = RationalMatrix::diagonal(&values);
        let rhs = &(&dec.f + &(&dec.l * &dec.r)) - &(&dec.r * &dec.l);
        if a_star != rhs {
            return Err(format!("{}: A* != F + LR - RL", i.name));
        }
        checked += 1;
    }
    Ok(format!("{checked} Hamming graphs"))
}

fn criterion_7() -> Outcome {
    let mut count = 0;
    for n in 1..=5 {
        for (k, g) in connected_graphs(n).into_iter().enumerate() {
            for base in 0..n {
                let an = run(&g, GraphSource::Inline(format!("n{n}#{k}")), base, 1);
                let (t_gens, q_gens) = common::oracle_generators(&g, base);
                let t = common::word_closure_dim(&t_gens, n, true);
                let q = common::word_closure_dim(&q_gens, n, true);
                let q0 = common::word_closure_dim(&q_gens, n, false);
                let ours = (an.dim_t(), an.dim_q(), an.q_non_unital.dim());
                if ours != (t, q, q0) {
                    return Err(format!("n={n} #{k} base {base}: closure {ours:?}, words {:?}", (t, q, q0)));
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} rooted graphs, T, Q and non-unital Q"))
}

fn criterion_8(instances: &[Instance]) -> Outcome {
    let mut pairs = 0;
    for i in instances {
        let an = &i.an;
        let tol = &an.options.tolerances;
        let modules = &an.modules.modules;
        for (k, u) in modules.iter().enumerate() {
            for w in &modules[k + 1..] {
                let (Some(pu), Some(pw)) = (&u.params, &w.params) else { continue };
                let by_params = pu.approx_eq(pw, 1e-8);
                let by_map = intertwiner_exists(u, w, &an.operators, IntertwinerMode::Quasi, tol);
                if by_params != by_map {
                    return Err(format!(
                        "{}: parameters say {by_params}, intertwiner says {by_map} for {pu:?} vs {pw:?}",
                        i.name
                    ));
                }
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} thin pairs, 0 disagreements"))
}

fn criterion_9() -> Outcome {
    let k2 = Graph::from_edges(2, &[(0, 1)]).map_err(|e| e.to_string())?;
    let an = run(&k2, GraphSource::Inline("A_".into()), 0, 1);
    if (an.dim_t(), an.dim_q()) != (4, 4) {
        return Err(format!("K_2 dims {}/{}", an.dim_t(), an.dim_q()));
    }
    let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).map_err(|e| e.to_string())?;
    for base in 0..4 {
        let an = run(&c4, GraphSource::Inline("Cl".into()), base, 1);
        if (an.dim_t(), an.dim_q()) != (10, 10) {
            return Err(format!("C_4 base {base} dims {}/{}", an.dim_t(), an.dim_q()));
        }
        let m = &an.modules.modules;
        let close = |v: &[f64], want: &[f64]| {
            v.len() == want.len() && v.iter().zip(want).all(|(a, b)| (a - b).abs() < 1e-8)
        };
        let ok = m.len() == 2
            && (m[0].endpoint(), m[0].diameter(), m[0].is_thin()) == (0, 2, true)
            && m[0].params.as_ref().is_some_and(|p| close(&p.a, &[0.0; 3]) && close(&p.x, &[2.0, 2.0]))
            && (m[1].endpoint(), m[1].diameter(), m[1].is_thin()) == (1, 0, true);
        if !ok {
            return Err(format!("C_4 base {base} module profile differs"));
        }
    }
    Ok("K_2 4/4; C_4 10/10 with modules (0,2,a=0,x=(2,2)) and (1,0) at every base".into())
}

fn main() {
    let mut results: Vec<(usize, &str, Outcome)> = Vec::new();
    let mut instances = Vec::new();
    results.push((1, "Hamming graphs have Q = T", criterion_1(&mut instances)));
    results.push((2, "D_3(2) has Q != T with a thin witness", criterion_2(&mut instances)));
    small_graph_instances(&mut instances);
    results.push((3, "dim T = dim Q iff no cross-endpoint quasi-iso pair", criterion_3(&instances)));
    results.push((4, "exact algebra identities", criterion_4(&instances)));
    results.push((5, "semisimple dimension certificates", criterion_5(&instances)));
    results.push((6, "Hamming dual adjacency", criterion_6(&instances)));
    results.push((7, "closure matches word enumeration", criterion_7()));
    results.push((8, "thin parameters match quasi-isomorphism", criterion_8(&instances)));
    results.push((9, "known small answers", criterion_9()));

    let mut failed = 0;
    for (k, name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("criterion {k} ({name}): PASS - {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {k} ({name}): FAIL - {detail}");
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
