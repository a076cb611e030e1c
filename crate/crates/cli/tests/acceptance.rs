//! Acceptance suite. Each criterion prints one PASS/FAIL line with its
//! runtime; the test fails if any criterion fails. Tolerances are exact
//! integer equality and the runtime limits below.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::HashSet;
use std::process::Command;
use std::time::{Duration, Instant};

use nzflow::flow::{bipartite_regular_three_flow, eulerian_two_flow, solve_nz_kflow, verify_flow};
use nzflow::pipeline::{check_hypotheses, solve_three_flow, PipelineError, ScopeViolation, Step};
use nzflow::quotient::{certify_multicover, lift_flow};
use nzflow::{families, Flow, Graph, Orientation, PermGroup, Permutation, SolverConfig, VertexPartition};
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn cyclic_unit_flow(g: &Graph) -> Flow {
    let n = g.vertex_count();
    let arcs = g
        .edges()
        .iter()
        .map(|&(u, v)| if v == (u + 1) % n { (u, v) } else { (v, u) })
        .collect();
    Flow::new(2, Orientation::new(g, arcs).unwrap(), vec![1; g.edge_count()])
}

/// The runtime limit applies to each cycle: building the flow, accepting
/// it and rejecting every single-edge perturbation of it.
fn criterion_1() -> Outcome {
    let limit = Duration::from_secs(1);
    let sizes: Vec<usize> = (3..=64).chain([100, 1000, 10_000]).collect();
    let mut perturbations = 0usize;
    let mut slowest = (Duration::ZERO, 0);
    for &n in &sizes {
        let start = Instant::now();
        let g = families::cycle(n).graph;
        let f = cyclic_unit_flow(&g);
        check(verify_flow(&g, &f).is_nowhere_zero(), format!("C{n} all-ones rejected"))?;
        let mut damaged = f.clone();
        // zeroing and the only other in-range value; out-of-range values
        // on every edge of the smaller cycles
        let changes: &[i32] = if n <= 1000 { &[0, -1, 2, -7] } else { &[0, -1] };
        for e in 0..n {
            for &bad in changes {
                damaged.values[e] = bad;
                check(!verify_flow(&g, &damaged).is_nowhere_zero(), format!("C{n} edge {e} value {bad} accepted"))?;
                perturbations += 1;
            }
            damaged.values[e] = 1;
        }
        let elapsed = start.elapsed();
        check(elapsed < limit, format!("C{n} took {elapsed:.2?} (limit {limit:?})"))?;
        slowest = slowest.max((elapsed, n));
    }
    Ok(format!(
        "{} cycles, {perturbations} perturbations rejected, slowest C{} in {:.2?} < {limit:?}",
        sizes.len(),
        slowest.1,
        slowest.0
    ))
}

fn even_regular_graphs() -> Vec<Graph> {
    let mut r = common::rng(2);
    let mut out = Vec::new();
    // circulants and unions of Hamiltonian cycles, alternating
    while out.len() < 50 {
        let d = 2 * r.gen_range(1..=4);
        let n = r.gen_range(d + 1..=200);
        if out.len() % 2 == 0 {
            out.push(common::even_regular_circulant(&mut r, n, d));
        } else {
            let mut edges = Vec::new();
            for _ in 0..d / 2 {
                let mut order: Vec<usize> = (0..n).collect();
                rand::seq::SliceRandom::shuffle(&mut order[..], &mut r);
                for i in 0..n {
                    edges.push((order[i], order[(i + 1) % n]));
                }
            }
            out.push(Graph::new(n, edges).unwrap());
        }
    }
    out
}

fn criterion_2() -> Outcome {
    let graphs = even_regular_graphs();
    let mut valencies = HashSet::new();
    for (i, g) in graphs.iter().enumerate() {
        let d = g.valency().ok_or(format!("graph {i} is not regular"))?;
        check(d % 2 == 0 && (2..=8).contains(&d) && g.vertex_count() <= 200, format!("graph {i} out of range"))?;
        check(g.is_connected(), format!("graph {i} disconnected"))?;
        valencies.insert(d);
        let f = eulerian_two_flow(g).map_err(|e| format!("graph {i}: {e}"))?;
        check(f.values.iter().all(|&v| v == 1), format!("graph {i}: value other than 1"))?;
        check(verify_flow(g, &f).is_nowhere_zero(), format!("graph {i}: {}", verify_flow(g, &f)))?;
    }
    check(valencies.len() == 4, "not every valency 2,4,6,8 generated")?;
    Ok(format!("{} graphs, valencies {:?}", graphs.len(), { let mut v: Vec<_> = valencies.into_iter().collect(); v.sort(); v }))
}

#[allow(clippy::needless_range_loop)]
fn criterion_3() -> Outcome {
    let mut r = common::rng(3);
    let mut quotients: Vec<Graph> = vec![
        families::cycle(3).graph,
        families::cycle(4).graph,
        families::cycle(7).graph,
        families::complete(5).graph,
        families::complete_bipartite(3, 3).graph,
        families::complete_bipartite(2, 4).graph,
        families::hypercube(3).graph,
        families::octahedron().graph,
        families::complete(4).graph,
        families::petersen().graph,
    ];
    for _ in 0..10 {
        let n = r.gen_range(4..=9);
        let extra = r.gen_range(1..=6);
        quotients.push(common::random_connected(&mut r, n, extra));
    }
    let config = SolverConfig::default();
    let mut pairs = 0;
    let mut by_t = [0usize; 4];
    let mut by_k = [0usize; 4];
    let mut skipped = 0;
    for round in 0..6 {
        for (qi, q) in quotients.iter().enumerate() {
            let k = if round % 2 == 0 { 2 } else { 3 };
            let Some(qflow) = solve_nz_kflow(q, k, &config).map_err(|e| e.to_string())? else {
                skipped += 1;
                continue;
            };
            for t in 1..=3 {
                let block = r.gen_range(t..=t + 2);
                let (g, blocks) = common::random_multicover(&mut r, q, block, t);
                let p = VertexPartition::new(g.vertex_count(), blocks).unwrap();
                let cert = certify_multicover(&g, &p).map_err(|e| format!("quotient {qi}: {e}"))?;
                check(cert.t == t, format!("quotient {qi}: certified t={} expected {t}", cert.t))?;
                // the certificate's quotient is relabeled canonically; solve on it
                let flow = if cert.quotient == *q {
                    qflow.clone()
                } else {
                    solve_nz_kflow(&cert.quotient, k, &config).map_err(|e| e.to_string())?.ok_or("quotient lost its flow")?
                };
                let lifted = lift_flow(&g, &cert, &flow).map_err(|e| e.to_string())?;
                let report = verify_flow(&g, &lifted);
                check(report.is_nowhere_zero() && lifted.k == k, format!("quotient {qi} t={t} k={k}: {report}"))?;
                pairs += 1;
                by_t[t] += 1;
                by_k[k as usize] += 1;
            }
        }
    }
    check(pairs >= 100, format!("only {pairs} pairs"))?;
    Ok(format!(
        "{pairs} lifts verified (t=1/2/3: {}/{}/{}, k=2/3: {}/{}), {skipped} quotients without a flow skipped",
        by_t[1], by_t[2], by_t[3], by_k[2], by_k[3]
    ))
}

fn criterion_4() -> Outcome {
    let corpus = common::small_regular_bipartite();
    for (name, g) in &corpus {
        let d = g.valency().ok_or(format!("{name} not regular"))?;
        check((2..=5).contains(&d) && g.vertex_count() <= 12 && g.is_connected(), format!("{name} outside the class"))?;
        let f = bipartite_regular_three_flow(g).map_err(|e| format!("{name}: {e}"))?;
        check(verify_flow(g, &f).is_nowhere_zero() && f.k == 3, format!("{name}: {}", verify_flow(g, &f)))?;
        let searched = solve_nz_kflow(g, 3, &SolverConfig::default()).map_err(|e| e.to_string())?;
        check(searched.is_some(), format!("{name}: solver disagrees"))?;
    }
    Ok(format!("{} bipartite graphs", corpus.len()))
}

fn criterion_5() -> Outcome {
    let anchors = [
        ("K4", families::complete(4).graph, 3, false),
        ("Petersen", families::petersen().graph, 4, false),
        ("Petersen", families::petersen().graph, 5, true),
        ("K3,3", families::complete_bipartite(3, 3).graph, 3, true),
    ];
    let mut oracle_runs = 0;
    for (name, g, k, expected) in &anchors {
        let found = solve_nz_kflow(g, *k, &SolverConfig::default()).map_err(|e| e.to_string())?;
        check(found.is_some() == *expected, format!("({name}, {k}) solver verdict wrong"))?;
        if let Some(f) = &found {
            check(verify_flow(g, f).is_nowhere_zero(), format!("({name}, {k}) flow fails verification"))?;
        }
        if g.cycle_rank() <= 10 {
            check(common::naive_flow_exists(g, *k) == *expected, format!("({name}, {k}) oracle disagrees"))?;
            oracle_runs += 1;
        }
    }
    Ok(format!("4 anchors, {oracle_runs} oracle cross-checks"))
}

fn criterion_6() -> Outcome {
    let p = |n, c: &[&[usize]]| Permutation::from_cycles(n, c).unwrap();
    let s4 = PermGroup::new(4, vec![p(4, &[&[0, 1]]), p(4, &[&[0, 1, 2, 3]])]).unwrap();
    let d4 = PermGroup::new(4, vec![p(4, &[&[0, 1, 2, 3]]), p(4, &[&[0, 2]])]).unwrap();
    let a5 = PermGroup::new(5, vec![p(5, &[&[0, 1, 2]]), p(5, &[&[0, 1, 2, 3, 4]])]).unwrap();
    let s = s4.derived_series().map_err(|e| e.to_string())?;
    check(s.orders() == [24, 12, 4, 1] && s.derived_length == Some(3), format!("S4 series {:?}", s.orders()))?;
    let d = d4.derived_series().map_err(|e| e.to_string())?;
    check(d.derived_length == Some(2), format!("D4 series {:?}", d.orders()))?;
    let a = a5.derived_series().map_err(|e| e.to_string())?;
    check(!a.is_solvable() && a.orders() == [60], format!("A5 series {:?}", a.orders()))?;
    for n in 2..=12 {
        let z = PermGroup::new(n, vec![Permutation::new((0..n).map(|i| (i + 1) % n).collect()).unwrap()]).unwrap();
        let series = z.derived_series().map_err(|e| e.to_string())?;
        check(series.derived_length == Some(1) && series.orders() == [n, 1], format!("Z{n} series {:?}", series.orders()))?;
    }
    Ok("S4, D4, A5, Z2..Z12".into())
}

fn criterion_7() -> Outcome {
    let opts = Default::default();
    let k5 = families::complete(5);
    let k55 = families::complete_bipartite(5, 5);
    check(k55.group.order() == Ok(50), "K5,5 group order is not 50")?;
    let mut instances: Vec<(String, families::Family)> = vec![("K5".into(), k5), ("K5,5".into(), k55)];
    let corpus: Vec<_> = common::arc_transitive_corpus()
        .into_iter()
        .filter(|(name, _)| name != "K5 AGL(1,5)" && name != "K5,5")
        .collect();
    let corpus_len = corpus.len();
    instances.extend(corpus);
    let mut lifted = Vec::new();
    for (name, f) in &instances {
        check(f.graph.valency().is_some_and(|d| d >= 4), format!("{name}: valency below 4"))?;
        let trace = match solve_three_flow(&f.graph, &f.group, &opts) {
            Ok(t) => t,
            Err(e @ (PipelineError::Infeasible | PipelineError::InternalInvariantViolation(_))) => {
                return Err(format!("{name}: {e}"))
            }
            Err(e) => return Err(format!("{name}: {e}")),
        };
        check(!trace.steps.is_empty(), format!("{name}: empty trace"))?;
        let report = verify_flow(&f.graph, &trace.flow);
        check(report.is_nowhere_zero() && trace.flow.k == 3, format!("{name}: {report}"))?;
        let has = |pred: fn(&Step) -> bool| trace.steps.iter().any(pred);
        if has(|s| matches!(s, Step::Recurse { .. })) && has(|s| matches!(s, Step::Lift { .. })) {
            lifted.push(name.clone());
        }
    }
    check(corpus_len >= 20, format!("only {corpus_len} corpus instances"))?;
    check(!lifted.is_empty(), "no Recurse + Lift trace")?;
    Ok(format!("K5, K5,5 and {corpus_len} corpus pairs; Recurse+Lift on {}", lifted.join(", ")))
}

fn nzflow(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_nzflow")).args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn criterion_8() -> Outcome {
    let opts = Default::default();
    let petersen = families::petersen();
    let got = solve_three_flow(&petersen.graph, &petersen.group, &opts);
    check(
        got == Err(PipelineError::OutsideScope(ScopeViolation::NotSolvable)),
        format!("(Petersen, S5) gave {got:?}"),
    )?;
    // The even-valency shortcut needs no symmetry, so (C5, Z5) is judged by
    // the hypothesis report rather than by the pipeline.
    let c5 = families::cycle(5).graph;
    let z5 = PermGroup::new(5, vec![Permutation::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap()]).unwrap();
    let report = check_hypotheses(&c5, &z5);
    check(
        report.regular() && !report.valency_at_least_four() && report.vertex_transitive && !report.arc_transitive,
        format!("(C5, Z5) report:\n{report}"),
    )?;

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = |f: &str| dir.path().join(f).to_string_lossy().into_owned();
    let (code, ..) = nzflow(&["gen", "petersen", "-o", &path("p.g"), "--group", &path("p.grp")]);
    check(code == 0, "gen petersen failed")?;
    let (code, _, err) = nzflow(&["pipeline", &path("p.g"), &path("p.grp")]);
    check(code == 3 && err.contains("not solvable"), format!("petersen pipeline exit {code}: {err}"))?;
    let (code, ..) = nzflow(&["gen", "circulant", "5", "1", "-o", &path("c5.g"), "--regular-group", &path("z5.grp")]);
    check(code == 0, "gen circulant failed")?;
    let (code, out, _) = nzflow(&["group", &path("z5.grp"), "--graph", &path("c5.g")]);
    check(code == 3 && out.contains("arc-transitive: no"), format!("C5/Z5 group report exit {code}: {out}"))?;
    let (code, out, _) = nzflow(&["group", &path("p.grp"), "--graph", &path("p.g")]);
    check(code == 3 && out.contains("solvable: no"), format!("petersen group report exit {code}: {out}"))?;
    Ok("library verdicts and CLI exit code 3 for both".into())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 8] = [
        // per-cycle limit of 1 s enforced inside
        ("1 flow definition soundness", criterion_1, Duration::MAX),
        ("2 even-valency 2-flows", criterion_2, Duration::from_secs(5)),
        ("3 multicover lifting", criterion_3, Duration::from_secs(30)),
        ("4 bipartite base", criterion_4, Duration::from_secs(60)),
        ("5 solver anchors", criterion_5, Duration::from_secs(120)),
        ("6 derived-series anchors", criterion_6, Duration::from_secs(1)),
        ("7 end-to-end 3-flows", criterion_7, Duration::from_secs(120)),
        ("8 hypothesis gate", criterion_8, Duration::from_secs(60)),
    ];
    let mut failures = 0;
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let verdict = match &outcome {
            Ok(detail) if limit == Duration::MAX => format!("PASS criterion {name}: {detail} ({elapsed:.2?})"),
            Ok(detail) if elapsed < limit => format!("PASS criterion {name}: {detail} ({elapsed:.2?} < {limit:?})"),
            Ok(detail) => format!("FAIL criterion {name}: {detail} but took {elapsed:.2?} (limit {limit:?})"),
            Err(why) => format!("FAIL criterion {name}: {why} ({elapsed:.2?})"),
        };
        if verdict.starts_with("FAIL") {
            failures += 1;
        }
        println!("{verdict}");
    }
    assert_eq!(failures, 0, "{failures} acceptance criteria failed");
}
