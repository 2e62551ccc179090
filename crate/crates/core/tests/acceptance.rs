//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.
//!
//! Run with `cargo test -p treeinv --test acceptance`.

mod common;

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use common::{edge_names, example1, node};
use treeinv::bench::{run_bench, Algorithm};
use treeinv::interdiction::upgraded_shortest;
use treeinv::io::{parse_instance, write_instance, Scale};
use treeinv::oracle::{
    brute_force_mcspit, brute_force_riovspt, generate_instance, verify_random, GeneratorConfig, TreeShape,
    DEFAULT_BUDGET,
};
use treeinv::{
    build_cost_ladder, build_instance, construct_riovspt_solution, is_feasible_cost, restricted_edge_set,
    root_leaf_path, shortest_root_leaf, solve_mcspit, solve_riovspt, EdgeRecord, FixedInstance, Status, WeightSelector,
};

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);
type Maker = fn(i64) -> FixedInstance;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !($cond) {
            return Err(format!($($fmt)+));
        }
    };
}

const PROPERTY_CASES: u64 = 256;

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("example 1 riovspt golden value", riovspt_golden),
        ("example 1 mcspit golden value", mcspit_golden),
        ("example 1 intermediate values", intermediate_values),
        ("oracle equivalence on 500 random instances", oracle_equivalence),
        ("property suites", property_suites),
        ("scaling to n = 5000", scaling),
        ("boundary behaviour", boundaries),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {}/{} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn riovspt_golden() -> Verdict {
    let inst = example1();
    solve_riovspt(&inst).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let report = solve_riovspt(&inst).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure!(
        report.objective == Some(7),
        "objective {:?}, expected 7",
        report.objective
    );
    let sol = report.assignment.as_ref().ok_or("no assignment")?;
    let p0 = root_leaf_path(&inst, inst.t0().unwrap()).unwrap();
    let p0_len: i64 = p0.edges().iter().map(|&e| sol.get(e)).sum();
    ensure!(p0_len == 39, "designated path has length {p0_len}");
    let (_, shortest) = shortest_root_leaf(&inst, sol.weights());
    ensure!(shortest >= 39, "shortest path {shortest} < 39");
    for e in inst.tree().edges() {
        let a = inst.attr(e);
        ensure!(a.l <= sol.get(e) && sol.get(e) <= a.u, "edge {e:?} out of bounds");
    }
    ensure!(
        sol.changed().iter().all(|&e| inst.attr(e).c <= 7),
        "an edge of cost above 7 changed"
    );
    let oracle = brute_force_riovspt(&inst, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    ensure!(oracle.objective == Some(7), "oracle objective {:?}", oracle.objective);
    ensure!(elapsed < Duration::from_millis(1), "took {elapsed:?}");
    Ok(format!("objective 7 at rung 5, oracle agrees, {elapsed:?}"))
}

fn mcspit_golden() -> Verdict {
    let inst = example1();
    let report = solve_mcspit(&inst).map_err(|e| e.to_string())?;
    let oracle = brute_force_mcspit(&inst, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    ensure!(
        (report.status, report.objective) == (oracle.status, oracle.objective),
        "solver {:?}/{:?}, oracle {:?}/{:?}",
        report.status,
        report.objective,
        oracle.status,
        oracle.objective
    );
    // The only cost-1 edge (e13) has slack 3 and D(w) = 34, so a budget of 1
    // adds at most 3 to any path, short of 39. The oracle value governs.
    let ladder = build_cost_ladder(&inst);
    let d1 = upgraded_shortest(&inst, &ladder, 1);
    ensure!(d1 < 39, "D_1 = {d1} would make a budget of 1 sufficient");
    ensure!(
        report.objective == Some(2),
        "objective {:?}, oracle-derived value is 2",
        report.objective
    );
    let achieved = report.achieved_shortest.ok_or("no achieved shortest")?;
    ensure!(achieved >= 39, "achieved {achieved} < 39");
    let sol = report.assignment.as_ref().ok_or("no assignment")?;
    ensure!(
        sol.changed().iter().all(|&e| sol.get(e) == inst.attr(e).u),
        "a changed edge is not at its upper bound"
    );
    Ok(format!(
        "objective 2 equals the oracle (budget 1 reaches only {d1}), achieved shortest {achieved}, upgraded {:?}",
        edge_names(&inst, sol.changed().iter().copied())
    ))
}

fn intermediate_values() -> Verdict {
    let inst = example1();
    let (leaf, dw) = shortest_root_leaf(&inst, &inst.weights());
    ensure!(
        dw == 34 && leaf == node(&inst, "v6"),
        "D(w) = {dw} at {}",
        inst.tree().label(leaf)
    );
    let ladder = build_cost_ladder(&inst);
    ensure!(
        ladder.rungs() == [1, 2, 3, 4, 7, 8, 9, 12, 13, 14, 15],
        "ladder {:?}",
        ladder.rungs()
    );
    let e6 = restricted_edge_set(&ladder, 6).map_err(|e| e.to_string())?;
    let names = edge_names(&inst, e6.iter());
    ensure!(
        names == ["e2", "e3", "e4", "e6", "e9", "e10", "e11", "e12", "e13"],
        "E_6 = {names:?}"
    );
    let feasible = |k| is_feasible_cost(&inst, &restricted_edge_set(&ladder, k).unwrap()).unwrap();
    ensure!(!feasible(4), "C_4 reported feasible");
    ensure!(feasible(5), "C_5 reported infeasible");
    Ok("D(w) = 34 at v6, ladder and E_6 match, C_4 infeasible, C_5 feasible".into())
}

fn oracle_equivalence() -> Verdict {
    let start = Instant::now();
    let summary = verify_random(500, 8, 0, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    if let Some(failure) = summary.first_failure {
        return Err(format!("instance {} disagrees: {}", failure.index, failure.reason));
    }
    ensure!(summary.agreed == 500, "{}/{} agreed", summary.agreed, summary.checked);
    ensure!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    Ok(format!("500/500 agree in {elapsed:.2?}"))
}

fn property_instance(index: u64) -> FixedInstance {
    let n = 2 + (index.wrapping_mul(7919) % 39) as usize;
    let config = GeneratorConfig {
        weight_range: 0..=60,
        slack_range: 0..=25,
        cost_range: 1..=12,
        ..GeneratorConfig::new(n, 0xACCE_0000 + index).with_shape(TreeShape::ALL[(index % 4) as usize])
    };
    generate_instance(&config).expect("generator")
}

fn check_properties(inst: &FixedInstance) -> Result<(), String> {
    let ladder = build_cost_ladder(inst);
    let target = inst.target().unwrap();
    let t0 = inst.t0().unwrap();
    let p0 = root_leaf_path(inst, t0).unwrap();

    let feasible: Vec<bool> = (0..=ladder.len())
        .map(|k| is_feasible_cost(inst, &restricted_edge_set(&ladder, k).unwrap()).unwrap())
        .collect();
    ensure!(
        feasible.windows(2).all(|p| !p[0] || p[1]),
        "feasibility not monotone: {feasible:?}"
    );

    for (k, _) in feasible.iter().enumerate().filter(|(_, &f)| f) {
        let set = restricted_edge_set(&ladder, k).unwrap();
        let sol = construct_riovspt_solution(inst, &set).map_err(|e| e.to_string())?;
        let w = sol.weights();
        ensure!(
            inst.tree()
                .edges()
                .all(|e| inst.attr(e).l <= w[e.index()] && w[e.index()] <= inst.attr(e).u),
            "rung {k}: bounds violated"
        );
        let len: i64 = p0.edges().iter().map(|e| w[e.index()]).sum();
        ensure!(len == target, "rung {k}: designated path {len} != {target}");
        ensure!(shortest_root_leaf(inst, w).1 >= target, "rung {k}: a path is below D");
        ensure!(
            sol.changed().iter().all(|&e| set.contains(e)),
            "rung {k}: change outside E_k"
        );
    }

    let report = solve_riovspt(inst).map_err(|e| e.to_string())?;
    match feasible.iter().position(|&f| f) {
        None => ensure!(
            report.status == Status::Infeasible,
            "riovspt status {:?}",
            report.status
        ),
        Some(k) => ensure!(
            report.rung == Some(k) && report.objective == Some(ladder.cost(k)),
            "riovspt rung {:?}, linear scan {k}",
            report.rung
        ),
    }

    let d: Vec<i64> = (0..=ladder.len())
        .map(|k| upgraded_shortest(inst, &ladder, k))
        .collect();
    ensure!(d.windows(2).all(|p| p[0] <= p[1]), "D_k not monotone: {d:?}");

    let report = solve_mcspit(inst).map_err(|e| e.to_string())?;
    match d.iter().position(|&dk| dk >= target) {
        None => ensure!(report.status == Status::Infeasible, "mcspit status {:?}", report.status),
        Some(k) => ensure!(
            report.objective == Some(ladder.cost(k)),
            "mcspit objective {:?}, linear scan rung {k}",
            report.objective
        ),
    }
    if let Some(sol) = &report.assignment {
        let m = report.objective.unwrap();
        for e in inst.tree().edges() {
            let a = inst.attr(e);
            let expected = if a.c <= m { a.u } else { a.w };
            ensure!(sol.get(e) == expected, "mcspit edge {e:?} not upgraded to u");
        }
    }

    for factor in [1, 10, 100] {
        let scale = Scale::new(factor).unwrap();
        let text = write_instance(inst, scale);
        let back = parse_instance(&text).map_err(|e| e.to_string())?;
        ensure!(
            back.instance == *inst,
            "round trip at scale {factor} changed the instance"
        );
        ensure!(
            write_instance(&back.instance, scale) == text,
            "round trip at scale {factor} not canonical"
        );
    }
    Ok(())
}

fn property_suites() -> Verdict {
    for index in 0..PROPERTY_CASES {
        let inst = property_instance(index);
        check_properties(&inst).map_err(|e| format!("case {index}: {e}"))?;
    }
    Ok(format!(
        "{PROPERTY_CASES} cases each for monotonicity, constructor soundness, D_k, upgrade-to-u, \
         binary vs linear search and round trip"
    ))
}

fn scaling() -> Verdict {
    let records = run_bench(&[1000, 3000, 5000], 10, 7).map_err(|e| e.to_string())?;
    let avg = |n, alg| {
        records
            .iter()
            .find(|r| r.n == n && r.algorithm == alg)
            .map(|r| r.t_avg)
            .unwrap()
    };
    let mut parts = Vec::new();
    for alg in [Algorithm::Riovspt, Algorithm::Mcspit] {
        let ratio = avg(5000, alg) / avg(1000, alg);
        if ratio > 10.0 {
            return Err(format!("{alg:?}: t_avg(5000)/t_avg(1000) = {ratio:.2}"));
        }
        parts.push(format!("{alg:?} ratio {ratio:.2}"));
    }
    let worst = records.iter().map(|r| r.t_max).fold(0.0, f64::max);
    if worst >= 1.0 {
        return Err(format!("slowest solve {worst:.3} s"));
    }
    Ok(format!("{}, slowest solve {:.2} ms", parts.join(", "), worst * 1e3))
}

fn chain(target: i64) -> FixedInstance {
    let records = [
        EdgeRecord::new("v1", "v2", 4, 2, 6, 3),
        EdgeRecord::new("v2", "v3", 5, 5, 9, 1),
        EdgeRecord::new("v3", "v4", 2, 0, 2, 5),
    ];
    build_instance(&records, "v1", Some("v4"), Some(target)).unwrap()
}

fn single_edge(target: i64) -> FixedInstance {
    build_instance(
        &[EdgeRecord::new("v1", "v2", 5, 3, 9, 2)],
        "v1",
        Some("v2"),
        Some(target),
    )
    .unwrap()
}

fn exit_code(subcommand: &str, inst: &FixedInstance, name: &str) -> Result<Option<i32>, String> {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("acceptance");
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let path = dir.join(name);
    std::fs::write(&path, write_instance(inst, Scale::default())).map_err(|e| e.to_string())?;
    let out = Command::new(env!("CARGO_BIN_EXE_treeinv"))
        .arg(subcommand)
        .arg(&path)
        .output()
        .map_err(|e| e.to_string())?;
    Ok(out.status.code())
}

fn boundaries() -> Verdict {
    let cases: [(&str, Maker); 2] = [("single-edge", single_edge), ("chain", chain)];
    for (name, make) in cases {
        let base = make(0);
        let ladder = build_cost_ladder(&base);
        let top = upgraded_shortest(&base, &ladder, ladder.len());
        let upper = path_len_of(&base, WeightSelector::Upper);
        let dw = shortest_root_leaf(&base, &base.weights()).1;

        let above = base.clone().with_target(Some(top.max(upper) + 1));
        let r = solve_riovspt(&above).map_err(|e| e.to_string())?;
        ensure!(
            r.status == Status::Infeasible,
            "{name}: riovspt status {:?} above D_n*",
            r.status
        );
        let m = solve_mcspit(&above).map_err(|e| e.to_string())?;
        ensure!(
            m.status == Status::Infeasible,
            "{name}: mcspit status {:?} above D_n*",
            m.status
        );
        for cmd in ["solve-riovspt", "solve-mcspit"] {
            let code = exit_code(cmd, &above, &format!("{name}-above.instance"))?;
            ensure!(code == Some(2), "{name}: {cmd} exit code {code:?}");
        }

        let at = base.clone().with_target(Some(dw));
        let r = solve_riovspt(&at).map_err(|e| e.to_string())?;
        let w = at.weights();
        ensure!(
            r.objective == Some(0) && r.assignment.as_ref().map(|a| a.weights()) == Some(w.as_slice()),
            "{name}: riovspt at D(w) gave {:?}",
            r.objective
        );
        for d in [dw - 1, dw] {
            let below = base.clone().with_target(Some(d));
            let m = solve_mcspit(&below).map_err(|e| e.to_string())?;
            ensure!(
                m.objective == Some(0) && m.assignment.as_ref().map(|a| a.weights()) == Some(w.as_slice()),
                "{name}: mcspit at D = {d} gave {:?}",
                m.objective
            );
            let code = exit_code("solve-mcspit", &below, &format!("{name}-below.instance"))?;
            ensure!(code == Some(0), "{name}: solve-mcspit exit code {code:?} at D = {d}");
        }
    }
    Ok(
        "single-edge and chain: infeasible with exit code 2 above D_n*, objective 0 and w unchanged at D <= D(w)"
            .into(),
    )
}

fn path_len_of(inst: &FixedInstance, selector: WeightSelector) -> i64 {
    let p0 = root_leaf_path(inst, inst.t0().unwrap()).unwrap();
    treeinv::path_sum(inst, &p0, selector)
}
