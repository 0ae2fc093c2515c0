//! End-to-end acceptance checks. Runs without the test harness so that every
//! criterion prints its `criterion N: PASS|FAIL` line; the process fails if
//! any criterion does. Set `NETROBUST_SLOW=1` to add λ_2 of D_{3,2}.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use netrobust::claims::{revalidate, run_verification, Plan, RunOptions, Status, DEFAULT_MAX_ORDER};
use netrobust::graph::common_neighbors;
use netrobust::independence::{hypothesis_report, independence_number, DEFAULT_NODE_BUDGET};
use netrobust::matching::{has_perfect_matching_without, mp1_number, mp_number, v_e, PreclusionKind};
use netrobust::mincut::edge_connectivity;
use netrobust::oracle::{compare_corpus, random_corpus, DEFAULT_SEED};
use netrobust::restricted::{classify_super_lambda_k, lambda_k, LadderValue, Verdict};
use netrobust::topology::{
    check_adjacency_preserving, complete_graph, cycle_graph, dcell_star_map, gen_dcell, gen_star, size_t, star_k1,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(n: u32, start: Instant, limit: Duration, failures: &[String]) -> bool {
    let elapsed = start.elapsed();
    let mut failures = failures.to_vec();
    if elapsed > limit {
        failures.push(format!("took {elapsed:.1?}, limit {limit:?}"));
    }
    let verdict = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!(
        "criterion {n}: {verdict} ({elapsed:.2?}){}",
        failures.iter().map(|f| format!("\n    {f}")).collect::<String>()
    );
    failures.is_empty()
}

fn check(failures: &mut Vec<String>, ok: bool, what: impl Into<String>) {
    if !ok {
        failures.push(what.into());
    }
}

fn criterion_01_construction() -> bool {
    let start = Instant::now();
    let mut f = Vec::new();
    for (k, n, t) in [(1, 2, 6u32), (2, 2, 42), (1, 3, 12), (2, 3, 156), (3, 2, 1806)] {
        check(&mut f, size_t(k, n).unwrap() == t.into(), format!("size_t({k},{n}) != {t}"));
        let g = gen_dcell(k, n).unwrap();
        check(&mut f, g.vertex_count() == t as usize, format!("gen_dcell({k},{n}) order"));
        check(&mut f, g.is_connected(), format!("D_{{{k},{n}}} disconnected"));
        let r = n + k - 1;
        check(&mut f, (0..g.vertex_count()).all(|v| g.degree(v) == r), format!("D_{{{k},{n}}} not {r}-regular"));
        let profile_ok = (0..g.vertex_count()).all(|v| {
            let mut per_level = vec![0usize; k + 1];
            g.neighbors(v).iter().for_each(|&(_, e)| per_level[g.level(e) as usize] += 1);
            per_level[0] == n - 1 && per_level[1..].iter().all(|&c| c == 1)
        });
        check(&mut f, profile_ok, format!("D_{{{k},{n}}} level profile"));
    }
    report(1, start, Duration::from_secs(5), &f)
}

fn criterion_02_common_neighbors() -> bool {
    let start = Instant::now();
    let mut f = Vec::new();
    for (k, n) in [(1, 3), (2, 2), (2, 3)] {
        let g = gen_dcell(k, n).unwrap();
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            let want = if g.level(e) == 0 { n - 2 } else { 0 };
            if common_neighbors(&g, u, v) != want {
                f.push(format!("D_{{{k},{n}}} edge ({u},{v}) level {}", g.level(e)));
            }
        }
    }
    report(2, start, Duration::from_secs(5), &f)
}

fn criterion_03_isomorphism() -> bool {
    let start = Instant::now();
    let mut f = Vec::new();
    for n in 2..=6 {
        let ok = check_adjacency_preserving(
            &gen_dcell(1, n).unwrap(),
            &gen_star(n + 1, 2).unwrap(),
            &dcell_star_map(n).unwrap(),
        );
        check(&mut f, ok == Ok(true), format!("map fails for n = {n}"));
    }
    let is_c6 = |g: &netrobust::Graph| {
        g.vertex_count() == 6 && g.edge_count() == 6 && g.is_connected() && (0..6).all(|v| g.degree(v) == 2)
    };
    check(&mut f, is_c6(&gen_star(3, 2).unwrap()), "S_{3,2} is not C_6");
    check(&mut f, is_c6(&gen_dcell(1, 2).unwrap()), "D_{1,2} is not C_6");
    report(3, start, Duration::from_secs(5), &f)
}

fn criterion_04_edge_connectivity() -> bool {
    let start = Instant::now();
    let mut f = Vec::new();
    for (k, n) in [(1, 2), (1, 3), (1, 4), (2, 2), (2, 3), (3, 2)] {
        let (value, w) = edge_connectivity(&gen_dcell(k, n).unwrap()).unwrap();
        check(&mut f, value == n + k - 1 && w.value() == value, format!("λ(D_{{{k},{n}}}) = {value}"));
    }
    report(4, start, Duration::from_secs(30), &f)
}

fn ladder(g: &netrobust::Graph, k: usize) -> LadderValue {
    lambda_k(g, k).unwrap().value
}

fn criterion_05_lambda2() -> bool {
    let start = Instant::now();
    let mut f = Vec::new();
    let cases = [
        ("D_{2,2}", gen_dcell(2, 2).unwrap(), LadderValue::Defined(4)),
        ("D_{2,3}", gen_dcell(2, 3).unwrap(), LadderValue::Defined(6)),
        ("K_4", complete_graph(4), LadderValue::Defined(4)),
        ("K_5", complete_graph(5), LadderValue::Defined(6)),
        ("K_6", complete_graph(6), LadderValue::Defined(8)),
        ("K_{1,4}", star_k1(4), LadderValue::NotDefined),
    ];
    for (name, g, want) in cases {
        let got = ladder(&g, 2);
        check(&mut f, got == want, format!("λ_2({name}) = {got:?}, want {want:?}"));
    }
    report(5, start, Duration::from_secs(60), &f)
}

fn criterion_05_lambda2_slow() -> bool {
    let start = Instant::now();
    let got = ladder(&gen_dcell(3, 2).unwrap(), 2);
    let f: Vec<String> =
        (got != LadderValue::Defined(6)).then(|| format!("λ_2(D_{{3,2}}) = {got:?}")).into_iter().collect();
    report(5, start, Duration::from_secs(600), &f)
}

fn criterion_06_lambda3() -> bool {
    let start = Instant::now();
    let mut f = Vec::new();
    let cases = [
        ("D_{2,2}", gen_dcell(2, 2).unwrap(), 5),
        ("K_6", complete_graph(6), 9),
        ("D_{2,3}", gen_dcell(2, 3).unwrap(), 6),
    ];
    for (name, g, want) in cases {
        let got = ladder(&g, 3);
        check(&mut f, got == LadderValue::Defined(want), format!("λ_3({name}) = {got:?}, want {want}"));
    }
    report(6, start, Duration::from_secs(300), &f)
}

fn criterion_07_super_classifications() -> bool {
    let start = Instant::now();
    let mut f = Vec::new();
    let d22 = gen_dcell(2, 2).unwrap();
    let d23 = gen_dcell(2, 3).unwrap();
    let cases = [
        ("super-λ D_{2,2}", &d22, 1, Verdict::Proven),
        ("super-λ D_{2,3}", &d23, 1, Verdict::Proven),
        ("super-λ D_{1,3}", &gen_dcell(1, 3).unwrap(), 1, Verdict::Refuted),
        ("super-λ D_{1,4}", &gen_dcell(1, 4).unwrap(), 1, Verdict::Refuted),
        ("super-λ_2 D_{2,2}", &d22, 2, Verdict::Proven),
        ("super-λ_2 D_{2,3}", &d23, 2, Verdict::Refuted),
        ("super-λ_3 D_{2,2}", &d22, 3, Verdict::Proven),
    ];
    for (name, g, k, want) in cases {
        let got = classify_super_lambda_k(g, k).unwrap().verdict;
        check(&mut f, got == want, format!("{name}: {got:?}, want {want:?}"));
    }
    match ladder(&d22, 4) {
        LadderValue::Defined(v) => check(&mut f, v > 5, format!("λ_4(D_{{2,2}}) = {v} is not above 5")),
        LadderValue::NotDefined => {}
    }
    report(7, start, Duration::from_secs(600), &f)
}

fn criterion_08_independence() -> bool {
    let start = Instant::now();
    let mut f = Vec::new();
    let g = gen_dcell(2, 2).unwrap();
    let r = independence_number(&g, DEFAULT_NODE_BUDGET).unwrap();
    let independent = r.witness.iter().all(|&u| r.witness.iter().all(|&v| !g.has_edge(u, v)));
    check(&mut f, r.alpha == 19 && r.witness.len() == 19 && independent, format!("α(D_{{2,2}}) = {}", r.alpha));
    for n in 1..=8 {
        let a = independence_number(&complete_graph(n), DEFAULT_NODE_BUDGET).unwrap().alpha;
        check(&mut f, a == 1, format!("α(K_{n}) = {a}"));
    }
    let a = independence_number(&cycle_graph(6), DEFAULT_NODE_BUDGET).unwrap().alpha;
    check(&mut f, a == 3, format!("α(C_6) = {a}"));
    report(8, start, Duration::from_secs(60), &f)
}

fn criterion_09_matching_preclusion() -> bool {
    let start = Instant::now();
    let mut f = Vec::new();
    let d13 = mp_number(&gen_dcell(1, 3).unwrap(), true).unwrap();
    let kinds = d13.kinds();
    let want: BTreeSet<_> = [PreclusionKind::Trivial, PreclusionKind::SemiTrivial].into();
    check(&mut f, d13.number == 3, format!("mp(D_{{1,3}}) = {}", d13.number));
    if kinds != want {
        let count = |k| d13.witnesses.iter().filter(|w| w.kind == k).count();
        let example = d13.witnesses.iter().find(|w| !want.contains(&w.kind)).map(|w| w.edges.clone());
        f.push(format!(
            "D_{{1,3}} optimal sets: {} trivial, {} semi-trivial, {} trivial-conditional, {} other; e.g. {example:?}",
            count(PreclusionKind::Trivial),
            count(PreclusionKind::SemiTrivial),
            count(PreclusionKind::TrivialConditional),
            count(PreclusionKind::Other)
        ));
    }
    for (k, n, want) in [(1, 4, 4), (2, 2, 3)] {
        let r = mp_number(&gen_dcell(k, n).unwrap(), true).unwrap();
        let all_trivial = r.kinds() == BTreeSet::from([PreclusionKind::Trivial]);
        check(
            &mut f,
            r.number == want && all_trivial,
            format!("mp(D_{{{k},{n}}}) = {}, kinds {:?}", r.number, r.kinds()),
        );
    }
    report(9, start, Duration::from_secs(600), &f)
}

fn criterion_10_conditional_preclusion() -> bool {
    let start = Instant::now();
    let mut f = Vec::new();
    let g = gen_dcell(2, 2).unwrap();
    let r = mp1_number(&g, true).unwrap();
    let ve = v_e(&g).unwrap();
    check(&mut f, r.number == 4 && ve == 4, format!("mp_1 = {}, v_e = {ve}", r.number));
    check(&mut f, r.kinds().contains(&PreclusionKind::TrivialConditional), "no 2-path optimum");
    report(10, start, Duration::from_secs(900), &f)
}

fn criterion_11_hypotheses() -> bool {
    let start = Instant::now();
    let mut f = Vec::new();
    let g = gen_dcell(2, 2).unwrap();
    let mp1 = mp1_number(&g, false).unwrap().number;
    check(&mut f, mp1 <= v_e(&g).unwrap(), "mp_1 exceeds v_e");
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    for _ in 0..1000 {
        let size = rng.random_range(0..=2);
        let mut ids: Vec<usize> = (0..size).map(|_| rng.random_range(0..g.edge_count())).collect();
        ids.sort_unstable();
        ids.dedup();
        if !has_perfect_matching_without(&g, &ids) {
            f.push(format!("deleting {ids:?} kills every perfect matching"));
        }
    }
    let h = hypothesis_report(&g, 3, Some((2, 2)), DEFAULT_NODE_BUDGET).unwrap();
    let c = h.check("half_order_less_1").unwrap();
    check(&mut f, h.alpha == 19 && c.threshold == "20" && c.holds == Some(true), format!("{c:?}"));
    report(11, start, Duration::from_secs(120), &f)
}

fn criterion_12_oracle_equivalence() -> bool {
    let start = Instant::now();
    let corpus = random_corpus(DEFAULT_SEED, 200);
    let reports = compare_corpus(&corpus);
    let f: Vec<String> = reports
        .iter()
        .filter(|r| !r.agree)
        .map(|r| format!("{} {}: oracle {} fast {}", r.instance, r.metric, r.oracle, r.fast))
        .collect();
    let matching = reports.iter().filter(|r| r.metric.starts_with("mp")).count();
    println!("  {} comparisons on {} graphs, {matching} of them matching metrics", reports.len(), corpus.len());
    report(12, start, Duration::from_secs(600), &f)
}

fn criterion_13_end_to_end() -> bool {
    let start = Instant::now();
    let mut f = Vec::new();
    let opts = RunOptions::from_env();
    let report_data = run_verification(&Plan::default_for(DEFAULT_MAX_ORDER), &opts);
    let json = serde_json::to_string(&report_data).unwrap();
    let back: netrobust::VerificationReport = serde_json::from_str(&json).unwrap();
    check(&mut f, back == report_data, "JSON round trip changed the report");
    check(&mut f, back.claims.len() >= 20, format!("only {} claims", back.claims.len()));
    for c in back.claims.iter().filter(|c| c.status == Status::Fail) {
        f.push(format!("{} FAIL: expected {}, computed {:?}, note {:?}", c.claim_id, c.expected, c.computed, c.note));
    }
    if let Some(c) = &back.corpus {
        f.extend(c.disagreements.iter().map(|d| format!("corpus {} {}", d.instance, d.metric)));
    }
    f.extend(revalidate(&back));
    let exit_code = if back.passed() { 0 } else { 1 };
    check(&mut f, exit_code == 0, "runner would exit non-zero");
    println!(
        "  {} claims: {} PASS, {} SKIPPED-too-large, {} SKIPPED-not-stated",
        back.claims.len(),
        back.count(Status::Pass),
        back.count(Status::SkippedTooLarge),
        back.count(Status::SkippedNotStated)
    );
    report(13, start, Duration::from_secs(45 * 60), &f)
}

fn main() {
    let mut criteria: Vec<(u32, fn() -> bool)> = vec![
        (1, criterion_01_construction),
        (2, criterion_02_common_neighbors),
        (3, criterion_03_isomorphism),
        (4, criterion_04_edge_connectivity),
        (5, criterion_05_lambda2),
        (6, criterion_06_lambda3),
        (7, criterion_07_super_classifications),
        (8, criterion_08_independence),
        (9, criterion_09_matching_preclusion),
        (10, criterion_10_conditional_preclusion),
        (11, criterion_11_hypotheses),
        (12, criterion_12_oracle_equivalence),
        (13, criterion_13_end_to_end),
    ];
    if std::env::var_os("NETROBUST_SLOW").is_some() {
        criteria.insert(5, (5, criterion_05_lambda2_slow));
    }
    let mut failed = Vec::new();
    for (n, run) in criteria {
        let passed = std::panic::catch_unwind(run).unwrap_or_else(|_| {
            println!("criterion {n}: FAIL (panicked)");
            false
        });
        if !passed {
            failed.push(n);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all criteria PASS");
    } else {
        println!("acceptance: FAIL on criteria {failed:?}");
        std::process::exit(1);
    }
}
