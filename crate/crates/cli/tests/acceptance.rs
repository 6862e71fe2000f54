//! Acceptance suite. Each test checks one criterion and prints a single
//! `criterion N: PASS|FAIL` line before asserting.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use cayley_core::cayley::{build_cayley_graph, inverse_closed_subsets, inverse_pairs, left_multiplication, ConnectionSet};
use cayley_core::census::{census_sets, evaluate, run_census, CensusOptions, Family, Sampling};
use cayley_core::certfile::CertificateFile;
use cayley_core::constructions::{all_witnesses, find_witness_y, prop1_certificate, thm2_certificate, RegularCertificate};
use cayley_core::export::graph6;
use cayley_core::graph::SimpleGraph;
use cayley_core::group::{build_group, invariant_factor_lists, FiniteGroup};
use cayley_core::oracle::{automorphism_group, enumerate_regular_subgroups, verify_certificate, AutMode, DEFAULT_MAX_AUT};
use cayley_core::perm::{compose, invert};
use serde_json::Value;

fn report(criterion: u32, passed: bool, detail: impl AsRef<str>) {
    println!(
        "criterion {criterion}: {} {}",
        if passed { "PASS" } else { "FAIL" },
        detail.as_ref()
    );
    assert!(passed, "criterion {criterion} failed: {}", detail.as_ref());
}

fn all_sets(g: &FiniteGroup) -> impl Iterator<Item = ConnectionSet> + '_ {
    inverse_closed_subsets(g, inverse_pairs(g, |_| true))
}

/// Relation checks plus full verification; returns a failure description.
fn check_prop1(set: &ConnectionSet) -> Option<String> {
    let n = set.group().order();
    let graph = build_cayley_graph(set);
    let cert = match prop1_certificate(&graph) {
        Ok(c) => c,
        Err(e) => return Some(format!("{:?}: {e}", set.tokens())),
    };
    let [alpha, beta] = cert.perms.generators() else {
        return Some("expected generators alpha, beta".into());
    };
    let conj = compose(beta, &compose(alpha, beta).unwrap()).unwrap();
    let relations = alpha.pow(n as u64 / 2).is_identity() && beta.pow(2).is_identity() && conj == invert(alpha);
    let verified = verify_certificate(&cert).passed();
    let typed = cert.claimed_type == FiniteGroup::gendih(&[n / 2]).unwrap();
    (!(relations && verified && typed)).then(|| format!("cyclic:{n} {:?}", set.tokens()))
}

#[test]
fn criterion_1_prop1_exhaustive() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut total = 0;
    for n in [4usize, 6, 8, 10, 12] {
        let g = FiniteGroup::cyclic(n).unwrap();
        let mut count = 0;
        for set in all_sets(&g) {
            count += 1;
            failures.extend(check_prop1(&set));
        }
        if count != 1 << ((n - 2) / 2 + 1) {
            failures.push(format!("cyclic:{n}: {count} sets enumerated"));
        }
        total += count;
    }
    let elapsed = start.elapsed();
    report(
        1,
        failures.is_empty() && elapsed < Duration::from_secs(120),
        format!("{total} certificates, {} failures, {elapsed:.2?} (limit 120s) {failures:?}", failures.len()),
    );
}

#[test]
fn criterion_2_prop1_sampled() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut total = 0;
    for (n, seed) in [(14usize, 14u64), (16, 16)] {
        let g = FiniteGroup::cyclic(n).unwrap();
        for set in census_sets(&g, Sampling::Random { seed, count: 100 }) {
            total += 1;
            failures.extend(check_prop1(&set));
        }
    }
    let elapsed = start.elapsed();
    report(
        2,
        total == 200 && failures.is_empty() && elapsed < Duration::from_secs(60),
        format!("{total} sampled certificates, {} failures, {elapsed:.2?} (limit 60s)", failures.len()),
    );
}

fn thm2_groups() -> Vec<FiniteGroup> {
    (3..=8)
        .flat_map(invariant_factor_lists)
        .map(|f| FiniteGroup::gendih(&f).unwrap())
        .collect()
}

#[test]
fn criterion_3_thm2_exhaustive() {
    let start = Instant::now();
    let groups = thm2_groups();
    let labels: Vec<String> = groups.iter().map(|g| g.to_string()).collect();
    assert_eq!(
        labels,
        [
            "gendih:3", "gendih:4", "gendih:2x2", "gendih:5", "gendih:6", "gendih:7", "gendih:8", "gendih:4x2",
            "gendih:2x2x2"
        ]
    );
    let (mut sets, mut certs, mut single) = (0usize, 0usize, 0usize);
    let mut failures = Vec::new();
    for g in &groups {
        let claimed = FiniteGroup::new(g.abelian_part().times_c2(), false).unwrap();
        for set in all_sets(g) {
            sets += 1;
            let witness = find_witness_y(g, &set).unwrap();
            if set.coset_part().len() == 1 {
                single += 1;
                if witness.is_none() {
                    failures.push(format!("{g} {:?}: single xA element but no witness", set.tokens()));
                }
            }
            if let Some(y) = witness {
                certs += 1;
                let graph = build_cayley_graph(&set);
                match thm2_certificate(&graph, &y) {
                    Ok(cert) if cert.claimed_type == claimed && verify_certificate(&cert).passed() => {}
                    Ok(_) => failures.push(format!("{g} {:?}: verification failed", set.tokens())),
                    Err(e) => failures.push(format!("{g} {:?}: {e}", set.tokens())),
                }
            }
        }
    }
    let elapsed = start.elapsed();
    report(
        3,
        failures.is_empty() && elapsed < Duration::from_secs(600),
        format!(
            "{sets} connection sets over {} groups, {certs} certificates, {single} single-xA sets, {} failures, {elapsed:.2?} (limit 600s) {:?}",
            groups.len(),
            failures.len(),
            failures.iter().take(5).collect::<Vec<_>>()
        ),
    );
}

#[test]
fn criterion_4_witness_iff_automorphism() {
    let mut checked = 0usize;
    let mut discrepancies = Vec::new();
    for g in thm2_groups() {
        for set in all_sets(&g) {
            let graph = build_cayley_graph(&set);
            let witnesses = all_witnesses(&g, &set).unwrap();
            for y in g.coset_elements() {
                checked += 1;
                let beta = left_multiplication(&g, &y).unwrap();
                // direct edge check, independent of the witness scan
                let preserves = graph
                    .graph()
                    .edges()
                    .iter()
                    .all(|&(u, v)| graph.graph().has_edge(beta.apply(u), beta.apply(v)));
                if preserves != witnesses.contains(&y) {
                    discrepancies.push(format!("{g} {:?} y={}", set.tokens(), g.token(&y)));
                }
            }
        }
    }
    report(
        4,
        discrepancies.is_empty(),
        format!("{checked} (instance, y) pairs, {} discrepancies {:?}", discrepancies.len(), discrepancies.iter().take(5).collect::<Vec<_>>()),
    );
}

#[test]
fn criterion_5_oracle_agreement() {
    let mut battery: Vec<(String, SimpleGraph)> = Vec::new();
    for n in [4usize, 6, 8] {
        let g = FiniteGroup::cyclic(n).unwrap();
        for set in all_sets(&g) {
            battery.push((format!("cyclic:{n} {:?}", set.tokens()), build_cayley_graph(&set).graph().clone()));
        }
    }
    for g in thm2_groups().into_iter().filter(|g| g.order() <= 8) {
        for set in all_sets(&g) {
            battery.push((format!("{g} {:?}", set.tokens()), build_cayley_graph(&set).graph().clone()));
        }
    }
    for n in 1..=8 {
        battery.push((format!("K{n}"), SimpleGraph::complete(n)));
        battery.push((format!("empty{n}"), SimpleGraph::empty(n)));
        battery.push((format!("path{n}"), SimpleGraph::path(n)));
    }
    let mut mismatches = Vec::new();
    for (name, graph) in &battery {
        let refined = automorphism_group(graph, AutMode::Refined, usize::MAX).unwrap();
        let brute = automorphism_group(graph, AutMode::Factorial, usize::MAX).unwrap();
        if refined.elements != brute.elements || refined.order != brute.order {
            mismatches.push(name.clone());
        }
    }
    report(
        5,
        battery.len() >= 50 && mismatches.is_empty(),
        format!("{} graphs, {} mismatches {mismatches:?}", battery.len(), mismatches.len()),
    );
}

fn regular_summary(group: &str, set: &str) -> Value {
    let graph = cayley_core::cayley::cayley_graph(group, set).unwrap();
    let aut = automorphism_group(graph.graph(), AutMode::Refined, DEFAULT_MAX_AUT).unwrap();
    let rep = enumerate_regular_subgroups(graph.graph(), &aut).unwrap();
    for class in &rep.classes {
        let r = &class.representative;
        assert!(r.is_closed());
        assert!(cayley_core::perm::is_regular(r, graph.n()));
        assert!(r.elements().iter().all(|p| graph.graph().is_automorphism(p)));
    }
    serde_json::json!({
        "graph": format!("Cay({}, {{{}}})", graph.group(), graph.connection().tokens().join(",")),
        "aut_order": aut.order as u64,
        "total_regular_subgroups": rep.total_regular_subgroups,
        "classes": rep.classes.iter().map(|c| serde_json::json!({
            "label": c.label_or_unrecognized(),
            "count": c.count,
        })).collect::<Vec<_>>(),
    })
}

fn golden(name: &str) -> Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn labels(v: &Value) -> Vec<String> {
    v["classes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["label"].as_str().unwrap().to_string())
        .collect()
}

#[test]
fn criterion_6_regular_class_ground_truth() {
    let hexagon = regular_summary("cyclic:6", "1,5");
    let cube = regular_summary("gendih:4", "1,3,x:0");
    let hex_labels = labels(&hexagon);
    let cube_labels = labels(&cube);
    let abelian_in_cube: Vec<&String> = cube_labels
        .iter()
        .filter(|l| build_group(l).map(|g| g.is_abelian()).unwrap_or(false))
        .collect();
    let ok = hex_labels == ["cyclic:6", "gendih:3"]
        && ["abelian:4x2", "gendih:4", "abelian:2x2x2"].iter().all(|l| cube_labels.iter().any(|c| c == l))
        && abelian_in_cube.iter().all(|l| *l == "abelian:4x2" || *l == "abelian:2x2x2")
        && hexagon == golden("regulars_c6.json")
        && cube == golden("regulars_cube.json");
    report(6, ok, format!("6-cycle {hex_labels:?}; cube {cube_labels:?}"));
}

#[test]
fn criterion_7_negative_witness() {
    let g = build_group("gendih:7").unwrap();
    let target = ["x:0", "x:1", "x:3"];
    let set = ConnectionSet::parse(&g, &target.join(",")).unwrap();
    let direct = all_witnesses(&g, &set).unwrap().len();

    let opts = CensusOptions::new(Family::Thm2);
    let mut rows = 0;
    let mut bad = Vec::new();
    for set in all_sets(&g) {
        let coset: Vec<String> = set.coset_part().iter().map(|e| g.token(e)).collect();
        if coset != target {
            continue;
        }
        rows += 1;
        let rec = evaluate(&set, &opts).unwrap();
        if rec.witness_count != Some(0) || rec.witness.is_some() || rec.certificate_ok || rec.is_failure() {
            bad.push(rec.connection_set);
        }
    }
    report(
        7,
        direct == 0 && rows == 8 && bad.is_empty(),
        format!("direct witness count {direct}; {rows} census rows with xA-part {target:?}, {} emitted a certificate", bad.len()),
    );
}

fn cayley() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cayley"))
}

#[test]
fn criterion_8_determinism_and_formats() {
    let run = || {
        let out = cayley()
            .args(["census", "--family", "prop1", "--group", "cyclic:6"])
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
        out.stdout
    };
    let (first, second) = (run(), run());
    let lines = first.split(|&b| b == b'\n').filter(|l| !l.is_empty()).count();

    let mut lib_out = Vec::new();
    let summary = run_census(&[build_group("cyclic:6").unwrap()], &CensusOptions::new(Family::Prop1), &mut lib_out).unwrap();

    let k4 = graph6(&SimpleGraph::complete(4)).unwrap();
    let k4_cli = cayley().args(["build", "--group", "cyclic:4", "--set", "1,2,3"]).output().unwrap();

    let dir = tempfile::tempdir().unwrap();
    let cert_path = dir.path().join("cert.json");
    let graph = cayley_core::cayley::cayley_graph("cyclic:6", "1,5").unwrap();
    let cert: RegularCertificate = prop1_certificate(&graph).unwrap();
    let mut file = CertificateFile::from(&cert);
    let mut images: Vec<usize> = file.elements[1].images().to_vec();
    images.swap(0, 1);
    file.elements[1] = cayley_core::perm::Permutation::from_images(images).unwrap();
    std::fs::write(&cert_path, file.to_json().unwrap()).unwrap();
    let corrupted = cayley().arg("prop1").arg("--check").arg(&cert_path).output().unwrap();
    let malformed = cayley().args(["build", "--group", "cyclic:x6"]).output().unwrap();

    let ok = first == second
        && first == lib_out
        && lines == 8
        && summary.records == 8
        && summary.failures == 0
        && k4 == "C~"
        && String::from_utf8_lossy(&k4_cli.stdout).trim() == "C~"
        && corrupted.status.code() == Some(1)
        && malformed.status.code() == Some(2);
    report(
        8,
        ok,
        format!(
            "{lines} identical census lines; K4 graph6 {k4:?}; corrupted certificate exit {:?}; malformed spec exit {:?}",
            corrupted.status.code(),
            malformed.status.code()
        ),
    );
}
