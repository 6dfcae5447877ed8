//! Acceptance criteria, one line each. All comparisons are exact.

mod common;

use std::sync::Arc;
use std::time::{Duration, Instant};

use finhtop::homology::poset_homology;
use finhtop::io::to_json;
use finhtop::models::{sphere_pushout, w_poset};
use finhtop::reduction::{
    collapse_search, core, reduces_to_point, replay_removal_sequence, triviality_oracle, RemovalSequence,
};
use finhtop::simplicial::{lift_barycentric, lift_face_poset_op};
use finhtop::verify::*;
use finhtop::{Budget, FinitePoset, PosetDiagram, PosetMap, Triviality};

use common::{betti_mod_p, trimmed};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

/// Posets met along the way, for the oracle consistency criterion.
#[derive(Default)]
struct Seen(Vec<FinitePoset>);

impl Seen {
    fn add(&mut self, p: FinitePoset) {
        self.0.push(p);
    }
}

fn budget() -> Budget {
    Budget::default()
}

fn w_facts(seen: &mut Seen) -> Outcome {
    let w = w_poset();
    let (c, _) = core(&w).unwrap();
    let collapse = collapse_search(&w, &budget()).unwrap();
    let collapses = collapse.as_ref().is_some_and(|s| reduces_to_point(&w, s).unwrap());
    let profile = poset_homology(&w).unwrap();
    let acyclic = profile.betti == vec![1] && profile.torsion.iter().all(|t| t.is_empty());
    let oracle = betti_mod_p(&w) == vec![1];
    seen.add(w);
    outcome(
        c.len() == 11 && collapses && acyclic && oracle,
        format!(
            "core size {}, collapse {}, H = {:?}",
            c.len(),
            collapse.map_or("none".into(), |s| format!("{} steps", s.len())),
            profile.betti
        ),
    )
}

fn mapping_cylinders(seen: &mut Seen, reports: &mut Vec<CheckReport>) -> Outcome {
    let mut ok = 0;
    for seed in 0..50 {
        let f = random_map(6, 1000 + seed);
        let d = PosetDiagram::from_map(&f);
        let r = check_maximum(&d).unwrap();
        if r.is_verified() && r.evidence.removals["hocolim"].all_beat() {
            ok += 1;
        }
        seen.add(d.hocolim());
        reports.push(r);
    }
    outcome(ok == 50, format!("{ok}/50 verified with all-beat sequences"))
}

fn thomason(seen: &mut Seen, reports: &mut Vec<CheckReport>) -> Outcome {
    let start = Instant::now();
    let mut ok = 0;
    for seed in 0..100 {
        let d = random_diagram(4, 4, 2000 + seed);
        let r = check_thomason_roundtrip(&d).unwrap();
        let h = d.hocolim();
        let lifted = &r.evidence.profiles["face posets of order complexes"];
        if r.is_verified() && trimmed(&lifted.betti) == betti_mod_p(&h) {
            ok += 1;
        }
        seen.add(h);
        reports.push(r);
    }
    let elapsed = start.elapsed();
    outcome(
        ok == 100 && elapsed < Duration::from_secs(120),
        format!("{ok}/100 equal profiles in {:.1}s", elapsed.as_secs_f64()),
    )
}

fn sphere(seen: &mut Seen) -> Outcome {
    let h = sphere_pushout().hocolim();
    let profile = poset_homology(&h).unwrap();
    let independent = betti_mod_p(&h);
    let pass = h.len() == 6 && profile.betti == vec![1, 0, 1] && independent == vec![1, 0, 1];
    seen.add(h);
    outcome(pass, format!("betti {:?}, prime-field oracle {:?}", profile.betti, independent))
}

/// Replays `seq` one step at a time, comparing homology after each step.
fn steps_keep_homology(p: &FinitePoset, seq: &RemovalSequence, target: &[u64]) -> bool {
    (1..=seq.len()).all(|k| {
        let prefix = RemovalSequence::new(seq.steps[..k].to_vec());
        match replay_removal_sequence(p, &prefix).unwrap() {
            Some(rest) => betti_mod_p(&rest) == target,
            None => false,
        }
    })
}

fn reduction_soundness(seen: &mut Seen) -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for seed in 0..200u64 {
        let n = 1 + (seed as usize % 12);
        let p = random_poset(n, 0.15 + (seed % 7) as f64 * 0.1, 3000 + seed);
        let target = betti_mod_p(&p);
        let mut sequences = vec![core(&p).unwrap().1];
        if let Some(s) = collapse_search(&p, &budget()).unwrap() {
            sequences.push(s);
        }
        if let Triviality::Trivial { removals } = triviality_oracle(&p, &budget()) {
            sequences.push(removals);
        }
        for s in &sequences {
            checked += s.len();
            if !steps_keep_homology(&p, s, &target) {
                bad.push(seed);
            }
        }
        seen.add(p);
    }
    outcome(bad.is_empty(), format!("{checked} removal steps checked, failing seeds {bad:?}"))
}

fn cofinality(seen: &mut Seen, reports: &mut Vec<CheckReport>) -> Outcome {
    let single = Arc::new(FinitePoset::chain(1));
    let mut inputs = vec![CheckInput::Cofinality(CofinalityInput {
        map: PosetMap::constant(Arc::new(w_poset()), single.clone(), "0").unwrap(),
        diagram: PosetDiagram::constant(single, Arc::new(random_poset(4, 0.3, 7))).unwrap(),
    })];
    inputs.extend((0..49).map(|i| random_instance(TheoremId::Cofinality, 4000 + i)));
    let mut ok = 0;
    for input in &inputs {
        let r = run_check(TheoremId::Cofinality, input, &budget()).unwrap();
        let CheckInput::Cofinality(c) = input else { unreachable!() };
        let h = c.diagram.hocolim();
        let hp = finhtop::Diagram::pullback(&c.map, &c.diagram).unwrap().hocolim();
        if r.hypothesis_established() && r.is_verified() && betti_mod_p(&h) == betti_mod_p(&hp) {
            ok += 1;
        }
        seen.add(h);
        seen.add(hp);
        for q in 0..c.map.target().len() {
            seen.add(c.map.preimage_of_up_set(q));
        }
        reports.push(r);
    }
    outcome(ok == 50, format!("{ok}/50 established and equal (W over a point included)"))
}

fn barycentric_invariance(seen: &mut Seen, reports: &mut Vec<CheckReport>) -> Outcome {
    let mut ok = 0;
    for seed in 0..30 {
        let c = random_complex_diagram(3, 4, 5000 + seed);
        let r = check_barycentric(&c).unwrap();
        let chi = c.fibers().iter().all(|k| {
            let sd = finhtop::simplicial::barycentric(k).unwrap();
            let alternating = |fv: Vec<usize>| fv.iter().enumerate().map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) }).sum::<i64>();
            alternating(sd.f_vector()) == alternating(k.f_vector())
        });
        if r.is_verified() && chi {
            ok += 1;
        }
        seen.add(lift_face_poset_op(&c).unwrap().hocolim());
        seen.add(lift_face_poset_op(&lift_barycentric(&c).unwrap()).unwrap().hocolim());
        reports.push(r);
    }
    outcome(ok == 30, format!("{ok}/30 equal profiles with fiberwise Euler characteristic kept"))
}

fn oracle_consistency(seen: &Seen) -> Outcome {
    let mut trivial = 0;
    let mut nontrivial = 0;
    let mut bad = 0;
    let mut largest = 0;
    for p in &seen.0 {
        largest = largest.max(p.len());
        let profile = poset_homology(p).unwrap();
        let acyclic = profile.betti == vec![1] && profile.torsion.iter().all(|t| t.is_empty());
        match triviality_oracle(p, &budget()) {
            Triviality::Trivial { removals } => {
                trivial += 1;
                if !acyclic || !reduces_to_point(p, &removals).unwrap() {
                    bad += 1;
                }
            }
            Triviality::NonTrivial { .. } => {
                nontrivial += 1;
                let (c, _) = core(p).unwrap();
                let collapses = collapse_search(p, &budget()).unwrap().is_some();
                if c.len() == 1 || collapses {
                    bad += 1;
                }
            }
            Triviality::Unknown { .. } => {}
        }
    }
    outcome(
        bad == 0,
        format!(
            "{} posets up to {largest} elements: {trivial} trivial, {nontrivial} non-trivial, {bad} inconsistent",
            seen.0.len()
        ),
    )
}

fn determinism(first: &[CheckReport]) -> Outcome {
    let mut again = Vec::new();
    let mut seen = Seen::default();
    mapping_cylinders(&mut seen, &mut again);
    thomason(&mut seen, &mut again);
    cofinality(&mut seen, &mut again);
    barycentric_invariance(&mut seen, &mut again);
    let suite_a = to_json(&run_all(3, 11, &budget()).unwrap());
    let suite_b = to_json(&run_all(3, 11, &budget()).unwrap());
    let same = to_json(first) == to_json(&again) && suite_a == suite_b;
    outcome(same, format!("{} criterion reports and the full suite compared byte for byte", first.len()))
}

fn main() {
    let mut seen = Seen::default();
    let mut reports = Vec::new();
    let mut results = vec![("1 W poset facts", w_facts(&mut seen))];
    results.push(("2 mapping cylinders collapse", mapping_cylinders(&mut seen, &mut reports)));
    results.push(("3 Thomason round trip", thomason(&mut seen, &mut reports)));
    results.push(("4 pushout sphere", sphere(&mut seen)));
    results.push(("5 reduction soundness", reduction_soundness(&mut seen)));
    results.push(("6 cofinality", cofinality(&mut seen, &mut reports)));
    results.push(("7 barycentric invariance", barycentric_invariance(&mut seen, &mut reports)));
    results.push(("8 oracle consistency", oracle_consistency(&seen)));
    results.push(("9 determinism", determinism(&reports)));
    for (name, o) in &results {
        println!("[{}] {name} (exact): {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    let failed: Vec<&str> = results.iter().filter(|(_, o)| !o.pass).map(|(n, _)| *n).collect();
    println!("acceptance: {} of {} criteria passed", results.len() - failed.len(), results.len());
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
