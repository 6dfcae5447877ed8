use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::IndexedRandom;
use rand::Rng;
use rayon::prelude::*;

use super::random::{cone_from, complex_from, complex_diagram_from, diagram_from, monotone_from, seeded, small_poset};
use super::{run_check, CheckInput, CheckReport, CofinalityInput, TheoremId};
use crate::diagram::{ComplexDiagram, Diagram, DiagramMorphism, PosetDiagram};
use crate::error::Result;
use crate::models::{circle, circle_to_point, point, sphere_pushout, triangle_boundary, w_poset, edge};
use crate::poset::{FinitePoset, PosetMap};
use crate::reduction::Budget;

/// Seed of instance `i` of `theorem` in a suite run with base `seed`.
pub fn instance_seed(theorem: TheoremId, seed: u64, i: usize) -> u64 {
    let t = TheoremId::ALL.iter().position(|&x| x == theorem).expect("listed") as u64;
    splitmix(splitmix(seed ^ t.wrapping_mul(0xA24B_AED4_963E_E407)) ^ i as u64)
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A seeded instance of `theorem` whose hypothesis is planted to hold
/// (barring oracle limits).
pub fn random_instance(theorem: TheoremId, seed: u64) -> CheckInput {
    let rng = &mut seeded(seed);
    match theorem {
        TheoremId::Ubp => planted_up_beat(rng, 4, 5),
        TheoremId::Maximum => {
            if rng.random_bool(0.5) {
                let source = Arc::new(small_poset(rng, 6));
                let target = Arc::new(small_poset(rng, 6));
                diagram(PosetDiagram::from_map(&monotone_from(rng, source, target)), None, None)
            } else {
                let index = Arc::new(cone_from(rng, 3));
                diagram(diagram_from(rng, index, 4), None, None)
            }
        }
        TheoremId::Homotopy => {
            let index = Arc::new(small_poset(rng, 3));
            let d = diagram_from(rng, index, 3);
            let factor = if rng.random_bool(0.5) { FinitePoset::chain(2) } else { cone_from(rng, 2) };
            CheckInput::Morphism {
                morphism: projection_morphism(&d, &factor),
            }
        }
        TheoremId::Dbp => {
            let factor = cone_from(rng, 3);
            planted_down_beat(rng, &factor)
        }
        TheoremId::Dbpgen => {
            let factor = if rng.random_bool(0.5) { w_poset() } else { cone_from(rng, 3) };
            planted_down_beat(rng, &factor)
        }
        TheoremId::UpWp => {
            if rng.random_bool(0.5) {
                let index = Arc::new(with_bottom(&w_poset(), "b"));
                diagram(diagram_from(rng, index, 3), Some("b"), None)
            } else {
                planted_up_beat(rng, 4, 4)
            }
        }
        TheoremId::Cofinality => random_cofinality(rng),
        TheoremId::Thomason => {
            let index = Arc::new(small_poset(rng, 4));
            diagram(diagram_from(rng, index, 4), None, None)
        }
        TheoremId::Barycentric => CheckInput::Complexes {
            diagram: {
                let index = Arc::new(small_poset(rng, 3));
                complex_diagram_from(rng, index, 4)
            },
        },
        TheoremId::IndexContractible => {
            let index = Arc::new(cone_from(rng, 3));
            let v = rng.random_range(1..=4);
            complexes(Diagram::constant(index, Arc::new(complex_from(rng, v))).expect("constant diagram"))
        }
        TheoremId::GammaIndex => {
            let v = rng.random_range(1..=3);
            complexes(Diagram::constant(Arc::new(w_poset()), Arc::new(complex_from(rng, v))).expect("constant diagram"))
        }
    }
}

fn diagram(d: PosetDiagram, point: Option<&str>, dominator: Option<&str>) -> CheckInput {
    CheckInput::Diagram {
        diagram: d,
        point: point.map(str::to_string),
        dominator: dominator.map(str::to_string),
    }
}

fn complexes(d: ComplexDiagram) -> CheckInput {
    CheckInput::Complexes { diagram: d }
}

/// `P` with a new element below everything.
fn with_bottom(p: &FinitePoset, bottom: &str) -> FinitePoset {
    let mut names = p.elements().to_vec();
    let mut relation: Vec<(String, String)> = p.cover_names().map(|(a, b)| (a.into(), b.into())).collect();
    relation.extend(names.iter().map(|x| (bottom.to_string(), x.clone())));
    names.push(bottom.into());
    FinitePoset::new(&names, &relation).expect("adding a bottom")
}

/// Random index plus a point `u` whose only upper cover is a random `t`.
fn planted_up_beat(rng: &mut impl Rng, index_size: usize, fiber_size: usize) -> CheckInput {
    let base = small_poset(rng, index_size);
    let t = base.elements().choose(rng).expect("nonempty").clone();
    let mut names = base.elements().to_vec();
    let mut relation: Vec<(String, String)> = base.cover_names().map(|(a, b)| (a.into(), b.into())).collect();
    relation.push(("u".into(), t));
    names.push("u".into());
    let index = Arc::new(FinitePoset::new(&names, &relation).expect("planted index"));
    diagram(diagram_from(rng, index, fiber_size), Some("u"), None)
}

fn product_map(f: &PosetMap, source: Arc<FinitePoset>, target: Arc<FinitePoset>, m: usize) -> PosetMap {
    let a = (0..source.len()).map(|k| f.apply_idx(k / m) * m + k % m).collect();
    PosetMap::from_indices(source, target, a).expect("product of monotone maps")
}

fn projection(source: Arc<FinitePoset>, target: Arc<FinitePoset>, m: usize) -> PosetMap {
    let a = (0..source.len()).map(|k| k / m).collect();
    PosetMap::from_indices(source, target, a).expect("projection")
}

/// `α: D × C → D` with projection components.
pub fn projection_morphism(d: &PosetDiagram, factor: &FinitePoset) -> DiagramMorphism {
    let m = factor.len();
    let index = d.index().clone();
    let fibers: Vec<Arc<FinitePoset>> = d.fibers().iter().map(|x| Arc::new(x.product(factor))).collect();
    let transitions: Vec<_> = d
        .transitions()
        .filter(|(&(p, q), _)| p != q)
        .map(|(&(p, q), f)| ((p, q), product_map(f, fibers[p].clone(), fibers[q].clone(), m)))
        .collect();
    let source = Diagram::new(index, fibers.clone(), transitions).expect("product diagram");
    let components = (0..fibers.len())
        .map(|p| projection(fibers[p].clone(), d.fiber(p).clone(), m))
        .collect();
    DiagramMorphism::new(source, d.clone(), components).expect("projections are natural")
}

/// Random index with `q` inserted just below a random `p`, so that `p` is a
/// down beat point dominated by `q`; `X_q = X_p × C` with `f_qp` the projection.
fn planted_down_beat(rng: &mut impl Rng, factor: &FinitePoset) -> CheckInput {
    let base = Arc::new(small_poset(rng, 3));
    let d0 = diagram_from(rng, base.clone(), 3);
    let n0 = base.len();
    let p = rng.random_range(0..n0);
    let mut names = base.elements().to_vec();
    names.push("q".into());
    let mut relation: Vec<(usize, usize)> = base.covers().to_vec();
    relation.push((n0, p));
    relation.extend(base.down_bits(p).ones().filter(|&s| s != p).map(|s| (s, n0)));
    let rel_names: Vec<(&str, &str)> = relation.iter().map(|&(a, b)| (names[a].as_str(), names[b].as_str())).collect();
    let index = Arc::new(FinitePoset::new(&names, &rel_names).expect("planted index"));
    let m = factor.len();
    let c0 = rng.random_range(0..m);
    let xq = Arc::new(d0.fiber(p).product(factor));
    let mut fibers = d0.fibers().to_vec();
    fibers.push(xq.clone());
    let mut transitions: BTreeMap<(usize, usize), PosetMap> = d0
        .transitions()
        .filter(|(&(a, b), _)| a != b)
        .map(|(&k, f)| (k, f.clone()))
        .collect();
    let proj = projection(xq.clone(), d0.fiber(p).clone(), m);
    for r in base.up_bits(p).ones() {
        let f = if r == p { proj.clone() } else { proj.then(d0.transition(p, r).expect("related")).expect("composable") };
        transitions.insert((n0, r), f);
    }
    for s in base.down_bits(p).ones().filter(|&s| s != p) {
        let f = d0.transition(s, p).expect("related");
        let a = (0..f.source().len()).map(|x| f.apply_idx(x) * m + c0).collect();
        transitions.insert((s, n0), PosetMap::from_indices(d0.fiber(s).clone(), xq.clone(), a).expect("section"));
    }
    let d = Diagram::new(index, fibers, transitions).expect("planted diagram");
    let pname = base.name(p).to_string();
    diagram(d, Some(&pname), Some("q"))
}

fn single_fiber(fiber: FinitePoset) -> PosetDiagram {
    let index = Arc::new(point("*"));
    Diagram::new(index, vec![Arc::new(fiber)], []).expect("one fiber")
}

fn random_cofinality(rng: &mut impl Rng) -> CheckInput {
    let (map, d) = match rng.random_range(0..4) {
        0 => {
            let index = Arc::new(small_poset(rng, 4));
            let d = diagram_from(rng, index, 4);
            (PosetMap::identity(d.index().clone()), d)
        }
        1 => {
            let d = single_fiber(small_poset(rng, 4));
            let p = Arc::new(cone_from(rng, 4));
            (PosetMap::constant(p, d.index().clone(), "*").expect("constant"), d)
        }
        2 => {
            let d = single_fiber(small_poset(rng, 4));
            (PosetMap::constant(Arc::new(w_poset()), d.index().clone(), "*").expect("constant"), d)
        }
        _ => {
            let q = Arc::new(small_poset(rng, 3));
            let d = diagram_from(rng, q.clone(), 3);
            let c = FinitePoset::chain(2);
            let p = Arc::new(q.product(&c));
            (projection(p, q, c.len()), d)
        }
    };
    CheckInput::Cofinality(CofinalityInput { map, diagram: d })
}

/// Named hand-built instances of `theorem`, including ones whose hypothesis fails.
pub fn examples(theorem: TheoremId) -> Vec<(String, CheckInput)> {
    let chain2 = || Arc::new(FinitePoset::chain(2));
    let circle_over = |index: Arc<FinitePoset>| {
        Diagram::constant(index, Arc::new(circle())).expect("constant diagram")
    };
    let s1_to_pt = || PosetDiagram::from_map(&circle_to_point());
    let named = |s: &str, i: CheckInput| (s.to_string(), i);
    match theorem {
        TheoremId::Ubp => vec![
            named("cylinder S1 -> pt, remove 0", diagram(s1_to_pt(), Some("0"), None)),
            named("cylinder S1 -> pt, remove 1", diagram(s1_to_pt(), Some("1"), None)),
        ],
        TheoremId::Maximum => {
            let chain3 = Arc::new(FinitePoset::chain(3));
            let s = Arc::new(circle());
            let pt = Arc::new(point("*"));
            let d = Diagram::new(
                chain3,
                vec![s.clone(), s.clone(), pt.clone()],
                [
                    ((0, 1), PosetMap::identity(s.clone())),
                    ((1, 2), PosetMap::constant(s, pt, "*").expect("constant")),
                ],
            )
            .expect("chain diagram");
            vec![
                named("cylinder S1 -> pt", diagram(s1_to_pt(), None, None)),
                named("chain of three, contractible top", diagram(d, None, None)),
                named("sphere pushout", diagram(sphere_pushout(), None, None)),
            ]
        }
        TheoremId::Homotopy => vec![
            named("identity on the sphere pushout", CheckInput::Morphism {
                morphism: DiagramMorphism::identity(sphere_pushout()),
            }),
            named("projection from sphere pushout x chain(2)", CheckInput::Morphism {
                morphism: projection_morphism(&sphere_pushout(), &FinitePoset::chain(2)),
            }),
        ],
        TheoremId::Dbp => vec![
            named("identity transition", diagram(circle_over(chain2()), Some("1"), Some("0"))),
            named("S1 -> pt", diagram(s1_to_pt(), Some("1"), Some("0"))),
        ],
        TheoremId::Dbpgen => {
            let w = Arc::new(w_poset());
            let u = Arc::new(point("u"));
            let v = Arc::new(point("v"));
            let index = sphere_pushout().index().clone();
            let d = Diagram::new(
                index,
                vec![w.clone(), u.clone(), v.clone()],
                [
                    ((0, 1), PosetMap::constant(w.clone(), u, "u").expect("constant")),
                    ((0, 2), PosetMap::constant(w, v, "v").expect("constant")),
                ],
            )
            .expect("pushout of W");
            vec![
                named("pt <- W -> pt", diagram(d, Some("1"), Some("0"))),
                named("sphere pushout", diagram(sphere_pushout(), Some("1"), Some("0"))),
                named("identity transition", diagram(circle_over(chain2()), Some("1"), Some("0"))),
            ]
        }
        TheoremId::UpWp => {
            let wb = Arc::new(with_bottom(&w_poset(), "b"));
            let circle_index = Arc::new(with_bottom(&circle(), "z"));
            vec![
                named("W with a bottom, constant circle", diagram(circle_over(wb), Some("b"), None)),
                named("circle with a bottom", diagram(circle_over(circle_index), Some("z"), None)),
                named("cylinder S1 -> pt", diagram(s1_to_pt(), Some("0"), None)),
            ]
        }
        TheoremId::Cofinality => {
            let s = single_fiber(circle());
            vec![
                named("identity", CheckInput::Cofinality(CofinalityInput {
                    map: PosetMap::identity(sphere_pushout().index().clone()),
                    diagram: sphere_pushout(),
                })),
                named("W onto a point", CheckInput::Cofinality(CofinalityInput {
                    map: PosetMap::constant(Arc::new(w_poset()), s.index().clone(), "*").expect("constant"),
                    diagram: s.clone(),
                })),
                named("circle onto a point", CheckInput::Cofinality(CofinalityInput {
                    map: PosetMap::constant(Arc::new(circle()), s.index().clone(), "*").expect("constant"),
                    diagram: s,
                })),
            ]
        }
        TheoremId::Thomason => vec![
            named("constant point", diagram(single_fiber(point("x")), None, None)),
            named("sphere pushout", diagram(sphere_pushout(), None, None)),
        ],
        TheoremId::Barycentric => vec![
            named("constant edge", complexes(Diagram::constant(chain2(), Arc::new(edge())).expect("constant"))),
            named(
                "identity on the triangle boundary",
                complexes(Diagram::constant(chain2(), Arc::new(triangle_boundary())).expect("constant")),
            ),
        ],
        TheoremId::IndexContractible => vec![
            named(
                "chain of three, triangle boundary",
                complexes(Diagram::constant(Arc::new(FinitePoset::chain(3)), Arc::new(triangle_boundary())).expect("constant")),
            ),
            named(
                "W index",
                complexes(Diagram::constant(Arc::new(w_poset()), Arc::new(triangle_boundary())).expect("constant")),
            ),
        ],
        TheoremId::GammaIndex => vec![
            named(
                "W index, triangle boundary",
                complexes(Diagram::constant(Arc::new(w_poset()), Arc::new(triangle_boundary())).expect("constant")),
            ),
            named(
                "circle index",
                complexes(Diagram::constant(Arc::new(circle()), Arc::new(edge())).expect("constant")),
            ),
        ],
    }
}

/// Checks `n` seeded random instances of `theorem`. Instances may run
/// concurrently; reports come back in instance order.
pub fn run_suite(theorem: TheoremId, n: usize, seed: u64, budget: &Budget) -> Result<Vec<CheckReport>> {
    (0..n)
        .into_par_iter()
        .map(|i| {
            let s = instance_seed(theorem, seed, i);
            let mut report = run_check(theorem, &random_instance(theorem, s), budget)?;
            report.instance = Some(format!("random #{i} (seed {s})"));
            Ok(report)
        })
        .collect()
}

/// Checks every hand-built example of `theorem`.
pub fn run_examples(theorem: TheoremId, budget: &Budget) -> Result<Vec<CheckReport>> {
    examples(theorem)
        .into_par_iter()
        .map(|(label, input)| {
            let mut report = run_check(theorem, &input, budget)?;
            report.instance = Some(label);
            Ok(report)
        })
        .collect()
}

/// Examples and `n` random instances of every theorem.
pub fn run_all(n: usize, seed: u64, budget: &Budget) -> Result<Vec<CheckReport>> {
    let mut all = Vec::new();
    for theorem in TheoremId::ALL {
        all.extend(run_examples(theorem, budget)?);
        all.extend(run_suite(theorem, n, seed, budget)?);
    }
    Ok(all)
}

/// Counts of verified, refuted and skipped reports.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct Tally {
    pub verified: usize,
    pub refuted: usize,
    pub skipped: usize,
}

pub fn tally(reports: &[CheckReport]) -> Tally {
    let mut t = Tally::default();
    for r in reports {
        match r.conclusion {
            super::ConclusionStatus::Verified => t.verified += 1,
            super::ConclusionStatus::Refuted => t.refuted += 1,
            super::ConclusionStatus::Skipped => t.skipped += 1,
        }
    }
    t
}
