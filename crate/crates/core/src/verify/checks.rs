use std::sync::Arc;

use fixedbitset::FixedBitSet;

use super::{
    certify_weak_equivalence, hocolim_profile, CheckInput, CheckReport, CofinalityInput, TheoremId,
    WeakEquivalence,
};
use crate::diagram::{ComplexDiagram, Diagram, DiagramMorphism, PosetDiagram};
use crate::error::{Error, Result};
use crate::homology::{homology_profile, HomologyProfile};
use crate::poset::{FinitePoset, PosetMap};
use crate::reduction::{
    core, is_contractible, triviality_oracle, verify_removal_sequence, Budget, Engine, RemovalKind,
    RemovalSequence, RemovalStep, Triviality,
};
use crate::simplicial::{
    barycentric, face_poset_map, face_poset_op_map, lift_barycentric, lift_face_poset_op, lift_order_complex,
    preimage_poset,
};

/// Which property each removed hocolim point must have.
#[derive(Clone, Copy)]
enum Mode {
    UpBeat,
    DownWeak,
    GammaUp(usize),
}

/// Removes whole fibers from a homotopy colimit, checking each point.
struct Replay<'a> {
    diagram: &'a PosetDiagram,
    hocolim: &'a FinitePoset,
    engine: Engine<'a>,
    alive: FixedBitSet,
    steps: Vec<RemovalStep>,
    unconfirmed: usize,
}

impl<'a> Replay<'a> {
    fn new(diagram: &'a PosetDiagram, hocolim: &'a FinitePoset, states: usize) -> Self {
        let engine = Engine::new(hocolim, states);
        let alive = engine.all();
        Replay {
            diagram,
            hocolim,
            engine,
            alive,
            steps: Vec::new(),
            unconfirmed: 0,
        }
    }

    /// Removes fiber `p` point by point in `order` (fiber indices).
    fn remove_fiber(&mut self, p: usize, order: &[usize], mode: Mode) -> std::result::Result<(), String> {
        for &x in order {
            let e = self.diagram.element_position(p, x);
            let name = self.hocolim.name(e).to_string();
            let step = match mode {
                Mode::UpBeat => self
                    .engine
                    .is_up_beat(&self.alive, e)
                    .then(|| RemovalStep::new(&name, RemovalKind::UpBeat)),
                Mode::DownWeak => {
                    if self.engine.is_down_beat(&self.alive, e) {
                        Some(RemovalStep::new(&name, RemovalKind::DownBeat))
                    } else {
                        let s = self.engine.strict_down(&self.alive, e);
                        self.engine
                            .is_contractible(&s)
                            .then(|| RemovalStep::new(&name, RemovalKind::DownWeak))
                    }
                }
                Mode::GammaUp(depth) => {
                    let s = self.engine.strict_up(&self.alive, e);
                    if self.engine.is_up_beat(&self.alive, e) {
                        Some(RemovalStep::new(&name, RemovalKind::UpBeat))
                    } else if self.engine.is_contractible(&s) {
                        Some(RemovalStep::new(&name, RemovalKind::UpWeak))
                    } else {
                        match self.engine.oracle(&s, depth) {
                            Triviality::Trivial { removals } => Some(RemovalStep {
                                element: name.clone(),
                                kind: RemovalKind::GammaUp,
                                witness: Some(removals),
                            }),
                            Triviality::NonTrivial { .. } => None,
                            Triviality::Unknown { .. } => {
                                self.unconfirmed += 1;
                                Some(RemovalStep::new(&name, RemovalKind::GammaUp))
                            }
                        }
                    }
                }
            };
            match step {
                Some(s) => self.steps.push(s),
                None => {
                    let claim = match mode {
                        Mode::UpBeat => "an up beat point",
                        Mode::DownWeak => "a down weak point",
                        Mode::GammaUp(_) => "an up gamma point",
                    };
                    return Err(format!("`{name}` is not {claim} when its turn comes"));
                }
            }
            self.alive.set(e, false);
        }
        Ok(())
    }

    fn remainder(&self) -> FinitePoset {
        self.hocolim.induced(&self.alive)
    }

    fn sequence(&self) -> RemovalSequence {
        RemovalSequence::new(self.steps.clone())
    }

    /// Replays the recorded sequence independently from the full hocolim.
    fn replays(&self) -> Result<bool> {
        if self.unconfirmed > 0 {
            return Ok(true);
        }
        verify_removal_sequence(self.hocolim, &self.sequence())
    }
}

fn diagram_input(d: &PosetDiagram, point: Option<&str>, dominator: Option<&str>) -> CheckInput {
    CheckInput::Diagram {
        diagram: d.clone(),
        point: point.map(str::to_string),
        dominator: dominator.map(str::to_string),
    }
}

fn up_order(fiber: &FinitePoset) -> Vec<usize> {
    fiber.opposite().linear_extension_indices()
}

fn record_profiles(r: &mut CheckReport, pairs: &[(&str, &FinitePoset)]) -> Vec<HomologyProfile> {
    pairs
        .iter()
        .map(|(key, p)| {
            let (profile, via_core) = hocolim_profile(p);
            if via_core {
                r.note(format!("homology of {key} computed on its core"));
            }
            r.profile(key, profile.clone());
            profile
        })
        .collect()
}

/// The element dominating the down beat point `p` (maximum of `Û_p`).
fn dominator_of(index: &FinitePoset, p: usize) -> Option<usize> {
    let mut strict = index.down_bits(p).clone();
    strict.set(p, false);
    let n = strict.count_ones(..);
    strict.ones().find(|&m| index.down_bits(m).intersection_count(&strict) == n)
}

/// Removing an up beat point `p` of the index collapses the hocolim onto the
/// hocolim of the restriction, fiber `p` leaving top-down, all beat points.
pub fn check_ubp(d: &PosetDiagram, p: &str) -> Result<CheckReport> {
    let index = d.index();
    let pi = index.index_of(p)?;
    let r = CheckReport::new(TheoremId::Ubp);
    if !crate::reduction::is_up_beat(index, p)? {
        return Ok(r.not_established(format!("`{p}` is not an up beat point of the index")));
    }
    let mut r = r;
    let h = d.hocolim();
    let mut rep = Replay::new(d, &h, 0);
    let steps = rep.remove_fiber(pi, &up_order(d.fiber(pi)), Mode::UpBeat);
    if let Err(e) = &steps {
        r.note(e.clone());
    }
    let rest = d.without(pi).hocolim();
    let same = rep.remainder().same_order(&rest);
    if !same {
        r.note("remainder differs from the hocolim of the restriction");
    }
    let replays = rep.replays()?;
    let profiles = record_profiles(&mut r, &[("hocolim", &h), ("restricted", &rest)]);
    r.evidence.removals.insert("hocolim".into(), rep.sequence());
    let holds = steps.is_ok() && same && replays && profiles[0] == profiles[1];
    Ok(r.conclude(holds, || diagram_input(d, Some(p), None)))
}

/// An index with a maximum `m`: the hocolim collapses onto `X_m` through
/// beat points only, removing index points top-down.
pub fn check_maximum(d: &PosetDiagram) -> Result<CheckReport> {
    let index = d.index();
    let mut r = CheckReport::new(TheoremId::Maximum);
    let Some(m) = index.maximum() else {
        return Ok(r.not_established("the index has no maximum"));
    };
    let h = d.hocolim();
    let mut rep = Replay::new(d, &h, 0);
    let index_engine = Engine::new(index, 0);
    let mut index_alive = index_engine.all();
    let mut ok = true;
    for p in index.opposite().linear_extension_indices() {
        if p == m {
            continue;
        }
        if !index_engine.is_up_beat(&index_alive, p) {
            r.note(format!("`{}` is not an up beat point of the remaining index", index.name(p)));
            ok = false;
            break;
        }
        if let Err(e) = rep.remove_fiber(p, &up_order(d.fiber(p)), Mode::UpBeat) {
            r.note(e);
            ok = false;
            break;
        }
        index_alive.set(p, false);
    }
    let top = d.fiber(m).as_ref();
    let top_named = d.restrict(&[index.name(m)])?.hocolim();
    let same = ok && rep.remainder().same_order(&top_named);
    let seq = rep.sequence();
    let all_beat = seq.all_beat();
    let replays = rep.replays()?;
    let profiles = record_profiles(&mut r, &[("hocolim", &h), ("top fiber", top)]);
    let mut contractible_ok = true;
    if is_contractible(top)? {
        contractible_ok = is_contractible(&h)?;
        r.note(format!(
            "top fiber is contractible; hocolim is {}contractible",
            if contractible_ok { "" } else { "not " }
        ));
    }
    r.evidence.removals.insert("hocolim".into(), seq);
    let holds = ok && same && all_beat && replays && profiles[0] == profiles[1] && contractible_ok;
    Ok(r.conclude(holds, || diagram_input(d, None, None)))
}

/// Fiberwise weak equivalences give equal hocolim homology. Components are
/// certified through preimages of basic opens.
pub fn check_homotopy_lemma(alpha: &DiagramMorphism, budget: &Budget) -> Result<CheckReport> {
    let mut r = CheckReport::new(TheoremId::Homotopy);
    r.evidence.necessary_condition_only = true;
    let index = alpha.source().index();
    let mut uncertain = None;
    for (p, c) in alpha.components().iter().enumerate() {
        match certify_weak_equivalence(c, budget) {
            WeakEquivalence::Certified => {}
            WeakEquivalence::ProfilesDiffer { .. } => {
                return Ok(r.not_established(format!(
                    "component at `{}` changes homology",
                    index.name(p)
                )));
            }
            WeakEquivalence::Uncertain { locus } => {
                uncertain.get_or_insert(format!("component at `{}`, preimage over `{locus}`", index.name(p)));
            }
        }
    }
    if let Some(locus) = uncertain {
        return Ok(r.oracle_unknown(locus));
    }
    let map_ok = alpha.hocolim_map().is_ok();
    let (hs, ht) = (alpha.source().hocolim(), alpha.target().hocolim());
    let profiles = record_profiles(&mut r, &[("source hocolim", &hs), ("target hocolim", &ht)]);
    let holds = map_ok && profiles[0] == profiles[1];
    Ok(r.conclude(holds, || CheckInput::Morphism {
        morphism: alpha.clone(),
    }))
}

/// Shared hypothesis check of the two down beat point results. Returns the
/// indices of `p` and its dominator, or the reason for rejection.
fn dominated(d: &PosetDiagram, p: &str, q: Option<&str>) -> Result<std::result::Result<(usize, usize), String>> {
    let index = d.index();
    let pi = index.index_of(p)?;
    if let Some(q) = q {
        index.index_of(q)?;
    }
    if !crate::reduction::is_down_beat(index, p)? {
        return Ok(Err(format!("`{p}` is not a down beat point of the index")));
    }
    let qi = dominator_of(index, pi).expect("down beat points are dominated");
    if let Some(q) = q {
        if q != index.name(qi) {
            return Ok(Err(format!("`{p}` is dominated by `{}`, not `{q}`", index.name(qi))));
        }
    }
    Ok(Ok((pi, qi)))
}

/// A down beat point `p` dominated by `q` with contractible `f_qp⁻¹(U_x)`:
/// fiber `p` leaves bottom-up through down weak points.
pub fn check_dbp(d: &PosetDiagram, p: &str, q: Option<&str>) -> Result<CheckReport> {
    let mut r = CheckReport::new(TheoremId::Dbp);
    let (pi, qi) = match dominated(d, p, q)? {
        Ok(v) => v,
        Err(reason) => return Ok(r.not_established(reason)),
    };
    let f = d.transition(qi, pi).expect("related pair");
    let fiber = d.fiber(pi);
    for x in 0..fiber.len() {
        let pre = f.preimage_of_down_set(x);
        if pre.is_empty() || !is_contractible(&pre)? {
            return Ok(r.not_established(format!(
                "preimage of U_{} under the transition is not contractible",
                fiber.name(x)
            )));
        }
    }
    r.note(format!("`{p}` is dominated by `{}`", d.index().name(qi)));
    let h = d.hocolim();
    let mut rep = Replay::new(d, &h, 0);
    let steps = rep.remove_fiber(pi, &fiber.linear_extension_indices(), Mode::DownWeak);
    if let Err(e) = &steps {
        r.note(e.clone());
    }
    let rest = d.without(pi).hocolim();
    let same = rep.remainder().same_order(&rest);
    let replays = rep.replays()?;
    let profiles = record_profiles(&mut r, &[("hocolim", &h), ("restricted", &rest)]);
    r.evidence.removals.insert("hocolim".into(), rep.sequence());
    let holds = steps.is_ok() && same && replays && profiles[0] == profiles[1];
    Ok(r.conclude(holds, || diagram_input(d, Some(p), q)))
}

/// A down beat point `p` dominated by `q` with `f_qp` a weak equivalence.
/// Builds the morphism `γ: (ir)*X → X` of the argument and compares homology.
pub fn check_dbpgen(d: &PosetDiagram, p: &str, q: Option<&str>, budget: &Budget) -> Result<CheckReport> {
    let mut r = CheckReport::new(TheoremId::Dbpgen);
    r.evidence.necessary_condition_only = true;
    let (pi, qi) = match dominated(d, p, q)? {
        Ok(v) => v,
        Err(reason) => return Ok(r.not_established(reason)),
    };
    let f = d.transition(qi, pi).expect("related pair").clone();
    match certify_weak_equivalence(&f, budget) {
        WeakEquivalence::Certified => {}
        WeakEquivalence::ProfilesDiffer { .. } => {
            return Ok(r.not_established("the transition changes homology, so it is not a weak equivalence"));
        }
        WeakEquivalence::Uncertain { locus } => {
            return Ok(r.oracle_unknown(format!("transition preimage over `{locus}`")));
        }
    }
    let index = d.index().clone();
    let assignment: Vec<usize> = (0..index.len()).map(|i| if i == pi { qi } else { i }).collect();
    let ir = PosetMap::from_indices(index.clone(), index.clone(), assignment)?;
    let pulled = Diagram::pullback(&ir, d)?;
    let components = (0..index.len())
        .map(|i| {
            if i == pi {
                f.clone()
            } else {
                PosetMap::identity(d.fiber(i).clone())
            }
        })
        .collect();
    let natural = match DiagramMorphism::new(pulled.clone(), d.clone(), components) {
        Ok(_) => {
            r.note("the retraction morphism (ir)*X -> X is natural");
            true
        }
        Err(e) => {
            r.note(format!("the retraction morphism is not natural: {e}"));
            false
        }
    };
    let (h, hp, rest) = (d.hocolim(), pulled.hocolim(), d.without(pi).hocolim());
    let profiles = record_profiles(
        &mut r,
        &[("hocolim", &h), ("pulled back along ir", &hp), ("restricted", &rest)],
    );
    let holds = natural && profiles[0] == profiles[1] && profiles[0] == profiles[2];
    Ok(r.conclude(holds, || diagram_input(d, Some(p), q)))
}

/// `F̂_p` homotopically trivial: fiber `p` leaves top-down through γ-points.
pub fn check_up_wp(d: &PosetDiagram, p: &str, budget: &Budget) -> Result<CheckReport> {
    let index = d.index();
    let pi = index.index_of(p)?;
    let mut r = CheckReport::new(TheoremId::UpWp);
    match triviality_oracle(&index.strict_up_set(p)?, budget) {
        Triviality::Trivial { removals } => {
            r.evidence.removals.insert("index strict up-set".into(), removals);
        }
        Triviality::NonTrivial { .. } => {
            return Ok(r.not_established(format!("the strict up-set of `{p}` is not homotopically trivial")));
        }
        Triviality::Unknown { .. } => {
            return Ok(r.oracle_unknown(format!("strict up-set of `{p}`")));
        }
    }
    let h = d.hocolim();
    let mut rep = Replay::new(d, &h, budget.states);
    let steps = rep.remove_fiber(pi, &up_order(d.fiber(pi)), Mode::GammaUp(budget.gamma_depth));
    if let Err(e) = &steps {
        r.note(e.clone());
    }
    if rep.unconfirmed > 0 {
        r.note(format!("{} removals not confirmed by the oracle within budget", rep.unconfirmed));
        r.evidence.necessary_condition_only = true;
    }
    let rest = d.without(pi).hocolim();
    let same = rep.remainder().same_order(&rest);
    let replays = rep.replays()?;
    let profiles = record_profiles(&mut r, &[("hocolim", &h), ("restricted", &rest)]);
    r.evidence.removals.insert("hocolim".into(), rep.sequence());
    let holds = steps.is_ok() && same && replays && profiles[0] == profiles[1];
    Ok(r.conclude(holds, || diagram_input(d, Some(p), None)))
}

/// Pullback along `φ` with homotopically trivial `φ⁻¹(F_q)` preserves the
/// hocolim. Also builds the mixed poset `R` on `Q ⨿ P` and replays both
/// removal phases of the argument.
pub fn check_cofinality(phi: &PosetMap, d: &PosetDiagram, budget: &Budget) -> Result<CheckReport> {
    if phi.target().as_ref() != d.index().as_ref() {
        return Err(Error::DomainMismatch("the map does not land in the index poset".into()));
    }
    let input = || {
        CheckInput::Cofinality(CofinalityInput {
            map: phi.clone(),
            diagram: d.clone(),
        })
    };
    let mut r = CheckReport::new(TheoremId::Cofinality);
    let q_poset = d.index();
    let mut nontrivial = Vec::new();
    let mut unknown = Vec::new();
    for q in 0..q_poset.len() {
        let name = q_poset.name(q);
        match triviality_oracle(&phi.preimage_of_up_set(q), budget) {
            Triviality::Trivial { removals } => {
                r.evidence.removals.insert(format!("preimage of F_{name}"), removals);
            }
            Triviality::NonTrivial { .. } => nontrivial.push(name.to_string()),
            Triviality::Unknown { .. } => unknown.push(name.to_string()),
        }
    }
    if !nontrivial.is_empty() {
        return Ok(r.not_established(format!(
            "preimage of F_q is not homotopically trivial for q in [{}]",
            nontrivial.join(", ")
        )));
    }
    if !unknown.is_empty() {
        return Ok(r.oracle_unknown(format!("preimages of F_q for q in [{}]", unknown.join(", "))));
    }
    let canonical = PosetDiagram::canonical_map(phi, d).is_ok();
    let pulled = Diagram::pullback(phi, d)?;
    let (hp, h) = (pulled.hocolim(), d.hocolim());
    let profiles = record_profiles(&mut r, &[("pullback hocolim", &hp), ("hocolim", &h)]);
    let replay = cofinality_replay(phi, d, &hp, &h, budget, &mut r)?;
    let holds = canonical && replay && profiles[0] == profiles[1];
    Ok(r.conclude(holds, input))
}

fn cofinality_replay(
    phi: &PosetMap,
    d: &PosetDiagram,
    pulled_hocolim: &FinitePoset,
    hocolim: &FinitePoset,
    budget: &Budget,
    r: &mut CheckReport,
) -> Result<bool> {
    let (q_poset, p_poset) = (d.index(), phi.source());
    let (nq, np) = (q_poset.len(), p_poset.len());
    let mut names: Vec<String> = q_poset.elements().iter().map(|q| format!("Q:{q}")).collect();
    names.extend(p_poset.elements().iter().map(|p| format!("P:{p}")));
    if names.iter().any(|n| n.contains(crate::diagram::SEPARATOR)) {
        r.note("mixed poset not built: identifiers contain the reserved separator");
        return Ok(true);
    }
    let mut relation: Vec<(String, String)> = Vec::new();
    for &(a, b) in q_poset.covers() {
        relation.push((names[a].clone(), names[b].clone()));
    }
    for &(a, b) in p_poset.covers() {
        relation.push((names[nq + a].clone(), names[nq + b].clone()));
    }
    for q in 0..nq {
        for p in 0..np {
            if q_poset.leq_idx(q, phi.apply_idx(p)) {
                relation.push((names[q].clone(), names[nq + p].clone()));
            }
        }
    }
    let mixed = Arc::new(FinitePoset::new(&names, &relation)?);
    let image = |i: usize| if i < nq { i } else { phi.apply_idx(i - nq) };
    let fibers = (0..nq + np).map(|i| d.fiber(image(i)).clone()).collect();
    let mut transitions = Vec::new();
    for a in 0..nq + np {
        for b in mixed.up_bits(a).ones() {
            let t = d.transition(image(a), image(b)).expect("related images").clone();
            transitions.push(((a, b), t));
        }
    }
    let tilde = Diagram::new(mixed.clone(), fibers, transitions)?;
    let ht = tilde.hocolim();

    // up phase: remove Q top-down; each strict up-set is φ⁻¹(F_q) in P
    let mut ok = true;
    let mut rep = Replay::new(&tilde, &ht, budget.states);
    let mut index_alive = FixedBitSet::with_capacity(nq + np);
    index_alive.insert_range(..);
    for q in q_poset.opposite().linear_extension_indices() {
        let mut strict = mixed.up_bits(q).clone();
        strict.intersect_with(&index_alive);
        strict.set(q, false);
        let expected: Vec<usize> = (0..np)
            .filter(|&p| q_poset.leq_idx(q, phi.apply_idx(p)))
            .map(|p| nq + p)
            .collect();
        if strict.ones().collect::<Vec<_>>() != expected {
            r.note(format!("strict up-set of {} in R is not the preimage of its up-set", names[q]));
            ok = false;
            break;
        }
        if let Err(e) = rep.remove_fiber(q, &up_order(tilde.fiber(q)), Mode::GammaUp(budget.gamma_depth)) {
            r.note(format!("R up phase: {e}"));
            ok = false;
            break;
        }
        index_alive.set(q, false);
    }
    if ok {
        let rest = rep.remainder().relabel(|n| n.strip_prefix("P:").unwrap_or(n).to_string())?;
        if !rest.same_order(pulled_hocolim) {
            r.note("R up phase does not end at the pullback hocolim");
            ok = false;
        }
        if rep.unconfirmed > 0 {
            r.note(format!("R up phase: {} removals not confirmed within budget", rep.unconfirmed));
            r.evidence.necessary_condition_only = true;
        } else if !rep.replays()? {
            ok = false;
        }
    }
    r.evidence.removals.insert("R up phase".into(), rep.sequence());

    // down phase: remove P bottom-up; each p is a down beat point dominated by φ(p)
    let mut rep = Replay::new(&tilde, &ht, 0);
    let index_engine = Engine::new(&mixed, 0);
    let mut index_alive = index_engine.all();
    for p in p_poset.linear_extension_indices() {
        let i = nq + p;
        let mut strict = index_engine.strict_down(&index_alive, i);
        let dominating = strict
            .ones()
            .find(|&m| mixed.down_bits(m).intersection_count(&strict) == strict.count_ones(..));
        if dominating != Some(phi.apply_idx(p)) {
            r.note(format!("{} is not dominated by the image of its point", names[i]));
            ok = false;
            break;
        }
        strict.clear();
        if let Err(e) = rep.remove_fiber(i, &tilde.fiber(i).linear_extension_indices(), Mode::DownWeak) {
            r.note(format!("R down phase: {e}"));
            ok = false;
            break;
        }
        index_alive.set(i, false);
    }
    if ok {
        let rest = rep.remainder().relabel(|n| n.strip_prefix("Q:").unwrap_or(n).to_string())?;
        if !rest.same_order(hocolim) {
            r.note("R down phase does not end at the hocolim");
            ok = false;
        }
        ok &= rep.replays()?;
    }
    r.evidence.removals.insert("R down phase".into(), rep.sequence());
    Ok(ok)
}

/// `K(hocolim X)` and `K(hocolim (X K X)^op)` have the same homology.
pub fn check_thomason_roundtrip(d: &PosetDiagram) -> Result<CheckReport> {
    let mut r = CheckReport::new(TheoremId::Thomason);
    r.evidence.necessary_condition_only = true;
    let lifted = lift_face_poset_op(&lift_order_complex(d)?)?;
    let (a, b) = (d.hocolim(), lifted.hocolim());
    let profiles = record_profiles(&mut r, &[("hocolim", &a), ("face posets of order complexes", &b)]);
    Ok(r.conclude(profiles[0] == profiles[1], || diagram_input(d, None, None)))
}

/// Fiberwise barycentric subdivision keeps the hocolim homology (through
/// opposite face posets) and each fiber's Euler characteristic.
pub fn check_barycentric(c: &ComplexDiagram) -> Result<CheckReport> {
    let mut r = CheckReport::new(TheoremId::Barycentric);
    r.evidence.necessary_condition_only = true;
    let x = lift_face_poset_op(c)?;
    let y = lift_face_poset_op(&lift_barycentric(c)?)?;
    let mut chi_ok = true;
    for (p, k) in c.fibers().iter().enumerate() {
        if barycentric(k)?.euler_characteristic() != k.euler_characteristic() {
            r.note(format!("Euler characteristic changes on fiber `{}`", c.index().name(p)));
            chi_ok = false;
        }
    }
    if chi_ok {
        r.note("Euler characteristic preserved on every fiber");
    }
    let (a, b) = (x.hocolim(), y.hocolim());
    let profiles = record_profiles(&mut r, &[("hocolim", &a), ("subdivided hocolim", &b)]);
    Ok(r.conclude(chi_ok && profiles[0] == profiles[1], || CheckInput::Complexes {
        diagram: c.clone(),
    }))
}

fn complex_input(c: &ComplexDiagram) -> CheckInput {
    CheckInput::Complexes { diagram: c.clone() }
}

/// Over a dismantlable index with transitions that are weak equivalences, the
/// hocolim has the homology of any fiber.
pub fn check_index_contractible(c: &ComplexDiagram, budget: &Budget) -> Result<CheckReport> {
    let mut r = CheckReport::new(TheoremId::IndexContractible);
    r.evidence.necessary_condition_only = true;
    let index = c.index();
    if !is_contractible(index)? {
        return Ok(r.not_established("the index is not dismantlable"));
    }
    let mut uncertain = None;
    for &(p, q) in index.covers() {
        let f = face_poset_map(c.transition(p, q).expect("cover"))?;
        match certify_weak_equivalence(&f, budget) {
            WeakEquivalence::Certified => {}
            WeakEquivalence::ProfilesDiffer { .. } => {
                return Ok(r.not_established(format!(
                    "transition {}->{} changes homology",
                    index.name(p),
                    index.name(q)
                )));
            }
            WeakEquivalence::Uncertain { locus } => {
                uncertain.get_or_insert(format!("transition {}->{} over `{locus}`", index.name(p), index.name(q)));
            }
        }
    }
    if let Some(locus) = uncertain {
        return Ok(r.oracle_unknown(locus));
    }
    let y = lift_face_poset_op(c)?;
    let (_, seq) = core(index)?;
    let mut ok = true;
    let mut current = y.clone();
    for step in &seq.steps {
        let pi = current.index().index_of(&step.element)?;
        if step.kind == RemovalKind::UpBeat {
            let sub = check_ubp(&current, &step.element)?;
            if !sub.is_verified() {
                r.note(format!("removing index point `{}` did not collapse", step.element));
                ok = false;
            }
        } else {
            let rest = current.without(pi);
            if hocolim_profile(&current.hocolim()).0 != hocolim_profile(&rest.hocolim()).0 {
                r.note(format!("removing index point `{}` changes homology", step.element));
                ok = false;
            }
        }
        current = current.without(pi);
    }
    r.evidence.removals.insert("index".into(), seq);
    let h = y.hocolim();
    let (hp, via_core) = hocolim_profile(&h);
    if via_core {
        r.note("homology of hocolim computed on its core");
    }
    r.profile("hocolim", hp.clone());
    let fiber = homology_profile(c.fiber(0))?;
    r.profile("fiber", fiber.clone());
    Ok(r.conclude(ok && hp == fiber, || complex_input(c)))
}

/// Over an index reducible to a point by γ-point removals, with transitions
/// passing the combinatorial contractible-mapping test, the hocolim has the
/// homology of any fiber.
pub fn check_gamma_index(c: &ComplexDiagram, budget: &Budget) -> Result<CheckReport> {
    let mut r = CheckReport::new(TheoremId::GammaIndex);
    r.evidence.necessary_condition_only = true;
    let index = c.index();
    let removals = match triviality_oracle(index, budget) {
        Triviality::Trivial { removals } => removals,
        Triviality::NonTrivial { .. } => {
            return Ok(r.not_established("the index is not homotopically trivial"));
        }
        Triviality::Unknown { .. } => return Ok(r.oracle_unknown("index")),
    };
    let mut uncertain = None;
    for (&(p, q), f) in c.transitions() {
        if p == q {
            continue;
        }
        let fop = face_poset_op_map(f)?;
        for sigma in fop.target().elements() {
            match triviality_oracle(&preimage_poset(&fop, sigma)?, budget) {
                Triviality::Trivial { .. } => {}
                Triviality::NonTrivial { .. } => {
                    return Ok(r.not_established(format!(
                        "transition {}->{} is not a contractible mapping at {sigma}",
                        index.name(p),
                        index.name(q)
                    )));
                }
                Triviality::Unknown { .. } => {
                    uncertain.get_or_insert(format!("transition {}->{} at {sigma}", index.name(p), index.name(q)));
                }
            }
        }
    }
    if let Some(locus) = uncertain {
        return Ok(r.oracle_unknown(locus));
    }
    let mut ok = verify_removal_sequence(index, &removals)?;
    let y = lift_face_poset_op(c)?;
    let mut current = y.clone();
    let mut before = hocolim_profile(&current.hocolim()).0;
    for step in &removals.steps {
        let pi = current.index().index_of(&step.element)?;
        current = current.without(pi);
        let after = hocolim_profile(&current.hocolim()).0;
        if after != before {
            r.note(format!("removing index point `{}` changes homology", step.element));
            ok = false;
        }
        before = after;
    }
    r.evidence.removals.insert("index".into(), removals);
    let h = y.hocolim();
    let (hp, via_core) = hocolim_profile(&h);
    if via_core {
        r.note("homology of hocolim computed on its core");
    }
    r.profile("hocolim", hp.clone());
    let fiber = homology_profile(c.fiber(0))?;
    r.profile("fiber", fiber.clone());
    Ok(r.conclude(ok && hp == fiber, || complex_input(c)))
}

/// Runs the checker for `theorem` on a parsed input.
pub fn run_check(theorem: TheoremId, input: &CheckInput, budget: &Budget) -> Result<CheckReport> {
    let start = std::time::Instant::now();
    let need_point = |point: &Option<String>| {
        point
            .clone()
            .ok_or_else(|| Error::Parse(format!("`{theorem}` needs an index point")))
    };
    let mismatch = || Error::Parse(format!("input kind does not fit `{theorem}`"));
    let mut report = match (theorem, input) {
        (TheoremId::Ubp, CheckInput::Diagram { diagram, point, .. }) => check_ubp(diagram, &need_point(point)?)?,
        (TheoremId::Maximum, CheckInput::Diagram { diagram, .. }) => check_maximum(diagram)?,
        (TheoremId::Homotopy, CheckInput::Morphism { morphism }) => check_homotopy_lemma(morphism, budget)?,
        (TheoremId::Dbp, CheckInput::Diagram { diagram, point, dominator }) => {
            check_dbp(diagram, &need_point(point)?, dominator.as_deref())?
        }
        (TheoremId::Dbpgen, CheckInput::Diagram { diagram, point, dominator }) => {
            check_dbpgen(diagram, &need_point(point)?, dominator.as_deref(), budget)?
        }
        (TheoremId::UpWp, CheckInput::Diagram { diagram, point, .. }) => {
            check_up_wp(diagram, &need_point(point)?, budget)?
        }
        (TheoremId::Cofinality, CheckInput::Cofinality(c)) => check_cofinality(&c.map, &c.diagram, budget)?,
        (TheoremId::Thomason, CheckInput::Diagram { diagram, .. }) => check_thomason_roundtrip(diagram)?,
        (TheoremId::Barycentric, CheckInput::Complexes { diagram }) => check_barycentric(diagram)?,
        (TheoremId::IndexContractible, CheckInput::Complexes { diagram }) => {
            check_index_contractible(diagram, budget)?
        }
        (TheoremId::GammaIndex, CheckInput::Complexes { diagram }) => check_gamma_index(diagram, budget)?,
        _ => return Err(mismatch()),
    };
    report.elapsed = start.elapsed();
    Ok(report)
}
