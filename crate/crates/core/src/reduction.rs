//! Beat points, weak points, γ-points and the homotopical-triviality oracle.
//!
//! All searches run on a fixed base poset with a bitset of surviving
//! elements, so intermediate subposets are never materialized. Scan order is
//! the base poset's linear extension.

use std::collections::{HashMap, HashSet};
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::{poset_homology, HomologyProfile};
use crate::poset::FinitePoset;

pub const DEFAULT_STATE_BUDGET: usize = 100_000;
pub const DEFAULT_GAMMA_DEPTH: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RemovalKind {
    UpBeat,
    DownBeat,
    UpWeak,
    DownWeak,
    GammaUp,
    GammaDown,
}

impl RemovalKind {
    pub fn is_beat(self) -> bool {
        matches!(self, RemovalKind::UpBeat | RemovalKind::DownBeat)
    }

    pub fn is_up(self) -> bool {
        matches!(self, RemovalKind::UpBeat | RemovalKind::UpWeak | RemovalKind::GammaUp)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            RemovalKind::UpBeat => "up-beat",
            RemovalKind::DownBeat => "down-beat",
            RemovalKind::UpWeak => "up-weak",
            RemovalKind::DownWeak => "down-weak",
            RemovalKind::GammaUp => "gamma-up",
            RemovalKind::GammaDown => "gamma-down",
        }
    }
}

impl fmt::Display for RemovalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One removal. γ steps carry a witness: a sequence reducing the strict
/// up/down set of the element to a single point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RemovalStep {
    pub element: String,
    pub kind: RemovalKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<RemovalSequence>,
}

impl RemovalStep {
    pub fn new(element: impl Into<String>, kind: RemovalKind) -> Self {
        RemovalStep {
            element: element.into(),
            kind,
            witness: None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RemovalSequence {
    pub steps: Vec<RemovalStep>,
}

impl RemovalSequence {
    pub fn new(steps: Vec<RemovalStep>) -> Self {
        RemovalSequence { steps }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn all_beat(&self) -> bool {
        self.steps.iter().all(|s| s.kind.is_beat())
    }

    pub fn extend(&mut self, other: RemovalSequence) {
        self.steps.extend(other.steps);
    }

    pub fn elements(&self) -> impl Iterator<Item = &str> {
        self.steps.iter().map(|s| s.element.as_str())
    }
}

/// Search limits: visited states (shared across nested searches) and the
/// nesting depth of γ-point checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub states: usize,
    pub gamma_depth: usize,
}

impl Budget {
    pub fn new(states: usize) -> Self {
        Budget {
            states,
            ..Budget::default()
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            states: DEFAULT_STATE_BUDGET,
            gamma_depth: DEFAULT_GAMMA_DEPTH,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum NonTrivialCertificate {
    Empty,
    ReducedHomology { degree: usize, profile: HomologyProfile },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub states_visited: usize,
    pub state_budget: usize,
    pub gamma_depth: usize,
    pub exhausted: bool,
}

/// Verdict of the triviality oracle, with evidence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Triviality {
    Trivial { removals: RemovalSequence },
    NonTrivial { certificate: NonTrivialCertificate },
    Unknown { report: SearchReport },
}

impl Triviality {
    pub fn is_trivial(&self) -> bool {
        matches!(self, Triviality::Trivial { .. })
    }

    pub fn is_non_trivial(&self) -> bool {
        matches!(self, Triviality::NonTrivial { .. })
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Triviality::Unknown { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Triviality::Trivial { .. } => "trivial",
            Triviality::NonTrivial { .. } => "non-trivial",
            Triviality::Unknown { .. } => "unknown",
        }
    }
}

impl fmt::Display for Triviality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Triviality::Trivial { removals } => {
                write!(f, "trivial ({} removals", removals.len())?;
                if removals.all_beat() {
                    write!(f, ", all beat")?;
                }
                write!(f, ")")
            }
            Triviality::NonTrivial { certificate: NonTrivialCertificate::Empty } => {
                write!(f, "non-trivial (empty)")
            }
            Triviality::NonTrivial {
                certificate: NonTrivialCertificate::ReducedHomology { degree, .. },
            } => write!(f, "non-trivial (reduced H_{degree} is nonzero)"),
            Triviality::Unknown { report } => write!(
                f,
                "unknown ({} of {} states visited, gamma depth {})",
                report.states_visited, report.state_budget, report.gamma_depth
            ),
        }
    }
}

type Steps = Vec<(usize, RemovalKind, Option<RemovalSequence>)>;

enum Search {
    Found,
    NotFound,
    OutOfBudget,
}

/// Working state over one base poset.
pub(crate) struct Engine<'a> {
    p: &'a FinitePoset,
    order: Vec<usize>,
    pos: Vec<usize>,
    contractible: HashMap<FixedBitSet, bool>,
    verdicts: HashMap<(FixedBitSet, usize), Triviality>,
    state_budget: usize,
    used: usize,
}

impl<'a> Engine<'a> {
    pub(crate) fn new(p: &'a FinitePoset, state_budget: usize) -> Self {
        Self::with_order(p, p.linear_extension_indices(), state_budget)
    }

    fn with_order(p: &'a FinitePoset, order: Vec<usize>, state_budget: usize) -> Self {
        // positions in a linear extension, independent of the scan order
        let mut pos = vec![0; p.len()];
        for (i, x) in p.linear_extension_indices().into_iter().enumerate() {
            pos[x] = i;
        }
        Engine {
            p,
            order,
            pos,
            contractible: HashMap::new(),
            verdicts: HashMap::new(),
            state_budget,
            used: 0,
        }
    }

    pub(crate) fn all(&self) -> FixedBitSet {
        let mut b = FixedBitSet::with_capacity(self.p.len());
        b.insert_range(..);
        b
    }

    pub(crate) fn strict_up(&self, alive: &FixedBitSet, x: usize) -> FixedBitSet {
        let mut s = self.p.up_bits(x).clone();
        s.intersect_with(alive);
        s.set(x, false);
        s
    }

    pub(crate) fn strict_down(&self, alive: &FixedBitSet, x: usize) -> FixedBitSet {
        let mut s = self.p.down_bits(x).clone();
        s.intersect_with(alive);
        s.set(x, false);
        s
    }

    /// `F̂_x` has a minimum. The minimum, if any, comes first in scan order.
    pub(crate) fn is_up_beat(&self, alive: &FixedBitSet, x: usize) -> bool {
        let s = self.strict_up(alive, x);
        let Some(m) = s.ones().min_by_key(|&y| self.pos[y]) else {
            return false;
        };
        self.p.up_bits(m).intersection_count(alive) == s.count_ones(..)
    }

    pub(crate) fn is_down_beat(&self, alive: &FixedBitSet, x: usize) -> bool {
        let s = self.strict_down(alive, x);
        let Some(m) = s.ones().max_by_key(|&y| self.pos[y]) else {
            return false;
        };
        self.p.down_bits(m).intersection_count(alive) == s.count_ones(..)
    }

    fn beat_kind(&self, alive: &FixedBitSet, x: usize) -> Option<RemovalKind> {
        if self.is_up_beat(alive, x) {
            Some(RemovalKind::UpBeat)
        } else if self.is_down_beat(alive, x) {
            Some(RemovalKind::DownBeat)
        } else {
            None
        }
    }

    /// Greedy beat-point removal: always the first beat point in scan order.
    /// Removing `x` can only change the status of elements comparable to `x`,
    /// so other elements keep their cached "not beat" mark.
    pub(crate) fn core(&self, alive: &FixedBitSet) -> (FixedBitSet, Vec<(usize, RemovalKind)>) {
        let mut alive = alive.clone();
        let mut settled = FixedBitSet::with_capacity(self.p.len());
        let mut steps = Vec::new();
        if alive.count_ones(..) <= 1 {
            return (alive, steps);
        }
        loop {
            let mut found = None;
            for &x in &self.order {
                if !alive.contains(x) || settled.contains(x) {
                    continue;
                }
                if let Some(kind) = self.beat_kind(&alive, x) {
                    found = Some((x, kind));
                    break;
                }
                settled.insert(x);
            }
            let Some((x, kind)) = found else { break };
            alive.set(x, false);
            steps.push((x, kind));
            if alive.count_ones(..) == 1 {
                break;
            }
            settled.difference_with(self.p.up_bits(x));
            settled.difference_with(self.p.down_bits(x));
        }
        (alive, steps)
    }

    /// Empty sets are not contractible.
    pub(crate) fn is_contractible(&mut self, set: &FixedBitSet) -> bool {
        match set.count_ones(..) {
            0 => return false,
            1 => return true,
            _ => {}
        }
        if let Some(&v) = self.contractible.get(set) {
            return v;
        }
        let v = self.core(set).0.count_ones(..) == 1;
        self.contractible.insert(set.clone(), v);
        v
    }

    fn weak_kind(&mut self, alive: &FixedBitSet, x: usize) -> Option<RemovalKind> {
        if let Some(kind) = self.beat_kind(alive, x) {
            return Some(kind);
        }
        if self.is_contractible(&self.strict_up(alive, x)) {
            return Some(RemovalKind::UpWeak);
        }
        if self.is_contractible(&self.strict_down(alive, x)) {
            return Some(RemovalKind::DownWeak);
        }
        None
    }

    /// Oracle on `Û_x` first, then `F̂_x`. Returns the step when either side
    /// is trivial, plus whether both sides were certified non-trivial.
    fn gamma_check(
        &mut self,
        alive: &FixedBitSet,
        x: usize,
        depth: usize,
    ) -> (Option<(RemovalKind, RemovalSequence)>, Triviality, Triviality) {
        let down = self.oracle(&self.strict_down(alive, x), depth);
        if let Triviality::Trivial { removals } = &down {
            return (Some((RemovalKind::GammaDown, removals.clone())), down.clone(), down);
        }
        let up = self.oracle(&self.strict_up(alive, x), depth);
        if let Triviality::Trivial { removals } = &up {
            return (Some((RemovalKind::GammaUp, removals.clone())), down, up.clone());
        }
        (None, down, up)
    }

    pub(crate) fn to_sequence(&self, steps: impl IntoIterator<Item = (usize, RemovalKind, Option<RemovalSequence>)>) -> RemovalSequence {
        RemovalSequence::new(
            steps
                .into_iter()
                .map(|(x, kind, witness)| RemovalStep {
                    element: self.p.name(x).to_string(),
                    kind,
                    witness,
                })
                .collect(),
        )
    }

    /// Depth-first search over removals reaching a single point. Moves are
    /// tried beat points first, then weak points, then (if `gamma_depth > 0`)
    /// γ-points, each group in scan order.
    fn search(&mut self, start: &FixedBitSet, gamma_depth: usize) -> (Search, Steps) {
        let mut visited = HashSet::new();
        let mut path = Vec::new();
        let outcome = self.dfs(start.clone(), gamma_depth, &mut visited, &mut path);
        (outcome, path)
    }

    fn dfs(
        &mut self,
        state: FixedBitSet,
        gamma_depth: usize,
        visited: &mut HashSet<FixedBitSet>,
        path: &mut Steps,
    ) -> Search {
        if state.count_ones(..) == 1 {
            return Search::Found;
        }
        if visited.contains(&state) {
            return Search::NotFound;
        }
        if self.used >= self.state_budget {
            return Search::OutOfBudget;
        }
        self.used += 1;
        visited.insert(state.clone());
        let candidates: Vec<usize> = self.order.iter().copied().filter(|&x| state.contains(x)).collect();
        for phase in 0..3 {
            if phase == 2 && gamma_depth == 0 {
                break;
            }
            for &x in &candidates {
                let step = match phase {
                    0 => self.beat_kind(&state, x).map(|k| (k, None)),
                    1 => match self.weak_kind(&state, x) {
                        Some(k) if !k.is_beat() => Some((k, None)),
                        _ => None,
                    },
                    _ => {
                        if self.weak_kind(&state, x).is_some() {
                            None
                        } else {
                            self.gamma_check(&state, x, gamma_depth - 1)
                                .0
                                .map(|(k, w)| (k, Some(w)))
                        }
                    }
                };
                let Some((kind, witness)) = step else { continue };
                let mut next = state.clone();
                next.set(x, false);
                if visited.contains(&next) {
                    continue;
                }
                path.push((x, kind, witness));
                match self.dfs(next, gamma_depth, visited, path) {
                    Search::Found => return Search::Found,
                    Search::OutOfBudget => return Search::OutOfBudget,
                    Search::NotFound => {
                        path.pop();
                    }
                }
                if self.used >= self.state_budget {
                    return Search::OutOfBudget;
                }
            }
        }
        Search::NotFound
    }

    pub(crate) fn collapse(&mut self, alive: &FixedBitSet) -> Option<RemovalSequence> {
        match self.search(alive, 0) {
            (Search::Found, steps) => Some(self.to_sequence(steps)),
            _ => None,
        }
    }

    /// Layered oracle on the subposet `alive`.
    pub(crate) fn oracle(&mut self, alive: &FixedBitSet, gamma_depth: usize) -> Triviality {
        let key = (alive.clone(), gamma_depth);
        if let Some(v) = self.verdicts.get(&key) {
            return v.clone();
        }
        let v = self.oracle_uncached(alive, gamma_depth);
        self.verdicts.insert(key, v.clone());
        v
    }

    fn oracle_uncached(&mut self, alive: &FixedBitSet, gamma_depth: usize) -> Triviality {
        if alive.count_ones(..) == 0 {
            return Triviality::NonTrivial {
                certificate: NonTrivialCertificate::Empty,
            };
        }
        let (core, core_steps) = self.core(alive);
        let mut removals = self.to_sequence(core_steps.into_iter().map(|(x, k)| (x, k, None)));
        if core.count_ones(..) == 1 {
            return Triviality::Trivial { removals };
        }
        let profile = poset_homology(&self.p.induced(&core)).expect("core is nonempty");
        if let Some(degree) = profile.first_nonzero_reduced_degree() {
            return Triviality::NonTrivial {
                certificate: NonTrivialCertificate::ReducedHomology { degree, profile },
            };
        }
        let mut exhausted = false;
        let depths: &[usize] = if gamma_depth == 0 { &[0] } else { &[0, gamma_depth] };
        for &depth in depths {
            match self.search(&core, depth) {
                (Search::Found, steps) => {
                    removals.extend(self.to_sequence(steps));
                    return Triviality::Trivial { removals };
                }
                (Search::OutOfBudget, _) => {
                    exhausted = true;
                    break;
                }
                (Search::NotFound, _) => {}
            }
        }
        Triviality::Unknown {
            report: SearchReport {
                states_visited: self.used,
                state_budget: self.state_budget,
                gamma_depth,
                exhausted,
            },
        }
    }

    /// Replays `steps` from `alive`; `None` if some step does not have its
    /// claimed kind at the moment of removal.
    pub(crate) fn replay(&mut self, alive: &FixedBitSet, seq: &RemovalSequence) -> Result<Option<FixedBitSet>> {
        let mut alive = alive.clone();
        for step in &seq.steps {
            let x = self.p.index_of(&step.element)?;
            if !alive.contains(x) {
                return Ok(None);
            }
            let ok = match step.kind {
                RemovalKind::UpBeat => self.is_up_beat(&alive, x),
                RemovalKind::DownBeat => self.is_down_beat(&alive, x),
                RemovalKind::UpWeak => self.is_contractible(&self.strict_up(&alive, x)),
                RemovalKind::DownWeak => self.is_contractible(&self.strict_down(&alive, x)),
                RemovalKind::GammaUp | RemovalKind::GammaDown => {
                    let strict = if step.kind == RemovalKind::GammaUp {
                        self.strict_up(&alive, x)
                    } else {
                        self.strict_down(&alive, x)
                    };
                    match &step.witness {
                        Some(w) => matches!(self.replay(&strict, w)?, Some(rest) if rest.count_ones(..) == 1),
                        None => false,
                    }
                }
            };
            if !ok {
                return Ok(None);
            }
            alive.set(x, false);
        }
        Ok(Some(alive))
    }
}

fn bits_of(p: &FinitePoset, x: &str) -> Result<usize> {
    p.index_of(x)
}

pub fn is_up_beat(p: &FinitePoset, x: &str) -> Result<bool> {
    let i = bits_of(p, x)?;
    let e = Engine::new(p, 0);
    Ok(e.is_up_beat(&e.all(), i))
}

pub fn is_down_beat(p: &FinitePoset, x: &str) -> Result<bool> {
    let i = bits_of(p, x)?;
    let e = Engine::new(p, 0);
    Ok(e.is_down_beat(&e.all(), i))
}

pub fn is_beat_point(p: &FinitePoset, x: &str) -> Result<bool> {
    Ok(is_up_beat(p, x)? || is_down_beat(p, x)?)
}

/// `F̂_x` is contractible (never true for maximal `x`).
pub fn is_up_weak(p: &FinitePoset, x: &str) -> Result<bool> {
    let i = bits_of(p, x)?;
    let mut e = Engine::new(p, 0);
    let s = e.strict_up(&e.all(), i);
    Ok(e.is_contractible(&s))
}

/// `Û_x` is contractible (never true for minimal `x`).
pub fn is_down_weak(p: &FinitePoset, x: &str) -> Result<bool> {
    let i = bits_of(p, x)?;
    let mut e = Engine::new(p, 0);
    let s = e.strict_down(&e.all(), i);
    Ok(e.is_contractible(&s))
}

pub fn is_weak_point(p: &FinitePoset, x: &str) -> Result<bool> {
    Ok(is_up_weak(p, x)? || is_down_weak(p, x)?)
}

/// Removes the first beat point in scan order until none is left.
pub fn core(p: &FinitePoset) -> Result<(FinitePoset, RemovalSequence)> {
    if p.is_empty() {
        return Err(Error::EmptyPoset);
    }
    core_with_scan_order(p, &p.linear_extension_indices())
}

/// [`core`] with an explicit scan order (a permutation of element indices).
pub fn core_with_scan_order(p: &FinitePoset, order: &[usize]) -> Result<(FinitePoset, RemovalSequence)> {
    if p.is_empty() {
        return Err(Error::EmptyPoset);
    }
    let mut seen = FixedBitSet::with_capacity(p.len());
    for &x in order {
        if x >= p.len() || seen.put(x) {
            return Err(Error::DomainMismatch("scan order is not a permutation".into()));
        }
    }
    if order.len() != p.len() {
        return Err(Error::DomainMismatch("scan order is not a permutation".into()));
    }
    let e = Engine::with_order(p, order.to_vec(), 0);
    let (rest, steps) = e.core(&e.all());
    let seq = e.to_sequence(steps.into_iter().map(|(x, k)| (x, k, None)));
    Ok((p.induced(&rest), seq))
}

pub fn is_contractible(p: &FinitePoset) -> Result<bool> {
    Ok(core(p)?.0.len() == 1)
}

/// Searches for a sequence of weak-point removals reducing `p` to a point.
/// `None` means no sequence was found within the budget.
pub fn collapse_search(p: &FinitePoset, budget: &Budget) -> Result<Option<RemovalSequence>> {
    if p.is_empty() {
        return Err(Error::EmptyPoset);
    }
    let mut e = Engine::new(p, budget.states);
    let all = e.all();
    Ok(e.collapse(&all))
}

pub fn triviality_oracle(p: &FinitePoset, budget: &Budget) -> Triviality {
    let mut e = Engine::new(p, budget.states);
    let all = e.all();
    e.oracle(&all, budget.gamma_depth)
}

/// Oracle on `Û_x`, then on `F̂_x`. Trivial evidence is the reduction of the
/// trivial side; NonTrivial only if both sides are.
pub fn is_gamma_point(p: &FinitePoset, x: &str, budget: &Budget) -> Result<Triviality> {
    let i = bits_of(p, x)?;
    let mut e = Engine::new(p, budget.states);
    let all = e.all();
    let (found, down, up) = e.gamma_check(&all, i, budget.gamma_depth);
    Ok(match found {
        Some((_, removals)) => Triviality::Trivial { removals },
        None if down.is_non_trivial() && up.is_non_trivial() => down,
        None => {
            if down.is_unknown() {
                down
            } else {
                up
            }
        }
    })
}

/// The γ-removal step for `x`, if the oracle certifies one side.
pub fn gamma_step(p: &FinitePoset, x: &str, budget: &Budget) -> Result<Option<RemovalStep>> {
    let i = bits_of(p, x)?;
    let mut e = Engine::new(p, budget.states);
    let all = e.all();
    Ok(e.gamma_check(&all, i, budget.gamma_depth).0.map(|(kind, w)| RemovalStep {
        element: x.to_string(),
        kind,
        witness: Some(w),
    }))
}

/// True iff every step has its claimed kind when it is removed.
pub fn verify_removal_sequence(p: &FinitePoset, seq: &RemovalSequence) -> Result<bool> {
    Ok(replay_removal_sequence(p, seq)?.is_some())
}

/// Replays `seq` and returns what is left, or `None` if a step is invalid.
pub fn replay_removal_sequence(p: &FinitePoset, seq: &RemovalSequence) -> Result<Option<FinitePoset>> {
    let mut e = Engine::new(p, 0);
    let all = e.all();
    Ok(e.replay(&all, seq)?.map(|rest| p.induced(&rest)))
}

/// True iff `seq` replays and leaves exactly one point.
pub fn reduces_to_point(p: &FinitePoset, seq: &RemovalSequence) -> Result<bool> {
    Ok(replay_removal_sequence(p, seq)?.is_some_and(|rest| rest.len() == 1))
}

#[cfg(test)]
pub(crate) mod fixtures {
    pub use crate::models::w_poset;
}
