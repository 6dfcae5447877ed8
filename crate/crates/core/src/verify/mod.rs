//! Executable theorem checkers, seeded instance generators and the suite
//! runner.
//!
//! Every checker returns a [`CheckReport`]: whether the hypothesis could be
//! established, whether the conclusion held, and the evidence (removal
//! sequences replayed on the homotopy colimit, homology profiles). Weak
//! equivalences are only observable through homology here, and reports say
//! so through [`Evidence::necessary_condition_only`].

mod checks;
mod random;
mod suite;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::diagram::{ComplexDiagram, DiagramMorphism, PosetDiagram};
use crate::error::Error;
use crate::homology::{poset_homology, HomologyProfile};
use crate::poset::{FinitePoset, PosetMap};
use crate::reduction::{core, triviality_oracle, Budget, RemovalSequence};

pub use checks::*;
pub use random::*;
pub use suite::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremId {
    Ubp,
    Maximum,
    Homotopy,
    Dbp,
    Dbpgen,
    UpWp,
    Cofinality,
    Thomason,
    Barycentric,
    IndexContractible,
    GammaIndex,
}

impl TheoremId {
    pub const ALL: [TheoremId; 11] = [
        TheoremId::Ubp,
        TheoremId::Maximum,
        TheoremId::Homotopy,
        TheoremId::Dbp,
        TheoremId::Dbpgen,
        TheoremId::UpWp,
        TheoremId::Cofinality,
        TheoremId::Thomason,
        TheoremId::Barycentric,
        TheoremId::IndexContractible,
        TheoremId::GammaIndex,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::Ubp => "ubp",
            TheoremId::Maximum => "maximum",
            TheoremId::Homotopy => "homotopy",
            TheoremId::Dbp => "dbp",
            TheoremId::Dbpgen => "dbpgen",
            TheoremId::UpWp => "up-wp",
            TheoremId::Cofinality => "cofinality",
            TheoremId::Thomason => "thomason",
            TheoremId::Barycentric => "barycentric",
            TheoremId::IndexContractible => "index-contractible",
            TheoremId::GammaIndex => "gamma-index",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            TheoremId::Ubp => "removing an up beat point of the index collapses the hocolim",
            TheoremId::Maximum => "an index with a maximum collapses the hocolim onto the top fiber",
            TheoremId::Homotopy => "fiberwise weak equivalences induce a weak equivalence of hocolims",
            TheoremId::Dbp => "a dominated down beat point with contractible preimages can be removed",
            TheoremId::Dbpgen => "a dominated down beat point with a weak-equivalence transition can be removed",
            TheoremId::UpWp => "an index point with homotopically trivial strict up-set can be removed",
            TheoremId::Cofinality => "pullback along a map with trivial preimages of up-sets preserves the hocolim",
            TheoremId::Thomason => "order complexes then opposite face posets preserve the hocolim",
            TheoremId::Barycentric => "fiberwise barycentric subdivision preserves the hocolim",
            TheoremId::IndexContractible => "over a contractible index with equivalences, the hocolim is any fiber",
            TheoremId::GammaIndex => "over a gamma-reducible index with contractible mappings, the hocolim is any fiber",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown theorem id `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum HypothesisStatus {
    Established,
    NotEstablished { reason: String },
    OracleUnknown { locus: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConclusionStatus {
    Verified,
    Refuted,
    Skipped,
}

impl fmt::Display for ConclusionStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConclusionStatus::Verified => "verified",
            ConclusionStatus::Refuted => "refuted",
            ConclusionStatus::Skipped => "skipped",
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Evidence {
    /// The conclusion (or hypothesis) was checked through homology only.
    pub necessary_condition_only: bool,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub removals: BTreeMap<String, RemovalSequence>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub profiles: BTreeMap<String, HomologyProfile>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<CheckInput>,
}

/// Outcome of one theorem check. Timing is kept out of the serialized form so
/// that reports are reproducible byte for byte.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub theorem: TheoremId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instance: Option<String>,
    pub hypothesis: HypothesisStatus,
    pub conclusion: ConclusionStatus,
    pub evidence: Evidence,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CheckReport {
    pub(crate) fn new(theorem: TheoremId) -> Self {
        CheckReport {
            theorem,
            instance: None,
            hypothesis: HypothesisStatus::Established,
            conclusion: ConclusionStatus::Skipped,
            evidence: Evidence::default(),
            elapsed: Duration::ZERO,
        }
    }

    pub(crate) fn not_established(mut self, reason: impl Into<String>) -> Self {
        self.hypothesis = HypothesisStatus::NotEstablished { reason: reason.into() };
        self.conclusion = ConclusionStatus::Skipped;
        self
    }

    pub(crate) fn oracle_unknown(mut self, locus: impl Into<String>) -> Self {
        self.hypothesis = HypothesisStatus::OracleUnknown { locus: locus.into() };
        self.conclusion = ConclusionStatus::Skipped;
        self
    }

    /// Records the conclusion; a failure attaches the input as counterexample.
    pub(crate) fn conclude(mut self, holds: bool, input: impl FnOnce() -> CheckInput) -> Self {
        if holds {
            self.conclusion = ConclusionStatus::Verified;
        } else {
            self.conclusion = ConclusionStatus::Refuted;
            self.evidence.counterexample = Some(input());
        }
        self
    }

    pub(crate) fn note(&mut self, note: impl Into<String>) {
        self.evidence.notes.push(note.into());
    }

    pub(crate) fn profile(&mut self, key: &str, profile: HomologyProfile) {
        self.evidence.profiles.insert(key.to_string(), profile);
    }

    pub fn is_refuted(&self) -> bool {
        self.conclusion == ConclusionStatus::Refuted
    }

    pub fn is_verified(&self) -> bool {
        self.conclusion == ConclusionStatus::Verified
    }

    pub fn hypothesis_established(&self) -> bool {
        self.hypothesis == HypothesisStatus::Established
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.theorem)?;
        if let Some(i) = &self.instance {
            write!(f, " [{i}]")?;
        }
        write!(f, ": {}", self.conclusion)?;
        match &self.hypothesis {
            HypothesisStatus::Established => {}
            HypothesisStatus::NotEstablished { reason } => write!(f, " (hypothesis not established: {reason})")?,
            HypothesisStatus::OracleUnknown { locus } => write!(f, " (oracle inconclusive at {locus})")?,
        }
        writeln!(f)?;
        for (k, seq) in &self.evidence.removals {
            let beat = if seq.all_beat() { ", all beat" } else { "" };
            writeln!(f, "  removals {k}: {} steps{beat}", seq.len())?;
        }
        for (k, p) in &self.evidence.profiles {
            let line = p.to_string().trim_end().replace('\n', ", ");
            writeln!(f, "  profile {k}: {line}")?;
        }
        for n in &self.evidence.notes {
            writeln!(f, "  note: {n}")?;
        }
        if self.evidence.necessary_condition_only {
            writeln!(f, "  evidence: homology only (necessary condition)")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CofinalityInput {
    pub map: PosetMap,
    pub diagram: PosetDiagram,
}

/// Input of a checker, as read from a file or produced by a generator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CheckInput {
    Diagram {
        diagram: PosetDiagram,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        point: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        dominator: Option<String>,
    },
    Morphism {
        morphism: DiagramMorphism,
    },
    Cofinality(CofinalityInput),
    Complexes {
        diagram: ComplexDiagram,
    },
}

/// Outcome of trying to certify that a poset map is a weak equivalence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeakEquivalence {
    /// Every preimage of a basic open (or of every up-set) is homotopically
    /// trivial, so the map is a weak equivalence.
    Certified,
    ProfilesDiffer { source: HomologyProfile, target: HomologyProfile },
    Uncertain { locus: String },
}

/// Certifies a weak equivalence through preimages of `U_y` (or of `F_y`),
/// after ruling it out when the homology profiles differ.
pub fn certify_weak_equivalence(f: &PosetMap, budget: &Budget) -> WeakEquivalence {
    let (source, target) = (
        poset_homology(f.source()).expect("fibers are nonempty"),
        poset_homology(f.target()).expect("fibers are nonempty"),
    );
    if source != target {
        return WeakEquivalence::ProfilesDiffer { source, target };
    }
    let n = f.target().len();
    let mut locus = None;
    for y in 0..n {
        if !triviality_oracle(&f.preimage_of_down_set(y), budget).is_trivial() {
            locus = Some(y);
            break;
        }
    }
    let Some(first) = locus else {
        return WeakEquivalence::Certified;
    };
    if (0..n).all(|y| triviality_oracle(&f.preimage_of_up_set(y), budget).is_trivial()) {
        return WeakEquivalence::Certified;
    }
    WeakEquivalence::Uncertain {
        locus: f.target().name(first).to_string(),
    }
}

/// Size above which homology is computed on the core (a strong deformation
/// retract) rather than on the poset itself.
pub const DIRECT_HOMOLOGY_LIMIT: usize = 80;

/// Homology of `K(P)`, through the core of `P` for large posets.
pub fn hocolim_profile(p: &FinitePoset) -> (HomologyProfile, bool) {
    if p.len() <= DIRECT_HOMOLOGY_LIMIT {
        (poset_homology(p).expect("nonempty poset"), false)
    } else {
        let (c, _) = core(p).expect("nonempty poset");
        (poset_homology(&c).expect("nonempty core"), true)
    }
}
