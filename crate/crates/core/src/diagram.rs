//! Diagrams indexed by finite posets, and the non-Hausdorff homotopy colimit
//! (Grothendieck construction) of a diagram of finite posets.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::poset::{FinitePoset, PosetMap};
use crate::simplicial::{SimplicialComplex, SimplicialMap};

/// Separator between index and fiber identifiers in hocolim elements.
pub const SEPARATOR: &str = "::";

/// Maps that can serve as transition maps of a diagram.
pub trait Morphism: Clone + PartialEq + fmt::Debug {
    type Object: PartialEq + fmt::Debug;

    fn source(&self) -> &Arc<Self::Object>;
    fn target(&self) -> &Arc<Self::Object>;
    fn identity(object: Arc<Self::Object>) -> Self;
    /// `next ∘ self`.
    fn then(&self, next: &Self) -> Result<Self>;
    fn object_is_empty(object: &Self::Object) -> bool;
}

impl Morphism for PosetMap {
    type Object = FinitePoset;

    fn source(&self) -> &Arc<FinitePoset> {
        PosetMap::source(self)
    }
    fn target(&self) -> &Arc<FinitePoset> {
        PosetMap::target(self)
    }
    fn identity(object: Arc<FinitePoset>) -> Self {
        PosetMap::identity(object)
    }
    fn then(&self, next: &Self) -> Result<Self> {
        PosetMap::then(self, next)
    }
    fn object_is_empty(object: &FinitePoset) -> bool {
        object.is_empty()
    }
}

impl Morphism for SimplicialMap {
    type Object = SimplicialComplex;

    fn source(&self) -> &Arc<SimplicialComplex> {
        SimplicialMap::source(self)
    }
    fn target(&self) -> &Arc<SimplicialComplex> {
        SimplicialMap::target(self)
    }
    fn identity(object: Arc<SimplicialComplex>) -> Self {
        SimplicialMap::identity(object)
    }
    fn then(&self, next: &Self) -> Result<Self> {
        SimplicialMap::then(self, next)
    }
    fn object_is_empty(object: &SimplicialComplex) -> bool {
        object.is_empty()
    }
}

/// A functor from a finite poset to finite posets or complexes.
///
/// Transitions are stored for every related pair `p <= q`, identities included.
#[derive(Clone)]
pub struct Diagram<M: Morphism> {
    index: Arc<FinitePoset>,
    fibers: Vec<Arc<M::Object>>,
    transitions: BTreeMap<(usize, usize), M>,
}

pub type PosetDiagram = Diagram<PosetMap>;
pub type ComplexDiagram = Diagram<SimplicialMap>;

impl<M: Morphism> PartialEq for Diagram<M> {
    fn eq(&self, other: &Self) -> bool {
        self.index == other.index
            && self.fibers == other.fibers
            && self.transitions == other.transitions
    }
}

impl<M: Morphism> fmt::Debug for Diagram<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Diagram")
            .field("index", &self.index)
            .field("fibers", &self.fibers)
            .finish()
    }
}

impl<M: Morphism> Diagram<M> {
    /// Builds a diagram from its fibers (in index order) and the transitions
    /// on cover pairs.
    ///
    /// Composites along chains are synthesized and must agree along every
    /// route; extra non-cover transitions are accepted and cross-checked.
    pub fn new(
        index: Arc<FinitePoset>,
        fibers: Vec<Arc<M::Object>>,
        transitions: impl IntoIterator<Item = ((usize, usize), M)>,
    ) -> Result<Self> {
        let n = index.len();
        if fibers.len() != n {
            let missing = index.name(fibers.len().min(n.saturating_sub(1)));
            return Err(Error::MissingFiber(missing.to_string()));
        }
        for (p, name) in index.elements().iter().enumerate() {
            if name.contains(SEPARATOR) {
                return Err(Error::ReservedIdentifier(name.clone()));
            }
            if M::object_is_empty(&fibers[p]) {
                return Err(Error::EmptyFiber(name.clone()));
            }
        }
        let mut given: BTreeMap<(usize, usize), M> = BTreeMap::new();
        for ((p, q), map) in transitions {
            if p >= n || q >= n {
                return Err(Error::DomainMismatch("transition index out of range".into()));
            }
            if !index.leq_idx(p, q) {
                return Err(Error::NotRelated(
                    index.name(p).to_string(),
                    index.name(q).to_string(),
                ));
            }
            if map.source().as_ref() != fibers[p].as_ref()
                || map.target().as_ref() != fibers[q].as_ref()
            {
                return Err(Error::DomainMismatch(format!(
                    "transition {}->{} does not run between the fibers",
                    index.name(p),
                    index.name(q)
                )));
            }
            given.insert((p, q), map);
        }
        for &(p, q) in index.covers() {
            if !given.contains_key(&(p, q)) {
                return Err(Error::MissingTransition(
                    index.name(p).to_string(),
                    index.name(q).to_string(),
                ));
            }
        }

        let order = index.linear_extension_indices();
        let mut position = vec![0; n];
        for (i, &p) in order.iter().enumerate() {
            position[p] = i;
        }
        let mut all: BTreeMap<(usize, usize), M> = BTreeMap::new();
        for &p in &order {
            all.insert((p, p), M::identity(fibers[p].clone()));
            let mut above: Vec<usize> = index.up_bits(p).ones().filter(|&q| q != p).collect();
            above.sort_by_key(|&q| position[q]);
            for q in above {
                let mut composite: Option<(usize, M)> = None;
                for &r in index.lower_covers(q) {
                    if !index.leq_idx(p, r) {
                        continue;
                    }
                    let route = all[&(p, r)].then(&given[&(r, q)])?;
                    match &composite {
                        None => composite = Some((r, route)),
                        Some((_, first)) if *first == route => {}
                        Some(_) => {
                            return Err(Error::Functoriality(
                                index.name(p).to_string(),
                                index.name(r).to_string(),
                                index.name(q).to_string(),
                            ))
                        }
                    }
                }
                let (r, map) = composite.expect("a lower cover of q lies above p");
                if let Some(extra) = given.get(&(p, q)) {
                    if *extra != map && !index.upper_covers(p).contains(&q) {
                        return Err(Error::Functoriality(
                            index.name(p).to_string(),
                            index.name(r).to_string(),
                            index.name(q).to_string(),
                        ));
                    }
                }
                all.insert((p, q), map);
            }
        }
        Ok(Diagram {
            index,
            fibers,
            transitions: all,
        })
    }

    /// The constant diagram with fiber `object` and identity transitions.
    pub fn constant(index: Arc<FinitePoset>, object: Arc<M::Object>) -> Result<Self> {
        let fibers = vec![object.clone(); index.len()];
        let covers: Vec<_> = index
            .covers()
            .iter()
            .map(|&pq| (pq, M::identity(object.clone())))
            .collect();
        Self::new(index, fibers, covers)
    }

    pub fn index(&self) -> &Arc<FinitePoset> {
        &self.index
    }

    pub fn fibers(&self) -> &[Arc<M::Object>] {
        &self.fibers
    }

    pub fn fiber(&self, p: usize) -> &Arc<M::Object> {
        &self.fibers[p]
    }

    pub fn fiber_named(&self, p: &str) -> Result<&Arc<M::Object>> {
        Ok(&self.fibers[self.index.index_of(p)?])
    }

    /// `f_{pq}` for `p <= q`.
    pub fn transition(&self, p: usize, q: usize) -> Option<&M> {
        self.transitions.get(&(p, q))
    }

    /// Every stored transition, identities included.
    pub fn transitions(&self) -> impl Iterator<Item = (&(usize, usize), &M)> {
        self.transitions.iter()
    }

    /// `D|_S`.
    pub fn restrict<S: AsRef<str>>(&self, subset: &[S]) -> Result<Self> {
        let mut keep = FixedBitSet::with_capacity(self.index.len());
        for s in subset {
            keep.insert(self.index.index_of(s.as_ref())?);
        }
        Ok(self.restrict_bits(&keep))
    }

    /// `D|_S` for a set of index positions.
    pub fn restrict_bits(&self, keep: &FixedBitSet) -> Self {
        let kept: Vec<usize> = keep.ones().filter(|&p| p < self.index.len()).collect();
        let index = Arc::new(self.index.induced(keep));
        let fibers = kept.iter().map(|&p| self.fibers[p].clone()).collect();
        let mut transitions = BTreeMap::new();
        for (i, &p) in kept.iter().enumerate() {
            for (j, &q) in kept.iter().enumerate() {
                if let Some(m) = self.transitions.get(&(p, q)) {
                    transitions.insert((i, j), m.clone());
                }
            }
        }
        Diagram {
            index,
            fibers,
            transitions,
        }
    }

    /// `D` with the index element `p` removed.
    pub fn without(&self, p: usize) -> Self {
        let mut keep = FixedBitSet::with_capacity(self.index.len());
        keep.insert_range(..);
        keep.set(p, false);
        self.restrict_bits(&keep)
    }

    /// `φ*D = D ∘ φ`.
    pub fn pullback(phi: &PosetMap, diagram: &Self) -> Result<Self> {
        if phi.target().as_ref() != diagram.index.as_ref() {
            return Err(Error::DomainMismatch(
                "pullback: the map does not land in the index poset".into(),
            ));
        }
        let index = phi.source().clone();
        let fibers = (0..index.len())
            .map(|p| diagram.fibers[phi.apply_idx(p)].clone())
            .collect();
        let mut transitions = BTreeMap::new();
        for p in 0..index.len() {
            for q in index.up_bits(p).ones() {
                let m = diagram.transitions[&(phi.apply_idx(p), phi.apply_idx(q))].clone();
                transitions.insert((p, q), m);
            }
        }
        Ok(Diagram {
            index,
            fibers,
            transitions,
        })
    }
}

impl PosetDiagram {
    /// The diagram `X_0 → X_1` over the two-element chain `0 < 1`.
    pub fn from_map(f: &PosetMap) -> Self {
        let index = Arc::new(
            FinitePoset::new(&["0", "1"], &[("0", "1")]).expect("two-element chain"),
        );
        Diagram::new(
            index,
            vec![f.source().clone(), f.target().clone()],
            [((0, 1), f.clone())],
        )
        .expect("a single map is a functor on 0 < 1")
    }

    /// Name of the hocolim element carrying `x` from fiber `p`.
    pub fn element_name(&self, p: usize, x: usize) -> String {
        format!("{}{}{}", self.index.name(p), SEPARATOR, self.fibers[p].name(x))
    }

    /// Position of `(p, x)` in [`hocolim`](Self::hocolim).
    pub fn element_position(&self, p: usize, x: usize) -> usize {
        self.fibers[..p].iter().map(|f| f.len()).sum::<usize>() + x
    }

    /// The non-Hausdorff homotopy colimit.
    ///
    /// Elements are `p::x` for `x ∈ X_p`, listed by index position, then fiber
    /// position. `(p,x) <= (q,y)` iff `p <= q` and `f_pq(x) <= y`.
    pub fn hocolim(&self) -> FinitePoset {
        let offsets: Vec<usize> = self
            .fibers
            .iter()
            .scan(0, |acc, f| {
                let start = *acc;
                *acc += f.len();
                Some(start)
            })
            .collect();
        let mut elements = Vec::new();
        for p in 0..self.index.len() {
            for x in 0..self.fibers[p].len() {
                elements.push(self.element_name(p, x));
            }
        }
        let mut relation = Vec::new();
        for (&(p, q), f) in &self.transitions {
            let target = &self.fibers[q];
            for x in 0..self.fibers[p].len() {
                let fx = f.apply_idx(x);
                for y in target.up_bits(fx).ones() {
                    relation.push((offsets[p] + x, offsets[q] + y));
                }
            }
        }
        FinitePoset::from_relation(elements, relation)
            .expect("the Grothendieck construction of a diagram of posets is a poset")
    }

    /// The canonical map `hocolim φ*D → hocolim D`, `(p, x) ↦ (φ(p), x)`.
    pub fn canonical_map(phi: &PosetMap, diagram: &PosetDiagram) -> Result<PosetMap> {
        let pulled = Diagram::pullback(phi, diagram)?;
        let source = Arc::new(pulled.hocolim());
        let target = Arc::new(diagram.hocolim());
        let mut assignment = Vec::with_capacity(source.len());
        for p in 0..pulled.index.len() {
            for x in 0..pulled.fibers[p].len() {
                assignment.push(diagram.element_position(phi.apply_idx(p), x));
            }
        }
        PosetMap::from_indices(source, target, assignment)
    }
}

/// The non-Hausdorff mapping cylinder `B_f`.
pub fn mapping_cylinder(f: &PosetMap) -> FinitePoset {
    PosetDiagram::from_map(f).hocolim()
}

/// A natural transformation between two diagrams of posets over one index.
#[derive(Clone, Debug)]
pub struct DiagramMorphism {
    source: PosetDiagram,
    target: PosetDiagram,
    components: Vec<PosetMap>,
}

impl PartialEq for DiagramMorphism {
    fn eq(&self, other: &Self) -> bool {
        self.source() == other.source()
            && self.target() == other.target()
            && self.components() == other.components()
    }
}

impl DiagramMorphism {
    pub fn new(
        source: PosetDiagram,
        target: PosetDiagram,
        components: Vec<PosetMap>,
    ) -> Result<Self> {
        if source.index != target.index {
            return Err(Error::DomainMismatch("diagrams have different index posets".into()));
        }
        let index = source.index.clone();
        if components.len() != index.len() {
            return Err(Error::DomainMismatch("one component per index element".into()));
        }
        for (p, c) in components.iter().enumerate() {
            if c.source().as_ref() != source.fibers[p].as_ref()
                || c.target().as_ref() != target.fibers[p].as_ref()
            {
                return Err(Error::DomainMismatch(format!(
                    "component at `{}` does not run between the fibers",
                    index.name(p)
                )));
            }
        }
        for &(p, q) in source.transitions.keys() {
            let left = components[p].then(&target.transitions[&(p, q)])?;
            let right = source.transitions[&(p, q)].then(&components[q])?;
            if left.assignment() != right.assignment() {
                return Err(Error::Naturality(
                    index.name(p).to_string(),
                    index.name(q).to_string(),
                ));
            }
        }
        Ok(DiagramMorphism {
            source,
            target,
            components,
        })
    }

    pub fn identity(diagram: PosetDiagram) -> Self {
        let components = diagram
            .fibers
            .iter()
            .map(|f| PosetMap::identity(f.clone()))
            .collect();
        DiagramMorphism {
            source: diagram.clone(),
            target: diagram,
            components,
        }
    }

    pub fn source(&self) -> &PosetDiagram {
        &self.source
    }

    pub fn target(&self) -> &PosetDiagram {
        &self.target
    }

    pub fn components(&self) -> &[PosetMap] {
        &self.components
    }

    /// The induced map `hocolim source → hocolim target`.
    pub fn hocolim_map(&self) -> Result<PosetMap> {
        let source = Arc::new(self.source.hocolim());
        let target = Arc::new(self.target.hocolim());
        let mut assignment = Vec::with_capacity(source.len());
        for (p, c) in self.components.iter().enumerate() {
            for x in 0..self.source.fibers[p].len() {
                assignment.push(self.target.element_position(p, c.apply_idx(x)));
            }
        }
        PosetMap::from_indices(source, target, assignment)
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    pub use crate::models::sphere_pushout;
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::poset::fixtures::circle;

    fn point(name: &str) -> Arc<FinitePoset> {
        Arc::new(FinitePoset::new(&[name], &[] as &[(&str, &str)]).unwrap())
    }

    #[test]
    fn singleton_index_keeps_the_fiber() {
        let s = Arc::new(circle());
        let d = PosetDiagram::constant(Arc::new(FinitePoset::chain(1)), s.clone()).unwrap();
        assert_eq!(d.transitions().count(), 1);
        let h = d.hocolim();
        assert_eq!(h.len(), 4);
        assert!(h.same_order(&s.relabel(|x| format!("0::{x}")).unwrap()));
    }

    #[test]
    fn two_points_over_the_chain() {
        let f = PosetMap::identity(point("x"));
        let b = mapping_cylinder(&f);
        assert_eq!(b.elements(), &["0::x", "1::x"]);
        assert_eq!(b.covers(), &[(0, 1)]);
    }

    #[test]
    fn functoriality_is_enforced() {
        let index = Arc::new(
            FinitePoset::new(
                &["p", "q1", "q2", "r"],
                &[("p", "q1"), ("p", "q2"), ("q1", "r"), ("q2", "r")],
            )
            .unwrap(),
        );
        let x = Arc::new(FinitePoset::antichain(2));
        let id = PosetMap::identity(x.clone());
        let swap = PosetMap::from_indices(x.clone(), x.clone(), vec![1, 0]).unwrap();
        let err = PosetDiagram::new(
            index,
            vec![x.clone(), x.clone(), x.clone(), x],
            [((0, 1), id.clone()), ((0, 2), id.clone()), ((1, 3), id), ((2, 3), swap)],
        );
        assert!(matches!(err, Err(Error::Functoriality(..))));
    }

    #[test]
    fn construction_errors() {
        let index = Arc::new(FinitePoset::chain(2));
        let x = point("x");
        assert!(matches!(
            PosetDiagram::new(index.clone(), vec![x.clone(), x.clone()], []),
            Err(Error::MissingTransition(..))
        ));
        assert!(matches!(
            PosetDiagram::new(index.clone(), vec![x.clone()], []),
            Err(Error::MissingFiber(_))
        ));
        let empty = Arc::new(FinitePoset::empty());
        assert!(matches!(
            PosetDiagram::constant(index, empty),
            Err(Error::EmptyFiber(_))
        ));
        let bad = Arc::new(FinitePoset::new(&["a::b"], &[] as &[(&str, &str)]).unwrap());
        assert!(matches!(
            PosetDiagram::constant(bad, x),
            Err(Error::ReservedIdentifier(_))
        ));
    }

    #[test]
    fn pushout_of_circle_is_six_points() {
        let h = sphere_pushout().hocolim();
        assert_eq!(h.len(), 6);
        assert!(h.leq("0::a", "1::u").unwrap());
        assert!(h.leq("0::d", "2::v").unwrap());
        assert!(!h.leq("1::u", "2::v").unwrap());
    }

    #[test]
    fn restriction_is_an_induced_subposet() {
        let d = sphere_pushout();
        let r = d.restrict(&["0", "1"]).unwrap();
        let h = d.hocolim();
        let names: Vec<&String> = h.elements().iter().filter(|e| !e.starts_with("2::")).collect();
        assert_eq!(r.hocolim(), h.subposet(&names).unwrap());
        assert_eq!(d.restrict(d.index().elements()).unwrap(), d);
        let top = d.restrict(&["1"]).unwrap();
        assert_eq!(top.index().len(), 1);
    }

    #[test]
    fn pullback_examples() {
        let d = sphere_pushout();
        let id = PosetMap::identity(d.index().clone());
        assert_eq!(Diagram::pullback(&id, &d).unwrap(), d);
        let canon = PosetDiagram::canonical_map(&id, &d).unwrap();
        assert_eq!(canon.assignment(), (0..6).collect::<Vec<_>>().as_slice());

        let c3 = Arc::new(FinitePoset::chain(3));
        let one = d.restrict(&["0", "1"]).unwrap();
        let phi = PosetMap::from_indices(c3, one.index().clone(), vec![0, 0, 1]).unwrap();
        let pulled = Diagram::pullback(&phi, &one).unwrap();
        assert_eq!(pulled.fiber(0), one.fiber(0));
        assert_eq!(pulled.fiber(1), one.fiber(0));
        assert_eq!(pulled.fiber(2), one.fiber(1));
        assert!(PosetDiagram::canonical_map(&phi, &one).is_ok());

        let wrong = PosetMap::identity(Arc::new(FinitePoset::chain(2)));
        assert!(matches!(
            Diagram::pullback(&wrong, &d),
            Err(Error::DomainMismatch(_))
        ));
    }

    #[test]
    fn pullback_is_contravariant() {
        let d = sphere_pushout();
        let c2 = Arc::new(FinitePoset::chain(2));
        let c3 = Arc::new(FinitePoset::chain(3));
        let psi = PosetMap::from_indices(c2.clone(), d.index().clone(), vec![0, 2]).unwrap();
        let phi = PosetMap::from_indices(c3, c2, vec![0, 1, 1]).unwrap();
        let once = Diagram::pullback(&phi.then(&psi).unwrap(), &d).unwrap();
        let twice = Diagram::pullback(&phi, &Diagram::pullback(&psi, &d).unwrap()).unwrap();
        assert_eq!(once, twice);
    }

    #[test]
    fn mapping_cylinder_examples() {
        let s = Arc::new(circle());
        let f = PosetMap::constant(s.clone(), point("y"), "y").unwrap();
        let b = mapping_cylinder(&f);
        assert_eq!(b.len(), 5);
        assert!(b.maximum().is_some());
        let b_id = mapping_cylinder(&PosetMap::identity(s));
        assert_eq!(b_id.len(), 8);
    }

    #[test]
    fn naturality_is_enforced() {
        let d = sphere_pushout();
        assert!(DiagramMorphism::identity(d.clone()).hocolim_map().is_ok());
        let s = d.fiber(0).clone();
        let swap = PosetMap::from_indices(s.clone(), s.clone(), vec![1, 0, 2, 3]).unwrap();
        let mut comps: Vec<PosetMap> = d.fibers().iter().map(|f| PosetMap::identity(f.clone())).collect();
        comps[0] = swap;
        // constant maps absorb the swap, so this one is natural
        assert!(DiagramMorphism::new(d.clone(), d.clone(), comps).is_ok());
    }
}
