//! Finite simplicial complexes and the functors linking them to posets:
//! the order complex `K(X)`, the face poset `X(K)` (and its opposite) and
//! barycentric subdivision `K' = K(X(K))`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::diagram::{ComplexDiagram, PosetDiagram};
use crate::error::{Error, Result};
use crate::poset::{same_arc, FinitePoset, PosetMap};

/// A finite abstract simplicial complex, stored by its facets.
#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    lookup: HashMap<String, usize>,
    /// Maximal simplices; each sorted by vertex index, the list sorted.
    facets: Vec<Vec<usize>>,
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let facets: Vec<Vec<&str>> = self
            .facets
            .iter()
            .map(|s| s.iter().map(|&v| self.vertices[v].as_str()).collect())
            .collect();
        f.debug_struct("SimplicialComplex")
            .field("vertices", &self.vertices)
            .field("facets", &facets)
            .finish()
    }
}

impl SimplicialComplex {
    /// Builds a complex from vertex names and a generating family of simplices.
    ///
    /// Non-maximal simplices are dropped; every vertex must lie in some simplex.
    pub fn new<S, T>(vertices: &[S], simplices: &[Vec<T>]) -> Result<Self>
    where
        S: AsRef<str>,
        T: AsRef<str>,
    {
        let vertices: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let mut lookup = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if lookup.insert(v.clone(), i).is_some() {
                return Err(Error::DuplicateElement(v.clone()));
            }
        }
        let mut indexed = Vec::with_capacity(simplices.len());
        for s in simplices {
            let mut simplex = Vec::with_capacity(s.len());
            for v in s {
                simplex.push(
                    *lookup
                        .get(v.as_ref())
                        .ok_or_else(|| Error::UnknownElement(v.as_ref().to_string()))?,
                );
            }
            indexed.push(simplex);
        }
        Self::from_indexed(vertices, lookup, indexed)
    }

    pub(crate) fn from_parts(vertices: Vec<String>, simplices: Vec<Vec<usize>>) -> Result<Self> {
        let mut lookup = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if lookup.insert(v.clone(), i).is_some() {
                return Err(Error::DuplicateElement(v.clone()));
            }
        }
        Self::from_indexed(vertices, lookup, simplices)
    }

    fn from_indexed(
        vertices: Vec<String>,
        lookup: HashMap<String, usize>,
        simplices: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let mut sets: Vec<Vec<usize>> = Vec::with_capacity(simplices.len());
        for mut s in simplices {
            s.sort_unstable();
            s.dedup();
            if s.is_empty() {
                return Err(Error::InvalidSimplex("empty simplex".into()));
            }
            sets.push(s);
        }
        // largest first, so a simplex is kept only if no kept facet contains it
        sets.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        sets.dedup();
        let mut facets: Vec<Vec<usize>> = Vec::new();
        for s in sets {
            if !facets.iter().any(|f| is_subset(&s, f)) {
                facets.push(s);
            }
        }
        facets.sort();
        let mut covered = vec![false; vertices.len()];
        for f in &facets {
            for &v in f {
                covered[v] = true;
            }
        }
        if let Some(v) = covered.iter().position(|c| !c) {
            return Err(Error::InvalidSimplex(format!(
                "vertex `{}` lies in no simplex",
                vertices[v]
            )));
        }
        Ok(SimplicialComplex {
            vertices,
            lookup,
            facets,
        })
    }

    /// The full simplex on the given vertices.
    pub fn simplex<S: AsRef<str>>(vertices: &[S]) -> Result<Self> {
        let all: Vec<&str> = vertices.iter().map(|v| v.as_ref()).collect();
        Self::new(&all, std::slice::from_ref(&all))
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex_index(&self, v: &str) -> Result<usize> {
        self.lookup
            .get(v)
            .copied()
            .ok_or_else(|| Error::UnknownElement(v.to_string()))
    }

    /// Dimension of the complex, `None` when empty.
    pub fn dimension(&self) -> Option<usize> {
        self.facets.iter().map(|f| f.len() - 1).max()
    }

    /// Whether a sorted vertex-index set is a simplex.
    pub fn contains(&self, simplex: &[usize]) -> bool {
        !simplex.is_empty() && self.facets.iter().any(|f| is_subset(simplex, f))
    }

    /// All simplices grouped by dimension, lexicographic within each dimension.
    pub fn simplices_by_dimension(&self) -> Vec<Vec<Vec<usize>>> {
        let Some(dim) = self.dimension() else {
            return Vec::new();
        };
        let mut layers: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new(); dim + 1];
        for f in &self.facets {
            let k = f.len();
            for mask in 1u64..(1u64 << k) {
                let s: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| f[i]).collect();
                layers[s.len() - 1].insert(s);
            }
        }
        layers.into_iter().map(|l| l.into_iter().collect()).collect()
    }

    /// Number of simplices in each dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices_by_dimension().iter().map(Vec::len).collect()
    }

    /// Alternating count of simplices.
    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    /// Canonical name `{v1,v2,...}` of a simplex, vertices sorted by identifier.
    pub fn simplex_name(&self, simplex: &[usize]) -> String {
        let mut names: Vec<&str> = simplex.iter().map(|&v| self.vertices[v].as_str()).collect();
        names.sort_unstable();
        format!("{{{}}}", names.join(","))
    }
}

fn is_subset(small: &[usize], large: &[usize]) -> bool {
    // both sorted
    let mut it = large.iter();
    small.iter().all(|x| it.any(|y| y == x))
}

/// A vertex map sending every simplex onto a simplex.
#[derive(Clone)]
pub struct SimplicialMap {
    source: Arc<SimplicialComplex>,
    target: Arc<SimplicialComplex>,
    assignment: Vec<usize>,
}

impl PartialEq for SimplicialMap {
    fn eq(&self, other: &Self) -> bool {
        self.assignment == other.assignment
            && same_arc(&self.source, &other.source)
            && same_arc(&self.target, &other.target)
    }
}

impl fmt::Debug for SimplicialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<(&str, &str)> = self
            .assignment
            .iter()
            .enumerate()
            .map(|(x, &y)| (self.source.vertices[x].as_str(), self.target.vertices[y].as_str()))
            .collect();
        f.debug_struct("SimplicialMap").field("assignment", &pairs).finish()
    }
}

impl SimplicialMap {
    pub fn new<S, T>(
        source: Arc<SimplicialComplex>,
        target: Arc<SimplicialComplex>,
        assignment: &[(S, T)],
    ) -> Result<Self>
    where
        S: AsRef<str>,
        T: AsRef<str>,
    {
        let mut image = vec![usize::MAX; source.vertices.len()];
        for (x, y) in assignment {
            image[source.vertex_index(x.as_ref())?] = target.vertex_index(y.as_ref())?;
        }
        if let Some(missing) = image.iter().position(|&y| y == usize::MAX) {
            return Err(Error::PartialMap(source.vertices[missing].clone()));
        }
        Self::from_indices(source, target, image)
    }

    pub fn from_indices(
        source: Arc<SimplicialComplex>,
        target: Arc<SimplicialComplex>,
        assignment: Vec<usize>,
    ) -> Result<Self> {
        if assignment.len() != source.vertices.len()
            || assignment.iter().any(|&y| y >= target.vertices.len())
        {
            return Err(Error::DomainMismatch("vertex assignment has the wrong shape".into()));
        }
        for f in &source.facets {
            let img = image_of(&assignment, f);
            if !target.contains(&img) {
                return Err(Error::NotSimplicial(source.simplex_name(f)));
            }
        }
        Ok(SimplicialMap {
            source,
            target,
            assignment,
        })
    }

    pub fn identity(complex: Arc<SimplicialComplex>) -> Self {
        let assignment = (0..complex.vertices.len()).collect();
        SimplicialMap {
            source: complex.clone(),
            target: complex,
            assignment,
        }
    }

    pub fn source(&self) -> &Arc<SimplicialComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<SimplicialComplex> {
        &self.target
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// Sorted, deduplicated image of a simplex.
    pub fn image(&self, simplex: &[usize]) -> Vec<usize> {
        image_of(&self.assignment, simplex)
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &SimplicialMap) -> Result<SimplicialMap> {
        if !same_arc(&self.target, &next.source) {
            return Err(Error::DomainMismatch(
                "composition: target of the first map is not the source of the second".into(),
            ));
        }
        Ok(SimplicialMap {
            source: self.source.clone(),
            target: next.target.clone(),
            assignment: self.assignment.iter().map(|&y| next.assignment[y]).collect(),
        })
    }
}

fn image_of(assignment: &[usize], simplex: &[usize]) -> Vec<usize> {
    let mut img: Vec<usize> = simplex.iter().map(|&v| assignment[v]).collect();
    img.sort_unstable();
    img.dedup();
    img
}

/// `K(P)`: vertices are the elements, simplices the nonempty chains.
pub fn order_complex(poset: &FinitePoset) -> Result<SimplicialComplex> {
    if poset.is_empty() {
        return Err(Error::EmptyPoset);
    }
    // maximal chains are the cover paths from a minimal to a maximal element
    let mut facets = Vec::new();
    let mut path = Vec::new();
    fn walk(poset: &FinitePoset, x: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        path.push(x);
        if poset.is_maximal(x) {
            out.push(path.clone());
        } else {
            for &y in poset.upper_covers(x) {
                walk(poset, y, path, out);
            }
        }
        path.pop();
    }
    for x in (0..poset.len()).filter(|&x| poset.is_minimal(x)) {
        walk(poset, x, &mut path, &mut facets);
    }
    SimplicialComplex::from_parts(poset.elements().to_vec(), facets)
}

/// `K(f)` between freshly built order complexes of source and target.
pub fn order_complex_map(f: &PosetMap) -> Result<SimplicialMap> {
    let source = Arc::new(order_complex(f.source())?);
    let target = Arc::new(order_complex(f.target())?);
    order_complex_map_between(f, source, target)
}

/// `K(f)` with caller-supplied order complexes (shared across a diagram).
pub fn order_complex_map_between(
    f: &PosetMap,
    source: Arc<SimplicialComplex>,
    target: Arc<SimplicialComplex>,
) -> Result<SimplicialMap> {
    SimplicialMap::from_indices(source, target, f.assignment().to_vec())
}

/// `X(K)`: simplices ordered by inclusion, named `{v1,...}`.
///
/// Elements are listed by dimension, then lexicographically by vertex index.
pub fn face_poset(complex: &SimplicialComplex) -> Result<FinitePoset> {
    if complex.is_empty() {
        return Err(Error::EmptyComplex);
    }
    let layers = complex.simplices_by_dimension();
    let mut elements = Vec::new();
    let mut position: HashMap<&[usize], usize> = HashMap::new();
    for layer in &layers {
        for s in layer {
            position.insert(s.as_slice(), elements.len());
            elements.push(complex.simplex_name(s));
        }
    }
    let mut relation = Vec::new();
    for layer in layers.iter().skip(1) {
        for s in layer {
            let top = position[s.as_slice()];
            for skip in 0..s.len() {
                let face: Vec<usize> = s
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect();
                relation.push((position[face.as_slice()], top));
            }
        }
    }
    FinitePoset::from_relation(elements, relation)
}

/// `X(K)^op`: simplices ordered by reverse inclusion.
pub fn face_poset_op(complex: &SimplicialComplex) -> Result<FinitePoset> {
    Ok(face_poset(complex)?.opposite())
}

/// `X(f)` between caller-supplied face posets (either both plain or both opposite).
pub fn face_poset_map_between(
    f: &SimplicialMap,
    source: Arc<FinitePoset>,
    target: Arc<FinitePoset>,
) -> Result<PosetMap> {
    let mut assignment = Vec::with_capacity(source.len());
    for layer in f.source().simplices_by_dimension() {
        for s in layer {
            let name = f.target().simplex_name(&f.image(&s));
            assignment.push((f.source().simplex_name(&s), name));
        }
    }
    PosetMap::new(source, target, &assignment)
}

/// `X(f): X(K) → X(L)`.
pub fn face_poset_map(f: &SimplicialMap) -> Result<PosetMap> {
    let source = Arc::new(face_poset(f.source())?);
    let target = Arc::new(face_poset(f.target())?);
    face_poset_map_between(f, source, target)
}

/// `X(f)^op: X(K)^op → X(L)^op`.
pub fn face_poset_op_map(f: &SimplicialMap) -> Result<PosetMap> {
    let source = Arc::new(face_poset_op(f.source())?);
    let target = Arc::new(face_poset_op(f.target())?);
    face_poset_map_between(f, source, target)
}

/// `K' = K(X(K))`, vertices named after the simplices they subdivide.
pub fn barycentric(complex: &SimplicialComplex) -> Result<SimplicialComplex> {
    order_complex(&face_poset(complex)?)
}

/// The subdivided map `K(X(f)): K' → L'`.
pub fn barycentric_map(f: &SimplicialMap) -> Result<SimplicialMap> {
    order_complex_map(&face_poset_map(f)?)
}

/// Applies `K(-)` fiberwise to a diagram of posets.
pub fn lift_order_complex(diagram: &PosetDiagram) -> Result<ComplexDiagram> {
    let fibers: Vec<Arc<SimplicialComplex>> = diagram
        .fibers()
        .iter()
        .map(|x| order_complex(x).map(Arc::new))
        .collect::<Result<_>>()?;
    let mut transitions = Vec::new();
    for &(p, q) in diagram.index().covers() {
        let f = diagram.transition(p, q).expect("cover transition");
        transitions.push((
            (p, q),
            order_complex_map_between(f, fibers[p].clone(), fibers[q].clone())?,
        ));
    }
    ComplexDiagram::new(diagram.index().clone(), fibers, transitions)
}

/// Applies `X(-)^op` fiberwise to a diagram of complexes.
pub fn lift_face_poset_op(diagram: &ComplexDiagram) -> Result<PosetDiagram> {
    let fibers: Vec<Arc<FinitePoset>> = diagram
        .fibers()
        .iter()
        .map(|k| face_poset_op(k).map(Arc::new))
        .collect::<Result<_>>()?;
    let mut transitions = Vec::new();
    for &(p, q) in diagram.index().covers() {
        let f = diagram.transition(p, q).expect("cover transition");
        transitions.push((
            (p, q),
            face_poset_map_between(f, fibers[p].clone(), fibers[q].clone())?,
        ));
    }
    PosetDiagram::new(diagram.index().clone(), fibers, transitions)
}

/// Fiberwise barycentric subdivision of spaces and maps.
pub fn lift_barycentric(diagram: &ComplexDiagram) -> Result<ComplexDiagram> {
    let faces: Vec<Arc<FinitePoset>> = diagram
        .fibers()
        .iter()
        .map(|k| face_poset(k).map(Arc::new))
        .collect::<Result<_>>()?;
    let fibers: Vec<Arc<SimplicialComplex>> = faces
        .iter()
        .map(|x| order_complex(x).map(Arc::new))
        .collect::<Result<_>>()?;
    let mut transitions = Vec::new();
    for &(p, q) in diagram.index().covers() {
        let f = diagram.transition(p, q).expect("cover transition");
        let xf = face_poset_map_between(f, faces[p].clone(), faces[q].clone())?;
        transitions.push((
            (p, q),
            order_complex_map_between(&xf, fibers[p].clone(), fibers[q].clone())?,
        ));
    }
    ComplexDiagram::new(diagram.index().clone(), fibers, transitions)
}

/// `(X(f)^op)⁻¹(U_σ)`: simplices of the source whose image contains `σ`,
/// ordered by reverse inclusion.
pub fn preimage_poset(fop: &PosetMap, sigma: &str) -> Result<FinitePoset> {
    let s = fop.target().index_of(sigma)?;
    Ok(fop.preimage_of_down_set(s))
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub fn edge() -> SimplicialComplex {
        SimplicialComplex::simplex(&["1", "2"]).unwrap()
    }

    pub fn triangle_boundary() -> SimplicialComplex {
        SimplicialComplex::new(
            &["1", "2", "3"],
            &[vec!["1", "2"], vec!["2", "3"], vec!["1", "3"]],
        )
        .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::poset::fixtures::circle;

    #[test]
    fn complex_construction_keeps_facets() {
        let k = SimplicialComplex::new(&["a", "b", "c"], &[vec!["a", "b"], vec!["a"], vec!["c"]])
            .unwrap();
        assert_eq!(k.facets().len(), 2);
        assert!(k.contains(&[0]));
        assert!(!k.contains(&[0, 2]));
        assert!(matches!(
            SimplicialComplex::new(&["a", "b"], &[vec!["a"]]),
            Err(Error::InvalidSimplex(_))
        ));
    }

    #[test]
    fn order_complex_examples() {
        let k = order_complex(&FinitePoset::chain(3)).unwrap();
        assert_eq!(k.facets(), &[vec![0, 1, 2]]);
        let c = order_complex(&circle()).unwrap();
        assert_eq!(c.f_vector(), vec![4, 4]);
        let a = order_complex(&FinitePoset::antichain(3)).unwrap();
        assert_eq!(a.f_vector(), vec![3]);
        assert!(matches!(order_complex(&FinitePoset::empty()), Err(Error::EmptyPoset)));
    }

    #[test]
    fn order_complex_ignores_orientation() {
        let s = circle();
        assert_eq!(order_complex(&s).unwrap(), order_complex(&s.opposite()).unwrap());
    }

    #[test]
    fn order_complex_map_examples() {
        let s = Arc::new(circle());
        let id = order_complex_map(&PosetMap::identity(s.clone())).unwrap();
        assert_eq!(id.assignment(), &[0, 1, 2, 3]);
        let pt = Arc::new(FinitePoset::chain(1));
        let k = order_complex_map(&PosetMap::constant(s.clone(), pt, "0").unwrap()).unwrap();
        assert!(k.assignment().iter().all(|&v| v == 0));
        let ac = Arc::new(
            FinitePoset::new(&["a", "c"], &[("a", "c")]).unwrap(),
        );
        let f = PosetMap::new(s, ac, &[("a", "a"), ("b", "a"), ("c", "c"), ("d", "c")]).unwrap();
        let kf = order_complex_map(&f).unwrap();
        for facet in kf.source().facets() {
            assert_eq!(kf.image(facet), vec![0, 1]);
        }
    }

    #[test]
    fn face_poset_examples() {
        let x = face_poset(&edge()).unwrap();
        assert_eq!(x.elements(), &["{1}", "{2}", "{1,2}"]);
        assert!(x.leq("{1}", "{1,2}").unwrap());
        let xop = face_poset_op(&edge()).unwrap();
        assert_eq!(xop.minimum(), Some(2));
        let t = face_poset(&triangle_boundary()).unwrap();
        assert_eq!(t.len(), 6);
        assert!(matches!(
            face_poset(&SimplicialComplex::new(&[] as &[&str], &[] as &[Vec<&str>]).unwrap()),
            Err(Error::EmptyComplex)
        ));
    }

    #[test]
    fn barycentric_examples() {
        let e = barycentric(&edge()).unwrap();
        assert_eq!(e.f_vector(), vec![3, 2]);
        let c = barycentric(&triangle_boundary()).unwrap();
        assert_eq!(c.f_vector(), vec![6, 6]);
        let full = barycentric(&SimplicialComplex::simplex(&["1", "2", "3"]).unwrap()).unwrap();
        assert_eq!(full.f_vector(), vec![7, 12, 6]);
        let k = triangle_boundary();
        assert_eq!(barycentric(&k).unwrap().euler_characteristic(), k.euler_characteristic());
        // K(X(K)^op) and K(X(K)) coincide
        assert_eq!(
            order_complex(&face_poset_op(&k).unwrap()).unwrap(),
            barycentric(&k).unwrap()
        );
    }

    #[test]
    fn face_poset_maps_compose() {
        let k = Arc::new(triangle_boundary());
        let l = Arc::new(edge());
        let pt = Arc::new(SimplicialComplex::simplex(&["p"]).unwrap());
        let f = SimplicialMap::new(k.clone(), l.clone(), &[("1", "1"), ("2", "2"), ("3", "2")])
            .unwrap();
        let g = SimplicialMap::new(l.clone(), pt.clone(), &[("1", "p"), ("2", "p")]).unwrap();
        let xk = Arc::new(face_poset(&k).unwrap());
        let xl = Arc::new(face_poset(&l).unwrap());
        let xp = Arc::new(face_poset(&pt).unwrap());
        let xf = face_poset_map_between(&f, xk.clone(), xl.clone()).unwrap();
        let xg = face_poset_map_between(&g, xl, xp.clone()).unwrap();
        let xgf = face_poset_map_between(&f.then(&g).unwrap(), xk, xp).unwrap();
        assert_eq!(xf.then(&xg).unwrap(), xgf);
    }

    #[test]
    fn non_simplicial_maps_are_rejected() {
        let e = Arc::new(edge());
        let two = Arc::new(SimplicialComplex::new(&["a", "b"], &[vec!["a"], vec!["b"]]).unwrap());
        assert!(matches!(
            SimplicialMap::new(e, two, &[("1", "a"), ("2", "b")]),
            Err(Error::NotSimplicial(_))
        ));
    }

    #[test]
    fn preimage_poset_examples() {
        let e = Arc::new(edge());
        let fop = face_poset_op_map(&SimplicialMap::identity(e.clone())).unwrap();
        let star = preimage_poset(&fop, "{1}").unwrap();
        // {1} and {1,2}, with {1} on top in reverse inclusion
        assert_eq!(star.len(), 2);
        assert!(star.maximum().is_some());

        let v = Arc::new(SimplicialComplex::simplex(&["1"]).unwrap());
        let collapse = SimplicialMap::new(e, v, &[("1", "1"), ("2", "1")]).unwrap();
        let cop = face_poset_op_map(&collapse).unwrap();
        assert_eq!(preimage_poset(&cop, "{1}").unwrap().len(), 3);

        let pt = Arc::new(SimplicialComplex::simplex(&["p"]).unwrap());
        let two = Arc::new(SimplicialComplex::new(&["p", "q"], &[vec!["p"], vec!["q"]]).unwrap());
        let incl = SimplicialMap::new(pt, two, &[("p", "p")]).unwrap();
        let iop = face_poset_op_map(&incl).unwrap();
        assert!(preimage_poset(&iop, "{q}").unwrap().is_empty());
    }
}
