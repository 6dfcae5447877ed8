//! JSON file formats and DOT export.
//!
//! * poset: `{"elements": [...], "relations": [[x, y], ...]}`, relations
//!   written as covers sorted lexicographically (any acyclic relation is
//!   accepted on input);
//! * complex: `{"vertices": [...], "facets": [[...], ...]}`;
//! * diagram: `{"index": <poset>, "fibers": {"p": <poset>}, "transitions":
//!   {"p->q": {"x": "y"}}}` with transitions on cover pairs; a diagram of
//!   complexes has the same shape with complexes as fibers and vertex maps;
//! * map: `{"source": <poset>, "target": <poset>, "assignment": {"x": "y"}}`;
//! * morphism: `{"source": <diagram>, "target": <diagram>, "components":
//!   {"p": {"x": "y"}}}`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::diagram::{ComplexDiagram, Diagram, DiagramMorphism, Morphism, PosetDiagram};
use crate::error::{Error, Result};
use crate::poset::{FinitePoset, PosetMap};
use crate::simplicial::{SimplicialComplex, SimplicialMap};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PosetFile {
    elements: Vec<String>,
    relations: Vec<(String, String)>,
}

impl From<&FinitePoset> for PosetFile {
    fn from(p: &FinitePoset) -> Self {
        let mut relations: Vec<(String, String)> =
            p.cover_names().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        relations.sort();
        PosetFile {
            elements: p.elements().to_vec(),
            relations,
        }
    }
}

impl Serialize for FinitePoset {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PosetFile::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for FinitePoset {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let f = PosetFile::deserialize(d)?;
        FinitePoset::new(&f.elements, &f.relations).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexFile {
    vertices: Vec<String>,
    facets: Vec<Vec<String>>,
}

impl Serialize for SimplicialComplex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v = self.vertices();
        ComplexFile {
            vertices: v.to_vec(),
            facets: self
                .facets()
                .iter()
                .map(|f| f.iter().map(|&i| v[i].clone()).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SimplicialComplex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let f = ComplexFile::deserialize(d)?;
        SimplicialComplex::new(&f.vertices, &f.facets).map_err(D::Error::custom)
    }
}

type Assignment = BTreeMap<String, String>;

/// Objects whose vertex/element maps are written as name assignments.
trait Named {
    fn names(&self) -> &[String];
}

impl Named for FinitePoset {
    fn names(&self) -> &[String] {
        self.elements()
    }
}

impl Named for SimplicialComplex {
    fn names(&self) -> &[String] {
        self.vertices()
    }
}

trait NamedMorphism: Morphism
where
    Self::Object: Named,
{
    fn indices(&self) -> &[usize];
    fn build(source: Arc<Self::Object>, target: Arc<Self::Object>, pairs: &[(String, String)]) -> Result<Self>;

    fn assignment_map(&self) -> Assignment {
        let (s, t) = (self.source().names(), self.target().names());
        self.indices()
            .iter()
            .enumerate()
            .map(|(x, &y)| (s[x].clone(), t[y].clone()))
            .collect()
    }
}

impl NamedMorphism for PosetMap {
    fn indices(&self) -> &[usize] {
        self.assignment()
    }
    fn build(source: Arc<FinitePoset>, target: Arc<FinitePoset>, pairs: &[(String, String)]) -> Result<Self> {
        PosetMap::new(source, target, pairs)
    }
}

impl NamedMorphism for SimplicialMap {
    fn indices(&self) -> &[usize] {
        self.assignment()
    }
    fn build(
        source: Arc<SimplicialComplex>,
        target: Arc<SimplicialComplex>,
        pairs: &[(String, String)],
    ) -> Result<Self> {
        SimplicialMap::new(source, target, pairs)
    }
}

fn pairs(a: &Assignment) -> Vec<(String, String)> {
    a.iter().map(|(x, y)| (x.clone(), y.clone())).collect()
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DiagramFile<F> {
    index: FinitePoset,
    fibers: BTreeMap<String, F>,
    transitions: BTreeMap<String, Assignment>,
}

/// Splits `"p->q"` at the arrow whose two sides are both index elements.
fn split_key(index: &FinitePoset, key: &str) -> Result<(usize, usize)> {
    for (at, _) in key.match_indices("->") {
        let (p, q) = (&key[..at], &key[at + 2..]);
        if let (Ok(p), Ok(q)) = (index.index_of(p), index.index_of(q)) {
            return Ok((p, q));
        }
    }
    Err(Error::Parse(format!("transition key `{key}` is not of the form `p->q`")))
}

fn diagram_to_file<M>(d: &Diagram<M>) -> DiagramFile<M::Object>
where
    M: NamedMorphism,
    M::Object: Named + Clone,
{
    let index = d.index();
    let fibers = (0..index.len())
        .map(|p| (index.name(p).to_string(), d.fiber(p).as_ref().clone()))
        .collect();
    let transitions = index
        .covers()
        .iter()
        .map(|&(p, q)| {
            let key = format!("{}->{}", index.name(p), index.name(q));
            (key, d.transition(p, q).expect("cover transition").assignment_map())
        })
        .collect();
    DiagramFile {
        index: index.as_ref().clone(),
        fibers,
        transitions,
    }
}

fn diagram_from_file<M>(f: DiagramFile<M::Object>) -> Result<Diagram<M>>
where
    M: NamedMorphism,
    M::Object: Named,
{
    let index = Arc::new(f.index);
    let mut given = f.fibers;
    let mut fibers = Vec::with_capacity(index.len());
    for p in index.elements() {
        let fiber = given.remove(p).ok_or_else(|| Error::MissingFiber(p.clone()))?;
        fibers.push(Arc::new(fiber));
    }
    if let Some(extra) = given.keys().next() {
        return Err(Error::UnknownElement(extra.clone()));
    }
    let mut transitions = Vec::new();
    for (key, assignment) in &f.transitions {
        let (p, q) = split_key(&index, key)?;
        let m = M::build(fibers[p].clone(), fibers[q].clone(), &pairs(assignment))?;
        transitions.push(((p, q), m));
    }
    Diagram::new(index, fibers, transitions)
}

impl Serialize for PosetDiagram {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        diagram_to_file(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for PosetDiagram {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        diagram_from_file(DiagramFile::deserialize(d)?).map_err(D::Error::custom)
    }
}

impl Serialize for ComplexDiagram {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        diagram_to_file(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for ComplexDiagram {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        diagram_from_file(DiagramFile::deserialize(d)?).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapFile<O> {
    source: O,
    target: O,
    assignment: Assignment,
}

impl Serialize for PosetMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MapFile {
            source: self.source().as_ref(),
            target: self.target().as_ref(),
            assignment: self.assignment_map(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PosetMap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let f = MapFile::<FinitePoset>::deserialize(d)?;
        PosetMap::new(Arc::new(f.source), Arc::new(f.target), &pairs(&f.assignment)).map_err(D::Error::custom)
    }
}

impl Serialize for SimplicialMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MapFile {
            source: self.source().as_ref(),
            target: self.target().as_ref(),
            assignment: self.assignment_map(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SimplicialMap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let f = MapFile::<SimplicialComplex>::deserialize(d)?;
        SimplicialMap::new(Arc::new(f.source), Arc::new(f.target), &pairs(&f.assignment))
            .map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MorphismFile {
    source: PosetDiagram,
    target: PosetDiagram,
    components: BTreeMap<String, Assignment>,
}

impl Serialize for DiagramMorphism {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let index = self.source().index();
        MorphismFile {
            source: self.source().clone(),
            target: self.target().clone(),
            components: self
                .components()
                .iter()
                .enumerate()
                .map(|(p, c)| (index.name(p).to_string(), c.assignment_map()))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DiagramMorphism {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let f = MorphismFile::deserialize(d)?;
        let index = f.source.index().clone();
        let mut components = Vec::with_capacity(index.len());
        for (p, name) in index.elements().iter().enumerate() {
            let a = f
                .components
                .get(name)
                .ok_or_else(|| D::Error::custom(Error::MissingFiber(name.clone())))?;
            let c = PosetMap::new(f.source.fiber(p).clone(), f.target.fiber(p).clone(), &pairs(a))
                .map_err(D::Error::custom)?;
            components.push(c);
        }
        DiagramMorphism::new(f.source, f.target, components).map_err(D::Error::custom)
    }
}

/// Parses a JSON document into any of the file-format types.
pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable value");
    s.push('\n');
    s
}

fn dot_id(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Hasse diagram in DOT, minimal elements at the bottom, one rank per level
/// (length of the longest chain ending at the element).
pub fn to_dot(p: &FinitePoset, name: &str) -> String {
    let mut level = vec![0usize; p.len()];
    for x in p.linear_extension_indices() {
        level[x] = p.lower_covers(x).iter().map(|&y| level[y] + 1).max().unwrap_or(0);
    }
    let mut out = String::new();
    let _ = writeln!(out, "digraph {} {{", dot_id(name));
    let _ = writeln!(out, "  rankdir=BT;");
    let _ = writeln!(out, "  node [shape=plaintext];");
    let top = level.iter().copied().max().unwrap_or(0);
    for l in 0..=top {
        let ids: Vec<String> = (0..p.len())
            .filter(|&x| level[x] == l)
            .map(|x| dot_id(p.name(x)))
            .collect();
        if !ids.is_empty() {
            let _ = writeln!(out, "  {{ rank=same; {}; }}", ids.join("; "));
        }
    }
    for &(a, b) in p.covers() {
        let _ = writeln!(out, "  {} -> {};", dot_id(p.name(a)), dot_id(p.name(b)));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::fixtures::sphere_pushout;
    use crate::poset::fixtures::circle;
    use crate::simplicial::fixtures::triangle_boundary;

    #[test]
    fn poset_round_trip() {
        let text = r#"{"elements": ["a", "b", "c"], "relations": [["a", "b"], ["b", "c"], ["a", "c"]]}"#;
        let p: FinitePoset = from_json(text).unwrap();
        assert_eq!(p.covers().len(), 2);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"{"elements":["a","b","c"],"relations":[["a","b"],["b","c"]]}"#);
        assert_eq!(from_json::<FinitePoset>(&json).unwrap(), p);
        let bad = r#"{"elements": ["a"], "relations": [["a", "z"]]}"#;
        assert!(matches!(from_json::<FinitePoset>(bad), Err(Error::Parse(_))));
    }

    #[test]
    fn complex_round_trip() {
        let k = triangle_boundary();
        let back: SimplicialComplex = from_json(&to_json(&k)).unwrap();
        assert_eq!(back, k);
    }

    #[test]
    fn diagram_round_trip() {
        let d = sphere_pushout();
        let json = to_json(&d);
        assert!(json.contains("\"0->1\""));
        let back: PosetDiagram = from_json(&json).unwrap();
        assert_eq!(back, d);
        assert_eq!(to_json(&back), json);
    }

    #[test]
    fn arrows_inside_identifiers() {
        let text = r#"{
            "index": {"elements": ["a->b", "c"], "relations": [["a->b", "c"]]},
            "fibers": {"a->b": {"elements": ["x"], "relations": []},
                       "c": {"elements": ["y"], "relations": []}},
            "transitions": {"a->b->c": {"x": "y"}}
        }"#;
        let d: PosetDiagram = from_json(text).unwrap();
        assert_eq!(d.hocolim().len(), 2);
    }

    #[test]
    fn missing_pieces_are_reported() {
        let text = r#"{
            "index": {"elements": ["0", "1"], "relations": [["0", "1"]]},
            "fibers": {"0": {"elements": ["x"], "relations": []}},
            "transitions": {}
        }"#;
        let err = from_json::<PosetDiagram>(text).unwrap_err();
        assert!(err.to_string().contains("missing fiber"), "{err}");
    }

    #[test]
    fn map_and_morphism_round_trip() {
        let s = Arc::new(circle());
        let pt = Arc::new(FinitePoset::chain(1));
        let f = PosetMap::constant(s, pt, "0").unwrap();
        let back: PosetMap = from_json(&to_json(&f)).unwrap();
        assert_eq!(back, f);
        let m = DiagramMorphism::identity(sphere_pushout());
        let back: DiagramMorphism = from_json(&to_json(&m)).unwrap();
        assert_eq!(back.components(), m.components());
    }

    #[test]
    fn dot_is_ranked_by_height() {
        let dot = to_dot(&circle(), "S");
        assert!(dot.contains("{ rank=same; \"a\"; \"b\"; }"));
        assert!(dot.contains("\"a\" -> \"c\";"));
        assert_eq!(dot.matches("->").count(), 4);
    }
}
