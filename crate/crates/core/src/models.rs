//! Small named spaces used as examples and test inputs.

use std::sync::Arc;

use crate::diagram::{Diagram, PosetDiagram};
use crate::poset::{FinitePoset, PosetMap};
use crate::simplicial::SimplicialComplex;

/// Minimal finite model of the circle: `a,b < c,d`.
pub fn circle() -> FinitePoset {
    FinitePoset::new(
        &["a", "b", "c", "d"],
        &[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")],
    )
    .expect("circle model")
}

/// The 11-point space without beat points that is collapsible yet not
/// contractible.
pub fn w_poset() -> FinitePoset {
    let names: Vec<String> = (1..=11).map(|i| i.to_string()).collect();
    let covers = [
        (1, 5), (1, 6), (2, 5), (2, 7), (3, 6), (3, 8), (4, 7), (4, 8),
        (5, 9), (5, 10), (6, 9), (6, 10), (7, 10), (7, 11), (8, 10), (8, 11),
    ];
    let rel: Vec<(String, String)> = covers.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    FinitePoset::new(&names, &rel).expect("W poset")
}

pub fn point(name: &str) -> FinitePoset {
    FinitePoset::new(&[name], &[] as &[(&str, &str)]).expect("singleton")
}

/// `pt ← S¹ → pt` over `0 < 1, 0 < 2`; its hocolim models the 2-sphere.
pub fn sphere_pushout() -> PosetDiagram {
    let index = Arc::new(FinitePoset::new(&["0", "1", "2"], &[("0", "1"), ("0", "2")]).expect("index"));
    let s = Arc::new(circle());
    let u = Arc::new(point("u"));
    let v = Arc::new(point("v"));
    let f1 = PosetMap::constant(s.clone(), u.clone(), "u").expect("constant");
    let f2 = PosetMap::constant(s.clone(), v.clone(), "v").expect("constant");
    Diagram::new(index, vec![s, u, v], [((0, 1), f1), ((0, 2), f2)]).expect("pushout diagram")
}

/// The map from the circle model to a point.
pub fn circle_to_point() -> PosetMap {
    PosetMap::constant(Arc::new(circle()), Arc::new(point("*")), "*").expect("constant")
}

/// Boundary of a triangle, the smallest simplicial circle.
pub fn triangle_boundary() -> SimplicialComplex {
    SimplicialComplex::new(&["0", "1", "2"], &[vec!["0", "1"], vec!["1", "2"], vec!["0", "2"]])
        .expect("triangle boundary")
}

/// A single edge.
pub fn edge() -> SimplicialComplex {
    SimplicialComplex::new(&["0", "1"], &[vec!["0", "1"]]).expect("edge")
}
