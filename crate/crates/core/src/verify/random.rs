use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagram::{ComplexDiagram, Diagram, PosetDiagram};
use crate::poset::{FinitePoset, PosetMap};
use crate::simplicial::{SimplicialComplex, SimplicialMap};

/// Largest set of compatible families enumerated per index point; beyond it
/// the point gets basepoint-constant transitions.
const FAMILY_CAP: usize = 4096;
const MAP_ATTEMPTS: usize = 8;

pub(crate) fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Poset on `"0".."n-1"` where each pair `i < j` is related with probability
/// `density` before transitive closure.
pub fn random_poset(n: usize, density: f64, seed: u64) -> FinitePoset {
    poset_from(&mut seeded(seed), n, density)
}

pub(crate) fn poset_from(rng: &mut impl Rng, n: usize, density: f64) -> FinitePoset {
    let density = density.clamp(0.0, 1.0);
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let mut relation = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(density) {
                relation.push((names[i].clone(), names[j].clone()));
            }
        }
    }
    FinitePoset::new(&names, &relation).expect("forward edges are acyclic")
}

/// Random poset of at most `max` elements with random density.
pub(crate) fn small_poset(rng: &mut impl Rng, max: usize) -> FinitePoset {
    let n = rng.random_range(1..=max.max(1));
    let density = rng.random_range(0.2..0.8);
    poset_from(rng, n, density)
}

/// Random poset with a top element `"top"` added, hence contractible.
pub fn random_cone(n: usize, seed: u64) -> FinitePoset {
    cone_from(&mut seeded(seed), n)
}

pub(crate) fn cone_from(rng: &mut impl Rng, n: usize) -> FinitePoset {
    let base = small_poset(rng, n);
    let mut names = base.elements().to_vec();
    let mut relation: Vec<(String, String)> = base.cover_names().map(|(a, b)| (a.into(), b.into())).collect();
    relation.extend(names.iter().map(|x| (x.clone(), "top".to_string())));
    names.push("top".into());
    FinitePoset::new(&names, &relation).expect("cone")
}

/// Random order-preserving map, built greedily along a linear extension of
/// the source; falls back to a constant map.
pub fn random_monotone_map(source: Arc<FinitePoset>, target: Arc<FinitePoset>, seed: u64) -> PosetMap {
    monotone_from(&mut seeded(seed), source, target)
}

pub(crate) fn monotone_from(rng: &mut impl Rng, source: Arc<FinitePoset>, target: Arc<FinitePoset>) -> PosetMap {
    let candidates: Vec<usize> = (0..target.len()).collect();
    let img = greedy_monotone(rng, &source, None, &candidates, |a, b| target.leq_idx(a, b));
    let img = img.unwrap_or_else(|| vec![rng.random_range(0..target.len()); source.len()]);
    PosetMap::from_indices(source, target, img).expect("greedy assignment is monotone")
}

/// A random map between random posets of at most `max` elements each.
pub fn random_map(max: usize, seed: u64) -> PosetMap {
    let mut rng = seeded(seed);
    let source = Arc::new(small_poset(&mut rng, max));
    let target = Arc::new(small_poset(&mut rng, max));
    monotone_from(&mut rng, source, target)
}

/// Assigns each source element a candidate above the images of its lower
/// covers. `fixed` pins one minimal element to a candidate.
fn greedy_monotone(
    rng: &mut impl Rng,
    source: &FinitePoset,
    fixed: Option<(usize, usize)>,
    candidates: &[usize],
    leq: impl Fn(usize, usize) -> bool,
) -> Option<Vec<usize>> {
    let order = source.linear_extension_indices();
    'attempt: for _ in 0..MAP_ATTEMPTS {
        let mut img = vec![usize::MAX; source.len()];
        for &x in &order {
            if let Some((b, l)) = fixed {
                if x == b {
                    img[x] = l;
                    continue;
                }
            }
            let allowed: Vec<usize> = candidates
                .iter()
                .copied()
                .filter(|&l| source.lower_covers(x).iter().all(|&z| leq(img[z], l)))
                .collect();
            match allowed.choose(rng) {
                Some(&l) => img[x] = l,
                None => continue 'attempt,
            }
        }
        return Some(img);
    }
    None
}

/// Compatible families over the strict up-set of `p`: for each `q > p` a
/// point of `X_q`, compatible with the transitions already chosen.
struct Families {
    ups: Vec<usize>,
    covers: Vec<usize>,
    members: Vec<Vec<usize>>,
    base: usize,
}

fn families(
    index: &FinitePoset,
    p: usize,
    sizes: &[usize],
    bases: &[usize],
    maps: &BTreeMap<(usize, usize), Vec<usize>>,
) -> Option<Families> {
    let ups: Vec<usize> = index.up_bits(p).ones().filter(|&q| q != p).collect();
    let covers = index.upper_covers(p).to_vec();
    let total = covers.iter().try_fold(1usize, |acc, &c| acc.checked_mul(sizes[c]))?;
    if total > FAMILY_CAP {
        return None;
    }
    let value = |c: usize, y: usize, r: usize| if c == r { y } else { maps[&(c, r)][y] };
    let mut members = Vec::new();
    let mut choice = vec![0usize; covers.len()];
    'product: loop {
        let mut family = Vec::with_capacity(ups.len());
        let mut compatible = true;
        for &r in &ups {
            let mut v = None;
            for (k, &c) in covers.iter().enumerate() {
                if index.leq_idx(c, r) {
                    let y = value(c, choice[k], r);
                    match v {
                        None => v = Some(y),
                        Some(w) if w != y => compatible = false,
                        _ => {}
                    }
                }
            }
            family.push(v.expect("every strict upper element lies above a cover"));
        }
        if compatible {
            members.push(family);
        }
        for k in 0..covers.len() {
            choice[k] += 1;
            if choice[k] < sizes[covers[k]] {
                continue 'product;
            }
            choice[k] = 0;
        }
        break;
    }
    let base_family: Vec<usize> = ups.iter().map(|&q| bases[q]).collect();
    let base = members.iter().position(|f| *f == base_family)?;
    Some(Families {
        ups,
        covers,
        members,
        base,
    })
}

/// Random diagram over a random index of at most `index_size` points with
/// fibers of at most `fiber_size` points.
pub fn random_diagram(index_size: usize, fiber_size: usize, seed: u64) -> PosetDiagram {
    let mut rng = seeded(seed);
    let index = Arc::new(small_poset(&mut rng, index_size));
    diagram_from(&mut rng, index, fiber_size)
}

/// Random diagram over a given index.
///
/// Transitions are chosen top-down along a linear extension: each point maps
/// into the compatible families over its strict up-set, so functoriality holds
/// by construction. Fibers carry a minimal basepoint that every transition
/// preserves, which keeps the family set nonempty.
pub fn random_diagram_over(index: Arc<FinitePoset>, fiber_size: usize, seed: u64) -> PosetDiagram {
    diagram_from(&mut seeded(seed), index, fiber_size)
}

pub(crate) fn diagram_from(rng: &mut impl Rng, index: Arc<FinitePoset>, fiber_size: usize) -> PosetDiagram {
    let fibers: Vec<Arc<FinitePoset>> = (0..index.len())
        .map(|_| Arc::new(small_poset(rng, fiber_size)))
        .collect();
    diagram_with_fibers(rng, index, fibers)
}

fn diagram_with_fibers(
    rng: &mut impl Rng,
    index: Arc<FinitePoset>,
    fibers: Vec<Arc<FinitePoset>>,
) -> PosetDiagram {
    let sizes: Vec<usize> = fibers.iter().map(|f| f.len()).collect();
    let bases: Vec<usize> = fibers.iter().map(|f| f.linear_extension_indices()[0]).collect();
    let mut maps: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for p in index.linear_extension_indices().into_iter().rev() {
        if index.upper_covers(p).is_empty() {
            continue;
        }
        let fiber = &fibers[p];
        let chosen = families(&index, p, &sizes, &bases, &maps).map(|fam| {
            let candidates: Vec<usize> = (0..fam.members.len()).collect();
            let leq = |a: usize, b: usize| {
                fam.covers.iter().all(|&c| {
                    let k = fam.ups.iter().position(|&q| q == c).expect("cover");
                    fibers[c].leq_idx(fam.members[a][k], fam.members[b][k])
                })
            };
            let img = greedy_monotone(rng, fiber, Some((bases[p], fam.base)), &candidates, leq)
                .unwrap_or_else(|| vec![fam.base; fiber.len()]);
            img.iter().map(|&l| fam.members[l].clone()).collect::<Vec<_>>()
        });
        let ups: Vec<usize> = index.up_bits(p).ones().filter(|&q| q != p).collect();
        for (k, &q) in ups.iter().enumerate() {
            let assignment = match &chosen {
                Some(images) => images.iter().map(|f| f[k]).collect(),
                None => vec![bases[q]; fiber.len()],
            };
            maps.insert((p, q), assignment);
        }
    }
    let transitions: Vec<((usize, usize), PosetMap)> = maps
        .into_iter()
        .map(|((p, q), a)| {
            let f = PosetMap::from_indices(fibers[p].clone(), fibers[q].clone(), a).expect("monotone family map");
            ((p, q), f)
        })
        .collect();
    Diagram::new(index, fibers, transitions).expect("functorial by construction")
}

/// Complex on `"v0".."v{v-1}"` generated by random simplices of at most three
/// vertices; every vertex is covered.
pub fn random_complex(v: usize, seed: u64) -> SimplicialComplex {
    complex_from(&mut seeded(seed), v)
}

pub(crate) fn complex_from(rng: &mut impl Rng, v: usize) -> SimplicialComplex {
    let v = v.max(1);
    let names: Vec<String> = (0..v).map(|i| format!("v{i}")).collect();
    let all: Vec<usize> = (0..v).collect();
    let mut simplices: Vec<Vec<String>> = Vec::new();
    let mut covered = vec![false; v];
    for _ in 0..rng.random_range(1..=v) {
        let k = rng.random_range(1..=v.min(3));
        let s: Vec<usize> = all.choose_multiple(rng, k).copied().collect();
        for &x in &s {
            covered[x] = true;
        }
        simplices.push(s.iter().map(|&x| names[x].clone()).collect());
    }
    for x in 0..v {
        if !covered[x] {
            let y = rng.random_range(0..v);
            simplices.push(vec![names[x].clone(), names[y].clone()]);
        }
    }
    SimplicialComplex::new(&names, &simplices).expect("covering simplices")
}

/// Random diagram of complexes, built like [`random_diagram_over`] with
/// vertex 0 of each fiber as basepoint and simplicial transitions.
pub fn random_complex_diagram(index_size: usize, vertices: usize, seed: u64) -> ComplexDiagram {
    let mut rng = seeded(seed);
    let index = Arc::new(small_poset(&mut rng, index_size));
    complex_diagram_from(&mut rng, index, vertices)
}

pub(crate) fn complex_diagram_from(rng: &mut impl Rng, index: Arc<FinitePoset>, vertices: usize) -> ComplexDiagram {
    let fibers: Vec<Arc<SimplicialComplex>> = (0..index.len())
        .map(|_| {
            let v = rng.random_range(1..=vertices.max(1));
            Arc::new(complex_from(rng, v))
        })
        .collect();
    let sizes: Vec<usize> = fibers.iter().map(|k| k.vertices().len()).collect();
    let bases = vec![0usize; index.len()];
    let mut maps: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for p in index.linear_extension_indices().into_iter().rev() {
        if index.upper_covers(p).is_empty() {
            continue;
        }
        let source = &fibers[p];
        let ups: Vec<usize> = index.up_bits(p).ones().filter(|&q| q != p).collect();
        let chosen = families(&index, p, &sizes, &bases, &maps).and_then(|fam| {
            let cover_pos: Vec<(usize, usize)> = fam
                .covers
                .iter()
                .map(|&c| (c, fam.ups.iter().position(|&q| q == c).expect("cover")))
                .collect();
            let simplicial = |img: &[usize], assigned: &[bool]| {
                source.facets().iter().all(|f| {
                    cover_pos.iter().all(|&(c, k)| {
                        let mut s: Vec<usize> = f
                            .iter()
                            .filter(|&&x| assigned[x])
                            .map(|&x| fam.members[img[x]][k])
                            .collect();
                        s.sort_unstable();
                        s.dedup();
                        s.is_empty() || fibers[c].contains(&s)
                    })
                })
            };
            'attempt: for _ in 0..MAP_ATTEMPTS {
                let n = source.vertices().len();
                let mut img = vec![fam.base; n];
                let mut assigned = vec![false; n];
                assigned[0] = true;
                for x in 1..n {
                    assigned[x] = true;
                    let options: Vec<usize> = (0..fam.members.len())
                        .filter(|&l| {
                            img[x] = l;
                            simplicial(&img, &assigned)
                        })
                        .collect();
                    match options.choose(rng) {
                        Some(&l) => img[x] = l,
                        None => continue 'attempt,
                    }
                }
                return Some(img.iter().map(|&l| fam.members[l].clone()).collect::<Vec<_>>());
            }
            None
        });
        for (k, &q) in ups.iter().enumerate() {
            let assignment = match &chosen {
                Some(images) => images.iter().map(|f| f[k]).collect(),
                None => vec![bases[q]; source.vertices().len()],
            };
            maps.insert((p, q), assignment);
        }
    }
    let transitions: Vec<((usize, usize), SimplicialMap)> = maps
        .into_iter()
        .map(|((p, q), a)| {
            let f = SimplicialMap::from_indices(fibers[p].clone(), fibers[q].clone(), a).expect("simplicial family map");
            ((p, q), f)
        })
        .collect();
    Diagram::new(index, fibers, transitions).expect("functorial by construction")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_output() {
        assert_eq!(random_poset(8, 0.4, 3), random_poset(8, 0.4, 3));
        assert_eq!(random_diagram(5, 5, 11), random_diagram(5, 5, 11));
        assert_eq!(random_complex(5, 2), random_complex(5, 2));
        assert_eq!(random_complex_diagram(3, 4, 9), random_complex_diagram(3, 4, 9));
    }

    #[test]
    fn density_extremes() {
        assert!(random_poset(6, 0.0, 1).covers().is_empty());
        let chain = random_poset(6, 1.0, 1);
        assert_eq!(chain.height(), 6);
        assert_eq!(random_poset(1, 0.5, 4).len(), 1);
    }

    #[test]
    fn generated_diagrams_are_valid_over_many_seeds() {
        for seed in 0..200 {
            let d = random_diagram(5, 5, seed);
            assert!(d.index().len() <= 5);
            assert!(d.fibers().iter().all(|f| f.len() <= 5));
            let k = random_complex_diagram(3, 4, seed);
            assert!(k.fibers().iter().all(|f| f.vertices().len() <= 4));
        }
    }

    #[test]
    fn some_transitions_are_not_constant() {
        let varied = (0..50)
            .filter(|&seed| {
                random_diagram(4, 4, seed)
                    .transitions()
                    .any(|(_, f)| f.assignment().windows(2).any(|w| w[0] != w[1]))
            })
            .count();
        assert!(varied > 10, "{varied}");
    }
}
