//! Finite posets viewed as finite topological spaces.
//!
//! Open sets are the down-sets, so the minimal open neighbourhood of `x` is
//! `U_x = {y : y <= x}` and continuous maps are exactly the order-preserving
//! ones. A [`FinitePoset`] keeps its cover relation together with a dense
//! reachability matrix, so every `<=` query is a bit lookup.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// Default bound on the size of posets handed to [`is_isomorphic`].
pub const DEFAULT_ISOMORPHISM_LIMIT: usize = 12;

/// A finite partially ordered set on opaque string identifiers.
#[derive(Clone)]
pub struct FinitePoset {
    elements: Vec<String>,
    lookup: HashMap<String, usize>,
    /// Cover pairs `(x, y)` with `x ≺ y`, sorted by index.
    covers: Vec<(usize, usize)>,
    /// `up[x]` holds every `y` with `x <= y` (reflexive).
    up: Vec<FixedBitSet>,
    /// `down[y]` holds every `x` with `x <= y` (reflexive).
    down: Vec<FixedBitSet>,
    upper_covers: Vec<Vec<usize>>,
    lower_covers: Vec<Vec<usize>>,
}

impl PartialEq for FinitePoset {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements && self.covers == other.covers
    }
}

impl Eq for FinitePoset {}

impl fmt::Debug for FinitePoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinitePoset")
            .field("elements", &self.elements)
            .field("covers", &self.cover_names().collect::<Vec<_>>())
            .finish()
    }
}

impl FinitePoset {
    /// Builds a poset from identifiers and an arbitrary (acyclic) order relation.
    ///
    /// The relation is closed transitively and then reduced to its covers, so
    /// `[(a,b), (b,c), (a,c)]` and `[(a,b), (b,c)]` give the same poset.
    pub fn new<S, T>(elements: &[S], relations: &[(T, T)]) -> Result<Self>
    where
        S: AsRef<str>,
        T: AsRef<str>,
    {
        let elements: Vec<String> = elements.iter().map(|e| e.as_ref().to_string()).collect();
        let lookup = build_lookup(&elements)?;
        let mut pairs = Vec::with_capacity(relations.len());
        for (a, b) in relations {
            let a = *lookup
                .get(a.as_ref())
                .ok_or_else(|| Error::UnknownElement(a.as_ref().to_string()))?;
            let b = *lookup
                .get(b.as_ref())
                .ok_or_else(|| Error::UnknownElement(b.as_ref().to_string()))?;
            pairs.push((a, b));
        }
        Self::assemble(elements, lookup, pairs)
    }

    /// Builds a poset from owned identifiers and a relation on their indices.
    pub(crate) fn from_relation(
        elements: Vec<String>,
        relation: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let lookup = build_lookup(&elements)?;
        Self::assemble(elements, lookup, relation.into_iter().collect())
    }

    fn assemble(
        elements: Vec<String>,
        lookup: HashMap<String, usize>,
        relation: Vec<(usize, usize)>,
    ) -> Result<Self> {
        let n = elements.len();
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut indegree = vec![0usize; n];
        for (a, b) in relation {
            if a == b {
                continue;
            }
            succ[a].push(b);
        }
        for s in succ.iter_mut() {
            s.sort_unstable();
            s.dedup();
        }
        for s in &succ {
            for &b in s {
                indegree[b] += 1;
            }
        }
        let mut queue: Vec<usize> = (0..n).filter(|&i| indegree[i] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(x) = queue.pop() {
            order.push(x);
            for &y in &succ[x] {
                indegree[y] -= 1;
                if indegree[y] == 0 {
                    queue.push(y);
                }
            }
        }
        if order.len() != n {
            let stuck = (0..n).find(|&i| indegree[i] > 0).unwrap_or(0);
            return Err(Error::Cycle(elements[stuck].clone()));
        }
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for &x in order.iter().rev() {
            let mut row = FixedBitSet::with_capacity(n);
            row.insert(x);
            for &y in &succ[x] {
                row.union_with(&up[y]);
            }
            up[x] = row;
        }
        Ok(Self::from_closure(elements, lookup, up))
    }

    /// Builds the poset from a reflexive, transitive, antisymmetric `up` relation.
    fn from_closure(
        elements: Vec<String>,
        lookup: HashMap<String, usize>,
        up: Vec<FixedBitSet>,
    ) -> Self {
        let n = elements.len();
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for (x, row) in up.iter().enumerate() {
            for y in row.ones() {
                down[y].insert(x);
            }
        }
        let mut covers = Vec::new();
        let mut upper_covers = vec![Vec::new(); n];
        let mut lower_covers = vec![Vec::new(); n];
        for x in 0..n {
            let mut strict = up[x].clone();
            strict.set(x, false);
            for y in strict.ones() {
                // y covers x iff nothing strictly between them
                if strict.intersection_count(&down[y]) == 1 {
                    covers.push((x, y));
                    upper_covers[x].push(y);
                    lower_covers[y].push(x);
                }
            }
        }
        FinitePoset {
            elements,
            lookup,
            covers,
            up,
            down,
            upper_covers,
            lower_covers,
        }
    }

    /// The empty poset.
    pub fn empty() -> Self {
        Self::from_closure(Vec::new(), HashMap::new(), Vec::new())
    }

    /// The chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Self {
        let elements: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        Self::from_relation(elements, (1..n).map(|i| (i - 1, i))).expect("chain is acyclic")
    }

    /// The discrete poset on `0, ..., n-1`.
    pub fn antichain(n: usize) -> Self {
        let elements: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        Self::from_relation(elements, std::iter::empty()).expect("antichain is acyclic")
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn name(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn contains(&self, x: &str) -> bool {
        self.lookup.contains_key(x)
    }

    pub fn index_of(&self, x: &str) -> Result<usize> {
        self.lookup
            .get(x)
            .copied()
            .ok_or_else(|| Error::UnknownElement(x.to_string()))
    }

    /// Cover pairs as indices, sorted.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn cover_names(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.covers
            .iter()
            .map(|&(a, b)| (self.elements[a].as_str(), self.elements[b].as_str()))
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.upper_covers[x]
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.lower_covers[x]
    }

    /// `x <= y` by name.
    pub fn leq(&self, x: &str, y: &str) -> Result<bool> {
        Ok(self.leq_idx(self.index_of(x)?, self.index_of(y)?))
    }

    #[inline]
    pub fn leq_idx(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    /// Indices `y` with `x <= y`, as a bit set over this poset.
    pub fn up_bits(&self, x: usize) -> &FixedBitSet {
        &self.up[x]
    }

    /// Indices `y` with `y <= x`, as a bit set over this poset.
    pub fn down_bits(&self, x: usize) -> &FixedBitSet {
        &self.down[x]
    }

    pub fn is_minimal(&self, x: usize) -> bool {
        self.lower_covers[x].is_empty()
    }

    pub fn is_maximal(&self, x: usize) -> bool {
        self.upper_covers[x].is_empty()
    }

    /// The maximum element, if there is one.
    pub fn maximum(&self) -> Option<usize> {
        (0..self.len()).find(|&x| self.down[x].count_ones(..) == self.len())
    }

    /// The minimum element, if there is one.
    pub fn minimum(&self) -> Option<usize> {
        (0..self.len()).find(|&x| self.up[x].count_ones(..) == self.len())
    }

    /// `F_x`: the full subposet of elements `>= x`.
    pub fn up_set(&self, x: &str) -> Result<FinitePoset> {
        let i = self.index_of(x)?;
        Ok(self.induced(&self.up[i]))
    }

    /// `U_x`: the full subposet of elements `<= x`.
    pub fn down_set(&self, x: &str) -> Result<FinitePoset> {
        let i = self.index_of(x)?;
        Ok(self.induced(&self.down[i]))
    }

    /// `F̂_x`: elements strictly above `x`.
    pub fn strict_up_set(&self, x: &str) -> Result<FinitePoset> {
        let i = self.index_of(x)?;
        let mut bits = self.up[i].clone();
        bits.set(i, false);
        Ok(self.induced(&bits))
    }

    /// `Û_x`: elements strictly below `x`.
    pub fn strict_down_set(&self, x: &str) -> Result<FinitePoset> {
        let i = self.index_of(x)?;
        let mut bits = self.down[i].clone();
        bits.set(i, false);
        Ok(self.induced(&bits))
    }

    /// Same elements with the order reversed.
    pub fn opposite(&self) -> FinitePoset {
        let mut covers: Vec<(usize, usize)> = self.covers.iter().map(|&(a, b)| (b, a)).collect();
        covers.sort_unstable();
        FinitePoset {
            elements: self.elements.clone(),
            lookup: self.lookup.clone(),
            covers,
            up: self.down.clone(),
            down: self.up.clone(),
            upper_covers: self.lower_covers.clone(),
            lower_covers: self.upper_covers.clone(),
        }
    }

    /// Full induced subposet on the named elements, in stored order.
    pub fn subposet<S: AsRef<str>>(&self, subset: &[S]) -> Result<FinitePoset> {
        let mut keep = FixedBitSet::with_capacity(self.len());
        for s in subset {
            keep.insert(self.index_of(s.as_ref())?);
        }
        Ok(self.induced(&keep))
    }

    /// Full induced subposet on a set of indices, in stored order.
    pub fn induced(&self, keep: &FixedBitSet) -> FinitePoset {
        let kept: Vec<usize> = keep.ones().filter(|&i| i < self.len()).collect();
        let mut new_index = vec![usize::MAX; self.len()];
        for (j, &i) in kept.iter().enumerate() {
            new_index[i] = j;
        }
        let m = kept.len();
        let elements: Vec<String> = kept.iter().map(|&i| self.elements[i].clone()).collect();
        let lookup = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        let up = kept
            .iter()
            .map(|&i| {
                let mut row = FixedBitSet::with_capacity(m);
                for y in self.up[i].ones() {
                    if new_index[y] != usize::MAX {
                        row.insert(new_index[y]);
                    }
                }
                row
            })
            .collect();
        Self::from_closure(elements, lookup, up)
    }

    /// Deterministic linear extension, as indices.
    ///
    /// Kahn's algorithm on the covers, always emitting the available element
    /// with the lexicographically smallest identifier.
    pub fn linear_extension_indices(&self) -> Vec<usize> {
        let n = self.len();
        let mut indegree: Vec<usize> = (0..n).map(|i| self.lower_covers[i].len()).collect();
        let mut heap: BinaryHeap<Reverse<(&str, usize)>> = (0..n)
            .filter(|&i| indegree[i] == 0)
            .map(|i| Reverse((self.elements[i].as_str(), i)))
            .collect();
        let mut order = Vec::with_capacity(n);
        while let Some(Reverse((_, x))) = heap.pop() {
            order.push(x);
            for &y in &self.upper_covers[x] {
                indegree[y] -= 1;
                if indegree[y] == 0 {
                    heap.push(Reverse((self.elements[y].as_str(), y)));
                }
            }
        }
        order
    }

    /// Deterministic linear extension, as identifiers.
    pub fn linear_extension(&self) -> Vec<String> {
        self.linear_extension_indices()
            .into_iter()
            .map(|i| self.elements[i].clone())
            .collect()
    }

    /// Product order on pairs, named `(x,y)`.
    pub fn product(&self, other: &FinitePoset) -> FinitePoset {
        let m = other.len();
        let mut elements = Vec::with_capacity(self.len() * m);
        for x in &self.elements {
            for y in &other.elements {
                elements.push(format!("({x},{y})"));
            }
        }
        let mut relation = Vec::new();
        for i in 0..self.len() {
            for j in 0..m {
                for &i2 in &self.upper_covers[i] {
                    relation.push((i * m + j, i2 * m + j));
                }
                for &j2 in &other.upper_covers[j] {
                    relation.push((i * m + j, i * m + j2));
                }
            }
        }
        Self::from_relation(elements, relation).expect("product of posets is a poset")
    }

    /// Height: number of elements in a longest chain.
    pub fn height(&self) -> usize {
        let mut best = vec![0usize; self.len()];
        for x in self.linear_extension_indices() {
            let below = self.lower_covers[x]
                .iter()
                .map(|&y| best[y])
                .max()
                .unwrap_or(0);
            best[x] = below + 1;
        }
        best.into_iter().max().unwrap_or(0)
    }

    /// Same order with every identifier passed through `rename`.
    pub fn relabel(&self, mut rename: impl FnMut(&str) -> String) -> Result<FinitePoset> {
        let elements: Vec<String> = self.elements.iter().map(|e| rename(e)).collect();
        let lookup = build_lookup(&elements)?;
        Ok(Self::from_closure(elements, lookup, self.up.clone()))
    }

    /// True when both posets have the same elements and the same order,
    /// regardless of the order in which the elements are stored.
    pub fn same_order(&self, other: &FinitePoset) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let map: Option<Vec<usize>> = self
            .elements
            .iter()
            .map(|e| other.lookup.get(e).copied())
            .collect();
        let Some(map) = map else { return false };
        (0..self.len()).all(|x| {
            (0..self.len()).all(|y| self.leq_idx(x, y) == other.leq_idx(map[x], map[y]))
        })
    }
}

fn build_lookup(elements: &[String]) -> Result<HashMap<String, usize>> {
    let mut lookup = HashMap::with_capacity(elements.len());
    for (i, e) in elements.iter().enumerate() {
        if lookup.insert(e.clone(), i).is_some() {
            return Err(Error::DuplicateElement(e.clone()));
        }
    }
    Ok(lookup)
}

/// An order-preserving (equivalently, continuous) map between finite posets.
#[derive(Clone)]
pub struct PosetMap {
    source: Arc<FinitePoset>,
    target: Arc<FinitePoset>,
    assignment: Vec<usize>,
}

impl PartialEq for PosetMap {
    fn eq(&self, other: &Self) -> bool {
        self.assignment == other.assignment
            && same_arc(&self.source, &other.source)
            && same_arc(&self.target, &other.target)
    }
}

impl fmt::Debug for PosetMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<(&str, &str)> = self
            .assignment
            .iter()
            .enumerate()
            .map(|(x, &y)| (self.source.name(x), self.target.name(y)))
            .collect();
        f.debug_struct("PosetMap").field("assignment", &pairs).finish()
    }
}

pub(crate) fn same_arc<T: PartialEq>(a: &Arc<T>, b: &Arc<T>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl PosetMap {
    /// Builds a map from `(source element, target element)` pairs.
    pub fn new<S, T>(
        source: Arc<FinitePoset>,
        target: Arc<FinitePoset>,
        assignment: &[(S, T)],
    ) -> Result<Self>
    where
        S: AsRef<str>,
        T: AsRef<str>,
    {
        let mut image = vec![usize::MAX; source.len()];
        for (x, y) in assignment {
            let i = source.index_of(x.as_ref())?;
            image[i] = target.index_of(y.as_ref())?;
        }
        if let Some(missing) = image.iter().position(|&y| y == usize::MAX) {
            return Err(Error::PartialMap(source.name(missing).to_string()));
        }
        Self::from_indices(source, target, image)
    }

    /// Builds a map from an index assignment, validating monotonicity.
    pub fn from_indices(
        source: Arc<FinitePoset>,
        target: Arc<FinitePoset>,
        assignment: Vec<usize>,
    ) -> Result<Self> {
        if assignment.len() != source.len() {
            return Err(Error::DomainMismatch(format!(
                "assignment has {} entries for a source of size {}",
                assignment.len(),
                source.len()
            )));
        }
        if let Some(&bad) = assignment.iter().find(|&&y| y >= target.len()) {
            return Err(Error::DomainMismatch(format!("target index {bad} out of range")));
        }
        for &(a, b) in source.covers() {
            if !target.leq_idx(assignment[a], assignment[b]) {
                return Err(Error::NotOrderPreserving(
                    source.name(a).to_string(),
                    source.name(b).to_string(),
                ));
            }
        }
        Ok(PosetMap {
            source,
            target,
            assignment,
        })
    }

    pub fn identity(poset: Arc<FinitePoset>) -> Self {
        let assignment = (0..poset.len()).collect();
        PosetMap {
            source: poset.clone(),
            target: poset,
            assignment,
        }
    }

    /// The constant map onto `value`.
    pub fn constant(source: Arc<FinitePoset>, target: Arc<FinitePoset>, value: &str) -> Result<Self> {
        let y = target.index_of(value)?;
        let assignment = vec![y; source.len()];
        Ok(PosetMap {
            source,
            target,
            assignment,
        })
    }

    pub fn source(&self) -> &Arc<FinitePoset> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinitePoset> {
        &self.target
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    #[inline]
    pub fn apply_idx(&self, x: usize) -> usize {
        self.assignment[x]
    }

    pub fn apply(&self, x: &str) -> Result<&str> {
        Ok(self.target.name(self.assignment[self.source.index_of(x)?]))
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &PosetMap) -> Result<PosetMap> {
        if !same_arc(&self.target, &next.source) {
            return Err(Error::DomainMismatch(
                "composition: target of the first map is not the source of the second".into(),
            ));
        }
        Ok(PosetMap {
            source: self.source.clone(),
            target: next.target.clone(),
            assignment: self.assignment.iter().map(|&y| next.assignment[y]).collect(),
        })
    }

    /// Same assignment between new (equal-sized) posets, revalidated.
    pub fn rebase(&self, source: Arc<FinitePoset>, target: Arc<FinitePoset>) -> Result<PosetMap> {
        Self::from_indices(source, target, self.assignment.clone())
    }

    /// Induced subposet of the source on `{x : f(x) ∈ subset}`.
    pub fn preimage<S: AsRef<str>>(&self, subset: &[S]) -> Result<FinitePoset> {
        let mut bits = FixedBitSet::with_capacity(self.target.len());
        for s in subset {
            bits.insert(self.target.index_of(s.as_ref())?);
        }
        Ok(self.preimage_bits(&bits))
    }

    pub fn preimage_bits(&self, target_bits: &FixedBitSet) -> FinitePoset {
        let mut keep = FixedBitSet::with_capacity(self.source.len());
        for (x, &y) in self.assignment.iter().enumerate() {
            if target_bits.contains(y) {
                keep.insert(x);
            }
        }
        self.source.induced(&keep)
    }

    /// `f⁻¹(U_y)`.
    pub fn preimage_of_down_set(&self, y: usize) -> FinitePoset {
        self.preimage_bits(self.target.down_bits(y))
    }

    /// `f⁻¹(F_y)`.
    pub fn preimage_of_up_set(&self, y: usize) -> FinitePoset {
        self.preimage_bits(self.target.up_bits(y))
    }
}

/// Exact isomorphism test with the default size bound.
pub fn is_isomorphic(p: &FinitePoset, q: &FinitePoset) -> Result<bool> {
    is_isomorphic_with_limit(p, q, DEFAULT_ISOMORPHISM_LIMIT)
}

/// Exact isomorphism test by backtracking over invariant-compatible bijections.
pub fn is_isomorphic_with_limit(p: &FinitePoset, q: &FinitePoset, limit: usize) -> Result<bool> {
    Ok(find_isomorphism(p, q, limit)?.is_some())
}

/// An order isomorphism `p → q` as an index assignment, if one exists.
pub fn find_isomorphism(
    p: &FinitePoset,
    q: &FinitePoset,
    limit: usize,
) -> Result<Option<Vec<usize>>> {
    for poset in [p, q] {
        if poset.len() > limit {
            return Err(Error::SizeLimitExceeded {
                size: poset.len(),
                limit,
            });
        }
    }
    if p.len() != q.len() || p.covers().len() != q.covers().len() {
        return Ok(None);
    }
    let signature = |s: &FinitePoset, x: usize| {
        (
            s.down_bits(x).count_ones(..),
            s.up_bits(x).count_ones(..),
            s.lower_covers(x).len(),
            s.upper_covers(x).len(),
        )
    };
    let sig_p: Vec<_> = (0..p.len()).map(|x| signature(p, x)).collect();
    let sig_q: Vec<_> = (0..q.len()).map(|x| signature(q, x)).collect();
    let mut sorted_p = sig_p.clone();
    let mut sorted_q = sig_q.clone();
    sorted_p.sort_unstable();
    sorted_q.sort_unstable();
    if sorted_p != sorted_q {
        return Ok(None);
    }

    let order = p.linear_extension_indices();
    let mut image = vec![usize::MAX; p.len()];
    let mut used = vec![false; q.len()];

    fn extend(
        depth: usize,
        order: &[usize],
        p: &FinitePoset,
        q: &FinitePoset,
        sig_p: &[(usize, usize, usize, usize)],
        sig_q: &[(usize, usize, usize, usize)],
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let x = order[depth];
        for y in 0..q.len() {
            if used[y] || sig_q[y] != sig_p[x] {
                continue;
            }
            let consistent = order[..depth].iter().all(|&a| {
                let b = image[a];
                p.leq_idx(a, x) == q.leq_idx(b, y) && p.leq_idx(x, a) == q.leq_idx(y, b)
            });
            if !consistent {
                continue;
            }
            image[x] = y;
            used[y] = true;
            if extend(depth + 1, order, p, q, sig_p, sig_q, image, used) {
                return true;
            }
            used[y] = false;
            image[x] = usize::MAX;
        }
        false
    }

    if extend(0, &order, p, q, &sig_p, &sig_q, &mut image, &mut used) {
        Ok(Some(image))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// Minimal finite model of the circle: a,b < c,d.
    pub fn circle() -> FinitePoset {
        FinitePoset::new(
            &["a", "b", "c", "d"],
            &[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")],
        )
        .unwrap()
    }

    pub fn named_chain(names: &[&str]) -> FinitePoset {
        let rel: Vec<(&str, &str)> = names.windows(2).map(|w| (w[0], w[1])).collect();
        FinitePoset::new(names, &rel).unwrap()
    }
}
