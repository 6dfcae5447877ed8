//! Integral simplicial homology through Smith normal form.
//!
//! Boundary matrices of real inputs are large, sparse and full of unit
//! entries, so [`homology_profile`] first eliminates unit pivots on a sparse
//! column representation and only hands the (usually empty) remainder to the
//! dense, unbounded-integer [`smith_normal_form`].

use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::FinitePoset;
use crate::simplicial::{order_complex, SimplicialComplex};

/// Dense matrix of unbounded integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(v));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    /// Matrix product.
    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntegerMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.entries.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[target] -= factor * row[source]
    fn sub_row(&mut self, target: usize, source: usize, factor: &BigInt) {
        for j in 0..self.cols {
            let s = &self.entries[source * self.cols + j];
            if !s.is_zero() {
                let v = &self.entries[target * self.cols + j] - factor * s;
                self.entries[target * self.cols + j] = v;
            }
        }
    }

    /// col[target] -= factor * col[source]
    fn sub_col(&mut self, target: usize, source: usize, factor: &BigInt) {
        for i in 0..self.rows {
            let s = &self.entries[i * self.cols + source];
            if !s.is_zero() {
                let v = &self.entries[i * self.cols + target] - factor * s;
                self.entries[i * self.cols + target] = v;
            }
        }
    }
}

/// Invariant factors `d_1 | d_2 | ... | d_r` (all positive, `r` = rank).
///
/// Pivots are chosen by smallest nonzero magnitude, ties to the lowest row,
/// then the lowest column.
pub fn smith_normal_form(matrix: &IntegerMatrix) -> Vec<BigInt> {
    let mut a = matrix.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut factors = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = smallest_entry(&a, t) else {
            break;
        };
        a.swap_rows(t, pi);
        a.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = a.get(i, t).div_floor(a.get(t, t));
                a.sub_row(i, t, &q);
                if !a.get(i, t).is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = a.get(t, j).div_floor(a.get(t, t));
                a.sub_col(j, t, &q);
                if !a.get(t, j).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // a smaller remainder appeared in row/column t: move it to the pivot
                let (pi, pj) = smallest_in_cross(&a, t);
                a.swap_rows(t, pi);
                a.swap_cols(t, pj);
                continue;
            }
            let pivot = a.get(t, t).clone();
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !a.get(i, j).is_multiple_of(&pivot));
            match offender {
                Some((i, _)) => {
                    // fold row i into row t; the next pass leaves a smaller pivot
                    let minus_one = -BigInt::one();
                    a.sub_row(t, i, &minus_one);
                }
                None => break,
            }
        }
        factors.push(a.get(t, t).abs());
        t += 1;
    }
    factors
}

fn smallest_entry(a: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for i in t..a.rows {
        for j in t..a.cols {
            let v = a.get(i, j);
            if v.is_zero() {
                continue;
            }
            let m = v.abs();
            if best.as_ref().is_none_or(|(b, _, _)| m < *b) {
                best = Some((m, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

fn smallest_in_cross(a: &IntegerMatrix, t: usize) -> (usize, usize) {
    let mut best = (a.get(t, t).abs(), t, t);
    if best.0.is_zero() {
        best.0 = BigInt::from(-1);
    }
    let mut consider = |v: &BigInt, i: usize, j: usize| {
        if !v.is_zero() && (best.0.is_negative() || v.abs() < best.0) {
            best = (v.abs(), i, j);
        }
    };
    for i in t + 1..a.rows {
        consider(a.get(i, t), i, t);
    }
    for j in t + 1..a.cols {
        consider(a.get(t, j), t, j);
    }
    (best.1, best.2)
}

/// Sparse column: `(row, value)` sorted by row, no zeros.
type SparseColumn = Vec<(u32, i64)>;

/// Boundary operators `∂_1, ..., ∂_d` of a complex, as sparse columns.
///
/// `∂_k` maps `k`-simplices (columns) to `(k-1)`-simplices (rows); deleting
/// the `i`-th vertex (in vertex-index order) carries the sign `(-1)^i`.
fn sparse_boundaries(layers: &[Vec<Vec<usize>>]) -> Vec<(usize, Vec<SparseColumn>)> {
    let mut out = Vec::new();
    for k in 1..layers.len() {
        let faces: HashMap<&[usize], u32> = layers[k - 1]
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_slice(), i as u32))
            .collect();
        let mut columns = Vec::with_capacity(layers[k].len());
        let mut face = Vec::with_capacity(k);
        for s in &layers[k] {
            let mut col: SparseColumn = Vec::with_capacity(s.len());
            for skip in 0..s.len() {
                face.clear();
                face.extend(s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v));
                let sign = if skip % 2 == 0 { 1 } else { -1 };
                col.push((faces[face.as_slice()], sign));
            }
            col.sort_unstable();
            columns.push(col);
        }
        out.push((layers[k - 1].len(), columns));
    }
    out
}

/// Dense boundary matrices `∂_1, ..., ∂_d`, simplices in lexicographic order.
pub fn boundary_matrices(complex: &SimplicialComplex) -> Result<Vec<IntegerMatrix>> {
    if complex.is_empty() {
        return Err(Error::EmptyComplex);
    }
    let layers = complex.simplices_by_dimension();
    let sparse = sparse_boundaries(&layers);
    let dense: Vec<IntegerMatrix> = sparse
        .iter()
        .map(|(rows, columns)| {
            let mut m = IntegerMatrix::zeros(*rows, columns.len());
            for (j, col) in columns.iter().enumerate() {
                for &(i, v) in col {
                    m.set(i as usize, j, BigInt::from(v));
                }
            }
            m
        })
        .collect();
    for pair in dense.windows(2) {
        assert!(pair[0].mul(&pair[1]).is_zero(), "boundary of a boundary must vanish");
    }
    Ok(dense)
}

fn add_scaled(target: &SparseColumn, source: &SparseColumn, factor: i64) -> Option<SparseColumn> {
    let mut out = Vec::with_capacity(target.len() + source.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < source.len() {
        let next = match (target.get(i), source.get(j)) {
            (Some(&(r, a)), Some(&(s, b))) if r == s => {
                i += 1;
                j += 1;
                (r, a.checked_add(b.checked_mul(factor)?)?)
            }
            (Some(&(r, a)), Some(&(s, _))) if r < s => {
                i += 1;
                (r, a)
            }
            (Some(&(r, a)), None) => {
                i += 1;
                (r, a)
            }
            (_, Some(&(s, b))) => {
                j += 1;
                (s, b.checked_mul(factor)?)
            }
            (None, None) => unreachable!(),
        };
        if next.1 != 0 {
            out.push(next);
        }
    }
    Some(out)
}

/// Invariant factors of a sparse integer matrix.
///
/// Unit pivots are eliminated with column operations (each contributes a
/// factor 1); whatever survives is passed to the dense algorithm. Falls back
/// to the dense algorithm outright if an intermediate entry overflows.
fn sparse_invariant_factors(rows: usize, columns: &[SparseColumn]) -> Vec<BigInt> {
    match sparse_reduce(rows, columns) {
        Some((units, remainder)) => {
            let mut factors = vec![BigInt::one(); units];
            factors.extend(smith_normal_form(&remainder));
            factors
        }
        None => {
            let mut m = IntegerMatrix::zeros(rows, columns.len());
            for (j, col) in columns.iter().enumerate() {
                for &(i, v) in col {
                    m.set(i as usize, j, BigInt::from(v));
                }
            }
            smith_normal_form(&m)
        }
    }
}

fn sparse_reduce(rows: usize, columns: &[SparseColumn]) -> Option<(usize, IntegerMatrix)> {
    // pivot_of_row[r] = (creation time, column) of the unit pivot sitting in row r
    let mut pivot_of_row: Vec<Option<(usize, usize)>> = vec![None; rows];
    let mut cols: Vec<SparseColumn> = columns.to_vec();
    let mut pivots = 0usize;
    let mut pending: Vec<usize> = (0..cols.len()).collect();

    // Clears every pivot row from column c, earliest pivots first. A pivot
    // column is zero on all rows of earlier pivots, so cleared rows stay clear.
    let clear = |c: usize, cols: &mut Vec<SparseColumn>, pivot_of_row: &[Option<(usize, usize)>]| -> Option<()> {
        loop {
            let hit = cols[c]
                .iter()
                .filter_map(|&(r, v)| pivot_of_row[r as usize].map(|(t, pc)| (t, r, v, pc)))
                .min();
            let Some((_, r, v, pc)) = hit else { return Some(()) };
            let unit = cols[pc]
                .iter()
                .find(|&&(rr, _)| rr == r)
                .map(|&(_, u)| u)
                .expect("pivot entry");
            // unit is ±1, so v / unit == v * unit
            let updated = add_scaled(&cols[c], &cols[pc], -(v * unit))?;
            cols[c] = updated;
        }
    };

    loop {
        let mut remainder = Vec::new();
        let mut progressed = false;
        for c in pending {
            clear(c, &mut cols, &pivot_of_row)?;
            if cols[c].is_empty() {
                continue;
            }
            if let Some(&(r, _)) = cols[c].iter().find(|&&(_, v)| v == 1 || v == -1) {
                pivot_of_row[r as usize] = Some((pivots, c));
                pivots += 1;
                progressed = true;
            } else {
                remainder.push(c);
            }
        }
        pending = remainder;
        if !progressed {
            break;
        }
    }

    let free_rows: Vec<usize> = (0..rows).filter(|&r| pivot_of_row[r].is_none()).collect();
    let mut row_pos = vec![usize::MAX; rows];
    for (i, &r) in free_rows.iter().enumerate() {
        row_pos[r] = i;
    }
    let mut m = IntegerMatrix::zeros(free_rows.len(), pending.len());
    for (j, &c) in pending.iter().enumerate() {
        for &(r, v) in &cols[c] {
            debug_assert_ne!(row_pos[r as usize], usize::MAX);
            m.set(row_pos[r as usize], j, BigInt::from(v));
        }
    }
    Some((pivots, m))
}

/// Betti numbers and torsion coefficients per degree.
///
/// Stored normalized: trailing degrees with no homology are dropped, so
/// equality is degree-wise equality of groups.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomologyProfile {
    pub betti: Vec<u64>,
    #[serde(with = "decimal_torsion")]
    pub torsion: Vec<Vec<BigUint>>,
}

impl HomologyProfile {
    pub fn new(mut betti: Vec<u64>, mut torsion: Vec<Vec<BigUint>>) -> Self {
        let len = betti.len().max(torsion.len());
        betti.resize(len, 0);
        torsion.resize(len, Vec::new());
        for t in torsion.iter_mut() {
            t.sort();
        }
        while betti.last() == Some(&0) && torsion.last().is_some_and(Vec::is_empty) {
            betti.pop();
            torsion.pop();
        }
        HomologyProfile { betti, torsion }
    }

    /// Homology of a point.
    pub fn point() -> Self {
        Self::new(vec![1], vec![vec![]])
    }

    pub fn betti(&self, k: usize) -> u64 {
        self.betti.get(k).copied().unwrap_or(0)
    }

    pub fn torsion(&self, k: usize) -> &[BigUint] {
        self.torsion.get(k).map_or(&[], Vec::as_slice)
    }

    /// Reduced Betti number (`b_0 - 1` in degree 0).
    pub fn reduced_betti(&self, k: usize) -> u64 {
        if k == 0 {
            self.betti(0).saturating_sub(1)
        } else {
            self.betti(k)
        }
    }

    /// Lowest degree with nonzero reduced homology.
    pub fn first_nonzero_reduced_degree(&self) -> Option<usize> {
        (0..self.betti.len()).find(|&k| self.reduced_betti(k) > 0 || !self.torsion(k).is_empty())
    }

    /// All reduced groups vanish (homology of a point).
    pub fn is_acyclic(&self) -> bool {
        self.betti(0) == 1 && self.first_nonzero_reduced_degree().is_none()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.betti
            .iter()
            .enumerate()
            .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }
}

impl fmt::Display for HomologyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.betti.is_empty() {
            return writeln!(f, "H_0 = 0");
        }
        for k in 0..self.betti.len() {
            let mut parts = Vec::new();
            if self.betti[k] > 0 {
                parts.push(format!("Z^{}", self.betti[k]));
            }
            for d in &self.torsion[k] {
                parts.push(format!("Z/{d}"));
            }
            if parts.is_empty() {
                parts.push("0".into());
            }
            writeln!(f, "H_{k} = {}", parts.join(" ⊕ "))?;
        }
        Ok(())
    }
}

mod decimal_torsion {
    use num_bigint::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Num {
        Small(u64),
        Big(String),
    }

    pub fn serialize<S: Serializer>(t: &[Vec<BigUint>], s: S) -> Result<S::Ok, S::Error> {
        let nums: Vec<Vec<Num>> = t
            .iter()
            .map(|ds| {
                ds.iter()
                    .map(|d| match u64::try_from(d) {
                        Ok(v) => Num::Small(v),
                        Err(_) => Num::Big(d.to_string()),
                    })
                    .collect()
            })
            .collect();
        nums.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigUint>>, D::Error> {
        let nums: Vec<Vec<Num>> = Vec::deserialize(d)?;
        nums.into_iter()
            .map(|ds| {
                ds.into_iter()
                    .map(|n| match n {
                        Num::Small(v) => Ok(BigUint::from(v)),
                        Num::Big(s) => s.parse().map_err(D::Error::custom),
                    })
                    .collect()
            })
            .collect()
    }
}

fn profile_from_layers(layers: &[Vec<Vec<usize>>]) -> HomologyProfile {
    let dims: Vec<usize> = layers.iter().map(Vec::len).collect();
    let top = dims.len();
    // ranks[k] = rank of ∂_k, with ∂_0 = 0 and ∂_{top} = 0
    let mut ranks = vec![0usize; top + 1];
    let mut torsion: Vec<Vec<BigUint>> = vec![Vec::new(); top];
    for (k, (rows, columns)) in sparse_boundaries(layers).into_iter().enumerate() {
        let degree = k + 1;
        let factors = sparse_invariant_factors(rows, &columns);
        ranks[degree] = factors.len();
        torsion[degree - 1] = factors
            .into_iter()
            .filter(|d| !d.is_one())
            .map(|d| d.to_biguint().expect("invariant factors are positive"))
            .collect();
    }
    let betti: Vec<u64> = (0..top)
        .map(|k| (dims[k] - ranks[k] - ranks[k + 1]) as u64)
        .collect();
    let profile = HomologyProfile::new(betti, torsion);
    let chi: i64 = dims
        .iter()
        .enumerate()
        .map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) })
        .sum();
    assert_eq!(chi, profile.euler_characteristic(), "Euler characteristic mismatch");
    profile
}

/// Integral homology of a simplicial complex.
pub fn homology_profile(complex: &SimplicialComplex) -> Result<HomologyProfile> {
    if complex.is_empty() {
        return Err(Error::EmptyComplex);
    }
    Ok(profile_from_layers(&complex.simplices_by_dimension()))
}

/// Nonempty chains of a poset grouped by size, each chain listed bottom-up in
/// increasing index order.
pub(crate) fn chains_by_dimension(poset: &FinitePoset) -> Vec<Vec<Vec<usize>>> {
    let n = poset.len();
    let mut layers: Vec<Vec<Vec<usize>>> = Vec::new();
    // chains as sorted index sets; extend only by larger indices to avoid repeats
    let mut chain = Vec::new();
    fn grow(
        poset: &FinitePoset,
        candidates: &[usize],
        chain: &mut Vec<usize>,
        layers: &mut Vec<Vec<Vec<usize>>>,
    ) {
        for (i, &x) in candidates.iter().enumerate() {
            chain.push(x);
            let mut sorted = chain.clone();
            sorted.sort_unstable();
            if layers.len() < sorted.len() {
                layers.push(Vec::new());
            }
            layers[sorted.len() - 1].push(sorted);
            let rest: Vec<usize> = candidates[i + 1..]
                .iter()
                .copied()
                .filter(|&y| poset.leq_idx(x, y) || poset.leq_idx(y, x))
                .collect();
            grow(poset, &rest, chain, layers);
            chain.pop();
        }
    }
    let all: Vec<usize> = (0..n).collect();
    grow(poset, &all, &mut chain, &mut layers);
    for layer in layers.iter_mut() {
        layer.sort();
    }
    layers
}

/// Homology of the order complex `K(P)`.
///
/// Enumerates chains directly instead of going through the facet list of
/// [`order_complex`]; the two routes agree (checked in tests).
pub fn poset_homology(poset: &FinitePoset) -> Result<HomologyProfile> {
    if poset.is_empty() {
        return Err(Error::EmptyPoset);
    }
    Ok(profile_from_layers(&chains_by_dimension(poset)))
}

/// Homology of `K(P)` computed through the facet list of the order complex.
pub fn order_complex_homology(poset: &FinitePoset) -> Result<HomologyProfile> {
    homology_profile(&order_complex(poset)?)
}

pub fn profiles_equal(a: &HomologyProfile, b: &HomologyProfile) -> bool {
    a == b
}

/// `χ(K) = Σ (-1)^k #(k-simplices)`.
pub fn euler_characteristic(complex: &SimplicialComplex) -> i64 {
    complex.euler_characteristic()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::fixtures::sphere_pushout;
    use crate::poset::fixtures::circle;
    use crate::simplicial::fixtures::{edge, triangle_boundary};
    use num_traits::ToPrimitive;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// Rank over the rationals by fraction-free elimination, as an
    /// independent check of the integer algorithms.
    fn rational_rank(m: &IntegerMatrix) -> usize {
        let mut a: Vec<Vec<BigInt>> = (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| m.get(i, j).clone()).collect())
            .collect();
        let mut rank = 0;
        for c in 0..m.cols() {
            let Some(p) = (rank..a.len()).find(|&r| !a[r][c].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            for r in 0..a.len() {
                if r != rank && !a[r][c].is_zero() {
                    let (x, y) = (a[rank][c].clone(), a[r][c].clone());
                    for k in 0..m.cols() {
                        let v = &a[r][k] * &x - &a[rank][k] * &y;
                        a[r][k] = v;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn snf_examples() {
        assert_eq!(smith_normal_form(&IntegerMatrix::from_rows(&[vec![2]])), ints(&[2]));
        assert_eq!(
            smith_normal_form(&IntegerMatrix::from_rows(&[vec![1, 1], vec![1, 1]])),
            ints(&[1])
        );
        assert!(smith_normal_form(&IntegerMatrix::zeros(3, 2)).is_empty());
        // diag(2, 3) ~ diag(1, 6)
        assert_eq!(
            smith_normal_form(&IntegerMatrix::from_rows(&[vec![2, 0], vec![0, 3]])),
            ints(&[1, 6])
        );
        assert_eq!(
            smith_normal_form(&IntegerMatrix::from_rows(&[
                vec![2, 4, 4],
                vec![-6, 6, 12],
                vec![10, -4, -16]
            ])),
            ints(&[2, 6, 12])
        );
    }

    #[test]
    fn sparse_and_dense_routes_agree() {
        let m = IntegerMatrix::from_rows(&[
            vec![2, 4, 4, 0],
            vec![-6, 6, 12, 1],
            vec![10, -4, -16, 0],
        ]);
        let columns: Vec<SparseColumn> = (0..m.cols())
            .map(|j| {
                (0..m.rows())
                    .filter(|&i| !m.get(i, j).is_zero())
                    .map(|i| (i as u32, m.get(i, j).to_i64().unwrap()))
                    .collect()
            })
            .collect();
        assert_eq!(sparse_invariant_factors(m.rows(), &columns), smith_normal_form(&m));
    }

    #[test]
    fn boundary_examples() {
        let d = boundary_matrices(&edge()).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0], IntegerMatrix::from_rows(&[vec![-1], vec![1]]));
        let t = boundary_matrices(&triangle_boundary()).unwrap();
        for j in 0..3 {
            let sum: BigInt = (0..3).map(|i| t[0].get(i, j).clone()).sum();
            assert!(sum.is_zero());
        }
        let c = boundary_matrices(&order_complex(&circle()).unwrap()).unwrap();
        assert_eq!(rational_rank(&c[0]), 3);
        assert_eq!(smith_normal_form(&c[0]).len(), 3);
    }

    #[test]
    fn homology_examples() {
        let chain = poset_homology(&FinitePoset::chain(5)).unwrap();
        assert_eq!(chain, HomologyProfile::point());
        let s = poset_homology(&circle()).unwrap();
        assert_eq!(s.betti, vec![1, 1]);
        let sphere = poset_homology(&sphere_pushout().hocolim()).unwrap();
        assert_eq!(sphere.betti, vec![1, 0, 1]);
        assert!(matches!(poset_homology(&FinitePoset::empty()), Err(Error::EmptyPoset)));
    }

    #[test]
    fn projective_plane_has_two_torsion() {
        // 6-vertex triangulation of RP²
        let faces = [
            [1, 2, 4], [2, 3, 4], [1, 3, 5], [2, 3, 5], [1, 4, 5],
            [1, 2, 6], [1, 3, 6], [3, 4, 6], [4, 5, 6], [2, 5, 6],
        ];
        let verts: Vec<String> = (1..=6).map(|v| v.to_string()).collect();
        let simplices: Vec<Vec<String>> = faces
            .iter()
            .map(|f| f.iter().map(|v| v.to_string()).collect())
            .collect();
        let k = SimplicialComplex::new(&verts, &simplices).unwrap();
        let h = homology_profile(&k).unwrap();
        assert_eq!(h.betti, vec![1, 0]);
        assert_eq!(h.torsion(1), &[BigUint::from(2u32)]);
        assert_eq!(h.to_string(), "H_0 = Z^1\nH_1 = Z/2\n");
    }

    #[test]
    fn chain_enumeration_matches_order_complex() {
        for p in [circle(), sphere_pushout().hocolim(), FinitePoset::chain(4)] {
            assert_eq!(poset_homology(&p).unwrap(), order_complex_homology(&p).unwrap());
        }
    }

    #[test]
    fn opposite_has_the_same_homology() {
        let h = sphere_pushout().hocolim();
        assert_eq!(poset_homology(&h).unwrap(), poset_homology(&h.opposite()).unwrap());
    }

    #[test]
    fn profile_comparison_and_display() {
        let s = poset_homology(&circle()).unwrap();
        assert!(profiles_equal(&s, &s));
        assert!(!profiles_equal(&s, &HomologyProfile::point()));
        assert_eq!(HomologyProfile::new(vec![1, 0, 0], vec![]), HomologyProfile::point());
        assert_eq!(s.to_string(), "H_0 = Z^1\nH_1 = Z^1\n");
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"betti":[1,1],"torsion":[[],[]]}"#);
        assert_eq!(serde_json::from_str::<HomologyProfile>(&json).unwrap(), s);
    }

    #[test]
    fn euler_characteristic_matches_betti() {
        let k = triangle_boundary();
        assert_eq!(euler_characteristic(&k), 0);
        assert_eq!(homology_profile(&k).unwrap().euler_characteristic(), 0);
    }
}
