#![allow(dead_code)]

use finhtop::FinitePoset;

const P: u64 = 1_000_000_007;

/// Nonempty chains of `p`, as sorted index lists along a linear extension.
pub fn chains(p: &FinitePoset) -> Vec<Vec<Vec<usize>>> {
    let order = p.linear_extension_indices();
    let mut by_dim: Vec<Vec<Vec<usize>>> = Vec::new();
    fn grow(p: &FinitePoset, order: &[usize], from: usize, chain: &mut Vec<usize>, out: &mut Vec<Vec<Vec<usize>>>) {
        for k in from..order.len() {
            let y = order[k];
            if chain.last().is_none_or(|&x| x != y && p.leq_idx(x, y)) {
                chain.push(y);
                let d = chain.len() - 1;
                if out.len() <= d {
                    out.resize(d + 1, Vec::new());
                }
                out[d].push(chain.clone());
                grow(p, order, k + 1, chain, out);
                chain.pop();
            }
        }
    }
    grow(p, &order, 0, &mut Vec::new(), &mut by_dim);
    by_dim
}

fn rank_mod_p(mut rows: Vec<Vec<u64>>) -> usize {
    let mut rank = 0;
    let cols = rows.first().map_or(0, |r| r.len());
    for c in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
        rows.swap(rank, pivot);
        let inv = pow(rows[rank][c], P - 2);
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let factor = rows[r][c] * inv % P;
                for k in c..cols {
                    let sub = factor * rows[rank][k] % P;
                    rows[r][k] = (rows[r][k] + P - sub) % P;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    acc
}

/// Betti numbers of `K(p)` over a large prime field, trailing zeros trimmed.
pub fn betti_mod_p(p: &FinitePoset) -> Vec<u64> {
    let by_dim = chains(p);
    let mut ranks = vec![0usize; by_dim.len() + 1];
    for d in 1..by_dim.len() {
        let faces: std::collections::HashMap<&Vec<usize>, usize> =
            by_dim[d - 1].iter().enumerate().map(|(i, s)| (s, i)).collect();
        let rows: Vec<Vec<u64>> = by_dim[d]
            .iter()
            .map(|s| {
                let mut row = vec![0u64; by_dim[d - 1].len()];
                for i in 0..s.len() {
                    let mut f = s.clone();
                    f.remove(i);
                    row[faces[&f]] = if i % 2 == 0 { 1 } else { P - 1 };
                }
                row
            })
            .collect();
        ranks[d] = rank_mod_p(rows);
    }
    let mut betti: Vec<u64> = (0..by_dim.len())
        .map(|d| (by_dim[d].len() - ranks[d] - ranks[d + 1]) as u64)
        .collect();
    while betti.len() > 1 && *betti.last().unwrap() == 0 {
        betti.pop();
    }
    betti
}

/// Betti numbers from a profile with trailing zeros trimmed.
pub fn trimmed(betti: &[u64]) -> Vec<u64> {
    let mut b = betti.to_vec();
    while b.len() > 1 && *b.last().unwrap() == 0 {
        b.pop();
    }
    b
}
