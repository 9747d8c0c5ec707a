//! Brute-force enumeration of small connected graphs up to isomorphism.
//!
//! Used as the exhaustive test corpus for the operator and transfer
//! identities. Graphs are encoded as edge bitmasks; the canonical form of
//! a mask is the minimum over all vertex permutations, so each isomorphism
//! class appears exactly once. Counts for n = 2..=6 are 1, 2, 6, 21, 112.

use crate::graph::Graph;
use std::collections::BTreeSet;

/// Hard cap: beyond 7 vertices the permutation scan is no longer a
/// sensible way to enumerate.
const MAX_VERTICES: usize = 7;

/// All connected graphs on exactly `n` vertices, one per isomorphism
/// class, in a deterministic order (ascending canonical edge mask).
///
/// # Panics
/// If `n` is outside `2..=7`.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    assert!(
        (2..=MAX_VERTICES).contains(&n),
        "corpus enumeration supports 2..={MAX_VERTICES} vertices, got {n}"
    );
    let pairs = vertex_pairs(n);
    let tables = permutation_edge_tables(n, &pairs);
    let mut canonical_masks = BTreeSet::new();
    for mask in 0u32..(1 << pairs.len()) {
        if !is_connected(mask, n, &pairs) {
            continue;
        }
        canonical_masks.insert(canonical_form(mask, &tables));
    }
    canonical_masks
        .into_iter()
        .map(|mask| {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|&(k, _)| mask & (1 << k) != 0)
                .map(|(_, &pair)| pair);
            Graph::new(n, edges).expect("enumerated masks are connected")
        })
        .collect()
}

/// The full corpus: all connected graphs with 2..=`n_max` vertices, one
/// per isomorphism class.
pub fn connected_graphs_up_to(n_max: usize) -> Vec<Graph> {
    (2..=n_max).flat_map(connected_graphs).collect()
}

/// Whether two small graphs are isomorphic, by comparing canonical edge
/// masks. Both must have at most 7 vertices.
pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let n = a.vertex_count();
    assert!(
        (2..=MAX_VERTICES).contains(&n),
        "isomorphism check supports 2..={MAX_VERTICES} vertices, got {n}"
    );
    let pairs = vertex_pairs(n);
    let tables = permutation_edge_tables(n, &pairs);
    canonical_form(edge_mask(a, &pairs), &tables) == canonical_form(edge_mask(b, &pairs), &tables)
}

fn edge_mask(g: &Graph, pairs: &[(usize, usize)]) -> u32 {
    let mut mask = 0u32;
    for (k, &pair) in pairs.iter().enumerate() {
        if g.has_edge(pair.0, pair.1) {
            mask |= 1 << k;
        }
    }
    mask
}

fn vertex_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect()
}

/// For every permutation of `0..n`, the induced map on edge-slot indices.
fn permutation_edge_tables(n: usize, pairs: &[(usize, usize)]) -> Vec<Vec<u8>> {
    let pair_index = |u: usize, v: usize| -> usize {
        let (a, b) = (u.min(v), u.max(v));
        pairs.iter().position(|&p| p == (a, b)).unwrap()
    };
    permutations(n)
        .into_iter()
        .map(|perm| {
            pairs
                .iter()
                .map(|&(u, v)| pair_index(perm[u], perm[v]) as u8)
                .collect()
        })
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    heap_permute(&mut items, n, &mut out);
    out
}

fn heap_permute(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(items.clone());
        return;
    }
    for i in 0..k {
        heap_permute(items, k - 1, out);
        if k.is_multiple_of(2) {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
    }
}

fn canonical_form(mask: u32, tables: &[Vec<u8>]) -> u32 {
    let mut best = u32::MAX;
    for table in tables {
        let mut image = 0u32;
        let mut bits = mask;
        while bits != 0 {
            let k = bits.trailing_zeros() as usize;
            image |= 1 << table[k];
            bits &= bits - 1;
        }
        best = best.min(image);
    }
    best
}

fn is_connected(mask: u32, n: usize, pairs: &[(usize, usize)]) -> bool {
    let mut adjacency = vec![0u8; n];
    for (k, &(u, v)) in pairs.iter().enumerate() {
        if mask & (1 << k) != 0 {
            adjacency[u] |= 1 << v;
            adjacency[v] |= 1 << u;
        }
    }
    let mut reached: u8 = 1;
    loop {
        let mut next = reached;
        let mut bits = reached;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            next |= adjacency[v];
            bits &= bits - 1;
        }
        if next == reached {
            break;
        }
        reached = next;
    }
    reached.count_ones() as usize == n
}
