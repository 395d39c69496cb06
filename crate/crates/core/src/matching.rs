//! Interleaving distance between direct sums of intervals via ε-matchings.
//!
//! Matching `[a,b)` with `[c,d)` costs `max(|a-c|, |b-d|)`; leaving a summand
//! unmatched costs its width. The distance is the smallest ε admitting a
//! partial matching in which every cost is at most ε. It is found by binary
//! search over the finite set of pairwise costs and widths, testing each
//! candidate with a perfect-matching check on the usual augmented bipartite
//! graph (each side padded with one "diagonal" slot per summand of the other
//! side).

use alloc::vec;
use alloc::vec::Vec;

use crate::hom::endpoint_displacement;
use crate::interval::{hom_nonzero, shift, width, IntervalModule, PersistenceModule};
use crate::oracle::ScalarAssignment;
use crate::poly::Variable;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingResult {
    pub distance: Rational,
    /// 0-based `(M index, N index)` pairs, sorted by M index.
    pub matching: Vec<(usize, usize)>,
    pub unmatched_m: Vec<usize>,
    pub unmatched_n: Vec<usize>,
}

/// Kuhn's augmenting-path maximum matching; `adj[u]` lists right vertices.
fn max_matching(adj: &[Vec<usize>], right_len: usize) -> usize {
    fn augment(u: usize, adj: &[Vec<usize>], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for &v in &adj[u] {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            if owner[v].is_none_or(|w| augment(w, adj, seen, owner)) {
                owner[v] = Some(u);
                return true;
            }
        }
        false
    }
    let mut owner = vec![None; right_len];
    let mut size = 0;
    for u in 0..adj.len() {
        let mut seen = vec![false; right_len];
        if augment(u, adj, &mut seen, &mut owner) {
            size += 1;
        }
    }
    size
}

/// Whether the summands `ms`, `ns` admit an ε-matching.
///
/// Left vertices: `M_0..M_{m-1}`, then diagonal slots for `N`. Right
/// vertices: `N_0..N_{n-1}`, then diagonal slots for `M`.
fn feasible(ms: &[&IntervalModule], ns: &[&IntervalModule], eps: &Rational) -> bool {
    let (m, n) = (ms.len(), ns.len());
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); m + n];
    for (i, mi) in ms.iter().enumerate() {
        for (j, nj) in ns.iter().enumerate() {
            if &endpoint_displacement(mi, nj) <= eps {
                adj[i].push(j);
            }
        }
        if &width(mi) <= eps {
            adj[i].push(n + i);
        }
    }
    for (j, nj) in ns.iter().enumerate() {
        if &width(nj) <= eps {
            adj[m + j].push(j);
        }
        // diagonal to diagonal is free
        adj[m + j].extend(n..n + m);
    }
    max_matching(&adj, n + m) == m + n
}

pub fn match_distance(m_mod: &PersistenceModule, n_mod: &PersistenceModule) -> MatchingResult {
    let ms: Vec<&IntervalModule> = m_mod.summands.iter().collect();
    let ns: Vec<&IntervalModule> = n_mod.summands.iter().collect();

    let mut candidates: Vec<Rational> = ms
        .iter()
        .flat_map(|mi| ns.iter().map(move |nj| endpoint_displacement(mi, nj)))
        .chain(ms.iter().chain(ns.iter()).map(|iv| width(iv)))
        .collect();
    candidates.push(Rational::zero());
    candidates.sort();
    candidates.dedup();

    // the largest candidate is always feasible: delete everything
    let (mut lo, mut hi) = (0usize, candidates.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible(&ms, &ns, &candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let distance = candidates[lo].clone();
    let (matching, unmatched_m, unmatched_n) = canonical_matching(&ms, &ns, &distance);
    MatchingResult {
        distance,
        matching,
        unmatched_m,
        unmatched_n,
    }
}

/// The optimal matching that is lexicographically smallest when read as the
/// sequence of partners of `M_0, M_1, ...`, with "unmatched" ordered after
/// every `N` index.
fn canonical_matching(
    ms: &[&IntervalModule],
    ns: &[&IntervalModule],
    eps: &Rational,
) -> (Vec<(usize, usize)>, Vec<usize>, Vec<usize>) {
    let mut n_free: Vec<bool> = vec![true; ns.len()];
    let mut matching = Vec::new();
    let mut unmatched_m = Vec::new();
    for (i, mi) in ms.iter().enumerate() {
        let rest_m = &ms[i + 1..];
        let residual_ns = |taken: Option<usize>| -> Vec<&IntervalModule> {
            ns.iter()
                .enumerate()
                .filter(|(j, _)| n_free[*j] && Some(*j) != taken)
                .map(|(_, nj)| *nj)
                .collect()
        };
        let partner = (0..ns.len()).find(|&j| {
            n_free[j]
                && &endpoint_displacement(mi, ns[j]) <= eps
                && feasible(rest_m, &residual_ns(Some(j)), eps)
        });
        match partner {
            Some(j) => {
                n_free[j] = false;
                matching.push((i, j));
            }
            None => {
                debug_assert!(&width(mi) <= eps && feasible(rest_m, &residual_ns(None), eps));
                unmatched_m.push(i);
            }
        }
    }
    let unmatched_n = (0..ns.len()).filter(|&j| n_free[j]).collect();
    (matching, unmatched_m, unmatched_n)
}

/// Unit scalars along the matched pairs, wherever the corresponding hom
/// space at `e` is nonzero.
///
/// When `e` is at least the matching's cost this is an `e`-interleaving.
pub fn witness_from_matching(
    m_mod: &PersistenceModule,
    n_mod: &PersistenceModule,
    e: &Rational,
    matching: &[(usize, usize)],
) -> ScalarAssignment {
    let mut a = ScalarAssignment::new();
    for &(j, i) in matching {
        let (mj, ni) = (&m_mod.summands[j], &n_mod.summands[i]);
        let (Ok(ni_e), Ok(mj_e)) = (shift(ni, e), shift(mj, e)) else {
            continue;
        };
        if hom_nonzero(mj, &ni_e) {
            a.set(Variable::k(i + 1, j + 1), Rational::one());
        }
        if hom_nonzero(ni, &mj_e) {
            a.set(Variable::l(j + 1, i + 1), Rational::one());
        }
    }
    a
}
