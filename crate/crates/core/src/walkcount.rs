//! Exact closed-walk counting: adjacency-power propagation, restricted
//! ("hat") counts, the level-decomposition recurrence engine, level-sequence
//! censuses, spectral moments, and the Estrada index.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::treekit::{Forest, RootedView};
use crate::{Error, Result};

/// Per-vertex exact closed-walk counts for a fixed length k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkVector {
    pub k: usize,
    pub counts: Vec<BigUint>,
}

impl WalkVector {
    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }
}

fn zeros(n: usize) -> Vec<BigUint> {
    vec![BigUint::zero(); n]
}

/// One sparse adjacency application: out[u] = sum of x[w] over neighbors w.
fn apply_adjacency(f: &Forest, x: &[BigUint]) -> Vec<BigUint> {
    let mut out = zeros(f.n());
    for (u, acc) in out.iter_mut().enumerate() {
        for &w in f.adj(u) {
            *acc += &x[w];
        }
    }
    out
}

/// counts[v] = number of closed k-walks from v, the diagonal of the k-th
/// adjacency power, computed exactly by repeated sparse application.
pub fn closed_walks_power(f: &Forest, k: usize) -> WalkVector {
    let n = f.n();
    if k == 0 {
        return WalkVector {
            k,
            counts: vec![BigUint::one(); n],
        };
    }
    if k % 2 == 1 {
        // trees are bipartite
        return WalkVector {
            k,
            counts: zeros(n),
        };
    }
    let mut counts = zeros(n);
    for v in 0..n {
        let mut x = zeros(n);
        x[v] = BigUint::one();
        for _ in 0..k {
            x = apply_adjacency(f, &x);
        }
        counts[v] = core::mem::take(&mut x[v]);
    }
    WalkVector { k, counts }
}

/// Diagonal profile: walk vectors for every length 0..=k_max in one pass
/// per source vertex.
pub fn closed_walks_profile(f: &Forest, k_max: usize) -> Vec<WalkVector> {
    let n = f.n();
    let mut vectors: Vec<WalkVector> = (0..=k_max)
        .map(|k| WalkVector {
            k,
            counts: zeros(n),
        })
        .collect();
    for v in 0..n {
        let mut x = zeros(n);
        x[v] = BigUint::one();
        vectors[0].counts[v] = BigUint::one();
        for wv in vectors.iter_mut().skip(1) {
            x = apply_adjacency(f, &x);
            wv.counts[v] = x[v].clone();
        }
    }
    vectors
}

/// Default guard on walk extensions explored by the brute-force oracle.
pub const DEFAULT_BRUTEFORCE_LIMIT: u64 = 10_000_000;

/// Independent oracle: explicit depth-first enumeration of all closed
/// k-walks from `v`. Fails with `TooLarge` past the extension guard.
pub fn closed_walks_bruteforce(f: &Forest, k: usize, v: usize) -> Result<BigUint> {
    closed_walks_bruteforce_with_limit(f, k, v, DEFAULT_BRUTEFORCE_LIMIT)
}

pub fn closed_walks_bruteforce_with_limit(
    f: &Forest,
    k: usize,
    v: usize,
    limit: u64,
) -> Result<BigUint> {
    let mut budget = limit;
    let mut count = BigUint::zero();
    dfs_walks(f, v, v, k, &mut budget, &mut count, None)?;
    Ok(count)
}

/// DFS over walk prefixes; `restrict` carries the hat-restriction context
/// when enumerating restricted walks.
fn dfs_walks(
    f: &Forest,
    target: usize,
    cur: usize,
    steps_left: usize,
    budget: &mut u64,
    count: &mut BigUint,
    restrict: Option<(&RootedView, u32)>,
) -> Result<()> {
    if steps_left == 0 {
        if cur == target {
            *count += BigUint::one();
        }
        return Ok(());
    }
    for &w in f.adj(cur) {
        if let Some((rv, start_level)) = restrict {
            let (a, b) = (rv.level(cur), rv.level(w));
            if a == 0 && b == 0 {
                continue;
            }
            if a == start_level && b + 1 == start_level {
                continue;
            }
        }
        if *budget == 0 {
            return Err(Error::TooLarge {
                limit: DEFAULT_BRUTEFORCE_LIMIT,
            });
        }
        *budget -= 1;
        dfs_walks(f, target, w, steps_left - 1, budget, count, restrict)?;
    }
    Ok(())
}

/// Brute-force hat count: closed k-walks from `v` whose level sequences
/// avoid the pairs (0,0) and (level(v), level(v) - 1). Oracle only.
pub fn hat_closed_walks_bruteforce(
    f: &Forest,
    rv: &RootedView,
    v: usize,
    k: usize,
    limit: u64,
) -> Result<BigUint> {
    let mut budget = limit;
    let mut count = BigUint::zero();
    dfs_walks(f, v, v, k, &mut budget, &mut count, Some((rv, rv.level(v))))?;
    Ok(count)
}

/// Number of closed k-walks starting from the edge vw, i.e. from v with
/// first step to w.
pub fn edge_closed_walks(f: &Forest, v: usize, w: usize, k: usize) -> Result<BigUint> {
    if v >= f.n() || w >= f.n() || !f.has_edge(v, w) {
        return Err(Error::NotAnEdge);
    }
    if k == 0 || k % 2 == 1 {
        return Ok(BigUint::zero());
    }
    // walks of length k - 1 from w back to v
    let mut x = zeros(f.n());
    x[w] = BigUint::one();
    for _ in 0..k - 1 {
        x = apply_adjacency(f, &x);
    }
    Ok(core::mem::take(&mut x[v]))
}

/// One restricted adjacency application for hat walks anchored at
/// `start_level`: transitions (0,0) and (start_level, start_level - 1)
/// are forbidden.
fn apply_restricted(f: &Forest, rv: &RootedView, start_level: u32, x: &[BigUint]) -> Vec<BigUint> {
    let mut out = zeros(f.n());
    for (u, acc) in out.iter_mut().enumerate() {
        let lu = rv.level(u);
        for &w in f.adj(u) {
            let lw = rv.level(w);
            // transition goes w -> u when accumulating into u
            if lw == 0 && lu == 0 {
                continue;
            }
            if lw == start_level && lu + 1 == start_level {
                continue;
            }
            *acc += &x[w];
        }
    }
    out
}

/// Hat count: closed k-walks from `v` whose level sequence never contains
/// the consecutive pair (0,0), nor (i, i-1) for i = level(v). In a tree this
/// confines the walk to the subtree below `v` (and below the root edge).
pub fn hat_closed_walks(f: &Forest, rv: &RootedView, v: usize, k: usize) -> BigUint {
    if k == 0 {
        return BigUint::one();
    }
    if k % 2 == 1 {
        return BigUint::zero();
    }
    let start_level = rv.level(v);
    let mut x = zeros(f.n());
    x[v] = BigUint::one();
    for _ in 0..k {
        x = apply_restricted(f, rv, start_level, &x);
    }
    core::mem::take(&mut x[v])
}

/// Hat count anchored at the parent's level, for walks starting from the
/// parent along the edge to `child`.
pub fn hat_edge_closed_walks(
    f: &Forest,
    rv: &RootedView,
    parent: usize,
    child: usize,
    k: usize,
) -> Result<BigUint> {
    if rv.parent(child) != Some(parent) {
        return Err(Error::NotParentChild);
    }
    if k == 0 || k % 2 == 1 {
        return Ok(BigUint::zero());
    }
    let start_level = rv.level(parent);
    let mut x = zeros(f.n());
    x[child] = BigUint::one();
    for _ in 0..k - 1 {
        x = apply_restricted(f, rv, start_level, &x);
    }
    Ok(core::mem::take(&mut x[parent]))
}

/// Default guard on the walk length for full level censuses.
pub const DEFAULT_CENSUS_K_LIMIT: usize = 12;

/// Map from level sequence (i_1, ..., i_{k+1}) to the exact number of closed
/// k-walks from `start` realizing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelCensus {
    pub start: usize,
    pub k: usize,
    pub counts: BTreeMap<Vec<u32>, BigUint>,
}

impl LevelCensus {
    pub fn total(&self) -> BigUint {
        self.counts.values().sum()
    }
}

pub fn level_census(f: &Forest, rv: &RootedView, v: usize, k: usize) -> Result<LevelCensus> {
    level_census_with_limit(f, rv, v, k, DEFAULT_CENSUS_K_LIMIT)
}

pub fn level_census_with_limit(
    f: &Forest,
    rv: &RootedView,
    v: usize,
    k: usize,
    k_limit: usize,
) -> Result<LevelCensus> {
    if k > k_limit {
        return Err(Error::TooLarge {
            limit: k_limit as u64,
        });
    }
    let mut counts = BTreeMap::new();
    let mut seq = vec![rv.level(v)];
    census_rec(f, rv, v, v, k, &mut seq, &mut counts);
    Ok(LevelCensus {
        start: v,
        k,
        counts,
    })
}

fn census_rec(
    f: &Forest,
    rv: &RootedView,
    target: usize,
    cur: usize,
    steps_left: usize,
    seq: &mut Vec<u32>,
    counts: &mut BTreeMap<Vec<u32>, BigUint>,
) {
    if steps_left == 0 {
        if cur == target {
            *counts.entry(seq.clone()).or_insert_with(BigUint::zero) += BigUint::one();
        }
        return;
    }
    for &w in f.adj(cur) {
        seq.push(rv.level(w));
        census_rec(f, rv, target, w, steps_left - 1, seq, counts);
        seq.pop();
    }
}

// ---------------------------------------------------------------------------
// Recurrence engine
// ---------------------------------------------------------------------------

/// Per-vertex even-length count tables used by the recurrence engine.
/// Index m stands for walk length 2m.
struct RecurrenceTables {
    hat: Vec<Vec<BigUint>>,
    full: Vec<Vec<BigUint>>,
}

fn recurrence_tables(f: &Forest, rv: &RootedView, half_k: usize) -> RecurrenceTables {
    let n = f.n();
    let kk = half_k;

    // hat counts, deepest level first: a walk confined below v decomposes by
    // the first return to v after visiting one child subtree.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_unstable_by_key(|&v| core::cmp::Reverse(rv.level(v)));
    let mut hat = vec![vec![BigUint::zero(); kk + 1]; n];
    for &v in &order {
        hat[v][0] = BigUint::one();
        for m in 1..=kk {
            let mut acc = BigUint::zero();
            for &c in rv.children(v) {
                for t in 0..m {
                    if !hat[c][t].is_zero() && !hat[v][m - 1 - t].is_zero() {
                        acc += &hat[c][t] * &hat[v][m - 1 - t];
                    }
                }
            }
            hat[v][m] = acc;
        }
    }

    // hat edge count for a parent/child pair at length 2m:
    // step down, stay below the child for 2t steps, step back up, then a
    // hat walk at the parent for the remainder.
    let hat_edge = |hat: &Vec<Vec<BigUint>>, u: usize, c: usize, m: usize| -> BigUint {
        if m == 0 {
            return BigUint::zero();
        }
        let mut acc = BigUint::zero();
        for t in 0..m {
            if !hat[c][t].is_zero() && !hat[u][m - 1 - t].is_zero() {
                acc += &hat[c][t] * &hat[u][m - 1 - t];
            }
        }
        acc
    };

    // root-edge crossing counts (edge-rooted only): cross[r][m] counts walks
    // of length 2m from root r whose first step crosses the root edge.
    let mut cross = vec![vec![BigUint::zero(); kk + 1]; n];
    let mut full = vec![vec![BigUint::zero(); kk + 1]; n];
    for row in &mut full {
        row[0] = BigUint::one();
    }
    if rv.is_edge_rooted() {
        let (r0, r1) = (rv.roots()[0], rv.roots()[1]);
        for m in 1..=kk {
            for (r, other) in [(r0, r1), (r1, r0)] {
                // first return to r splits off a hat walk on the far side
                let mut acc = BigUint::zero();
                for t in 0..m {
                    if !hat[other][t].is_zero() && !full[r][m - 1 - t].is_zero() {
                        acc += &hat[other][t] * &full[r][m - 1 - t];
                    }
                }
                cross[r][m] = acc;
            }
            for r in [r0, r1] {
                // split a closed walk at r by its first root-edge crossing
                let mut acc = hat[r][m].clone();
                for t in 0..m {
                    if !hat[r][t].is_zero() && !cross[r][m - t].is_zero() {
                        acc += &hat[r][t] * &cross[r][m - t];
                    }
                }
                full[r][m] = acc;
            }
        }
    } else {
        for &r in rv.roots() {
            for m in 1..=kk {
                // a single vertex root cannot ascend: every walk is a hat walk
                full[r][m] = hat[r][m].clone();
            }
        }
    }

    // parent-edge counts top-down: pe[v][m] = C_{f(v),v}(2m), split by the
    // first ascent above the parent.
    let mut by_level: Vec<usize> = (0..n).collect();
    by_level.sort_unstable_by_key(|&v| rv.level(v));
    let mut pe = vec![vec![BigUint::zero(); kk + 1]; n];
    for &v in &by_level {
        let Some(u) = rv.parent(v) else { continue };
        for m in 1..=kk {
            let he_m = hat_edge(&hat, u, v, m);
            let mut acc = he_m;
            if rv.level(u) == 0 {
                if rv.is_edge_rooted() {
                    for t in 1..m {
                        let he_t = hat_edge(&hat, u, v, t);
                        if !he_t.is_zero() && !cross[u][m - t].is_zero() {
                            acc += he_t * &cross[u][m - t];
                        }
                    }
                }
                // vertex root: nothing above, the hat-edge count is exact
            } else {
                for t in 1..m {
                    let he_t = hat_edge(&hat, u, v, t);
                    if !he_t.is_zero() && !pe[u][m - t].is_zero() {
                        acc += he_t * &pe[u][m - t];
                    }
                }
            }
            pe[v][m] = acc;
        }
        // full counts: split a closed walk at v by its first ascent;
        // reversal makes C_{v,f(v)} = C_{f(v),v}.
        for m in 1..=kk {
            let mut acc = hat[v][m].clone();
            for t in 0..m {
                if !hat[v][t].is_zero() && !pe[v][m - t].is_zero() {
                    acc += &hat[v][t] * &pe[v][m - t];
                }
            }
            full[v][m] = acc;
        }
    }

    RecurrenceTables { hat, full }
}

/// Computes C_v(k) for every vertex through the level decomposition into hat
/// counts and parent-edge counts. Must agree with [`closed_walks_power`]
/// entry-exact; odd k gives all zeros.
pub fn walk_vector_by_recurrence(f: &Forest, rv: &RootedView, k: usize) -> WalkVector {
    let n = f.n();
    if k % 2 == 1 {
        return WalkVector {
            k,
            counts: zeros(n),
        };
    }
    let tables = recurrence_tables(f, rv, k / 2);
    WalkVector {
        k,
        counts: (0..n).map(|v| tables.full[v][k / 2].clone()).collect(),
    }
}

/// Hat counts for every vertex at all even lengths up to `k`, from the
/// recurrence engine (used by the verifier's level lemma checks).
pub fn hat_table_by_recurrence(f: &Forest, rv: &RootedView, k: usize) -> Vec<Vec<BigUint>> {
    recurrence_tables(f, rv, k / 2).hat
}

// ---------------------------------------------------------------------------
// Spectral moments and Estrada index
// ---------------------------------------------------------------------------

/// M_k = sum over vertices of C_v(k), the k-th spectral moment.
pub fn spectral_moment(f: &Forest, k: usize) -> BigUint {
    closed_walks_power(f, k).total()
}

/// Truncated-series Estrada index: EE = sum over k of M_k / k!, cut off once
/// the tail bound n * L^{K+1} / (K+1)! / (1 - L/(K+2)) drops below `tol`,
/// with L = 2 sqrt(max_degree - 1) bounding the spectral radius of a tree
/// (L = 1 when the maximum degree is 1).
pub fn estrada_index(f: &Forest, tol: f64) -> Result<f64> {
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Error::InvalidParameter("tolerance must be positive"));
    }
    let n = f.n() as f64;
    let delta = f.max_degree();
    let lambda_hat = if delta >= 2 {
        2.0 * libm::sqrt((delta - 1) as f64)
    } else {
        1.0
    };
    // smallest K with K + 2 > lambda_hat and tail bound below tol
    let mut k_cut = 0usize;
    let mut pow_over_fact = lambda_hat; // lambda^{K+1} / (K+1)! at K = 0
    loop {
        let kf = k_cut as f64;
        if kf + 2.0 > lambda_hat {
            let tail = n * pow_over_fact / (1.0 - lambda_hat / (kf + 2.0));
            if tail < tol {
                break;
            }
        }
        k_cut += 1;
        pow_over_fact *= lambda_hat / (k_cut as f64 + 1.0);
    }
    let profile = closed_walks_profile(f, k_cut);
    let mut sum = 0.0;
    let mut inv_fact = 1.0;
    for (k, wv) in profile.iter().enumerate() {
        if k > 0 {
            inv_fact /= k as f64;
        }
        if k % 2 == 0 {
            let mk = wv
                .total()
                .to_f64()
                .expect("spectral moment fits in f64 at desk scale");
            sum += mk * inv_fact;
        }
    }
    Ok(sum)
}
