//! Desk-scale verification of the majorization theorems, the edge-shift
//! sweeps, the majorization-lemma predicate, and the dense-r walk-sum
//! solver with certificates.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use alloc::{format, vec};

use num_bigint::BigUint;
use num_traits::Zero;

use crate::degseq::{compare_majorization, majorization_chain, DegreeSequence};
use crate::treekit::{
    build_greedy_tree, edge_shift, enumerate_trees_with_limit, greedy_bfs_ordering, prufer_decode,
    root_views, BfsOrdering, EnumMode, Forest, RootedView, Tree, DEFAULT_ENUM_VERTEX_LIMIT,
};
use crate::walkcount::closed_walks_power;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Verified,
    Counterexample,
    Skipped,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Verified => "verified",
            Status::Counterexample => "counterexample",
            Status::Skipped => "skipped",
        }
    }
}

/// Serialized tree, the portable half of a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeData {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl From<&Forest> for TreeData {
    fn from(f: &Forest) -> Self {
        Self {
            n: f.n(),
            edges: f.edges().to_vec(),
        }
    }
}

impl From<&Tree> for TreeData {
    fn from(t: &Tree) -> Self {
        Self::from(t.as_forest())
    }
}

/// Fully re-checkable counterexample data: both trees, the walk length, both
/// walk vectors, and the failing prefix index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub k: usize,
    pub left_tree: TreeData,
    pub right_tree: TreeData,
    pub left_counts: Vec<BigUint>,
    pub right_counts: Vec<BigUint>,
    pub first_violation_index: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub claim: String,
    pub params: Vec<(String, String)>,
    pub status: Status,
    pub witness: Option<Witness>,
    /// Filled by callers with a clock; this crate always stores 0.
    pub elapsed_ms: u64,
}

fn fmt_seq(pi: &DegreeSequence) -> String {
    let parts: Vec<String> = pi.degrees().iter().map(|d| format!("{d}")).collect();
    parts.join(",")
}

fn prefix_sums(xs: &[BigUint]) -> Vec<BigUint> {
    let mut acc = BigUint::zero();
    xs.iter()
        .map(|x| {
            acc += x;
            acc.clone()
        })
        .collect()
}

/// All tree degree sequences of order `n`: partitions of 2n - 2 into n parts
/// each in 1..=n-1, nonincreasing, in reverse-lexicographic order.
pub fn tree_degree_sequences(n: usize) -> Vec<DegreeSequence> {
    fn rec(
        out: &mut Vec<DegreeSequence>,
        parts: &mut Vec<i64>,
        remaining: usize,
        slots: usize,
        max_part: usize,
    ) {
        if slots == 0 {
            debug_assert_eq!(remaining, 0);
            out.push(DegreeSequence::new(parts).expect("constructed to be valid"));
            return;
        }
        let hi = max_part.min(remaining - (slots - 1));
        for d in (1..=hi).rev() {
            if remaining - d > (slots - 1) * d {
                continue; // the rest cannot stay <= d
            }
            parts.push(d as i64);
            rec(out, parts, remaining - d, slots - 1, d);
            parts.pop();
        }
    }
    let mut out = Vec::new();
    if n >= 2 {
        rec(&mut out, &mut Vec::with_capacity(n), 2 * n - 2, n, n - 1);
    }
    out
}

// ---------------------------------------------------------------------------
// Theorem sweeps
// ---------------------------------------------------------------------------

fn counterexample(
    claim: &str,
    params: Vec<(String, String)>,
    k: usize,
    left: (&Tree, Vec<BigUint>),
    right: (&Tree, Vec<BigUint>),
    first_violation_index: Option<usize>,
) -> VerificationReport {
    VerificationReport {
        claim: String::from(claim),
        params,
        status: Status::Counterexample,
        witness: Some(Witness {
            k,
            left_tree: left.0.into(),
            right_tree: right.0.into(),
            left_counts: left.1,
            right_counts: right.1,
            first_violation_index,
        }),
        elapsed_ms: 0,
    }
}

fn verified(claim: &str, params: Vec<(String, String)>) -> VerificationReport {
    VerificationReport {
        claim: String::from(claim),
        params,
        status: Status::Verified,
        witness: None,
        elapsed_ms: 0,
    }
}

/// Every unlabeled tree with degree sequence `pi` has a walk vector weakly
/// majorized by the greedy tree's, and on the greedy tree the first-r
/// BFS-vertex sums equal the top-r sorted sums for every r.
pub fn verify_maintheorem1(pi: &DegreeSequence, k: usize) -> Result<VerificationReport> {
    let mut reports = thm1_reports(pi, &[k], DEFAULT_ENUM_VERTEX_LIMIT)?;
    Ok(reports.pop().expect("one report per k"))
}

/// Enumerates T_pi once and checks every k in `ks`; one report per k.
pub fn thm1_reports(
    pi: &DegreeSequence,
    ks: &[usize],
    vertex_limit: usize,
) -> Result<Vec<VerificationReport>> {
    let (t_star, ord) = build_greedy_tree(pi);
    let trees = enumerate_trees_with_limit(pi, EnumMode::Unlabeled, vertex_limit)?;
    let mut reports = Vec::with_capacity(ks.len());
    'next_k: for &k in ks {
        let params = vec![
            (String::from("pi"), fmt_seq(pi)),
            (String::from("k"), format!("{k}")),
            (String::from("trees"), format!("{}", trees.len())),
        ];
        let star_counts = closed_walks_power(&t_star, k).counts;

        // U* claim: the BFS prefix sums realize the sorted prefix sums.
        let bfs_counts: Vec<BigUint> = ord
            .order()
            .iter()
            .map(|&v| star_counts[v].clone())
            .collect();
        let mut sorted = star_counts.clone();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        let (ps, pb) = (prefix_sums(&sorted), prefix_sums(&bfs_counts));
        if ps != pb {
            let idx = ps.iter().zip(&pb).position(|(a, b)| a != b);
            reports.push(counterexample(
                "thm1",
                params,
                k,
                (&t_star, sorted),
                (&t_star, bfs_counts),
                idx,
            ));
            continue;
        }

        for t in &trees {
            let counts = closed_walks_power(t, k).counts;
            let verdict = compare_majorization(&counts, &star_counts);
            if !verdict.weak_or_better() {
                reports.push(counterexample(
                    "thm1",
                    params,
                    k,
                    (t, counts),
                    (&t_star, star_counts),
                    verdict.first_violation_index,
                ));
                continue 'next_k;
            }
        }
        reports.push(verified("thm1", params));
    }
    Ok(reports)
}

/// pi weakly majorized by pi_prime implies the greedy walk vectors are too;
/// with `check_chain` the relation is also verified along every step of the
/// majorization chain.
pub fn verify_maintheorem2(
    pi: &DegreeSequence,
    pi_prime: &DegreeSequence,
    k: usize,
    check_chain: bool,
) -> Result<VerificationReport> {
    let deg_verdict = compare_majorization(pi.degrees(), pi_prime.degrees());
    if !deg_verdict.weak_or_better() {
        return Err(Error::NotComparable);
    }
    let chain = if check_chain && deg_verdict.majorized_or_equal() {
        majorization_chain(pi, pi_prime)?
    } else {
        vec![pi.clone(), pi_prime.clone()]
    };
    let params = vec![
        (String::from("pi"), fmt_seq(pi)),
        (String::from("pi_prime"), fmt_seq(pi_prime)),
        (String::from("k"), format!("{k}")),
        (String::from("chain_len"), format!("{}", chain.len())),
    ];
    let mut prev: Option<(Tree, Vec<BigUint>)> = None;
    for step in &chain {
        let (t, _) = build_greedy_tree(step);
        let counts = closed_walks_power(&t, k).counts;
        if let Some((pt, pc)) = prev {
            let verdict = compare_majorization(&pc, &counts);
            if !verdict.weak_or_better() {
                return Ok(counterexample(
                    "thm2",
                    params,
                    k,
                    (&pt, pc),
                    (&t, counts),
                    verdict.first_violation_index,
                ));
            }
        }
        prev = Some((t, counts));
    }
    Ok(verified("thm2", params))
}

/// Single edge-shift check: C(k; g) weakly majorized by C(k; shifted).
pub fn verify_edge_shift(
    g: &Tree,
    rv: &RootedView,
    x: usize,
    x1: usize,
    x_prime: usize,
    k: usize,
) -> Result<VerificationReport> {
    let shifted = edge_shift(g, rv, x, x1, x_prime)?;
    let params = vec![
        (String::from("roots"), format!("{:?}", rv.roots())),
        (String::from("shift"), format!("{x}-{x1}->{x_prime}")),
        (String::from("k"), format!("{k}")),
    ];
    let left = closed_walks_power(g, k).counts;
    let right = closed_walks_power(&shifted, k).counts;
    let verdict = compare_majorization(&left, &right);
    if !verdict.weak_or_better() {
        return Ok(counterexample(
            "edge-shift",
            params,
            k,
            (g, left),
            (&shifted, right),
            verdict.first_violation_index,
        ));
    }
    Ok(verified("edge-shift", params))
}

/// All admissible shifts (x, x1, x') on a level greedy rooted tree: x1 a
/// child of x, x' on the same level, outside the branch below x1, and
/// strictly earlier than x in the greedy BFS ordering (the shift moves the
/// branch toward the greedier vertex).
pub fn admissible_shifts(
    f: &Forest,
    rv: &RootedView,
    ord: &BfsOrdering,
) -> Vec<(usize, usize, usize)> {
    let sets = rv.level_sets();
    let mut out = Vec::new();
    for x in 0..f.n() {
        for &x1 in rv.children(x) {
            let branch: BTreeSet<usize> = rv.subtree(x1).into_iter().collect();
            for &xp in &sets[rv.level(x) as usize] {
                if xp != x && !branch.contains(&xp) && ord.position(xp) < ord.position(x) {
                    out.push((x, x1, xp));
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// Sweeps every admissible shift on every level greedy rooted view of the
/// greedy tree of `pi`; aggregates into one report.
pub fn edge_shift_sweep(pi: &DegreeSequence, k: usize) -> Result<VerificationReport> {
    let (g, _) = build_greedy_tree(pi);
    let left = closed_walks_power(&g, k).counts;
    let mut checked = 0usize;
    for rv in root_views(&g) {
        let Some(ord) = greedy_bfs_ordering(&g, &rv) else {
            continue;
        };
        for (x, x1, xp) in admissible_shifts(&g, &rv, &ord) {
            let shifted = edge_shift(&g, &rv, x, x1, xp)?;
            let right = closed_walks_power(&shifted, k).counts;
            let verdict = compare_majorization(&left, &right);
            checked += 1;
            if !verdict.weak_or_better() {
                let params = vec![
                    (String::from("pi"), fmt_seq(pi)),
                    (String::from("k"), format!("{k}")),
                    (String::from("roots"), format!("{:?}", rv.roots())),
                    (String::from("shift"), format!("{x}-{x1}->{xp}")),
                ];
                return Ok(counterexample(
                    "edge-shift",
                    params,
                    k,
                    (&g, left),
                    (&shifted, right),
                    verdict.first_violation_index,
                ));
            }
        }
    }
    let params = vec![
        (String::from("pi"), fmt_seq(pi)),
        (String::from("k"), format!("{k}")),
        (String::from("shifts"), format!("{checked}")),
    ];
    Ok(verified("edge-shift", params))
}

/// Smallest even k <= k_max giving a strict prefix inequality between the
/// walk vectors of `t` and `t_star`; `None` means inconclusive within the
/// window, not a failure.
pub fn find_strict_k(t: &Tree, t_star: &Tree, k_max: usize) -> Option<usize> {
    (1..=k_max / 2).map(|m| 2 * m).find(|&k| {
        let a = closed_walks_power(t, k).counts;
        let b = closed_walks_power(t_star, k).counts;
        let v = compare_majorization(&a, &b);
        v.weak_or_better() && v.is_strict()
    })
}

// ---------------------------------------------------------------------------
// Majorization lemma predicate
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LemmaCheck {
    pub conditions_hold: bool,
    pub conclusion_holds: bool,
}

/// Evaluates the two hypotheses of the majorization lemma and its
/// conclusion for sequences alpha, beta, the index set `v1`, and the
/// permutation `phi`: (1) phi(v1) is disjoint from v1; (2) a_i <= b_i off
/// v1, and on v1 both a_i + a_phi(i) <= b_i + b_phi(i) and a_i <= a_phi(i).
/// The conclusion is alpha weakly majorized by beta.
pub fn check_majorization_lemma(
    alpha: &[i64],
    beta: &[i64],
    v1: &[usize],
    phi: &[usize],
) -> Result<LemmaCheck> {
    let n = alpha.len();
    if beta.len() != n {
        return Err(Error::LengthMismatch {
            left: n,
            right: beta.len(),
        });
    }
    if phi.len() != n {
        return Err(Error::BadPermutation);
    }
    let mut seen = vec![false; n];
    for &p in phi {
        if p >= n || seen[p] {
            return Err(Error::BadPermutation);
        }
        seen[p] = true;
    }
    if v1.iter().any(|&i| i >= n) {
        return Err(Error::BadPermutation);
    }
    let v1set: BTreeSet<usize> = v1.iter().copied().collect();

    let mut conditions_hold = true;
    for i in 0..n {
        if v1set.contains(&i) {
            let j = phi[i];
            if v1set.contains(&j) || alpha[i] + alpha[j] > beta[i] + beta[j] || alpha[i] > alpha[j]
            {
                conditions_hold = false;
                break;
            }
        } else if alpha[i] > beta[i] {
            conditions_hold = false;
            break;
        }
    }
    let conclusion_holds = compare_majorization(alpha, beta).weak_or_better();
    Ok(LemmaCheck {
        conditions_hold,
        conclusion_holds,
    })
}

// ---------------------------------------------------------------------------
// Dense-r walk sums
// ---------------------------------------------------------------------------

/// A dense-r answer: the achieving tree, the r chosen vertices, and their
/// exact closed-walk sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseCertificate {
    pub value: BigUint,
    pub tree: Tree,
    pub subset: Vec<usize>,
}

/// Greedy certificate: the greedy tree of `pi` with its first r BFS-ordered
/// vertices. By the U* claim this realizes the maximum over T_pi.
pub fn dense_r_max(pi: &DegreeSequence, k: usize, r: usize) -> Result<DenseCertificate> {
    if r > pi.n() {
        return Err(Error::InvalidParameter("r exceeds the number of vertices"));
    }
    let (tree, ord) = build_greedy_tree(pi);
    let counts = closed_walks_power(&tree, k).counts;
    let subset: Vec<usize> = ord.order()[..r].to_vec();
    let value = subset.iter().map(|&v| counts[v].clone()).sum();
    Ok(DenseCertificate {
        value,
        tree,
        subset,
    })
}

/// Guarded brute force: maximizes the top-r walk sum over every unlabeled
/// tree in T_pi.
pub fn dense_r_max_bruteforce(pi: &DegreeSequence, k: usize, r: usize) -> Result<DenseCertificate> {
    if r > pi.n() {
        return Err(Error::InvalidParameter("r exceeds the number of vertices"));
    }
    let trees = enumerate_trees_with_limit(pi, EnumMode::Unlabeled, DEFAULT_ENUM_VERTEX_LIMIT)?;
    let mut best: Option<DenseCertificate> = None;
    for t in trees {
        let counts = closed_walks_power(&t, k).counts;
        let mut idx: Vec<usize> = (0..t.n()).collect();
        idx.sort_by(|&a, &b| counts[b].cmp(&counts[a]).then(a.cmp(&b)));
        idx.truncate(r);
        let value: BigUint = idx.iter().map(|&v| counts[v].clone()).sum();
        if best.as_ref().is_none_or(|b| value > b.value) {
            best = Some(DenseCertificate {
                value,
                tree: t,
                subset: idx,
            });
        }
    }
    Ok(best.expect("T_pi is never empty"))
}

// ---------------------------------------------------------------------------
// Deterministic randomness for sweeps
// ---------------------------------------------------------------------------

/// SplitMix64: a tiny deterministic generator for randomized sweeps.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform-enough draw in 0..n for sweep sizes (modulo bias irrelevant
    /// at desk scale).
    pub fn below(&mut self, n: u64) -> u64 {
        debug_assert!(n > 0);
        self.next_u64() % n
    }
}

/// Uniform random labeled tree on n vertices via a random Pruefer word.
pub fn random_labeled_tree(n: usize, rng: &mut SplitMix64) -> Result<Tree> {
    if n < 2 {
        return Err(Error::TooSmall);
    }
    if n == 2 {
        return Tree::from_edges(2, &[(0, 1)]);
    }
    let word: Vec<usize> = (0..n - 2).map(|_| rng.below(n as u64) as usize).collect();
    prufer_decode(n, &word)
}

/// Random instance (alpha, beta, v1, phi) satisfying the lemma hypotheses by
/// construction: phi swaps v1 with a disjoint image set and fixes the rest,
/// and each alpha entry is drawn within its feasible range.
pub fn random_lemma_instance(
    n: usize,
    rng: &mut SplitMix64,
) -> (Vec<i64>, Vec<i64>, Vec<usize>, Vec<usize>) {
    let beta: Vec<i64> = (0..n).map(|_| rng.below(21) as i64).collect();
    let mut idx: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        idx.swap(i, rng.below(i as u64 + 1) as usize);
    }
    let m = rng.below(n as u64 / 2 + 1) as usize;
    let v1: Vec<usize> = idx[..m].to_vec();
    let img: Vec<usize> = idx[m..2 * m].to_vec();
    let mut phi: Vec<usize> = (0..n).collect();
    for (&i, &j) in v1.iter().zip(&img) {
        phi[i] = j;
        phi[j] = i;
    }
    let mut alpha = vec![0i64; n];
    let v1set: BTreeSet<usize> = v1.iter().copied().collect();
    for i in 0..n {
        if !v1set.contains(&i) {
            alpha[i] = rng.below(beta[i] as u64 + 1) as i64;
        }
    }
    for &i in &v1 {
        let j = phi[i];
        let cap = alpha[j].min(beta[i] + beta[j] - alpha[j]);
        alpha[i] = rng.below(cap as u64 + 1) as i64;
    }
    (alpha, beta, v1, phi)
}

// ---------------------------------------------------------------------------
// Suite driver
// ---------------------------------------------------------------------------

pub const DEFAULT_SUITE_VERTEX_LIMIT: usize = 10;
pub const MAX_SUITE_VERTEX_LIMIT: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Claim {
    Thm1,
    Thm2,
    EdgeShift,
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub n_min: usize,
    pub n_max: usize,
    pub ks: Vec<usize>,
    pub claims: Vec<Claim>,
    pub vertex_limit: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            n_min: 2,
            n_max: 7,
            ks: vec![2, 4],
            claims: Vec::new(),
            vertex_limit: DEFAULT_SUITE_VERTEX_LIMIT,
        }
    }
}

/// Runs the selected claims over every tree degree sequence in the n range,
/// in deterministic order (claim, n, sequence, k). Report bodies are
/// byte-stable across runs.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    if cfg.vertex_limit > MAX_SUITE_VERTEX_LIMIT {
        return Err(Error::InvalidParameter("vertex limit exceeds 12"));
    }
    if cfg.n_max > cfg.vertex_limit {
        return Err(Error::TooLarge {
            limit: cfg.vertex_limit as u64,
        });
    }
    let mut reports = Vec::new();
    for &claim in &cfg.claims {
        for n in cfg.n_min.max(2)..=cfg.n_max {
            let seqs = tree_degree_sequences(n);
            match claim {
                Claim::Thm1 => {
                    for pi in &seqs {
                        reports.extend(thm1_reports(pi, &cfg.ks, cfg.vertex_limit)?);
                    }
                }
                Claim::Thm2 => {
                    for pi in &seqs {
                        for pi_prime in &seqs {
                            if pi == pi_prime {
                                continue;
                            }
                            let v = compare_majorization(pi.degrees(), pi_prime.degrees());
                            if !v.weak_or_better() {
                                continue;
                            }
                            for &k in &cfg.ks {
                                reports.push(verify_maintheorem2(pi, pi_prime, k, true)?);
                            }
                        }
                    }
                }
                Claim::EdgeShift => {
                    for pi in &seqs {
                        for &k in &cfg.ks {
                            reports.push(edge_shift_sweep(pi, k)?);
                        }
                    }
                }
            }
        }
    }
    Ok(reports)
}
