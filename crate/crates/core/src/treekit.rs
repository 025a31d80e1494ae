//! Trees, rooted views, greedy construction, exhaustive enumeration,
//! canonical forms, and the same-level edge shift.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::string::String;
use alloc::vec::Vec;
use alloc::{format, vec};

use num_bigint::BigUint;
use num_traits::One;

use crate::degseq::DegreeSequence;
use crate::{Error, Result};

/// A simple acyclic graph. Components need not be connected to each other;
/// a [`Tree`] wraps a connected forest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Forest {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Forest {
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph("empty vertex set"));
        }
        if edges.len() >= n {
            return Err(Error::InvalidGraph("too many edges for a forest"));
        }
        let mut parent_dsu: Vec<usize> = (0..n).collect();
        fn find(dsu: &mut [usize], mut v: usize) -> usize {
            while dsu[v] != v {
                dsu[v] = dsu[dsu[v]];
                v = dsu[v];
            }
            v
        }
        let mut adj = vec![Vec::new(); n];
        let mut seen = BTreeSet::new();
        let mut norm = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph("vertex index out of range"));
            }
            if u == v {
                return Err(Error::InvalidGraph("self-loop"));
            }
            let e = (u.min(v), u.max(v));
            if !seen.insert(e) {
                return Err(Error::InvalidGraph("parallel edge"));
            }
            let (ru, rv) = (find(&mut parent_dsu, u), find(&mut parent_dsu, v));
            if ru == rv {
                return Err(Error::InvalidGraph("cycle"));
            }
            parent_dsu[ru] = rv;
            adj[u].push(v);
            adj[v].push(u);
            norm.push(e);
        }
        for nb in &mut adj {
            nb.sort_unstable();
        }
        norm.sort_unstable();
        Ok(Self {
            n,
            edges: norm,
            adj,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn adj(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Connected components as sorted vertex lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![s];
            let mut members = Vec::new();
            comp[s] = id;
            while let Some(u) = stack.pop() {
                members.push(u);
                for &w in self.adj(u) {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }
}

/// A connected forest on n vertices with n - 1 edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree {
    forest: Forest,
}

impl Tree {
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let forest = Forest::from_edges(n, edges)?;
        if forest.edges.len() != n - 1 {
            return Err(Error::InvalidGraph("not connected"));
        }
        Ok(Self { forest })
    }

    pub fn as_forest(&self) -> &Forest {
        &self.forest
    }

    pub fn degree_sequence(&self) -> DegreeSequence {
        let raw: Vec<i64> = (0..self.n()).map(|v| self.degree(v) as i64).collect();
        DegreeSequence::new(&raw).expect("a tree always has a valid degree sequence")
    }

    /// Path on `n` vertices: 0 - 1 - ... - (n-1).
    pub fn path(n: usize) -> Self {
        let edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
        Self::from_edges(n, &edges).unwrap()
    }

    /// Star with center 0 and `n - 1` leaves.
    pub fn star(n: usize) -> Self {
        let edges: Vec<(usize, usize)> = (1..n).map(|i| (0, i)).collect();
        Self::from_edges(n, &edges).unwrap()
    }
}

impl core::ops::Deref for Tree {
    type Target = Forest;

    fn deref(&self) -> &Forest {
        &self.forest
    }
}

/// A root overlay on a forest: levels h(v), parents f(v), and ordered
/// children lists. Vertex-rooted views carry one root per component;
/// edge-rooted views carry two adjacent roots on a connected forest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedView {
    roots: Vec<usize>,
    edge_rooted: bool,
    level: Vec<u32>,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
}

impl RootedView {
    pub fn vertex_rooted(f: &Forest, roots: &[usize]) -> Result<Self> {
        Self::build(f, roots, false)
    }

    pub fn single_rooted(f: &Forest, root: usize) -> Result<Self> {
        Self::build(f, &[root], false)
    }

    pub fn edge_rooted(f: &Forest, a: usize, b: usize) -> Result<Self> {
        if a >= f.n() || b >= f.n() || !f.has_edge(a, b) {
            return Err(Error::NotAnEdge);
        }
        Self::build(f, &[a, b], true)
    }

    fn build(f: &Forest, roots: &[usize], edge_rooted: bool) -> Result<Self> {
        let n = f.n();
        if roots.is_empty() || roots.iter().any(|&r| r >= n) {
            return Err(Error::InvalidGraph("bad root set"));
        }
        let mut level = vec![u32::MAX; n];
        let mut parent = vec![None; n];
        let mut children = vec![Vec::new(); n];
        let mut queue = VecDeque::new();
        for &r in roots {
            if level[r] != u32::MAX {
                return Err(Error::InvalidGraph("duplicate root"));
            }
            level[r] = 0;
            queue.push_back(r);
        }
        while let Some(u) = queue.pop_front() {
            for &w in f.adj(u) {
                if level[w] == u32::MAX {
                    level[w] = level[u] + 1;
                    parent[w] = Some(u);
                    children[u].push(w);
                    queue.push_back(w);
                } else if level[w] == 0 && level[u] == 0 && !edge_rooted {
                    return Err(Error::InvalidGraph("two roots in one component"));
                }
            }
        }
        if level.contains(&u32::MAX) {
            return Err(Error::InvalidGraph("root set misses a component"));
        }
        if edge_rooted && (roots.len() != 2 || !f.has_edge(roots[0], roots[1])) {
            return Err(Error::NotAnEdge);
        }
        Ok(Self {
            roots: roots.to_vec(),
            edge_rooted,
            level,
            parent,
            children,
        })
    }

    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    pub fn is_edge_rooted(&self) -> bool {
        self.edge_rooted
    }

    pub fn level(&self, v: usize) -> u32 {
        self.level[v]
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn n(&self) -> usize {
        self.level.len()
    }

    pub fn max_level(&self) -> u32 {
        self.level.iter().copied().max().unwrap_or(0)
    }

    /// Vertices grouped by level.
    pub fn level_sets(&self) -> Vec<Vec<usize>> {
        let mut sets = vec![Vec::new(); self.max_level() as usize + 1];
        for v in 0..self.n() {
            sets[self.level[v] as usize].push(v);
        }
        sets
    }

    /// All descendants of `v`, including `v`.
    pub fn subtree(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            out.push(u);
            stack.extend_from_slice(&self.children[u]);
        }
        out
    }
}

/// Yields all n vertex-rooted views and all n - 1 edge-rooted views of a tree.
pub fn root_views(t: &Tree) -> Vec<RootedView> {
    let mut out = Vec::with_capacity(2 * t.n() - 1);
    for v in 0..t.n() {
        out.push(RootedView::single_rooted(t, v).unwrap());
    }
    for &(u, v) in t.edges() {
        out.push(RootedView::edge_rooted(t, u, v).unwrap());
    }
    out
}

/// A well-ordering of the vertices of a rooted forest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BfsOrdering {
    order: Vec<usize>,
    position: Vec<usize>,
}

impl BfsOrdering {
    pub fn new(order: Vec<usize>) -> Self {
        let mut position = vec![0; order.len()];
        for (i, &v) in order.iter().enumerate() {
            position[v] = i;
        }
        Self { order, position }
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn position(&self, v: usize) -> usize {
        self.position[v]
    }

    /// Vertices of each level in order.
    pub fn by_level(&self, rv: &RootedView) -> Vec<Vec<usize>> {
        let mut sets = vec![Vec::new(); rv.max_level() as usize + 1];
        for &v in &self.order {
            sets[rv.level(v) as usize].push(v);
        }
        sets
    }
}

/// Checks conditions (1) and (2) of a BFS-ordering: levels come in order,
/// degrees are nonincreasing within each level, and parent order respects
/// child order.
pub fn is_bfs_ordering(f: &Forest, rv: &RootedView, order: &[usize]) -> bool {
    let n = f.n();
    if order.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in order {
        if v >= n || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    let mut pos = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    // levels nondecreasing along the order
    for w in order.windows(2) {
        if rv.level(w[0]) > rv.level(w[1]) {
            return false;
        }
    }
    for w in order.windows(2) {
        let (u, v) = (w[0], w[1]);
        if rv.level(u) == rv.level(v) {
            // condition (1)
            if f.degree(u) < f.degree(v) {
                return false;
            }
            // condition (2)
            if let (Some(pu), Some(pv)) = (rv.parent(u), rv.parent(v)) {
                if pos[pu] > pos[pv] {
                    return false;
                }
            }
        }
    }
    true
}

/// Builds the unique greedy tree for a degree sequence. Vertex `i` receives
/// degree `pi[i]`; vertices are created in BFS order, so the returned
/// ordering is the identity.
pub fn build_greedy_tree(pi: &DegreeSequence) -> (Tree, BfsOrdering) {
    let d = pi.degrees();
    let n = pi.n();
    let mut edges = Vec::with_capacity(n - 1);
    let mut next = 1usize;
    let mut queue = VecDeque::new();
    queue.push_back((0usize, d[0] as usize));
    while let Some((u, cap)) = queue.pop_front() {
        for _ in 0..cap {
            let c = next;
            next += 1;
            edges.push((u, c));
            queue.push_back((c, d[c] as usize - 1));
        }
    }
    debug_assert_eq!(next, n);
    let tree = Tree::from_edges(n, &edges).expect("greedy construction yields a tree");
    (tree, BfsOrdering::new((0..n).collect()))
}

/// Per-level nonincreasing degree lists of a rooted forest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeveledDegreeSequence {
    levels: Vec<Vec<u32>>,
    edge_rooted: bool,
}

impl LeveledDegreeSequence {
    /// Validates child-count consistency. Each root contributes `d` children
    /// when vertex-rooted and `d - 1` when edge-rooted (one incidence is the
    /// root edge); deeper vertices contribute `d - 1`.
    pub fn new(levels: Vec<Vec<u32>>, edge_rooted: bool) -> Result<Self> {
        if levels.is_empty() || levels[0].is_empty() {
            return Err(Error::InvalidParameter("empty level sequence"));
        }
        let mut levels = levels;
        for lv in &mut levels {
            lv.sort_unstable_by(|a, b| b.cmp(a));
        }
        if edge_rooted {
            if levels[0].len() != 2 {
                return Err(Error::InvalidParameter("edge-rooted needs |V0| = 2"));
            }
            if levels[0].iter().any(|&d| d < 1) {
                return Err(Error::InvalidParameter(
                    "edge-rooted root degree must be >= 1",
                ));
            }
        }
        for i in 0..levels.len() {
            let expected: usize = if i == 0 {
                let s: usize = levels[0].iter().map(|&d| d as usize).sum();
                s - if edge_rooted { 2 } else { 0 }
            } else {
                if levels[i].iter().any(|&d| d < 1) {
                    return Err(Error::InvalidParameter("non-root degree must be >= 1"));
                }
                levels[i].iter().map(|&d| d as usize - 1).sum()
            };
            let actual = levels.get(i + 1).map_or(0, Vec::len);
            if expected != actual {
                return Err(Error::InconsistentLevels {
                    level: i + 1,
                    expected,
                    actual,
                });
            }
        }
        Ok(Self {
            levels,
            edge_rooted,
        })
    }

    pub fn from_view(f: &Forest, rv: &RootedView) -> Self {
        let mut levels = vec![Vec::new(); rv.max_level() as usize + 1];
        for v in 0..f.n() {
            levels[rv.level(v) as usize].push(f.degree(v) as u32);
        }
        for lv in &mut levels {
            lv.sort_unstable_by(|a, b| b.cmp(a));
        }
        Self {
            levels,
            edge_rooted: rv.is_edge_rooted(),
        }
    }

    pub fn levels(&self) -> &[Vec<u32>] {
        &self.levels
    }

    pub fn is_edge_rooted(&self) -> bool {
        self.edge_rooted
    }

    pub fn n(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }
}

/// Realizes the level greedy forest of a leveled degree sequence: degrees
/// assigned level by level in nonincreasing order, children attached
/// left to right. Vertex ids follow the BFS ordering.
pub fn build_level_greedy_forest(
    lds: &LeveledDegreeSequence,
) -> Result<(Forest, RootedView, BfsOrdering)> {
    let n = lds.n();
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(n.saturating_sub(1));
    let mut ids_of_level: Vec<Vec<usize>> = Vec::new();
    let mut next = 0usize;
    for lv in lds.levels() {
        let ids: Vec<usize> = (next..next + lv.len()).collect();
        next += lv.len();
        ids_of_level.push(ids);
    }
    for (i, lv) in lds.levels().iter().enumerate() {
        let empty: &[usize] = &[];
        let mut child_iter = ids_of_level
            .get(i + 1)
            .map_or(empty, Vec::as_slice)
            .iter()
            .copied();
        for (j, &d) in lv.iter().enumerate() {
            let u = ids_of_level[i][j];
            let kids = if i == 0 {
                d as usize - usize::from(lds.is_edge_rooted())
            } else {
                d as usize - 1
            };
            for _ in 0..kids {
                let c = child_iter
                    .next()
                    .expect("child counts validated at construction");
                edges.push((u, c));
            }
        }
    }
    let roots = ids_of_level[0].clone();
    if lds.is_edge_rooted() {
        edges.push((roots[0], roots[1]));
    }
    let forest = Forest::from_edges(n, &edges)?;
    let rv = if lds.is_edge_rooted() {
        RootedView::edge_rooted(&forest, roots[0], roots[1])?
    } else {
        RootedView::vertex_rooted(&forest, &roots)?
    };
    Ok((forest, rv, BfsOrdering::new((0..n).collect())))
}

// ---------------------------------------------------------------------------
// Canonical forms
// ---------------------------------------------------------------------------

fn rooted_code(f: &Forest, v: usize, parent: Option<usize>) -> String {
    let mut kids: Vec<String> = f
        .adj(v)
        .iter()
        .filter(|&&w| Some(w) != parent)
        .map(|&w| rooted_code(f, w, Some(v)))
        .collect();
    kids.sort_unstable_by(|a, b| b.cmp(a));
    let mut s = String::from("(");
    for k in &kids {
        s.push_str(k);
    }
    s.push(')');
    s
}

/// Canonical string of an unrooted tree: AHU encoding rooted at the center
/// vertex, or at the center edge when the tree is bicentral. Equal strings
/// iff isomorphic; stable across runs.
pub fn canonical_form(t: &Tree) -> String {
    let centers = tree_centers(t);
    match centers[..] {
        [c] => rooted_code(t, c, None),
        [a, b] => {
            let ca = rooted_code(t, a, Some(b));
            let cb = rooted_code(t, b, Some(a));
            let (lo, hi) = if ca <= cb { (ca, cb) } else { (cb, ca) };
            format!("[{lo}{hi}]")
        }
        _ => unreachable!("a tree has one or two centers"),
    }
}

/// Canonical string of a rooted view: equal strings iff there is a
/// root- and level-preserving isomorphism.
pub fn view_canonical_form(f: &Forest, rv: &RootedView) -> String {
    if rv.is_edge_rooted() {
        let (a, b) = (rv.roots()[0], rv.roots()[1]);
        let ca = rooted_code(f, a, Some(b));
        let cb = rooted_code(f, b, Some(a));
        let (lo, hi) = if ca <= cb { (ca, cb) } else { (cb, ca) };
        format!("[{lo}{hi}]")
    } else {
        let mut codes: Vec<String> = rv
            .roots()
            .iter()
            .map(|&r| rooted_code(f, r, None))
            .collect();
        codes.sort_unstable_by(|a, b| b.cmp(a));
        codes.join("|")
    }
}

fn tree_centers(t: &Tree) -> Vec<usize> {
    let n = t.n();
    if n == 1 {
        return vec![0];
    }
    let mut deg: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] <= 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        let mut nextlayer = Vec::new();
        for &v in &layer {
            removed[v] = true;
            remaining -= 1;
            for &w in t.adj(v) {
                if !removed[w] {
                    deg[w] -= 1;
                    if deg[w] == 1 {
                        nextlayer.push(w);
                    }
                }
            }
        }
        layer = nextlayer;
    }
    let mut centers: Vec<usize> = (0..n).filter(|&v| !removed[v]).collect();
    centers.sort_unstable();
    centers
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

/// Default vertex-count guard for exhaustive enumeration.
pub const DEFAULT_ENUM_VERTEX_LIMIT: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumMode {
    Labeled,
    Unlabeled,
}

/// Decodes a Pruefer word into a labeled tree on `n` vertices.
pub fn prufer_decode(n: usize, word: &[usize]) -> Result<Tree> {
    if n < 2 || word.len() != n - 2 || word.iter().any(|&w| w >= n) {
        return Err(Error::InvalidGraph("bad Pruefer word"));
    }
    let mut degree = vec![1u32; n];
    for &w in word {
        degree[w] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut ptr = 0usize;
    while degree[ptr] != 1 {
        ptr += 1;
    }
    let mut leaf = ptr;
    for &w in word {
        edges.push((leaf, w));
        degree[w] -= 1;
        if degree[w] == 1 && w < ptr {
            leaf = w;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf, n - 1));
    Tree::from_edges(n, &edges)
}

fn next_permutation(xs: &mut [usize]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let mut i = xs.len() - 1;
    while i > 0 && xs[i - 1] >= xs[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = xs.len() - 1;
    while xs[j] <= xs[i - 1] {
        j -= 1;
    }
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}

/// Streams every labeled tree where vertex `i` has degree `pi[i]`, via the
/// Pruefer correspondence (vertex i appears `pi[i] - 1` times in the word).
pub fn for_each_labeled_tree<F: FnMut(&Tree)>(pi: &DegreeSequence, mut f: F) -> Result<()> {
    let n = pi.n();
    if n == 2 {
        f(&Tree::from_edges(2, &[(0, 1)])?);
        return Ok(());
    }
    let mut word: Vec<usize> = Vec::with_capacity(n - 2);
    for (i, &d) in pi.degrees().iter().enumerate() {
        word.extend(core::iter::repeat_n(i, d as usize - 1));
    }
    word.sort_unstable();
    loop {
        f(&prufer_decode(n, &word)?);
        if !next_permutation(&mut word) {
            break;
        }
    }
    Ok(())
}

pub fn enumerate_trees(pi: &DegreeSequence, mode: EnumMode) -> Result<Vec<Tree>> {
    enumerate_trees_with_limit(pi, mode, DEFAULT_ENUM_VERTEX_LIMIT)
}

pub fn enumerate_trees_with_limit(
    pi: &DegreeSequence,
    mode: EnumMode,
    vertex_limit: usize,
) -> Result<Vec<Tree>> {
    if pi.n() > vertex_limit {
        return Err(Error::TooLarge {
            limit: vertex_limit as u64,
        });
    }
    let mut out = Vec::new();
    match mode {
        EnumMode::Labeled => {
            for_each_labeled_tree(pi, |t| out.push(t.clone()))?;
        }
        EnumMode::Unlabeled => {
            let mut seen = BTreeSet::new();
            for_each_labeled_tree(pi, |t| {
                if seen.insert(canonical_form(t)) {
                    out.push(t.clone());
                }
            })?;
        }
    }
    Ok(out)
}

/// (n-2)! / prod (d_i - 1)!: the number of labeled trees with a fixed
/// degree assignment.
pub fn labeled_tree_count(pi: &DegreeSequence) -> BigUint {
    fn factorial(m: usize) -> BigUint {
        (2..=m)
            .map(BigUint::from)
            .product::<BigUint>()
            .max(BigUint::one())
    }
    let n = pi.n();
    let den: BigUint = pi
        .degrees()
        .iter()
        .map(|&d| factorial(d as usize - 1))
        .product();
    factorial(n - 2) / den
}

// ---------------------------------------------------------------------------
// Edge shift
// ---------------------------------------------------------------------------

/// Returns `g - x x1 + x' x1`. Requires `x1` to be a child of `x` (so the
/// branch below the shifted edge avoids the root), `x` and `x'` on the same
/// level, and `x'` outside that branch.
pub fn edge_shift(g: &Tree, rv: &RootedView, x: usize, x1: usize, x_prime: usize) -> Result<Tree> {
    if !g.has_edge(x, x1) {
        return Err(Error::NotAnEdge);
    }
    if rv.parent(x1) != Some(x) {
        return Err(Error::NotABranchEdge);
    }
    if x_prime >= g.n() {
        return Err(Error::InvalidGraph("vertex index out of range"));
    }
    if rv.level(x) != rv.level(x_prime) {
        return Err(Error::NotSameLevel);
    }
    if x_prime == x {
        return Ok(g.clone());
    }
    if rv.subtree(x1).contains(&x_prime) {
        return Err(Error::WouldDisconnect);
    }
    let edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            if (u, v) == (x.min(x1), x.max(x1)) {
                (x_prime.min(x1), x_prime.max(x1))
            } else {
                (u, v)
            }
        })
        .collect();
    Tree::from_edges(g.n(), &edges)
}

// ---------------------------------------------------------------------------
// Level greedy recognition
// ---------------------------------------------------------------------------

/// Recursive greediness key of a subtree: degree first, then the children's
/// keys sorted greediest-first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct SubKey {
    deg: usize,
    children: Vec<SubKey>,
}

fn subtree_key(f: &Forest, rv: &RootedView, v: usize) -> SubKey {
    let mut children: Vec<SubKey> = rv
        .children(v)
        .iter()
        .map(|&c| subtree_key(f, rv, c))
        .collect();
    children.sort_unstable_by(|a, b| b.cmp(a));
    SubKey {
        deg: f.degree(v),
        children,
    }
}

/// Attempts to produce a BFS-ordering of the view by sorting each level
/// greediest-first (parents in order, children of each parent by subtree
/// key). Returns `None` when no BFS-ordering exists, i.e. when the rooted
/// forest is not level greedy.
pub fn greedy_bfs_ordering(f: &Forest, rv: &RootedView) -> Option<BfsOrdering> {
    let keys: Vec<SubKey> = (0..f.n()).map(|v| subtree_key(f, rv, v)).collect();
    let mut order: Vec<usize> = Vec::with_capacity(f.n());
    let mut frontier: Vec<usize> = rv.roots().to_vec();
    frontier.sort_unstable_by(|&a, &b| keys[b].cmp(&keys[a]));
    while !frontier.is_empty() {
        order.extend_from_slice(&frontier);
        let mut next = Vec::new();
        for &u in &frontier {
            let mut kids: Vec<usize> = rv.children(u).to_vec();
            kids.sort_unstable_by(|&a, &b| keys[b].cmp(&keys[a]));
            next.extend_from_slice(&kids);
        }
        frontier = next;
    }
    if is_bfs_ordering(f, rv, &order) {
        Some(BfsOrdering::new(order))
    } else {
        None
    }
}

/// A rooted forest is level greedy iff it admits a BFS-ordering.
pub fn is_level_greedy(f: &Forest, rv: &RootedView) -> bool {
    greedy_bfs_ordering(f, rv).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degseq::validate_tree_degseq;
    use alloc::string::ToString;
    use num_traits::ToPrimitive;

    fn seq(raw: &[i64]) -> DegreeSequence {
        validate_tree_degseq(raw).unwrap()
    }

    #[test]
    fn greedy_tree_small_cases() {
        let (t, _) = build_greedy_tree(&seq(&[3, 1, 1, 1]));
        assert_eq!(t.degree(0), 3);
        assert_eq!(canonical_form(&t), canonical_form(&Tree::star(4)));

        let (t, _) = build_greedy_tree(&seq(&[2, 2, 1, 1]));
        assert_eq!(canonical_form(&t), canonical_form(&Tree::path(4)));

        let (t, ord) = build_greedy_tree(&seq(&[3, 2, 2, 1, 1, 1]));
        let rv = RootedView::single_rooted(&t, 0).unwrap();
        assert!(is_bfs_ordering(&t, &rv, ord.order()));
        // root children have degrees (2,2,1); each degree-2 child has one leaf
        let mut kid_degs: Vec<usize> = rv.children(0).iter().map(|&c| t.degree(c)).collect();
        kid_degs.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!(kid_degs, [2, 2, 1]);
        // greedy level condition
        for lv in rv.level_sets().windows(2) {
            let min_i = lv[0].iter().map(|&v| t.degree(v)).min().unwrap();
            let max_next = lv[1].iter().map(|&v| t.degree(v)).max().unwrap();
            assert!(min_i >= max_next);
        }
    }

    #[test]
    fn greedy_tree_degree_multiset_matches() {
        for raw in [
            &[4i64, 1, 1, 1, 1][..],
            &[3, 2, 2, 1, 1, 1],
            &[2, 2, 2, 2, 1, 1],
            &[1, 1],
        ] {
            let pi = seq(raw);
            let (t, _) = build_greedy_tree(&pi);
            assert_eq!(t.degree_sequence(), pi);
        }
    }

    #[test]
    fn bfs_ordering_detects_perturbation() {
        let (t, ord) = build_greedy_tree(&seq(&[3, 2, 2, 1, 1, 1]));
        let rv = RootedView::single_rooted(&t, 0).unwrap();
        assert!(is_bfs_ordering(&t, &rv, ord.order()));
        // swap a degree-2 level-1 vertex with the degree-1 one
        let mut bad = ord.order().to_vec();
        let lv1: Vec<usize> = (0..t.n()).filter(|&v| rv.level(v) == 1).collect();
        let hi = *lv1.iter().find(|&&v| t.degree(v) == 2).unwrap();
        let lo = *lv1.iter().find(|&&v| t.degree(v) == 1).unwrap();
        let (pi_hi, pi_lo) = (
            bad.iter().position(|&v| v == hi).unwrap(),
            bad.iter().position(|&v| v == lo).unwrap(),
        );
        assert!(pi_hi < pi_lo);
        bad.swap(pi_hi, pi_lo);
        assert!(!is_bfs_ordering(&t, &rv, &bad));
    }

    #[test]
    fn rooted_views_of_paths_and_stars() {
        let p2 = Tree::path(2);
        assert_eq!(root_views(&p2).len(), 3);

        let p4 = Tree::path(4);
        let rv = RootedView::single_rooted(&p4, 0).unwrap();
        assert_eq!(
            (0..4).map(|v| rv.level(v)).collect::<Vec<_>>(),
            [0, 1, 2, 3]
        );

        let s4 = Tree::star(4);
        let rv = RootedView::single_rooted(&s4, 1).unwrap();
        assert_eq!(rv.level(0), 1);
        assert_eq!(rv.level(2), 2);
        assert_eq!(rv.level(3), 2);
    }

    #[test]
    fn leveled_sequence_roundtrip() {
        let lds = LeveledDegreeSequence::new(vec![vec![2], vec![1, 1]], false).unwrap();
        let (f, rv, ord) = build_level_greedy_forest(&lds).unwrap();
        assert_eq!(f.n(), 3);
        assert_eq!(f.degree(0), 2);
        assert!(is_bfs_ordering(&f, &rv, ord.order()));
        assert_eq!(LeveledDegreeSequence::from_view(&f, &rv), lds);

        let lds = LeveledDegreeSequence::new(vec![vec![2, 1], vec![1]], true).unwrap();
        let (f, rv, _) = build_level_greedy_forest(&lds).unwrap();
        assert_eq!(f.n(), 3);
        assert!(rv.is_edge_rooted());
        assert_eq!(f.degree(0), 2);
        assert_eq!(LeveledDegreeSequence::from_view(&f, &rv), lds);

        let lds = LeveledDegreeSequence::new(vec![vec![3], vec![2, 1, 1], vec![1]], false).unwrap();
        let (f, rv, ord) = build_level_greedy_forest(&lds).unwrap();
        assert!(is_bfs_ordering(&f, &rv, ord.order()));
        assert_eq!(rv.children(ord.order()[1]).len(), 1);
    }

    #[test]
    fn leveled_sequence_rejects_inconsistency() {
        assert!(matches!(
            LeveledDegreeSequence::new(vec![vec![2], vec![1, 1, 1]], false),
            Err(Error::InconsistentLevels { .. })
        ));
    }

    #[test]
    fn enumeration_counts() {
        let star = seq(&[4, 1, 1, 1, 1]);
        assert_eq!(
            enumerate_trees(&star, EnumMode::Unlabeled).unwrap().len(),
            1
        );

        let pi = seq(&[3, 2, 2, 1, 1, 1]);
        let labeled = enumerate_trees(&pi, EnumMode::Labeled).unwrap();
        assert_eq!(labeled.len(), 12);
        assert_eq!(labeled_tree_count(&pi).to_usize().unwrap(), 12);
        for t in &labeled {
            assert_eq!(t.degree_sequence(), pi);
        }

        let unlabeled = enumerate_trees(&pi, EnumMode::Unlabeled).unwrap();
        assert_eq!(unlabeled.len(), 2);
        assert_ne!(canonical_form(&unlabeled[0]), canonical_form(&unlabeled[1]));

        assert!(matches!(
            enumerate_trees(
                &crate::degseq::corollary_sequence(crate::degseq::CorollaryKind::Star, 30, 0)
                    .unwrap(),
                EnumMode::Labeled
            ),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn canonical_form_distinguishes_and_identifies() {
        let p4 = Tree::path(4);
        let relabeled = Tree::from_edges(4, &[(2, 0), (0, 3), (3, 1)]).unwrap();
        assert_eq!(canonical_form(&p4), canonical_form(&relabeled));
        assert_ne!(canonical_form(&Tree::star(4)), canonical_form(&p4));
    }

    #[test]
    fn edge_shift_bookkeeping() {
        let (g, _) = build_greedy_tree(&seq(&[3, 2, 2, 1, 1, 1]));
        let rv = RootedView::single_rooted(&g, 0).unwrap();
        // level-1 vertices of degree 2, each with one leaf child
        let lv1: Vec<usize> = (0..6)
            .filter(|&v| rv.level(v) == 1 && g.degree(v) == 2)
            .collect();
        let (x_prime, x) = (lv1[0], lv1[1]);
        let x1 = rv.children(x)[0];
        let shifted = edge_shift(&g, &rv, x, x1, x_prime).unwrap();
        assert_eq!(shifted.degree_sequence().degrees(), &[3, 3, 1, 1, 1, 1]);

        // identity
        assert_eq!(edge_shift(&g, &rv, x, x1, x).unwrap(), g);
        // shifting the root-side edge is rejected
        assert_eq!(edge_shift(&g, &rv, x1, x, x1), Err(Error::NotABranchEdge));
        // reverse shift restores the canonical form
        let rv2 = RootedView::single_rooted(&shifted, 0).unwrap();
        let back = edge_shift(&shifted, &rv2, x_prime, x1, x).unwrap();
        assert_eq!(canonical_form(&back), canonical_form(&g));
    }

    #[test]
    fn level_greedy_recognition_matches_canonical_realization() {
        // For every rooted view of every unlabeled tree with n <= 7, the
        // greedy-ordering test must agree with "isomorphic to the level
        // greedy forest of its leveled degree sequence".
        for n in 2..=7usize {
            for pi in crate::verifier::tree_degree_sequences(n) {
                for t in enumerate_trees(&pi, EnumMode::Unlabeled).unwrap() {
                    for rv in root_views(&t) {
                        let lds = LeveledDegreeSequence::from_view(&t, &rv);
                        let (g, grv, _) = build_level_greedy_forest(&lds).unwrap();
                        let iso = view_canonical_form(&t, &rv) == view_canonical_form(&g, &grv);
                        assert_eq!(
                            is_level_greedy(&t, &rv),
                            iso,
                            "disagreement on {:?} rooted {:?}",
                            t.edges(),
                            rv.roots()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn greedy_tree_is_level_greedy_at_its_root() {
        for raw in [
            &[3i64, 2, 2, 1, 1, 1][..],
            &[4, 3, 2, 1, 1, 1, 1, 1],
            &[2, 2, 2, 1, 1],
        ] {
            let (t, _) = build_greedy_tree(&seq(raw));
            let rv = RootedView::single_rooted(&t, 0).unwrap();
            assert!(is_level_greedy(&t, &rv));
        }
    }

    #[test]
    fn forest_validation() {
        assert!(Forest::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).is_err());
        assert!(Forest::from_edges(3, &[(0, 0)]).is_err());
        assert!(Forest::from_edges(3, &[(0, 1), (0, 1)]).is_err());
        assert!(Tree::from_edges(4, &[(0, 1), (2, 3)]).is_err());
        let f = Forest::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(f.components().len(), 2);
        assert!(RootedView::vertex_rooted(&f, &[0]).is_err());
        assert!(RootedView::vertex_rooted(&f, &[0, 2]).is_ok());
        assert!(RootedView::vertex_rooted(&f, &[0, 1]).is_err());
    }

    #[test]
    fn error_display_is_stable() {
        assert_eq!(
            Error::SumMismatch {
                sum: 6,
                expected: 4
            }
            .to_string(),
            "SumMismatch: degree sum 6, expected 4"
        );
    }
}
