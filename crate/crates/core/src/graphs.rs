//! Directed multigraphs attached to the arrangements.
//!
//! Each arrangement yields a multigraph `G` on `[n]` (one arc per
//! hyperplane) whose parking functions are exactly the Pak-Stanley labels.
//! Membership is decided by a depth-first burning pass over the augmented
//! graph `Ḡ` (arcs reversed, a root `0` wired to every vertex); the pass
//! doubles as a bijection between parking functions and the spanning
//! arborescences of `Ḡ`, which are in turn counted by the reduced Laplacian
//! determinant.

use std::collections::BTreeSet;
use std::fmt;

use num::BigInt;

use crate::arrangement::{ArrangementSpec, HyperplaneKind};
use crate::exact::IntMatrix;

/// One arc of a multigraph. Parallel arcs share `tail`/`head` and are told
/// apart by `copy` (1-based, at most the multiplicity of the pair).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArcId {
    pub tail: usize,
    pub head: usize,
    pub copy: usize,
}

impl fmt::Display for ArcId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.copy == 1 {
            write!(f, "({},{})", self.tail, self.head)
        } else {
            write!(f, "({},{}_{})", self.tail, self.head, self.copy)
        }
    }
}

/// A loopless directed multigraph on a contiguous vertex range, stored as a
/// dense multiplicity matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedMultigraph {
    min_vertex: usize,
    max_vertex: usize,
    mult: Vec<Vec<usize>>,
}

impl DirectedMultigraph {
    /// Empty graph on the vertices `min_vertex..=max_vertex`.
    pub fn new(min_vertex: usize, max_vertex: usize) -> Self {
        assert!(min_vertex <= max_vertex, "empty vertex range");
        let size = max_vertex + 1;
        DirectedMultigraph { min_vertex, max_vertex, mult: vec![vec![0; size]; size] }
    }

    pub fn min_vertex(&self) -> usize {
        self.min_vertex
    }

    pub fn max_vertex(&self) -> usize {
        self.max_vertex
    }

    pub fn vertex_count(&self) -> usize {
        self.max_vertex - self.min_vertex + 1
    }

    pub fn vertices(&self) -> std::ops::RangeInclusive<usize> {
        self.min_vertex..=self.max_vertex
    }

    fn assert_vertex(&self, v: usize) {
        assert!(
            (self.min_vertex..=self.max_vertex).contains(&v),
            "vertex {v} outside {}..={}",
            self.min_vertex,
            self.max_vertex
        );
    }

    /// Adds one copy of the arc `tail -> head`. Loops are rejected.
    pub fn add_arc(&mut self, tail: usize, head: usize) {
        self.assert_vertex(tail);
        self.assert_vertex(head);
        assert!(tail != head, "loop at vertex {tail}");
        self.mult[tail][head] += 1;
    }

    pub fn multiplicity(&self, tail: usize, head: usize) -> usize {
        self.assert_vertex(tail);
        self.assert_vertex(head);
        self.mult[tail][head]
    }

    /// Number of arcs counted with multiplicity.
    pub fn arc_count(&self) -> usize {
        self.mult.iter().map(|row| row.iter().sum::<usize>()).sum()
    }

    /// Arcs pointing into `v`, counted with multiplicity.
    pub fn in_degree(&self, v: usize) -> usize {
        self.assert_vertex(v);
        self.vertices().map(|t| self.mult[t][v]).sum()
    }

    /// Every arc, each parallel copy separately, sorted by (tail, head, copy).
    pub fn arcs(&self) -> Vec<ArcId> {
        let mut out = Vec::with_capacity(self.arc_count());
        for tail in self.vertices() {
            for head in self.vertices() {
                for copy in 1..=self.mult[tail][head] {
                    out.push(ArcId { tail, head, copy });
                }
            }
        }
        out
    }

    /// The traversal list `N(v)`: arcs out of `v` with heads in descending
    /// order, parallel copies adjacent in ascending copy order.
    pub fn neighbor_list(&self, v: usize) -> Vec<ArcId> {
        self.assert_vertex(v);
        let mut out = Vec::new();
        for head in self.vertices().rev() {
            for copy in 1..=self.mult[v][head] {
                out.push(ArcId { tail: v, head, copy });
            }
        }
        out
    }

    /// Renders an arc the way the traversal traces print it: the copy index
    /// is shown only when the pair actually has parallel copies.
    pub fn format_arc(&self, arc: ArcId) -> String {
        if self.multiplicity(arc.tail, arc.head) > 1 {
            format!("({},{}_{})", arc.tail, arc.head, arc.copy)
        } else {
            format!("({},{})", arc.tail, arc.head)
        }
    }
}

/// The multigraph `G^X` on `[n]`: one arc per hyperplane. A Coxeter
/// hyperplane `x_i = x_j` becomes `(i, j)`, a Shi hyperplane `x_i = x_j + 1`
/// becomes `(j, i)`, and an Ish hyperplane `x_1 = x_j + i` becomes `(j, 1)`.
pub fn graph_of_arrangement(spec: &ArrangementSpec) -> DirectedMultigraph {
    let mut g = DirectedMultigraph::new(1, spec.n());
    for h in spec.hyperplanes() {
        let (tail, head) = match h.kind {
            HyperplaneKind::Coxeter => (h.i, h.j),
            HyperplaneKind::Shi => (h.j, h.i),
            HyperplaneKind::Ish => (h.j, 1),
        };
        g.add_arc(tail, head);
    }
    g
}

/// The augmented graph `Ḡ` on `{0} ∪ [n]`: every arc of `g` reversed plus
/// one arc `(0, i)` for each vertex `i`.
pub fn augmented_graph(g: &DirectedMultigraph) -> DirectedMultigraph {
    assert_eq!(g.min_vertex(), 1, "augmentation expects a graph on [n]");
    let n = g.max_vertex();
    let mut gbar = DirectedMultigraph::new(0, n);
    for i in 1..=n {
        gbar.add_arc(0, i);
    }
    for tail in 1..=n {
        for head in 1..=n {
            for _ in 0..g.multiplicity(tail, head) {
                gbar.add_arc(head, tail);
            }
        }
    }
    gbar
}

/// Everything the burning pass records.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BurnTrace {
    /// Vertices in burning order, starting with the root `0`.
    pub burnt_vertices: Vec<usize>,
    /// Arcs that burned a new vertex, in traversal order. They form an
    /// arborescence rooted at `0` spanning exactly the burnt set.
    pub tree_edges: Vec<ArcId>,
    /// Arcs that spent one unit of the target's budget instead.
    pub dampened_edges: Vec<ArcId>,
    /// Whether every vertex burned, i.e. whether `a` is a parking function.
    pub fits: bool,
}

struct BurnState<'a> {
    nbr: Vec<Vec<ArcId>>,
    work: Vec<usize>,
    burnt: Vec<bool>,
    trace: &'a mut BurnTrace,
}

fn burn_from(i: usize, st: &mut BurnState) {
    for k in 0..st.nbr[i].len() {
        let arc = st.nbr[i][k];
        let j = arc.head;
        if !st.burnt[j] {
            if st.work[j] == 0 {
                st.trace.tree_edges.push(arc);
                st.burnt[j] = true;
                st.trace.burnt_vertices.push(j);
                burn_from(j, st);
            } else {
                st.work[j] -= 1;
                st.trace.dampened_edges.push(arc);
            }
        }
    }
}

/// Depth-first burning over `Ḡ` with budgets `a` (entry `k` belongs to
/// vertex `k + 1`). The root burns first; a traversal arc burns an unburnt
/// vertex whose remaining budget is zero and otherwise spends one unit of
/// it. `a` itself is not mutated. `fits` says whether everything burned.
pub fn dfs_burn(gbar: &DirectedMultigraph, a: &[usize]) -> BurnTrace {
    assert_eq!(gbar.min_vertex(), 0, "burning expects an augmented graph");
    let n = gbar.max_vertex();
    assert_eq!(a.len(), n, "budget vector length {} != {n}", a.len());
    let mut work = vec![0; n + 1];
    work[1..].copy_from_slice(a);
    let mut trace = BurnTrace {
        burnt_vertices: vec![0],
        tree_edges: Vec::new(),
        dampened_edges: Vec::new(),
        fits: false,
    };
    let mut burnt = vec![false; n + 1];
    burnt[0] = true;
    let mut st = BurnState {
        nbr: (0..=n).map(|v| gbar.neighbor_list(v)).collect(),
        work,
        burnt,
        trace: &mut trace,
    };
    burn_from(0, &mut st);
    trace.fits = trace.burnt_vertices.len() == n + 1;
    trace
}

/// Allocation-free repeat burner for counting loops: same traversal as
/// [`dfs_burn`] but it only answers whether `a` fits.
pub(crate) struct Burner {
    heads: Vec<Vec<usize>>,
    work: Vec<usize>,
    burnt: Vec<bool>,
}

impl Burner {
    pub fn new(gbar: &DirectedMultigraph) -> Self {
        assert_eq!(gbar.min_vertex(), 0, "burning expects an augmented graph");
        let n = gbar.max_vertex();
        let heads = (0..=n)
            .map(|v| gbar.neighbor_list(v).iter().map(|arc| arc.head).collect())
            .collect();
        Burner { heads, work: vec![0; n + 1], burnt: vec![false; n + 1] }
    }

    pub fn fits(&mut self, a: &[usize]) -> bool {
        let n = self.work.len() - 1;
        debug_assert_eq!(a.len(), n);
        self.work[1..].copy_from_slice(a);
        for b in self.burnt.iter_mut() {
            *b = false;
        }
        self.burnt[0] = true;
        let burned = 1 + self.burn_from(0);
        burned == n + 1
    }

    fn burn_from(&mut self, i: usize) -> usize {
        let mut burned = 0;
        for k in 0..self.heads[i].len() {
            let j = self.heads[i][k];
            if !self.burnt[j] {
                if self.work[j] == 0 {
                    self.burnt[j] = true;
                    burned += 1 + self.burn_from(j);
                } else {
                    self.work[j] -= 1;
                }
            }
        }
        burned
    }
}

/// Convenience wrapper: does `a` fit `gbar`?
pub fn burn_fits(gbar: &DirectedMultigraph, a: &[usize]) -> bool {
    Burner::new(gbar).fits(a)
}

/// The subset criterion for a parking function of `g` (a graph on `[n]`,
/// not augmented): every nonempty `I ⊆ [n]` must contain a vertex `i` whose
/// number of arcs into the complement of `I`, counted with multiplicity, is
/// at least `a(i)`. Brute force over all `2^n - 1` subsets; this is the
/// oracle the burning pass is tested against.
pub fn is_parking_definition(g: &DirectedMultigraph, a: &[usize]) -> bool {
    assert_eq!(g.min_vertex(), 1, "subset criterion expects a graph on [n]");
    let n = g.max_vertex();
    assert_eq!(a.len(), n, "budget vector length {} != {n}", a.len());
    for mask in 1u32..(1 << n) {
        let mut ok = false;
        for i in 1..=n {
            if mask >> (i - 1) & 1 == 0 {
                continue;
            }
            let out: usize =
                (1..=n).filter(|j| mask >> (j - 1) & 1 == 0).map(|j| g.multiplicity(i, j)).sum();
            if out >= a[i - 1] {
                ok = true;
                break;
            }
        }
        if !ok {
            return false;
        }
    }
    true
}

/// A spanning arborescence of an augmented graph: one chosen incoming arc
/// per non-root vertex, all vertices reachable from the root.
pub type Arborescence = BTreeSet<ArcId>;

/// Why a claimed arborescence was rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArborescenceError {
    /// Some arc points into the root.
    RootHasIncoming,
    /// This vertex does not have exactly one incoming tree arc.
    IncomingCountNotOne(usize),
    /// This arc (or its copy index) does not exist in the graph.
    ArcNotInGraph(ArcId),
    /// This vertex is not reachable from the root along tree arcs.
    NotReachable(usize),
}

impl fmt::Display for ArborescenceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArborescenceError::RootHasIncoming => write!(f, "tree arc points into the root"),
            ArborescenceError::IncomingCountNotOne(v) => {
                write!(f, "vertex {v} needs exactly one incoming tree arc")
            }
            ArborescenceError::ArcNotInGraph(arc) => write!(f, "arc {arc} not in the graph"),
            ArborescenceError::NotReachable(v) => {
                write!(f, "vertex {v} not reachable from the root")
            }
        }
    }
}

impl std::error::Error for ArborescenceError {}

struct UnwindState<'a> {
    nbr: Vec<Vec<ArcId>>,
    tree: &'a Arborescence,
    burnt: Vec<bool>,
    a: Vec<usize>,
}

fn unwind_from(i: usize, st: &mut UnwindState) {
    for k in 0..st.nbr[i].len() {
        let arc = st.nbr[i][k];
        let j = arc.head;
        if !st.burnt[j] {
            if st.tree.contains(&arc) {
                st.burnt[j] = true;
                unwind_from(j, st);
            } else {
                st.a[j] += 1;
            }
        }
    }
}

/// Inverse of the burning pass: replays the traversal with the tree arcs
/// fixed and reads the budgets off the dampened arcs. For every parking
/// function `a`, `tree_to_parking(gbar, dfs_burn(gbar, a).tree_edges) = a`,
/// and the composition the other way round is the identity on spanning
/// arborescences.
pub fn tree_to_parking(
    gbar: &DirectedMultigraph,
    tree: &Arborescence,
) -> Result<Vec<usize>, ArborescenceError> {
    assert_eq!(gbar.min_vertex(), 0, "unwinding expects an augmented graph");
    let n = gbar.max_vertex();
    let mut incoming = vec![0usize; n + 1];
    for arc in tree {
        if arc.copy == 0 || gbar.multiplicity(arc.tail, arc.head) < arc.copy {
            return Err(ArborescenceError::ArcNotInGraph(*arc));
        }
        if arc.head == 0 {
            return Err(ArborescenceError::RootHasIncoming);
        }
        incoming[arc.head] += 1;
    }
    for v in 1..=n {
        if incoming[v] != 1 {
            return Err(ArborescenceError::IncomingCountNotOne(v));
        }
    }
    let mut burnt = vec![false; n + 1];
    burnt[0] = true;
    let mut st = UnwindState {
        nbr: (0..=n).map(|v| gbar.neighbor_list(v)).collect(),
        tree,
        burnt,
        a: vec![0; n + 1],
    };
    unwind_from(0, &mut st);
    if let Some(v) = (1..=n).find(|&v| !st.burnt[v]) {
        return Err(ArborescenceError::NotReachable(v));
    }
    Ok(st.a[1..].to_vec())
}

/// The Laplacian of an augmented graph: diagonal entry `L_vv` is the number
/// of arcs into `v`, off-diagonal `L_uv` is minus the multiplicity of the
/// arc `u -> v`. Every column sums to zero.
pub fn laplacian(gbar: &DirectedMultigraph) -> IntMatrix {
    assert_eq!(gbar.min_vertex(), 0, "laplacian expects an augmented graph");
    let size = gbar.max_vertex() + 1;
    let mut m = IntMatrix::from_rows(size, size, vec![BigInt::from(0); size * size]);
    for v in 0..size {
        m.set(v, v, BigInt::from(gbar.in_degree(v)));
        for u in 0..size {
            if u != v {
                m.set(u, v, -BigInt::from(gbar.multiplicity(u, v)));
            }
        }
    }
    m
}

/// Determinant of the Laplacian with the root row and column deleted. By
/// the matrix-tree theorem this counts spanning arborescences, hence also
/// parking functions.
pub fn reduced_determinant(gbar: &DirectedMultigraph) -> BigInt {
    laplacian(gbar).minor(0, 0).det()
}

/// Enumeration refuses augmented graphs with more vertices than this unless
/// the caller opts in via [`enumerate_arborescences_with_limit`].
pub const DEFAULT_MAX_ARBORESCENCE_VERTICES: usize = 9;

/// All spanning arborescences of `gbar` rooted at `0`, parallel copies
/// distinguished. Backtracking over one incoming-arc choice per non-root
/// vertex, rejecting parent cycles as soon as they close.
pub fn enumerate_arborescences(gbar: &DirectedMultigraph) -> Vec<Arborescence> {
    enumerate_arborescences_with_limit(gbar, DEFAULT_MAX_ARBORESCENCE_VERTICES)
}

/// As [`enumerate_arborescences`] with an explicit vertex bound.
pub fn enumerate_arborescences_with_limit(
    gbar: &DirectedMultigraph,
    max_vertices: usize,
) -> Vec<Arborescence> {
    assert_eq!(gbar.min_vertex(), 0, "enumeration expects an augmented graph");
    let n = gbar.max_vertex();
    assert!(
        n + 1 <= max_vertices,
        "arborescence enumeration over {} vertices exceeds the limit {max_vertices}",
        n + 1
    );
    let candidates: Vec<Vec<ArcId>> = (0..=n)
        .map(|head| {
            let mut arcs = Vec::new();
            for tail in 0..=n {
                for copy in 1..=gbar.multiplicity(tail, head) {
                    arcs.push(ArcId { tail, head, copy });
                }
            }
            arcs
        })
        .collect();
    let mut parent = vec![usize::MAX; n + 1];
    parent[0] = 0;
    let mut chosen: Vec<ArcId> = Vec::with_capacity(n);
    let mut out = Vec::new();
    fn assign(
        v: usize,
        n: usize,
        candidates: &[Vec<ArcId>],
        parent: &mut Vec<usize>,
        chosen: &mut Vec<ArcId>,
        out: &mut Vec<Arborescence>,
    ) {
        if v > n {
            out.push(chosen.iter().copied().collect());
            return;
        }
        for &arc in &candidates[v] {
            // Walking the parent chain from the proposed tail detects any
            // cycle through v; chains always stop at 0 or an unchosen vertex.
            let mut w = arc.tail;
            while w != 0 && w != v && parent[w] != usize::MAX {
                w = parent[w];
            }
            if w == v {
                continue;
            }
            parent[v] = arc.tail;
            chosen.push(arc);
            assign(v + 1, n, candidates, parent, chosen, out);
            chosen.pop();
            parent[v] = usize::MAX;
        }
    }
    assign(1, n, &candidates, &mut parent, &mut chosen, &mut out);
    out
}

/// All parking functions of a graph `g` on `[n]`: the vectors in
/// `{0, ..., n-1}^n` that fit the augmented graph. The search space is the
/// full box, so this is exponential in `n`.
pub fn enumerate_parking_functions(g: &DirectedMultigraph) -> BTreeSet<Vec<usize>> {
    let gbar = augmented_graph(g);
    let n = g.max_vertex();
    let mut burner = Burner::new(&gbar);
    let mut out = BTreeSet::new();
    let mut a = vec![0usize; n];
    loop {
        if burner.fits(&a) {
            out.insert(a.clone());
        }
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if a[k] + 1 < n {
                a[k] += 1;
                break;
            }
            a[k] = 0;
        }
    }
}

/// Streaming count of parking functions, for sizes where materializing the
/// set would be wasteful.
pub fn count_parking_functions(g: &DirectedMultigraph) -> u64 {
    let gbar = augmented_graph(g);
    let n = g.max_vertex();
    let mut burner = Burner::new(&gbar);
    let mut count = 0;
    let mut a = vec![0usize; n];
    loop {
        if burner.fits(&a) {
            count += 1;
        }
        let mut k = n;
        loop {
            if k == 0 {
                return count;
            }
            k -= 1;
            if a[k] + 1 < n {
                a[k] += 1;
                break;
            }
            a[k] = 0;
        }
    }
}
