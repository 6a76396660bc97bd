//! Commutation graphs, joint probability distributions, and the
//! tree/clique-tree product constructions.
//!
//! Vertices are observables; an edge means the pair is jointly measurable,
//! so its pair distribution is observable. A noncontextual description is a
//! single joint distribution over *all* vertices reproducing every edge
//! table. Whether one always exists depends only on graph structure:
//!
//! * **trees/forests** — always, by the product formula
//!   `p = Π_edges p_ij / Π_v p_v^{deg(v)-1}` ([`build_tree_jpd`]);
//! * **clique trees** (chordal graphs glued along single-vertex
//!   separators) — always, by the analogous clique product
//!   ([`build_clique_tree_jpd`]);
//! * **chordless cycles of length >= 4** — not always; existence becomes a
//!   genuine linear-programming question (see [`crate::lp`]), and cycles of
//!   length 5 host the pentagon tests.
//!
//! [`CommutationGraph::classify`] decides which regime a graph is in and
//! produces an explicit chordless-cycle witness in the last case.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::dist::{PairTable, CONSISTENCY_TOL};
use crate::error::{Error, Result};

/// Hard cap on the number of variables in an explicit joint distribution
/// (the table has `2^n` entries).
pub const MAX_JPD_VARS: usize = 20;

/// Probabilities at or below this are treated as structural zeros by the
/// product constructions (a vanishing separator marginal forces the whole
/// cell to zero).
pub const ZERO_TOL: f64 = 1e-15;

/// An undirected graph of joint measurability.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutationGraph {
    n: usize,
    adj: Vec<Vec<bool>>,
    edges: Vec<(usize, usize)>,
}

/// Structural class of a commutation graph, deciding how (and whether) a
/// global joint distribution can be built from pair tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphClass {
    /// No edges: nothing is jointly measurable.
    Empty,
    /// Acyclic: the tree product formula applies.
    TreeOrForest,
    /// Chordal with at least one cycle: every cycle is triangulated and a
    /// clique-tree product applies.
    CliqueTree,
    /// Contains an induced cycle of length >= 4; the payload lists its
    /// vertices in cyclic order. Joint-distribution existence is no longer
    /// automatic.
    ChordlessCycle(Vec<usize>),
}

impl CommutationGraph {
    /// Build a graph on `n` vertices from an edge list. Endpoints must be
    /// in range and distinct; duplicate edges (in either orientation) are
    /// collapsed.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![vec![false; n]; n];
        let mut set = BTreeSet::new();
        for &(i, j) in edges {
            if i >= n || j >= n {
                return Err(Error::UnknownVariable {
                    variable: i.max(j),
                    count: n,
                });
            }
            if i == j {
                return Err(Error::WrongStructure {
                    reason: format!("self-loop at vertex {i}"),
                });
            }
            adj[i][j] = true;
            adj[j][i] = true;
            set.insert((i.min(j), i.max(j)));
        }
        Ok(Self {
            n,
            adj,
            edges: set.into_iter().collect(),
        })
    }

    /// Number of vertices.
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Sorted, orientation-normalized edge list.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Whether `i` and `j` are adjacent.
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adj[i][j]
    }

    /// Degree of vertex `v`.
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].iter().filter(|&&a| a).count()
    }

    /// Neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.n).filter(|&u| self.adj[v][u]).collect()
    }

    /// Whether the graph contains no cycle (checked by union-find).
    fn is_acyclic(&self) -> bool {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(i, j) in &self.edges {
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri == rj {
                return false;
            }
            parent[ri] = rj;
        }
        true
    }

    /// Search for a chordless cycle of length >= 4.
    ///
    /// For every vertex `v` and every non-adjacent pair `u, w` of its
    /// neighbors, look for a `u`–`w` path avoiding `v` and all other
    /// neighbors of `v`. A shortest such path is induced (any chord would
    /// shortcut it), none of its interior vertices sees `v`, and `u`, `w`
    /// are non-adjacent — so `v, u, ..., w` is a chordless cycle, of length
    /// at least 4 because the path has at least two edges. Conversely, any
    /// chordless cycle is found this way from each of its vertices, so the
    /// search is exact.
    fn find_chordless_cycle(&self) -> Option<Vec<usize>> {
        for v in 0..self.n {
            let nb = self.neighbors(v);
            for (a, &u) in nb.iter().enumerate() {
                for &w in nb.iter().skip(a + 1) {
                    if self.adj[u][w] {
                        continue;
                    }
                    let allowed =
                        |x: usize| x == u || x == w || (x != v && !self.adj[v][x]);
                    // BFS from u to w over allowed vertices.
                    let mut parent = vec![usize::MAX; self.n];
                    let mut queue = std::collections::VecDeque::from([u]);
                    parent[u] = u;
                    'bfs: while let Some(x) = queue.pop_front() {
                        for (y, &edge) in self.adj[x].iter().enumerate() {
                            if edge && allowed(y) && parent[y] == usize::MAX {
                                parent[y] = x;
                                if y == w {
                                    break 'bfs;
                                }
                                queue.push_back(y);
                            }
                        }
                    }
                    if parent[w] == usize::MAX {
                        continue;
                    }
                    let mut path = vec![w];
                    while *path.last().unwrap() != u {
                        path.push(parent[*path.last().unwrap()]);
                    }
                    path.push(v); // cycle order: w, ..., u, v (cyclic)
                    path.reverse(); // v, u, ..., w
                    return Some(path);
                }
            }
        }
        None
    }

    /// Classify the graph (see [`GraphClass`]).
    pub fn classify(&self) -> GraphClass {
        if self.edges.is_empty() {
            return GraphClass::Empty;
        }
        if self.is_acyclic() {
            return GraphClass::TreeOrForest;
        }
        match self.find_chordless_cycle() {
            Some(cycle) => GraphClass::ChordlessCycle(cycle),
            None => GraphClass::CliqueTree,
        }
    }
}

/// A joint probability distribution over `k` binary variables, stored as a
/// dense table of `2^k` cells.
///
/// Variables carry arbitrary (unique) integer labels; bit `i` of a cell
/// index holds the outcome of `variables[i]`, so `variables[0]` is the
/// least significant bit.
///
/// Serialized as `{"variables": [..], "table": {"0110..": p, ..}}` where
/// the bitstring key lists outcomes with `variables[0]` leftmost; cells
/// equal to zero are omitted and restored as zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "JpdRepr", into = "JpdRepr")]
pub struct JointDistribution {
    variables: Vec<usize>,
    table: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct JpdRepr {
    variables: Vec<usize>,
    table: BTreeMap<String, f64>,
}

impl JointDistribution {
    /// Wrap a dense table, validating shape (`2^k` cells for `k` unique
    /// variables, `1 <= k <=` [`MAX_JPD_VARS`]) and distribution-ness
    /// (entries above `-1e-12`, clipped to zero; total within `1e-9` of 1).
    pub fn new(variables: Vec<usize>, mut table: Vec<f64>) -> Result<Self> {
        let k = variables.len();
        if k == 0 || k > MAX_JPD_VARS {
            return Err(Error::TooLarge {
                what: "joint distribution variables",
                got: k,
                limit: MAX_JPD_VARS,
            });
        }
        if BTreeSet::from_iter(&variables).len() != k {
            return Err(Error::WrongStructure {
                reason: "duplicate variable label in joint distribution".into(),
            });
        }
        if table.len() != 1 << k {
            return Err(Error::InvalidDistribution {
                reason: format!(
                    "table has {} cells; {} variables need {}",
                    table.len(),
                    k,
                    1usize << k
                ),
            });
        }
        let mut sum = 0.0;
        for cell in &mut table {
            if !cell.is_finite() || *cell < -1e-12 {
                return Err(Error::InvalidDistribution {
                    reason: format!("cell probability {cell} is negative or non-finite"),
                });
            }
            if *cell < 0.0 {
                *cell = 0.0;
            }
            sum += *cell;
        }
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidDistribution {
                reason: format!("table sums to {sum}, not 1"),
            });
        }
        Ok(Self { variables, table })
    }

    /// The variable labels, in bit order (index 0 = least significant bit).
    pub fn variables(&self) -> &[usize] {
        &self.variables
    }

    /// The dense probability table.
    pub fn table(&self) -> &[f64] {
        &self.table
    }

    /// Probability of the cell with the given index.
    pub fn prob(&self, index: usize) -> f64 {
        self.table[index]
    }

    /// Marginal distribution over `keep` (labels must exist and be
    /// unique), with the result's bit order following `keep`. Passing a
    /// permutation of all variables reorders the table.
    pub fn marginalize(&self, keep: &[usize]) -> Result<JointDistribution> {
        let mut positions = Vec::with_capacity(keep.len());
        for &v in keep {
            let pos = self
                .variables
                .iter()
                .position(|&x| x == v)
                .ok_or(Error::UnknownVariable {
                    variable: v,
                    count: self.variables.len(),
                })?;
            positions.push(pos);
        }
        let mut table = vec![0.0; 1 << keep.len()];
        for (idx, &p) in self.table.iter().enumerate() {
            let mut out = 0usize;
            for (bit, &pos) in positions.iter().enumerate() {
                out |= ((idx >> pos) & 1) << bit;
            }
            table[out] += p;
        }
        JointDistribution::new(keep.to_vec(), table)
    }

    /// Pair marginal of `(a, b)` as a [`PairTable`] with the first table
    /// index on `a`.
    pub fn pair_marginal(&self, a: usize, b: usize) -> Result<PairTable> {
        let m = self.marginalize(&[a, b])?;
        PairTable::new([[m.prob(0), m.prob(2)], [m.prob(1), m.prob(3)]])
    }

    /// Single-variable marginal `[p(v=0), p(v=1)]`.
    pub fn single_marginal(&self, v: usize) -> Result<[f64; 2]> {
        let m = self.marginalize(&[v])?;
        Ok([m.prob(0), m.prob(1)])
    }

    /// Total variation distance `max_E |p(E) - q(E)| = ½ Σ |p - q|` to
    /// another distribution over the same variable set (any order).
    pub fn total_variation_distance(&self, other: &JointDistribution) -> Result<f64> {
        let aligned = other.marginalize(&self.variables)?;
        Ok(self
            .table
            .iter()
            .zip(&aligned.table)
            .map(|(p, q)| (p - q).abs())
            .sum::<f64>()
            / 2.0)
    }
}

impl TryFrom<JpdRepr> for JointDistribution {
    type Error = Error;

    fn try_from(r: JpdRepr) -> Result<Self> {
        let k = r.variables.len();
        if k == 0 || k > MAX_JPD_VARS {
            return Err(Error::TooLarge {
                what: "joint distribution variables",
                got: k,
                limit: MAX_JPD_VARS,
            });
        }
        let mut table = vec![0.0; 1 << k];
        for (key, p) in &r.table {
            if key.len() != k || key.bytes().any(|b| b != b'0' && b != b'1') {
                return Err(Error::InvalidDistribution {
                    reason: format!("malformed outcome key {key:?} for {k} variables"),
                });
            }
            let mut idx = 0usize;
            for (bit, byte) in key.bytes().enumerate() {
                if byte == b'1' {
                    idx |= 1 << bit;
                }
            }
            table[idx] = *p;
        }
        JointDistribution::new(r.variables, table)
    }
}

impl From<JointDistribution> for JpdRepr {
    fn from(j: JointDistribution) -> Self {
        let k = j.variables.len();
        let mut table = BTreeMap::new();
        for (idx, &p) in j.table.iter().enumerate() {
            if p > 0.0 {
                let key: String = (0..k)
                    .map(|bit| if idx >> bit & 1 == 1 { '1' } else { '0' })
                    .collect();
                table.insert(key, p);
            }
        }
        JpdRepr {
            variables: j.variables,
            table,
        }
    }
}

/// A consistent collection of pair tables indexed by variable pairs.
///
/// Keys are stored orientation-normalized (`i < j`, table's first index on
/// `i`); [`PairwiseMarginals::get`] transposes on the fly, so callers can
/// ask for either orientation.
///
/// Serialized as `{"n": .., "tables": [{"i": .., "j": .., "table": [[..],[..]]}, ..]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MarginalsRepr", into = "MarginalsRepr")]
pub struct PairwiseMarginals {
    n: usize,
    tables: BTreeMap<(usize, usize), PairTable>,
}

#[derive(Serialize, Deserialize)]
struct MarginalsRepr {
    n: usize,
    tables: Vec<MarginalEntry>,
}

#[derive(Serialize, Deserialize)]
struct MarginalEntry {
    i: usize,
    j: usize,
    table: PairTable,
}

impl PairwiseMarginals {
    /// An empty collection over `n` variables.
    pub fn new(n: usize) -> Self {
        Self {
            n,
            tables: BTreeMap::new(),
        }
    }

    /// Number of variables the collection ranges over.
    pub fn variable_count(&self) -> usize {
        self.n
    }

    /// Number of stored tables.
    pub fn len(&self) -> usize {
        self.tables.len()
    }

    /// Whether no tables are stored.
    pub fn is_empty(&self) -> bool {
        self.tables.is_empty()
    }

    /// Store the table for pair `(i, j)` with the first table index on
    /// `i`. Rejects out-of-range or equal indices and duplicate pairs.
    pub fn insert(&mut self, i: usize, j: usize, table: PairTable) -> Result<()> {
        if i >= self.n || j >= self.n {
            return Err(Error::UnknownVariable {
                variable: i.max(j),
                count: self.n,
            });
        }
        if i == j {
            return Err(Error::WrongStructure {
                reason: format!("pair table for variable {i} with itself"),
            });
        }
        let (key, oriented) = if i < j {
            ((i, j), table)
        } else {
            ((j, i), table.transposed())
        };
        if self.tables.contains_key(&key) {
            return Err(Error::WrongStructure {
                reason: format!("duplicate pair table for ({}, {})", key.0, key.1),
            });
        }
        self.tables.insert(key, oriented);
        Ok(())
    }

    /// The table for `(i, j)` with the first index on `i`, if present.
    pub fn get(&self, i: usize, j: usize) -> Option<PairTable> {
        let key = (i.min(j), i.max(j));
        let t = self.tables.get(&key)?;
        Some(if i < j { *t } else { t.transposed() })
    }

    /// The normalized pairs `(i, j)` with `i < j`, in sorted order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.tables.keys().copied()
    }

    /// Single-variable marginal `[p(v=0), p(v=1)]` from the first stored
    /// table mentioning `v`, if any.
    pub fn single_marginal(&self, v: usize) -> Option<[f64; 2]> {
        let (&key, table) = self.tables.iter().find(|(&(i, j), _)| i == v || j == v)?;
        Some(if key.0 == v {
            table.marginal_first()
        } else {
            table.marginal_second()
        })
    }

    /// Check that all tables sharing a variable agree on its marginal
    /// within `1e-9`.
    pub fn validate_consistency(&self) -> Result<()> {
        for v in 0..self.n {
            let mut reference: Option<f64> = None;
            for (&(i, j), table) in &self.tables {
                let p1 = if i == v {
                    table.marginal_first()[1]
                } else if j == v {
                    table.marginal_second()[1]
                } else {
                    continue;
                };
                match reference {
                    None => reference = Some(p1),
                    Some(r) => {
                        let difference = (r - p1).abs();
                        if difference > CONSISTENCY_TOL {
                            return Err(Error::InconsistentMarginals {
                                variable: v,
                                left: r,
                                right: p1,
                                difference,
                                tolerance: CONSISTENCY_TOL,
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

impl TryFrom<MarginalsRepr> for PairwiseMarginals {
    type Error = Error;

    fn try_from(r: MarginalsRepr) -> Result<Self> {
        let mut m = PairwiseMarginals::new(r.n);
        for e in r.tables {
            m.insert(e.i, e.j, e.table)?;
        }
        Ok(m)
    }
}

impl From<PairwiseMarginals> for MarginalsRepr {
    fn from(m: PairwiseMarginals) -> Self {
        MarginalsRepr {
            n: m.n,
            tables: m
                .tables
                .into_iter()
                .map(|((i, j), table)| MarginalEntry { i, j, table })
                .collect(),
        }
    }
}

/// Build the unique tree-factored joint distribution from edge tables:
///
/// ```text
/// p(a_1..a_n) = Π_{(i,j) ∈ E} p_ij(a_i, a_j) / Π_v p_v(a_v)^{deg(v) - 1}
/// ```
///
/// The graph must be acyclic with no isolated vertices, `marginals` must
/// hold a table for every edge, and tables sharing a vertex must agree on
/// its marginal within `1e-9`. The result reproduces every edge table as a
/// pair marginal. Cells where a shared vertex's marginal vanishes are set
/// to zero (the numerator vanishes there too).
pub fn build_tree_jpd(
    graph: &CommutationGraph,
    marginals: &PairwiseMarginals,
) -> Result<JointDistribution> {
    let n = graph.vertex_count();
    if n == 0 || n > MAX_JPD_VARS {
        return Err(Error::TooLarge {
            what: "tree vertices",
            got: n,
            limit: MAX_JPD_VARS,
        });
    }
    match graph.classify() {
        GraphClass::TreeOrForest => {}
        other => {
            return Err(Error::WrongStructure {
                reason: format!("tree construction needs an acyclic graph with edges, got {other:?}"),
            })
        }
    }
    let mut edge_tables = PairwiseMarginals::new(n);
    for &(i, j) in graph.edges() {
        let table = marginals.get(i, j).ok_or_else(|| Error::WrongStructure {
            reason: format!("missing pair table for tree edge ({i}, {j})"),
        })?;
        edge_tables.insert(i, j, table)?;
    }
    edge_tables.validate_consistency()?;

    let mut vertex_marginals = Vec::with_capacity(n);
    for v in 0..n {
        if graph.degree(v) == 0 {
            return Err(Error::WrongStructure {
                reason: format!("vertex {v} is isolated; its marginal is undetermined"),
            });
        }
        vertex_marginals.push(
            edge_tables
                .single_marginal(v)
                .expect("every non-isolated vertex appears in some edge table"),
        );
    }

    let mut table = vec![0.0; 1 << n];
    'cells: for (idx, cell) in table.iter_mut().enumerate() {
        let outcome = |v: usize| (idx >> v) & 1;
        let mut value = 1.0;
        for &(i, j) in graph.edges() {
            value *= edge_tables
                .get(i, j)
                .expect("edge table present")
                .prob(outcome(i), outcome(j));
        }
        for v in 0..n {
            let exponent = graph.degree(v) - 1;
            if exponent == 0 {
                continue;
            }
            let pv = vertex_marginals[v][outcome(v)];
            if pv <= ZERO_TOL {
                *cell = 0.0;
                continue 'cells;
            }
            value /= pv.powi(exponent as i32);
        }
        *cell = value;
    }
    JointDistribution::new((0..n).collect(), table)
}

/// Build the joint distribution of a clique tree from clique joints:
///
/// ```text
/// p(a_1..a_n) = Π_C p_C(a_C) / Π_{separators v} p_v(a_v)
/// ```
///
/// `cliques` holds one joint distribution per clique; cliques must cover
/// every vertex and edge, pairwise share at most one vertex, satisfy the
/// running-intersection property along a spanning forest of the
/// shared-vertex graph (all spanning forests have equal weight here, so
/// checking one is exact), and agree on shared-vertex marginals within
/// `1e-9`. One separator factor enters per spanning-forest edge. The result
/// reproduces every clique joint as a marginal.
pub fn build_clique_tree_jpd(
    graph: &CommutationGraph,
    cliques: &[JointDistribution],
) -> Result<JointDistribution> {
    let n = graph.vertex_count();
    if n == 0 || n > MAX_JPD_VARS {
        return Err(Error::TooLarge {
            what: "clique tree vertices",
            got: n,
            limit: MAX_JPD_VARS,
        });
    }
    if cliques.is_empty() {
        return Err(Error::WrongStructure {
            reason: "clique tree construction needs at least one clique".into(),
        });
    }

    // Each clique's variables must be in range and pairwise adjacent.
    let members: Vec<BTreeSet<usize>> = cliques
        .iter()
        .map(|c| c.variables().iter().copied().collect())
        .collect();
    for (k, vars) in members.iter().enumerate() {
        for &v in vars {
            if v >= n {
                return Err(Error::UnknownVariable {
                    variable: v,
                    count: n,
                });
            }
        }
        for &u in vars {
            for &v in vars {
                if u < v && !graph.adjacent(u, v) {
                    return Err(Error::WrongStructure {
                        reason: format!("clique {k} contains non-adjacent vertices {u} and {v}"),
                    });
                }
            }
        }
    }

    // Coverage: every vertex and edge of the graph lies in some clique.
    for v in 0..n {
        if !members.iter().any(|m| m.contains(&v)) {
            return Err(Error::WrongStructure {
                reason: format!("vertex {v} is not covered by any clique"),
            });
        }
    }
    for &(i, j) in graph.edges() {
        if !members.iter().any(|m| m.contains(&i) && m.contains(&j)) {
            return Err(Error::WrongStructure {
                reason: format!("edge ({i}, {j}) is not covered by any clique"),
            });
        }
    }

    // Pairwise intersections of size at most 1; remember shared vertices.
    let mut shared = BTreeMap::new();
    for p in 0..cliques.len() {
        for q in p + 1..cliques.len() {
            let inter: Vec<usize> = members[p].intersection(&members[q]).copied().collect();
            if inter.len() > 1 {
                return Err(Error::WrongStructure {
                    reason: format!(
                        "cliques {p} and {q} share {} vertices; separators must be single vertices",
                        inter.len()
                    ),
                });
            }
            if let Some(&v) = inter.first() {
                shared.insert((p, q), v);
            }
        }
    }

    // BFS spanning forest of the shared-vertex clique graph.
    let mut forest: Vec<(usize, usize, usize)> = Vec::new(); // (p, q, separator)
    let mut component = vec![usize::MAX; cliques.len()];
    for root in 0..cliques.len() {
        if component[root] != usize::MAX {
            continue;
        }
        component[root] = root;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(p) = queue.pop_front() {
            for (q, comp) in component.iter_mut().enumerate() {
                let key = (p.min(q), p.max(q));
                if q != p && *comp == usize::MAX && shared.contains_key(&key) {
                    *comp = root;
                    forest.push((key.0, key.1, shared[&key]));
                    queue.push_back(q);
                }
            }
        }
    }

    // Running intersection: any two cliques sharing a vertex must be
    // connected in the forest by a path of cliques all containing it.
    for (&(p, q), &v) in &shared {
        if component[p] != component[q] {
            return Err(Error::WrongStructure {
                reason: format!(
                    "running intersection fails: cliques {p} and {q} share vertex {v} but sit \
                     in different components of the clique tree"
                ),
            });
        }
        // Path check via BFS restricted to cliques containing v.
        let mut seen = vec![false; cliques.len()];
        seen[p] = true;
        let mut queue = std::collections::VecDeque::from([p]);
        let mut reached = p == q;
        while let Some(x) = queue.pop_front() {
            if x == q {
                reached = true;
                break;
            }
            for &(a, b, _) in &forest {
                let y = if a == x {
                    b
                } else if b == x {
                    a
                } else {
                    continue;
                };
                if !seen[y] && members[y].contains(&v) {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        if !reached {
            return Err(Error::WrongStructure {
                reason: format!(
                    "running intersection fails: the clique-tree path between cliques {p} and \
                     {q} leaves vertex {v}"
                ),
            });
        }
    }

    // Shared-vertex marginal consistency across all cliques containing it.
    for v in 0..n {
        let mut reference: Option<(usize, f64)> = None;
        for (k, clique) in cliques.iter().enumerate() {
            if !members[k].contains(&v) {
                continue;
            }
            let p1 = clique.single_marginal(v)?[1];
            match reference {
                None => reference = Some((k, p1)),
                Some((_, r)) => {
                    let difference = (r - p1).abs();
                    if difference > CONSISTENCY_TOL {
                        return Err(Error::InconsistentMarginals {
                            variable: v,
                            left: r,
                            right: p1,
                            difference,
                            tolerance: CONSISTENCY_TOL,
                        });
                    }
                }
            }
        }
    }

    // Separator marginals, taken from the lower-indexed clique of each
    // forest edge (deterministic; consistency was just validated).
    let separator_marginals: Vec<(usize, [f64; 2])> = forest
        .iter()
        .map(|&(p, _, v)| Ok((v, cliques[p].single_marginal(v)?)))
        .collect::<Result<_>>()?;

    let mut table = vec![0.0; 1 << n];
    'cells: for (idx, cell) in table.iter_mut().enumerate() {
        let outcome = |v: usize| (idx >> v) & 1;
        let mut value = 1.0;
        for clique in cliques {
            let mut sub = 0usize;
            for (bit, &v) in clique.variables().iter().enumerate() {
                sub |= outcome(v) << bit;
            }
            value *= clique.prob(sub);
        }
        for &(v, marginal) in &separator_marginals {
            let pv = marginal[outcome(v)];
            if pv <= ZERO_TOL {
                *cell = 0.0;
                continue 'cells;
            }
            value /= pv;
        }
        *cell = value;
    }
    JointDistribution::new((0..n).collect(), table)
}

/// Draw a uniformly distributed (Dirichlet with unit weights) random joint
/// distribution over the given variables.
pub fn random_jpd<R: Rng + ?Sized>(variables: &[usize], rng: &mut R) -> Result<JointDistribution> {
    let k = variables.len();
    if k == 0 || k > MAX_JPD_VARS {
        return Err(Error::TooLarge {
            what: "joint distribution variables",
            got: k,
            limit: MAX_JPD_VARS,
        });
    }
    // Exponential(1) draws normalized to the simplex.
    let mut table: Vec<f64> = (0..1usize << k)
        .map(|_| -(1.0 - rng.random::<f64>()).ln())
        .collect();
    let total: f64 = table.iter().sum();
    for cell in &mut table {
        *cell /= total;
    }
    JointDistribution::new(variables.to_vec(), table)
}
