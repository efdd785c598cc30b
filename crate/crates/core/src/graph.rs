//! Labeled multigraphs with loops and parallel edges.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::Limits;

/// Opaque vertex or edge identifier, ordered lexicographically.
pub type Id = Arc<str>;

/// Unordered endpoint pair, stored with `u <= w`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Endpoints {
    pub u: Id,
    pub w: Id,
}

impl Endpoints {
    fn new(a: Id, b: Id) -> Self {
        if a <= b {
            Endpoints { u: a, w: b }
        } else {
            Endpoints { u: b, w: a }
        }
    }

    pub fn is_loop(&self) -> bool {
        self.u == self.w
    }

    pub fn contains(&self, v: &str) -> bool {
        &*self.u == v || &*self.w == v
    }

    /// The endpoint opposite to `v`.
    pub fn other(&self, v: &str) -> &Id {
        if &*self.u == v {
            &self.w
        } else {
            &self.u
        }
    }
}

/// Immutable labeled multigraph on a nonempty vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multigraph {
    vertices: BTreeSet<Id>,
    edges: BTreeMap<Id, Endpoints>,
}

impl Multigraph {
    pub fn new<V, E, S>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator<Item = S>,
        E: IntoIterator<Item = (S, S, S)>,
        S: AsRef<str>,
    {
        let mut vs = BTreeSet::new();
        for v in vertices {
            let v: Id = Arc::from(v.as_ref());
            if !vs.insert(v.clone()) {
                return Err(Error::DuplicateVertex(v.to_string()));
            }
        }
        if vs.is_empty() {
            return Err(Error::NoVertices);
        }
        let mut es = BTreeMap::new();
        for (id, a, b) in edges {
            let lookup = |x: &str| vs.get(x).cloned().ok_or_else(|| Error::UnknownVertex(x.to_string()));
            let ends = Endpoints::new(lookup(a.as_ref())?, lookup(b.as_ref())?);
            let id: Id = Arc::from(id.as_ref());
            if es.insert(id.clone(), ends).is_some() {
                return Err(Error::DuplicateEdge(id.to_string()));
            }
        }
        Ok(Multigraph { vertices: vs, edges: es })
    }

    /// Parses the line-oriented graph format: `v <id>`, `e <id> <u> <w>`,
    /// with `#` starting a comment. Vertices must be declared before use.
    pub fn parse(text: &str) -> Result<Self> {
        let mut vertices: Vec<String> = Vec::new();
        let mut declared = BTreeSet::new();
        let mut edges = Vec::new();
        let mut edge_ids = BTreeSet::new();
        for (n, raw) in text.lines().enumerate() {
            let line_no = Some(n + 1);
            let content = raw.split('#').next().unwrap_or("");
            let toks: Vec<&str> = content.split_whitespace().collect();
            match toks.as_slice() {
                [] => {}
                ["v", id] => {
                    if !declared.insert(id.to_string()) {
                        return Err(Error::parse(line_no, format!("vertex `{id}` declared twice")));
                    }
                    vertices.push(id.to_string());
                }
                ["e", id, u, w] => {
                    for x in [u, w] {
                        if !declared.contains(*x) {
                            return Err(Error::parse(line_no, format!("edge `{id}` uses undeclared vertex `{x}`")));
                        }
                    }
                    if !edge_ids.insert(id.to_string()) {
                        return Err(Error::parse(line_no, format!("edge `{id}` declared twice")));
                    }
                    edges.push((id.to_string(), u.to_string(), w.to_string()));
                }
                ["v", ..] => return Err(Error::parse(line_no, "expected `v <id>`")),
                ["e", ..] => return Err(Error::parse(line_no, "expected `e <id> <u> <w>`")),
                [other, ..] => return Err(Error::parse(line_no, format!("unknown record type `{other}`"))),
            }
        }
        if vertices.is_empty() {
            return Err(Error::parse(None, "graph declares no vertices"));
        }
        Multigraph::new(vertices, edges)
    }

    /// Renders in the format accepted by [`Multigraph::parse`].
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for v in &self.vertices {
            s.push_str(&format!("v {v}\n"));
        }
        for (id, e) in &self.edges {
            s.push_str(&format!("e {id} {} {}\n", e.u, e.w));
        }
        s
    }

    pub fn vertices(&self) -> impl Iterator<Item = &Id> {
        self.vertices.iter()
    }

    pub fn edges(&self) -> impl Iterator<Item = (&Id, &Endpoints)> {
        self.edges.iter()
    }

    pub fn edge(&self, id: &str) -> Result<&Endpoints> {
        self.edges.get(id).ok_or_else(|| Error::UnknownEdge(id.to_string()))
    }

    pub fn has_vertex(&self, v: &str) -> bool {
        self.vertices.contains(v)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Edges incident to `v`, loops included.
    pub fn incident_edges<'a>(&'a self, v: &'a str) -> impl Iterator<Item = (&'a Id, &'a Endpoints)> + 'a {
        self.edges.iter().filter(move |(_, e)| e.contains(v))
    }

    pub fn delete(&self, e: &str) -> Result<Multigraph> {
        self.edge(e)?;
        let mut g = self.clone();
        g.edges.remove(e);
        Ok(g)
    }

    /// Identifies the endpoints of `e`; the merged vertex keeps the smaller id.
    pub fn contract(&self, e: &str) -> Result<Multigraph> {
        let ends = self.edge(e)?.clone();
        if ends.is_loop() {
            return Err(Error::LoopContraction(e.to_string()));
        }
        let (keep, gone) = (ends.u, ends.w);
        let mut vertices = self.vertices.clone();
        vertices.remove(&gone);
        let edges = self
            .edges
            .iter()
            .filter(|(id, _)| &***id != e)
            .map(|(id, x)| {
                let remap = |v: &Id| if *v == gone { keep.clone() } else { v.clone() };
                (id.clone(), Endpoints::new(remap(&x.u), remap(&x.w)))
            })
            .collect();
        Ok(Multigraph { vertices, edges })
    }

    /// Component label for every vertex, labels `0..c` in order of first
    /// appearance, considering only edges accepted by `keep`.
    fn component_labels(&self, keep: impl Fn(&Id) -> bool) -> (BTreeMap<&Id, usize>, usize) {
        let mut adj: BTreeMap<&Id, Vec<&Id>> = self.vertices.iter().map(|v| (v, Vec::new())).collect();
        for (id, e) in &self.edges {
            if keep(id) && !e.is_loop() {
                adj.get_mut(&e.u).unwrap().push(&e.w);
                adj.get_mut(&e.w).unwrap().push(&e.u);
            }
        }
        let mut label = BTreeMap::new();
        let mut count = 0;
        for start in &self.vertices {
            if label.contains_key(start) {
                continue;
            }
            label.insert(start, count);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v] {
                    if !label.contains_key(w) {
                        label.insert(w, count);
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    pub fn num_components(&self) -> usize {
        self.component_labels(|_| true).1
    }

    /// Connected components as induced subgraphs, ordered by smallest vertex id.
    pub fn components(&self) -> Vec<Multigraph> {
        let (label, count) = self.component_labels(|_| true);
        let mut parts: Vec<Multigraph> =
            (0..count).map(|_| Multigraph { vertices: BTreeSet::new(), edges: BTreeMap::new() }).collect();
        for (v, &c) in &label {
            parts[c].vertices.insert((*v).clone());
        }
        for (id, e) in &self.edges {
            parts[label[&e.u]].edges.insert(id.clone(), e.clone());
        }
        parts
    }

    pub fn is_loop(&self, e: &str) -> Result<bool> {
        Ok(self.edge(e)?.is_loop())
    }

    /// `e` is an isthmus iff deleting it disconnects its endpoints.
    pub fn is_isthmus(&self, e: &str) -> Result<bool> {
        let ends = self.edge(e)?;
        if ends.is_loop() {
            return Ok(false);
        }
        let (label, _) = self.component_labels(|id| &**id != e);
        Ok(label[&ends.u] != label[&ends.w])
    }

    /// Rank of an edge subset in the cycle matroid: `v(G) - c(V, F)`, so that
    /// `rank(E) = v(G) - c(G)`.
    pub fn rank<'a, I>(&self, subset: I) -> Result<usize>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut chosen = BTreeSet::new();
        for e in subset {
            self.edge(e)?;
            chosen.insert(e);
        }
        let (_, c) = self.component_labels(|id| chosen.contains(&**id));
        Ok(self.vertices.len() - c)
    }

    pub fn is_orchard(&self) -> bool {
        self.edges.keys().all(|e| self.edges[e].is_loop() || self.is_isthmus(e).unwrap_or(false))
    }

    /// Deterministic byte encoding of the vertex ids and the sorted multiset of
    /// endpoint pairs. Edge names are not part of the key: graphs differing
    /// only in edge names have identical invariants.
    pub fn canonical_key(&self) -> Vec<u8> {
        let mut key = Vec::new();
        let push = |key: &mut Vec<u8>, s: &str| {
            key.extend_from_slice(&(s.len() as u32).to_le_bytes());
            key.extend_from_slice(s.as_bytes());
        };
        key.extend_from_slice(&(self.vertices.len() as u32).to_le_bytes());
        for v in &self.vertices {
            push(&mut key, v);
        }
        let mut pairs: Vec<&Endpoints> = self.edges.values().collect();
        pairs.sort();
        key.extend_from_slice(&(pairs.len() as u32).to_le_bytes());
        for p in pairs {
            push(&mut key, &p.u);
            push(&mut key, &p.w);
        }
        key
    }

    /// Disjoint union; vertex and edge ids must not collide.
    pub fn disjoint_union(&self, other: &Multigraph) -> Result<Multigraph> {
        let mut g = self.clone();
        for v in &other.vertices {
            if !g.vertices.insert(v.clone()) {
                return Err(Error::DuplicateVertex(v.to_string()));
            }
        }
        for (id, e) in &other.edges {
            if g.edges.insert(id.clone(), e.clone()).is_some() {
                return Err(Error::DuplicateEdge(id.to_string()));
            }
        }
        Ok(g)
    }

    /// Copy with every vertex and edge id prefixed by `prefix`.
    pub fn prefixed(&self, prefix: &str) -> Multigraph {
        let p = |s: &Id| -> Id { Arc::from(format!("{prefix}{s}")) };
        Multigraph {
            vertices: self.vertices.iter().map(p).collect(),
            edges: self.edges.iter().map(|(id, e)| (p(id), Endpoints::new(p(&e.u), p(&e.w)))).collect(),
        }
    }

    /// The same graph with `count` extra loops at `v`, named `l{v}_{k}`.
    pub fn with_loops(&self, v: &str, count: usize) -> Result<Multigraph> {
        let v = self.vertices.get(v).cloned().ok_or_else(|| Error::UnknownVertex(v.to_string()))?;
        let mut g = self.clone();
        let mut k = 0;
        for _ in 0..count {
            let id: Id = loop {
                let candidate: Id = Arc::from(format!("l{v}_{k}"));
                k += 1;
                if !g.edges.contains_key(&candidate) {
                    break candidate;
                }
            };
            g.edges.insert(id, Endpoints::new(v.clone(), v.clone()));
        }
        Ok(g)
    }
}

fn numbered(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

fn pair_name(i: usize, j: usize, n: usize) -> String {
    if n < 10 {
        format!("{i}{j}")
    } else {
        format!("{i}-{j}")
    }
}

/// Standard small graphs, on vertices `1..=n`.
impl Multigraph {
    /// `N_n`: `n` isolated vertices.
    pub fn edgeless(n: usize) -> Multigraph {
        Multigraph::new(numbered(n), Vec::<(String, String, String)>::new()).expect("n >= 1")
    }

    /// `K_n`, edges named `ij` for `i < j`.
    pub fn complete(n: usize) -> Multigraph {
        let mut edges = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                edges.push((pair_name(i, j, n), i.to_string(), j.to_string()));
            }
        }
        Multigraph::new(numbered(n), edges).expect("n >= 1")
    }

    /// Path `1 - 2 - ... - n`.
    pub fn path(n: usize) -> Multigraph {
        let edges = (1..n).map(|i| (pair_name(i, i + 1, n), i.to_string(), (i + 1).to_string()));
        Multigraph::new(numbered(n), edges).expect("n >= 1")
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Multigraph {
        let mut edges: Vec<_> = (1..n).map(|i| (pair_name(i, i + 1, n), i.to_string(), (i + 1).to_string())).collect();
        edges.push((pair_name(1, n, n), 1.to_string(), n.to_string()));
        Multigraph::new(numbered(n), edges).expect("n >= 1")
    }

    /// Star with centre `1` and leaves `2..=n`.
    pub fn star(n: usize) -> Multigraph {
        let edges = (2..=n).map(|j| (pair_name(1, j, n), "1".to_string(), j.to_string()));
        Multigraph::new(numbered(n), edges).expect("n >= 1")
    }

    /// Two vertices joined by `k` parallel edges `e1..ek` (`D_2` for `k = 2`,
    /// the acetylene graph for `k = 3`).
    pub fn banana(k: usize) -> Multigraph {
        let edges = (1..=k).map(|i| (format!("e{i}"), "1".to_string(), "2".to_string()));
        Multigraph::new(numbered(2), edges).expect("two vertices")
    }

    /// `L_k`: one vertex with `k` loops.
    pub fn bouquet(k: usize) -> Multigraph {
        let edges = (1..=k).map(|i| (format!("l{i}"), "1".to_string(), "1".to_string()));
        Multigraph::new(numbered(1), edges).expect("one vertex")
    }
}

impl fmt::Display for Multigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Set partition of a vertex set. Blocks are sorted internally and ordered by
/// their smallest element.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    blocks: Vec<Vec<Id>>,
}

impl Partition {
    pub fn new(blocks: Vec<Vec<Id>>) -> Result<Self> {
        let mut blocks: Vec<Vec<Id>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort();
                b
            })
            .collect();
        if blocks.iter().any(Vec::is_empty) {
            return Err(Error::InvalidPartition("empty block".into()));
        }
        let mut seen = BTreeSet::new();
        for v in blocks.iter().flatten() {
            if !seen.insert(v.clone()) {
                return Err(Error::InvalidPartition(format!("`{v}` lies in two blocks")));
            }
        }
        blocks.sort();
        Ok(Partition { blocks })
    }

    pub fn discrete(g: &Multigraph) -> Partition {
        Partition { blocks: g.vertices().map(|v| vec![v.clone()]).collect() }
    }

    pub fn indiscrete(g: &Multigraph) -> Partition {
        Partition { blocks: vec![g.vertices().cloned().collect()] }
    }

    pub fn blocks(&self) -> &[Vec<Id>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Checks that the blocks cover exactly the vertex set of `g`.
    pub fn check_covers(&self, g: &Multigraph) -> Result<()> {
        let covered: BTreeSet<&Id> = self.blocks.iter().flatten().collect();
        let all: BTreeSet<&Id> = g.vertices().collect();
        if covered != all {
            return Err(Error::InvalidPartition("blocks do not cover the vertex set".into()));
        }
        Ok(())
    }

    fn block_of(&self) -> BTreeMap<&Id, usize> {
        self.blocks.iter().enumerate().flat_map(|(i, b)| b.iter().map(move |v| (v, i))).collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks.iter().map(|b| b.join(",")).collect();
        write!(f, "{{{}}}", parts.join(" | "))
    }
}

/// Enumerates all set partitions of `vertices` in restricted-growth-string
/// order.
pub struct Partitions {
    items: Vec<Id>,
    rgs: Vec<usize>,
    maxes: Vec<usize>,
    done: bool,
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.done {
            return None;
        }
        let n = self.items.len();
        let nblocks = self.rgs.iter().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); nblocks];
        for (v, &b) in self.items.iter().zip(&self.rgs) {
            blocks[b].push(v.clone());
        }
        // advance: rgs[i] <= 1 + max(rgs[..i])
        self.done = true;
        for i in (1..n).rev() {
            if self.rgs[i] <= self.maxes[i - 1] {
                self.rgs[i] += 1;
                self.maxes[i] = self.maxes[i - 1].max(self.rgs[i]);
                for j in i + 1..n {
                    self.rgs[j] = 0;
                    self.maxes[j] = self.maxes[i];
                }
                self.done = false;
                break;
            }
        }
        Some(Partition { blocks })
    }
}

/// All set partitions of the vertex set of `g`. Refuses more than
/// `limits.max_partition_vertices` vertices.
pub fn partitions(g: &Multigraph, limits: &Limits) -> Result<Partitions> {
    limits.check_partition_vertices(g.num_vertices())?;
    let items: Vec<Id> = g.vertices().cloned().collect();
    let n = items.len();
    Ok(Partitions { rgs: vec![0; n], maxes: vec![0; n], items, done: false })
}

/// Number of edges (loops included) with both endpoints in a single block.
pub fn unconstrained_count(g: &Multigraph, a: &Partition) -> Result<usize> {
    a.check_covers(g)?;
    let block = a.block_of();
    Ok(g.edges().filter(|(_, e)| block[&e.u] == block[&e.w]).count())
}
