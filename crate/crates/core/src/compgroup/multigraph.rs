use std::collections::VecDeque;
use std::fmt;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::graph::{EdgeSet, VertexKind, VertexSet};

/// Vertex names used on the dual graph of the quotient and its blow-up.
/// Sides are `1` (sources) and `2` (targets).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Node {
    /// Class of `j = 1728`.
    J(u8),
    /// Class of `j = 0`.
    G(u8),
    /// `j_{side,k}`, numbered from 1.
    Generic(u8, usize),
    /// Exceptional vertex on the length-2 edge.
    Chain2,
    /// Exceptional vertices on the length-3 edge, `1` next to the source.
    Chain3(u8),
    /// Any other inserted vertex.
    Exceptional(usize),
    /// Unlabelled vertex.
    Plain(usize),
}

impl Node {
    pub fn side(&self) -> Option<u8> {
        match *self {
            Node::J(s) | Node::G(s) | Node::Generic(s, _) => Some(s),
            _ => None,
        }
    }

    pub fn is_exceptional(&self) -> bool {
        matches!(self, Node::Chain2 | Node::Chain3(_) | Node::Exceptional(_))
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::J(s) => write!(f, "J{s}"),
            Node::G(s) => write!(f, "G{s}"),
            Node::Generic(s, k) => write!(f, "j{s},{k}"),
            Node::Chain2 => write!(f, "𝒥"),
            Node::Chain3(i) => write!(f, "𝒥{i}"),
            Node::Exceptional(i) => write!(f, "x{i}"),
            Node::Plain(i) => write!(f, "v{i}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GraphEdge {
    pub a: usize,
    pub b: usize,
    pub length: usize,
}

/// Undirected multigraph with edge lengths.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiGraph {
    pub nodes: Vec<Node>,
    /// Vertex classes of the supersingular graph behind each node.
    pub members: Vec<Vec<usize>>,
    pub edges: Vec<GraphEdge>,
}

impl MultiGraph {
    pub fn new(n: usize) -> Self {
        MultiGraph { nodes: (0..n).map(Node::Plain).collect(), members: vec![Vec::new(); n], edges: Vec::new() }
    }

    pub fn add_edge(&mut self, a: usize, b: usize, length: usize) {
        self.edges.push(GraphEdge { a, b, length });
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn position(&self, node: &Node) -> Option<usize> {
        self.nodes.iter().position(|x| x == node)
    }

    /// `N(a, b)`: edges between `a` and `b`, a loop counted once.
    pub fn n_between(&self, a: usize, b: usize) -> usize {
        self.edges.iter().filter(|e| (e.a == a && e.b == b) || (e.a == b && e.b == a)).count()
    }

    /// `N(a)`: edges at `a`, a loop counted twice.
    pub fn degree(&self, a: usize) -> usize {
        self.edges.iter().map(|e| (e.a == a) as usize + (e.b == a) as usize).sum()
    }

    /// Symmetric edge-count matrix, loops ignored.
    pub fn adjacency(&self) -> Vec<Vec<i64>> {
        let n = self.node_count();
        let mut m = vec![vec![0i64; n]; n];
        for e in &self.edges {
            if e.a != e.b {
                m[e.a][e.b] += 1;
                m[e.b][e.a] += 1;
            }
        }
        m
    }

    /// `L = D - A` with every edge counted once, loops ignored.
    pub fn laplacian(&self) -> Vec<Vec<i64>> {
        let mut m = self.adjacency();
        for i in 0..m.len() {
            let d: i64 = m[i].iter().sum();
            for x in m[i].iter_mut() {
                *x = -*x;
            }
            m[i][i] = d;
        }
        m
    }

    pub fn is_connected(&self) -> bool {
        let n = self.node_count();
        if n == 0 {
            return true;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(a) = queue.pop_front() {
            for b in 0..n {
                if adj[a][b] > 0 && !seen[b] {
                    seen[b] = true;
                    queue.push_back(b);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn all_unit_length(&self) -> bool {
        self.edges.iter().all(|e| e.length == 1)
    }

    /// Graphviz rendering; lengths above 1 become edge labels.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for (i, node) in self.nodes.iter().enumerate() {
            let shape = if node.is_exceptional() { "box" } else { "circle" };
            let _ = writeln!(out, "  n{i} [label=\"{node}\", shape={shape}];");
        }
        for e in &self.edges {
            if e.length > 1 {
                let _ = writeln!(out, "  n{} -- n{} [label=\"{}\"];", e.a, e.b, e.length);
            } else {
                let _ = writeln!(out, "  n{} -- n{};", e.a, e.b);
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Identifies nodes along `vperm` orbits and edges along `eperm` orbits.
///
/// Each orbit keeps the node, members and length of its least element.
/// `eperm` must map an edge `a - b` to an edge `vperm(a) - vperm(b)`.
pub fn quotient(g: &MultiGraph, vperm: &[usize], eperm: &[usize]) -> MultiGraph {
    let vorbit = orbit_reps(vperm);
    let mut reps: Vec<usize> = vorbit.clone();
    reps.sort_unstable();
    reps.dedup();
    let new_index = |v: usize| reps.binary_search(&vorbit[v]).expect("orbit representative");
    let mut out = MultiGraph {
        nodes: reps.iter().map(|&r| g.nodes[r].clone()).collect(),
        members: reps
            .iter()
            .map(|&r| {
                let mut m: Vec<usize> =
                    (0..g.node_count()).filter(|&v| vorbit[v] == r).flat_map(|v| g.members[v].clone()).collect();
                m.sort_unstable();
                m.dedup();
                m
            })
            .collect(),
        edges: Vec::new(),
    };
    let eorbit = orbit_reps(eperm);
    for (e, edge) in g.edges.iter().enumerate() {
        if eorbit[e] == e {
            out.add_edge(new_index(edge.a), new_index(edge.b), edge.length);
        }
    }
    out
}

fn orbit_reps(perm: &[usize]) -> Vec<usize> {
    (0..perm.len())
        .map(|i| {
            let mut best = i;
            let mut j = perm[i];
            while j != i {
                best = best.min(j);
                j = perm[j];
            }
            best
        })
        .collect()
}

/// The bipartite dual graph: vertex `k` appears as node `k` (sources) and
/// `n + k` (targets); every edge goes from its source to its target.
pub fn dual_graph(vs: &VertexSet, es: &EdgeSet) -> MultiGraph {
    let n = vs.len();
    let mut g = MultiGraph::new(2 * n);
    for k in 0..2 * n {
        g.members[k] = vec![k % n];
    }
    for e in es.edges() {
        g.add_edge(e.source, n + e.target, e.length);
    }
    g
}

/// Dual graph of the special fibre of the quotient by `w_q`, with its
/// vertices named `J_i`, `G_i` and `j_{i,k}` and the sources listed first.
pub fn quotient_by_wq(vs: &VertexSet, es: &EdgeSet) -> MultiGraph {
    let n = vs.len();
    let g = dual_graph(vs, es);
    let vperm: Vec<usize> = (0..2 * n).map(|v| (v / n) * n + vs.wq()[v % n]).collect();
    let mut out = quotient(&g, &vperm, es.wq());
    let mut counters = [0usize; 2];
    for i in 0..out.node_count() {
        let side = if i < out.node_count() / 2 { 1u8 } else { 2u8 };
        let k = out.members[i][0];
        out.nodes[i] = match vs.kind(k) {
            VertexKind::J1728 => Node::J(side),
            VertexKind::J0 => Node::G(side),
            VertexKind::Generic => {
                counters[side as usize - 1] += 1;
                Node::Generic(side, counters[side as usize - 1])
            }
        };
    }
    out
}

/// Replaces every edge of length `l > 1` by a chain of `l` unit edges.
///
/// The first length-2 chain gets `Chain2` and the first length-3 chain gets
/// `Chain3(1)`, `Chain3(2)` from its first end; other inserted vertices are
/// numbered `Exceptional(i)`.
pub fn blow_up(g: &MultiGraph) -> MultiGraph {
    let mut out = MultiGraph { nodes: g.nodes.clone(), members: g.members.clone(), edges: Vec::new() };
    let mut named2 = false;
    let mut named3 = false;
    let mut extra = 0;
    for e in &g.edges {
        if e.length <= 1 {
            out.add_edge(e.a, e.b, 1);
            continue;
        }
        let names: Vec<Node> = match e.length {
            2 if !named2 => {
                named2 = true;
                vec![Node::Chain2]
            }
            3 if !named3 => {
                named3 = true;
                vec![Node::Chain3(1), Node::Chain3(2)]
            }
            l => (0..l - 1)
                .map(|_| {
                    extra += 1;
                    Node::Exceptional(extra)
                })
                .collect(),
        };
        let mut prev = e.a;
        for name in names {
            out.nodes.push(name);
            out.members.push(Vec::new());
            let cur = out.node_count() - 1;
            out.add_edge(prev, cur, 1);
            prev = cur;
        }
        out.add_edge(prev, e.b, 1);
    }
    out
}
