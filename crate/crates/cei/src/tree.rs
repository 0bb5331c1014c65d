//! Tree representation, distances, eccentricities, exact CEI evaluation and
//! canonical isomorphism codes.
//!
//! Vertices are labeled 1..=n throughout. Trees are immutable once built.

use std::collections::VecDeque;

use num::Zero;
use thiserror::Error;

use crate::rational::{ratio, Cei};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TreeError {
    #[error("NotATree: {0}")]
    NotATree(String),
    #[error("BadLabel: vertex {0} out of range 1..={1}")]
    BadLabel(usize, usize),
    #[error("TooSmall: need at least 2 vertices, got {0}")]
    TooSmall(usize),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("{0}")]
    Tree(#[from] TreeError),
}

/// A labeled tree on vertices 1..=n, stored as sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tree {
    adj: Vec<Vec<usize>>,
}

impl Tree {
    /// Validates and builds a tree from an edge list with 1-based labels.
    pub fn build(n: usize, edges: &[(usize, usize)]) -> Result<Tree, TreeError> {
        if n < 2 {
            return Err(TreeError::TooSmall(n));
        }
        if edges.len() != n - 1 {
            return Err(TreeError::NotATree(format!(
                "expected {} edges, got {}",
                n - 1,
                edges.len()
            )));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w < 1 || w > n {
                    return Err(TreeError::BadLabel(w, n));
                }
            }
            if u == v {
                return Err(TreeError::NotATree(format!("self-loop at {u}")));
            }
            if adj[u - 1].contains(&v) {
                return Err(TreeError::NotATree(format!("duplicate edge {u} {v}")));
            }
            adj[u - 1].push(v);
            adj[v - 1].push(u);
        }
        let t = Tree { adj };
        // n-1 edges and connected together rule out cycles
        let dist = t.bfs(1);
        if dist.iter().any(|d| d.is_none()) {
            return Err(TreeError::NotATree("disconnected".to_string()));
        }
        let mut t = t;
        for list in &mut t.adj {
            list.sort_unstable();
        }
        Ok(t)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u - 1].len()
    }

    /// Sorted neighbor labels of `u`.
    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u - 1]
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> {
        1..=self.n()
    }

    /// Edges as (u, v) with u < v, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.n() - 1);
        for u in self.vertices() {
            for &v in self.neighbors(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn contains_vertex(&self, u: usize) -> bool {
        u >= 1 && u <= self.n()
    }

    /// Distances from `src` to every vertex; `None` marks unreachable (only
    /// possible during validation).
    fn bfs(&self, src: usize) -> Vec<Option<usize>> {
        let n = self.n();
        let mut dist = vec![None; n];
        dist[src - 1] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u - 1].unwrap();
            for &v in self.neighbors(u) {
                if dist[v - 1].is_none() {
                    dist[v - 1] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Per-vertex eccentricities via one BFS from every vertex.
    pub fn eccentricities(&self) -> EccentricityTable {
        let ecc = self
            .vertices()
            .map(|u| self.bfs(u).into_iter().map(|d| d.unwrap()).max().unwrap())
            .collect();
        EccentricityTable { ecc }
    }

    pub fn diameter(&self) -> usize {
        self.eccentricities().max()
    }

    /// Exact CEI as the vertex sum of degree(u) / ecc(u).
    pub fn cei(&self) -> Cei {
        let ecc = self.eccentricities();
        self.vertices()
            .map(|u| ratio(self.degree(u), ecc.get(u)))
            .fold(Cei::zero(), |acc, x| acc + x)
    }

    /// Exact CEI as the edge sum of 1/ecc(u) + 1/ecc(v); cross-check route.
    pub fn cei_edge_form(&self) -> Cei {
        let ecc = self.eccentricities();
        self.edges()
            .into_iter()
            .map(|(u, v)| ratio(1, ecc.get(u)) + ratio(1, ecc.get(v)))
            .fold(Cei::zero(), |acc, x| acc + x)
    }

    /// Number of branching vertices (degree >= 3).
    pub fn branching_count(&self) -> usize {
        self.vertices().filter(|&u| self.degree(u) >= 3).count()
    }

    /// Non-increasing degree multiset.
    pub fn degree_multiset(&self) -> Vec<usize> {
        let mut ds: Vec<usize> = self.vertices().map(|u| self.degree(u)).collect();
        ds.sort_unstable_by(|a, b| b.cmp(a));
        ds
    }

    /// The one or two centroids of the tree.
    pub fn centroids(&self) -> Vec<usize> {
        let n = self.n();
        // subtree sizes from root 1 in post-order
        let mut order = Vec::with_capacity(n);
        let mut parent = vec![0usize; n + 1];
        let mut stack = vec![1usize];
        let mut seen = vec![false; n + 1];
        seen[1] = true;
        while let Some(u) = stack.pop() {
            order.push(u);
            for &v in self.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    parent[v] = u;
                    stack.push(v);
                }
            }
        }
        let mut size = vec![1usize; n + 1];
        let mut max_comp = vec![0usize; n + 1];
        for &u in order.iter().rev() {
            for &v in self.neighbors(u) {
                if v != parent[u] {
                    size[u] += size[v];
                    max_comp[u] = max_comp[u].max(size[v]);
                }
            }
            max_comp[u] = max_comp[u].max(n - size[u]);
        }
        let best = (1..=n).map(|u| max_comp[u]).min().unwrap();
        (1..=n).filter(|&u| max_comp[u] == best).collect()
    }

    fn rooted_code(&self, root: usize) -> Vec<u8> {
        fn code_of(t: &Tree, v: usize, parent: usize) -> Vec<u8> {
            let mut child_codes: Vec<Vec<u8>> = t
                .neighbors(v)
                .iter()
                .filter(|&&w| w != parent)
                .map(|&w| code_of(t, w, v))
                .collect();
            child_codes.sort();
            let mut out = vec![b'('];
            for c in child_codes {
                out.extend(c);
            }
            out.push(b')');
            out
        }
        code_of(self, root, 0)
    }

    /// Isomorphism-invariant code: AHU encoding rooted at the centroid,
    /// taking the lexicographically smaller result when there are two.
    pub fn canonical_code(&self) -> Vec<u8> {
        self.centroids()
            .into_iter()
            .map(|c| self.rooted_code(c))
            .min()
            .unwrap()
    }

    /// Relabels vertex u as perm[u-1]; perm must be a permutation of 1..=n.
    pub fn relabel(&self, perm: &[usize]) -> Tree {
        let edges: Vec<(usize, usize)> = self
            .edges()
            .into_iter()
            .map(|(u, v)| (perm[u - 1], perm[v - 1]))
            .collect();
        Tree::build(self.n(), &edges).expect("relabeling preserves tree structure")
    }

    /// Edge-list text form: "n <count>" then one "u v" per line.
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("n {}\n", self.n());
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    /// Parses the edge-list text format. '#' begins a comment line.
    pub fn parse_edge_list(input: &str) -> Result<Tree, ParseError> {
        let mut n: Option<usize> = None;
        let mut edges = Vec::new();
        for (idx, raw) in input.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if n.is_none() {
                if fields.len() != 2 || fields[0] != "n" {
                    return Err(ParseError::Line {
                        line: lineno,
                        msg: format!("expected header \"n <count>\", got {line:?}"),
                    });
                }
                n = Some(fields[1].parse().map_err(|_| ParseError::Line {
                    line: lineno,
                    msg: format!("bad vertex count {:?}", fields[1]),
                })?);
                continue;
            }
            if fields.len() != 2 {
                return Err(ParseError::Line {
                    line: lineno,
                    msg: format!("expected \"u v\", got {line:?}"),
                });
            }
            let mut pair = [0usize; 2];
            for (slot, f) in pair.iter_mut().zip(&fields) {
                *slot = f.parse().map_err(|_| ParseError::Line {
                    line: lineno,
                    msg: format!("bad vertex label {f:?}"),
                })?;
            }
            edges.push((pair[0], pair[1]));
        }
        let n = n.ok_or(ParseError::Line {
            line: 0,
            msg: "missing \"n <count>\" header".to_string(),
        })?;
        Ok(Tree::build(n, &edges)?)
    }
}

/// Per-vertex eccentricities of a tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EccentricityTable {
    ecc: Vec<usize>,
}

impl EccentricityTable {
    pub fn get(&self, u: usize) -> usize {
        self.ecc[u - 1]
    }

    pub fn max(&self) -> usize {
        *self.ecc.iter().max().unwrap()
    }

    pub fn values(&self) -> &[usize] {
        &self.ecc
    }
}

/// The path on n vertices, labeled 1..n along the path.
pub fn path(n: usize) -> Tree {
    let edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
    Tree::build(n, &edges).unwrap()
}

/// The star on n vertices with center 1.
pub fn star(n: usize) -> Tree {
    let edges: Vec<_> = (2..=n).map(|i| (1, i)).collect();
    Tree::build(n, &edges).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_tree() {
        let t = Tree::build(2, &[(1, 2)]).unwrap();
        assert_eq!(t.n(), 2);
        assert_eq!(t.edges(), vec![(1, 2)]);
    }

    #[test]
    fn p4_builds() {
        let t = Tree::build(4, &[(1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(t.degree(2), 2);
        assert_eq!(t.degree(1), 1);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            Tree::build(4, &[(1, 2), (3, 4), (1, 2)]),
            Err(TreeError::NotATree(_))
        ));
        assert!(matches!(
            Tree::build(4, &[(1, 2), (2, 3)]),
            Err(TreeError::NotATree(_))
        ));
        assert!(matches!(
            Tree::build(3, &[(1, 2), (2, 4)]),
            Err(TreeError::BadLabel(4, 3))
        ));
        assert!(matches!(Tree::build(1, &[]), Err(TreeError::TooSmall(1))));
        assert!(matches!(
            Tree::build(3, &[(1, 1), (2, 3)]),
            Err(TreeError::NotATree(_))
        ));
        // 4 vertices, 3 edges, but contains a cycle -> disconnected
        assert!(matches!(
            Tree::build(4, &[(1, 2), (2, 3), (3, 1)]),
            Err(TreeError::NotATree(_))
        ));
    }

    #[test]
    fn eccentricities_of_path_and_star() {
        assert_eq!(path(4).eccentricities().values(), &[3, 2, 2, 3]);
        assert_eq!(star(5).eccentricities().values(), &[1, 2, 2, 2, 2]);
    }

    #[test]
    fn cei_small_cases() {
        assert_eq!(path(2).cei(), ratio(2, 1));
        assert_eq!(star(5).cei(), ratio(6, 1));
        assert_eq!(path(4).cei(), ratio(8, 3));
        assert_eq!(path(2).cei_edge_form(), ratio(2, 1));
        assert_eq!(star(5).cei_edge_form(), ratio(6, 1));
    }

    #[test]
    fn diameter_of_families() {
        assert_eq!(path(7).diameter(), 6);
        assert_eq!(star(6).diameter(), 2);
    }

    #[test]
    fn branching_counts() {
        assert_eq!(path(8).branching_count(), 0);
        assert_eq!(star(4).branching_count(), 1);
    }

    #[test]
    fn canonical_code_relabel_invariant() {
        let p = path(4);
        // same shape, scrambled labels: 3-1-4-2
        let q = Tree::build(4, &[(3, 1), (1, 4), (4, 2)]).unwrap();
        assert_eq!(p.canonical_code(), q.canonical_code());
        assert_ne!(p.canonical_code(), star(4).canonical_code());
    }

    #[test]
    fn edge_list_round_trip() {
        let t = star(5);
        let text = t.to_edge_list();
        assert_eq!(Tree::parse_edge_list(&text).unwrap(), t);
        let with_comment = format!("# a star\n{text}");
        assert_eq!(Tree::parse_edge_list(&with_comment).unwrap(), t);
    }

    #[test]
    fn parse_reports_offending_line() {
        let err = Tree::parse_edge_list("n 3\n1 2\n2 x\n").unwrap_err();
        assert_eq!(
            err,
            ParseError::Line { line: 3, msg: "bad vertex label \"x\"".to_string() }
        );
    }

    #[test]
    fn centroids_of_even_path() {
        assert_eq!(path(6).centroids(), vec![3, 4]);
        assert_eq!(path(5).centroids(), vec![3]);
        assert_eq!(star(7).centroids(), vec![1]);
    }
}
