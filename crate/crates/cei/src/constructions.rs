//! Named extremal tree constructions: greedy caterpillars, level-greedy and
//! greedy trees, the F(n,r)/B(n,r) families, and the two CEI-monotone
//! transformations.

use thiserror::Error;

use crate::degree_seq::{DegreeSeqError, DegreeSequence, LevelDegreeSequence};
use crate::tree::Tree;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstructError {
    #[error("InvalidSequence: {0}")]
    InvalidSequence(#[from] DegreeSeqError),
    #[error("BadR: r={r} out of range 1..={max} for n={n}")]
    BadR { n: usize, r: usize, max: usize },
    #[error("BadVertex: {0} not a vertex of the base tree")]
    BadVertex(usize),
    #[error("BadA: a={0} must be at least 1")]
    BadA(usize),
    #[error("BadPQ: need p >= q >= 1, got p={0}, q={1}")]
    BadPQ(usize, usize),
}

/// Caterpillar minimizing the CEI for its degree sequence: spine positions
/// with larger eccentricity in the spine path receive degrees at least as
/// large. Spine vertices are labeled 1..=k, pendants k+1..=n in spine order.
pub fn greedy_caterpillar(d: &DegreeSequence) -> Tree {
    let n = d.n();
    let k = d.internal_count();
    if k == 0 {
        // only d = (1,1)
        return crate::tree::path(2);
    }
    if k == 1 {
        return crate::tree::star(n);
    }
    // eccentricity of spine position i (0-based) within the bare path P_k
    let ecc = |i: usize| (i).max(k - 1 - i);
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&i, &j| ecc(j).cmp(&ecc(i)).then(i.cmp(&j)));
    let mut phi = vec![0usize; k];
    for (rank, &pos) in order.iter().enumerate() {
        phi[pos] = d.degrees()[rank];
    }
    let mut edges: Vec<(usize, usize)> = (1..k).map(|i| (i, i + 1)).collect();
    let mut next = k + 1;
    for (i, &deg) in phi.iter().enumerate() {
        let spine_degree = if i == 0 || i == k - 1 { 1 } else { 2 };
        for _ in 0..deg - spine_degree {
            edges.push((i + 1, next));
            next += 1;
        }
    }
    Tree::build(n, &edges).expect("greedy caterpillar realizes its sequence")
}

/// Rooted tree realizing a level-degree sequence, each level filled in
/// non-increasing degree order and joined left to right. Labels are assigned
/// in level order, root = 1. Returns the tree and the root label.
pub fn level_greedy_tree(l: &LevelDegreeSequence) -> (Tree, usize) {
    let levels = l.levels();
    let n: usize = levels.iter().map(|lv| lv.len()).sum();
    // first label of each level
    let mut level_start = Vec::with_capacity(levels.len());
    let mut next = 1usize;
    for lv in levels {
        level_start.push(next);
        next += lv.len();
    }
    let mut edges = Vec::with_capacity(n - 1);
    for (i, lv) in levels.iter().enumerate() {
        if i + 1 == levels.len() {
            break;
        }
        let mut child = level_start[i + 1];
        for (j, &deg) in lv.iter().enumerate() {
            let down = if i == 0 { deg } else { deg - 1 };
            let parent = level_start[i] + j;
            for _ in 0..down {
                edges.push((parent, child));
                child += 1;
            }
        }
    }
    let t = Tree::build(n, &edges).expect("level-greedy tree realizes its level sequence");
    (t, 1)
}

/// The level-degree sequence of the greedy tree: L0 holds the largest
/// degree, each next level takes the largest remaining degrees, with sizes
/// forced by the down-degrees of the previous level.
pub fn greedy_level_sequence(d: &DegreeSequence) -> LevelDegreeSequence {
    let degrees = d.degrees();
    let mut levels: Vec<Vec<usize>> = vec![vec![degrees[0]]];
    let mut consumed = 1usize;
    loop {
        let last = levels.last().unwrap();
        let depth = levels.len();
        let size: usize = if depth == 1 {
            last[0]
        } else {
            last.iter().map(|&x| x - 1).sum()
        };
        if size == 0 {
            break;
        }
        let next: Vec<usize> = degrees[consumed..consumed + size].to_vec();
        consumed += size;
        levels.push(next);
        if consumed == degrees.len() {
            break;
        }
    }
    LevelDegreeSequence::new(&levels).expect("greedy level split of a tree degree sequence")
}

/// Tree maximizing the CEI for its degree sequence.
pub fn greedy_tree(d: &DegreeSequence) -> Tree {
    level_greedy_tree(&greedy_level_sequence(d)).0
}

fn check_r(n: usize, r: usize) -> Result<(), ConstructError> {
    // r <= n/2 - 1, i.e. 2r + 2 <= n
    if r < 1 || 2 * r + 2 > n {
        let max = if n >= 4 { n / 2 - 1 } else { 0 };
        return Err(ConstructError::BadR { n, r, max });
    }
    Ok(())
}

/// F(n,r): the greedy caterpillar with r threes, n-2r-2 twos and r+2 ones;
/// CEI-minimal among n-vertex trees with r branching vertices.
pub fn f_tree(n: usize, r: usize) -> Result<Tree, ConstructError> {
    check_r(n, r)?;
    let mut degrees = vec![3; r];
    degrees.extend(vec![2; n - 2 * r - 2]);
    degrees.extend(vec![1; r + 2]);
    Ok(greedy_caterpillar(&DegreeSequence::new(&degrees)?))
}

/// B(n,r): the greedy tree with one degree n-2r+1, r-1 threes and n-r ones;
/// CEI-maximal among n-vertex trees with r branching vertices. B(n,1) = S_n.
pub fn b_tree(n: usize, r: usize) -> Result<Tree, ConstructError> {
    check_r(n, r)?;
    let mut degrees = vec![n - 2 * r + 1];
    degrees.extend(vec![3; r - 1]);
    degrees.extend(vec![1; n - r]);
    Ok(greedy_tree(&DegreeSequence::new(&degrees)?))
}

/// Transformation A: from a base tree and a vertex u, builds the pair
/// (g1, g2) where g1 hangs a star with a leaves off a new neighbor v of u
/// and g2 attaches a+1 pendants directly at u. CEI(g2) >= CEI(g1).
/// New vertices take fresh labels n+1, n+2, ... in construction order.
pub fn transform_a(base: &Tree, u: usize, a: usize) -> Result<(Tree, Tree), ConstructError> {
    if !base.contains_vertex(u) {
        return Err(ConstructError::BadVertex(u));
    }
    if a < 1 {
        return Err(ConstructError::BadA(a));
    }
    let n = base.n();
    let mut g1_edges = base.edges();
    let v = n + 1;
    g1_edges.push((u, v));
    for i in 0..a {
        g1_edges.push((v, n + 2 + i));
    }
    let g1 = Tree::build(n + a + 1, &g1_edges).expect("attachment keeps a tree");

    let mut g2_edges = base.edges();
    for i in 0..=a {
        g2_edges.push((u, n + 1 + i));
    }
    let g2 = Tree::build(n + a + 1, &g2_edges).expect("attachment keeps a tree");
    Ok((g1, g2))
}

/// Transformation B: attaches pendant paths of lengths p and q at w (gpq)
/// versus lengths p+1 and q-1 (gp1q1). CEI(gpq) >= CEI(gp1q1).
pub fn transform_b(
    base: &Tree,
    w: usize,
    p: usize,
    q: usize,
) -> Result<(Tree, Tree), ConstructError> {
    if !base.contains_vertex(w) {
        return Err(ConstructError::BadVertex(w));
    }
    if q < 1 || p < q {
        return Err(ConstructError::BadPQ(p, q));
    }
    let gpq = attach_two_paths(base, w, p, q);
    let gp1q1 = attach_two_paths(base, w, p + 1, q - 1);
    Ok((gpq, gp1q1))
}

fn attach_two_paths(base: &Tree, w: usize, p: usize, q: usize) -> Tree {
    let n = base.n();
    let mut edges = base.edges();
    let mut next = n + 1;
    for len in [p, q] {
        let mut prev = w;
        for _ in 0..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    Tree::build(n + p + q, &edges).expect("pendant paths keep a tree")
}
