//! Exhaustive generation of labeled trees via Prüfer sequences, with
//! isomorphism dedupe and deterministic parallel reductions.
//!
//! Because the CEI is isomorphism-invariant, enumerating only the canonical
//! label-to-degree assignment (vertex i gets the i-th largest degree) covers
//! every isomorphism class of every degree sequence; the multiset
//! permutations of the corresponding Prüfer multiset are exactly those
//! labeled trees.

use std::collections::BTreeMap;
use std::collections::BinaryHeap;

use num::bigint::BigUint;
use num::One;
use thiserror::Error;

use crate::degree_seq::{all_degree_sequences, DegreeSequence};
use crate::rational::Cei;
use crate::tree::{ParseError, Tree};

/// Hard cap on exhaustive enumeration, per the verification design.
pub const HARD_MAX_N: usize = 10;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EnumError {
    #[error("BadEntry: Prüfer entry {0} out of range 1..={1}")]
    BadEntry(usize, usize),
    #[error("BadEntry: Prüfer sequence has length {0}, expected {1}")]
    BadLength(usize, usize),
    #[error("TooLarge: n={0} exceeds the enumeration bound {1}")]
    TooLarge(usize, usize),
    #[error("TooSmall: n={0} is below 2")]
    TooSmall(usize),
    #[error("InvalidAssignment: {0}")]
    InvalidAssignment(String),
    #[error("BadR: r={r} out of range 1..={max} for n={n}")]
    BadR { n: usize, r: usize, max: usize },
}

/// Prüfer sequence: n-2 labels in 1..=n, in bijection with labeled trees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PruferSeq {
    entries: Vec<usize>,
}

impl PruferSeq {
    pub fn new(entries: Vec<usize>) -> PruferSeq {
        PruferSeq { entries }
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }
}

/// Decodes a Prüfer sequence by the standard smallest-leaf elimination
/// convention.
pub fn prufer_decode(n: usize, s: &PruferSeq) -> Result<Tree, EnumError> {
    if n < 2 {
        return Err(EnumError::TooSmall(n));
    }
    if s.entries.len() != n - 2 {
        return Err(EnumError::BadLength(s.entries.len(), n - 2));
    }
    for &e in &s.entries {
        if e < 1 || e > n {
            return Err(EnumError::BadEntry(e, n));
        }
    }
    let mut degree = vec![1usize; n + 1];
    for &e in &s.entries {
        degree[e] += 1;
    }
    // min-heap of current leaves
    let mut leaves: BinaryHeap<std::cmp::Reverse<usize>> = (1..=n)
        .filter(|&u| degree[u] == 1)
        .map(std::cmp::Reverse)
        .collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &e in &s.entries {
        let std::cmp::Reverse(leaf) = leaves.pop().expect("a tree code always has a leaf");
        edges.push((leaf, e));
        degree[e] -= 1;
        if degree[e] == 1 {
            leaves.push(std::cmp::Reverse(e));
        }
    }
    let std::cmp::Reverse(a) = leaves.pop().unwrap();
    let std::cmp::Reverse(b) = leaves.pop().unwrap();
    edges.push((a, b));
    Ok(Tree::build(n, &edges).expect("Prüfer decoding yields a tree"))
}

/// Encodes a tree by repeatedly removing its smallest leaf; inverse of
/// [`prufer_decode`].
pub fn prufer_encode(t: &Tree) -> PruferSeq {
    let n = t.n();
    let mut degree: Vec<usize> = std::iter::once(0)
        .chain(t.vertices().map(|u| t.degree(u)))
        .collect();
    let mut leaves: BinaryHeap<std::cmp::Reverse<usize>> = (1..=n)
        .filter(|&u| degree[u] == 1)
        .map(std::cmp::Reverse)
        .collect();
    let mut removed = vec![false; n + 1];
    let mut entries = Vec::with_capacity(n.saturating_sub(2));
    for _ in 0..n.saturating_sub(2) {
        let std::cmp::Reverse(leaf) = leaves.pop().unwrap();
        removed[leaf] = true;
        let &parent = t
            .neighbors(leaf)
            .iter()
            .find(|&&v| !removed[v])
            .expect("non-removed neighbor exists");
        entries.push(parent);
        degree[parent] -= 1;
        if degree[parent] == 1 {
            leaves.push(std::cmp::Reverse(parent));
        }
    }
    PruferSeq { entries }
}

/// Number of labeled trees realizing `d` with the fixed canonical
/// assignment: (n-2)! / prod (d_i - 1)!.
pub fn labeled_tree_count(d: &DegreeSequence) -> BigUint {
    let n = d.n();
    let mut num = BigUint::one();
    for i in 1..=n.saturating_sub(2) {
        num *= BigUint::from(i);
    }
    let mut den = BigUint::one();
    for &di in d.degrees() {
        for i in 1..di {
            den *= BigUint::from(i);
        }
    }
    num / den
}

/// The Prüfer multiset of the canonical assignment, sorted ascending:
/// label i appears d_i - 1 times.
pub fn canonical_prufer_multiset(d: &DegreeSequence) -> Vec<usize> {
    let mut ms = Vec::with_capacity(d.n().saturating_sub(2));
    for (i, &di) in d.degrees().iter().enumerate() {
        ms.extend(std::iter::repeat(i + 1).take(di - 1));
    }
    ms.sort_unstable();
    ms
}

/// Advances to the next lexicographic permutation; false at the last one.
fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// All distinct permutations of the given multiset, in lexicographic order.
pub fn multiset_permutations(multiset: &[usize]) -> Vec<Vec<usize>> {
    let mut cur = multiset.to_vec();
    cur.sort_unstable();
    let mut out = Vec::new();
    loop {
        out.push(cur.clone());
        if !next_permutation(&mut cur) {
            break;
        }
    }
    out
}

/// Streams every labeled tree in which vertex i has the given degree; the
/// map must be a tree degree sequence.
pub fn trees_with_assignment(
    degree_by_label: &[usize],
) -> Result<impl Iterator<Item = Tree> + '_, EnumError> {
    let n = degree_by_label.len();
    if n < 2 {
        return Err(EnumError::TooSmall(n));
    }
    if degree_by_label.iter().any(|&d| d == 0) {
        return Err(EnumError::InvalidAssignment("zero degree".to_string()));
    }
    let sum: usize = degree_by_label.iter().sum();
    if sum != 2 * (n - 1) {
        return Err(EnumError::InvalidAssignment(format!(
            "degrees sum to {sum}, expected {}",
            2 * (n - 1)
        )));
    }
    let mut ms = Vec::with_capacity(n - 2);
    for (i, &di) in degree_by_label.iter().enumerate() {
        ms.extend(std::iter::repeat(i + 1).take(di - 1));
    }
    ms.sort_unstable();
    let perms = multiset_permutations(&ms);
    Ok(perms
        .into_iter()
        .map(move |p| prufer_decode(n, &PruferSeq::new(p)).unwrap()))
}

/// Streams every labeled tree with degree sequence `d` under the canonical
/// assignment (vertex i gets the i-th largest degree).
pub fn trees_with_degree_sequence(
    d: &DegreeSequence,
) -> impl Iterator<Item = Tree> + '_ {
    trees_with_assignment(d.degrees()).expect("a validated sequence is a valid assignment")
}

/// Exhaustive min/max-CEI reduction over one degree sequence, with
/// isomorphism classes and deterministic witnesses.
#[derive(Debug, Clone)]
pub struct DegreeSweep {
    pub labeled_count: u64,
    /// canonical code -> first-encountered representative
    pub classes: BTreeMap<Vec<u8>, Tree>,
    pub min: CeiWitness,
    pub max: CeiWitness,
}

#[derive(Debug, Clone)]
pub struct CeiWitness {
    pub cei: Cei,
    pub code: Vec<u8>,
    pub tree: Tree,
}

impl CeiWitness {
    /// Ties on CEI break to the lexicographically smallest canonical code.
    fn better_min(&self, other: &CeiWitness) -> bool {
        self.cei < other.cei || (self.cei == other.cei && self.code < other.code)
    }

    fn better_max(&self, other: &CeiWitness) -> bool {
        self.cei > other.cei || (self.cei == other.cei && self.code < other.code)
    }
}

fn sweep_chunk(n: usize, chunk: &[Vec<usize>]) -> DegreeSweep {
    let mut classes: BTreeMap<Vec<u8>, Tree> = BTreeMap::new();
    let mut min: Option<CeiWitness> = None;
    let mut max: Option<CeiWitness> = None;
    for p in chunk {
        let t = prufer_decode(n, &PruferSeq::new(p.clone())).unwrap();
        let code = t.canonical_code();
        let w = CeiWitness { cei: t.cei(), code: code.clone(), tree: t.clone() };
        if min.as_ref().map_or(true, |m| w.better_min(m)) {
            min = Some(w.clone());
        }
        if max.as_ref().map_or(true, |m| w.better_max(m)) {
            max = Some(w);
        }
        classes.entry(code).or_insert(t);
    }
    DegreeSweep {
        labeled_count: chunk.len() as u64,
        classes,
        min: min.unwrap(),
        max: max.unwrap(),
    }
}

fn merge_sweeps(mut acc: DegreeSweep, next: DegreeSweep) -> DegreeSweep {
    acc.labeled_count += next.labeled_count;
    for (code, tree) in next.classes {
        acc.classes.entry(code).or_insert(tree);
    }
    if next.min.better_min(&acc.min) {
        acc.min = next.min;
    }
    if next.max.better_max(&acc.max) {
        acc.max = next.max;
    }
    acc
}

/// Exhausts all labeled trees of `d` (canonical assignment). The Prüfer
/// space is split into contiguous ranges across `jobs` workers; the merge
/// order and tie-breaks make the result independent of `jobs`.
pub fn sweep_degree_sequence(d: &DegreeSequence, jobs: usize) -> DegreeSweep {
    let n = d.n();
    let perms = multiset_permutations(&canonical_prufer_multiset(d));
    let jobs = jobs.max(1).min(perms.len());
    if jobs == 1 {
        return sweep_chunk(n, &perms);
    }
    let chunk_size = perms.len().div_ceil(jobs);
    let partials: Vec<DegreeSweep> = std::thread::scope(|scope| {
        let handles: Vec<_> = perms
            .chunks(chunk_size)
            .map(|chunk| scope.spawn(move || sweep_chunk(n, chunk)))
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut it = partials.into_iter();
    let first = it.next().unwrap();
    it.fold(first, merge_sweeps)
}

/// One representative tree per isomorphism class on n vertices, keyed and
/// ordered by canonical code.
pub fn all_trees(n: usize, jobs: usize) -> Result<BTreeMap<Vec<u8>, Tree>, EnumError> {
    if n < 2 {
        return Err(EnumError::TooSmall(n));
    }
    if n > HARD_MAX_N {
        return Err(EnumError::TooLarge(n, HARD_MAX_N));
    }
    let seqs = all_degree_sequences(n).unwrap();
    let jobs = jobs.max(1).min(seqs.len());
    let per_seq: Vec<BTreeMap<Vec<u8>, Tree>> = if jobs == 1 {
        seqs.iter().map(class_representatives).collect()
    } else {
        // one worker per contiguous run of degree sequences, merged in order
        let chunk_size = seqs.len().div_ceil(jobs);
        std::thread::scope(|scope| {
            let handles: Vec<_> = seqs
                .chunks(chunk_size)
                .map(|chunk| {
                    scope.spawn(move || {
                        chunk.iter().map(class_representatives).collect::<Vec<_>>()
                    })
                })
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().unwrap())
                .collect()
        })
    };
    let mut out = BTreeMap::new();
    for m in per_seq {
        for (code, tree) in m {
            out.entry(code).or_insert(tree);
        }
    }
    Ok(out)
}

fn class_representatives(d: &DegreeSequence) -> BTreeMap<Vec<u8>, Tree> {
    let mut out = BTreeMap::new();
    for t in trees_with_degree_sequence(d) {
        out.entry(t.canonical_code()).or_insert(t);
    }
    out
}

/// Isomorphism classes of n-vertex trees with exactly r branching vertices.
pub fn trees_with_branching(
    n: usize,
    r: usize,
    jobs: usize,
) -> Result<BTreeMap<Vec<u8>, Tree>, EnumError> {
    if r < 1 || 2 * r + 2 > n {
        let max = if n >= 4 { n / 2 - 1 } else { 0 };
        return Err(EnumError::BadR { n, r, max });
    }
    Ok(all_trees(n, jobs)?
        .into_iter()
        .filter(|(_, t)| t.branching_count() == r)
        .collect())
}

/// Prüfer text format: "n <count>" header, then the n-2 entries whitespace
/// separated on the following lines. '#' begins a comment line.
pub fn parse_prufer_file(input: &str) -> Result<Tree, ParseError> {
    let mut n: Option<usize> = None;
    let mut entries = Vec::new();
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
        for f in fields {
            entries.push(f.parse().map_err(|_| ParseError::Line {
                line: lineno,
                msg: format!("bad Prüfer entry {f:?}"),
            })?);
        }
    }
    let n = n.ok_or(ParseError::Line {
        line: 0,
        msg: "missing \"n <count>\" header".to_string(),
    })?;
    prufer_decode(n, &PruferSeq::new(entries)).map_err(|e| ParseError::Line {
        line: 0,
        msg: e.to_string(),
    })
}

pub fn to_prufer_file(t: &Tree) -> String {
    let s = prufer_encode(t);
    let entries: Vec<String> = s.entries().iter().map(|e| e.to_string()).collect();
    if entries.is_empty() {
        format!("n {}\n", t.n())
    } else {
        format!("n {}\n{}\n", t.n(), entries.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{path, star};

    #[test]
    fn decode_star_and_p2() {
        let t = prufer_decode(4, &PruferSeq::new(vec![1, 1])).unwrap();
        assert_eq!(t.canonical_code(), star(4).canonical_code());
        assert_eq!(t.degree(1), 3);

        let t = prufer_decode(2, &PruferSeq::new(vec![])).unwrap();
        assert_eq!(t, path(2));

        assert!(matches!(
            prufer_decode(4, &PruferSeq::new(vec![1, 5])),
            Err(EnumError::BadEntry(5, 4))
        ));
        assert!(matches!(
            prufer_decode(4, &PruferSeq::new(vec![1])),
            Err(EnumError::BadLength(1, 2))
        ));
    }

    #[test]
    fn encode_known_sequences() {
        assert_eq!(prufer_encode(&path(4)).entries(), &[2, 3]);
        assert_eq!(prufer_encode(&star(4)).entries(), &[1, 1]);
    }

    #[test]
    fn round_trip_exhaustive_small_n() {
        for n in 2..=6 {
            let total: usize = (n as u32).pow(n as u32 - 2) as usize;
            for idx in 0..total {
                let mut s = Vec::with_capacity(n - 2);
                let mut x = idx;
                for _ in 0..n - 2 {
                    s.push(x % n + 1);
                    x /= n;
                }
                let t = prufer_decode(n, &PruferSeq::new(s.clone())).unwrap();
                assert_eq!(prufer_encode(&t).entries(), &s[..]);
            }
        }
    }

    #[test]
    fn counts_match_formula() {
        let d = DegreeSequence::new(&[2, 2, 1, 1]).unwrap();
        assert_eq!(labeled_tree_count(&d), BigUint::from(2u32));
        assert_eq!(labeled_tree_count(&DegreeSequence::star(7)), BigUint::from(1u32));
        let d = DegreeSequence::new(&[3, 3, 2, 1, 1, 1, 1]).unwrap();
        assert_eq!(labeled_tree_count(&d), BigUint::from(30u32));
    }

    #[test]
    fn stream_lengths_match_counts() {
        for n in 2..=8 {
            for d in all_degree_sequences(n).unwrap() {
                let streamed = trees_with_degree_sequence(&d).count();
                assert_eq!(BigUint::from(streamed), labeled_tree_count(&d), "{d:?}");
            }
        }
    }

    #[test]
    fn degree_constrained_stream_examples() {
        let d = DegreeSequence::new(&[2, 2, 1, 1]).unwrap();
        assert_eq!(trees_with_degree_sequence(&d).count(), 2);
        assert_eq!(trees_with_degree_sequence(&DegreeSequence::star(6)).count(), 1);

        // two shapes: internal path degrees (3,2,3) and (3,3,2)
        let d = DegreeSequence::new(&[3, 3, 2, 1, 1, 1, 1]).unwrap();
        let codes: std::collections::BTreeSet<Vec<u8>> =
            trees_with_degree_sequence(&d).map(|t| t.canonical_code()).collect();
        assert_eq!(codes.len(), 2);
    }

    #[test]
    fn invalid_assignment_rejected() {
        assert!(trees_with_assignment(&[3, 1, 1]).is_err());
        assert!(trees_with_assignment(&[2, 0, 2, 2]).is_err());
    }

    #[test]
    fn class_counts_match_unlabeled_tree_numbers() {
        let expected = [1usize, 2, 3, 6, 11, 23, 47]; // n = 3..=9
        for (i, &want) in expected.iter().enumerate() {
            let n = i + 3;
            assert_eq!(all_trees(n, 1).unwrap().len(), want, "n={n}");
        }
        assert_eq!(all_trees(2, 1).unwrap().len(), 1);
        assert!(all_trees(11, 1).is_err());
    }

    #[test]
    fn all_trees_independent_of_worker_count() {
        for jobs in [1, 3, 8] {
            let m = all_trees(7, jobs).unwrap();
            assert_eq!(m.len(), 11);
            assert_eq!(m, all_trees(7, 1).unwrap());
        }
    }

    #[test]
    fn branching_filters() {
        // n=6, r=2: single class (two adjacent degree-3 vertices, 4 leaves)
        assert_eq!(trees_with_branching(6, 2, 1).unwrap().len(), 1);
        // n=5, r=1: the star and the chair (all 3 classes minus the path)
        assert_eq!(trees_with_branching(5, 1, 1).unwrap().len(), 2);
        assert!(matches!(trees_with_branching(6, 0, 1), Err(EnumError::BadR { .. })));
        // union over r plus the path covers everything
        for n in 5..=8 {
            let mut covered = 1; // the path, r = 0
            for r in 1..=(n / 2 - 1) {
                covered += trees_with_branching(n, r, 1).unwrap().len();
            }
            assert_eq!(covered, all_trees(n, 1).unwrap().len());
        }
    }

    #[test]
    fn sweep_is_deterministic_across_jobs() {
        let d = DegreeSequence::new(&[3, 3, 2, 2, 1, 1, 1, 1]).unwrap();
        let base = sweep_degree_sequence(&d, 1);
        for jobs in [2, 5, 8] {
            let s = sweep_degree_sequence(&d, jobs);
            assert_eq!(s.labeled_count, base.labeled_count);
            assert_eq!(s.classes, base.classes);
            assert_eq!(s.min.cei, base.min.cei);
            assert_eq!(s.min.code, base.min.code);
            assert_eq!(s.max.code, base.max.code);
        }
    }

    #[test]
    fn prufer_file_round_trip() {
        let t = path(5);
        let text = to_prufer_file(&t);
        assert_eq!(parse_prufer_file(&text).unwrap(), t);
        let t2 = parse_prufer_file("# comment\nn 4\n1 1\n").unwrap();
        assert_eq!(t2.canonical_code(), star(4).canonical_code());
        assert!(parse_prufer_file("n 4\n1 x\n").is_err());
    }
}
