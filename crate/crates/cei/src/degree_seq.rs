//! Tree degree sequences: validation, majorization order, constructive
//! majorization chains, and exhaustive enumeration for a given n.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DegreeSeqError {
    #[error("BadSum: degrees sum to {sum}, a tree on {n} vertices needs {expected}")]
    BadSum { sum: usize, expected: usize, n: usize },
    #[error("NonPositive: degree {0} is not a positive integer")]
    NonPositive(isize),
    #[error("TooSmall: need at least 2 degrees, got {0}")]
    TooSmall(usize),
    #[error("RootNotSingleton: level 0 has {0} entries")]
    RootNotSingleton(usize),
    #[error("LevelCountMismatch: level {level} has {got} entries, expected {expected}")]
    LevelCountMismatch { level: usize, got: usize, expected: usize },
    #[error("BadUnion: {0}")]
    BadUnion(DegreeSeqErrorBox),
    #[error("LengthMismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("SumMismatch: {0} vs {1}")]
    SumMismatch(usize, usize),
    #[error("NotComparable: target does not majorize source")]
    NotComparable,
    #[error("bad degree sequence syntax: {0}")]
    Syntax(String),
}

/// Boxed cause for BadUnion; keeps the error enum non-recursive in size.
#[derive(Debug, PartialEq, Eq)]
pub struct DegreeSeqErrorBox(Box<DegreeSeqError>);

impl std::fmt::Display for DegreeSeqErrorBox {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// Validated non-increasing tree degree sequence: positive entries summing
/// to 2(n - 1).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DegreeSequence {
    degrees: Vec<usize>,
}

impl DegreeSequence {
    /// Sorts the input non-increasing and validates it.
    pub fn new(degrees: &[usize]) -> Result<DegreeSequence, DegreeSeqError> {
        let n = degrees.len();
        if n < 2 {
            return Err(DegreeSeqError::TooSmall(n));
        }
        if let Some(&d) = degrees.iter().find(|&&d| d == 0) {
            return Err(DegreeSeqError::NonPositive(d as isize));
        }
        let sum: usize = degrees.iter().sum();
        if sum != 2 * (n - 1) {
            return Err(DegreeSeqError::BadSum { sum, expected: 2 * (n - 1), n });
        }
        let mut degrees = degrees.to_vec();
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        Ok(DegreeSequence { degrees })
    }

    pub fn n(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// Count of entries greater than 1 (spine length of the caterpillar).
    pub fn internal_count(&self) -> usize {
        self.degrees.iter().filter(|&&d| d > 1).count()
    }

    /// The path sequence (2, ..., 2, 1, 1) on n vertices.
    pub fn path(n: usize) -> DegreeSequence {
        let mut d = vec![2; n];
        d[n - 2] = 1;
        d[n - 1] = 1;
        DegreeSequence::new(&d).unwrap()
    }

    /// The star sequence (n-1, 1, ..., 1).
    pub fn star(n: usize) -> DegreeSequence {
        let mut d = vec![1; n];
        d[0] = n - 1;
        DegreeSequence::new(&d).unwrap()
    }

    /// Parses the CLI syntax: "4,3,3,1,1,1,1" or run-length "3^2,2^1,1^4".
    pub fn parse(s: &str) -> Result<DegreeSequence, DegreeSeqError> {
        let mut degrees = Vec::new();
        for part in s.split(',') {
            let part = part.trim();
            let (value, count) = match part.split_once('^') {
                Some((v, c)) => {
                    let v: usize = v
                        .trim()
                        .parse()
                        .map_err(|_| DegreeSeqError::Syntax(format!("bad degree {v:?}")))?;
                    let c: usize = c
                        .trim()
                        .parse()
                        .map_err(|_| DegreeSeqError::Syntax(format!("bad repeat count {c:?}")))?;
                    (v, c)
                }
                None => {
                    let v: usize = part
                        .parse()
                        .map_err(|_| DegreeSeqError::Syntax(format!("bad degree {part:?}")))?;
                    (v, 1)
                }
            };
            degrees.extend(std::iter::repeat(value).take(count));
        }
        DegreeSequence::new(&degrees)
    }

    /// Comma-separated rendering, e.g. "3,3,2,1,1,1,1".
    pub fn to_plain_string(&self) -> String {
        self.degrees
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Level-degree sequence of a rooted tree: one degree multiset per height.
/// Each level is stored sorted non-increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelDegreeSequence {
    levels: Vec<Vec<usize>>,
}

impl LevelDegreeSequence {
    pub fn new(levels: &[Vec<usize>]) -> Result<LevelDegreeSequence, DegreeSeqError> {
        if levels.is_empty() || levels[0].len() != 1 {
            return Err(DegreeSeqError::RootNotSingleton(
                levels.first().map_or(0, |l| l.len()),
            ));
        }
        // |L1| = sum of L0; |L_{i+1}| = sum over L_i of (d - 1)
        let mut expected_next = levels[0][0];
        for i in 1..=levels.len() {
            let got = levels.get(i).map_or(0, |l| l.len());
            if got != expected_next {
                return Err(DegreeSeqError::LevelCountMismatch {
                    level: i,
                    got,
                    expected: expected_next,
                });
            }
            if i == levels.len() {
                break;
            }
            expected_next = levels[i].iter().map(|&d| d - 1).sum();
        }
        let union: Vec<usize> = levels.iter().flatten().copied().collect();
        DegreeSequence::new(&union)
            .map_err(|e| DegreeSeqError::BadUnion(DegreeSeqErrorBox(Box::new(e))))?;
        let mut levels: Vec<Vec<usize>> = levels.to_vec();
        for l in &mut levels {
            l.sort_unstable_by(|a, b| b.cmp(a));
        }
        Ok(LevelDegreeSequence { levels })
    }

    pub fn levels(&self) -> &[Vec<usize>] {
        &self.levels
    }

    pub fn union(&self) -> DegreeSequence {
        let union: Vec<usize> = self.levels.iter().flatten().copied().collect();
        DegreeSequence::new(&union).unwrap()
    }

    /// Parses the CLI syntax: levels separated by '/', degrees by ',',
    /// e.g. "3/3,2,2/2,1,1,1/1".
    pub fn parse(s: &str) -> Result<LevelDegreeSequence, DegreeSeqError> {
        let mut levels = Vec::new();
        for level in s.split('/') {
            let mut ds = Vec::new();
            for d in level.split(',') {
                let d: usize = d
                    .trim()
                    .parse()
                    .map_err(|_| DegreeSeqError::Syntax(format!("bad degree {d:?}")))?;
                if d == 0 {
                    return Err(DegreeSeqError::NonPositive(0));
                }
                ds.push(d);
            }
            levels.push(ds);
        }
        LevelDegreeSequence::new(&levels)
    }
}

/// True iff `b` majorizes `a`: equal length and sum, with every prefix sum
/// of `a` at most the corresponding prefix sum of `b`.
pub fn majorizes(b: &DegreeSequence, a: &DegreeSequence) -> Result<bool, DegreeSeqError> {
    if a.n() != b.n() {
        return Err(DegreeSeqError::LengthMismatch(b.n(), a.n()));
    }
    let (sa, sb): (usize, usize) = (a.degrees.iter().sum(), b.degrees.iter().sum());
    if sa != sb {
        return Err(DegreeSeqError::SumMismatch(sb, sa));
    }
    let mut pa = 0usize;
    let mut pb = 0usize;
    for (x, y) in a.degrees.iter().zip(&b.degrees) {
        pa += x;
        pb += y;
        if pa > pb {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A chain of tree degree sequences from a source to a target it is
/// majorized by, each consecutive pair differing at exactly two entries
/// by +1 and -1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MajorizationChain {
    steps: Vec<DegreeSequence>,
}

impl MajorizationChain {
    pub fn steps(&self) -> &[DegreeSequence] {
        &self.steps
    }
}

/// Builds the chain from `a` up to `b`. While a != b, the smallest index j
/// with a_j < b_j gains 1 and the largest index k with a_k > b_k loses 1;
/// this keeps every intermediate sequence a valid non-increasing tree
/// degree sequence.
pub fn majorization_chain(
    a: &DegreeSequence,
    b: &DegreeSequence,
) -> Result<MajorizationChain, DegreeSeqError> {
    if !majorizes(b, a)? {
        return Err(DegreeSeqError::NotComparable);
    }
    let mut steps = vec![a.clone()];
    let mut cur = a.degrees.clone();
    while &cur != &b.degrees {
        let j = cur
            .iter()
            .zip(&b.degrees)
            .position(|(c, t)| c < t)
            .expect("unequal sequences with equal sums differ both ways");
        let k = cur
            .iter()
            .zip(&b.degrees)
            .rposition(|(c, t)| c > t)
            .expect("unequal sequences with equal sums differ both ways");
        debug_assert!(j < k);
        cur[j] += 1;
        cur[k] -= 1;
        steps.push(DegreeSequence::new(&cur).expect("chain step stays a tree degree sequence"));
    }
    Ok(MajorizationChain { steps })
}

/// Every non-increasing positive sequence of length n summing to 2(n - 1),
/// each exactly once, in lexicographically decreasing order.
pub fn all_degree_sequences(n: usize) -> Result<Vec<DegreeSequence>, DegreeSeqError> {
    if n < 2 {
        return Err(DegreeSeqError::TooSmall(n));
    }
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(n);
    fill(&mut prefix, n, 2 * (n - 1), n - 1, &mut out);
    return Ok(out);

    fn fill(
        prefix: &mut Vec<usize>,
        n: usize,
        remaining: usize,
        max_part: usize,
        out: &mut Vec<DegreeSequence>,
    ) {
        let slots = n - prefix.len();
        if slots == 0 {
            if remaining == 0 {
                out.push(DegreeSequence { degrees: prefix.clone() });
            }
            return;
        }
        // each remaining slot takes at least 1, at most max_part
        let hi = max_part.min(remaining.saturating_sub(slots - 1));
        let lo = remaining.div_ceil(slots);
        let mut d = hi;
        while d >= lo && d >= 1 {
            prefix.push(d);
            fill(prefix, n, remaining - d, d, out);
            prefix.pop();
            if d == 1 {
                break;
            }
            d -= 1;
        }
    }
}
