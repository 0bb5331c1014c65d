//! Exhaustive theorem checks over small n, with machine-readable reports.
//!
//! Every comparison is an exact rational (in)equality. Reports carry
//! deterministic witnesses (ties break to the lexicographically smallest
//! canonical code), so their serialized form is byte-identical across runs
//! and worker counts; elapsed time is kept out of the serialized output.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::constructions::{
    b_tree, f_tree, greedy_caterpillar, greedy_tree, transform_a, transform_b, ConstructError,
};
use crate::degree_seq::{
    all_degree_sequences, majorization_chain, majorizes, DegreeSeqError, DegreeSequence,
};
use crate::enumeration::{
    labeled_tree_count, prufer_decode, sweep_degree_sequence, trees_with_branching, CeiWitness,
    EnumError, PruferSeq, HARD_MAX_N,
};
use crate::rational::{Cei, RationalRepr};
use crate::tree::{path, star, Tree};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("TooLarge: n={0} exceeds the enumeration bound {1}")]
    TooLarge(usize, usize),
    #[error("TooSmall: n={0}, this check requires n >= {1}")]
    TooSmall(usize, usize),
    #[error(transparent)]
    Enum(#[from] EnumError),
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error(transparent)]
    DegreeSeq(#[from] DegreeSeqError),
}

/// Worker count and enumeration bound for the exhaustive checks.
#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub jobs: usize,
    pub max_n: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { jobs: 1, max_n: 9 }
    }
}

impl VerifyOptions {
    fn check_n(&self, n: usize) -> Result<(), VerifyError> {
        let bound = self.max_n.min(HARD_MAX_N);
        if n > bound {
            return Err(VerifyError::TooLarge(n, bound));
        }
        Ok(())
    }
}

/// Witness as it appears in reports.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct WitnessRepr {
    pub cei: RationalRepr,
    pub canonical_code: String,
    pub edges: Vec<(usize, usize)>,
}

impl WitnessRepr {
    fn of(w: &CeiWitness) -> Self {
        WitnessRepr {
            cei: RationalRepr::of(&w.cei),
            canonical_code: String::from_utf8(w.code.clone()).expect("codes are ASCII"),
            edges: w.tree.edges(),
        }
    }

}

/// Verdict of one brute-force extremality check with witnesses.
#[derive(Debug, Clone, Serialize)]
pub struct ExtremalReport {
    pub subject: String,
    pub labeled_count: String,
    pub class_count: usize,
    pub min_cei: WitnessRepr,
    pub max_cei: WitnessRepr,
    pub construction_cei: BTreeMap<String, RationalRepr>,
    pub verdicts: BTreeMap<String, bool>,
    pub findings: Vec<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl ExtremalReport {
    pub fn all_true(&self) -> bool {
        self.verdicts.values().all(|&v| v)
    }
}

/// Brute-force min/max CEI over all trees with degree sequence `d`, checked
/// against the greedy caterpillar (minimum) and the greedy tree (maximum).
pub fn verify_degree_sequence_extremes(
    d: &DegreeSequence,
    opts: VerifyOptions,
) -> Result<ExtremalReport, VerifyError> {
    opts.check_n(d.n())?;
    let start = Instant::now();
    let sweep = sweep_degree_sequence(d, opts.jobs);
    let cat = greedy_caterpillar(d);
    let gre = greedy_tree(d);
    let cat_cei = cat.cei();
    let gre_cei = gre.cei();

    let mut construction_cei = BTreeMap::new();
    construction_cei.insert("greedy_caterpillar".to_string(), RationalRepr::of(&cat_cei));
    construction_cei.insert("greedy_tree".to_string(), RationalRepr::of(&gre_cei));

    let mut verdicts = BTreeMap::new();
    verdicts.insert("min_equals_greedy_caterpillar".to_string(), sweep.min.cei == cat_cei);
    verdicts.insert("max_equals_greedy_tree".to_string(), sweep.max.cei == gre_cei);
    verdicts.insert(
        "constructions_enumerated".to_string(),
        sweep.classes.contains_key(&cat.canonical_code())
            && sweep.classes.contains_key(&gre.canonical_code()),
    );

    Ok(ExtremalReport {
        subject: format!("degrees {}", d.to_plain_string()),
        labeled_count: labeled_tree_count(d).to_string(),
        class_count: sweep.classes.len(),
        min_cei: WitnessRepr::of(&sweep.min),
        max_cei: WitnessRepr::of(&sweep.max),
        construction_cei,
        verdicts,
        findings: Vec::new(),
        elapsed: start.elapsed(),
    })
}

/// Runs [`verify_degree_sequence_extremes`] over every tree degree sequence
/// of length n, in lexicographically decreasing sequence order.
pub fn verify_all_degree_sequences(
    n: usize,
    opts: VerifyOptions,
) -> Result<Vec<ExtremalReport>, VerifyError> {
    opts.check_n(n)?;
    all_degree_sequences(n)?
        .iter()
        .map(|d| verify_degree_sequence_extremes(d, opts))
        .collect()
}

/// One comparable pair in the majorization sweep.
#[derive(Debug, Clone, Serialize)]
pub struct MajorizationPair {
    pub source: String,
    pub target: String,
    pub source_cei: RationalRepr,
    pub target_cei: RationalRepr,
    pub chain_length: usize,
    pub verdict: bool,
}

/// Greedy-tree CEI monotonicity along the majorization order on all degree
/// sequences of length n, including every constructed chain step.
#[derive(Debug, Clone, Serialize)]
pub struct MajorizationReport {
    pub subject: String,
    pub sequence_count: usize,
    pub comparable_pairs: usize,
    pub pairs: Vec<MajorizationPair>,
    pub verdicts: BTreeMap<String, bool>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl MajorizationReport {
    pub fn all_true(&self) -> bool {
        self.verdicts.values().all(|&v| v)
    }
}

pub fn verify_majorization_monotonicity(
    n: usize,
    opts: VerifyOptions,
) -> Result<MajorizationReport, VerifyError> {
    opts.check_n(n)?;
    let start = Instant::now();
    let seqs = all_degree_sequences(n)?;
    let cei_of: Vec<Cei> = seqs.iter().map(|d| greedy_tree(d).cei()).collect();
    let mut pairs = Vec::new();
    let mut all_pairs_ok = true;
    let mut all_chains_ok = true;
    for (i, small) in seqs.iter().enumerate() {
        for (j, large) in seqs.iter().enumerate() {
            if !majorizes(large, small)? {
                continue;
            }
            let chain = majorization_chain(small, large)?;
            let mut chain_ok = true;
            let mut prev = greedy_tree(&chain.steps()[0]).cei();
            for step in &chain.steps()[1..] {
                let next = greedy_tree(step).cei();
                if next < prev {
                    chain_ok = false;
                }
                prev = next;
            }
            let verdict = cei_of[i] <= cei_of[j] && chain_ok;
            all_pairs_ok &= cei_of[i] <= cei_of[j];
            all_chains_ok &= chain_ok;
            pairs.push(MajorizationPair {
                source: small.to_plain_string(),
                target: large.to_plain_string(),
                source_cei: RationalRepr::of(&cei_of[i]),
                target_cei: RationalRepr::of(&cei_of[j]),
                chain_length: chain.steps().len(),
                verdict,
            });
        }
    }
    let mut verdicts = BTreeMap::new();
    verdicts.insert("greedy_cei_monotone_on_pairs".to_string(), all_pairs_ok);
    verdicts.insert("greedy_cei_monotone_on_chains".to_string(), all_chains_ok);
    Ok(MajorizationReport {
        subject: format!("majorization n={n}"),
        sequence_count: seqs.len(),
        comparable_pairs: pairs.len(),
        pairs,
        verdicts,
        elapsed: start.elapsed(),
    })
}

/// Brute-force min/max CEI over all isomorphism classes with exactly r
/// branching vertices, checked against F(n,r) and B(n,r).
pub fn verify_branching_bounds(
    n: usize,
    r: usize,
    opts: VerifyOptions,
) -> Result<ExtremalReport, VerifyError> {
    opts.check_n(n)?;
    let start = Instant::now();
    let classes = trees_with_branching(n, r, opts.jobs)?;
    let f = f_tree(n, r)?;
    let b = b_tree(n, r)?;
    let f_cei = f.cei();
    let b_cei = b.cei();

    let with_cei: Vec<(Vec<u8>, &Tree, Cei)> = classes
        .iter()
        .map(|(code, t)| (code.clone(), t, t.cei()))
        .collect();
    let min = with_cei
        .iter()
        .min_by(|a, b| a.2.cmp(&b.2).then(a.0.cmp(&b.0)))
        .expect("BT(n,r) is nonempty for valid (n,r)");
    let max = with_cei
        .iter()
        .max_by(|a, b| a.2.cmp(&b.2).then(b.0.cmp(&a.0)))
        .expect("BT(n,r) is nonempty for valid (n,r)");
    let minimizers = with_cei.iter().filter(|x| x.2 == min.2).count();
    let maximizers = with_cei.iter().filter(|x| x.2 == max.2).count();

    let labeled_count: num::BigUint = all_degree_sequences(n)?
        .iter()
        .filter(|d| d.degrees().iter().filter(|&&x| x >= 3).count() == r)
        .map(labeled_tree_count)
        .sum();

    let mut construction_cei = BTreeMap::new();
    construction_cei.insert("f_tree".to_string(), RationalRepr::of(&f_cei));
    construction_cei.insert("b_tree".to_string(), RationalRepr::of(&b_cei));

    let mut verdicts = BTreeMap::new();
    verdicts.insert("min_equals_f_tree".to_string(), min.2 == f_cei);
    verdicts.insert(
        "minimizer_unique_and_is_f_tree".to_string(),
        minimizers == 1 && min.0 == f.canonical_code(),
    );
    verdicts.insert("max_equals_b_tree".to_string(), max.2 == b_cei);
    verdicts.insert(
        "constructions_enumerated".to_string(),
        classes.contains_key(&f.canonical_code()) && classes.contains_key(&b.canonical_code()),
    );

    let mut findings = Vec::new();
    if maximizers > 1 {
        // the upper bound carries no uniqueness claim; recorded, not failed
        findings.push(format!("{maximizers} classes attain the maximum CEI"));
    }

    let to_witness = |x: &(Vec<u8>, &Tree, Cei)| {
        WitnessRepr::of(&CeiWitness { cei: x.2.clone(), code: x.0.clone(), tree: x.1.clone() })
    };
    Ok(ExtremalReport {
        subject: format!("branching n={n} r={r}"),
        labeled_count: labeled_count.to_string(),
        class_count: classes.len(),
        min_cei: to_witness(min),
        max_cei: to_witness(max),
        construction_cei,
        verdicts,
        findings,
        elapsed: start.elapsed(),
    })
}

/// Global CEI ordering over all isomorphism classes on n vertices: the star
/// is the strict unique maximum, the path the strict unique minimum, and the
/// empirical second extremes are strictly separated from the middle.
#[derive(Debug, Clone, Serialize)]
pub struct OrderingReport {
    pub subject: String,
    pub class_count: usize,
    pub max: WitnessRepr,
    pub min: WitnessRepr,
    pub second_max_candidates: Vec<WitnessRepr>,
    pub second_min_candidates: Vec<WitnessRepr>,
    pub verdicts: BTreeMap<String, bool>,
    pub findings: Vec<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl OrderingReport {
    pub fn all_true(&self) -> bool {
        self.verdicts.values().all(|&v| v)
    }
}

pub fn verify_global_ordering(
    n: usize,
    opts: VerifyOptions,
) -> Result<OrderingReport, VerifyError> {
    if n < 6 {
        return Err(VerifyError::TooSmall(n, 6));
    }
    opts.check_n(n)?;
    let start = Instant::now();
    let classes = crate::enumeration::all_trees(n, opts.jobs)?;
    let mut ranked: Vec<(Vec<u8>, Tree, Cei)> = classes
        .into_iter()
        .map(|(code, t)| {
            let c = t.cei();
            (code, t, c)
        })
        .collect();
    // descending CEI, code ascending within ties
    ranked.sort_by(|a, b| b.2.cmp(&a.2).then(a.0.cmp(&b.0)));

    let mut distinct: Vec<Cei> = Vec::new();
    for (_, _, c) in &ranked {
        if distinct.last() != Some(c) {
            distinct.push(c.clone());
        }
    }
    let at_value = |v: &Cei| -> Vec<&(Vec<u8>, Tree, Cei)> {
        ranked.iter().filter(|x| &x.2 == v).collect()
    };

    let star_code = star(n).canonical_code();
    let path_code = path(n).canonical_code();
    let top = at_value(&distinct[0]);
    let bottom = at_value(distinct.last().unwrap());

    let mut verdicts = BTreeMap::new();
    let mut findings = Vec::new();
    verdicts.insert(
        "star_unique_strict_max".to_string(),
        top.len() == 1 && top[0].0 == star_code,
    );
    verdicts.insert(
        "path_unique_strict_min".to_string(),
        bottom.len() == 1 && bottom[0].0 == path_code,
    );
    // strict gaps around the empirical second extremes
    let second_max = at_value(&distinct[1]);
    let second_min = at_value(&distinct[distinct.len() - 2]);
    verdicts.insert(
        "second_max_strictly_separated".to_string(),
        distinct.len() >= 3 && distinct[1] > distinct[2],
    );
    verdicts.insert(
        "second_min_strictly_separated".to_string(),
        distinct.len() >= 3 && distinct[distinct.len() - 2] < distinct[distinct.len() - 3],
    );
    if second_max.len() > 1 {
        findings.push(format!("second-maximum CEI attained by {} classes", second_max.len()));
    }
    if second_min.len() > 1 {
        findings.push(format!("second-minimum CEI attained by {} classes", second_min.len()));
    }

    let to_witness = |x: &(Vec<u8>, Tree, Cei)| {
        WitnessRepr::of(&CeiWitness { cei: x.2.clone(), code: x.0.clone(), tree: x.1.clone() })
    };
    Ok(OrderingReport {
        subject: format!("ordering n={n}"),
        class_count: ranked.len(),
        max: to_witness(&ranked[0]),
        min: to_witness(ranked.last().unwrap()),
        second_max_candidates: second_max.iter().map(|x| to_witness(x)).collect(),
        second_min_candidates: second_min.iter().map(|x| to_witness(x)).collect(),
        verdicts,
        findings,
        elapsed: start.elapsed(),
    })
}

/// Seeded random check of both CEI-monotone transformations.
#[derive(Debug, Clone, Serialize)]
pub struct TransformReport {
    pub subject: String,
    pub trials: usize,
    pub seed: u64,
    pub violations: Vec<String>,
    pub verdicts: BTreeMap<String, bool>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl TransformReport {
    pub fn all_true(&self) -> bool {
        self.verdicts.values().all(|&v| v)
    }
}

/// Runs `trials` random instances of each transformation on uniform random
/// Prüfer trees (sizes 2..=12), asserting the lemma inequalities exactly.
pub fn verify_transformations(trials: usize, seed: u64) -> TransformReport {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = Vec::new();
    let mut a_ok = true;
    let mut b_ok = true;
    for trial in 0..trials {
        let n = rng.gen_range(2..=12);
        let entries: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(1..=n)).collect();
        let base = prufer_decode(n, &PruferSeq::new(entries)).unwrap();

        let u = rng.gen_range(1..=n);
        let a = rng.gen_range(1..=4);
        let (g1, g2) = transform_a(&base, u, a).unwrap();
        if g2.cei() < g1.cei() {
            a_ok = false;
            violations.push(format!(
                "trial {trial}: transform A violated on base {:?} u={u} a={a}",
                base.edges()
            ));
        }

        let w = rng.gen_range(1..=n);
        let q = rng.gen_range(1..=4);
        let p = rng.gen_range(q..=4);
        let (gpq, gp1q1) = transform_b(&base, w, p, q).unwrap();
        if gpq.cei() < gp1q1.cei() {
            b_ok = false;
            violations.push(format!(
                "trial {trial}: transform B violated on base {:?} w={w} p={p} q={q}",
                base.edges()
            ));
        }
    }
    let mut verdicts = BTreeMap::new();
    verdicts.insert("transform_a_monotone".to_string(), a_ok);
    verdicts.insert("transform_b_monotone".to_string(), b_ok);
    TransformReport {
        subject: format!("transforms trials={trials} seed={seed}"),
        trials,
        seed,
        violations,
        verdicts,
        elapsed: start.elapsed(),
    }
}

/// Pretty JSON with a trailing newline; byte-deterministic for fixed input.
pub fn to_json<T: Serialize>(report: &T) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}

fn csv_escape(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub const CSV_HEADER: &str = "subject,labeled_count,class_count,min_cei,max_cei,all_verdicts_true\n";

/// One CSV summary row per subject.
pub fn csv_row(r: &ExtremalReport) -> String {
    format!(
        "{},{},{},{}/{},{}/{},{}\n",
        csv_escape(&r.subject),
        r.labeled_count,
        r.class_count,
        r.min_cei.cei.num,
        r.min_cei.cei.den,
        r.max_cei.cei.num,
        r.max_cei.cei.den,
        r.all_true()
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn unique_realization_min_equals_max() {
        let d = DegreeSequence::path(6);
        let r = verify_degree_sequence_extremes(&d, VerifyOptions::default()).unwrap();
        assert!(r.all_true());
        assert_eq!(r.min_cei.cei, r.max_cei.cei);
        assert_eq!(r.class_count, 1);
    }

    #[test]
    fn thirty_tree_sequence_verifies() {
        let d = DegreeSequence::new(&[3, 3, 2, 1, 1, 1, 1]).unwrap();
        let r = verify_degree_sequence_extremes(&d, VerifyOptions::default()).unwrap();
        assert!(r.all_true());
        assert_eq!(r.labeled_count, "30");
        assert_eq!(r.class_count, 2);
    }

    #[test]
    fn rejects_above_bound() {
        let d = DegreeSequence::path(10);
        assert!(matches!(
            verify_degree_sequence_extremes(&d, VerifyOptions::default()),
            Err(VerifyError::TooLarge(10, 9))
        ));
    }

    #[test]
    fn majorization_path_to_star() {
        let r = verify_majorization_monotonicity(5, VerifyOptions::default()).unwrap();
        assert!(r.all_true());
        // P5 vs S5: cei(P5) = 2*(1/4) + 2*(2/3) + 2/2 = 17/6 <= cei(S5) = 6
        assert_eq!(path(5).cei(), ratio(17, 6));
        assert_eq!(star(5).cei(), ratio(6, 1));
        let pair = r
            .pairs
            .iter()
            .find(|p| p.source == "2,2,2,1,1" && p.target == "4,1,1,1,1")
            .unwrap();
        assert!(pair.verdict);
        assert_eq!(pair.chain_length, 3);
    }

    #[test]
    fn branching_single_class_case() {
        // n=6, r=2: one class, so F(6,2) and B(6,2) coincide with it
        let r = verify_branching_bounds(6, 2, VerifyOptions::default()).unwrap();
        assert!(r.all_true());
        assert_eq!(r.class_count, 1);
        assert_eq!(r.min_cei.cei, r.max_cei.cei);
    }

    #[test]
    fn branching_r1_max_is_star_family() {
        for n in 6..=8 {
            let r = verify_branching_bounds(n, 1, VerifyOptions::default()).unwrap();
            assert!(r.all_true(), "n={n}: {:?}", r.verdicts);
            assert_eq!(r.max_cei.cei, RationalRepr::of(&star(n).cei()));
        }
    }

    #[test]
    fn ordering_small_n() {
        assert!(matches!(
            verify_global_ordering(5, VerifyOptions::default()),
            Err(VerifyError::TooSmall(5, 6))
        ));
        let r = verify_global_ordering(6, VerifyOptions::default()).unwrap();
        assert!(r.all_true(), "{:?}", r.verdicts);
        assert_eq!(r.class_count, 6);
    }

    #[test]
    fn transforms_seeded_run_is_clean_and_deterministic() {
        let a = verify_transformations(200, 42);
        assert!(a.all_true());
        assert!(a.violations.is_empty());
        let b = verify_transformations(200, 42);
        assert_eq!(to_json(&a), to_json(&b));
    }

    #[test]
    fn csv_row_shape() {
        let d = DegreeSequence::new(&[2, 2, 1, 1]).unwrap();
        let r = verify_degree_sequence_extremes(&d, VerifyOptions::default()).unwrap();
        let row = csv_row(&r);
        assert!(row.starts_with("\"degrees 2,2,1,1\","));
        assert!(row.trim_end().ends_with("true"));
    }
}
