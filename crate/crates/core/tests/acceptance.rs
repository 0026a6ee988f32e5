//! One pass/fail line per acceptance criterion. This target has its own
//! `main`, so the lines are printed on every `cargo test` run. It exits
//! nonzero when any criterion's outcome differs from the expected one.

use std::time::{Duration, Instant};

use convexmat::text::parse_matrix;
use convexmat::{
    block_regular_class, build_convex_class, covers, distributivity_witness, enumerate_class,
    full_essential_set, is_convex_class, join, meet, ranked_essential_set, reconstruct,
    reconstruct_detailed, run_sweep, trichotomy_report, two_regular_profile, BinaryMatrix,
    ConvexClassSpec, MarginPair, Position, RankedEssentialSet, SweepParams, SweepReport,
};

fn mat(s: &str) -> BinaryMatrix {
    parse_matrix(s).unwrap()
}

fn triples(t: &[(usize, usize, usize)]) -> RankedEssentialSet {
    RankedEssentialSet::from_triples(t).unwrap()
}

fn sweep(id: &str) -> SweepReport {
    run_sweep(id, &SweepParams::for_property(id).unwrap()).unwrap()
}

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Self {
            passed,
            detail: detail.into(),
        }
    }

    fn from_sweeps(reports: &[SweepReport], extra: bool, note: &str) -> Self {
        let summaries: Vec<String> = reports.iter().map(SweepReport::summary_line).collect();
        Self::new(
            extra && reports.iter().all(SweepReport::passed),
            format!("{note}; {}", summaries.join("; ")),
        )
    }
}

fn criterion_1() -> Outcome {
    let a2 = mat("0011111\n0011000\n0011000\n0111000\n1110000\n1000000\n");
    let margins_ok =
        a2.margins() == MarginPair::new(vec![5, 2, 2, 3, 3, 1], vec![2, 2, 5, 4, 1, 1, 1]);
    let res = ranked_essential_set(&a2);
    Outcome::new(
        margins_ok && res == triples(&[(3, 2, 0), (4, 1, 0)]),
        format!("ranked set {res}"),
    )
}

fn criterion_2() -> Outcome {
    let p = BinaryMatrix::permutation(&[2, 5, 1, 4, 6, 3]).unwrap();
    let g = BinaryMatrix::permutation(&[2, 5, 7, 1, 3, 4, 6, 8]).unwrap();
    let (rp, rg) = (ranked_essential_set(&p), ranked_essential_set(&g));
    Outcome::new(
        rp == triples(&[(2, 1, 0), (2, 4, 1), (5, 3, 2)])
            && rg == triples(&[(3, 1, 0), (3, 4, 1), (3, 6, 2)]),
        format!("permutation {rp}, grassmannian {rg}"),
    )
}

fn criterion_3() -> Outcome {
    let expected = mat(concat!(
        "00110000\n",
        "00010000\n",
        "00010000\n",
        "00000100\n",
        "00001100\n",
        "00000111\n",
        "01000000\n",
        "11000000\n",
    ));
    let margins = MarginPair::new(vec![2, 1, 1, 1, 2, 3, 1, 2], vec![1, 2, 1, 3, 1, 3, 1, 1]);
    match reconstruct_detailed(
        &margins,
        &triples(&[(4, 5, 4), (6, 2, 0), (7, 1, 0)]),
        false,
    ) {
        Ok(r) => Outcome::new(
            r.matrix == expected
                && r.matrix.to_string() == expected.to_string()
                && r.cell_writes <= 64,
            format!("{} cell writes", r.cell_writes),
        ),
        Err(e) => Outcome::new(false, e.to_string()),
    }
}

fn criterion_4() -> Outcome {
    Outcome::from_sweeps(
        &[
            sweep("reconstruct-roundtrip"),
            sweep("reconstruct-injective"),
        ],
        true,
        "every convex matrix without zero lines, mn <= 16",
    )
}

fn criterion_5() -> Outcome {
    let fixtures = two_regular_profile(&[3, 2, 1]).is_none()
        && two_regular_profile(&[1, 3, 2]).is_some_and(|p| p.k == [1, 2]);
    Outcome::from_sweeps(
        &[sweep("two-regular-profile")],
        fixtures,
        "S=(3,2,1) empty, S=(1,3,2) gives k=(1,2)",
    )
}

fn criterion_6() -> Outcome {
    let mut fixtures = true;
    for (k, l) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        for p in 1..=3usize {
            let (m, n) = (p * k, p * l);
            let mp = MarginPair::new(vec![l; m], vec![k; n]);
            let listed = enumerate_class(&mp, true, m * n).unwrap();
            let factorial = (1..=p).product::<usize>();
            fixtures &= listed.len() == factorial
                && block_regular_class(m, n, k, l).and_then(|c| c.count())
                    == Some(factorial as u128);
        }
    }
    fixtures &=
        block_regular_class(4, 3, 2, 2).is_none() && block_regular_class(3, 4, 2, 1).is_none();
    Outcome::from_sweeps(
        &[sweep("block-regular-count")],
        fixtures,
        "p <= 3, k,l <= 2",
    )
}

fn criterion_7() -> Outcome {
    let spec: ConvexClassSpec = "3..3 4..4\n2..5 3..6\n".parse().unwrap();
    let (mp, members) = build_convex_class(&spec, 1).unwrap();
    let fixtures = mp == MarginPair::new(vec![1, 4, 6, 4, 1], vec![1, 2, 4, 4, 3, 2])
        && members.len() == 4
        && enumerate_class(&mp, false, 30).unwrap() == members
        && is_convex_class(&mp, 30).unwrap();
    Outcome::from_sweeps(
        &[sweep("convex-class-construction")],
        fixtures,
        "k <= 3; the full-row example has 4 members and is a convex class",
    )
}

fn criterion_8() -> Outcome {
    Outcome::from_sweeps(
        &[sweep("interchange-structure")],
        true,
        "all line sums >= 2, mn <= 16",
    )
}

fn criterion_9() -> Outcome {
    let violation = trichotomy_report(&mat("1100\n1110\n0111\n"));
    let non_convex = mat("11\n10\n11\n");
    let fixtures = violation.row_violations == [(1, 3)]
        && violation.col_violations == [(1, 4)]
        && trichotomy_report(&non_convex).holds()
        && !non_convex.is_convex()
        && !is_convex_class(&non_convex.margins(), 25).unwrap();
    Outcome::from_sweeps(
        &[sweep("convex-class-trichotomy")],
        fixtures,
        "violation at rows (1,3) and columns (1,4); trichotomy holds for R=(2,1,2), S=(3,2) whose class is not convex",
    )
}

fn criterion_10() -> Outcome {
    let (c1, c2, c3) = (mat("100"), mat("010"), mat("001"));
    let lhs = join(&c1, &meet(&c2, &c3).unwrap()).unwrap();
    let rhs = meet(&join(&c1, &c2).unwrap(), &join(&c1, &c3).unwrap()).unwrap();
    let fixtures =
        lhs == mat("100") && rhs == mat("110") && distributivity_witness(1, 3).unwrap().is_some();
    Outcome::from_sweeps(
        &[
            sweep("meet-convex"),
            sweep("hull-minimal"),
            sweep("join-lub"),
        ],
        fixtures,
        "all convex pairs, mn <= 12; 1x3 triple gives [1,0,0] vs [1,1,0]",
    )
}

fn brute_force_covers(c: &BinaryMatrix) -> usize {
    let (m, n) = c.shape();
    (1..=m)
        .flat_map(|i| (1..=n).map(move |j| Position::new(i, j)))
        .filter(|&p| !c.at(p) && c.with_entry(p, true).is_convex())
        .count()
}

/// The literal statement quantifies over every convex matrix, but matrices
/// with a zero line or more than one component have covers outside the
/// combined essential set. The smallest is the 1x3 zero matrix, whose
/// middle cell flips to a convex cover although only the two end cells are
/// essential. This line therefore reports FAIL. The polyomino case and the
/// genuineness of every counterexample are asserted separately.
fn criterion_11() -> Outcome {
    let c = mat("000111\n001110\n001100\n011100\n111000\n001000\n");
    let example = brute_force_covers(&c) == 7 && covers(&c).unwrap().len() == 7;
    let all = sweep("cover-count");
    let polyomino = sweep("cover-count-polyomino");
    Outcome::new(
        example && all.passed() && polyomino.passed(),
        format!(
            "6x6 fixture has 7 covers: {example}; {}; {}",
            all.summary_line(),
            polyomino.summary_line()
        ),
    )
}

fn criterion_12() -> Outcome {
    let params = SweepParams::for_property("maximal-chains").unwrap();
    let report = run_sweep("maximal-chains", &params).unwrap();
    Outcome::from_sweeps(
        &[report],
        params.max_cells >= 9,
        "every convex matrix with mn <= 9, including all of 3x3",
    )
}

/// Row `i` of the `n x n` staircase holds columns `i-w+1..=i+w-1` clipped to the matrix.
fn staircase(n: usize, w: usize) -> BinaryMatrix {
    BinaryMatrix::from_fn(n, n, |i, j| j + w > i && j < i + w)
}

fn criterion_13() -> Outcome {
    let mut passed = true;
    let mut details = Vec::new();
    for w in [3, 300] {
        let a = staircase(1000, w);
        let margins = a.margins();
        let res = ranked_essential_set(&a);
        let start = Instant::now();
        let out = reconstruct(&margins, &res);
        let elapsed = start.elapsed();
        passed &= out.as_ref() == Ok(&a) && elapsed < Duration::from_secs(1);
        details.push(format!("{} ones in {elapsed:?}", a.count_ones()));
    }
    Outcome::new(
        passed,
        format!("1000x1000 staircases: {}", details.join(", ")),
    )
}

/// Criteria that cannot hold as stated, with the reason recorded beside them.
const UNATTAINABLE: &[usize] = &[11];

fn main() {
    let criteria: [(usize, fn() -> Outcome); 13] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
        (11, criterion_11),
        (12, criterion_12),
        (13, criterion_13),
    ];
    let mut unexpected = Vec::new();
    for (id, run) in criteria {
        let outcome = run();
        let verdict = if outcome.passed { "PASS" } else { "FAIL" };
        println!("criterion {id:>2}: {verdict} ({})", outcome.detail);
        if outcome.passed == UNATTAINABLE.contains(&id) {
            unexpected.push(id);
        }
    }
    covers_match_brute_force_on_polyominoes();
    cover_counterexamples_are_genuine_and_never_polyominoes();
    println!("cover checks: ok");
    if !unexpected.is_empty() {
        eprintln!("criteria with unexpected outcome: {unexpected:?}");
        std::process::exit(1);
    }
}

fn covers_match_brute_force_on_polyominoes() {
    let report = sweep("cover-count-polyomino");
    assert!(report.passed(), "{report}");
    let c = mat("000111\n001110\n001100\n011100\n111000\n001000\n");
    assert_eq!(brute_force_covers(&c), 7);
    assert_eq!(covers(&c).unwrap().len(), 7);
}

fn cover_counterexamples_are_genuine_and_never_polyominoes() {
    let report = sweep("cover-count");
    assert!(!report.passed());
    for line in &report.counterexamples {
        let compact = line.split(':').next().unwrap();
        let c = mat(&compact.replace('/', "\n"));
        assert!(c.is_convex(), "{line}");
        assert!(!c.is_connected(), "{line}");
        let (m, n) = c.shape();
        let essential: Vec<_> = full_essential_set(&c)
            .into_iter()
            .map(|t| t.position)
            .collect();
        let outside = (1..=m)
            .flat_map(|i| (1..=n).map(move |j| Position::new(i, j)))
            .filter(|&p| !c.at(p) && !essential.contains(&p))
            .any(|p| c.with_entry(p, true).is_convex());
        let inside_fails = essential
            .iter()
            .any(|&p| !c.with_entry(p, true).is_convex());
        assert!(outside || inside_fails, "{line}");
    }
    let o = BinaryMatrix::zeros(1, 3);
    assert!(o.with_entry(Position::new(1, 2), true).is_convex());
    assert_eq!(full_essential_set(&o).len(), 2);
}
