//! Exhaustive generation of small matrices and the property sweeps that
//! check the library against brute force.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use itertools::Itertools;
use rayon::prelude::*;

use crate::classes::{
    block_regular_class, class_nonempty, enumerate_class, ferrers_convex, is_unimodal,
    sort_rows_to_convex, staircase_from_profile, two_regular_profile, FerrersConvexSpec,
};
use crate::diagram::{
    diagram, essential_set, full_essential_set, is_ferrers_diagram, ranked_essential_set,
    FerrersShape,
};
use crate::error::{Error, Result};
use crate::interchange::{
    apply_interchange, build_convex_class, enumerate_interchanges,
    move_acts_on_shift_or_singletons, passes_block_structure, trichotomy_report, ConvexClassSpec,
    OneShiftPair,
};
use crate::lattice::{convex_hull, covers, join, maximal_chain, meet, ChainDirection};
use crate::matrix::{BinaryMatrix, Direction, Interval, MarginPair, Position};
use crate::reconstruct::{reconstruct_detailed, reconstruct_directed};

/// Largest `m * n` for which all `2^(mn)` matrices are generated by default.
pub const DEFAULT_SWEEP_CAP: usize = 20;

/// The matrix whose row-major cells are the bits of `mask`, first cell in
/// the most significant of the `m * n` bits.
pub fn matrix_from_mask(m: usize, n: usize, mask: u64) -> BinaryMatrix {
    let cells = m * n;
    BinaryMatrix::from_fn(m, n, |i, j| mask >> (cells - 1 - (i * n + j)) & 1 == 1)
}

/// Inverse of [`matrix_from_mask`].
pub fn mask_of(a: &BinaryMatrix) -> u64 {
    a.cells().iter().fold(0, |acc, &b| acc << 1 | u64::from(b))
}

/// All `m x n` matrices satisfying `predicate`, in ascending order of their
/// row-major bit strings.
pub fn enumerate_all<P>(
    m: usize,
    n: usize,
    cap: usize,
    predicate: P,
) -> Result<impl Iterator<Item = BinaryMatrix>>
where
    P: Fn(&BinaryMatrix) -> bool,
{
    if m == 0 || n == 0 {
        return Err(Error::EmptyMatrix { rows: m, cols: n });
    }
    let cells = m * n;
    if cells > cap || cells >= 64 {
        return Err(Error::SizeExceeded { cells, cap });
    }
    Ok((0..1u64 << cells)
        .map(move |mask| matrix_from_mask(m, n, mask))
        .filter(move |a| predicate(a)))
}

/// Every shape `(m, n)` with `m * n <= max_cells`.
pub fn shapes_up_to(max_cells: usize) -> Vec<(usize, usize)> {
    (1..=max_cells)
        .flat_map(|m| (1..=max_cells / m).map(move |n| (m, n)))
        .collect()
}

/// Every Ferrers shape with at most `rows` parts, each at most `cols`.
pub fn ferrers_shapes(rows: usize, cols: usize) -> Vec<FerrersShape> {
    fn extend(rows: usize, max: usize, acc: &mut Vec<usize>, out: &mut Vec<FerrersShape>) {
        if acc.len() == rows {
            out.extend(FerrersShape::new(acc.clone()));
            return;
        }
        for u in (0..=max).rev() {
            acc.push(u);
            extend(rows, u, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    extend(rows, cols, &mut Vec::new(), &mut out);
    out
}

/// Every Ferrers-convex spec assembling to an `m x n` matrix.
pub fn all_ferrers_convex_specs(m: usize, n: usize) -> Vec<FerrersConvexSpec> {
    let mut out = Vec::new();
    for (m1, n1) in (1..m).cartesian_product(1..n) {
        let (m2, n2) = (m - m1, n - n1);
        let blocks = [
            ferrers_shapes(m1, n1),
            ferrers_shapes(n2, m1),
            ferrers_shapes(n1, m2),
            ferrers_shapes(m2, n2),
        ];
        for parts in blocks.iter().multi_cartesian_product() {
            out.push(FerrersConvexSpec {
                m1,
                m2,
                n1,
                n2,
                u11: parts[0].clone(),
                u12: parts[1].clone(),
                u21: parts[2].clone(),
                u22: parts[3].clone(),
            });
        }
    }
    out
}

/// Every valid convex-class spec with `pairs` pairs inside columns `1..=max_cols`,
/// each pair listed with its left interval first.
pub fn all_convex_class_specs(pairs: usize, max_cols: usize) -> Vec<ConvexClassSpec> {
    fn shift_pairs(len: usize, max_cols: usize) -> Vec<OneShiftPair> {
        (1..=max_cols.saturating_sub(len))
            .filter_map(|a| {
                let i = Interval::new(a, a + len - 1).ok()?;
                let j = Interval::new(a + 1, a + len).ok()?;
                OneShiftPair::new(i, j).ok()
            })
            .collect()
    }
    fn extend(
        pairs: usize,
        max_cols: usize,
        acc: &mut Vec<OneShiftPair>,
        out: &mut Vec<ConvexClassSpec>,
    ) {
        if acc.len() == pairs {
            out.push(ConvexClassSpec::new(acc.clone()));
            return;
        }
        let min_len = if acc.is_empty() { 1 } else { 2 };
        for len in min_len..max_cols {
            for p in shift_pairs(len, max_cols) {
                acc.push(p);
                if ConvexClassSpec::new(acc.clone()).validate(1).is_ok() {
                    extend(pairs, max_cols, acc, out);
                }
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(pairs, max_cols, &mut Vec::new(), &mut out);
    out
}

/// Bounds for a sweep; each property reads the fields it needs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepParams {
    /// Largest `m * n` examined.
    pub max_cells: usize,
    /// Largest number of columns, for sweeps over margin vectors or specs.
    pub max_cols: usize,
    /// Largest margin entry, for sweeps over margin vectors.
    pub max_entry: usize,
    /// Largest number of pairs, for the convex-class construction.
    pub max_pairs: usize,
    /// Hard limit on `m * n` for full enumeration.
    pub cap: usize,
}

impl Default for SweepParams {
    fn default() -> Self {
        Self {
            max_cells: 16,
            max_cols: 6,
            max_entry: 4,
            max_pairs: 3,
            cap: DEFAULT_SWEEP_CAP,
        }
    }
}

impl SweepParams {
    /// The default bounds for `property`.
    pub fn for_property(property: &str) -> Result<Self> {
        let base = Self::default();
        let (_, _, max_cells) = property_entry(property)?;
        let max_cols = if property == "convex-class-construction" {
            7
        } else {
            base.max_cols
        };
        Ok(Self {
            max_cells,
            max_cols,
            ..base
        })
    }
}

/// Counterexamples printed by the `Display` impl of [`SweepReport`].
const REPORT_LIMIT: usize = 20;

/// Outcome of one sweep. Counterexamples are sorted and empty iff it passed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepReport {
    pub property: String,
    pub params: String,
    pub instances: usize,
    pub counterexamples: Vec<String>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }

    /// `PASS|FAIL property instances=N counterexamples=K`
    pub fn summary_line(&self) -> String {
        format!(
            "{} {} instances={} counterexamples={}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.property,
            self.instances,
            self.counterexamples.len()
        )
    }
}

impl fmt::Display for SweepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "property: {}", self.property)?;
        writeln!(f, "params: {}", self.params)?;
        writeln!(f, "instances: {}", self.instances)?;
        for c in self.counterexamples.iter().take(REPORT_LIMIT) {
            writeln!(f, "counterexample: {c}")?;
        }
        if self.counterexamples.len() > REPORT_LIMIT {
            writeln!(f, "... {} more", self.counterexamples.len() - REPORT_LIMIT)?;
        }
        writeln!(f, "{}", self.summary_line())
    }
}

type SweepFn = fn(&SweepParams) -> Result<(usize, Vec<String>)>;

/// `(id, description, default max_cells, runner)`
const PROPERTY_TABLE: &[(&str, &str, usize, SweepFn)] = &[
    ("reconstruct-roundtrip", "reconstruction from margins and ranked essential set returns every convex matrix without zero lines", 16, sweep_roundtrip),
    ("reconstruct-injective", "distinct convex matrices of one class have distinct ranked essential sets", 16, sweep_injective),
    ("directed-reconstruction", "the directed reconstruction returns the unique class member with the requested source, or fails when there is none", 16, sweep_directed),
    ("polyomino-ferrers-diagram", "the diagram of a polyomino is a Ferrers array whose corners carry rank 0", 16, sweep_polyomino_diagram),
    ("se-source-empty-essential", "a polyomino has an empty essential set exactly when it has an SE-source", 16, sweep_se_source),
    ("two-regular-profile", "the alternating-sum profile exists exactly when C(2e,S) is nonempty", 16, sweep_two_regular),
    ("row-convex-sorting", "sorting the rows of a row-convex matrix with constant row sums yields a convex matrix", 16, sweep_row_sorting),
    ("block-regular-count", "C(le,ke) with k x l blocks is nonempty exactly when m/k = n/l is an integer p, and then has p! members", 36, sweep_block_regular),
    ("ferrers-convex-unimodal", "every Ferrers-convex matrix is convex with unimodal margins", 16, sweep_ferrers_convex),
    ("interchange-structure", "for convex matrices with all line sums >= 2, a switch keeps convexity exactly when the block structure holds", 16, sweep_interchange_structure),
    ("convex-class-trichotomy", "in a convex class every pair of lines is singletons, nested or a 1-shift, and every switch acts on singletons or a 1-shift pair", 16, sweep_trichotomy),
    ("convex-class-construction", "the nested 1-shift construction yields a class of exactly 2^k convex matrices", 49, sweep_class_construction),
    ("meet-convex", "the entrywise AND of two convex matrices is convex", 12, sweep_meet_convex),
    ("hull-minimal", "the convex hull is the meet of all convex matrices above the input", 12, sweep_hull_minimal),
    ("join-lub", "hull of the union is the least convex upper bound, commutative and absorptive", 12, sweep_join_lub),
    ("cover-count", "the covers of a convex matrix are exactly the flips at its combined essential set", 16, sweep_cover_count),
    ("cover-count-polyomino", "the covers of a polyomino are exactly the flips at its combined essential set", 16, sweep_cover_count_polyomino),
    ("maximal-chains", "an up-chain and a down-chain through any convex matrix hold mn+1 matrices, each step a cover", 9, sweep_maximal_chains),
];

fn property_entry(property: &str) -> Result<(&'static str, SweepFn, usize)> {
    PROPERTY_TABLE
        .iter()
        .find(|(id, ..)| *id == property)
        .map(|&(id, _, cells, f)| (id, f, cells))
        .ok_or_else(|| Error::UnknownProperty(property.to_string()))
}

/// Property ids with one-line descriptions.
pub fn properties() -> impl Iterator<Item = (&'static str, &'static str)> {
    PROPERTY_TABLE.iter().map(|&(id, desc, ..)| (id, desc))
}

/// Runs the sweep named `property`.
pub fn run_sweep(property: &str, params: &SweepParams) -> Result<SweepReport> {
    let (id, runner, _) = property_entry(property)?;
    let (instances, mut counterexamples) = runner(params)?;
    counterexamples.sort();
    counterexamples.dedup();
    Ok(SweepReport {
        property: id.to_string(),
        params: format!(
            "max_cells={} max_cols={} max_entry={} max_pairs={} cap={}",
            params.max_cells, params.max_cols, params.max_entry, params.max_pairs, params.cap
        ),
        instances,
        counterexamples,
    })
}

/// One-line form of a matrix: rows joined by `/`.
pub fn compact(a: &BinaryMatrix) -> String {
    (0..a.rows())
        .map(|i| {
            a.row(i)
                .iter()
                .map(|&b| if b { '1' } else { '0' })
                .collect::<String>()
        })
        .join("/")
}

fn positions(ps: &[Position]) -> String {
    format!("{{{}}}", ps.iter().join(" "))
}

type ShapeGroups = Vec<((usize, usize), Vec<BinaryMatrix>)>;

/// All matrices over every shape with at most `params.max_cells` cells
/// satisfying `predicate`, grouped by shape.
fn matrices_by_shape(
    params: &SweepParams,
    predicate: fn(&BinaryMatrix) -> bool,
) -> Result<ShapeGroups> {
    shapes_up_to(params.max_cells)
        .into_par_iter()
        .map(|(m, n)| {
            Ok((
                (m, n),
                enumerate_all(m, n, params.cap, predicate)?.collect(),
            ))
        })
        .collect()
}

fn generalized_polyomino(a: &BinaryMatrix) -> bool {
    a.is_convex() && !a.has_zero_line()
}

fn polyomino(a: &BinaryMatrix) -> bool {
    a.is_convex() && a.is_connected()
}

/// Checks `check` on every matrix of every shape, in parallel.
fn sweep_each(
    params: &SweepParams,
    predicate: fn(&BinaryMatrix) -> bool,
    check: impl Fn(&BinaryMatrix) -> Option<String> + Sync,
) -> Result<(usize, Vec<String>)> {
    let groups = matrices_by_shape(params, predicate)?;
    let all: Vec<&BinaryMatrix> = groups.iter().flat_map(|(_, v)| v).collect();
    let bad = all.par_iter().filter_map(|a| check(a)).collect();
    Ok((all.len(), bad))
}

fn sweep_roundtrip(params: &SweepParams) -> Result<(usize, Vec<String>)> {
    sweep_each(params, generalized_polyomino, |a| {
        let (m, n) = a.shape();
        match reconstruct_detailed(&a.margins(), &ranked_essential_set(a), false) {
            Ok(r) if r.matrix == *a && r.cell_writes <= m * n => None,
            Ok(r) => Some(format!(
                "{} -> {} ({} writes)",
                compact(a),
                compact(&r.matrix),
                r.cell_writes
            )),
            Err(e) => Some(format!("{} -> error: {e}", compact(a))),
        }
    })
}

fn sweep_injective(params: &SweepParams) -> Result<(usize, Vec<String>)> {
    let groups = matrices_by_shape(params, generalized_polyomino)?;
    let mut seen: HashMap<String, &BinaryMatrix> = HashMap::new();
    let mut bad = Vec::new();
    let mut instances = 0;
    for a in groups.iter().flat_map(|(_, v)| v) {
        instances += 1;
        let key = format!("{} {}", a.margins(), ranked_essential_set(a));
        if let Some(prev) = seen.insert(key, a) {
            bad.push(format!(
                "{} and {} share margins and ranked set",
                compact(prev),
                compact(a)
            ));
        }
    }
    Ok((instances, bad))
}

fn sweep_directed(params: &SweepParams) -> Result<(usize, Vec<String>)> {
    let groups = matrices_by_shape(params, generalized_polyomino)?;
    let mut classes: BTreeMap<MarginPair, Vec<&BinaryMatrix>> = BTreeMap::new();
    for a in groups.iter().flat_map(|(_, v)| v) {
        classes.entry(a.margins()).or_default().push(a);
    }
    let classes: Vec<_> = classes.into_iter().collect();
    let bad: Vec<String> = classes
        .par_iter()
        .flat_map_iter(|(mp, members)| {
            Direction::ALL.into_iter().filter_map(move |d| {
                let holders: Vec<_> = members
                    .iter()
                    .filter(|a| a.sources().get(d).is_some())
                    .collect();
                let got = reconstruct_directed(mp, d);
                let ok = match (holders.as_slice(), &got) {
                    ([], Err(Error::Infeasible(_))) => true,
                    ([only], Ok(b)) => **only == b,
                    _ => false,
                };
                (!ok).then(|| {
                    format!(
                        "{mp} {d}: {} holders, got {:?}",
                        holders.len(),
                        got.map(|b| compact(&b))
                    )
                })
            })
        })
        .collect();
    Ok((classes.len() * Direction::ALL.len(), bad))
}

fn sweep_polyomino_diagram(params: &SweepParams) -> Result<(usize, Vec<String>)> {
    sweep_each(params, polyomino, |a| {
        let Some(shape) = is_ferrers_diagram(&diagram(a)) else {
            return Some(format!("{}: diagram is not a Ferrers array", compact(a)));
        };
        let u = shape.row_lengths();
        let corners: Vec<Position> = (0..u.len())
            .filter(|&i| u[i] > 0 && u.get(i + 1).copied().unwrap_or(0) < u[i])
            .map(|i| Position::new(i + 1, u[i]))
            .collect();
        let res = ranked_essential_set(a);
        let ok = res.positions() == corners && res.iter().all(|e| e.rank == 0);
        (!ok).then(|| {
            format!(
                "{}: ranked set {res} vs corners {}",
                compact(a),
                positions(&corners)
            )
        })
    })
}

fn sweep_se_source(params: &SweepParams) -> Result<(usize, Vec<String>)> {
    sweep_each(params, polyomino, |a| {
        let empty = essential_set(a, Direction::SE).is_empty();
        let source = a.sources().get(Direction::SE).is_some();
        (empty != source).then(|| format!("{}: empty={empty} source={source}", compact(a)))
    })
}

fn sweep_two_regular(params: &SweepParams) -> Result<(usize, Vec<String>)> {
    let vectors: Vec<Vec<usize>> = (1..=params.max_cols)
        .flat_map(|n| {
            (0..n)
                .map(|_| 0..=params.max_entry)
                .multi_cartesian_product()
        })
        .collect();
    let bad: Vec<String> = vectors
        .par_iter()
        .filter_map(|s| {
            let total: usize = s.iter().sum();
            let brute = total.is_multiple_of(2)
                && total > 0
                && class_nonempty(&MarginPair::new(vec![2; total / 2], s.clone()), true)
                    .unwrap_or(false);
            let profile = two_regular_profile(s);
            let witness_ok = profile.as_ref().is_none_or(|p| {
                staircase_from_profile(p, 2).is_ok_and(|w| {
                    w.is_convex() && w.col_sums() == *s && w.row_sums().iter().all(|&r| r == 2)
                })
            });
            (brute != profile.is_some() || !witness_ok)
                .then(|| format!("S={s:?}: brute={brute} profile={profile:?}"))
        })
        .collect();
    Ok((vectors.len(), bad))
}

fn sweep_row_sorting(params: &SweepParams) -> Result<(usize, Vec<String>)> {
    let mut cases = Vec::new();
    for (m, n) in shapes_up_to(params.max_cells) {
        for k in 1..=n {
            for starts in (0..m).map(|_| 0..=n - k).multi_cartesian_product() {
                cases.push(BinaryMatrix::from_fn(m, n, |i, j| {
                    (starts[i]..starts[i] + k).contains(&j)
                }));
            }
        }
    }
    let bad = cases
        .par_iter()
        .filter_map(|a| match sort_rows_to_convex(a) {
            Ok(b) if b.is_convex() && b.margins() == a.margins() => None,
            Ok(b) => Some(format!("{} sorted to {}", compact(a), compact(&b))),
            Err(e) => Some(format!("{}: {e}", compact(a))),
        })
        .collect();
    Ok((cases.len(), bad))
}

fn sweep_block_regular(params: &SweepParams) -> Result<(usize, Vec<String>)> {
    let mut instances = 0;
    let mut bad = Vec::new();
    for (k, l) in (1..=2).cartesian_product(1..=2) {
        for (m, n) in (k..=3 * k).cartesian_product(l..=3 * l) {
            if m * n > params.max_cells {
                continue;
            }
            instances += 1;
            let mp = MarginPair::new(vec![l; m], vec![k; n]);
            let nonempty = class_nonempty(&mp, true)?;
            let class = block_regular_class(m, n, k, l);
            if nonempty != class.is_some() {
                bad.push(format!("m={m} n={n} k={k} l={l}: brute={nonempty}"));
                continue;
            }
            if let Some(c) = class {
                let mut members: Vec<_> = c.members().collect();
                members.sort_unstable();
                let listed = enumerate_class(&mp, true, m * n)?;
                let factorial = (1..=c.p).product::<usize>();
                if listed != members || c.count() != Some(factorial as u128) {
                    bad.push(format!(
                        "m={m} n={n} k={k} l={l}: {} enumerated vs {} constructed",
                        listed.len(),
                        members.len()
                    ));
                }
            }
        }
    }
    Ok((instances, bad))
}

fn sweep_ferrers_convex(params: &SweepParams) -> Result<(usize, Vec<String>)> {
    let specs: Vec<FerrersConvexSpec> = shapes_up_to(params.max_cells)
        .into_iter()
        .flat_map(|(m, n)| all_ferrers_convex_specs(m, n))
        .collect();
    let bad = specs
        .par_iter()
        .filter_map(|spec| {
            let a = match ferrers_convex(spec) {
                Ok(a) => a,
                Err(e) => return Some(format!("{spec:?}: {e}")),
            };
            let ok = a.is_convex() && is_unimodal(&a.row_sums()) && is_unimodal(&a.col_sums());
            (!ok).then(|| compact(&a))
        })
        .collect();
    Ok((specs.len(), bad))
}

fn sweep_interchange_structure(params: &SweepParams) -> Result<(usize, Vec<String>)> {
    fn wide(a: &BinaryMatrix) -> bool {
        a.is_convex() && a.row_sums().iter().chain(&a.col_sums()).all(|&s| s >= 2)
    }
    let groups = matrices_by_shape(params, wide)?;
    let all: Vec<&BinaryMatrix> = groups.iter().flat_map(|(_, v)| v).collect();
    let results: Vec<(usize, Vec<String>)> = all
        .par_iter()
        .map(|a| {
            let moves = enumerate_interchanges(a);
            let bad = moves
                .iter()
                .filter(|mv| {
                    let convex = apply_interchange(a, mv).is_ok_and(|b| b.is_convex());
                    convex != passes_block_structure(a, mv)
                })
                .map(|mv| format!("{} {mv}", compact(a)))
                .collect();
            (moves.len(), bad)
        })
        .collect();
    let instances = results.iter().map(|r| r.0).sum();
    Ok((instances, results.into_iter().flat_map(|r| r.1).collect()))
}

fn sweep_trichotomy(params: &SweepParams) -> Result<(usize, Vec<String>)> {
    fn no_zero_line(a: &BinaryMatrix) -> bool {
        !a.has_zero_line()
    }
    let groups = matrices_by_shape(params, no_zero_line)?;
    let mut classes: HashMap<MarginPair, Vec<&BinaryMatrix>> = HashMap::new();
    for a in groups.iter().flat_map(|(_, v)| v) {
        classes.entry(a.margins()).or_default().push(a);
    }
    let convex_classes: Vec<_> = classes
        .values()
        .filter(|members| members.iter().all(|a| a.is_convex()))
        .collect();
    let bad = convex_classes
        .par_iter()
        .flat_map_iter(|members| {
            members.iter().flat_map(|a| {
                let report = trichotomy_report(a);
                let mut out = Vec::new();
                if !report.holds() {
                    out.push(format!("{}: {report:?}", compact(a)));
                }
                for mv in enumerate_interchanges(a) {
                    if !move_acts_on_shift_or_singletons(a, &mv) {
                        out.push(format!("{} {mv}", compact(a)));
                    }
                }
                out
            })
        })
        .collect();
    Ok((convex_classes.len(), bad))
}

fn sweep_class_construction(params: &SweepParams) -> Result<(usize, Vec<String>)> {
    let mut cases = Vec::new();
    for k in 1..=params.max_pairs {
        for spec in all_convex_class_specs(k, params.max_cols) {
            for full_rows in 0..=1 {
                if spec.validate(full_rows).is_ok()
                    && (2 * k + full_rows) * spec.cols() <= params.max_cells
                {
                    cases.push((spec.clone(), full_rows));
                }
            }
        }
    }
    let bad = cases
        .par_iter()
        .filter_map(|(spec, full_rows)| {
            let k = spec.pairs.len();
            let describe = || {
                format!(
                    "{} full_rows={full_rows}",
                    spec.to_string().trim().replace('\n', "; ")
                )
            };
            let (mp, members) = match build_convex_class(spec, *full_rows) {
                Ok(r) => r,
                Err(e) => return Some(format!("{}: {e}", describe())),
            };
            let cells = mp.rows() * mp.cols();
            let listed = match enumerate_class(&mp, false, cells) {
                Ok(l) => l,
                Err(e) => return Some(format!("{}: {e}", describe())),
            };
            let ok = members.len() == 1 << k
                && members.iter().all(BinaryMatrix::is_convex)
                && listed == members;
            (!ok).then(|| {
                format!(
                    "{}: {} members, {} in class",
                    describe(),
                    members.len(),
                    listed.len()
                )
            })
        })
        .collect();
    Ok((cases.len(), bad))
}

/// Convex matrices of one shape with their bit masks.
struct ConvexShape {
    shape: (usize, usize),
    masks: Vec<u64>,
    matrices: Vec<BinaryMatrix>,
}

fn convex_shapes(params: &SweepParams) -> Result<Vec<ConvexShape>> {
    Ok(matrices_by_shape(params, BinaryMatrix::is_convex)?
        .into_iter()
        .map(|(shape, matrices)| ConvexShape {
            shape,
            masks: matrices.iter().map(mask_of).collect(),
            matrices,
        })
        .collect())
}

/// Runs `check` on every unordered pair (including equal operands) of every shape.
fn sweep_pairs(
    params: &SweepParams,
    check: impl Fn(&ConvexShape, usize, usize) -> Option<String> + Sync,
) -> Result<(usize, Vec<String>)> {
    let shapes = convex_shapes(params)?;
    let mut instances = 0;
    let mut bad = Vec::new();
    for s in &shapes {
        let count = s.matrices.len();
        instances += count * (count + 1) / 2;
        bad.par_extend(
            (0..count)
                .into_par_iter()
                .flat_map_iter(|x| (x..count).map(move |y| (x, y)))
                .filter_map(|(x, y)| check(s, x, y)),
        );
    }
    Ok((instances, bad))
}

fn sweep_meet_convex(params: &SweepParams) -> Result<(usize, Vec<String>)> {
    sweep_pairs(params, |s, x, y| {
        let (a, b) = (&s.matrices[x], &s.matrices[y]);
        match meet(a, b) {
            Ok(c) if c.is_convex() && c.le(a) && c.le(b) => None,
            _ => Some(format!("{} ^ {}", compact(a), compact(b))),
        }
    })
}

/// AND of every convex mask of the shape lying above `lower`.
fn meet_of_upper_bounds(s: &ConvexShape, lower: u64) -> u64 {
    s.masks
        .iter()
        .filter(|&&x| x & lower == lower)
        .fold(u64::MAX, |acc, &x| acc & x)
}

fn sweep_hull_minimal(params: &SweepParams) -> Result<(usize, Vec<String>)> {
    let shapes = convex_shapes(params)?;
    let mut instances = 0;
    let mut bad = Vec::new();
    for s in &shapes {
        let (m, n) = s.shape;
        let total = 1u64 << (m * n);
        instances += total as usize;
        bad.par_extend((0..total).into_par_iter().filter_map(|mask| {
            let a = matrix_from_mask(m, n, mask);
            let h = convex_hull(&a);
            let ok = h.is_convex() && a.le(&h) && mask_of(&h) == meet_of_upper_bounds(s, mask);
            (!ok).then(|| format!("{} -> {}", compact(&a), compact(&h)))
        }));
    }
    Ok((instances, bad))
}

fn sweep_join_lub(params: &SweepParams) -> Result<(usize, Vec<String>)> {
    sweep_pairs(params, |s, x, y| {
        let (a, b) = (&s.matrices[x], &s.matrices[y]);
        let laws = || -> Result<bool> {
            let j = join(a, b)?;
            let definitional = meet_of_upper_bounds(s, s.masks[x] | s.masks[y]);
            Ok(mask_of(&j) == definitional
                && j == join(b, a)?
                && meet(a, &j)? == *a
                && join(a, &meet(a, b)?)? == *a)
        };
        match laws() {
            Ok(true) => None,
            _ => Some(format!("{} v {}", compact(a), compact(b))),
        }
    })
}

fn sweep_cover_count(params: &SweepParams) -> Result<(usize, Vec<String>)> {
    cover_sweep(params, |_| true)
}

/// Disconnected matrices and matrices with a zero line have covers outside
/// the combined essential set (already `O_{1,3}` does), so the
/// characterization is only checked on polyominoes here.
fn sweep_cover_count_polyomino(params: &SweepParams) -> Result<(usize, Vec<String>)> {
    cover_sweep(params, BinaryMatrix::is_connected)
}

fn cover_sweep(
    params: &SweepParams,
    filter: fn(&BinaryMatrix) -> bool,
) -> Result<(usize, Vec<String>)> {
    let shapes = convex_shapes(params)?;
    let mut instances = 0;
    let mut bad = Vec::new();
    for s in &shapes {
        let (m, n) = s.shape;
        let cells = m * n;
        instances += s.matrices.iter().filter(|c| filter(c)).count();
        bad.par_extend(
            s.matrices
                .par_iter()
                .zip(&s.masks)
                .filter_map(|(c, &mask)| {
                    if !filter(c) {
                        return None;
                    }
                    let brute: Vec<Position> = (0..cells)
                        .filter(|&k| mask >> (cells - 1 - k) & 1 == 0)
                        .filter(|&k| {
                            s.masks
                                .binary_search(&(mask | 1 << (cells - 1 - k)))
                                .is_ok()
                        })
                        .map(|k| Position::from_zero(k / n, k % n))
                        .collect();
                    let listed: Vec<Position> =
                        covers(c).ok()?.iter().map(|st| st.position).collect();
                    let ok = brute == listed && listed.len() == full_essential_set(c).len();
                    (!ok).then(|| {
                        format!(
                            "{}: brute {} vs listed {}",
                            compact(c),
                            positions(&brute),
                            positions(&listed)
                        )
                    })
                }),
        );
    }
    Ok((instances, bad))
}

fn sweep_maximal_chains(params: &SweepParams) -> Result<(usize, Vec<String>)> {
    fn is_cover(lo: &BinaryMatrix, hi: &BinaryMatrix) -> bool {
        hi.is_convex() && lo.le(hi) && hi.count_ones() == lo.count_ones() + 1
    }
    sweep_each(params, BinaryMatrix::is_convex, |c| {
        let (m, n) = c.shape();
        let chains = maximal_chain(c, ChainDirection::Up)
            .and_then(|up| Ok((up, maximal_chain(c, ChainDirection::Down)?)));
        let Ok((up, down)) = chains else {
            return Some(format!("{}: chain failed", compact(c)));
        };
        let ok = up.len() + down.len() - 1 == m * n + 1
            && up.windows(2).all(|w| is_cover(&w[0], &w[1]))
            && down.windows(2).all(|w| is_cover(&w[1], &w[0]))
            && up.last() == Some(&BinaryMatrix::ones(m, n))
            && down.last() == Some(&BinaryMatrix::zeros(m, n));
        (!ok).then(|| format!("{}: up {} down {}", compact(c), up.len(), down.len()))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_order_and_counts() {
        let all: Vec<_> = enumerate_all(1, 1, 20, |_| true).unwrap().collect();
        assert_eq!(
            all,
            vec![BinaryMatrix::zeros(1, 1), BinaryMatrix::ones(1, 1)]
        );
        let convex: Vec<String> = enumerate_all(1, 3, 20, BinaryMatrix::is_convex)
            .unwrap()
            .map(|a| compact(&a))
            .collect();
        assert_eq!(convex, ["000", "001", "010", "011", "100", "110", "111"]);
        assert_eq!(enumerate_all(2, 3, 20, |_| true).unwrap().count(), 64);
        assert!(matches!(
            enumerate_all(3, 7, 20, |_| true).map(|_| ()),
            Err(Error::SizeExceeded { cells: 21, cap: 20 })
        ));
    }

    #[test]
    fn small_polyomino_count() {
        let count = enumerate_all(2, 2, 20, |a| a.is_convex() && a.is_connected())
            .unwrap()
            .count();
        // the four L-trominoes, J_2, and the two dominoes in each direction
        // fail to cover a line, leaving J_2 and the four L shapes
        assert_eq!(count, 5);
    }

    #[test]
    fn masks_roundtrip() {
        for mask in 0..1u64 << 6 {
            assert_eq!(mask_of(&matrix_from_mask(2, 3, mask)), mask);
        }
    }

    #[test]
    fn ferrers_shape_listing() {
        // shapes in a 2x2 box: (0,0) (1,0) (1,1) (2,0) (2,1) (2,2)
        assert_eq!(ferrers_shapes(2, 2).len(), 6);
        assert_eq!(ferrers_shapes(3, 3).len(), 20);
    }

    #[test]
    fn unknown_property() {
        assert_eq!(
            run_sweep("no-such-thing", &SweepParams::default()),
            Err(Error::UnknownProperty("no-such-thing".into()))
        );
    }

    #[test]
    fn report_summary() {
        let r = run_sweep(
            "se-source-empty-essential",
            &SweepParams {
                max_cells: 6,
                ..SweepParams::default()
            },
        )
        .unwrap();
        assert!(r.passed(), "{r}");
        assert!(r
            .summary_line()
            .starts_with("PASS se-source-empty-essential instances="));
        assert!(r.summary_line().ends_with("counterexamples=0"));
    }

    #[test]
    fn every_property_passes_on_tiny_inputs() {
        for (id, _) in properties() {
            let params = SweepParams {
                max_cells: 6,
                max_cols: 4,
                max_entry: 3,
                max_pairs: 2,
                ..SweepParams::default()
            };
            let r = run_sweep(id, &params).unwrap();
            assert_eq!(r.passed(), id != "cover-count", "{r}");
        }
    }

    #[test]
    fn zero_row_has_a_cover_outside_the_essential_set() {
        let o = BinaryMatrix::zeros(1, 3);
        let flipped = o.with_entry(Position::new(1, 2), true);
        assert!(flipped.is_convex());
        assert!(full_essential_set(&o)
            .iter()
            .all(|t| t.position != Position::new(1, 2)));
        let r = run_sweep(
            "cover-count",
            &SweepParams {
                max_cells: 3,
                ..SweepParams::default()
            },
        )
        .unwrap();
        assert!(
            r.counterexamples.iter().any(|c| c.starts_with("000:")),
            "{r}"
        );
    }
}
