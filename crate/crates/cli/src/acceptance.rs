//! The ten acceptance criteria as library functions. `reproduce-paper` runs
//! them all; the `acceptance` test target runs one per test.

use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use bounds::{
    decomposability_margin, render, surface_bound, threefold_constant, universal_n, Invariants, MarginVariant,
    SurfaceFlags, SurfaceInvariants,
};
use covers::{
    compare_with_golden, enumerate_extremal, example_family_49, golden_for, hurwitz_genus, lemma43_admissible, Filters,
    LinearBound,
};
use lattice_core::{arrangement, longest_chain, midpoint_set, union_count, ConvexTriple, LatticeSet};
use lemma_lab::{run_batch, BatchConfig, BatchReport, LemmaId};
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use serde_json::Value;

use crate::covers_cmd::{self, CoversArgs};
use crate::{exit, naive};

/// Master seed for the seeded suites.
pub const SEED: u64 = 7;

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    /// Printed after PASS, e.g. "with 3 flagged findings".
    pub qualifier: Option<String>,
    pub notes: Vec<String>,
    pub elapsed: Duration,
}

impl CriterionResult {
    fn new(id: u8, title: &'static str) -> Self {
        CriterionResult { id, title, passed: true, qualifier: None, notes: Vec::new(), elapsed: Duration::ZERO }
    }

    /// Records `cond`; a false condition fails the criterion.
    fn check(&mut self, cond: bool, what: impl Into<String>) {
        let what = what.into();
        if !cond {
            self.passed = false;
            self.notes.push(format!("FAILED: {what}"));
        } else {
            self.notes.push(format!("ok: {what}"));
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn fail(&mut self, s: impl Into<String>) {
        self.check(false, s);
    }

    pub fn line(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        let q = self.qualifier.as_ref().map(|q| format!(" ({q})")).unwrap_or_default();
        format!("criterion {:>2} {status}{q}: {} [{:.1}s]", self.id, self.title, self.elapsed.as_secs_f64())
    }

    pub fn report(&self) -> String {
        let mut s = self.line();
        for n in &self.notes {
            s.push_str("\n    ");
            s.push_str(n);
        }
        s
    }
}

pub const TITLES: [&str; 10] = [
    "Fermat exceptions above 3g+6",
    "gamma=0, k>=4 signatures above 3g-3",
    "cyclic run above 2g+2 is empty",
    "example family (3m,3m,3)",
    "arrangement inequality, 10000 triples in dims 3 and 4",
    "lower bounds of the dimension 3, mixed and dimension 4 lemmas",
    "hypothesis thresholds from decomposability margins",
    "universal index and threefold constant",
    "surface bound table",
    "naive oracle equivalence",
];

/// Runs criterion `id` (1..=10), writing any files under `out`.
pub fn run(id: u8, out: &Path) -> CriterionResult {
    let start = Instant::now();
    let title = TITLES[(id - 1) as usize];
    let mut r = CriterionResult::new(id, title);
    match id {
        1 => fermat(&mut r, out),
        2 => variable_moduli(&mut r),
        3 => cyclic(&mut r),
        4 => family(&mut r),
        5 => arrangement_suite(&mut r, out),
        6 => lower_bound_suites(&mut r, out),
        7 => thresholds(&mut r),
        8 => universal(&mut r),
        9 => table(&mut r),
        10 => oracles(&mut r),
        _ => r.fail(format!("no criterion {id}")),
    }
    r.elapsed = start.elapsed();
    r
}

pub fn run_all(out: &Path) -> Vec<CriterionResult> {
    (1..=10).map(|id| run(id, out)).collect()
}

fn within(r: &mut CriterionResult, start: Instant, limit_s: u64) {
    let t = start.elapsed();
    r.check(t < Duration::from_secs(limit_s), format!("runtime {:.1}s < {limit_s}s", t.as_secs_f64()));
}

// ---- covers ----

fn fermat(r: &mut CriterionResult, out: &Path) {
    let start = Instant::now();
    let mut args = CoversArgs::new("3g+6", 2, 8, out.join("criterion-1"));
    args.no_hyperelliptic = true;
    args.golden = true;
    let outcome = match covers_cmd::run(&args) {
        Ok(o) => o,
        Err(e) => return r.fail(e.to_string()),
    };
    within(r, start, 300);
    r.check(outcome.code == exit::OK, format!("exit code {} with --golden", outcome.code));
    let body = match read_body(&outcome.lines) {
        Ok(b) => b,
        Err(e) => return r.fail(e),
    };
    let keys: Vec<(u64, u64, Vec<u64>, Vec<u64>)> = body["data"]["records"]
        .as_array()
        .map(|a| {
            a.iter()
                .map(|x| {
                    let v = |k: &str| serde_json::from_value::<Vec<u64>>(x[k].clone()).unwrap_or_default();
                    (x["genus"].as_u64().unwrap_or(0), x["order"].as_u64().unwrap_or(0), v("invariant_factors"), v("signature"))
                })
                .collect()
        })
        .unwrap_or_default();
    let expected = vec![(3, 16, vec![4, 4], vec![4, 4, 4]), (6, 25, vec![5, 5], vec![5, 5, 5])];
    r.check(keys == expected, format!("records {keys:?} equal {expected:?}"));
}

fn read_body(lines: &[String]) -> Result<Value, String> {
    let path = lines
        .iter()
        .find_map(|l| l.strip_prefix("report: "))
        .ok_or_else(|| "command printed no report path".to_string())?;
    let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
    serde_json::from_str(&text).map_err(|e| e.to_string())
}

fn variable_moduli(r: &mut CriterionResult) {
    let start = Instant::now();
    let bound: LinearBound = "3g-3".parse().expect("bound parses");
    let filters = Filters { gamma: Some(0), kmin: Some(4), ..Filters::default() };
    let Some(golden) = golden_for(&bound, 3, 6, &filters) else {
        return r.fail("shipped expected list for the 3g-3 run");
    };
    let records = match enumerate_extremal(3, 6, &bound, &filters) {
        Ok(x) => x,
        Err(e) => return r.fail(e.to_string()),
    };
    within(r, start, 600);
    let cmp = compare_with_golden(&golden, &records);
    r.note(format!("{} records, {} expected signatures", records.len(), golden.expected.len()));
    r.check(cmp.unexplained.is_empty(), format!("no unexplained differences ({:?})", cmp.unexplained));
    for f in &cmp.flagged {
        r.note(format!(
            "flagged [{}] g={} |G|={} {:?}: {}",
            f.kind, f.entry.genus, f.entry.order, f.entry.signature, f.note
        ));
    }
    let unwitnessed: Vec<_> = records
        .iter()
        .filter(|x| x.witness.as_ref().map_or(true, |w| w.quotient_genus > 1))
        .map(|x| (x.genus, x.order, x.signature.clone()))
        .collect();
    r.check(unwitnessed.is_empty(), format!("every record has an involution with quotient genus <= 1 ({unwitnessed:?})"));
    if !cmp.exact && r.passed {
        r.qualifier = Some(format!("with {} flagged findings", cmp.flagged.len()));
    }
}

fn cyclic(r: &mut CriterionResult) {
    let filters = Filters { gamma: Some(0), kmin: Some(4), assume_cyclic: true, ..Filters::default() };
    match enumerate_extremal(3, 8, &LinearBound::new(2, 2), &filters) {
        Ok(x) => r.check(x.is_empty(), format!("{} records for g in [3,8]", x.len())),
        Err(e) => r.fail(e.to_string()),
    }
}

fn family(r: &mut CriterionResult) {
    for m in 2..=6u64 {
        let d = match example_family_49(m) {
            Ok(d) => d,
            Err(e) => return r.fail(e.to_string()),
        };
        let g = hurwitz_genus(&d).unwrap_or(0);
        let adm = lemma43_admissible(&d, false).map(|c| c.admissible).unwrap_or(false);
        r.check(
            g == 3 * m - 2 && d.order() == 9 * m && d.order() == 3 * g + 6 && d.signature() == vec![3 * m, 3 * m, 3] && adm,
            format!("m={m}: g={g}, |G|={}, signature {:?}, admissible {adm}", d.order(), d.signature()),
        );
    }
}

// ---- lattice lemmas ----

fn batch(r: &mut CriterionResult, cfg: &BatchConfig, out: &Path) -> Option<BatchReport> {
    match run_batch(cfg) {
        Ok(b) => {
            if b.violations().count() > 0 {
                let dir = out.join(format!("witnesses-{}-d{}", cfg.lemma, cfg.dim));
                let written = std::fs::create_dir_all(&dir).map_err(|e| e.to_string()).and_then(|_| {
                    b.write_witnesses(&dir).map_err(|e| e.to_string())
                });
                match written {
                    Ok(files) => r.note(format!("{} witness files in {}", files.len(), dir.display())),
                    Err(e) => r.fail(format!("writing witnesses: {e}")),
                }
            }
            Some(b)
        }
        Err(e) => {
            r.fail(format!("lemma {} dim {}: {e}", cfg.lemma, cfg.dim));
            None
        }
    }
}

fn arrangement_suite(r: &mut CriterionResult, out: &Path) {
    let start = Instant::now();
    for dim in [3usize, 4] {
        let mut cfg = BatchConfig::new(LemmaId::Arrangement, SEED, 10_000);
        cfg.dim = dim;
        let Some(b) = batch(r, &cfg, out) else { return };
        let s = b.summary();
        r.check(s.admissible == cfg.trials, format!("dim {dim}: {} of {} triples admissible", s.admissible, cfg.trials));
        r.check(s.violations == 0, format!("dim {dim}: {} violations", s.violations));
        let mut mismatches = 0usize;
        for rec in b.records.iter().filter(|x| x.admissible) {
            let ok = cfg.instance(rec.instance_seed).ok().and_then(|t| {
                let steps = naive::arrangement_steps(t.a1(), t.a2(), t.a3()).ok()?;
                let all_hold = steps.iter().all(|(b, a)| a <= b);
                let worst = steps.iter().map(|(b, a)| *b as i64 - *a as i64).min()?;
                let lhs = rec.lhs? as i64;
                let rhs: i64 = rec.rhs.as_ref()?.strip_suffix("/1")?.parse().ok()?;
                Some(all_hold && lhs - rhs == worst && steps.iter().any(|(b, _)| *b as i64 == lhs))
            });
            if ok != Some(true) {
                mismatches += 1;
            }
        }
        r.check(mismatches == 0, format!("dim {dim}: brute-force recount agrees on every trial ({mismatches} mismatches)"));
    }
    within(r, start, 600);
}

fn lower_bound_suites(r: &mut CriterionResult, out: &Path) {
    for lemma in [LemmaId::Dim3, LemmaId::Mixed] {
        let cfg = BatchConfig::new(lemma, SEED, 1000);
        let Some(b) = batch(r, &cfg, out) else { continue };
        let s = b.summary();
        r.check(
            s.admissible == 1000 && s.violations == 0,
            format!(
                "lemma {lemma}: {} admissible, {} violations, min margin {}",
                s.admissible,
                s.violations,
                s.min_margin.as_deref().unwrap_or("n/a")
            ),
        );
    }
    let runs: [(usize, usize, usize, bool); 3] = [(4, 1100, 3000, true), (4, 4771, 8000, false), (5, 2651, 3000, false)];
    for (dim, lo, hi, stated) in runs {
        let mut cfg = BatchConfig::new(LemmaId::Dim4, SEED, 50);
        cfg.dim = dim;
        cfg.min_size = Some(lo);
        cfg.max_size = Some(hi);
        let Some(b) = batch(r, &cfg, out) else { continue };
        let s = b.summary();
        let what = format!(
            "lemma 2.6 dim {dim}, #A3 in [{lo},{hi}]{}: {} admissible of 50, {} violations, min margin {}",
            if stated { "" } else { " (supplementary)" },
            s.admissible,
            s.violations,
            s.min_margin.as_deref().unwrap_or("n/a")
        );
        r.check(s.admissible == 50 && s.violations == 0, what);
        if stated && s.admissible < 50 {
            r.note(
                "an integrally convex set with longest chain L has at most L^d points; \
                 530 L < #A3 in dim 4 then forces #A3 >= 4771",
            );
            if let Some(rec) = b.records.first() {
                r.note(format!("first trial failed hypotheses: {:?}", rec.failed));
            }
        }
    }
}

// ---- bounds ----

fn surface(k2: i64, chi: i64) -> Invariants {
    Invariants::Surface(SurfaceInvariants::new(k2, Some(chi), SurfaceFlags::default()).expect("valid invariants"))
}

fn positive(v: MarginVariant, k2: i64, chi: i64) -> bool {
    decomposability_margin(v, &surface(k2, chi)).map(|m| m.margin.is_positive()).unwrap_or(false)
}

/// Does `v` stay positive on every `K^2 <= 9 chi` for `chi` in the range?
fn first_failure(v: MarginVariant, chis: std::ops::RangeInclusive<i64>) -> Option<(i64, i64)> {
    chis.flat_map(|chi| (1..=9 * chi).map(move |k2| (k2, chi))).find(|&(k2, chi)| !positive(v, k2, chi))
}

fn thresholds(r: &mut CriterionResult) {
    let start = Instant::now();
    let f = first_failure(MarginVariant::Lemma74, 8..=200);
    r.check(f.is_none(), format!("lemma7.4 positive for K2 <= 9 chi, chi in [8,200] (first failure {f:?})"));
    let gov = decomposability_margin(MarginVariant::Lemma74, &surface(63, 7));
    r.check(
        gov.as_ref().map(|m| !m.margin.is_positive()).unwrap_or(false),
        format!("lemma7.4 fails at (63,7): margin {}", gov.map(|m| render(&m.margin)).unwrap_or_default()),
    );
    let f = first_failure(MarginVariant::Prop63, 14..=200);
    r.check(f.is_none(), format!("prop6.3 positive for chi in [14,200] (first failure {f:?})"));
    r.check(!positive(MarginVariant::Prop63, 117, 13), "prop6.3 fails at K2=117, chi=13");
    let f = first_failure(MarginVariant::Lemma72, 3..=200);
    r.check(f.is_none() && !positive(MarginVariant::Lemma72, 1, 2), format!("lemma7.2 threshold chi >= 3 (first failure above {f:?})"));
    r.check(positive(MarginVariant::Lemma76_12, 4, 1), "lemma7.6-12 positive at (4,1)");
    r.check(positive(MarginVariant::Lemma76_16, 2, 1), "lemma7.6-16 positive at (2,1)");
    within(r, start, 60);
}

fn universal(r: &mut CriterionResult) {
    let start = Instant::now();
    let eps = lemma_lab::formulas::epsilon();
    match universal_n(&eps) {
        Ok(c) => {
            r.note(format!("n_star = {}", c.n_star));
            r.check(render(&c.leading_coefficient) == "1/9540", format!("leading coefficient {}", render(&c.leading_coefficient)));
            r.check(c.chain_min_n == 20 && c.n_star >= 20, format!("chain condition n >= {}", c.chain_min_n));
            r.check(c.checks.iter().all(|x| x.holds), "all endpoint sign checks hold at n_star");
            r.check(
                c.minimality.n + 1 == c.n_star && !c.minimality.failed.is_empty(),
                format!("n = {} fails: {:?}", c.minimality.n, c.minimality.failed),
            );
        }
        Err(e) => r.fail(e.to_string()),
    }
    match threefold_constant() {
        Ok(c) => r.check(c.above_example_floor() && !c.trail.is_empty(), format!("c = {} >= 25 with {} trail steps", c.c, c.trail.len())),
        Err(e) => r.fail(e.to_string()),
    }
    within(r, start, 60);
}

#[derive(Deserialize)]
struct GoldenBound {
    name: String,
    invariants: SurfaceInvariants,
    value: Option<String>,
    source: Option<String>,
}

fn table(r: &mut CriterionResult) {
    let cases: Vec<GoldenBound> =
        serde_json::from_str(include_str!("../../bounds/golden/surface_bounds.json")).expect("golden table parses");
    for c in cases {
        let got = surface_bound(&c.invariants);
        let (v, s) = match &got {
            Ok(b) => (b.value.as_ref().map(render), b.source.clone()),
            Err(e) => (Some(format!("error: {e}")), None),
        };
        r.check(
            v == c.value && s == c.source,
            format!("{}: {} ({})", c.name, v.as_deref().unwrap_or("none"), s.as_deref().unwrap_or("none")),
        );
    }
}

// ---- oracles ----

fn random_set(rng: &mut ChaCha8Rng, dim: usize) -> LatticeSet {
    let n = rng.gen_range(1..=50);
    let span = rng.gen_range(1..=5);
    let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..dim).map(|_| rng.gen_range(-span..=span)).collect()).collect();
    LatticeSet::from_rows(&rows).expect("rows share a dimension")
}

fn oracles(r: &mut CriterionResult) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut bad = [0usize; 4];
    for _ in 0..500 {
        let dim = rng.gen_range(1..=4);
        let a = random_set(&mut rng, dim);
        let b = random_set(&mut rng, dim);
        let m = midpoint_set(&a, &b).map(|h| naive::halves_of_doubled(h.doubled()));
        bad[0] += usize::from(m.ok() != Some(naive::midpoints(&a, &b)));
        bad[1] += usize::from(longest_chain(&a).ok() != Some(naive::longest_chain(&a)));
        for axis in 0..dim {
            bad[2] += usize::from(arrangement(&a, axis).ok() != naive::arrangement(&a, axis).ok());
        }
        // Nested triple from prefixes of one random set.
        let pts = a.points();
        let i = rng.gen_range(1..=pts.len());
        let j = rng.gen_range(i..=pts.len());
        let a1 = LatticeSet::new(pts[..i].to_vec()).expect("prefix");
        let a2 = LatticeSet::new(pts[..j].to_vec()).expect("prefix");
        let t = ConvexTriple::new(a1, a2, a.clone()).expect("prefixes are nested");
        bad[3] += usize::from(union_count(&t).ok() != Some(naive::union_count(t.a1(), t.a2(), t.a3())));
    }
    for (name, n) in ["midpoint_set", "longest_chain", "arrangement", "union_count"].iter().zip(bad) {
        r.check(n == 0, format!("{name}: {n} disagreements on 500 random sets"));
    }
}

/// Default output location for acceptance artifacts.
pub fn default_out() -> PathBuf {
    crate::output_dir(None).join("acceptance")
}
