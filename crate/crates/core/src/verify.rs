//! Exhaustive checks of the comparison theorems over small parameter grids.
//!
//! Assertion suites collect counterexamples; report-only suites collect
//! findings and never fail.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::afunction::{a_value, AContext};
use crate::blocks::{
    canonical_rep, cm_blocks_jclass, cm_blocks_kappa, cm_blocks_l2, cm_blocks_regular, glen_blocks,
    irr_glen_labels, stabilizer_order, BlockPartition,
};
use crate::error::{Error, Result};
use crate::orders::{block_lift, AlcoveOrder, WallPreorder};
use crate::params::{alcove_rep, git_walls, theta_to_h, wall_adjacent_alcoves_l2, wall_m_l2, Alcove, ParamH, Sign};
use crate::partition::{act_sym_q, dominance_compare, enumerate_multipartitions, partitions, Multipartition, Permutation, Verdict};
use crate::poset::{quotient_by_group, FinitePoset, GroupAction};
use crate::rational::Rational;
use crate::symbols::{kappa, min_size_all, n_value_of_seq, KappaSequence};
use crate::tau::{act_charge, core_by_rim_hooks, ell_core, tau, tau_inverse, Charge, ResidueSet};

/// Every suite name accepted by [`verify`].
pub const SUITES: &[&str] = &[
    "thm-kappa-tau",
    "thm-kappa-N",
    "thm-kappa-a",
    "tau-roundtrip",
    "tau-equivariance",
    "tau-transpose",
    "kappa-sum-const",
    "kappa-equivariance",
    "adjacent-swap-N",
    "alcove-kappa-dict",
    "lemma-halfstep",
    "blocks-zigzag",
    "blocks-regular-singleton",
    "s-stability",
    "jclass-vs-kappa",
    "wall-converse",
    "glen-counts",
    "poset-quotient",
];

const REPORT_ONLY: &[&str] = &["s-stability", "jclass-vs-kappa"];
const LEVEL_TWO: &[&str] =
    &["thm-kappa-a", "lemma-halfstep", "blocks-zigzag", "blocks-regular-singleton", "s-stability", "jclass-vs-kappa", "wall-converse"];

pub fn is_report_only(suite: &str) -> bool {
    REPORT_ONLY.contains(&suite)
}

/// The parameter grid a suite runs over.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Grid {
    pub levels: Vec<usize>,
    pub max_n: u32,
    /// Bound on `|s_i|` for integer charges.
    pub charge_bound: i64,
    pub e: Option<usize>,
    pub seed: u64,
}

impl Grid {
    /// Default grid of a suite.
    pub fn default_for(suite: &str) -> Grid {
        let levels = if LEVEL_TWO.contains(&suite) {
            vec![2]
        } else if suite == "glen-counts" {
            vec![2, 3, 4]
        } else {
            vec![2, 3]
        };
        let max_n = match suite {
            "thm-kappa-a" => 3,
            "s-stability" | "wall-converse" => 5,
            "glen-counts" => 3,
            _ => 4,
        };
        let charge_bound = if suite == "tau-roundtrip" { 3 } else { 2 };
        Grid { levels, max_n, charge_bound, e: None, seed: 0 }
    }
}

/// Outcome of one suite run.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub grid: Grid,
    pub report_only: bool,
    pub cases: u64,
    pub counterexamples: Vec<String>,
    pub findings: Vec<String>,
    #[serde(serialize_with = "millis")]
    pub elapsed: Duration,
}

fn millis<S: Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u128(d.as_millis())
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.report_only || self.counterexamples.is_empty()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match (self.report_only, self.counterexamples.is_empty()) {
            (true, _) => "REPORT",
            (false, true) => "PASS",
            (false, false) => "FAIL",
        };
        writeln!(
            f,
            "{}: {status} ({} cases, {} counterexamples, {:.2}s)",
            self.suite,
            self.cases,
            self.counterexamples.len(),
            self.elapsed.as_secs_f64()
        )?;
        for c in &self.counterexamples {
            writeln!(f, "  counterexample: {c}")?;
        }
        for c in &self.findings {
            writeln!(f, "  {c}")?;
        }
        Ok(())
    }
}

#[derive(Default)]
struct Tally {
    cases: u64,
    bad: Vec<String>,
    notes: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.bad.push(what());
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.cases += other.cases;
        self.bad.extend(other.bad);
        self.notes.extend(other.notes);
        self
    }
}

fn fan<T: Sync>(items: &[T], f: impl Fn(&T) -> Result<Tally> + Sync + Send) -> Result<Tally> {
    items.par_iter().map(f).try_reduce(Tally::default, |a, b| Ok(a.merge(b)))
}

/// Runs a suite over a grid.
pub fn verify(suite: &str, grid: &Grid) -> Result<VerifyReport> {
    if !SUITES.contains(&suite) {
        return Err(Error::UnknownSuite(suite.to_string()));
    }
    if LEVEL_TWO.contains(&suite) {
        if let Some(&l) = grid.levels.iter().find(|&&l| l != 2) {
            return Err(Error::WrongLevel(l));
        }
    }
    if grid.levels.contains(&0) {
        return Err(Error::Invalid("levels must be positive".into()));
    }
    let start = Instant::now();
    let tally = match suite {
        "thm-kappa-tau" => thm_kappa_tau(grid),
        "thm-kappa-N" => thm_kappa_n(grid),
        "thm-kappa-a" => thm_kappa_a(grid),
        "tau-roundtrip" => tau_roundtrip(grid),
        "tau-equivariance" => tau_equivariance(grid),
        "tau-transpose" => tau_transpose(grid),
        "kappa-sum-const" => kappa_sum_const(grid),
        "kappa-equivariance" => kappa_equivariance(grid),
        "adjacent-swap-N" => adjacent_swap_n(grid),
        "alcove-kappa-dict" => alcove_kappa_dict(grid),
        "lemma-halfstep" => lemma_halfstep(grid),
        "blocks-zigzag" => blocks_zigzag(grid),
        "blocks-regular-singleton" => blocks_regular_singleton(grid),
        "s-stability" => s_stability(grid),
        "jclass-vs-kappa" => jclass_vs_kappa(grid),
        "wall-converse" => wall_converse(grid),
        "glen-counts" => glen_counts(grid),
        "poset-quotient" => poset_quotient(grid),
        _ => unreachable!(),
    }?;
    let mut counterexamples = tally.bad;
    counterexamples.sort();
    let mut findings = tally.notes;
    findings.sort();
    Ok(VerifyReport {
        suite: suite.to_string(),
        grid: grid.clone(),
        report_only: is_report_only(suite),
        cases: tally.cases,
        counterexamples,
        findings,
        elapsed: start.elapsed(),
    })
}

fn q(p: i64, d: i64) -> Rational {
    Rational::new(p, d)
}

/// `m = (0, m^1, …)` with `m^i` drawn from a fixed list with denominators
/// 1, 2, 3 and 10.
pub fn m_grid(l: usize) -> Vec<Vec<Rational>> {
    let values = [q(-1, 1), q(-1, 2), q(0, 1), q(1, 3), q(1, 2), q(9, 10), q(1, 1), q(2, 1)];
    let mut out = vec![vec![Rational::ZERO]];
    for _ in 1..l {
        out = out
            .into_iter()
            .flat_map(|v| {
                values.iter().map(move |&x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

fn fmt_m(m: &[Rational]) -> String {
    crate::rational::format_list(m)
}

fn kappas(ps: &[Multipartition], m: &[Rational], s: i64) -> Result<Vec<KappaSequence>> {
    ps.iter().map(|x| kappa(x, m, s)).collect()
}

fn level_n_grid(grid: &Grid) -> Vec<(usize, u32)> {
    grid.levels.iter().flat_map(|&l| (0..=grid.max_n).map(move |n| (l, n))).collect()
}

/// `m^i = −s_i − i/ℓ` and `m^i = s_{ℓ−1−i} − i/ℓ`.
fn theorem_ms(s: &Charge) -> (Vec<Rational>, Vec<Rational>) {
    let l = s.level();
    let shift = |i: usize| q(i as i64, l as i64);
    let plain = (0..l).map(|i| -s.get(i) - shift(i)).collect();
    let barred = (0..l).map(|i| s.get(l - 1 - i) - shift(i)).collect();
    (plain, barred)
}

fn thm_kappa_tau(grid: &Grid) -> Result<Tally> {
    let cfgs: Vec<(usize, u32, Charge)> = level_n_grid(grid)
        .into_iter()
        .flat_map(|(l, n)| Charge::integral_grid(l, grid.charge_bound).into_iter().map(move |s| (l, n, s)))
        .collect();
    fan(&cfgs, |(l, n, s)| {
        let ps = enumerate_multipartitions(*l, *n);
        let plain: Vec<_> = ps.iter().map(|x| tau(s, &x.transpose())).collect::<Result<_>>()?;
        let barred: Vec<_> = ps.iter().map(|x| tau(s, &x.bar().transpose())).collect::<Result<_>>()?;
        let (m_plain, m_barred) = theorem_ms(s);
        let mut t = Tally::default();
        for (taus, m, flip) in [(&plain, &m_plain, true), (&barred, &m_barred, false)] {
            let base = min_size_all(&ps, m);
            for size in base..=base + 2 {
                let ks = kappas(&ps, m, size)?;
                for i in 0..ps.len() {
                    for j in 0..ps.len() {
                        let tv = dominance_compare(taus[i].parts(), taus[j].parts()) == Verdict::Less;
                        let kv = if flip { ks[j].compare(&ks[i]) } else { ks[i].compare(&ks[j]) } == Verdict::Less;
                        t.check(tv == kv, || {
                            format!(
                                "{} s=({s}) m=({}) size={size} λ={} μ={}: τ-less={tv} κ-less={kv}",
                                if flip { "part 4" } else { "part 3" },
                                fmt_m(m),
                                ps[i],
                                ps[j]
                            )
                        });
                    }
                }
            }
        }
        Ok(t)
    })
}

fn thm_kappa_n(grid: &Grid) -> Result<Tally> {
    let cfgs: Vec<(usize, u32, Vec<Rational>)> = level_n_grid(grid)
        .into_iter()
        .flat_map(|(l, n)| m_grid(l).into_iter().map(move |m| (l, n, m)))
        .collect();
    fan(&cfgs, |(l, n, m)| {
        let ps = enumerate_multipartitions(*l, *n);
        let size = min_size_all(&ps, m);
        let ks = kappas(&ps, m, size)?;
        let ns: Vec<Rational> = ks.iter().map(|k| n_value_of_seq(*l, k.entries())).collect::<Result<_>>()?;
        let mut t = Tally::default();
        for i in 0..ps.len() {
            for j in 0..ps.len() {
                if ks[i].compare(&ks[j]) == Verdict::Less {
                    t.check(ns[i] < ns[j], || {
                        format!("m=({}) size={size} λ={} μ={}: N={} vs {}", fmt_m(m), ps[i], ps[j], ns[i], ns[j])
                    });
                }
            }
        }
        Ok(t)
    })
}

fn thm_kappa_a(grid: &Grid) -> Result<Tally> {
    let ms = [[0, 0], [1, 0], [2, 0], [4, 0]].map(|[a, b]| vec![q(a, 2), q(b, 2)]);
    let cfgs: Vec<(u32, Vec<Rational>)> =
        (0..=grid.max_n).flat_map(|n| ms.iter().cloned().map(move |m| (n, m))).collect();
    fan(&cfgs, |(n, m)| {
        let ps = enumerate_multipartitions(2, *n);
        let size = min_size_all(&ps, m);
        let ks = kappas(&ps, m, size)?;
        let ctx = AContext::intrinsic(m.clone(), Rational::ONE)?;
        let a: Vec<Rational> = ps.iter().map(|x| a_value(x, &ctx)).collect::<Result<_>>()?;
        let mut t = Tally::default();
        for i in 0..ps.len() {
            for j in 0..ps.len() {
                if ks[i].compare(&ks[j]) == Verdict::Less {
                    t.check(a[i] > a[j], || format!("m=({}) λ={} μ={}: a={} vs {}", fmt_m(m), ps[i], ps[j], a[i], a[j]));
                }
            }
        }
        Ok(t)
    })
}

fn tau_roundtrip(grid: &Grid) -> Result<Tally> {
    let cfgs: Vec<(usize, u32, Charge)> = level_n_grid(grid)
        .into_iter()
        .flat_map(|(l, n)| Charge::integral_grid(l, grid.charge_bound).into_iter().map(move |s| (l, n, s)))
        .collect();
    let mut tally = fan(&cfgs, |(l, n, s)| {
        let core = ell_core(s)?;
        let mut t = Tally::default();
        t.check(core_by_rim_hooks(&core, *l as u32) == core, || format!("ν at s=({s}) is not an ℓ-core"));
        for x in enumerate_multipartitions(*l, *n) {
            let rho = tau(s, &x)?;
            let (s2, x2) = tau_inverse(*l, &rho);
            t.check(s2 == *s && x2 == x, || format!("τ⁻¹τ at s=({s}) λ={x} gave ({s2}) {x2}"));
            t.check(rho.weight() == *l as u32 * n + core.weight(), || {
                format!("weight law at s=({s}) λ={x}: |ρ|={}", rho.weight())
            });
            t.check(core_by_rim_hooks(&rho, *l as u32) == core, || format!("core law at s=({s}) λ={x}"));
        }
        Ok(t)
    })?;
    let sizes: Vec<(usize, u32)> = grid.levels.iter().flat_map(|&l| (0..=12).map(move |k| (l, k))).collect();
    let back = fan(&sizes, |&(l, k)| {
        let mut t = Tally::default();
        for rho in partitions(k) {
            let (s, x) = tau_inverse(l, &rho);
            let again = tau(&s, &x)?;
            t.check(again == rho, || format!("ττ⁻¹ at ℓ={l} ρ={rho} gave {again}"));
        }
        Ok(t)
    })?;
    tally = tally.merge(back);
    Ok(tally)
}

/// Integer charges together with their images under `S_ℓ`.
fn charge_orbit_grid(l: usize, bound: i64) -> Vec<Charge> {
    let mut out: BTreeSet<Vec<Rational>> = BTreeSet::new();
    for s in Charge::integral_grid(l, bound) {
        for w in Permutation::all(l) {
            out.insert(act_charge(&w, &s).components().to_vec());
        }
    }
    out.into_iter().map(|v| Charge::new(v).expect("images of charges are charges")).collect()
}

fn tau_equivariance(grid: &Grid) -> Result<Tally> {
    let cfgs: Vec<(usize, u32, Charge)> = level_n_grid(grid)
        .into_iter()
        .flat_map(|(l, n)| charge_orbit_grid(l, grid.charge_bound).into_iter().map(move |s| (l, n, s)))
        .collect();
    fan(&cfgs, |(l, n, s)| {
        let mut t = Tally::default();
        let ws = Permutation::all(*l);
        for x in enumerate_multipartitions(*l, *n) {
            let base = tau(s, &x)?;
            for w in &ws {
                let moved = tau(&act_charge(w, s), &x.act(w))?;
                t.check(moved == base, || format!("w={w} s=({s}) λ={x}: {moved} vs {base}"));
            }
        }
        for a in &ws {
            for b in &ws {
                let lhs = act_charge(&a.compose(b), s);
                let rhs = act_charge(a, &act_charge(b, s));
                t.check(lhs == rhs, || format!("action law fails for {a}, {b} at s=({s})"));
            }
        }
        Ok(t)
    })
}

fn tau_transpose(grid: &Grid) -> Result<Tally> {
    let cfgs: Vec<(usize, u32, Charge)> = level_n_grid(grid)
        .into_iter()
        .flat_map(|(l, n)| charge_orbit_grid(l, grid.charge_bound).into_iter().map(move |s| (l, n, s)))
        .collect();
    fan(&cfgs, |(l, n, s)| {
        let mut t = Tally::default();
        for x in enumerate_multipartitions(*l, *n) {
            let lhs = tau(&s.bar(), &x.bar())?;
            let rhs = tau(s, &x)?.transpose();
            t.check(lhs == rhs, || format!("s=({s}) λ={x}: τ(s̄,λ̄)={lhs}, ᵗτ={rhs}"));
        }
        Ok(t)
    })
}

fn kappa_sum_const(grid: &Grid) -> Result<Tally> {
    let cfgs: Vec<(usize, u32, Vec<Rational>)> = level_n_grid(grid)
        .into_iter()
        .flat_map(|(l, n)| m_grid(l).into_iter().map(move |m| (l, n, m)))
        .collect();
    fan(&cfgs, |(l, n, m)| {
        let ps = enumerate_multipartitions(*l, *n);
        let base = min_size_all(&ps, m);
        let mut t = Tally::default();
        for size in base..=base + 1 {
            let sums: Vec<Rational> = kappas(&ps, m, size)?.iter().map(|k| k.entries.total()).collect();
            for (x, sum) in ps.iter().zip(&sums) {
                t.check(*sum == sums[0], || format!("m=({}) size={size} λ={x}: Σκ={sum} vs {}", fmt_m(m), sums[0]));
            }
        }
        Ok(t)
    })
}

fn kappa_equivariance(grid: &Grid) -> Result<Tally> {
    let cfgs: Vec<(usize, u32, Vec<Rational>)> = level_n_grid(grid)
        .into_iter()
        .flat_map(|(l, n)| m_grid(l).into_iter().map(move |m| (l, n, m)))
        .collect();
    fan(&cfgs, |(l, n, m)| {
        let ps = enumerate_multipartitions(*l, *n);
        let size = min_size_all(&ps, m);
        let mut t = Tally::default();
        for w in Permutation::all(*l) {
            let wm = act_sym_q(&w, m);
            for x in &ps {
                let a = kappa(x, m, size)?;
                let b = kappa(&x.act(&w), &wm, size)?;
                t.check(a == b, || format!("w={w} m=({}) λ={x}: κ={a} vs {b}", fmt_m(m)));
            }
        }
        Ok(t)
    })
}

fn adjacent_swap_n(grid: &Grid) -> Result<Tally> {
    let cfgs: Vec<(usize, u32, Vec<Rational>)> = level_n_grid(grid)
        .into_iter()
        .filter(|&(_, n)| n <= 3)
        .flat_map(|(l, n)| m_grid(l).into_iter().map(move |m| (l, n, m)))
        .collect();
    let alphas = [q(1, 10), q(1, 3), q(1, 2), q(1, 1)];
    let mut t = fan(&cfgs, |(l, n, m)| {
        let ps = enumerate_multipartitions(*l, *n);
        let size = min_size_all(&ps, m);
        let mut t = Tally::default();
        for k in kappas(&ps, m, size)? {
            let e = k.entries();
            let base = n_value_of_seq(*l, e)?;
            for i in 0..e.len() {
                for j in i + 1..e.len() {
                    for &alpha in &alphas {
                        let mut moved = e.to_vec();
                        moved[i] += alpha;
                        moved[j] -= alpha;
                        if moved[j].is_negative() || moved.windows(2).any(|w| w[0] < w[1]) {
                            continue;
                        }
                        let after = n_value_of_seq(*l, &moved)?;
                        let integral = alpha.is_integer() && e.iter().all(|x| x.is_integer());
                        let ok = if integral { after > base } else { after >= base };
                        t.check(ok, || format!("κ={k} i={i} j={j} α={alpha}: N {base} → {after}"));
                        if after == base {
                            t.notes.push(format!("κ={k} i={i} j={j} α={alpha}: N stays {base}"));
                        }
                    }
                }
            }
        }
        Ok(t)
    })?;
    let flat = t.notes.len();
    t.notes.sort();
    t.notes.dedup();
    t.notes.truncate(20);
    t.notes.push(format!(
        "summary: N is unchanged by {flat} of {} transfers, all between entries sharing an integer part",
        t.cases
    ));
    Ok(t)
}

/// The `m` attached by the alcove/κ dictionary to `α(s, w, ±)`, and whether
/// `◁_θ` agrees with κ-dominance (`+`) or with its reverse (`−`).
pub fn dictionary_m(a: &Alcove) -> (Vec<Rational>, bool) {
    let (plain, barred) = theorem_ms(&a.s);
    match a.sign {
        Sign::Plus => (act_sym_q(&a.w.inverse(), &plain), true),
        Sign::Minus => {
            let w0 = Permutation::longest(a.level());
            let conj = w0.compose(&a.w).compose(&w0);
            (act_sym_q(&conj.inverse(), &barred), false)
        }
    }
}

fn alcove_kappa_dict(grid: &Grid) -> Result<Tally> {
    let mut cfgs = Vec::new();
    for &l in &grid.levels {
        for s in Charge::integral_grid(l, grid.charge_bound) {
            for w in Permutation::all(l) {
                for sign in [Sign::Plus, Sign::Minus] {
                    cfgs.push(Alcove::new(s.clone(), w.clone(), sign)?);
                }
            }
        }
    }
    fan(&cfgs, |a| {
        let (m, same) = dictionary_m(a);
        let mut t = Tally::default();
        for n in 0..=grid.max_n {
            let order = AlcoveOrder::new(a, n)?;
            let ps = &order.ground;
            let size = min_size_all(ps, &m);
            let ks = kappas(ps, &m, size)?;
            for i in 0..ps.len() {
                for j in 0..ps.len() {
                    let ov = order.less(i, j);
                    let kv = if same { ks[i].compare(&ks[j]) } else { ks[j].compare(&ks[i]) } == Verdict::Less;
                    t.check(ov == kv, || format!("{a} m=({}) λ={} μ={}: ◁_θ={ov} κ={kv}", fmt_m(&m), ps[i], ps[j]));
                }
            }
        }
        Ok(t)
    })
}

const WALLS: std::ops::RangeInclusive<i64> = -2..=2;

/// Connected components of `members` under a symmetric step relation.
fn components(members: &[usize], step: impl Fn(usize, usize) -> bool) -> usize {
    let mut seen = vec![false; members.len()];
    let mut count = 0;
    for start in 0..members.len() {
        if seen[start] {
            continue;
        }
        count += 1;
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(a) = stack.pop() {
            for b in 0..members.len() {
                if !seen[b] && step(members[a], members[b]) {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
    }
    count
}

fn wall_cfgs(grid: &Grid) -> Vec<(i64, u32)> {
    WALLS.flat_map(|d| (0..=grid.max_n).map(move |n| (d, n))).collect()
}

fn lemma_halfstep(grid: &Grid) -> Result<Tally> {
    fan(&wall_cfgs(grid), |&(d, n)| {
        let ps = enumerate_multipartitions(2, n);
        let m = wall_m_l2(Rational::from(d));
        let up = vec![m[0] + q(1, 2), m[1]];
        let down = vec![m[0] - q(1, 2), m[1]];
        let size = [&m, &up, &down].iter().map(|x| min_size_all(&ps, x)).max().unwrap().max(n as i64 + 1);
        let blocks = cm_blocks_l2(n, &m, size)?;
        let ku = kappas(&ps, &up, size)?;
        let kd = kappas(&ps, &down, size)?;
        let step = |a: usize, b: usize| {
            let vu = ku[a].compare(&ku[b]);
            let vd = kd[b].compare(&kd[a]);
            vu.is_strict() && vu == vd
        };
        let mut t = Tally::default();
        for class in &blocks.classes {
            let parts = components(class, step);
            t.check(parts == 1, || {
                let names: Vec<String> = class.iter().map(|&i| ps[i].to_string()).collect();
                format!("d={d} n={n} size={size}: block {{{}}} splits into {parts} pieces", names.join(", "))
            });
        }
        Ok(t)
    })
}

fn blocks_zigzag(grid: &Grid) -> Result<Tally> {
    fan(&wall_cfgs(grid), |&(d, n)| {
        let ps = enumerate_multipartitions(2, n);
        let m = wall_m_l2(Rational::from(d));
        let blocks = cm_blocks_l2(n, &m, min_size_all(&ps, &m).max(n as i64 + 1))?;
        let (a, b) = wall_adjacent_alcoves_l2(Rational::from(d))?;
        let oa = AlcoveOrder::on(&a, ps.clone())?;
        let ob = AlcoveOrder::on(&b, ps.clone())?;
        let step = |x: usize, y: usize| (oa.less(x, y) || ob.less(x, y)) && (oa.less(y, x) || ob.less(y, x));
        let mut t = Tally::default();
        for class in &blocks.classes {
            let parts = components(class, step);
            t.check(parts == 1, || {
                let names: Vec<String> = class.iter().map(|&i| ps[i].to_string()).collect();
                format!("d={d} n={n}: block {{{}}} splits into {parts} zigzag pieces", names.join(", "))
            });
        }
        Ok(t)
    })
}

fn blocks_regular_singleton(grid: &Grid) -> Result<Tally> {
    let mut hs: Vec<Rational> = Vec::new();
    for den in [1, 2, 3, 10] {
        for num in -4 * den..=4 * den {
            hs.push(q(num, den));
        }
    }
    hs.sort();
    hs.dedup();
    let cfgs: Vec<(u32, Rational)> =
        (1..=grid.max_n).flat_map(|n| hs.iter().map(move |&h1| (n, h1))).collect();
    let mut tally = fan(&cfgs, |&(n, h1)| {
        let h = ParamH::new(Rational::ONE, vec![h1]);
        let m = vec![Rational::ZERO, h1];
        let ps = enumerate_multipartitions(2, n);
        let blocks = cm_blocks_kappa(2, n, &m, min_size_all(&ps, &m))?;
        let singletons = blocks.len() == ps.len();
        let regular = git_walls(&h, n).is_empty();
        let mut t = Tally::default();
        t.check(regular == singletons, || {
            format!("n={n} h=({h}): regular={regular} but κ-blocks singletons={singletons}")
        });
        Ok(t)
    })?;
    let mut alcoves = Vec::new();
    for l in [2usize, 3] {
        for s in Charge::integral_grid(l, 2) {
            for w in Permutation::all(l) {
                for sign in [Sign::Plus, Sign::Minus] {
                    alcoves.push(Alcove::new(s.clone(), w.clone(), sign)?);
                }
            }
        }
    }
    let reps = fan(&alcoves, |a| {
        let h = theta_to_h(&alcove_rep(a));
        let mut t = Tally::default();
        for n in 1..=grid.max_n {
            t.check(git_walls(&h, n).is_empty(), || format!("representative of {a} lies on a wall for n={n}"));
        }
        Ok(t)
    })?;
    tally = tally.merge(reps);
    Ok(tally)
}

fn s_stability(grid: &Grid) -> Result<Tally> {
    let cfgs: Vec<(u32, Vec<Rational>)> =
        (0..=grid.max_n).flat_map(|n| m_grid(2).into_iter().map(move |m| (n, m))).collect();
    let t = fan(&cfgs, |(n, m)| {
        let ps = enumerate_multipartitions(2, *n);
        let base = min_size_all(&ps, m);
        let mut t = Tally::default();
        for size in base..base + 3 {
            let a = kappas(&ps, m, size)?;
            let b = kappas(&ps, m, size + 1)?;
            for i in 0..ps.len() {
                for j in 0..ps.len() {
                    t.cases += 1;
                    if a[i].compare(&a[j]) != b[i].compare(&b[j]) {
                        t.notes.push(format!("m=({}) sizes {size},{} λ={} μ={} disagree", fmt_m(m), size + 1, ps[i], ps[j]));
                    }
                }
            }
        }
        Ok(t)
    })?;
    let mut t = t;
    let disagree = t.notes.len();
    t.notes.push(format!("summary: {disagree} disagreements over {} comparisons", t.cases));
    Ok(t)
}

fn jclass_vs_kappa(grid: &Grid) -> Result<Tally> {
    fan(&wall_cfgs(grid), |&(d, n)| {
        let ps = enumerate_multipartitions(2, n);
        let m = wall_m_l2(Rational::from(d));
        let target = cm_blocks_l2(n, &m, min_size_all(&ps, &m))?;
        let mut t = Tally::default();
        let mut hits = Vec::new();
        for s in Charge::integral_grid(2, grid.charge_bound) {
            for j in ResidueSet::all(2) {
                t.cases += 1;
                if cm_blocks_jclass(2, n, &s, &j)?.classes == target.classes {
                    let js: Vec<String> = j.residues.iter().map(ToString::to_string).collect();
                    hits.push(format!("(s=({s}), J={{{}}})", js.join(",")));
                }
            }
        }
        t.notes.push(format!("d={d:+} n={n}: {} κ-blocks; matching J-class data: {}", target.len(), if hits.is_empty() { "none".to_string() } else { hits.join(" ") }));
        Ok(t)
    })
}

fn wall_converse(grid: &Grid) -> Result<Tally> {
    let control = (
        Multipartition::parse_json("[[],[3,2]]")?,
        Multipartition::parse_json("[[2,2,1],[]]")?,
    );
    fan(&wall_cfgs(grid), |&(d, n)| {
        let ps = enumerate_multipartitions(2, n);
        let m = wall_m_l2(Rational::from(d));
        let blocks = cm_blocks_l2(n, &m, min_size_all(&ps, &m))?;
        let (a, b) = wall_adjacent_alcoves_l2(Rational::from(d))?;
        let w = WallPreorder::new(&[a.clone(), b.clone()], 2, n)?;
        let class = blocks.class_of();
        let mut t = Tally::default();
        let mut split = 0;
        for i in 0..ps.len() {
            for j in 0..ps.len() {
                let mutual = w.related(i, j) && w.related(j, i);
                if class[i] == class[j] {
                    t.check(mutual, || format!("d={d} n={n}: {} and {} share a block but are not mutually related", ps[i], ps[j]));
                } else if mutual && i < j {
                    split += 1;
                    if (&ps[i], &ps[j]) == (&control.0, &control.1) || (&ps[j], &ps[i]) == (&control.0, &control.1) {
                        t.notes.push(format!(
                            "d={d:+} n={n}: {} and {} are related both ways through {a} and {b} but lie in different κ-blocks at m=({})",
                            control.0,
                            control.1,
                            fmt_m(&m)
                        ));
                    }
                }
            }
        }
        let exist = block_lift(&w, &blocks, false)?;
        let univ = block_lift(&w, &blocks, true)?;
        let classes = exist.equivalence_classes().len();
        t.notes.push(format!(
            "d={d:+} n={n}: {} κ-blocks, {split} mutually related pairs across blocks, block preorder has {classes} classes (partial order: {}), universal lift {} the existential one",
            blocks.len(),
            exist.is_partial_order(),
            if univ.same_relation(&exist) { "equals" } else { "differs from" }
        ));
        Ok(t)
    })
}

/// Groups the blocks of `w` into orbits under the shift by `ℓ/e` components.
fn block_orbits(w: &BlockPartition, e: usize) -> Result<Vec<Vec<usize>>> {
    let sets: Vec<BTreeSet<Multipartition>> = w.labeled_classes().into_iter().map(|c| c.into_iter().collect()).collect();
    let mut key: BTreeMap<BTreeSet<Multipartition>, Vec<usize>> = BTreeMap::new();
    for (k, set) in sets.iter().enumerate() {
        let orbit_key: BTreeSet<Multipartition> =
            set.iter().map(|x| canonical_rep(x, e)).collect::<Result<_>>()?;
        key.entry(orbit_key).or_default().push(k);
    }
    Ok(key.into_values().collect())
}

fn glen_cfgs(grid: &Grid) -> Result<Vec<(usize, usize, u32)>> {
    let mut out = Vec::new();
    for &l in &grid.levels {
        let es: Vec<usize> = match grid.e {
            Some(e) if l % e != 0 => return Err(Error::BadDivisor { l, e }),
            Some(e) => vec![e],
            None => (1..=l).filter(|e| l % e == 0).collect(),
        };
        for e in es {
            for n in 1..=grid.max_n {
                out.push((l, e, n));
            }
        }
    }
    Ok(out)
}

fn factorial(n: u32) -> u128 {
    (1..=n as u128).product()
}

/// `n! / ∏ hooks` over all cells of all components.
fn dimension(lambda: &Multipartition) -> u128 {
    let hooks: u128 = lambda
        .components()
        .iter()
        .flat_map(|p| p.cells().map(move |(r, c)| p.hook(r, c) as u128))
        .product();
    factorial(lambda.weight()) / hooks
}

fn glen_counts(grid: &Grid) -> Result<Tally> {
    let cfgs = glen_cfgs(grid)?;
    fan(&cfgs, |&(l, e, n)| {
        let mut t = Tally::default();
        let labels = irr_glen_labels(l, e, n)?;
        let mut total = 0u128;
        for lab in &labels {
            let k = stabilizer_order(&lab.orbit, e)? as u128;
            let d = dimension(&lab.orbit);
            t.check(d.is_multiple_of(k), || format!("ℓ={l} e={e} n={n}: {k} does not divide dim {}", lab.orbit));
            total += (d / k) * (d / k);
        }
        let order = (l as u128).pow(n) * factorial(n) / e as u128;
        t.check(total == order, || format!("ℓ={l} e={e} n={n}: Σ dim² = {total}, |G| = {order}"));

        let mut wblocks = vec![cm_blocks_regular(l, n)];
        for s in [Charge::zero(l)] {
            for j in ResidueSet::all(l) {
                wblocks.push(cm_blocks_jclass(l, n, &s, &j)?);
            }
        }
        if l == 2 {
            let m = wall_m_l2(Rational::ZERO);
            let ps = enumerate_multipartitions(2, n);
            wblocks.push(cm_blocks_l2(n, &m, min_size_all(&ps, &m))?);
        }
        let all: BTreeSet<_> = labels.iter().cloned().collect();
        for w in &wblocks {
            let g = match glen_blocks(l, e, n, w) {
                Ok(g) => g,
                Err(Error::NotCeStable(_)) => continue,
                Err(err) => return Err(err),
            };
            let mut expected = 0;
            for orbit in block_orbits(w, e)? {
                let members = w.members(orbit[0]);
                expected += match members.as_slice() {
                    [x] if stabilizer_order(x, e)? > 1 => stabilizer_order(x, e)?,
                    _ => 1,
                };
            }
            let prov = format!("{:?}", w.provenance);
            t.check(g.len() == expected, || format!("ℓ={l} e={e} n={n} {prov}: {} classes, expected {expected}", g.len()));
            let flat: Vec<_> = g.classes.iter().flatten().cloned().collect();
            let covered: BTreeSet<_> = flat.iter().cloned().collect();
            t.check(flat.len() == covered.len() && covered == all, || {
                format!("ℓ={l} e={e} n={n} {prov}: classes do not partition the labels")
            });
        }
        Ok(t)
    })
}

/// A random partial order on `0..size` invariant under the cyclic group
/// generated by `gen`.
fn random_equivariant_poset(rng: &mut ChaCha8Rng, gen: &[usize]) -> FinitePoset<usize> {
    let size = gen.len();
    let action = GroupAction::cyclic(gen).expect("generator is a permutation");
    let orbits = action.orbits();
    let mut rank = vec![0usize; size];
    for o in &orbits {
        let r = rng.gen_range(0..4);
        for &x in o {
            rank[x] = r;
        }
    }
    let mut pairs = Vec::new();
    for x in 0..size {
        for y in 0..size {
            if rank[x] < rank[y] && rng.gen_bool(0.25) {
                for g in 0..action.order() {
                    pairs.push((action.act(g, x), action.act(g, y)));
                }
            }
        }
    }
    FinitePoset::from_pairs((0..size).collect(), pairs)
}

/// A permutation of at most 12 points made of cycles whose lengths divide
/// `k`.
fn random_generator(rng: &mut ChaCha8Rng, k: usize) -> Vec<usize> {
    let lengths: Vec<usize> = (1..=k).filter(|d| k.is_multiple_of(*d)).collect();
    let mut cycles = Vec::new();
    let mut used = 0;
    loop {
        let c = *lengths.choose(rng).unwrap();
        if used + c > 12 || (used > 0 && rng.gen_bool(0.2)) {
            break;
        }
        cycles.push(c);
        used += c;
    }
    let mut points: Vec<usize> = (0..used).collect();
    points.shuffle(rng);
    let mut gen = vec![0; used];
    let mut at = 0;
    for c in cycles {
        for i in 0..c {
            gen[points[at + i]] = points[at + (i + 1) % c];
        }
        at += c;
    }
    gen
}

fn orbit_rule(p: &FinitePoset<usize>, gen: &[usize]) -> FinitePoset<Vec<usize>> {
    let size = gen.len();
    let mut powers = vec![(0..size).collect::<Vec<_>>()];
    loop {
        let next: Vec<usize> = powers.last().unwrap().iter().map(|&x| gen[x]).collect();
        if next == powers[0] {
            break;
        }
        powers.push(next);
    }
    let mut orbit_of = vec![usize::MAX; size];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for x in 0..size {
        if orbit_of[x] == usize::MAX {
            let mut o: Vec<usize> = powers.iter().map(|pw| pw[x]).collect();
            o.sort_unstable();
            o.dedup();
            for &y in &o {
                orbit_of[y] = orbits.len();
            }
            orbits.push(o);
        }
    }
    let mut pairs = Vec::new();
    for (a, oa) in orbits.iter().enumerate() {
        for (b, ob) in orbits.iter().enumerate() {
            if oa.iter().any(|&x| ob.iter().any(|&y| powers.iter().any(|pw| p.le(x, pw[y])))) {
                pairs.push((a, b));
            }
        }
    }
    FinitePoset::from_pairs(orbits, pairs)
}

fn poset_quotient(grid: &Grid) -> Result<Tally> {
    let mut rng = ChaCha8Rng::seed_from_u64(grid.seed);
    let mut trials = Vec::new();
    for i in 0..200 {
        let k = [2, 3, 6][i % 3];
        let gen = random_generator(&mut rng, k);
        let p = random_equivariant_poset(&mut rng, &gen);
        trials.push((i, k, gen, p));
    }
    let seed = grid.seed;
    let mut t = fan(&trials, |(i, k, gen, p)| {
        let mut t = Tally::default();
        let tag = |law: &str| format!("seed={seed} trial={i} C_{k} gen={gen:?}: {law}");
        let action = GroupAction::cyclic(gen)?;
        let quot = quotient_by_group(p, &action)?;
        let direct = orbit_rule(p, gen);
        t.check(quot.elements() == direct.elements() && quot.same_relation(&direct), || tag("quotient differs from the orbit rule"));

        let trivial = quotient_by_group(p, &GroupAction::trivial(p.len()))?;
        t.check(trivial.same_relation(p), || tag("trivial quotient changes the relation"));

        let again = FinitePoset::from_pairs(p.elements().to_vec(), p.relation());
        t.check(again.same_relation(p), || tag("closure is not idempotent"));
        let covers = p.hasse()?;
        let rebuilt = FinitePoset::from_pairs(p.elements().to_vec(), covers);
        t.check(rebuilt.same_relation(p), || tag("Hasse covers do not regenerate the order"));

        if *k == 6 {
            // quotient by ⟨g³⟩, then by the induced action of g
            let cube: Vec<usize> = (0..gen.len()).map(|x| gen[gen[gen[x]]]).collect();
            let first = quotient_by_group(p, &GroupAction::cyclic(&cube)?)?;
            let mut pos = BTreeMap::new();
            for (a, o) in first.elements().iter().enumerate() {
                for &x in o {
                    pos.insert(x, a);
                }
            }
            let induced: Vec<usize> = first.elements().iter().map(|o| pos[&gen[o[0]]]).collect();
            let second = quotient_by_group(&first, &GroupAction::cyclic(&induced)?)?;
            let flat: Vec<Vec<usize>> = second
                .elements()
                .iter()
                .map(|os| {
                    let mut v: Vec<usize> = os.iter().flatten().copied().collect();
                    v.sort_unstable();
                    v
                })
                .collect();
            t.check(flat == quot.elements() && second.same_relation(&quot), || tag("nested quotient differs"));
        }
        if !quot.is_partial_order() {
            t.notes.push(tag("quotient is a preorder only"));
        }
        Ok(t)
    })?;
    let preorders = t.notes.len();
    t.notes.push(format!("summary: {preorders} of 200 quotients are not antisymmetric"));
    Ok(t)
}
