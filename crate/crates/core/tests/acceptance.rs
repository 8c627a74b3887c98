//! Acceptance harness: one line per criterion, nonzero exit on any failure.

use std::process::ExitCode;
use std::time::Instant;

use cmorder::afunction::{a_value, AContext, ANormalization};
use cmorder::blocks::{cm_blocks_l2, glen_blocks};
use cmorder::orders::wall_preorder;
use cmorder::params::{wall_adjacent_alcoves_l2, wall_m_l2};
use cmorder::tau::tau_trace;
use cmorder::verify::{verify, Grid};
use cmorder::{kappa, kappa_compare, shifted_symbol, Charge, Multipartition, Rational, Verdict};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn q(s: &str) -> Rational {
    s.parse().unwrap()
}

fn qs(s: &str) -> Vec<Rational> {
    s.split(',').map(q).collect()
}

fn mp(s: &str) -> Multipartition {
    Multipartition::parse_json(s).unwrap()
}

fn lambda() -> Multipartition {
    mp("[[],[3,2]]")
}

fn mu() -> Multipartition {
    mp("[[2,2,1],[]]")
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn suites(names: &[&str]) -> Check {
    let mut out = Vec::new();
    for name in names {
        let r = verify(name, &Grid::default_for(name)).map_err(|e| e.to_string())?;
        if !r.passed() {
            return Err(format!("{name}: {} counterexamples, first {:?}", r.counterexamples.len(), r.counterexamples.first()));
        }
        out.push(format!("{name} {} cases/0 cex {:.2}s", r.cases, r.elapsed.as_secs_f64()));
    }
    Ok(out.join("; "))
}

fn symbol_example() -> Check {
    let sym = shifted_symbol(&lambda(), &qs("1/2,0"), 4).map_err(|e| e.to_string())?;
    let want = vec![qs("1/2,3/2,5/2,7/2"), qs("0,1,4,6")];
    ensure(sym.rows == want, format!("rows {:?}", sym.rows))?;
    Ok("rows (1/2,3/2,5/2,7/2 ; 0,1,4,6)".into())
}

fn tau_example() -> Check {
    let s = Charge::from_ints(&[1, -1]).unwrap();
    let t = tau_trace(&s, &mu()).map_err(|e| e.to_string())?;
    ensure(t.rho.parts() == [5, 4, 1, 1], format!("rho = {}", t.rho))?;
    let prefix = |v: &[Rational], k: usize| v.iter().take(k).copied().collect::<Vec<_>>();
    ensure(prefix(&t.betas[0], 6) == qs("3,2,0,-2,-3,-4"), "β_1((2,2,1))")?;
    ensure(prefix(&t.betas[1], 4) == qs("-1,-2,-3,-4"), "β_-1(∅)")?;
    ensure(t.sets[0][..6] == [5, 3, -1, -5, -7, -9], format!("T_1 = {:?}", t.sets[0]))?;
    ensure(t.sets[1][..4] == [-2, -4, -6, -8], format!("T_2 = {:?}", t.sets[1]))?;
    ensure(t.merged[..9] == [5, 3, -1, -2, -4, -5, -6, -7, -8], format!("β_0 = {:?}", t.merged))?;
    Ok("τ_(1,-1)((2,2,1);∅) = (5,4,1,1), T_1, T_2 and β_0 match".into())
}

fn kappa_anchors() -> Check {
    let cases = [
        ("1/2,0", "6,4,7/2,5/2,3/2,1,1/2,0", "11/2,9/2,3,5/2,2,1,1/2,0", Verdict::Greater),
        ("9/10,0", "6,4,39/10,29/10,19/10,1,9/10,0", "59/10,49/10,3,29/10,2,1,9/10,0", Verdict::Incomparable),
        ("1,0", "6,4,4,3,2,1,1,0,0", "6,5,3,3,2,1,1,0,0", Verdict::Less),
    ];
    for (m, kl, km, verdict) in cases {
        let m = qs(m);
        let got_l = kappa(&lambda(), &m, 4).map_err(|e| e.to_string())?;
        let got_m = kappa(&mu(), &m, 4).map_err(|e| e.to_string())?;
        ensure(got_l.entries() == qs(kl), format!("κ(λ) at {m:?} = {got_l}"))?;
        ensure(got_m.entries() == qs(km), format!("κ(μ) at {m:?} = {got_m}"))?;
        let v = kappa_compare(&lambda(), &mu(), &m, 4).map_err(|e| e.to_string())?;
        ensure(v == verdict, format!("verdict at {m:?} = {v}"))?;
    }
    Ok("six sequences; λ vs μ: Greater, Incomparable, Less".into())
}

fn a_anchors() -> Check {
    let cases = [("1/2,0", "65/2", "34"), ("1,0", "40", "39")];
    for (m, al, am) in cases {
        let ctx = AContext::new(qs(m), Rational::ONE, ANormalization::SymbolSize(4)).map_err(|e| e.to_string())?;
        let got_l = a_value(&lambda(), &ctx).map_err(|e| e.to_string())?;
        let got_m = a_value(&mu(), &ctx).map_err(|e| e.to_string())?;
        ensure(got_l == q(al) && got_m == q(am), format!("m=({m}): a = {got_l}, {got_m}"))?;
    }
    Ok("65/2, 34, 40, 39".into())
}

fn l2_blocks() -> Check {
    let w = cm_blocks_l2(2, &qs("0,0"), 3).map_err(|e| e.to_string())?;
    let mut got: Vec<Vec<String>> = w
        .labeled_classes()
        .iter()
        .map(|c| {
            let mut c: Vec<String> = c.iter().map(ToString::to_string).collect();
            c.sort();
            c
        })
        .collect();
    got.sort();
    let mut want = vec![
        vec!["[[1,1],[]]".to_string(), "[[],[1,1]]".to_string()],
        vec!["[[1],[1]]".to_string()],
        vec!["[[2],[]]".to_string(), "[[],[2]]".to_string()],
    ];
    for c in &mut want {
        c.sort();
    }
    want.sort();
    ensure(got == want, format!("G(2,1,2) blocks {got:?}"))?;
    let g = glen_blocks(2, 2, 2, &w).map_err(|e| e.to_string())?;
    ensure(g.classes.len() == 4, format!("G(2,2,2) has {} classes", g.classes.len()))?;
    Ok("three G(2,1,2) blocks; four G(2,2,2) blocks".into())
}

fn negative_control() -> Check {
    let d = Rational::ONE;
    let (a, b) = wall_adjacent_alcoves_l2(d).map_err(|e| e.to_string())?;
    let adj = [a.clone(), b.clone()];
    let (l, m) = (lambda(), mu());
    let both = wall_preorder(&adj, &l, &m).map_err(|e| e.to_string())?
        && wall_preorder(&adj, &m, &l).map_err(|e| e.to_string())?;
    ensure(both, "pair is not related both ways")?;
    let wm = wall_m_l2(d);
    let split = kappa(&l, &wm, 4).unwrap() != kappa(&m, &wm, 4).unwrap();
    ensure(split, "pair lies in one κ-block")?;
    let report = verify("wall-converse", &Grid::default_for("wall-converse")).map_err(|e| e.to_string())?;
    let line = report
        .findings
        .iter()
        .find(|f| f.contains("d=+1 n=5: [[],[3,2]] and [[2,2,1],[]]"))
        .ok_or("wall-converse does not report the pair")?;
    Ok(format!("θ'=(0,1), adjacent {a} / {b}: {}", line.trim()))
}

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        ("symbol example", symbol_example),
        ("tau example", tau_example),
        ("kappa anchors", kappa_anchors),
        ("a-function anchors", a_anchors),
        ("kappa-tau equivalences", || suites(&["thm-kappa-tau"])),
        ("kappa-N and kappa-a", || suites(&["thm-kappa-N", "thm-kappa-a"])),
        ("tau bijection", || suites(&["tau-roundtrip", "tau-equivariance", "tau-transpose"])),
        ("level-2 blocks", l2_blocks),
        ("half-step and zigzag", || suites(&["lemma-halfstep", "blocks-zigzag"])),
        ("negative control", negative_control),
        ("poset quotients", || suites(&["poset-quotient"])),
    ];
    let mut failed = 0;
    let mut shadow_failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] {:>2} {name} ({secs:.2}s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                if (4..11).contains(&i) {
                    shadow_failed += 1;
                }
                println!("[FAIL] {:>2} {name} ({secs:.2}s): {why}", i + 1);
            }
        }
    }
    // geometric statements are covered only through their combinatorial shadows above
    let shadow = if shadow_failed == 0 { "PASS" } else { "FAIL" };
    println!("[{shadow}] 12 geometric claims: stood in for by criteria 5-11 ({shadow_failed} of those failed)");
    if shadow_failed > 0 {
        failed += 1;
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
