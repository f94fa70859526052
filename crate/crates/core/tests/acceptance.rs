//! Acceptance suite: runs the ten acceptance criteria and prints one
//! PASS/FAIL line per criterion. Exits nonzero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::OnceLock;
use std::time::Instant;

use common::*;
use latpoly::cayley::{self, generate};
use latpoly::invariants;
use latpoly::polytope::{lattice_equivalent, LatticePolytope, VPolytope};
use latpoly::ratlin::{rat, to_rat_vec};
use latpoly::{Int, Rat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn lift<T>(r: latpoly::Result<T>, ctx: &str) -> Result<T, String> {
    r.map_err(|e| format!("{ctx}: {e}"))
}

struct Corpus {
    builds: Vec<Built>,
    all: Vec<(String, LatticePolytope)>,
}

fn corpus_cached() -> &'static Corpus {
    static C: OnceLock<Corpus> = OnceLock::new();
    C.get_or_init(|| {
        let (builds, all) = corpus();
        Corpus { builds, all }
    })
}

/// Random strict families satisfying `dim P_i + 1 < (k+1)/s` with smooth
/// Cayley polytope, and the non-smooth builds met along the way.
struct Families {
    smooth: Vec<Built>,
    non_smooth: Vec<Built>,
}

fn families_cached() -> &'static Families {
    static F: OnceLock<Families> = OnceLock::new();
    F.get_or_init(|| {
        let mut rng = ChaCha8Rng::seed_from_u64(0x1a77_1ce5);
        let mut names = BTreeSet::new();
        let mut smooth = Vec::new();
        let mut non_smooth = Vec::new();
        let mut attempts = 0;
        while smooth.len() < 60 && attempts < 3000 {
            attempts += 1;
            let (name, summands, s) = random_family(&mut rng);
            if !names.insert(name.clone()) {
                continue;
            }
            let k = summands.len() as u64 - 1;
            let hypothesis = summands.iter().all(|p| s * (p.affine_dim() as u64 + 1) < k + 1);
            let b = built(name, summands, s);
            match (hypothesis, b.polytope.is_smooth()) {
                (true, true) => smooth.push(b),
                (_, false) if non_smooth.len() < 20 => non_smooth.push(b),
                _ => {}
            }
        }
        Families { smooth, non_smooth }
    })
}

fn random_family(rng: &mut ChaCha8Rng) -> (String, Vec<VPolytope>, u64) {
    match rng.gen_range(0..5) {
        0 => {
            let k = rng.gen_range(2..=4);
            let lens: Vec<i64> = (0..=k).map(|_| rng.gen_range(1..=4)).collect();
            (format!("segments s=1 {lens:?}"), lens.iter().map(|&l| seg(l)).collect(), 1)
        }
        1 => {
            let lens: Vec<i64> = (0..5).map(|_| rng.gen_range(1..=4)).collect();
            (format!("segments s=2 {lens:?}"), lens.iter().map(|&l| seg(l)).collect(), 2)
        }
        2 => {
            let shape = rng.gen_range(0..3);
            let mut parts = Vec::new();
            let mut tags = Vec::new();
            for _ in 0..4 {
                match shape {
                    0 => {
                        let (a, b) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
                        tags.push(format!("{a}x{b}"));
                        parts.push(rect(a, b));
                    }
                    1 => {
                        let c = rng.gen_range(1..=3);
                        tags.push(format!("{c}D2"));
                        parts.push(triangle(c));
                    }
                    _ => {
                        let l = rng.gen_range(1..=2);
                        let d = l + rng.gen_range(1..=2);
                        tags.push(format!("T{l},{d}"));
                        parts.push(trapezoid(l, d));
                    }
                }
            }
            (format!("polygons s=1 {tags:?}"), parts, 1)
        }
        3 => {
            let k = rng.gen_range(2..=5);
            (format!("points s=2 k={k}"), vec![point(); k + 1], 2)
        }
        _ => {
            let k = rng.gen_range(3..=5);
            (format!("points s=3 k={k}"), vec![point(); k + 1], 3)
        }
    }
}

/// Smooth corpus polytopes plus the smooth families.
fn smooth_corpus() -> Vec<(String, LatticePolytope)> {
    let mut out: Vec<(String, LatticePolytope)> =
        corpus_cached().all.iter().filter(|(_, p)| p.is_smooth()).cloned().collect();
    out.extend(families_cached().smooth.iter().map(|b| (b.name.clone(), b.polytope.clone())));
    out
}

fn criterion_1() -> Check {
    for n in 1..=5usize {
        let p = lift(generate::simplex(1, n), "simplex")?;
        let top = Rat::from_integer(Int::from(n + 1));
        let c = lift(invariants::codegree(&p), "codegree")?;
        let q = lift(invariants::qcodegree(&p), "qcodegree")?;
        let t = lift(invariants::nef_value(&p), "nef value")?;
        let d = lift(invariants::degree(&p), "degree")?;
        ensure!(c == n as u64 + 1 && q == top && t == top && d == 0, "n={n}: codeg {c}, codeg_Q {q}, tau {t}, deg {d}");
        let dec = cayley::detect(&p, 1).ok_or(format!("n={n}: no Cayley structure"))?;
        ensure!(dec.k == n && dec.strict, "n={n}: k={} strict={}", dec.k, dec.strict);
        ensure!(
            dec.summands.len() == n + 1 && dec.summands.iter().all(|s| s.vertices().len() == 1),
            "n={n}: summands are not points"
        );
    }
    Ok("n = 1..5".into())
}

fn criterion_2() -> Check {
    for n in 1..=6usize {
        let p = lift(generate::simplex(2, n), "simplex")?;
        let c = lift(invariants::codegree(&p), "codegree")?;
        let q = lift(invariants::qcodegree(&p), "qcodegree")?;
        ensure!(c == (n as u64 + 2) / 2, "n={n}: codeg {c}");
        ensure!(q == rat(n as i64 + 1, 2), "n={n}: codeg_Q {q}");
        ensure!(cayley::detect(&p, 1).is_none(), "n={n}: 2 Delta_n detected as order-1 Cayley");
        let d = cayley::detect(&p, 2).ok_or(format!("n={n}: no order-2 structure"))?;
        ensure!(d.k == n, "n={n}: order-2 structure has k={}", d.k);
        if n >= 2 {
            let t = lift(invariants::nef_value(&p), "nef value")?;
            ensure!(t == rat(n as i64 + 1, 2), "n={n}: tau {t}");
            let r = lift(cayley::check_localsplit(&vec![point(); n + 1], 2), "localsplit")?;
            ensure!(r.applicable && r.verdict, "n={n}: points of order 2 fail the split check");
            let rebuilt = lift(d.rebuild(), "rebuild")?;
            ensure!(lattice_equivalent(&rebuilt, &p).is_some(), "n={n}: rebuild not equivalent");
        }
    }
    Ok("n = 1..6".into())
}

fn criterion_3() -> Check {
    let p = lift(generate::blowup(4, 1, 3), "blowup")?;
    let c = lift(invariants::codegree(&p), "codegree")?;
    let q = lift(invariants::qcodegree(&p), "qcodegree")?;
    let t = lift(invariants::nef_value(&p), "nef value")?;
    let qn = lift(invariants::is_q_normal(&p), "q-normal")?;
    ensure!(c == 1 && q == rat(1, 1) && t == rat(2, 1) && !qn, "codeg {c}, codeg_Q {q}, tau {t}, q_normal {qn}");
    let fails = lift(invariants::spanning_failures(&p, 1, 1), "spanning")?;
    let m = iv(&[1, 0, 0]);
    let hit = fails.iter().find(|(v, _)| *v == m).ok_or("(1,0,0) not reported as a non-spanned vertex")?;
    ensure!(hit.1 == to_rat_vec(&iv(&[0, 1, 1])), "shifted point {:?}", hit.1);

    let q = lift(generate::blowup(4, 2, 3), "blowup")?;
    ensure!(lift(invariants::is_spanned(&q, 1, 1), "spanning")?, "lambda=2 variant not 1-spanned");
    for m in [[2, 0, 0], [0, 2, 0], [0, 0, 2]] {
        let i = q.vertices().iter().position(|v| *v == iv(&m)).ok_or(format!("{m:?} not a vertex"))?;
        let x = lift(invariants::shifted_point(&q.vertex_data()[i], 1, 1), "shift")?;
        ensure!(x == to_rat_vec(&iv(&[1, 1, 1])), "{m:?} shifts to {x:?}");
    }
    Ok("blow-ups with lambda = 1, 2".into())
}

fn criterion_4() -> Check {
    let bad = built("6,5,3".into(), vec![seg(6), seg(5), seg(3)], 2);
    let s = bad.polytope.smoothness();
    ensure!(!s.smooth && s.witness == Some(iv(&[3, 0, 2])), "6,5,3: {s:?}");
    let good = built("4,2,2".into(), vec![seg(4), seg(2), seg(2)], 2);
    let s = good.polytope.smoothness();
    ensure!(s.smooth && s.witness.is_none(), "4,2,2: {s:?}");
    Ok("witness (3,0,2)".into())
}

fn criterion_5() -> Check {
    let corpus = corpus_cached();
    let mut forward = 0;
    let mut smooth_count = 0;
    for (name, p) in &corpus.all {
        if !p.is_smooth() {
            continue;
        }
        smooth_count += 1;
        let r = lift(invariants::classify(p), name)?;
        let n = p.dim();
        if r.q_normal && 2 * r.codegree >= n as u64 + 3 {
            forward += 1;
            let k = r.codegree as usize - 1;
            let d = cayley::detect_where(p, 1, k, |d| d.strict).ok_or(format!("{name}: no strict decomposition"))?;
            ensure!(2 * d.k > n, "{name}: k={} not > n/2", d.k);
            let rebuilt = lift(d.rebuild(), name)?;
            ensure!(lattice_equivalent(&rebuilt, p).is_some(), "{name}: rebuild not equivalent");
            ensure!(
                r.predicted_defect == Some(2 * r.codegree as i64 - 2 - n as i64),
                "{name}: defect {:?}",
                r.predicted_defect
            );
        }
    }
    let mut converse = 0;
    for b in &corpus.builds {
        let k = b.summands.len() - 1;
        let n = b.polytope.dim();
        if b.s != 1 || !b.polytope.is_smooth() || 2 * k <= n {
            continue;
        }
        ensure!(lift(cayley::fan_mismatch(&b.summands), &b.name)?.is_none(), "{}: summands not strict", b.name);
        converse += 1;
        let c = lift(invariants::codegree(&b.polytope), &b.name)?;
        let qn = lift(invariants::is_q_normal(&b.polytope), &b.name)?;
        ensure!(qn && c == k as u64 + 1, "{}: q_normal {qn}, codeg {c}, k {k}", b.name);
    }
    ensure!(forward > 0 && converse > 0, "vacuous: forward {forward}, converse {converse}");
    Ok(format!("{smooth_count} smooth polytopes, {forward} with condition (1), {converse} strict builds with k > n/2"))
}

fn criterion_6() -> Check {
    let fams = &families_cached().smooth;
    ensure!(fams.len() >= 50, "only {} qualifying families", fams.len());
    for b in fams {
        let r = lift(cayley::check_localsplit(&b.summands, b.s), &b.name)?;
        ensure!(r.applicable, "{}: not applicable", b.name);
        let expected = Rat::new(Int::from(b.summands.len()), Int::from(b.s));
        let q = lift(invariants::qcodegree(&b.polytope), &b.name)?;
        let t = lift(invariants::nef_value(&b.polytope), &b.name)?;
        ensure!(q == expected && t == expected && r.verdict, "{}: codeg_Q {q}, tau {t}, expected {expected}", b.name);
    }
    Ok(format!("{} families", fams.len()))
}

fn criterion_7() -> Check {
    let smooth = smooth_corpus();
    for (name, p) in &smooth {
        let n = p.dim();
        let c = lift(invariants::codegree(p), name)?;
        let q = lift(invariants::qcodegree(p), name)?;
        let t = lift(invariants::nef_value(p), name)?;
        let cr = Rat::from_integer(Int::from(c));
        ensure!(t > &cr - rat(1, 1), "{name}: tau {t} <= codeg - 1 = {}", c - 1);
        ensure!(t >= q, "{name}: tau {t} < codeg_Q {q}");
        ensure!(q <= cr && c <= n as u64 + 1, "{name}: codeg_Q {q}, codeg {c}");
        let is_simplex = lattice_equivalent(p, &lift(generate::simplex(1, n), "simplex")?).is_some();
        let top = Rat::from_integer(Int::from(n + 1));
        if is_simplex {
            ensure!(t == top, "{name}: simplex with tau {t}");
        } else {
            ensure!(t <= Rat::from_integer(Int::from(n)), "{name}: not a simplex but tau {t} > n");
        }
    }
    Ok(format!("{} smooth polytopes", smooth.len()))
}

fn criterion_8() -> Check {
    let corpus = corpus_cached();
    // codegree against a direct scan
    for (name, p) in &corpus.all {
        let c = lift(invariants::codegree(p), name)?;
        ensure!(c == codegree_scan(p), "{name}: codegree {c} disagrees with scan");
    }
    // rational codegree against integer pairs
    let mut pairs = 0usize;
    for (name, p) in &corpus.all {
        let t = lift(invariants::qcodegree(p), name)?;
        let (num, den) = (u64::try_from(t.numer()).unwrap(), u64::try_from(t.denom()).unwrap());
        ensure!(!lift(p.shrink(num, den), name)?.is_empty(), "{name}: shrink at codeg_Q {t} is empty");
        for b in 1..=12u64 {
            let mut a = 1u64;
            while Rat::new(Int::from(a), Int::from(b)) < t {
                ensure!(lift(p.shrink(a, b), name)?.is_empty(), "{name}: ({a}P)^({b}) nonempty below {t}");
                pairs += 1;
                a += 1;
            }
        }
    }
    // nef value against the spanning definition
    let smooth = smooth_corpus();
    for (name, p) in &smooth {
        let t = lift(invariants::nef_value(p), name)?;
        let (num, den) = (u64::try_from(t.numer()).unwrap(), u64::try_from(t.denom()).unwrap());
        ensure!(lift(invariants::is_spanned(p, num, den), name)?, "{name}: not spanned at tau {t}");
        let largest = p
            .vertex_data()
            .iter()
            .flat_map(|v| p.hrep().facets().iter().map(move |f| f.slack(&v.point)))
            .max()
            .unwrap();
        let big = 2 * u64::try_from(largest.to_integer()).unwrap();
        ensure!(
            !lift(invariants::is_spanned(p, num * big - 1, den * big), name)?,
            "{name}: spanned just below tau {t}"
        );
    }
    // detect against exhaustive subsets
    let mut compared = 0usize;
    for (name, p) in &corpus.all {
        for s in 1..=2u64 {
            if cayley::width_candidates(p, s).len() > 8 {
                continue;
            }
            compared += 1;
            let got = cayley::detect(p, s).map(|d| d.k);
            ensure!(got == detect_oracle(p, s), "{name}, s={s}: detect {got:?}, oracle {:?}", detect_oracle(p, s));
        }
    }
    ensure!(compared >= 20, "only {compared} detect comparisons");
    Ok(format!(
        "{} codegrees, {pairs} pairs, {} nef values, {compared} detect runs",
        corpus.all.len(),
        smooth.len()
    ))
}

fn criterion_9() -> Check {
    let mut pool: Vec<(String, LatticePolytope)> =
        corpus_cached().all.iter().filter(|(_, p)| p.dim() <= 4).cloned().collect();
    pool.push(("6,5,3".into(), built("6,5,3".into(), vec![seg(6), seg(5), seg(3)], 2).polytope));
    let mut rng = ChaCha8Rng::seed_from_u64(0xf022);
    let cases = 120;
    for i in 0..cases {
        let (name, p) = &pool[rng.gen_range(0..pool.len())];
        let n = p.dim();
        let u = random_unimodular(&mut rng, n, 8);
        let t = random_translation(&mut rng, n);
        let q = lift(p.map(&u, &t), name)?;
        let ctx = format!("case {i} ({name})");
        ensure!(p.is_smooth() == q.is_smooth(), "{ctx}: smoothness changed");
        ensure!(
            lift(invariants::codegree(p), &ctx)? == lift(invariants::codegree(&q), &ctx)?,
            "{ctx}: codegree changed"
        );
        ensure!(lift(invariants::degree(p), &ctx)? == lift(invariants::degree(&q), &ctx)?, "{ctx}: degree changed");
        ensure!(
            lift(invariants::qcodegree(p), &ctx)? == lift(invariants::qcodegree(&q), &ctx)?,
            "{ctx}: codeg_Q changed"
        );
        if p.is_smooth() {
            ensure!(
                lift(invariants::nef_value(p), &ctx)? == lift(invariants::nef_value(&q), &ctx)?,
                "{ctx}: tau changed"
            );
        }
        let k1 = cayley::detect(p, 1).map(|d| d.k);
        let k2 = cayley::detect(&q, 1).map(|d| d.k);
        ensure!(k1 == k2, "{ctx}: detect k {k1:?} vs {k2:?}");
    }
    Ok(format!("{cases} transforms"))
}

fn criterion_10() -> Check {
    let fams = families_cached();
    let mut smooth_builds: Vec<&Built> = fams.smooth.iter().collect();
    smooth_builds.extend(corpus_cached().builds.iter().filter(|b| b.polytope.is_smooth()));
    for b in &smooth_builds {
        for (j, s) in b.summands.iter().enumerate() {
            let l = lift(LatticePolytope::intrinsic(s), &b.name)?;
            ensure!(l.is_smooth(), "{}: smooth build with non-smooth summand {j}", b.name);
        }
    }
    let mut non_smooth = vec![built("6,5,3".into(), vec![seg(6), seg(5), seg(3)], 2)];
    non_smooth.extend(fams.non_smooth.iter().cloned());
    for b in &non_smooth {
        let r = lift(cayley::check_localsplit(&b.summands, b.s), &b.name)?;
        ensure!(!r.smooth, "{}: expected a non-smooth build", b.name);
        if b.summands.iter().all(|s| s.dim() == 1) {
            ensure!(r.summands_smooth.iter().all(|&x| x), "{}: a segment summand reported non-smooth", b.name);
        }
    }
    Ok(format!("{} smooth builds, {} non-smooth builds", smooth_builds.len(), non_smooth.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("simplex family", criterion_1),
        ("dilated simplices", criterion_2),
        ("blow-up example", criterion_3),
        ("smoothness witnesses", criterion_4),
        ("codegree/Q-normality characterization", criterion_5),
        ("split-bundle sweep", criterion_6),
        ("inequality suite", criterion_7),
        ("oracle equivalences", criterion_8),
        ("invariance fuzz", criterion_9),
        ("summand smoothness", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {:>2}: PASS  {name} ({detail}; {elapsed:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
