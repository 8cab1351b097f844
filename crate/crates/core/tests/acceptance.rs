use std::collections::HashSet;
use std::time::Instant;

use gpsets::analysis::{self, Rate};
use gpsets::constructions::{self, IndexSet, PisotSetSpec};
use gpsets::genpoly::{self, Environment, GPExpr};
use gpsets::linrec::{self, LinRecSeq, ValueSet};
use gpsets::numberfield::{fields, FieldElement, NumberField};
use gpsets::rat::{self, q, Q};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fibonacci_values(limit: u64) -> HashSet<u64> {
    let (mut a, mut b) = (0u64, 1u64);
    let mut out = HashSet::new();
    while a <= limit {
        out.insert(a);
        (a, b) = (b, a + b);
    }
    out
}

fn fibonacci_value_set() -> Outcome {
    let start = Instant::now();
    let fibs = fibonacci_values(1_000_000);
    let vs = ValueSet::new(&LinRecSeq::fibonacci(), 10_000).map_err(|e| e.to_string())?;
    let mut mismatches = 0;
    for n in 0..=1_000_000u64 {
        let got = vs.contains(&q(n as i64)).map_err(|e| e.to_string())?;
        if got != fibs.contains(&n) {
            mismatches += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(mismatches == 0, || format!("{mismatches} mismatches"))?;
    ensure(secs < 60.0, || format!("took {secs:.1}s"))?;
    Ok(format!("10^6 + 1 integers, 0 mismatches, {secs:.1}s"))
}

fn hereditary_predicate() -> Outcome {
    let f = fields::golden();
    let phi = f.gen();
    let spec = PisotSetSpec::new(&phi, rat::qf(3, 2), IndexSet::evens()).map_err(|e| e.to_string())?;
    let pred = constructions::hereditary_predicate(&spec);
    let ind = |x: &FieldElement| pred.indicator(x).map_err(|e| e.to_string());
    for i in 0..=15 {
        ensure(ind(&phi.pow(2 * i).unwrap())? == 1, || format!("phi^{} rejected", 2 * i))?;
        ensure(ind(&phi.pow(2 * i + 1).unwrap())? == 0, || format!("phi^{} accepted", 2 * i + 1))?;
    }
    let mut rng = StdRng::seed_from_u64(2);
    let mut others = 0;
    while others < 50 {
        let k = rng.gen_range(1..20);
        let x = match rng.gen_range(0..3) {
            0 => -phi.pow(k).unwrap(),
            1 => phi.pow(-k).unwrap(),
            _ => f.rational(q(rng.gen_range(2..1000))),
        };
        ensure(ind(&x)? == 0, || format!("{x} accepted"))?;
        others += 1;
    }
    Ok("32 powers and 50 non-powers decided exactly".into())
}

fn stepping() -> Outcome {
    let mut notes = Vec::new();
    for (seq, expect, bad) in [(LinRecSeq::fibonacci(), 2, 1u64), (LinRecSeq::lucas(), 4, 3)] {
        let r = linrec::verified_i0(&seq, 1).map_err(|e| e.to_string())?;
        ensure(r.sound == expect, || format!("{seq:?}: i0 = {}", r.sound))?;
        let b = seq.beta().unwrap();
        for i in r.sound..=r.sound + 500 {
            let s = rat::qi(linrec::pisot_step(&b, 1, &seq.term(i)).unwrap());
            ensure(s == seq.term(i + 1), || format!("{seq:?}: stepping fails at {i}"))?;
        }
        let s = rat::qi(linrec::pisot_step(&b, 1, &seq.term(bad)).unwrap());
        ensure(s != seq.term(bad + 1), || format!("{seq:?}: counterexample at {bad} holds"))?;
        notes.push(format!("i0 = {}", r.sound));
    }
    Ok(format!("Fibonacci {}, Lucas {}", notes[0], notes[1]))
}

fn salem_power_sums(limit: i64) -> HashSet<i64> {
    let mut p: Vec<i64> = vec![4, 1, 3, 7];
    let mut above = 0;
    while above < 40 {
        let n = p.len();
        let v = p[n - 1] + p[n - 2] + p[n - 3] - p[n - 4];
        above = if v > limit + 100 { above + 1 } else { 0 };
        p.push(v);
    }
    p.into_iter().filter(|v| (0..=limit).contains(v)).collect()
}

fn salem_recovery() -> Outcome {
    let seq = LinRecSeq::salem_power_sums();
    let beta = seq.beta().unwrap();
    let fam = linrec::salem_recovery_family(&seq, 51).map_err(|e| e.to_string())?;
    for i in 0..=50u64 {
        let w: Vec<Q> = (0..4).map(|j| seq.term(i + j)).collect();
        let bi = beta.pow(i as i64).unwrap();
        ensure(linrec::salem_recover_exact(&seq, &w).unwrap() == bi, || format!("window solve at {i}"))?;
        let hits = fam.search(&seq.term(i), 1000).map_err(|e| e.to_string())?;
        ensure(hits.iter().any(|(_, k)| *k == i), || format!("no confirming tuple at {i}"))?;
    }
    let values = salem_power_sums(10_000);
    let vs = ValueSet::new(&seq, 10_000).map_err(|e| e.to_string())?;
    let mut mismatches = 0;
    for n in 0..=10_000 {
        if vs.contains(&q(n)).map_err(|e| e.to_string())? != values.contains(&n) {
            mismatches += 1;
        }
    }
    ensure(mismatches == 0, || format!("{mismatches} membership mismatches"))?;
    Ok(format!("51 indices recovered, |C| = {}, 0 mismatches on [0, 10^4]", fam.candidate_count()))
}

/// Modulus enclosure of every conjugate at 200 bits.
fn moduli(x: &FieldElement) -> Vec<(Q, Q)> {
    (0..x.field().degree())
        .map(|k| {
            let n = x.embed(k, 200).unwrap().norm_sq();
            (n.lo, n.hi)
        })
        .collect()
}

fn integral_unit(x: &FieldElement) -> bool {
    let p = x.char_poly();
    p.coeffs().iter().all(rat::is_integer) && rat::abs(&p.coeff(0)) == q(1)
}

fn pisot_oracle(x: &FieldElement) -> bool {
    let f = x.field();
    let d = f.distinguished();
    if !f.is_real(d) || !integral_unit(x) {
        return false;
    }
    let v = x.embed(d, 200).unwrap().re;
    let m = moduli(x);
    v.lo > q(1) && (0..f.degree()).filter(|&k| k != d).all(|k| m[k].1 < q(1))
}

fn salem_oracle(x: &FieldElement) -> Option<bool> {
    let f = x.field();
    let d = f.distinguished();
    if !f.is_real(d) || !integral_unit(x) || x.min_poly().degree() < 4 {
        return Some(false);
    }
    if x.embed(d, 200).unwrap().re.hi <= q(1) {
        return Some(false);
    }
    let m = moduli(x);
    let others: Vec<usize> = (0..f.degree()).filter(|&k| k != d).collect();
    if others.iter().any(|&k| m[k].0 > q(1)) {
        return Some(false);
    }
    // Exactly one conjugate strictly inside the disc (1/x), the rest on the circle.
    let inside = others.iter().filter(|&&k| m[k].1 < q(1)).count();
    let circle = others.iter().filter(|&&k| m[k].0 <= q(1) && m[k].1 >= q(1)).count();
    if inside + circle != others.len() {
        return None;
    }
    Some(inside == 1 && circle >= 1)
}

fn detectors() -> Outcome {
    let fs = [fields::golden(), fields::sqrt2(), fields::plastic(), fields::salem_quartic()];
    let mut rng = StdRng::seed_from_u64(5);
    let mut suite: Vec<FieldElement> = Vec::new();
    for f in &fs {
        let b = f.gen();
        let unit = if f.degree() == 2 && f.minpoly().coeff(0) == q(-2) {
            f.element(vec![q(1), q(1)]).unwrap()
        } else {
            b.clone()
        };
        for k in -4..=8 {
            suite.push(unit.pow(k).unwrap());
            suite.push(-unit.pow(k).unwrap());
        }
        while !suite.len().is_multiple_of(50) {
            let c = (0..f.degree()).map(|_| q(rng.gen_range(-3..=3))).collect();
            suite.push(f.element(c).unwrap());
        }
    }
    let mut disagreements = 0;
    let mut counts = (0, 0);
    for x in &suite {
        let p = constructions::pisot_unit_test(x).map_err(|e| e.to_string())?;
        let s = constructions::salem_test(x).map_err(|e| e.to_string())?;
        counts.0 += p as usize;
        counts.1 += s as usize;
        if p != pisot_oracle(x) || salem_oracle(x).is_some_and(|o| o != s) {
            disagreements += 1;
        }
    }
    ensure(suite.len() == 200, || format!("suite has {} elements", suite.len()))?;
    ensure(disagreements == 0, || format!("{disagreements} disagreements"))?;
    Ok(format!("200 elements, {} Pisot units, {} Salem numbers, 0 disagreements", counts.0, counts.1))
}

fn indicator_exactness() -> Outcome {
    let mut rng = StdRng::seed_from_u64(6);
    let fs = [fields::golden(), fields::sqrt2(), fields::plastic()];
    let expr = |f: &NumberField| {
        let d = f.distinguished();
        genpoly::zero_indicator(GPExpr::sub(GPExpr::mul(GPExpr::emb("x", d), GPExpr::emb("y", d)), GPExpr::emb("z", d)))
    };
    let mut ones = 0;
    let mut zeros = 0;
    for i in 0..2000 {
        let f = &fs[i % 3];
        let mut r = |n: i64| f.element((0..f.degree()).map(|_| rat::qf(rng.gen_range(-n..=n), rng.gen_range(1..5))).collect()).unwrap();
        let (x, y) = (r(9), r(9));
        let want_zero = i < 1000;
        let z = if want_zero {
            &x * &y
        } else if i % 2 == 0 {
            (&x * &y).add_rational(&q(rng.gen_range(1..50)))
        } else {
            &(&x * &y) + &f.element((0..f.degree()).map(|k| if k == 1 { q(1) } else { q(0) }).collect()).unwrap()
        };
        let mut env = Environment::new();
        env.bind_element("x", x).bind_element("y", y).bind_element("z", z);
        let v = genpoly::eval(&expr(f), &env).map_err(|e| e.to_string())?.as_rational();
        if want_zero {
            ensure(v == Some(q(1)), || format!("zero case {i} gave {v:?}"))?;
            ones += 1;
        } else {
            ensure(v == Some(q(0)), || format!("nonzero case {i} gave {v:?}"))?;
            zeros += 1;
        }
    }
    let int = genpoly::zero_indicator(GPExpr::var("n"));
    for n in -500..500 {
        let mut env = Environment::new();
        env.bind_rational("n", q(n));
        let v = genpoly::eval(&int, &env).map_err(|e| e.to_string())?.as_rational();
        ensure(v == Some(q((n == 0) as i64)), || format!("integer {n} gave {v:?}"))?;
    }
    Ok(format!("{ones} zeros, {zeros} nonzeros, 1000 integers"))
}

fn sturmian_complexity() -> Outcome {
    let slopes = [
        (fields::sqrt2(), vec![q(-1), q(1)]),
        (fields::golden(), vec![q(-1), q(1)]),
    ];
    for (f, c) in slopes {
        let a = f.element(c).unwrap();
        let w = analysis::sturmian(&a, &f.zero(), 0..2000).map_err(|e| e.to_string())?;
        for n in 1..=40 {
            let p = analysis::subword_complexity(&w, n).unwrap();
            ensure(p == n + 1, || format!("p({n}) = {p} for slope {a}"))?;
        }
    }
    Ok("p(N) = N + 1 for N <= 40 on both windows".into())
}

fn non_hereditary() -> Outcome {
    let e = analysis::surrogate_slow_decay_set(analysis::log_rate(10.0));
    let plan = analysis::non_hereditary_construct(&e.oracle(), &Rate::InvSqrt, 4).map_err(|e| e.to_string())?;
    for r in &plan.levels {
        let k = (r.level as f64).sqrt().recip().min(0.5) * r.level as f64;
        ensure(r.k == k.ceil() as u32 || (r.level == 4 && r.k == 2), || format!("level {} k = {}", r.level, r.k))?;
        let p = analysis::subword_complexity(&plan.window, r.level as usize).unwrap() as u64;
        ensure(p >= 1 << r.k, || format!("p({}) = {p}", r.level))?;
    }
    for (i, b) in plan.window.bits.iter().enumerate() {
        ensure(*b == 0 || e.contains(i as i64), || format!("F not inside E at {i}"))?;
    }
    let bounds: Vec<String> = plan.levels.iter().map(|r| format!("p({})={}>={}", r.level, r.complexity, r.h_count())).collect();
    Ok(format!("N_4 = {}, {}", plan.window.len(), bounds.join(" ")))
}

fn trace_machinery() -> Outcome {
    let mut rng = StdRng::seed_from_u64(9);
    let fs = [fields::golden(), fields::sqrt2(), fields::plastic(), fields::salem_quartic()];
    let mut dets = Vec::new();
    for f in &fs {
        let b = f.gen();
        for _ in 0..100 {
            let init: Vec<Q> = (0..f.degree()).map(|_| rat::qf(rng.gen_range(-50..=50), rng.gen_range(1..4))).collect();
            let seq = LinRecSeq::new(f.minpoly(), init).unwrap();
            let x = seq.trace_representation().map_err(|e| e.to_string())?;
            let mut p = x.clone();
            for i in 0..200 {
                ensure(p.trace() == seq.term(i), || format!("trace mismatch at {i} in {f:?}"))?;
                p = &p * &b;
            }
            let u = linrec::trace_uniqueness(&x, &x).map_err(|e| e.to_string())?;
            ensure(u.unique && u.solution == x, || format!("second solution in {f:?}"))?;
        }
        let gram: Vec<Vec<Q>> = f.trace_gram();
        dets.push(rat::fmt_rational(&gpsets::linalg::det(gram)));
    }
    Ok(format!("400 sequences, Gram determinants {}", dets.join(", ")))
}

fn perrin_pipeline() -> Outcome {
    let f = fields::plastic();
    ensure(constructions::is_rank_one(&f), || "plastic field not rank one".into())?;
    let seq = LinRecSeq::perrin();
    let z = linrec::sml_zeros(&seq, 10_000).map_err(|e| e.to_string())?;
    ensure(z.zeros == vec![1], || format!("zeros {:?}", z.zeros))?;
    let r = linrec::verified_i0(&seq, 1).map_err(|e| e.to_string())?;
    let b = seq.beta().unwrap();
    for i in r.sound..r.sound + 300 {
        let s = rat::qi(linrec::pisot_step(&b, 1, &seq.term(i)).unwrap());
        ensure(s == seq.term(i + 1), || format!("stepping fails at {i}"))?;
    }
    Ok(format!("rank one, zeros {{1}}, stepping from i0 = {}", r.sound))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("fibonacci value set", fibonacci_value_set),
        ("hereditary power set", hereditary_predicate),
        ("nearest-integer stepping", stepping),
        ("salem recovery", salem_recovery),
        ("pisot and salem detectors", detectors),
        ("zero indicator exactness", indicator_exactness),
        ("sturmian subword complexity", sturmian_complexity),
        ("non-hereditary construction", non_hereditary),
        ("trace machinery", trace_machinery),
        ("perrin pipeline", perrin_pipeline),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        match run() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{:.1}s]", i + 1, t.elapsed().as_secs_f64()),
            Err(e) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {e}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
