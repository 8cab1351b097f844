//! Reference values checked against independent computations: integer
//! recurrences, closed forms and floating-point root finding.

use gpsets::constructions::{choose_m, hereditary_predicate, lattice_indicator, IndexSet, PisotSetSpec};
use gpsets::linalg::det;
use gpsets::linrec::{salem_recover_exact, sml_zeros, transfer_map, verified_i0, LinRecSeq};
use gpsets::numberfield::fields;
use gpsets::rat::{q, qf, to_f64};
use gpsets::NumberField;
use num_bigint::BigInt;

const SQRT5: f64 = 2.23606797749979;
const PHI: f64 = (1.0 + SQRT5) / 2.0;

/// Roots of a monic real polynomial (coefficients low first) by the
/// Durand-Kerner iteration.
fn complex_roots(c: &[f64]) -> Vec<(f64, f64)> {
    let n = c.len() - 1;
    let mul = |a: (f64, f64), b: (f64, f64)| (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
    let eval = |z: (f64, f64)| c.iter().rev().fold((0.0, 0.0), |acc, &k| {
        let m = mul(acc, z);
        (m.0 + k, m.1)
    });
    let mut r: Vec<(f64, f64)> = (0..n).map(|k| mul((0.4, 0.9), (1.0 + k as f64 * 0.1, 0.0))).collect();
    for k in 1..n {
        r[k] = mul(r[k - 1], (0.4, 0.9));
    }
    for _ in 0..500 {
        for i in 0..n {
            let mut den = (1.0, 0.0);
            for j in 0..n {
                if i != j {
                    den = mul(den, (r[i].0 - r[j].0, r[i].1 - r[j].1));
                }
            }
            let num = eval(r[i]);
            let d2 = den.0 * den.0 + den.1 * den.1;
            let quo = ((num.0 * den.0 + num.1 * den.1) / d2, (num.1 * den.0 - num.0 * den.1) / d2);
            r[i] = (r[i].0 - quo.0, r[i].1 - quo.1);
        }
    }
    r
}

fn fib_u128(n: usize) -> Vec<u128> {
    let mut v = vec![0u128, 1];
    while v.len() < n {
        let k = v.len();
        v.push(v[k - 1] + v[k - 2]);
    }
    v
}

#[test]
fn golden_embeddings() {
    let k = fields::golden();
    let phi = k.gen();
    let d = k.distinguished();
    let e = phi.embed(d, 30).unwrap();
    assert!(e.radius() <= qf(1, 1 << 30));
    assert!((e.re.to_f64() - PHI).abs() < 1e-9);
    let other = 1 - d;
    assert!((phi.embed(other, 10).unwrap().re.to_f64() - (1.0 - PHI)).abs() < 1e-3);
    assert_eq!(phi.certified_floor(d).unwrap(), BigInt::from(1));
    assert_eq!(k.rational(q(2)).certified_floor(d).unwrap(), BigInt::from(2));
    assert_eq!(phi.certified_dist(d).unwrap(), k.element_i64(&[2, -1]).unwrap());
}

#[test]
fn salem_unit_circle_conjugate() {
    let k = fields::salem_quartic();
    let beta = k.gen();
    let roots = complex_roots(&[1.0, -1.0, -1.0, -1.0, 1.0]);
    let (re, im) = roots.iter().copied().find(|r| r.1 > 1e-6).unwrap();
    assert!((re * re + im * im - 1.0).abs() < 1e-9);
    let c = (0..k.degree()).find(|&j| !k.is_real(j) && beta.approx(j).1 > 0.0).unwrap();
    let (a, b) = beta.complex_floor(c).unwrap();
    assert_eq!((a, b), (BigInt::from(re.floor() as i64), BigInt::from(im.floor() as i64)));
    let real: Vec<f64> = roots.iter().filter(|r| r.1.abs() < 1e-6).map(|r| r.0).collect();
    let top = real.iter().cloned().fold(f64::MIN, f64::max);
    assert!((beta.to_f64() - top).abs() < 1e-9);
}

#[test]
fn trace_gram_determinant() {
    let g = fields::sqrt2().trace_gram();
    assert_eq!(g, vec![vec![q(2), q(0)], vec![q(0), q(4)]]);
    assert_eq!(det(g), q(8));
}

#[test]
fn tail_exponents() {
    let phi = fields::golden().gen();
    let m_phi = choose_m(&phi, &qf(3, 2)).unwrap();
    assert!((5..=8).contains(&m_phi), "m = {m_phi}");
    let silver = fields::silver().gen();
    assert!(choose_m(&silver, &q(2)).unwrap() <= m_phi);
    assert!(choose_m(&phi, &q(2)).is_err());
}

#[test]
fn hereditary_examples() {
    let phi = fields::golden().gen();
    let m = choose_m(&phi, &qf(3, 2)).unwrap() as u64;
    // Even exponents of gamma = phi^m.
    let spec = PisotSetSpec::new(&phi, qf(3, 2), IndexSet::periodic(2 * m, [0])).unwrap();
    assert_eq!(spec.m as u64, m);
    let pred = hereditary_predicate(&spec);
    let m = m as i64;
    assert!(pred.contains(&phi.pow(2 * m).unwrap()).unwrap());
    assert!(!pred.contains(&phi.pow(3 * m).unwrap()).unwrap());
    assert!(!pred.contains(&phi.pow(m).unwrap().scale(&q(2))).unwrap());
    // Even exponents of phi itself.
    let evens = hereditary_predicate(&PisotSetSpec::new(&phi, qf(3, 2), IndexSet::evens()).unwrap());
    assert!(evens.contains(&phi.pow(3 * m).unwrap()).unwrap() == (3 * m % 2 == 0));
    assert!(!evens.contains(&phi.pow(2 * m + 1).unwrap()).unwrap());
}

#[test]
fn trace_symmetry_for_two_plus_sqrt3() {
    let k = NumberField::from_i64(&[1, -4, 1]).unwrap();
    let beta = k.gen();
    assert!((beta.to_f64() - (2.0 + 3f64.sqrt())).abs() < 1e-12);
    let inv = beta.inverse().unwrap();
    let mut a = (2i64, 4i64);
    for i in 0..=20 {
        assert_eq!(beta.pow(i).unwrap().trace(), q(a.0));
        assert_eq!(inv.pow(i).unwrap().trace(), q(a.0));
        a = (a.1, 4 * a.1 - a.0);
    }
}

#[test]
fn power_basis_is_integral() {
    for k in [fields::golden(), fields::sqrt2()] {
        let basis = vec![k.one(), k.gen()];
        let pred = lattice_indicator(&k, &basis).unwrap();
        for a in -6..=6 {
            for b in -6..=6 {
                for den in 1..=3 {
                    let x = k.element(vec![qf(a, den), qf(b, den)]).unwrap();
                    let integral = (a % den == 0) && (b % den == 0);
                    assert_eq!(pred.contains(&x).unwrap(), integral);
                    assert_eq!(x.is_algebraic_integer(), integral);
                }
            }
        }
    }
}

#[test]
fn recurrence_terms() {
    assert_eq!(LinRecSeq::fibonacci().term(10), q(fib_u128(11)[10] as i64));
    let lucas5 = PHI.powi(5) + (1.0 - PHI).powi(5);
    assert_eq!(LinRecSeq::lucas().term(5), q(lucas5.round() as i64));
    // Newton's identities for x^4 - x^3 - x^2 - x + 1: e1 = 1, e2 = -1, e3 = 1, e4 = 1.
    let (e1, e2, e3, e4) = (1i64, -1i64, 1i64, 1i64);
    let mut p = vec![4i64, e1];
    p.push(e1 * p[1] - 2 * e2);
    p.push(e1 * p[2] - e2 * p[1] + 3 * e3);
    for n in 4..30 {
        p.push(e1 * p[n - 1] - e2 * p[n - 2] + e3 * p[n - 3] - e4 * p[n - 4]);
    }
    let s = LinRecSeq::salem_power_sums();
    assert_eq!(p[..4], [4, 1, 3, 7]);
    for (i, v) in p.iter().enumerate() {
        assert_eq!(s.term(i as u64), q(*v));
    }
    let roots = complex_roots(&[1.0, -1.0, -1.0, -1.0, 1.0]);
    let p12: f64 = roots.iter().map(|r| (r.0 * r.0 + r.1 * r.1).powi(6) * (12.0 * r.1.atan2(r.0)).cos()).sum();
    assert_eq!(p[12], p12.round() as i64);
}

#[test]
fn trace_representations() {
    assert_eq!(LinRecSeq::lucas().trace_representation().unwrap(), fields::golden().one());
    let x = LinRecSeq::fibonacci().trace_representation().unwrap();
    let k = x.field().clone();
    // x = 1/sqrt(5): x^2 = 1/5 and x > 0.
    assert_eq!(&x * &x, k.rational(qf(1, 5)));
    assert!((x.to_f64() - 1.0 / SQRT5).abs() < 1e-12);
}

/// Least `i0` with `nint(phi^j n_i) = n_{i+j}` on `[i0, 80)`, in exact
/// integer arithmetic: `phi^j = (a + b sqrt 5) / 2`.
fn brute_onset(terms: &[u128], j: usize) -> usize {
    let (mut a, mut b) = (2i128, 0i128);
    for _ in 0..j {
        (a, b) = ((a + 5 * b) / 2, (a + b) / 2);
    }
    let ok = |i: usize| {
        let n = terms[i] as i128;
        // nint(x) = floor((a n + floor(b n sqrt 5) + 1) / 2).
        let s = isqrt(5 * b * b * n * n);
        let lo = a * n + s;
        let floor_x_half = (lo + 1).div_euclid(2);
        floor_x_half == terms[i + j] as i128
    };
    (0..80 - j).rev().take_while(|&i| ok(i)).last().unwrap_or(80 - j)
}

fn isqrt(v: i128) -> i128 {
    let mut r = (v as f64).sqrt() as i128;
    while r * r > v {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= v {
        r += 1;
    }
    r
}

#[test]
fn stepping_onsets() {
    let fib = fib_u128(92);
    let lucas: Vec<u128> = (0..90).map(|i| if i == 0 { 2 } else { fib[i - 1] + fib[i + 1] }).collect();
    assert_eq!(brute_onset(&fib, 1), 2);
    assert_eq!(brute_onset(&lucas, 1), 4);
    for j in 1..=3 {
        let r = verified_i0(&LinRecSeq::fibonacci(), j).unwrap();
        assert_eq!(r.observed as usize, brute_onset(&fib, j as usize), "j = {j}");
        assert!(r.sound >= r.observed);
        let r = verified_i0(&LinRecSeq::lucas(), j).unwrap();
        assert_eq!(r.observed as usize, brute_onset(&lucas, j as usize), "j = {j}");
    }
}

#[test]
fn fibonacci_to_lucas() {
    let map = transfer_map(&LinRecSeq::fibonacci(), &LinRecSeq::lucas()).unwrap();
    assert_eq!(map.apply(&q(5)).unwrap().as_rational(), Some(q(11)));
    let direct = -5 + 2 * (PHI * 5.0).round() as i64;
    assert_eq!(direct, 11);
}

#[test]
fn salem_windows() {
    let s = LinRecSeq::salem_power_sums();
    let beta = s.beta().unwrap();
    let w = |i: u64| (i..i + 4).map(|t| s.term(t)).collect::<Vec<_>>();
    assert_eq!(w(1), [q(1), q(3), q(7), q(7)]);
    assert_eq!(salem_recover_exact(&s, &w(0)).unwrap(), beta.field().one());
    assert_eq!(salem_recover_exact(&s, &w(1)).unwrap(), beta);
    let b10 = salem_recover_exact(&s, &w(10)).unwrap();
    assert_eq!(b10, beta.pow(10).unwrap());
    assert!((b10.to_f64() - beta.to_f64().powi(10)).abs() < 1e-6);
}

#[test]
fn perrin_zeros() {
    let mut p = vec![BigInt::from(3), BigInt::from(0), BigInt::from(2)];
    for n in 3..=10_000 {
        let v = &p[n - 2] + &p[n - 3];
        p.push(v);
    }
    let oracle: Vec<u64> = (0..p.len()).filter(|&i| p[i] == BigInt::from(0)).map(|i| i as u64).collect();
    assert_eq!(oracle, [1]);
    assert_eq!(sml_zeros(&LinRecSeq::perrin(), 10_000).unwrap().zeros, oracle);
}

#[test]
fn salem_field_signature() {
    let k = NumberField::from_leading_first(
        &[q(1), q(-1), q(-1), q(-1), q(1)],
        gpsets::RootSelector::Auto,
    )
    .unwrap();
    assert_eq!(k.signature(), (2, 1));
    let reals: Vec<f64> = (0..4).filter(|&j| k.is_real(j)).map(|j| to_f64(&k.gen().embed(j, 40).unwrap().re.mid())).collect();
    assert!(reals[0] < reals[1]);
    assert!((reals[0] * reals[1] - 1.0).abs() < 1e-9);
}
