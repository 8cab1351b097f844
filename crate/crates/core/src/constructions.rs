//! Indicator predicates for lattices, units, Pisot units and Salem numbers,
//! power sets of Pisot units, and hereditary subsets of those power sets.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::genpoly::{self, Environment, GPExpr};
use crate::interval::Interval;
use crate::linalg;
use crate::numberfield::{FieldElement, NumberField};
use crate::rat::{self, Q};

type Test = Arc<dyn Fn(&FieldElement) -> Result<bool> + Send + Sync>;

/// A membership test `K -> {0, 1}`.
#[derive(Clone)]
pub struct SetPredicate {
    pub kind: String,
    /// Indicator expression in the variable `x`, when one is assembled.
    pub expr: Option<GPExpr>,
    test: Test,
}

impl fmt::Debug for SetPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SetPredicate").field("kind", &self.kind).field("expr", &self.expr).finish()
    }
}

impl SetPredicate {
    pub fn new(kind: &str, expr: Option<GPExpr>, test: Test) -> Self {
        SetPredicate { kind: kind.to_string(), expr, test }
    }

    pub fn contains(&self, x: &FieldElement) -> Result<bool> {
        (self.test)(x)
    }

    pub fn indicator(&self, x: &FieldElement) -> Result<u8> {
        Ok(self.contains(x)? as u8)
    }
}

/// Extends `basis` by power-basis vectors to a full `Q`-basis.
fn complete_basis(field: &NumberField, basis: &[FieldElement]) -> Result<Vec<FieldElement>> {
    let m = field.degree();
    let mut out: Vec<FieldElement> = basis.to_vec();
    let rows = |v: &[FieldElement]| v.iter().map(|b| b.coords().to_vec()).collect::<Vec<_>>();
    if linalg::rank(&rows(&out)) < out.len() || out.len() > m {
        return Err(Error::DependentBasis);
    }
    for k in 0..m {
        if out.len() == m {
            break;
        }
        let mut c = vec![Q::zero(); m];
        c[k] = Q::one();
        let e = field.element(c)?;
        out.push(e);
        if linalg::rank(&rows(&out)) < out.len() {
            out.pop();
        }
    }
    Ok(out)
}

/// Indicator of the lattice `Z b_1 + ... + Z b_r` for independent `b_i`.
///
/// With `d_j` the trace-dual of a completed basis, `x` is in the lattice iff
/// `Tr(d_j x)` is an integer for `j < r` and zero for `j >= r`.
pub fn lattice_indicator(field: &NumberField, basis: &[FieldElement]) -> Result<SetPredicate> {
    let r = basis.len();
    let full = complete_basis(field, basis)?;
    let dual = field.dual_basis(&full)?;
    let mut factors = Vec::new();
    for (j, d) in dual.iter().enumerate() {
        let l = genpoly::linear_functional_expr(field, d, "x");
        factors.push(if j < r {
            GPExpr::floor(GPExpr::sub(GPExpr::int(1), GPExpr::frac(l)))
        } else {
            genpoly::zero_indicator(l)
        });
    }
    let expr = factors.into_iter().reduce(GPExpr::mul).unwrap_or_else(|| GPExpr::int(1));
    let f = field.clone();
    let e2 = expr.clone();
    Ok(SetPredicate::new(
        "lattice",
        Some(expr),
        Arc::new(move |x: &FieldElement| {
            if x.field() != &f {
                return Err(Error::FieldMismatch);
            }
            let mut env = Environment::new();
            env.bind_element("x", x.clone());
            let v = genpoly::eval(&e2, &env)?;
            Ok(v.as_rational() == Some(Q::one()))
        }),
    ))
}

/// Algebraic integers of norm `+-1`.
pub fn unit_indicator(field: &NumberField) -> SetPredicate {
    let f = field.clone();
    SetPredicate::new(
        "unit",
        None,
        Arc::new(move |x: &FieldElement| {
            if x.field() != &f {
                return Err(Error::FieldMismatch);
            }
            Ok(x.is_unit())
        }),
    )
}

/// Unit with distinguished real value `> 1` and every other conjugate of
/// modulus `< 1`.
pub fn pisot_unit_test(x: &FieldElement) -> Result<bool> {
    let f = x.field();
    let d = f.distinguished();
    if x.is_zero() || !f.is_real(d) || !x.is_unit() {
        return Ok(false);
    }
    if x.cmp_rational(d, &Q::one())? != Ordering::Greater {
        return Ok(false);
    }
    for k in 0..f.degree() {
        if k != d && x.abs_sq_cmp(k, &Q::one())? != Ordering::Less {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Real `x > 1` in the distinguished embedding with every other conjugate of
/// modulus `< 1` (no unit condition).
pub fn is_pisot_number(x: &FieldElement) -> Result<bool> {
    let f = x.field();
    let d = f.distinguished();
    if x.is_zero() || !f.is_real(d) || !x.is_algebraic_integer() {
        return Ok(false);
    }
    if x.cmp_rational(d, &Q::one())? != Ordering::Greater {
        return Ok(false);
    }
    for k in 0..f.degree() {
        if k != d && x.abs_sq_cmp(k, &Q::one())? != Ordering::Less {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Unit `x > 1` with exactly one other conjugate inside the unit disc, all
/// remaining conjugates on the unit circle (at least one), and reciprocal
/// characteristic polynomial.
pub fn salem_test(x: &FieldElement) -> Result<bool> {
    let f = x.field();
    let d = f.distinguished();
    let m = f.degree();
    if m < 4 || x.is_zero() || !f.is_real(d) || !x.is_unit() {
        return Ok(false);
    }
    if x.cmp_rational(d, &Q::one())? != Ordering::Greater {
        return Ok(false);
    }
    if !x.char_poly().is_reciprocal() {
        return Ok(false);
    }
    let (mut on, mut inside) = (0, 0);
    for k in 0..m {
        if k == d {
            continue;
        }
        match x.abs_sq_cmp(k, &Q::one())? {
            Ordering::Equal => on += 1,
            Ordering::Less => inside += 1,
            Ordering::Greater => return Ok(false),
        }
    }
    Ok(on == m - 2 && on >= 1 && inside == 1)
}

/// `true` for real quadratic fields and cubic fields of signature `(1, 1)`.
pub fn is_rank_one(field: &NumberField) -> bool {
    matches!((field.degree(), field.signature()), (2, (2, 0)) | (3, (1, 1)))
}

/// `k >= 0` with `x = beta^k`, for `beta > 1` in the distinguished embedding.
pub fn power_exponent(beta: &FieldElement, x: &FieldElement) -> Result<Option<u64>> {
    if x.field() != beta.field() {
        return Err(Error::FieldMismatch);
    }
    if x == &x.field().one() {
        return Ok(Some(0));
    }
    let d = beta.field().distinguished();
    if x.cmp_rational(d, &Q::one())? != Ordering::Greater {
        return Ok(None);
    }
    let lx = log2_enclosure(x)?;
    let lb = log2_enclosure(beta)?;
    let est = (lx / lb).round();
    if !est.is_finite() || est < 0.0 {
        return Ok(None);
    }
    let est = est as i64;
    for k in [est, est - 1, est + 1] {
        if k >= 1 && &beta.pow(k)? == x {
            return Ok(Some(k as u64));
        }
    }
    Ok(None)
}

fn log2_enclosure(x: &FieldElement) -> Result<f64> {
    let iv = x.embed(x.field().distinguished(), 64)?.re;
    Ok(rat::log2_abs(&iv.mid()))
}

fn check_pisot_rank_one(beta: &FieldElement) -> Result<()> {
    if !is_rank_one(beta.field()) {
        return Err(Error::RankNotOne);
    }
    if !pisot_unit_test(beta)? {
        return Err(Error::NotPisotUnit(beta.to_string()));
    }
    Ok(())
}

/// Indicator of `{beta^i : i >= 0}` for a Pisot unit `beta` of a rank-one field.
pub fn power_set_predicate(beta: &FieldElement) -> Result<SetPredicate> {
    check_pisot_rank_one(beta)?;
    let b = beta.clone();
    Ok(SetPredicate::new(
        "power-set",
        None,
        Arc::new(move |x: &FieldElement| {
            if x.field() != b.field() {
                return Err(Error::FieldMismatch);
            }
            if x == &x.field().one() {
                return Ok(true);
            }
            if !pisot_unit_test(x)? {
                return Ok(false);
            }
            Ok(power_exponent(&b, x)?.is_some())
        }),
    ))
}

fn upper(x: &FieldElement, bits: u32) -> Result<Q> {
    Ok(x.embed(x.field().distinguished(), bits)?.re.hi)
}

/// Upper bounds `|alpha|` over non-distinguished conjugates.
fn conjugate_moduli(beta: &FieldElement, bits: u32) -> Result<Vec<Q>> {
    let f = beta.field();
    let mut out = Vec::new();
    for k in 0..f.degree() {
        if k != f.distinguished() {
            out.push(beta.embed(k, bits)?.abs(bits).hi);
        }
    }
    Ok(out)
}

/// Upper bound for `sup_k ||beta^(1+k)|| rho^|k|` over all integers `k`.
pub fn c_beta(beta: &FieldElement, rho: &Q) -> Result<Q> {
    const K0: i64 = 24;
    let d = beta.field().distinguished();
    let mods = conjugate_moduli(beta, 64)?;
    let bhi = upper(beta, 64)?;
    let blo = beta.embed(d, 64)?.re.lo;
    let mut c = Q::zero();
    let mut p = beta.clone();
    let mut rk = Q::one();
    for _k in 0..K0 {
        // ||beta^(1+k)|| rho^k
        let v = upper(&p.certified_dist(d)?, 64)? * &rk;
        c = c.max(v);
        p = &p * beta;
        rk *= rho;
    }
    let tail: Q = mods.iter().map(|a| a * num_traits::pow(a * rho, K0 as usize)).sum();
    c = c.max(tail);
    let inv = beta.inverse()?;
    let mut p = inv.clone();
    let mut rk = rho * rho;
    for _k in 2..K0 {
        // k = -2, -3, ...: ||beta^(1+k)|| rho^|k|
        let v = upper(&p.certified_dist(d)?, 64)? * &rk;
        c = c.max(v);
        p = &p * &inv;
        rk *= rho;
    }
    let tail = &bhi * num_traits::pow(rho / &blo, K0 as usize);
    Ok(c.max(tail))
}

/// Least `m` with `2 C rho^-m / (1 - rho^-m) < dist(beta) / 3`.
pub fn choose_m(beta: &FieldElement, rho: &Q) -> Result<u32> {
    let d = beta.field().distinguished();
    if *rho <= Q::one() {
        return Err(Error::InvalidRho("rho must exceed 1".into()));
    }
    if beta.cmp_rational(d, rho)? != Ordering::Greater {
        return Err(Error::InvalidRho("rho must be smaller than beta".into()));
    }
    let inv_rho = rho.recip();
    let f = beta.field();
    for k in (0..f.degree()).filter(|&k| k != d) {
        if beta.abs_sq_cmp(k, &(&inv_rho * &inv_rho))? != Ordering::Less {
            return Err(Error::InvalidRho(format!("conjugate {k} has modulus >= 1/rho")));
        }
    }
    let c = c_beta(beta, rho)?;
    let dist_lo = beta.certified_dist(d)?.embed(d, 64)?.re.lo;
    let target = dist_lo / rat::q(3);
    let mut rm = Q::one();
    for m in 1..=4096u32 {
        rm *= &inv_rho;
        if rat::q(2) * &c * &rm / (Q::one() - &rm) < target {
            return Ok(m);
        }
    }
    Err(Error::InvalidRho("rho too close to 1".into()))
}

/// Index set carried with a decidability certificate.
#[derive(Clone)]
pub enum IndexSet {
    Finite(BTreeSet<u64>),
    /// `{i : i mod modulus in residues}`.
    Periodic { modulus: u64, residues: BTreeSet<u64> },
    /// Any decidable predicate.
    Predicate(Arc<dyn Fn(u64) -> bool + Send + Sync>),
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexSet::Finite(s) => write!(f, "Finite({s:?})"),
            IndexSet::Periodic { modulus, residues } => write!(f, "Periodic({residues:?} mod {modulus})"),
            IndexSet::Predicate(_) => write!(f, "Predicate"),
        }
    }
}

impl IndexSet {
    pub fn finite(it: impl IntoIterator<Item = u64>) -> Self {
        IndexSet::Finite(it.into_iter().collect())
    }

    pub fn periodic(modulus: u64, residues: impl IntoIterator<Item = u64>) -> Self {
        IndexSet::Periodic { modulus, residues: residues.into_iter().map(|r| r % modulus).collect() }
    }

    pub fn evens() -> Self {
        Self::periodic(2, [0])
    }

    pub fn contains(&self, i: u64) -> bool {
        match self {
            IndexSet::Finite(s) => s.contains(&i),
            IndexSet::Periodic { modulus, residues } => residues.contains(&(i % modulus)),
            IndexSet::Predicate(p) => p(i),
        }
    }
}

/// Parameters of the hereditary construction for `{beta^i : i in I}`.
#[derive(Clone, Debug)]
pub struct PisotSetSpec {
    pub beta: FieldElement,
    pub rho: Q,
    pub m: u32,
    pub indices: IndexSet,
    /// `dist(beta)` as an exact element.
    pub dist_beta: FieldElement,
}

impl PisotSetSpec {
    pub fn new(beta: &FieldElement, rho: Q, indices: IndexSet) -> Result<Self> {
        check_pisot_rank_one(beta)?;
        let m = choose_m(beta, &rho)?;
        let dist_beta = beta.certified_dist(beta.field().distinguished())?;
        Ok(PisotSetSpec { beta: beta.clone(), rho, m, indices, dist_beta })
    }
}

/// Certified data behind one hereditary membership decision.
#[derive(Clone, Debug)]
pub struct XiReport {
    pub exponent: u64,
    pub residue: u64,
    pub j: u64,
    pub depth: u64,
    /// Enclosure of `||gamma^j xi_a||`.
    pub norm: Interval,
    /// Enclosure of `(2/3) dist(beta)`.
    pub threshold: Interval,
    pub member: bool,
}

/// Decides `j in I_a` through `||gamma^j xi_a|| >= (2/3) dist(beta)` with
/// `xi_a = sum_{j' in I_a} beta gamma^-j'` and `I_a = {j' : a + m j' in I}`.
pub fn xi_test(spec: &PisotSetSpec, a: u64, j: u64) -> Result<XiReport> {
    let beta = &spec.beta;
    let f = beta.field();
    let d = f.distinguished();
    let m = spec.m as u64;
    let gamma_inv = beta.pow(-(m as i64))?;
    let in_ia = |jj: u64| spec.indices.contains(a + m * jj);
    let thr_el = spec.dist_beta.scale(&rat::qf(2, 3));
    let mut depth = 2u64;
    let mut bits = 64u32;
    // beta^(1 + m j), then multiplied by gamma^-1 per step
    let start = beta.pow(1 + (m * j) as i64)?;
    for _ in 0..12 {
        let mut s = f.zero();
        let mut term = start.clone();
        for jj in 0..=j + depth {
            if in_ia(jj) {
                s = &s + &term;
            }
            term = &term * &gamma_inv;
        }
        // tail in [0, beta^(1 - m(D+1)) / (1 - beta^-m)]
        let tail_el = beta.pow(1 - (m * (depth + 1)) as i64)?;
        let gi = gamma_inv.embed(d, bits)?.re;
        let tail_hi = tail_el.embed(d, bits)?.re.hi / (Q::one() - gi.hi);
        let sv = s.embed(d, bits)?.re;
        let v = Interval::new(sv.lo.clone(), &sv.hi + &tail_hi);
        let thr = thr_el.embed(d, bits)?.re;
        let n = rat::floor(&(v.lo.clone() + rat::qf(1, 2)));
        let nq = rat::qi(n);
        if v.hi <= &nq + rat::qf(1, 2) {
            let a1 = (&v.lo - &nq).abs();
            let a2 = (&v.hi - &nq).abs();
            let (lo, hi) = if v.contains(&nq) {
                (Q::zero(), a1.max(a2))
            } else if a1 < a2 {
                (a1, a2)
            } else {
                (a2, a1)
            };
            let norm = Interval::new(lo, hi);
            if norm.lo >= thr.hi || norm.hi < thr.lo {
                let member = norm.lo >= thr.hi;
                return Ok(XiReport { exponent: a + m * j, residue: a, j, depth, norm, threshold: thr, member });
            }
        }
        depth += 2;
        bits *= 2;
    }
    Err(Error::ThresholdAmbiguous)
}

/// Hereditary predicate for `{beta^i : i in I}`, assembled over residues
/// modulo `m` from the single-residue tests.
pub fn hereditary_predicate(spec: &PisotSetSpec) -> SetPredicate {
    let spec = spec.clone();
    SetPredicate::new("hereditary-power-set", None, Arc::new(move |x: &FieldElement| Ok(hereditary_explain(&spec, x)?.is_some_and(|r| r.member))))
}

/// The certified decision for `x`, or `None` when `x` is not a power of `beta`.
pub fn hereditary_explain(spec: &PisotSetSpec, x: &FieldElement) -> Result<Option<XiReport>> {
    if x.field() != spec.beta.field() {
        return Err(Error::FieldMismatch);
    }
    if x != &x.field().one() && !pisot_unit_test(x)? {
        return Ok(None);
    }
    let Some(i) = power_exponent(&spec.beta, x)? else {
        return Ok(None);
    };
    let m = spec.m as u64;
    xi_test(spec, i % m, i / m).map(Some)
}

/// Pairs `(i, j)` with `Tr(beta^i x) = Tr(beta^j y)`, `0 <= i, j <= bound`.
pub fn trace_collision_search(x: &FieldElement, y: &FieldElement, bound: u64) -> Result<Vec<(u64, u64)>> {
    const LIMIT: u64 = 10_000;
    if bound > LIMIT {
        return Err(Error::BoundTooLarge { bound, limit: LIMIT });
    }
    if x.field() != y.field() {
        return Err(Error::FieldMismatch);
    }
    let tx = trace_sequence(x, bound as usize + 1);
    let ty = trace_sequence(y, bound as usize + 1);
    let mut by_value: HashMap<&Q, Vec<u64>> = HashMap::new();
    for (j, v) in ty.iter().enumerate() {
        by_value.entry(v).or_default().push(j as u64);
    }
    let mut out = Vec::new();
    for (i, v) in tx.iter().enumerate() {
        if let Some(js) = by_value.get(v) {
            out.extend(js.iter().map(|&j| (i as u64, j)));
        }
    }
    Ok(out)
}

/// `Tr(beta^i x)` for `i < n`, using the recurrence after the first `m` terms.
pub fn trace_sequence(x: &FieldElement, n: usize) -> Vec<Q> {
    let f = x.field();
    let m = f.degree();
    let b = f.gen();
    let mut out = Vec::with_capacity(n);
    let mut p = x.clone();
    for _ in 0..n.min(m) {
        out.push(p.trace());
        p = &p * &b;
    }
    let c: Vec<Q> = (0..m).map(|k| -f.minpoly().coeff(k)).collect();
    while out.len() < n {
        let i = out.len() - m;
        let v: Q = (0..m).map(|k| &c[k] * &out[i + k]).sum();
        out.push(v);
    }
    out
}

/// Pairs of exponents `(k, l)` with `1 <= |k|, |l| <= bound` for which
/// `beta^k` and `sigma_j(beta)^l` agree: equal characteristic polynomials of
/// `beta^k`, `beta^l` and overlapping boxes at 128 bits. Desk-scale check.
pub fn conjugate_power_relations(beta: &FieldElement, bound: i64) -> Result<Vec<(i64, i64, usize)>> {
    let f = beta.field();
    let d = f.distinguished();
    let mut out = Vec::new();
    let mut cache: HashMap<i64, (FieldElement, crate::poly::Poly)> = HashMap::new();
    for e in (-bound..=bound).filter(|e| *e != 0) {
        let p = beta.pow(e)?;
        let cp = p.char_poly();
        cache.insert(e, (p, cp));
    }
    for k in (-bound..=bound).filter(|e| *e != 0) {
        for l in (-bound..=bound).filter(|e| *e != 0) {
            let (pk, ck) = &cache[&k];
            let (pl, cl) = &cache[&l];
            if ck != cl {
                continue;
            }
            let zk = pk.embed(d, 128)?;
            for j in 0..f.degree() {
                if j == d {
                    continue;
                }
                let zl = pl.embed(j, 128)?;
                if zk.re.intersects(&zl.re) && zk.im.intersects(&zl.im) {
                    out.push((k, l, j));
                }
            }
        }
    }
    Ok(out)
}

/// Sign of the norm, used to report units.
pub fn norm_sign(x: &FieldElement) -> i32 {
    let n = x.norm();
    if n.is_zero() {
        0
    } else if n.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numberfield::fields;
    use crate::rat::{q, qf};

    #[test]
    fn lattice_of_golden_integers() {
        let k = fields::golden();
        let l = lattice_indicator(&k, &[k.one(), k.gen()]).unwrap();
        assert!(l.contains(&k.gen()).unwrap());
        assert!(!l.contains(&k.gen().scale(&qf(1, 2))).unwrap());
        assert!(l.contains(&k.element_i64(&[3, -2]).unwrap()).unwrap());
        let sub = lattice_indicator(&k, &[k.gen().scale(&q(2))]).unwrap();
        assert!(sub.contains(&k.element_i64(&[0, -4]).unwrap()).unwrap());
        assert!(!sub.contains(&k.element_i64(&[1, 2]).unwrap()).unwrap());
        assert!(!sub.contains(&k.element_i64(&[0, 1]).unwrap()).unwrap());
        assert_eq!(
            lattice_indicator(&k, &[k.gen(), k.gen().scale(&q(3))]).unwrap_err(),
            Error::DependentBasis
        );
    }

    #[test]
    fn units_and_detectors() {
        let k = fields::golden();
        let u = unit_indicator(&k);
        let phi = k.gen();
        assert!(u.contains(&phi).unwrap());
        assert!(!u.contains(&k.rational(q(2))).unwrap());
        assert!(u.contains(&phi.pow(3).unwrap()).unwrap());
        assert!(pisot_unit_test(&phi).unwrap());
        assert!(!pisot_unit_test(&phi.inverse().unwrap()).unwrap());
        let s = fields::silver();
        assert!(pisot_unit_test(&s.gen()).unwrap());
        let sq = fields::salem_quartic();
        assert!(salem_test(&sq.gen()).unwrap());
        assert!(!pisot_unit_test(&sq.gen()).unwrap());
        assert!(!salem_test(&phi).unwrap());
        assert!(!salem_test(&sq.one()).unwrap());
    }

    #[test]
    fn power_set() {
        let k = fields::golden();
        let phi = k.gen();
        let p = power_set_predicate(&phi).unwrap();
        assert!(p.contains(&phi.pow(7).unwrap()).unwrap());
        assert!(p.contains(&k.one()).unwrap());
        assert!(!p.contains(&phi.inverse().unwrap()).unwrap());
        assert!(!p.contains(&phi.scale(&q(2))).unwrap());
        assert_eq!(power_set_predicate(&fields::salem_quartic().gen()).unwrap_err(), Error::RankNotOne);
    }

    #[test]
    fn choose_m_values() {
        let phi = fields::golden().gen();
        assert_eq!(choose_m(&phi, &qf(3, 2)).unwrap(), 8);
        let s = fields::silver().gen();
        let ms = choose_m(&s, &q(2)).unwrap();
        assert!(ms < 8, "m = {ms}");
        assert!(matches!(choose_m(&phi, &q(2)), Err(Error::InvalidRho(_))));
    }

    #[test]
    fn hereditary_even_powers() {
        let phi = fields::golden().gen();
        let spec = PisotSetSpec::new(&phi, qf(3, 2), IndexSet::evens()).unwrap();
        let h = hereditary_predicate(&spec);
        for i in 0..12 {
            assert_eq!(h.contains(&phi.pow(i).unwrap()).unwrap(), i % 2 == 0, "i = {i}");
        }
        let m = spec.m as i64;
        assert!(!h.contains(&phi.pow(m).unwrap().scale(&q(2))).unwrap());
    }

    #[test]
    fn collisions() {
        let k = fields::golden();
        let one = k.one();
        let c = trace_collision_search(&one, &one, 20).unwrap();
        // Tr(phi^1) = Tr(phi^0)? 1 vs 2: no; only the diagonal
        assert!(c.iter().all(|(i, j)| i == j));
        assert_eq!(c.len(), 21);
    }
}
