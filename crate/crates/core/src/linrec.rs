//! Linear recurrent sequences whose characteristic polynomial is the minimal
//! polynomial of a Pisot or Salem number.
//!
//! A sequence with `n_i = Tr(beta^i x)` is rebuilt from its terms through the
//! trace representation `x`. Nearest-integer stepping and transfer maps cover
//! the Pisot case. The Salem case goes through a finite family of correction
//! tuples.

use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::constructions::{is_pisot_number, power_exponent, salem_test};
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::linalg;
use crate::numberfield::{FieldElement, NumberField, RootSelector};
use crate::poly::Poly;
use crate::rat::{self, Q};

const BITS: u32 = 64;

/// `n_{i+m} = sum_j a_j n_{i+j}` with exact rational terms.
pub struct LinRecSeq {
    charpoly: Poly,
    coeffs: Vec<Q>,
    init: Vec<Q>,
    cache: Mutex<Vec<Q>>,
    field: Mutex<Option<NumberField>>,
    trace_rep: Mutex<Option<FieldElement>>,
}

impl Clone for LinRecSeq {
    fn clone(&self) -> Self {
        LinRecSeq {
            charpoly: self.charpoly.clone(),
            coeffs: self.coeffs.clone(),
            init: self.init.clone(),
            cache: Mutex::new(self.cache.lock().expect("term cache").clone()),
            field: Mutex::new(self.field.lock().expect("field").clone()),
            trace_rep: Mutex::new(self.trace_rep.lock().expect("trace rep").clone()),
        }
    }
}

impl std::fmt::Debug for LinRecSeq {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let init: Vec<String> = self.init.iter().map(rat::fmt_rational).collect();
        write!(f, "LinRecSeq({}; {})", self.charpoly, init.join(", "))
    }
}

impl LinRecSeq {
    /// Sequence from a characteristic polynomial and its first `m` terms.
    pub fn new(charpoly: &Poly, init: Vec<Q>) -> Result<Self> {
        if charpoly.is_zero() || charpoly.degree() == 0 {
            return Err(Error::ZeroDegree);
        }
        if !charpoly.is_squarefree() {
            return Err(Error::NotSquarefree);
        }
        let p = charpoly.monic();
        let m = p.degree();
        if init.len() != m {
            return Err(Error::DegreeMismatch { degree: m, got: init.len() });
        }
        let coeffs = (0..m).map(|k| -p.coeff(k)).collect();
        Ok(LinRecSeq {
            charpoly: p,
            coeffs,
            cache: Mutex::new(init.clone()),
            init,
            field: Mutex::new(None),
            trace_rep: Mutex::new(None),
        })
    }

    /// Polynomial coefficients listed leading term first.
    pub fn from_leading_first(charpoly: &[Q], init: Vec<Q>) -> Result<Self> {
        Self::new(&Poly::from_leading_first(charpoly), init)
    }

    pub fn from_i64(charpoly_low_first: &[i64], init: &[i64]) -> Result<Self> {
        Self::new(&Poly::from_i64(charpoly_low_first), init.iter().map(|&v| rat::q(v)).collect())
    }

    pub fn fibonacci() -> Self {
        Self::from_i64(&[-1, -1, 1], &[0, 1]).expect("valid recurrence")
    }

    pub fn lucas() -> Self {
        Self::from_i64(&[-1, -1, 1], &[2, 1]).expect("valid recurrence")
    }

    pub fn perrin() -> Self {
        Self::from_i64(&[-1, -1, 0, 1], &[3, 0, 2]).expect("valid recurrence")
    }

    pub fn pell() -> Self {
        Self::from_i64(&[-1, -2, 1], &[0, 1]).expect("valid recurrence")
    }

    /// Power sums of the quartic Salem number, root of `x^4 - x^3 - x^2 - x + 1`.
    pub fn salem_power_sums() -> Self {
        Self::from_i64(&[1, -1, -1, -1, 1], &[4, 1, 3, 7]).expect("valid recurrence")
    }

    pub fn degree(&self) -> usize {
        self.init.len()
    }

    /// Monic characteristic polynomial.
    pub fn charpoly(&self) -> &Poly {
        &self.charpoly
    }

    pub fn init(&self) -> &[Q] {
        &self.init
    }

    /// Recurrence weights `a_j`.
    pub fn recurrence_coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero_sequence(&self) -> bool {
        self.init.iter().all(Zero::is_zero)
    }

    /// Least positive `L` making every term an integer (for integral monic
    /// characteristic polynomials).
    pub fn scale(&self) -> BigInt {
        rat::common_denominator(&self.init)
    }

    pub fn term(&self, i: u64) -> Q {
        let i = i as usize;
        let mut c = self.cache.lock().expect("term cache");
        let m = self.degree();
        while c.len() <= i {
            let s = c.len() - m;
            let v: Q = (0..m).map(|j| &self.coeffs[j] * &c[s + j]).sum();
            c.push(v);
        }
        c[i].clone()
    }

    /// Terms `n_0, ..., n_{n-1}`.
    pub fn terms(&self, n: usize) -> Vec<Q> {
        if n > 0 {
            self.term(n as u64 - 1);
        }
        self.cache.lock().expect("term cache")[..n].to_vec()
    }

    /// `K = Q(beta)` with `beta` the dominant real root. Fails on reducible
    /// characteristic polynomials.
    pub fn field(&self) -> Result<NumberField> {
        let mut g = self.field.lock().expect("field");
        if let Some(f) = g.as_ref() {
            return Ok(f.clone());
        }
        let f = NumberField::from_poly(&self.charpoly, RootSelector::Auto)?;
        *g = Some(f.clone());
        Ok(f)
    }

    pub fn beta(&self) -> Result<FieldElement> {
        Ok(self.field()?.gen())
    }

    /// The unique `x` with `Tr(beta^i x) = n_i` for all `i`.
    pub fn trace_representation(&self) -> Result<FieldElement> {
        if let Some(x) = self.trace_rep.lock().expect("trace rep").as_ref() {
            return Ok(x.clone());
        }
        let f = self.field()?;
        let x = solve_traces(&f, &self.init)?;
        *self.trace_rep.lock().expect("trace rep") = Some(x.clone());
        Ok(x)
    }

    fn require_pisot(&self) -> Result<FieldElement> {
        let b = self.beta()?;
        if !is_pisot_number(&b)? {
            return Err(Error::NotPisot);
        }
        Ok(b)
    }

    fn require_salem(&self) -> Result<FieldElement> {
        let b = self.beta()?;
        if !salem_test(&b)? {
            return Err(Error::NotSalem);
        }
        Ok(b)
    }

    /// `true` when the dominant root is a Pisot number.
    pub fn is_pisot(&self) -> Result<bool> {
        is_pisot_number(&self.beta()?)
    }

    pub fn is_salem(&self) -> Result<bool> {
        salem_test(&self.beta()?)
    }

    /// Upper bounds on `|sigma_k(x)|` for the scaled integer sequence, one per
    /// embedding.
    fn weight_bounds(&self) -> Result<Vec<Q>> {
        let x = self.trace_representation()?;
        let l = rat::qi(self.scale());
        let f = x.field().clone();
        (0..f.degree()).map(|k| Ok(&x.embed(k, BITS)?.abs(BITS).hi * &l)).collect()
    }
}

/// Solves `Tr(beta^i y) = t_i` for `0 <= i < m`.
fn solve_traces(f: &NumberField, t: &[Q]) -> Result<FieldElement> {
    let m = f.degree();
    if t.len() != m {
        return Err(Error::DimensionMismatch { expected: m, got: t.len() });
    }
    let h: Vec<Vec<Q>> = (0..m).map(|i| (0..m).map(|k| f.power_sum(i + k)).collect()).collect();
    let y = linalg::solve(&h, t).ok_or(Error::SingularSystem)?;
    f.element(y)
}

/// `nint(beta^j n)`.
pub fn pisot_step(beta: &FieldElement, j: u32, n: &Q) -> Result<BigInt> {
    let d = beta.field().distinguished();
    beta.pow(j as i64)?.scale(n).certified_nint(d)
}

/// Onset of nearest-integer stepping by `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct I0Report {
    pub j: u32,
    /// Least index from which the certified error bound stays below `1/2`.
    pub sound: u64,
    /// Least index from which stepping holds, scanned below `sound`.
    pub observed: u64,
}

/// Certified onset `i0` with `nint(beta^j n_i) = n_{i+j}` for all `i >= i0`.
pub fn verified_i0(seq: &LinRecSeq, j: u32) -> Result<I0Report> {
    let beta = seq.require_pisot()?;
    if seq.is_zero_sequence() || j == 0 {
        return Ok(I0Report { j, sound: 0, observed: 0 });
    }
    let f = beta.field().clone();
    let d = f.distinguished();
    let w = seq.weight_bounds()?;
    let bj = beta.pow(j as i64)?;
    let bd = bj.embed(d, BITS)?;
    // Terms of sum_k |w_k| |alpha_k^j - beta^j| |alpha_k|^i.
    let mut terms = Vec::new();
    for k in (0..f.degree()).filter(|&k| k != d) {
        let diff = &bj.embed(k, BITS)? - &bd;
        let a = beta.embed(k, BITS)?.abs(BITS).hi;
        terms.push((rat::round_up(&(&w[k] * &diff.abs(BITS).hi), BITS), rat::round_up(&a, BITS)));
    }
    let half = rat::qf(1, 2);
    let mut i = 0u64;
    loop {
        let bound: Q = terms.iter().map(|(c, a)| c * num_traits::pow(a.clone(), i as usize)).sum();
        if bound < half {
            break;
        }
        i += 1;
        if i > 100_000 {
            return Err(Error::AuditFailed("stepping bound does not converge".into()));
        }
    }
    let sound = i;
    let l = rat::qi(seq.scale());
    let holds = |i: u64| -> Result<bool> {
        Ok(rat::qi(pisot_step(&beta, j, &(&seq.term(i) * &l))?) == &seq.term(i + j as u64) * &l)
    };
    let mut observed = sound;
    while observed > 0 && holds(observed - 1)? {
        observed -= 1;
    }
    Ok(I0Report { j, sound, observed })
}

/// A fixed real multiplier `s` in the distinguished embedding with a
/// floating approximation and a rigorous bound on its error.
#[derive(Clone, Debug)]
struct Step {
    exact: FieldElement,
    approx: f64,
    err: f64,
}

impl Step {
    fn new(exact: FieldElement) -> Result<Self> {
        let d = exact.field().distinguished();
        let iv = exact.embed(d, BITS)?.re;
        let approx = rat::to_f64(&iv.mid());
        let off = match Q::from_float(approx) {
            Some(a) => rat::abs(&(a - iv.mid())) + iv.radius(),
            None => return Ok(Step { exact, approx: f64::NAN, err: f64::INFINITY }),
        };
        Ok(Step { exact, approx, err: 2.0 * rat::to_f64(&off) + f64::MIN_POSITIVE })
    }

    /// `floor(s n + shift)`, through floating point when the result is
    /// certain and through exact embeddings otherwise.
    fn floor_shifted(&self, n: &Q, half: bool) -> Result<BigInt> {
        if let Some(v) = self.fast(n, half) {
            return Ok(v);
        }
        let d = self.exact.field().distinguished();
        let x = self.exact.scale(n);
        if half {
            x.certified_nint(d)
        } else {
            x.certified_floor(d)
        }
    }

    fn fast(&self, n: &Q, half: bool) -> Option<BigInt> {
        if !n.denom().is_one() {
            return None;
        }
        let ni = n.numer().to_i64().filter(|v| v.unsigned_abs() < 1 << 52)?;
        let nf = ni as f64;
        let v = self.approx * nf + if half { 0.5 } else { 0.0 };
        let e = self.err * nf.abs() + 4.0 * f64::EPSILON * (v.abs() + 1.0);
        let (lo, hi) = ((v - e).floor(), (v + e).floor());
        if lo == hi && lo.abs() < 9.0e15 {
            Some(BigInt::from(lo as i64))
        } else {
            None
        }
    }
}

/// `g(n) = sum_j w_j nint(beta^j L n)` carrying one sequence onto another.
#[derive(Clone, Debug)]
pub struct TransferMap {
    pub weights: Vec<FieldElement>,
    /// `beta^j L` for `j < m`.
    steps: Vec<Step>,
    pub scale: BigInt,
    /// Certified onset: `g(src_i) = dst_i` for every `i >= onset`.
    pub onset: u64,
    /// Observed onset on the scanned window.
    pub observed_onset: u64,
}

impl TransferMap {
    pub fn apply(&self, n: &Q) -> Result<FieldElement> {
        let f = self.weights[0].field();
        let mut acc = f.zero();
        for (w, s) in self.weights.iter().zip(&self.steps) {
            let r = rat::qi(s.floor_shifted(n, true)?);
            if !r.is_zero() {
                acc = &acc + &w.scale(&r);
            }
        }
        Ok(acc)
    }

    /// Human-readable form `sum_j w_j * nint(beta^j * n)`.
    pub fn describe(&self) -> String {
        let parts: Vec<String> = self
            .weights
            .iter()
            .enumerate()
            .filter(|(_, w)| !w.is_zero())
            .map(|(j, w)| {
                let w = match w.as_rational() {
                    Some(q) => rat::fmt_rational(&q),
                    None => format!("[{}]", w.to_strings().join(", ")),
                };
                let l = if self.scale.is_one() { String::new() } else { format!("{} * ", self.scale) };
                match j {
                    0 if self.scale.is_one() => format!("{w} * n"),
                    0 => format!("{w} * {l}n"),
                    1 => format!("{w} * nint({l}beta * n)"),
                    _ => format!("{w} * nint({l}beta^{j} * n)"),
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// Transfer from `src` onto the sequence with first terms `targets` (in `K`)
/// satisfying the same recurrence.
pub fn transfer_to_values(src: &LinRecSeq, targets: &[FieldElement]) -> Result<TransferMap> {
    let beta = src.require_pisot()?;
    if src.is_zero_sequence() {
        return Err(Error::ZeroSourceSequence);
    }
    let f = beta.field().clone();
    let m = f.degree();
    if targets.len() != m {
        return Err(Error::DimensionMismatch { expected: m, got: targets.len() });
    }
    let scale = src.scale();
    let l = rat::qi(scale.clone());
    let h: Vec<Vec<Q>> = (0..m).map(|i| (0..m).map(|j| &src.term((i + j) as u64) * &l).collect()).collect();
    let hinv = linalg::inverse(&h).ok_or(Error::SingularSystem)?;
    let weights: Vec<FieldElement> = (0..m)
        .map(|j| targets.iter().enumerate().fold(f.zero(), |acc, (i, t)| &acc + &t.scale(&hinv[j][i])))
        .collect();
    let steps: Vec<Step> = (0..m).map(|j| Step::new(beta.pow(j as i64)?.scale(&l))).collect::<Result<_>>()?;
    let mut onset = 0;
    for j in 1..m as u32 {
        onset = onset.max(verified_i0(src, j)?.sound);
    }
    let mut map = TransferMap { weights, steps, scale, onset, observed_onset: onset };
    // Target values from the same combination of exact source terms.
    let target = |i: u64| -> FieldElement {
        map.weights
            .iter()
            .enumerate()
            .fold(f.zero(), |acc, (j, w)| &acc + &w.scale(&(&src.term(i + j as u64) * &l)))
    };
    let mut observed = onset;
    while observed > 0 && map.apply(&src.term(observed - 1))? == target(observed - 1) {
        observed -= 1;
    }
    map.observed_onset = observed;
    Ok(map)
}

/// Transfer map with `g(src_i) = dst_i` beyond the onset.
pub fn transfer_map(src: &LinRecSeq, dst: &LinRecSeq) -> Result<TransferMap> {
    if src.charpoly() != dst.charpoly() {
        return Err(Error::CharpolyMismatch);
    }
    let f = src.field()?;
    let t: Vec<FieldElement> = dst.init().iter().map(|q| f.rational(q.clone())).collect();
    transfer_to_values(src, &t)
}

/// Transfer map with `g(src_i) = beta^i` beyond the onset.
pub fn transfer_to_powers(src: &LinRecSeq) -> Result<TransferMap> {
    let f = src.field()?;
    let b = f.gen();
    let t: Vec<FieldElement> = (0..f.degree()).map(|j| b.pow(j as i64)).collect::<Result<_>>()?;
    transfer_to_values(src, &t)
}

/// `beta^i` from the window `(n_i, ..., n_{i+m-1})` by an exact linear solve.
pub fn salem_recover_exact(seq: &LinRecSeq, window: &[Q]) -> Result<FieldElement> {
    let f = seq.field()?;
    let x = seq.trace_representation()?;
    if x.is_zero() {
        return Err(Error::ZeroTraceRep);
    }
    solve_traces(&f, window)?.checked_div(&x)
}

/// Recovery of `beta^i` from a single term `n_i` through correction tuples.
///
/// With `d_j` the trace-dual basis of the powers of `beta` divided by `x`,
/// `g_c(n) = sum_j d_j (floor(beta^j n) - c_j)` equals `beta^i` at `n = n_i`
/// when `c` is the correction tuple `c_j = floor(beta^j n_i) - n_{i+j}`.
#[derive(Clone, Debug)]
pub struct SalemRecoveryFamily {
    pub beta: FieldElement,
    pub trace_rep: FieldElement,
    /// Exact coefficients `d_j` in `K`.
    pub coeffs: Vec<FieldElement>,
    /// Enclosures of the real values `sigma(d_j)` in the distinguished embedding.
    pub gamma: Vec<Interval>,
    /// Correction bounds `C_j`.
    pub bounds: Vec<i64>,
    /// Largest `|c_j|` observed on the verified range.
    pub observed: Vec<i64>,
    pub verified: u64,
    scale: BigInt,
    gamma_f64: Vec<f64>,
    beta_f64: f64,
    /// `beta^k` rounded from exact embeddings, up to about `2^64`.
    powers_f64: Vec<f64>,
    /// `beta^j L` for `j < m`.
    steps: Vec<Step>,
}

impl SalemRecoveryFamily {
    /// `|C| = prod (2 C_j + 1)`.
    pub fn candidate_count(&self) -> u128 {
        self.bounds.iter().map(|&c| 2 * c as u128 + 1).product()
    }

    pub fn contains(&self, c: &[i64]) -> bool {
        c.len() == self.bounds.len() && c.iter().zip(&self.bounds).all(|(x, b)| x.abs() <= *b)
    }

    /// `floor(beta^j L n)` for all `j`.
    pub fn floors(&self, n: &Q) -> Result<Vec<BigInt>> {
        self.steps.iter().map(|s| s.floor_shifted(n, false)).collect()
    }

    /// Exact `g_c(n)`.
    pub fn g(&self, c: &[i64], n: &Q) -> Result<FieldElement> {
        let fl = self.floors(n)?;
        Ok(self.g_from_floors(c, &fl))
    }

    fn g_from_floors(&self, c: &[i64], fl: &[BigInt]) -> FieldElement {
        let f = self.beta.field();
        self.coeffs
            .iter()
            .zip(fl.iter().zip(c))
            .fold(f.zero(), |acc, (dj, (a, cj))| &acc + &dj.scale(&rat::qi(a - cj)))
    }

    /// Interval enclosure of `sigma(g_c(n))`.
    pub fn g_interval(&self, c: &[i64], n: &Q) -> Result<Interval> {
        let fl = self.floors(n)?;
        let mut acc = Interval::zero();
        for ((g, a), cj) in self.gamma.iter().zip(&fl).zip(c) {
            acc = &acc + &g.scale(&rat::qi(a - cj));
        }
        Ok(acc)
    }

    /// Correction tuple of index `i`, `c_j = floor(beta^j n_i) - n_{i+j}`.
    pub fn correction(&self, seq: &LinRecSeq, i: u64) -> Result<Vec<BigInt>> {
        let l = rat::qi(self.scale.clone());
        let fl = self.floors(&seq.term(i))?;
        Ok(fl
            .into_iter()
            .enumerate()
            .map(|(j, a)| a - (&seq.term(i + j as u64) * &l).to_integer())
            .collect())
    }

    /// Every `(c, k)` with `c` in the candidate set, `k <= max_k` and
    /// `g_c(n) = beta^k` exactly.
    pub fn search(&self, n: &Q, max_k: u64) -> Result<Vec<(Vec<i64>, u64)>> {
        let fl = self.floors(n)?;
        let m = self.bounds.len();
        // c_0 = floor(L n) - L n is forced for every index.
        let c0 = rat::qi(fl[0].clone()) - n * rat::qi(self.scale.clone());
        if !rat::is_integer(&c0) {
            return Ok(Vec::new());
        }
        let c0 = c0.to_integer().to_i64().unwrap_or(i64::MAX);
        if c0.abs() > self.bounds[0] {
            return Ok(Vec::new());
        }
        let flf: Vec<f64> = fl.iter().map(|a| a.to_f64().unwrap_or(f64::INFINITY)).collect();
        let v0: f64 = (0..m).map(|j| self.gamma_f64[j] * flf[j]).sum::<f64>() - self.gamma_f64[0] * c0 as f64;
        let mag: f64 =
            v0.abs() + (0..m).map(|j| self.gamma_f64[j].abs() * self.bounds[j] as f64).sum::<f64>() + 1.0;
        let tol = 64.0 * f64::EPSILON * mag;
        let lb = self.beta_f64.ln();
        let mut out = Vec::new();
        let mut c: Vec<i64> = self.bounds.iter().map(|b| -b).collect();
        c[0] = c0;
        loop {
            let v = v0 - (1..m).map(|j| self.gamma_f64[j] * c[j] as f64).sum::<f64>();
            if v > 0.5 {
                let k = (v.ln() / lb).round().max(0.0);
                let (bk, t) = match self.powers_f64.get(k as usize) {
                    Some(&b) => (b, tol),
                    None => (self.beta_f64.powf(k), tol.max(v * 1e-12)),
                };
                if (v - bk).abs() <= t && k as u64 <= max_k {
                    if let Some(k) = self.confirm_power(&self.g_from_floors(&c, &fl), k as u64)? {
                        out.push((c.clone(), k));
                    }
                }
            }
            // Odometer over c_1..c_{m-1}.
            let mut j = 1;
            while j < m && c[j] == self.bounds[j] {
                c[j] = -self.bounds[j];
                j += 1;
            }
            if j == m {
                break;
            }
            c[j] += 1;
        }
        Ok(out)
    }

    fn confirm_power(&self, g: &FieldElement, est: u64) -> Result<Option<u64>> {
        let one = self.beta.field().one();
        if g == &one {
            return Ok(Some(0));
        }
        for k in [est, est.saturating_sub(1), est + 1] {
            // Positive powers of a Salem number are Salem.
            if k >= 1 && &self.beta.pow(k as i64)? == g {
                return Ok(Some(k));
            }
        }
        Ok(None)
    }
}

/// Builds the recovery family and audits it on `0..verify_range`.
pub fn salem_recovery_family(seq: &LinRecSeq, verify_range: u64) -> Result<SalemRecoveryFamily> {
    let beta = seq.require_salem()?;
    let x = seq.trace_representation()?;
    if x.is_zero() {
        return Err(Error::ZeroTraceRep);
    }
    let f = beta.field().clone();
    let m = f.degree();
    let d = f.distinguished();
    let powers: Vec<FieldElement> = (0..m).map(|j| beta.pow(j as i64)).collect::<Result<_>>()?;
    let dual = f.dual_basis(&powers).map_err(|_| Error::VandermondeSingular)?;
    let coeffs: Vec<FieldElement> = dual.iter().map(|b| b.checked_div(&x)).collect::<Result<_>>()?;
    let gamma: Vec<Interval> = coeffs.iter().map(|c| Ok(c.embed(d, BITS)?.re)).collect::<Result<_>>()?;
    let scale = seq.scale();
    let l = rat::qi(scale.clone());

    // |n_{i+j} - beta^j n_i| <= sum_{k != d} |w_k| (|alpha_k|^j + beta^j) and
    // |alpha_k| <= 1, so |c_j| <= floor(1 + sum |w_k| (beta^j + 1)).
    let w = seq.weight_bounds()?;
    let wsum: Q = (0..m).filter(|&k| k != d).map(|k| w[k].clone()).sum();
    let mut bounds = Vec::with_capacity(m);
    for p in &powers {
        let bj = p.embed(d, BITS)?.re.hi;
        let e = &wsum * (bj + Q::one()) + Q::one();
        bounds.push(rat::floor(&e).to_i64().ok_or(Error::BoundTooLarge { bound: u64::MAX, limit: i64::MAX as u64 })?);
    }
    let steps = powers.iter().map(|p| Step::new(p.scale(&l))).collect::<Result<_>>()?;
    let mut powers_f64 = Vec::new();
    let mut bk = f.one();
    loop {
        let v = bk.embed(d, BITS)?.re.to_f64();
        powers_f64.push(v);
        if v > 1.8e19 {
            break;
        }
        bk = &bk * &beta;
    }
    let mut fam = SalemRecoveryFamily {
        beta: beta.clone(),
        trace_rep: x,
        gamma_f64: gamma.iter().map(Interval::to_f64).collect(),
        beta_f64: beta.to_f64(),
        powers_f64,
        coeffs,
        gamma,
        bounds,
        observed: vec![0; m],
        verified: verify_range,
        scale,
        steps,
    };
    for i in 0..verify_range {
        let c = fam.correction(seq, i)?;
        let ci: Vec<i64> = c.iter().map(|v| v.to_i64().unwrap_or(i64::MAX)).collect();
        if !fam.contains(&ci) {
            return Err(Error::AuditFailed(format!("correction tuple at index {i} exceeds the bounds")));
        }
        for (o, v) in fam.observed.iter_mut().zip(&ci) {
            *o = (*o).max(v.abs());
        }
        let window: Vec<Q> = (0..m).map(|j| seq.term(i + j as u64)).collect();
        let exact = salem_recover_exact(seq, &window)?;
        let bi = beta.pow(i as i64)?;
        let n = seq.term(i);
        if exact != bi || fam.g(&ci, &n)? != bi {
            return Err(Error::AuditFailed(format!("recovery disagrees at index {i}")));
        }
        if !fam.g_interval(&ci, &n)?.intersects(&bi.embed(d, BITS)?.re) {
            return Err(Error::AuditFailed(format!("coefficient enclosure misses index {i}")));
        }
    }
    Ok(fam)
}

enum Route {
    Pisot { map: TransferMap, beta: FieldElement, unit: bool },
    Salem { family: SalemRecoveryFamily },
}

/// Exact membership oracle for the value set `{n_i : i >= 0}`.
pub struct ValueSet {
    seq: LinRecSeq,
    route: Route,
    search_bound: u64,
    /// `|L n_i| >= wd beta^i - rest`, with `log2 beta >= log_beta`.
    wd: f64,
    rest: f64,
    log_beta: f64,
}

impl ValueSet {
    /// Chooses the Pisot or Salem route from the dominant root.
    pub fn new(seq: &LinRecSeq, search_bound: u64) -> Result<Self> {
        let beta = seq.beta()?;
        let route = if is_pisot_number(&beta)? {
            Route::Pisot { map: transfer_to_powers(seq)?, unit: beta.is_unit(), beta: beta.clone() }
        } else if salem_test(&beta)? {
            Route::Salem { family: salem_recovery_family(seq, 2 * seq.degree() as u64)? }
        } else {
            return Err(Error::NotPisot);
        };
        let x = seq.trace_representation()?;
        let f = beta.field().clone();
        let d = f.distinguished();
        let w = seq.weight_bounds()?;
        let l = rat::qi(seq.scale());
        let wd = rat::to_f64(&(&x.embed(d, BITS)?.abs(BITS).lo * &l)) * (1.0 - 1e-9);
        let rest: Q = (0..f.degree()).filter(|&k| k != d).map(|k| w[k].clone()).sum();
        let log_beta = rat::log2_abs(&beta.embed(d, BITS)?.re.lo) * (1.0 - 1e-9);
        Ok(ValueSet { seq: seq.clone(), route, search_bound, wd, rest: rat::to_f64(&rest) * (1.0 + 1e-9) + 1.0, log_beta })
    }

    pub fn is_pisot(&self) -> bool {
        matches!(self.route, Route::Pisot { .. })
    }

    /// Index beyond which every term exceeds `|q|` in absolute value.
    pub fn index_bound(&self, q: &Q) -> u64 {
        if self.wd <= 0.0 {
            return 0;
        }
        let lq = rat::to_f64(&rat::abs(q)) * rat::to_f64(&rat::qi(self.seq.scale()));
        let t = ((lq + self.rest + 1.0) / self.wd).log2().max(0.0);
        (t / self.log_beta).ceil() as u64 + 2
    }

    pub fn contains(&self, q: &Q) -> Result<bool> {
        let seq = &self.seq;
        if seq.is_zero_sequence() {
            return Ok(q.is_zero());
        }
        let needed = self.index_bound(q);
        if needed > self.search_bound {
            return Err(Error::SearchBoundExceeded { needed, bound: self.search_bound });
        }
        if !rat::is_integer(&(q * rat::qi(seq.scale()))) {
            return Ok(false);
        }
        match &self.route {
            Route::Pisot { map, beta, unit } => {
                if (0..map.onset.min(needed + 1)).any(|i| &seq.term(i) == q) {
                    return Ok(true);
                }
                let y = map.apply(q)?;
                if *unit && rat::abs(&y.norm()) != Q::one() {
                    return Ok(false);
                }
                let Some(k) = power_exponent(beta, &y)? else {
                    return Ok(false);
                };
                Ok(k >= map.onset && &seq.term(k) == q)
            }
            Route::Salem { family } => {
                let x = &family.trace_rep;
                for (_, k) in family.search(q, needed)? {
                    let g = family.beta.pow(k as i64)?;
                    if &(&g * x).trace() == q {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
        }
    }
}

/// One-shot membership of `q` in the value set of a Pisot or Salem sequence.
pub fn value_set_membership(seq: &LinRecSeq, q: &Q, search_bound: u64) -> Result<bool> {
    ValueSet::new(seq, search_bound)?.contains(q)
}

/// Zeros of a sequence on a finite window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroReport {
    pub bound: u64,
    pub zeros: Vec<u64>,
    /// Heuristic: residue classes `(modulus, residue)` entirely zero on the
    /// window, with at least three members.
    pub progressions: Vec<(u64, u64)>,
    /// Zeros outside every detected progression.
    pub sporadic: Vec<u64>,
}

/// Brute-force zero scan on `[0, bound]`.
pub fn sml_zeros(seq: &LinRecSeq, bound: u64) -> Result<ZeroReport> {
    const LIMIT: u64 = 100_000;
    if bound > LIMIT {
        return Err(Error::BoundTooLarge { bound, limit: LIMIT });
    }
    let m = seq.degree();
    let mut win: Vec<Q> = seq.init().to_vec();
    let mut zeros = Vec::new();
    for i in 0..=bound {
        let v = if (i as usize) < m {
            win[i as usize].clone()
        } else {
            let v: Q = (0..m).map(|j| &seq.recurrence_coeffs()[j] * &win[j]).sum();
            win.remove(0);
            win.push(v.clone());
            v
        };
        if v.is_zero() {
            zeros.push(i);
        }
    }
    let is_zero: std::collections::HashSet<u64> = zeros.iter().copied().collect();
    let mut progressions: Vec<(u64, u64)> = Vec::new();
    for dmod in 1..=64u64 {
        for r in 0..dmod {
            if progressions.iter().any(|&(d0, r0)| dmod % d0 == 0 && r % d0 == r0) {
                continue;
            }
            let members: Vec<u64> = (r..=bound).step_by(dmod as usize).collect();
            if members.len() >= 3 && members.iter().all(|i| is_zero.contains(i)) {
                progressions.push((dmod, r));
            }
        }
    }
    let sporadic =
        zeros.iter().copied().filter(|i| !progressions.iter().any(|&(d, r)| i % d == r)).collect();
    Ok(ZeroReport { bound, zeros, progressions, sporadic })
}

/// Outcome of solving `Tr(beta^i y) = Tr(beta^i x)` for `i < m`.
#[derive(Clone, Debug)]
pub struct TraceUniqueness {
    pub traces_equal: bool,
    pub solution: FieldElement,
    pub unique: bool,
}

/// Equal traces `Tr(beta^i x) = Tr(beta^i y)` for `i < m` force `x = y`:
/// the solver reconstructs `x` from its traces.
pub fn trace_uniqueness(x: &FieldElement, y: &FieldElement) -> Result<TraceUniqueness> {
    if x.field() != y.field() {
        return Err(Error::FieldMismatch);
    }
    let f = x.field().clone();
    let b = f.gen();
    let m = f.degree();
    let mut tx = Vec::with_capacity(m);
    let mut ty = Vec::with_capacity(m);
    let (mut px, mut py) = (x.clone(), y.clone());
    for _ in 0..m {
        tx.push(px.trace());
        ty.push(py.trace());
        px = &px * &b;
        py = &py * &b;
    }
    let solution = solve_traces(&f, &tx)?;
    let gram: Vec<Vec<Q>> = (0..m).map(|i| (0..m).map(|k| f.power_sum(i + k)).collect()).collect();
    Ok(TraceUniqueness { traces_equal: tx == ty, unique: !linalg::det(gram).is_zero(), solution })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numberfield::fields;
    use crate::rat::{q, qf};

    #[test]
    fn terms() {
        assert_eq!(LinRecSeq::fibonacci().term(10), q(55));
        assert_eq!(LinRecSeq::lucas().term(5), q(11));
        assert_eq!(LinRecSeq::salem_power_sums().term(5), q(16));
        let e = LinRecSeq::from_i64(&[-1, -1, 1], &[1]).unwrap_err();
        assert_eq!(e, Error::DegreeMismatch { degree: 2, got: 1 });
    }

    #[test]
    fn trace_reps() {
        let x = LinRecSeq::lucas().trace_representation().unwrap();
        assert_eq!(x, x.field().one());
        let x = LinRecSeq::fibonacci().trace_representation().unwrap();
        let f = x.field().clone();
        assert_eq!(x, f.element(vec![qf(-1, 5), qf(2, 5)]).unwrap());
        let z = LinRecSeq::from_i64(&[-1, -1, 1], &[0, 0]).unwrap();
        assert!(z.trace_representation().unwrap().is_zero());
    }

    #[test]
    fn stepping_onsets() {
        let r = verified_i0(&LinRecSeq::fibonacci(), 1).unwrap();
        assert_eq!((r.sound, r.observed), (2, 2));
        let r = verified_i0(&LinRecSeq::lucas(), 1).unwrap();
        assert_eq!((r.sound, r.observed), (4, 4));
        let phi = fields::golden().gen();
        assert_eq!(pisot_step(&phi, 1, &q(1)).unwrap(), BigInt::from(2));
        for s in [LinRecSeq::fibonacci(), LinRecSeq::lucas(), LinRecSeq::perrin(), LinRecSeq::pell()] {
            let b = s.beta().unwrap();
            for j in 1..=3 {
                let r = verified_i0(&s, j).unwrap();
                assert!(r.observed <= r.sound);
                for i in r.sound..r.sound + 100 {
                    assert_eq!(rat::qi(pisot_step(&b, j, &s.term(i)).unwrap()), s.term(i + j as u64));
                }
            }
        }
        assert_eq!(verified_i0(&LinRecSeq::salem_power_sums(), 1).unwrap_err(), Error::NotPisot);
    }

    #[test]
    fn transfers() {
        let fib = LinRecSeq::fibonacci();
        let luc = LinRecSeq::lucas();
        let g = transfer_map(&fib, &luc).unwrap();
        let w: Vec<_> = g.weights.iter().map(|w| w.as_rational().unwrap()).collect();
        assert_eq!(w, vec![q(-1), q(2)]);
        assert_eq!(g.apply(&q(5)).unwrap().as_rational(), Some(q(11)));
        let back = transfer_map(&luc, &fib).unwrap();
        let start = g.onset.max(back.onset);
        for i in start..start + 40 {
            let l = g.apply(&fib.term(i)).unwrap().as_rational().unwrap();
            assert_eq!(l, luc.term(i));
            assert_eq!(back.apply(&l).unwrap().as_rational(), Some(fib.term(i)));
        }
        let id = transfer_map(&fib, &fib).unwrap();
        assert_eq!(id.apply(&q(8)).unwrap().as_rational(), Some(q(8)));
        let p = transfer_to_powers(&fib).unwrap();
        let phi = fib.beta().unwrap();
        for i in p.onset..p.onset + 20 {
            assert_eq!(p.apply(&fib.term(i)).unwrap(), phi.pow(i as i64).unwrap());
        }
        let z = LinRecSeq::from_i64(&[-1, -1, 1], &[0, 0]).unwrap();
        assert_eq!(transfer_map(&z, &fib).unwrap_err(), Error::ZeroSourceSequence);
    }

    #[test]
    fn salem_recovery() {
        let s = LinRecSeq::salem_power_sums();
        let b = s.beta().unwrap();
        let w = |i: u64| -> Vec<Q> { (0..4).map(|j| s.term(i + j)).collect() };
        assert_eq!(salem_recover_exact(&s, &w(0)).unwrap(), b.field().one());
        assert_eq!(salem_recover_exact(&s, &w(1)).unwrap(), b);
        assert_eq!(salem_recover_exact(&s, &w(10)).unwrap(), b.pow(10).unwrap());
        let fam = salem_recovery_family(&s, 30).unwrap();
        assert_eq!(fam.bounds, vec![7, 9, 12, 19]);
        assert!(fam.observed.iter().zip(&fam.bounds).all(|(o, c)| o <= c));
        for i in [0u64, 5, 17] {
            let hits = fam.search(&s.term(i), 100).unwrap();
            let c: Vec<i64> = fam.correction(&s, i).unwrap().iter().map(|v| v.to_i64().unwrap()).collect();
            assert!(hits.iter().any(|(h, k)| h == &c && *k == i), "index {i}");
        }
    }

    #[test]
    fn membership() {
        let fib = LinRecSeq::fibonacci();
        let vs = ValueSet::new(&fib, 10_000).unwrap();
        assert!(vs.contains(&q(21)).unwrap());
        assert!(!vs.contains(&q(22)).unwrap());
        assert!(vs.contains(&q(0)).unwrap());
        assert!(vs.contains(&q(1)).unwrap());
        let s = LinRecSeq::salem_power_sums();
        let vs = ValueSet::new(&s, 10_000).unwrap();
        assert!(vs.contains(&q(16)).unwrap());
        assert!(!vs.contains(&q(15)).unwrap());
        assert!(vs.contains(&q(4)).unwrap());
        let small = ValueSet::new(&fib, 5).unwrap();
        assert!(matches!(small.contains(&q(1000)), Err(Error::SearchBoundExceeded { .. })));
        assert!(vs.contains(&q(1)).unwrap() && !vs.is_pisot());
    }

    #[test]
    fn zeros() {
        let a = LinRecSeq::from_i64(&[-1, 0, 1], &[2, 0]).unwrap();
        let r = sml_zeros(&a, 100).unwrap();
        assert_eq!(r.progressions, vec![(2, 1)]);
        assert!(r.sporadic.is_empty());
        assert_eq!(sml_zeros(&LinRecSeq::fibonacci(), 500).unwrap().zeros, vec![0]);
        assert_eq!(sml_zeros(&LinRecSeq::perrin(), 10_000).unwrap().zeros, vec![1]);
    }

    #[test]
    fn traces_determine_elements() {
        let f = fields::plastic();
        let x = f.element(vec![qf(1, 3), q(-2), q(5)]).unwrap();
        let y = f.element(vec![qf(1, 3), q(-2), qf(11, 2)]).unwrap();
        let r = trace_uniqueness(&x, &x).unwrap();
        assert!(r.traces_equal && r.unique && r.solution == x);
        assert!(!trace_uniqueness(&x, &y).unwrap().traces_equal);
    }
}
