//! Binary words, subword complexity, densities and the construction of a
//! subset with large complexity inside a slowly thinning set.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::ops::Range;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::numberfield::FieldElement;
use crate::rat::{self, Q};

/// A finite 0/1 word `w[start], ..., w[start + len - 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryWord {
    pub start: i64,
    pub bits: Vec<u8>,
}

impl BinaryWord {
    pub fn new(start: i64, bits: Vec<u8>) -> Self {
        BinaryWord { start, bits }
    }

    /// Word from a membership oracle on `range`.
    pub fn from_oracle(range: Range<i64>, oracle: &dyn Fn(i64) -> bool) -> Self {
        let start = range.start;
        BinaryWord { start, bits: range.map(|n| oracle(n) as u8).collect() }
    }

    /// Parses a string of `0` and `1`, ignoring whitespace.
    pub fn parse(start: i64, s: &str) -> Result<Self> {
        let mut bits = Vec::new();
        for c in s.chars().filter(|c| !c.is_whitespace()) {
            match c {
                '0' => bits.push(0),
                '1' => bits.push(1),
                _ => return Err(Error::Parse(format!("unexpected character `{c}` in binary word"))),
            }
        }
        Ok(BinaryWord { start, bits })
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, n: i64) -> Option<u8> {
        let i = n.checked_sub(self.start)?;
        usize::try_from(i).ok().and_then(|i| self.bits.get(i).copied())
    }

    pub fn ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 1).count()
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.bits {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// `floor(a(n+1) + b) - floor(a n + b)` for `n` in `range`, with `a` in `(0, 1)`
/// irrational in the distinguished embedding.
pub fn sturmian(a: &FieldElement, b: &FieldElement, range: Range<i64>) -> Result<BinaryWord> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    if a.as_rational().is_some() {
        return Err(Error::RationalSlope);
    }
    let d = a.field().distinguished();
    if !a.field().is_real(d) || !b.field().is_real(d) {
        return Err(Error::ComplexEmbedding(d));
    }
    if !a.is_positive_at(d)? || a.add_rational(&-Q::from_integer(1.into())).is_positive_at(d)? {
        return Err(Error::SlopeOutOfRange);
    }
    let fl = |n: i64| -> Result<BigInt> { (&a.scale(&rat::q(n)) + b).certified_floor(d) };
    let mut prev = fl(range.start)?;
    let mut bits = Vec::with_capacity(range.clone().count());
    for n in range.clone() {
        let next = fl(n + 1)?;
        bits.push(if next == prev { 0 } else { 1 });
        prev = next;
    }
    Ok(BinaryWord { start: range.start, bits })
}

/// Number of distinct length-`n` factors of the window.
pub fn subword_complexity(w: &BinaryWord, n: usize) -> Result<usize> {
    if w.len() < n {
        return Err(Error::WindowTooShort { len: w.len(), n });
    }
    if n == 0 {
        return Ok(1);
    }
    Ok(w.bits.windows(n).collect::<HashSet<_>>().len())
}

/// `|E cap [-N, N]| / (2N + 1)` for each `N`.
pub fn density_profile(oracle: &dyn Fn(i64) -> bool, ns: &[u64]) -> Vec<Q> {
    ns.iter()
        .map(|&n| {
            let n = n as i64;
            let c = (-n..=n).filter(|&k| oracle(k)).count();
            Q::new(BigInt::from(c), BigInt::from(2 * n + 1))
        })
        .collect()
}

/// Least-squares slope of `log p(N)` against `log N`; a bounded slope is what
/// polynomial complexity looks like on a finite window.
pub fn growth_exponent(w: &BinaryWord, ns: &[usize]) -> Result<f64> {
    let pts: Vec<(f64, f64)> = ns
        .iter()
        .filter(|&&n| n >= 1)
        .map(|&n| Ok(((n as f64).ln(), (subword_complexity(w, n)? as f64).ln())))
        .collect::<Result<_>>()?;
    if pts.len() < 2 {
        return Ok(0.0);
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Ok(if sxx == 0.0 { 0.0 } else { sxy / sxx })
}

/// Rate `h(L)`, given through the exact integer `ceil(h(L) L)`.
#[derive(Clone)]
pub enum Rate {
    Const(Q),
    /// `h(L) = 1/sqrt(L)`.
    InvSqrt,
    Custom(Arc<dyn Fn(u32) -> u32 + Send + Sync>),
}

impl fmt::Debug for Rate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rate::Const(q) => write!(f, "Const({q})"),
            Rate::InvSqrt => write!(f, "InvSqrt"),
            Rate::Custom(_) => write!(f, "Custom"),
        }
    }
}

impl Rate {
    /// `const:p/q` or `inv-sqrt`.
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "inv-sqrt" => Ok(Rate::InvSqrt),
            _ => match s.strip_prefix("const:") {
                Some(q) => Ok(Rate::Const(rat::parse_rational(q)?)),
                None => Err(Error::Parse(format!("unknown rate `{s}`"))),
            },
        }
    }

    /// `ceil(h(L) L)` before clamping.
    pub fn ceil_hl(&self, l: u32) -> u32 {
        match self {
            Rate::Const(q) => rat::ceil(&(q * rat::q(l as i64))).to_u32().unwrap_or(0),
            Rate::InvSqrt => {
                let s = (l as u64).sqrt();
                (if s * s == l as u64 { s } else { s + 1 }) as u32
            }
            Rate::Custom(f) => f(l),
        }
    }

    /// `(k, hc)`: `k = ceil(min(h, 1/2) L)` and `hc = min(1/2, k / L)`.
    pub fn clamped(&self, l: u32) -> Result<(u32, Q)> {
        let k = self.ceil_hl(l).min(l.div_ceil(2));
        if k == 0 {
            return Err(Error::InvalidRate(l));
        }
        let hc = Q::new(k.into(), l.into()).min(rat::qf(1, 2));
        Ok((k, hc))
    }
}

/// One level of the construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelRecord {
    pub level: u32,
    /// `ceil(h(L) L)`; the level certifies `2^k` factors of length `L`.
    pub k: u32,
    pub hc: Q,
    pub n_prev: u64,
    pub m: u64,
    pub n: u64,
    /// Blocks with at least `k` elements of `E`.
    pub m_plus: u64,
    /// The repeated block pattern `A`, a subset of `[0, L)`.
    pub block: Vec<u32>,
    /// Block indices `m_0 < ... < m_{H-1}`.
    pub positions: Vec<u64>,
    /// Removed subsets `A_j`.
    pub removed: Vec<Vec<u32>>,
    /// Distinct length-`L` factors of the final window.
    pub complexity: u64,
}

impl LevelRecord {
    /// `H = 2^k`.
    pub fn h_count(&self) -> u64 {
        1 << self.k
    }

    /// `B_j = A \ A_j`.
    pub fn kept(&self, j: usize) -> Vec<u32> {
        self.block.iter().copied().filter(|a| !self.removed[j].contains(a)).collect()
    }
}

/// Output of [`non_hereditary_construct`]: the level records and the window of
/// `F` on `[0, N_L)`.
#[derive(Clone, Debug)]
pub struct NonHereditaryPlan {
    pub levels: Vec<LevelRecord>,
    pub window: BinaryWord,
}

impl NonHereditaryPlan {
    /// Schedule `(L, M_L, N_L)`.
    pub fn schedule(&self) -> Vec<(u32, u64, u64)> {
        self.levels.iter().map(|r| (r.level, r.m, r.n)).collect()
    }
}

/// `M_L = ceil((N_{L-1} + 2^(L+k) L) / ((hc - hc^2) L))`.
pub fn schedule_step(n_prev: u64, l: u32, k: u32, hc: &Q) -> Result<u64> {
    let num = rat::qi(BigInt::from(n_prev) + (BigInt::from(1) << (l + k)) * l);
    let den = (hc - hc * hc) * rat::q(l as i64);
    rat::ceil(&(num / den)).to_u64().ok_or(Error::BoundTooLarge { bound: u64::MAX, limit: u64::MAX })
}

/// Carves `F` out of `E` level by level so that `1_F` has at least `2^k`
/// distinct length-`L` factors for every `L <= l_max`.
pub fn non_hereditary_construct(
    e: &dyn Fn(i64) -> bool,
    rate: &Rate,
    l_max: u32,
) -> Result<NonHereditaryPlan> {
    const WINDOW_LIMIT: u64 = 50_000_000;
    if l_max > 32 {
        return Err(Error::BoundTooLarge { bound: l_max as u64, limit: 32 });
    }
    let mut sched = Vec::new();
    let mut n_prev = 0u64;
    for l in 1..=l_max {
        let (k, hc) = rate.clamped(l)?;
        let m = schedule_step(n_prev, l, k, &hc)?;
        let n = n_prev + l as u64 * m;
        if n > WINDOW_LIMIT {
            return Err(Error::BoundTooLarge { bound: n, limit: WINDOW_LIMIT });
        }
        sched.push((l, k, hc, n_prev, m, n));
        n_prev = n;
    }
    let total = n_prev as usize;
    let e_bits: Vec<bool> = (0..total as i64).map(e).collect();
    let mut f_bits = e_bits.clone();
    let mut prefix = vec![0u64; total + 1];
    for i in 0..total {
        prefix[i + 1] = prefix[i] + e_bits[i] as u64;
    }
    let mut levels = Vec::new();
    for (l, k, hc, n_prev, m, n) in sched {
        let need = (rat::q(2) * &hc - &hc * &hc) * rat::q(n as i64);
        if rat::q(prefix[n as usize] as i64) < need {
            return Err(Error::DensityHypothesisFailed(l));
        }
        let h = 1u64 << k;
        let mut seen: HashMap<u64, Vec<u64>> = HashMap::new();
        let mut m_plus = 0;
        let mut witness = None;
        for j in 0..m {
            let base = (n_prev + j * l as u64) as usize;
            let mask = (0..l as usize).fold(0u64, |acc, t| acc | ((e_bits[base + t] as u64) << t));
            if mask.count_ones() < k {
                continue;
            }
            m_plus += 1;
            let v = seen.entry(mask).or_default();
            if v.len() < h as usize {
                v.push(j);
                if v.len() == h as usize && witness.is_none() {
                    witness = Some(mask);
                }
            }
        }
        let mask = witness.ok_or(Error::PigeonholeFailed { level: l, needed: h })?;
        let block: Vec<u32> = (0..l).filter(|t| mask >> t & 1 == 1).collect();
        let positions = seen.remove(&mask).expect("witness positions");
        let removed: Vec<Vec<u32>> = (0..h)
            .map(|j| block.iter().enumerate().filter(|(t, _)| j >> t & 1 == 1).map(|(_, &a)| a).collect())
            .collect();
        for (pos, aj) in positions.iter().zip(&removed) {
            let base = n_prev + pos * l as u64;
            for &a in aj {
                f_bits[(base + a as u64) as usize] = false;
            }
        }
        levels.push(LevelRecord {
            level: l,
            k,
            hc,
            n_prev,
            m,
            n,
            m_plus,
            block,
            positions,
            removed,
            complexity: 0,
        });
    }
    let window = BinaryWord::new(0, f_bits.iter().map(|&b| b as u8).collect());
    for r in &mut levels {
        r.complexity = subword_complexity(&window, r.level as usize)? as u64;
        if r.complexity < r.h_count() {
            return Err(Error::AuditFailed(format!("level {} has only {} factors", r.level, r.complexity)));
        }
    }
    Ok(NonHereditaryPlan { levels, window })
}

/// Rate function `f: N -> [0, 1]` for prefix counts.
pub type RateFn = Arc<dyn Fn(u64) -> f64 + Send + Sync>;

/// Greedy set on `N`: `n` belongs iff fewer than `f(n+1)(n+1)` smaller
/// integers do. For non-increasing `f` this gives `|E cap [0, N)| >= f(N) N`,
/// and density zero once `f -> 0`. Negative integers are never members.
#[derive(Clone)]
pub struct SlowDecaySet {
    f: RateFn,
    bits: Arc<Mutex<(Vec<bool>, u64)>>,
}

impl fmt::Debug for SlowDecaySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SlowDecaySet({} computed)", self.bits.lock().expect("set cache").0.len())
    }
}

impl SlowDecaySet {
    pub fn contains(&self, n: i64) -> bool {
        if n < 0 {
            return false;
        }
        let mut g = self.bits.lock().expect("set cache");
        let (bits, count) = &mut *g;
        while bits.len() <= n as usize {
            let i = bits.len() as u64;
            let member = (*count as f64) < (self.f)(i + 1) * (i + 1) as f64;
            bits.push(member);
            *count += member as u64;
        }
        bits[n as usize]
    }

    /// `|E cap [0, n)|`.
    pub fn count_below(&self, n: u64) -> u64 {
        if n == 0 {
            return 0;
        }
        self.contains(n as i64 - 1);
        self.bits.lock().expect("set cache").0[..n as usize].iter().filter(|&&b| b).count() as u64
    }

    pub fn oracle(&self) -> impl Fn(i64) -> bool + '_ {
        move |n| self.contains(n)
    }
}

pub fn surrogate_slow_decay_set(f: RateFn) -> SlowDecaySet {
    SlowDecaySet { f, bits: Arc::new(Mutex::new((Vec::new(), 0))) }
}

/// `f(N) = min(1, c / log2(N + 2))`.
pub fn log_rate(c: f64) -> RateFn {
    Arc::new(move |n| (c / ((n + 2) as f64).log2()).min(1.0))
}

/// Number of ones in a Sturmian window, checked against the telescoped floors
/// `floor(a(s+len) + b) - floor(a s + b)`.
pub fn telescoped_ones(w: &BinaryWord, a: &FieldElement, b: &FieldElement) -> Result<Q> {
    let d = a.field().distinguished();
    let start = rat::q(w.start);
    let end = rat::q(w.start + w.len() as i64);
    let lo = (&a.scale(&start) + b).certified_floor(d)?;
    let hi = (&a.scale(&end) + b).certified_floor(d)?;
    let telescoped = rat::qi(hi - lo);
    let count = rat::q(w.ones() as i64);
    if count != telescoped {
        return Err(Error::AuditFailed("ones count differs from telescoped floors".into()));
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numberfield::fields;
    use crate::rat::{q, qf};

    #[test]
    fn sturmian_words() {
        let f = fields::sqrt2();
        let a = f.element(vec![q(-1), q(1)]).unwrap();
        let w = sturmian(&a, &f.zero(), 0..3).unwrap();
        assert_eq!(w.bits, vec![0, 0, 1]);
        let w = sturmian(&a, &f.zero(), 0..1000).unwrap();
        assert_eq!(subword_complexity(&w, 25).unwrap(), 26);
        assert_eq!(telescoped_ones(&w, &a, &f.zero()).unwrap(), q(w.ones() as i64));
        assert_eq!(sturmian(&f.rational(qf(1, 2)), &f.zero(), 0..3).unwrap_err(), Error::RationalSlope);
        assert_eq!(sturmian(&f.gen(), &f.zero(), 0..3).unwrap_err(), Error::SlopeOutOfRange);
    }

    #[test]
    fn complexities() {
        let c = BinaryWord::new(0, vec![1; 50]);
        assert_eq!(subword_complexity(&c, 7).unwrap(), 1);
        let alt = BinaryWord::parse(0, "0101010101").unwrap();
        assert_eq!(subword_complexity(&alt, 3).unwrap(), 2);
        assert_eq!(subword_complexity(&alt, 11).unwrap_err(), Error::WindowTooShort { len: 10, n: 11 });
    }

    #[test]
    fn densities() {
        assert_eq!(density_profile(&|_| true, &[5, 10]), vec![q(1), q(1)]);
        assert_eq!(density_profile(&|n| n % 2 == 0, &[4]), vec![qf(5, 9)]);
    }

    #[test]
    fn schedule_matches_formula() {
        let e = surrogate_slow_decay_set(log_rate(10.0));
        let plan = non_hereditary_construct(&e.oracle(), &Rate::InvSqrt, 4).unwrap();
        let n: Vec<u64> = plan.levels.iter().map(|r| r.n).collect();
        assert_eq!(n, vec![16, 144, 1104, 6544]);
        let r4 = &plan.levels[3];
        assert_eq!(r4.m, 1104 + 256);
        for r in &plan.levels {
            assert!(r.m_plus >= 1 << (r.level + r.k));
            assert!(r.complexity >= r.h_count());
            for (j, pos) in r.positions.iter().enumerate() {
                let base = (r.n_prev + pos * r.level as u64) as i64;
                let got: Vec<u32> = (0..r.level).filter(|&t| e.contains(base + t as i64)).collect();
                assert_eq!(got, r.block);
                let kept: Vec<u32> =
                    (0..r.level).filter(|&t| plan.window.bits[(base + t as i64) as usize] == 1).collect();
                assert_eq!(kept, r.kept(j));
            }
        }
        for (i, b) in plan.window.bits.iter().enumerate() {
            assert!(*b == 0 || e.contains(i as i64));
        }
    }

    #[test]
    fn degenerate_levels() {
        let plan = non_hereditary_construct(&|_| true, &Rate::InvSqrt, 1).unwrap();
        assert_eq!(subword_complexity(&plan.window, 1).unwrap(), 2);
        assert_eq!(non_hereditary_construct(&|_| false, &Rate::InvSqrt, 3).unwrap_err(), Error::DensityHypothesisFailed(1));
    }

    #[test]
    fn surrogate_counts() {
        let f: RateFn = Arc::new(|n| 1.0 / ((n + 2) as f64).ln());
        let e = surrogate_slow_decay_set(f.clone());
        for n in [100u64, 1000, 10_000] {
            assert!(e.count_below(n) as f64 >= f(n) * n as f64);
        }
        let empty = surrogate_slow_decay_set(Arc::new(|_| 0.0));
        assert_eq!(empty.count_below(1000), 0);
        let all = surrogate_slow_decay_set(Arc::new(|_| 1.0));
        assert_eq!(all.count_below(1000), 1000);
        assert_eq!(Rate::parse("const:1/3").unwrap().ceil_hl(3), 1);
    }
}
