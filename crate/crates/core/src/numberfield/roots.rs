//! Certified isolation of all complex roots of a squarefree rational
//! polynomial.
//!
//! Approximations come from an Aberth iteration in `f64`, are polished by
//! Newton steps in exact dyadic arithmetic, and are certified with Smith's
//! inclusion discs: for monic `p` of degree `n` and distinct approximations
//! `z_i`, the discs `|z - z_i| <= n |p(z_i)| / prod_{j != i} |z_i - z_j|`
//! cover all roots, and each connected component of `k` discs holds exactly
//! `k` roots. Pairwise disjoint discs therefore isolate every root.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::interval::{ComplexInterval, Interval};
use crate::poly::Poly;
use crate::rat::{self, Q};

#[derive(Clone, Copy, Debug)]
struct C64 {
    re: f64,
    im: f64,
}

impl C64 {
    fn add(self, o: C64) -> C64 {
        C64 { re: self.re + o.re, im: self.im + o.im }
    }
    fn sub(self, o: C64) -> C64 {
        C64 { re: self.re - o.re, im: self.im - o.im }
    }
    fn mul(self, o: C64) -> C64 {
        C64 { re: self.re * o.re - self.im * o.im, im: self.re * o.im + self.im * o.re }
    }
    fn div(self, o: C64) -> C64 {
        let d = o.re * o.re + o.im * o.im;
        C64 { re: (self.re * o.re + self.im * o.im) / d, im: (self.im * o.re - self.re * o.im) / d }
    }
    fn abs(self) -> f64 {
        self.re.hypot(self.im)
    }
}

fn aberth(monic: &[f64]) -> Vec<C64> {
    let n = monic.len() - 1;
    let bound = 1.0 + monic[..n].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let r = bound.min(1e6) * 0.9;
    let mut z: Vec<C64> = (0..n)
        .map(|k| {
            let a = 2.0 * std::f64::consts::PI * (k as f64 + 0.37) / n as f64;
            C64 { re: r * a.cos(), im: r * a.sin() }
        })
        .collect();
    let eval = |x: C64| {
        let mut p = C64 { re: 0.0, im: 0.0 };
        let mut dp = C64 { re: 0.0, im: 0.0 };
        for c in monic.iter().rev() {
            dp = dp.mul(x).add(p);
            p = p.mul(x).add(C64 { re: *c, im: 0.0 });
        }
        (p, dp)
    };
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (p, dp) = eval(z[i]);
            if p.abs() == 0.0 {
                continue;
            }
            let w = p.div(dp);
            let mut s = C64 { re: 0.0, im: 0.0 };
            for j in 0..n {
                if j != i {
                    s = s.add(C64 { re: 1.0, im: 0.0 }.div(z[i].sub(z[j])));
                }
            }
            let corr = w.div(C64 { re: 1.0, im: 0.0 }.sub(w.mul(s)));
            if corr.re.is_finite() && corr.im.is_finite() {
                z[i] = z[i].sub(corr);
                moved = moved.max(corr.abs() / (1.0 + z[i].abs()));
            }
        }
        if moved < 1e-17 {
            break;
        }
    }
    z
}

fn q_from_f64(x: f64) -> Q {
    Q::from_float(x).unwrap_or_else(Q::zero)
}

/// Certified approximations of all roots in canonical order.
#[derive(Clone, Debug)]
pub(crate) struct RootState {
    poly: Poly,
    pub(crate) real: Vec<bool>,
    pub(crate) centers: Vec<(Q, Q)>,
    pub(crate) radii: Vec<Q>,
    work_bits: u32,
}

impl RootState {
    pub(crate) fn isolate(poly: &Poly) -> Result<RootState> {
        let monic = poly.monic();
        let n = monic.degree();
        let seq = monic.sturm_sequence();
        let b = monic.cauchy_bound();
        let r1 = Poly::count_real_roots(&seq, &-b.clone(), &b);
        if n == 1 {
            let c = -monic.coeff(0);
            return Ok(RootState {
                poly: monic,
                real: vec![true],
                centers: vec![(c, Q::zero())],
                radii: vec![Q::zero()],
                work_bits: 64,
            });
        }
        let coeffs: Vec<f64> = monic.coeffs().iter().map(rat::to_f64).collect();
        let approx = aberth(&coeffs);
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| approx[a].im.abs().partial_cmp(&approx[b].im.abs()).unwrap_or(Ordering::Equal));
        let mut reals: Vec<f64> = order[..r1].iter().map(|&i| approx[i].re).collect();
        reals.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
        let mut cplx: Vec<C64> = order[r1..]
            .iter()
            .map(|&i| approx[i])
            .filter(|z| z.im > 0.0)
            .collect();
        if cplx.len() * 2 != n - r1 {
            // Pairing by sign of the imaginary part failed; pair by closeness instead.
            let rest: Vec<C64> = order[r1..].iter().map(|&i| approx[i]).collect();
            let mut used = vec![false; rest.len()];
            cplx.clear();
            for i in 0..rest.len() {
                if used[i] {
                    continue;
                }
                used[i] = true;
                let target = C64 { re: rest[i].re, im: -rest[i].im };
                let j = (0..rest.len())
                    .filter(|&j| !used[j])
                    .min_by(|&a, &b| {
                        rest[a].sub(target).abs().partial_cmp(&rest[b].sub(target).abs()).unwrap_or(Ordering::Equal)
                    })
                    .ok_or(Error::RootIsolationFailed(0))?;
                used[j] = true;
                cplx.push(C64 { re: (rest[i].re + rest[j].re) / 2.0, im: ((rest[i].im - rest[j].im) / 2.0).abs() });
            }
        }
        cplx.sort_by(|a, b| {
            a.re.partial_cmp(&b.re).unwrap_or(Ordering::Equal).then(a.im.partial_cmp(&b.im).unwrap_or(Ordering::Equal))
        });
        let mut real = Vec::with_capacity(n);
        let mut centers = Vec::with_capacity(n);
        for x in reals {
            real.push(true);
            centers.push((q_from_f64(x), Q::zero()));
        }
        for z in cplx {
            let re = q_from_f64(z.re);
            let im = q_from_f64(z.im);
            real.push(false);
            centers.push((re.clone(), im.clone()));
            real.push(false);
            centers.push((re, -im));
        }
        let mut st = RootState { poly: monic, real, centers, radii: vec![Q::zero(); n], work_bits: 64 };
        st.recertify_until(&rat::qf(1, 1 << 20))?;
        Ok(st)
    }

    pub(crate) fn max_radius(&self) -> Q {
        self.radii.iter().max().cloned().unwrap_or_else(Q::zero)
    }

    /// Computes Smith radii for the current centers; `false` when two discs
    /// overlap.
    fn certify(&mut self) -> bool {
        let n = self.centers.len();
        if n == 1 {
            self.radii[0] = Q::zero();
            return true;
        }
        let nn = rat::q((n * n) as i64);
        let mut radii = Vec::with_capacity(n);
        for i in 0..n {
            let (pr, pi) = self.poly.eval_complex(&self.centers[i].0, &self.centers[i].1);
            let num = &nn * (&pr * &pr + &pi * &pi);
            if num.is_zero() {
                radii.push(Q::zero());
                continue;
            }
            let mut den = Q::one();
            for j in 0..n {
                if j == i {
                    continue;
                }
                let dr = &self.centers[i].0 - &self.centers[j].0;
                let di = &self.centers[i].1 - &self.centers[j].1;
                den *= &dr * &dr + &di * &di;
            }
            if den.is_zero() {
                return false;
            }
            let r2 = rat::round_up(&(num / den), self.work_bits * 2 + 16);
            radii.push(rat::sqrt_upper(&r2, self.work_bits + 8));
        }
        for i in 0..n {
            for j in i + 1..n {
                let dr = &self.centers[i].0 - &self.centers[j].0;
                let di = &self.centers[i].1 - &self.centers[j].1;
                let s = &radii[i] + &radii[j];
                if &s * &s >= &dr * &dr + &di * &di {
                    return false;
                }
            }
        }
        self.radii = radii;
        true
    }

    fn newton_step(&mut self) {
        let d = self.poly.derivative();
        let bits = self.work_bits;
        let n = self.centers.len();
        let mut i = 0;
        while i < n {
            if self.real[i] {
                let x = &self.centers[i].0;
                let dv = d.eval(x);
                if !dv.is_zero() {
                    let nx = x - self.poly.eval(x) / dv;
                    self.centers[i].0 = rat::round_down(&nx, bits);
                }
                i += 1;
            } else {
                let (re, im) = self.centers[i].clone();
                let (pr, pi) = self.poly.eval_complex(&re, &im);
                let (dr, di) = d.eval_complex(&re, &im);
                let den = &dr * &dr + &di * &di;
                if !den.is_zero() {
                    let qr = (&pr * &dr + &pi * &di) / &den;
                    let qi = (&pi * &dr - &pr * &di) / &den;
                    let nr = rat::round_down(&(re - qr), bits);
                    let ni = rat::round_down(&(im - qi), bits);
                    self.centers[i] = (nr.clone(), ni.clone());
                    self.centers[i + 1] = (nr, -ni);
                }
                i += 2;
            }
        }
    }

    /// Polishes the approximations until every disc radius is `<= target`.
    pub(crate) fn recertify_until(&mut self, target: &Q) -> Result<()> {
        let mut rounds = 0;
        let mut ok = self.certify();
        while !ok || self.max_radius() > *target {
            rounds += 1;
            if rounds > 200 {
                return Err(Error::RootIsolationFailed(rounds));
            }
            let needed = rat::log2_abs(target).abs().ceil() as u32 + 32;
            if self.work_bits < needed {
                self.work_bits = needed.max(self.work_bits * 2);
            }
            self.newton_step();
            ok = self.certify();
            if rounds % 8 == 0 {
                self.work_bits *= 2;
            }
        }
        Ok(())
    }

    /// Boxes of radius `<= 2^-bits` around every root.
    pub(crate) fn boxes(&mut self, bits: u32) -> Result<Vec<ComplexInterval>> {
        let target = Q::new(1.into(), num_bigint::BigInt::one() << (bits + 1));
        self.recertify_until(&target)?;
        let rb = bits + 8;
        let mut out: Vec<ComplexInterval> = self
            .centers
            .iter()
            .zip(&self.radii)
            .zip(&self.real)
            .map(|(((re, im), r), &is_real)| {
                let cr = rat::round_down(re, rb);
                let rr = rat::round_up(&(r + (re - &cr).abs()), rb);
                let re_iv = Interval::around(cr, rr.clone());
                if is_real {
                    ComplexInterval::real(re_iv)
                } else {
                    let ci = rat::round_down(im, rb);
                    let ri = rat::round_up(&(r + (im - &ci).abs()), rb);
                    ComplexInterval::new(re_iv, Interval::around(ci, ri))
                }
            })
            .collect();
        // Conjugate boxes are exact mirror images.
        let mut i = 0;
        while i < out.len() {
            if self.real[i] {
                i += 1;
            } else {
                out[i + 1] = out[i].conj();
                i += 2;
            }
        }
        Ok(out)
    }
}
