//! Directed-rounding interval arithmetic over dyadic endpoints.
//!
//! Every operation takes a working precision in bits and rounds outward, so
//! a result interval always contains the exact value of the operation applied
//! to any points of the inputs.

use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::dyadic::{Dyadic, Round};

/// A closed real interval `[lo, hi]` with dyadic endpoints.
#[derive(Clone, PartialEq, Eq)]
pub struct RealInterval {
    lo: Dyadic,
    hi: Dyadic,
}

impl RealInterval {
    pub fn new(lo: Dyadic, hi: Dyadic) -> RealInterval {
        assert!(lo <= hi, "inverted interval");
        RealInterval { lo, hi }
    }

    pub fn point(v: Dyadic) -> RealInterval {
        RealInterval { lo: v.clone(), hi: v }
    }

    pub fn zero() -> RealInterval {
        RealInterval::point(Dyadic::zero())
    }

    pub fn one() -> RealInterval {
        RealInterval::point(Dyadic::one())
    }

    pub fn from_int(v: i64) -> RealInterval {
        RealInterval::point(Dyadic::from_int(v))
    }

    pub fn from_bigint(v: &BigInt) -> RealInterval {
        RealInterval::point(Dyadic::from_bigint(v.clone()))
    }

    /// Tightest `prec`-bit enclosure of an exact rational.
    pub fn from_rational(r: &BigRational, prec: u32) -> RealInterval {
        if r.denom().magnitude().count_ones() == 1 {
            // power-of-two denominator: exactly representable
            let tz = r.denom().magnitude().trailing_zeros().unwrap_or(0);
            return RealInterval::point(Dyadic::new(
                r.numer().clone() * r.denom().signum(),
                -(tz as i64),
            ));
        }
        RealInterval {
            lo: Dyadic::from_rational(r, prec, Round::Down),
            hi: Dyadic::from_rational(r, prec, Round::Up),
        }
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    pub fn mid(&self) -> Dyadic {
        self.lo.add(&self.hi).mul_exp2(-1)
    }

    pub fn radius(&self) -> Dyadic {
        self.width().mul_exp2(-1)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.signum() <= 0 && self.hi.signum() >= 0
    }

    pub fn contains(&self, v: &Dyadic) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn contains_rational(&self, r: &BigRational) -> bool {
        self.lo.to_rational() <= *r && *r <= self.hi.to_rational()
    }

    pub fn contains_interval(&self, other: &RealInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn contains_interval_strict(&self, other: &RealInterval) -> bool {
        self.lo < other.lo && other.hi < self.hi
    }

    pub fn intersect(&self, other: &RealInterval) -> Option<RealInterval> {
        let lo = if self.lo >= other.lo { self.lo.clone() } else { other.lo.clone() };
        let hi = if self.hi <= other.hi { self.hi.clone() } else { other.hi.clone() };
        if lo <= hi {
            Some(RealInterval { lo, hi })
        } else {
            None
        }
    }

    pub fn hull(&self, other: &RealInterval) -> RealInterval {
        RealInterval {
            lo: if self.lo <= other.lo { self.lo.clone() } else { other.lo.clone() },
            hi: if self.hi >= other.hi { self.hi.clone() } else { other.hi.clone() },
        }
    }

    pub fn is_disjoint(&self, other: &RealInterval) -> bool {
        self.hi < other.lo || other.hi < self.lo
    }

    /// Entirely below: `self.hi < other.lo`.
    pub fn certainly_lt(&self, other: &RealInterval) -> bool {
        self.hi < other.lo
    }

    pub fn certainly_gt(&self, other: &RealInterval) -> bool {
        self.lo > other.hi
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.lo.signum() > 0
    }

    pub fn neg(&self) -> RealInterval {
        RealInterval { lo: self.hi.neg(), hi: self.lo.neg() }
    }

    pub fn add(&self, other: &RealInterval, prec: u32) -> RealInterval {
        RealInterval {
            lo: self.lo.add(&other.lo).round(prec, Round::Down),
            hi: self.hi.add(&other.hi).round(prec, Round::Up),
        }
    }

    pub fn sub(&self, other: &RealInterval, prec: u32) -> RealInterval {
        self.add(&other.neg(), prec)
    }

    pub fn add_dyadic(&self, v: &Dyadic, prec: u32) -> RealInterval {
        RealInterval {
            lo: self.lo.add(v).round(prec, Round::Down),
            hi: self.hi.add(v).round(prec, Round::Up),
        }
    }

    pub fn mul(&self, other: &RealInterval, prec: u32) -> RealInterval {
        let products = [
            self.lo.mul(&other.lo),
            self.lo.mul(&other.hi),
            self.hi.mul(&other.lo),
            self.hi.mul(&other.hi),
        ];
        let mut lo = products[0].clone();
        let mut hi = products[0].clone();
        for p in &products[1..] {
            if *p < lo {
                lo = p.clone();
            }
            if *p > hi {
                hi = p.clone();
            }
        }
        RealInterval { lo: lo.round(prec, Round::Down), hi: hi.round(prec, Round::Up) }
    }

    pub fn mul_dyadic(&self, v: &Dyadic, prec: u32) -> RealInterval {
        let a = self.lo.mul(v);
        let b = self.hi.mul(v);
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        RealInterval { lo: lo.round(prec, Round::Down), hi: hi.round(prec, Round::Up) }
    }

    /// Tighter than `mul(self, self)` when the interval straddles zero.
    pub fn square(&self, prec: u32) -> RealInterval {
        let a = self.lo.mul(&self.lo);
        let b = self.hi.mul(&self.hi);
        let (mut lo, hi) = if a <= b { (a, b) } else { (b, a) };
        if self.contains_zero() {
            lo = Dyadic::zero();
        }
        RealInterval { lo: lo.round(prec, Round::Down), hi: hi.round(prec, Round::Up) }
    }

    pub fn abs(&self) -> RealInterval {
        if self.lo.signum() >= 0 {
            self.clone()
        } else if self.hi.signum() <= 0 {
            self.neg()
        } else {
            let m = if self.lo.neg() >= self.hi { self.lo.neg() } else { self.hi.clone() };
            RealInterval { lo: Dyadic::zero(), hi: m }
        }
    }

    /// Division; the divisor must not contain zero.
    pub fn div(&self, other: &RealInterval, prec: u32) -> RealInterval {
        assert!(!other.contains_zero(), "interval division by zero-straddling interval");
        let quotients = [
            self.lo.div(&other.lo, prec, Round::Down),
            self.lo.div(&other.hi, prec, Round::Down),
            self.hi.div(&other.lo, prec, Round::Down),
            self.hi.div(&other.hi, prec, Round::Down),
            self.lo.div(&other.lo, prec, Round::Up),
            self.lo.div(&other.hi, prec, Round::Up),
            self.hi.div(&other.lo, prec, Round::Up),
            self.hi.div(&other.hi, prec, Round::Up),
        ];
        let lo = quotients.iter().min().unwrap().clone();
        let hi = quotients.iter().max().unwrap().clone();
        RealInterval { lo, hi }
    }

    pub fn recip(&self, prec: u32) -> RealInterval {
        RealInterval::one().div(self, prec)
    }

    /// Square root; requires `lo >= 0`.
    pub fn sqrt(&self, prec: u32) -> RealInterval {
        RealInterval {
            lo: self.lo.sqrt(prec, Round::Down),
            hi: self.hi.sqrt(prec, Round::Up),
        }
    }

    /// Integer power by binary exponentiation with per-step outward rounding.
    pub fn pow(&self, n: u32, prec: u32) -> RealInterval {
        if n == 0 {
            return RealInterval::one();
        }
        let mut result: Option<RealInterval> = None;
        let mut base = self.clone();
        let mut e = n;
        loop {
            if e & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => r.mul(&base, prec),
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.square(prec);
        }
        result.unwrap()
    }

    /// Outward re-rounding of the endpoints to `prec` bits.
    pub fn round_out(&self, prec: u32) -> RealInterval {
        RealInterval {
            lo: self.lo.round(prec, Round::Down),
            hi: self.hi.round(prec, Round::Up),
        }
    }

    /// Certified natural logarithm; requires `lo > 0`.
    pub fn ln(&self, prec: u32) -> RealInterval {
        assert!(self.lo.signum() > 0, "ln of interval touching zero");
        RealInterval {
            lo: ln_dir(&self.lo, prec, Round::Down),
            hi: ln_dir(&self.hi, prec, Round::Up),
        }
    }

    pub fn to_f64_mid(&self) -> f64 {
        self.mid().to_f64()
    }

    /// Relative width check: `width <= 2^-prec * max(|lo|, |hi|)`.
    pub fn meets_relative_width(&self, prec: u32) -> bool {
        if self.is_point() {
            return true;
        }
        let scale = {
            let a = self.lo.abs();
            let b = self.hi.abs();
            if a >= b {
                a
            } else {
                b
            }
        };
        self.width() <= scale.mul_exp2(-(prec as i64))
    }
}

impl fmt::Debug for RealInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{} ± {}]",
            self.mid().to_decimal_string(12),
            self.radius().to_decimal_string(3)
        )
    }
}

/// ln(2) certified to `prec` bits, memoized.
fn ln2_dir(prec: u32, dir: Round) -> Dyadic {
    static CACHE: OnceLock<Mutex<Vec<(u32, Dyadic, Dyadic)>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(Vec::new()));
    {
        let guard = cache.lock().unwrap();
        if let Some((_, lo, hi)) = guard.iter().find(|(p, _, _)| *p >= prec) {
            return match dir {
                Round::Down => lo.clone(),
                Round::Up => hi.clone(),
            };
        }
    }
    // ln 2 = 2 atanh(1/3)
    let third_lo = Dyadic::one().div(&Dyadic::from_int(3), prec + 8, Round::Down);
    let third_hi = Dyadic::one().div(&Dyadic::from_int(3), prec + 8, Round::Up);
    let lo = atanh_dir(&third_lo, prec, Round::Down).mul_exp2(1);
    let hi = atanh_dir(&third_hi, prec, Round::Up).mul_exp2(1);
    cache.lock().unwrap().push((prec, lo.clone(), hi.clone()));
    match dir {
        Round::Down => lo,
        Round::Up => hi,
    }
}

/// atanh(t) for 0 <= t <= 1/3 + ulp, directed. Consecutive series terms
/// shrink by at least ~t^2 <= 1/9, so the tail after the last included term
/// T is below T/7.
fn atanh_dir(t: &Dyadic, prec: u32, dir: Round) -> Dyadic {
    debug_assert!(t.signum() >= 0);
    if t.is_zero() {
        return Dyadic::zero();
    }
    let work = prec + 16;
    let t2 = t.mul(t).round(work, dir);
    let mut term = t.clone(); // t^(2k+1), rounded toward `dir` throughout
    let mut sum = t.clone();
    let mut k: u32 = 1;
    let cutoff = t.mag_exp().unwrap() - (prec as i64 + 8);
    loop {
        term = term.mul(&t2).round(work, dir);
        let contrib = term.div(&Dyadic::from_int((2 * k + 1) as i64), work, dir);
        sum = sum.add(&contrib).round(work + 8, dir);
        k += 1;
        if contrib.is_zero() || contrib.mag_exp().unwrap() < cutoff {
            if dir == Round::Up {
                let tail = contrib.div(&Dyadic::from_int(7), work, Round::Up);
                let ulp = Dyadic::power_of_two(cutoff);
                sum = sum.add(&tail).add(&ulp);
            }
            return sum.round(work, dir);
        }
    }
}

/// Directed natural logarithm of a positive dyadic.
fn ln_dir(x: &Dyadic, prec: u32, dir: Round) -> Dyadic {
    assert!(x.signum() > 0);
    // x = f * 2^k with f in [1, 2)
    let k = x.mag_exp().unwrap() - 1;
    let f = x.mul_exp2(-k);
    debug_assert!(f >= Dyadic::one() && f < Dyadic::from_int(2));
    let work = prec + 16;
    // ln f = 2 atanh((f-1)/(f+1)), argument in [0, 1/3)
    let num = f.sub(&Dyadic::one());
    let den = f.add(&Dyadic::one());
    let ln_f = if num.is_zero() {
        Dyadic::zero()
    } else {
        let t = num.div(&den, work, dir);
        atanh_dir(&t, prec + 4, dir).mul_exp2(1)
    };
    if k == 0 {
        return ln_f.round(work, dir);
    }
    // k*ln2 must be rounded toward `dir` for the overall sum; a negative k
    // flips the direction needed on the ln2 factor
    let ln2 = if k > 0 { ln2_dir(prec + 8, dir) } else { ln2_dir(prec + 8, dir.flip()) };
    let k_ln2 = ln2.mul(&Dyadic::from_int(k));
    ln_f.add(&k_ln2).round(work, dir)
}

/// An axis-aligned box in the complex plane.
#[derive(Clone, PartialEq, Eq)]
pub struct ComplexBox {
    pub re: RealInterval,
    pub im: RealInterval,
}

impl ComplexBox {
    pub fn new(re: RealInterval, im: RealInterval) -> ComplexBox {
        ComplexBox { re, im }
    }

    pub fn real(re: RealInterval) -> ComplexBox {
        ComplexBox { re, im: RealInterval::zero() }
    }

    pub fn point(re: Dyadic, im: Dyadic) -> ComplexBox {
        ComplexBox { re: RealInterval::point(re), im: RealInterval::point(im) }
    }

    pub fn is_real_line(&self) -> bool {
        self.im.is_point() && self.im.lo().is_zero()
    }

    pub fn conj(&self) -> ComplexBox {
        ComplexBox { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn neg(&self) -> ComplexBox {
        ComplexBox { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn add(&self, other: &ComplexBox, prec: u32) -> ComplexBox {
        ComplexBox {
            re: self.re.add(&other.re, prec),
            im: self.im.add(&other.im, prec),
        }
    }

    pub fn sub(&self, other: &ComplexBox, prec: u32) -> ComplexBox {
        ComplexBox {
            re: self.re.sub(&other.re, prec),
            im: self.im.sub(&other.im, prec),
        }
    }

    pub fn mul(&self, other: &ComplexBox, prec: u32) -> ComplexBox {
        let ac = self.re.mul(&other.re, prec);
        let bd = self.im.mul(&other.im, prec);
        let ad = self.re.mul(&other.im, prec);
        let bc = self.im.mul(&other.re, prec);
        ComplexBox { re: ac.sub(&bd, prec), im: ad.add(&bc, prec) }
    }

    /// |z|^2 as a real interval.
    pub fn modulus_sq(&self, prec: u32) -> RealInterval {
        self.re.square(prec).add(&self.im.square(prec), prec)
    }

    pub fn modulus(&self, prec: u32) -> RealInterval {
        self.modulus_sq(prec).sqrt(prec)
    }

    /// Division; `other`'s modulus must exclude zero.
    pub fn div(&self, other: &ComplexBox, prec: u32) -> ComplexBox {
        let den = other.modulus_sq(prec);
        assert!(den.is_strictly_positive(), "complex division by box containing zero");
        let num = self.mul(&other.conj(), prec);
        ComplexBox { re: num.re.div(&den, prec), im: num.im.div(&den, prec) }
    }

    pub fn pow(&self, n: u32, prec: u32) -> ComplexBox {
        if n == 0 {
            return ComplexBox::real(RealInterval::one());
        }
        let mut result: Option<ComplexBox> = None;
        let mut base = self.clone();
        let mut e = n;
        loop {
            if e & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => r.mul(&base, prec),
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.mul(&base, prec);
        }
        result.unwrap()
    }

    pub fn mid(&self) -> (Dyadic, Dyadic) {
        (self.re.mid(), self.im.mid())
    }

    pub fn max_width(&self) -> Dyadic {
        let wr = self.re.width();
        let wi = self.im.width();
        if wr >= wi {
            wr
        } else {
            wi
        }
    }

    pub fn contains_box(&self, other: &ComplexBox) -> bool {
        self.re.contains_interval(&other.re) && self.im.contains_interval(&other.im)
    }

    pub fn contains_box_strict(&self, other: &ComplexBox) -> bool {
        self.re.contains_interval_strict(&other.re) && self.im.contains_interval_strict(&other.im)
    }

    pub fn is_disjoint(&self, other: &ComplexBox) -> bool {
        self.re.is_disjoint(&other.re) || self.im.is_disjoint(&other.im)
    }

    pub fn intersects(&self, other: &ComplexBox) -> bool {
        !self.is_disjoint(other)
    }

    pub fn intersect(&self, other: &ComplexBox) -> Option<ComplexBox> {
        Some(ComplexBox {
            re: self.re.intersect(&other.re)?,
            im: self.im.intersect(&other.im)?,
        })
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }
}

impl fmt::Debug for ComplexBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} + {:?} i)", self.re, self.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn ivl(lo: f64, hi: f64) -> RealInterval {
        // small dyadics from f64, test setup only
        let to_d = |x: f64| {
            let scaled = (x * 2f64.powi(40)).round() as i64;
            Dyadic::new(BigInt::from(scaled), -40)
        };
        RealInterval::new(to_d(lo), to_d(hi))
    }

    #[test]
    fn basic_ops_contain_truth() {
        let a = ivl(1.0, 2.0);
        let b = ivl(-0.5, 0.25);
        let s = a.add(&b, 64);
        assert!(s.contains(&Dyadic::from_int(1)));
        let p = a.mul(&b, 64);
        assert!(p.contains(&Dyadic::zero()));
        assert!(p.lo().to_f64() <= -1.0 && p.hi().to_f64() >= 0.5);
        let q = a.div(&ivl(3.0, 3.0), 64);
        assert!(q.contains_rational(&BigRational::new(BigInt::from(1), BigInt::from(2))));
    }

    #[test]
    fn square_straddling_zero() {
        let b = ivl(-2.0, 1.0);
        let s = b.square(64);
        assert_eq!(s.lo().to_f64(), 0.0);
        assert_eq!(s.hi().to_f64(), 4.0);
    }

    #[test]
    fn pow_encloses_exact_rational_power() {
        let x = RealInterval::from_rational(&BigRational::new(BigInt::from(3), BigInt::from(2)), 80);
        let p = x.pow(10, 80);
        let exact = BigRational::new(BigInt::from(3).pow(10), BigInt::from(2).pow(10));
        assert!(p.contains_rational(&exact));
        assert!(p.meets_relative_width(70));
    }

    #[test]
    fn sqrt_two_enclosure() {
        let s = RealInterval::from_int(2).sqrt(128);
        let sq = s.square(128);
        assert!(sq.contains(&Dyadic::from_int(2)));
        assert!(s.width().mag_exp().unwrap() < -120);
    }

    fn decimal_rational(digits: &str, decimals: u32) -> BigRational {
        let n: BigInt = digits.parse().unwrap();
        BigRational::new(n, BigInt::from(10u32).pow(decimals))
    }

    #[test]
    fn ln_known_values() {
        // 40-digit references
        let ln2 = decimal_rational("6931471805599453094172321214581765680755", 40);
        let ln10 = decimal_rational("23025850929940456840179914546843642076011", 40);
        let l2 = RealInterval::from_int(2).ln(96);
        assert!(l2.contains_rational(&ln2));
        assert!(l2.width().mag_exp().unwrap() < -80);
        let l10 = RealInterval::from_int(10).ln(96);
        assert!(l10.contains_rational(&ln10));
        assert!(l10.width().mag_exp().unwrap() < -80);
        // extreme magnitude: ln(3 * 2^-3000)
        let tiny = RealInterval::point(Dyadic::new(BigInt::from(3), -3000));
        let lt = tiny.ln(64);
        let expect = 3f64.ln() - 3000.0 * std::f64::consts::LN_2;
        assert!(lt.lo().to_f64() <= expect + 1e-9 && expect <= lt.hi().to_f64() + 1e-9);
        assert!(lt.width().to_f64() < 1e-10);
        let l1 = RealInterval::one().ln(64);
        assert!(l1.contains(&Dyadic::zero()));
        assert!(l1.width().to_f64() < 1e-15);
    }

    #[test]
    fn ln_consistency_square() {
        // ln(x^2) = 2 ln x within interval widths
        let x = RealInterval::from_rational(&BigRational::new(BigInt::from(7), BigInt::from(3)), 128);
        let a = x.square(128).ln(96);
        let b = x.ln(96).mul_dyadic(&Dyadic::from_int(2), 96);
        assert!(a.intersect(&b).is_some());
    }

    #[test]
    fn complex_mul_and_modulus() {
        // (1+i)^2 = 2i, (1+i)^8 = 16
        let z = ComplexBox::point(Dyadic::from_int(1), Dyadic::from_int(1));
        let sq = z.pow(2, 64);
        assert!(sq.re.contains(&Dyadic::zero()));
        assert!(sq.im.contains(&Dyadic::from_int(2)));
        let m = z.modulus_sq(64);
        assert!(m.contains(&Dyadic::from_int(2)));
        let p8 = z.pow(8, 64);
        assert!(p8.re.contains(&Dyadic::from_int(16)));
        assert!(p8.im.contains(&Dyadic::zero()));
    }

    #[test]
    fn complex_div_roundtrip() {
        let z = ComplexBox::point(Dyadic::from_int(3), Dyadic::from_int(-2));
        let w = ComplexBox::point(Dyadic::from_int(1), Dyadic::from_int(5));
        let q = z.mul(&w, 96).div(&w, 96);
        assert!(q.re.contains(&Dyadic::from_int(3)));
        assert!(q.im.contains(&Dyadic::from_int(-2)));
        assert!(q.max_width().to_f64() < 1e-20);
    }
}

