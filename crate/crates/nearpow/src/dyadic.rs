//! Arbitrary-precision dyadic numbers `m * 2^e`.
//!
//! Addition and multiplication are exact; division, square roots and
//! logarithms round in a caller-chosen direction. These are the endpoints of
//! every certified interval in the crate.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Rounding direction for the inexact operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Round {
    Down,
    Up,
}

impl Round {
    pub fn flip(self) -> Round {
        match self {
            Round::Down => Round::Up,
            Round::Up => Round::Down,
        }
    }
}

/// A dyadic rational `mant * 2^exp`, kept normalized: `mant` is odd or zero
/// (and `exp` is 0 when `mant` is), so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Dyadic {
        let mut d = Dyadic { mant, exp };
        d.normalize();
        d
    }

    fn normalize(&mut self) {
        if self.mant.is_zero() {
            self.exp = 0;
        } else if let Some(tz) = self.mant.trailing_zeros() {
            if tz > 0 {
                self.mant >>= tz;
                self.exp += tz as i64;
            }
        }
    }

    pub fn zero() -> Dyadic {
        Dyadic { mant: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Dyadic {
        Dyadic { mant: BigInt::one(), exp: 0 }
    }

    pub fn from_int(v: i64) -> Dyadic {
        Dyadic::new(BigInt::from(v), 0)
    }

    pub fn from_bigint(v: BigInt) -> Dyadic {
        Dyadic::new(v, 0)
    }

    /// 2^k.
    pub fn power_of_two(k: i64) -> Dyadic {
        Dyadic { mant: BigInt::one(), exp: k }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn signum(&self) -> i8 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    /// Smallest `k` with `|self| < 2^k`; `None` for zero.
    pub fn mag_exp(&self) -> Option<i64> {
        if self.mant.is_zero() {
            None
        } else {
            Some(self.mant.bits() as i64 + self.exp)
        }
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic { mant: self.mant.abs(), exp: self.exp }
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic { mant: -&self.mant, exp: self.exp }
    }

    /// Exact sum.
    pub fn add(&self, other: &Dyadic) -> Dyadic {
        if self.mant.is_zero() {
            return other.clone();
        }
        if other.mant.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << u64::try_from(self.exp - e).expect("exponent gap");
        let b = &other.mant << u64::try_from(other.exp - e).expect("exponent gap");
        Dyadic::new(a + b, e)
    }

    pub fn sub(&self, other: &Dyadic) -> Dyadic {
        self.add(&other.neg())
    }

    /// Exact product.
    pub fn mul(&self, other: &Dyadic) -> Dyadic {
        if self.mant.is_zero() || other.mant.is_zero() {
            return Dyadic::zero();
        }
        // products of normalized mantissas stay odd, no renormalization needed
        Dyadic { mant: &self.mant * &other.mant, exp: self.exp + other.exp }
    }

    pub fn mul_exp2(&self, k: i64) -> Dyadic {
        if self.mant.is_zero() {
            Dyadic::zero()
        } else {
            Dyadic { mant: self.mant.clone(), exp: self.exp + k }
        }
    }

    /// Round to at most `prec` significant bits in direction `dir`.
    pub fn round(&self, prec: u32, dir: Round) -> Dyadic {
        let bits = self.mant.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let drop = bits - prec as u64;
        let q = floor_shr(&self.mant, drop);
        let exact = &(&q << drop) == &self.mant;
        let m = match (dir, exact) {
            (Round::Down, _) | (Round::Up, true) => q,
            (Round::Up, false) => q + 1,
        };
        Dyadic::new(m, self.exp + drop as i64)
    }

    /// Directed quotient with roughly `prec + 2` significant bits.
    pub fn div(&self, other: &Dyadic, prec: u32, dir: Round) -> Dyadic {
        assert!(!other.mant.is_zero(), "division by zero dyadic");
        if self.mant.is_zero() {
            return Dyadic::zero();
        }
        let nbits = self.mant.bits() as i64;
        let dbits = other.mant.bits() as i64;
        let s = prec as i64 + 2 - (nbits - dbits);
        let (num, den, shift) = if s >= 0 {
            (&self.mant << s as u64, other.mant.clone(), s)
        } else {
            (self.mant.clone(), &other.mant << (-s) as u64, s)
        };
        let (q, r) = num.div_rem(&den);
        let m = if r.is_zero() {
            q
        } else {
            let positive = self.mant.sign() == other.mant.sign();
            match (dir, positive) {
                (Round::Down, true) | (Round::Up, false) => q, // truncation already correct
                (Round::Up, true) => q + 1,
                (Round::Down, false) => q - 1,
            }
        };
        Dyadic::new(m, self.exp - other.exp - shift)
    }

    /// Directed square root; `self >= 0`.
    pub fn sqrt(&self, prec: u32, dir: Round) -> Dyadic {
        assert!(self.signum() >= 0, "sqrt of negative dyadic");
        if self.mant.is_zero() {
            return Dyadic::zero();
        }
        let bits = self.mant.bits() as i64;
        let mut k = (2 * (prec as i64 + 2) - bits).max(0);
        if (self.exp - k) & 1 != 0 {
            k += 1;
        }
        let m = &self.mant << k as u64;
        let s = m.sqrt();
        let exact = &(&s * &s) == &m;
        let root = match (dir, exact) {
            (Round::Down, _) | (Round::Up, true) => s,
            (Round::Up, false) => s + 1,
        };
        Dyadic::new(root, (self.exp - k) / 2)
    }

    /// Exact floor as an integer.
    pub fn floor_int(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mant << self.exp as u64
        } else {
            floor_shr(&self.mant, (-self.exp) as u64)
        }
    }

    /// Nearest integer, ties toward +infinity.
    pub fn round_half_up(&self) -> BigInt {
        // floor(x + 1/2)
        self.add(&Dyadic::power_of_two(-1)).floor_int()
    }

    pub fn from_rational(r: &BigRational, prec: u32, dir: Round) -> Dyadic {
        Dyadic::from_bigint(r.numer().clone()).div(&Dyadic::from_bigint(r.denom().clone()), prec, dir)
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << self.exp as u64)
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.mant.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits();
        if bits <= 63 {
            let m = self.mant.to_i64().unwrap() as f64;
            return ldexp(m, self.exp);
        }
        // keep 55 bits so the final f64 conversion rounds to nearest
        let drop = bits - 55;
        let top = floor_shr(&self.mant, drop).to_i64().unwrap() as f64;
        ldexp(top, self.exp + drop as i64)
    }

    /// Natural log as f64, accurate for any magnitude (no under/overflow).
    pub fn ln_f64(&self) -> f64 {
        assert!(self.signum() > 0, "ln of non-positive dyadic");
        let bits = self.mant.bits();
        let drop = bits.saturating_sub(53);
        let top = floor_shr(&self.mant, drop).to_f64().unwrap();
        // self = top * 2^(exp + drop); split the exponent out of the log
        top.ln() + (self.exp + drop as i64) as f64 * std::f64::consts::LN_2
    }

    /// Scientific-notation decimal rendering with `sig` significant digits,
    /// round-to-nearest. Deterministic, locale-free.
    pub fn to_decimal_string(&self, sig: usize) -> String {
        assert!(sig >= 1);
        if self.mant.is_zero() {
            return "0".to_string();
        }
        // decimal exponent estimate via log10 = ln/ln10
        let mut e10 = (self.ln_f64_abs() / std::f64::consts::LN_10).floor() as i64;
        loop {
            let k = sig as i64 - 1 - e10;
            let digits = self.scaled_decimal(k);
            let s = digits.abs().to_string();
            if s.len() > sig {
                e10 += 1;
                continue;
            }
            if s.len() < sig {
                e10 -= 1;
                continue;
            }
            let neg = digits.sign() == Sign::Minus;
            let mut out = String::new();
            if neg {
                out.push('-');
            }
            out.push_str(&s[..1]);
            if sig > 1 {
                out.push('.');
                out.push_str(&s[1..]);
            }
            out.push('e');
            out.push_str(&e10.to_string());
            return out;
        }
    }

    fn ln_f64_abs(&self) -> f64 {
        self.abs().ln_f64()
    }

    /// round(self * 10^k) as an integer, ties away from zero.
    fn scaled_decimal(&self, k: i64) -> BigInt {
        let mut num = self.mant.clone();
        let mut den = BigInt::one();
        if k >= 0 {
            num *= BigInt::from(10u32).pow(k as u32);
        } else {
            den *= BigInt::from(10u32).pow((-k) as u32);
        }
        if self.exp >= 0 {
            num <<= self.exp as u64;
        } else {
            den <<= (-self.exp) as u64;
        }
        let two_num: BigInt = num << 1;
        let two_den: BigInt = den << 1;
        let (q, r) = two_num.div_rem(&two_den);
        // round-half-away on the absolute value
        if (&r << 1usize).magnitude() >= two_den.magnitude() {
            if two_num.sign() == Sign::Minus {
                q - 1
            } else {
                q + 1
            }
        } else {
            q
        }
    }
}

/// Shift right rounding toward -infinity, independent of the library's
/// `>>` semantics for negative values.
fn floor_shr(v: &BigInt, shift: u64) -> BigInt {
    if shift == 0 {
        return v.clone();
    }
    match v.sign() {
        Sign::NoSign => BigInt::zero(),
        Sign::Plus => v >> shift,
        Sign::Minus => {
            let mag = v.magnitude();
            let q = mag >> shift;
            let exact = &(&q << shift) == mag;
            if exact {
                -BigInt::from(q)
            } else {
                -BigInt::from(q) - 1
            }
        }
    }
}

fn ldexp(x: f64, e: i64) -> f64 {
    if e > 2000 {
        return x * f64::INFINITY;
    }
    if e < -2000 {
        return x * 0.0;
    }
    // split to stay within f64 exponent range
    let half = e / 2;
    x * (half as f64).exp2() * ((e - half) as f64).exp2()
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Dyadic) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Dyadic) -> Ordering {
        let sa = self.signum();
        let sb = other.signum();
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        // same nonzero sign: compare magnitudes via bit length first
        let ma = self.mag_exp().unwrap();
        let mb = other.mag_exp().unwrap();
        if ma != mb {
            let mag_ord = ma.cmp(&mb);
            return if sa > 0 { mag_ord } else { mag_ord.reverse() };
        }
        self.sub(other).signum().cmp(&0)
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dyadic({} * 2^{} ~ {})", self.mant, self.exp, self.to_f64())
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal_string(20))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(m: i64, e: i64) -> Dyadic {
        Dyadic::new(BigInt::from(m), e)
    }

    #[test]
    fn normalization_strips_trailing_zeros() {
        let x = d(12, 0); // 12 = 3 * 2^2
        assert_eq!(x.mantissa(), &BigInt::from(3));
        assert_eq!(x.exponent(), 2);
        assert_eq!(d(0, 7), Dyadic::zero());
    }

    #[test]
    fn exact_ring_ops() {
        let a = d(3, -2); // 0.75
        let b = d(5, -3); // 0.625
        assert_eq!(a.add(&b), d(11, -3)); // 1.375
        assert_eq!(a.sub(&b), d(1, -3)); // 0.125
        assert_eq!(a.mul(&b), d(15, -5)); // 0.46875
    }

    #[test]
    fn ordering_with_magnitude_fast_path() {
        assert!(d(1, -100) < d(1, 100));
        assert!(d(-1, 100) < d(1, -100));
        assert!(d(-1, -100) > d(-1, 100));
        assert_eq!(d(4, 0).cmp(&d(1, 2)), Ordering::Equal);
        assert!(d(5, 0) > d(3, 0));
    }

    #[test]
    fn directed_rounding() {
        let x = d(0b10111, 0); // 23
        assert_eq!(x.round(3, Round::Down), d(0b101, 2)); // 20
        assert_eq!(x.round(3, Round::Up), d(0b110, 2)); // 24
        let y = d(-23, 0);
        assert_eq!(y.round(3, Round::Down), d(-6, 2)); // -24
        assert_eq!(y.round(3, Round::Up), d(-5, 2)); // -20
        // exact at requested precision: unchanged
        assert_eq!(d(5, 1).round(10, Round::Up), d(5, 1));
    }

    #[test]
    fn directed_division() {
        // 1/3 to 8 bits
        let lo = Dyadic::one().div(&d(3, 0), 8, Round::Down);
        let hi = Dyadic::one().div(&d(3, 0), 8, Round::Up);
        let third = BigRational::new(BigInt::one(), BigInt::from(3));
        assert!(lo.to_rational() < third && third < hi.to_rational());
        assert!(hi.sub(&lo).to_f64() < 1.0 / 256.0);
        // negative numerator flips which side truncation lands on
        let nlo = d(-1, 0).div(&d(3, 0), 8, Round::Down);
        let nhi = d(-1, 0).div(&d(3, 0), 8, Round::Up);
        assert!(nlo.to_rational() < -third.clone() && -third < nhi.to_rational());
        // exact quotient
        assert_eq!(d(6, 0).div(&d(3, 0), 30, Round::Up), d(2, 0));
    }

    #[test]
    fn directed_sqrt() {
        let lo = d(2, 0).sqrt(60, Round::Down);
        let hi = d(2, 0).sqrt(60, Round::Up);
        assert!(lo.mul(&lo) < d(2, 0));
        assert!(hi.mul(&hi) > d(2, 0));
        assert!(hi.sub(&lo).mag_exp().unwrap() < -55);
        assert_eq!(d(9, 0).sqrt(20, Round::Down), d(3, 0));
        assert_eq!(d(9, 0).sqrt(20, Round::Up), d(3, 0));
    }

    #[test]
    fn floor_and_round_half_up() {
        assert_eq!(d(7, -1).floor_int(), BigInt::from(3)); // 3.5
        assert_eq!(d(-7, -1).floor_int(), BigInt::from(-4));
        assert_eq!(d(7, -1).round_half_up(), BigInt::from(4));
        assert_eq!(d(5, -1).round_half_up(), BigInt::from(3)); // 2.5 -> 3
        assert_eq!(d(-5, -1).round_half_up(), BigInt::from(-2)); // -2.5 -> -2
        assert_eq!(d(13, -2).round_half_up(), BigInt::from(3)); // 3.25
    }

    #[test]
    fn f64_and_ln() {
        assert_eq!(d(3, -1).to_f64(), 1.5);
        let big = Dyadic::new(BigInt::from(1), 10_000);
        assert_eq!(big.to_f64(), f64::INFINITY);
        let lnv = big.ln_f64();
        assert!((lnv - 10_000.0 * std::f64::consts::LN_2).abs() < 1e-6);
        let tiny = Dyadic::new(BigInt::from(3), -5000);
        assert!((tiny.ln_f64() - (3f64.ln() - 5000.0 * std::f64::consts::LN_2)).abs() < 1e-6);
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(d(3, -1).to_decimal_string(6), "1.50000e0");
        assert_eq!(d(-3, -1).to_decimal_string(3), "-1.50e0");
        assert_eq!(d(1, -4).to_decimal_string(4), "6.250e-2");
        assert_eq!(Dyadic::zero().to_decimal_string(5), "0");
        assert_eq!(d(1, 10).to_decimal_string(4), "1.024e3");
        // boundary where rounding bumps the digit count
        assert_eq!(d(999, 0).to_decimal_string(2), "1.0e3");
    }
}
