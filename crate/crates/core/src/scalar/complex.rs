//! Arbitrary-precision complex numbers for numeric scans.

use std::fmt;

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::IBig;
use num_bigint::BigInt;
use num_rational::BigRational;

pub type Real = FBig<HalfEven>;

/// A complex number whose parts are binary floats rounded to `bits`
/// significant bits after every operation.
#[derive(Clone, PartialEq)]
pub struct Complex {
    re: Real,
    im: Real,
    bits: u32,
}

fn to_ibig(x: &BigInt) -> IBig {
    IBig::from_str_radix(&x.to_str_radix(16), 16).expect("hex conversion")
}

fn real_from_rational(x: &BigRational, bits: u32) -> Real {
    let n = Real::from(to_ibig(x.numer()))
        .with_precision(bits as usize)
        .value();
    let d = Real::from(to_ibig(x.denom()))
        .with_precision(bits as usize)
        .value();
    n / d
}

pub(crate) fn real_from_f64(x: f64, bits: u32) -> Real {
    Real::try_from(x)
        .expect("finite float")
        .with_precision(bits as usize)
        .value()
}

impl Complex {
    pub fn new(re: Real, im: Real, bits: u32) -> Self {
        let p = bits as usize;
        Complex {
            re: re.with_precision(p).value(),
            im: im.with_precision(p).value(),
            bits,
        }
    }

    pub fn zero(bits: u32) -> Self {
        Complex::from_f64(0.0, 0.0, bits)
    }

    pub fn one(bits: u32) -> Self {
        Complex::from_f64(1.0, 0.0, bits)
    }

    pub fn from_f64(re: f64, im: f64, bits: u32) -> Self {
        Complex {
            re: real_from_f64(re, bits),
            im: real_from_f64(im, bits),
            bits,
        }
    }

    pub fn from_rational(x: &BigRational, bits: u32) -> Self {
        Complex {
            re: real_from_rational(x, bits),
            im: real_from_f64(0.0, bits),
            bits,
        }
    }

    pub fn from_rationals(re: &BigRational, im: &BigRational, bits: u32) -> Self {
        Complex {
            re: real_from_rational(re, bits),
            im: real_from_rational(im, bits),
            bits,
        }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn re(&self) -> &Real {
        &self.re
    }

    pub fn im(&self) -> &Real {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.repr().significand().is_zero() && self.im.repr().significand().is_zero()
    }

    pub fn add(&self, o: &Complex) -> Complex {
        Complex {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
            bits: self.bits,
        }
    }

    pub fn sub(&self, o: &Complex) -> Complex {
        Complex {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
            bits: self.bits,
        }
    }

    pub fn neg(&self) -> Complex {
        Complex {
            re: -&self.re,
            im: -&self.im,
            bits: self.bits,
        }
    }

    pub fn mul(&self, o: &Complex) -> Complex {
        Complex {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
            bits: self.bits,
        }
    }

    pub fn norm_sqr(&self) -> Real {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Panics on zero.
    pub fn inv(&self) -> Complex {
        assert!(!self.is_zero(), "inverse of zero");
        let d = self.norm_sqr();
        Complex {
            re: &self.re / &d,
            im: -(&self.im / &d),
            bits: self.bits,
        }
    }

    pub fn div(&self, o: &Complex) -> Complex {
        self.mul(&o.inv())
    }

    pub fn abs(&self) -> Real {
        let n = self.norm_sqr();
        if n.repr().significand().is_zero() {
            n
        } else {
            n.sqrt()
        }
    }

    pub fn abs_f64(&self) -> f64 {
        self.abs().to_f64().value()
    }

    /// Principal square root (non-negative real part).
    pub fn sqrt(&self) -> Complex {
        if self.is_zero() {
            return self.clone();
        }
        let r = self.abs();
        let two = real_from_f64(2.0, self.bits);
        let zero = real_from_f64(0.0, self.bits);
        let a = (&r + &self.re) / &two;
        let b = (&r - &self.re) / &two;
        let a = if a < zero { zero.clone() } else { a };
        let b = if b < zero { zero.clone() } else { b };
        let re = if a.repr().significand().is_zero() {
            a
        } else {
            a.sqrt()
        };
        let mut im = if b.repr().significand().is_zero() {
            b
        } else {
            b.sqrt()
        };
        if self.im < zero {
            im = -im;
        }
        Complex {
            re,
            im,
            bits: self.bits,
        }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64().value(), self.im.to_f64().value())
    }

    fn decimal_digits(&self) -> usize {
        // bits * log10(2), rounded down
        ((self.bits as f64) * std::f64::consts::LOG10_2)
            .floor()
            .max(1.0) as usize
    }
}

fn fmt_real(x: &Real, digits: usize) -> String {
    if x.repr().significand().is_zero() {
        return "0".to_string();
    }
    x.to_decimal()
        .value()
        .with_precision(digits)
        .value()
        .to_string()
}

impl fmt::Display for Complex {
    /// `re+imi`, both parts in decimal at the working precision.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.decimal_digits();
        let re = fmt_real(&self.re, d);
        let im = fmt_real(&self.im, d);
        if im.starts_with('-') {
            write!(f, "{re}{im}i")
        } else {
            write!(f, "{re}+{im}i")
        }
    }
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Complex<{}>({self})", self.bits)
    }
}
