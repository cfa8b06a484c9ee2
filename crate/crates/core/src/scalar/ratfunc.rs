//! Reduced fractions of polynomials in σ.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::Poly;

/// `num / den` with `gcd(num, den) = 1` and `den` monic. Zero is `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        RatFunc::from_poly(Poly::one())
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn from_int(c: i64) -> Self {
        RatFunc::from_poly(Poly::from_int(c))
    }

    pub fn from_rational(c: BigRational) -> Self {
        RatFunc::from_poly(Poly::constant(c))
    }

    /// σ^k for any integer k.
    pub fn sigma_pow(k: i32) -> Self {
        let mono = Poly::monomial(BigRational::one(), k.unsigned_abs() as usize);
        if k >= 0 {
            RatFunc::from_poly(mono)
        } else {
            RatFunc {
                num: Poly::one(),
                den: mono,
            }
        }
    }

    /// Builds `num / den` in canonical form. Panics on a zero denominator.
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc::zero();
        }
        let g = Poly::gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        RatFunc::normalize_lc(num, den)
    }

    fn normalize_lc(num: Poly, den: Poly) -> Self {
        let lc = den.leading().expect("nonzero denominator").clone();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.recip();
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The value if this is a constant.
    pub fn as_constant(&self) -> Option<BigRational> {
        (self.den.is_one() && self.num.is_constant()).then(|| self.num.constant_term())
    }

    /// Panics on zero.
    pub fn inv(&self) -> RatFunc {
        assert!(!self.is_zero(), "inverse of zero");
        RatFunc::normalize_lc(self.den.clone(), self.num.clone())
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn add(&self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den.clone());
        }
        if self.den.is_one() {
            return RatFunc {
                num: &(&self.num * &rhs.den) + &rhs.num,
                den: rhs.den.clone(),
            };
        }
        if rhs.den.is_one() {
            return RatFunc {
                num: &self.num + &(&rhs.num * &self.den),
                den: self.den.clone(),
            };
        }
        // a/b + c/d with g = gcd(b, d): only g can share factors with the sum.
        let g = Poly::gcd(&self.den, &rhs.den);
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            return RatFunc::normalize_lc(num, &self.den * &rhs.den);
        }
        let b_g = self.den.div_exact(&g);
        let d_g = rhs.den.div_exact(&g);
        let num = &(&self.num * &d_g) + &(&rhs.num * &b_g);
        if num.is_zero() {
            return RatFunc::zero();
        }
        let h = Poly::gcd(&num, &g);
        let den = &b_g * &rhs.den;
        if h.is_one() {
            RatFunc::normalize_lc(num, den)
        } else {
            RatFunc::normalize_lc(num.div_exact(&h), den.div_exact(&h))
        }
    }

    pub fn sub(&self, rhs: &RatFunc) -> RatFunc {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        // (a/b)(c/d): cancel gcd(a, d) and gcd(c, b) first.
        let g1 = Poly::gcd(&self.num, &rhs.den);
        let g2 = Poly::gcd(&rhs.num, &self.den);
        let a = self.num.div_exact(&g1);
        let d = rhs.den.div_exact(&g1);
        let c = rhs.num.div_exact(&g2);
        let b = self.den.div_exact(&g2);
        RatFunc::normalize_lc(&a * &c, &b * &d)
    }

    /// Panics on a zero divisor.
    pub fn div(&self, rhs: &RatFunc) -> RatFunc {
        self.mul(&rhs.inv())
    }

    pub fn scale(&self, c: &BigRational) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn powi(&self, e: i32) -> RatFunc {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let k = e.unsigned_abs();
        RatFunc {
            num: base.num.pow(k),
            den: base.den.pow(k),
        }
    }

    /// Exact square root inside Q(σ), if one exists.
    pub fn sqrt(&self) -> Option<RatFunc> {
        if self.is_zero() {
            return Some(RatFunc::zero());
        }
        // den is monic so its root is monic; the sign of the root is carried
        // by the numerator's leading coefficient, chosen positive.
        let n = self.num.sqrt()?;
        let d = self.den.sqrt()?;
        let n = if n.leading().is_some_and(|c| c < &BigRational::zero()) {
            -&n
        } else {
            n
        };
        let d = d.monic();
        Some(RatFunc::new(n, d))
    }

    /// Evaluates at a rational point, or `None` if the denominator vanishes.
    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    pub fn degree_pair(&self) -> (usize, usize) {
        (
            self.num.degree().unwrap_or(0),
            self.den.degree().unwrap_or(0),
        )
    }

    pub(crate) fn two() -> RatFunc {
        RatFunc::from_rational(BigRational::from_integer(BigInt::from(2)))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let num = if self.num.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
            format!("({})", self.num)
        } else {
            self.num.to_string()
        };
        let den = if self.den.coeffs().iter().filter(|c| !c.is_zero()).count() > 1
            || !self.den.leading().is_some_and(|c| c.is_one())
        {
            format!("({})", self.den)
        } else {
            self.den.to_string()
        };
        write!(f, "{num}/{den}")
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}
