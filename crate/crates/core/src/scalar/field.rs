use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::complex::Complex;
use super::poly::{rational_sqrt, Poly};
use super::quad::QuadElement;
use super::ratfunc::RatFunc;
use super::ScalarError;

/// An element of one of the scalar backends.
///
/// Exact backends (`Rational`, `RatFunc`, `Quad`) have canonical
/// representations, so `==` is mathematical equality. `Complex` values
/// compare bitwise; use [`FieldElement::same_value`] for tolerant checks.
#[derive(Clone, PartialEq)]
pub enum FieldElement {
    Rational(BigRational),
    RatFunc(RatFunc),
    Quad(QuadElement),
    Complex(Complex),
}

/// A scalar field: the context in which constants such as σ, q and θ are
/// built and in which field-element strings are parsed.
#[derive(Clone, PartialEq)]
pub enum Field {
    /// Q, optionally carrying a rational value of σ (a specialization).
    Rational { sigma: Option<BigRational> },
    /// Q(σ), with q = σ⁴.
    RatFunc,
    /// Q(σ)(θ), θ² = Δ.
    QuadExt { delta: Arc<RatFunc> },
    /// C at a fixed working precision, with numeric values of σ and θ.
    Complex {
        bits: u32,
        sigma: Complex,
        theta: Option<Complex>,
    },
}

impl FieldElement {
    pub fn backend_name(&self) -> &'static str {
        match self {
            FieldElement::Rational(_) => "rational",
            FieldElement::RatFunc(_) => "ratfunc-sigma",
            FieldElement::Quad(_) => "quadext",
            FieldElement::Complex(_) => "complex",
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, FieldElement::Complex(_))
    }

    pub fn same_field(&self, other: &FieldElement) -> bool {
        match (self, other) {
            (FieldElement::Rational(_), FieldElement::Rational(_)) => true,
            (FieldElement::RatFunc(_), FieldElement::RatFunc(_)) => true,
            (FieldElement::Quad(a), FieldElement::Quad(b)) => a.same_field(b),
            (FieldElement::Complex(a), FieldElement::Complex(b)) => a.bits() == b.bits(),
            _ => false,
        }
    }

    fn mismatch(&self, other: &FieldElement) -> ScalarError {
        ScalarError::FieldMismatch(self.describe_field(), other.describe_field())
    }

    fn describe_field(&self) -> String {
        match self {
            FieldElement::Quad(q) => format!("quadext(delta = {})", q.delta()),
            FieldElement::Complex(c) => format!("complex({} bits)", c.bits()),
            other => other.backend_name().to_string(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(x) => x.is_zero(),
            FieldElement::RatFunc(x) => x.is_zero(),
            FieldElement::Quad(x) => x.is_zero(),
            FieldElement::Complex(x) => x.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Rational(x) => x.is_one(),
            FieldElement::RatFunc(x) => x.is_one(),
            FieldElement::Quad(x) => x.is_one(),
            FieldElement::Complex(x) => x == &Complex::one(x.bits()),
        }
    }

    pub fn try_add(&self, rhs: &FieldElement) -> Result<FieldElement, ScalarError> {
        use FieldElement::*;
        Ok(match (self, rhs) {
            (Rational(a), Rational(b)) => Rational(a + b),
            (RatFunc(a), RatFunc(b)) => RatFunc(a.add(b)),
            (Quad(a), Quad(b)) if a.same_field(b) => Quad(a.add(b)),
            (Complex(a), Complex(b)) if a.bits() == b.bits() => Complex(a.add(b)),
            _ => return Err(self.mismatch(rhs)),
        })
    }

    pub fn try_sub(&self, rhs: &FieldElement) -> Result<FieldElement, ScalarError> {
        use FieldElement::*;
        Ok(match (self, rhs) {
            (Rational(a), Rational(b)) => Rational(a - b),
            (RatFunc(a), RatFunc(b)) => RatFunc(a.sub(b)),
            (Quad(a), Quad(b)) if a.same_field(b) => Quad(a.sub(b)),
            (Complex(a), Complex(b)) if a.bits() == b.bits() => Complex(a.sub(b)),
            _ => return Err(self.mismatch(rhs)),
        })
    }

    pub fn try_mul(&self, rhs: &FieldElement) -> Result<FieldElement, ScalarError> {
        use FieldElement::*;
        Ok(match (self, rhs) {
            (Rational(a), Rational(b)) => Rational(a * b),
            (RatFunc(a), RatFunc(b)) => RatFunc(a.mul(b)),
            (Quad(a), Quad(b)) if a.same_field(b) => Quad(a.mul(b)),
            (Complex(a), Complex(b)) if a.bits() == b.bits() => Complex(a.mul(b)),
            _ => return Err(self.mismatch(rhs)),
        })
    }

    pub fn try_div(&self, rhs: &FieldElement) -> Result<FieldElement, ScalarError> {
        if !self.same_field(rhs) {
            return Err(self.mismatch(rhs));
        }
        self.try_mul(&rhs.inv()?)
    }

    pub fn inv(&self) -> Result<FieldElement, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(match self {
            FieldElement::Rational(x) => FieldElement::Rational(x.recip()),
            FieldElement::RatFunc(x) => FieldElement::RatFunc(x.inv()),
            FieldElement::Quad(x) => FieldElement::Quad(x.inv()),
            FieldElement::Complex(x) => FieldElement::Complex(x.inv()),
        })
    }

    pub fn neg(&self) -> FieldElement {
        match self {
            FieldElement::Rational(x) => FieldElement::Rational(-x),
            FieldElement::RatFunc(x) => FieldElement::RatFunc(x.neg()),
            FieldElement::Quad(x) => FieldElement::Quad(x.neg()),
            FieldElement::Complex(x) => FieldElement::Complex(x.neg()),
        }
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, e: i32) -> Result<FieldElement, ScalarError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = self.one_like();
        let mut b = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &b;
            }
            k >>= 1;
            if k > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }

    /// The multiplicative identity of this element's field.
    pub fn one_like(&self) -> FieldElement {
        match self {
            FieldElement::Rational(_) => FieldElement::Rational(BigRational::one()),
            FieldElement::RatFunc(_) => FieldElement::RatFunc(RatFunc::one()),
            FieldElement::Quad(x) => {
                FieldElement::Quad(QuadElement::from_base(RatFunc::one(), x.delta().clone()))
            }
            FieldElement::Complex(x) => FieldElement::Complex(Complex::one(x.bits())),
        }
    }

    pub fn zero_like(&self) -> FieldElement {
        match self {
            FieldElement::Rational(_) => FieldElement::Rational(BigRational::zero()),
            FieldElement::RatFunc(_) => FieldElement::RatFunc(RatFunc::zero()),
            FieldElement::Quad(x) => {
                FieldElement::Quad(QuadElement::from_base(RatFunc::zero(), x.delta().clone()))
            }
            FieldElement::Complex(x) => FieldElement::Complex(Complex::zero(x.bits())),
        }
    }

    /// Relative tolerance used by [`Self::same_value`] for complex values.
    pub fn tolerance(&self) -> Option<f64> {
        match self {
            FieldElement::Complex(c) => Some(2f64.powi(-(c.bits() as i32) / 2)),
            _ => None,
        }
    }

    /// Exact equality for exact backends; for complex values,
    /// `|a − b| ≤ tol · max(1, |a|, |b|)` with `tol = 2^(−bits/2)`.
    pub fn same_value(&self, other: &FieldElement) -> bool {
        match (self, other) {
            (FieldElement::Complex(a), FieldElement::Complex(b)) => {
                let tol = self.tolerance().unwrap_or(0.0);
                let scale = 1f64.max(a.abs_f64()).max(b.abs_f64());
                a.sub(b).abs_f64() <= tol * scale
            }
            _ => self == other,
        }
    }

    /// Zero test that tolerates rounding in the complex backend, relative to
    /// `scale` (the magnitude of the quantities that were combined).
    pub fn is_negligible(&self, scale: f64) -> bool {
        match self {
            FieldElement::Complex(c) => {
                c.abs_f64() <= self.tolerance().unwrap_or(0.0) * scale.max(1.0)
            }
            _ => self.is_zero(),
        }
    }

    /// Modulus as a float; exact backends must be constants for this to be
    /// meaningful and report `None` otherwise.
    pub fn modulus(&self) -> Option<f64> {
        match self {
            FieldElement::Complex(c) => Some(c.abs_f64()),
            FieldElement::Rational(r) => Some(rational_to_f64(r).abs()),
            _ => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElement::Rational(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_complex(&self) -> Option<&Complex> {
        match self {
            FieldElement::Complex(c) => Some(c),
            _ => None,
        }
    }
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(x) => write!(f, "{}", super::poly::fmt_rational(x)),
            FieldElement::RatFunc(x) => write!(f, "{x}"),
            FieldElement::Quad(x) => write!(f, "{x}"),
            FieldElement::Complex(x) => write!(f, "{x}"),
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({self})", self.backend_name())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            /// Panics on mismatched fields (and on a zero divisor for `/`);
            /// use the `try_` methods to handle those as errors.
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
        impl $trait<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::neg(self)
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::neg(&self)
    }
}

impl Field {
    pub fn rational() -> Self {
        Field::Rational { sigma: None }
    }

    /// Q(σ)(θ) with θ² = Δ. Δ must be a nonzero square-free polynomial that
    /// is not a square in Q(σ).
    pub fn quad_ext(delta: RatFunc) -> Result<Self, ScalarError> {
        if !delta.is_polynomial() || delta.is_zero() {
            return Err(ScalarError::InvalidDelta(format!(
                "{delta} is not a nonzero polynomial"
            )));
        }
        let p = delta.numer();
        if !p.is_square_free() {
            return Err(ScalarError::InvalidDelta(format!(
                "{delta} is not square-free"
            )));
        }
        if p.sqrt().is_some() {
            return Err(ScalarError::InvalidDelta(format!(
                "{delta} is a square in Q(s)"
            )));
        }
        Ok(Field::QuadExt {
            delta: Arc::new(delta),
        })
    }

    pub fn complex(bits: u32, sigma: Complex) -> Self {
        Field::Complex {
            bits,
            sigma,
            theta: None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Field::Rational { .. } => "rational",
            Field::RatFunc => "ratfunc-sigma",
            Field::QuadExt { .. } => "quadext",
            Field::Complex { .. } => "complex",
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, Field::Complex { .. })
    }

    pub fn delta(&self) -> Option<&Arc<RatFunc>> {
        match self {
            Field::QuadExt { delta } => Some(delta),
            _ => None,
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.from_int(0)
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    pub fn from_int(&self, c: i64) -> FieldElement {
        self.from_rational(BigRational::from_integer(BigInt::from(c)))
    }

    pub fn from_rational(&self, c: BigRational) -> FieldElement {
        match self {
            Field::Rational { .. } => FieldElement::Rational(c),
            Field::RatFunc => FieldElement::RatFunc(RatFunc::from_rational(c)),
            Field::QuadExt { delta } => FieldElement::Quad(QuadElement::from_base(
                RatFunc::from_rational(c),
                delta.clone(),
            )),
            Field::Complex { bits, .. } => FieldElement::Complex(Complex::from_rational(&c, *bits)),
        }
    }

    /// Embeds an element of Q(σ).
    pub fn from_ratfunc(&self, x: RatFunc) -> Result<FieldElement, ScalarError> {
        match self {
            Field::RatFunc => Ok(FieldElement::RatFunc(x)),
            Field::QuadExt { delta } => {
                Ok(FieldElement::Quad(QuadElement::from_base(x, delta.clone())))
            }
            _ => {
                let spec = self.point_specialization()?;
                let v = spec.apply(&FieldElement::RatFunc(x))?;
                self.coerce(v)
            }
        }
    }

    /// The indeterminate σ (or its numeric value).
    pub fn sigma(&self) -> Result<FieldElement, ScalarError> {
        match self {
            Field::Rational { sigma: Some(s) } => Ok(FieldElement::Rational(s.clone())),
            Field::Rational { sigma: None } => Err(ScalarError::NoSigma),
            Field::Complex { sigma, .. } => Ok(FieldElement::Complex(sigma.clone())),
            _ => self.from_ratfunc(RatFunc::sigma_pow(1)),
        }
    }

    /// σ^k for any integer k.
    pub fn sigma_pow(&self, k: i32) -> Result<FieldElement, ScalarError> {
        match self {
            Field::RatFunc | Field::QuadExt { .. } => self.from_ratfunc(RatFunc::sigma_pow(k)),
            _ => self.sigma()?.pow(k),
        }
    }

    /// The quantum parameter q = σ⁴.
    pub fn q(&self) -> Result<FieldElement, ScalarError> {
        self.sigma_pow(4)
    }

    pub fn theta(&self) -> Result<FieldElement, ScalarError> {
        match self {
            Field::QuadExt { delta } => Ok(FieldElement::Quad(QuadElement::theta(delta.clone()))),
            Field::Complex { theta: Some(t), .. } => Ok(FieldElement::Complex(t.clone())),
            _ => Err(ScalarError::NoTheta),
        }
    }

    pub fn contains(&self, x: &FieldElement) -> bool {
        match (self, x) {
            (Field::Rational { .. }, FieldElement::Rational(_)) => true,
            (Field::RatFunc, FieldElement::RatFunc(_)) => true,
            (Field::QuadExt { delta }, FieldElement::Quad(e)) => {
                Arc::ptr_eq(delta, e.delta()) || **delta == **e.delta()
            }
            (Field::Complex { bits, .. }, FieldElement::Complex(c)) => c.bits() == *bits,
            _ => false,
        }
    }

    /// Moves `x` into this field when that is a canonical embedding
    /// (rationals into anything, Q(σ) into Q(σ)(θ), exact values into C
    /// after specialization). Otherwise reports a field mismatch.
    pub fn coerce(&self, x: FieldElement) -> Result<FieldElement, ScalarError> {
        if self.contains(&x) {
            return Ok(x);
        }
        match (&x, self) {
            (FieldElement::Rational(r), _) => Ok(self.from_rational(r.clone())),
            (FieldElement::RatFunc(r), Field::QuadExt { delta }) => Ok(FieldElement::Quad(
                QuadElement::from_base(r.clone(), delta.clone()),
            )),
            _ => Err(ScalarError::FieldMismatch(
                x.backend_name().to_string(),
                self.kind().to_string(),
            )),
        }
    }

    /// Principal square root inside this field, if one exists.
    ///
    /// Sign conventions: non-negative rationals; positive leading numerator
    /// coefficient in Q(σ); in Q(σ)(θ) a pure `r θ` root has `r` normalized
    /// the same way; complex roots have non-negative real part.
    pub fn sqrt(&self, x: &FieldElement) -> Option<FieldElement> {
        match x {
            FieldElement::Rational(r) => rational_sqrt(r).map(FieldElement::Rational),
            FieldElement::RatFunc(r) => r.sqrt().map(FieldElement::RatFunc),
            FieldElement::Complex(c) => Some(FieldElement::Complex(c.sqrt())),
            FieldElement::Quad(e) => quad_sqrt(e).map(FieldElement::Quad),
        }
    }

    /// The rule used to evaluate elements of this field at σ (and θ) when it
    /// is itself a specialization; only meaningful for `Rational` and
    /// `Complex` fields.
    fn point_specialization(&self) -> Result<Specialization, ScalarError> {
        match self {
            Field::Rational { sigma: Some(s) } => Ok(Specialization::rational(s.clone())),
            Field::Complex { bits, sigma, .. } => Ok(Specialization {
                sigma: Point::Complex(sigma.clone()),
                theta_sign: 1,
                bits: *bits,
            }),
            _ => Err(ScalarError::NoSigma),
        }
    }

    /// The field an instance lands in after evaluating σ at a point: exact
    /// rationals when σ₀ is rational and the extension (if any) splits there,
    /// otherwise complex numbers at `spec.bits`.
    pub fn specialize(&self, spec: &Specialization) -> Result<Field, ScalarError> {
        let bits = spec.bits;
        match (&spec.sigma, self) {
            (Point::Rational(s), Field::RatFunc) => Ok(Field::Rational {
                sigma: Some(s.clone()),
            }),
            (Point::Rational(s), Field::QuadExt { delta }) => {
                let d = delta.eval(s).expect("polynomial delta");
                if rational_sqrt(&d).is_some() {
                    Ok(Field::Rational {
                        sigma: Some(s.clone()),
                    })
                } else {
                    let theta = spec.theta_value(delta)?;
                    Ok(Field::Complex {
                        bits,
                        sigma: Complex::from_rational(s, bits),
                        theta: Some(theta),
                    })
                }
            }
            (Point::Complex(s), Field::RatFunc) => Ok(Field::Complex {
                bits,
                sigma: s.clone(),
                theta: None,
            }),
            (Point::Complex(s), Field::QuadExt { delta }) => Ok(Field::Complex {
                bits,
                sigma: s.clone(),
                theta: Some(spec.theta_value(delta)?),
            }),
            _ => Ok(self.clone()),
        }
    }
}

fn quad_sqrt(e: &QuadElement) -> Option<QuadElement> {
    let delta = e.delta().clone();
    let (a, b) = (e.real(), e.theta_part());
    if b.is_zero() {
        if let Some(r) = a.sqrt() {
            return Some(QuadElement::from_base(r, delta));
        }
        // a = r² Δ  ⇒  √a = r θ
        let r = a.div(&delta).sqrt()?;
        return Some(QuadElement::new(RatFunc::zero(), r, delta));
    }
    // (x + yθ)² = a + bθ  ⇒  x² = (a ± √N)/2, y = b/(2x), N = a² − b²Δ
    let n = e.norm().sqrt()?;
    let two = RatFunc::two();
    for cand in [a.add(&n).div(&two), a.sub(&n).div(&two)] {
        if let Some(x) = cand.sqrt() {
            if x.is_zero() {
                continue;
            }
            let y = b.div(&x.mul(&two));
            return Some(QuadElement::new(x, y, delta));
        }
    }
    None
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational { sigma: None } => write!(f, "rational"),
            Field::Rational { sigma: Some(s) } => {
                write!(f, "rational(s = {})", super::poly::fmt_rational(s))
            }
            Field::RatFunc => write!(f, "ratfunc-sigma"),
            Field::QuadExt { delta } => write!(f, "quadext(th^2 = {delta})"),
            Field::Complex { bits, sigma, theta } => {
                write!(f, "complex({bits} bits, s = {sigma}")?;
                if let Some(t) = theta {
                    write!(f, ", th = {t}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({self})")
    }
}

/// A point at which σ is evaluated.
#[derive(Clone, Debug, PartialEq)]
pub enum Point {
    Rational(BigRational),
    Complex(Complex),
}

/// Evaluation of Q(σ) (and its quadratic extension) at a point. When θ has
/// to be evaluated, `theta_sign` picks which square root of Δ(σ₀) is used:
/// `+1` is the root with non-negative real part (the positive root when
/// Δ(σ₀) is a positive rational square).
#[derive(Clone, Debug, PartialEq)]
pub struct Specialization {
    pub sigma: Point,
    pub theta_sign: i8,
    pub bits: u32,
}

impl Specialization {
    pub const DEFAULT_BITS: u32 = 128;

    pub fn rational(sigma: BigRational) -> Self {
        Specialization {
            sigma: Point::Rational(sigma),
            theta_sign: 1,
            bits: Self::DEFAULT_BITS,
        }
    }

    pub fn at_int(sigma: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(sigma)))
    }

    pub fn complex(sigma: Complex) -> Self {
        let bits = sigma.bits();
        Specialization {
            sigma: Point::Complex(sigma),
            theta_sign: 1,
            bits,
        }
    }

    pub fn with_theta_sign(mut self, sign: i8) -> Self {
        self.theta_sign = if sign < 0 { -1 } else { 1 };
        self
    }

    fn sigma_complex(&self) -> Complex {
        match &self.sigma {
            Point::Rational(s) => Complex::from_rational(s, self.bits),
            Point::Complex(c) => c.clone(),
        }
    }

    fn eval_complex(&self, r: &RatFunc) -> Result<Complex, ScalarError> {
        let s = self.sigma_complex();
        let horner = |p: &Poly| {
            let mut acc = Complex::zero(self.bits);
            for c in p.coeffs().iter().rev() {
                acc = acc.mul(&s).add(&Complex::from_rational(c, self.bits));
            }
            acc
        };
        let d = horner(r.denom());
        if d.is_zero() {
            return Err(self.pole(r));
        }
        Ok(horner(r.numer()).div(&d))
    }

    fn pole(&self, r: &RatFunc) -> ScalarError {
        let point = match &self.sigma {
            Point::Rational(s) => super::poly::fmt_rational(s),
            Point::Complex(c) => c.to_string(),
        };
        ScalarError::Pole {
            point,
            denominator: r.denom().to_string(),
        }
    }

    fn theta_value(&self, delta: &RatFunc) -> Result<Complex, ScalarError> {
        let root = self.eval_complex(delta)?.sqrt();
        Ok(if self.theta_sign < 0 {
            root.neg()
        } else {
            root
        })
    }

    fn eval_rational(&self, r: &RatFunc, s: &BigRational) -> Result<BigRational, ScalarError> {
        r.eval(s).ok_or_else(|| self.pole(r))
    }

    /// Evaluates `x` at this point. Exact rational results are returned when
    /// σ₀ is rational and no irrational square root is involved; otherwise
    /// the result is complex at `self.bits`.
    pub fn apply(&self, x: &FieldElement) -> Result<FieldElement, ScalarError> {
        match (x, &self.sigma) {
            (FieldElement::Rational(_), _) | (FieldElement::Complex(_), _) => Ok(x.clone()),
            (FieldElement::RatFunc(r), Point::Rational(s)) => {
                Ok(FieldElement::Rational(self.eval_rational(r, s)?))
            }
            (FieldElement::RatFunc(r), Point::Complex(_)) => {
                Ok(FieldElement::Complex(self.eval_complex(r)?))
            }
            (FieldElement::Quad(e), Point::Rational(s)) => {
                let a = self.eval_rational(e.real(), s)?;
                let b = self.eval_rational(e.theta_part(), s)?;
                if b.is_zero() {
                    return Ok(FieldElement::Rational(a));
                }
                let d = e.delta().eval(s).expect("polynomial delta");
                if let Some(root) = rational_sqrt(&d) {
                    let root = if self.theta_sign < 0 { -root } else { root };
                    return Ok(FieldElement::Rational(a + b * root));
                }
                let theta = self.theta_value(e.delta())?;
                let a = Complex::from_rational(&a, self.bits);
                let b = Complex::from_rational(&b, self.bits);
                Ok(FieldElement::Complex(a.add(&b.mul(&theta))))
            }
            (FieldElement::Quad(e), Point::Complex(_)) => {
                let a = self.eval_complex(e.real())?;
                let b = self.eval_complex(e.theta_part())?;
                let theta = self.theta_value(e.delta())?;
                Ok(FieldElement::Complex(a.add(&b.mul(&theta))))
            }
        }
    }
}

/// Evaluates `x` at σ₀; see [`Specialization::apply`].
pub fn specialize(x: &FieldElement, spec: &Specialization) -> Result<FieldElement, ScalarError> {
    spec.apply(x)
}

impl From<&BigRational> for FieldElement {
    fn from(r: &BigRational) -> Self {
        FieldElement::Rational(r.clone())
    }
}
