//! Quadratic extensions `Q(σ)(θ)` with `θ² = Δ`.

use std::fmt;
use std::sync::Arc;

use super::ratfunc::RatFunc;

/// `a + b θ` where `θ² = delta`. Two elements belong to the same field iff
/// their `delta`s are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadElement {
    pub(crate) a: RatFunc,
    pub(crate) b: RatFunc,
    pub(crate) delta: Arc<RatFunc>,
}

impl QuadElement {
    pub fn new(a: RatFunc, b: RatFunc, delta: Arc<RatFunc>) -> Self {
        QuadElement { a, b, delta }
    }

    pub fn from_base(a: RatFunc, delta: Arc<RatFunc>) -> Self {
        QuadElement {
            a,
            b: RatFunc::zero(),
            delta,
        }
    }

    pub fn theta(delta: Arc<RatFunc>) -> Self {
        QuadElement {
            a: RatFunc::zero(),
            b: RatFunc::one(),
            delta,
        }
    }

    /// Rational part.
    pub fn real(&self) -> &RatFunc {
        &self.a
    }

    /// Coefficient of θ.
    pub fn theta_part(&self) -> &RatFunc {
        &self.b
    }

    pub fn delta(&self) -> &Arc<RatFunc> {
        &self.delta
    }

    pub fn same_field(&self, other: &QuadElement) -> bool {
        Arc::ptr_eq(&self.delta, &other.delta) || self.delta == other.delta
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    fn with(&self, a: RatFunc, b: RatFunc) -> QuadElement {
        QuadElement {
            a,
            b,
            delta: self.delta.clone(),
        }
    }

    pub fn add(&self, rhs: &QuadElement) -> QuadElement {
        self.with(self.a.add(&rhs.a), self.b.add(&rhs.b))
    }

    pub fn sub(&self, rhs: &QuadElement) -> QuadElement {
        self.with(self.a.sub(&rhs.a), self.b.sub(&rhs.b))
    }

    pub fn neg(&self) -> QuadElement {
        self.with(self.a.neg(), self.b.neg())
    }

    pub fn mul(&self, rhs: &QuadElement) -> QuadElement {
        if self.b.is_zero() {
            return rhs.with(self.a.mul(&rhs.a), self.a.mul(&rhs.b));
        }
        if rhs.b.is_zero() {
            return self.with(self.a.mul(&rhs.a), self.b.mul(&rhs.a));
        }
        let ac = self.a.mul(&rhs.a);
        let bd = self.b.mul(&rhs.b);
        let ad = self.a.mul(&rhs.b);
        let bc = self.b.mul(&rhs.a);
        self.with(ac.add(&bd.mul(&self.delta)), ad.add(&bc))
    }

    /// `a² − b² Δ`.
    pub fn norm(&self) -> RatFunc {
        self.a
            .mul(&self.a)
            .sub(&self.b.mul(&self.b).mul(&self.delta))
    }

    /// Panics on zero.
    pub fn inv(&self) -> QuadElement {
        if self.b.is_zero() {
            return self.with(self.a.inv(), RatFunc::zero());
        }
        let n = self.norm().inv();
        self.with(self.a.mul(&n), self.b.neg().mul(&n))
    }
}

impl fmt::Display for QuadElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "({})*th", self.b),
            (false, false) => write!(f, "({}) + ({})*th", self.a, self.b),
        }
    }
}

impl fmt::Debug for QuadElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Quad[{}]({self})", self.delta)
    }
}
