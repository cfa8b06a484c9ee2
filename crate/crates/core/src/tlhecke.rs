//! Temperley-Lieb type even Hecke symmetries in the normalized basis:
//! `U`, `V` skew-diagonal, `Z` diagonal.
//!
//! `S_{ij}^{kl} = q δ_i^k δ_j^l − (1+q) u_{ij} v^{kl}` with
//! `u_{i,n−1−i} = u[i]`, `v^{k,n−1−k} = v[k]` (0-based), so that
//! `id + S = (1+q)(id − P)` and `q id − S = (1+q) P` for the rank-one
//! projector `P = U ⊗ V`.

use std::fmt;

use num_rational::BigRational;
use num_traits::Signed;

use crate::scalar::{rational_sqrt, Field, FieldElement, Poly, RatFunc, Specialization};
use crate::tensorop::{EntryWitness, TensorOperator};
use crate::{Check, Error, Result};

/// The sign ε in `m = ε √q / (1+q)`, with `√q = σ²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> i64 {
        match self {
            Branch::Plus => 1,
            Branch::Minus => -1,
        }
    }

    pub fn parse(s: &str) -> Option<Branch> {
        match s.trim() {
            "+" | "+1" | "plus" => Some(Branch::Plus),
            "-" | "-1" | "minus" => Some(Branch::Minus),
            _ => None,
        }
    }

    pub fn both() -> [Branch; 2] {
        [Branch::Plus, Branch::Minus]
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Plus => "+",
            Branch::Minus => "-",
        })
    }
}

/// Validated defining data of a TL-type Hecke symmetry. Immutable.
#[derive(Clone, Debug, PartialEq)]
pub struct TLInstance {
    n: usize,
    field: Field,
    u: Vec<FieldElement>,
    v: Vec<FieldElement>,
    branch: Branch,
    q: FieldElement,
    z: Vec<FieldElement>,
    m: FieldElement,
    lambda: FieldElement,
}

/// `(1+q)`, `σ²` and `q` of a field.
fn constants(field: &Field) -> Result<(FieldElement, FieldElement, FieldElement)> {
    let q = field.q()?;
    let one_plus_q = q.try_add(&field.one())?;
    let sqrt_q = field.sigma_pow(2)?;
    Ok((q, one_plus_q, sqrt_q))
}

impl TLInstance {
    /// Checks `Σ z_i = 1+q`, `z_i z_{n−1−i} = q` and, for odd `n`, that the
    /// middle `z` equals `m(1+q) = ε σ²`.
    pub fn new(
        field: Field,
        u: Vec<FieldElement>,
        v: Vec<FieldElement>,
        branch: Branch,
    ) -> Result<Self> {
        let n = u.len();
        if n < 2 {
            return Err(Error::Invalid(format!("n = {n}, need n >= 2")));
        }
        if v.len() != n {
            return Err(Error::Invalid(format!(
                "u has {n} entries but v has {}",
                v.len()
            )));
        }
        let u = u
            .into_iter()
            .map(|x| field.coerce(x))
            .collect::<Result<Vec<_>, _>>()?;
        let v = v
            .into_iter()
            .map(|x| field.coerce(x))
            .collect::<Result<Vec<_>, _>>()?;
        for (name, vec) in [("u", &u), ("v", &v)] {
            if let Some(i) = vec.iter().position(|x| x.is_zero()) {
                return Err(Error::Invalid(format!("{name}_{} is zero", i + 1)));
            }
        }
        let (q, one_plus_q, sqrt_q) = constants(&field)?;
        let z: Vec<FieldElement> = u
            .iter()
            .zip(&v)
            .map(|(a, b)| &(&one_plus_q * a) * b)
            .collect();
        let sum = z.iter().fold(field.zero(), |acc, x| &acc + x);
        if !sum.same_value(&one_plus_q) {
            return Err(Error::Trace {
                sum: sum.to_string(),
            });
        }
        for i in 0..n {
            let product = &z[i] * &z[n - 1 - i];
            if !product.same_value(&q) {
                return Err(Error::PairConstraint {
                    i: i + 1,
                    product: product.to_string(),
                });
            }
        }
        let eps = field.from_int(branch.sign());
        let m_times = &eps * &sqrt_q;
        if n % 2 == 1 {
            let mid = n / 2;
            if !z[mid].same_value(&m_times) {
                return Err(Error::Middle {
                    i: mid + 1,
                    value: z[mid].to_string(),
                    expected: m_times.to_string(),
                });
            }
        }
        let m = m_times.try_div(&one_plus_q)?;
        let lambda = q.try_div(&(&one_plus_q * &one_plus_q))?;
        Ok(TLInstance {
            n,
            field,
            u,
            v,
            branch,
            q,
            z,
            m,
            lambda,
        })
    }

    /// The instance with the given diagonal `z`, solving the scalar-M
    /// system for `v` (see [`solve_v_from_z`]).
    pub fn from_z(field: Field, z: Vec<FieldElement>, branch: Branch) -> Result<Self> {
        let (u, v) = solve_v_from_z(&field, &z, branch)?;
        TLInstance::new(field, u, v, branch)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn u(&self) -> &[FieldElement] {
        &self.u
    }

    pub fn v(&self) -> &[FieldElement] {
        &self.v
    }

    pub fn branch(&self) -> Branch {
        self.branch
    }

    pub fn q(&self) -> &FieldElement {
        &self.q
    }

    pub fn z(&self) -> &[FieldElement] {
        &self.z
    }

    /// `m = ε σ² / (1+q)`.
    pub fn m(&self) -> &FieldElement {
        &self.m
    }

    /// `λ = q (1+q)⁻²`.
    pub fn lambda(&self) -> &FieldElement {
        &self.lambda
    }

    pub fn one_plus_q(&self) -> FieldElement {
        &self.q + &self.field.one()
    }

    /// `u_{ij}` (0-based).
    pub fn u_tensor(&self, i: usize, j: usize) -> FieldElement {
        if i + j + 1 == self.n {
            self.u[i].clone()
        } else {
            self.field.zero()
        }
    }

    /// `v^{kl}` (0-based).
    pub fn v_tensor(&self, k: usize, l: usize) -> FieldElement {
        if k + l + 1 == self.n {
            self.v[k].clone()
        } else {
            self.field.zero()
        }
    }

    /// `S_{ij}^{kl}`, nonzero only for `(i,j) = (k,l)` or
    /// `i+j = k+l = n−1`.
    pub fn s_entry(&self, i: usize, j: usize, k: usize, l: usize) -> FieldElement {
        let mut x = self.field.zero();
        if i == k && j == l {
            x = self.q.clone();
        }
        if i + j + 1 == self.n && k + l + 1 == self.n {
            x = &x - &(&(&self.one_plus_q() * &self.u[i]) * &self.v[k]);
        }
        x
    }

    /// The operator `S` (input `(i,j)`, output `(k,l)`).
    pub fn build_s(&self) -> TensorOperator {
        let n = self.n;
        let mut s = TensorOperator::zero(&self.field, n, 2);
        for i in 0..n {
            for j in 0..n {
                let input = crate::tensorop::MultiIndex(vec![i, j]);
                let mut outputs = vec![(i, j)];
                if i + j + 1 == n {
                    outputs.extend((0..n).map(|k| (k, n - 1 - k)).filter(|&o| o != (i, j)));
                }
                for (k, l) in outputs {
                    let out = crate::tensorop::MultiIndex(vec![k, l]);
                    s.set(&input, &out, self.s_entry(i, j, k, l))
                        .expect("indices in range and field matches");
                }
            }
        }
        s
    }

    /// The rank-one projector `P_{ij}^{kl} = u_{ij} v^{kl}`.
    pub fn projector(&self) -> TensorOperator {
        let n = self.n;
        let mut p = TensorOperator::zero(&self.field, n, 2);
        for i in 0..n {
            for k in 0..n {
                let input = crate::tensorop::MultiIndex(vec![i, n - 1 - i]);
                let out = crate::tensorop::MultiIndex(vec![k, n - 1 - k]);
                p.set(&input, &out, &self.u[i] * &self.v[k])
                    .expect("indices in range and field matches");
            }
        }
        p
    }

    /// `m(1+q) v^i / v^{n−1−i} = z_i` for every `i` (the condition for
    /// scalar `M`), with this instance's branch `m`.
    pub fn scalar_m_condition_check(&self) -> Check<ScalarMWitness> {
        let mq = &self.m * &self.one_plus_q();
        for i in 0..self.n {
            let lhs = &(&mq * &self.v[i]) / &self.v[self.n - 1 - i];
            if !lhs.same_value(&self.z[i]) {
                return Check::Fail(ScalarMWitness {
                    i,
                    lhs,
                    z: self.z[i].clone(),
                });
            }
        }
        Check::Pass
    }

    /// `v^i ↦ w_i v^i`, `u_i ↦ u_i / w_i`; leaves `z` unchanged.
    pub fn gauge(&self, w: &[FieldElement]) -> Result<TLInstance> {
        if w.len() != self.n {
            return Err(Error::Invalid(format!(
                "gauge has {} entries, need {}",
                w.len(),
                self.n
            )));
        }
        let mut u = Vec::with_capacity(self.n);
        let mut v = Vec::with_capacity(self.n);
        for ((ui, vi), wi) in self.u.iter().zip(&self.v).zip(w) {
            let wi = self.field.coerce(wi.clone())?;
            u.push(ui.try_div(&wi)?);
            v.push(vi.try_mul(&wi)?);
        }
        TLInstance::new(self.field.clone(), u, v, self.branch)
    }

    /// The same instance read with the opposite branch sign. Fails for odd
    /// `n`, where the middle `z` pins the branch.
    pub fn with_branch(&self, branch: Branch) -> Result<TLInstance> {
        TLInstance::new(self.field.clone(), self.u.clone(), self.v.clone(), branch)
    }

    /// Evaluates `σ` (and `θ`) at a point and revalidates.
    pub fn specialize(&self, spec: &Specialization) -> Result<TLInstance> {
        let field = self.field.specialize(spec)?;
        let eval = |x: &FieldElement| -> Result<FieldElement> { Ok(field.coerce(spec.apply(x)?)?) };
        let u = self.u.iter().map(eval).collect::<Result<Vec<_>>>()?;
        let v = self.v.iter().map(eval).collect::<Result<Vec<_>>>()?;
        TLInstance::new(field, u, v, self.branch)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScalarMWitness {
    /// 0-based index of the first failing equation.
    pub i: usize,
    pub lhs: FieldElement,
    pub z: FieldElement,
}

impl fmt::Display for ScalarMWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "i = {}: m(1+q) v^i / v^(n+1-i) = {} but z_i = {}",
            self.i + 1,
            self.lhs,
            self.z
        )
    }
}

/// Solves `m(1+q) v^i / v^{n−1−i} = z_i` with `v^i = 1` on the first half
/// and the middle, then sets `u_i = z_i / ((1+q) v^i)`. Requires
/// `z_i z_{n−1−i} = q`; consistency is rechecked by [`TLInstance::new`].
pub fn solve_v_from_z(
    field: &Field,
    z: &[FieldElement],
    branch: Branch,
) -> Result<(Vec<FieldElement>, Vec<FieldElement>)> {
    let n = z.len();
    let (_, one_plus_q, sqrt_q) = constants(field)?;
    let mq = &field.from_int(branch.sign()) * &sqrt_q;
    let z = z
        .iter()
        .map(|x| field.coerce(x.clone()))
        .collect::<Result<Vec<_>, _>>()?;
    let mut v = vec![field.one(); n];
    for i in 0..n / 2 {
        v[n - 1 - i] = mq.try_div(&z[i])?;
    }
    let u = z
        .iter()
        .zip(&v)
        .map(|(zi, vi)| zi.try_div(&(&one_plus_q * vi)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((u, v))
}

/// The two roots of `x² − t x + q = 0` (product `q`, sum `t`) and the field
/// they live in: Q(σ) when the discriminant is a square, otherwise
/// `Q(σ)(θ)` with `θ² = Δ` the square-free part of `t² − 4q`.
#[derive(Clone, Debug)]
pub struct PairRoots {
    pub field: Field,
    pub roots: [FieldElement; 2],
    /// `Δ` when an extension was needed.
    pub delta: Option<RatFunc>,
}

pub fn solve_pair_quadratic(t: &RatFunc) -> Result<PairRoots> {
    let q = RatFunc::sigma_pow(4);
    let disc = t.mul(t).sub(&q.scale(&BigRational::from_integer(4.into())));
    let two = RatFunc::from_int(2);
    if let Some(r) = disc.sqrt() {
        let f = Field::RatFunc;
        let a = f.from_ratfunc(t.add(&r).div(&two))?;
        let b = f.from_ratfunc(t.sub(&r).div(&two))?;
        return Ok(PairRoots {
            field: f,
            roots: [a, b],
            delta: None,
        });
    }
    let (delta, root) = square_free_part(&disc);
    let field = Field::quad_ext(delta.clone())?;
    let th = field.theta()?;
    let r = &field.from_ratfunc(root)? * &th;
    let t = field.from_ratfunc(t.clone())?;
    let half = field.from_rational(BigRational::new(1.into(), 2.into()));
    let a = &(&t + &r) * &half;
    let b = &(&t - &r) * &half;
    Ok(PairRoots {
        field,
        roots: [a, b],
        delta: Some(delta),
    })
}

/// `x = Δ · r²` with `Δ` a square-free polynomial.
fn square_free_part(x: &RatFunc) -> (RatFunc, RatFunc) {
    // x = N/D = (N D) / D²
    let p = x.numer() * x.denom();
    let (c, factors) = p.square_free_decomposition();
    let mut delta = Poly::one();
    let mut root = Poly::one();
    for (k, f) in factors.iter().enumerate() {
        let mult = k + 1;
        if mult % 2 == 1 {
            delta = &delta * f;
        }
        root = &root * &f.pow((mult / 2) as u32);
    }
    let (c_delta, c_root) = match rational_sqrt(&c.abs()) {
        Some(r) => (
            BigRational::from_integer(if c.is_negative() {
                (-1).into()
            } else {
                1.into()
            }),
            r,
        ),
        None => (c.clone(), BigRational::from_integer(1.into())),
    };
    let delta = RatFunc::from_poly(delta.scale(&c_delta));
    let root = RatFunc::new(root.scale(&c_root), x.denom().clone());
    (delta, root)
}

/// All `z_i` pairwise distinct.
pub fn simple_spectrum_check(z: &[FieldElement]) -> bool {
    (0..z.len()).all(|i| (i + 1..z.len()).all(|j| !z[i].same_value(&z[j])))
}

/// The multiset `{z_i}` is invariant under `x ↦ q/x`.
pub fn reciprocal_spectrum_check(z: &[FieldElement], q: &FieldElement) -> bool {
    let count = |x: &FieldElement| z.iter().filter(|y| y.same_value(x)).count();
    z.iter().all(|x| match q.try_div(x) {
        Ok(image) => count(x) == count(&image),
        Err(_) => false,
    })
}

/// `t_i = lift((q id − S)/(1+q), i, m)` for `i = 0 .. m−2`.
pub fn tl_projectors(
    s: &TensorOperator,
    q: &FieldElement,
    m: usize,
) -> Result<Vec<TensorOperator>> {
    if m < 2 {
        return Err(Error::Invalid(format!("m = {m}, need m >= 2")));
    }
    let p = crate::tensorop::hecke_projector(s, q)?;
    (0..m - 1).map(|i| p.lift(i, m)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TlRelation {
    /// `t_i² = t_i`
    Idempotent { i: usize },
    /// `t_i t_j t_i = λ t_i`, `|i − j| = 1`
    Braid { i: usize, j: usize },
    /// `t_i t_j = t_j t_i`, `|i − j| > 1`
    Commute { i: usize, j: usize },
}

impl fmt::Display for TlRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            TlRelation::Idempotent { i } => write!(f, "t_{0} t_{0} = t_{0}", i + 1),
            TlRelation::Braid { i, j } => {
                write!(f, "t_{0} t_{1} t_{0} = lambda t_{0}", i + 1, j + 1)
            }
            TlRelation::Commute { i, j } => {
                write!(f, "t_{0} t_{1} = t_{1} t_{0}", i + 1, j + 1)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TlWitness {
    pub relation: TlRelation,
    pub entry: EntryWitness,
}

impl fmt::Display for TlWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at {}", self.relation, self.entry)
    }
}

/// All Temperley-Lieb relations among `projectors` with parameter `lambda`.
pub fn tl_relations_check(
    projectors: &[TensorOperator],
    lambda: &FieldElement,
) -> Result<Check<TlWitness>> {
    let fail = |relation, c: Check<EntryWitness>| c.map(|entry| TlWitness { relation, entry });
    for (i, t) in projectors.iter().enumerate() {
        let c = t.compose(t)?.equals(t)?;
        if !c.passed() {
            return Ok(fail(TlRelation::Idempotent { i }, c));
        }
    }
    for (i, ti) in projectors.iter().enumerate() {
        for (j, tj) in projectors.iter().enumerate() {
            let c = if i.abs_diff(j) == 1 {
                let lhs = ti.compose(tj)?.compose(ti)?;
                (TlRelation::Braid { i, j }, lhs.equals(&ti.scale(lambda)?)?)
            } else if i.abs_diff(j) > 1 {
                let lhs = ti.compose(tj)?;
                (TlRelation::Commute { i, j }, lhs.equals(&tj.compose(ti)?)?)
            } else {
                continue;
            };
            if !c.1.passed() {
                return Ok(fail(c.0, c.1));
            }
        }
    }
    Ok(Check::Pass)
}
