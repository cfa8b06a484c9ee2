//! Sparse linear operators on tensor powers of an `n`-dimensional space,
//! position lifting, and the Yang-Baxter / Hecke verification kernel.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_rational::BigRational;

use crate::scalar::{Field, FieldElement, Matrix, QuadElement, RatFunc};
use crate::{Check, Error, Result};

/// A basis tensor `x_{i1} ⊗ … ⊗ x_{im}`, 0-based entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(pub Vec<usize>);

impl MultiIndex {
    /// Position in the lexicographic order of `{0..n}^m`.
    pub fn flat(&self, n: usize) -> usize {
        self.0.iter().fold(0, |acc, &i| acc * n + i)
    }

    pub fn from_flat(n: usize, m: usize, mut flat: usize) -> Self {
        let mut v = vec![0; m];
        for slot in v.iter_mut().rev() {
            *slot = flat % n;
            flat /= n;
        }
        MultiIndex(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for MultiIndex {
    /// 1-based, e.g. `(1,2,1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Two operators (or an operator and zero) differ at `(input, output)`.
#[derive(Clone, Debug, PartialEq)]
pub struct EntryWitness {
    pub input: MultiIndex,
    pub output: MultiIndex,
    pub lhs: FieldElement,
    pub rhs: FieldElement,
}

impl fmt::Display for EntryWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "input {} -> output {}: {} != {}",
            self.input, self.output, self.lhs, self.rhs
        )
    }
}

/// `A(x_I) = Σ_O A[I, O] x_O`, stored sparsely by flat `(I, O)`; absent
/// entries are zero and no stored entry is exactly zero.
#[derive(Clone, PartialEq)]
pub struct TensorOperator {
    field: Field,
    n: usize,
    arity: usize,
    table: BTreeMap<(usize, usize), FieldElement>,
}

impl TensorOperator {
    pub fn zero(field: &Field, n: usize, arity: usize) -> Self {
        TensorOperator {
            field: field.clone(),
            n,
            arity,
            table: BTreeMap::new(),
        }
    }

    pub fn identity(field: &Field, n: usize, arity: usize) -> Self {
        let mut op = Self::zero(field, n, arity);
        for i in 0..n.pow(arity as u32) {
            op.table.insert((i, i), field.one());
        }
        op
    }

    /// The flip `x_i ⊗ x_j ↦ x_j ⊗ x_i`.
    pub fn flip(field: &Field, n: usize) -> Self {
        let mut op = Self::zero(field, n, 2);
        for i in 0..n {
            for j in 0..n {
                op.table.insert((i * n + j, j * n + i), field.one());
            }
        }
        op
    }

    /// Builds an operator from `f(input, output)` over all basis pairs.
    pub fn from_fn(
        field: &Field,
        n: usize,
        arity: usize,
        mut f: impl FnMut(&MultiIndex, &MultiIndex) -> FieldElement,
    ) -> Result<Self> {
        let dim = n.pow(arity as u32);
        let mut op = Self::zero(field, n, arity);
        for a in 0..dim {
            let ia = MultiIndex::from_flat(n, arity, a);
            for b in 0..dim {
                let x = field.coerce(f(&ia, &MultiIndex::from_flat(n, arity, b)))?;
                op.insert(a, b, x);
            }
        }
        Ok(op)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        self.n.pow(self.arity as u32)
    }

    pub fn nnz(&self) -> usize {
        self.table.len()
    }

    pub fn is_zero(&self) -> bool {
        self.table.is_empty()
    }

    fn insert(&mut self, input: usize, output: usize, x: FieldElement) {
        if x.is_zero() {
            self.table.remove(&(input, output));
        } else {
            self.table.insert((input, output), x);
        }
    }

    pub fn set(&mut self, input: &MultiIndex, output: &MultiIndex, x: FieldElement) -> Result<()> {
        self.check_index(input)?;
        self.check_index(output)?;
        let x = self.field.coerce(x)?;
        self.insert(input.flat(self.n), output.flat(self.n), x);
        Ok(())
    }

    fn check_index(&self, i: &MultiIndex) -> Result<()> {
        if i.len() != self.arity || i.0.iter().any(|&k| k >= self.n) {
            return Err(Error::Shape(format!(
                "index {i} for an operator of arity {} on dimension {}",
                self.arity, self.n
            )));
        }
        Ok(())
    }

    pub fn get_flat(&self, input: usize, output: usize) -> FieldElement {
        self.table
            .get(&(input, output))
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn get(&self, input: &MultiIndex, output: &MultiIndex) -> FieldElement {
        self.get_flat(input.flat(self.n), output.flat(self.n))
    }

    /// Nonzero entries as `(input, output, value)` in flat indices.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &FieldElement)> + '_ {
        self.table.iter().map(|(&(a, b), x)| (a, b, x))
    }

    /// Nonzero entries of row `input`.
    pub fn row(&self, input: usize) -> impl Iterator<Item = (usize, &FieldElement)> + '_ {
        self.table
            .range((input, 0)..(input + 1, 0))
            .map(|(&(_, b), x)| (b, x))
    }

    fn same_shape(&self, other: &TensorOperator) -> Result<()> {
        if self.n != other.n || self.arity != other.arity {
            return Err(Error::Shape(format!(
                "arity {} on dimension {} vs arity {} on dimension {}",
                self.arity, self.n, other.arity, other.n
            )));
        }
        Ok(())
    }

    /// `self ∘ other`: `other` is applied first.
    pub fn compose(&self, other: &TensorOperator) -> Result<TensorOperator> {
        self.same_shape(other)?;
        let table = match (Interned::new(self), Interned::new(other)) {
            (Some(a), Some(b)) => compose_interned(&a, &b)?,
            _ => self.compose_direct(other)?,
        };
        Ok(TensorOperator {
            field: self.field.clone(),
            n: self.n,
            arity: self.arity,
            table,
        })
    }

    fn compose_direct(&self, other: &TensorOperator) -> Result<Table> {
        let mut acc: Table = BTreeMap::new();
        for (&(i, j), b) in &other.table {
            for (o, a) in self.row(j) {
                let t = b.try_mul(a)?;
                match acc.get_mut(&(i, o)) {
                    Some(slot) => *slot = slot.try_add(&t)?,
                    None => {
                        acc.insert((i, o), t);
                    }
                }
            }
        }
        acc.retain(|_, x| !x.is_zero());
        Ok(acc)
    }

    pub fn add(&self, other: &TensorOperator) -> Result<TensorOperator> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for (&(i, o), x) in &other.table {
            let v = out.get_flat(i, o).try_add(x)?;
            out.insert(i, o, v);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &TensorOperator) -> Result<TensorOperator> {
        self.add(&other.scale(&self.field.from_int(-1))?)
    }

    pub fn scale(&self, c: &FieldElement) -> Result<TensorOperator> {
        let mut out = Self::zero(&self.field, self.n, self.arity);
        if c.is_zero() {
            return Ok(out);
        }
        for (&k, x) in &self.table {
            let v = x.try_mul(c)?;
            if !v.is_zero() {
                out.table.insert(k, v);
            }
        }
        Ok(out)
    }

    /// The operator acting on tensor factors `position .. position + arity`
    /// of an `m`-fold tensor power (0-based), identity elsewhere.
    pub fn lift(&self, position: usize, m: usize) -> Result<TensorOperator> {
        if position + self.arity > m {
            return Err(Error::Position { position, arity: m });
        }
        let n = self.n;
        let left = n.pow(position as u32);
        let right = n.pow((m - position - self.arity) as u32);
        let block = self.dim();
        let mut out = Self::zero(&self.field, n, m);
        for a in 0..left {
            for (&(i, o), x) in &self.table {
                for c in 0..right {
                    let input = (a * block + i) * right + c;
                    let output = (a * block + o) * right + c;
                    out.table.insert((input, output), x.clone());
                }
            }
        }
        Ok(out)
    }

    /// Dense `n^m × n^m` matrix acting on column vectors: entry
    /// `(O, I)` is `A[I, O]`, so composition becomes matrix product.
    pub fn as_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(&self.field, self.dim(), self.dim());
        for (&(i, o), x) in &self.table {
            m.set(o, i, x.clone());
        }
        m
    }

    pub fn from_matrix(field: &Field, n: usize, arity: usize, m: &Matrix) -> Result<Self> {
        let dim = n.pow(arity as u32);
        if m.rows() != dim || m.cols() != dim {
            return Err(Error::Shape(format!(
                "{}x{} matrix for arity {arity} on dimension {n}",
                m.rows(),
                m.cols()
            )));
        }
        let mut op = Self::zero(field, n, arity);
        for o in 0..dim {
            for i in 0..dim {
                op.insert(i, o, field.coerce(m.get(o, i).clone())?);
            }
        }
        Ok(op)
    }

    /// Change of basis by `W^{⊗m}`: the result is `W^{⊗m} A (W^{⊗m})⁻¹`,
    /// where `W` acts on column coordinates.
    pub fn conjugate(&self, w: &Matrix) -> Result<TensorOperator> {
        if w.rows() != self.n || w.cols() != self.n {
            return Err(Error::Shape(format!(
                "{}x{} change of basis on dimension {}",
                w.rows(),
                w.cols(),
                self.n
            )));
        }
        let mut k = Matrix::identity(&self.field, 1);
        for _ in 0..self.arity {
            k = kron(&k, w)?;
        }
        let kinv = k.inverse()?;
        let a = k.mul(&self.as_matrix())?.mul(&kinv)?;
        Self::from_matrix(&self.field, self.n, self.arity, &a)
    }

    /// First entry where `self` and `other` differ (tolerant in the
    /// complex backend).
    pub fn first_difference(&self, other: &TensorOperator) -> Result<Option<EntryWitness>> {
        self.same_shape(other)?;
        let mut keys: Vec<(usize, usize)> = self.table.keys().copied().collect();
        keys.extend(other.table.keys().copied());
        keys.sort_unstable();
        keys.dedup();
        for (i, o) in keys {
            let (a, b) = (self.get_flat(i, o), other.get_flat(i, o));
            if !a.same_value(&b) {
                return Ok(Some(EntryWitness {
                    input: MultiIndex::from_flat(self.n, self.arity, i),
                    output: MultiIndex::from_flat(self.n, self.arity, o),
                    lhs: a,
                    rhs: b,
                }));
            }
        }
        Ok(None)
    }

    /// `Pass` iff `self == other` entrywise.
    pub fn equals(&self, other: &TensorOperator) -> Result<Check<EntryWitness>> {
        Ok(match self.first_difference(other)? {
            None => Check::Pass,
            Some(w) => Check::Fail(w),
        })
    }
}

type Table = BTreeMap<(usize, usize), FieldElement>;

/// Hashable view of an exact scalar. Complex values have none.
#[derive(PartialEq, Eq, Hash)]
enum ExactKey<'a> {
    Rational(&'a BigRational),
    RatFunc(&'a RatFunc),
    Quad(&'a QuadElement),
}

impl<'a> ExactKey<'a> {
    fn of(x: &'a FieldElement) -> Option<Self> {
        match x {
            FieldElement::Rational(r) => Some(ExactKey::Rational(r)),
            FieldElement::RatFunc(r) => Some(ExactKey::RatFunc(r)),
            FieldElement::Quad(r) => Some(ExactKey::Quad(r)),
            FieldElement::Complex(_) => None,
        }
    }
}

/// An operator whose entries are replaced by ids into a list of distinct
/// values. Lifted operators repeat a handful of values many times.
struct Interned<'a> {
    values: Vec<&'a FieldElement>,
    entries: Vec<(usize, usize, u32)>,
}

impl<'a> Interned<'a> {
    fn new(op: &'a TensorOperator) -> Option<Self> {
        let mut ids: HashMap<ExactKey<'a>, u32> = HashMap::new();
        let mut values = Vec::new();
        let mut entries = Vec::with_capacity(op.table.len());
        for (&(i, o), x) in &op.table {
            let id = *ids.entry(ExactKey::of(x)?).or_insert_with(|| {
                values.push(x);
                (values.len() - 1) as u32
            });
            entries.push((i, o, id));
        }
        Some(Interned { values, entries })
    }
}

/// Composition where each output entry is first described by the multiset
/// of value-id products feeding it; equal multisets are summed once.
fn compose_interned(a: &Interned<'_>, b: &Interned<'_>) -> Result<Table> {
    let mut rows: BTreeMap<usize, Vec<(usize, u32)>> = BTreeMap::new();
    for &(i, o, id) in &a.entries {
        rows.entry(i).or_default().push((o, id));
    }
    let mut terms: BTreeMap<(usize, usize), Vec<(u32, u32)>> = BTreeMap::new();
    for &(i, j, bid) in &b.entries {
        for &(o, aid) in rows.get(&j).into_iter().flatten() {
            terms.entry((i, o)).or_default().push((bid, aid));
        }
    }
    let mut products: HashMap<(u32, u32), FieldElement> = HashMap::new();
    let mut sums: HashMap<Vec<(u32, u32)>, FieldElement> = HashMap::new();
    let mut out = BTreeMap::new();
    for (at, mut t) in terms {
        t.sort_unstable();
        let v = match sums.get(&t) {
            Some(v) => v.clone(),
            None => {
                let mut acc: Option<FieldElement> = None;
                for &(bid, aid) in &t {
                    let p = match products.get(&(bid, aid)) {
                        Some(p) => p.clone(),
                        None => {
                            let p = b.values[bid as usize].try_mul(a.values[aid as usize])?;
                            products.insert((bid, aid), p.clone());
                            p
                        }
                    };
                    acc = Some(match acc {
                        None => p,
                        Some(x) => x.try_add(&p)?,
                    });
                }
                let v = acc.expect("nonempty term list");
                sums.insert(t, v.clone());
                v
            }
        };
        if !v.is_zero() {
            out.insert(at, v);
        }
    }
    Ok(out)
}

fn kron(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    let (ar, ac, br, bc) = (a.rows(), a.cols(), b.rows(), b.cols());
    Ok(Matrix::from_fn(ar * br, ac * bc, |i, j| {
        a.get(i / br, j / bc) * b.get(i % br, j % bc)
    })?)
}

impl fmt::Debug for TensorOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "TensorOperator(n = {}, arity = {}, {} nonzeros)",
            self.n,
            self.arity,
            self.table.len()
        )?;
        for (&(i, o), x) in &self.table {
            writeln!(
                f,
                "  {} -> {}: {x}",
                MultiIndex::from_flat(self.n, self.arity, i),
                MultiIndex::from_flat(self.n, self.arity, o)
            )?;
        }
        Ok(())
    }
}

fn require_arity2(s: &TensorOperator) -> Result<()> {
    if s.arity != 2 {
        return Err(Error::Shape(format!("expected arity 2, got {}", s.arity)));
    }
    Ok(())
}

/// `S¹² S²³ S¹² = S²³ S¹² S²³` on the third tensor power.
pub fn ybe_check(s: &TensorOperator) -> Result<Check<EntryWitness>> {
    require_arity2(s)?;
    let s12 = s.lift(0, 3)?;
    let s23 = s.lift(1, 3)?;
    let lhs = s12.compose(&s23)?.compose(&s12)?;
    let rhs = s23.compose(&s12)?.compose(&s23)?;
    lhs.equals(&rhs)
}

/// `(id + S)(q id − S) = 0`.
pub fn hecke_check(s: &TensorOperator, q: &FieldElement) -> Result<Check<EntryWitness>> {
    require_arity2(s)?;
    let id = TensorOperator::identity(s.field(), s.n(), 2);
    let prod = id.add(s)?.compose(&id.scale(q)?.sub(s)?)?;
    prod.equals(&TensorOperator::zero(s.field(), s.n(), 2))
}

/// `(q id − S)`, `(id + S)` and the TL projector `(q id − S)/(1+q)`.
pub fn hecke_projector(s: &TensorOperator, q: &FieldElement) -> Result<TensorOperator> {
    let id = TensorOperator::identity(s.field(), s.n(), s.arity());
    let one_plus_q = q.try_add(&s.field().one())?;
    id.scale(q)?.sub(s)?.scale(&one_plus_q.inv()?)
}
