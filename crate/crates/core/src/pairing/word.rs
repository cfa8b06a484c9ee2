//! Monomials in the generators `t_i^j` and their linear combinations.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::{parse_expr, Expr, ExprError, Field, FieldElement, ScalarError};

/// `t_{i1}^{j1} ⋯ t_{ir}^{jr}` as 0-based `(i, j)` pairs; empty is the
/// unit.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<(usize, usize)>);

impl Word {
    pub fn one() -> Self {
        Word(Vec::new())
    }

    pub fn generator(i: usize, j: usize) -> Self {
        Word(vec![(i, j)])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `ε(t_i^j) = δ_i^j`, extended multiplicatively.
    pub fn counit(&self) -> bool {
        self.0.iter().all(|&(i, j)| i == j)
    }

    /// All words of length exactly `len` in `n²` generators, lexicographic.
    pub fn all_of_length(n: usize, len: usize) -> Vec<Word> {
        let mut out = vec![Word::one()];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|w| {
                    (0..n * n).map(move |g| {
                        let mut v = w.0.clone();
                        v.push((g / n, g % n));
                        Word(v)
                    })
                })
                .collect();
        }
        out
    }

    /// All words of length at most `max_len`.
    pub fn all_up_to(n: usize, max_len: usize) -> Vec<Word> {
        (0..=max_len)
            .flat_map(|l| Word::all_of_length(n, l))
            .collect()
    }

    /// `Δ(w) = Σ_p w′(p) ⊗ w″(p)` with `w′ = t_{i1}^{p1}⋯`, `w″ = t_{p1}^{j1}⋯`,
    /// one term per `p ∈ {0..n}^{|w|}`.
    pub fn coproduct(&self, n: usize) -> Vec<(Word, Word)> {
        let r = self.len();
        let total = n.pow(r as u32);
        (0..total)
            .map(|mut flat| {
                let mut p = vec![0; r];
                for slot in p.iter_mut().rev() {
                    *slot = flat % n;
                    flat /= n;
                }
                let left = Word(
                    self.0
                        .iter()
                        .zip(&p)
                        .map(|(&(i, _), &pk)| (i, pk))
                        .collect(),
                );
                let right = Word(
                    self.0
                        .iter()
                        .zip(&p)
                        .map(|(&(_, j), &pk)| (pk, j))
                        .collect(),
                );
                (left, right)
            })
            .collect()
    }
}

impl fmt::Display for Word {
    /// `t[i,j]*…` (1-based), or `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(i, j)| format!("t[{},{}]", i + 1, j + 1))
            .collect();
        f.write_str(&parts.join("*"))
    }
}

/// A finite linear combination of words; no zero coefficients are stored.
#[derive(Clone, PartialEq)]
pub struct LinComb {
    field: Field,
    terms: BTreeMap<Word, FieldElement>,
}

impl LinComb {
    pub fn zero(field: &Field) -> Self {
        LinComb {
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn from_word(field: &Field, w: Word) -> Self {
        Self::term(field, w, field.one())
    }

    pub fn term(field: &Field, w: Word, c: FieldElement) -> Self {
        let mut out = Self::zero(field);
        out.add_term(w, c).expect("coefficient from the same field");
        out
    }

    pub fn scalar(field: &Field, c: FieldElement) -> Self {
        Self::term(field, Word::one(), c)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &FieldElement)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> FieldElement {
        self.terms
            .get(w)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn add_term(&mut self, w: Word, c: FieldElement) -> Result<(), ScalarError> {
        let c = self.field.coerce(c)?;
        if c.is_zero() {
            return Ok(());
        }
        match self.terms.get_mut(&w) {
            Some(slot) => {
                *slot = slot.try_add(&c)?;
                if slot.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &LinComb) -> Result<LinComb, ScalarError> {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &LinComb) -> Result<LinComb, ScalarError> {
        self.add(&other.scale(&self.field.from_int(-1))?)
    }

    pub fn scale(&self, c: &FieldElement) -> Result<LinComb, ScalarError> {
        let mut out = Self::zero(&self.field);
        for (w, x) in &self.terms {
            out.add_term(w.clone(), x.try_mul(c)?)?;
        }
        Ok(out)
    }

    /// Product in the free algebra (concatenation of words).
    pub fn mul(&self, other: &LinComb) -> Result<LinComb, ScalarError> {
        let mut out = Self::zero(&self.field);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.concat(b), x.try_mul(y)?)?;
            }
        }
        Ok(out)
    }

    pub fn counit(&self) -> FieldElement {
        self.terms
            .iter()
            .filter(|(w, _)| w.counit())
            .fold(self.field.zero(), |acc, (_, c)| &acc + c)
    }

    /// Parses `q*t[1,1]*t[2,2] - t[1,2]*t[2,1]` with indices in `1..=n`.
    pub fn parse(field: &Field, n: usize, src: &str) -> Result<LinComb, ExprError> {
        let e = parse_expr(src)?;
        eval(field, n, &e)
    }
}

fn eval(field: &Field, n: usize, e: &Expr) -> Result<LinComb, ExprError> {
    Ok(match e {
        Expr::Gen(i, j) => {
            if *i > n || *j > n {
                return Err(ExprError::Parse(crate::scalar::ParseError {
                    message: format!("generator t[{i},{j}] out of range for n = {n}"),
                    line: 1,
                    column: 1,
                }));
            }
            LinComb::from_word(field, Word::generator(i - 1, j - 1))
        }
        Expr::Neg(a) => eval(field, n, a)?.scale(&field.from_int(-1))?,
        Expr::Add(a, b) => eval(field, n, a)?.add(&eval(field, n, b)?)?,
        Expr::Sub(a, b) => eval(field, n, a)?.sub(&eval(field, n, b)?)?,
        Expr::Mul(a, b) => eval(field, n, a)?.mul(&eval(field, n, b)?)?,
        Expr::Div(a, b) => {
            let d = b.eval_scalar(field)?;
            eval(field, n, a)?.scale(&d.inv()?)?
        }
        Expr::Pow(a, k) if *k >= 0 => {
            let base = eval(field, n, a)?;
            let mut acc = LinComb::scalar(field, field.one());
            for _ in 0..*k {
                acc = acc.mul(&base)?;
            }
            acc
        }
        other => LinComb::scalar(field, other.eval_scalar(field)?),
    })
}

impl fmt::Display for LinComb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                if c.is_one() {
                    w.to_string()
                } else if w.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c})*{w}")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for LinComb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinComb({self})")
    }
}
