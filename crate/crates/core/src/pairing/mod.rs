//! The canonical pairing `⟨⟨ , ⟩⟩_c` of the quantum matrix bialgebra with
//! its opposite, RTT relators, and the induced action on tensor powers.
//!
//! Index convention: `⟨⟨t_i^j, t_k^l⟩⟩ = c · S_{ki}^{jl}` (0-based), where
//! `S_{ab}^{cd}` is the coefficient of `x_c ⊗ x_d` in `S(x_a ⊗ x_b)`.

mod word;

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;

pub use word::{LinComb, Word};

use crate::scalar::{Field, FieldElement};
use crate::tensorop::{MultiIndex, TensorOperator};
use crate::tlhecke::TLInstance;
use crate::{Check, Error, Result};

/// Dense table of `S_{ij}^{kl}`.
#[derive(Clone, Debug, PartialEq)]
pub struct STable {
    n: usize,
    field: Field,
    entries: Vec<FieldElement>,
}

impl STable {
    pub fn from_operator(s: &TensorOperator) -> Result<Self> {
        if s.arity() != 2 {
            return Err(Error::Shape(format!("expected arity 2, got {}", s.arity())));
        }
        let n = s.n();
        let mut entries = vec![s.field().zero(); n * n * n * n];
        for (a, b, x) in s.entries() {
            entries[a * n * n + b] = x.clone();
        }
        Ok(STable {
            n,
            field: s.field().clone(),
            entries,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// `S_{ij}^{kl}`.
    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> &FieldElement {
        let n = self.n;
        &self.entries[((i * n + j) * n + k) * n + l]
    }
}

/// The pairing for a fixed `S` and normalization `c`, memoized on word
/// pairs. The memo is confined to one thread.
pub struct Pairing {
    s: STable,
    c: FieldElement,
    memo: RefCell<HashMap<(Word, Word), FieldElement>>,
    use_memo: bool,
}

impl fmt::Debug for Pairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pairing(n = {}, c = {})", self.s.n, self.c)
    }
}

impl Pairing {
    pub fn new(inst: &TLInstance, c: FieldElement) -> Result<Self> {
        Self::from_operator(&inst.build_s(), c)
    }

    pub fn from_operator(s: &TensorOperator, c: FieldElement) -> Result<Self> {
        let c = s.field().coerce(c)?;
        Ok(Pairing {
            s: STable::from_operator(s)?,
            c,
            memo: RefCell::new(HashMap::new()),
            use_memo: true,
        })
    }

    /// Disables memoization (for cross-checking the cache).
    pub fn without_memo(mut self) -> Self {
        self.use_memo = false;
        self
    }

    pub fn n(&self) -> usize {
        self.s.n
    }

    pub fn field(&self) -> &Field {
        &self.s.field
    }

    pub fn c(&self) -> &FieldElement {
        &self.c
    }

    pub fn s(&self) -> &STable {
        &self.s
    }

    pub fn memo_len(&self) -> usize {
        self.memo.borrow().len()
    }

    /// `⟨⟨t_i^j, t_k^l⟩⟩ = c S_{ki}^{jl}`.
    pub fn generators(&self, (i, j): (usize, usize), (k, l): (usize, usize)) -> FieldElement {
        &self.c * self.s.get(k, i, j, l)
    }

    /// Pairing of two words. `⟨⟨1, b⟩⟩ = ε(b)`; a single generator against
    /// `b·C` uses `⟨⟨t_i^j, bC⟩⟩ = Σ_p ⟨⟨t_i^p, C⟩⟩⟨⟨t_p^j, b⟩⟩`; a longer
    /// left word `g·A` uses `⟨⟨gA, B⟩⟩ = Σ ⟨⟨g, B₍₁₎⟩⟩⟨⟨A, B₍₂₎⟩⟩`.
    pub fn words(&self, a: &Word, b: &Word) -> Result<FieldElement> {
        let f = self.field();
        if a.is_empty() {
            return Ok(if b.counit() { f.one() } else { f.zero() });
        }
        if b.is_empty() {
            return Ok(if a.counit() { f.one() } else { f.zero() });
        }
        if a.len() == 1 && b.len() == 1 {
            return Ok(self.generators(a.0[0], b.0[0]));
        }
        let key = (a.clone(), b.clone());
        if self.use_memo {
            if let Some(x) = self.memo.borrow().get(&key) {
                return Ok(x.clone());
            }
        }
        let n = self.n();
        let mut acc = f.zero();
        if a.len() == 1 {
            let (i, j) = a.0[0];
            let b0 = b.0[0];
            let rest = Word(b.0[1..].to_vec());
            for p in 0..n {
                let right = self.generators((p, j), b0);
                if right.is_zero() {
                    continue;
                }
                let left = self.words(&Word::generator(i, p), &rest)?;
                if !left.is_zero() {
                    acc = acc.try_add(&left.try_mul(&right)?)?;
                }
            }
        } else {
            let g = Word(vec![a.0[0]]);
            let tail = Word(a.0[1..].to_vec());
            for (b1, b2) in b.coproduct(n) {
                let x = self.words(&g, &b1)?;
                if x.is_zero() {
                    continue;
                }
                let y = self.words(&tail, &b2)?;
                if !y.is_zero() {
                    acc = acc.try_add(&x.try_mul(&y)?)?;
                }
            }
        }
        if self.use_memo {
            self.memo.borrow_mut().insert(key, acc.clone());
        }
        Ok(acc)
    }

    /// Bilinear extension of [`Self::words`].
    pub fn pair(&self, a: &LinComb, b: &LinComb) -> Result<FieldElement> {
        let mut acc = self.field().zero();
        for (wa, ca) in a.terms() {
            for (wb, cb) in b.terms() {
                let x = self.words(wa, wb)?;
                if !x.is_zero() {
                    acc = acc.try_add(&ca.try_mul(cb)?.try_mul(&x)?)?;
                }
            }
        }
        Ok(acc)
    }

    pub fn pair_word_lc(&self, a: &Word, b: &LinComb) -> Result<FieldElement> {
        self.pair(&LinComb::from_word(self.field(), a.clone()), b)
    }

    pub fn pair_lc_word(&self, a: &LinComb, b: &Word) -> Result<FieldElement> {
        self.pair(a, &LinComb::from_word(self.field(), b.clone()))
    }
}

/// `S_{ij}^{mn} t_m^p t_n^r − t_i^u t_j^v S_{uv}^{pr}` (0-based).
pub fn rtt_relator(s: &STable, i: usize, j: usize, p: usize, r: usize) -> Result<LinComb> {
    let n = s.n();
    let f = s.field();
    let mut out = LinComb::zero(f);
    for a in 0..n {
        for b in 0..n {
            out.add_term(Word(vec![(a, p), (b, r)]), s.get(i, j, a, b).clone())?;
            out.add_term(Word(vec![(i, a), (j, b)]), s.get(a, b, p, r).neg())?;
        }
    }
    Ok(out)
}

/// All nonzero relators, keyed by `(i, j, p, r)`.
pub fn all_relators(s: &STable) -> Result<Vec<([usize; 4], LinComb)>> {
    let n = s.n();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for p in 0..n {
                for r in 0..n {
                    let rel = rtt_relator(s, i, j, p, r)?;
                    if !rel.is_zero() {
                        out.push(([i, j, p, r], rel));
                    }
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `⟨⟨relator, w⟩⟩`
    Left,
    /// `⟨⟨w, relator⟩⟩`
    Right,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WellDefinedWitness {
    pub relator: [usize; 4],
    pub word: Word,
    pub side: Side,
    pub value: FieldElement,
}

impl fmt::Display for WellDefinedWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [i, j, p, r] = self.relator.map(|x| x + 1);
        let rel = format!("relator({i},{j},{p},{r})");
        match self.side {
            Side::Left => write!(f, "<<{rel}, {}>> = {}", self.word, self.value),
            Side::Right => write!(f, "<<{}, {rel}>> = {}", self.word, self.value),
        }
    }
}

/// `⟨⟨r, w⟩⟩ = ⟨⟨w, r⟩⟩ = 0` for every relator `r` and every word `w` with
/// `|w| ≤ max_len`.
pub fn well_definedness_check(
    pairing: &Pairing,
    max_len: usize,
) -> Result<Check<WellDefinedWitness>> {
    let relators = all_relators(pairing.s())?;
    let words = Word::all_up_to(pairing.n(), max_len);
    for (idx, rel) in &relators {
        for w in &words {
            for side in [Side::Left, Side::Right] {
                let value = match side {
                    Side::Left => pairing.pair_lc_word(rel, w)?,
                    Side::Right => pairing.pair_word_lc(w, rel)?,
                };
                if !value.is_negligible(1.0) {
                    return Ok(Check::Fail(WellDefinedWitness {
                        relator: *idx,
                        word: w.clone(),
                        side,
                        value,
                    }));
                }
            }
        }
    }
    Ok(Check::Pass)
}

#[derive(Clone, Debug, PartialEq)]
pub struct AxiomWitness {
    /// `a = t_i^j`, `b = t_k^l`, 0-based.
    pub a: (usize, usize),
    pub b: (usize, usize),
    pub difference: LinComb,
    pub expected: LinComb,
}

impl fmt::Display for AxiomWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "a = {}, b = {}: LHS - RHS = {} but c * relator = {}",
            Word(vec![self.a]),
            Word(vec![self.b]),
            self.difference,
            self.expected
        )
    }
}

/// For generators `a = t_i^j`, `b = t_k^l`:
/// `⟨⟨a₍₁₎, b₍₁₎⟩⟩ a₍₂₎ b₍₂₎ − b₍₁₎ a₍₁₎ ⟨⟨a₍₂₎, b₍₂₎⟩⟩` equals
/// `c · relator(k, i, j, l)` in the free algebra.
pub fn commutation_axiom_check(pairing: &Pairing) -> Result<Check<AxiomWitness>> {
    if pairing.c().is_zero() {
        return Err(Error::Unsupported(
            "c = 0: the pairing vanishes on generators and the check is vacuous".into(),
        ));
    }
    let n = pairing.n();
    let f = pairing.field();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let mut diff = LinComb::zero(f);
                    for p in 0..n {
                        for r in 0..n {
                            let lhs = pairing.generators((i, p), (k, r));
                            diff.add_term(Word(vec![(p, j), (r, l)]), lhs)?;
                            let rhs = pairing.generators((p, j), (r, l));
                            diff.add_term(Word(vec![(k, r), (i, p)]), rhs.neg())?;
                        }
                    }
                    let expected = rtt_relator(pairing.s(), k, i, j, l)?.scale(pairing.c())?;
                    if diff
                        .sub(&expected)?
                        .terms()
                        .any(|(_, x)| !x.is_negligible(1.0))
                    {
                        return Ok(Check::Fail(AxiomWitness {
                            a: (i, j),
                            b: (k, l),
                            difference: diff,
                            expected,
                        }));
                    }
                }
            }
        }
    }
    Ok(Check::Pass)
}

/// A vector in the `m`-th tensor power, dense in the lexicographic basis.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorVector {
    n: usize,
    m: usize,
    coeffs: Vec<FieldElement>,
}

impl TensorVector {
    pub fn zero(field: &Field, n: usize, m: usize) -> Self {
        TensorVector {
            n,
            m,
            coeffs: vec![field.zero(); n.pow(m as u32)],
        }
    }

    /// `x_{k1} ⊗ … ⊗ x_{km}`.
    pub fn basis(field: &Field, n: usize, k: &MultiIndex) -> Self {
        let mut v = Self::zero(field, n, k.len());
        v.coeffs[k.flat(n)] = field.one();
        v
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn get(&self, k: &MultiIndex) -> &FieldElement {
        &self.coeffs[k.flat(self.n)]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|x| x.is_zero())
    }
}

impl fmt::Display for TensorVector {
    /// Nonzero components as `(c)*x(1,2)`, joined by ` + `; `0` if none.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("({c})*x{}", MultiIndex::from_flat(self.n, self.m, k)))
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// `a ▷ (x_{k1}⊗…⊗x_{km}) = Σ_M x_M ⟨⟨t_{k1}^{m1}⋯t_{km}^{mm}, a⟩⟩`,
/// extended linearly in `a` and `ξ`.
pub fn act(pairing: &Pairing, a: &LinComb, xi: &TensorVector) -> Result<TensorVector> {
    let n = xi.n;
    let m = xi.m;
    let mut out = TensorVector::zero(pairing.field(), n, m);
    for (kf, xk) in xi.coeffs.iter().enumerate() {
        if xk.is_zero() {
            continue;
        }
        let k = MultiIndex::from_flat(n, m, kf);
        for (mf, slot) in out.coeffs.iter_mut().enumerate() {
            let mm = MultiIndex::from_flat(n, m, mf);
            let w = Word(k.0.iter().copied().zip(mm.0.iter().copied()).collect());
            let x = pairing.pair_word_lc(&w, a)?;
            if !x.is_zero() {
                *slot = slot.try_add(&x.try_mul(xk)?)?;
            }
        }
    }
    Ok(out)
}
