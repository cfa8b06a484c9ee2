//! The quantum determinant at rank 2, the operators `M` and `N`, the
//! normalization `c`, and the descent of the pairing to the quotient by
//! `det t = 1`.

use std::collections::BTreeMap;
use std::fmt;

use crate::pairing::{all_relators, LinComb, Pairing, STable, Word};
use crate::scalar::{FieldElement, Matrix, SparseEchelon};
use crate::tlhecke::TLInstance;
use crate::{Check, Error, Result};

/// `det t = u_{ij} t_k^i t_l^j v^{kl}`; `n²` terms for skew-diagonal
/// `U`, `V`.
pub fn build_det(inst: &TLInstance) -> LinComb {
    let n = inst.n();
    let f = inst.field();
    let mut det = LinComb::zero(f);
    for i in 0..n {
        for k in 0..n {
            let w = Word(vec![(k, i), (n - 1 - k, n - 1 - i)]);
            det.add_term(w, &inst.u()[i] * &inst.v()[k])
                .expect("coefficients from the instance field");
        }
    }
    det
}

/// `M_k^l = u_{ik} v^{li}` and `N_k^l = u_{ki} v^{il}` (row `k`, column
/// `l`).
pub fn mn_matrices(inst: &TLInstance) -> Result<(Matrix, Matrix)> {
    let n = inst.n();
    let f = inst.field();
    let entry = |k: usize, l: usize, left: bool| {
        (0..n).fold(f.zero(), |acc, i| {
            let t = if left {
                &inst.u_tensor(i, k) * &inst.v_tensor(l, i)
            } else {
                &inst.u_tensor(k, i) * &inst.v_tensor(i, l)
            };
            &acc + &t
        })
    };
    let m = Matrix::from_fn(n, n, |k, l| entry(k, l, true))?;
    let nn = Matrix::from_fn(n, n, |k, l| entry(k, l, false))?;
    Ok((m, nn))
}

/// `(VU)ᵗ` and `UV` from the dense tensors, a second route to `M`, `N`.
pub fn mn_products(inst: &TLInstance) -> Result<(Matrix, Matrix)> {
    let n = inst.n();
    let u = Matrix::from_fn(n, n, |i, j| inst.u_tensor(i, j))?;
    let v = Matrix::from_fn(n, n, |i, j| inst.v_tensor(i, j))?;
    Ok((v.mul(&u)?.transpose(), u.mul(&v)?))
}

/// `MN = q (1+q)⁻² id`.
pub fn mn_identity_check(inst: &TLInstance) -> Result<bool> {
    let (m, n) = mn_matrices(inst)?;
    let prod = m.mul(&n)?;
    Ok(prod
        .is_scalar_matrix()
        .is_some_and(|x| x.same_value(inst.lambda())))
}

/// Scalar values of `M` and `N`, when both are scalar.
#[derive(Clone, Debug, PartialEq)]
pub struct Centrality {
    pub m: FieldElement,
    pub n: FieldElement,
}

impl Centrality {
    /// `M = N` and `m² = q (1+q)⁻²`.
    pub fn consistent(&self, inst: &TLInstance) -> bool {
        self.m.same_value(&self.n) && (&self.m * &self.m).same_value(inst.lambda())
    }
}

pub fn centrality_criterion(inst: &TLInstance) -> Result<Option<Centrality>> {
    let (m, n) = mn_matrices(inst)?;
    Ok(match (m.is_scalar_matrix(), n.is_scalar_matrix()) {
        (Some(m), Some(n)) => Some(Centrality { m, n }),
        _ => None,
    })
}

/// Which square root of `c²` to return.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CSign {
    /// The field's principal root (`σ⁻³` or `θ σ⁻³`).
    #[default]
    Principal,
    Opposite,
}

/// `c² = −q⁻¹ (1+q)⁻¹ m⁻¹` with `m` the scalar value of `M`.
pub fn c_squared(inst: &TLInstance) -> Result<FieldElement> {
    let cen = centrality_criterion(inst)?.ok_or(Error::NotCentral)?;
    let denom = &(&(inst.q() * &inst.one_plus_q()) * &cen.m) * &inst.field().from_int(-1);
    Ok(denom.inv()?)
}

pub fn compute_c(inst: &TLInstance, sign: CSign) -> Result<FieldElement> {
    let c2 = c_squared(inst)?;
    let c = inst
        .field()
        .sqrt(&c2)
        .ok_or_else(|| Error::CNotRepresentable {
            field: inst.field().to_string(),
            hint: format!(
                "c^2 = {c2} has no square root here; use a quadratic extension with delta = -1"
            ),
        })?;
    Ok(match sign {
        CSign::Principal => c,
        CSign::Opposite => c.neg(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DetPairingSide {
    /// `⟨⟨t_k^l, det t⟩⟩` against `M`
    GeneratorLeft,
    /// `⟨⟨det t, t_k^l⟩⟩` against `N`
    DetLeft,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DetPairingWitness {
    pub side: DetPairingSide,
    pub k: usize,
    pub l: usize,
    pub pairing: FieldElement,
    pub expected: FieldElement,
}

impl fmt::Display for DetPairingWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = Word::generator(self.k, self.l);
        match self.side {
            DetPairingSide::GeneratorLeft => write!(f, "<<{g}, det t>> = {}", self.pairing)?,
            DetPairingSide::DetLeft => write!(f, "<<det t, {g}>> = {}", self.pairing)?,
        }
        write!(
            f,
            " but -c^2 q (1+q) times the matrix entry is {}",
            self.expected
        )
    }
}

/// `⟨⟨t_k^l, det t⟩⟩ = −c² q (1+q) M_k^l` and
/// `⟨⟨det t, t_k^l⟩⟩ = −c² q (1+q) N_k^l`, entrywise.
pub fn det_pairing_check(inst: &TLInstance, pairing: &Pairing) -> Result<Check<DetPairingWitness>> {
    let n = inst.n();
    let det = build_det(inst);
    let (m, nn) = mn_matrices(inst)?;
    let c = pairing.c();
    let factor = &(&(&(c * c) * inst.q()) * &inst.one_plus_q()) * &inst.field().from_int(-1);
    for k in 0..n {
        for l in 0..n {
            let g = Word::generator(k, l);
            for (side, value, mat) in [
                (
                    DetPairingSide::GeneratorLeft,
                    pairing.pair_word_lc(&g, &det)?,
                    &m,
                ),
                (
                    DetPairingSide::DetLeft,
                    pairing.pair_lc_word(&det, &g)?,
                    &nn,
                ),
            ] {
                let expected = &factor * mat.get(k, l);
                if !value.same_value(&expected) {
                    return Ok(Check::Fail(DetPairingWitness {
                        side,
                        k,
                        l,
                        pairing: value,
                        expected,
                    }));
                }
            }
        }
    }
    Ok(Check::Pass)
}

#[derive(Clone, Debug, PartialEq)]
pub struct DetCounitWitness {
    pub word: Word,
    /// `true` when `det t` is the left argument.
    pub det_left: bool,
    pub value: FieldElement,
    pub counit: FieldElement,
}

impl fmt::Display for DetCounitWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.det_left {
            write!(f, "<<det t, {}>> = {}", self.word, self.value)?;
        } else {
            write!(f, "<<{}, det t>> = {}", self.word, self.value)?;
        }
        write!(f, " but the counit is {}", self.counit)
    }
}

/// `⟨⟨det t, a⟩⟩ = ε(a) = ⟨⟨a, det t⟩⟩` for every word with `|a| ≤ max_len`.
pub fn det_counit_check(
    inst: &TLInstance,
    pairing: &Pairing,
    max_len: usize,
) -> Result<Check<DetCounitWitness>> {
    let det = build_det(inst);
    let f = inst.field();
    for w in Word::all_up_to(inst.n(), max_len) {
        let counit = if w.counit() { f.one() } else { f.zero() };
        for det_left in [true, false] {
            let value = if det_left {
                pairing.pair_lc_word(&det, &w)?
            } else {
                pairing.pair_word_lc(&w, &det)?
            };
            if !value.same_value(&counit) {
                return Ok(Check::Fail(DetCounitWitness {
                    word: w,
                    det_left,
                    value,
                    counit,
                }));
            }
        }
    }
    Ok(Check::Pass)
}

/// Largest `n` accepted by [`ideal_membership_check`].
pub const IDEAL_MEMBERSHIP_MAX_N: usize = 4;

/// `(Σ lower indices, Σ upper indices)` of a word. Relators and `det t`
/// are homogeneous for this bidegree.
fn bidegree(w: &Word) -> (usize, usize) {
    w.0.iter().fold((0, 0), |(a, b), &(i, j)| (a + i, b + j))
}

fn flat3(n: usize, w: &Word) -> usize {
    w.0.iter().fold(0, |acc, &(i, j)| acc * n * n + i * n + j)
}

/// For every generator `g`, decides whether `det t · g − g · det t` lies
/// in the span of `{r g′, g′ r}` (relators `r`, generators `g′`) by exact
/// rank computation in degree 3. Fails with the first generator whose
/// commutator is outside the span.
pub fn ideal_membership_check(inst: &TLInstance) -> Result<Check<Word>> {
    let n = inst.n();
    if n > IDEAL_MEMBERSHIP_MAX_N {
        return Err(Error::SizeGuard(format!(
            "ideal membership works in degree 3 over n^6 words; n = {n} exceeds {IDEAL_MEMBERSHIP_MAX_N}"
        )));
    }
    let f = inst.field();
    let det = build_det(inst);
    let relators = all_relators(&STable::from_operator(&inst.build_s())?)?;
    let gens: Vec<LinComb> = (0..n * n)
        .map(|g| LinComb::from_word(f, Word::generator(g / n, g % n)))
        .collect();
    let to_vec = |x: &LinComb| -> BTreeMap<usize, FieldElement> {
        x.terms().map(|(w, c)| (flat3(n, w), c.clone())).collect()
    };
    let lc_bidegree = |x: &LinComb| x.terms().next().map(|(w, _)| bidegree(w));
    let mut blocks: BTreeMap<(usize, usize), SparseEchelon> = BTreeMap::new();
    for g in &gens {
        let target = det.mul(g)?.sub(&g.mul(&det)?)?;
        let Some(deg) = lc_bidegree(&target) else {
            continue;
        };
        if let std::collections::btree_map::Entry::Vacant(slot) = blocks.entry(deg) {
            let mut ech = SparseEchelon::new();
            for (_, r) in &relators {
                for h in &gens {
                    for prod in [r.mul(h)?, h.mul(r)?] {
                        if lc_bidegree(&prod) == Some(deg) {
                            ech.insert(to_vec(&prod))?;
                        }
                    }
                }
            }
            slot.insert(ech);
        }
        if !blocks[&deg].contains(to_vec(&target))? {
            let (w, _) = g.terms().next().expect("generator");
            return Ok(Check::Fail(w.clone()));
        }
    }
    Ok(Check::Pass)
}
