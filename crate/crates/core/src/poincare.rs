//! Graded dimensions of the quadratic algebras `Λ₊ = T(V)/(Im(q − S))` and
//! `Λ₋ = T(V)/(Im(1 + S))`, the product identity of their Poincaré series,
//! and the integer bookkeeping for the dimensions `d_m` of the symmetric
//! powers.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::scalar::{FieldElement, SparseEchelon};
use crate::tensorop::{hecke_check, TensorOperator};
use crate::{Check, Error, Result};

/// Largest `n^l` accepted by [`lambda_dims`].
pub const MAX_TENSOR_DIM: usize = 1 << 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    /// `Λ₊`, relations `Im(q id − S)`.
    Plus,
    /// `Λ₋`, relations `Im(id + S)`.
    Minus,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "plus",
            Sign::Minus => "minus",
        })
    }
}

/// `dims_plus[l] = dim Λ₊^l`, `dims_minus[l] = dim Λ₋^l` for `l ≤ lmax`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimTable {
    pub n: usize,
    pub lmax: usize,
    pub dims_plus: Vec<u128>,
    pub dims_minus: Vec<u128>,
}

impl DimTable {
    /// Both series from one operator.
    pub fn compute(s: &TensorOperator, q: &FieldElement, lmax: usize) -> Result<DimTable> {
        Ok(DimTable {
            n: s.n(),
            lmax,
            dims_plus: lambda_dims(s, q, Sign::Plus, lmax)?,
            dims_minus: lambda_dims(s, q, Sign::Minus, lmax)?,
        })
    }
}

fn relation_operator(s: &TensorOperator, q: &FieldElement, sign: Sign) -> Result<TensorOperator> {
    let id = TensorOperator::identity(s.field(), s.n(), 2);
    match sign {
        Sign::Plus => id.scale(q)?.sub(s),
        Sign::Minus => id.add(s),
    }
}

fn digit_sum(n: usize, mut flat: usize, len: usize) -> usize {
    let mut acc = 0;
    for _ in 0..len {
        acc += flat % n;
        flat /= n;
    }
    acc
}

type SparseVec = BTreeMap<usize, FieldElement>;

/// A basis of `Im K ⊂ V⊗V`, and whether `K` preserves the index sum.
fn image_basis(k: &TensorOperator) -> Result<(Vec<SparseVec>, bool)> {
    let n = k.n();
    let mut columns: BTreeMap<usize, Vec<SparseVec>> = BTreeMap::new();
    let mut graded = true;
    for input in 0..n * n {
        let col: SparseVec = k.row(input).map(|(o, x)| (o, x.clone())).collect();
        let w = digit_sum(n, input, 2);
        graded &= col.keys().all(|&o| digit_sum(n, o, 2) == w);
        columns.entry(w).or_default().push(col);
    }
    if !graded {
        let all: Vec<SparseVec> = columns.into_values().flatten().collect();
        columns = BTreeMap::from([(0, all)]);
    }
    let mut basis = Vec::new();
    for cols in columns.into_values() {
        let mut ech = SparseEchelon::new();
        for c in cols {
            if ech.insert(c.clone())? {
                basis.push(c);
            }
        }
    }
    Ok((basis, graded))
}

/// `dim_l = n^l − rank Σ_i Im(1^{⊗i} ⊗ K ⊗ 1^{⊗(l−2−i)})` with `K` the
/// relation operator for `sign`, for `l = 0 ..= lmax`. Ranks are exact
/// over the field of `S`; when `K` preserves the index sum (as every TL
/// operator does) the rank is computed one weight space at a time.
pub fn lambda_dims(
    s: &TensorOperator,
    q: &FieldElement,
    sign: Sign,
    lmax: usize,
) -> Result<Vec<u128>> {
    if s.arity() != 2 {
        return Err(Error::Shape(format!("S has arity {}, need 2", s.arity())));
    }
    // rounding noise would read as extra rank
    if !s.field().is_exact() {
        return Err(Error::Unsupported(format!(
            "dimensions need exact ranks; {} is not exact",
            s.field()
        )));
    }
    if let Check::Fail(w) = hecke_check(s, q)? {
        return Err(Error::Invalid(format!("S is not a Hecke symmetry: {w}")));
    }
    let n = s.n();
    let too_big = || {
        Error::SizeGuard(format!(
            "n^l exceeds {MAX_TENSOR_DIM} for n = {n}, l = {lmax}"
        ))
    };
    let top = u32::try_from(lmax)
        .ok()
        .and_then(|l| n.checked_pow(l))
        .ok_or_else(too_big)?;
    if top > MAX_TENSOR_DIM {
        return Err(too_big());
    }
    let k = relation_operator(s, q, sign)?;
    let (basis, graded) = image_basis(&k)?;
    (0..=lmax)
        .into_par_iter()
        .map(|l| {
            let total = n.pow(l as u32);
            if l < 2 {
                return Ok(total as u128);
            }
            let rank = relation_rank(n, l, &basis, graded)?;
            Ok((total - rank) as u128)
        })
        .collect()
}

fn relation_rank(n: usize, l: usize, basis: &[SparseVec], graded: bool) -> Result<usize> {
    let mut blocks: BTreeMap<usize, Vec<SparseVec>> = BTreeMap::new();
    for i in 0..=l - 2 {
        let suffix_len = l - 2 - i;
        let suffix_dim = n.pow(suffix_len as u32);
        for prefix in 0..n.pow(i as u32) {
            for suffix in 0..suffix_dim {
                let outer = digit_sum(n, prefix, i) + digit_sum(n, suffix, suffix_len);
                for w in basis {
                    let v: SparseVec = w
                        .iter()
                        .map(|(&mid, x)| ((prefix * n * n + mid) * suffix_dim + suffix, x.clone()))
                        .collect();
                    let weight = match w.keys().next() {
                        Some(&m) if graded => outer + digit_sum(n, m, 2),
                        _ => 0,
                    };
                    blocks.entry(weight).or_default().push(v);
                }
            }
        }
    }
    let ranks = blocks
        .into_par_iter()
        .map(|(_, vs)| {
            let mut ech = SparseEchelon::new();
            for v in vs {
                ech.insert(v)?;
            }
            Ok(ech.rank())
        })
        .collect::<Result<Vec<usize>>>()?;
    Ok(ranks.into_iter().sum())
}

/// `Σ_k (−1)^k dims_plus[l−k] dims_minus[k]` is `1` at `l = 0` and `0`
/// for `1 ≤ l ≤ lmax`. Fails with the first offending `l` and its value.
pub fn series_product_check(table: &DimTable) -> Check<(usize, i128)> {
    for l in 0..=table.lmax {
        let mut acc: i128 = 0;
        for k in 0..=l {
            let term = table.dims_plus[l - k] as i128 * table.dims_minus[k] as i128;
            acc += if k % 2 == 0 { term } else { -term };
        }
        let want = i128::from(l == 0);
        if acc != want {
            return Check::Fail((l, acc));
        }
    }
    Check::Pass
}

/// `d_m` from `d_m = n d_{m−1} − d_{m−2}`, `d_0 = 1`, `d_1 = n`. `None` on
/// overflow.
pub fn sym_dim(n: u64, m: u32) -> Option<u128> {
    sym_dims(n, m).map(|d| d[m as usize])
}

/// `d_0 ..= d_m`.
pub fn sym_dims(n: u64, m: u32) -> Option<Vec<u128>> {
    let n = u128::from(n);
    let mut d = vec![1u128, n];
    while d.len() <= m as usize {
        let k = d.len();
        d.push(n.checked_mul(d[k - 1])?.checked_sub(d[k - 2])?);
    }
    d.truncate(m as usize + 1);
    Some(d)
}

/// How `k` runs from `|i − j|` to `i + j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Step {
    /// `k ≡ i + j (mod 2)`, the classical rule.
    #[default]
    Parity,
    /// Every integer in the range.
    Every,
}

impl Step {
    fn stride(self) -> usize {
        match self {
            Step::Parity => 2,
            Step::Every => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CgWitness {
    pub i: u32,
    pub j: u32,
    pub product: u128,
    pub sum: u128,
}

impl fmt::Display for CgWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "d_{} d_{} = {} but the sum over k is {}",
            self.i, self.j, self.product, self.sum
        )
    }
}

/// `d_i d_j = Σ_{|i−j| ≤ k ≤ i+j} d_k` for all `i, j ≤ imax`, with `k`
/// stepping as `step` says.
pub fn clebsch_gordan_dim_check(n: u64, imax: u32, step: Step) -> Result<Check<CgWitness>> {
    let d = sym_dims(n, 2 * imax)
        .ok_or_else(|| Error::SizeGuard(format!("d_{} overflows for n = {n}", 2 * imax)))?;
    for i in 0..=imax {
        for j in 0..=imax {
            let lo = i.abs_diff(j) as usize;
            let hi = (i + j) as usize;
            let sum = (lo..=hi)
                .step_by(step.stride())
                .try_fold(0u128, |acc, k| acc.checked_add(d[k]));
            let product = d[i as usize].checked_mul(d[j as usize]);
            let (Some(sum), Some(product)) = (sum, product) else {
                return Err(Error::SizeGuard(format!("overflow at i = {i}, j = {j}")));
            };
            if sum != product {
                return Ok(Check::Fail(CgWitness { i, j, product, sum }));
            }
        }
    }
    Ok(Check::Pass)
}
