//! The Gram matrix of the canonical pairing on the span of the generators,
//! its block structure, its determinant and the closed form for it, and a
//! seeded numeric scan for nondegeneracy.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::pairing::Pairing;
use crate::scalar::{Complex, Field, FieldElement, Matrix};
use crate::tlhecke::{Branch, TLInstance};
use crate::{Error, Result};

/// `G[(i,j), (k,l)] = ⟨⟨t_i^j, t_k^l⟩⟩_c = c S_{ki}^{jl}`; rows and columns
/// are labelled by `(i, j)` in the order `i·n + j`.
#[derive(Clone, Debug, PartialEq)]
pub struct GramMatrix {
    n: usize,
    matrix: Matrix,
}

impl GramMatrix {
    /// Fills the matrix from any pairing, with no support assumption.
    pub fn from_pairing(pairing: &Pairing) -> Result<Self> {
        let n = pairing.n();
        let matrix = Matrix::from_fn(n * n, n * n, |r, col| {
            pairing.generators((r / n, r % n), (col / n, col % n))
        })?;
        Ok(GramMatrix { n, matrix })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn label(&self, index: usize) -> (usize, usize) {
        (index / self.n, index % self.n)
    }

    pub fn index(&self, (i, j): (usize, usize)) -> usize {
        i * self.n + j
    }

    pub fn entry(&self, row: (usize, usize), col: (usize, usize)) -> &FieldElement {
        self.matrix.get(self.index(row), self.index(col))
    }

    /// Largest entry modulus; `None` for symbolic entries.
    pub fn scale(&self) -> Option<f64> {
        self.matrix
            .entries()
            .iter()
            .map(|x| x.modulus())
            .try_fold(0f64, |acc, m| m.map(|m| acc.max(m)))
    }
}

/// Positions that may be nonzero: `(j = k, i = l)` from the `q δδ` term
/// and `i+k = j+l = n−1` from the `U ⊗ V` term.
pub fn in_pattern(n: usize, (i, j): (usize, usize), (k, l): (usize, usize)) -> bool {
    (j == k && i == l) || (i + k + 1 == n && j + l + 1 == n)
}

fn pattern_violation(g: &GramMatrix) -> Option<((usize, usize), (usize, usize))> {
    let n2 = g.n * g.n;
    (0..n2)
        .flat_map(|r| (0..n2).map(move |c| (r, c)))
        .map(|(r, c)| (g.label(r), g.label(c)))
        .find(|&(a, b)| !in_pattern(g.n, a, b) && !g.entry(a, b).is_zero())
}

/// The Gram matrix of a TL instance; its support is asserted.
pub fn build_gram(inst: &TLInstance, c: &FieldElement) -> Result<GramMatrix> {
    let g = GramMatrix::from_pairing(&Pairing::new(inst, c.clone())?)?;
    if let Some((a, b)) = pattern_violation(&g) {
        unreachable!("pairing of generators nonzero outside its support at {a:?}, {b:?}");
    }
    Ok(g)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockKind {
    /// Row `(i, n−1−i)`, value `q − z_{n−1−i}`.
    Single { i: usize },
    /// Rows `(i,j), (n−1−j, n−1−i)` with `i + j ≠ n−1`; `(i, j)` is the
    /// lexicographically smaller of the two labels that produce it.
    Pair { i: usize, j: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Block {
    pub kind: BlockKind,
    pub rows: Vec<(usize, usize)>,
    pub cols: Vec<(usize, usize)>,
    pub matrix: Matrix,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BlockDecomposition {
    pub blocks: Vec<Block>,
    pub row_order: Vec<usize>,
    pub col_order: Vec<usize>,
}

impl BlockDecomposition {
    /// The reordered matrix, block diagonal with `self.blocks` along the
    /// diagonal.
    pub fn reordered(&self, g: &GramMatrix) -> Matrix {
        g.matrix.permuted(&self.row_order, &self.col_order)
    }

    pub fn singles(&self) -> impl Iterator<Item = &Block> {
        self.blocks
            .iter()
            .filter(|b| matches!(b.kind, BlockKind::Single { .. }))
    }

    pub fn pairs(&self) -> impl Iterator<Item = &Block> {
        self.blocks
            .iter()
            .filter(|b| matches!(b.kind, BlockKind::Pair { .. }))
    }
}

pub fn block_decompose(g: &GramMatrix) -> Result<BlockDecomposition> {
    if let Some((a, b)) = pattern_violation(g) {
        return Err(Error::Shape(format!(
            "entry at row ({},{}), column ({},{}) lies outside the Gram support",
            a.0 + 1,
            a.1 + 1,
            b.0 + 1,
            b.1 + 1
        )));
    }
    let n = g.n;
    let mut blocks = Vec::new();
    for i in 0..n {
        let row = (i, n - 1 - i);
        let col = (n - 1 - i, i);
        blocks.push(Block {
            kind: BlockKind::Single { i },
            rows: vec![row],
            cols: vec![col],
            matrix: Matrix::new(1, 1, vec![g.entry(row, col).clone()])?,
        });
    }
    for i in 0..n {
        for j in 0..n {
            if i + j + 1 == n {
                continue;
            }
            let partner = (n - 1 - j, n - 1 - i);
            if partner < (i, j) {
                continue;
            }
            let rows = vec![(i, j), partner];
            let cols = vec![(j, i), (n - 1 - i, n - 1 - j)];
            let data = rows
                .iter()
                .flat_map(|&r| cols.iter().map(move |&c| (r, c)))
                .map(|(r, c)| g.entry(r, c).clone())
                .collect();
            blocks.push(Block {
                kind: BlockKind::Pair { i, j },
                rows,
                cols,
                matrix: Matrix::new(2, 2, data)?,
            });
        }
    }
    let row_order: Vec<usize> = blocks
        .iter()
        .flat_map(|b| b.rows.iter().map(|&r| g.index(r)))
        .collect();
    let col_order: Vec<usize> = blocks
        .iter()
        .flat_map(|b| b.cols.iter().map(|&c| g.index(c)))
        .collect();
    debug_assert!(is_permutation(&row_order) && is_permutation(&col_order));
    Ok(BlockDecomposition {
        blocks,
        row_order,
        col_order,
    })
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter()
        .all(|&x| x < p.len() && !std::mem::replace(&mut seen[x], true))
}

pub fn gram_det(g: &GramMatrix) -> Result<FieldElement> {
    Ok(g.matrix.det()?)
}

/// `∏_i (q − z_i)`.
pub fn single_product(inst: &TLInstance) -> FieldElement {
    inst.z()
        .iter()
        .fold(inst.field().one(), |acc, z| &acc * &(inst.q() - z))
}

/// `∏_{(i,j) ∈ I(n)} (q² − z_{n−1−i} z_j)` over `I(n) = {i + j ≠ n−1}`.
pub fn pair_product(inst: &TLInstance) -> FieldElement {
    let n = inst.n();
    let z = inst.z();
    let q2 = inst.q() * inst.q();
    let mut acc = inst.field().one();
    for i in 0..n {
        for j in 0..n {
            if i + j + 1 != n {
                acc = &acc * &(&q2 - &(&z[n - 1 - i] * &z[j]));
            }
        }
    }
    acc
}

/// `∏ (q − z_i)² · ∏_{I(n)} (q² − z_{n−1−i} z_j)`.
pub fn closed_form_sq(inst: &TLInstance) -> FieldElement {
    let s = single_product(inst);
    &(&s * &s) * &pair_product(inst)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClosedFormReport {
    pub det: FieldElement,
    pub det_sq: FieldElement,
    pub closed_form_sq: FieldElement,
    /// The product of the 1×1 blocks against `∏ (q − z_i)`.
    pub singles_ok: bool,
    /// The product of the 2×2 block determinants, each block counted once
    /// per label in `I(n)` that produces it, against the pair product.
    pub pairs_ok: bool,
    pub squared_ok: bool,
}

impl ClosedFormReport {
    pub fn passed(&self) -> bool {
        self.singles_ok && self.pairs_ok && self.squared_ok
    }
}

/// Checks `(det G)² = closed_form_sq` and the two block products, with
/// `c = 1`.
pub fn closed_form_check(inst: &TLInstance) -> Result<ClosedFormReport> {
    let g = build_gram(inst, &inst.field().one())?;
    let det = gram_det(&g)?;
    let det_sq = &det * &det;
    let closed = closed_form_sq(inst);
    let dec = block_decompose(&g)?;
    let one = inst.field().one();
    let singles = dec
        .singles()
        .fold(one.clone(), |acc, b| &acc * b.matrix.get(0, 0));
    let mut pairs = one;
    for b in dec.pairs() {
        let d = b.matrix.det()?;
        pairs = &(&pairs * &d) * &d;
    }
    Ok(ClosedFormReport {
        singles_ok: singles.same_value(&single_product(inst)),
        pairs_ok: pairs.same_value(&pair_product(inst)),
        squared_ok: det_sq.same_value(&closed),
        det,
        det_sq,
        closed_form_sq: closed,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorKind {
    /// `z_i = q`.
    ZEqualsQ { i: usize },
    /// `q² = z_{n−1−i} z_j` with `i ≠ j`, `i + j ≠ n−1`.
    PairLocus { i: usize, j: usize },
    /// `q² − q = 0`, the diagonal labels `i = j` of `I(n)`.
    QTrivial,
}

impl fmt::Display for FactorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FactorKind::ZEqualsQ { i } => write!(f, "z_{} = q", i + 1),
            FactorKind::PairLocus { i, j } => write!(f, "q^2 = z_{} z_{}", i + 1, j + 1),
            FactorKind::QTrivial => f.write_str("q in {0, 1}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DegeneracyFactor {
    pub kind: FactorKind,
    pub value: FieldElement,
}

/// The vanishing factors of the closed form, each distinct factor once.
/// Exact backends test for zero; the complex backend tests negligibility
/// against the size of the quantities combined.
pub fn degeneracy_factors(inst: &TLInstance) -> Vec<DegeneracyFactor> {
    let n = inst.n();
    let z = inst.z();
    let q = inst.q();
    let q2 = q * q;
    let mag = |x: &FieldElement| x.modulus().unwrap_or(1.0);
    let mut out = Vec::new();
    let mut push = |kind, value: FieldElement, scale: f64| {
        if value.is_negligible(scale) {
            out.push(DegeneracyFactor { kind, value });
        }
    };
    for (i, zi) in z.iter().enumerate() {
        push(FactorKind::ZEqualsQ { i }, q - zi, mag(q).max(mag(zi)));
    }
    for i in 0..n {
        for j in 0..n {
            let partner = (n - 1 - j, n - 1 - i);
            if i == j || i + j + 1 == n || partner < (i, j) {
                continue;
            }
            let prod = &z[n - 1 - i] * &z[j];
            let scale = mag(&q2).max(mag(&prod));
            push(
                FactorKind::PairLocus { i: n - 1 - i, j },
                &q2 - &prod,
                scale,
            );
        }
    }
    push(FactorKind::QTrivial, &q2 - q, mag(&q2).max(mag(q)));
    out
}

/// Relative threshold for the numeric scan.
pub const DEFAULT_SCAN_TOL: f64 = 1e-8;

/// Default range of `|σ|` for random samples.
pub const DEFAULT_SIGMA_RANGE: (f64, f64) = (1.5, 2.5);

/// Working precision of scan samples.
pub const SCAN_BITS: u32 = 128;

/// How samples are drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Planting {
    /// Generic `z` on the constraint variety.
    #[default]
    Generic,
    /// Samples on a degeneracy locus: `z_1 = q` for `n ≥ 4`; for `n = 3`,
    /// where `z_1 = q` is incompatible with the constraints, the locus
    /// `q² = z_3 z_2` at `σ²` a primitive 5th or 10th root of unity.
    Degenerate,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanConfig {
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    /// Fixed `σ`; random per sample when absent.
    pub sigma: Option<(f64, f64)>,
    /// Range of `|σ|` for random `σ`. Free `z_i` are drawn with modulus in
    /// `|σ|² · [1/2, 2]`, so the pair blocks stay close to `q · id` and the
    /// scale-relative threshold measures distance from degeneracy rather
    /// than spread in entry sizes.
    pub sigma_range: (f64, f64),
    pub planting: Planting,
}

impl ScanConfig {
    pub fn new(n: usize, samples: usize, seed: u64) -> Self {
        ScanConfig {
            n,
            samples,
            seed,
            tol: DEFAULT_SCAN_TOL,
            sigma: None,
            sigma_range: DEFAULT_SIGMA_RANGE,
            planting: Planting::Generic,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampleResult {
    pub index: usize,
    pub sigma: (f64, f64),
    pub branch: Branch,
    pub z: Vec<(f64, f64)>,
    pub absdet: f64,
    pub threshold: f64,
    /// Closed-form factors that vanish at this sample; filled only for
    /// samples below the threshold.
    pub factors: Vec<FactorKind>,
}

impl SampleResult {
    pub fn degenerate(&self) -> bool {
        self.absdet < self.threshold
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanReport {
    pub config: ScanConfig,
    pub min_absdet: f64,
    pub max_absdet: f64,
    pub degenerate_count: usize,
    /// The sub-threshold samples, in index order.
    pub flagged: Vec<SampleResult>,
}

fn random_unit(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> (f64, f64) {
    let r = rng.gen_range(lo..hi);
    let phi = rng.gen_range(0.0..std::f64::consts::TAU);
    (r * phi.cos(), r * phi.sin())
}

fn cx(field: &Field, (re, im): (f64, f64)) -> FieldElement {
    let bits = match field {
        Field::Complex { bits, .. } => *bits,
        _ => SCAN_BITS,
    };
    FieldElement::Complex(Complex::from_f64(re, im, bits))
}

/// A primitive `m`-th root of unity `e^{2πik/m}` at full precision, by
/// Newton refinement of the double-precision value.
fn root_of_unity(k: u32, m: u32, bits: u32) -> Complex {
    let phi = std::f64::consts::TAU * f64::from(k) / f64::from(m);
    let mut w = Complex::from_f64(phi.cos(), phi.sin(), bits);
    let one = Complex::one(bits);
    let mf = Complex::from_f64(f64::from(m), 0.0, bits);
    let steps = (bits as f64 / 40.0).log2().ceil().max(1.0) as usize + 1;
    for _ in 0..steps {
        let mut p = one.clone();
        for _ in 0..m - 1 {
            p = p.mul(&w);
        }
        let f = p.mul(&w).sub(&one);
        w = w.sub(&f.div(&mf.mul(&p)));
    }
    w
}

/// Roots of `x² − t x + q`.
fn pair_roots(t: &FieldElement, q: &FieldElement) -> Result<[FieldElement; 2]> {
    let f = match t {
        FieldElement::Complex(c) => c.bits(),
        _ => return Err(Error::Unsupported("pair roots need complex input".into())),
    };
    let four = FieldElement::Complex(Complex::from_f64(4.0, 0.0, f));
    let half = FieldElement::Complex(Complex::from_f64(0.5, 0.0, f));
    let disc = &(t * t) - &(&four * q);
    let root = match &disc {
        FieldElement::Complex(c) => FieldElement::Complex(c.sqrt()),
        _ => unreachable!("complex input"),
    };
    Ok([&(t + &root) * &half, &(t - &root) * &half])
}

/// `z` from the free values `z_0 … z_{h−2}` (`h = ⌊n/2⌋`), their
/// partners `q / z_i`, the middle value `ε σ²`, and the last pair solved
/// from the trace.
fn complete_z(
    field: &Field,
    n: usize,
    branch: Branch,
    free: &[FieldElement],
    root: usize,
) -> Result<Vec<FieldElement>> {
    let q = field.q()?;
    let half = n / 2;
    debug_assert_eq!(free.len() + 1, half);
    let mut z = vec![field.zero(); n];
    for (i, zi) in free.iter().enumerate() {
        z[i] = zi.clone();
        z[n - 1 - i] = q.try_div(zi)?;
    }
    let mut used = field.zero();
    if n % 2 == 1 {
        z[half] = &field.from_int(branch.sign()) * &field.sigma_pow(2)?;
        used = z[half].clone();
    }
    for i in 0..free.len() {
        used = &(&used + &z[i]) + &z[n - 1 - i];
    }
    let t = &(&q + &field.one()) - &used;
    let roots = pair_roots(&t, &q)?;
    z[half - 1] = roots[root].clone();
    z[n - half] = roots[1 - root].clone();
    Ok(z)
}

/// The balanced gauge `u_i = v^i = (z_i / (1+q))^{1/2}`. `det G` depends
/// on `z` alone, but the matrix scale does not; this gauge keeps the
/// off-diagonal entries `(1+q) u_a v^b` at the size of `(z_a z_b)^{1/2}`.
fn instance_from_z(field: Field, z: Vec<FieldElement>, branch: Branch) -> Result<TLInstance> {
    let one_plus_q = &field.q()? + &field.one();
    let v = z
        .iter()
        .map(|zi| match zi.try_div(&one_plus_q)? {
            FieldElement::Complex(c) => Ok(FieldElement::Complex(c.sqrt())),
            _ => Err(Error::Unsupported("scan samples are complex".into())),
        })
        .collect::<Result<Vec<_>>>()?;
    let u = z
        .iter()
        .zip(&v)
        .map(|(zi, vi)| zi.try_div(&(&one_plus_q * vi)))
        .collect::<Result<Vec<_>, _>>()?;
    TLInstance::new(field, u, v, branch)
}

fn sample_instance(cfg: &ScanConfig, rng: &mut ChaCha8Rng) -> Result<TLInstance> {
    let n = cfg.n;
    let branch = if rng.gen::<bool>() {
        Branch::Plus
    } else {
        Branch::Minus
    };
    if cfg.planting == Planting::Degenerate && n == 3 {
        let k = rng.gen_range(1..5u32);
        let w5 = root_of_unity(k, 5, SCAN_BITS);
        let w = match branch {
            Branch::Minus => w5,
            Branch::Plus => w5.neg(),
        };
        let mut sigma = w.sqrt();
        if rng.gen::<bool>() {
            sigma = sigma.neg();
        }
        let field = Field::complex(SCAN_BITS, sigma);
        let e = field.from_int(branch.sign());
        let w = FieldElement::Complex(w);
        let z = vec![&e * &w.inv()?, &e * &w, &e * &(&(&w * &w) * &w)];
        return instance_from_z(field, z, branch);
    }
    let (lo, hi) = cfg.sigma_range;
    let sigma = cfg.sigma.unwrap_or_else(|| random_unit(rng, lo, hi));
    let field = Field::complex(SCAN_BITS, Complex::from_f64(sigma.0, sigma.1, SCAN_BITS));
    let half = n / 2;
    let root_q = sigma.0.hypot(sigma.1).powi(2);
    let mut free: Vec<FieldElement> = (0..half - 1)
        .map(|_| cx(&field, random_unit(rng, 0.5 * root_q, 2.0 * root_q)))
        .collect();
    if cfg.planting == Planting::Degenerate {
        free[0] = field.q()?;
    }
    let root = usize::from(rng.gen::<bool>());
    let z = complete_z(&field, n, branch, &free, root)?;
    instance_from_z(field, z, branch)
}

fn to_pair(x: &FieldElement) -> (f64, f64) {
    x.as_complex()
        .map(|c| c.to_f64_pair())
        .unwrap_or((f64::NAN, f64::NAN))
}

/// `|det G|` for `c = 1` and the flag threshold `tol · scale^{n²}`.
pub fn numeric_det(inst: &TLInstance, tol: f64) -> Result<(f64, f64)> {
    let g = build_gram(inst, &inst.field().one())?;
    let det = gram_det(&g)?;
    let absdet = det
        .modulus()
        .ok_or_else(|| Error::Unsupported("numeric determinant needs a numeric field".into()))?;
    let scale = g.scale().unwrap_or(1.0);
    let n2 = (inst.n() * inst.n()) as i32;
    Ok((absdet, tol * scale.powi(n2)))
}

fn evaluate(inst: &TLInstance, index: usize, tol: f64) -> Result<SampleResult> {
    let (absdet, threshold) = numeric_det(inst, tol)?;
    let mut res = SampleResult {
        index,
        sigma: to_pair(&inst.field().sigma()?),
        branch: inst.branch(),
        z: inst.z().iter().map(to_pair).collect(),
        absdet,
        threshold,
        factors: Vec::new(),
    };
    if res.degenerate() {
        res.factors = degeneracy_factors(inst)
            .into_iter()
            .map(|f| f.kind)
            .collect();
    }
    Ok(res)
}

fn refuse_n2(n: usize) -> Result<()> {
    if n == 2 {
        return Err(Error::Unsupported(
            "n = 2 is always degenerate: z is {1, q} up to order, so a factor q - z_i vanishes"
                .into(),
        ));
    }
    if n < 2 {
        return Err(Error::Invalid(format!("n = {n}, need n >= 3")));
    }
    Ok(())
}

fn sample_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Draws `cfg.samples` complex instances (sample `k` from stream `k` of
/// the seeded generator), and reports `|det G|` against the scale-relative
/// threshold. Deterministic for a fixed configuration.
pub fn scan(cfg: &ScanConfig) -> Result<ScanReport> {
    refuse_n2(cfg.n)?;
    let results = (0..cfg.samples)
        .into_par_iter()
        .map(|k| {
            let mut rng = sample_rng(cfg.seed, k);
            let inst = sample_instance(cfg, &mut rng)?;
            evaluate(&inst, k, cfg.tol)
        })
        .collect::<Result<Vec<_>>>()?;
    let min_absdet = results
        .iter()
        .map(|r| r.absdet)
        .fold(f64::INFINITY, f64::min);
    let max_absdet = results.iter().map(|r| r.absdet).fold(0.0, f64::max);
    let flagged: Vec<SampleResult> = results.into_iter().filter(|r| r.degenerate()).collect();
    Ok(ScanReport {
        config: cfg.clone(),
        min_absdet,
        max_absdet,
        degenerate_count: flagged.len(),
        flagged,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct RootResult {
    pub sample: usize,
    pub branch: Branch,
    /// Which root of the pair quadratic was taken as `z_1`.
    pub root: usize,
    pub result: SampleResult,
}

/// For `n = 3`: at each of `samples` random `σ` with `|σ|` in
/// `sigma_range`, all four values of `z_1` (two roots of the pair
/// quadratic, both branches).
pub fn n3_root_check(
    samples: usize,
    seed: u64,
    tol: f64,
    sigma_range: (f64, f64),
) -> Result<Vec<RootResult>> {
    (0..samples)
        .into_par_iter()
        .map(|k| {
            let mut rng = sample_rng(seed, k);
            let sigma = random_unit(&mut rng, sigma_range.0, sigma_range.1);
            let field = Field::complex(SCAN_BITS, Complex::from_f64(sigma.0, sigma.1, SCAN_BITS));
            let mut out = Vec::with_capacity(4);
            for branch in Branch::both() {
                for root in 0..2 {
                    let z = complete_z(&field, 3, branch, &[], root)?;
                    let inst = instance_from_z(field.clone(), z, branch)?;
                    out.push(RootResult {
                        sample: k,
                        branch,
                        root,
                        result: evaluate(&inst, k, tol)?,
                    });
                }
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()
        .map(|v| v.into_iter().flatten().collect())
}
