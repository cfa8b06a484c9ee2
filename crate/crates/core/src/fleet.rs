//! Standard instances used by the test suites and the CLI examples.

use num_rational::BigRational;

use crate::scalar::{Field, FieldElement, RatFunc};
use crate::tlhecke::{solve_pair_quadratic, Branch, TLInstance};
use crate::Result;

#[derive(Clone, Debug)]
pub struct Named {
    pub name: String,
    pub instance: TLInstance,
}

fn rat(k: i64) -> BigRational {
    BigRational::from_integer(k.into())
}

fn q_rf() -> RatFunc {
    RatFunc::sigma_pow(4)
}

fn one_plus_q() -> RatFunc {
    q_rf().add(&RatFunc::one())
}

/// n = 2, `v = (1, 1)`, `u = (1/(1+q), q/(1+q))`, `z = (1, q)`. `M` is not
/// scalar.
pub fn n2_plain(branch: Branch) -> Result<TLInstance> {
    let f = Field::RatFunc;
    let d = one_plus_q().inv();
    let u = vec![f.from_ratfunc(d.clone())?, f.from_ratfunc(q_rf().mul(&d))?];
    TLInstance::new(f.clone(), u, vec![f.one(), f.one()], branch)
}

/// n = 2, `z = (1, q)` with scalar `M`. The `+` branch needs `θ² = −1`.
pub fn n2_scalar(branch: Branch) -> Result<TLInstance> {
    let f = match branch {
        Branch::Minus => Field::RatFunc,
        Branch::Plus => Field::quad_ext(RatFunc::from_int(-1))?,
    };
    let z = vec![f.one(), f.q()?];
    TLInstance::from_z(f, z, branch)
}

/// n = 3 with `z_2 = ε σ²` and `z_1`, `z_3 = q / z_1` the roots of the
/// remaining quadratic.
pub fn n3(branch: Branch) -> Result<TLInstance> {
    let mid = RatFunc::sigma_pow(2).scale(&rat(branch.sign()));
    let roots = solve_pair_quadratic(&one_plus_q().sub(&mid))?;
    let f = roots.field.clone();
    let [a, b] = roots.roots;
    TLInstance::from_z(f.clone(), vec![a, f.from_ratfunc(mid)?, b], branch)
}

/// `z_1 = 8σ`, `z_n = q/z_1`, an optional middle `ε σ²`, and the last pair
/// solved from the trace. `z_1 = q` exactly at `σ = 2`.
fn eight_sigma(n: usize, branch: Branch) -> Result<TLInstance> {
    assert!(n == 4 || n == 5);
    let z1 = RatFunc::sigma_pow(1).scale(&rat(8));
    let zn = q_rf().div(&z1);
    let mut t = one_plus_q().sub(&z1).sub(&zn);
    let mid = RatFunc::sigma_pow(2).scale(&rat(branch.sign()));
    if n == 5 {
        t = t.sub(&mid);
    }
    let roots = solve_pair_quadratic(&t)?;
    let f = roots.field.clone();
    let [a, b] = roots.roots;
    let mut z = vec![f.from_ratfunc(z1)?, a];
    if n == 5 {
        z.push(f.from_ratfunc(mid)?);
    }
    z.push(b);
    z.push(f.from_ratfunc(zn)?);
    TLInstance::from_z(f, z, branch)
}

pub fn n4_generic(branch: Branch) -> Result<TLInstance> {
    eight_sigma(4, branch)
}

pub fn n5_generic(branch: Branch) -> Result<TLInstance> {
    eight_sigma(5, branch)
}

/// n = 4 over `θ² = −1`: `z = (1, θσ², −θσ², q)`. Degenerate (`z_4 = q`)
/// but `c` is representable on both branches.
pub fn n4_imaginary(branch: Branch) -> Result<TLInstance> {
    let f = Field::quad_ext(RatFunc::from_int(-1))?;
    let i_s2 = &f.theta()? * &f.sigma_pow(2)?;
    let z: Vec<FieldElement> = vec![f.one(), i_s2.clone(), -i_s2, f.q()?];
    TLInstance::from_z(f, z, branch)
}

/// Every standard instance, both branches.
pub fn fleet() -> Result<Vec<Named>> {
    type Ctor = fn(Branch) -> Result<TLInstance>;
    let ctors: [(&str, Ctor); 6] = [
        ("n2-plain", n2_plain),
        ("n2-scalar", n2_scalar),
        ("n3", n3),
        ("n4-generic", n4_generic),
        ("n4-imaginary", n4_imaginary),
        ("n5-generic", n5_generic),
    ];
    let mut out = Vec::new();
    for (name, ctor) in ctors {
        for b in Branch::both() {
            out.push(Named {
                name: format!("{name}{b}"),
                instance: ctor(b)?,
            });
        }
    }
    Ok(out)
}
