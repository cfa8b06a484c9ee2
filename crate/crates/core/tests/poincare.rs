use hecke_core::fleet;
use hecke_core::poincare::{
    clebsch_gordan_dim_check, lambda_dims, series_product_check, sym_dim, sym_dims, CgWitness,
    DimTable, Sign, Step,
};
use hecke_core::scalar::Field;
use hecke_core::tensorop::TensorOperator;
use hecke_core::tlhecke::Branch;
use hecke_core::{Check, Error};
use proptest::prelude::*;

/// Brute-force oracle: the Λ dimension from a dense rank of the stacked
/// lifted relation operators, no grading or image basis.
fn dense_dim(
    s: &TensorOperator,
    q: &hecke_core::scalar::FieldElement,
    sign: Sign,
    l: usize,
) -> u128 {
    let n = s.n();
    let id = TensorOperator::identity(s.field(), n, 2);
    let k = match sign {
        Sign::Plus => id.scale(q).unwrap().sub(s).unwrap(),
        Sign::Minus => id.add(s).unwrap(),
    };
    let dim = n.pow(l as u32);
    let mut rows = Vec::new();
    for i in 0..=l - 2 {
        let m = k.lift(i, l).unwrap().as_matrix();
        for r in 0..dim {
            rows.push((0..dim).map(|c| m.get(c, r).clone()).collect::<Vec<_>>());
        }
    }
    let count = rows.len();
    let m =
        hecke_core::scalar::Matrix::new(count, dim, rows.into_iter().flatten().collect()).unwrap();
    (dim - m.rank()) as u128
}

#[test]
fn n2_minus_dims() {
    let inst = fleet::n2_plain(Branch::Minus).unwrap();
    let d = lambda_dims(&inst.build_s(), inst.q(), Sign::Minus, 4).unwrap();
    assert_eq!(d, vec![1, 2, 1, 0, 0]);
    let p = lambda_dims(&inst.build_s(), inst.q(), Sign::Plus, 2).unwrap();
    assert_eq!(p[2], 3);
}

#[test]
fn n3_plus_dims() {
    let inst = fleet::n3(Branch::Minus).unwrap();
    let d = lambda_dims(&inst.build_s(), inst.q(), Sign::Plus, 4).unwrap();
    assert_eq!(d, vec![1, 3, 8, 21, 55]);
}

#[test]
fn graded_rank_matches_dense_rank() {
    for inst in [
        fleet::n2_scalar(Branch::Minus).unwrap(),
        fleet::n3(Branch::Plus).unwrap(),
        fleet::n4_generic(Branch::Plus).unwrap(),
    ] {
        let s = inst.build_s();
        for sign in [Sign::Plus, Sign::Minus] {
            let d = lambda_dims(&s, inst.q(), sign, 3).unwrap();
            for (l, &dl) in d.iter().enumerate().skip(2) {
                assert_eq!(dl, dense_dim(&s, inst.q(), sign, l), "{sign} l = {l}");
            }
        }
    }
}

#[test]
fn tables_over_the_fleet() {
    for named in fleet::fleet().unwrap() {
        let inst = &named.instance;
        let n = inst.n();
        let lmax = if n <= 3 { 5 } else { 4 };
        let t = DimTable::compute(&inst.build_s(), inst.q(), lmax).unwrap();
        let mut minus = vec![1, n as u128, 1];
        minus.resize(lmax + 1, 0);
        assert_eq!(t.dims_minus, minus, "{}", named.name);
        assert_eq!(
            t.dims_plus,
            sym_dims(n as u64, lmax as u32).unwrap(),
            "{}",
            named.name
        );
        assert!(series_product_check(&t).passed(), "{}", named.name);
    }
}

#[test]
fn series_check_reports_the_first_bad_degree() {
    let t = DimTable {
        n: 3,
        lmax: 3,
        dims_plus: vec![1, 3, 8, 20],
        dims_minus: vec![1, 3, 1, 0],
    };
    assert_eq!(series_product_check(&t), Check::Fail((3, -1)));
}

#[test]
fn flip_is_not_accepted_without_hecke() {
    let f = Field::RatFunc;
    let flip = TensorOperator::flip(&f, 2);
    let err = lambda_dims(&flip, &f.q().unwrap(), Sign::Plus, 2).unwrap_err();
    assert!(matches!(err, Error::Invalid(_)));
    // the flip is Hecke at q = 1: the classical symmetric and exterior algebras
    let one = f.one();
    let d = lambda_dims(&flip, &one, Sign::Plus, 3).unwrap();
    assert_eq!(d, vec![1, 2, 3, 4]);
    let d = lambda_dims(&flip, &one, Sign::Minus, 3).unwrap();
    assert_eq!(d, vec![1, 2, 1, 0]);
}

#[test]
fn size_guard() {
    let inst = fleet::n5_generic(Branch::Minus).unwrap();
    let err = lambda_dims(&inst.build_s(), inst.q(), Sign::Plus, 7).unwrap_err();
    assert!(matches!(err, Error::SizeGuard(_)));
}

#[test]
fn sym_dim_values() {
    assert_eq!(sym_dims(3, 5).unwrap(), vec![1, 3, 8, 21, 55, 144]);
    for m in 0..20 {
        assert_eq!(sym_dim(2, m), Some(m as u128 + 1));
    }
    assert!(sym_dim(6, 200).is_none());
}

#[test]
fn clebsch_gordan_parity_rule() {
    for n in 3..=6 {
        assert!(clebsch_gordan_dim_check(n, 5, Step::Parity)
            .unwrap()
            .passed());
    }
    assert!(clebsch_gordan_dim_check(2, 8, Step::Parity)
        .unwrap()
        .passed());
    let d = sym_dims(3, 3).unwrap();
    assert_eq!(d[1] * d[1], 9);
    assert_eq!(d[0] + d[2], 9);
    assert_eq!(d[2] * d[1], d[1] + d[3]);
}

#[test]
fn clebsch_gordan_every_step_fails() {
    let c = clebsch_gordan_dim_check(3, 5, Step::Every).unwrap();
    let want = CgWitness {
        i: 1,
        j: 1,
        product: 9,
        sum: 12,
    };
    assert_eq!(c, Check::Fail(want));
}

proptest! {
    #[test]
    fn recursion_satisfies_the_product_rule(n in 2u64..9, i in 0u32..6, j in 0u32..6) {
        let d = sym_dims(n, i + j).unwrap();
        let lo = i.abs_diff(j) as usize;
        let sum: u128 = (lo..=(i + j) as usize).step_by(2).map(|k| d[k]).sum();
        prop_assert_eq!(d[i as usize] * d[j as usize], sum);
    }
}

#[test]
fn inexact_fields_are_refused() {
    use hecke_core::scalar::Complex;
    let f = Field::complex(128, Complex::from_f64(1.7, 0.4, 128));
    let flip = TensorOperator::flip(&f, 2);
    let err = lambda_dims(&flip, &f.one(), Sign::Plus, 3).unwrap_err();
    assert!(matches!(err, Error::Unsupported(_)));
}
