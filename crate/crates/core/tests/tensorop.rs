use hecke_core::fleet;
use hecke_core::scalar::{Field, FieldElement};
use hecke_core::tensorop::{hecke_check, hecke_projector, ybe_check, MultiIndex, TensorOperator};
use hecke_core::tlhecke::Branch;
use proptest::prelude::*;

fn op(n: usize, arity: usize, entries: &[i64]) -> TensorOperator {
    let f = Field::rational();
    let dim = n.pow(arity as u32);
    TensorOperator::from_fn(&f, n, arity, |i, o| {
        f.from_int(entries[(i.flat(n) * dim + o.flat(n)) % entries.len()])
    })
    .unwrap()
}

#[test]
fn flip_is_an_involutive_braid() {
    let f = Field::rational();
    let p = TensorOperator::flip(&f, 3);
    assert!(p
        .compose(&p)
        .unwrap()
        .equals(&TensorOperator::identity(&f, 3, 2))
        .unwrap()
        .passed());
    assert!(ybe_check(&p).unwrap().passed());
    assert!(!hecke_check(&p, &f.from_int(2)).unwrap().passed());
    assert!(hecke_check(&p, &f.one()).unwrap().passed());
}

#[test]
fn multi_index_round_trip() {
    for flat in 0..27 {
        let m = MultiIndex::from_flat(3, 3, flat);
        assert_eq!(m.flat(3), flat);
    }
    assert_eq!(MultiIndex(vec![0, 2]).to_string(), "(1,3)");
}

#[test]
fn projector_is_idempotent_on_the_fleet() {
    for named in fleet::fleet().unwrap() {
        let inst = &named.instance;
        let p = hecke_projector(&inst.build_s(), inst.q()).unwrap();
        assert!(
            p.compose(&p).unwrap().equals(&p).unwrap().passed(),
            "{}",
            named.name
        );
        assert!(
            p.equals(&inst.projector()).unwrap().passed(),
            "{}",
            named.name
        );
    }
}

#[test]
fn ybe_witness_points_at_a_real_difference() {
    let inst = fleet::n3(Branch::Minus).unwrap();
    let mut s = inst.build_s();
    let f = inst.field().clone();
    let at = (MultiIndex(vec![0, 1]), MultiIndex(vec![0, 1]));
    let bumped: FieldElement = &s.get(&at.0, &at.1) + &f.one();
    s.set(&at.0, &at.1, bumped).unwrap();
    let w = ybe_check(&s).unwrap();
    let w = w.witness().expect("perturbed S breaks the braid relation");
    assert_ne!(w.lhs, w.rhs);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn compose_is_matrix_product(a in proptest::collection::vec(-3i64..4, 16), b in proptest::collection::vec(-3i64..4, 16)) {
        let (x, y) = (op(2, 2, &a), op(2, 2, &b));
        let lhs = x.compose(&y).unwrap().as_matrix();
        let rhs = x.as_matrix().mul(&y.as_matrix()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn distant_lifts_commute(a in proptest::collection::vec(-3i64..4, 16), b in proptest::collection::vec(-3i64..4, 16)) {
        let (x, y) = (op(2, 2, &a), op(2, 2, &b));
        let x0 = x.lift(0, 4).unwrap();
        let y2 = y.lift(2, 4).unwrap();
        prop_assert!(x0.compose(&y2).unwrap().equals(&y2.compose(&x0).unwrap()).unwrap().passed());
    }

    #[test]
    fn lift_respects_composition(a in proptest::collection::vec(-3i64..4, 9), b in proptest::collection::vec(-3i64..4, 9), pos in 0usize..3) {
        let (x, y) = (op(3, 1, &a), op(3, 1, &b));
        let lhs = x.compose(&y).unwrap().lift(pos, 3).unwrap();
        let rhs = x.lift(pos, 3).unwrap().compose(&y.lift(pos, 3).unwrap()).unwrap();
        prop_assert!(lhs.equals(&rhs).unwrap().passed());
    }

    #[test]
    fn matrix_round_trip(a in proptest::collection::vec(-3i64..4, 81)) {
        let x = op(3, 2, &a);
        let back = TensorOperator::from_matrix(x.field(), 3, 2, &x.as_matrix()).unwrap();
        prop_assert!(back.equals(&x).unwrap().passed());
    }
}
