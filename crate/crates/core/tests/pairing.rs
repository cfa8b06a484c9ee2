use hecke_core::fleet;
use hecke_core::pairing::{
    act, all_relators, commutation_axiom_check, rtt_relator, well_definedness_check, LinComb,
    Pairing, STable, TensorVector, Word,
};
use hecke_core::scalar::{Field, FieldElement};
use hecke_core::tensorop::{MultiIndex, TensorOperator};
use hecke_core::tlhecke::Branch;
use proptest::prelude::*;

fn n2_pairing() -> Pairing {
    let inst = fleet::n2_plain(Branch::Minus).unwrap();
    Pairing::new(&inst, inst.field().one()).unwrap()
}

fn w(pairs: &[(usize, usize)]) -> Word {
    Word(pairs.iter().map(|&(i, j)| (i - 1, j - 1)).collect())
}

/// Independent recursion: splits the last letter of the left word and of
/// the right word instead of the first.
fn oracle(p: &Pairing, a: &Word, b: &Word) -> FieldElement {
    let f = p.field();
    let n = p.n();
    if a.is_empty() {
        return if b.counit() { f.one() } else { f.zero() };
    }
    if b.is_empty() {
        return if a.counit() { f.one() } else { f.zero() };
    }
    if a.len() == 1 && b.len() == 1 {
        return p.generators(a.0[0], b.0[0]);
    }
    let mut acc = f.zero();
    if a.len() == 1 {
        // <<t_i^j, C b>> = Σ_p <<t_i^p, b>> <<t_p^j, C>>
        let (i, j) = a.0[0];
        let last = Word(vec![*b.0.last().unwrap()]);
        let init = Word(b.0[..b.len() - 1].to_vec());
        for q in 0..n {
            acc = &acc
                + &(&oracle(p, &Word::generator(i, q), &last)
                    * &oracle(p, &Word::generator(q, j), &init));
        }
    } else {
        // <<A g, B>> = <<A, B(1)>> <<g, B(2)>>
        let g = Word(vec![*a.0.last().unwrap()]);
        let init = Word(a.0[..a.len() - 1].to_vec());
        for (b1, b2) in b.coproduct(n) {
            acc = &acc + &(&oracle(p, &init, &b1) * &oracle(p, &g, &b2));
        }
    }
    acc
}

#[test]
fn unit_pairs_by_counit() {
    let p = n2_pairing();
    let f = p.field().clone();
    for i in 0..2 {
        for k in 0..2 {
            let expect = if i == k { f.one() } else { f.zero() };
            assert_eq!(
                p.words(&Word::one(), &Word::generator(i, k)).unwrap(),
                expect
            );
            assert_eq!(
                p.words(&Word::generator(i, k), &Word::one()).unwrap(),
                expect
            );
        }
    }
    for b in Word::all_up_to(2, 3) {
        let e = if b.counit() { f.one() } else { f.zero() };
        assert_eq!(p.words(&Word::one(), &b).unwrap(), e);
    }
}

#[test]
fn n2_generator_values() {
    let p = n2_pairing();
    let f = p.field().clone();
    assert_eq!(
        p.words(&w(&[(2, 2)]), &w(&[(1, 1)])).unwrap(),
        f.from_int(-1)
    );
    assert_eq!(p.words(&w(&[(1, 2)]), &w(&[(2, 1)])).unwrap(), f.zero());
    assert_eq!(
        p.words(&w(&[(1, 1)]), &w(&[(1, 1)])).unwrap(),
        f.q().unwrap()
    );
}

/// Each of the four letter pairs contributes `S_{11}^{11} = q`.
#[test]
fn n2_degree_two_value() {
    let p = n2_pairing();
    let q = p.field().q().unwrap();
    let a = w(&[(1, 1), (1, 1)]);
    assert_eq!(p.words(&a, &a).unwrap(), q.pow(4).unwrap());
    assert_eq!(p.words(&w(&[(1, 1)]), &a).unwrap(), q.pow(2).unwrap());
    assert_eq!(oracle(&p, &a, &a), q.pow(4).unwrap());
}

#[test]
fn pairing_reverses_products() {
    let inst = fleet::n3(Branch::Minus).unwrap();
    let p = Pairing::new(&inst, inst.field().one()).unwrap();
    let n = 3;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    for (m, nn) in [(0, 2), (1, 1), (2, 0), (0, 0)] {
                        let lhs = p
                            .words(&Word::generator(i, j), &Word(vec![(k, l), (m, nn)]))
                            .unwrap();
                        let mut rhs = p.field().zero();
                        for q in 0..n {
                            rhs = &rhs
                                + &(&p.generators((i, q), (m, nn)) * &p.generators((q, j), (k, l)));
                        }
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }
}

#[test]
fn recursion_agrees_with_independent_oracle() {
    for inst in [
        fleet::n2_plain(Branch::Minus).unwrap(),
        fleet::n2_scalar(Branch::Minus).unwrap(),
    ] {
        let p = Pairing::new(&inst, inst.field().parse("s^-3").unwrap()).unwrap();
        let words = Word::all_up_to(2, 2);
        for a in &words {
            for b in &words {
                assert_eq!(p.words(a, b).unwrap(), oracle(&p, a, b), "{a} vs {b}");
            }
        }
        let a = w(&[(1, 2), (2, 1), (2, 2)]);
        let b = w(&[(2, 1), (1, 2), (1, 1)]);
        assert_eq!(p.words(&a, &b).unwrap(), oracle(&p, &a, &b));
    }
}

#[test]
fn memo_does_not_change_values() {
    let inst = fleet::n2_plain(Branch::Minus).unwrap();
    let memo = Pairing::new(&inst, inst.field().one()).unwrap();
    let plain = Pairing::new(&inst, inst.field().one())
        .unwrap()
        .without_memo();
    let words = Word::all_up_to(2, 2);
    for a in &words {
        for b in &words {
            assert_eq!(memo.words(a, b).unwrap(), plain.words(a, b).unwrap());
        }
    }
    assert!(memo.memo_len() > 0);
    assert_eq!(plain.memo_len(), 0);
}

#[test]
fn counit_kills_every_relator() {
    for named in fleet::fleet().unwrap() {
        let s = STable::from_operator(&named.instance.build_s()).unwrap();
        for (_, r) in all_relators(&s).unwrap() {
            assert!(r.counit().is_zero(), "{}", named.name);
        }
    }
}

#[test]
fn flip_relators_are_commutators() {
    let f = Field::rational();
    let s = STable::from_operator(&TensorOperator::flip(&f, 2)).unwrap();
    let r = rtt_relator(&s, 0, 1, 1, 0).unwrap();
    // t_2^2 t_1^1 − t_1^1 t_2^2
    let expected = LinComb::parse(&f, 2, "t[2,2]*t[1,1] - t[1,1]*t[2,2]").unwrap();
    assert_eq!(r, expected);
    let p = Pairing::from_operator(&TensorOperator::flip(&f, 2), f.one()).unwrap();
    assert!(commutation_axiom_check(&p).unwrap().passed());
}

#[test]
fn well_defined_for_n2_and_n3() {
    for inst in [
        fleet::n2_plain(Branch::Minus).unwrap(),
        fleet::n2_scalar(Branch::Minus).unwrap(),
        fleet::n3(Branch::Minus).unwrap(),
    ] {
        let p = Pairing::new(&inst, inst.field().one()).unwrap();
        let c = well_definedness_check(&p, 2).unwrap();
        assert!(c.passed(), "{:?}", c.witness().map(|w| w.to_string()));
    }
}

#[test]
fn perturbed_s_is_not_well_defined() {
    let inst = fleet::n2_plain(Branch::Minus).unwrap();
    let f = inst.field().clone();
    let mut s = inst.build_s();
    let a = MultiIndex(vec![0, 1]);
    let x = &s.get(&a, &a) + &f.from_int(2);
    s.set(&a, &a, x).unwrap();
    let p = Pairing::from_operator(&s, f.one()).unwrap();
    let c = well_definedness_check(&p, 2).unwrap();
    assert!(c.witness().is_some());
}

#[test]
fn commutation_axiom_on_generators() {
    for inst in [
        fleet::n2_plain(Branch::Minus).unwrap(),
        fleet::n3(Branch::Plus).unwrap(),
    ] {
        let p = Pairing::new(&inst, inst.field().parse("2*s").unwrap()).unwrap();
        assert!(commutation_axiom_check(&p).unwrap().passed());
    }
    let inst = fleet::n2_plain(Branch::Minus).unwrap();
    let p = Pairing::new(&inst, inst.field().zero()).unwrap();
    assert!(commutation_axiom_check(&p).is_err());
}

#[test]
fn action_on_generators_matches_formula() {
    let inst = fleet::n3(Branch::Minus).unwrap();
    let f = inst.field().clone();
    let c = f.parse("s^-3").unwrap();
    let p = Pairing::new(&inst, c.clone()).unwrap();
    let s = p.s().clone();
    for i in 0..3 {
        for j in 0..3 {
            let a = LinComb::from_word(&f, Word::generator(i, j));
            for k in 0..3 {
                let x = TensorVector::basis(&f, 3, &MultiIndex(vec![k]));
                let y = act(&p, &a, &x).unwrap();
                for m in 0..3 {
                    assert_eq!(y.get(&MultiIndex(vec![m])), &(&c * s.get(i, k, m, j)));
                }
            }
        }
    }
}

#[test]
fn unit_acts_trivially_and_relators_act_by_zero() {
    let inst = fleet::n2_plain(Branch::Minus).unwrap();
    let f = inst.field().clone();
    let p = Pairing::new(&inst, f.one()).unwrap();
    let one = LinComb::scalar(&f, f.one());
    for k in 0..4 {
        let x = TensorVector::basis(&f, 2, &MultiIndex::from_flat(2, 2, k));
        assert_eq!(act(&p, &one, &x).unwrap(), x);
    }
    for (_, r) in all_relators(p.s()).unwrap() {
        for k in 0..2 {
            let x = TensorVector::basis(&f, 2, &MultiIndex(vec![k]));
            assert!(act(&p, &r, &x).unwrap().is_zero());
        }
    }
}

/// `(ab) ▷ ξ = a ▷ (b ▷ ξ)`: a left module over the bialgebra itself. The
/// opposite orientation fails, so this pins the convention.
#[test]
fn action_is_associative_as_left_module() {
    let inst = fleet::n2_plain(Branch::Minus).unwrap();
    let f = inst.field().clone();
    let p = Pairing::new(&inst, f.one()).unwrap();
    let gens: Vec<Word> = Word::all_up_to(2, 1).into_iter().skip(1).collect();
    let mut opposite_fails = false;
    for m in 1..=2 {
        for a in &gens {
            for b in &gens {
                let la = LinComb::from_word(&f, a.clone());
                let lb = LinComb::from_word(&f, b.clone());
                let ab = la.mul(&lb).unwrap();
                for k in 0..2usize.pow(m as u32) {
                    let xi = TensorVector::basis(&f, 2, &MultiIndex::from_flat(2, m, k));
                    let lhs = act(&p, &ab, &xi).unwrap();
                    let left = act(&p, &la, &act(&p, &lb, &xi).unwrap()).unwrap();
                    let right = act(&p, &lb, &act(&p, &la, &xi).unwrap()).unwrap();
                    assert_eq!(lhs, left);
                    opposite_fails |= lhs != right;
                }
            }
        }
    }
    assert!(opposite_fails);
}

fn small_lincomb(f: &Field) -> impl Strategy<Value = LinComb> {
    let f = f.clone();
    prop::collection::vec((0usize..4, 0usize..4, -3i64..4), 1..4).prop_map(move |terms| {
        let mut out = LinComb::zero(&f);
        for (a, b, c) in terms {
            let word = Word(vec![(a / 2, a % 2), (b / 2, b % 2)]);
            out.add_term(word, f.from_int(c)).unwrap();
        }
        out
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn pairing_is_bilinear(
        a in small_lincomb(&Field::RatFunc),
        a2 in small_lincomb(&Field::RatFunc),
        b in small_lincomb(&Field::RatFunc),
        alpha in -5i64..6,
    ) {
        let p = n2_pairing();
        let f = p.field().clone();
        let al = f.from_int(alpha);
        let combo = a.scale(&al).unwrap().add(&a2).unwrap();
        let lhs = p.pair(&combo, &b).unwrap();
        let rhs = &(&al * &p.pair(&a, &b).unwrap()) + &p.pair(&a2, &b).unwrap();
        prop_assert_eq!(lhs, rhs);
        let lhs = p.pair(&b, &combo).unwrap();
        let rhs = &(&al * &p.pair(&b, &a).unwrap()) + &p.pair(&b, &a2).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
