use hecke_core::scalar::{Complex, Field, FieldElement, Matrix, RatFunc, Specialization};
use proptest::prelude::*;

fn poly_src(c: &[i64]) -> String {
    c.iter()
        .enumerate()
        .map(|(k, a)| format!("({a})*s^{k}"))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn ratfunc() -> impl Strategy<Value = String> {
    (
        proptest::collection::vec(-4i64..5, 1..4),
        proptest::collection::vec(-3i64..4, 1..3),
    )
        .prop_filter("nonzero denominator", |(_, d)| d.iter().any(|&x| x != 0))
        .prop_map(|(n, d)| format!("({}) / ({})", poly_src(&n), poly_src(&d)))
}

fn quad_field() -> Field {
    Field::quad_ext(RatFunc::from_int(-1)).unwrap()
}

/// Laplace expansion along the first row; the oracle for `det`.
fn cofactor_det(m: &[Vec<FieldElement>], f: &Field) -> FieldElement {
    if m.len() == 1 {
        return m[0][0].clone();
    }
    let mut acc = f.zero();
    for (j, a) in m[0].iter().enumerate() {
        let minor: Vec<Vec<FieldElement>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(k, _)| k != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let t = a * &cofactor_det(&minor, f);
        acc = if j % 2 == 0 { &acc + &t } else { &acc - &t };
    }
    acc
}

#[test]
fn canonical_forms() {
    let f = Field::RatFunc;
    assert_eq!(
        f.parse("(s^2 - 1)/(s - 1)").unwrap(),
        f.parse("s + 1").unwrap()
    );
    assert_eq!(f.parse("q").unwrap(), f.parse("s^4").unwrap());
    assert_eq!(f.parse("2/4").unwrap(), f.parse("1/2").unwrap());
    let g = quad_field();
    let th = g.theta().unwrap();
    assert_eq!(&th * &th, g.from_int(-1));
    assert!(g.sqrt(&g.from_int(-1)).is_some());
    assert!(f.sqrt(&f.from_int(-1)).is_none());
    assert_eq!(
        f.sqrt(&f.parse("s^2 + 2*s + 1").unwrap()).unwrap(),
        f.parse("s + 1").unwrap()
    );
}

#[test]
fn display_round_trips() {
    let f = Field::RatFunc;
    for src in ["(s^3 - 2)/(3*s + 1)", "-s^-2", "7/3", "0"] {
        let x = f.parse(src).unwrap();
        assert_eq!(f.parse(&x.to_string()).unwrap(), x, "{src} -> {x}");
    }
    let g = quad_field();
    let x = g.parse("(1 + th*s)/(s^2 + 1)").unwrap();
    assert_eq!(g.parse(&x.to_string()).unwrap(), x);
}

#[test]
fn division_by_zero_is_an_error() {
    let f = Field::RatFunc;
    assert!(f.one().try_div(&f.zero()).is_err());
    assert!(f.zero().inv().is_err());
}

#[test]
fn complex_sqrt_squares_back() {
    for (re, im) in [(2.0, 0.0), (-1.0, 0.0), (0.3, -4.5), (-2.0, 1e-3)] {
        let z = Complex::from_f64(re, im, 128);
        let r = z.sqrt();
        let back = FieldElement::Complex(r.mul(&r));
        assert!(back.same_value(&FieldElement::Complex(z)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_axioms(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        let f = Field::RatFunc;
        let (a, b, c) = (f.parse(&a).unwrap(), f.parse(&b).unwrap(), f.parse(&c).unwrap());
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !b.is_zero() {
            prop_assert_eq!(&(&a * &b) / &b, a.clone());
        }
    }

    #[test]
    fn quad_inverse(a in ratfunc(), b in ratfunc()) {
        let g = quad_field();
        let x = &g.parse(&a).unwrap() + &(&g.parse(&b).unwrap() * &g.theta().unwrap());
        prop_assume!(!x.is_zero());
        prop_assert!((&x * &x.inv().unwrap()).is_one());
    }

    #[test]
    fn specialization_is_a_homomorphism(a in ratfunc(), b in ratfunc(), s0 in 2i64..6) {
        let f = Field::RatFunc;
        let (a, b) = (f.parse(&a).unwrap(), f.parse(&b).unwrap());
        let spec = Specialization::at_int(s0);
        let (Ok(sa), Ok(sb)) = (spec.apply(&a), spec.apply(&b)) else {
            return Ok(());
        };
        prop_assert_eq!(spec.apply(&(&a * &b)).unwrap(), &sa * &sb);
        prop_assert_eq!(spec.apply(&(&a + &b)).unwrap(), &sa + &sb);
    }

    #[test]
    fn det_matches_cofactor_expansion(entries in proptest::collection::vec(ratfunc(), 16)) {
        let f = Field::RatFunc;
        let xs: Vec<FieldElement> = entries.iter().map(|e| f.parse(e).unwrap()).collect();
        let m = Matrix::new(4, 4, xs.clone()).unwrap();
        let rows: Vec<Vec<FieldElement>> = xs.chunks(4).map(|r| r.to_vec()).collect();
        prop_assert_eq!(m.det().unwrap(), cofactor_det(&rows, &f));
    }

    #[test]
    fn sparse_det_matches_cofactor_expansion(
        entries in proptest::collection::vec(prop_oneof![Just(0i64), -3i64..4], 25),
    ) {
        let f = Field::rational();
        let xs: Vec<FieldElement> = entries.iter().map(|&e| f.from_int(e)).collect();
        let m = Matrix::new(5, 5, xs.clone()).unwrap();
        let rows: Vec<Vec<FieldElement>> = xs.chunks(5).map(|r| r.to_vec()).collect();
        let d = cofactor_det(&rows, &f);
        prop_assert_eq!(m.det().unwrap(), d.clone());
        prop_assert_eq!(m.rank() == 5, !d.is_zero());
    }

    #[test]
    fn inverse_is_two_sided(entries in proptest::collection::vec(-5i64..6, 9)) {
        let f = Field::rational();
        let m = Matrix::new(3, 3, entries.iter().map(|&e| f.from_int(e)).collect()).unwrap();
        prop_assume!(!m.det().unwrap().is_zero());
        let inv = m.inverse().unwrap();
        prop_assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(&f, 3));
        prop_assert_eq!(inv.mul(&m).unwrap(), Matrix::identity(&f, 3));
    }
}
