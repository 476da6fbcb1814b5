use ncgb::cli::parse::parse_polynomial;
use ncgb::groebner::{is_groebner, reduces_to_zero};
use ncgb::par::Execution;
use ncgb::quotient::Quotient;
use ncgb::reduce::{is_self_reduced, Reducer};
use ncgb::{complete, Alphabet, CompletionConfig, Field, Polynomial, Presentation, Rational, Status, Word};
use proptest::prelude::*;

fn word(letters: u8, max_deg: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..letters, 0..=max_deg).prop_map(|v| Word::from_letters(&v))
}

fn coefficient() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

fn poly(letters: u8, max_deg: usize, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((coefficient(), word(letters, max_deg)), 0..=max_terms).prop_map(Polynomial::normalize)
}

/// Small presentations on two letters. Degrees are kept low so completion
/// under tight bounds stays fast.
fn presentation() -> impl Strategy<Value = Presentation> {
    prop::collection::vec(poly(2, 3, 3), 1..=3).prop_map(|gens| Presentation::new(Alphabet::new("ab".chars()).unwrap(), gens).unwrap())
}

fn bounded() -> CompletionConfig {
    CompletionConfig { max_degree: Some(8), max_iterations: Some(6), max_basis_size: Some(60), ..CompletionConfig::default() }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn print_parse_round_trip(f in poly(3, 5, 6)) {
        let alpha = Alphabet::new("xyz".chars()).unwrap();
        let text = f.display(&alpha).to_string();
        prop_assert_eq!(parse_polynomial(&text, &alpha).unwrap(), f);
    }

    #[test]
    fn completion_invariants(p in presentation()) {
        let r = complete(&p, &bounded());
        prop_assert!(is_self_reduced(&r.basis));
        prop_assert!(r.basis.iter().all(|g| g.is_monic()));
        // every input generator lies in the ideal of the basis and vice versa
        if r.status == Status::Complete {
            prop_assert!(is_groebner(&r.basis));
            for g in &p.generators {
                prop_assert!(reduces_to_zero(g, &r.basis));
            }
            let again = complete(&Presentation::new(r.alphabet.clone(), r.basis.clone()).unwrap(), &bounded());
            prop_assert_eq!(&again.basis, &r.basis);
            prop_assert_eq!(again.iterations.iter().map(|i| i.compositions).sum::<usize>(), 0);
        }
        if r.status == Status::UnitIdeal {
            prop_assert_eq!(r.basis, vec![Polynomial::one()]);
        }
    }

    #[test]
    fn sequential_and_parallel_agree(p in presentation()) {
        let seq = complete(&p, &CompletionConfig { execution: Execution::Sequential, ..bounded() });
        let par = complete(&p, &CompletionConfig { execution: Execution::Parallel, ..bounded() });
        prop_assert_eq!(seq, par);
    }

    #[test]
    fn normal_form_is_a_projection(p in presentation(), f in poly(2, 5, 5), g in poly(2, 5, 5)) {
        let r = complete(&p, &bounded());
        prop_assume!(r.status == Status::Complete);
        let reducer = Reducer::new(&r.basis);
        let (nf, trace) = reducer.normal_form_traced(&f);
        prop_assert!(trace.verify());
        prop_assert_eq!(reducer.normal_form(&nf), nf.clone());
        prop_assert!(nf.support().all(|w| !reducer.is_reducible(w)));
        prop_assert!(reduces_to_zero(&f.sub(&nf), &r.basis));
        // linear
        let sum = reducer.normal_form(&f.add(&g));
        prop_assert_eq!(sum, nf.add(&reducer.normal_form(&g)));
    }

    #[test]
    fn quotient_multiplication_is_associative(p in presentation(), f in poly(2, 3, 3), g in poly(2, 3, 3), h in poly(2, 3, 3)) {
        let r = complete(&p, &bounded());
        prop_assume!(r.status == Status::Complete);
        let q = Quotient::new(&r).unwrap();
        let left = q.multiply(&q.multiply(&f, &g), &h);
        let right = q.multiply(&f, &q.multiply(&g, &h));
        prop_assert_eq!(left, right);
        prop_assert_eq!(q.multiply(&Polynomial::one(), &f), q.normal_form(&f));
    }

    #[test]
    fn scaling_generators_changes_nothing(p in presentation(), k in 1i64..=5) {
        let scaled: Vec<Polynomial> = p.generators.iter().map(|g| g.scale(&Rational::new(-k, 3).unwrap())).collect();
        let a = complete(&p, &bounded());
        let b = complete(&Presentation::new(p.alphabet.clone(), scaled).unwrap(), &bounded());
        prop_assert_eq!(a.basis, b.basis);
        prop_assert_eq!(a.status, b.status);
    }
}

#[test]
fn field_identities_hold_for_coefficients() {
    let half = Rational::new(1, 2).unwrap();
    assert_eq!(half.add(&half), Rational::one());
    assert_eq!(half.inv().unwrap(), Rational::from_integer(2));
    assert!(Rational::zero().inv().is_none());
}
