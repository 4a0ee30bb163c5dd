use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use isotypica::action::{act_group_on_meta, act_on_meta, random_basis_change};
use isotypica::circuit::Circuit;
use isotypica::scalar::int;
use isotypica::text;
use isotypica::uea::{apply, casimir, casimir_gz, pbw_normalize, UeaElement, Word};
use isotypica::{BasisElement, Format, MetaPolynomial};

fn random_meta(seed: u64, format: Format) -> MetaPolynomial {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut terms = Vec::new();
    for m in format.metamonomials() {
        if rng.gen_bool(0.4) {
            terms.push((int(rng.gen_range(-6..=6)), m.factors().to_vec()));
        }
    }
    MetaPolynomial::from_terms(format, terms).unwrap()
}

fn random_word(rng: &mut impl Rng, k: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::new(
        (0..len)
            .map(|_| BasisElement::new(rng.gen_range(0..k), rng.gen_range(0..k)))
            .collect(),
    )
}

fn format_strategy() -> impl Strategy<Value = Format> {
    prop_oneof![
        Just(Format::new(2, 2, 2)),
        Just(Format::new(1, 3, 2)),
        Just(Format::new(2, 1, 3)),
        Just(Format::new(2, 2, 3)),
    ]
}

fn element(k: usize) -> impl Strategy<Value = BasisElement> {
    (0..k, 0..k).prop_map(|(i, j)| BasisElement::new(i, j))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms(fmt in format_strategy(), a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let (x, y, z) = (random_meta(a, fmt), random_meta(b, fmt), random_meta(c, fmt));
        prop_assert_eq!(x.add(&y).unwrap(), y.add(&x).unwrap());
        prop_assert_eq!(x.add(&y).unwrap().add(&z).unwrap(), x.add(&y.add(&z).unwrap()).unwrap());
        prop_assert!(x.sub(&x).unwrap().is_zero());
        let xy = x.mul(&y).unwrap();
        prop_assert_eq!(&xy, &y.mul(&x).unwrap());
        prop_assert_eq!(xy.mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
        let lhs = x.mul(&y.add(&z).unwrap()).unwrap();
        let rhs = xy.add(&x.mul(&z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn action_is_a_derivation(fmt in format_strategy(), a in any::<u64>(), b in any::<u64>(), e in element(3)) {
        prop_assume!(e.check(fmt.k).is_ok());
        let (x, y) = (random_meta(a, fmt), random_meta(b, fmt));
        let lhs = act_on_meta(e, &x.mul(&y).unwrap()).unwrap();
        let rhs = act_on_meta(e, &x).unwrap().mul(&y).unwrap()
            .add(&x.mul(&act_on_meta(e, &y).unwrap()).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn normal_form_preserves_the_action(fmt in format_strategy(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let terms: Vec<(Word, _)> = (0..3)
            .map(|_| (random_word(&mut rng, fmt.k, 3), int(rng.gen_range(-3..=3))))
            .collect();
        let u = UeaElement::from_terms(fmt.k, terms).unwrap();
        let m = random_meta(seed ^ 0x5eed, fmt);
        prop_assert_eq!(apply(&pbw_normalize(&u), &m).unwrap(), apply(&u, &m).unwrap());
    }

    #[test]
    fn casimirs_commute_with_the_action(seed in any::<u64>(), p in 1..=2usize, e in element(2)) {
        let fmt = Format::new(2, 2, 2);
        let m = random_meta(seed, fmt);
        for c in [casimir(2, p).unwrap(), casimir_gz(2, 2, p).unwrap()] {
            let lhs = apply(&c, &act_on_meta(e, &m).unwrap()).unwrap();
            let rhs = act_on_meta(e, &apply(&c, &m).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn group_action_is_multiplicative(a in any::<u64>(), b in any::<u64>(), seed in any::<u64>()) {
        let fmt = Format::new(2, 2, 2);
        let (x, y) = (random_meta(a, fmt), random_meta(b, fmt));
        let g = random_basis_change(2, seed, 3);
        let lhs = act_group_on_meta(&g, &x.mul(&y).unwrap()).unwrap();
        let rhs = act_group_on_meta(&g, &x).unwrap().mul(&act_group_on_meta(&g, &y).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn text_and_json_round_trip(fmt in format_strategy(), seed in any::<u64>()) {
        let m = random_meta(seed, fmt).scale(&isotypica::scalar::ratio(3, 7));
        prop_assert_eq!(text::from_json(&text::to_json(&m)).unwrap(), m.clone());
        prop_assert_eq!(text::parse_meta(&m.to_string(), Some(fmt)).unwrap(), m.clone());
        let c = Circuit::from_meta(&m);
        let back = Circuit::from_json(&c.to_json()).unwrap();
        prop_assert_eq!(back.eval_symbolic().unwrap(), m);
    }
}
