use rand::Rng;

use crate::circuit::{Circuit, Gate};
use crate::index::MultiIndex;
use crate::meta::{Format, MetaPolynomial};
use crate::poly::Polynomial;
use crate::scalar::{int, Scalar};

pub(crate) fn random_poly(rng: &mut impl Rng, k: usize, d: u32) -> Polynomial {
    let terms = Polynomial::monomial_basis(k, d)
        .into_iter()
        .map(|mu| (mu, int(rng.gen_range(-3..=3))));
    Polynomial::from_terms(k, d, terms).unwrap()
}

pub(crate) fn random_meta(rng: &mut impl Rng, fmt: Format) -> MetaPolynomial {
    let mut terms = Vec::new();
    for m in fmt.metamonomials() {
        if rng.gen_bool(0.4) {
            terms.push((int(rng.gen_range(-4..=4)), m.factors().to_vec()));
        }
    }
    MetaPolynomial::from_terms(fmt, terms).unwrap()
}

pub(crate) fn random_circuit(rng: &mut impl Rng, k: usize, d: u32, binary: usize) -> Circuit {
    let basis = Polynomial::monomial_basis(k, d);
    let mut gates = Vec::new();
    for _ in 0..3 {
        let mut linear: Vec<(MultiIndex, Scalar)> = Vec::new();
        for mu in &basis {
            if rng.gen_bool(0.5) {
                linear.push((mu.clone(), int(rng.gen_range(-2..=2))));
            }
        }
        gates.push(Gate::input(int(rng.gen_range(-1..=1)), linear));
    }
    for _ in 0..binary {
        let n = gates.len();
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let (sa, sb) = (int(rng.gen_range(1..=2)), int(rng.gen_range(-2..=2)));
        gates.push(if rng.gen_bool(0.5) {
            Gate::add(a, b, sa, sb)
        } else {
            Gate::mul(a, b, sa, sb)
        });
    }
    let out = gates.len() - 1;
    Circuit::new(None, d, k, gates, out).unwrap()
}
