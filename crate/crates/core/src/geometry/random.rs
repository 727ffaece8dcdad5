//! Seeded random members of the metric family for property tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::metric::PlaneSymmetricMetric;
use crate::symexpr::{Bindings, Domain, Expr};

fn coeff(rng: &mut ChaCha8Rng) -> Expr {
    Expr::rat(rng.gen_range(-4..=4), 4)
}

/// Random polynomial/exponential function of `(t, x)` with quarter-integer
/// coefficients.
fn random_function(rng: &mut ChaCha8Rng) -> Expr {
    let (t, x) = (Expr::t(), Expr::x());
    let monomials = [Expr::one(), t.clone(), x.clone(), &t * &x, t.powi(2), x.powi(2), t.powi(3)];
    let mut terms: Vec<Expr> = monomials.into_iter().map(|m| coeff(rng) * m).collect();
    let arg = coeff(rng) * &t + coeff(rng) * &x;
    terms.push(coeff(rng) * arg.exp());
    Expr::sum(terms)
}

/// A random plane symmetric metric on the default domain `[-1, 1]^4`.
pub fn random_metric(seed: u64) -> PlaneSymmetricMetric {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (a, b, c) = (random_function(&mut rng), random_function(&mut rng), random_function(&mut rng));
    PlaneSymmetricMetric::new(a, b, c, Bindings::new(), Domain::default())
        .expect("exponentials of real polynomials are positive")
}
