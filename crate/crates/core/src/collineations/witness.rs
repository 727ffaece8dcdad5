use nalgebra::DMatrix;

use super::vector::VectorField;
use crate::symexpr::{evaluate, Bindings, Domain};

/// Rank of the Gram matrix of the fields' component vectors sampled at
/// `samples` seeded points, with singular values below `tol` times the
/// largest discarded. Rank `n` certifies linear independence over the reals.
pub fn gram_rank(
    fields: &[VectorField],
    dom: &Domain,
    params: &Bindings,
    samples: usize,
    seed: u64,
    tol: f64,
) -> usize {
    let points = dom.sample(samples, seed);
    let rows: Vec<Vec<f64>> = fields
        .iter()
        .map(|f| {
            points
                .iter()
                .flat_map(|p| f.components().iter().map(move |e| evaluate(e, p, params).unwrap_or(0.0)))
                .collect()
        })
        .collect();
    let n = fields.len();
    let gram: DMatrix<f64> =
        DMatrix::from_fn(n, n, |i, j| rows[i].iter().zip(&rows[j]).map(|(a, b)| a * b).sum::<f64>());
    let sv = gram.singular_values();
    let top = sv.max();
    if top <= 0.0 {
        return 0;
    }
    sv.iter().filter(|s| **s > tol * top).count()
}
