//! Shared input builders for the benchmark targets: deterministic
//! matrices and quadruples at the sizes the benches sweep.

use drazinlab_core::{gen_mosic, sample_matrix, FieldSpec, GenSpec, Matrix, Quadruple, Strategy};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn gf5() -> FieldSpec {
    FieldSpec::prime(5).unwrap()
}

/// Deterministic dense square matrix with a rank deficiency, so the
/// index iteration does real work.
pub fn bench_matrix(field: FieldSpec, n: usize, seed: u64) -> Matrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = (n / 2).max(1);
    let u = sample_matrix(field, n, r, 3, &mut rng);
    let v = sample_matrix(field, r, n, 3, &mut rng);
    u.mul(&v).unwrap()
}

pub fn bench_quadruple(field: FieldSpec, n: usize, seed: u64) -> Quadruple {
    gen_mosic(&GenSpec {
        strategy: Strategy::Mosic,
        field,
        dim: n,
        seed,
        entry_bound: 3,
    })
    .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use drazinlab_core::rank;

    #[test]
    fn builders_produce_usable_inputs() {
        let m = bench_matrix(gf5(), 6, 1);
        assert_eq!(m.rows, 6);
        assert!(rank(&m).unwrap() <= 3);
        let q = bench_quadruple(gf5(), 4, 1);
        assert_eq!(q.dim(), 4);
    }
}
