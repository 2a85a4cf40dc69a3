//! Seeded random generators for matrices, step operators, weights,
//! monotone measures, and comonotone function pairs.

use std::collections::HashMap;

use num_complex::Complex64;

use crate::fuzzy::{MonotoneMeasure, SimpleFunction};
use crate::harness::rng::Rng;
use crate::spectral::ComplexMatrix;
use crate::stepops::{Segment, StepOperator};
use crate::weights::DiscreteWeight;

/// Complex matrix with independent standard-normal real and imaginary parts.
pub fn random_complex(n: usize, rng: &mut Rng) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = Complex64::new(rng.normal(), rng.normal());
        }
    }
    m
}

/// (G + G*) / 2 with standard-normal G.
pub fn random_hermitian(n: usize, rng: &mut Rng) -> ComplexMatrix {
    let g = random_complex(n, rng);
    g.add(&g.adjoint()).expect("same dimension").scale(Complex64::new(0.5, 0.0))
}

/// G* G with standard-normal G.
pub fn random_psd(n: usize, rng: &mut Rng) -> ComplexMatrix {
    let g = random_complex(n, rng);
    g.adjoint().matmul(&g).expect("same dimension")
}

/// Unitary matrix from modified Gram-Schmidt on a standard-normal matrix.
pub fn random_unitary(n: usize, rng: &mut Rng) -> ComplexMatrix {
    let g = random_complex(n, rng);
    let mut cols: Vec<Vec<Complex64>> = (0..n)
        .map(|j| (0..n).map(|i| g[(i, j)]).collect())
        .collect();
    for j in 0..n {
        for k in 0..j {
            let proj: Complex64 = (0..n).map(|i| cols[k][i].conj() * cols[j][i]).sum();
            for i in 0..n {
                let correction = proj * cols[k][i];
                cols[j][i] -= correction;
            }
        }
        let norm: f64 = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in &mut cols[j] {
            *z /= norm;
        }
    }
    let mut u = ComplexMatrix::zeros(n);
    for j in 0..n {
        for i in 0..n {
            u[(i, j)] = cols[j][i];
        }
    }
    u
}

/// Diagonal rank-`rank` projection placed at `offset` in dimension n.
pub fn diagonal_projection(n: usize, offset: usize, rank: usize) -> ComplexMatrix {
    let mut d = vec![0.0; n];
    for v in d.iter_mut().skip(offset).take(rank) {
        *v = 1.0;
    }
    ComplexMatrix::from_diag(&d)
}

/// Step operator with k segments; values and masses are |N(0, 1)|.
pub fn random_step_operator(k: usize, rng: &mut Rng) -> StepOperator {
    let segments = (0..k)
        .map(|_| Segment {
            value: rng.normal().abs(),
            mass: rng.normal().abs().max(1e-9),
        })
        .collect();
    StepOperator::new(segments, None).expect("generated segments are valid")
}

/// Step operator with small-rational data: values in {0/8, ..., 16/8},
/// masses in {1/8, ..., 16/8}. Arithmetic with these is exact in f64.
pub fn random_step_operator_rational(k: usize, rng: &mut Rng) -> StepOperator {
    let segments = (0..k)
        .map(|_| Segment {
            value: rng.below(17) as f64 / 8.0,
            mass: (rng.below(16) + 1) as f64 / 8.0,
        })
        .collect();
    StepOperator::new(segments, None).expect("generated segments are valid")
}

/// Normalized-model step operator with dyadic masses m/1024 and total
/// mass at most 1.
pub fn random_step_operator_unit(k: usize, rng: &mut Rng) -> StepOperator {
    let per_segment = (1024 / k as u64).max(1);
    let segments = (0..k)
        .map(|_| Segment {
            value: rng.normal().abs(),
            mass: (rng.below(per_segment) + 1) as f64 / 1024.0,
        })
        .collect();
    StepOperator::new(segments, Some(1.0)).expect("generated segments are valid")
}

/// Monotone measure on n points: i.i.d. uniform draws pushed through the
/// running-max closure over the subset lattice.
pub fn random_monotone_measure(n: usize, rng: &mut Rng) -> MonotoneMeasure {
    assert!(n >= 1 && n <= 20);
    let size = 1usize << n;
    let mut values = vec![0.0f64; size];
    for mask in 1..size {
        let mut v = rng.uniform();
        for i in 0..n {
            if mask & (1 << i) != 0 {
                v = v.max(values[mask & !(1 << i)]);
            }
        }
        values[mask] = v;
    }
    let mu: HashMap<u32, f64> =
        (1..size).map(|mask| (mask as u32, values[mask])).collect();
    MonotoneMeasure::new(n, mu).expect("running-max closure is monotone")
}

/// Nonnegative simple function with |N(0, 1)| values.
pub fn random_simple_function(n: usize, rng: &mut Rng) -> SimpleFunction {
    SimpleFunction::new((0..n).map(|_| rng.normal().abs()).collect()).unwrap()
}

/// Comonotone pair sharing one monotone reordering: two ascending value
/// lists pushed through a common random placement.
pub fn random_comonotone_pair(n: usize, rng: &mut Rng) -> (SimpleFunction, SimpleFunction) {
    let mut u: Vec<f64> = (0..n).map(|_| rng.normal().abs()).collect();
    let mut v: Vec<f64> = (0..n).map(|_| rng.normal().abs()).collect();
    u.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut placement: Vec<usize> = (0..n).collect();
    // Fisher-Yates with the harness stream
    for i in (1..n).rev() {
        let j = rng.below(i as u64 + 1) as usize;
        placement.swap(i, j);
    }
    let mut f = vec![0.0; n];
    let mut g = vec![0.0; n];
    for (rank, &pos) in placement.iter().enumerate() {
        f[pos] = u[rank];
        g[pos] = v[rank];
    }
    (SimpleFunction::new(f).unwrap(), SimpleFunction::new(g).unwrap())
}

/// Random discrete weight drawn from the explicit family with
/// non-increasing increments when `concave` is requested. Increments sit
/// on the dyadic grid k/64, so prefix sums and their recomputed
/// differences are exact in f64.
pub fn random_discrete_weight(concave: bool, rng: &mut Rng) -> DiscreteWeight {
    let len = 2 + rng.below(6) as usize;
    let mut increments: Vec<f64> = (0..len).map(|_| (rng.below(64) + 1) as f64 / 64.0).collect();
    if concave {
        increments.sort_by(|a, b| b.partial_cmp(a).unwrap());
    }
    let mut values = vec![0.0];
    for c in &increments {
        values.push(values.last().unwrap() + c);
    }
    let tail_increment = if concave {
        // a dyadic fraction of the smallest listed increment
        increments.last().unwrap() * rng.below(5) as f64 / 4.0
    } else {
        (rng.below(64) + 1) as f64 / 64.0
    };
    DiscreteWeight::explicit_arithmetic(&values, tail_increment)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::is_comonotone;
    use crate::spectral::psd_eigenvalues;

    #[test]
    fn psd_generator_passes_psd_check() {
        let mut rng = Rng::new(11);
        for _ in 0..20 {
            let a = random_psd(5, &mut rng);
            assert!(psd_eigenvalues(&a).is_ok());
        }
    }

    #[test]
    fn same_seed_bit_identical_matrices() {
        let a = random_hermitian(4, &mut Rng::new(99));
        let b = random_hermitian(4, &mut Rng::new(99));
        assert_eq!(a, b);
    }

    #[test]
    fn unitary_is_unitary() {
        let mut rng = Rng::new(5);
        let u = random_unitary(5, &mut rng);
        let gram = u.adjoint().matmul(&u).unwrap();
        let id = ComplexMatrix::identity(5);
        let dev = gram.sub(&id).unwrap().frobenius();
        assert!(dev < 1e-12, "Gram deviation {dev}");
    }

    #[test]
    fn monotone_measure_generator_validates() {
        let mut rng = Rng::new(21);
        for _ in 0..10 {
            let mu = random_monotone_measure(6, &mut rng);
            assert!(mu.validate().is_ok());
        }
    }

    #[test]
    fn comonotone_generator_is_comonotone() {
        let mut rng = Rng::new(31);
        for _ in 0..50 {
            let (f, g) = random_comonotone_pair(7, &mut rng);
            assert!(is_comonotone(&f, &g).unwrap());
        }
    }

    #[test]
    fn concave_weight_generator_is_concave() {
        let mut rng = Rng::new(41);
        for _ in 0..50 {
            let w = random_discrete_weight(true, &mut rng);
            w.validate().unwrap();
            assert!(w.is_concave(64));
            assert!(w.alpha1_positive());
        }
    }
}
