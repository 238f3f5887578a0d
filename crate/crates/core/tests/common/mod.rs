#![allow(dead_code)]

use npath_duality::scenarios::{random_ensemble, random_state, seeded_rng};
use npath_duality::{ComplexMatrix, ComplexVector, Ensemble, PureJointState};
use num_complex::Complex64;

pub fn random_pure(seed: u64, n: usize, m: usize) -> PureJointState {
    random_state(&mut seeded_rng(seed), n, m)
}

pub fn random_mix(seed: u64, n: usize, components: usize) -> Ensemble {
    random_ensemble(&mut seeded_rng(seed), n, 1..=6, components)
}

/// Rank by Gaussian elimination with partial pivoting on the vectors themselves.
pub fn row_reduction_rank(vectors: &[ComplexVector], tol: f64) -> usize {
    let mut rows: Vec<Vec<Complex64>> = vectors.iter().map(|v| v.entries().to_vec()).collect();
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let pivot =
            (rank..rows.len()).max_by(|&a, &b| rows[a][col].norm().total_cmp(&rows[b][col].norm()));
        let Some(p) = pivot else { break };
        if rows[p][col].norm() <= tol {
            continue;
        }
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank {
                let f = rows[r][col] / rows[rank][col];
                for c in 0..cols {
                    let sub = f * rows[rank][c];
                    rows[r][c] -= sub;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Haar-ish unitary from Gram-Schmidt on a seeded Gaussian matrix.
pub fn random_unitary(seed: u64, dim: usize) -> ComplexMatrix {
    let mut rng = seeded_rng(seed);
    let mut cols: Vec<ComplexVector> = Vec::new();
    while cols.len() < dim {
        let mut v = npath_duality::scenarios::random_unit_vector(&mut rng, dim)
            .entries()
            .to_vec();
        for u in &cols {
            let proj: Complex64 = u.entries().iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (x, y) in v.iter_mut().zip(u.entries()) {
                *x -= proj * y;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            cols.push(ComplexVector::new(v.into_iter().map(|z| z / norm).collect()).unwrap());
        }
    }
    let rows = (0..dim)
        .map(|i| (0..dim).map(|j| cols[j][i]).collect())
        .collect();
    ComplexMatrix::from_rows(rows).unwrap()
}

pub fn apply(u: &ComplexMatrix, v: &ComplexVector) -> ComplexVector {
    let out = (0..u.rows())
        .map(|i| (0..u.cols()).map(|j| u[(i, j)] * v[j]).sum())
        .collect();
    ComplexVector::new(out).unwrap()
}
