//! Fixtures shared by the criterion benches.

use nadosc_core::linalg::{ComplexMatrix, C64};

/// Deterministic dense Hermitian test matrix of dimension `n`.
pub fn hermitian_fixture(n: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let re = ((i * 37 + j * 11) % 23) as f64 / 23.0 - 0.5;
            let im = if i == j {
                0.0
            } else {
                ((i * 7 + j * 19) % 17) as f64 / 17.0 - 0.5
            };
            m[(i, j)] = C64::new(re, im);
            m[(j, i)] = C64::new(re, -im);
        }
    }
    m
}
