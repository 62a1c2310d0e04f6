//! Matrix exponential by scaling and squaring with a diagonal Padé(6)
//! approximant.

use nalgebra::DMatrix;

use crate::lie_core::Mat;

// c_k = (12 − k)! 6! / (12! k! (6 − k)!)
const PADE6: [f64; 7] = [
    1.0,
    0.5,
    5.0 / 44.0,
    1.0 / 66.0,
    1.0 / 792.0,
    1.0 / 15840.0,
    1.0 / 665280.0,
];

// ‖A‖₁ ≤ THETA keeps the Padé(6) remainder below 1e−15.
const THETA: f64 = 0.25;

fn one_norm(a: &DMatrix<f64>) -> f64 {
    a.column_iter()
        .map(|c| c.iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

pub fn expm_dense(a: &DMatrix<f64>) -> DMatrix<f64> {
    let n = a.nrows();
    let norm = one_norm(a);
    let s = if norm > THETA {
        (norm / THETA).log2().ceil() as i32
    } else {
        0
    };
    let scaled = a / 2f64.powi(s);
    let id = DMatrix::<f64>::identity(n, n);
    let mut num = id.clone() * PADE6[0];
    let mut den = id.clone() * PADE6[0];
    let mut power = id;
    for (k, c) in PADE6.iter().enumerate().skip(1) {
        power = &power * &scaled;
        num += &power * *c;
        den += &power * if k % 2 == 0 { *c } else { -*c };
    }
    let mut r = den
        .lu()
        .solve(&num)
        .expect("Padé denominator is invertible for ‖A‖ ≤ θ");
    for _ in 0..s {
        r = &r * &r;
    }
    r
}

pub fn expm(a: &Mat<f64>) -> Mat<f64> {
    let d = DMatrix::from_row_slice(a.rows(), a.cols(), a.row_major());
    let e = expm_dense(&d);
    let mut out = Mat::zeros(a.rows(), a.cols());
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            out.set(r, c, e[(r, c)]);
        }
    }
    out
}
