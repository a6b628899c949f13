#![allow(dead_code)]

use ghzsym::linalg::{c, ComplexMatrix8, DensityMatrix, DIM};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

/// Ginibre ensemble: `G G† / tr(G G†)`, full rank almost surely.
pub fn random_density_matrix(rng: &mut impl Rng) -> DensityMatrix {
    let g = random_complex(rng);
    let m = g * g.adjoint();
    let tr = m.trace().re;
    DensityMatrix::new(m.scale(1.0 / tr).hermitian_part()).expect("Ginibre state is valid")
}

/// Pure state from a Gaussian vector.
pub fn random_pure_density(rng: &mut impl Rng) -> DensityMatrix {
    let mut v = [c(0.0, 0.0); DIM];
    for z in v.iter_mut() {
        *z = c(rng.sample(StandardNormal), rng.sample(StandardNormal));
    }
    let s = ghzsym::PureState8::normalized(v);
    DensityMatrix::from_pure(&s)
}

pub fn random_complex(rng: &mut impl Rng) -> ComplexMatrix8 {
    ComplexMatrix8::from_fn(|_, _| c(rng.sample(StandardNormal), rng.sample(StandardNormal)))
}

pub fn random_hermitian(rng: &mut impl Rng) -> ComplexMatrix8 {
    let g = random_complex(rng);
    (g + g.adjoint()).scale(0.5)
}

/// Determinant by Gaussian elimination with partial pivoting.
pub fn determinant(m: &ComplexMatrix8) -> Complex64 {
    let mut a = m.0;
    let mut det = c(1.0, 0.0);
    for col in 0..DIM {
        let pivot = (col..DIM)
            .max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))
            .unwrap();
        if a[pivot][col].norm() == 0.0 {
            return c(0.0, 0.0);
        }
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        det *= a[col][col];
        for row in col + 1..DIM {
            let f = a[row][col] / a[col][col];
            let pivot_row = a[col];
            for (dst, v) in a[row][col..].iter_mut().zip(&pivot_row[col..]) {
                *dst -= f * v;
            }
        }
    }
    det
}

/// Real root of `v⁵ + 4v⁴ + 8v³ + 4v² - 16` in `[0, 1]` by bisection: the
/// white-noise line `y = (√3/2)x` substituted into the boundary curve.
pub fn white_noise_crossing_oracle() -> f64 {
    let f = |v: f64| (((v + 4.0) * v + 8.0) * v + 4.0) * v * v - 16.0;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    assert!(f(lo) < 0.0 && f(hi) > 0.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `x_B(v)` written out independently of the library.
pub fn boundary_x_oracle(v: f64) -> f64 {
    (v.powi(5) + 8.0 * v.powi(3)) / (8.0 * (4.0 - v * v))
}

/// Frozen high-precision values of the white-noise crossing.
pub const V_WS: f64 = 0.980_700_963_614_732_6;
pub const P_STAR_WS: f64 = 0.695_542_703_605_381_3;
