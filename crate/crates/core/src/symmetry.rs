//! The GHZ symmetry group and the twirl onto GHZ-symmetric states.
//!
//! The group is generated by qubit permutations, the simultaneous flip
//! `σx⊗σx⊗σx`, and correlated z-rotations
//! `exp(iφ1σz) ⊗ exp(iφ2σz) ⊗ exp(-i(φ1+φ2)σz)`. Every element maps basis
//! kets to phased basis kets, so it is stored as a monomial matrix and
//! conjugation costs O(64) rather than two dense products.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{c, ComplexMatrix8, DensityMatrix, DIM};
use crate::{Error, Result};

pub const SQRT_3: f64 = 1.732_050_807_568_877_2;
/// `y` of the top edge (GHZ± corners).
pub const APEX_Y: f64 = SQRT_3 / 4.0;
/// `y` of the bottom corner, the normalized state on `|001⟩ … |110⟩`.
pub const BOTTOM_Y: f64 = -1.0 / (4.0 * SQRT_3);
/// Tolerance for triangle membership.
pub const TRIANGLE_TOL: f64 = 1e-12;

/// A point `(x, y)` of the plane holding the GHZ-symmetric states.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SymCoords {
    pub x: f64,
    pub y: f64,
}

impl SymCoords {
    pub const fn new(x: f64, y: f64) -> Self {
        SymCoords { x, y }
    }

    pub const ORIGIN: SymCoords = SymCoords::new(0.0, 0.0);
    pub const GHZ_PLUS: SymCoords = SymCoords::new(0.5, APEX_Y);
    pub const GHZ_MINUS: SymCoords = SymCoords::new(-0.5, APEX_Y);
    /// Normalized `Σ_{i=001}^{110} |i⟩⟨i| / 6`.
    pub const BOTTOM: SymCoords = SymCoords::new(0.0, BOTTOM_Y);

    /// Image under `σz⊗σz⊗σz`, i.e. `x ↦ -x`.
    pub fn mirror(self) -> Self {
        SymCoords::new(-self.x, self.y)
    }

    /// `(1 - p)·self + p·other`
    pub fn lerp(self, other: SymCoords, p: f64) -> Self {
        SymCoords::new(
            (1.0 - p) * self.x + p * other.x,
            (1.0 - p) * self.y + p * other.y,
        )
    }

    pub fn distance(self, other: SymCoords) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn in_triangle(self) -> bool {
        self.y >= BOTTOM_Y - TRIANGLE_TOL
            && self.y <= APEX_Y + TRIANGLE_TOL
            && self.x.abs() <= SQRT_3 * self.y / 2.0 + 0.125 + TRIANGLE_TOL
    }
}

/// One of the six qubit permutations. Entry `k` names the source qubit
/// (0-based) whose value lands on qubit `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Permutation([usize; 3]);

impl Permutation {
    pub const ALL: [Permutation; 6] = [
        Permutation([0, 1, 2]),
        Permutation([0, 2, 1]),
        Permutation([1, 0, 2]),
        Permutation([1, 2, 0]),
        Permutation([2, 0, 1]),
        Permutation([2, 1, 0]),
    ];

    pub const IDENTITY: Permutation = Permutation([0, 1, 2]);

    pub fn new(map: [usize; 3]) -> Option<Self> {
        let mut seen = [false; 3];
        for &k in &map {
            if k > 2 || seen[k] {
                return None;
            }
            seen[k] = true;
        }
        Some(Permutation(map))
    }

    fn apply_to_index(self, index: usize) -> usize {
        let bit = |q: usize| (index >> (2 - q)) & 1;
        (bit(self.0[0]) << 2) | (bit(self.0[1]) << 1) | bit(self.0[2])
    }
}

/// An element of the GHZ symmetry group, realized as
/// `U = R(φ1, φ2) · X^flip · P`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetryElement {
    pub permutation: Permutation,
    pub flip: bool,
    pub phi1: f64,
    pub phi2: f64,
}

impl SymmetryElement {
    pub fn identity() -> Self {
        SymmetryElement {
            permutation: Permutation::IDENTITY,
            flip: false,
            phi1: 0.0,
            phi2: 0.0,
        }
    }

    fn monomial(&self) -> Monomial {
        let mut target = [0usize; DIM];
        let mut phase = [c(1.0, 0.0); DIM];
        for j in 0..DIM {
            let mut m = self.permutation.apply_to_index(j);
            if self.flip {
                m ^= 0b111;
            }
            target[j] = m;
            phase[j] = Complex64::from_polar(1.0, rotation_angle(m, self.phi1, self.phi2));
        }
        Monomial { target, phase }
    }

    /// Dense unitary matrix of this element.
    pub fn realize(&self) -> ComplexMatrix8 {
        let mono = self.monomial();
        let mut u = ComplexMatrix8::zeros();
        for j in 0..DIM {
            u[(mono.target[j], j)] = mono.phase[j];
        }
        u
    }

    /// `U ρ U†`
    pub fn conjugate(&self, m: &ComplexMatrix8) -> ComplexMatrix8 {
        self.monomial().conjugate(m)
    }
}

/// Phase acquired by `|q1 q2 q3⟩` under the correlated z-rotation; each
/// qubit contributes `+φ` for `|0⟩` and `-φ` for `|1⟩`.
fn rotation_angle(index: usize, phi1: f64, phi2: f64) -> f64 {
    let s = |q: usize| {
        if (index >> (2 - q)) & 1 == 0 {
            1.0
        } else {
            -1.0
        }
    };
    phi1 * s(0) + phi2 * s(1) - (phi1 + phi2) * s(2)
}

/// `U|j⟩ = phase[j] |target[j]⟩`
struct Monomial {
    target: [usize; DIM],
    phase: [Complex64; DIM],
}

impl Monomial {
    fn conjugate(&self, m: &ComplexMatrix8) -> ComplexMatrix8 {
        let mut out = ComplexMatrix8::zeros();
        for j in 0..DIM {
            for k in 0..DIM {
                out[(self.target[j], self.target[k])] =
                    self.phase[j] * m[(j, k)] * self.phase[k].conj();
            }
        }
        out
    }

    fn accumulate(&self, m: &ComplexMatrix8, acc: &mut ComplexMatrix8) {
        for j in 0..DIM {
            for k in 0..DIM {
                acc[(self.target[j], self.target[k])] +=
                    self.phase[j] * m[(j, k)] * self.phase[k].conj();
            }
        }
    }
}

/// Coordinates of the twirled state `S(ρ)`.
pub fn twirl_coordinates(rho: &DensityMatrix) -> SymCoords {
    let m = rho.matrix();
    let x = 0.5 * (m[(0, 7)] + m[(7, 0)]).re;
    let y = ((m[(0, 0)] + m[(7, 7)]).re - 0.25) / SQRT_3;
    SymCoords::new(x, y)
}

/// The GHZ-symmetric state `ρ(x, y)`.
pub fn reconstruct_state(coords: SymCoords) -> Result<DensityMatrix> {
    if !coords.in_triangle() {
        return Err(Error::OutsideTriangle {
            x: coords.x,
            y: coords.y,
        });
    }
    Ok(DensityMatrix::new(symmetric_matrix(coords))?)
}

pub(crate) fn symmetric_matrix(coords: SymCoords) -> ComplexMatrix8 {
    let outer = SQRT_3 / 2.0 * coords.y + 0.125;
    let inner = (1.0 - 4.0 * coords.y / SQRT_3) / 8.0;
    let mut m = ComplexMatrix8::diagonal(&[outer, inner, inner, inner, inner, inner, inner, outer]);
    m[(0, 7)] = c(coords.x, 0.0);
    m[(7, 0)] = c(coords.x, 0.0);
    m
}

/// Exact average over the continuous z-rotations: an entry `(j, k)` survives
/// only if both angle coefficients of `j` and `k` agree.
pub fn phase_average(m: &ComplexMatrix8) -> ComplexMatrix8 {
    let charges = |idx: usize| {
        let s = |q: usize| if (idx >> (2 - q)) & 1 == 0 { 1i32 } else { -1 };
        (s(0) - s(2), s(1) - s(2))
    };
    ComplexMatrix8::from_fn(|j, k| {
        if charges(j) == charges(k) {
            m[(j, k)]
        } else {
            c(0.0, 0.0)
        }
    })
}

/// Exact group average: phases integrated analytically, then the 12
/// permutation/flip elements averaged.
pub fn exact_twirl(m: &ComplexMatrix8) -> ComplexMatrix8 {
    let averaged = phase_average(m);
    let mut acc = ComplexMatrix8::zeros();
    for permutation in Permutation::ALL {
        for flip in [false, true] {
            let e = SymmetryElement {
                permutation,
                flip,
                phi1: 0.0,
                phi2: 0.0,
            };
            e.monomial().accumulate(&averaged, &mut acc);
        }
    }
    acc.scale(1.0 / 12.0)
}

fn uniform_angle(rng: &mut impl RngCore) -> f64 {
    // top 53 bits → [0, 1)
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64) * TAU
}

/// Draws a group element with uniform permutation, uniform flip and
/// independent uniform angles on `[0, 2π)`.
pub fn random_element(rng: &mut impl RngCore) -> SymmetryElement {
    let permutation = Permutation::ALL[(rng.next_u64() % 6) as usize];
    let flip = rng.next_u64() & 1 == 1;
    let phi1 = uniform_angle(rng);
    let phi2 = uniform_angle(rng);
    SymmetryElement {
        permutation,
        flip,
        phi1,
        phi2,
    }
}

/// Group average of `ρ` over `n` sampled elements, deterministic in `seed`.
/// `n = 0` selects the exact average ([`exact_twirl`]).
pub fn sampled_twirl(rho: &DensityMatrix, n: usize, seed: u64) -> Result<DensityMatrix> {
    let m = rho.matrix();
    let sum = if n == 0 {
        exact_twirl(m)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut acc = ComplexMatrix8::zeros();
        for _ in 0..n {
            random_element(&mut rng).monomial().accumulate(m, &mut acc);
        }
        acc
    };
    let herm = sum.hermitian_part();
    let tr = herm.trace().re;
    Ok(DensityMatrix::new(herm.scale(1.0 / tr))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{kron3, pauli_x, PureState8};
    use std::f64::consts::PI;

    fn z_rotation(phi: f64) -> crate::linalg::Matrix2 {
        [
            [Complex64::from_polar(1.0, phi), c(0.0, 0.0)],
            [c(0.0, 0.0), Complex64::from_polar(1.0, -phi)],
        ]
    }

    #[test]
    fn identity_element_realizes_identity() {
        assert_eq!(
            SymmetryElement::identity().realize(),
            ComplexMatrix8::identity()
        );
    }

    #[test]
    fn flip_realizes_triple_sigma_x() {
        let e = SymmetryElement {
            flip: true,
            ..SymmetryElement::identity()
        };
        let x = pauli_x();
        assert_eq!(e.realize(), kron3(&x, &x, &x));
    }

    #[test]
    fn rotation_matches_kronecker_product() {
        let (p1, p2) = (PI / 3.0, PI / 5.0);
        let e = SymmetryElement {
            phi1: p1,
            phi2: p2,
            ..SymmetryElement::identity()
        };
        let expected = kron3(&z_rotation(p1), &z_rotation(p2), &z_rotation(-(p1 + p2)));
        assert!(e.realize().max_abs_diff(&expected) < 1e-15);
        // |000⟩ picks up e^{i(φ1+φ2-(φ1+φ2))} = 1
        let u000 = e.realize().apply(PureState8::basis(0).amplitudes());
        assert!((u000[0] - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn permutation_swaps_qubits() {
        // swap qubits 1 and 3: |001⟩ ↔ |100⟩
        let e = SymmetryElement {
            permutation: Permutation::new([2, 1, 0]).unwrap(),
            ..SymmetryElement::identity()
        };
        let out = e.realize().apply(PureState8::basis(0b001).amplitudes());
        assert_eq!(&out, PureState8::basis(0b100).amplitudes());
        assert!(Permutation::new([0, 0, 1]).is_none());
        assert!(Permutation::new([0, 1, 3]).is_none());
    }

    #[test]
    fn every_element_fixes_ghz_plus() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let ghz = PureState8::ghz_plus();
        let proj = ghz.projector();
        for _ in 0..200 {
            let u = random_element(&mut rng).realize();
            let uu = u * u.adjoint();
            assert!(uu.max_abs_diff(&ComplexMatrix8::identity()) < 1e-12);
            let image = u.apply(ghz.amplitudes());
            for (a, b) in image.iter().zip(ghz.amplitudes()) {
                assert!((a - b).norm() < 1e-12);
            }
            let rotated = (u * proj) * u.adjoint();
            assert!(rotated.max_abs_diff(&proj) < 1e-12);
        }
    }

    #[test]
    fn conjugate_matches_dense_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let m =
            ComplexMatrix8::from_fn(|i, j| c((i * 3 + j) as f64 * 0.1, (i as f64) - (j as f64)));
        for _ in 0..20 {
            let e = random_element(&mut rng);
            let u = e.realize();
            let dense = (u * m) * u.adjoint();
            assert!(e.conjugate(&m).max_abs_diff(&dense) < 1e-13);
        }
    }

    #[test]
    fn coordinates_of_reference_states() {
        let mixed = twirl_coordinates(&DensityMatrix::maximally_mixed());
        assert_eq!(mixed, SymCoords::ORIGIN);

        let minus = twirl_coordinates(&DensityMatrix::from_pure(&PureState8::ghz_minus()));
        assert!((minus.x + 0.5).abs() < 1e-15);
        assert!((minus.y - APEX_Y).abs() < 1e-15);
    }

    #[test]
    fn w_plus_minus_minus_sits_at_mirrored_corner() {
        // (|++-⟩ + |+-+⟩ + |-++⟩)/√3
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let plus = [c(s, 0.0), c(s, 0.0)];
        let minus = [c(s, 0.0), c(-s, 0.0)];
        let mut amps = [c(0.0, 0.0); DIM];
        for (a, b, cc) in [
            (plus, plus, minus),
            (plus, minus, plus),
            (minus, plus, plus),
        ] {
            let term = PureState8::product(a, b, cc);
            for (acc, t) in amps.iter_mut().zip(term.amplitudes()) {
                *acc += t;
            }
        }
        let w = PureState8::normalized(amps);
        let coords = twirl_coordinates(&DensityMatrix::from_pure(&w));
        assert!((coords.x + 0.375).abs() < 1e-14, "x = {}", coords.x);
        assert!((coords.y - 1.0 / (2.0 * SQRT_3)).abs() < 1e-14);
    }

    #[test]
    fn reconstruct_reference_points() {
        let mixed = reconstruct_state(SymCoords::ORIGIN).unwrap();
        assert!(
            mixed
                .matrix()
                .max_abs_diff(DensityMatrix::maximally_mixed().matrix())
                < 1e-16
        );

        let ghz = reconstruct_state(SymCoords::GHZ_PLUS).unwrap();
        assert!(
            ghz.matrix()
                .max_abs_diff(&PureState8::ghz_plus().projector())
                < 1e-15
        );

        let bottom = reconstruct_state(SymCoords::BOTTOM).unwrap();
        let mut d = [1.0 / 6.0; 8];
        d[0] = 0.0;
        d[7] = 0.0;
        assert!(bottom.matrix().max_abs_diff(&ComplexMatrix8::diagonal(&d)) < 1e-15);
    }

    #[test]
    fn reconstruct_matches_projector_expansion() {
        let p = PureState8::ghz_plus().projector();
        let m = PureState8::ghz_minus().projector();
        for &(x, y) in &[(0.1, 0.05), (-0.2, 0.3), (0.0, -0.1), (0.3, 0.4)] {
            let coords = SymCoords::new(x, y);
            let expected = p.scale(2.0 * y / SQRT_3 + x)
                + m.scale(2.0 * y / SQRT_3 - x)
                + ComplexMatrix8::identity().scale((1.0 - 4.0 * y / SQRT_3) / 8.0);
            let got = reconstruct_state(coords).unwrap();
            assert!(got.matrix().max_abs_diff(&expected) < 1e-15);
        }
    }

    #[test]
    fn reconstruct_rejects_outside_points() {
        assert!(matches!(
            reconstruct_state(SymCoords::new(0.6, 0.4)),
            Err(Error::OutsideTriangle { .. })
        ));
        assert!(reconstruct_state(SymCoords::new(0.0, APEX_Y + 1e-9)).is_err());
    }

    #[test]
    fn phase_average_keeps_only_diagonal_and_ghz_coherence() {
        let ones = ComplexMatrix8::from_fn(|_, _| c(1.0, 0.0));
        let avg = phase_average(&ones);
        for j in 0..DIM {
            for k in 0..DIM {
                let kept = j == k || (j, k) == (0, 7) || (j, k) == (7, 0);
                assert_eq!(avg[(j, k)] == c(1.0, 0.0), kept, "entry ({j}, {k})");
            }
        }
    }

    #[test]
    fn exact_twirl_fixes_symmetric_states() {
        let rho = reconstruct_state(SymCoords::new(0.2, 0.15)).unwrap();
        let out = sampled_twirl(&rho, 0, 0).unwrap();
        assert!(out.matrix().max_abs_diff(rho.matrix()) < 1e-15);
    }

    #[test]
    fn monte_carlo_twirl_is_seed_deterministic() {
        let rho = DensityMatrix::from_pure(&PureState8::w());
        let a = sampled_twirl(&rho, 500, 3).unwrap();
        let b = sampled_twirl(&rho, 500, 3).unwrap();
        let d = sampled_twirl(&rho, 500, 4).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, d);
    }

    #[test]
    fn monte_carlo_twirl_of_ghz_stays_put() {
        let rho = DensityMatrix::from_pure(&PureState8::ghz_plus());
        let out = sampled_twirl(&rho, 10_000, 0).unwrap();
        let coords = twirl_coordinates(&out);
        assert!((coords.x - 0.5).abs() < 1e-12);
        assert!((coords.y - APEX_Y).abs() < 1e-12);
    }

    #[test]
    fn w_state_twirls_to_inner_point() {
        // |W⟩ has no weight on |000⟩, |111⟩: lands on the bottom-edge family x = 0
        let rho = DensityMatrix::from_pure(&PureState8::w());
        let exact = sampled_twirl(&rho, 0, 0).unwrap();
        let coords = twirl_coordinates(&exact);
        assert_eq!(coords.x, 0.0);
        assert!((coords.y - BOTTOM_Y).abs() < 1e-15);
    }
}
