//! Seeded field data for the scenarios: tensor polynomials of per-axis
//! degree ≤ 3 with coefficients in [−1, 1], unit-frequency sine modes for
//! periodic axes, and bumps aligned with composite quadrature panels.

use std::f64::consts::TAU;

use jetstress::{multi_indices, polynomial_bump, PForm, PlaneWave, Polynomial, ScalarField};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const POLY_DEGREE: u32 = 3;

#[derive(Debug, Clone)]
pub struct Family {
    rng: ChaCha8Rng,
}

impl Family {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn coefficient(&mut self) -> f64 {
        self.rng.gen_range(-1.0..=1.0)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn polynomial(&mut self, d: usize) -> Polynomial<f64> {
        let n = (POLY_DEGREE as usize + 1).pow(d as u32);
        let coeffs: Vec<f64> = (0..n).map(|_| self.coefficient()).collect();
        Polynomial::dense(d, POLY_DEGREE, coeffs)
    }

    pub fn field(&mut self, d: usize) -> ScalarField<f64> {
        self.polynomial(d).to_field()
    }

    pub fn fields(&mut self, d: usize, n: usize) -> Vec<ScalarField<f64>> {
        (0..n).map(|_| self.field(d)).collect()
    }

    /// `a cos(2π n·X + φ)` with `n ∈ {−1, 0, 1}^d`, periodic on the unit torus.
    pub fn sine_mode(&mut self, d: usize) -> ScalarField<f64> {
        let wavevector = (0..d).map(|_| TAU * (self.index(3) as f64 - 1.0)).collect();
        PlaneWave {
            amplitude: self.coefficient(),
            wavevector,
            phase: self.uniform(0.0, TAU),
        }
        .to_field()
    }

    /// Polynomial bump whose support box has corners on the panel grid of
    /// `[0, 1]` and stays off the outer faces; amplitude magnitude in
    /// `[0.5, 1]`.
    pub fn panel_bump(&mut self, d: usize, panels: usize) -> ScalarField<f64> {
        assert!(panels >= 3, "interior bumps need three panels");
        let width = 1.0 / panels as f64;
        let support = (0..d)
            .map(|_| {
                let lo = 1 + self.index(panels - 2);
                let hi = lo + 1 + self.index(panels - 1 - lo);
                (lo as f64 * width, hi as f64 * width)
            })
            .collect();
        let sign = if self.rng.gen::<bool>() { 1.0 } else { -1.0 };
        polynomial_bump(support, sign * self.uniform(0.5, 1.0))
    }

    pub fn poly_form(&mut self, d: usize, p: usize) -> PForm<f64> {
        let n = multi_indices(d, p).len();
        PForm::new(d, p, self.fields(d, n)).expect("component count from multi_indices")
    }

    pub fn sine_form(&mut self, d: usize, p: usize) -> PForm<f64> {
        let n = multi_indices(d, p).len();
        let comps = (0..n).map(|_| self.sine_mode(d)).collect();
        PForm::new(d, p, comps).expect("component count from multi_indices")
    }
}
