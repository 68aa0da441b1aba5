//! Closed-form coefficient families: multivariate polynomials, compactly
//! supported polynomial bumps and plane waves.
//!
//! Each family knows its own analytic derivative, so tests can compare the
//! finite-difference operators against exact values.

use crate::chart::{ScalarField, Smoothness};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Monomial<T> {
    pub coeff: T,
    pub powers: Vec<u32>,
}

/// Sparse multivariate polynomial in the chart coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<T> {
    dim: usize,
    terms: Vec<Monomial<T>>,
}

/// Exponent tuples with every entry `≤ max_degree`, last axis fastest.
pub fn exponent_tuples(dim: usize, max_degree: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=max_degree).map(move |k| {
                    let mut t = prefix.clone();
                    t.push(k);
                    t
                })
            })
            .collect();
    }
    out
}

impl<T: Scalar> Polynomial<T> {
    pub fn new(dim: usize, terms: Vec<Monomial<T>>) -> Self {
        assert!(terms.iter().all(|t| t.powers.len() == dim));
        Self { dim, terms }
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(dim, Vec::new())
    }

    pub fn constant(dim: usize, c: T) -> Self {
        Self::new(
            dim,
            vec![Monomial {
                coeff: c,
                powers: vec![0; dim],
            }],
        )
    }

    /// Full tensor polynomial of per-axis degree `max_degree`, coefficients
    /// taken in [`exponent_tuples`] order.
    pub fn dense(dim: usize, max_degree: u32, coeffs: impl IntoIterator<Item = T>) -> Self {
        let terms = exponent_tuples(dim, max_degree)
            .into_iter()
            .zip(coeffs)
            .map(|(powers, coeff)| Monomial { coeff, powers })
            .collect();
        Self::new(dim, terms)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[Monomial<T>] {
        &self.terms
    }

    pub fn eval(&self, p: &[T]) -> T {
        self.terms
            .iter()
            .map(|t| {
                t.powers
                    .iter()
                    .zip(p)
                    .fold(t.coeff, |acc, (&k, &x)| acc * x.powi(k as i32))
            })
            .sum()
    }

    pub fn derivative(&self, axis: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|t| t.powers[axis] > 0)
            .map(|t| {
                let mut powers = t.powers.clone();
                let k = powers[axis];
                powers[axis] -= 1;
                Monomial {
                    coeff: t.coeff * T::from_u32(k).unwrap(),
                    powers,
                }
            })
            .collect();
        Self::new(self.dim, terms)
    }

    /// Exact integral over the box `Π [lo_a, hi_a]`.
    pub fn integral(&self, bounds: &[(T, T)]) -> T {
        self.terms
            .iter()
            .map(|t| {
                t.powers.iter().zip(bounds).fold(t.coeff, |acc, (&k, &(lo, hi))| {
                    let n = T::from_u32(k + 1).unwrap();
                    acc * (hi.powi(k as i32 + 1) - lo.powi(k as i32 + 1)) / n
                })
            })
            .sum()
    }

    pub fn scaled(&self, a: T) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| Monomial {
                coeff: a * t.coeff,
                powers: t.powers.clone(),
            })
            .collect();
        Self::new(self.dim, terms)
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Self::new(self.dim, terms)
    }

    pub fn times(&self, other: &Self) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                terms.push(Monomial {
                    coeff: a.coeff * b.coeff,
                    powers: a.powers.iter().zip(&b.powers).map(|(x, y)| x + y).collect(),
                });
            }
        }
        Self::new(self.dim, terms)
    }

    pub fn to_field(&self) -> ScalarField<T> {
        let p = self.clone();
        ScalarField::new(Smoothness::C2, move |x| p.eval(x))
    }
}

/// `Π_a ((X^a − lo_a)(hi_a − X^a))² / r_a⁴` inside the support box, zero
/// outside, times `amplitude`. Peak value is `amplitude` at the centre; the
/// field is C1 with a piecewise polynomial profile of degree 4 per axis.
pub fn polynomial_bump<T: Scalar>(support: Vec<(T, T)>, amplitude: T) -> ScalarField<T> {
    ScalarField::new(Smoothness::C1, move |p| {
        let mut acc = amplitude;
        for (&x, &(lo, hi)) in p.iter().zip(&support) {
            if x <= lo || x >= hi {
                return T::zero();
            }
            let r = (hi - lo) / T::lit(2.0);
            let u = (x - lo) * (hi - x) / (r * r);
            acc *= u * u;
        }
        acc
    })
}

/// `amplitude · cos(k·X + phase)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PlaneWave<T> {
    pub amplitude: T,
    pub wavevector: Vec<T>,
    pub phase: T,
}

impl<T: Scalar> PlaneWave<T> {
    pub fn eval(&self, p: &[T]) -> T {
        let arg = self
            .wavevector
            .iter()
            .zip(p)
            .fold(self.phase, |acc, (&k, &x)| acc + k * x);
        self.amplitude * arg.cos()
    }

    pub fn derivative(&self, axis: usize) -> Self {
        Self {
            amplitude: self.amplitude * self.wavevector[axis],
            wavevector: self.wavevector.clone(),
            phase: self.phase + T::FRAC_PI_2(),
        }
    }

    pub fn to_field(&self) -> ScalarField<T> {
        let w = self.clone();
        ScalarField::new(Smoothness::C2, move |x| w.eval(x))
    }
}
