//! Periodic quadrature, spectral differentiation, finite differences, and
//! quadratic root solving shared by the geometry modules.
//!
//! Everything here operates on uniform samples of 2*pi-periodic functions,
//! where the trapezoid rule and trigonometric interpolation are spectrally
//! accurate for smooth integrands.

use crate::error::{Error, Result};
use rustfft::{num_complex::Complex, FftPlanner};
use std::f64::consts::{PI, TAU};

/// Default sample count for quadrature grids.
pub const DEFAULT_GRID_SIZE: usize = 256;

/// Step used by the finite-difference oracles on the flow axis.
pub const FLOW_FD_STEP: f64 = 1e-4;

/// Relative-change threshold for the grid-refinement convergence check.
pub const REFINEMENT_TOL: f64 = 1e-8;

/// Uniform samples of a 2*pi-periodic function at theta_j = 2*pi*j/n.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicGrid {
    values: Vec<f64>,
}

impl PeriodicGrid {
    /// Wraps raw samples. The count must be even and at least 8, all finite.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        let n = values.len();
        if n < 8 || n % 2 != 0 {
            return Err(Error::InvalidGridSize(n));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteSamples);
        }
        Ok(Self { values })
    }

    /// Samples `f` at the n grid nodes.
    pub fn from_fn(n: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new((0..n).map(|j| f(TAU * j as f64 / n as f64)).collect())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false // invariant: n >= 8
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Node angle theta_j = 2*pi*j/n.
    pub fn node(&self, j: usize) -> f64 {
        TAU * j as f64 / self.values.len() as f64
    }

    /// Grid spacing 2*pi/n.
    pub fn spacing(&self) -> f64 {
        TAU / self.values.len() as f64
    }

    /// Restriction to every other node (n/2 samples).
    ///
    /// The half grid must itself be a valid grid, so n must be at least 16.
    pub fn half(&self) -> Result<Self> {
        Self::new(self.values.iter().step_by(2).copied().collect())
    }

    /// Pointwise map, preserving the node layout.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }
}

/// Periodic trapezoid rule: (2*pi/n) * sum of samples.
///
/// Exact to rounding for trigonometric polynomials of degree below n/2.
pub fn trapezoid_integrate(g: &PeriodicGrid) -> f64 {
    g.spacing() * g.values.iter().sum::<f64>()
}

/// Real Fourier coefficients of the trigonometric interpolant of a grid.
///
/// The interpolant is
/// `mean + sum_k (cos_k cos(k theta) + sin_k sin(k theta)) + nyquist_cos cos((n/2) theta)`
/// with k running from 1 to n/2 - 1.
#[derive(Debug, Clone)]
pub struct FourierCoefficients {
    pub mean: f64,
    pub cos: Vec<f64>,
    pub sin: Vec<f64>,
    pub nyquist_cos: f64,
}

impl FourierCoefficients {
    /// Value of the interpolant at an arbitrary angle.
    pub fn eval(&self, theta: f64) -> f64 {
        let mut acc = self.mean;
        for (k, (&a, &b)) in self.cos.iter().zip(&self.sin).enumerate() {
            let kt = (k + 1) as f64 * theta;
            acc += a * kt.cos() + b * kt.sin();
        }
        let nyq = (self.cos.len() + 1) as f64;
        acc + self.nyquist_cos * (nyq * theta).cos()
    }

    /// Energy sum(cos_k^2 + sin_k^2) over harmonics k >= `from` (Nyquist included).
    pub fn tail_energy(&self, from: usize) -> f64 {
        let mut e = 0.0;
        for (k, (&a, &b)) in self.cos.iter().zip(&self.sin).enumerate() {
            if k + 1 >= from {
                e += a * a + b * b;
            }
        }
        e + self.nyquist_cos * self.nyquist_cos
    }
}

fn fft_forward(values: &[f64]) -> Vec<Complex<f64>> {
    let mut buf: Vec<Complex<f64>> = values.iter().map(|&v| Complex::new(v, 0.0)).collect();
    FftPlanner::new().plan_fft_forward(buf.len()).process(&mut buf);
    buf
}

/// Discrete Fourier analysis of the samples.
pub fn fourier_coefficients(g: &PeriodicGrid) -> FourierCoefficients {
    let n = g.len();
    let spec = fft_forward(g.values());
    let scale = 1.0 / n as f64;
    let mean = spec[0].re * scale;
    let mut cos = Vec::with_capacity(n / 2 - 1);
    let mut sin = Vec::with_capacity(n / 2 - 1);
    for c in spec.iter().take(n / 2).skip(1) {
        cos.push(2.0 * c.re * scale);
        sin.push(-2.0 * c.im * scale);
    }
    let nyquist_cos = spec[n / 2].re * scale;
    FourierCoefficients {
        mean,
        cos,
        sin,
        nyquist_cos,
    }
}

/// Derivative of the trigonometric interpolant, sampled on the same grid.
///
/// The Nyquist mode is zeroed, the standard convention for odd derivatives on
/// even grids. Exact to rounding when the samples come from a trigonometric
/// polynomial of degree below n/2.
pub fn spectral_derivative(g: &PeriodicGrid) -> PeriodicGrid {
    let n = g.len();
    let mut spec = fft_forward(g.values());
    for (k, c) in spec.iter_mut().enumerate() {
        let freq = if k < n / 2 {
            k as f64
        } else if k == n / 2 {
            0.0
        } else {
            k as f64 - n as f64
        };
        *c *= Complex::new(0.0, freq);
    }
    FftPlanner::new().plan_fft_inverse(n).process(&mut spec);
    let scale = 1.0 / n as f64;
    PeriodicGrid {
        values: spec.iter().map(|c| c.re * scale).collect(),
    }
}

/// Outcome of a grid-doubling convergence check.
#[derive(Debug, Clone, Copy)]
pub struct Refinement {
    /// Largest disagreement between the coarse and fine results at shared nodes.
    pub residual: f64,
    /// Whether the relative change stayed within [`REFINEMENT_TOL`].
    pub converged: bool,
}

/// Checks whether the spectral derivative of `f` converges under grid doubling.
///
/// Samples `f` at n and 2n nodes, differentiates both, and compares at the
/// shared nodes. Non-smooth integrands (kinks, jumps in the derivative) keep
/// an O(1) residual no matter how far the grid is refined.
pub fn derivative_refinement(f: impl Fn(f64) -> f64, n: usize) -> Result<Refinement> {
    let coarse = spectral_derivative(&PeriodicGrid::from_fn(n, &f)?);
    let fine = spectral_derivative(&PeriodicGrid::from_fn(2 * n, &f)?);
    let mut residual: f64 = 0.0;
    let mut scale: f64 = 1.0;
    for (j, &c) in coarse.values().iter().enumerate() {
        residual = residual.max((c - fine.values()[2 * j]).abs());
        scale = scale.max(c.abs());
    }
    Ok(Refinement {
        residual,
        converged: residual <= REFINEMENT_TOL * scale,
    })
}

fn stencil(f: &mut impl FnMut(f64) -> f64, t0: f64, h: f64) -> Result<[f64; 5]> {
    if !(h > 0.0) {
        return Err(Error::NonPositiveStep(h));
    }
    let mut out = [0.0; 5];
    for (i, j) in (-2..=2).enumerate() {
        let t = t0 + j as f64 * h;
        let v = f(t);
        if !v.is_finite() {
            return Err(Error::StencilEvaluation(t));
        }
        out[i] = v;
    }
    Ok(out)
}

/// Fourth-order central difference estimate of f'(t0).
pub fn central_diff1(mut f: impl FnMut(f64) -> f64, t0: f64, h: f64) -> Result<f64> {
    let [m2, m1, _, p1, p2] = stencil(&mut f, t0, h)?;
    Ok((-p2 + 8.0 * p1 - 8.0 * m1 + m2) / (12.0 * h))
}

/// Fourth-order central difference estimate of f''(t0).
pub fn central_diff2(mut f: impl FnMut(f64) -> f64, t0: f64, h: f64) -> Result<f64> {
    let [m2, m1, c, p1, p2] = stencil(&mut f, t0, h)?;
    Ok((-p2 + 16.0 * p1 - 30.0 * c + 16.0 * m1 - m2) / (12.0 * h * h))
}

/// Roots of a quadratic with real coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QuadRoots {
    /// Real roots sorted ascending; equal for a double root.
    Real { low: f64, high: f64 },
    /// Conjugate pair re +- i*im with im > 0.
    Complex { re: f64, im: f64 },
}

/// Root pair of a*t^2 + b*t + c together with its discriminant.
#[derive(Debug, Clone, Copy)]
pub struct QuadraticSolution {
    pub roots: QuadRoots,
    pub discriminant: f64,
}

/// Solves a*t^2 + b*t + c = 0, a != 0.
///
/// A discriminant within a few ulps of zero is treated as a double root, so
/// exact-disk inputs such as (pi, 2 pi, pi) classify as repeated rather than
/// falling on one side by rounding.
pub fn quadratic_roots(a: f64, b: f64, c: f64) -> Result<QuadraticSolution> {
    if a == 0.0 || !a.is_finite() {
        return Err(Error::ZeroLeadingCoefficient);
    }
    let disc = b * b - 4.0 * a * c;
    let scale = (b * b).max((4.0 * a * c).abs());
    if disc.abs() <= 1e-14 * scale {
        let r = -b / (2.0 * a);
        return Ok(QuadraticSolution {
            roots: QuadRoots::Real { low: r, high: r },
            discriminant: disc,
        });
    }
    if disc < 0.0 {
        return Ok(QuadraticSolution {
            roots: QuadRoots::Complex {
                re: -b / (2.0 * a),
                im: (-disc).sqrt() / (2.0 * a).abs(),
            },
            discriminant: disc,
        });
    }
    // Citardauq-stable split: avoid cancellation between -b and the radical.
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    let (r1, r2) = if q == 0.0 {
        (0.0, 0.0)
    } else {
        (q / a, c / q)
    };
    Ok(QuadraticSolution {
        roots: QuadRoots::Real {
            low: r1.min(r2),
            high: r1.max(r2),
        },
        discriminant: disc,
    })
}
