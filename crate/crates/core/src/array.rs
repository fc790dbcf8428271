//! Uniform planar array geometry: steering vectors, the normalized array
//! pattern and the pairwise beam-interference metric built on it.
//!
//! The array lies in the `xoz` plane with `m_h` columns and `m_v` rows. A
//! direction `(theta, phi)` maps to the direction-cosine pair
//!
//! ```text
//! u_az = cos(theta) * cos(phi)
//! u_el = sin(phi)
//! ```
//!
//! and element `(i, j)` carries the phase `2*pi*d/lambda*(i*u_az + j*u_el)`.
//! The same pair is used by the steering vector and by the closed-form
//! interference metric, so `beta_metric` always agrees with the brute-force
//! inner product of two steering vectors.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Below this magnitude the per-axis `sin` denominator is treated as zero and
/// the factor takes its limit value 1.
const SINGULAR_EPS: f64 = 1e-12;

/// UPA geometry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArrayConfig {
    m_h: usize,
    m_v: usize,
    d_over_lambda: f64,
}

impl ArrayConfig {
    pub fn new(m_h: usize, m_v: usize, d_over_lambda: f64) -> Result<Self> {
        if m_h == 0 || m_v == 0 {
            return Err(Error::InvalidArray(format!(
                "element counts must be positive, got {m_h}x{m_v}"
            )));
        }
        if !(d_over_lambda.is_finite() && d_over_lambda > 0.0) {
            return Err(Error::InvalidArray(format!(
                "element spacing must be positive, got {d_over_lambda}"
            )));
        }
        Ok(Self {
            m_h,
            m_v,
            d_over_lambda,
        })
    }

    /// Half-wavelength spacing.
    pub fn half_wavelength(m_h: usize, m_v: usize) -> Result<Self> {
        Self::new(m_h, m_v, 0.5)
    }

    pub fn m_h(&self) -> usize {
        self.m_h
    }

    pub fn m_v(&self) -> usize {
        self.m_v
    }

    pub fn d_over_lambda(&self) -> f64 {
        self.d_over_lambda
    }

    /// Total number of elements.
    pub fn elements(&self) -> usize {
        self.m_h * self.m_v
    }
}

/// Departure direction: azimuth `theta` and elevation `phi`, both in radians.
///
/// Canonical ranges are `theta` in `[0, 2*pi)` and `phi` in `[-pi/2, pi/2]`.
/// Users and paths produced by [`crate::channel`] additionally fold the
/// azimuth into `[0, pi]`, which leaves the steering vector unchanged since
/// it only depends on `cos(theta)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction {
    pub theta: f64,
    pub phi: f64,
}

impl Direction {
    pub const fn new(theta: f64, phi: f64) -> Self {
        Self { theta, phi }
    }

    pub fn from_degrees(theta_deg: f64, phi_deg: f64) -> Self {
        Self::new(theta_deg.to_radians(), phi_deg.to_radians())
    }

    /// Broadside of the array: both direction cosines are zero.
    pub const fn broadside() -> Self {
        Self::new(FRAC_PI_2, 0.0)
    }

    /// `(u_az, u_el)`.
    pub fn direction_cosines(&self) -> (f64, f64) {
        (self.theta.cos() * self.phi.cos(), self.phi.sin())
    }

    /// Wraps `theta` into `[0, 2*pi)`, then mirrors it into `[0, pi]`;
    /// clamps `phi` into `[-pi/2, pi/2]`.
    pub fn folded(&self) -> Self {
        let mut theta = self.theta.rem_euclid(2.0 * PI);
        if theta > PI {
            theta = 2.0 * PI - theta;
        }
        Self::new(theta, self.phi.clamp(-FRAC_PI_2, FRAC_PI_2))
    }
}

/// Unit-modulus array response toward a direction.
#[derive(Debug, Clone, PartialEq)]
pub struct SteeringVector {
    entries: Vec<Complex64>,
    direction: Direction,
}

impl SteeringVector {
    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn into_entries(self) -> Vec<Complex64> {
        self.entries
    }
}

/// `a(dir) = a_az ⊗ a_el`; entry `i * m_v + j` belongs to column `i`, row `j`.
pub fn steering_vector(cfg: &ArrayConfig, dir: Direction) -> SteeringVector {
    let (u_az, u_el) = dir.direction_cosines();
    let k = 2.0 * PI * cfg.d_over_lambda;
    let mut entries = Vec::with_capacity(cfg.elements());
    for i in 0..cfg.m_h {
        for j in 0..cfg.m_v {
            let phase = k * (i as f64 * u_az + j as f64 * u_el);
            entries.push(Complex64::from_polar(1.0, phase));
        }
    }
    SteeringVector {
        entries,
        direction: dir,
    }
}

/// `|sin(n x) / (n sin x)|` with the removable singularities at `x = k*pi`
/// mapped to their limit.
fn dirichlet_factor(n: usize, x: f64) -> f64 {
    if n == 1 {
        return 1.0;
    }
    // |sin(n(x + k*pi)) / sin(x + k*pi)| does not depend on k.
    let reduced = x - PI * (x / PI).round();
    let den = reduced.sin();
    if den.abs() < SINGULAR_EPS {
        return 1.0;
    }
    ((n as f64 * reduced).sin() / (n as f64 * den)).abs()
}

/// Normalized spatial interference `(1/M)|a(k)^H a(u)|`, evaluated through the
/// separable sin-ratio product. Symmetric in its two directions.
pub fn beta_metric(cfg: &ArrayConfig, dir_k: Direction, dir_u: Direction) -> f64 {
    let (az_k, el_k) = dir_k.direction_cosines();
    let (az_u, el_u) = dir_u.direction_cosines();
    let half = PI * cfg.d_over_lambda;
    // |delta| makes the result bit-identical under argument swap.
    let d_az = (az_k - az_u).abs();
    let d_el = (el_k - el_u).abs();
    dirichlet_factor(cfg.m_h, half * d_az) * dirichlet_factor(cfg.m_v, half * d_el)
}

/// Normalized pattern of a beam steered to `beam_dir`, seen from `probe_dir`.
pub fn array_factor(cfg: &ArrayConfig, beam_dir: Direction, probe_dir: Direction) -> f64 {
    beta_metric(cfg, probe_dir, beam_dir)
}

/// Beamwidth half-angles: offsets from the beam direction where the pattern
/// first drops to a given level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Beamwidth {
    pub omega_az: f64,
    pub omega_el: f64,
}

#[derive(Debug, Clone, Copy)]
enum Axis {
    Azimuth,
    Elevation,
}

const SCAN_STEP: f64 = 1e-4;
const BISECT_TOL: f64 = 1e-9;

fn probe(beam: Direction, axis: Axis, offset: f64) -> Direction {
    match axis {
        Axis::Azimuth => Direction::new(beam.theta + offset, beam.phi),
        Axis::Elevation => Direction::new(beam.theta, beam.phi + offset),
    }
}

/// First offset in `(0, pi/2]` times `sign` where the pattern is at or below
/// `level`, refined by bisection.
fn first_crossing(
    cfg: &ArrayConfig,
    beam: Direction,
    axis: Axis,
    sign: f64,
    level: f64,
) -> Option<f64> {
    let af = |t: f64| array_factor(cfg, beam, probe(beam, axis, sign * t));
    let steps = (FRAC_PI_2 / SCAN_STEP).ceil() as usize;
    let mut lo = 0.0;
    for s in 1..=steps {
        let hi = (s as f64 * SCAN_STEP).min(FRAC_PI_2);
        if af(hi) <= level {
            let (mut a, mut b) = (lo, hi);
            while b - a > BISECT_TOL {
                let mid = 0.5 * (a + b);
                if af(mid) <= level {
                    b = mid;
                } else {
                    a = mid;
                }
            }
            return Some(0.5 * (a + b));
        }
        lo = hi;
    }
    None
}

fn axis_width(cfg: &ArrayConfig, beam: Direction, axis: Axis, level: f64) -> Option<f64> {
    let plus = first_crossing(cfg, beam, axis, 1.0, level);
    let minus = first_crossing(cfg, beam, axis, -1.0, level);
    match (plus, minus) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    }
}

/// Smallest azimuth and elevation offsets (the other angle held at the beam
/// direction) at which `array_factor` first falls to `level`. Both signs of
/// offset are searched and the nearer crossing is reported.
///
/// `level = sqrt(1/2)` gives the 3 dB beamwidth.
pub fn beamwidth(cfg: &ArrayConfig, beam_dir: Direction, level: f64) -> Result<Beamwidth> {
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::InvalidLevel(level));
    }
    let omega_az = axis_width(cfg, beam_dir, Axis::Azimuth, level).ok_or(Error::NoCrossing {
        axis: "azimuth",
        level,
    })?;
    let omega_el = axis_width(cfg, beam_dir, Axis::Elevation, level).ok_or(Error::NoCrossing {
        axis: "elevation",
        level,
    })?;
    Ok(Beamwidth { omega_az, omega_el })
}

/// `a^H b` for equal-length vectors.
pub(crate) fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}
