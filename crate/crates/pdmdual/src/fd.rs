//! Centered finite-difference stencils shared by the operator applications.

use num_complex::Complex64;

/// Interior stencil order: 3-point is O(h^2), 5-point is O(h^4).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stencil {
    ThreePoint,
    FivePoint,
}

impl Stencil {
    /// Nodes at each end of the grid the stencil cannot reach.
    pub fn margin(self) -> usize {
        match self {
            Stencil::ThreePoint => 1,
            Stencil::FivePoint => 2,
        }
    }
}

pub(crate) fn deriv1(v: &[Complex64], i: usize, h: f64, stencil: Stencil) -> Complex64 {
    match stencil {
        Stencil::ThreePoint => (v[i + 1] - v[i - 1]) / (2.0 * h),
        Stencil::FivePoint => (v[i - 2] - 8.0 * v[i - 1] + 8.0 * v[i + 1] - v[i + 2]) / (12.0 * h),
    }
}

pub(crate) fn deriv2(v: &[Complex64], i: usize, h: f64, stencil: Stencil) -> Complex64 {
    match stencil {
        Stencil::ThreePoint => (v[i - 1] - 2.0 * v[i] + v[i + 1]) / (h * h),
        Stencil::FivePoint => {
            (-v[i - 2] + 16.0 * v[i - 1] - 30.0 * v[i] + 16.0 * v[i + 1] - v[i + 2])
                / (12.0 * h * h)
        }
    }
}

/// Real-sample convenience wrapper used by the flux-divergence check.
pub(crate) fn deriv1_real(v: &[f64], i: usize, h: f64, stencil: Stencil) -> f64 {
    match stencil {
        Stencil::ThreePoint => (v[i + 1] - v[i - 1]) / (2.0 * h),
        Stencil::FivePoint => (v[i - 2] - 8.0 * v[i - 1] + 8.0 * v[i + 1] - v[i + 2]) / (12.0 * h),
    }
}
