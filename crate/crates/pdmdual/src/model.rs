//! Scaled model: unit handling, the quadratic mass profile, the bounded
//! potential it generates, and uniform grids.
//!
//! Everything downstream of [`ModelParameters`] works in the dimensionless
//! position y = (m0 k / hbar^2)^(1/4) x with energies in units of hbar*omega.
//! In those units the mass profile is m(y) = 1 + gamma_tilde * y^2 and the
//! potential is V(y) = y^2 / (2 m(y)).

use crate::error::{Error, Result};

/// Physical inputs of the model. `gamma` deforms the mass and may carry
/// either sign; the oscillator constants must be positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParameters {
    hbar: f64,
    m0: f64,
    k: f64,
    gamma: f64,
}

impl ModelParameters {
    pub fn new(hbar: f64, m0: f64, k: f64, gamma: f64) -> Result<Self> {
        for (name, value) in [("hbar", hbar), ("m0", m0), ("k", k)] {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::NonPositiveParameter { name, value });
            }
        }
        if !gamma.is_finite() {
            return Err(Error::NonFiniteParameter {
                name: "gamma",
                value: gamma,
            });
        }
        Ok(Self { hbar, m0, k, gamma })
    }

    /// hbar = m0 = k = 1, so gamma and gamma_tilde coincide numerically.
    pub fn unit(gamma: f64) -> Result<Self> {
        Self::new(1.0, 1.0, 1.0, gamma)
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn m0(&self) -> f64 {
        self.m0
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// omega = sqrt(k / m0); omega^2 * m0 recovers k to machine precision.
    pub fn omega(&self) -> f64 {
        (self.k / self.m0).sqrt()
    }

    /// Dimensionless deformation gamma_tilde = gamma * hbar / sqrt(m0 k).
    pub fn gamma_tilde(&self) -> f64 {
        self.gamma * self.hbar / (self.m0 * self.k).sqrt()
    }

    /// Inverse of [`Self::gamma_tilde`] for the same unit system.
    pub fn gamma_from_tilde(&self, gamma_tilde: f64) -> f64 {
        gamma_tilde * (self.m0 * self.k).sqrt() / self.hbar
    }

    /// x -> y = (m0 k / hbar^2)^(1/4) x.
    pub fn scale_position(&self, x: f64) -> f64 {
        (self.m0 * self.k / (self.hbar * self.hbar)).powf(0.25) * x
    }

    /// y -> x, inverse of [`Self::scale_position`].
    pub fn unscale_position(&self, y: f64) -> f64 {
        y / (self.m0 * self.k / (self.hbar * self.hbar)).powf(0.25)
    }
}

/// m(y) = 1 + gamma_tilde y^2 in scaled units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MassProfile {
    gamma_tilde: f64,
}

impl MassProfile {
    pub fn new(gamma_tilde: f64) -> Result<Self> {
        if !gamma_tilde.is_finite() {
            return Err(Error::NonFiniteParameter {
                name: "gamma_tilde",
                value: gamma_tilde,
            });
        }
        Ok(Self { gamma_tilde })
    }

    pub fn gamma_tilde(&self) -> f64 {
        self.gamma_tilde
    }

    pub fn m(&self, y: f64) -> f64 {
        1.0 + self.gamma_tilde * y * y
    }

    pub fn m_prime(&self, y: f64) -> f64 {
        2.0 * self.gamma_tilde * y
    }

    pub fn m_double_prime(&self) -> f64 {
        2.0 * self.gamma_tilde
    }

    /// Open interval on which m(y) > 0: all of R for gamma_tilde >= 0,
    /// (-1/sqrt(|gamma_tilde|), +1/sqrt(|gamma_tilde|)) otherwise.
    pub fn positivity_domain(&self) -> PositivityDomain {
        if self.gamma_tilde >= 0.0 {
            PositivityDomain {
                lower: f64::NEG_INFINITY,
                upper: f64::INFINITY,
            }
        } else {
            let edge = 1.0 / (-self.gamma_tilde).sqrt();
            PositivityDomain {
                lower: -edge,
                upper: edge,
            }
        }
    }
}

/// Open interval of mass positivity. Endpoints are excluded: m vanishes there
/// and the operators degenerate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PositivityDomain {
    pub lower: f64,
    pub upper: f64,
}

impl PositivityDomain {
    pub fn is_unbounded(&self) -> bool {
        self.lower == f64::NEG_INFINITY && self.upper == f64::INFINITY
    }

    pub fn contains(&self, y: f64) -> bool {
        self.lower < y && y < self.upper
    }

    pub fn check(&self, y: f64) -> Result<()> {
        if self.contains(y) {
            Ok(())
        } else {
            Err(Error::OutsideDomain {
                y,
                lower: self.lower,
                upper: self.upper,
            })
        }
    }

    pub fn contains_grid(&self, grid: &Grid) -> bool {
        // Uniform grid: checking the ends covers every node.
        self.contains(grid.y_min()) && self.contains(grid.node(grid.n_points() - 1))
    }
}

/// V(y) = y^2 / (2 (1 + gamma_tilde y^2)). Bounded above by 1/(2 gamma_tilde)
/// when the deformation is positive; the plain oscillator limit otherwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialProfile {
    mass: MassProfile,
}

impl PotentialProfile {
    pub fn new(gamma_tilde: f64) -> Result<Self> {
        Ok(Self {
            mass: MassProfile::new(gamma_tilde)?,
        })
    }

    pub fn from_mass(mass: MassProfile) -> Self {
        Self { mass }
    }

    pub fn gamma_tilde(&self) -> f64 {
        self.mass.gamma_tilde()
    }

    pub fn v(&self, y: f64) -> f64 {
        y * y / (2.0 * self.mass.m(y))
    }

    /// Supremum 1/(2 gamma_tilde) for a positive deformation; `None` when the
    /// potential is unbounded (gamma_tilde <= 0).
    pub fn supremum(&self) -> Option<f64> {
        let g = self.mass.gamma_tilde();
        (g > 0.0).then(|| 1.0 / (2.0 * g))
    }
}

/// Uniform grid on [y_min, y_max] with n_points nodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    y_min: f64,
    y_max: f64,
    n_points: usize,
    h: f64,
}

impl Grid {
    pub fn new(y_min: f64, y_max: f64, n_points: usize) -> Result<Self> {
        if !(y_min.is_finite() && y_max.is_finite()) || y_min >= y_max {
            return Err(Error::GridBounds { y_min, y_max });
        }
        if n_points < 3 {
            return Err(Error::GridTooSmall {
                min: 3,
                got: n_points,
            });
        }
        let h = (y_max - y_min) / (n_points - 1) as f64;
        Ok(Self {
            y_min,
            y_max,
            n_points,
            h,
        })
    }

    pub fn y_min(&self) -> f64 {
        self.y_min
    }

    pub fn y_max(&self) -> f64 {
        self.y_max
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn spacing(&self) -> f64 {
        self.h
    }

    pub fn node(&self, i: usize) -> f64 {
        debug_assert!(i < self.n_points);
        self.y_min + i as f64 * self.h
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n_points).map(|i| self.node(i)).collect()
    }

    /// Same span, spacing halved: 2(n-1)+1 nodes. Every coarse node is kept.
    pub fn refined(&self) -> Grid {
        Grid::new(self.y_min, self.y_max, 2 * (self.n_points - 1) + 1)
            .expect("refining a valid grid cannot fail")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn scaling_example() {
        // hbar = 1, m0 = 2, k = 8 gives (m0 k)^(1/4) = 2, so y = 2x.
        let p = ModelParameters::new(1.0, 2.0, 8.0, 0.3).unwrap();
        assert_relative_eq!(p.scale_position(1.0), 2.0, max_relative = 1e-15);
        assert_relative_eq!(p.unscale_position(2.0), 1.0, max_relative = 1e-15);
        assert_eq!(p.omega(), 2.0);
        assert_relative_eq!(p.omega() * p.omega() * p.m0(), p.k(), max_relative = 4e-16);
    }

    #[test]
    fn gamma_tilde_round_trip() {
        let p = ModelParameters::new(1.5, 0.7, 3.2, -0.4).unwrap();
        let gt = p.gamma_tilde();
        assert_relative_eq!(p.gamma_from_tilde(gt), -0.4, max_relative = 1e-14);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(ModelParameters::new(0.0, 1.0, 1.0, 0.0).is_err());
        assert!(ModelParameters::new(1.0, -1.0, 1.0, 0.0).is_err());
        assert!(ModelParameters::new(1.0, 1.0, f64::NAN, 0.0).is_err());
        assert!(ModelParameters::new(1.0, 1.0, 1.0, f64::INFINITY).is_err());
    }

    #[test]
    fn mass_values() {
        let m = MassProfile::new(0.1).unwrap();
        assert_eq!(m.m(0.0), 1.0);
        assert_relative_eq!(m.m(2.0), 1.4, max_relative = 1e-15);
        assert_relative_eq!(m.m_prime(2.0), 0.4, max_relative = 1e-15);
        assert_relative_eq!(m.m_double_prime(), 0.2, max_relative = 1e-15);
    }

    #[test]
    fn positivity_domain_shapes() {
        assert!(MassProfile::new(0.1)
            .unwrap()
            .positivity_domain()
            .is_unbounded());
        assert!(MassProfile::new(0.0)
            .unwrap()
            .positivity_domain()
            .is_unbounded());

        let d = MassProfile::new(-0.25).unwrap().positivity_domain();
        assert_relative_eq!(d.lower, -2.0, max_relative = 1e-15);
        assert_relative_eq!(d.upper, 2.0, max_relative = 1e-15);
        assert!(d.contains(1.99));
        assert!(!d.contains(2.0)); // endpoint excluded, m vanishes there
        assert!(d.check(2.5).is_err());
    }

    #[test]
    fn potential_values() {
        let v = PotentialProfile::new(0.1).unwrap();
        assert_eq!(v.v(0.0), 0.0);
        assert_relative_eq!(v.v(2.0), 4.0 / 2.8, max_relative = 1e-15);
        assert_relative_eq!(v.supremum().unwrap(), 5.0, max_relative = 1e-15);

        let harmonic = PotentialProfile::new(0.0).unwrap();
        assert_eq!(harmonic.v(3.0), 4.5);
        assert!(harmonic.supremum().is_none());
    }

    #[test]
    fn grid_basics() {
        let g = Grid::new(-12.0, 12.0, 4001).unwrap();
        assert_relative_eq!(g.spacing(), 6e-3, max_relative = 1e-15);
        assert_eq!(g.node(0), -12.0);
        assert_relative_eq!(g.node(4000), 12.0, max_relative = 1e-15);
        assert_eq!(g.refined().n_points(), 8001);

        assert!(Grid::new(1.0, -1.0, 11).is_err());
        assert!(Grid::new(0.0, 1.0, 2).is_err());
    }
}
