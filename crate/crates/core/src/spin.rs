//! Spin-1/2 components, the two-qubit singlet and the `delta` operator
//! `sx(x)sx + sy(x)sy + sz(x)sz`.
//!
//! Two-qubit vectors use the lexicographic product basis
//! `|++>, |+->, |-+>, |-->`, with `|+>` the `+1` eigenvector of `sz`.

use std::f64::consts::FRAC_1_SQRT_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, StateVector, C64, ONE, ZERO};
use crate::rep::OperatorBundle;
use crate::tolerance::Tolerances;

/// Value of the degenerate `delta` eigenvalue as it is sometimes quoted.
/// Kept only so reports can flag it against the computed value.
pub const QUOTED_TRIPLET_VALUE: f64 = -1.0;

/// Eigenvalue of `delta` on the singlet.
pub const SINGLET_VALUE: f64 = -3.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 3]", into = "[f64; 3]")]
pub struct SpinDirection {
    x: f64,
    y: f64,
    z: f64,
}

impl SpinDirection {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        Self::with_tolerance(x, y, z, Tolerances::default().unit_vector)
    }

    pub fn with_tolerance(x: f64, y: f64, z: f64, tol: f64) -> Result<Self> {
        let norm = (x * x + y * y + z * z).sqrt();
        if !norm.is_finite() || (norm - 1.0).abs() > tol {
            return Err(Error::NotUnitVector(norm));
        }
        Ok(Self { x, y, z })
    }

    /// Normalizes any nonzero vector.
    pub fn normalized(x: f64, y: f64, z: f64) -> Result<Self> {
        let norm = (x * x + y * y + z * z).sqrt();
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::NotUnitVector(norm));
        }
        Ok(Self {
            x: x / norm,
            y: y / norm,
            z: z / norm,
        })
    }

    pub fn x_axis() -> Self {
        Self {
            x: 1.0,
            y: 0.0,
            z: 0.0,
        }
    }

    pub fn y_axis() -> Self {
        Self {
            x: 0.0,
            y: 1.0,
            z: 0.0,
        }
    }

    pub fn z_axis() -> Self {
        Self {
            x: 0.0,
            y: 0.0,
            z: 1.0,
        }
    }

    pub fn components(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn is_parallel(&self, other: &SpinDirection, tol: f64) -> bool {
        let d = self.x * other.x + self.y * other.y + self.z * other.z;
        (d.abs() - 1.0).abs() <= tol
    }

    /// Points on a latitude/longitude grid of the sphere, poles included once.
    pub fn grid(steps: usize) -> Vec<SpinDirection> {
        let steps = steps.max(1);
        let mut out = vec![Self::z_axis()];
        for i in 1..steps {
            let theta = std::f64::consts::PI * i as f64 / steps as f64;
            for j in 0..2 * steps {
                let phi = std::f64::consts::PI * j as f64 / steps as f64;
                out.push(Self {
                    x: theta.sin() * phi.cos(),
                    y: theta.sin() * phi.sin(),
                    z: theta.cos(),
                });
            }
        }
        out.push(Self {
            x: 0.0,
            y: 0.0,
            z: -1.0,
        });
        out
    }
}

impl TryFrom<[f64; 3]> for SpinDirection {
    type Error = Error;

    fn try_from(v: [f64; 3]) -> Result<Self> {
        Self::new(v[0], v[1], v[2])
    }
}

impl From<SpinDirection> for [f64; 3] {
    fn from(d: SpinDirection) -> Self {
        d.components()
    }
}

pub fn sigma_x() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).expect("2x2")
}

pub fn sigma_y() -> ComplexMatrix {
    let i = C64::new(0.0, 1.0);
    ComplexMatrix::from_rows(vec![vec![ZERO, -i], vec![i, ZERO]]).expect("2x2")
}

pub fn sigma_z() -> ComplexMatrix {
    ComplexMatrix::diagonal(&[1.0, -1.0])
}

/// `a . sigma`.
pub fn spin_component_operator(a: &SpinDirection) -> ComplexMatrix {
    let [x, y, z] = a.components();
    sigma_x()
        .scale(C64::new(x, 0.0))
        .add(&sigma_y().scale(C64::new(y, 0.0)))
        .and_then(|m| m.add(&sigma_z().scale(C64::new(z, 0.0))))
        .expect("2x2")
}

pub fn spin_component_bundle(
    name: &str,
    a: &SpinDirection,
    tol: &Tolerances,
) -> Result<OperatorBundle> {
    OperatorBundle::from_hermitian(name, spin_component_operator(a), tol)
}

/// `(|+-> - |-+>)/sqrt(2)`.
pub fn singlet() -> StateVector {
    StateVector::from_real(&[0.0, FRAC_1_SQRT_2, -FRAC_1_SQRT_2, 0.0])
}

/// Exchanges the two tensor factors.
pub fn swap_matrix() -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(4, 4);
    for a in 0..2 {
        for b in 0..2 {
            m[(2 * b + a, 2 * a + b)] = ONE;
        }
    }
    m
}

pub fn delta_matrix() -> ComplexMatrix {
    let xx = sigma_x().tensor(&sigma_x());
    let yy = sigma_y().tensor(&sigma_y());
    let zz = sigma_z().tensor(&sigma_z());
    xx.add(&yy).and_then(|m| m.add(&zz)).expect("4x4")
}

pub fn delta_operator(tol: &Tolerances) -> Result<OperatorBundle> {
    OperatorBundle::from_hermitian("delta", delta_matrix(), tol)
}

/// `|| (a.sigma (x) I + I (x) a.sigma) |s> ||`.
pub fn anticorrelation_residual(a: &SpinDirection, state: &StateVector) -> Result<f64> {
    let s = spin_component_operator(a);
    let id = ComplexMatrix::identity(2);
    let total = s.tensor(&id).add(&id.tensor(&s))?;
    Ok(total.apply(state)?.norm())
}

/// `|| D s - lambda s ||`.
pub fn eigen_residual(d: &ComplexMatrix, state: &StateVector, lambda: f64) -> Result<f64> {
    Ok(d.apply(state)?
        .sub(&state.scale(C64::new(lambda, 0.0)))?
        .norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axis_operators_are_paulis() {
        assert_eq!(spin_component_operator(&SpinDirection::z_axis()), sigma_z());
        assert_eq!(spin_component_operator(&SpinDirection::x_axis()), sigma_x());
    }

    #[test]
    fn non_unit_direction_is_rejected() {
        assert!(matches!(
            SpinDirection::new(1.0, 1.0, 0.0),
            Err(Error::NotUnitVector(_))
        ));
        assert!(SpinDirection::normalized(0.0, 0.0, 0.0).is_err());
        let d: std::result::Result<SpinDirection, _> = serde_json::from_str("[0.6, 0.8, 0.0]");
        assert!(d.is_ok());
        let bad: std::result::Result<SpinDirection, _> = serde_json::from_str("[1.0, 1.0, 0.0]");
        assert!(bad.is_err());
    }

    #[test]
    fn diagonal_direction_has_unit_eigenvalues() {
        let a = SpinDirection::normalized(1.0, 1.0, 1.0).unwrap();
        let b = spin_component_bundle("a", &a, &Tolerances::default()).unwrap();
        assert_eq!(b.multiplicities(), vec![1, 1]);
        assert!((b.values()[0] + 1.0).abs() < 1e-12);
        assert!((b.values()[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn singlet_is_unit_and_antisymmetric() {
        let s = singlet();
        assert!((s.norm() - 1.0).abs() < 1e-15);
        let swapped = swap_matrix().apply(&s).unwrap();
        assert!(swapped.add(&s).unwrap().norm() < 1e-15);
    }

    #[test]
    fn singlet_is_the_minus_three_eigenvector() {
        let r = eigen_residual(&delta_matrix(), &singlet(), SINGLET_VALUE).unwrap();
        assert!(r < 1e-12);
        let d = delta_operator(&Tolerances::default()).unwrap();
        assert_eq!(d.multiplicities(), vec![1, 3]);
        assert!((d.values()[0] - SINGLET_VALUE).abs() < 1e-10);
        assert!((d.values()[1] - QUOTED_TRIPLET_VALUE).abs() > 1.0);
    }

    #[test]
    fn anticorrelation_on_axes() {
        for a in [
            SpinDirection::x_axis(),
            SpinDirection::y_axis(),
            SpinDirection::z_axis(),
        ] {
            assert!(anticorrelation_residual(&a, &singlet()).unwrap() < 1e-15);
        }
    }

    #[test]
    fn grid_points_are_unit() {
        let g = SpinDirection::grid(4);
        assert_eq!(g.len(), 2 + 3 * 8);
        for d in g {
            let [x, y, z] = d.components();
            assert!(((x * x + y * y + z * z).sqrt() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn distinct_axes_do_not_commute() {
        let c = sigma_x().commutator(&sigma_z()).unwrap();
        assert!(c.max_abs() > 1.0);
        assert!(!SpinDirection::x_axis().is_parallel(&SpinDirection::z_axis(), 1e-12));
    }
}
