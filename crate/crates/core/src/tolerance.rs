//! Numerical thresholds used by every check. Each scenario may override any
//! field; the values actually used are written into every report.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Max |A - A^H| entry for a matrix to count as Hermitian.
    pub hermitian: f64,
    /// Max |U^H U - I| entry.
    pub unitary: f64,
    /// Max phase-corrected deviation from `U(a)U(b) = c U(ab)`.
    pub projective: f64,
    /// Spectral reconstruction error of the eigensolver.
    pub reconstruction: f64,
    /// Eigenvalues closer than this form one degenerate cluster.
    pub degeneracy_gap: f64,
    /// Minimum distance between distinct coherent states.
    pub coherent_distance: f64,
    /// Coherent states count as phase-equal when `|<a|b>| >= 1 - this`.
    pub coherent_overlap: f64,
    /// Max normalized overlap between coherent states with different values.
    pub orthogonality: f64,
    /// Projector orthogonality and completeness residuals.
    pub projector: f64,
    /// Commutant test for irreducibility.
    pub irreducibility: f64,
    /// `|| T(t)^H A T(t) - A' ||_max`.
    pub conjugation: f64,
    /// Basis expansion reconstruction and normalization.
    pub expansion: f64,
    /// Singlet eigen-equation and anticorrelation residuals.
    pub singlet: f64,
    /// Accepted deviation of a spin direction from unit length.
    pub unit_vector: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            hermitian: 1e-10,
            unitary: 1e-10,
            projective: 1e-8,
            reconstruction: 1e-8,
            degeneracy_gap: 1e-8,
            coherent_distance: 1e-6,
            coherent_overlap: 1e-8,
            orthogonality: 1e-8,
            projector: 1e-10,
            irreducibility: 1e-8,
            conjugation: 1e-8,
            expansion: 1e-10,
            singlet: 1e-10,
            unit_vector: 1e-12,
        }
    }
}

impl Tolerances {
    /// Multiplies every threshold by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            hermitian: self.hermitian * factor,
            unitary: self.unitary * factor,
            projective: self.projective * factor,
            reconstruction: self.reconstruction * factor,
            degeneracy_gap: self.degeneracy_gap * factor,
            coherent_distance: self.coherent_distance * factor,
            coherent_overlap: self.coherent_overlap * factor,
            orthogonality: self.orthogonality * factor,
            projector: self.projector * factor,
            irreducibility: self.irreducibility * factor,
            conjugation: self.conjugation * factor,
            expansion: self.expansion * factor,
            singlet: self.singlet * factor,
            unit_vector: self.unit_vector * factor,
        }
    }
}
