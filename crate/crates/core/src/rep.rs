//! Unitary representations, coherent families, and the operators they induce
//! on conceptual variables.
//!
//! An operator for a variable is assembled from the coherent states
//! `U(g)|theta0>`: each state carries the value `g(v0)` of the base value `v0`,
//! states are grouped by the variable's value, and the operator is
//! `sum_u u P_u` with `P_u` the projector onto the span of the group for `u`.
//! Only orthogonal groupings that span the whole space are accepted.

use std::f64::consts::PI;
use std::sync::Arc;

use serde::Serialize;

use crate::action::{induced_group, InducedAction};
use crate::error::{Error, Result};
use crate::linalg::{eigh_with, ComplexMatrix, SpectralData, StateVector, C64, ONE};
use crate::perm::{Permutation, PermutationGroup};
use crate::spaces::{dominates, ConceptualVariable, PointSpace};
use crate::tolerance::Tolerances;

/// A map from every element of a permutation group to a unitary matrix.
#[derive(Debug, Clone)]
pub struct UnitaryRep {
    group: PermutationGroup,
    dim: usize,
    matrices: Vec<ComplexMatrix>,
}

/// `min_c || X - c Y ||_max` over unit-modulus `c`, with `c` taken from the
/// Hilbert-Schmidt overlap of `Y` and `X`.
fn phase_insensitive_diff(x: &ComplexMatrix, y: &ComplexMatrix) -> f64 {
    let overlap = y.adjoint().checked_mul(x).expect("same shape").trace();
    let phase = if overlap.norm() > 0.0 {
        overlap / overlap.norm()
    } else {
        ONE
    };
    x.max_abs_diff(&y.scale(phase)).expect("same shape")
}

impl UnitaryRep {
    pub fn new(
        group: PermutationGroup,
        matrices: Vec<ComplexMatrix>,
        tol: &Tolerances,
    ) -> Result<Self> {
        if matrices.len() != group.order() {
            return Err(Error::InvalidRepresentation(format!(
                "{} matrices for a group of order {}",
                matrices.len(),
                group.order()
            )));
        }
        let dim = matrices.first().map_or(0, ComplexMatrix::rows);
        if dim == 0 || matrices.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::InvalidRepresentation(
                "matrices must share one square shape".into(),
            ));
        }
        let rep = Self {
            group,
            dim,
            matrices,
        };
        let u = rep.unitarity_residual();
        if u > tol.unitary {
            return Err(Error::InvalidRepresentation(format!(
                "matrix not unitary (residual {u:e})"
            )));
        }
        let id = rep.matrices[0].max_abs_diff(&ComplexMatrix::identity(dim))?;
        if id > tol.unitary {
            return Err(Error::InvalidRepresentation(format!(
                "identity is not represented by I (residual {id:e})"
            )));
        }
        let p = rep.projective_residual();
        if p > tol.projective {
            return Err(Error::InvalidRepresentation(format!(
                "not a homomorphism up to phase (residual {p:e})"
            )));
        }
        Ok(rep)
    }

    /// Extends generator matrices to the whole group along a breadth-first
    /// word search, rejecting inconsistent relations.
    pub fn from_generators(
        degree: usize,
        generators: Vec<(Permutation, ComplexMatrix)>,
        tol: &Tolerances,
    ) -> Result<Self> {
        let group = PermutationGroup::generate(
            degree,
            generators.iter().map(|(p, _)| p.clone()).collect(),
        )?;
        let dim = match generators.first() {
            Some((_, m)) => m.rows(),
            None => 1,
        };
        let mut mats: Vec<Option<ComplexMatrix>> = vec![None; group.order()];
        mats[0] = Some(ComplexMatrix::identity(dim));
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let current = mats[i].clone().expect("queued elements are assigned");
            for (p, m) in &generators {
                let j = group
                    .index_of(&p.compose(&group.elements()[i]))
                    .expect("closure");
                let candidate = m.checked_mul(&current)?;
                match &mats[j] {
                    None => {
                        mats[j] = Some(candidate);
                        queue.push_back(j);
                    }
                    Some(existing) => {
                        let d = phase_insensitive_diff(&candidate, existing);
                        if d > tol.projective {
                            return Err(Error::InvalidRepresentation(format!(
                                "generator matrices violate a group relation at {} (residual {d:e})",
                                group.elements()[j]
                            )));
                        }
                    }
                }
            }
        }
        let matrices = mats
            .into_iter()
            .map(|m| m.expect("every element reached"))
            .collect();
        Self::new(group, matrices, tol)
    }

    pub fn group(&self) -> &PermutationGroup {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrices(&self) -> &[ComplexMatrix] {
        &self.matrices
    }

    pub fn matrix_at(&self, index: usize) -> &ComplexMatrix {
        &self.matrices[index]
    }

    pub fn matrix(&self, g: &Permutation) -> Option<&ComplexMatrix> {
        self.group.index_of(g).map(|i| &self.matrices[i])
    }

    pub fn unitarity_residual(&self) -> f64 {
        self.matrices
            .iter()
            .map(ComplexMatrix::unitarity_residual)
            .fold(0.0, f64::max)
    }

    /// Worst phase-corrected deviation of `U(a)U(b)` from `U(ab)`.
    pub fn projective_residual(&self) -> f64 {
        let els = self.group.elements();
        let mut worst: f64 = 0.0;
        for (i, a) in els.iter().enumerate() {
            for (j, b) in els.iter().enumerate() {
                let ab = self.group.index_of(&a.compose(b)).expect("closed");
                let prod = &self.matrices[i] * &self.matrices[j];
                worst = worst.max(phase_insensitive_diff(&prod, &self.matrices[ab]));
            }
        }
        worst
    }

    /// Dimension of the commutant, `(1/|G|) sum_g |tr U(g)|^2`; equals 1
    /// exactly for irreducible representations.
    pub fn commutant_dimension(&self) -> f64 {
        self.matrices
            .iter()
            .map(|m| m.trace().norm_sqr())
            .sum::<f64>()
            / self.group.order() as f64
    }

    pub fn is_irreducible(&self, tol: &Tolerances) -> bool {
        (self.commutant_dimension() - 1.0).abs() <= tol.irreducibility
    }

    /// `T(k) = U(hom(k))` on the source group of `hom`.
    pub fn pullback(&self, induced: &InducedAction, tol: &Tolerances) -> Result<UnitaryRep> {
        if induced.group != self.group {
            return Err(Error::InvalidRepresentation(
                "representation group differs from the homomorphism target".into(),
            ));
        }
        let matrices = (0..induced.hom.source().order())
            .map(|i| {
                let g = &induced.group.elements()[induced.hom.image_index(i)];
                self.matrix(g).expect("same group").clone()
            })
            .collect();
        UnitaryRep::new(induced.hom.source().clone(), matrices, tol)
    }

    /// Multiplies the matrix of element `i` by `exp(i phases[i])`. The
    /// identity keeps its matrix.
    pub fn with_phases(&self, phases: &[f64]) -> UnitaryRep {
        let matrices = self
            .matrices
            .iter()
            .enumerate()
            .map(|(i, m)| {
                if i == 0 {
                    m.clone()
                } else {
                    m.scale(C64::from_polar(1.0, phases[i % phases.len().max(1)]))
                }
            })
            .collect();
        UnitaryRep {
            group: self.group.clone(),
            dim: self.dim,
            matrices,
        }
    }
}

/// The two-element value swap on `{+1, -1}` (value index 0 is `+1`), with
/// `U(g)|v> = e^{-iv}|gv>`, i.e. `U(g) = [[0, e^{i}], [e^{-i}, 0]]`.
pub fn qubit_rep() -> UnitaryRep {
    let group = PermutationGroup::generate(2, vec![Permutation::new(vec![1, 0]).expect("swap")])
        .expect("order 2");
    let mut ug = ComplexMatrix::zeros(2, 2);
    // column for |+1>: e^{-i}|-1>; column for |-1>: e^{+i}|+1>
    ug[(1, 0)] = C64::from_polar(1.0, -1.0);
    ug[(0, 1)] = C64::from_polar(1.0, 1.0);
    UnitaryRep::new(
        group,
        vec![ComplexMatrix::identity(2), ug],
        &Tolerances::default(),
    )
    .expect("qubit representation is unitary")
}

/// Unitary DFT matrix `F_jk = exp(2 pi i jk/n)/sqrt(n)`.
pub fn dft_matrix(n: usize) -> ComplexMatrix {
    let mut f = ComplexMatrix::zeros(n, n);
    let norm = 1.0 / (n as f64).sqrt();
    for j in 0..n {
        for k in 0..n {
            f[(j, k)] = C64::from_polar(norm, 2.0 * PI * ((j * k) % n) as f64 / n as f64);
        }
    }
    f
}

/// `Z_n` with `U(s) = F^H D^s F`, `D = diag(exp(2 pi i k/n))`; this moves
/// basis state `|b>` to `|b + s>`.
pub fn cyclic_dft_rep(n: usize) -> Result<UnitaryRep> {
    if n < 2 {
        return Err(Error::Precondition(format!(
            "cyclic representation needs n >= 2, got {n}"
        )));
    }
    let group = PermutationGroup::cyclic(n);
    let f = dft_matrix(n);
    let fh = f.adjoint();
    let matrices = group
        .elements()
        .iter()
        .map(|g| {
            let s = g.apply(0);
            let d = {
                let mut d = ComplexMatrix::zeros(n, n);
                for k in 0..n {
                    d[(k, k)] = C64::from_polar(1.0, 2.0 * PI * ((k * s) % n) as f64 / n as f64);
                }
                d
            };
            &(&fh * &d) * &f
        })
        .collect();
    UnitaryRep::new(group, matrices, &Tolerances::default())
}

/// The orbit `U(g)|theta0>` of a base state whose value index is `base_value`.
#[derive(Debug, Clone)]
pub struct CoherentFamily {
    rep: UnitaryRep,
    base: StateVector,
    base_value: usize,
    states: Vec<StateVector>,
}

impl CoherentFamily {
    pub fn new(rep: UnitaryRep, base: StateVector, base_value: usize) -> Result<Self> {
        if base.dim() != rep.dim() {
            return Err(Error::DimensionMismatch(format!(
                "base state has dimension {}, representation {}",
                base.dim(),
                rep.dim()
            )));
        }
        if !base.is_finite() || base.norm() == 0.0 {
            return Err(Error::ZeroBaseState);
        }
        if base_value >= rep.group().degree() {
            return Err(Error::Precondition(format!(
                "base value index {base_value} outside the {}-point value space",
                rep.group().degree()
            )));
        }
        let states = rep
            .matrices()
            .iter()
            .map(|m| m.apply(&base))
            .collect::<Result<_>>()?;
        Ok(Self {
            rep,
            base,
            base_value,
            states,
        })
    }

    pub fn rep(&self) -> &UnitaryRep {
        &self.rep
    }

    pub fn base(&self) -> &StateVector {
        &self.base
    }

    pub fn base_value(&self) -> usize {
        self.base_value
    }

    pub fn states(&self) -> &[StateVector] {
        &self.states
    }

    /// Value index carried by the coherent state of element `index`.
    pub fn value_index(&self, index: usize) -> usize {
        self.rep.group().elements()[index].apply(self.base_value)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum Injectivity {
    Injective {
        min_distance: f64,
        max_overlap: f64,
    },
    Collision {
        first: usize,
        second: usize,
        distance: f64,
        overlap: f64,
    },
}

impl Injectivity {
    pub fn is_injective(&self) -> bool {
        matches!(self, Injectivity::Injective { .. })
    }
}

/// Distinct elements must give states that are neither close nor equal up
/// to a global phase.
pub fn check_coherent_injectivity(fam: &CoherentFamily, tol: &Tolerances) -> Injectivity {
    let states = fam.states();
    let mut min_distance = f64::INFINITY;
    let mut max_overlap: f64 = 0.0;
    for i in 0..states.len() {
        for j in i + 1..states.len() {
            let distance = states[i].sub(&states[j]).expect("same dim").norm();
            let overlap = states[i].inner(&states[j]).expect("same dim").norm()
                / (states[i].norm() * states[j].norm());
            if distance <= tol.coherent_distance || overlap >= 1.0 - tol.coherent_overlap {
                return Injectivity::Collision {
                    first: i,
                    second: j,
                    distance,
                    overlap,
                };
            }
            min_distance = min_distance.min(distance);
            max_overlap = max_overlap.max(overlap);
        }
    }
    Injectivity::Injective {
        min_distance,
        max_overlap,
    }
}

/// One eigenspace together with its question-and-answer reading.
#[derive(Debug, Clone)]
pub struct Eigenspace {
    pub value: f64,
    pub multiplicity: usize,
    pub projector: ComplexMatrix,
    pub question: String,
    pub answer: String,
}

/// A Hermitian operator for a variable, its spectral data and eigenspaces in
/// ascending value order.
#[derive(Debug, Clone)]
pub struct OperatorBundle {
    name: String,
    operator: ComplexMatrix,
    spectral: SpectralData,
    eigenspaces: Vec<Eigenspace>,
}

fn qa(name: &str, value: f64) -> (String, String) {
    (format!("What is {name}?"), format!("{name} = {value}"))
}

impl OperatorBundle {
    /// Eigenspaces read off a diagonalization of `matrix`.
    pub fn from_hermitian(
        name: impl Into<String>,
        matrix: ComplexMatrix,
        tol: &Tolerances,
    ) -> Result<Self> {
        let name = name.into();
        let spectral = eigh_with(&matrix, tol.hermitian, tol.degeneracy_gap)?;
        let eigenspaces = spectral
            .clusters
            .iter()
            .map(|c| {
                let (question, answer) = qa(&name, c.value);
                Eigenspace {
                    value: c.value,
                    multiplicity: c.multiplicity,
                    projector: c.projector.clone(),
                    question,
                    answer,
                }
            })
            .collect();
        Ok(Self {
            name,
            operator: matrix,
            spectral,
            eigenspaces,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Changes the operator's name; eigenspace labels keep the variable name.
    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn operator(&self) -> &ComplexMatrix {
        &self.operator
    }

    pub fn spectral(&self) -> &SpectralData {
        &self.spectral
    }

    pub fn eigenspaces(&self) -> &[Eigenspace] {
        &self.eigenspaces
    }

    pub fn dim(&self) -> usize {
        self.operator.rows()
    }

    pub fn values(&self) -> Vec<f64> {
        self.eigenspaces.iter().map(|e| e.value).collect()
    }

    pub fn multiplicities(&self) -> Vec<usize> {
        self.eigenspaces.iter().map(|e| e.multiplicity).collect()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.eigenspaces.iter().all(|e| e.multiplicity == 1)
    }

    pub fn eigenspace(&self, value: f64, tol: f64) -> Option<&Eigenspace> {
        self.eigenspaces
            .iter()
            .find(|e| (e.value - value).abs() <= tol)
    }

    /// Phase-fixed unit eigenvector for a simple eigenvalue.
    pub fn eigenvector(&self, value: f64, tol: f64) -> Result<StateVector> {
        let cluster = self
            .spectral
            .cluster_for(value, tol)
            .ok_or_else(|| Error::UnknownEigenvalue(value, self.name.clone()))?;
        if cluster.multiplicity != 1 {
            return Err(Error::DegenerateBasis(self.name.clone()));
        }
        Ok(self.spectral.eigenvector(cluster.start))
    }

    /// `|| sum_u P_u - I ||_max`.
    pub fn completeness_residual(&self) -> f64 {
        let n = self.dim();
        let sum = self
            .eigenspaces
            .iter()
            .fold(ComplexMatrix::zeros(n, n), |acc, e| {
                acc.add(&e.projector).expect("square")
            });
        sum.max_abs_diff(&ComplexMatrix::identity(n))
            .expect("square")
    }

    /// Worst `|| P_u P_v ||_max` over distinct eigenspaces and
    /// `|| P_u^2 - P_u ||_max`.
    pub fn orthogonality_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, a) in self.eigenspaces.iter().enumerate() {
            let sq = &a.projector * &a.projector;
            worst = worst.max(sq.max_abs_diff(&a.projector).expect("square"));
            for b in &self.eigenspaces[i + 1..] {
                worst = worst.max((&a.projector * &b.projector).max_abs());
            }
        }
        worst
    }

    /// Worst distance between the diagonalized eigenvalues and the declared
    /// eigenspace values (with multiplicity).
    pub fn spectrum_residual(&self) -> f64 {
        let declared: Vec<f64> = self
            .eigenspaces
            .iter()
            .flat_map(|e| std::iter::repeat_n(e.value, e.multiplicity))
            .collect();
        if declared.len() != self.spectral.eigenvalues.len() {
            return f64::INFINITY;
        }
        declared
            .iter()
            .zip(&self.spectral.eigenvalues)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Orthonormal basis of the span of `vectors` by modified Gram-Schmidt.
fn orthonormal_span(vectors: &[&StateVector], dim: usize) -> Vec<StateVector> {
    let mut basis: Vec<StateVector> = Vec::new();
    for v in vectors {
        let scale = v.norm();
        let mut w = (*v).clone();
        for e in &basis {
            let c = e.inner(&w).expect("same dim");
            w = w.sub(&e.scale(c)).expect("same dim");
        }
        let n = w.norm();
        if n > 1e-8 * scale.max(1e-300) {
            basis.push(w.scale(C64::new(1.0 / n, 0.0)));
        }
        if basis.len() == dim {
            break;
        }
    }
    basis
}

/// Builds `sum_u u P_u` for a variable defined on the representation's value
/// space.
pub fn build_operator(
    variable: &ConceptualVariable,
    fam: &CoherentFamily,
    tol: &Tolerances,
) -> Result<OperatorBundle> {
    let degree = fam.rep().group().degree();
    if variable.domain().len() != degree {
        return Err(Error::DimensionMismatch(format!(
            "`{}` has {} points but the representation acts on {degree} values",
            variable.name(),
            variable.domain().len()
        )));
    }
    if let Injectivity::Collision { first, second, .. } = check_coherent_injectivity(fam, tol) {
        return Err(Error::NotInjective { first, second });
    }
    let dim = fam.rep().dim();
    let labels: Vec<usize> = (0..fam.states().len())
        .map(|i| variable.value_index(fam.value_index(i)))
        .collect();

    let states = fam.states();
    let mut worst: f64 = 0.0;
    for i in 0..states.len() {
        for j in i + 1..states.len() {
            if labels[i] != labels[j] {
                let o = states[i].inner(&states[j])?.norm() / (states[i].norm() * states[j].norm());
                worst = worst.max(o);
            }
        }
    }
    if worst > tol.orthogonality {
        return Err(Error::NonOrthogonalGrouping(worst));
    }

    let mut spaces: Vec<(usize, ComplexMatrix, usize)> = Vec::new();
    let mut rank = 0;
    for u in 0..variable.value_count() {
        let group: Vec<&StateVector> = states
            .iter()
            .zip(&labels)
            .filter(|(_, &l)| l == u)
            .map(|(s, _)| s)
            .collect();
        if group.is_empty() {
            return Err(Error::Precondition(format!(
                "value {} of `{}` carries no coherent state",
                variable.values()[u],
                variable.name()
            )));
        }
        let basis = orthonormal_span(&group, dim);
        let mut p = ComplexMatrix::zeros(dim, dim);
        for e in &basis {
            p = p.add(&ComplexMatrix::outer(e, e))?;
        }
        rank += basis.len();
        spaces.push((u, p, basis.len()));
    }
    if rank != dim {
        return Err(Error::IncompleteSpan { rank, dim });
    }
    spaces.sort_by(|a, b| variable.values()[a.0].total_cmp(&variable.values()[b.0]));

    let mut operator = ComplexMatrix::zeros(dim, dim);
    let mut eigenspaces = Vec::with_capacity(spaces.len());
    for (u, p, mult) in spaces {
        let value = variable.values()[u];
        operator = operator.add(&p.scale(C64::new(value, 0.0)))?;
        let (question, answer) = qa(variable.name(), value);
        eigenspaces.push(Eigenspace {
            value,
            multiplicity: mult,
            projector: p,
            question,
            answer,
        });
    }
    let spectral = eigh_with(&operator, tol.hermitian, tol.degeneracy_gap)?;
    Ok(OperatorBundle {
        name: variable.name().to_string(),
        operator,
        spectral,
        eigenspaces,
    })
}

/// `|| T^H A T - A' ||_max`.
pub fn conjugation_residual(
    t: &ComplexMatrix,
    a: &ComplexMatrix,
    a_prime: &ComplexMatrix,
) -> Result<f64> {
    let lhs = t.adjoint().checked_mul(&a.checked_mul(t)?)?;
    lhs.max_abs_diff(a_prime)
}

#[derive(Debug, Clone, Serialize)]
pub struct ConjugationRecord {
    pub t: Permutation,
    pub residual: f64,
}

/// A maximal variable on the total space together with the group it is
/// permissible under and a coherent family for the induced group. Every
/// variable that is a function of `theta` gets its operator from this family.
#[derive(Debug, Clone)]
pub struct OperatorPipeline {
    theta: ConceptualVariable,
    group: PermutationGroup,
    induced: InducedAction,
    value_space: Arc<PointSpace>,
    family: CoherentFamily,
    tol: Tolerances,
}

impl OperatorPipeline {
    pub fn new(
        theta: ConceptualVariable,
        group: PermutationGroup,
        rep: UnitaryRep,
        base: Option<StateVector>,
        base_value: usize,
        tol: Tolerances,
    ) -> Result<Self> {
        let induced = induced_group(&theta, &group)?;
        if induced.group != *rep.group() {
            return Err(Error::InvalidRepresentation(format!(
                "representation group (order {}) is not the group induced on `{}` (order {})",
                rep.group().order(),
                theta.name(),
                induced.group.order()
            )));
        }
        let base = match base {
            Some(b) => b,
            None if rep.dim() == theta.value_count() => {
                StateVector::basis(rep.dim(), base_value.min(rep.dim() - 1))
            }
            None => return Err(Error::Precondition(
                "representation dimension differs from the value count; a base state is required"
                    .into(),
            )),
        };
        let labels = theta.values().iter().map(|v| v.to_string()).collect();
        let value_space = Arc::new(PointSpace::new(
            format!("values({})", theta.name()),
            labels,
        )?);
        let family = CoherentFamily::new(rep, base, base_value)?;
        Ok(Self {
            theta,
            group,
            induced,
            value_space,
            family,
            tol,
        })
    }

    pub fn theta(&self) -> &ConceptualVariable {
        &self.theta
    }

    pub fn group(&self) -> &PermutationGroup {
        &self.group
    }

    pub fn induced(&self) -> &InducedAction {
        &self.induced
    }

    pub fn family(&self) -> &CoherentFamily {
        &self.family
    }

    pub fn value_space(&self) -> &Arc<PointSpace> {
        &self.value_space
    }

    /// Re-expresses a function of `theta` as a variable on `theta`'s values.
    pub fn lift(&self, zeta: &ConceptualVariable) -> Result<ConceptualVariable> {
        if !dominates(zeta, &self.theta)? {
            return Err(Error::Precondition(format!(
                "`{}` is not a function of `{}`",
                zeta.name(),
                self.theta.name()
            )));
        }
        let assignment = (0..self.theta.value_count())
            .map(|v| zeta.value_index(self.theta.representative(v)))
            .collect();
        ConceptualVariable::new(
            zeta.name(),
            self.value_space.clone(),
            zeta.values().to_vec(),
            assignment,
        )
    }

    pub fn operator(&self, zeta: &ConceptualVariable) -> Result<OperatorBundle> {
        build_operator(&self.lift(zeta)?, &self.family, &self.tol)
    }

    pub fn theta_operator(&self) -> Result<OperatorBundle> {
        self.operator(&self.theta)
    }

    /// The representation of the acting group through the induced homomorphism.
    pub fn acting_rep(&self) -> Result<UnitaryRep> {
        self.family.rep().pullback(&self.induced, &self.tol)
    }

    /// Compares `T(t)^H A T(t)` with the operator of `theta∘t`.
    pub fn conjugation_check(&self, t: &Permutation) -> Result<ConjugationRecord> {
        let idx = self
            .group
            .index_of(t)
            .ok_or_else(|| Error::Precondition(format!("{t} is not in the acting group")))?;
        let g = &self.induced.group.elements()[self.induced.hom.image_index(idx)];
        let tm = self.family.rep().matrix(g).expect("same group");
        let a = self.theta_operator()?;
        let shifted = self
            .theta
            .compose(t)?
            .with_name(format!("{}∘t", self.theta.name()));
        let a_prime = self.operator(&shifted)?;
        Ok(ConjugationRecord {
            t: t.clone(),
            residual: conjugation_residual(tm, a.operator(), a_prime.operator())?,
        })
    }

    pub fn conjugation_sweep(&self) -> Result<Vec<ConjugationRecord>> {
        self.group
            .elements()
            .iter()
            .map(|t| self.conjugation_check(t))
            .collect()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Expansion {
    /// `(basis eigenvalue, <a;j|b;i>)` in ascending eigenvalue order.
    pub amplitudes: Vec<(f64, C64)>,
    pub reconstruction_error: f64,
    pub norm_sq: f64,
}

/// Resolves `target` in the eigenbasis of a nondegenerate operator.
pub fn expand_in_basis(
    target: &StateVector,
    basis: &OperatorBundle,
    tol: &Tolerances,
) -> Result<Expansion> {
    if !basis.is_nondegenerate() {
        return Err(Error::DegenerateBasis(basis.name().to_string()));
    }
    if target.dim() != basis.dim() {
        return Err(Error::DimensionMismatch(format!(
            "{}-dimensional state against a {}-dimensional basis",
            target.dim(),
            basis.dim()
        )));
    }
    let mut amplitudes = Vec::with_capacity(basis.dim());
    let mut rebuilt = StateVector::zeros(target.dim());
    for e in basis.eigenspaces() {
        let a = basis.eigenvector(e.value, tol.degeneracy_gap)?;
        let amp = a.inner(target)?;
        rebuilt = rebuilt.add(&a.scale(amp))?;
        amplitudes.push((e.value, amp));
    }
    Ok(Expansion {
        reconstruction_error: rebuilt.sub(target)?.norm(),
        norm_sq: amplitudes.iter().map(|(_, a)| a.norm_sqr()).sum(),
        amplitudes,
    })
}

/// Expands the eigenvector of `target` for `value`.
pub fn expand_eigenvector(
    target: &OperatorBundle,
    value: f64,
    basis: &OperatorBundle,
    tol: &Tolerances,
) -> Result<Expansion> {
    let v = target.eigenvector(value, tol.degeneracy_gap)?;
    expand_in_basis(&v, basis, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ZERO;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn qubit_family() -> CoherentFamily {
        CoherentFamily::new(qubit_rep(), StateVector::basis(2, 0), 0).unwrap()
    }

    fn value_var(values: &[f64], assignment: &[usize]) -> ConceptualVariable {
        let dom = Arc::new(PointSpace::range("values", assignment.len()).unwrap());
        ConceptualVariable::new("theta", dom, values.to_vec(), assignment.to_vec()).unwrap()
    }

    #[test]
    fn qubit_generator_column_and_square() {
        let u = qubit_rep();
        let g = Permutation::new(vec![1, 0]).unwrap();
        let ug = u.matrix(&g).unwrap();
        let col = ug.apply(&StateVector::basis(2, 0)).unwrap();
        let e = C64::from_polar(1.0, -1.0);
        assert!(col[0].norm() < 1e-15 && (col[1] - e).norm() < 1e-15);
        assert!((ug * ug).max_abs_diff(&ComplexMatrix::identity(2)).unwrap() < 1e-15);
        assert!(ug.is_unitary(1e-12));
        // an abelian group has only one-dimensional irreducibles
        assert!(!u.is_irreducible(&tol()));
    }

    #[test]
    fn two_point_dft_is_the_swap() {
        let u = cyclic_dft_rep(2).unwrap();
        let shift = Permutation::rotation(2, 1);
        let x = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        assert!(u.matrix(&shift).unwrap().max_abs_diff(&x).unwrap() < 1e-15);
        assert!(cyclic_dft_rep(1).is_err());
    }

    #[test]
    fn dft_rep_is_a_true_homomorphism() {
        let u = cyclic_dft_rep(4).unwrap();
        assert!(
            u.matrix_at(0)
                .max_abs_diff(&ComplexMatrix::identity(4))
                .unwrap()
                < 1e-15
        );
        for s1 in 0..4 {
            for s2 in 0..4 {
                let a = u.matrix(&Permutation::rotation(4, s1)).unwrap();
                let b = u.matrix(&Permutation::rotation(4, s2)).unwrap();
                let ab = u.matrix(&Permutation::rotation(4, (s1 + s2) % 4)).unwrap();
                assert!((a * b).max_abs_diff(ab).unwrap() < 1e-12);
            }
        }
    }

    #[test]
    fn from_generators_rejects_broken_relations() {
        // an order-2 permutation sent to a matrix of order 4
        let i = C64::new(0.0, 1.0);
        let m = ComplexMatrix::from_rows(vec![vec![ONE, ZERO], vec![ZERO, i]]).unwrap();
        let err = UnitaryRep::from_generators(
            2,
            vec![(Permutation::new(vec![1, 0]).unwrap(), m)],
            &tol(),
        );
        assert!(err.is_err());
    }

    #[test]
    fn qubit_coherent_states_are_orthogonal() {
        match check_coherent_injectivity(&qubit_family(), &tol()) {
            Injectivity::Injective { max_overlap, .. } => assert!(max_overlap < 1e-15),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn zero_base_is_rejected() {
        assert_eq!(
            CoherentFamily::new(qubit_rep(), StateVector::zeros(2), 0).unwrap_err(),
            Error::ZeroBaseState
        );
    }

    #[test]
    fn trivial_rep_collides() {
        let g = PermutationGroup::cyclic(3);
        let rep = UnitaryRep::new(g, vec![ComplexMatrix::identity(2); 3], &tol()).unwrap();
        let fam = CoherentFamily::new(rep, StateVector::basis(2, 0), 0).unwrap();
        assert!(matches!(
            check_coherent_injectivity(&fam, &tol()),
            Injectivity::Collision {
                first: 0,
                second: 1,
                ..
            }
        ));
    }

    #[test]
    fn qubit_operator_is_sigma_z() {
        let theta = value_var(&[1.0, -1.0], &[0, 1]);
        let op = build_operator(&theta, &qubit_family(), &tol()).unwrap();
        assert!(
            op.operator()
                .max_abs_diff(&ComplexMatrix::diagonal(&[1.0, -1.0]))
                .unwrap()
                < 1e-15
        );
        assert_eq!(op.values(), vec![-1.0, 1.0]);
        assert!(op.is_nondegenerate());
        assert_eq!(op.eigenspaces()[1].answer, "theta = 1");
    }

    #[test]
    fn position_and_parity_on_z4() {
        let fam =
            CoherentFamily::new(cyclic_dft_rep(4).unwrap(), StateVector::basis(4, 0), 0).unwrap();
        let pos = value_var(&[0.0, 1.0, 2.0, 3.0], &[0, 1, 2, 3]);
        let a = build_operator(&pos, &fam, &tol()).unwrap();
        assert!(
            a.operator()
                .max_abs_diff(&ComplexMatrix::diagonal(&[0.0, 1.0, 2.0, 3.0]))
                .unwrap()
                < 1e-12
        );
        let parity = value_var(&[0.0, 1.0], &[0, 1, 0, 1]);
        let p = build_operator(&parity, &fam, &tol()).unwrap();
        assert_eq!(p.multiplicities(), vec![2, 2]);
        assert!(!p.is_nondegenerate());
        assert!(p.completeness_residual() < 1e-12);
        assert!(p.orthogonality_residual() < 1e-12);
    }

    #[test]
    fn non_orthogonal_grouping_is_rejected() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let base = StateVector::from_real(&[h, h]);
        // swap rep with a base that is not orthogonal to its image
        let rep = UnitaryRep::new(
            PermutationGroup::cyclic(2),
            vec![
                ComplexMatrix::identity(2),
                ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]]).unwrap(),
            ],
            &tol(),
        )
        .unwrap();
        let base = base.add(&StateVector::from_real(&[0.3, 0.0])).unwrap();
        let fam = CoherentFamily::new(rep, base, 0).unwrap();
        let theta = value_var(&[1.0, -1.0], &[0, 1]);
        assert!(matches!(
            build_operator(&theta, &fam, &tol()),
            Err(Error::NonOrthogonalGrouping(_))
        ));
    }

    #[test]
    fn expansion_against_itself_is_a_unit_vector() {
        let theta = value_var(&[1.0, -1.0], &[0, 1]);
        let op = build_operator(&theta, &qubit_family(), &tol()).unwrap();
        let e = expand_eigenvector(&op, 1.0, &op, &tol()).unwrap();
        assert!((e.amplitudes[1].1 - ONE).norm() < 1e-15);
        assert!(e.amplitudes[0].1.norm() < 1e-15);
    }

    #[test]
    fn degenerate_basis_is_refused() {
        let fam =
            CoherentFamily::new(cyclic_dft_rep(4).unwrap(), StateVector::basis(4, 0), 0).unwrap();
        let parity = value_var(&[0.0, 1.0], &[0, 1, 0, 1]);
        let p = build_operator(&parity, &fam, &tol()).unwrap();
        assert!(matches!(
            expand_in_basis(&StateVector::basis(4, 0), &p, &tol()),
            Err(Error::DegenerateBasis(_))
        ));
    }
}
