//! Finite point spaces, conceptual variables and the domination order.
//!
//! A conceptual variable is a total surjective map from the points of the
//! underlying space onto a finite value set. Only its fibers matter for the
//! partial order: `theta <= lambda` exactly when every fiber of `lambda` sits
//! inside a single fiber of `theta`, i.e. when `theta` is a function of
//! `lambda`. Variables therefore carry a canonical [`Partition`] and compare
//! equal when their partitions do; value labels are kept for reporting and for
//! operator eigenvalues.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A finite labeled set of points.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PointSpace {
    id: String,
    labels: Vec<String>,
}

impl PointSpace {
    pub fn new(id: impl Into<String>, labels: Vec<String>) -> Result<Self> {
        let id = id.into();
        if labels.is_empty() {
            return Err(Error::InvalidSpace {
                id,
                reason: "a space needs at least one point".into(),
            });
        }
        let mut seen = HashSet::with_capacity(labels.len());
        for label in &labels {
            if !seen.insert(label.as_str()) {
                return Err(Error::InvalidSpace {
                    id,
                    reason: format!("duplicate label `{label}`"),
                });
            }
        }
        Ok(Self { id, labels })
    }

    /// Points labeled `0..n`.
    pub fn range(id: impl Into<String>, n: usize) -> Result<Self> {
        Self::new(id, (0..n).map(|i| i.to_string()).collect())
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

/// A set partition of `0..n` stored as canonical block ids: blocks are
/// numbered in order of their first point.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    block_of: Vec<usize>,
    blocks: usize,
}

impl Partition {
    /// Canonicalizes arbitrary block labels.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut relabel: Vec<Option<usize>> = Vec::new();
        let mut block_of = Vec::with_capacity(labels.len());
        let mut next = 0;
        for &l in labels {
            if l >= relabel.len() {
                relabel.resize(l + 1, None);
            }
            let id = *relabel[l].get_or_insert_with(|| {
                next += 1;
                next - 1
            });
            block_of.push(id);
        }
        Self {
            block_of,
            blocks: next,
        }
    }

    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut labels = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            for &p in block {
                if p >= n || labels[p] != usize::MAX {
                    return Err(Error::InvalidVariable {
                        name: "partition".into(),
                        reason: format!("point {p} missing from range or listed twice"),
                    });
                }
                labels[p] = b;
            }
        }
        if labels.contains(&usize::MAX) {
            return Err(Error::InvalidVariable {
                name: "partition".into(),
                reason: "blocks do not cover every point".into(),
            });
        }
        Ok(Self::from_labels(&labels))
    }

    pub fn identity(n: usize) -> Self {
        Self {
            block_of: (0..n).collect(),
            blocks: n,
        }
    }

    pub fn constant(n: usize) -> Self {
        Self {
            block_of: vec![0; n],
            blocks: usize::from(n > 0),
        }
    }

    pub fn len(&self) -> usize {
        self.block_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.block_of.is_empty()
    }

    pub fn block_count(&self) -> usize {
        self.blocks
    }

    pub fn block_of(&self, point: usize) -> usize {
        self.block_of[point]
    }

    pub fn labels(&self) -> &[usize] {
        &self.block_of
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.blocks];
        for (p, &b) in self.block_of.iter().enumerate() {
            out[b].push(p);
        }
        out
    }

    /// Block sizes in block order.
    pub fn block_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.blocks];
        for &b in &self.block_of {
            sizes[b] += 1;
        }
        sizes
    }

    /// Sorted block sizes; two partitions are related by some permutation
    /// iff their shapes agree.
    pub fn shape(&self) -> Vec<usize> {
        let mut s = self.block_sizes();
        s.sort_unstable();
        s
    }

    pub fn is_identity(&self) -> bool {
        self.blocks == self.block_of.len()
    }

    pub fn is_constant(&self) -> bool {
        self.blocks <= 1
    }

    /// True when every block of `self` lies inside one block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        if self.len() != coarser.len() {
            return false;
        }
        let mut image = vec![usize::MAX; self.blocks];
        for (p, &b) in self.block_of.iter().enumerate() {
            let c = coarser.block_of[p];
            if image[b] == usize::MAX {
                image[b] = c;
            } else if image[b] != c {
                return false;
            }
        }
        true
    }

    /// The partition of `x -> self(k x)`.
    pub fn pullback(&self, k: &Permutation) -> Partition {
        let labels: Vec<usize> = (0..self.len()).map(|p| self.block_of[k.apply(p)]).collect();
        Partition::from_labels(&labels)
    }

    /// Coarsest common refinement (fibers of the joint variable).
    pub fn meet(&self, other: &Partition) -> Partition {
        let width = other.blocks.max(1);
        let labels: Vec<usize> = self
            .block_of
            .iter()
            .zip(&other.block_of)
            .map(|(&a, &b)| a * width + b)
            .collect();
        Partition::from_labels(&labels)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks = self.blocks();
        write!(f, "{{")?;
        for (i, block) in blocks.iter().enumerate() {
            if i > 0 {
                write!(f, "|")?;
            }
            for (j, p) in block.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{p}")?;
            }
        }
        write!(f, "}}")
    }
}

/// A total surjective map from a [`PointSpace`] onto numeric values.
#[derive(Debug, Clone)]
pub struct ConceptualVariable {
    name: String,
    domain: Arc<PointSpace>,
    values: Vec<f64>,
    assignment: Vec<usize>,
    partition: Partition,
}

impl ConceptualVariable {
    pub fn new(
        name: impl Into<String>,
        domain: Arc<PointSpace>,
        values: Vec<f64>,
        assignment: Vec<usize>,
    ) -> Result<Self> {
        let name = name.into();
        let invalid = |reason: String| Error::InvalidVariable {
            name: name.clone(),
            reason,
        };
        if assignment.len() != domain.len() {
            return Err(invalid(format!(
                "assignment covers {} points but `{}` has {}",
                assignment.len(),
                domain.id(),
                domain.len()
            )));
        }
        if values.is_empty() {
            return Err(invalid("empty value set".into()));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(invalid(format!("non-finite value {v}")));
        }
        for (i, a) in values.iter().enumerate() {
            if values[..i].contains(a) {
                return Err(invalid(format!("duplicate value {a}")));
            }
        }
        let mut hit = vec![false; values.len()];
        for (p, &v) in assignment.iter().enumerate() {
            if v >= values.len() {
                return Err(invalid(format!(
                    "point {p} maps to missing value index {v}"
                )));
            }
            hit[v] = true;
        }
        if let Some(v) = hit.iter().position(|h| !h) {
            return Err(invalid(format!(
                "value {} is never taken (variables must be surjective)",
                values[v]
            )));
        }
        let partition = Partition::from_labels(&assignment);
        Ok(Self {
            name,
            domain,
            values,
            assignment,
            partition,
        })
    }

    /// A variable with values `0..k` in block order.
    pub fn from_partition(
        name: impl Into<String>,
        domain: Arc<PointSpace>,
        partition: &Partition,
    ) -> Result<Self> {
        let values = (0..partition.block_count()).map(|v| v as f64).collect();
        Self::new(name, domain, values, partition.labels().to_vec())
    }

    pub fn constant(name: impl Into<String>, domain: Arc<PointSpace>) -> Result<Self> {
        let n = domain.len();
        Self::new(name, domain, vec![0.0], vec![0; n])
    }

    pub fn identity(name: impl Into<String>, domain: Arc<PointSpace>) -> Result<Self> {
        let n = domain.len();
        Self::new(
            name,
            domain,
            (0..n).map(|v| v as f64).collect(),
            (0..n).collect(),
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> &Arc<PointSpace> {
        &self.domain
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value_count(&self) -> usize {
        self.values.len()
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn value_index(&self, point: usize) -> usize {
        self.assignment[point]
    }

    pub fn value_at(&self, point: usize) -> f64 {
        self.values[self.assignment[point]]
    }

    /// First point taking value index `v`.
    pub fn representative(&self, v: usize) -> usize {
        self.assignment
            .iter()
            .position(|&a| a == v)
            .expect("surjective by construction")
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// `x -> self(k x)`, keeping the value labels.
    pub fn compose(&self, k: &Permutation) -> Result<Self> {
        if k.degree() != self.domain.len() {
            return Err(Error::InvalidPermutation(format!(
                "degree {} does not act on `{}` ({} points)",
                k.degree(),
                self.domain.id(),
                self.domain.len()
            )));
        }
        let assignment: Vec<usize> = (0..self.domain.len())
            .map(|p| self.assignment[k.apply(p)])
            .collect();
        Ok(Self {
            name: format!("{}∘k", self.name),
            domain: self.domain.clone(),
            values: self.values.clone(),
            partition: Partition::from_labels(&assignment),
            assignment,
        })
    }

    /// `f(self)` where `merge[v]` is the new value index of old value `v`.
    pub fn map_values(
        &self,
        name: impl Into<String>,
        merge: &[usize],
        new_values: Vec<f64>,
    ) -> Result<Self> {
        let name = name.into();
        if merge.len() != self.values.len() {
            return Err(Error::InvalidVariable {
                name,
                reason: format!(
                    "value map has {} entries, expected {}",
                    merge.len(),
                    self.values.len()
                ),
            });
        }
        let assignment = self.assignment.iter().map(|&v| merge[v]).collect();
        Self::new(name, self.domain.clone(), new_values, assignment)
    }

    pub fn same_domain(&self, other: &ConceptualVariable) -> bool {
        Arc::ptr_eq(&self.domain, &other.domain) || *self.domain == *other.domain
    }

    pub(crate) fn check_domain(&self, other: &ConceptualVariable) -> Result<()> {
        if self.same_domain(other) {
            Ok(())
        } else {
            Err(Error::DomainMismatch {
                left: self.name.clone(),
                left_domain: self.domain.id().to_string(),
                right: other.name.clone(),
                right_domain: other.domain.id().to_string(),
            })
        }
    }
}

impl PartialEq for ConceptualVariable {
    fn eq(&self, other: &Self) -> bool {
        self.same_domain(other) && self.partition == other.partition
    }
}

/// True iff `theta` is a function of `lambda`.
pub fn dominates(theta: &ConceptualVariable, lambda: &ConceptualVariable) -> Result<bool> {
    theta.check_domain(lambda)?;
    Ok(lambda.partition.refines(&theta.partition))
}

/// Generators of the accessible variables on a shared domain.
#[derive(Debug, Clone)]
pub struct VariableFamily {
    generators: Vec<ConceptualVariable>,
    inaccessible_total: bool,
}

impl VariableFamily {
    pub fn new(generators: Vec<ConceptualVariable>, inaccessible_total: bool) -> Result<Self> {
        if let Some(first) = generators.first() {
            for g in &generators[1..] {
                first.check_domain(g)?;
            }
        }
        if inaccessible_total {
            if let Some(g) = generators.iter().find(|g| g.partition.is_identity()) {
                return Err(Error::InvalidFamily(format!(
                    "generator `{}` separates every point, but the total variable is declared inaccessible",
                    g.name
                )));
            }
        }
        Ok(Self {
            generators,
            inaccessible_total,
        })
    }

    pub fn generators(&self) -> &[ConceptualVariable] {
        &self.generators
    }

    pub fn inaccessible_total(&self) -> bool {
        self.inaccessible_total
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&ConceptualVariable> {
        self.generators.iter().find(|g| g.name == name)
    }
}

/// Accessibility is the downward closure of the generators.
pub fn is_accessible(theta: &ConceptualVariable, family: &VariableFamily) -> Result<bool> {
    for g in &family.generators {
        if dominates(theta, g)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Generators not strictly dominated by another generator, one per distinct
/// partition, in generator order.
pub fn maximal_accessible(family: &VariableFamily) -> Result<Vec<ConceptualVariable>> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let mut out: Vec<ConceptualVariable> = Vec::new();
    for g in &family.generators {
        let strictly_below = family
            .generators
            .iter()
            .any(|h| h.partition != g.partition && h.partition.refines(&g.partition));
        if !strictly_below && !out.iter().any(|m| m.partition == g.partition) {
            out.push(g.clone());
        }
    }
    Ok(out)
}

pub fn is_maximal(theta: &ConceptualVariable, family: &VariableFamily) -> Result<bool> {
    Ok(maximal_accessible(family)?.iter().any(|m| m == theta))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> Arc<PointSpace> {
        Arc::new(PointSpace::range("omega", n).unwrap())
    }

    fn var(name: &str, dom: &Arc<PointSpace>, assignment: &[usize]) -> ConceptualVariable {
        let k = assignment.iter().max().unwrap() + 1;
        ConceptualVariable::new(
            name,
            dom.clone(),
            (0..k).map(|v| v as f64).collect(),
            assignment.to_vec(),
        )
        .unwrap()
    }

    #[test]
    fn rejects_duplicate_labels_and_empty_space() {
        assert!(PointSpace::new("s", vec![]).is_err());
        assert!(PointSpace::new("s", vec!["a".into(), "a".into()]).is_err());
    }

    #[test]
    fn variable_must_be_total_and_surjective() {
        let d = z(3);
        assert!(ConceptualVariable::new("t", d.clone(), vec![0.0, 1.0], vec![0, 1]).is_err());
        assert!(ConceptualVariable::new("t", d.clone(), vec![0.0, 1.0], vec![0, 0, 0]).is_err());
        assert!(ConceptualVariable::new("t", d.clone(), vec![0.0, 0.0], vec![0, 1, 0]).is_err());
        assert!(ConceptualVariable::new("t", d, vec![1.0, 0.0], vec![0, 1, 0]).is_ok());
    }

    #[test]
    fn canonical_partition_ignores_labels() {
        let d = z(4);
        let a = ConceptualVariable::new("a", d.clone(), vec![5.0, 7.0], vec![1, 1, 0, 0]).unwrap();
        let b = var("b", &d, &[0, 0, 1, 1]);
        assert_eq!(a, b);
        assert_eq!(a.partition().to_string(), "{0,1|2,3}");
    }

    #[test]
    fn constant_is_dominated_by_everything() {
        let d = z(4);
        let c = ConceptualVariable::constant("c", d.clone()).unwrap();
        let l = var("l", &d, &[0, 1, 0, 2]);
        assert!(dominates(&c, &l).unwrap());
        assert!(dominates(&l, &l).unwrap());
    }

    #[test]
    fn crossed_two_block_partitions_are_incomparable() {
        let d = z(4);
        let theta = var("theta", &d, &[0, 0, 1, 1]);
        let lambda = var("lambda", &d, &[0, 1, 0, 1]);
        assert!(!dominates(&theta, &lambda).unwrap());
        assert!(!dominates(&lambda, &theta).unwrap());
    }

    #[test]
    fn domain_mismatch_is_an_error() {
        let a = var("a", &z(3), &[0, 1, 0]);
        let other = Arc::new(PointSpace::range("other", 3).unwrap());
        let b = var("b", &other, &[0, 1, 0]);
        assert!(matches!(
            dominates(&a, &b),
            Err(Error::DomainMismatch { .. })
        ));
    }

    #[test]
    fn accessibility_examples() {
        let d = z(4);
        let theta = var("theta", &d, &[0, 0, 1, 1]);
        let fam = VariableFamily::new(vec![theta.clone()], true).unwrap();
        assert!(is_accessible(&theta, &fam).unwrap());
        let c = ConceptualVariable::constant("c", d.clone()).unwrap();
        assert!(is_accessible(&c, &fam).unwrap());
        let id = ConceptualVariable::identity("phi", d.clone()).unwrap();
        assert!(!is_accessible(&id, &fam).unwrap());
        assert!(VariableFamily::new(vec![id], true).is_err());
    }

    #[test]
    fn maximal_elements_of_mixed_family() {
        let d = z(4);
        let theta = var("theta", &d, &[0, 0, 1, 1]);
        let eta = var("eta", &d, &[0, 1, 0, 1]);
        let xi = ConceptualVariable::constant("xi", d.clone()).unwrap();
        let fam = VariableFamily::new(vec![theta.clone(), eta.clone(), xi], true).unwrap();
        let max = maximal_accessible(&fam).unwrap();
        let names: Vec<_> = max.iter().map(|m| m.name()).collect();
        assert_eq!(names, ["theta", "eta"]);
    }

    #[test]
    fn merged_variable_is_not_maximal() {
        let d = z(4);
        let theta = var("theta", &d, &[0, 1, 2, 3]);
        let f = theta
            .map_values("f", &[0, 0, 1, 2], vec![0.0, 1.0, 2.0])
            .unwrap();
        let fam = VariableFamily::new(vec![theta.clone(), f], false).unwrap();
        let max = maximal_accessible(&fam).unwrap();
        assert_eq!(max.len(), 1);
        assert_eq!(max[0].name(), "theta");
    }

    #[test]
    fn constant_only_family() {
        let d = z(3);
        let c = ConceptualVariable::constant("c", d).unwrap();
        let fam = VariableFamily::new(vec![c], true).unwrap();
        assert_eq!(maximal_accessible(&fam).unwrap().len(), 1);
        assert_eq!(
            maximal_accessible(&VariableFamily::new(vec![], false).unwrap()),
            Err(Error::EmptyFamily)
        );
    }

    #[test]
    fn meet_is_joint_fibers() {
        let a = Partition::from_labels(&[0, 0, 1, 1]);
        let b = Partition::from_labels(&[0, 1, 0, 1]);
        assert!(a.meet(&b).is_identity());
        assert_eq!(a.meet(&a), a);
    }
}
