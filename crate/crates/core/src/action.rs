//! Group actions on conceptual variables: permissibility, the induced action
//! on a value space, and relatedness of variables.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{Permutation, PermutationGroup};
use crate::spaces::ConceptualVariable;

/// A counterexample to permissibility: `theta(phi1) == theta(phi2)` but
/// `theta(k phi1) != theta(k phi2)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermissibilityWitness {
    pub k: Permutation,
    pub phi1: usize,
    pub phi2: usize,
}

impl fmt::Display for PermissibilityWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "k = {} sends points {} and {} (same value) to different values",
            self.k, self.phi1, self.phi2
        )
    }
}

impl PermissibilityWitness {
    /// Re-checks the witness against `theta` by direct evaluation.
    pub fn breaks(&self, theta: &ConceptualVariable) -> bool {
        theta.value_index(self.phi1) == theta.value_index(self.phi2)
            && theta.value_index(self.k.apply(self.phi1))
                != theta.value_index(self.k.apply(self.phi2))
    }
}

fn check_acts_on(theta: &ConceptualVariable, group: &PermutationGroup) -> Result<()> {
    if group.degree() != theta.domain().len() {
        return Err(Error::DomainMismatch {
            left: theta.name().to_string(),
            left_domain: format!("{} ({} points)", theta.domain().id(), theta.domain().len()),
            right: "group".into(),
            right_domain: format!("{} points", group.degree()),
        });
    }
    Ok(())
}

/// First element of `group` (in element order) violating permissibility.
fn first_violation(theta: &ConceptualVariable, k: &Permutation) -> Option<(usize, usize)> {
    let r = theta.value_count();
    let mut rep = vec![usize::MAX; r];
    let mut image = vec![usize::MAX; r];
    for phi in 0..theta.domain().len() {
        let v = theta.value_index(phi);
        let w = theta.value_index(k.apply(phi));
        if rep[v] == usize::MAX {
            rep[v] = phi;
            image[v] = w;
        } else if image[v] != w {
            return Some((rep[v], phi));
        }
    }
    None
}

/// Exhaustive check over every element of `group`.
pub fn permissibility_witness(
    theta: &ConceptualVariable,
    group: &PermutationGroup,
) -> Result<Option<PermissibilityWitness>> {
    check_acts_on(theta, group)?;
    Ok(group.elements().iter().find_map(|k| {
        first_violation(theta, k).map(|(phi1, phi2)| PermissibilityWitness {
            k: k.clone(),
            phi1,
            phi2,
        })
    }))
}

pub fn is_permissible(theta: &ConceptualVariable, group: &PermutationGroup) -> Result<bool> {
    Ok(permissibility_witness(theta, group)?.is_none())
}

/// A structure-preserving map between two enumerated groups, stored as a
/// table from source element index to target element index.
#[derive(Debug, Clone)]
pub struct GroupHomomorphism {
    source: PermutationGroup,
    target: PermutationGroup,
    map: Vec<usize>,
}

/// A pair on which a claimed homomorphism fails.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HomomorphismViolation {
    pub a: Permutation,
    pub b: Permutation,
}

impl GroupHomomorphism {
    pub fn new(
        source: PermutationGroup,
        target: PermutationGroup,
        map: Vec<usize>,
    ) -> Result<Self> {
        if map.len() != source.order() || map.iter().any(|&t| t >= target.order()) {
            return Err(Error::Precondition(
                "homomorphism table does not fit its groups".into(),
            ));
        }
        Ok(Self {
            source,
            target,
            map,
        })
    }

    pub fn source(&self) -> &PermutationGroup {
        &self.source
    }

    pub fn target(&self) -> &PermutationGroup {
        &self.target
    }

    pub fn table(&self) -> &[usize] {
        &self.map
    }

    pub fn image_index(&self, source_index: usize) -> usize {
        self.map[source_index]
    }

    pub fn apply(&self, k: &Permutation) -> Option<&Permutation> {
        self.source
            .index_of(k)
            .map(|i| &self.target.elements()[self.map[i]])
    }

    /// Checks that the identity maps to the identity and that
    /// `f(g x) = f(g) f(x)` for every generator `g` and every element `x`.
    /// Since every element is a word in the generators, this implies
    /// `f(a b) = f(a) f(b)` for all pairs.
    pub fn verify(&self) -> std::result::Result<(), HomomorphismViolation> {
        let src = self.source.elements();
        if !self.target.elements()[self.map[0]].is_identity() {
            return Err(HomomorphismViolation {
                a: src[0].clone(),
                b: src[0].clone(),
            });
        }
        for g in self.source.generators() {
            self.check_pairs(std::slice::from_ref(g), src)?;
        }
        Ok(())
    }

    /// Checks `f(a b) = f(a) f(b)` on every pair; quadratic in the order.
    pub fn verify_exhaustive(&self) -> std::result::Result<(), HomomorphismViolation> {
        let src = self.source.elements();
        self.check_pairs(src, src)
    }

    fn check_pairs(
        &self,
        left: &[Permutation],
        right: &[Permutation],
    ) -> std::result::Result<(), HomomorphismViolation> {
        let tgt = self.target.elements();
        for a in left {
            let i = self.source.index_of(a).expect("element of the source");
            for b in right {
                let j = self.source.index_of(b).expect("element of the source");
                let ab = self
                    .source
                    .index_of(&a.compose(b))
                    .expect("group is closed");
                if tgt[self.map[ab]] != tgt[self.map[i]].compose(&tgt[self.map[j]]) {
                    return Err(HomomorphismViolation {
                        a: a.clone(),
                        b: b.clone(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn is_injective(&self) -> bool {
        self.map.iter().filter(|&&t| t == self.map[0]).count() == 1
    }

    pub fn kernel_order(&self) -> usize {
        self.map.iter().filter(|&&t| t == self.map[0]).count()
    }
}

/// The action of `K` carried over to the value space of a permissible variable.
#[derive(Debug, Clone)]
pub struct InducedAction {
    pub group: PermutationGroup,
    pub hom: GroupHomomorphism,
}

/// `g_k(theta(phi)) = theta(k phi)`, one value-space permutation per element.
fn value_permutation(theta: &ConceptualVariable, k: &Permutation) -> Permutation {
    let images = (0..theta.value_count())
        .map(|v| theta.value_index(k.apply(theta.representative(v))))
        .collect();
    Permutation::new(images).expect("permissible variables induce bijections")
}

pub fn induced_group(
    theta: &ConceptualVariable,
    group: &PermutationGroup,
) -> Result<InducedAction> {
    if let Some(witness) = permissibility_witness(theta, group)? {
        return Err(Error::NotPermissible {
            variable: theta.name().to_string(),
            witness,
        });
    }
    let r = theta.value_count();
    let gens = group
        .generators()
        .iter()
        .map(|k| value_permutation(theta, k))
        .collect();
    let induced = PermutationGroup::generate(r, gens)?;
    let map = group
        .elements()
        .iter()
        .map(|k| {
            induced
                .index_of(&value_permutation(theta, k))
                .expect("image of an element lies in the image of the generators")
        })
        .collect();
    let hom = GroupHomomorphism::new(group.clone(), induced.clone(), map)?;
    Ok(InducedAction {
        group: induced,
        hom,
    })
}

/// Checks that `g_k(v) := theta(k phi)` does not depend on which `phi` with
/// `theta(phi) = v` is used, for every `k` in `group`.
pub fn induced_action_well_defined(theta: &ConceptualVariable, group: &PermutationGroup) -> bool {
    group
        .elements()
        .iter()
        .all(|k| first_violation(theta, k).is_none())
}

/// Whether `eta(phi) = beta(theta(k phi))` for some value bijection `beta`.
pub fn relates_by(theta: &ConceptualVariable, eta: &ConceptualVariable, k: &Permutation) -> bool {
    let r = theta.value_count();
    if r != eta.value_count() || k.degree() != theta.domain().len() {
        return false;
    }
    let mut fwd = vec![usize::MAX; r];
    let mut back = vec![usize::MAX; r];
    for phi in 0..k.degree() {
        let a = theta.value_index(k.apply(phi));
        let b = eta.value_index(phi);
        if fwd[a] == usize::MAX && back[b] == usize::MAX {
            fwd[a] = b;
            back[b] = a;
        } else if fwd[a] != b || back[b] != a {
            return false;
        }
    }
    true
}

fn check_related_pair(theta: &ConceptualVariable, eta: &ConceptualVariable) -> Result<()> {
    theta.check_domain(eta)?;
    if theta.value_count() != eta.value_count() {
        return Err(Error::ValueSpaceMismatch {
            left: theta.value_count(),
            right: eta.value_count(),
        });
    }
    Ok(())
}

/// Largest domain for which the symmetric-group search is offered.
pub const MAX_SYMMETRIC_SEARCH: usize = 8;

/// Where relating transformations are sought.
#[derive(Debug, Clone, Copy)]
pub enum RelatednessScope<'a> {
    Group(&'a PermutationGroup),
    /// Every permutation of the domain; at most [`MAX_SYMMETRIC_SEARCH`] points.
    Symmetric,
}

/// The lexicographically smallest `k` in `group` relating `theta` to `eta`.
pub fn are_related(
    theta: &ConceptualVariable,
    eta: &ConceptualVariable,
    group: &PermutationGroup,
) -> Result<Option<Permutation>> {
    check_related_pair(theta, eta)?;
    check_acts_on(theta, group)?;
    Ok(group
        .elements()
        .iter()
        .find(|k| relates_by(theta, eta, k))
        .cloned())
}

pub fn are_related_in(
    theta: &ConceptualVariable,
    eta: &ConceptualVariable,
    scope: RelatednessScope<'_>,
) -> Result<Option<Permutation>> {
    match scope {
        RelatednessScope::Group(g) => are_related(theta, eta, g),
        RelatednessScope::Symmetric => {
            check_related_pair(theta, eta)?;
            let n = theta.domain().len();
            if n > MAX_SYMMETRIC_SEARCH {
                return Err(Error::Budget(format!(
                    "symmetric-group relatedness search is limited to {MAX_SYMMETRIC_SEARCH} points, got {n}"
                )));
            }
            if theta.partition().shape() != eta.partition().shape() {
                return Ok(None);
            }
            let mut images: Vec<usize> = (0..n).collect();
            loop {
                let k = Permutation::new(images.clone()).expect("permutation");
                if relates_by(theta, eta, &k) {
                    return Ok(Some(k));
                }
                if !next_permutation(&mut images) {
                    return Ok(None);
                }
            }
        }
    }
}

/// Every relating element of `group`, in element order.
pub fn relating_elements(
    theta: &ConceptualVariable,
    eta: &ConceptualVariable,
    group: &PermutationGroup,
) -> Result<Vec<Permutation>> {
    check_related_pair(theta, eta)?;
    check_acts_on(theta, group)?;
    Ok(group
        .elements()
        .iter()
        .filter(|k| relates_by(theta, eta, k))
        .cloned()
        .collect())
}

/// Lexicographic successor; false once the last permutation is reached.
pub(crate) fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// A declared identification of the domain with `first × second` values.
#[derive(Debug, Clone)]
pub struct ProductStructure {
    first: ConceptualVariable,
    second: ConceptualVariable,
}

impl ProductStructure {
    pub fn new(first: ConceptualVariable, second: ConceptualVariable) -> Result<Self> {
        first.check_domain(&second)?;
        let n = first.domain().len();
        let (a, b) = (first.value_count(), second.value_count());
        if a * b != n {
            return Err(Error::Precondition(format!(
                "`{}` × `{}` has {} cells but the domain has {n} points",
                first.name(),
                second.name(),
                a * b
            )));
        }
        let mut seen = vec![false; n];
        for phi in 0..n {
            let cell = first.value_index(phi) * b + second.value_index(phi);
            if seen[cell] {
                return Err(Error::Precondition(format!(
                    "point {phi} repeats a ({}, {}) cell",
                    first.name(),
                    second.name()
                )));
            }
            seen[cell] = true;
        }
        Ok(Self { first, second })
    }

    pub fn first(&self) -> &ConceptualVariable {
        &self.first
    }

    pub fn second(&self) -> &ConceptualVariable {
        &self.second
    }

    /// `k (a, b) = (b, a)` under the declared coordinates.
    pub fn is_coordinate_exchange(&self, k: &Permutation) -> bool {
        if self.first.value_count() != self.second.value_count() {
            return false;
        }
        (0..k.degree()).all(|phi| {
            let img = k.apply(phi);
            self.first.value_index(img) == self.second.value_index(phi)
                && self.second.value_index(img) == self.first.value_index(phi)
        })
    }
}

/// True iff `theta` and `eta` are related within `group` and every relating
/// element is the bare coordinate exchange of the declared product.
pub fn flag_trivial_exchange(
    theta: &ConceptualVariable,
    eta: &ConceptualVariable,
    group: &PermutationGroup,
    product: Option<&ProductStructure>,
) -> Result<bool> {
    let product =
        product.ok_or_else(|| Error::NotApplicable("no product structure declared".into()))?;
    let relating = relating_elements(theta, eta, group)?;
    Ok(!relating.is_empty() && relating.iter().all(|k| product.is_coordinate_exchange(k)))
}
