//! Brute-force checks of the relatedness theorems for families of maximal
//! variables ("thoughts"): classification of a family, the single-pair
//! search, the permutation-group construction behind the main proof, and an
//! exhaustive falsifier over small spaces.

use std::collections::HashSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::action::{
    are_related, flag_trivial_exchange, is_permissible, permissibility_witness, relates_by,
    PermissibilityWitness, ProductStructure, MAX_SYMMETRIC_SEARCH,
};
use crate::error::{Error, Result};
use crate::perm::{Permutation, PermutationGroup};
use crate::spaces::{dominates, ConceptualVariable, Partition, PointSpace};
use crate::subgroups::{subgroup_class_representatives, MAX_CLASS_DEGREE};

/// Largest domain for the same-shape sweep in the single-pair search.
pub const MAX_SHAPE_SWEEP: usize = 6;

/// Largest `max_n` accepted by [`exhaustive_falsifier`].
pub const MAX_FALSIFIER_N: usize = MAX_CLASS_DEGREE;

/// A family of maximal variables with equal value counts and an acting group.
#[derive(Debug, Clone)]
pub struct ThoughtScenario {
    family: Vec<ConceptualVariable>,
    group: PermutationGroup,
    product: Option<ProductStructure>,
}

impl ThoughtScenario {
    pub fn new(
        family: Vec<ConceptualVariable>,
        group: PermutationGroup,
        product: Option<ProductStructure>,
    ) -> Result<Self> {
        let first = family.first().ok_or(Error::EmptyFamily)?;
        if group.degree() != first.domain().len() {
            return Err(Error::InvalidFamily(format!(
                "group acts on {} points, the domain has {}",
                group.degree(),
                first.domain().len()
            )));
        }
        let mut seen = HashSet::new();
        for v in &family {
            first.check_domain(v)?;
            if v.value_count() != first.value_count() {
                return Err(Error::ValueSpaceMismatch {
                    left: first.value_count(),
                    right: v.value_count(),
                });
            }
            if !seen.insert(v.partition().clone()) {
                return Err(Error::InvalidFamily(format!(
                    "`{}` repeats the partition of another member",
                    v.name()
                )));
            }
        }
        Ok(Self {
            family,
            group,
            product,
        })
    }

    pub fn family(&self) -> &[ConceptualVariable] {
        &self.family
    }

    pub fn group(&self) -> &PermutationGroup {
        &self.group
    }

    pub fn product(&self) -> Option<&ProductStructure> {
        self.product.as_ref()
    }

    pub fn domain_size(&self) -> usize {
        self.group.degree()
    }

    fn is_maximal_in_family(&self, theta: &ConceptualVariable) -> Result<bool> {
        for g in &self.family {
            if dominates(theta, g)? && !dominates(g, theta)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    AllRelated,
    AllEssentiallyDifferent,
    Mixed,
}

/// A relating element, already checked point by point.
#[derive(Debug, Clone, Serialize)]
pub struct RelatedPair {
    pub first: String,
    pub second: String,
    pub k: Permutation,
}

/// No element of the acting group relates the pair.
#[derive(Debug, Clone, Serialize)]
pub struct UnrelatedPair {
    pub first: String,
    pub second: String,
    pub elements_searched: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct A2Hypotheses {
    pub transitive: bool,
    pub trivial_isotropy: bool,
    /// Some related pair has a member permissible under the group.
    pub permissible_related_member: bool,
    /// `None` when no product structure is declared.
    pub nontrivial_exchange: Option<bool>,
    pub satisfied: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    pub classes: Vec<Vec<String>>,
    pub verdict: Verdict,
    pub related: Vec<RelatedPair>,
    pub unrelated: Vec<UnrelatedPair>,
    pub hypotheses: A2Hypotheses,
}

impl Classification {
    /// A mixed verdict whose hypotheses all hold.
    pub fn is_counterexample(&self) -> bool {
        self.verdict == Verdict::Mixed && self.hypotheses.satisfied
    }
}

fn find_root(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

pub fn classify_thoughts(s: &ThoughtScenario) -> Result<Classification> {
    let fam = &s.family;
    if fam.len() < 3 {
        return Err(Error::Precondition(format!(
            "classification needs at least 3 thoughts, got {}",
            fam.len()
        )));
    }
    let mut parent: Vec<usize> = (0..fam.len()).collect();
    let mut related = Vec::new();
    let mut related_idx = Vec::new();
    let mut unrelated = Vec::new();
    for i in 0..fam.len() {
        for j in i + 1..fam.len() {
            match are_related(&fam[i], &fam[j], &s.group)? {
                Some(k) => {
                    if !relates_by(&fam[i], &fam[j], &k) {
                        return Err(Error::Precondition(format!(
                            "relating witness {k} for `{}`, `{}` failed re-evaluation",
                            fam[i].name(),
                            fam[j].name()
                        )));
                    }
                    let (a, b) = (find_root(&mut parent, i), find_root(&mut parent, j));
                    parent[a.max(b)] = a.min(b);
                    related_idx.push((i, j, k.clone()));
                    related.push(RelatedPair {
                        first: fam[i].name().to_string(),
                        second: fam[j].name().to_string(),
                        k,
                    });
                }
                None => unrelated.push(UnrelatedPair {
                    first: fam[i].name().to_string(),
                    second: fam[j].name().to_string(),
                    elements_searched: s.group.order(),
                }),
            }
        }
    }
    let mut classes: Vec<Vec<String>> = Vec::new();
    let mut root_class: Vec<Option<usize>> = vec![None; fam.len()];
    for (i, v) in fam.iter().enumerate() {
        let r = find_root(&mut parent, i);
        match root_class[r] {
            Some(c) => classes[c].push(v.name().to_string()),
            None => {
                root_class[r] = Some(classes.len());
                classes.push(vec![v.name().to_string()]);
            }
        }
    }
    let verdict = if classes.len() == 1 {
        Verdict::AllRelated
    } else if classes.len() == fam.len() {
        Verdict::AllEssentiallyDifferent
    } else {
        Verdict::Mixed
    };

    let transitive = s.group.is_transitive();
    let trivial_isotropy = s.group.has_trivial_isotropy();
    let mut permissible_related_member = false;
    let mut nontrivial_exchange = s.product.as_ref().map(|_| false);
    for (i, j, _) in &related_idx {
        let member = is_permissible(&fam[*i], &s.group)? || is_permissible(&fam[*j], &s.group)?;
        permissible_related_member |= member;
        if let Some(product) = &s.product {
            if member && !flag_trivial_exchange(&fam[*i], &fam[*j], &s.group, Some(product))? {
                nontrivial_exchange = Some(true);
            }
        }
    }
    let satisfied = transitive
        && trivial_isotropy
        && permissible_related_member
        && nontrivial_exchange.unwrap_or(true);
    Ok(Classification {
        classes,
        verdict,
        related,
        unrelated,
        hypotheses: A2Hypotheses {
            transitive,
            trivial_isotropy,
            permissible_related_member,
            nontrivial_exchange,
            satisfied,
        },
    })
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum A1Outcome {
    NotApplicable {
        reason: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        witness: Option<PermissibilityWitness>,
    },
    Pass {
        relating_k: Permutation,
        candidates_examined: usize,
    },
    Falsified {
        lambda: String,
        lambda_partition: String,
        k: Permutation,
    },
}

/// Every set partition of `0..n` as restricted growth strings, in
/// lexicographic order.
pub fn set_partitions(n: usize) -> Vec<Partition> {
    fn rec(pos: usize, n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if pos == n {
            out.push(Partition::from_labels(cur));
            return;
        }
        for b in 0..=max + 1 {
            if pos == 0 && b > 0 {
                break;
            }
            cur.push(b);
            rec(pos + 1, n, max.max(b), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut cur = Vec::with_capacity(n);
    rec(0, n, 0, &mut cur, &mut out);
    out
}

/// Partitions of `0..n` into `r` blocks of equal size.
pub fn balanced_partitions(n: usize, r: usize) -> Vec<Partition> {
    if r == 0 || !n.is_multiple_of(r) {
        return Vec::new();
    }
    let size = n / r;
    set_partitions(n)
        .into_iter()
        .filter(|p| p.block_count() == r && p.block_sizes().iter().all(|&s| s == size))
        .collect()
}

fn variable_from_partition(
    name: String,
    domain: &Arc<PointSpace>,
    p: &Partition,
) -> Result<ConceptualVariable> {
    ConceptualVariable::new(
        name,
        domain.clone(),
        (0..p.block_count()).map(|v| v as f64).collect(),
        p.labels().to_vec(),
    )
}

/// Looks for a maximal `lambda` related to `theta` but essentially different
/// from `eta`, given that `theta` and `eta` are related inside the acting
/// group. Failed hypotheses give [`A1Outcome::NotApplicable`].
pub fn theorem_a1_search(
    theta: &ConceptualVariable,
    eta: &ConceptualVariable,
    s: &ThoughtScenario,
    all_same_shape: bool,
) -> Result<A1Outcome> {
    let not_applicable = |reason: String| A1Outcome::NotApplicable {
        reason,
        witness: None,
    };
    theta.check_domain(eta)?;
    if theta.domain().len() != s.domain_size() {
        return Err(Error::DomainMismatch {
            left: theta.name().to_string(),
            left_domain: theta.domain().id().to_string(),
            right: "group".into(),
            right_domain: format!("{} points", s.domain_size()),
        });
    }
    for v in [theta, eta] {
        if !s.is_maximal_in_family(v)? {
            return Ok(not_applicable(format!(
                "`{}` is not maximal in the family",
                v.name()
            )));
        }
    }
    if let Some(w) = permissibility_witness(theta, &s.group)? {
        return Ok(A1Outcome::NotApplicable {
            reason: format!("`{}` is not permissible under the group", theta.name()),
            witness: Some(w),
        });
    }
    if !s.group.is_transitive() {
        return Ok(not_applicable("the group is not transitive".into()));
    }
    if !s.group.has_trivial_isotropy() {
        return Ok(not_applicable("the group has non-trivial isotropy".into()));
    }
    if theta.value_count() != eta.value_count() {
        return Ok(not_applicable("value spaces differ in size".into()));
    }
    let Some(relating_k) = are_related(theta, eta, &s.group)? else {
        return Ok(not_applicable(format!(
            "no element of the group relates `{}` and `{}`",
            theta.name(),
            eta.name()
        )));
    };

    let mut candidates: Vec<ConceptualVariable> = s
        .family
        .iter()
        .filter(|v| v.value_count() == theta.value_count())
        .cloned()
        .collect();
    if all_same_shape {
        let n = theta.domain().len();
        if n > MAX_SHAPE_SWEEP {
            return Err(Error::Budget(format!(
                "same-shape sweep is limited to {MAX_SHAPE_SWEEP} points, got {n}"
            )));
        }
        let shape = theta.partition().shape();
        for (i, p) in set_partitions(n)
            .into_iter()
            .filter(|p| p.shape() == shape)
            .enumerate()
        {
            candidates.push(variable_from_partition(
                format!("lambda#{i}"),
                theta.domain(),
                &p,
            )?);
        }
    }
    let mut examined = 0;
    for lambda in &candidates {
        examined += 1;
        if let Some(k) = are_related(theta, lambda, &s.group)? {
            if are_related(eta, lambda, &s.group)?.is_none() {
                return Ok(A1Outcome::Falsified {
                    lambda: lambda.name().to_string(),
                    lambda_partition: lambda.partition().to_string(),
                    k,
                });
            }
        }
    }
    Ok(A1Outcome::Pass {
        relating_k,
        candidates_examined: examined,
    })
}

/// Search limits for [`proof_group_construction`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConstructionBudget {
    /// Generator sets tried before giving up.
    pub generator_sets: usize,
    /// Largest generator set size.
    pub max_generators: usize,
}

impl Default for ConstructionBudget {
    fn default() -> Self {
        Self {
            generator_sets: 200_000,
            max_generators: 3,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConstructionReport {
    pub ambient_order: usize,
    pub generator_sets_tried: usize,
    #[serde(skip)]
    pub group: Option<PermutationGroup>,
    pub generators: Vec<Permutation>,
    pub transitive: bool,
    pub trivial_isotropy: bool,
    pub permissible: bool,
    /// Whether the constructed group holds an element taking `theta` to `lambda`.
    pub contains_relating_k: bool,
}

impl ConstructionReport {
    pub fn succeeded(&self) -> bool {
        self.group.is_some() && self.transitive && self.trivial_isotropy && self.permissible
    }
}

/// Permutations that carry theta-blocks onto theta-blocks and joint fibers
/// of `(theta, lambda, xi)` onto joint fibers with within-fiber rank kept.
fn ambient_permutations(theta: &ConceptualVariable, joint: &Partition) -> Vec<Permutation> {
    let n = theta.domain().len();
    let fibers = joint.blocks();
    let rank: Vec<usize> = {
        let mut r = vec![0; n];
        for f in &fibers {
            for (i, &p) in f.iter().enumerate() {
                r[p] = i;
            }
        }
        r
    };
    let theta_part = theta.partition();
    let mut out = Vec::new();
    let mut images: Vec<usize> = (0..n).collect();
    loop {
        let k = Permutation::new(images.clone()).expect("permutation");
        let fiber_ok = fibers.iter().all(|f| {
            let target = joint.block_of(k.apply(f[0]));
            let t = &fibers[target];
            t.len() == f.len()
                && f.iter()
                    .all(|&p| joint.block_of(k.apply(p)) == target && rank[k.apply(p)] == rank[p])
        });
        if fiber_ok && theta_part.pullback(&k) == *theta_part {
            out.push(k);
        }
        if !crate::action::next_permutation(&mut images) {
            break;
        }
    }
    out
}

/// Searches the permutations that permute `theta`'s values while keeping
/// the rest of the joint `(theta, lambda, xi)` description fixed for a
/// transitive subgroup with trivial isotropy.
pub fn proof_group_construction(
    theta: &ConceptualVariable,
    lambda: &ConceptualVariable,
    xi: &ConceptualVariable,
    budget: ConstructionBudget,
) -> Result<ConstructionReport> {
    theta.check_domain(lambda)?;
    theta.check_domain(xi)?;
    for v in [theta, lambda, xi] {
        if v.partition().is_constant() {
            return Err(Error::Precondition(format!(
                "`{}` is constant, hence not maximal",
                v.name()
            )));
        }
    }
    if lambda.value_count() != theta.value_count() || xi.value_count() != theta.value_count() {
        return Err(Error::ValueSpaceMismatch {
            left: theta.value_count(),
            right: if lambda.value_count() != theta.value_count() {
                lambda.value_count()
            } else {
                xi.value_count()
            },
        });
    }
    let n = theta.domain().len();
    if n > MAX_SYMMETRIC_SEARCH {
        return Err(Error::Budget(format!(
            "construction enumerates all permutations; limited to {MAX_SYMMETRIC_SEARCH} points, got {n}"
        )));
    }
    let joint = theta
        .partition()
        .meet(lambda.partition())
        .meet(xi.partition());
    let ambient = ambient_permutations(theta, &joint);
    let fpf: Vec<&Permutation> = ambient.iter().filter(|p| p.is_fixed_point_free()).collect();

    let mut tried = 0;
    let mut found = None;
    'search: for size in 1..=budget.max_generators.max(1) {
        let mut idx: Vec<usize> = (0..size).collect();
        if size > fpf.len() {
            break;
        }
        loop {
            if tried >= budget.generator_sets {
                break 'search;
            }
            tried += 1;
            let gens: Vec<Permutation> = idx.iter().map(|&i| fpf[i].clone()).collect();
            if let Ok(g) = PermutationGroup::generate_with_cap(n, gens, n) {
                if g.order() == n && g.is_transitive() && g.has_trivial_isotropy() {
                    found = Some(g);
                    break 'search;
                }
            }
            // next combination
            let mut i = size;
            loop {
                if i == 0 {
                    continue 'search;
                }
                i -= 1;
                if idx[i] < fpf.len() - size + i {
                    break;
                }
            }
            idx[i] += 1;
            for j in i + 1..size {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }

    let (transitive, trivial_isotropy, permissible, contains_relating_k) = match &found {
        Some(g) => (
            g.is_transitive(),
            g.has_trivial_isotropy(),
            is_permissible(theta, g)?,
            g.elements().iter().any(|k| relates_by(theta, lambda, k)),
        ),
        None => (false, false, false, false),
    };
    Ok(ConstructionReport {
        ambient_order: ambient.len(),
        generator_sets_tried: tried,
        generators: found
            .as_ref()
            .map(|g| g.generators().to_vec())
            .unwrap_or_default(),
        group: found,
        transitive,
        trivial_isotropy,
        permissible,
        contains_relating_k,
    })
}

/// Aggregate of one exhaustive sweep.
#[derive(Debug, Clone, Serialize)]
pub struct FalsifierReport {
    pub max_n: usize,
    pub complete: bool,
    pub instances: usize,
    pub instances_by_n: Vec<(usize, usize)>,
    pub mixed: usize,
    pub hypotheses_satisfied: usize,
    pub counterexamples: Vec<Counterexample>,
}

/// A mixed verdict under satisfied hypotheses, fully checkable.
#[derive(Debug, Clone, Serialize)]
pub struct Counterexample {
    pub n: usize,
    pub partitions: Vec<String>,
    pub group_generators: Vec<Permutation>,
    pub classification: Classification,
}

/// Classifies every triple of distinct balanced partitions of `0..n`
/// (`2 <= r < n` blocks) under one subgroup per conjugacy class of `S_n`,
/// for every `n <= max_n`. Stops early, marking the report incomplete,
/// once `budget` instances have been classified.
pub fn exhaustive_falsifier(max_n: usize, budget: Option<usize>) -> Result<FalsifierReport> {
    if max_n > MAX_FALSIFIER_N {
        return Err(Error::Budget(format!(
            "exhaustive falsifier is limited to max_n <= {MAX_FALSIFIER_N}, got {max_n}"
        )));
    }
    let mut report = FalsifierReport {
        max_n,
        complete: true,
        instances: 0,
        instances_by_n: Vec::new(),
        mixed: 0,
        hypotheses_satisfied: 0,
        counterexamples: Vec::new(),
    };
    'outer: for n in 1..=max_n {
        let mut triples: Vec<[Partition; 3]> = Vec::new();
        for r in 2..n {
            let parts = balanced_partitions(n, r);
            for i in 0..parts.len() {
                for j in i + 1..parts.len() {
                    for k in j + 1..parts.len() {
                        triples.push([parts[i].clone(), parts[j].clone(), parts[k].clone()]);
                    }
                }
            }
        }
        let mut count = 0;
        if !triples.is_empty() {
            let domain = Arc::new(PointSpace::range(format!("omega{n}"), n)?);
            let groups = subgroup_class_representatives(n)?;
            for t in &triples {
                let family = t
                    .iter()
                    .enumerate()
                    .map(|(i, p)| variable_from_partition(format!("t{i}"), &domain, p))
                    .collect::<Result<Vec<_>>>()?;
                for g in &groups {
                    if budget.is_some_and(|b| report.instances >= b) {
                        report.complete = false;
                        report.instances_by_n.push((n, count));
                        break 'outer;
                    }
                    let s = ThoughtScenario::new(family.clone(), g.clone(), None)?;
                    let c = classify_thoughts(&s)?;
                    count += 1;
                    report.instances += 1;
                    if c.verdict == Verdict::Mixed {
                        report.mixed += 1;
                    }
                    if c.hypotheses.satisfied {
                        report.hypotheses_satisfied += 1;
                    }
                    if c.is_counterexample() {
                        report.counterexamples.push(Counterexample {
                            n,
                            partitions: t.iter().map(ToString::to_string).collect(),
                            group_generators: g.generators().to_vec(),
                            classification: c,
                        });
                    }
                }
            }
        }
        report.instances_by_n.push((n, count));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dom(n: usize) -> Arc<PointSpace> {
        Arc::new(PointSpace::range("omega", n).unwrap())
    }

    fn var(name: &str, d: &Arc<PointSpace>, a: &[usize]) -> ConceptualVariable {
        let k = a.iter().max().unwrap() + 1;
        ConceptualVariable::new(
            name,
            d.clone(),
            (0..k).map(|v| v as f64).collect(),
            a.to_vec(),
        )
        .unwrap()
    }

    fn z6_windows() -> (Arc<PointSpace>, Vec<ConceptualVariable>) {
        let d = dom(6);
        let w0 = var("w0", &d, &[0, 0, 0, 1, 1, 1]);
        let w1 = var("w1", &d, &[1, 0, 0, 0, 1, 1]);
        let w2 = var("w2", &d, &[1, 1, 0, 0, 0, 1]);
        (d, vec![w0, w1, w2])
    }

    #[test]
    fn partition_counts() {
        let bell: Vec<usize> = (1..=6).map(|n| set_partitions(n).len()).collect();
        assert_eq!(bell, vec![1, 2, 5, 15, 52, 203]);
        assert_eq!(balanced_partitions(4, 2).len(), 3);
        assert_eq!(balanced_partitions(6, 2).len(), 10);
        assert_eq!(balanced_partitions(6, 3).len(), 15);
    }

    #[test]
    fn rotated_windows_are_all_related() {
        let (_, fam) = z6_windows();
        let s = ThoughtScenario::new(fam, PermutationGroup::cyclic(6), None).unwrap();
        let c = classify_thoughts(&s).unwrap();
        assert_eq!(c.verdict, Verdict::AllRelated);
        assert_eq!(c.related.len(), 3);
    }

    #[test]
    fn trivial_group_separates_everything() {
        let (_, fam) = z6_windows();
        let s = ThoughtScenario::new(fam, PermutationGroup::trivial(6), None).unwrap();
        let c = classify_thoughts(&s).unwrap();
        assert_eq!(c.verdict, Verdict::AllEssentiallyDifferent);
        assert!(!c.hypotheses.satisfied);
    }

    #[test]
    fn mixed_family_fails_hypotheses() {
        let (d, fam) = z6_windows();
        let parity = var("parity", &d, &[0, 1, 0, 1, 0, 1]);
        let s = ThoughtScenario::new(
            vec![fam[0].clone(), fam[1].clone(), parity],
            PermutationGroup::cyclic(6),
            None,
        )
        .unwrap();
        let c = classify_thoughts(&s).unwrap();
        assert_eq!(c.verdict, Verdict::Mixed);
        assert!(!c.hypotheses.permissible_related_member);
        assert!(!c.is_counterexample());
    }

    #[test]
    fn small_family_is_rejected() {
        let (_, fam) = z6_windows();
        let s = ThoughtScenario::new(fam[..2].to_vec(), PermutationGroup::cyclic(6), None).unwrap();
        assert!(classify_thoughts(&s).is_err());
    }

    #[test]
    fn a1_parity_on_z4_passes() {
        let d = dom(4);
        let parity = var("parity", &d, &[0, 1, 0, 1]);
        let eta = parity.compose(&Permutation::rotation(4, 1)).unwrap();
        let s =
            ThoughtScenario::new(vec![parity.clone()], PermutationGroup::cyclic(4), None).unwrap();
        match theorem_a1_search(&parity, &eta, &s, true).unwrap() {
            A1Outcome::Pass {
                candidates_examined,
                ..
            } => assert_eq!(candidates_examined, 4),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn a1_with_trivial_group_is_not_applicable() {
        let d = dom(4);
        let parity = var("parity", &d, &[0, 1, 0, 1]);
        let s =
            ThoughtScenario::new(vec![parity.clone()], PermutationGroup::trivial(4), None).unwrap();
        assert!(matches!(
            theorem_a1_search(&parity, &parity, &s, false).unwrap(),
            A1Outcome::NotApplicable { .. }
        ));
    }

    #[test]
    fn a1_with_impermissible_theta_reports_witness() {
        let d = dom(4);
        let halves = var("halves", &d, &[0, 0, 1, 1]);
        let g = PermutationGroup::generate(4, vec![Permutation::new(vec![0, 2, 1, 3]).unwrap()])
            .unwrap();
        let s = ThoughtScenario::new(vec![halves.clone()], g, None).unwrap();
        match theorem_a1_search(&halves, &halves, &s, false).unwrap() {
            A1Outcome::NotApplicable {
                witness: Some(w), ..
            } => assert!(w.breaks(&halves)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn construction_on_z4_is_cyclic() {
        let d = dom(4);
        let parity = var("parity", &d, &[0, 1, 0, 1]);
        let lambda = parity.compose(&Permutation::rotation(4, 1)).unwrap();
        let halves = var("halves", &d, &[0, 0, 1, 1]);
        let r = proof_group_construction(&parity, &lambda, &halves, ConstructionBudget::default())
            .unwrap();
        assert!(r.succeeded());
        let g = r.group.unwrap();
        assert_eq!(g.order(), 4);
        assert!(g.elements().iter().any(|p| p.order() == 4));
        assert!(r.contains_relating_k);
    }

    #[test]
    fn construction_on_six_points() {
        let (d, fam) = z6_windows();
        let parity = var("parity", &d, &[0, 1, 0, 1, 0, 1]);
        let r = proof_group_construction(&fam[0], &fam[1], &parity, ConstructionBudget::default())
            .unwrap();
        assert!(r.succeeded(), "{r:?}");
    }

    #[test]
    fn construction_rejects_constant() {
        let d = dom(4);
        let c = var("c", &d, &[0, 0, 0, 0]);
        assert!(matches!(
            proof_group_construction(&c, &c, &c, ConstructionBudget::default()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn falsifier_small_sizes() {
        let r2 = exhaustive_falsifier(2, None).unwrap();
        assert_eq!(r2.instances, 0);
        assert!(r2.complete);
        let r4 = exhaustive_falsifier(4, None).unwrap();
        assert_eq!(r4.instances, 11);
        assert!(r4.counterexamples.is_empty());
        let partial = exhaustive_falsifier(4, Some(5)).unwrap();
        assert!(!partial.complete);
        assert_eq!(partial.instances, 5);
        assert!(exhaustive_falsifier(7, None).is_err());
    }
}
