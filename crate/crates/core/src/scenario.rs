//! Scenario files: a JSON description of a space, its variables, groups,
//! representations, operators and the checks to run on them.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::action::ProductStructure;
use crate::harness::Verdict;
use crate::linalg::{ComplexMatrix, StateVector, C64};
use crate::perm::{Permutation, PermutationGroup, DEFAULT_GROUP_CAP};
use crate::rep::{cyclic_dft_rep, qubit_rep, UnitaryRep};
use crate::spaces::{ConceptualVariable, PointSpace, VariableFamily};
use crate::spin::SpinDirection;
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScenarioError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{location}: {message}")]
    Validation { location: String, message: String },
    #[error("unknown builtin scenario `{0}`")]
    UnknownBuiltin(String),
    #[error("cannot read `{path}`: {message}")]
    Io { path: String, message: String },
}

fn invalid(location: impl Into<String>, message: impl std::fmt::Display) -> ScenarioError {
    ScenarioError::Validation {
        location: location.into(),
        message: message.to_string(),
    }
}

fn is_false(b: &bool) -> bool {
    !*b
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub name: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub description: String,
    pub space: SpaceSpec,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub variables: Vec<VariableSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilySpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub product: Option<ProductSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub groups: Vec<GroupSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub representations: Vec<RepresentationSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub operators: Vec<OperatorSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerances: Option<Tolerances>,
    pub checks: Vec<CheckSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceSpec {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VariableSpec {
    pub name: String,
    pub values: Vec<f64>,
    pub assignment: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "is_false")]
    pub inaccessible_total: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductSpec {
    pub first: String,
    pub second: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub name: String,
    pub generators: Vec<Permutation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
}

/// A complex number written as `[re, im]`.
pub type ComplexPair = [f64; 2];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitGenerator {
    pub permutation: Permutation,
    pub matrix: Vec<Vec<ComplexPair>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum RepresentationSpec {
    Qubit {
        name: String,
    },
    CyclicDft {
        name: String,
        n: usize,
    },
    Explicit {
        name: String,
        degree: usize,
        generators: Vec<ExplicitGenerator>,
    },
}

impl RepresentationSpec {
    pub fn name(&self) -> &str {
        match self {
            RepresentationSpec::Qubit { name }
            | RepresentationSpec::CyclicDft { name, .. }
            | RepresentationSpec::Explicit { name, .. } => name,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum OperatorSpec {
    /// Built from the coherent states of `representation`, through the
    /// maximal variable `via` (defaults to `variable` itself).
    Coherent {
        name: String,
        variable: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        via: Option<String>,
        group: String,
        representation: String,
        /// Value of the base state; defaults to the first listed value.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        base_value: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        base_state: Option<Vec<ComplexPair>>,
    },
    Spin {
        name: String,
        direction: SpinDirection,
    },
    Delta {
        name: String,
    },
}

impl OperatorSpec {
    pub fn name(&self) -> &str {
        match self {
            OperatorSpec::Coherent { name, .. }
            | OperatorSpec::Spin { name, .. }
            | OperatorSpec::Delta { name } => name,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelatedSpec {
    pub variable: String,
    pub group: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum CheckSpec {
    Permissibility {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        variable: String,
        group: String,
        #[serde(default = "default_true")]
        expect: bool,
    },
    InducedGroup {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        variable: String,
        group: String,
    },
    Theorem1Hypotheses {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        operator: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        related: Option<RelatedSpec>,
    },
    Theorem2 {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        operator: String,
    },
    OperatorSpectrum {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        operator: String,
    },
    Maximality {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        operators: Vec<String>,
    },
    Eq1Expansion {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        target: String,
        target_value: f64,
        basis: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        expected: Option<Vec<ComplexPair>>,
    },
    SingletDelta {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        #[serde(default = "default_grid")]
        grid: usize,
    },
    TrivialExchange {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        theta: String,
        eta: String,
        group: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        expect: Option<bool>,
    },
    A1Search {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        theta: String,
        eta: String,
        group: String,
        #[serde(default, skip_serializing_if = "is_false")]
        all_same_shape: bool,
    },
    A2Classify {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        members: Vec<String>,
        group: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        expect: Option<Verdict>,
    },
    A2Construct {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        theta: String,
        lambda: String,
        xi: String,
    },
    A2Falsify {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        max_n: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        budget: Option<usize>,
    },
    RotationSignProbe {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        variable: String,
        group: String,
    },
}

fn default_true() -> bool {
    true
}

fn default_grid() -> usize {
    6
}

impl CheckSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            CheckSpec::Permissibility { .. } => "permissibility",
            CheckSpec::InducedGroup { .. } => "induced-group",
            CheckSpec::Theorem1Hypotheses { .. } => "theorem1-hypotheses",
            CheckSpec::Theorem2 { .. } => "theorem2",
            CheckSpec::OperatorSpectrum { .. } => "operator-spectrum",
            CheckSpec::Maximality { .. } => "maximality",
            CheckSpec::Eq1Expansion { .. } => "eq1-expansion",
            CheckSpec::SingletDelta { .. } => "singlet-delta",
            CheckSpec::TrivialExchange { .. } => "trivial-exchange",
            CheckSpec::A1Search { .. } => "a1-search",
            CheckSpec::A2Classify { .. } => "a2-classify",
            CheckSpec::A2Construct { .. } => "a2-construct",
            CheckSpec::A2Falsify { .. } => "a2-falsify",
            CheckSpec::RotationSignProbe { .. } => "rotation-sign-probe",
        }
    }

    pub fn explicit_name(&self) -> Option<&str> {
        match self {
            CheckSpec::Permissibility { name, .. }
            | CheckSpec::InducedGroup { name, .. }
            | CheckSpec::Theorem1Hypotheses { name, .. }
            | CheckSpec::Theorem2 { name, .. }
            | CheckSpec::OperatorSpectrum { name, .. }
            | CheckSpec::Maximality { name, .. }
            | CheckSpec::Eq1Expansion { name, .. }
            | CheckSpec::SingletDelta { name, .. }
            | CheckSpec::TrivialExchange { name, .. }
            | CheckSpec::A1Search { name, .. }
            | CheckSpec::A2Classify { name, .. }
            | CheckSpec::A2Construct { name, .. }
            | CheckSpec::A2Falsify { name, .. }
            | CheckSpec::RotationSignProbe { name, .. } => name.as_deref(),
        }
    }

    /// The explicit name, or `kind#position` (1-based).
    pub fn display_name(&self, index: usize) -> String {
        self.explicit_name()
            .map(str::to_string)
            .unwrap_or_else(|| format!("{}#{}", self.kind(), index + 1))
    }
}

impl ScenarioFile {
    pub fn from_json(text: &str) -> Result<Self, ScenarioError> {
        serde_json::from_str(text).map_err(|e| ScenarioError::Parse(e.to_string()))
    }

    pub fn from_path(path: &std::path::Path) -> Result<Self, ScenarioError> {
        let text = std::fs::read_to_string(path).map_err(|e| ScenarioError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("scenario is serializable");
        s.push('\n');
        s
    }
}

/// A scenario with every reference resolved and every object constructed.
#[derive(Debug, Clone)]
pub struct Model {
    pub name: String,
    pub space: Arc<PointSpace>,
    pub variables: BTreeMap<String, ConceptualVariable>,
    pub family: Option<VariableFamily>,
    pub product: Option<ProductStructure>,
    pub groups: BTreeMap<String, PermutationGroup>,
    pub representations: BTreeMap<String, UnitaryRep>,
    pub operators: Vec<OperatorSpec>,
    pub tolerances: Tolerances,
    pub checks: Vec<CheckSpec>,
}

fn complex_vec(v: &[ComplexPair]) -> Vec<C64> {
    v.iter().map(|[re, im]| C64::new(*re, *im)).collect()
}

impl Model {
    pub fn get_variable(&self, name: &str) -> Option<&ConceptualVariable> {
        self.variables.get(name)
    }

    pub fn operator_spec(&self, name: &str) -> Option<&OperatorSpec> {
        self.operators.iter().find(|o| o.name() == name)
    }

    pub fn base_state(spec: &[ComplexPair]) -> StateVector {
        StateVector::new(complex_vec(spec))
    }

    pub fn build(file: &ScenarioFile) -> Result<Self, ScenarioError> {
        if file.name.trim().is_empty() {
            return Err(invalid("name", "must not be empty"));
        }
        let space = match (&file.space.labels, file.space.size) {
            (Some(labels), None) => PointSpace::new(file.space.id.clone(), labels.clone()),
            (None, Some(n)) => PointSpace::range(file.space.id.clone(), n),
            _ => return Err(invalid("space", "give exactly one of `labels` or `size`")),
        }
        .map_err(|e| invalid("space", e))?;
        let space = Arc::new(space);
        let n = space.len();
        let tolerances = file.tolerances.unwrap_or_default();

        let mut variables = BTreeMap::new();
        for (i, v) in file.variables.iter().enumerate() {
            let loc = format!("variables[{i}]");
            let var = ConceptualVariable::new(
                v.name.clone(),
                space.clone(),
                v.values.clone(),
                v.assignment.clone(),
            )
            .map_err(|e| invalid(&loc, e))?;
            if variables.insert(v.name.clone(), var).is_some() {
                return Err(invalid(
                    loc,
                    format!("duplicate variable name `{}`", v.name),
                ));
            }
        }
        let lookup_var = |loc: &str, name: &str| -> Result<ConceptualVariable, ScenarioError> {
            variables
                .get(name)
                .cloned()
                .ok_or_else(|| invalid(loc, format!("unknown variable `{name}`")))
        };

        let family = match &file.family {
            None => None,
            Some(f) => {
                let gens = f
                    .generators
                    .iter()
                    .enumerate()
                    .map(|(i, g)| lookup_var(&format!("family.generators[{i}]"), g))
                    .collect::<Result<Vec<_>, _>>()?;
                Some(
                    VariableFamily::new(gens, f.inaccessible_total)
                        .map_err(|e| invalid("family", e))?,
                )
            }
        };
        let product = match &file.product {
            None => None,
            Some(p) => Some(
                ProductStructure::new(
                    lookup_var("product.first", &p.first)?,
                    lookup_var("product.second", &p.second)?,
                )
                .map_err(|e| invalid("product", e))?,
            ),
        };

        let mut groups = BTreeMap::new();
        for (i, g) in file.groups.iter().enumerate() {
            let loc = format!("groups[{i}]");
            if let Some(bad) = g.generators.iter().find(|p| p.degree() != n) {
                return Err(invalid(
                    &loc,
                    format!(
                        "generator {bad} has degree {} but the space has {n} points",
                        bad.degree()
                    ),
                ));
            }
            let group = PermutationGroup::generate_with_cap(
                n,
                g.generators.clone(),
                g.cap.unwrap_or(DEFAULT_GROUP_CAP),
            )
            .map_err(|e| invalid(&loc, e))?;
            if groups.insert(g.name.clone(), group).is_some() {
                return Err(invalid(loc, format!("duplicate group name `{}`", g.name)));
            }
        }

        let mut representations = BTreeMap::new();
        for (i, r) in file.representations.iter().enumerate() {
            let loc = format!("representations[{i}]");
            let rep = match r {
                RepresentationSpec::Qubit { .. } => Ok(qubit_rep()),
                RepresentationSpec::CyclicDft { n, .. } => cyclic_dft_rep(*n),
                RepresentationSpec::Explicit {
                    degree, generators, ..
                } => {
                    let mut gens = Vec::new();
                    for (j, g) in generators.iter().enumerate() {
                        let rows = g.matrix.iter().map(|row| complex_vec(row)).collect();
                        let m = ComplexMatrix::from_rows(rows)
                            .map_err(|e| invalid(format!("{loc}.generators[{j}].matrix"), e))?;
                        if g.permutation.degree() != *degree {
                            return Err(invalid(
                                format!("{loc}.generators[{j}].permutation"),
                                format!("degree {} differs from {degree}", g.permutation.degree()),
                            ));
                        }
                        gens.push((g.permutation.clone(), m));
                    }
                    UnitaryRep::from_generators(*degree, gens, &tolerances)
                }
            }
            .map_err(|e| invalid(&loc, e))?;
            if representations.insert(r.name().to_string(), rep).is_some() {
                return Err(invalid(
                    loc,
                    format!("duplicate representation name `{}`", r.name()),
                ));
            }
        }

        let mut op_names = HashSet::new();
        for (i, o) in file.operators.iter().enumerate() {
            let loc = format!("operators[{i}]");
            if !op_names.insert(o.name().to_string()) {
                return Err(invalid(
                    loc,
                    format!("duplicate operator name `{}`", o.name()),
                ));
            }
            if let OperatorSpec::Coherent {
                variable,
                via,
                group,
                representation,
                base_value,
                base_state,
                ..
            } = o
            {
                lookup_var(&format!("{loc}.variable"), variable)?;
                let max = lookup_var(&format!("{loc}.via"), via.as_deref().unwrap_or(variable))?;
                if !groups.contains_key(group) {
                    return Err(invalid(
                        format!("{loc}.group"),
                        format!("unknown group `{group}`"),
                    ));
                }
                let Some(rep) = representations.get(representation) else {
                    return Err(invalid(
                        format!("{loc}.representation"),
                        format!("unknown representation `{representation}`"),
                    ));
                };
                if let Some(b) = base_value {
                    if !max.values().contains(b) {
                        return Err(invalid(
                            format!("{loc}.base_value"),
                            format!("{b} is not a value of `{}`", max.name()),
                        ));
                    }
                }
                if let Some(s) = base_state {
                    if s.len() != rep.dim() {
                        return Err(invalid(
                            format!("{loc}.base_state"),
                            format!(
                                "{} amplitudes for a {}-dimensional representation",
                                s.len(),
                                rep.dim()
                            ),
                        ));
                    }
                }
            }
        }

        if file.checks.is_empty() {
            return Err(invalid("checks", "at least one check is required"));
        }
        let mut names = HashSet::new();
        let model = Self {
            name: file.name.clone(),
            space,
            variables,
            family,
            product,
            groups,
            representations,
            operators: file.operators.clone(),
            tolerances,
            checks: file.checks.clone(),
        };
        for (i, c) in file.checks.iter().enumerate() {
            let loc = format!("checks[{i}]");
            if !names.insert(c.display_name(i)) {
                return Err(invalid(
                    &loc,
                    format!("duplicate check name `{}`", c.display_name(i)),
                ));
            }
            model.validate_check(&loc, c)?;
        }
        Ok(model)
    }

    fn need_var(&self, loc: &str, field: &str, name: &str) -> Result<(), ScenarioError> {
        if self.variables.contains_key(name) {
            Ok(())
        } else {
            Err(invalid(
                format!("{loc}.{field}"),
                format!("unknown variable `{name}`"),
            ))
        }
    }

    fn need_group(&self, loc: &str, field: &str, name: &str) -> Result<(), ScenarioError> {
        if self.groups.contains_key(name) {
            Ok(())
        } else {
            Err(invalid(
                format!("{loc}.{field}"),
                format!("unknown group `{name}`"),
            ))
        }
    }

    fn need_op(&self, loc: &str, field: &str, name: &str) -> Result<(), ScenarioError> {
        if self.operator_spec(name).is_some() {
            Ok(())
        } else {
            Err(invalid(
                format!("{loc}.{field}"),
                format!("unknown operator `{name}`"),
            ))
        }
    }

    fn validate_check(&self, loc: &str, c: &CheckSpec) -> Result<(), ScenarioError> {
        match c {
            CheckSpec::Permissibility {
                variable, group, ..
            }
            | CheckSpec::InducedGroup {
                variable, group, ..
            }
            | CheckSpec::RotationSignProbe {
                variable, group, ..
            } => {
                self.need_var(loc, "variable", variable)?;
                self.need_group(loc, "group", group)
            }
            CheckSpec::Theorem1Hypotheses {
                operator, related, ..
            } => {
                self.need_op(loc, "operator", operator)?;
                if let Some(r) = related {
                    self.need_var(loc, "related.variable", &r.variable)?;
                    self.need_group(loc, "related.group", &r.group)?;
                }
                Ok(())
            }
            CheckSpec::Theorem2 { operator, .. } | CheckSpec::OperatorSpectrum { operator, .. } => {
                self.need_op(loc, "operator", operator)
            }
            CheckSpec::Maximality { operators, .. } => {
                if self.family.is_none() {
                    return Err(invalid(loc, "maximality needs a declared family"));
                }
                for (i, o) in operators.iter().enumerate() {
                    self.need_op(loc, &format!("operators[{i}]"), o)?;
                }
                Ok(())
            }
            CheckSpec::Eq1Expansion { target, basis, .. } => {
                self.need_op(loc, "target", target)?;
                self.need_op(loc, "basis", basis)
            }
            CheckSpec::SingletDelta { grid, .. } => {
                if *grid == 0 {
                    Err(invalid(format!("{loc}.grid"), "must be at least 1"))
                } else {
                    Ok(())
                }
            }
            CheckSpec::TrivialExchange {
                theta, eta, group, ..
            }
            | CheckSpec::A1Search {
                theta, eta, group, ..
            } => {
                self.need_var(loc, "theta", theta)?;
                self.need_var(loc, "eta", eta)?;
                self.need_group(loc, "group", group)
            }
            CheckSpec::A2Classify { members, group, .. } => {
                for (i, m) in members.iter().enumerate() {
                    self.need_var(loc, &format!("members[{i}]"), m)?;
                }
                self.need_group(loc, "group", group)
            }
            CheckSpec::A2Construct {
                theta, lambda, xi, ..
            } => {
                self.need_var(loc, "theta", theta)?;
                self.need_var(loc, "lambda", lambda)?;
                self.need_var(loc, "xi", xi)
            }
            CheckSpec::A2Falsify { max_n, .. } => {
                if *max_n > crate::harness::MAX_FALSIFIER_N {
                    Err(invalid(
                        format!("{loc}.max_n"),
                        format!("at most {} is supported", crate::harness::MAX_FALSIFIER_N),
                    ))
                } else {
                    Ok(())
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
        "name": "mini",
        "space": {"id": "omega", "size": 4},
        "variables": [{"name": "parity", "values": [0, 1], "assignment": [0, 1, 0, 1]}],
        "groups": [{"name": "C4", "generators": [[1, 2, 3, 0]]}],
        "checks": [{"kind": "permissibility", "variable": "parity", "group": "C4"}]
    }"#;

    #[test]
    fn minimal_scenario_builds() {
        let f = ScenarioFile::from_json(MINIMAL).unwrap();
        let m = Model::build(&f).unwrap();
        assert_eq!(m.groups["C4"].order(), 4);
        assert_eq!(f.checks[0].display_name(0), "permissibility#1");
        let again = ScenarioFile::from_json(&f.to_json()).unwrap();
        assert_eq!(again, f);
    }

    #[test]
    fn missing_space_is_a_parse_error() {
        let text = r#"{"name": "x", "checks": []}"#;
        assert!(matches!(
            ScenarioFile::from_json(text),
            Err(ScenarioError::Parse(_))
        ));
    }

    #[test]
    fn unknown_reference_carries_location() {
        let text = MINIMAL.replace(r#""group": "C4"}"#, r#""group": "C5"}"#);
        let f = ScenarioFile::from_json(&text).unwrap();
        match Model::build(&f) {
            Err(ScenarioError::Validation { location, .. }) => {
                assert_eq!(location, "checks[0].group")
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn bad_assignment_is_rejected() {
        let text = MINIMAL.replace("[0, 1, 0, 1]", "[0, 1, 0]");
        let f = ScenarioFile::from_json(&text).unwrap();
        match Model::build(&f) {
            Err(ScenarioError::Validation { location, .. }) => assert_eq!(location, "variables[0]"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn empty_checks_are_rejected() {
        let text = r#"{"name": "x", "space": {"id": "o", "size": 2}, "checks": []}"#;
        let f = ScenarioFile::from_json(text).unwrap();
        assert!(matches!(
            Model::build(&f),
            Err(ScenarioError::Validation { .. })
        ));
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let text = MINIMAL.replace(
            r#""kind": "permissibility","#,
            r#""kind": "permissibility", "bogus": 1,"#,
        );
        assert!(ScenarioFile::from_json(&text).is_err());
    }
}
