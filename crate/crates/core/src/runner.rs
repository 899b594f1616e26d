//! Executes the checks of a validated scenario and assembles the report.

use std::collections::BTreeMap;
use std::time::Instant;

use serde_json::{json, Value};

use crate::action::{
    are_related, are_related_in, flag_trivial_exchange, induced_group, permissibility_witness,
    relating_elements, RelatednessScope, MAX_SYMMETRIC_SEARCH,
};
use crate::error::Error;
use crate::harness::{
    classify_thoughts, exhaustive_falsifier, proof_group_construction, theorem_a1_search,
    A1Outcome, ConstructionBudget, ThoughtScenario, MAX_FALSIFIER_N,
};
use crate::linalg::{ComplexMatrix, C64};
use crate::perm::PermutationGroup;
use crate::rep::{
    check_coherent_injectivity, expand_eigenvector, CoherentFamily, OperatorBundle,
    OperatorPipeline,
};
use crate::report::{CheckRecord, RunSettings, Status, VerificationReport};
use crate::scenario::{CheckSpec, Model, OperatorSpec, ScenarioError, ScenarioFile};
use crate::spaces::{is_maximal, ConceptualVariable};
use crate::spin::{
    anticorrelation_residual, delta_matrix, eigen_residual, singlet, spin_component_bundle,
    swap_matrix, SpinDirection, QUOTED_TRIPLET_VALUE, SINGLET_VALUE,
};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, PartialEq)]
pub struct RunOptions {
    pub tolerance_scale: f64,
    pub exhaustive_relatedness: bool,
    pub max_n_override: Option<usize>,
    pub timings: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            tolerance_scale: 1.0,
            exhaustive_relatedness: false,
            max_n_override: None,
            timings: false,
        }
    }
}

struct BuiltOperator {
    bundle: OperatorBundle,
    pipeline: Option<OperatorPipeline>,
    /// The variable on the total space, for coherent operators.
    variable: Option<ConceptualVariable>,
}

type Outcome = (Status, String, Value);

struct Runner<'a> {
    model: &'a Model,
    tol: Tolerances,
    opts: &'a RunOptions,
    operators: BTreeMap<String, Result<BuiltOperator, String>>,
}

fn c2(z: C64) -> [f64; 2] {
    [z.re, z.im]
}

fn matrix_json(m: &ComplexMatrix) -> Value {
    let rows: Vec<Vec<[f64; 2]>> = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| c2(m[(i, j)])).collect())
        .collect();
    json!(rows)
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable")
}

pub fn run_scenario(
    file: &ScenarioFile,
    opts: &RunOptions,
) -> Result<VerificationReport, ScenarioError> {
    if !(opts.tolerance_scale.is_finite() && opts.tolerance_scale > 0.0) {
        return Err(ScenarioError::Validation {
            location: "--tolerance-scale".into(),
            message: format!("must be a positive number, got {}", opts.tolerance_scale),
        });
    }
    if let Some(n) = opts.max_n_override {
        if n > MAX_FALSIFIER_N {
            return Err(ScenarioError::Validation {
                location: "--max-n".into(),
                message: format!("at most {MAX_FALSIFIER_N} is supported, got {n}"),
            });
        }
    }
    let model = Model::build(file)?;
    let tol = model.tolerances.scaled(opts.tolerance_scale);
    let mut runner = Runner {
        model: &model,
        tol,
        opts,
        operators: BTreeMap::new(),
    };
    for spec in &model.operators {
        let built = runner.build_operator(spec).map_err(|e| e.to_string());
        runner.operators.insert(spec.name().to_string(), built);
    }
    let mut records = Vec::with_capacity(model.checks.len());
    for (i, check) in model.checks.iter().enumerate() {
        let start = Instant::now();
        let (status, summary, details) = runner.run_check(check);
        let elapsed = start.elapsed().as_secs_f64() * 1e3;
        records.push(CheckRecord {
            name: check.display_name(i),
            kind: check.kind().to_string(),
            status,
            summary,
            details,
            elapsed_ms: opts.timings.then_some(elapsed),
        });
    }
    Ok(VerificationReport::new(
        model.name.clone(),
        RunSettings {
            tolerance_scale: opts.tolerance_scale,
            exhaustive_relatedness: opts.exhaustive_relatedness,
            max_n: opts.max_n_override,
        },
        tol,
        records,
    ))
}

fn error_outcome(e: impl std::fmt::Display) -> Outcome {
    (Status::Error, e.to_string(), Value::Null)
}

impl Runner<'_> {
    fn var(&self, name: &str) -> &ConceptualVariable {
        self.model.get_variable(name).expect("validated reference")
    }

    fn group(&self, name: &str) -> &PermutationGroup {
        &self.model.groups[name]
    }

    fn op(&self, name: &str) -> Result<&BuiltOperator, String> {
        match self.operators.get(name) {
            Some(Ok(b)) => Ok(b),
            Some(Err(e)) => Err(format!("operator `{name}` could not be built: {e}")),
            None => Err(format!("unknown operator `{name}`")),
        }
    }

    fn build_operator(&self, spec: &OperatorSpec) -> Result<BuiltOperator, Error> {
        match spec {
            OperatorSpec::Coherent {
                name,
                variable,
                via,
                group,
                representation,
                base_value,
                base_state,
            } => {
                let var = self.var(variable).clone();
                let max = self.var(via.as_deref().unwrap_or(variable)).clone();
                let base_idx = base_value
                    .and_then(|b| max.values().iter().position(|v| *v == b))
                    .unwrap_or(0);
                let pipeline = OperatorPipeline::new(
                    max,
                    self.group(group).clone(),
                    self.model.representations[representation].clone(),
                    base_state.as_deref().map(Model::base_state),
                    base_idx,
                    self.tol,
                )?;
                let bundle = pipeline.operator(&var)?.renamed(name.clone());
                Ok(BuiltOperator {
                    bundle,
                    pipeline: Some(pipeline),
                    variable: Some(var),
                })
            }
            OperatorSpec::Spin { name, direction } => Ok(BuiltOperator {
                bundle: spin_component_bundle(name, direction, &self.tol)?,
                pipeline: None,
                variable: None,
            }),
            OperatorSpec::Delta { name } => Ok(BuiltOperator {
                bundle: OperatorBundle::from_hermitian(name.clone(), delta_matrix(), &self.tol)?,
                pipeline: None,
                variable: None,
            }),
        }
    }

    fn run_check(&self, check: &CheckSpec) -> Outcome {
        let result = match check {
            CheckSpec::Permissibility {
                variable,
                group,
                expect,
                ..
            } => self.permissibility(variable, group, *expect),
            CheckSpec::InducedGroup {
                variable, group, ..
            } => self.induced(variable, group),
            CheckSpec::Theorem1Hypotheses {
                operator, related, ..
            } => self.theorem1(
                operator,
                related
                    .as_ref()
                    .map(|r| (r.variable.as_str(), r.group.as_str())),
            ),
            CheckSpec::Theorem2 { operator, .. } => self.theorem2(operator),
            CheckSpec::OperatorSpectrum { operator, .. } => self.spectrum(operator),
            CheckSpec::Maximality { operators, .. } => self.maximality(operators),
            CheckSpec::Eq1Expansion {
                target,
                target_value,
                basis,
                expected,
                ..
            } => self.expansion(target, *target_value, basis, expected.as_deref()),
            CheckSpec::SingletDelta { grid, .. } => self.singlet_delta(*grid),
            CheckSpec::TrivialExchange {
                theta,
                eta,
                group,
                expect,
                ..
            } => self.trivial_exchange(theta, eta, group, *expect),
            CheckSpec::A1Search {
                theta,
                eta,
                group,
                all_same_shape,
                ..
            } => self.a1(theta, eta, group, *all_same_shape),
            CheckSpec::A2Classify {
                members,
                group,
                expect,
                ..
            } => self.a2_classify(members, group, *expect),
            CheckSpec::A2Construct {
                theta, lambda, xi, ..
            } => self.a2_construct(theta, lambda, xi),
            CheckSpec::A2Falsify { max_n, budget, .. } => self.a2_falsify(*max_n, *budget),
            CheckSpec::RotationSignProbe {
                variable, group, ..
            } => self.rotation_probe(variable, group),
        };
        result.unwrap_or_else(error_outcome)
    }

    fn permissibility(&self, variable: &str, group: &str, expect: bool) -> Result<Outcome, Error> {
        let v = self.var(variable);
        let g = self.group(group);
        let witness = permissibility_witness(v, g)?;
        let permissible = witness.is_none();
        let summary = match &witness {
            None => format!(
                "`{variable}` is permissible under `{group}` (order {})",
                g.order()
            ),
            Some(w) => format!("`{variable}` is not permissible under `{group}`: {w}"),
        };
        Ok((
            Status::from_bool(permissible == expect),
            summary,
            json!({
                "variable": variable,
                "group": group,
                "group_order": g.order(),
                "permissible": permissible,
                "expected": expect,
                "witness": witness,
                "witness_verified": witness.as_ref().map(|w| w.breaks(v)),
            }),
        ))
    }

    fn induced(&self, variable: &str, group: &str) -> Result<Outcome, Error> {
        let v = self.var(variable);
        let k = self.group(group);
        let induced = match induced_group(v, k) {
            Ok(i) => i,
            Err(Error::NotPermissible { witness, .. }) => {
                return Ok((
                    Status::Fail,
                    format!("no induced action: `{variable}` is not permissible ({witness})"),
                    json!({ "witness": witness }),
                ))
            }
            Err(e) => return Err(e),
        };
        let hom_ok = induced.hom.verify();
        let k_transitive = k.is_transitive();
        let g_transitive = induced.group.is_transitive();
        let propagates = !k_transitive || g_transitive;
        let ok = hom_ok.is_ok() && propagates;
        Ok((
            Status::from_bool(ok),
            format!(
                "induced group of order {} on {} values; homomorphism {}; transitivity {}",
                induced.group.order(),
                v.value_count(),
                if hom_ok.is_ok() {
                    "verified"
                } else {
                    "violated"
                },
                if propagates { "propagates" } else { "lost" }
            ),
            json!({
                "k_order": k.order(),
                "g_order": induced.group.order(),
                "g_generators": induced.group.generators(),
                "homomorphism_table": induced.hom.table(),
                "homomorphism_violation": hom_ok.err(),
                "kernel_order": induced.hom.kernel_order(),
                "k_transitive": k_transitive,
                "g_transitive": g_transitive,
                "k_trivial_isotropy": k.has_trivial_isotropy(),
                "g_trivial_isotropy": induced.group.has_trivial_isotropy(),
            }),
        ))
    }

    fn pipeline<'b>(
        &'b self,
        operator: &str,
    ) -> Result<Result<&'b OperatorPipeline, Outcome>, String> {
        let op = self.op(operator)?;
        Ok(op.pipeline.as_ref().ok_or_else(|| {
            (
                Status::NotApplicable,
                format!("`{operator}` is not built from a coherent family"),
                Value::Null,
            )
        }))
    }

    fn theorem1(&self, operator: &str, related: Option<(&str, &str)>) -> Result<Outcome, Error> {
        let p = match self.pipeline(operator) {
            Err(e) => return Ok(error_outcome(e)),
            Ok(Err(na)) => return Ok(na),
            Ok(Ok(p)) => p,
        };
        let k = p.group();
        let g = &p.induced().group;
        let rep = p.family().rep();
        let injectivity = check_coherent_injectivity(p.family(), &self.tol);
        let unitary = rep.unitarity_residual();
        let projective = rep.projective_residual();
        let maximal = match &self.model.family {
            Some(f) => Some(is_maximal(p.theta(), f)?),
            None => None,
        };
        let mut ok = k.is_transitive()
            && k.has_trivial_isotropy()
            && g.is_transitive()
            && g.has_trivial_isotropy()
            && unitary <= self.tol.unitary
            && projective <= self.tol.projective
            && injectivity.is_injective()
            && maximal.unwrap_or(true);
        let related_json = match related {
            None => Value::Null,
            Some((name, group)) => {
                let eta = self.var(name);
                let rg = self.group(group);
                let k_rel = are_related(p.theta(), eta, rg)?;
                let trivial = match &self.model.product {
                    Some(prod) if k_rel.is_some() => {
                        Some(flag_trivial_exchange(p.theta(), eta, rg, Some(prod))?)
                    }
                    _ => None,
                };
                ok &= k_rel.is_some() && trivial != Some(true);
                json!({
                    "variable": name,
                    "group": group,
                    "relating_k": k_rel,
                    "trivial_exchange": trivial,
                })
            }
        };
        Ok((
            Status::from_bool(ok),
            format!(
                "`{}`: K order {}, G order {}, coherent states {}, irreducible: {}",
                p.theta().name(),
                k.order(),
                g.order(),
                if injectivity.is_injective() {
                    "injective"
                } else {
                    "collide"
                },
                rep.is_irreducible(&self.tol)
            ),
            json!({
                "theta": p.theta().name(),
                "permissible": true,
                "k_transitive": k.is_transitive(),
                "k_trivial_isotropy": k.has_trivial_isotropy(),
                "g_transitive": g.is_transitive(),
                "g_trivial_isotropy": g.has_trivial_isotropy(),
                "unitarity_residual": unitary,
                "projective_residual": projective,
                "coherent_injectivity": injectivity,
                "maximal_in_family": maximal,
                "commutant_dimension": rep.commutant_dimension(),
                "irreducible": rep.is_irreducible(&self.tol),
                "related": related_json,
            }),
        ))
    }

    fn theorem2(&self, operator: &str) -> Result<Outcome, Error> {
        let p = match self.pipeline(operator) {
            Err(e) => return Ok(error_outcome(e)),
            Ok(Err(na)) => return Ok(na),
            Ok(Ok(p)) => p,
        };
        let sweep = p.conjugation_sweep()?;
        let worst = sweep.iter().map(|r| r.residual).fold(0.0, f64::max);
        let t_rep = p.acting_rep()?;
        let t_family =
            CoherentFamily::new(t_rep, p.family().base().clone(), p.family().base_value())?;
        let t_injective = check_coherent_injectivity(&t_family, &self.tol);
        let k = p.group();
        Ok((
            Status::from_bool(worst <= self.tol.conjugation),
            format!(
                "max |T(t)^H A T(t) - A'| = {worst:e} over {} elements (tolerance {:e})",
                sweep.len(),
                self.tol.conjugation
            ),
            json!({
                "theta": p.theta().name(),
                "max_residual": worst,
                "residuals": sweep,
                "hypotheses": {
                    "k_transitive": k.is_transitive(),
                    "k_trivial_isotropy": k.has_trivial_isotropy(),
                    "t_coherent_injective": t_injective.is_injective(),
                    "t_coherent_injectivity": t_injective,
                },
            }),
        ))
    }

    fn spectrum(&self, operator: &str) -> Result<Outcome, Error> {
        let op = match self.op(operator) {
            Ok(o) => o,
            Err(e) => return Ok(error_outcome(e)),
        };
        let b = &op.bundle;
        let hermitian = b.operator().hermitian_deviation();
        let completeness = b.completeness_residual();
        let orthogonality = b.orthogonality_residual();
        let spectrum = b.spectrum_residual();
        let expected: Option<Vec<(f64, usize)>> = match (&op.pipeline, &op.variable) {
            (Some(p), Some(v)) if p.family().rep().dim() == p.theta().value_count() => {
                let lifted = p.lift(v)?;
                let mut counts: Vec<(f64, usize)> = lifted
                    .values()
                    .iter()
                    .enumerate()
                    .map(|(u, &val)| (val, lifted.assignment().iter().filter(|&&a| a == u).count()))
                    .collect();
                counts.sort_by(|a, b| a.0.total_cmp(&b.0));
                Some(counts)
            }
            (None, None)
                if matches!(
                    self.model.operator_spec(operator),
                    Some(OperatorSpec::Spin { .. })
                ) =>
            {
                Some(vec![(-1.0, 1), (1.0, 1)])
            }
            _ => None,
        };
        let actual: Vec<(f64, usize)> = b
            .eigenspaces()
            .iter()
            .map(|e| (e.value, e.multiplicity))
            .collect();
        let matches_expected = expected.as_ref().map(|exp| {
            exp.len() == actual.len()
                && exp
                    .iter()
                    .zip(&actual)
                    .all(|(a, b)| a.1 == b.1 && (a.0 - b.0).abs() <= self.tol.reconstruction)
        });
        let ok = hermitian <= self.tol.hermitian
            && completeness <= self.tol.projector
            && orthogonality <= self.tol.projector
            && spectrum <= self.tol.reconstruction
            && matches_expected.unwrap_or(true);
        let eigenspaces: Vec<Value> = b
            .eigenspaces()
            .iter()
            .map(|e| {
                json!({
                    "value": e.value,
                    "multiplicity": e.multiplicity,
                    "question": e.question,
                    "answer": e.answer,
                })
            })
            .collect();
        Ok((
            Status::from_bool(ok),
            format!(
                "eigenvalues {:?} with multiplicities {:?}",
                b.values(),
                b.multiplicities()
            ),
            json!({
                "operator": operator,
                "matrix": matrix_json(b.operator()),
                "eigenvalues": b.spectral().eigenvalues,
                "eigenspaces": eigenspaces,
                "nondegenerate": b.is_nondegenerate(),
                "expected": expected,
                "matches_expected": matches_expected,
                "hermitian_deviation": hermitian,
                "completeness_residual": completeness,
                "orthogonality_residual": orthogonality,
                "spectrum_residual": spectrum,
            }),
        ))
    }

    fn maximality(&self, operators: &[String]) -> Result<Outcome, Error> {
        let family = self.model.family.as_ref().expect("validated");
        let mut rows = Vec::new();
        let mut ok = true;
        let mut compared = 0;
        for name in operators {
            let op = match self.op(name) {
                Ok(o) => o,
                Err(e) => return Ok(error_outcome(e)),
            };
            match &op.variable {
                Some(v) => {
                    let maximal = is_maximal(v, family)?;
                    let simple = op.bundle.is_nondegenerate();
                    ok &= maximal == simple;
                    compared += 1;
                    rows.push(json!({
                        "operator": name,
                        "variable": v.name(),
                        "maximal": maximal,
                        "nondegenerate": simple,
                        "consistent": maximal == simple,
                    }));
                }
                None => rows.push(json!({ "operator": name, "skipped": "no underlying variable" })),
            }
        }
        if compared == 0 {
            return Ok((
                Status::NotApplicable,
                "no operator with an underlying variable".into(),
                json!(rows),
            ));
        }
        Ok((
            Status::from_bool(ok),
            format!(
                "maximal <=> nondegenerate on {compared} operator(s): {}",
                if ok { "holds" } else { "violated" }
            ),
            json!(rows),
        ))
    }

    fn expansion(
        &self,
        target: &str,
        value: f64,
        basis: &str,
        expected: Option<&[[f64; 2]]>,
    ) -> Result<Outcome, Error> {
        let (t, b) = match (self.op(target), self.op(basis)) {
            (Ok(t), Ok(b)) => (t, b),
            (Err(e), _) | (_, Err(e)) => return Ok(error_outcome(e)),
        };
        let e = expand_eigenvector(&t.bundle, value, &b.bundle, &self.tol)?;
        let norm_dev = (e.norm_sq - 1.0).abs();
        let expected_dev = expected.map(|exp| {
            if exp.len() != e.amplitudes.len() {
                f64::INFINITY
            } else {
                exp.iter()
                    .zip(&e.amplitudes)
                    .map(|([re, im], (_, a))| (C64::new(*re, *im) - a).norm())
                    .fold(0.0, f64::max)
            }
        });
        let ok = e.reconstruction_error <= self.tol.expansion
            && norm_dev <= self.tol.expansion
            && expected_dev.is_none_or(|d| d <= self.tol.expansion);
        let amps: Vec<Value> = e
            .amplitudes
            .iter()
            .map(|(v, a)| json!({ "basis_value": v, "amplitude": c2(*a) }))
            .collect();
        Ok((
            Status::from_bool(ok),
            format!(
                "|{target}={value}> in the `{basis}` basis: {}",
                e.amplitudes
                    .iter()
                    .map(|(v, a)| format!("{v}: {:.12}{:+.12}i", a.re, a.im))
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
            json!({
                "amplitudes": amps,
                "reconstruction_error": e.reconstruction_error,
                "norm_squared": e.norm_sq,
                "expected": expected,
                "expected_deviation": expected_dev,
            }),
        ))
    }

    fn singlet_delta(&self, grid: usize) -> Result<Outcome, Error> {
        let d = delta_matrix();
        let s = singlet();
        let bundle = OperatorBundle::from_hermitian("delta", d.clone(), &self.tol)?;
        let eigen = eigen_residual(&d, &s, SINGLET_VALUE)?;
        let norm_dev = (s.norm() - 1.0).abs();
        let swap = swap_matrix().apply(&s)?.add(&s)?.norm();
        let singlet_space = bundle.eigenspace(SINGLET_VALUE, self.tol.degeneracy_gap);
        let singlet_dim = singlet_space.map_or(0, |e| e.multiplicity);
        let triplet = bundle
            .eigenspaces()
            .iter()
            .find(|e| e.multiplicity == 3)
            .map(|e| e.value);
        let mut anti: f64 = 0.0;
        let directions = SpinDirection::grid(grid);
        for a in &directions {
            anti = anti.max(anticorrelation_residual(a, &s)?);
        }
        let multiplicities = bundle.multiplicities();
        let ok = eigen <= self.tol.singlet
            && norm_dev <= self.tol.singlet
            && singlet_dim == 1
            && multiplicities == vec![1, 3]
            && anti <= self.tol.singlet;
        let matches_quoted = triplet.map(|t| (t - QUOTED_TRIPLET_VALUE).abs() <= self.tol.singlet);
        Ok((
            Status::from_bool(ok),
            format!(
                "D s = -3 s (residual {eigen:e}); multiplicities {multiplicities:?}; degenerate eigenvalue {}{}",
                triplet.map_or("none".into(), |t| format!("{t}")),
                if matches_quoted == Some(false) {
                    format!(" (differs from the quoted {QUOTED_TRIPLET_VALUE})")
                } else {
                    String::new()
                }
            ),
            json!({
                "singlet": s.amplitudes().iter().map(|a| c2(*a)).collect::<Vec<_>>(),
                "singlet_norm_deviation": norm_dev,
                "eigen_residual": eigen,
                "swap_antisymmetry_residual": swap,
                "eigenvalues": bundle.spectral().eigenvalues,
                "multiplicities": multiplicities,
                "singlet_eigenspace_dimension": singlet_dim,
                "degenerate_eigenvalue": triplet,
                "quoted_degenerate_eigenvalue": QUOTED_TRIPLET_VALUE,
                "matches_quoted": matches_quoted,
                "anticorrelation_directions": directions.len(),
                "anticorrelation_max_residual": anti,
            }),
        ))
    }

    fn trivial_exchange(
        &self,
        theta: &str,
        eta: &str,
        group: &str,
        expect: Option<bool>,
    ) -> Result<Outcome, Error> {
        let Some(product) = &self.model.product else {
            return Ok((
                Status::NotApplicable,
                "no product structure declared".into(),
                Value::Null,
            ));
        };
        let (t, e, g) = (self.var(theta), self.var(eta), self.group(group));
        let relating = relating_elements(t, e, g)?;
        let flag = flag_trivial_exchange(t, e, g, Some(product))?;
        let status = match expect {
            Some(x) => Status::from_bool(x == flag),
            None => Status::Informational,
        };
        Ok((
            status,
            format!(
                "{} relating element(s) in `{group}`; trivial exchange: {flag}",
                relating.len()
            ),
            json!({
                "relating_elements": relating,
                "coordinate_exchanges": relating.iter().map(|k| product.is_coordinate_exchange(k)).collect::<Vec<_>>(),
                "trivial_exchange": flag,
                "expected": expect,
            }),
        ))
    }

    fn thought_family(&self, theta: &ConceptualVariable) -> Vec<ConceptualVariable> {
        let mut out: Vec<ConceptualVariable> = Vec::new();
        if let Some(f) = &self.model.family {
            for g in f.generators() {
                if g.value_count() == theta.value_count()
                    && !out.iter().any(|o| o.partition() == g.partition())
                {
                    out.push(g.clone());
                }
            }
        }
        if out.is_empty() {
            out.push(theta.clone());
        }
        out
    }

    fn symmetric_relatedness(
        &self,
        a: &ConceptualVariable,
        b: &ConceptualVariable,
    ) -> Result<Value, Error> {
        if !self.opts.exhaustive_relatedness || a.domain().len() > MAX_SYMMETRIC_SEARCH {
            return Ok(Value::Null);
        }
        if a.value_count() != b.value_count() {
            return Ok(json!({ "first": a.name(), "second": b.name(), "k": null }));
        }
        let k = are_related_in(a, b, RelatednessScope::Symmetric)?;
        Ok(json!({ "first": a.name(), "second": b.name(), "k": k }))
    }

    fn a1(
        &self,
        theta: &str,
        eta: &str,
        group: &str,
        all_same_shape: bool,
    ) -> Result<Outcome, Error> {
        let (t, e) = (self.var(theta), self.var(eta));
        let s = ThoughtScenario::new(
            self.thought_family(t),
            self.group(group).clone(),
            self.model.product.clone(),
        )?;
        let outcome = theorem_a1_search(t, e, &s, all_same_shape)?;
        let (status, summary) = match &outcome {
            A1Outcome::NotApplicable { reason, .. } => {
                (Status::NotApplicable, format!("hypotheses fail: {reason}"))
            }
            A1Outcome::Pass {
                candidates_examined,
                ..
            } => (
                Status::Pass,
                format!("no related-but-different lambda among {candidates_examined} candidates"),
            ),
            A1Outcome::Falsified { lambda, .. } => {
                (Status::Fail, format!("falsifying lambda `{lambda}` found"))
            }
        };
        Ok((
            status,
            summary,
            json!({
                "result": outcome,
                "symmetric_relatedness": self.symmetric_relatedness(t, e)?,
            }),
        ))
    }

    fn a2_classify(
        &self,
        members: &[String],
        group: &str,
        expect: Option<crate::harness::Verdict>,
    ) -> Result<Outcome, Error> {
        let fam: Vec<ConceptualVariable> = members.iter().map(|m| self.var(m).clone()).collect();
        let s = ThoughtScenario::new(
            fam.clone(),
            self.group(group).clone(),
            self.model.product.clone(),
        )?;
        let c = classify_thoughts(&s)?;
        let status = if c.is_counterexample() || expect.is_some_and(|x| x != c.verdict) {
            Status::Fail
        } else {
            Status::Pass
        };
        let mut symmetric = Vec::new();
        if self.opts.exhaustive_relatedness {
            for i in 0..fam.len() {
                for j in i + 1..fam.len() {
                    symmetric.push(self.symmetric_relatedness(&fam[i], &fam[j])?);
                }
            }
        }
        Ok((
            status,
            format!(
                "verdict {}; hypotheses {}{}",
                to_value(&c.verdict).as_str().unwrap_or_default(),
                if c.hypotheses.satisfied {
                    "satisfied"
                } else {
                    "not satisfied"
                },
                if c.is_counterexample() {
                    "; COUNTEREXAMPLE"
                } else {
                    ""
                }
            ),
            json!({
                "classification": c,
                "expected": expect,
                "counterexample": c.is_counterexample(),
                "symmetric_relatedness": symmetric,
            }),
        ))
    }

    fn a2_construct(&self, theta: &str, lambda: &str, xi: &str) -> Result<Outcome, Error> {
        let r = proof_group_construction(
            self.var(theta),
            self.var(lambda),
            self.var(xi),
            ConstructionBudget::default(),
        )?;
        let summary = match &r.group {
            Some(g) => format!(
                "regular subgroup of order {} inside an ambient group of order {}; permissible: {}",
                g.order(),
                r.ambient_order,
                r.permissible
            ),
            None => format!(
                "no transitive trivial-isotropy subgroup found after {} generator sets (ambient order {})",
                r.generator_sets_tried, r.ambient_order
            ),
        };
        Ok((Status::from_bool(r.succeeded()), summary, to_value(&r)))
    }

    fn a2_falsify(&self, max_n: usize, budget: Option<usize>) -> Result<Outcome, Error> {
        let n = self.opts.max_n_override.unwrap_or(max_n);
        let r = exhaustive_falsifier(n, budget)?;
        let status = if !r.counterexamples.is_empty() {
            Status::Fail
        } else if !r.complete {
            Status::Error
        } else {
            Status::Pass
        };
        Ok((
            status,
            format!(
                "{} instances up to n = {n}{}; {} mixed, {} with hypotheses satisfied, {} counterexamples",
                r.instances,
                if r.complete { "" } else { " (incomplete: budget reached)" },
                r.mixed,
                r.hypotheses_satisfied,
                r.counterexamples.len()
            ),
            to_value(&r),
        ))
    }

    fn rotation_probe(&self, variable: &str, group: &str) -> Result<Outcome, Error> {
        let v = self.var(variable);
        let g = self.group(group);
        let full = permissibility_witness(v, g)?;
        let mut seen = std::collections::HashSet::new();
        let mut subgroups: Vec<PermutationGroup> = Vec::new();
        for e in g.elements() {
            let h = PermutationGroup::generate(g.degree(), vec![e.clone()])?;
            if seen.insert(h.elements().to_vec()) {
                subgroups.push(h);
            }
        }
        subgroups.sort_by(|a, b| {
            a.order()
                .cmp(&b.order())
                .then_with(|| a.elements().cmp(b.elements()))
        });
        let mut rows = Vec::new();
        let mut permissible_count = 0;
        for h in &subgroups {
            let w = permissibility_witness(v, h)?;
            if w.is_none() {
                permissible_count += 1;
            }
            rows.push(json!({
                "order": h.order(),
                "generator": h.generators().first(),
                "permissible": w.is_none(),
                "witness": w,
            }));
        }
        Ok((
            Status::Informational,
            format!(
                "full group: {}; permissible under {permissible_count} of {} cyclic subgroups",
                if full.is_none() {
                    "permissible"
                } else {
                    "not permissible"
                },
                subgroups.len()
            ),
            json!({
                "full_group_order": g.order(),
                "full_group_permissible": full.is_none(),
                "full_group_witness": full,
                "cyclic_subgroups": rows,
            }),
        ))
    }
}
