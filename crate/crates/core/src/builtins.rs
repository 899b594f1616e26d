//! Built-in scenarios.

use crate::perm::Permutation;
use crate::scenario::{
    CheckSpec, FamilySpec, GroupSpec, OperatorSpec, RepresentationSpec, ScenarioError,
    ScenarioFile, SpaceSpec, VariableSpec,
};

/// Names accepted by [`builtin`]; `cyclic-N` also accepts `cyclic-<n>`.
pub const BUILTIN_NAMES: [&str; 6] = [
    "qubit",
    "cyclic-N",
    "singlet",
    "parity-z4",
    "a2-smoke",
    "rotation-sign-probe",
];

pub const DEFAULT_CYCLIC_N: usize = 4;

/// Largest `n` for `cyclic-<n>`; the total space has `n^2` points.
pub const MAX_CYCLIC_N: usize = 8;

const QUBIT: &str = include_str!("builtins/qubit.json");
const SINGLET: &str = include_str!("builtins/singlet.json");
const PARITY_Z4: &str = include_str!("builtins/parity-z4.json");
const A2_SMOKE: &str = include_str!("builtins/a2-smoke.json");
const ROTATION_SIGN_PROBE: &str = include_str!("builtins/rotation-sign-probe.json");

pub fn builtin(name: &str) -> Result<ScenarioFile, ScenarioError> {
    let text = match name {
        "qubit" => QUBIT,
        "singlet" => SINGLET,
        "parity-z4" => PARITY_Z4,
        "a2-smoke" => A2_SMOKE,
        "rotation-sign-probe" => ROTATION_SIGN_PROBE,
        "cyclic-N" => return Ok(cyclic(DEFAULT_CYCLIC_N)),
        other => {
            let n = other
                .strip_prefix("cyclic-")
                .and_then(|s| s.parse::<usize>().ok())
                .filter(|n| (2..=MAX_CYCLIC_N).contains(n))
                .ok_or_else(|| ScenarioError::UnknownBuiltin(other.to_string()))?;
            return Ok(cyclic(n));
        }
    };
    ScenarioFile::from_json(text)
}

fn perm(images: Vec<usize>) -> Permutation {
    Permutation::new(images).expect("builtin permutations are valid")
}

/// `Z_n x Z_n` read as (position, momentum), with translations in both
/// coordinates and the DFT representation on positions.
pub fn cyclic(n: usize) -> ScenarioFile {
    let points = n * n;
    let index = |a: usize, b: usize| a * n + b;
    let labels = (0..n)
        .flat_map(|a| (0..n).map(move |b| format!("x{a}p{b}")))
        .collect();
    let position = VariableSpec {
        name: "position".into(),
        values: (0..n).map(|v| v as f64).collect(),
        assignment: (0..points).map(|i| i / n).collect(),
    };
    let momentum = VariableSpec {
        name: "momentum".into(),
        values: (0..n).map(|v| v as f64).collect(),
        assignment: (0..points).map(|i| i % n).collect(),
    };
    let mut variables = vec![position, momentum];
    let even = n.is_multiple_of(2);
    if even {
        variables.push(VariableSpec {
            name: "parity".into(),
            values: vec![0.0, 1.0],
            assignment: (0..points).map(|i| (i / n) % 2).collect(),
        });
    }
    let shift_x = perm((0..points).map(|i| index((i / n + 1) % n, i % n)).collect());
    let shift_p = perm((0..points).map(|i| index(i / n, (i % n + 1) % n)).collect());
    let coherent = |name: &str, variable: &str| OperatorSpec::Coherent {
        name: name.into(),
        variable: variable.into(),
        via: (variable != "position").then(|| "position".to_string()),
        group: "K".into(),
        representation: "U".into(),
        base_value: Some(0.0),
        base_state: None,
    };
    let mut operators = vec![coherent("A_position", "position")];
    let mut spectrum_ops = vec!["A_position".to_string()];
    if even {
        operators.push(coherent("A_parity", "parity"));
        spectrum_ops.push("A_parity".into());
    }
    let mut checks = vec![
        CheckSpec::Permissibility {
            name: Some("position-permissible".into()),
            variable: "position".into(),
            group: "K".into(),
            expect: true,
        },
        CheckSpec::InducedGroup {
            name: Some("induced-on-position".into()),
            variable: "position".into(),
            group: "K".into(),
        },
        CheckSpec::Theorem1Hypotheses {
            name: Some("theorem1-A_position".into()),
            operator: "A_position".into(),
            related: None,
        },
    ];
    for op in &spectrum_ops {
        checks.push(CheckSpec::OperatorSpectrum {
            name: Some(format!("spectrum-{op}")),
            operator: op.clone(),
        });
    }
    checks.push(CheckSpec::Maximality {
        name: Some("maximal-iff-simple".into()),
        operators: spectrum_ops,
    });
    checks.push(CheckSpec::Theorem2 {
        name: Some("theorem2-A_position".into()),
        operator: "A_position".into(),
    });
    ScenarioFile {
        name: format!("cyclic-{n}"),
        description: format!("Position and momentum on Z_{n} x Z_{n} with translations and the discrete Fourier representation."),
        space: SpaceSpec {
            id: format!("z{n}xz{n}"),
            labels: Some(labels),
            size: None,
        },
        variables,
        family: Some(FamilySpec {
            generators: vec!["position".into(), "momentum".into()],
            inaccessible_total: true,
        }),
        product: None,
        groups: vec![GroupSpec {
            name: "K".into(),
            generators: vec![shift_x, shift_p],
            cap: None,
        }],
        representations: vec![RepresentationSpec::CyclicDft { name: "U".into(), n }],
        operators,
        tolerances: None,
        checks,
    }
}
