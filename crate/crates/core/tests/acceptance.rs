//! Acceptance criteria. Runs as a plain binary and prints one line per
//! criterion; exits non-zero when any criterion fails.

// `!(x <= tol)` also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::collections::BTreeSet;
use std::f64::consts::FRAC_1_SQRT_2;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use convar::action::{
    induced_action_well_defined, induced_group, is_permissible, permissibility_witness,
};
use convar::builtins::{builtin, BUILTIN_NAMES};
use convar::harness::exhaustive_falsifier;
use convar::linalg::{ComplexMatrix, C64};
use convar::perm::{Permutation, PermutationGroup};
use convar::rep::{check_coherent_injectivity, expand_in_basis, qubit_rep, OperatorPipeline};
use convar::report::Status;
use convar::runner::{run_scenario, RunOptions};
use convar::scenario::{CheckSpec, Model};
use convar::spaces::{ConceptualVariable, Partition, PointSpace};
use convar::spin::{
    anticorrelation_residual, delta_matrix, delta_operator, eigen_residual, singlet, SpinDirection,
};
use convar::tolerance::Tolerances;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let e = start.elapsed();
    if e > limit {
        Err(format!("runtime {e:?} exceeds {limit:?}"))
    } else {
        Ok(())
    }
}

fn model(name: &str) -> Model {
    Model::build(&builtin(name).expect("builtin exists")).expect("builtin validates")
}

fn pipeline(
    m: &Model,
    variable: &str,
    group: &str,
    rep: &str,
    base_value: f64,
) -> OperatorPipeline {
    let theta = m.variables[variable].clone();
    let base = theta
        .values()
        .iter()
        .position(|&v| v == base_value)
        .expect("base value");
    OperatorPipeline::new(
        theta,
        m.groups[group].clone(),
        m.representations[rep].clone(),
        None,
        base,
        m.tolerances,
    )
    .expect("pipeline builds")
}

/// Eigenvalues of a 2x2 Hermitian matrix in closed form.
fn eig2(a: &ComplexMatrix) -> [f64; 2] {
    let (p, q, r) = (a[(0, 0)].re, a[(1, 1)].re, a[(0, 1)]);
    let mean = (p + q) / 2.0;
    let rad = (((p - q) / 2.0).powi(2) + r.norm_sqr()).sqrt();
    [mean - rad, mean + rad]
}

fn qubit_pipeline() -> Outcome {
    let start = Instant::now();
    let tol = Tolerances::default();
    let rep = qubit_rep();
    let id = ComplexMatrix::identity(2);
    for (g, u) in rep.group().elements().iter().zip(rep.matrices()) {
        ensure!(
            u.unitarity_residual() <= 1e-10,
            "U({g}) unitarity residual {:e}",
            u.unitarity_residual()
        );
        let sq = u.checked_mul(u).unwrap().max_abs_diff(&id).unwrap();
        ensure!(sq <= 1e-10, "U({g})^2 differs from I by {sq:e}");
    }
    let m = model("qubit");
    let p = pipeline(&m, "theta_z", "K", "U", 1.0);
    ensure!(
        check_coherent_injectivity(p.family(), &tol).is_injective(),
        "coherent family not injective"
    );
    let states = p.family().states();
    for i in 0..states.len() {
        for j in i + 1..states.len() {
            let (a, b) = (&states[i], &states[j]);
            let overlap = a.inner(b).unwrap().norm() / (a.norm() * b.norm());
            let same_value = p.family().value_index(i) == p.family().value_index(j);
            ensure!(
                same_value || overlap < 1.0 - 1e-8,
                "states {i} and {j} coincide up to phase"
            );
        }
    }
    let a = p.theta_operator().map_err(|e| e.to_string())?;
    let closed = eig2(a.operator());
    let values = a.values();
    ensure!(a.is_nondegenerate(), "A^theta is degenerate");
    ensure!(
        values.len() == 2,
        "expected two eigenvalues, got {values:?}"
    );
    for (got, want) in values.iter().zip([-1.0, 1.0]) {
        ensure!(
            (got - want).abs() <= 1e-10,
            "eigenvalue {got} differs from {want}"
        );
    }
    for (got, want) in closed.iter().zip([-1.0, 1.0]) {
        ensure!(
            (got - want).abs() <= 1e-10,
            "closed-form eigenvalue {got} differs from {want}"
        );
    }
    within(Duration::from_secs(1), start)?;
    Ok(format!(
        "spectrum {values:?}, {} coherent states",
        states.len()
    ))
}

/// `sum_v theta(t rep(v)) |c_v><c_v|` from the coherent states directly.
fn expected_shifted_operator(p: &OperatorPipeline, t: &Permutation) -> ComplexMatrix {
    let theta = p.theta();
    let fam = p.family();
    let dim = fam.base().dim();
    let mut out = ComplexMatrix::zeros(dim, dim);
    let mut done = BTreeSet::new();
    for (i, s) in fam.states().iter().enumerate() {
        let v = fam.value_index(i);
        if !done.insert(v) {
            continue;
        }
        let c = s.scale(C64::new(1.0 / s.norm(), 0.0));
        let u = theta.value_at(t.apply(theta.representative(v)));
        out = out
            .add(&ComplexMatrix::outer(&c, &c).scale(C64::new(u, 0.0)))
            .unwrap();
    }
    out
}

fn conjugation_law() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut checked = 0;
    for (name, var, rep, base) in [
        ("qubit", "theta_z", "U", 1.0),
        ("cyclic-4", "position", "U", 0.0),
    ] {
        let m = model(name);
        let p = pipeline(&m, var, "K", rep, base);
        let a = p.theta_operator().map_err(|e| e.to_string())?;
        for t in p.group().elements() {
            let rec = p.conjugation_check(t).map_err(|e| e.to_string())?;
            ensure!(
                rec.residual <= 1e-8,
                "{name}: library residual {:e} at t = {t}",
                rec.residual
            );
            // Direct recomputation of T^H A T against the shifted operator.
            let g = p.induced().hom.apply(t).unwrap();
            let tm = p.family().rep().matrix(g).unwrap();
            let lhs = tm
                .adjoint()
                .checked_mul(a.operator())
                .unwrap()
                .checked_mul(tm)
                .unwrap();
            let r = lhs.max_abs_diff(&expected_shifted_operator(&p, t)).unwrap();
            ensure!(r <= 1e-8, "{name}: direct residual {r:e} at t = {t}");
            worst = worst.max(r).max(rec.residual);
            checked += 1;
        }
    }
    within(Duration::from_secs(1), start)?;
    Ok(format!("{checked} group elements, max residual {worst:e}"))
}

fn basis_resolution() -> Outcome {
    let tol = Tolerances::default();
    let m = model("qubit");
    let a_z = pipeline(&m, "theta_z", "K", "U", 1.0)
        .theta_operator()
        .map_err(|e| e.to_string())?;
    let a_x = convar::spin::spin_component_bundle("A_x", &SpinDirection::x_axis(), &tol)
        .map_err(|e| e.to_string())?;
    let x_plus = a_x
        .eigenvector(1.0, tol.degeneracy_gap)
        .map_err(|e| e.to_string())?;
    let e = expand_in_basis(&x_plus, &a_z, &tol).map_err(|e| e.to_string())?;
    ensure!(e.amplitudes.len() == 2, "expected 2 amplitudes");
    for (v, amp) in &e.amplitudes {
        let d = (amp - C64::new(FRAC_1_SQRT_2, 0.0)).norm();
        ensure!(d <= 1e-10, "amplitude for {v} is {amp}, off by {d:e}");
    }
    ensure!(
        e.reconstruction_error <= 1e-10,
        "reconstruction error {:e}",
        e.reconstruction_error
    );
    ensure!(
        (e.norm_sq - 1.0).abs() <= 1e-10,
        "sum |a|^2 = {}",
        e.norm_sq
    );
    Ok(format!(
        "amplitudes {:?}, reconstruction {:e}",
        e.amplitudes
            .iter()
            .map(|(v, a)| (*v, a.re, a.im))
            .collect::<Vec<_>>(),
        e.reconstruction_error
    ))
}

/// Characteristic polynomial of an integer matrix by Faddeev-LeVerrier:
/// coefficients `c[0..=n]` of `det(x I - A)`, `c[n] = 1`.
fn char_poly(a: &[Vec<i64>]) -> Vec<i64> {
    let n = a.len();
    let mul = |x: &[Vec<i64>], y: &[Vec<i64>]| -> Vec<Vec<i64>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| x[i][k] * y[k][j]).sum())
                    .collect()
            })
            .collect()
    };
    let mut c = vec![0i64; n + 1];
    c[n] = 1;
    let mut m: Vec<Vec<i64>> = vec![vec![0; n]; n];
    for k in 1..=n {
        for (i, row) in m.iter_mut().enumerate() {
            row[i] += c[n - k + 1];
        }
        m = mul(a, &m);
        let tr: i64 = (0..n).map(|i| m[i][i]).sum();
        assert_eq!(tr % k as i64, 0);
        c[n - k] = -tr / k as i64;
    }
    c
}

/// Integer roots with multiplicity, by the rational root theorem and
/// repeated synthetic division.
fn integer_roots(mut c: Vec<i64>) -> Vec<(i64, usize)> {
    let mut roots = Vec::new();
    while c.len() > 1 && c[0] == 0 {
        c.remove(0);
        match roots.iter_mut().find(|(r, _)| *r == 0) {
            Some((_, m)) => *m += 1,
            None => roots.push((0, 1)),
        }
    }
    let c0 = c[0].abs();
    let divisors: Vec<i64> = (1..=c0)
        .filter(|d| c0 % d == 0)
        .flat_map(|d| [d, -d])
        .collect();
    for r in divisors {
        let mut mult = 0;
        loop {
            let deg = c.len() - 1;
            if deg == 0 {
                break;
            }
            let mut q = vec![0i64; deg];
            let mut acc = c[deg];
            for i in (0..deg).rev() {
                q[i] = acc;
                acc = c[i] + r * acc;
            }
            if acc != 0 {
                break;
            }
            c = q;
            mult += 1;
        }
        if mult > 0 {
            roots.push((r, mult));
        }
    }
    roots
}

fn random_direction(rng: &mut ChaCha8Rng) -> SpinDirection {
    loop {
        let v: [f64; 3] = [
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        ];
        let n2: f64 = v.iter().map(|x| x * x).sum();
        if n2 > 1e-2 && n2 <= 1.0 {
            return SpinDirection::normalized(v[0], v[1], v[2]).unwrap();
        }
    }
}

fn singlet_delta() -> Outcome {
    let start = Instant::now();
    let tol = Tolerances::default();
    let d = delta_matrix();
    let s = singlet();
    let r = eigen_residual(&d, &s, -3.0).map_err(|e| e.to_string())?;
    ensure!(r <= 1e-10, "D s + 3 s residual {r:e}");
    let bundle = delta_operator(&tol).map_err(|e| e.to_string())?;
    let mults = bundle.multiplicities();
    let mut sorted = mults.clone();
    sorted.sort();
    ensure!(sorted == [1, 3], "multiplicities {mults:?}");

    let mut int = vec![vec![0i64; 4]; 4];
    for (i, row) in int.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            let z = d[(i, j)];
            assert!(
                z.im == 0.0 && z.re.fract() == 0.0,
                "delta matrix is integral"
            );
            *x = z.re as i64;
        }
    }
    let roots = integer_roots(char_poly(&int));
    let total: usize = roots.iter().map(|r| r.1).sum();
    ensure!(
        total == 4,
        "oracle found roots {roots:?} covering {total} of 4"
    );
    let oracle = roots.iter().find(|r| r.1 == 3).map(|r| r.0 as f64);
    let oracle = oracle.ok_or_else(|| format!("oracle has no triple root: {roots:?}"))?;
    let degenerate = bundle
        .eigenspaces()
        .iter()
        .find(|e| e.multiplicity == 3)
        .map(|e| e.value)
        .ok_or("no three-dimensional eigenspace")?;
    ensure!(
        (degenerate - oracle).abs() <= 1e-10,
        "degenerate eigenvalue {degenerate} vs oracle {oracle}"
    );

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let a = random_direction(&mut rng);
        let r = anticorrelation_residual(&a, &s).map_err(|e| e.to_string())?;
        worst = worst.max(r);
    }
    ensure!(worst <= 1e-10, "anticorrelation residual {worst:e}");
    within(Duration::from_secs(1), start)?;
    Ok(format!(
        "singlet eigenvalue -3 (residual {r:e}); degenerate eigenvalue {degenerate} (oracle {oracle}); anticorrelation max {worst:e}"
    ))
}

fn random_perm(n: usize, rng: &mut ChaCha8Rng) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(rng);
    Permutation::new(images).unwrap()
}

/// A permutation that carries blocks of `p` onto blocks of the same size.
fn block_respecting_perm(p: &Partition, rng: &mut ChaCha8Rng) -> Permutation {
    let blocks = p.blocks();
    let mut images = vec![0; p.len()];
    let sizes: BTreeSet<usize> = blocks.iter().map(|b| b.len()).collect();
    for size in sizes {
        let same: Vec<&Vec<usize>> = blocks.iter().filter(|b| b.len() == size).collect();
        let mut targets = same.clone();
        targets.shuffle(rng);
        for (src, dst) in same.iter().zip(targets) {
            let mut dst = dst.clone();
            dst.shuffle(rng);
            for (&a, &b) in src.iter().zip(&dst) {
                images[a] = b;
            }
        }
    }
    Permutation::new(images).unwrap()
}

/// Permissibility by definition on the generators only.
fn oracle_permissible(theta: &ConceptualVariable, gens: &[Permutation]) -> bool {
    let n = theta.domain().len();
    gens.iter().all(|k| {
        (0..n).all(|a| {
            (0..n).all(|b| {
                theta.value_index(a) != theta.value_index(b)
                    || theta.value_index(k.apply(a)) == theta.value_index(k.apply(b))
            })
        })
    })
}

fn orbit_of_zero_is_everything(n: usize, gens: &[Permutation]) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = g.apply(x);
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

fn permissibility_property() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let target = 1200;
    let (mut yes, mut no, mut transitive_cases) = (0, 0, 0);
    for case in 0..target {
        let n = rng.gen_range(1..=8);
        let r = rng.gen_range(1..=n);
        let labels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..r)).collect();
        let space = Arc::new(PointSpace::range("omega", n).unwrap());
        let part = Partition::from_labels(&labels);
        let theta = ConceptualVariable::from_partition("theta", space, &part).unwrap();
        let gens: Vec<Permutation> = match rng.gen_range(0..3) {
            0 => (0..rng.gen_range(1..=3))
                .map(|_| random_perm(n, &mut rng))
                .collect(),
            1 => (0..rng.gen_range(1..=2))
                .map(|_| block_respecting_perm(&part, &mut rng))
                .collect(),
            _ => vec![
                block_respecting_perm(&part, &mut rng),
                random_perm(n, &mut rng),
            ],
        };
        let group = PermutationGroup::generate(n, gens.clone()).unwrap();
        let fail = |what: String| {
            Err(format!(
                "case {case} (n = {n}, theta {}, gens {gens:?}): {what}",
                theta.partition()
            ))
        };
        let permissible = is_permissible(&theta, &group).unwrap();
        if permissible != oracle_permissible(&theta, &gens) {
            return fail(format!(
                "is_permissible = {permissible} disagrees with the definition"
            ));
        }
        if permissible {
            yes += 1;
            let induced = match induced_group(&theta, &group) {
                Ok(i) => i,
                Err(e) => return fail(format!("induced_group failed: {e}")),
            };
            if let Err(v) = induced.hom.verify() {
                return fail(format!("homomorphism violated at {} * {}", v.a, v.b));
            }
            if group.order() <= 240 && induced.hom.verify_exhaustive().is_err() {
                return fail("pairwise homomorphism check failed".into());
            }
            for k in group.elements() {
                let g = induced.hom.apply(k).unwrap();
                for phi in 0..n {
                    if g.apply(theta.value_index(phi)) != theta.value_index(k.apply(phi)) {
                        return fail(format!(
                            "g_k(theta(phi)) != theta(k phi) for k = {k}, phi = {phi}"
                        ));
                    }
                }
            }
            if orbit_of_zero_is_everything(n, &gens) {
                transitive_cases += 1;
                if !induced.group.is_transitive() {
                    return fail("transitivity did not propagate".into());
                }
            }
        } else {
            no += 1;
            let Some(w) = permissibility_witness(&theta, &group).unwrap() else {
                return fail("no witness for a non-permissible variable".into());
            };
            let broken = group.contains(&w.k)
                && theta.value_index(w.phi1) == theta.value_index(w.phi2)
                && theta.value_index(w.k.apply(w.phi1)) != theta.value_index(w.k.apply(w.phi2));
            if !broken {
                return fail(format!("witness {w} does not break well-definedness"));
            }
            if induced_action_well_defined(&theta, &group) || induced_group(&theta, &group).is_ok()
            {
                return fail("induced action reported as well defined".into());
            }
        }
    }
    ensure!(
        yes > 100 && no > 100,
        "unbalanced sample: {yes} permissible, {no} not"
    );
    within(Duration::from_secs(60), start)?;
    Ok(format!(
        "{target} instances: {yes} permissible ({transitive_cases} transitive), {no} with verified witnesses; 0 violations"
    ))
}

/// Restricted growth strings of length `n`.
fn all_partitions(n: usize) -> Vec<Partition> {
    fn go(prefix: &mut Vec<usize>, n: usize, max: usize, out: &mut Vec<Partition>) {
        if prefix.len() == n {
            out.push(Partition::from_labels(prefix));
            return;
        }
        for l in 0..=max + 1 {
            prefix.push(l);
            go(prefix, n, max.max(l), out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut prefix = vec![0];
    go(&mut prefix, n, 0, &mut out);
    out
}

fn related(a: &Partition, b: &Partition, group: &PermutationGroup) -> bool {
    group.elements().iter().any(|k| {
        let n = a.len();
        (0..n).all(|x| {
            (0..n).all(|y| {
                (b.block_of(x) == b.block_of(y))
                    == (a.block_of(k.apply(x)) == a.block_of(k.apply(y)))
            })
        })
    })
}

/// Recomputes the A1 hypotheses and the search result for one check.
fn a1_oracle(m: &Model, theta: &str, eta: &str, group: &str, all_same_shape: bool) -> Status {
    let t = &m.variables[theta];
    let e = &m.variables[eta];
    let g = &m.groups[group];
    let n = t.domain().len();
    let mut family: Vec<Partition> = Vec::new();
    if let Some(f) = &m.family {
        for v in f.generators() {
            if v.value_count() == t.value_count() && !family.contains(v.partition()) {
                family.push(v.partition().clone());
            }
        }
    }
    if family.is_empty() {
        family.push(t.partition().clone());
    }
    let maximal = |p: &Partition| family.iter().all(|q| !(q.refines(p) && !p.refines(q)));
    let free = g
        .elements()
        .iter()
        .all(|k| k.is_identity() || (0..n).all(|x| k.apply(x) != x));
    let hypotheses = maximal(t.partition())
        && maximal(e.partition())
        && oracle_permissible(t, g.elements())
        && orbit_of_zero_is_everything(n, g.elements())
        && free
        && t.value_count() == e.value_count()
        && related(t.partition(), e.partition(), g);
    if !hypotheses {
        return Status::NotApplicable;
    }
    let mut candidates = family.clone();
    if all_same_shape {
        candidates.extend(
            all_partitions(n)
                .into_iter()
                .filter(|p| p.shape() == t.partition().shape()),
        );
    }
    let falsified = candidates
        .iter()
        .any(|l| related(t.partition(), l, g) && !related(e.partition(), l, g));
    if falsified {
        Status::Fail
    } else {
        Status::Pass
    }
}

fn a1_search() -> Outcome {
    let start = Instant::now();
    let (mut qualifying, mut not_applicable) = (0, 0);
    for name in BUILTIN_NAMES {
        let file = builtin(name).unwrap();
        let m = Model::build(&file).unwrap();
        let report = run_scenario(&file, &RunOptions::default()).map_err(|e| e.to_string())?;
        for (i, spec) in file.checks.iter().enumerate() {
            let CheckSpec::A1Search {
                theta,
                eta,
                group,
                all_same_shape,
                ..
            } = spec
            else {
                continue;
            };
            let got = report.checks[i].status;
            let want = a1_oracle(&m, theta, eta, group, *all_same_shape);
            ensure!(
                got == want,
                "{name}/{}: status {got}, oracle says {want}",
                report.checks[i].name
            );
            ensure!(
                got != Status::Fail,
                "{name}/{}: falsifying lambda found",
                report.checks[i].name
            );
            match got {
                Status::Pass => qualifying += 1,
                _ => not_applicable += 1,
            }
        }
    }
    ensure!(
        qualifying > 0 && not_applicable > 0,
        "need both qualifying and non-qualifying instances"
    );
    within(Duration::from_secs(10), start)?;
    Ok(format!("{qualifying} qualifying instances pass, {not_applicable} hypothesis-violating instances not-applicable"))
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

/// Conjugacy classes of subgroups of `S_n`, n = 0..=6.
const SUBGROUP_CLASSES: [u64; 7] = [1, 1, 2, 4, 11, 19, 56];

fn expected_falsifier_instances(max_n: usize) -> u64 {
    let mut total = 0;
    for n in 2..=max_n as u64 {
        for r in (2..n).filter(|r| n % r == 0) {
            let b = n / r;
            let balanced = factorial(n) / (factorial(b).pow(r as u32) * factorial(r));
            total += binomial(balanced, 3) * SUBGROUP_CLASSES[n as usize];
        }
    }
    total
}

fn a2_falsifier() -> Outcome {
    let start = Instant::now();
    let oracle = expected_falsifier_instances(6);
    let first = exhaustive_falsifier(6, None).map_err(|e| e.to_string())?;
    let second = exhaustive_falsifier(6, None).map_err(|e| e.to_string())?;
    ensure!(first.complete && second.complete, "sweep incomplete");
    ensure!(
        first.counterexamples.is_empty(),
        "{} counterexamples",
        first.counterexamples.len()
    );
    ensure!(
        first.hypotheses_satisfied == 0 || first.counterexamples.is_empty(),
        "unreachable"
    );
    ensure!(
        first.instances as u64 == oracle,
        "instances {} vs oracle count {oracle}",
        first.instances
    );
    ensure!(
        first.instances == second.instances
            && first.instances_by_n == second.instances_by_n
            && first.mixed == second.mixed,
        "re-run differs"
    );
    within(Duration::from_secs(600), start)?;
    Ok(format!(
        "{} instances (oracle {oracle}), {} mixed, {} with hypotheses satisfied, 0 counterexamples; stable on re-run",
        first.instances, first.mixed, first.hypotheses_satisfied
    ))
}

fn determinism() -> Outcome {
    let mut names: Vec<String> = BUILTIN_NAMES.iter().map(|s| s.to_string()).collect();
    names.extend(["cyclic-3".to_string(), "cyclic-6".to_string()]);
    for name in &names {
        let file = builtin(name).unwrap();
        let a = run_scenario(&file, &RunOptions::default())
            .map_err(|e| e.to_string())?
            .to_json();
        let b = run_scenario(&file, &RunOptions::default())
            .map_err(|e| e.to_string())?
            .to_json();
        ensure!(a == b, "{name}: reports differ between runs");
    }
    Ok(format!(
        "{} scenarios byte-identical across two runs",
        names.len()
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("qubit pipeline", qubit_pipeline),
        ("conjugation law", conjugation_law),
        ("basis resolution", basis_resolution),
        ("singlet and delta", singlet_delta),
        ("permissibility <=> induced action", permissibility_property),
        ("A1 search", a1_search),
        ("A2 falsifier", a2_falsifier),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let ms = start.elapsed().as_secs_f64() * 1e3;
        match outcome {
            Ok(detail) => println!("criterion {} [{name}]: PASS ({detail}) [{ms:.0} ms]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} [{name}]: FAIL ({why}) [{ms:.0} ms]", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
