//! Self-check against brute-force oracles on small bundled instances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::adaptation::{adapt, DEFAULT_MAX_SWEEPS};
use crate::error::Result;
use crate::explorer::{evolvability, exhaustive_explore, explore, genotype_space_bound, nn_size};
use crate::model::{
    compute_phenotype, fitness, pair, validate, Alpha, Allocation, Fitness, Genotype, LoadRule,
    ThresholdRule, TraitVector,
};
use crate::space::{DegenerateInit, FleetConfig, ModelKind, MutationMode};

/// Walks run this many times the number of nodes the oracle found.
pub const WALK_FACTOR: usize = 50;

/// A small instance whose whole reachable space can be enumerated.
///
/// Capacity is `2 * fleet_size` and initial counts are at most 1, so no
/// vehicle ever runs out of room: every task with a live vehicle on it is
/// filled and the adapted fitness depends on the genotype alone. That makes
/// the walk and the breadth-first oracle comparable node by node.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub config: FleetConfig,
    pub alpha: Alpha,
    pub seed: u64,
}

#[allow(clippy::too_many_arguments)]
fn fixture(
    name: &'static str,
    model: ModelKind,
    mode: MutationMode,
    task_count: usize,
    fleet_size: usize,
    alpha: u64,
    rule: ThresholdRule,
    seed: u64,
) -> Fixture {
    Fixture {
        name,
        config: FleetConfig {
            task_count,
            fleet_size,
            base_fleet_size: fleet_size,
            capacity: 2 * fleet_size as u32,
            load_rule: LoadRule::AtMost,
            threshold_rule: rule,
            model,
            mutation_mode: mode,
            init_state_max: 1,
            degenerate_init: DegenerateInit::RandomDistinct,
        },
        alpha: Alpha::percent(alpha),
        seed,
    }
}

pub fn fixtures() -> Vec<Fixture> {
    use ModelKind::*;
    use MutationMode::*;
    use ThresholdRule::*;
    vec![
        fixture("degenerate-t4-v2-replace", Degenerate, TypeReplacement, 4, 2, 5, DemandSquared, 1),
        fixture("degenerate-t5-v3-replace-a0", Degenerate, TypeReplacement, 5, 3, 0, RelativeShortfall, 2),
        fixture("degenerate-t6-v4-replace", Degenerate, TypeReplacement, 6, 4, 25, DemandSquared, 3),
        fixture("degenerate-t5-v4-delete", Degenerate, Deletion, 5, 4, 50, RelativeShortfall, 4),
        fixture("redundant-t4-v3-replace", Redundant, TypeReplacement, 4, 3, 5, DemandSquared, 5),
        fixture("redundant-t6-v6-replace-a0", Redundant, TypeReplacement, 6, 6, 0, RelativeShortfall, 6),
        fixture("redundant-t6-v6-delete", Redundant, Deletion, 6, 6, 50, RelativeShortfall, 7),
    ]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct OracleReport {
    pub checks: Vec<Check>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Walk of [`WALK_FACTOR`] times the oracle's node count against the
/// exhaustive search, same seed, same initial fleet.
pub fn walk_matches_oracle(f: &Fixture) -> Result<Check> {
    let oracle = exhaustive_explore(&f.config, f.alpha, &mut ChaCha8Rng::seed_from_u64(f.seed))?;
    let steps = WALK_FACTOR * oracle.nodes().len();
    let walk = explore(&f.config, f.alpha, steps, &mut ChaCha8Rng::seed_from_u64(f.seed))?;

    let mut problems = Vec::new();
    if walk.environment() != oracle.environment() {
        problems.push("different environments".to_string());
    }
    if walk.neutral_keys() != oracle.neutral_keys() {
        problems.push("neutral sets differ".into());
    }
    if walk.boundary_keys() != oracle.boundary_keys() {
        problems.push("boundary sets differ".into());
    }
    let (nn_w, nn_o) = (nn_size(&walk), nn_size(&oracle));
    let (ev_w, ev_o) = (evolvability(&walk), evolvability(&oracle));
    if nn_w != nn_o {
        problems.push(format!("nn_size {nn_w} vs {nn_o}"));
    }
    if ev_w != ev_o {
        problems.push(format!("evolvability {ev_w} vs {ev_o}"));
    }
    let detail = if problems.is_empty() {
        format!(
            "nn_size={nn_o} evolvability={ev_o} boundary={} steps={steps}",
            oracle.boundary_keys().len()
        )
    } else {
        problems.join("; ")
    };
    Ok(Check::new(format!("walk-vs-oracle {}", f.name), problems.is_empty(), detail))
}

/// With `alpha = 0` only fleets meeting every demand count as neutral.
fn alpha_zero_is_exact(f: &Fixture) -> Result<Check> {
    let oracle = exhaustive_explore(&f.config, f.alpha, &mut ChaCha8Rng::seed_from_u64(f.seed))?;
    let bad = oracle.neutral_nodes().filter(|n| n.fitness != Fitness::OPTIMAL).count()
        + oracle.boundary_nodes().filter(|n| n.fitness == Fitness::OPTIMAL).count();
    Ok(Check::new(
        format!("alpha-zero {}", f.name),
        bad == 0,
        format!("{bad} misclassified nodes"),
    ))
}

/// Fitness written out directly, no shared helpers.
fn direct_fitness(p: &[u32], e: &[u32]) -> i64 {
    let mut f = 0i64;
    for j in 0..p.len() {
        if p[j] <= e[j] {
            let d = i64::from(e[j]) - i64::from(p[j]);
            f -= d * d;
        }
    }
    f
}

fn fitness_brute_force() -> Check {
    let mut mismatches = 0;
    let mut cases = 0;
    let grid = |i: u32| [i / 25, (i / 5) % 5, i % 5];
    for pi in 0..125 {
        for ei in 0..125 {
            let (p, e) = (grid(pi), grid(ei));
            let got = fitness(&TraitVector::new(p.to_vec()), &TraitVector::new(e.to_vec()))
                .map(Fitness::value)
                .ok();
            cases += 1;
            if got != Some(direct_fitness(&p, &e)) {
                mismatches += 1;
            }
        }
    }
    Check::new(
        "fitness brute force over {0..4}^3",
        mismatches == 0,
        format!("{cases} pairs, {mismatches} mismatches"),
    )
}

/// Best fitness over every legal allocation.
pub fn optimum_by_enumeration(g: &Genotype, env: &TraitVector) -> Fitness {
    let v = g.fleet_size();
    let cap = g.capacity();
    let mut states = vec![[0u32; 2]; v];
    let mut best = None;
    loop {
        let a = Allocation::new(states.clone());
        if validate(g, &a).is_empty() {
            let f = fitness(&compute_phenotype(g, &a).expect("valid"), env).expect("same length");
            if best.is_none_or(|b: Fitness| f > b) {
                best = Some(f);
            }
        }
        // Odometer over all (a, b) in 0..=cap per vehicle.
        let mut i = 0;
        loop {
            if i == 2 * v {
                return best.expect("the empty allocation is legal");
            }
            let cell = &mut states[i / 2][i % 2];
            if *cell < cap {
                *cell += 1;
                break;
            }
            *cell = 0;
            i += 1;
        }
    }
}

fn adaptation_brute_force(instances: usize, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let mut optimal = 0;
    for k in 0..instances {
        let t = rng.gen_range(2..=3u16);
        let v = rng.gen_range(1..=2usize);
        let cap = rng.gen_range(1..=5u32);
        let vehicles = (0..v)
            .map(|_| {
                let a = rng.gen_range(0..t);
                let b = (a + rng.gen_range(1..t)) % t;
                Some(pair(a, b))
            })
            .collect();
        let g = Genotype::new(vehicles, t as usize, cap).expect("valid fixture");
        let env = TraitVector::new((0..t).map(|_| rng.gen_range(0..=6)).collect());
        let start = Allocation::new(
            (0..v)
                .map(|_| {
                    let a = rng.gen_range(0..=cap);
                    [a, rng.gen_range(0..=cap - a)]
                })
                .collect(),
        );
        let out = match adapt(&g, start, &env, DEFAULT_MAX_SWEEPS) {
            Ok(o) => o,
            Err(e) => {
                failures.push(format!("instance {k}: {e}"));
                continue;
            }
        };
        let best = optimum_by_enumeration(&g, &env);
        let recomputed = compute_phenotype(&g, &out.allocation)
            .ok()
            .and_then(|p| fitness(&p, &env).ok());
        if !out.converged || out.fitness > best || recomputed != Some(out.fitness) {
            failures.push(format!(
                "instance {k}: greedy {} optimum {} converged {}",
                out.fitness.value(),
                best.value(),
                out.converged
            ));
        }
        if out.fitness == best {
            optimal += 1;
        }
    }
    Check::new(
        format!("adaptation vs enumeration ({instances} instances)"),
        failures.is_empty(),
        if failures.is_empty() {
            format!("{optimal} reach the optimum")
        } else {
            failures.join("; ")
        },
    )
}

fn adaptation_regression() -> Check {
    let g = Genotype::new(vec![Some(pair(0, 1)), Some(pair(1, 2))], 3, 4).expect("valid");
    let env = TraitVector::new(vec![2, 6, 2]);
    let best = optimum_by_enumeration(&g, &env);
    let out = adapt(&g, Allocation::zeros(2), &env, DEFAULT_MAX_SWEEPS);
    let passed = matches!(&out, Ok(o) if o.fitness == best && best.value() == -2
        && o.allocation == Allocation::new(vec![[2, 2], [3, 1]]));
    Check::new(
        "adaptation shared-task regression",
        passed,
        format!("optimum {}, greedy {:?}", best.value(), out.map(|o| o.fitness.value())),
    )
}

/// Runs every bundled fixture.
pub fn oracle_check() -> OracleReport {
    let mut report = OracleReport::default();
    report.checks.push(fitness_brute_force());
    report.checks.push(adaptation_regression());
    report.checks.push(adaptation_brute_force(500, 17));
    for f in fixtures() {
        let bound = genotype_space_bound(&f.config);
        report.checks.push(walk_matches_oracle(&f).unwrap_or_else(|e| {
            Check::new(format!("walk-vs-oracle {}", f.name), false, format!("{e} (bound {bound})"))
        }));
        if f.alpha == Alpha::percent(0) {
            report.checks.push(alpha_zero_is_exact(&f).unwrap_or_else(|e| {
                Check::new(format!("alpha-zero {}", f.name), false, e.to_string())
            }));
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn direct_fitness_examples() {
        assert_eq!(direct_fitness(&[5, 7], &[5, 7]), 0);
        assert_eq!(direct_fitness(&[3, 7], &[5, 7]), -4);
        assert_eq!(direct_fitness(&[9, 0], &[5, 2]), -4);
    }

    #[test]
    fn enumeration_on_single_vehicle() {
        let g = Genotype::new(vec![Some(pair(0, 1))], 2, 3).unwrap();
        // Cap 3 against demand (5, 0): best is three units on task 0.
        assert_eq!(optimum_by_enumeration(&g, &TraitVector::new(vec![5, 0])).value(), -4);
    }

    #[test]
    fn fixtures_are_small() {
        for f in fixtures() {
            assert!(genotype_space_bound(&f.config) <= 10_000, "{}", f.name);
            f.config.validate().unwrap();
        }
    }
}
