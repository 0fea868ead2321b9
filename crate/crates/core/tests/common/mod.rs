#![allow(dead_code)]

use neutralwalk::adaptation::{adapt_observed, AcceptedMove, DEFAULT_MAX_SWEEPS};
use neutralwalk::model::pair;
use neutralwalk::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random fleet, allocation and demand. Allocations respect the load rule.
pub fn random_instance(rng: &mut impl Rng) -> (Genotype, Allocation, TraitVector) {
    let t = rng.gen_range(2..=8u16);
    let v = rng.gen_range(1..=8usize);
    let exact = rng.gen_bool(0.3);
    let cap = rng.gen_range(if exact { 1 } else { 0 }..=12u32);
    let vehicles = (0..v)
        .map(|_| {
            rng.gen_bool(0.9).then(|| {
                let a = rng.gen_range(0..t);
                pair(a, (a + rng.gen_range(1..t)) % t)
            })
        })
        .collect();
    let rule = if exact { LoadRule::Exact } else { LoadRule::AtMost };
    let g = Genotype::new(vehicles, t as usize, cap).unwrap().with_load_rule(rule);
    let states = (0..v)
        .map(|i| {
            if g.vehicle(i).is_none() {
                [0, 0]
            } else if exact {
                let a = rng.gen_range(0..=cap);
                [a, cap - a]
            } else {
                let a = rng.gen_range(0..=cap);
                [a, rng.gen_range(0..=cap - a)]
            }
        })
        .collect();
    let env = TraitVector::new((0..t).map(|_| rng.gen_range(0..=3 * cap.max(1))).collect());
    (g, Allocation::new(states), env)
}

#[derive(Debug, Default)]
pub struct StressReport {
    pub calls: usize,
    pub moves: usize,
    pub failures: Vec<String>,
}

/// Runs `calls` random adaptations and checks every accepted move: fitness
/// strictly rises, the allocation stays legal, the incremental phenotype and
/// fitness agree with a recomputation, and each call converges.
pub fn adaptation_stress(calls: usize, seed: u64) -> StressReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = StressReport::default();
    for k in 0..calls {
        let (g, a, env) = random_instance(&mut rng);
        let start_fitness = fitness(&compute_phenotype(&g, &a).unwrap(), &env).unwrap();
        let mut last = start_fitness;
        let mut problems = Vec::new();
        let out = adapt_observed(&g, a, &env, DEFAULT_MAX_SWEEPS, |m: &AcceptedMove<'_>| {
            report.moves += 1;
            if m.before != last || m.after <= m.before {
                problems.push(format!("fitness {} -> {}", m.before.value(), m.after.value()));
            }
            last = m.after;
            let violations = validate(&g, m.allocation);
            if !violations.is_empty() {
                problems.push(format!("{violations:?}"));
            }
            let p = compute_phenotype(&g, m.allocation).unwrap();
            if &p != m.phenotype || fitness(&p, &env).unwrap() != m.after {
                problems.push("stale phenotype or fitness".into());
            }
        });
        match out {
            Ok(o) => {
                if !o.converged || o.sweeps_used >= DEFAULT_MAX_SWEEPS {
                    problems.push(format!("not converged after {} sweeps", o.sweeps_used));
                }
                if o.fitness != last || o.fitness < start_fitness {
                    problems.push("final fitness disagrees with the last move".into());
                }
            }
            Err(e) => problems.push(e.to_string()),
        }
        if !problems.is_empty() {
            report.failures.push(format!("call {k}: {}", problems.join(", ")));
        }
        report.calls += 1;
    }
    report
}
