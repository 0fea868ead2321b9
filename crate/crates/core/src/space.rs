//! Redundant and degenerate fleet construction, and the single-vehicle
//! mutation operator that links fleets in the fitness landscape.
//!
//! * Redundant fleets draw every vehicle from a catalog of disjoint pairs
//!   `(0,1), (2,3), ...`, so vehicles within a catalog type are identical.
//! * Degenerate fleets keep all vehicle pairs pairwise distinct: two
//!   vehicles share at most one task type.

use std::fmt;
use std::str::FromStr;

use rand::seq::index;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Allocation, Genotype, LoadRule, TaskPair, ThresholdRule, TraitVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Redundant,
    Degenerate,
}

impl ModelKind {
    pub const ALL: [ModelKind; 2] = [ModelKind::Redundant, ModelKind::Degenerate];

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Redundant => "redundant",
            ModelKind::Degenerate => "degenerate",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "redundant" => Ok(ModelKind::Redundant),
            "degenerate" => Ok(ModelKind::Degenerate),
            other => Err(Error::config(
                "model",
                format!("expected `redundant` or `degenerate`, got `{other}`"),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MutationMode {
    /// The vehicle becomes a different admissible type.
    TypeReplacement,
    /// The vehicle becomes a null vehicle.
    Deletion,
}

impl MutationMode {
    pub fn name(self) -> &'static str {
        match self {
            MutationMode::TypeReplacement => "replace",
            MutationMode::Deletion => "delete",
        }
    }
}

impl FromStr for MutationMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "replace" => Ok(MutationMode::TypeReplacement),
            "delete" => Ok(MutationMode::Deletion),
            other => Err(Error::config(
                "mutation_mode",
                format!("expected `replace` or `delete`, got `{other}`"),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DegenerateInit {
    /// Distinct pairs sampled uniformly without replacement.
    RandomDistinct,
    /// Deterministic rings `(j, j+1)` then `(j, j+2)` modulo the task count.
    DoubleRing,
}

impl DegenerateInit {
    pub fn name(self) -> &'static str {
        match self {
            DegenerateInit::RandomDistinct => "random",
            DegenerateInit::DoubleRing => "ring",
        }
    }
}

impl FromStr for DegenerateInit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random" => Ok(DegenerateInit::RandomDistinct),
            "ring" => Ok(DegenerateInit::DoubleRing),
            other => Err(Error::config(
                "degenerate_init",
                format!("expected `random` or `ring`, got `{other}`"),
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FleetConfig {
    pub task_count: usize,
    pub fleet_size: usize,
    /// Vehicles with index `>= base_fleet_size` start unallocated (excess resources).
    pub base_fleet_size: usize,
    pub capacity: u32,
    pub load_rule: LoadRule,
    pub threshold_rule: ThresholdRule,
    pub model: ModelKind,
    pub mutation_mode: MutationMode,
    pub init_state_max: u32,
    pub degenerate_init: DegenerateInit,
}

pub const DEFAULT_TASK_COUNT: usize = 16;
pub const DEFAULT_CAPACITY: u32 = 12;
pub const DEFAULT_INIT_STATE_MAX: u32 = 10;

impl FleetConfig {
    /// 16 task types, 32 vehicles, capacity 12, initial states in `0..=10`,
/// deletion mutations, relative-shortfall threshold.
    pub fn standard(model: ModelKind) -> Self {
        Self {
            task_count: DEFAULT_TASK_COUNT,
            fleet_size: 2 * DEFAULT_TASK_COUNT,
            base_fleet_size: 2 * DEFAULT_TASK_COUNT,
            capacity: DEFAULT_CAPACITY,
            load_rule: LoadRule::AtMost,
            threshold_rule: ThresholdRule::RelativeShortfall,
            model,
            mutation_mode: MutationMode::Deletion,
            init_state_max: DEFAULT_INIT_STATE_MAX,
            degenerate_init: DegenerateInit::RandomDistinct,
        }
    }

    pub fn with_model(&self, model: ModelKind) -> Self {
        Self {
            model,
            ..self.clone()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let t = self.task_count;
        if t < 2 {
            return Err(Error::config("task_count", format!("must be at least 2, got {t}")));
        }
        if t > u16::MAX as usize {
            return Err(Error::config("task_count", format!("too large: {t}")));
        }
        if self.fleet_size == 0 {
            return Err(Error::config("fleet_size", "must be at least 1"));
        }
        if self.base_fleet_size > self.fleet_size {
            return Err(Error::config(
                "base_fleet_size",
                format!(
                    "{} exceeds the fleet size {}",
                    self.base_fleet_size, self.fleet_size
                ),
            ));
        }
        match self.load_rule {
            LoadRule::Exact
                if self.capacity == 0
                    || u64::from(self.capacity) > 2 * u64::from(self.init_state_max) =>
            {
                return Err(Error::config(
                    "capacity",
                    format!(
                        "an exact load of {} cannot be split into two counts in 0..={}",
                        self.capacity, self.init_state_max
                    ),
                ));
            }
            _ => {}
        }
        match self.model {
            ModelKind::Redundant if !t.is_multiple_of(2) => Err(Error::config(
                "task_count",
                format!("the redundant model needs an even number of task types, got {t}"),
            )),
            ModelKind::Degenerate if self.fleet_size > pair_count(t) => Err(Error::config(
                "fleet_size",
                format!(
                    "a degenerate fleet of {} vehicles needs more than the {} distinct pairs of {t} tasks",
                    self.fleet_size,
                    pair_count(t)
                ),
            )),
            ModelKind::Degenerate
                if self.degenerate_init == DegenerateInit::DoubleRing
                    && self.fleet_size > double_ring(t).len() =>
            {
                Err(Error::config(
                    "fleet_size",
                    format!(
                        "the ring initializer yields only {} distinct pairs for {t} tasks",
                        double_ring(t).len()
                    ),
                ))
            }
            _ => Ok(()),
        }
    }
}

/// `C(T, 2)`.
pub fn pair_count(task_count: usize) -> usize {
    task_count * task_count.saturating_sub(1) / 2
}

/// Every pair of distinct tasks in lexicographic order.
pub fn all_pairs(task_count: usize) -> Vec<TaskPair> {
    let t = task_count as u16;
    (0..t)
        .flat_map(|a| ((a + 1)..t).map(move |b| TaskPair::new(a, b).expect("a < b")))
        .collect()
}

/// Disjoint consecutive pairs `(0,1), (2,3), ...`.
pub fn redundant_catalog(task_count: usize) -> Vec<TaskPair> {
    (0..(task_count / 2) as u16)
        .map(|k| TaskPair::new(2 * k, 2 * k + 1).expect("distinct"))
        .collect()
}

fn double_ring(task_count: usize) -> Vec<TaskPair> {
    let t = task_count;
    let mut out: Vec<TaskPair> = Vec::with_capacity(2 * t);
    for step in [1, 2] {
        for j in 0..t {
            let k = (j + step) % t;
            if k == j {
                continue;
            }
            let p = TaskPair::new(j as u16, k as u16).expect("distinct");
            if !out.contains(&p) {
                out.push(p);
            }
        }
    }
    out
}

/// Round-robin over the catalog, so type subsets differ in size by at most one.
pub fn init_redundant(config: &FleetConfig) -> Result<Genotype> {
    if config.model != ModelKind::Redundant {
        return Err(Error::config("model", "init_redundant needs the redundant model"));
    }
    config.validate()?;
    let catalog = redundant_catalog(config.task_count);
    let vehicles = (0..config.fleet_size)
        .map(|i| Some(catalog[i % catalog.len()]))
        .collect();
    Ok(Genotype::new(vehicles, config.task_count, config.capacity)?.with_load_rule(config.load_rule))
}

pub fn init_degenerate<R: Rng + ?Sized>(config: &FleetConfig, rng: &mut R) -> Result<Genotype> {
    if config.model != ModelKind::Degenerate {
        return Err(Error::config("model", "init_degenerate needs the degenerate model"));
    }
    config.validate()?;
    let vehicles = match config.degenerate_init {
        DegenerateInit::RandomDistinct => {
            let pairs = all_pairs(config.task_count);
            index::sample(rng, pairs.len(), config.fleet_size)
                .into_iter()
                .map(|i| Some(pairs[i]))
                .collect()
        }
        DegenerateInit::DoubleRing => double_ring(config.task_count)
            .into_iter()
            .take(config.fleet_size)
            .map(Some)
            .collect(),
    };
    Ok(Genotype::new(vehicles, config.task_count, config.capacity)?.with_load_rule(config.load_rule))
}

pub fn init_genotype<R: Rng + ?Sized>(config: &FleetConfig, rng: &mut R) -> Result<Genotype> {
    match config.model {
        ModelKind::Redundant => init_redundant(config),
        ModelKind::Degenerate => init_degenerate(config, rng),
    }
}

/// Random initial allocation.
///
/// Under [`LoadRule::AtMost`] the first `base_fleet_size` vehicles get
/// independent uniform counts in `0..=init_state_max`, redrawn while their sum
/// exceeds `λ` (so uniform over the feasible part of the grid), and excess
/// vehicles start empty. Under [`LoadRule::Exact`] every live vehicle carries exactly
/// `λ`, split uniformly between its two tasks with both counts in
/// `0..=init_state_max`. Null vehicles are always empty.
pub fn init_allocation<R: Rng + ?Sized>(
    genotype: &Genotype,
    config: &FleetConfig,
    rng: &mut R,
) -> Result<Allocation> {
    let cap = genotype.capacity();
    let max = config.init_state_max;
    let states = match genotype.load_rule() {
        LoadRule::AtMost => {
            if max > 0 && cap == 0 {
                return Err(Error::config("capacity", "must be at least 1"));
            }
            genotype
                .vehicles()
                .iter()
                .enumerate()
                .map(|(i, p)| {
                    if i < config.base_fleet_size && p.is_some() {
                        loop {
                            let s = [rng.gen_range(0..=max), rng.gen_range(0..=max)];
                            if s[0] + s[1] <= cap {
                                break s;
                            }
                        }
                    } else {
                        [0, 0]
                    }
                })
                .collect()
        }
        LoadRule::Exact => {
            if cap == 0 || u64::from(cap) > 2 * u64::from(max) {
                return Err(Error::config(
                    "capacity",
                    "an exact load must be splittable into two counts within init_state_max",
                ));
            }
            let lo = cap.saturating_sub(max);
            let hi = cap.min(max);
            genotype
                .vehicles()
                .iter()
                .map(|p| {
                    if p.is_some() {
                        let a = rng.gen_range(lo..=hi);
                        [a, cap - a]
                    } else {
                        [0, 0]
                    }
                })
                .collect()
        }
    };
    Ok(Allocation::new(states))
}

/// Demand the fleet is asked to meet: the phenotype of the first
/// `base_fleet_size` vehicles. Excess vehicles add supply, not demand.
pub fn base_demand(genotype: &Genotype, allocation: &Allocation, base_fleet_size: usize) -> TraitVector {
    let mut out = vec![0u32; genotype.task_count()];
    for (p, state) in genotype
        .vehicles()
        .iter()
        .zip(allocation.states())
        .take(base_fleet_size)
    {
        if let Some(p) = p {
            out[p.lo() as usize] += state[0];
            out[p.hi() as usize] += state[1];
        }
    }
    TraitVector::new(out)
}

/// Allocation row a freshly placed vehicle starts with: empty under
/// [`LoadRule::AtMost`], an even split of `λ` (extra unit on the higher task)
/// under [`LoadRule::Exact`].
pub fn fresh_state(genotype: &Genotype, replacement: Option<TaskPair>) -> [u32; 2] {
    match (genotype.load_rule(), replacement) {
        (LoadRule::Exact, Some(_)) => {
            let cap = genotype.capacity();
            [cap / 2, cap - cap / 2]
        }
        _ => [0, 0],
    }
}

/// Whether the fleet obeys the structural rule of `model`.
pub fn check_constraints(model: ModelKind, genotype: &Genotype) -> Result<()> {
    match model {
        ModelKind::Redundant => {
            let catalog = redundant_catalog(genotype.task_count());
            for (i, p) in genotype.vehicles().iter().enumerate() {
                if let Some(p) = p {
                    if !catalog.contains(p) {
                        return Err(Error::Structure(format!(
                            "vehicle {i} has pair {p} outside the redundant catalog"
                        )));
                    }
                }
            }
            Ok(())
        }
        ModelKind::Degenerate => {
            let t = genotype.task_count();
            let mut seen = vec![false; t * t];
            for (i, p) in genotype.vehicles().iter().enumerate() {
                if let Some(p) = p {
                    let slot = &mut seen[p.lo() as usize * t + p.hi() as usize];
                    if *slot {
                        return Err(Error::Structure(format!(
                            "vehicle {i} duplicates pair {p} in a degenerate fleet"
                        )));
                    }
                    *slot = true;
                }
            }
            Ok(())
        }
    }
}

/// Pairs vehicle `vehicle` may be replaced with, in lexicographic order.
pub fn admissible_replacements(model: ModelKind, genotype: &Genotype, vehicle: usize) -> Vec<TaskPair> {
    let current = genotype.vehicle(vehicle);
    match model {
        ModelKind::Redundant => redundant_catalog(genotype.task_count())
            .into_iter()
            .filter(|p| Some(*p) != current)
            .collect(),
        ModelKind::Degenerate => {
            let t = genotype.task_count();
            let mut used = vec![false; t * t];
            for p in genotype.vehicles().iter().flatten() {
                used[p.lo() as usize * t + p.hi() as usize] = true;
            }
            all_pairs(t)
                .into_iter()
                .filter(|p| !used[p.lo() as usize * t + p.hi() as usize])
                .collect()
        }
    }
}

/// Every mutation of a fleet in deterministic order: vehicles ascending and,
/// for each, its replacements in lexicographic order (`None` under deletion).
pub fn enumerate_mutations(
    model: ModelKind,
    mode: MutationMode,
    genotype: &Genotype,
) -> Vec<(usize, Option<TaskPair>)> {
    let mut out = Vec::new();
    for vehicle in 0..genotype.fleet_size() {
        match mode {
            MutationMode::TypeReplacement => out.extend(
                admissible_replacements(model, genotype, vehicle)
                    .into_iter()
                    .map(|p| (vehicle, Some(p))),
            ),
            MutationMode::Deletion => {
                if genotype.vehicle(vehicle).is_some() {
                    out.push((vehicle, None));
                }
            }
        }
    }
    out
}

/// Whether at least one mutation exists for this fleet.
pub fn is_mutable(model: ModelKind, mode: MutationMode, genotype: &Genotype) -> bool {
    match mode {
        MutationMode::Deletion => genotype.vehicles().iter().any(Option::is_some),
        MutationMode::TypeReplacement => match model {
            ModelKind::Redundant => {
                let catalog = redundant_catalog(genotype.task_count());
                catalog.len() >= 2 || genotype.vehicles().iter().any(Option::is_none)
            }
            ModelKind::Degenerate => {
                genotype.vehicles().iter().flatten().count() < pair_count(genotype.task_count())
            }
        },
    }
}

/// Result of one mutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mutant {
    pub genotype: Genotype,
    pub allocation: Allocation,
    pub vehicle: usize,
    pub replacement: Option<TaskPair>,
}

/// Replaces one vehicle and resets its allocation row to [`fresh_state`].
pub fn apply_mutation(
    genotype: &Genotype,
    allocation: &Allocation,
    vehicle: usize,
    replacement: Option<TaskPair>,
) -> Mutant {
    let genotype = genotype.with_vehicle(vehicle, replacement);
    let mut allocation = allocation.clone();
    *allocation.state_mut(vehicle) = fresh_state(&genotype, replacement);
    Mutant {
        genotype,
        allocation,
        vehicle,
        replacement,
    }
}

/// Picks a mutable vehicle uniformly, then a replacement uniformly from its
/// admissible set (or the null vehicle under deletion).
pub fn mutate<R: Rng + ?Sized>(
    genotype: &Genotype,
    allocation: &Allocation,
    model: ModelKind,
    mode: MutationMode,
    rng: &mut R,
) -> Result<Mutant> {
    match mode {
        MutationMode::Deletion => {
            let live: Vec<usize> = (0..genotype.fleet_size())
                .filter(|&i| genotype.vehicle(i).is_some())
                .collect();
            if live.is_empty() {
                return Err(Error::MutationExhausted);
            }
            let vehicle = live[rng.gen_range(0..live.len())];
            Ok(apply_mutation(genotype, allocation, vehicle, None))
        }
        MutationMode::TypeReplacement => {
            let options: Vec<(usize, Vec<TaskPair>)> = (0..genotype.fleet_size())
                .map(|i| (i, admissible_replacements(model, genotype, i)))
                .filter(|(_, set)| !set.is_empty())
                .collect();
            if options.is_empty() {
                return Err(Error::MutationExhausted);
            }
            let (vehicle, set) = &options[rng.gen_range(0..options.len())];
            let replacement = set[rng.gen_range(0..set.len())];
            Ok(apply_mutation(genotype, allocation, *vehicle, Some(replacement)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::pair;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cfg(model: ModelKind, t: usize, v: usize) -> FleetConfig {
        FleetConfig {
            task_count: t,
            fleet_size: v,
            base_fleet_size: v,
            ..FleetConfig::standard(model)
        }
    }

    fn pairs(g: &Genotype) -> Vec<TaskPair> {
        g.vehicles().iter().map(|p| p.unwrap()).collect()
    }

    #[test]
    fn redundant_round_robin() {
        let g = init_redundant(&cfg(ModelKind::Redundant, 4, 4)).unwrap();
        assert_eq!(pairs(&g), vec![pair(0, 1), pair(2, 3), pair(0, 1), pair(2, 3)]);

        let g = init_redundant(&cfg(ModelKind::Redundant, 2, 3)).unwrap();
        assert_eq!(pairs(&g), vec![pair(0, 1); 3]);

        let g = init_redundant(&FleetConfig::standard(ModelKind::Redundant)).unwrap();
        let catalog = redundant_catalog(16);
        assert_eq!(catalog.len(), 8);
        for ty in catalog {
            assert_eq!(pairs(&g).iter().filter(|&&p| p == ty).count(), 4);
        }
    }

    #[test]
    fn redundant_rejects_odd_task_count() {
        assert!(matches!(
            init_redundant(&cfg(ModelKind::Redundant, 15, 30)),
            Err(Error::Config { .. })
        ));
    }

    #[test]
    fn double_ring_small() {
        let mut c = cfg(ModelKind::Degenerate, 4, 4);
        c.degenerate_init = DegenerateInit::DoubleRing;
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let g = init_degenerate(&c, &mut rng).unwrap();
        assert_eq!(pairs(&g), vec![pair(0, 1), pair(1, 2), pair(2, 3), pair(0, 3)]);
    }

    #[test]
    fn degenerate_size_limit() {
        let c = cfg(ModelKind::Degenerate, 4, 7);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(matches!(init_degenerate(&c, &mut rng), Err(Error::Config { .. })));
        assert!(init_degenerate(&cfg(ModelKind::Degenerate, 4, 6), &mut rng).is_ok());
    }

    #[test]
    fn small_capacity_draws_from_feasible_grid() {
        let mut c = cfg(ModelKind::Degenerate, 8, 20);
        c.capacity = 5;
        c.validate().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let g = init_degenerate(&c, &mut rng).unwrap();
        for _ in 0..50 {
            let a = init_allocation(&g, &c, &mut rng).unwrap();
            assert!(a.states().iter().all(|s| s[0] + s[1] <= 5));
        }
        c.capacity = 0;
        let g = init_degenerate(&c, &mut rng).unwrap();
        assert!(matches!(
            init_allocation(&g, &c, &mut rng),
            Err(Error::Config { ref key, .. }) if key == "capacity"
        ));
    }

    #[test]
    fn allocation_respects_base_size_and_nulls() {
        let mut c = cfg(ModelKind::Degenerate, 6, 6);
        c.base_fleet_size = 4;
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = init_degenerate(&c, &mut rng).unwrap().with_vehicle(1, None);
        let a = init_allocation(&g, &c, &mut rng).unwrap();
        assert_eq!(a.state(1), [0, 0]);
        assert_eq!(a.state(4), [0, 0]);
        assert_eq!(a.state(5), [0, 0]);
        assert!(a.states().iter().flatten().all(|&x| x <= 10));
    }

    #[test]
    fn admissible_examples() {
        let g = init_redundant(&cfg(ModelKind::Redundant, 4, 4)).unwrap();
        assert_eq!(admissible_replacements(ModelKind::Redundant, &g, 0), vec![pair(2, 3)]);

        let ring = Genotype::new(
            vec![Some(pair(0, 1)), Some(pair(1, 2)), Some(pair(2, 3)), Some(pair(0, 3))],
            4,
            20,
        )
        .unwrap();
        for v in 0..4 {
            assert_eq!(
                admissible_replacements(ModelKind::Degenerate, &ring, v),
                vec![pair(0, 2), pair(1, 3)]
            );
        }

        let full = Genotype::new(all_pairs(4).into_iter().map(Some).collect(), 4, 20).unwrap();
        assert!(admissible_replacements(ModelKind::Degenerate, &full, 2).is_empty());
        assert!(!is_mutable(ModelKind::Degenerate, MutationMode::TypeReplacement, &full));
    }

    #[test]
    fn null_vehicle_can_be_revived() {
        let g = Genotype::new(vec![Some(pair(0, 1)), None], 4, 20).unwrap();
        assert_eq!(
            admissible_replacements(ModelKind::Redundant, &g, 1),
            vec![pair(0, 1), pair(2, 3)]
        );
    }

    #[test]
    fn deletion_nulls_one_vehicle() {
        let c = cfg(ModelKind::Degenerate, 6, 5);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let g = init_degenerate(&c, &mut rng).unwrap();
        let a = init_allocation(&g, &c, &mut rng).unwrap();
        let m = mutate(&g, &a, ModelKind::Degenerate, MutationMode::Deletion, &mut rng).unwrap();
        assert_eq!(m.genotype.vehicle(m.vehicle), None);
        assert_eq!(m.allocation.state(m.vehicle), [0, 0]);
        for i in (0..5).filter(|&i| i != m.vehicle) {
            assert_eq!(m.genotype.vehicle(i), g.vehicle(i));
            assert_eq!(m.allocation.state(i), a.state(i));
        }
    }

    #[test]
    fn exhausted_fleets_report_it() {
        let g = init_redundant(&cfg(ModelKind::Redundant, 2, 2)).unwrap();
        let a = Allocation::zeros(2);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(matches!(
            mutate(&g, &a, ModelKind::Redundant, MutationMode::TypeReplacement, &mut rng),
            Err(Error::MutationExhausted)
        ));
        let dead = Genotype::new(vec![None, None], 2, 20).unwrap();
        assert!(matches!(
            mutate(&dead, &a, ModelKind::Redundant, MutationMode::Deletion, &mut rng),
            Err(Error::MutationExhausted)
        ));
    }

    #[test]
    fn enumerate_matches_admissible_sets() {
        let g = init_redundant(&cfg(ModelKind::Redundant, 4, 3)).unwrap();
        assert_eq!(
            enumerate_mutations(ModelKind::Redundant, MutationMode::TypeReplacement, &g),
            vec![(0, Some(pair(2, 3))), (1, Some(pair(0, 1))), (2, Some(pair(2, 3)))]
        );
    }
}
