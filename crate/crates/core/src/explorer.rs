//! Neutral-network discovery.
//!
//! Starting from an optimal fleet (the environment is set to its phenotype),
//! each step picks a stored neutral fleet uniformly, mutates it, lets the
//! mutant re-adapt its allocation and files the result as neutral or as part
//! of the 1-neighborhood. Fleets are identified by their canonical key and
//! stored at most once; rediscoveries only add an edge.

use std::collections::{HashMap, HashSet};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::adaptation::{adapt, DEFAULT_MAX_SWEEPS};
use crate::error::{Error, Result};
use crate::model::{
    canonical_form, compute_phenotype, fitness, neutrality_threshold_with, Alpha, Allocation, CanonicalKey,
    Fitness, Genotype, Threshold, TraitVector,
};
use crate::space::{
    apply_mutation, base_demand, check_constraints, enumerate_mutations, init_allocation, init_genotype,
    is_mutable, mutate, pair_count, redundant_catalog, FleetConfig, ModelKind, Mutant,
    MutationMode,
};

pub const DEFAULT_MAX_STEPS: usize = 20_000;

/// Largest genotype space [`exhaustive_explore`] agrees to enumerate.
pub const EXHAUSTIVE_GUARD: u128 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeClass {
    Neutral,
    Boundary,
}

impl NodeClass {
    pub fn name(self) -> &'static str {
        match self {
            NodeClass::Neutral => "neutral",
            NodeClass::Boundary => "boundary",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FleetNode {
    pub id: usize,
    pub genotype: Genotype,
    pub allocation: Allocation,
    pub phenotype: TraitVector,
    pub fitness: Fitness,
    pub class: NodeClass,
    mutable: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    /// The target was already stored when this edge was walked.
    pub duplicate: bool,
}

/// Cumulative counters after a step. Step 0 is the initial fleet alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    pub step: usize,
    pub neutral_count: usize,
    pub unique_boundary_phenotypes: usize,
    pub duplicates: usize,
}

#[derive(Debug, Clone)]
pub struct ExplorationResult {
    nodes: Vec<FleetNode>,
    index: HashMap<CanonicalKey, usize>,
    neutral: Vec<usize>,
    boundary: Vec<usize>,
    boundary_phenotypes: HashSet<TraitVector>,
    expandable: usize,
    edges: Vec<Edge>,
    series: Vec<StepRecord>,
    duplicates: usize,
    environment: TraitVector,
    threshold: Threshold,
    steps_executed: usize,
}

impl ExplorationResult {
    fn start(
        config: &FleetConfig,
        genotype: Genotype,
        allocation: Allocation,
        threshold_alpha: Alpha,
    ) -> Result<Self> {
        let phenotype = compute_phenotype(&genotype, &allocation)?;
        let environment = base_demand(&genotype, &allocation, config.base_fleet_size);
        let threshold = neutrality_threshold_with(&environment, threshold_alpha, config.threshold_rule);
        let mut out = Self {
            nodes: Vec::new(),
            index: HashMap::new(),
            neutral: Vec::new(),
            boundary: Vec::new(),
            boundary_phenotypes: HashSet::new(),
            expandable: 0,
            edges: Vec::new(),
            series: Vec::new(),
            duplicates: 0,
            environment: environment.clone(),
            threshold,
            steps_executed: 0,
        };
        let fitness = fitness(&phenotype, &environment)?;
        debug_assert_eq!(fitness, Fitness::OPTIMAL);
        out.insert(config, genotype, allocation, phenotype, fitness);
        out.record_step();
        Ok(out)
    }

    fn insert(
        &mut self,
        config: &FleetConfig,
        genotype: Genotype,
        allocation: Allocation,
        phenotype: TraitVector,
        fitness: Fitness,
    ) -> usize {
        let id = self.nodes.len();
        let class = if self.threshold.is_neutral(fitness) {
            NodeClass::Neutral
        } else {
            NodeClass::Boundary
        };
        let mutable = is_mutable(config.model, config.mutation_mode, &genotype);
        match class {
            NodeClass::Neutral => {
                self.neutral.push(id);
                if mutable {
                    self.expandable += 1;
                }
            }
            NodeClass::Boundary => {
                self.boundary.push(id);
                self.boundary_phenotypes.insert(phenotype.clone());
            }
        }
        self.index.insert(canonical_form(&genotype), id);
        self.nodes.push(FleetNode {
            id,
            genotype,
            allocation,
            phenotype,
            fitness,
            class,
            mutable,
        });
        id
    }

    /// Files a mutant of neutral node `src`: records a duplicate edge if its
    /// genotype is known, otherwise adapts, classifies and stores it.
    fn visit(&mut self, config: &FleetConfig, src: usize, mutant: Mutant) -> Result<usize> {
        check_constraints(config.model, &mutant.genotype)?;
        let key = canonical_form(&mutant.genotype);
        if let Some(&dst) = self.index.get(&key) {
            self.duplicates += 1;
            self.edges.push(Edge {
                src,
                dst,
                duplicate: true,
            });
            return Ok(dst);
        }
        let outcome = adapt(
            &mutant.genotype,
            mutant.allocation,
            &self.environment,
            DEFAULT_MAX_SWEEPS,
        )?;
        if !outcome.converged {
            return Err(Error::Structure(format!(
                "adaptation did not converge within {DEFAULT_MAX_SWEEPS} sweeps"
            )));
        }
        let dst = self.insert(
            config,
            mutant.genotype,
            outcome.allocation,
            outcome.phenotype,
            outcome.fitness,
        );
        self.edges.push(Edge {
            src,
            dst,
            duplicate: false,
        });
        Ok(dst)
    }

    fn record_step(&mut self) {
        self.series.push(StepRecord {
            step: self.steps_executed,
            neutral_count: self.neutral.len(),
            unique_boundary_phenotypes: self.boundary_phenotypes.len(),
            duplicates: self.duplicates,
        });
    }

    pub fn nodes(&self) -> &[FleetNode] {
        &self.nodes
    }

    pub fn node(&self, id: usize) -> &FleetNode {
        &self.nodes[id]
    }

    pub fn neutral_nodes(&self) -> impl Iterator<Item = &FleetNode> + '_ {
        self.neutral.iter().map(|&i| &self.nodes[i])
    }

    pub fn boundary_nodes(&self) -> impl Iterator<Item = &FleetNode> + '_ {
        self.boundary.iter().map(|&i| &self.nodes[i])
    }

    pub fn neutral_keys(&self) -> HashSet<CanonicalKey> {
        self.neutral_nodes().map(|n| canonical_form(&n.genotype)).collect()
    }

    pub fn boundary_keys(&self) -> HashSet<CanonicalKey> {
        self.boundary_nodes().map(|n| canonical_form(&n.genotype)).collect()
    }

    /// Stored node with this genotype identity, if any.
    pub fn lookup(&self, key: &CanonicalKey) -> Option<&FleetNode> {
        self.index.get(key).map(|&i| &self.nodes[i])
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn series(&self) -> &[StepRecord] {
        &self.series
    }

    pub fn environment(&self) -> &TraitVector {
        &self.environment
    }

    pub fn threshold(&self) -> Threshold {
        self.threshold
    }

    pub fn steps_executed(&self) -> usize {
        self.steps_executed
    }

    pub fn duplicates(&self) -> usize {
        self.duplicates
    }
}

/// Random-walk exploration of the neutral network and its 1-neighborhood.
///
/// Every mutation attempt is a step, including rediscoveries and attempts on
/// an exhausted fleet. The walk stops early, before taking a step, when no
/// stored neutral fleet admits any mutation.
pub fn explore<R: Rng + ?Sized>(
    config: &FleetConfig,
    alpha: Alpha,
    max_steps: usize,
    rng: &mut R,
) -> Result<ExplorationResult> {
    if max_steps == 0 {
        return Err(Error::Parameter("max_steps must be at least 1".into()));
    }
    config.validate()?;
    let genotype = init_genotype(config, rng)?;
    check_constraints(config.model, &genotype)?;
    let allocation = init_allocation(&genotype, config, rng)?;
    let mut result = ExplorationResult::start(config, genotype, allocation, alpha)?;

    while result.steps_executed < max_steps && result.expandable > 0 {
        result.steps_executed += 1;
        let src = result.neutral[rng.gen_range(0..result.neutral.len())];
        let parent = &result.nodes[src];
        if parent.mutable {
            let mutant = mutate(
                &parent.genotype,
                &parent.allocation,
                config.model,
                config.mutation_mode,
                rng,
            )?;
            result.visit(config, src, mutant)?;
        }
        result.record_step();
    }
    Ok(result)
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// Upper bound on the number of canonical genotypes a configuration can reach.
pub fn genotype_space_bound(config: &FleetConfig) -> u128 {
    let v = config.fleet_size as u128;
    let nulls_possible = config.mutation_mode == MutationMode::Deletion;
    match config.model {
        ModelKind::Redundant => {
            let types = redundant_catalog(config.task_count).len() as u128 + u128::from(nulls_possible);
            binomial(types + v - 1, v)
        }
        ModelKind::Degenerate => {
            let pairs = pair_count(config.task_count) as u128;
            if nulls_possible {
                (0..=v).map(|k| binomial(pairs, k)).fold(0u128, u128::saturating_add)
            } else {
                binomial(pairs, v)
            }
        }
    }
}

/// Breadth-first enumeration of every fleet reachable from the initial one,
/// expanding neutral fleets through all of their mutations in a fixed order.
///
/// The initial fleet is drawn from `rng` exactly as [`explore`] draws it, so
/// the same seed yields the same starting point for both.
pub fn exhaustive_explore<R: Rng + ?Sized>(
    config: &FleetConfig,
    alpha: Alpha,
    rng: &mut R,
) -> Result<ExplorationResult> {
    config.validate()?;
    let bound = genotype_space_bound(config);
    if bound > EXHAUSTIVE_GUARD {
        return Err(Error::GuardExceeded(format!(
            "up to {bound} genotypes, limit is {EXHAUSTIVE_GUARD}"
        )));
    }
    let genotype = init_genotype(config, rng)?;
    let allocation = init_allocation(&genotype, config, rng)?;
    exhaustive_from(config, genotype, allocation, alpha)
}

/// [`exhaustive_explore`] from an explicit initial fleet.
pub fn exhaustive_from(
    config: &FleetConfig,
    genotype: Genotype,
    allocation: Allocation,
    alpha: Alpha,
) -> Result<ExplorationResult> {
    check_constraints(config.model, &genotype)?;
    let mut result = ExplorationResult::start(config, genotype, allocation, alpha)?;
    let mut cursor = 0;
    while cursor < result.neutral.len() {
        let src = result.neutral[cursor];
        cursor += 1;
        let parent = result.nodes[src].clone();
        for (vehicle, replacement) in
            enumerate_mutations(config.model, config.mutation_mode, &parent.genotype)
        {
            let mutant = apply_mutation(&parent.genotype, &parent.allocation, vehicle, replacement);
            result.steps_executed += 1;
            result.visit(config, src, mutant)?;
            result.record_step();
        }
    }
    Ok(result)
}

/// Number of distinct phenotypes in the 1-neighborhood.
pub fn evolvability(result: &ExplorationResult) -> usize {
    result
        .boundary_nodes()
        .map(|n| &n.phenotype)
        .collect::<HashSet<_>>()
        .len()
}

/// Number of neutral genotypes discovered.
pub fn nn_size(result: &ExplorationResult) -> usize {
    result.neutral.len()
}

/// `(step, cumulative neutral genotypes, cumulative unique boundary phenotypes)`.
pub fn innovation_series(result: &ExplorationResult) -> Vec<(usize, usize, usize)> {
    result
        .series
        .iter()
        .map(|r| (r.step, r.neutral_count, r.unique_boundary_phenotypes))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TopologyReport {
    pub node_count: usize,
    /// Distinct undirected neutral-neutral links.
    pub edge_count: usize,
    pub degree_average: f64,
    /// Mean shortest-path length over the sampled pairs; absent with fewer than two nodes.
    pub path_length_average: Option<f64>,
    pub sample_pairs: usize,
}

/// Adjacency lists of the neutral subgraph, indexed by position in the
/// neutral list, with duplicate links collapsed.
fn neutral_adjacency(result: &ExplorationResult) -> (Vec<Vec<usize>>, usize) {
    let mut position = vec![usize::MAX; result.nodes.len()];
    for (i, &id) in result.neutral.iter().enumerate() {
        position[id] = i;
    }
    let mut links = HashSet::new();
    for e in &result.edges {
        let (a, b) = (position[e.src], position[e.dst]);
        if a == usize::MAX || b == usize::MAX || a == b {
            continue;
        }
        links.insert((a.min(b), a.max(b)));
    }
    let mut adjacency = vec![Vec::new(); result.neutral.len()];
    for &(a, b) in &links {
        adjacency[a].push(b);
        adjacency[b].push(a);
    }
    for list in &mut adjacency {
        list.sort_unstable();
    }
    (adjacency, links.len())
}

fn bfs_distances(adjacency: &[Vec<usize>], source: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; adjacency.len()];
    let mut queue = std::collections::VecDeque::new();
    dist[source] = Some(0);
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        let d = dist[u].expect("queued nodes have a distance");
        for &w in &adjacency[u] {
            if dist[w].is_none() {
                dist[w] = Some(d + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Degree and path-length statistics of the neutral network.
///
/// When `sample_pairs` reaches the number of unordered node pairs the average
/// is taken over all pairs exactly; otherwise pairs of distinct nodes are
/// drawn uniformly with replacement.
pub fn topology_metrics<R: Rng + ?Sized>(
    result: &ExplorationResult,
    sample_pairs: usize,
    rng: &mut R,
) -> TopologyReport {
    let (adjacency, edge_count) = neutral_adjacency(result);
    let n = adjacency.len();
    let degree_average = if n == 0 {
        0.0
    } else {
        2.0 * edge_count as f64 / n as f64
    };
    if n < 2 || sample_pairs == 0 {
        return TopologyReport {
            node_count: n,
            edge_count,
            degree_average,
            path_length_average: None,
            sample_pairs: 0,
        };
    }

    let all_pairs = n * (n - 1) / 2;
    let mut sources: Vec<(usize, Vec<usize>)> = Vec::new();
    let used_pairs;
    if sample_pairs >= all_pairs {
        used_pairs = all_pairs;
        sources.extend((0..n - 1).map(|a| (a, ((a + 1)..n).collect())));
    } else {
        used_pairs = sample_pairs;
        let mut by_source: Vec<Vec<usize>> = vec![Vec::new(); n];
        for _ in 0..sample_pairs {
            let a = rng.gen_range(0..n);
            let mut b = rng.gen_range(0..n - 1);
            if b >= a {
                b += 1;
            }
            by_source[a].push(b);
        }
        sources.extend(by_source.into_iter().enumerate().filter(|(_, t)| !t.is_empty()));
    }

    let mut total = 0usize;
    let mut reached = 0usize;
    for (a, targets) in sources {
        let dist = bfs_distances(&adjacency, a);
        for b in targets {
            if let Some(d) = dist[b] {
                total += d;
                reached += 1;
            }
        }
    }
    TopologyReport {
        node_count: n,
        edge_count,
        degree_average,
        path_length_average: (reached > 0).then(|| total as f64 / reached as f64),
        sample_pairs: used_pairs,
    }
}
