//! Fleet genotype, allocation, phenotype, environment and fitness.
//!
//! A fleet is a list of vehicles. Each vehicle is either able to serve exactly
//! two distinct task types ([`TaskPair`]) or is a null vehicle that serves
//! nothing. The allocation assigns integer task counts to the two tasks of
//! every vehicle; the phenotype is the per-task sum of those counts.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The two distinct task types a vehicle can serve, stored with `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TaskPair {
    lo: u16,
    hi: u16,
}

impl TaskPair {
    /// Builds a normalized pair. Fails when both tasks are the same.
    pub fn new(a: u16, b: u16) -> Result<Self> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Ok(Self { lo: a, hi: b }),
            std::cmp::Ordering::Greater => Ok(Self { lo: b, hi: a }),
            std::cmp::Ordering::Equal => Err(Error::Structure(format!(
                "a vehicle must serve two distinct task types, got ({a}, {b})"
            ))),
        }
    }

    pub fn lo(self) -> u16 {
        self.lo
    }

    pub fn hi(self) -> u16 {
        self.hi
    }

    /// Task index for slot 0 (`lo`) or slot 1 (`hi`).
    pub fn task(self, slot: usize) -> usize {
        if slot == 0 {
            self.lo as usize
        } else {
            self.hi as usize
        }
    }

    pub fn contains(self, task: usize) -> bool {
        self.lo as usize == task || self.hi as usize == task
    }

    /// Number of tasks the two pairs have in common (0, 1 or 2).
    pub fn overlap(self, other: TaskPair) -> usize {
        usize::from(other.contains(self.lo as usize)) + usize::from(other.contains(self.hi as usize))
    }
}

impl fmt::Display for TaskPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.lo, self.hi)
    }
}

/// Shorthand used throughout the tests and fixtures. Panics on equal tasks.
pub fn pair(a: u16, b: u16) -> TaskPair {
    TaskPair::new(a, b).expect("distinct tasks")
}

/// How a vehicle's capacity `λ` bounds its total load.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LoadRule {
    /// Total load is at most `λ`; adaptation moves single units up or down.
    AtMost,
    /// Every live vehicle carries exactly `λ`; adaptation shifts single units
    /// between the vehicle's two tasks.
    Exact,
}

impl LoadRule {
    pub fn name(self) -> &'static str {
        match self {
            LoadRule::AtMost => "at_most",
            LoadRule::Exact => "exact",
        }
    }
}

impl std::str::FromStr for LoadRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "at_most" => Ok(LoadRule::AtMost),
            "exact" => Ok(LoadRule::Exact),
            other => Err(Error::config(
                "load_rule",
                format!("expected `at_most` or `exact`, got `{other}`"),
            )),
        }
    }
}

/// The fleet design: one optional capability pair per vehicle.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Genotype {
    vehicles: Vec<Option<TaskPair>>,
    task_count: usize,
    capacity: u32,
    load_rule: LoadRule,
}

impl Genotype {
    pub fn new(vehicles: Vec<Option<TaskPair>>, task_count: usize, capacity: u32) -> Result<Self> {
        if vehicles.is_empty() {
            return Err(Error::Structure("a fleet needs at least one vehicle".into()));
        }
        if task_count < 2 {
            return Err(Error::Structure(format!(
                "at least two task types are required, got {task_count}"
            )));
        }
        if task_count > u16::MAX as usize {
            return Err(Error::Structure(format!("too many task types: {task_count}")));
        }
        if let Some((i, p)) = vehicles
            .iter()
            .enumerate()
            .find_map(|(i, v)| v.filter(|p| p.hi as usize >= task_count).map(|p| (i, p)))
        {
            return Err(Error::Structure(format!(
                "vehicle {i} pair {p} references a task outside 0..{task_count}"
            )));
        }
        Ok(Self {
            vehicles,
            task_count,
            capacity,
            load_rule: LoadRule::AtMost,
        })
    }

    pub fn with_load_rule(mut self, load_rule: LoadRule) -> Self {
        self.load_rule = load_rule;
        self
    }

    pub fn load_rule(&self) -> LoadRule {
        self.load_rule
    }

    pub fn vehicles(&self) -> &[Option<TaskPair>] {
        &self.vehicles
    }

    pub fn vehicle(&self, index: usize) -> Option<TaskPair> {
        self.vehicles[index]
    }

    pub fn fleet_size(&self) -> usize {
        self.vehicles.len()
    }

    pub fn task_count(&self) -> usize {
        self.task_count
    }

    pub fn capacity(&self) -> u32 {
        self.capacity
    }

    /// Same fleet with vehicle `index` replaced. The replacement must reference valid tasks.
    pub fn with_vehicle(&self, index: usize, replacement: Option<TaskPair>) -> Self {
        debug_assert!(replacement.is_none_or(|p| (p.hi as usize) < self.task_count));
        let mut next = self.clone();
        next.vehicles[index] = replacement;
        next
    }

    /// Order-independent identity of the fleet.
    pub fn canonical_key(&self) -> CanonicalKey {
        canonical_form(self)
    }
}

/// Per-vehicle task counts, `[count for lo, count for hi]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Allocation {
    states: Vec<[u32; 2]>,
}

impl Allocation {
    pub fn new(states: Vec<[u32; 2]>) -> Self {
        Self { states }
    }

    pub fn zeros(fleet_size: usize) -> Self {
        Self {
            states: vec![[0, 0]; fleet_size],
        }
    }

    pub fn states(&self) -> &[[u32; 2]] {
        &self.states
    }

    pub fn state(&self, vehicle: usize) -> [u32; 2] {
        self.states[vehicle]
    }

    pub(crate) fn state_mut(&mut self, vehicle: usize) -> &mut [u32; 2] {
        &mut self.states[vehicle]
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Total load carried by a vehicle.
    pub fn load(&self, vehicle: usize) -> u32 {
        let [a, b] = self.states[vehicle];
        a + b
    }
}

/// Per-task-type counts: a fleet's readiness (phenotype) or the demand
/// placed on it (environment).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TraitVector(Vec<u32>);

impl TraitVector {
    pub fn new(values: Vec<u32>) -> Self {
        Self(values)
    }

    pub fn zeros(task_count: usize) -> Self {
        Self(vec![0; task_count])
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, task: usize) -> u32 {
        self.0[task]
    }

    pub(crate) fn values_mut(&mut self) -> &mut [u32] {
        &mut self.0
    }

    /// Sum of squared components. This is the penalty of a fleet that is
    /// ready for nothing when this vector is the environment.
    pub fn squared_norm(&self) -> u64 {
        self.0.iter().map(|&v| u64::from(v) * u64::from(v)).sum()
    }
}

impl fmt::Display for TraitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

/// Fleet fitness: the negated total squared shortfall. Never positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Fitness(i64);

impl Fitness {
    pub const OPTIMAL: Fitness = Fitness(0);

    pub fn from_penalty(penalty: u64) -> Self {
        Fitness(-(penalty as i64))
    }

    pub fn value(self) -> i64 {
        self.0
    }

    /// The total squared shortfall, `-value`.
    pub fn penalty(self) -> u64 {
        self.0.unsigned_abs()
    }
}

impl fmt::Display for Fitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Fleet identity that ignores vehicle order.
///
/// Pairs are sorted ascending with null vehicles last and encoded as
/// big-endian `u16` tuples, so byte order equals the sort order. Null
/// vehicles encode as `0xFFFF 0xFFFF`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    /// Lowercase hex of the key bytes.
    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

pub fn canonical_form(genotype: &Genotype) -> CanonicalKey {
    let mut pairs: Vec<Option<TaskPair>> = genotype.vehicles.clone();
    // `None < Some` in Option's ordering, so sort nulls last explicitly.
    pairs.sort_unstable_by(|a, b| match (a, b) {
        (Some(x), Some(y)) => x.cmp(y),
        (Some(_), None) => std::cmp::Ordering::Less,
        (None, Some(_)) => std::cmp::Ordering::Greater,
        (None, None) => std::cmp::Ordering::Equal,
    });
    let mut bytes = Vec::with_capacity(pairs.len() * 4);
    for p in pairs {
        let (lo, hi) = p.map_or((u16::MAX, u16::MAX), |p| (p.lo, p.hi));
        bytes.extend_from_slice(&lo.to_be_bytes());
        bytes.extend_from_slice(&hi.to_be_bytes());
    }
    CanonicalKey(bytes)
}

/// `T^P_j`: sum over capable vehicles of their count for task `j`.
pub fn compute_phenotype(genotype: &Genotype, allocation: &Allocation) -> Result<TraitVector> {
    if genotype.fleet_size() != allocation.len() {
        return Err(Error::Structure(format!(
            "allocation has {} rows but the fleet has {} vehicles",
            allocation.len(),
            genotype.fleet_size()
        )));
    }
    let mut out = vec![0u32; genotype.task_count()];
    for (vehicle, state) in genotype.vehicles.iter().zip(allocation.states()) {
        if let Some(p) = vehicle {
            out[p.lo as usize] += state[0];
            out[p.hi as usize] += state[1];
        }
    }
    Ok(TraitVector(out))
}

/// Penalty contribution of one task: zero when over-supplied, the squared
/// shortfall otherwise (equality lands in the squared branch and yields zero).
#[inline]
pub fn task_penalty(readiness: u32, demand: u32) -> u64 {
    if readiness > demand {
        0
    } else {
        let d = u64::from(demand - readiness);
        d * d
    }
}

pub fn fitness(phenotype: &TraitVector, environment: &TraitVector) -> Result<Fitness> {
    if phenotype.len() != environment.len() {
        return Err(Error::Structure(format!(
            "phenotype has {} tasks but the environment has {}",
            phenotype.len(),
            environment.len()
        )));
    }
    let penalty = phenotype
        .0
        .iter()
        .zip(&environment.0)
        .map(|(&p, &e)| task_penalty(p, e))
        .sum();
    Ok(Fitness::from_penalty(penalty))
}

/// Neutrality margin as a percentage, held exactly in hundredths of a percent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Alpha {
    centi_percent: u64,
}

impl Alpha {
    /// Integer percentage.
    pub fn percent(percent: u64) -> Self {
        Self {
            centi_percent: percent * 100,
        }
    }

    /// Hundredths of a percent (`250` is 2.5%).
    pub fn from_centi_percent(centi_percent: u64) -> Self {
        Self { centi_percent }
    }

    pub fn centi_percent(self) -> u64 {
        self.centi_percent
    }

    pub fn as_f64(self) -> f64 {
        self.centi_percent as f64 / 100.0
    }

    /// Accepts at most two decimal places; negative or non-finite values are rejected.
    pub fn from_f64(percent: f64) -> Result<Self> {
        if !percent.is_finite() || percent < 0.0 {
            return Err(Error::Parameter(format!(
                "alpha must be a non-negative percentage, got {percent}"
            )));
        }
        let scaled = percent * 100.0;
        let rounded = scaled.round();
        if (scaled - rounded).abs() > 1e-6 || rounded > 1e15 {
            return Err(Error::Parameter(format!(
                "alpha supports at most two decimal places, got {percent}"
            )));
        }
        Ok(Self {
            centi_percent: rounded as u64,
        })
    }
}

impl std::str::FromStr for Alpha {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let v: f64 = s
            .trim()
            .parse()
            .map_err(|_| Error::Parameter(format!("alpha is not a number: {s:?}")))?;
        Alpha::from_f64(v)
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let whole = self.centi_percent / 100;
        let frac = self.centi_percent % 100;
        if frac == 0 {
            write!(f, "{whole}")
        } else if frac.is_multiple_of(10) {
            write!(f, "{whole}.{}", frac / 10)
        } else {
            write!(f, "{whole}.{frac:02}")
        }
    }
}

impl Serialize for Alpha {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_f64(self.as_f64())
    }
}

impl<'de> Deserialize<'de> for Alpha {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = f64::deserialize(d)?;
        Alpha::from_f64(v).map_err(serde::de::Error::custom)
    }
}

/// How the neutrality margin `alpha` turns into a penalty budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThresholdRule {
    /// `alpha`% of the penalty of a fleet ready for nothing:
    /// `(alpha/100) * sum_j (T^E_j)^2`.
    DemandSquared,
    /// Penalty of a fleet falling short by `alpha`% on every task:
    /// `sum_j (alpha/100 * T^E_j)^2`.
    RelativeShortfall,
}

impl ThresholdRule {
    pub fn name(self) -> &'static str {
        match self {
            ThresholdRule::DemandSquared => "demand_squared",
            ThresholdRule::RelativeShortfall => "relative_shortfall",
        }
    }
}

impl std::str::FromStr for ThresholdRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "demand_squared" => Ok(ThresholdRule::DemandSquared),
            "relative_shortfall" => Ok(ThresholdRule::RelativeShortfall),
            other => Err(Error::config(
                "threshold_rule",
                format!("expected `demand_squared` or `relative_shortfall`, got `{other}`"),
            )),
        }
    }
}

/// Lowest fitness still counted as neutral, held as an exact rational
/// penalty budget `numerator / denominator` so comparisons stay in integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Threshold {
    numerator: u128,
    denominator: u128,
}

impl Threshold {
    fn reduced(numerator: u128, denominator: u128) -> Self {
        let (mut a, mut b) = (numerator, denominator);
        while b != 0 {
            (a, b) = (b, a % b);
        }
        Self {
            numerator: numerator / a,
            denominator: denominator / a,
        }
    }

    /// Threshold admitting only exactly optimal fleets.
    pub const EXACT: Threshold = Threshold {
        numerator: 0,
        denominator: 1,
    };

    /// Threshold equal to a given fitness value.
    pub fn at_fitness(fitness: Fitness) -> Self {
        Self {
            numerator: u128::from(fitness.penalty()),
            denominator: 1,
        }
    }

    pub fn value(self) -> f64 {
        -(self.numerator as f64) / self.denominator as f64
    }

    pub fn is_neutral(self, fitness: Fitness) -> bool {
        u128::from(fitness.penalty()) * self.denominator <= self.numerator
    }
}

/// [`neutrality_threshold_with`] under [`ThresholdRule::DemandSquared`]:
/// `-(alpha/100) * sum_j (T^E_j)^2`.
pub fn neutrality_threshold(environment: &TraitVector, alpha: Alpha) -> Threshold {
    neutrality_threshold_with(environment, alpha, ThresholdRule::DemandSquared)
}

pub fn neutrality_threshold_with(
    environment: &TraitVector,
    alpha: Alpha,
    rule: ThresholdRule,
) -> Threshold {
    let norm = u128::from(environment.squared_norm());
    let centi = u128::from(alpha.centi_percent);
    match rule {
        ThresholdRule::DemandSquared => Threshold::reduced(norm * centi, 10_000),
        ThresholdRule::RelativeShortfall => Threshold::reduced(norm * centi * centi, 100_000_000),
    }
}

/// Inclusive: a fitness equal to the threshold is neutral.
pub fn is_neutral(fitness: Fitness, threshold: Threshold) -> bool {
    threshold.is_neutral(fitness)
}

/// A broken structural rule, reported by [`validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    RowCount { vehicles: usize, rows: usize },
    TaskOutOfRange { vehicle: usize, task: usize },
    OverCapacity { vehicle: usize, load: u32, capacity: u32 },
    /// Under [`LoadRule::Exact`], a live vehicle whose load differs from `λ`.
    LoadMismatch { vehicle: usize, load: u32, capacity: u32 },
    NonzeroWhereIncapable { vehicle: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::RowCount { vehicles, rows } => {
                write!(f, "allocation has {rows} rows for {vehicles} vehicles")
            }
            Violation::TaskOutOfRange { vehicle, task } => {
                write!(f, "vehicle {vehicle}: task {task} is out of range")
            }
            Violation::OverCapacity {
                vehicle,
                load,
                capacity,
            } => write!(f, "vehicle {vehicle}: load {load} exceeds capacity {capacity}"),
            Violation::LoadMismatch {
                vehicle,
                load,
                capacity,
            } => write!(f, "vehicle {vehicle}: load {load} must equal capacity {capacity}"),
            Violation::NonzeroWhereIncapable { vehicle } => {
                write!(f, "vehicle {vehicle}: null vehicle carries a nonzero allocation")
            }
        }
    }
}

pub fn validate(genotype: &Genotype, allocation: &Allocation) -> Vec<Violation> {
    let mut out = Vec::new();
    if genotype.fleet_size() != allocation.len() {
        out.push(Violation::RowCount {
            vehicles: genotype.fleet_size(),
            rows: allocation.len(),
        });
    }
    for (vehicle, p) in genotype.vehicles.iter().enumerate() {
        if let Some(p) = p {
            if p.hi as usize >= genotype.task_count {
                out.push(Violation::TaskOutOfRange {
                    vehicle,
                    task: p.hi as usize,
                });
            }
        }
        let Some(&[a, b]) = allocation.states.get(vehicle) else {
            continue;
        };
        match p {
            None if a != 0 || b != 0 => out.push(Violation::NonzeroWhereIncapable { vehicle }),
            _ => {}
        }
        let load = a.saturating_add(b);
        if load > genotype.capacity {
            out.push(Violation::OverCapacity {
                vehicle,
                load,
                capacity: genotype.capacity,
            });
        } else if genotype.load_rule == LoadRule::Exact && p.is_some() && load != genotype.capacity {
            out.push(Violation::LoadMismatch {
                vehicle,
                load,
                capacity: genotype.capacity,
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn geno(v: Vec<Option<TaskPair>>, t: usize, cap: u32) -> Genotype {
        Genotype::new(v, t, cap).unwrap()
    }

    fn tv(v: &[u32]) -> TraitVector {
        TraitVector::new(v.to_vec())
    }

    #[test]
    fn pair_is_normalized() {
        let p = TaskPair::new(3, 1).unwrap();
        assert_eq!((p.lo(), p.hi()), (1, 3));
        assert!(TaskPair::new(2, 2).is_err());
        assert_eq!(pair(0, 1).overlap(pair(1, 2)), 1);
        assert_eq!(pair(0, 1).overlap(pair(1, 0)), 2);
    }

    #[test]
    fn genotype_rejects_out_of_range_pairs() {
        assert!(Genotype::new(vec![Some(pair(0, 2))], 2, 20).is_err());
        assert!(Genotype::new(vec![], 2, 20).is_err());
        assert!(Genotype::new(vec![None], 1, 20).is_err());
    }

    #[test]
    fn phenotype_examples() {
        let g = geno(vec![Some(pair(0, 1))], 2, 20);
        let p = compute_phenotype(&g, &Allocation::new(vec![[3, 2]])).unwrap();
        assert_eq!(p, tv(&[3, 2]));

        let g = geno(vec![Some(pair(0, 1)), Some(pair(1, 2))], 3, 20);
        let p = compute_phenotype(&g, &Allocation::new(vec![[2, 5], [4, 1]])).unwrap();
        assert_eq!(p, tv(&[2, 9, 1]));

        let g = geno(vec![Some(pair(0, 1)), None], 2, 20);
        let p = compute_phenotype(&g, &Allocation::zeros(2)).unwrap();
        assert_eq!(p, tv(&[0, 0]));
    }

    #[test]
    fn phenotype_dimension_mismatch() {
        let g = geno(vec![Some(pair(0, 1))], 2, 20);
        assert!(matches!(
            compute_phenotype(&g, &Allocation::zeros(2)),
            Err(Error::Structure(_))
        ));
    }

    #[test]
    fn fitness_examples() {
        assert_eq!(fitness(&tv(&[5, 5]), &tv(&[5, 5])).unwrap().value(), 0);
        assert_eq!(fitness(&tv(&[3, 7]), &tv(&[5, 5])).unwrap().value(), -4);
        assert_eq!(fitness(&tv(&[0, 0]), &tv(&[3, 4])).unwrap().value(), -25);
        assert!(fitness(&tv(&[0]), &tv(&[3, 4])).is_err());
    }

    #[test]
    fn threshold_examples() {
        let t = neutrality_threshold(&tv(&[10, 10, 10, 10]), Alpha::percent(5));
        assert_eq!(t.value(), -20.0);
        assert_eq!(t, Threshold::at_fitness(Fitness::from_penalty(20)));
        assert_eq!(neutrality_threshold(&tv(&[7, 3]), Alpha::percent(0)).value(), 0.0);
        assert_eq!(neutrality_threshold(&tv(&[0, 0, 0]), Alpha::percent(50)).value(), 0.0);
    }

    #[test]
    fn relative_shortfall_threshold() {
        let env = tv(&[10, 10, 10, 10]);
        // Each task 5% (half a unit) short: 4 * 0.25.
        let t = neutrality_threshold_with(&env, Alpha::percent(5), ThresholdRule::RelativeShortfall);
        assert_eq!(t.value(), -1.0);
        let t = neutrality_threshold_with(&env, Alpha::percent(10), ThresholdRule::RelativeShortfall);
        assert_eq!(t.value(), -4.0);
        assert!(t.is_neutral(Fitness::from_penalty(4)));
        assert!(!t.is_neutral(Fitness::from_penalty(5)));
        let t = neutrality_threshold_with(&env, Alpha::percent(0), ThresholdRule::RelativeShortfall);
        assert_eq!(t, Threshold::EXACT);
    }

    #[test]
    fn neutrality_boundary_is_inclusive() {
        let t = Threshold::at_fitness(Fitness::from_penalty(20));
        assert!(is_neutral(Fitness::from_penalty(10), t));
        assert!(is_neutral(Fitness::from_penalty(20), t));
        assert!(!is_neutral(Fitness::from_penalty(21), t));
    }

    #[test]
    fn fractional_alpha_threshold_is_exact() {
        // 2.5% of 1000 is 25.
        let t = neutrality_threshold(&tv(&[30, 10]), "2.5".parse().unwrap());
        assert!(is_neutral(Fitness::from_penalty(25), t));
        assert!(!is_neutral(Fitness::from_penalty(26), t));
    }

    #[test]
    fn alpha_parsing() {
        assert_eq!("5".parse::<Alpha>().unwrap(), Alpha::percent(5));
        assert_eq!("0.25".parse::<Alpha>().unwrap().centi_percent(), 25);
        assert!("-1".parse::<Alpha>().is_err());
        assert!("0.001".parse::<Alpha>().is_err());
        assert!("abc".parse::<Alpha>().is_err());
        assert_eq!(Alpha::from_centi_percent(250).to_string(), "2.5");
        assert_eq!(Alpha::from_centi_percent(1005).to_string(), "10.05");
    }

    #[test]
    fn canonical_form_examples() {
        let a = geno(vec![Some(pair(2, 3)), Some(pair(0, 1))], 4, 20);
        let b = geno(vec![Some(pair(0, 1)), Some(pair(2, 3))], 4, 20);
        assert_eq!(canonical_form(&a), canonical_form(&b));

        let c = geno(vec![Some(pair(0, 1)), Some(pair(0, 1))], 4, 20);
        let d = geno(vec![Some(pair(0, 1)), Some(pair(0, 2))], 4, 20);
        assert_ne!(canonical_form(&c), canonical_form(&d));

        let e = geno(vec![None, Some(pair(0, 1))], 4, 20);
        let f = geno(vec![Some(pair(0, 1)), None], 4, 20);
        assert_eq!(canonical_form(&e), canonical_form(&f));
        assert_eq!(canonical_form(&f).to_hex(), "00000001ffffffff");
    }

    #[test]
    fn validate_examples() {
        let g = geno(vec![Some(pair(0, 1))], 2, 20);
        assert!(validate(&g, &Allocation::new(vec![[10, 10]])).is_empty());
        assert_eq!(
            validate(&g, &Allocation::new(vec![[15, 10]])),
            vec![Violation::OverCapacity {
                vehicle: 0,
                load: 25,
                capacity: 20
            }]
        );
        let g = geno(vec![None], 2, 20);
        assert_eq!(
            validate(&g, &Allocation::new(vec![[1, 0]])),
            vec![Violation::NonzeroWhereIncapable { vehicle: 0 }]
        );
        assert!(matches!(
            validate(&g, &Allocation::zeros(3))[0],
            Violation::RowCount { .. }
        ));
    }

    #[test]
    fn exact_rule_requires_full_load() {
        let g = geno(vec![Some(pair(0, 1)), None], 2, 10).with_load_rule(LoadRule::Exact);
        assert!(validate(&g, &Allocation::new(vec![[3, 7], [0, 0]])).is_empty());
        assert_eq!(
            validate(&g, &Allocation::new(vec![[3, 6], [0, 0]])),
            vec![Violation::LoadMismatch {
                vehicle: 0,
                load: 9,
                capacity: 10
            }]
        );
    }
}
