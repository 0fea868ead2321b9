//! Phenotypic control: ordered asynchronous hill climbing over the allocation.
//!
//! Vehicles are visited in ascending index order. Each vehicle looks at its
//! single-unit moves, applies the one with the largest strict fitness gain
//! (first in evaluation order on ties) and hands the updated allocation to the
//! next vehicle. Sweeps repeat until one accepts nothing.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{
    compute_phenotype, task_penalty, validate, Allocation, Fitness, Genotype, LoadRule,
    TraitVector,
};

pub const DEFAULT_MAX_SWEEPS: usize = 1000;

/// What a move does to a vehicle's two task counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MoveKind {
    /// `+1` on the slot.
    Increase(usize),
    /// `-1` on the slot.
    Decrease(usize),
    /// `+1` on the slot and `-1` on the other one; the load is unchanged.
    ShiftTo(usize),
}

/// A single-unit change to one vehicle's allocation. Slot 0 is the vehicle's
/// lower task, slot 1 the higher one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Move {
    pub vehicle: usize,
    pub kind: MoveKind,
}

impl Move {
    /// Count change applied to slot 0 and slot 1.
    pub fn deltas(self) -> [i32; 2] {
        match self.kind {
            MoveKind::Increase(0) => [1, 0],
            MoveKind::Increase(_) => [0, 1],
            MoveKind::Decrease(0) => [-1, 0],
            MoveKind::Decrease(_) => [0, -1],
            MoveKind::ShiftTo(0) => [1, -1],
            MoveKind::ShiftTo(_) => [-1, 1],
        }
    }
}

/// Legal moves for `vehicle`, in evaluation order. Under
/// [`LoadRule::AtMost`]: lower task before higher task, `+1` before `-1`.
/// Under [`LoadRule::Exact`]: shift to the lower task, then to the higher.
/// Null vehicles have none.
pub fn candidate_moves(genotype: &Genotype, allocation: &Allocation, vehicle: usize) -> Vec<Move> {
    let mut out = Vec::with_capacity(4);
    if genotype.vehicle(vehicle).is_none() {
        return out;
    }
    let state = allocation.state(vehicle);
    match genotype.load_rule() {
        LoadRule::AtMost => {
            let has_room = state[0] + state[1] < genotype.capacity();
            for slot in 0..2 {
                if has_room {
                    out.push(Move {
                        vehicle,
                        kind: MoveKind::Increase(slot),
                    });
                }
                if state[slot] > 0 {
                    out.push(Move {
                        vehicle,
                        kind: MoveKind::Decrease(slot),
                    });
                }
            }
        }
        LoadRule::Exact => {
            for slot in 0..2 {
                if state[1 - slot] > 0 {
                    out.push(Move {
                        vehicle,
                        kind: MoveKind::ShiftTo(slot),
                    });
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdaptationOutcome {
    pub allocation: Allocation,
    pub phenotype: TraitVector,
    pub fitness: Fitness,
    pub sweeps_used: usize,
    pub accepted_moves: usize,
    /// True iff the last sweep accepted no move.
    pub converged: bool,
}

/// Snapshot handed to an observer right after a move is accepted.
#[derive(Debug)]
pub struct AcceptedMove<'a> {
    pub sweep: usize,
    pub applied: Move,
    pub before: Fitness,
    pub after: Fitness,
    pub allocation: &'a Allocation,
    pub phenotype: &'a TraitVector,
}

pub fn adapt(
    genotype: &Genotype,
    allocation: Allocation,
    environment: &TraitVector,
    max_sweeps: usize,
) -> Result<AdaptationOutcome> {
    adapt_observed(genotype, allocation, environment, max_sweeps, |_| {})
}

/// [`adapt`] with a callback invoked after every accepted move.
pub fn adapt_observed<F>(
    genotype: &Genotype,
    mut allocation: Allocation,
    environment: &TraitVector,
    max_sweeps: usize,
    mut observer: F,
) -> Result<AdaptationOutcome>
where
    F: FnMut(&AcceptedMove<'_>),
{
    if max_sweeps == 0 {
        return Err(Error::Parameter("max_sweeps must be at least 1".into()));
    }
    if let Some(v) = validate(genotype, &allocation).first() {
        return Err(Error::Structure(v.to_string()));
    }
    if environment.len() != genotype.task_count() {
        return Err(Error::Structure(format!(
            "environment has {} tasks but the fleet has {}",
            environment.len(),
            genotype.task_count()
        )));
    }

    let mut phenotype = compute_phenotype(genotype, &allocation)?;
    let demand = environment.values();
    let mut penalty: u64 = phenotype
        .values()
        .iter()
        .zip(demand)
        .map(|(&p, &e)| task_penalty(p, e))
        .sum();

    let mut sweeps_used = 0;
    let mut accepted_moves = 0;
    let mut converged = false;
    while sweeps_used < max_sweeps {
        sweeps_used += 1;
        let mut accepted_this_sweep = false;
        for (vehicle, p) in genotype.vehicles().iter().enumerate() {
            let Some(p) = p else { continue };
            let tasks = [p.task(0), p.task(1)];
            let old = [
                task_penalty(phenotype.get(tasks[0]), demand[tasks[0]]),
                task_penalty(phenotype.get(tasks[1]), demand[tasks[1]]),
            ];
            // Best strictly improving move so far; ties keep the earlier one.
            let mut best: Option<(u64, Move)> = None;
            for mv in candidate_moves(genotype, &allocation, vehicle) {
                let d = mv.deltas();
                let new: u64 = (0..2)
                    .map(|s| {
                        let next = phenotype.get(tasks[s]) as i64 + i64::from(d[s]);
                        task_penalty(next as u32, demand[tasks[s]])
                    })
                    .sum();
                let before = old[0] + old[1];
                if new < before && best.is_none_or(|(g, _)| before - new > g) {
                    best = Some((before - new, mv));
                }
            }
            let Some((gain, applied)) = best else {
                continue;
            };
            let d = applied.deltas();
            let before = Fitness::from_penalty(penalty);
            for s in 0..2 {
                let cell = &mut allocation.state_mut(vehicle)[s];
                *cell = (*cell as i64 + i64::from(d[s])) as u32;
                let pheno = &mut phenotype.values_mut()[tasks[s]];
                *pheno = (*pheno as i64 + i64::from(d[s])) as u32;
            }
            penalty -= gain;
            accepted_moves += 1;
            accepted_this_sweep = true;
            observer(&AcceptedMove {
                sweep: sweeps_used,
                applied,
                before,
                after: Fitness::from_penalty(penalty),
                allocation: &allocation,
                phenotype: &phenotype,
            });
        }
        if !accepted_this_sweep {
            converged = true;
            break;
        }
    }

    Ok(AdaptationOutcome {
        allocation,
        phenotype,
        fitness: Fitness::from_penalty(penalty),
        sweeps_used,
        accepted_moves,
        converged,
    })
}
