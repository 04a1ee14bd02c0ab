//! Fair interleaving of an infinite family of bounded computations.
//!
//! Round `k` admits stage `k` and gives every unfinished stage `0..=k` a
//! slice of `schedule(k)` work units.  A stage that accepts ends the
//! search; a stage that rejects is retired.

use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StageOutcome<C> {
    Accept(C),
    Reject,
    /// Needs more work; the stage is resumed in the next round.
    Unfinished,
}

pub trait StageFamily {
    type Certificate;
    /// Advances stage `index` by at most `budget` units and reports how many
    /// were used.
    fn run_stage(&mut self, index: u64, budget: u64) -> Result<(StageOutcome<Self::Certificate>, u64)>;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DovetailOutcome<C> {
    Accepted {
        stage: u64,
        certificate: C,
        work: u64,
    },
    /// Total work reached the budget without an accepting stage.
    Running {
        stages_started: u64,
        work: u64,
    },
}

impl<C> DovetailOutcome<C> {
    pub fn is_accepted(&self) -> bool {
        matches!(self, DovetailOutcome::Accepted { .. })
    }

    pub fn certificate(&self) -> Option<&C> {
        match self {
            DovetailOutcome::Accepted { certificate, .. } => Some(certificate),
            DovetailOutcome::Running { .. } => None,
        }
    }
}

/// The default schedule, `schedule(k) = k`, with at least one unit.
pub fn linear_schedule(k: u64) -> u64 {
    k.max(1)
}

/// Interleaves the stages of `family` until one accepts or `budget` work
/// units are spent.
pub fn dovetail<F: StageFamily>(
    family: &mut F,
    budget: u64,
    schedule: impl Fn(u64) -> u64,
) -> Result<DovetailOutcome<F::Certificate>> {
    let mut active: Vec<u64> = Vec::new();
    let mut work = 0u64;
    let mut round = 0u64;
    loop {
        active.push(round);
        let slice = schedule(round).max(1);
        let mut k = 0;
        while k < active.len() {
            if work >= budget {
                return Ok(DovetailOutcome::Running { stages_started: round + 1, work });
            }
            let stage = active[k];
            let (outcome, used) = family.run_stage(stage, slice.min(budget - work))?;
            work += used.max(1);
            match outcome {
                StageOutcome::Accept(certificate) => return Ok(DovetailOutcome::Accepted { stage, certificate, work }),
                StageOutcome::Reject => {
                    active.remove(k);
                }
                StageOutcome::Unfinished => k += 1,
            }
        }
        round += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Stage `k` needs `k` units and accepts iff `k == target`.
    struct Countdown {
        target: u64,
        progress: Vec<u64>,
    }

    impl StageFamily for Countdown {
        type Certificate = u64;
        fn run_stage(&mut self, index: u64, budget: u64) -> Result<(StageOutcome<u64>, u64)> {
            let k = index as usize;
            if self.progress.len() <= k {
                self.progress.resize(k + 1, 0);
            }
            let need = index - self.progress[k];
            let used = need.min(budget);
            self.progress[k] += used;
            if self.progress[k] < index {
                return Ok((StageOutcome::Unfinished, used));
            }
            Ok((if index == self.target { StageOutcome::Accept(index) } else { StageOutcome::Reject }, used))
        }
    }

    #[test]
    fn finds_the_accepting_stage() {
        let mut f = Countdown { target: 7, progress: Vec::new() };
        let out = dovetail(&mut f, 10_000, linear_schedule).unwrap();
        assert!(matches!(out, DovetailOutcome::Accepted { stage: 7, certificate: 7, .. }));
    }

    #[test]
    fn runs_out_of_budget() {
        let mut f = Countdown { target: u64::MAX, progress: Vec::new() };
        let out = dovetail(&mut f, 500, linear_schedule).unwrap();
        assert!(matches!(out, DovetailOutcome::Running { work, .. } if work >= 500));
    }
}
