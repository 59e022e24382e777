use std::ops::AddAssign;

use serde::Serialize;

use crate::ring::{Modulus, Residue};

/// Operation tallies for one stage of a decision procedure.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct StageCounts {
    pub mults: u64,
    pub adds: u64,
    pub pivots: u64,
}

impl AddAssign for StageCounts {
    fn add_assign(&mut self, rhs: Self) {
        self.mults += rhs.mults;
        self.adds += rhs.adds;
        self.pivots += rhs.pivots;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Stage {
    Precheck,
    Solve,
    Verify,
}

impl Stage {
    pub const ALL: [Stage; 3] = [Stage::Precheck, Stage::Solve, Stage::Verify];

    pub fn name(self) -> &'static str {
        match self {
            Stage::Precheck => "precheck",
            Stage::Solve => "solve",
            Stage::Verify => "verify",
        }
    }
}

/// Per-stage operation counts for one decider run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OpCounters {
    pub precheck: StageCounts,
    pub solve: StageCounts,
    pub verify: StageCounts,
}

impl OpCounters {
    pub fn stage(&self, stage: Stage) -> &StageCounts {
        match stage {
            Stage::Precheck => &self.precheck,
            Stage::Solve => &self.solve,
            Stage::Verify => &self.verify,
        }
    }

    pub fn stage_mut(&mut self, stage: Stage) -> &mut StageCounts {
        match stage {
            Stage::Precheck => &mut self.precheck,
            Stage::Solve => &mut self.solve,
            Stage::Verify => &mut self.verify,
        }
    }

    pub fn total(&self) -> StageCounts {
        let mut t = self.precheck;
        t += self.solve;
        t += self.verify;
        t
    }

    pub fn reset(&mut self) {
        *self = OpCounters::default();
    }
}

/// Modular arithmetic that records every multiplication and addition it does.
///
/// Each run owns its own counts, so concurrent runs never share a tally.
pub struct Tally<'a> {
    modulus: Modulus,
    counts: &'a mut StageCounts,
}

impl<'a> Tally<'a> {
    pub fn new(modulus: Modulus, counts: &'a mut StageCounts) -> Self {
        Tally { modulus, counts }
    }

    #[inline]
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    #[inline]
    pub fn mul(&mut self, a: Residue, b: Residue) -> Residue {
        self.counts.mults += 1;
        self.modulus.mul(a, b)
    }

    #[inline]
    pub fn add(&mut self, a: Residue, b: Residue) -> Residue {
        self.counts.adds += 1;
        self.modulus.add(a, b)
    }

    #[inline]
    pub fn sub(&mut self, a: Residue, b: Residue) -> Residue {
        self.counts.adds += 1;
        self.modulus.sub(a, b)
    }

    /// `acc + a*b`, one multiplication and one addition.
    #[inline]
    pub fn mul_add(&mut self, acc: Residue, a: Residue, b: Residue) -> Residue {
        let prod = self.mul(a, b);
        self.add(acc, prod)
    }

    #[inline]
    pub fn pivot(&mut self) {
        self.counts.pivots += 1;
    }

    /// Records a comparison-style check as one addition.
    #[inline]
    pub fn compare(&mut self) {
        self.counts.adds += 1;
    }

    pub fn counts(&self) -> &StageCounts {
        self.counts
    }
}
