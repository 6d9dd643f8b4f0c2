use crate::error::Result;
use crate::stepfun::{same_resolution, StepFun2D};

/// The three inputs `(F₁, F₂, F₃)` of the trilinear form, all at one
/// common grid resolution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triple {
    funcs: [StepFun2D; 3],
}

impl Triple {
    pub fn new(f1: StepFun2D, f2: StepFun2D, f3: StepFun2D) -> Result<Self> {
        same_resolution(f1.resolution(), f2.resolution())?;
        same_resolution(f1.resolution(), f3.resolution())?;
        Ok(Self { funcs: [f1, f2, f3] })
    }

    pub fn resolution(&self) -> u32 {
        self.funcs[0].resolution()
    }

    pub fn f1(&self) -> &StepFun2D {
        &self.funcs[0]
    }

    pub fn f2(&self) -> &StepFun2D {
        &self.funcs[1]
    }

    pub fn f3(&self) -> &StepFun2D {
        &self.funcs[2]
    }

    /// Slot `0`, `1` or `2`.
    pub fn get(&self, slot: usize) -> &StepFun2D {
        &self.funcs[slot]
    }

    pub fn funcs(&self) -> &[StepFun2D; 3] {
        &self.funcs
    }

    pub fn replace(&self, slot: usize, f: StepFun2D) -> Result<Self> {
        let mut funcs = self.funcs.clone();
        funcs[slot] = f;
        let [a, b, c] = funcs;
        Self::new(a, b, c)
    }

    pub fn into_funcs(self) -> [StepFun2D; 3] {
        self.funcs
    }
}
