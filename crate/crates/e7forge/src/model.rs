//! Lazily built generator sets and derived data shared by the verification
//! suites and the CLI.

use std::sync::OnceLock;

use crate::error::Result;
use crate::euler::SplitSampler;
use crate::f4e6::F4E6Basis;
use crate::generators::{structure_constants, Construction, GeneratorSet, StructureConstants};
use crate::rep133::{build_adjoint_133, Normalization};
use crate::rep56::{build_56_split, build_56_tits, build_basis_evi};

/// Each item is built on first use and kept for the lifetime of the model.
#[derive(Default)]
pub struct Model {
    tits56: OnceLock<GeneratorSet>,
    adjoint133: OnceLock<GeneratorSet>,
    split56: OnceLock<Result<GeneratorSet>>,
    evi56: OnceLock<Result<GeneratorSet>>,
    tits_sc: OnceLock<Result<StructureConstants>>,
    split_sc: OnceLock<Result<StructureConstants>>,
    evi_sc: OnceLock<Result<StructureConstants>>,
    sampler: OnceLock<Result<SplitSampler>>,
}

fn get<T>(cell: &OnceLock<Result<T>>, f: impl FnOnce() -> Result<T>) -> Result<&T> {
    cell.get_or_init(f).as_ref().map_err(Clone::clone)
}

impl Model {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn basis(&self) -> &'static F4E6Basis {
        F4E6Basis::standard()
    }

    pub fn tits56(&self) -> &GeneratorSet {
        self.tits56.get_or_init(|| build_56_tits(self.basis()))
    }

    /// The adjoint 133 in the orthonormal normalization.
    pub fn adjoint133(&self) -> &GeneratorSet {
        self.adjoint133.get_or_init(|| build_adjoint_133(self.basis(), Normalization::Orthonormal))
    }

    pub fn split56(&self) -> Result<&GeneratorSet> {
        get(&self.split56, build_56_split)
    }

    pub fn evi56(&self) -> Result<&GeneratorSet> {
        get(&self.evi56, || build_basis_evi(self.tits56()))
    }

    /// The 56 of the given construction.
    pub fn rep56(&self, c: Construction) -> Result<&GeneratorSet> {
        match c {
            Construction::Tits => Ok(self.tits56()),
            Construction::Split => self.split56(),
            Construction::Evi => self.evi56(),
        }
    }

    /// Numerical structure constants of the 56 of the given construction.
    pub fn constants56(&self, c: Construction) -> Result<&StructureConstants> {
        match c {
            Construction::Tits => get(&self.tits_sc, || structure_constants(self.tits56(), 1e-10)),
            Construction::Split => get(&self.split_sc, || structure_constants(self.split56()?, 1e-10)),
            Construction::Evi => get(&self.evi_sc, || structure_constants(self.evi56()?, 1e-10)),
        }
    }

    pub fn sampler(&self) -> Result<&SplitSampler> {
        get(&self.sampler, || SplitSampler::new(self.split56()?, self.constants56(Construction::Split)?))
    }
}
