//! Exact computer algebra for SO(3)-structures on 8-manifolds.
//!
//! The group SO(3) acts on R⁸ = S² ⊕ S⁴ through the adjoint representation
//! of su(3). This crate works out the representation theory, the
//! subalgebras of so(8) that contain it, the invariant forms, the
//! characteristic-class identities and the torsion decompositions, all in
//! exact arithmetic over Q(√3).
//!
//! Most entry points hang off a [`Workbench`], which holds the frozen model
//! and memoizes the expensive pieces.

pub mod charclass;
pub mod error;
pub mod exec;
pub mod exforms;
pub mod field;
pub mod liealg;
pub mod linalg;
pub mod model;
pub mod oracle;
pub mod repring;
pub mod symbolic;
pub mod torsion;
pub mod verify;

use std::sync::OnceLock;

pub use error::{Error, Result};
pub use exec::Exec;
pub use field::Q3;
pub use repring::VirtualRep;

use exforms::{FormPencil, InvariantForms, PencilScan};
use liealg::{AlgebraKind, AlgebraModel};
use linalg::Subspace;
use model::{BlockSplit, Model};

/// Slope grid resolution used when none is given.
pub const DEFAULT_RESOLUTION: u32 = 4;

/// Shared context: the frozen model plus read-only memo tables.
pub struct Workbench {
    pub model: Model,
    pub exec: Exec,
    invariants: [OnceLock<Result<Subspace>>; model::DIM + 1],
    forms: OnceLock<Result<InvariantForms>>,
    pencil: OnceLock<Result<PencilScan>>,
    algebras: [OnceLock<Result<AlgebraModel>>; AlgebraKind::ALL.len()],
}

impl Workbench {
    pub fn new(split: BlockSplit, exec: Exec) -> Self {
        Workbench {
            model: Model::new(split),
            exec,
            invariants: Default::default(),
            forms: OnceLock::new(),
            pencil: OnceLock::new(),
            algebras: Default::default(),
        }
    }

    pub fn reference() -> Self {
        Workbench::new(BlockSplit::reference(), Exec::default())
    }

    pub fn with_exec(exec: Exec) -> Self {
        Workbench::new(BlockSplit::reference(), exec)
    }

    /// Deliberately broken V/W split, for exercising failure paths.
    pub fn corrupted() -> Self {
        Workbench::new(BlockSplit::corrupted(), Exec::default())
    }

    /// g-invariant k-forms.
    pub fn invariant_subspace(&self, k: usize) -> Result<&Subspace> {
        if k > model::DIM {
            return Err(Error::Degree(k));
        }
        self.invariants[k]
            .get_or_init(|| exforms::invariant_subspace(&self.model.g_gens, k))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn invariant_forms(&self) -> Result<&InvariantForms> {
        self.forms
            .get_or_init(|| {
                let inv3 = self.invariant_subspace(3)?;
                let inv4 = self.invariant_subspace(4)?;
                exforms::locate_invariant_forms(inv3, inv4, &self.model.split.v)
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    /// The pencil `γ + t·*γ`.
    pub fn gamma_pencil(&self, resolution: u32) -> Result<FormPencil> {
        let f = self.invariant_forms()?;
        FormPencil::new(f.gamma.clone(), f.star_gamma.clone(), resolution)
    }

    /// Pencil scan at the default resolution.
    pub fn pencil_scan(&self) -> Result<&PencilScan> {
        self.pencil
            .get_or_init(|| exforms::pencil_scan(&self.gamma_pencil(DEFAULT_RESOLUTION)?, self.exec))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn algebra(&self, kind: AlgebraKind) -> Result<&AlgebraModel> {
        self.algebras[kind.index()]
            .get_or_init(|| liealg::build_algebra(self, kind))
            .as_ref()
            .map_err(Clone::clone)
    }
}

impl Default for Workbench {
    fn default() -> Self {
        Workbench::reference()
    }
}
