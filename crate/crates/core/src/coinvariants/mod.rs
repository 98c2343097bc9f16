//! Multi-site coinvariants: tensor states, swapping lowering generators onto
//! other sites, canonical reduction, base change and the theorem check.
#![doc = include_str!("../../../../book/src/coinvariants.md")]

mod backend;
mod harness;
mod reduce;
mod site;
mod state;
mod verify;

pub use backend::{vform_on_line, Backend, ClassicalBackend, ExpTerm, ExpandedBackend, RavioloBackend};
pub use harness::{seeded_cases, verify_cases, CaseOutcome, TheoremCase};
pub use reduce::{reduce, reduce_in_order, swap_at_site};
pub use site::{FiniteModule, ModuleKind, SiteSpec, SiteVal, SiteVector};
pub use state::TensorState;
pub use verify::{
    base_change_sides, classical_state_pool, classical_take_coinvariants, classical_verify, expand_coefficient,
    expand_coinvariant, propagate_vacuum, reduce_field, state_pool, theorem_sides, u_space, verify_theorem,
    worked_example, Expanded, FarSites, Propagated, TheoremReport, X_VAR,
};
